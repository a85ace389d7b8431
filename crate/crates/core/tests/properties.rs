mod common;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;
use rigid_solvable::equations::{solve_ball, MixedWord, SearchConfig, System};
use rigid_solvable::free_solvable::FreeSolvable;
use rigid_solvable::group::Group;
use rigid_solvable::group_ring::RingElement;
use rigid_solvable::linalg::{
    coset_rank, full_laurent_matrix, laurent_rank, smith_rank, LaurentMatrix, LaurentPoly, SubLattice,
};
use rigid_solvable::magnus::{restricted_module_generators, SplitMatrix};
use rigid_solvable::word::{Letter, Word};
use rigid_solvable::wreath::{embed_free_solvable, WreathElement, WreathGroup};

use common::*;

fn word(m: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..m, any::<bool>()), 0..=max_len)
        .prop_map(|ls| Word::from_letters(ls.into_iter().map(|(g, i)| Letter::new(g, i)).collect()))
}

/// Small element of `Z[S(2, n)]` given by words and coefficients.
fn ring(n: usize) -> impl Strategy<Value = RingElement<FreeSolvable>> {
    prop::collection::vec((word(2, 6), -3i64..=3), 0..4).prop_map(move |terms| {
        let g = FreeSolvable::new(2, n);
        RingElement::from_terms(g, terms.iter().map(|(w, c)| (g.normalize(w).unwrap(), *c)))
    })
}

fn exps(nvars: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-1i64..=1, nvars)
}

fn poly(nvars: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((exps(nvars), -2i64..=2), 0..3).prop_map(move |t| LaurentPoly::from_terms(nvars, t))
}

fn laurent(nvars: usize) -> impl Strategy<Value = Vec<Vec<LaurentPoly>>> {
    (1usize..=3, 1usize..=3)
        .prop_flat_map(move |(r, c)| prop::collection::vec(prop::collection::vec(poly(nvars), c), r))
}

fn int_matrix() -> impl Strategy<Value = Vec<Vec<BigInt>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec((-4i64..=4).prop_map(BigInt::from), c), r)
    })
}

// Permutations of {0,1,2,3}, composed left to right.
type Perm = [u8; 4];

fn compose(p: &Perm, q: &Perm) -> Perm {
    [q[p[0] as usize], q[p[1] as usize], q[p[2] as usize], q[p[3] as usize]]
}

fn inverse(p: &Perm) -> Perm {
    let mut r = [0; 4];
    for (i, &x) in p.iter().enumerate() {
        r[x as usize] = i as u8;
    }
    r
}

fn closure(gens: &[Perm]) -> Vec<Perm> {
    let mut set: BTreeSet<Perm> = BTreeSet::from([[0, 1, 2, 3]]);
    loop {
        let next: BTreeSet<Perm> =
            set.iter().flat_map(|a| gens.iter().map(move |g| compose(a, g))).chain(set.iter().copied()).collect();
        if next.len() == set.len() {
            return set.into_iter().collect();
        }
        set = next;
    }
}

fn image(w: &Word, images: &[Perm]) -> Perm {
    w.letters().iter().fold([0, 1, 2, 3], |acc, l| {
        let g = images[l.gen];
        compose(&acc, &if l.inverse { inverse(&g) } else { g })
    })
}

/// Finite groups of derived length ≤ 2 (S3, D4) and 3 (S4).
fn finite_groups(n: usize) -> Vec<Vec<Perm>> {
    let s3 = closure(&[[1, 0, 2, 3], [1, 2, 0, 3]]);
    let d4 = closure(&[[1, 2, 3, 0], [0, 3, 2, 1]]);
    let s4 = closure(&[[1, 0, 2, 3], [1, 2, 3, 0]]);
    assert_eq!((s3.len(), d4.len(), s4.len()), (6, 8, 24));
    if n >= 3 {
        vec![s3, d4, s4]
    } else {
        vec![s3, d4]
    }
}

fn random_wreath(level: usize, seed: &[i64]) -> WreathElement {
    let g = WreathGroup::new(2, level);
    let mut it = seed.iter().copied().cycle();
    let mut next = || it.next().unwrap();
    fn build(g: WreathGroup, next: &mut dyn FnMut() -> i64) -> WreathElement {
        match g.lower() {
            None => g.vector(vec![next() % 3, next() % 3]),
            Some(lower) => {
                let top = build(lower, next);
                let k = next().unsigned_abs() % 3;
                let pairs: Vec<_> = (0..k)
                    .map(|_| (build(lower, next), vec![BigInt::from(next() % 3), BigInt::from(next() % 2)]))
                    .collect();
                g.function(top, pairs).unwrap()
            }
        }
    }
    build(g, &mut next)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms((a, b, c, n) in (1usize..=2).prop_flat_map(|n| (ring(n), ring(n), ring(n), Just(n)))) {
        let one = RingElement::one(FreeSolvable::new(2, n));
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().mul(&c).unwrap(), a.mul(&c).unwrap().add(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&one).unwrap(), a.clone());
        prop_assert!(a.sub(&a).unwrap().is_zero());
        prop_assert_eq!(a.mul(&b).unwrap().augmentation(), a.augmentation() * b.augmentation());
        prop_assert_eq!(a.add(&b).unwrap().augmentation(), a.augmentation() + b.augmentation());
    }

    #[test]
    fn magnus_homomorphism(u in word(2, 10), v in word(2, 10), n in 1usize..=2) {
        let base = FreeSolvable::new(2, n);
        let pu = SplitMatrix::eval_word(&u, &base).unwrap();
        let pv = SplitMatrix::eval_word(&v, &base).unwrap();
        prop_assert_eq!(SplitMatrix::eval_word(&u.concat(&v), &base).unwrap(), pu.mul(&pv).unwrap());
        prop_assert_eq!(pu.inv().inv(), pu.clone());
        prop_assert!(pu.mul(&pu.inv()).unwrap().is_identity());
        prop_assert!(pu.sigma().in_fundamental_ideal());
    }

    #[test]
    fn fox_closed_formula(w in word(3, 12)) {
        let base = FreeSolvable::new(3, 1);
        let p = SplitMatrix::eval_word(&w, &base).unwrap();
        let (top, coords) = fox_over_abelian(&w, 3);
        prop_assert_eq!(p.top(), &base.abelian(top));
        prop_assert_eq!(p.coords(), coords.as_slice());
    }

    #[test]
    fn normal_forms_respect_finite_quotients(
        a in word(2, 6), b in word(2, 6), c in word(2, 6), d in word(2, 6), n in 2usize..=3, pick in 0usize..3,
    ) {
        let w = match pick {
            0 => a.concat(&b),
            1 => Word::commutator(&a, &b),
            _ => Word::commutator(&Word::commutator(&a, &b), &Word::commutator(&c, &d)),
        };
        let trivial = FreeSolvable::new(2, n).normalize(&w).unwrap().is_trivial();
        for group in finite_groups(n) {
            for x in &group {
                for y in &group {
                    if trivial {
                        prop_assert_eq!(image(&w, &[*x, *y]), [0, 1, 2, 3], "{} is trivial in S(2,{}) but not in a quotient", w, n);
                    }
                }
            }
        }
        // inserting a law of the variety never changes the normal form
        let law = if n == 2 {
            Word::commutator(&Word::commutator(&a, &b), &Word::commutator(&c, &d))
        } else {
            let inner = Word::commutator(&Word::commutator(&a, &b), &Word::commutator(&c, &d));
            let other = Word::commutator(&Word::commutator(&b, &c), &Word::commutator(&d, &a));
            Word::commutator(&inner, &other)
        };
        let g = FreeSolvable::new(2, n);
        prop_assert_eq!(g.normalize(&a.concat(&law).concat(&b)).unwrap(), g.normalize(&a.concat(&b)).unwrap());
    }

    #[test]
    fn projection_is_a_homomorphism(u in word(2, 10), v in word(2, 10), k in 0usize..=3) {
        let g = FreeSolvable::new(2, 3);
        let h = FreeSolvable::new(2, k);
        let (x, y) = (g.normalize(&u).unwrap(), g.normalize(&v).unwrap());
        prop_assert_eq!(g.mul(&x, &y).project(k).unwrap(), h.mul(&x.project(k).unwrap(), &y.project(k).unwrap()));
        prop_assert_eq!(x.project(k).unwrap(), h.normalize(&u).unwrap());
    }

    #[test]
    fn element_json_round_trip(u in word(2, 10), n in 0usize..=3) {
        let x = FreeSolvable::new(2, n).normalize(&u).unwrap();
        let back = rigid_solvable::free_solvable::SolvableElement::from_json(&x.to_json()).unwrap();
        prop_assert_eq!(back, x.clone());
        let e = embed_free_solvable(&x);
        prop_assert_eq!(WreathElement::from_json(&e.to_json()).unwrap(), e);
    }

    #[test]
    fn wreath_group_axioms(s1 in prop::collection::vec(-5i64..=5, 1..20), s2 in prop::collection::vec(-5i64..=5, 1..20),
                           s3 in prop::collection::vec(-5i64..=5, 1..20), level in 1usize..=2) {
        let g = WreathGroup::new(2, level);
        let (a, b, c) = (random_wreath(level, &s1), random_wreath(level, &s2), random_wreath(level, &s3));
        prop_assert_eq!(g.mul(&g.mul(&a, &b), &c), g.mul(&a, &g.mul(&b, &c)));
        prop_assert!(g.mul(&a, &g.inv(&a)).is_trivial());
        prop_assert!(g.mul(&g.inv(&a), &a).is_trivial());
        prop_assert_eq!(g.mul(&a, &g.identity()), a.clone());
    }

    #[test]
    fn wreath_embedding_multiplicative(u in word(2, 10), v in word(2, 10), n in 1usize..=3) {
        let g = FreeSolvable::new(2, n);
        let w = WreathGroup::new(2, n - 1);
        let (x, y) = (g.normalize(&u).unwrap(), g.normalize(&v).unwrap());
        prop_assert_eq!(embed_free_solvable(&g.mul(&x, &y)), w.mul(&embed_free_solvable(&x), &embed_free_solvable(&y)));
        prop_assert_eq!(embed_free_solvable(&x).is_trivial(), x.is_trivial());
    }

    #[test]
    fn laurent_rank_invariances(rows in laurent(2), shift in exps(2), coeff in prop::sample::select(vec![-2i64, -1, 1, 3])) {
        let m = LaurentMatrix::new(2, rows.clone()).unwrap();
        let r = laurent_rank(&m).unwrap();
        prop_assert_eq!(r, laurent_minor_rank(&rows, 2));
        prop_assert_eq!(laurent_rank(&m.transpose()).unwrap(), r);
        let mut swapped = rows.clone();
        let last = swapped.len() - 1;
        swapped.swap(0, last);
        prop_assert_eq!(laurent_rank(&LaurentMatrix::new(2, swapped).unwrap()).unwrap(), r);
        let unit = LaurentPoly::from_terms(2, [(shift, coeff)]);
        let mut scaled = rows;
        scaled[0] = scaled[0].iter().map(|p| p.mul(&unit)).collect();
        prop_assert_eq!(laurent_rank(&LaurentMatrix::new(2, scaled).unwrap()).unwrap(), r);
    }

    #[test]
    fn smith_matches_laurent_on_constants(m in int_matrix()) {
        let (r, factors) = smith_rank(&m);
        prop_assert_eq!(r, minor_rank(&m));
        prop_assert_eq!(factors, invariant_factors(&m));
        prop_assert_eq!(laurent_rank(&LaurentMatrix::from_integers(3, &m)).unwrap(), r);
    }

    #[test]
    fn coset_rank_with_full_sublattice_is_laurent_rank(ws in prop::collection::vec(word(2, 8), 1..4)) {
        let rows: Vec<_> = restricted_module_generators(&ws, &FreeSolvable::new(2, 1)).unwrap()
            .into_iter().map(|(r, _)| r).collect();
        let full = full_laurent_matrix(&rows).unwrap().rank().unwrap();
        prop_assert_eq!(coset_rank(&rows, &[vec![1, 0], vec![0, 1]]).unwrap(), full);
        // a finite-index sublattice only splits rows into more columns
        prop_assert!(coset_rank(&rows, &[vec![2, 0], vec![0, 1]]).unwrap() >= full);
    }

    #[test]
    fn independence_lifts_from_a_retract(ws in prop::collection::vec((word(2, 6), word(2, 6)), 1..4)) {
        // commutators in x1, x2 inside S(3,2); A = <x1, x2> is a retract
        let words: Vec<Word> = ws.iter().map(|(a, b)| Word::commutator(a, b)).collect();
        let rows: Vec<_> = restricted_module_generators(&words, &FreeSolvable::new(3, 1)).unwrap()
            .into_iter().map(|(r, _)| r).collect();
        let over_a = coset_rank(&rows, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let over_b = full_laurent_matrix(&rows).unwrap().rank().unwrap();
        prop_assert_eq!(over_a, over_b);
    }

    #[test]
    fn sublattice_coordinates(a in -3i64..=3, b in -3i64..=3) {
        let l = SubLattice::new(2, vec![vec![2, 1], vec![0, 3]]).unwrap();
        let v = vec![2 * a, a + 3 * b];
        prop_assert_eq!(l.coordinates(&v), Some(vec![a, b]));
        prop_assert_eq!(l.coordinates(&[1, 0]), None);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn adding_an_equation_shrinks_solutions(a in word(2, 3), b in word(2, 3)) {
        let s = System::parse(&format!("[$1, {}]", if a.is_empty() { "x1".into() } else { a.to_string() }), None).unwrap();
        let f = MixedWord::parse(&format!("[$1, {}]", if b.is_empty() { "x2".into() } else { b.to_string() })).unwrap();
        let cfg = SearchConfig::default();
        let base = solve_ball(&s, 2, 2, 2, &cfg).unwrap();
        let more = solve_ball(&s.with(f).unwrap(), 2, 2, 2, &cfg).unwrap();
        let base_set: BTreeSet<_> = base.assignments.into_iter().collect();
        prop_assert!(more.assignments.iter().all(|x| base_set.contains(x)));
    }

    #[test]
    fn substitution_commutes_with_evaluation(a in word(2, 4), w in word(2, 5)) {
        let g = FreeSolvable::new(2, 2);
        let f = MixedWord::commutator(&MixedWord::var(0), &MixedWord::constant(a));
        let direct = f.evaluate(&[g.normalize(&w).unwrap()], &g).unwrap();
        let substituted = f.substitute(0, &MixedWord::constant(w)).with_arity(1).unwrap();
        prop_assert_eq!(substituted.evaluate(&[g.identity()], &g).unwrap(), direct);
    }
}
