//! Randomized and fixed-example checks of the structural statements the
//! library relies on. Every check is reproducible from `(seed, samples)`;
//! each sample draws from its own generator so a failure carries the seed
//! that reproduces it.

use std::cmp::Ordering;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free_solvable::{FreeSolvable, SolvableElement};
use crate::group::Group;
use crate::group_ring::RingElement;
use crate::linalg::{
    closed_form_dimension, coset_rank, full_laurent_matrix, lex_compare, principal_dimension_metabelian,
    Family,
};
use crate::magnus::{bar_minus_one, restricted_module_generators, SplitMatrix};
use crate::word::Word;
use crate::wreath::{embed_free_solvable, z_wr_z_generators, WreathGroup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub sample_seed: u64,
    pub case: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub statement: String,
    pub seed: u64,
    pub samples: usize,
    pub skipped: usize,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Overrides every check's default sample count.
    pub samples: Option<usize>,
    /// Random words have length uniform in `1..=max_len`.
    pub max_len: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 0, samples: None, max_len: 10 }
    }
}

struct CheckDef {
    name: &'static str,
    statement: &'static str,
    /// `None` for fixed-example checks that ignore the sample count.
    default_samples: Option<usize>,
    run: fn(&mut Ctx) -> Result<()>,
}

const CHECKS: &[CheckDef] = &[
    CheckDef {
        name: "product_rule",
        statement: "Magnus product rule d(uv) = d(u)v + d(v); the Magnus map is a homomorphism",
        default_samples: Some(500),
        run: product_rule,
    },
    CheckDef {
        name: "sigma",
        statement: "fundamental identity sigma(d(g)) = g - 1 in the group ring",
        default_samples: Some(500),
        run: sigma,
    },
    CheckDef {
        name: "no_torsion",
        statement: "the last principal factor has no torsion: c^u != 1 for c != 1, u != 0",
        default_samples: Some(200),
        run: no_torsion,
    },
    CheckDef {
        name: "series_criteria",
        statement: "G_i = {x : [x, g_i, ..., g_n] = 1} agrees with the projection criterion",
        default_samples: Some(100),
        run: series_criteria,
    },
    CheckDef {
        name: "derived_series",
        statement: "G_i contains G^(i-1), and G^(i-1) is not contained in G_(i+1)",
        default_samples: Some(100),
        run: derived_series,
    },
    CheckDef {
        name: "lex_drop",
        statement: "a proper epimorphism of rigid groups strictly lowers r(G) lexicographically",
        default_samples: None,
        run: lex_drop,
    },
    CheckDef {
        name: "rank_bounds",
        statement: "a k-generated rigid group has r_1 <= k and r_i <= k - 1",
        default_samples: Some(50),
        run: rank_bounds,
    },
    CheckDef {
        name: "independence_lifting",
        statement: "rows independent over Z[A/A_i] stay independent over Z[G/G_i] (retract setting)",
        default_samples: Some(50),
        run: independence_lifting,
    },
    CheckDef {
        name: "retraction",
        statement: "G_i phi = A meet G_i for a retraction phi (identity retraction only)",
        default_samples: Some(100),
        run: retraction,
    },
];

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.name).collect()
}

struct Ctx {
    seed: u64,
    name: &'static str,
    samples: usize,
    max_len: usize,
    skipped: usize,
    failures: Vec<Failure>,
}

impl Ctx {
    /// Generator for sample `i`, together with its seed.
    fn rng(&self, i: usize) -> (u64, ChaCha8Rng) {
        let tag = self.name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
        let s = self.seed ^ tag ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
        (s, ChaCha8Rng::seed_from_u64(s))
    }

    fn word(&self, rng: &mut ChaCha8Rng, m: usize) -> Word {
        Word::random(rng, m, self.max_len)
    }

    fn fail(&mut self, sample_seed: u64, case: String, detail: impl Into<String>) {
        self.failures.push(Failure { sample_seed, case, detail: detail.into() });
    }
}

pub fn run_check(name: &str, config: &VerifyConfig) -> Result<CheckReport> {
    let def = CHECKS.iter().find(|c| c.name == name).ok_or_else(|| Error::OutOfRange {
        what: "check",
        value: -1,
        lo: 0,
        hi: CHECKS.len() as i64 - 1,
    })?;
    let mut ctx = Ctx {
        seed: config.seed,
        name: def.name,
        samples: def.default_samples.map_or(1, |d| config.samples.unwrap_or(d)),
        max_len: config.max_len.max(1),
        skipped: 0,
        failures: Vec::new(),
    };
    let start = Instant::now();
    (def.run)(&mut ctx)?;
    Ok(CheckReport {
        name: def.name.to_string(),
        statement: def.statement.to_string(),
        seed: config.seed,
        samples: ctx.samples,
        skipped: ctx.skipped,
        failures: ctx.failures,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Runs every check (or just `only`), concurrently; reports come back in a fixed order.
pub fn run_all(config: &VerifyConfig, only: Option<&str>) -> Result<Vec<CheckReport>> {
    let names: Vec<&str> = match only {
        Some(n) => vec![n],
        None => check_names(),
    };
    names.par_iter().map(|n| run_check(n, config)).collect()
}

pub fn check_product_rule(seed: u64, samples: usize) -> Result<CheckReport> {
    run_check("product_rule", &VerifyConfig { seed, samples: Some(samples), ..Default::default() })
}

pub fn check_sigma(seed: u64, samples: usize) -> Result<CheckReport> {
    run_check("sigma", &VerifyConfig { seed, samples: Some(samples), ..Default::default() })
}

pub fn check_no_torsion(seed: u64, samples: usize) -> Result<CheckReport> {
    run_check("no_torsion", &VerifyConfig { seed, samples: Some(samples), ..Default::default() })
}

pub fn check_series_criteria(seed: u64, samples: usize) -> Result<CheckReport> {
    run_check("series_criteria", &VerifyConfig { seed, samples: Some(samples), ..Default::default() })
}

pub fn check_lex_drop() -> Result<CheckReport> {
    run_check("lex_drop", &VerifyConfig::default())
}

pub fn check_rank_bounds(seed: u64, samples: usize) -> Result<CheckReport> {
    run_check("rank_bounds", &VerifyConfig { seed, samples: Some(samples), ..Default::default() })
}

fn product_rule(ctx: &mut Ctx) -> Result<()> {
    for i in 0..ctx.samples {
        let (s, mut rng) = ctx.rng(i);
        let (u, v) = (ctx.word(&mut rng, 2), ctx.word(&mut rng, 2));
        for n in [2, 3] {
            let base = FreeSolvable::new(2, n - 1);
            let pu = SplitMatrix::eval_word(&u, &base)?;
            let pv = SplitMatrix::eval_word(&v, &base)?;
            if SplitMatrix::eval_word(&u.concat(&v), &base)? != pu.mul(&pv)? {
                ctx.fail(s, format!("S(2,{n}) u = {u}, v = {v}"), "eval(uv) != eval(u)eval(v)");
            }
            if !SplitMatrix::eval_word(&u.concat(&u.inverse()), &base)?.is_identity() {
                ctx.fail(s, format!("S(2,{n}) w = {u}"), "eval(w w^-1) is not the identity");
            }
        }
    }
    Ok(())
}

fn sigma(ctx: &mut Ctx) -> Result<()> {
    for i in 0..ctx.samples {
        let (s, mut rng) = ctx.rng(i);
        let w = ctx.word(&mut rng, 2);
        for n in [2, 3] {
            let base = FreeSolvable::new(2, n - 1);
            let got = SplitMatrix::eval_word(&w, &base)?.sigma();
            let want = bar_minus_one(&w, &base)?;
            if got != want {
                ctx.fail(s, format!("S(2,{n}) w = {w}"), format!("sigma = {got}, expected {want}"));
            }
        }
    }
    Ok(())
}

/// A random nontrivial element of `G^(n-1)` of `S(m, n)`.
fn random_deep_commutator(ctx: &Ctx, rng: &mut ChaCha8Rng, g: &FreeSolvable) -> Option<(Word, SolvableElement)> {
    fn build(ctx: &Ctx, rng: &mut ChaCha8Rng, m: usize, depth: usize) -> Word {
        if depth == 0 {
            return ctx.word(rng, m);
        }
        let a = build(ctx, rng, m, depth - 1);
        let b = build(ctx, rng, m, depth - 1);
        Word::commutator(&a, &b)
    }
    for _ in 0..20 {
        let w = build(ctx, rng, g.rank(), g.class() - 1);
        let c = g.normalize(&w).ok()?;
        if !c.is_trivial() {
            return Some((w, c));
        }
    }
    None
}

fn no_torsion(ctx: &mut Ctx) -> Result<()> {
    for i in 0..ctx.samples {
        let (s, mut rng) = ctx.rng(i);
        let n = if i % 2 == 0 { 2 } else { 3 };
        let g = FreeSolvable::new(2, n);
        let lower = FreeSolvable::new(2, n - 1);
        let Some((cw, c)) = random_deep_commutator(ctx, &mut rng, &g) else {
            ctx.skipped += 1;
            continue;
        };
        // u = Σ m_j h̄_j with random lifts h_j
        let terms: Vec<(Word, i64)> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let h = ctx.word(&mut rng, 2);
                let mut mj = rng.gen_range(-3..=2);
                if mj >= 0 {
                    mj += 1;
                }
                (h, mj)
            })
            .collect();
        let u = RingElement::from_terms(
            lower,
            terms.iter().map(|(h, mj)| (lower.normalize(h).unwrap(), *mj)),
        );
        if u.is_zero() {
            ctx.skipped += 1;
            continue;
        }
        // c^u = Π (c^{h_j})^{m_j}
        let mut acted = g.identity();
        for (h, mj) in &terms {
            let hj = g.normalize(h)?;
            acted = g.mul(&acted, &g.pow(&g.conjugate(&c, &hj), *mj));
        }
        let case = format!("S(2,{n}) c = {cw}, u = {u}");
        if acted.is_trivial() {
            ctx.fail(s, case, "c^u is trivial");
            continue;
        }
        // module view: c = [[1,0],[d,1]] and c^u = [[1,0],[d·u,1]]
        let d = c.matrix().unwrap().coords();
        let du: Vec<_> = d.iter().map(|x| x.mul(&u)).collect::<Result<_>>()?;
        if acted.matrix().unwrap().coords() != du.as_slice() {
            ctx.fail(s, case, "c^u disagrees with the module action d·u");
        }
    }
    Ok(())
}

fn series_sample(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Word {
    match rng.gen_range(0..3) {
        0 => ctx.word(rng, 2),
        1 => Word::commutator(&ctx.word(rng, 2), &ctx.word(rng, 2)),
        _ => {
            let a = Word::commutator(&ctx.word(rng, 2), &ctx.word(rng, 2));
            let b = Word::commutator(&ctx.word(rng, 2), &ctx.word(rng, 2));
            Word::commutator(&a, &b)
        }
    }
}

fn series_criteria(ctx: &mut Ctx) -> Result<()> {
    let g = FreeSolvable::new(2, 3);
    let witnesses = g.standard_witnesses()?;
    for i in 0..ctx.samples {
        let (s, mut rng) = ctx.rng(i);
        let w = series_sample(ctx, &mut rng);
        let x = g.normalize(&w)?;
        for level in 1..=3 {
            let by_projection = g.member_by_projection(&x, level)?;
            let by_commutator = g.member_by_commutator(&x, level, &witnesses[level - 1..])?;
            if by_projection != by_commutator {
                ctx.fail(
                    s,
                    format!("x = {w}, i = {level}"),
                    format!("projection says {by_projection}, commutator says {by_commutator}"),
                );
            }
        }
    }
    Ok(())
}

fn derived_series(ctx: &mut Ctx) -> Result<()> {
    for n in [2, 3] {
        let g = FreeSolvable::new(2, n);
        // witness g_i is an iterated commutator of depth i-1, so g_i ∈ G^(i-1) \ G_{i+1}
        for (idx, gi) in g.standard_witnesses()?.iter().enumerate() {
            let i = idx + 1;
            if g.member_by_projection(gi, i + 1)? {
                ctx.fail(ctx.seed, format!("S(2,{n}) g_{i}"), "G^(i-1) contained in G_(i+1)");
            }
        }
    }
    for k in 0..ctx.samples {
        let (s, mut rng) = ctx.rng(k);
        let n = if k % 2 == 0 { 2 } else { 3 };
        let g = FreeSolvable::new(2, n);
        let w = series_sample(ctx, &mut rng);
        let x = g.normalize(&w)?;
        for i in 2..=n + 1 {
            if g.member_by_projection(&x, i)? && !g.member_by_projection(&x, i - 1)? {
                ctx.fail(s, format!("S(2,{n}) x = {w}, i = {i}"), "in G_i but not in G_(i-1)");
            }
        }
        if let Some((cw, c)) = random_deep_commutator(ctx, &mut rng, &g) {
            if !g.member_by_projection(&c, n)? {
                ctx.fail(s, format!("S(2,{n}) c = {cw}"), "element of G^(n-1) outside G_n");
            }
        }
    }
    Ok(())
}

fn lex_drop(ctx: &mut Ctx) -> Result<()> {
    let gens: Vec<Word> = vec![Word::generator(0), Word::generator(1)];
    let r_s = principal_dimension_metabelian(&gens, 2)?;
    let r_s_closed = closed_form_dimension(Family::FreeSolvable { m: 2, n: 2 })?;
    let r_w = closed_form_dimension(Family::Wreath { m: 1, n: 1 })?;
    let seed = ctx.seed;
    if r_s.0 != vec![2, 1] || r_s != r_s_closed {
        ctx.fail(seed, "r(S(2,2))".into(), format!("computed {r_s}, closed form {r_s_closed}"));
    }
    if r_w.0 != vec![1, 1] {
        ctx.fail(seed, "r(Z wr Z)".into(), format!("got {r_w}"));
    }
    // S(2,2) → Z≀Z, x1 ↦ a, x2 ↦ t
    let images = z_wr_z_generators();
    let zz = WreathGroup::new(1, 1);
    if images.iter().any(|g| g.is_trivial()) {
        ctx.fail(seed, "generators".into(), "an image generator is trivial");
    }
    // metabelian relators of S(2,2) must die in Z≀Z
    for rel in ["[[x1,x2],[x1,x2]^x1]", "[[x1,x2],[x1,x2]^x2]", "[[x1,x2]^x1,[x1,x2]^(x2 x1)]"] {
        let w: Word = rel.parse()?;
        if !zz.evaluate(&w, &images)?.is_trivial() {
            ctx.fail(seed, format!("relator {rel}"), "not trivial in Z wr Z");
        }
    }
    // proper: [x1, x1^x2] is nontrivial in S(2,2) and in its wreath embedding, yet maps to 1
    let k: Word = "[x1, x1^x2]".parse()?;
    let in_s = FreeSolvable::new(2, 2).normalize(&k)?;
    if in_s.is_trivial() || embed_free_solvable(&in_s).is_trivial() {
        ctx.fail(seed, "kernel witness".into(), "[x1, x1^x2] is trivial in S(2,2)");
    }
    if !zz.evaluate(&k, &images)?.is_trivial() {
        ctx.fail(seed, "kernel witness".into(), "[x1, x1^x2] does not vanish in Z wr Z");
    }
    if lex_compare(&r_s, &r_w)? != Ordering::Greater {
        ctx.fail(seed, "lex_compare".into(), format!("{r_s} is not above {r_w}"));
    }
    Ok(())
}

fn rank_bounds(ctx: &mut Ctx) -> Result<()> {
    for i in 0..ctx.samples {
        let (s, mut rng) = ctx.rng(i);
        let m = if i % 2 == 0 { 2 } else { 3 };
        let k = rng.gen_range(2..=3);
        let gens: Vec<Word> = (0..k).map(|_| ctx.word(&mut rng, m)).collect();
        let case = format!("S({m},2) gens = [{}]", gens.iter().map(Word::to_string).collect::<Vec<_>>().join("; "));
        match principal_dimension_metabelian(&gens, m) {
            Err(Error::TrivialImage) => ctx.skipped += 1,
            Err(e) => return Err(e),
            Ok(r) if r.class() < 2 => ctx.skipped += 1,
            Ok(r) => {
                if r.0[0] > k || r.0[0] > m || r.0[1] + 1 > k {
                    ctx.fail(s, case, format!("r = {r} violates the bounds for {k} generators"));
                }
            }
        }
    }
    Ok(())
}

fn independence_lifting(ctx: &mut Ctx) -> Result<()> {
    for i in 0..ctx.samples {
        let (s, mut rng) = ctx.rng(i);
        let m = 3;
        let k = 2;
        // A = ⟨x1, x2⟩ = S(2,2) inside S(3,2), a retract; rows: Fox rows of random elements of A ∩ G_2
        let count = rng.gen_range(1..=3);
        let words: Vec<Word> = (0..count)
            .map(|_| Word::commutator(&ctx.word(&mut rng, k), &ctx.word(&mut rng, k)))
            .collect();
        let rows: Vec<_> = restricted_module_generators(&words, &FreeSolvable::new(m, 1))?
            .into_iter()
            .map(|(r, _)| r)
            .collect();
        let sub: Vec<Vec<i64>> = (0..k).map(|j| (0..m).map(|c| (c == j) as i64).collect()).collect();
        let over_a = coset_rank(&rows, &sub)?;
        let over_b = full_laurent_matrix(&rows)?.rank()?;
        if over_a != over_b {
            let case = words.iter().map(Word::to_string).collect::<Vec<_>>().join("; ");
            ctx.fail(s, case, format!("rank over Z[A] = {over_a}, over Z[B] = {over_b}"));
        }
    }
    Ok(())
}

fn retraction(ctx: &mut Ctx) -> Result<()> {
    let g = FreeSolvable::new(2, 3);
    for i in 0..ctx.samples {
        let (s, mut rng) = ctx.rng(i);
        let w = series_sample(ctx, &mut rng);
        let x = g.normalize(&w)?;
        let image = x.clone();
        for level in 1..=4 {
            if g.member_by_projection(&image, level)? != g.member_by_projection(&x, level)? {
                ctx.fail(s, format!("x = {w}, i = {level}"), "identity retraction moved x across G_i");
            }
        }
    }
    Ok(())
}

/// Lossless JSON of a list of reports.
pub fn reports_to_json(reports: &[CheckReport]) -> serde_json::Value {
    serde_json::to_value(reports).expect("reports serialize")
}
