//! Equations over `S(m, n)` at desk scale: mixed words in variables and
//! constants, and exhaustive solution sets over finite balls.
//!
//! A ball-restricted solution set says nothing about solutions outside the
//! ball, so vanishing on it is a one-sided test and an empty result means
//! only "no solutions in the ball".

use std::fmt;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::free_solvable::{FreeSolvable, SolvableElement, DEFAULT_BALL_CAP};
use crate::group::Group;
use crate::word::{parse_line, Letter, Sym, Word};

pub const DEFAULT_MAX_ASSIGNMENTS: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MixedLetter {
    /// Variable `$index+1`, possibly inverted.
    Var { index: usize, inverse: bool },
    Const(Word),
}

/// A word in variables `$1 … $v` and constants from the group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedWord {
    letters: Vec<MixedLetter>,
    vars: usize,
}

impl MixedWord {
    pub fn new(letters: Vec<MixedLetter>, vars: usize) -> Result<Self> {
        for l in &letters {
            if let MixedLetter::Var { index, .. } = l {
                if *index >= vars {
                    return Err(Error::ArityMismatch { expected: vars, got: index + 1 });
                }
            }
        }
        let mut w = MixedWord { letters: Vec::new(), vars };
        for l in letters {
            w.push(l);
        }
        Ok(w)
    }

    fn push(&mut self, l: MixedLetter) {
        match (self.letters.last_mut(), l) {
            (Some(MixedLetter::Const(a)), MixedLetter::Const(b)) => *a = a.concat(&b),
            (_, MixedLetter::Const(b)) if b.is_empty() => {}
            (_, l) => self.letters.push(l),
        }
    }

    pub fn var(index: usize) -> Self {
        MixedWord { letters: vec![MixedLetter::Var { index, inverse: false }], vars: index + 1 }
    }

    pub fn constant(w: Word) -> Self {
        let mut out = MixedWord { letters: Vec::new(), vars: 0 };
        out.push(MixedLetter::Const(w));
        out
    }

    pub fn letters(&self) -> &[MixedLetter] {
        &self.letters
    }

    pub fn arity(&self) -> usize {
        self.vars
    }

    pub fn with_arity(mut self, vars: usize) -> Result<Self> {
        if vars < self.vars {
            return Err(Error::ArityMismatch { expected: vars, got: self.vars });
        }
        self.vars = vars;
        Ok(self)
    }

    pub fn inverse(&self) -> Self {
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|l| match l {
                MixedLetter::Var { index, inverse } => MixedLetter::Var { index: *index, inverse: !inverse },
                MixedLetter::Const(w) => MixedLetter::Const(w.inverse()),
            })
            .collect();
        MixedWord { letters, vars: self.vars }
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut out = MixedWord { letters: self.letters.clone(), vars: self.vars.max(other.vars) };
        for l in &other.letters {
            out.push(l.clone());
        }
        out
    }

    pub fn commutator(u: &Self, v: &Self) -> Self {
        u.inverse().concat(&v.inverse()).concat(u).concat(v)
    }

    /// Replaces every occurrence of variable `index` by `replacement`.
    pub fn substitute(&self, index: usize, replacement: &MixedWord) -> Self {
        let mut out = MixedWord { letters: Vec::new(), vars: self.vars.max(replacement.vars) };
        for l in &self.letters {
            match l {
                MixedLetter::Var { index: i, inverse } if *i == index => {
                    let r = if *inverse { replacement.inverse() } else { replacement.clone() };
                    for x in r.letters {
                        out.push(x);
                    }
                }
                other => out.push(other.clone()),
            }
        }
        out
    }

    /// Parses one line of the word grammar with `$k` for variables.
    pub fn parse_at(text: &str, line: usize) -> Result<Self> {
        let mut letters = Vec::new();
        let mut vars = 0;
        for s in parse_line(text, line)? {
            letters.push(match s.sym {
                Sym::Var(index) => {
                    vars = vars.max(index + 1);
                    MixedLetter::Var { index, inverse: s.inverse }
                }
                Sym::Gen(g) => MixedLetter::Const(Word::from_letters(vec![Letter::new(g, s.inverse)])),
            });
        }
        MixedWord::new(letters, vars)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_at(text, 1)
    }

    fn compile(&self, group: &FreeSolvable) -> Result<Compiled> {
        let parts = self
            .letters
            .iter()
            .map(|l| match l {
                MixedLetter::Var { index, inverse } => Ok(Part::Var(*index, *inverse)),
                MixedLetter::Const(w) => group.normalize(w).map(Part::Const),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Compiled { parts })
    }

    /// Canonical form of `s(g_1, …, g_v)`.
    pub fn evaluate(&self, assignment: &[SolvableElement], group: &FreeSolvable) -> Result<SolvableElement> {
        if assignment.len() != self.vars {
            return Err(Error::ArityMismatch { expected: self.vars, got: assignment.len() });
        }
        if let Some(bad) = assignment.iter().find(|e| e.group() != *group) {
            return Err(Error::mismatch(format!("{bad:?} is not in the ambient group")));
        }
        Ok(self.compile(group)?.eval(group, assignment))
    }
}

impl fmt::Display for MixedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match l {
                MixedLetter::Var { index, inverse: false } => write!(f, "${}", index + 1)?,
                MixedLetter::Var { index, inverse: true } => write!(f, "${}^-1", index + 1)?,
                MixedLetter::Const(w) => write!(f, "{w}")?,
            }
        }
        Ok(())
    }
}

enum Part {
    Var(usize, bool),
    Const(SolvableElement),
}

struct Compiled {
    parts: Vec<Part>,
}

impl Compiled {
    fn eval(&self, group: &FreeSolvable, a: &[SolvableElement]) -> SolvableElement {
        let mut acc = group.identity();
        for p in &self.parts {
            acc = match p {
                Part::Var(i, false) => group.mul(&acc, &a[*i]),
                Part::Var(i, true) => group.mul(&acc, &group.inv(&a[*i])),
                Part::Const(c) => group.mul(&acc, c),
            };
        }
        acc
    }
}

/// A system `S(X) = 1` in `vars` unknowns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct System {
    vars: usize,
    equations: Vec<MixedWord>,
}

impl System {
    /// `vars` defaults to the largest variable index used.
    pub fn new(equations: Vec<MixedWord>, vars: Option<usize>) -> Result<Self> {
        let used = equations.iter().map(MixedWord::arity).max().unwrap_or(0);
        let vars = vars.unwrap_or(used);
        let equations = equations.into_iter().map(|e| e.with_arity(vars)).collect::<Result<Vec<_>>>()?;
        Ok(System { vars, equations })
    }

    /// One mixed word per line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str, vars: Option<usize>) -> Result<Self> {
        let mut eqs = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("");
            if body.trim().is_empty() {
                continue;
            }
            eqs.push(MixedWord::parse_at(body, i + 1)?);
        }
        System::new(eqs, vars)
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn equations(&self) -> &[MixedWord] {
        &self.equations
    }

    /// The system with `f` added.
    pub fn with(&self, f: MixedWord) -> Result<Self> {
        let vars = self.vars.max(f.arity());
        let mut eqs = self.equations.clone();
        eqs.push(f);
        System::new(eqs, Some(vars))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub ball_cap: u128,
    pub max_assignments: u128,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { ball_cap: DEFAULT_BALL_CAP, max_assignments: DEFAULT_MAX_ASSIGNMENTS }
    }
}

/// Solutions found inside `ball(radius)^vars`, sorted by canonical serialization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub m: usize,
    pub n: usize,
    pub radius: usize,
    pub vars: usize,
    pub assignments: Vec<Vec<SolvableElement>>,
}

impl SolutionSet {
    pub fn group(&self) -> FreeSolvable {
        FreeSolvable::new(self.m, self.n)
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "params": { "m": self.m, "n": self.n, "radius": self.radius, "vars": self.vars },
            "count": self.assignments.len(),
            "assignments": self.assignments.iter()
                .map(|a| a.iter().map(SolvableElement::to_json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let p = v.get("params").ok_or_else(|| Error::json("missing params"))?;
        let field = |name: &str| {
            p.get(name)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| Error::json(format!("missing {name}")))
        };
        let assignments = v
            .get("assignments")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::json("missing assignments"))?
            .iter()
            .map(|a| {
                a.as_array()
                    .ok_or_else(|| Error::json("assignment must be an array"))?
                    .iter()
                    .map(SolvableElement::from_json)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SolutionSet { m: field("m")?, n: field("n")?, radius: field("radius")?, vars: field("vars")?, assignments })
    }
}

/// Every tuple from `ball(radius)^vars` on which all equations vanish.
pub fn solve_ball(
    system: &System,
    m: usize,
    n: usize,
    radius: usize,
    config: &SearchConfig,
) -> Result<SolutionSet> {
    let group = FreeSolvable::new(m, n);
    let compiled = system.equations.iter().map(|e| e.compile(&group)).collect::<Result<Vec<_>>>()?;
    let ball = group.ball(radius, config.ball_cap)?;
    let v = system.vars;
    let size = (ball.len() as u128).checked_pow(v as u32).unwrap_or(u128::MAX);
    if size > config.max_assignments {
        return Err(Error::SearchSpaceTooLarge { size, cap: config.max_assignments });
    }
    let len = ball.len() as u64;
    // index order is lexicographic in the (sorted) ball, first variable most significant
    let assignments: Vec<Vec<SolvableElement>> = (0..size as u64)
        .into_par_iter()
        .filter_map(|mut idx| {
            let mut tuple = vec![ball[0].clone(); v];
            for slot in tuple.iter_mut().rev() {
                *slot = ball[(idx % len) as usize].clone();
                idx /= len;
            }
            compiled
                .iter()
                .all(|c| c.eval(&group, &tuple).is_trivial())
                .then_some(tuple)
        })
        .collect();
    Ok(SolutionSet { m, n, radius, vars: v, assignments })
}

/// Whether `f` evaluates trivially on every enumerated solution.
pub fn vanishes_on(f: &MixedWord, sols: &SolutionSet) -> Result<bool> {
    let f = f.clone().with_arity(sols.vars)?;
    let group = sols.group();
    let c = f.compile(&group)?;
    Ok(sols.assignments.par_iter().all(|a| c.eval(&group, a).is_trivial()))
}

pub fn equivalent_on_ball(
    s: &System,
    t: &System,
    m: usize,
    n: usize,
    radius: usize,
    config: &SearchConfig,
) -> Result<bool> {
    if s.vars != t.vars {
        return Err(Error::ArityMismatch { expected: s.vars, got: t.vars });
    }
    Ok(solve_ball(s, m, n, radius, config)?.assignments == solve_ball(t, m, n, radius, config)?.assignments)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(lines: &[&str], vars: usize) -> System {
        System::parse(&lines.join("\n"), Some(vars)).unwrap()
    }

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    #[test]
    fn parse_mixed() {
        let w = MixedWord::parse("[$1, x1 x2] $2^-1").unwrap();
        assert_eq!(w.arity(), 2);
        assert_eq!(w.to_string(), "$1^-1 X2 X1 $1 x1 x2 $2^-1");
        assert!(matches!(System::parse("x1\n[x1,\n", None), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn evaluation() {
        let g = FreeSolvable::new(2, 2);
        let x1 = g.normalize(&"x1".parse().unwrap()).unwrap();
        let s = MixedWord::parse("$1 $1^-1").unwrap();
        assert!(s.evaluate(std::slice::from_ref(&x1), &g).unwrap().is_trivial());
        let s = MixedWord::parse("[$1, [x1,x2]]").unwrap();
        let expected = g.normalize(&"[x1,[x1,x2]]".parse().unwrap()).unwrap();
        let got = s.evaluate(std::slice::from_ref(&x1), &g).unwrap();
        assert_eq!(got, expected);
        assert!(!got.is_trivial());
        let c = MixedWord::parse("x1 x2").unwrap().with_arity(1).unwrap();
        assert_eq!(c.evaluate(std::slice::from_ref(&x1), &g).unwrap(), g.normalize(&"x1 x2".parse().unwrap()).unwrap());
        assert!(matches!(s.evaluate(&[], &g), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn trivial_systems() {
        let s = solve_ball(&sys(&["$1"], 1), 2, 2, 2, &cfg()).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s.assignments[0][0].is_trivial());
        let all = solve_ball(&sys(&[], 1), 2, 2, 2, &cfg()).unwrap();
        assert_eq!(all.len(), 17);
        assert!(!vanishes_on(&MixedWord::var(0), &all).unwrap());
    }

    #[test]
    fn centralizer_of_commutator() {
        let s = sys(&["[$1, [x1,x2]]"], 1);
        let sols = solve_ball(&s, 2, 2, 3, &cfg()).unwrap();
        for a in &sols.assignments {
            assert!(a[0].project(1).unwrap().is_trivial());
        }
        assert!(vanishes_on(&MixedWord::parse("[$1^2, [x1,x2]]").unwrap(), &sols).unwrap());
        assert!(vanishes_on(&s.equations()[0], &sols).unwrap());
    }

    #[test]
    fn equivalences() {
        let s = sys(&["[$1,x1]"], 1);
        let t = sys(&["[$1,x1]", "$1 $1^-1"], 1);
        assert!(equivalent_on_ball(&s, &t, 2, 2, 2, &cfg()).unwrap());
        assert!(equivalent_on_ball(&sys(&["$1"], 1), &sys(&["$1^2"], 1), 2, 2, 3, &cfg()).unwrap());
        assert!(!equivalent_on_ball(&sys(&["$1"], 1), &sys(&[], 1), 2, 2, 1, &cfg()).unwrap());
        assert!(equivalent_on_ball(&sys(&["$1"], 1), &sys(&["$1"], 2), 2, 2, 1, &cfg()).is_err());
    }

    #[test]
    fn caps() {
        let small = SearchConfig { ball_cap: DEFAULT_BALL_CAP, max_assignments: 100 };
        assert!(matches!(
            solve_ball(&sys(&["[$1,$2]"], 2), 2, 2, 2, &small),
            Err(Error::SearchSpaceTooLarge { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let sols = solve_ball(&sys(&["[$1, x1]"], 1), 2, 2, 2, &cfg()).unwrap();
        assert_eq!(SolutionSet::from_json(&sols.to_json()).unwrap(), sols);
    }
}
