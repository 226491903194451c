//! Subword reversing over a complemented presentation.
//!
//! A negative-positive factor `s⁻¹ t` is replaced by `v′ v⁻¹` using the
//! relation `s·v′ = t·v`; a factor `s⁻¹ s` is deleted. Reversing stops when
//! the word has the shape `v′ v⁻¹` with `v′`, `v` positive, when a needed
//! relation is missing (the word is *stuck*), or when the step budget runs
//! out.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::monoid;
use crate::presentation::{Gen, PositiveWord, Presentation};

pub const DEFAULT_BUDGET: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedLetter {
    pub generator: Gen,
    pub inverse: bool,
}

impl SignedLetter {
    pub fn pos(generator: Gen) -> Self {
        Self {
            generator,
            inverse: false,
        }
    }

    pub fn neg(generator: Gen) -> Self {
        Self {
            generator,
            inverse: true,
        }
    }
}

/// A word over generators and their formal inverses; may be empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SignedWord(pub Vec<SignedLetter>);

impl SignedWord {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn positive(w: &[Gen]) -> Self {
        Self(w.iter().map(|&g| SignedLetter::pos(g)).collect())
    }

    /// `w⁻¹` for a positive word `w`.
    pub fn inverse_of(w: &[Gen]) -> Self {
        Self(w.iter().rev().map(|&g| SignedLetter::neg(g)).collect())
    }

    /// `u⁻¹ v` for positive `u`, `v`.
    pub fn quotient(u: &[Gen], v: &[Gen]) -> Self {
        let mut w = Self::inverse_of(u);
        w.0.extend(v.iter().map(|&g| SignedLetter::pos(g)));
        w
    }

    pub fn concat(mut self, other: &SignedWord) -> Self {
        self.0.extend_from_slice(&other.0);
        self
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_reversible_at(&self, position: usize) -> bool {
        position + 1 < self.0.len() && self.0[position].inverse && !self.0[position + 1].inverse
    }

    pub fn reversible_positions(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.0.len().saturating_sub(1)).filter(|&i| self.is_reversible_at(i))
    }

    /// Shape `v′ v⁻¹`: no negative letter is followed by a positive one.
    pub fn is_terminal(&self) -> bool {
        self.reversible_positions().next().is_none()
    }

    /// Splits a terminal word `v′ v⁻¹` into `(v′, v)`.
    pub fn split_terminal(&self) -> Option<(PositiveWord, PositiveWord)> {
        let cut = self
            .0
            .iter()
            .position(|l| l.inverse)
            .unwrap_or(self.0.len());
        if self.0[cut..].iter().any(|l| !l.inverse) {
            return None;
        }
        let num = self.0[..cut].iter().map(|l| l.generator).collect();
        let den = self.0[cut..].iter().rev().map(|l| l.generator).collect();
        Some((PositiveWord(num), PositiveWord(den)))
    }

    /// Signed letter counts per generator (the image in the abelianization).
    pub fn exponent_vector(&self, generators: usize) -> Vec<i64> {
        let mut v = vec![0; generators];
        for l in &self.0 {
            v[l.generator] += if l.inverse { -1 } else { 1 };
        }
        v
    }

    /// Parses `x0 x1^-1 x2`.
    pub fn parse(p: &Presentation, text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let (name, inverse) = match tok.strip_suffix("^-1") {
                Some(name) => (name, true),
                None => (tok, false),
            };
            if name.is_empty() || name.contains('^') {
                return Err(Error::InvalidWord(tok.to_string()));
            }
            let g = p
                .generator_by_name(name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            letters.push(SignedLetter {
                generator: g,
                inverse,
            });
        }
        Ok(Self(letters))
    }

    pub fn display<'a>(&'a self, p: &'a Presentation) -> impl fmt::Display + 'a {
        DisplayWord { word: self, p }
    }

    pub fn to_names(&self, p: &Presentation) -> Vec<String> {
        self.0
            .iter()
            .map(|l| {
                if l.inverse {
                    format!("{}^-1", p.name(l.generator))
                } else {
                    p.name(l.generator).to_string()
                }
            })
            .collect()
    }
}

struct DisplayWord<'a> {
    word: &'a SignedWord,
    p: &'a Presentation,
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "ε");
        }
        write!(f, "{}", self.word.to_names(self.p).join(" "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum StepError {
    #[error("no negative-positive factor at position {position}")]
    NotReversible { position: usize },
    #[error("stuck at position {position}: no relation between generators {s} and {t}")]
    Stuck { position: usize, s: Gen, t: Gen },
}

/// Which rule a reversing step applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    Relation(usize),
    FreeCancellation,
}

impl Serialize for Rule {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Rule::Relation(id) => serializer.serialize_u64(*id as u64),
            Rule::FreeCancellation => serializer.serialize_str("free-cancellation"),
        }
    }
}

fn apply_step(
    p: &Presentation,
    letters: &mut Vec<SignedLetter>,
    position: usize,
) -> std::result::Result<Rule, StepError> {
    if !(position + 1 < letters.len()
        && letters[position].inverse
        && !letters[position + 1].inverse)
    {
        return Err(StepError::NotReversible { position });
    }
    let s = letters[position].generator;
    let t = letters[position + 1].generator;
    if s == t {
        letters.drain(position..position + 2);
        return Ok(Rule::FreeCancellation);
    }
    let (num, den) = p
        .pair_relation(s, t)
        .ok_or(StepError::Stuck { position, s, t })?;
    let replacement = num
        .iter()
        .map(|&g| SignedLetter::pos(g))
        .chain(den.iter().rev().map(|&g| SignedLetter::neg(g)));
    letters.splice(position..position + 2, replacement);
    Ok(Rule::Relation(
        p.pair_relation_id(s, t).expect("pair relation has an id"),
    ))
}

/// One reversing step at `position`.
pub fn reverse_step(
    p: &Presentation,
    w: &SignedWord,
    position: usize,
) -> std::result::Result<SignedWord, StepError> {
    let mut letters = w.0.clone();
    apply_step(p, &mut letters, position)?;
    Ok(SignedWord(letters))
}

/// How the next reversible factor is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    /// Uniformly random among the reversible factors, from a fixed seed.
    Random {
        seed: u64,
    },
}

/// Where a reversing run ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// The final word, of shape `v′ v⁻¹`.
    Terminal(SignedWord),
    /// A factor `s⁻¹ t` with no relation `s… = t…`.
    Stuck {
        word: SignedWord,
        position: usize,
        s: Gen,
        t: Gen,
    },
    ExhaustedBudget(SignedWord),
}

impl Outcome {
    pub fn terminal(&self) -> Option<&SignedWord> {
        match self {
            Outcome::Terminal(w) => Some(w),
            _ => None,
        }
    }
}

/// Reverses `w` without recording a trace.
pub fn reverse_with(p: &Presentation, w: SignedWord, budget: usize, strategy: Strategy) -> Outcome {
    let mut letters = w.0;
    let mut steps = 0;
    match strategy {
        Strategy::Leftmost => {
            let mut cursor = 0;
            loop {
                let Some(pos) = (cursor..letters.len().saturating_sub(1))
                    .find(|&i| letters[i].inverse && !letters[i + 1].inverse)
                else {
                    return Outcome::Terminal(SignedWord(letters));
                };
                if steps == budget {
                    return Outcome::ExhaustedBudget(SignedWord(letters));
                }
                if let Err(StepError::Stuck { position, s, t }) = apply_step(p, &mut letters, pos) {
                    return Outcome::Stuck {
                        word: SignedWord(letters),
                        position,
                        s,
                        t,
                    };
                }
                steps += 1;
                // Only the factor straddling the rewritten spot can be new.
                cursor = pos.saturating_sub(1);
            }
        }
        Strategy::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            loop {
                let word = SignedWord(letters);
                let positions: Vec<usize> = word.reversible_positions().collect();
                letters = word.0;
                if positions.is_empty() {
                    return Outcome::Terminal(SignedWord(letters));
                }
                if steps == budget {
                    return Outcome::ExhaustedBudget(SignedWord(letters));
                }
                let pos = positions[rng.gen_range(0..positions.len())];
                if let Err(StepError::Stuck { position, s, t }) = apply_step(p, &mut letters, pos) {
                    return Outcome::Stuck {
                        word: SignedWord(letters),
                        position,
                        s,
                        t,
                    };
                }
                steps += 1;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub word: SignedWord,
    /// Position of the reversed factor in the previous word; `None` for the
    /// input.
    pub position: Option<usize>,
    pub rule: Option<Rule>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum TraceStatus {
    Terminal,
    Stuck { position: usize, s: Gen, t: Gen },
    ExhaustedBudget,
}

/// Every intermediate word of a leftmost reversing run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversingTrace {
    pub steps: Vec<TraceStep>,
    pub status: TraceStatus,
}

impl ReversingTrace {
    pub fn last(&self) -> &SignedWord {
        &self.steps.last().expect("trace holds the input").word
    }

    pub fn step_count(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn to_json(&self, p: &Presentation) -> serde_json::Value {
        let steps: Vec<serde_json::Value> = self
            .steps
            .iter()
            .map(|s| {
                serde_json::json!({
                    "word": s.word.to_names(p),
                    "position": s.position,
                    "rule": s.rule,
                })
            })
            .collect();
        let mut out = serde_json::to_value(self.status).expect("status serializes");
        out["steps"] = serde_json::Value::Array(steps);
        out
    }
}

/// Leftmost reversing of `w`, recording every step.
pub fn reverse(p: &Presentation, w: &SignedWord, budget: usize) -> ReversingTrace {
    let mut steps = vec![TraceStep {
        word: w.clone(),
        position: None,
        rule: None,
    }];
    let mut current = w.0.clone();
    loop {
        let Some(pos) = (0..current.len().saturating_sub(1))
            .find(|&i| current[i].inverse && !current[i + 1].inverse)
        else {
            return ReversingTrace {
                steps,
                status: TraceStatus::Terminal,
            };
        };
        if steps.len() > budget {
            return ReversingTrace {
                steps,
                status: TraceStatus::ExhaustedBudget,
            };
        }
        match apply_step(p, &mut current, pos) {
            Ok(rule) => steps.push(TraceStep {
                word: SignedWord(current.clone()),
                position: Some(pos),
                rule: Some(rule),
            }),
            Err(StepError::Stuck { position, s, t }) => {
                return ReversingTrace {
                    steps,
                    status: TraceStatus::Stuck { position, s, t },
                }
            }
            Err(StepError::NotReversible { .. }) => unreachable!("position was checked"),
        }
    }
}

/// Reversing ran out of steps before reaching a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("reversing budget of {budget} steps exhausted")]
pub struct BudgetExhausted {
    pub budget: usize,
}

/// `(w\w′, w′\w)`: the `(v′, v)` with `w⁻¹ w′ ⟶ v′ v⁻¹`, or `None` when
/// reversing gets stuck.
pub fn complement_pair(
    p: &Presentation,
    w: &[Gen],
    w2: &[Gen],
    budget: usize,
) -> std::result::Result<Option<(PositiveWord, PositiveWord)>, BudgetExhausted> {
    match reverse_with(p, SignedWord::quotient(w, w2), budget, Strategy::Leftmost) {
        Outcome::Terminal(t) => Ok(Some(t.split_terminal().expect("terminal word splits"))),
        Outcome::Stuck { .. } => Ok(None),
        Outcome::ExhaustedBudget(_) => Err(BudgetExhausted { budget }),
    }
}

/// The complement `w\w′`.
pub fn complement(
    p: &Presentation,
    w: &[Gen],
    w2: &[Gen],
    budget: usize,
) -> std::result::Result<Option<PositiveWord>, BudgetExhausted> {
    Ok(complement_pair(p, w, w2, budget)?.map(|(num, _)| num))
}

/// `(u\u′)\(u\u″)`.
pub fn double_complement(
    p: &Presentation,
    u: &[Gen],
    u1: &[Gen],
    u2: &[Gen],
    budget: usize,
) -> std::result::Result<Option<PositiveWord>, BudgetExhausted> {
    let (Some(a), Some(b)) = (complement(p, u, u1, budget)?, complement(p, u, u2, budget)?) else {
        return Ok(None);
    };
    complement(p, &a.0, &b.0, budget)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CubeVerdict {
    Holds,
    Fails,
    Undetermined,
}

impl CubeVerdict {
    fn and(self, other: CubeVerdict) -> CubeVerdict {
        use CubeVerdict::*;
        match (self, other) {
            (Fails, _) | (_, Fails) => Fails,
            (Undetermined, _) | (_, Undetermined) => Undetermined,
            _ => Holds,
        }
    }
}

/// Cube condition for `(u, u′, u″)`: if `u⁻¹ u″ u″⁻¹ u′ ⟶ v′ v⁻¹` then
/// `(u v′)⁻¹ (u′ v) ⟶ ε`.
pub fn cube_condition_direct(
    p: &Presentation,
    u: &[Gen],
    u1: &[Gen],
    u2: &[Gen],
    budget: usize,
) -> CubeVerdict {
    let hypothesis = SignedWord::quotient(u, u2).concat(&SignedWord::quotient(u2, u1));
    let (num, den) = match reverse_with(p, hypothesis, budget, Strategy::Leftmost) {
        Outcome::Terminal(t) => t.split_terminal().expect("terminal word splits"),
        Outcome::Stuck { .. } => return CubeVerdict::Holds,
        Outcome::ExhaustedBudget(_) => return CubeVerdict::Undetermined,
    };
    let left: Vec<Gen> = u.iter().chain(&num.0).copied().collect();
    let right: Vec<Gen> = u1.iter().chain(&den.0).copied().collect();
    match reverse_with(
        p,
        SignedWord::quotient(&left, &right),
        budget,
        Strategy::Leftmost,
    ) {
        Outcome::Terminal(t) if t.is_empty() => CubeVerdict::Holds,
        Outcome::Terminal(_) | Outcome::Stuck { .. } => CubeVerdict::Fails,
        Outcome::ExhaustedBudget(_) => CubeVerdict::Undetermined,
    }
}

/// The six orderings of a triple.
pub fn permutations<T: Copy>(t: [T; 3]) -> [[T; 3]; 6] {
    let [a, b, c] = t;
    [
        [a, b, c],
        [a, c, b],
        [b, a, c],
        [b, c, a],
        [c, a, b],
        [c, b, a],
    ]
}

/// Cube condition on `{u, u′, u″}` in complement form: for every ordering,
/// `(u\u′)\(u\u″)` and `(u′\u)\(u′\u″)` are both undefined or both defined
/// and equivalent. Equivalence is decided by class closure in the monoid,
/// not by reversing.
pub fn cube_condition_complement_form(
    p: &Presentation,
    u: &[Gen],
    u1: &[Gen],
    u2: &[Gen],
    budget: usize,
) -> CubeVerdict {
    let mut verdict = CubeVerdict::Holds;
    for [a, b, c] in permutations([u, u1, u2]) {
        let here = match (
            double_complement(p, a, b, c, budget),
            double_complement(p, b, a, c, budget),
        ) {
            (Ok(None), Ok(None)) => CubeVerdict::Holds,
            (Ok(Some(x)), Ok(Some(y))) => {
                match monoid::equivalent(p, &x, &y, monoid::DEFAULT_SIZE_CAP) {
                    Ok(true) => CubeVerdict::Holds,
                    Ok(false) => CubeVerdict::Fails,
                    Err(_) => CubeVerdict::Undetermined,
                }
            }
            (Ok(_), Ok(_)) => CubeVerdict::Fails,
            _ => CubeVerdict::Undetermined,
        };
        verdict = verdict.and(here);
        if verdict == CubeVerdict::Fails {
            break;
        }
    }
    verdict
}

/// Direct cube condition required for every ordering of `{u, u′, u″}`.
pub fn cube_condition_direct_on_set(
    p: &Presentation,
    u: &[Gen],
    u1: &[Gen],
    u2: &[Gen],
    budget: usize,
) -> CubeVerdict {
    permutations([u, u1, u2])
        .into_iter()
        .fold(CubeVerdict::Holds, |acc, [a, b, c]| {
            if acc == CubeVerdict::Fails {
                acc
            } else {
                acc.and(cube_condition_direct(p, a, b, c, budget))
            }
        })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Completeness {
    Complete,
    Incomplete { witness: [Gen; 3] },
    Undetermined { triple: [Gen; 3] },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompletenessReport {
    #[serde(flatten)]
    pub verdict: Completeness,
    pub triples_checked: usize,
    pub triples_total: usize,
}

/// Completeness of a homogeneous presentation via the cube condition on
/// single generators.
pub fn is_complete(p: &Presentation, budget: usize) -> Result<CompletenessReport> {
    is_complete_with_progress(p, budget, |_, _| {})
}

/// As [`is_complete`], calling `progress(checked, total)` after each triple.
pub fn is_complete_with_progress(
    p: &Presentation,
    budget: usize,
    mut progress: impl FnMut(usize, usize),
) -> Result<CompletenessReport> {
    if let Some(relation) = p.first_inhomogeneous() {
        return Err(Error::NotHomogeneous { relation });
    }
    let n = p.generator_count();
    let total = n * n * n;
    let mut checked = 0;
    let mut undetermined = None;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                checked += 1;
                let v = cube_condition_direct(p, &[a], &[b], &[c], budget);
                progress(checked, total);
                match v {
                    CubeVerdict::Holds => {}
                    CubeVerdict::Fails => {
                        return Ok(CompletenessReport {
                            verdict: Completeness::Incomplete { witness: [a, b, c] },
                            triples_checked: checked,
                            triples_total: total,
                        })
                    }
                    CubeVerdict::Undetermined => {
                        undetermined.get_or_insert([a, b, c]);
                    }
                }
            }
        }
    }
    let verdict = match undetermined {
        Some(triple) => Completeness::Undetermined { triple },
        None => Completeness::Complete,
    };
    Ok(CompletenessReport {
        verdict,
        triples_checked: checked,
        triples_total: total,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WordProblem {
    Equal,
    Distinct,
    Undetermined,
}

/// Decides `w ≡ w′` by reversing `w⁻¹ w′`; exact once the presentation is
/// known to be complete.
pub fn word_problem(p: &Presentation, w: &[Gen], w2: &[Gen], budget: usize) -> WordProblem {
    match reverse_with(p, SignedWord::quotient(w, w2), budget, Strategy::Leftmost) {
        Outcome::Terminal(t) if t.is_empty() => WordProblem::Equal,
        Outcome::Terminal(_) | Outcome::Stuck { .. } => WordProblem::Distinct,
        Outcome::ExhaustedBudget(_) => WordProblem::Undetermined,
    }
}
