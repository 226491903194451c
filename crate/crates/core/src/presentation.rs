//! Semigroup presentations read off an incidence lattice.
//!
//! Each line gives one generator. A point where the lines `i_1 < … < i_k`
//! meet gives the relation family
//!
//! ```text
//! x_{i_k} x_{i_{k-1}} ⋯ x_{i_1} = x_{i_{k-1}} ⋯ x_{i_1} x_{i_k} = ⋯ = x_{i_1} x_{i_k} ⋯ x_{i_2}
//! ```
//!
//! i.e. all cyclic rotations of the decreasing product are declared equal.
//! For `k = 2` this is the commutator `x_j x_i = x_i x_j`.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{IncidenceLattice, Point};

/// Index of a generator in its presentation.
pub type Gen = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub index: Gen,
    pub name: String,
}

/// A word over the generators, without inverses.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct PositiveWord(pub Vec<Gen>);

impl PositiveWord {
    pub fn new(letters: impl Into<Vec<Gen>>) -> Self {
        Self(letters.into())
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn concat(&self, other: &PositiveWord) -> PositiveWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        PositiveWord(v)
    }
}

impl From<Vec<Gen>> for PositiveWord {
    fn from(v: Vec<Gen>) -> Self {
        Self(v)
    }
}

impl From<&[Gen]> for PositiveWord {
    fn from(v: &[Gen]) -> Self {
        Self(v.to_vec())
    }
}

/// The rotation class of one intersection point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationFamily {
    /// Point id in the lattice the presentation was generated from.
    pub point: usize,
    /// Lines through the point, increasing.
    pub lines: Vec<usize>,
    /// Generators of the point in strictly decreasing index order.
    pub base_word: PositiveWord,
    /// `rotations[r]` is `base_word` rotated left by `r`.
    pub rotations: Vec<PositiveWord>,
}

impl RelationFamily {
    pub fn from_lines(point: usize, lines: &[usize]) -> Self {
        let mut base: Vec<Gen> = lines.to_vec();
        base.sort_unstable_by(|a, b| b.cmp(a));
        let mut sorted = base.clone();
        sorted.reverse();
        let k = base.len();
        let rotations = (0..k)
            .map(|r| {
                let mut w = base[r..].to_vec();
                w.extend_from_slice(&base[..r]);
                PositiveWord(w)
            })
            .collect();
        Self {
            point,
            lines: sorted,
            base_word: PositiveWord(base),
            rotations,
        }
    }

    pub fn multiplicity(&self) -> usize {
        self.base_word.len()
    }

    /// The `k - 1` equalities between consecutive rotations.
    pub fn chain_equalities(&self) -> impl Iterator<Item = (&PositiveWord, &PositiveWord)> {
        self.rotations.windows(2).map(|w| (&w[0], &w[1]))
    }
}

/// One defining relation `lhs = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub lhs: PositiveWord,
    pub rhs: PositiveWord,
    /// Family the relation comes from, for generated presentations.
    pub family: Option<usize>,
}

/// Provenance attached to relations of a generated presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationSource {
    pub point: usize,
    pub location: [String; 2],
    pub lines: Vec<usize>,
}

/// `(v′, v, relation id)` for the relation `s·v′ = t·v`.
type PairEntry = (Vec<Gen>, Vec<Gen>, usize);
type FirstSeen<'a> = (usize, &'a [Gen], &'a [Gen]);

/// A semigroup presentation `(S, R)`.
///
/// Relations are kept in the pairwise form `s·v′ = s′·v`; [`Self::pair_relation`]
/// looks up the one used by reversing for a given ordered pair of initial
/// letters.
#[derive(Debug, Clone)]
pub struct Presentation {
    generators: Vec<Generator>,
    families: Vec<RelationFamily>,
    relations: Vec<Relation>,
    sources: Vec<RelationSource>,
    /// `pairs[s * n + t]` = relation `s·v′ = t·v` as `(v′, v, relation id)`.
    pairs: Vec<Option<PairEntry>>,
}

impl Presentation {
    /// Builds a presentation from explicit relations.
    pub fn new(names: Vec<String>, relations: Vec<(PositiveWord, PositiveWord)>) -> Result<Self> {
        let n = names.len();
        let mut seen = HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidPresentation(format!(
                    "duplicate generator `{name}`"
                )));
            }
        }
        for (k, (l, r)) in relations.iter().enumerate() {
            if l.is_empty() || r.is_empty() {
                return Err(Error::InvalidPresentation(format!(
                    "relation {k} has an empty side"
                )));
            }
            if let Some(&g) = l.0.iter().chain(&r.0).find(|&&g| g >= n) {
                return Err(Error::InvalidPresentation(format!(
                    "relation {k} uses generator {g} of {n}"
                )));
            }
        }
        let generators = names
            .into_iter()
            .enumerate()
            .map(|(index, name)| Generator { index, name })
            .collect();
        let relations = relations
            .into_iter()
            .map(|(lhs, rhs)| Relation {
                lhs,
                rhs,
                family: None,
            })
            .collect();
        Ok(Self::assemble(
            generators,
            Vec::new(),
            relations,
            Vec::new(),
        ))
    }

    /// The conjugation-free presentation of an arrangement: one generator per
    /// line, one rotation family per intersection point (simple points
    /// included).
    pub fn from_lattice(lat: &IncidenceLattice) -> Self {
        let n = lat.line_count();
        let generators = (0..n)
            .map(|index| Generator {
                index,
                name: format!("x{index}"),
            })
            .collect();
        let mut families = Vec::new();
        let mut relations = Vec::new();
        let mut sources = Vec::new();
        for (pid, point) in lat.points().iter().enumerate() {
            let family = RelationFamily::from_lines(pid, &point.lines);
            let fid = families.len();
            let k = family.rotations.len();
            for r in 0..k {
                for q in r + 1..k {
                    relations.push(Relation {
                        lhs: family.rotations[r].clone(),
                        rhs: family.rotations[q].clone(),
                        family: Some(fid),
                    });
                    sources.push(source_of(pid, &point.location, &point.lines));
                }
            }
            families.push(family);
        }
        Self::assemble(generators, families, relations, sources)
    }

    fn assemble(
        generators: Vec<Generator>,
        families: Vec<RelationFamily>,
        relations: Vec<Relation>,
        sources: Vec<RelationSource>,
    ) -> Self {
        let n = generators.len();
        let mut pairs = vec![None; n * n];
        for (id, rel) in relations.iter().enumerate() {
            let (s, t) = (rel.lhs.0[0], rel.rhs.0[0]);
            if s == t {
                continue;
            }
            if pairs[s * n + t].is_none() {
                pairs[s * n + t] = Some((rel.lhs.0[1..].to_vec(), rel.rhs.0[1..].to_vec(), id));
                pairs[t * n + s] = Some((rel.rhs.0[1..].to_vec(), rel.lhs.0[1..].to_vec(), id));
            }
        }
        Self {
            generators,
            families,
            relations,
            sources,
            pairs,
        }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn families(&self) -> &[RelationFamily] {
        &self.families
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Provenance per relation; empty for hand-built presentations.
    pub fn sources(&self) -> &[RelationSource] {
        &self.sources
    }

    /// `(v′, v)` with `s·v′ = t·v` in `R`, if such a relation exists.
    pub fn pair_relation(&self, s: Gen, t: Gen) -> Option<(&[Gen], &[Gen])> {
        let n = self.generators.len();
        self.pairs[s * n + t]
            .as_ref()
            .map(|(a, b, _)| (a.as_slice(), b.as_slice()))
    }

    /// Index in [`Self::relations`] of the relation behind `pair_relation(s, t)`.
    pub fn pair_relation_id(&self, s: Gen, t: Gen) -> Option<usize> {
        let n = self.generators.len();
        self.pairs[s * n + t].as_ref().map(|p| p.2)
    }

    pub fn generator_by_name(&self, name: &str) -> Option<Gen> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn name(&self, g: Gen) -> &str {
        &self.generators[g].name
    }

    pub fn format_word(&self, w: &[Gen]) -> String {
        if w.is_empty() {
            return "ε".to_string();
        }
        w.iter()
            .map(|&g| self.name(g))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses whitespace-separated generator names.
    pub fn parse_positive_word(&self, text: &str) -> Result<PositiveWord> {
        text.split_whitespace()
            .map(|tok| {
                self.generator_by_name(tok)
                    .ok_or_else(|| Error::UnknownGenerator(tok.to_string()))
            })
            .collect::<Result<Vec<_>>>()
            .map(PositiveWord)
    }

    /// Every relation preserves length, so word length is an invariant
    /// grading.
    pub fn is_homogeneous(&self) -> bool {
        self.first_inhomogeneous().is_none()
    }

    pub(crate) fn first_inhomogeneous(&self) -> Option<usize> {
        self.relations
            .iter()
            .position(|r| r.lhs.len() != r.rhs.len())
    }

    /// Checks both complementedness conditions over the relation list.
    pub fn is_complemented(&self) -> ComplementedReport {
        let mut violations = Vec::new();
        let mut by_pair: HashMap<(Gen, Gen), FirstSeen> = HashMap::new();
        for (k, rel) in self.relations.iter().enumerate() {
            let (s, t) = (rel.lhs.0[0], rel.rhs.0[0]);
            if s == t {
                violations.push(Violation::SamePrefix {
                    relation: k,
                    generator: s,
                });
                continue;
            }
            // orient so that the smaller initial letter is first
            let (key, a, b) = if s < t {
                ((s, t), &rel.lhs.0[..], &rel.rhs.0[..])
            } else {
                ((t, s), &rel.rhs.0[..], &rel.lhs.0[..])
            };
            match by_pair.get(&key) {
                Some(&(first, pa, pb)) if (pa, pb) != (a, b) => {
                    violations.push(Violation::DuplicatePair {
                        first,
                        second: k,
                        generators: key,
                    });
                }
                Some(_) => {}
                None => {
                    by_pair.insert(key, (k, a, b));
                }
            }
        }
        ComplementedReport {
            ok: violations.is_empty(),
            violations,
        }
    }

    pub fn to_file(&self, certified: Option<bool>) -> PresentationFile {
        let word = |w: &PositiveWord| w.0.iter().map(|&g| self.name(g).to_string()).collect();
        PresentationFile {
            generators: self.generators.iter().map(|g| g.name.clone()).collect(),
            relations: self
                .relations
                .iter()
                .map(|r| [word(&r.lhs), word(&r.rhs)])
                .collect(),
            certified,
            provenance: if self.sources.is_empty() {
                None
            } else {
                Some(self.sources.clone())
            },
        }
    }

    pub fn from_file(file: &PresentationFile) -> Result<Self> {
        let index: HashMap<&str, Gen> = file
            .generators
            .iter()
            .enumerate()
            .map(|(i, name)| (name.as_str(), i))
            .collect();
        let word = |names: &Vec<String>| -> Result<PositiveWord> {
            names
                .iter()
                .map(|n| {
                    index
                        .get(n.as_str())
                        .copied()
                        .ok_or_else(|| Error::UnknownGenerator(n.clone()))
                })
                .collect::<Result<Vec<_>>>()
                .map(PositiveWord)
        };
        let relations = file
            .relations
            .iter()
            .map(|[l, r]| Ok((word(l)?, word(r)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(file.generators.clone(), relations)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(&serde_json::from_str(text)?)
    }

    pub fn to_json(&self, certified: Option<bool>) -> String {
        serde_json::to_string_pretty(&self.to_file(certified)).expect("presentation serializes")
    }
}

fn source_of(point: usize, location: &Point, lines: &[usize]) -> RelationSource {
    RelationSource {
        point,
        location: [location.x.to_string(), location.y.to_string()],
        lines: lines.to_vec(),
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.generators.iter().map(|g| g.name.as_str()).collect();
        writeln!(f, "generators: {}", names.join(", "))?;
        if self.families.is_empty() {
            for r in &self.relations {
                writeln!(
                    f,
                    "  {} = {}",
                    self.format_word(&r.lhs.0),
                    self.format_word(&r.rhs.0)
                )?;
            }
        } else {
            for fam in &self.families {
                let rots: Vec<String> = fam
                    .rotations
                    .iter()
                    .map(|w| self.format_word(&w.0))
                    .collect();
                writeln!(f, "  {}", rots.join(" = "))?;
            }
        }
        Ok(())
    }
}

/// On-disk presentation schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationFile {
    pub generators: Vec<String>,
    pub relations: Vec<[Vec<String>; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certified: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Vec<RelationSource>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    /// A relation `s… = s…`.
    SamePrefix { relation: usize, generator: Gen },
    /// Two different relations `s… = s′…`.
    DuplicatePair {
        first: usize,
        second: usize,
        generators: (Gen, Gen),
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplementedReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}
