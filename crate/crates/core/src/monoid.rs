//! Exact exploration of `⟨S | R⟩⁺` by length.
//!
//! When every relation preserves length, the class of a word only contains
//! words of the same length, so each length can be partitioned on its own
//! with a union-find over single-relation rewrites. This gives an exact
//! equivalence oracle that does not depend on reversing.

use std::collections::{HashSet, VecDeque};

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::{Gen, PositiveWord, Presentation};

/// Maximum number of words per length, or per explored class.
pub const DEFAULT_SIZE_CAP: usize = 200_000;

#[derive(Debug, Clone)]
struct Level {
    /// Class id of each word, indexed by its base-`n` code.
    class_of: Vec<u32>,
    class_count: usize,
}

/// Partition of all positive words of length `<= max_length` into
/// `≡⁺_R`-classes.
#[derive(Debug, Clone)]
pub struct GradedClasses {
    generators: usize,
    max_length: usize,
    levels: Vec<Level>,
}

fn word_count(n: usize, len: usize) -> u128 {
    (n as u128).pow(len as u32)
}

fn encode(n: usize, w: &[Gen]) -> usize {
    w.iter().fold(0, |acc, &g| acc * n + g)
}

fn decode(n: usize, len: usize, mut code: usize) -> Vec<Gen> {
    let mut w = vec![0; len];
    for slot in w.iter_mut().rev() {
        *slot = code % n;
        code /= n;
    }
    w
}

/// Partitions words by length up to `max_length`.
pub fn enumerate_classes(p: &Presentation, max_length: usize, cap: usize) -> Result<GradedClasses> {
    if let Some(relation) = p.first_inhomogeneous() {
        return Err(Error::NotHomogeneous { relation });
    }
    let n = p.generator_count();
    let mut levels = Vec::with_capacity(max_length + 1);
    for len in 0..=max_length {
        let words = word_count(n, len);
        if words > cap as u128 {
            return Err(Error::SizeCapExceeded {
                length: len,
                words,
                cap,
            });
        }
        levels.push(partition_level(p, n, len, words as usize));
    }
    Ok(GradedClasses {
        generators: n,
        max_length,
        levels,
    })
}

fn partition_level(p: &Presentation, n: usize, len: usize, words: usize) -> Level {
    let mut uf = UnionFind::<usize>::new(words);
    for rel in p.relations() {
        let m = rel.lhs.len();
        if m > len {
            continue;
        }
        let (lc, rc) = (encode(n, &rel.lhs.0), encode(n, &rel.rhs.0));
        for pos in 0..=len - m {
            let suffix_len = len - pos - m;
            let scale = n.pow(suffix_len as u32);
            let block = n.pow((suffix_len + m) as u32);
            for pre in 0..n.pow(pos as u32) {
                for suf in 0..scale {
                    let a = pre * block + lc * scale + suf;
                    let b = pre * block + rc * scale + suf;
                    uf.union(a, b);
                }
            }
        }
    }
    let mut label = vec![u32::MAX; words];
    let mut class_of = Vec::with_capacity(words);
    let mut class_count = 0;
    for code in 0..words {
        let root = uf.find(code);
        if label[root] == u32::MAX {
            label[root] = class_count as u32;
            class_count += 1;
        }
        class_of.push(label[root]);
    }
    Level {
        class_of,
        class_count,
    }
}

impl GradedClasses {
    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn max_length(&self) -> usize {
        self.max_length
    }

    /// Number of classes of each length `0..=max_length`.
    pub fn class_counts(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.class_count).collect()
    }

    /// Class id of `w` among words of its length.
    pub fn class_of(&self, w: &[Gen]) -> Result<usize> {
        if w.len() > self.max_length {
            return Err(Error::WordTooLong {
                length: w.len(),
                max_length: self.max_length,
            });
        }
        Ok(self.levels[w.len()].class_of[encode(self.generators, w)] as usize)
    }

    /// All words of length `len` in class `class`.
    pub fn class_members(&self, len: usize, class: usize) -> Vec<PositiveWord> {
        self.levels[len]
            .class_of
            .iter()
            .enumerate()
            .filter(|(_, &c)| c as usize == class)
            .map(|(code, _)| PositiveWord(decode(self.generators, len, code)))
            .collect()
    }

    /// Words of length `len`, in code order.
    pub fn words(&self, len: usize) -> impl Iterator<Item = Vec<Gen>> + '_ {
        let n = self.generators;
        (0..self.levels[len].class_of.len()).map(move |code| decode(n, len, code))
    }
}

/// `w ≡⁺_R w′` by class lookup.
pub fn oracle_equivalent(gc: &GradedClasses, w: &[Gen], w2: &[Gen]) -> Result<bool> {
    let (a, b) = (gc.class_of(w)?, gc.class_of(w2)?);
    Ok(w.len() == w2.len() && a == b)
}

/// `w ≡⁺_R w′` by exploring the (finite) class of `w`, for words of any
/// length. Exact for homogeneous presentations.
pub fn equivalent(
    p: &Presentation,
    w: &PositiveWord,
    w2: &PositiveWord,
    cap: usize,
) -> Result<bool> {
    if let Some(relation) = p.first_inhomogeneous() {
        return Err(Error::NotHomogeneous { relation });
    }
    if w.len() != w2.len() {
        return Ok(false);
    }
    if w == w2 {
        return Ok(true);
    }
    let mut seen: HashSet<Vec<Gen>> = HashSet::from([w.0.clone()]);
    let mut queue = VecDeque::from([w.0.clone()]);
    while let Some(cur) = queue.pop_front() {
        for next in rewrites(p, &cur) {
            if next == w2.0 {
                return Ok(true);
            }
            if seen.insert(next.clone()) {
                if seen.len() > cap {
                    return Err(Error::SizeCapExceeded {
                        length: w.len(),
                        words: seen.len() as u128,
                        cap,
                    });
                }
                queue.push_back(next);
            }
        }
    }
    Ok(false)
}

/// Words obtained from `w` by one relation applied in either direction.
fn rewrites<'a>(p: &'a Presentation, w: &'a [Gen]) -> impl Iterator<Item = Vec<Gen>> + 'a {
    p.relations().iter().flat_map(move |rel| {
        [(&rel.lhs.0, &rel.rhs.0), (&rel.rhs.0, &rel.lhs.0)]
            .into_iter()
            .flat_map(move |(from, to)| {
                let m = from.len();
                (0..(w.len() + 1).saturating_sub(m))
                    .filter(move |&pos| &w[pos..pos + m] == from.as_slice())
                    .map(move |pos| {
                        let mut v = w[..pos].to_vec();
                        v.extend_from_slice(to);
                        v.extend_from_slice(&w[pos + m..]);
                        v
                    })
            })
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CancellationFailure {
    pub generator: Gen,
    pub y: PositiveWord,
    pub z: PositiveWord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CancellativityReport {
    pub ok: bool,
    pub counterexample: Option<CancellationFailure>,
    pub verified_up_to: usize,
}

/// Checks `s·y ≡ s·z ⟹ y ≡ z` for every generator `s` and all words with
/// `|s·y| <= max_length`.
pub fn check_left_cancellativity(gc: &GradedClasses) -> CancellativityReport {
    let n = gc.generators;
    for len in 1..=gc.max_length {
        let tail = len - 1;
        let tail_words = gc.levels[tail].class_of.len();
        let mut first_tail: Vec<Option<usize>> = vec![None; gc.levels[len].class_count * n];
        for s in 0..n {
            for y in 0..tail_words {
                let sy = s * tail_words + y;
                let key = gc.levels[len].class_of[sy] as usize * n + s;
                match first_tail[key] {
                    None => first_tail[key] = Some(y),
                    Some(z) if gc.levels[tail].class_of[z] != gc.levels[tail].class_of[y] => {
                        return CancellativityReport {
                            ok: false,
                            counterexample: Some(CancellationFailure {
                                generator: s,
                                y: PositiveWord(decode(n, tail, z)),
                                z: PositiveWord(decode(n, tail, y)),
                            }),
                            verified_up_to: len - 1,
                        };
                    }
                    Some(_) => {}
                }
            }
        }
    }
    CancellativityReport {
        ok: true,
        counterexample: None,
        verified_up_to: gc.max_length,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairLcm {
    pub s: Gen,
    pub t: Gen,
    /// `s·(s\t)`, when the pair has a relation.
    pub lcm: Option<PositiveWord>,
    /// Classes found up to the maximum length that are multiples of both.
    pub common_multiples: usize,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LcmReport {
    pub ok: bool,
    pub verified_up_to: usize,
    pub pairs: Vec<PairLcm>,
}

/// For each pair of distinct generators, checks that `s·(s\t) ≡ t·(t\s)` and
/// that every common right-multiple of `s` and `t` found up to the maximum
/// length is a right-multiple of it.
pub fn check_lcm_existence(gc: &GradedClasses, p: &Presentation) -> LcmReport {
    let n = gc.generators;
    let mut pairs = Vec::new();
    for s in 0..n {
        for t in s + 1..n {
            pairs.push(check_pair(gc, p, s, t));
        }
    }
    LcmReport {
        ok: pairs.iter().all(|r| r.ok),
        verified_up_to: gc.max_length,
        pairs,
    }
}

fn check_pair(gc: &GradedClasses, p: &Presentation, s: Gen, t: Gen) -> PairLcm {
    let n = gc.generators;
    let lcm = p.pair_relation(s, t).map(|(num, den)| {
        let left: Vec<Gen> = std::iter::once(s).chain(num.iter().copied()).collect();
        let right: Vec<Gen> = std::iter::once(t).chain(den.iter().copied()).collect();
        (left, right)
    });
    let mut common = 0;
    let mut failure = None;
    if let Some((left, right)) = &lcm {
        if left.len() <= gc.max_length && !oracle_equivalent(gc, left, right).unwrap_or(false) {
            failure = Some(format!(
                "{} and {} are not equivalent",
                p.format_word(left),
                p.format_word(right)
            ));
        }
    }
    let lcm_class = lcm
        .as_ref()
        .filter(|(left, _)| left.len() <= gc.max_length)
        .map(|(left, _)| (left.len(), gc.class_of(left).expect("length checked")));
    for len in 1..=gc.max_length {
        let level = &gc.levels[len];
        let mut flags = vec![(false, false, false); level.class_count];
        let lead = n.pow(len as u32 - 1);
        for (code, &class) in level.class_of.iter().enumerate() {
            let f = &mut flags[class as usize];
            let first = code / lead;
            f.0 |= first == s;
            f.1 |= first == t;
            if let Some((m, mc)) = lcm_class {
                if m <= len {
                    let prefix = code / n.pow((len - m) as u32);
                    f.2 |= gc.levels[m].class_of[prefix] as usize == mc;
                }
            }
        }
        for (class, &(has_s, has_t, has_m)) in flags.iter().enumerate() {
            if !(has_s && has_t) {
                continue;
            }
            common += 1;
            if failure.is_some() {
                continue;
            }
            let witness = || p.format_word(&gc.class_members(len, class)[0].0);
            match (&lcm, lcm_class) {
                (None, _) => {
                    failure = Some(format!("common multiple {} without a relation", witness()));
                }
                (Some(_), Some((m, _))) if len < m || !has_m => {
                    failure = Some(format!(
                        "common multiple {} is not a multiple of the lcm",
                        witness()
                    ));
                }
                _ => {}
            }
        }
    }
    let detail = match (&failure, &lcm) {
        (Some(f), _) => f.clone(),
        (None, None) => format!(
            "no relation and no common multiple up to length {}; vacuously ok",
            gc.max_length
        ),
        (None, Some((left, _))) if left.len() > gc.max_length => format!(
            "lcm candidate has length {} beyond the enumerated {}; not verified",
            left.len(),
            gc.max_length
        ),
        (None, Some(_)) => format!("verified up to length {}", gc.max_length),
    };
    PairLcm {
        s,
        t,
        lcm: lcm.map(|(left, _)| PositiveWord(left)),
        common_multiples: common,
        ok: failure.is_none(),
        detail,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{pencil, IncidenceLattice};

    fn free(n: usize) -> Presentation {
        Presentation::new((0..n).map(|i| format!("g{i}")).collect(), vec![]).unwrap()
    }

    fn commuting() -> Presentation {
        Presentation::new(
            vec!["a".into(), "b".into()],
            vec![(PositiveWord(vec![0, 1]), PositiveWord(vec![1, 0]))],
        )
        .unwrap()
    }

    #[test]
    fn free_monoid_classes_are_singletons() {
        let gc = enumerate_classes(&free(2), 3, DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(gc.class_counts(), vec![1, 2, 4, 8]);
        assert_eq!(gc.class_counts()[1..].iter().sum::<usize>(), 14);
    }

    #[test]
    fn commutator_classes() {
        let p = commuting();
        let gc = enumerate_classes(&p, 2, DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(gc.class_counts()[2], 3);
        assert!(oracle_equivalent(&gc, &[0, 1], &[1, 0]).unwrap());
        assert!(!oracle_equivalent(&gc, &[0, 0], &[0, 1]).unwrap());
        assert!(matches!(
            oracle_equivalent(&gc, &[0, 0, 0], &[0, 0, 0]),
            Err(Error::WordTooLong { .. })
        ));
    }

    #[test]
    fn pencil_rotations_share_a_class() {
        let p = Presentation::from_lattice(&IncidenceLattice::build(&pencil(3)));
        let gc = enumerate_classes(&p, 3, DEFAULT_SIZE_CAP).unwrap();
        let c = gc.class_of(&[2, 1, 0]).unwrap();
        let mut members = gc.class_members(3, c);
        members.sort();
        assert_eq!(
            members,
            vec![
                PositiveWord(vec![0, 2, 1]),
                PositiveWord(vec![1, 0, 2]),
                PositiveWord(vec![2, 1, 0])
            ]
        );
        assert!(equivalent(
            &p,
            &PositiveWord(vec![2, 1, 0]),
            &PositiveWord(vec![0, 2, 1]),
            100
        )
        .unwrap());
        assert!(!equivalent(
            &p,
            &PositiveWord(vec![2, 1, 0]),
            &PositiveWord(vec![0, 1, 2]),
            100
        )
        .unwrap());
    }

    #[test]
    fn size_cap_and_homogeneity_are_enforced() {
        assert!(matches!(
            enumerate_classes(&free(10), 6, 1000),
            Err(Error::SizeCapExceeded { length: 4, .. })
        ));
        let p = Presentation::new(
            vec!["a".into(), "b".into()],
            vec![(PositiveWord(vec![0, 1]), PositiveWord(vec![1]))],
        )
        .unwrap();
        assert!(matches!(
            enumerate_classes(&p, 2, 100),
            Err(Error::NotHomogeneous { .. })
        ));
    }

    #[test]
    fn cancellativity() {
        let gc = enumerate_classes(&free(2), 4, DEFAULT_SIZE_CAP).unwrap();
        assert!(check_left_cancellativity(&gc).ok);

        // a·b = a·c
        let p = Presentation::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![(PositiveWord(vec![0, 1]), PositiveWord(vec![0, 2]))],
        )
        .unwrap();
        let gc = enumerate_classes(&p, 3, DEFAULT_SIZE_CAP).unwrap();
        let rep = check_left_cancellativity(&gc);
        assert!(!rep.ok);
        let c = rep.counterexample.unwrap();
        assert_eq!(
            (c.generator, c.y, c.z),
            (0, PositiveWord(vec![1]), PositiveWord(vec![2]))
        );
    }

    #[test]
    fn lcm_of_commuting_pair() {
        let p = commuting();
        let gc = enumerate_classes(&p, 4, DEFAULT_SIZE_CAP).unwrap();
        let rep = check_lcm_existence(&gc, &p);
        assert!(rep.ok, "{rep:?}");
        assert_eq!(rep.pairs[0].lcm, Some(PositiveWord(vec![0, 1])));
        // lengths 2, 3, 4: {ab}, {aab, abb}, {aaab, aabb, abbb}
        assert_eq!(rep.pairs[0].common_multiples, 6);
    }

    #[test]
    fn lcm_of_pencil_pair() {
        let p = Presentation::from_lattice(&IncidenceLattice::build(&pencil(3)));
        let gc = enumerate_classes(&p, 4, DEFAULT_SIZE_CAP).unwrap();
        let rep = check_lcm_existence(&gc, &p);
        assert!(rep.ok, "{rep:?}");
        let pair = &rep.pairs[0];
        assert_eq!((pair.s, pair.t), (0, 1));
        let lcm = pair.lcm.clone().unwrap();
        assert_eq!(lcm.len(), 3);
        assert_eq!(
            gc.class_of(&lcm.0).unwrap(),
            gc.class_of(&[2, 1, 0]).unwrap()
        );
    }

    #[test]
    fn free_pair_is_vacuous() {
        let p = free(2);
        let gc = enumerate_classes(&p, 4, DEFAULT_SIZE_CAP).unwrap();
        let rep = check_lcm_existence(&gc, &p);
        assert!(rep.ok);
        assert_eq!(rep.pairs[0].common_multiples, 0);
        assert!(rep.pairs[0].detail.contains("vacuously"));
    }
}
