//! Exact real line arrangements and their incidence lattice.
//!
//! Lines are `a·x + b·y = c` with rational coefficients and all arithmetic is
//! exact.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Parses `p`, `-p` or `p/q` with `q > 0`.
pub fn parse_rational(token: &str) -> Option<Rational> {
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (token, None),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let unsigned = num.strip_prefix('-').unwrap_or(num);
    if !digits(unsigned) {
        return None;
    }
    let numerator: BigInt = num.parse().ok()?;
    let denominator: BigInt = match den {
        Some(d) if digits(d) => d.parse().ok()?,
        Some(_) => return None,
        None => BigInt::one(),
    };
    if denominator.is_zero() {
        return None;
    }
    Some(Rational::new(numerator, denominator))
}

fn rational_from_int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// A point of the real plane with exact coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self { x, y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.x.to_string(), self.y.to_string()].serialize(serializer)
    }
}

/// The line `a·x + b·y = c`, normalized so the first nonzero of `(a, b)` is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Line {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub index: usize,
}

impl Line {
    /// Builds a canonical line, or `None` when `a = b = 0`.
    pub fn new(a: Rational, b: Rational, c: Rational, index: usize) -> Option<Self> {
        let lead = if !a.is_zero() {
            a.clone()
        } else if !b.is_zero() {
            b.clone()
        } else {
            return None;
        };
        Some(Self {
            a: a / &lead,
            b: b / &lead,
            c: c / &lead,
            index,
        })
    }

    /// Same locus, ignoring the index.
    pub fn same_locus(&self, other: &Line) -> bool {
        self.a == other.a && self.b == other.b && self.c == other.c
    }

    pub fn contains(&self, p: &Point) -> bool {
        &self.a * &p.x + &self.b * &p.y == self.c
    }

    pub fn is_vertical(&self) -> bool {
        self.b.is_zero()
    }

    /// Position of `p` along the line: x, or y for vertical lines.
    pub fn parameter<'a>(&self, p: &'a Point) -> &'a Rational {
        if self.is_vertical() {
            &p.y
        } else {
            &p.x
        }
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.a, self.b, self.c)
    }
}

/// Unique intersection of two lines, `None` when they are parallel (or equal).
pub fn intersect(l1: &Line, l2: &Line) -> Option<Point> {
    let det = &l1.a * &l2.b - &l1.b * &l2.a;
    if det.is_zero() {
        return None;
    }
    let x = (&l1.c * &l2.b - &l1.b * &l2.c) / &det;
    let y = (&l1.a * &l2.c - &l1.c * &l2.a) / &det;
    Some(Point { x, y })
}

/// An ordered list of distinct lines; the order is the global numbering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    lines: Vec<Line>,
}

impl Arrangement {
    /// Builds an arrangement from raw `(a, b, c)` rows.
    pub fn new<I>(rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, Rational, Rational)>,
    {
        let mut lines: Vec<Line> = Vec::new();
        for (index, (a, b, c)) in rows.into_iter().enumerate() {
            let line = Line::new(a, b, c, index).ok_or(Error::DegenerateLine { index })?;
            if let Some(prev) = lines.iter().find(|l| l.same_locus(&line)) {
                return Err(Error::DuplicateLine {
                    first: prev.index,
                    second: index,
                });
            }
            lines.push(line);
        }
        Ok(Self { lines })
    }

    /// Convenience constructor from integer rows.
    pub fn from_integers(rows: &[[i64; 3]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| {
            (
                rational_from_int(r[0]),
                rational_from_int(r[1]),
                rational_from_int(r[2]),
            )
        }))
    }

    /// Parses the arrangement text format: one `a b c` row per line,
    /// `#` comments, blank lines ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            if tokens.len() != 3 {
                return Err(Error::WrongArity {
                    line: lineno + 1,
                    found: tokens.len(),
                });
            }
            let mut coeffs = Vec::with_capacity(3);
            for token in tokens {
                coeffs.push(
                    parse_rational(token).ok_or_else(|| Error::MalformedRational {
                        line: lineno + 1,
                        token: token.to_string(),
                    })?,
                );
            }
            let c = coeffs.pop().unwrap();
            let b = coeffs.pop().unwrap();
            let a = coeffs.pop().unwrap();
            rows.push((a, b, c));
        }
        Self::new(rows)
    }

    pub fn to_text(&self) -> String {
        self.lines.iter().map(|l| format!("{l}\n")).collect()
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// The lines of `self` followed by those of `other`, renumbered.
    pub fn union(&self, other: &Arrangement) -> Result<Self> {
        let rows = self
            .lines
            .iter()
            .chain(other.lines.iter())
            .map(|l| (l.a.clone(), l.b.clone(), l.c.clone()));
        Self::new(rows).map_err(|e| match e {
            Error::DuplicateLine { first, second } => Error::SharedLine {
                left: first,
                right: second - self.len(),
            },
            other => other,
        })
    }

    /// Reorders lines: the line at old index `order[k]` gets index `k`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        Self::new(order.iter().map(|&i| {
            let l = &self.lines[i];
            (l.a.clone(), l.b.clone(), l.c.clone())
        }))
    }
}

/// A point where at least two lines meet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionPoint {
    pub location: Point,
    /// Sorted indices of the lines through `location`.
    pub lines: Vec<usize>,
}

impl IntersectionPoint {
    pub fn multiplicity(&self) -> usize {
        self.lines.len()
    }

    pub fn is_multiple(&self) -> bool {
        self.multiplicity() >= 3
    }
}

/// Nonempty intersections of the lines, with per-line orderings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceLattice {
    line_count: usize,
    points: Vec<IntersectionPoint>,
    /// For each line, ids of the points on it in increasing parameter order.
    per_line: Vec<Vec<usize>>,
    parallel_pairs: Vec<(usize, usize)>,
}

impl IncidenceLattice {
    pub fn build(arr: &Arrangement) -> Self {
        let lines = arr.lines();
        let n = lines.len();
        let mut groups: BTreeMap<Point, BTreeSet<usize>> = BTreeMap::new();
        let mut parallel_pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                match intersect(&lines[i], &lines[j]) {
                    Some(p) => {
                        let set = groups.entry(p).or_default();
                        set.insert(i);
                        set.insert(j);
                    }
                    None => parallel_pairs.push((i, j)),
                }
            }
        }
        let points: Vec<IntersectionPoint> = groups
            .into_iter()
            .map(|(location, set)| IntersectionPoint {
                location,
                lines: set.into_iter().collect(),
            })
            .collect();
        let mut per_line = vec![Vec::new(); n];
        for (id, point) in points.iter().enumerate() {
            for &l in &point.lines {
                per_line[l].push(id);
            }
        }
        for (l, ids) in per_line.iter_mut().enumerate() {
            let line = &lines[l];
            ids.sort_by(|&p, &q| {
                line.parameter(&points[p].location)
                    .cmp(line.parameter(&points[q].location))
            });
        }
        Self {
            line_count: n,
            points,
            per_line,
            parallel_pairs,
        }
    }

    pub fn line_count(&self) -> usize {
        self.line_count
    }

    pub fn points(&self) -> &[IntersectionPoint] {
        &self.points
    }

    /// Point ids on `line`, ordered along it.
    pub fn points_on_line(&self, line: usize) -> &[usize] {
        &self.per_line[line]
    }

    pub fn parallel_pairs(&self) -> &[(usize, usize)] {
        &self.parallel_pairs
    }

    /// Id of the point shared by two distinct lines, if they are not parallel.
    pub fn meeting_point(&self, l1: usize, l2: usize) -> Option<usize> {
        self.per_line[l1]
            .iter()
            .copied()
            .find(|&p| self.points[p].lines.binary_search(&l2).is_ok())
    }

    pub fn multiple_points(&self) -> impl Iterator<Item = (usize, &IntersectionPoint)> {
        self.points
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_multiple())
    }
}

/// Whether every line of `a` meets every line of `b` in a point lying on no
/// other line of the union, i.e. the mutual intersections are `|a|·|b|`
/// distinct simple points.
pub fn is_transversal(a: &Arrangement, b: &Arrangement) -> Result<bool> {
    for la in a.lines() {
        if let Some(lb) = b.lines().iter().find(|lb| lb.same_locus(la)) {
            return Err(Error::SharedLine {
                left: la.index,
                right: lb.index,
            });
        }
    }
    let union = a.union(b)?;
    let all = union.lines();
    for la in a.lines() {
        for lb in b.lines() {
            let Some(p) = intersect(la, lb) else {
                return Ok(false);
            };
            let through = all.iter().filter(|l| l.contains(&p)).count();
            if through != 2 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `m` concurrent lines through the origin: `x = 0` and `y = k·x` for
/// `k = 0..m-1`.
pub fn pencil(m: usize) -> Arrangement {
    pencil_through(m, 0, 0)
}

/// `m` concurrent lines through `(px, py)`: the vertical line and slopes
/// `0, 1, …, m-2`.
pub fn pencil_through(m: usize, px: i64, py: i64) -> Arrangement {
    let mut rows = Vec::with_capacity(m);
    if m > 0 {
        rows.push([1, 0, px]);
    }
    for k in 0..m.saturating_sub(1) as i64 {
        // k·x − y = k·px − py
        rows.push([k, -1, k * px - py]);
    }
    Arrangement::from_integers(&rows).expect("pencil lines are distinct")
}
