//! Finite linear, affine, and projective geometry over `F_q`: subspace
//! enumeration by exhaustive spans, basis counting, and the literal
//! affine-plane-plus-line-at-infinity construction of the projective plane.

use crate::gfield::{elem_op, Field, FieldElem, FieldError, FieldOp, FieldOps};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

/// Exhaustive enumeration cap on `q^n`.
pub const MAX_SPACE_SIZE: u64 = 10_000;
/// Plane construction cap on `q`.
pub const MAX_PLANE_ORDER: u64 = 11;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeoError {
    #[error("space size {0} exceeds the cap {MAX_SPACE_SIZE}")]
    SpaceTooLarge(u64),
    #[error("plane order {0} exceeds the cap {MAX_PLANE_ORDER}")]
    PlaneTooLarge(u64),
    #[error("dimension {0} out of range for ambient dimension {1}")]
    BadDimension(usize, usize),
    #[error("field error: {0}")]
    Field(#[from] FieldError),
}

/// A vector in `F_q^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FVector {
    pub coords: Vec<FieldElem>,
}

impl FVector {
    /// Canonical integer encoding: coordinate indices, first coordinate most
    /// significant. Used for ordering and dedup.
    fn key(&self) -> Vec<u64> {
        self.coords.iter().map(|c| c.index()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

impl std::fmt::Display for FVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A subspace as the ordered set of its members; the canonical
/// representative is the lexicographically least nonzero member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    pub members: Vec<FVector>,
}

fn all_vectors(spec: &Field, n: usize) -> Result<Vec<FVector>, GeoError> {
    let q = spec.order();
    let total = q.checked_pow(n as u32).filter(|&t| t <= MAX_SPACE_SIZE);
    let Some(total) = total else {
        return Err(GeoError::SpaceTooLarge(u64::MAX));
    };
    let mut out = Vec::with_capacity(total as usize);
    for mut k in 0..total {
        let mut coords = Vec::with_capacity(n);
        for _ in 0..n {
            coords.push(spec.elem_from_index(k % q));
            k /= q;
        }
        coords.reverse();
        out.push(FVector { coords });
    }
    Ok(out)
}

fn scale(v: &FVector, c: &FieldElem) -> FVector {
    FVector {
        coords: v
            .coords
            .iter()
            .map(|x| elem_op(x, c, FieldOp::Mul).expect("same field"))
            .collect(),
    }
}

fn vadd(u: &FVector, v: &FVector) -> FVector {
    FVector {
        coords: u
            .coords
            .iter()
            .zip(&v.coords)
            .map(|(a, b)| elem_op(a, b, FieldOp::Add).expect("same field"))
            .collect(),
    }
}

/// Span of a list of vectors, as a sorted member list, computed by running
/// over all coefficient combinations.
fn span(spec: &Field, basis: &[&FVector], n: usize) -> Vec<FVector> {
    let q = spec.order();
    let scalars: Vec<FieldElem> = spec.elements();
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut members = Vec::new();
    let combos = q.pow(basis.len() as u32);
    for mut k in 0..combos {
        let mut acc = FVector {
            coords: (0..n).map(|_| spec.zero()).collect(),
        };
        for v in basis {
            let c = &scalars[(k % q) as usize];
            k /= q;
            acc = vadd(&acc, &scale(v, c));
        }
        if seen.insert(acc.key()) {
            members.push(acc);
        }
    }
    members.sort_by_key(|v| v.key());
    members
}

/// All 1-dimensional subspaces of `F_q^n`, each listed once, ordered by
/// canonical representative.
pub fn one_dim_subspaces(spec: &Field, n: usize) -> Result<Vec<Subspace>, GeoError> {
    subspaces_of_dim(spec, n, 1)
}

/// All `d`-dimensional subspaces of `F_q^n`, by exhaustive span enumeration
/// with dedup.
pub fn subspaces_of_dim(spec: &Field, n: usize, d: usize) -> Result<Vec<Subspace>, GeoError> {
    if d > n {
        return Err(GeoError::BadDimension(d, n));
    }
    let vectors = all_vectors(spec, n)?;
    if d == 0 {
        return Ok(vec![Subspace {
            members: vec![FVector {
                coords: (0..n).map(|_| spec.zero()).collect(),
            }],
        }]);
    }
    let nonzero: Vec<&FVector> = vectors.iter().filter(|v| !v.is_zero()).collect();
    let mut seen: BTreeSet<Vec<Vec<u64>>> = BTreeSet::new();
    let mut out: Vec<Subspace> = Vec::new();
    let target = spec.order().pow(d as u32) as usize;
    let mut stack: Vec<usize> = (0..d).collect();
    if nonzero.len() < d {
        return Ok(vec![]);
    }
    // iterate over all d-combinations of nonzero vectors; spans of dependent
    // tuples come out smaller than q^d and are skipped
    loop {
        let basis: Vec<&FVector> = stack.iter().map(|&i| nonzero[i]).collect();
        let members = span(spec, &basis, n);
        if members.len() == target {
            let key: Vec<Vec<u64>> = members.iter().map(|v| v.key()).collect();
            if seen.insert(key) {
                out.push(Subspace { members });
            }
        }
        // next combination
        let mut i = d;
        loop {
            if i == 0 {
                let mut sorted = out;
                sorted.sort_by_key(|s| {
                    s.members
                        .iter()
                        .find(|v| !v.is_zero())
                        .map(|v| v.key())
                        .unwrap_or_default()
                });
                return Ok(sorted);
            }
            i -= 1;
            if stack[i] + 1 + (d - 1 - i) < nonzero.len() {
                stack[i] += 1;
                for k in i + 1..d {
                    stack[k] = stack[i] + (k - i);
                }
                break;
            }
        }
    }
}

/// Number of ordered bases of `F_q^2`, by exhaustive independence testing.
/// Equals `(q^2 - 1)(q^2 - q)`.
pub fn count_bases(spec: &Field) -> Result<u64, GeoError> {
    let vectors = all_vectors(spec, 2)?;
    let scalars = spec.elements();
    let mut count = 0u64;
    for u in &vectors {
        if u.is_zero() {
            continue;
        }
        for v in &vectors {
            if v.is_zero() {
                continue;
            }
            // independent iff v is not a scalar multiple of u
            let dependent = scalars.iter().any(|c| &scale(u, c) == v);
            if !dependent {
                count += 1;
            }
        }
    }
    Ok(count)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StructureKind {
    Affine,
    Projective,
    Generic,
}

impl Default for StructureKind {
    fn default() -> Self {
        StructureKind::Generic
    }
}

/// Points and lines with membership by point index. The JSON form carries
/// only `points` and `lines`; `kind` is construction metadata.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceStructure {
    pub points: Vec<String>,
    pub lines: Vec<Vec<usize>>,
    #[serde(skip, default)]
    pub kind: StructureKind,
}

impl IncidenceStructure {
    pub fn lines_through(&self, point: usize) -> usize {
        self.lines.iter().filter(|l| l.contains(&point)).count()
    }
}

/// The affine plane `AG(2, q)`: points `F_q^2`, lines `y = mx + c` and
/// `x = c`. Points are labeled `(a,b)` and ordered lexicographically.
pub fn affine_plane(spec: &Field) -> Result<IncidenceStructure, GeoError> {
    let q = spec.order();
    if q > MAX_PLANE_ORDER {
        return Err(GeoError::PlaneTooLarge(q));
    }
    let elems = spec.elements();
    let n = q as usize;
    let mut points = Vec::with_capacity(n * n);
    for a in &elems {
        for b in &elems {
            points.push(format!("({a},{b})"));
        }
    }
    let point_index = |a: u64, b: u64| (a * q + b) as usize;

    let mut lines = Vec::with_capacity(n * n + n);
    // y = mx + c, one line per (m, c)
    for m in &elems {
        for c in &elems {
            let mut line = Vec::with_capacity(n);
            for x in &elems {
                let y = elem_op(&elem_op(m, x, FieldOp::Mul)?, c, FieldOp::Add)?;
                line.push(point_index(x.index(), y.index()));
            }
            line.sort_unstable();
            lines.push(line);
        }
    }
    // vertical lines x = c
    for c in &elems {
        let line: Vec<usize> = elems.iter().map(|y| point_index(c.index(), y.index())).collect();
        lines.push(line);
    }
    Ok(IncidenceStructure {
        points,
        lines,
        kind: StructureKind::Affine,
    })
}

/// The projective plane `PG(2, q)`: the affine plane plus one point at
/// infinity per parallel class (labeled `inf(m)` for slope `m` and
/// `inf(vert)`), each appended to its class's lines, plus the line at
/// infinity containing exactly the infinite points.
pub fn projective_plane(spec: &Field) -> Result<IncidenceStructure, GeoError> {
    let affine = affine_plane(spec)?;
    let q = spec.order();
    let n = q as usize;
    let elems = spec.elements();

    let mut points = affine.points;
    let mut lines = affine.lines;
    // slope-m lines are stored as blocks m*q .. m*q+q, verticals last
    let mut inf_indices = Vec::with_capacity(n + 1);
    for m in &elems {
        let idx = points.len();
        points.push(format!("inf({m})"));
        inf_indices.push(idx);
        for c in 0..n {
            lines[(m.index() as usize) * n + c].push(idx);
        }
    }
    let vert_idx = points.len();
    points.push("inf(vert)".to_string());
    inf_indices.push(vert_idx);
    for c in 0..n {
        lines[n * n + c].push(vert_idx);
    }
    lines.push(inf_indices);
    Ok(IncidenceStructure {
        points,
        lines,
        kind: StructureKind::Projective,
    })
}

/// A projective-plane axiom violation with its witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum PlaneViolation {
    UnequalLineSizes { line_a: usize, line_b: usize },
    LinesMeetWrong { line_a: usize, line_b: usize, meets: usize },
    PointPairCoverage { point_a: usize, point_b: usize, lines: usize },
}

impl std::fmt::Display for PlaneViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PlaneViolation::UnequalLineSizes { line_a, line_b } => {
                write!(f, "lines {line_a} and {line_b} have different sizes")
            }
            PlaneViolation::LinesMeetWrong { line_a, line_b, meets } => {
                write!(f, "lines {line_a} and {line_b} meet in {meets} points")
            }
            PlaneViolation::PointPairCoverage { point_a, point_b, lines } => {
                write!(f, "points {point_a},{point_b} lie on {lines} common lines")
            }
        }
    }
}

/// Checks uniform line size, pairwise line intersection exactly once, and
/// every point pair on exactly one line.
pub fn verify_plane_axioms(s: &IncidenceStructure) -> Vec<PlaneViolation> {
    let mut v = Vec::new();
    let line_sets: Vec<BTreeSet<usize>> =
        s.lines.iter().map(|l| l.iter().copied().collect()).collect();
    for i in 0..s.lines.len() {
        if s.lines[i].len() != s.lines[0].len() {
            v.push(PlaneViolation::UnequalLineSizes {
                line_a: 0,
                line_b: i,
            });
        }
        for j in i + 1..s.lines.len() {
            let meets = line_sets[i].intersection(&line_sets[j]).count();
            if meets != 1 {
                v.push(PlaneViolation::LinesMeetWrong {
                    line_a: i,
                    line_b: j,
                    meets,
                });
            }
        }
    }
    for a in 0..s.points.len() {
        for b in a + 1..s.points.len() {
            let covering = line_sets
                .iter()
                .filter(|l| l.contains(&a) && l.contains(&b))
                .count();
            if covering != 1 {
                v.push(PlaneViolation::PointPairCoverage {
                    point_a: a,
                    point_b: b,
                    lines: covering,
                });
            }
        }
    }
    v
}
