//! Points, planes and lines of `PG(3,K)`, Plücker coordinates, and points of
//! `PG(5,K)` (the ambient space of the Klein quadric).
//!
//! Every homogeneous vector is stored in canonical form: scaled so that its
//! first nonzero coordinate is 1. Equality and hashing therefore coincide
//! with projective equality. Plücker coordinates are ordered
//! `(Y01, Y02, Y03, Y12, Y13, Y23)` with `y_ij = p_i q_j - p_j q_i`.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::linalg;

fn canonicalize(v: &mut [FieldElement]) -> Result<()> {
    let lead = v.iter().position(|x| !x.is_zero()).ok_or(Error::ZeroVector)?;
    if !v[lead].is_one() {
        let inv = v[lead].inv().expect("nonzero");
        for x in v[lead..].iter_mut() {
            *x = &*x * &inv;
        }
    }
    Ok(())
}

fn write_tuple(f: &mut fmt::Formatter<'_>, v: &[FieldElement]) -> fmt::Result {
    f.write_str("(")?;
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str(")")
}

macro_rules! homogeneous {
    ($(#[$doc:meta])* $name:ident, $n:expr) => {
        $(#[$doc])*
        #[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
        #[serde(transparent)]
        pub struct $name {
            coords: [FieldElement; $n],
        }

        impl $name {
            /// Canonicalizes the given coordinates; fails on the zero vector.
            pub fn new(mut coords: [FieldElement; $n]) -> Result<Self> {
                canonicalize(&mut coords)?;
                Ok(Self { coords })
            }

            pub fn from_slice(coords: &[FieldElement]) -> Result<Self> {
                let arr: [FieldElement; $n] = coords
                    .to_vec()
                    .try_into()
                    .map_err(|_| Error::MalformedSpec(format!("expected {} coordinates", $n)))?;
                Self::new(arr)
            }

            pub fn from_ints(field: FieldSpec, coords: [i64; $n]) -> Result<Self> {
                Self::new(coords.map(|c| field.int(c)))
            }

            pub fn coords(&self) -> &[FieldElement; $n] {
                &self.coords
            }

            pub fn field(&self) -> FieldSpec {
                self.coords[0].field()
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write_tuple(f, &self.coords)
            }
        }
    };
}

homogeneous!(
    /// A point of `PG(3,K)` as a canonical column vector.
    ProjPoint,
    4
);
homogeneous!(
    /// A plane `V(e0 X0 + e1 X1 + e2 X2 + e3 X3)` as a canonical row vector.
    ProjPlane,
    4
);
homogeneous!(
    /// A point of `PG(5,K)`, coordinates `(Y01, Y02, Y03, Y12, Y13, Y23)`.
    KleinPoint,
    6
);

impl ProjPlane {
    pub fn evaluate(&self, x: &ProjPoint) -> FieldElement {
        linalg::dot(&self.coords, x.coords())
    }

    pub fn contains(&self, x: &ProjPoint) -> bool {
        self.evaluate(x).is_zero()
    }
}

impl KleinPoint {
    /// The Klein quadratic form `Y01 Y23 - Y02 Y13 + Y03 Y12`.
    pub fn klein_form(&self) -> FieldElement {
        klein_form(&self.coords)
    }

    pub fn on_klein_quadric(&self) -> bool {
        self.klein_form().is_zero()
    }

    /// Polarization of the Klein form. Two lines meet iff this vanishes on
    /// their Plücker vectors.
    pub fn polar(&self, other: &KleinPoint) -> FieldElement {
        klein_polar(&self.coords, &other.coords)
    }
}

pub fn klein_form(y: &[FieldElement]) -> FieldElement {
    &(&(&y[0] * &y[5]) - &(&y[1] * &y[4])) + &(&y[2] * &y[3])
}

pub fn klein_polar(y: &[FieldElement], z: &[FieldElement]) -> FieldElement {
    let a = &(&y[0] * &z[5]) + &(&y[5] * &z[0]);
    let b = &(&y[1] * &z[4]) + &(&y[4] * &z[1]);
    let c = &(&y[2] * &z[3]) + &(&y[3] * &z[2]);
    &(&a - &b) + &c
}

/// Raw (unnormalized) Plücker minors of two vectors.
pub fn plucker_raw(p: &[FieldElement], q: &[FieldElement]) -> [FieldElement; 6] {
    let m = |i: usize, j: usize| &(&p[i] * &q[j]) - &(&p[j] * &q[i]);
    [m(0, 1), m(0, 2), m(0, 3), m(1, 2), m(1, 3), m(2, 3)]
}

/// Canonical Plücker coordinates of the line `pq`.
pub fn plucker(p: &ProjPoint, q: &ProjPoint) -> Result<KleinPoint> {
    KleinPoint::new(plucker_raw(p.coords(), q.coords())).map_err(|_| Error::CoincidentPoints)
}

/// A line of `PG(3,K)`: a spanning pair plus its canonical Plücker point.
/// Equality, ordering and hashing use the Plücker point only.
#[derive(Clone, Debug, Serialize)]
pub struct Line {
    span: (ProjPoint, ProjPoint),
    plucker: KleinPoint,
}

impl Line {
    pub fn through(p: ProjPoint, q: ProjPoint) -> Result<Self> {
        let plucker = plucker(&p, &q)?;
        Ok(Line { span: (p, q), plucker })
    }

    pub fn span(&self) -> (&ProjPoint, &ProjPoint) {
        (&self.span.0, &self.span.1)
    }

    pub fn plucker(&self) -> &KleinPoint {
        &self.plucker
    }

    pub fn field(&self) -> FieldSpec {
        self.plucker.field()
    }

    pub fn contains(&self, x: &ProjPoint) -> bool {
        incidence(x, self)
    }

    /// All `q + 1` points of the line over a finite field, canonical and
    /// without repetition.
    pub fn points(&self) -> Result<Vec<ProjPoint>> {
        let field = self.field();
        let (p, q) = self.span();
        let mut out = vec![q.clone()];
        for t in field.elements()? {
            let c: [FieldElement; 4] =
                std::array::from_fn(|i| &p.coords()[i] + &(&t * &q.coords()[i]));
            out.push(ProjPoint::new(c)?);
        }
        out.sort();
        Ok(out)
    }
}

impl PartialEq for Line {
    fn eq(&self, other: &Self) -> bool {
        self.plucker == other.plucker
    }
}

impl Eq for Line {}

impl std::hash::Hash for Line {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.plucker.hash(state)
    }
}

impl PartialOrd for Line {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Line {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.plucker.cmp(&other.plucker)
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}∨{}", self.span.0, self.span.1)
    }
}

/// Determinant of the 4x4 matrix whose columns are the spanning points of
/// `l1` followed by those of `l2`. Zero iff the lines meet.
pub fn skew_determinant(l1: &Line, l2: &Line) -> FieldElement {
    let cols = [l1.span.0.coords(), l1.span.1.coords(), l2.span.0.coords(), l2.span.1.coords()];
    let rows: linalg::Matrix = (0..4)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect();
    linalg::det(&rows)
}

pub fn lines_skew(l1: &Line, l2: &Line) -> bool {
    !skew_determinant(l1, l2).is_zero()
}

/// Skewness through the Klein polarity, independent of the determinant.
pub fn lines_skew_polar(l1: &Line, l2: &Line) -> bool {
    !l1.plucker.polar(&l2.plucker).is_zero()
}

pub fn incidence(x: &ProjPoint, l: &Line) -> bool {
    let rows = vec![
        l.span.0.coords().to_vec(),
        l.span.1.coords().to_vec(),
        x.coords().to_vec(),
    ];
    linalg::rank(&rows) == 2
}

pub fn point_in_plane(x: &ProjPoint, e: &ProjPlane) -> bool {
    e.contains(x)
}

pub fn line_in_plane(l: &Line, e: &ProjPlane) -> bool {
    e.contains(&l.span.0) && e.contains(&l.span.1)
}

/// Number of points of `PG(n-1, q)`.
pub fn projective_point_count(q: u64, n: usize) -> u64 {
    (0..n as u32).map(|k| q.pow(k)).sum()
}

/// The `index`-th canonical vector of `PG(n-1, q)` in lexicographic order of
/// residues: leading position `n-1` first, then `n-2`, and so on.
pub fn projective_point_at(field: FieldSpec, n: usize, index: u64) -> Vec<FieldElement> {
    let q = field.modulus().expect("finite field");
    let mut rest = index;
    for lead in (0..n).rev() {
        let free = (n - 1 - lead) as u32;
        let block = q.pow(free);
        if rest < block {
            let mut v = vec![field.zero(); n];
            v[lead] = field.one();
            let mut r = rest;
            for pos in (lead + 1..n).rev() {
                v[pos] = field.int((r % q) as i64);
                r /= q;
            }
            return v;
        }
        rest -= block;
    }
    panic!("index {index} out of range for PG({}, {q})", n - 1);
}

pub fn enumerate_points(field: FieldSpec) -> Result<Vec<ProjPoint>> {
    let q = field.require_finite()?;
    (0..projective_point_count(q, 4))
        .map(|i| ProjPoint::from_slice(&projective_point_at(field, 4, i)))
        .collect()
}

pub fn enumerate_planes(field: FieldSpec) -> Result<Vec<ProjPlane>> {
    let q = field.require_finite()?;
    (0..projective_point_count(q, 4))
        .map(|i| ProjPlane::from_slice(&projective_point_at(field, 4, i)))
        .collect()
}

/// All lines of `PG(3,q)`, built from the reduced echelon forms of 2x4
/// matrices and sorted by Plücker point.
pub fn enumerate_lines(field: FieldSpec) -> Result<Vec<Line>> {
    field.require_finite()?;
    let elems: Vec<FieldElement> = field.elements()?.collect();
    let mut lines = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            let free1: Vec<usize> = (i + 1..4).filter(|&k| k != j).collect();
            let free2: Vec<usize> = (j + 1..4).collect();
            let slots = free1.len() + free2.len();
            let total = (elems.len() as u64).pow(slots as u32);
            for idx in 0..total {
                let mut r = idx;
                let mut digits = Vec::with_capacity(slots);
                for _ in 0..slots {
                    digits.push(elems[(r % elems.len() as u64) as usize].clone());
                    r /= elems.len() as u64;
                }
                let mut p: [FieldElement; 4] = std::array::from_fn(|_| field.zero());
                let mut q: [FieldElement; 4] = std::array::from_fn(|_| field.zero());
                p[i] = field.one();
                q[j] = field.one();
                let mut d = digits.into_iter();
                for &k in &free1 {
                    p[k] = d.next().expect("digit");
                }
                for &k in &free2 {
                    q[k] = d.next().expect("digit");
                }
                lines.push(Line::through(ProjPoint::new(p)?, ProjPoint::new(q)?)?);
            }
        }
    }
    lines.sort();
    Ok(lines)
}

/// Insertion-ordered set of lines, deduplicated by Plücker point.
#[derive(Clone, Debug, Default)]
pub struct LineSet {
    lines: Vec<Line>,
    keys: HashSet<KleinPoint>,
}

impl LineSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns false if the line was already present.
    pub fn insert(&mut self, line: Line) -> bool {
        if self.keys.insert(line.plucker.clone()) {
            self.lines.push(line);
            true
        } else {
            false
        }
    }

    pub fn contains(&self, line: &Line) -> bool {
        self.keys.contains(&line.plucker)
    }

    pub fn contains_plucker(&self, y: &KleinPoint) -> bool {
        self.keys.contains(y)
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Line> {
        self.lines.iter()
    }

    pub fn as_slice(&self) -> &[Line] {
        &self.lines
    }

    pub fn pluckers(&self) -> &HashSet<KleinPoint> {
        &self.keys
    }

    pub fn is_subset(&self, other: &LineSet) -> bool {
        self.keys.is_subset(&other.keys)
    }

    pub fn same_lines(&self, other: &LineSet) -> bool {
        self.keys == other.keys
    }
}

impl FromIterator<Line> for LineSet {
    fn from_iter<I: IntoIterator<Item = Line>>(iter: I) -> Self {
        let mut s = LineSet::new();
        for l in iter {
            s.insert(l);
        }
        s
    }
}

impl<'a> IntoIterator for &'a LineSet {
    type Item = &'a Line;
    type IntoIter = std::slice::Iter<'a, Line>;

    fn into_iter(self) -> Self::IntoIter {
        self.lines.iter()
    }
}
