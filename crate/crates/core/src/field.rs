//! Exact arithmetic over prime fields `GF(p)` and the rationals.
//!
//! Elements carry their field with them, so the usual operator traits work
//! without threading a context value through every expression. Mixing
//! elements of different fields is a programming error and panics.
//!
//! The cube-root structure of a field ([`CubeRootProfile`]) decides which
//! [`SpreadRegime`] the osculating-tangent set falls into.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus accepted by [`FieldSpec::prime`].
pub const MAX_MODULUS: u64 = u32::MAX as u64;

/// Fields up to this size use exhaustive search for cube roots and
/// roots of unity.
pub const EXHAUSTIVE_LIMIT: u64 = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Kind {
    Prime(u64),
    Rationals,
}

/// A ground field: either `GF(p)` for a verified prime `p`, or `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec(Kind);

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if p > MAX_MODULUS {
            return Err(Error::MalformedSpec(format!(
                "modulus {p} exceeds the supported maximum {MAX_MODULUS}"
            )));
        }
        if !is_prime(p) {
            return Err(Error::NonPrimeModulus(p));
        }
        Ok(FieldSpec(Kind::Prime(p)))
    }

    pub fn rationals() -> Self {
        FieldSpec(Kind::Rationals)
    }

    /// Parses `gf:<p>` or `q`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(Self::rationals());
        }
        let digits = t
            .strip_prefix("gf:")
            .or_else(|| t.strip_prefix("GF:"))
            .ok_or_else(|| Error::MalformedSpec(text.to_string()))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::MalformedSpec(text.to_string()))?;
        Self::prime(p)
    }

    pub fn modulus(&self) -> Option<u64> {
        match self.0 {
            Kind::Prime(p) => Some(p),
            Kind::Rationals => None,
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.modulus().unwrap_or(0)
    }

    pub fn is_finite(&self) -> bool {
        self.modulus().is_some()
    }

    /// Number of elements, or `None` for `Q`.
    pub fn order(&self) -> Option<u64> {
        self.modulus()
    }

    pub fn require_finite(&self) -> Result<u64> {
        self.modulus().ok_or(Error::InfiniteField)
    }

    pub fn zero(&self) -> FieldElement {
        self.int(0)
    }

    pub fn one(&self) -> FieldElement {
        self.int(1)
    }

    /// The image of an integer in this field.
    pub fn int(&self, n: i64) -> FieldElement {
        match self.0 {
            Kind::Prime(p) => FieldElement(Repr::Residue {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            }),
            Kind::Rationals => FieldElement(Repr::Rational(BigRational::from_integer(n.into()))),
        }
    }

    /// The element `num/den`; fails when `den` vanishes in the field.
    pub fn ratio(&self, num: i64, den: i64) -> Result<FieldElement> {
        let d = self.int(den);
        let d_inv = d.inv().ok_or(Error::DivisionByZero)?;
        Ok(self.int(num) * d_inv)
    }

    /// Reduces an exact rational into this field (denominator must be a unit).
    pub fn from_rational(&self, r: &BigRational) -> Result<FieldElement> {
        match self.0 {
            Kind::Rationals => Ok(FieldElement(Repr::Rational(r.clone()))),
            Kind::Prime(p) => {
                let modulus = BigInt::from(p);
                let reduce = |x: &BigInt| -> u64 {
                    let r = ((x % &modulus) + &modulus) % &modulus;
                    r.try_into().expect("residue fits in u64")
                };
                let num = FieldElement::residue_unchecked(reduce(r.numer()), p);
                let den = FieldElement::residue_unchecked(reduce(r.denom()), p);
                let den_inv = den.inv().ok_or(Error::DivisionByZero)?;
                Ok(num * den_inv)
            }
        }
    }

    /// Parses an element: a residue/integer for `GF(p)`, `n` or `n/d` for `Q`.
    pub fn parse_element(&self, text: &str) -> Result<FieldElement> {
        let t = text.trim();
        let bad = || Error::MalformedSpec(format!("bad field element {text:?}"));
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (
                n.trim().parse::<BigInt>().map_err(|_| bad())?,
                d.trim().parse::<BigInt>().map_err(|_| bad())?,
            ),
            None => (t.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.from_rational(&BigRational::new(num, den))
    }

    /// All elements of a finite field in increasing residue order.
    pub fn elements(&self) -> Result<impl Iterator<Item = FieldElement> + Clone> {
        let p = self.require_finite()?;
        Ok((0..p).map(move |v| FieldElement::residue_unchecked(v, p)))
    }

    /// A pseudorandom element. Rationals have numerator and denominator
    /// bounded by `height` in absolute value.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, height: i64) -> FieldElement {
        match self.0 {
            Kind::Prime(p) => FieldElement::residue_unchecked(rng.gen_range(0..p), p),
            Kind::Rationals => {
                let h = height.max(1);
                let num = rng.gen_range(-h..=h);
                let den = rng.gen_range(1..=h);
                FieldElement(Repr::Rational(BigRational::new(num.into(), den.into())))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Kind::Prime(p) => write!(f, "gf:{p}"),
            Kind::Rationals => f.write_str("q"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Self::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Parses a field name (`gf:<p>` or `q`).
pub fn parse_field_spec(text: &str) -> Result<FieldSpec> {
    FieldSpec::parse(text)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Repr {
    Residue { value: u64, modulus: u64 },
    Rational(BigRational),
}

/// An element of `GF(p)` (residue in `[0, p)`) or of `Q` (reduced fraction,
/// positive denominator).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(Repr);

impl FieldElement {
    fn residue_unchecked(value: u64, modulus: u64) -> Self {
        debug_assert!(value < modulus);
        FieldElement(Repr::Residue { value, modulus })
    }

    pub fn field(&self) -> FieldSpec {
        match self.0 {
            Repr::Residue { modulus, .. } => FieldSpec(Kind::Prime(modulus)),
            Repr::Rational(_) => FieldSpec::rationals(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Residue { value, .. } => *value == 0,
            Repr::Rational(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Residue { value, .. } => *value == 1,
            Repr::Rational(r) => r.is_one(),
        }
    }

    /// The residue in `[0, p)` for prime-field elements.
    pub fn residue(&self) -> Option<u64> {
        match self.0 {
            Repr::Residue { value, .. } => Some(value),
            Repr::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rational(r) => Some(r),
            Repr::Residue { .. } => None,
        }
    }

    pub fn zero_like(&self) -> Self {
        self.field().zero()
    }

    pub fn one_like(&self) -> Self {
        self.field().one()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match &self.0 {
            Repr::Residue { value, modulus } => {
                Self::residue_unchecked(pow_mod(*value, modulus - 2, *modulus), *modulus)
            }
            Repr::Rational(r) => FieldElement(Repr::Rational(r.recip())),
        })
    }

    /// `self / rhs`; `None` when `rhs` is zero.
    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self * &r)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        if let Repr::Residue { value, modulus } = self.0 {
            return Self::residue_unchecked(pow_mod(value, e, modulus), modulus);
        }
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn cube(&self) -> Self {
        &self.square() * self
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Residue { value, .. } => write!(f, "{value}"),
            Repr::Rational(r) => write!(f, "{r}"),
        }
    }
}

impl Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn mismatch(a: &FieldElement, b: &FieldElement) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: &FieldElement) -> FieldElement {
        match (&self.0, &rhs.0) {
            (Repr::Residue { value: a, modulus: p }, Repr::Residue { value: b, modulus: q })
                if p == q =>
            {
                let s = a + b;
                FieldElement::residue_unchecked(if s >= *p { s - p } else { s }, *p)
            }
            (Repr::Rational(a), Repr::Rational(b)) => FieldElement(Repr::Rational(a + b)),
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    fn sub(self, rhs: &FieldElement) -> FieldElement {
        match (&self.0, &rhs.0) {
            (Repr::Residue { value: a, modulus: p }, Repr::Residue { value: b, modulus: q })
                if p == q =>
            {
                FieldElement::residue_unchecked(if a >= b { a - b } else { p - (b - a) }, *p)
            }
            (Repr::Rational(a), Repr::Rational(b)) => FieldElement(Repr::Rational(a - b)),
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: &FieldElement) -> FieldElement {
        match (&self.0, &rhs.0) {
            (Repr::Residue { value: a, modulus: p }, Repr::Residue { value: b, modulus: q })
                if p == q =>
            {
                FieldElement::residue_unchecked(mul_mod(*a, *b, *p), *p)
            }
            (Repr::Rational(a), Repr::Rational(b)) => FieldElement(Repr::Rational(a * b)),
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        match &self.0 {
            Repr::Residue { value, modulus } => {
                FieldElement::residue_unchecked(if *value == 0 { 0 } else { modulus - value }, *modulus)
            }
            Repr::Rational(r) => FieldElement(Repr::Rational(-r)),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &'a FieldElement) -> FieldElement { (&self).$m(rhs) }
        }
        impl<'a> $tr<FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Deterministic primality test by trial division (moduli are at most 32 bits).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// All `s` in the field of `a` with `s^3 = a`, in increasing order.
pub fn cube_roots(a: &FieldElement) -> Vec<FieldElement> {
    match &a.0 {
        Repr::Residue { value, modulus } => {
            let p = *modulus;
            let mut roots = if p <= EXHAUSTIVE_LIMIT {
                cube_roots_exhaustive(*value, p)
            } else {
                cube_roots_by_exponent(*value, p)
            };
            roots.sort_unstable();
            roots
                .into_iter()
                .map(|v| FieldElement::residue_unchecked(v, p))
                .collect()
        }
        Repr::Rational(r) => rational_cube_root(r)
            .map(|s| vec![FieldElement(Repr::Rational(s))])
            .unwrap_or_default(),
    }
}

fn cube_roots_exhaustive(a: u64, p: u64) -> Vec<u64> {
    (0..p)
        .filter(|&s| mul_mod(mul_mod(s, s, p), s, p) == a)
        .collect()
}

/// Cube roots in `GF(p)` without scanning the field: the inverse of cubing
/// when `p != 1 (mod 3)`, otherwise a Tonelli–Shanks style correction inside
/// the 3-Sylow subgroup of the multiplicative group.
pub(crate) fn cube_roots_by_exponent(a: u64, p: u64) -> Vec<u64> {
    let a = a % p;
    if a == 0 {
        return vec![0];
    }
    if p == 3 {
        return vec![a];
    }
    if p % 3 == 2 {
        return vec![pow_mod(a, (2 * p - 1) / 3, p)];
    }
    if pow_mod(a, (p - 1) / 3, p) != 1 {
        return Vec::new();
    }
    let mut m = p - 1;
    let mut e = 0u32;
    while m.is_multiple_of(3) {
        m /= 3;
        e += 1;
    }
    let sylow_order = 3u64.pow(e);
    let non_cube = (2..p)
        .find(|&z| pow_mod(z, (p - 1) / 3, p) != 1)
        .expect("p = 1 mod 3 has cubic non-residues");
    let gen = pow_mod(non_cube, m, p);
    // 3k = 1 + j*m
    let k = if m % 3 == 1 { (2 * m + 1) / 3 } else { (m + 1) / 3 };
    let j = (3 * k - 1) / m;
    let r = pow_mod(a, k, p);
    let t = pow_mod(a, m, p);
    let target = pow_mod(pow_mod(t, j, p), p - 2, p);
    let mut cur = 1u64;
    let mut log = None;
    for l in 0..sylow_order {
        if cur == target {
            log = Some(l);
            break;
        }
        cur = mul_mod(cur, gen, p);
    }
    let log = log.expect("a cube has its correction term in the 3-Sylow subgroup");
    debug_assert_eq!(log % 3, 0);
    let root = mul_mod(r, pow_mod(gen, log / 3, p), p);
    let w = pow_mod(gen, sylow_order / 3, p);
    let w2 = mul_mod(w, w, p);
    vec![root, mul_mod(root, w, p), mul_mod(root, w2, p)]
}

/// Exact rational cube root: numerator and denominator must both be cubes.
fn rational_cube_root(r: &BigRational) -> Option<BigRational> {
    let n = r.numer();
    let d = r.denom();
    let cn = n.cbrt();
    let cd = d.cbrt();
    if &(&cn * &cn * &cn) == n && &(&cd * &cd * &cd) == d {
        Some(BigRational::new(cn, cd))
    } else {
        None
    }
}

/// Some `w != 1` with `w^3 = 1`, i.e. a root of `X^2 + X + 1` other than 1.
/// Returns the smallest such residue over `GF(p)`; `None` over `Q`.
pub fn nontrivial_cube_root_of_unity(field: FieldSpec) -> Option<FieldElement> {
    let p = field.modulus()?;
    let w = if p <= EXHAUSTIVE_LIMIT {
        (0..p).find(|&x| x != 1 % p && (mul_mod(x, x, p) + x + 1).is_multiple_of(p))?
    } else {
        if p % 3 != 1 {
            return None;
        }
        let roots = cube_roots_by_exponent(1, p);
        roots.into_iter().filter(|&x| x != 1).min()?
    };
    Some(FieldElement::residue_unchecked(w, p))
}

/// How cubing behaves on a field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CubeRootProfile {
    pub characteristic: u64,
    pub cubing_injective: bool,
    pub cubing_surjective: bool,
    pub nontrivial_unity_root: Option<FieldElement>,
}

impl CubeRootProfile {
    /// For small prime fields injectivity is measured by counting the image
    /// of `x -> x^3`, independently of the unity-root search.
    pub fn of(field: FieldSpec) -> Self {
        let unity = nontrivial_cube_root_of_unity(field);
        match field.modulus() {
            Some(p) => {
                let injective = if p <= EXHAUSTIVE_LIMIT {
                    let mut hit = vec![false; p as usize];
                    for x in 0..p {
                        hit[mul_mod(mul_mod(x, x, p), x, p) as usize] = true;
                    }
                    hit.iter().all(|&h| h)
                } else {
                    p % 3 != 1
                };
                CubeRootProfile {
                    characteristic: p,
                    cubing_injective: injective,
                    cubing_surjective: injective,
                    nontrivial_unity_root: unity,
                }
            }
            // 2 has no rational cube root; x^3 is strictly monotone on Q.
            None => CubeRootProfile {
                characteristic: 0,
                cubing_injective: true,
                cubing_surjective: false,
                nontrivial_unity_root: None,
            },
        }
    }
}

/// Which of the four cases the osculating-tangent set falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpreadRegime {
    Char3,
    SpreadAndCovering,
    MaximalPartialNotCovering,
    NotPartialSpread,
}

impl SpreadRegime {
    pub fn is_partial_spread(self) -> bool {
        matches!(self, Self::SpreadAndCovering | Self::MaximalPartialNotCovering)
    }

    pub fn is_covering(self) -> bool {
        self == Self::SpreadAndCovering
    }
}

impl fmt::Display for SpreadRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn classify_field(field: FieldSpec) -> SpreadRegime {
    let profile = CubeRootProfile::of(field);
    if profile.characteristic == 3 {
        SpreadRegime::Char3
    } else if profile.nontrivial_unity_root.is_some() {
        SpreadRegime::NotPartialSpread
    } else if profile.cubing_surjective {
        SpreadRegime::SpreadAndCovering
    } else {
        SpreadRegime::MaximalPartialNotCovering
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn parse_specs() {
        assert_eq!(parse_field_spec("gf:5").unwrap().modulus(), Some(5));
        assert_eq!(parse_field_spec("q").unwrap(), FieldSpec::rationals());
        assert!(matches!(parse_field_spec("gf:6"), Err(Error::NonPrimeModulus(6))));
        assert!(matches!(parse_field_spec("gf:1"), Err(Error::NonPrimeModulus(1))));
        assert!(matches!(parse_field_spec("gf5"), Err(Error::MalformedSpec(_))));
        assert!(matches!(parse_field_spec("gf:x"), Err(Error::MalformedSpec(_))));
        assert!(matches!(parse_field_spec("r"), Err(Error::MalformedSpec(_))));
        assert_eq!(gf(11).to_string(), "gf:11");
    }

    #[test]
    fn cube_root_examples() {
        let f5 = gf(5);
        assert_eq!(cube_roots(&f5.int(2)), vec![f5.int(3)]);
        let q = FieldSpec::rationals();
        assert_eq!(cube_roots(&q.int(8)), vec![q.int(2)]);
        assert_eq!(cube_roots(&q.int(-27)), vec![q.int(-3)]);
        assert!(cube_roots(&q.int(2)).is_empty());
        assert_eq!(
            cube_roots(&q.ratio(8, 27).unwrap()),
            vec![q.ratio(2, 3).unwrap()]
        );
        assert!(cube_roots(&q.ratio(8, 9).unwrap()).is_empty());
        let f7 = gf(7);
        assert_eq!(cube_roots(&f7.int(1)), vec![f7.int(1), f7.int(2), f7.int(4)]);
        assert!(cube_roots(&f7.int(3)).is_empty());
    }

    #[test]
    fn unity_root_examples() {
        assert_eq!(nontrivial_cube_root_of_unity(gf(7)), Some(gf(7).int(2)));
        assert_eq!(nontrivial_cube_root_of_unity(gf(5)), None);
        assert_eq!(nontrivial_cube_root_of_unity(gf(2)), None);
        assert_eq!(nontrivial_cube_root_of_unity(gf(3)), None);
        assert_eq!(nontrivial_cube_root_of_unity(FieldSpec::rationals()), None);
    }

    #[test]
    fn regime_examples() {
        assert_eq!(classify_field(gf(5)), SpreadRegime::SpreadAndCovering);
        assert_eq!(classify_field(gf(2)), SpreadRegime::SpreadAndCovering);
        assert_eq!(classify_field(gf(11)), SpreadRegime::SpreadAndCovering);
        assert_eq!(classify_field(gf(7)), SpreadRegime::NotPartialSpread);
        assert_eq!(classify_field(gf(13)), SpreadRegime::NotPartialSpread);
        assert_eq!(classify_field(gf(3)), SpreadRegime::Char3);
        assert_eq!(
            classify_field(FieldSpec::rationals()),
            SpreadRegime::MaximalPartialNotCovering
        );
    }

    #[test]
    fn cube_root_counts_by_residue_class() {
        for p in (2..200).filter(|&p| is_prime(p)) {
            let f = gf(p);
            let mut all_single = true;
            for a in f.elements().unwrap() {
                let n = cube_roots(&a).len();
                assert!(matches!(n, 0 | 1 | 3), "p={p} a={a} n={n}");
                all_single &= n == 1;
            }
            assert_eq!(all_single, p % 3 != 1 || p == 3, "p={p}");
        }
    }

    #[test]
    fn unity_root_iff_cubing_not_injective() {
        for p in (2..400).filter(|&p| is_prime(p) && p != 3) {
            let prof = CubeRootProfile::of(gf(p));
            assert_eq!(prof.nontrivial_unity_root.is_some(), !prof.cubing_injective, "p={p}");
        }
    }

    #[test]
    fn exponent_path_matches_exhaustive() {
        for p in [2u64, 3, 5, 7, 11, 13, 19, 37, 61, 109, 163, 487, 541] {
            for a in 0..p {
                let mut fast = cube_roots_by_exponent(a, p);
                fast.sort_unstable();
                assert_eq!(fast, cube_roots_exhaustive(a, p), "p={p} a={a}");
            }
        }
    }

    #[test]
    fn large_prime_roots_cube_back() {
        for p in [1009u64, 1021, 1033, 4861, 1_000_003] {
            let f = gf(p);
            for a in [1u64, 2, 5, 8, 27, 1000] {
                let a = f.int(a as i64);
                for s in cube_roots(&a) {
                    assert_eq!(s.cube(), a);
                }
            }
            let w = nontrivial_cube_root_of_unity(f);
            assert_eq!(w.is_some(), p % 3 == 1);
            if let Some(w) = w {
                assert!(!w.is_one());
                assert!(w.cube().is_one());
            }
        }
    }

    #[test]
    fn element_parse_print_roundtrip() {
        let q = FieldSpec::rationals();
        for s in ["0", "1", "-1", "3/4", "-7/12", "22/7"] {
            let x = q.parse_element(s).unwrap();
            assert_eq!(x.to_string(), s);
            assert_eq!(q.parse_element(&x.to_string()).unwrap(), x);
        }
        assert_eq!(q.parse_element("6/8").unwrap().to_string(), "3/4");
        assert_eq!(q.parse_element("3/-4").unwrap().to_string(), "-3/4");
        assert_eq!(gf(5).parse_element("-1").unwrap(), gf(5).int(4));
        assert_eq!(gf(5).parse_element("1/3").unwrap(), gf(5).int(2));
        assert!(matches!(gf(5).parse_element("1/5"), Err(Error::DivisionByZero)));
    }

    #[test]
    fn residues_and_inverses() {
        let f = gf(13);
        for a in f.elements().unwrap().skip(1) {
            assert!((&a * &a.inv().unwrap()).is_one());
        }
        assert_eq!(f.zero().inv(), None);
        assert_eq!(f.int(-1).residue(), Some(12));
        assert_eq!(f.int(3).pow(3), f.int(1));
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn mixing_fields_panics() {
        let _ = gf(5).one() + gf(7).one();
    }
}
