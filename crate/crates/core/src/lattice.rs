//! Surface configurations, Chern classes and pointwise tilt-stability quantities.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::exactnum::{
    fmt_rational, from_bigint, int, is_integer, parse_rational, rat, serde_bigint, serde_rational, QuadPoly,
    QuadraticIrrational, Rational,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("no hyperbola: v0 = v1 = 0")]
    NoHyperbola,
    #[error("no real intercept: discriminant {0} is negative")]
    NoRealIntercept(String),
    #[error("lattice violation: {0}")]
    Violation(String),
    #[error("unknown preset `{0}` (expected `ppas` or `abelian-(1,2)`)")]
    UnknownPreset(String),
    #[error("invalid surface config: {0}")]
    InvalidConfig(String),
    #[error("cannot parse class `{0}`: expected `v0,v1,v2`")]
    Parse(String),
}

/// Numerical data of a polarized surface of Picard rank one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceConfig {
    #[serde(rename = "L2")]
    pub l2: u64,
    pub v0_step: u64,
    pub v1_step: u64,
    pub v2_denominator: u64,
    pub minimal_discriminant: u64,
}

impl SurfaceConfig {
    /// Config with the default steps `L2, L2` and `v2` denominator 2.
    pub fn with_l2(l2: u64, minimal_discriminant: u64) -> Self {
        Self {
            l2,
            v0_step: l2,
            v1_step: l2,
            v2_denominator: 2,
            minimal_discriminant,
        }
    }

    /// Principally polarized abelian surface.
    pub fn ppas() -> Self {
        Self::with_l2(2, 4)
    }

    /// Abelian surface with a polarization of type (1,2).
    pub fn abelian_1_2() -> Self {
        Self::with_l2(4, 8)
    }

    pub fn preset(name: &str) -> Result<Self, LatticeError> {
        match name.trim().to_ascii_lowercase().as_str() {
            "ppas" => Ok(Self::ppas()),
            "abelian-(1,2)" | "abelian-1-2" | "abelian12" => Ok(Self::abelian_1_2()),
            other => Err(LatticeError::UnknownPreset(other.to_string())),
        }
    }

    pub fn validate(&self) -> Result<(), LatticeError> {
        let fields = [
            ("L2", self.l2),
            ("v0_step", self.v0_step),
            ("v1_step", self.v1_step),
            ("v2_denominator", self.v2_denominator),
            ("minimal_discriminant", self.minimal_discriminant),
        ];
        for (name, value) in fields {
            if value == 0 {
                return Err(LatticeError::InvalidConfig(format!("{name} must be positive")));
            }
        }
        Ok(())
    }

    /// Whether `v` lies in the lattice described by the steps and the `v2` denominator.
    pub fn contains(&self, v: &ChernClass) -> bool {
        self.check(v).is_ok()
    }

    pub fn check(&self, v: &ChernClass) -> Result<(), LatticeError> {
        if !v.v0.is_multiple_of(&BigInt::from(self.v0_step)) {
            return Err(LatticeError::Violation(format!(
                "v0 = {} is not a multiple of {}",
                v.v0, self.v0_step
            )));
        }
        if !v.v1.is_multiple_of(&BigInt::from(self.v1_step)) {
            return Err(LatticeError::Violation(format!(
                "v1 = {} is not a multiple of {}",
                v.v1, self.v1_step
            )));
        }
        if !is_integer(&(&v.v2 * int(self.v2_denominator as i64))) {
            return Err(LatticeError::Violation(format!(
                "v2 = {} is not in (1/{})Z",
                fmt_rational(&v.v2),
                self.v2_denominator
            )));
        }
        Ok(())
    }

    /// True when `Δ(v) <= 0` or `Δ(v)` is a multiple of the minimal discriminant.
    pub fn discriminant_admissible(&self, v: &ChernClass) -> bool {
        let d = v.discriminant();
        if !d.is_positive() {
            return true;
        }
        let m = int(self.minimal_discriminant as i64);
        is_integer(&(d / m))
    }
}

/// `(L^2 ch0, L ch1, ch2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChernClass {
    pub v0: BigInt,
    pub v1: BigInt,
    pub v2: Rational,
}

/// Twisted components `(ch0, L ch1^β, ch2^β)` with `ch0` already scaled by `L^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedClass {
    pub t0: Rational,
    pub t1: Rational,
    pub t2: Rational,
}

impl TwistedClass {
    pub fn discriminant(&self) -> Rational {
        &self.t1 * &self.t1 - int(2) * &self.t0 * &self.t2
    }
}

/// A tilt or Mumford slope; vertical directions have slope `+inf`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slope {
    Finite(Rational),
    PosInfinity,
}

impl Slope {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Slope::Finite(q) => Some(q),
            Slope::PosInfinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Slope::PosInfinity)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(q) => f.write_str(&fmt_rational(q)),
            Slope::PosInfinity => f.write_str("+inf"),
        }
    }
}

impl Serialize for Slope {
    /// `"p/q"` or `"+inf"`.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The β-intercept of the hyperbola `ν_{0,β} = 0`, with a flag for double roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Intercept {
    pub value: QuadraticIrrational,
    pub double: bool,
}

impl ChernClass {
    pub fn new(v0: impl Into<BigInt>, v1: impl Into<BigInt>, v2: Rational) -> Self {
        Self {
            v0: v0.into(),
            v1: v1.into(),
            v2,
        }
    }

    pub fn ints(v0: i64, v1: i64, v2: i64) -> Self {
        Self::new(v0, v1, int(v2))
    }

    pub fn zero() -> Self {
        Self::ints(0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.v0.is_zero() && self.v1.is_zero() && self.v2.is_zero()
    }

    pub fn v0r(&self) -> Rational {
        from_bigint(&self.v0)
    }

    pub fn v1r(&self) -> Rational {
        from_bigint(&self.v1)
    }

    pub fn twist(&self, beta: &Rational) -> TwistedClass {
        twist(self, beta)
    }

    pub fn discriminant(&self) -> Rational {
        discriminant(self)
    }

    pub fn dual(&self) -> ChernClass {
        class_dual(self)
    }

    pub fn shift(&self) -> ChernClass {
        class_shift(self)
    }

    /// `L ch1^β`, the imaginary part of the central charge.
    pub fn im_at(&self, beta: &Rational) -> Rational {
        self.v1r() - beta * self.v0r()
    }

    /// `ch2^β`.
    pub fn ch2_at(&self, beta: &Rational) -> Rational {
        &self.v2 - beta * self.v1r() + beta * beta * self.v0r() / int(2)
    }

    /// Whether `self` and `other` are rational multiples of each other (or either is zero).
    pub fn proportional(&self, other: &ChernClass) -> bool {
        let (a0, a1, a2) = (self.v0r(), self.v1r(), &self.v2);
        let (b0, b1, b2) = (other.v0r(), other.v1r(), &other.v2);
        (&a0 * &b1 - &a1 * &b0).is_zero() && (&a0 * b2 - a2 * &b0).is_zero() && (&a1 * b2 - a2 * &b1).is_zero()
    }
}

impl Add for &ChernClass {
    type Output = ChernClass;
    fn add(self, rhs: &ChernClass) -> ChernClass {
        ChernClass::new(&self.v0 + &rhs.v0, &self.v1 + &rhs.v1, &self.v2 + &rhs.v2)
    }
}

impl Sub for &ChernClass {
    type Output = ChernClass;
    fn sub(self, rhs: &ChernClass) -> ChernClass {
        ChernClass::new(&self.v0 - &rhs.v0, &self.v1 - &rhs.v1, &self.v2 - &rhs.v2)
    }
}

impl Neg for &ChernClass {
    type Output = ChernClass;
    fn neg(self) -> ChernClass {
        ChernClass::new(-&self.v0, -&self.v1, -&self.v2)
    }
}

impl std::iter::Sum for ChernClass {
    fn sum<I: Iterator<Item = ChernClass>>(iter: I) -> ChernClass {
        iter.fold(ChernClass::zero(), |acc, c| &acc + &c)
    }
}

impl<'a> std::iter::Sum<&'a ChernClass> for ChernClass {
    fn sum<I: Iterator<Item = &'a ChernClass>>(iter: I) -> ChernClass {
        iter.fold(ChernClass::zero(), |acc, c| &acc + c)
    }
}

impl fmt::Display for ChernClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.v0, self.v1, fmt_rational(&self.v2))
    }
}

impl FromStr for ChernClass {
    type Err = LatticeError;

    /// Accepts `v0,v1,v2`, optionally wrapped in parentheses or brackets.
    fn from_str(s: &str) -> Result<Self, LatticeError> {
        let bad = || LatticeError::Parse(s.to_string());
        let inner = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let parts: Vec<&str> = inner.split(',').map(|p| p.trim().trim_matches('"')).collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let v0 = BigInt::from_str(parts[0]).map_err(|_| bad())?;
        let v1 = BigInt::from_str(parts[1]).map_err(|_| bad())?;
        let v2 = parse_rational(parts[2]).map_err(|_| bad())?;
        Ok(ChernClass::new(v0, v1, v2))
    }
}

#[derive(Serialize, Deserialize)]
struct BigIntRepr(#[serde(with = "serde_bigint")] BigInt);

#[derive(Serialize, Deserialize)]
struct RationalRepr(#[serde(with = "serde_rational")] Rational);

impl Serialize for ChernClass {
    /// JSON form `[v0, v1, "v2"]`.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (
            BigIntRepr(self.v0.clone()),
            BigIntRepr(self.v1.clone()),
            RationalRepr(self.v2.clone()),
        )
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ChernClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (BigIntRepr(v0), BigIntRepr(v1), RationalRepr(v2)) = Deserialize::deserialize(d)?;
        Ok(ChernClass::new(v0, v1, v2))
    }
}

pub fn twist(v: &ChernClass, beta: &Rational) -> TwistedClass {
    TwistedClass {
        t0: v.v0r(),
        t1: v.im_at(beta),
        t2: v.ch2_at(beta),
    }
}

/// `Δ(v) = v1^2 - 2 v0 v2`.
pub fn discriminant(v: &ChernClass) -> Rational {
    from_bigint(&(&v.v1 * &v.v1)) - int(2) * v.v0r() * &v.v2
}

/// `(Re Z, Im Z)` at `(a, β)` with `a = α^2/2`.
pub fn central_charge(v: &ChernClass, a: &Rational, beta: &Rational) -> (Rational, Rational) {
    let re = -(v.ch2_at(beta) - a * v.v0r());
    (re, v.im_at(beta))
}

pub fn tilt_slope(v: &ChernClass, a: &Rational, beta: &Rational) -> Slope {
    let (re, im) = central_charge(v, a, beta);
    if im.is_zero() {
        Slope::PosInfinity
    } else {
        Slope::Finite(-re / im)
    }
}

pub fn mu_slope(v: &ChernClass) -> Slope {
    if v.v0.is_zero() {
        Slope::PosInfinity
    } else {
        Slope::Finite(Rational::new(v.v1.clone(), v.v0.clone()))
    }
}

/// `Z_{0,β}(v) = 0`.
pub fn is_kernel_class(v: &ChernClass, beta: &Rational) -> bool {
    v.im_at(beta).is_zero() && v.ch2_at(beta).is_zero()
}

/// `ch2^{-x}(v) = v2 + v1 x + (v0/2) x^2`.
pub fn chd_polynomial(v: &ChernClass) -> QuadPoly {
    QuadPoly::new(v.v2.clone(), v.v1r(), v.v0r() / int(2))
}

/// Intercept of `ch2^β(v) = 0`: the smaller root for `v0 > 0`, the larger for `v0 < 0`.
///
/// Both branches are `(v1 - sqrt(Δ))/v0`; torsion classes have the single root `v2/v1`.
pub fn p_intercept(v: &ChernClass) -> Result<Intercept, LatticeError> {
    if v.v0.is_zero() {
        if v.v1.is_zero() {
            return Err(LatticeError::NoHyperbola);
        }
        return Ok(Intercept {
            value: (&v.v2 / v.v1r()).into(),
            double: false,
        });
    }
    let delta = v.discriminant();
    if delta.is_negative() {
        return Err(LatticeError::NoRealIntercept(fmt_rational(&delta)));
    }
    let root = QuadraticIrrational::sqrt_of(&delta).expect("nonnegative");
    let inv = rat(1, 1) / v.v0r();
    let value = root.neg().add_rational(&v.v1r()).mul_rational(&inv);
    Ok(Intercept {
        value,
        double: delta.is_zero(),
    })
}

pub fn class_dual(v: &ChernClass) -> ChernClass {
    ChernClass::new(v.v0.clone(), -&v.v1, v.v2.clone())
}

pub fn class_shift(v: &ChernClass) -> ChernClass {
    -v
}

pub fn class_add(v: &ChernClass, w: &ChernClass, cfg: &SurfaceConfig) -> Result<ChernClass, LatticeError> {
    let out = v + w;
    cfg.check(&out)?;
    Ok(out)
}

pub fn class_sub(v: &ChernClass, w: &ChernClass, cfg: &SurfaceConfig) -> Result<ChernClass, LatticeError> {
    let out = v - w;
    cfg.check(&out)?;
    Ok(out)
}

/// `v(L^k) = (L^2, k L^2, k^2 L^2 / 2)`.
pub fn line_bundle_class(k: i64, cfg: &SurfaceConfig) -> Result<ChernClass, LatticeError> {
    let l2 = BigInt::from(cfg.l2);
    let k = BigInt::from(k);
    let v2 = Rational::new(&k * &k * &l2, BigInt::from(2));
    let out = ChernClass::new(l2.clone(), &k * &l2, v2);
    cfg.check(&out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(v0: i64, v1: i64, v2: i64) -> ChernClass {
        ChernClass::ints(v0, v1, v2)
    }

    #[test]
    fn twist_examples() {
        let t = twist(&c(2, 0, -2), &rat(-3, 2));
        assert_eq!((t.t0, t.t1, t.t2), (int(2), int(3), rat(1, 4)));
        let t = twist(&c(2, 0, -2), &int(0));
        assert_eq!((t.t0, t.t1, t.t2), (int(2), int(0), int(-2)));
        let t = twist(&c(2, -4, 4), &int(-2));
        assert_eq!((t.t0, t.t1, t.t2), (int(2), int(0), int(0)));
    }

    #[test]
    fn discriminant_examples() {
        for n in 1..=5 {
            assert_eq!(discriminant(&c(2, 0, -n)), int(4 * n));
        }
        assert_eq!(discriminant(&c(2, -2, 1)), int(0));
        assert_eq!(discriminant(&c(0, 2, -4)), int(4));
    }

    #[test]
    fn central_charge_examples() {
        assert_eq!(central_charge(&c(2, 0, -2), &int(0), &int(0)), (int(2), int(0)));
        assert_eq!(central_charge(&c(2, -2, 1), &int(0), &int(-1)), (int(0), int(0)));
        assert_eq!(central_charge(&c(2, 0, 0), &rat(1, 2), &int(0)), (int(1), int(0)));
    }

    #[test]
    fn slopes() {
        assert_eq!(
            tilt_slope(&c(2, 0, -2), &int(0), &rat(-3, 2)),
            Slope::Finite(rat(1, 12))
        );
        assert_eq!(tilt_slope(&c(2, 0, -2), &int(0), &int(0)), Slope::PosInfinity);
        assert_eq!(tilt_slope(&c(0, 2, -3), &int(0), &rat(-3, 2)), Slope::Finite(int(0)));
        assert_eq!(mu_slope(&c(2, 0, -2)), Slope::Finite(int(0)));
        assert_eq!(mu_slope(&c(2, -2, 1)), Slope::Finite(int(-1)));
        assert_eq!(mu_slope(&c(0, 2, -3)), Slope::PosInfinity);
        assert!(Slope::Finite(int(1000)) < Slope::PosInfinity);
    }

    #[test]
    fn kernel_classes() {
        assert!(is_kernel_class(&c(-2, 2, -1), &int(-1)));
        assert!(!is_kernel_class(&c(2, 0, -2), &int(0)));
        for b in [-3, 0, 5] {
            assert!(!is_kernel_class(&c(0, 0, 1), &int(b)));
        }
    }

    #[test]
    fn chd_polynomials() {
        assert_eq!(chd_polynomial(&c(2, 0, -2)), QuadPoly::from_i64(-2, 0, 1));
        assert_eq!(chd_polynomial(&c(8, -4, 1)), QuadPoly::from_i64(1, -4, 4));
        assert_eq!(chd_polynomial(&c(-2, 6, -9)), QuadPoly::from_i64(-9, 6, -1));
    }

    #[test]
    fn intercepts() {
        let p = p_intercept(&c(2, 0, -2)).unwrap();
        assert_eq!(p.value, "-sqrt(2)".parse().unwrap());
        assert!(!p.double);
        let p = p_intercept(&c(2, -4, 4)).unwrap();
        assert_eq!(
            p,
            Intercept {
                value: int(-2).into(),
                double: true
            }
        );
        let p = p_intercept(&c(0, 2, -5)).unwrap();
        assert_eq!(p.value, rat(-5, 2).into());
        assert_eq!(p_intercept(&c(-2, 6, -9)).unwrap().value, int(-3).into());
        assert_eq!(p_intercept(&c(0, 0, 1)), Err(LatticeError::NoHyperbola));
        assert!(matches!(
            p_intercept(&c(2, 0, 1)),
            Err(LatticeError::NoRealIntercept(_))
        ));
    }

    #[test]
    fn derived_classes() {
        let ppas = SurfaceConfig::ppas();
        assert_eq!(class_dual(&c(2, -2, 1)), c(2, 2, 1));
        assert_eq!(class_shift(&c(2, -6, 9)), c(-2, 6, -9));
        assert_eq!(line_bundle_class(-2, &ppas).unwrap(), c(2, -4, 4));
        assert_eq!(line_bundle_class(1, &SurfaceConfig::abelian_1_2()).unwrap(), c(4, 4, 2));
        assert!(class_add(&c(2, 0, 0), &c(1, 0, 0), &ppas).is_err());
        assert_eq!(class_sub(&c(2, 0, -4), &c(2, -2, 1), &ppas).unwrap(), c(0, 2, -5));
    }

    #[test]
    fn config_lattice_checks() {
        let ppas = SurfaceConfig::ppas();
        assert!(ppas.contains(&ChernClass::new(2, 0, rat(-1, 2))));
        assert!(!ppas.contains(&ChernClass::new(2, 0, rat(-1, 3))));
        assert!(!ppas.contains(&c(2, 1, 0)));
        assert!(ppas.discriminant_admissible(&c(2, 0, -3)));
        assert!(!ppas.discriminant_admissible(&ChernClass::new(2, 0, rat(-1, 2))));
        assert_eq!(SurfaceConfig::preset("abelian-(1,2)").unwrap().l2, 4);
        assert!(SurfaceConfig::preset("k3").is_err());
    }

    #[test]
    fn parse_and_json() {
        let v: ChernClass = "2,0,-5".parse().unwrap();
        assert_eq!(v, c(2, 0, -5));
        let v: ChernClass = "(2, -4, 7/2)".parse().unwrap();
        assert_eq!(v.v2, rat(7, 2));
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, r#"[2,-4,"7/2"]"#);
        let back: ChernClass = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
        let cfg: SurfaceConfig =
            serde_json::from_str(r#"{"L2":2,"v0_step":2,"v1_step":2,"v2_denominator":2,"minimal_discriminant":4}"#)
                .unwrap();
        assert_eq!(cfg, SurfaceConfig::ppas());
    }

    fn class_strategy() -> impl Strategy<Value = ChernClass> {
        (-20i64..=20, -20i64..=20, -40i64..=40).prop_map(|(a, b, h)| ChernClass::new(2 * a, 2 * b, rat(h, 2)))
    }

    proptest! {
        #[test]
        fn twist_preserves_discriminant(v in class_strategy(), n in -50i64..50, d in 1i64..12) {
            let beta = rat(n, d);
            prop_assert_eq!(twist(&v, &beta).discriminant(), discriminant(&v));
        }

        #[test]
        fn chd_polynomial_is_linear(v in class_strategy(), w in class_strategy()) {
            let lhs = chd_polynomial(&v);
            let rhs = &chd_polynomial(&w) + &chd_polynomial(&(&v - &w));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn dual_reflects_polynomial(v in class_strategy()) {
            prop_assert_eq!(chd_polynomial(&class_dual(&v)), chd_polynomial(&v).reflect());
        }

        #[test]
        fn intercept_is_root(v in class_strategy()) {
            if let Ok(p) = p_intercept(&v) {
                let x = p.value.neg();
                prop_assert!(chd_polynomial(&v).eval(&x).is_zero());
            }
        }
    }
}
