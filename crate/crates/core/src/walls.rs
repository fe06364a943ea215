//! Numerical walls in the `(a, β)` half plane and enumeration of candidate destabilizers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{
    ceil_int, floor_int, fmt_rational, from_bigint, int, isqrt, rational_to_f64, serde_rational, Rational,
};
use crate::lattice::{central_charge, ChernClass, LatticeError, SurfaceConfig};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WallError {
    #[error("no height: vertical walls have no a-profile")]
    NoHeight,
    #[error("expected semicircular walls")]
    NotSemicircle,
    #[error("degenerate semicircle: radius_sq = {0} is not positive")]
    Degenerate(String),
    #[error("a_min must be positive (walls accumulate at a = 0)")]
    NonPositiveAMin,
    #[error("a_max = {a_max} is below a_min = {a_min}")]
    EmptyRange { a_min: String, a_max: String },
    #[error("wrong side of vertical wall: L ch1^β = {0} is not positive")]
    WrongSide(String),
    #[error("class is not in the heart at this β: L ch1^β = {0} is not positive")]
    NotInHeart(String),
    #[error("negative discriminant {0}")]
    NegativeDiscriminant(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

/// A semicircle centered on the β-axis or a vertical line.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumericalWall {
    Semicircle {
        #[serde(with = "serde_rational")]
        center: Rational,
        #[serde(with = "serde_rational")]
        radius_sq: Rational,
    },
    Vertical {
        #[serde(with = "serde_rational")]
        beta: Rational,
    },
}

impl NumericalWall {
    pub fn semicircle(center: Rational, radius_sq: Rational) -> Result<Self, WallError> {
        if !radius_sq.is_positive() {
            return Err(WallError::Degenerate(fmt_rational(&radius_sq)));
        }
        Ok(NumericalWall::Semicircle { center, radius_sq })
    }

    pub fn vertical(beta: Rational) -> Self {
        NumericalWall::Vertical { beta }
    }

    pub fn is_semicircle(&self) -> bool {
        matches!(self, NumericalWall::Semicircle { .. })
    }

    /// `(center, radius_sq)` of a semicircle.
    pub fn circle(&self) -> Option<(&Rational, &Rational)> {
        match self {
            NumericalWall::Semicircle { center, radius_sq } => Some((center, radius_sq)),
            NumericalWall::Vertical { .. } => None,
        }
    }

    /// Height `a = R/2` of the top point.
    pub fn top_a(&self) -> Option<Rational> {
        self.circle().map(|(_, r)| r / int(2))
    }
}

impl fmt::Display for NumericalWall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumericalWall::Semicircle { center, radius_sq } => {
                write!(
                    f,
                    "semicircle(center {}, radius_sq {})",
                    fmt_rational(center),
                    fmt_rational(radius_sq)
                )
            }
            NumericalWall::Vertical { beta } => write!(f, "vertical(beta {})", fmt_rational(beta)),
        }
    }
}

/// The three 2x2 minors `(D01, D02, D12)` of the matrix with rows `v`, `w`.
pub fn minors(v: &ChernClass, w: &ChernClass) -> (Rational, Rational, Rational) {
    let (v0, v1, v2) = (v.v0r(), v.v1r(), &v.v2);
    let (w0, w1, w2) = (w.v0r(), w.v1r(), &w.v2);
    let d01 = &v0 * &w1 - &v1 * &w0;
    let d02 = &v0 * w2 - v2 * &w0;
    let d12 = &v1 * w2 - v2 * &w1;
    (d01, d02, d12)
}

/// Locus where `ν_{a,β}(v) = ν_{a,β}(w)`, or `None` when it is empty or everything.
pub fn wall_between(v: &ChernClass, w: &ChernClass) -> Option<NumericalWall> {
    let (d01, d02, d12) = minors(v, w);
    if !d01.is_zero() {
        let s = &d02 / &d01;
        let radius_sq = &s * &s - int(2) * &d12 / &d01;
        NumericalWall::semicircle(s, radius_sq).ok()
    } else if !d02.is_zero() {
        Some(NumericalWall::vertical(d12 / d02))
    } else {
        None
    }
}

/// `<v, w> = v1 w1 - v0 w2 - v2 w0`, the polarization of the discriminant.
pub fn pairing(v: &ChernClass, w: &ChernClass) -> Rational {
    v.v1r() * w.v1r() - v.v0r() * &w.v2 - &v.v2 * w.v0r()
}

/// Height of a semicircle above `β`, or `None` outside its span.
pub fn wall_a_at(wall: &NumericalWall, beta: &Rational) -> Result<Option<Rational>, WallError> {
    let (s, r) = wall.circle().ok_or(WallError::NoHeight)?;
    let dx = beta - s;
    let dx2 = &dx * &dx;
    if &dx2 > r {
        return Ok(None);
    }
    Ok(Some((r - dx2) / int(2)))
}

/// Which of two walls.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    First,
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nesting {
    Disjoint,
    Nested { inner: Which },
    Equal,
    Crossing,
}

/// Relative position of two semicircles. Tangent circles count as nested or disjoint.
pub fn nesting(w1: &NumericalWall, w2: &NumericalWall) -> Result<Nesting, WallError> {
    let (s1, r1) = w1.circle().ok_or(WallError::NotSemicircle)?;
    let (s2, r2) = w2.circle().ok_or(WallError::NotSemicircle)?;
    if s1 == s2 && r1 == r2 {
        return Ok(Nesting::Equal);
    }
    // With e = d^2 - R1 - R2 the circles cross iff |e| < 2 sqrt(R1 R2).
    let ds = s1 - s2;
    let e = &ds * &ds - r1 - r2;
    if &e * &e < int(4) * r1 * r2 {
        return Ok(Nesting::Crossing);
    }
    if e.is_positive() {
        return Ok(Nesting::Disjoint);
    }
    let inner = if r1 < r2 { Which::First } else { Which::Second };
    Ok(Nesting::Nested { inner })
}

/// Whether `inner` lies inside `outer` without touching it.
pub fn strictly_inside(inner: &NumericalWall, outer: &NumericalWall) -> Result<bool, WallError> {
    let (s1, r1) = inner.circle().ok_or(WallError::NotSemicircle)?;
    let (s2, r2) = outer.circle().ok_or(WallError::NotSemicircle)?;
    if r1 >= r2 {
        return Ok(false);
    }
    let ds = s1 - s2;
    let e = &ds * &ds - r1 - r2;
    Ok(e.is_negative() && &e * &e > int(4) * r1 * r2)
}

/// Whether the top point of a semicircle lies on the hyperbola `ν(v) = 0`.
pub fn top_point_on_hyperbola(v: &ChernClass, wall: &NumericalWall) -> bool {
    match wall.circle() {
        Some((s, r)) => (v.ch2_at(s) - r * v.v0r() / int(2)).is_zero(),
        None => false,
    }
}

/// A numerical wall crossing the query segment together with its destabilizing classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallCandidate {
    pub wall: NumericalWall,
    /// The lexicographically smallest normalized witness.
    pub witness: ChernClass,
    /// All normalized witnesses defining this wall, ascending.
    pub witnesses: Vec<ChernClass>,
    #[serde(with = "serde_rational")]
    pub cross_a: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Upper end of the segment; [`default_a_max`] when absent.
    pub a_max: Option<Rational>,
    /// Require `Δ(w) + Δ(v - w) < Δ(v)` instead of `<=`.
    pub strict: bool,
    pub threads: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self {
            a_max: None,
            strict: false,
            threads: 1,
        }
    }
}

/// The smaller of `w` and `v - w` in lexicographic order.
pub fn normalize_witness(v: &ChernClass, w: &ChernClass) -> ChernClass {
    let u = v - w;
    if &u < w {
        u
    } else {
        w.clone()
    }
}

/// An `a` above every candidate wall of `v`.
///
/// Along a wall with radius `ρ` and destabilizer `w`, `ρ |D01(v, w)| <= Δ(v)/2`, and `D01` is a
/// nonzero multiple of `gcd(v0 * v1_step, v1 * v0_step)`. No wall rises above `ρ_max^2 / 2`.
pub fn default_a_max(v: &ChernClass, a_min: &Rational, cfg: &SurfaceConfig) -> Rational {
    let g = (&v.v0 * BigInt::from(cfg.v1_step)).gcd(&(&v.v1 * BigInt::from(cfg.v0_step)));
    let delta = v.discriminant();
    if g.is_zero() || !delta.is_positive() {
        return a_min.clone();
    }
    let rho_max = delta / (int(2) * from_bigint(&g));
    let top = &rho_max * &rho_max / int(2);
    if &top < a_min {
        a_min.clone()
    } else {
        top
    }
}

/// Candidate walls for `v` crossing `{β = beta_star, a_min <= a <= a_max}`, outermost first.
pub fn enumerate_candidates(
    v: &ChernClass,
    beta_star: &Rational,
    a_min: &Rational,
    a_max: &Rational,
    cfg: &SurfaceConfig,
) -> Result<Vec<WallCandidate>, WallError> {
    let opts = EnumerationOptions {
        a_max: Some(a_max.clone()),
        ..Default::default()
    };
    enumerate_with(v, beta_star, a_min, &opts, cfg)
}

pub fn enumerate_with(
    v: &ChernClass,
    beta_star: &Rational,
    a_min: &Rational,
    opts: &EnumerationOptions,
    cfg: &SurfaceConfig,
) -> Result<Vec<WallCandidate>, WallError> {
    cfg.validate()?;
    cfg.check(v)?;
    if !a_min.is_positive() {
        return Err(WallError::NonPositiveAMin);
    }
    let delta_v = v.discriminant();
    if delta_v.is_negative() {
        return Err(WallError::NegativeDiscriminant(fmt_rational(&delta_v)));
    }
    let t_v = v.im_at(beta_star);
    if !t_v.is_positive() {
        let shown = fmt_rational(&t_v);
        return Err(if v.v0.is_zero() {
            WallError::NotInHeart(shown)
        } else {
            WallError::WrongSide(shown)
        });
    }
    let a_max = opts.a_max.clone().unwrap_or_else(|| default_a_max(v, a_min, cfg));
    if &a_max < a_min {
        return Err(WallError::EmptyRange {
            a_min: fmt_rational(a_min),
            a_max: fmt_rational(&a_max),
        });
    }
    let scan = Scan::new(v, beta_star, a_min, &a_max, opts.strict, cfg, t_v, delta_v);
    let w0_values = scan.w0_values();
    let raw: Vec<(NumericalWall, ChernClass, Rational)> = if opts.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| WallError::ThreadPool(e.to_string()))?;
        pool.install(|| w0_values.par_iter().flat_map_iter(|w0| scan.scan_w0(w0)).collect())
    } else {
        w0_values.iter().flat_map(|w0| scan.scan_w0(w0)).collect()
    };
    Ok(canonicalize(v, raw))
}

fn canonicalize(v: &ChernClass, raw: Vec<(NumericalWall, ChernClass, Rational)>) -> Vec<WallCandidate> {
    let mut groups: BTreeMap<NumericalWall, (Rational, BTreeSet<ChernClass>)> = BTreeMap::new();
    for (wall, w, cross_a) in raw {
        groups
            .entry(wall)
            .or_insert_with(|| (cross_a, BTreeSet::new()))
            .1
            .insert(normalize_witness(v, &w));
    }
    let mut out: Vec<WallCandidate> = groups
        .into_iter()
        .map(|(wall, (cross_a, set))| {
            let witnesses: Vec<ChernClass> = set.into_iter().collect();
            WallCandidate {
                witness: witnesses[0].clone(),
                wall,
                witnesses,
                cross_a,
            }
        })
        .collect();
    out.sort_by(|x, y| y.cross_a.cmp(&x.cross_a).then_with(|| x.wall.cmp(&y.wall)));
    out
}

/// Rational upper bound for `1/sqrt(q)`, `q > 0`.
fn inv_sqrt_upper(q: &Rational) -> Rational {
    // 1/sqrt(n/d) = sqrt(n d)/n
    let n = q.numer();
    let d = q.denom();
    Rational::new(isqrt(&(n * d)) + 1u32, n.clone())
}

/// Orders two rationals as an interval.
fn span(x: Rational, y: Rational) -> (Rational, Rational) {
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

struct Scan<'a> {
    v: &'a ChernClass,
    beta: &'a Rational,
    a_min: &'a Rational,
    a_max: &'a Rational,
    strict: bool,
    cfg: &'a SurfaceConfig,
    v0: Rational,
    v1: Rational,
    t_v: Rational,
    t2_v: Rational,
    delta_v: Rational,
    /// `|w0| <= t * bound_slope` for a class with `Im Z = t` at the crossing point.
    bound_slope: Rational,
    /// Upper bound for `|D01(v, w)|`.
    d01_max: Rational,
}

impl<'a> Scan<'a> {
    #[allow(clippy::too_many_arguments)]
    fn new(
        v: &'a ChernClass,
        beta: &'a Rational,
        a_min: &'a Rational,
        a_max: &'a Rational,
        strict: bool,
        cfg: &'a SurfaceConfig,
        t_v: Rational,
        delta_v: Rational,
    ) -> Self {
        let t2_v = v.ch2_at(beta);
        let v0 = v.v0r();
        // Δ(w) = t^2 - 2 t w0 ν - 2 a w0^2 >= 0 at the crossing gives
        // |w0| <= t |ν|/a + t/sqrt(2a), and |ν(a)|/a <= (|t2_v|/a_min + |v0|)/t_v.
        let bound_slope = (t2_v.abs() / a_min + v0.abs()) / &t_v + inv_sqrt_upper(&(int(2) * a_min));
        // Accepted witnesses satisfy ρ |D01| <= Δ(v)/2, and a wall reaching a_min has ρ >= sqrt(2 a_min).
        let d01_max = &delta_v * inv_sqrt_upper(&(int(2) * a_min)) / int(2);
        Self {
            d01_max,
            v,
            beta,
            a_min,
            a_max,
            strict,
            cfg,
            v1: v.v1r(),
            v0,
            t_v,
            t2_v,
            delta_v,
            bound_slope,
        }
    }

    fn w0_values(&self) -> Vec<BigInt> {
        // |w0| t_v <= |D01| + |v0| t with t <= t_v
        let b = (&self.t_v * &self.bound_slope).min(&self.d01_max / &self.t_v + self.v0.abs());
        let lo = (-&b).max(&self.v0 - &b);
        let hi = b.clone().min(&self.v0 + &b);
        let step = BigInt::from(self.cfg.v0_step);
        let k_lo = ceil_int(&(lo / from_bigint(&step)));
        let k_hi = floor_int(&(hi / from_bigint(&step)));
        let mut out = Vec::new();
        let mut k = k_lo;
        while k <= k_hi {
            out.push(&k * &step);
            k += 1;
        }
        out
    }

    fn scan_w0(&self, w0_int: &BigInt) -> Vec<(NumericalWall, ChernClass, Rational)> {
        let mut out = Vec::new();
        let w0 = from_bigint(w0_int);
        let u0 = &self.v0 - &w0;
        let step1 = from_bigint(&BigInt::from(self.cfg.v1_step));
        let base = self.beta * &w0;
        let k_lo = floor_int(&(&base / &step1)) + 1;
        let k_hi = floor_int(&((&base + &self.t_v) / &step1));
        let den = BigInt::from(self.cfg.v2_denominator);
        let den_r = from_bigint(&den);
        let two = int(2);
        let mut k = k_lo;
        while k <= k_hi {
            let w1_int = &k * BigInt::from(self.cfg.v1_step);
            k += 1;
            let w1 = from_bigint(&w1_int);
            let t = &w1 - &base;
            let t_u = &self.t_v - &t;
            if w0.abs() > &t * &self.bound_slope || u0.abs() > &t_u * &self.bound_slope {
                continue;
            }
            let g = &w0 * &self.t_v - &self.v0 * &t;
            if g.is_zero() || g.abs() > self.d01_max {
                continue;
            }
            // ν(w) = ν(v) at (a, β) pins ch2^β(w) = (t2_v t + a g)/t_v.
            let offset = self.beta * &w1 - self.beta * self.beta * &w0 / &two;
            let at = |a: &Rational| (&self.t2_v * &t + a * &g) / &self.t_v + &offset;
            let (mut lo, mut hi) = span(at(self.a_min), at(self.a_max));
            if !w0.is_zero() {
                let w1sq = &w1 * &w1;
                let (l, h) = span((&w1sq - &self.delta_v) / (&two * &w0), w1sq / (&two * &w0));
                lo = lo.max(l);
                hi = hi.min(h);
            }
            if !u0.is_zero() {
                let u1 = &self.v1 - &w1;
                let u1sq = &u1 * &u1;
                let (l, h) = span(
                    &self.v.v2 - u1sq.clone() / (&two * &u0),
                    &self.v.v2 - (u1sq - &self.delta_v) / (&two * &u0),
                );
                lo = lo.max(l);
                hi = hi.min(h);
            }
            if lo > hi {
                continue;
            }
            let mut j = ceil_int(&(&lo * &den_r));
            let j_hi = floor_int(&(&hi * &den_r));
            while j <= j_hi {
                let w = ChernClass::new(w0_int.clone(), w1_int.clone(), Rational::new(j.clone(), den.clone()));
                j += 1;
                if let Some(found) = self.accept(w) {
                    out.push(found);
                }
            }
        }
        out
    }

    fn accept(&self, w: ChernClass) -> Option<(NumericalWall, ChernClass, Rational)> {
        let u = self.v - &w;
        let dw = w.discriminant();
        let du = u.discriminant();
        if dw.is_negative() || du.is_negative() {
            return None;
        }
        if !self.cfg.discriminant_admissible(&w) || !self.cfg.discriminant_admissible(&u) {
            return None;
        }
        let total = &dw + &du;
        if total > self.delta_v || (self.strict && total == self.delta_v) {
            return None;
        }
        let wall = wall_between(self.v, &w)?;
        let (s, _) = wall.circle()?;
        let cross_a = wall_a_at(&wall, self.beta).ok()??;
        if &cross_a < self.a_min || &cross_a > self.a_max {
            return None;
        }
        let t_top = w.im_at(s);
        if !t_top.is_positive() || t_top > self.v.im_at(s) {
            return None;
        }
        Some((wall, w, cross_a))
    }
}

fn sign(q: &Rational) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

/// `Re Z(w) Im Z(v) - Re Z(v) Im Z(w)`: zero exactly where the slopes agree, sign-changing across.
fn slope_gap(v: &ChernClass, w: &ChernClass, a: &Rational, beta: &Rational) -> Rational {
    let (re_v, im_v) = central_charge(v, a, beta);
    let (re_w, im_w) = central_charge(w, a, beta);
    re_w * im_v - re_v * im_w
}

/// `slope_gap` on the grid `(a, β) = (ka, kb) * n/q` in machine integers.
///
/// Clearing denominators multiplies the gap by `2 q^3 D > 0`, so signs agree.
struct GridGap {
    v: [i128; 3],
    w: [i128; 3],
    d: i128,
    q: i128,
    n: i128,
}

impl GridGap {
    fn new(v: &ChernClass, w: &ChernClass, step: &Rational) -> Option<Self> {
        let d = v.v2.denom().lcm(w.v2.denom());
        let scaled = |c: &ChernClass| -> Option<[i128; 3]> {
            let c2 = &c.v2 * from_bigint(&d);
            Some([c.v0.to_i128()?, c.v1.to_i128()?, c2.to_integer().to_i128()?])
        };
        Some(Self {
            v: scaled(v)?,
            w: scaled(w)?,
            d: d.to_i128()?,
            q: step.denom().to_i128()?,
            n: step.numer().to_i128()?,
        })
    }

    fn parts(&self, c: &[i128; 3], b: i128, a: i128) -> Option<(i128, i128)> {
        let (q, d) = (self.q, self.d);
        let im = q.checked_mul(c[1])?.checked_sub(b.checked_mul(c[0])?)?;
        let t1 = 2i128.checked_mul(q)?.checked_mul(q)?.checked_mul(c[2])?;
        let t2 = 2i128
            .checked_mul(q)?
            .checked_mul(d)?
            .checked_mul(b)?
            .checked_mul(c[1])?;
        let t3 = d.checked_mul(b)?.checked_mul(b)?.checked_mul(c[0])?;
        let t4 = 2i128
            .checked_mul(q)?
            .checked_mul(d)?
            .checked_mul(a)?
            .checked_mul(c[0])?;
        let re = t2.checked_sub(t1)?.checked_sub(t3)?.checked_add(t4)?;
        Some((re, im))
    }

    fn sign(&self, kb: &BigInt, ka: &BigInt) -> Option<i8> {
        let b = kb.to_i128()?.checked_mul(self.n)?;
        let a = ka.to_i128()?.checked_mul(self.n)?;
        let (re_v, im_v) = self.parts(&self.v, b, a)?;
        let (re_w, im_w) = self.parts(&self.w, b, a)?;
        let f = re_w.checked_mul(im_v)?.checked_sub(re_v.checked_mul(im_w)?)?;
        Some(f.signum() as i8)
    }
}

/// Brute-force check that the tilt slopes of `v` and `w` agree exactly along `wall`.
///
/// Samples a rational grid with spacing `grid_step` covering the wall with a margin, plus the
/// points at and just off the claimed wall on every grid line. The slope difference must vanish
/// on the wall, keep one sign inside and the opposite sign outside.
pub fn slope_crossing_oracle(v: &ChernClass, w: &ChernClass, wall: &NumericalWall, grid_step: &Rational) -> bool {
    if !grid_step.is_positive() {
        return false;
    }
    let eps = grid_step * grid_step;
    let fast = GridGap::new(v, w, grid_step);
    let grid_sign = |kb: &BigInt, ka: &BigInt| -> i8 {
        fast.as_ref().and_then(|g| g.sign(kb, ka)).unwrap_or_else(|| {
            let beta = from_bigint(kb) * grid_step;
            let a = from_bigint(ka) * grid_step;
            sign(&slope_gap(v, w, &a, &beta))
        })
    };
    let mut inside_sign = 0i8;
    let mut outside_sign = 0i8;
    let record = |side: &mut i8, s: i8| -> bool {
        if s == 0 {
            return false;
        }
        if *side == 0 {
            *side = s;
        }
        *side == s
    };
    match wall {
        NumericalWall::Semicircle { center, radius_sq } => {
            let rho_up = Rational::from_integer(isqrt(&ceil_int(radius_sq)) + 1u32);
            let margin = grid_step * int(4);
            let b_lo = floor_int(&((center - &rho_up - &margin) / grid_step));
            let b_hi = ceil_int(&((center + &rho_up + &margin) / grid_step));
            let a_top = radius_sq / int(2) + &margin;
            let a_count = ceil_int(&(&a_top / grid_step));
            let mut kb = b_lo;
            while kb <= b_hi {
                let cur = kb.clone();
                let beta = from_bigint(&cur) * grid_step;
                kb += 1;
                let height = wall_a_at(wall, &beta).expect("semicircle");
                // The wall height in grid units, rounded up, and whether it is a grid point.
                let h_grid = height.as_ref().map(|h| {
                    let k = h / grid_step;
                    (ceil_int(&k), k.is_integer())
                });
                let mut ka = BigInt::one();
                while ka <= a_count {
                    let s = grid_sign(&cur, &ka);
                    let ok = match &h_grid {
                        Some((c, _)) if &ka < c => record(&mut inside_sign, s),
                        Some((c, true)) if &ka == c => s == 0,
                        _ => record(&mut outside_sign, s),
                    };
                    ka += 1;
                    if !ok {
                        return false;
                    }
                }
                match height {
                    Some(h) if h.is_positive() => {
                        if sign(&slope_gap(v, w, &h, &beta)) != 0 {
                            return false;
                        }
                        let below = &h - &eps;
                        if below.is_positive() && !record(&mut inside_sign, sign(&slope_gap(v, w, &below, &beta))) {
                            return false;
                        }
                        if !record(&mut outside_sign, sign(&slope_gap(v, w, &(&h + &eps), &beta))) {
                            return false;
                        }
                    }
                    _ => {
                        if !record(&mut outside_sign, sign(&slope_gap(v, w, &eps, &beta))) {
                            return false;
                        }
                    }
                }
            }
        }
        NumericalWall::Vertical { beta: b0 } => {
            // Left and right of the line play the roles of inside and outside.
            let margin = grid_step * int(8);
            let b_lo = floor_int(&((b0 - &margin) / grid_step));
            let b_hi = ceil_int(&((b0 + &margin) / grid_step));
            let mut betas: Vec<Rational> = Vec::new();
            let mut kb = b_lo;
            while kb <= b_hi {
                betas.push(from_bigint(&kb) * grid_step);
                kb += 1;
            }
            betas.push(b0 - &eps);
            betas.push(b0 + &eps);
            betas.push(b0.clone());
            for beta in &betas {
                for ka in 1..=16i64 {
                    let a = int(ka) * grid_step;
                    let s = sign(&slope_gap(v, w, &a, beta));
                    let ok = match beta.cmp(b0) {
                        std::cmp::Ordering::Less => record(&mut inside_sign, s),
                        std::cmp::Ordering::Equal => s == 0,
                        std::cmp::Ordering::Greater => record(&mut outside_sign, s),
                    };
                    if !ok {
                        return false;
                    }
                }
            }
        }
    }
    inside_sign != 0 && outside_sign != 0 && inside_sign != outside_sign
}

/// Approximate radius for display.
pub fn radius_f64(wall: &NumericalWall) -> Option<f64> {
    wall.circle().map(|(_, r)| rational_to_f64(r).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use proptest::prelude::*;

    fn c(v0: i64, v1: i64, v2: i64) -> ChernClass {
        ChernClass::ints(v0, v1, v2)
    }

    fn semi(s: Rational, r: Rational) -> NumericalWall {
        NumericalWall::semicircle(s, r).unwrap()
    }

    #[test]
    fn wall_between_examples() {
        let w = semi(rat(-3, 2), rat(1, 4));
        assert_eq!(wall_between(&c(2, 0, -2), &c(4, -4, 2)), Some(w.clone()));
        assert_eq!(wall_between(&c(2, 0, -2), &c(2, -2, 1)), Some(w));
        assert_eq!(
            wall_between(&c(2, 0, -5), &c(4, -6, 4)),
            Some(semi(rat(-7, 3), rat(4, 9)))
        );
        assert_eq!(wall_between(&c(2, 0, -2), &c(4, 0, -4)), None);
        assert_eq!(
            wall_between(&c(2, 0, -2), &c(0, 0, 1)),
            Some(NumericalWall::vertical(int(0)))
        );
    }

    #[test]
    fn radius_identity_on_known_walls() {
        let cases = [
            (c(2, 0, -2), c(4, -4, 2)),
            (c(2, 0, -2), c(2, -2, 1)),
            (c(2, 0, -5), c(4, -6, 4)),
            (c(2, 0, -4), c(2, -2, 1)),
            (c(2, 0, -5), c(2, -2, 0)),
            (c(4, 0, -1), c(8, -4, 1)),
        ];
        for (v, w) in cases {
            let wall = wall_between(&v, &w).unwrap();
            let (_, r) = wall.circle().unwrap();
            let (d01, _, _) = minors(&v, &w);
            let p = pairing(&v, &w);
            assert_eq!(r * &d01 * &d01, &p * &p - v.discriminant() * w.discriminant());
            assert!(top_point_on_hyperbola(&v, &wall));
        }
        assert_eq!(pairing(&c(2, 0, -2), &c(4, -4, 2)), int(4));
    }

    #[test]
    fn heights() {
        let w = semi(rat(-5, 2), rat(9, 4));
        assert_eq!(wall_a_at(&w, &int(-2)).unwrap(), Some(int(1)));
        let w = semi(rat(-3, 2), rat(1, 4));
        assert_eq!(wall_a_at(&w, &rat(-3, 2)).unwrap(), Some(rat(1, 8)));
        assert_eq!(wall_a_at(&w, &int(0)).unwrap(), None);
        assert_eq!(
            wall_a_at(&NumericalWall::vertical(int(0)), &int(0)),
            Err(WallError::NoHeight)
        );
    }

    #[test]
    fn nesting_examples() {
        let w2 = semi(rat(-5, 2), rat(5, 4));
        let wq = semi(rat(-5, 2), rat(1, 4));
        assert_eq!(nesting(&w2, &wq).unwrap(), Nesting::Nested { inner: Which::Second });
        let w1 = semi(int(-3), int(4));
        let w3 = semi(rat(-7, 3), rat(4, 9));
        assert_eq!(nesting(&w1, &w3).unwrap(), Nesting::Nested { inner: Which::Second });
        assert_eq!(nesting(&w3, &w1).unwrap(), Nesting::Nested { inner: Which::First });
        assert_eq!(nesting(&w1, &w1.clone()).unwrap(), Nesting::Equal);
        assert_eq!(
            nesting(&semi(int(0), int(1)), &semi(int(5), int(1))).unwrap(),
            Nesting::Disjoint
        );
        assert_eq!(
            nesting(&semi(int(0), int(4)), &semi(int(2), int(4))).unwrap(),
            Nesting::Crossing
        );
        // internally tangent
        assert_eq!(
            nesting(&semi(int(0), int(4)), &semi(int(1), int(1))).unwrap(),
            Nesting::Nested { inner: Which::Second }
        );
        assert!(!strictly_inside(&semi(int(1), int(1)), &semi(int(0), int(4))).unwrap());
        assert!(strictly_inside(&wq, &w2).unwrap());
        assert!(nesting(&NumericalWall::vertical(int(0)), &w1).is_err());
    }

    fn summary(list: &[WallCandidate]) -> Vec<(Rational, Rational, Rational)> {
        list.iter()
            .map(|cand| {
                let (s, r) = cand.wall.circle().unwrap();
                (s.clone(), r.clone(), cand.cross_a.clone())
            })
            .collect()
    }

    #[test]
    fn enumeration_n4_and_n5() {
        let ppas = SurfaceConfig::ppas();
        let found = enumerate_candidates(&c(2, 0, -4), &int(-2), &rat(1, 100), &int(10), &ppas).unwrap();
        assert_eq!(summary(&found), vec![(rat(-5, 2), rat(9, 4), int(1))]);
        let found = enumerate_candidates(&c(2, 0, -5), &int(-2), &rat(1, 100), &int(10), &ppas).unwrap();
        assert_eq!(
            summary(&found),
            vec![
                (int(-3), int(4), rat(3, 2)),
                (rat(-5, 2), rat(5, 4), rat(1, 2)),
                (rat(-7, 3), rat(4, 9), rat(1, 6)),
            ]
        );
        assert_eq!(found[0].witness, c(0, 2, -6).min(c(2, -2, 1)));
    }

    #[test]
    fn enumeration_n3_generic_wall() {
        let ppas = SurfaceConfig::ppas();
        let found = enumerate_candidates(&c(2, 0, -3), &rat(-7, 4), &rat(1, 100), &int(10), &ppas).unwrap();
        assert!(found.iter().any(|cand| cand.wall == semi(rat(-7, 4), rat(1, 16))));
    }

    #[test]
    fn enumeration_errors() {
        let ppas = SurfaceConfig::ppas();
        let v = c(2, 0, -5);
        assert_eq!(
            enumerate_candidates(&v, &int(0), &rat(1, 100), &int(10), &ppas),
            Err(WallError::WrongSide("0".into()))
        );
        assert_eq!(
            enumerate_candidates(&v, &int(-2), &int(0), &int(10), &ppas),
            Err(WallError::NonPositiveAMin)
        );
        assert!(matches!(
            enumerate_candidates(&v, &int(-2), &int(2), &int(1), &ppas),
            Err(WallError::EmptyRange { .. })
        ));
        assert!(enumerate_candidates(&c(2, 0, 1), &int(-2), &int(1), &int(2), &ppas).is_err());
    }

    #[test]
    fn delta_zero_has_no_walls() {
        let ppas = SurfaceConfig::ppas();
        for beta in [rat(-3, 2), int(-2), int(-5)] {
            let found = enumerate_with(&c(2, -2, 1), &beta, &rat(1, 100), &Default::default(), &ppas).unwrap();
            assert!(found.is_empty());
        }
    }

    #[test]
    fn default_a_max_covers_walls() {
        let ppas = SurfaceConfig::ppas();
        let v = c(2, 0, -5);
        let a_max = default_a_max(&v, &rat(1, 100), &ppas);
        assert_eq!(a_max, rat(25, 8));
        let found = enumerate_with(&v, &int(-2), &rat(1, 100), &Default::default(), &ppas).unwrap();
        assert_eq!(found.len(), 3);
    }

    #[test]
    fn threads_match_serial() {
        let ppas = SurfaceConfig::ppas();
        let v = c(2, 0, -9);
        let serial = enumerate_with(&v, &int(-2), &rat(1, 100), &Default::default(), &ppas).unwrap();
        let opts = EnumerationOptions {
            threads: 4,
            ..Default::default()
        };
        let parallel = enumerate_with(&v, &int(-2), &rat(1, 100), &opts, &ppas).unwrap();
        assert_eq!(serial, parallel);
    }

    #[test]
    fn oracle_examples() {
        let v = c(2, 0, -2);
        let w = c(4, -4, 2);
        let wall = wall_between(&v, &w).unwrap();
        assert!(slope_crossing_oracle(&v, &w, &wall, &rat(1, 64)));
        let moved = semi(rat(-3, 2) + rat(1, 32), rat(1, 4));
        assert!(!slope_crossing_oracle(&v, &w, &moved, &rat(1, 64)));
        let sky = c(0, 0, 1);
        let vertical = wall_between(&v, &sky).unwrap();
        assert!(slope_crossing_oracle(&v, &sky, &vertical, &rat(1, 64)));
        assert!(!slope_crossing_oracle(
            &v,
            &sky,
            &NumericalWall::vertical(rat(1, 8)),
            &rat(1, 64)
        ));
    }

    #[test]
    fn wall_json_round_trip() {
        let w = semi(rat(-5, 2), rat(9, 4));
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"center":"-5/2","radius_sq":"9/4"}"#);
        assert_eq!(serde_json::from_str::<NumericalWall>(&s).unwrap(), w);
        let vtx = NumericalWall::vertical(rat(1, 2));
        let s = serde_json::to_string(&vtx).unwrap();
        assert_eq!(s, r#"{"beta":"1/2"}"#);
        assert_eq!(serde_json::from_str::<NumericalWall>(&s).unwrap(), vtx);
    }

    proptest! {
        #[test]
        fn sub_and_quotient_share_wall(
            a in -6i64..=6, b in -6i64..=6, h in -20i64..=20,
            p in -6i64..=6, q in -6i64..=6, k in -20i64..=20,
        ) {
            let v = ChernClass::new(2 * a, 2 * b, rat(h, 2));
            let w = ChernClass::new(2 * p, 2 * q, rat(k, 2));
            prop_assert_eq!(wall_between(&v, &w), wall_between(&v, &(&v - &w)));
        }
    }
}
