use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{fmt_rational, from_bigint, isqrt, parse_rational, rational_to_f64, Rational};
use super::ExactError;

/// Exact real number `a + b*sqrt(d)` with rational `a`, `b` and squarefree `d >= 0`.
///
/// The representation is canonical: `d` is squarefree, and `b == 0` exactly when `d == 0`
/// (a rational value always carries `d = 0`). Structural equality is therefore value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticIrrational {
    a: Rational,
    b: Rational,
    d: BigInt,
}

/// Splits `n > 0` as `k^2 * m` with `m` squarefree.
pub fn squarefree_split(n: &BigInt) -> (BigInt, BigInt) {
    debug_assert!(n.is_positive());
    if let Some(small) = n.to_u64() {
        let (k, m) = squarefree_split_u64(small);
        return (BigInt::from(k), BigInt::from(m));
    }
    let mut rest = n.clone();
    let mut k = BigInt::one();
    let mut p = BigInt::from(2u32);
    while &p * &p <= rest {
        let sq = &p * &p;
        while (&rest % &sq).is_zero() {
            rest /= &sq;
            k *= &p;
        }
        p += 1u32;
    }
    (k, rest)
}

fn squarefree_split_u64(mut n: u64) -> (u64, u64) {
    let mut k = 1u64;
    let mut m = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        let mut e = 0u32;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        k *= p.pow(e / 2);
        if e % 2 == 1 {
            m *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (k, m * n)
}

/// Sign of `a + b*sqrt(d)` for a single field, exactly.
fn field_sign(a: &Rational, b: &Rational, d: &BigInt) -> Ordering {
    let sa = a.cmp(&Rational::zero());
    let sb = if d.is_zero() {
        Ordering::Equal
    } else {
        b.cmp(&Rational::zero())
    };
    match (sa, sb) {
        (x, Ordering::Equal) => x,
        (Ordering::Equal, y) => y,
        (x, y) if x == y => x,
        (x, _) => {
            // opposite signs: compare a^2 with b^2 d
            let lhs = a * a;
            let rhs = b * b * from_bigint(d);
            match lhs.cmp(&rhs) {
                Ordering::Greater => x,
                Ordering::Less => x.reverse(),
                Ordering::Equal => Ordering::Equal,
            }
        }
    }
}

impl QuadraticIrrational {
    pub fn new(a: Rational, b: Rational, d: BigInt) -> Result<Self, ExactError> {
        if d.is_negative() {
            return Err(ExactError::NegativeRadicand(d.to_string()));
        }
        Ok(Self::canonical(a, b, d))
    }

    fn canonical(a: Rational, b: Rational, d: BigInt) -> Self {
        if b.is_zero() || d.is_zero() {
            return Self::from_rational(a);
        }
        let (k, m) = squarefree_split(&d);
        let b = b * from_bigint(&k);
        if m.is_one() {
            return Self::from_rational(a + b);
        }
        Self { a, b, d: m }
    }

    pub fn from_rational(a: Rational) -> Self {
        Self {
            a,
            b: Rational::zero(),
            d: BigInt::zero(),
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    /// Exact square root of a nonnegative rational.
    pub fn sqrt_of(q: &Rational) -> Result<Self, ExactError> {
        if q.is_negative() {
            return Err(ExactError::NegativeRadicand(fmt_rational(q)));
        }
        // sqrt(p/q) = sqrt(p*q)/q
        let radicand = q.numer() * q.denom();
        Ok(Self::canonical(
            Rational::zero(),
            Rational::new(BigInt::one(), q.denom().clone()),
            radicand,
        ))
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.d.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.is_rational() && self.a.is_zero()
    }

    pub fn signum(&self) -> Ordering {
        field_sign(&self.a, &self.b, &self.d)
    }

    /// True when both values live in a common field `Q(sqrt(d))`.
    pub fn same_field(&self, other: &Self) -> bool {
        self.is_rational() || other.is_rational() || self.d == other.d
    }

    fn common_d<'a>(&'a self, other: &'a Self) -> Option<&'a BigInt> {
        if self.is_rational() {
            Some(&other.d)
        } else if other.is_rational() || self.d == other.d {
            Some(&self.d)
        } else {
            None
        }
    }

    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        let d = self.common_d(other)?.clone();
        Some(Self::canonical(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        let d = self.common_d(other)?.clone();
        let dq = from_bigint(&d);
        let a = &self.a * &other.a + &self.b * &other.b * dq;
        let b = &self.a * &other.b + &self.b * &other.a;
        Some(Self::canonical(a, b, d))
    }

    pub fn add_rational(&self, q: &Rational) -> Self {
        Self {
            a: &self.a + q,
            b: self.b.clone(),
            d: self.d.clone(),
        }
    }

    pub fn mul_rational(&self, q: &Rational) -> Self {
        Self::canonical(&self.a * q, &self.b * q, self.d.clone())
    }

    pub fn neg(&self) -> Self {
        Self {
            a: -&self.a,
            b: -&self.b,
            d: self.d.clone(),
        }
    }

    pub fn square(&self) -> Self {
        self.checked_mul(self).expect("a value shares its own field")
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.a) + rational_to_f64(&self.b) * rational_to_f64(&from_bigint(&self.d)).sqrt()
    }

    /// Rational enclosure `[lo, hi]` of the value using `sqrt(d)` truncated to `bits` binary digits.
    fn enclosure(&self, bits: u32) -> (Rational, Rational) {
        if self.is_rational() {
            return (self.a.clone(), self.a.clone());
        }
        let scale = BigInt::one() << bits;
        let root = isqrt(&(&self.d * &scale * &scale));
        let lo_root = Rational::new(root.clone(), scale.clone());
        let hi_root = Rational::new(root + 1u32, scale);
        let (x, y) = (&self.b * lo_root, &self.b * hi_root);
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        (&self.a + lo, &self.a + hi)
    }

    fn exact_cmp(&self, other: &Self) -> Ordering {
        if let Some(diff) = self.checked_sub(other) {
            return diff.signum();
        }
        // x - y = X + Y with X = r + s*sqrt(d1) and Y = -t*sqrt(d2)
        let r = &self.a - &other.a;
        let s = &self.b;
        let t = -&other.b;
        let sx = field_sign(&r, s, &self.d);
        let sy = t.cmp(&Rational::zero());
        match (sx, sy) {
            (Ordering::Equal, y) => y,
            (x, Ordering::Equal) => x,
            (x, y) if x == y => x,
            (x, y) => {
                // X^2 - Y^2 = (r^2 + s^2 d1 - t^2 d2) + 2 r s sqrt(d1)
                let d1 = from_bigint(&self.d);
                let d2 = from_bigint(&other.d);
                let rat_part = &r * &r + s * s * d1 - &t * &t * d2;
                let rad_part = Rational::from_integer(BigInt::from(2)) * &r * s;
                match field_sign(&rat_part, &rad_part, &self.d) {
                    Ordering::Greater => x,
                    Ordering::Less => y,
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }
}

impl Ord for QuadraticIrrational {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        if !self.same_field(other) {
            let (lo1, hi1) = self.enclosure(48);
            let (lo2, hi2) = other.enclosure(48);
            if hi1 < lo2 {
                return Ordering::Less;
            }
            if hi2 < lo1 {
                return Ordering::Greater;
            }
        }
        self.exact_cmp(other)
    }
}

impl PartialOrd for QuadraticIrrational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact comparison of two quadratic irrationals, possibly from different fields.
pub fn qi_compare(x: &QuadraticIrrational, y: &QuadraticIrrational) -> Ordering {
    x.cmp(y)
}

impl From<Rational> for QuadraticIrrational {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl fmt::Display for QuadraticIrrational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return f.write_str(&fmt_rational(&self.a));
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(
            f,
            "{}{}{}*sqrt({})",
            fmt_rational(&self.a),
            sign,
            fmt_rational(&self.b.abs()),
            self.d
        )
    }
}

impl FromStr for QuadraticIrrational {
    type Err = ExactError;

    /// Accepts `a`, `a+b*sqrt(d)`, `a-b*sqrt(d)`, `b*sqrt(d)`, `sqrt(d)` and `-sqrt(d)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || ExactError::Parse(format!("invalid quadratic irrational `{s}`"));
        let Some(open) = compact.find("sqrt(") else {
            return Ok(Self::from_rational(parse_rational(&compact)?));
        };
        let inner = compact[open + 5..].strip_suffix(')').ok_or_else(bad)?;
        let d = BigInt::from_str(inner).map_err(|_| bad())?;
        let head = &compact[..open];
        let head = head.strip_suffix('*').unwrap_or(head);
        // split `head` into rational part and signed coefficient at the last +/- not at position 0
        let split = head
            .char_indices()
            .rev()
            .find(|&(i, c)| i > 0 && (c == '+' || c == '-') && !head[..i].ends_with('/'))
            .map(|(i, _)| i);
        let (a_txt, b_txt) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("", head),
        };
        let a = if a_txt.is_empty() {
            Rational::zero()
        } else {
            parse_rational(a_txt)?
        };
        let b = match b_txt {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            t => parse_rational(t.strip_prefix('+').unwrap_or(t))?,
        };
        Self::new(a, b, d)
    }
}

impl serde::Serialize for QuadraticIrrational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for QuadraticIrrational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
