use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::qi::QuadraticIrrational;
use super::rational::{fmt_rational, int, parse_rational, Rational};
use super::ExactError;

/// `c0 + c1*x + c2*x^2` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadPoly {
    pub c0: Rational,
    pub c1: Rational,
    pub c2: Rational,
}

/// A real root; `double` marks a root of multiplicity two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub value: QuadraticIrrational,
    pub double: bool,
}

impl QuadPoly {
    pub fn new(c0: Rational, c1: Rational, c2: Rational) -> Self {
        Self { c0, c1, c2 }
    }

    pub fn from_i64(c0: i64, c1: i64, c2: i64) -> Self {
        Self::new(int(c0), int(c1), int(c2))
    }

    pub fn zero() -> Self {
        Self::from_i64(0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero() && self.c2.is_zero()
    }

    pub fn degree(&self) -> Option<usize> {
        if !self.c2.is_zero() {
            Some(2)
        } else if !self.c1.is_zero() {
            Some(1)
        } else if !self.c0.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        &self.c0 + x * (&self.c1 + x * &self.c2)
    }

    pub fn eval(&self, x: &QuadraticIrrational) -> QuadraticIrrational {
        quad_eval(self, x)
    }

    pub fn derivative(&self) -> QuadPoly {
        QuadPoly::new(self.c1.clone(), &self.c2 * int(2), Rational::zero())
    }

    /// `x -> p(-x)`.
    pub fn reflect(&self) -> QuadPoly {
        QuadPoly::new(self.c0.clone(), -&self.c1, self.c2.clone())
    }

    pub fn scale(&self, k: &Rational) -> QuadPoly {
        QuadPoly::new(&self.c0 * k, &self.c1 * k, &self.c2 * k)
    }

    pub fn roots(&self) -> Result<Vec<Root>, ExactError> {
        quad_roots(self)
    }
}

impl std::ops::Add for &QuadPoly {
    type Output = QuadPoly;
    fn add(self, rhs: &QuadPoly) -> QuadPoly {
        QuadPoly::new(&self.c0 + &rhs.c0, &self.c1 + &rhs.c1, &self.c2 + &rhs.c2)
    }
}

impl std::ops::Sub for &QuadPoly {
    type Output = QuadPoly;
    fn sub(self, rhs: &QuadPoly) -> QuadPoly {
        QuadPoly::new(&self.c0 - &rhs.c0, &self.c1 - &rhs.c1, &self.c2 - &rhs.c2)
    }
}

impl std::ops::Neg for &QuadPoly {
    type Output = QuadPoly;
    fn neg(self) -> QuadPoly {
        QuadPoly::new(-&self.c0, -&self.c1, -&self.c2)
    }
}

impl std::iter::Sum for QuadPoly {
    fn sum<I: Iterator<Item = QuadPoly>>(iter: I) -> QuadPoly {
        iter.fold(QuadPoly::zero(), |acc, p| &acc + &p)
    }
}

/// Exact value of `p` at `x`; the result stays in the field of `x`.
pub fn quad_eval(p: &QuadPoly, x: &QuadraticIrrational) -> QuadraticIrrational {
    let x2 = x.square();
    let lin = x.mul_rational(&p.c1);
    let quad = x2.mul_rational(&p.c2);
    lin.checked_add(&quad)
        .expect("powers of x share its field")
        .add_rational(&p.c0)
}

/// Real roots in ascending order. Constant nonzero polynomials have none.
pub fn quad_roots(p: &QuadPoly) -> Result<Vec<Root>, ExactError> {
    if p.is_zero() {
        return Err(ExactError::IndeterminateRoots);
    }
    if p.c2.is_zero() {
        if p.c1.is_zero() {
            return Ok(Vec::new());
        }
        let r = -&p.c0 / &p.c1;
        return Ok(vec![Root {
            value: r.into(),
            double: false,
        }]);
    }
    let disc = &p.c1 * &p.c1 - int(4) * &p.c0 * &p.c2;
    if disc.is_negative() {
        return Ok(Vec::new());
    }
    let two_a = int(2) * &p.c2;
    let center = -&p.c1 / &two_a;
    if disc.is_zero() {
        return Ok(vec![Root {
            value: center.into(),
            double: true,
        }]);
    }
    let offset = QuadraticIrrational::sqrt_of(&disc)?.mul_rational(&(Rational::one() / two_a.abs()));
    let lo = offset.neg().add_rational(&center);
    let hi = offset.add_rational(&center);
    Ok(vec![
        Root {
            value: lo,
            double: false,
        },
        Root {
            value: hi,
            double: false,
        },
    ])
}

fn fmt_term(out: &mut String, coeff: &Rational, mono: &str) {
    if coeff.is_zero() {
        return;
    }
    let neg = coeff.is_negative();
    let mag = coeff.abs();
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if mono.is_empty() || !mag.is_one() {
        out.push_str(&fmt_rational(&mag));
    }
    out.push_str(mono);
}

impl fmt::Display for QuadPoly {
    /// Human-readable form such as `x^2 - 2` or `4x^2 - 4x + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        fmt_term(&mut s, &self.c2, "x^2");
        fmt_term(&mut s, &self.c1, "x");
        fmt_term(&mut s, &self.c0, "");
        if s.is_empty() {
            s.push('0');
        }
        f.write_str(&s)
    }
}

impl Serialize for QuadPoly {
    /// JSON form `["c0", "c1", "c2"]`.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [fmt_rational(&self.c0), fmt_rational(&self.c1), fmt_rational(&self.c2)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [c0, c1, c2] = <[String; 3]>::deserialize(d)?;
        let p = |t: &str| parse_rational(t).map_err(serde::de::Error::custom);
        Ok(QuadPoly::new(p(&c0)?, p(&c1)?, p(&c2)?))
    }
}
