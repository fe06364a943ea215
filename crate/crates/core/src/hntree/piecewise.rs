use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::TreeError;
use crate::exactnum::{int, QuadPoly, QuadraticIrrational, Rational};

/// Piecewise quadratic function with exact breakpoints.
///
/// Piece `i` lives between breakpoints `i-1` and `i`; the outer pieces extend to infinity or to
/// the optional domain bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseQuadratic {
    pub breakpoints: Vec<QuadraticIrrational>,
    pub pieces: Vec<QuadPoly>,
    pub domain_lower: Option<QuadraticIrrational>,
    pub domain_upper: Option<QuadraticIrrational>,
}

type Bound = Option<QuadraticIrrational>;

impl PiecewiseQuadratic {
    pub fn new(breakpoints: Vec<QuadraticIrrational>, pieces: Vec<QuadPoly>) -> Result<Self, TreeError> {
        if pieces.len() != breakpoints.len() + 1 {
            return Err(TreeError::Malformed(format!(
                "{} pieces for {} breakpoints",
                pieces.len(),
                breakpoints.len()
            )));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(TreeError::Malformed("breakpoints must be strictly ascending".into()));
        }
        Ok(Self {
            breakpoints,
            pieces,
            domain_lower: None,
            domain_upper: None,
        })
    }

    pub fn with_domain(mut self, lower: Bound, upper: Bound) -> Self {
        self.domain_lower = lower;
        self.domain_upper = upper;
        self
    }

    /// Index of the piece governing `x`; a breakpoint belongs to the piece on its left.
    pub fn piece_index(&self, x: &QuadraticIrrational) -> usize {
        self.breakpoints.iter().filter(|b| *b < x).count()
    }

    pub fn eval(&self, x: &QuadraticIrrational) -> QuadraticIrrational {
        self.pieces[self.piece_index(x)].eval(x)
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let q: QuadraticIrrational = x.clone().into();
        self.pieces[self.piece_index(&q)].eval_rational(x)
    }

    /// Interval of piece `i`, clipped to the domain.
    pub fn interval(&self, i: usize) -> (Bound, Bound) {
        let lo = if i == 0 {
            None
        } else {
            Some(self.breakpoints[i - 1].clone())
        };
        let hi = self.breakpoints.get(i).cloned();
        (
            max_bound(lo, self.domain_lower.clone()),
            min_bound(hi, self.domain_upper.clone()),
        )
    }

    /// Indices of breakpoints where the adjacent pieces disagree.
    pub fn continuity_defects(&self) -> Vec<usize> {
        self.breakpoints
            .iter()
            .enumerate()
            .filter(|(i, b)| self.pieces[*i].eval(b) != self.pieces[*i + 1].eval(b))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_continuous(&self) -> bool {
        self.continuity_defects().is_empty()
    }

    /// Right minus left derivative at each breakpoint.
    pub fn derivative_jumps(&self) -> Vec<QuadraticIrrational> {
        self.breakpoints
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let left = self.pieces[i].derivative().eval(b);
                let right = self.pieces[i + 1].derivative().eval(b);
                right.checked_sub(&left).expect("same field")
            })
            .collect()
    }

    /// Whether every piece is `>= 0` on its interval (vertex analysis).
    pub fn is_nonnegative(&self) -> bool {
        (0..self.pieces.len()).all(|i| {
            let (lo, hi) = self.interval(i);
            if empty(&lo, &hi) {
                return true;
            }
            let p = &self.pieces[i];
            let ends_ok =
                end_nonnegative(p, lo.as_ref(), Ordering::Less) && end_nonnegative(p, hi.as_ref(), Ordering::Greater);
            let vertex_ok = if p.c2.is_positive() {
                let v: QuadraticIrrational = (-&p.c1 / (int(2) * &p.c2)).into();
                let inside = lo.as_ref().is_none_or(|l| l < &v) && hi.as_ref().is_none_or(|h| &v < h);
                !inside || !p.eval(&v).signum().is_lt()
            } else {
                true
            };
            ends_ok && vertex_ok
        })
    }

    /// Whether the function is non-decreasing (`increasing = true`) or non-increasing from `from` on.
    pub fn is_monotone(&self, increasing: bool, from: Option<&QuadraticIrrational>) -> bool {
        (0..self.pieces.len()).all(|i| {
            let (lo, hi) = self.interval(i);
            let lo = max_bound(lo, from.cloned());
            if empty(&lo, &hi) {
                return true;
            }
            let d = self.pieces[i].derivative();
            let oriented = if increasing { d } else { -&d };
            end_nonnegative(&oriented, lo.as_ref(), Ordering::Less)
                && end_nonnegative(&oriented, hi.as_ref(), Ordering::Greater)
        })
    }

    /// `x -> f(-x)`.
    pub fn reflect(&self) -> Self {
        let breakpoints = self.breakpoints.iter().rev().map(QuadraticIrrational::neg).collect();
        let pieces = self.pieces.iter().rev().map(QuadPoly::reflect).collect();
        Self {
            breakpoints,
            pieces,
            domain_lower: self.domain_upper.as_ref().map(QuadraticIrrational::neg),
            domain_upper: self.domain_lower.as_ref().map(QuadraticIrrational::neg),
        }
    }

    /// Subtracts `p` from every piece.
    pub fn minus(&self, p: &QuadPoly) -> Self {
        Self {
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces.iter().map(|q| q - p).collect(),
            domain_lower: self.domain_lower.clone(),
            domain_upper: self.domain_upper.clone(),
        }
    }
}

fn empty(lo: &Bound, hi: &Bound) -> bool {
    matches!((lo, hi), (Some(l), Some(h)) if l >= h)
}

fn max_bound(a: Bound, b: Bound) -> Bound {
    match (a, b) {
        (Some(x), Some(y)) => Some(if x >= y { x } else { y }),
        (x, None) => x,
        (None, y) => y,
    }
}

fn min_bound(a: Bound, b: Bound) -> Bound {
    match (a, b) {
        (Some(x), Some(y)) => Some(if x <= y { x } else { y }),
        (x, None) => x,
        (None, y) => y,
    }
}

/// `p >= 0` at a finite end, or in the limit towards `-inf` (`Less`) / `+inf` (`Greater`).
fn end_nonnegative(p: &QuadPoly, end: Option<&QuadraticIrrational>, side: Ordering) -> bool {
    if let Some(x) = end {
        return !p.eval(x).signum().is_lt();
    }
    let lead = if !p.c2.is_zero() {
        p.c2.clone()
    } else if !p.c1.is_zero() {
        if side == Ordering::Less {
            -&p.c1
        } else {
            p.c1.clone()
        }
    } else {
        p.c0.clone()
    };
    !lead.is_negative()
}

fn fmt_bound(q: &QuadraticIrrational) -> String {
    q.to_string()
}

impl fmt::Display for PiecewiseQuadratic {
    /// `{0 | x <= 1; x^2 - 1 | x >= 1}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.pieces.len();
        let parts: Vec<String> = (0..n)
            .map(|i| {
                let (lo, hi) = self.interval(i);
                let range = match (lo, hi) {
                    (None, None) => "all x".to_string(),
                    (None, Some(h)) => format!("x <= {}", fmt_bound(&h)),
                    (Some(l), None) => format!("x >= {}", fmt_bound(&l)),
                    (Some(l), Some(h)) => format!("{} <= x <= {}", fmt_bound(&l), fmt_bound(&h)),
                };
                format!("{} | {}", self.pieces[i], range)
            })
            .collect();
        write!(f, "{{{}}}", parts.join("; "))
    }
}

#[derive(Serialize, Deserialize)]
struct Repr {
    breakpoints: Vec<QuadraticIrrational>,
    pieces: Vec<QuadPoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    domain: Option<(Bound, Bound)>,
}

impl Serialize for PiecewiseQuadratic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let domain = if self.domain_lower.is_none() && self.domain_upper.is_none() {
            None
        } else {
            Some((self.domain_lower.clone(), self.domain_upper.clone()))
        };
        Repr {
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces.clone(),
            domain,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PiecewiseQuadratic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = Repr::deserialize(d)?;
        let (lo, hi) = repr.domain.unwrap_or((None, None));
        PiecewiseQuadratic::new(repr.breakpoints, repr.pieces)
            .map(|f| f.with_domain(lo, hi))
            .map_err(serde::de::Error::custom)
    }
}
