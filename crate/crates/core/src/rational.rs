//! Exact rational outcome labels and rational snapping of computed reals.

use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// An outcome label such as `+1/2`. Labels are identifiers, so they are kept
/// as reduced integer fractions and never pass through floating point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    num: i64,
    den: i64,
}

impl Label {
    pub const HALF: Label = Label { num: 1, den: 2 };
    pub const MINUS_HALF: Label = Label { num: -1, den: 2 };

    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::ParseRational(alloc::format!("{num}/0")));
        }
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()).max(1) as i64;
        let sign = if den < 0 { -1 } else { 1 };
        Ok(Self {
            num: sign * num / g,
            den: sign * den / g,
        })
    }

    pub fn integer(n: i64) -> Self {
        Self { num: n, den: 1 }
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseRational(s.to_string());
        let t = s.trim();
        let t = t.strip_prefix('+').unwrap_or(t);
        match t.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                Label::new(n, d).map_err(|_| bad())
            }
            None => t.parse().map(Label::integer).map_err(|_| bad()),
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Parses `"5/24"`, `"-1/3"`, `"2"` or a plain decimal such as `"0.125"`.
pub fn parse_real(s: &str) -> Result<f64> {
    let t = s.trim();
    if let Ok(label) = t.parse::<Label>() {
        return Ok(label.to_f64());
    }
    t.parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| Error::ParseRational(String::from(s)))
}

/// Best rational approximation `p/q` of `x` with `q ≤ max_den`, returned only
/// when it lies within `tol` of `x`.
pub fn snap_rational(x: f64, max_den: u64, tol: f64) -> Option<(i64, u64)> {
    if !x.is_finite() {
        return None;
    }
    let neg = x < 0.0;
    let target = libm::fabs(x);
    // convergents h/k of the continued fraction of |x|
    let (mut h_prev, mut h) = (0u64, 1u64);
    let (mut k_prev, mut k) = (1u64, 0u64);
    let mut rest = target;
    let mut best: Option<(u64, u64)> = None;
    for _ in 0..64 {
        let a = libm::floor(rest);
        if a > 1e15 {
            break;
        }
        let a_int = a as u64;
        let h_next = a_int.checked_mul(h).and_then(|v| v.checked_add(h_prev));
        let k_next = a_int.checked_mul(k).and_then(|v| v.checked_add(k_prev));
        let (Some(h_next), Some(k_next)) = (h_next, k_next) else {
            break;
        };
        if k_next > max_den {
            break;
        }
        (h_prev, h) = (h, h_next);
        (k_prev, k) = (k, k_next);
        best = Some((h, k));
        if libm::fabs(h as f64 / k as f64 - target) <= tol {
            break;
        }
        let frac = rest - a;
        if frac < 1e-15 {
            break;
        }
        rest = 1.0 / frac;
    }
    let (p, q) = best?;
    if libm::fabs(p as f64 / q as f64 - target) > tol {
        return None;
    }
    let p = p as i64;
    Some((if neg { -p } else { p }, q))
}
