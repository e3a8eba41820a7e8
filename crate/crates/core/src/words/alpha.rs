//! Exact slopes: rationals and real quadratic surds.
//!
//! Every comparison and floor is reduced to integer arithmetic on the
//! form `X + Y*sqrt(d)`, which is decidable because `d` is not a square.

use std::cmp::Ordering;
use std::fmt;

use num_integer::{Integer, Roots};
use num_rational::Ratio;
use num_traits::Signed;

use crate::error::{Error, Result};

/// A real quadratic irrational `(p + q*sqrt(d)) / r`.
///
/// Normalized: `r > 0`, `q != 0`, `d` square-free and `> 1`, `gcd(p, q, r) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Surd {
    p: i64,
    q: i64,
    d: i64,
    r: i64,
}

impl Surd {
    pub fn new(p: i64, q: i64, d: i64, r: i64) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidAlpha("zero denominator".into()));
        }
        if q == 0 {
            return Err(Error::InvalidAlpha(
                "surd coefficient q must be nonzero".into(),
            ));
        }
        if d <= 0 {
            return Err(Error::InvalidAlpha(format!(
                "radicand {d} must be positive"
            )));
        }
        let (square, free) = split_square(d);
        if free == 1 {
            return Err(Error::PerfectSquare(d));
        }
        let (mut p, mut q, mut r) = (p, q.checked_mul(square).ok_or_else(overflow)?, r);
        if r < 0 {
            p = -p;
            q = -q;
            r = -r;
        }
        let g = p.gcd(&q).gcd(&r);
        Ok(Surd {
            p: p / g,
            q: q / g,
            d: free,
            r: r / g,
        })
    }

    pub fn p(&self) -> i64 {
        self.p
    }
    pub fn q(&self) -> i64 {
        self.q
    }
    pub fn d(&self) -> i64 {
        self.d
    }
    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn to_f64(&self) -> f64 {
        (self.p as f64 + self.q as f64 * (self.d as f64).sqrt()) / self.r as f64
    }
}

fn overflow() -> Error {
    Error::InvalidAlpha("coefficient overflow".into())
}

/// Writes `d = k^2 * f` with `f` square-free; returns `(k, f)`.
fn split_square(mut d: i64) -> (i64, i64) {
    let mut k = 1i64;
    let mut f = 1i64;
    let mut p = 2i64;
    while p * p <= d {
        let mut e = 0;
        while d % p == 0 {
            d /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            k *= p;
        }
        if e % 2 == 1 {
            f *= p;
        }
        p += 1;
    }
    (k, f * d)
}

/// An exact slope in `[0, 1]`.
///
/// Mechanical words additionally require the open interval; that check lives
/// in [`WordSpec::mechanical`](super::WordSpec::mechanical). Closed-interval values arise as
/// slopes of degenerate periodic patterns such as `000...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Alpha {
    Rational(Ratio<i64>),
    Surd(Surd),
}

impl Alpha {
    pub fn rational(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidAlpha("zero denominator".into()));
        }
        let value = Ratio::new(num, den);
        if value.is_negative() || value > Ratio::from_integer(1) {
            return Err(Error::InvalidAlpha(format!("{value} is outside [0, 1]")));
        }
        Ok(Alpha::Rational(value))
    }

    pub fn surd(p: i64, q: i64, d: i64, r: i64) -> Result<Self> {
        let s = Surd::new(p, q, d, r)?;
        let alpha = Alpha::Surd(s);
        if !alpha.in_open_unit_interval() {
            return Err(Error::InvalidAlpha(format!("{alpha} is outside (0, 1)")));
        }
        Ok(alpha)
    }

    pub fn is_irrational(&self) -> bool {
        matches!(self, Alpha::Surd(_))
    }

    pub fn as_rational(&self) -> Option<Ratio<i64>> {
        match self {
            Alpha::Rational(r) => Some(*r),
            Alpha::Surd(_) => None,
        }
    }

    pub fn in_open_unit_interval(&self) -> bool {
        self.cmp_scaled(1, Ratio::from_integer(0)) == Ordering::Greater
            && self.cmp_scaled(1, Ratio::from_integer(1)) == Ordering::Less
    }

    /// `(P, Q, d, R)` with value `(P + Q*sqrt(d)) / R`; `Q = 0` for rationals.
    fn parts(&self) -> (i128, i128, i128, i128) {
        match self {
            Alpha::Rational(v) => (*v.numer() as i128, 0, 0, *v.denom() as i128),
            Alpha::Surd(s) => (s.p as i128, s.q as i128, s.d as i128, s.r as i128),
        }
    }

    /// Compares `alpha * k` against `rhs` exactly.
    pub fn cmp_scaled(&self, k: i128, rhs: Ratio<i128>) -> Ordering {
        let (p, q, d, r) = self.parts();
        let (a, b) = (*rhs.numer(), *rhs.denom());
        // alpha*k - a/b = (b*k*p - a*r + b*k*q*sqrt(d)) / (r*b), with r*b > 0
        let x = mul(mul(b, k), p) - mul(a, r);
        let y = mul(mul(b, k), q);
        sign_of_surd(x, y, d)
    }

    /// `floor(alpha * n + rho)`.
    pub fn floor_affine(&self, n: i128, rho: Ratio<i64>) -> i128 {
        let (p, q, d, r) = self.parts();
        let (a, b) = (*rho.numer() as i128, *rho.denom() as i128);
        let x = mul(mul(b, n), p) + mul(a, r);
        let y = mul(mul(b, n), q);
        floor_surd(x, y, d, mul(r, b))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Alpha::Rational(v) => *v.numer() as f64 / *v.denom() as f64,
            Alpha::Surd(s) => s.to_f64(),
        }
    }
}

fn mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b)
        .expect("exact slope arithmetic exceeded 128-bit range")
}

fn isqrt(v: i128) -> i128 {
    debug_assert!(v >= 0);
    (v as u128).sqrt() as i128
}

/// Sign of `x + y*sqrt(d)` for non-square `d` (or `y == 0`).
fn sign_of_surd(x: i128, y: i128, d: i128) -> Ordering {
    if y == 0 {
        return x.cmp(&0);
    }
    if x == 0 || (x > 0) == (y > 0) {
        return if y > 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        };
    }
    let x2 = mul(x, x);
    let y2d = mul(mul(y, y), d);
    if x > 0 {
        x2.cmp(&y2d)
    } else {
        y2d.cmp(&x2)
    }
}

/// `floor((x + y*sqrt(d)) / den)` for `den > 0` and non-square `d` (or `y == 0`).
fn floor_surd(x: i128, y: i128, d: i128, den: i128) -> i128 {
    debug_assert!(den > 0);
    let irrational_floor = match y.cmp(&0) {
        Ordering::Equal => 0,
        Ordering::Greater => isqrt(mul(mul(y, y), d)),
        // y*sqrt(d) is irrational, so its floor sits strictly below -isqrt(y^2 d)
        Ordering::Less => -isqrt(mul(mul(y, y), d)) - 1,
    };
    // the fractional part of y*sqrt(d) lies in (0, 1) and never carries past a multiple of den
    Integer::div_floor(&(x + irrational_floor), &den)
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.q < 0 { '-' } else { '+' };
        write!(
            f,
            "({}{}{}*sqrt({}))/{}",
            self.p,
            sign,
            self.q.abs(),
            self.d,
            self.r
        )
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alpha::Rational(v) => write!(f, "{}/{}", v.numer(), v.denom()),
            Alpha::Surd(s) => s.fmt(f),
        }
    }
}

impl PartialOrd for Alpha {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Alpha {
    fn cmp(&self, other: &Self) -> Ordering {
        let (p1, q1, d1, r1) = self.parts();
        let (p2, q2, d2, r2) = other.parts();
        // (p1 + q1 s1)/r1 - (p2 + q2 s2)/r2, scaled by r1*r2 > 0
        let x = mul(p1, r2) - mul(p2, r1);
        let y1 = mul(q1, r2);
        let y2 = mul(q2, r1);
        if y2 == 0 {
            return sign_of_surd(x, y1, d1);
        }
        if y1 == 0 {
            return sign_of_surd(x, -y2, d2);
        }
        if d1 == d2 {
            return sign_of_surd(x, y1 - y2, d1);
        }
        // x + y1 s1 - y2 s2 with distinct radicands: compare x + y1 s1 against y2 s2
        let left = sign_of_surd(x, y1, d1);
        let right = y2.cmp(&0);
        if left != right {
            return left.cmp(&right);
        }
        // both sides share a sign; compare squares: x^2 + y1^2 d1 + 2 x y1 s1 vs y2^2 d2
        let squares = sign_of_surd(
            mul(x, x) + mul(mul(y1, y1), d1) - mul(mul(y2, y2), d2),
            mul(2, mul(x, y1)),
            d1,
        );
        if left == Ordering::Greater {
            squares
        } else {
            squares.reverse()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden_conjugate() -> Alpha {
        Alpha::surd(3, -1, 5, 2).unwrap()
    }

    #[test]
    fn surd_normalization() {
        let s = Surd::new(6, -2, 20, 4).unwrap();
        // (6 - 2*sqrt(20))/4 = (6 - 4 sqrt 5)/4 = (3 - 2 sqrt 5)/2
        assert_eq!((s.p(), s.q(), s.d(), s.r()), (3, -2, 5, 2));
        let s = Surd::new(-3, 1, 5, -2).unwrap();
        assert_eq!((s.p(), s.q(), s.d(), s.r()), (3, -1, 5, 2));
    }

    #[test]
    fn perfect_square_rejected() {
        assert_eq!(Surd::new(1, 1, 4, 2), Err(Error::PerfectSquare(4)));
        assert_eq!(Surd::new(1, 1, 36, 2), Err(Error::PerfectSquare(36)));
    }

    #[test]
    fn surd_range_checked() {
        assert!(Alpha::surd(1, 1, 5, 2).is_err()); // golden ratio > 1
        assert!(Alpha::surd(0, -1, 2, 2).is_err()); // negative
        assert!(Alpha::surd(-1, 1, 2, 1).is_ok()); // sqrt2 - 1
    }

    #[test]
    fn floors_match_float_for_small_indices() {
        let a = golden_conjugate();
        let x = a.to_f64();
        for n in 0..2000i128 {
            assert_eq!(
                a.floor_affine(n, Ratio::from_integer(0)),
                (x * n as f64).floor() as i128,
                "n = {n}"
            );
        }
    }

    #[test]
    fn floor_with_negative_surd_part_and_intercept() {
        let a = Alpha::surd(-1, 1, 2, 1).unwrap();
        let rho = Ratio::new(1, 3);
        let x = a.to_f64();
        for n in 0..500i128 {
            let expected = (x * n as f64 + 1.0 / 3.0).floor() as i128;
            assert_eq!(a.floor_affine(n, rho), expected);
        }
    }

    #[test]
    fn rational_floor_exact_at_integers() {
        let a = Alpha::rational(1, 3).unwrap();
        assert_eq!(a.floor_affine(3, Ratio::from_integer(0)), 1);
        assert_eq!(a.floor_affine(2, Ratio::new(1, 3)), 1);
        assert_eq!(a.floor_affine(2, Ratio::new(1, 4)), 0);
    }

    #[test]
    fn scaled_comparison() {
        let a = golden_conjugate(); // ~0.381966
        assert_eq!(a.cmp_scaled(1, Ratio::new(38, 100)), Ordering::Greater);
        assert_eq!(a.cmp_scaled(1, Ratio::new(39, 100)), Ordering::Less);
        assert_eq!(a.cmp_scaled(10, Ratio::from_integer(4)), Ordering::Less);
        assert_eq!(
            a.cmp_scaled(-10, Ratio::from_integer(-4)),
            Ordering::Greater
        );
        let h = Alpha::rational(1, 2).unwrap();
        assert_eq!(h.cmp_scaled(4, Ratio::from_integer(2)), Ordering::Equal);
    }

    #[test]
    fn ordering_across_kinds() {
        let g = golden_conjugate();
        let s2 = Alpha::surd(-1, 1, 2, 1).unwrap(); // ~0.4142
        let half = Alpha::rational(1, 2).unwrap();
        let third = Alpha::rational(1, 3).unwrap();
        assert!(third < g && g < s2 && s2 < half);
        assert_eq!(g.cmp(&g), Ordering::Equal);
    }

    #[test]
    fn display() {
        assert_eq!(golden_conjugate().to_string(), "(3-1*sqrt(5))/2");
        assert_eq!(Alpha::rational(2, 4).unwrap().to_string(), "1/2");
    }
}
