//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! All geometry is written against [`Scalar`]. The exact instantiation,
//! [`crate::Rational`], is what every check in this crate relies on; the
//! floating-point impls exist for quick exploratory runs and treat values
//! within a small tolerance of zero as zero.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, NumAssignRef, Signed, ToPrimitive, Zero};

/// Ordered field element usable by the LP solver and polytope routines.
pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Signed + NumAssignRef + FromPrimitive + Send + Sync + 'static
{
    /// Whether comparisons against zero are exact.
    const EXACT: bool;

    /// The value `num / den`. Panics when `den == 0`.
    fn ratio(num: i64, den: i64) -> Self;

    fn int(v: i64) -> Self {
        Self::ratio(v, 1)
    }

    /// Zero test used for pivoting and feasibility decisions.
    fn is_negligible(&self) -> bool;

    fn is_integral(&self) -> bool;

    fn to_f64_lossy(&self) -> f64;

    /// Text form: `"p/q"`, or `"p"` when the denominator is one.
    fn to_text(&self) -> String {
        self.to_string()
    }

    fn parse_text(s: &str) -> Option<Self>;

    /// Sign of the value, with negligible values reported as `Equal`.
    fn sign_cmp(&self) -> Ordering {
        if self.is_negligible() {
            Ordering::Equal
        } else if self.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    fn is_pos(&self) -> bool {
        self.sign_cmp() == Ordering::Greater
    }

    fn is_neg(&self) -> bool {
        self.sign_cmp() == Ordering::Less
    }

    /// Three-way comparison honouring the zero tolerance.
    fn cmp_to(&self, other: &Self) -> Ordering {
        let mut d = self.clone();
        d -= other;
        d.sign_cmp()
    }

    /// Rescales a nonzero coefficient row to a canonical positive multiple.
    /// The default divides by the magnitude of the first nonzero entry.
    fn normalize_row(row: &mut [Self]) {
        let Some(lead) = row.iter().find(|v| !v.is_negligible()).map(|v| v.abs()) else {
            return;
        };
        for v in row.iter_mut() {
            *v /= &lead;
        }
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn parse_text(s: &str) -> Option<Self> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((p, q)) => (p.trim().parse::<BigInt>().ok()?, q.trim().parse::<BigInt>().ok()?),
            None => (s.parse::<BigInt>().ok()?, BigInt::from(1)),
        };
        if den.is_zero() {
            return None;
        }
        Some(BigRational::new(num, den))
    }

    /// Scales to coprime integers.
    fn normalize_row(row: &mut [Self]) {
        let mut lcm = BigInt::from(1);
        for v in row.iter() {
            lcm = lcm.lcm(v.denom());
        }
        let mut gcd = BigInt::from(0);
        for v in row.iter() {
            gcd = gcd.gcd(&(v.numer() * (&lcm / v.denom())));
        }
        if gcd.is_zero() {
            return;
        }
        let factor = BigRational::new(lcm, gcd);
        for v in row.iter_mut() {
            *v *= &factor;
        }
    }
}

const F64_TOL: f64 = 1e-9;

impl Scalar for f64 {
    const EXACT: bool = false;

    fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        num as f64 / den as f64
    }

    fn is_negligible(&self) -> bool {
        self.abs() <= F64_TOL
    }

    fn is_integral(&self) -> bool {
        (self - self.round()).abs() <= F64_TOL
    }

    fn to_f64_lossy(&self) -> f64 {
        *self
    }

    fn parse_text(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((p, q)) => {
                let q: f64 = q.trim().parse().ok()?;
                (q != 0.0).then_some(p.trim().parse::<f64>().ok()? / q)
            }
            None => s.parse().ok(),
        }
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        num as f32 / den as f32
    }

    fn is_negligible(&self) -> bool {
        self.abs() <= 1e-5
    }

    fn is_integral(&self) -> bool {
        (self - self.round()).abs() <= 1e-5
    }

    fn to_f64_lossy(&self) -> f64 {
        *self as f64
    }

    fn parse_text(s: &str) -> Option<Self> {
        f64::parse_text(s).map(|v| v as f32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = BigRational;

    #[test]
    fn text_form_round_trips() {
        assert_eq!(Q::ratio(3, 6).to_text(), "1/2");
        assert_eq!(Q::ratio(-4, 2).to_text(), "-2");
        assert_eq!(Q::parse_text("6/-4").unwrap(), Q::ratio(-3, 2));
        assert_eq!(Q::parse_text(" 7 ").unwrap(), Q::int(7));
        assert!(Q::parse_text("1/0").is_none());
        assert!(Q::parse_text("x").is_none());
    }

    #[test]
    fn stored_in_lowest_terms() {
        let a = Q::ratio(10, -15);
        assert_eq!(*a.numer(), BigInt::from(-2));
        assert_eq!(*a.denom(), BigInt::from(3));
    }

    #[test]
    #[should_panic]
    fn division_by_zero_is_an_error() {
        let _ = Q::int(1) / Q::int(0);
    }

    #[test]
    fn rows_normalize_to_coprime_integers() {
        let mut row = vec![Q::ratio(1, 2), Q::ratio(-3, 4), Q::int(0)];
        Q::normalize_row(&mut row);
        assert_eq!(row, vec![Q::int(2), Q::int(-3), Q::int(0)]);
        let mut zero = vec![Q::int(0); 2];
        Q::normalize_row(&mut zero);
        assert_eq!(zero, vec![Q::int(0); 2]);
    }

    #[test]
    fn float_tolerance() {
        assert!((1e-12f64).is_negligible());
        assert_eq!(0.1f64.cmp_to(&0.1000000000001), Ordering::Equal);
        assert!(f64::parse_text("1/4").unwrap() == 0.25);
    }
}
