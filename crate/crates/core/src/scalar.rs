//! Scalar abstractions shared by every numeric routine.
//!
//! Weights and central charges are exact rationals; everything that lives in
//! a matrix (S entries, fusing/braiding elements, character values) is a
//! complex number over a real float type `T`.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_rational::Ratio;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

use crate::error::{Error, Result};

/// Real floating point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}

pub type Rational = Ratio<i64>;
pub type C<T> = Complex<T>;

pub fn c<T: Real>(re: T, im: T) -> C<T> {
    Complex::new(re, im)
}

pub fn c_real<T: Real>(re: T) -> C<T> {
    Complex::new(re, T::zero())
}

pub fn rational_to_real<T: Real>(r: &Rational) -> T {
    T::lit(*r.numer() as f64) / T::lit(*r.denom() as f64)
}

/// `exp(i * pi * r)` for rational `r`. Reduces `r` modulo 2 first so large
/// arguments keep full precision.
pub fn exp_i_pi<T: Real>(r: &Rational) -> C<T> {
    let two = Rational::from_integer(2);
    let reduced = *r - (r / two).floor() * two;
    let angle = rational_to_real::<T>(&reduced) * T::PI();
    Complex::from_polar(T::one(), angle)
}

/// `exp(2 pi i r)`.
pub fn exp_2pi_i<T: Real>(r: &Rational) -> C<T> {
    exp_i_pi(&(*r * Rational::from_integer(2)))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational '{s}'"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (
            n.trim().parse::<i64>().map_err(|_| bad())?,
            d.trim().parse::<i64>().map_err(|_| bad())?,
        ),
        None => (s.parse::<i64>().map_err(|_| bad())?, 1),
    };
    if den == 0 {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Canonical `"p/q"` rendering (always with a denominator).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("2/5").unwrap(), Rational::new(2, 5));
        assert_eq!(parse_rational("-3").unwrap(), Rational::from_integer(-3));
        assert_eq!(parse_rational(" 4/6 ").unwrap(), Rational::new(2, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&Rational::from_integer(0)), "0/1");
    }

    #[test]
    fn phases_reduce_mod_two() {
        let z: C<f64> = exp_i_pi(&Rational::new(1001, 1));
        assert!((z.re + 1.0).abs() < 1e-15 && z.im.abs() < 1e-15);
        let w: C<f64> = exp_2pi_i(&Rational::new(1, 4));
        assert!((w - c(0.0, 1.0)).norm() < 1e-15);
    }
}
