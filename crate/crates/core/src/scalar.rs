//! Exact complex scalars with rational real and imaginary parts.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// An element of the Gaussian rationals `Q(i)`.
///
/// Both components are kept as reduced fractions with positive
/// denominators, so structural equality is numeric equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational(Complex<BigRational>);

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational(Complex::new(re, im))
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
    }

    /// The real rational `p/q`.
    ///
    /// Panics if `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        Self::real(BigRational::new(p.into(), q.into()))
    }

    pub fn real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn re(&self) -> &BigRational {
        &self.0.re
    }

    pub fn im(&self) -> &BigRational {
        &self.0.im
    }

    pub fn conj(&self) -> Self {
        GaussianRational(self.0.conj())
    }

    /// `|z|^2 = re^2 + im^2`, always a nonnegative rational.
    pub fn norm_sqr(&self) -> BigRational {
        self.0.norm_sqr()
    }

    pub fn is_real(&self) -> bool {
        self.0.im.is_zero()
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(&self.0.re / &n, -&self.0.im / &n))
    }

    pub fn inv(&self) -> Self {
        self.checked_inv().expect("inverse of zero")
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational(Complex::zero())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational(Complex::one())
    }
}

impl From<i64> for GaussianRational {
    fn from(v: i64) -> Self {
        Self::from_ints(v, 0)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(v: BigRational) -> Self {
        Self::real(v)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<&GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                GaussianRational(&self.0 $op &rhs.0)
            }
        }
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                GaussianRational(self.0 $op rhs.0)
            }
        }
        impl $tr<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                GaussianRational(self.0 $op &rhs.0)
            }
        }
    };
}

forward_binop!(Add, add, +);
forward_binop!(Sub, sub, -);
forward_binop!(Mul, mul, *);

#[allow(clippy::suspicious_arithmetic_impl)]
impl Div<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self * &rhs.inv()
    }
}

impl Div for GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: GaussianRational) -> GaussianRational {
        &self / &rhs
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.0 -= &rhs.0;
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational(-self.0)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational(-self.0.clone())
    }
}

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Canonical text form: `p`, `p/q`, `a+bi` or `a-bi`, where the real part
/// is always written and the imaginary coefficient is never elided.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rational(&self.0.re, f)?;
        if !self.0.im.is_zero() {
            f.write_str(if self.0.im.is_negative() { "-" } else { "+" })?;
            fmt_rational(&self.0.im.abs(), f)?;
            f.write_str("i")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str, allow_sign: bool) -> Result<BigRational, Error> {
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let body = match s.strip_prefix('-') {
        Some(rest) if allow_sign => rest,
        Some(_) => return Err(bad()),
        None => s,
    };
    let (p, q) = match body.split_once('/') {
        Some((p, q)) => (p, Some(q)),
        None => (body, None),
    };
    if !digits(p) || q.is_some_and(|q| !digits(q)) {
        return Err(bad());
    }
    let mut numer: BigInt = p.parse().map_err(|_| bad())?;
    if body.len() != s.len() {
        numer = -numer;
    }
    let denom: BigInt = match q {
        Some(q) => q.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(BigRational::new(numer, denom))
}

/// Parses `<rat>`, `<rat>+<rat>i` or `<rat>-<rat>i` with `<rat>` = `p` or `p/q`.
impl FromStr for GaussianRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Self::real(parse_rational(s, true)?));
        };
        let split = body
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .last()
            .map(|(idx, _)| idx)
            .ok_or_else(|| Error::Parse(format!("invalid complex entry `{s}`")))?;
        let re = parse_rational(&body[..split], true)?;
        let im = parse_rational(&body[split + 1..], false)?;
        let im = if body.as_bytes()[split] == b'-' { -im } else { im };
        Ok(Self::new(re, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = g("1/2+1/3i");
        let b = g("-2/3-1i");
        assert_eq!(&a + &b, g("-1/6-2/3i"));
        assert_eq!(&a * &b, g("0-13/18i"));
        assert_eq!(&(&a / &b) * &b, a);
        assert_eq!(&a * &a.inv(), GaussianRational::one());
        assert!(GaussianRational::zero().checked_inv().is_none());
    }

    #[test]
    fn conjugation_is_an_involution_and_multiplicative() {
        let a = g("3/7-2i");
        let b = g("5+1/4i");
        assert_eq!(a.conj().conj(), a);
        assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        assert_eq!((&a * &a.conj()).im(), &BigRational::zero());
    }

    #[test]
    fn fractions_stay_reduced() {
        let a = g("2/4");
        assert_eq!(a.to_string(), "1/2");
        assert_eq!(g("-6/3").to_string(), "-2");
    }

    #[test]
    fn display_round_trip() {
        for s in ["0", "-1/2", "0+1i", "3-1/5i", "-7/3+2/9i", "12"] {
            assert_eq!(g(s).to_string(), s);
        }
    }

    #[test]
    fn rejects_malformed_entries() {
        for s in ["", "i", "1/0", "1+i", "1+-2i", "a", "1/2/3", "--1", "1+2", "2i"] {
            assert!(s.parse::<GaussianRational>().is_err(), "{s:?} parsed");
        }
    }
}
