//! Exact scalar fields: the rationals and the Gaussian rationals `Q(i)`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Which exact field a scalar type lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScalarField {
    Rationals,
    GaussianRationals,
}

/// Exact field arithmetic used by every matrix routine in the crate.
///
/// The `*_ref` methods exist so hot loops can avoid cloning big-integer
/// operands.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    const FIELD: ScalarField;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv_ref(&self) -> Self;
    fn from_rational(q: &Rational) -> Self;
    /// Returns the value if it is real (always for rationals).
    fn to_rational(&self) -> Option<Rational>;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from(v))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div_ref(&self, other: &Self) -> Self {
        self.mul_ref(&other.inv_ref())
    }

    /// `self += a * b`
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self = self.add_ref(&a.mul_ref(b));
    }
}

/// Arbitrary-precision rational number, always kept in lowest terms.
///
/// Serializes as the string `"p/q"` (or `"p"` for integers).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Self {
        Rational(BigRational::new(numer, denom))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Converts to `i64` when the value is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Rational::one_value();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Exact square root when `self` is the square of a rational.
    pub fn sqrt_exact(&self) -> Option<Rational> {
        if self.0.is_negative() {
            return None;
        }
        let n = self.0.numer().sqrt();
        let d = self.0.denom().sqrt();
        if &(&n * &n) == self.0.numer() && &(&d * &d) == self.0.denom() {
            Some(Rational(BigRational::new(n, d)))
        } else {
            None
        }
    }

    fn one_value() -> Self {
        Rational(BigRational::one())
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }
}

impl From<i32> for Rational {
    fn from(v: i32) -> Self {
        Rational::from(v as i64)
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational(BigRational::from_integer(v))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRationalError(pub String);

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let t = s.trim();
        match t.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| err())?;
                let q: BigInt = q.trim().parse().map_err(|_| err())?;
                if q.is_zero() {
                    return Err(err());
                }
                Ok(Rational(BigRational::new(p, q)))
            }
            None => {
                let p: BigInt = t.parse().map_err(|_| err())?;
                Ok(Rational::from(p))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        // Accept "p/q" strings as well as bare JSON integers.
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Lit {
            Str(String),
            Int(i64),
        }
        match Lit::deserialize(d)? {
            Lit::Str(s) => s.parse().map_err(serde::de::Error::custom),
            Lit::Int(v) => Ok(Rational::from(v)),
        }
    }
}

macro_rules! forward_binop {
    ($ty:ident, $trait:ident, $method:ident) => {
        impl $trait for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                $ty(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn $method(self, rhs: &'a $ty) -> $ty {
                $ty((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a $ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &'a $ty) -> $ty {
                $ty(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Rational, Add, add);
forward_binop!(Rational, Sub, sub);
forward_binop!(Rational, Mul, mul);
forward_binop!(Rational, Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Scalar for Rational {
    const FIELD: ScalarField = ScalarField::Rationals;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational::one_value()
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn inv_ref(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Rational(self.0.recip())
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.0.is_zero() || b.0.is_zero() {
            return;
        }
        self.0 += &a.0 * &b.0;
    }
}

/// An element `re + im·i` of `Q(i)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational::new(Rational::zero(), Rational::one())
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational::new(re, Rational::zero())
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -&self.im)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        GaussianRational::new(&self.re * q, &self.im * q)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{}i", self.re, self.im.abs())
                } else {
                    write!(f, "{}+{}i", self.re, self.im)
                }
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (&self.re, &self.im).serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (re, im) = <(Rational, Rational)>::deserialize(d)?;
        Ok(GaussianRational { re, im })
    }
}

impl Scalar for GaussianRational {
    const FIELD: ScalarField = ScalarField::GaussianRationals;

    fn zero() -> Self {
        GaussianRational::new(Rational::zero(), Rational::zero())
    }
    fn one() -> Self {
        GaussianRational::new(Rational::one(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add_ref(&self, o: &Self) -> Self {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussianRational::real(&self.re * &o.re);
        }
        GaussianRational::new(
            &(&self.re * &o.re) - &(&self.im * &o.im),
            &(&self.re * &o.im) + &(&self.im * &o.re),
        )
    }
    fn neg_ref(&self) -> Self {
        GaussianRational::new(-&self.re, -&self.im)
    }
    fn inv_ref(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        let norm = &(&self.re * &self.re) + &(&self.im * &self.im);
        GaussianRational::new(&self.re / &norm, -(&self.im / &norm))
    }
    fn from_rational(q: &Rational) -> Self {
        GaussianRational::real(q.clone())
    }
    fn to_rational(&self) -> Option<Rational> {
        self.im.is_zero().then(|| self.re.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        let q: Rational = "-6/4".parse().unwrap();
        assert_eq!(q, Rational::new(-3, 2));
        assert_eq!(q.to_string(), "-3/2");
        assert_eq!("7".parse::<Rational>().unwrap().to_string(), "7");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn serde_accepts_strings_and_ints() {
        let v: Vec<Rational> = serde_json::from_str(r#"["1/2", 3, "-4"]"#).unwrap();
        assert_eq!(
            v,
            vec![Rational::new(1, 2), Rational::from(3), Rational::from(-4)]
        );
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"["1/2","3","-4"]"#);
    }

    #[test]
    fn gaussian_unit_squares_to_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(i.mul_ref(&i), GaussianRational::from_i64(-1));
        let z = GaussianRational::new(Rational::new(1, 2), Rational::from(3));
        assert_eq!(z.mul_ref(&z.inv_ref()), GaussianRational::one());
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(Rational::new(9, 4).sqrt_exact(), Some(Rational::new(3, 2)));
        assert_eq!(Rational::from(2).sqrt_exact(), None);
        assert_eq!(Rational::from(-4).sqrt_exact(), None);
    }
}
