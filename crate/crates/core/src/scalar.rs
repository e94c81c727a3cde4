//! Exact involutive scalar fields.
//!
//! Two domains are supported: the Gaussian rationals `Q(i)` with complex
//! conjugation, and prime fields `F_p` with the identity involution. The
//! former is formally real (`z * conj(z) = 0` only for `z = 0`), which makes
//! every matrix Moore-Penrose invertible; the latter is not, so `F_p` is where
//! existence checks actually bite.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Largest modulus accepted for a prime field.
pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScalarDomain {
    GaussianRational,
    PrimeField(u64),
}

impl ScalarDomain {
    /// Validated prime field domain: `p` must be an odd prime `<= 2^31`.
    pub fn prime_field(p: u64) -> Result<Self> {
        if p > MAX_PRIME || p % 2 == 0 || !is_prime(p) {
            return Err(Error::Parse(format!("{p} is not an odd prime <= 2^31")));
        }
        Ok(ScalarDomain::PrimeField(p))
    }

    pub fn zero(self) -> Scalar {
        match self {
            ScalarDomain::GaussianRational => Scalar::Gauss(GaussianRational::zero()),
            ScalarDomain::PrimeField(p) => Scalar::Prime(PrimeFieldElement::new(0, p)),
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            ScalarDomain::GaussianRational => Scalar::Gauss(GaussianRational::one()),
            ScalarDomain::PrimeField(p) => Scalar::Prime(PrimeFieldElement::new(1, p)),
        }
    }

    /// The image of the integer `n` in this field.
    pub fn int(self, n: i64) -> Scalar {
        match self {
            ScalarDomain::GaussianRational => {
                Scalar::Gauss(GaussianRational::real(Rational::from_integer(n.into())))
            }
            ScalarDomain::PrimeField(p) => Scalar::Prime(PrimeFieldElement::from_i64(n, p)),
        }
    }

    /// The image of `num / den`. Panics if `den` vanishes in this field.
    pub fn ratio(self, num: i64, den: i64) -> Scalar {
        self.int(num)
            .checked_div(&self.int(den))
            .expect("denominator vanishes in this field")
    }

    pub fn is_formally_real(self) -> bool {
        matches!(self, ScalarDomain::GaussianRational)
    }

    pub fn parse_scalar(self, s: &str) -> Result<Scalar> {
        match self {
            ScalarDomain::GaussianRational => s.parse::<GaussianRational>().map(Scalar::Gauss),
            ScalarDomain::PrimeField(p) => PrimeFieldElement::parse(s, p).map(Scalar::Prime),
        }
    }
}

impl fmt::Display for ScalarDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarDomain::GaussianRational => f.write_str("gaussian_rational"),
            ScalarDomain::PrimeField(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for ScalarDomain {
    type Err = Error;

    /// Accepts `gaussian_rational` or `fp:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "gaussian_rational" {
            return Ok(ScalarDomain::GaussianRational);
        }
        let p = s
            .strip_prefix("fp:")
            .ok_or_else(|| Error::Parse(format!("unknown domain `{s}`")))?;
        let p: u64 = p
            .parse()
            .map_err(|_| Error::Parse(format!("bad prime `{p}`")))?;
        ScalarDomain::prime_field(p)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// ---------------------------------------------------------------------------
// Q(i)

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational {
            re,
            im: Rational::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::real(Rational::zero())
    }

    pub fn one() -> Self {
        Self::real(Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `z * conj(z)`, always a nonnegative rational.
    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sq();
        Ok(GaussianRational {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }

    fn add(&self, o: &Self) -> Self {
        GaussianRational {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    fn sub(&self, o: &Self) -> Self {
        GaussianRational {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    fn mul(&self, o: &Self) -> Self {
        // Most entries in practice are real; skip the cross terms when we can.
        if self.im.is_zero() && o.im.is_zero() {
            return Self::real(&self.re * &o.re);
        }
        GaussianRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("malformed rational `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = num.strip_prefix('-').unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = match den {
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let d = BigInt::from_str(d).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            d
        }
        None => BigInt::one(),
    };
    Ok(Rational::new(num, den))
}

impl FromStr for GaussianRational {
    type Err = Error;

    /// Grammar: `[-]a[/b]`, `[-]a[/b]i`, or `[-]a[/b](+|-)c[/d]i`. A unit
    /// imaginary coefficient may be written as a bare `i`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let Some(body) = s.strip_suffix('i') else {
            return parse_rational(s).map(Self::real);
        };
        // Split at the last sign that is not the leading one.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
            .last();
        let (re, im) = match split {
            Some(i) => (parse_rational(&body[..i])?, &body[i..]),
            None => (Rational::zero(), body),
        };
        let im = im.strip_prefix('+').unwrap_or(im);
        let im = match im {
            "" => Rational::one(),
            "-" => -Rational::one(),
            other => parse_rational(other)?,
        };
        Ok(GaussianRational { re, im })
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if !self.re.is_zero() {
            write!(f, "{}", self.re)?;
            if self.im.is_positive() {
                f.write_str("+")?;
            }
        }
        if self.im.is_one() {
            f.write_str("i")
        } else if (-&self.im).is_one() {
            f.write_str("-i")
        } else {
            write!(f, "{}i", self.im)
        }
    }
}

// ---------------------------------------------------------------------------
// F_p

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeFieldElement {
    value: u64,
    modulus: u64,
}

impl PrimeFieldElement {
    pub fn new(value: u64, modulus: u64) -> Self {
        PrimeFieldElement {
            value: value % modulus,
            modulus,
        }
    }

    pub fn from_i64(v: i64, modulus: u64) -> Self {
        let m = modulus as i64;
        Self::new(v.rem_euclid(m) as u64, modulus)
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn parse(s: &str, p: u64) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("malformed F_{p} element `{s}`")));
        }
        let v: u64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("F_{p} element `{s}` out of range")))?;
        if v >= p {
            return Err(Error::Parse(format!("F_{p} element `{s}` is not reduced")));
        }
        Ok(Self::new(v, p))
    }

    fn check(&self, o: &Self) {
        assert_eq!(
            self.modulus, o.modulus,
            "mixed prime-field arithmetic: F_{} vs F_{}",
            self.modulus, o.modulus
        );
    }

    pub fn inv(&self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::DivisionByZero);
        }
        // Fermat: x^(p-2) = x^-1.
        let (mut base, mut exp, mut acc) = (self.value, self.modulus - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.modulus;
            }
            base = base * base % self.modulus;
            exp >>= 1;
        }
        Ok(Self::new(acc, self.modulus))
    }
}

impl fmt::Display for PrimeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

// ---------------------------------------------------------------------------
// Scalar

/// An element of one of the supported fields. Arithmetic between different
/// domains panics: it is a programming error, never a coercion.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Gauss(GaussianRational),
    Prime(PrimeFieldElement),
}

impl Scalar {
    pub fn domain(&self) -> ScalarDomain {
        match self {
            Scalar::Gauss(_) => ScalarDomain::GaussianRational,
            Scalar::Prime(x) => ScalarDomain::PrimeField(x.modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Gauss(z) => z.is_zero(),
            Scalar::Prime(x) => x.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.domain().one()
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Gauss(z) => Scalar::Gauss(z.conj()),
            Scalar::Prime(x) => Scalar::Prime(*x),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Gauss(z) => z.inv().map(Scalar::Gauss),
            Scalar::Prime(x) => x.inv().map(Scalar::Prime),
        }
    }

    pub fn checked_div(&self, o: &Scalar) -> Result<Scalar> {
        Ok(self * &o.inv()?)
    }

    pub fn as_gaussian(&self) -> Option<&GaussianRational> {
        match self {
            Scalar::Gauss(z) => Some(z),
            Scalar::Prime(_) => None,
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!(
        "mixed-domain scalar arithmetic: {} vs {}",
        a.domain(),
        b.domain()
    )
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Gauss(x), Scalar::Gauss(y)) => Scalar::Gauss(x.add(y)),
            (Scalar::Prime(x), Scalar::Prime(y)) => {
                x.check(y);
                Scalar::Prime(PrimeFieldElement::new(x.value + y.value, x.modulus))
            }
            _ => mismatch(self, o),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Gauss(x), Scalar::Gauss(y)) => Scalar::Gauss(x.sub(y)),
            (Scalar::Prime(x), Scalar::Prime(y)) => {
                x.check(y);
                Scalar::Prime(PrimeFieldElement::new(
                    x.value + x.modulus - y.value,
                    x.modulus,
                ))
            }
            _ => mismatch(self, o),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Gauss(x), Scalar::Gauss(y)) => Scalar::Gauss(x.mul(y)),
            (Scalar::Prime(x), Scalar::Prime(y)) => {
                x.check(y);
                Scalar::Prime(PrimeFieldElement::new(x.value * y.value, x.modulus))
            }
            _ => mismatch(self, o),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        &self.domain().zero() - self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Gauss(z) => z.fmt(f),
            Scalar::Prime(x) => x.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Scalar {
        ScalarDomain::GaussianRational.parse_scalar(s).unwrap()
    }

    #[test]
    fn conjugation() {
        assert_eq!(q("3/4+1/2i").conj(), q("3/4-1/2i"));
        let z = q("-7/3+2i");
        assert_eq!(z.conj().conj(), z);
        let f5 = ScalarDomain::prime_field(5).unwrap();
        assert_eq!(f5.int(3).conj(), f5.int(3));
    }

    #[test]
    fn inverses() {
        assert_eq!(q("2/3").inv().unwrap(), q("3/2"));
        let f5 = ScalarDomain::prime_field(5).unwrap();
        assert_eq!(f5.int(2).inv().unwrap(), f5.int(3));
        // (1+i)(1/2 - 1/2 i) = 1/2 - i/2 + i/2 + 1/2 = 1
        let z = q("1+i");
        let w = q("1/2-1/2i");
        assert_eq!(&z * &w, q("1"));
        assert_eq!(z.inv().unwrap(), w);
        assert_eq!(q("0").inv(), Err(Error::DivisionByZero));
        assert_eq!(f5.zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn parse_and_format() {
        for s in ["1/2+3/4i", "-2", "5i", "i", "-i", "0", "-1/3-i", "7/2-5/6i"] {
            assert_eq!(q(s).to_string(), s);
        }
        assert_eq!(q("4/6").to_string(), "2/3");
        assert_eq!(q("1i").to_string(), "i");
        assert_eq!(q("2/1+0i").to_string(), "2");
        for bad in ["", "1/", "/2", "a", "1/0", "1+2", "--1", "1/-2"] {
            assert!(ScalarDomain::GaussianRational.parse_scalar(bad).is_err(), "{bad}");
        }
        let f7 = ScalarDomain::prime_field(7).unwrap();
        assert_eq!(f7.parse_scalar("6").unwrap().to_string(), "6");
        assert!(f7.parse_scalar("7").is_err());
        assert!(f7.parse_scalar("-1").is_err());
    }

    #[test]
    fn domains() {
        assert!(ScalarDomain::prime_field(2).is_err());
        assert!(ScalarDomain::prime_field(9).is_err());
        assert!(ScalarDomain::prime_field(2_147_483_647).is_ok());
        assert_eq!("fp:5".parse::<ScalarDomain>().unwrap(), ScalarDomain::PrimeField(5));
        assert_eq!(
            "gaussian_rational".parse::<ScalarDomain>().unwrap(),
            ScalarDomain::GaussianRational
        );
        assert!("fp:4".parse::<ScalarDomain>().is_err());
    }

    #[test]
    fn prime_field_is_not_formally_real() {
        // 1^2 + 2^2 = 5 = 0 in F_5
        let f5 = ScalarDomain::prime_field(5).unwrap();
        let v = [f5.int(1), f5.int(2)];
        let s = v.iter().fold(f5.zero(), |acc, x| &acc + &(x * &x.conj()));
        assert!(s.is_zero());
    }

    #[test]
    #[should_panic(expected = "mixed")]
    fn mixed_domains_panic() {
        let f5 = ScalarDomain::prime_field(5).unwrap();
        let _ = &f5.int(1) + &q("1");
    }

    #[test]
    #[should_panic(expected = "mixed prime-field")]
    fn mixed_moduli_panic() {
        let f5 = ScalarDomain::prime_field(5).unwrap();
        let f7 = ScalarDomain::prime_field(7).unwrap();
        let _ = &f5.int(1) * &f7.int(1);
    }
}
