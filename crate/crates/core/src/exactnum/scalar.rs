use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::NumError;

/// Tolerance used by the float variant for equality and zero tests.
pub const FLOAT_TOL: f64 = 1e-9;

/// An element of ℚ(ζ₁₂) in the basis 1, ζ, ζ², ζ³ where ζ⁴ = ζ² − 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclo12(pub [BigRational; 4]);

/// A number in one of the supported fields.
///
/// Exact variants nest as ℚ ⊂ ℚ(i) ⊂ ℚ(ζ₁₂); arithmetic between exact
/// variants promotes to the larger field. Mixing an exact value with a
/// float is refused by the checked API and panics in the operator impls.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Gaussian(BigRational, BigRational),
    Cyclo12(Cyclo12),
    Float(Complex64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn q_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Very large numerators/denominators: scale through the bit length.
        let n = x.numer().bits() as i64;
        let d = x.denom().bits() as i64;
        let shift = (n - d).clamp(-1000, 1000);
        let scaled = if shift >= 0 {
            x / BigRational::from_integer(BigInt::one() << (shift as usize))
        } else {
            x * BigRational::from_integer(BigInt::one() << ((-shift) as usize))
        };
        scaled.to_f64().unwrap_or(0.0) * 2f64.powi(shift as i32)
    })
}

impl Cyclo12 {
    pub fn zero() -> Self {
        Cyclo12([q(0), q(0), q(0), q(0)])
    }

    pub fn from_rational(r: BigRational) -> Self {
        Cyclo12([r, q(0), q(0), q(0)])
    }

    /// Embeds re + im·i using i = ζ³.
    pub fn from_gaussian(re: BigRational, im: BigRational) -> Self {
        Cyclo12([re, q(0), q(0), im])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        Cyclo12([
            &self.0[0] + &o.0[0],
            &self.0[1] + &o.0[1],
            &self.0[2] + &o.0[2],
            &self.0[3] + &o.0[3],
        ])
    }

    pub fn neg(&self) -> Self {
        Cyclo12([-&self.0[0], -&self.0[1], -&self.0[2], -&self.0[3]])
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut d: [BigRational; 7] = Default::default();
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                if !b.is_zero() {
                    d[i + j] += a * b;
                }
            }
        }
        let [d0, d1, d2, d3, d4, d5, d6] = d;
        // ζ⁴ = ζ² − 1, ζ⁵ = ζ³ − ζ, ζ⁶ = −1.
        Cyclo12([&d0 - &d4 - &d6, &d1 - &d5, &d2 + &d4, &d3 + &d5])
    }

    /// Complex conjugate: ζ ↦ ζ¹¹ = ζ − ζ³.
    pub fn conj(&self) -> Self {
        let [c0, c1, c2, c3] = &self.0;
        // c0 + c1(ζ − ζ³) + c2(1 − ζ²) − c3 ζ³
        Cyclo12([c0 + c2, c1.clone(), -c2, -c1 - c3])
    }

    /// The Galois conjugates σ_k(ζ) = ζ^k for k ∈ {1, 5, 7, 11}.
    fn galois(&self, k: u32) -> Self {
        let z = Cyclo12::zeta_pow(k);
        let mut acc = Cyclo12::zero();
        let mut p = Cyclo12::from_rational(q(1));
        for c in &self.0 {
            acc = acc.add(&p.scale(c));
            p = p.mul(&z);
        }
        acc
    }

    fn scale(&self, r: &BigRational) -> Self {
        Cyclo12([&self.0[0] * r, &self.0[1] * r, &self.0[2] * r, &self.0[3] * r])
    }

    pub fn zeta_pow(k: u32) -> Self {
        let zeta = Cyclo12([q(0), q(1), q(0), q(0)]);
        let mut acc = Cyclo12::from_rational(q(1));
        for _ in 0..(k % 12) {
            acc = acc.mul(&zeta);
        }
        acc
    }

    /// Inverse through the product of the nontrivial Galois conjugates.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let others = self.galois(5).mul(&self.galois(7)).mul(&self.galois(11));
        let norm = self.mul(&others);
        debug_assert!(norm.0[1].is_zero() && norm.0[2].is_zero() && norm.0[3].is_zero());
        let n = norm.0[0].clone();
        Some(others.scale(&n.recip()))
    }

    pub fn to_complex(&self) -> Complex64 {
        let zeta = Complex64::from_polar(1.0, std::f64::consts::PI / 6.0);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut p = Complex64::new(1.0, 0.0);
        for c in &self.0 {
            acc += p * q_to_f64(c);
            p *= zeta;
        }
        acc
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(q(0))
    }

    pub fn one() -> Self {
        Scalar::Rational(q(1))
    }

    pub fn int(n: i64) -> Self {
        Scalar::Rational(q(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar::Rational(BigRational::from_integer(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn gaussian(re: i64, im: i64) -> Self {
        Scalar::Gaussian(q(re), q(im))
    }

    pub fn float(re: f64, im: f64) -> Self {
        Scalar::Float(Complex64::new(re, im))
    }

    /// The imaginary unit i = ζ³.
    pub fn i() -> Self {
        Scalar::gaussian(0, 1)
    }

    /// ζ = e^{2πi/12}.
    pub fn zeta() -> Self {
        Scalar::Cyclo12(Cyclo12::zeta_pow(1))
    }

    /// ω = ζ⁴ = e^{2πi/3}.
    pub fn omega() -> Self {
        Scalar::Cyclo12(Cyclo12::zeta_pow(4))
    }

    /// √3 = ζ + ζ¹¹.
    pub fn sqrt3() -> Self {
        Scalar::Cyclo12(Cyclo12::zeta_pow(1).add(&Cyclo12::zeta_pow(11)))
    }

    fn level(&self) -> u8 {
        match self {
            Scalar::Rational(_) => 0,
            Scalar::Gaussian(..) => 1,
            Scalar::Cyclo12(_) => 2,
            Scalar::Float(_) => 3,
        }
    }

    /// Zero in the same exactness class as `self`.
    pub fn zero_like(&self) -> Scalar {
        if self.is_exact() {
            Scalar::zero()
        } else {
            Scalar::float(0.0, 0.0)
        }
    }

    /// One in the same exactness class as `self`.
    pub fn one_like(&self) -> Scalar {
        if self.is_exact() {
            Scalar::one()
        } else {
            Scalar::float(1.0, 0.0)
        }
    }

    /// `n` in the same exactness class as `self`.
    pub fn int_like(&self, n: i64) -> Scalar {
        if self.is_exact() {
            Scalar::int(n)
        } else {
            Scalar::float(n as f64, 0.0)
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Scalar::Float(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Gaussian(a, b) => a.is_zero() && b.is_zero(),
            Scalar::Cyclo12(c) => c.is_zero(),
            Scalar::Float(z) => z.norm() <= FLOAT_TOL,
        }
    }

    pub fn is_one(&self) -> bool {
        self == &Scalar::one()
    }

    /// Coordinates in ℚ(ζ₁₂); `None` for floats.
    pub fn to_cyclo(&self) -> Option<Cyclo12> {
        match self {
            Scalar::Rational(r) => Some(Cyclo12::from_rational(r.clone())),
            Scalar::Gaussian(a, b) => Some(Cyclo12::from_gaussian(a.clone(), b.clone())),
            Scalar::Cyclo12(c) => Some(c.clone()),
            Scalar::Float(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// The value as a rational when it lies in ℚ, whatever the variant.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self.simplified() {
            Scalar::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn to_bigint(&self) -> Option<BigInt> {
        self.to_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Rational(r) => Complex64::new(q_to_f64(r), 0.0),
            Scalar::Gaussian(a, b) => Complex64::new(q_to_f64(a), q_to_f64(b)),
            Scalar::Cyclo12(c) => c.to_complex(),
            Scalar::Float(z) => *z,
        }
    }

    fn promote(&self, level: u8) -> Scalar {
        if self.level() >= level {
            return self.clone();
        }
        match level {
            1 => match self {
                Scalar::Rational(r) => Scalar::Gaussian(r.clone(), q(0)),
                _ => unreachable!(),
            },
            2 => Scalar::Cyclo12(self.to_cyclo().expect("exact")),
            _ => Scalar::Float(self.to_complex()),
        }
    }

    /// Explicit coercion into the float variant.
    pub fn to_float(&self) -> Scalar {
        Scalar::Float(self.to_complex())
    }

    /// The smallest exact variant holding the same value.
    pub fn simplified(&self) -> Scalar {
        match self {
            Scalar::Gaussian(a, b) if b.is_zero() => Scalar::Rational(a.clone()),
            Scalar::Cyclo12(c) if c.0[1].is_zero() && c.0[2].is_zero() => {
                if c.0[3].is_zero() {
                    Scalar::Rational(c.0[0].clone())
                } else {
                    Scalar::Gaussian(c.0[0].clone(), c.0[3].clone())
                }
            }
            other => other.clone(),
        }
    }

    fn join(&self, o: &Scalar) -> Result<(Scalar, Scalar), NumError> {
        if self.is_exact() != o.is_exact() {
            return Err(NumError::IncompatibleVariants);
        }
        let l = self.level().max(o.level());
        Ok((self.promote(l), o.promote(l)))
    }

    pub fn checked(&self, o: &Scalar, op: ArithOp) -> Result<Scalar, NumError> {
        let (a, b) = self.join(o)?;
        Ok(match (a, b, op) {
            (Scalar::Rational(x), Scalar::Rational(y), op) => match op {
                ArithOp::Add => Scalar::Rational(x + y),
                ArithOp::Sub => Scalar::Rational(x - y),
                ArithOp::Mul => Scalar::Rational(x * y),
                ArithOp::Div => {
                    if y.is_zero() {
                        return Err(NumError::DivisionByZero);
                    }
                    Scalar::Rational(x / y)
                }
            },
            (Scalar::Gaussian(a, b), Scalar::Gaussian(c, d), op) => match op {
                ArithOp::Add => Scalar::Gaussian(a + c, b + d),
                ArithOp::Sub => Scalar::Gaussian(a - c, b - d),
                ArithOp::Mul => Scalar::Gaussian(&a * &c - &b * &d, &a * &d + &b * &c),
                ArithOp::Div => {
                    let n = &c * &c + &d * &d;
                    if n.is_zero() {
                        return Err(NumError::DivisionByZero);
                    }
                    Scalar::Gaussian((&a * &c + &b * &d) / &n, (&b * &c - &a * &d) / &n)
                }
            },
            (Scalar::Cyclo12(x), Scalar::Cyclo12(y), op) => match op {
                ArithOp::Add => Scalar::Cyclo12(x.add(&y)),
                ArithOp::Sub => Scalar::Cyclo12(x.add(&y.neg())),
                ArithOp::Mul => Scalar::Cyclo12(x.mul(&y)),
                ArithOp::Div => Scalar::Cyclo12(x.mul(&y.inv().ok_or(NumError::DivisionByZero)?)),
            },
            (Scalar::Float(x), Scalar::Float(y), op) => match op {
                ArithOp::Add => Scalar::Float(x + y),
                ArithOp::Sub => Scalar::Float(x - y),
                ArithOp::Mul => Scalar::Float(x * y),
                ArithOp::Div => {
                    if y.norm() == 0.0 {
                        return Err(NumError::DivisionByZero);
                    }
                    Scalar::Float(x / y)
                }
            },
            _ => unreachable!("join returns equal variants"),
        })
    }

    pub fn inv(&self) -> Result<Scalar, NumError> {
        let one = if self.is_exact() { Scalar::one() } else { Scalar::float(1.0, 0.0) };
        one.checked(self, ArithOp::Div)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Scalar, NumError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = if self.is_exact() { Scalar::one().promote(self.level()) } else { Scalar::float(1.0, 0.0) };
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &sq;
            }
            n >>= 1;
            if n > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Rational(_) => self.clone(),
            Scalar::Gaussian(a, b) => Scalar::Gaussian(a.clone(), -b),
            Scalar::Cyclo12(c) => Scalar::Cyclo12(c.conj()),
            Scalar::Float(z) => Scalar::Float(z.conj()),
        }
    }

    /// |z|² as an exact value (rational for ℚ and ℚ(i), real element of ℚ(ζ₁₂)).
    pub fn norm_sqr(&self) -> Scalar {
        (self * &self.conj()).simplified()
    }

    pub fn approx_eq(&self, o: &Scalar, tol: f64) -> bool {
        let (a, b) = (self.to_complex(), o.to_complex());
        (a - b).norm() <= tol * 1f64.max(a.norm()).max(b.norm())
    }

    /// Total order on the exact value for deterministic tie-breaks; not a field order.
    pub fn canonical_key(&self) -> String {
        self.simplified().to_string()
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self.is_exact(), other.is_exact()) {
            (true, true) => {
                let l = self.level().max(other.level());
                match (self.promote(l), other.promote(l)) {
                    (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
                    (Scalar::Gaussian(a, b), Scalar::Gaussian(c, d)) => a == c && b == d,
                    (Scalar::Cyclo12(a), Scalar::Cyclo12(b)) => a == b,
                    _ => false,
                }
            }
            _ => self.approx_eq(other, FLOAT_TOL),
        }
    }
}

macro_rules! forward_op {
    ($tr:ident, $m:ident, $op:expr) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                match self.checked(rhs, $op) {
                    Ok(v) => v,
                    Err(e) => panic!("scalar {:?} failed: {e}", $op),
                }
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_op!(Add, add, ArithOp::Add);
forward_op!(Sub, sub, ArithOp::Sub);
forward_op!(Mul, mul, ArithOp::Mul);
forward_op!(Div, div, ArithOp::Div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Gaussian(a, b) => Scalar::Gaussian(-a, -b),
            Scalar::Cyclo12(c) => Scalar::Cyclo12(c.neg()),
            Scalar::Float(z) => Scalar::Float(-z),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Rational(r)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::from_bigint(n)
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(mut iter: I) -> Scalar {
        match iter.next() {
            Some(first) => iter.fold(first, |a, b| a + b),
            None => Scalar::zero(),
        }
    }
}

impl std::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(mut iter: I) -> Scalar {
        match iter.next() {
            Some(first) => iter.fold(first, |a, b| a * b),
            None => Scalar::one(),
        }
    }
}

fn fmt_q(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_float(x: f64) -> String {
    let s = format!("{x:?}");
    if s.contains('.') || s.contains('e') || s.contains("inf") || s.contains("NaN") {
        s
    } else {
        format!("{s}.0")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}", fmt_q(r)),
            Scalar::Gaussian(a, b) if a.is_zero() => write!(f, "{}*i", fmt_q(b)),
            Scalar::Gaussian(a, b) => {
                let sign = if b.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{}*i", fmt_q(a), sign, fmt_q(&b.abs()))
            }
            Scalar::Cyclo12(c) => write!(
                f,
                "[{},{},{},{}]",
                fmt_q(&c.0[0]),
                fmt_q(&c.0[1]),
                fmt_q(&c.0[2]),
                fmt_q(&c.0[3])
            ),
            Scalar::Float(z) => {
                let sign = if z.im.is_sign_negative() { '-' } else { '+' };
                write!(f, "{}{}{}i", fmt_float(z.re), sign, fmt_float(z.im.abs()))
            }
        }
    }
}

fn parse_q(s: &str) -> Result<BigRational, NumError> {
    let s = s.trim();
    let bad = || NumError::Parse(s.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(NumError::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Splits "a±b" at the last top-level sign that is not an exponent sign
/// and not the leading sign.
fn split_complex(s: &str) -> Option<(&str, &str)> {
    let bytes = s.as_bytes();
    for k in (1..bytes.len()).rev() {
        let c = bytes[k];
        if (c == b'+' || c == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
            return Some((&s[..k], &s[k..]));
        }
    }
    None
}

impl FromStr for Scalar {
    type Err = NumError;

    fn from_str(raw: &str) -> Result<Self, NumError> {
        let s: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || NumError::Parse(raw.to_string());
        if s.is_empty() {
            return Err(bad());
        }
        if let Some(inner) = s.strip_prefix('[') {
            let inner = inner.strip_suffix(']').ok_or_else(bad)?;
            let parts: Vec<&str> = inner.split(',').collect();
            if parts.len() != 4 {
                return Err(bad());
            }
            let mut c: [BigRational; 4] = Default::default();
            for (slot, p) in c.iter_mut().zip(parts) {
                *slot = parse_q(p)?;
            }
            return Ok(Scalar::Cyclo12(Cyclo12(c)));
        }
        let is_float = s.contains('.') || (s.contains(['e', 'E']) && !s.contains("*i"));
        if let Some(body) = s.strip_suffix('i') {
            let body = body.strip_suffix('*').unwrap_or(body);
            let (re, im) = match split_complex(body) {
                Some((re, im)) => (re, im.to_string()),
                None => ("0", body.to_string()),
            };
            let im = match im.as_str() {
                "" | "+" => "1".to_string(),
                "-" => "-1".to_string(),
                other => other.trim_start_matches('+').to_string(),
            };
            if is_float {
                let re: f64 = re.parse().map_err(|_| bad())?;
                let im: f64 = im.parse().map_err(|_| bad())?;
                return Ok(Scalar::float(re, im));
            }
            return Ok(Scalar::Gaussian(parse_q(re)?, parse_q(&im)?));
        }
        if is_float {
            let re: f64 = s.parse().map_err(|_| bad())?;
            return Ok(Scalar::float(re, 0.0));
        }
        match s.as_str() {
            "w" | "omega" => return Ok(Scalar::omega()),
            "zeta" => return Ok(Scalar::zeta()),
            "sqrt3" => return Ok(Scalar::sqrt3()),
            _ => {}
        }
        Ok(Scalar::Rational(parse_q(&s)?))
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Int(i64),
            Float(f64),
        }
        match Repr::deserialize(d)? {
            Repr::Text(t) => t.parse().map_err(serde::de::Error::custom),
            Repr::Int(n) => Ok(Scalar::int(n)),
            Repr::Float(x) => Ok(Scalar::float(x, 0.0)),
        }
    }
}

/// Lexicographic comparison on (re, im) of the float image; used only for
/// deterministic tie-breaking among approximate roots.
pub fn cmp_re_im(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}
