//! Numerical root isolation for polynomials with exact or complex coefficients.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::IntPoly;
use super::scalar::cmp_re_im;

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// All complex roots (with multiplicity) of Σ cₖ xᵏ, coefficients lowest first,
/// by Aberth–Ehrlich iteration; sorted lexicographically by (re, im).
pub fn complex_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|z| z.norm() == 0.0) {
        c.pop();
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return vec![];
    }
    let lc = c[n];
    let c: Vec<Complex64> = c.iter().map(|a| a / lc).collect();
    // Cauchy bound for the initial circle.
    let radius = 1.0 + c[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius * 0.5 + 0.1, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    for _ in 0..500 {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let (p, dp) = horner(&c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    z.sort_by(cmp_re_im);
    z
}

pub fn int_poly_roots(f: &IntPoly) -> Vec<Complex64> {
    let c: Vec<Complex64> = f
        .coeffs()
        .iter()
        .map(|a| Complex64::new(a.to_f64().unwrap_or(f64::NAN), 0.0))
        .collect();
    complex_roots(&c)
}

/// Complex number with rational coordinates rounded to a fixed binary grid.
#[derive(Clone, Debug, PartialEq)]
pub struct HpComplex {
    pub re: BigRational,
    pub im: BigRational,
    bits: usize,
}

fn round_to(x: &BigRational, bits: usize) -> BigRational {
    let scale = BigInt::one() << bits;
    let n = (x * BigRational::from_integer(scale.clone())).round().to_integer();
    BigRational::new(n, scale)
}

fn from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap_or_else(BigRational::zero)
}

impl HpComplex {
    pub fn new(re: BigRational, im: BigRational, bits: usize) -> Self {
        HpComplex { re: round_to(&re, bits), im: round_to(&im, bits), bits }
    }

    pub fn from_complex(z: Complex64, bits: usize) -> Self {
        Self::new(from_f64(z.re), from_f64(z.im), bits)
    }

    pub fn one(bits: usize) -> Self {
        Self::new(BigRational::one(), BigRational::zero(), bits)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.re + &o.re, &self.im + &o.im, self.bits)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.re - &o.re, &self.im - &o.im, self.bits)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
            self.bits,
        )
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        let n = &o.re * &o.re + &o.im * &o.im;
        if n.is_zero() {
            return None;
        }
        Some(Self::new(
            (&self.re * &o.re + &self.im * &o.im) / &n,
            (&self.im * &o.re - &self.re * &o.im) / &n,
            self.bits,
        ))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.bits);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// max(|re|, |im|), an upper bound within √2 of the modulus.
    pub fn sup_norm(&self) -> BigRational {
        let (a, b) = (self.re.abs(), self.im.abs());
        if a > b {
            a
        } else {
            b
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }
}

/// Newton refinement of an approximate simple root of an integer polynomial
/// on a 2^{-bits} grid.
pub fn refine_root(f: &IntPoly, z0: Complex64, bits: usize) -> HpComplex {
    let df = f.derivative();
    let eval = |g: &IntPoly, z: &HpComplex| {
        g.coeffs().iter().rev().fold(HpComplex::new(BigRational::zero(), BigRational::zero(), bits), |acc, c| {
            acc.mul(z).add(&HpComplex::new(BigRational::from_integer(c.clone()), BigRational::zero(), bits))
        })
    };
    let mut z = HpComplex::from_complex(z0, bits);
    let tol = BigRational::new(BigInt::one(), BigInt::one() << bits.saturating_sub(4));
    for _ in 0..(bits + 64) {
        let (p, dp) = (eval(f, &z), eval(&df, &z));
        let Some(step) = p.div(&dp) else { break };
        z = z.sub(&step);
        if step.sup_norm() < tol {
            break;
        }
    }
    z
}
