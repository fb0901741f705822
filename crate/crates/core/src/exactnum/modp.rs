//! Polynomial factorization over small prime fields.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::IntPoly;
use super::NumError;

/// Largest prime accepted by [`factor_mod_p`].
pub const MAX_PRIME: u64 = 10_000;
/// Largest degree accepted by [`factor_mod_p`].
pub const MAX_DEGREE: usize = 8;

type Fp = Vec<u64>;

fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn deg(a: &Fp) -> Option<usize> {
    a.len().checked_sub(1)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn add(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|k| (a.get(k).copied().unwrap_or(0) + b.get(k).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

fn sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|k| (a.get(k).copied().unwrap_or(0) + p - b.get(k).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

fn mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut v = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            v[i + j] = (v[i + j] + x * y) % p;
        }
    }
    trim(v)
}

fn divrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let db = deg(b).expect("division by zero polynomial");
    let inv = inv_mod(*b.last().unwrap(), p);
    let mut r = a.clone();
    let mut q = vec![0u64; a.len().saturating_sub(db)];
    while deg(&r).is_some_and(|d| d >= db) {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap() * inv % p;
        q[k] = c;
        for (j, y) in b.iter().enumerate() {
            r[k + j] = (r[k + j] + p - c * y % p) % p;
        }
        r = trim(r);
    }
    (trim(q), r)
}

fn rem(a: &Fp, b: &Fp, p: u64) -> Fp {
    divrem(a, b, p).1
}

fn monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        None => vec![],
        Some(&l) => {
            let inv = inv_mod(l, p);
            a.iter().map(|c| c * inv % p).collect()
        }
    }
}

fn gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

fn derivative(a: &Fp, p: u64) -> Fp {
    trim(a.iter().enumerate().skip(1).map(|(k, c)| c * (k as u64 % p) % p).collect())
}

fn powmod_poly(base: &Fp, mut e: u128, m: &Fp, p: u64) -> Fp {
    let mut acc: Fp = vec![1];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        e >>= 1;
    }
    acc
}

/// x^{p^k} mod m.
fn frobenius_pow(k: usize, m: &Fp, p: u64) -> Fp {
    let mut t: Fp = vec![0, 1];
    for _ in 0..k {
        t = powmod_poly(&t, p as u128, m, p);
    }
    t
}

/// Rabin's irreducibility test for a monic polynomial.
fn is_irreducible(f: &Fp, p: u64) -> bool {
    let n = match deg(f) {
        Some(0) | None => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let x: Fp = vec![0, 1];
    if !rem(&sub(&frobenius_pow(n, f, p), &x, p), f, p).is_empty() {
        return false;
    }
    for q in prime_divisors(n) {
        let h = sub(&frobenius_pow(n / q, f, p), &x, p);
        if deg(&gcd(f, &h, p)) != Some(0) {
            return false;
        }
    }
    true
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = vec![];
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Square-free decomposition of a monic polynomial: pairs (g, m) with f = Π g^m.
fn square_free_decomposition(f: &Fp, p: u64) -> Vec<(Fp, usize)> {
    let mut out = vec![];
    if deg(f).unwrap_or(0) == 0 {
        return out;
    }
    let df = derivative(f, p);
    if df.is_empty() {
        // f = g(x^p) = g(x)^p since a^p = a in 𝔽_p.
        let g: Fp = f.iter().step_by(p as usize).copied().collect();
        for (h, m) in square_free_decomposition(&g, p) {
            out.push((h, m * p as usize));
        }
        return out;
    }
    let mut c = gcd(f, &df, p);
    let mut w = divrem(f, &c, p).0;
    let mut i = 1;
    while deg(&w).unwrap_or(0) > 0 {
        let y = gcd(&w, &c, p);
        let z = divrem(&w, &y, p).0;
        if deg(&z).unwrap_or(0) > 0 {
            out.push((monic(&z, p), i));
        }
        i += 1;
        w = y;
        c = divrem(&c, &w, p).0;
    }
    if deg(&c).unwrap_or(0) > 0 {
        let g: Fp = c.iter().step_by(p as usize).copied().collect();
        for (h, m) in square_free_decomposition(&g, p) {
            out.push((h, m * p as usize));
        }
    }
    out
}

/// Distinct-degree factorization of a square-free monic polynomial.
fn distinct_degree(f: &Fp, p: u64) -> Vec<(Fp, usize)> {
    let mut out = vec![];
    let mut f = f.clone();
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let mut d = 0;
    while deg(&f).is_some_and(|n| n >= 2 * (d + 1)) {
        d += 1;
        h = powmod_poly(&h, p as u128, &f, p);
        let g = gcd(&f, &sub(&h, &x, p), p);
        if deg(&g).unwrap_or(0) > 0 {
            f = divrem(&f, &g, p).0;
            h = rem(&h, &f, p);
            out.push((g, d));
        }
    }
    if let Some(n) = deg(&f) {
        if n > 0 {
            out.push((monic(&f, p), n));
        }
    }
    out
}

/// Splits a product of irreducibles of common degree d (Cantor–Zassenhaus).
fn equal_degree(f: &Fp, d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<Fp> {
    let n = deg(f).unwrap();
    if n == d {
        return vec![f.clone()];
    }
    loop {
        let a: Fp = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if deg(&a).unwrap_or(0) == 0 {
            continue;
        }
        let g = gcd(f, &a, p);
        let candidate = if deg(&g).unwrap_or(0) > 0 {
            g
        } else if p == 2 {
            // Trace map a + a² + a⁴ + … + a^{2^{d−1}}.
            let mut t = rem(&a, f, p);
            let mut acc = t.clone();
            for _ in 1..d {
                t = rem(&mul(&t, &t, p), f, p);
                acc = add(&acc, &t, p);
            }
            gcd(f, &acc, p)
        } else {
            let e = ((p as u128).pow(d as u32) - 1) / 2;
            let b = powmod_poly(&a, e, f, p);
            gcd(f, &sub(&b, &vec![1], p), p)
        };
        let cd = deg(&candidate).unwrap_or(0);
        if cd > 0 && cd < n {
            let other = divrem(f, &candidate, p).0;
            let mut out = equal_degree(&candidate, d, p, rng);
            out.extend(equal_degree(&monic(&other, p), d, p, rng));
            return out;
        }
    }
}

/// Factorization of an integer polynomial over 𝔽_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationModP {
    pub p: u64,
    /// Leading coefficient of f reduced mod p.
    pub unit: u64,
    /// Monic irreducible factors (coefficients lowest first) with multiplicity,
    /// sorted by degree then coefficients.
    pub factors: Vec<(Vec<u64>, usize)>,
    /// Whether gcd(f, f′) is constant mod p.
    pub square_free: bool,
}

impl FactorizationModP {
    /// Factor degrees repeated by multiplicity, descending.
    pub fn degree_pattern(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(f, m)| std::iter::repeat(f.len() - 1).take(*m))
            .collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    /// Product of the factors times the unit, as coefficients mod p.
    pub fn expand(&self) -> Vec<u64> {
        let mut acc: Fp = vec![self.unit];
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = mul(&acc, f, self.p);
            }
        }
        acc
    }

    pub fn factor_polys(&self) -> Vec<(IntPoly, usize)> {
        self.factors
            .iter()
            .map(|(f, m)| (IntPoly::from_i64s(&f.iter().map(|&c| c as i64).collect::<Vec<_>>()), *m))
            .collect()
    }
}

impl fmt::Display for FactorizationModP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.unit != 1 {
            write!(f, "{}", self.unit)?;
        }
        for (poly, m) in self.factor_polys() {
            write!(f, "({poly})")?;
            if m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

/// Factors f over 𝔽_p into monic irreducibles.
///
/// Square-free decomposition, distinct-degree splitting, then a seeded
/// Cantor–Zassenhaus split; every returned factor passes Rabin's test.
pub fn factor_mod_p(f: &IntPoly, p: u64) -> Result<FactorizationModP, NumError> {
    if !is_prime(p) || p > MAX_PRIME {
        return Err(NumError::UnsupportedPrime(p));
    }
    let n = f.degree().ok_or(NumError::DegreeTooLow)?;
    if n > MAX_DEGREE {
        return Err(NumError::DegreeTooHigh(n));
    }
    let fp = trim(f.mod_p(p));
    if fp.len() != f.coeffs().len() {
        return Err(NumError::LeadingCoefficientDivisibleByP(p));
    }
    let unit = *fp.last().unwrap();
    let m = monic(&fp, p);
    let square_free = deg(&gcd(&m, &derivative(&m, p), p)) == Some(0);
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    let mut factors: Vec<(Fp, usize)> = vec![];
    for (g, mult) in square_free_decomposition(&m, p) {
        for (h, d) in distinct_degree(&g, p) {
            for irr in equal_degree(&h, d, p, &mut rng) {
                debug_assert!(is_irreducible(&irr, p));
                factors.push((irr, mult));
            }
        }
    }
    factors.sort_by(|(a, _), (b, _)| a.len().cmp(&b.len()).then_with(|| a.iter().rev().cmp(b.iter().rev())));
    let out = FactorizationModP { p, unit, factors, square_free };
    debug_assert_eq!(out.expand(), fp);
    Ok(out)
}

/// Rabin irreducibility of f mod p (after making it monic).
pub fn irreducible_mod_p(f: &IntPoly, p: u64) -> bool {
    let fp = trim(f.mod_p(p));
    !fp.is_empty() && is_irreducible(&monic(&fp, p), p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quartic() -> IntPoly {
        IntPoly::from_desc(&[1, 3, 2, -5, -9])
    }

    #[test]
    fn quartic_mod_13() {
        let r = factor_mod_p(&quartic(), 13).unwrap();
        assert_eq!(r.to_string(), "(x + 6)(x + 10)(x^2 + 7)");
        assert_eq!(r.degree_pattern(), vec![2, 1, 1]);
        assert!(r.square_free);
    }

    #[test]
    fn quartic_mod_5_and_3() {
        let r5 = factor_mod_p(&quartic(), 5).unwrap();
        assert_eq!(r5.degree_pattern(), vec![4]);
        assert_eq!(r5.to_string(), "(x^4 + 3*x^3 + 2*x^2 + 1)");
        let r3 = factor_mod_p(&quartic(), 3).unwrap();
        assert_eq!(r3.to_string(), "(x)(x^3 + 2*x + 1)");
    }

    #[test]
    fn leading_coefficient_error() {
        let f = IntPoly::from_desc(&[5, 1, 1]);
        assert_eq!(factor_mod_p(&f, 5), Err(NumError::LeadingCoefficientDivisibleByP(5)));
    }

    #[test]
    fn repeated_factors_and_p_th_powers() {
        // (x+1)^2 (x^2+1) mod 3 and x^3 − 1 = (x − 1)^3 mod 3
        let f = IntPoly::from_desc(&[1, 1]).pow(2).mul(&IntPoly::from_desc(&[1, 0, 1]));
        let r = factor_mod_p(&f, 3).unwrap();
        assert!(!r.square_free);
        assert_eq!(r.to_string(), "(x + 1)^2(x^2 + 1)");
        let g = IntPoly::from_desc(&[1, 0, 0, -1]);
        assert_eq!(factor_mod_p(&g, 3).unwrap().to_string(), "(x + 2)^3");
    }

    #[test]
    fn characteristic_two() {
        // x^4 + x + 1 is irreducible over 𝔽₂; x^4 + x^2 + 1 = (x^2 + x + 1)^2
        assert_eq!(factor_mod_p(&IntPoly::from_desc(&[1, 0, 0, 1, 1]), 2).unwrap().degree_pattern(), vec![4]);
        let r = factor_mod_p(&IntPoly::from_desc(&[1, 0, 1, 0, 1]), 2).unwrap();
        assert_eq!(r.to_string(), "(x^2 + x + 1)^2");
        let s = factor_mod_p(&IntPoly::from_desc(&[1, 0, 0, 0, 0, 0, 0, 0, 1]), 2).unwrap();
        assert_eq!(s.to_string(), "(x + 1)^8");
        let t = IntPoly::from_desc(&[1, 1, 1, 1, 1, 1]);
        let r = factor_mod_p(&t, 2).unwrap();
        assert_eq!(r.expand(), vec![1, 1, 1, 1, 1, 1]);
    }
}
