//! Checkable number-theoretic claims about p(x,y), q(x,κ), h(x,κ) and h̃(x,κ):
//! integer points, factorization fixtures, Galois-group evidence from
//! factorizations mod p, root-norm tests and polynomial identities.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::poly::{h_tilde_x_kappa, h_x_kappa, p_xy, q_x_kappa};
use crate::exactnum::roots::{int_poly_roots, refine_root, HpComplex};
use crate::exactnum::{factor_mod_p, BiPoly, IntPoly, NumError, Scalar};
use crate::interpolation::cubic_criterion;
use crate::linalg;

pub const MAX_P_BOUND: u64 = 100_000;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CertError {
    #[error("bound {0} exceeds {MAX_P_BOUND}")]
    BoundTooLarge(u64),
    #[error("polynomial is reducible over ℚ")]
    Reducible,
    #[error("expected a polynomial of degree {expected}")]
    WrongDegree { expected: usize },
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is not square-free mod {0}")]
    NotSquareFreeModP(u64),
    #[error(transparent)]
    Num(#[from] NumError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum Status {
    Verified,
    FalsifiedWith(String),
    CheckedUpTo(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub claim: String,
    #[serde(flatten)]
    pub status: Status,
    /// Number of elementary checks performed.
    pub work: u64,
}

impl CertificateReport {
    fn new(claim: impl Into<String>, status: Status, work: u64) -> Self {
        CertificateReport { claim: claim.into(), status, work }
    }

    fn check(claim: impl Into<String>, ok: bool, witness: impl FnOnce() -> String, work: u64) -> Self {
        let status = if ok { Status::Verified } else { Status::FalsifiedWith(witness()) };
        Self::new(claim, status, work)
    }

    pub fn is_ok(&self) -> bool {
        !matches!(self.status, Status::FalsifiedWith(_))
    }
}

impl fmt::Display for CertificateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            Status::Verified => write!(f, "{}: verified", self.claim),
            Status::FalsifiedWith(w) => write!(f, "{}: FALSIFIED by {w}", self.claim),
            Status::CheckedUpTo(b) => write!(f, "{}: checked up to {b}", self.claim),
        }
    }
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// p(x,y) at integers, exactly.
pub fn p_value(x: &BigInt, y: &BigInt) -> BigInt {
    p_xy().eval_y(y).eval(x)
}

fn small_prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Positive divisors of n³.
fn cube_divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in small_prime_factors(n) {
        let mut next = Vec::with_capacity(out.len() * (3 * e as usize + 1));
        for &d in &out {
            let mut m = d;
            for _ in 0..=3 * e {
                next.push(m);
                m = m.saturating_mul(p);
            }
        }
        out = next;
    }
    out
}

const MOD: u64 = (1 << 61) - 1;

fn p_mod(x: i128, y: i128) -> u64 {
    let m = MOD as i128;
    let r = |v: i128| v.rem_euclid(m) as u128;
    let (x, y) = (r(x), r(y));
    let mm = MOD as u128;
    let mul = |a: u128, b: u128| a * b % mm;
    let x2 = mul(x, x);
    let x3 = mul(x2, x);
    let x5 = mul(x3, x2);
    let y2 = mul(y, y);
    let pos = (x5 + mul(mul(y, y2), 1) + mul(mul(y, y), x)) % mm;
    let neg = (mul((2 * y + 1) % mm, x3) + mul((y2 + 2) % mm, x2) + mul(y, x)) % mm;
    ((pos + mm - neg) % mm) as u64
}

/// Every integer point (x, y) on p(x,y) = 0 with |y| ≤ `bound`, sorted by y
/// then x, with the number of candidates tested.
///
/// For y ≠ 0 the quintic is monic with constant term y³, so every integer
/// root divides y³. At y = 0, p(x,0) = x²(x³ − x − 2).
pub fn p_integer_solutions_with_work(bound: u64) -> Result<(Vec<(i64, i64)>, u64), CertError> {
    if bound > MAX_P_BOUND {
        return Err(CertError::BoundTooLarge(bound));
    }
    let b = bound as i64;
    let per_y: Vec<(Vec<(i64, i64)>, u64)> = (-b..=b)
        .into_par_iter()
        .map(|y| {
            if y == 0 {
                let cubic = IntPoly::from_desc(&[1, 0, -1, -2]);
                let mut xs: Vec<i64> = cubic.integer_roots().iter().filter_map(|r| r.to_i64()).collect();
                xs.push(0);
                xs.sort_unstable();
                xs.dedup();
                return (xs.into_iter().map(|x| (x, 0)).collect(), 1);
            }
            let mut pts = Vec::new();
            let mut work = 0;
            for d in cube_divisors(y.unsigned_abs()) {
                for x in [d as i128, -(d as i128)] {
                    work += 1;
                    if p_mod(x, y as i128) == 0 && p_value(&BigInt::from(x), &big(y)).is_zero() {
                        pts.push((x as i64, y));
                    }
                }
            }
            pts.sort_unstable();
            (pts, work)
        })
        .collect();
    let work = per_y.iter().map(|(_, w)| w).sum();
    Ok((per_y.into_iter().flat_map(|(p, _)| p).collect(), work))
}

pub fn p_integer_solutions(bound: u64) -> Result<Vec<(i64, i64)>, CertError> {
    Ok(p_integer_solutions_with_work(bound)?.0)
}

/// The five known integer points.
pub const KNOWN_P_POINTS: [(i64, i64); 5] = [(1, -1), (0, 0), (-1, 1), (1, 2), (3, 3)];

pub fn p_solutions_report(bound: u64) -> Result<CertificateReport, CertError> {
    let (pts, work) = p_integer_solutions_with_work(bound)?;
    let claim = format!("integer points of p(x,y) with |y| <= {bound}");
    Ok(if pts == KNOWN_P_POINTS {
        CertificateReport::new(claim, Status::CheckedUpTo(bound), work)
    } else {
        CertificateReport::new(claim, Status::FalsifiedWith(format!("{pts:?}")), work)
    })
}

/// Factorizations of p(x, y₀) as (y₀, factors in descending coefficients).
pub fn factorization_fixtures() -> Vec<(i64, Vec<Vec<i64>>)> {
    vec![
        (-1, vec![vec![1, -1], vec![1, 1, 2, -1, 1]]),
        (0, vec![vec![1, 0, 0], vec![1, 0, -1, -2]]),
        (1, vec![vec![1, 1], vec![1, -1, -2, -1, 1]]),
        (2, vec![vec![1, -1], vec![1, -1, -4], vec![1, 2, 2]]),
        (3, vec![vec![1, -3], vec![1, 3, 2, -5, -9]]),
    ]
}

pub fn verify_factorization_fixtures() -> Vec<CertificateReport> {
    factorization_fixtures()
        .into_iter()
        .map(|(y, factors)| {
            let product = factors.iter().fold(IntPoly::one(), |acc, f| acc.mul(&IntPoly::from_desc(f)));
            let target = p_xy().eval_y(&big(y));
            CertificateReport::check(
                format!("factorization of p(x,{y})"),
                product == target,
                || format!("product {product} vs p(x,{y}) = {target}"),
                factors.len() as u64,
            )
        })
        .collect()
}

/// Whether the roots of an irreducible cubic satisfy the lattice condition,
/// i.e. whether f is not of the form ax³ + b.
pub fn cubic_lattice_criterion(f: &IntPoly) -> Result<bool, CertError> {
    if f.degree() != Some(3) {
        return Err(CertError::WrongDegree { expected: 3 });
    }
    cubic_criterion(f).ok_or(CertError::Reducible)
}

/// Factorization data of f modulo one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeEvidence {
    pub p: u64,
    /// Monic irreducible factors mod p, coefficients lowest first.
    pub factors: Vec<Vec<u64>>,
    /// Factor degrees, descending; the cycle type of a Frobenius element.
    pub pattern: Vec<usize>,
    pub factorization: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DedekindEvidence {
    pub degree: usize,
    pub primes: Vec<PrimeEvidence>,
    pub transitive: bool,
    pub transposition: bool,
    /// A prime q > n/2 such that some cycle type yields a q-cycle.
    pub large_prime_cycle: Option<usize>,
    /// Transitive, with a transposition and a large prime cycle: the group is Sₙ.
    pub symmetric: bool,
    pub note: String,
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Cycle-type evidence about the Galois group of a monic f over ℚ from its
/// factorizations modulo primes where it stays square-free.
pub fn dedekind_evidence(f: &IntPoly, primes: &[u64]) -> Result<DedekindEvidence, CertError> {
    if !f.is_monic() {
        return Err(CertError::NotMonic);
    }
    let n = f.degree().unwrap_or(0);
    let mut out = Vec::with_capacity(primes.len());
    for &p in primes {
        let r = factor_mod_p(f, p)?;
        if !r.square_free {
            return Err(CertError::NotSquareFreeModP(p));
        }
        out.push(PrimeEvidence {
            p,
            factors: r.factors.iter().map(|(g, _)| g.clone()).collect(),
            pattern: r.degree_pattern(),
            factorization: r.to_string(),
        });
    }
    let transitive = out.iter().any(|e| e.pattern == [n]);
    // One 2-cycle with all other cycles odd: an odd power is a transposition.
    let transposition = out.iter().any(|e| e.pattern.iter().filter(|&&d| d == 2).count() == 1 && e.pattern.iter().all(|&d| d == 2 || d % 2 == 1));
    // A prime cycle q > n/2: all other cycles are shorter and coprime to q.
    let large_prime_cycle = out.iter().flat_map(|e| e.pattern.iter().copied()).filter(|&q| is_prime(q) && 2 * q > n).max();
    let symmetric = transitive && transposition && large_prime_cycle.is_some();
    let mut parts = Vec::new();
    if transitive {
        parts.push("G is transitive".to_string());
    }
    if transposition {
        parts.push("contains a transposition".to_string());
    }
    if let Some(q) = large_prime_cycle {
        parts.push(format!("contains a {q}-cycle"));
    }
    let mut note = parts.join(", ");
    if symmetric {
        note.push_str(&format!(" => G = S{n}"));
    }
    Ok(DedekindEvidence { degree: n, primes: out, transitive, transposition, large_prime_cycle, symmetric, note })
}

/// Outcome of the necessary condition a₂|a₁|² = |a₃|²·conj(a₂)·a₀ for the
/// roots of x⁴ + a₃x³ + a₂x² + a₁x + a₀ to share one modulus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuarticNormTest {
    /// Whether the identity holds. `false` means the roots do not all share a norm.
    pub holds: bool,
    /// Both sides vanish, so the test carries no information.
    pub degenerate: bool,
}

pub fn quartic_same_norm_test(a3: &Scalar, a2: &Scalar, a1: &Scalar, a0: &Scalar) -> QuarticNormTest {
    let lhs = a2 * &a1.norm_sqr();
    let rhs = &(&a3.norm_sqr() * &a2.conj()) * a0;
    QuarticNormTest { holds: lhs == rhs, degenerate: lhs.is_zero() && rhs.is_zero() }
}

fn fixed_point_cubic() -> (BiPoly, BiPoly) {
    // Variables: x = t, y = κ. With 4s = 1 − (κ−4)t, scale everything by 64.
    let k = |c: &[i64]| IntPoly::from_i64s(c);
    let s4 = BiPoly::new(vec![k(&[1]), k(&[4, -1])]);
    let t4 = BiPoly::new(vec![IntPoly::zero(), k(&[4])]);
    let pow = |p: &BiPoly, e: u32| (0..e).fold(BiPoly::new(vec![IntPoly::one()]), |acc, _| acc.mul(p));
    // 64t' = (κ+14)(4s)³ + 21(κ−2)(4s)²(4t) + 3(3κ²−15κ+14)(4s)(4t)² + (κ³−9κ²+23κ−14)(4t)³.
    let t64 = pow(&s4, 3)
        .scale_y(&k(&[14, 1]))
        .add(&pow(&s4, 2).mul(&t4).scale_y(&k(&[-42, 21])))
        .add(&s4.mul(&pow(&t4, 2)).scale_y(&k(&[42, -45, 9])))
        .add(&pow(&t4, 3).scale_y(&k(&[-14, 23, -9, 1])));
    // 64·(−3(s−t)²) = −12(4s − 4t)².
    let diff = s4.sub(&t4);
    let lhs = diff.mul(&diff).scale_y(&k(&[-12])).sub(&t64);
    let rhs = BiPoly::from_terms(&[
        (1, 3, 4),
        (-2, 3, 3),
        (-3, 2, 3),
        (-6, 2, 2),
        (3, 1, 2),
        (-30, 1, 1),
        (-1, 0, 1),
        (-26, 0, 0),
    ]);
    (lhs, rhs)
}

/// The symbolic identities behind the ternary lattice argument.
pub fn identity_suite() -> Vec<CertificateReport> {
    let mut out = Vec::new();
    let ht = h_tilde_x_kappa();
    let shifted = ht.compose_y(&IntPoly::from_i64s(&[1, 1]));
    out.push(CertificateReport::check("h~(x, y+1) = p(x, y)", shifted == p_xy(), || format!("{shifted}"), 1));

    let kappa = IntPoly::x();
    let lhs = h_x_kappa().scale_x_by(&kappa.pow(3));
    let rhs = ht.scale_y(&kappa.pow(15));
    out.push(CertificateReport::check("h(κ³x, κ) = κ^15 h~(x, κ)", lhs == rhs, || format!("{lhs} vs {rhs}"), 1));

    let at = h_x_kappa().eval_x_poly(&kappa.pow(3));
    let expected = IntPoly::from_i64s(&[-3, 1]).mul(&kappa.pow(17));
    out.push(CertificateReport::check("h(κ³, κ) = (κ−3)κ^17", at == expected, || format!("{at}"), 1));

    let disc = q_x_kappa().discriminant_x();
    let want = IntPoly::from_desc(&[-27, 68, -44]);
    out.push(CertificateReport::check(
        "disc_x q(x, κ) = −27κ² + 68κ − 44",
        disc.as_ref() == Ok(&want),
        || format!("{disc:?}"),
        1,
    ));

    let (lhs, rhs) = fixed_point_cubic();
    out.push(CertificateReport::check(
        "64(−3(s−t)² − t') = κ³(κ−2)t³ − 3κ²(κ+2)t² + 3κ(κ−10)t − (κ+26)",
        lhs == rhs,
        || format!("{lhs}"),
        1,
    ));

    let mut ok = true;
    let mut bad = 0;
    for k in 3..=20usize {
        let t: linalg::Matrix = (0..k)
            .map(|i| (0..k).map(|j| Scalar::int(if i == j { k as i64 - 2 } else { -2 })).collect())
            .collect();
        let sq = linalg::mat_mul(&t, &t);
        let target: linalg::Matrix =
            linalg::identity(k).into_iter().map(|r| r.into_iter().map(|v| &v * &Scalar::int((k * k) as i64)).collect()).collect();
        if sq != target {
            ok = false;
            bad = k;
        }
    }
    out.push(CertificateReport::check("(κI − 2J)² = κ²I for κ = 3..20", ok, || format!("κ = {bad}"), 18));
    out
}

/// The real root of q(x, κ) and its conjugate pair, with the checks
/// α + ᾱ = 1 − r, αᾱ = r² − r + 1 and, when q has an integer root, r ≥ 2
/// and κ = r³ − r² + r + 1.
pub fn roots_nature_report(kappas: std::ops::RangeInclusive<i64>) -> CertificateReport {
    let disc = IntPoly::from_desc(&[-27, 68, -44]);
    let mut work = 0;
    for k in kappas.clone() {
        work += 1;
        if !disc.eval(&big(k)).is_negative() {
            return CertificateReport::new("roots of q", Status::FalsifiedWith(format!("disc ≥ 0 at κ = {k}")), work);
        }
        let q = q_x_kappa().eval_y(&big(k));
        let roots = int_poly_roots(&q);
        let Some(r) = roots.iter().find(|z| z.im.abs() < 1e-9).map(|z| z.re) else {
            return CertificateReport::new("roots of q", Status::FalsifiedWith(format!("no real root at κ = {k}")), work);
        };
        let pair: Vec<Complex64> = roots.iter().filter(|z| z.im.abs() >= 1e-9).copied().collect();
        let tol = 1e-9 * (1.0 + r.abs()).powi(2);
        let ok = pair.len() == 2
            && ((pair[0] + pair[1]).re - (1.0 - r)).abs() < tol
            && ((pair[0] * pair[1]).re - (r * r - r + 1.0)).abs() < tol;
        if !ok {
            return CertificateReport::new("roots of q", Status::FalsifiedWith(format!("root relations fail at κ = {k}")), work);
        }
        for ir in q.integer_roots() {
            let r = ir.to_i64().unwrap_or(0);
            if r < 2 || r * r * r - r * r + r + 1 != k {
                return CertificateReport::new("roots of q", Status::FalsifiedWith(format!("integer root {r} at κ = {k}")), work);
            }
        }
    }
    CertificateReport::new(
        format!("q(x, κ) has one real and two conjugate roots for κ in {}..={}", kappas.start(), kappas.end()),
        Status::Verified,
        work,
    )
}

fn hp_pow(z: &HpComplex, e: i64, bits: usize) -> Option<HpComplex> {
    let p = z.pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Some(p)
    } else {
        HpComplex::one(bits).div(&p)
    }
}

/// Searches for x ≠ 0 with Σxᵢ = 0, |xᵢ| ≤ `bound` and Π zᵢ^{xᵢ} = 1 over
/// the roots of the square-free `f`. Candidates passing a double-precision
/// filter are re-checked with roots refined to 256 bits and accepted only if
/// the product is within 10⁻³⁰ of 1. Returns the relation, if any, and the
/// number of candidates tested.
pub fn root_relation_search(f: &IntPoly, bound: u32) -> (Option<Vec<i64>>, u64) {
    let roots = int_poly_roots(&f);
    let logs: Vec<(f64, f64)> = roots.iter().map(|z| (z.norm().ln(), z.arg())).collect();
    let n = roots.len();
    let b = bound as i64;
    let mut x = vec![-b; n - 1];
    let mut work = 0;
    let mut hp: Option<Vec<HpComplex>> = None;
    let tol = BigRational::new(BigInt::one(), BigInt::from(10).pow(30));
    loop {
        let last = -x.iter().sum::<i64>();
        if last.abs() <= b && (x.iter().any(|&v| v != 0) || last != 0) {
            work += 1;
            let full: Vec<i64> = x.iter().copied().chain([last]).collect();
            let re: f64 = full.iter().zip(&logs).map(|(&k, l)| k as f64 * l.0).sum();
            let im: f64 = full.iter().zip(&logs).map(|(&k, l)| k as f64 * l.1).sum();
            let turns = im / std::f64::consts::TAU;
            if re.abs() < 1e-8 && (turns - turns.round()).abs() < 1e-8 {
                let zs = hp.get_or_insert_with(|| roots.iter().map(|&z| refine_root(f, z, 256)).collect());
                let prod = full
                    .iter()
                    .zip(zs.iter())
                    .try_fold(HpComplex::one(256), |acc, (&k, z)| hp_pow(z, k, 256).map(|p| acc.mul(&p)));
                if let Some(p) = prod {
                    if p.sub(&HpComplex::one(256)).sup_norm() < tol {
                        return (Some(full), work);
                    }
                }
            }
        }
        let mut i = 0;
        while i < x.len() && x[i] == b {
            x[i] = -b;
            i += 1;
        }
        if i == x.len() {
            break;
        }
        x[i] += 1;
    }
    (None, work)
}

/// `root_relation_search` on the roots of h̃(x, κ).
pub fn h_tilde_lattice_falsifier(kappa: i64, bound: u32) -> CertificateReport {
    let f = h_tilde_x_kappa().eval_y(&big(kappa));
    let (found, work) = root_relation_search(&f, bound);
    let claim = format!("no multiplicative relation among roots of h~(x, {kappa})");
    match found {
        Some(x) => CertificateReport::new(claim, Status::FalsifiedWith(format!("{x:?}")), work),
        None => CertificateReport::new(claim, Status::CheckedUpTo(bound as u64), work),
    }
}

/// The Dedekind evidence for x⁴ + 3x³ + 2x² − 5x − 9 modulo 3, 5 and 13.
pub fn quartic_dedekind_report() -> Result<(DedekindEvidence, CertificateReport), CertError> {
    let f = IntPoly::from_desc(&[1, 3, 2, -5, -9]);
    let ev = dedekind_evidence(&f, &[3, 5, 13])?;
    let patterns: Vec<Vec<usize>> = ev.primes.iter().map(|e| e.pattern.clone()).collect();
    let ok = patterns == [vec![3, 1], vec![4], vec![2, 1, 1]] && ev.symmetric;
    let report = CertificateReport::check(
        "Galois group of x^4 + 3x^3 + 2x^2 - 5x - 9 is S4",
        ok,
        || format!("{patterns:?}"),
        3,
    );
    Ok((ev, report))
}

#[cfg(test)]
mod tests;
