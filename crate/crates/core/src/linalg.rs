//! Dense linear algebra over `Scalar`: elimination, determinants, inverses
//! and characteristic polynomials.
//!
//! Exact matrices pivot on the first nonzero entry. Float matrices pivot on
//! the largest entry and treat entries below `FLOAT_TOL` times the largest
//! magnitude as zero.

use num_bigint::BigInt;

use crate::exactnum::{IntPoly, Scalar, FLOAT_TOL};

pub type Matrix = Vec<Vec<Scalar>>;

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| Scalar::int((i == j) as i64)).collect()).collect()
}

pub fn from_ints(rows: &[&[i64]]) -> Matrix {
    rows.iter().map(|r| r.iter().map(|&v| Scalar::int(v)).collect()).collect()
}

pub fn transpose(m: &Matrix) -> Matrix {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter().map(|r| (0..cols).map(|j| (0..inner).map(|l| &r[l] * &b[l][j]).sum()).collect()).collect()
}

pub fn mat_vec(a: &Matrix, v: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|r| r.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn is_float(m: &Matrix) -> bool {
    m.iter().flatten().any(|v| !v.is_exact())
}

fn max_norm(m: &Matrix) -> f64 {
    m.iter().flatten().map(|v| v.to_complex().norm()).fold(0.0, f64::max)
}

/// Row echelon form in place; returns pivot columns and the number of row swaps.
fn echelon(m: &mut Matrix) -> (Vec<usize>, usize) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let float = is_float(m);
    let eps = FLOAT_TOL * max_norm(m).max(1.0);
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let p = if float {
            (r..rows)
                .max_by(|&i, &j| m[i][c].to_complex().norm().total_cmp(&m[j][c].to_complex().norm()))
                .filter(|&i| m[i][c].to_complex().norm() > eps)
        } else {
            (r..rows).find(|&i| !m[i][c].is_zero())
        };
        let Some(p) = p else { continue };
        if p != r {
            m.swap(p, r);
            swaps += 1;
        }
        let piv = m[r][c].clone();
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &piv;
            for j in c..cols {
                let v = &m[i][j] - &(&f * &m[r][j]);
                m[i][j] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (pivots, swaps)
}

pub fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    echelon(&mut a).0.len()
}

pub fn det(m: &Matrix) -> Scalar {
    let n = m.len();
    if n == 0 {
        return Scalar::one();
    }
    let mut a = m.clone();
    let (pivots, swaps) = echelon(&mut a);
    if pivots.len() < n {
        return m[0][0].zero_like();
    }
    let d: Scalar = (0..n).map(|i| a[i][i].clone()).product();
    if swaps % 2 == 1 {
        -d
    } else {
        d
    }
}

/// Solves `a·x = b` for square nonsingular `a`.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    let n = a.len();
    let mut aug: Matrix = a.iter().zip(b).map(|(r, v)| r.iter().cloned().chain([v.clone()]).collect()).collect();
    let (pivots, _) = echelon(&mut aug);
    if pivots.len() < n || pivots.iter().any(|&c| c >= n) {
        return None;
    }
    let mut x = vec![b.first().map_or_else(Scalar::zero, Scalar::zero_like); n];
    for i in (0..n).rev() {
        let r = (i + 1..n).fold(aug[i][n].clone(), |acc, j| &acc - &(&aug[i][j] * &x[j]));
        x[i] = &r / &aug[i][i];
    }
    Some(x)
}

pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let id = identity(n);
    let cols: Option<Vec<Vec<Scalar>>> = (0..n)
        .map(|j| {
            let e: Vec<Scalar> = id.iter().map(|r| if is_float(a) { r[j].to_float() } else { r[j].clone() }).collect();
            solve(a, &e)
        })
        .collect();
    cols.map(|c| transpose(&c))
}

/// det(xI − M) as ascending coefficients, by Faddeev–LeVerrier.
pub fn char_poly(m: &Matrix) -> Vec<Scalar> {
    let n = m.len();
    let like = m.first().and_then(|r| r.first()).cloned().unwrap_or_else(Scalar::zero);
    let mut coeffs = vec![like.zero_like(); n + 1];
    coeffs[n] = like.one_like();
    let mut mk: Matrix = vec![vec![like.zero_like(); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1}·I, c_{n−k} = −tr(A·M_k)/k.
        mk = mat_mul(m, &mk);
        for (i, row) in mk.iter_mut().enumerate() {
            row[i] = &row[i] + &coeffs[n - k + 1];
        }
        let am = mat_mul(m, &mk);
        let tr: Scalar = (0..n).map(|i| am[i][i].clone()).sum();
        coeffs[n - k] = -(&tr / &like.int_like(k as i64));
    }
    coeffs
}

/// The coefficients as an integer polynomial, when they are all integers.
pub fn int_poly(coeffs: &[Scalar]) -> Option<IntPoly> {
    let c: Option<Vec<BigInt>> = coeffs.iter().map(Scalar::to_bigint).collect();
    c.map(IntPoly::new)
}

/// Eigenvalues with multiplicity when the characteristic polynomial of an
/// integer matrix splits over ℤ.
pub fn integer_eigenvalues(m: &Matrix) -> Option<Vec<BigInt>> {
    let mut p = int_poly(&char_poly(m))?;
    let mut out = Vec::new();
    for r in p.integer_roots() {
        let lin = IntPoly::new(vec![-r.clone(), BigInt::from(1)]);
        while let Some(q) = p.exact_div(&lin) {
            if q.degree() == p.degree() {
                break;
            }
            out.push(r.clone());
            p = q;
        }
    }
    (out.len() == m.len()).then_some(out)
}

/// The matrix with columns s, Ms, …, M^{len−1}s.
pub fn krylov_matrix(m: &Matrix, s: &[Scalar], len: usize) -> Matrix {
    let mut cols = Vec::with_capacity(len);
    let mut v = s.to_vec();
    for _ in 0..len {
        cols.push(v.clone());
        v = mat_vec(m, &v);
    }
    transpose(&cols)
}
