//! Closed-form succinct signatures of small gadgets built from a ternary
//! signature ⟨a,b,c⟩, the gates they describe, and holographic transformations.
//!
//! Closed forms are polynomial in (a, b, c) with coefficients polynomial in κ.
//! Every closed form has a matching gate in [`gates`] so it can be checked
//! against brute-force evaluation.

pub mod fixed_point;
pub mod gates;
pub mod holo;

pub use fixed_point::{construct_fixed_point, FixedPointChain};
pub use gates::{verify_formulas, FormulaSummary, GadgetKind, GadgetReport};
pub use holo::{holo_transform, TransformMatrix};

use thiserror::Error;

use crate::exactnum::{NumError, Scalar};
use crate::holant::HolantError;
use crate::signatures::{DenseSignature, SigError, SuccinctSignature, SuccinctType};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum GadgetError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("root finding failed: {0}")]
    RootFindingFailed(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error(transparent)]
    Signature(#[from] SigError),
    #[error(transparent)]
    Holant(#[from] HolantError),
    #[error(transparent)]
    Num(#[from] NumError),
}

/// Brings scalars into one exactness class: all exact, or all float if any is.
pub fn unify(xs: &[&Scalar]) -> Vec<Scalar> {
    if xs.iter().all(|x| x.is_exact()) {
        xs.iter().map(|x| (*x).clone()).collect()
    } else {
        xs.iter().map(|x| x.to_float()).collect()
    }
}

/// A symmetric, domain-invariant ternary signature ⟨a,b,c⟩ of type τ₃.
#[derive(Clone, Debug, PartialEq)]
pub struct TernaryTriple {
    pub kappa: usize,
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
}

impl TernaryTriple {
    pub fn new(kappa: usize, a: Scalar, b: Scalar, c: Scalar) -> Self {
        let v = unify(&[&a, &b, &c]);
        let [a, b, c]: [Scalar; 3] = v.try_into().expect("three entries");
        TernaryTriple { kappa, a, b, c }
    }

    pub fn from_ints(kappa: usize, a: i64, b: i64, c: i64) -> Self {
        Self::new(kappa, Scalar::int(a), Scalar::int(b), Scalar::int(c))
    }

    pub fn from_succinct(s: &SuccinctSignature) -> Result<Self, GadgetError> {
        if s.ty != SuccinctType::Tau3 {
            return Err(GadgetError::PreconditionViolated(format!("expected a τ₃ signature, got {}", s.ty)));
        }
        Ok(Self::new(s.kappa, s.entries[0].clone(), s.entries[1].clone(), s.entries[2].clone()))
    }

    /// κ-dependent integer coefficient in this triple's exactness class.
    pub fn k(&self, n: i64) -> Scalar {
        self.a.int_like(n)
    }

    fn kk(&self) -> i64 {
        self.kappa as i64
    }

    /// 𝔄 = a − 3b + 2c.
    pub fn disc_a(&self) -> Scalar {
        &self.a - self.k(3) * &self.b + self.k(2) * &self.c
    }

    /// 𝔅 = a + (κ−3)b − (κ−2)c.
    pub fn disc_b(&self) -> Scalar {
        let k = self.kk();
        &self.a + self.k(k - 3) * &self.b - self.k(k - 2) * &self.c
    }

    /// ℭ = a + 3(κ−1)b + (κ−1)(κ−2)c.
    pub fn disc_c(&self) -> Scalar {
        let k = self.kk();
        &self.a + self.k(3 * (k - 1)) * &self.b + self.k((k - 1) * (k - 2)) * &self.c
    }

    pub fn succinct(&self) -> SuccinctSignature {
        SuccinctSignature::new(SuccinctType::Tau3, self.kappa, vec![self.a.clone(), self.b.clone(), self.c.clone()])
            .expect("three entries")
    }

    pub fn dense(&self) -> Result<DenseSignature, SigError> {
        self.succinct().expand()
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self::new(self.kappa, &self.a * s, &self.b * s, &self.c * s)
    }

    fn with(&self, a: Scalar, b: Scalar, c: Scalar) -> Self {
        Self::new(self.kappa, a, b, c)
    }

    /// A binary ⟨x,y⟩ in this triple's exactness class.
    fn pair(&self, xy: &(Scalar, Scalar)) -> (Self, Scalar, Scalar) {
        let v = unify(&[&self.a, &self.b, &self.c, &xy.0, &xy.1]);
        let [a, b, c, x, y]: [Scalar; 5] = v.try_into().expect("five entries");
        (self.with(a, b, c), x, y)
    }
}

/// A binary ⟨x,y⟩ of type τ₂ as a succinct signature.
pub fn binary(kappa: usize, x: Scalar, y: Scalar) -> SuccinctSignature {
    let v = unify(&[&x, &y]);
    SuccinctSignature::new(SuccinctType::Tau2, kappa, v).expect("two entries")
}

fn unary(kappa: usize, u: Scalar) -> SuccinctSignature {
    SuccinctSignature::new(SuccinctType::Tau1, kappa, vec![u]).expect("one entry")
}

fn ternary(kappa: usize, a: Scalar, b: Scalar, c: Scalar) -> SuccinctSignature {
    TernaryTriple::new(kappa, a, b, c).succinct()
}

/// The three unary constructions from a single ternary signature.
#[derive(Clone, Debug, PartialEq)]
pub enum UnaryVariant {
    /// One vertex with a self-loop.
    SelfLoop,
    /// One vertex whose two remaining edges meet a binary ⟨x,y⟩.
    WithBinary(Scalar, Scalar),
    /// Three vertices: the loop is replaced by two parallel edges through two
    /// more vertices. Requires a + (κ−1)b = 0.
    Triple,
}

pub fn unary_gadget(t: &TernaryTriple, v: &UnaryVariant) -> Result<SuccinctSignature, GadgetError> {
    let k = t.kk();
    let (a, b, c) = (&t.a, &t.b, &t.c);
    let u = match v {
        UnaryVariant::SelfLoop => a + t.k(k - 1) * b,
        UnaryVariant::WithBinary(x, y) => {
            let (t, x, y) = t.pair(&(x.clone(), y.clone()));
            let (a, b, c) = (&t.a, &t.b, &t.c);
            x * (a + t.k(k - 1) * b) + y * t.k(k - 1) * (t.k(2) * b + t.k(k - 2) * c)
        }
        UnaryVariant::Triple => {
            if !(a + t.k(k - 1) * b).is_zero() {
                return Err(GadgetError::PreconditionViolated("a + (κ−1)b must vanish".into()));
            }
            let l = t.k(2) * b + t.k(k - 2) * c;
            let r = b * b - t.k(4) * b * c - t.k(k - 3) * c * c;
            -(t.k((k - 1) * (k - 2)) * l * r)
        }
    };
    Ok(unary(t.kappa, u))
}

/// Two vertices joined by two parallel edges, one dangling edge each.
pub fn binary_parallel(t: &TernaryTriple) -> SuccinctSignature {
    let k = t.kk();
    let (a, b, c) = (&t.a, &t.b, &t.c);
    let x = a * a + t.k(3 * (k - 1)) * b * b + t.k((k - 1) * (k - 2)) * c * c;
    let y = t.k(2) * a * b + t.k(k) * b * b + t.k(4 * (k - 2)) * b * c + t.k((k - 2) * (k - 3)) * c * c;
    binary(t.kappa, x, y)
}

/// Two vertices joined by one edge; inputs (w, x, y, z) with w, z on the first
/// vertex and x, y on the second.
pub fn quaternary_i(t: &TernaryTriple) -> SuccinctSignature {
    let k = t.kk();
    let (a, b, c) = (&t.a, &t.b, &t.c);
    let f1111 = a * a + t.k(k - 1) * b * b;
    let f1112 = b * (a + b + t.k(k - 2) * c);
    let f1122 = t.k(2) * b * b + t.k(k - 2) * c * c;
    let f1123 = b * b + t.k(2) * b * c + t.k(k - 3) * c * c;
    let f1221 = b * (t.k(2) * a + t.k(k - 2) * b);
    let f1231 = a * c + t.k(2) * b * b + t.k(k - 3) * b * c;
    let f1234 = c * (t.k(4) * b + t.k(k - 4) * c);
    SuccinctSignature::new(
        SuccinctType::Tau4,
        t.kappa,
        vec![f1111, f1112, f1122.clone(), f1123.clone(), f1122, f1123, f1221, f1231, f1234],
    )
    .expect("nine entries")
}

/// Three vertices in a triangle, one dangling edge each.
pub fn ternary_triangle(t: &TernaryTriple) -> SuccinctSignature {
    let k = t.kk();
    let (a, b, c) = (&t.a, &t.b, &t.c);
    let (a2, b2, c2) = (a * a, b * b, c * c);
    let (b3, c3) = (&b2 * b, &c2 * c);
    let n = |v: i64| t.k(v);
    let ap = &a2 * a
        + n(3 * (k - 1)) * a * &b2
        + n(4 * (k - 1)) * &b3
        + n(3 * (k - 1) * (k - 2)) * (&b2 * c + b * &c2)
        + n((k - 1) * (k - 2) * (k - 3)) * &c3;
    let bp = &a2 * b
        + n(4) * a * &b2
        + n(2 * (k - 2)) * a * b * c
        + n(k - 2) * a * &c2
        + n(5 * k - 7) * &b3
        + n((k - 2) * (k + 5)) * &b2 * c
        + n((k - 2) * (7 * k - 18)) * b * &c2
        + n((k - 2) * (k - 3) * (k - 3)) * &c3;
    let cp = n(3) * a * &b2
        + n(6) * a * b * c
        + n(3 * (k - 3)) * a * &c2
        + n(k + 5) * &b3
        + n(3 * (7 * k - 18)) * &b2 * c
        + n(9 * (k - 3) * (k - 3)) * b * &c2
        + n(k * k * k - 9 * k * k + 29 * k - 32) * &c3;
    ternary(t.kappa, ap, bp, cp)
}

/// One vertex with a binary ⟨x,y⟩ on each of its three edges, i.e. the
/// local holographic transformation by T = yJ + (x−y)I.
pub fn local_holo(t: &TernaryTriple, xy: &(Scalar, Scalar)) -> SuccinctSignature {
    let k = t.kk();
    let (t, x, y) = t.pair(xy);
    let (a, b, c) = (&t.a, &t.b, &t.c);
    let n = |v: i64| t.k(v);
    let (x2, y2) = (&x * &x, &y * &y);
    let (x3, y3) = (&x2 * &x, &y2 * &y);
    let x2y = &x2 * &y;
    let xy2 = &x * &y2;
    let p = &x2y + &xy2 + n(k - 2) * &y3;
    let q = n(3) * &xy2 + n(k - 3) * &y3;
    let r = n(2) * &x2y + n(3 * k - 7) * &xy2 + n(k * k - 4 * k + 5) * &y3;
    let ap = a * (&x3 + n(k - 1) * &y3) + n(3 * (k - 1)) * b * &p + n((k - 1) * (k - 2)) * c * &q;
    let bp = a * &p
        + b * (&x3 + n(k) * &x2y + n(7 * k - 12) * &xy2 + n(3 * k * k - 11 * k + 11) * &y3)
        + n(k - 2) * c * &r;
    let cp = a * &q
        + n(3) * b * &r
        + c * (&x3
            + n(3 * (k - 3)) * &x2y
            + n(3 * (k * k - 5 * k + 7)) * &xy2
            + n(k * k * k - 6 * k * k + 14 * k - 13) * &y3);
    ternary(t.kappa, ap, bp, cp)
}

/// 𝔇 = (b−c)(x−y) + 𝔅y, the quantity governing `local_holo` differences.
pub fn local_holo_d(t: &TernaryTriple, xy: &(Scalar, Scalar)) -> Scalar {
    let (t, x, y) = t.pair(xy);
    (&t.b - &t.c) * (&x - &y) + t.disc_b() * y
}

/// Two vertices with a dangling edge each, joined by two paths through the
/// binaries `f1` (upper) and `f2` (lower).
pub fn anti_gadget(t: &TernaryTriple, f1: &(Scalar, Scalar), f2: &(Scalar, Scalar)) -> SuccinctSignature {
    let k = t.kk();
    let v = unify(&[&t.a, &t.b, &t.c, &f1.0, &f1.1, &f2.0, &f2.1]);
    let [a, b, c, x1, y1, x2, y2]: [Scalar; 7] = v.try_into().expect("seven entries");
    let n = |v: i64| a.int_like(v);
    let xx = &x1 * &x2;
    let xy = &x1 * &y2 + &x2 * &y1;
    let yy = &y1 * &y2;
    let (ab, ac, bc) = (&a * &b, &a * &c, &b * &c);
    let (a2, b2, c2) = (&a * &a, &b * &b, &c * &c);
    let x = &xx * &a2
        + n(2 * (k - 1)) * (&xy + &yy) * &ab
        + n(2 * (k - 1) * (k - 2)) * &yy * &ac
        + n(k - 1) * (n(3) * &xx + n(k) * &xy + n(7 * k - 12) * &yy) * &b2
        + n(2 * (k - 1) * (k - 2)) * (n(2) * &xy + n(3 * k - 7) * &yy) * &bc
        + n((k - 1) * (k - 2)) * (&xx + n(k - 3) * &xy + n(k * k - 5 * k + 7) * &yy) * &c2;
    let y = &yy * &a2
        + n(2) * (&xx + &xy + n(3 * (k - 2)) * &yy) * &ab
        + n(2 * (k - 2)) * (&xy + n(k - 3) * &yy) * &ac
        + (n(k) * &xx + n(7 * k - 12) * &xy + n(3 * (3 * k * k - 11 * k + 11)) * &yy) * &b2
        + n(2 * (k - 2)) * (n(2) * &xx + n(3 * k - 7) * &xy + n(3 * (k * k - 4 * k + 5)) * &yy) * &bc
        + n(k - 2)
            * (n(k - 3) * &xx + n(k * k - 5 * k + 7) * &xy + n(k * k * k - 6 * k * k + 14 * k - 13) * &yy)
            * &c2;
    binary(t.kappa, x, y)
}

fn matmul(p: &[Vec<Scalar>], q: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let n = p.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|l| &p[i][l] * &q[l][j]).sum()).collect()).collect()
}

/// The anti-gadget by matrix product and trace: x = tr(M(1)T₁M(1)T₂),
/// y = tr(M(1)T₁M(2)T₂) with Tᵢ = yᵢJ + (xᵢ−yᵢ)I and M(t) the ternary with
/// one input pinned to t.
pub fn anti_gadget_trace(t: &TernaryTriple, f1: &(Scalar, Scalar), f2: &(Scalar, Scalar)) -> SuccinctSignature {
    let v = unify(&[&t.a, &t.b, &t.c, &f1.0, &f1.1, &f2.0, &f2.1]);
    let [a, b, c, x1, y1, x2, y2]: [Scalar; 7] = v.try_into().expect("seven entries");
    let kappa = t.kappa;
    let m = |p: usize| -> Vec<Vec<Scalar>> {
        (0..kappa)
            .map(|i| {
                (0..kappa)
                    .map(|j| match (i == j, i == p || j == p) {
                        (true, true) => a.clone(),
                        (true, false) | (false, true) => b.clone(),
                        (false, false) => c.clone(),
                    })
                    .collect()
            })
            .collect()
    };
    let tm = |x: &Scalar, y: &Scalar| -> Vec<Vec<Scalar>> {
        (0..kappa).map(|i| (0..kappa).map(|j| if i == j { x.clone() } else { y.clone() }).collect()).collect()
    };
    let (t1, t2) = (tm(&x1, &y1), tm(&x2, &y2));
    let trace = |p: &[Vec<Scalar>]| -> Scalar { (0..kappa).map(|i| p[i][i].clone()).sum() };
    let left = matmul(&m(0), &t1);
    let x = trace(&matmul(&matmul(&left, &m(0)), &t2));
    let y = trace(&matmul(&matmul(&left, &m(1)), &t2));
    binary(kappa, x, y)
}

/// Parameters of the anti-gadget when fᵣ = (1/κ)⟨w^r + κ−1, w^r − 1⟩.
#[derive(Clone, Debug, PartialEq)]
pub struct AntiGadgetParams {
    /// Φ = ℭ²/𝔅².
    pub phi: Scalar,
    /// Ψ = (κ−2)𝔄²/𝔅².
    pub psi: Scalar,
    pub omega: Scalar,
    pub r: i64,
    pub s: i64,
    /// 𝔅²/κ².
    pub scale: Scalar,
}

impl AntiGadgetParams {
    pub fn new(t: &TernaryTriple, omega: &Scalar, r: i64, s: i64) -> Result<Self, GadgetError> {
        let bb = t.disc_b();
        if bb.is_zero() {
            return Err(GadgetError::PreconditionViolated("𝔅 must be nonzero".into()));
        }
        let b2 = &bb * &bb;
        let a = t.disc_a();
        let c = t.disc_c();
        let v = unify(&[&(&c * &c / &b2), &(t.k(t.kk() - 2) * &a * &a / &b2), omega, &(&b2 / t.k(t.kk() * t.kk()))]);
        let [phi, psi, omega, scale]: [Scalar; 4] = v.try_into().expect("four entries");
        Ok(AntiGadgetParams { phi, psi, omega, r, s, scale })
    }

    /// The binary (1/κ)⟨w^j + κ−1, w^j − 1⟩.
    pub fn input(&self, kappa: usize, j: i64) -> Result<(Scalar, Scalar), GadgetError> {
        let wj = self.omega.pow(j)?;
        let kk = wj.int_like(kappa as i64);
        Ok(((&wj + &kk - wj.one_like()) / &kk, (&wj - wj.one_like()) / kk))
    }

    /// (x, y) = 𝔅²/κ²[Φw^{r+s} + (κ−1)(w^r + w^s + Ψ + 1), Φw^{r+s} − (w^r + w^s + Ψ + 1) + κ].
    pub fn signature(&self, kappa: usize) -> Result<SuccinctSignature, GadgetError> {
        let w = &self.omega;
        let (wr, ws, wrs) = (w.pow(self.r)?, w.pow(self.s)?, w.pow(self.r + self.s)?);
        let sum = &wr + &ws + &self.psi + w.one_like();
        let k = w.int_like(kappa as i64);
        let x = &self.scale * (&self.phi * &wrs + (&k - w.one_like()) * &sum);
        let y = &self.scale * (&self.phi * &wrs - &sum + &k);
        Ok(binary(kappa, x, y))
    }

    /// Eigenvalues Φw^{r+s} + κ − 1 and w^r + w^s + Ψ of the induced recurrence.
    pub fn eigenvalues(&self, kappa: usize) -> Result<(Scalar, Scalar), GadgetError> {
        let w = &self.omega;
        let k1 = w.int_like(kappa as i64 - 1);
        Ok((&self.phi * w.pow(self.r + self.s)? + k1, w.pow(self.r)? + w.pow(self.s)? + &self.psi))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// Four vertices: a quaternary I closed by two outer vertices.
    Diamond,
    /// Two triangles joined by two parallel edges.
    Square,
}

pub fn composed_binary(t: &TernaryTriple, shape: Shape) -> SuccinctSignature {
    match shape {
        Shape::Diamond => diamond_outer(t, &quaternary_i(t)),
        Shape::Square => {
            let tri = ternary_triangle(t);
            binary_parallel(&TernaryTriple::from_succinct(&tri).expect("τ₃"))
        }
    }
}

/// A τ₄ signature f in the square position of the diamond's outer structure:
/// one vertex meets f's inputs w and x, another meets y and z.
pub fn diamond_outer(t: &TernaryTriple, f: &SuccinctSignature) -> SuccinctSignature {
    let k = t.kk();
    let v: Vec<&Scalar> = [&t.a, &t.b, &t.c].into_iter().chain(f.entries.iter()).collect();
    let v = unify(&v);
    let (a, b, c) = (&v[0], &v[1], &v[2]);
    let f = &v[3..];
    let n = |x: i64| a.int_like(x);
    let (a2, b2, c2) = (a * a, b * b, c * c);
    let (ab, ac, bc) = (a * b, a * c, b * c);
    let x = &f[0] * (&a2 + n(k - 1) * &b2)
        + n(4 * (k - 1)) * &f[1] * (&ab + &b2 + n(k - 2) * &bc)
        + n(k - 1) * &f[2] * (n(2) * &ab + n(k - 2) * &b2)
        + n(2 * (k * k - 3 * k + 2)) * &f[3] * (&ac + n(2) * &b2 + n(k - 3) * &bc)
        + n(k - 1) * &f[4] * (n(2) * &b2 + n(k - 2) * &c2)
        + n(2 * (k * k - 3 * k + 2)) * &f[5] * (&b2 + n(2) * &bc + n(k - 3) * &c2)
        + n(k - 1) * &f[6] * (n(2) * &b2 + n(k - 2) * &c2)
        + n(2 * (k * k - 3 * k + 2)) * &f[7] * (&b2 + n(2) * &bc + n(k - 3) * &c2)
        + n(k * k * k - 6 * k * k + 11 * k - 6) * &f[8] * (n(4) * &bc + n(k - 4) * &c2);
    let y = &f[0] * (n(2) * &ab + n(k - 2) * &b2)
        + n(4) * &f[1] * (&ab + n(k - 2) * &ac + n(2 * k - 3) * &b2 + n((k - 2) * (k - 2)) * &bc)
        + &f[2] * (&a2 + n(2 * (k - 2)) * &ab + n(k * k - 3 * k + 3) * &b2)
        + n(2 * (k - 2)) * &f[3] * (n(2) * &ab + n(k - 3) * &ac + n(2 * (k - 2)) * &b2 + n(k * k - 4 * k + 5) * &bc)
        + &f[4] * (n(2) * &b2 + n(4 * (k - 2)) * &bc + n(k * k - 5 * k + 6) * &c2)
        + n(2 * (k - 2)) * &f[5] * (n(3) * &b2 + n(2 * (2 * k - 5)) * &bc + n(k * k - 5 * k + 7) * &c2)
        + &f[6] * (n(2) * &b2 + n(4 * (k - 2)) * &bc + n(k * k - 5 * k + 6) * &c2)
        + n(2 * (k - 2)) * &f[7] * (n(3) * &b2 + n(2 * (2 * k - 5)) * &bc + n(k * k - 5 * k + 7) * &c2)
        + n(k * k - 5 * k + 6) * &f[8] * (n(4) * &b2 + n(4 * (k - 3)) * &bc + n(k * k - 5 * k + 8) * &c2);
    binary(t.kappa, x, y)
}

/// Two ⟨a,b,b⟩ vertices, each with two dangling edges, joined through the
/// binary ⟨1−κ, 1⟩; inputs ordered (top-left, bottom-left, bottom-right, top-right).
pub fn fischer_gadget(t: &TernaryTriple) -> Result<SuccinctSignature, GadgetError> {
    if t.b != t.c {
        return Err(GadgetError::PreconditionViolated("the Fischer gadget needs b = c".into()));
    }
    let d = &t.a - &t.b;
    let d2 = &d * &d;
    let mut e = vec![t.a.zero_like(); 9];
    e[0] = t.k(1 - t.kk()) * &d2;
    e[6] = d2;
    Ok(SuccinctSignature::new(SuccinctType::Tau4, t.kappa, e)?)
}

/// Coefficients (lowest first) of the polynomial in κ through the values
/// `f(3), f(4), …`, by Newton divided differences.
pub fn interpolate_in_kappa(values: &[Scalar]) -> Vec<Scalar> {
    let n = values.len();
    let zero = values.first().map_or_else(Scalar::zero, Scalar::zero_like);
    let nodes: Vec<Scalar> = (0..n).map(|i| zero.int_like(3 + i as i64)).collect();
    let mut div = values.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            div[i] = (&div[i] - &div[i - 1]) / (&nodes[i] - &nodes[i - j]);
        }
    }
    let mut coeffs = vec![zero.clone(); n];
    for i in (0..n).rev() {
        // coeffs ← coeffs·(κ − nodes[i]) + div[i]
        let mut next = vec![zero.clone(); n];
        for d in 0..n {
            if d + 1 < n {
                next[d + 1] = &next[d + 1] + &coeffs[d];
            }
            next[d] = &next[d] - &coeffs[d] * &nodes[i];
        }
        next[0] = &next[0] + &div[i];
        coeffs = next;
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(Scalar::is_zero) {
        coeffs.pop();
    }
    coeffs
}
