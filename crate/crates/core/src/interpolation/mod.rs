//! Recurrence matrices of recursive constructions, the lattice condition,
//! and coefficient recovery by Vandermonde systems.

mod tables;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::coloring::{arity_reduction_gate, eulerian_signature, medial, GraphError, PlaneGraph};
use crate::exactnum::poly::divisors;
use crate::exactnum::{IntPoly, Scalar, FLOAT_TOL};
use crate::gadgets::{quaternary_i, TernaryTriple};
use crate::holant::{Gate, HolantError};
use crate::linalg::{self, Matrix};
use crate::signatures::{compress, DenseSignature, SigError, SuccinctSignature, SuccinctType};

/// Largest number of exponent vectors the bounded lattice search visits.
pub const LATTICE_SEARCH_CAP: u64 = 5_000_000;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum InterpError {
    #[error("zero eigenvalue")]
    ZeroEigenvalue,
    #[error("zero input")]
    ZeroInput,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("construction leaves the succinct space: {0}")]
    CompressionFailed(String),
    #[error("Vandermonde system is singular: {0}")]
    SingularVandermonde(String),
    #[error("need {need} evaluations, got {got}")]
    NotEnoughEvaluations { need: usize, got: usize },
    #[error("lattice search over {0} vectors exceeds the cap")]
    SearchTooLarge(u64),
    #[error(transparent)]
    Holant(#[from] HolantError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl From<SigError> for InterpError {
    fn from(e: SigError) -> Self {
        match e {
            SigError::NotConstantOnPart { .. } | SigError::NonzeroOnOmittedPart { .. } => {
                InterpError::CompressionFailed(e.to_string())
            }
            other => InterpError::Holant(other.into()),
        }
    }
}

/// A linear map on a succinct signature space with an initial vector.
#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceMatrix {
    pub kappa: usize,
    pub ty: Option<SuccinctType>,
    pub m: Matrix,
    pub s: Vec<Scalar>,
}

impl RecurrenceMatrix {
    pub fn new(kappa: usize, ty: Option<SuccinctType>, m: Matrix, s: Vec<Scalar>) -> Self {
        RecurrenceMatrix { kappa, ty, m, s }
    }

    pub fn dim(&self) -> usize {
        self.m.len()
    }

    /// M^k s.
    pub fn iterate(&self, k: usize) -> Vec<Scalar> {
        (0..k).fold(self.s.clone(), |v, _| linalg::mat_vec(&self.m, &v))
    }

    pub fn char_poly(&self) -> Vec<Scalar> {
        linalg::char_poly(&self.m)
    }

    /// The characteristic polynomial when it has integer coefficients.
    pub fn char_int_poly(&self) -> Option<IntPoly> {
        linalg::int_poly(&self.char_poly())
    }

    pub fn krylov_rank(&self) -> usize {
        krylov_rank(&self.s, &self.m)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Eigenpair {
    pub value: Scalar,
    pub vector: Vec<Scalar>,
}

/// [[x, (κ−1)y], [y, x+(κ−2)y]] with eigenvalues x+(κ−1)y on (1,1)ᵀ and
/// x−y on (1−κ,1)ᵀ.
pub fn binary_recurrence(x: &Scalar, y: &Scalar, kappa: usize) -> (RecurrenceMatrix, [Eigenpair; 2]) {
    let k = kappa as i64;
    let m = vec![vec![x.clone(), y * &y.int_like(k - 1)], vec![y.clone(), x + &(y * &y.int_like(k - 2))]];
    let one = x.one_like();
    let pairs = [
        Eigenpair { value: x + &(y * &y.int_like(k - 1)), vector: vec![one.clone(), one.clone()] },
        Eigenpair { value: x - y, vector: vec![one.int_like(1 - k), one] },
    ];
    (RecurrenceMatrix::new(kappa, Some(SuccinctType::Tau2), m, vec![]), pairs)
}

/// Outcome of testing whether λ₁/λ₂ is a root of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RatioVerdict {
    RootOfUnity(u32),
    DistinctNorms,
    NotUpTo(u32),
}

fn norms_differ(a: &Scalar, b: &Scalar) -> bool {
    if a.is_exact() && b.is_exact() {
        a.norm_sqr() != b.norm_sqr()
    } else {
        let (x, y) = (a.to_complex().norm(), b.to_complex().norm());
        (x - y).abs() > FLOAT_TOL * x.max(y).max(1.0)
    }
}

pub fn ratio_root_of_unity(l1: &Scalar, l2: &Scalar, order_bound: u32) -> Result<RatioVerdict, InterpError> {
    if l1.is_zero() || l2.is_zero() {
        return Err(InterpError::ZeroEigenvalue);
    }
    if norms_differ(l1, l2) {
        return Ok(RatioVerdict::DistinctNorms);
    }
    let r = l1 / l2;
    let mut p = r.clone();
    for k in 1..=order_bound {
        if p.is_one() || (!p.is_exact() && p.approx_eq(&Scalar::float(1.0, 0.0), FLOAT_TOL)) {
            return Ok(RatioVerdict::RootOfUnity(k));
        }
        p = &p * &r;
    }
    Ok(RatioVerdict::NotUpTo(order_bound))
}

/// Rank of [s, Ms, …, M^{n−1}s].
pub fn krylov_rank(s: &[Scalar], m: &Matrix) -> usize {
    linalg::rank(&linalg::krylov_matrix(m, s, m.len()))
}

/// Outcome of the layered lattice-condition check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeVerdict {
    /// A nonzero x with Σxᵢ = 0 and Πλᵢ^{xᵢ} = 1.
    Falsified(Vec<i64>),
    HoldsByDistinctNorms,
    /// The λs are the roots of an irreducible cubic not of the form ax³+b.
    HoldsByCubicCriterion,
    HoldsUpToBound(u32),
    RootOfUnityRatio(u32),
}

fn has_rational_root(f: &IntPoly) -> bool {
    let c = f.coeffs();
    if c.is_empty() {
        return true;
    }
    if c[0].is_zero() {
        return true;
    }
    let lead = f.lc();
    for p in divisors(&c[0]) {
        for q in divisors(&lead) {
            for sign in [1, -1] {
                let x = BigRational::new(&p * BigInt::from(sign), q.clone());
                if f.eval_rational(&x).is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

/// `Some(true)` when `f` is an irreducible cubic over ℚ not of the form
/// ax³ + b, `Some(false)` when irreducible of that form, `None` otherwise.
pub fn cubic_criterion(f: &IntPoly) -> Option<bool> {
    if f.degree() != Some(3) || has_rational_root(f) {
        return None;
    }
    Some(!(f.coeff(1).is_zero() && f.coeff(2).is_zero()))
}

/// Checks the lattice condition for `lambdas`: distinct norms for pairs,
/// the cubic criterion when `cubic` is given and its roots are the λs, and
/// otherwise an exhaustive search with |xᵢ| ≤ `bound`.
pub fn lattice_check(lambdas: &[Scalar], bound: u32, cubic: Option<&IntPoly>) -> Result<LatticeVerdict, InterpError> {
    if lambdas.iter().any(Scalar::is_zero) {
        return Err(InterpError::ZeroInput);
    }
    let l = lambdas.len();
    if l <= 1 {
        return Ok(LatticeVerdict::HoldsByDistinctNorms);
    }
    if l == 2 {
        return Ok(match ratio_root_of_unity(&lambdas[0], &lambdas[1], bound)? {
            RatioVerdict::DistinctNorms => LatticeVerdict::HoldsByDistinctNorms,
            RatioVerdict::RootOfUnity(k) => LatticeVerdict::RootOfUnityRatio(k),
            RatioVerdict::NotUpTo(b) => LatticeVerdict::HoldsUpToBound(b),
        });
    }
    if let Some(f) = cubic {
        let roots_match = l == 3
            && lambdas.iter().all(|z| {
                let z = z.to_complex();
                let v = f.coeffs().iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| {
                    acc * z + c.to_f64().unwrap_or(f64::NAN)
                });
                v.norm() <= 1e-8 * (1.0 + z.norm()).powi(3)
            });
        if roots_match && cubic_criterion(f) == Some(true) {
            return Ok(LatticeVerdict::HoldsByCubicCriterion);
        }
    }
    bounded_search(lambdas, bound)
}

fn bounded_search(lambdas: &[Scalar], bound: u32) -> Result<LatticeVerdict, InterpError> {
    let l = lambdas.len();
    let b = bound as i64;
    let width = 2 * bound as u64 + 1;
    let total = width.checked_pow((l - 1) as u32).unwrap_or(u64::MAX);
    if total > LATTICE_SEARCH_CAP {
        return Err(InterpError::SearchTooLarge(total));
    }
    let logs: Vec<(f64, f64)> = lambdas.iter().map(|z| (z.to_complex().norm().ln(), z.to_complex().arg())).collect();
    let exact = lambdas.iter().all(Scalar::is_exact);
    // Vectors with max-norm exactly r, in descending lexicographic order.
    for r in 1..=b {
        let mut x = vec![0i64; l];
        let mut found = None;
        search_rec(&mut x, 0, r, b, &logs, &mut |x| {
            if verify_relation(lambdas, x, exact) {
                found = Some(x.to_vec());
                true
            } else {
                false
            }
        });
        if let Some(x) = found {
            return Ok(LatticeVerdict::Falsified(x));
        }
    }
    Ok(LatticeVerdict::HoldsUpToBound(bound))
}

fn search_rec(x: &mut Vec<i64>, i: usize, r: i64, b: i64, logs: &[(f64, f64)], hit: &mut dyn FnMut(&[i64]) -> bool) -> bool {
    let l = x.len();
    if i == l - 1 {
        let last = -x[..l - 1].iter().sum::<i64>();
        if last.abs() > b {
            return false;
        }
        x[i] = last;
        if x.iter().map(|v| v.abs()).max() != Some(r) {
            return false;
        }
        let re: f64 = x.iter().zip(logs).map(|(&k, (ln, _))| k as f64 * ln).sum();
        let im: f64 = x.iter().zip(logs).map(|(&k, (_, arg))| k as f64 * arg).sum();
        let scale: f64 = x.iter().zip(logs).map(|(&k, (ln, _))| (k as f64 * ln).abs()).sum::<f64>().max(1.0);
        let turns = im / std::f64::consts::TAU;
        if re.abs() <= 1e-9 * scale && (turns - turns.round()).abs() <= 1e-9 * scale {
            return hit(x);
        }
        return false;
    }
    for v in (-r..=r).rev() {
        x[i] = v;
        if search_rec(x, i + 1, r, b, logs, hit) {
            return true;
        }
    }
    false
}

fn verify_relation(lambdas: &[Scalar], x: &[i64], exact: bool) -> bool {
    if !exact {
        return true;
    }
    let p: Scalar = lambdas.iter().zip(x).map(|(z, &k)| z.pow(k).expect("nonzero")).product();
    p.is_one()
}

/// Returns i ∈ {0,1,2} with |α+δᵢ| ≠ |β+δᵢ|, where δ₀ = 0.
pub fn est_witness(alpha: &Scalar, beta: &Scalar, d1: &Scalar, d2: &Scalar) -> Result<usize, InterpError> {
    let bad = |m: &str| Err(InterpError::PreconditionViolated(m.into()));
    if alpha == beta {
        return bad("α = β");
    }
    if d1.is_zero() || d2.is_zero() {
        return bad("δ₁δ₂ = 0");
    }
    let cross = d1 * &d2.conj();
    let im = cross.to_complex().im;
    let real_ratio = if cross.is_exact() { (&cross - &cross.conj()).is_zero() } else { im.abs() <= FLOAT_TOL * cross.to_complex().norm() };
    if real_ratio {
        return bad("δ₁/δ₂ is real");
    }
    let shifts = [alpha.zero_like(), d1.clone(), d2.clone()];
    shifts
        .iter()
        .position(|d| norms_differ(&(alpha + d), &(beta + d)))
        .ok_or_else(|| InterpError::PreconditionViolated("no witness".into()))
}

/// Returns i with |Ψ+dᵢ|² ≠ ρ², if any.
pub fn norm_escape(psi: &Scalar, ds: &[Scalar], rho_sq: &Scalar) -> Option<usize> {
    ds.iter().position(|d| {
        let v = (psi + d).norm_sqr();
        if v.is_exact() && rho_sq.is_exact() {
            v != *rho_sq
        } else {
            !v.to_float().approx_eq(&rho_sq.to_float(), FLOAT_TOL)
        }
    })
}

/// A gate with one vertex (the hole) whose signature is varied.
#[derive(Clone, Debug, PartialEq)]
pub struct HoleGate {
    pub gate: Gate,
    pub hole: usize,
}

impl HoleGate {
    /// Starts a gate whose vertex 0 is a hole of the given arity.
    fn start(kappa: usize, arity: usize) -> Result<Self, InterpError> {
        let mut gate = Gate::new(kappa);
        let hole = gate.add_vertex_with(DenseSignature::zeros(kappa, arity)?);
        Ok(HoleGate { gate, hole })
    }

    /// The gate with `f` placed in the hole.
    pub fn fill(&self, f: &DenseSignature) -> Result<Gate, InterpError> {
        let mut g = self.gate.clone();
        let sig = g.vertices[self.hole].sig;
        let arity = g.signatures[sig].arity;
        if f.arity != arity || f.kappa != g.kappa {
            return Err(HolantError::ArityMismatch { expected: arity, got: f.arity }.into());
        }
        g.signatures[sig] = f.clone();
        Ok(g)
    }

    /// Signature of the filled gate, compressed into `ty`.
    pub fn apply(&self, f: &SuccinctSignature, ty: SuccinctType) -> Result<SuccinctSignature, InterpError> {
        let d = self.fill(&f.expand()?)?.gate_signature()?;
        Ok(compress(&d, ty)?)
    }
}

/// Probes each basis signature of `ty` through the construction. Parts
/// that are empty at this κ get an identity column.
pub fn construction_matrix(c: &HoleGate, ty: SuccinctType) -> Result<RecurrenceMatrix, InterpError> {
    let kappa = c.gate.kappa;
    let n = ty.len();
    let reps = ty.representatives(kappa);
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = vec![Scalar::zero(); n];
        e[i] = Scalar::one();
        if reps[i].is_none() {
            cols.push(e);
            continue;
        }
        let basis = SuccinctSignature::new(ty, kappa, e)?;
        cols.push(c.apply(&basis, ty)?.entries);
    }
    Ok(RecurrenceMatrix::new(kappa, Some(ty), linalg::transpose(&cols), vec![]))
}

/// N₀: the hole with its four inputs passed through.
pub fn pass_through(kappa: usize) -> Result<HoleGate, InterpError> {
    let mut c = HoleGate::start(kappa, 4)?;
    for s in 0..4 {
        c.gate.dangle((c.hole, s));
    }
    Ok(c)
}

/// One `f` vertex on the left of the hole: f's right inputs meet the
/// hole's top-left and bottom-left inputs.
pub fn coloring_construction(f: &DenseSignature) -> Result<HoleGate, InterpError> {
    let mut c = HoleGate::start(f.kappa, 4)?;
    let v = c.gate.add_vertex_with(f.clone());
    let h = c.hole;
    c.gate.dangle((v, 0));
    c.gate.dangle((v, 1));
    c.gate.dangle((h, 2));
    c.gate.dangle((h, 3));
    c.gate.connect((v, 2), (h, 1));
    c.gate.connect((v, 3), (h, 0));
    Ok(c)
}

/// The hole, rotated so its first input is bottom-left, with one `f`
/// vertex on its right.
pub fn alternate_coloring_construction(f: &DenseSignature) -> Result<HoleGate, InterpError> {
    let mut c = HoleGate::start(f.kappa, 4)?;
    let v = c.gate.add_vertex_with(f.clone());
    let h = c.hole;
    c.gate.dangle((h, 3));
    c.gate.dangle((h, 0));
    c.gate.dangle((v, 2));
    c.gate.dangle((v, 3));
    c.gate.connect((v, 0), (h, 2));
    c.gate.connect((v, 1), (h, 1));
    Ok(c)
}

/// The rotated hole between two `f` vertices, each meeting two of its inputs.
pub fn weave_construction(f: &DenseSignature) -> Result<HoleGate, InterpError> {
    let mut c = HoleGate::start(f.kappa, 4)?;
    let a = c.gate.add_vertex_with(f.clone());
    let b = c.gate.add_vertex_with(f.clone());
    let h = c.hole;
    c.gate.dangle((a, 0));
    c.gate.dangle((a, 1));
    c.gate.dangle((b, 2));
    c.gate.dangle((b, 3));
    c.gate.connect((a, 2), (h, 0));
    c.gate.connect((a, 3), (h, 3));
    c.gate.connect((b, 0), (h, 2));
    c.gate.connect((b, 1), (h, 1));
    Ok(c)
}

/// The arity-reduction gadget signature divided by (κ−2)!, i.e. ⟨0,1,1,0,0⟩.
pub fn coloring_gadget_signature(kappa: usize) -> Result<DenseSignature, InterpError> {
    let d = arity_reduction_gate(kappa)?.gate_signature()?;
    let fact: BigInt = (1..=kappa.saturating_sub(2)).map(BigInt::from).product();
    Ok(d.scale(&Scalar::from_bigint(fact).inv().expect("nonzero factorial")))
}

/// The quaternary I gadget on ⟨3(κ−1), κ−3, −3⟩ divided by κ, as a dense signature.
pub fn weave_vertex_signature(kappa: usize) -> Result<DenseSignature, InterpError> {
    let k = kappa as i64;
    let f = quaternary_i(&TernaryTriple::from_ints(kappa, 3 * (k - 1), k - 3, -3));
    Ok(f.scale(&Scalar::ratio(1, k)).expand()?)
}

/// The published weave recurrence matrix at a given κ.
pub fn weave_table(kappa: usize) -> Matrix {
    let k = BigInt::from(kappa);
    tables::WEAVE_TABLE
        .iter()
        .map(|row| row.iter().map(|c| Scalar::from_bigint(IntPoly::from_i64s(c).eval(&k))).collect())
        .collect()
}

/// The displayed 5×5 recurrence of the coloring construction.
pub fn coloring_matrix(kappa: usize) -> Matrix {
    let k = kappa as i64;
    linalg::from_ints(&[&[0, k - 1, 0, 0, 0], &[1, k - 2, 0, 0, 0], &[0, 0, 0, 1, 0], &[0, 0, 1, 0, 0], &[0, 0, 0, 0, 1]])
}

/// The displayed 5×5 recurrence of the alternate coloring construction.
pub fn alternate_coloring_matrix(kappa: usize) -> Matrix {
    let k = kappa as i64;
    linalg::from_ints(&[&[0, 0, 0, k - 1, 0], &[1, 0, 0, k - 2, 0], &[0, 1, 0, 0, 0], &[0, 0, 1, 0, 0], &[0, 0, 0, 0, 1]])
}

/// Solves Σ_y c_y (Πλ^y)^k = evals[k] over multi-indices y with |y| = n_f.
pub fn vandermonde_recover(evals: &[Scalar], lambdas: &[Scalar], n_f: usize) -> Result<Vec<(Vec<usize>, Scalar)>, InterpError> {
    let indices = multi_indices(lambdas.len(), n_f);
    let need = indices.len();
    if evals.len() < need {
        return Err(InterpError::NotEnoughEvaluations { need, got: evals.len() });
    }
    let nodes: Vec<Scalar> = indices
        .iter()
        .map(|y| lambdas.iter().zip(y).map(|(l, &e)| l.pow(e as i64).expect("nonnegative power")).product())
        .collect();
    for i in 0..need {
        for j in 0..i {
            let same = if nodes[i].is_exact() && nodes[j].is_exact() {
                nodes[i] == nodes[j]
            } else {
                nodes[i].to_float().approx_eq(&nodes[j].to_float(), FLOAT_TOL)
            };
            if same {
                return Err(InterpError::SingularVandermonde(format!("nodes {:?} and {:?} coincide", indices[j], indices[i])));
            }
        }
    }
    let row = |k: usize| -> Vec<Scalar> { nodes.iter().map(|z| z.pow(k as i64).expect("nonnegative power")).collect() };
    let a: Matrix = (0..need).map(row).collect();
    let c = linalg::solve(&a, &evals[..need]).ok_or_else(|| InterpError::SingularVandermonde("elimination failed".into()))?;
    for (k, e) in evals.iter().enumerate().skip(need) {
        let v = linalg::dot(&row(k), &c);
        let ok = if v.is_exact() && e.is_exact() { v == *e } else { v.to_float().approx_eq(&e.to_float(), 1e-8) };
        if !ok {
            return Err(InterpError::SingularVandermonde(format!("evaluation {k} is inconsistent")));
        }
    }
    Ok(indices.into_iter().zip(c).collect())
}

/// Multi-indices of length `l` summing to `n`, in lexicographic order.
pub fn multi_indices(l: usize, n: usize) -> Vec<Vec<usize>> {
    if l == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    if l == 1 {
        return vec![vec![n]];
    }
    (0..=n)
        .rev()
        .flat_map(|first| {
            multi_indices(l - 1, n - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Interpolation of Pl-Holant(G_m; ⟨2,1,0,1,0⟩) from evaluations with f_t.
#[derive(Clone, Debug, PartialEq)]
pub struct ColoringDemo {
    pub kappa: usize,
    /// (x, Holant(G_m; f_t)) with x = (κ−1)^t, t = 0, 2, …, 2n.
    pub samples: Vec<(Scalar, Scalar)>,
    /// The interpolated polynomial in x, ascending.
    pub coefficients: Vec<Scalar>,
    /// The polynomial at x = κ+1.
    pub value: Scalar,
    /// Direct evaluation of Pl-Holant(G_m; ⟨2,1,0,1,0⟩).
    pub direct: Scalar,
    /// Whether every f_t matched ⟨y+1, y, 0, 1, 0⟩.
    pub closed_form_holds: bool,
}

/// f_t = ⟨y+1, y, 0, 1, 0⟩ with y = ((κ−1)^t − 1)/κ.
pub fn coloring_closed_form(kappa: usize, t: u32) -> SuccinctSignature {
    let k = kappa as i64;
    let x = Scalar::from_bigint(BigInt::from(k - 1).pow(t));
    let y = &(&x - &Scalar::one()) / &Scalar::int(k);
    SuccinctSignature::new(SuccinctType::TauColor, kappa, vec![&y + &Scalar::one(), y, Scalar::zero(), Scalar::one(), Scalar::zero()])
        .expect("length five")
}

/// Evaluates the recursive construction on the medial graph of `g` and
/// interpolates the target value at x = κ+1.
pub fn coloring_interpolation_demo(g: &PlaneGraph, kappa: usize) -> Result<ColoringDemo, InterpError> {
    let (_, dm) = medial(g)?;
    let n = dm.n;
    let f = coloring_gadget_signature(kappa)?;
    let construction = coloring_construction(&f)?;
    // f₀ is two parallel wires: ⟨1,0,0,1,0⟩.
    let mut ft = SuccinctSignature::from_ints(SuccinctType::TauColor, kappa, &[1, 0, 0, 1, 0])?;
    let mut closed = true;
    let mut samples = Vec::with_capacity(n + 1);
    for s in 0..=n {
        let t = 2 * s as u32;
        closed &= ft == coloring_closed_form(kappa, t);
        let value = dm.grid(&ft.expand()?).holant_value()?;
        let x = Scalar::from_bigint(BigInt::from(kappa as i64 - 1).pow(t));
        samples.push((x, value));
        if s < n {
            for _ in 0..2 {
                ft = construction.apply(&ft, SuccinctType::TauColor)?;
            }
        }
    }
    let a: Matrix = samples.iter().map(|(x, _)| (0..=n).map(|j| x.pow(j as i64).expect("power")).collect()).collect();
    let b: Vec<Scalar> = samples.iter().map(|(_, v)| v.clone()).collect();
    let coefficients = linalg::solve(&a, &b).ok_or_else(|| InterpError::SingularVandermonde("repeated x".into()))?;
    let at = Scalar::int(kappa as i64 + 1);
    let value = coefficients.iter().rev().fold(Scalar::zero(), |acc, c| &(&acc * &at) + c);
    let direct = dm.grid(&eulerian_signature(kappa).expand()?).holant_value()?;
    Ok(ColoringDemo { kappa, samples, coefficients, value, direct, closed_form_holds: closed })
}

#[cfg(test)]
mod tests;
