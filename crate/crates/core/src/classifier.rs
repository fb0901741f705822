//! The complexity dichotomy for Holant(⟨a,b,c⟩): a tractable case with an
//! evaluator witness, or #P-hard with an informational reduction route.
//!
//! All case tests are polynomial identities with integer coefficients, so
//! exact inputs are decided exactly. Float inputs are tested against a
//! relative tolerance and the verdict is flagged approximate.

use std::fmt;

use thiserror::Error;

use crate::exactnum::{Scalar, FLOAT_TOL};
use crate::gadgets::{local_holo, TernaryTriple, TransformMatrix};
use crate::holant::{HolantError, SignatureGrid};
use crate::signatures::{compress, SuccinctType};
use crate::tractable::{
    eval_a3c3, eval_equality, eval_gp, eval_hadamard_k4, untransform, GPDecomposition, Method,
    TractableError,
};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum ClassifyError {
    #[error("domain size must be at least 3, got {0}")]
    KappaTooSmall(usize),
    #[error("signature {0} is not a symmetric domain-invariant ternary signature")]
    NotTernary(usize),
    #[error("signature {0} is #P-hard")]
    Hard(usize),
    #[error("signatures fall in different tractable families")]
    MixedFamilies,
    #[error("signature {0} has no generalized-permutation decomposition")]
    NoDecomposition(usize),
    #[error("approximate verdicts cannot select an exact evaluator")]
    Approximate,
    #[error(transparent)]
    Tractable(#[from] TractableError),
    #[error(transparent)]
    Holant(#[from] HolantError),
}

/// The discriminants (𝔄, 𝔅, ℭ).
#[derive(Clone, Debug, PartialEq)]
pub struct Discriminants {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
}

pub fn discriminants(kappa: usize, a: &Scalar, b: &Scalar, c: &Scalar) -> Discriminants {
    let t = TernaryTriple::new(kappa, a.clone(), b.clone(), c.clone());
    Discriminants { a: t.disc_a(), b: t.disc_b(), c: t.disc_c() }
}

/// How a tractable signature is evaluated.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// Case 1: a·𝟏^{⊗3}.
    Constant(Scalar),
    /// Case 2: ⟨a,b,a⟩ on κ = 3.
    OmegaForm { a: Scalar, b: Scalar },
    /// Case 3: λ(=₃).
    Equality(Scalar),
    /// Case 3: (κI − 2J)^{⊗3} λ(=₃).
    TImage(Scalar),
    /// Case 4: ⟨a,0,c⟩ with a³ = c³, after undoing `transform` if present.
    AffineZ3 { transform: Option<TransformMatrix> },
    /// Case 5: λ⟨μ²,1,μ⟩, after undoing `transform` if present.
    Hadamard { transform: Option<TransformMatrix> },
}

impl Witness {
    pub fn method(&self) -> Method {
        match self {
            Witness::Constant(_) | Witness::OmegaForm { .. } | Witness::TImage(_) => Method::Gp,
            Witness::Equality(_) => Method::Equality,
            Witness::AffineZ3 { .. } => Method::AffineZ3,
            Witness::Hadamard { .. } => Method::HadamardK4,
        }
    }

    pub fn is_transformed(&self) -> bool {
        matches!(self, Witness::AffineZ3 { transform: Some(_) } | Witness::Hadamard { transform: Some(_) })
    }

    /// Signatures with equal keys can share one evaluator call.
    fn family(&self) -> (u8, bool) {
        let kind = match self {
            Witness::Constant(_) => 0,
            Witness::OmegaForm { .. } => 1,
            Witness::Equality(_) => 2,
            Witness::TImage(_) => 3,
            Witness::AffineZ3 { .. } => 4,
            Witness::Hadamard { .. } => 5,
        };
        (kind, self.is_transformed())
    }

    pub fn decomposition(&self, kappa: usize) -> Option<GPDecomposition> {
        match self {
            Witness::Constant(a) => Some(GPDecomposition::constant(kappa, a.clone())),
            Witness::OmegaForm { a, b } => Some(GPDecomposition::omega_form(a, b)),
            Witness::Equality(l) => Some(GPDecomposition::equality(kappa, l.clone())),
            Witness::TImage(l) => Some(GPDecomposition::t_image(kappa, l.clone())),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Witness::Constant(a) => format!("{a}·𝟏^⊗3"),
            Witness::OmegaForm { a, b } => format!("⟨{a},{b},{a}⟩ over (1,ω,ω²)"),
            Witness::Equality(l) => format!("{l}·(=₃)"),
            Witness::TImage(l) => format!("(κI−2J)^⊗3 {l}·(=₃)"),
            Witness::AffineZ3 { transform: None } => "⟨a,0,c⟩ with a³ = c³".into(),
            Witness::AffineZ3 { transform: Some(_) } => "(3I−2J)^⊗3 ⟨a,0,c⟩ with a³ = c³".into(),
            Witness::Hadamard { transform: None } => "λ⟨μ²,1,μ⟩, μ = −1 ± 2i".into(),
            Witness::Hadamard { transform: Some(_) } => "(4I−2J)^⊗3 λ⟨μ²,1,μ⟩, μ = −1 ± 2i".into(),
        }
    }
}

/// The branch of the hardness argument that applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HardRoute {
    /// a + (κ−1)b = 0 and b² − 4bc − (κ−3)c² = 0: ⟨1⟩ cannot be built.
    AdLike,
    /// Proportional to ⟨(κ−1)(κ−2), −(κ−2), 2⟩: ⟨1⟩ cannot be built.
    DifferentDomain,
    /// 𝔅 = 0: binary interpolation fails.
    BZero,
    /// 𝔄 = 0: ⟨a,b,b⟩ with a ≠ b cannot be built.
    AZero,
    Generic,
}

impl HardRoute {
    pub fn name(self) -> &'static str {
        match self {
            HardRoute::AdLike => "ad-like",
            HardRoute::DifferentDomain => "different-domain",
            HardRoute::BZero => "b-zero",
            HardRoute::AZero => "a-zero",
            HardRoute::Generic => "generic",
        }
    }

    pub fn steps(self) -> Vec<&'static str> {
        match self {
            HardRoute::AdLike => vec![
                "construct ⟨1⟩: fails (AD-like)",
                "unary dichotomy for AD-like signatures",
                "counting weighted Eulerian partitions",
            ],
            HardRoute::DifferentDomain => vec![
                "construct ⟨1⟩: fails (⟨(κ−1)(κ−2),−(κ−2),2⟩ family)",
                "reduce to an AD-like signature",
                "counting weighted Eulerian partitions",
            ],
            HardRoute::BZero => vec![
                "construct ⟨1⟩",
                "interpolate all ⟨x,y⟩: fails (𝔅 = 0)",
                "unary dichotomy for 𝔅 = 0",
                "reduce through the ⟨(κ−1)(κ−2),−(κ−2),2⟩ family",
                "counting weighted Eulerian partitions",
            ],
            HardRoute::AZero => vec![
                "construct ⟨1⟩",
                "interpolate all ⟨x,y⟩",
                "construct ⟨a,b,b⟩ with a ≠ b: fails (𝔄 = 0)",
                "construct ⟨3(κ−1),κ−3,−3⟩",
                "counting weighted Eulerian partitions",
            ],
            HardRoute::Generic => vec![
                "construct ⟨1⟩",
                "interpolate all ⟨x,y⟩",
                "construct ⟨a,b,b⟩ with a ≠ b",
                "interpolate (=₄) with the Fischer gadget",
                "counting vertex κ-colorings",
            ],
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Tractable { case: u8, witness: Witness },
    Hard { route: HardRoute },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub kappa: usize,
    pub discriminants: Discriminants,
    pub approximate: bool,
    pub outcome: Outcome,
}

impl Verdict {
    pub fn is_tractable(&self) -> bool {
        matches!(self.outcome, Outcome::Tractable { .. })
    }

    pub fn case(&self) -> Option<u8> {
        match self.outcome {
            Outcome::Tractable { case, .. } => Some(case),
            Outcome::Hard { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.outcome {
            Outcome::Tractable { witness, .. } => Some(witness),
            Outcome::Hard { .. } => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Outcome::Tractable { case, witness } => {
                write!(f, "Tractable (case {case}, {}: {})", witness.method().name(), witness.describe())?
            }
            Outcome::Hard { route } => write!(f, "#P-hard ({} route)", route.name())?,
        }
        if self.approximate {
            write!(f, " [approximate]")?;
        }
        Ok(())
    }
}

/// Zero tests for homogeneous polynomials in (a,b,c).
struct Tester {
    approximate: bool,
    norm: f64,
    kappa: f64,
}

impl Tester {
    fn new(kappa: usize, xs: &[&Scalar]) -> Self {
        let approximate = xs.iter().any(|x| !x.is_exact());
        let norm = xs.iter().map(|x| x.to_complex().norm()).fold(0.0, f64::max);
        Tester { approximate, norm, kappa: kappa as f64 }
    }

    /// Whether `x`, homogeneous of degree `deg` in the inputs, vanishes.
    fn zero(&self, x: &Scalar, deg: i32) -> bool {
        if !self.approximate {
            return x.is_zero();
        }
        let scale = (self.norm * (1.0 + self.kappa).powi(2)).powi(deg).max(f64::MIN_POSITIVE);
        x.to_complex().norm() <= FLOAT_TOL * scale
    }

    fn eq(&self, x: &Scalar, y: &Scalar, deg: i32) -> bool {
        self.zero(&(x - y), deg)
    }
}

fn n(t: &Scalar, v: i64) -> Scalar {
    t.int_like(v)
}

fn case3(ts: &Tester, k: i64, a: &Scalar, b: &Scalar, c: &Scalar) -> Option<Witness> {
    if ts.zero(b, 1) && ts.zero(c, 1) {
        return Some(Witness::Equality(a.clone()));
    }
    let lin = &(n(b, 2) * b) + &(n(b, k - 2) * c);
    let quad = &(n(a, 4) * a) - &(n(a, k * k - 6 * k + 4) * c);
    if ts.zero(&lin, 1) && ts.zero(&quad, 1) {
        // The image of λ(=₃) is λ⟨κ(κ²−6κ+4), −2κ(κ−2), 4κ⟩.
        let lambda = c / &n(c, 4 * k);
        return Some(Witness::TImage(lambda));
    }
    None
}

fn a3c3(ts: &Tester, a: &Scalar, b: &Scalar, c: &Scalar) -> bool {
    let cube = |x: &Scalar| x.pow(3).expect("nonnegative power");
    ts.zero(b, 1) && ts.eq(&cube(a), &cube(c), 3)
}

fn hadamard(ts: &Tester, a: &Scalar, b: &Scalar, c: &Scalar) -> bool {
    let lin = a + &(&(n(b, 5) * b) + &(n(c, 2) * c));
    let quad = &(&(n(b, 5) * &(b * b)) + &(n(b, 2) * &(b * c))) + &(c * c);
    ts.zero(&lin, 1) && ts.zero(&quad, 2)
}

/// The image under (κI − 2J)^{⊗3}, i.e. the local binary ⟨κ−2, −2⟩.
fn t_image(t: &TernaryTriple) -> (Scalar, Scalar, Scalar) {
    let k = t.kappa as i64;
    let s = local_holo(t, &(n(&t.a, k - 2), n(&t.a, -2)));
    (s.entries[0].clone(), s.entries[1].clone(), s.entries[2].clone())
}

pub fn classify(kappa: usize, a: &Scalar, b: &Scalar, c: &Scalar) -> Result<Verdict, ClassifyError> {
    if kappa < 3 {
        return Err(ClassifyError::KappaTooSmall(kappa));
    }
    let t = TernaryTriple::new(kappa, a.clone(), b.clone(), c.clone());
    let (a, b, c) = (&t.a, &t.b, &t.c);
    let k = kappa as i64;
    let ts = Tester::new(kappa, &[a, b, c]);
    let discriminants = Discriminants { a: t.disc_a(), b: t.disc_b(), c: t.disc_c() };
    let verdict = |outcome| Verdict { kappa, discriminants: discriminants.clone(), approximate: ts.approximate, outcome };
    let tractable = |case, witness| Ok(verdict(Outcome::Tractable { case, witness }));

    if ts.eq(a, b, 1) && ts.eq(b, c, 1) {
        return tractable(1, Witness::Constant(a.clone()));
    }
    if kappa == 3 && ts.eq(a, c, 1) {
        return tractable(2, Witness::OmegaForm { a: a.clone(), b: b.clone() });
    }
    if let Some(w) = case3(&ts, k, a, b, c) {
        return tractable(3, w);
    }
    if kappa == 3 {
        if a3c3(&ts, a, b, c) {
            return tractable(4, Witness::AffineZ3 { transform: None });
        }
        let (ia, ib, ic) = t_image(&t);
        if a3c3(&Tester::new(kappa, &[&ia, &ib, &ic]), &ia, &ib, &ic) {
            return tractable(4, Witness::AffineZ3 { transform: Some(TransformMatrix::special_t(3)) });
        }
    }
    if kappa == 4 {
        if hadamard(&ts, a, b, c) {
            return tractable(5, Witness::Hadamard { transform: None });
        }
        let (ia, ib, ic) = t_image(&t);
        if hadamard(&Tester::new(kappa, &[&ia, &ib, &ic]), &ia, &ib, &ic) {
            return tractable(5, Witness::Hadamard { transform: Some(TransformMatrix::special_t(4)) });
        }
    }
    Ok(verdict(Outcome::Hard { route: hard_route(&ts, &t, &discriminants) }))
}

fn hard_route(ts: &Tester, t: &TernaryTriple, d: &Discriminants) -> HardRoute {
    let k = t.kappa as i64;
    let (a, b, c) = (&t.a, &t.b, &t.c);
    let ad1 = a + &(n(b, k - 1) * b);
    let ad2 = &(&(b * b) - &(n(b, 4) * &(b * c))) - &(n(c, k - 3) * &(c * c));
    if ts.zero(&ad1, 1) && ts.zero(&ad2, 2) {
        return HardRoute::AdLike;
    }
    let dd1 = &(n(a, 2) * a) - &(n(c, (k - 1) * (k - 2)) * c);
    let dd2 = &(n(b, 2) * b) + &(n(c, k - 2) * c);
    if !ts.zero(c, 1) && ts.zero(&dd1, 1) && ts.zero(&dd2, 1) {
        return HardRoute::DifferentDomain;
    }
    if ts.zero(&d.b, 1) {
        return HardRoute::BZero;
    }
    if ts.zero(&d.a, 1) {
        return HardRoute::AZero;
    }
    HardRoute::Generic
}

/// One decomposition per signature for `eval_gp`, from the classifier's
/// witnesses. Arity-0 signatures get a copy of the first decomposition.
pub fn gp_decompositions(grid: &SignatureGrid) -> Result<Vec<GPDecomposition>, ClassifyError> {
    let mut decs: Vec<Option<GPDecomposition>> = Vec::with_capacity(grid.signatures.len());
    for (i, d) in grid.signatures.iter().enumerate() {
        if d.arity == 0 {
            decs.push(None);
            continue;
        }
        let s = compress(d, SuccinctType::Tau3).map_err(|_| ClassifyError::NotTernary(i))?;
        let v = classify(grid.kappa, &s.entries[0], &s.entries[1], &s.entries[2])?;
        let dec = v.witness().and_then(|w| w.decomposition(grid.kappa)).ok_or(ClassifyError::NoDecomposition(i))?;
        decs.push(Some(dec));
    }
    let filler = decs.iter().flatten().next().cloned().unwrap_or_else(|| GPDecomposition::equality(grid.kappa, Scalar::one()));
    Ok(decs.into_iter().map(|d| d.unwrap_or_else(|| filler.clone())).collect())
}

/// Evaluates a closed grid whose signatures of positive arity are all
/// tractable ternary signatures of one family. Returns the value and the
/// method used.
pub fn eval_tractable(grid: &SignatureGrid) -> Result<(Scalar, Method), ClassifyError> {
    let mut witnesses: Vec<Option<Witness>> = Vec::with_capacity(grid.signatures.len());
    for (i, d) in grid.signatures.iter().enumerate() {
        if d.arity == 0 {
            witnesses.push(None);
            continue;
        }
        if d.arity != 3 {
            return Err(ClassifyError::NotTernary(i));
        }
        let s = compress(d, SuccinctType::Tau3).map_err(|_| ClassifyError::NotTernary(i))?;
        let v = classify(grid.kappa, &s.entries[0], &s.entries[1], &s.entries[2])?;
        if v.approximate {
            return Err(ClassifyError::Approximate);
        }
        match v.outcome {
            Outcome::Tractable { witness, .. } => witnesses.push(Some(witness)),
            Outcome::Hard { .. } => return Err(ClassifyError::Hard(i)),
        }
    }
    let present: Vec<&Witness> = witnesses.iter().flatten().collect();
    let Some(first) = present.first() else {
        return Ok((eval_equality(grid)?, Method::Equality));
    };
    if present.iter().any(|w| w.family() != first.family()) {
        return Err(ClassifyError::MixedFamilies);
    }
    let value = match first {
        Witness::Equality(_) => eval_equality(grid)?,
        Witness::Constant(_) | Witness::OmegaForm { .. } | Witness::TImage(_) => {
            let filler = first.decomposition(grid.kappa).expect("gp witness");
            let decs: Vec<GPDecomposition> = witnesses
                .iter()
                .map(|w| w.as_ref().and_then(|w| w.decomposition(grid.kappa)).unwrap_or_else(|| filler.clone()))
                .collect();
            eval_gp(grid, &decs)?
        }
        Witness::AffineZ3 { transform } => {
            let t = transform.clone().unwrap_or_else(|| TransformMatrix::identity(3));
            eval_a3c3(grid, &t)?
        }
        Witness::Hadamard { transform: None } => eval_hadamard_k4(grid)?,
        Witness::Hadamard { transform: Some(t) } => {
            let (g, factor) = untransform(grid, t)?;
            &factor * &eval_hadamard_k4(&g)?
        }
    };
    Ok((value, first.method()))
}

/// The tractable evaluator when one applies, otherwise brute force within `cap` terms.
pub fn eval_auto(grid: &SignatureGrid, cap: u128) -> Result<(Scalar, Method), ClassifyError> {
    match eval_tractable(grid) {
        Ok(r) => Ok(r),
        Err(ClassifyError::Tractable(e)) => Err(e.into()),
        Err(_) => Ok((grid.holant_value_capped(cap)?, Method::Brute)),
    }
}
