//! Dense signature tensors over [κ]ⁿ and succinct signature types.
//!
//! Domain elements are 0-based internally; inputs are listed in the
//! declared order and tables are lexicographic with the first input most
//! significant.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::Scalar;

/// Default bound on the number of entries in a dense table (4⁷).
pub const DEFAULT_DENSE_CAP: usize = 16384;

static DENSE_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_DENSE_CAP);

pub fn set_dense_cap(cap: usize) {
    DENSE_CAP.store(cap, Ordering::Relaxed);
}

pub fn dense_cap() -> usize {
    DENSE_CAP.load(Ordering::Relaxed)
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum SigError {
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("table has {got} entries, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("signature not constant on part {part}: {first:?} vs {second:?}")]
    NotConstantOnPart { part: String, first: Vec<usize>, second: Vec<usize> },
    #[error("nonzero value on omitted part at {tuple:?}")]
    NonzeroOnOmittedPart { tuple: Vec<usize> },
    #[error("dense table of {0} entries exceeds the cap")]
    TooLarge(u128),
    #[error("domain element {value} out of range for κ = {kappa}")]
    OutOfDomain { value: usize, kappa: usize },
    #[error("unknown signature kind {0:?}")]
    UnknownKind(String),
    #[error("domain sizes differ: {0} vs {1}")]
    DomainMismatch(usize, usize),
    #[error("{0}")]
    Scalar(#[from] crate::exactnum::NumError),
}

/// A constraint function [κ]ⁿ → field, stored as a full table.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseSignature {
    pub kappa: usize,
    pub arity: usize,
    pub values: Vec<Scalar>,
}

fn table_len(kappa: usize, arity: usize) -> Result<usize, SigError> {
    let n = (kappa as u128).checked_pow(arity as u32).unwrap_or(u128::MAX);
    if n > dense_cap() as u128 {
        return Err(SigError::TooLarge(n));
    }
    Ok(n as usize)
}

/// All tuples of [κ]ⁿ in lexicographic order.
pub fn tuples(kappa: usize, arity: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = kappa.pow(arity as u32);
    (0..total).map(move |mut idx| {
        let mut t = vec![0; arity];
        for slot in t.iter_mut().rev() {
            *slot = idx % kappa;
            idx /= kappa;
        }
        t
    })
}

pub fn tuple_index(kappa: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &v| acc * kappa + v)
}

impl DenseSignature {
    pub fn new(kappa: usize, arity: usize, values: Vec<Scalar>) -> Result<Self, SigError> {
        let n = table_len(kappa, arity)?;
        if values.len() != n {
            return Err(SigError::LengthMismatch { expected: n, got: values.len() });
        }
        Ok(DenseSignature { kappa, arity, values })
    }

    pub fn from_fn(kappa: usize, arity: usize, f: impl Fn(&[usize]) -> Scalar) -> Result<Self, SigError> {
        table_len(kappa, arity)?;
        let values = tuples(kappa, arity).map(|t| f(&t)).collect();
        Ok(DenseSignature { kappa, arity, values })
    }

    pub fn zeros(kappa: usize, arity: usize) -> Result<Self, SigError> {
        Self::from_fn(kappa, arity, |_| Scalar::zero())
    }

    /// AD_{n,κ}: 1 when all inputs are distinct.
    pub fn all_distinct(kappa: usize, arity: usize) -> Result<Self, SigError> {
        Self::from_fn(kappa, arity, |t| {
            let mut s = t.to_vec();
            s.sort_unstable();
            s.dedup();
            Scalar::int((s.len() == t.len()) as i64)
        })
    }

    /// The equality signature =ₙ.
    pub fn equality(kappa: usize, arity: usize) -> Result<Self, SigError> {
        Self::from_fn(kappa, arity, |t| Scalar::int(t.iter().all(|&v| v == t[0]) as i64))
    }

    pub fn get(&self, t: &[usize]) -> &Scalar {
        &self.values[tuple_index(self.kappa, t)]
    }

    pub fn tuples(&self) -> impl Iterator<Item = Vec<usize>> {
        tuples(self.kappa, self.arity)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        DenseSignature { values: self.values.iter().map(|v| v * c).collect(), ..self.clone() }
    }

    pub fn add(&self, o: &Self) -> Result<Self, SigError> {
        self.check_shape(o)?;
        let values = self.values.iter().zip(&o.values).map(|(a, b)| a + b).collect();
        Ok(DenseSignature { values, ..self.clone() })
    }

    fn check_shape(&self, o: &Self) -> Result<(), SigError> {
        if self.kappa != o.kappa {
            return Err(SigError::DomainMismatch(self.kappa, o.kappa));
        }
        if self.arity != o.arity {
            return Err(SigError::ArityMismatch { expected: self.arity, got: o.arity });
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Scalar::is_zero)
    }

    /// Input permutation: the result's input `i` is this signature's input `perm[i]`.
    pub fn permute_inputs(&self, perm: &[usize]) -> Result<Self, SigError> {
        if perm.len() != self.arity {
            return Err(SigError::ArityMismatch { expected: self.arity, got: perm.len() });
        }
        Self::from_fn(self.kappa, self.arity, |t| {
            let mut u = vec![0; t.len()];
            for (i, &p) in perm.iter().enumerate() {
                u[p] = t[i];
            }
            self.get(&u).clone()
        })
    }

    /// `c` with `self = c · o`, if the two tables are proportional and `o` is nonzero.
    pub fn ratio_to(&self, o: &Self) -> Option<Scalar> {
        proportionality(&self.values, &o.values)
    }
}

/// `c` with `a = c · b` entrywise; `None` when `b` is zero or no such `c` exists.
pub fn proportionality(a: &[Scalar], b: &[Scalar]) -> Option<Scalar> {
    if a.len() != b.len() {
        return None;
    }
    let k = b.iter().position(|v| !v.is_zero())?;
    let c = a[k].checked(&b[k], crate::exactnum::ArithOp::Div).ok()?;
    a.iter().zip(b).all(|(x, y)| *x == y * &c).then_some(c)
}

/// The succinct types used throughout: partitions of [κ]ⁿ on which a
/// signature is constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuccinctType {
    Tau1,
    Tau2,
    Tau3,
    Tau4,
    TauColor,
    Tau4Prime,
}

/// Which part of a succinct type a tuple belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Listed(usize),
    OmittedZero,
}

const TAU4_NAMES: [&str; 9] = ["P1111", "P1112", "P1122", "P1123", "P1212", "P1213", "P1221", "P1231", "P1234"];
const COLOR_NAMES: [&str; 5] = ["P1111", "P1122", "P1212", "P1221", "P1234"];

/// Relabels a tuple by order of first appearance, e.g. (3,1,1,3) → [0,1,1,0].
pub fn pattern(t: &[usize]) -> Vec<usize> {
    let mut seen: Vec<usize> = Vec::new();
    t.iter()
        .map(|v| match seen.iter().position(|s| s == v) {
            Some(i) => i,
            None => {
                seen.push(*v);
                seen.len() - 1
            }
        })
        .collect()
}

fn distinct(t: &[usize]) -> usize {
    pattern(t).into_iter().max().map_or(0, |m| m + 1)
}

fn tau4_part(t: &[usize]) -> usize {
    match pattern(t).as_slice() {
        [0, 0, 0, 0] => 0,
        [0, 0, 0, 1] | [0, 0, 1, 0] | [0, 1, 0, 0] | [0, 1, 1, 1] => 1,
        [0, 0, 1, 1] => 2,
        [0, 0, 1, 2] | [0, 1, 2, 2] => 3,
        [0, 1, 0, 1] => 4,
        [0, 1, 0, 2] | [0, 1, 2, 1] => 5,
        [0, 1, 1, 0] => 6,
        [0, 1, 2, 0] | [0, 1, 1, 2] => 7,
        [0, 1, 2, 3] => 8,
        _ => unreachable!("patterns of length four"),
    }
}

impl SuccinctType {
    pub const ALL: [SuccinctType; 6] = [
        SuccinctType::Tau1,
        SuccinctType::Tau2,
        SuccinctType::Tau3,
        SuccinctType::Tau4,
        SuccinctType::TauColor,
        SuccinctType::Tau4Prime,
    ];

    pub fn arity(self) -> usize {
        match self {
            SuccinctType::Tau1 => 1,
            SuccinctType::Tau2 => 2,
            SuccinctType::Tau3 => 3,
            _ => 4,
        }
    }

    /// Number of listed parts (the succinct length).
    pub fn len(self) -> usize {
        self.part_names().len()
    }

    pub fn part_names(self) -> &'static [&'static str] {
        match self {
            SuccinctType::Tau1 => &["P1"],
            SuccinctType::Tau2 | SuccinctType::Tau3 => &["P1", "P2", "P3"][..self.arity()],
            SuccinctType::Tau4 => &TAU4_NAMES,
            SuccinctType::TauColor => &COLOR_NAMES,
            SuccinctType::Tau4Prime => &["P1111", "P1221"],
        }
    }

    pub fn has_omitted_part(self) -> bool {
        matches!(self, SuccinctType::TauColor | SuccinctType::Tau4Prime)
    }

    pub fn name(self) -> &'static str {
        match self {
            SuccinctType::Tau1 => "tau1",
            SuccinctType::Tau2 => "tau2",
            SuccinctType::Tau3 => "tau3",
            SuccinctType::Tau4 => "tau4",
            SuccinctType::TauColor => "tau_color",
            SuccinctType::Tau4Prime => "tau4_prime",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.name() == s)
    }

    pub fn part_of(self, t: &[usize], kappa: usize) -> Result<Part, SigError> {
        if t.len() != self.arity() {
            return Err(SigError::ArityMismatch { expected: self.arity(), got: t.len() });
        }
        if let Some(&value) = t.iter().find(|&&v| v >= kappa) {
            return Err(SigError::OutOfDomain { value, kappa });
        }
        Ok(match self {
            SuccinctType::Tau1 => Part::Listed(0),
            SuccinctType::Tau2 | SuccinctType::Tau3 => Part::Listed(distinct(t) - 1),
            SuccinctType::Tau4 => Part::Listed(tau4_part(t)),
            SuccinctType::TauColor => match tau4_part(t) {
                0 => Part::Listed(0),
                2 => Part::Listed(1),
                4 => Part::Listed(2),
                6 => Part::Listed(3),
                8 => Part::Listed(4),
                _ => Part::OmittedZero,
            },
            SuccinctType::Tau4Prime => match tau4_part(t) {
                0 => Part::Listed(0),
                6 => Part::Listed(1),
                _ => Part::OmittedZero,
            },
        })
    }

    /// Sizes of the listed parts followed by the omitted part (0 if none).
    pub fn part_sizes(self, kappa: usize) -> Vec<u64> {
        let mut sizes = vec![0u64; self.len() + 1];
        for t in tuples(kappa, self.arity()) {
            match self.part_of(&t, kappa).expect("valid tuple") {
                Part::Listed(i) => sizes[i] += 1,
                Part::OmittedZero => sizes[self.len()] += 1,
            }
        }
        sizes
    }

    /// A tuple in each listed part, `None` for parts empty at this κ.
    pub fn representatives(self, kappa: usize) -> Vec<Option<Vec<usize>>> {
        let mut reps = vec![None; self.len()];
        for t in tuples(kappa, self.arity()) {
            if let Ok(Part::Listed(i)) = self.part_of(&t, kappa) {
                if reps[i].is_none() {
                    reps[i] = Some(t);
                }
            }
        }
        reps
    }
}

impl fmt::Display for SuccinctType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One value per listed part; entries on parts that are empty at this κ are 0.
#[derive(Clone, Debug, PartialEq)]
pub struct SuccinctSignature {
    pub ty: SuccinctType,
    pub kappa: usize,
    pub entries: Vec<Scalar>,
}

impl SuccinctSignature {
    pub fn new(ty: SuccinctType, kappa: usize, entries: Vec<Scalar>) -> Result<Self, SigError> {
        if entries.len() != ty.len() {
            return Err(SigError::LengthMismatch { expected: ty.len(), got: entries.len() });
        }
        let reps = ty.representatives(kappa);
        let entries = entries
            .into_iter()
            .zip(reps)
            .map(|(e, r)| if r.is_some() { e } else { e.zero_like() })
            .collect();
        Ok(SuccinctSignature { ty, kappa, entries })
    }

    pub fn from_ints(ty: SuccinctType, kappa: usize, entries: &[i64]) -> Result<Self, SigError> {
        Self::new(ty, kappa, entries.iter().map(|&v| Scalar::int(v)).collect())
    }

    /// Indices of listed parts that are empty at this κ.
    pub fn empty_parts(&self) -> Vec<usize> {
        self.ty
            .representatives(self.kappa)
            .iter()
            .enumerate()
            .filter(|(_, r)| r.is_none())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn expand(&self) -> Result<DenseSignature, SigError> {
        let ty = self.ty;
        let zero = self.entries.first().map(Scalar::zero_like).unwrap_or_else(Scalar::zero);
        DenseSignature::from_fn(self.kappa, ty.arity(), |t| match ty.part_of(t, self.kappa).expect("in range") {
            Part::Listed(i) => self.entries[i].clone(),
            Part::OmittedZero => zero.clone(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        SuccinctSignature { entries: self.entries.iter().map(|v| v * c).collect(), ..self.clone() }
    }

    pub fn add(&self, o: &Self) -> Result<Self, SigError> {
        if self.ty != o.ty {
            return Err(SigError::UnknownKind(format!("{} + {}", self.ty, o.ty)));
        }
        if self.kappa != o.kappa {
            return Err(SigError::DomainMismatch(self.kappa, o.kappa));
        }
        let entries = self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect();
        Ok(SuccinctSignature { entries, ..self.clone() })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// `c` with `self = c · o`.
    pub fn ratio_to(&self, o: &Self) -> Option<Scalar> {
        if self.ty != o.ty {
            return None;
        }
        proportionality(&self.entries, &o.entries)
    }

    /// Re-expresses the signature in another succinct type.
    pub fn convert(&self, ty: SuccinctType) -> Result<Self, SigError> {
        compress(&self.expand()?, ty)
    }
}

impl fmt::Display for SuccinctSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "⟨{}⟩", parts.join(","))
    }
}

/// Inverse of `expand`: succeeds iff `d` is constant on every listed part
/// and zero on the omitted part.
pub fn compress(d: &DenseSignature, ty: SuccinctType) -> Result<SuccinctSignature, SigError> {
    if d.arity != ty.arity() {
        return Err(SigError::ArityMismatch { expected: ty.arity(), got: d.arity });
    }
    let mut first: Vec<Option<Vec<usize>>> = vec![None; ty.len()];
    for (t, v) in d.tuples().zip(&d.values) {
        match ty.part_of(&t, d.kappa)? {
            Part::Listed(i) => match &first[i] {
                None => first[i] = Some(t),
                Some(w) => {
                    if d.get(w) != v {
                        return Err(SigError::NotConstantOnPart {
                            part: ty.part_names()[i].to_string(),
                            first: w.clone(),
                            second: t,
                        });
                    }
                }
            },
            Part::OmittedZero => {
                if !v.is_zero() {
                    return Err(SigError::NonzeroOnOmittedPart { tuple: t });
                }
            }
        }
    }
    let zero = d.values.first().map(Scalar::zero_like).unwrap_or_else(Scalar::zero);
    let entries = first.iter().map(|w| w.as_ref().map_or(zero.clone(), |w| d.get(w).clone())).collect();
    SuccinctSignature::new(ty, d.kappa, entries)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub symmetric: bool,
    pub domain_invariant: bool,
}

/// Checks invariance under adjacent input transpositions and under the
/// generators (0 1), (0 1 … κ−1) of the domain permutations.
pub fn symmetry_report(d: &DenseSignature) -> SymmetryReport {
    let n = d.arity;
    let k = d.kappa;
    let symmetric = (0..n.saturating_sub(1)).all(|i| {
        d.tuples().all(|t| {
            let mut u = t.clone();
            u.swap(i, i + 1);
            d.get(&t) == d.get(&u)
        })
    });
    let gens: Vec<Box<dyn Fn(usize) -> usize>> = vec![
        Box::new(|v| match v {
            0 => 1,
            1 => 0,
            v => v,
        }),
        Box::new(move |v| (v + 1) % k),
    ];
    let domain_invariant = k < 2
        || gens.iter().all(|g| {
            d.tuples().all(|t| {
                let u: Vec<usize> = t.iter().map(|&v| g(v)).collect();
                d.get(&t) == d.get(&u)
            })
        });
    SymmetryReport { symmetric, domain_invariant }
}

/// JSON signature descriptor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignatureDescriptor {
    pub kind: String,
    #[serde(default)]
    pub arity: Option<usize>,
    pub values: Vec<Scalar>,
}

impl SignatureDescriptor {
    pub fn from_succinct(s: &SuccinctSignature) -> Self {
        SignatureDescriptor { kind: s.ty.name().into(), arity: Some(s.ty.arity()), values: s.entries.clone() }
    }

    pub fn from_dense(d: &DenseSignature) -> Self {
        SignatureDescriptor { kind: "dense".into(), arity: Some(d.arity), values: d.values.clone() }
    }

    pub fn to_dense(&self, kappa: usize) -> Result<DenseSignature, SigError> {
        if self.kind == "dense" {
            let arity = match self.arity {
                Some(a) => a,
                None => infer_arity(kappa, self.values.len())?,
            };
            return DenseSignature::new(kappa, arity, self.values.clone());
        }
        let ty = SuccinctType::from_name(&self.kind).ok_or_else(|| SigError::UnknownKind(self.kind.clone()))?;
        if let Some(a) = self.arity {
            if a != ty.arity() {
                return Err(SigError::ArityMismatch { expected: ty.arity(), got: a });
            }
        }
        SuccinctSignature::new(ty, kappa, self.values.clone())?.expand()
    }
}

fn infer_arity(kappa: usize, len: usize) -> Result<usize, SigError> {
    let mut n = 1usize;
    for a in 0..=32 {
        if n == len {
            return Ok(a);
        }
        n = n.saturating_mul(kappa);
    }
    Err(SigError::LengthMismatch { expected: 0, got: len })
}
