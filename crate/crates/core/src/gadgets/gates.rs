//! Gates for the closed forms, so each formula can be checked by brute force.

use std::fmt;

use super::{
    anti_gadget, binary, binary_parallel, composed_binary, fischer_gadget, local_holo, quaternary_i, ternary_triangle,
    unary_gadget, GadgetError, Shape, TernaryTriple, UnaryVariant,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactnum::Scalar;
use crate::holant::{Gate, SignatureGrid};
use crate::signatures::{SuccinctSignature, SuccinctType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GadgetKind {
    UnarySelfLoop,
    UnaryWithBinary,
    UnaryTriple,
    Parallel,
    QuaternaryI,
    Triangle,
    LocalHolo,
    AntiGadget,
    Diamond,
    Square,
    Fischer,
}

impl GadgetKind {
    pub const ALL: [GadgetKind; 11] = [
        GadgetKind::UnarySelfLoop,
        GadgetKind::UnaryWithBinary,
        GadgetKind::UnaryTriple,
        GadgetKind::Parallel,
        GadgetKind::QuaternaryI,
        GadgetKind::Triangle,
        GadgetKind::LocalHolo,
        GadgetKind::AntiGadget,
        GadgetKind::Diamond,
        GadgetKind::Square,
        GadgetKind::Fischer,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GadgetKind::UnarySelfLoop => "unary-self-loop",
            GadgetKind::UnaryWithBinary => "unary-binary",
            GadgetKind::UnaryTriple => "unary-triple",
            GadgetKind::Parallel => "parallel",
            GadgetKind::QuaternaryI => "quaternary-i",
            GadgetKind::Triangle => "triangle",
            GadgetKind::LocalHolo => "local-holo",
            GadgetKind::AntiGadget => "anti-gadget",
            GadgetKind::Diamond => "diamond",
            GadgetKind::Square => "square",
            GadgetKind::Fischer => "fischer",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    /// Number of binary signatures ⟨x,y⟩ the gadget takes besides ⟨a,b,c⟩.
    pub fn n_binaries(self) -> usize {
        match self {
            GadgetKind::UnaryWithBinary | GadgetKind::LocalHolo => 1,
            GadgetKind::AntiGadget => 2,
            _ => 0,
        }
    }

    pub fn output_type(self) -> SuccinctType {
        match self {
            GadgetKind::UnarySelfLoop | GadgetKind::UnaryWithBinary | GadgetKind::UnaryTriple => SuccinctType::Tau1,
            GadgetKind::Parallel | GadgetKind::AntiGadget | GadgetKind::Diamond | GadgetKind::Square => {
                SuccinctType::Tau2
            }
            GadgetKind::Triangle | GadgetKind::LocalHolo => SuccinctType::Tau3,
            GadgetKind::QuaternaryI | GadgetKind::Fischer => SuccinctType::Tau4,
        }
    }
}

impl fmt::Display for GadgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn need(kind: GadgetKind, binaries: &[(Scalar, Scalar)]) -> Result<(), GadgetError> {
    if binaries.len() < kind.n_binaries() {
        return Err(GadgetError::PreconditionViolated(format!(
            "{kind} needs {} binary signature(s), got {}",
            kind.n_binaries(),
            binaries.len()
        )));
    }
    Ok(())
}

/// The closed-form succinct signature.
pub fn closed_form(
    kind: GadgetKind,
    t: &TernaryTriple,
    binaries: &[(Scalar, Scalar)],
) -> Result<SuccinctSignature, GadgetError> {
    need(kind, binaries)?;
    Ok(match kind {
        GadgetKind::UnarySelfLoop => unary_gadget(t, &UnaryVariant::SelfLoop)?,
        GadgetKind::UnaryWithBinary => {
            unary_gadget(t, &UnaryVariant::WithBinary(binaries[0].0.clone(), binaries[0].1.clone()))?
        }
        GadgetKind::UnaryTriple => unary_gadget(t, &UnaryVariant::Triple)?,
        GadgetKind::Parallel => binary_parallel(t),
        GadgetKind::QuaternaryI => quaternary_i(t),
        GadgetKind::Triangle => ternary_triangle(t),
        GadgetKind::LocalHolo => local_holo(t, &binaries[0]),
        GadgetKind::AntiGadget => anti_gadget(t, &binaries[0], &binaries[1]),
        GadgetKind::Diamond => composed_binary(t, Shape::Diamond),
        GadgetKind::Square => composed_binary(t, Shape::Square),
        GadgetKind::Fischer => fischer_gadget(t)?,
    })
}

/// The gate drawn for the gadget, with ⟨a,b,c⟩ on every ternary vertex.
pub fn build_gate(kind: GadgetKind, t: &TernaryTriple, binaries: &[(Scalar, Scalar)]) -> Result<Gate, GadgetError> {
    need(kind, binaries)?;
    let mut g = SignatureGrid::new(t.kappa);
    let tern = g.add_signature(t.dense()?);
    let bin = |g: &mut SignatureGrid, xy: &(Scalar, Scalar)| -> Result<usize, GadgetError> {
        let d = binary(t.kappa, xy.0.clone(), xy.1.clone()).expand()?;
        Ok(g.add_vertex_with(d))
    };
    match kind {
        GadgetKind::UnarySelfLoop => {
            let v = g.add_vertex(tern);
            g.dangle((v, 0));
            g.connect((v, 1), (v, 2));
        }
        GadgetKind::UnaryWithBinary => {
            let v = g.add_vertex(tern);
            let s = bin(&mut g, &binaries[0])?;
            g.dangle((v, 0));
            g.connect((v, 1), (s, 0));
            g.connect((v, 2), (s, 1));
        }
        GadgetKind::UnaryTriple => {
            let [v1, v2, v3] = [0; 3].map(|_| g.add_vertex(tern));
            g.dangle((v1, 0));
            g.connect((v1, 1), (v2, 0));
            g.connect((v1, 2), (v3, 0));
            g.connect((v2, 1), (v3, 2));
            g.connect((v2, 2), (v3, 1));
        }
        GadgetKind::Parallel => {
            let [u, v] = [0; 2].map(|_| g.add_vertex(tern));
            g.dangle((u, 0));
            g.connect((u, 1), (v, 2));
            g.connect((u, 2), (v, 1));
            g.dangle((v, 0));
        }
        GadgetKind::QuaternaryI => {
            let [top, bot] = [0; 2].map(|_| g.add_vertex(tern));
            g.dangle((top, 0));
            g.dangle((bot, 0));
            g.dangle((bot, 1));
            g.dangle((top, 1));
            g.connect((top, 2), (bot, 2));
        }
        GadgetKind::Triangle => {
            let vs = [0; 3].map(|_| g.add_vertex(tern));
            for &v in &vs {
                g.dangle((v, 0));
            }
            for i in 0..3 {
                g.connect((vs[i], 1), (vs[(i + 1) % 3], 2));
            }
        }
        GadgetKind::LocalHolo => {
            let c = g.add_vertex(tern);
            for slot in 0..3 {
                let s = bin(&mut g, &binaries[0])?;
                g.connect((c, slot), (s, 0));
                g.dangle((s, 1));
            }
        }
        GadgetKind::AntiGadget => {
            let [l, r] = [0; 2].map(|_| g.add_vertex(tern));
            let s1 = bin(&mut g, &binaries[0])?;
            let s2 = bin(&mut g, &binaries[1])?;
            g.dangle((l, 0));
            g.connect((l, 1), (s1, 0));
            g.connect((s1, 1), (r, 2));
            g.connect((l, 2), (s2, 0));
            g.connect((s2, 1), (r, 1));
            g.dangle((r, 0));
        }
        GadgetKind::Diamond => {
            let [l, top, bot, r] = [0; 4].map(|_| g.add_vertex(tern));
            g.dangle((l, 0));
            g.connect((l, 1), (top, 0));
            g.connect((l, 2), (bot, 0));
            g.connect((top, 2), (bot, 1));
            g.connect((top, 1), (r, 2));
            g.connect((bot, 2), (r, 1));
            g.dangle((r, 0));
        }
        GadgetKind::Square => {
            // Left triangle (p, q, u) and right triangle (p', q', u'); u and u'
            // carry the dangling edges, p–p' and q–q' are the parallel pair.
            let [p, q, u, p2, q2, u2] = [0; 6].map(|_| g.add_vertex(tern));
            g.dangle((u, 0));
            g.connect((u, 1), (p, 0));
            g.connect((u, 2), (q, 0));
            g.connect((p, 2), (q, 1));
            g.connect((p, 1), (p2, 0));
            g.connect((q, 2), (q2, 0));
            g.connect((p2, 1), (q2, 1));
            g.connect((p2, 2), (u2, 1));
            g.connect((q2, 2), (u2, 2));
            g.dangle((u2, 0));
        }
        GadgetKind::Fischer => {
            let [top, bot] = [0; 2].map(|_| g.add_vertex(tern));
            let k1 = t.k(1 - t.kappa as i64);
            let s = bin(&mut g, &(k1.clone(), k1.one_like()))?;
            g.dangle((top, 0));
            g.dangle((bot, 0));
            g.dangle((bot, 1));
            g.dangle((top, 1));
            g.connect((top, 2), (s, 0));
            g.connect((bot, 2), (s, 1));
        }
    }
    Ok(g)
}

/// A closed form next to its brute-force value.
#[derive(Clone, Debug, PartialEq)]
pub struct GadgetReport {
    pub kind: GadgetKind,
    pub closed: SuccinctSignature,
    pub oracle: SuccinctSignature,
    pub agrees: bool,
}

/// Evaluates the gate and compares with the closed form. With `full`, every
/// dangling labeling is evaluated (which also checks the succinct type);
/// otherwise one representative per part.
pub fn check(
    kind: GadgetKind,
    t: &TernaryTriple,
    binaries: &[(Scalar, Scalar)],
    full: bool,
) -> Result<GadgetReport, GadgetError> {
    let closed = closed_form(kind, t, binaries)?;
    let gate = build_gate(kind, t, binaries)?;
    let ty = kind.output_type();
    let oracle = if full { gate.gate_succinct(ty)? } else { gate.gate_succinct_unchecked(ty)? };
    let agrees = closed == oracle;
    Ok(GadgetReport { kind, closed, oracle, agrees })
}

/// A Gaussian rational with small random numerators and denominators.
pub fn random_gaussian_rational(rng: &mut impl Rng) -> Scalar {
    let q = |rng: &mut dyn rand::RngCore| BigRational::new(BigInt::from(rng.gen_range(-5i64..=5)), BigInt::from(rng.gen_range(1i64..=4)));
    Scalar::Gaussian(q(rng), q(rng))
}

/// Random inputs for `kind`, meeting its preconditions.
pub fn random_instance(kind: GadgetKind, kappa: usize, rng: &mut impl Rng) -> (TernaryTriple, Vec<(Scalar, Scalar)>) {
    let mut r = || random_gaussian_rational(rng);
    let (a, b, c) = (r(), r(), r());
    let t = match kind {
        GadgetKind::UnaryTriple => TernaryTriple::new(kappa, -(Scalar::int(kappa as i64 - 1) * &b), b, c),
        GadgetKind::Fischer => TernaryTriple::new(kappa, a, b.clone(), b),
        _ => TernaryTriple::new(kappa, a, b, c),
    };
    let bins = (0..kind.n_binaries()).map(|_| (r(), r())).collect();
    (t, bins)
}

/// Outcome of checking one closed form on several random inputs.
#[derive(Clone, Debug, PartialEq)]
pub struct FormulaSummary {
    pub kind: GadgetKind,
    pub kappa: usize,
    pub trials: usize,
    pub agreements: usize,
    pub first_mismatch: Option<GadgetReport>,
}

/// Checks every closed form against its gate on `trials` seeded random
/// inputs at domain size `kappa`.
pub fn verify_formulas(kappa: usize, trials: usize, seed: u64, full: bool) -> Result<Vec<FormulaSummary>, GadgetError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (kappa as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut out = Vec::with_capacity(GadgetKind::ALL.len());
    for kind in GadgetKind::ALL {
        let mut summary = FormulaSummary { kind, kappa, trials, agreements: 0, first_mismatch: None };
        for _ in 0..trials {
            let (t, bins) = random_instance(kind, kappa, &mut rng);
            let r = check(kind, &t, &bins, full)?;
            if r.agrees {
                summary.agreements += 1;
            } else if summary.first_mismatch.is_none() {
                summary.first_mismatch = Some(r);
            }
        }
        out.push(summary);
    }
    Ok(out)
}
