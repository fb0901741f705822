//! Reaching ⟨3(κ−1), κ−3, −3⟩ from ⟨3b−2c, b, c⟩ in float mode: a local
//! holographic transformation moves the point to ⟨3s−2t, s, t⟩, and the
//! triangle gadget maps that onto the target.

use num_complex::Complex64;

use super::{local_holo, ternary_triangle, GadgetError, TernaryTriple};
use crate::exactnum::roots::complex_roots;
use crate::exactnum::{Scalar, FLOAT_TOL};
use crate::signatures::SuccinctSignature;

#[derive(Clone, Debug, PartialEq)]
pub struct FixedPointChain {
    pub input: TernaryTriple,
    /// Binary ⟨x,y⟩ of the local transformation; `None` when the input is
    /// already on the target.
    pub xy: Option<(Scalar, Scalar)>,
    /// The intermediate point (s, t).
    pub st: Option<(Scalar, Scalar)>,
    /// ∝ ⟨3s−2t, s, t⟩.
    pub normalized: Option<SuccinctSignature>,
    /// ∝ ⟨3(κ−1), κ−3, −3⟩.
    pub result: SuccinctSignature,
}

/// The target ⟨3(κ−1), κ−3, −3⟩.
pub fn target(kappa: usize) -> SuccinctSignature {
    let k = kappa as i64;
    TernaryTriple::from_ints(kappa, 3 * (k - 1), k - 3, -3).succinct()
}

/// True when `a = λ·b` for some λ, within relative tolerance `tol`.
pub fn proportional_within(a: &[Scalar], b: &[Scalar], tol: f64) -> bool {
    let a: Vec<Complex64> = a.iter().map(Scalar::to_complex).collect();
    let b: Vec<Complex64> = b.iter().map(Scalar::to_complex).collect();
    let Some(i) = (0..b.len()).max_by(|&i, &j| b[i].norm().total_cmp(&b[j].norm())) else {
        return true;
    };
    if b[i].norm() == 0.0 {
        return a.iter().all(|z| z.norm() <= tol);
    }
    let lambda = a[i] / b[i];
    let scale = a.iter().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    a.iter().zip(&b).all(|(x, y)| (x - lambda * y).norm() <= tol * scale)
}

fn pick(roots: Vec<Complex64>, margin: impl Fn(Complex64) -> f64) -> Option<Complex64> {
    let mut best: Option<(Complex64, f64)> = None;
    for z in roots {
        let m = margin(z);
        if !m.is_finite() {
            continue;
        }
        if best.map_or(true, |(_, bm)| m > bm * (1.0 + 1e-12)) {
            best = Some((z, m));
        }
    }
    best.map(|(z, _)| z)
}

/// Builds the gadget chain for the input ⟨3b−2c, b, c⟩ (so 𝔄 = 0).
pub fn construct_fixed_point(kappa: usize, b: &Scalar, c: &Scalar) -> Result<FixedPointChain, GadgetError> {
    let (bz, cz) = (b.to_complex(), c.to_complex());
    let kf = kappa as f64;
    let mag = bz.norm().max(cz.norm()).max(f64::MIN_POSITIVE);
    let input = TernaryTriple::new(kappa, Scalar::Float(3.0 * bz - 2.0 * cz), b.to_float(), c.to_float());
    if (bz - cz).norm() <= FLOAT_TOL * mag {
        return Err(GadgetError::DegenerateInput("b = c".into()));
    }
    let m = 3.0 * bz + (kf - 3.0) * cz;
    if m.norm() <= FLOAT_TOL * mag {
        return Ok(FixedPointChain { result: input.succinct(), input, xy: None, st: None, normalized: None });
    }

    // Cubic κ³(κ−2)t³ − 3κ²(κ+2)t² + 3κ(κ−10)t − (κ+26) in t, with s = (1 − (κ−4)t)/4.
    let cubic = [-(kf + 26.0), 3.0 * kf * (kf - 10.0), -3.0 * kf * kf * (kf + 2.0), kf.powi(3) * (kf - 2.0)]
        .map(|v| Complex64::new(v, 0.0));
    let s_of = |t: Complex64| (1.0 - (kf - 4.0) * t) / 4.0;
    let t = pick(complex_roots(&cubic), |t| {
        let s = s_of(t);
        (s - t).norm().min((3.0 * s + (kf - 3.0) * t).norm())
    })
    .ok_or_else(|| GadgetError::RootFindingFailed("no admissible root of the cubic".into()))?;
    let s = s_of(t);

    // Quadratic −κ·m·y² − 2√(s−t)·m·y + (bt − cs) in y, with x = y + √(s−t).
    let r = (s - t).sqrt();
    let quad = [bz * t - cz * s, -2.0 * r * m, -kf * m];
    let y = pick(complex_roots(&quad), |y| (y + r + (kf - 1.0) * y).norm())
        .ok_or_else(|| GadgetError::RootFindingFailed("no admissible root of the quadratic".into()))?;
    let x = y + r;

    let xy = (Scalar::Float(x), Scalar::Float(y));
    let normalized = local_holo(&input, &xy);
    let want = TernaryTriple::new(kappa, Scalar::Float(3.0 * s - 2.0 * t), Scalar::Float(s), Scalar::Float(t));
    if !proportional_within(&normalized.entries, &want.succinct().entries, 1e-8) {
        return Err(GadgetError::RootFindingFailed("local transformation missed ⟨3s−2t, s, t⟩".into()));
    }
    let result = ternary_triangle(&TernaryTriple::from_succinct(&normalized)?);
    if !proportional_within(&result.entries, &target(kappa).entries, 1e-8) {
        return Err(GadgetError::RootFindingFailed("triangle missed the target".into()));
    }
    Ok(FixedPointChain {
        input,
        xy: Some(xy),
        st: Some((Scalar::Float(s), Scalar::Float(t))),
        normalized: Some(normalized),
        result,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kappa3_reaches_target() {
        let ch = construct_fixed_point(3, &Scalar::int(1), &Scalar::int(0)).unwrap();
        let want = [Scalar::int(6), Scalar::int(0), Scalar::int(-3)];
        assert!(proportional_within(&ch.result.entries, &want, 1e-9));
    }

    #[test]
    fn kappa4_reaches_target() {
        let ch = construct_fixed_point(4, &Scalar::int(1), &Scalar::int(2)).unwrap();
        let want = [Scalar::int(9), Scalar::int(1), Scalar::int(-3)];
        assert!(proportional_within(&ch.result.entries, &want, 1e-6));
    }

    #[test]
    fn already_fixed_input_is_returned() {
        // 3b + (κ−3)c = 0 at κ = 5 with b = 2, c = −3.
        let ch = construct_fixed_point(5, &Scalar::int(2), &Scalar::int(-3)).unwrap();
        assert!(ch.xy.is_none());
        assert!(proportional_within(&ch.result.entries, &target(5).entries, 1e-12));
    }

    #[test]
    fn degenerate_input_is_rejected() {
        assert!(matches!(
            construct_fixed_point(4, &Scalar::int(1), &Scalar::int(1)),
            Err(GadgetError::DegenerateInput(_))
        ));
    }
}
