//! Holographic transformations f ↦ T^{⊗n} f.

use super::GadgetError;
use crate::exactnum::Scalar;
use crate::signatures::DenseSignature;

/// A κ×κ basis change.
#[derive(Clone, Debug, PartialEq)]
pub struct TransformMatrix {
    pub kappa: usize,
    pub rows: Vec<Vec<Scalar>>,
    /// λ with T·Tᵀ = λI, when such λ exists.
    pub lambda: Option<Scalar>,
    /// (x, y) when T = yJ + (x−y)I.
    pub special: Option<(Scalar, Scalar)>,
}

impl TransformMatrix {
    pub fn new(rows: Vec<Vec<Scalar>>) -> Result<Self, GadgetError> {
        let kappa = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != kappa) {
            return Err(GadgetError::DimensionMismatch { expected: kappa, got: r.len() });
        }
        let mut t = TransformMatrix { kappa, rows, lambda: None, special: None };
        t.lambda = t.orthogonality_scale();
        t.special = t.detect_special();
        Ok(t)
    }

    pub fn identity(kappa: usize) -> Self {
        Self::special(kappa, Scalar::one(), Scalar::zero())
    }

    /// T = yJ + (x−y)I: x on the diagonal, y elsewhere.
    pub fn special(kappa: usize, x: Scalar, y: Scalar) -> Self {
        let rows = (0..kappa)
            .map(|i| (0..kappa).map(|j| if i == j { x.clone() } else { y.clone() }).collect())
            .collect();
        Self::new(rows).expect("square")
    }

    /// κI − 2J, with T·Tᵀ = κ²I.
    pub fn special_t(kappa: usize) -> Self {
        let k = kappa as i64;
        Self::special(kappa, Scalar::int(k - 2), Scalar::int(-2))
    }

    /// [[1, 𝟏], [𝟏, yJ + (x−y)I]] with x = −(κ+√κ−1)/(√κ+1), y = 1/(√κ+1), in
    /// float mode; T·Tᵀ = κI.
    pub fn sqrt_kappa(kappa: usize) -> Self {
        let r = (kappa as f64).sqrt();
        let x = -(kappa as f64 + r - 1.0) / (r + 1.0);
        let y = 1.0 / (r + 1.0);
        let rows = (0..kappa)
            .map(|i| {
                (0..kappa)
                    .map(|j| {
                        let v = match (i, j) {
                            (0, _) | (_, 0) => 1.0,
                            _ if i == j => x,
                            _ => y,
                        };
                        Scalar::float(v, 0.0)
                    })
                    .collect()
            })
            .collect();
        Self::new(rows).expect("square")
    }

    pub fn transpose(&self) -> Self {
        let rows = (0..self.kappa).map(|i| (0..self.kappa).map(|j| self.rows[j][i].clone()).collect()).collect();
        Self::new(rows).expect("square")
    }

    pub fn mul(&self, o: &Self) -> Result<Self, GadgetError> {
        if o.kappa != self.kappa {
            return Err(GadgetError::DimensionMismatch { expected: self.kappa, got: o.kappa });
        }
        let n = self.kappa;
        let rows = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|l| &self.rows[i][l] * &o.rows[l][j]).sum()).collect())
            .collect();
        Self::new(rows)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.rows.iter().map(|r| r.iter().map(|v| v * c).collect()).collect()).expect("square")
    }

    fn orthogonality_scale(&self) -> Option<Scalar> {
        let n = self.kappa;
        if n == 0 {
            return None;
        }
        let dot = |i: usize, j: usize| -> Scalar { (0..n).map(|l| &self.rows[i][l] * &self.rows[j][l]).sum() };
        let lambda = dot(0, 0);
        for i in 0..n {
            for j in 0..n {
                let d = dot(i, j);
                let ok = if i == j { d == lambda } else { d.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(lambda)
    }

    fn detect_special(&self) -> Option<(Scalar, Scalar)> {
        let n = self.kappa;
        let x = self.rows.first()?.first()?.clone();
        let y = if n > 1 { self.rows[0][1].clone() } else { x.zero_like() };
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { &x } else { &y };
                if self.rows[i][j] != *want {
                    return None;
                }
            }
        }
        Some((x, y))
    }
}

/// T^{⊗n} f by one mode product per input.
pub fn holo_transform(t: &TransformMatrix, f: &DenseSignature) -> Result<DenseSignature, GadgetError> {
    if t.kappa != f.kappa {
        return Err(GadgetError::DimensionMismatch { expected: f.kappa, got: t.kappa });
    }
    let k = f.kappa;
    let mut vals = f.values.clone();
    // stride of input i is κ^{n−1−i} in the lexicographic table.
    for axis in 0..f.arity {
        let stride = k.pow((f.arity - 1 - axis) as u32);
        let mut next = vals.clone();
        for (idx, out) in next.iter_mut().enumerate() {
            let digit = (idx / stride) % k;
            let base = idx - digit * stride;
            *out = (0..k).map(|j| &t.rows[digit][j] * &vals[base + j * stride]).sum();
        }
        vals = next;
    }
    Ok(DenseSignature::new(k, f.arity, vals)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signatures::{compress, SuccinctSignature, SuccinctType};

    #[test]
    fn special_t_is_orthogonal_up_to_kappa_squared() {
        for k in 3..8 {
            let t = TransformMatrix::special_t(k);
            assert_eq!(t.lambda, Some(Scalar::int((k * k) as i64)));
            let p = t.mul(&t.transpose()).unwrap().scale(&Scalar::ratio(1, (k * k) as i64));
            assert_eq!(p, TransformMatrix::identity(k));
        }
    }

    #[test]
    fn identity_is_neutral() {
        let f = SuccinctSignature::from_ints(SuccinctType::Tau3, 4, &[3, -1, 2]).unwrap().expand().unwrap();
        assert_eq!(holo_transform(&TransformMatrix::identity(4), &f).unwrap(), f);
    }

    #[test]
    fn equality_maps_to_tractable_point() {
        let t = TransformMatrix::special_t(3);
        let f = SuccinctSignature::from_ints(SuccinctType::Tau3, 3, &[1, 0, 0]).unwrap().expand().unwrap();
        let g = compress(&holo_transform(&t, &f).unwrap(), SuccinctType::Tau3).unwrap();
        let want = SuccinctSignature::from_ints(SuccinctType::Tau3, 3, &[-5, -2, 4]).unwrap();
        assert!(g.ratio_to(&want).is_some());
    }

    #[test]
    fn ad_like_point_maps_to_ad33() {
        let t = TransformMatrix::special_t(3);
        let f = SuccinctSignature::from_ints(SuccinctType::Tau3, 3, &[8, -4, -1]).unwrap().expand().unwrap();
        let g = compress(&holo_transform(&t, &f).unwrap(), SuccinctType::Tau3).unwrap();
        let want = SuccinctSignature::from_ints(SuccinctType::Tau3, 3, &[0, 0, 1]).unwrap();
        assert!(g.ratio_to(&want).is_some());
    }

    #[test]
    fn sqrt_kappa_transform_is_orthogonal_in_float_mode() {
        for k in 4..9 {
            let t = TransformMatrix::sqrt_kappa(k);
            let lambda = t.lambda.clone().expect("orthogonal up to scale");
            assert!(lambda.approx_eq(&Scalar::float(k as f64, 0.0), 1e-12));
        }
    }
}
