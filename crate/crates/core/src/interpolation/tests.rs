use super::*;
use crate::coloring::{fixtures, tutte};
use crate::exactnum::poly::h_x_kappa;
use proptest::prelude::*;

fn int(n: i64) -> Scalar {
    Scalar::int(n)
}

fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&n| int(n)).collect()
}

fn sorted(mut v: Vec<BigInt>) -> Vec<BigInt> {
    v.sort();
    v
}

fn big(v: &[i64]) -> Vec<BigInt> {
    sorted(v.iter().map(|&n| BigInt::from(n)).collect())
}

fn row_times(r: &[Scalar], m: &Matrix) -> Vec<Scalar> {
    (0..m.len()).map(|j| r.iter().zip(m).map(|(a, row)| a * &row[j]).sum()).collect()
}

#[test]
fn binary_recurrence_examples() {
    let (m, [p1, p2]) = binary_recurrence(&int(1), &int(0), 5);
    assert_eq!(m.m, linalg::identity(2));
    assert_eq!((p1.value, p2.value), (int(1), int(1)));

    let (_, [p1, p2]) = binary_recurrence(&int(1), &int(1), 3);
    assert_eq!((p1.value, p2.value), (int(3), int(0)));

    for kappa in 3..8usize {
        for r in 1..kappa {
            let k = kappa as i64;
            let (m, pairs) = binary_recurrence(&int(k - 1), &int(k - r as i64), kappa);
            assert_eq!(pairs[0].value, int((k - 1) * (k - r as i64 + 1)));
            assert_eq!(pairs[1].value, int(r as i64 - 1));
            for p in &pairs {
                let mv = linalg::mat_vec(&m.m, &p.vector);
                let lv: Vec<Scalar> = p.vector.iter().map(|v| v * &p.value).collect();
                assert_eq!(mv, lv);
            }
        }
    }
}

#[test]
fn ratio_examples() {
    assert_eq!(ratio_root_of_unity(&int(2), &int(-2), 10).unwrap(), RatioVerdict::RootOfUnity(2));
    assert_eq!(ratio_root_of_unity(&int(2), &int(1), 10).unwrap(), RatioVerdict::DistinctNorms);
    assert_eq!(ratio_root_of_unity(&Scalar::omega(), &int(1), 10).unwrap(), RatioVerdict::RootOfUnity(3));
    assert_eq!(ratio_root_of_unity(&Scalar::i(), &int(1), 3).unwrap(), RatioVerdict::NotUpTo(3));
    let z = Scalar::float(0.6, 0.8);
    assert_eq!(ratio_root_of_unity(&z, &Scalar::float(1.0, 0.0), 20).unwrap(), RatioVerdict::NotUpTo(20));
    assert_eq!(ratio_root_of_unity(&int(0), &int(1), 4), Err(InterpError::ZeroEigenvalue));
}

#[test]
fn lattice_examples() {
    assert_eq!(lattice_check(&ints(&[2, -1, 1]), 8, None).unwrap(), LatticeVerdict::Falsified(vec![0, 2, -2]));
    assert_eq!(lattice_check(&ints(&[3, 2]), 8, None).unwrap(), LatticeVerdict::HoldsByDistinctNorms);
    assert_eq!(lattice_check(&ints(&[3, -3]), 8, None).unwrap(), LatticeVerdict::RootOfUnityRatio(2));
    assert_eq!(lattice_check(&ints(&[2, 3, 5]), 4, None).unwrap(), LatticeVerdict::HoldsUpToBound(4));
    assert_eq!(lattice_check(&ints(&[2, 0]), 4, None), Err(InterpError::ZeroInput));

    let f = IntPoly::from_desc(&[1, -1, 1, -2]);
    let roots: Vec<Scalar> = crate::exactnum::roots::int_poly_roots(&f).into_iter().map(|z| Scalar::float(z.re, z.im)).collect();
    assert_eq!(lattice_check(&roots, 8, Some(&f)).unwrap(), LatticeVerdict::HoldsByCubicCriterion);
    // Without the criterion only the bounded search is available.
    assert_eq!(lattice_check(&roots, 8, None).unwrap(), LatticeVerdict::HoldsUpToBound(8));

    // Roots of x³ − 2 share a norm and satisfy λ₁³ = λ₂³.
    let g = IntPoly::from_desc(&[1, 0, 0, -2]);
    let roots: Vec<Scalar> = crate::exactnum::roots::int_poly_roots(&g).into_iter().map(|z| Scalar::float(z.re, z.im)).collect();
    match lattice_check(&roots, 3, Some(&g)).unwrap() {
        LatticeVerdict::Falsified(x) => {
            assert_eq!(x.iter().sum::<i64>(), 0);
            let p: Scalar = roots.iter().zip(&x).map(|(z, &e)| z.pow(e).unwrap()).product();
            assert!(p.approx_eq(&Scalar::float(1.0, 0.0), 1e-9));
        }
        v => panic!("expected a relation, got {v:?}"),
    }
    assert!(matches!(lattice_check(&ints(&[2, 3, 5, 7, 11, 13, 17, 19, 23]), 8, None), Err(InterpError::SearchTooLarge(_))));
}

#[test]
fn cubic_criterion_cases() {
    assert_eq!(cubic_criterion(&IntPoly::from_desc(&[1, -1, 1, -2])), Some(true));
    assert_eq!(cubic_criterion(&IntPoly::from_desc(&[1, 0, 0, -2])), Some(false));
    assert_eq!(cubic_criterion(&IntPoly::from_desc(&[1, 0, 0, -8])), None);
    assert_eq!(cubic_criterion(&IntPoly::from_desc(&[2, -3, 1, 0])), None);
    assert_eq!(cubic_criterion(&IntPoly::from_desc(&[1, -1])), None);
}

#[test]
fn est_examples() {
    let i = Scalar::i();
    assert_eq!(est_witness(&i, &-i.clone(), &int(1), &i).unwrap(), 2);
    let w = est_witness(&int(1), &int(-1), &Scalar::gaussian(1, 1), &i).unwrap();
    let d = [int(0), Scalar::gaussian(1, 1), i.clone()][w].clone();
    assert_ne!((&int(1) + &d).norm_sqr(), (&int(-1) + &d).norm_sqr());
    assert!(matches!(est_witness(&int(1), &int(1), &int(1), &i), Err(InterpError::PreconditionViolated(_))));
    assert!(matches!(est_witness(&int(1), &int(2), &int(1), &int(3)), Err(InterpError::PreconditionViolated(_))));
}

fn gauss() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, -6i64..=6).prop_map(|(a, b)| Scalar::gaussian(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn est_witness_exists(a in gauss(), b in gauss(), d1 in gauss(), d2 in gauss()) {
        let real_ratio = (&(&d1 * &d2.conj()) - &(&d2 * &d1.conj())).is_zero();
        prop_assume!(a != b && !d1.is_zero() && !d2.is_zero() && !real_ratio);
        let w = est_witness(&a, &b, &d1, &d2).unwrap();
        let d = [a.zero_like(), d1, d2][w].clone();
        prop_assert_ne!((&a + &d).norm_sqr(), (&b + &d).norm_sqr());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn same_argument_shifts_escape_circle(psi in gauss(), dir in gauss(), t in proptest::collection::btree_set(1i64..20, 3), rho in 0i64..50) {
        prop_assume!(!dir.is_zero());
        let ds: Vec<Scalar> = t.into_iter().map(|s| &dir * &int(s)).collect();
        prop_assert!(norm_escape(&psi, &ds, &int(rho)).is_some());
    }

    #[test]
    fn same_norm_shifts_escape_circle(psi in gauss(), rho in 0i64..50, pick in proptest::sample::subsequence(vec![(5, 0), (-5, 0), (0, 5), (0, -5), (3, 4), (-3, 4), (3, -4), (-3, -4), (4, 3), (4, -3)], 3)) {
        prop_assume!(!psi.is_zero());
        let ds: Vec<Scalar> = pick.into_iter().map(|(a, b)| Scalar::gaussian(a, b)).collect();
        prop_assert!(norm_escape(&psi, &ds, &int(rho)).is_some());
    }
}

#[test]
fn coloring_gadget_is_normalized() {
    for k in 3..=5 {
        let f = compress(&coloring_gadget_signature(k).unwrap(), SuccinctType::TauColor).unwrap();
        assert_eq!(f, SuccinctSignature::from_ints(SuccinctType::TauColor, k, &[0, 1, 1, 0, 0]).unwrap());
    }
}

#[test]
fn coloring_recurrence_matrix() {
    for k in 3..=5usize {
        let c = coloring_construction(&coloring_gadget_signature(k).unwrap()).unwrap();
        let m = construction_matrix(&c, SuccinctType::TauColor).unwrap();
        assert_eq!(m.m, coloring_matrix(k), "κ={k}");
        let ev = linalg::integer_eigenvalues(&m.m).unwrap();
        assert_eq!(sorted(ev), big(&[k as i64 - 1, -1, 1, -1, 1]));
    }
}

#[test]
fn pass_through_is_identity() {
    for ty in [SuccinctType::TauColor, SuccinctType::Tau4] {
        let m = construction_matrix(&pass_through(4).unwrap(), ty).unwrap();
        assert_eq!(m.m, linalg::identity(ty.len()));
    }
    let m = construction_matrix(&pass_through(3).unwrap(), SuccinctType::Tau4).unwrap();
    assert_eq!(m.m, linalg::identity(9));
    let cp = linalg::int_poly(&linalg::char_poly(&linalg::identity(3))).unwrap();
    assert_eq!(cp, IntPoly::from_i64s(&[-1, 1]).pow(3));
}

#[test]
fn construction_leaving_the_space_fails() {
    // An asymmetric filler breaks domain invariance of the output.
    let f = DenseSignature::from_fn(3, 4, |t| int((t[0] == 0) as i64)).unwrap();
    let c = coloring_construction(&f).unwrap();
    assert!(matches!(construction_matrix(&c, SuccinctType::TauColor), Err(InterpError::CompressionFailed(_))));
}

#[test]
fn alternate_coloring_recurrence() {
    for k in 3..=5usize {
        let kk = k as i64;
        let c = alternate_coloring_construction(&coloring_gadget_signature(k).unwrap()).unwrap();
        let m = construction_matrix(&c, SuccinctType::TauColor).unwrap();
        assert_eq!(m.m, alternate_coloring_matrix(k), "κ={k}");
        let cp = linalg::int_poly(&m.char_poly()).unwrap();
        let expect = IntPoly::from_i64s(&[-1, 1]).mul(&IntPoly::from_i64s(&[1, 1])).mul(&IntPoly::from_desc(&[1, -1, 1, -(kk - 1)]));
        assert_eq!(cp, expect);
        let f0 = ints(&[0, 1, 1, 0, 0]);
        let target = ints(&[2, 1, 0, 1, 0]);
        for (r, ev) in [(ints(&[1, -1, 1, -1, 0]), -1), (ints(&[0, 0, 0, 0, 1]), 1)] {
            let lr: Vec<Scalar> = r.iter().map(|v| v * &int(ev)).collect();
            assert_eq!(row_times(&r, &m.m), lr);
            assert!(linalg::dot(&r, &f0).is_zero());
            assert!(linalg::dot(&r, &target).is_zero());
        }
        let kry = linalg::krylov_matrix(&m.m, &f0, 5);
        let upper: Matrix = kry[..3].iter().map(|r| r[..3].to_vec()).collect();
        assert_eq!(linalg::det(&upper), int(kk - 1));
        assert_eq!(krylov_rank(&f0, &m.m), 3);
        let cubic = IntPoly::from_desc(&[1, -1, 1, -(kk - 1)]);
        assert_eq!(cubic_criterion(&cubic), Some(true), "κ={k}");
    }
}

#[test]
fn krylov_rank_of_eigenvector() {
    let m = coloring_matrix(4);
    assert_eq!(krylov_rank(&ints(&[0, 0, 0, 0, 1]), &m), 1);
    assert_eq!(krylov_rank(&ints(&[1, 0, 0, 1, 0]), &m), 3);
}

#[test]
fn weave_probe_matches_table() {
    for k in [4usize, 5] {
        let c = weave_construction(&weave_vertex_signature(k).unwrap()).unwrap();
        let m = construction_matrix(&c, SuccinctType::Tau4).unwrap();
        let scaled: Matrix = weave_table(k).iter().map(|r| r.iter().map(|v| v * &int(k as i64)).collect()).collect();
        assert_eq!(m.m, scaled, "κ={k}");
    }
}

#[test]
fn weave_table_spectrum() {
    for k in 4..=7usize {
        let kk = BigInt::from(k);
        let m = weave_table(k);
        let cp = linalg::int_poly(&linalg::char_poly(&m)).unwrap();
        let k3 = kk.pow(3);
        let lin = IntPoly::new(vec![-k3.clone(), BigInt::from(1)]);
        let expect = lin.pow(4).mul(&h_x_kappa().eval_y(&kk));
        assert_eq!(cp, expect, "κ={k}");
        let h = h_x_kappa().eval_y(&kk);
        assert_eq!(h.eval(&k3), (&kk - 3u32) * kk.pow(17));

        let g0 = ints(&[1, 0, 0, 0, 0, 0, 1, 0, 0]);
        let target = ints(&[2, 0, 1, 0, 0, 0, 1, 0, 0]);
        let k3s = Scalar::from_bigint(k3.clone());
        for r in [
            [0, 0, 0, 0, -1, 0, 0, 0, 1],
            [0, -1, 0, 1, -1, 0, 0, 1, 0],
            [-1, 0, 1, 0, -1, 0, 1, 0, 0],
            [0, 0, 0, 0, -1, 1, 0, 0, 0],
        ] {
            let r = ints(&r);
            let lr: Vec<Scalar> = r.iter().map(|v| v * &k3s).collect();
            assert_eq!(row_times(&r, &m), lr);
            assert!(linalg::dot(&r, &g0).is_zero());
            assert!(linalg::dot(&r, &target).is_zero());
        }

        let kry = linalg::krylov_matrix(&m, &g0, 9);
        let upper: Matrix = kry[..5].iter().map(|r| r[..5].to_vec()).collect();
        let q = IntPoly::from_desc(&[1, 1, 17, 3, 2]).eval(&kk);
        let expect: BigInt = (&kk - 3u32).pow(3) * (&kk - 1u32).pow(2) * kk.pow(26) * q;
        assert_eq!(linalg::det(&upper), Scalar::from_bigint(expect), "κ={k}");
        assert_eq!(krylov_rank(&g0, &m), 5);
    }
}

/// Row eigenvectors of the quaternary recurrence for ⟨−(κ−1)γ, γ, 1⟩.
fn ad_like_rows(k: f64, g: f64) -> Vec<Vec<f64>> {
    let a = (k - 2.0) * g;
    let b = (k - 2.0) * (g - 1.0);
    let c = (g - 3.0) * g;
    let d = k * k + k * (2.0 * g - 7.0) - 2.0 * (g - 5.0);
    vec![
        vec![0.0, 0.0, 0.0, 0.0, 1.0, -2.0, 0.0, 0.0, 1.0],
        vec![0.0, 0.0, 0.0, 0.0, 0.0, -1.0, 0.0, 1.0, 0.0],
        vec![0.0, -1.0, 0.0, 1.0, -c, c, 0.0, 0.0, 0.0],
        vec![0.0, 0.0, 0.0, 0.0, -1.0, 0.0, 1.0, 0.0, 0.0],
        vec![0.0, a, 0.0, -a, 0.0, b, 0.0, b, b * (g - 4.0) * g],
        vec![0.0, -a, 0.0, a, g - 1.0, b, g - 1.0, b, 0.0],
        vec![0.0, 2.0, 0.0, k - 2.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        vec![1.0, 0.0, k - 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        vec![c, d, -c, -d, -c, -(k - 4.0) * c, -c, -(k - 4.0) * c, 2.0 * (g - 4.0) * c * g],
    ]
}

/// The single-vertex chain keeps the iterates f_s in τ₄ (the hole and the
/// new vertex commute), though not every τ₄ basis vector; so the rows are
/// checked along the orbit: r·f_s = (cμ)^s r·f₀ for a common scale c.
#[test]
fn ad_like_eigendecomposition() {
    for k in [4usize, 5] {
        for eps in [1.0, -1.0] {
            let kf = k as f64;
            let g = 2.0 + eps * (kf + 1.0).sqrt();
            let fl = |v: f64| Scalar::float(v, 0.0);
            let t = TernaryTriple::new(k, fl(-(kf - 1.0) * g), fl(g), fl(1.0));
            let c = coloring_construction(&quaternary_i(&t).expand().unwrap()).unwrap();
            let mut fs = vec![SuccinctSignature::new(SuccinctType::Tau4, k, [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0].map(fl).to_vec()).unwrap()];
            for _ in 0..4 {
                let next = c.apply(fs.last().unwrap(), SuccinctType::Tau4).unwrap();
                fs.push(next);
            }
            let p = ad_like_rows(kf, g);
            let lambda = (kf - 2.0) * (kf + 2.0 * g - 4.0) / ((g - 1.0) * (g - 1.0));
            let spectrum = [-1.0, -1.0, -1.0, -1.0, kf - 2.0, kf - 2.0, kf - 1.0, kf - 1.0, lambda];
            let dot = |r: &[f64], f: &SuccinctSignature| -> f64 { r.iter().zip(&f.entries).map(|(a, b)| a * b.to_complex().re).sum() };
            let scale = -dot(&p[3], &fs[1]) / dot(&p[3], &fs[0]);
            for (i, (r, mu)) in p.iter().zip(spectrum).enumerate() {
                let base = dot(r, &fs[0]);
                let orth = [0, 1, 2, 4, 6, 8].contains(&i);
                assert_eq!(base.abs() < 1e-9, orth, "κ={k} ε={eps} row {i}");
                for (s, f) in fs.iter().enumerate() {
                    let expect = (scale * mu).powi(s as i32) * base;
                    let tol = 1e-7 * (scale.abs() * kf).powi(s as i32).max(1.0) * r.iter().map(|v| v.abs()).sum::<f64>();
                    assert!((dot(r, f) - expect).abs() <= tol, "κ={k} ε={eps} row {i} s={s}");
                }
            }
            let pm: Matrix = p.iter().map(|r| r.iter().map(|&v| fl(v)).collect()).collect();
            let det = linalg::det(&pm).to_complex().re;
            let expect = (kf - 1.0).powi(2) * (kf - 2.0) * (g - 1.0).powi(6) * (g - 3.0).powi(3) * g;
            assert!((det - expect).abs() <= 1e-7 * expect.abs(), "det {det} vs {expect}");
            let target = [2.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0];
            for (i, r) in p.iter().enumerate() {
                let dg: f64 = r.iter().zip(&target).map(|(a, b)| a * b).sum();
                assert_eq!(dg.abs() < 1e-9, [0, 1, 2, 4, 6, 8].contains(&i), "row {i}");
            }
        }
    }
}

#[test]
fn vandermonde_examples() {
    // ℓ = 1, λ = (κ−1)² at κ = 3, quadratic 5 − 2X + 7X².
    let lam = int(4);
    let evals: Vec<Scalar> = (0..3).map(|k| {
        let x = lam.pow(k).unwrap();
        &(&int(5) - &(&int(2) * &x)) + &(&int(7) * &(&x * &x))
    }).collect();
    // With ℓ = 1 the single node for n_f = 2 is λ², so only the top coefficient is visible.
    let rec = vandermonde_recover(&evals[..1], &[lam.clone()], 2).unwrap();
    assert_eq!(rec, vec![(vec![2], evals[0].clone())]);

    let lams = ints(&[2, 3]);
    let c = ints(&[5, -4]);
    let evals: Vec<Scalar> = (0..2).map(|k| &(&c[0] * &int(2).pow(k).unwrap()) + &(&c[1] * &int(3).pow(k).unwrap())).collect();
    let rec = vandermonde_recover(&evals, &lams, 1).unwrap();
    assert_eq!(rec, vec![(vec![1, 0], int(5)), (vec![0, 1], int(-4))]);

    let c = ints(&[1, 2, 3]);
    let evals: Vec<Scalar> = (0..5)
        .map(|k| [4, 6, 9].iter().zip(&c).map(|(n, ci)| ci * &int(*n).pow(k).unwrap()).sum())
        .collect();
    let rec = vandermonde_recover(&evals, &lams, 2).unwrap();
    assert_eq!(rec.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>(), c);

    assert!(matches!(vandermonde_recover(&evals, &ints(&[2, -2]), 2), Err(InterpError::SingularVandermonde(_))));
    assert!(matches!(vandermonde_recover(&evals, &ints(&[1, 1]), 1), Err(InterpError::SingularVandermonde(_))));
    assert_eq!(vandermonde_recover(&evals[..2], &lams, 2), Err(InterpError::NotEnoughEvaluations { need: 3, got: 2 }));
    let mut bad = evals.clone();
    bad[4] = &bad[4] + &int(1);
    assert!(matches!(vandermonde_recover(&bad, &lams, 2), Err(InterpError::SingularVandermonde(_))));
}

#[test]
fn multi_index_order() {
    assert_eq!(multi_indices(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    assert_eq!(multi_indices(3, 2).len(), 6);
    assert_eq!(multi_indices(1, 3), vec![vec![3]]);
}

#[test]
fn closed_form_recursion() {
    for k in 3..=5usize {
        let c = coloring_construction(&coloring_gadget_signature(k).unwrap()).unwrap();
        let mut f = SuccinctSignature::from_ints(SuccinctType::TauColor, k, &[1, 0, 0, 1, 0]).unwrap();
        for t in 0..5u32 {
            if t % 2 == 0 {
                assert_eq!(f, coloring_closed_form(k, t), "κ={k} t={t}");
            }
            f = c.apply(&f, SuccinctType::TauColor).unwrap();
        }
    }
    assert_eq!(coloring_closed_form(3, 2), SuccinctSignature::from_ints(SuccinctType::TauColor, 3, &[2, 1, 0, 1, 0]).unwrap());
}

#[test]
fn coloring_demo_triangle() {
    let d = coloring_interpolation_demo(&fixtures::cycle(3), 3).unwrap();
    assert_eq!(d.value, int(72));
    assert_eq!(d.direct, int(72));
    assert!(d.closed_form_holds);
    let t = tutte(&fixtures::cycle(3), &int(4), &int(4)).unwrap();
    assert_eq!(d.value, &int(3) * &t);
}

#[test]
fn coloring_demo_digon_and_theta() {
    for (g, k) in [(fixtures::digon(), 3), (fixtures::digon(), 4), (fixtures::theta(), 3)] {
        let d = coloring_interpolation_demo(&g, k).unwrap();
        assert_eq!(d.value, d.direct);
        let t = tutte(&g, &int(k as i64 + 1), &int(k as i64 + 1)).unwrap();
        assert_eq!(d.value, &int(k as i64) * &t);
    }
}

