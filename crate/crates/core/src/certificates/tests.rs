use super::*;
use proptest::prelude::*;

fn s(n: i64) -> Scalar {
    Scalar::int(n)
}

#[test]
fn p_points_small_band() {
    assert_eq!(p_integer_solutions(3).unwrap(), KNOWN_P_POINTS);
    for (x, y) in KNOWN_P_POINTS {
        assert!(p_value(&big(x), &big(y)).is_zero());
    }
    assert_eq!(p_integer_solutions(MAX_P_BOUND + 1), Err(CertError::BoundTooLarge(MAX_P_BOUND + 1)));
}

#[test]
fn divisor_search_matches_scan() {
    let found = p_integer_solutions(30).unwrap();
    let mut scan = Vec::new();
    for y in -30..=30i64 {
        for x in -100..=100i64 {
            if p_value(&big(x), &big(y)).is_zero() {
                scan.push((x, y));
            }
        }
    }
    assert_eq!(found, scan);
}

#[test]
fn cube_divisors_are_complete() {
    for n in 1..200u64 {
        let mut d = cube_divisors(n);
        d.sort_unstable();
        let n3 = n * n * n;
        let brute: Vec<u64> = (1..=n3).filter(|k| n3 % k == 0).collect();
        assert_eq!(d, brute, "n = {n}");
    }
}

proptest! {
    #[test]
    fn modular_prefilter_agrees(x in -10_000i64..10_000, y in -2_000i64..2_000) {
        let exact = p_value(&big(x), &big(y));
        let m = BigInt::from(MOD);
        let r = ((exact % &m) + &m) % &m;
        prop_assert_eq!(r, BigInt::from(p_mod(x as i128, y as i128)));
    }
}

#[test]
fn fixtures_verify() {
    let r = verify_factorization_fixtures();
    assert_eq!(r.len(), 5);
    assert!(r.iter().all(|c| c.status == Status::Verified), "{r:?}");
}

#[test]
fn cubic_criterion_examples() {
    assert_eq!(cubic_lattice_criterion(&IntPoly::from_desc(&[1, -1, 1, -2])), Ok(true));
    assert_eq!(cubic_lattice_criterion(&IntPoly::from_desc(&[1, 0, 0, -2])), Ok(false));
    assert_eq!(cubic_lattice_criterion(&IntPoly::from_desc(&[1, 0, 3, -1])), Ok(true));
    assert_eq!(cubic_lattice_criterion(&IntPoly::from_desc(&[1, 0, 0, -8])), Err(CertError::Reducible));
    assert_eq!(cubic_lattice_criterion(&IntPoly::from_desc(&[1, 0, 1])), Err(CertError::WrongDegree { expected: 3 }));
}

#[test]
fn dedekind_quartic() {
    let (ev, report) = quartic_dedekind_report().unwrap();
    assert_eq!(report.status, Status::Verified);
    // x(x³ + 2x + 1) mod 3, irreducible mod 5, (x² + 7)(x + 6)(x + 10) mod 13.
    assert_eq!(ev.primes[0].factors, vec![vec![0, 1], vec![1, 2, 0, 1]]);
    assert_eq!(ev.primes[1].factors.len(), 1);
    assert_eq!(ev.primes[2].factors, vec![vec![6, 1], vec![10, 1], vec![7, 0, 1]]);
    assert!(ev.transitive && ev.transposition && ev.symmetric);
    assert_eq!(ev.large_prime_cycle, Some(3));
    assert!(ev.note.contains("G is transitive, contains a transposition"));
}

#[test]
fn dedekind_errors() {
    let f = IntPoly::from_desc(&[2, 0, 1]);
    assert_eq!(dedekind_evidence(&f, &[3]), Err(CertError::NotMonic));
    // (x + 1)² mod any p.
    let g = IntPoly::from_desc(&[1, 2, 1]);
    assert_eq!(dedekind_evidence(&g, &[5]), Err(CertError::NotSquareFreeModP(5)));
}

#[test]
fn quartic_norm_examples() {
    let t = quartic_same_norm_test(&s(3), &s(2), &s(-5), &s(-9));
    assert!(!t.holds);
    let t = quartic_same_norm_test(&s(0), &s(0), &s(0), &s(-1));
    assert!(t.holds);
    let t = quartic_same_norm_test(&s(0), &s(5), &s(0), &s(4));
    assert!(t.holds && t.degenerate);
    // (x − 2)(x + 2)(x − 2i)(x + 2i) = x⁴ − 16.
    let t = quartic_same_norm_test(&s(0), &s(0), &s(0), &s(-16));
    assert!(t.holds);
    // Roots 1, i, −1, −i rotated by ζ: x⁴ − ζ⁴ with ζ⁴ = i gives a₀ = −i.
    let t = quartic_same_norm_test(&s(0), &s(0), &s(0), &Scalar::gaussian(0, -1));
    assert!(t.holds);
}

#[test]
fn identities_hold() {
    let r = identity_suite();
    assert_eq!(r.len(), 6);
    for c in &r {
        assert_eq!(c.status, Status::Verified, "{c}");
    }
    let p4 = p_xy().eval_y(&big(4));
    assert_eq!(h_tilde_x_kappa().eval_y(&big(5)), p4);
    let h5 = h_x_kappa().eval_x_poly(&IntPoly::x().pow(3)).eval(&big(5));
    assert_eq!(h5, big(2) * big(5).pow(17));
}

#[test]
fn fixed_point_cubic_at_special_points() {
    // t = 1/κ gives −1 and t = −3/κ gives 1 − κ: check via 64·value at κ = 7.
    let (_, rhs) = fixed_point_cubic();
    let k = 7i64;
    let at = |num: i64| {
        let poly = rhs.eval_y(&big(k));
        let x = BigRational::new(big(num), big(k));
        poly.eval_rational(&x) / BigRational::from_integer(big(64))
    };
    assert_eq!(at(1), BigRational::from_integer(big(-1)));
    assert_eq!(at(-3), BigRational::from_integer(big(1 - k)));
}

#[test]
fn roots_nature() {
    let r = roots_nature_report(3..=50);
    assert_eq!(r.status, Status::Verified, "{r}");
    // κ = 7 has the integer root 2 = r with 8 − 4 + 2 + 1 = 7.
    assert!(q_x_kappa().eval_y(&big(7)).integer_roots().contains(&big(2)));
}

#[test]
fn h_tilde_has_no_small_relations() {
    for k in 4..=12 {
        let r = h_tilde_lattice_falsifier(k, 6);
        assert_eq!(r.status, Status::CheckedUpTo(6), "{r}");
        assert!(r.work > 0);
    }
}

#[test]
fn relation_search_finds_known_relations() {
    // Roots ±√2: z₁²z₂⁻² = 1.
    let (x, _) = root_relation_search(&IntPoly::from_desc(&[1, 0, -2]), 3);
    let x = x.unwrap();
    assert_eq!(x.iter().sum::<i64>(), 0);
    assert!(x.iter().all(|v| v % 2 == 0));
    // Cube roots of 2 differ by cube roots of unity.
    let (x, _) = root_relation_search(&IntPoly::from_desc(&[1, 0, 0, -2]), 3);
    assert!(x.is_some());
    let (x, _) = root_relation_search(&IntPoly::from_desc(&[1, -1, 1, -2]), 4);
    assert_eq!(x, None);
}

#[test]
fn report_serialization() {
    let r = CertificateReport::new("x", Status::CheckedUpTo(3), 7);
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v, serde_json::json!({"claim": "x", "status": "checked_up_to", "detail": 3, "work": 7}));
    assert_eq!(r.to_string(), "x: checked up to 3");
}
