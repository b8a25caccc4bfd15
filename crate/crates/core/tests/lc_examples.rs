use qgc_core::calculus::*;
use qgc_core::exactla::*;
use qgc_core::groupbackend::*;
use qgc_core::lcsolver::*;

#[test]
fn z3_connection_vanishes_for_any_metric() {
    let spec = AdCalculusSpec::new(FiniteGroup::cyclic(3).unwrap(), vec![1, 2]).unwrap();
    let calc = build_calculus(&spec).unwrap();
    assert_eq!(calc.sigma, flip_matrix(2));
    assert!(calc.mc.as_ref().unwrap().is_zero());
    let g = Mat::from_fn(2, 2, |i, j| if i == j { frac(5, 3) } else { int(-2) });
    let c = InvariantCalculus { metric: Some(g), ..calc };
    let split = compute_splitting(&c).unwrap();
    let cert = solve_lc(&c, &split, &validate_metric(&c).unwrap()).unwrap();
    assert!(cert.nabla.is_zero() && cert.verified() && cert.unique);
}

#[test]
fn single_form_is_trivially_bijective() {
    let c = InvariantCalculus::flip(1);
    let split = compute_splitting(&c).unwrap();
    assert_eq!(p23_criterion(&c, &split), P23Report { rank: 1, dim: 1 });
}

#[test]
fn zero_left_connection_has_zero_residuals() {
    let spec = AdCalculusSpec::new(FiniteGroup::s3(), vec![1, 2, 5]).unwrap();
    let c = InvariantCalculus { metric: Some(Mat::identity(3)), ..build_calculus(&spec).unwrap() };
    let split = compute_splitting(&c).unwrap();
    let lc = hs_left_compat(&Mat::zeros(9, 3), &c, &split, &validate_metric(&c).unwrap());
    assert!(lc.hs_residual.is_zero() && lc.left_functional.is_zero());
}

#[test]
fn s3_identity_metric_certificate() {
    let spec = AdCalculusSpec::new(FiniteGroup::s3(), vec![1, 2, 5]).unwrap();
    let calc = build_calculus(&spec).unwrap();
    let mut sq = &calc.sigma * &calc.sigma;
    assert_ne!(sq, Mat::identity(9));
    sq = &sq * &calc.sigma;
    assert_eq!(sq, Mat::identity(9));
    let c = InvariantCalculus { metric: Some(Mat::identity(3)), ..calc };
    let split = compute_splitting(&c).unwrap();
    let m = validate_metric(&c).unwrap();
    assert!(p23_criterion(&c, &split).bijective());
    let cert = solve_lc(&c, &split, &m).unwrap();
    assert!(cert.verified());
    // Any other torsion-free compatible connection differs by an element of the kernel.
    let phi = build_phi(&c, &split, &m);
    assert!(phi.matrix.kernel().is_empty());
    let r = build_full_bimodule(&spec).coefficient_table().unwrap();
    assert!(right_covariance_check(&cert.nabla, &r, &pair_coaction(&r)));
}

#[test]
fn d4_reflections_have_no_unique_solution() {
    let spec = AdCalculusSpec::new(FiniteGroup::d4(), vec![4, 5, 6, 7]).unwrap();
    let c = InvariantCalculus { metric: Some(Mat::identity(4)), ..build_calculus(&spec).unwrap() };
    let split = compute_splitting(&c).unwrap();
    let m = validate_metric(&c).unwrap();
    assert!(!p23_criterion(&c, &split).bijective());
    assert!(matches!(solve_lc(&c, &split, &m), Err(LcError::PhiNotInvertible { .. })));
}
