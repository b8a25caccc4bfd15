use proptest::prelude::*;
use qgc_core::calculus::*;
use qgc_core::exactla::*;
use qgc_core::groupbackend::*;
use qgc_core::lcsolver::*;

fn small() -> impl Strategy<Value = i64> {
    -4i64..=4
}

fn mat(rows: usize, cols: usize) -> impl Strategy<Value = Mat> {
    proptest::collection::vec(small(), rows * cols).prop_map(move |v| Mat::from_i64(rows, cols, &v))
}

fn nonzero() -> impl Strategy<Value = Scalar> {
    (1i64..=5, 1i64..=4, any::<bool>()).prop_map(|(p, q, neg)| frac(if neg { -p } else { p }, q))
}

/// `e_i ⊗ e_j ↦ q_ij e_j ⊗ e_i` with `q_ji = 1/q_ij` and `q_ii = 1`, plus a diagonal metric.
fn diagonal_type(n: usize) -> impl Strategy<Value = InvariantCalculus> {
    (
        proptest::collection::vec(nonzero(), n * n),
        proptest::collection::vec(nonzero(), n),
        proptest::collection::vec(small(), n * n * n),
    )
        .prop_map(move |(q, g, mc)| {
            let coef = |i: usize, j: usize| match i.cmp(&j) {
                std::cmp::Ordering::Equal => int(1),
                std::cmp::Ordering::Less => q[i * n + j].clone(),
                std::cmp::Ordering::Greater => int(1) / &q[j * n + i],
            };
            let sigma = Mat::from_fn(n * n, n * n, |r, c| {
                let (i, j) = (c / n, c % n);
                if r == j * n + i {
                    coef(i, j)
                } else {
                    int(0)
                }
            });
            let metric = Mat::from_fn(n, n, |i, j| if i == j { g[i].clone() } else { int(0) });
            let labels = (0..n).map(|i| format!("w{i}")).collect();
            let raw = Mat::from_i64(n * n, n, &mc);
            let c = InvariantCalculus::new(labels, sigma, Some(metric), None).unwrap();
            let split = compute_splitting(&c).unwrap();
            let mc = &(&Mat::identity(n * n) - &split.psym) * &raw;
            InvariantCalculus { mc: Some(mc), ..c }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn kron_mixed_product(a in mat(2, 2), b in mat(2, 3), c in mat(2, 2), d in mat(3, 2)) {
        prop_assert_eq!(&a.kron(&b) * &c.kron(&d), (&a * &c).kron(&(&b * &d)));
    }

    #[test]
    fn rank_nullity_and_kernel(a in mat(3, 4)) {
        let ker = a.kernel();
        prop_assert_eq!(a.rank() + ker.len(), 4);
        for v in &ker {
            prop_assert!(a.mul_vec(v).iter().all(|x| *x == zero()));
        }
    }

    #[test]
    fn inverse_roundtrip(a in mat(3, 3)) {
        if a.rank() == 3 {
            let inv = a.inverse().unwrap();
            prop_assert_eq!(&a * &inv, Mat::identity(3));
        } else {
            prop_assert!(a.inverse().is_err());
        }
    }

    #[test]
    fn solve_returns_a_solution(a in mat(3, 3), x in mat(3, 1)) {
        let b = &a * &x;
        let y = a.solve(&b).unwrap().expect("consistent");
        prop_assert_eq!(&a * &y, b);
    }

    #[test]
    fn scalar_text_roundtrip(p in -1000i64..1000, q in 1i64..1000) {
        let s = frac(p, q);
        prop_assert_eq!(parse_scalar(&fmt_scalar(&s)).unwrap(), s);
    }

    #[test]
    fn psym_is_a_sigma_fixed_projector(c in diagonal_type(2)) {
        validate_braid(&c).unwrap();
        let split = compute_splitting(&c).unwrap();
        let p = &split.psym;
        prop_assert_eq!(&(p * p), p);
        prop_assert_eq!(&(&c.sigma * p), p);
        prop_assert_eq!(&(p * &c.sigma), p);
        prop_assert_eq!(p.rank(), split.d1());
        prop_assert_eq!(&psym_polynomial(&c).unwrap(), p);
    }

    #[test]
    fn selfadjoint_and_adjoint_involutive(c in diagonal_type(2)) {
        let split = compute_splitting(&c).unwrap();
        let m = validate_metric(&c).unwrap();
        prop_assert!(check_selfadjointness(&c, &split, &m).unwrap().holds());
        let t = Mat::from_fn(4, 4, |r, col| int(((r * 3 + col * 5) % 7) as i64 - 3));
        prop_assert_eq!(g2_adjoint(&g2_adjoint(&t, &m).unwrap(), &m).unwrap(), t);
    }

    #[test]
    fn additivity_of_compatibility(c in diagonal_type(2), d0 in mat(4, 2), coords in proptest::collection::vec(small(), 8)) {
        let split = compute_splitting(&c).unwrap();
        let m = validate_metric(&c).unwrap();
        let x: Vec<Scalar> = coords.iter().take(c.n * split.d1()).map(|&v| int(v)).collect();
        let l = from_coords(&x, &split, c.n);
        let diff = &pi0_g(&(&d0 + &l), &c, &split, &m) - &pi0_g(&d0, &c, &split, &m);
        prop_assert_eq!(&diff, &phi_g(&l, &c, &split, &m));
        let phi = build_phi(&c, &split, &m);
        prop_assert_eq!(restrict_to_v1(&diff, &split), phi.matrix.mul_vec(&x));
        prop_assert!(phi.psi_consistent && phi.pair_form_consistent);
    }

    #[test]
    fn involutive_braidings_pass_p23_and_solve(c in diagonal_type(3)) {
        let split = compute_splitting(&c).unwrap();
        let m = validate_metric(&c).unwrap();
        prop_assert!(p23_criterion(&c, &split).bijective());
        let cert = solve_lc(&c, &split, &m).unwrap();
        prop_assert!(cert.verified());
    }
}

fn class_unions() -> impl Strategy<Value = (FiniteGroup, Vec<usize>)> {
    // Non-identity conjugacy classes of S3 and D4.
    let s3 = vec![vec![1, 2, 5], vec![3, 4]];
    let d4 = vec![vec![2], vec![1, 3], vec![4, 6], vec![5, 7]];
    prop_oneof![
        (1usize..4).prop_map(move |mask| (FiniteGroup::s3(), pick(&s3, mask))),
        (1usize..16).prop_map(move |mask| (FiniteGroup::d4(), pick(&d4, mask))),
    ]
}

fn pick(classes: &[Vec<usize>], mask: usize) -> Vec<usize> {
    classes.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).flat_map(|(_, c)| c.clone()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn braiding_from_definition_matches_formula((group, subset) in class_unions()) {
        let spec = AdCalculusSpec::new(group, subset).unwrap();
        let fb = build_full_bimodule(&spec);
        prop_assert!(fb.validate().is_empty());
        let ts = TensorSquare::new(&fb).unwrap();
        let sd = sigma_from_definition(&fb, &ts).unwrap();
        let calc = build_calculus(&spec).unwrap();
        prop_assert_eq!(&sd.invariant, &calc.sigma);
        validate_braid(&calc).unwrap();
        let split = compute_splitting(&calc).unwrap();
        prop_assert_eq!(&mc_from_definition(&fb, &ts, &sd.full, &split).unwrap(), calc.mc.as_ref().unwrap());
        let r = fb.coefficient_table().unwrap();
        prop_assert!(hom_dim_check(&r, &split).unwrap().equal());
    }
}
