use proptest::prelude::*;
use tcpkit::classes::{check_witness, classify, witness_search, ClassId, Method, Status};
use tcpkit::spectra::{eigen_defect, h_eigenpairs, z_eigenpairs, EigenKind};
use tcpkit::tcp::{solve, TcpInstance};
use tcpkit::{scale_point, Budget, IndexSet, ScaleMode, Tensor};

fn tensor_with(m: usize, n: usize, lo: f64, hi: f64) -> impl Strategy<Value = Tensor> {
    prop::collection::vec(lo..hi, n.pow(m as u32)).prop_map(move |c| Tensor::new(m, n, c).unwrap())
}

fn any_tensor() -> impl Strategy<Value = Tensor> {
    (2usize..=4, 1usize..=3).prop_flat_map(|(m, n)| tensor_with(m, n, -2.0, 2.0))
}

fn tensor_and_point() -> impl Strategy<Value = (Tensor, Vec<f64>)> {
    any_tensor().prop_flat_map(|a| {
        let n = a.dim();
        (Just(a), prop::collection::vec(-3.0..3.0f64, n))
    })
}

/// `diag + noise` with the diagonal dominating, order `m`, dimension 2.
fn dominant(m: usize) -> impl Strategy<Value = Tensor> {
    (tensor_with(m, 2, -0.3, 0.3), 1.0..3.0f64, 1.0..3.0f64).prop_map(move |(noise, d1, d2)| {
        noise.add(&Tensor::diagonal(m, &[d1, d2]).unwrap()).unwrap()
    })
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}

/// Independent residual of the R, R0 or ER system at a normalized point.
fn ncp_residual(a: &Tensor, class: ClassId, x: &[f64], t: f64) -> f64 {
    let f = a.apply(x).unwrap();
    let mut r = if class.has_t() { (-t).max(0.0) } else { 0.0 };
    for (xi, fi) in x.iter().zip(&f) {
        let g = match class {
            ClassId::ER => fi + t * xi,
            ClassId::R => fi + t,
            _ => *fi,
        };
        r = r.max((-xi).max(0.0));
        r = r.max(if *xi > 1e-8 { g.abs() } else { (-g).max(0.0) });
    }
    r
}

fn budget() -> Budget {
    Budget::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn apply_is_homogeneous((a, x) in tensor_and_point(), alpha in 0.1..10.0f64) {
        let ax = a.apply(&x).unwrap();
        let scaled: Vec<f64> = x.iter().map(|v| alpha * v).collect();
        let s = a.apply(&scaled).unwrap();
        let p = alpha.powi(a.order() as i32 - 1);
        for (u, v) in s.iter().zip(&ax) {
            let tol = 1e-12 * (1.0 + a.max_abs() * p * 3f64.powi(a.order() as i32 - 1) * 9.0);
            prop_assert!((u - p * v).abs() <= tol, "{u} vs {}", p * v);
        }
    }

    #[test]
    fn form_is_x_dot_apply((a, x) in tensor_and_point()) {
        let ax = a.apply(&x).unwrap();
        let dot: f64 = x.iter().zip(&ax).map(|(p, q)| p * q).sum();
        let scale: f64 = 1.0 + a.max_abs() * 3f64.powi(a.order() as i32) * 27.0;
        prop_assert!((a.form(&x).unwrap() - dot).abs() <= 1e-12 * scale);
    }

    #[test]
    fn subtensor_matches_restriction((a, x) in tensor_and_point(), mask in 1u64..8) {
        let n = a.dim();
        let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        prop_assume!(!idx.is_empty());
        let j = IndexSet::new(idx.clone(), n).unwrap();
        let sub = a.principal_subtensor(&j).unwrap();
        let mut full = vec![0.0; n];
        let restricted: Vec<f64> = idx.iter().map(|&i| x[i]).collect();
        for &i in &idx {
            full[i] = x[i];
        }
        let big = a.apply(&full).unwrap();
        let small = sub.apply(&restricted).unwrap();
        for (k, &i) in idx.iter().enumerate() {
            prop_assert!(close(big[i], small[k], 1e-12));
        }
    }

    #[test]
    fn apply_is_linear_in_the_tensor(
        (a, b, x) in (2usize..=4, 1usize..=3).prop_flat_map(|(m, n)| {
            (tensor_with(m, n, -2.0, 2.0), tensor_with(m, n, -2.0, 2.0), prop::collection::vec(-3.0..3.0f64, n))
        })
    ) {
        let sum = a.add(&b).unwrap().apply(&x).unwrap();
        let sep: Vec<f64> = a.apply(&x).unwrap().iter().zip(b.apply(&x).unwrap()).map(|(p, q)| p + q).collect();
        for (u, v) in sum.iter().zip(&sep) {
            prop_assert!(close(*u, *v, 1e-12));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn witnesses_survive_rescaling(a in tensor_with(3, 2, -2.0, 2.0)) {
        for class in [ClassId::ER, ClassId::R] {
            let Some(w) = witness_search(&a, class, &budget()).unwrap() else { continue };
            let t = w.t.unwrap();
            let mode = if class == ClassId::ER { ScaleMode::Er } else { ScaleMode::R };
            for alpha in [0.5, 2.0, 10.0] {
                let (xs, ts) = scale_point(&w.x, t, alpha, 3, mode).unwrap();
                let c = check_witness(&a, class, &xs, Some(ts), 1e-8).unwrap();
                prop_assert!(c.valid && c.residual <= 1e-8, "{class} alpha={alpha} {c:?}");
                // The raw system is homogeneous of degree m-1 in the rescaled point.
                let f = a.apply(&xs).unwrap();
                let f0 = a.apply(&w.x).unwrap();
                for i in 0..2 {
                    let (g, g0) = match class {
                        ClassId::ER => (f[i] + ts * xs[i], f0[i] + t * w.x[i]),
                        _ => (f[i] + ts, f0[i] + t),
                    };
                    prop_assert!((g - alpha * alpha * g0).abs() <= 1e-12 * alpha * alpha * (1.0 + a.max_abs() * 8.0));
                }
            }
        }
    }

    #[test]
    fn witness_residuals_recompute(a in tensor_with(3, 2, -2.0, 2.0)) {
        for class in [ClassId::ER, ClassId::R, ClassId::R0] {
            if let Some(w) = witness_search(&a, class, &budget()).unwrap() {
                let r = ncp_residual(&a, class, &w.x, w.t.unwrap_or(0.0));
                prop_assert!((r - w.residual).abs() <= 1e-12, "{class}: {r} vs {}", w.residual);
                prop_assert!(w.residual <= 1e-8);
            }
        }
        for class in [ClassId::SemiPositive, ClassId::StrictlySemiPositive] {
            if let Some(w) = witness_search(&a, class, &budget()).unwrap() {
                let f = a.apply(&w.x).unwrap();
                prop_assert!(w.x.iter().all(|&v| v >= 0.0));
                prop_assert!((w.x.iter().fold(0.0f64, |m, v| m.max(*v)) - 1.0).abs() <= 1e-12);
                for (xi, fi) in w.x.iter().zip(&f) {
                    if *xi > 1e-8 {
                        prop_assert!(*fi <= 1e-8 + 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn tcp_residuals_recompute(a in tensor_with(3, 2, -2.0, 2.0), q in prop::collection::vec(-2.0..2.0f64, 2)) {
        let inst = TcpInstance::new(a.clone(), q.clone()).unwrap();
        if let Some(s) = solve(&inst, &budget()).unwrap().solution {
            let f: Vec<f64> = a.apply(&s.x).unwrap().iter().zip(&q).map(|(p, r)| p + r).collect();
            let low = s.x.iter().chain(&f).fold(f64::INFINITY, |m, v| m.min(*v));
            let feas = (-low).max(0.0);
            let comp = s.x.iter().zip(&f).map(|(p, r)| p * r).sum::<f64>().abs();
            prop_assert!((feas - s.feas_residual).abs() <= 1e-12);
            prop_assert!((comp - s.comp_residual).abs() <= 1e-12);
            prop_assert!(feas <= 1e-8 && comp <= 1e-8);
        }
    }

    #[test]
    fn eigenpairs_satisfy_their_equations(a in (2usize..=4).prop_flat_map(|m| tensor_with(m, 2, -2.0, 2.0))) {
        let b = budget();
        for p in h_eigenpairs(&a, &b).unwrap().into_iter().chain(z_eigenpairs(&a, &b).unwrap()) {
            let d = eigen_defect(&a, p.kind, p.lambda, &p.x).unwrap();
            prop_assert!((d - p.residual).abs() <= 1e-12);
            prop_assert!(d <= b.tol.eig);
            if p.kind == EigenKind::Z {
                let norm: f64 = p.x.iter().map(|v| v * v).sum::<f64>().sqrt();
                prop_assert!((norm - 1.0).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn positive_tensors_have_positive_nonnegative_eigenvalues(
        a in (2usize..=4).prop_flat_map(|m| tensor_with(m, 2, 0.01, 2.0))
    ) {
        let b = budget();
        for p in h_eigenpairs(&a, &b).unwrap().into_iter().chain(z_eigenpairs(&a, &b).unwrap()) {
            if p.is_nonnegative() {
                prop_assert!(p.lambda > 1e-8, "{p:?}");
            }
        }
    }

    #[test]
    fn semipositive_tensors_have_nonnegative_eigenvalues(
        (c, d1, d2) in (tensor_with(3, 2, 0.0, 2.0), 0.1..2.0f64, 0.1..2.0f64)
    ) {
        let mut a = c;
        a.set(&[0, 0, 0], d1).unwrap();
        a.set(&[1, 1, 1], d2).unwrap();
        let b = budget();
        for p in h_eigenpairs(&a, &b).unwrap().into_iter().chain(z_eigenpairs(&a, &b).unwrap()) {
            if p.is_nonnegative() {
                prop_assert!(p.lambda >= -1e-8, "{p:?}");
            }
        }
    }

    #[test]
    fn wp_tensors_have_signed_z_eigenvalues(a in prop_oneof![dominant(3), dominant(4)]) {
        let b = budget();
        let v = classify(&a, ClassId::WP, &b).unwrap();
        prop_assume!(v.status == Status::Member);
        for p in z_eigenpairs(&a, &b).unwrap() {
            if a.order() % 2 == 0 {
                prop_assert!(p.lambda > 0.0, "{p:?}");
            } else if p.is_nonnegative() {
                prop_assert!(p.lambda > 0.0, "{p:?}");
            } else if p.is_nonpositive() {
                prop_assert!(p.lambda < 0.0, "{p:?}");
            }
        }
    }

    #[test]
    fn even_order_er_tensors_have_positive_signed_z_eigenvalues(a in tensor_with(4, 2, -1.0, 2.0)) {
        let b = budget();
        let v = classify(&a, ClassId::ER, &b).unwrap();
        if v.status != Status::Member {
            return Ok(());
        }
        for p in z_eigenpairs(&a, &b).unwrap() {
            if p.is_nonnegative() || p.is_nonpositive() {
                prop_assert!(p.lambda > 0.0, "{p:?}");
            }
        }
    }

    #[test]
    fn exhaustive_er_members_are_never_r0_failures(a in tensor_with(3, 2, -2.0, 2.0)) {
        let b = budget();
        let er = classify(&a, ClassId::ER, &b).unwrap();
        if er.status == Status::Member && er.method == Method::ExhaustiveN2 {
            prop_assert_ne!(classify(&a, ClassId::R0, &b).unwrap().status, Status::NonMember);
        }
    }

    #[test]
    fn semipositive_and_p0_verdicts_agree(a in prop_oneof![tensor_with(3, 2, -0.5, 2.0), dominant(4)]) {
        let b = budget();
        for premise in [ClassId::SemiPositive, ClassId::P0] {
            if classify(&a, premise, &b).unwrap().status != Status::Member {
                continue;
            }
            let verdicts: Vec<Status> = [ClassId::R0, ClassId::ER, ClassId::R]
                .iter()
                .map(|&c| classify(&a, c, &b).unwrap().status)
                .filter(|s| *s != Status::Unknown)
                .collect();
            prop_assert!(verdicts.windows(2).all(|w| w[0] == w[1]), "{premise}: {verdicts:?}");
        }
    }
}
