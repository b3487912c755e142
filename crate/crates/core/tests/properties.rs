use approx::assert_abs_diff_eq;
use proptest::prelude::*;

use btz_core::ads::*;
use btz_core::ambient::*;
use btz_core::causal::*;
use btz_core::horizon::*;
use btz_core::lie::*;

fn dims() -> impl Strategy<Value = Dim> {
    prop_oneof![Just(Dim::ADS3), Just(Dim::ADS4), Just(Dim::ADS5)]
}

fn point(dim: Dim, seed: u64) -> AdSPoint {
    AdSPoint::new(random_point(dim, seed, 1.0)).unwrap()
}

fn algebra_combination(dim: Dim, coeffs: &[f64]) -> AlgebraElement {
    algebra_basis(dim)
        .iter()
        .zip(coeffs.iter().cycle())
        .fold(AlgebraElement::zero(dim), |acc, (b, c)| acc + b.scale(*c))
}

fn vector(dim: Dim, c: &[f64]) -> AmbientVector {
    AmbientVector::new(dim, &c[..dim.n()]).unwrap()
}

fn time_reversed(p: &AdSPoint) -> AdSPoint {
    let mut v = *p.vector();
    v.set(T, -v.t());
    v.set(Y, -v.y());
    AdSPoint::new(v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_points_lie_on_quadric(dim in dims(), seed in any::<u64>(), sigma in 0.0..3.0f64) {
        let p = random_point(dim, seed, sigma);
        prop_assert!((p.q(&p) - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn group_preserves_form(
        dim in dims(),
        coeffs in prop::collection::vec(-1.0..1.0f64, 15),
        v in prop::collection::vec(-3.0..3.0f64, 6),
        w in prop::collection::vec(-3.0..3.0f64, 6),
    ) {
        let g = mat_exp(&algebra_combination(dim, &coeffs));
        let (v, w) = (vector(dim, &v), vector(dim, &w));
        let q = v.q(&w);
        prop_assert!((g.apply(&v).q(&g.apply(&w)) - q).abs() <= 1e-9 * (1.0 + q.abs()));
    }

    #[test]
    fn exp_of_negation_inverts(dim in dims(), k in 0usize..15, a in -5.0..5.0f64) {
        let mut gens = algebra_basis(dim);
        gens.extend(iwasawa_basis(dim).n_elements().cloned());
        gens.push(generator(Generator::J1, dim));
        gens.push(generator(Generator::J2, dim));
        let x = &gens[k % gens.len()];
        let prod = mat_exp(&x.scale(a)).compose(&mat_exp(&x.scale(-a)));
        prop_assert!(prod.matrix().max_abs_diff(&SquareMatrix::identity(dim)) <= 1e-11);
    }

    #[test]
    fn eta_complete_keeps_first_column(dim in dims(), seed in any::<u64>()) {
        let p = random_point(dim, seed, 1.5);
        let g = eta_complete(&p).unwrap();
        prop_assert_eq!(g.matrix().column(U), p);
        prop_assert!(validate_element(g.matrix(), ElementKind::Group).valid);
    }

    #[test]
    fn stabilizer_does_not_move_the_point(dim in dims(), seed in any::<u64>(), hseed in any::<u64>()) {
        let p = point(dim, seed);
        let g = representative(&p, Constraint::None, None).unwrap();
        let h = representative(&p, Constraint::None, Some(hseed)).unwrap();
        prop_assert!(project(h.group()).vector().max_abs_diff(project(g.group()).vector()) <= 1e-9);
    }

    #[test]
    fn iota_commutes_with_singularity(seed in any::<u64>(), sigma in 0.0..2.0f64) {
        let p = AdSPoint::new(random_point(Dim::ADS3, seed, sigma)).unwrap();
        prop_assert_eq!(is_singular(&iota_point(&p).unwrap()), is_singular(&p));
    }

    #[test]
    fn psi_carries_det_to_form(a in -3.0..3.0f64, b in -3.0..3.0f64, c in -3.0..3.0f64) {
        prop_assume!(a.abs() > 0.05);
        // [[a, b], [c, (1 + bc)/a]]
        let m = SL2Matrix::new(a, b, c, (1.0 + b * c) / a);
        prop_assume!(m.is_ok());
        let m = m.unwrap();
        let p = psi(&m);
        prop_assert!((p.vector().q(p.vector()) - m.det()).abs() <= 1e-12 * (1.0 + p.vector().max_abs().powi(2)));
        let back = psi_inv(p.vector()).unwrap();
        prop_assert!(back.max_abs_diff(&m) <= 1e-12 * (1.0 + p.vector().max_abs()));
    }

    #[test]
    fn geodesics_are_affine(
        dim in dims(),
        seed in any::<u64>(),
        w in prop::collection::vec(-1.0..1.0f64, 4),
        s1 in -4.0..4.0f64,
        s2 in -4.0..4.0f64,
    ) {
        let w = Direction::normalized(dim, &w[..dim.directions()]);
        prop_assume!(w.is_some());
        let w = w.unwrap();
        let rep = representative(&point(dim, seed), Constraint::None, Some(seed)).unwrap();
        let p = |s| *geodesic_point(&rep, &w, s).vector();
        let scale = 1.0 + p(s1).max_abs() + p(s2).max_abs();
        let r = (p(s1) + p(s2) - p(0.5 * (s1 + s2)).scale(2.0)).max_abs();
        prop_assert!(r <= 1e-12 * scale);
        let v = geodesic_tangent(&rep, &w);
        prop_assert!(v.q(&v).abs() <= 1e-12 * scale * scale);
    }

    #[test]
    fn representative_invariance(dim in dims(), seed in any::<u64>()) {
        let p = point(dim, seed);
        let tag = classify(&p, 0).tag;
        for s in 1..6 {
            prop_assert_eq!(classify(&p, s).tag, tag);
        }
    }

    #[test]
    fn time_reversal_swaps_orientations(dim in dims(), seed in any::<u64>()) {
        let p = point(dim, seed);
        let r = time_reversed(&p);
        prop_assert_eq!(
            classify_oriented(&p, 0, Orientation::Future),
            classify_oriented(&r, 0, Orientation::Past)
        );
        prop_assert_eq!(classify(&p, 0).tag, classify(&r, 0).tag);
    }

    #[test]
    fn quadratic_roots_match_branch_roots(
        dim in dims(),
        seed in any::<u64>(),
        w in prop::collection::vec(-1.0..1.0f64, 4),
    ) {
        let w = Direction::normalized(dim, &w[..dim.directions()]);
        prop_assume!(w.is_some());
        let w = w.unwrap();
        let p = point(dim, seed);
        prop_assume!(!is_singular(&p));
        let rep = representative(&p, Constraint::None, Some(seed)).unwrap();
        let v = geodesic_tangent(&rep, &w);
        let (t, y) = (p.vector().t(), p.vector().y());
        // t(s)² − y(s)² = c0 + c1 s + c2 s²
        let (c0, c1, c2) = (t * t - y * y, 2.0 * (t * v.t() - y * v.y()), v.t() * v.t() - v.y() * v.y());
        let bd = branch_data(&rep).unwrap();
        let mut branch: Vec<f64> = branch_roots(&bd, &w).iter().flatten().copied().collect();
        branch.sort_by(f64::total_cmp);
        for s in &branch {
            let scale = c0.abs() + (c1 * s).abs() + (c2 * s * s).abs();
            prop_assert!((c0 + c1 * s + c2 * s * s).abs() <= 1e-10 * scale.max(1.0));
        }
        if c2.abs() > 1e-6 {
            let disc = c1 * c1 - 4.0 * c0 * c2;
            prop_assert!(disc >= -1e-9 * (c1 * c1).max(1.0));
            let sq = disc.max(0.0).sqrt();
            let q = -0.5 * (c1 + c1.signum() * sq);
            let mut quad = [q / c2, c0 / q];
            quad.sort_by(f64::total_cmp);
            prop_assert_eq!(branch.len(), 2);
            for (a, b) in quad.iter().zip(&branch) {
                prop_assert!((a - b).abs() <= 1e-10 * (1.0 + b.abs()));
            }
        }
    }

    #[test]
    fn lateral_round_trip(
        xs in prop::bool::ANY,
        ov in prop::bool::ANY,
        a in -2.0..2.0f64,
        ab in -2.0..2.0f64,
        al in -2.0..2.0f64,
        plus in prop::bool::ANY,
    ) {
        let sign = |b: bool| if b { 1.0 } else { -1.0 };
        let base = h3_parametrize(sign(xs), sign(ov), a, ab);
        let branch = if plus { Branch::Plus } else { Branch::Minus };
        let p = lateral_action(branch, al, &base).unwrap();
        prop_assert_eq!((p.vector().t(), p.vector().y()), (base.vector().t(), base.vector().y()));
        match lateral_inverse(&p, branch) {
            Ok((alpha, back)) => {
                prop_assert!((alpha - al).abs() <= 1e-9);
                prop_assert!(back.vector().max_abs_diff(base.vector()) <= 1e-9);
            }
            Err(btz_core::Error::UseOtherBranch(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn orbit_modes_stay_on_u_eq_x(a in -2.0..2.0f64, b in -2.0..2.0f64) {
        let d = Dim::ADS3;
        let base = AdSPoint::from_components(d, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        let j1 = generator(Generator::J1, d);
        let x = root_vector(RootLabel::new(1, 1), d).unwrap();
        for mode in [OrbitMode::Product, OrbitMode::SingleExp] {
            let p = orbit_two_param(&j1, &x, a, b, &base, mode).unwrap();
            let v = p.vector();
            prop_assert!((v.u() - v.x()).abs() <= 1e-12 * (1.0 + v.max_abs()));
            prop_assert!(horizon_residual(&p).value.abs() <= 1e-9 * (1.0 + v.max_abs().powi(2)));
        }
    }

    #[test]
    fn cartan_preserves_horizon(i in 0usize..500, a1 in -2.0..2.0f64, a2 in -2.0..2.0f64) {
        let p = h4_sample(3, i).point;
        let g = mat_exp(&generator(Generator::J1, Dim::ADS4).scale(a1))
            .compose(&mat_exp(&generator(Generator::J2, Dim::ADS4).scale(a2)));
        let q = AdSPoint::new(g.apply(p.vector())).unwrap();
        prop_assert!(horizon_residual(&q).value.abs() <= 1e-9 * (1.0 + q.vector().max_abs().powi(2)));
    }

    #[test]
    fn horizon_points_have_an_escaping_direction(dim in dims(), i in 0usize..2000) {
        let s = h4_sample(9, i);
        let p = match dim.l() {
            3 => h3_parametrize(s.x_sign, s.overall, s.a, s.alpha_base),
            4 => s.point,
            _ => h5_candidate(9, i),
        };
        let c = classify(&p, i as u64);
        prop_assume!(c.tag == Tag::Horizon);
        let e = c.escape().unwrap();
        let w = e.tangency_direction(p.dim()).unwrap();
        let slack = 1e-7 * (1.0 + e.cap_plus.normal().iter().map(|v| v.abs()).sum::<f64>()
            + e.cap_minus.normal().iter().map(|v| v.abs()).sum::<f64>());
        for cap in [e.cap_plus, e.cap_minus] {
            let lhs: f64 = cap.normal().iter().zip(w.as_slice()).map(|(n, w)| n * w).sum();
            prop_assert!(lhs >= cap.offset() - slack, "{lhs} < {}", cap.offset());
        }
    }
}

#[test]
fn iota_preserves_tags() {
    for i in 0..500 {
        let p = point(Dim::ADS3, stream_seed(1, i));
        let ip = iota_point(&p).unwrap();
        assert_eq!(classify(&p, i).tag, classify(&ip, i).tag, "{p:?}");
    }
}

#[test]
fn black_holes_are_open() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
    let mut checked = 0;
    for i in 0..400 {
        let dim = if i % 2 == 0 { Dim::ADS3 } else { Dim::ADS4 };
        let p = point(dim, stream_seed(2, i));
        let c = classify(&p, 0);
        if c.tag != Tag::BlackHole || !c.gap().is_some_and(|g| g > 0.01) {
            continue;
        }
        checked += 1;
        for _ in 0..50 {
            let mut v = *p.vector();
            for k in 0..dim.n() {
                v.set(k, v[k] + rng.random_range(-1e-4..1e-4));
            }
            let q = AdSPoint::new(v.scale(1.0 / v.q(&v).sqrt())).unwrap();
            assert_eq!(classify(&q, 0).tag, Tag::BlackHole);
        }
    }
    assert!(checked > 20, "{checked}");
}

#[test]
fn h3_family_examples() {
    assert_eq!(
        h3_parametrize(1.0, 1.0, 0.0, 1.0).vector().as_slice(),
        &[1.0, 1.0, 1.0, 0.0]
    );
    let p = lateral_action(
        Branch::Plus,
        1.0,
        &AdSPoint::from_components(Dim::ADS3, &[1.0, 1.0, -1.0, 0.0]).unwrap(),
    )
    .unwrap();
    assert_abs_diff_eq!(horizon_residual(&p).value, 0.0);
    assert_eq!(classify(&p, 0).tag, Tag::Horizon);
}
