//! Equivalence of the four forms of the field equations, solution-scenario
//! residuals, polarization-driven sources, and the vacuum rank-3 relation.

use cem_core::grid::{div, Channel};
use cem_core::maxwell::{
    form_equivalence_residual, residual_complex3d, residual_continuity, residual_covariant,
    residual_dual, residual_real_split, vacuum_rank3_check,
};
use cem_core::media::MediumSpec;
use cem_core::potentials::{sources_from_p, PolarizationTensor};
use cem_core::scenarios::{self, SeededRng, TrigConfig, TrigScalar};
use cem_core::vec3;

const EXACT: Channel = Channel::Exact;

#[test]
fn four_forms_are_rearrangements_on_arbitrary_fields() {
    for seed in 0..20 {
        let sc = scenarios::trig_random(seed, 2, 1.0, 1.0);
        let scale = (sc.field_scale * sc.freq_scale).max(1.0);
        for x in [[0.3, -0.1, 0.45, 0.2], [0.9, 0.4, -0.7, 0.1]] {
            let rep = form_equivalence_residual(&sc.config, &x, EXACT).unwrap();
            assert!(rep.complex3d_vs_covariant <= 1e-13 * scale);
            assert!(rep.real_split_vs_covariant <= 1e-13 * scale);
            assert!(rep.dual_contraction <= 1e-12 * scale);
        }
    }
}

#[test]
fn non_solutions_have_large_residuals() {
    let mut large = 0;
    let trials = 100;
    for seed in 0..trials {
        let sc = scenarios::trig_random(5000 + seed, 2, 1.0, 1.0);
        let x = [0.37, 0.21, -0.43, 0.68];
        let scale = sc.field_scale * sc.freq_scale;
        let res = residual_covariant(&sc.config, &x, EXACT).unwrap();
        let worst = res.iter().fold(0.0f64, |a, z| a.max(z.norm()));
        if worst > 1e-3 * scale {
            large += 1;
        }
    }
    assert!(
        large >= 95,
        "only {large}/{trials} seeds gave large residuals"
    );
}

#[test]
fn solution_scenarios_pass_all_forms() {
    let m = MediumSpec::at_rest(2.5, 1.2, 0.0, 1.0).unwrap();
    let scenarios_list = [
        scenarios::vacuum_plane_wave([0.5, -0.2, 0.3], [0.4, 0.7, -0.2], 1.3, 1.0).unwrap(),
        scenarios::rest_medium_plane_wave(&m, [0.5, -0.2, 0.3], [0.4, 0.7, -0.2], 1.3).unwrap(),
        scenarios::boosted_medium_plane_wave(
            &m,
            [0.3, -0.1, 0.25],
            [0.5, -0.2, 0.3],
            [0.4, 0.7, -0.2],
            1.3,
        )
        .unwrap(),
    ];
    for sc in &scenarios_list {
        let tol = 1e-10 * sc.field_scale * sc.freq_scale;
        for x in sc.grid(4).unwrap().events() {
            let (curl_res, div_res) = residual_complex3d(&sc.config, &x, EXACT).unwrap();
            assert!(vec3::cmax_abs(&curl_res) <= tol, "{}", sc.name);
            assert!(div_res.norm() <= tol);
            let cov = residual_covariant(&sc.config, &x, EXACT).unwrap();
            assert!(cov.iter().all(|z| z.norm() <= tol));
            assert!(residual_dual(&sc.config, &x, EXACT).unwrap().norm() <= tol);
            let (rr, rs) = residual_real_split(&sc.config, &x, EXACT).unwrap();
            assert!(rr.iter().chain(rs.iter()).all(|v| v.abs() <= tol));
            assert!(residual_continuity(&sc.config, &x, EXACT).unwrap().abs() <= tol);
        }
    }
}

#[test]
fn coulomb_field_is_divergence_free_off_origin() {
    let sc = scenarios::coulomb_static(3.0, 0.2, 1.0).unwrap();
    let tol = 1e-10 * sc.field_scale * sc.freq_scale;
    for x in sc.grid(4).unwrap().events() {
        if sc.config.guard(&x).is_err() {
            continue;
        }
        let d = div(&sc.config.d, &x, EXACT).unwrap();
        assert!(d.abs() <= tol, "{d}");
        let (_, div_res) = residual_complex3d(&sc.config, &x, EXACT).unwrap();
        assert!(div_res.norm() <= tol);
    }
}

#[test]
fn fd_channels_converge_to_the_exact_residual() {
    let sc = scenarios::trig_random(77, 2, 1.0, 1.0);
    let x = [0.31, 0.12, -0.27, 0.53];
    let exact = residual_covariant(&sc.config, &x, EXACT).unwrap();
    // FD4 halving the step shrinks the deviation ~16x.
    let dev = |h: f64| {
        let fd = residual_covariant(&sc.config, &x, Channel::Fd4 { h }).unwrap();
        exact
            .iter()
            .zip(&fd)
            .fold(0.0f64, |a, (e, f)| a.max((e - f).norm()))
    };
    let slope = cem_core::grid::convergence_order(dev, sc.h * 4.0, 3).unwrap();
    assert!((slope - 4.0).abs() <= 0.3, "slope {slope}");

    let dev2 = |h: f64| {
        let fd = residual_covariant(&sc.config, &x, Channel::Fd2 { h }).unwrap();
        exact
            .iter()
            .zip(&fd)
            .fold(0.0f64, |a, (e, f)| a.max((e - f).norm()))
    };
    let slope2 = cem_core::grid::convergence_order(dev2, sc.h * 4.0, 3).unwrap();
    assert!((slope2 - 2.0).abs() <= 0.3, "slope {slope2}");
}

#[test]
fn polarization_sources_satisfy_continuity_inside_a_configuration() {
    // Build sources from a polarization tensor and check the continuity
    // residual through the standard configuration machinery.
    let mut rng = SeededRng::new(0x70);
    let p = PolarizationTensor::random(&mut rng, 2, 0.8);
    let c = 1.0;

    // rho = -div pe and j = d_t pe + c curl pm, as trig fields.
    let rho = {
        let mut acc = TrigScalar::zero();
        for k in 0..3 {
            acc = acc.plus(&p.pe[k].derivative(k + 1).scaled(-1.0));
        }
        acc
    };
    let j: [TrigScalar; 3] = core::array::from_fn(|k| {
        let mut acc = p.pe[k].derivative(0).scaled(c);
        for q in 0..3 {
            for r in 0..3 {
                let e = cem_core::tensor::levi3(k, q, r) as f64;
                if e != 0.0 {
                    acc = acc.plus(&p.pm[r].derivative(q + 1).scaled(c * e));
                }
            }
        }
        acc
    });
    let cfg = TrigConfig {
        e: core::array::from_fn(|_| TrigScalar::zero()),
        d: core::array::from_fn(|_| TrigScalar::zero()),
        h: core::array::from_fn(|_| TrigScalar::zero()),
        b: core::array::from_fn(|_| TrigScalar::zero()),
        rho,
        j,
        c,
    }
    .into_configuration();

    for x in [[0.2, 0.4, -0.1, 0.7], [0.9, -0.3, 0.6, 0.2]] {
        // The symbolic sources match the pointwise evaluation...
        let s = sources_from_p(&p, &x, EXACT, c).unwrap();
        let cfg_s = cfg.sources(&x);
        assert!((s.rho - cfg_s.rho).abs() <= 1e-13);
        for k in 0..3 {
            assert!((s.j[k] - cfg_s.j[k]).abs() <= 1e-13);
        }
        // ...and conserve charge identically.
        assert!(residual_continuity(&cfg, &x, EXACT).unwrap().abs() <= 1e-11);
        assert!(
            cem_core::potentials::continuity_from_p(&p, &x, EXACT, c)
                .unwrap()
                .abs()
                <= 1e-11
        );
    }
}

#[test]
fn vacuum_rank3_relation_every_index_pair() {
    let sc = scenarios::vacuum_plane_wave([0.3, -0.4, 0.55], [0.2, 0.7, 0.4], 1.3, 1.0).unwrap();
    let scale = sc.field_scale * sc.freq_scale;
    for x in [[0.23, 0.11, -0.35, 0.71], [0.6, -0.2, 0.4, 0.1]] {
        for alpha in 0..4 {
            for beta in 0..4 {
                let res = vacuum_rank3_check(&sc.config, &x, alpha, beta, EXACT).unwrap();
                for z in res {
                    assert!(z.norm() <= 1e-10 * scale, "({alpha},{beta}): {z}");
                }
            }
        }
    }
}
