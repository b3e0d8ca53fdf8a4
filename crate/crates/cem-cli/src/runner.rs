//! Suite definitions: each suite assembles a deterministic list of check
//! records from the core library, driven by the run configuration's seed,
//! channel and grid settings.

use cem_core::balance::{self, StressKind};
use cem_core::fields::{self, ComplexPair, FieldPoint};
use cem_core::grid::{self, Channel, VectorField};
use cem_core::lagrangian;
use cem_core::lorentz::{self, BoostSpec};
use cem_core::maxwell;
use cem_core::media::{self, MediumSpec};
use cem_core::potentials::{self, FourPotential, HertzTensor, PolarizationTensor};
use cem_core::scenarios::{self, random_field_point, Scenario, SeededRng, TrigScalar};
use cem_core::tensor;
use cem_core::vec3;
use cem_core::Complex64;

use crate::config::{ChannelKind, RunConfig, Suite};
use crate::report::Record;

pub struct Ctx<'a> {
    pub cfg: &'a RunConfig,
}

impl Ctx<'_> {
    fn channel_for(&self, h: f64) -> Channel {
        let h = self.cfg.fd_h.unwrap_or(h);
        match self.cfg.channel {
            ChannelKind::Exact => Channel::Exact,
            ChannelKind::Fd2 => Channel::Fd2 { h },
            ChannelKind::Fd4 => Channel::Fd4 { h },
        }
    }

    /// Tag tolerance: the exact-channel default, loosened on FD channels to
    /// their discretization floor, overridable from the config.
    fn tol(&self, tag: &str, exact_default: f64) -> f64 {
        let default = match self.cfg.channel {
            ChannelKind::Exact => exact_default,
            ChannelKind::Fd4 => exact_default.max(2e-5),
            ChannelKind::Fd2 => exact_default.max(2e-2),
        };
        self.cfg.tol(tag, default)
    }

    fn wants(&self, scenario: &str) -> bool {
        self.cfg.scenarios.is_empty() || self.cfg.scenarios.iter().any(|s| s == scenario)
    }

    fn rng(&self, salt: u64) -> SeededRng {
        SeededRng::new(
            self.cfg
                .seed
                .wrapping_mul(0x9E37_79B9_7F4A_7C15)
                .wrapping_add(salt),
        )
    }
}

pub fn run(cfg: &RunConfig) -> Vec<Record> {
    let ctx = Ctx { cfg };
    let mut records = Vec::new();
    for suite in &cfg.suites {
        match suite {
            Suite::Identities => identities(&ctx, &mut records),
            Suite::Maxwell => maxwell_suite(&ctx, &mut records),
            Suite::Balance => balance_suite(&ctx, &mut records),
            Suite::Angular => angular_suite(&ctx, &mut records),
            Suite::Boost => boost_suite(&ctx, &mut records),
            Suite::Media => media_suite(&ctx, &mut records),
            Suite::Potentials => potentials_suite(&ctx, &mut records),
            Suite::Lagrangian => lagrangian_suite(&ctx, &mut records),
        }
    }
    records
}

// Standard scenarios, derived deterministically from the config.

fn wave_k(c: f64) -> [f64; 3] {
    let _ = c;
    [0.5, -0.2, 0.3]
}

fn wave_pol(c: f64) -> [f64; 3] {
    // Orthogonalized against the wave vector.
    let k = wave_k(c);
    let p0 = [0.4, 0.7, -0.2];
    let kp = vec3::dot(k, p0) / vec3::dot(k, k);
    vec3::sub(p0, vec3::scale(kp, k))
}

fn vacuum_wave(cfg: &RunConfig) -> Scenario {
    scenarios::vacuum_plane_wave(wave_k(cfg.c), wave_pol(cfg.c), 1.1, cfg.c).expect("scenario")
}

fn rest_wave(cfg: &RunConfig) -> Scenario {
    let m = MediumSpec::at_rest(2.0, 1.4, 0.0, cfg.c).expect("medium");
    scenarios::rest_medium_plane_wave(&m, wave_k(cfg.c), wave_pol(cfg.c), 1.1).expect("scenario")
}

fn boosted_wave(cfg: &RunConfig) -> Scenario {
    let m = MediumSpec::at_rest(2.0, 1.4, 0.0, cfg.c).expect("medium");
    let w = vec3::scale(cfg.c, [0.25, 0.1, -0.15]);
    scenarios::boosted_medium_plane_wave(&m, w, wave_k(cfg.c), wave_pol(cfg.c), 1.1)
        .expect("scenario")
}

fn coulomb(cfg: &RunConfig) -> Scenario {
    scenarios::coulomb_static(2.0, 0.25, cfg.c).expect("scenario")
}

fn conducting(cfg: &RunConfig) -> Scenario {
    let m = MediumSpec::at_rest(2.0, 1.5, 0.02, cfg.c).expect("medium");
    scenarios::conducting_standing_wave(&m, [0.8, 0.0, 0.0], [0.0, 1.0, 0.0], 1.0)
        .expect("scenario")
}

fn trig(cfg: &RunConfig, salt: u64) -> Scenario {
    scenarios::trig_random(cfg.seed.wrapping_add(salt), 2, 1.0, cfg.c)
}

fn inhomogeneous(cfg: &RunConfig) -> Scenario {
    let eps = TrigScalar::harmonic(0.1, [0.0, 1.0, 0.0, 0.0], 0.0).biased(2.0);
    let mu = TrigScalar::harmonic(0.08, [0.4, 0.0, 0.5, -0.25], 0.9).biased(1.5);
    scenarios::inhomogeneous_medium(&eps, &mu, cfg.seed.wrapping_add(17), cfg.c).expect("scenario")
}

/// Worst residual of `f` over the scenario's sampling grid, skipping
/// singular events.
fn grid_max(sc: &Scenario, n: usize, mut f: impl FnMut(&cem_core::Event) -> Option<f64>) -> f64 {
    let mut worst = 0.0f64;
    for x in sc.grid(n).expect("grid").events() {
        if sc.config.guard(&x).is_err() {
            continue;
        }
        if let Some(r) = f(&x) {
            worst = worst.max(r);
        }
    }
    worst
}

// ---------------------------------------------------------------- identities

fn identities(ctx: &Ctx, out: &mut Vec<Record>) {
    const SUITE: &str = "identities";
    let scn = "random_pairs";
    if ctx.wants(scn) {
        // Levi-Civita contractions are integer-exact.
        for (level, tag) in [(1, "B01"), (2, "B02"), (3, "B03"), (4, "B03-full")] {
            let r = tensor::contract_levi_civita(level);
            out.push(Record::bound(
                SUITE,
                scn,
                tag,
                r,
                1.0,
                ctx.cfg.tol(tag, 1e-300),
            ));
        }

        let mut rng = ctx.rng(1);
        let n_pairs = 1000;
        let mut worst_dual = 0.0f64;
        let mut worst_scalar = [0.0f64; 14];
        let mut worst_cof = [0.0f64; 3];
        let mut worst_det = 0.0f64;
        let mut worst_conv = 0.0f64;
        let mut worst_b20 = 0.0f64;
        let mut worst_real_dual = 0.0f64;
        let mut worst_selfdual = 0.0f64;
        for _ in 0..n_pairs {
            let p = random_field_point(&mut rng, 1.5);
            let c = ComplexPair::from_fields(&p);
            let s2 = (c.scale() * c.scale()).max(1.0);

            worst_dual = worst_dual.max(fields::duality_residual(&c).unwrap() / c.scale().max(1.0));
            let rep = fields::scalar_identity_suite(&c).unwrap();
            for (slot, r) in [
                rep.pq_split,
                rep.fr_value,
                rep.eff_value,
                rep.err_value,
                rep.quarter_pq,
                rep.decomp_first,
                rep.decomp_second,
                rep.trace_identity,
                rep.trace_value,
                rep.fs_value,
                rep.gr_value,
                rep.fr_gs_diff,
                rep.fr_gs_sum,
                rep.traceless,
            ]
            .into_iter()
            .enumerate()
            {
                worst_scalar[slot] = worst_scalar[slot].max(r / s2);
            }
            let cof = fields::cofactor_check(&c).unwrap();
            worst_cof[0] = worst_cof[0].max(cof.pq_identity / s2);
            worst_cof[1] = worst_cof[1].max(cof.commute / s2);
            worst_cof[2] = worst_cof[2].max(cof.quarter_trace / s2);
            let fg2 = fields::invariant_fg(&c).norm().powi(2).max(s2 * s2);
            worst_det = worst_det.max(cof.det_p.max(cof.det_q) / fg2);
            let conv = fields::convenience_products(&c);
            worst_conv = worst_conv.max(conv.into_iter().fold(0.0, f64::max) / s2);

            let dot = |a: [f64; 3], b: [f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
            let expect =
                Complex64::new(dot(p.e, p.d) - dot(p.h, p.b), dot(p.e, p.b) + dot(p.h, p.d));
            worst_b20 = worst_b20.max((fields::invariant_fg(&c) - expect).norm() / s2);
            worst_real_dual = worst_real_dual
                .max(fields::real_duality_residual(&p).unwrap() / c.scale().max(1.0));

            // Vacuum self-duality on the paired fields.
            let vac = ComplexPair::from_fields(&FieldPoint::new(p.e, p.e, p.h, p.h));
            let q = fields::build_q(&vac);
            let i = Complex64::new(0.0, 1.0);
            let low = q.lower(0).unwrap().lower(1).unwrap().scale(i);
            worst_selfdual =
                worst_selfdual.max(q.dual().unwrap().max_abs_diff(&low) / vac.scale().max(1.0));
        }
        out.push(Record::bound(
            SUITE,
            scn,
            "PQdual",
            worst_dual,
            1.0,
            ctx.cfg.tol("PQdual", 1e-12),
        ));
        out.push(Record::bound(
            SUITE,
            scn,
            "DualVacuum",
            worst_selfdual,
            1.0,
            ctx.cfg.tol("DualVacuum", 1e-12),
        ));
        out.push(Record::bound(
            SUITE,
            scn,
            "B4B5",
            worst_real_dual,
            1.0,
            ctx.cfg.tol("B4B5", 1e-12),
        ));
        let scalar_tags = [
            "B6",
            "B7",
            "B8-F",
            "B8-R",
            "B9",
            "B10",
            "B10-second",
            "B10a",
            "B10a-value",
            "B13",
            "B14",
            "B15",
            "B16",
            "B17",
        ];
        for (tag, worst) in scalar_tags.iter().zip(worst_scalar) {
            out.push(Record::bound(
                SUITE,
                scn,
                *tag,
                worst,
                1.0,
                ctx.cfg.tol(tag, 1e-12),
            ));
        }
        out.push(Record::bound(
            SUITE,
            scn,
            "CofactorMinkowski",
            worst_cof[0],
            1.0,
            ctx.cfg.tol("CofactorMinkowski", 1e-11),
        ));
        out.push(Record::bound(
            SUITE,
            scn,
            "B18",
            worst_cof[1].max(worst_cof[2]),
            1.0,
            ctx.cfg.tol("B18", 1e-11),
        ));
        out.push(Record::bound(
            SUITE,
            scn,
            "B19",
            worst_det,
            1.0,
            ctx.cfg.tol("B19", 1e-11),
        ));
        out.push(Record::bound(
            SUITE,
            scn,
            "B20",
            worst_b20,
            1.0,
            ctx.cfg.tol("B20", 1e-12),
        ));
        out.push(Record::bound(
            SUITE,
            scn,
            "ConvenienceProducts",
            worst_conv,
            1.0,
            ctx.cfg.tol("ConvenienceProducts", 1e-12),
        ));

        // Rank-3 dual round trip.
        let mut rng = ctx.rng(2);
        let mut worst = 0.0f64;
        for _ in 0..200 {
            let b: [Complex64; 4] = core::array::from_fn(|_| {
                Complex64::new(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0))
            });
            let back = tensor::dual_rank3(&tensor::rank3_from_vector(&b));
            for mu in 0..4 {
                worst = worst.max((back[mu] - b[mu]).norm());
            }
        }
        out.push(Record::bound(
            SUITE,
            scn,
            "B20a",
            worst,
            2.0,
            ctx.cfg.tol("B20a", 1e-13),
        ));
    }

    // Vector-calculus identities on trig fields over the sampling grid.
    let sc = trig(ctx.cfg, 3);
    if ctx.wants(&sc.name) {
        let ch = ctx.channel_for(sc.h);
        let mut rng = ctx.rng(3);
        let mk = |rng: &mut SeededRng| -> VectorField {
            VectorField::new(
                Box::new(TrigScalar::random(rng, 2, 1.0).biased(1.5)),
                Box::new(TrigScalar::random(rng, 2, 1.0).biased(-1.8)),
                Box::new(TrigScalar::random(rng, 2, 1.0).biased(1.6)),
            )
        };
        let a = mk(&mut rng);
        let b = mk(&mut rng);
        let f = TrigScalar::random(&mut rng, 2, 0.5).biased(2.0);
        let scale = 60.0; // cubic in the ~2.5 field bound, one derivative

        let mut worst = grid::VectorIdentityReport {
            div_cross: 0.0,
            div_scaled: 0.0,
            curl_scaled: 0.0,
            double_curl: 0.0,
            exchange: 0.0,
            exchange_sum_a: None,
            exchange_sum_b: None,
            curl_product: 0.0,
            curl_product_two: 0.0,
            cross_curl: 0.0,
        };
        let mut sum_a = 0.0f64;
        let mut sum_b = 0.0f64;
        for x in sc.grid(ctx.cfg.grid_n).expect("grid").events() {
            let rep = grid::vector_identity_suite(&a, &b, &f, &x, ch, 1e-6).unwrap();
            worst.div_cross = worst.div_cross.max(rep.div_cross);
            worst.div_scaled = worst.div_scaled.max(rep.div_scaled);
            worst.curl_scaled = worst.curl_scaled.max(rep.curl_scaled);
            worst.double_curl = worst.double_curl.max(rep.double_curl);
            worst.exchange = worst.exchange.max(rep.exchange);
            worst.curl_product = worst.curl_product.max(rep.curl_product);
            worst.curl_product_two = worst.curl_product_two.max(rep.curl_product_two);
            worst.cross_curl = worst.cross_curl.max(rep.cross_curl);
            if let Some(r) = rep.exchange_sum_a {
                sum_a = sum_a.max(r);
            }
            if let Some(r) = rep.exchange_sum_b {
                sum_b = sum_b.max(r);
            }
        }
        let tol = ctx.tol("A1", 1e-11);
        out.push(Record::bound(
            SUITE,
            &sc.name,
            "A1",
            worst.div_cross,
            scale,
            tol,
        ));
        out.push(Record::bound(
            SUITE,
            &sc.name,
            "A2",
            worst.div_scaled,
            scale,
            ctx.tol("A2", 1e-11),
        ));
        out.push(Record::bound(
            SUITE,
            &sc.name,
            "A3",
            worst.curl_scaled,
            scale,
            ctx.tol("A3", 1e-11),
        ));
        out.push(Record::bound(
            SUITE,
            &sc.name,
            "A4",
            worst.double_curl,
            scale * 4.0,
            ctx.tol("A4", 1e-11),
        ));
        out.push(Record::bound(
            SUITE,
            &sc.name,
            "A5",
            worst.exchange,
            scale,
            ctx.tol("A5", 1e-11),
        ));
        out.push(Record::bound(
            SUITE,
            &sc.name,
            "A5-sum-A",
            sum_a,
            scale,
            ctx.tol("A5-sum-A", 1e-11),
        ));
        out.push(Record::bound(
            SUITE,
            &sc.name,
            "A5-sum-B",
            sum_b,
            scale,
            ctx.tol("A5-sum-B", 1e-11),
        ));
        out.push(Record::bound(
            SUITE,
            &sc.name,
            "CurlIdentity",
            worst.curl_product,
            scale,
            ctx.tol("CurlIdentity", 1e-11),
        ));
        out.push(Record::bound(
            SUITE,
            &sc.name,
            "CurlIdentityTwo",
            worst.curl_product_two,
            scale,
            ctx.tol("CurlIdentityTwo", 1e-11),
        ));
        out.push(Record::bound(
            SUITE,
            &sc.name,
            "AcrossBcurl",
            worst.cross_curl,
            scale,
            ctx.tol("AcrossBcurl", 1e-11),
        ));
    }
}

// ------------------------------------------------------------------- maxwell

fn maxwell_suite(ctx: &Ctx, out: &mut Vec<Record>) {
    const SUITE: &str = "maxwell";
    let solutions = [
        vacuum_wave(ctx.cfg),
        rest_wave(ctx.cfg),
        boosted_wave(ctx.cfg),
        coulomb(ctx.cfg),
        conducting(ctx.cfg),
    ];
    for sc in &solutions {
        if !ctx.wants(&sc.name) {
            continue;
        }
        let ch = ctx.channel_for(sc.h);
        let lin = sc.field_scale * sc.freq_scale;
        let n = ctx.cfg.grid_n;

        let r = grid_max(sc, n, |x| {
            let (c3, d3) = maxwell::residual_complex3d(&sc.config, x, ch).unwrap();
            Some(vec3::cmax_abs(&c3).max(d3.norm()))
        });
        let kind = ctx.cfg.channel;
        push_maybe_slope(ctx, out, sc, "MaxwellComplexHom", r, lin, 1e-10, |h| {
            let refine = match kind {
                ChannelKind::Fd2 => Channel::Fd2 { h },
                _ => Channel::Fd4 { h },
            };
            grid_max(sc, 3, |x| {
                let (c3, d3) = maxwell::residual_complex3d(&sc.config, x, refine).unwrap();
                Some(vec3::cmax_abs(&c3).max(d3.norm()))
            })
        });

        let r = grid_max(sc, n, |x| {
            let cov = maxwell::residual_covariant(&sc.config, x, ch).unwrap();
            Some(cov.iter().fold(0.0f64, |a, z| a.max(z.norm())))
        });
        out.push(Record::bound(
            SUITE,
            &sc.name,
            "CovariantMaxwell",
            r,
            lin,
            ctx.tol("CovariantMaxwell", 1e-10),
        ));

        let r = grid_max(sc, n, |x| {
            Some(maxwell::residual_dual(&sc.config, x, ch).unwrap().norm())
        });
        out.push(Record::bound(
            SUITE,
            &sc.name,
            "MaxwellI",
            r,
            lin,
            ctx.tol("MaxwellI", 1e-10),
        ));

        let r = grid_max(sc, n, |x| {
            let (rr, rs) = maxwell::residual_real_split(&sc.config, x, ch).unwrap();
            Some(
                rr.iter()
                    .chain(rs.iter())
                    .fold(0.0f64, |a, v| a.max(v.abs())),
            )
        });
        out.push(Record::bound(
            SUITE,
            &sc.name,
            "MaxwellReal",
            r,
            lin,
            ctx.tol("MaxwellReal", 1e-10),
        ));

        let r = grid_max(sc, n, |x| {
            Some(
                maxwell::residual_continuity(&sc.config, x, ch)
                    .unwrap()
                    .abs(),
            )
        });
        out.push(Record::bound(
            SUITE,
            &sc.name,
            "ContinuityEq",
            r,
            lin,
            ctx.tol("ContinuityEq", 1e-10),
        ));
    }

    // Form equivalences and the rank-3 contraction identity hold on
    // arbitrary fields.
    let sc = trig(ctx.cfg, 11);
    if ctx.wants(&sc.name) {
        let ch = ctx.channel_for(sc.h);
        let lin = sc.field_scale * sc.freq_scale;
        let mut c3 = 0.0f64;
        let mut rs = 0.0f64;
        let mut dc = 0.0f64;
        for x in sc.grid(ctx.cfg.grid_n.min(4)).expect("grid").events() {
            let rep = maxwell::form_equivalence_residual(&sc.config, &x, ch).unwrap();
            c3 = c3.max(rep.complex3d_vs_covariant);
            rs = rs.max(rep.real_split_vs_covariant);
            dc = dc.max(rep.dual_contraction);
        }
        out.push(Record::bound(
            SUITE,
            &sc.name,
            "CMProof",
            c3,
            lin,
            ctx.tol("CMProof", 1e-13),
        ));
        out.push(Record::bound(
            SUITE,
            &sc.name,
            "MaxwellReal-split",
            rs,
            lin,
            ctx.tol("MaxwellReal-split", 1e-13),
        ));
        out.push(Record::bound(
            SUITE,
            &sc.name,
            "QPIdentity",
            dc,
            lin,
            ctx.tol("QPIdentity", 1e-12),
        ));

        // Non-solution sanity: the equations of motion must fail loudly.
        let x = [0.37, 0.21, -0.43, 0.68];
        let cov = maxwell::residual_covariant(&sc.config, &x, ch).unwrap();
        let worst = cov.iter().fold(0.0f64, |a, z| a.max(z.norm()));
        out.push(Record::floor(
            SUITE,
            &sc.name,
            "non-solution-sanity",
            worst,
            lin,
            ctx.cfg.tol("non-solution-sanity", 1e-3),
        ));
    }

    // Vacuum rank-3 relation on the plane wave.
    let sc = vacuum_wave(ctx.cfg);
    if ctx.wants(&sc.name) {
        let ch = ctx.channel_for(sc.h);
        let lin = sc.field_scale * sc.freq_scale;
        let mut worst = 0.0f64;
        for x in sc.grid(3).expect("grid").events() {
            for alpha in 0..4 {
                for beta in 0..4 {
                    let res = maxwell::vacuum_rank3_check(&sc.config, &x, alpha, beta, ch).unwrap();
                    worst = res.iter().fold(worst, |a, z| a.max(z.norm()));
                }
            }
        }
        out.push(Record::bound(
            SUITE,
            &sc.name,
            "MaxwellPauliLubanskii",
            worst,
            lin,
            ctx.tol("MaxwellPauliLubanskii", 1e-10),
        ));
    }
}

#[allow(clippy::too_many_arguments)]
fn push_maybe_slope(
    ctx: &Ctx,
    out: &mut Vec<Record>,
    sc: &Scenario,
    tag: &str,
    residual: f64,
    scale: f64,
    exact_tol: f64,
    mut residual_at: impl FnMut(f64) -> f64,
) {
    let suite_name: &'static str = "maxwell";
    let record = Record::bound(
        suite_name,
        &sc.name,
        tag,
        residual,
        scale,
        ctx.tol(tag, exact_tol),
    );
    match ctx.cfg.channel {
        ChannelKind::Exact => out.push(record),
        ChannelKind::Fd4 | ChannelKind::Fd2 => {
            let expected = if ctx.cfg.channel == ChannelKind::Fd4 {
                4.0
            } else {
                2.0
            };
            let h0 = ctx.cfg.fd_h.unwrap_or(sc.h) * 8.0;
            match grid::convergence_order(&mut residual_at, h0, 3) {
                Ok(slope) => out.push(record.with_slope(slope, expected, 0.3)),
                Err(_) => {
                    // Residual already at the rounding floor; the bound
                    // record stands on its own.
                    out.push(record);
                }
            }
        }
    }
}

// ------------------------------------------------------------------- balance

fn balance_suite(ctx: &Ctx, out: &mut Vec<Record>) {
    const SUITE: &str = "balance";
    let solutions = [
        vacuum_wave(ctx.cfg),
        rest_wave(ctx.cfg),
        boosted_wave(ctx.cfg),
        conducting(ctx.cfg),
    ];
    for sc in &solutions {
        if !ctx.wants(&sc.name) {
            continue;
        }
        let ch = ctx.channel_for(sc.h);
        let quad = sc.field_scale * sc.field_scale * sc.freq_scale;
        let n = ctx.cfg.grid_n;

        let r = grid_max(sc, n, |x| {
            Some(
                balance::energy_balance_residual(&sc.config, x, ch)
                    .unwrap()
                    .abs(),
            )
        });
        let record = Record::bound(
            SUITE,
            &sc.name,
            "EnergyBalance",
            r,
            quad,
            ctx.tol("EnergyBalance", 1e-10),
        );
        match ctx.cfg.channel {
            ChannelKind::Exact => out.push(record),
            _ => {
                let expected = if ctx.cfg.channel == ChannelKind::Fd4 {
                    4.0
                } else {
                    2.0
                };
                let h0 = ctx.cfg.fd_h.unwrap_or(sc.h) * 8.0;
                let slope = grid::convergence_order(
                    |h| {
                        grid_max(sc, 3, |x| {
                            Some(
                                balance::energy_balance_residual(
                                    &sc.config,
                                    x,
                                    match ctx.cfg.channel {
                                        ChannelKind::Fd2 => Channel::Fd2 { h },
                                        _ => Channel::Fd4 { h },
                                    },
                                )
                                .unwrap()
                                .abs(),
                            )
                        })
                    },
                    h0,
                    3,
                );
                match slope {
                    Ok(s) => out.push(record.with_slope(s, expected, 0.3)),
                    Err(_) => out.push(record),
                }
            }
        }

        for (kind, tag) in [
            (StressKind::Hertz, "MomentumBalancedReal"),
            (
                StressKind::MaxwellHeaviside,
                "MomentumBalancedRealNonsymmetric",
            ),
        ] {
            let r = grid_max(sc, n, |x| {
                Some(vec3::max_abs(
                    balance::momentum_balance_residual(&sc.config, x, ch, kind).unwrap(),
                ))
            });
            out.push(Record::bound(
                SUITE,
                &sc.name,
                tag,
                r,
                quad,
                ctx.tol(tag, 1e-10),
            ));
        }

        let r = grid_max(sc, n, |x| {
            let cb = balance::covariant_balance_residual(&sc.config, x, ch).unwrap();
            Some(cb.iter().fold(0.0f64, |a, v| a.max(v.abs())))
        });
        out.push(Record::bound(
            SUITE,
            &sc.name,
            "CovariantEMBalanceCompact",
            r,
            quad,
            ctx.tol("CovariantEMBalanceCompact", 1e-10),
        ));
    }

    // Identity-level checks on arbitrary fields.
    let sc = trig(ctx.cfg, 23);
    if ctx.wants(&sc.name) {
        let ch = ctx.channel_for(sc.h);
        let quad = sc.field_scale * sc.field_scale * sc.freq_scale.max(1.0);
        let xs = [[0.3, 0.5, -0.2, 0.7], [0.9, 0.1, 0.4, -0.6]];

        let mut div2 = 0.0f64;
        let mut ident_i = 0.0f64;
        let mut fact_ii = 0.0f64;
        let mut precursor = 0.0f64;
        let mut cap = [0.0f64; 3];
        let mut variants = 0.0f64;
        for x in xs {
            div2 = div2.max(balance::divergence_two_tensors_residual(&sc.config, &x, ch).unwrap());
            ident_i = ident_i.max(balance::identity_i_residual(&sc.config, &x, ch).unwrap());
            fact_ii = fact_ii.max(balance::fact_ii_residual(&sc.config, &x, ch).unwrap());
            precursor =
                precursor.max(balance::energy_precursor_residual(&sc.config, &x, ch).unwrap());
            let rep = balance::appendix_c_suite(&sc.config, &x, ch).unwrap();
            for k in 0..3 {
                cap[k] = cap[k].max(rep[k]);
            }
            let a =
                balance::momentum_balance_residual(&sc.config, &x, ch, StressKind::Hertz).unwrap();
            let b = balance::momentum_balance_residual(
                &sc.config,
                &x,
                ch,
                StressKind::MaxwellHeaviside,
            )
            .unwrap();
            variants = variants.max(vec3::max_abs(vec3::sub(a, b)));
        }
        out.push(Record::bound(
            SUITE,
            &sc.name,
            "DivergenceTwoTensors",
            div2,
            quad * 25.0,
            ctx.tol("DivergenceTwoTensors", 1e-12),
        ));
        out.push(Record::bound(
            SUITE,
            &sc.name,
            "IdentityI",
            ident_i,
            quad,
            ctx.tol("IdentityI", 1e-12),
        ));
        out.push(Record::bound(
            SUITE,
            &sc.name,
            "FactII",
            fact_ii,
            quad * 25.0,
            ctx.tol("FactII", 1e-12),
        ));
        out.push(Record::bound(
            SUITE,
            &sc.name,
            "EnergyPrecursor",
            precursor,
            quad * 25.0,
            ctx.tol("EnergyPrecursor", 1e-11),
        ));
        out.push(Record::bound(
            SUITE,
            &sc.name,
            "CovariantPonderomotiveComplex",
            cap.into_iter().fold(0.0, f64::max),
            quad,
            ctx.tol("CovariantPonderomotiveComplex", 1e-12),
        ));
        out.push(Record::bound(
            SUITE,
            &sc.name,
            "MomentumBalance",
            variants,
            quad,
            ctx.tol("MomentumBalance", 1e-12),
        ));

        // Pointwise tensor-form agreements (no derivatives involved).
        let mut rng = ctx.rng(5);
        let mut stress = 0.0f64;
        let mut em4 = 0.0f64;
        for _ in 0..200 {
            let p = random_field_point(&mut rng, 1.5);
            let s2 = (p.max_abs() * p.max_abs()).max(1.0);
            let a = balance::hertz_stress(&p);
            let b = balance::hertz_stress_complex(&ComplexPair::from_fields(&p));
            for i in 0..3 {
                for j in 0..3 {
                    stress = stress.max((a.t[i][j] - b.t[i][j]).abs() / s2);
                }
            }
            let real = balance::em_tensor4(&p);
            let (complex, imag) =
                balance::em_tensor4_complex(&ComplexPair::from_fields(&p)).unwrap();
            em4 = em4.max(real.max_abs_diff(&complex) / s2).max(imag / s2);
        }
        out.push(Record::bound(
            SUITE,
            scn_pairs(),
            "StressSymComplex",
            stress,
            1.0,
            ctx.cfg.tol("StressSymComplex", 1e-13),
        ));
        out.push(Record::bound(
            SUITE,
            scn_pairs(),
            "FourEnergyMomentumTensor",
            em4,
            1.0,
            ctx.cfg.tol("FourEnergyMomentumTensor", 1e-13),
        ));

        // Non-solution sanity for the balance laws.
        let x = [0.45, 0.15, -0.3, 0.8];
        let r = balance::energy_balance_residual(&sc.config, &x, ch)
            .unwrap()
            .abs();
        out.push(Record::floor(
            SUITE,
            &sc.name,
            "non-solution-sanity",
            r,
            quad,
            ctx.cfg.tol("non-solution-sanity", 1e-4),
        ));
    }

    // Ponderomotive force: the closed form for isotropic profiles.
    let sc = inhomogeneous(ctx.cfg);
    if ctx.wants(&sc.name) {
        let ch = ctx.channel_for(sc.h);
        let quad = sc.field_scale * sc.field_scale * sc.freq_scale.max(1.0);
        let profiles = sc.profiles.as_ref().expect("profiles");
        let r = grid_max(&sc, ctx.cfg.grid_n.min(4), |x| {
            let a = balance::ponderomotive(&sc.config, x, ch).unwrap();
            let b = balance::ponderomotive_closed_form(profiles, &sc.config, x, ch).unwrap();
            Some(
                a.x.iter()
                    .zip(&b.x)
                    .fold(0.0f64, |acc, (u, v)| acc.max((u - v).abs())),
            )
        });
        out.push(Record::bound(
            SUITE,
            &sc.name,
            "PForce",
            r,
            quad,
            ctx.tol("PForce", 1e-11),
        ));
    }
}

fn scn_pairs() -> &'static str {
    "random_pairs"
}

// ------------------------------------------------------------------- angular

fn angular_suite(ctx: &Ctx, out: &mut Vec<Record>) {
    const SUITE: &str = "angular";
    let solutions = [
        vacuum_wave(ctx.cfg),
        rest_wave(ctx.cfg),
        boosted_wave(ctx.cfg),
    ];
    for sc in &solutions {
        if !ctx.wants(&sc.name) {
            continue;
        }
        let ch = ctx.channel_for(sc.h);
        let n = ctx.cfg.grid_n;
        let mut r_weight = 1.0f64;
        for x in sc.grid(n).expect("grid").events() {
            r_weight = r_weight.max(1.0 + x[0].abs() + vec3::norm([x[1], x[2], x[3]]));
        }
        let quad = sc.field_scale * sc.field_scale * sc.freq_scale * r_weight;

        let r = grid_max(sc, n, |x| {
            Some(vec3::max_abs(
                balance::angular_momentum_residual_3d(&sc.config, x, ch).unwrap(),
            ))
        });
        out.push(Record::bound(
            SUITE,
            &sc.name,
            "VectorMomentumBalance",
            r,
            quad,
            ctx.tol("VectorMomentumBalance", 1e-10),
        ));

        let r = grid_max(sc, n, |x| {
            let m = balance::angular_momentum_residual_covariant(&sc.config, x, ch).unwrap();
            Some(m.iter().flatten().fold(0.0f64, |a, v| a.max(v.abs())))
        });
        out.push(Record::bound(
            SUITE,
            &sc.name,
            "CovariantAngularMomentum",
            r,
            quad,
            ctx.tol("CovariantAngularMomentum", 1e-10),
        ));

        let r = grid_max(sc, n, |x| {
            let m = balance::angular_momentum_residual_dual(&sc.config, x, ch).unwrap();
            Some(m.iter().flatten().fold(0.0f64, |a, v| a.max(v.abs())))
        });
        out.push(Record::bound(
            SUITE,
            &sc.name,
            "CovariantMomentumBalance",
            r,
            quad,
            ctx.tol("CovariantMomentumBalance", 1e-10),
        ));
    }

    // Identity structure on arbitrary fields: the angular residual is the
    // position cross the linear residual, and the dual (0,p) block reduces
    // to the 3D form.
    let sc = trig(ctx.cfg, 31);
    if ctx.wants(&sc.name) {
        let ch = ctx.channel_for(sc.h);
        let xs = [[0.3, 0.7, -0.5, 0.2], [1.0, -0.3, 0.8, 0.4]];
        let mut proof = 0.0f64;
        let mut reduction = 0.0f64;
        let mut covariant_rel = 0.0f64;
        for x in xs {
            let r = [x[1], x[2], x[3]];
            let ang = balance::angular_momentum_residual_3d(&sc.config, &x, ch).unwrap();
            let mom =
                balance::momentum_balance_residual(&sc.config, &x, ch, StressKind::Hertz).unwrap();
            proof = proof.max(vec3::max_abs(vec3::sub(ang, vec3::cross(r, mom))));

            let dual = balance::angular_momentum_residual_dual(&sc.config, &x, ch).unwrap();
            let red = balance::angular_momentum_reduction_0p(&sc.config, &x, ch).unwrap();
            for p in 0..3 {
                reduction = reduction.max((dual[0][p + 1] - red[p]).abs());
            }

            let cov = balance::angular_momentum_residual_covariant(&sc.config, &x, ch).unwrap();
            let cb = balance::covariant_balance_residual(&sc.config, &x, ch).unwrap();
            let x_low = [x[0], -x[1], -x[2], -x[3]];
            for mu in 0..4 {
                for lam in 0..4 {
                    let expect = x_low[lam] * cb[mu] - x_low[mu] * cb[lam];
                    covariant_rel = covariant_rel.max((cov[mu][lam] - expect).abs());
                }
            }
        }
        let quad = sc.field_scale * sc.field_scale * sc.freq_scale.max(1.0) * 3.0;
        out.push(Record::bound(
            SUITE,
            &sc.name,
            "AngularMomentumProof",
            proof,
            quad,
            ctx.tol("AngularMomentumProof", 1e-12),
        ));
        out.push(Record::bound(
            SUITE,
            &sc.name,
            "4Dto3DAngMom",
            reduction,
            quad,
            ctx.tol("4Dto3DAngMom", 1e-12),
        ));
        out.push(Record::bound(
            SUITE,
            &sc.name,
            "CovariantAngularMomentum-identity",
            covariant_rel,
            quad,
            ctx.tol("CovariantAngularMomentum-identity", 1e-12),
        ));
    }
}

// --------------------------------------------------------------------- boost

fn boost_suite(ctx: &Ctx, out: &mut Vec<Record>) {
    const SUITE: &str = "boost";
    let scn = "random_pairs";
    if ctx.wants(scn) {
        let mut rng = ctx.rng(7);

        // Matrix properties over random velocities.
        let mut metric = 0.0f64;
        let mut inverse = 0.0f64;
        for _ in 0..200 {
            let v = [
                rng.uniform(-0.6, 0.6),
                rng.uniform(-0.6, 0.6),
                rng.uniform(-0.6, 0.6),
            ];
            let b = BoostSpec::new(vec3::scale(ctx.cfg.c, v), ctx.cfg.c).unwrap();
            metric = metric.max(lorentz::boost_matrix(&b).metric_residual());
            let prod = lorentz::boost_matrix(&b).mul(&lorentz::boost_matrix(&b.reversed()));
            inverse = inverse.max(prod.max_abs_diff(&lorentz::LorentzMatrix::identity()));
        }
        out.push(Record::bound(
            SUITE,
            scn,
            "LorentzBoost",
            metric,
            1.0,
            ctx.cfg.tol("LorentzBoost", 1e-12),
        ));
        out.push(Record::bound(
            SUITE,
            scn,
            "LorentzBoost-inverse",
            inverse,
            1.0,
            ctx.cfg.tol("LorentzBoost-inverse", 1e-12),
        ));

        // Worked example at 0.6c and the three transformation routes.
        let mut example = 0.0f64;
        let mut routes = 0.0f64;
        let mut event_paths = 0.0f64;
        for _ in 0..200 {
            let pair = ComplexPair::from_fields(&random_field_point(&mut rng, 1.0));
            let b = BoostSpec::new([0.6 * ctx.cfg.c, 0.0, 0.0], ctx.cfg.c).unwrap();
            let tt = lorentz::transform_fields_tensor(&pair, &b).unwrap();
            let gamma = 1.25;
            let ibg = Complex64::new(0.0, 0.6 * gamma);
            example = example
                .max((tt.g[1] - (gamma * pair.g[1] + ibg * pair.f[2])).norm())
                .max((tt.g[2] - (gamma * pair.g[2] - ibg * pair.f[1])).norm())
                .max((tt.f[1] - (gamma * pair.f[1] + ibg * pair.g[2])).norm())
                .max((tt.f[2] - (gamma * pair.f[2] - ibg * pair.g[1])).norm());
            let t3 = lorentz::transform_fields_3d(&pair, &b);
            let tc = lorentz::transform_fields_c6(&pair, &b, 0).unwrap();
            for k in 0..3 {
                routes = routes
                    .max((tt.f[k] - t3.f[k]).norm())
                    .max((tt.g[k] - t3.g[k]).norm())
                    .max((t3.f[k] - tc.f[k]).norm())
                    .max((t3.g[k] - tc.g[k]).norm());
            }

            // Event transformation: formula path vs matrix path.
            let x = tensor::FourVector::up([
                rng.uniform(-2.0, 2.0),
                rng.uniform(-2.0, 2.0),
                rng.uniform(-2.0, 2.0),
                rng.uniform(-2.0, 2.0),
            ]);
            let by_formula = lorentz::transform_event(&x, &b).unwrap();
            let by_matrix = lorentz::boost_matrix(&b).apply_event(&x.c);
            for mu in 0..4 {
                event_paths = event_paths.max((by_formula.c[mu] - by_matrix[mu]).abs());
            }
        }
        out.push(Record::bound(
            SUITE,
            scn,
            "G2G3",
            example,
            1.0,
            ctx.cfg.tol("G2G3", 1e-13),
        ));
        out.push(Record::bound(
            SUITE,
            scn,
            "EMfieldsTransformMatrix",
            routes,
            1.0,
            ctx.cfg.tol("EMfieldsTransformMatrix", 1e-12),
        ));
        out.push(Record::bound(
            SUITE,
            scn,
            "LorentzCoordinateTransformShort",
            event_paths,
            1.0,
            ctx.cfg.tol("LorentzCoordinateTransformShort", 1e-13),
        ));

        // F.G invariance over 1000 boosts with |beta| <= 0.99.
        let mut invariance = 0.0f64;
        for _ in 0..1000 {
            let pair = ComplexPair::from_fields(&random_field_point(&mut rng, 1.0));
            let dir = [
                rng.uniform(-1.0, 1.0),
                rng.uniform(-1.0, 1.0),
                rng.uniform(-1.0, 1.0),
            ];
            let norm = vec3::norm(dir).max(1e-9);
            let beta = rng.uniform(0.0, 0.99);
            let v = vec3::scale(beta * ctx.cfg.c / norm, dir);
            let b = BoostSpec::new(v, ctx.cfg.c).unwrap();
            let before = fields::invariant_fg(&pair);
            let after = fields::invariant_fg(&lorentz::transform_fields_3d(&pair, &b));
            let scale = before.norm().max(pair.scale() * pair.scale());
            invariance = invariance.max((before - after).norm() / scale);
        }
        out.push(Record::bound(
            SUITE,
            scn,
            "FG-invariant",
            invariance,
            1.0,
            ctx.cfg.tol("FG-invariant", 1e-12),
        ));
    }

    // Covariance of the field equations under a boost of the whole
    // configuration.
    let sc = boosted_wave(ctx.cfg);
    if ctx.wants(&sc.name) {
        let ch = ctx.channel_for(sc.h);
        let lin = sc.field_scale * sc.freq_scale;
        let r = grid_max(&sc, ctx.cfg.grid_n, |x| {
            let cov = maxwell::residual_covariant(&sc.config, x, ch).unwrap();
            Some(cov.iter().fold(0.0f64, |a, z| a.max(z.norm())))
        });
        out.push(Record::bound(
            SUITE,
            &sc.name,
            "ComplexFieldTransform",
            r,
            lin,
            ctx.tol("ComplexFieldTransform", 1e-10),
        ));
    }
}

// --------------------------------------------------------------------- media

fn media_suite(ctx: &Ctx, out: &mut Vec<Record>) {
    const SUITE: &str = "media";
    let scn = "random_media";
    if ctx.wants(scn) {
        let mut rng = ctx.rng(9);
        let c = ctx.cfg.c;

        let mut oracle = 0.0f64;
        let mut tensor_path = 0.0f64;
        let mut inverse = 0.0f64;
        let mut qp_paths = 0.0f64;
        let mut em_moving = 0.0f64;
        let mut four_velocity = 0.0f64;
        let mut complex_material = 0.0f64;
        for _ in 0..1000 {
            let eps = rng.uniform(1.1, 4.0);
            let mu = rng.uniform(0.5, 3.0);
            let v = [
                c * rng.uniform(-0.32, 0.32),
                c * rng.uniform(-0.32, 0.32),
                c * rng.uniform(-0.32, 0.32),
            ];
            let m = MediumSpec::new(eps, mu, 0.0, v, c).unwrap();
            let e = [
                rng.uniform(-1.5, 1.5),
                rng.uniform(-1.5, 1.5),
                rng.uniform(-1.5, 1.5),
            ];
            let b = [
                rng.uniform(-1.5, 1.5),
                rng.uniform(-1.5, 1.5),
                rng.uniform(-1.5, 1.5),
            ];
            let g2 = m.gamma() * m.gamma();
            let scale = (1.0 + eps * mu) * g2 * 3.0;

            // Boost oracle for the 3D constitutive map.
            let e0 = e;
            let h0 = b;
            let rest = FieldPoint::new(e0, vec3::scale(eps, e0), h0, vec3::scale(mu, h0));
            let lab_boost = BoostSpec::new(vec3::scale(-1.0, v), c).unwrap();
            let lab = lorentz::transform_fields_3d(&ComplexPair::from_fields(&rest), &lab_boost)
                .to_fields();
            let (d_pred, h_pred) = media::minkowski_constitutive(lab.e, lab.b, &m);
            oracle = oracle
                .max(vec3::max_abs(vec3::sub(d_pred, lab.d)) / scale)
                .max(vec3::max_abs(vec3::sub(h_pred, lab.h)) / scale);

            // Rank-4 route equals the 3D route.
            let (d3, h3) = media::minkowski_constitutive(e, b, &m);
            let r = media::permeability_tensor(&m)
                .apply(&fields::f_tensor(e, b))
                .unwrap();
            let (dt, ht) = media::dh_from_r(&r);
            tensor_path = tensor_path
                .max(vec3::max_abs(vec3::sub(dt, d3)) / scale)
                .max(vec3::max_abs(vec3::sub(ht, h3)) / scale);

            inverse = inverse.max(media::inverse_identity_check(&m).unwrap() / g2);
            let u = m.four_velocity();
            four_velocity = four_velocity.max((u.minkowski_norm2() - 1.0).abs() / g2);

            // Q, P from F directly vs through the constitutive fields.
            let ften = fields::f_tensor(e, b);
            let (q, p) = media::qp_from_f(&ften, &m).unwrap();
            let fp = media::field_point_from_eb(e, b, &m);
            let pair = ComplexPair::from_fields(&fp);
            qp_paths = qp_paths
                .max(q.max_abs_diff(&fields::build_q(&pair)) / scale)
                .max(p.max_abs_diff(&fields::build_p(&pair)) / scale);
            complex_material =
                complex_material.max(media::complex_material_residual(e, b, &m).unwrap() / scale);

            // Moving-medium energy-momentum tensor vs the field route.
            let t = media::moving_em_tensor(&ften, &m).unwrap();
            let t2 = balance::em_tensor4(&fp);
            let mut worst = 0.0f64;
            for mu_i in 0..4 {
                for nu in 0..4 {
                    worst = worst.max((t[mu_i][nu] - t2.t[mu_i][nu]).abs());
                }
            }
            em_moving = em_moving.max(worst / (scale * scale));
        }
        out.push(Record::bound(
            SUITE,
            scn,
            "3DMaterialEqs",
            oracle,
            1.0,
            ctx.cfg.tol("3DMaterialEqs", 1e-11),
        ));
        out.push(Record::bound(
            SUITE,
            scn,
            "FourPermeabilityTensor",
            tensor_path,
            1.0,
            ctx.cfg.tol("FourPermeabilityTensor", 1e-11),
        ));
        out.push(Record::bound(
            SUITE,
            scn,
            "InverseA",
            inverse,
            1.0,
            ctx.cfg.tol("InverseA", 1e-13),
        ));
        out.push(Record::bound(
            SUITE,
            scn,
            "FourVelocity",
            four_velocity,
            1.0,
            ctx.cfg.tol("FourVelocity", 1e-13),
        ));
        out.push(Record::bound(
            SUITE,
            scn,
            "QPmaterialF",
            qp_paths,
            1.0,
            ctx.cfg.tol("QPmaterialF", 1e-12),
        ));
        out.push(Record::bound(
            SUITE,
            scn,
            "CovariantMaterialEqsComplex",
            complex_material,
            1.0,
            ctx.cfg.tol("CovariantMaterialEqsComplex", 1e-12),
        ));
        out.push(Record::bound(
            SUITE,
            scn,
            "CovariantEMTensorMoving",
            em_moving,
            1.0,
            ctx.cfg.tol("CovariantEMTensorMoving", 1e-12),
        ));
    }

    // The boosted plane wave satisfies the moving-medium constitutive map
    // pointwise.
    let sc = boosted_wave(ctx.cfg);
    if ctx.wants(&sc.name) {
        let m = sc.medium;
        let scale = sc.field_scale * (1.0 + m.epsilon * m.mu) * m.gamma();
        let r = grid_max(&sc, ctx.cfg.grid_n, |x| {
            let fp = sc.config.fields(x);
            let (d_pred, h_pred) = media::minkowski_constitutive(fp.e, fp.b, &m);
            Some(vec3::max_abs(vec3::sub(d_pred, fp.d)).max(vec3::max_abs(vec3::sub(h_pred, fp.h))))
        });
        out.push(Record::bound(
            SUITE,
            &sc.name,
            "3DMaterialEqs",
            r,
            scale,
            ctx.cfg.tol("3DMaterialEqs", 1e-11),
        ));
    }
}

// ---------------------------------------------------------------- potentials

fn potentials_suite(ctx: &Ctx, out: &mut Vec<Record>) {
    const SUITE: &str = "potentials";
    let scn = "random_potentials";
    if !ctx.wants(scn) {
        return;
    }
    let mut rng = ctx.rng(13);
    let c = ctx.cfg.c;
    let m = MediumSpec::new(2.0, 1.4, 0.0, [0.2 * c, 0.05 * c, -0.1 * c], c).unwrap();
    let ch = match ctx.cfg.channel {
        ChannelKind::Exact => Channel::Exact,
        ChannelKind::Fd2 => Channel::Fd2 {
            h: ctx.cfg.fd_h.unwrap_or(0.05),
        },
        ChannelKind::Fd4 => Channel::Fd4 {
            h: ctx.cfg.fd_h.unwrap_or(0.05),
        },
    };

    let xs = [[0.2, 0.3, -0.1, 0.5], [0.7, 0.1, 0.8, -0.4]];

    // F from A: antisymmetry and the homogeneous residual.
    let mut antisym = 0.0f64;
    let mut homogeneous = 0.0f64;
    let mut gauge = 0.0f64;
    let mut three_d = 0.0f64;
    let mut forms = 0.0f64;
    for _ in 0..10 {
        let a = FourPotential::random(&mut rng, 2, 1.0);
        let z = HertzTensor::random(&mut rng, 2, 1.0);
        let az = potentials::a_from_z(&z, &m).unwrap();
        let cfg_fields =
            lagrangian::trig_config_from_potential(&a, &m, [0.0; 4]).into_configuration();
        for x in xs {
            let f = potentials::f_from_a(&a, &x, ch).unwrap();
            antisym = antisym.max(f.antisymmetry_residual());
            let (_, s_res) = maxwell::residual_real_split(&cfg_fields, &x, ch).unwrap();
            homogeneous = homogeneous.max(s_res.iter().fold(0.0f64, |acc, v| acc.max(v.abs())));

            gauge = gauge.max(potentials::gauge_residual(&az, &m, &x, ch).unwrap().abs());
            let (phi, a3) = potentials::a_from_z_3d(&z, &m, &x, ch).unwrap();
            let a_val = az.eval(&x);
            three_d = three_d.max((a_val[0] - phi).abs());
            for k in 0..3 {
                three_d = three_d.max((a_val[k + 1] + a3[k]).abs());
            }

            // The two wave-equation forms are related by the constitutive
            // matrix.
            let j4 = [0.4, -0.2, 0.7, 0.1];
            let res = potentials::a_wave_residual(&a, j4, &m, &x, ch).unwrap();
            let pre = potentials::a_wave_residual_pre_inverse(&a, j4, &m, &x, ch).unwrap();
            let u = m.four_velocity().c;
            let kap = m.kappa();
            for lam in 0..4 {
                let mut expect = 0.0;
                for sig in 0..4 {
                    let g =
                        tensor::Metric4::g(lam) * tensor::delta(lam, sig) + kap * u[lam] * u[sig];
                    expect -= g * res[sig];
                }
                forms = forms.max((pre[lam] - expect).abs());
            }
        }
    }
    // Antisymmetry of F = dA is bitwise by construction.
    out.push(Record::bound(
        SUITE,
        scn,
        "4VectorPotential",
        antisym,
        1.0,
        ctx.cfg.tol("4VectorPotential", 1e-300),
    ));
    out.push(Record::bound(
        SUITE,
        scn,
        "MaxwellReal-homogeneous",
        homogeneous,
        10.0,
        ctx.tol("MaxwellReal-homogeneous", 1e-11),
    ));
    out.push(Record::bound(
        SUITE,
        scn,
        "CovariantAuGauge",
        gauge,
        10.0,
        ctx.tol("CovariantAuGauge", 1e-11),
    ));
    out.push(Record::bound(
        SUITE,
        scn,
        "AZHertz",
        three_d,
        10.0,
        ctx.tol("AZHertz", 1e-12),
    ));
    out.push(Record::bound(
        SUITE,
        scn,
        "CovariantAu",
        forms,
        10.0,
        ctx.tol("CovariantAu", 1e-11),
    ));

    // Dispersion root: phase speed c/sqrt(eps mu).
    let m_rest = MediumSpec::at_rest(2.0, 1.4, 0.0, c).unwrap();
    let k = [0.7, -0.2, 0.4];
    let omega = potentials::rest_dispersion_omega(&m_rest, k).unwrap();
    let expect = c / (m_rest.epsilon * m_rest.mu).sqrt();
    let r = ((omega / vec3::norm(k)) - expect).abs() / expect;
    out.push(Record::bound(
        SUITE,
        scn,
        "CovariantAuj-dispersion",
        r,
        1.0,
        ctx.cfg.tol("CovariantAuj-dispersion", 1e-12),
    ));
    let sym = potentials::dispersion_symbol(&m_rest, omega / c, k).abs();
    out.push(Record::bound(
        SUITE,
        scn,
        "CovariantAuj",
        sym,
        vec3::dot(k, k),
        ctx.cfg.tol("CovariantAuj", 1e-13),
    ));

    // Hertz wave equation on a matched single mode and polarization sources.
    let mut hertz = 0.0f64;
    let mut continuity = 0.0f64;
    {
        let f = |w: f64| potentials::dispersion_symbol(&m, w, k);
        let (mut lo, mut hi) = (0.0, 10.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let w = 0.5 * (lo + hi);
        let k4 = [-w, k[0], k[1], k[2]];
        let z = HertzTensor::new(
            core::array::from_fn(|i| TrigScalar::harmonic(0.5 - 0.2 * i as f64, k4, 0.1)),
            core::array::from_fn(|i| TrigScalar::harmonic(-0.3 + 0.25 * i as f64, k4, 0.7)),
        );
        let p0 = PolarizationTensor::default();
        for x in xs {
            let res = potentials::hertz_wave_residual(&z, &p0, &m, &x, ch).unwrap();
            hertz = hertz.max(res.iter().flatten().fold(0.0f64, |a, v| a.max(v.abs())));
        }

        let p = PolarizationTensor::random(&mut rng, 2, 0.8);
        for x in xs {
            continuity =
                continuity.max(potentials::continuity_from_p(&p, &x, ch, c).unwrap().abs());
        }
    }
    out.push(Record::bound(
        SUITE,
        scn,
        "ZpHertz",
        hertz,
        1.0,
        ctx.tol("ZpHertz", 1e-10),
    ));
    out.push(Record::bound(
        SUITE,
        scn,
        "rhojpm",
        continuity,
        1.0,
        ctx.tol("rhojpm", 1e-11),
    ));
}

// ---------------------------------------------------------------- lagrangian

fn lagrangian_suite(ctx: &Ctx, out: &mut Vec<Record>) {
    const SUITE: &str = "lagrangian";
    let scn = "random_pairs";
    if !ctx.wants(scn) {
        return;
    }
    let mut rng = ctx.rng(15);

    let mut forms0 = 0.0f64;
    let mut forms1 = 0.0f64;
    let mut reality = 0.0f64;
    let mut derivatives = 0.0f64;
    let mut invariance = 0.0f64;
    for _ in 0..200 {
        let c = ComplexPair::from_fields(&random_field_point(&mut rng, 1.5));
        let s2 = (c.scale() * c.scale()).max(1.0);
        let (val, spread) = lagrangian::lagrangian_densities(&c).unwrap();
        forms0 = forms0.max(spread[0] / s2);
        forms1 = forms1.max(spread[1] / s2);
        reality = reality.max(val.reality_residual / s2);

        let b = BoostSpec::new(
            [
                ctx.cfg.c * rng.uniform(-0.6, 0.6),
                ctx.cfg.c * rng.uniform(-0.6, 0.6),
                ctx.cfg.c * rng.uniform(-0.6, 0.6),
            ],
            ctx.cfg.c,
        )
        .unwrap();
        let (val_b, _) =
            lagrangian::lagrangian_densities(&lorentz::transform_fields_3d(&c, &b)).unwrap();
        let scale = (val.l0.abs() + val.l1.norm()).max(s2);
        invariance = invariance
            .max((val.l0 - val_b.l0).abs() / scale)
            .max((val.l1 - val_b.l1).norm() / scale);
    }
    for _ in 0..20 {
        let c = ComplexPair::from_fields(&random_field_point(&mut rng, 1.0));
        derivatives = derivatives.max(lagrangian::formal_derivative_check(&c).unwrap());
    }
    out.push(Record::bound(
        SUITE,
        scn,
        "Lagrangian0",
        forms0,
        1.0,
        ctx.cfg.tol("Lagrangian0", 1e-12),
    ));
    out.push(Record::bound(
        SUITE,
        scn,
        "Lagrangian1",
        forms1,
        1.0,
        ctx.cfg.tol("Lagrangian1", 1e-12),
    ));
    out.push(Record::bound(
        SUITE,
        scn,
        "Lagrangian-reality",
        reality,
        1.0,
        ctx.cfg.tol("Lagrangian-reality", 1e-13),
    ));
    out.push(Record::bound(
        SUITE,
        scn,
        "DiffZero",
        derivatives,
        1.0,
        ctx.cfg.tol("DiffZero", 1e-6),
    ));
    out.push(Record::bound(
        SUITE,
        scn,
        "Lagrangian-invariance",
        invariance,
        1.0,
        ctx.cfg.tol("Lagrangian-invariance", 1e-11),
    ));

    // Conjugate momenta and the Euler-Lagrange route against the direct
    // field-equation residual.
    let m = MediumSpec::new(
        1.7,
        1.3,
        0.0,
        [0.15 * ctx.cfg.c, 0.25 * ctx.cfg.c, -0.2 * ctx.cfg.c],
        ctx.cfg.c,
    )
    .unwrap();
    let ch = match ctx.cfg.channel {
        ChannelKind::Exact => Channel::Exact,
        ChannelKind::Fd2 => Channel::Fd2 {
            h: ctx.cfg.fd_h.unwrap_or(0.05),
        },
        ChannelKind::Fd4 => Channel::Fd4 {
            h: ctx.cfg.fd_h.unwrap_or(0.05),
        },
    };
    let mut momenta = 0.0f64;
    let mut el = 0.0f64;
    for _ in 0..5 {
        let a = FourPotential::random(&mut rng, 2, 1.0);
        let j4 = [0.4, -0.3, 0.2, 0.6];
        let cfg_fields = lagrangian::trig_config_from_potential(&a, &m, j4).into_configuration();
        for x in [[0.2, 0.5, -0.1, 0.4], [0.8, -0.2, 0.3, 0.9]] {
            momenta = momenta.max(lagrangian::conjugate_momentum_check(&a, &m, &x, ch).unwrap());
            let el_res = lagrangian::euler_lagrange_residual(&a, &m, j4, &x, ch).unwrap();
            let (r_res, _) = maxwell::residual_real_split(&cfg_fields, &x, ch).unwrap();
            for mu in 0..4 {
                el = el.max((el_res[mu] - r_res[mu]).abs());
            }
        }
    }
    out.push(Record::bound(
        SUITE,
        scn,
        "ConjugateMomentum",
        momenta,
        1.0,
        ctx.cfg.tol("ConjugateMomentum", 1e-6),
    ));
    out.push(Record::bound(
        SUITE,
        scn,
        "EulerLagrangeReal",
        el,
        10.0,
        ctx.tol("EulerLagrangeReal", 1e-12),
    ));
}
