//! Pointwise residuals of the macroscopic field equations in their four
//! equivalent forms.
//!
//! With `F = E + iH`, `G = D + iB` and four-current `j^mu = (c rho, j)`:
//!
//! - complex 3D: `(i/c)(dG/dt + 4 pi j) = curl F`, `div G = 4 pi rho`;
//! - covariant: `d_nu Q^{mu nu} = -(4 pi / c) j^mu`;
//! - dual rank-3: `d_lam P_{mu nu} + d_mu P_{nu lam} + d_nu P_{lam mu}
//!   = -(4 pi i / c) e_{mu nu lam sig} j^sig`;
//! - real split: `d_nu R^{mu nu} = -(4 pi / c) j^mu`, `d_nu S^{mu nu} = 0`.
//!
//! Each residual function returns `lhs - rhs` of the respective form; on an
//! exact solution every residual vanishes to the derivative channel's
//! accuracy. The forms are linear rearrangements of one another, which
//! [`form_equivalence_residual`] checks on arbitrary (non-solution) fields.

use alloc::boxed::Box;

use num_complex::Complex64;

use crate::fields::{build_p, build_q, ComplexPair, FieldPoint};
use crate::grid::{Channel, ScalarField, VectorField};
use crate::tensor::{levi_civita, levi_civita_up, CTensor2, Metric4};
use crate::vec3::{self, CVec3, Vec3};
use crate::{math, Error, Event, Result};

const PI4: f64 = 4.0 * core::f64::consts::PI;
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Free charge and current density at one event.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SourceDensity {
    pub rho: f64,
    pub j: Vec3,
}

impl SourceDensity {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `j^mu = (c rho, j)`.
    pub fn four_current(&self, c: f64) -> [f64; 4] {
        [c * self.rho, self.j[0], self.j[1], self.j[2]]
    }
}

/// Predicate marking events where a configuration is singular (for example
/// the location of a point source).
pub type SingularSet = Box<dyn Fn(&Event) -> bool + Send + Sync>;

/// A field configuration: evaluators for the four real field vectors and
/// the sources, an optional singular-set predicate, and the speed of light
/// used by every residual formula.
pub struct Configuration {
    pub e: VectorField,
    pub d: VectorField,
    pub h: VectorField,
    pub b: VectorField,
    pub rho: Box<dyn ScalarField>,
    pub j: VectorField,
    pub singular: Option<SingularSet>,
    pub c: f64,
}

impl Configuration {
    /// Source-free configuration from four field evaluators.
    pub fn source_free(
        e: VectorField,
        d: VectorField,
        h: VectorField,
        b: VectorField,
        c: f64,
    ) -> Self {
        Self {
            e,
            d,
            h,
            b,
            rho: Box::new(0.0),
            j: VectorField::zero(),
            singular: None,
            c,
        }
    }

    pub fn guard(&self, x: &Event) -> Result<()> {
        if let Some(s) = &self.singular {
            if s(x) {
                return Err(Error::SingularPoint);
            }
        }
        Ok(())
    }

    pub fn fields(&self, x: &Event) -> FieldPoint {
        FieldPoint {
            e: self.e.eval(x),
            d: self.d.eval(x),
            h: self.h.eval(x),
            b: self.b.eval(x),
        }
    }

    /// Componentwise `d/dx^a` of all four field vectors.
    pub fn fields_d(&self, x: &Event, a: usize, ch: Channel) -> Result<FieldPoint> {
        Ok(FieldPoint {
            e: self.e.d(x, a, ch)?,
            d: self.d.d(x, a, ch)?,
            h: self.h.d(x, a, ch)?,
            b: self.b.d(x, a, ch)?,
        })
    }

    pub fn pair(&self, x: &Event) -> ComplexPair {
        ComplexPair::from_fields(&self.fields(x))
    }

    pub fn pair_d(&self, x: &Event, a: usize, ch: Channel) -> Result<ComplexPair> {
        Ok(ComplexPair::from_fields(&self.fields_d(x, a, ch)?))
    }

    pub fn sources(&self, x: &Event) -> SourceDensity {
        SourceDensity {
            rho: self.rho.eval(x),
            j: self.j.eval(x),
        }
    }

    pub fn sources_d(&self, x: &Event, a: usize, ch: Channel) -> Result<SourceDensity> {
        Ok(SourceDensity {
            rho: ch.d(self.rho.as_ref(), x, a)?,
            j: self.j.d(x, a, ch)?,
        })
    }

    /// Whether the configuration is pointwise vacuum at `x`
    /// (`D = E`, `B = H`, no sources).
    pub fn is_vacuum_at(&self, x: &Event) -> bool {
        let f = self.fields(x);
        let s = self.sources(x);
        let scale = math::max(f.max_abs(), 1.0);
        let tol = 1e-12 * scale;
        vec3::max_abs(vec3::sub(f.d, f.e)) <= tol
            && vec3::max_abs(vec3::sub(f.b, f.h)) <= tol
            && math::abs(s.rho) <= tol
            && vec3::max_abs(s.j) <= tol
    }
}

/// Residual of the complex 3D form:
/// curl part `(i/c)(dG/dt + 4 pi j) - curl F`, divergence part
/// `div G - 4 pi rho`.
pub fn residual_complex3d(
    cfg: &Configuration,
    x: &Event,
    ch: Channel,
) -> Result<(CVec3, Complex64)> {
    cfg.guard(x)?;
    let c = cfg.c;
    let s = cfg.sources(x);

    // dG/dt = c * d_0 (D + iB)
    let d0 = cfg.fields_d(x, 0, ch)?;
    let dt_g = vec3::cscale(Complex64::from(c), &vec3::complex(d0.d, d0.b));

    // curl F and div G from spatial derivatives.
    let d1 = cfg.fields_d(x, 1, ch)?;
    let d2 = cfg.fields_d(x, 2, ch)?;
    let d3 = cfg.fields_d(x, 3, ch)?;
    let curl_f = curl_from(
        &vec3::complex(d1.e, d1.h),
        &vec3::complex(d2.e, d2.h),
        &vec3::complex(d3.e, d3.h),
    );
    let div_g = Complex64::new(d1.d[0] + d2.d[1] + d3.d[2], d1.b[0] + d2.b[1] + d3.b[2]);

    let i_over_c = I / c;
    let mut curl_res = [Complex64::ZERO; 3];
    for k in 0..3 {
        curl_res[k] = i_over_c * (dt_g[k] + PI4 * s.j[k]) - curl_f[k];
    }
    Ok((curl_res, div_g - PI4 * s.rho))
}

fn curl_from(d1: &CVec3, d2: &CVec3, d3: &CVec3) -> CVec3 {
    [d2[2] - d3[1], d3[0] - d1[2], d1[1] - d2[0]]
}

/// Residual of the covariant form: `d_nu Q^{mu nu} + (4 pi / c) j^mu`.
pub fn residual_covariant(cfg: &Configuration, x: &Event, ch: Channel) -> Result<[Complex64; 4]> {
    cfg.guard(x)?;
    let jmu = cfg.sources(x).four_current(cfg.c);
    let mut res = [Complex64::ZERO; 4];
    for nu in 0..4 {
        // Q is linear in (F, G), so d_nu Q = Q(d_nu F, d_nu G).
        let dq = build_q(&cfg.pair_d(x, nu, ch)?);
        for mu in 0..4 {
            res[mu] += dq.m[mu][nu];
        }
    }
    for mu in 0..4 {
        res[mu] += Complex64::from(PI4 / cfg.c * jmu[mu]);
    }
    Ok(res)
}

/// Residual of the real split: `d_nu R^{mu nu} + (4 pi / c) j^mu` and
/// `d_nu S^{mu nu}`.
pub fn residual_real_split(
    cfg: &Configuration,
    x: &Event,
    ch: Channel,
) -> Result<([f64; 4], [f64; 4])> {
    cfg.guard(x)?;
    let jmu = cfg.sources(x).four_current(cfg.c);
    let mut res_r = [0.0; 4];
    let mut res_s = [0.0; 4];
    for nu in 0..4 {
        let d = cfg.fields_d(x, nu, ch)?;
        let dr = crate::fields::r_tensor(d.d, d.h);
        let ds = crate::fields::s_tensor(d.b, d.e);
        for mu in 0..4 {
            res_r[mu] += dr.m[mu][nu].re;
            res_s[mu] += ds.m[mu][nu].re;
        }
    }
    for mu in 0..4 {
        res_r[mu] += PI4 / cfg.c * jmu[mu];
    }
    Ok((res_r, res_s))
}

/// Rank-3 residual of the dual form, all index triples:
/// `d_lam P_{mu nu} + d_mu P_{nu lam} + d_nu P_{lam mu}
///  + (4 pi i / c) e_{mu nu lam sig} j^sig`.
pub struct DualResidual {
    pub t: [[[Complex64; 4]; 4]; 4],
}

impl DualResidual {
    pub fn norm(&self) -> f64 {
        let mut worst = 0.0f64;
        for mu in 0..4 {
            for nu in 0..4 {
                for lam in 0..4 {
                    worst = math::max(worst, self.t[mu][nu][lam].norm());
                }
            }
        }
        worst
    }
}

pub fn residual_dual(cfg: &Configuration, x: &Event, ch: Channel) -> Result<DualResidual> {
    cfg.guard(x)?;
    let jmu = cfg.sources(x).four_current(cfg.c);
    let mut dp =
        [CTensor2::zero((crate::tensor::Variance::Down, crate::tensor::Variance::Down)); 4];
    for (a, slot) in dp.iter_mut().enumerate() {
        *slot = build_p(&cfg.pair_d(x, a, ch)?);
    }
    let mut t = [[[Complex64::ZERO; 4]; 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            for lam in 0..4 {
                let mut acc = dp[lam].m[mu][nu] + dp[mu].m[nu][lam] + dp[nu].m[lam][mu];
                for sig in 0..4 {
                    let e = levi_civita(mu, nu, lam, sig);
                    if e != 0 {
                        acc += I * (PI4 / cfg.c * e as f64 * jmu[sig]);
                    }
                }
                t[mu][nu][lam] = acc;
            }
        }
    }
    Ok(DualResidual { t })
}

/// Residual of charge conservation `d rho / d t + div j`.
pub fn residual_continuity(cfg: &Configuration, x: &Event, ch: Channel) -> Result<f64> {
    cfg.guard(x)?;
    let dt_rho = cfg.c * ch.d(cfg.rho.as_ref(), x, 0)?;
    let div_j = crate::grid::div(&cfg.j, x, ch)?;
    Ok(dt_rho + div_j)
}

/// Sources implied by the fields through the inhomogeneous equations:
/// `rho = div G / 4 pi` (real part `div D / 4 pi`) and
/// `j = (c/4 pi) Im(curl F) - (1/4 pi) dD/dt`-style combination obtained by
/// solving the curl equation for `j`. Diagnostic helper; configurations
/// supply their own sources.
pub fn implied_sources(cfg: &Configuration, x: &Event, ch: Channel) -> Result<SourceDensity> {
    cfg.guard(x)?;
    let d1 = cfg.fields_d(x, 1, ch)?;
    let d2 = cfg.fields_d(x, 2, ch)?;
    let d3 = cfg.fields_d(x, 3, ch)?;
    let d0 = cfg.fields_d(x, 0, ch)?;
    let rho = (d1.d[0] + d2.d[1] + d3.d[2]) / PI4;
    // curl H = (1/c) dD/dt + (4 pi / c) j  =>  j = (c curl H - dD/dt)/4 pi
    let curl_h = [d2.h[2] - d3.h[1], d3.h[0] - d1.h[2], d1.h[1] - d2.h[0]];
    let mut j = [0.0; 3];
    for k in 0..3 {
        j[k] = (cfg.c * curl_h[k] - cfg.c * d0.d[k]) / PI4;
    }
    Ok(SourceDensity { rho, j })
}

/// Residual of the vacuum rank-3 relation for fixed `(alpha, beta)`
/// (no summation over them), one component per `mu`:
///
/// `e^alpha_{mu nu tau} d^nu Q^{tau beta}
///  - e^beta_{mu nu tau} d^nu Q^{tau alpha} + i d_mu Q^{alpha beta}`,
///
/// where `e^alpha_{mu nu tau} = g^{alpha alpha} e_{alpha mu nu tau}` for the
/// diagonal metric. Requires a vacuum configuration.
pub fn vacuum_rank3_check(
    cfg: &Configuration,
    x: &Event,
    alpha: usize,
    beta: usize,
    ch: Channel,
) -> Result<[Complex64; 4]> {
    cfg.guard(x)?;
    assert!(alpha < 4 && beta < 4, "fixed indices out of range");
    if !cfg.is_vacuum_at(x) {
        return Err(Error::NotVacuum);
    }
    let mut dq = [CTensor2::zero((crate::tensor::Variance::Up, crate::tensor::Variance::Up)); 4];
    for (a, slot) in dq.iter_mut().enumerate() {
        *slot = build_q(&cfg.pair_d(x, a, ch)?);
    }
    let ga = Metric4::g(alpha);
    let gb = Metric4::g(beta);
    let mut out = [Complex64::ZERO; 4];
    for mu in 0..4 {
        let mut acc = Complex64::ZERO;
        for nu in 0..4 {
            // d^nu = g^{nu nu} d_nu
            let gnu = Metric4::g(nu);
            for tau in 0..4 {
                let e1 = levi_civita(alpha, mu, nu, tau);
                if e1 != 0 {
                    acc += (ga * gnu * e1 as f64) * dq[nu].m[tau][beta];
                }
                let e2 = levi_civita(beta, mu, nu, tau);
                if e2 != 0 {
                    acc -= (gb * gnu * e2 as f64) * dq[nu].m[tau][alpha];
                }
            }
        }
        out[mu] = acc + I * dq[mu].m[alpha][beta];
    }
    Ok(out)
}

/// Pairwise rearrangement residuals between the four forms, valid for
/// arbitrary smooth fields (these are identities, not equations of motion):
///
/// - covariant component 0 = `-(div residual)`;
/// - covariant spatial components = `-i} * (curl residual)`;
/// - real split = (real, imaginary) parts of the covariant residual;
/// - `e^{mu nu lam sig} T_{lam sig nu} = 6i * covariant^mu` for the rank-3
///   dual residual `T`.
pub struct FormEquivalenceReport {
    pub complex3d_vs_covariant: f64,
    pub real_split_vs_covariant: f64,
    pub dual_contraction: f64,
}

impl FormEquivalenceReport {
    pub fn max(&self) -> f64 {
        math::max(
            self.complex3d_vs_covariant,
            math::max(self.real_split_vs_covariant, self.dual_contraction),
        )
    }
}

pub fn form_equivalence_residual(
    cfg: &Configuration,
    x: &Event,
    ch: Channel,
) -> Result<FormEquivalenceReport> {
    let (curl_res, div_res) = residual_complex3d(cfg, x, ch)?;
    let cov = residual_covariant(cfg, x, ch)?;
    let (res_r, res_s) = residual_real_split(cfg, x, ch)?;
    let dual = residual_dual(cfg, x, ch)?;

    let mut c3 = (cov[0] + div_res).norm();
    for p in 0..3 {
        c3 = math::max(c3, (cov[p + 1] + I * curl_res[p]).norm());
    }

    let mut rs = 0.0f64;
    for mu in 0..4 {
        rs = math::max(rs, math::abs(cov[mu].re - res_r[mu]));
        rs = math::max(rs, math::abs(cov[mu].im - res_s[mu]));
    }

    let mut dc = 0.0f64;
    for mu in 0..4 {
        let mut acc = Complex64::ZERO;
        for nu in 0..4 {
            for lam in 0..4 {
                for sig in 0..4 {
                    let e = levi_civita_up(mu, nu, lam, sig);
                    if e != 0 {
                        acc += e as f64 * dual.t[lam][sig][nu];
                    }
                }
            }
        }
        dc = math::max(dc, (acc - 6.0 * I * cov[mu]).norm());
    }

    Ok(FormEquivalenceReport {
        complex3d_vs_covariant: c3,
        real_split_vs_covariant: rs,
        dual_contraction: dc,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Channel;
    use crate::scenarios;

    #[test]
    fn zero_configuration_has_zero_residuals() {
        let cfg = Configuration::source_free(
            VectorField::zero(),
            VectorField::zero(),
            VectorField::zero(),
            VectorField::zero(),
            1.0,
        );
        let x = [0.1, 0.2, 0.3, 0.4];
        let (curl_res, div_res) = residual_complex3d(&cfg, &x, Channel::Exact).unwrap();
        assert_eq!(vec3::cmax_abs(&curl_res), 0.0);
        assert_eq!(div_res.norm(), 0.0);
        let cov = residual_covariant(&cfg, &x, Channel::Exact).unwrap();
        assert!(cov.iter().all(|z| z.norm() == 0.0));
        assert_eq!(residual_dual(&cfg, &x, Channel::Exact).unwrap().norm(), 0.0);
        assert_eq!(residual_continuity(&cfg, &x, Channel::Exact).unwrap(), 0.0);
    }

    #[test]
    fn vacuum_plane_wave_solves_all_forms() {
        let sc = scenarios::vacuum_plane_wave([0.4, -0.3, 0.2], [0.3, 0.8, 0.6], 1.1, 1.0).unwrap();
        let tol = 1e-11 * sc.field_scale * sc.freq_scale;
        for x in sc.grid(3).unwrap().events() {
            let (curl_res, div_res) = residual_complex3d(&sc.config, &x, Channel::Exact).unwrap();
            assert!(vec3::cmax_abs(&curl_res) <= tol);
            assert!(div_res.norm() <= tol);
            let cov = residual_covariant(&sc.config, &x, Channel::Exact).unwrap();
            assert!(cov.iter().all(|z| z.norm() <= tol));
            assert!(
                residual_dual(&sc.config, &x, Channel::Exact)
                    .unwrap()
                    .norm()
                    <= tol
            );
            let (rr, rs) = residual_real_split(&sc.config, &x, Channel::Exact).unwrap();
            assert!(rr.iter().chain(rs.iter()).all(|v| math::abs(*v) <= tol));
        }
    }

    #[test]
    fn coulomb_divergence_vanishes_off_origin() {
        let sc = scenarios::coulomb_static(2.5, 0.25, 1.0).unwrap();
        for x in sc.grid(3).unwrap().events() {
            if sc.config.guard(&x).is_err() {
                continue;
            }
            let (_, div_res) = residual_complex3d(&sc.config, &x, Channel::Exact).unwrap();
            assert!(div_res.norm() <= 1e-11 * sc.field_scale);
        }
        // Inside the exclusion ball the guard trips.
        assert!(matches!(
            residual_complex3d(&sc.config, &[0.0, 0.01, 0.0, 0.0], Channel::Exact),
            Err(Error::SingularPoint)
        ));
    }

    #[test]
    fn forms_are_linear_rearrangements_on_non_solutions() {
        let sc = scenarios::trig_random(7, 2, 1.0, 1.0);
        let x = [0.3, -0.1, 0.45, 0.2];
        let rep = form_equivalence_residual(&sc.config, &x, Channel::Exact).unwrap();
        let scale = sc.field_scale * sc.freq_scale;
        assert!(
            rep.complex3d_vs_covariant <= 1e-13 * scale,
            "{}",
            rep.complex3d_vs_covariant
        );
        assert!(rep.real_split_vs_covariant <= 1e-13 * scale);
        assert!(rep.dual_contraction <= 1e-12 * scale);
        // And the configuration is not a solution: residuals are large.
        let cov = residual_covariant(&sc.config, &x, Channel::Exact).unwrap();
        let max = cov.iter().fold(0.0f64, |a, z| math::max(a, z.norm()));
        assert!(max > 1e-3 * scale, "unexpectedly small residual {max}");
    }

    #[test]
    fn fd_channels_approach_exact_residuals() {
        let sc = scenarios::trig_random(21, 2, 1.0, 1.0);
        let x = [0.15, 0.35, -0.25, 0.05];
        let exact = residual_covariant(&sc.config, &x, Channel::Exact).unwrap();
        let fd = residual_covariant(&sc.config, &x, Channel::Fd4 { h: 1e-2 }).unwrap();
        for mu in 0..4 {
            assert!((exact[mu] - fd[mu]).norm() <= 1e-6 * sc.field_scale);
        }
    }

    #[test]
    fn vacuum_rank3_requires_vacuum() {
        let sc = scenarios::trig_random(3, 1, 1.0, 1.0);
        let x = [0.0; 4];
        assert!(matches!(
            vacuum_rank3_check(&sc.config, &x, 0, 1, Channel::Exact),
            Err(Error::NotVacuum)
        ));
    }

    #[test]
    fn vacuum_rank3_holds_on_plane_wave() {
        let sc =
            scenarios::vacuum_plane_wave([0.3, -0.4, 0.55], [0.2, 0.7, 0.4], 1.3, 1.0).unwrap();
        let x = [0.23, 0.11, -0.35, 0.71];
        let scale = sc.field_scale * sc.freq_scale;
        for alpha in 0..4 {
            for beta in 0..4 {
                let res = vacuum_rank3_check(&sc.config, &x, alpha, beta, Channel::Exact).unwrap();
                for z in res {
                    assert!(z.norm() <= 1e-10 * scale, "alpha={alpha} beta={beta}: {z}");
                }
            }
        }
    }

    #[test]
    fn implied_sources_recover_scenario_sources() {
        // For a solution scenario the implied sources equal the declared ones.
        let sc = scenarios::vacuum_plane_wave([0.5, 0.0, 0.25], [0.0, 1.0, 0.0], 0.9, 1.0).unwrap();
        let x = [0.4, 0.3, 0.2, 0.1];
        let s = implied_sources(&sc.config, &x, Channel::Exact).unwrap();
        assert!(math::abs(s.rho) <= 1e-12);
        assert!(vec3::max_abs(s.j) <= 1e-12);
    }
}
