//! Four-potential and Hertz tensor-potential layer for media in uniform
//! motion.
//!
//! The chain is: an antisymmetric tensor potential `Z^{lam sig}` generates
//! the four-potential `A^mu = (kappa/(1+kappa) u^mu u_lam
//! - delta^mu_lam) d_sig Z^{lam sig}`, which automatically satisfies the
//! gauge condition `(g^{nu tau} + kappa u^nu u^tau) d_nu A_tau = 0`; the
//! field tensor is `F_{sig tau} = d_sig A_tau - d_tau A_sig`; and the wave
//! operator `d^tau d_tau + kappa (u^tau d_tau)^2` drives both `A` and `Z`,
//! with polarization sources `j^lam = c d_sig p^{lam sig}`.
//!
//! All potentials here are trigonometric fields, so both derivative
//! channels work and the exact channel is available to any order.

use num_complex::Complex64;

use crate::grid::{Channel, ScalarField};
use crate::maxwell::SourceDensity;
use crate::media::MediumSpec;
use crate::scenarios::{SeededRng, TrigScalar};
use crate::tensor::{delta, levi3, CTensor2, Metric4, Variance};
use crate::vec3::{self, Vec3};
use crate::{math, Event, Result};

const PI4: f64 = 4.0 * core::f64::consts::PI;

/// The real four-potential `A_lam(x)` (lower index), component fields with
/// closed-form derivatives.
#[derive(Debug, Clone, Default)]
pub struct FourPotential {
    pub a: [TrigScalar; 4],
}

impl FourPotential {
    pub fn new(a: [TrigScalar; 4]) -> Self {
        Self { a }
    }

    pub fn random(rng: &mut SeededRng, degree: usize, scale: f64) -> Self {
        Self {
            a: core::array::from_fn(|_| TrigScalar::random(rng, degree, scale)),
        }
    }

    pub fn eval(&self, x: &Event) -> [f64; 4] {
        core::array::from_fn(|lam| self.a[lam].eval(x))
    }

    /// `d_nu A_lam` for all `lam`.
    pub fn d(&self, x: &Event, nu: usize, ch: Channel) -> Result<[f64; 4]> {
        let mut out = [0.0; 4];
        for (lam, slot) in out.iter_mut().enumerate() {
            *slot = ch.d(&self.a[lam], x, nu)?;
        }
        Ok(out)
    }

    pub fn dd(&self, x: &Event, nu: usize, sig: usize, ch: Channel) -> Result<[f64; 4]> {
        let mut out = [0.0; 4];
        for (lam, slot) in out.iter_mut().enumerate() {
            *slot = ch.dd(&self.a[lam], x, nu, sig)?;
        }
        Ok(out)
    }
}

/// Antisymmetric tensor potential, stored as its electric and magnetic
/// 3-vector blocks: `Z^{0k} = Ze_k`, `Z^{pq} = -e_{pqr} Zm_r`.
#[derive(Debug, Clone, Default)]
pub struct HertzTensor {
    pub ze: [TrigScalar; 3],
    pub zm: [TrigScalar; 3],
}

impl HertzTensor {
    pub fn new(ze: [TrigScalar; 3], zm: [TrigScalar; 3]) -> Self {
        Self { ze, zm }
    }

    pub fn random(rng: &mut SeededRng, degree: usize, scale: f64) -> Self {
        Self {
            ze: core::array::from_fn(|_| TrigScalar::random(rng, degree, scale)),
            zm: core::array::from_fn(|_| TrigScalar::random(rng, degree, scale)),
        }
    }

    /// Component `Z^{lam sig}` as a trig field (zero on the diagonal).
    fn component(&self, lam: usize, sig: usize) -> TrigScalar {
        tensor_component(&self.ze, &self.zm, 1.0, -1.0, lam, sig)
    }

    /// `Z^{lam sig}(x)` as a complex tensor (real entries), both slots up.
    pub fn tensor_at(&self, x: &Event) -> CTensor2 {
        tensor_at(&self.ze, &self.zm, 1.0, -1.0, x)
    }
}

/// Antisymmetric polarization tensor: `p^{0k} = -p_k`, `p^{pq} = +e_{pqr} m_r`.
#[derive(Debug, Clone, Default)]
pub struct PolarizationTensor {
    pub pe: [TrigScalar; 3],
    pub pm: [TrigScalar; 3],
}

impl PolarizationTensor {
    pub fn new(pe: [TrigScalar; 3], pm: [TrigScalar; 3]) -> Self {
        Self { pe, pm }
    }

    pub fn random(rng: &mut SeededRng, degree: usize, scale: f64) -> Self {
        Self {
            pe: core::array::from_fn(|_| TrigScalar::random(rng, degree, scale)),
            pm: core::array::from_fn(|_| TrigScalar::random(rng, degree, scale)),
        }
    }

    fn component(&self, lam: usize, sig: usize) -> TrigScalar {
        tensor_component(&self.pe, &self.pm, -1.0, 1.0, lam, sig)
    }

    pub fn tensor_at(&self, x: &Event) -> CTensor2 {
        tensor_at(&self.pe, &self.pm, -1.0, 1.0, x)
    }
}

// Shared block layout for antisymmetric tensors built from two 3-vectors:
// T^{0k} = time_sign * e_k, T^{pq} = spatial_sign * e_{pqr} m_r.
fn tensor_component(
    evec: &[TrigScalar; 3],
    mvec: &[TrigScalar; 3],
    time_sign: f64,
    spatial_sign: f64,
    lam: usize,
    sig: usize,
) -> TrigScalar {
    match (lam, sig) {
        (0, 0) => TrigScalar::zero(),
        (0, k) => evec[k - 1].clone().scaled(time_sign),
        (k, 0) => evec[k - 1].clone().scaled(-time_sign),
        (p, q) if p == q => TrigScalar::zero(),
        (p, q) => {
            let r = 3 - (p - 1) - (q - 1);
            let e = levi3(p - 1, q - 1, r) as f64;
            mvec[r].clone().scaled(spatial_sign * e)
        }
    }
}

fn tensor_at(
    evec: &[TrigScalar; 3],
    mvec: &[TrigScalar; 3],
    time_sign: f64,
    spatial_sign: f64,
    x: &Event,
) -> CTensor2 {
    let mut t = CTensor2::zero((Variance::Up, Variance::Up));
    for k in 0..3 {
        let v = evec[k].eval(x);
        t.m[0][k + 1] = Complex64::from(time_sign * v);
        t.m[k + 1][0] = Complex64::from(-time_sign * v);
    }
    for p in 0..3 {
        for q in 0..3 {
            for r in 0..3 {
                let e = levi3(p, q, r);
                if e != 0 {
                    t.m[p + 1][q + 1] += Complex64::from(spatial_sign * e as f64 * mvec[r].eval(x));
                }
            }
        }
    }
    t
}

/// `F_{sig tau} = d_sig A_tau - d_tau A_sig`, antisymmetric bitwise.
pub fn f_from_a(a: &FourPotential, x: &Event, ch: Channel) -> Result<CTensor2> {
    let mut da = [[0.0; 4]; 4];
    for (sig, row) in da.iter_mut().enumerate() {
        *row = a.d(x, sig, ch)?;
    }
    let mut f = CTensor2::zero((Variance::Down, Variance::Down));
    for sig in 0..4 {
        for tau in (sig + 1)..4 {
            let v = Complex64::from(da[sig][tau] - da[tau][sig]);
            f.m[sig][tau] = v;
            f.m[tau][sig] = -v;
        }
    }
    Ok(f)
}

/// Gauge expression `(g^{nu tau} + kappa u^nu u^tau) d_nu A_tau`.
pub fn gauge_residual(a: &FourPotential, m: &MediumSpec, x: &Event, ch: Channel) -> Result<f64> {
    let u = m.four_velocity().c;
    let kap = m.kappa();
    let mut acc = 0.0;
    for nu in 0..4 {
        let da = a.d(x, nu, ch)?;
        for tau in 0..4 {
            let g = Metric4::g(nu) * delta(nu, tau) + kap * u[nu] * u[tau];
            if g != 0.0 {
                acc += g * da[tau];
            }
        }
    }
    Ok(acc)
}

/// Apply the wave operator `d^tau d_tau + kappa (u^tau d_tau)^2` to a
/// scalar field.
pub fn wave_operator(f: &dyn ScalarField, m: &MediumSpec, x: &Event, ch: Channel) -> Result<f64> {
    let u = m.four_velocity().c;
    let kap = m.kappa();
    let mut acc = 0.0;
    for tau in 0..4 {
        acc += Metric4::g(tau) * ch.dd(f, x, tau, tau)?;
    }
    for sig in 0..4 {
        for tau in 0..4 {
            let w = kap * u[sig] * u[tau];
            if w != 0.0 {
                acc += w * ch.dd(f, x, sig, tau)?;
            }
        }
    }
    Ok(acc)
}

/// Symbol of the wave operator on the phase `k.r - w t`:
/// `(|k|^2 - w^2/c^2) - kappa gamma^2 (w/c - beta.k)^2`.
pub fn dispersion_symbol(m: &MediumSpec, omega_over_c: f64, k: Vec3) -> f64 {
    let beta = vec3::scale(1.0 / m.c, m.v);
    let gamma2 = 1.0 / (1.0 - vec3::dot(beta, beta));
    let doppler = omega_over_c - vec3::dot(beta, k);
    vec3::dot(k, k) - omega_over_c * omega_over_c - m.kappa() * gamma2 * doppler * doppler
}

/// Positive root `w` of the dispersion symbol for a medium at rest:
/// `w = c |k| / sqrt(eps mu)`, i.e. phase speed `c / sqrt(eps mu)`.
pub fn rest_dispersion_omega(m: &MediumSpec, k: Vec3) -> Result<f64> {
    if m.beta() != 0.0 {
        return Err(crate::Error::InvalidInput(
            "dispersion root is for media at rest",
        ));
    }
    Ok(m.c * vec3::norm(k) / math::sqrt(m.epsilon * m.mu))
}

/// Residual of the wave equation for the four-potential (inverted form):
/// `[d^2 + kappa (u d)^2] A_sig - d_sig(gauge)
///  - (4 pi mu / c)(g_{sig lam} - kappa/(1+kappa) u_sig u_lam) j^lam`.
pub fn a_wave_residual(
    a: &FourPotential,
    j4: [f64; 4],
    m: &MediumSpec,
    x: &Event,
    ch: Channel,
) -> Result<[f64; 4]> {
    let u_up = m.four_velocity().c;
    let u_dn = m.four_velocity().lower().unwrap().c;
    let kap = m.kappa();
    if 1.0 + kap == 0.0 {
        return Err(crate::Error::DegenerateMedium);
    }

    // Second-derivative table dd[nu][sig][lam] = d_nu d_sig A_lam.
    let mut dd = [[[0.0; 4]; 4]; 4];
    for nu in 0..4 {
        for sig in nu..4 {
            let v = a.dd(x, nu, sig, ch)?;
            dd[nu][sig] = v;
            dd[sig][nu] = v;
        }
    }

    let mut out = [0.0; 4];
    for sig in 0..4 {
        // wave operator on A_sig
        let mut wave = 0.0;
        for tau in 0..4 {
            wave += Metric4::g(tau) * dd[tau][tau][sig];
        }
        for s in 0..4 {
            for t in 0..4 {
                let w = kap * u_up[s] * u_up[t];
                if w != 0.0 {
                    wave += w * dd[s][t][sig];
                }
            }
        }
        // d_sig of the gauge expression
        let mut dgauge = 0.0;
        for nu in 0..4 {
            for tau in 0..4 {
                let g = Metric4::g(nu) * delta(nu, tau) + kap * u_up[nu] * u_up[tau];
                if g != 0.0 {
                    dgauge += g * dd[sig][nu][tau];
                }
            }
        }
        // source term
        let mut src = 0.0;
        for lam in 0..4 {
            let w = Metric4::g(sig) * delta(sig, lam) - kap / (1.0 + kap) * u_dn[sig] * u_dn[lam];
            if w != 0.0 {
                src += w * j4[lam];
            }
        }
        out[sig] = wave - dgauge - PI4 * m.mu / m.c * src;
    }
    Ok(out)
}

/// Residual of the pre-inversion form:
/// `(g^{lam sig} + kappa u^lam u^sig) { -[d^2 + kappa (u d)^2] A_sig
///  + d_sig(gauge) } + (4 pi mu / c) j^lam`.
///
/// Related to [`a_wave_residual`] by
/// `res_pre^lam = -(g^{lam sig} + kappa u^lam u^sig) res_sig`.
pub fn a_wave_residual_pre_inverse(
    a: &FourPotential,
    j4: [f64; 4],
    m: &MediumSpec,
    x: &Event,
    ch: Channel,
) -> Result<[f64; 4]> {
    let u_up = m.four_velocity().c;
    let u_dn = m.four_velocity().lower().unwrap().c;
    let kap = m.kappa();

    // Rebuild the inner bracket from the inverted-form residual by undoing
    // its source term, so this stays a single-pass evaluation.
    let res = a_wave_residual(a, j4, m, x, ch)?;
    let mut inner = [0.0; 4]; // -[wave - dgauge]_sig
    for sig in 0..4 {
        let mut src = 0.0;
        for lam in 0..4 {
            let w = Metric4::g(sig) * delta(sig, lam) - kap / (1.0 + kap) * u_dn[sig] * u_dn[lam];
            if w != 0.0 {
                src += w * j4[lam];
            }
        }
        inner[sig] = -(res[sig] + PI4 * m.mu / m.c * src);
    }
    let mut out = [0.0; 4];
    for lam in 0..4 {
        let mut acc = 0.0;
        for sig in 0..4 {
            let g = Metric4::g(lam) * delta(lam, sig) + kap * u_up[lam] * u_up[sig];
            if g != 0.0 {
                acc += g * inner[sig];
            }
        }
        out[lam] = acc + PI4 * m.mu / m.c * j4[lam];
    }
    Ok(out)
}

/// The four-potential generated by a Hertz tensor,
/// `A^mu = (kappa/(1+kappa) u^mu u_lam - delta^mu_lam) d_sig Z^{lam sig}`,
/// returned with the lower index as a [`FourPotential`]. Built symbolically,
/// so all derivative orders remain closed-form.
pub fn a_from_z(z: &HertzTensor, m: &MediumSpec) -> Result<FourPotential> {
    let kap = m.kappa();
    if 1.0 + kap == 0.0 {
        return Err(crate::Error::DegenerateMedium);
    }
    let u_up = m.four_velocity().c;
    let u_dn = m.four_velocity().lower().unwrap().c;

    // W^lam = d_sig Z^{lam sig} as trig fields.
    let w: [TrigScalar; 4] = core::array::from_fn(|lam| {
        let mut acc = TrigScalar::zero();
        for sig in 0..4 {
            if sig != lam {
                acc = acc.plus(&z.component(lam, sig).derivative(sig));
            }
        }
        acc
    });

    // u_lam W^lam
    let uw = {
        let mut acc = TrigScalar::zero();
        for lam in 0..4 {
            acc = acc.plus(&w[lam].clone().scaled(u_dn[lam]));
        }
        acc
    };

    // A^mu, then lower the index.
    let a_up: [TrigScalar; 4] = core::array::from_fn(|mu| {
        uw.clone()
            .scaled(kap / (1.0 + kap) * u_up[mu])
            .plus(&w[mu].clone().scaled(-1.0))
    });
    Ok(FourPotential {
        a: core::array::from_fn(|mu| {
            let sign = Metric4::g(mu);
            a_up[mu].clone().scaled(sign)
        }),
    })
}

/// The 3D split of the same potential, `A^lam = (phi, A)`:
///
/// `phi = -(1 - kappa gamma^2/(1+kappa)) div Ze
///  + kappa gamma^2 / ((1+kappa) c) v . (d_t Ze / c + curl Zm)`
///
/// `A = d_t Ze / c + curl Zm + kappa gamma^2 v / ((1+kappa) c^2)
///  [c div Ze + d_t (v.Ze)/c + v . curl Zm]`.
pub fn a_from_z_3d(z: &HertzTensor, m: &MediumSpec, x: &Event, ch: Channel) -> Result<(f64, Vec3)> {
    let kap = m.kappa();
    if 1.0 + kap == 0.0 {
        return Err(crate::Error::DegenerateMedium);
    }
    let gamma2 = m.gamma() * m.gamma();
    let c = m.c;
    let v = m.v;

    let mut div_ze = 0.0;
    for k in 0..3 {
        div_ze += ch.d(&z.ze[k], x, k + 1)?;
    }
    // d_t Ze / c = d_0 Ze
    let d0_ze: Vec3 = [
        ch.d(&z.ze[0], x, 0)?,
        ch.d(&z.ze[1], x, 0)?,
        ch.d(&z.ze[2], x, 0)?,
    ];
    let mut curl_zm = [0.0; 3];
    for p in 0..3 {
        for q in 0..3 {
            for r in 0..3 {
                let e = levi3(p, q, r) as f64;
                if e != 0.0 {
                    curl_zm[p] += e * ch.d(&z.zm[r], x, q + 1)?;
                }
            }
        }
    }
    let inner = vec3::add(d0_ze, curl_zm);

    let coeff = kap * gamma2 / (1.0 + kap);
    let phi = -(1.0 - coeff) * div_ze + coeff / c * vec3::dot(v, inner);

    // d_t (v.Ze)/c = v . d_0 Ze (constant v).
    let bracket = c * div_ze + vec3::dot(v, d0_ze) + vec3::dot(v, curl_zm);
    let a3: Vec3 = core::array::from_fn(|p| inner[p] + coeff * v[p] / (c * c) * bracket);
    Ok((phi, a3))
}

/// Residual of the tensor wave equation driven by polarization sources:
/// `[d^2 + kappa (u d)^2] Z^{lam nu} + 4 pi mu p^{lam nu}`.
pub fn hertz_wave_residual(
    z: &HertzTensor,
    p: &PolarizationTensor,
    m: &MediumSpec,
    x: &Event,
    ch: Channel,
) -> Result<[[f64; 4]; 4]> {
    let mut out = [[0.0; 4]; 4];
    for lam in 0..4 {
        for nu in 0..4 {
            if lam == nu {
                continue;
            }
            let zc = z.component(lam, nu);
            let pc = p.component(lam, nu);
            out[lam][nu] = wave_operator(&zc, m, x, ch)? + PI4 * m.mu * pc.eval(x);
        }
    }
    Ok(out)
}

/// Sources generated by a polarization tensor:
/// `rho = -div p`, `j = d_t p + c curl m` (with `d_t = c d_0`).
pub fn sources_from_p(
    p: &PolarizationTensor,
    x: &Event,
    ch: Channel,
    c: f64,
) -> Result<SourceDensity> {
    let mut rho = 0.0;
    for k in 0..3 {
        rho -= ch.d(&p.pe[k], x, k + 1)?;
    }
    let mut j = [0.0; 3];
    for pp in 0..3 {
        j[pp] = c * ch.d(&p.pe[pp], x, 0)?;
        for q in 0..3 {
            for r in 0..3 {
                let e = levi3(pp, q, r) as f64;
                if e != 0.0 {
                    j[pp] += c * e * ch.d(&p.pm[r], x, q + 1)?;
                }
            }
        }
    }
    Ok(SourceDensity { rho, j })
}

/// Continuity residual `d_t rho + div j` for the sources generated by `p`;
/// identically zero for any smooth polarization tensor.
pub fn continuity_from_p(p: &PolarizationTensor, x: &Event, ch: Channel, c: f64) -> Result<f64> {
    // d_t rho = -c d_0 div pe; div j = div(d_t pe) + c div curl pm.
    let mut acc = 0.0;
    for k in 0..3 {
        acc -= c * ch.dd(&p.pe[k], x, 0, k + 1)?;
        acc += c * ch.dd(&p.pe[k], x, k + 1, 0)?;
    }
    // div curl pm = e_{pqr} d_p d_q pm_r
    for pp in 0..3 {
        for q in 0..3 {
            for r in 0..3 {
                let e = levi3(pp, q, r) as f64;
                if e != 0.0 {
                    acc += c * e * ch.dd(&p.pm[r], x, pp + 1, q + 1)?;
                }
            }
        }
    }
    Ok(acc)
}
