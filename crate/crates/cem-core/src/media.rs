//! Constitutive relations for isotropic media at rest and in uniform
//! motion, the rank-4 permeability tensor, and the energy-momentum tensor
//! expressed through it.
//!
//! For a medium with scalars `eps`, `mu` moving at constant velocity `v`
//! (with `kappa = eps mu - 1` and four-velocity `u`):
//!
//! - `D = eps E + (kappa gamma^2 / mu)[beta^2 E - v (v.E)/c^2 + (v x B)/c]`,
//! - `H = B/mu + (kappa gamma^2 / mu)[-beta^2 B + v (v.B)/c^2 + (v x E)/c]`,
//!
//! or covariantly `R^{lam nu} = eps^{lam nu sig tau} F_{sig tau}` with
//! `eps^{lam nu sig tau} = (1/mu)(g^{lam sig} + kappa u^lam u^sig)
//! (g^{nu tau} + kappa u^nu u^tau)`.

use num_complex::Complex64;

use crate::fields::{build_p, build_q, ComplexPair, FieldPoint};
use crate::tensor::{levi_civita, levi_civita_up, CTensor2, FourVector, Metric4, Variance};
use crate::vec3::{self, Vec3};
use crate::{math, Error, Result};

/// An isotropic medium in uniform motion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumSpec {
    pub epsilon: f64,
    pub mu: f64,
    pub sigma: f64,
    pub v: Vec3,
    pub c: f64,
}

impl MediumSpec {
    pub fn new(epsilon: f64, mu: f64, sigma: f64, v: Vec3, c: f64) -> Result<Self> {
        if !(epsilon > 0.0) || !(mu > 0.0) {
            return Err(Error::InvalidInput("eps and mu must be positive"));
        }
        if sigma < 0.0 {
            return Err(Error::InvalidInput("conductivity must be non-negative"));
        }
        if !(c > 0.0) {
            return Err(Error::InvalidInput("speed of light must be positive"));
        }
        let beta = vec3::norm(v) / c;
        if beta >= 1.0 {
            return Err(Error::SpeedGuard { beta, guard: 1.0 });
        }
        Ok(Self {
            epsilon,
            mu,
            sigma,
            v,
            c,
        })
    }

    pub fn at_rest(epsilon: f64, mu: f64, sigma: f64, c: f64) -> Result<Self> {
        Self::new(epsilon, mu, sigma, [0.0; 3], c)
    }

    pub fn vacuum(c: f64) -> Self {
        Self {
            epsilon: 1.0,
            mu: 1.0,
            sigma: 0.0,
            v: [0.0; 3],
            c,
        }
    }

    /// `kappa = eps mu - 1`.
    pub fn kappa(&self) -> f64 {
        self.epsilon * self.mu - 1.0
    }

    pub fn beta(&self) -> f64 {
        vec3::norm(self.v) / self.c
    }

    pub fn gamma(&self) -> f64 {
        let b = self.beta();
        1.0 / math::sqrt(1.0 - b * b)
    }

    /// Four-velocity `u^lam = (gamma, gamma v / c)` with `u^lam u_lam = 1`.
    pub fn four_velocity(&self) -> FourVector<f64> {
        let g = self.gamma();
        FourVector::up([
            g,
            g * self.v[0] / self.c,
            g * self.v[1] / self.c,
            g * self.v[2] / self.c,
        ])
    }

    pub fn with_velocity(&self, v: Vec3) -> Result<Self> {
        Self::new(self.epsilon, self.mu, self.sigma, v, self.c)
    }
}

/// Rest-frame constitutive map `D = eps E`, `B = mu H`, `j = sigma E`.
pub fn rest_constitutive(e: Vec3, h: Vec3, m: &MediumSpec) -> Result<(Vec3, Vec3, Vec3)> {
    if m.beta() != 0.0 {
        return Err(Error::InvalidInput(
            "rest constitutive map requires a medium at rest",
        ));
    }
    Ok((
        vec3::scale(m.epsilon, e),
        vec3::scale(m.mu, h),
        vec3::scale(m.sigma, e),
    ))
}

/// Moving-medium constitutive map `(E, B) -> (D, H)`.
pub fn minkowski_constitutive(e: Vec3, b: Vec3, m: &MediumSpec) -> (Vec3, Vec3) {
    let kap = m.kappa();
    let beta2 = m.beta() * m.beta();
    let gamma2 = 1.0 / (1.0 - beta2);
    let c = m.c;
    let coeff = kap * gamma2 / m.mu;

    let ve = vec3::dot(m.v, e);
    let vb = vec3::dot(m.v, b);
    let vxb = vec3::cross(m.v, b);
    let vxe = vec3::cross(m.v, e);

    let mut d = vec3::scale(m.epsilon, e);
    let mut h = vec3::scale(1.0 / m.mu, b);
    for k in 0..3 {
        d[k] += coeff * (beta2 * e[k] - m.v[k] * ve / (c * c) + vxb[k] / c);
        h[k] += coeff * (-beta2 * b[k] + m.v[k] * vb / (c * c) + vxe[k] / c);
    }
    (d, h)
}

/// The rank-4 permeability tensor
/// `eps^{lam nu sig tau} = (1/mu)(g^{lam sig} + kappa u^lam u^sig)
/// (g^{nu tau} + kappa u^nu u^tau)`, satisfying the pair-exchange symmetry
/// `eps^{lam nu sig tau} = eps^{nu lam tau sig}` exactly.
#[derive(Debug, Clone)]
pub struct PermeabilityTensor {
    pub t: [[[[f64; 4]; 4]; 4]; 4],
}

impl PermeabilityTensor {
    pub fn get(&self, lam: usize, nu: usize, sig: usize, tau: usize) -> f64 {
        self.t[lam][nu][sig][tau]
    }

    /// Max-abs residual of the pair-exchange symmetry.
    pub fn pair_symmetry_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for l in 0..4 {
            for n in 0..4 {
                for s in 0..4 {
                    for t in 0..4 {
                        worst =
                            math::max(worst, math::abs(self.t[l][n][s][t] - self.t[n][l][t][s]));
                    }
                }
            }
        }
        worst
    }

    /// `R^{lam nu} = eps^{lam nu sig tau} F_{sig tau}` for a real
    /// antisymmetric field tensor `F` (both slots down).
    pub fn apply(&self, ften: &CTensor2) -> Result<CTensor2> {
        if ften.variance != (Variance::Down, Variance::Down) {
            return Err(Error::VarianceMismatch(
                "permeability tensor contracts a dd field tensor",
            ));
        }
        ften.require_antisymmetric()?;
        let mut out = CTensor2::zero((Variance::Up, Variance::Up));
        for lam in 0..4 {
            for nu in 0..4 {
                let mut acc = Complex64::ZERO;
                for sig in 0..4 {
                    for tau in 0..4 {
                        let w = self.t[lam][nu][sig][tau];
                        if w != 0.0 {
                            acc += w * ften.m[sig][tau];
                        }
                    }
                }
                out.m[lam][nu] = acc;
            }
        }
        Ok(out)
    }

    /// The four-term symmetrized contraction
    /// `(1/4)(eps^{lnst} - eps^{lnts} + eps^{nlts} - eps^{nlst}) F_{st}`;
    /// coincides with [`PermeabilityTensor::apply`] by pair symmetry and the
    /// antisymmetry of `F`.
    pub fn apply_symmetrized(&self, ften: &CTensor2) -> Result<CTensor2> {
        if ften.variance != (Variance::Down, Variance::Down) {
            return Err(Error::VarianceMismatch(
                "permeability tensor contracts a dd field tensor",
            ));
        }
        let mut out = CTensor2::zero((Variance::Up, Variance::Up));
        for lam in 0..4 {
            for nu in 0..4 {
                let mut acc = Complex64::ZERO;
                for sig in 0..4 {
                    for tau in 0..4 {
                        let w = 0.25
                            * (self.t[lam][nu][sig][tau] - self.t[lam][nu][tau][sig]
                                + self.t[nu][lam][tau][sig]
                                - self.t[nu][lam][sig][tau]);
                        if w != 0.0 {
                            acc += w * ften.m[sig][tau];
                        }
                    }
                }
                out.m[lam][nu] = acc;
            }
        }
        Ok(out)
    }
}

/// Build the permeability tensor of a medium.
pub fn permeability_tensor(m: &MediumSpec) -> PermeabilityTensor {
    let u = m.four_velocity().c;
    let kap = m.kappa();
    let mut a = [[0.0; 4]; 4]; // g^{ls} + kappa u^l u^s
    for l in 0..4 {
        for s in 0..4 {
            a[l][s] = Metric4::g(l) * crate::tensor::delta(l, s) + kap * u[l] * u[s];
        }
    }
    let mut t = [[[[0.0; 4]; 4]; 4]; 4];
    for l in 0..4 {
        for n in 0..4 {
            for s in 0..4 {
                for tau in 0..4 {
                    t[l][n][s][tau] = a[l][s] * a[n][tau] / m.mu;
                }
            }
        }
    }
    PermeabilityTensor { t }
}

/// Residual of the inverse identity
/// `(g_{lam rho} - kappa/(1+kappa) u_lam u_rho)(g^{lam sig} + kappa u^lam u^sig)
///  = delta_rho^sig`. Rejects `eps mu = 0`.
pub fn inverse_identity_check(m: &MediumSpec) -> Result<f64> {
    let kap = m.kappa();
    if 1.0 + kap == 0.0 {
        return Err(Error::DegenerateMedium);
    }
    let u_up = m.four_velocity().c;
    let u_dn = m.four_velocity().lower().unwrap().c;
    let mut worst = 0.0f64;
    for rho in 0..4 {
        for sig in 0..4 {
            let mut acc = 0.0;
            for lam in 0..4 {
                let left = Metric4::g(lam) * crate::tensor::delta(lam, rho)
                    - kap / (1.0 + kap) * u_dn[lam] * u_dn[rho];
                let right =
                    Metric4::g(lam) * crate::tensor::delta(lam, sig) + kap * u_up[lam] * u_up[sig];
                acc += left * right;
            }
            worst = math::max(worst, math::abs(acc - crate::tensor::delta(rho, sig)));
        }
    }
    Ok(worst)
}

/// Build the complex pair `(Q, P)` directly from a real field tensor:
///
/// `Q^{mu nu} = (eps^{mu nu sig tau} - (i/2) e^{mu nu sig tau}) F_{sig tau}`,
/// `P_{mu nu} = (delta delta - (i/2) e_{mu nu sig tau} eps^{sig tau lam rho}) F_{lam rho}`.
pub fn qp_from_f(ften: &CTensor2, m: &MediumSpec) -> Result<(CTensor2, CTensor2)> {
    if ften.variance != (Variance::Down, Variance::Down) {
        return Err(Error::VarianceMismatch(
            "field tensor must have both slots down",
        ));
    }
    ften.require_antisymmetric()?;
    let eps = permeability_tensor(m);
    let r = eps.apply(ften)?;

    let mut q = CTensor2::zero((Variance::Up, Variance::Up));
    for mu in 0..4 {
        for nu in 0..4 {
            let mut acc = r.m[mu][nu];
            for sig in 0..4 {
                for tau in 0..4 {
                    let e = levi_civita_up(mu, nu, sig, tau);
                    if e != 0 {
                        acc -= Complex64::new(0.0, 0.5 * e as f64) * ften.m[sig][tau];
                    }
                }
            }
            q.m[mu][nu] = acc;
        }
    }

    let mut p = CTensor2::zero((Variance::Down, Variance::Down));
    for mu in 0..4 {
        for nu in 0..4 {
            let mut acc = ften.m[mu][nu];
            for sig in 0..4 {
                for tau in 0..4 {
                    let e = levi_civita(mu, nu, sig, tau);
                    if e != 0 {
                        acc -= Complex64::new(0.0, 0.5 * e as f64) * r.m[sig][tau];
                    }
                }
            }
            p.m[mu][nu] = acc;
        }
    }
    Ok((q, p))
}

/// Energy-momentum tensor of the moving medium,
/// `4 pi T_mu^nu = F_{mu lam} eps^{lam nu sig tau} F_{sig tau}
///  + (1/4) delta_mu^nu F_{sig tau} eps^{sig tau lam rho} F_{lam rho}`.
/// Returned as the real mixed component array (`T_mu^nu` at row `mu`,
/// column `nu`).
pub fn moving_em_tensor(ften: &CTensor2, m: &MediumSpec) -> Result<[[f64; 4]; 4]> {
    let eps = permeability_tensor(m);
    let r = eps.apply(ften)?;
    let fr = ften.mul(&r)?;
    let mut full = Complex64::ZERO;
    for sig in 0..4 {
        for tau in 0..4 {
            full += ften.m[sig][tau] * r.m[sig][tau];
        }
    }
    let pi4 = 4.0 * core::f64::consts::PI;
    let mut t = [[0.0; 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            let val = fr.m[mu][nu] + 0.25 * crate::tensor::delta(mu, nu) * full;
            t[mu][nu] = val.re / pi4;
        }
    }
    Ok(t)
}

/// Fields `(E, D, H, B)` consistent with a given `(E, B)` and medium:
/// the constitutive closure used when cross-checking tensor routes.
pub fn field_point_from_eb(e: Vec3, b: Vec3, m: &MediumSpec) -> FieldPoint {
    let (d, h) = minkowski_constitutive(e, b, m);
    FieldPoint { e, d, h, b }
}

/// Residual of the complex covariant material relation
/// `Q + Q* = eps (P + P*)` for the pair built from `(E, B)` and the medium.
pub fn complex_material_residual(e: Vec3, b: Vec3, m: &MediumSpec) -> Result<f64> {
    let fp = field_point_from_eb(e, b, m);
    let pair = ComplexPair::from_fields(&fp);
    let q = build_q(&pair);
    let p = build_p(&pair);
    let eps = permeability_tensor(m);
    // (P + P*) has both slots down, as required by the contraction.
    let p_re = p.add(&p.conj())?;
    let lhs = q.add(&q.conj())?;
    let rhs = eps.apply(&p_re)?;
    Ok(lhs.max_abs_diff(&rhs))
}

/// Extract `(E, B)` and `(D, H)` from a real field tensor and its
/// permeability image; used to compare the tensor route against the 3D
/// constitutive map.
pub fn eb_from_f(ften: &CTensor2) -> (Vec3, Vec3) {
    let e = [ften.m[0][1].re, ften.m[0][2].re, ften.m[0][3].re];
    let b = [-ften.m[2][3].re, -ften.m[3][1].re, -ften.m[1][2].re];
    (e, b)
}

pub fn dh_from_r(r: &CTensor2) -> (Vec3, Vec3) {
    let d = [-r.m[0][1].re, -r.m[0][2].re, -r.m[0][3].re];
    let h = [-r.m[2][3].re, -r.m[3][1].re, -r.m[1][2].re];
    (d, h)
}
