//! Lorentz boosts of events, complex fields and field tensors.
//!
//! Three equivalent routes are provided: the 4x4 boost matrix acting on
//! `Q^{mu nu}` by similarity, a closed 3D form acting directly on `(F, G)`,
//! and (for axis-aligned boosts) a complex-orthogonal 6x6 rotation acting on
//! the stacked field components.

use num_complex::Complex64;

use crate::fields::{build_q, pair_from_q, ComplexPair};
use crate::tensor::{CTensor2, FourVector, Metric4, Variance};
use crate::vec3::{self, CVec3, Vec3};
use crate::{math, Error, Event, Result};

/// Default guard on `|v|/c`; gamma stays below ~22.4.
pub const DEFAULT_BETA_GUARD: f64 = 0.999;

/// Below this `|beta|` the `(gamma - 1)/v^2` factor switches to its series
/// value to avoid 0/0.
const SMALL_BETA: f64 = 1e-8;

/// A boost velocity with its speed-of-light scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoostSpec {
    v: Vec3,
    c: f64,
    guard: f64,
}

impl BoostSpec {
    pub fn new(v: Vec3, c: f64) -> Result<Self> {
        Self::with_guard(v, c, DEFAULT_BETA_GUARD)
    }

    pub fn with_guard(v: Vec3, c: f64, guard: f64) -> Result<Self> {
        if !(c > 0.0) {
            return Err(Error::InvalidInput("speed of light must be positive"));
        }
        let beta = vec3::norm(v) / c;
        if beta > guard {
            return Err(Error::SpeedGuard { beta, guard });
        }
        Ok(Self { v, c, guard })
    }

    pub fn velocity(&self) -> Vec3 {
        self.v
    }

    pub fn light_speed(&self) -> f64 {
        self.c
    }

    pub fn reversed(&self) -> Self {
        Self {
            v: vec3::scale(-1.0, self.v),
            ..*self
        }
    }

    pub fn beta_vec(&self) -> Vec3 {
        vec3::scale(1.0 / self.c, self.v)
    }

    pub fn beta(&self) -> f64 {
        vec3::norm(self.v) / self.c
    }

    pub fn gamma(&self) -> f64 {
        let b = self.beta();
        1.0 / math::sqrt(1.0 - b * b)
    }

    /// `(gamma - 1)/|v|^2` with the exact zero-velocity branch
    /// `gamma - 1 ~ beta^2/2`.
    fn gamma_m1_over_v2(&self) -> f64 {
        let v2 = vec3::dot(self.v, self.v);
        if self.beta() < SMALL_BETA {
            1.0 / (2.0 * self.c * self.c)
        } else {
            (self.gamma() - 1.0) / v2
        }
    }
}

/// A real 4x4 Lorentz matrix `L^mu_nu` acting on contravariant components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzMatrix {
    pub m: [[f64; 4]; 4],
}

impl LorentzMatrix {
    pub fn identity() -> Self {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Self { m }
    }

    /// Max-abs residual of `L^T g L - g`.
    pub fn metric_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for a in 0..4 {
            for b in 0..4 {
                let mut acc = 0.0;
                for mu in 0..4 {
                    acc += self.m[mu][a] * Metric4::g(mu) * self.m[mu][b];
                }
                worst = math::max(
                    worst,
                    math::abs(acc - Metric4::g(a) * crate::tensor::delta(a, b)),
                );
            }
        }
        worst
    }

    pub fn det(&self) -> f64 {
        let m = CTensor2::from_real((Variance::Up, Variance::Down), self.m);
        m.det().re
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = [[0.0; 4]; 4];
        for mu in 0..4 {
            for nu in 0..4 {
                for lam in 0..4 {
                    m[mu][nu] += self.m[mu][lam] * other.m[lam][nu];
                }
            }
        }
        Self { m }
    }

    pub fn apply_event(&self, x: &Event) -> Event {
        let mut out = [0.0; 4];
        for mu in 0..4 {
            for nu in 0..4 {
                out[mu] += self.m[mu][nu] * x[nu];
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for mu in 0..4 {
            for nu in 0..4 {
                worst = math::max(worst, math::abs(self.m[mu][nu] - other.m[mu][nu]));
            }
        }
        worst
    }
}

/// Boost matrix for velocity `v`: `gamma` in the 0-0 slot, `-gamma beta_p`
/// on the borders and `delta_pq + (gamma - 1) v_p v_q / v^2` in the spatial
/// block. For `v = v e_1` this is the standard 2x2 hyperbolic block.
pub fn boost_matrix(b: &BoostSpec) -> LorentzMatrix {
    let beta = b.beta_vec();
    let gamma = b.gamma();
    let mut m = LorentzMatrix::identity();
    if b.beta() == 0.0 {
        return m;
    }
    let gm1_v2 = b.gamma_m1_over_v2();
    m.m[0][0] = gamma;
    for p in 0..3 {
        m.m[0][p + 1] = -gamma * beta[p];
        m.m[p + 1][0] = -gamma * beta[p];
        for q in 0..3 {
            m.m[p + 1][q + 1] = crate::tensor::delta(p, q) + gm1_v2 * b.v[p] * b.v[q];
        }
    }
    m
}

/// Boost an event with the closed gamma-form
/// `r' = r + [(gamma - 1)(v.r)/v^2 - gamma t] v`,
/// `t' = gamma (t - v.r/c^2)`.
pub fn transform_event(x: &FourVector<f64>, b: &BoostSpec) -> Result<FourVector<f64>> {
    if x.variance != Variance::Up {
        return Err(Error::VarianceMismatch("event must be contravariant"));
    }
    let c = b.c;
    let t = x.c[0] / c;
    let r = [x.c[1], x.c[2], x.c[3]];
    let vr = vec3::dot(b.v, r);
    let gamma = b.gamma();
    let coeff = b.gamma_m1_over_v2() * vr - gamma * t;
    let rp = vec3::add(r, vec3::scale(coeff, b.v));
    let tp = gamma * (t - vr / (c * c));
    Ok(FourVector::up([c * tp, rp[0], rp[1], rp[2]]))
}

/// Similarity transform `Q'^{mu nu} = L^mu_sigma L^nu_tau Q^{sigma tau}`.
pub fn transform_tensor(q: &CTensor2, l: &LorentzMatrix) -> Result<CTensor2> {
    if q.variance != (Variance::Up, Variance::Up) {
        return Err(Error::VarianceMismatch(
            "tensor transform expects both slots up",
        ));
    }
    q.require_antisymmetric()?;
    // Fill the upper triangle and mirror by negation so antisymmetry is
    // preserved bitwise.
    let mut out = CTensor2::zero(q.variance);
    for mu in 0..4 {
        for nu in (mu + 1)..4 {
            let mut acc = Complex64::ZERO;
            for sig in 0..4 {
                for tau in 0..4 {
                    acc += l.m[mu][sig] * l.m[nu][tau] * q.m[sig][tau];
                }
            }
            out.m[mu][nu] = acc;
            out.m[nu][mu] = -acc;
        }
    }
    Ok(out)
}

/// Closed 3D form of the field transformation:
/// `F' = gamma (F - (i/c) v x G) - (gamma - 1) (v.F / v^2) v`
/// and the same with `F <-> G`.
pub fn transform_fields_3d(pair: &ComplexPair, b: &BoostSpec) -> ComplexPair {
    if b.beta() == 0.0 {
        return *pair;
    }
    let gamma = b.gamma();
    let gm1_v2 = b.gamma_m1_over_v2();
    let vc: CVec3 = vec3::complex(b.v, [0.0; 3]);
    let i_over_c = Complex64::new(0.0, 1.0 / b.c);

    let boost_one = |a: &CVec3, other: &CVec3| -> CVec3 {
        let vxo = vec3::ccross(&vc, other);
        let va = vec3::cdot(&vc, a);
        let mut out = [Complex64::ZERO; 3];
        for k in 0..3 {
            out[k] = gamma * (a[k] - i_over_c * vxo[k]) - gm1_v2 * va * b.v[k];
        }
        out
    };

    ComplexPair {
        f: boost_one(&pair.f, &pair.g),
        g: boost_one(&pair.g, &pair.f),
    }
}

/// Tensor-route field transformation: build `Q`, boost it, read the fields
/// back. Agrees with [`transform_fields_3d`] to rounding.
pub fn transform_fields_tensor(pair: &ComplexPair, b: &BoostSpec) -> Result<ComplexPair> {
    let q = build_q(pair);
    let l = boost_matrix(b);
    pair_from_q(&transform_tensor(&q, &l)?)
}

/// Stacking order of the 6-component field vector used by
/// [`c6_rotation_matrix`] for a boost along `e_1`; other axes follow by
/// cyclic permutation of the spatial labels.
pub fn c6_component_order(axis: usize) -> [(usize, bool); 6] {
    // (index, is_g): e1 order is (F1, F2, G3, G2, F3, G1).
    let a = axis;
    let b = (axis + 1) % 3;
    let c = (axis + 2) % 3;
    [
        (a, false),
        (b, false),
        (c, true),
        (b, true),
        (c, false),
        (a, true),
    ]
}

/// The boost as a complex rotation of `C^6`: block-diagonal with 2x2 blocks
/// `[[cos(i theta), sin(i theta)], [-sin(i theta), cos(i theta)]]` where
/// `cos(i theta) = gamma` and `sin(i theta) = i beta gamma`. The matrix is
/// complex-orthogonal (`M^T M = I`) since `gamma^2 - (beta gamma)^2 = 1`.
pub fn c6_rotation_matrix(b: &BoostSpec, axis: usize) -> Result<[[Complex64; 6]; 6]> {
    if axis > 2 {
        return Err(Error::InvalidInput("axis must be 0, 1 or 2"));
    }
    for (k, vk) in b.v.iter().enumerate() {
        if k != axis && *vk != 0.0 {
            return Err(Error::InvalidInput(
                "C6 rotation form requires an axis-aligned velocity",
            ));
        }
    }
    let beta = b.v[axis] / b.c;
    let gamma = 1.0 / math::sqrt(1.0 - beta * beta);
    let cos_it = Complex64::from(gamma);
    let sin_it = Complex64::new(0.0, beta * gamma);

    let mut m = [[Complex64::ZERO; 6]; 6];
    m[0][0] = Complex64::from(1.0);
    m[5][5] = Complex64::from(1.0);
    for block in [1usize, 3] {
        m[block][block] = cos_it;
        m[block][block + 1] = sin_it;
        m[block + 1][block] = -sin_it;
        m[block + 1][block + 1] = cos_it;
    }
    Ok(m)
}

/// Apply the C^6 rotation to a field pair (axis-aligned boosts only).
pub fn transform_fields_c6(pair: &ComplexPair, b: &BoostSpec, axis: usize) -> Result<ComplexPair> {
    let m = c6_rotation_matrix(b, axis)?;
    let order = c6_component_order(axis);
    let mut vin = [Complex64::ZERO; 6];
    for (slot, (idx, is_g)) in order.iter().enumerate() {
        vin[slot] = if *is_g { pair.g[*idx] } else { pair.f[*idx] };
    }
    let mut vout = [Complex64::ZERO; 6];
    for (r, row) in m.iter().enumerate() {
        for (c, mc) in row.iter().enumerate() {
            vout[r] += mc * vin[c];
        }
    }
    let mut out = ComplexPair::new([Complex64::ZERO; 3], [Complex64::ZERO; 3]);
    for (slot, (idx, is_g)) in order.iter().enumerate() {
        if *is_g {
            out.g[*idx] = vout[slot];
        } else {
            out.f[*idx] = vout[slot];
        }
    }
    Ok(out)
}
