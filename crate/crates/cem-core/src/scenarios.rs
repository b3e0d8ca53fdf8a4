//! Analytic field configurations with closed-form derivatives.
//!
//! The workhorse is [`TrigScalar`]: finite sums of damped harmonics
//! `amp * exp(s.x) * cos(k.x + phase)` over the event `x = (ct, r)`. The
//! family is closed under differentiation, products, linear combination and
//! linear coordinate substitution, so every scenario built from it carries
//! machine-precision derivatives of all orders — including Lorentz-boosted
//! configurations, where the coefficient vectors are substituted and the
//! components remixed.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fields::FieldPoint;
use crate::grid::{Grid4, ScalarField, VectorField};
use crate::lorentz::{boost_matrix, BoostSpec};
use crate::maxwell::Configuration;
use crate::media::MediumSpec;
use crate::vec3::{self, Vec3};
use crate::{math, Error, Event, Result};

const TAU: f64 = 2.0 * core::f64::consts::PI;

/// Deterministic RNG for scenario construction; fixed algorithm so that a
/// seed pins the generated fields bit-for-bit.
pub struct SeededRng(ChaCha8Rng);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let u = (self.0.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0);
        lo + (hi - lo) * u
    }

    /// A frequency from the lattice `step * {-max..max}`, giving rational
    /// frequency ratios between any two draws.
    pub fn lattice(&mut self, step: f64, max: i64) -> f64 {
        let span = (2 * max + 1) as u64;
        let n = (self.0.next_u64() % span) as i64 - max;
        step * n as f64
    }
}

/// One damped harmonic `amp * exp(decay.x) * cos(freq.x + phase)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrigTerm {
    pub amp: f64,
    pub decay: [f64; 4],
    pub freq: [f64; 4],
    pub phase: f64,
}

impl TrigTerm {
    fn eval(&self, x: &Event) -> f64 {
        let (s, p) = self.exponents(x);
        self.amp * math::exp(s) * math::cos(p)
    }

    fn exponents(&self, x: &Event) -> (f64, f64) {
        let mut s = 0.0;
        let mut p = self.phase;
        for a in 0..4 {
            s += self.decay[a] * x[a];
            p += self.freq[a] * x[a];
        }
        (s, p)
    }

    fn d(&self, x: &Event, a: usize) -> f64 {
        let (s, p) = self.exponents(x);
        self.amp * math::exp(s) * (self.decay[a] * math::cos(p) - self.freq[a] * math::sin(p))
    }

    fn dd(&self, x: &Event, a: usize, b: usize) -> f64 {
        let (s, p) = self.exponents(x);
        let cos_w = self.decay[a] * self.decay[b] - self.freq[a] * self.freq[b];
        let sin_w = self.decay[a] * self.freq[b] + self.decay[b] * self.freq[a];
        self.amp * math::exp(s) * (cos_w * math::cos(p) - sin_w * math::sin(p))
    }
}

/// A constant plus a finite sum of damped harmonics.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TrigScalar {
    pub bias: f64,
    pub terms: Vec<TrigTerm>,
}

impl TrigScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(v: f64) -> Self {
        Self {
            bias: v,
            terms: Vec::new(),
        }
    }

    pub fn harmonic(amp: f64, freq: [f64; 4], phase: f64) -> Self {
        Self {
            bias: 0.0,
            terms: alloc::vec![TrigTerm {
                amp,
                decay: [0.0; 4],
                freq,
                phase,
            }],
        }
    }

    pub fn damped_harmonic(amp: f64, decay: [f64; 4], freq: [f64; 4], phase: f64) -> Self {
        Self {
            bias: 0.0,
            terms: alloc::vec![TrigTerm {
                amp,
                decay,
                freq,
                phase,
            }],
        }
    }

    /// Random trigonometric polynomial with `degree` harmonics, amplitudes
    /// in `[-scale, scale]`, lattice frequencies.
    pub fn random(rng: &mut SeededRng, degree: usize, scale: f64) -> Self {
        let mut terms = Vec::with_capacity(degree);
        for _ in 0..degree {
            let amp = rng.uniform(-scale, scale);
            let freq = core::array::from_fn(|_| rng.lattice(0.25, 8));
            let phase = rng.uniform(0.0, TAU);
            terms.push(TrigTerm {
                amp,
                decay: [0.0; 4],
                freq,
                phase,
            });
        }
        Self { bias: 0.0, terms }
    }

    pub fn biased(mut self, v: f64) -> Self {
        self.bias += v;
        self
    }

    pub fn scaled(mut self, s: f64) -> Self {
        self.bias *= s;
        for t in &mut self.terms {
            t.amp *= s;
        }
        self
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.bias += other.bias;
        out.terms.extend_from_slice(&other.terms);
        out
    }

    /// Product of two trig scalars, expanded back into the family with the
    /// product-to-sum rule
    /// `cos u cos v = (cos(u+v) + cos(u-v)) / 2`.
    pub fn times(&self, other: &Self) -> Self {
        let mut out = Self::constant(self.bias * other.bias);
        for t in &self.terms {
            let mut u = *t;
            u.amp *= other.bias;
            out.terms.push(u);
        }
        for t in &other.terms {
            let mut u = *t;
            u.amp *= self.bias;
            out.terms.push(u);
        }
        for t in &self.terms {
            for u in &other.terms {
                let amp = 0.5 * t.amp * u.amp;
                let decay = core::array::from_fn(|a| t.decay[a] + u.decay[a]);
                out.terms.push(TrigTerm {
                    amp,
                    decay,
                    freq: core::array::from_fn(|a| t.freq[a] + u.freq[a]),
                    phase: t.phase + u.phase,
                });
                out.terms.push(TrigTerm {
                    amp,
                    decay,
                    freq: core::array::from_fn(|a| t.freq[a] - u.freq[a]),
                    phase: t.phase - u.phase,
                });
            }
        }
        out
    }

    /// Exact derivative as a new field of the same family.
    pub fn derivative(&self, a: usize) -> Self {
        let mut terms = Vec::with_capacity(2 * self.terms.len());
        for t in &self.terms {
            if t.decay[a] != 0.0 {
                terms.push(TrigTerm {
                    amp: t.amp * t.decay[a],
                    ..*t
                });
            }
            if t.freq[a] != 0.0 {
                // -sin(p) = cos(p + pi/2)
                terms.push(TrigTerm {
                    amp: t.amp * t.freq[a],
                    decay: t.decay,
                    freq: t.freq,
                    phase: t.phase + core::f64::consts::FRAC_PI_2,
                });
            }
        }
        Self { bias: 0.0, terms }
    }

    /// Composition with the linear substitution `x -> m x` (the coefficient
    /// row-vectors pick up `m` on the right).
    pub fn substituted(&self, m: &[[f64; 4]; 4]) -> Self {
        let mut out = self.clone();
        for t in &mut out.terms {
            let mut freq = [0.0; 4];
            let mut decay = [0.0; 4];
            for tau in 0..4 {
                for nu in 0..4 {
                    freq[tau] += t.freq[nu] * m[nu][tau];
                    decay[tau] += t.decay[nu] * m[nu][tau];
                }
            }
            t.freq = freq;
            t.decay = decay;
        }
        out
    }

    /// Linear combination `sum_i w_i f_i`.
    pub fn lincomb(parts: &[(f64, &TrigScalar)]) -> Self {
        let mut out = Self::zero();
        for (w, f) in parts {
            if *w != 0.0 {
                out = out.plus(&(*f).clone().scaled(*w));
            }
        }
        out
    }

    /// Largest amplitude bound `|bias| + sum |amp|` (at zero decay this
    /// bounds the field magnitude).
    pub fn amplitude_bound(&self) -> f64 {
        math::abs(self.bias) + self.terms.iter().map(|t| math::abs(t.amp)).sum::<f64>()
    }

    /// Largest frequency/decay component over all terms.
    pub fn frequency_bound(&self) -> f64 {
        let mut worst = 0.0f64;
        for t in &self.terms {
            for a in 0..4 {
                worst = math::max(worst, math::abs(t.freq[a]));
                worst = math::max(worst, math::abs(t.decay[a]));
            }
        }
        worst
    }
}

impl ScalarField for TrigScalar {
    fn eval(&self, x: &Event) -> f64 {
        self.bias + self.terms.iter().map(|t| t.eval(x)).sum::<f64>()
    }

    fn exact_d(&self, x: &Event, a: usize) -> Option<f64> {
        Some(self.terms.iter().map(|t| t.d(x, a)).sum())
    }

    fn exact_dd(&self, x: &Event, a: usize, b: usize) -> Option<f64> {
        Some(self.terms.iter().map(|t| t.dd(x, a, b)).sum())
    }
}

/// Affine field `bias + coeff . x`; uniform-gradient test fields.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LinearField {
    pub bias: f64,
    pub coeff: [f64; 4],
}

impl LinearField {
    pub fn new(bias: f64, coeff: [f64; 4]) -> Self {
        Self { bias, coeff }
    }

    /// The coordinate `x^a` itself.
    pub fn axis(a: usize) -> Self {
        let mut coeff = [0.0; 4];
        coeff[a] = 1.0;
        Self { bias: 0.0, coeff }
    }

    pub fn scaled(mut self, s: f64) -> Self {
        self.bias *= s;
        for c in &mut self.coeff {
            *c *= s;
        }
        self
    }
}

impl ScalarField for LinearField {
    fn eval(&self, x: &Event) -> f64 {
        self.bias + (0..4).map(|a| self.coeff[a] * x[a]).sum::<f64>()
    }
    fn exact_d(&self, _: &Event, a: usize) -> Option<f64> {
        Some(self.coeff[a])
    }
    fn exact_dd(&self, _: &Event, _: usize, _: usize) -> Option<f64> {
        Some(0.0)
    }
}

/// One Cartesian component of the static Coulomb field `q r / |r|^3`.
#[derive(Debug, Clone, Copy)]
pub struct CoulombField {
    pub q: f64,
    pub comp: usize,
}

impl CoulombField {
    fn r2(x: &Event) -> f64 {
        x[1] * x[1] + x[2] * x[2] + x[3] * x[3]
    }
}

impl ScalarField for CoulombField {
    fn eval(&self, x: &Event) -> f64 {
        let r2 = Self::r2(x);
        self.q * x[self.comp + 1] / (r2 * math::sqrt(r2))
    }

    fn exact_d(&self, x: &Event, a: usize) -> Option<f64> {
        if a == 0 {
            return Some(0.0);
        }
        let j = a - 1;
        let r2 = Self::r2(x);
        let r5 = r2 * r2 * math::sqrt(r2);
        let xc = x[self.comp + 1];
        let xj = x[a];
        Some(self.q * (crate::tensor::delta(self.comp, j) * r2 - 3.0 * xc * xj) / r5)
    }

    fn exact_dd(&self, x: &Event, a: usize, b: usize) -> Option<f64> {
        if a == 0 || b == 0 {
            return Some(0.0);
        }
        let (j, k) = (a - 1, b - 1);
        let r2 = Self::r2(x);
        let r = math::sqrt(r2);
        let r5 = r2 * r2 * r;
        let r7 = r5 * r2;
        let d = crate::tensor::delta;
        let (xc, xj, xk) = (x[self.comp + 1], x[a], x[b]);
        Some(
            self.q
                * (-3.0 * (d(self.comp, j) * xk + d(self.comp, k) * xj + d(j, k) * xc) / r5
                    + 15.0 * xc * xj * xk / r7),
        )
    }
}

/// A fully trigonometric configuration: closed under Lorentz boosts.
#[derive(Debug, Clone, Default)]
pub struct TrigConfig {
    pub e: [TrigScalar; 3],
    pub d: [TrigScalar; 3],
    pub h: [TrigScalar; 3],
    pub b: [TrigScalar; 3],
    pub rho: TrigScalar,
    pub j: [TrigScalar; 3],
    pub c: f64,
}

impl TrigConfig {
    pub fn source_free(
        e: [TrigScalar; 3],
        d: [TrigScalar; 3],
        h: [TrigScalar; 3],
        b: [TrigScalar; 3],
        c: f64,
    ) -> Self {
        Self {
            e,
            d,
            h,
            b,
            rho: TrigScalar::zero(),
            j: core::array::from_fn(|_| TrigScalar::zero()),
            c,
        }
    }

    /// The same physical configuration described in a frame moving with
    /// velocity `boost.velocity()` relative to this one: field components
    /// are remixed and the coordinate dependence substituted with the
    /// inverse boost.
    pub fn boosted(&self, boost: &BoostSpec) -> Result<TrigConfig> {
        if boost.beta() == 0.0 {
            return Ok(self.clone());
        }
        let v = boost.velocity();
        let c = self.c;
        let gamma = boost.gamma();
        let gm1_v2 = (gamma - 1.0) / vec3::dot(v, v);

        // E' = gamma (E + (v x B)/c) - (gamma-1)(v.E/v^2) v, and cyclic
        // companions obtained from F' = gamma(F - (i/c) v x G) - ...
        let mix = |a: &[TrigScalar; 3], other: &[TrigScalar; 3], sign: f64| -> [TrigScalar; 3] {
            core::array::from_fn(|k| {
                let mut parts: Vec<(f64, &TrigScalar)> = Vec::new();
                parts.push((gamma, &a[k]));
                // (v x other)_k = e_{kqr} v_q other_r
                for q in 0..3 {
                    for r in 0..3 {
                        let e = crate::tensor::levi3(k, q, r) as f64;
                        if e != 0.0 {
                            parts.push((sign * gamma * e * v[q] / c, &other[r]));
                        }
                    }
                }
                // -(gamma - 1)(v . a) v_k / v^2
                for q in 0..3 {
                    parts.push((-gm1_v2 * v[q] * v[k], &a[q]));
                }
                TrigScalar::lincomb(&parts)
            })
        };

        let e = mix(&self.e, &self.b, 1.0);
        let h = mix(&self.h, &self.d, -1.0);
        let d = mix(&self.d, &self.h, 1.0);
        let b = mix(&self.b, &self.e, -1.0);

        // Four-current transforms as a vector: j'^mu = L^mu_nu j^nu.
        let l = boost_matrix(boost);
        let j4_old: [&TrigScalar; 4] = [&self.rho, &self.j[0], &self.j[1], &self.j[2]];
        let mut j4_new: [TrigScalar; 4] = core::array::from_fn(|_| TrigScalar::zero());
        for (mu, slot) in j4_new.iter_mut().enumerate() {
            let mut parts: Vec<(f64, &TrigScalar)> = Vec::new();
            for nu in 0..4 {
                // rho enters as j^0 = c rho.
                let w = if nu == 0 {
                    l.m[mu][nu] * c
                } else {
                    l.m[mu][nu]
                };
                parts.push((w, j4_old[nu]));
            }
            *slot = TrigScalar::lincomb(&parts);
        }
        let rho = j4_new[0].clone().scaled(1.0 / c);

        // Substitute x_old = L(-v) x_new into every component.
        let inv = boost_matrix(&boost.reversed());
        let subst3 = |f: [TrigScalar; 3]| -> [TrigScalar; 3] { f.map(|s| s.substituted(&inv.m)) };
        Ok(TrigConfig {
            e: subst3(e),
            d: subst3(d),
            h: subst3(h),
            b: subst3(b),
            rho: rho.substituted(&inv.m),
            j: [
                j4_new[1].substituted(&inv.m),
                j4_new[2].substituted(&inv.m),
                j4_new[3].substituted(&inv.m),
            ],
            c,
        })
    }

    pub fn field_amplitude(&self) -> f64 {
        let mut worst = 0.0f64;
        for f in [&self.e, &self.d, &self.h, &self.b] {
            for k in 0..3 {
                worst = math::max(worst, f[k].amplitude_bound());
            }
        }
        worst
    }

    pub fn frequency_bound(&self) -> f64 {
        let mut worst = 0.0f64;
        for f in [&self.e, &self.d, &self.h, &self.b] {
            for k in 0..3 {
                worst = math::max(worst, f[k].frequency_bound());
            }
        }
        worst
    }

    pub fn into_configuration(self) -> Configuration {
        let vf = |a: [TrigScalar; 3]| -> VectorField {
            let [x, y, z] = a;
            VectorField::new(Box::new(x), Box::new(y), Box::new(z))
        };
        Configuration {
            e: vf(self.e),
            d: vf(self.d),
            h: vf(self.h),
            b: vf(self.b),
            rho: Box::new(self.rho),
            j: vf(self.j),
            singular: None,
            c: self.c,
        }
    }
}

/// Smooth medium response profiles for inhomogeneous-medium scenarios.
#[derive(Debug, Clone)]
pub struct MediumProfiles {
    pub epsilon: TrigScalar,
    pub mu: TrigScalar,
}

/// A named analytic configuration with its normalization scales, sampling
/// box, step recommendation and solution flag.
pub struct Scenario {
    pub name: String,
    pub config: Configuration,
    pub medium: MediumSpec,
    pub is_maxwell_solution: bool,
    /// Field magnitude scale for residual normalization.
    pub field_scale: f64,
    /// Frequency scale (1/length); residuals of first-derivative equations
    /// scale as `field_scale * freq_scale`.
    pub freq_scale: f64,
    pub box_origin: Event,
    pub box_lengths: [f64; 4],
    /// Recommended finite-difference step.
    pub h: f64,
    pub profiles: Option<MediumProfiles>,
}

impl Scenario {
    pub fn grid(&self, n: usize) -> Result<Grid4> {
        Grid4::uniform(self.box_origin, self.box_lengths, n)
    }
}

fn orthonormal_wave_frame(k: Vec3, polarization: Vec3) -> Result<(f64, Vec3, Vec3)> {
    let kn = vec3::norm(k);
    if kn == 0.0 {
        return Err(Error::InvalidInput("wave vector must be nonzero"));
    }
    let pn = vec3::norm(polarization);
    if pn == 0.0 {
        return Err(Error::InvalidInput("polarization must be nonzero"));
    }
    if math::abs(vec3::dot(k, polarization)) > 1e-12 * kn * pn {
        return Err(Error::InvalidInput(
            "polarization must be orthogonal to the wave vector",
        ));
    }
    let e_hat = vec3::scale(1.0 / pn, polarization);
    let h_hat = vec3::cross(vec3::scale(1.0 / kn, k), e_hat);
    Ok((kn, e_hat, h_hat))
}

fn wave_box(freq_scale: f64) -> ([f64; 4], f64) {
    let wavelength = TAU / freq_scale;
    ([wavelength; 4], 1e-2 * wavelength)
}

/// Vacuum plane wave `E = a cos(k.r - w t) e_hat`, `H = k_hat x E`,
/// `D = E`, `B = H`, `w = c |k|`.
pub fn vacuum_plane_wave(k: Vec3, polarization: Vec3, amplitude: f64, c: f64) -> Result<Scenario> {
    let m = MediumSpec::vacuum(c);
    rest_medium_plane_wave(&m, k, polarization, amplitude).map(|mut s| {
        s.name = String::from("vacuum_plane_wave");
        s
    })
}

/// Plane wave in an isotropic medium at rest: dispersion
/// `w = c |k| / sqrt(eps mu)`, `D = eps E`, `B = mu H`, magnetic amplitude
/// `sqrt(eps/mu)` times the electric one.
pub fn rest_medium_plane_wave(
    m: &MediumSpec,
    k: Vec3,
    polarization: Vec3,
    amplitude: f64,
) -> Result<Scenario> {
    if m.beta() != 0.0 {
        return Err(Error::InvalidInput("medium must be at rest"));
    }
    let (kn, e_hat, h_hat) = orthonormal_wave_frame(k, polarization)?;
    let c = m.c;
    let n_index = math::sqrt(m.epsilon * m.mu);
    let omega_over_c = kn / n_index;
    let freq4 = [-omega_over_c, k[0], k[1], k[2]];
    let h_amp = amplitude * math::sqrt(m.epsilon / m.mu);

    let comp = |dir: Vec3, amp: f64| -> [TrigScalar; 3] {
        core::array::from_fn(|i| TrigScalar::harmonic(amp * dir[i], freq4, 0.0))
    };
    let e = comp(e_hat, amplitude);
    let d = comp(e_hat, amplitude * m.epsilon);
    let h = comp(h_hat, h_amp);
    let b = comp(h_hat, h_amp * m.mu);
    let cfg = TrigConfig::source_free(e, d, h, b, c);

    let freq_scale = math::max(kn, omega_over_c);
    let (box_lengths, h_step) = wave_box(freq_scale);
    Ok(Scenario {
        name: String::from("rest_medium_plane_wave"),
        config: cfg.into_configuration(),
        medium: *m,
        is_maxwell_solution: true,
        field_scale: math::max(amplitude, h_amp * math::max(1.0, m.mu)) * math::max(1.0, m.epsilon),
        freq_scale,
        box_origin: [0.0; 4],
        box_lengths,
        h: h_step,
        profiles: None,
    })
}

/// The rest-medium plane wave described in the frame where the medium moves
/// with velocity `w`: fields, sources and coordinates are boosted; the
/// constitutive relation for the moving medium holds pointwise.
pub fn boosted_medium_plane_wave(
    m_rest: &MediumSpec,
    w: Vec3,
    k: Vec3,
    polarization: Vec3,
    amplitude: f64,
) -> Result<Scenario> {
    let rest = rest_medium_plane_wave(m_rest, k, polarization, amplitude)?;
    // The lab frame moves at -w relative to the medium rest frame.
    let lab_boost = BoostSpec::new(vec3::scale(-1.0, w), m_rest.c)?;

    // Rebuild the rest trig config (the Scenario only kept the boxed form).
    let (kn, e_hat, h_hat) = orthonormal_wave_frame(k, polarization)?;
    let n_index = math::sqrt(m_rest.epsilon * m_rest.mu);
    let freq4 = [-kn / n_index, k[0], k[1], k[2]];
    let h_amp = amplitude * math::sqrt(m_rest.epsilon / m_rest.mu);
    let comp = |dir: Vec3, amp: f64| -> [TrigScalar; 3] {
        core::array::from_fn(|i| TrigScalar::harmonic(amp * dir[i], freq4, 0.0))
    };
    let cfg_rest = TrigConfig::source_free(
        comp(e_hat, amplitude),
        comp(e_hat, amplitude * m_rest.epsilon),
        comp(h_hat, h_amp),
        comp(h_hat, h_amp * m_rest.mu),
        m_rest.c,
    );
    let cfg_lab = cfg_rest.boosted(&lab_boost)?;

    let gamma = lab_boost.gamma();
    let freq_scale = rest.freq_scale * gamma * (1.0 + lab_boost.beta());
    let (box_lengths, h_step) = wave_box(freq_scale);
    Ok(Scenario {
        name: String::from("boosted_medium_plane_wave"),
        config: cfg_lab.into_configuration(),
        medium: m_rest.with_velocity(w)?,
        is_maxwell_solution: true,
        field_scale: rest.field_scale * gamma * (1.0 + lab_boost.beta()),
        freq_scale,
        box_origin: [0.0; 4],
        box_lengths,
        h: h_step,
        profiles: None,
    })
}

/// Static Coulomb field `E = D = q r / |r|^3`, `H = B = 0`, sources zero off
/// the origin; the ball `|r| < exclusion_radius` is the singular set.
pub fn coulomb_static(q: f64, exclusion_radius: f64, c: f64) -> Result<Scenario> {
    if !(exclusion_radius > 0.0) {
        return Err(Error::InvalidInput("exclusion radius must be positive"));
    }
    let r0 = exclusion_radius;
    let coulomb_vec = || -> VectorField {
        VectorField::new(
            Box::new(CoulombField { q, comp: 0 }),
            Box::new(CoulombField { q, comp: 1 }),
            Box::new(CoulombField { q, comp: 2 }),
        )
    };
    let config = Configuration {
        e: coulomb_vec(),
        d: coulomb_vec(),
        h: VectorField::zero(),
        b: VectorField::zero(),
        rho: Box::new(0.0),
        j: VectorField::zero(),
        singular: Some(Box::new(move |x: &Event| {
            x[1] * x[1] + x[2] * x[2] + x[3] * x[3] < r0 * r0
        })),
        c,
    };
    // Sample a unit box offset away from the singular ball.
    let off = exclusion_radius + 0.3;
    Ok(Scenario {
        name: String::from("coulomb_static"),
        config,
        medium: MediumSpec::vacuum(c),
        is_maxwell_solution: true,
        field_scale: math::abs(q) / (off * off),
        freq_scale: 1.0 / off,
        box_origin: [0.0, off, off * 0.8, off * 0.6],
        box_lengths: [1.0; 4],
        h: 0.02 * off,
        profiles: None,
    })
}

/// Independent random trigonometric fields; not a solution. The identity
/// workhorse: every pointwise identity holds on it while every equation of
/// motion fails.
pub fn trig_random(seed: u64, degree: usize, scale: f64, c: f64) -> Scenario {
    let mut rng = SeededRng::new(seed);
    let mut comp = || -> [TrigScalar; 3] {
        core::array::from_fn(|_| TrigScalar::random(&mut rng, degree, scale))
    };
    let cfg = TrigConfig::source_free(comp(), comp(), comp(), comp(), c);
    let field_scale = cfg.field_amplitude();
    let freq_scale = math::max(cfg.frequency_bound(), 0.25);
    Scenario {
        name: String::from("trig_random"),
        config: cfg.into_configuration(),
        medium: MediumSpec::vacuum(c),
        is_maxwell_solution: false,
        field_scale,
        freq_scale,
        box_origin: [0.0; 4],
        box_lengths: [TAU; 4],
        h: 1e-2 * TAU / freq_scale,
        profiles: None,
    }
}

/// Quasi-static fields in an isotropic nonhomogeneous medium:
/// `D = eps(r, t) E`, `B = mu(r, t) H` with smooth random `E`, `H`.
/// Exercises the ponderomotive closed form; not a Maxwell solution.
pub fn inhomogeneous_medium(
    eps_profile: &TrigScalar,
    mu_profile: &TrigScalar,
    seed: u64,
    c: f64,
) -> Result<Scenario> {
    // The profiles must stay positive over the sampling box.
    let probe = Grid4::uniform([0.0; 4], [TAU; 4], 5)?;
    for x in probe.events() {
        if eps_profile.eval(&x) <= 0.0 || mu_profile.eval(&x) <= 0.0 {
            return Err(Error::InvalidInput(
                "medium profiles must be positive over the sampling box",
            ));
        }
    }
    let mut rng = SeededRng::new(seed);
    let e: [TrigScalar; 3] = core::array::from_fn(|_| TrigScalar::random(&mut rng, 2, 1.0));
    let h: [TrigScalar; 3] = core::array::from_fn(|_| TrigScalar::random(&mut rng, 2, 1.0));
    let d: [TrigScalar; 3] = core::array::from_fn(|k| eps_profile.times(&e[k]));
    let b: [TrigScalar; 3] = core::array::from_fn(|k| mu_profile.times(&h[k]));
    let cfg = TrigConfig::source_free(e, d, h, b, c);
    let field_scale = cfg.field_amplitude();
    let freq_scale = math::max(cfg.frequency_bound(), 0.25);
    Ok(Scenario {
        name: String::from("inhomogeneous_medium"),
        config: cfg.into_configuration(),
        medium: MediumSpec::vacuum(c),
        is_maxwell_solution: false,
        field_scale,
        freq_scale,
        box_origin: [0.0; 4],
        box_lengths: [TAU; 4],
        h: 1e-2 * TAU / freq_scale,
        profiles: Some(MediumProfiles {
            epsilon: eps_profile.clone(),
            mu: mu_profile.clone(),
        }),
    })
}

/// Exponentially damped standing wave in a conducting medium at rest
/// (`j = sigma E`): `E = e_hat f(t) cos(k.r)`, `H = h_hat g(t) sin(k.r)`
/// with `f'' + (4 pi sigma / eps) f' + (c^2 k^2 / (eps mu)) f = 0`.
pub fn conducting_standing_wave(
    m: &MediumSpec,
    k: Vec3,
    polarization: Vec3,
    amplitude: f64,
) -> Result<Scenario> {
    if m.beta() != 0.0 {
        return Err(Error::InvalidInput("medium must be at rest"));
    }
    let (kn, e_hat, h_hat) = orthonormal_wave_frame(k, polarization)?;
    let c = m.c;
    let lambda = TAU * m.sigma / m.epsilon; // 2 pi sigma / eps
    let omega2 = c * c * kn * kn / (m.epsilon * m.mu) - lambda * lambda;
    if !(omega2 > 0.0) {
        return Err(Error::InvalidInput(
            "overdamped medium: increase |k| or reduce sigma",
        ));
    }
    let omega = math::sqrt(omega2);

    // f(t) = a e^{-lambda t} cos(Omega t); decay/freq are per x^0 = ct.
    let decay = [-lambda / c, 0.0, 0.0, 0.0];
    let f_t = TrigScalar::damped_harmonic(amplitude, decay, [omega / c, 0.0, 0.0, 0.0], 0.0);
    // g(t) = -(e^{-lambda t}/(c k)) [2 pi sigma a cos(Omega t) - eps Omega a sin(Omega t)]
    let g_t = TrigScalar::damped_harmonic(
        -TAU * m.sigma * amplitude / (c * kn),
        decay,
        [omega / c, 0.0, 0.0, 0.0],
        0.0,
    )
    .plus(&TrigScalar::damped_harmonic(
        // +sin(p) = cos(p - pi/2)
        m.epsilon * omega * amplitude / (c * kn),
        decay,
        [omega / c, 0.0, 0.0, 0.0],
        -core::f64::consts::FRAC_PI_2,
    ));

    let cos_kr = TrigScalar::harmonic(1.0, [0.0, k[0], k[1], k[2]], 0.0);
    let sin_kr = TrigScalar::harmonic(1.0, [0.0, k[0], k[1], k[2]], -core::f64::consts::FRAC_PI_2);

    let e: [TrigScalar; 3] = core::array::from_fn(|i| f_t.times(&cos_kr).scaled(e_hat[i]));
    let h: [TrigScalar; 3] = core::array::from_fn(|i| g_t.times(&sin_kr).scaled(h_hat[i]));
    let d: [TrigScalar; 3] = core::array::from_fn(|i| e[i].clone().scaled(m.epsilon));
    let b: [TrigScalar; 3] = core::array::from_fn(|i| h[i].clone().scaled(m.mu));
    let j: [TrigScalar; 3] = core::array::from_fn(|i| e[i].clone().scaled(m.sigma));

    let cfg = TrigConfig {
        e,
        d,
        h,
        b,
        rho: TrigScalar::zero(),
        j,
        c,
    };
    let field_scale = cfg.field_amplitude();
    let freq_scale = math::max(cfg.frequency_bound(), kn);
    Ok(Scenario {
        name: String::from("conducting_standing_wave"),
        config: cfg.into_configuration(),
        medium: *m,
        is_maxwell_solution: true,
        field_scale,
        freq_scale,
        box_origin: [0.0; 4],
        box_lengths: [TAU / freq_scale; 4],
        h: 1e-2 * TAU / freq_scale,
        profiles: None,
    })
}

/// Random field point with components in `[-scale, scale]`.
pub fn random_field_point(rng: &mut SeededRng, scale: f64) -> FieldPoint {
    let mut v = || -> Vec3 { core::array::from_fn(|_| rng.uniform(-scale, scale)) };
    FieldPoint {
        e: v(),
        d: v(),
        h: v(),
        b: v(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Channel;

    #[test]
    fn seeded_rng_is_reproducible() {
        let mut a = SeededRng::new(42);
        let mut b = SeededRng::new(42);
        for _ in 0..32 {
            assert_eq!(
                a.uniform(-1.0, 1.0).to_bits(),
                b.uniform(-1.0, 1.0).to_bits()
            );
            assert_eq!(a.lattice(0.25, 8).to_bits(), b.lattice(0.25, 8).to_bits());
        }
    }

    #[test]
    fn trig_product_matches_pointwise() {
        let mut rng = SeededRng::new(1);
        let f = TrigScalar::random(&mut rng, 3, 1.0).biased(0.5);
        let g = TrigScalar::random(&mut rng, 2, 2.0).biased(-1.0);
        let prod = f.times(&g);
        for i in 0..20 {
            let x = [
                0.1 * i as f64,
                0.07 * i as f64,
                -0.05 * i as f64,
                0.13 * i as f64,
            ];
            let expect = f.eval(&x) * g.eval(&x);
            assert!((prod.eval(&x) - expect).abs() <= 1e-12 * (1.0 + expect.abs()));
            // Derivative of the product agrees with the product rule.
            for a in 0..4 {
                let lhs = prod.exact_d(&x, a).unwrap();
                let rhs =
                    f.exact_d(&x, a).unwrap() * g.eval(&x) + f.eval(&x) * g.exact_d(&x, a).unwrap();
                assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()));
            }
        }
    }

    #[test]
    fn trig_derivative_field_matches_exact_channel() {
        let mut rng = SeededRng::new(2);
        let f = TrigScalar::random(&mut rng, 4, 1.5);
        let x = [0.3, -0.2, 0.8, 0.1];
        for a in 0..4 {
            let d_field = f.derivative(a);
            assert!((d_field.eval(&x) - f.exact_d(&x, a).unwrap()).abs() <= 1e-13);
        }
    }

    #[test]
    fn exact_matches_fd_for_damped_terms() {
        let f =
            TrigScalar::damped_harmonic(1.3, [-0.2, 0.1, 0.0, 0.05], [0.7, -0.3, 0.4, 0.2], 0.4);
        let x = [0.2, 0.5, -0.1, 0.3];
        for a in 0..4 {
            let exact = f.exact_d(&x, a).unwrap();
            let fd = Channel::Fd4 { h: 1e-3 }.d(&f, &x, a).unwrap();
            assert!((exact - fd).abs() <= 1e-10, "axis {a}");
            for b in 0..4 {
                let exact2 = f.exact_dd(&x, a, b).unwrap();
                let fd2 = Channel::Fd4 { h: 1e-3 }.dd(&f, &x, a, b).unwrap();
                assert!(
                    (exact2 - fd2).abs() <= 1e-6,
                    "axes {a}{b}: {exact2} vs {fd2}"
                );
            }
        }
    }

    #[test]
    fn substitution_composes_coordinates() {
        let mut rng = SeededRng::new(3);
        let f = TrigScalar::random(&mut rng, 3, 1.0);
        let m = [
            [1.0, 0.2, 0.0, 0.0],
            [0.2, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.3],
            [0.0, 0.0, -0.3, 1.0],
        ];
        let g = f.substituted(&m);
        let x = [0.4, -0.3, 0.2, 0.6];
        let mut mx = [0.0; 4];
        for mu in 0..4 {
            for nu in 0..4 {
                mx[mu] += m[mu][nu] * x[nu];
            }
        }
        assert!((g.eval(&x) - f.eval(&mx)).abs() <= 1e-13);
    }

    #[test]
    fn boosted_config_matches_pointwise_transformation() {
        use crate::fields::ComplexPair;
        use crate::lorentz::transform_fields_3d;

        let mut rng = SeededRng::new(4);
        let mk = |rng: &mut SeededRng| -> [TrigScalar; 3] {
            core::array::from_fn(|_| TrigScalar::random(rng, 2, 1.0))
        };
        let cfg =
            TrigConfig::source_free(mk(&mut rng), mk(&mut rng), mk(&mut rng), mk(&mut rng), 1.0);
        let boost = BoostSpec::new([0.3, -0.2, 0.4], 1.0).unwrap();
        let boosted = cfg.boosted(&boost).unwrap();

        let x_new = [0.7, 0.2, -0.5, 0.3];
        // x_old = L(-v) x_new
        let inv = boost_matrix(&boost.reversed());
        let x_old = inv.apply_event(&x_new);

        let old_point = FieldPoint {
            e: core::array::from_fn(|k| cfg.e[k].eval(&x_old)),
            d: core::array::from_fn(|k| cfg.d[k].eval(&x_old)),
            h: core::array::from_fn(|k| cfg.h[k].eval(&x_old)),
            b: core::array::from_fn(|k| cfg.b[k].eval(&x_old)),
        };
        let expect = transform_fields_3d(&ComplexPair::from_fields(&old_point), &boost);
        let got = FieldPoint {
            e: core::array::from_fn(|k| boosted.e[k].eval(&x_new)),
            d: core::array::from_fn(|k| boosted.d[k].eval(&x_new)),
            h: core::array::from_fn(|k| boosted.h[k].eval(&x_new)),
            b: core::array::from_fn(|k| boosted.b[k].eval(&x_new)),
        };
        let got_pair = ComplexPair::from_fields(&got);
        for k in 0..3 {
            assert!((got_pair.f[k] - expect.f[k]).norm() <= 1e-12);
            assert!((got_pair.g[k] - expect.g[k]).norm() <= 1e-12);
        }
    }

    #[test]
    fn plane_wave_validation() {
        assert!(vacuum_plane_wave([0.0; 3], [1.0, 0.0, 0.0], 1.0, 1.0).is_err());
        assert!(vacuum_plane_wave([1.0, 0.0, 0.0], [1.0, 0.1, 0.0], 1.0, 1.0).is_err());
        let sc = vacuum_plane_wave([1.0, 0.0, 0.0], [0.0, 1.0, 0.0], 2.0, 1.0).unwrap();
        assert!(sc.is_maxwell_solution);
        assert_eq!(sc.name, "vacuum_plane_wave");
    }

    #[test]
    fn rest_wave_reduces_to_vacuum_at_unit_parameters() {
        let k = [0.5, 0.25, -0.3];
        let pol = [0.3, -0.6, 0.0];
        // The generic constructor with eps = mu = 1 gives the vacuum fields.
        let pol_orth = {
            // orthogonalize pol against k
            let kp = vec3::dot(k, pol) / vec3::dot(k, k);
            vec3::sub(pol, vec3::scale(kp, k))
        };
        let vac = vacuum_plane_wave(k, pol_orth, 1.4, 1.0).unwrap();
        let x = [0.35, 0.2, -0.6, 0.4];
        let f = vac.config.fields(&x);
        assert!(vec3::max_abs(vec3::sub(f.d, f.e)) <= 1e-15);
        assert!(vec3::max_abs(vec3::sub(f.b, f.h)) <= 1e-15);
        // E ⊥ H pointwise and |E| = |H|.
        assert!(math::abs(vec3::dot(f.e, f.h)) <= 1e-14);
        assert!(math::abs(vec3::norm(f.e) - vec3::norm(f.h)) <= 1e-13);
    }

    #[test]
    fn trig_random_is_reproducible_and_not_a_solution() {
        let a = trig_random(9, 2, 1.0, 1.0);
        let b = trig_random(9, 2, 1.0, 1.0);
        let x = [0.3, 0.6, -0.2, 0.9];
        assert_eq!(
            a.config.fields(&x).e[0].to_bits(),
            b.config.fields(&x).e[0].to_bits()
        );
        assert!(!a.is_maxwell_solution);
    }

    #[test]
    fn inhomogeneous_profiles_must_be_positive() {
        let eps = TrigScalar::harmonic(0.1, [0.0, 1.0, 0.0, 0.0], 0.0).biased(2.0);
        let mu = TrigScalar::constant(1.0);
        assert!(inhomogeneous_medium(&eps, &mu, 5, 1.0).is_ok());
        let bad = TrigScalar::harmonic(2.0, [0.0, 1.0, 0.0, 0.0], 0.0).biased(0.5);
        assert!(inhomogeneous_medium(&bad, &mu, 5, 1.0).is_err());
    }

    #[test]
    fn conducting_wave_satisfies_faraday_and_ampere() {
        use crate::maxwell::residual_complex3d;
        let m = MediumSpec::at_rest(2.0, 1.5, 0.02, 1.0).unwrap();
        let sc = conducting_standing_wave(&m, [0.8, 0.0, 0.0], [0.0, 1.0, 0.0], 1.0).unwrap();
        for x in sc.grid(3).unwrap().events() {
            let (curl_res, div_res) = residual_complex3d(&sc.config, &x, Channel::Exact).unwrap();
            assert!(
                vec3::cmax_abs(&curl_res) <= 1e-11 * sc.field_scale * sc.freq_scale,
                "{curl_res:?}"
            );
            assert!(div_res.norm() <= 1e-11 * sc.field_scale * sc.freq_scale);
        }
    }
}
