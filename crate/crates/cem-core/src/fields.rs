//! Complex field pair `F = E + iH`, `G = D + iB` and the dual antisymmetric
//! four-tensors built from it.
//!
//! `Q^{mu nu}` carries `(G; iF)` and `P_{mu nu}` carries `(F; iG)` in block
//! form; their real and imaginary parts are the four real field tensors
//! `R^{mu nu} + i S^{mu nu}` and `F_{mu nu} + i G_{mu nu}`. This module also
//! evaluates the pointwise algebraic identities these tensors satisfy
//! (duality, cofactor/determinant relations, trace decompositions).

use num_complex::Complex64;

use crate::tensor::{levi3, CTensor2, Variance};
use crate::vec3::{self, CVec3, Vec3};
use crate::{math, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// The four real macroscopic field vectors at one event (Gaussian units).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FieldPoint {
    pub e: Vec3,
    pub d: Vec3,
    pub h: Vec3,
    pub b: Vec3,
}

impl FieldPoint {
    pub fn new(e: Vec3, d: Vec3, h: Vec3, b: Vec3) -> Self {
        Self { e, d, h, b }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_finite(&self) -> bool {
        [self.e, self.d, self.h, self.b]
            .iter()
            .all(|v| v.iter().all(|x| x.is_finite()))
    }

    /// Largest absolute component over all four vectors.
    pub fn max_abs(&self) -> f64 {
        [self.e, self.d, self.h, self.b]
            .iter()
            .fold(0.0, |acc, v| math::max(acc, vec3::max_abs(*v)))
    }
}

/// The complex pair `F = E + iH`, `G = D + iB`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPair {
    pub f: CVec3,
    pub g: CVec3,
}

impl ComplexPair {
    pub fn new(f: CVec3, g: CVec3) -> Self {
        Self { f, g }
    }

    /// Pack `F = E + iH`, `G = D + iB`.
    pub fn from_fields(p: &FieldPoint) -> Self {
        Self {
            f: vec3::complex(p.e, p.h),
            g: vec3::complex(p.d, p.b),
        }
    }

    /// Unpack the real fields; exact inverse of [`ComplexPair::from_fields`].
    pub fn to_fields(&self) -> FieldPoint {
        FieldPoint {
            e: vec3::re(&self.f),
            d: vec3::re(&self.g),
            h: vec3::im(&self.f),
            b: vec3::im(&self.g),
        }
    }

    /// Magnitude scale `max(|F|, |G|)` used to normalize residuals.
    pub fn scale(&self) -> f64 {
        math::max(vec3::cmax_abs(&self.f), vec3::cmax_abs(&self.g))
    }
}

/// `Q^{mu nu}`: `Q^{0k} = -G_k`, `Q^{k0} = +G_k`, `Q^{pq} = i e_{pqr} F_r`.
pub fn build_q(c: &ComplexPair) -> CTensor2 {
    let mut t = CTensor2::zero((Variance::Up, Variance::Up));
    for k in 0..3 {
        t.m[0][k + 1] = -c.g[k];
        t.m[k + 1][0] = c.g[k];
    }
    for p in 0..3 {
        for q in 0..3 {
            for r in 0..3 {
                let e = levi3(p, q, r);
                if e != 0 {
                    t.m[p + 1][q + 1] += I * (e as f64) * c.f[r];
                }
            }
        }
    }
    t
}

/// `P_{mu nu}`: `P_{0k} = F_k`, `P_{k0} = -F_k`, `P_{pq} = i e_{pqr} G_r`.
pub fn build_p(c: &ComplexPair) -> CTensor2 {
    let mut t = CTensor2::zero((Variance::Down, Variance::Down));
    for k in 0..3 {
        t.m[0][k + 1] = c.f[k];
        t.m[k + 1][0] = -c.f[k];
    }
    for p in 0..3 {
        for q in 0..3 {
            for r in 0..3 {
                let e = levi3(p, q, r);
                if e != 0 {
                    t.m[p + 1][q + 1] += I * (e as f64) * c.g[r];
                }
            }
        }
    }
    t
}

/// Recover the complex pair from a `Q`-layout tensor (both indices up).
pub fn pair_from_q(q: &CTensor2) -> Result<ComplexPair> {
    if q.variance != (Variance::Up, Variance::Up) {
        return Err(crate::Error::VarianceMismatch("Q must have both slots up"));
    }
    let g = [q.m[1][0], q.m[2][0], q.m[3][0]];
    let f = [-I * q.m[2][3], -I * q.m[3][1], -I * q.m[1][2]];
    Ok(ComplexPair { f, g })
}

/// Real field tensor `F_{mu nu}`: `F_{0k} = E_k`, `F_{pq} = -e_{pqr} B_r`.
pub fn f_tensor(e: Vec3, b: Vec3) -> CTensor2 {
    let mut t = CTensor2::zero((Variance::Down, Variance::Down));
    for k in 0..3 {
        t.m[0][k + 1] = e[k].into();
        t.m[k + 1][0] = (-e[k]).into();
    }
    spatial_block(&mut t, b, -1.0);
    t
}

/// `G_{mu nu}`: `G_{0k} = H_k`, `G_{pq} = +e_{pqr} D_r` (imaginary part of `P`).
pub fn g_tensor(h: Vec3, d: Vec3) -> CTensor2 {
    let mut t = CTensor2::zero((Variance::Down, Variance::Down));
    for k in 0..3 {
        t.m[0][k + 1] = h[k].into();
        t.m[k + 1][0] = (-h[k]).into();
    }
    spatial_block(&mut t, d, 1.0);
    t
}

/// `R^{mu nu}`: `R^{0k} = -D_k`, `R^{pq} = -e_{pqr} H_r` (real part of `Q`).
pub fn r_tensor(d: Vec3, h: Vec3) -> CTensor2 {
    let mut t = CTensor2::zero((Variance::Up, Variance::Up));
    for k in 0..3 {
        t.m[0][k + 1] = (-d[k]).into();
        t.m[k + 1][0] = d[k].into();
    }
    spatial_block(&mut t, h, -1.0);
    t
}

/// `S^{mu nu}`: `S^{0k} = -B_k`, `S^{pq} = +e_{pqr} E_r` (imaginary part of `Q`).
pub fn s_tensor(b: Vec3, e: Vec3) -> CTensor2 {
    let mut t = CTensor2::zero((Variance::Up, Variance::Up));
    for k in 0..3 {
        t.m[0][k + 1] = (-b[k]).into();
        t.m[k + 1][0] = b[k].into();
    }
    spatial_block(&mut t, e, 1.0);
    t
}

fn spatial_block(t: &mut CTensor2, v: Vec3, sign: f64) {
    for p in 0..3 {
        for q in 0..3 {
            for r in 0..3 {
                let e = levi3(p, q, r);
                if e != 0 {
                    t.m[p + 1][q + 1] += Complex64::from(sign * e as f64 * v[r]);
                }
            }
        }
    }
}

/// The complex invariant `F . G = (E.D - H.B) + i(E.B + H.D)`.
pub fn invariant_fg(c: &ComplexPair) -> Complex64 {
    vec3::cdot(&c.f, &c.g)
}

/// Residuals of the cofactor and determinant relations:
/// `P_{mu nu} Q^{nu lambda} = (F.G) delta`, `PQ = QP`,
/// `(F.G) = (1/4) P_{sigma tau} Q^{tau sigma}` and
/// `det P = det Q = -(F.G)^2`.
#[derive(Debug, Clone, Copy)]
pub struct CofactorReport {
    /// `max |(PQ)_mu^lam - (F.G) delta_mu^lam|`
    pub pq_identity: f64,
    /// `max |(PQ)_mu^lam - (QP)^lam_mu|` (matrix commutation)
    pub commute: f64,
    /// `|(1/4) P_{st} Q^{ts} - F.G|`
    pub quarter_trace: f64,
    /// `|det P + (F.G)^2|`
    pub det_p: f64,
    /// `|det Q + (F.G)^2|`
    pub det_q: f64,
}

impl CofactorReport {
    pub fn max(&self) -> f64 {
        [
            self.pq_identity,
            self.commute,
            self.quarter_trace,
            self.det_p,
            self.det_q,
        ]
        .into_iter()
        .fold(0.0, math::max)
    }
}

pub fn cofactor_check(c: &ComplexPair) -> Result<CofactorReport> {
    let p = build_p(c);
    let q = build_q(c);
    let fg = invariant_fg(c);

    let pq = p.mul(&q)?;
    let qp = q.mul(&p)?;

    let mut pq_identity = 0.0f64;
    let mut commute = 0.0f64;
    for mu in 0..4 {
        for lam in 0..4 {
            let id = if mu == lam { fg } else { Complex64::ZERO };
            pq_identity = math::max(pq_identity, (pq.m[mu][lam] - id).norm());
            commute = math::max(commute, (pq.m[mu][lam] - qp.m[mu][lam]).norm());
        }
    }

    let mut quarter = Complex64::ZERO;
    for sig in 0..4 {
        for tau in 0..4 {
            quarter += p.m[sig][tau] * q.m[tau][sig];
        }
    }
    let quarter_trace = (quarter / 4.0 - fg).norm();

    let fg2 = fg * fg;
    Ok(CofactorReport {
        pq_identity,
        commute,
        quarter_trace,
        det_p: (p.det() + fg2).norm(),
        det_q: (q.det() + fg2).norm(),
    })
}

/// Residuals of the scalar and matrix contraction identities between the
/// four real tensors and `P`, `Q`; one entry per identity.
#[derive(Debug, Clone, Copy)]
pub struct ScalarIdentityReport {
    /// `P_{mn} Q^{mn} = 2 F_{mn} R^{mn} - (i/2)(e^.. F F + e_.. R R)`
    pub pq_split: f64,
    /// `F_{mn} R^{mn} = 2 (H.B - E.D)`
    pub fr_value: f64,
    /// `e^{mnst} F_{mn} F_{st} = 8 E.B`
    pub eff_value: f64,
    /// `e_{mnst} R^{mn} R^{st} = 8 H.D`
    pub err_value: f64,
    /// `(1/4) P_{mn} Q^{mn} = (H.B - E.D) - i (E.B + H.D)`
    pub quarter_pq: f64,
    /// `P*_{ml} Q^{ln} + P_{ml} Q*^{ln} = 2 (F_{ml} R^{ln} + G_{ml} S^{ln})`
    pub decomp_first: f64,
    /// `... = 4 F_{ml} R^{ln} + delta F_{st} R^{st}`
    pub decomp_second: f64,
    /// `P_{ml} Q^{ln} + P*_{ml} Q*^{ln} = (1/4)(P_{st} Q^{ts} + c.c.) delta`
    pub trace_identity: f64,
    /// value of the above diagonal: `2 (E.D - H.B)`
    pub trace_value: f64,
    /// `FS = (E.B) I`
    pub fs_value: f64,
    /// `GR = (H.D) I`
    pub gr_value: f64,
    /// `FR - GS = (E.D - H.B) I`
    pub fr_gs_diff: f64,
    /// `FR + GS = 2 FR - (E.D - H.B) I`
    pub fr_gs_sum: f64,
    /// `Tr(FR + GS) = 0`
    pub traceless: f64,
}

impl ScalarIdentityReport {
    pub fn max(&self) -> f64 {
        [
            self.pq_split,
            self.fr_value,
            self.eff_value,
            self.err_value,
            self.quarter_pq,
            self.decomp_first,
            self.decomp_second,
            self.trace_identity,
            self.trace_value,
            self.fs_value,
            self.gr_value,
            self.fr_gs_diff,
            self.fr_gs_sum,
            self.traceless,
        ]
        .into_iter()
        .fold(0.0, math::max)
    }
}

pub fn scalar_identity_suite(c: &ComplexPair) -> Result<ScalarIdentityReport> {
    let fields = c.to_fields();
    let (e, d, h, b) = (fields.e, fields.d, fields.h, fields.b);

    let p = build_p(c);
    let q = build_q(c);
    let ften = f_tensor(e, b);
    let gten = g_tensor(h, d);
    let rten = r_tensor(d, h);
    let sten = s_tensor(b, e);

    let pq_full = p.contract_full(&q)?;
    let fr_full = ften.contract_full(&rten)?;

    // e^{mnst} F_{mn} F_{st} and e_{mnst} R^{mn} R^{st}
    let mut eff = Complex64::ZERO;
    let mut err = Complex64::ZERO;
    for m in 0..4 {
        for n in 0..4 {
            for s in 0..4 {
                for t in 0..4 {
                    let ev = crate::tensor::levi_civita(m, n, s, t) as f64;
                    if ev != 0.0 {
                        eff += -ev * ften.m[m][n] * ften.m[s][t];
                        err += ev * rten.m[m][n] * rten.m[s][t];
                    }
                }
            }
        }
    }

    let ed = vec3::dot(e, d);
    let hb = vec3::dot(h, b);
    let eb = vec3::dot(e, b);
    let hd = vec3::dot(h, d);

    let pq_split = (pq_full - (2.0 * fr_full - I / 2.0 * (eff + err))).norm();
    let fr_value = (fr_full - Complex64::from(2.0 * (hb - ed))).norm();
    let eff_value = (eff - Complex64::from(8.0 * eb)).norm();
    let err_value = (err - Complex64::from(8.0 * hd)).norm();
    let quarter_pq = (pq_full / 4.0 - Complex64::new(hb - ed, -(eb + hd))).norm();

    // Matrix products (first slot down, second up).
    let pc_q = p.conj().mul(&q)?;
    let p_qc = p.mul(&q.conj())?;
    let fr = ften.mul(&rten)?;
    let gs = gten.mul(&sten)?;
    let fs = ften.mul(&sten)?;
    let gr = gten.mul(&rten)?;

    let mut decomp_first = 0.0f64;
    let mut decomp_second = 0.0f64;
    let mut trace_identity = 0.0f64;
    let mut trace_value = 0.0f64;
    let mut fs_value = 0.0f64;
    let mut gr_value = 0.0f64;
    let mut fr_gs_diff = 0.0f64;
    let mut fr_gs_sum = 0.0f64;

    let pq_mat = p.mul(&q)?;
    let pcqc_mat = p.conj().mul(&q.conj())?;
    let quarter_cc = (pq_full + pq_full.conj()) * 0.25;

    for mu in 0..4 {
        for nu in 0..4 {
            let del = Complex64::from(crate::tensor::delta(mu, nu));
            let lhs10 = pc_q.m[mu][nu] + p_qc.m[mu][nu];
            decomp_first = math::max(
                decomp_first,
                (lhs10 - 2.0 * (fr.m[mu][nu] + gs.m[mu][nu])).norm(),
            );
            decomp_second = math::max(
                decomp_second,
                (lhs10 - (4.0 * fr.m[mu][nu] + del * fr_full)).norm(),
            );

            // In the index order of the quarter-trace, the right-hand scalar
            // is -(P_{st} Q^{st})/4 = F.G and its conjugate pair; the
            // diagonal value is 2 (E.D - H.B).
            let lhs10a = pq_mat.m[mu][nu] + pcqc_mat.m[mu][nu];
            trace_identity = math::max(trace_identity, (lhs10a + del * quarter_cc).norm());
            trace_value = math::max(
                trace_value,
                (lhs10a - del * Complex64::from(2.0 * (ed - hb))).norm(),
            );

            fs_value = math::max(fs_value, (fs.m[mu][nu] - del * eb).norm());
            gr_value = math::max(gr_value, (gr.m[mu][nu] - del * hd).norm());
            fr_gs_diff = math::max(
                fr_gs_diff,
                (fr.m[mu][nu] - gs.m[mu][nu] - del * (ed - hb)).norm(),
            );
            fr_gs_sum = math::max(
                fr_gs_sum,
                (fr.m[mu][nu] + gs.m[mu][nu] - (2.0 * fr.m[mu][nu] - del * (ed - hb))).norm(),
            );
        }
    }

    let traceless = (fr.trace()? + gs.trace()?).norm();

    Ok(ScalarIdentityReport {
        pq_split,
        fr_value,
        eff_value,
        err_value,
        quarter_pq,
        decomp_first,
        decomp_second,
        trace_identity,
        trace_value,
        fs_value,
        gr_value,
        fr_gs_diff,
        fr_gs_sum,
        traceless,
    })
}

/// Residuals of the convenience products
/// `i(F x F*) = 2(E x H)`, `i(G x G*) = 2(D x B)` and
/// `F.G* + F*.G = 2(E.D + H.B)`.
pub fn convenience_products(c: &ComplexPair) -> [f64; 3] {
    let fp = c.to_fields();
    let ffc = vec3::ccross(&c.f, &vec3::conj(&c.f));
    let ggc = vec3::ccross(&c.g, &vec3::conj(&c.g));
    let eh = vec3::cross(fp.e, fp.h);
    let db = vec3::cross(fp.d, fp.b);
    let mut r0 = 0.0f64;
    let mut r1 = 0.0f64;
    for k in 0..3 {
        r0 = math::max(r0, (I * ffc[k] - Complex64::from(2.0 * eh[k])).norm());
        r1 = math::max(r1, (I * ggc[k] - Complex64::from(2.0 * db[k])).norm());
    }
    let lhs = vec3::cdot(&c.f, &vec3::conj(&c.g)) + vec3::cdot(&vec3::conj(&c.f), &c.g);
    let r2 = (lhs - Complex64::from(2.0 * (vec3::dot(fp.e, fp.d) + vec3::dot(fp.h, fp.b)))).norm();
    [r0, r1, r2]
}

/// Residual of the two dual relations `e_{mnst} Q^{st} = 2i P_{mn}` and
/// `2i Q^{mn} = e^{mnst} P_{st}`.
pub fn duality_residual(c: &ComplexPair) -> Result<f64> {
    let p = build_p(c);
    let q = build_q(c);
    let dq = q.dual()?; // (1/2) e_{mnst} Q^{st}
    let dp = p.dual()?; // (1/2) e^{mnst} P_{st}
    let r1 = dq.max_abs_diff(&p.scale(I));
    let r2 = dp.max_abs_diff(&q.scale(I));
    Ok(math::max(r1, r2))
}

/// Residuals of the real dual pairs
/// `2 R^{mn} = e^{mnst} G_{st}`, `-2 S^{mn} = e^{mnst} F_{st}`,
/// `2 G_{mn} = -e_{mnst} R^{st}` and `2 F_{mn} = e_{mnst} S^{st}`.
pub fn real_duality_residual(p: &FieldPoint) -> Result<f64> {
    let ften = f_tensor(p.e, p.b);
    let gten = g_tensor(p.h, p.d);
    let rten = r_tensor(p.d, p.h);
    let sten = s_tensor(p.b, p.e);
    let r1 = gten.dual()?.max_abs_diff(&rten); // (1/2) e^ G = R
    let r2 = ften
        .dual()?
        .max_abs_diff(&sten.scale(Complex64::from(-1.0)));
    let r3 = rten
        .dual()?
        .max_abs_diff(&gten.scale(Complex64::from(-1.0)));
    let r4 = sten.dual()?.max_abs_diff(&ften);
    Ok([r1, r2, r3, r4].into_iter().fold(0.0, math::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::levi_civita;

    fn sample_pair() -> ComplexPair {
        ComplexPair::from_fields(&FieldPoint::new(
            [1.0, -0.5, 0.25],
            [0.75, 2.0, -1.0],
            [-0.3, 0.6, 1.1],
            [0.9, -0.2, 0.4],
        ))
    }

    #[test]
    fn pack_unpack_round_trip() {
        let p = FieldPoint::new(
            [1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0],
        );
        let c = ComplexPair::from_fields(&p);
        assert_eq!(c.f[0], Complex64::new(1.0, 0.0));
        assert_eq!(c.f[1], Complex64::new(0.0, 1.0));
        assert_eq!(c.g[0], Complex64::new(1.0, 0.0));
        assert_eq!(c.to_fields(), p);

        let zero = ComplexPair::from_fields(&FieldPoint::zero());
        assert_eq!(zero.scale(), 0.0);
    }

    #[test]
    fn q_single_component_readoff() {
        // G = e1 only: Q^{01} = -1, Q^{10} = +1, everything else zero.
        let c = ComplexPair::new(
            [Complex64::ZERO; 3],
            [Complex64::from(1.0), Complex64::ZERO, Complex64::ZERO],
        );
        let q = build_q(&c);
        assert_eq!(q.m[0][1], Complex64::from(-1.0));
        assert_eq!(q.m[1][0], Complex64::from(1.0));
        let mut rest = 0.0;
        for mu in 0..4 {
            for nu in 0..4 {
                if (mu, nu) != (0, 1) && (mu, nu) != (1, 0) {
                    rest += q.m[mu][nu].norm();
                }
            }
        }
        assert_eq!(rest, 0.0);

        // F = e3 only: Q^{12} = i, Q^{21} = -i.
        let c = ComplexPair::new(
            [Complex64::ZERO, Complex64::ZERO, Complex64::from(1.0)],
            [Complex64::ZERO; 3],
        );
        let q = build_q(&c);
        assert_eq!(q.m[1][2], I);
        assert_eq!(q.m[2][1], -I);
    }

    #[test]
    fn p_single_component_readoff() {
        let c = ComplexPair::new(
            [Complex64::from(1.0), Complex64::ZERO, Complex64::ZERO],
            [Complex64::ZERO; 3],
        );
        let p = build_p(&c);
        assert_eq!(p.m[0][1], Complex64::from(1.0));
        assert_eq!(p.m[1][0], Complex64::from(-1.0));
        assert_eq!(p.antisymmetry_residual(), 0.0);
    }

    #[test]
    fn q_decomposes_into_r_and_s_blocks() {
        let fields = FieldPoint::new(
            [0.3, -1.2, 0.8],
            [1.5, 0.4, -0.6],
            [-0.9, 0.1, 2.0],
            [0.2, 0.7, -1.4],
        );
        let c = ComplexPair::from_fields(&fields);
        let q = build_q(&c);
        let r = r_tensor(fields.d, fields.h);
        let s = s_tensor(fields.b, fields.e);
        let p = build_p(&c);
        let ften = f_tensor(fields.e, fields.b);
        let gten = g_tensor(fields.h, fields.d);
        for mu in 0..4 {
            for nu in 0..4 {
                assert!((q.m[mu][nu] - (r.m[mu][nu] + I * s.m[mu][nu])).norm() < 1e-15);
                assert!((p.m[mu][nu] - (ften.m[mu][nu] + I * gten.m[mu][nu])).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn pair_round_trips_through_q() {
        let c = sample_pair();
        let back = pair_from_q(&build_q(&c)).unwrap();
        for k in 0..3 {
            assert!((back.f[k] - c.f[k]).norm() < 1e-15);
            assert!((back.g[k] - c.g[k]).norm() < 1e-15);
        }
    }

    #[test]
    fn duality_and_vacuum_self_duality() {
        let c = sample_pair();
        assert!(duality_residual(&c).unwrap() <= crate::exact_tol(c.scale()));

        // Vacuum: G = F, so e_{mnst} Q^{st} = 2i Q_{mn}.
        let v = ComplexPair::new(c.f, c.f);
        let q = build_q(&v);
        let q_low = q.lower(0).unwrap().lower(1).unwrap();
        let dual = q.dual().unwrap();
        assert!(dual.max_abs_diff(&q_low.scale(I)) <= crate::exact_tol(v.scale()));
    }

    #[test]
    fn invariant_fg_values() {
        // Pure electric: E = D = e1.
        let c = ComplexPair::from_fields(&FieldPoint::new(
            [1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            vec3::ZERO3,
            vec3::ZERO3,
        ));
        assert_eq!(invariant_fg(&c), Complex64::new(1.0, 0.0));

        // Vacuum linear plane-wave snapshot: E ⊥ H, |E| = |H|, D = E, B = H.
        let c = ComplexPair::from_fields(&FieldPoint::new(
            [2.0, 0.0, 0.0],
            [2.0, 0.0, 0.0],
            [0.0, 2.0, 0.0],
            [0.0, 2.0, 0.0],
        ));
        assert!(invariant_fg(&c).norm() < 1e-15);

        // Random pair matches the split form.
        let c = sample_pair();
        let p = c.to_fields();
        let expect = Complex64::new(
            vec3::dot(p.e, p.d) - vec3::dot(p.h, p.b),
            vec3::dot(p.e, p.b) + vec3::dot(p.h, p.d),
        );
        assert!((invariant_fg(&c) - expect).norm() < 1e-15);
    }

    #[test]
    fn cofactor_zero_fields() {
        let c = ComplexPair::from_fields(&FieldPoint::zero());
        let rep = cofactor_check(&c).unwrap();
        assert_eq!(rep.max(), 0.0);
    }

    #[test]
    fn cofactor_random_pair() {
        let c = sample_pair();
        let rep = cofactor_check(&c).unwrap();
        let s = c.scale();
        assert!(rep.pq_identity <= 1e-12 * s * s, "{rep:?}");
        let fg2 = invariant_fg(&c).norm().powi(2);
        assert!(rep.det_p <= 1e-11 * fg2.max(s.powi(4)), "{rep:?}");
        assert!(rep.det_q <= 1e-11 * fg2.max(s.powi(4)), "{rep:?}");
    }

    #[test]
    fn scalar_identities_zero_and_pure_electric() {
        let zero = ComplexPair::from_fields(&FieldPoint::zero());
        assert_eq!(scalar_identity_suite(&zero).unwrap().max(), 0.0);

        // Pure electric E = D = e1: F_{mn} R^{mn} = -2.
        let c = ComplexPair::from_fields(&FieldPoint::new(
            [1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            vec3::ZERO3,
            vec3::ZERO3,
        ));
        let p = c.to_fields();
        let fr = f_tensor(p.e, p.b)
            .contract_full(&r_tensor(p.d, p.h))
            .unwrap();
        assert!((fr - Complex64::from(-2.0)).norm() < 1e-15);
        assert!(scalar_identity_suite(&c).unwrap().max() < 1e-14);
    }

    #[test]
    fn scalar_identities_random_pair() {
        let c = sample_pair();
        let rep = scalar_identity_suite(&c).unwrap();
        let s2 = c.scale() * c.scale();
        assert!(rep.max() <= 1e-12 * s2, "{rep:?}");
    }

    #[test]
    fn imaginary_part_of_decomposition_vanishes() {
        // P*_{ml} Q^{ln} + P_{ml} Q*^{ln} is real componentwise.
        let c = sample_pair();
        let p = build_p(&c);
        let q = build_q(&c);
        let sum = p
            .conj()
            .mul(&q)
            .unwrap()
            .add(&p.mul(&q.conj()).unwrap())
            .unwrap();
        for mu in 0..4 {
            for nu in 0..4 {
                assert!(sum.m[mu][nu].im.abs() <= 1e-13 * c.scale() * c.scale());
            }
        }
    }

    #[test]
    fn convenience_product_values() {
        // E = e1, H = e2 -> i(F x F*) = (0, 0, 2).
        let c = ComplexPair::from_fields(&FieldPoint::new(
            [1.0, 0.0, 0.0],
            vec3::ZERO3,
            [0.0, 1.0, 0.0],
            vec3::ZERO3,
        ));
        let ffc = vec3::ccross(&c.f, &vec3::conj(&c.f));
        let z = [I * ffc[0], I * ffc[1], I * ffc[2]];
        assert!((z[2] - Complex64::from(2.0)).norm() < 1e-15);
        assert!(z[0].norm() < 1e-15 && z[1].norm() < 1e-15);

        // H = 0 -> F real -> F x F* = 0.
        let c = ComplexPair::from_fields(&FieldPoint::new(
            [1.0, 2.0, 3.0],
            vec3::ZERO3,
            vec3::ZERO3,
            vec3::ZERO3,
        ));
        assert_eq!(vec3::cmax_abs(&vec3::ccross(&c.f, &vec3::conj(&c.f))), 0.0);

        let rep = convenience_products(&sample_pair());
        assert!(rep.iter().all(|r| *r <= 1e-13 * 16.0), "{rep:?}");
    }

    #[test]
    fn real_dual_pairs_hold() {
        let p = sample_pair().to_fields();
        assert!(real_duality_residual(&p).unwrap() <= crate::exact_tol(p.max_abs()));
    }

    #[test]
    fn q_real_part_matches_literal_block_matrix() {
        // Independent literal component layout for R + iS.
        let fields = FieldPoint::new(
            [0.4, 1.1, -0.7],
            [2.0, -0.3, 0.5],
            [1.3, 0.2, -1.8],
            [-0.6, 0.9, 0.1],
        );
        let (d, h, b, e) = (fields.d, fields.h, fields.b, fields.e);
        let re_lit = [
            [0.0, -d[0], -d[1], -d[2]],
            [d[0], 0.0, -h[2], h[1]],
            [d[1], h[2], 0.0, -h[0]],
            [d[2], -h[1], h[0], 0.0],
        ];
        let im_lit = [
            [0.0, -b[0], -b[1], -b[2]],
            [b[0], 0.0, e[2], -e[1]],
            [b[1], -e[2], 0.0, e[0]],
            [b[2], e[1], -e[0], 0.0],
        ];
        let q = build_q(&ComplexPair::from_fields(&fields));
        for mu in 0..4 {
            for nu in 0..4 {
                assert_eq!(q.m[mu][nu].re, re_lit[mu][nu]);
                assert_eq!(q.m[mu][nu].im, im_lit[mu][nu]);
            }
        }
    }

    #[test]
    fn levi_civita_up_down_relation_used_by_duals() {
        for m in 0..4 {
            for n in 0..4 {
                for s in 0..4 {
                    for t in 0..4 {
                        assert_eq!(
                            crate::tensor::levi_civita_up(m, n, s, t),
                            -levi_civita(m, n, s, t)
                        );
                    }
                }
            }
        }
    }
}
