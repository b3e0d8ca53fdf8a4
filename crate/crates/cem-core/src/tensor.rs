//! Metric, Levi-Civita symbol and rank-2/rank-3 antisymmetric four-tensor
//! algebra.
//!
//! Index placement is tracked explicitly: every [`CTensor2`] and
//! [`FourVector`] carries a [`Variance`] tag and contractions check it.
//! Conventions: metric `g = diag(1, -1, -1, -1)`, `e_{0123} = +1` for the
//! covariant Levi-Civita symbol and `e^{0123} = -1` for the contravariant
//! one.

use num_complex::Complex64;

use crate::math;
use crate::{Error, Result};

/// Index placement of a single tensor slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variance {
    Up,
    Down,
}

impl Variance {
    pub fn flipped(self) -> Self {
        match self {
            Variance::Up => Variance::Down,
            Variance::Down => Variance::Up,
        }
    }
}

/// The Minkowski metric `diag(1, -1, -1, -1)`; raising and lowering reduce
/// to sign flips on the spatial components, so the metric is self-inverse.
#[derive(Debug, Clone, Copy, Default)]
pub struct Metric4;

impl Metric4 {
    pub const DIAG: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

    /// Diagonal entry `g_{mu mu} = g^{mu mu}`.
    #[inline]
    pub fn g(mu: usize) -> f64 {
        Self::DIAG[mu]
    }
}

/// Sign of the permutation `(mu, nu, sigma, tau)` of `(0, 1, 2, 3)`:
/// the covariant Levi-Civita symbol `e_{mu nu sigma tau}` with
/// `e_{0123} = +1`. Computed from the permutation parity rather than a
/// lookup table.
///
/// Panics if any index is outside `0..4`.
#[inline]
pub fn levi_civita(mu: usize, nu: usize, sigma: usize, tau: usize) -> i32 {
    assert!(
        mu < 4 && nu < 4 && sigma < 4 && tau < 4,
        "Levi-Civita index out of range"
    );
    let idx = [mu as i32, nu as i32, sigma as i32, tau as i32];
    let mut sign = 1i32;
    for p in 0..4 {
        for q in (p + 1)..4 {
            match idx[q] - idx[p] {
                0 => return 0,
                d if d < 0 => sign = -sign,
                _ => {}
            }
        }
    }
    sign
}

/// Contravariant symbol `e^{mu nu sigma tau} = -e_{mu nu sigma tau}`.
#[inline]
pub fn levi_civita_up(mu: usize, nu: usize, sigma: usize, tau: usize) -> i32 {
    -levi_civita(mu, nu, sigma, tau)
}

/// 3D Levi-Civita symbol with `e_{123} = +1` (indices `0..3`).
#[inline]
pub fn levi3(p: usize, q: usize, r: usize) -> i32 {
    levi_civita(0, p + 1, q + 1, r + 1)
}

/// Kronecker delta as `f64`.
#[inline]
pub fn delta(a: usize, b: usize) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

/// Brute-force residual of the Levi-Civita contraction identity at the
/// given level:
///
/// 1. `e^{m n s t} e_{m k l r} = -det [delta^n_k ...]` (3x3 determinant of
///    deltas),
/// 2. `e^{m n s t} e_{m n l r} = -2 (delta^s_l delta^t_r - delta^s_r delta^t_l)`,
/// 3. `e^{m n s t} e_{m n s r} = -6 delta^t_r`,
/// 4. full contraction `e^{m n s t} e_{m n s t} = -24`.
///
/// All arithmetic is on small integers, so a correct implementation returns
/// exactly `0.0`.
pub fn contract_levi_civita(level: u8) -> f64 {
    let mut worst = 0i64;
    match level {
        1 => {
            for n in 0..4 {
                for s in 0..4 {
                    for t in 0..4 {
                        for k in 0..4 {
                            for l in 0..4 {
                                for r in 0..4 {
                                    let mut lhs = 0i64;
                                    for m in 0..4 {
                                        lhs += (levi_civita_up(m, n, s, t)
                                            * levi_civita(m, k, l, r))
                                            as i64;
                                    }
                                    let d = |a: usize, b: usize| (a == b) as i64;
                                    // det of the 3x3 delta matrix
                                    let det = d(n, k) * (d(s, l) * d(t, r) - d(s, r) * d(t, l))
                                        - d(n, l) * (d(s, k) * d(t, r) - d(s, r) * d(t, k))
                                        + d(n, r) * (d(s, k) * d(t, l) - d(s, l) * d(t, k));
                                    worst = worst.max((lhs + det).abs());
                                }
                            }
                        }
                    }
                }
            }
        }
        2 => {
            for s in 0..4 {
                for t in 0..4 {
                    for l in 0..4 {
                        for r in 0..4 {
                            let mut lhs = 0i64;
                            for m in 0..4 {
                                for n in 0..4 {
                                    lhs += (levi_civita_up(m, n, s, t) * levi_civita(m, n, l, r))
                                        as i64;
                                }
                            }
                            let d = |a: usize, b: usize| (a == b) as i64;
                            let rhs = -2 * (d(s, l) * d(t, r) - d(s, r) * d(t, l));
                            worst = worst.max((lhs - rhs).abs());
                        }
                    }
                }
            }
        }
        3 => {
            for t in 0..4 {
                for r in 0..4 {
                    let mut lhs = 0i64;
                    for m in 0..4 {
                        for n in 0..4 {
                            for s in 0..4 {
                                lhs +=
                                    (levi_civita_up(m, n, s, t) * levi_civita(m, n, s, r)) as i64;
                            }
                        }
                    }
                    let rhs = -6 * ((t == r) as i64);
                    worst = worst.max((lhs - rhs).abs());
                }
            }
        }
        4 => {
            let mut lhs = 0i64;
            for m in 0..4 {
                for n in 0..4 {
                    for s in 0..4 {
                        for t in 0..4 {
                            lhs += (levi_civita_up(m, n, s, t) * levi_civita(m, n, s, t)) as i64;
                        }
                    }
                }
            }
            worst = (lhs + 24).abs();
        }
        _ => panic!("contraction level must be 1..=4"),
    }
    worst as f64
}

/// A four-vector with explicit index placement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourVector<T = f64> {
    pub c: [T; 4],
    pub variance: Variance,
}

impl<T: Copy + core::ops::Neg<Output = T>> FourVector<T> {
    pub fn up(c: [T; 4]) -> Self {
        Self {
            c,
            variance: Variance::Up,
        }
    }

    pub fn down(c: [T; 4]) -> Self {
        Self {
            c,
            variance: Variance::Down,
        }
    }

    /// `x_mu = g_{mu nu} x^nu`: spatial components flip sign.
    pub fn lower(&self) -> Result<Self> {
        if self.variance != Variance::Up {
            return Err(Error::VarianceMismatch("lower expects an upper index"));
        }
        Ok(Self {
            c: [self.c[0], -self.c[1], -self.c[2], -self.c[3]],
            variance: Variance::Down,
        })
    }

    /// `x^mu = g^{mu nu} x_nu`.
    pub fn raise(&self) -> Result<Self> {
        if self.variance != Variance::Down {
            return Err(Error::VarianceMismatch("raise expects a lower index"));
        }
        Ok(Self {
            c: [self.c[0], -self.c[1], -self.c[2], -self.c[3]],
            variance: Variance::Up,
        })
    }
}

impl<T> FourVector<T>
where
    T: Copy + core::ops::Add<Output = T> + core::ops::Mul<Output = T> + num_traits::Zero,
{
    /// Full contraction `a_mu b^mu`; the variances must be opposite.
    pub fn contract(&self, other: &Self) -> Result<T> {
        if self.variance == other.variance {
            return Err(Error::VarianceMismatch(
                "contraction needs one upper and one lower index",
            ));
        }
        let mut acc = T::zero();
        for mu in 0..4 {
            acc = acc + self.c[mu] * other.c[mu];
        }
        Ok(acc)
    }
}

impl FourVector<f64> {
    /// Minkowski square `x_mu x^mu` of a vector with itself.
    pub fn minkowski_norm2(&self) -> f64 {
        let g = Metric4::DIAG;
        (0..4).map(|mu| g[mu] * self.c[mu] * self.c[mu]).sum()
    }
}

/// Rank-2 complex four-tensor with per-slot index placement.
///
/// Stored as a plain 4x4 component array `m[mu][nu]`; products such as
/// `P_{mu lambda} Q^{lambda nu}` are ordinary row-by-column matrix products
/// of the stored arrays, checked for variance compatibility.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CTensor2 {
    pub m: [[Complex64; 4]; 4],
    pub variance: (Variance, Variance),
}

impl CTensor2 {
    pub fn zero(variance: (Variance, Variance)) -> Self {
        Self {
            m: [[Complex64::ZERO; 4]; 4],
            variance,
        }
    }

    pub fn from_fn(
        variance: (Variance, Variance),
        mut f: impl FnMut(usize, usize) -> Complex64,
    ) -> Self {
        let mut m = [[Complex64::ZERO; 4]; 4];
        for (mu, row) in m.iter_mut().enumerate() {
            for (nu, entry) in row.iter_mut().enumerate() {
                *entry = f(mu, nu);
            }
        }
        Self { m, variance }
    }

    pub fn from_real(variance: (Variance, Variance), r: [[f64; 4]; 4]) -> Self {
        Self::from_fn(variance, |mu, nu| Complex64::new(r[mu][nu], 0.0))
    }

    pub fn real(&self) -> [[f64; 4]; 4] {
        let mut out = [[0.0; 4]; 4];
        for mu in 0..4 {
            for nu in 0..4 {
                out[mu][nu] = self.m[mu][nu].re;
            }
        }
        out
    }

    pub fn imag(&self) -> [[f64; 4]; 4] {
        let mut out = [[0.0; 4]; 4];
        for mu in 0..4 {
            for nu in 0..4 {
                out[mu][nu] = self.m[mu][nu].im;
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(self.variance, |mu, nu| self.m[mu][nu].conj())
    }

    pub fn transpose(&self) -> Self {
        Self {
            m: core::array::from_fn(|mu| core::array::from_fn(|nu| self.m[nu][mu])),
            variance: (self.variance.1, self.variance.0),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.variance != other.variance {
            return Err(Error::VarianceMismatch("addition of mixed variances"));
        }
        Ok(Self::from_fn(self.variance, |mu, nu| {
            self.m[mu][nu] + other.m[mu][nu]
        }))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale((-1.0).into()))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_fn(self.variance, |mu, nu| s * self.m[mu][nu])
    }

    /// Max-abs of `T_{mu nu} + T_{nu mu}`: zero for antisymmetric tensors.
    pub fn antisymmetry_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for mu in 0..4 {
            for nu in 0..4 {
                worst = math::max(worst, (self.m[mu][nu] + self.m[nu][mu]).norm());
            }
        }
        worst
    }

    pub fn require_antisymmetric(&self) -> Result<()> {
        let tol = crate::exact_tol(self.max_abs());
        let residual = self.antisymmetry_residual();
        if residual > tol {
            return Err(Error::NotAntisymmetric { residual, tol });
        }
        Ok(())
    }

    /// Lower slot 0 or 1 by contracting with the metric.
    pub fn lower(&self, slot: usize) -> Result<Self> {
        let var = if slot == 0 {
            self.variance.0
        } else {
            self.variance.1
        };
        if var != Variance::Up {
            return Err(Error::VarianceMismatch("lower expects an upper slot"));
        }
        Ok(self.metric_applied(slot))
    }

    /// Raise slot 0 or 1 by contracting with the inverse metric.
    pub fn raise(&self, slot: usize) -> Result<Self> {
        let var = if slot == 0 {
            self.variance.0
        } else {
            self.variance.1
        };
        if var != Variance::Down {
            return Err(Error::VarianceMismatch("raise expects a lower slot"));
        }
        Ok(self.metric_applied(slot))
    }

    fn metric_applied(&self, slot: usize) -> Self {
        assert!(slot < 2, "rank-2 tensor has slots 0 and 1");
        let mut out = *self;
        for mu in 0..4 {
            for nu in 0..4 {
                let s = if slot == 0 {
                    Metric4::g(mu)
                } else {
                    Metric4::g(nu)
                };
                out.m[mu][nu] = s * self.m[mu][nu];
            }
        }
        if slot == 0 {
            out.variance.0 = out.variance.0.flipped();
        } else {
            out.variance.1 = out.variance.1.flipped();
        }
        out
    }

    /// Contraction `A_{mu lambda} B^{lambda nu}` (row-by-column product).
    /// The inner slots must have opposite variance.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.variance.1 == other.variance.0 {
            return Err(Error::VarianceMismatch(
                "inner slots of a product must have opposite variance",
            ));
        }
        let mut m = [[Complex64::ZERO; 4]; 4];
        for mu in 0..4 {
            for nu in 0..4 {
                let mut acc = Complex64::ZERO;
                for lam in 0..4 {
                    acc += self.m[mu][lam] * other.m[lam][nu];
                }
                m[mu][nu] = acc;
            }
        }
        Ok(Self {
            m,
            variance: (self.variance.0, other.variance.1),
        })
    }

    /// Full contraction `A_{mu nu} B^{mu nu}` (first with first, second with
    /// second). Both slot pairs must have opposite variance.
    pub fn contract_full(&self, other: &Self) -> Result<Complex64> {
        if self.variance.0 == other.variance.0 || self.variance.1 == other.variance.1 {
            return Err(Error::VarianceMismatch(
                "full contraction needs opposite variance in both slots",
            ));
        }
        let mut acc = Complex64::ZERO;
        for mu in 0..4 {
            for nu in 0..4 {
                acc += self.m[mu][nu] * other.m[mu][nu];
            }
        }
        Ok(acc)
    }

    /// Trace of a mixed tensor `T_mu^mu`.
    pub fn trace(&self) -> Result<Complex64> {
        if self.variance.0 == self.variance.1 {
            return Err(Error::VarianceMismatch("trace needs a mixed tensor"));
        }
        Ok((0..4).map(|mu| self.m[mu][mu]).sum())
    }

    /// Dual map of an antisymmetric tensor: for `A` with both slots down,
    /// `B^{mu nu} = (1/2) e^{mu nu sigma tau} A_{sigma tau}`; for both slots
    /// up, `B_{mu nu} = (1/2) e_{mu nu sigma tau} A^{sigma tau}`. Composing
    /// the two directions gives `-A`.
    pub fn dual(&self) -> Result<Self> {
        self.require_antisymmetric()?;
        let (sign, variance) = match self.variance {
            (Variance::Down, Variance::Down) => (-1.0, (Variance::Up, Variance::Up)),
            (Variance::Up, Variance::Up) => (1.0, (Variance::Down, Variance::Down)),
            _ => {
                return Err(Error::VarianceMismatch(
                    "dual is defined for uu or dd tensors",
                ))
            }
        };
        // Upper triangle plus mirrored negation keeps the result
        // antisymmetric bitwise.
        let mut m = [[Complex64::ZERO; 4]; 4];
        for mu in 0..4 {
            for nu in (mu + 1)..4 {
                let mut acc = Complex64::ZERO;
                for sig in 0..4 {
                    for tau in 0..4 {
                        let e = levi_civita(mu, nu, sig, tau);
                        if e != 0 {
                            acc += (sign * e as f64 * 0.5) * self.m[sig][tau];
                        }
                    }
                }
                m[mu][nu] = acc;
                m[nu][mu] = -acc;
            }
        }
        Ok(Self { m, variance })
    }

    /// Determinant of the stored 4x4 component array.
    pub fn det(&self) -> Complex64 {
        det4(&self.m)
    }

    pub fn max_abs(&self) -> f64 {
        let mut worst = 0.0f64;
        for row in &self.m {
            for z in row {
                worst = math::max(worst, z.norm());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for mu in 0..4 {
            for nu in 0..4 {
                worst = math::max(worst, (self.m[mu][nu] - other.m[mu][nu]).norm());
            }
        }
        worst
    }
}

/// Determinant of a 4x4 complex matrix by cofactor expansion.
pub fn det4(m: &[[Complex64; 4]; 4]) -> Complex64 {
    let minor = |rows: [usize; 3], cols: [usize; 3]| -> Complex64 {
        let a = |i: usize, j: usize| m[rows[i]][cols[j]];
        a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1))
            - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
            + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))
    };
    let cols = [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]];
    let mut acc = Complex64::ZERO;
    let mut sign = 1.0;
    for j in 0..4 {
        acc += sign * m[0][j] * minor([1, 2, 3], cols[j]);
        sign = -sign;
    }
    acc
}

/// Rank-3 dual: `B^mu = (1/6) e^{mu nu sigma tau} A_{nu sigma tau}`.
pub fn dual_rank3(a: &[[[Complex64; 4]; 4]; 4]) -> [Complex64; 4] {
    let mut b = [Complex64::ZERO; 4];
    for mu in 0..4 {
        let mut acc = Complex64::ZERO;
        for nu in 0..4 {
            for sig in 0..4 {
                for tau in 0..4 {
                    let e = levi_civita_up(mu, nu, sig, tau);
                    if e != 0 {
                        acc += (e as f64 / 6.0) * a[nu][sig][tau];
                    }
                }
            }
        }
        b[mu] = acc;
    }
    b
}

/// Inverse of [`dual_rank3`]: `A_{mu nu lambda} = e_{mu nu lambda sigma} B^sigma`.
pub fn rank3_from_vector(b: &[Complex64; 4]) -> [[[Complex64; 4]; 4]; 4] {
    let mut a = [[[Complex64::ZERO; 4]; 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            for lam in 0..4 {
                let mut acc = Complex64::ZERO;
                for sig in 0..4 {
                    let e = levi_civita(mu, nu, lam, sig);
                    if e != 0 {
                        acc += e as f64 * b[sig];
                    }
                }
                a[mu][nu][lam] = acc;
            }
        }
    }
    a
}
