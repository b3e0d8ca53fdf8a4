//! Sampled fields over spacetime events, derivative channels, sampling
//! grids, and the vector-calculus identity checks built on them.
//!
//! Every field exposes a pointwise evaluator and, where available, a
//! closed-form derivative channel. Verification routines take a [`Channel`]
//! selecting either those exact derivatives (isolating mathematical-identity
//! error from discretization error) or central finite differences of order 2
//! or 4.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::vec3::{self, Vec3};
use crate::{math, Error, Event, Result};

/// A scalar field of the event `x = (ct, r)` with optional closed-form
/// first and second derivatives.
pub trait ScalarField: Send + Sync {
    fn eval(&self, x: &Event) -> f64;

    /// Closed-form `d/dx^a`, if this field provides one.
    fn exact_d(&self, x: &Event, a: usize) -> Option<f64> {
        let _ = (x, a);
        None
    }

    /// Closed-form `d^2/dx^a dx^b`, if available.
    fn exact_dd(&self, x: &Event, a: usize, b: usize) -> Option<f64> {
        let _ = (x, a, b);
        None
    }
}

impl ScalarField for f64 {
    fn eval(&self, _: &Event) -> f64 {
        *self
    }
    fn exact_d(&self, _: &Event, _: usize) -> Option<f64> {
        Some(0.0)
    }
    fn exact_dd(&self, _: &Event, _: usize, _: usize) -> Option<f64> {
        Some(0.0)
    }
}

/// A field backed by a plain function, finite-difference channel only.
pub struct FnField<F: Fn(&Event) -> f64 + Send + Sync>(pub F);

impl<F: Fn(&Event) -> f64 + Send + Sync> ScalarField for FnField<F> {
    fn eval(&self, x: &Event) -> f64 {
        (self.0)(x)
    }
}

/// Derivative evaluation channel.
///
/// The second-derivative path of the FD channels nests the first-derivative
/// stencil. Nested second differences amplify rounding as `eps / h^2`, so
/// the nested step is floored at the second-difference optimum (~2e-3 for
/// f64); above that floor the caller's step is used unchanged to preserve
/// the stencil's truncation order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Channel {
    /// Closed-form derivatives; erroring when a field lacks them.
    Exact,
    /// Central differences of order 2 with step `h`.
    Fd2 { h: f64 },
    /// Central differences of order 4 with step `h`.
    Fd4 { h: f64 },
}

impl Channel {
    pub fn order(&self) -> Option<u8> {
        match self {
            Channel::Exact => None,
            Channel::Fd2 { .. } => Some(2),
            Channel::Fd4 { .. } => Some(4),
        }
    }

    /// Same channel with the FD step scaled by `s` (no-op for `Exact`).
    pub fn scaled(&self, s: f64) -> Self {
        match *self {
            Channel::Exact => Channel::Exact,
            Channel::Fd2 { h } => Channel::Fd2 { h: h * s },
            Channel::Fd4 { h } => Channel::Fd4 { h: h * s },
        }
    }

    /// First derivative `d f / d x^a`.
    pub fn d(&self, f: &dyn ScalarField, x: &Event, a: usize) -> Result<f64> {
        assert!(a < 4, "derivative axis out of range");
        let val = match *self {
            Channel::Exact => f.exact_d(x, a).ok_or(Error::NoExactChannel)?,
            Channel::Fd2 { h } => {
                let (fp, fm) = (f.eval(&shift(x, a, h)), f.eval(&shift(x, a, -h)));
                (fp - fm) / (2.0 * h)
            }
            Channel::Fd4 { h } => {
                let f1 = f.eval(&shift(x, a, h));
                let fm1 = f.eval(&shift(x, a, -h));
                let f2 = f.eval(&shift(x, a, 2.0 * h));
                let fm2 = f.eval(&shift(x, a, -2.0 * h));
                (-f2 + 8.0 * f1 - 8.0 * fm1 + fm2) / (12.0 * h)
            }
        };
        if !val.is_finite() {
            return Err(Error::NonFiniteSample);
        }
        Ok(val)
    }

    /// Second derivative `d^2 f / d x^a d x^b`.
    pub fn dd(&self, f: &dyn ScalarField, x: &Event, a: usize, b: usize) -> Result<f64> {
        assert!(a < 4 && b < 4, "derivative axis out of range");
        match *self {
            Channel::Exact => f.exact_dd(x, a, b).ok_or(Error::NoExactChannel),
            Channel::Fd2 { h } | Channel::Fd4 { h } => {
                const DD_STEP_FLOOR: f64 = 2e-3;
                let coarse = self.scaled(math::max(1.0, DD_STEP_FLOOR / h));
                let inner = FnField(|y: &Event| coarse.d(f, y, b).unwrap_or(f64::NAN));
                let val = coarse.d(&inner, x, a)?;
                if !val.is_finite() {
                    return Err(Error::NonFiniteSample);
                }
                Ok(val)
            }
        }
    }
}

/// Shifted event along one axis.
#[inline]
pub fn shift(x: &Event, a: usize, h: f64) -> Event {
    let mut y = *x;
    y[a] += h;
    y
}

/// A 3-vector field: three boxed scalar components.
pub struct VectorField {
    pub c: [Box<dyn ScalarField>; 3],
}

impl VectorField {
    pub fn new(x: Box<dyn ScalarField>, y: Box<dyn ScalarField>, z: Box<dyn ScalarField>) -> Self {
        Self { c: [x, y, z] }
    }

    pub fn zero() -> Self {
        Self::new(Box::new(0.0), Box::new(0.0), Box::new(0.0))
    }

    pub fn eval(&self, x: &Event) -> Vec3 {
        [self.c[0].eval(x), self.c[1].eval(x), self.c[2].eval(x)]
    }

    /// Componentwise `d/dx^a` through the channel.
    pub fn d(&self, x: &Event, a: usize, ch: Channel) -> Result<Vec3> {
        Ok([
            ch.d(self.c[0].as_ref(), x, a)?,
            ch.d(self.c[1].as_ref(), x, a)?,
            ch.d(self.c[2].as_ref(), x, a)?,
        ])
    }

    pub fn dd(&self, x: &Event, a: usize, b: usize, ch: Channel) -> Result<Vec3> {
        Ok([
            ch.dd(self.c[0].as_ref(), x, a, b)?,
            ch.dd(self.c[1].as_ref(), x, a, b)?,
            ch.dd(self.c[2].as_ref(), x, a, b)?,
        ])
    }

    /// Closed-form componentwise derivative, when every component has one.
    pub fn exact_d_vec(&self, x: &Event, a: usize) -> Option<Vec3> {
        Some([
            self.c[0].exact_d(x, a)?,
            self.c[1].exact_d(x, a)?,
            self.c[2].exact_d(x, a)?,
        ])
    }

    fn exact_dd_vec(&self, x: &Event, a: usize, b: usize) -> Option<Vec3> {
        Some([
            self.c[0].exact_dd(x, a, b)?,
            self.c[1].exact_dd(x, a, b)?,
            self.c[2].exact_dd(x, a, b)?,
        ])
    }

    /// Spatial curl from closed-form derivatives, falling back to a fine
    /// fixed stencil so composites built on it stay well-defined functions
    /// for fields without an exact channel.
    fn curl_value(&self, x: &Event) -> Vec3 {
        let d = |k: usize, a: usize| -> f64 {
            self.c[k].exact_d(x, a).unwrap_or_else(|| {
                Channel::Fd4 { h: 1e-3 }
                    .d(self.c[k].as_ref(), x, a)
                    .unwrap_or(f64::NAN)
            })
        };
        [d(2, 2) - d(1, 3), d(0, 3) - d(2, 1), d(1, 1) - d(0, 2)]
    }
}

// Composite fields used by the identity checks: the left-hand sides of the
// vector-calculus identities differentiate these as single functions, so on
// the FD channels the discretization error of the two sides does not
// cancel. Their exact channel applies the product/chain rule.

/// One component of `A x B`.
pub struct CrossComponent<'a> {
    pub a: &'a VectorField,
    pub b: &'a VectorField,
    pub p: usize,
}

impl ScalarField for CrossComponent<'_> {
    fn eval(&self, x: &Event) -> f64 {
        vec3::cross(self.a.eval(x), self.b.eval(x))[self.p]
    }
    fn exact_d(&self, x: &Event, a: usize) -> Option<f64> {
        let da = self.a.exact_d_vec(x, a)?;
        let db = self.b.exact_d_vec(x, a)?;
        Some(
            vec3::add(
                vec3::cross(da, self.b.eval(x)),
                vec3::cross(self.a.eval(x), db),
            )[self.p],
        )
    }
}

/// Product of two scalar fields.
pub struct ProductField<'a> {
    pub f: &'a dyn ScalarField,
    pub g: &'a dyn ScalarField,
}

impl ScalarField for ProductField<'_> {
    fn eval(&self, x: &Event) -> f64 {
        self.f.eval(x) * self.g.eval(x)
    }
    fn exact_d(&self, x: &Event, a: usize) -> Option<f64> {
        Some(self.f.exact_d(x, a)? * self.g.eval(x) + self.f.eval(x) * self.g.exact_d(x, a)?)
    }
}

/// `f * (curl V)_r`.
pub struct ScaledCurlComponent<'a> {
    pub f: &'a dyn ScalarField,
    pub v: &'a VectorField,
    pub r: usize,
}

impl ScalarField for ScaledCurlComponent<'_> {
    fn eval(&self, x: &Event) -> f64 {
        self.f.eval(x) * self.v.curl_value(x)[self.r]
    }
    fn exact_d(&self, x: &Event, a: usize) -> Option<f64> {
        // d_a (curl V)_r = e_{rst} d_a d_s V_t
        let mut dcurl = [0.0; 3];
        for s in 0..3 {
            let dd = self.v.exact_dd_vec(x, a, s + 1)?;
            for (r, slot) in dcurl.iter_mut().enumerate() {
                for t in 0..3 {
                    let e = crate::tensor::levi3(r, s, t) as f64;
                    if e != 0.0 {
                        *slot += e * dd[t];
                    }
                }
            }
        }
        Some(self.f.exact_d(x, a)? * self.v.curl_value(x)[self.r] + self.f.eval(x) * dcurl[self.r])
    }
}

/// One component of `f (B x curl A - A x curl B)`.
pub struct ScaledCrossCurlComponent<'a> {
    pub f: &'a dyn ScalarField,
    pub a: &'a VectorField,
    pub b: &'a VectorField,
    pub p: usize,
}

impl ScaledCrossCurlComponent<'_> {
    fn w(&self, x: &Event) -> Vec3 {
        vec3::sub(
            vec3::cross(self.b.eval(x), self.a.curl_value(x)),
            vec3::cross(self.a.eval(x), self.b.curl_value(x)),
        )
    }
}

impl ScalarField for ScaledCrossCurlComponent<'_> {
    fn eval(&self, x: &Event) -> f64 {
        self.f.eval(x) * self.w(x)[self.p]
    }
    fn exact_d(&self, x: &Event, ax: usize) -> Option<f64> {
        let dcurl = |v: &VectorField| -> Option<Vec3> {
            let mut out = [0.0; 3];
            for s in 0..3 {
                let dd = v.exact_dd_vec(x, ax, s + 1)?;
                for (r, slot) in out.iter_mut().enumerate() {
                    for t in 0..3 {
                        let e = crate::tensor::levi3(r, s, t) as f64;
                        if e != 0.0 {
                            *slot += e * dd[t];
                        }
                    }
                }
            }
            Some(out)
        };
        let da = self.a.exact_d_vec(x, ax)?;
        let db = self.b.exact_d_vec(x, ax)?;
        let dcurl_a = dcurl(self.a)?;
        let dcurl_b = dcurl(self.b)?;
        let dw = vec3::sub(
            vec3::add(
                vec3::cross(db, self.a.curl_value(x)),
                vec3::cross(self.b.eval(x), dcurl_a),
            ),
            vec3::add(
                vec3::cross(da, self.b.curl_value(x)),
                vec3::cross(self.a.eval(x), dcurl_b),
            ),
        );
        Some(self.f.exact_d(x, ax)? * self.w(x)[self.p] + self.f.eval(x) * dw[self.p])
    }
}

/// Spatial divergence (axes 1..3 of the event).
pub fn div(f: &VectorField, x: &Event, ch: Channel) -> Result<f64> {
    Ok(
        ch.d(f.c[0].as_ref(), x, 1)?
            + ch.d(f.c[1].as_ref(), x, 2)?
            + ch.d(f.c[2].as_ref(), x, 3)?,
    )
}

/// Spatial curl.
pub fn curl(f: &VectorField, x: &Event, ch: Channel) -> Result<Vec3> {
    Ok([
        ch.d(f.c[2].as_ref(), x, 2)? - ch.d(f.c[1].as_ref(), x, 3)?,
        ch.d(f.c[0].as_ref(), x, 3)? - ch.d(f.c[2].as_ref(), x, 1)?,
        ch.d(f.c[1].as_ref(), x, 1)? - ch.d(f.c[0].as_ref(), x, 2)?,
    ])
}

/// Spatial gradient of a scalar field.
pub fn grad(f: &dyn ScalarField, x: &Event, ch: Channel) -> Result<Vec3> {
    Ok([ch.d(f, x, 1)?, ch.d(f, x, 2)?, ch.d(f, x, 3)?])
}

/// A rectangular sampling grid of events.
#[derive(Debug, Clone)]
pub struct Grid4 {
    pub origin: Event,
    pub spacing: [f64; 4],
    pub extent: [usize; 4],
}

impl Grid4 {
    pub fn new(origin: Event, spacing: [f64; 4], extent: [usize; 4]) -> Result<Self> {
        if spacing.iter().any(|s| !(*s > 0.0)) {
            return Err(Error::InvalidInput("grid spacing must be positive"));
        }
        if extent.contains(&0) {
            return Err(Error::InvalidInput("grid extent must be nonzero"));
        }
        Ok(Self {
            origin,
            spacing,
            extent,
        })
    }

    /// Uniform grid with `n` samples per axis across the given box.
    pub fn uniform(origin: Event, lengths: [f64; 4], n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput("uniform grid needs n >= 2"));
        }
        let spacing = core::array::from_fn(|a| lengths[a] / (n as f64 - 1.0));
        Self::new(origin, spacing, [n; 4])
    }

    pub fn len(&self) -> usize {
        self.extent.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn events(&self) -> impl Iterator<Item = Event> + '_ {
        let [n0, n1, n2, n3] = self.extent;
        (0..n0).flat_map(move |i0| {
            (0..n1).flat_map(move |i1| {
                (0..n2).flat_map(move |i2| {
                    (0..n3).map(move |i3| {
                        [
                            self.origin[0] + self.spacing[0] * i0 as f64,
                            self.origin[1] + self.spacing[1] * i1 as f64,
                            self.origin[2] + self.spacing[2] * i2 as f64,
                            self.origin[3] + self.spacing[3] * i3 as f64,
                        ]
                    })
                })
            })
        })
    }
}

/// Residuals of the vector-calculus identities evaluated at one event; one
/// entry per identity, each `|lhs - rhs|` (max-abs over components for
/// vector-valued ones).
#[derive(Debug, Clone, Copy)]
pub struct VectorIdentityReport {
    /// `div(A x B) = B.curl A - A.curl B`
    pub div_cross: f64,
    /// `div(f A) = grad f . A + f div A`
    pub div_scaled: f64,
    /// `curl(f A) = grad f x A + f curl A`
    pub curl_scaled: f64,
    /// `A.curl(f curl B) - B.curl(f curl A) = div(f (B x curl A - A x curl B))`
    pub double_curl: f64,
    /// `A div B - B div A + A x curl B - B x curl A - curl(A x B)`
    /// against `A_q dB_q/dx_p - B_q dA_q/dx_p`
    pub exchange: f64,
    /// the same left side against `sum_a A_a^2 grad(B_a / A_a)` (quotient form)
    pub exchange_sum_a: Option<f64>,
    /// and against `-sum_a B_a^2 grad(A_a / B_a)`
    pub exchange_sum_b: Option<f64>,
    /// `[curl(A x B)]_p = d_q (A_p B_q - A_q B_p)`
    pub curl_product: f64,
    /// `2 d_q(A_p B_q) = d_q(A_p B_q + A_q B_p) + [curl(A x B)]_p`
    pub curl_product_two: f64,
    /// `(A x curl B)_p = A_q (dB_q/dx_p - dB_p/dx_q)`
    pub cross_curl: f64,
}

impl VectorIdentityReport {
    pub fn max(&self) -> f64 {
        let mut worst = [
            self.div_cross,
            self.div_scaled,
            self.curl_scaled,
            self.double_curl,
            self.exchange,
            self.curl_product,
            self.curl_product_two,
            self.cross_curl,
        ]
        .into_iter()
        .fold(0.0, math::max);
        if let Some(r) = self.exchange_sum_a {
            worst = math::max(worst, r);
        }
        if let Some(r) = self.exchange_sum_b {
            worst = math::max(worst, r);
        }
        worst
    }
}

/// Evaluate the whole identity suite at one event.
///
/// Left-hand sides differentiate composite fields (`A x B`, `f A`,
/// `f curl B`, ...) through the channel while right-hand sides are
/// assembled from component derivatives, so on the FD channels the
/// residuals measure genuine discretization error and shrink at the
/// stencil order.
///
/// The quotient-sum forms of the exchange identity divide by field
/// components; they are evaluated only when every component of the
/// corresponding vector exceeds `quotient_floor` (relative to the vector's
/// magnitude), and reported as `None` otherwise.
pub fn vector_identity_suite(
    a: &VectorField,
    b: &VectorField,
    f: &dyn ScalarField,
    x: &Event,
    ch: Channel,
    quotient_floor: f64,
) -> Result<VectorIdentityReport> {
    let av = a.eval(x);
    let bv = b.eval(x);
    let fv = f.eval(x);
    let da: [Vec3; 3] = [a.d(x, 1, ch)?, a.d(x, 2, ch)?, a.d(x, 3, ch)?];
    let db: [Vec3; 3] = [b.d(x, 1, ch)?, b.d(x, 2, ch)?, b.d(x, 3, ch)?];
    let gf = grad(f, x, ch)?;
    let curl_a = [
        da[1][2] - da[2][1],
        da[2][0] - da[0][2],
        da[0][1] - da[1][0],
    ];
    let curl_b = [
        db[1][2] - db[2][1],
        db[2][0] - db[0][2],
        db[0][1] - db[1][0],
    ];
    let div_a = da[0][0] + da[1][1] + da[2][2];
    let div_b = db[0][0] + db[1][1] + db[2][2];

    // d_q (A x B)_r for the left-hand sides below.
    let mut d_cross = [[0.0; 3]; 3]; // d_cross[q][r] = d_q (A x B)_r
    for q in 0..3 {
        for r in 0..3 {
            d_cross[q][r] = ch.d(&CrossComponent { a, b, p: r }, x, q + 1)?;
        }
    }

    // div(A x B) = B . curl A - A . curl B.
    let div_axb = d_cross[0][0] + d_cross[1][1] + d_cross[2][2];
    let div_cross = math::abs(div_axb - (vec3::dot(bv, curl_a) - vec3::dot(av, curl_b)));

    // div(f A) and curl(f A).
    let mut div_fa = 0.0;
    for p in 0..3 {
        div_fa += ch.d(
            &ProductField {
                f,
                g: a.c[p].as_ref(),
            },
            x,
            p + 1,
        )?;
    }
    let div_scaled = math::abs(div_fa - (vec3::dot(gf, av) + fv * div_a));

    let mut curl_scaled = 0.0f64;
    for p in 0..3 {
        let mut lhs = 0.0;
        for q in 0..3 {
            for r in 0..3 {
                let e = crate::tensor::levi3(p, q, r) as f64;
                if e != 0.0 {
                    lhs += e * ch.d(
                        &ProductField {
                            f,
                            g: a.c[r].as_ref(),
                        },
                        x,
                        q + 1,
                    )?;
                }
            }
        }
        let rhs = vec3::cross(gf, av)[p] + fv * curl_a[p];
        curl_scaled = math::max(curl_scaled, math::abs(lhs - rhs));
    }

    // A.curl(f curl B) - B.curl(f curl A) = div(f(B x curl A - A x curl B));
    // each outer derivative acts on a composite.
    let mut lhs4 = 0.0;
    for p in 0..3 {
        for q in 0..3 {
            for r in 0..3 {
                let e = crate::tensor::levi3(p, q, r) as f64;
                if e != 0.0 {
                    lhs4 += av[p] * e * ch.d(&ScaledCurlComponent { f, v: b, r }, x, q + 1)?;
                    lhs4 -= bv[p] * e * ch.d(&ScaledCurlComponent { f, v: a, r }, x, q + 1)?;
                }
            }
        }
    }
    let mut div_fw = 0.0;
    for p in 0..3 {
        div_fw += ch.d(&ScaledCrossCurlComponent { f, a, b, p }, x, p + 1)?;
    }
    let double_curl = math::abs(lhs4 - div_fw);

    // Exchange identity, three right-hand forms.
    let mut exchange = 0.0f64;
    let mut sum_a_res = 0.0f64;
    let mut sum_b_res = 0.0f64;
    let scale_a = vec3::max_abs(av);
    let scale_b = vec3::max_abs(bv);
    let a_ok = av
        .iter()
        .all(|v| math::abs(*v) > quotient_floor * math::max(scale_a, 1e-300));
    let b_ok = bv
        .iter()
        .all(|v| math::abs(*v) > quotient_floor * math::max(scale_b, 1e-300));
    for p in 0..3 {
        let mut lhs =
            av[p] * div_b - bv[p] * div_a + vec3::cross(av, curl_b)[p] - vec3::cross(bv, curl_a)[p];
        for q in 0..3 {
            for r in 0..3 {
                let e = crate::tensor::levi3(p, q, r) as f64;
                if e != 0.0 {
                    lhs -= e * d_cross[q][r];
                }
            }
        }
        let mut rhs = 0.0;
        for q in 0..3 {
            rhs += av[q] * db[p][q] - bv[q] * da[p][q];
        }
        exchange = math::max(exchange, math::abs(lhs - rhs));

        if a_ok {
            let mut s = 0.0;
            for alpha in 0..3 {
                // A_a^2 d_p (B_a / A_a), quotient rule as printed
                s += av[alpha]
                    * av[alpha]
                    * ((db[p][alpha] * av[alpha] - bv[alpha] * da[p][alpha])
                        / (av[alpha] * av[alpha]));
            }
            sum_a_res = math::max(sum_a_res, math::abs(lhs - s));
        }
        if b_ok {
            let mut s = 0.0;
            for alpha in 0..3 {
                s += bv[alpha]
                    * bv[alpha]
                    * ((da[p][alpha] * bv[alpha] - av[alpha] * db[p][alpha])
                        / (bv[alpha] * bv[alpha]));
            }
            sum_b_res = math::max(sum_b_res, math::abs(lhs + s));
        }
    }

    // [curl(A x B)]_p = d_q (A_p B_q - A_q B_p) and its two-term variant,
    // the right-hand derivatives acting on component products.
    let mut d_prod = [[0.0; 3]; 3]; // d_prod[p][q] = d_q (A_p B_q)
    let mut d_prod_t = [[0.0; 3]; 3]; // d_prod_t[p][q] = d_q (A_q B_p)
    for p in 0..3 {
        for q in 0..3 {
            d_prod[p][q] = ch.d(
                &ProductField {
                    f: a.c[p].as_ref(),
                    g: b.c[q].as_ref(),
                },
                x,
                q + 1,
            )?;
            d_prod_t[p][q] = ch.d(
                &ProductField {
                    f: a.c[q].as_ref(),
                    g: b.c[p].as_ref(),
                },
                x,
                q + 1,
            )?;
        }
    }
    let mut curl_product = 0.0f64;
    let mut curl_product_two = 0.0f64;
    for p in 0..3 {
        let mut curl_axb = 0.0;
        for q in 0..3 {
            for r in 0..3 {
                let e = crate::tensor::levi3(p, q, r) as f64;
                if e != 0.0 {
                    curl_axb += e * d_cross[q][r];
                }
            }
        }
        let mut rhs = 0.0;
        let mut sym = 0.0;
        let mut twice = 0.0;
        for q in 0..3 {
            rhs += d_prod[p][q] - d_prod_t[p][q];
            sym += d_prod[p][q] + d_prod_t[p][q];
            twice += 2.0 * d_prod[p][q];
        }
        curl_product = math::max(curl_product, math::abs(curl_axb - rhs));
        curl_product_two = math::max(curl_product_two, math::abs(twice - (sym + curl_axb)));
    }

    // (A x curl B)_p = A_q (dB_q/dx_p - dB_p/dx_q): pointwise in the field
    // and derivative values, so it holds to rounding on every channel.
    let mut cross_curl = 0.0f64;
    for p in 0..3 {
        let lhs = vec3::cross(av, curl_b)[p];
        let mut rhs = 0.0;
        for q in 0..3 {
            rhs += av[q] * (db[p][q] - db[q][p]);
        }
        cross_curl = math::max(cross_curl, math::abs(lhs - rhs));
    }

    Ok(VectorIdentityReport {
        div_cross,
        div_scaled,
        curl_scaled,
        double_curl,
        exchange,
        exchange_sum_a: a_ok.then_some(sum_a_res),
        exchange_sum_b: b_ok.then_some(sum_b_res),
        curl_product,
        curl_product_two,
        cross_curl,
    })
}

/// Least-squares slope of `log residual` against `log h` over
/// `h0, h0/2, ..., h0/2^(levels-1)`.
///
/// Residuals must be positive and strictly decreasing; otherwise the
/// refinement failed and an error is returned.
pub fn convergence_order(
    mut residual_at: impl FnMut(f64) -> f64,
    h0: f64,
    levels: usize,
) -> Result<f64> {
    if levels < 3 || !(h0 > 0.0) {
        return Err(Error::InvalidInput(
            "convergence fit needs h0 > 0 and at least 3 levels",
        ));
    }
    let mut hs = Vec::with_capacity(levels);
    let mut rs = Vec::with_capacity(levels);
    let mut h = h0;
    for _ in 0..levels {
        let r = residual_at(h);
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::FailedConvergence);
        }
        if let Some(last) = rs.last() {
            if r >= *last {
                return Err(Error::FailedConvergence);
            }
        }
        hs.push(math::ln(h));
        rs.push(r);
        h *= 0.5;
    }
    let logs: Vec<f64> = rs.iter().map(|r| math::ln(*r)).collect();
    let n = levels as f64;
    let mx = hs.iter().sum::<f64>() / n;
    let my = logs.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in hs.iter().zip(&logs) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    Ok(num / den)
}
