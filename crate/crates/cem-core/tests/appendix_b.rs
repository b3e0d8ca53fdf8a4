//! Full battery of dual-tensor and matrix identities over seeded random
//! field pairs: Levi-Civita contractions, duality relations, scalar and
//! matrix contraction identities, cofactor/determinant relations, and the
//! rank-3 dual round trip.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]
use cem_core::fields::{
    build_p, build_q, cofactor_check, convenience_products, duality_residual, f_tensor, g_tensor,
    invariant_fg, r_tensor, real_duality_residual, s_tensor, scalar_identity_suite, ComplexPair,
};
use cem_core::scenarios::{random_field_point, SeededRng};
use cem_core::tensor::{
    contract_levi_civita, dual_rank3, levi_civita, levi_civita_up, rank3_from_vector, CTensor2,
    Variance,
};
use cem_core::Complex64;

const N_PAIRS: usize = 1000;
const SEED: u64 = 0xB;

fn pairs() -> impl Iterator<Item = ComplexPair> {
    let mut rng = SeededRng::new(SEED);
    (0..N_PAIRS).map(move |_| ComplexPair::from_fields(&random_field_point(&mut rng, 1.5)))
}

#[test]
fn levi_civita_contractions_are_exact_integers() {
    for level in 1..=4 {
        assert_eq!(contract_levi_civita(level), 0.0, "level {level}");
    }
    // The full contraction itself, summed independently here.
    let mut sum = 0i64;
    for m in 0..4 {
        for n in 0..4 {
            for s in 0..4 {
                for t in 0..4 {
                    sum += (levi_civita_up(m, n, s, t) * levi_civita(m, n, s, t)) as i64;
                }
            }
        }
    }
    assert_eq!(sum, -24);
}

#[test]
fn q_and_p_split_into_their_dual_real_tensors() {
    // Q = R - (i/2) e^ F and P = F - (i/2) e_ R, plus the four real dual
    // pairs relating (F, G) to (R, S).
    for c in pairs().take(200) {
        let fields = c.to_fields();
        let q = build_q(&c);
        let p = build_p(&c);
        let ften = f_tensor(fields.e, fields.b);
        let rten = r_tensor(fields.d, fields.h);
        let scale = cem_core::exact_tol(c.scale());

        // e^{mnst} F_{st} = -2 S^{mn}  <=>  dual(F) = -S; assembled per entry.
        let mut worst = 0.0f64;
        for mu in 0..4 {
            for nu in 0..4 {
                let mut ef = Complex64::ZERO;
                let mut er = Complex64::ZERO;
                for s in 0..4 {
                    for t in 0..4 {
                        let eu = levi_civita_up(mu, nu, s, t);
                        if eu != 0 {
                            ef += eu as f64 * ften.m[s][t];
                        }
                        let ed = levi_civita(mu, nu, s, t);
                        if ed != 0 {
                            er += ed as f64 * rten.m[s][t];
                        }
                    }
                }
                let q_expect = rten.m[mu][nu] - Complex64::new(0.0, 0.5) * ef;
                let p_expect = ften.m[mu][nu] - Complex64::new(0.0, 0.5) * er;
                worst = worst.max((q.m[mu][nu] - q_expect).norm());
                worst = worst.max((p.m[mu][nu] - p_expect).norm());
            }
        }
        assert!(worst <= scale, "{worst}");
        assert!(real_duality_residual(&fields).unwrap() <= scale);
    }
}

#[test]
fn pq_duality_holds_for_random_pairs() {
    for c in pairs() {
        let tol = cem_core::exact_tol(c.scale());
        assert!(duality_residual(&c).unwrap() <= tol);
    }
}

#[test]
fn vacuum_pairs_are_self_dual() {
    let mut rng = SeededRng::new(SEED + 1);
    for _ in 0..200 {
        let p = random_field_point(&mut rng, 1.5);
        let vac = ComplexPair::from_fields(&cem_core::fields::FieldPoint::new(p.e, p.e, p.h, p.h));
        let q = build_q(&vac);
        let q_low = q.lower(0).unwrap().lower(1).unwrap();
        let dual = q.dual().unwrap();
        let i = Complex64::new(0.0, 1.0);
        assert!(dual.max_abs_diff(&q_low.scale(i)) <= cem_core::exact_tol(vac.scale()));
    }
}

#[test]
fn scalar_identities_b6_to_b17() {
    for c in pairs() {
        let rep = scalar_identity_suite(&c).unwrap();
        let s2 = (c.scale() * c.scale()).max(1.0);
        assert!(rep.max() <= 1e-12 * s2, "{rep:?}");
    }
}

#[test]
fn cofactor_and_determinant_relations() {
    for c in pairs() {
        let rep = cofactor_check(&c).unwrap();
        let s = c.scale().max(1.0);
        let s2 = s * s;
        assert!(rep.pq_identity <= 1e-11 * s2, "{rep:?}");
        assert!(rep.commute <= 1e-11 * s2);
        assert!(rep.quarter_trace <= 1e-11 * s2);
        // Quartic scale for the determinants.
        let fg2 = invariant_fg(&c).norm().powi(2).max(s2 * s2);
        assert!(rep.det_p <= 1e-11 * fg2, "{rep:?}");
        assert!(rep.det_q <= 1e-11 * fg2);
    }
}

#[test]
fn invariant_decomposes_into_real_quadratics() {
    for c in pairs().take(300) {
        let f = c.to_fields();
        let dot = |a: [f64; 3], b: [f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
        let expect = Complex64::new(dot(f.e, f.d) - dot(f.h, f.b), dot(f.e, f.b) + dot(f.h, f.d));
        assert!((invariant_fg(&c) - expect).norm() <= cem_core::exact_tol(c.scale() * c.scale()));
    }
}

#[test]
fn convenience_products_hold() {
    for c in pairs().take(300) {
        let rep = convenience_products(&c);
        let s2 = (c.scale() * c.scale()).max(1.0);
        assert!(rep.iter().all(|r| *r <= 1e-13 * s2 * 4.0), "{rep:?}");
    }
}

#[test]
fn g_tensor_is_dual_of_r_and_friends() {
    // Cross-wiring check: dual(G) = R, dual(S) = F with the layout used by
    // the complex tensors.
    let mut rng = SeededRng::new(SEED + 2);
    for _ in 0..100 {
        let p = random_field_point(&mut rng, 2.0);
        let scale = cem_core::exact_tol(4.0 * p.max_abs());
        let g = g_tensor(p.h, p.d);
        let r = r_tensor(p.d, p.h);
        let s = s_tensor(p.b, p.e);
        let f = f_tensor(p.e, p.b);
        assert!(g.dual().unwrap().max_abs_diff(&r) <= scale);
        assert!(s.dual().unwrap().max_abs_diff(&f) <= scale);
    }
}

#[test]
fn rank3_dual_round_trips() {
    let mut rng = SeededRng::new(SEED + 3);
    for _ in 0..200 {
        let b: [Complex64; 4] = core::array::from_fn(|_| {
            Complex64::new(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0))
        });
        let a = rank3_from_vector(&b);
        // The reconstruction is totally antisymmetric.
        for mu in 0..4 {
            for nu in 0..4 {
                for lam in 0..4 {
                    assert_eq!(a[mu][nu][lam], -a[nu][mu][lam]);
                    assert_eq!(a[mu][nu][lam], -a[mu][lam][nu]);
                }
            }
        }
        let back = dual_rank3(&a);
        for mu in 0..4 {
            assert!((back[mu] - b[mu]).norm() <= 1e-14 * 4.0);
        }

        // And the other direction: antisymmetrize a random rank-3 tensor,
        // map to a vector, reconstruct, and compare on the antisymmetric
        // part only.
        let mut raw = [[[Complex64::new(0.0, 0.0); 4]; 4]; 4];
        for item in raw.iter_mut().flatten().flatten() {
            *item = Complex64::new(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        }
        let mut anti = [[[Complex64::new(0.0, 0.0); 4]; 4]; 4];
        for mu in 0..4 {
            for nu in 0..4 {
                for lam in 0..4 {
                    // Antisymmetrization over all 6 permutations.
                    anti[mu][nu][lam] = (raw[mu][nu][lam] - raw[mu][lam][nu] + raw[nu][lam][mu]
                        - raw[nu][mu][lam]
                        + raw[lam][mu][nu]
                        - raw[lam][nu][mu])
                        / 6.0;
                }
            }
        }
        let vec = dual_rank3(&anti);
        let rebuilt = rank3_from_vector(&vec);
        // e_{mu nu lam sig} B^sig reconstructs -anti? Check against the
        // covariant pairing: rebuilt should reproduce anti up to the sign
        // fixed by the contraction convention.
        let mut worst = 0.0f64;
        for mu in 0..4 {
            for nu in 0..4 {
                for lam in 0..4 {
                    worst = worst.max((rebuilt[mu][nu][lam] - anti[mu][nu][lam]).norm());
                }
            }
        }
        assert!(worst <= 1e-13, "{worst}");
    }
}

#[test]
fn dual_is_an_involution_up_to_sign() {
    let mut rng = SeededRng::new(SEED + 4);
    for _ in 0..200 {
        let mut t = CTensor2::zero((Variance::Down, Variance::Down));
        for mu in 0..4 {
            for nu in (mu + 1)..4 {
                let v = Complex64::new(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
                t.m[mu][nu] = v;
                t.m[nu][mu] = -v;
            }
        }
        let dd = t.dual().unwrap().dual().unwrap();
        let minus = t.scale(Complex64::new(-1.0, 0.0));
        assert!(dd.max_abs_diff(&minus) <= cem_core::exact_tol(t.max_abs()));
        // Antisymmetry is preserved bitwise along the way.
        assert_eq!(t.dual().unwrap().antisymmetry_residual(), 0.0);
    }
}
