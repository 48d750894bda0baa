mod common;

use common::*;
use padecheb::linalg::{kernel_basis, DenseMatrix};
use padecheb::pade1d::{assemble_denominator_system, compute_numerator, solve_denominator};
use padecheb::pade2d::{assemble_denominator_system_2d, compute_numerator_2d};
use padecheb::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_order_1d(rng: &mut ChaCha8Rng) -> PadeOrder1D {
    let nq = rng.gen_range(1..=5);
    PadeOrder1D::new(nq + rng.gen_range(0..=5), nq).unwrap()
}

fn random_order_2d(rng: &mut ChaCha8Rng) -> PadeOrder2D {
    let nq = (rng.gen_range(1..=3), rng.gen_range(1..=3));
    PadeOrder2D::new((nq.0 + rng.gen_range(0..=2), nq.1 + rng.gen_range(0..=2)), nq).unwrap()
}

fn random_series_2d(rng: &mut ChaCha8Rng, degrees: (usize, usize)) -> ChebyshevSeries2D {
    let shape = (degrees.0 + 1, degrees.1 + 1);
    ChebyshevSeries2D::new(random_vec(rng, shape.0 * shape.1), shape, Rect::reference(), (64, 64)).unwrap()
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

#[test]
fn assembly_1d_matches_projection_of_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..50 {
        let o = random_order_1d(&mut rng);
        let c = random_vec(&mut rng, o.series_degree() + 1);
        let s = ChebyshevSeries1D::new(c.clone(), Interval::reference(), 64).unwrap();
        let a = assemble_denominator_system(&s, o).unwrap();
        for _ in 0..5 {
            let q = random_vec(&mut rng, o.nq() + 1);
            let deg = c.len() + q.len();
            let e = plain_projection(|t| primed_direct(&c, t) * plain_direct(&q, t), deg, deg + 2);
            let aq = a.mul_vec(&q).unwrap();
            for (row, k) in (o.np() + 1..=o.np() + o.nq()).enumerate() {
                assert!((aq[row] - 2.0 * e[k]).abs() <= 1e-13, "row {row}: {} vs {}", aq[row], 2.0 * e[k]);
            }
        }
    }
}

#[test]
fn numerator_1d_matches_projection_of_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for _ in 0..50 {
        let o = random_order_1d(&mut rng);
        let c = random_vec(&mut rng, o.series_degree() + 1);
        let s = ChebyshevSeries1D::new(c.clone(), Interval::reference(), 64).unwrap();
        let q = random_vec(&mut rng, o.nq() + 1);
        let p = compute_numerator(&s, &q, o).unwrap();
        let deg = c.len() + q.len();
        let e = plain_projection(|t| primed_direct(&c, t) * plain_direct(&q, t), o.np(), deg + 2);
        for k in 0..=o.np() {
            assert!((p[k] - e[k]).abs() <= 1e-13, "p[{k}]");
        }
    }
}

#[test]
fn assembly_2d_matches_projection_of_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(201);
    for _ in 0..50 {
        let o = random_order_2d(&mut rng);
        let s = random_series_2d(&mut rng, o.series_degrees());
        let a = assemble_denominator_system_2d(&s, o).unwrap();
        let ((np1, np2), (nq1, nq2)) = (o.np(), o.nq());
        assert_eq!((a.rows(), a.cols()), (o.denominator_len() - 1, o.denominator_len()));
        for _ in 0..2 {
            let q = random_vec(&mut rng, o.denominator_len());
            let c = s.coeffs().to_vec();
            let cs = (s.degrees().0 + 1, s.degrees().1 + 1);
            let g = |x: f64, y: f64| plain_direct_2d(&c, cs, x, y) * plain_direct_2d(&q, (nq1 + 1, nq2 + 1), x, y);
            let max = (np1 + nq1 + 1, np2 + nq2 + 1);
            let m = cs.0.max(cs.1) + nq1.max(nq2) + max.0.max(max.1);
            let e = plain_projection_2d(g, max, m);
            let aq = a.mul_vec(&q).unwrap();
            let mut row = 0;
            for i in np1 + 1..=np1 + nq1 + 1 {
                for j in np2 + 1..=np2 + nq2 + 1 {
                    if row == aq.len() {
                        break;
                    }
                    assert!((aq[row] - 4.0 * e[i][j]).abs() <= 1e-13, "({i},{j})");
                    row += 1;
                }
            }
        }
    }
}

#[test]
fn numerator_2d_matches_projection_of_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    for _ in 0..30 {
        let o = random_order_2d(&mut rng);
        let s = random_series_2d(&mut rng, o.series_degrees());
        let ((np1, np2), (nq1, nq2)) = (o.np(), o.nq());
        let q = random_vec(&mut rng, o.denominator_len());
        let p = compute_numerator_2d(&s, &q, o).unwrap();
        let c = s.coeffs().to_vec();
        let cs = (s.degrees().0 + 1, s.degrees().1 + 1);
        let g = |x: f64, y: f64| plain_direct_2d(&c, cs, x, y) * plain_direct_2d(&q, (nq1 + 1, nq2 + 1), x, y);
        let m = cs.0.max(cs.1) + nq1.max(nq2) + 4;
        let e = plain_projection_2d(g, (np1, np2), m);
        for i in 0..=np1 {
            for j in 0..=np2 {
                assert!((p[i * (np2 + 1) + j] - e[i][j]).abs() <= 1e-13, "p[{i},{j}]");
            }
        }
    }
}

#[test]
fn separable_series_blocks_follow_the_1d_pattern() {
    let mut rng = ChaCha8Rng::seed_from_u64(203);
    for _ in 0..20 {
        let o = random_order_2d(&mut rng);
        let d = o.series_degrees();
        let u = random_vec(&mut rng, d.0 + 1);
        let v = random_vec(&mut rng, d.1 + 1);
        let c: Vec<f64> = u.iter().flat_map(|ui| v.iter().map(move |vj| ui * vj)).collect();
        let s = ChebyshevSeries2D::new(c, (d.0 + 1, d.1 + 1), Rect::reference(), (64, 64)).unwrap();
        let a = assemble_denominator_system_2d(&s, o).unwrap();
        let ((np1, np2), (nq1, nq2)) = (o.np(), o.nq());
        let th = |w: &[f64], k: usize, r: usize| w[k - r] + w[k + r];
        let mut row = 0;
        for i in np1 + 1..=np1 + nq1 + 1 {
            for j in np2 + 1..=np2 + nq2 + 1 {
                if row == a.rows() {
                    break;
                }
                for r in 0..=nq1 {
                    for sidx in 0..=nq2 {
                        let want = th(&u, i, r) * th(&v, j, sidx);
                        assert!((a.get(row, r * (nq2 + 1) + sidx) - want).abs() <= 1e-14);
                    }
                }
                row += 1;
            }
        }
    }
}

#[test]
fn kernel_residual_on_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(301);
    for trial in 0..500 {
        let cols = rng.gen_range(1..=12);
        let rows = rng.gen_range(0..=cols + 3);
        let a = if trial % 3 == 0 && rows > 0 {
            // low-rank product
            let k = rng.gen_range(1..=cols);
            let l = random_vec(&mut rng, rows * k);
            let r = random_vec(&mut rng, k * cols);
            let mut e = vec![0.0; rows * cols];
            for i in 0..rows {
                for j in 0..cols {
                    e[i * cols + j] = (0..k).map(|t| l[i * k + t] * r[t * cols + j]).sum();
                }
            }
            DenseMatrix::new(rows, cols, e).unwrap()
        } else {
            DenseMatrix::new(rows, cols, random_vec(&mut rng, rows * cols)).unwrap()
        };
        let k = kernel_basis(&a, None).unwrap();
        if rows < cols {
            assert!(!k.basis.is_empty());
        }
        assert_eq!(k.basis.len(), cols - k.numerical_rank);
        for v in &k.basis {
            assert!((norm(v) - 1.0).abs() <= 1e-12);
            let r = norm(&a.mul_vec(v).unwrap());
            assert!(r <= 10.0 * k.rank_tolerance.max(f64::MIN_POSITIVE), "trial {trial}: {r} vs {}", k.rank_tolerance);
        }
        assert_eq!(k, kernel_basis(&a, None).unwrap());
    }
}

#[test]
fn solved_denominator_residual() {
    let mut rng = ChaCha8Rng::seed_from_u64(302);
    for _ in 0..200 {
        let o = random_order_1d(&mut rng);
        let s = ChebyshevSeries1D::new(random_vec(&mut rng, o.series_degree() + 1), Interval::reference(), 64).unwrap();
        let a = assemble_denominator_system(&s, o).unwrap();
        let q = solve_denominator(&a, None).unwrap();
        let a_norm = kernel_basis(&a, None).unwrap().norm();
        assert!(norm(&a.mul_vec(&q).unwrap()) <= 1e-10 * a_norm * norm(&q));
    }
}

#[test]
fn constant_denominator_equivalence_1d() {
    let mut rng = ChaCha8Rng::seed_from_u64(401);
    for _ in 0..20 {
        let f = SmoothFn::random(&mut rng);
        let o = random_order_1d(&mut rng);
        let i = Interval::new(-2.0, 0.5).unwrap();
        let s = cheb_coeffs_1d(&|x| f.eval(x), i, o.series_degree(), 48).unwrap();
        let mut q = vec![0.0; o.nq() + 1];
        q[0] = 1.0;
        let r = RationalCheb1D::new(compute_numerator(&s, &q, o).unwrap(), q, i).unwrap();
        let t = s.truncated(o.np());
        for l in 0..1000 {
            let x = i.a() + i.width() * l as f64 / 999.0;
            assert!((r.eval(x).unwrap().value - t.eval(x).unwrap()).abs() <= 1e-14);
        }
    }
}

#[test]
fn constant_denominator_equivalence_2d() {
    let mut rng = ChaCha8Rng::seed_from_u64(402);
    for _ in 0..20 {
        let (fx, fy) = (SmoothFn::random(&mut rng), SmoothFn::random(&mut rng));
        let o = random_order_2d(&mut rng);
        let rect = Rect::new(Interval::new(0.0, 1.0).unwrap(), Interval::new(-3.0, -1.0).unwrap());
        let f = |x: f64, y: f64| fx.eval(x) * fy.eval(y) + x * y;
        let s = cheb_coeffs_2d(&f, rect, o.series_degrees(), (24, 24)).unwrap();
        let mut q = vec![0.0; o.denominator_len()];
        q[0] = 1.0;
        let (np1, np2) = o.np();
        let (nq1, nq2) = o.nq();
        let p = compute_numerator_2d(&s, &q, o).unwrap();
        let r = RationalCheb2D::new(p, (np1 + 1, np2 + 1), q, (nq1 + 1, nq2 + 1), rect).unwrap();
        let t = s.truncated(np1, np2);
        for _ in 0..1000 {
            let (x, y) = (rng.gen_range(0.0..=1.0), rng.gen_range(-3.0..=-1.0));
            assert!((r.eval(x, y).unwrap().value - t.eval(x, y).unwrap()).abs() <= 1e-14);
        }
    }
}

#[test]
fn unknown_count_bookkeeping() {
    let mut rng = ChaCha8Rng::seed_from_u64(403);
    for _ in 0..20 {
        let o = random_order_2d(&mut rng);
        let s = random_series_2d(&mut rng, o.series_degrees());
        let a = assemble_denominator_system_2d(&s, o).unwrap();
        let tau = o.numerator_len() + o.denominator_len();
        assert_eq!(a.rows() + o.numerator_len(), tau - 1);
        assert_eq!(a.cols(), o.denominator_len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn denominator_scaling_invariance_1d(seed in any::<u64>(), alpha in prop_oneof![-5.0f64..-0.2, 0.2f64..5.0]) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let o = random_order_1d(&mut rng);
        let s = ChebyshevSeries1D::new(random_vec(&mut rng, o.series_degree() + 1), Interval::reference(), 64).unwrap();
        let mut q = random_vec(&mut rng, o.nq() + 1);
        q[0] = 3.0 + q[0];
        let p = compute_numerator(&s, &q, o).unwrap();
        let qa: Vec<f64> = q.iter().map(|v| alpha * v).collect();
        let pa = compute_numerator(&s, &qa, o).unwrap();
        for (x, y) in p.iter().zip(&pa) {
            prop_assert!((alpha * x - y).abs() <= 1e-13 * (1.0 + y.abs()));
        }
        let r = RationalCheb1D::new(p, q, Interval::reference()).unwrap();
        let ra = RationalCheb1D::new(pa, qa, Interval::reference()).unwrap();
        for l in 0..200 {
            let x = -1.0 + l as f64 / 99.5;
            let (v, va) = (r.eval(x).unwrap().value, ra.eval(x).unwrap().value);
            prop_assert!((v - va).abs() <= 1e-13 * (1.0 + v.abs()));
        }
    }

    #[test]
    fn denominator_scaling_invariance_2d(seed in any::<u64>(), alpha in prop_oneof![-5.0f64..-0.2, 0.2f64..5.0]) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let o = random_order_2d(&mut rng);
        let s = random_series_2d(&mut rng, o.series_degrees());
        let mut q = random_vec(&mut rng, o.denominator_len());
        q[0] = 10.0;
        let p = compute_numerator_2d(&s, &q, o).unwrap();
        let qa: Vec<f64> = q.iter().map(|v| alpha * v).collect();
        let pa = compute_numerator_2d(&s, &qa, o).unwrap();
        for (x, y) in p.iter().zip(&pa) {
            prop_assert!((alpha * x - y).abs() <= 1e-13 * (1.0 + y.abs()));
        }
        let ps = (o.np().0 + 1, o.np().1 + 1);
        let qs = (o.nq().0 + 1, o.nq().1 + 1);
        let r = RationalCheb2D::new(p, ps, q, qs, Rect::reference()).unwrap();
        let ra = RationalCheb2D::new(pa, ps, qa, qs, Rect::reference()).unwrap();
        for _ in 0..100 {
            let (x, y) = (rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
            let (v, va) = (r.eval(x, y).unwrap().value, ra.eval(x, y).unwrap().value);
            prop_assert!((v - va).abs() <= 1e-13 * (1.0 + v.abs()));
        }
    }

    #[test]
    fn exact_rational_recovery_1d(
        np in 1usize..=4,
        nq in 1usize..=2,
        p_star in prop::collection::vec(-1.0f64..1.0, 5),
        q_tail in prop::collection::vec(-0.3f64..0.3, 2),
    ) {
        prop_assume!(np >= nq);
        let p_star = &p_star[..=np];
        let mut q_star = vec![1.0];
        q_star.extend_from_slice(&q_tail[..nq]);
        let f = |t: f64| plain_direct(p_star, t) / plain_direct(&q_star, t);
        let o = PadeOrder1D::new(np, nq).unwrap();
        let s = cheb_coeffs_1d(&f, Interval::reference(), o.series_degree(), 64).unwrap();
        let k = kernel_basis(&assemble_denominator_system(&s, o).unwrap(), None).unwrap();
        let sv = &k.singular_values;
        // full rank nq, with a clear gap
        prop_assume!(k.numerical_rank == nq && sv[nq - 1] > 1e-6 * sv[0]);
        let r = build_pade_1d(&f, Interval::reference(), o, 64).unwrap();
        for l in 0..1000 {
            let x = -1.0 + 2.0 * l as f64 / 999.0;
            prop_assert!((r.eval(x).unwrap().value - f(x)).abs() <= 1e-8, "x={}", x);
        }
    }
}
