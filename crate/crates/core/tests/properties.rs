//! Randomized invariant suites for the arithmetic, exterior-algebra and
//! Lie-algebra layers, plus the float-oracle cross-checks.

use std::collections::BTreeMap;

use g2lap_core::catalog;
use g2lap_core::exterior::{basis_masks, gl_act, KForm, DIM};
use g2lap_core::flow::integrate;
use g2lap_core::liealg::LieAlgebra;
use g2lap_core::matrix::{solve_linear, Matrix};
use g2lap_core::metric::{hodge_star, metric_volume};
use g2lap_core::sampling::SampleRng;
use g2lap_core::scalar::{Mode, Scalar};
use g2lap_core::torsion::q_operator;

fn s(text: &str) -> Scalar {
    text.parse().unwrap()
}

#[test]
fn field_axioms_on_random_elements() {
    let mut rng = SampleRng::new(1);
    for _ in 0..1000 {
        let a = rng.scalar();
        let b = rng.scalar();
        let c = rng.scalar();
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        assert_eq!(&a + &b, &b + &a);
        if !b.is_zero() {
            let q = &a / &b;
            assert_eq!(&q * &b, a);
        }
    }
}

#[test]
fn float_images_track_exact_arithmetic() {
    let mut rng = SampleRng::new(2);
    for _ in 0..500 {
        let a = rng.scalar();
        let b = rng.scalar();
        let sum = (&a + &b).to_f64();
        let prod = (&a * &b).to_f64();
        let fa = a.to_f64();
        let fb = b.to_f64();
        assert!((sum - (fa + fb)).abs() <= 1e-12 * (1.0 + sum.abs()));
        assert!((prod - fa * fb).abs() <= 1e-12 * (1.0 + prod.abs()));
    }
}

#[test]
fn solver_inverts_random_invertible_systems() {
    let mut rng = SampleRng::new(3);
    for _ in 0..40 {
        let a = rng.invertible_matrix();
        let x: Vec<Scalar> = (0..DIM).map(|_| rng.scalar()).collect();
        let b = a.mul_vec(&x);
        let out = solve_linear(&a, &b).unwrap();
        assert_eq!(out.particular.unwrap(), x);
        assert!(out.nullspace.is_empty());
    }
}

#[test]
fn wedge_is_graded_anticommutative_and_associative() {
    // all basis pairs
    for ka in 0..=3usize {
        for kb in 0..=3usize {
            for &ma in basis_masks(ka).iter().take(8) {
                for &mb in basis_masks(kb).iter().take(8) {
                    let a = KForm::basis(ma, Mode::Exact);
                    let b = KForm::basis(mb, Mode::Exact);
                    let ab = a.wedge(&b);
                    let ba = b.wedge(&a);
                    let expect = if (ka * kb) % 2 == 1 { ba.neg() } else { ba };
                    assert_eq!(ab, expect);
                }
            }
        }
    }
    // 200 random triples
    let mut rng = SampleRng::new(4);
    for k in 0..200 {
        let ka = k % 3;
        let kb = (k / 3) % 3;
        let kc = (k / 9) % 3;
        let a = rng.kform(ka);
        let b = rng.kform(kb);
        let c = rng.kform(kc);
        assert_eq!(a.wedge(&b.wedge(&c)), a.wedge(&b).wedge(&c));
        let ab = a.wedge(&b);
        let ba = b.wedge(&a);
        let expect = if (ka * kb) % 2 == 1 { ba.neg() } else { ba };
        assert_eq!(ab, expect);
    }
}

#[test]
fn interior_product_is_an_antiderivation() {
    let mut rng = SampleRng::new(5);
    for k in 0..60 {
        let ka = 1 + k % 3;
        let kb = 1 + (k / 3) % 3;
        let a = rng.kform(ka);
        let b = rng.kform(kb);
        let x = rng.vector();
        let lhs = a.wedge(&b).interior(&x).unwrap();
        let mut rhs = a.interior(&x).unwrap().wedge(&b);
        let second = a.wedge(&b.interior(&x).unwrap());
        rhs = if ka % 2 == 1 {
            rhs.sub(&second)
        } else {
            rhs.add(&second)
        };
        assert_eq!(lhs, rhs, "Leibniz at degrees ({ka},{kb})");
        // iota_x o iota_x = 0
        let twice = a.interior(&x).unwrap();
        if twice.degree() > 0 {
            assert!(twice.interior(&x).unwrap().is_zero());
        }
    }
}

#[test]
fn gl_action_distributes_over_wedge() {
    let mut rng = SampleRng::new(6);
    for k in 0..30 {
        let h = rng.invertible_matrix();
        let a = rng.kform(1 + k % 3);
        let b = rng.kform(1 + (k / 3) % 2);
        let lhs = gl_act(&h, &a.wedge(&b)).unwrap();
        let rhs = gl_act(&h, &a).unwrap().wedge(&gl_act(&h, &b).unwrap());
        assert_eq!(lhs, rhs);
    }
}

/// Independent float oracle: dense Gaussian-elimination rank of the
/// derivation system, built directly from the bracket definition.
fn derivation_rank_float_oracle(g: &LieAlgebra) -> usize {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let bracket = |i: usize, j: usize| -> Vec<f64> {
        let v = g.bracket_basis(i, j);
        v.0.iter().map(|x| x.to_f64()).collect()
    };
    for i in 1..=DIM {
        for j in i + 1..=DIM {
            let cij = bracket(i, j);
            for k in 1..=DIM {
                let mut row = vec![0.0f64; DIM * DIM];
                for m in 1..=DIM {
                    row[(k - 1) * DIM + (m - 1)] += cij[m - 1];
                }
                for r in 1..=DIM {
                    row[(r - 1) * DIM + (i - 1)] -= bracket(r, j)[k - 1];
                    row[(r - 1) * DIM + (j - 1)] -= bracket(i, r)[k - 1];
                }
                rows.push(row);
            }
        }
    }
    // row reduction with partial pivoting
    let mut rank = 0usize;
    let n = DIM * DIM;
    let mut r0 = 0usize;
    for c in 0..n {
        let Some(p) = (r0..rows.len())
            .max_by(|&x, &y| rows[x][c].abs().partial_cmp(&rows[y][c].abs()).unwrap())
        else {
            break;
        };
        if rows[p][c].abs() < 1e-9 {
            continue;
        }
        rows.swap(r0, p);
        for r in 0..rows.len() {
            if r != r0 && rows[r][c].abs() > 0.0 {
                let f = rows[r][c] / rows[r0][c];
                for cc in c..n {
                    let upd = rows[r0][cc] * f;
                    rows[r][cc] -= upd;
                }
            }
        }
        rank += 1;
        r0 += 1;
    }
    rank
}

#[test]
fn derivation_dimension_matches_float_oracle() {
    for name in ["n2", "n3", "n4", "n5", "n6", "n7", "n8", "n10"] {
        let g = catalog::table_entry(name, Mode::Exact).unwrap().algebra;
        let exact_dim = g.derivation_space().dim();
        let oracle_dim = DIM * DIM - derivation_rank_float_oracle(&g);
        assert_eq!(exact_dim, oracle_dim, "{name}");
    }
    // the abelian algebra: every linear map is a derivation
    let abelian = LieAlgebra::new("n1", &[], BTreeMap::new()).unwrap();
    assert_eq!(abelian.derivation_space().dim(), 49);
}

#[test]
fn metric_of_diagonal_transport() {
    // psi = h·phi0 with h = Diag(2,1,…,1): Gram = h^{-T} h^{-1}, vol = 1/2
    let phi0 = catalog::phi0(Mode::Exact);
    let h = Matrix::diag(&[s("2"), s("1"), s("1"), s("1"), s("1"), s("1"), s("1")]);
    let psi = gl_act(&h, &phi0).unwrap();
    let m = metric_volume(&psi).unwrap();
    assert_eq!(m.mode, Mode::Exact);
    let want = Matrix::diag(&[s("1/4"), s("1"), s("1"), s("1"), s("1"), s("1"), s("1")]);
    assert_eq!(m.gram, want);
    assert_eq!(m.vol_coeff, s("1/2"));
    assert_eq!(m.orientation, 1);
    // metric transport form: h^T g' h = g
    assert_eq!(
        h.transpose().matmul(&m.gram).matmul(&h),
        Matrix::identity(7, Mode::Exact)
    );
}

#[test]
fn star_involution_on_random_float_positives() {
    let mut rng = SampleRng::new(7);
    let phi0 = catalog::phi0(Mode::Float);
    for k in 0..50 {
        // random float positive form: transport by a moderately conditioned
        // unimodular matrix
        let h = rng.unimodular_matrix().to_float();
        let psi = gl_act(&h, &phi0).unwrap();
        let m = metric_volume(&psi).unwrap();
        let deg = k % 8;
        let mut alpha = KForm::zero(deg, Mode::Float);
        for &mask in basis_masks(deg) {
            if rng.below(2) == 0 {
                alpha.set_coeff(mask, Scalar::float(rng.int_in(-3, 3) as f64 / 2.0));
            }
        }
        let twice = hodge_star(&m, &hodge_star(&m, &alpha));
        let err: f64 = twice
            .coeffs()
            .iter()
            .zip(alpha.coeffs())
            .map(|(x, y)| (x.to_f64() - y.to_f64()).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-9, "** deviates by {err:e} at degree {deg}");
    }
}

#[test]
fn scalar_curvature_negative_off_the_abelian_algebra() {
    for name in ["n2", "n3", "n4", "n5", "n6", "n7"] {
        let e = catalog::table_entry(name, Mode::Exact).unwrap();
        let cd = q_operator(&e.algebra, &e.form.unwrap()).unwrap();
        assert!(cd.scalar_curvature.is_negative(), "{name}");
    }
}

#[test]
fn expanding_solitons_flow_forward_without_losing_positivity() {
    for (name, pairs) in [
        ("n2", vec![("a", "1"), ("b", "1")]),
        (
            "n4",
            vec![("a", "sqrt2"), ("b", "1"), ("c", "sqrt2"), ("d", "1")],
        ),
        (
            "n7",
            vec![
                ("a", "-4"),
                ("b", "2"),
                ("c", "2"),
                ("d", "sqrt6"),
                ("e", "sqrt6"),
            ],
        ),
    ] {
        let params: BTreeMap<String, Scalar> =
            pairs.iter().map(|(k, v)| (k.to_string(), s(v))).collect();
        let e = catalog::get(name, &params, Mode::Exact).unwrap();
        let traj = integrate(&e.algebra, &e.form.unwrap(), 1.0, 2e-3).unwrap();
        assert_eq!(traj.samples.len(), 501, "{name}");
    }
}

#[test]
fn vector_and_interior_are_multilinear() {
    let mut rng = SampleRng::new(8);
    for _ in 0..40 {
        let a = rng.kform(3);
        let x = rng.vector();
        let y = rng.vector();
        let c = rng.scalar();
        let lin = a.interior(&x.add(&y.scale(&c))).unwrap();
        let split = a
            .interior(&x)
            .unwrap()
            .add(&a.interior(&y).unwrap().scale(&c));
        assert_eq!(lin, split);
    }
}
