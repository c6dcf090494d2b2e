//! Torsion 2-form, Hodge Laplacian, the θ infinitesimal action, Ricci and Q
//! operators of a closed G2-structure on a nilpotent Lie algebra.
//!
//! The Q operator is computed two independent ways — the curvature formula
//! Q = Ric − (1/12)tr(τ²)I + (1/2)τ², and the linear solve θ(Q)ψ = Δψψ over
//! metric-symmetric operators — and the two must agree.

use crate::error::{Error, Result};
use crate::exterior::{basis_masks, mask_indices, KForm, Vector, DIM};
use crate::liealg::{basis_pairs, LieAlgebra};
use crate::matrix::{solve_linear, Matrix};
use crate::metric::{hodge_star, metric_volume, MetricData};
use crate::scalar::{Mode, Scalar};

#[derive(Clone, Debug)]
pub struct TorsionData {
    /// Intrinsic torsion 2-form τ = −∗d∗ψ.
    pub tau: KForm,
    /// Skew-symmetric operator with τ(X, Y) = ⟨τ_op X, Y⟩_ψ.
    pub tau_op: Matrix,
    /// Hodge Laplacian Δψψ; equals dτ for closed ψ.
    pub laplacian: KForm,
    /// Metric the computation ran under (mode may have degraded to float).
    pub metric: MetricData,
}

#[derive(Clone, Debug)]
pub struct CurvatureData {
    /// Ricci operator of the left-invariant metric.
    pub ric: Matrix,
    /// Scalar curvature tr(Ric).
    pub scalar_curvature: Scalar,
    /// The unique symmetric operator with θ(Q)ψ = Δψψ.
    pub q: Matrix,
    /// Pinching invariant R² / tr(Ric²); `None` for flat metrics.
    pub pinching: Option<Scalar>,
}

fn float_norm(a: &KForm) -> f64 {
    a.norm_f64()
}

/// Bring algebra and form into the metric's mode (exact may degrade to float
/// when the volume normalization leaves the field).
fn aligned(g: &LieAlgebra, psi: &KForm, m: &MetricData) -> (LieAlgebra, KForm) {
    if m.mode == Mode::Float && psi.mode() == Mode::Exact {
        (g.to_float(), psi.to_float())
    } else {
        (g.clone(), psi.clone())
    }
}

/// Hodge Laplacian Δψ = ∗d∗dψ − d∗d∗ψ of a positive 3-form.
pub fn laplacian(g: &LieAlgebra, psi: &KForm) -> Result<KForm> {
    let m = metric_volume(psi)?;
    let (g, psi) = aligned(g, psi, &m);
    Ok(laplacian_with_metric(&g, &psi, &m))
}

fn laplacian_with_metric(g: &LieAlgebra, psi: &KForm, m: &MetricData) -> KForm {
    let first = hodge_star(m, &g.ce_d(&hodge_star(m, &g.ce_d(psi))));
    let second = g.ce_d(&hodge_star(m, &g.ce_d(&hodge_star(m, psi))));
    first.sub(&second)
}

/// Torsion data of a closed positive 3-form.
pub fn torsion(g: &LieAlgebra, psi: &KForm) -> Result<TorsionData> {
    let d_psi = g.ce_d(psi);
    let closed = match psi.mode() {
        Mode::Exact => d_psi.is_zero(),
        Mode::Float => float_norm(&d_psi) <= 1e-9 * float_norm(psi).max(1.0),
    };
    if !closed {
        return Err(Error::NotClosed);
    }
    let m = metric_volume(psi)?;
    let (g, psi) = aligned(g, psi, &m);
    let tau = hodge_star(&m, &g.ce_d(&hodge_star(&m, &psi))).neg();
    let laplacian = laplacian_with_metric(&g, &psi, &m);
    // dτ = Δψψ for closed ψ
    let d_tau = g.ce_d(&tau);
    match m.mode {
        Mode::Exact => debug_assert_eq!(d_tau, laplacian),
        Mode::Float => debug_assert!(
            float_norm(&d_tau.sub(&laplacian)) <= 1e-8 * float_norm(&laplacian).max(1.0)
        ),
    }
    let tau_op = tau_operator(&m, &tau);
    Ok(TorsionData {
        tau,
        tau_op,
        laplacian,
        metric: m,
    })
}

/// Operator of a 2-form under the metric: τ(X,Y) = ⟨τ_op X, Y⟩.
fn tau_operator(m: &MetricData, tau: &KForm) -> Matrix {
    let mode = m.mode;
    let mut t = Matrix::zeros(DIM, DIM, mode);
    for (mask, c) in tau.terms() {
        let idx = mask_indices(mask);
        let (i, j) = (idx[0] - 1, idx[1] - 1);
        t.set(i, j, c.clone());
        t.set(j, i, -c);
    }
    // ⟨M X, Y⟩ = τ(X, Y) for all X, Y gives Mᵀ g = T, hence M = g⁻¹ Tᵀ.
    m.gram_inv.matmul(&t.transpose())
}

/// θ(A)ψ = −ψ(A·,·,·) − ψ(·,A·,·) − ψ(·,·,A·), computed on the form side by
/// substituting indices of basis forms.
pub fn theta(a_op: &Matrix, psi: &KForm) -> KForm {
    let k = psi.degree();
    let mode = psi.mode();
    let mut out = KForm::zero(k, mode);
    for (t_mask, coeff) in psi.terms() {
        let idx = mask_indices(t_mask);
        for &tp in &idx {
            let rest = t_mask & !(1u8 << (tp - 1));
            let p = (rest & ((1u8 << (tp - 1)) - 1)).count_ones();
            for mth in 1..=DIM {
                let bit = 1u8 << (mth - 1);
                if rest & bit != 0 {
                    continue;
                }
                let a_entry = a_op.get(tp - 1, mth - 1);
                if a_entry.is_zero() {
                    continue;
                }
                let q = (rest & (bit - 1)).count_ones();
                let new_mask = rest | bit;
                let mut term = coeff * a_entry;
                if (p + q) % 2 == 1 {
                    term = -term;
                }
                let cur = out.coeff(new_mask) - &term;
                out.set_coeff(new_mask, cur);
            }
        }
    }
    out
}

/// Ricci operator of the left-invariant metric, from the structure constants
/// and the metric Gram matrix.
///
/// The bilinear form is the standard nilmanifold expression
/// `⟨Ric X, Y⟩ = −(1/2) Σ ⟨[X,f_i],f_j⟩⟨[Y,f_i],f_j⟩ + (1/4) Σ ⟨[f_i,f_j],X⟩⟨[f_i,f_j],Y⟩`
/// over an orthonormal frame, evaluated here in its polarized form with
/// metric contractions so no orthonormalization (and no square root) is
/// ever required.
pub fn ricci(g: &LieAlgebra, m: &MetricData) -> Matrix {
    let mode = m.mode;
    let gram = &m.gram;
    let ginv = &m.gram_inv;
    // V[a][i] = [e_{a+1}, e_{i+1}] and GV = gram · V
    let v: Vec<Vec<Vector>> = (1..=DIM)
        .map(|a| (1..=DIM).map(|i| g.bracket_basis(a, i)).collect())
        .collect();
    let gv: Vec<Vec<Vec<Scalar>>> = v
        .iter()
        .map(|row| row.iter().map(|vec| gram.mul_vec(&vec.0)).collect())
        .collect();
    // P[b][i] = Σ_{i'} ginv_{i i'} (G V[b][i'])
    let p: Vec<Vec<Vec<Scalar>>> = (0..DIM)
        .map(|b| {
            (0..DIM)
                .map(|i| {
                    let mut acc = vec![Scalar::zero(mode); DIM];
                    for ip in 0..DIM {
                        let w = ginv.get(i, ip);
                        if w.is_zero() {
                            continue;
                        }
                        for (slot, accval) in acc.iter_mut().enumerate() {
                            *accval += &(w * &gv[b][ip][slot]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let dot = |x: &[Scalar], y: &Vector| -> Scalar {
        let mut acc = Scalar::zero(mode);
        for k in 0..DIM {
            acc += &(&x[k] * &y.0[k]);
        }
        acc
    };
    // term2 contraction S[i][j] against T[i][j] where T[i][j][a] = (G[e_i,e_j])_a
    // S[i][j][b] = Σ_{i',j'} ginv_{ii'} ginv_{jj'} T[i'][j'][b]
    let t_of = |i: usize, j: usize| -> &Vec<Scalar> { &gv[i][j] };
    let mut s = vec![vec![vec![Scalar::zero(mode); DIM]; DIM]; DIM];
    // first contract j'
    let mut half = vec![vec![vec![Scalar::zero(mode); DIM]; DIM]; DIM];
    for ip in 0..DIM {
        for j in 0..DIM {
            for jp in 0..DIM {
                let w = ginv.get(j, jp);
                if w.is_zero() {
                    continue;
                }
                for b in 0..DIM {
                    let tv = &t_of(ip, jp)[b];
                    if !tv.is_zero() {
                        half[ip][j][b] += &(w * tv);
                    }
                }
            }
        }
    }
    for i in 0..DIM {
        for j in 0..DIM {
            for ip in 0..DIM {
                let w = ginv.get(i, ip);
                if w.is_zero() {
                    continue;
                }
                for b in 0..DIM {
                    let hv = &half[ip][j][b];
                    if !hv.is_zero() {
                        s[i][j][b] += &(w * hv);
                    }
                }
            }
        }
    }
    let half_s = match mode {
        Mode::Exact => Scalar::from_ratio(1, 2),
        Mode::Float => Scalar::float(0.5),
    };
    let quarter = match mode {
        Mode::Exact => Scalar::from_ratio(1, 4),
        Mode::Float => Scalar::float(0.25),
    };
    let ric_bilinear = Matrix::from_fn(DIM, DIM, |a, b| {
        let mut t1 = Scalar::zero(mode);
        for i in 0..DIM {
            t1 += &dot(&p[b][i], &v[a][i]);
        }
        let mut t2 = Scalar::zero(mode);
        for i in 0..DIM {
            for j in 0..DIM {
                let ta = &t_of(i, j)[a];
                if ta.is_zero() {
                    continue;
                }
                t2 += &(ta * &s[i][j][b]);
            }
        }
        &(-&(&half_s * &t1)) + &(&quarter * &t2)
    });
    m.gram_inv.matmul(&ric_bilinear)
}

/// Curvature data with the Q operator computed along both routes.
pub fn q_operator(g: &LieAlgebra, psi: &KForm) -> Result<CurvatureData> {
    let td = torsion(g, psi)?;
    q_operator_from(g, psi, &td)
}

/// Q operator from precomputed torsion data.
pub fn q_operator_from(g: &LieAlgebra, psi: &KForm, td: &TorsionData) -> Result<CurvatureData> {
    let m = &td.metric;
    let (g, psi) = aligned(g, psi, m);
    let mode = m.mode;
    let ric = ricci(&g, m);
    let t2 = td.tau_op.matmul(&td.tau_op);
    let twelfth = match mode {
        Mode::Exact => Scalar::from_ratio(1, 12),
        Mode::Float => Scalar::float(1.0 / 12.0),
    };
    let half = match mode {
        Mode::Exact => Scalar::from_ratio(1, 2),
        Mode::Float => Scalar::float(0.5),
    };
    let q_formula = ric
        .sub(&Matrix::identity(DIM, mode).scale(&(&twelfth * &t2.trace())))
        .add(&t2.scale(&half));
    let q_solved = solve_q_theta(&g, &psi, m, &td.laplacian)?;
    let agree = match mode {
        Mode::Exact => q_formula == q_solved,
        Mode::Float => {
            let diff = q_formula.sub(&q_solved);
            diff.max_abs_f64() <= 1e-9 * q_formula.max_abs_f64().max(1.0)
        }
    };
    if !agree {
        return Err(Error::QSolveInconsistent);
    }
    let scalar_curvature = ric.trace();
    let ric_sq_trace = ric.matmul(&ric).trace();
    let pinching = if ric_sq_trace.is_zero() {
        None
    } else {
        let p = &(&scalar_curvature * &scalar_curvature) / &ric_sq_trace;
        // R²/tr(Ric²) ≤ 7 by Cauchy–Schwarz in dimension 7
        debug_assert!({
            let seven = match mode {
                Mode::Exact => Scalar::from_int(7),
                Mode::Float => Scalar::float(7.0),
            };
            !p.is_negative() && !(&p - &seven).is_positive()
        });
        Some(p)
    };
    Ok(CurvatureData {
        ric,
        scalar_curvature,
        q: q_formula,
        pinching,
    })
}

/// Solve θ(Q)ψ = Δψψ for the unique ⟨,⟩_ψ-symmetric operator Q.
fn solve_q_theta(g: &LieAlgebra, psi: &KForm, m: &MetricData, delta: &KForm) -> Result<Matrix> {
    let _ = g;
    let mode = m.mode;
    // Parametrize Q = g⁻¹ S with S symmetric: 28 unknowns.
    let sym_basis: Vec<Matrix> = {
        let mut out = Vec::with_capacity(28);
        for i in 0..DIM {
            for j in i..DIM {
                let mut s = Matrix::zeros(DIM, DIM, mode);
                s.set(i, j, Scalar::one(mode));
                if i != j {
                    s.set(j, i, Scalar::one(mode));
                }
                out.push(s);
            }
        }
        out
    };
    let columns: Vec<KForm> = sym_basis
        .iter()
        .map(|s| theta(&m.gram_inv.matmul(s), psi))
        .collect();
    let rows = basis_masks(3).len();
    let sys = Matrix::from_fn(rows, columns.len(), |r, c| columns[c].coeffs()[r].clone());
    let rhs: Vec<Scalar> = delta.coeffs().to_vec();
    let out = solve_linear(&sys, &rhs)?;
    let coords = match out.particular {
        Some(x) => x,
        None => return Err(Error::QSolveInconsistent),
    };
    if !out.nullspace.is_empty() && mode == Mode::Exact {
        return Err(Error::QSolveInconsistent);
    }
    let mut s_total = Matrix::zeros(DIM, DIM, mode);
    for (c, basis) in coords.iter().zip(&sym_basis) {
        if !c.is_zero() {
            s_total = s_total.add(&basis.scale(c));
        }
    }
    Ok(m.gram_inv.matmul(&s_total))
}

/// Basis pairs helper re-exported for tests.
pub fn all_basis_pairs() -> Vec<(usize, usize)> {
    basis_pairs().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::liealg::lie_derivative;
    use std::collections::BTreeMap;

    fn s(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    fn entry(name: &str, params: &[(&str, &str)]) -> (LieAlgebra, KForm) {
        let params: BTreeMap<String, Scalar> =
            params.iter().map(|(k, v)| (k.to_string(), s(v))).collect();
        let e = catalog::get(name, &params, Mode::Exact).unwrap();
        (e.algebra, e.form.unwrap())
    }

    #[test]
    fn abelian_laplacian_vanishes() {
        let g = LieAlgebra::new("n1", &[], BTreeMap::new()).unwrap();
        let phi0 = catalog::phi0(Mode::Exact);
        assert!(laplacian(&g, &phi0).unwrap().is_zero());
    }

    #[test]
    fn n3_laplacian_matches_closed_formula() {
        // Δφ₃ = 2(b²+c²+bc)e^{123} on the closedness locus a = b+c
        let (g, phi) = entry("n3", &[("a", "7/4"), ("b", "5/4"), ("c", "1/2")]);
        let delta = laplacian(&g, &phi).unwrap();
        // 2(25/16 + 1/4 + 5/8) = 39/8
        let want = KForm::from_terms(3, &[(&[1, 2, 3], s("39/8"))]).unwrap();
        assert_eq!(delta, want);
    }

    #[test]
    fn n4_laplacian_matches_table() {
        let (g, phi) = entry(
            "n4",
            &[("a", "sqrt2"), ("b", "1"), ("c", "sqrt2"), ("d", "1")],
        );
        let delta = laplacian(&g, &phi).unwrap();
        let want = KForm::from_terms(
            3,
            &[
                (&[1, 2, 4], s("-4")),
                (&[1, 3, 5], s("2")),
                (&[2, 4, 5], s("sqrt2")),
                (&[1, 2, 7], s("sqrt2")),
            ],
        )
        .unwrap();
        assert_eq!(delta, want);
    }

    #[test]
    fn torsion_requires_closed_input() {
        let (g, phi) = entry("n3", &[("a", "1"), ("b", "1"), ("c", "1")]);
        assert!(matches!(torsion(&g, &phi), Err(Error::NotClosed)));
    }

    #[test]
    fn n2_torsion_matches_table() {
        let (g, phi) = entry("n2", &[("a", "1"), ("b", "1")]);
        let td = torsion(&g, &phi).unwrap();
        let want = KForm::from_terms(2, &[(&[3, 5], s("-1")), (&[2, 6], s("1"))]).unwrap();
        assert_eq!(td.tau, want);
        assert_eq!(g.ce_d(&td.tau), td.laplacian);
    }

    #[test]
    fn n6_torsion_matches_table() {
        let (g, phi) = entry(
            "n6",
            &[("a", "sqrt2"), ("b", "sqrt2"), ("c", "1"), ("d", "1")],
        );
        let td = torsion(&g, &phi).unwrap();
        let want = KForm::from_terms(
            2,
            &[
                (&[3, 4], s("-sqrt2")),
                (&[2, 5], s("sqrt2")),
                (&[5, 6], s("-1")),
                (&[4, 7], s("1")),
            ],
        )
        .unwrap();
        assert_eq!(td.tau, want);
    }

    #[test]
    fn tau_operator_represents_tau() {
        let (g, phi) = entry(
            "n4",
            &[("a", "sqrt2"), ("b", "1"), ("c", "sqrt2"), ("d", "1")],
        );
        let td = torsion(&g, &phi).unwrap();
        // τ(e_i, e_j) = ⟨τ_op e_i, e_j⟩ with the metric Gram matrix
        let m = &td.metric;
        for (i, j) in all_basis_pairs() {
            let col: Vec<Scalar> = (0..DIM).map(|r| td.tau_op.get(r, i - 1).clone()).collect();
            let gcol = m.gram.mul_vec(&col);
            let mask = crate::exterior::indices_to_mask(&[i, j]).unwrap();
            assert_eq!(&gcol[j - 1], td.tau.coeff(mask), "mismatch at ({i},{j})");
        }
        // antisymmetry with respect to the metric
        let gm = m.gram.matmul(&td.tau_op);
        assert_eq!(gm.transpose(), gm.neg());
    }

    #[test]
    fn theta_of_identity_scales() {
        let phi0 = catalog::phi0(Mode::Exact);
        let id = Matrix::identity(7, Mode::Exact);
        assert_eq!(theta(&id, &phi0), phi0.scale(&s("-3")));
        let zero = Matrix::zeros(7, 7, Mode::Exact);
        assert!(theta(&zero, &phi0).is_zero());
    }

    #[test]
    fn theta_is_minus_lie_derivative() {
        let (_, phi) = entry("n3", &[("a", "2"), ("b", "1"), ("c", "1")]);
        let mut a = Matrix::zeros(7, 7, Mode::Exact);
        a.set(0, 1, s("2"));
        a.set(3, 3, s("-1/2"));
        a.set(6, 2, s("sqrt3"));
        a.set(4, 4, s("1"));
        assert_eq!(theta(&a, &phi), lie_derivative(&phi, &a).neg());
    }

    #[test]
    fn n3_ricci_matches_reference_diagonal() {
        // Ric = ½ Diag(−a²−b², −a²−c², −b²−c², a², b², c², 0)
        let (g, phi) = entry("n3", &[("a", "2"), ("b", "3/2"), ("c", "1/2")]);
        let m = metric_volume(&phi).unwrap();
        let ric = ricci(&g, &m);
        let want = Matrix::diag(&[
            s("-25/8"),
            s("-17/8"),
            s("-5/4"),
            s("2"),
            s("9/8"),
            s("1/8"),
            s("0"),
        ]);
        assert_eq!(ric, want);
    }

    #[test]
    fn n2_ricci_and_curvature() {
        let (g, phi) = entry("n2", &[("a", "1"), ("b", "1")]);
        let cd = q_operator(&g, &phi).unwrap();
        let want_ric = Matrix::diag(&[
            s("-1"),
            s("-1/2"),
            s("-1/2"),
            s("0"),
            s("1/2"),
            s("1/2"),
            s("0"),
        ]);
        assert_eq!(cd.ric, want_ric);
        assert_eq!(cd.scalar_curvature, s("-1"));
        assert_eq!(cd.pinching.unwrap(), s("1/2"));
        // Q = (1/3) Diag(−2,−2,−2,1,1,1,1)
        let want_q = Matrix::diag(&[
            s("-2/3"),
            s("-2/3"),
            s("-2/3"),
            s("1/3"),
            s("1/3"),
            s("1/3"),
            s("1/3"),
        ]);
        assert_eq!(cd.q, want_q);
    }

    #[test]
    fn abelian_ricci_is_zero() {
        let g = LieAlgebra::new("n1", &[], BTreeMap::new()).unwrap();
        let phi0 = catalog::phi0(Mode::Exact);
        let m = metric_volume(&phi0).unwrap();
        assert!(ricci(&g, &m).is_zero());
        let cd = q_operator(&g, &phi0).unwrap();
        assert!(cd.pinching.is_none());
        assert!(cd.q.is_zero());
    }

    #[test]
    fn n3_q_matches_reference_formula() {
        // Q = ((a²+b²+c²)/6) Diag(−2,−2,−2,1,1,1,1)
        let (g, phi) = entry("n3", &[("a", "2"), ("b", "1"), ("c", "1")]);
        let cd = q_operator(&g, &phi).unwrap();
        let f = s("1"); // (4+1+1)/6 = 1
        let want = Matrix::diag(&[
            -&(&f * &s("2")),
            -&(&f * &s("2")),
            -&(&f * &s("2")),
            f.clone(),
            f.clone(),
            f.clone(),
            f.clone(),
        ]);
        assert_eq!(cd.q, want);
    }
}
