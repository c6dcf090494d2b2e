//! Semi-algebraic Laplacian soliton decision procedure.
//!
//! A closed positive 3-form ψ on g is a semi-algebraic soliton when
//! Δψψ = λψ + L_{X_D}ψ for some λ and derivation D. With the derivation
//! space as coordinates this is a linear system — 35 equations in
//! 1 + dim Der(g) unknowns — solved exactly. The full affine solution set
//! is retained so reference derivations can be compared by membership
//! rather than by equality of representatives.

use crate::error::{Error, Result};
use crate::exterior::{gl_act, KForm, DIM};
use crate::liealg::{is_automorphism, lie_derivative, LieAlgebra};
use crate::matrix::{solve_linear, Matrix};
use crate::metric::{metric_volume, MetricData};
use crate::scalar::{Mode, Scalar};
use crate::torsion::{q_operator_from, torsion};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignClass {
    Expanding,
    Steady,
    Shrinking,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolitonClass {
    /// Some solution has its metric adjoint Dᵗ in Der(g).
    Algebraic,
    /// No solution in the affine set has Dᵗ ∈ Der(g).
    SemiAlgebraicOnly,
}

#[derive(Clone, Debug)]
pub struct SolitonSolution {
    /// λ of the canonical (minimal Frobenius norm D) representative.
    pub lambda: Scalar,
    /// Canonical derivation representative.
    pub derivation: Matrix,
    /// Dimension of the affine set of valid (λ, D).
    pub solution_space_dim: usize,
    pub classification: SolitonClass,
    pub sign_class: SignClass,
    /// ‖Δψψ − λψ − L_{X_D}ψ‖; exactly zero in exact mode.
    pub residual: Scalar,
    /// Q_ψ = −(λ/3)I − (D+Dᵗ)/2 verified against both Q routes.
    pub q_check: bool,
    pub mode: Mode,
    /// Particular solution of the linear system.
    pub particular: (Scalar, Matrix),
    /// Kernel directions spanning the solution set.
    pub nullspace: Vec<(Scalar, Matrix)>,
    /// Metric of ψ; fixes the adjoint used by the classification.
    pub metric: MetricData,
}

impl SolitonSolution {
    /// Is (λ, D) in the affine solution set?
    pub fn contains(&self, lambda: &Scalar, derivation: &Matrix) -> bool {
        self.membership(Some(lambda), derivation)
    }

    /// Is D the derivation of some solution? (λ is determined by D.)
    pub fn contains_derivation(&self, derivation: &Matrix) -> bool {
        self.membership(None, derivation)
    }

    fn membership(&self, lambda: Option<&Scalar>, derivation: &Matrix) -> bool {
        let rows = 1 + DIM * DIM;
        let cols = self.nullspace.len();
        let a = Matrix::from_fn(rows, cols, |r, c| {
            let (mu, n) = &self.nullspace[c];
            if r == 0 {
                match lambda {
                    Some(_) => mu.clone(),
                    None => Scalar::zero(self.mode),
                }
            } else {
                n.get((r - 1) / DIM, (r - 1) % DIM).clone()
            }
        });
        let mut rhs = Vec::with_capacity(rows);
        rhs.push(match lambda {
            Some(l) => l - &self.particular.0,
            None => Scalar::zero(self.mode),
        });
        for i in 0..DIM {
            for j in 0..DIM {
                rhs.push(derivation.get(i, j) - self.particular.1.get(i, j));
            }
        }
        match solve_linear(&a, &rhs) {
            Ok(out) => match self.mode {
                Mode::Exact => out.particular.is_some(),
                Mode::Float => {
                    // verify the residual of the least-squares reconstruction
                    out.particular.is_some_and(|x| {
                        let mut err: f64 = 0.0;
                        for (r, rv) in rhs.iter().enumerate() {
                            let mut acc = -rv.to_f64();
                            for (c, xv) in x.iter().enumerate() {
                                acc += a.get(r, c).to_f64() * xv.to_f64();
                            }
                            err = err.max(acc.abs());
                        }
                        err <= 1e-7
                    })
                }
            },
            Err(_) => false,
        }
    }
}

fn aligned(g: &LieAlgebra, psi: &KForm, m: &MetricData) -> (LieAlgebra, KForm) {
    if m.mode == Mode::Float && psi.mode() == Mode::Exact {
        (g.to_float(), psi.to_float())
    } else {
        (g.clone(), psi.clone())
    }
}

/// Decide the soliton equation Δψψ = λψ + L_{X_D}ψ over (λ, D ∈ Der(g)).
///
/// Returns `None` when the system is inconsistent (ψ is not a semi-algebraic
/// soliton); errors on non-closed or non-positive input.
pub fn solve_soliton(g: &LieAlgebra, psi: &KForm) -> Result<Option<SolitonSolution>> {
    let td = torsion(g, psi)?;
    let (g, psi) = aligned(g, psi, &td.metric);
    let mode = td.metric.mode;
    let der = g.derivation_space();
    let d = der.dim();
    let lie_cols: Vec<KForm> = der.basis.iter().map(|b| lie_derivative(&psi, b)).collect();
    let rows = psi.coeffs().len();
    let sys = Matrix::from_fn(rows, 1 + d, |r, c| {
        if c == 0 {
            psi.coeffs()[r].clone()
        } else {
            lie_cols[c - 1].coeffs()[r].clone()
        }
    });
    let rhs: Vec<Scalar> = td.laplacian.coeffs().to_vec();
    let out = solve_linear(&sys, &rhs)?;
    let Some(part) = out.particular else {
        return Ok(None);
    };
    let assemble = |coords: &[Scalar]| -> (Scalar, Matrix) {
        let lambda = coords[0].clone();
        let mut dm = Matrix::zeros(DIM, DIM, mode);
        for (i, b) in der.basis.iter().enumerate() {
            let c = &coords[1 + i];
            if !c.is_zero() {
                dm = dm.add(&b.scale(c));
            }
        }
        (lambda, dm)
    };
    let particular = assemble(&part);
    let nullspace: Vec<(Scalar, Matrix)> = out.nullspace.iter().map(|v| assemble(v)).collect();

    // canonical representative: minimal Frobenius norm D over the affine set
    let (lambda, derivation) = if nullspace.is_empty() {
        particular.clone()
    } else {
        let k = nullspace.len();
        let gram = Matrix::from_fn(k, k, |i, j| nullspace[i].1.frobenius_dot(&nullspace[j].1));
        let rhs_min: Vec<Scalar> = (0..k)
            .map(|i| -&particular.1.frobenius_dot(&nullspace[i].1))
            .collect();
        let t = solve_linear(&gram, &rhs_min)?
            .particular
            .ok_or_else(|| Error::Internal("minimum-norm normal equations inconsistent".into()))?;
        let mut lam = particular.0.clone();
        let mut dm = particular.1.clone();
        for (ti, (mu, n)) in t.iter().zip(&nullspace) {
            if !ti.is_zero() {
                lam += &(ti * mu);
                dm = dm.add(&n.scale(ti));
            }
        }
        (lam, dm)
    };

    // exact residual must vanish; float residual is recorded
    let recon = psi.scale(&lambda).add(&lie_derivative(&psi, &derivation));
    let resid_form = td.laplacian.sub(&recon);
    let residual = match mode {
        Mode::Exact => {
            debug_assert!(resid_form.is_zero());
            Scalar::zero(Mode::Exact)
        }
        Mode::Float => Scalar::float(resid_form.norm_f64()),
    };

    let sign_class = sign_class_of(&lambda, mode);
    let classification = classify_affine_set(&g, &td.metric, &der.basis, &sys, &rhs)?;

    // cross-validate: Q = −(λ/3)I − (D + Dᵗ)/2 against both Q routes
    let cd = q_operator_from(&g, &psi, &td)?;
    let third = match mode {
        Mode::Exact => Scalar::from_ratio(1, 3),
        Mode::Float => Scalar::float(1.0 / 3.0),
    };
    let half = match mode {
        Mode::Exact => Scalar::from_ratio(1, 2),
        Mode::Float => Scalar::float(0.5),
    };
    let q_expected = Matrix::identity(DIM, mode)
        .scale(&(-&(&third * &lambda)))
        .sub(&derivation.add(&derivation.transpose()).scale(&half));
    let q_check = match mode {
        Mode::Exact => cd.q == q_expected,
        Mode::Float => cd.q.sub(&q_expected).max_abs_f64() <= 1e-9 * cd.q.max_abs_f64().max(1.0),
    };

    Ok(Some(SolitonSolution {
        lambda,
        derivation,
        solution_space_dim: nullspace.len(),
        classification,
        sign_class,
        residual,
        q_check,
        mode,
        particular,
        nullspace,
        metric: td.metric,
    }))
}

fn sign_class_of(lambda: &Scalar, mode: Mode) -> SignClass {
    let sign = match mode {
        Mode::Exact => lambda.sign(),
        Mode::Float => {
            let v = lambda.to_f64();
            if v.abs() <= 1e-9 {
                0
            } else {
                v.signum() as i32
            }
        }
    };
    match sign {
        1 => SignClass::Expanding,
        -1 => SignClass::Shrinking,
        _ => SignClass::Steady,
    }
}

/// Adjoint of an operator with respect to the metric: D* = g⁻¹ Dᵗ g.
/// Equals the plain transpose whenever the Gram matrix is the identity, and
/// transforms equivariantly under automorphisms, which keeps the
/// classification invariant under homothety.
fn metric_adjoint(m: &MetricData, d: &Matrix) -> Matrix {
    m.gram_inv.matmul(&d.transpose()).matmul(&m.gram)
}

/// Algebraic iff some (λ, D) in the solution set has Dᵗ ∈ Der(g), decided by
/// augmenting the soliton system with the adjoint-derivation identity.
fn classify_affine_set(
    g: &LieAlgebra,
    m: &MetricData,
    der_basis: &[Matrix],
    soliton_sys: &Matrix,
    soliton_rhs: &[Scalar],
) -> Result<SolitonClass> {
    let mode = g.mode();
    let d = der_basis.len();
    let transpose_cols: Vec<Vec<Scalar>> = der_basis
        .iter()
        .map(|b| g.derivation_residual(&metric_adjoint(m, b)))
        .collect();
    let extra_rows = transpose_cols.first().map_or(0, Vec::len);
    let total_rows = soliton_sys.rows() + extra_rows;
    let aug = Matrix::from_fn(total_rows, 1 + d, |r, c| {
        if r < soliton_sys.rows() {
            soliton_sys.get(r, c).clone()
        } else if c == 0 {
            Scalar::zero(mode)
        } else {
            transpose_cols[c - 1][r - soliton_sys.rows()].clone()
        }
    });
    let mut rhs = soliton_rhs.to_vec();
    rhs.extend(std::iter::repeat_with(|| Scalar::zero(mode)).take(extra_rows));
    let out = solve_linear(&aug, &rhs)?;
    Ok(if out.particular.is_some() {
        SolitonClass::Algebraic
    } else {
        SolitonClass::SemiAlgebraicOnly
    })
}

/// Re-derive the classification for an existing solution.
pub fn classify_algebraic(g: &LieAlgebra, sol: &SolitonSolution) -> Result<SolitonClass> {
    // Rebuild the affine set in derivation coordinates: particular + kernel.
    // D(t)ᵗ must satisfy the derivation identity; the residual is affine in t.
    let base = g.derivation_residual(&metric_adjoint(&sol.metric, &sol.particular.1));
    let cols: Vec<Vec<Scalar>> = sol
        .nullspace
        .iter()
        .map(|(_, n)| g.derivation_residual(&metric_adjoint(&sol.metric, n)))
        .collect();
    let rows = base.len();
    let a = Matrix::from_fn(rows, cols.len(), |r, c| cols[c][r].clone());
    let rhs: Vec<Scalar> = base.iter().map(|x| -x).collect();
    let out = solve_linear(&a, &rhs)?;
    Ok(if out.particular.is_some() {
        SolitonClass::Algebraic
    } else {
        SolitonClass::SemiAlgebraicOnly
    })
}

/// Transform a soliton by an automorphism h and a scaling c:
/// ψ' = h·(cψ). Returns ψ' with its re-solved soliton data after asserting
/// that the scaled conjugated derivation c^{−2/3}·hDh⁻¹ with λ' = c^{−2/3}λ
/// lies in the new solution set.
pub fn transform_soliton(
    g: &LieAlgebra,
    psi: &KForm,
    h: &Matrix,
    c: &Scalar,
) -> Result<(KForm, SolitonSolution)> {
    if c.is_zero() {
        return Err(Error::BadParams("homothety scale must be nonzero".into()));
    }
    if !is_automorphism(g, h) {
        return Err(Error::NotAutomorphism);
    }
    let base = solve_soliton(g, psi)?.ok_or(Error::NotSoliton)?;
    let mode = psi.mode();
    let c_cbrt = match mode {
        Mode::Exact => c.cube_root_exact().ok_or_else(|| {
            Error::BadParams("homothety scale must be a perfect cube in exact mode".into())
        })?,
        Mode::Float => Scalar::float(cbrt_signed(c.to_f64())),
    };
    let c23 = &c_cbrt * &c_cbrt;
    let psi2 = gl_act(h, &psi.scale(c))?;
    let sol2 = solve_soliton(g, &psi2)?.ok_or_else(|| {
        Error::Internal("homothety transform of a soliton failed to re-solve".into())
    })?;
    let hinv = h.inverse()?;
    let lambda2 = &base.lambda / &c23;
    let d2 = h.matmul(&base.derivation).matmul(&hinv).map(|x| x / &c23);
    if !sol2.contains(&lambda2, &d2) {
        return Err(Error::Internal(
            "transformed derivation left the solution set".into(),
        ));
    }
    Ok((psi2, sol2))
}

fn cbrt_signed(v: f64) -> f64 {
    v.signum() * v.abs().cbrt()
}

#[derive(Clone, Debug)]
pub struct HomothetyInvariants {
    /// R² / tr(Ric²), exact; `None` for flat metrics.
    pub pinching: Option<Scalar>,
    /// Sorted eigenvalues of Ric/|Ric| (float).
    pub normalized_ricci_spectrum: Vec<f64>,
}

/// Scale- and isometry-invariant quantities of the induced metric.
pub fn homothety_invariants(g: &LieAlgebra, psi: &KForm) -> Result<HomothetyInvariants> {
    let m = metric_volume(psi)?;
    let (g, _psi) = aligned(g, psi, &m);
    let ric = crate::torsion::ricci(&g, &m);
    let r = ric.trace();
    let tr2 = ric.matmul(&ric).trace();
    let pinching = if tr2.is_zero() {
        None
    } else {
        Some(&(&r * &r) / &tr2)
    };
    let spectrum = if tr2.is_zero() {
        vec![0.0; DIM]
    } else {
        let norm = tr2.to_f64().sqrt();
        // Ric is self-adjoint for the metric; diagonalize the symmetrized
        // bilinear form g^{-1/2}·(g·Ric)·g^{-1/2}, which has the same
        // spectrum as Ric.
        let gram_f: Vec<Vec<f64>> = (0..DIM)
            .map(|i| (0..DIM).map(|j| m.gram.get(i, j).to_f64()).collect())
            .collect();
        let ric_bil: Vec<Vec<f64>> = {
            let gr = m.gram.matmul(&ric);
            (0..DIM)
                .map(|i| (0..DIM).map(|j| gr.get(i, j).to_f64()).collect())
                .collect()
        };
        let inv_sqrt = inverse_sqrt_sym(&gram_f);
        let mut sym = vec![vec![0.0; DIM]; DIM];
        for i in 0..DIM {
            for j in 0..DIM {
                let mut acc = 0.0;
                for p in 0..DIM {
                    for q in 0..DIM {
                        acc += inv_sqrt[i][p] * ric_bil[p][q] * inv_sqrt[q][j];
                    }
                }
                sym[i][j] = acc / norm;
            }
        }
        let msym = Matrix::from_fn(DIM, DIM, |i, j| Scalar::float(sym[i][j]));
        msym.jacobi_eigenvalues()
    };
    Ok(HomothetyInvariants {
        pinching,
        normalized_ricci_spectrum: spectrum,
    })
}

/// Inverse square root of a symmetric positive definite matrix (f64).
fn inverse_sqrt_sym(a: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    // Jacobi eigen-decomposition with eigenvectors
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let mut v = vec![vec![0.0; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for _ in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += m[i][j] * m[i][j];
            }
        }
        if off.sqrt() < 1e-14 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if m[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k][p];
                    let mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p][k];
                    let mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[k][p];
                    let vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0.0;
            for k in 0..n {
                acc += v[i][k] * v[j][k] / m[k][k].sqrt();
            }
            out[i][j] = acc;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::liealg::exp_nilpotent;
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
    fn n3_soliton_solves_exactly() {
        // λ = 5(b²+c²+bc), D = −(b²+c²+bc) Diag(1,1,1,2,2,2,2)
        let (g, phi) = entry("n3", &[("a", "2"), ("b", "1"), ("c", "1")]);
        let sol = solve_soliton(&g, &phi).unwrap().unwrap();
        assert_eq!(sol.lambda, s("15"));
        assert_eq!(sol.classification, SolitonClass::Algebraic);
        assert_eq!(sol.sign_class, SignClass::Expanding);
        assert!(sol.q_check);
        assert!(sol.residual.is_zero());
        let d_ref = Matrix::diag(&[
            s("-3"),
            s("-3"),
            s("-3"),
            s("-6"),
            s("-6"),
            s("-6"),
            s("-6"),
        ]);
        assert!(sol.contains(&s("15"), &d_ref));
    }

    #[test]
    fn n4_soliton_is_semi_algebraic_only() {
        let (g, phi) = entry(
            "n4",
            &[("a", "sqrt2"), ("b", "1"), ("c", "sqrt2"), ("d", "1")],
        );
        let sol = solve_soliton(&g, &phi).unwrap().unwrap();
        assert_eq!(sol.lambda, s("9"));
        assert_eq!(sol.classification, SolitonClass::SemiAlgebraicOnly);
        assert_eq!(sol.sign_class, SignClass::Expanding);
        assert!(sol.q_check);
        let d_ref = catalog::parse_matrix7(
            &catalog::expected_row("n4").unwrap().derivation,
            Mode::Exact,
        );
        assert!(sol.contains(&s("9"), &d_ref));
        assert_eq!(
            classify_algebraic(&g, &sol).unwrap(),
            SolitonClass::SemiAlgebraicOnly
        );
    }

    #[test]
    fn abelian_is_a_steady_algebraic_soliton() {
        let g = LieAlgebra::new("n1", &[], BTreeMap::new()).unwrap();
        let phi0 = catalog::phi0(Mode::Exact);
        let sol = solve_soliton(&g, &phi0).unwrap().unwrap();
        assert!(sol.lambda.is_zero());
        assert!(sol.derivation.is_zero());
        assert_eq!(sol.sign_class, SignClass::Steady);
        assert_eq!(sol.classification, SolitonClass::Algebraic);
        // solution space contains all derivations annihilating φ₀, e.g. the
        // λ-compensated identity direction: L_{X_{−I}}φ₀ = −3φ₀
        assert!(sol.solution_space_dim > 0);
        assert!(sol.contains(&s("3"), &Matrix::identity(7, Mode::Exact).neg()));
    }

    #[test]
    fn off_soliton_locus_returns_none() {
        // n4 closed (a = c, b = d) but a² ≠ 2b²
        let (g, phi) = entry("n4", &[("a", "1"), ("b", "1"), ("c", "1"), ("d", "1")]);
        assert!(solve_soliton(&g, &phi).unwrap().is_none());
    }

    #[test]
    fn not_closed_is_an_error() {
        let (g, phi) = entry("n4", &[("a", "1"), ("b", "2"), ("c", "3"), ("d", "4")]);
        assert!(matches!(solve_soliton(&g, &phi), Err(Error::NotClosed)));
    }

    #[test]
    fn transform_by_identity_and_cube() {
        let (g, phi) = entry("n3", &[("a", "2"), ("b", "1"), ("c", "1")]);
        let id = Matrix::identity(7, Mode::Exact);
        let (psi2, sol2) = transform_soliton(&g, &phi, &id, &s("1")).unwrap();
        assert_eq!(psi2, phi);
        assert_eq!(sol2.lambda, s("15"));
        // c = 8: λ scales by 8^{-2/3} = 1/4
        let (_psi8, sol8) = transform_soliton(&g, &phi, &id, &s("8")).unwrap();
        assert_eq!(sol8.lambda, s("15/4"));
        // c must be a cube in exact mode
        assert!(matches!(
            transform_soliton(&g, &phi, &id, &s("2")),
            Err(Error::BadParams(_))
        ));
    }

    #[test]
    fn transform_by_nilpotent_automorphism() {
        let (g, phi) = entry("n3", &[("a", "2"), ("b", "1"), ("c", "1")]);
        let der = g.derivation_space();
        let nilp = der
            .basis
            .iter()
            .find_map(exp_nilpotent)
            .expect("nilpotent derivation");
        let (_psi2, sol2) = transform_soliton(&g, &phi, &nilp, &s("1")).unwrap();
        assert_eq!(sol2.lambda, s("15"));
        assert_eq!(sol2.classification, SolitonClass::Algebraic);
    }

    #[test]
    fn transform_rejects_non_automorphism() {
        let (g, phi) = entry("n3", &[("a", "2"), ("b", "1"), ("c", "1")]);
        let mut h = Matrix::identity(7, Mode::Exact);
        h.set(3, 3, s("2")); // scales e4 but not the bracket sources
        assert!(matches!(
            transform_soliton(&g, &phi, &h, &s("1")),
            Err(Error::NotAutomorphism)
        ));
    }

    #[test]
    fn pinching_of_n3_family_is_one_half() {
        for (b, c) in [("1", "1"), ("3/4", "1/4"), ("7/8", "1/8")] {
            let a = format!("{}", &(s(b) + s(c)));
            let (g, phi) = entry("n3", &[("a", &a), ("b", b), ("c", c)]);
            let inv = homothety_invariants(&g, &phi).unwrap();
            assert_eq!(inv.pinching.unwrap(), s("1/2"));
        }
    }

    #[test]
    fn spectra_distinguish_n3_solitons() {
        let t1 = "1/4";
        let t2 = "1/3";
        let spec = |t: &str| {
            let b = format!("{}", &(s("1") - s(t)));
            let (g, phi) = entry("n3", &[("a", "1"), ("b", &b), ("c", t)]);
            homothety_invariants(&g, &phi)
                .unwrap()
                .normalized_ricci_spectrum
        };
        let s1 = spec(t1);
        let s2 = spec(t2);
        let max_diff = s1
            .iter()
            .zip(&s2)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        assert!(max_diff > 1e-9, "spectra should differ: {s1:?} vs {s2:?}");
    }
}
