//! Lie algebras by structure constants.
//!
//! Brackets are stored for i < j only, so antisymmetry is implicit. The
//! Chevalley–Eilenberg differential, derivation spaces, Lie derivatives along
//! derivation fields, and isomorphism checks all run exactly.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exterior::{basis_masks, mask_indices, KForm, Vector, DIM};
use crate::matrix::{solve_linear, Matrix};
use crate::scalar::{Mode, Scalar};

fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i < j && j <= DIM);
    (i - 1) * DIM - i * (i - 1) / 2 + (j - i - 1)
}

/// Ordered list of the 21 index pairs (i, j), i < j.
pub fn basis_pairs() -> impl Iterator<Item = (usize, usize)> {
    (1..=DIM).flat_map(|i| (i + 1..=DIM).map(move |j| (i, j)))
}

#[derive(Clone, Debug)]
pub struct LieAlgebra {
    name: String,
    params: BTreeMap<String, Scalar>,
    /// brackets[pair_index(i, j)][k] = c_{ij}^{k+1} with [e_i, e_j] = Σ c e.
    brackets: Vec<[Scalar; 7]>,
    mode: Mode,
    /// Derivation space is queried by every soliton solve; clones share it.
    der_cache: Arc<OnceLock<DerivationSpace>>,
}

/// One failing basis triple of the Jacobi test.
#[derive(Clone, Debug)]
pub struct JacobiFailure {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub defect: Vector,
}

#[derive(Clone, Debug, Default)]
pub struct JacobiReport {
    pub failures: Vec<JacobiFailure>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Basis of the space of derivations of a Lie algebra.
#[derive(Clone, Debug)]
pub struct DerivationSpace {
    pub basis: Vec<Matrix>,
}

impl DerivationSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of an operator in this basis, when it lies in the span.
    pub fn coordinates_of(&self, d: &Matrix) -> Option<Vec<Scalar>> {
        let mode = d.mode().ok()?;
        let rows = DIM * DIM;
        let a = Matrix::from_fn(rows, self.basis.len(), |r, c| {
            self.basis[c].get(r / DIM, r % DIM).clone()
        });
        let b: Vec<Scalar> = (0..rows).map(|r| d.get(r / DIM, r % DIM).clone()).collect();
        let _ = mode;
        solve_linear(&a, &b).ok()?.particular
    }

    pub fn contains(&self, d: &Matrix) -> bool {
        self.coordinates_of(d).is_some()
    }
}

impl LieAlgebra {
    /// Construct and validate the Jacobi identity on all basis triples.
    /// The mode comes from the bracket terms; an empty bracket is exact.
    pub fn new(
        name: impl Into<String>,
        terms: &[(usize, usize, usize, Scalar)],
        params: BTreeMap<String, Scalar>,
    ) -> Result<LieAlgebra> {
        let mode = terms.first().map_or(Mode::Exact, |(_, _, _, c)| c.mode());
        LieAlgebra::new_in_mode(name, terms, params, mode)
    }

    /// Construct in an explicit mode and validate Jacobi.
    pub fn new_in_mode(
        name: impl Into<String>,
        terms: &[(usize, usize, usize, Scalar)],
        params: BTreeMap<String, Scalar>,
        mode: Mode,
    ) -> Result<LieAlgebra> {
        let g = LieAlgebra::unvalidated_in_mode(name, terms, params, mode)?;
        let report = g.validate_jacobi();
        if let Some(f) = report.failures.first() {
            return Err(Error::JacobiFailure {
                failures: report.failures.len(),
                i: f.i,
                j: f.j,
                k: f.k,
            });
        }
        Ok(g)
    }

    /// Construct without validation; used to exercise the Jacobi reporter.
    pub fn unvalidated(
        name: impl Into<String>,
        terms: &[(usize, usize, usize, Scalar)],
        params: BTreeMap<String, Scalar>,
    ) -> Result<LieAlgebra> {
        let mode = terms.first().map_or(Mode::Exact, |(_, _, _, c)| c.mode());
        LieAlgebra::unvalidated_in_mode(name, terms, params, mode)
    }

    fn unvalidated_in_mode(
        name: impl Into<String>,
        terms: &[(usize, usize, usize, Scalar)],
        params: BTreeMap<String, Scalar>,
        mode: Mode,
    ) -> Result<LieAlgebra> {
        let mut brackets =
            vec![std::array::from_fn::<Scalar, 7, _>(|_| Scalar::zero(mode)); DIM * (DIM - 1) / 2];
        for (i, j, k, coeff) in terms {
            if !(1..=DIM).contains(i) || !(1..=DIM).contains(j) || !(1..=DIM).contains(k) || i >= j
            {
                return Err(Error::Parse(format!(
                    "bad bracket term [e{i}, e{j}] -> e{k}: need 1 <= i < j <= 7"
                )));
            }
            if coeff.mode() != mode {
                return Err(Error::MixedMode);
            }
            let slot = &mut brackets[pair_index(*i, *j)][*k - 1];
            *slot = &*slot + coeff;
        }
        Ok(LieAlgebra {
            name: name.into(),
            params,
            brackets,
            mode,
            der_cache: Arc::new(OnceLock::new()),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &BTreeMap<String, Scalar> {
        &self.params
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn to_float(&self) -> LieAlgebra {
        LieAlgebra {
            name: self.name.clone(),
            params: self
                .params
                .iter()
                .map(|(k, v)| (k.clone(), v.to_float()))
                .collect(),
            brackets: self
                .brackets
                .iter()
                .map(|c| std::array::from_fn(|k| c[k].to_float()))
                .collect(),
            mode: Mode::Float,
            der_cache: Arc::new(OnceLock::new()),
        }
    }

    /// Structure constant terms (i, j, k, c) with i < j, c ≠ 0.
    pub fn bracket_terms(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for (i, j) in basis_pairs() {
            for k in 1..=DIM {
                let c = &self.brackets[pair_index(i, j)][k - 1];
                if !c.is_zero() {
                    out.push((i, j, k, c.clone()));
                }
            }
        }
        out
    }

    /// [e_i, e_j] for any i, j (1-based), with antisymmetry applied.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        if i == j {
            return Vector::zero(self.mode);
        }
        let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
        let comps = &self.brackets[pair_index(a, b)];
        Vector::from_fn(|k| {
            if sign > 0 {
                comps[k].clone()
            } else {
                -&comps[k]
            }
        })
    }

    /// [x, y] by bilinear expansion.
    pub fn bracket(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::zero(self.mode);
        for (i, j) in basis_pairs() {
            let xi_yj = &x.0[i - 1] * &y.0[j - 1];
            let xj_yi = &x.0[j - 1] * &y.0[i - 1];
            let c = &xi_yj - &xj_yi;
            if c.is_zero() {
                continue;
            }
            let comps = &self.brackets[pair_index(i, j)];
            for k in 0..DIM {
                if !comps[k].is_zero() {
                    out.0[k] += &(&c * &comps[k]);
                }
            }
        }
        out
    }

    /// Check Σ_cyc [[e_i, e_j], e_k] = 0 on all 35 triples, exactly.
    pub fn validate_jacobi(&self) -> JacobiReport {
        let mut report = JacobiReport::default();
        for i in 1..=DIM {
            for j in i + 1..=DIM {
                for k in j + 1..=DIM {
                    let ij = self.bracket_basis(i, j);
                    let jk = self.bracket_basis(j, k);
                    let ki = self.bracket_basis(k, i);
                    let d = self
                        .bracket(&ij, &Vector::basis(k, self.mode))
                        .add(&self.bracket(&jk, &Vector::basis(i, self.mode)))
                        .add(&self.bracket(&ki, &Vector::basis(j, self.mode)));
                    if !d.is_zero() {
                        report.failures.push(JacobiFailure { i, j, k, defect: d });
                    }
                }
            }
        }
        report
    }

    /// Lower central series terminates within 7 steps.
    pub fn is_nilpotent(&self) -> bool {
        // span of the current term of the series, as row vectors
        let mut current: Vec<Vector> = (1..=DIM).map(|i| Vector::basis(i, self.mode)).collect();
        for _ in 0..DIM {
            let mut next: Vec<Vector> = Vec::new();
            for i in 1..=DIM {
                let ei = Vector::basis(i, self.mode);
                for v in &current {
                    let b = self.bracket(&ei, v);
                    if !b.is_zero() {
                        next.push(b);
                    }
                }
            }
            if next.is_empty() {
                return true;
            }
            current = reduce_span(next);
        }
        false
    }

    /// Chevalley–Eilenberg differential of a left-invariant k-form.
    pub fn ce_d(&self, a: &KForm) -> KForm {
        let k = a.degree();
        assert!(k < DIM || a.is_zero(), "d of a top-degree form");
        if k >= DIM {
            return KForm::zero(DIM, self.mode);
        }
        let mut out = KForm::zero(k + 1, self.mode);
        for &t_mask in basis_masks(k + 1) {
            let idx = mask_indices(t_mask);
            let mut acc = Scalar::zero(self.mode);
            for p in 0..idx.len() {
                for q in p + 1..idx.len() {
                    let v = self.bracket_basis(idx[p], idx[q]);
                    if v.is_zero() {
                        continue;
                    }
                    // 1-based sign (−1)^{i+j} has the parity of p + q
                    let rest = t_mask & !(1 << (idx[p] - 1)) & !(1 << (idx[q] - 1));
                    let mut term = a.eval_vector_first(&v, rest);
                    if (p + q) % 2 == 1 {
                        term = -term;
                    }
                    acc += &term;
                }
            }
            out.set_coeff(t_mask, acc);
        }
        out
    }

    /// The derivation identity residual rows for an operator, flattened:
    /// for each pair i < j the vector D[e_i,e_j] − [De_i,e_j] − [e_i,De_j].
    pub(crate) fn derivation_residual(&self, d: &Matrix) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(21 * DIM);
        for (i, j) in basis_pairs() {
            let dij = apply(d, &self.bracket_basis(i, j));
            let dei = matrix_column(d, i - 1);
            let dej = matrix_column(d, j - 1);
            let lhs = self
                .bracket(&dei, &Vector::basis(j, self.mode))
                .add(&self.bracket(&Vector::basis(i, self.mode), &dej));
            for k in 0..DIM {
                out.push(&dij.0[k] - &lhs.0[k]);
            }
        }
        out
    }

    pub fn is_derivation(&self, d: &Matrix) -> bool {
        let residual = self.derivation_residual(d);
        match self.mode {
            Mode::Exact => residual.iter().all(Scalar::is_zero),
            Mode::Float => {
                let scale = d.max_abs_f64().max(1.0);
                residual.iter().all(|x| x.to_f64().abs() <= 1e-9 * scale)
            }
        }
    }

    /// Exact nullspace of the derivation identity on the 49 entries of D.
    /// Computed once per algebra and cached.
    pub fn derivation_space(&self) -> DerivationSpace {
        self.der_cache
            .get_or_init(|| self.compute_derivation_space())
            .clone()
    }

    fn compute_derivation_space(&self) -> DerivationSpace {
        let rows = 21 * DIM;
        let cols = DIM * DIM;
        let mut sys = Matrix::zeros(rows, cols, self.mode);
        let mut row = 0usize;
        for (i, j) in basis_pairs() {
            let cij = self.bracket_basis(i, j);
            for k in 1..=DIM {
                // coefficient of D_{rs} (unknown index (r-1)*7+(s-1)) in
                // (D[e_i,e_j] - [De_i,e_j] - [e_i,De_j])_k
                // D[e_i,e_j]_k = Σ_m c_{ij}^m D_{km}
                for m in 1..=DIM {
                    if !cij.0[m - 1].is_zero() {
                        let col = (k - 1) * DIM + (m - 1);
                        let v = sys.get(row, col) + &cij.0[m - 1];
                        sys.set(row, col, v);
                    }
                }
                // [De_i, e_j]_k = Σ_r D_{ri} c_{rj}^k
                for r in 1..=DIM {
                    let c = self.bracket_basis(r, j).0[k - 1].clone();
                    if !c.is_zero() {
                        let col = (r - 1) * DIM + (i - 1);
                        let v = sys.get(row, col) - &c;
                        sys.set(row, col, v);
                    }
                }
                // [e_i, De_j]_k = Σ_r D_{rj} c_{ir}^k
                for r in 1..=DIM {
                    let c = self.bracket_basis(i, r).0[k - 1].clone();
                    if !c.is_zero() {
                        let col = (r - 1) * DIM + (j - 1);
                        let v = sys.get(row, col) - &c;
                        sys.set(row, col, v);
                    }
                }
                row += 1;
            }
        }
        let basis = sys
            .nullspace()
            .into_iter()
            .map(|flat| Matrix::from_fn(DIM, DIM, |r, c| flat[r * DIM + c].clone()))
            .collect::<Vec<_>>();
        for d in &basis {
            debug_assert!(self.is_derivation(d));
        }
        DerivationSpace { basis }
    }
}

fn matrix_column(m: &Matrix, col: usize) -> Vector {
    Vector::from_fn(|r| m.get(r, col).clone())
}

fn apply(m: &Matrix, v: &Vector) -> Vector {
    let out = m.mul_vec(&v.0);
    Vector::from_fn(|i| out[i].clone())
}

/// Reduce a spanning set to an independent subset.
fn reduce_span(vectors: Vec<Vector>) -> Vec<Vector> {
    let mut picked: Vec<Vector> = Vec::new();
    for v in vectors {
        let mut trial: Vec<&Vector> = picked.iter().collect();
        trial.push(&v);
        let tm = Matrix::from_fn(trial.len(), DIM, |i, j| trial[i].0[j].clone());
        if tm.rank() == trial.len() {
            picked.push(v);
        }
        if picked.len() == DIM {
            break;
        }
    }
    picked
}

/// Lie derivative of a left-invariant form along the field of a derivation:
/// (L_{X_D} a)(X₁,…,X_k) = a(DX₁,…,X_k) + ⋯ + a(X₁,…,DX_k).
pub fn lie_derivative(a: &KForm, d: &Matrix) -> KForm {
    let k = a.degree();
    let mode = a.mode();
    if k == 0 {
        return KForm::zero(0, mode);
    }
    let mut out = KForm::zero(k, mode);
    for &t_mask in basis_masks(k) {
        let idx = mask_indices(t_mask);
        let mut acc = Scalar::zero(mode);
        for (p, &tp) in idx.iter().enumerate() {
            let rest = t_mask & !(1 << (tp - 1));
            let col = matrix_column(d, tp - 1);
            let mut term = a.eval_vector_first(&col, rest);
            if p % 2 == 1 {
                term = -term;
            }
            acc += &term;
        }
        out.set_coeff(t_mask, acc);
    }
    out
}

/// Direction in which a matrix intertwines two brackets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoDirection {
    /// `h[x,y]₁ = [hx,hy]₂`
    Forward,
    /// `h[x,y]₂ = [hx,hy]₁`
    Reverse,
}

/// Test h as a Lie algebra isomorphism, in both direction conventions.
pub fn check_isomorphism(
    g1: &LieAlgebra,
    g2: &LieAlgebra,
    h: &Matrix,
) -> Result<Option<IsoDirection>> {
    h.inverse().map_err(|_| Error::SingularMatrix)?;
    let intertwines = |from: &LieAlgebra, to: &LieAlgebra| -> bool {
        basis_pairs().all(|(i, j)| {
            let lhs = apply(h, &from.bracket_basis(i, j));
            let rhs = to.bracket(&matrix_column(h, i - 1), &matrix_column(h, j - 1));
            lhs == rhs
        })
    };
    if intertwines(g1, g2) {
        Ok(Some(IsoDirection::Forward))
    } else if intertwines(g2, g1) {
        Ok(Some(IsoDirection::Reverse))
    } else {
        Ok(None)
    }
}

/// h is an automorphism of g.
pub fn is_automorphism(g: &LieAlgebra, h: &Matrix) -> bool {
    matches!(
        check_isomorphism(g, g, h),
        Ok(Some(IsoDirection::Forward) | Some(IsoDirection::Reverse))
    )
}

/// exp(N) of a nilpotent matrix as a terminating exact series, or `None`
/// when N is not nilpotent.
pub fn exp_nilpotent(n: &Matrix) -> Option<Matrix> {
    let dim = n.rows();
    let mode = n.mode().ok()?;
    let mut power = Matrix::identity(dim, mode);
    let mut acc = Matrix::identity(dim, mode);
    let mut factorial = Scalar::one(mode);
    for k in 1..=dim {
        power = power.matmul(n);
        if power.is_zero() {
            return Some(acc);
        }
        factorial = &factorial * &Scalar::from_int(k as i64);
        acc = acc.add(&power.scale(&factorial.inverse().ok()?));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exterior::indices_to_mask;

    fn s(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    fn n3(a: &str, b: &str, c: &str) -> LieAlgebra {
        catalog::get(
            "n3",
            &[("a", a), ("b", b), ("c", c)]
                .into_iter()
                .map(|(k, v)| (k.to_string(), s(v)))
                .collect(),
            Mode::Exact,
        )
        .unwrap()
        .algebra
    }

    #[test]
    fn abelian_passes_jacobi() {
        let g = LieAlgebra::new("n1", &[], BTreeMap::new()).unwrap();
        assert!(g.validate_jacobi().passed());
        assert!(g.is_nilpotent());
    }

    #[test]
    fn n3_passes_jacobi() {
        let g = n3("2", "1", "1");
        assert!(g.validate_jacobi().passed());
        assert!(g.is_nilpotent());
    }

    #[test]
    fn corrupted_n3_fails_jacobi() {
        // extra bracket [e4, e5] = e6 breaks Jacobi on (1, 2, 5):
        // [[e1,e2],e5] = -a[e4,e5] = -a e6 while the cyclic partners vanish
        let mut terms = n3("1", "1", "1").bracket_terms();
        terms.push((4, 5, 6, Scalar::from_int(1)));
        let g = LieAlgebra::unvalidated("bad", &terms, BTreeMap::new()).unwrap();
        let report = g.validate_jacobi();
        assert!(!report.passed());
        assert!(report.failures.iter().any(|f| (f.i, f.j, f.k) == (1, 2, 5)));
        assert!(LieAlgebra::new("bad", &terms, BTreeMap::new()).is_err());
    }

    #[test]
    fn ce_d_on_one_forms_matches_structure_constants() {
        let g = n3("2", "3/2", "1/2");
        let e4 = KForm::basis(indices_to_mask(&[4]).unwrap(), Mode::Exact);
        let d4 = g.ce_d(&e4);
        let want = KForm::from_terms(2, &[(&[1, 2], s("2"))]).unwrap();
        assert_eq!(d4, want);
        let e5 = KForm::basis(indices_to_mask(&[5]).unwrap(), Mode::Exact);
        assert_eq!(
            g.ce_d(&e5),
            KForm::from_terms(2, &[(&[1, 3], s("3/2"))]).unwrap()
        );
        let e6 = KForm::basis(indices_to_mask(&[6]).unwrap(), Mode::Exact);
        assert_eq!(
            g.ce_d(&e6),
            KForm::from_terms(2, &[(&[2, 3], s("1/2"))]).unwrap()
        );
    }

    #[test]
    fn d_phi3_measures_closedness_defect() {
        // dφ₃ = (a − b − c) e^{1237}
        let g = n3("5/2", "1", "1");
        let phi3 = catalog::candidate_form("n3", Mode::Exact).unwrap();
        let d = g.ce_d(&phi3);
        let want = KForm::from_terms(4, &[(&[1, 2, 3, 7], s("1/2"))]).unwrap();
        assert_eq!(d, want);
        let closed = n3("2", "1", "1");
        assert!(closed.ce_d(&phi3).is_zero());
    }

    #[test]
    fn d_squared_vanishes() {
        let g = n3("7/3", "4/3", "1");
        for k in 0..=5usize {
            for &mask in basis_masks(k).iter().take(8) {
                let f = KForm::basis(mask, Mode::Exact);
                assert!(g.ce_d(&g.ce_d(&f)).is_zero(), "d² ≠ 0 on {mask:#b}");
            }
        }
    }

    #[test]
    fn abelian_derivations_fill_gl7() {
        let g = LieAlgebra::new("n1", &[], BTreeMap::new()).unwrap();
        assert_eq!(g.derivation_space().dim(), 49);
    }

    #[test]
    fn n3_derivations_contain_grading_operator() {
        let g = n3("1", "1", "1");
        let ds = g.derivation_space();
        let d = Matrix::diag(&[s("1"), s("1"), s("1"), s("2"), s("2"), s("2"), s("2")]);
        assert!(g.is_derivation(&d));
        assert!(ds.contains(&d));
        assert!(ds.dim() >= 1);
    }

    #[test]
    fn lie_derivative_scales_by_degree_on_identity() {
        let phi0 = catalog::phi0(Mode::Exact);
        let id = Matrix::identity(7, Mode::Exact);
        assert_eq!(lie_derivative(&phi0, &id), phi0.scale(&s("3")));
    }

    #[test]
    fn lie_derivative_of_phi3_under_grading() {
        // D = d·Diag(1,1,1,2,2,2,2):
        // L φ₃ = 3d e^{123} + 5d (e^{145}+e^{167}+e^{246}−e^{257}−e^{347}−e^{356})
        let phi3 = catalog::candidate_form("n3", Mode::Exact).unwrap();
        let dval = s("3/2");
        let d = Matrix::diag(&[
            dval.clone(),
            dval.clone(),
            dval.clone(),
            &dval * &s("2"),
            &dval * &s("2"),
            &dval * &s("2"),
            &dval * &s("2"),
        ]);
        let l = lie_derivative(&phi3, &d);
        let e123 = KForm::from_terms(3, &[(&[1, 2, 3], s("1"))]).unwrap();
        let rest = phi3.sub(&e123);
        let want = e123
            .scale(&(&s("3") * &dval))
            .add(&rest.scale(&(&s("5") * &dval)));
        assert_eq!(l, want);
    }

    #[test]
    fn isomorphism_direction_detection() {
        let g = n3("1", "1", "1");
        let id = Matrix::identity(7, Mode::Exact);
        assert_eq!(
            check_isomorphism(&g, &g, &id).unwrap(),
            Some(IsoDirection::Forward)
        );
        // scaling the central e7 is an automorphism of n3
        let mut h = Matrix::identity(7, Mode::Exact);
        h.set(6, 6, s("2"));
        assert!(is_automorphism(&g, &h));
        // diagonal scaling from the unit family to n3(a,b,c)
        let target = n3("2", "3", "5");
        let h = Matrix::diag(&[s("1"), s("1"), s("1"), s("2"), s("3"), s("5"), s("1")]);
        assert_eq!(
            check_isomorphism(&g, &target, &h).unwrap(),
            Some(IsoDirection::Forward)
        );
        // a singular h is rejected
        let z = Matrix::zeros(7, 7, Mode::Exact);
        assert!(matches!(
            check_isomorphism(&g, &g, &z),
            Err(Error::SingularMatrix)
        ));
    }

    #[test]
    fn exp_of_nilpotent_derivation_is_automorphism() {
        let g = n3("1", "1", "1");
        let ds = g.derivation_space();
        let mut found = 0;
        for d in &ds.basis {
            if let Some(h) = exp_nilpotent(d) {
                assert!(is_automorphism(&g, &h), "exp of derivation not Aut");
                found += 1;
            }
        }
        assert!(found > 0, "no nilpotent derivations found");
    }

    #[test]
    fn exp_rejects_non_nilpotent() {
        let id = Matrix::identity(7, Mode::Exact);
        assert!(exp_nilpotent(&id).is_none());
    }
}
