//! Metric data induced by a positive 3-form, and the Hodge star.
//!
//! The Gram bilinear form B of a 3-form ψ is read off from
//! (1/6) ι_X ψ ∧ ι_Y ψ ∧ ψ. For positive ψ it factors as B = v·g with
//! vol_ψ = v·e^{1…7} and g the metric Gram matrix, so v = det(B)^{1/9} and
//! g = B/v. The ninth root is taken exactly when it exists in the field;
//! otherwise the metric degrades to float mode, which is recorded.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exterior::{basis_masks, mask_indices, mask_position, KForm, Vector, DIM};
use crate::matrix::{Definiteness, Matrix};
use crate::scalar::{Mode, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PositivityClass {
    Positive,
    /// GL-equivalent to the reference form only through orientation-reversing
    /// maps (Gram form negative definite).
    PositiveReversed,
    NotPositive,
}

#[derive(Clone, Debug)]
pub struct PositivityVerdict {
    pub class: PositivityClass,
    /// Witness Gram matrix of the defining bilinear form.
    pub gram: Matrix,
}

#[derive(Clone, Debug)]
pub struct MetricData {
    /// Gram matrix of ⟨·,·⟩_ψ in the fixed basis; positive definite.
    pub gram: Matrix,
    pub gram_inv: Matrix,
    /// Positive volume coefficient: vol_ψ = orientation · vol_coeff · e^{1…7}.
    pub vol_coeff: Scalar,
    pub orientation: i32,
    pub mode: Mode,
    /// Per-degree Λ^s inner-product matrices, built on demand; clones share
    /// the cache.
    lambda_cache: Arc<[OnceLock<Vec<Scalar>>; 8]>,
}

impl MetricData {
    fn new(
        gram: Matrix,
        gram_inv: Matrix,
        vol_coeff: Scalar,
        orientation: i32,
        mode: Mode,
    ) -> MetricData {
        MetricData {
            gram,
            gram_inv,
            vol_coeff,
            orientation,
            mode,
            lambda_cache: Arc::new(Default::default()),
        }
    }

    pub fn signed_vol(&self) -> Scalar {
        if self.orientation < 0 {
            -&self.vol_coeff
        } else {
            self.vol_coeff.clone()
        }
    }

    /// Inner-product matrix of Λ^s in the tuple basis (row-major).
    fn lambda_matrix(&self, s: usize) -> &[Scalar] {
        self.lambda_cache[s].get_or_init(|| {
            let masks = basis_masks(s);
            let n = masks.len();
            let mut out = Vec::with_capacity(n * n);
            for &a in masks {
                for &b in masks {
                    out.push(basis_inner(self, a, b));
                }
            }
            out
        })
    }
}

/// Gram matrix of the bilinear form B(X, Y) with
/// B(X,Y)·e^{1…7} = (1/6)·ι_X ψ ∧ ι_Y ψ ∧ ψ.
pub fn gram_bilinear(psi: &KForm) -> Matrix {
    assert_eq!(psi.degree(), 3, "Gram bilinear form needs a 3-form");
    let mode = psi.mode();
    let sixth = match mode {
        Mode::Exact => Scalar::from_ratio(1, 6),
        Mode::Float => Scalar::float(1.0 / 6.0),
    };
    let interiors: Vec<KForm> = (1..=DIM)
        .map(|i| psi.interior(&Vector::basis(i, mode)).expect("degree 3"))
        .collect();
    let top = 0b111_1111u8;
    let b = Matrix::from_fn(DIM, DIM, |i, j| {
        let w = interiors[i].wedge(&interiors[j]).wedge(psi);
        w.coeff(top) * &sixth
    });
    match mode {
        Mode::Exact => {
            // symmetric by construction check
            for i in 0..DIM {
                for j in 0..i {
                    debug_assert_eq!(b.get(i, j), b.get(j, i));
                }
            }
            b
        }
        // kill 1-ulp roundoff asymmetry
        Mode::Float => Matrix::from_fn(DIM, DIM, |i, j| {
            Scalar::float(0.5 * (b.get(i, j).to_f64() + b.get(j, i).to_f64()))
        }),
    }
}

/// Positivity verdict via definiteness of the Gram bilinear form.
pub fn positivity(psi: &KForm) -> PositivityVerdict {
    let gram = gram_bilinear(psi);
    let class = match gram.definiteness() {
        Ok(Definiteness::PositiveDefinite) => PositivityClass::Positive,
        Ok(Definiteness::NegativeDefinite) => PositivityClass::PositiveReversed,
        _ => PositivityClass::NotPositive,
    };
    PositivityVerdict { class, gram }
}

/// Extract metric Gram matrix, volume coefficient and orientation.
pub fn metric_volume(psi: &KForm) -> Result<MetricData> {
    let verdict = positivity(psi);
    let orientation = match verdict.class {
        PositivityClass::Positive => 1,
        PositivityClass::PositiveReversed => -1,
        PositivityClass::NotPositive => return Err(Error::NotPositive),
    };
    let b = verdict.gram;
    let det = b.det();
    match psi.mode() {
        Mode::Exact => {
            if let Some(v_signed) = det.ninth_root_exact() {
                let g = b.map(|x| x / &v_signed);
                let g_inv = g.inverse().expect("positive definite");
                debug_assert_eq!(g.det(), &v_signed * &v_signed);
                return Ok(MetricData::new(
                    g,
                    g_inv,
                    v_signed.abs(),
                    orientation,
                    Mode::Exact,
                ));
            }
            // fall back to float; the degraded mode is recorded
            let bf = b.to_float();
            metric_from_float_gram(bf, orientation)
        }
        Mode::Float => metric_from_float_gram(b, orientation),
    }
}

fn metric_from_float_gram(b: Matrix, orientation: i32) -> Result<MetricData> {
    let det = b.det().to_f64();
    let v_signed = det.signum() * det.abs().powf(1.0 / 9.0);
    if !v_signed.is_finite() || v_signed == 0.0 {
        return Err(Error::NotPositive);
    }
    let g = b.map(|x| Scalar::float(x.to_f64() / v_signed));
    // numerically degenerate Gram matrices are unusable as metrics
    let g_inv = g.inverse().map_err(|_| Error::NotPositive)?;
    Ok(MetricData::new(
        g,
        g_inv,
        Scalar::float(v_signed.abs()),
        orientation,
        Mode::Float,
    ))
}

/// Inner product of two degree-s basis tuples: the s×s minor of g⁻¹ picked
/// by the tuples. High degrees go through Jacobi's complementary-minor
/// identity, det(g⁻¹[S,T]) = ±det(g[Tᶜ,Sᶜ])/det(g), so the arithmetic is
/// always on minors of size ≤ 3.
fn basis_inner(m: &MetricData, s_mask: u8, t_mask: u8) -> Scalar {
    let k = s_mask.count_ones() as usize;
    if k == 0 {
        return Scalar::one(m.mode);
    }
    if k <= 3 {
        let rows: Vec<usize> = mask_indices(s_mask).iter().map(|&i| i - 1).collect();
        let cols: Vec<usize> = mask_indices(t_mask).iter().map(|&i| i - 1).collect();
        return minor_det(&m.gram_inv, &rows, &cols);
    }
    let top = 0b111_1111u8;
    let rows: Vec<usize> = mask_indices(top & !t_mask).iter().map(|&i| i - 1).collect();
    let cols: Vec<usize> = mask_indices(top & !s_mask).iter().map(|&i| i - 1).collect();
    let comp = if rows.is_empty() {
        Scalar::one(m.mode)
    } else {
        minor_det(&m.gram, &rows, &cols)
    };
    let det_g = &m.vol_coeff * &m.vol_coeff;
    let index_sum: usize = mask_indices(s_mask)
        .iter()
        .chain(mask_indices(t_mask).iter())
        .sum();
    let v = &comp / &det_g;
    if index_sum % 2 == 1 {
        -v
    } else {
        v
    }
}

/// Determinant of the minor picked by `rows` × `cols`, by Laplace expansion
/// along the first row with zero entries skipped. Cheap for the small sizes
/// and near-diagonal matrices the star operator produces.
fn minor_det(g: &Matrix, rows: &[usize], cols: &[usize]) -> Scalar {
    let n = rows.len();
    match n {
        1 => g.get(rows[0], cols[0]).clone(),
        2 => {
            let ad = g.get(rows[0], cols[0]) * g.get(rows[1], cols[1]);
            let bc = g.get(rows[0], cols[1]) * g.get(rows[1], cols[0]);
            &ad - &bc
        }
        _ => {
            let mut acc = Scalar::zero(g.get(rows[0], cols[0]).mode());
            let mut sub_cols: Vec<usize> = Vec::with_capacity(n - 1);
            for (j, &c) in cols.iter().enumerate() {
                let top = g.get(rows[0], c);
                if top.is_zero() {
                    continue;
                }
                sub_cols.clear();
                sub_cols.extend(cols.iter().filter(|&&x| x != c));
                let mut term = top * &minor_det(g, &rows[1..], &sub_cols);
                if j % 2 == 1 {
                    term = -term;
                }
                acc += &term;
            }
            acc
        }
    }
}

fn ginv_as_f64(m: &MetricData) -> [[f64; 7]; 7] {
    let mut out = [[0.0; 7]; 7];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = m.gram_inv.get(i, j).to_f64();
        }
    }
    out
}

/// s×s minor determinant on the stack (s ≤ 7), Gaussian with partial pivots.
fn minor_det_f64(g: &[[f64; 7]; 7], s_mask: u8, t_mask: u8) -> f64 {
    let rows = mask_indices(s_mask);
    let cols = mask_indices(t_mask);
    let n = rows.len();
    let mut a = [[0.0f64; 7]; 7];
    for (i, &r) in rows.iter().enumerate() {
        for (j, &c) in cols.iter().enumerate() {
            a[i][j] = g[r - 1][c - 1];
        }
    }
    let mut det = 1.0f64;
    for k in 0..n {
        let mut piv = k;
        for r in k + 1..n {
            if a[r][k].abs() > a[piv][k].abs() {
                piv = r;
            }
        }
        if a[piv][k] == 0.0 {
            return 0.0;
        }
        if piv != k {
            a.swap(piv, k);
            det = -det;
        }
        det *= a[k][k];
        for r in k + 1..n {
            let f = a[r][k] / a[k][k];
            for c in k + 1..n {
                a[r][c] -= f * a[k][c];
            }
        }
    }
    det
}

/// Inner product on Λ^s induced by the metric.
pub fn form_inner(m: &MetricData, a: &KForm, b: &KForm) -> Scalar {
    assert_eq!(a.degree(), b.degree(), "degree mismatch");
    let s = a.degree();
    let mut acc = Scalar::zero(m.mode);
    match m.mode {
        Mode::Exact => {
            let mat = m.lambda_matrix(s);
            let n = basis_masks(s).len();
            for (ma, ca) in a.terms() {
                let row = mask_position(ma);
                for (mb, cb) in b.terms() {
                    let ip = &mat[row * n + mask_position(mb)];
                    if !ip.is_zero() {
                        acc += &(&(ca * cb) * ip);
                    }
                }
            }
        }
        Mode::Float => {
            let g = ginv_as_f64(m);
            let mut total = 0.0;
            for (ma, ca) in a.terms() {
                for (mb, cb) in b.terms() {
                    total += ca.to_f64() * cb.to_f64() * minor_det_f64(&g, ma, mb);
                }
            }
            acc = Scalar::float(total);
        }
    }
    acc
}

/// Hodge star: the unique form with b ∧ ∗a = ⟨b, a⟩_ψ vol_ψ for all b.
pub fn hodge_star(m: &MetricData, a: &KForm) -> KForm {
    let s = a.degree();
    let mode = m.mode;
    assert_eq!(
        mode,
        a.mode(),
        "metric and form must share a scalar mode (cast explicitly)"
    );
    let vol = m.signed_vol();
    let top = 0b111_1111u8;
    let mut out = KForm::zero(DIM - s, mode);
    // orthonormal Gram short-circuit covers every catalog structure
    let diagonal_identity = m.gram_inv == Matrix::identity(DIM, mode);
    let ginv_f = match (mode, diagonal_identity) {
        (Mode::Float, false) => Some(ginv_as_f64(m)),
        _ => None,
    };
    let lambda_mat = match (mode, diagonal_identity) {
        (Mode::Exact, false) => Some((m.lambda_matrix(s), basis_masks(s).len())),
        _ => None,
    };
    for &s_mask in basis_masks(s) {
        let comp = top & !s_mask;
        let inner = if diagonal_identity {
            a.coeff(s_mask).clone()
        } else if let Some(g) = &ginv_f {
            let mut total = 0.0;
            for (t_mask, ct) in a.terms() {
                total += ct.to_f64() * minor_det_f64(g, s_mask, t_mask);
            }
            Scalar::float(total)
        } else {
            let (mat, n) = lambda_mat.expect("exact general path");
            let row = mask_position(s_mask);
            let mut acc = Scalar::zero(mode);
            for (t_mask, ct) in a.terms() {
                let ip = &mat[row * n + mask_position(t_mask)];
                if !ip.is_zero() {
                    acc += &(ct * ip);
                }
            }
            acc
        };
        if inner.is_zero() {
            continue;
        }
        let sign = merge_sign_pub(s_mask, comp);
        let mut v = &inner * &vol;
        if sign < 0 {
            v = -v;
        }
        out.set_coeff(comp, v);
    }
    out
}

fn merge_sign_pub(a: u8, b: u8) -> i32 {
    // parity of pairs (i in a, j in b) with j < i
    let mut inv = 0u32;
    let mut bits = a;
    while bits != 0 {
        let i = bits.trailing_zeros();
        inv += (b & ((1u8 << i) - 1)).count_ones();
        bits &= bits - 1;
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}
