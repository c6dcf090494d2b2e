//! Exterior algebra Λ^k of a fixed 7-dimensional space.
//!
//! Basis k-forms are indexed by strictly increasing tuples of indices 1…7,
//! stored densely (7, 21, 35, 35, 21, 7, 1 slots per degree). Tuples are
//! represented as bitmasks internally; bit i−1 stands for index i.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Mode, Scalar};

pub const DIM: usize = 7;

const BINOM7: [usize; 8] = [1, 7, 21, 35, 35, 21, 7, 1];

pub fn binom7(k: usize) -> usize {
    BINOM7[k]
}

struct BasisTables {
    masks: [Vec<u8>; 8],
    index_of: [usize; 128],
}

fn tables() -> &'static BasisTables {
    static TABLES: OnceLock<BasisTables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut masks: [Vec<u8>; 8] = Default::default();
        let mut by_degree: Vec<Vec<u8>> = vec![Vec::new(); 8];
        // Lexicographic order of the index tuples.
        fn gen(start: usize, remaining: usize, mask: u8, out: &mut Vec<Vec<u8>>, k: usize) {
            if remaining == 0 {
                out[k].push(mask);
                return;
            }
            for i in start..=DIM {
                gen(i + 1, remaining - 1, mask | (1 << (i - 1)), out, k);
            }
        }
        for k in 0..=DIM {
            gen(1, k, 0, &mut by_degree, k);
        }
        let mut index_of = [0usize; 128];
        for k in 0..=DIM {
            masks[k] = by_degree[k].clone();
            for (pos, &m) in masks[k].iter().enumerate() {
                index_of[m as usize] = pos;
            }
        }
        BasisTables { masks, index_of }
    })
}

/// Masks of the degree-k basis tuples in lexicographic tuple order.
pub fn basis_masks(k: usize) -> &'static [u8] {
    &tables().masks[k]
}

/// Position of a mask within its degree's basis list.
pub fn mask_position(mask: u8) -> usize {
    tables().index_of[mask as usize]
}

/// 1-based indices of a mask, ascending.
pub fn mask_indices(mask: u8) -> Vec<usize> {
    (1..=DIM).filter(|i| mask & (1 << (i - 1)) != 0).collect()
}

pub fn indices_to_mask(indices: &[usize]) -> Result<u8> {
    let mut mask = 0u8;
    let mut prev = 0usize;
    for &i in indices {
        if i < 1 || i > DIM {
            return Err(Error::Parse(format!("index {i} out of range 1..=7")));
        }
        if i <= prev {
            return Err(Error::Parse(format!(
                "indices must be strictly increasing, got {indices:?}"
            )));
        }
        prev = i;
        mask |= 1 << (i - 1);
    }
    Ok(mask)
}

/// Sign of merging two disjoint ascending tuples a, b into one ascending
/// tuple: parity of the number of pairs (i ∈ a, j ∈ b) with j < i.
fn merge_sign(a: u8, b: u8) -> i32 {
    let mut inversions = 0u32;
    let mut bits = a;
    while bits != 0 {
        let i = bits.trailing_zeros();
        inversions += (b & ((1u8 << i) - 1)).count_ones();
        bits &= bits - 1;
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Vector in the fixed basis e₁…e₇.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector(pub [Scalar; 7]);

impl Vector {
    pub fn zero(mode: Mode) -> Vector {
        Vector(std::array::from_fn(|_| Scalar::zero(mode)))
    }

    /// Basis vector e_i (1-based).
    pub fn basis(i: usize, mode: Mode) -> Vector {
        assert!((1..=DIM).contains(&i));
        let mut v = Vector::zero(mode);
        v.0[i - 1] = Scalar::one(mode);
        v
    }

    pub fn from_fn(mut f: impl FnMut(usize) -> Scalar) -> Vector {
        Vector(std::array::from_fn(|i| f(i)))
    }

    pub fn get(&self, i: usize) -> &Scalar {
        &self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, o: &Vector) -> Vector {
        Vector::from_fn(|i| &self.0[i] + &o.0[i])
    }

    pub fn scale(&self, s: &Scalar) -> Vector {
        Vector::from_fn(|i| &self.0[i] * s)
    }

    pub fn mode(&self) -> Mode {
        self.0[0].mode()
    }
}

/// Alternating k-form with dense coefficients over increasing index tuples.
#[derive(Clone, PartialEq)]
pub struct KForm {
    degree: usize,
    coeffs: Vec<Scalar>,
}

impl KForm {
    pub fn zero(degree: usize, mode: Mode) -> KForm {
        assert!(degree <= DIM, "degree out of range");
        KForm {
            degree,
            coeffs: vec![Scalar::zero(mode); binom7(degree)],
        }
    }

    /// The basis form e^{i₁…i_k} for a mask.
    pub fn basis(mask: u8, mode: Mode) -> KForm {
        let degree = mask.count_ones() as usize;
        let mut f = KForm::zero(degree, mode);
        f.coeffs[mask_position(mask)] = Scalar::one(mode);
        f
    }

    /// Build from (indices, coefficient) terms; indices strictly increasing.
    pub fn from_terms(degree: usize, terms: &[(&[usize], Scalar)]) -> Result<KForm> {
        let mode = terms.first().map_or(Mode::Exact, |(_, c)| c.mode());
        let mut f = KForm::zero(degree, mode);
        for (indices, coeff) in terms {
            if indices.len() != degree {
                return Err(Error::Parse(format!(
                    "term {indices:?} has wrong arity for a {degree}-form"
                )));
            }
            if coeff.mode() != mode {
                return Err(Error::MixedMode);
            }
            let mask = indices_to_mask(indices)?;
            let pos = mask_position(mask);
            f.coeffs[pos] = &f.coeffs[pos] + coeff;
        }
        Ok(f)
    }

    /// 0-form from a scalar.
    pub fn constant(s: Scalar) -> KForm {
        KForm {
            degree: 0,
            coeffs: vec![s],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn mode(&self) -> Mode {
        self.coeffs[0].mode()
    }

    pub fn coeff(&self, mask: u8) -> &Scalar {
        debug_assert_eq!(mask.count_ones() as usize, self.degree);
        &self.coeffs[mask_position(mask)]
    }

    pub fn coeff_at(&self, indices: &[usize]) -> &Scalar {
        self.coeff(indices_to_mask(indices).expect("bad indices"))
    }

    pub fn set_coeff(&mut self, mask: u8, v: Scalar) {
        debug_assert_eq!(mask.count_ones() as usize, self.degree);
        let pos = mask_position(mask);
        self.coeffs[pos] = v;
    }

    /// Nonzero terms as (mask, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (u8, &Scalar)> {
        basis_masks(self.degree)
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&m, c)| (m, c))
    }

    /// All coefficients in basis order.
    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, o: &KForm) -> KForm {
        assert_eq!(self.degree, o.degree, "degree mismatch");
        KForm {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, o: &KForm) -> KForm {
        assert_eq!(self.degree, o.degree, "degree mismatch");
        KForm {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> KForm {
        self.map(|c| -c)
    }

    pub fn scale(&self, s: &Scalar) -> KForm {
        self.map(|c| c * s)
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> KForm {
        KForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn to_float(&self) -> KForm {
        self.map(Scalar::to_float)
    }

    /// ℓ² norm of the coefficient vector as f64.
    pub fn norm_f64(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| {
                let v = c.to_f64();
                v * v
            })
            .sum::<f64>()
            .sqrt()
    }

    /// Wedge product. Degrees summing past 7 give the zero form (Λ^{>7} = 0);
    /// the returned zero is labeled with degree min(k_a + k_b, 7).
    pub fn wedge(&self, o: &KForm) -> KForm {
        let deg = self.degree + o.degree;
        if deg > DIM {
            return KForm::zero(DIM, self.mode());
        }
        let mode = self.mode();
        assert_eq!(mode, o.mode(), "scalar mode mismatch in wedge");
        let mut out = KForm::zero(deg, mode);
        for (ma, ca) in self.terms() {
            for (mb, cb) in o.terms() {
                if ma & mb != 0 {
                    continue;
                }
                let sign = merge_sign(ma, mb);
                let pos = mask_position(ma | mb);
                let mut term = ca * cb;
                if sign < 0 {
                    term = -term;
                }
                out.coeffs[pos] = &out.coeffs[pos] + &term;
            }
        }
        out
    }

    /// Interior product ι_x a.
    pub fn interior(&self, x: &Vector) -> Result<KForm> {
        if self.degree == 0 {
            return Err(Error::DegreeZero);
        }
        let mode = self.mode();
        let mut out = KForm::zero(self.degree - 1, mode);
        for (mask, coeff) in self.terms() {
            let mut pos_in_tuple = 0u32;
            for i in 1..=DIM {
                let bit = 1u8 << (i - 1);
                if mask & bit == 0 {
                    continue;
                }
                let xi = &x.0[i - 1];
                if !xi.is_zero() {
                    let rest = mask & !bit;
                    let idx = mask_position(rest);
                    let mut term = xi * coeff;
                    if pos_in_tuple % 2 == 1 {
                        term = -term;
                    }
                    out.coeffs[idx] = &out.coeffs[idx] + &term;
                }
                pos_in_tuple += 1;
            }
        }
        Ok(out)
    }

    /// Evaluate on basis vectors given by an ascending mask, with one general
    /// vector in the first slot: a(v, e_{j₁}, …, e_{j_{k−1}}).
    pub(crate) fn eval_vector_first(&self, v: &Vector, rest: u8) -> Scalar {
        let mode = self.mode();
        let mut acc = Scalar::zero(mode);
        for m in 1..=DIM {
            let bit = 1u8 << (m - 1);
            if rest & bit != 0 {
                continue;
            }
            let vm = &v.0[m - 1];
            if vm.is_zero() {
                continue;
            }
            // moving e_m from the front into sorted position crosses the
            // rest-indices below m
            let below = (rest & (bit - 1)).count_ones();
            let mut term = vm * self.coeff(rest | bit);
            if below % 2 == 1 {
                term = -term;
            }
            acc += &term;
        }
        acc
    }
}

/// GL action on forms: (h·a)(X₁,…,X_k) = a(h⁻¹X₁,…,h⁻¹X_k).
pub fn gl_act(h: &Matrix, a: &KForm) -> Result<KForm> {
    assert_eq!(h.rows(), DIM);
    assert_eq!(h.cols(), DIM);
    let hinv = h.inverse()?;
    Ok(gl_act_precomputed_inverse(&hinv, a))
}

/// GL action given the precomputed inverse of h.
pub fn gl_act_precomputed_inverse(hinv: &Matrix, a: &KForm) -> KForm {
    let k = a.degree();
    let mode = a.mode();
    if k == 0 {
        return a.clone();
    }
    let mut out = KForm::zero(k, mode);
    let masks = basis_masks(k);
    for (t_pos, &t_mask) in masks.iter().enumerate() {
        let t_idx = mask_indices(t_mask);
        let mut acc = Scalar::zero(mode);
        for (s_mask, coeff) in a.terms() {
            let s_idx = mask_indices(s_mask);
            // det of the submatrix of h⁻¹ with rows S, columns T
            let rows: Vec<usize> = s_idx.iter().map(|&i| i - 1).collect();
            let cols: Vec<usize> = t_idx.iter().map(|&i| i - 1).collect();
            let d = hinv.submatrix(&rows, &cols).det();
            acc += &(coeff * &d);
        }
        out.coeffs[t_pos] = acc;
    }
    out
}

impl fmt::Debug for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mask, coeff) in self.terms() {
            let indices: String = mask_indices(mask).iter().map(|i| i.to_string()).collect();
            let label = if self.degree == 0 {
                String::new()
            } else {
                format!("e{indices}")
            };
            let text = coeff.to_string();
            if first {
                first = false;
            } else if !text.starts_with('-') {
                write!(f, " + ")?;
            } else {
                write!(f, " ")?;
            }
            if self.degree == 0 {
                write!(f, "{text}")?;
            } else if text == "1" {
                write!(f, "{label}")?;
            } else if text == "-1" {
                write!(f, "-{label}")?;
            } else if text.contains('+') || text[1..].contains('-') {
                write!(f, "({text})*{label}")?;
            } else {
                write!(f, "{text}*{label}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn e(indices: &[usize]) -> KForm {
        KForm::basis(indices_to_mask(indices).unwrap(), Mode::Exact)
    }

    #[test]
    fn basis_counts() {
        for k in 0..=7 {
            assert_eq!(basis_masks(k).len(), binom7(k));
        }
    }

    #[test]
    fn wedge_of_basis_one_forms() {
        let a = e(&[1]).wedge(&e(&[2]));
        assert_eq!(a, e(&[1, 2]));
        let b = e(&[2]).wedge(&e(&[1]));
        assert_eq!(b, e(&[1, 2]).neg());
    }

    #[test]
    fn wedge_with_repeated_factor_vanishes() {
        let a = e(&[1, 2]).wedge(&e(&[1, 2]));
        assert!(a.is_zero());
    }

    #[test]
    fn wedge_past_top_degree_is_zero() {
        let a = e(&[1, 2, 3, 4]).wedge(&e(&[3, 5, 6, 7]));
        assert!(a.is_zero());
        assert_eq!(a.degree(), 7);
    }

    #[test]
    fn interior_of_basis_forms() {
        let x = Vector::basis(1, Mode::Exact);
        assert_eq!(e(&[1, 2]).interior(&x).unwrap(), e(&[2]));
        let y = Vector::basis(3, Mode::Exact);
        assert!(e(&[1, 2]).interior(&y).unwrap().is_zero());
        // sign from position: ι_{e2} e^{12} = −e^1
        let z = Vector::basis(2, Mode::Exact);
        assert_eq!(e(&[1, 2]).interior(&z).unwrap(), e(&[1]).neg());
    }

    #[test]
    fn interior_of_zero_form_is_error() {
        let c = KForm::constant(Scalar::from_int(1));
        assert!(matches!(
            c.interior(&Vector::basis(1, Mode::Exact)),
            Err(Error::DegreeZero)
        ));
    }

    #[test]
    fn interior_of_reference_form() {
        // ι_{e1} φ₀ = e^{27} + e^{35} − e^{46}
        let phi0 = catalog::phi0(Mode::Exact);
        let got = phi0.interior(&Vector::basis(1, Mode::Exact)).unwrap();
        let want = KForm::from_terms(
            2,
            &[
                (&[2, 7], Scalar::from_int(1)),
                (&[3, 5], Scalar::from_int(1)),
                (&[4, 6], Scalar::from_int(-1)),
            ],
        )
        .unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn triple_wedge_of_interior_products() {
        // ι_{e1}φ₀ ∧ ι_{e1}φ₀ ∧ φ₀ = 6·e^{1…7}
        let phi0 = catalog::phi0(Mode::Exact);
        let i1 = phi0.interior(&Vector::basis(1, Mode::Exact)).unwrap();
        let w = i1.wedge(&i1).wedge(&phi0);
        let mut want = KForm::zero(7, Mode::Exact);
        want.set_coeff(0b111_1111, Scalar::from_int(6));
        assert_eq!(w, want);
    }

    #[test]
    fn gl_act_identity_and_scalar_matrix() {
        let phi0 = catalog::phi0(Mode::Exact);
        let id = Matrix::identity(7, Mode::Exact);
        assert_eq!(gl_act(&id, &phi0).unwrap(), phi0);
        // (c^{−1/k} I)·φ = c·φ on 3-forms with c = 8, c^{−1/3} = 1/2
        let half = Matrix::identity(7, Mode::Exact).scale(&Scalar::from_ratio(1, 2));
        let acted = gl_act(&half, &phi0).unwrap();
        assert_eq!(acted, phi0.scale(&Scalar::from_int(8)));
    }

    #[test]
    fn gl_act_is_singular_error_on_singular_input() {
        let z = Matrix::zeros(7, 7, Mode::Exact);
        assert!(matches!(
            gl_act(&z, &catalog::phi0(Mode::Exact)),
            Err(Error::SingularMatrix)
        ));
    }

    #[test]
    fn gl_act_composes() {
        let phi0 = catalog::phi0(Mode::Exact);
        let mut h1 = Matrix::identity(7, Mode::Exact);
        h1.set(0, 3, Scalar::from_int(2));
        h1.set(2, 5, Scalar::from_int(-1));
        let mut h2 = Matrix::identity(7, Mode::Exact);
        h2.set(1, 0, Scalar::sqrt2());
        h2.set(4, 6, Scalar::from_int(3));
        let lhs = gl_act(&h1.matmul(&h2), &phi0).unwrap();
        let rhs = gl_act(&h1, &gl_act(&h2, &phi0).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
