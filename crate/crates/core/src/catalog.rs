//! Built-in catalog: the twelve 7-dimensional nilpotent Lie algebras that
//! carry a closed G2-structure, their candidate positive 3-forms, parameter
//! families, positivity witnesses, and the reference soliton data used by
//! the table-reproduction harness.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exterior::{mask_indices, KForm, DIM};
use crate::liealg::LieAlgebra;
use crate::matrix::Matrix;
use crate::scalar::{Mode, Scalar};

pub const NAMES: [&str; 12] = [
    "n1", "n2", "n3", "n4", "n5", "n6", "n7", "n8", "n9", "n10", "n11", "n12",
];

/// A fully instantiated catalog entry.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub algebra: LieAlgebra,
    /// Candidate positive 3-form; `None` for n8…n12 (no closed form encoded).
    pub form: Option<KForm>,
    /// Human-readable closedness locus of the family, if parameterized.
    pub closedness_constraint: Option<&'static str>,
    /// Human-readable soliton locus, where one is known.
    pub soliton_constraint: Option<&'static str>,
    /// Signed-permutation h with h·φ = φ₀, when available.
    pub positivity_witness: Option<Matrix>,
}

/// One reference row: exact expected values at the default parameter binding.
pub struct ExpectedRow {
    pub name: &'static str,
    pub params: &'static [(&'static str, &'static str)],
    pub tau: &'static [(&'static [usize], &'static str)],
    pub laplacian: &'static [(&'static [usize], &'static str)],
    pub ric_diag: [&'static str; 7],
    pub scalar_curvature: &'static str,
    pub pinching: &'static str,
    pub lambda: &'static str,
    pub derivation: [[&'static str; 7]; 7],
    pub q: [[&'static str; 7]; 7],
}

fn s_exact(text: &str) -> Scalar {
    text.parse().expect("catalog scalar literal")
}

fn cast(v: &Scalar, mode: Mode) -> Scalar {
    match mode {
        Mode::Exact => v.clone(),
        Mode::Float => v.to_float(),
    }
}

/// The reference positive 3-form
/// φ₀ = e^{127} + e^{347} + e^{567} + e^{135} − e^{146} − e^{236} − e^{245}.
pub fn phi0(mode: Mode) -> KForm {
    let one = Scalar::one(mode);
    let neg = -&one;
    KForm::from_terms(
        3,
        &[
            (&[1, 2, 7], one.clone()),
            (&[3, 4, 7], one.clone()),
            (&[5, 6, 7], one.clone()),
            (&[1, 3, 5], one),
            (&[1, 4, 6], neg.clone()),
            (&[2, 3, 6], neg.clone()),
            (&[2, 4, 5], neg),
        ],
    )
    .expect("reference form")
}

const FORM_TERMS: [(&str, &[(&[usize], i64)]); 7] = [
    (
        "n1",
        &[
            (&[1, 2, 7], 1),
            (&[3, 4, 7], 1),
            (&[5, 6, 7], 1),
            (&[1, 3, 5], 1),
            (&[1, 4, 6], -1),
            (&[2, 3, 6], -1),
            (&[2, 4, 5], -1),
        ],
    ),
    (
        "n2",
        &[
            (&[1, 4, 7], 1),
            (&[2, 6, 7], 1),
            (&[3, 5, 7], 1),
            (&[1, 2, 3], 1),
            (&[1, 5, 6], 1),
            (&[2, 4, 5], 1),
            (&[3, 4, 6], -1),
        ],
    ),
    (
        "n3",
        &[
            (&[1, 2, 3], 1),
            (&[1, 4, 5], 1),
            (&[1, 6, 7], 1),
            (&[2, 4, 6], 1),
            (&[2, 5, 7], -1),
            (&[3, 4, 7], -1),
            (&[3, 5, 6], -1),
        ],
    ),
    (
        "n4",
        &[
            (&[1, 2, 4], -1),
            (&[4, 5, 6], -1),
            (&[3, 4, 7], 1),
            (&[1, 3, 5], 1),
            (&[1, 6, 7], 1),
            (&[2, 5, 7], 1),
            (&[2, 3, 6], -1),
        ],
    ),
    (
        "n5",
        &[
            (&[1, 3, 4], 1),
            (&[4, 5, 7], 1),
            (&[2, 4, 6], -1),
            (&[1, 2, 5], -1),
            (&[3, 5, 6], -1),
            (&[1, 6, 7], 1),
            (&[2, 3, 7], -1),
        ],
    ),
    (
        "n6",
        &[
            (&[1, 2, 3], 1),
            (&[3, 4, 7], 1),
            (&[3, 5, 6], 1),
            (&[1, 4, 5], 1),
            (&[2, 4, 6], -1),
            (&[1, 6, 7], 1),
            (&[2, 5, 7], 1),
        ],
    ),
    (
        "n7",
        &[
            (&[1, 2, 7], 1),
            (&[1, 3, 5], 1),
            (&[1, 4, 6], -1),
            (&[2, 3, 6], -1),
            (&[2, 4, 5], -1),
            (&[3, 4, 7], 1),
            (&[5, 6, 7], 1),
        ],
    ),
];

/// Candidate 3-form φ_i of a catalog family (n1…n7).
pub fn candidate_form(name: &str, mode: Mode) -> Result<KForm> {
    let terms = FORM_TERMS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| match NAMES.contains(&name) {
            true => Error::BadParams(format!("no candidate 3-form encoded for {name}")),
            false => Error::UnknownAlgebra(name.to_string()),
        })?;
    let built: Vec<(&[usize], Scalar)> = terms
        .iter()
        .map(|&(idx, c)| (idx, cast(&Scalar::from_int(c), mode)))
        .collect();
    KForm::from_terms(3, &built)
}

fn param_names(name: &str) -> Result<&'static [&'static str]> {
    Ok(match name {
        "n1" | "n8" | "n9" | "n10" | "n11" | "n12" => &[],
        "n2" => &["a", "b"],
        "n3" => &["a", "b", "c"],
        "n4" | "n5" | "n6" => &["a", "b", "c", "d"],
        "n7" => &["a", "b", "c", "d", "e"],
        _ => return Err(Error::UnknownAlgebra(name.to_string())),
    })
}

/// Default parameters: the reference soliton bindings for n2…n7, empty otherwise.
pub fn default_params(name: &str) -> Result<BTreeMap<String, Scalar>> {
    let pairs: &[(&str, &str)] = match name {
        "n1" | "n8" | "n9" | "n10" | "n11" | "n12" => &[],
        "n2" => &[("a", "1"), ("b", "1")],
        "n3" => &[("a", "1"), ("b", "3/4"), ("c", "1/4")],
        "n4" => &[("a", "sqrt2"), ("b", "1"), ("c", "sqrt2"), ("d", "1")],
        "n5" => &[("a", "sqrt2"), ("b", "1"), ("c", "1"), ("d", "sqrt2")],
        "n6" => &[("a", "sqrt2"), ("b", "sqrt2"), ("c", "1"), ("d", "1")],
        "n7" => &[
            ("a", "-4"),
            ("b", "2"),
            ("c", "2"),
            ("d", "sqrt6"),
            ("e", "sqrt6"),
        ],
        _ => return Err(Error::UnknownAlgebra(name.to_string())),
    };
    Ok(pairs
        .iter()
        .map(|(k, v)| (k.to_string(), s_exact(v)))
        .collect())
}

type BracketBuilder = fn(&BTreeMap<String, Scalar>, Mode) -> Vec<(usize, usize, usize, Scalar)>;

fn fixed_terms(
    terms: &[(usize, usize, usize, i64)],
    mode: Mode,
) -> Vec<(usize, usize, usize, Scalar)> {
    terms
        .iter()
        .map(|&(i, j, k, c)| (i, j, k, cast(&Scalar::from_int(c), mode)))
        .collect()
}

fn bracket_builder(name: &str) -> Result<BracketBuilder> {
    Ok(match name {
        "n1" => |_, _| Vec::new(),
        "n2" => |p, m| vec![(1, 2, 5, -&cast(&p["a"], m)), (1, 3, 6, -&cast(&p["b"], m))],
        "n3" => |p, m| {
            vec![
                (1, 2, 4, -&cast(&p["a"], m)),
                (1, 3, 5, -&cast(&p["b"], m)),
                (2, 3, 6, -&cast(&p["c"], m)),
            ]
        },
        "n4" => |p, m| {
            vec![
                (1, 2, 3, -&cast(&p["a"], m)),
                (1, 3, 6, -&cast(&p["b"], m)),
                (2, 4, 6, -&cast(&p["c"], m)),
                (1, 5, 7, -&cast(&p["d"], m)),
            ]
        },
        "n5" => |p, m| {
            vec![
                (1, 2, 3, -&cast(&p["a"], m)),
                (1, 3, 6, -&cast(&p["b"], m)),
                (1, 4, 7, -&cast(&p["c"], m)),
                (2, 5, 7, -&cast(&p["d"], m)),
            ]
        },
        "n6" => |p, m| {
            vec![
                (1, 2, 4, -&cast(&p["a"], m)),
                (1, 3, 5, -&cast(&p["b"], m)),
                (1, 4, 6, -&cast(&p["c"], m)),
                (1, 5, 7, -&cast(&p["d"], m)),
            ]
        },
        "n7" => |p, m| {
            vec![
                (1, 2, 4, -&cast(&p["a"], m)),
                (1, 7, 6, -&cast(&p["b"], m)),
                (2, 7, 5, -&cast(&p["c"], m)),
                (5, 7, 3, -&cast(&p["d"], m)),
                (6, 7, 4, -&cast(&p["e"], m)),
            ]
        },
        "n8" => |_, m| {
            fixed_terms(
                &[
                    (1, 2, 3, -1),
                    (1, 3, 4, -1),
                    (2, 3, 5, -1),
                    (1, 5, 6, -1),
                    (2, 4, 6, -1),
                    (1, 6, 7, -1),
                    (3, 4, 7, -1),
                ],
                m,
            )
        },
        "n9" => |_, m| {
            fixed_terms(
                &[
                    (1, 2, 3, -1),
                    (1, 3, 4, -1),
                    (2, 3, 5, -1),
                    (1, 5, 6, -1),
                    (2, 4, 6, -1),
                    (1, 6, 7, -1),
                    (3, 4, 7, -1),
                    (2, 5, 7, -1),
                ],
                m,
            )
        },
        "n10" => |_, m| {
            fixed_terms(
                &[
                    (1, 2, 3, -1),
                    (1, 3, 5, -1),
                    (2, 4, 5, -1),
                    (1, 4, 6, -1),
                    (4, 6, 7, -1),
                    (3, 4, 7, -1),
                    (1, 5, 7, -1),
                    (2, 3, 7, -1),
                ],
                m,
            )
        },
        "n11" => |_, m| {
            fixed_terms(
                &[
                    (1, 2, 3, -1),
                    (1, 3, 5, -1),
                    (2, 4, 6, -1),
                    (2, 3, 6, -1),
                    (2, 5, 7, -1),
                    (3, 4, 7, -1),
                    (1, 5, 7, -1),
                    (1, 6, 7, -1),
                    (2, 6, 7, 3),
                ],
                m,
            )
        },
        "n12" => |_, m| {
            fixed_terms(
                &[
                    (1, 2, 4, -1),
                    (2, 3, 5, -1),
                    (1, 3, 6, 1),
                    (2, 6, 7, -2),
                    (3, 4, 7, 2),
                    (1, 6, 7, 2),
                    (2, 5, 7, -2),
                ],
                m,
            )
        },
        _ => return Err(Error::UnknownAlgebra(name.to_string())),
    })
}

fn constraints(name: &str) -> (Option<&'static str>, Option<&'static str>) {
    match name {
        "n2" => (Some("a = b"), None),
        "n3" => (Some("a = b + c"), None),
        "n4" => (Some("a = c and b = d"), Some("a^2 = 2*b^2")),
        "n5" => (Some("a = d and b = c"), Some("a^2 = 2*b^2")),
        "n6" => (Some("a = b and c = d"), Some("a^2 = 2*c^2")),
        "n7" => (
            Some("a = -b - c and d = e"),
            Some("e^2 = (b^2 + c^2 + b*c)/2"),
        ),
        _ => (None, None),
    }
}

/// Instantiate a catalog algebra with parameter bindings.
pub fn get(name: &str, params: &BTreeMap<String, Scalar>, mode: Mode) -> Result<CatalogEntry> {
    let wanted = param_names(name)?;
    if params.len() != wanted.len() {
        return Err(Error::BadParams(format!(
            "{name} takes parameters {{{}}}, got {} value(s)",
            wanted.join(", "),
            params.len()
        )));
    }
    for &w in wanted {
        let v = params
            .get(w)
            .ok_or_else(|| Error::BadParams(format!("{name}: missing parameter `{w}`")))?;
        if v.is_zero() {
            return Err(Error::BadParams(format!(
                "{name}: parameter `{w}` must be nonzero"
            )));
        }
    }
    let build = bracket_builder(name)?;
    let terms = build(params, mode);
    let algebra = LieAlgebra::new_in_mode(name, &terms, params.clone(), mode)?;
    let form = match candidate_form(name, mode) {
        Ok(f) => Some(f),
        Err(Error::BadParams(_)) => None,
        Err(e) => return Err(e),
    };
    // positivity is parameter independent: validate on construction; φ₅
    // carries the reversed orientation, which the metric layer handles
    if let Some(f) = &form {
        if crate::metric::positivity(f).class == crate::metric::PositivityClass::NotPositive {
            return Err(Error::NotPositive);
        }
    }
    let (closedness, soliton) = constraints(name);
    Ok(CatalogEntry {
        name: name.to_string(),
        algebra,
        form,
        closedness_constraint: closedness,
        soliton_constraint: soliton,
        positivity_witness: positivity_witness(name, mode),
    })
}

/// Entry at the reference (Tables) parameter binding.
pub fn table_entry(name: &str, mode: Mode) -> Result<CatalogEntry> {
    let params = default_params(name)?;
    let params = match mode {
        Mode::Exact => params,
        Mode::Float => params.into_iter().map(|(k, v)| (k, v.to_float())).collect(),
    };
    get(name, &params, mode)
}

// ---------------------------------------------------------------------------
// Positivity witnesses
// ---------------------------------------------------------------------------

/// Matrix of a signed permutation: entry j of the tuple is the signed image
/// of basis vector e_j, i.e. h(e_j) = sign(p_j)·e_{|p_j|}.
pub fn signed_permutation(tuple: [i64; 7]) -> Matrix {
    let mut m = Matrix::zeros(DIM, DIM, Mode::Exact);
    for (j, &p) in tuple.iter().enumerate() {
        let target = p.unsigned_abs() as usize;
        assert!((1..=7).contains(&target), "bad permutation entry");
        m.set(target - 1, j, Scalar::from_int(p.signum()));
    }
    m
}

/// Search for a signed permutation h with h·φ = φ₀.
pub fn find_signed_permutation_witness(phi: &KForm) -> Option<Matrix> {
    assert_eq!(phi.degree(), 3);
    let phi0 = phi0(Mode::Exact);
    let targets: Vec<(u8, i64)> = phi0
        .terms()
        .map(|(m, c)| (m, if c.is_positive() { 1 } else { -1 }))
        .collect();
    let source: Vec<(u8, i64)> = phi
        .terms()
        .map(|(m, c)| (m, if c.is_positive() { 1 } else { -1 }))
        .collect();
    // only ±1 coefficient forms can be signed-permutation images of φ₀
    for (mask, _) in phi.terms() {
        let c = phi.coeff(mask);
        if !(c == &Scalar::from_int(1) || c == &Scalar::from_int(-1)) {
            return None;
        }
    }
    if source.len() != targets.len() {
        return None;
    }
    let mut perm = [0usize; 7];
    let mut used = [false; 7];
    fn rec(
        slot: usize,
        perm: &mut [usize; 7],
        used: &mut [bool; 7],
        source: &[(u8, i64)],
        targets: &[(u8, i64)],
    ) -> Option<[i64; 7]> {
        if slot == 7 {
            return check_signs(perm, source, targets);
        }
        for image in 1..=7usize {
            if used[image - 1] {
                continue;
            }
            perm[slot] = image;
            used[image - 1] = true;
            if let Some(signed) = rec(slot + 1, perm, used, source, targets) {
                return Some(signed);
            }
            used[image - 1] = false;
        }
        None
    }
    let signed = rec(0, &mut perm, &mut used, &source, &targets)?;
    Some(signed_permutation(signed))
}

/// Try all 2^7 sign patterns on a fixed permutation.
fn check_signs(perm: &[usize; 7], source: &[(u8, i64)], targets: &[(u8, i64)]) -> Option<[i64; 7]> {
    // support must map onto support: sorted image tuples must match targets
    let mut image_info: Vec<(u8, i64, u8)> = Vec::with_capacity(source.len());
    // (target mask, source sign * sort parity, mask of source indices)
    for &(smask, ssign) in source {
        let idx = mask_indices(smask);
        let mapped: Vec<usize> = idx.iter().map(|&i| perm[i - 1]).collect();
        let mut sorted = mapped.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        let mut inversions = 0;
        for x in 0..mapped.len() {
            for y in x + 1..mapped.len() {
                if mapped[x] > mapped[y] {
                    inversions += 1;
                }
            }
        }
        let parity = if inversions % 2 == 0 { 1 } else { -1 };
        let tmask: u8 = sorted.iter().map(|&i| 1u8 << (i - 1)).sum();
        image_info.push((tmask, ssign * parity, smask));
    }
    for &(tmask, _, _) in &image_info {
        if !targets.iter().any(|&(m, _)| m == tmask) {
            return None;
        }
    }
    'signs: for bits in 0..128u32 {
        let sgn = |i: usize| -> i64 {
            if bits & (1 << (i - 1)) != 0 {
                -1
            } else {
                1
            }
        };
        for &(tmask, base, smask) in &image_info {
            let target_sign = targets.iter().find(|&&(m, _)| m == tmask).unwrap().1;
            let mut s = base;
            for i in mask_indices(smask) {
                s *= sgn(i);
            }
            if s != target_sign {
                continue 'signs;
            }
        }
        let mut out = [0i64; 7];
        for j in 0..7 {
            out[j] = perm[j] as i64 * sgn(j + 1);
        }
        return Some(out);
    }
    None
}

/// Positivity witness h with h·φ_i = φ₀ for the catalog families.
///
/// n3 and n4 carry fixed signed permutations; the others are found by
/// search once and cached. For n1 and n7 the form already is φ₀.
pub fn positivity_witness(name: &str, mode: Mode) -> Option<Matrix> {
    static CACHE: OnceLock<BTreeMap<&'static str, Option<Matrix>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| {
        let mut out = BTreeMap::new();
        out.insert("n1", Some(Matrix::identity(DIM, Mode::Exact)));
        out.insert("n7", Some(Matrix::identity(DIM, Mode::Exact)));
        out.insert("n3", Some(signed_permutation([1, 6, 4, 3, 5, 2, 7])));
        out.insert("n4", Some(signed_permutation([1, -6, 3, 4, 5, 2, 7])));
        for name in ["n2", "n5", "n6"] {
            let phi = candidate_form(name, Mode::Exact).expect("catalog form");
            out.insert(name, find_signed_permutation_witness(&phi));
        }
        out
    });
    let witness = cache.get(name).cloned().flatten()?;
    Some(match mode {
        Mode::Exact => witness,
        Mode::Float => witness.to_float(),
    })
}

// ---------------------------------------------------------------------------
// The classification-table n7 bracket and its change-of-basis matrix
// ---------------------------------------------------------------------------

/// The n7 bracket as listed in the classification table (unit coefficients):
/// `[e1,e2]=−e4, [e1,e3]=−e5, [e1,e4]=−e6, [e2,e3]=−e6, [e1,e5]=−e7`.
pub fn n7_classification_bracket(mode: Mode) -> LieAlgebra {
    let terms = fixed_terms(
        &[
            (1, 2, 4, -1),
            (1, 3, 5, -1),
            (1, 4, 6, -1),
            (2, 3, 6, -1),
            (1, 5, 7, -1),
        ],
        mode,
    );
    LieAlgebra::new("n7_classification", &terms, BTreeMap::new()).expect("classification bracket")
}

/// The embedded change-of-basis matrix between the n7 parameter family and
/// the classification-table bracket.
pub fn n7_change_of_basis(params: &BTreeMap<String, Scalar>) -> Result<Matrix> {
    for key in ["a", "b", "c", "d", "e"] {
        if !params.contains_key(key) {
            return Err(Error::BadParams(format!(
                "n7 change of basis needs `{key}`"
            )));
        }
    }
    let a = &params["a"];
    let b = &params["b"];
    let c = &params["c"];
    let d = &params["d"];
    let e = &params["e"];
    if a.is_zero() {
        return Err(Error::BadParams("n7: `a` must be nonzero".into()));
    }
    let mode = a.mode();
    let zero = Scalar::zero(mode);
    let be_a = &(b * e) / a;
    let bcde_a = &(&(&(b * c) * d) * e) / a;
    let be = b * e;
    let bce_a = &(&(b * c) * e) / a;
    let rows = vec![
        vec![
            zero.clone(),
            Scalar::one(mode),
            zero.clone(),
            zero.clone(),
            zero.clone(),
            zero.clone(),
            zero.clone(),
        ],
        vec![
            zero.clone(),
            zero.clone(),
            be_a,
            zero.clone(),
            zero.clone(),
            zero.clone(),
            zero.clone(),
        ],
        vec![
            zero.clone(),
            bcde_a.clone(),
            zero.clone(),
            zero.clone(),
            zero.clone(),
            zero.clone(),
            bcde_a,
        ],
        vec![
            zero.clone(),
            zero.clone(),
            -&be,
            zero.clone(),
            zero.clone(),
            be,
            zero.clone(),
        ],
        vec![
            zero.clone(),
            zero.clone(),
            zero.clone(),
            zero.clone(),
            -&bce_a,
            zero.clone(),
            zero.clone(),
        ],
        vec![
            zero.clone(),
            zero.clone(),
            zero.clone(),
            -b,
            zero.clone(),
            zero.clone(),
            zero.clone(),
        ],
        vec![
            Scalar::one(mode),
            zero.clone(),
            zero.clone(),
            zero.clone(),
            zero.clone(),
            zero.clone(),
            zero.clone(),
        ],
    ];
    Ok(Matrix::from_rows(rows))
}

// ---------------------------------------------------------------------------
// Expected table data (exact strings, parsed on demand)
// ---------------------------------------------------------------------------

pub fn expected_rows() -> &'static [ExpectedRow] {
    &EXPECTED
}

pub fn expected_row(name: &str) -> Option<&'static ExpectedRow> {
    EXPECTED.iter().find(|r| r.name == name)
}

/// Parse a 7×7 matrix of scalar strings.
pub fn parse_matrix7(rows: &[[&str; 7]; 7], mode: Mode) -> Matrix {
    Matrix::from_fn(7, 7, |i, j| {
        Scalar::parse(rows[i][j], mode).expect("catalog matrix literal")
    })
}

/// Parse expected form terms.
pub fn parse_form_terms(degree: usize, terms: &[(&[usize], &str)], mode: Mode) -> KForm {
    let built: Vec<(&[usize], Scalar)> = terms
        .iter()
        .map(|&(idx, c)| (idx, Scalar::parse(c, mode).expect("catalog form literal")))
        .collect();
    KForm::from_terms(degree, &built).expect("catalog form terms")
}

static EXPECTED: [ExpectedRow; 6] = [
    ExpectedRow {
        name: "n2",
        params: &[("a", "1"), ("b", "1")],
        tau: &[(&[2, 6], "1"), (&[3, 5], "-1")],
        laplacian: &[(&[1, 2, 3], "2")],
        ric_diag: ["-1", "-1/2", "-1/2", "0", "1/2", "1/2", "0"],
        scalar_curvature: "-1",
        pinching: "1/2",
        lambda: "5",
        derivation: [
            ["-1", "0", "0", "0", "0", "0", "0"],
            ["0", "-1", "0", "0", "0", "0", "0"],
            ["0", "0", "-1", "0", "0", "0", "0"],
            ["0", "0", "0", "-2", "0", "0", "0"],
            ["0", "0", "0", "0", "-2", "0", "0"],
            ["0", "0", "0", "0", "0", "-2", "0"],
            ["0", "0", "0", "0", "0", "0", "-2"],
        ],
        q: [
            ["-2/3", "0", "0", "0", "0", "0", "0"],
            ["0", "-2/3", "0", "0", "0", "0", "0"],
            ["0", "0", "-2/3", "0", "0", "0", "0"],
            ["0", "0", "0", "1/3", "0", "0", "0"],
            ["0", "0", "0", "0", "1/3", "0", "0"],
            ["0", "0", "0", "0", "0", "1/3", "0"],
            ["0", "0", "0", "0", "0", "0", "1/3"],
        ],
    },
    ExpectedRow {
        name: "n3",
        params: &[("a", "1"), ("b", "3/4"), ("c", "1/4")],
        tau: &[(&[1, 6], "-1/4"), (&[2, 5], "3/4"), (&[3, 4], "-1")],
        laplacian: &[(&[1, 2, 3], "13/8")],
        ric_diag: ["-25/32", "-17/32", "-5/16", "1/2", "9/32", "1/32", "0"],
        scalar_curvature: "-13/16",
        pinching: "1/2",
        lambda: "65/16",
        derivation: [
            ["-13/16", "0", "0", "0", "0", "0", "0"],
            ["0", "-13/16", "0", "0", "0", "0", "0"],
            ["0", "0", "-13/16", "0", "0", "0", "0"],
            ["0", "0", "0", "-13/8", "0", "0", "0"],
            ["0", "0", "0", "0", "-13/8", "0", "0"],
            ["0", "0", "0", "0", "0", "-13/8", "0"],
            ["0", "0", "0", "0", "0", "0", "-13/8"],
        ],
        q: [
            ["-13/24", "0", "0", "0", "0", "0", "0"],
            ["0", "-13/24", "0", "0", "0", "0", "0"],
            ["0", "0", "-13/24", "0", "0", "0", "0"],
            ["0", "0", "0", "13/48", "0", "0", "0"],
            ["0", "0", "0", "0", "13/48", "0", "0"],
            ["0", "0", "0", "0", "0", "13/48", "0"],
            ["0", "0", "0", "0", "0", "0", "13/48"],
        ],
    },
    ExpectedRow {
        name: "n4",
        params: &[("a", "sqrt2"), ("b", "1"), ("c", "sqrt2"), ("d", "1")],
        tau: &[
            (&[1, 6], "sqrt2"),
            (&[3, 4], "-sqrt2"),
            (&[3, 7], "1"),
            (&[5, 6], "-1"),
        ],
        laplacian: &[
            (&[1, 2, 4], "-4"),
            (&[1, 2, 7], "sqrt2"),
            (&[1, 3, 5], "2"),
            (&[2, 4, 5], "sqrt2"),
        ],
        ric_diag: ["-2", "-2", "1/2", "-1", "-1/2", "3/2", "1/2"],
        scalar_curvature: "-3",
        pinching: "3/4",
        lambda: "9",
        derivation: [
            ["-1", "0", "0", "0", "0", "0", "0"],
            ["0", "-2", "0", "0", "0", "0", "0"],
            ["0", "0", "-3", "0", "0", "0", "0"],
            ["0", "0", "0", "-2", "0", "0", "0"],
            ["-sqrt2", "0", "0", "0", "-3", "0", "0"],
            ["0", "0", "0", "0", "0", "-4", "0"],
            ["0", "0", "0", "-sqrt2", "0", "0", "-4"],
        ],
        q: [
            ["-2", "0", "0", "0", "1/2*sqrt2", "0", "0"],
            ["0", "-1", "0", "0", "0", "0", "0"],
            ["0", "0", "0", "0", "0", "0", "0"],
            ["0", "0", "0", "-1", "0", "0", "1/2*sqrt2"],
            ["1/2*sqrt2", "0", "0", "0", "0", "0", "0"],
            ["0", "0", "0", "0", "0", "1", "0"],
            ["0", "0", "0", "1/2*sqrt2", "0", "0", "1"],
        ],
    },
    ExpectedRow {
        name: "n5",
        params: &[("a", "sqrt2"), ("b", "1"), ("c", "1"), ("d", "sqrt2")],
        tau: &[
            (&[1, 7], "sqrt2"),
            (&[3, 5], "-sqrt2"),
            (&[3, 7], "1"),
            (&[4, 6], "-1"),
        ],
        laplacian: &[
            (&[1, 2, 5], "-4"),
            (&[1, 2, 7], "sqrt2"),
            (&[1, 3, 4], "2"),
            (&[2, 3, 5], "sqrt2"),
        ],
        ric_diag: ["-2", "-2", "1/2", "-1/2", "-1", "1/2", "3/2"],
        scalar_curvature: "-3",
        pinching: "3/4",
        lambda: "9",
        derivation: [
            ["-1", "0", "0", "0", "0", "0", "0"],
            ["0", "-2", "0", "0", "0", "0", "0"],
            ["sqrt2", "0", "-3", "0", "0", "0", "0"],
            ["0", "0", "0", "-3", "0", "0", "0"],
            ["0", "0", "0", "0", "-2", "0", "0"],
            ["0", "0", "0", "0", "0", "-4", "0"],
            ["0", "0", "0", "0", "-sqrt2", "0", "-4"],
        ],
        q: [
            ["-2", "0", "-1/2*sqrt2", "0", "0", "0", "0"],
            ["0", "-1", "0", "0", "0", "0", "0"],
            ["-1/2*sqrt2", "0", "0", "0", "0", "0", "0"],
            ["0", "0", "0", "0", "0", "0", "0"],
            ["0", "0", "0", "0", "-1", "0", "1/2*sqrt2"],
            ["0", "0", "0", "0", "0", "1", "0"],
            ["0", "0", "0", "0", "1/2*sqrt2", "0", "1"],
        ],
    },
    ExpectedRow {
        name: "n6",
        params: &[("a", "sqrt2"), ("b", "sqrt2"), ("c", "1"), ("d", "1")],
        tau: &[
            (&[2, 5], "sqrt2"),
            (&[3, 4], "-sqrt2"),
            (&[4, 7], "1"),
            (&[5, 6], "-1"),
        ],
        laplacian: &[
            (&[1, 2, 3], "4"),
            (&[1, 2, 7], "sqrt2"),
            (&[1, 3, 6], "-sqrt2"),
            (&[1, 4, 5], "2"),
        ],
        ric_diag: ["-3", "-1", "-1", "1/2", "1/2", "1/2", "1/2"],
        scalar_curvature: "-3",
        pinching: "3/4",
        lambda: "9",
        derivation: [
            ["-1", "0", "0", "0", "0", "0", "0"],
            ["0", "-2", "0", "0", "0", "0", "0"],
            ["0", "0", "-2", "0", "0", "0", "0"],
            ["0", "0", "0", "-3", "0", "0", "0"],
            ["0", "0", "0", "0", "-3", "0", "0"],
            ["0", "sqrt2", "0", "0", "0", "-4", "0"],
            ["0", "0", "sqrt2", "0", "0", "0", "-4"],
        ],
        q: [
            ["-2", "0", "0", "0", "0", "0", "0"],
            ["0", "-1", "0", "0", "0", "-1/2*sqrt2", "0"],
            ["0", "0", "-1", "0", "0", "0", "-1/2*sqrt2"],
            ["0", "0", "0", "0", "0", "0", "0"],
            ["0", "0", "0", "0", "0", "0", "0"],
            ["0", "-1/2*sqrt2", "0", "0", "0", "1", "0"],
            ["0", "0", "-1/2*sqrt2", "0", "0", "0", "1"],
        ],
    },
    ExpectedRow {
        name: "n7",
        params: &[
            ("a", "-4"),
            ("b", "2"),
            ("c", "2"),
            ("d", "sqrt6"),
            ("e", "sqrt6"),
        ],
        tau: &[
            (&[1, 5], "-2"),
            (&[2, 6], "2"),
            (&[3, 6], "-sqrt6"),
            (&[4, 5], "sqrt6"),
            (&[4, 7], "-4"),
        ],
        laplacian: &[
            (&[1, 2, 5], "-4*sqrt6"),
            (&[1, 2, 7], "24"),
            (&[1, 3, 7], "-2*sqrt6"),
            (&[2, 4, 7], "2*sqrt6"),
            (&[5, 6, 7], "12"),
        ],
        ric_diag: ["-10", "-10", "3", "11", "-1", "-1", "-10"],
        scalar_curvature: "-18",
        pinching: "3/4",
        lambda: "54",
        derivation: [
            ["-12", "0", "0", "0", "0", "0", "0"],
            ["0", "-12", "0", "0", "0", "0", "0"],
            ["0", "-2*sqrt6", "-24", "0", "0", "0", "0"],
            ["-2*sqrt6", "0", "0", "-24", "0", "0", "0"],
            ["0", "0", "0", "0", "-18", "0", "-4*sqrt6"],
            ["0", "0", "0", "0", "0", "-18", "0"],
            ["0", "0", "0", "0", "0", "0", "-6"],
        ],
        q: [
            ["-6", "0", "0", "sqrt6", "0", "0", "0"],
            ["0", "-6", "sqrt6", "0", "0", "0", "0"],
            ["0", "sqrt6", "6", "0", "0", "0", "0"],
            ["sqrt6", "0", "0", "6", "0", "0", "0"],
            ["0", "0", "0", "0", "0", "0", "2*sqrt6"],
            ["0", "0", "0", "0", "0", "0", "0"],
            ["0", "0", "0", "0", "2*sqrt6", "0", "-12"],
        ],
    },
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::gl_act;
    use crate::metric::{positivity, PositivityClass};

    #[test]
    fn all_twelve_load_and_pass_jacobi_and_nilpotency() {
        for name in NAMES {
            let entry = table_entry(name, Mode::Exact).unwrap();
            assert!(entry.algebra.validate_jacobi().passed(), "{name} Jacobi");
            assert!(entry.algebra.is_nilpotent(), "{name} nilpotency");
        }
    }

    #[test]
    fn forms_exist_exactly_for_first_seven() {
        for name in NAMES {
            let entry = table_entry(name, Mode::Exact).unwrap();
            let has_form = entry.form.is_some();
            let expect_form = matches!(name, "n1" | "n2" | "n3" | "n4" | "n5" | "n6" | "n7");
            assert_eq!(has_form, expect_form, "{name}");
        }
    }

    #[test]
    fn unknown_and_bad_params_are_rejected() {
        assert!(matches!(
            get("n99", &BTreeMap::new(), Mode::Exact),
            Err(Error::UnknownAlgebra(_))
        ));
        let mut p = default_params("n3").unwrap();
        p.insert("c".into(), Scalar::from_int(0));
        assert!(matches!(
            get("n3", &p, Mode::Exact),
            Err(Error::BadParams(_))
        ));
        p.remove("c");
        assert!(matches!(
            get("n3", &p, Mode::Exact),
            Err(Error::BadParams(_))
        ));
    }

    #[test]
    fn candidate_forms_are_positive() {
        // φ₅ sits in the orientation-reversing part of the orbit
        for name in ["n1", "n2", "n3", "n4", "n5", "n6", "n7"] {
            let want = if name == "n5" {
                PositivityClass::PositiveReversed
            } else {
                PositivityClass::Positive
            };
            let f = candidate_form(name, Mode::Exact).unwrap();
            assert_eq!(positivity(&f).class, want, "{name}");
        }
    }

    #[test]
    fn witnesses_transport_forms_to_phi0() {
        for name in ["n1", "n2", "n3", "n4", "n5", "n6", "n7"] {
            let h = positivity_witness(name, Mode::Exact)
                .unwrap_or_else(|| panic!("no witness for {name}"));
            let f = candidate_form(name, Mode::Exact).unwrap();
            assert_eq!(
                gl_act(&h, &f).unwrap(),
                phi0(Mode::Exact),
                "witness fails for {name}"
            );
        }
    }

    #[test]
    fn fixed_permutations_are_respected() {
        // the loader must keep the fixed tuples for n3 and n4
        let h3 = positivity_witness("n3", Mode::Exact).unwrap();
        assert_eq!(h3, signed_permutation([1, 6, 4, 3, 5, 2, 7]));
        let h4 = positivity_witness("n4", Mode::Exact).unwrap();
        assert_eq!(h4, signed_permutation([1, -6, 3, 4, 5, 2, 7]));
    }

    #[test]
    fn n7_table_binding_matches_printed_brackets() {
        // bracket coefficients 4, −2, −2, −√6, −√6
        let entry = table_entry("n7", Mode::Exact).unwrap();
        let terms = entry.algebra.bracket_terms();
        let find = |i: usize, j: usize, k: usize| -> Scalar {
            terms
                .iter()
                .find(|&&(a, b, c, _)| (a, b, c) == (i, j, k))
                .map(|(_, _, _, v)| v.clone())
                .unwrap()
        };
        assert_eq!(find(1, 2, 4), Scalar::from_int(4));
        assert_eq!(find(1, 7, 6), Scalar::from_int(-2));
        assert_eq!(find(2, 7, 5), Scalar::from_int(-2));
        assert_eq!(find(5, 7, 3), -Scalar::sqrt6());
        assert_eq!(find(6, 7, 4), -Scalar::sqrt6());
    }

    #[test]
    fn expected_rows_cover_n2_through_n7() {
        let names: Vec<&str> = expected_rows().iter().map(|r| r.name).collect();
        assert_eq!(names, ["n2", "n3", "n4", "n5", "n6", "n7"]);
        for row in expected_rows() {
            // all literals parse
            let _ = parse_matrix7(&row.derivation, Mode::Exact);
            let _ = parse_matrix7(&row.q, Mode::Exact);
            let _ = parse_form_terms(2, row.tau, Mode::Exact);
            let _ = parse_form_terms(3, row.laplacian, Mode::Exact);
            for d in row.ric_diag {
                let _: Scalar = d.parse().unwrap();
            }
        }
    }

    #[test]
    fn expected_params_match_defaults() {
        for row in expected_rows() {
            let defaults = default_params(row.name).unwrap();
            for (k, v) in row.params {
                assert_eq!(defaults[*k], s_exact(v), "{} param {k}", row.name);
            }
        }
    }
}
