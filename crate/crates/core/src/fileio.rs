//! JSON file formats for algebras, forms, and check problems.
//!
//! Scalars travel as text in the grammar
//! `R (+|-) R*sqrt2 (+|-) R*sqrt3 (+|-) R*sqrt6` so exact values survive a
//! round trip byte for byte.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{mask_indices, KForm};
use crate::liealg::LieAlgebra;
use crate::scalar::{Mode, Scalar};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BracketTermFile {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AlgebraFile {
    pub dim: usize,
    pub name: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
    pub brackets: Vec<BracketTermFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FormTermFile {
    pub indices: Vec<usize>,
    pub coeff: String,
}

/// A complete problem: an algebra plus an optional 3-form.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ProblemFile {
    pub algebra: AlgebraFile,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub form: Vec<FormTermFile>,
}

pub fn algebra_to_file(g: &LieAlgebra) -> AlgebraFile {
    AlgebraFile {
        dim: 7,
        name: g.name().to_string(),
        params: g
            .params()
            .iter()
            .map(|(k, v)| (k.clone(), v.to_string()))
            .collect(),
        brackets: g
            .bracket_terms()
            .into_iter()
            .map(|(i, j, k, coeff)| BracketTermFile {
                i,
                j,
                k,
                coeff: coeff.to_string(),
            })
            .collect(),
    }
}

pub fn algebra_from_file(f: &AlgebraFile, mode: Mode) -> Result<LieAlgebra> {
    if f.dim != 7 {
        return Err(Error::Parse(format!("dim must be 7, got {}", f.dim)));
    }
    let mut terms = Vec::with_capacity(f.brackets.len());
    for t in &f.brackets {
        terms.push((t.i, t.j, t.k, Scalar::parse(&t.coeff, mode)?));
    }
    let mut params = BTreeMap::new();
    for (k, v) in &f.params {
        params.insert(k.clone(), Scalar::parse(v, mode)?);
    }
    LieAlgebra::new_in_mode(&f.name, &terms, params, mode)
}

pub fn form_to_file(f: &KForm) -> Vec<FormTermFile> {
    f.terms()
        .map(|(mask, coeff)| FormTermFile {
            indices: mask_indices(mask),
            coeff: coeff.to_string(),
        })
        .collect()
}

/// Parse form terms; the degree comes from the term arity (3 for an empty
/// list, the zero form).
pub fn form_from_file(terms: &[FormTermFile], mode: Mode) -> Result<KForm> {
    let degree = terms.first().map_or(3, |t| t.indices.len());
    let mut built: Vec<(&[usize], Scalar)> = Vec::with_capacity(terms.len());
    for t in terms {
        if t.indices.len() != degree {
            return Err(Error::Parse(
                "form terms must all have the same arity".into(),
            ));
        }
        built.push((&t.indices, Scalar::parse(&t.coeff, mode)?));
    }
    KForm::from_terms(degree, &built)
}

pub fn problem_to_string(p: &ProblemFile) -> String {
    serde_json::to_string_pretty(p).expect("serializable")
}

pub fn problem_from_str(text: &str) -> Result<ProblemFile> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// The whole catalog as problem files (round-trips through the parser).
pub fn catalog_export(mode: Mode) -> Vec<ProblemFile> {
    crate::catalog::NAMES
        .iter()
        .map(|name| {
            let entry = crate::catalog::table_entry(name, mode).expect("catalog entry");
            ProblemFile {
                algebra: algebra_to_file(&entry.algebra),
                form: entry.form.as_ref().map(form_to_file).unwrap_or_default(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn catalog_round_trips() {
        for p in catalog_export(Mode::Exact) {
            let text = problem_to_string(&p);
            let back = problem_from_str(&text).unwrap();
            assert_eq!(p, back);
            let g = algebra_from_file(&back.algebra, Mode::Exact).unwrap();
            let reexport = algebra_to_file(&g);
            assert_eq!(p.algebra, reexport);
            if !back.form.is_empty() {
                let f = form_from_file(&back.form, Mode::Exact).unwrap();
                assert_eq!(form_to_file(&f), back.form);
            }
        }
    }

    #[test]
    fn bad_files_are_parse_errors() {
        assert!(matches!(problem_from_str("{"), Err(Error::Parse(_))));
        let mut file = algebra_to_file(&catalog::table_entry("n3", Mode::Exact).unwrap().algebra);
        file.dim = 6;
        assert!(algebra_from_file(&file, Mode::Exact).is_err());
        let terms = vec![
            FormTermFile {
                indices: vec![1, 2, 3],
                coeff: "1".into(),
            },
            FormTermFile {
                indices: vec![1, 2],
                coeff: "1".into(),
            },
        ];
        assert!(form_from_file(&terms, Mode::Exact).is_err());
    }

    #[test]
    fn float_mode_parses_exact_strings() {
        let p = &catalog_export(Mode::Exact)[3];
        let g = algebra_from_file(&p.algebra, Mode::Float).unwrap();
        assert_eq!(g.mode(), Mode::Float);
    }
}
