//! Report construction and rendering for the CLI commands.

use std::collections::BTreeMap;

use serde::Serialize;

use g2lap_core::catalog::{self, ExpectedRow};
use g2lap_core::error::Result;
use g2lap_core::fileio::{form_to_file, FormTermFile};
use g2lap_core::flow::{ScalingFit, Trajectory};
use g2lap_core::matrix::Matrix;
use g2lap_core::metric::{metric_volume, positivity, PositivityClass};
use g2lap_core::scalar::{Mode, Scalar};
use g2lap_core::soliton::{solve_soliton, SignClass, SolitonClass, SolitonSolution};
use g2lap_core::torsion::{laplacian, q_operator, ricci, torsion};
use g2lap_core::{KForm, LieAlgebra};

fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
        .collect()
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

#[derive(Serialize)]
pub struct CheckReport {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub mode: String,
    pub positivity: String,
    pub d_phi: Vec<FormTermFile>,
    pub closed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vol_coeff: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orientation: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<Vec<FormTermFile>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub laplacian: Option<Vec<FormTermFile>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ricci: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scalar_curvature: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pinching: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<Vec<Vec<String>>>,
}

impl CheckReport {
    pub fn build(g: &LieAlgebra, psi: &KForm) -> Result<CheckReport> {
        let verdict = positivity(psi);
        let positivity_text = match verdict.class {
            PositivityClass::Positive => "positive",
            PositivityClass::PositiveReversed => "positive-reversed-orientation",
            PositivityClass::NotPositive => "not-positive",
        };
        let d_phi = g.ce_d(psi);
        let closed = match psi.mode() {
            Mode::Exact => d_phi.is_zero(),
            Mode::Float => d_phi.norm_f64() <= 1e-9 * psi.norm_f64().max(1.0),
        };
        let mut report = CheckReport {
            name: g.name().to_string(),
            params: g
                .params()
                .iter()
                .map(|(k, v)| (k.clone(), v.to_string()))
                .collect(),
            mode: mode_name(psi.mode()),
            positivity: positivity_text.to_string(),
            d_phi: form_to_file(&d_phi),
            closed,
            vol_coeff: None,
            orientation: None,
            tau: None,
            laplacian: None,
            ricci: None,
            scalar_curvature: None,
            pinching: None,
            q: None,
        };
        if verdict.class == PositivityClass::NotPositive {
            return Ok(report);
        }
        let m = metric_volume(psi)?;
        report.mode = mode_name(m.mode);
        report.vol_coeff = Some(m.vol_coeff.to_string());
        report.orientation = Some(m.orientation);
        report.laplacian = Some(form_to_file(&laplacian(g, psi)?));
        let (ga, _) = if m.mode == Mode::Float && psi.mode() == Mode::Exact {
            (g.to_float(), ())
        } else {
            (g.clone(), ())
        };
        let ric = ricci(&ga, &m);
        report.scalar_curvature = Some(ric.trace().to_string());
        report.ricci = Some(matrix_strings(&ric));
        let tr2 = ric.matmul(&ric).trace();
        if !tr2.is_zero() {
            let r = ric.trace();
            report.pinching = Some((&(&r * &r) / &tr2).to_string());
        }
        if closed {
            let td = torsion(g, psi)?;
            report.tau = Some(form_to_file(&td.tau));
            let cd = q_operator(g, psi)?;
            report.q = Some(matrix_strings(&cd.q));
        }
        Ok(report)
    }

    pub fn is_positive(&self) -> bool {
        self.positivity != "not-positive"
    }
}

fn mode_name(m: Mode) -> String {
    match m {
        Mode::Exact => "exact".into(),
        Mode::Float => "float".into(),
    }
}

fn form_text(terms: &[FormTermFile]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    terms
        .iter()
        .map(|t| {
            let idx: String = t.indices.iter().map(|i| i.to_string()).collect();
            format!("({})*e{}", t.coeff, idx)
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn render_check(r: &CheckReport, json: bool) -> String {
    if json {
        return serde_json::to_string_pretty(r).expect("serializable");
    }
    let mut out = Vec::new();
    let params = r
        .params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(", ");
    out.push(format!(
        "algebra:    {} [{params}] (mode {})",
        r.name, r.mode
    ));
    out.push(format!("positivity: {}", r.positivity));
    out.push(format!("d(phi):     {}", form_text(&r.d_phi)));
    out.push(format!("closed:     {}", r.closed));
    if let (Some(v), Some(o)) = (&r.vol_coeff, r.orientation) {
        out.push(format!(
            "volume:     {}{v}·e1234567",
            if o < 0 { "-" } else { "" }
        ));
    }
    if let Some(tau) = &r.tau {
        out.push(format!("tau:        {}", form_text(tau)));
    }
    if let Some(lap) = &r.laplacian {
        out.push(format!("laplacian:  {}", form_text(lap)));
    }
    if let Some(ric) = &r.ricci {
        out.push("ricci:".into());
        for row in ric {
            out.push(format!("  [{}]", row.join(", ")));
        }
    }
    if let Some(sc) = &r.scalar_curvature {
        out.push(format!("R:          {sc}"));
    }
    if let Some(p) = &r.pinching {
        out.push(format!("R^2/tr(Ric^2): {p}"));
    }
    if let Some(q) = &r.q {
        out.push("Q:".into());
        for row in q {
            out.push(format!("  [{}]", row.join(", ")));
        }
    }
    out.join("\n")
}

// ---------------------------------------------------------------------------
// soliton
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct SolitonJson {
    lambda: String,
    #[serde(rename = "D")]
    d: Vec<Vec<String>>,
    classification: String,
    sign_class: String,
    solution_space_dim: usize,
    q_check: bool,
    mode: String,
}

fn soliton_json(sol: &SolitonSolution) -> SolitonJson {
    SolitonJson {
        lambda: sol.lambda.to_string(),
        d: matrix_strings(&sol.derivation),
        classification: match sol.classification {
            SolitonClass::Algebraic => "algebraic".into(),
            SolitonClass::SemiAlgebraicOnly => "semi-algebraic-only".into(),
        },
        sign_class: match sol.sign_class {
            SignClass::Expanding => "expanding".into(),
            SignClass::Steady => "steady".into(),
            SignClass::Shrinking => "shrinking".into(),
        },
        solution_space_dim: sol.solution_space_dim,
        q_check: sol.q_check,
        mode: mode_name(sol.mode),
    }
}

pub fn render_soliton(sol: &SolitonSolution, json: bool) -> String {
    let j = soliton_json(sol);
    if json {
        return serde_json::to_string_pretty(&j).expect("serializable");
    }
    let mut out = Vec::new();
    out.push(format!(
        "semi-algebraic soliton: lambda = {} ({}, {})",
        j.lambda, j.sign_class, j.classification
    ));
    out.push(format!(
        "solution space dim {}, q_check {}, mode {}",
        j.solution_space_dim, j.q_check, j.mode
    ));
    out.push("D:".into());
    for row in &j.d {
        out.push(format!("  [{}]", row.join(", ")));
    }
    out.join("\n")
}

// ---------------------------------------------------------------------------
// flow
// ---------------------------------------------------------------------------

fn sig17(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn trajectory_csv(traj: &Trajectory) -> String {
    let mut header = vec!["t".to_string()];
    for &mask in g2lap_core::exterior::basis_masks(3) {
        let idx: String = g2lap_core::exterior::mask_indices(mask)
            .iter()
            .map(|i| i.to_string())
            .collect();
        header.push(format!("e{idx}"));
    }
    header.push("d_drift".into());
    header.push("residual".into());
    header.push("lambda_t".into());
    let mut lines = vec![header.join(",")];
    for s in &traj.samples {
        let mut row = Vec::with_capacity(39);
        row.push(sig17(s.t));
        for c in &s.coeffs {
            row.push(sig17(*c));
        }
        row.push(sig17(s.closedness_drift));
        row.push(sig17(s.soliton_residual));
        row.push(sig17(s.lambda));
        lines.push(row.join(","));
    }
    lines.join("\n")
}

#[derive(Serialize)]
struct FlowSummary {
    c_est: Option<f64>,
    fit_error: Option<f64>,
    steady: Option<bool>,
    samples: usize,
    dt: f64,
    method: String,
}

pub fn flow_summary_json(traj: &Trajectory, fit: Option<&ScalingFit>) -> String {
    let summary = FlowSummary {
        c_est: fit.map(|f| f.c_est),
        fit_error: fit.map(|f| f.fit_error),
        steady: fit.map(|f| f.steady),
        samples: traj.samples.len(),
        dt: traj.dt,
        method: traj.method.to_string(),
    };
    serde_json::to_string_pretty(&summary).expect("serializable")
}

// ---------------------------------------------------------------------------
// report tables
// ---------------------------------------------------------------------------

#[derive(Serialize)]
pub struct QuantityDiff {
    pub algebra: String,
    pub quantity: String,
    pub matched: bool,
    pub expected: String,
    pub computed: String,
}

#[derive(Serialize)]
pub struct TableReport {
    pub algebras: Vec<String>,
    pub mismatches: usize,
    pub diffs: Vec<QuantityDiff>,
}

impl TableReport {
    pub fn render_text(&self) -> String {
        let mut out = Vec::new();
        for d in &self.diffs {
            if d.matched {
                out.push(format!("ok       {}.{}", d.algebra, d.quantity));
            } else {
                out.push(format!(
                    "MISMATCH {}.{}\n  expected: {}\n  computed: {}",
                    d.algebra, d.quantity, d.expected, d.computed
                ));
            }
        }
        out.push(format!(
            "{} algebras x 8 quantities, {} mismatch(es)",
            self.algebras.len(),
            self.mismatches
        ));
        out.join("\n")
    }
}

struct ParsedExpected {
    tau: KForm,
    laplacian: KForm,
    ric: Matrix,
    scalar_curvature: Scalar,
    pinching: Scalar,
    lambda: Scalar,
    derivation: Matrix,
    q: Matrix,
}

fn parse_expected(row: &ExpectedRow) -> ParsedExpected {
    let diag: Vec<Scalar> = row
        .ric_diag
        .iter()
        .map(|s| s.parse().expect("catalog literal"))
        .collect();
    ParsedExpected {
        tau: catalog::parse_form_terms(2, row.tau, Mode::Exact),
        laplacian: catalog::parse_form_terms(3, row.laplacian, Mode::Exact),
        ric: Matrix::diag(&diag),
        scalar_curvature: row.scalar_curvature.parse().expect("catalog literal"),
        pinching: row.pinching.parse().expect("catalog literal"),
        lambda: row.lambda.parse().expect("catalog literal"),
        derivation: catalog::parse_matrix7(&row.derivation, Mode::Exact),
        q: catalog::parse_matrix7(&row.q, Mode::Exact),
    }
}

fn corrupt_expected(exp: &mut ParsedExpected, quantity: &str) -> std::result::Result<(), String> {
    let one = Scalar::from_int(1);
    match quantity {
        "tau" => exp.tau = exp.tau.scale(&Scalar::from_int(2)),
        "laplacian" => exp.laplacian = exp.laplacian.scale(&Scalar::from_int(2)),
        "ricci" => {
            let v = exp.ric.get(0, 0) + &one;
            exp.ric.set(0, 0, v);
        }
        "scalar_curvature" => exp.scalar_curvature = &exp.scalar_curvature + &one,
        "pinching" => exp.pinching = &exp.pinching + &one,
        "lambda" => exp.lambda = &exp.lambda + &one,
        "derivation" => {
            let v = exp.derivation.get(0, 0) + &one;
            exp.derivation.set(0, 0, v);
        }
        "q" => {
            let v = exp.q.get(0, 0) + &one;
            exp.q.set(0, 0, v);
        }
        other => return Err(format!("unknown quantity `{other}`")),
    }
    Ok(())
}

/// Recompute one reference row from scratch and diff against expectations.
fn diff_row(
    name: &str,
    corrupt_quantity: Option<&str>,
) -> std::result::Result<Vec<QuantityDiff>, String> {
    let row = catalog::expected_row(name).ok_or_else(|| format!("no expected row for {name}"))?;
    let mut exp = parse_expected(row);
    if let Some(q) = corrupt_quantity {
        corrupt_expected(&mut exp, q)?;
    }
    let entry = catalog::table_entry(name, Mode::Exact).map_err(|e| e.to_string())?;
    let form = entry
        .form
        .clone()
        .ok_or_else(|| format!("{name} has no form"))?;
    let td = torsion(&entry.algebra, &form).map_err(|e| e.to_string())?;
    let cd = q_operator(&entry.algebra, &form).map_err(|e| e.to_string())?;
    let sol = solve_soliton(&entry.algebra, &form)
        .map_err(|e| e.to_string())?
        .ok_or_else(|| format!("{name}: expected a soliton"))?;
    let pinching = cd
        .pinching
        .clone()
        .map(|p| p.to_string())
        .unwrap_or_default();
    let mut diffs = Vec::with_capacity(8);
    let mut push = |quantity: &str, matched: bool, expected: String, computed: String| {
        diffs.push(QuantityDiff {
            algebra: name.to_string(),
            quantity: quantity.to_string(),
            matched,
            expected,
            computed,
        });
    };
    push(
        "tau",
        td.tau == exp.tau,
        format!("{}", exp.tau),
        format!("{}", td.tau),
    );
    push(
        "laplacian",
        td.laplacian == exp.laplacian,
        format!("{}", exp.laplacian),
        format!("{}", td.laplacian),
    );
    push(
        "ricci",
        cd.ric == exp.ric,
        format!("{:?}", matrix_strings(&exp.ric)),
        format!("{:?}", matrix_strings(&cd.ric)),
    );
    push(
        "scalar_curvature",
        cd.scalar_curvature == exp.scalar_curvature,
        exp.scalar_curvature.to_string(),
        cd.scalar_curvature.to_string(),
    );
    push(
        "pinching",
        cd.pinching.as_ref() == Some(&exp.pinching),
        exp.pinching.to_string(),
        pinching,
    );
    push(
        "lambda",
        sol.lambda == exp.lambda,
        exp.lambda.to_string(),
        sol.lambda.to_string(),
    );
    // the tabulated derivation is one representative: compare by membership
    push(
        "derivation",
        sol.contains_derivation(&exp.derivation),
        format!("{:?}", matrix_strings(&exp.derivation)),
        format!("{:?}", matrix_strings(&sol.derivation)),
    );
    push(
        "q",
        cd.q == exp.q,
        format!("{:?}", matrix_strings(&exp.q)),
        format!("{:?}", matrix_strings(&cd.q)),
    );
    Ok(diffs)
}

/// Diff all requested rows, fanning the per-algebra work out to threads.
pub fn table_diffs(
    names: &[&str],
    corrupt: Option<&str>,
) -> std::result::Result<Vec<QuantityDiff>, String> {
    let corrupt_parsed: Option<(String, String)> = match corrupt {
        None => None,
        Some(spec) => {
            let (alg, quant) = spec
                .split_once('.')
                .ok_or_else(|| format!("--corrupt wants `<algebra>.<quantity>`, got `{spec}`"))?;
            Some((alg.to_string(), quant.to_string()))
        }
    };
    let results: Vec<std::result::Result<Vec<QuantityDiff>, String>> =
        std::thread::scope(|scope| {
            let handles: Vec<_> = names
                .iter()
                .map(|name| {
                    let corrupt_for_this = corrupt_parsed
                        .as_ref()
                        .filter(|(alg, _)| alg == name)
                        .map(|(_, q)| q.clone());
                    scope.spawn(move || diff_row(name, corrupt_for_this.as_deref()))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("no panic"))
                .collect()
        });
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}
