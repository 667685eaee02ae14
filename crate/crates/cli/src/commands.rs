use serde::Serialize;
use serde_json::{json, Value};

use m2z4_core::gray::{gray_image_params, min_lee_weight, GrayParams, GrayWord};
use m2z4_core::verify::{run_all, Status, VerifyOptions};
use m2z4_core::{
    cyclic::search_self_dual, CyclicCode, DualKind, Error, FactorAssignment, FactorTable, RingKind,
};

use crate::config::RunConfig;
use crate::CliError;

/// A command's result in every output format.
pub struct Output {
    pub json: Value,
    pub text: String,
    pub csv_header: Vec<&'static str>,
    pub csv_rows: Vec<Vec<String>>,
    /// Whether the command found a verification failure (exit code 1).
    pub failed: bool,
}

fn lengths(cfg: &RunConfig) -> Result<Vec<usize>, CliError> {
    if cfg.n.is_empty() {
        return Err(CliError::Usage("--n is required".into()));
    }
    Ok(cfg.n.clone())
}

#[derive(Serialize)]
struct FactorRow {
    index: usize,
    factor: String,
    degree: usize,
    reciprocal_partner: usize,
    conj_reciprocal_partner: usize,
    lift: String,
}

pub fn factor(cfg: &RunConfig) -> Result<Output, CliError> {
    let mut tables = Vec::new();
    let mut text = String::new();
    let mut csv_rows = Vec::new();
    for n in lengths(cfg)? {
        let t = FactorTable::new(n)?;
        let rows: Vec<FactorRow> = (0..t.len())
            .map(|i| FactorRow {
                index: i,
                factor: t.factor(i).to_string(),
                degree: t.degree(i),
                reciprocal_partner: t.partner(i, DualKind::Euclidean),
                conj_reciprocal_partner: t.partner(i, DualKind::Hermitian),
                lift: t.lift(i).to_string(),
            })
            .collect();
        text.push_str(&format!("x^{n}-1 over F4: {} factors\n", rows.len()));
        text.push_str("  idx  factor                  recip  conj-recip  Hensel lift\n");
        for r in &rows {
            text.push_str(&format!(
                "  f{:<3} {:<23} f{:<5} f{:<10} {}\n",
                r.index, r.factor, r.reciprocal_partner, r.conj_reciprocal_partner, r.lift
            ));
            csv_rows.push(vec![
                n.to_string(),
                r.index.to_string(),
                r.factor.clone(),
                r.degree.to_string(),
                r.reciprocal_partner.to_string(),
                r.conj_reciprocal_partner.to_string(),
                r.lift.clone(),
            ]);
        }
        tables.push(json!({ "n": n, "factors": rows }));
    }
    Ok(Output {
        json: Value::Array(tables),
        text,
        csv_header: vec![
            "n",
            "index",
            "factor",
            "degree",
            "reciprocal_partner",
            "conj_reciprocal_partner",
            "lift",
        ],
        csv_rows,
        failed: false,
    })
}

fn assignment(cfg: &RunConfig, text: &str) -> Result<(FactorTable, FactorAssignment), CliError> {
    let a = FactorAssignment::parse_with(text, cfg.single_n()?, cfg.ring)?;
    if let Some(n) = cfg.single_n()? {
        if n != a.n() {
            return Err(CliError::Usage(format!(
                "assignment has n={} but --n {n} was given",
                a.n()
            )));
        }
    }
    Ok((FactorTable::new(a.n())?, a))
}

fn gray(c: &CyclicCode, budget: u128) -> Result<Option<GrayParams>, CliError> {
    match gray_image_params(c, budget) {
        Ok(p) => Ok(Some(p)),
        Err(Error::ZeroCode) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

#[derive(Serialize)]
struct CodeReport {
    n: usize,
    ring: RingKind,
    assignment: String,
    cardinality_log4: f64,
    alpha_formula_value: usize,
    alpha_matches: bool,
    is_cyclic: bool,
    self_dual: SelfDual,
    self_dual_predicate: SelfDual,
    gray: Option<GrayParams>,
}

#[derive(Serialize)]
struct SelfDual {
    euclidean: bool,
    hermitian: bool,
}

fn code_report(
    cfg: &RunConfig,
    t: &FactorTable,
    a: &FactorAssignment,
) -> Result<(CodeReport, CyclicCode), CliError> {
    let code = t.build_code(a)?;
    let alpha = a.alpha(t);
    let report = CodeReport {
        n: a.n(),
        ring: a.ring(),
        assignment: a.to_string(),
        cardinality_log4: code.cardinality_log4(),
        alpha_formula_value: alpha,
        alpha_matches: code.log2_size() as usize == 2 * alpha,
        is_cyclic: code.is_cyclic(),
        self_dual: SelfDual {
            euclidean: code.is_self_dual(DualKind::Euclidean),
            hermitian: code.is_self_dual(DualKind::Hermitian),
        },
        self_dual_predicate: SelfDual {
            euclidean: t.dual_assignment(a, DualKind::Euclidean)? == *a,
            hermitian: t.dual_assignment(a, DualKind::Hermitian)? == *a,
        },
        gray: gray(&code, cfg.budget)?,
    };
    Ok((report, code))
}

fn gray_text(g: &Option<GrayParams>) -> String {
    match g {
        None => "undefined (zero code)".into(),
        Some(g) => format!(
            "[{}, {}, {}]{}",
            g.length,
            g.k_log4,
            g.d,
            if g.exhaustive {
                ""
            } else {
                " (d is an upper bound; budget exceeded)"
            }
        ),
    }
}

fn report_text(r: &CodeReport) -> String {
    format!(
        "assignment:       {}\nring:             {}\nlog4 |C|:         {}\nalpha formula:    {} ({})\ncyclic:           {}\nself-dual:        euclidean {}, hermitian {}\ntype predicate:   euclidean {}, hermitian {}\nGray image:       {}\n",
        r.assignment,
        r.ring,
        r.cardinality_log4,
        r.alpha_formula_value,
        if r.alpha_matches { "matches" } else { "differs" },
        r.is_cyclic,
        r.self_dual.euclidean,
        r.self_dual.hermitian,
        r.self_dual_predicate.euclidean,
        r.self_dual_predicate.hermitian,
        gray_text(&r.gray),
    )
}

const REPORT_HEADER: [&str; 13] = [
    "n",
    "ring",
    "assignment",
    "cardinality_log4",
    "alpha_formula_value",
    "is_cyclic",
    "self_dual_euclidean",
    "self_dual_hermitian",
    "predicate_euclidean",
    "predicate_hermitian",
    "gray_length",
    "gray_d",
    "gray_exhaustive",
];

fn report_csv(r: &CodeReport) -> Vec<String> {
    let g = |f: fn(&GrayParams) -> String| r.gray.as_ref().map(f).unwrap_or_default();
    vec![
        r.n.to_string(),
        r.ring.to_string(),
        r.assignment.clone(),
        r.cardinality_log4.to_string(),
        r.alpha_formula_value.to_string(),
        r.is_cyclic.to_string(),
        r.self_dual.euclidean.to_string(),
        r.self_dual.hermitian.to_string(),
        r.self_dual_predicate.euclidean.to_string(),
        r.self_dual_predicate.hermitian.to_string(),
        g(|p| p.length.to_string()),
        g(|p| p.d.to_string()),
        g(|p| p.exhaustive.to_string()),
    ]
}

pub fn check(cfg: &RunConfig, text: &str) -> Result<Output, CliError> {
    let (t, a) = assignment(cfg, text)?;
    let (r, _) = code_report(cfg, &t, &a)?;
    Ok(Output {
        json: serde_json::to_value(&r).expect("report serializes"),
        text: report_text(&r),
        csv_header: REPORT_HEADER.to_vec(),
        csv_rows: vec![report_csv(&r)],
        failed: false,
    })
}

pub fn build(cfg: &RunConfig, text: &str) -> Result<Output, CliError> {
    let (t, a) = assignment(cfg, text)?;
    let (r, code) = code_report(cfg, &t, &a)?;
    let mut json = serde_json::to_value(&r).expect("report serializes");
    json["generators"] = json!(t
        .generators(&a)
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>());
    json["basis_rows"] = json!(code.basis().rows());
    let mut text = report_text(&r);
    text.push_str("generators:\n");
    for g in t.generators(&a) {
        text.push_str(&format!("  {g}\n"));
    }
    text.push_str(&format!(
        "basis ({} rows, 4 columns per position):\n",
        code.basis().rank()
    ));
    for row in code.basis().rows() {
        text.push_str(&format!(
            "  {}\n",
            row.iter().map(u8::to_string).collect::<String>()
        ));
    }
    Ok(Output {
        json,
        text,
        csv_header: REPORT_HEADER.to_vec(),
        csv_rows: vec![report_csv(&r)],
        failed: false,
    })
}

pub fn dual(cfg: &RunConfig, text: &str) -> Result<Output, CliError> {
    let (t, a) = assignment(cfg, text)?;
    let rep = t.dual_report(&a, cfg.kind)?;
    let json = json!({
        "n": a.n(),
        "ring": a.ring(),
        "kind": cfg.kind,
        "assignment": a.to_string(),
        "dual_assignment": rep.predicted.to_string(),
        "agrees": rep.agrees,
        "size_product_log2": rep.size_product_log2,
        "kernel_dual": {
            "cardinality_log4": rep.kernel_dual.cardinality_log4(),
            "basis_rows": rep.kernel_dual.basis().rows(),
        },
    });
    let mut text = format!(
        "assignment:        {a}\nkind:              {}\ndual assignment:   {}\nkernel dual log4:  {}\npredicted log4:    {}\nagree:             {}\nlog2|C|+log2|C^perp|: {}\nkernel dual basis:\n",
        cfg.kind,
        rep.predicted,
        rep.kernel_dual.cardinality_log4(),
        rep.predicted_dual.cardinality_log4(),
        rep.agrees,
        rep.size_product_log2,
    );
    for row in rep.kernel_dual.basis().rows() {
        text.push_str(&format!(
            "  {}\n",
            row.iter().map(u8::to_string).collect::<String>()
        ));
    }
    Ok(Output {
        json,
        text,
        csv_header: vec![
            "n",
            "ring",
            "kind",
            "assignment",
            "dual_assignment",
            "agrees",
            "dual_cardinality_log4",
        ],
        csv_rows: vec![vec![
            a.n().to_string(),
            a.ring().to_string(),
            cfg.kind.to_string(),
            a.to_string(),
            rep.predicted.to_string(),
            rep.agrees.to_string(),
            rep.kernel_dual.cardinality_log4().to_string(),
        ]],
        failed: false,
    })
}

pub fn gray_cmd(cfg: &RunConfig, text: &str) -> Result<Output, CliError> {
    let (t, a) = assignment(cfg, text)?;
    let code = t.build_code(&a)?;
    let p = gray_image_params(&code, cfg.budget)?;
    let mw = min_lee_weight(&code, cfg.budget)?;
    let witness = GrayWord::from_row(&mw.witness, code.ring()).to_string();
    let mut json = serde_json::to_value(&p).expect("params serialize");
    json["assignment"] = json!(a.to_string());
    json["witness"] = json!(witness);
    let text = format!(
        "assignment: {a}\nGray image: {}\nwitness:    {witness}\n",
        gray_text(&Some(p.clone()))
    );
    Ok(Output {
        json,
        text,
        csv_header: vec![
            "assignment",
            "length",
            "k_log4",
            "d",
            "exhaustive",
            "witness",
        ],
        csv_rows: vec![vec![
            a.to_string(),
            p.length.to_string(),
            p.k_log4.to_string(),
            p.d.to_string(),
            p.exhaustive.to_string(),
            witness,
        ]],
        failed: false,
    })
}

#[derive(Serialize)]
struct SearchRow {
    n: usize,
    ring: RingKind,
    kind: DualKind,
    assignment: String,
    k_log4: f64,
    d: Option<usize>,
    exhaustive: bool,
}

pub fn search(cfg: &RunConfig) -> Result<Output, CliError> {
    let mut rows = Vec::new();
    for n in lengths(cfg)? {
        for hit in search_self_dual(n, cfg.kind, cfg.ring, cfg.m_policy)? {
            let g = gray(&hit.code, cfg.budget)?;
            rows.push(SearchRow {
                n,
                ring: cfg.ring,
                kind: cfg.kind,
                assignment: hit.assignment.to_string(),
                k_log4: hit.code.cardinality_log4(),
                d: g.as_ref().map(|p| p.d),
                exhaustive: g.as_ref().is_some_and(|p| p.exhaustive),
            });
        }
    }
    let mut text = format!(
        "{} {} self-dual codes over {}: {}\n",
        rows.len(),
        cfg.kind,
        cfg.ring,
        if rows.is_empty() { "none" } else { "" }
    );
    for r in &rows {
        text.push_str(&format!(
            "  [{}] k_log4={} d={}{}\n",
            r.assignment,
            r.k_log4,
            r.d.map_or("-".into(), |d| d.to_string()),
            if r.exhaustive { "" } else { " (upper bound)" }
        ));
    }
    let csv_rows = rows
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                r.ring.to_string(),
                r.kind.to_string(),
                r.assignment.clone(),
                r.k_log4.to_string(),
                r.d.map_or(String::new(), |d| d.to_string()),
                r.exhaustive.to_string(),
            ]
        })
        .collect();
    Ok(Output {
        json: serde_json::to_value(&rows).expect("rows serialize"),
        text,
        csv_header: vec![
            "n",
            "ring",
            "kind",
            "assignment",
            "k_log4",
            "d",
            "exhaustive",
        ],
        csv_rows,
        failed: false,
    })
}

pub fn verify_paper(cfg: &RunConfig) -> Result<Output, CliError> {
    let opts = VerifyOptions {
        slow: cfg.slow,
        budget: cfg.budget,
        ..VerifyOptions::default()
    };
    let reports = run_all(&opts)?;
    let failed = reports.iter().any(|r| r.status == Status::Fail);
    let mut text = String::new();
    for r in &reports {
        text.push_str(&r.to_string());
    }
    let count = |s| reports.iter().filter(|r| r.status == s).count();
    text.push_str(&format!(
        "summary: {} pass, {} fail, {} reported, {} skipped\n",
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Reported),
        count(Status::Skipped)
    ));
    let csv_rows = reports
        .iter()
        .map(|r| {
            vec![
                r.id.to_string(),
                r.status.to_string(),
                r.title.to_string(),
                r.elapsed_ms.to_string(),
            ]
        })
        .collect();
    Ok(Output {
        json: serde_json::to_value(&reports).expect("reports serialize"),
        text,
        csv_header: vec!["id", "status", "title", "elapsed_ms"],
        csv_rows,
        failed,
    })
}
