//! The `catrep` command line. Every subcommand produces one JSON report,
//! written with `--output` and rendered as text unless `--format json`.
//!
//! Exit codes: 0 success, 1 a check failed or the computation was refused,
//! 2 usage errors and unreadable or malformed input.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use catrep_core::based_cat::{
    build_cartan_category, build_dihedral_soergel, build_group_category, BasedCategory, MorphismId,
};
use catrep_core::cells::{
    cell_rep, is_strongly_regular, numerical_condition, preorder, CellSide, RegularityWitness,
};
use catrep_core::classify::{
    b2_obstruction_pipeline, classify_group_reps, classify_quasi_idempotent, enumerate_subgroups,
    B2Certificate,
};
use catrep_core::group::MultTable;
use catrep_core::matrep::{
    action_preorder, complete_filtrations, jh_subquotients, principal_rep, validate_rep,
    weak_jh_verify, MatrixRep, DEFAULT_FILTRATION_CAP,
};
use catrep_core::matrix::IntMatrix;
use catrep_core::pfexact::{
    column_sum_bounds, corollary_check, quasi_idempotent_check, rank_exact,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::json::{
    self, category_to_doc, cells_to_doc, load_category, load_rep, matrix_rows, rep_body,
    rep_to_doc, report_to_doc, resolve_names, sum_to_json, FormatError,
};
use crate::render::render;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "catrep",
    version,
    about = "Cells, matrix representations and classification searches for finite based categories"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Write the JSON report to this file (`-` for standard output).
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the axioms of a category.
    Validate {
        #[arg(long)]
        input: PathBuf,
    },
    /// Compose two 1-morphisms.
    Compose {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Category of a finite group, by name (C5, D4, S3, V4) or from a table file.
    BuildGroup {
        #[arg(long, conflicts_with = "table", required_unless_present = "table")]
        group: Option<String>,
        /// JSON file `{"elements": [...], "table": [[label, ...], ...]}`.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Category of projective functors for a Cartan matrix.
    BuildCartan {
        /// Cartan matrix as JSON, e.g. `[[1,1],[1,1]]`.
        #[arg(long)]
        cartan: String,
        /// Nakayama permutation, 1-based images, e.g. `2,1`.
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Soergel-bimodule category of the dihedral group of order 2n.
    BuildDihedral {
        #[arg(long)]
        n: usize,
    },
    /// Left, right or two-sided cells.
    Cells {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "two-sided")]
        side: CellSide,
    },
    /// Strong regularity of a two-sided cell.
    StrongRegularity {
        #[arg(long)]
        input: PathBuf,
        /// Members of the cell, comma separated.
        #[arg(long)]
        cell: String,
    },
    /// Numerical condition on a strongly regular two-sided cell.
    NumericalCondition {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        cell: String,
        /// Count distinct summands instead of summands with multiplicity.
        #[arg(long)]
        distinct: bool,
    },
    /// Cell representation of a left cell.
    CellRep {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        cell: String,
    },
    /// Principal representation of an object.
    PrincipalRep {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        object: String,
    },
    /// Check a matrix representation.
    ValidateRep {
        #[arg(long)]
        input: PathBuf,
    },
    /// Action classes, complete filtrations and the subquotients of one of them.
    Jh {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        filtration: usize,
        #[arg(long, default_value_t = DEFAULT_FILTRATION_CAP)]
        cap: usize,
    },
    /// Compare the subquotients of all complete filtrations.
    WeakJhVerify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_FILTRATION_CAP)]
        cap: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Column-sum bounds, rank and quasi-idempotence of a square matrix.
    Pf {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        m: i64,
    },
    /// Positive integer matrices with X² = mX up to simultaneous permutation.
    ClassifyQi {
        #[arg(long)]
        m: i64,
        /// Largest size searched; defaults to m.
        #[arg(long)]
        size_max: Option<usize>,
    },
    /// Transitive permutation representations of a group category.
    ClassifyGroup {
        #[arg(long)]
        group: String,
    },
    /// The type B2 obstruction pipeline with every intermediate list.
    B2Demo,
}

/// Why a command could not produce its report.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] FormatError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Compute(#[from] catrep_core::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Compute(_) => 1,
            CliError::Input(FormatError::Core(_)) | CliError::Input(_) | CliError::Usage(_) => 2,
        }
    }
}

/// A report and whether the check it describes passed.
pub struct Outcome {
    pub report: Value,
    pub ok: bool,
}

fn passed(report: Value) -> Outcome {
    Outcome { report, ok: true }
}

fn names(cat: &BasedCategory, ids: &[MorphismId]) -> Vec<String> {
    ids.iter().map(|&f| cat.name(f).to_string()).collect()
}

fn category_json(cat: &BasedCategory) -> Value {
    serde_json::to_value(category_to_doc(cat)).expect("serializable")
}

fn rep_json(rep: &MatrixRep) -> Value {
    serde_json::to_value(rep_to_doc(rep)).expect("serializable")
}

fn witness_json(cat: &BasedCategory, w: &RegularityWitness) -> Value {
    match w {
        RegularityWitness::ComparableCells {
            side,
            greater,
            lesser,
        } => json!({
            "kind": "comparable-cells",
            "side": side.as_str(),
            "greater": names(cat, greater),
            "lesser": names(cat, lesser),
        }),
        RegularityWitness::Intersection {
            left,
            right,
            members,
        } => json!({
            "kind": "intersection",
            "left": names(cat, left),
            "right": names(cat, right),
            "members": names(cat, members),
            "size": members.len(),
        }),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableDoc {
    elements: Vec<String>,
    table: Vec<Vec<String>>,
}

fn load_table(path: &Path) -> Result<MultTable, CliError> {
    let doc: TableDoc = serde_json::from_str(&json::read_file(path)?).map_err(FormatError::from)?;
    let index = |l: &str| {
        doc.elements
            .iter()
            .position(|e| e == l)
            .ok_or_else(|| CliError::Usage(format!("table entry `{l}` is not an element")))
    };
    let table = doc
        .table
        .iter()
        .map(|row| row.iter().map(|l| index(l)).collect())
        .collect::<Result<Vec<Vec<usize>>, _>>()?;
    Ok(MultTable::new(doc.elements.clone(), table).map_err(FormatError::from)?)
}

fn parse_sigma(text: &str, n: usize) -> Result<Vec<usize>, CliError> {
    let sigma = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .ok()
                .filter(|&k| (1..=n).contains(&k))
                .map(|k| k - 1)
                .ok_or_else(|| CliError::Usage(format!("sigma entry `{s}` is not in 1..={n}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(sigma)
}

fn b2_json(cert: &B2Certificate) -> Value {
    let m = |x: &IntMatrix| json!(matrix_rows(x));
    let mut report = serde_json::to_value(report_to_doc(&cert.to_report())).expect("serializable");
    report["certificate"] = json!({
        "two_sided_cells": cert.two_sided_cells,
        "y_square": cert.y_square,
        "theta_square": [cert.theta_square.0, cert.theta_square.1],
        "polynomial": cert.polynomial,
        "trace": cert.trace,
        "determinant": cert.determinant,
        "x_entry_bound": cert.x_bound,
        "x_solutions": cert.x_raw.len(),
        "x_classes": cert.x_classes.len(),
        "x_listed": cert.x_listed.iter().map(m).collect::<Vec<_>>(),
        "generator_polynomial": cert.generator_polynomial,
        "generator_entry_bound": cert.generator_bound,
        "generator_solutions": cert.generator_raw_count,
        "generator_candidates": cert.generator_classes.iter().map(m).collect::<Vec<_>>(),
        "pairs": cert.pairs.iter().map(|p| json!({
            "theta_s": m(&p.theta_s),
            "theta_t": m(&p.theta_t),
            "x": m(&p.x),
        })).collect::<Vec<_>>(),
        "obstructions": cert.obstructions.iter().map(|o| json!({
            "generator": o.generator,
            "matrix": m(&o.matrix),
            "subcategory": o.subcategory,
            "transitive": o.transitive,
            "cell_rep_matrices": o.cell_rep_matrices.iter().map(m).collect::<Vec<_>>(),
            "conjugate_to_cell_rep": o.conjugate_to_cell_rep,
            "strongly_regular": o.strongly_regular,
            "numerical_condition": o.numerical_condition,
        })).collect::<Vec<_>>(),
        "one_dimensional": cert.one_dimensional.iter().map(|d| json!({
            "epsilon": d.epsilon,
            "delta": d.delta,
            "values": d.values.iter().map(|(w, v)| json!([w, v])).collect::<Vec<_>>(),
            "consistent": d.consistent,
            "witness": d.witness.as_ref().map(|(a, b)| json!([a, b])),
        })).collect::<Vec<_>>(),
        "stages": cert.stages.iter().map(|s| json!({
            "stage": s.stage,
            "title": s.title,
            "details": s.details,
        })).collect::<Vec<_>>(),
    });
    report
}

pub fn execute(command: &Command) -> Result<Outcome, CliError> {
    Ok(match command {
        Command::Validate { input } => {
            let cat = load_category(input)?;
            let report = cat.validate();
            let violations: Vec<Value> = report
                .violations
                .iter()
                .map(|v| json!({ "kind": v.kind(), "message": v.to_string() }))
                .collect();
            Outcome {
                ok: report.is_valid(),
                report: json!({ "valid": report.is_valid(), "violations": violations }),
            }
        }
        Command::Compose { input, left, right } => {
            let cat = load_category(input)?;
            let (f, g) = (cat.lookup(left)?, cat.lookup(right)?);
            let ms = cat.compose(f, g)?;
            passed(json!({
                "left": left,
                "right": right,
                "result": sum_to_json(&cat, &ms),
                "formatted": cat.format_sum(&ms),
            }))
        }
        Command::BuildGroup { group, table } => {
            let t = match (group, table) {
                (Some(g), _) => MultTable::named(g).map_err(|e| CliError::Usage(e.to_string()))?,
                (None, Some(p)) => load_table(p)?,
                (None, None) => return Err(CliError::Usage("give --group or --table".into())),
            };
            passed(category_json(&build_group_category(&t)?))
        }
        Command::BuildCartan { cartan, sigma } => {
            let c = json::parse_matrix(cartan)?;
            let sigma = sigma
                .as_deref()
                .map(|s| parse_sigma(s, c.rows()))
                .transpose()?;
            passed(category_json(&build_cartan_category(&c, sigma.as_deref())?))
        }
        Command::BuildDihedral { n } => passed(category_json(&build_dihedral_soergel(*n)?)),
        Command::Cells { input, side } => {
            let cat = load_category(input)?;
            let cs = preorder(&cat, *side)?;
            passed(serde_json::to_value(cells_to_doc(&cat, &cs)).expect("serializable"))
        }
        Command::StrongRegularity { input, cell } => {
            let cat = load_category(input)?;
            let ids = resolve_names(&cat, cell)?;
            let sr = is_strongly_regular(&cat, &ids)?;
            passed(json!({
                "cell": names(&cat, &ids),
                "strongly_regular": sr.verdict,
                "witness": sr.witness.as_ref().map(|w| witness_json(&cat, w)),
            }))
        }
        Command::NumericalCondition {
            input,
            cell,
            distinct,
        } => {
            let cat = load_category(input)?;
            let ids = resolve_names(&cat, cell)?;
            let nc = numerical_condition(&cat, &ids, !distinct)?;
            let values: serde_json::Map<String, Value> = nc
                .values
                .iter()
                .map(|&(f, v)| (cat.name(f).to_string(), json!(v)))
                .collect();
            passed(json!({
                "cell": names(&cat, &ids),
                "with_multiplicity": !distinct,
                "verdict": nc.verdict,
                "values": values,
                "right_cells": nc.per_right_cell.iter().map(|(members, v)| json!({
                    "members": names(&cat, members),
                    "value": v,
                })).collect::<Vec<_>>(),
            }))
        }
        Command::CellRep { input, cell } => {
            let cat = Arc::new(load_category(input)?);
            let ids = resolve_names(&cat, cell)?;
            passed(rep_json(&cell_rep(&cat, &ids)?))
        }
        Command::PrincipalRep { input, object } => {
            let cat = Arc::new(load_category(input)?);
            let i = cat
                .object_id(object)
                .ok_or_else(|| catrep_core::Error::Unknown {
                    kind: "object",
                    name: object.clone(),
                })?;
            passed(rep_json(&principal_rep(&cat, i)?))
        }
        Command::ValidateRep { input } => {
            let rep = load_rep(input)?;
            let report = validate_rep(&rep);
            let violations: Vec<Value> = report
                .violations
                .iter()
                .map(|v| json!({ "kind": v.kind(), "message": v.to_string() }))
                .collect();
            Outcome {
                ok: report.is_valid(),
                report: json!({ "valid": report.is_valid(), "violations": violations }),
            }
        }
        Command::Jh {
            input,
            filtration,
            cap,
        } => {
            let rep = load_rep(input)?;
            let ap = action_preorder(&rep);
            let classes: Vec<Vec<String>> = ap
                .classes()
                .iter()
                .map(|c| c.iter().map(|&x| rep.global_label(x).to_string()).collect())
                .collect();
            let (fs, truncated) = complete_filtrations(&rep, *cap);
            let f = fs.get(*filtration).ok_or_else(|| {
                CliError::Usage(format!(
                    "filtration {filtration} out of range (there are {})",
                    fs.len()
                ))
            })?;
            let subquotients = jh_subquotients(&rep, f)?;
            passed(json!({
                "classes": classes,
                "class_order": ap.condensation.order.pairs().iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
                "filtration_count": fs.len(),
                "truncated": truncated,
                "filtration": f.steps,
                "subquotients": subquotients.iter().map(rep_body).collect::<Vec<_>>(),
            }))
        }
        Command::WeakJhVerify { input, cap, seed } => {
            let rep = load_rep(input)?;
            let r = weak_jh_verify(&rep, *cap, *seed)?;
            Outcome {
                ok: r.verdict,
                report: json!({
                    "verdict": r.verdict,
                    "sampled": r.sampled,
                    "filtration_count": r.filtrations.len(),
                    "filtrations": r.filtrations.iter().map(|f| f.steps.clone()).collect::<Vec<_>>(),
                    "matchings": r.matchings,
                    "counterexample": r.counterexample,
                    "equivalence": "matrix-equivalent",
                }),
            }
        }
        Command::Pf { matrix, m } => {
            let a = json::parse_matrix(matrix)?;
            let (lo, hi) = column_sum_bounds(&a)?;
            let q = quasi_idempotent_check(&a, *m)?;
            let c = corollary_check(&a, *m)?;
            passed(json!({
                "matrix": matrix_rows(&a),
                "m": m,
                "column_sum_bounds": [lo as i64, hi as i64],
                "rank": rank_exact(&a),
                "quasi_idempotent": {
                    "holds": q.holds,
                    "positive": q.positive,
                    "rank1": q.rank1,
                    "pf_eigenvalue": q.pf_eigenvalue,
                },
                "corollary": { "applicable": c.applicable, "columns_equal": c.columns_equal },
            }))
        }
        Command::ClassifyQi { m, size_max } => {
            let size_max = size_max.unwrap_or((*m).max(1) as usize);
            let r = classify_quasi_idempotent(*m, size_max)?;
            passed(serde_json::to_value(report_to_doc(&r)).expect("serializable"))
        }
        Command::ClassifyGroup { group } => {
            let t = MultTable::named(group).map_err(|e| CliError::Usage(e.to_string()))?;
            let subgroups = enumerate_subgroups(&t)?;
            let reps = classify_group_reps(&t)?;
            let label = |xs: &[usize]| {
                xs.iter()
                    .map(|&x| t.label(x).to_string())
                    .collect::<Vec<_>>()
            };
            passed(json!({
                "group": group,
                "order": t.order(),
                "subgroups": subgroups.all.len(),
                "conjugacy_classes": subgroups.classes.len(),
                "representations": reps.iter().map(|g| {
                    let mut v = rep_body(&g.rep);
                    v["subgroup"] = json!(label(&g.subgroup));
                    v
                }).collect::<Vec<_>>(),
            }))
        }
        Command::B2Demo => passed(b2_json(&b2_obstruction_pipeline()?)),
    })
}

fn emit(cli: &Cli, outcome: &Outcome) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(&outcome.report).expect("serializable") + "\n";
    let to_stdout = cli.output.as_deref() == Some(Path::new("-"));
    if let Some(path) = cli.output.as_deref().filter(|_| !to_stdout) {
        std::fs::write(path, &text)?;
    }
    let mut out = std::io::stdout().lock();
    if to_stdout || (cli.format == Format::Json && cli.output.is_none()) {
        out.write_all(text.as_bytes())?;
    } else if cli.format == Format::Human {
        out.write_all(render(&outcome.report).as_bytes())?;
    }
    out.flush()
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli.command) {
        Ok(outcome) => {
            if let Err(e) = emit(&cli, &outcome) {
                eprintln!("error: cannot write the report: {e}");
                return 2;
            }
            if outcome.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
