//! The `kerov` command line: exact suites, sampling, expectations and the
//! Monte Carlo limit-theorem runs. Every output starts with the full
//! [`RunConfig`] of the run.

pub mod config;
pub mod expr;

use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use kerov::algebra::{structure_constants, Basis};
use kerov::characters::plancherel_weight;
use kerov::limits::{
    biane_check, gaussian_reference, lln_leading_coefficients, run_clt_all, run_clt_characters, run_clt_shape,
    run_clt_transition, run_lln, BianeReport, DiagramFamily, MomentReport, DEFAULT_SEED,
};
use kerov::observables::{omega, rescaled_profile};
use kerov::partitions::partitions_of;
use kerov::plancherel::{
    derive_seed, exact_expectation_with_cap, expectation_polynomial, parallel_map, sample, sample_with_mode,
    SampleRecord, SamplingMode,
};
use kerov::rational::{fmt_rational, to_f64};
use kerov::suite::{run_exact_suite, SuiteCaps};
use kerov::YoungDiagram;

pub use config::{FileConfig, FlagValues, Format, RunConfig, THREADS_ENV};
use config::Defaults;

/// Largest diagram size the `identities` suite accepts.
pub const MAX_IDENTITY_BOXES: usize = 16;
/// Largest `n` for the exact `M_n` column of `sample --histogram`.
pub const MAX_HISTOGRAM_N: usize = 20;

#[derive(Debug, Parser)]
#[command(name = "kerov", version, about = "Polynomial functions on Young diagrams and Plancherel-measure experiments")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Diagram size (or the largest n for `expect`).
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Number of samples N.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true)]
    pub kmax: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads; overrides the KEROV_THREADS environment variable.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Size cap for exhaustive enumerations.
    #[arg(long = "cap-boxes", global = true)]
    pub cap_boxes: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// TOML file with defaults for the flags above.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

impl CommonArgs {
    fn flags(&self) -> FlagValues {
        FlagValues {
            n: self.n,
            samples: self.samples,
            kmax: self.kmax,
            seed: self.seed,
            threads: self.threads,
            cap_boxes: self.cap_boxes,
            format: self.format,
            out: self.out.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Characters,
    Shape,
    Transition,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Staircase,
    Plancherel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Fast,
    Exact,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the exact identity suite, or dump one expansion.
    Identities {
        /// Print this observable (e.g. `p̃4`, `p#(2,1)`) in another basis.
        #[arg(long)]
        dump: Option<String>,
        /// Target basis for --dump.
        #[arg(long, default_value = "p")]
        basis: String,
        /// Print the structure constants of p#_σ p#_τ.
        #[arg(long, num_args = 2, value_names = ["SIGMA", "TAU"])]
        structure: Option<Vec<String>>,
    },
    /// Sample Plancherel diagrams as JSON lines.
    Sample {
        #[arg(long, value_enum, default_value_t = Mode::Fast)]
        mode: Mode,
        /// Emit a frequency table against the exact measure instead.
        #[arg(long)]
        histogram: bool,
    },
    /// Exact Plancherel expectations for n = 0..=N.
    Expect {
        #[arg(long)]
        observable: String,
    },
    /// Central limit theorems for characters, shapes and transition measures.
    Clt {
        #[arg(long, value_enum, default_value_t = Variant::All)]
        variant: Variant,
    },
    /// Law of large numbers.
    Lln,
    /// Character ratios on balanced diagrams against free cumulants.
    Biane {
        #[arg(long, default_value = "2")]
        rho: String,
        #[arg(long, value_delimiter = ',', default_values_t = [100usize, 400, 1600])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3.0)]
        a: f64,
        #[arg(long, value_enum, default_value_t = Family::Staircase)]
        family: Family,
    },
    /// Rescaled profile of one sample against the limit shape.
    Shape {
        /// Grid points per unit length on [-2.5, 2.5].
        #[arg(long, default_value_t = 100)]
        grid: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Identities { .. } => "identities",
            Command::Sample { .. } => "sample",
            Command::Expect { .. } => "expect",
            Command::Clt { .. } => "clt",
            Command::Lln => "lln",
            Command::Biane { .. } => "biane",
            Command::Shape { .. } => "shape",
        }
    }

    fn defaults(&self) -> Defaults {
        let d = |n, samples, kmax, cap_boxes, format| Defaults {
            n,
            samples,
            kmax,
            cap_boxes,
            format,
        };
        match self {
            Command::Identities { .. } => d(0, 0, 6, 10, Format::Text),
            Command::Sample { .. } => d(100, 10, 0, 14, Format::Json),
            Command::Expect { .. } => d(10, 0, 0, 14, Format::Csv),
            Command::Clt { .. } => d(4000, 4000, 6, 0, Format::Csv),
            Command::Lln => d(10_000, 500, 8, 0, Format::Csv),
            Command::Biane { .. } => d(0, 0, 0, 0, Format::Csv),
            Command::Shape { .. } => d(1000, 1, 100, 0, Format::Csv),
        }
    }

    fn options(&self) -> BTreeMap<String, String> {
        let mut o = BTreeMap::new();
        let mut put = |k: &str, v: String| {
            o.insert(k.to_string(), v);
        };
        match self {
            Command::Identities { dump, basis, structure } => {
                if let Some(d) = dump {
                    put("dump", d.clone());
                    put("basis", basis.clone());
                }
                if let Some(s) = structure {
                    put("structure", s.join(" "));
                }
            }
            Command::Sample { mode, histogram } => {
                put("mode", format!("{mode:?}").to_lowercase());
                put("histogram", histogram.to_string());
            }
            Command::Expect { observable } => put("observable", observable.clone()),
            Command::Clt { variant } => put("variant", format!("{variant:?}").to_lowercase()),
            Command::Lln => {}
            Command::Biane { rho, sizes, a, family } => {
                put("rho", rho.clone());
                put("sizes", sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(","));
                put("a", a.to_string());
                put("family", format!("{family:?}").to_lowercase());
            }
            Command::Shape { grid } => put("grid", grid.to_string()),
        }
        o
    }
}

/// Result of one command: the text to write and whether its checks passed.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub config: RunConfig,
    pub output: String,
    pub success: bool,
    /// One-line summary for stderr.
    pub summary: String,
}

/// Resolves the configuration of a parsed command line.
pub fn resolve_config(cli: &Cli, env_threads: Option<&str>) -> Result<RunConfig> {
    let file = match &cli.common.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let mut cfg = config::resolve(
        cli.command.name(),
        &cli.common.flags(),
        &file,
        env_threads,
        cli.command.defaults(),
        DEFAULT_SEED,
    )?;
    cfg.options = cli.command.options();
    Ok(cfg)
}

pub fn execute(cli: &Cli, cfg: &RunConfig) -> Result<Outcome> {
    match &cli.command {
        Command::Identities { dump, basis, structure } => cmd_identities(cfg, dump.as_deref(), basis, structure.as_deref()),
        Command::Sample { mode, histogram } => cmd_sample(cfg, *mode, *histogram),
        Command::Expect { observable } => cmd_expect(cfg, observable),
        Command::Clt { variant } => cmd_clt(cfg, *variant),
        Command::Lln => cmd_lln(cfg),
        Command::Biane { rho, sizes, a, family } => cmd_biane(cfg, rho, sizes, *a, *family),
        Command::Shape { grid } => cmd_shape(cfg, *grid),
    }
}

/// 17 significant digits, `.` as the decimal point.
pub fn float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

fn json_doc<T: Serialize>(cfg: &RunConfig, body: T) -> String {
    let mut v = serde_json::to_value(body).expect("serializable");
    let mut doc = serde_json::Map::new();
    doc.insert("config".into(), serde_json::to_value(cfg).expect("serializable"));
    match v.as_object_mut() {
        Some(obj) => doc.append(obj),
        None => {
            doc.insert("result".into(), v);
        }
    }
    let mut s = serde_json::to_string_pretty(&serde_json::Value::Object(doc)).expect("serializable");
    s.push('\n');
    s
}

fn csv_doc(cfg: &RunConfig, header: &[&str], rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    let body = String::from_utf8(w.into_inner().context("flushing csv")?)?;
    Ok(format!("{}\n{body}", cfg.header_line()))
}

fn text_doc(cfg: &RunConfig, lines: &[String]) -> String {
    let mut s = cfg.header_line();
    s.push('\n');
    for l in lines {
        s.push_str(l);
        s.push('\n');
    }
    s
}

fn outcome(cfg: &RunConfig, output: String, success: bool, summary: String) -> Outcome {
    Outcome {
        config: cfg.clone(),
        output,
        success,
        summary,
    }
}

pub fn cmd_identities(cfg: &RunConfig, dump: Option<&str>, basis: &str, structure: Option<&[String]>) -> Result<Outcome> {
    if let Some(expr) = dump {
        let f = expr::parse_observable(expr)?;
        let target: Basis = basis.parse()?;
        let g = f.to_basis(target);
        let line = g.to_string();
        let output = match cfg.format {
            Format::Json => json_doc(cfg, json!({ "input": expr, "basis": target.tag(), "display": line, "canonical": g.to_canonical_text() })),
            Format::Csv => csv_doc(cfg, &["input", "basis", "display", "canonical"], vec![vec![
                expr.to_string(),
                target.tag().to_string(),
                line.clone(),
                g.to_canonical_text(),
            ]])?,
            Format::Text => text_doc(cfg, std::slice::from_ref(&line)),
        };
        return Ok(outcome(cfg, output, true, line));
    }
    if let Some(pair) = structure {
        let sigma: YoungDiagram = pair[0].parse()?;
        let tau: YoungDiagram = pair[1].parse()?;
        let consts = structure_constants(&sigma, &tau)?;
        let terms: Vec<(String, String)> = consts.iter().map(|(r, c)| (r.to_tuple_string(), fmt_rational(c))).collect();
        let line = terms.iter().map(|(r, c)| format!("{r}:{c}")).collect::<Vec<_>>().join(" ");
        let output = match cfg.format {
            Format::Json => json_doc(cfg, json!({ "sigma": sigma.to_tuple_string(), "tau": tau.to_tuple_string(), "constants": terms })),
            Format::Csv => csv_doc(cfg, &["rho", "coefficient"], terms.iter().map(|(r, c)| vec![r.clone(), c.clone()]).collect())?,
            Format::Text => text_doc(cfg, std::slice::from_ref(&line)),
        };
        return Ok(outcome(cfg, output, true, line));
    }

    if cfg.cap_boxes == 0 || cfg.cap_boxes > MAX_IDENTITY_BOXES {
        bail!("--cap-boxes must lie in 1..={MAX_IDENTITY_BOXES} for identities");
    }
    let caps = SuiteCaps {
        max_diagram: cfg.cap_boxes,
        ..SuiteCaps::default()
    };
    let report = run_exact_suite(&caps);
    let passed = report.checks.iter().filter(|c| c.passed).count();
    let summary = format!(
        "identities: {passed}/{} checks passed in {:.1} s",
        report.checks.len(),
        report.seconds
    );
    let output = match cfg.format {
        Format::Json => json_doc(cfg, &report),
        Format::Csv => csv_doc(
            cfg,
            &["group", "check", "passed", "detail"],
            report
                .checks
                .iter()
                .map(|c| vec![c.group.clone(), c.name.clone(), c.passed.to_string(), c.detail.clone()])
                .collect(),
        )?,
        Format::Text => {
            let lines: Vec<String> = report.checks.iter().map(|c| c.to_string()).collect();
            text_doc(cfg, &lines)
        }
    };
    Ok(outcome(cfg, output, report.all_passed(), summary))
}

pub fn cmd_sample(cfg: &RunConfig, mode: Mode, histogram: bool) -> Result<Outcome> {
    let mode = match mode {
        Mode::Fast => SamplingMode::Fast,
        Mode::Exact => SamplingMode::Exact,
    };
    if histogram {
        return sample_histogram(cfg, mode);
    }
    let records: Vec<SampleRecord> = parallel_map(cfg.samples, |i| {
        let seed = derive_seed(cfg.seed, i as u64);
        SampleRecord {
            seed,
            n: cfg.n,
            rows: sample_with_mode(cfg.n, seed, mode).rows().to_vec(),
        }
    });
    let output = match cfg.format {
        Format::Csv => csv_doc(
            cfg,
            &["index", "seed", "rows"],
            records
                .iter()
                .enumerate()
                .map(|(i, r)| vec![i.to_string(), r.seed.to_string(), r.diagram().to_text()])
                .collect(),
        )?,
        Format::Json | Format::Text => {
            let mut s = serde_json::to_string(&json!({ "config": cfg }))?;
            s.push('\n');
            for r in &records {
                s.push_str(&serde_json::to_string(r)?);
                s.push('\n');
            }
            s
        }
    };
    let summary = format!("sample: {} diagrams of size {}", records.len(), cfg.n);
    Ok(outcome(cfg, output, true, summary))
}

#[derive(Debug, Clone, Serialize)]
struct HistogramRow {
    diagram: String,
    count: u64,
    frequency: f64,
    expected: f64,
    z: f64,
}

fn sample_histogram(cfg: &RunConfig, mode: SamplingMode) -> Result<Outcome> {
    if cfg.n > MAX_HISTOGRAM_N.min(cfg.cap_boxes) {
        bail!("--histogram needs n ≤ {}", MAX_HISTOGRAM_N.min(cfg.cap_boxes));
    }
    if cfg.samples == 0 {
        bail!("--samples must be positive");
    }
    let draws = parallel_map(cfg.samples, |i| sample_with_mode(cfg.n, derive_seed(cfg.seed, i as u64), mode));
    let mut counts: BTreeMap<YoungDiagram, u64> = BTreeMap::new();
    for d in draws {
        *counts.entry(d).or_insert(0) += 1;
    }
    let total = cfg.samples as f64;
    let rows: Vec<HistogramRow> = partitions_of(cfg.n)
        .into_iter()
        .map(|l| {
            let count = counts.get(&l).copied().unwrap_or(0);
            let p = to_f64(&plancherel_weight(&l));
            let freq = count as f64 / total;
            let se = (p * (1.0 - p) / total).sqrt();
            let z = if se > 0.0 { (freq - p) / se } else { 0.0 };
            HistogramRow {
                diagram: l.to_tuple_string(),
                count,
                frequency: freq,
                expected: p,
                z,
            }
        })
        .collect();
    let max_z = rows.iter().map(|r| r.z.abs()).fold(0.0, f64::max);
    let success = max_z <= 4.0;
    let summary = format!("sample --histogram: max |z| = {max_z:.3} over {} diagrams", rows.len());
    let output = match cfg.format {
        Format::Json => json_doc(cfg, json!({ "rows": rows, "max_abs_z": max_z })),
        Format::Csv | Format::Text => csv_doc(
            cfg,
            &["diagram", "count", "frequency", "expected", "z"],
            rows.iter()
                .map(|r| vec![r.diagram.clone(), r.count.to_string(), float(r.frequency), float(r.expected), float(r.z)])
                .collect(),
        )?,
    };
    Ok(outcome(cfg, output, success, summary))
}

pub fn cmd_expect(cfg: &RunConfig, observable: &str) -> Result<Outcome> {
    let f = expr::parse_observable(observable)?;
    let closed = expectation_polynomial(&f);
    let mut rows = Vec::new();
    let mut agree = true;
    for n in 0..=cfg.n {
        let exact = exact_expectation_with_cap(&f, n, cfg.cap_boxes)?;
        let formula = closed.eval(n as u64);
        agree &= exact == formula;
        rows.push((n, fmt_rational(&exact), fmt_rational(&formula)));
    }
    let coeffs: Vec<String> = closed.coeffs().iter().map(fmt_rational).collect();
    let summary = format!(
        "expect {observable}: closed form {} exact values for n ≤ {}",
        if agree { "matches" } else { "DISAGREES with" },
        cfg.n
    );
    let output = match cfg.format {
        Format::Json => json_doc(
            cfg,
            json!({
                "observable": f.to_canonical_text(),
                "psharp": f.to_basis(Basis::PSharp).to_string(),
                "closed_form_coefficients": coeffs,
                "values": rows.iter().map(|(n, e, c)| json!({ "n": n, "exact": e, "closed_form": c })).collect::<Vec<_>>(),
            }),
        ),
        Format::Csv | Format::Text => csv_doc(
            cfg,
            &["n", "exact", "closed_form"],
            rows.into_iter().map(|(n, e, c)| vec![n.to_string(), e, c]).collect(),
        )?,
    };
    Ok(outcome(cfg, output, agree, summary))
}

fn moment_rows(reports: &[&MomentReport]) -> Vec<Vec<String>> {
    reports
        .iter()
        .flat_map(|r| r.csv_rows())
        .map(|r| {
            vec![
                r.name,
                r.n.to_string(),
                r.samples.to_string(),
                float(r.mean),
                float(r.var),
                float(r.target),
                float(r.z_score),
                r.ks_stat.map(float).unwrap_or_default(),
            ]
        })
        .collect()
}

const MOMENT_HEADER: [&str; 8] = ["name", "n", "N", "mean", "var", "target", "z_score", "ks_stat"];

fn check_summary(label: &str, reports: &[&MomentReport]) -> (bool, String) {
    let total: usize = reports.iter().map(|r| r.checks.len()).sum();
    let passed: usize = reports.iter().map(|r| r.checks.iter().filter(|c| c.passed).count()).sum();
    let failed: Vec<&str> = reports
        .iter()
        .flat_map(|r| r.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()))
        .collect();
    let mut s = format!("{label}: {passed}/{total} checks passed");
    if !failed.is_empty() {
        s.push_str(&format!(" (failed: {})", failed.join("; ")));
    }
    (passed == total, s)
}

pub fn cmd_clt(cfg: &RunConfig, variant: Variant) -> Result<Outcome> {
    let (n, samples, kmax, seed) = (cfg.n, cfg.samples, cfg.kmax, cfg.seed);
    let (json_body, reports): (serde_json::Value, Vec<MomentReport>) = match variant {
        Variant::All => {
            let all = run_clt_all(n, samples, kmax, seed)?;
            (
                json!({ "report": all }),
                vec![all.characters.clone(), all.shape.clone(), all.transition.clone()],
            )
        }
        single => {
            let r = match single {
                Variant::Characters => run_clt_characters(n, samples, kmax, seed)?,
                Variant::Shape => run_clt_shape(n, samples, kmax, seed)?,
                _ => run_clt_transition(n, samples, kmax, seed)?,
            };
            (json!({ "report": r }), vec![r])
        }
    };
    let refs: Vec<&MomentReport> = reports.iter().collect();
    let (success, summary) = check_summary(&format!("clt {}", cfg.options["variant"]), &refs);
    let output = match cfg.format {
        Format::Json => json_doc(cfg, json_body),
        Format::Csv | Format::Text => csv_doc(cfg, &MOMENT_HEADER, moment_rows(&refs))?,
    };
    Ok(outcome(cfg, output, success, summary))
}

pub fn cmd_lln(cfg: &RunConfig) -> Result<Outcome> {
    let report = run_lln(cfg.n, cfg.samples, cfg.kmax, cfg.seed)?;
    let lead_k = (cfg.kmax as u32).clamp(2, kerov::limits::lln::MAX_LEADING_K);
    let leading = lln_leading_coefficients(lead_k)?;
    let (mut success, mut summary) = check_summary("lln", &[&report]);
    let lead_ok = leading.iter().all(|r| r.passed);
    success &= lead_ok;
    summary.push_str(&format!(
        "; leading coefficients of <p̃_k>_n for even k ≤ {lead_k}: {}",
        if lead_ok { "all central binomials" } else { "MISMATCH" }
    ));
    let output = match cfg.format {
        Format::Json => {
            let lead: Vec<_> = leading
                .iter()
                .map(|r| {
                    json!({
                        "k": r.k,
                        "degree_bound": r.degree_bound,
                        "degree": r.fitted.degree(),
                        "coefficients": r.fitted.coeffs().iter().map(fmt_rational).collect::<Vec<_>>(),
                        "leading": fmt_rational(&r.fitted.leading_coefficient()),
                        "expected_leading": fmt_rational(&r.expected_leading),
                        "extrapolates": r.extrapolates,
                        "matches_closed_form": r.matches_closed_form,
                        "passed": r.passed,
                    })
                })
                .collect();
            json_doc(cfg, json!({ "report": report, "leading_coefficients": lead }))
        }
        Format::Csv | Format::Text => csv_doc(cfg, &MOMENT_HEADER, moment_rows(&[&report]))?,
    };
    Ok(outcome(cfg, output, success, summary))
}

pub fn cmd_biane(cfg: &RunConfig, rho: &str, sizes: &[usize], a: f64, family: Family) -> Result<Outcome> {
    let rho: YoungDiagram = rho.parse()?;
    let family = match family {
        Family::Staircase => DiagramFamily::OddStaircase,
        Family::Plancherel => DiagramFamily::Plancherel { seed: cfg.seed },
    };
    let report: BianeReport = biane_check(&family, &rho, sizes, a)?;
    let summary = format!(
        "biane ρ={}: max consecutive ratio {}, residual slope {}, {}",
        report.rho,
        report.max_consecutive_ratio.map(|r| format!("{r:.4}")).unwrap_or_else(|| "n/a".into()),
        report.residual_slope.map(|r| format!("{r:.4}")).unwrap_or_else(|| "n/a".into()),
        if report.bounded { "bounded" } else { "NOT bounded" }
    );
    let output = match cfg.format {
        Format::Json => json_doc(cfg, json!({ "report": report })),
        Format::Csv | Format::Text => csv_doc(
            cfg,
            &["n", "first_row", "first_column", "measured", "predicted", "leading_factor", "residual", "scaled_residual"],
            report
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.first_row.to_string(),
                        r.first_column.to_string(),
                        float(r.measured),
                        float(r.predicted),
                        float(r.leading_factor),
                        float(r.residual),
                        float(r.scaled_residual),
                    ]
                })
                .collect(),
        )?,
    };
    Ok(outcome(cfg, output, report.bounded, summary))
}

pub fn cmd_shape(cfg: &RunConfig, grid: usize) -> Result<Outcome> {
    if grid == 0 {
        bail!("--grid must be positive");
    }
    let lambda = sample(cfg.n, cfg.seed);
    let half = (2.5 * grid as f64).round() as i64;
    let xs: Vec<f64> = (-half..=half).map(|j| j as f64 / grid as f64).collect();
    let reference = gaussian_reference(cfg.kmax, &xs, cfg.seed)?;
    let sqrt_n = (cfg.n as f64).sqrt();
    let rows: Vec<[f64; 5]> = xs
        .iter()
        .zip(&reference.delta)
        .map(|(&x, &d)| {
            let lb = rescaled_profile(&lambda, x);
            let om = omega(x);
            [x, lb, om, sqrt_n * (lb - om) / 2.0, d]
        })
        .collect();
    let summary = format!("shape: n = {}, {} grid points", cfg.n, rows.len());
    let header = ["x", "lambda_bar", "omega", "scaled_difference", "delta_reference"];
    let output = match cfg.format {
        Format::Json => json_doc(
            cfg,
            json!({
                "diagram": lambda.to_text(),
                "columns": header,
                "rows": rows,
            }),
        ),
        Format::Csv | Format::Text => csv_doc(cfg, &header, rows.iter().map(|r| r.iter().map(|&v| float(v)).collect()).collect())?,
    };
    Ok(outcome(cfg, output, true, summary))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Outcome {
        let mut full = vec!["kerov"];
        full.extend_from_slice(args);
        let cli = Cli::try_parse_from(full).unwrap();
        let cfg = resolve_config(&cli, None).unwrap();
        execute(&cli, &cfg).unwrap()
    }

    #[test]
    fn dump_and_structure_lines() {
        assert_eq!(run(&["identities", "--dump", "p̃₄"]).summary, "4·p₃ + p₁");
        assert_eq!(run(&["identities", "--structure", "2", "2"]).summary, "(2,2):1 (3):4 (1,1):2");
        assert_eq!(run(&["identities", "--structure", "2", "1"]).summary, "(2,1):1 (2):2");
    }

    #[test]
    fn float_format_has_seventeen_digits() {
        assert_eq!(float(0.1), "1.0000000000000001e-1");
        assert_eq!(float(4.0 / std::f64::consts::PI).parse::<f64>().unwrap(), 4.0 / std::f64::consts::PI);
    }

    #[test]
    fn expect_matches_closed_form() {
        let o = run(&["expect", "--observable", "p#(1,1)", "--n", "6"]);
        assert!(o.success);
        assert!(o.output.lines().any(|l| l == "6,30,30"));
    }
}
