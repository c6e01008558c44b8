//! Command-line front end. Every command writes one JSON document or one
//! CSV table; see the README for the schemas.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::asymptotics::{
    argmax_entropy, entropy_exponent, exponent_table, EntropyPoint, ExponentRow,
};
use crate::binomials::is_prime;
use crate::constructions::{
    base_formula, build_gb, check_nlogn, formula_report, maximal_intransitive, mu_formula,
    named_group, sylow_sym, wreath_product, GroupDescriptor, WreathSpec,
};
use crate::error::{Error, Result};
use crate::filtration::{filtration_equal, GroupParams};
use crate::group::{
    invariant_report, Caps, GeneratedGroup, InvariantReport, DEFAULT_DEGREE_CAP,
    DEFAULT_ELEMENT_CAP, DEFAULT_NODE_CAP,
};
use crate::output::format_float;
use crate::verify::{closed_forms, run_verify_with, VerifySummary};

/// Primes used by `asym` when no list is given.
pub const DEFAULT_P_LIST: [u64; 6] = [2, 5, 11, 101, 1009, 10007];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "mubase",
    version,
    about = "Minimal degree and base size of the groups G_b"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP, global = true, value_parser = positive_usize)]
    pub element_cap: usize,
    #[arg(long, default_value_t = DEFAULT_DEGREE_CAP, global = true, value_parser = positive_u64)]
    pub degree_cap: u64,
    #[arg(long, default_value_t = DEFAULT_NODE_CAP, global = true, value_parser = positive_u64)]
    pub node_cap: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form invariants of one G_b, optionally checked by the oracles.
    Invariants {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        oracle: bool,
    },
    /// Closed-form invariants for every b at fixed p, a.
    Sweep {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        a: u32,
    },
    /// Oracle-versus-formula suite over all small G_b plus the bound checks.
    Verify {
        #[arg(long, default_value_t = 32)]
        max_degree: u64,
        /// Adds 1 to the minimal degree formula; exercises the failure path.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Asymptotic exponent table and the entropy exponent.
    Asym {
        #[arg(long, value_delimiter = ',')]
        p_list: Option<Vec<u64>>,
        #[arg(long)]
        lambda: Option<f64>,
    },
    /// Dimensions of the filtration B_d, computed both ways.
    Filtration {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        a: u32,
    },
    /// Comparison families checked against the n log n bound.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
}

#[derive(Debug, Subcommand)]
pub enum ConstructKind {
    Wreath(WreathArgs),
    Sylow {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: u64,
    },
    Maxintrans {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
    },
}

#[derive(Debug, Args)]
pub struct WreathArgs {
    /// `S<k>`, `C<k>` or `1`.
    #[arg(long)]
    pub inner: String,
    #[arg(long)]
    pub outer: String,
}

fn positive_u64(s: &str) -> std::result::Result<u64, String> {
    match s.parse::<u64>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn positive_usize(s: &str) -> std::result::Result<usize, String> {
    positive_u64(s).map(|v| v as usize)
}

/// Rendered output plus an optional verification failure (exit code 4).
struct Outcome {
    text: String,
    failure: Option<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            failure: None,
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// One CSV table with a header row.
fn csv_table<I>(header: &[&str], rows: I) -> Result<String>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let io = |e: csv::Error| Error::Io(e.to_string());
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(&row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

const REPORT_HEADER: [&str; 7] = [
    "n",
    "order",
    "mu",
    "base_size",
    "product",
    "exponent",
    "transitive",
];

fn report_fields(r: &InvariantReport) -> Vec<String> {
    vec![
        r.n.to_string(),
        r.order.to_string(),
        r.mu.to_string(),
        r.base_size.to_string(),
        r.product.to_string(),
        format_float(Some(r.exponent)),
        r.transitive.to_string(),
    ]
}

#[derive(Serialize)]
struct Verdict {
    mu: &'static str,
    base_size: &'static str,
}

fn verdict(equal: bool) -> &'static str {
    if equal {
        "MATCH"
    } else {
        "MISMATCH"
    }
}

#[derive(Serialize)]
struct InvariantsOutput {
    command: &'static str,
    group: GroupDescriptor,
    params: GroupParams,
    formula: InvariantReport,
    oracle: Option<InvariantReport>,
    verdict: Option<Verdict>,
}

fn cmd_invariants(
    p: u32,
    a: u32,
    b: u64,
    oracle: bool,
    caps: &Caps,
    format: Format,
) -> Result<Outcome> {
    let params = GroupParams::new(p, a, b)?;
    let formula = formula_report(&params);
    let (oracle_report, verdict) = if oracle {
        let group = build_gb(&params, caps)?;
        let report = invariant_report(&group, caps)?;
        let v = Verdict {
            mu: self::verdict(report.mu == formula.mu),
            base_size: self::verdict(report.base_size == formula.base_size),
        };
        (Some(report), Some(v))
    } else {
        (None, None)
    };
    let failure = verdict
        .as_ref()
        .filter(|v| v.mu != "MATCH" || v.base_size != "MATCH")
        .map(|_| format!("formula and oracle disagree for G_b(p={p}, a={a}, b={b})"));
    let out = InvariantsOutput {
        command: "invariants",
        group: GroupDescriptor::Gb { p, a, b },
        params,
        formula,
        oracle: oracle_report,
        verdict,
    };
    let text = match format {
        Format::Json => to_json(&out)?,
        Format::Csv => {
            let mut header = vec!["source", "p", "a", "b"];
            header.extend(REPORT_HEADER);
            header.push("verdict");
            let row = |source: &str, r: &InvariantReport, v: &str| {
                let mut fields = vec![
                    source.to_string(),
                    p.to_string(),
                    a.to_string(),
                    b.to_string(),
                ];
                fields.extend(report_fields(r));
                fields.push(v.to_string());
                fields
            };
            let mut rows = vec![row("formula", &out.formula, "")];
            if let (Some(r), Some(v)) = (&out.oracle, &out.verdict) {
                let both = v.mu == "MATCH" && v.base_size == "MATCH";
                rows.push(row("oracle", r, self::verdict(both)));
            }
            csv_table(&header, rows)?
        }
    };
    Ok(Outcome { text, failure })
}

#[derive(Serialize)]
struct SweepRow {
    b: u64,
    r: u64,
    s: u64,
    mu: u64,
    base: u64,
    product: u128,
    #[serde(serialize_with = "crate::output::serialize_rounded")]
    exponent: f64,
}

#[derive(Serialize)]
struct SweepOutput {
    command: &'static str,
    p: u32,
    a: u32,
    n: u64,
    /// Row with the largest exponent (first on ties).
    argmax_b: u64,
    rows: Vec<SweepRow>,
}

fn cmd_sweep(p: u32, a: u32, format: Format) -> Result<Outcome> {
    let first = GroupParams::new(p, a, 0)?;
    let mut rows = Vec::new();
    for b in 0..=first.max_b() {
        let params = GroupParams::new(p, a, b)?;
        let report = formula_report(&params);
        rows.push(SweepRow {
            b,
            r: params.r,
            s: params.s,
            mu: report.mu,
            base: report.base_size,
            product: report.product,
            exponent: report.exponent,
        });
    }
    let argmax_b = rows
        .iter()
        .fold(&rows[0], |best, row| {
            if row.exponent > best.exponent {
                row
            } else {
                best
            }
        })
        .b;
    let text = match format {
        Format::Json => to_json(&SweepOutput {
            command: "sweep",
            p,
            a,
            n: first.n,
            argmax_b,
            rows,
        })?,
        Format::Csv => {
            let header = ["b", "r", "s", "mu", "base", "product", "exponent"];
            csv_table(
                &header,
                rows.iter().map(|row| {
                    vec![
                        row.b.to_string(),
                        row.r.to_string(),
                        row.s.to_string(),
                        row.mu.to_string(),
                        row.base.to_string(),
                        row.product.to_string(),
                        format_float(Some(row.exponent)),
                    ]
                }),
            )?
        }
    };
    Ok(Outcome::ok(text))
}

#[derive(Serialize)]
struct VerifyOutput {
    command: &'static str,
    result: &'static str,
    instance_count: usize,
    summary: VerifySummary,
}

fn cmd_verify(max_degree: u64, inject_fault: bool, caps: &Caps, format: Format) -> Result<Outcome> {
    let faulty = |g: &GroupParams| (mu_formula(g) + 1, base_formula(g));
    let summary = if inject_fault {
        run_verify_with(max_degree, caps, &faulty)?
    } else {
        run_verify_with(max_degree, caps, &closed_forms)?
    };
    let failure = (!summary.passed).then(|| summary.failures.join("\n"));
    let result = if summary.passed { "PASS" } else { "FAIL" };
    let text = match format {
        Format::Json => to_json(&VerifyOutput {
            command: "verify",
            result,
            instance_count: summary.instances.len(),
            summary,
        })?,
        Format::Csv => {
            let header = [
                "p",
                "a",
                "b",
                "n",
                "order",
                "mu_oracle",
                "mu_formula",
                "base_oracle",
                "base_formula",
                "min_nonzeros_oracle",
                "min_nonzeros_formula",
                "ok",
            ];
            csv_table(
                &header,
                summary.instances.iter().map(|c| {
                    vec![
                        c.p.to_string(),
                        c.a.to_string(),
                        c.b.to_string(),
                        c.n.to_string(),
                        c.order.to_string(),
                        c.mu_oracle.to_string(),
                        c.mu_formula.to_string(),
                        c.base_oracle.to_string(),
                        c.base_formula.to_string(),
                        c.min_nonzeros_oracle.to_string(),
                        c.min_nonzeros_formula.to_string(),
                        c.ok.to_string(),
                    ]
                }),
            )?
        }
    };
    Ok(Outcome { text, failure })
}

#[derive(Serialize)]
struct AsymOutput {
    command: &'static str,
    table: Option<Vec<ExponentRow>>,
    entropy: Option<EntropyPoint>,
    entropy_max: EntropyPoint,
}

fn cmd_asym(p_list: Option<Vec<u64>>, lambda: Option<f64>, format: Format) -> Result<Outcome> {
    if let Some(list) = &p_list {
        if let Some(&bad) = list.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::NotPrime(bad));
        }
    }
    let list = match (p_list, lambda) {
        (Some(list), _) => Some(list),
        (None, None) => Some(DEFAULT_P_LIST.to_vec()),
        (None, Some(_)) => None,
    };
    let table = list.map(|l| exponent_table(&l)).transpose()?;
    let entropy = lambda
        .map(|l| entropy_exponent(l).map(|value| EntropyPoint { lambda: l, value }))
        .transpose()?;
    let (lambda_star, value_star) = argmax_entropy();
    let text = match format {
        Format::Json => to_json(&AsymOutput {
            command: "asym",
            table,
            entropy,
            entropy_max: EntropyPoint {
                lambda: lambda_star,
                value: value_star,
            },
        })?,
        Format::Csv => {
            // a table section, then the entropy section, separated by a blank line
            let mut sections = Vec::new();
            if let Some(rows) = &table {
                sections.push(csv_table(
                    &["p", "theta_minus", "theta_zero", "theta_plus"],
                    rows.iter().map(|row| {
                        let mut fields = vec![row.p.to_string()];
                        fields.extend(row.cells().map(format_float));
                        fields
                    }),
                )?);
            }
            if let Some(e) = &entropy {
                sections.push(csv_table(
                    &["lambda", "value"],
                    [vec![
                        format_float(Some(e.lambda)),
                        format_float(Some(e.value)),
                    ]],
                )?);
            }
            sections.join("\n")
        }
    };
    Ok(Outcome::ok(text))
}

fn cmd_filtration(p: u32, a: u32, format: Format) -> Result<Outcome> {
    GroupParams::new(p, a, 0)?;
    let report = filtration_equal(p, a)?;
    let failure = (!report.equal).then(|| format!("filtration differs for p={p}, a={a}"));
    let text = match format {
        Format::Json => to_json(&report)?,
        Format::Csv => {
            let rows = report
                .dims
                .iter()
                .zip(&report.commutator_dims)
                .enumerate()
                .map(|(d, (x, y))| vec![d.to_string(), x.to_string(), y.to_string()]);
            csv_table(&["d", "dim", "commutator_dim"], rows)?
        }
    };
    Ok(Outcome { text, failure })
}

#[derive(Serialize)]
struct NlognVerdict {
    log_base: u32,
    #[serde(serialize_with = "crate::output::serialize_rounded")]
    bound: f64,
    ok: bool,
}

#[derive(Serialize)]
struct ConstructOutput {
    command: &'static str,
    group: GroupDescriptor,
    report: InvariantReport,
    orbit_sizes: Vec<usize>,
    lower_bound_ok: bool,
    nlogn: NlognVerdict,
}

fn cmd_construct(kind: ConstructKind, caps: &Caps, format: Format) -> Result<Outcome> {
    let (descriptor, group): (GroupDescriptor, GeneratedGroup) = match kind {
        ConstructKind::Wreath(WreathArgs { inner, outer }) => {
            let spec = WreathSpec {
                inner: named_group(&inner)?,
                outer: named_group(&outer)?,
            };
            let group = wreath_product(&spec, caps)?;
            (GroupDescriptor::Wreath { inner, outer }, group)
        }
        ConstructKind::Sylow { n, p } => (GroupDescriptor::Sylow { n, p }, sylow_sym(n, p, caps)?),
        ConstructKind::Maxintrans { n, k } => (
            GroupDescriptor::MaxIntransitive { n, k },
            maximal_intransitive(n, k, caps)?,
        ),
    };
    let report = invariant_report(&group, caps)?;
    let ok = check_nlogn(&report)?;
    let n = report.n as f64;
    let out = ConstructOutput {
        command: "construct",
        group: descriptor,
        orbit_sizes: group.orbits().iter().map(Vec::len).collect(),
        lower_bound_ok: report.satisfies_lower_bound(),
        nlogn: NlognVerdict {
            log_base: 2,
            bound: n * n.log2(),
            ok,
        },
        report,
    };
    let text = match format {
        Format::Json => to_json(&out)?,
        Format::Csv => {
            let mut header = REPORT_HEADER.to_vec();
            header.extend(["lower_bound_ok", "nlogn_ok"]);
            let mut fields = report_fields(&out.report);
            fields.extend([out.lower_bound_ok.to_string(), ok.to_string()]);
            csv_table(&header, [fields])?
        }
    };
    Ok(Outcome::ok(text))
}

fn dispatch(cli: Cli) -> Result<Outcome> {
    let caps = Caps {
        elements: cli.element_cap,
        degree: cli.degree_cap,
        search_nodes: cli.node_cap,
    };
    let format = cli.format;
    match cli.command {
        Command::Invariants { p, a, b, oracle } => cmd_invariants(p, a, b, oracle, &caps, format),
        Command::Sweep { p, a } => cmd_sweep(p, a, format),
        Command::Verify {
            max_degree,
            inject_fault,
        } => cmd_verify(max_degree, inject_fault, &caps, format),
        Command::Asym { p_list, lambda } => cmd_asym(p_list, lambda, format),
        Command::Filtration { p, a } => cmd_filtration(p, a, format),
        Command::Construct { kind } => cmd_construct(kind, &caps, format),
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let output = cli.output.clone();
    let outcome = match dispatch(cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let written = match &output {
        Some(path) => std::fs::write(path, &outcome.text),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(outcome.text.as_bytes())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return Error::from(e).exit_code();
    }
    match outcome.failure {
        Some(msg) => {
            eprintln!("FAIL: {msg}");
            Error::Verification(msg).exit_code()
        }
        None => 0,
    }
}
