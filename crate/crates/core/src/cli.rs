//! The `interval-rank` command line.
//!
//! Exit codes: 0 success, 1 validation or check failure, 2 usage error,
//! 3 interval or subset budget exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::compression::{validate_system, CompressionSystem, SystemReport};
use crate::error::Error;
use crate::fixtures;
use crate::invariants::{compression_multiplicity, generalized_rank, invariant_table};
use crate::io::{
    interval_json, parse_custom_system, parse_module, parse_poset, split_members, AnyModule,
};
use crate::lattice::IntervalLattice;
use crate::linalg::{rank, ExactField, Field, PrimeField, Rationals};
use crate::module::PersistenceModule;
use crate::poset::Poset;
use crate::replacement::{replacement_invariants, Replacement};

#[derive(Parser, Debug)]
#[command(
    name = "interval-rank",
    version,
    about = "Interval multiplicities, rank invariants and interval replacements of persistence modules"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a module's commutativity and, optionally, a compression system's axioms.
    Validate {
        #[command(flatten)]
        common: Common,
        /// Systems to check: tot, ss, zz or custom:<file>, comma separated.
        #[arg(long, value_delimiter = ',')]
        system: Vec<String>,
    },
    /// List the intervals of the poset with sources, sinks and covers.
    Intervals {
        #[command(flatten)]
        common: Common,
    },
    /// Compute the interval multiplicity table under one system.
    Rank {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "tot")]
        system: String,
        /// Restrict output to one interval, e.g. `1,2,3` or `(1,1),(2,1)`.
        #[arg(long)]
        interval: Option<String>,
        /// Compare the total multiplicity with the generalized rank.
        #[arg(long)]
        oracle_check: bool,
    },
    /// Compute signed multiplicities and the interval replacement.
    Replace {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "tot")]
        system: String,
        /// Check that the replacement reproduces the table and the dimensions.
        #[arg(long)]
        verify: bool,
    },
    /// Tabulate several systems side by side.
    Compare {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', required = true)]
        systems: Vec<String>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Module (or, for `intervals`, poset) JSON file.
    pub input: Option<PathBuf>,
    /// Use a built-in example instead of a file, e.g. `p1:2`, `m-lambda:3`.
    #[arg(long)]
    pub fixtures: Option<String>,
    /// Coefficient field: `q` or `fp:<p>`. Overrides the file.
    #[arg(long)]
    pub field: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for the interval sweep.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, default_value_t = crate::lattice::DEFAULT_MAX_INTERVALS)]
    pub max_intervals: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

enum Failure {
    Usage(String),
    Lib(Error),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let common = match &cli.command {
        Command::Validate { common, .. }
        | Command::Intervals { common }
        | Command::Rank { common, .. }
        | Command::Replace { common, .. }
        | Command::Compare { common, .. } => common.clone(),
    };
    if common.jobs == 0 || common.max_intervals == 0 {
        let _ = writeln!(
            err,
            "usage error: --jobs and --max-intervals must be at least 1"
        );
        return 2;
    }
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(common.jobs)
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker pool: {e}");
            return 1;
        }
    };
    let mut buf = Vec::new();
    let result = pool.install(|| execute(&cli.command, &common, &mut buf));
    let _ = out.write_all(&buf);
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "usage error: {msg}");
            2
        }
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "check failed: {msg}");
            1
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::BudgetExceeded { .. } | Error::SubsetBudgetExceeded { .. } => 3,
                _ => 1,
            }
        }
    }
}

fn field_choice(common: &Common) -> CliResult<Option<ExactField>> {
    common
        .field
        .as_deref()
        .map(ExactField::parse)
        .transpose()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn read_input(common: &Common) -> CliResult<String> {
    match &common.input {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display()))),
        None => Err(Failure::Usage(
            "give an input file or --fixtures <name>".into(),
        )),
    }
}

fn load_module(common: &Common) -> CliResult<AnyModule> {
    let field = field_choice(common)?;
    if let Some(name) = &common.fixtures {
        if common.input.is_some() {
            return Err(Failure::Usage(
                "give either an input file or --fixtures, not both".into(),
            ));
        }
        return Ok(match field.unwrap_or(ExactField::Rational) {
            ExactField::Rational => AnyModule::Rational(
                fixtures::by_name(name, Rationals).map_err(|e| Failure::Usage(e.to_string()))?,
            ),
            ExactField::Prime(p) => AnyModule::Prime(
                fixtures::by_name(name, PrimeField::new(p)?)
                    .map_err(|e| Failure::Usage(e.to_string()))?,
            ),
        });
    }
    Ok(parse_module(&read_input(common)?, field)?)
}

fn load_system(name: &str, ambient: &Arc<Poset>) -> CliResult<CompressionSystem> {
    if let Some(path) = name.strip_prefix("custom:") {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
        let stem = std::path::Path::new(path)
            .file_stem()
            .map_or_else(|| path.to_string(), |s| s.to_string_lossy().into_owned());
        let custom = parse_custom_system(&text, &stem, ambient.clone())?;
        return Ok(CompressionSystem::Custom(Arc::new(custom)));
    }
    CompressionSystem::builtin(name).map_err(|e| Failure::Usage(e.to_string()))
}

/// Loads a system and refuses to compute with one that breaks the axioms.
fn checked_system(name: &str, lattice: &IntervalLattice) -> CliResult<CompressionSystem> {
    let system = load_system(name, lattice.poset())?;
    if let CompressionSystem::Custom(_) = system {
        let report = validate_system(&system, lattice)?;
        if !report.passed() {
            let bad: Vec<String> = report
                .failures()
                .map(|c| lattice.interval(c.interval).display(lattice.poset()))
                .collect();
            return Err(Failure::Check(format!(
                "system {} violates the axioms at {}",
                report.system,
                bad.join(" ")
            )));
        }
    }
    Ok(system)
}

fn field_header(f: ExactField) -> Value {
    match f {
        ExactField::Rational => json!({"field": "Q"}),
        ExactField::Prime(p) => json!({"field": format!("F_{p}"), "modulus": p}),
    }
}

fn csv_header(f: ExactField) -> String {
    match f {
        ExactField::Rational => "# field=Q".to_string(),
        ExactField::Prime(p) => format!("# field=F_{p} modulus={p}"),
    }
}

fn emit_json(out: &mut dyn Write, mut header: Value, body: Value) -> CliResult<()> {
    if let (Value::Object(h), Value::Object(b)) = (&mut header, body) {
        h.extend(b);
    }
    let text = serde_json::to_string_pretty(&header).map_err(Error::from)?;
    writeln!(out, "{text}").map_err(Error::from)?;
    Ok(())
}

fn emit_csv(
    out: &mut dyn Write,
    header: &str,
    columns: &[&str],
    rows: Vec<Vec<String>>,
) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Failure::Lib(Error::Input(e.to_string()));
    w.write_record(columns).map_err(csv_err)?;
    for r in rows {
        w.write_record(&r).map_err(csv_err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Failure::Lib(Error::Input(e.to_string())))?;
    writeln!(out, "{header}").map_err(Error::from)?;
    out.write_all(&bytes).map_err(Error::from)?;
    Ok(())
}

fn names(lattice: &IntervalLattice, i: usize) -> Vec<String> {
    let p = lattice.poset();
    lattice
        .interval(i)
        .members()
        .iter()
        .map(|&x| p.label(x).to_string())
        .collect()
}

fn csv_interval(lattice: &IntervalLattice, i: usize) -> String {
    names(lattice, i).join(" ")
}

fn execute(cmd: &Command, common: &Common, out: &mut dyn Write) -> CliResult<i32> {
    if let Command::Intervals { .. } = cmd {
        return cmd_intervals(common, out);
    }
    let module = load_module(common)?;
    let lattice = IntervalLattice::enumerate(module.poset().clone(), Some(common.max_intervals))?;
    match (&module, cmd) {
        (AnyModule::Rational(m), _) => dispatch(m, &lattice, cmd, common, out),
        (AnyModule::Prime(m), _) => dispatch(m, &lattice, cmd, common, out),
    }
}

fn dispatch<F: Field>(
    m: &PersistenceModule<F>,
    lattice: &IntervalLattice,
    cmd: &Command,
    common: &Common,
    out: &mut dyn Write,
) -> CliResult<i32> {
    match cmd {
        Command::Validate { system, .. } => cmd_validate(m, lattice, system, common, out),
        Command::Rank {
            system,
            interval,
            oracle_check,
            ..
        } => cmd_rank(
            m,
            lattice,
            system,
            interval.as_deref(),
            *oracle_check,
            common,
            out,
        ),
        Command::Replace { system, verify, .. } => {
            cmd_replace(m, lattice, system, *verify, common, out)
        }
        Command::Compare { systems, .. } => cmd_compare(m, lattice, systems, common, out),
        Command::Intervals { .. } => unreachable!("handled before loading a module"),
    }
}

fn cmd_intervals(common: &Common, out: &mut dyn Write) -> CliResult<i32> {
    let poset = match &common.fixtures {
        Some(_) => load_module(common)?.poset().as_ref().clone(),
        None => parse_poset(&read_input(common)?)?,
    };
    let poset = Arc::new(poset);
    let lattice = IntervalLattice::enumerate(poset.clone(), Some(common.max_intervals))?;
    match common.format {
        Format::Json => {
            let rows: Vec<Value> = lattice
                .intervals()
                .iter()
                .enumerate()
                .map(|(i, iv)| {
                    let mut v = interval_json(&poset, iv);
                    let covers: Vec<Vec<String>> = lattice
                        .covers(i)
                        .iter()
                        .map(|&j| names(&lattice, j))
                        .collect();
                    v["covers"] = json!(covers);
                    v
                })
                .collect();
            emit_json(
                out,
                json!({"elements": poset.len(), "hasse_arrows": poset.hasse_arrows().len()}),
                json!({"count": lattice.len(), "intervals": rows}),
            )?;
        }
        Format::Csv => {
            let p = &poset;
            let join = |xs: &[usize]| xs.iter().map(|&x| p.label(x)).collect::<Vec<_>>().join(" ");
            let rows = lattice
                .intervals()
                .iter()
                .map(|iv| vec![join(iv.members()), join(iv.sources()), join(iv.sinks())])
                .collect();
            emit_csv(
                out,
                &format!("# elements={} intervals={}", poset.len(), lattice.len()),
                &["members", "sources", "sinks"],
                rows,
            )?;
        }
    }
    Ok(0)
}

fn report_json(report: &SystemReport, lattice: &IntervalLattice) -> Value {
    let p = lattice.poset();
    let failures: Vec<Value> = report
        .failures()
        .map(|c| {
            json!({
                "interval": names(lattice, c.interval),
                "inside": c.inside,
                "covers_sources_and_sinks": c.covers_extrema,
                "connected": c.connected,
            })
        })
        .collect();
    let rank_failures: Vec<String> = report
        .rank_failures
        .iter()
        .map(|&i| lattice.interval(i).display(p))
        .collect();
    json!({
        "system": report.system,
        "passed": report.passed(),
        "rank_system": report.is_rank_system(),
        "failures": failures,
        "segments_not_covered": rank_failures,
    })
}

fn cmd_validate<F: Field>(
    m: &PersistenceModule<F>,
    lattice: &IntervalLattice,
    systems: &[String],
    common: &Common,
    out: &mut dyn Write,
) -> CliResult<i32> {
    let mut reports = Vec::new();
    for name in systems {
        let system = load_system(name, lattice.poset())?;
        reports.push(validate_system(&system, lattice)?);
    }
    let ok = reports.iter().all(SystemReport::passed);
    let f = m.field().descriptor();
    match common.format {
        Format::Json => emit_json(
            out,
            field_header(f),
            json!({
                "module": "valid",
                "elements": m.poset().len(),
                "total_dimension": m.total_dim(),
                "systems": reports.iter().map(|r| report_json(r, lattice)).collect::<Vec<_>>(),
            }),
        )?,
        Format::Csv => {
            let rows = reports
                .iter()
                .map(|r| {
                    vec![
                        r.system.clone(),
                        r.passed().to_string(),
                        r.is_rank_system().to_string(),
                        r.failures()
                            .map(|c| lattice.interval(c.interval).display(lattice.poset()))
                            .collect::<Vec<_>>()
                            .join(" "),
                    ]
                })
                .collect();
            emit_csv(
                out,
                &csv_header(f),
                &["system", "passed", "rank_system", "failures"],
                rows,
            )?;
        }
    }
    Ok(if ok { 0 } else { 1 })
}

fn selected(lattice: &IntervalLattice, interval: Option<&str>) -> CliResult<Vec<usize>> {
    match interval {
        None => Ok((0..lattice.len()).collect()),
        Some(s) => {
            let members = split_members(s);
            if members.is_empty() {
                return Err(Failure::Usage(
                    "--interval needs at least one member".into(),
                ));
            }
            Ok(vec![lattice.find(&members)?])
        }
    }
}

fn cmd_rank<F: Field>(
    m: &PersistenceModule<F>,
    lattice: &IntervalLattice,
    system: &str,
    interval: Option<&str>,
    oracle_check: bool,
    common: &Common,
    out: &mut dyn Write,
) -> CliResult<i32> {
    let system = checked_system(system, lattice)?;
    let rows = selected(lattice, interval)?;
    let values: Vec<usize> = if rows.len() == lattice.len() {
        invariant_table(m, &system, lattice)?
    } else {
        rows.iter()
            .map(|&i| compression_multiplicity(m, &system, lattice, i))
            .collect::<Result<_, _>>()?
    };

    let mut mismatches = Vec::new();
    let oracle: Option<Vec<(usize, usize)>> = if oracle_check {
        let tot = match system {
            CompressionSystem::Tot => values.clone(),
            _ => rows
                .iter()
                .map(|&i| compression_multiplicity(m, &CompressionSystem::Tot, lattice, i))
                .collect::<Result<_, _>>()?,
        };
        let pairs: Vec<(usize, usize)> = rows
            .iter()
            .zip(&tot)
            .map(|(&i, &t)| (t, generalized_rank(m, lattice.interval(i))))
            .collect();
        for (k, &(t, g)) in pairs.iter().enumerate() {
            if t != g {
                mismatches.push(rows[k]);
            }
        }
        Some(pairs)
    } else {
        None
    };

    let f = m.field().descriptor();
    match common.format {
        Format::Json => {
            let table: Vec<Value> = rows
                .iter()
                .enumerate()
                .map(|(k, &i)| {
                    let mut v = json!({"interval": names(lattice, i), "mult": values[k]});
                    if let Some(o) = &oracle {
                        v["tot"] = json!(o[k].0);
                        v["generalized_rank"] = json!(o[k].1);
                    }
                    v
                })
                .collect();
            let mut body =
                json!({"system": system.name(), "intervals": lattice.len(), "rows": table});
            if oracle.is_some() {
                body["oracle_mismatches"] = json!(mismatches.len());
            }
            emit_json(out, field_header(f), body)?;
        }
        Format::Csv => {
            let mut columns = vec!["interval", "mult"];
            if oracle.is_some() {
                columns.extend(["tot", "generalized_rank"]);
            }
            let table = rows
                .iter()
                .enumerate()
                .map(|(k, &i)| {
                    let mut r = vec![csv_interval(lattice, i), values[k].to_string()];
                    if let Some(o) = &oracle {
                        r.push(o[k].0.to_string());
                        r.push(o[k].1.to_string());
                    }
                    r
                })
                .collect();
            emit_csv(
                out,
                &format!("{} system={}", csv_header(f), system.name()),
                &columns,
                table,
            )?;
        }
    }
    if !mismatches.is_empty() {
        let bad: Vec<String> = mismatches
            .iter()
            .map(|&i| lattice.interval(i).display(lattice.poset()))
            .collect();
        return Err(Failure::Check(format!(
            "total multiplicity differs from the generalized rank at {}",
            bad.join(" ")
        )));
    }
    Ok(0)
}

fn cmd_replace<F: Field>(
    m: &PersistenceModule<F>,
    lattice: &IntervalLattice,
    system: &str,
    verify: bool,
    common: &Common,
    out: &mut dyn Write,
) -> CliResult<i32> {
    let system = checked_system(system, lattice)?;
    let table = invariant_table(m, &system, lattice)?;
    let delta = crate::replacement::signed_multiplicity(&table, lattice);
    let r = Replacement::from_delta(system.name(), delta);

    let mut problems = Vec::new();
    if verify {
        let inv = replacement_invariants(&r, lattice);
        let table_ok = inv.table.iter().zip(&table).all(|(&a, &b)| a == b as i64);
        if !table_ok {
            problems.push("multiplicity table".to_string());
        }
        let dims_ok = inv
            .dims
            .iter()
            .zip(m.dimension_vector())
            .all(|(&a, &b)| a == b as i64);
        if !dims_ok {
            problems.push("dimension vector".to_string());
        }
        let report = validate_system(&system, lattice)?;
        if report.is_rank_system() {
            for (&(x, y), &v) in &inv.segment_ranks {
                if v != rank(m.field(), m.structure_map(x, y)?) as i64 {
                    problems.push(format!(
                        "rank at [{}, {}]",
                        lattice.poset().label(x),
                        lattice.poset().label(y)
                    ));
                }
            }
        }
    }

    let f = m.field().descriptor();
    match common.format {
        Format::Json => {
            let part = |xs: &[(usize, u64)]| -> Vec<Value> {
                xs.iter()
                    .map(|&(i, k)| json!({"interval": names(lattice, i), "multiplicity": k}))
                    .collect()
            };
            let delta: Vec<Value> = r
                .delta
                .iter()
                .enumerate()
                .filter(|(_, &d)| d != 0)
                .map(|(i, &d)| json!({"interval": names(lattice, i), "value": d}))
                .collect();
            let mut body = json!({
                "system": r.system,
                "delta": delta,
                "positive": part(&r.positive),
                "negative": part(&r.negative),
            });
            if verify {
                body["verified"] = json!(problems.is_empty());
            }
            emit_json(out, field_header(f), body)?;
        }
        Format::Csv => {
            let rows = r
                .delta
                .iter()
                .enumerate()
                .filter(|(_, &d)| d != 0)
                .map(|(i, &d)| vec![csv_interval(lattice, i), d.to_string()])
                .collect();
            emit_csv(
                out,
                &format!("{} system={}", csv_header(f), r.system),
                &["interval", "delta"],
                rows,
            )?;
        }
    }
    if !problems.is_empty() {
        return Err(Failure::Check(format!(
            "replacement does not reproduce the {}",
            problems.join(", ")
        )));
    }
    Ok(0)
}

fn cmd_compare<F: Field>(
    m: &PersistenceModule<F>,
    lattice: &IntervalLattice,
    systems: &[String],
    common: &Common,
    out: &mut dyn Write,
) -> CliResult<i32> {
    if systems.len() < 2 {
        return Err(Failure::Usage(
            "compare needs at least two systems, e.g. --systems tot,zz".into(),
        ));
    }
    let loaded = systems
        .iter()
        .map(|s| checked_system(s, lattice))
        .collect::<CliResult<Vec<_>>>()?;
    let tables = loaded
        .iter()
        .map(|s| invariant_table(m, s, lattice))
        .collect::<Result<Vec<_>, _>>()?;
    let tot = match loaded
        .iter()
        .position(|s| matches!(s, CompressionSystem::Tot))
    {
        Some(k) => tables[k].clone(),
        None => invariant_table(m, &CompressionSystem::Tot, lattice)?,
    };
    let headers: Vec<String> = loaded.iter().map(CompressionSystem::name).collect();

    let mut differing = 0;
    let mut below_tot = Vec::new();
    let mut rows = Vec::with_capacity(lattice.len());
    for i in 0..lattice.len() {
        let vals: Vec<usize> = tables.iter().map(|t| t[i]).collect();
        let differs = vals.iter().any(|&v| v != vals[0]);
        differing += usize::from(differs);
        if vals.iter().any(|&v| v < tot[i]) {
            below_tot.push(i);
        }
        rows.push((i, vals, differs));
    }

    let f = m.field().descriptor();
    match common.format {
        Format::Json => {
            let body_rows: Vec<Value> = rows
                .iter()
                .map(|(i, vals, differs)| {
                    let values: serde_json::Map<String, Value> = headers
                        .iter()
                        .zip(vals)
                        .map(|(h, v)| (h.clone(), json!(v)))
                        .collect();
                    json!({"interval": names(lattice, *i), "values": values, "differs": differs})
                })
                .collect();
            emit_json(
                out,
                field_header(f),
                json!({
                    "systems": headers,
                    "rows": body_rows,
                    "differences": differing,
                    "below_tot": below_tot.iter().map(|&i| names(lattice, i)).collect::<Vec<_>>(),
                }),
            )?;
        }
        Format::Csv => {
            let mut columns: Vec<&str> = vec!["interval"];
            columns.extend(headers.iter().map(String::as_str));
            columns.push("differs");
            let table = rows
                .iter()
                .map(|(i, vals, differs)| {
                    let mut r = vec![csv_interval(lattice, *i)];
                    r.extend(vals.iter().map(usize::to_string));
                    r.push(differs.to_string());
                    r
                })
                .collect();
            emit_csv(out, &csv_header(f), &columns, table)?;
        }
    }
    if !below_tot.is_empty() {
        return Err(Failure::Check(format!(
            "{} intervals have a multiplicity below the total one",
            below_tot.len()
        )));
    }
    Ok(0)
}
