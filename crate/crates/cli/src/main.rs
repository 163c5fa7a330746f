//! `tppart`: enumerate totally positive integers, count restricted partitions,
//! expand generating functions and verify partition identities.

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use tppart::partitions::{
    count_chain, count_chain_exact, count_partitions, enumerate_chains, enumerate_partitions,
    enumerate_weighted_solutions,
};
use tppart::qsum::partition_genfun;
use tppart::theorems::{
    verify_chain_theorem, verify_glaisher, verify_ideal_theorem, verify_remark_counterexample,
};
use tppart::{
    AlgInt, Error, GlaisherData, Ideal, MultBound, PartitionClass, QuadField, Report, TraceWindow,
};

#[derive(Parser)]
#[command(name = "tppart", version, about = "Partitions of totally positive algebraic integers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List totally positive integers of bounded trace.
    Enum {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        max_trace: u64,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// Count (and optionally list) partitions of one element.
    Count(CountArgs),
    /// Expand a partition generating function up to a trace bound.
    Expand(ExpandArgs),
    /// Check an identity for every element up to a trace bound.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct FieldArg {
    /// Radicand d of Q(√d); 1 selects Q.
    #[arg(long = "field")]
    d: u64,
}

#[derive(Args)]
struct FormatArgs {
    /// One JSON object per line.
    #[arg(long, conflicts_with = "tsv")]
    json: bool,
    /// Tab-separated rows.
    #[arg(long)]
    tsv: bool,
}

/// Part restrictions shared by `count` and `expand`.
#[derive(Args)]
struct ClassArgs {
    /// Parts must lie in the ideal with these generators ("g1;g2;...").
    #[arg(long)]
    ideal: Option<String>,
    /// Parts must lie outside the ideal with these generators.
    #[arg(long, conflicts_with = "ideal")]
    not_in_ideal: Option<String>,
    /// Parts must lie in the set S attached to this ideal and --modulus.
    #[arg(long = "glaisher-S", conflicts_with_all = ["ideal", "not_in_ideal"], requires = "modulus")]
    glaisher_s: Option<String>,
    /// The rational integer d in the ideal, for --glaisher-S.
    #[arg(long)]
    modulus: Option<u32>,
    /// Each part may appear at most k times.
    #[arg(long)]
    mult_bound: Option<u32>,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    field: FieldArg,
    /// Integral-basis coordinates "x,y" of δ = x + yω.
    #[arg(long, allow_hyphen_values = true)]
    delta: String,
    #[command(flatten)]
    class: ClassArgs,
    /// Count chain partitions instead.
    #[arg(long)]
    chain: bool,
    /// With --chain: at most this many parts.
    #[arg(long, requires = "chain")]
    max_parts: Option<usize>,
    /// With --chain --max-parts m: exactly m parts.
    #[arg(long, requires = "max_parts")]
    exact_parts: bool,
    /// With --chain --max-parts m: also list solutions of δ = x1 + 2x2 + ... + m·xm.
    #[arg(long, requires = "max_parts")]
    solutions: bool,
    /// Print the partitions themselves.
    #[arg(long)]
    list: bool,
    #[command(flatten)]
    format: FormatArgs,
}

#[derive(Args)]
struct ExpandArgs {
    #[command(flatten)]
    field: FieldArg,
    #[arg(long)]
    max_trace: u64,
    /// Every totally positive part (the default).
    #[arg(long)]
    all: bool,
    #[command(flatten)]
    class: ClassArgs,
    #[command(flatten)]
    format: FormatArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    Ideal,
    Glaisher,
    Chain,
    Remark,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    theorem: Theorem,
    #[arg(long = "field", default_value_t = 3)]
    d: u64,
    #[arg(long, default_value_t = 12)]
    max_trace: u64,
    /// Ideal generators for --theorem ideal.
    #[arg(long)]
    ideal: Option<String>,
    /// The integer d for --theorem ideal or glaisher.
    #[arg(long)]
    modulus: Option<u32>,
    /// Largest m for --theorem chain.
    #[arg(long, default_value_t = 6)]
    max_parts: usize,
    /// Emit the per-element table as JSON lines.
    #[arg(long)]
    json: bool,
}

/// Failure exit codes: 1 for a failed verification, 2 for bad input.
enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = match cli.command {
        Command::Enum { field, max_trace, format } => run_enum(&mut out, field, max_trace, &format),
        Command::Count(args) => run_count(&mut out, &args),
        Command::Expand(args) => run_expand(&mut out, &args),
        Command::Verify(args) => run_verify(&mut out, &args),
    };
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(()), Ok(())) => ExitCode::SUCCESS,
        (Err(Failure::Verification), _) => ExitCode::from(1),
        (Err(Failure::Usage(msg)), _) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        (Ok(()), Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn field_of(arg: &FieldArg) -> CliResult<QuadField> {
    Ok(QuadField::new(arg.d)?)
}

fn int_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn coords_json(a: &AlgInt) -> Value {
    json!([int_json(a.x()), int_json(a.y())])
}

/// Parses `"x,y"` (or a bare `"x"`) into `x + yω`.
fn parse_delta(field: QuadField, s: &str) -> CliResult<AlgInt> {
    let mut coords = Vec::new();
    let mut offset = 0;
    for piece in s.split(',') {
        let trimmed = piece.trim();
        let value: BigInt = trimmed.parse().map_err(|_| {
            Failure::Usage(format!("cannot parse {s:?} at byte {offset}: expected integer"))
        })?;
        coords.push(value);
        offset += piece.len() + 1;
    }
    let (x, y) = match coords.len() {
        1 => (coords.remove(0), BigInt::from(0)),
        2 => {
            let y = coords.pop().unwrap_or_default();
            (coords.remove(0), y)
        }
        _ => return Err(Failure::Usage(format!("--delta expects \"x,y\", got {s:?}"))),
    };
    Ok(AlgInt::from_coords(field, x, y)?)
}

fn parse_ideal(field: QuadField, s: &str) -> CliResult<Ideal> {
    let gens = s
        .split(';')
        .filter(|g| !g.trim().is_empty())
        .map(|g| field.parse_elem(g))
        .collect::<tppart::Result<Vec<_>>>()?;
    Ok(Ideal::from_generators(&gens)?)
}

fn build_class(field: QuadField, args: &ClassArgs) -> CliResult<PartitionClass> {
    let base = if let Some(g) = &args.ideal {
        PartitionClass::inside_ideal(parse_ideal(field, g)?)
    } else if let Some(g) = &args.not_in_ideal {
        PartitionClass::avoiding_ideal(parse_ideal(field, g)?)
    } else if let Some(g) = &args.glaisher_s {
        let d = args.modulus.ok_or_else(|| Failure::Usage("--glaisher-S needs --modulus".into()))?;
        PartitionClass::glaisher_s(GlaisherData::new(parse_ideal(field, g)?, d)?)
    } else {
        PartitionClass::all()
    };
    Ok(match args.mult_bound {
        Some(k) => base.with_mult_bound(MultBound::AtMost(k)),
        None => base,
    })
}

fn run_enum(out: &mut impl Write, field: FieldArg, max_trace: u64, fmt: &FormatArgs) -> CliResult<()> {
    let field = field_of(&field)?;
    if !fmt.json && !fmt.tsv {
        writeln!(out, "x\ty\ttrace\tnorm\telement")?;
    }
    for a in TraceWindow::new(field, max_trace).elements() {
        if fmt.json {
            let row = json!({
                "field": field.radicand(),
                "delta": coords_json(&a),
                "trace": int_json(&a.trace()),
                "norm": int_json(&a.norm()),
                "display": a.to_string(),
            });
            writeln!(out, "{row}")?;
        } else {
            writeln!(out, "{}\t{}\t{}\t{}\t{}", a.x(), a.y(), a.trace(), a.norm(), a)?;
        }
    }
    Ok(())
}

fn run_count(out: &mut impl Write, args: &CountArgs) -> CliResult<()> {
    let field = field_of(&args.field)?;
    let delta = parse_delta(field, &args.delta)?;
    if !delta.is_totally_positive() {
        return Err(Failure::Usage(format!("{delta} is not totally positive")));
    }
    let class = build_class(field, &args.class)?;

    let (label, count, listing, solutions) = if args.chain {
        let exact = args.exact_parts;
        let count = match (args.max_parts, exact) {
            (Some(m), true) => count_chain_exact(&delta, m),
            (m, _) if args.class.ideal.is_none()
                && args.class.not_in_ideal.is_none()
                && args.class.glaisher_s.is_none()
                && args.class.mult_bound.is_none() =>
            {
                count_chain(&delta, m)
            }
            (m, _) => enumerate_chains(&delta, &class, m).len(),
        };
        let listing: Vec<Vec<AlgInt>> = if args.list {
            enumerate_chains(&delta, &class, args.max_parts)
                .into_iter()
                .filter(|c| !exact || Some(c.len()) == args.max_parts)
                // display in descending order, like ordinary partitions
                .map(|c| c.into_iter().rev().collect())
                .collect()
        } else {
            Vec::new()
        };
        let solutions = match (args.solutions, args.max_parts) {
            (true, Some(m)) => enumerate_weighted_solutions(&delta, m)
                .into_iter()
                .filter(|s| !exact || s.top() == Some(m))
                .map(|s| s.xs().to_vec())
                .collect(),
            _ => Vec::new(),
        };
        let bound = match args.max_parts {
            Some(m) if exact => format!(", ={m} parts"),
            Some(m) => format!(", ≤{m} parts"),
            None => String::new(),
        };
        (format!("chain {}{bound}", class.label()), BigInt::from(count), listing, solutions)
    } else {
        let listing = if args.list {
            enumerate_partitions(&delta, &class).into_iter().map(|p| p.parts().to_vec()).collect()
        } else {
            Vec::new()
        };
        (class.label().to_string(), count_partitions(&delta, &class), listing, Vec::new())
    };

    let show = |seq: &[AlgInt]| seq.iter().map(|a| a.to_string()).collect::<Vec<_>>();
    if args.format.json {
        let mut row = json!({
            "field": field.radicand(),
            "delta": coords_json(&delta),
            "display": delta.to_string(),
            "class": label,
            "count": int_json(&count),
        });
        if args.list {
            row["partitions"] = json!(listing.iter().map(|p| show(p)).collect::<Vec<_>>());
        }
        if args.solutions {
            row["solutions"] = json!(solutions.iter().map(|s| show(s)).collect::<Vec<_>>());
        }
        writeln!(out, "{row}")?;
    } else if args.format.tsv {
        writeln!(out, "count\t{}\t{}\t{}\t{}", field.radicand(), delta.x(), delta.y(), count)?;
        for p in &listing {
            writeln!(out, "partition\t{}", show(p).join("\t"))?;
        }
        for s in &solutions {
            writeln!(out, "solution\t{}", show(s).join("\t"))?;
        }
    } else {
        writeln!(out, "p(\"{label}\", {delta}) = {count}")?;
        for p in &listing {
            writeln!(out, "({})", show(p).join(", "))?;
        }
        for s in &solutions {
            writeln!(out, "x = ({})", show(s).join(", "))?;
        }
    }
    Ok(())
}

fn run_expand(out: &mut impl Write, args: &ExpandArgs) -> CliResult<()> {
    let field = field_of(&args.field)?;
    let class = build_class(field, &args.class)?;
    let series = partition_genfun(field, &class, args.max_trace);
    if !args.format.json && !args.format.tsv {
        writeln!(out, "# prod over parts in \"{}\", trace ≤ {}", class.label(), args.max_trace)?;
    }
    for (delta, c) in series.terms() {
        if args.format.json {
            let row = json!({
                "field": field.radicand(),
                "delta": coords_json(delta),
                "display": delta.to_string(),
                "count": int_json(c),
            });
            writeln!(out, "{row}")?;
        } else if args.format.tsv {
            writeln!(out, "{}\t{}\t{}\t{}", delta.x(), delta.y(), delta, c)?;
        } else {
            writeln!(out, "{delta}\t{c}")?;
        }
    }
    Ok(())
}

fn run_verify(out: &mut impl Write, args: &VerifyArgs) -> CliResult<()> {
    let field = QuadField::new(args.d)?;
    let report = match args.theorem {
        Theorem::Ideal => {
            let gens = args
                .ideal
                .as_deref()
                .ok_or_else(|| Failure::Usage("--theorem ideal needs --ideal".into()))?;
            let d = args
                .modulus
                .ok_or_else(|| Failure::Usage("--theorem ideal needs --modulus".into()))?;
            verify_ideal_theorem(&GlaisherData::new(parse_ideal(field, gens)?, d)?, args.max_trace)
        }
        Theorem::Glaisher => {
            let d = args.modulus.unwrap_or(2);
            if d < 2 {
                return Err(Failure::Usage("--modulus must be at least 2".into()));
            }
            verify_glaisher(field, d, args.max_trace)
        }
        Theorem::Chain => verify_chain_theorem(field, args.max_trace, args.max_parts),
        Theorem::Remark => verify_remark_counterexample(),
    };
    if args.json {
        write_report_json(out, &report)?;
    } else {
        writeln!(out, "{report}")?;
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn write_report_json(out: &mut impl Write, report: &Report) -> io::Result<()> {
    let header = json!({
        "theorem": report.theorem,
        "field": report.field.radicand(),
        "max_trace": report.max_trace,
        "notes": report.header,
        "rows": report.rows.len(),
        "passed": report.passed(),
    });
    writeln!(out, "{header}")?;
    for row in &report.rows {
        let mut obj = json!({
            "field": report.field.radicand(),
            "delta": coords_json(&row.delta),
            "display": row.delta.to_string(),
            "ok": row.ok,
        });
        if let Some(m) = row.m {
            obj["m"] = json!(m);
        }
        for (name, v) in &row.columns {
            obj[name.as_str()] = int_json(v);
        }
        if let Some(note) = &row.note {
            obj["note"] = json!(note);
        }
        writeln!(out, "{obj}")?;
    }
    Ok(())
}
