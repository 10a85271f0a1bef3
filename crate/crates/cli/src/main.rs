//! Command-line front end: every certified computation of the library with
//! plain, json and csv output.
//!
//! Exit codes: 0 success, 1 verification failure, 2 domain error, 64 usage.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use splitcubic::error::Error;
use splitcubic::fermat::{self, BetaTriple, FermatCatalog, PlaneIndex};
use splitcubic::hesse;
use splitcubic::json as enc;
use splitcubic::lattice::{self, GramMatrix};
use splitcubic::numfield::{FieldElements, NumberFieldElement, NumberFieldSpec};
use splitcubic::plane;
use splitcubic::rational::{parse_rational, rational_to_string};

#[derive(Parser)]
#[command(
    name = "splitcubic",
    about = "Exact plane enumeration and lattice certificates for split cubic fourfolds",
    version,
    disable_help_subcommand = true
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Shorthand for --format json.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Plane count of the fourfold Hesse(l1)(x) = Hesse(l2)(y).
    Count(CountArgs),
    /// Fermat fourfold catalog commands.
    Fermat {
        #[command(subcommand)]
        sub: FermatCmd,
    },
    /// Torsion certificate for the quotient by the four rho relations.
    DsTorsion,
    /// Integer lattice reports.
    Lattice {
        #[command(subcommand)]
        sub: LatticeCmd,
    },
    /// Transcendental lattice of the fourfold attached to an even positive
    /// definite binary form.
    ShiodaMitani(ShiodaArgs),
    /// The nine flex points and tangents of a smooth Hesse member.
    FlexTable {
        /// Pencil parameter: integer, rational p/q, or a+b*sqrtN with N in {3, -3}.
        #[arg(long)]
        lambda: String,
    },
    /// Automorphism group of the Hesse form by generator closure.
    AutGroup {
        /// Pencil parameter: integer, rational p/q, or a+b*sqrtN with N in {3, -3}.
        #[arg(long)]
        lambda: String,
        /// Also dump the group elements as matrices.
        #[arg(long)]
        dump: bool,
    },
}

#[derive(Args)]
struct CountArgs {
    /// First pencil parameter (integer, p/q, or a+b*sqrtN, N in {3, -3}).
    #[arg(long)]
    l1: String,
    /// Second pencil parameter.
    #[arg(long)]
    l2: String,
}

#[derive(Subcommand)]
enum FermatCmd {
    /// All 405 planes of the Fermat fourfold.
    Planes,
    /// The 19x19 intersection matrix of the S basis.
    Gram,
    /// Recompute the Gram matrix and diff M + I against the golden file.
    VerifyAppendix,
    /// Integral decomposition of L planes over the S basis.
    Decompose {
        /// A single plane, e.g. "J1,(w,1,1)"; all 108 when omitted.
        #[arg(long)]
        index: Option<String>,
    },
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Rank, determinant, Smith diagonal and definiteness of a Gram matrix.
    Invariants {
        /// Path to a matrix JSON file ({rows, cols, entries: ["..."]}).
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct ShiodaArgs {
    #[arg(short)]
    a: i64,
    #[arg(short)]
    b: i64,
    #[arg(short)]
    c: i64,
}

/// Failures sorted by exit code.
enum Failure {
    Verification(String),
    Domain(String),
    Usage(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Domain(_) => 2,
            Failure::Usage(_) => 64,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Verification(m) | Failure::Domain(m) | Failure::Usage(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::Json(_) => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    // die quietly when a downstream pipe closes early
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version requests are successes, everything else is usage
            use clap::error::ErrorKind;
            let kind = e.kind();
            let _ = e.print();
            return if matches!(kind, ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(64)
            };
        }
    };
    let format = if cli.json { Format::Json } else { cli.format };
    match run(cli.command, format) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(command: Command, format: Format) -> Result<(), Failure> {
    match command {
        Command::Count(args) => cmd_count(&args, format),
        Command::Fermat { sub } => match sub {
            FermatCmd::Planes => cmd_fermat_planes(format),
            FermatCmd::Gram => cmd_fermat_gram(format),
            FermatCmd::VerifyAppendix => cmd_verify_appendix(format),
            FermatCmd::Decompose { index } => cmd_decompose(index.as_deref(), format),
        },
        Command::DsTorsion => cmd_ds_torsion(format),
        Command::Lattice { sub } => match sub {
            LatticeCmd::Invariants { input } => cmd_lattice_invariants(&input, format),
        },
        Command::ShiodaMitani(args) => cmd_shioda(&args, format),
        Command::FlexTable { lambda } => cmd_flex_table(&lambda, format),
        Command::AutGroup { lambda, dump } => cmd_aut_group(&lambda, dump, format),
    }
}

/// Parses the lambda grammar: integer | p/q | a+b*sqrtN with N in {3, -3},
/// resolved in the zeta12 preset.
fn parse_lambda(s: &str) -> Result<NumberFieldElement, Failure> {
    let spec = NumberFieldSpec::cyclotomic12();
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(pos) = compact.find("sqrt") {
        let radical = match &compact[pos + 4..] {
            "3" => spec.sqrt3().expect("zeta12 has sqrt3"),
            "-3" => {
                // sqrt(-3) = 2 omega + 1
                let one = NumberFieldElement::one(&spec);
                spec.omega()
                    .expect("zeta12 has omega")
                    .scale(&parse_rational("2").unwrap())
                    + one
            }
            other => {
                return Err(Failure::Usage(format!(
                    "unsupported radicand {other:?}: only sqrt3 and sqrt-3 are available"
                )))
            }
        };
        let prefix = &compact[..pos];
        let (a_str, b_str) = split_surd_prefix(prefix)
            .ok_or_else(|| Failure::Usage(format!("cannot parse lambda {s:?}")))?;
        let a = if a_str.is_empty() {
            parse_rational("0")
        } else {
            parse_rational(&a_str)
        }
        .map_err(|e| Failure::Usage(e.to_string()))?;
        let b = match b_str.as_str() {
            "" | "+" => parse_rational("1"),
            "-" => parse_rational("-1"),
            other => parse_rational(other.trim_end_matches('*')),
        }
        .map_err(|e| Failure::Usage(e.to_string()))?;
        return Ok(NumberFieldElement::from_rational(&spec, a) + radical.scale(&b));
    }
    let q = parse_rational(&compact).map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(NumberFieldElement::from_rational(&spec, q))
}

/// Splits "a+b*" | "a-b*" | "b*" | "a+" | "a-" | "" | "-" into the rational
/// prefix a and the multiplier token b (sign included).
fn split_surd_prefix(prefix: &str) -> Option<(String, String)> {
    if prefix.is_empty() || prefix == "-" || prefix == "+" {
        return Some((String::new(), prefix.to_string()));
    }
    // search the sign separating a from b, skipping a leading sign of a
    for (i, ch) in prefix.char_indices().rev() {
        if (ch == '+' || ch == '-') && i > 0 {
            let a = prefix[..i].to_string();
            let b = prefix[i..].to_string();
            return Some((a, b));
        }
    }
    // no separator: the whole prefix is the multiplier
    Some((String::new(), prefix.to_string()))
}

fn render_j(j: &NumberFieldElement) -> String {
    match j.as_rational() {
        Some(q) => rational_to_string(&q),
        None => j.to_string(),
    }
}

fn cmd_count(args: &CountArgs, format: Format) -> Result<(), Failure> {
    let l1 = parse_lambda(&args.l1)?;
    let l2 = parse_lambda(&args.l2)?;
    let j1 = hesse::j_invariant(&l1).map_err(Failure::from)?;
    let j2 = hesse::j_invariant(&l2).map_err(Failure::from)?;
    let equivalent = j1 == j2;
    let aut = if equivalent {
        Some(hesse::aut_order(&l1).map_err(Failure::from)?)
    } else {
        None
    };
    let total = plane::count_planes(3, 9, 9, aut.map(|a| a as u64), equivalent)
        .map_err(Failure::from)?;
    match format {
        Format::Plain => {
            println!("j1 = {}", render_j(&j1));
            println!("j2 = {}", render_j(&j2));
            println!("equivalent = {equivalent}");
            match aut {
                Some(a) => println!("aut_order = {a}"),
                None => println!("aut_order = -"),
            }
            println!("planes = {total}");
        }
        Format::Json => {
            let doc = json!({
                "j1": render_j(&j1),
                "j2": render_j(&j2),
                "equivalent": equivalent,
                "autOrder": aut,
                "planes": total,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        Format::Csv => {
            println!("j1,j2,equivalent,aut_order,planes");
            println!(
                "{},{},{},{},{}",
                render_j(&j1),
                render_j(&j2),
                equivalent,
                aut.map_or("-".into(), |a| a.to_string()),
                total
            );
        }
    }
    Ok(())
}

fn plane_compact(p: &plane::Plane) -> String {
    let m = p.canonical();
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let cells: Vec<String> = (0..m.cols()).map(|j| m.at(i, j).to_string()).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

fn cmd_fermat_planes(format: Format) -> Result<(), Failure> {
    let planes = fermat::all_fermat_planes().map_err(Failure::from)?;
    match format {
        Format::Plain => {
            println!("{} planes", planes.len());
            for p in &planes {
                println!("{}", plane_compact(p));
            }
        }
        Format::Json => {
            let doc: Vec<Value> = planes.iter().map(enc::plane_to_value).collect();
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        Format::Csv => {
            println!("index,canonical");
            for (i, p) in planes.iter().enumerate() {
                println!("{i},\"{}\"", plane_compact(p));
            }
        }
    }
    Ok(())
}

fn print_int_matrix(m: &splitcubic::matrix::IntMatrix, format: Format) {
    match format {
        Format::Plain => {
            for i in 0..m.rows() {
                let row: Vec<String> = (0..m.cols()).map(|j| m.at(i, j).to_string()).collect();
                println!("{}", row.join(" "));
            }
        }
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&enc::int_matrix_to_value(m)).unwrap()
            );
        }
        Format::Csv => {
            for i in 0..m.rows() {
                let row: Vec<String> = (0..m.cols()).map(|j| m.at(i, j).to_string()).collect();
                println!("{}", row.join(","));
            }
        }
    }
}

fn cmd_fermat_gram(format: Format) -> Result<(), Failure> {
    let catalog = FermatCatalog::new().map_err(Failure::from)?;
    print_int_matrix(catalog.gram(), format);
    Ok(())
}

fn golden_appendix() -> Result<splitcubic::matrix::IntMatrix, Failure> {
    match std::env::var_os("SPLITCUBIC_GOLDEN_DIR") {
        Some(dir) => {
            let path = PathBuf::from(dir).join("appendix_M_plus_I.json");
            let text = std::fs::read_to_string(&path).map_err(|e| {
                Failure::Usage(format!("cannot read golden file {}: {e}", path.display()))
            })?;
            let value = enc::parse_json(&text).map_err(Failure::from)?;
            enc::int_matrix_from_value(&value).map_err(Failure::from)
        }
        None => Ok(fermat::appendix_m_plus_i()),
    }
}

fn cmd_verify_appendix(format: Format) -> Result<(), Failure> {
    let catalog = FermatCatalog::new().map_err(Failure::from)?;
    let recomputed = fermat::plus_ones(catalog.gram());
    let golden = golden_appendix()?;
    if recomputed.rows() != golden.rows() || recomputed.cols() != golden.cols() {
        return Err(Failure::Verification(format!(
            "golden file is {}x{}, expected 19x19",
            golden.rows(),
            golden.cols()
        )));
    }
    let mut diffs = Vec::new();
    for i in 0..recomputed.rows() {
        for j in 0..recomputed.cols() {
            if recomputed.at(i, j) != golden.at(i, j) {
                diffs.push((i, j, recomputed.at(i, j).clone(), golden.at(i, j).clone()));
            }
        }
    }
    let det = catalog.gram().det_bareiss().map_err(Failure::from)?;
    if diffs.is_empty() {
        match format {
            Format::Json => {
                let doc = json!({"ok": true, "size": "19x19", "det": det.to_string()});
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            }
            _ => println!("19x19 OK, det={det}"),
        }
        Ok(())
    } else {
        for (i, j, got, want) in &diffs {
            println!("cell ({i},{j}): recomputed {got}, golden {want}");
        }
        Err(Failure::Verification(format!(
            "{} cells differ from the golden appendix matrix",
            diffs.len()
        )))
    }
}

fn parse_decompose_index(
    spec: &Arc<NumberFieldSpec>,
    s: &str,
) -> Result<(PlaneIndex, BetaTriple), Failure> {
    let (j_part, beta_part) = s
        .split_once(',')
        .ok_or_else(|| Failure::Usage(format!("expected J,(b0,b1,b2), got {s:?}")))?;
    let j = PlaneIndex::parse(j_part).map_err(Failure::from)?;
    let beta = BetaTriple::parse(spec, beta_part).map_err(Failure::from)?;
    Ok((j, beta))
}

fn cmd_decompose(index: Option<&str>, format: Format) -> Result<(), Failure> {
    let catalog = FermatCatalog::new().map_err(Failure::from)?;
    let targets: Vec<(PlaneIndex, BetaTriple)> = match index {
        Some(s) => vec![parse_decompose_index(catalog.spec(), s)?],
        None => catalog
            .l_planes()
            .map_err(Failure::from)?
            .into_iter()
            .map(|(j, b, _)| (j, b))
            .collect(),
    };
    let mut rows = Vec::new();
    for (j, beta) in targets {
        let plane = fermat::l_plane(catalog.spec(), &j, &beta).map_err(Failure::from)?;
        let m = catalog.decompose(&plane).map_err(Failure::from)?;
        rows.push((j, beta, m));
    }
    match format {
        Format::Plain => {
            for (j, beta, m) in &rows {
                let coeffs: Vec<String> = m.iter().map(|x| x.to_string()).collect();
                println!("{} {}: {}", j.label(), beta.label(), coeffs.join(" "));
            }
        }
        Format::Json => {
            let doc: Vec<Value> = rows
                .iter()
                .map(|(j, beta, m)| {
                    json!({
                        "J": j.label(),
                        "beta": beta.label(),
                        "m": m.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        Format::Csv => {
            println!("J,beta,m");
            for (j, beta, m) in &rows {
                let coeffs: Vec<String> = m.iter().map(|x| x.to_string()).collect();
                println!("{},\"{}\",\"{}\"", j.label(), beta.label(), coeffs.join(" "));
            }
        }
    }
    Ok(())
}

fn cmd_ds_torsion(format: Format) -> Result<(), Failure> {
    let cert = splitcubic::group_ring::torsion_free_certificate().map_err(Failure::from)?;
    let invariants: Vec<String> = cert
        .invariant_factors
        .iter()
        .map(|x| x.to_string())
        .collect();
    match format {
        Format::Plain => {
            println!(
                "torsion-free: {}; invariants {}",
                cert.is_torsion_free,
                invariants.join(",")
            );
            println!(
                "sub-table (1, t3, t1t3, t1t3t5), det = {}:",
                cert.sub_table_det
            );
            for i in 0..4 {
                let row: Vec<String> = (0..4)
                    .map(|j| cert.sub_table.at(i, j).to_string())
                    .collect();
                println!("{}", row.join(" "));
            }
        }
        Format::Json => {
            let doc = json!({
                "torsionFree": cert.is_torsion_free,
                "invariantFactors": invariants,
                "subTable": enc::int_matrix_to_value(&cert.sub_table),
                "subTableDet": cert.sub_table_det.to_string(),
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        Format::Csv => {
            println!("torsion_free,invariants,sub_table_det");
            println!(
                "{},\"{}\",{}",
                cert.is_torsion_free,
                invariants.join(","),
                cert.sub_table_det
            );
        }
    }
    Ok(())
}

fn cmd_lattice_invariants(input: &PathBuf, format: Format) -> Result<(), Failure> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", input.display())))?;
    let value = enc::parse_json(&text).map_err(Failure::from)?;
    let matrix = enc::int_matrix_from_value(&value).map_err(Failure::from)?;
    let gram = GramMatrix::new(matrix).map_err(Failure::from)?;
    let report = lattice::lattice_invariants(&gram);
    let diag: Vec<String> = report.snf_diagonal.iter().map(|x| x.to_string()).collect();
    match format {
        Format::Plain => {
            println!("rank = {}", report.rank);
            println!("det = {}", report.determinant);
            println!("snf = {}", diag.join(","));
            println!("definiteness = {}", report.definiteness);
        }
        Format::Json => {
            let doc = json!({
                "rank": report.rank,
                "det": report.determinant.to_string(),
                "snfDiagonal": diag,
                "definiteness": report.definiteness.to_string(),
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        Format::Csv => {
            println!("rank,det,snf,definiteness");
            println!(
                "{},{},\"{}\",{}",
                report.rank,
                report.determinant,
                diag.join(","),
                report.definiteness
            );
        }
    }
    Ok(())
}

fn cmd_shioda(args: &ShiodaArgs, format: Format) -> Result<(), Failure> {
    let out = lattice::shioda_mitani(args.a, args.b, args.c).map_err(Failure::from)?;
    let m = out.trans_lattice.matrix();
    match format {
        Format::Plain => {
            println!(
                "tau1={} tau2={}; T(-3)=[[{},{}],[{},{}]]",
                out.tau1,
                out.tau2,
                m.at(0, 0),
                m.at(0, 1),
                m.at(1, 0),
                m.at(1, 1)
            );
        }
        Format::Json => {
            let doc = json!({
                "tau1": out.tau1.to_string(),
                "tau2": out.tau2.to_string(),
                "delta": out.delta.to_string(),
                "transLattice": enc::int_matrix_to_value(m),
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        Format::Csv => {
            println!("tau1,tau2,delta,t00,t01,t10,t11");
            println!(
                "{},{},{},{},{},{},{}",
                out.tau1,
                out.tau2,
                out.delta,
                m.at(0, 0),
                m.at(0, 1),
                m.at(1, 0),
                m.at(1, 1)
            );
        }
    }
    Ok(())
}

fn cmd_aut_group(lambda: &str, dump: bool, format: Format) -> Result<(), Failure> {
    let lambda = parse_lambda(lambda)?;
    if !hesse::is_smooth(&lambda) {
        return Err(Failure::from(Error::SingularCurve));
    }
    let form = hesse::hesse_form(&lambda);
    let gens = hesse::hesse_generators(&lambda).map_err(Failure::from)?;
    let group = hesse::group_closure(&gens, &form).map_err(Failure::from)?;
    let matrix_compact = |g: &splitcubic::matrix::FieldMatrix| {
        let rows: Vec<String> = (0..g.rows())
            .map(|i| {
                let cells: Vec<String> = (0..g.cols()).map(|j| g.at(i, j).to_string()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    };
    match format {
        Format::Plain => {
            println!("order = {}", group.order());
            if dump {
                for g in group.elements() {
                    println!("{}", matrix_compact(g));
                }
            }
        }
        Format::Json => {
            let elements: Option<Vec<Value>> = dump.then(|| {
                group
                    .elements()
                    .iter()
                    .map(enc::field_matrix_to_value)
                    .collect()
            });
            let doc = json!({
                "order": group.order(),
                "elements": elements,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        Format::Csv => {
            println!("order");
            println!("{}", group.order());
            if dump {
                for g in group.elements() {
                    println!("\"{}\"", matrix_compact(g));
                }
            }
        }
    }
    Ok(())
}

fn cmd_flex_table(lambda: &str, format: Format) -> Result<(), Failure> {
    let lambda = parse_lambda(lambda)?;
    let rows = hesse::flex_table(&lambda).map_err(Failure::from)?;
    match format {
        Format::Plain => {
            for row in &rows {
                let point: Vec<String> = row.point.iter().map(|c| c.to_string()).collect();
                let tangent: Vec<String> = row.tangent.iter().map(|c| c.to_string()).collect();
                println!(
                    "point [{}] tangent [{}]",
                    point.join(" : "),
                    tangent.join(", ")
                );
            }
        }
        Format::Json => {
            let doc: Vec<Value> = rows.iter().map(enc::flex_to_value).collect();
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        Format::Csv => {
            println!("point,tangent");
            for row in &rows {
                let point: Vec<String> = row.point.iter().map(|c| c.to_string()).collect();
                let tangent: Vec<String> = row.tangent.iter().map(|c| c.to_string()).collect();
                println!("\"{}\",\"{}\"", point.join(":"), tangent.join(","));
            }
        }
    }
    Ok(())
}
