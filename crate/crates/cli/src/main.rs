mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use rrp_core::classnumber::DEFAULT_HPLUS_TABLE;
use rrp_core::frey::{conductor_support_outside_s, coprimality_check, invariants};
use rrp_core::{
    check_corollary_q, check_corollary_quad, check_theorem_main2, frey_curve, scan_q, Error, HPlusTable,
    RealCyclotomicField, Status, Verdict,
};
use serde_json::{json, Value};

use report::{Report, TableDigest};

const EXIT_PASS: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_UNDETERMINED: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_NOINPUT: u8 = 66;
const EXIT_INTERNAL: u8 = 70;

#[derive(Parser)]
#[command(name = "rrp", version, about = "Checks hypotheses of asymptotic Fermat criteria for x^r + y^r = z^p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rational-base criterion for one prime r
    #[command(visible_alias = "check_q")]
    CheckQ {
        #[arg(long)]
        r: u64,
        #[command(flatten)]
        out: Output,
    },
    /// All primes 5 <= r <= max-r passing the rational-base criterion
    #[command(visible_alias = "scan_q")]
    ScanQ {
        #[arg(long = "max-r")]
        max_r: u64,
        /// compare with a whitespace-separated prime list
        #[arg(long)]
        expect: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Quadratic-base criterion for Q(sqrt(d)) and r
    #[command(visible_alias = "check_quad")]
    CheckQuad {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        r: u64,
        #[arg(long = "hplus-table")]
        hplus_table: Option<PathBuf>,
        /// evaluate the four general conditions instead of the corollary
        #[arg(long)]
        theorem: bool,
        #[command(flatten)]
        out: Output,
    },
    /// The four general conditions; d = 0 selects the rational base
    #[command(visible_alias = "check_theorem")]
    CheckTheorem {
        #[arg(long, default_value_t = 0)]
        d: u64,
        #[arg(long)]
        r: u64,
        #[arg(long = "hplus-table")]
        hplus_table: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Frey curve data for a coprime pair (x, y)
    Frey {
        #[arg(long)]
        r: u64,
        #[arg(long, allow_hyphen_values = true)]
        x: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        y: BigInt,
        /// index triple K1,K2,K3
        #[arg(long, value_delimiter = ',', default_values_t = [0usize, 1, 2])]
        k: Vec<usize>,
        /// trial-division bound for the conductor support
        #[arg(long, default_value_t = 100_000)]
        bound: u64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(clap::Args, Clone, Copy)]
struct Output {
    /// machine-readable report
    #[arg(long)]
    json: bool,
    /// include wall-clock timing in the report
    #[arg(long)]
    timing: bool,
}

enum Failure {
    Core(Error),
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn core_exit(e: &Error) -> u8 {
    match e {
        Error::InexactDivision { .. } | Error::ResidueDisagreement { .. } | Error::Internal(_) => EXIT_INTERNAL,
        Error::DegenerateCurve | Error::UnfactoredCofactor { .. } => EXIT_FAIL,
        Error::TableParse { .. } | Error::DuplicateTableEntry { .. } => EXIT_NOINPUT,
        _ => EXIT_USAGE,
    }
}

fn status_exit(s: Status) -> u8 {
    match s {
        Status::Pass => EXIT_PASS,
        Status::Fail => EXIT_FAIL,
        Status::Undetermined => EXIT_UNDETERMINED,
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Undetermined => "UNDETERMINED",
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

fn load_table(path: Option<&Path>) -> Result<(HPlusTable, TableDigest), Failure> {
    match path {
        None => Ok((HPlusTable::shipped(), TableDigest::new("hplus", "shipped", DEFAULT_HPLUS_TABLE))),
        Some(p) => {
            let text = read_file(p)?;
            let table = HPlusTable::parse(&text)?;
            Ok((table, TableDigest::new("hplus", &p.display().to_string(), &text)))
        }
    }
}

fn parse_prime_list(text: &str) -> Result<Vec<u64>, Failure> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace)
        .map(|t| t.parse::<u64>().map_err(|_| Failure::Io(format!("not an integer in prime list: {t}"))))
        .collect()
}

fn render_verdict(title: &str, v: &Verdict) -> String {
    let mut s = format!("{title}: {}\n", status_word(v.overall));
    for c in &v.conditions {
        s.push_str(&format!("  [{:<12}] {:<26} {}\n", status_word(c.status), c.name, c.evidence));
    }
    if !v.diagnostics.is_null() {
        s.push_str(&format!("  diagnostics: {}\n", v.diagnostics));
    }
    for c in v.conditions.iter().filter(|c| c.status == Status::Undetermined) {
        if let Some(key) = c.evidence.get("missing_entry") {
            s.push_str(&format!("  missing h+ table entry: d = {} r = {}\n", key["d"], key["r"]));
        }
    }
    s
}

struct Outcome {
    report: Report,
    human: String,
    code: u8,
}

fn verdict_outcome(command: &str, input: Value, title: &str, v: Verdict, tables: Vec<TableDigest>) -> Outcome {
    let human = render_verdict(title, &v);
    let code = status_exit(v.overall);
    let result = serde_json::to_value(&v).expect("verdict serializes");
    Outcome { report: Report::new(command, input, result, tables), human, code }
}

fn run(command: Command) -> Result<(Outcome, Output), Failure> {
    Ok(match command {
        Command::CheckQ { r, out } => {
            let v = check_corollary_q(r)?;
            (verdict_outcome("check-q", json!({"r": r}), &format!("rational-base criterion, r = {r}"), v, vec![]), out)
        }
        Command::ScanQ { max_r, expect, out } => {
            let list = scan_q(max_r)?;
            let mut human = list.iter().map(u64::to_string).collect::<Vec<_>>().join(" ") + "\n";
            let mut tables = vec![];
            let mut result = json!({"primes": list});
            let mut code = EXIT_PASS;
            if let Some(path) = &expect {
                let text = read_file(path)?;
                let want = parse_prime_list(&text)?;
                let matches = want == list;
                tables.push(TableDigest::new("expect", &path.display().to_string(), &text));
                result["expected"] = json!(want);
                result["matches_expected"] = json!(matches);
                if matches {
                    human.push_str(&format!("matches {}\n", path.display()));
                } else {
                    let missing: Vec<_> = want.iter().filter(|r| !list.contains(r)).collect();
                    let extra: Vec<_> = list.iter().filter(|r| !want.contains(r)).collect();
                    human.push_str(&format!("differs from {}: missing {missing:?}, unexpected {extra:?}\n", path.display()));
                    code = EXIT_FAIL;
                }
            }
            let input = json!({"max_r": max_r, "expect": expect.map(|p| p.display().to_string())});
            (Outcome { report: Report::new("scan-q", input, result, tables), human, code }, out)
        }
        Command::CheckQuad { d, r, hplus_table, theorem, out } => {
            let (table, digest) = load_table(hplus_table.as_deref())?;
            let input = json!({"d": d, "r": r, "theorem": theorem});
            let (v, title) = if theorem {
                (check_theorem_main2(d, r, &table)?, format!("four conditions, d = {d}, r = {r}"))
            } else {
                (check_corollary_quad(d, r, &table)?, format!("quadratic-base criterion, d = {d}, r = {r}"))
            };
            (verdict_outcome("check-quad", input, &title, v, vec![digest]), out)
        }
        Command::CheckTheorem { d, r, hplus_table, out } => {
            let (table, digest) = load_table(hplus_table.as_deref())?;
            let v = check_theorem_main2(d, r, &table)?;
            let title = format!("four conditions, d = {d}, r = {r}");
            (verdict_outcome("check-theorem", json!({"d": d, "r": r}), &title, v, vec![digest]), out)
        }
        Command::Frey { r, x, y, k, bound, out } => (frey(r, x, y, &k, bound)?, out),
    })
}

fn frey(r: u64, x: BigInt, y: BigInt, k: &[usize], bound: u64) -> Result<Outcome, Failure> {
    if k.len() != 3 {
        return Err(Failure::Usage("--k takes exactly three indices".into()));
    }
    let field = RealCyclotomicField::new(r)?;
    let coprime = coprimality_check(&field, &x, &y)?;
    let curve = frey_curve(&field, &field.int(x.clone()), &field.int(y.clone()), k[0], k[1], k[2])?;
    let inv = invariants(&field, &curve)?;
    let support = conductor_support_outside_s(&field, &curve, bound)?;
    let sum = &(&curve.a + &curve.b) + &curve.c;
    let result = json!({
        "A": curve.a.to_string(),
        "B": curve.b.to_string(),
        "C": curve.c.to_string(),
        "A+B+C": sum.to_string(),
        "delta": inv.delta.to_string(),
        "c4": inv.c4.to_string(),
        "j_num": inv.j_num.to_string(),
        "j_den": inv.j_den.to_string(),
        "coprime_outside_r": coprime.coprime_outside_r(),
        "form_norms": coprime.norms.iter().map(|n| n.to_string()).collect::<Vec<_>>(),
        "conductor_support_outside_2_r": support,
    });
    let mut human = format!("Frey curve over Q(zeta_{r} + zeta_{r}^-1), (x, y) = ({x}, {y}), k = {k:?}\n");
    for key in ["A", "B", "C", "A+B+C", "delta", "c4"] {
        human.push_str(&format!("  {key:<6} = {}\n", result[key].as_str().unwrap_or_default()));
    }
    human.push_str(&format!("  j      = ({}) / ({})\n", inv.j_num, inv.j_den));
    human.push_str(&format!("  quadratic factors coprime outside r: {}\n", coprime.coprime_outside_r()));
    human.push_str(&format!("  conductor support outside {{2, {r}}}: {support:?}\n"));
    let input = json!({"r": r, "x": x.to_string(), "y": y.to_string(), "k": k, "bound": bound});
    Ok(Outcome { report: Report::new("frey", input, result, vec![]), human, code: EXIT_PASS })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS });
        }
    };
    let start = Instant::now();
    match run(cli.command) {
        Ok((mut outcome, out)) => {
            if out.timing {
                outcome.report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
            if out.json {
                println!("{}", outcome.report.to_json());
            } else {
                print!("{}", outcome.human);
                if let Some(ms) = outcome.report.timing_ms {
                    println!("elapsed: {ms:.2} ms");
                }
            }
            ExitCode::from(outcome.code)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(core_exit(&e))
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_NOINPUT)
        }
    }
}
