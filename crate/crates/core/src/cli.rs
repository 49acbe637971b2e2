//! Command-line front end. [`run`] is pure apart from file output, so it can
//! be driven from tests.
//!
//! Exit codes: 0 success, 1 verification failed, 2 usage or spec error,
//! 3 budget exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::BufReader;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::Error;
use crate::gfp::{faithfulness_check, GroupSpec};
use crate::patterns::{cross_check, cross_check_membership, PatternSet};
use crate::quotient::{
    abelianization_check, branching_check, full_wreath_check, general_dimension,
    hausdorff_dimension_capped, index_sequence, self_replicating_check, t_sequence,
    verify_branch_generators, Budget, DimensionMode, QuotientTable,
};
use crate::word::{OrderLimits, OrderResult, Word, WordProblem};

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "selfsim", version, about = "Self-similar groups G_{p,f} of p-adic tree automorphisms")]
struct Cli {
    /// The prime p.
    #[arg(long, global = true)]
    p: Option<i64>,
    /// Coefficients a0,...,am of f, constant term first.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    f: Option<Vec<i64>>,
    /// Emit JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Element budget for enumerations.
    #[arg(long, global = true)]
    budget_elems: Option<usize>,
    /// Memory budget in bytes for enumerations.
    #[arg(long, global = true)]
    budget_bytes: Option<usize>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Group summary, faithfulness, torsion, growth and theoretical dimension.
    Info,
    /// Orbits of rho on nonzero vectors.
    Orbits,
    /// Hausdorff dimension of the closure.
    Dimension {
        #[arg(long, default_value = "hybrid")]
        mode: DimensionMode,
        #[arg(long)]
        max_depth: Option<usize>,
    },
    /// Index sequence nu_1, ..., nu_N and t_n.
    Indices {
        #[arg(long)]
        max_depth: usize,
    },
    /// Enumerate G/G_n; `--out -` writes the export to stdout.
    Enumerate {
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        out: Option<String>,
    },
    /// Order of a word.
    Order {
        #[arg(long)]
        word: String,
    },
    /// Whether a word is trivial.
    Identity {
        #[arg(long)]
        word: String,
    },
    /// Image of a vertex, given as base-p digits.
    Act {
        #[arg(long)]
        word: String,
        #[arg(long)]
        on: String,
    },
    /// Portrait of a word.
    Portrait {
        #[arg(long)]
        word: String,
        #[arg(long)]
        depth: usize,
    },
    /// Pattern group of size m+2.
    Patterns {
        #[command(subcommand)]
        action: PatternCommand,
    },
    /// Structural verifications.
    Verify {
        #[command(subcommand)]
        check: VerifyCommand,
    },
    /// Dimension (r - t + eps)/k^s of a finitely constrained group.
    GeneralDim {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        q: u32,
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long)]
        s: u32,
    },
}

#[derive(Subcommand, Debug)]
enum PatternCommand {
    /// Write the pattern file.
    Export {
        #[arg(long)]
        out: Option<String>,
    },
    /// Compare window-valid portraits with G/G_n.
    Check {
        #[arg(long)]
        depth: usize,
        /// Pattern file to use instead of the group's own patterns.
        #[arg(long)]
        file: Option<String>,
    },
    /// Count window-valid portraits of depth n.
    Count {
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        file: Option<String>,
    },
    /// Whether a word's portrait is window-valid.
    Valid {
        #[arg(long)]
        word: String,
        #[arg(long)]
        depth: usize,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    BranchGenerators {
        #[arg(long)]
        depth: usize,
    },
    /// psi(G_{n+1}) contains G_n x ... x G_n modulo G_d.
    Branching {
        #[arg(long)]
        depth: usize,
        /// Comparison depth d (default n+1).
        #[arg(long)]
        d: Option<usize>,
    },
    Selfrep {
        #[arg(long)]
        depth: usize,
    },
    Abelian {
        #[arg(long)]
        depth: usize,
    },
    Wreath {
        #[arg(long)]
        depth: Option<usize>,
    },
}

/// Outcome of a subcommand: text, JSON and whether a verification passed.
struct Report {
    text: String,
    json: Value,
    ok: bool,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, ok: true }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::NotPrime(_) => "NotPrime",
        Error::NotMonic(_) => "NotMonic",
        Error::NotInvertible => "NotInvertible",
        Error::DegreeZero => "DegreeZero",
        Error::SingularRho => "SingularRho",
        Error::ZeroOmega => "ZeroOmega",
        Error::NotTorsion => "NotTorsion",
        Error::NotAFactorization => "NotAFactorization",
        Error::BadVector { .. } => "BadVector",
        Error::BadMatrix => "BadMatrix",
        Error::DepthMismatch(..) => "DepthMismatch",
        Error::BadVertex(_) => "BadVertex",
        Error::BadDigit { .. } => "BadDigit",
        Error::BadPortrait(_) => "BadPortrait",
        Error::WordSyntax(_) => "WordSyntax",
        Error::BudgetExceeded { .. } => "BudgetExceeded",
        Error::DegreeTooSmall(_) => "DegreeTooSmall",
        Error::InsufficientDepth(_) => "InsufficientDepth",
        Error::BadParameters(_) => "BadParameters",
        Error::NotAGroup => "NotAGroup",
        Error::TooShallow { .. } => "TooShallow",
        Error::Format(_) => "Format",
        Error::Io(_) => "Io",
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        _ => 2,
    }
}

/// Parses `argv` (including the program name) and runs one subcommand.
pub fn run<I, T>(argv: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CliOutput {
                    exit_code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                CliOutput {
                    exit_code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let json = cli.json;
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(Error::BadParameters(format!("thread pool: {e}"))),
        },
        None => dispatch(&cli),
    };
    match result {
        Ok(report) => {
            let stdout = if json {
                let mut v = report.json;
                if let Value::Object(map) = &mut v {
                    map.insert("schema".into(), json!(1));
                }
                format!("{v}\n")
            } else {
                report.text
            };
            CliOutput {
                exit_code: if report.ok { 0 } else { 1 },
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => {
            let stderr = if json {
                format!(
                    "{}\n",
                    json!({"schema": 1, "error": error_kind(&e), "message": e.to_string()})
                )
            } else {
                format!("error [{}]: {e}\n", error_kind(&e))
            };
            CliOutput {
                exit_code: exit_code(&e),
                stdout: String::new(),
                stderr,
            }
        }
    }
}

fn spec_of(cli: &Cli) -> Result<GroupSpec, Error> {
    match (cli.p, &cli.f) {
        (Some(p), Some(f)) => GroupSpec::new(p, f),
        _ => Err(Error::BadParameters("--p and --f are required".into())),
    }
}

fn budget_of(cli: &Cli) -> Budget {
    let d = Budget::default();
    Budget {
        max_elements: cli.budget_elems.unwrap_or(d.max_elements),
        max_bytes: cli.budget_bytes.unwrap_or(d.max_bytes),
    }
}

fn write_out(target: &str, contents: &[u8], stdout: &mut String) -> Result<(), Error> {
    if target == "-" {
        stdout.push_str(&String::from_utf8_lossy(contents));
        Ok(())
    } else {
        std::fs::write(target, contents).map_err(Error::from)
    }
}

fn load_patterns(path: &str) -> Result<PatternSet, Error> {
    let file = std::fs::File::open(path)?;
    PatternSet::load(BufReader::new(file))
}

/// A decimal, or `logB(X)`.
fn parse_real(s: &str) -> Result<f64, Error> {
    let bad = || Error::BadParameters(format!("cannot parse number {s}"));
    if let Some(rest) = s.strip_prefix("log") {
        let (base, arg) = rest.split_once('(').ok_or_else(bad)?;
        let arg = arg.strip_suffix(')').ok_or_else(bad)?;
        let base: f64 = base.parse().map_err(|_| bad())?;
        let arg: f64 = arg.parse().map_err(|_| bad())?;
        if base <= 0.0 || base == 1.0 || arg <= 0.0 {
            return Err(bad());
        }
        return Ok(arg.ln() / base.ln());
    }
    s.parse().map_err(|_| bad())
}

fn dispatch(cli: &Cli) -> Result<Report, Error> {
    let budget = budget_of(cli);
    if let Command::GeneralDim { k, q, eps, r, t, s } = &cli.command {
        let g = general_dimension(*k, *q, parse_real(eps)?, parse_real(r)?, parse_real(t)?, *s)?;
        let rounded = (g.dimension * 1e12).round() / 1e12;
        return Ok(Report::ok(
            format!("dimension: {rounded:.12}\n"),
            json!({
                "k": g.k, "q": g.q, "epsilon": g.epsilon, "r": g.r, "t": g.t, "s": g.s,
                "dimension": rounded,
            }),
        ));
    }
    let spec = spec_of(cli)?;
    match &cli.command {
        Command::Info => info(&spec),
        Command::Orbits => {
            let rep = spec.rho_orbits();
            let mut text = String::new();
            for o in &rep.orbits {
                let members: Vec<String> = o.members.iter().map(|v| v.to_string()).collect();
                let mark = if o.meets_kernel { "meets kernel" } else { "avoids kernel" };
                writeln!(text, "({}) length {} {mark}", members.join(" "), o.members.len()).unwrap();
            }
            Ok(Report::ok(text, json!({"orbits": rep.orbits})))
        }
        Command::Dimension { mode, max_depth } => {
            let rep = hausdorff_dimension_capped(&spec, *mode, &budget, *max_depth)?;
            let src = |s: crate::quotient::Source| serde_json::to_value(s).unwrap();
            let mut text = format!(
                "dimension: {} ({:.6})\nr = {} ({}), t = {} ({}), s = {}\nmode: {}\nclosed form: {} ({})\n",
                rep.dimension,
                rep.dimension_f64(),
                rep.r,
                src(rep.r_source).as_str().unwrap(),
                rep.t,
                src(rep.t_source).as_str().unwrap(),
                rep.s,
                serde_json::to_value(rep.mode).unwrap().as_str().unwrap(),
                rep.closed_form,
                if rep.matches_closed_form { "matches" } else { "differs" },
            );
            if let Some(reason) = &rep.fallback_reason {
                writeln!(text, "cited parameters used because {reason}").unwrap();
            }
            let nus: Vec<Value> = rep.nus.iter().map(|(n, nu)| json!({"n": n, "nu": nu})).collect();
            Ok(Report::ok(
                text,
                json!({
                    "p": rep.p, "m": rep.m, "s": rep.s, "r": rep.r, "t": rep.t,
                    "r_source": rep.r_source, "t_source": rep.t_source,
                    "mode": rep.mode, "requested_mode": rep.requested_mode,
                    "fell_back": rep.fell_back, "fallback_reason": rep.fallback_reason,
                    "measured_nus": nus,
                    "dimension": rep.dimension.to_string(),
                    "closed_form": rep.closed_form.to_string(),
                    "matches_closed_form": rep.matches_closed_form,
                }),
            ))
        }
        Command::Indices { max_depth } => {
            let seq = index_sequence(&spec, *max_depth, &budget);
            let ts = t_sequence(&seq.nus, spec.p(), spec.m() + 1).ok();
            let mut text = String::new();
            for (i, nu) in seq.nus.iter().enumerate() {
                writeln!(text, "nu_{} = {nu}", i + 1).unwrap();
            }
            if let Some(ts) = &ts {
                for (i, t) in ts.values.iter().enumerate() {
                    writeln!(text, "t_{} = {t}", ts.start + i).unwrap();
                }
            }
            if let Some(e) = &seq.exhausted {
                writeln!(text, "stopped: {e}").unwrap();
            }
            let json = json!({
                "nus": seq.nus,
                "t": ts.as_ref().map(|t| json!({"start": t.start, "values": t.values, "stable": t.stable})),
                "complete": seq.exhausted.is_none(),
                "stopped": seq.exhausted.as_ref().map(|e| e.to_string()),
            });
            match seq.exhausted {
                Some(e @ Error::BudgetExceeded { .. }) if seq.nus.is_empty() => Err(e),
                Some(Error::BudgetExceeded { .. }) => Ok(Report { text, json, ok: true }),
                Some(e) => Err(e),
                None => Ok(Report::ok(text, json)),
            }
        }
        Command::Enumerate { depth, out } => {
            let table = QuotientTable::enumerate(&spec, *depth, &budget)?;
            let mut text = String::new();
            if let Some(target) = out {
                let mut buf = Vec::new();
                table.export(&mut buf)?;
                write_out(target, &buf, &mut text)?;
            }
            if out.as_deref() != Some("-") {
                writeln!(text, "depth {}: size {}^{} = {}", depth, spec.p(), table.nu(), table.size()).unwrap();
            }
            Ok(Report::ok(
                text,
                json!({"depth": depth, "size": table.size(), "nu": table.nu()}),
            ))
        }
        Command::Order { word } => {
            let w = Word::parse(&spec, word)?;
            let res = WordProblem::new(&spec).element_order(&w, OrderLimits::default());
            let (text, json) = match res {
                OrderResult::Finite(n) => (format!("order: {n}\n"), json!({"word": w.to_string(), "order": n.to_string()})),
                OrderResult::Infinite(cycle) => {
                    let c: Vec<String> = cycle.iter().map(|x| x.to_string()).collect();
                    (
                        format!("order: infinite\ncycle: {}\n", c.join(" -> ")),
                        json!({"word": w.to_string(), "order": "infinite", "cycle": c}),
                    )
                }
                OrderResult::Unknown(why) => (
                    format!("order: unknown ({why})\n"),
                    json!({"word": w.to_string(), "order": "unknown", "reason": why}),
                ),
            };
            Ok(Report::ok(text, json))
        }
        Command::Identity { word } => {
            let w = Word::parse(&spec, word)?;
            let trivial = WordProblem::new(&spec).is_identity(&w);
            Ok(Report::ok(
                format!("{}\n", if trivial { "trivial" } else { "nontrivial" }),
                json!({"word": w.to_string(), "trivial": trivial}),
            ))
        }
        Command::Act { word, on } => {
            let w = Word::parse(&spec, word)?;
            let digits = on
                .chars()
                .filter(|c| *c != ',')
                .map(|c| c.to_digit(36).ok_or_else(|| Error::BadParameters(format!("bad digit {c}"))))
                .collect::<Result<Vec<u32>, Error>>()?;
            let image = w.act(&spec, &digits)?;
            let s: String = image.iter().map(|&d| std::char::from_digit(d, 36).unwrap()).collect();
            Ok(Report::ok(format!("{s}\n"), json!({"word": w.to_string(), "on": on, "image": s})))
        }
        Command::Portrait { word, depth } => {
            let w = Word::parse(&spec, word)?;
            let g = w.portrait(&spec, *depth);
            let json: Value = serde_json::from_str(&g.to_json()).expect("portrait JSON");
            Ok(Report::ok(format!("{g}\n"), json!({"word": w.to_string(), "portrait": json})))
        }
        Command::Patterns { action } => patterns(&spec, action, &budget),
        Command::Verify { check } => verify(&spec, check, &budget),
        Command::GeneralDim { .. } => unreachable!("handled above"),
    }
}

fn info(spec: &GroupSpec) -> Result<Report, Error> {
    let faith = faithfulness_check(spec.companion_matrix(), spec.omega_row())?;
    let torsion = spec.torsion_analysis();
    let orbits = spec.rho_orbits();
    let mut text = format!(
        "p = {}, f = {}, m = {}\nfaithful: {}\norbits: {}\n",
        spec.p(),
        spec.polynomial_string(),
        spec.m(),
        if faith.faithful { "yes" } else { "no" },
        orbits.orbits.len()
    );
    let mut json = json!({
        "p": spec.p(),
        "f": spec.full_coeffs(),
        "polynomial": spec.polynomial_string(),
        "m": spec.m(),
        "faithful": faith.faithful,
        "orbits": orbits.orbits.len(),
        "torsion": torsion.is_p_group,
    });
    if torsion.is_p_group {
        let r = torsion.r.expect("r for torsion groups");
        writeln!(text, "torsion: yes\nr = {r}").unwrap();
        json["r"] = json!(r);
        if let Ok(g) = spec.growth_parameters() {
            writeln!(text, "eta = {:.12}\nalpha = {:.12}", g.eta, g.alpha).unwrap();
            json["eta"] = json!(g.eta);
            json["alpha"] = json!(g.alpha);
        }
    } else {
        let w: Vec<String> = torsion
            .witness_orbit
            .unwrap_or_default()
            .iter()
            .map(|v| v.to_string())
            .collect();
        writeln!(text, "torsion: no\nwitness orbit: {}", w.join(" ")).unwrap();
        json["witness_orbit"] = json!(w);
    }
    if spec.m() >= 2 {
        let d = crate::quotient::closed_form_dimension(spec.p(), spec.m());
        writeln!(text, "dimension (theoretical): {d}").unwrap();
        json["dimension"] = json!(d.to_string());
    }
    Ok(Report::ok(text, json))
}

fn patterns(spec: &GroupSpec, action: &PatternCommand, budget: &Budget) -> Result<Report, Error> {
    let load = |file: &Option<String>| match file {
        Some(path) => load_patterns(path),
        None => PatternSet::pattern_group(spec, budget),
    };
    match action {
        PatternCommand::Export { out } => {
            let ps = PatternSet::pattern_group(spec, budget)?;
            let mut buf = Vec::new();
            ps.export(&mut buf)?;
            let mut text = String::new();
            let target = out.as_deref().unwrap_or("-");
            write_out(target, &buf, &mut text)?;
            if target != "-" {
                writeln!(text, "wrote {} patterns of depth {}", ps.size(), ps.pattern_depth()).unwrap();
            }
            Ok(Report::ok(
                text,
                json!({"pattern_depth": ps.pattern_depth(), "size": ps.size()}),
            ))
        }
        PatternCommand::Count { depth, file } => {
            let ps = load(file)?;
            let count = ps.count_window_valid(*depth)?;
            Ok(Report::ok(
                format!("window-valid portraits of depth {depth}: {count}\n"),
                json!({"depth": depth, "count": count.to_string()}),
            ))
        }
        PatternCommand::Check { depth, file } => {
            let rep = match file {
                Some(path) => {
                    let ps = load_patterns(path)?;
                    let table = QuotientTable::enumerate(spec, *depth, budget)?;
                    cross_check(&ps, &table, budget)?
                }
                None => cross_check_membership(spec, *depth, budget)?,
            };
            let text = format!(
                "depth {}: window-valid {}, quotient {}, valid-not-in-quotient {}, quotient-not-valid {}\n{}\n",
                rep.depth,
                rep.dp_count,
                rep.table_size,
                rep.valid_not_in_table,
                rep.table_not_valid,
                if rep.agree { "agree" } else { "DISAGREE" }
            );
            Ok(Report {
                text,
                ok: rep.agree,
                json: serde_json::to_value(&rep).unwrap(),
            })
        }
        PatternCommand::Valid { word, depth } => {
            let ps = PatternSet::pattern_group(spec, budget)?;
            let w = Word::parse(spec, word)?;
            let valid = ps.window_valid(&w.portrait(spec, *depth))?;
            Ok(Report::ok(
                format!("{}\n", if valid { "valid" } else { "invalid" }),
                json!({"word": w.to_string(), "depth": depth, "valid": valid}),
            ))
        }
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn verify(spec: &GroupSpec, check: &VerifyCommand, budget: &Budget) -> Result<Report, Error> {
    let (text, json, pass) = match check {
        VerifyCommand::BranchGenerators { depth } => {
            let r = verify_branch_generators(spec, *depth)?;
            (
                format!("{} identities checked at depth {}, {} failures", r.checked, r.depth, r.failures.len()),
                serde_json::to_value(&r).unwrap(),
                r.pass,
            )
        }
        VerifyCommand::Branching { depth, d } => {
            let r = branching_check(spec, *depth, d.unwrap_or(depth + 1), budget)?;
            (
                format!(
                    "n = {}, d = {}: {} tuples checked, {} missing",
                    r.n, r.d, r.tuples_checked, r.missing
                ),
                serde_json::to_value(&r).unwrap(),
                r.pass,
            )
        }
        VerifyCommand::Selfrep { depth } => {
            let r = self_replicating_check(spec, *depth, budget)?;
            (
                format!(
                    "n = {}: sections full {:?}, orbit of 0^n has size {}",
                    r.n, r.sections_full, r.orbit_size
                ),
                serde_json::to_value(&r).unwrap(),
                r.pass,
            )
        }
        VerifyCommand::Abelian { depth } => {
            let r = abelianization_check(spec, *depth, budget)?;
            (
                format!(
                    "n = {}: [G:G'] = {} (expected {}), generator orders p: {:?}",
                    r.n, r.commutator.index, r.expected_index, r.generator_order_p
                ),
                serde_json::to_value(&r).unwrap(),
                r.pass,
            )
        }
        VerifyCommand::Wreath { depth } => {
            let r = full_wreath_check(spec, depth.unwrap_or(spec.m() + 1), budget)?;
            (
                format!("n = {}: nu = {} (full wreath {})", r.n, r.nu, r.expected_nu),
                serde_json::to_value(&r).unwrap(),
                r.pass,
            )
        }
    };
    Ok(Report {
        text: format!("{text}\n{}\n", verdict(pass)),
        json: json!({"pass": pass, "report": json}),
        ok: pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &str) -> CliOutput {
        run(std::iter::once("selfsim").chain(args.split_whitespace()))
    }

    fn call_word(cmd: &str, word: &str) -> CliOutput {
        run(["selfsim", "--p", "2", "--f", "1,1,1", cmd, "--word", word])
    }

    #[test]
    fn dimension_json() {
        let out = call("--p 2 --f 1,1,1 dimension --mode empirical --json");
        assert_eq!(out.exit_code, 0, "{}", out.stderr);
        assert!(out.stdout.contains("\"dimension\":\"5/8\""));
        assert!(out.stdout.contains("\"schema\":1"));
    }

    #[test]
    fn info_non_torsion() {
        let out = call("--p 2 --f 1,0,1 info");
        assert_eq!(out.exit_code, 0);
        assert!(out.stdout.contains("torsion: no"));
        assert!(out.stdout.contains("[1,1]"));
    }

    #[test]
    fn general_dim_hanoi() {
        let out = call("general-dim --k 3 --q 6 --eps 1 --r 2 --t log6(2) --s 1");
        assert_eq!(out.exit_code, 0, "{}", out.stderr);
        assert!(out.stdout.starts_with("dimension: 0.87104"), "{}", out.stdout);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call("--p 4 --f 1,1,1 info").exit_code, 2);
        assert_eq!(call("info").exit_code, 2);
        assert_eq!(call("--p 2 --f 1,1,1 bogus").exit_code, 2);
        assert_eq!(call("--p 2 --f 1,1,1 --budget-elems 50 enumerate --depth 4").exit_code, 3);
        assert_eq!(call("--p 2 --f 1,1,1 order --word a(").exit_code, 2);
        assert_eq!(call("--help").exit_code, 0);
    }

    #[test]
    fn words() {
        assert_eq!(call_word("order", "a d0").stdout, "order: 4\n");
        assert_eq!(call_word("identity", "d0 d1 b[1,1]").stdout, "trivial\n");
        assert_eq!(call_word("order", "a b[1,1] a").stdout, "order: 2\n");
        assert_eq!(call("--p 2 --f 1,1,1 act --word a --on 00").stdout, "10\n");
    }

    #[test]
    fn json_is_deterministic() {
        let a = call("--p 2 --f 1,1,1 --json indices --max-depth 4");
        let b = call("--p 2 --f 1,1,1 --json --threads 1 indices --max-depth 4");
        assert_eq!(a, b);
    }
}
