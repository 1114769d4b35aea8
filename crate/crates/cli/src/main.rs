//! `linrew`: command-line front end.
//!
//! Exit codes: 0 success, 2 input error, 3 bound exceeded or result not
//! certified. Reports are printed on 0 and 3.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use linrew::algebra::Monomial;
use linrew::completion::{
    as_convergent, certify_termination, check_confluence, complete, CompletionBounds, TerminationHint, TerminationReport,
};
use linrew::homology::{build_complex, koszul_verdict, tor_table, KoszulVerdict};
use linrew::io::{parse, parse_monomial, parse_polynomial, print, Presentation, Report};
use linrew::random::{selfcheck, CheckBounds};
use linrew::resolution::{cell_degrees, enumerate_chains};
use linrew::rewrite::{normal_form, pbw_check, standard_basis, Polygraph2, Strategy, DEFAULT_STEP_BUDGET};
use linrew::Error;

#[derive(Parser, Debug)]
#[command(name = "linrew", version, about = "Rewriting, completion and Koszulity checks for presented algebras")]
struct Cli {
    /// Output format for the report printed on stdout.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads for chain enumeration.
    #[arg(long, env = "LINREW_THREADS", global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Normal form of a term.
    Nf {
        file: PathBuf,
        #[arg(long)]
        term: String,
    },
    /// Termination and confluence report.
    Check { file: PathBuf },
    /// Complete the presentation and write the convergent system.
    Complete {
        file: PathBuf,
        #[arg(long, default_value_t = 12)]
        max_degree: u32,
        #[arg(long, default_value_t = 512)]
        max_rules: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Critical branchings (fold 2) or critical n-fold branchings of the completed system.
    Branchings {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        fold: usize,
        /// Degree bound for n ≥ 3; defaults to n + 2.
        #[arg(long)]
        dmax: Option<u32>,
    },
    /// Overlap chains per dimension and degree.
    Chains {
        file: PathBuf,
        #[arg(long)]
        kmax: usize,
        #[arg(long)]
        dmax: u32,
    },
    /// Tor table of the trivial module.
    Tor {
        file: PathBuf,
        #[arg(long)]
        kmax: usize,
        #[arg(long)]
        dmax: u32,
        /// Also write the JSON report to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Koszulity verdict.
    Koszul {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        kmax: usize,
        #[arg(long, default_value_t = 6)]
        dmax: u32,
    },
    /// Dimensions of the presented algebra per degree.
    Hilbert {
        file: PathBuf,
        #[arg(long)]
        dmax: u32,
    },
    /// Check the PBW conditions for a candidate monomial basis.
    Pbw {
        file: PathBuf,
        #[arg(long)]
        basis_file: PathBuf,
        #[arg(long)]
        dmax: u32,
    },
    /// Randomized consistency checks on small terminating systems.
    Selfcheck {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
}

/// Command result: exit code, human text and JSON report.
struct Outcome {
    code: u8,
    text: String,
    report: serde_json::Value,
}

enum Failure {
    Input(String),
    Uncertified(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::BoundExceeded(_) | Error::NotCertified(_) | Error::NonterminationSuspected { .. } => Failure::Uncertified(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn load(path: &Path) -> Res<Presentation> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| Failure::Input(format!("{}:{e}", path.display())))
}

fn with_termination(mut p: Polygraph2) -> (Polygraph2, TerminationReport) {
    let rep = if let Some(c) = &p.termination {
        TerminationReport::Certified(c.clone())
    } else {
        certify_termination(&p, TerminationHint::Auto)
    };
    if let TerminationReport::Certified(c) = &rep {
        p.termination = Some(c.clone());
    }
    (p, rep)
}

/// The convergent system used by the homological commands: the input when
/// it is already convergent and reduced, its completion otherwise.
fn convergent(p: &Polygraph2, notes: &mut Vec<String>) -> Res<Polygraph2> {
    if let Some(s) = as_convergent(p)? {
        return Ok(s);
    }
    let ord = p.order.clone().ok_or_else(|| Failure::Input("the system is not convergent and declares no order to complete with".into()))?;
    let res = complete(p, &ord, CompletionBounds::default())?;
    if !res.certified {
        return Err(Failure::Uncertified(res.note.unwrap_or_else(|| "completion did not converge".into())));
    }
    if !res.added.is_empty() {
        let shown: Vec<String> = res.added.iter().map(|n| res.system.show_rule(res.system.rule_by_name(n).unwrap())).collect();
        notes.push(format!("completed by adding {}", shown.join("; ")));
    }
    Ok(res.system)
}

fn cmd_nf(file: &Path, term: &str) -> Res<Outcome> {
    let pres = load(file)?;
    let (p, _) = with_termination(pres.system);
    let f = parse_polynomial(&p, term).map_err(|e| Failure::Input(format!("--term: {e}")))?;
    let (nf, trace) = normal_form(&f, &p, Strategy::Rightmost, DEFAULT_STEP_BUDGET)?;
    let text = format!("{}\n", p.show_poly(&nf));
    let report = Report::new("nf", &p).with("term", p.show_poly(&f)).with("normal_form", p.show_poly(&nf)).with("steps", trace.steps.len());
    Ok(Outcome { code: 0, text, report: serde_json::to_value(report).unwrap() })
}

fn cmd_check(file: &Path) -> Res<Outcome> {
    let pres = load(file)?;
    let (p, term) = with_termination(pres.system);
    let mut text = format!("termination: {term}\n");
    if let TerminationReport::Certified(c) = &term {
        for n in &c.notes {
            let _ = writeln!(text, "  {n}");
        }
    }
    let mut report = Report::new("check", &p).with("termination", &term);
    if p.termination.is_none() {
        text.push_str("confluence: not checked without a termination certificate\n");
        return Ok(Outcome { code: 3, text, report: serde_json::to_value(report).unwrap() });
    }
    let conf = check_confluence(&p)?;
    let _ = writeln!(text, "critical branchings: {}", conf.critical.len());
    for c in &conf.critical {
        let _ = writeln!(
            text,
            "  {} ({} / {}): S = {}, normal form {}{}",
            c.word,
            c.first,
            c.second,
            c.s_polynomial,
            c.s_normal_form,
            if c.joinable { ", joinable" } else { ", NOT joinable" }
        );
    }
    let _ = writeln!(text, "convergent: {}", if conf.convergent { "yes" } else { "no" });
    if let Some(w) = conf.witness() {
        let _ = writeln!(text, "witness: {}\n  {}\n  {}", w.word, w.first_trace, w.second_trace);
    }
    let code = if conf.convergent { 0 } else { 3 };
    report = report.with("confluence", &conf);
    Ok(Outcome { code, text, report: serde_json::to_value(report).unwrap() })
}

fn cmd_complete(file: &Path, max_degree: u32, max_rules: usize, out: &Path) -> Res<Outcome> {
    let pres = load(file)?;
    let p = pres.system;
    let ord = p.order.clone().ok_or_else(|| Failure::Input("completion needs an order declaration".into()))?;
    let res = complete(&p, &ord, CompletionBounds { max_degree, max_rules })?;
    let mut text = String::new();
    for n in &res.added {
        let _ = writeln!(text, "added {}", res.system.show_rule(res.system.rule_by_name(n).unwrap()));
    }
    let _ = writeln!(text, "rules: {}", res.system.rules().len());
    let report = Report::new("complete", &res.system).with("added", &res.added).with("certified", res.certified).with("note", &res.note);
    if !res.certified {
        let _ = writeln!(text, "not certified: {}", res.note.as_deref().unwrap_or("completion did not converge"));
        return Ok(Outcome { code: 3, text, report: serde_json::to_value(report).unwrap() });
    }
    std::fs::write(out, print(&res.system)).map_err(|e| Failure::Input(format!("{}: {e}", out.display())))?;
    let _ = writeln!(text, "wrote {}", out.display());
    Ok(Outcome { code: 0, text, report: serde_json::to_value(report).unwrap() })
}

fn cmd_branchings(file: &Path, fold: usize, dmax: Option<u32>) -> Res<Outcome> {
    if fold < 2 {
        return Err(Failure::Input("--fold must be at least 2".into()));
    }
    let pres = load(file)?;
    let mut notes = Vec::new();
    let p = convergent(&pres.system, &mut notes)?;
    let mut text = String::new();
    for n in &notes {
        let _ = writeln!(text, "{n}");
    }
    let report = Report::new("branchings", &p).with("fold", fold).with("notes", &notes);
    if fold == 2 {
        let conf = check_confluence(&p)?;
        let _ = writeln!(text, "critical branchings: {}", conf.critical.len());
        for c in &conf.critical {
            let _ = writeln!(text, "  {} ({} / {}) {}", c.word, c.first, c.second, if c.joinable { "confluent" } else { "not confluent" });
        }
        let report = report.with("critical", &conf.critical);
        return Ok(Outcome { code: 0, text, report: serde_json::to_value(report).unwrap() });
    }
    let dmax = dmax.unwrap_or(fold as u32 + 2);
    let cells: Vec<_> = enumerate_chains(&p, fold + 1, dmax)?.into_iter().filter(|c| c.dim == fold + 1).collect();
    let _ = writeln!(text, "critical {fold}-fold branchings up to degree {dmax}: {}", cells.len());
    let mut list = Vec::new();
    for c in &cells {
        let _ = writeln!(text, "  {}", c.label(&p));
        list.push(json!({"word": p.show_mono(&c.word), "label": c.label(&p), "degree": c.degree}));
    }
    let report = report.with("dmax", dmax).with("chains", list);
    Ok(Outcome { code: 0, text, report: serde_json::to_value(report).unwrap() })
}

fn cmd_chains(file: &Path, kmax: usize, dmax: u32) -> Res<Outcome> {
    let pres = load(file)?;
    let mut notes = Vec::new();
    let n = pres.system.homogeneous_degree();
    let p = convergent(&pres.system, &mut notes)?;
    let cells = enumerate_chains(&p, kmax, dmax)?;
    let deg = cell_degrees(&cells, n);
    let mut text = String::new();
    for note in &notes {
        let _ = writeln!(text, "{note}");
    }
    text.push_str("k\\d");
    for d in 0..=dmax {
        let _ = write!(text, "\t{d}");
    }
    text.push('\n');
    for k in 0..=kmax {
        let _ = write!(text, "{k}");
        for d in 0..=dmax {
            let _ = write!(text, "\t{}", deg.count(k, d));
        }
        text.push('\n');
    }
    for k in 2..=kmax {
        let words: Vec<String> = cells.iter().filter(|c| c.dim == k).map(|c| p.show_mono(&c.word)).collect();
        let conc = match deg.concentrated.get(&k) {
            Some(Some(true)) => " (concentrated)",
            Some(Some(false)) => " (not concentrated)",
            _ => "",
        };
        let _ = writeln!(text, "dim {k}{conc}: {}", words.join(", "));
    }
    let report = Report::new("chains", &p).with("kmax", kmax).with("dmax", dmax).with("cells", &deg).with("notes", &notes);
    Ok(Outcome { code: 0, text, report: serde_json::to_value(report).unwrap() })
}

fn cmd_tor(file: &Path, kmax: usize, dmax: u32, json_path: Option<&Path>) -> Res<Outcome> {
    let pres = load(file)?;
    let mut notes = Vec::new();
    let n = pres.system.homogeneous_degree();
    let p = convergent(&pres.system, &mut notes)?;
    let mut cx = build_complex(&p, kmax, dmax)?;
    cx.n = n.or(cx.n);
    let t = tor_table(&cx, kmax)?;
    let mut text = String::new();
    for note in &notes {
        let _ = writeln!(text, "{note}");
    }
    text.push_str(&t.render());
    if !t.violations.is_empty() {
        let _ = writeln!(text, "hard-zero violations: {:?}", t.violations);
    }
    let report = Report::new("tor", &p).with("tor", &t).with("notes", &notes);
    let value = serde_json::to_value(report).unwrap();
    if let Some(path) = json_path {
        std::fs::write(path, serde_json::to_string_pretty(&value).unwrap()).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(Outcome { code: 0, text, report: value })
}

fn cmd_koszul(file: &Path, kmax: usize, dmax: u32) -> Res<Outcome> {
    let pres = load(file)?;
    let r = koszul_verdict(&pres.system, kmax, dmax)?;
    let shown = r.system.clone().unwrap_or_else(|| pres.system.clone());
    let mut text = format!("verdict: {}\n", r.verdict);
    for n in &r.notes {
        let _ = writeln!(text, "note: {n}");
    }
    if !r.collapses.is_empty() {
        text.push_str("collapses:\n");
        for (g, a) in &r.collapses {
            let _ = writeln!(text, "  {g} with {a}");
        }
    }
    for (k, labels) in &r.surviving {
        let _ = writeln!(text, "surviving {k}-cells: {}", labels.join(", "));
    }
    if let Some(t) = &r.tor {
        text.push_str(&t.render());
    }
    let code = match r.verdict {
        KoszulVerdict::KoszulUpToBound { .. } => 3,
        _ => 0,
    };
    let report = Report::new("koszul", &shown).with("verdict", &r);
    Ok(Outcome { code, text, report: serde_json::to_value(report).unwrap() })
}

fn cmd_hilbert(file: &Path, dmax: u32) -> Res<Outcome> {
    let pres = load(file)?;
    let mut notes = Vec::new();
    let p = convergent(&pres.system, &mut notes)?;
    let counts = standard_basis(&p, dmax)?.counts();
    let mut text = String::new();
    for n in &notes {
        let _ = writeln!(text, "{n}");
    }
    for (d, c) in counts.iter().enumerate() {
        let _ = writeln!(text, "{d}\t{c}");
    }
    let report = Report::new("hilbert", &p).with("dmax", dmax).with("dimensions", &counts).with("notes", &notes);
    Ok(Outcome { code: 0, text, report: serde_json::to_value(report).unwrap() })
}

fn read_basis(p: &Polygraph2, path: &Path) -> Res<Vec<Monomial>> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let mut out: Vec<Monomial> = (0..p.quiver.objects.len() as u32).map(Monomial::identity).collect();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() || line == "1" {
            continue;
        }
        let m = parse_monomial(&p.quiver, line).map_err(|e| Failure::Input(format!("{}:{}: {e}", path.display(), i + 1)))?;
        if !out.contains(&m) {
            out.push(m);
        }
    }
    Ok(out)
}

fn cmd_pbw(file: &Path, basis: &Path, dmax: u32) -> Res<Outcome> {
    let pres = load(file)?;
    let p = pres.system;
    let cand = read_basis(&p, basis)?;
    let rep = pbw_check(&p, &cand, dmax)?;
    let mark = |b: bool| if b { "holds" } else { "fails" };
    let mut text = format!("PBW basis: {}\n", if rep.pass() { "yes" } else { "no" });
    let _ = writeln!(text, "  linear basis: {}{}", mark(rep.linear_basis), rep.basis_failure.as_ref().map(|s| format!(" ({s})")).unwrap_or_default());
    let _ = writeln!(text, "  closure: {}{}", mark(rep.closure), rep.closure_failure.as_ref().map(|s| format!(" ({s})")).unwrap_or_default());
    let _ = writeln!(text, "  windows: {}{}", mark(rep.windows), rep.window_failure.as_ref().map(|s| format!(" ({s})")).unwrap_or_default());
    if let Some(c) = rep.xi_convergent {
        let _ = writeln!(text, "  rewriting system of the basis convergent: {}", if c { "yes" } else { "no" });
    }
    for r in &rep.xi_rules {
        let _ = writeln!(text, "  xi: {r}");
    }
    for n in &rep.notes {
        let _ = writeln!(text, "  note: {n}");
    }
    let code = if rep.pass() { 0 } else { 3 };
    let report = Report::new("pbw", &p).with("pbw", &rep);
    Ok(Outcome { code, text, report: serde_json::to_value(report).unwrap() })
}

fn cmd_selfcheck(seed: u64, cases: usize) -> Res<Outcome> {
    let results = selfcheck(seed, cases, CheckBounds::default())?;
    let completed = results.iter().filter(|r| r.1.completed()).count();
    let failed: Vec<_> = results.iter().filter(|r| !r.1.passed()).collect();
    let mut text = format!("seed {seed}: {cases} systems, {completed} completed within bounds, {} failures\n", failed.len());
    for (_, rep) in &failed {
        let _ = writeln!(text, "  {}: {}", rep.system.join("; "), rep.failures.join("; "));
    }
    let report = json!({
        "schema": linrew::io::SCHEMA,
        "version": linrew::io::SCHEMA_VERSION,
        "command": "selfcheck",
        "seed": seed,
        "cases": cases,
        "completed": completed,
        "failures": failed.iter().map(|(r, rep)| json!({"recipe": r, "report": rep})).collect::<Vec<_>>(),
    });
    Ok(Outcome { code: if failed.is_empty() { 0 } else { 3 }, text, report })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        // A second initialization can only fail when a pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let res = match &cli.cmd {
        Cmd::Nf { file, term } => cmd_nf(file, term),
        Cmd::Check { file } => cmd_check(file),
        Cmd::Complete { file, max_degree, max_rules, output } => cmd_complete(file, *max_degree, *max_rules, output),
        Cmd::Branchings { file, fold, dmax } => cmd_branchings(file, *fold, *dmax),
        Cmd::Chains { file, kmax, dmax } => cmd_chains(file, *kmax, *dmax),
        Cmd::Tor { file, kmax, dmax, json } => cmd_tor(file, *kmax, *dmax, json.as_deref()),
        Cmd::Koszul { file, kmax, dmax } => cmd_koszul(file, *kmax, *dmax),
        Cmd::Hilbert { file, dmax } => cmd_hilbert(file, *dmax),
        Cmd::Pbw { file, basis_file, dmax } => cmd_pbw(file, basis_file, *dmax),
        Cmd::Selfcheck { seed, cases } => cmd_selfcheck(*seed, *cases),
    };
    match res {
        Ok(o) => {
            match cli.format {
                Format::Text => print!("{}", o.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&o.report).unwrap()),
            }
            ExitCode::from(o.code)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Uncertified(msg)) => {
            match cli.format {
                Format::Text => println!("not certified: {msg}"),
                Format::Json => println!("{}", json!({"schema": linrew::io::SCHEMA, "version": linrew::io::SCHEMA_VERSION, "status": "not-certified", "reason": msg})),
            }
            ExitCode::from(3)
        }
    }
}
