mod format;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qcorr_core::reproduce::{self, WernerRow, WERNER_CSV_HEADER};
use qcorr_core::states::registry;
use qcorr_core::structure::classify_with;
use qcorr_core::{audit, DensityMatrix, Tolerances};
use serde_json::Value;

use crate::format::sig12;

#[derive(Parser)]
#[command(name = "qcorr", version, about = "Entanglement and correlation diagnostics for two-qubit states")]
struct Cli {
    /// Multiply every comparison tolerance by this factor.
    #[arg(long, global = true, default_value_t = 1.0)]
    tolerance: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reproduce the six worked examples and check them against closed forms.
    Table1,
    /// Werner-family diagnostics as CSV.
    WernerSweep {
        #[arg(long, default_value_t = 0.0)]
        min: f64,
        #[arg(long, default_value_t = 1.0)]
        max: f64,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        /// Also write a self-contained gnuplot script here.
        #[arg(long)]
        gnuplot: Option<PathBuf>,
    },
    /// Classify a registry state (werner:<p>, E1..E6, iso:E, iso:S,
    /// pure:<amplitudes>) or a JSON file.
    Classify { state: String },
    /// Run the randomized property audit.
    Audit {
        #[arg(long, default_value_t = 1000)]
        n: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Compare the isospectral entangled/separable pair.
    IsoReport,
}

enum Failure {
    Verification(String),
    Input(String),
}

impl From<qcorr_core::Error> for Failure {
    fn from(e: qcorr_core::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.tolerance <= 0.0 || !cli.tolerance.is_finite() {
        eprintln!("error: --tolerance must be a positive number");
        return ExitCode::from(2);
    }
    let tol = Tolerances::scaled(cli.tolerance);
    let outcome = match cli.command {
        Command::Table1 => table1(&tol),
        Command::WernerSweep { min, max, step, gnuplot } => werner_sweep(min, max, step, gnuplot.as_deref(), &tol),
        Command::Classify { state } => classify(&state, &tol),
        Command::Audit { n, seed, jobs } => run_audit(n, seed, jobs, &tol),
        Command::IsoReport => iso_report(&tol),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn table1(tol: &Tolerances) -> Outcome {
    let rows = reproduce::table1().map_err(|e| Failure::Verification(e.to_string()))?;
    println!("example,concurrence,entropy_diff_a,entropy_diff_b,deficit_over_ln2,mutual_over_ln2");
    let mut mismatches = Vec::new();
    for row in &rows {
        let values: Vec<String> = row.cells.iter().map(|c| sig12(c.computed)).collect();
        println!("{},{}", row.id, values.join(","));
        for c in &row.cells {
            if !c.closed_form_ok(tol) {
                mismatches.push(format!(
                    "{} {}: computed {} closed form {} diff {}",
                    row.id,
                    c.name,
                    sig12(c.computed),
                    sig12(c.closed_form),
                    sig12(c.computed - c.closed_form)
                ));
            }
            if !c.printed_ok(tol) {
                let printed = c.printed.unwrap_or(f64::NAN);
                mismatches.push(format!(
                    "{} {}: computed {} printed {} diff {}",
                    row.id,
                    c.name,
                    sig12(c.computed),
                    printed,
                    sig12(c.computed - printed)
                ));
            }
        }
    }
    if mismatches.is_empty() {
        Ok(())
    } else {
        for m in &mismatches {
            eprintln!("{m}");
        }
        Err(Failure::Verification(format!("{} table cells differ", mismatches.len())))
    }
}

fn csv_line(r: &WernerRow) -> String {
    [r.p, r.concurrence, r.mutual_over_ln2, r.deficit_over_ln2, r.cond_entropy_q1, r.ppt_min_eig]
        .map(sig12)
        .join(",")
}

fn gnuplot_script(rows: &[WernerRow]) -> String {
    let mut s = String::new();
    s.push_str("$werner << EOD\n");
    for r in rows {
        let _ = writeln!(s, "{} {} {} {}", sig12(r.p), sig12(r.concurrence), sig12(r.mutual_over_ln2), sig12(r.deficit_over_ln2));
    }
    s.push_str("EOD\n");
    s.push_str("set xlabel 'p'\nset key top left\nset xrange [0:1]\n");
    s.push_str(
        "plot $werner using 1:2 with lines lw 2 title 'C', \\\n     \
         $werner using 1:3 with lines dt 4 title 'S/ln2', \\\n     \
         $werner using 1:4 with lines dt 2 title 'D/ln2'\n",
    );
    s
}

fn werner_sweep(min: f64, max: f64, step: f64, gnuplot: Option<&Path>, tol: &Tolerances) -> Outcome {
    let rows = reproduce::werner_sweep(min, max, step)?;
    println!("{WERNER_CSV_HEADER}");
    for r in &rows {
        println!("{}", csv_line(r));
    }
    if let Some(path) = gnuplot {
        std::fs::write(path, gnuplot_script(&rows))
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    let slack = tol.bound(1e-9) / std::f64::consts::LN_2;
    match rows.iter().find(|r| r.deficit_over_ln2 > r.mutual_over_ln2 + slack) {
        Some(r) => Err(Failure::Verification(format!("deficit exceeds mutual entropy at p = {}", sig12(r.p)))),
        None => Ok(()),
    }
}

fn load_state(spec: &str, tol: &Tolerances) -> Result<DensityMatrix, Failure> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {spec}: {e}")))?;
        return Ok(DensityMatrix::from_json(&text, tol)?);
    }
    Ok(registry::lookup(spec)?)
}

/// Round every float in a JSON tree to twelve significant digits.
fn round_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            let rounded: f64 = sig12(x).parse().unwrap_or(x);
            serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_numbers).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_numbers(v))).collect()),
        other => other,
    }
}

fn classify(spec: &str, tol: &Tolerances) -> Outcome {
    let rho = load_state(spec, tol)?;
    if !rho.is_two_qubit() {
        return Err(Failure::Input(format!("classify needs a two-qubit state, got dims {:?}", rho.dims())));
    }
    let report = classify_with(&rho, tol)?;
    let value = serde_json::to_value(&report).map_err(|e| Failure::Input(e.to_string()))?;
    let text = serde_json::to_string_pretty(&round_numbers(value)).map_err(|e| Failure::Input(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn run_audit(n: u64, seed: u64, jobs: usize, tol: &Tolerances) -> Outcome {
    if n == 0 {
        return Err(Failure::Input("--n must be at least 1".into()));
    }
    let summary = audit::run_audit(n, seed, jobs, tol);
    println!("{summary}");
    if summary.all_passed() {
        Ok(())
    } else {
        Err(Failure::Verification("audit properties failed".into()))
    }
}

fn iso_report(tol: &Tolerances) -> Outcome {
    let r = reproduce::iso_report()?;
    let list = |v: &[f64]| v.iter().map(|x| sig12(*x)).collect::<Vec<_>>().join(" ");
    println!("quantity,entangled,separable");
    println!("spectrum,{},{}", list(&r.entangled.spectrum), list(&r.separable.spectrum));
    println!("marginal_spectrum_a,{},{}", list(&r.entangled.marginal_spectrum_a), list(&r.separable.marginal_spectrum_a));
    println!("marginal_spectrum_b,{},{}", list(&r.entangled.marginal_spectrum_b), list(&r.separable.marginal_spectrum_b));
    let pairs = [
        ("mutual", r.entangled.mutual, r.separable.mutual),
        ("deficit", r.entangled.deficit, r.separable.deficit),
        ("concurrence", r.entangled.concurrence, r.separable.concurrence),
        ("entropy_diff_a", r.entangled.entropy_diff_a, r.separable.entropy_diff_a),
        ("entropy_diff_b", r.entangled.entropy_diff_b, r.separable.entropy_diff_b),
    ];
    for (name, e, s) in pairs {
        println!("{name},{},{}", sig12(e), sig12(s));
    }
    println!("max_spectrum_diff,{}", sig12(r.max_spectrum_diff));

    let mut problems = Vec::new();
    if r.max_spectrum_diff > tol.bound(1e-12) {
        problems.push("spectra differ");
    }
    if (r.entangled.mutual - r.separable.mutual).abs() > tol.bound(1e-10) {
        problems.push("mutual entropies differ");
    }
    if (r.entangled.deficit - r.separable.deficit).abs() <= tol.bound(1e-10) {
        problems.push("deficits do not discriminate the pair");
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(problems.join(", ")))
    }
}
