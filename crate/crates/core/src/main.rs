//! Benchmark and verification command-line tool.

use bspline_bbf::bench::{
    self, count_ops_report, run_benchmark, BenchError, BenchMode, ExperimentConfig,
};
use bspline_bbf::eval::multi_curve_points_with_table;
use bspline_bbf::io;
use std::fs;
use std::process::ExitCode;

const USAGE: &str = "\
bspline-bbf: B-spline basis functions in Bernstein-Bezier form

USAGE:
  bspline-bbf bench --mode {curve|surface|basis} --seed S --n N --m M
              --curves M --dim D [--samples K] [--repeats R]
              [--f32] [--count-ops] [--out report.csv]
  bspline-bbf table --input curve.json [--out coeffs.csv]
  bspline-bbf eval  --input curve.json --params params.txt [--out points.csv]
  bspline-bbf help

Exit codes: 0 success, 1 verification failure, 2 usage error.
";

enum CliError {
    Usage(String),
    Verification(String),
    Tool(String),
}

impl From<BenchError> for CliError {
    fn from(e: BenchError) -> Self {
        match e {
            BenchError::Verification(msg) => CliError::Verification(msg),
            BenchError::Config(msg) => CliError::Usage(msg),
            other => CliError::Tool(other.to_string()),
        }
    }
}

impl From<io::IoError> for CliError {
    fn from(e: io::IoError) -> Self {
        CliError::Tool(e.to_string())
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Verification(msg)) => {
            eprintln!("verification failure: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}\n");
            eprint!("{USAGE}");
            ExitCode::from(2)
        }
        Err(CliError::Tool(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Key/value flag parser over `--flag value` and bare `--flag` switches.
struct Flags {
    values: Vec<(String, Option<String>)>,
}

impl Flags {
    fn parse(args: &[String], switches: &[&str]) -> Result<Flags, CliError> {
        let mut values = Vec::new();
        let mut iter = args.iter().peekable();
        while let Some(arg) = iter.next() {
            let Some(name) = arg.strip_prefix("--") else {
                return Err(CliError::Usage(format!("unexpected argument {arg:?}")));
            };
            if switches.contains(&name) {
                values.push((name.to_string(), None));
            } else {
                let value = iter
                    .next()
                    .ok_or_else(|| CliError::Usage(format!("--{name} needs a value")))?;
                values.push((name.to_string(), Some(value.clone())));
            }
        }
        Ok(Flags { values })
    }

    fn take(&mut self, name: &str) -> Option<String> {
        let at = self.values.iter().position(|(k, _)| k == name)?;
        self.values.remove(at).1
    }

    fn has(&mut self, name: &str) -> bool {
        if let Some(at) = self.values.iter().position(|(k, _)| k == name) {
            self.values.remove(at);
            true
        } else {
            false
        }
    }

    fn finish(self) -> Result<(), CliError> {
        if let Some((name, _)) = self.values.first() {
            return Err(CliError::Usage(format!("unknown flag --{name}")));
        }
        Ok(())
    }
}

fn parse_number<T: std::str::FromStr>(flag: &str, value: Option<String>) -> Result<Option<T>, CliError> {
    match value {
        None => Ok(None),
        Some(v) => v
            .parse::<T>()
            .map(Some)
            .map_err(|_| CliError::Usage(format!("--{flag} got a malformed value {v:?}"))),
    }
}

fn read_file(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Tool(format!("cannot read {path}: {e}")))
}

fn write_output(path: Option<String>, contents: &str) -> Result<(), CliError> {
    match path {
        Some(path) => fs::write(&path, contents)
            .map_err(|e| CliError::Tool(format!("cannot write {path}: {e}"))),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn run(args: &[String]) -> Result<(), CliError> {
    match args.first().map(String::as_str) {
        Some("bench") => cmd_bench(&args[1..]),
        Some("table") => cmd_table(&args[1..]),
        Some("eval") => cmd_eval(&args[1..]),
        Some("help") | Some("--help") | Some("-h") => {
            print!("{USAGE}");
            Ok(())
        }
        Some(other) => Err(CliError::Usage(format!("unknown command {other:?}"))),
        None => Err(CliError::Usage("missing command".into())),
    }
}

fn cmd_bench(args: &[String]) -> Result<(), CliError> {
    let mut flags = Flags::parse(args, &["f32", "count-ops"])?;
    let mut cfg = ExperimentConfig::default();
    if let Some(mode) = flags.take("mode") {
        cfg.mode = BenchMode::parse(&mode)
            .ok_or_else(|| CliError::Usage(format!("unknown mode {mode:?}")))?;
    }
    if let Some(seed) = parse_number::<u64>("seed", flags.take("seed"))? {
        cfg.seed = seed;
    }
    if let Some(n) = parse_number::<usize>("n", flags.take("n"))? {
        cfg.n = n;
    }
    if let Some(m) = parse_number::<usize>("m", flags.take("m"))? {
        cfg.m = m;
    }
    if let Some(curves) = parse_number::<usize>("curves", flags.take("curves"))? {
        cfg.curves = curves;
    }
    if let Some(dim) = parse_number::<usize>("dim", flags.take("dim"))? {
        cfg.dim = dim;
    }
    if let Some(samples) = parse_number::<usize>("samples", flags.take("samples"))? {
        cfg.samples_per_span = samples;
    }
    if let Some(repeats) = parse_number::<usize>("repeats", flags.take("repeats"))? {
        cfg.repeats = repeats;
    }
    cfg.f32_mode = flags.has("f32");
    cfg.count_ops = flags.has("count-ops");
    let out = flags.take("out");
    flags.finish()?;
    cfg.validate()?;

    let report = run_benchmark(&cfg)?;
    for method in &report.methods {
        let mut line = format!(
            "{:<14} {:>12.6} s",
            method.method, method.seconds
        );
        if let Some(d) = method.mean_common_digits {
            line.push_str(&format!("  mean common digits {d:.2}"));
        }
        if let Some(ops) = method.ops {
            line.push_str(&format!(
                "  ops(+ {} - {} * {} / {} pow {})",
                ops.adds, ops.subs, ops.muls, ops.divs, ops.pows
            ));
        }
        println!("{line}");
    }
    if let Some(new) = report.seconds_of(bench::METHOD_NEW) {
        let reference = &report.methods[0];
        if reference.method != bench::METHOD_NEW {
            println!(
                "speedup vs {}: {:.2}x",
                reference.method,
                reference.seconds / new
            );
        }
    }

    if cfg.count_ops && cfg.mode == BenchMode::Curve {
        let ops = count_ops_report(&cfg)?;
        println!("op,measured,budget");
        let names = ["adds", "subs", "muls", "divs", "pows"];
        let measured = [
            ops.measured.adds,
            ops.measured.subs,
            ops.measured.muls,
            ops.measured.divs,
            ops.measured.pows,
        ];
        for ((name, got), want) in names.iter().zip(measured).zip(ops.formula) {
            println!("{name},{got},{want}");
        }
        println!(
            "baseline divisions: de Boor-Cox {}, recurrence basis {}",
            ops.de_boor_cox_divs, ops.eval_splines_divs
        );
        ops.verify()?;
    }

    if let Some(path) = out {
        fs::write(&path, report.to_csv_string())
            .map_err(|e| CliError::Tool(format!("cannot write {path}: {e}")))?;
        println!("report written to {path}");
    }
    Ok(())
}

fn cmd_table(args: &[String]) -> Result<(), CliError> {
    let mut flags = Flags::parse(args, &[])?;
    let input = flags
        .take("input")
        .ok_or_else(|| CliError::Usage("table needs --input".into()))?;
    let out = flags.take("out");
    flags.finish()?;

    let kv = io::parse_knots_json(&read_file(&input)?)?;
    let table = bspline_bbf::compute_table(&kv)
        .map_err(|e| CliError::Tool(format!("invalid knot vector: {e}")))?;
    write_output(out, &table.to_csv())
}

fn cmd_eval(args: &[String]) -> Result<(), CliError> {
    let mut flags = Flags::parse(args, &[])?;
    let input = flags
        .take("input")
        .ok_or_else(|| CliError::Usage("eval needs --input".into()))?;
    let params_path = flags
        .take("params")
        .ok_or_else(|| CliError::Usage("eval needs --params".into()))?;
    let out = flags.take("out");
    flags.finish()?;

    let curve = io::parse_curve_json(&read_file(&input)?)?;
    let params = io::parse_params(&read_file(&params_path)?)?;
    let table = bspline_bbf::compute_table(curve.kv())
        .map_err(|e| CliError::Tool(format!("invalid knot vector: {e}")))?;
    let grid = multi_curve_points_with_table(
        std::slice::from_ref(&curve),
        &table,
        &params,
        &mut bspline_bbf::NoTally,
    )
    .map_err(|e| CliError::Tool(e.to_string()))?;
    write_output(out, &io::curve_points_csv(&params, &grid))
}
