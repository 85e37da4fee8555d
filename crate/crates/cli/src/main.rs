mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::Config;
use report::Report;

/// Build and verify exact certificates for curved Z/2-graded complexes.
#[derive(Parser, Debug)]
#[command(name = "mfcert", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for generation and sampling.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    /// Number of sample points for the exactness check.
    #[arg(long, global = true, default_value_t = 20)]
    trials: usize,

    /// Override the coefficient field: `Q` or `cyclotomic:n`.
    #[arg(long, global = true)]
    field: Option<String>,

    /// Output path (bundle, generated instance or lift).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Also write the report as JSON; `-` or no value prints it to stdout
    /// in place of the text report.
    #[arg(long, global = true, num_args = 0..=1, default_missing_value = "-")]
    json_report: Option<String>,

    /// Show details of passing checks.
    #[arg(short, long, global = true)]
    verbose: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute d² for a complex or family and report its curvature.
    CheckMf { input: PathBuf },
    /// Certify a λ-family (`d(λ)² = λ^r`).
    Lemma1 { input: PathBuf },
    /// Certify a twisted product family (`d² = -(f₁⋯f_r)`).
    Lemma2 { input: PathBuf },
    /// Decompose a family with split curvature `f(λ)`.
    Remark { input: PathBuf },
    /// Check the section `s_λ` of split data and certify its λ-family.
    Slambda { input: PathBuf },
    /// Reduce the twisted sections `s_ξ` to the product family.
    Sxi { input: PathBuf },
    /// Lift a homotopy to a map out of a cone.
    Conelift { input: PathBuf },
    /// Generate a seeded instance.
    Gen {
        /// One of lambda-family, twist-family, tau-data, ramond-data,
        /// remark-family, cone-lift.
        kind: String,
        #[arg(long, default_value_t = 2)]
        r: u32,
        #[arg(long, default_value_t = 2)]
        size: usize,
    },
    /// Replay certificate bundles.
    Verify {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CheckMf { .. } => "check-mf",
            Command::Lemma1 { .. } => "lemma1",
            Command::Lemma2 { .. } => "lemma2",
            Command::Remark { .. } => "remark",
            Command::Slambda { .. } => "slambda",
            Command::Sxi { .. } => "sxi",
            Command::Conelift { .. } => "conelift",
            Command::Gen { .. } => "gen",
            Command::Verify { .. } => "verify",
        }
    }

    fn inputs(&self) -> Vec<PathBuf> {
        match self {
            Command::CheckMf { input }
            | Command::Lemma1 { input }
            | Command::Lemma2 { input }
            | Command::Remark { input }
            | Command::Slambda { input }
            | Command::Sxi { input }
            | Command::Conelift { input } => vec![input.clone()],
            Command::Gen { .. } => Vec::new(),
            Command::Verify { inputs } => inputs.clone(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    if cli.seed == 0 || cli.trials == 0 {
        eprintln!("error: --seed and --trials must be positive");
        return ExitCode::from(2);
    }
    let cfg = Config { seed: cli.seed, trials: cli.trials, field: cli.field.clone(), out: cli.out.clone() };
    let mut report = Report::new(cli.command.name(), cfg.seed, cfg.trials);
    report.inputs = cli.command.inputs().iter().map(|p| p.display().to_string()).collect();

    let mut instance_text = None;
    let result = match &cli.command {
        Command::CheckMf { input } => commands::check_mf(&cfg, &mut report, input),
        Command::Lemma1 { input } => commands::lemma1(&cfg, &mut report, input),
        Command::Lemma2 { input } => commands::lemma2(&cfg, &mut report, input),
        Command::Remark { input } => commands::remark(&cfg, &mut report, input),
        Command::Slambda { input } => commands::slambda(&cfg, &mut report, input),
        Command::Sxi { input } => commands::sxi(&cfg, &mut report, input),
        Command::Conelift { input } => commands::conelift(&cfg, &mut report, input),
        Command::Gen { kind, r, size } => {
            commands::gen(&cfg, &mut report, kind, *r, *size).map(|t| instance_text = t)
        }
        Command::Verify { inputs } => commands::verify(&mut report, inputs),
    };
    let mut code = 0;
    if let Err(e) = &result {
        report.error = Some(e.to_string());
        code = if commands::is_usage(e) { 2 } else { 1 };
    }
    report.finish();
    if code == 0 && !report.pass {
        code = 1;
    }

    let json_to_stdout = cli.json_report.as_deref() == Some("-");
    // A generated instance owns stdout; the report then goes to stderr.
    if let Some(text) = &instance_text {
        print!("{text}");
        eprint!("{}", report.to_text(cli.verbose));
    } else if json_to_stdout {
        print!("{}", report.to_json());
    } else {
        print!("{}", report.to_text(cli.verbose));
    }
    if let Some(e) = &report.error {
        eprintln!("error: {e}");
    }
    if let Some(path) = cli.json_report.as_deref().filter(|p| *p != "-") {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("error: writing {path}: {e}");
            return ExitCode::from(2);
        }
    }
    ExitCode::from(code)
}
