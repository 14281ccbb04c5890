mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::Failure;

#[derive(Parser, Debug)]
#[command(
    name = "anisotope",
    version,
    about = "Isotropy of quadratic forms over Q and F_q(t)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Q or F<q>(t) with q an odd prime.
    #[arg(long, global = true, default_value = "Q")]
    pub field: String,
    /// Height (Q) or degree (F_q(t)) cap for witness searches.
    #[arg(long, global = true)]
    pub height: Option<u64>,
    /// Norm bound for place scans and constant verification.
    #[arg(long, global = true)]
    pub bound: Option<u64>,
    /// Constants fixture (TOML); defaults to the bundled one for the field.
    #[arg(long, global = true)]
    pub constants: Option<std::path::PathBuf>,
    /// Human-readable output instead of one-line JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide isotropy; prints verdict and certificate.
    Decide(commands::FormArgs),
    /// Validate a certificate against a form.
    Check {
        #[command(flatten)]
        form: commands::FormArgs,
        /// Certificate JSON, or @path.
        #[arg(long)]
        certificate: String,
    },
    /// Hilbert symbol (a,b)_v, or the places where it is -1 when v is omitted.
    Hilbert {
        a: String,
        b: String,
        place: Option<String>,
    },
    /// Emit a formula as an s-expression.
    Emit {
        #[arg(long, value_enum, default_value = "anisotropy")]
        kind: commands::EmitKind,
        /// Flatten to one polynomial equation.
        #[arg(long)]
        flatten: bool,
        #[arg(required = true)]
        coeffs: Vec<String>,
    },
    /// Evaluate a formula: with every variable bound, check it; otherwise
    /// search for the unbound existential variables.
    Eval {
        /// S-expression, or @path.
        formula: String,
        /// name=value bindings.
        bindings: Vec<String>,
    },
    /// Find, verify or show class-field constants.
    Constants {
        #[arg(value_enum)]
        action: commands::ConstantsAction,
    },
    /// Run the built-in consistency checks.
    Selftest,
}

/// Elements such as `-7` or `-t` start with a dash; a leading space keeps
/// clap from reading them as flags and is ignored by the element parser.
fn escape_values(args: impl Iterator<Item = String>) -> Vec<String> {
    args.map(|a| {
        let value_like =
            a.len() > 1 && a.starts_with('-') && !a.starts_with("--") && a != "-h" && a != "-V";
        if value_like {
            format!(" {a}")
        } else {
            a
        }
    })
    .collect()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse_from(escape_values(std::env::args())) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let pretty = cli.global.pretty;
    let result = std::panic::catch_unwind(|| commands::run(&cli.global, &cli.command));
    let result = result.unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(Failure::Internal(msg))
    });
    match result {
        Ok(value) => {
            println!("{}", output::render(value, pretty));
            ExitCode::SUCCESS
        }
        Err(f) => {
            let (code, value) = f.into_response();
            println!("{}", output::render(value, pretty));
            ExitCode::from(code)
        }
    }
}
