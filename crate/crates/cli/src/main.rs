use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use chamber_zeta::QMode;
use chamber_zeta_cli::{cmd_counts, cmd_det, cmd_euler, cmd_galleries, cmd_verify, cmd_zeta, parse_q, parse_q_list};

#[derive(Parser)]
#[command(name = "chamber-zeta", version, about = "Chamber zeta function of the PGL3(Fq[t]) quotient")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Weighted closed-gallery counts three ways.
    Counts {
        #[arg(long, value_parser = parse_q)]
        q: QMode,
        #[arg(long, default_value_t = 12)]
        max_n: usize,
    },
    /// Closed form and series of Z(u), checked against the operator traces.
    Zeta {
        #[arg(long, value_parser = parse_q)]
        q: QMode,
        #[arg(long, default_value_t = 12)]
        order: usize,
    },
    /// Determinant of the truncated block matrix M_(k,width).
    Det {
        #[arg(long, value_parser = parse_q)]
        q: QMode,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        width: usize,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Euler product over primitive gallery classes.
    Euler {
        #[arg(long, value_parser = parse_q)]
        q: QMode,
        #[arg(long, default_value_t = 12)]
        max_len: usize,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Closed gallery classes of one length.
    Galleries {
        #[arg(long, value_parser = parse_q)]
        q: QMode,
        #[arg(long)]
        length: usize,
        #[arg(long)]
        list: bool,
    },
    /// Every identity, for a list of q values.
    Verify {
        #[arg(long, value_parser = q_list, default_value = "2,3,sym")]
        q: QList,
        #[arg(long, default_value_t = 12)]
        order: usize,
    },
}

#[derive(Clone)]
struct QList(Vec<QMode>);

fn q_list(s: &str) -> Result<QList, String> {
    parse_q_list(s).map(QList)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if matches!(cli.format, Format::Csv) && !matches!(cli.command, Command::Counts { .. }) {
        eprintln!("error: csv output is only available for counts");
        return ExitCode::from(2);
    }
    let report = match &cli.command {
        Command::Counts { q, max_n } => cmd_counts(q, *max_n),
        Command::Zeta { q, order } => cmd_zeta(q, *order),
        Command::Det { q, k, width, order } => cmd_det(q, *k, *width, *order),
        Command::Euler { q, max_len, order } => cmd_euler(q, *max_len, *order),
        Command::Galleries { q, length, list } => cmd_galleries(q, *length, *list),
        Command::Verify { q, order } => cmd_verify(&q.0, *order),
    };
    let report = match report {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let rendered = match cli.format {
        Format::Json => Ok(report.to_json() + "\n"),
        Format::Text => Ok(report.to_text()),
        Format::Csv => report.to_csv(),
    };
    match rendered {
        Ok(s) => print!("{s}"),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
