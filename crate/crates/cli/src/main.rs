use clap::{Parser, Subcommand};
use decic::commands;
use decic::report::Report;
use std::process::ExitCode;
use std::time::Instant;

/// Exact-arithmetic verification toolkit for x^2 + y^3 = z^10.
#[derive(Parser)]
#[command(name = "decic", version, about, disable_help_subcommand = true)]
struct Cli {
    /// Emit the report as JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exhaustively search for primitive solutions in a window.
    Search {
        /// Bound |c| <= z_bound.
        #[arg(long)]
        z_bound: u64,
        /// Bound |b| <= y_bound.
        #[arg(long)]
        y_bound: u64,
    },
    /// Run every identity check on one triple a,b,c.
    Verify {
        /// The triple as a,b,c (e.g. 3,-2,1).
        #[arg(long, allow_hyphen_values = true)]
        triple: String,
    },
    /// Rational torsion of the X_E twist model and its j-line images.
    Torsion {
        /// The twist parameter Delta_E (exact rational, e.g. -1728).
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
    },
    /// p-adic obstruction test of a map against the primitive j-image.
    LocalTest {
        /// The prime p.
        #[arg(long)]
        p: u64,
        /// Map source: a JSON file, builtin:j5, or builtin:torsion-j.
        #[arg(long)]
        map: String,
        /// Unit congruence exponent (classes carry units mod p^m).
        #[arg(long, default_value_t = 2)]
        m: u32,
        /// Residue-disc subdivision depth.
        #[arg(long, default_value_t = 12)]
        depth: u32,
    },
    /// The p-adic value classes of j on primitive triples.
    JImage {
        /// The prime p.
        #[arg(long)]
        p: u64,
        /// Unit congruence exponent.
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Valuation window depth.
        #[arg(long, default_value_t = 8)]
        depth: u32,
    },
    /// Verify the offset identity and the Frey identities on the 12 triples.
    Identities,
    /// Ramification profile and splitting fingerprint of a number field.
    Fields {
        /// Monic integer polynomial, e.g. "x^3-6x-6".
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Fingerprint primes below this bound.
        #[arg(long, default_value_t = 500)]
        bound: u64,
    },
    /// Small rational points on y^2 = x^5 - k.
    Genus2 {
        /// The constant k (nonzero integer).
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        /// Height bound for x = a/d^2 (|a| <= height, d^2 <= height).
        #[arg(long)]
        height: u64,
    },
    /// Two-torsion splitting data of y^2 = f(x) and optional map descent.
    Moebius {
        /// The 2-division cubic f, monic and depressed, e.g. "x^3-6x-6".
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        /// Optional map (JSON file or builtin:j5) to descend to Q.
        #[arg(long)]
        map: Option<String>,
    },
    /// Newton polygon and p-adic value classes of a polynomial.
    Padic {
        /// The polynomial, e.g. "x^2-5".
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// The prime p.
        #[arg(long)]
        p: u64,
        /// Unit congruence exponent.
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Residue-disc subdivision depth.
        #[arg(long, default_value_t = 6)]
        depth: u32,
    },
}

fn run(cmd: &Cmd) -> Result<Report, String> {
    match cmd {
        Cmd::Search { z_bound, y_bound } => commands::cmd_search(*z_bound, *y_bound),
        Cmd::Verify { triple } => commands::cmd_verify(triple),
        Cmd::Torsion { delta } => commands::cmd_torsion(delta),
        Cmd::LocalTest { p, map, m, depth } => commands::cmd_local_test(*p, map, *m, *depth),
        Cmd::JImage { p, m, depth } => commands::cmd_j_image(*p, *m, *depth),
        Cmd::Identities => commands::cmd_identities(),
        Cmd::Fields { poly, bound } => commands::cmd_fields(poly, *bound),
        Cmd::Genus2 { k, height } => commands::cmd_genus2(k, *height),
        Cmd::Moebius { curve, map } => commands::cmd_moebius(curve, map.as_deref()),
        Cmd::Padic { poly, p, m, depth } => commands::cmd_padic(poly, *p, *m, *depth),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli.cmd) {
        Ok(mut report) => {
            report.timing_ms = start.elapsed().as_millis();
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report.to_json()).expect("serializable")
                );
            } else {
                print!("{}", report.render_text());
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            eprintln!("run `decic --help` for usage");
            ExitCode::from(2)
        }
    }
}
