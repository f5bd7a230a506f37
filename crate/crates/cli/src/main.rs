use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use xdio_cli::commands::{full_scale_warning, run};
use xdio_cli::config::{Opts, RunConfig, Scale};

#[derive(Parser)]
#[command(name = "xdio", about = "Sieves, bounds and oracles for pairs of a^x + b^y = c^z")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Recompute the named constants and compare them with their targets.
    Bounds(Opts),
    /// Run one of the search programs.
    Sieve {
        #[command(subcommand)]
        which: SieveCmd,
    },
    /// Brute-force enumerations.
    Oracle {
        #[command(subcommand)]
        which: OracleCmd,
    },
    /// Bézout witnesses and the leading-coefficient survey.
    Euclid {
        #[command(subcommand)]
        which: EuclidCmd,
    },
    /// Embedded tables.
    Tables {
        #[command(subcommand)]
        which: TablesCmd,
    },
}

#[derive(Subcommand)]
enum SieveCmd {
    /// Steps 1 to 3 for one case of the small-z program.
    Step123(Opts),
    /// Scan for a second equation with `Z ≤ z + gap`.
    Zgap(Opts),
    /// Scan `b^Y mod c^{z+gap}` over Hensel-lifted `b` to raise the floor on `z`.
    Zfloor(Opts),
    /// Final sieve over `(Y, T, z)`.
    Final(Opts),
    /// Even-Δ component checks for c = 97.
    C97(Opts),
    /// Pipeline for a family prime 3·2^r + 1.
    Theorem3(Opts),
    /// Plant the c = 13 solution in every stage.
    Inject(Opts),
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Count solutions of a^x + b^y = c^z below a cap.
    Count(Opts),
    /// List `(x, y)` with a^x − b^y = c below a cap.
    Pillai(Opts),
    /// Check every exceptional triple has two solutions.
    Exceptional(Opts),
}

#[derive(Subcommand)]
enum EuclidCmd {
    /// Bézout witness for one `(n, E, N)`.
    Witness(Opts),
    /// Leading-coefficient survey over ranges of `y` and `N`.
    Survey(Opts),
}

#[derive(Subcommand)]
enum TablesCmd {
    /// Print one table with an integrity check.
    Dump(Opts),
}

fn split(cmd: Cmd) -> (String, Opts) {
    let s = |a: &str, b: &str, o| (format!("{a} {b}"), o);
    match cmd {
        Cmd::Bounds(o) => ("bounds".into(), o),
        Cmd::Sieve { which } => match which {
            SieveCmd::Step123(o) => s("sieve", "step123", o),
            SieveCmd::Zgap(o) => s("sieve", "zgap", o),
            SieveCmd::Zfloor(o) => s("sieve", "zfloor", o),
            SieveCmd::Final(o) => s("sieve", "final", o),
            SieveCmd::C97(o) => s("sieve", "c97", o),
            SieveCmd::Theorem3(o) => s("sieve", "theorem3", o),
            SieveCmd::Inject(o) => s("sieve", "inject", o),
        },
        Cmd::Oracle { which } => match which {
            OracleCmd::Count(o) => s("oracle", "count", o),
            OracleCmd::Pillai(o) => s("oracle", "pillai", o),
            OracleCmd::Exceptional(o) => s("oracle", "exceptional", o),
        },
        Cmd::Euclid { which } => match which {
            EuclidCmd::Witness(o) => s("euclid", "witness", o),
            EuclidCmd::Survey(o) => s("euclid", "survey", o),
        },
        Cmd::Tables { which: TablesCmd::Dump(o) } => s("tables", "dump", o),
    }
}

fn main() -> ExitCode {
    let (command, opts) = split(Cli::parse().cmd);
    let fail = |e: xdio_cli::CliError| {
        eprintln!("error: {e}");
        ExitCode::from(e.exit_code() as u8)
    };
    let opts = match opts.with_file() {
        Ok(o) => o,
        Err(e) => return fail(e),
    };
    let cfg = RunConfig::new(command, opts);
    if cfg.opts.scale() == Scale::Full {
        if let Some(w) = full_scale_warning(&cfg.command) {
            eprintln!("warning: --scale full: {w}");
        }
    }
    let rep = match run(&cfg) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let mut text = rep.render() + &rep.render_summary();
    if let Some(dir) = cfg.opts.out_dir() {
        match rep.append_to(&dir) {
            Ok(p) => text.push_str(&format!("# report appended to {}\n", p.display())),
            Err(e) => return fail(e),
        }
    }
    // A closed stdout (for example a pipe into `head`) is not an error of the run.
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    ExitCode::from(rep.verdict.exit_code() as u8)
}
