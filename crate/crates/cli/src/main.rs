//! `ncx`: exact generalized-homology computations and verification runs.
//!
//! Exit status: 0 when every check holds, 1 when a check fails (the witness is written
//! to the artifact directory), 2 for unusable input.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use report::Format;

#[derive(Parser, Debug)]
#[command(name = "ncx", version, about = "Generalized homology of N-differential modules and N-complexes")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Where failure witnesses go.
    #[arg(long, default_value = ".", global = true)]
    pub artifact_dir: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// dim Z, B, H of H_(m) for every m, with representatives.
    Homology { module: PathBuf },
    /// Jordan multiplicities from ranks, and H_(k) against them.
    Multiplicities { module: PathBuf },
    /// Exactness of the hexagons built from [i] and [d].
    Hexagon {
        module: PathBuf,
        #[arg(long = "l")]
        l: Option<usize>,
        #[arg(long = "m")]
        m: Option<usize>,
    },
    /// Hexagons of a short exact sequence and well-definedness of ∂.
    Ses {
        /// {"E", "F", "G", "phi", "psi"}
        sequence: PathBuf,
        #[arg(long, default_value_t = 10)]
        relifts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Generalized cohomology of d₀ and d₁ on Hochschild cochains.
    Cosimplicial {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, default_value_t = 6)]
        nmax: usize,
    },
    /// d₀/d₁ cohomology against the ordinary Hochschild cohomology.
    Theorem2 {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, default_value_t = 4)]
        window: usize,
    },
    /// Vanishing for the tensor algebra with d₁ and for Ω_q.
    Prop7 {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, default_value_t = 4)]
        window: usize,
    },
    /// Generalized Poincaré lemma on polynomial tensor fields.
    Poincare {
        #[arg(long = "N")]
        n: usize,
        #[arg(long = "D")]
        d: usize,
        /// all k when omitted
        #[arg(long = "k")]
        k: Option<usize>,
        #[arg(long, default_value_t = 4)]
        wmax: usize,
    },
    /// The spin-S sequence in Ω_{S+1}.
    SpinSeq {
        #[arg(long = "S")]
        s: usize,
        #[arg(long = "D")]
        d: usize,
        #[arg(long, default_value_t = 4)]
        wmax: usize,
    },
    /// R with curvature symmetries and ∂∂R = T for a conserved T on ℝ³.
    Potential {
        /// 3×3 list of polynomials; a random source when omitted
        source: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Ghost-complex cohomology against longitudinal cohomology.
    Brs {
        system: Option<PathBuf>,
        #[arg(long, value_parser = ["abelian", "syzygy"])]
        example: Option<String>,
        #[arg(long, visible_alias = "deg-max", default_value_t = 4)]
        wmax: i64,
    },
    /// ℋ• with Q = d + A, or its Hochschild-cochain version.
    GaugeExt {
        /// instance file, or `verify` together with --suite
        instance: Option<PathBuf>,
        /// `random`: a seeded suite of --trials instances
        #[arg(long, value_parser = ["random"])]
        suite: Option<String>,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        /// seeded random instance with this N
        #[arg(long = "random-N")]
        random_n: Option<usize>,
        #[arg(long, default_value_t = 12)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = ["z2", "synthetic"])]
        hochschild: Option<String>,
        #[arg(long, default_value_t = 5)]
        nmax: usize,
    },
    /// Spin-1/spin-2 ghost complexes at a light-cone momentum, or the two-particle Q.
    SpinExample {
        #[arg(long, default_value_t = 1)]
        spin: usize,
        #[arg(long, default_value = "1,1,0,0")]
        p: String,
        #[arg(long, default_value = "1")]
        alpha: String,
        /// second momentum for the two-particle study
        #[arg(long)]
        two_particle: Option<String>,
    },
    /// The full acceptance suite.
    Selftest {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// comma-separated criterion ids
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}

#[derive(Args, Debug)]
pub struct AlgebraArgs {
    /// algebra JSON; dual numbers k[t]/t² when omitted
    pub algebra: Option<PathBuf>,
    #[arg(long = "N", default_value_t = 3)]
    pub n: usize,
    /// zeta:M, zeta:M:j, a rational, or "[c0, c1, …] mod Phi(M)"; default a primitive N-th root
    #[arg(long)]
    pub q: Option<String>,
}

fn main() -> ExitCode {
    let cfg = RunConfig::parse();
    let tag = commands::tag(&cfg.command);
    match commands::run(&cfg.command) {
        Ok(report) => {
            print!("{}", report.render(cfg.format));
            if !report.failed() {
                return ExitCode::SUCCESS;
            }
            match report.write_witness(&cfg.artifact_dir, tag) {
                Ok(Some(p)) => eprintln!("failure witness written to {}", p.display()),
                Ok(None) => {}
                Err(e) => eprintln!("could not write failure witness: {e}"),
            }
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("ncx {tag}: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
