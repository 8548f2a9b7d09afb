//! Argument surface of the `comanifold` binary.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

fn positive(s: &str) -> Result<f64, String> {
    let value: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err("must be a positive number".to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "comanifold",
    version,
    about = "Combinatorial manifolds: skeleton graphs, invariants, equivalence, and a chart-level geometry kernel",
    after_help = "Exit codes: 0 success, 1 failed validation or bad input data, 2 usage error.\n\
                  COMANIFOLD_FORMAT sets the default output format."
)]
pub struct Cli {
    /// Output format; COMANIFOLD_FORMAT sets the default, else text.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a model document; violations exit with status 1.
    Validate { model: PathBuf },
    /// Build the depth-d skeleton graph of a model.
    Graph {
        model: PathBuf,
        #[arg(long)]
        d: u32,
        /// Emit DOT instead of the selected format.
        #[arg(long)]
        dot: bool,
    },
    /// Rebuild each skeleton by dropping edges and compare with the direct build.
    RecursionCheck { model: PathBuf },
    /// Euler characteristic of a model by inclusion-exclusion.
    Euler { model: PathBuf },
    /// Fundamental d-group rank of a model.
    Pi {
        model: PathBuf,
        #[arg(long)]
        d: u32,
    },
    /// Test two graph documents for label-preserving isomorphism.
    Equiv { g1: PathBuf, g2: PathBuf },
    /// Automorphism orbits of the label classes of a graph.
    Orbits { graph: PathBuf },
    /// Counting series of a labelled graph from a per-label series table.
    Enum {
        graph: PathBuf,
        /// Series table document, one series per positive label.
        #[arg(long)]
        series: PathBuf,
        /// Largest total degree kept in the result.
        #[arg(long)]
        truncate: u32,
    },
    /// Realize a labelled graph as a model whose depth-d skeleton rebuilds it.
    Realize {
        graph: PathBuf,
        #[arg(long)]
        d: u32,
        /// Model document to write.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Chart, form, metric, and norm operations.
    #[command(subcommand)]
    Geom(GeomCommand),
    /// Emit a deterministic pseudorandom model document.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        atoms: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        min_dim: u32,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
        max_dim: u32,
        /// Write the document here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GeomCommand {
    /// Flattened tangent-space dimension of a chart.
    Dim { chart: PathBuf },
    /// Exterior derivative of a polynomial form document.
    Dform { form: PathBuf },
    /// Christoffel coefficients of a polynomial metric at a point.
    Christoffel {
        metric: PathBuf,
        /// Evaluation point, comma separated.
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_hyphen_values = true
        )]
        at: Vec<f64>,
    },
    /// Minkowski norm axioms on seeded samples; failure exits with status 1.
    NormCheck {
        norm: PathBuf,
        /// Number of sample vectors.
        #[arg(long)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Homogeneity tolerance override.
        #[arg(long, value_parser = positive)]
        tol: Option<f64>,
        /// Hessian step override.
        #[arg(long, value_parser = positive)]
        step: Option<f64>,
    },
}
