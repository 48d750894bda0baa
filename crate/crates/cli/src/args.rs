//! Command-line flags and their merge with an optional JSON config file.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;

use crate::config::{ConvergenceConfig, Dim, Method, RunConfig};
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "padecheb", version, about = "Chebyshev and Padé-Chebyshev approximation experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build one approximant and write values, errors and a summary.
    Approx(ApproxArgs),
    /// Sweep cell counts and tabulate L1 errors and orders.
    Convergence(ConvergenceArgs),
    /// List the built-in functions.
    Registry,
}

/// Flags shared by both run commands. Lists are comma separated.
#[derive(Debug, Args, Default)]
pub struct CommonArgs {
    /// JSON config file; flags given on the command line override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub function: Option<String>,
    /// `a,b` or `ax,bx,ay,by`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub domain: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    pub np: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    pub nq: Option<Vec<usize>>,
    /// Series degree for the Chebyshev variants.
    #[arg(long = "d", value_delimiter = ',')]
    pub degree: Option<Vec<usize>>,
    /// Quadrature points per cell (per axis).
    #[arg(long = "n", value_delimiter = ',')]
    pub n: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    pub grid: Option<Vec<usize>>,
    #[arg(long = "rank-tol")]
    pub rank_tol: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Default)]
pub struct ApproxArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_enum)]
    pub method: Option<Method>,
    #[arg(long, value_enum)]
    pub dim: Option<Dim>,
    /// Cells (per axis).
    #[arg(long = "N", value_delimiter = ',')]
    pub cells: Option<Vec<usize>>,
    /// Error window `a,b` or `ax,bx,ay,by`; repeat for several.
    #[arg(long, value_parser = parse_floats, allow_hyphen_values = true)]
    pub window: Vec<Floats>,
}

#[derive(Debug, Args, Default)]
pub struct ConvergenceArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Increasing list of cell counts per axis.
    #[arg(long = "N", value_delimiter = ',')]
    pub cells: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub window: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Floats(pub Vec<f64>);

fn parse_floats(s: &str) -> Result<Floats, String> {
    s.split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|e| format!("'{v}': {e}")))
        .collect::<Result<_, _>>()
        .map(Floats)
}

fn load<T: DeserializeOwned>(path: &PathBuf) -> Result<serde_json::Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    // Reject unknown or mistyped fields early, with the file name attached.
    if let Err(e) = serde_json::from_value::<T>(value.clone()) {
        if !e.to_string().starts_with("missing field") {
            return Err(CliError::Config(format!("{}: {e}", path.display())));
        }
    }
    Ok(value)
}

fn set<T: serde::Serialize>(obj: &mut serde_json::Map<String, serde_json::Value>, key: &str, v: Option<T>) {
    if let Some(v) = v {
        obj.insert(key.to_string(), serde_json::to_value(v).expect("plain data serializes"));
    }
}

fn merge<T: DeserializeOwned>(common: CommonArgs, extra: impl FnOnce(&mut serde_json::Map<String, serde_json::Value>)) -> Result<T, CliError> {
    let mut value = match &common.config {
        Some(p) => load::<T>(p)?,
        None => serde_json::Value::Object(Default::default()),
    };
    let obj = value
        .as_object_mut()
        .ok_or_else(|| CliError::Config("config file must hold a JSON object".into()))?;
    set(obj, "function", common.function);
    set(obj, "domain", common.domain);
    set(obj, "np", common.np);
    set(obj, "nq", common.nq);
    set(obj, "degree", common.degree);
    set(obj, "n", common.n);
    set(obj, "grid", common.grid);
    set(obj, "rank_tol", common.rank_tol);
    set(obj, "out", common.out);
    extra(obj);
    serde_json::from_value(value).map_err(|e| CliError::Config(e.to_string()))
}

impl ApproxArgs {
    pub fn into_config(self) -> Result<RunConfig, CliError> {
        let (method, dim, cells, window) = (self.method, self.dim, self.cells, self.window);
        merge(self.common, |obj| {
            set(obj, "method", method);
            set(obj, "dim", dim);
            set(obj, "cells", cells);
            if !window.is_empty() {
                let window: Vec<Vec<f64>> = window.into_iter().map(|w| w.0).collect();
                set(obj, "windows", Some(window));
            }
        })
    }
}

impl ConvergenceArgs {
    pub fn into_config(self) -> Result<ConvergenceConfig, CliError> {
        let (cells, window) = (self.cells, self.window);
        merge(self.common, |obj| {
            set(obj, "cells", cells);
            set(obj, "window", window);
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("padecheb").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn approx_flags() {
        let cli = parse(&[
            "approx", "--function", "jump-root-1d", "--method", "pipade", "--N", "512", "--np", "20", "--nq", "20",
            "--n", "200", "--window", "0.2,0.6", "--window", "-1,-0.2", "--out", "o",
        ]);
        let Command::Approx(a) = cli.command else { panic!() };
        let c = a.into_config().unwrap();
        assert_eq!(c.cells, vec![512]);
        assert_eq!(c.windows, vec![vec![0.2, 0.6], vec![-1.0, -0.2]]);
        assert_eq!(c.method, Method::Pipade);
        assert_eq!(c.out, PathBuf::from("o"));
    }

    #[test]
    fn flags_override_file() {
        let dir = std::env::temp_dir().join(format!("padecheb-args-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("c.json");
        std::fs::write(&path, r#"{"function": "exp1d", "method": "cheb", "np": [3], "nq": [1]}"#).unwrap();
        let cli = parse(&["approx", "--config", path.to_str().unwrap(), "--np", "4"]);
        let Command::Approx(a) = cli.command else { panic!() };
        let c = a.into_config().unwrap();
        assert_eq!(c.method, Method::Cheb);
        assert_eq!(c.np, vec![4]);
        assert_eq!(c.nq, vec![1]);
        std::fs::write(&path, r#"{"function": "exp1d", "colour": 3}"#).unwrap();
        let cli = parse(&["approx", "--config", path.to_str().unwrap()]);
        let Command::Approx(a) = cli.command else { panic!() };
        assert!(matches!(a.into_config(), Err(CliError::Config(_))));
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn missing_function_is_a_config_error() {
        let Command::Approx(a) = parse(&["approx"]).command else { panic!() };
        assert!(matches!(a.into_config(), Err(CliError::Config(_))));
        let cli = parse(&["approx", "--config", "/nonexistent/padecheb.json"]);
        let Command::Approx(a) = cli.command else { panic!() };
        assert!(matches!(a.into_config(), Err(CliError::Io(_))));
    }
}
