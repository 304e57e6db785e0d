//! Command-line front end.
//!
//! [`run`] parses an argument list, executes the command and returns the text
//! to print together with the exit code: 0 on success, 1 when a verification
//! check fails, 2 on bad input.

pub mod groupfile;
mod render;

use std::ffi::OsString;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};

use crate::catalog::{build, IDS};
use crate::cyclo::parse_expr;
use crate::error::{Error, Result};
use crate::linalg::Mat3;
use crate::projgroup::{closure, GroupData, ProjPoint, DEFAULT_GROUP_CAP};
use groupfile::parse_group_file;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "planar-rigidity",
    version,
    about = "Small orbits, general position, Del Pezzo links and rigidity verdicts for finite subgroups of PGL(3,C)"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the built-in groups.
    Catalog,
    /// Orders, element orders and action type of a group.
    Info {
        /// Catalog id or path to a group file.
        group: String,
    },
    /// Orbits with at most BOUND points.
    Orbits {
        group: String,
        #[arg(long, default_value_t = 8)]
        bound: usize,
    },
    /// General position of the orbit of a point.
    Genpos {
        group: String,
        /// Comma-separated coordinates; `z` is ζ_N for the group's conductor N.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Elementary links from every blowup of small orbits.
    Links { group: String },
    /// Whether the plane is birationally rigid for the group.
    Verdict { group: String },
    /// Run the built-in verification checks.
    VerifyPaper {
        /// Run only the named check.
        #[arg(long)]
        check: Option<String>,
    },
}

/// What a command prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

/// A group named on the command line.
pub struct LoadedGroup {
    pub name: String,
    pub conductor: u32,
    pub generators: Vec<Mat3>,
}

/// Catalog ids take precedence over file names.
pub fn load_group(name_or_path: &str) -> Result<LoadedGroup> {
    if IDS.contains(&name_or_path) {
        let e = build(name_or_path)?;
        return Ok(LoadedGroup { name: name_or_path.to_string(), conductor: e.conductor, generators: e.generators });
    }
    let path = Path::new(name_or_path);
    if !path.is_file() {
        return Err(Error::UnknownGroup(name_or_path.to_string()));
    }
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {name_or_path}: {e}")))?;
    let file = parse_group_file(&text)?;
    Ok(LoadedGroup { name: name_or_path.to_string(), conductor: file.conductor, generators: file.generators })
}

/// Parses `"x, y, z"` with `z` read as ζ_conductor.
pub fn parse_point(text: &str, conductor: u32) -> Result<ProjPoint> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Input(format!("a point needs 3 coordinates, found {}", parts.len())));
    }
    let c = [parse_expr(parts[0].trim(), conductor)?, parse_expr(parts[1].trim(), conductor)?, parse_expr(parts[2].trim(), conductor)?];
    ProjPoint::new(c)
}

fn group_of(loaded: &LoadedGroup) -> Result<GroupData> {
    closure(&loaded.generators, DEFAULT_GROUP_CAP)
}

fn emit(format: Format, text: String, json: serde_json::Value) -> String {
    match format {
        Format::Text => text,
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json).expect("JSON values serialize");
            s.push('\n');
            s
        }
    }
}

fn execute(cli: &Cli) -> Result<(i32, String)> {
    let f = cli.format;
    match &cli.command {
        Command::Catalog => {
            let (t, j) = render::catalog()?;
            Ok((0, emit(f, t, j)))
        }
        Command::Info { group } => {
            let loaded = load_group(group)?;
            let g = group_of(&loaded)?;
            let (t, j) = render::info(&loaded, &g)?;
            Ok((0, emit(f, t, j)))
        }
        Command::Orbits { group, bound } => {
            let loaded = load_group(group)?;
            let g = group_of(&loaded)?;
            let (t, j) = render::orbits(&loaded, &g, *bound)?;
            Ok((0, emit(f, t, j)))
        }
        Command::Genpos { group, point } => {
            let loaded = load_group(group)?;
            let g = group_of(&loaded)?;
            let p = parse_point(point, g.conductor())?;
            let (t, j) = render::genpos(&loaded, &g, &p)?;
            Ok((0, emit(f, t, j)))
        }
        Command::Links { group } => {
            let loaded = load_group(group)?;
            let g = group_of(&loaded)?;
            let (t, j) = render::links(&loaded, &g)?;
            Ok((0, emit(f, t, j)))
        }
        Command::Verdict { group } => {
            let loaded = load_group(group)?;
            let g = group_of(&loaded)?;
            let (t, j) = render::verdict(&loaded, &g)?;
            Ok((0, emit(f, t, j)))
        }
        Command::VerifyPaper { check } => {
            let report = match check {
                Some(name) => crate::rigidity::verify_paper_check(name)?,
                None => crate::rigidity::verify_paper()?,
            };
            let code = if report.all_pass() { 0 } else { 1 };
            Ok((code, emit(f, report.to_text(), report.to_json())))
        }
    }
}
