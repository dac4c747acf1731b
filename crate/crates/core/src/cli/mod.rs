//! Command-line front end. Every subcommand produces a [`Report`]; the exit
//! code is 0 when all of its checks pass, 1 when one fails and 2 on bad
//! input.

mod commands;
mod model;
mod report;
mod selftest;

use clap::{Args, Parser, Subcommand};

pub use commands::{builtin_surface, timed};
pub use model::{default_fujiki, parse_class, resolve_model, Model, ModelOverrides, ModelSource};
pub use report::{digest, Check, Format, Report, Table};

use crate::fibration::SurfaceFibrationData;
use crate::linalg::Rational;

/// Malformed or contradictory input; maps to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct InputError(pub String);

#[derive(Debug, Parser)]
#[command(
    name = "perverse-hodge",
    version,
    about = "Perverse and Hodge numbers of hyper-Kähler model algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Options {
    /// Built-in model: k3, k3hilb2, toy-b3 (for `surface`: elliptic-k3,
    /// rational-elliptic, product-ee).
    #[arg(long, global = true)]
    pub model: Option<String>,
    /// JSON model: an algebra description, a quadratic space, or (for
    /// `surface`) fibration data.
    #[arg(long, global = true)]
    pub model_file: Option<String>,
    #[arg(long, global = true)]
    pub b2: Option<usize>,
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// JSON square matrix of integers or "p/q" strings.
    #[arg(long, global = true)]
    pub gram_file: Option<String>,
    #[arg(long, global = true)]
    pub fujiki: Option<Rational>,
    /// η′ as comma-separated coordinates or a generator such as `e2`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub eta: Option<String>,
    /// β as comma-separated coordinates or a generator such as `e1`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 2)]
    pub hmax: usize,
    /// Run the expensive checks too.
    #[arg(long, global = true)]
    pub deep: bool,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Model algebra operations.
    Model {
        #[command(subcommand)]
        action: ModelAction,
    },
    /// Perverse bigrading, table and structural checks.
    Perverse,
    /// Perverse table against a Hodge diamond (Göttsche's by default).
    CompareHodge {
        /// JSON `{"n", "entries"}` with `p` as rows.
        #[arg(long)]
        hodge_file: Option<String>,
    },
    /// Perverse and Leray numbers of an elliptic surface.
    Surface {
        #[arg(long)]
        hodge_file: Option<String>,
    },
    /// Refined GV invariants of K3 against the KKV formula.
    Gv,
    /// so(5) closures, Cartan tables and the structure Lie algebra.
    Lie,
    /// Runs every acceptance check.
    Selftest,
}

#[derive(Debug, Clone, Subcommand)]
pub enum ModelAction {
    /// Construct and validate the algebra.
    Build,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Model { .. } => "model build",
            Command::Perverse => "perverse",
            Command::CompareHodge { .. } => "compare-hodge",
            Command::Surface { .. } => "surface",
            Command::Gv => "gv",
            Command::Lie => "lie",
            Command::Selftest => "selftest",
        }
    }
}

impl Options {
    /// Exactly one of `--model`, `--model-file`, or `--b2`/`--gram-file`.
    pub fn model_source(&self) -> Result<ModelSource, InputError> {
        let params = self.b2.is_some() || self.gram_file.is_some();
        let given = [self.model.is_some(), self.model_file.is_some(), params]
            .iter()
            .filter(|&&x| x)
            .count();
        match given {
            0 => Err(InputError(
                "no model given: use --model, --model-file, or --b2/--gram-file".into(),
            )),
            1 => Ok(match (&self.model, &self.model_file) {
                (Some(m), _) => ModelSource::Builtin(m.clone()),
                (_, Some(f)) => ModelSource::File(f.clone()),
                _ => ModelSource::Params {
                    b2: self.b2,
                    gram_file: self.gram_file.clone(),
                },
            }),
            _ => Err(InputError(
                "give only one of --model, --model-file, --b2/--gram-file".into(),
            )),
        }
    }

    fn overrides(&self) -> ModelOverrides {
        ModelOverrides {
            n: self.n,
            fujiki: self.fujiki.clone(),
        }
    }

    fn surface_data(&self) -> Result<SurfaceFibrationData, InputError> {
        match (&self.model, &self.model_file) {
            (Some(name), None) => builtin_surface(name)
                .ok_or_else(|| InputError(format!("--model: unknown surface {name:?} (elliptic-k3, rational-elliptic, product-ee)"))),
            (None, Some(path)) => SurfaceFibrationData::from_json(&model::read_file(path)?).map_err(|e| InputError(format!("--model-file: {e}"))),
            _ => Err(InputError("surface needs exactly one of --model or --model-file".into())),
        }
    }
}

fn file_part(path: &Option<String>) -> String {
    path.as_deref()
        .map(|p| std::fs::read_to_string(p).unwrap_or_default())
        .unwrap_or_default()
}

fn input_digest(cmd: &Command, o: &Options) -> String {
    let hodge = match cmd {
        Command::CompareHodge { hodge_file } | Command::Surface { hodge_file } => {
            file_part(hodge_file)
        }
        _ => String::new(),
    };
    digest(&[
        ("command", cmd.name().into()),
        ("model", o.model.clone().unwrap_or_default()),
        ("model_file", file_part(&o.model_file)),
        ("b2", o.b2.map(|x| x.to_string()).unwrap_or_default()),
        ("n", o.n.map(|x| x.to_string()).unwrap_or_default()),
        ("gram_file", file_part(&o.gram_file)),
        (
            "fujiki",
            o.fujiki
                .as_ref()
                .map(ToString::to_string)
                .unwrap_or_default(),
        ),
        ("eta", o.eta.clone().unwrap_or_default()),
        ("beta", o.beta.clone().unwrap_or_default()),
        ("seed", o.seed.to_string()),
        ("hmax", o.hmax.to_string()),
        ("deep", o.deep.to_string()),
        ("hodge_file", hodge),
    ])
}

/// Executes one command. Check failures are recorded in the report; only
/// bad input is an error.
pub fn run(cmd: &Command, o: &Options) -> Result<Report, InputError> {
    let mut report = Report::new(cmd.name(), input_digest(cmd, o));
    let (eta, beta) = (o.eta.as_deref(), o.beta.as_deref());
    let model = || -> Result<Model, InputError> {
        timed("model", || {
            resolve_model(&o.model_source()?, &o.overrides())
        })
    };
    match cmd {
        Command::Model {
            action: ModelAction::Build,
        } => commands::model_build(&model()?, &mut report)?,
        Command::Perverse => commands::perverse(&model()?, eta, beta, &mut report)?,
        Command::CompareHodge { hodge_file } => {
            commands::compare(&model()?, eta, beta, hodge_file.as_deref(), &mut report)?
        }
        Command::Surface { hodge_file } => {
            commands::surface(&o.surface_data()?, hodge_file.as_deref(), &mut report)?
        }
        Command::Gv => commands::gv(o.hmax, o.deep, &mut report)?,
        Command::Lie => {
            let m = model()?;
            let structure = o.deep || m.builtin_name() == Some("k3");
            commands::lie(&m, o.seed, structure, &mut report)?
        }
        Command::Selftest => selftest::selftest(o.seed, o.deep, &mut report)?,
    }
    Ok(report)
}

/// What a command line produces: exit code, standard output and standard
/// error text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses arguments (the first is the program name) and runs them.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match run(&cli.command, &cli.opts) {
        Ok(report) => Outcome {
            code: i32::from(!report.pass()),
            stdout: report.render(cli.opts.format),
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Runs with the process arguments, prints, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let out = execute(args);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}
