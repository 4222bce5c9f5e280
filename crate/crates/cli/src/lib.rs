//! Argument handling and output for the `unigeom` binary.
//!
//! [`run`] never exits the process; it returns the exit status together with
//! the text destined for stdout and stderr.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use unigeom::classify::{preset, spec_from_quadric, QuadricSignature};
use unigeom::gtrig::{scaled_c_fn, scaled_s_fn, scaled_t_fn};
use unigeom::lineal::{cone_volume, measure_between, parallelepiped_volume};
use unigeom::text::{format_number, parse_lineal, parse_matrix, parse_points};
use unigeom::triangle::{right_relations, solve_sas};
use unigeom::{Characteristic, CoordinateMatrix, Error, ExtendedReal, Lineal, Measure, Motion, MeasureClass, RightInputs, Specification};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

const GRAMMAR: &str = "\
Text forms:
  spec     characteristics in {-1,0,1}, comma separated, optional scales: `-1,1,1` or `-1,1,1;r=2,1,1`
  matrix   rows separated by `;`, entries by `,`: `1,0;0,1`
  lineal   a matrix whose columns span the lineal, optionally followed by ` cols=i,j,…`
           giving the ambient slot of each column (the columns must then be orthonormal)
  points   points separated by `;`, coordinates by `:`: `1:0:0;0:1:0`
Angles and lengths are native measures. Numbers are printed with 12 significant digits.
Exit status: 0 success, 2 malformed input, 3 no solution in the given space.";

#[derive(Debug, Parser)]
#[command(name = "unigeom", version, about = "Geometry calculator for spaces given by a specification {k1,…,kn}", after_help = GRAMMAR)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate C, S or T of a characteristic.
    Trig(TrigArgs),
    /// Derive a specification from a quadric signature or a preset name.
    Classify(ClassifyArgs),
    /// Solve triangles.
    #[command(subcommand)]
    Triangle(TriangleCommand),
    /// Work with motion matrices.
    #[command(subcommand)]
    Motion(MotionCommand),
    /// Measures between lineals.
    #[command(subcommand)]
    Lineal(LinealCommand),
    /// Parallelepiped and figure volumes.
    #[command(subcommand)]
    Volume(VolumeCommand),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TrigFn {
    C,
    S,
    T,
}

#[derive(Debug, Args)]
struct TrigArgs {
    /// Characteristic: -1, 0 or 1.
    #[arg(long, allow_hyphen_values = true)]
    k: i8,
    #[arg(long = "fn", value_enum)]
    function: TrigFn,
    #[arg(long, allow_hyphen_values = true)]
    x: f64,
    /// Scale r: the function is evaluated at x / r.
    #[arg(long, default_value_t = 1.0)]
    r: f64,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["quadric", "preset"])))]
struct ClassifyArgs {
    /// Diagonal signs such as `+,-,-,-`.
    #[arg(long, allow_hyphen_values = true)]
    quadric: Option<String>,
    /// The signs are those of a linear distance form (k1 = 0); otherwise they are the ⊙ weights K_0..K_n.
    #[arg(long, requires = "quadric")]
    linear: bool,
    /// euclidean, elliptic, hyperbolic, minkowski, galilean or cylinder-complete.
    #[arg(long)]
    preset: Option<String>,
    /// Dimension of the preset.
    #[arg(long, requires = "preset")]
    dim: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum TriangleCommand {
    /// Two sides b, c and the included angle alpha.
    Sas(SasArgs),
    /// Right quasi-triangle from any two of a, b, c, alpha, beta-ext.
    Right(RightArgs),
}

#[derive(Debug, Args)]
struct SasArgs {
    #[arg(long, allow_hyphen_values = true)]
    spec: String,
    #[arg(long)]
    b: f64,
    #[arg(long)]
    c: f64,
    #[arg(long)]
    alpha: f64,
}

#[derive(Debug, Args)]
struct RightArgs {
    #[arg(long, allow_hyphen_values = true)]
    spec: String,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long = "beta-ext")]
    beta_ext: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum MotionCommand {
    /// Factor a motion into rotations R_ij and a reflection.
    Decompose(MatrixArgs),
}

#[derive(Debug, Args)]
struct MatrixArgs {
    #[arg(long, allow_hyphen_values = true)]
    spec: String,
    #[arg(long, allow_hyphen_values = true)]
    matrix: String,
}

#[derive(Debug, Subcommand)]
enum LinealCommand {
    /// Measures phi and psi between lineals X and Y, dim X ≤ dim Y.
    Measure(MeasureArgs),
}

#[derive(Debug, Args)]
struct MeasureArgs {
    #[arg(long, allow_hyphen_values = true)]
    spec: String,
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    #[arg(long, allow_hyphen_values = true)]
    y: String,
}

#[derive(Debug, Subcommand)]
enum VolumeCommand {
    /// Volume of the parallelepiped on the matrix columns.
    Parallelepiped(MatrixArgs),
    /// Monte-Carlo volume of the curved simplex on n+1 vertices.
    Cone(ConeArgs),
}

#[derive(Debug, Args)]
struct ConeArgs {
    #[arg(long, allow_hyphen_values = true)]
    spec: String,
    #[arg(long, allow_hyphen_values = true)]
    vertices: String,
    #[arg(long, default_value_t = 1_000_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Exit status plus the text for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn ok(stdout: String) -> Self {
        CommandResult {
            status: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(status: i32, stderr: String) -> Self {
        CommandResult {
            status,
            stdout: String::new(),
            stderr,
        }
    }
}

/// Named output fields, each with a text and a JSON rendering.
///
/// A report with a single bare field prints only its value in text mode.
struct Report {
    fields: Vec<(String, String, Value)>,
    bare: bool,
}

impl Report {
    fn new() -> Self {
        Report { fields: Vec::new(), bare: false }
    }

    fn single(name: &str, text: String, json: Value) -> Self {
        Report {
            fields: vec![(name.to_string(), text, json)],
            bare: true,
        }
    }

    fn push(&mut self, name: &str, text: String, json: Value) -> &mut Self {
        self.fields.push((name.to_string(), text, json));
        self
    }

    fn number(&mut self, name: &str, x: f64) -> &mut Self {
        self.push(name, format_number(x), number_json(x))
    }

    fn measure(&mut self, name: &str, m: &Measure) -> &mut Self {
        self.push(name, measure_text(m), measure_json(m))
    }

    fn annotated(&mut self, name: &str, m: &Measure) -> &mut Self {
        self.push(name, annotated_text(m), measure_json(m))
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Text if self.bare => self.fields.iter().map(|(_, t, _)| format!("{t}\n")).collect(),
            Format::Text => self.fields.iter().map(|(n, t, _)| format!("{n} = {t}\n")).collect(),
            Format::Json => {
                let map: Map<String, Value> = self.fields.iter().map(|(n, _, j)| (n.clone(), j.clone())).collect();
                format!("{}\n", Value::Object(map))
            }
        }
    }
}

/// A JSON number rounded to the printed precision; non-finite values become strings.
fn number_json(x: f64) -> Value {
    let text = format_number(x);
    match text.parse::<f64>() {
        Ok(v) if v.is_finite() => json!(v),
        _ => Value::String(text),
    }
}

fn extended_text(v: ExtendedReal) -> String {
    match v {
        ExtendedReal::Finite(x) => format_number(x),
        other => other.to_string(),
    }
}

fn extended_json(v: ExtendedReal) -> Value {
    match v {
        ExtendedReal::Finite(x) => number_json(x),
        other => Value::String(other.to_string()),
    }
}

/// The value alone when measurable, otherwise annotated like [`annotated_text`].
fn measure_text(m: &Measure) -> String {
    if m.class == MeasureClass::Measurable {
        extended_text(m.value)
    } else {
        annotated_text(m)
    }
}

fn annotated_text(m: &Measure) -> String {
    format!("{} (k={}, {})", extended_text(m.value), m.characteristic, m.class)
}

fn measure_json(m: &Measure) -> Value {
    json!({
        "value": extended_json(m.value),
        "characteristic": m.characteristic.value(),
        "class": m.class.to_string(),
    })
}

fn exit_code(e: &Error) -> i32 {
    if e.is_parse() || matches!(e, Error::UnknownPreset(_)) {
        EXIT_PARSE
    } else {
        EXIT_DOMAIN
    }
}

fn parse_spec(s: &str) -> Result<Specification, Error> {
    s.parse()
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => CommandResult::ok(text),
                _ => CommandResult::fail(EXIT_PARSE, text),
            };
        }
    };
    match execute(&cli.command) {
        Ok(report) => CommandResult::ok(report.render(cli.format)),
        Err(e) => CommandResult::fail(exit_code(&e), format!("error: {e}\n")),
    }
}

fn execute(cmd: &Command) -> Result<Report, Error> {
    let mut r = Report::new();
    match cmd {
        Command::Trig(a) => {
            let k = Characteristic::from_sign(a.k).map_err(|e| Error::Parse(e.to_string()))?;
            if !(a.r > 0.0 && a.r.is_finite()) {
                return Err(Error::Parse(format!("scale {} is not a positive real", a.r)));
            }
            let (name, v) = match a.function {
                TrigFn::C => ("c", ExtendedReal::Finite(scaled_c_fn(a.x, k, a.r)?)),
                TrigFn::S => ("s", ExtendedReal::Finite(scaled_s_fn(a.x, k, a.r)?)),
                TrigFn::T => ("t", scaled_t_fn(a.x, k, a.r)?),
            };
            return Ok(Report::single(name, extended_text(v), extended_json(v)));
        }
        Command::Classify(a) => {
            let spec = match (&a.quadric, &a.preset) {
                (Some(q), _) => spec_from_quadric(&QuadricSignature::parse(q, a.linear)?)?,
                (None, Some(p)) => preset(p, a.dim)?,
                (None, None) => unreachable!("clap requires one source"),
            };
            let ks: Vec<i8> = spec.characteristics().iter().map(|k| k.value()).collect();
            return Ok(Report::single("spec", spec.to_string(), json!(ks)));
        }
        Command::Triangle(TriangleCommand::Sas(a)) => {
            let spec = parse_spec(&a.spec)?;
            let sol = solve_sas(a.b, a.c, a.alpha, &spec)?;
            r.measure("a", &sol.a).measure("gamma", &sol.gamma).measure("beta_ext", &sol.beta_ext);
            if let Some(b) = &sol.beta_int {
                r.measure("beta", b);
            }
        }
        Command::Triangle(TriangleCommand::Right(a)) => {
            let spec = parse_spec(&a.spec)?;
            if [a.a, a.b, a.c, a.alpha, a.beta_ext].iter().flatten().count() != 2 {
                return Err(Error::Parse("give exactly two of --a, --b, --c, --alpha, --beta-ext".into()));
            }
            let inputs = RightInputs {
                a: a.a,
                b: a.b,
                c: a.c,
                alpha: a.alpha,
                beta_ext: a.beta_ext,
            };
            let sol = right_relations(inputs, &spec)?;
            r.measure("a", &sol.a)
                .measure("b", &sol.b)
                .measure("c", &sol.c)
                .measure("alpha", &sol.alpha)
                .measure("beta_ext", &sol.beta_ext);
        }
        Command::Motion(MotionCommand::Decompose(a)) => {
            let spec = parse_spec(&a.spec)?;
            let motion = Motion::from_matrix(parse_matrix(&a.matrix)?, &spec)?;
            let (e, steps) = motion.decompose()?;
            let diag: Vec<String> = e.diagonal.iter().map(|d| d.to_string()).collect();
            r.push("reflection", diag.join(","), json!(e.diagonal));
            let text: Vec<String> = steps
                .iter()
                .map(|s| format!("R_{},{}({}) k={}", s.i, s.j, format_number(s.phi), s.kind))
                .collect();
            let json_steps: Vec<Value> = steps
                .iter()
                .map(|s| json!({"i": s.i, "j": s.j, "phi": number_json(s.phi), "characteristic": s.kind.value()}))
                .collect();
            r.push("steps", text.join(" "), Value::Array(json_steps));
        }
        Command::Lineal(LinealCommand::Measure(a)) => {
            let spec = parse_spec(&a.spec)?;
            let x = lineal_arg(&a.x, &spec)?;
            let y = lineal_arg(&a.y, &spec)?;
            let m = measure_between(&x, &y)?;
            r.annotated("phi", &m.phi)
                .annotated("psi", &m.psi)
                .push("characteristic", m.characteristic.to_string(), json!(m.characteristic.value()))
                .number("det_proj", m.det_proj)
                .number("det_perp", m.det_perp);
        }
        Command::Volume(VolumeCommand::Parallelepiped(a)) => {
            let spec = parse_spec(&a.spec)?;
            let v = CoordinateMatrix::new(parse_matrix(&a.matrix)?, &spec)?;
            r.number("volume", parallelepiped_volume(&v)?);
        }
        Command::Volume(VolumeCommand::Cone(a)) => {
            let spec = parse_spec(&a.spec)?;
            let est = cone_volume(&parse_points(&a.vertices)?, &spec, a.samples, a.seed)?;
            r.number("volume", est.value)
                .number("std_error", est.std_error)
                .push("samples", est.samples.to_string(), json!(est.samples));
        }
    }
    Ok(r)
}

/// A lineal given by spanning columns, or by orthonormal columns with `cols=` slots.
fn lineal_arg(s: &str, spec: &Specification) -> Result<Lineal, Error> {
    match parse_lineal(s)? {
        (m, Some(slots)) => Lineal::new(m, Some(slots), spec),
        (m, None) => Lineal::from_span(m, spec),
    }
}
