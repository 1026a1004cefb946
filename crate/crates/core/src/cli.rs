//! Command-line front end for the `grd` binary.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::families::{eta_push_m21, eta_push_marked, eta_push_mogb, ClassLabel};
use crate::invariants::{rho, vanishing_sum, GrdParams};
use crate::picard::{epsilon_matrix, pullback_i, pullback_j, pullback_k, DivisorClass, PicSpace};
use crate::pushforward::{assemble_via_families, eta_closed_form};
use crate::schubert::{special_power_integral, zeta_power_integral_oracle, BoxPartition, GrassShape};
use crate::slope::{m_family, slope_report};
use crate::verify::{
    class_json, first_difference, full_class_json, golden_document, rational_json, run_all, slope_json,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "grd",
    version,
    about = "Exact intersection numbers for linear series on curves"
)]
pub struct Cli {
    /// Output format (default: json; pretty for `verify`).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// key = value file supplying defaults for format, g_max, m_max, golden.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Pretty,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct TripleArgs {
    #[arg(long)]
    pub g: u32,
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub d: u32,
}

impl TripleArgs {
    fn rho_zero(&self) -> Result<GrdParams> {
        GrdParams::rho_zero(self.g, self.r, self.d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    Alpha,
    Beta,
    Gamma,
}

impl From<ClassArg> for ClassLabel {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::Alpha => ClassLabel::Alpha,
            ClassArg::Beta => ClassLabel::Beta,
            ClassArg::Gamma => ClassLabel::Gamma,
        }
    }
}

fn labels(class: Option<ClassArg>) -> Vec<ClassLabel> {
    match class {
        Some(c) => vec![c.into()],
        None => ClassLabel::ALL.to_vec(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SchubertMethod {
    Formula,
    Pieri,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PushMethod {
    Closed,
    Assembled,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    M21,
    Marked,
    Mogb,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PullbackMap {
    I,
    J,
    K,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// ρ, N, ξ and (with --h) the vanishing-order sum.
    Invariants {
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long)]
        h: Option<u32>,
    },
    /// ∫ ζ^k σ_b on G(r, P^d).
    Schubert {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        k: u32,
        /// Weakly increasing index, comma separated; defaults to all zeros.
        #[arg(long)]
        b: Option<String>,
        #[arg(long, value_enum, default_value = "both")]
        method: SchubertMethod,
    },
    /// Pullbacks along the test families and the ε-matrix.
    Picard {
        #[command(subcommand)]
        command: PicardCommand,
    },
    /// η_* of α, β, γ over one test family.
    Families {
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        h: Option<u32>,
        #[arg(long, value_enum)]
        class: Option<ClassArg>,
    },
    /// η_* of α, β or γ on M̃_{g,1}.
    Pushforward {
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long, value_enum, default_value = "closed")]
        method: PushMethod,
    },
    /// Slope of the quadric divisor E.
    Slope {
        #[arg(long)]
        g: Option<u32>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        d: Option<u32>,
        /// Member of the family (m(2m+1), 2m, 2m(m+1)).
        #[arg(long)]
        m: Option<u32>,
        /// Reports for m = 1..=M.
        #[arg(long, value_name = "M")]
        sweep: Option<u32>,
    },
    /// Runs every cross-check.
    Verify {
        #[arg(long)]
        g_max: Option<u32>,
        #[arg(long)]
        m_max: Option<u32>,
        /// Directory of golden files: written when absent, compared otherwise.
        #[arg(long)]
        golden: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum PicardCommand {
    Pullback {
        #[arg(value_enum)]
        map: PullbackMap,
        #[arg(long)]
        g: u32,
        #[arg(long)]
        h: Option<u32>,
        /// Class on M̃_{g,1}, e.g. "lambda:1,delta_6:-2".
        #[arg(long)]
        class: String,
    },
    Epsilon {
        #[arg(long)]
        g: u32,
    },
}

/// Defaults read from `--config`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FileConfig {
    pub format: Option<Format>,
    pub g_max: Option<u32>,
    pub m_max: Option<u32>,
    pub golden: Option<PathBuf>,
}

impl FileConfig {
    /// Parses `key = value` lines. `#` starts a comment, values may be double
    /// quoted, `-` and `_` are interchangeable in keys.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = FileConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| Error::Parse(format!("config line {}: {msg}", lineno + 1));
            let (key, value) = line.split_once('=').ok_or_else(|| bad("expected key = value"))?;
            let key = key.trim().replace('-', "_");
            let value = value.trim();
            let value = value
                .strip_prefix('"')
                .and_then(|v| v.strip_suffix('"'))
                .unwrap_or(value);
            let int = || {
                value
                    .parse::<u32>()
                    .map_err(|_| bad(&format!("{key} must be a non-negative integer")))
            };
            match key.as_str() {
                "format" => {
                    cfg.format =
                        Some(Format::from_str(value, true).map_err(|_| bad(&format!("unknown format {value:?}")))?)
                }
                "g_max" => cfg.g_max = Some(int()?),
                "m_max" => cfg.m_max = Some(int()?),
                "golden" => cfg.golden = Some(PathBuf::from(value)),
                other => return Err(bad(&format!("unknown key {other:?}"))),
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

/// What a command produced: a document to print and whether it passed.
struct Output {
    value: Value,
    default_format: Format,
    columns: Option<&'static [&'static str]>,
    failure: Option<String>,
}

impl Output {
    fn data(value: Value) -> Self {
        Output {
            value,
            default_format: Format::Json,
            columns: None,
            failure: None,
        }
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let config = match cli.config.as_deref().map(FileConfig::load).transpose() {
        Ok(c) => c.unwrap_or_default(),
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    match execute(&cli.command, &config) {
        Ok(out) => {
            let format = cli.format.or(config.format).unwrap_or(out.default_format);
            print!("{}", render_columns(&out.value, format, out.columns));
            match out.failure {
                None => EXIT_OK,
                Some(msg) => {
                    eprintln!("{msg}");
                    EXIT_VERIFY
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_consistency_failure() {
                EXIT_VERIFY
            } else {
                EXIT_USAGE
            }
        }
    }
}

fn execute(cmd: &Command, config: &FileConfig) -> Result<Output> {
    match cmd {
        Command::Invariants { triple, h } => cmd_invariants(triple, *h).map(Output::data),
        Command::Schubert { r, d, k, b, method } => cmd_schubert(*r, *d, *k, b.as_deref(), *method).map(Output::data),
        Command::Picard { command } => cmd_picard(command).map(Output::data),
        Command::Families {
            triple,
            family,
            h,
            class,
        } => cmd_families(triple, *family, *h, *class).map(Output::data),
        Command::Pushforward { triple, class, method } => {
            cmd_pushforward(triple, (*class).into(), *method).map(Output::data)
        }
        Command::Slope { g, r, d, m, sweep } => cmd_slope(*g, *r, *d, *m, *sweep).map(Output::data),
        Command::Verify { g_max, m_max, golden } => cmd_verify(
            g_max.or(config.g_max).unwrap_or(12),
            m_max.or(config.m_max).unwrap_or(15),
            golden.as_deref().or(config.golden.as_deref()),
        ),
    }
}

fn cmd_invariants(t: &TripleArgs, h: Option<u32>) -> Result<Value> {
    let p = GrdParams::new(t.g, t.r, t.d);
    let mut out = Map::new();
    out.insert("rho".into(), Value::String(rho(t.g, t.r, t.d).to_string()));
    if p.xi_denominator() != 0 {
        out.insert("xi".into(), rational_json(&p.xi()?));
    }
    if p.rho() == 0 {
        out.insert("N".into(), rational_json(&p.n()?));
    }
    if let Some(h) = h {
        out.insert(
            "vanishing_sum".into(),
            Value::String(vanishing_sum(h, t.r, t.d).to_string()),
        );
    }
    Ok(Value::Object(out))
}

fn cmd_schubert(r: u32, d: u32, k: u32, b: Option<&str>, method: SchubertMethod) -> Result<Value> {
    let shape = GrassShape::new(r, d)?;
    let b = match b {
        Some(s) => BoxPartition::parse(shape, s)?,
        None => BoxPartition::zero(shape),
    };
    let formula = || special_power_integral(shape, k, &b);
    let pieri = || zeta_power_integral_oracle(shape, k, &b);
    let value = match method {
        SchubertMethod::Formula => formula()?,
        SchubertMethod::Pieri => pieri()?,
        SchubertMethod::Both => {
            let (f, p) = (formula()?, pieri()?);
            if f != p {
                return Err(Error::Mismatch(format!("formula {f} != Pieri {p}")));
            }
            f
        }
    };
    Ok(json!({ "integral": rational_json(&value) }))
}

fn cmd_picard(cmd: &PicardCommand) -> Result<Value> {
    match cmd {
        PicardCommand::Pullback { map, g, h, class } => {
            let c = DivisorClass::parse(PicSpace::Mg1(*g), class)?;
            match map {
                PullbackMap::I => Ok(class_json(&pullback_i(*g, &c)?)),
                PullbackMap::J => Ok(class_json(&pullback_j(*g, &c)?)),
                PullbackMap::K => {
                    let h = h.ok_or_else(|| Error::precondition("pullback k needs --h"))?;
                    Ok(json!({ "degree": rational_json(&pullback_k(*g, h, &c)?) }))
                }
            }
        }
        PicardCommand::Epsilon { g } => {
            let m = epsilon_matrix(*g)?;
            let rows: Vec<Value> = m
                .to_rows()
                .iter()
                .map(|row| Value::Array(row.iter().map(rational_json).collect()))
                .collect();
            let det = m.determinant()?;
            Ok(json!({
                "matrix": rows,
                "determinant": rational_json(&det),
                "nonsingular": !det.is_zero(),
            }))
        }
    }
}

fn cmd_families(t: &TripleArgs, family: Family, h: Option<u32>, class: Option<ClassArg>) -> Result<Value> {
    let p = t.rho_zero()?;
    let mut out = Map::new();
    for label in labels(class) {
        let v = match family {
            Family::M21 => class_json(&eta_push_m21(&p, label)?),
            Family::Mogb => class_json(&eta_push_mogb(p.g, label)),
            Family::Marked => {
                let h = h.ok_or_else(|| Error::precondition("family marked needs --h"))?;
                rational_json(&eta_push_marked(&p, h, label)?)
            }
        };
        out.insert(label.to_string(), v);
    }
    Ok(Value::Object(out))
}

fn cmd_pushforward(t: &TripleArgs, label: ClassLabel, method: PushMethod) -> Result<Value> {
    let p = t.rho_zero()?;
    let class = match method {
        PushMethod::Closed => eta_closed_form(&p, label)?,
        PushMethod::Assembled => assemble_via_families(&p, label)?.to_class(),
        PushMethod::Both => {
            let closed = eta_closed_form(&p, label)?;
            let assembled = assemble_via_families(&p, label)?.to_class();
            if closed != assembled {
                return Err(Error::Mismatch(format!(
                    "{p} {label}: closed form {closed} != assembled {assembled}"
                )));
            }
            closed
        }
    };
    Ok(full_class_json(&class))
}

fn cmd_slope(g: Option<u32>, r: Option<u32>, d: Option<u32>, m: Option<u32>, sweep: Option<u32>) -> Result<Value> {
    match (g, r, d, m, sweep) {
        (Some(g), Some(r), Some(d), None, None) => Ok(slope_json(&slope_report(&GrdParams::rho_zero(g, r, d)?)?)),
        (None, None, None, Some(m), None) => Ok(slope_json(&m_family(m)?)),
        (None, None, None, None, Some(m_max)) => {
            let rows = (1..=m_max)
                .map(|m| m_family(m).map(|s| slope_json(&s)))
                .collect::<Result<Vec<_>>>()?;
            Ok(Value::Array(rows))
        }
        _ => Err(Error::precondition(
            "slope needs exactly one of: --g/--r/--d together, --m, --sweep",
        )),
    }
}

fn cmd_verify(g_max: u32, m_max: u32, golden: Option<&Path>) -> Result<Output> {
    let outcomes = run_all(g_max, m_max)?;
    let mut rows: Vec<Value> = outcomes
        .iter()
        .map(|o| {
            json!({
                "check": o.name,
                "status": if o.passed() { "PASS" } else { "FAIL" },
                "cases": o.checked,
                "skipped": o.skipped.len(),
            })
        })
        .collect();
    let mut failure = outcomes
        .iter()
        .find_map(|o| o.failure.as_ref().map(|e| format!("{} failed: {e}", o.name)));

    if let Some(dir) = golden {
        let (status, problem) = golden_check(dir, g_max, m_max)?;
        rows.push(json!({ "check": "golden", "status": status, "cases": 1, "skipped": 0 }));
        if failure.is_none() {
            failure = problem;
        }
    }
    Ok(Output {
        value: Value::Array(rows),
        default_format: Format::Pretty,
        columns: Some(&["check", "status", "cases", "skipped"]),
        failure,
    })
}

fn golden_check(dir: &Path, g_max: u32, m_max: u32) -> Result<(&'static str, Option<String>)> {
    let doc = golden_document(g_max, m_max)?;
    let path = dir.join(format!("verify-g{g_max}-m{m_max}.json"));
    let io = |e: std::io::Error| Error::Parse(format!("{}: {e}", path.display()));
    if !path.exists() {
        fs::create_dir_all(dir).map_err(io)?;
        let text = serde_json::to_string_pretty(&doc).expect("serializable") + "\n";
        fs::write(&path, text).map_err(io)?;
        return Ok(("WRITTEN", None));
    }
    let stored: Value = serde_json::from_str(&fs::read_to_string(&path).map_err(io)?)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Ok(match first_difference(&stored, &doc) {
        None => ("PASS", None),
        Some(diff) => (
            "FAIL",
            Some(format!("golden file {} differs at {diff}", path.display())),
        ),
    })
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flatten(v: &Value, prefix: &str, out: &mut Vec<(String, String)>) {
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                flatten(x, &join(k), out);
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                flatten(x, &join(&i.to_string()), out);
            }
        }
        other => out.push((prefix.to_string(), scalar(other))),
    }
}

// Rows of a homogeneous array of flat objects. Columns follow `columns`
// when given, else the (sorted) keys of the first row.
fn table(v: &Value, columns: Option<&[&str]>) -> Option<(Vec<String>, Vec<Vec<String>>)> {
    let items = v.as_array()?;
    let first = items.first()?.as_object()?;
    let header: Vec<String> = match columns {
        Some(cols) => cols.iter().map(|c| c.to_string()).collect(),
        None => first.keys().cloned().collect(),
    };
    let mut rows = Vec::new();
    for item in items {
        let obj = item.as_object()?;
        if obj.values().any(|x| x.is_object() || x.is_array()) {
            return None;
        }
        rows.push(
            header
                .iter()
                .map(|k| obj.get(k).map(scalar).unwrap_or_default())
                .collect(),
        );
    }
    Some((header, rows))
}

/// Serializes command output. JSON keys are sorted; TSV and pretty output
/// flatten nested keys with `.`, and print arrays of flat objects as tables.
pub fn render(v: &Value, format: Format) -> String {
    render_columns(v, format, None)
}

fn render_columns(v: &Value, format: Format, columns: Option<&[&str]>) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("serializable") + "\n",
        Format::Tsv => {
            let mut s = String::new();
            if let Some((header, rows)) = table(v, columns) {
                let _ = writeln!(s, "{}", header.join("\t"));
                for row in rows {
                    let _ = writeln!(s, "{}", row.join("\t"));
                }
            } else {
                let mut flat = Vec::new();
                flatten(v, "", &mut flat);
                for (k, x) in flat {
                    let _ = writeln!(s, "{k}\t{x}");
                }
            }
            s
        }
        Format::Pretty => {
            let mut s = String::new();
            if let Some((header, rows)) = table(v, columns) {
                let widths: Vec<usize> = (0..header.len())
                    .map(|j| {
                        rows.iter()
                            .map(|r| r[j].len())
                            .chain([header[j].len()])
                            .max()
                            .unwrap_or(0)
                    })
                    .collect();
                let line = |cells: &[String]| {
                    cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, w)| format!("{c:<w$}"))
                        .collect::<Vec<_>>()
                        .join("  ")
                        .trim_end()
                        .to_string()
                };
                let _ = writeln!(s, "{}", line(&header));
                for row in &rows {
                    let _ = writeln!(s, "{}", line(row));
                }
            } else {
                let mut flat = Vec::new();
                flatten(v, "", &mut flat);
                let w = flat.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, x) in flat {
                    let _ = writeln!(s, "{k:<w$}  {x}");
                }
            }
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_parsing() {
        let cfg =
            FileConfig::parse("# defaults\nformat = tsv\ng-max=8\nm_max = \"3\"  # inline\n\ngolden=/tmp/x\n").unwrap();
        assert_eq!(cfg.format, Some(Format::Tsv));
        assert_eq!(cfg.g_max, Some(8));
        assert_eq!(cfg.m_max, Some(3));
        assert_eq!(cfg.golden, Some(PathBuf::from("/tmp/x")));
        assert!(FileConfig::parse("colour = red").is_err());
        assert!(FileConfig::parse("g_max = -1").is_err());
        assert!(FileConfig::parse("format").is_err());
    }

    #[test]
    fn render_formats() {
        let v = json!({"b": {"x": "1/2"}, "a": true});
        assert_eq!(render(&v, Format::Tsv), "a\ttrue\nb.x\t1/2\n");
        assert_eq!(render(&v, Format::Pretty), "a    true\nb.x  1/2\n");
        let t = json!([{"k": "1", "v": "x"}, {"k": "22", "v": "y"}]);
        assert_eq!(render(&t, Format::Tsv), "k\tv\n1\tx\n22\ty\n");
        assert_eq!(render(&t, Format::Pretty), "k   v\n1   x\n22  y\n");
    }

    #[test]
    fn slope_argument_combinations() {
        assert!(cmd_slope(Some(21), Some(6), None, None, None).is_err());
        assert!(cmd_slope(None, None, None, Some(2), Some(3)).is_err());
        assert_eq!(cmd_slope(None, None, None, Some(2), None).unwrap()["ratio"], "7");
    }
}
