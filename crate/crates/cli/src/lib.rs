//! Command-line front end for the `renner` library.
//!
//! [`run`] performs a parsed command and returns its rendered output, so the
//! binary and the tests share a single code path.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use renner::order::{leq, mobius_direct, OrbitPoset};
use renner::{
    classify_interval, descent_sets, interval, mobius_via_r, orbit, rpoly, standard_form, PartialPerm, RankIdempotent,
};
use serde::Serialize;
use serde_json::json;

pub mod tables;
pub mod verify;

/// Largest rank accepted by any command.
pub const MAX_N: usize = 8;

#[derive(Parser, Debug)]
#[command(
    name = "renner",
    version,
    about = "Bruhat-Chevalley order, R-polynomials and Möbius functions on rook monoid orbits"
)]
pub struct Cli {
    /// Rank of the rook monoid R_n.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Rank of the orbit W e_k W.
    #[arg(long, global = true)]
    pub k: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Tsv,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List an orbit with lengths, standard forms and descent sets.
    Orbit,
    /// R-polynomial, constant term, Möbius value and shape of [THETA, SIGMA].
    Rpoly { theta: String, sigma: String },
    /// Möbius function of [THETA, SIGMA], from the order and from R(0).
    Mobius { theta: String, sigma: String },
    /// Length, standard form and descent sets of an element.
    Descents { sigma: String },
    /// Compare two elements of R_n.
    Order { theta: String, sigma: String },
    /// Hasse diagram of an interval, or of the orbit given by --n and --k.
    Hasse { theta: Option<String>, sigma: Option<String> },
    /// Reproduce a reference table.
    Table {
        #[arg(value_enum)]
        name: tables::TableName,
    },
    /// Run an exhaustive verification suite over all orbits of R_1, …, R_n.
    Verify {
        #[arg(value_enum)]
        suite: verify::Suite,
    },
}

/// Bad arguments; reported with exit status 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

impl From<renner::Error> for UsageError {
    fn from(e: renner::Error) -> Self {
        UsageError(e.to_string())
    }
}

/// Rendered output and whether a verification found violations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub violations: bool,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, violations: false }
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.violations)
    }
}

type CmdResult = Result<Outcome, UsageError>;

fn check_n(n: usize) -> Result<usize, UsageError> {
    if !(1..=MAX_N).contains(&n) {
        return Err(UsageError(format!("n = {n} is outside 1..={MAX_N}")));
    }
    Ok(n)
}

fn parse_element(cli: &Cli, s: &str) -> Result<PartialPerm, UsageError> {
    let p: PartialPerm = s.parse()?;
    check_n(p.n())?;
    if let Some(n) = cli.n {
        if n != p.n() {
            return Err(UsageError(format!("{p} has n = {} but --n {n} was given", p.n())));
        }
    }
    Ok(p)
}

fn orbit_from_flags(cli: &Cli) -> Result<RankIdempotent, UsageError> {
    let n = check_n(cli.n.ok_or_else(|| UsageError("--n is required".into()))?)?;
    let k = cli.k.ok_or_else(|| UsageError("--k is required".into()))?;
    if k > n {
        return Err(UsageError(format!("k = {k} exceeds n = {n}")));
    }
    Ok(RankIdempotent::new(n, k)?)
}

fn unsupported(cli: &Cli) -> UsageError {
    UsageError(format!("format {:?} is not available for this command", cli.format).to_lowercase())
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn run(cli: &Cli) -> CmdResult {
    if let Some(n) = cli.n {
        check_n(n)?;
    }
    match &cli.command {
        Command::Orbit => cmd_orbit(cli),
        Command::Rpoly { theta, sigma } => cmd_rpoly(cli, theta, sigma),
        Command::Mobius { theta, sigma } => cmd_mobius(cli, theta, sigma),
        Command::Descents { sigma } => cmd_descents(cli, sigma),
        Command::Order { theta, sigma } => cmd_order(cli, theta, sigma),
        Command::Hasse { theta, sigma } => cmd_hasse(cli, theta.as_deref(), sigma.as_deref()),
        Command::Table { name } => tables::cmd_table(cli, *name),
        Command::Verify { suite } => verify::cmd_verify(cli, *suite),
    }
}

#[derive(Serialize)]
struct OrbitRow {
    element: PartialPerm,
    length: usize,
    standard_form: String,
    descents: renner::DescentSets,
}

fn cmd_orbit(cli: &Cli) -> CmdResult {
    let e = orbit_from_flags(cli)?;
    if cli.format == Format::Dot {
        return Ok(Outcome::ok(OrbitPoset::new(e).to_dot()));
    }
    let rows: Vec<OrbitRow> = orbit(&e)
        .into_iter()
        .map(|p| OrbitRow {
            length: p.length(),
            standard_form: standard_form(&p).to_string(),
            descents: descent_sets(&p),
            element: p,
        })
        .collect();
    let mut out = String::new();
    match cli.format {
        Format::Json => out = to_json(&rows),
        Format::Tsv => {
            out.push_str("element\tlength\tstandard_form\tdes_l\tdes_r\n");
            for r in &rows {
                writeln!(out, "{}\t{}\t{}\t{}", r.element, r.length, r.standard_form, r.descents).unwrap();
            }
        }
        _ => {
            let w = rows.iter().map(|r| r.standard_form.chars().count()).max().unwrap_or(0);
            for r in &rows {
                let d = &r.descents;
                writeln!(
                    out,
                    "{}  ℓ={:<2} {:<w$}  Des_L={}  Des_R={}",
                    r.element,
                    r.length,
                    r.standard_form,
                    renner::format_reflections(&d.left),
                    renner::format_reflections(&d.right),
                )
                .unwrap();
            }
        }
    }
    Ok(Outcome::ok(out))
}

fn same_orbit(theta: &PartialPerm, sigma: &PartialPerm) -> Result<(), UsageError> {
    if theta.rank() != sigma.rank() {
        return Err(UsageError(format!("{theta} and {sigma} lie in different orbits")));
    }
    Ok(())
}

fn cmd_rpoly(cli: &Cli, theta: &str, sigma: &str) -> CmdResult {
    let (theta, sigma) = (parse_element(cli, theta)?, parse_element(cli, sigma)?);
    same_orbit(&theta, &sigma)?;
    let r = rpoly(&theta, &sigma)?;
    let (mobius, shape, length) = if leq(&theta, &sigma)? {
        let c = classify_interval(&theta, &sigma)?;
        (c.mobius, c.shape.to_string(), Some(c.interval.length()))
    } else {
        (0, "incomparable".to_string(), None)
    };
    let out = match cli.format {
        Format::Json => to_json(&json!({
            "theta": theta,
            "sigma": sigma,
            "rpoly": r,
            "factored": r.display_factored(),
            "constant_term": r.constant_term(),
            "mobius": mobius,
            "length": length,
            "shape": shape,
        })),
        Format::Tsv => format!(
            "theta\tsigma\trpoly\tconstant_term\tmobius\tshape\n{theta}\t{sigma}\t{r}\t{}\t{mobius}\t{shape}\n",
            r.constant_term()
        ),
        Format::Text => format!(
            "R = {r}\nfactored = {}\nR(0) = {}\nmu = {mobius}\nshape = {shape}\n",
            r.display_factored(),
            r.constant_term()
        ),
        Format::Dot => return Err(unsupported(cli)),
    };
    Ok(Outcome::ok(out))
}

fn cmd_mobius(cli: &Cli, theta: &str, sigma: &str) -> CmdResult {
    let (theta, sigma) = (parse_element(cli, theta)?, parse_element(cli, sigma)?);
    same_orbit(&theta, &sigma)?;
    let direct = mobius_direct(&theta, &sigma)?;
    let via_r = mobius_via_r(&theta, &sigma)?;
    let out = match cli.format {
        Format::Json => to_json(&json!({ "theta": theta, "sigma": sigma, "mobius": direct, "r_constant_term": via_r })),
        Format::Tsv => format!("theta\tsigma\tmobius\tr_constant_term\n{theta}\t{sigma}\t{direct}\t{via_r}\n"),
        Format::Text => format!("mu = {direct}\nR(0) = {via_r}\n"),
        Format::Dot => return Err(unsupported(cli)),
    };
    Ok(Outcome::ok(out))
}

fn cmd_descents(cli: &Cli, sigma: &str) -> CmdResult {
    let sigma = parse_element(cli, sigma)?;
    let d = descent_sets(&sigma);
    let form = standard_form(&sigma);
    let (l, r) = (renner::format_reflections(&d.left), renner::format_reflections(&d.right));
    let out = match cli.format {
        Format::Json => {
            to_json(&OrbitRow { length: sigma.length(), standard_form: form.to_string(), descents: d, element: sigma })
        }
        Format::Tsv => {
            format!("element\tlength\tstandard_form\tdes_l\tdes_r\n{sigma}\t{}\t{form}\t{l}\t{r}\n", sigma.length())
        }
        Format::Text => format!("length = {}\nstandard form = {form}\nDes_L = {l}\nDes_R = {r}\n", sigma.length()),
        Format::Dot => return Err(unsupported(cli)),
    };
    Ok(Outcome::ok(out))
}

fn cmd_order(cli: &Cli, theta: &str, sigma: &str) -> CmdResult {
    let (theta, sigma) = (parse_element(cli, theta)?, parse_element(cli, sigma)?);
    if theta.n() != sigma.n() {
        return Err(UsageError(format!("{theta} and {sigma} have different n")));
    }
    let relation = match (leq(&theta, &sigma)?, leq(&sigma, &theta)?) {
        (true, true) => "=",
        (true, false) => "<",
        (false, true) => ">",
        (false, false) => "incomparable",
    };
    let out = match cli.format {
        Format::Json => to_json(&json!({ "theta": theta, "sigma": sigma, "relation": relation })),
        Format::Tsv => format!("theta\tsigma\trelation\n{theta}\t{sigma}\t{relation}\n"),
        Format::Text if relation == "incomparable" => format!("{theta} and {sigma} are incomparable\n"),
        Format::Text => format!("{theta} {relation} {sigma}\n"),
        Format::Dot => return Err(unsupported(cli)),
    };
    Ok(Outcome::ok(out))
}

fn cmd_hasse(cli: &Cli, theta: Option<&str>, sigma: Option<&str>) -> CmdResult {
    match (theta, sigma) {
        (Some(theta), Some(sigma)) => {
            let (theta, sigma) = (parse_element(cli, theta)?, parse_element(cli, sigma)?);
            same_orbit(&theta, &sigma)?;
            let iv = interval(&theta, &sigma)?;
            Ok(Outcome::ok(match cli.format {
                Format::Json => to_json(&iv),
                Format::Text | Format::Dot => iv.to_dot(),
                Format::Tsv => return Err(unsupported(cli)),
            }))
        }
        (None, None) => {
            let e = orbit_from_flags(cli)?;
            match cli.format {
                Format::Text | Format::Dot => Ok(Outcome::ok(OrbitPoset::new(e).to_dot())),
                _ => Err(unsupported(cli)),
            }
        }
        _ => Err(UsageError("hasse takes either two elements or none".into())),
    }
}
