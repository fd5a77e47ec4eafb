//! Command-line front end.

use crate::bases::{decompose, membership_b, Expansion, GenIndex, Membership, Witness};
use crate::error::{Error, Result};
use crate::geometry::{clebsch_form, gauge_difference, vector_potential_delta, vector_potential_radial};
use crate::liealg::bracket_in_basis;
use crate::normalform::{hamiltonian_reduce, normalize, rescale_leading};
use crate::parse::{parse_field, parse_poly};
use crate::poisson::poisson_bracket;
use crate::ratpoly::fmt_rational;
use crate::vfield::VField;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "nilfield",
    version,
    about = "Exact analysis of solenoidal, completely integrable triple-zero vector fields"
)]
pub struct Cli {
    /// Truncation grade for normal forms.
    #[arg(long, global = true, default_value_t = 6)]
    pub max_grade: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Read the vector field from this file instead of stdin.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Membership test: zero divergence and Δ a first integral.
    Verify,
    /// Unique expansion over the A, B, C generators.
    Decompose,
    /// Bracket of two B-generators, e.g. `bracket B 6 8 3 B 2 5 2`.
    Bracket {
        #[arg(num_args = 8, allow_negative_numbers = true, value_names = ["B", "L", "I", "K", "B", "L", "I", "K"])]
        generators: Vec<String>,
    },
    /// Poisson bracket {f, g} of two polynomials.
    Poisson { f: String, g: String },
    /// Normal form, its coefficients and the secondary invariant.
    NormalForm {
        /// Also rescale the leading coefficient to ±1.
        #[arg(long)]
        rescale: bool,
    },
    /// Clebsch potentials (Δ, S).
    Clebsch,
    /// Δ-form and radial vector potentials and their gauge difference.
    VectorPotential,
    /// Planar Hamiltonian reduction of the normal form.
    Hamiltonian,
}

impl Command {
    fn needs_field(&self) -> bool {
        !matches!(self, Command::Bracket { .. } | Command::Poisson { .. })
    }
}

/// Text and JSON renderings of one command's result.
pub struct Report {
    pub text: String,
    pub json: Value,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => serde_json::to_string_pretty(&self.json).unwrap(),
        }
    }
}

pub fn error_json(e: &Error) -> Value {
    let mut obj = json!({"error": {"kind": e.kind(), "message": e.to_string(), "exitCode": e.exit_code()}});
    if let Error::Parse { pos, .. } = e {
        obj["error"]["position"] = json!(pos);
    }
    obj
}

fn expansion_json(e: &Expansion) -> Value {
    json!({"terms": e.records(), "text": e.to_string()})
}

fn field_json(v: &VField) -> Value {
    json!({"dx": v.cx.to_string(), "dy": v.cy.to_string(), "dz": v.cz.to_string()})
}

fn parse_generator(tokens: &[String]) -> Result<GenIndex> {
    let bad = |msg: String| Error::Parse { pos: 0, msg };
    if tokens[0] != "B" {
        return Err(bad(format!("expected 'B', found '{}'", tokens[0])));
    }
    let num = |t: &String| t.parse::<i64>().map_err(|_| bad(format!("expected an integer, found '{t}'")));
    let (l, i, k) = (num(&tokens[1])?, num(&tokens[2])?, num(&tokens[3])?);
    if k < 0 {
        return Err(Error::pre(format!("k = {k} must be nonnegative")));
    }
    let idx = GenIndex::b(l as i32, i as i32, k as u32);
    idx.validate()?;
    Ok(idx)
}

/// Runs one command; `input` is the field text for commands that need it.
pub fn execute(cli: &Cli, input: Option<&str>) -> Result<Report> {
    let field = || -> Result<VField> { parse_field(input.unwrap_or("")) };
    match &cli.command {
        Command::Verify => {
            let v = field()?;
            Ok(match membership_b(&v) {
                Membership::Yes => Report { text: "yes".into(), json: json!({"member": true}) },
                Membership::No(w) => {
                    let (kind, poly) = match &w {
                        Witness::Divergence(p) => ("divergence", p),
                        Witness::DeltaDerivative(p) => ("deltaDerivative", p),
                    };
                    Report {
                        text: format!("no: {w}"),
                        json: json!({"member": false, "witness": {"kind": kind, "value": poly.to_string()}}),
                    }
                }
            })
        }
        Command::Decompose => {
            let e = decompose(&field()?)?;
            Ok(Report { text: e.to_string(), json: expansion_json(&e) })
        }
        Command::Bracket { generators } => {
            let a = parse_generator(&generators[0..4])?;
            let b = parse_generator(&generators[4..8])?;
            let e = bracket_in_basis(a, b)?;
            Ok(Report {
                text: e.to_string(),
                json: json!({"left": a.to_string(), "right": b.to_string(), "bracket": expansion_json(&e)}),
            })
        }
        Command::Poisson { f, g } => {
            let r = poisson_bracket(&parse_poly(f)?, &parse_poly(g)?);
            Ok(Report { text: r.to_string(), json: json!({"bracket": r.to_string()}) })
        }
        Command::NormalForm { rescale } => {
            let nf = normalize(&field()?, cli.max_grade)?;
            let mut text = nf_text(&nf);
            let mut js = nf.to_json();
            if *rescale {
                let r = rescale_leading(&nf)?;
                text.push_str(&format!(
                    "\nrescaled (x = aX, y = tau*a*Y, z = tau^2*a*Z, t = tau*s; a = {}, tau = {}):\n{}",
                    fmt_rational(&r.a),
                    fmt_rational(&r.tau),
                    nf_text(&r.nf)
                ));
                js["rescaled"] = json!({"a": fmt_rational(&r.a), "tau": fmt_rational(&r.tau), "leading": r.leading, "normalForm": r.nf.to_json()});
            }
            Ok(Report { text, json: js })
        }
        Command::Clebsch => {
            let p = clebsch_form(&field()?)?;
            Ok(Report {
                text: format!("primary = {}\nsecondary = {}", p.primary, p.secondary),
                json: json!({"primary": p.primary.to_string(), "secondary": p.secondary.to_string()}),
            })
        }
        Command::VectorPotential => {
            let v = field()?;
            let d = vector_potential_delta(&v)?;
            let r = vector_potential_radial(&v)?;
            let f = gauge_difference(&r, &d)?;
            Ok(Report {
                text: format!(
                    "delta form = {}\nradial form = {}\nradial + grad(f) = delta form, f = {}",
                    d.field, r.field, f
                ),
                json: json!({"deltaForm": field_json(&d.field), "radialForm": field_json(&r.field), "gaugeDifference": f.to_string()}),
            })
        }
        Command::Hamiltonian => {
            let nf = normalize(&field()?, cli.max_grade)?;
            let h = hamiltonian_reduce(&nf)?;
            let tx = h.transform_x.to_string();
            Ok(Report {
                text: format!("X = {tx}\nH = {}\n{}", h.h_text(), h.field_text()),
                json: json!({"transformX": tx, "H": h.h_text(), "reducedField": h.field_text()}),
            })
        }
    }
}

fn nf_text(nf: &crate::normalform::NFResult) -> String {
    let mut lines = Vec::new();
    match nf.p {
        None => lines.push(format!("linearizable through grade {}", nf.max_grade)),
        Some(p) => lines.push(format!("p = {p}")),
    }
    if !num_traits::One::is_one(&nf.time_scale) {
        lines.push(format!("time scale = {}", fmt_rational(&nf.time_scale)));
    }
    for ((i, k), c) in &nf.coeffs {
        lines.push(format!("b({i},{k}) = {}", fmt_rational(c)));
    }
    lines.push(format!("I = {}", nf.invariant_i));
    lines.push(format!("w: {}", nf.transformed_field.to_named()));
    lines.join("\n")
}

/// Parses arguments, reads input, prints the result; returns the exit code.
pub fn main_with<I, T>(args: I, stdin: &mut dyn std::io::Read) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let input = if cli.command.needs_field() {
        let text = match &cli.input {
            Some(path) => {
                std::fs::read_to_string(path).map_err(|e| Error::pre(format!("cannot read {}: {e}", path.display())))
            }
            None => {
                let mut s = String::new();
                stdin.read_to_string(&mut s).map(|_| s).map_err(|e| Error::pre(format!("cannot read stdin: {e}")))
            }
        };
        match text {
            Ok(t) => Some(t),
            Err(e) => return report_error(cli.format, &e),
        }
    } else {
        None
    };
    match execute(&cli, input.as_deref()) {
        Ok(r) => {
            println!("{}", r.render(cli.format));
            0
        }
        Err(e) => report_error(cli.format, &e),
    }
}

fn report_error(format: Format, e: &Error) -> i32 {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&error_json(e)).unwrap()),
        Format::Text => eprintln!("error: {e}"),
    }
    e.exit_code()
}
