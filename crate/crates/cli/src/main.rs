mod problem;
mod render;

use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use reductor_core::family::{
    bounds_check, canonical_family, check_reductor, enumerate_normalized, enumerate_per_ray,
    equivalence_witness, lambda_shift, maximal_shift_family, normalize, quiver, reductor_piece,
    reflect, Bound,
};
use reductor_core::gdivisor::{format_monomial, weil_to_cartier, GWeilDivisor};
use reductor_core::json::{
    cartier_to_json, character_to_json, coeffs_from_json, divisor_to_json, set_from_json,
    set_to_json, table_to_json,
};
use reductor_core::toric::{discrepancy, format_point, Coverage};
use reductor_core::{DivisorError, Fan, ReductorSet};

use problem::ProblemFile;

#[derive(Parser)]
#[command(
    name = "reductor",
    version,
    about = "Families of G-constellations on toric resolutions of C^n/G",
    propagate_version = true
)]
struct Cli {
    /// Problem file (JSON); `-` reads standard input.
    #[arg(long, short, global = true, value_name = "FILE")]
    input: Option<PathBuf>,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice, junior simplex, discrepancies, fan checks, ramification.
    Info,
    /// The canonical family D_χ = Σ v(E_i, χ) E_i.
    Canonical,
    /// The maximal shift family {M_χ}.
    Maxshift,
    /// All normalized reductor sets.
    Enumerate {
        /// Print the admissible columns of each ray instead of whole sets.
        #[arg(long, conflicts_with = "count_only")]
        per_ray: bool,
        /// Print only the number of sets.
        #[arg(long)]
        count_only: bool,
        /// Stop after N sets.
        #[arg(long, value_name = "N")]
        limit: Option<u64>,
    },
    /// Check the reductor condition and the maximal shift bounds.
    Check {
        #[arg(long = "set", value_name = "FILE")]
        set: PathBuf,
    },
    /// Monomial generators of every D_χ on one chart.
    Piece {
        /// 1-based cone index.
        #[arg(long, value_name = "K")]
        cone: usize,
        #[arg(long = "set", value_name = "FILE")]
        set: PathBuf,
    },
    /// The McKay quiver labelled by a family on one chart.
    Quiver {
        #[arg(long, value_name = "K")]
        cone: usize,
        #[arg(long = "set", value_name = "FILE")]
        set: PathBuf,
        /// Graphviz output.
        #[arg(long, conflicts_with = "json")]
        dot: bool,
    },
    /// Local monomials of a χ-Weil divisor on every cone.
    Cartier {
        #[arg(long = "char", value_name = "C")]
        character: String,
        /// JSON object of coefficients, e.g. {"E4": "7/4"}.
        #[arg(long, value_name = "FILE")]
        coeffs: PathBuf,
    },
    /// The λ-shift D'_{χλ} = D_χ - D_{λ^{-1}}.
    Shift {
        #[arg(long, value_name = "C")]
        lambda: String,
        #[arg(long = "set", value_name = "FILE")]
        set: PathBuf,
    },
    /// The reflection D'_χ = -D_{χ^{-1}}.
    Reflect {
        #[arg(long = "set", value_name = "FILE")]
        set: PathBuf,
    },
    /// Whether two reductor sets give isomorphic families.
    Equiv {
        #[arg(long = "set", value_name = "FILE", num_args = 1, required = true)]
        sets: Vec<PathBuf>,
    },
}

/// A well-formed input that fails a mathematical check (exit status 2).
#[derive(Debug)]
struct CheckFailed(String);

impl std::fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CheckFailed {}

fn read_text(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn read_json(path: &Path) -> Result<Value> {
    serde_json::from_str(&read_text(path)?).with_context(|| format!("{} is not valid JSON", path.display()))
}

fn load_set(fan: &Fan, path: &Path) -> Result<ReductorSet> {
    set_from_json(fan, &read_json(path)?).with_context(|| format!("reductor set {}", path.display()))
}

fn cone_index(fan: &Fan, k: usize) -> Result<usize> {
    if k == 0 || k > fan.cones().len() {
        bail!("cone {k} out of range 1..={}", fan.cones().len());
    }
    Ok(k - 1)
}

fn cone_rays(fan: &Fan, c: usize) -> String {
    let names: Vec<String> = fan.cones()[c].rays.iter().map(|&r| fan.ray(r).name()).collect();
    format!("<{}>", names.join(","))
}

/// Cone and fan problems are input errors; anything else is a failed check.
fn divisor_failure(e: DivisorError) -> anyhow::Error {
    match e {
        DivisorError::Toric(t) => anyhow!(t),
        other => CheckFailed(other.to_string()).into(),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn emit_set(fan: &Fan, set: &ReductorSet, json: bool) -> String {
    if json {
        pretty(&set_to_json(fan, set))
    } else {
        render::set_table(fan, set)
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn info(fan: &Fan, json: bool) -> String {
    let g = fan.group();
    let lattice = fan.lattice();
    let report = fan.validate();
    let junior = lattice.junior_simplex();
    let basis: Vec<String> = lattice.basis().rows().iter().map(|r| format_point(r)).collect();
    let valuations: Vec<String> = (0..fan.dim()).map(|i| lattice.x_valuation(i).to_string()).collect();
    let coverage = match &report.coverage {
        Coverage::Complete => json!({"status": "complete"}),
        Coverage::Incomplete { covered } => json!({"status": "incomplete", "covered": covered.to_string()}),
        Coverage::Unchecked => json!({"status": "unchecked"}),
    };
    if json {
        let rays: Vec<Value> = fan
            .rays()
            .iter()
            .map(|r| {
                json!({
                    "name": r.name(),
                    "point": format_point(&r.vector),
                    "discrepancy": discrepancy(&r.vector).to_string(),
                })
            })
            .collect();
        let cones: Vec<Value> = report
            .cones
            .iter()
            .map(|c| {
                json!({
                    "cone": c.index + 1,
                    "rays": fan.cones()[c.index].rays.iter().map(|&r| fan.ray(r).name()).collect::<Vec<_>>(),
                    "det": c.det.to_string(),
                    "basic": c.basic,
                })
            })
            .collect();
        return pretty(&json!({
            "group": render::group_name(g),
            "order": g.order(),
            "special_linear": g.is_special_linear(),
            "lattice_index": lattice.index().to_string(),
            "lattice_basis": basis,
            "junior_simplex": junior.iter().map(|p| format_point(p)).collect::<Vec<_>>(),
            "rays": rays,
            "cones": cones,
            "overlaps": report.overlaps.iter().map(|(a, b)| [a + 1, b + 1]).collect::<Vec<_>>(),
            "unused_rays": report.unused_rays.iter().map(|&r| fan.ray(r).name()).collect::<Vec<_>>(),
            "coverage": coverage,
            "valid": report.passed(),
            "crepant": report.crepant,
            "x_valuations": valuations,
            "warnings": report.warnings,
        }));
    }

    let mut out = String::new();
    let _ = writeln!(out, "group: {} (order {})", render::group_name(g), g.order());
    let _ = writeln!(out, "special linear: {}", yes(g.is_special_linear()));
    let _ = writeln!(out, "lattice L: index {} over Z^n, basis {}", lattice.index(), basis.join(", "));
    let _ = writeln!(out, "junior simplex: {} points", junior.len());
    for p in &junior {
        let label = fan
            .rays()
            .iter()
            .find(|r| &r.vector == p)
            .map(|r| format!("  ({})", r.name()))
            .unwrap_or_default();
        let _ = writeln!(out, "  {}{label}", format_point(p));
    }
    let _ = writeln!(out, "rays:");
    let rows: Vec<Vec<String>> = fan
        .rays()
        .iter()
        .map(|r| vec![format!("  {}", r.name()), format_point(&r.vector), discrepancy(&r.vector).to_string()])
        .collect();
    out.push_str(&render::table(&["".into(), "point".into(), "discrepancy".into()], &rows));
    let _ = writeln!(out, "cones:");
    let rows: Vec<Vec<String>> = report
        .cones
        .iter()
        .map(|c| {
            vec![
                format!("  {}", c.index + 1),
                cone_rays(fan, c.index),
                c.det.to_string(),
                if c.basic { "basic" } else { "not basic" }.to_string(),
            ]
        })
        .collect();
    out.push_str(&render::table(&["".into(), "rays".into(), "det".into(), "".into()], &rows));
    for (a, b) in &report.overlaps {
        let _ = writeln!(out, "overlap: cones {} and {}", a + 1, b + 1);
    }
    for r in &report.unused_rays {
        let _ = writeln!(out, "unused ray: {}", fan.ray(*r).name());
    }
    let coverage = match &report.coverage {
        Coverage::Complete => "complete".to_string(),
        Coverage::Incomplete { covered } => format!("incomplete ({covered} of the junior simplex)"),
        Coverage::Unchecked => "not checked".to_string(),
    };
    let _ = writeln!(out, "coverage: {coverage}");
    let _ = writeln!(out, "fan valid: {}", yes(report.passed()));
    let _ = writeln!(out, "crepant: {}", report.crepant);
    let names: Vec<String> = (0..fan.dim())
        .map(|i| {
            let mut u = vec![0.into(); fan.dim()];
            u[i] = 1.into();
            format!("v({}) = {}", format_monomial(&u), valuations[i])
        })
        .collect();
    let _ = writeln!(out, "ramification: {}", names.join(", "));
    for w in &report.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}

fn check(fan: &Fan, set: &ReductorSet, json: bool) -> Result<String> {
    let g = fan.group();
    let report = check_reductor(fan, set);
    let normalized = set.is_normalized();
    let bounds = bounds_check(fan, &normalize(g, set));
    let passed = report.passed() && bounds.passed();
    let out = if json {
        let violations: Vec<Value> = report
            .violations
            .iter()
            .map(|v| {
                json!({
                    "char": character_to_json(&v.character),
                    "variable": v.variable + 1,
                    "ray": fan.ray(v.ray).name(),
                    "value": v.value.to_string(),
                })
            })
            .collect();
        let bound_violations: Vec<Value> = bounds
            .violations
            .iter()
            .map(|v| {
                json!({
                    "char": character_to_json(&v.character),
                    "ray": fan.ray(v.ray).name(),
                    "bound": match v.bound { Bound::Upper => "upper", Bound::Lower => "lower" },
                    "value": v.value.to_string(),
                    "limit": v.limit.to_string(),
                })
            })
            .collect();
        pretty(&json!({
            "passed": passed,
            "normalized": normalized,
            "congruence": report.congruence.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "violations": violations,
            "bounds": {
                "violations": bound_violations,
                "upper_attained": bounds.upper_attained,
                "lower_attained": bounds.lower_attained,
            },
        }))
    } else {
        let mut out = String::new();
        let inequalities = g.order() as usize * fan.dim() * fan.rays().len();
        let _ = writeln!(out, "normalized: {}", yes(normalized));
        if report.congruence.is_empty() {
            let _ = writeln!(out, "congruences: ok");
        }
        for e in &report.congruence {
            let _ = writeln!(out, "congruence: {e}");
        }
        let _ = writeln!(
            out,
            "reductor inequalities: {} of {inequalities} violated",
            report.violations.len()
        );
        for v in &report.violations {
            let mut u = vec![0.into(); fan.dim()];
            u[v.variable] = 1.into();
            let _ = writeln!(
                out,
                "  {} {} at {}: {}",
                v.character,
                format_monomial(&u),
                fan.ray(v.ray).name(),
                v.value
            );
        }
        let note = if normalized { "" } else { " (after normalizing)" };
        let _ = writeln!(out, "bounds -M_χ^-1 <= D_χ <= M_χ{note}: {} violated", bounds.violations.len());
        for v in &bounds.violations {
            let side = match v.bound {
                Bound::Upper => ">",
                Bound::Lower => "<",
            };
            let _ = writeln!(out, "  {} at {}: {} {side} {}", v.character, fan.ray(v.ray).name(), v.value, v.limit);
        }
        if bounds.upper_attained {
            let _ = writeln!(out, "this is the maximal shift family");
        }
        if bounds.lower_attained {
            let _ = writeln!(out, "this is the reflection of the maximal shift family");
        }
        let _ = writeln!(out, "result: {}", if passed { "reductor set" } else { "not a reductor set" });
        out
    };
    if passed {
        Ok(out)
    } else {
        print_stdout(&out)?;
        Err(CheckFailed("not a reductor set".into()).into())
    }
}

fn piece(fan: &Fan, set: &ReductorSet, cone: usize, json: bool) -> Result<String> {
    let p = reductor_piece(fan, set, cone).map_err(divisor_failure)?;
    let regular = p.violations(fan).is_empty();
    let chars = fan.group().characters();
    if json {
        let generators: Vec<Value> = chars
            .iter()
            .zip(&p.exponents)
            .map(|(c, m)| {
                json!({
                    "char": character_to_json(c),
                    "exponent": m.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "monomial": format_monomial(m),
                })
            })
            .collect();
        return Ok(pretty(&json!({
            "cone": cone + 1,
            "rays": fan.cones()[cone].rays.iter().map(|&r| fan.ray(r).name()).collect::<Vec<_>>(),
            "generators": generators,
            "regular": regular,
        })));
    }
    let mut out = format!("cone {} {}\n", cone + 1, cone_rays(fan, cone));
    let rows: Vec<Vec<String>> = chars
        .iter()
        .zip(&p.exponents)
        .map(|(c, m)| {
            let e: Vec<String> = m.iter().map(ToString::to_string).collect();
            vec![c.to_string(), format_monomial(m), format!("({})", e.join(","))]
        })
        .collect();
    out.push_str(&render::table(&["".into(), "generator".into(), "exponent".into()], &rows));
    let _ = writeln!(out, "arrow labels regular: {}", yes(regular));
    Ok(out)
}

fn quiver_cmd(fan: &Fan, set: &ReductorSet, cone: usize, json: bool, dot: bool) -> Result<String> {
    let q = quiver(fan, set, cone).map_err(divisor_failure)?;
    if dot {
        return Ok(q.to_dot(fan));
    }
    if json {
        return Ok(pretty(&q.to_json(fan)));
    }
    let mut out = format!("cone {} {}\n", cone + 1, cone_rays(fan, cone));
    let rows: Vec<Vec<String>> = q
        .arrows
        .iter()
        .map(|a| {
            let mut u = vec![0.into(); fan.dim()];
            u[a.variable] = 1.into();
            let local: Vec<String> = a.local.iter().map(ToString::to_string).collect();
            vec![
                q.vertices[a.source].to_string(),
                format_monomial(&u),
                q.vertices[a.target].to_string(),
                format_monomial(&a.exponent),
                format!("({})", local.join(",")),
            ]
        })
        .collect();
    out.push_str(&render::table(
        &["from".into(), "by".into(), "to".into(), "label".into(), "local".into()],
        &rows,
    ));
    let _ = writeln!(out, "regular: {}", yes(q.is_regular()));
    Ok(out)
}

fn cartier(fan: &Fan, character: &str, coeffs: &Path, json: bool) -> Result<String> {
    let g = fan.group();
    let chi = g.parse_character(character)?;
    let v = read_json(coeffs)?;
    let map = v.get("coeffs").unwrap_or(&v);
    let coeffs = coeffs_from_json(fan, map, "$")?;
    let d = GWeilDivisor::new(chi, coeffs);
    let c = weil_to_cartier(fan, &d).map_err(divisor_failure)?;
    if json {
        let mut out = cartier_to_json(fan, &c);
        out["divisor"] = divisor_to_json(fan, &d);
        return Ok(pretty(&out));
    }
    let mut out = format!("{} divisor {}\n", d.character(), d.format(fan));
    let rows: Vec<Vec<String>> = c
        .per_cone
        .iter()
        .enumerate()
        .map(|(k, m)| {
            let e: Vec<String> = m.iter().map(ToString::to_string).collect();
            vec![format!("{}", k + 1), cone_rays(fan, k), format!("({})", e.join(",")), format_monomial(m)]
        })
        .collect();
    out.push_str(&render::table(&["cone".into(), "rays".into(), "exponent".into(), "monomial".into()], &rows));
    Ok(out)
}

fn equiv(fan: &Fan, a: &ReductorSet, b: &ReductorSet, json: bool) -> Result<String> {
    let w = equivalence_witness(fan, a, b);
    let out = if json {
        pretty(&match &w {
            Some(e) => json!({
                "equivalent": true,
                "difference": divisor_to_json(fan, &e.difference),
                "isomorphism": e.isomorphism.as_ref().map(|m| format_monomial(m)),
            }),
            None => json!({"equivalent": false}),
        })
    } else {
        match &w {
            Some(e) => {
                let iso = match &e.isomorphism {
                    Some(m) => format!("multiplication by {}", format_monomial(m)),
                    None => "no torus-invariant witness".to_string(),
                };
                format!(
                    "equivalent: yes\ndifference: {}\nisomorphism: {iso}\n",
                    e.difference.format(fan)
                )
            }
            None => "equivalent: no\n".to_string(),
        }
    };
    if w.is_some() {
        Ok(out)
    } else {
        print_stdout(&out)?;
        Err(CheckFailed("the families are not equivalent".into()).into())
    }
}

fn enumerate(fan: &Fan, per_ray: bool, count_only: bool, limit: Option<u64>, json: bool) -> Result<()> {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    if per_ray {
        let tables: Vec<_> = (0..fan.rays().len()).map(|r| enumerate_per_ray(fan, r)).collect();
        if json {
            let v: Vec<Value> = tables.iter().map(|t| table_to_json(fan, t)).collect();
            out.write_all(pretty(&json!({ "tables": v })).as_bytes())?;
        } else {
            for (k, t) in tables.iter().enumerate() {
                if k > 0 {
                    writeln!(out)?;
                }
                out.write_all(render::per_ray_table(fan, t).as_bytes())?;
            }
        }
        return Ok(out.flush()?);
    }
    let sets = enumerate_normalized(fan);
    if count_only {
        let counts: Vec<(String, usize)> = sets.tables().iter().map(|t| (fan.ray(t.ray).name(), t.rows.len())).collect();
        let total = sets.total();
        if json {
            let per_ray: serde_json::Map<String, Value> = counts.iter().map(|(n, c)| (n.clone(), json!(c))).collect();
            let total = match u64::try_from(&total) {
                Ok(t) => json!(t),
                Err(_) => json!(total.to_string()),
            };
            out.write_all(pretty(&json!({"per_ray": per_ray, "total": total})).as_bytes())?;
        } else {
            let parts: Vec<String> = counts.iter().map(|(n, c)| format!("{n}: {c}")).collect();
            writeln!(out, "{}", parts.join(", "))?;
            writeln!(out, "{total}")?;
        }
        return Ok(out.flush()?);
    }
    let cap = limit.unwrap_or(u64::MAX);
    for (k, set) in sets.take(cap.try_into().unwrap_or(usize::MAX)).enumerate() {
        if json {
            serde_json::to_writer(&mut out, &set_to_json(fan, &set))?;
            writeln!(out)?;
        } else {
            if k > 0 {
                writeln!(out)?;
            }
            writeln!(out, "set {}", k + 1)?;
            out.write_all(render::set_table(fan, &set).as_bytes())?;
        }
    }
    Ok(out.flush()?)
}

fn print_stdout(s: &str) -> io::Result<()> {
    let mut out = io::stdout().lock();
    out.write_all(s.as_bytes())?;
    out.flush()
}

fn run(cli: Cli) -> Result<()> {
    let input = cli.input.as_deref().ok_or_else(|| anyhow!("--input FILE is required"))?;
    let problem = ProblemFile::parse(&read_text(input)?)?;
    let fan = problem.build()?;
    let g = fan.group();
    let json = cli.json;
    let text = match cli.command {
        Command::Info => info(&fan, json),
        Command::Canonical => emit_set(&fan, &canonical_family(&fan), json),
        Command::Maxshift => emit_set(&fan, &maximal_shift_family(&fan), json),
        Command::Enumerate {
            per_ray,
            count_only,
            limit,
        } => return enumerate(&fan, per_ray, count_only, limit, json),
        Command::Check { set } => check(&fan, &load_set(&fan, &set)?, json)?,
        Command::Piece { cone, set } => piece(&fan, &load_set(&fan, &set)?, cone_index(&fan, cone)?, json)?,
        Command::Quiver { cone, set, dot } => {
            quiver_cmd(&fan, &load_set(&fan, &set)?, cone_index(&fan, cone)?, json, dot)?
        }
        Command::Cartier { character, coeffs } => cartier(&fan, &character, &coeffs, json)?,
        Command::Shift { lambda, set } => {
            let lambda = g.parse_character(&lambda)?;
            emit_set(&fan, &lambda_shift(g, &load_set(&fan, &set)?, &lambda), json)
        }
        Command::Reflect { set } => emit_set(&fan, &reflect(g, &load_set(&fan, &set)?), json),
        Command::Equiv { sets } => {
            let [a, b] = sets.as_slice() else {
                bail!("equiv takes exactly two --set files, got {}", sets.len());
            };
            equiv(&fan, &load_set(&fan, a)?, &load_set(&fan, b)?, json)?
        }
    };
    print_stdout(&text)?;
    Ok(())
}

fn diagnostic(kind: &str, message: String) {
    let v = json!({"error": kind, "message": message});
    eprintln!("{v}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            diagnostic("invalid_input", e.render().to_string().trim().to_string());
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if let Some(io) = e.downcast_ref::<io::Error>() {
                if io.kind() == io::ErrorKind::BrokenPipe {
                    return ExitCode::SUCCESS;
                }
            }
            if let Some(f) = e.downcast_ref::<CheckFailed>() {
                diagnostic("check_failed", f.to_string());
                return ExitCode::from(2);
            }
            diagnostic("invalid_input", format!("{e:#}"));
            ExitCode::from(1)
        }
    }
}
