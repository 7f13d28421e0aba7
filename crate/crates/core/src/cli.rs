//! Command-line front end. [`run`] parses arguments, dispatches, and writes a
//! JSON envelope (or plain text) to `out`, diagnostics to `err`, returning the
//! process exit code: 0 success, 1 validation or verification failure, 2 usage
//! or parse error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::counting::{big_to_json, counting_polynomial, eval_counting, verify_counting, zeta};
use crate::family::Family;
use crate::functor::{
    alpha, beta, cc_points, cc_points_auto, discover_relations, enumerate_monoid_homs_with, soule_count_by_faces,
    CyclicMonoidWithZero, Enumeration, FiniteAbelianGroup, DEFAULT_BUDGET, DEFAULT_RELATION_BOUND,
};
use crate::io::{counting_payload, dscheme_payload, load_fan, load_torification, torification_payload, Envelope};
use crate::lattice::{standard_fan, Cone, Fan, FanKind, LatticeVector};
use crate::monoid::{dscheme_of_cone, dscheme_of_fan, monoid_of_cone};
use crate::torification::{delta_vector, Torification};
use crate::Error;

/// Overrides [`DEFAULT_BUDGET`] for full enumerations.
pub const BUDGET_ENV: &str = "TORIFIED_ENUM_BUDGET";

const DEFAULT_Q: &str = "2,3,4,5,7,8,9";

#[derive(Parser, Debug)]
#[command(
    name = "torified",
    version,
    about = "Torified varieties: counting, zeta functions and F1 point sets"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Where a torification comes from: a named family, a fan file, or a
/// torification JSON file.
#[derive(Args, Debug, Clone)]
struct Source {
    /// Family name and integer parameters, e.g. `grassmannian 2 4`
    args: Vec<String>,
    /// Family name; positional arguments are then all parameters
    #[arg(long)]
    family: Option<String>,
    /// Fan JSON file (toric variety)
    #[arg(long)]
    fan: Option<PathBuf>,
    /// Torification JSON file, as written by `torify`
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Torify a variety and print its tori and δ-vector
    Torify(Source),
    /// Counting polynomial, optionally evaluated at field sizes
    Count {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_delimiter = ',')]
        q: Vec<String>,
    },
    /// F1 zeta function
    Zeta(Source),
    /// Prime spectrum of the monoid of a cone
    Spec(ConeArgs),
    /// Monoid scheme of a fan
    Dscheme {
        #[command(flatten)]
        source: Source,
    },
    /// CC gadget points over a finite abelian group
    Gadget {
        #[command(flatten)]
        source: Source,
        /// Cyclic factor orders, e.g. `2,3`; `1` is the trivial group
        #[arg(long, value_delimiter = ',', required = true)]
        group: Vec<u64>,
        /// List every point instead of counting
        #[arg(long)]
        list: bool,
    },
    /// Soulé points of a cone: counted by faces and enumerated as homomorphisms
    Soule {
        #[command(flatten)]
        cone: ConeArgs,
        #[arg(long)]
        m: u64,
        /// List every homomorphism
        #[arg(long)]
        list: bool,
    },
    /// Compare counting polynomials with closed-form point counts
    Verify {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_delimiter = ',', default_value = DEFAULT_Q)]
        q: Vec<String>,
    },
    /// Validate a fan file
    ValidateFan { path: PathBuf },
}

#[derive(Args, Debug, Clone)]
struct ConeArgs {
    /// Rays as JSON, e.g. `[[1,0],[1,2]]`
    #[arg(long)]
    cone: String,
    /// Ambient dimension; needed only for the zero cone `[]`
    #[arg(long)]
    dim: Option<usize>,
}

struct Outcome {
    command: &'static str,
    input: Value,
    result: Value,
    text: String,
    code: i32,
}

/// Exit code for an error reaching the top level.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::UnknownFamily(_)
        | Error::InvalidParameters { .. }
        | Error::InvalidComposition(_)
        | Error::InvalidFieldSize(_)
        | Error::InvalidGroup(_)
        | Error::InvalidChevalleyData(_)
        | Error::BudgetExceeded { .. } => 2,
        _ => 1,
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn budget() -> crate::Result<u64> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("{BUDGET_ENV} must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    let start = Instant::now();
    match dispatch(&cli.command, err) {
        Ok(o) => {
            let timing_ms = start.elapsed().as_secs_f64() * 1000.0;
            let written = match cli.format {
                Format::Text => write!(out, "{}", o.text),
                Format::Json => {
                    let env = Envelope::new(o.command, o.input, o.result, timing_ms);
                    let s = serde_json::to_string_pretty(&env).expect("envelopes serialize");
                    writeln!(out, "{s}")
                }
            };
            if written.is_err() {
                return 1;
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// A resolved source: the torification, the family when known (for oracles),
/// and an echo of what was asked for.
struct Resolved {
    torification: Torification,
    family: Option<Family>,
    echo: Value,
}

fn resolve_family(src: &Source) -> crate::Result<Option<(Family, Value)>> {
    let (name, params) = match (&src.family, src.args.split_first()) {
        (Some(name), _) => (name.clone(), src.args.as_slice()),
        (None, Some((name, rest))) => (name.clone(), rest),
        (None, None) => return Ok(None),
    };
    let params = params
        .iter()
        .map(|p| {
            p.parse::<usize>()
                .map_err(|_| usage(format!("parameter {p:?} is not a non-negative integer")))
        })
        .collect::<crate::Result<Vec<_>>>()?;
    let family = Family::parse(&name, &params)?;
    Ok(Some((family, json!({"family": name, "params": params}))))
}

fn load_valid_fan(path: &Path, err: &mut dyn Write) -> crate::Result<Fan> {
    let loaded = load_fan(path)?;
    for w in &loaded.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    if !loaded.report.is_valid() {
        return Err(Error::InvalidFan(loaded.report.summary()));
    }
    Ok(loaded.fan)
}

fn resolve(src: &Source, err: &mut dyn Write) -> crate::Result<Resolved> {
    let family = resolve_family(src)?;
    let given = usize::from(family.is_some()) + usize::from(src.fan.is_some()) + usize::from(src.input.is_some());
    if given != 1 {
        return Err(usage("give exactly one of: a family, --fan PATH, --input PATH"));
    }
    if let Some((family, echo)) = family {
        return Ok(Resolved {
            torification: family.torify()?,
            family: Some(family),
            echo,
        });
    }
    if let Some(path) = &src.fan {
        let fan = load_valid_fan(path, err)?;
        let family = Family::Toric(fan);
        return Ok(Resolved {
            torification: family.torify()?,
            family: Some(family),
            echo: json!({"fan": path.display().to_string()}),
        });
    }
    let path = src.input.as_ref().expect("counted above");
    Ok(Resolved {
        torification: load_torification(path)?,
        family: None,
        echo: json!({"input": path.display().to_string()}),
    })
}

fn parse_q_list(q: &[String]) -> crate::Result<Vec<BigInt>> {
    q.iter()
        .map(|s| BigInt::from_str(s.trim()).map_err(|_| usage(format!("field size {s:?} is not an integer"))))
        .collect()
}

fn parse_cone(args: &ConeArgs) -> crate::Result<Cone> {
    let rays: Vec<LatticeVector> = serde_json::from_str(&args.cone).map_err(|e| usage(format!("--cone: {e}")))?;
    let dim = match (args.dim, rays.first()) {
        (Some(d), _) => d,
        (None, Some(r)) => r.len(),
        (None, None) => return Err(usage("--dim is required for the zero cone")),
    };
    if let Some(r) = rays.iter().find(|r| r.len() != dim) {
        return Err(usage(format!("--cone: ray {r:?} does not have {dim} coordinates")));
    }
    Cone::from_generators(dim, &rays)
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn dispatch(command: &Command, err: &mut dyn Write) -> crate::Result<Outcome> {
    match command {
        Command::Torify(src) => {
            let r = resolve(src, err)?;
            let t = &r.torification;
            let mut text = format!("dim {}, {} tori\ndelta: {}\n", t.dim(), t.len(), join(&delta_vector(t)));
            for torus in t.tori() {
                text.push_str(&format!("  G_m^{}  {}\n", torus.rank, torus.label));
            }
            Ok(Outcome {
                command: "torify",
                input: r.echo,
                result: torification_payload(t),
                text,
                code: 0,
            })
        }
        Command::Count { source, q } => {
            let r = resolve(source, err)?;
            let qs = parse_q_list(q)?;
            let n = counting_polynomial(&r.torification);
            let evals: Vec<(BigInt, BigInt)> = qs.iter().map(|q| (q.clone(), eval_counting(&n, q))).collect();
            let result = counting_payload(&n, &evals);
            let mut text = format!(
                "N(q) = {}\ndelta: {}\nmono: {}\n",
                result["polynomial"].as_str().unwrap_or_default(),
                join(n.delta()),
                join(n.mono())
            );
            for (q, v) in &evals {
                text.push_str(&format!("N({q}) = {v}\n"));
            }
            let mut input = r.echo;
            input["q"] = json!(q);
            Ok(Outcome {
                command: "count",
                input,
                result,
                text,
                code: 0,
            })
        }
        Command::Zeta(src) => {
            let r = resolve(src, err)?;
            let z = zeta(&counting_polynomial(&r.torification));
            Ok(Outcome {
                command: "zeta",
                input: r.echo,
                text: format!("zeta(s) = {z}\n"),
                result: serde_json::to_value(&z).expect("zeta serializes"),
                code: 0,
            })
        }
        Command::Spec(args) => {
            let cone = parse_cone(args)?;
            let ds = dscheme_of_cone(&cone)?;
            let fan = Fan::with_faces(cone.ambient_dim(), vec![cone.clone()]);
            let result = dscheme_payload(&ds, fan.cones());
            Ok(Outcome {
                command: "spec",
                input: json!({"cone": cone.rays(), "dim": cone.ambient_dim()}),
                text: dscheme_text(&ds, fan.cones()),
                result,
                code: 0,
            })
        }
        Command::Dscheme { source } => {
            let (fan, echo) = match (resolve_family(source)?, &source.fan) {
                (Some((family, echo)), None) if source.input.is_none() => {
                    let fan = match family {
                        Family::Point => standard_fan(FanKind::Torus, 0),
                        Family::Gm(n) => standard_fan(FanKind::Torus, n),
                        Family::Affine(n) => standard_fan(FanKind::AffineSpace, n),
                        Family::Projective(n) => standard_fan(FanKind::ProjectiveSpace, n),
                        other => {
                            return Err(Error::InvalidParameters {
                                family: other.name().into(),
                                reason: "only toric families have a monoid scheme".into(),
                            })
                        }
                    };
                    (fan, echo)
                }
                (None, Some(path)) if source.input.is_none() => {
                    (load_valid_fan(path, err)?, json!({"fan": path.display().to_string()}))
                }
                _ => return Err(usage("give exactly one of: a toric family, --fan PATH")),
            };
            let ds = dscheme_of_fan(&fan)?;
            Ok(Outcome {
                command: "dscheme",
                input: echo,
                text: dscheme_text(&ds, fan.cones()),
                result: dscheme_payload(&ds, fan.cones()),
                code: 0,
            })
        }
        Command::Gadget { source, group, list } => {
            let r = resolve(source, err)?;
            let g = FiniteAbelianGroup::new(group.clone())?;
            let budget = budget()?;
            let set = if *list {
                cc_points(&r.torification, &g, Enumeration::Full, budget)?
            } else {
                cc_points_auto(&r.torification, &g, budget)?
            };
            let cardinality = match &set.points {
                Some(p) => BigInt::from(p.len()),
                None => BigInt::from(set.cardinality()),
            };
            let n = eval_counting(&counting_polynomial(&r.torification), &(BigInt::from(g.order()) + 1));
            let agrees = cardinality == n;
            let mut result = json!({
                "group": g.cyclic_orders(),
                "order": g.order(),
                "cardinality": big_to_json(&cardinality),
                "grade_counts": set.grade_counts().iter().map(|c| big_to_json(&BigInt::from(c.clone()))).collect::<Vec<_>>(),
                "counting_value": big_to_json(&n),
                "agrees": agrees,
            });
            if *list {
                result["points"] = serde_json::to_value(&set.points).expect("points serialize");
            }
            let mut input = r.echo;
            input["group"] = json!(group);
            Ok(Outcome {
                command: "gadget",
                input,
                text: format!(
                    "#X(D) = {cardinality}, N(|D|+1) = {n}: {}\n",
                    if agrees { "ok" } else { "MISMATCH" }
                ),
                result,
                code: if agrees { 0 } else { 1 },
            })
        }
        Command::Soule { cone, m, list } => soule(cone, *m, *list),
        Command::Verify { source, q } => {
            let r = resolve(source, err)?;
            let family = r
                .family
                .ok_or_else(|| usage("verify needs a family or a fan; torification files carry no oracle"))?;
            let qs = parse_q_list(q)?;
            let report = verify_counting(&r.torification, &family, &qs)?;
            let mut text = String::new();
            for c in &report.checks {
                text.push_str(&format!(
                    "q={}: counted {}, oracle {} {}\n",
                    c.q,
                    c.counted,
                    c.oracle,
                    if c.agrees() { "ok" } else { "MISMATCH" }
                ));
            }
            let mut input = r.echo;
            input["q"] = json!(q);
            Ok(Outcome {
                command: "verify",
                input,
                text,
                code: if report.all_agree() { 0 } else { 1 },
                result: serde_json::to_value(&report).expect("report serializes"),
            })
        }
        Command::ValidateFan { path } => {
            let loaded = load_fan(path)?;
            for w in &loaded.warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            let valid = loaded.report.is_valid();
            let text = if valid {
                format!("valid fan: {} cones\n", loaded.fan.len())
            } else {
                format!("invalid fan: {}\n", loaded.report.summary())
            };
            if !valid {
                let _ = writeln!(err, "{}", loaded.report.summary());
            }
            Ok(Outcome {
                command: "validate-fan",
                input: json!({"path": path.display().to_string()}),
                result: json!({
                    "valid": valid,
                    "cones": loaded.fan.len(),
                    "warnings": loaded.warnings,
                    "report": loaded.report,
                }),
                text,
                code: if valid { 0 } else { 1 },
            })
        }
    }
}

fn dscheme_text(ds: &crate::monoid::DScheme, cones: &[Cone]) -> String {
    let mut text = String::new();
    for p in &ds.points {
        text.push_str(&format!(
            "point {}: {}, rank {}, generators {:?}\n",
            p.cone,
            cones[p.cone],
            p.rank,
            p.local_monoid.generators()
        ));
    }
    let pairs: Vec<String> = ds.specialization.iter().map(|(i, j)| format!("{i}<{j}")).collect();
    text.push_str(&format!("specializations: {}\n", pairs.join(" ")));
    text
}

fn soule(args: &ConeArgs, m: u64, list: bool) -> crate::Result<Outcome> {
    let cone = parse_cone(args)?;
    let target = CyclicMonoidWithZero::new(m)?;
    let monoid = monoid_of_cone(&cone)?;
    let by_faces = soule_count_by_faces(&monoid, m)?;
    let relations = discover_relations(&monoid, DEFAULT_RELATION_BOUND)?;
    let input = json!({"cone": cone.rays(), "dim": cone.ambient_dim(), "m": m});
    let mut result = json!({
        "generators": monoid.full_generators(),
        "relations": relations,
        "by_faces": big_to_json(&BigInt::from(by_faces.clone())),
    });
    match enumerate_monoid_homs_with(&monoid, &target, &relations, budget()?) {
        Ok(homs) => {
            let round_trip = homs
                .iter()
                .map(|h| Ok(alpha(&monoid, &target, &beta(&monoid, &target, h)?)? == *h))
                .collect::<crate::Result<Vec<bool>>>()?
                .into_iter()
                .all(|ok| ok);
            let agrees = num_bigint::BigUint::from(homs.len()) == by_faces;
            result["enumerated"] = json!(homs.len());
            result["agrees"] = json!(agrees);
            result["round_trip"] = json!(round_trip);
            if list {
                result["homs"] = serde_json::to_value(&homs).expect("homs serialize");
            }
            let ok = agrees && round_trip;
            Ok(Outcome {
                command: "soule",
                input,
                text: format!(
                    "by faces {by_faces}, enumerated {}, round trip {}: {}\n",
                    homs.len(),
                    if round_trip { "ok" } else { "FAILED" },
                    if ok { "ok" } else { "MISMATCH" }
                ),
                result,
                code: if ok { 0 } else { 1 },
            })
        }
        Err(Error::BudgetExceeded { needed, budget }) if !list => {
            result["enumerated"] = Value::Null;
            result["agrees"] = Value::Null;
            result["round_trip"] = Value::Null;
            Ok(Outcome {
                command: "soule",
                input,
                text: format!("by faces {by_faces}; enumeration skipped ({needed} > budget {budget})\n"),
                result,
                code: 0,
            })
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["torified"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn result(args: &[&str]) -> Value {
        let (code, out, err) = call(args);
        assert_eq!(code, 0, "{err}");
        serde_json::from_str::<Value>(&out).unwrap()["result"].clone()
    }

    #[test]
    fn torify_grassmannian() {
        assert_eq!(
            result(&["torify", "grassmannian", "2", "4"])["delta"],
            json!([6, 12, 11, 5, 1])
        );
        assert_eq!(
            result(&["torify", "--family", "grassmannian", "2", "4"])["delta"],
            json!([6, 12, 11, 5, 1])
        );
    }

    #[test]
    fn zeta_of_gm() {
        let z = result(&["zeta", "--family", "gm", "1"]);
        assert_eq!(z["factors"], json!([[0, 1], [1, -1]]));
        assert_eq!(z["rendered"], "s/(s-1)");
    }

    #[test]
    fn verify_sl2() {
        let r = result(&["verify", "--family", "sl", "2", "--q", "2,3,5,7"]);
        assert_eq!(r["checks"].as_array().unwrap().len(), 4);
        assert_eq!(r["all_equal"], true);
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(call(&["torify", "quadric"]).0, 2);
        assert_eq!(call(&["torify", "gm", "x"]).0, 2);
        assert_eq!(call(&["torify"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["verify", "gm", "1", "--q", "1"]).0, 2);
        assert_eq!(call(&["gadget", "gm", "1", "--group", "0"]).0, 2);
        assert_eq!(call(&["soule", "--cone", "[[1,0]", "--m", "2"]).0, 2);
        assert_eq!(call(&["dscheme", "sl", "2"]).0, 2);
    }

    #[test]
    fn help_exits_0() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("torify"));
    }

    #[test]
    fn soule_singular_cone() {
        let r = result(&["soule", "--cone", "[[1,0],[1,2]]", "--m", "1", "--list"]);
        assert_eq!(r["enumerated"], 4);
        assert_eq!(r["agrees"], true);
        assert_eq!(r["round_trip"], true);
        assert_eq!(r["homs"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn gadget_and_spec() {
        let r = result(&["gadget", "sl", "2", "--group", "2"]);
        assert_eq!(
            (r["cardinality"].clone(), r["agrees"].clone()),
            (json!(24), json!(true))
        );
        let r = result(&["gadget", "affine", "1", "--group", "2", "--list"]);
        assert_eq!(r["points"].as_array().unwrap().len(), 3);
        let r = result(&["spec", "--cone", "[[1,0],[1,2]]"]);
        assert_eq!(r["points"].as_array().unwrap().len(), 4);
        let r = result(&["spec", "--cone", "[]", "--dim", "2"]);
        assert_eq!(r["points"][0]["rank"], 2);
        let r = result(&["dscheme", "projective", "2"]);
        assert_eq!(r["points"].as_array().unwrap().len(), 7);
    }

    #[test]
    fn text_format() {
        let (code, out, _) = call(&["count", "sl", "2", "--q", "3", "--format", "text"]);
        assert_eq!(code, 0);
        assert!(out.contains("N(q) = q^3 - q"), "{out}");
        assert!(out.contains("N(3) = 24"), "{out}");
    }
}
