use std::collections::BTreeMap;

use anisotope::cft::{
    bundled_constants, find_constants, reciprocity_check, verify_constants, CftConstants,
    ScanBound, Tri,
};
use anisotope::dioph::{
    emit_anisotropy_formula, emit_isotropy_system, emit_t_membership, eval_formula, flatten,
    Formula, Node, PredName, SemanticEvaluator, Witness,
};
use anisotope::hilbert::{candidate_places, hilbert_symbol};
use anisotope::qform::{check_certificate, decide, DecideOptions, IsotropyCertificate, QuadForm};
use anisotope::{selftest, Elem, GlobalField, Place};
use clap::{Args, ValueEnum};
use serde_json::{json, Map, Value};

use crate::output::{parse_error, Failure};
use crate::{Command, Global};

type Out = Result<Value, Failure>;

#[derive(Args, Debug)]
pub struct FormArgs {
    /// Diagonal coefficients, or a symmetric matrix with rows separated by
    /// ';' and entries by ',' or spaces.
    #[arg(required = true)]
    pub coeffs: Vec<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum EmitKind {
    /// Sentence true iff the diagonal form is anisotropic.
    Anisotropy,
    /// Polynomial system for a nontrivial zero.
    Isotropy,
    /// Membership in the trace set of the quaternion algebra (a,b).
    TMembership,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ConstantsAction {
    Find,
    Verify,
    Show,
}

pub fn run(g: &Global, cmd: &Command) -> Out {
    let field = GlobalField::parse(&g.field)?;
    match cmd {
        Command::Decide(form) => run_decide(g, field, form),
        Command::Check { form, certificate } => run_check(field, form, certificate),
        Command::Hilbert { a, b, place } => run_hilbert(field, a, b, place.as_deref()),
        Command::Emit {
            kind,
            flatten,
            coeffs,
        } => run_emit(g, field, *kind, *flatten, coeffs),
        Command::Eval { formula, bindings } => run_eval(g, field, formula, bindings),
        Command::Constants { action } => run_constants(g, field, *action),
        Command::Selftest => run_selftest(),
    }
}

fn elems(field: GlobalField, xs: &[String]) -> Result<Vec<Elem>, Failure> {
    xs.iter().map(|x| Ok(field.parse_elem(x)?)).collect()
}

fn parse_form(field: GlobalField, args: &FormArgs) -> Result<QuadForm, Failure> {
    let joined = args.coeffs.join(" ");
    if !joined.contains(';') {
        return Ok(QuadForm::diagonal(field, &elems(field, &args.coeffs)?)?);
    }
    let rows = joined
        .split(';')
        .map(|row| {
            let row = row.trim();
            let cells: Vec<String> = if row.contains(',') {
                row.split(',').map(|c| c.trim().to_string()).collect()
            } else {
                row.split_whitespace().map(str::to_string).collect()
            };
            elems(field, &cells)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(QuadForm::symmetric(field, rows)?)
}

fn read_arg(src: &str) -> Result<String, Failure> {
    match src.strip_prefix('@') {
        Some(path) => {
            std::fs::read_to_string(path).map_err(|e| parse_error(format!("{path}: {e}")))
        }
        None => Ok(src.to_string()),
    }
}

fn load_constants(g: &Global, field: GlobalField) -> Result<CftConstants, Failure> {
    let consts = match &g.constants {
        Some(path) => {
            let src = std::fs::read_to_string(path)
                .map_err(|e| parse_error(format!("{}: {e}", path.display())))?;
            CftConstants::from_toml(&src)?
        }
        None => bundled_constants(field)?,
    };
    if consts.field() != field {
        return Err(parse_error(format!(
            "constants are for {}, not {field}",
            consts.field()
        )));
    }
    Ok(consts)
}

fn run_decide(g: &Global, field: GlobalField, form: &FormArgs) -> Out {
    let f = parse_form(field, form)?;
    let mut opts = DecideOptions::default();
    if let Some(h) = g.height {
        opts.max_height = h;
    }
    Ok(decide(&f, &opts)?.to_json())
}

fn run_check(field: GlobalField, form: &FormArgs, cert: &str) -> Out {
    let f = parse_form(field, form)?;
    let v: Value = serde_json::from_str(&read_arg(cert)?)
        .map_err(|e| parse_error(format!("certificate: {e}")))?;
    // accept a whole `decide` response as well as a bare certificate
    let v = v.get("certificate").cloned().unwrap_or(v);
    let cert = IsotropyCertificate::from_json(field, &v)?;
    let outcome = check_certificate(&f, &cert);
    Ok(json!({ "valid": outcome.valid, "reason": outcome.reason }))
}

fn run_hilbert(field: GlobalField, a: &str, b: &str, place: Option<&str>) -> Out {
    let (a, b) = (field.parse_elem(a)?, field.parse_elem(b)?);
    match place {
        Some(v) => {
            let v = Place::parse(field, v)?;
            Ok(json!({ "symbol": hilbert_symbol(&a, &b, &v)? }))
        }
        None => {
            let mut ramified = Vec::new();
            for v in candidate_places(&a, &b)? {
                if hilbert_symbol(&a, &b, &v)? == -1 {
                    ramified.push(v.to_string());
                }
            }
            Ok(json!({ "ramified": ramified }))
        }
    }
}

fn run_emit(g: &Global, field: GlobalField, kind: EmitKind, flat: bool, coeffs: &[String]) -> Out {
    let c = elems(field, coeffs)?;
    let f = match kind {
        EmitKind::Isotropy => emit_isotropy_system(&c)?,
        EmitKind::TMembership => match c.as_slice() {
            [a, b] => emit_t_membership(a, b)?,
            _ => return Err(parse_error("t-membership takes exactly two elements a b")),
        },
        EmitKind::Anisotropy => {
            let consts = if c.len() == 4 {
                Some(load_constants(g, field)?)
            } else {
                None
            };
            emit_anisotropy_formula(&c, consts.as_ref())?
        }
    };
    let f = if flat { flatten(&f)? } else { f };
    Ok(json!({ "field": field.to_string(), "formula": f.to_sexpr() }))
}

fn needs_constants(n: &Node) -> bool {
    match n {
        Node::Pred(name, _) => !matches!(
            name,
            PredName::Nonsquare | PredName::Nonnorm | PredName::LocalAniso
        ),
        Node::And(xs) | Node::Or(xs) => xs.iter().any(needs_constants),
        Node::Exists(_, body) => needs_constants(body),
        Node::PolyEq(_) => false,
    }
}

fn witness_json(w: &Witness) -> Value {
    Value::Object(
        w.iter()
            .map(|(k, v)| (k.clone(), Value::String(v.to_string())))
            .collect(),
    )
}

fn run_eval(g: &Global, field: GlobalField, src: &str, bindings: &[String]) -> Out {
    let f = Formula::parse(field, &read_arg(src)?)?;
    let mut w: Witness = BTreeMap::new();
    for b in bindings {
        let (k, v) = b
            .split_once('=')
            .ok_or_else(|| parse_error(format!("binding {b:?} is not name=value")))?;
        w.insert(k.trim().to_string(), field.parse_elem(v)?);
    }
    let consts = if needs_constants(&f.node) {
        Some(load_constants(g, field)?)
    } else {
        None
    };
    let mut ev = SemanticEvaluator::new(consts);
    if let Some(b) = g.bound {
        ev.bound = ScanBound::new(b);
    }
    if let Some(h) = g.height {
        ev.height = h;
    }
    let all_bound = f
        .params
        .iter()
        .chain(f.node.bound_vars().iter())
        .all(|v| w.contains_key(v));
    if all_bound {
        return Ok(json!({ "value": eval_formula(&f, &w, &ev)? }));
    }
    let s = ev.satisfiable(&f, &w)?;
    match s.value {
        Tri::Undetermined => Err(Failure::Undetermined {
            reason: "no witness within the search bounds".into(),
            extra: Map::new(),
        }),
        Tri::True => {
            Ok(json!({ "value": true, "witness": witness_json(&s.witness.expect("witness")) }))
        }
        Tri::False => Ok(json!({ "value": false })),
    }
}

fn constants_json(c: &CftConstants) -> Value {
    let fx = c.to_fixture();
    json!({
        "field": fx.field,
        "a": fx.a,
        "b": fx.b,
        "c": fx.c,
        "d": fx.d,
        "modulus": fx.modulus,
    })
}

fn run_constants(g: &Global, field: GlobalField, action: ConstantsAction) -> Out {
    match action {
        ConstantsAction::Show => Ok(constants_json(&load_constants(g, field)?)),
        ConstantsAction::Find => {
            let c = find_constants(field, g.bound.unwrap_or(200))?;
            let mut out = constants_json(&c);
            out["toml"] = Value::String(c.to_toml());
            Ok(out)
        }
        ConstantsAction::Verify => {
            let c = load_constants(g, field)?;
            let bound = g.bound.unwrap_or(500);
            let report = verify_constants(&c, bound)?;
            let rec = reciprocity_check(&c, bound)?;
            Ok(json!({
                "passed": report.passed() && rec.passed(),
                "prime_bound": bound,
                "identity_checks": report.checks,
                "failures": report.failures,
                "reciprocity": {
                    "places": rec.places_checked,
                    "congruent_to_one": rec.congruent_to_one,
                    "ray_classes": rec.classes,
                    "inconsistent_classes": rec.inconsistent_classes,
                    "frobenius_values": rec.values_below_200.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                },
            }))
        }
    }
}

fn run_selftest() -> Out {
    let results = selftest::run();
    let passed = results.iter().all(|r| r.passed);
    let checks: Vec<Value> = results
        .iter()
        .map(|r| json!({ "name": r.name, "passed": r.passed, "detail": r.detail }))
        .collect();
    let body = json!({ "passed": passed, "checks": checks });
    if passed {
        Ok(body)
    } else {
        match body {
            Value::Object(m) => Err(Failure::Failed(m)),
            _ => unreachable!(),
        }
    }
}
