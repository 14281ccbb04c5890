use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{is_local_square, Elem, GlobalField, Place};
use crate::hilbert::hilbert_symbol;

use super::{
    critical_places, determinant, diagonalize, local_isotropic, mat_mul, transpose, Matrix,
    QuadForm,
};

/// The local reason a nondegenerate form fails to be isotropic at a place,
/// stated on the diagonal coefficients b_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// A single nonzero coefficient; anisotropic everywhere.
    Rank1,
    /// n = 2: `value` = -b1 b2 is not a square at the place.
    NonSquare { value: Elem },
    /// n = 3: (a, b)_v = -1 for a = -b1 b2, b = -b1 b3.
    Conic { a: Elem, b: Elem },
    /// n = 4: det = b1 b2 b3 b4 is a local square and
    /// (b1, b2)_v = h12 = -h34 = -(-b3, -b4)_v.
    Quaternary { det: Elem, h12: i8, h34: i8 },
    /// Real place: every b_i has this sign.
    Definite { sign: i8 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsotropyCertificate {
    Isotropic {
        witness: Vec<Elem>,
    },
    /// Locally isotropic at every critical place, but the bounded search
    /// produced no explicit zero.
    IsotropicLocal {
        places: Vec<Place>,
    },
    DegenerateIsotropic {
        kernel: Vec<Elem>,
    },
    Anisotropic {
        place: Option<Place>,
        diagonal: Vec<Elem>,
        congruence: Matrix,
        obstruction: Obstruction,
    },
}

fn strs(xs: &[Elem]) -> Value {
    Value::Array(xs.iter().map(|x| Value::String(x.to_string())).collect())
}

fn place_str(v: &Place) -> String {
    v.to_string()
}

fn parse_elems(field: GlobalField, v: &Value, what: &str) -> Result<Vec<Elem>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("{what}: expected an array")))?;
    arr.iter()
        .map(|x| {
            let s = x
                .as_str()
                .ok_or_else(|| Error::Parse(format!("{what}: expected strings")))?;
            field.parse_elem(s)
        })
        .collect()
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::Parse(format!("certificate is missing {key:?}")))
}

fn get_str<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    get(v, key)?
        .as_str()
        .ok_or_else(|| Error::Parse(format!("{key:?} must be a string")))
}

fn get_sign(v: &Value, key: &str) -> Result<i8> {
    match get(v, key)?.as_i64() {
        Some(1) => Ok(1),
        Some(-1) => Ok(-1),
        _ => Err(Error::Parse(format!("{key:?} must be 1 or -1"))),
    }
}

impl Obstruction {
    pub fn to_json(&self) -> Value {
        match self {
            Obstruction::Rank1 => json!({"type": "rank1"}),
            Obstruction::NonSquare { value } => {
                json!({"type": "nonsquare", "value": value.to_string()})
            }
            Obstruction::Conic { a, b } => {
                json!({"type": "conic", "a": a.to_string(), "b": b.to_string()})
            }
            Obstruction::Quaternary { det, h12, h34 } => {
                json!({"type": "quaternary", "det": det.to_string(), "h12": h12, "h34": h34})
            }
            Obstruction::Definite { sign } => json!({"type": "definite", "sign": sign}),
        }
    }

    pub fn from_json(field: GlobalField, v: &Value) -> Result<Obstruction> {
        let elem = |k: &str| -> Result<Elem> { field.parse_elem(get_str(v, k)?) };
        Ok(match get_str(v, "type")? {
            "rank1" => Obstruction::Rank1,
            "nonsquare" => Obstruction::NonSquare {
                value: elem("value")?,
            },
            "conic" => Obstruction::Conic {
                a: elem("a")?,
                b: elem("b")?,
            },
            "quaternary" => Obstruction::Quaternary {
                det: elem("det")?,
                h12: get_sign(v, "h12")?,
                h34: get_sign(v, "h34")?,
            },
            "definite" => Obstruction::Definite {
                sign: get_sign(v, "sign")?,
            },
            other => return Err(Error::Parse(format!("unknown obstruction type {other:?}"))),
        })
    }
}

impl IsotropyCertificate {
    pub fn to_json(&self) -> Value {
        match self {
            IsotropyCertificate::Isotropic { witness } => {
                json!({"kind": "isotropic", "witness": strs(witness)})
            }
            IsotropyCertificate::IsotropicLocal { places } => json!({
                "kind": "isotropic_local",
                "places": places.iter().map(place_str).collect::<Vec<_>>(),
                "note": "no explicit witness within budget",
            }),
            IsotropyCertificate::DegenerateIsotropic { kernel } => {
                json!({"kind": "degenerate", "kernel": strs(kernel)})
            }
            IsotropyCertificate::Anisotropic {
                place,
                diagonal,
                congruence,
                obstruction,
            } => json!({
                "kind": "anisotropic",
                "place": place.as_ref().map(place_str),
                "diagonal": strs(diagonal),
                "congruence": congruence.iter().map(|r| strs(r)).collect::<Vec<_>>(),
                "obstruction": obstruction.to_json(),
            }),
        }
    }

    pub fn from_json(field: GlobalField, v: &Value) -> Result<IsotropyCertificate> {
        Ok(match get_str(v, "kind")? {
            "isotropic" => IsotropyCertificate::Isotropic {
                witness: parse_elems(field, get(v, "witness")?, "witness")?,
            },
            "isotropic_local" => {
                let arr = get(v, "places")?
                    .as_array()
                    .ok_or_else(|| Error::Parse("places: expected an array".into()))?;
                let places = arr
                    .iter()
                    .map(|p| {
                        let s = p
                            .as_str()
                            .ok_or_else(|| Error::Parse("places: expected strings".into()))?;
                        Place::parse(field, s)
                    })
                    .collect::<Result<_>>()?;
                IsotropyCertificate::IsotropicLocal { places }
            }
            "degenerate" => IsotropyCertificate::DegenerateIsotropic {
                kernel: parse_elems(field, get(v, "kernel")?, "kernel")?,
            },
            "anisotropic" => {
                let place = match get(v, "place")? {
                    Value::Null => None,
                    Value::String(s) => Some(Place::parse(field, s)?),
                    _ => return Err(Error::Parse("place must be a string or null".into())),
                };
                let rows = get(v, "congruence")?
                    .as_array()
                    .ok_or_else(|| Error::Parse("congruence: expected an array".into()))?;
                IsotropyCertificate::Anisotropic {
                    place,
                    diagonal: parse_elems(field, get(v, "diagonal")?, "diagonal")?,
                    congruence: rows
                        .iter()
                        .map(|r| parse_elems(field, r, "congruence"))
                        .collect::<Result<_>>()?,
                    obstruction: Obstruction::from_json(field, get(v, "obstruction")?)?,
                }
            }
            other => return Err(Error::Parse(format!("unknown certificate kind {other:?}"))),
        })
    }
}

/// Verdict of [`check_certificate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub valid: bool,
    pub reason: String,
}

impl CheckOutcome {
    fn ok(reason: impl Into<String>) -> Self {
        CheckOutcome {
            valid: true,
            reason: reason.into(),
        }
    }

    fn bad(reason: impl Into<String>) -> Self {
        CheckOutcome {
            valid: false,
            reason: reason.into(),
        }
    }
}

/// Re-verify a certificate from scratch: witnesses are evaluated, local
/// obstructions recomputed from symbols and square classes.
pub fn check_certificate(f: &QuadForm, cert: &IsotropyCertificate) -> CheckOutcome {
    match check_inner(f, cert) {
        Ok(outcome) => outcome,
        Err(e) => CheckOutcome::bad(format!("malformed certificate: {e}")),
    }
}

fn check_inner(f: &QuadForm, cert: &IsotropyCertificate) -> Result<CheckOutcome> {
    let m = f.dim();
    let field = f.field();
    let in_field = |xs: &[Elem]| xs.iter().all(|x| x.field() == field);
    match cert {
        IsotropyCertificate::Isotropic { witness } => {
            if witness.len() != m || !in_field(witness) {
                return Ok(CheckOutcome::bad("witness has the wrong shape"));
            }
            if witness.iter().all(Elem::is_zero) {
                return Ok(CheckOutcome::bad("witness is the zero vector"));
            }
            let value = f.eval(witness)?;
            Ok(if value.is_zero() {
                CheckOutcome::ok("f(witness) = 0")
            } else {
                CheckOutcome::bad(format!("f(witness) = {value}"))
            })
        }
        IsotropyCertificate::DegenerateIsotropic { kernel } => {
            if kernel.len() != m || !in_field(kernel) || kernel.iter().all(Elem::is_zero) {
                return Ok(CheckOutcome::bad(
                    "kernel vector is zero or has the wrong shape",
                ));
            }
            Ok(if f.apply(kernel).iter().all(Elem::is_zero) {
                CheckOutcome::ok("A v = 0")
            } else {
                CheckOutcome::bad("A v != 0")
            })
        }
        IsotropyCertificate::IsotropicLocal { places } => {
            let d = diagonalize(f);
            if d.is_degenerate() {
                return Ok(CheckOutcome::ok("degenerate form"));
            }
            let needed = critical_places(&d.coeffs)?;
            if let Some(v) = needed.iter().find(|v| !places.contains(v)) {
                return Ok(CheckOutcome::bad(format!("critical place {v} not covered")));
            }
            for v in &needed {
                if !local_isotropic(&d.coeffs, v)? {
                    return Ok(CheckOutcome::bad(format!("anisotropic at {v}")));
                }
            }
            Ok(CheckOutcome::ok("isotropic at every critical place"))
        }
        IsotropyCertificate::Anisotropic {
            place,
            diagonal,
            congruence,
            obstruction,
        } => check_anisotropic(f, place.as_ref(), diagonal, congruence, obstruction),
    }
}

fn check_anisotropic(
    f: &QuadForm,
    place: Option<&Place>,
    b: &[Elem],
    c: &Matrix,
    obstruction: &Obstruction,
) -> Result<CheckOutcome> {
    let m = f.dim();
    let field = f.field();
    if b.len() != m || c.len() != m || c.iter().any(|r| r.len() != m) {
        return Ok(CheckOutcome::bad(
            "diagonal or congruence has the wrong shape",
        ));
    }
    if b.iter()
        .chain(c.iter().flatten())
        .any(|x| x.field() != field)
    {
        return Ok(CheckOutcome::bad("entries from the wrong field"));
    }
    if b.iter().any(Elem::is_zero) {
        return Ok(CheckOutcome::bad("zero diagonal coefficient"));
    }
    if determinant(c)?.is_zero() {
        return Ok(CheckOutcome::bad("congruence matrix is singular"));
    }
    let prod = mat_mul(&mat_mul(&transpose(c), f.matrix()), c);
    for i in 0..m {
        for j in 0..m {
            let expect = if i == j { b[i].clone() } else { field.zero() };
            if prod[i][j] != expect {
                return Ok(CheckOutcome::bad(format!(
                    "C^t A C differs from the diagonal at ({i}, {j})"
                )));
            }
        }
    }
    if let Some(v) = place {
        if !v.belongs_to(field) {
            return Ok(CheckOutcome::bad(format!(
                "place {v} does not belong to {field}"
            )));
        }
    }
    let neg = |x: &Elem| -x.clone();
    let holds = match (obstruction, place) {
        (Obstruction::Rank1, None) => m == 1,
        (Obstruction::Definite { sign }, Some(v)) if v.is_archimedean() => {
            b.iter().all(|x| x.signum() == Some(*sign))
        }
        (Obstruction::NonSquare { value }, Some(v)) if m == 2 && !v.is_archimedean() => {
            *value == neg(&(&b[0] * &b[1])) && !is_local_square(value, v)?
        }
        (Obstruction::Conic { a, b: bb }, Some(v)) if m == 3 && !v.is_archimedean() => {
            *a == neg(&(&b[0] * &b[1]))
                && *bb == neg(&(&b[0] * &b[2]))
                && hilbert_symbol(a, bb, v)? == -1
        }
        (Obstruction::Quaternary { det, h12, h34 }, Some(v)) if m == 4 && !v.is_archimedean() => {
            *det == &(&b[0] * &b[1]) * &(&b[2] * &b[3])
                && is_local_square(det, v)?
                && *h12 == hilbert_symbol(&b[0], &b[1], v)?
                && *h34 == hilbert_symbol(&neg(&b[2]), &neg(&b[3]), v)?
                && *h12 == -*h34
        }
        _ => false,
    };
    Ok(if holds {
        CheckOutcome::ok("local obstruction recomputed")
    } else {
        CheckOutcome::bad("obstruction does not hold at the stated place")
    })
}
