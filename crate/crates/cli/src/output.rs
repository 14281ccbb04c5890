use anisotope::Error;
use serde_json::{Map, Value};

pub const SCHEMA: &str = "1";

#[derive(Debug)]
pub enum Failure {
    /// Malformed or out-of-domain input.
    Input { kind: &'static str, message: String },
    /// A bounded search could not settle the question.
    Undetermined {
        reason: String,
        extra: Map<String, Value>,
    },
    /// Broken invariant.
    Internal(String),
    /// A self-check failed; the body describes which.
    Failed(Map<String, Value>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Parse(m) => Failure::Input {
                kind: "parse",
                message: m,
            },
            Error::Domain(m) => Failure::Input {
                kind: "domain",
                message: m,
            },
            Error::Precondition(m) => Failure::Input {
                kind: "precondition",
                message: m,
            },
            Error::Unsupported(m) => Failure::Input {
                kind: "unsupported",
                message: m,
            },
            Error::Exhausted(m) => Failure::Undetermined {
                reason: m,
                extra: Map::new(),
            },
        }
    }
}

pub fn parse_error(message: impl Into<String>) -> Failure {
    Failure::Input {
        kind: "parse",
        message: message.into(),
    }
}

impl Failure {
    pub fn into_response(self) -> (u8, Value) {
        let mut m = Map::new();
        let code = match self {
            Failure::Input { kind, message } => {
                m.insert("error".into(), kind.into());
                m.insert("message".into(), message.into());
                2
            }
            Failure::Undetermined { reason, extra } => {
                m.insert("result".into(), "undetermined".into());
                m.insert("reason".into(), reason.into());
                m.extend(extra);
                3
            }
            Failure::Internal(message) => {
                m.insert("error".into(), "internal".into());
                m.insert("message".into(), message.into());
                4
            }
            Failure::Failed(body) => {
                m.extend(body);
                4
            }
        };
        (code, Value::Object(m))
    }
}

/// Adds the schema tag in front and renders.
pub fn render(value: Value, pretty: bool) -> String {
    let mut out = Map::new();
    out.insert("schema".into(), SCHEMA.into());
    if let Value::Object(m) = value {
        out.extend(m);
    }
    if !pretty {
        return Value::Object(out).to_string();
    }
    let mut lines = Vec::new();
    for (k, v) in &out {
        if k == "schema" {
            continue;
        }
        lines.push(match v {
            Value::String(s) if s.contains('\n') => format!("{k}:\n{}", indent(s)),
            Value::String(s) => format!("{k}: {s}"),
            Value::Object(_) | Value::Array(_) if v.to_string().len() > 60 => {
                let body = serde_json::to_string_pretty(v).expect("json");
                format!("{k}:\n{}", indent(&body))
            }
            _ => format!("{k}: {v}"),
        });
    }
    lines.join("\n")
}

fn indent(s: &str) -> String {
    s.lines()
        .map(|l| format!("  {l}"))
        .collect::<Vec<_>>()
        .join("\n")
}
