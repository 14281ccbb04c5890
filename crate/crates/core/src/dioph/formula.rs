use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, GlobalField};

use super::mpoly::MPoly;

/// Semantic predicates. Arguments are polynomials evaluated before the
/// predicate is applied.
///
/// | name | arguments | meaning |
/// |---|---|---|
/// | nonsquare | x | x is not a square |
/// | nonnorm | x, y | x is not a norm from K(sqrt y) |
/// | coset_unit | x, c, i, j, p [, q] | x in c K^x2 R^x for the ring of ((i,j), p, q) |
/// | coset_one_plus_j | x, c, i, j, p [, q] | x in c K^x2 (1 + J(R)) |
/// | ring_unit | x, i, j, p [, q] | x in R^x |
/// | phi | p, i, j | p in Phi_(i,j) |
/// | psi | p, q | (p, q) in Psi_K |
/// | local_aniso | g, a1, .., an | the form is anisotropic at the place generated by g (0: the infinite place) |
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PredName {
    Nonsquare,
    Nonnorm,
    CosetUnit,
    CosetOnePlusJ,
    RingUnit,
    Phi,
    Psi,
    LocalAniso,
}

impl PredName {
    pub const ALL: [PredName; 8] = [
        PredName::Nonsquare,
        PredName::Nonnorm,
        PredName::CosetUnit,
        PredName::CosetOnePlusJ,
        PredName::RingUnit,
        PredName::Phi,
        PredName::Psi,
        PredName::LocalAniso,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PredName::Nonsquare => "nonsquare",
            PredName::Nonnorm => "nonnorm",
            PredName::CosetUnit => "coset_unit",
            PredName::CosetOnePlusJ => "coset_one_plus_j",
            PredName::RingUnit => "ring_unit",
            PredName::Phi => "phi",
            PredName::Psi => "psi",
            PredName::LocalAniso => "local_aniso",
        }
    }

    pub fn parse(s: &str) -> Result<PredName> {
        PredName::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown predicate {s:?}")))
    }

    fn arity_ok(self, n: usize) -> bool {
        match self {
            PredName::Nonsquare => n == 1,
            PredName::Nonnorm | PredName::Psi => n == 2,
            PredName::Phi => n == 3,
            PredName::CosetUnit | PredName::CosetOnePlusJ => n == 5 || n == 6,
            PredName::RingUnit => n == 4 || n == 5,
            PredName::LocalAniso => n >= 2,
        }
    }
}

impl fmt::Display for PredName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Existential-positive formula tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    PolyEq(MPoly),
    And(Vec<Node>),
    Or(Vec<Node>),
    Exists(Vec<String>, Box<Node>),
    Pred(PredName, Vec<MPoly>),
}

impl Node {
    pub fn truth() -> Node {
        Node::And(Vec::new())
    }

    pub fn falsity() -> Node {
        Node::Or(Vec::new())
    }

    pub fn pred(name: PredName, args: Vec<MPoly>) -> Node {
        Node::Pred(name, args)
    }

    pub fn exists(vars: &[&str], body: Node) -> Node {
        Node::Exists(vars.iter().map(|s| s.to_string()).collect(), Box::new(body))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        match self {
            Node::PolyEq(p) => p.vars(),
            Node::Pred(_, args) => args.iter().flat_map(MPoly::vars).collect(),
            Node::And(xs) | Node::Or(xs) => xs.iter().flat_map(Node::free_vars).collect(),
            Node::Exists(vs, body) => {
                let mut s = body.free_vars();
                for v in vs {
                    s.remove(v);
                }
                s
            }
        }
    }

    pub fn bound_vars(&self) -> BTreeSet<String> {
        match self {
            Node::PolyEq(_) | Node::Pred(..) => BTreeSet::new(),
            Node::And(xs) | Node::Or(xs) => xs.iter().flat_map(Node::bound_vars).collect(),
            Node::Exists(vs, body) => {
                let mut s = body.bound_vars();
                s.extend(vs.iter().cloned());
                s
            }
        }
    }

    pub fn is_pred_free(&self) -> bool {
        match self {
            Node::PolyEq(_) => true,
            Node::Pred(..) => false,
            Node::And(xs) | Node::Or(xs) => xs.iter().all(Node::is_pred_free),
            Node::Exists(_, body) => body.is_pred_free(),
        }
    }

    fn write_sexpr(&self, out: &mut String) {
        match self {
            Node::PolyEq(p) => out.push_str(&format!("(poly {})", quote(&p.to_string()))),
            Node::And(xs) | Node::Or(xs) => {
                out.push_str(if matches!(self, Node::And(_)) {
                    "(and"
                } else {
                    "(or"
                });
                for x in xs {
                    out.push(' ');
                    x.write_sexpr(out);
                }
                out.push(')');
            }
            Node::Exists(vs, body) => {
                out.push_str(&format!("(exists ({}) ", vs.join(" ")));
                body.write_sexpr(out);
                out.push(')');
            }
            Node::Pred(name, args) => {
                out.push_str(&format!("(pred {name}"));
                for a in args {
                    out.push(' ');
                    out.push_str(&quote(&a.to_string()));
                }
                out.push(')');
            }
        }
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub type Witness = BTreeMap<String, Elem>;

/// A formula over a fixed field with declared parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Formula {
    pub field: GlobalField,
    pub params: Vec<String>,
    pub node: Node,
}

impl Formula {
    pub fn new(field: GlobalField, params: Vec<String>, node: Node) -> Result<Formula> {
        let f = Formula {
            field,
            params,
            node,
        };
        f.validate()?;
        Ok(f)
    }

    /// Every free variable is a parameter, predicates have valid arity,
    /// and all polynomials live over the formula's field.
    pub fn validate(&self) -> Result<()> {
        let params: BTreeSet<String> = self.params.iter().cloned().collect();
        if let Some(v) = self.node.free_vars().difference(&params).next() {
            return Err(Error::Domain(format!(
                "free variable {v} is not a declared parameter"
            )));
        }
        fn walk(n: &Node, field: GlobalField) -> Result<()> {
            match n {
                Node::PolyEq(p) => check_field(p, field),
                Node::Pred(name, args) => {
                    if !name.arity_ok(args.len()) {
                        return Err(Error::Domain(format!(
                            "{name} does not take {} arguments",
                            args.len()
                        )));
                    }
                    args.iter().try_for_each(|a| check_field(a, field))
                }
                Node::And(xs) | Node::Or(xs) => xs.iter().try_for_each(|x| walk(x, field)),
                Node::Exists(_, body) => walk(body, field),
            }
        }
        walk(&self.node, self.field)
    }

    pub fn to_sexpr(&self) -> String {
        let mut body = String::new();
        self.node.write_sexpr(&mut body);
        if self.params.is_empty() {
            body
        } else {
            format!("(params ({}) {body})", self.params.join(" "))
        }
    }

    pub fn parse(field: GlobalField, src: &str) -> Result<Formula> {
        let toks = sexpr_tokens(src)?;
        let mut pos = 0;
        let tree = read_sexpr(&toks, &mut pos)?;
        if pos != toks.len() {
            return Err(Error::Parse("trailing input after formula".into()));
        }
        let (params, node) = match &tree {
            Sexp::List(items) if matches!(items.first(), Some(Sexp::Atom(a)) if a == "params") => {
                if items.len() != 3 {
                    return Err(Error::Parse("(params (vars) formula) expected".into()));
                }
                (symbol_list(&items[1])?, to_node(field, &items[2])?)
            }
            _ => (Vec::new(), to_node(field, &tree)?),
        };
        Formula::new(field, params, node)
    }
}

fn check_field(p: &MPoly, field: GlobalField) -> Result<()> {
    if p.field() == field {
        Ok(())
    } else {
        Err(Error::Domain(format!("polynomial {p} is not over {field}")))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Open,
    Close,
    Atom(String),
    Str(String),
}

fn sexpr_tokens(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '(' => out.push(Tok::Open),
            ')' => out.push(Tok::Close),
            '"' => {
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some('"') => break,
                        Some('\\') => s.push(
                            chars
                                .next()
                                .ok_or_else(|| Error::Parse("dangling escape".into()))?,
                        ),
                        Some(ch) => s.push(ch),
                        None => return Err(Error::Parse("unterminated string".into())),
                    }
                }
                out.push(Tok::Str(s));
            }
            c if c.is_whitespace() => {}
            _ => {
                let mut s = c.to_string();
                while let Some(&n) = chars.peek() {
                    if n.is_whitespace() || n == '(' || n == ')' || n == '"' {
                        break;
                    }
                    s.push(n);
                    chars.next();
                }
                out.push(Tok::Atom(s));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Sexp {
    Atom(String),
    Str(String),
    List(Vec<Sexp>),
}

fn read_sexpr(toks: &[Tok], pos: &mut usize) -> Result<Sexp> {
    let t = toks
        .get(*pos)
        .ok_or_else(|| Error::Parse("unexpected end of formula".into()))?;
    *pos += 1;
    match t {
        Tok::Atom(a) => Ok(Sexp::Atom(a.clone())),
        Tok::Str(s) => Ok(Sexp::Str(s.clone())),
        Tok::Close => Err(Error::Parse("unexpected ')'".into())),
        Tok::Open => {
            let mut items = Vec::new();
            loop {
                match toks.get(*pos) {
                    Some(Tok::Close) => {
                        *pos += 1;
                        return Ok(Sexp::List(items));
                    }
                    Some(_) => items.push(read_sexpr(toks, pos)?),
                    None => return Err(Error::Parse("missing ')'".into())),
                }
            }
        }
    }
}

fn symbol_list(s: &Sexp) -> Result<Vec<String>> {
    match s {
        Sexp::List(items) => items
            .iter()
            .map(|x| match x {
                Sexp::Atom(a) => Ok(a.clone()),
                _ => Err(Error::Parse("expected a variable name".into())),
            })
            .collect(),
        _ => Err(Error::Parse("expected a variable list".into())),
    }
}

fn poly_arg(field: GlobalField, s: &Sexp) -> Result<MPoly> {
    match s {
        Sexp::Str(src) | Sexp::Atom(src) => MPoly::parse(field, src),
        Sexp::List(_) => Err(Error::Parse("expected a polynomial string".into())),
    }
}

fn to_node(field: GlobalField, s: &Sexp) -> Result<Node> {
    let items = match s {
        Sexp::List(items) => items,
        _ => return Err(Error::Parse("expected a parenthesized formula".into())),
    };
    let head = match items.first() {
        Some(Sexp::Atom(a)) => a.as_str(),
        _ => return Err(Error::Parse("formula node without a head".into())),
    };
    let rest = &items[1..];
    match head {
        "poly" if rest.len() == 1 => Ok(Node::PolyEq(poly_arg(field, &rest[0])?)),
        "and" | "or" => {
            let xs = rest
                .iter()
                .map(|x| to_node(field, x))
                .collect::<Result<Vec<_>>>()?;
            Ok(if head == "and" {
                Node::And(xs)
            } else {
                Node::Or(xs)
            })
        }
        "exists" if rest.len() == 2 => Ok(Node::Exists(
            symbol_list(&rest[0])?,
            Box::new(to_node(field, &rest[1])?),
        )),
        "pred" if !rest.is_empty() => {
            let name = match &rest[0] {
                Sexp::Atom(a) => PredName::parse(a)?,
                _ => return Err(Error::Parse("predicate name expected".into())),
            };
            let args = rest[1..]
                .iter()
                .map(|x| poly_arg(field, x))
                .collect::<Result<Vec<_>>>()?;
            Ok(Node::Pred(name, args))
        }
        _ => Err(Error::Parse(format!("malformed ({head} ...) node"))),
    }
}

/// Meaning of the predicate leaves.
pub trait PredSemantics {
    fn pred(&self, name: PredName, args: &[Elem]) -> Result<bool>;
}

/// Evaluates a formula under an assignment of every parameter and every
/// bound variable.
pub fn eval_formula(f: &Formula, w: &Witness, sem: &dyn PredSemantics) -> Result<bool> {
    for v in f.params.iter().chain(f.node.bound_vars().iter()) {
        if !w.contains_key(v) {
            return Err(Error::Domain(format!("witness does not bind {v}")));
        }
    }
    eval_node(&f.node, w, sem)
}

pub(crate) fn eval_node(n: &Node, w: &Witness, sem: &dyn PredSemantics) -> Result<bool> {
    Ok(match n {
        Node::PolyEq(p) => p.eval(w)?.is_zero(),
        Node::And(xs) => {
            for x in xs {
                if !eval_node(x, w, sem)? {
                    return Ok(false);
                }
            }
            true
        }
        Node::Or(xs) => {
            for x in xs {
                if eval_node(x, w, sem)? {
                    return Ok(true);
                }
            }
            false
        }
        Node::Exists(_, body) => eval_node(body, w, sem)?,
        Node::Pred(name, args) => {
            let vals = args.iter().map(|a| a.eval(w)).collect::<Result<Vec<_>>>()?;
            sem.pred(*name, &vals)?
        }
    })
}
