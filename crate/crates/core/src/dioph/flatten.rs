use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::field::Elem;

use super::formula::{Formula, Node};
use super::mpoly::MPoly;

struct Flattener {
    nonsquare: Elem,
    used: BTreeSet<String>,
}

impl Flattener {
    fn fresh(&mut self, base: &str) -> String {
        if self.used.insert(base.to_string()) {
            return base.to_string();
        }
        (1..)
            .map(|k| format!("{base}_{k}"))
            .find(|n| self.used.insert(n.clone()))
            .expect("unbounded suffixes")
    }

    /// Returns the prenex variables and a polynomial whose vanishing is
    /// equivalent to `n` under `rename`.
    fn go(&mut self, n: &Node, rename: &BTreeMap<String, String>) -> Result<(Vec<String>, MPoly)> {
        let field = self.nonsquare.field();
        match n {
            Node::PolyEq(p) => Ok((Vec::new(), p.rename(rename))),
            Node::Pred(name, _) => Err(Error::Unsupported(format!(
                "predicate {name} has no polynomial form; expand it before flattening"
            ))),
            Node::And(xs) => {
                let mut vars = Vec::new();
                let mut acc = MPoly::zero(field);
                for (i, x) in xs.iter().enumerate() {
                    let (vs, p) = self.go(x, rename)?;
                    vars.extend(vs);
                    // f = g = 0 iff f^2 - d g^2 = 0 for a nonsquare d
                    acc = if i == 0 {
                        p
                    } else {
                        acc.square().sub(&p.square().scale(&self.nonsquare))
                    };
                }
                Ok((vars, acc))
            }
            Node::Or(xs) => {
                let mut vars = Vec::new();
                let mut acc = MPoly::int(field, 1);
                for x in xs {
                    let (vs, p) = self.go(x, rename)?;
                    vars.extend(vs);
                    acc = acc.mul(&p);
                }
                Ok((vars, acc))
            }
            Node::Exists(vs, body) => {
                let mut inner = rename.clone();
                let mut fresh = Vec::new();
                for v in vs {
                    let n = self.fresh(v);
                    inner.insert(v.clone(), n.clone());
                    fresh.push(n);
                }
                let (more, p) = self.go(body, &inner)?;
                fresh.extend(more);
                Ok((fresh, p))
            }
        }
    }
}

/// A single polynomial equation with a prenex existential block, equivalent
/// to `f` for every value of the parameters. Fails on predicate leaves.
pub fn flatten(f: &Formula) -> Result<Formula> {
    let mut fl = Flattener {
        nonsquare: f.field.flatten_nonsquare(),
        used: f.params.iter().cloned().collect(),
    };
    let (vars, p) = fl.go(&f.node, &BTreeMap::new())?;
    let node = if vars.is_empty() {
        Node::PolyEq(p)
    } else {
        Node::Exists(vars, Box::new(Node::PolyEq(p)))
    };
    Formula::new(f.field, f.params.clone(), node)
}
