use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::expr::{eval_expr, parse_expr, ExprAlgebra};
use crate::field::{Elem, GlobalField};

/// A product of named variables with positive exponents, sorted by name.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(String, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(name: &str) -> Monomial {
        Monomial(vec![(name.to_string(), 1)])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(String, u32)] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut m: BTreeMap<String, u32> = self.0.iter().cloned().collect();
        for (v, e) in &other.0 {
            *m.entry(v.clone()).or_insert(0) += e;
        }
        Monomial(m.into_iter().collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(v, e)| {
                if *e == 1 {
                    v.clone()
                } else {
                    format!("{v}^{e}")
                }
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// A polynomial over K in named variables. Over F_q(t) the name `t` is the
/// field generator, never a variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    field: GlobalField,
    terms: BTreeMap<Monomial, Elem>,
}

impl MPoly {
    pub fn zero(field: GlobalField) -> MPoly {
        MPoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Elem) -> MPoly {
        let mut p = MPoly::zero(c.field());
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn int(field: GlobalField, n: i64) -> MPoly {
        MPoly::constant(field.int(n))
    }

    pub fn var(field: GlobalField, name: &str) -> MPoly {
        let mut p = MPoly::zero(field);
        p.terms.insert(Monomial::var(name), field.one());
        p
    }

    pub fn field(&self) -> GlobalField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Elem)> {
        self.terms.iter()
    }

    /// The value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Elem> {
        match self.terms.len() {
            0 => Some(self.field.zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(v, _)| v.clone()))
            .collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    fn insert(&mut self, m: Monomial, c: Elem) {
        let sum = match self.terms.remove(&m) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.field);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.insert(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Elem) -> MPoly {
        self.mul(&MPoly::constant(c.clone()))
    }

    pub fn square(&self) -> MPoly {
        self.mul(self)
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::constant(self.field.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Renames variables through `map`; names not in the map are kept.
    pub fn rename(&self, map: &BTreeMap<String, String>) -> MPoly {
        let mut out = MPoly::zero(self.field);
        for (m, c) in &self.terms {
            let mono = Monomial(
                m.0.iter()
                    .map(|(v, e)| (map.get(v).cloned().unwrap_or_else(|| v.clone()), *e))
                    .collect::<BTreeMap<_, _>>()
                    .into_iter()
                    .collect(),
            );
            out.insert(mono, c.clone());
        }
        out
    }

    /// Exact value under an assignment covering every variable.
    pub fn eval(&self, env: &BTreeMap<String, Elem>) -> Result<Elem> {
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, e) in &m.0 {
                let x = env
                    .get(v)
                    .ok_or_else(|| Error::Domain(format!("unbound variable {v}")))?;
                c.check_same_field(x)?;
                term = &term * &x.pow(*e as i64)?;
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    pub fn parse(field: GlobalField, src: &str) -> Result<MPoly> {
        eval_expr(&MPolyParser(field), &parse_expr(src)?)
    }
}

struct MPolyParser(GlobalField);

impl ExprAlgebra for MPolyParser {
    type Value = MPoly;

    fn int(&self, n: &BigInt) -> Result<MPoly> {
        Ok(MPoly::constant(self.0.parse_elem(&n.to_string())?))
    }

    fn var(&self, name: &str) -> Result<MPoly> {
        if name == "t" && !self.0.is_rational() {
            Ok(MPoly::constant(self.0.t().expect("function field")))
        } else {
            Ok(MPoly::var(self.0, name))
        }
    }

    fn add(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a.add(b)
    }

    fn mul(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a.mul(b)
    }

    fn neg(&self, a: &MPoly) -> MPoly {
        a.neg()
    }

    fn div(&self, a: &MPoly, b: &MPoly) -> Result<MPoly> {
        match b.as_constant() {
            Some(c) if !c.is_zero() => Ok(a.scale(&c.inv()?)),
            _ => Err(Error::Parse(
                "division by a nonconstant or zero polynomial".into(),
            )),
        }
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut order: Vec<(&Monomial, &Elem)> = self.terms.iter().collect();
        order.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then(a.0.cmp(b.0)));
        for (i, (m, c)) in order.into_iter().enumerate() {
            let negative = c.signum() == Some(-1);
            let abs = if negative { -c } else { c.clone() };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let coeff = abs.to_string();
            let coeff = if coeff.contains(['+', '-', ' '])
                || (coeff.contains('/') && !abs.field().is_rational())
            {
                format!("({coeff})")
            } else {
                coeff
            };
            if m.is_one() {
                f.write_str(&coeff)?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{coeff}*{m}")?;
            }
        }
        Ok(())
    }
}
