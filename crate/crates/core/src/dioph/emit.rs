use crate::cft::{CftConstants, GalElem};
use crate::error::{domain, Result};
use crate::field::{Elem, GlobalField};

use super::formula::{Formula, Node, PredName};
use super::mpoly::MPoly;

fn field_of(coeffs: &[Elem]) -> Result<GlobalField> {
    let first = match coeffs.first() {
        Some(x) => x,
        None => return domain("empty coefficient list"),
    };
    for x in coeffs {
        first.check_same_field(x)?;
    }
    Ok(first.field())
}

fn c(x: &Elem) -> MPoly {
    MPoly::constant(x.clone())
}

/// Exists x_1..x_m, y: sum a_i x_i^2 = 0 and some x_i y = 1.
pub fn emit_isotropy_system(coeffs: &[Elem]) -> Result<Formula> {
    let field = field_of(coeffs)?;
    let xs: Vec<String> = (1..=coeffs.len()).map(|i| format!("x{i}")).collect();
    let mut form = MPoly::zero(field);
    for (a, x) in coeffs.iter().zip(&xs) {
        form = form.add(&MPoly::var(field, x).square().scale(a));
    }
    let y = MPoly::var(field, "y");
    let nonzero = xs
        .iter()
        .map(|x| Node::PolyEq(MPoly::var(field, x).mul(&y).sub(&MPoly::int(field, 1))))
        .collect();
    let mut vars = xs.clone();
    vars.push("y".into());
    Formula::new(
        field,
        Vec::new(),
        Node::Exists(
            vars,
            Box::new(Node::And(vec![Node::PolyEq(form), Node::Or(nonzero)])),
        ),
    )
}

fn nrd(field: GlobalField, a: &Elem, b: &Elem, v: &[String; 4]) -> MPoly {
    let x: Vec<MPoly> = v.iter().map(|n| MPoly::var(field, n).square()).collect();
    x[0].sub(&x[1].scale(a))
        .sub(&x[2].scale(b))
        .add(&x[3].scale(&(a * b)))
}

/// x is a sum of two reduced traces of norm-one quaternions in (a,b)_K.
pub fn emit_t_membership(a: &Elem, b: &Elem) -> Result<Formula> {
    a.check_same_field(b)?;
    let field = a.field();
    let ys = ["y0", "y1", "y2", "y3"].map(String::from);
    let zs = ["z0", "z1", "z2", "z3"].map(String::from);
    let one = MPoly::int(field, 1);
    let two = field.int(2);
    let trace = MPoly::var(field, "y0")
        .add(&MPoly::var(field, "z0"))
        .scale(&two)
        .sub(&MPoly::var(field, "x"));
    let vars: Vec<String> = ys.iter().chain(zs.iter()).cloned().collect();
    let body = Node::And(vec![
        Node::PolyEq(nrd(field, a, b, &ys).sub(&one)),
        Node::PolyEq(nrd(field, a, b, &zs).sub(&one)),
        Node::PolyEq(trace),
    ]);
    Formula::new(field, vec!["x".into()], Node::Exists(vars, Box::new(body)))
}

/// Context of a dagger sentence: the ring of (sigma, p[, q]), the cofactor
/// p and the nonsquare cofactor s.
#[derive(Clone, Debug)]
pub struct DaggerSpec {
    pub sigma: GalElem,
    pub p: MPoly,
    pub q: Option<MPoly>,
    pub s: MPoly,
}

impl DaggerSpec {
    fn ring_args(&self) -> Vec<MPoly> {
        let field = self.p.field();
        let mut v = vec![
            MPoly::int(field, self.sigma.0 as i64),
            MPoly::int(field, self.sigma.1 as i64),
            self.p.clone(),
        ];
        v.extend(self.q.iter().cloned());
        v
    }

    fn coset(&self, name: PredName, x: &MPoly, cof: &MPoly) -> Node {
        let mut args = vec![x.clone(), cof.clone()];
        args.extend(self.ring_args());
        Node::Pred(name, args)
    }
}

/// dagger^{sign}_{x,y} with coset leaves; see `cft::dagger` for the
/// semantics.
pub fn emit_dagger(spec: &DaggerSpec, x: &MPoly, y: &MPoly, sign: i8) -> Result<Node> {
    let one = MPoly::int(x.field(), 1);
    let minus_xy = x.mul(y).neg();
    let half = |x: &MPoly, y: &MPoly, s: &MPoly| {
        Node::And(vec![
            spec.coset(PredName::CosetUnit, x, &spec.p),
            Node::Or(vec![
                spec.coset(PredName::CosetOnePlusJ, y, s),
                spec.coset(PredName::CosetOnePlusJ, &minus_xy, s),
            ]),
        ])
    };
    match sign {
        -1 => Ok(Node::Or(vec![half(x, y, &spec.s), half(y, x, &spec.s)])),
        1 => Ok(Node::Or(vec![
            half(x, y, &one),
            half(y, x, &one),
            Node::And(vec![
                spec.coset(PredName::CosetUnit, x, &one),
                spec.coset(PredName::CosetUnit, y, &one),
            ]),
        ])),
        _ => domain("dagger sign must be +-1"),
    }
}

/// (dagger+ and dagger-) or (dagger- and dagger+) on (a1,a2) and (-a3,-a4).
fn opposite_sentence(spec: &DaggerSpec, a: &[MPoly; 4]) -> Result<Node> {
    let (x2, y2) = (a[2].neg(), a[3].neg());
    Ok(Node::Or(vec![
        Node::And(vec![
            emit_dagger(spec, &a[0], &a[1], 1)?,
            emit_dagger(spec, &x2, &y2, -1)?,
        ]),
        Node::And(vec![
            emit_dagger(spec, &a[0], &a[1], -1)?,
            emit_dagger(spec, &x2, &y2, 1)?,
        ]),
    ]))
}

fn sigma_tag(s: GalElem) -> &'static str {
    match (s.0, s.1) {
        (-1, -1) => "mm",
        (-1, 1) => "mp",
        (1, -1) => "pm",
        _ => "pp",
    }
}

/// x > 0 over Q as a sum of four squares.
fn positive(field: GlobalField, x: &MPoly, tag: &str) -> Node {
    let names: Vec<String> = (1..=4).map(|k| format!("{tag}_{k}")).collect();
    let mut sum = MPoly::zero(field);
    for n in &names {
        sum = sum.add(&MPoly::var(field, n).square());
    }
    Node::Exists(names, Box::new(Node::PolyEq(x.sub(&sum))))
}

fn anisotropic4(coeffs: &[Elem], consts: &CftConstants) -> Result<Node> {
    let field = coeffs[0].field();
    consts.a.check_same_field(&coeffs[0])?;
    let a: [MPoly; 4] = [c(&coeffs[0]), c(&coeffs[1]), c(&coeffs[2]), c(&coeffs[3])];
    let d = a[0].mul(&a[1]).mul(&a[2]).mul(&a[3]);
    let one = MPoly::int(field, 1);
    let mut branches = Vec::new();
    for v in consts.modulus.places() {
        let g = v
            .generator()
            .map(|g| c(&g))
            .unwrap_or_else(|| MPoly::zero(field));
        let mut args = vec![g];
        args.extend(a.iter().cloned());
        branches.push(Node::Pred(PredName::LocalAniso, args));
    }
    for sigma in [GalElem(-1, -1), GalElem(-1, 1), GalElem(1, -1)] {
        let name = format!("p_{}", sigma_tag(sigma));
        let p = MPoly::var(field, &name);
        let spec = DaggerSpec {
            sigma,
            p: p.clone(),
            q: None,
            s: c(consts.s_sigma(sigma)?),
        };
        let body = Node::And(vec![
            Node::Pred(
                PredName::Phi,
                vec![
                    p,
                    MPoly::int(field, sigma.0 as i64),
                    MPoly::int(field, sigma.1 as i64),
                ],
            ),
            spec.coset(PredName::CosetOnePlusJ, &d, &one),
            opposite_sentence(&spec, &a)?,
        ]);
        branches.push(Node::Exists(vec![name], Box::new(body)));
    }
    let (p, q) = (MPoly::var(field, "p_pp"), MPoly::var(field, "q_pp"));
    let spec = DaggerSpec {
        sigma: GalElem::IDENTITY,
        p: p.clone(),
        q: Some(q.clone()),
        s: q.clone(),
    };
    let mut unit_args = vec![q.clone()];
    unit_args.extend(spec.ring_args());
    let body = Node::And(vec![
        Node::Pred(PredName::Psi, vec![p, q]),
        Node::Pred(PredName::RingUnit, unit_args),
        spec.coset(PredName::CosetOnePlusJ, &d, &one),
        opposite_sentence(&spec, &a)?,
    ]);
    branches.push(Node::Exists(
        vec!["p_pp".into(), "q_pp".into()],
        Box::new(body),
    ));
    Ok(Node::Or(branches))
}

/// A sentence true exactly when <a_1, .., a_m> is anisotropic. Over Q for
/// m >= 5 this is definiteness; over F_q(t) it is false for m >= 5. The
/// m = 4 sentence uses the class-field constants.
pub fn emit_anisotropy_formula(coeffs: &[Elem], consts: Option<&CftConstants>) -> Result<Formula> {
    let field = field_of(coeffs)?;
    if coeffs.iter().any(Elem::is_zero) {
        return domain("zero coefficient");
    }
    let a: Vec<MPoly> = coeffs.iter().map(c).collect();
    let node = match coeffs.len() {
        1 => Node::truth(),
        2 => Node::Pred(PredName::Nonsquare, vec![a[0].mul(&a[1]).neg()]),
        3 => {
            let m12 = a[0].mul(&a[1]).neg();
            Node::And(vec![
                Node::Pred(PredName::Nonsquare, vec![m12.clone()]),
                Node::Pred(PredName::Nonnorm, vec![a[0].mul(&a[2]).neg(), m12]),
            ])
        }
        4 => match consts {
            Some(k) => anisotropic4(coeffs, k)?,
            None => return domain("the m = 4 sentence needs class-field constants"),
        },
        _ if field.is_rational() => {
            let pos = a
                .iter()
                .enumerate()
                .map(|(i, x)| positive(field, x, &format!("u{}", i + 1)))
                .collect();
            let neg = a
                .iter()
                .enumerate()
                .map(|(i, x)| positive(field, &x.neg(), &format!("w{}", i + 1)))
                .collect();
            Node::Or(vec![Node::And(pos), Node::And(neg)])
        }
        _ => Node::falsity(),
    };
    Formula::new(field, Vec::new(), node)
}
