use std::collections::BTreeSet;

use crate::cft::{
    artin_place, coset_membership, isolate_prime, phi_membership, psi_membership, r_delta,
    CftConstants, CosetMode, GalElem, Isolation, ScanBound, Tri,
};
use crate::error::{domain, Error, Result};
use crate::field::int::isqrt_u128;
use crate::field::{elems_of_height, finite_places, is_square, support, valuation, Elem, Place};
use crate::hilbert::is_norm;
use crate::qform::local_isotropic;

use super::formula::{eval_node, Formula, Node, PredName, PredSemantics, Witness};
use super::mpoly::MPoly;

/// Decides predicate leaves with the symbol and class-field layers, and
/// searches witnesses for existential blocks.
#[derive(Clone, Debug)]
pub struct SemanticEvaluator {
    pub consts: Option<CftConstants>,
    pub bound: ScanBound,
    /// Largest height (Q) or degree (F_q(t)) tried by the generic search.
    pub height: u64,
    /// Cap on candidate tuples per generic existential block.
    pub budget: u64,
}

impl SemanticEvaluator {
    pub fn new(consts: Option<CftConstants>) -> SemanticEvaluator {
        SemanticEvaluator {
            consts,
            bound: ScanBound::new(200),
            height: 6,
            budget: 200_000,
        }
    }

    fn consts(&self) -> Result<&CftConstants> {
        self.consts
            .as_ref()
            .ok_or_else(|| Error::Precondition("class-field constants are required".into()))
    }

    fn sigma(i: &Elem, j: &Elem) -> Result<GalElem> {
        let sign = |x: &Elem| {
            if x.is_one() {
                Some(1)
            } else if (-x).is_one() {
                Some(-1)
            } else {
                None
            }
        };
        match (sign(i), sign(j)) {
            (Some(i), Some(j)) => GalElem::new(i, j),
            _ => domain(format!("({i},{j}) is not a Galois element")),
        }
    }

    fn ring(&self, args: &[Elem]) -> Result<Option<crate::cft::SemilocalRing>> {
        let sigma = Self::sigma(&args[0], &args[1])?;
        let p = &args[2];
        let q = args.get(3);
        if p.is_zero() || q.is_some_and(Elem::is_zero) {
            return Ok(None);
        }
        Ok(Some(r_delta(sigma, p, q, self.consts()?)?))
    }
}

impl PredSemantics for SemanticEvaluator {
    fn pred(&self, name: PredName, args: &[Elem]) -> Result<bool> {
        match name {
            PredName::Nonsquare => Ok(!args[0].is_zero() && !is_square(&args[0])?),
            PredName::Nonnorm => {
                let (x, y) = (&args[0], &args[1]);
                if x.is_zero() || y.is_zero() {
                    return Ok(false);
                }
                Ok(!is_norm(x, y, x.field())?)
            }
            PredName::CosetUnit | PredName::CosetOnePlusJ => {
                let (x, c) = (&args[0], &args[1]);
                if x.is_zero() || c.is_zero() {
                    return Ok(false);
                }
                let mode = if name == PredName::CosetUnit {
                    CosetMode::Units
                } else {
                    CosetMode::OnePlusJ
                };
                match self.ring(&args[2..])? {
                    Some(ring) => coset_membership(x, c, &ring, mode),
                    None => Ok(false),
                }
            }
            PredName::RingUnit => {
                let x = &args[0];
                if x.is_zero() {
                    return Ok(false);
                }
                match self.ring(&args[1..])? {
                    Some(ring) => {
                        for v in &ring.delta {
                            if valuation(x, v)? != Some(0) {
                                return Ok(false);
                            }
                        }
                        Ok(true)
                    }
                    None => Ok(false),
                }
            }
            PredName::Phi => {
                let sigma = Self::sigma(&args[1], &args[2])?;
                phi_membership(&args[0], sigma, self.consts()?, false)
            }
            PredName::Psi => psi_membership(&args[0], &args[1], self.consts()?),
            PredName::LocalAniso => {
                let g = &args[0];
                let place = if g.is_zero() {
                    g.field().infinite_place()
                } else {
                    Place::from_generator(g)?
                };
                let coeffs = &args[1..];
                if coeffs.iter().any(Elem::is_zero) {
                    return Ok(false);
                }
                Ok(!local_isotropic(coeffs, &place)?)
            }
        }
    }
}

/// Result of a satisfiability search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Satisfaction {
    pub value: Tri,
    /// Bindings of parameters and of the existential variables used by the
    /// satisfied branches.
    pub witness: Option<Witness>,
}

impl SemanticEvaluator {
    /// Decides a formula under given parameter values by searching
    /// existential witnesses. `Tri::False` is returned only when the search
    /// is exhaustive for the block in question; see `sat_exists`.
    pub fn satisfiable(&self, f: &Formula, params: &Witness) -> Result<Satisfaction> {
        for p in &f.params {
            if !params.contains_key(p) {
                return Err(Error::Domain(format!("parameter {p} is not assigned")));
            }
        }
        let (value, env) = self.sat(&f.node, params.clone())?;
        Ok(Satisfaction {
            value,
            witness: (value == Tri::True).then(|| complete_witness(f, env)),
        })
    }

    fn sat(&self, n: &Node, env: Witness) -> Result<(Tri, Witness)> {
        match n {
            Node::PolyEq(_) | Node::Pred(..) => {
                let v = eval_node(n, &env, self)?;
                Ok((if v { Tri::True } else { Tri::False }, env))
            }
            Node::And(xs) => {
                let mut env = env;
                let mut open = false;
                for x in xs {
                    let (v, e) = self.sat(x, env.clone())?;
                    match v {
                        Tri::False => return Ok((Tri::False, env)),
                        Tri::Undetermined => open = true,
                        Tri::True => env = e,
                    }
                }
                Ok((if open { Tri::Undetermined } else { Tri::True }, env))
            }
            Node::Or(xs) => {
                let mut open = false;
                for x in xs {
                    let (v, e) = self.sat(x, env.clone())?;
                    match v {
                        Tri::True => return Ok((Tri::True, e)),
                        Tri::Undetermined => open = true,
                        Tri::False => {}
                    }
                }
                Ok((if open { Tri::Undetermined } else { Tri::False }, env))
            }
            Node::Exists(vars, body) => self.sat_exists(vars, body, env),
        }
    }

    /// Three strategies, tried in order:
    ///
    /// 1. A block guarded by `phi(p, i, j)` or `psi(p, q)` draws candidates
    ///    from the places of norm up to the scan bound (generators of class
    ///    (i,j), or isolating pairs). When none works and every place
    ///    dividing the constants of the body was scanned, the block is false:
    ///    the dagger sentences can only hold at such places.
    /// 2. `c - (v_1^2 + .. + v_k^2) = 0` over Q with k >= 4 is decided by the
    ///    sign of c and solved by a four-square decomposition.
    /// 3. Otherwise tuples are enumerated by height up to `self.height`.
    fn sat_exists(&self, vars: &[String], body: &Node, env: Witness) -> Result<(Tri, Witness)> {
        if let Some(guard) = guard_of(vars, body) {
            return self.sat_guarded(vars, body, guard, env);
        }
        if let Some(res) = self.sat_sum_of_squares(vars, body, &env)? {
            return Ok(res);
        }
        self.sat_enumerate(vars, body, env)
    }

    fn sat_guarded(
        &self,
        vars: &[String],
        body: &Node,
        guard: Guard,
        env: Witness,
    ) -> Result<(Tri, Witness)> {
        let consts = self.consts()?;
        let field = consts.field();
        let mut open = false;
        for v in finite_places(field, self.bound.norm_bound) {
            if consts.modulus.contains(&v) {
                continue;
            }
            let sigma = artin_place(&v, consts)?;
            let binding: Vec<Elem> = match &guard {
                Guard::Phi(target) => {
                    let target = target.eval(&env)?;
                    if sigma != target {
                        continue;
                    }
                    vec![v.generator().expect("finite place")]
                }
                Guard::Psi => {
                    if !sigma.is_identity() {
                        continue;
                    }
                    match isolate_prime(sigma, &v, consts, self.bound.q_bound) {
                        Ok(Isolation::Pair(p, q)) => vec![p, q],
                        Ok(Isolation::Single(_)) => {
                            unreachable!("identity class isolates by pairs")
                        }
                        Err(Error::Exhausted(_)) => {
                            open = true;
                            continue;
                        }
                        Err(e) => return Err(e),
                    }
                }
            };
            let mut e = env.clone();
            for (name, val) in vars.iter().zip(binding) {
                e.insert(name.clone(), val);
            }
            let (val, e) = self.sat(body, e)?;
            match val {
                Tri::True => return Ok((Tri::True, e)),
                Tri::Undetermined => open = true,
                Tri::False => {}
            }
        }
        if open {
            return Ok((Tri::Undetermined, env));
        }
        let mut probe = env.clone();
        for name in vars {
            probe.insert(name.clone(), field.one());
        }
        let mut relevant: BTreeSet<Place> = BTreeSet::new();
        for p in leaf_polys(body) {
            if p.vars().iter().all(|v| probe.contains_key(v)) {
                let x = p.eval(&probe)?;
                if !x.is_zero() {
                    relevant.extend(support(&x)?);
                }
            }
        }
        let covered = relevant.iter().all(|v| {
            consts.modulus.contains(v)
                || v.residue_size(field)
                    .is_some_and(|n| n <= self.bound.norm_bound)
        });
        Ok((
            if covered {
                Tri::False
            } else {
                Tri::Undetermined
            },
            env,
        ))
    }

    fn sat_sum_of_squares(
        &self,
        vars: &[String],
        body: &Node,
        env: &Witness,
    ) -> Result<Option<(Tri, Witness)>> {
        let p = match body {
            Node::PolyEq(p) => p,
            _ => return Ok(None),
        };
        if !p.field().is_rational() || vars.len() < 4 {
            return Ok(None);
        }
        let mut rest = p.clone();
        for v in vars {
            rest = rest.add(&MPoly::var(p.field(), v).square());
        }
        if rest.vars().iter().any(|v| vars.contains(v)) {
            return Ok(None);
        }
        let c = rest.eval(env)?;
        if c.signum() == Some(-1) {
            return Ok(Some((Tri::False, env.clone())));
        }
        let squares = match rational_four_squares(&c) {
            Some(s) => s,
            None => return Ok(None),
        };
        let mut e = env.clone();
        for (i, v) in vars.iter().enumerate() {
            e.insert(
                v.clone(),
                squares.get(i).cloned().unwrap_or_else(|| p.field().zero()),
            );
        }
        Ok(Some((Tri::True, e)))
    }

    fn sat_enumerate(&self, vars: &[String], body: &Node, env: Witness) -> Result<(Tri, Witness)> {
        let field = match env.values().next() {
            Some(x) => x.field(),
            None => match leaf_polys(body).first() {
                Some(p) => p.field(),
                None => return Ok((Tri::Undetermined, env)),
            },
        };
        let mut tried = 0u64;
        let mut pool: Vec<Elem> = Vec::new();
        for h in 0..=self.height {
            let fresh = elems_of_height(field, h);
            let old = pool.len();
            pool.extend(fresh);
            // tuples from the pool with at least one coordinate of height h
            let k = vars.len();
            let mut idx = vec![0usize; k];
            loop {
                if idx.iter().any(|&i| i >= old) {
                    tried += 1;
                    if tried > self.budget {
                        return Ok((Tri::Undetermined, env));
                    }
                    let mut e = env.clone();
                    for (name, &i) in vars.iter().zip(&idx) {
                        e.insert(name.clone(), pool[i].clone());
                    }
                    let (val, e) = self.sat(body, e)?;
                    if val == Tri::True {
                        return Ok((Tri::True, e));
                    }
                }
                let mut pos = 0;
                loop {
                    if pos == k {
                        break;
                    }
                    idx[pos] += 1;
                    if idx[pos] < pool.len() {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
                if pos == k {
                    break;
                }
            }
        }
        Ok((Tri::Undetermined, env))
    }
}

enum Guard {
    Phi(GuardSigma),
    Psi,
}

/// The Galois element named by a phi guard, read from its constant
/// arguments.
struct GuardSigma(MPoly, MPoly);

impl GuardSigma {
    fn eval(&self, env: &Witness) -> Result<GalElem> {
        let (i, j) = (self.0.eval(env)?, self.1.eval(env)?);
        SemanticEvaluator::sigma(&i, &j)
    }
}

fn guard_of(vars: &[String], body: &Node) -> Option<Guard> {
    let conj = match body {
        Node::And(xs) => xs,
        _ => return None,
    };
    let is_var = |p: &MPoly, name: &str| *p == MPoly::var(p.field(), name);
    conj.iter().find_map(|n| match n {
        Node::Pred(PredName::Phi, args) if vars.len() == 1 && is_var(&args[0], &vars[0]) => {
            Some(Guard::Phi(GuardSigma(args[1].clone(), args[2].clone())))
        }
        Node::Pred(PredName::Psi, args)
            if vars.len() == 2 && is_var(&args[0], &vars[0]) && is_var(&args[1], &vars[1]) =>
        {
            Some(Guard::Psi)
        }
        _ => None,
    })
}

fn leaf_polys(n: &Node) -> Vec<&MPoly> {
    match n {
        Node::PolyEq(p) => vec![p],
        Node::Pred(_, args) => args.iter().collect(),
        Node::And(xs) | Node::Or(xs) => xs.iter().flat_map(leaf_polys).collect(),
        Node::Exists(_, body) => leaf_polys(body),
    }
}

/// Binds every variable the witness leaves open (branches never taken) to
/// 1, so the result covers the whole formula.
fn complete_witness(f: &Formula, mut w: Witness) -> Witness {
    for v in f.node.bound_vars() {
        w.entry(v).or_insert_with(|| f.field.one());
    }
    w
}

/// Four integers whose squares sum to n, by descending search.
pub fn four_squares(n: u64) -> [u64; 4] {
    fn two(n: u64) -> Option<[u64; 2]> {
        let mut a = isqrt_u128(n as u128) as u64;
        loop {
            let r = n - a * a;
            let b = isqrt_u128(r as u128) as u64;
            if b * b == r {
                return Some([a, b]);
            }
            if a == 0 || 2 * a * a < n {
                return None;
            }
            a -= 1;
        }
    }
    let top = isqrt_u128(n as u128) as u64;
    for a in (0..=top).rev() {
        let r1 = n - a * a;
        let top_b = isqrt_u128(r1 as u128) as u64;
        for b in (0..=top_b).rev() {
            if let Some([c, d]) = two(r1 - b * b) {
                return [a, b, c, d];
            }
        }
    }
    unreachable!("every natural number is a sum of four squares")
}

/// x = n/d >= 0 as a sum of four rational squares: n d = sum s_i^2 gives
/// x = sum (s_i / d)^2.
fn rational_four_squares(x: &Elem) -> Option<Vec<Elem>> {
    let (n, d) = x.int_parts()?;
    let nd: u64 = (n * d).try_into().ok()?;
    let d: i64 = d.try_into().ok()?;
    Some(
        four_squares(nd)
            .iter()
            .map(|&s| Elem::rational(s as i64, d))
            .collect(),
    )
}
