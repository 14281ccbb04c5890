use std::collections::{BTreeMap, BTreeSet};

use crate::error::{domain, Error, Result};
use crate::field::{
    finite_places, is_local_square, support, valuation, Elem, GlobalField, Place, Poly,
};
use crate::hilbert::{candidate_places, hilbert_symbol};

use super::sets::{
    coset_membership, p_partition, phi_membership, psi_membership, r_delta, CosetMode,
    SemilocalRing,
};
use super::{artin_place, CftConstants, GalElem};

/// The element(s) isolating a prime in its Frobenius class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Isolation {
    Single(Elem),
    Pair(Elem, Elem),
}

fn check_place(v: &Place, consts: &CftConstants) -> Result<()> {
    if !v.is_finite() || !v.belongs_to(consts.field()) {
        return Err(Error::Precondition(format!(
            "{v} is not a finite place of {}",
            consts.field()
        )));
    }
    if consts.modulus.contains(v) {
        return Err(Error::Precondition(format!(
            "{v} divides the modulus {}",
            consts.modulus
        )));
    }
    Ok(())
}

/// For sigma != (1,1): an element p in Phi_sigma with P^sigma(p) = {v}. For
/// sigma = (1,1): a pair (p, q) in Psi_K whose (1,1) ring is exactly {v};
/// q runs over places of class (-1,-1) with norm at most `q_bound`, unit
/// multiples of both included, in canonical order.
pub fn isolate_prime(
    sigma: GalElem,
    v: &Place,
    consts: &CftConstants,
    q_bound: u64,
) -> Result<Isolation> {
    check_place(v, consts)?;
    let actual = artin_place(v, consts)?;
    if actual != sigma {
        return Err(Error::Precondition(format!(
            "{v} has Frobenius {actual}, not {sigma}"
        )));
    }
    let pi = v.generator().expect("finite place");
    if !sigma.is_identity() {
        let ok = phi_membership(&pi, sigma, consts, false)?
            && p_partition(&pi, consts)?.fiber(sigma) == [v.clone()];
        return if ok {
            Ok(Isolation::Single(pi))
        } else {
            Err(Error::Precondition(format!("{pi} does not isolate {v}")))
        };
    }
    let units = consts.unit_reps();
    for r in finite_places(consts.field(), q_bound) {
        if r == *v || consts.modulus.contains(&r) || artin_place(&r, consts)? != GalElem(-1, -1) {
            continue;
        }
        let rho = r.generator().expect("finite place");
        for lam in &units {
            let p = lam * &pi;
            for mu in &units {
                let q = mu * &rho;
                if psi_membership(&p, &q, consts)?
                    && r_delta(sigma, &p, Some(&q), consts)?.delta == [v.clone()]
                {
                    return Ok(Isolation::Pair(p, q));
                }
            }
        }
    }
    Err(Error::Exhausted(format!(
        "no q of class (-1,-1) with norm <= {q_bound} isolates {v}"
    )))
}

/// Data for evaluating the dagger sentences: the semilocal ring, the
/// cofactor carrying odd valuation (p) and the nonsquare cofactor (s_sigma,
/// or q in the (1,1) case).
#[derive(Clone, Debug)]
pub struct DaggerContext {
    pub ring: SemilocalRing,
    pub p: Elem,
    pub s: Elem,
}

/// The sentence dagger^{sign}_{x,y}. When the ring has a single place it
/// holds exactly when the Hilbert symbol (x,y) there equals `sign`.
///
/// The negative sentence asks for one argument in p K^x2 R^x and the other
/// (or minus the product) in s K^x2 (1 + J). The positive one is the same
/// with s replaced by 1, together with the case of two units.
pub fn dagger(sign: i8, x: &Elem, y: &Elem, ctx: &DaggerContext) -> Result<bool> {
    let one = x.field().one();
    let in_coset = |z: &Elem, c: &Elem, mode| coset_membership(z, c, &ctx.ring, mode);
    let minus_xy = -(x * y);
    let half = |x: &Elem, y: &Elem, s: &Elem| -> Result<bool> {
        Ok(in_coset(x, &ctx.p, CosetMode::Units)?
            && (in_coset(y, s, CosetMode::OnePlusJ)?
                || in_coset(&minus_xy, s, CosetMode::OnePlusJ)?))
    };
    match sign {
        -1 => Ok(half(x, y, &ctx.s)? || half(y, x, &ctx.s)?),
        1 => Ok(half(x, y, &one)?
            || half(y, x, &one)?
            || (in_coset(x, &one, CosetMode::Units)? && in_coset(y, &one, CosetMode::Units)?)),
        _ => domain("dagger sign must be +-1"),
    }
}

/// How (a1,a2)_v and (-a3,-a4)_v are compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbolRelation {
    /// (a1,a2)_v != -(-a3,-a4)_v, i.e. the two symbols agree.
    Differ,
    /// (a1,a2)_v = -(-a3,-a4)_v, the local anisotropy relation.
    Opposite,
}

impl SymbolRelation {
    fn holds(self, h12: i8, h34: i8) -> bool {
        match self {
            SymbolRelation::Differ => h12 != -h34,
            SymbolRelation::Opposite => h12 == -h34,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tri {
    True,
    False,
    Undetermined,
}

impl Tri {
    pub fn as_bool(self) -> Option<bool> {
        match self {
            Tri::True => Some(true),
            Tri::False => Some(false),
            Tri::Undetermined => None,
        }
    }
}

impl From<bool> for Tri {
    fn from(b: bool) -> Tri {
        if b {
            Tri::True
        } else {
            Tri::False
        }
    }
}

/// Which places are scanned: finite places of norm at most `norm_bound`,
/// and for (1,1) places a partner q of norm at most `q_bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanBound {
    pub norm_bound: u64,
    pub q_bound: u64,
}

impl ScanBound {
    pub fn new(norm_bound: u64) -> ScanBound {
        ScanBound {
            norm_bound,
            q_bound: 10_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepOutcome {
    pub value: Tri,
    /// 1: a place of the modulus; 2: an isolated nonsplit prime; 3: an
    /// isolated split prime.
    pub bullet: Option<u8>,
    pub place: Option<Place>,
    pub witness: Option<Isolation>,
    pub scanned: usize,
    /// Split places for which no partner q was found within the bound.
    pub unresolved: Vec<Place>,
}

fn local_relation(a: &[Elem; 4], v: &Place, rel: SymbolRelation, det: bool) -> Result<bool> {
    let h12 = hilbert_symbol(&a[0], &a[1], v)?;
    let h34 = hilbert_symbol(&-&a[2], &-&a[3], v)?;
    if !rel.holds(h12, h34) {
        return Ok(false);
    }
    if det {
        let d = &(&a[0] * &a[1]) * &(&a[2] * &a[3]);
        return is_local_square(&d, v);
    }
    Ok(true)
}

fn sentence(a: &[Elem; 4], rel: SymbolRelation, ctx: &DaggerContext) -> Result<bool> {
    let (x2, y2) = (-&a[2], -&a[3]);
    let plus1 = dagger(1, &a[0], &a[1], ctx)?;
    let minus1 = dagger(-1, &a[0], &a[1], ctx)?;
    let plus2 = dagger(1, &x2, &y2, ctx)?;
    let minus2 = dagger(-1, &x2, &y2, ctx)?;
    Ok(match rel {
        SymbolRelation::Differ => (plus1 && plus2) || (minus1 && minus2),
        SymbolRelation::Opposite => (plus1 && minus2) || (minus1 && plus2),
    })
}

fn check_quadruple(a: &[Elem; 4], consts: &CftConstants) -> Result<()> {
    for x in a {
        consts.a.check_same_field(x)?;
        if x.is_zero() {
            return domain("zero coefficient");
        }
    }
    Ok(())
}

/// Evaluates the three bullets: the relation at the places of the modulus,
/// then the dagger sentence at isolated primes of norm up to the bound.
/// With `det` the discriminant must also be a local square there.
fn evaluate(
    a: &[Elem; 4],
    consts: &CftConstants,
    bound: ScanBound,
    rel: SymbolRelation,
    det: bool,
) -> Result<SweepOutcome> {
    check_quadruple(a, consts)?;
    let mut out = SweepOutcome {
        value: Tri::Undetermined,
        bullet: None,
        place: None,
        witness: None,
        scanned: 0,
        unresolved: Vec::new(),
    };
    for v in consts.modulus.places() {
        out.scanned += 1;
        if local_relation(a, &v, rel, det)? {
            out.value = Tri::True;
            out.bullet = Some(1);
            out.place = Some(v);
            return Ok(out);
        }
    }
    let one = consts.field().one();
    let disc = &(&a[0] * &a[1]) * &(&a[2] * &a[3]);
    for v in finite_places(consts.field(), bound.norm_bound) {
        if consts.modulus.contains(&v) {
            continue;
        }
        out.scanned += 1;
        let sigma = artin_place(&v, consts)?;
        let iso = match isolate_prime(sigma, &v, consts, bound.q_bound) {
            Ok(iso) => iso,
            Err(Error::Exhausted(_)) => {
                out.unresolved.push(v);
                continue;
            }
            Err(e) => return Err(e),
        };
        let (ctx, bullet) = match &iso {
            Isolation::Single(p) => (
                DaggerContext {
                    ring: r_delta(sigma, p, None, consts)?,
                    p: p.clone(),
                    s: consts.s_sigma(sigma)?.clone(),
                },
                2,
            ),
            Isolation::Pair(p, q) => {
                let ring = r_delta(sigma, p, Some(q), consts)?;
                for w in &ring.delta {
                    if valuation(q, w)? != Some(0) {
                        return Err(Error::Precondition(format!(
                            "{q} is not a unit of the ring at {w}"
                        )));
                    }
                }
                (
                    DaggerContext {
                        ring,
                        p: p.clone(),
                        s: q.clone(),
                    },
                    3,
                )
            }
        };
        if ctx.ring.delta != [v.clone()] {
            return Err(Error::Precondition(format!(
                "constants do not isolate {v}: ring places {:?}",
                ctx.ring.delta
            )));
        }
        if det && !coset_membership(&disc, &one, &ctx.ring, CosetMode::OnePlusJ)? {
            continue;
        }
        if sentence(a, rel, &ctx)? {
            out.value = Tri::True;
            out.bullet = Some(bullet);
            out.place = Some(v);
            out.witness = Some(iso);
            return Ok(out);
        }
    }
    if rel == SymbolRelation::Opposite {
        // away from the modulus the relation can only hold where some a_i is
        // not a unit
        let mut relevant = BTreeSet::new();
        for x in a {
            relevant.extend(
                support(x)?
                    .into_iter()
                    .filter(|v| !consts.modulus.contains(v)),
            );
        }
        let field = consts.field();
        let covered = relevant.iter().all(|v| {
            v.residue_size(field).is_some_and(|n| n <= bound.norm_bound)
                && !out.unresolved.contains(v)
        });
        if covered {
            out.value = Tri::False;
        }
    }
    Ok(out)
}

/// Semantic value of the sentence characterizing quadruples with
/// (a1,a2)_v != -(-a3,-a4)_v at some place.
pub fn eval_symbol_agreement(
    a: &[Elem; 4],
    consts: &CftConstants,
    bound: ScanBound,
) -> Result<SweepOutcome> {
    evaluate(a, consts, bound, SymbolRelation::Differ, false)
}

/// The same machinery with the opposite relation and a square
/// discriminant: true iff <a1,a2,a3,a4> is anisotropic at some place, hence
/// globally anisotropic.
pub fn eval_anisotropy4(
    a: &[Elem; 4],
    consts: &CftConstants,
    bound: ScanBound,
) -> Result<SweepOutcome> {
    evaluate(a, consts, bound, SymbolRelation::Opposite, true)
}

/// Direct check of the relation over all places: the candidate places of
/// both symbols, the infinite place, and one place where every argument is
/// a unit (standing for all such places).
pub fn direct_sweep(a: &[Elem; 4], rel: SymbolRelation, det: bool) -> Result<bool> {
    for x in a {
        a[0].check_same_field(x)?;
    }
    let field = a[0].field();
    let mut places: BTreeSet<Place> = BTreeSet::new();
    places.extend(candidate_places(&a[0], &a[1])?);
    places.extend(candidate_places(&-&a[2], &-&a[3])?);
    places.insert(field.infinite_place());
    if field.is_rational() {
        places.insert(Place::Prime(2));
    }
    let mut bound = 64;
    let generic = loop {
        if let Some(v) = finite_places(field, bound)
            .into_iter()
            .find(|v| !places.contains(v))
        {
            break v;
        }
        bound *= 4;
    };
    places.insert(generic);
    for v in &places {
        if local_relation(a, v, rel, det)? {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReciprocityReport {
    pub places_checked: usize,
    /// Places with generator = 1 mod* m, and how many had trivial
    /// Frobenius.
    pub congruent_to_one: usize,
    pub congruent_split: usize,
    /// Ray classes mod m met by the scan, and those containing places of
    /// different Frobenius.
    pub classes: usize,
    pub inconsistent_classes: Vec<String>,
    /// Frobenius values met among places of norm at most 200.
    pub values_below_200: BTreeSet<GalElem>,
}

impl ReciprocityReport {
    pub fn passed(&self) -> bool {
        self.congruent_split == self.congruent_to_one
            && self.inconsistent_classes.is_empty()
            && self.values_below_200.len() == 4
    }
}

fn ray_class_key(g: &Elem, consts: &CftConstants) -> String {
    match consts.field() {
        GlobalField::Rationals => {
            let m: u64 = consts
                .modulus
                .finite
                .iter()
                .map(|(p, e)| {
                    p.generator()
                        .and_then(|x| x.to_i64())
                        .expect("prime")
                        .pow(*e) as u64
                })
                .product();
            let n = g.to_i64().expect("small prime") as u64;
            format!("{}", n % m)
        }
        GlobalField::FunctionField { q } => {
            let m = consts
                .modulus
                .finite
                .iter()
                .map(|(p, _)| match p {
                    Place::Irreducible(pi) => pi.clone(),
                    _ => unreachable!("function field modulus"),
                })
                .fold(Poly::one(q), |acc, pi| acc.mul(&pi));
            let f = g.as_ratfn().expect("polynomial").num().clone();
            format!("{}|{}", f.rem(&m), f.degree().unwrap_or(0))
        }
    }
}

/// Empirical check of Artin reciprocity for the modulus: generators
/// congruent to 1 split completely, Frobenius is constant on ray classes,
/// and every Galois element occurs below 200.
pub fn reciprocity_check(consts: &CftConstants, norm_bound: u64) -> Result<ReciprocityReport> {
    let field = consts.field();
    let mut report = ReciprocityReport {
        places_checked: 0,
        congruent_to_one: 0,
        congruent_split: 0,
        classes: 0,
        inconsistent_classes: Vec::new(),
        values_below_200: BTreeSet::new(),
    };
    let mut by_class: BTreeMap<String, BTreeSet<GalElem>> = BTreeMap::new();
    for v in finite_places(field, norm_bound) {
        if consts.modulus.contains(&v) {
            continue;
        }
        report.places_checked += 1;
        let g = v.generator().expect("finite place");
        let frob = artin_place(&v, consts)?;
        if consts.modulus.congruent_to_one(&g)? {
            report.congruent_to_one += 1;
            if frob.is_identity() {
                report.congruent_split += 1;
            }
        }
        if v.residue_size(field).is_some_and(|n| n <= 200) {
            report.values_below_200.insert(frob);
        }
        by_class
            .entry(ray_class_key(&g, consts))
            .or_default()
            .insert(frob);
    }
    report.classes = by_class.len();
    report.inconsistent_classes = by_class
        .into_iter()
        .filter(|(_, s)| s.len() > 1)
        .map(|(k, _)| k)
        .collect();
    Ok(report)
}
