use crate::error::{domain, Result};
use crate::field::{factor, unit_character, valuation, Elem, Place};
use crate::hilbert::{delta_set, hilbert_symbol};

use super::{artin_place, CftConstants, GalElem};

/// P(p) split by Frobenius class. Places of P(p) dividing the modulus have
/// no Frobenius and are listed separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub odd: Vec<Place>,
    pub fibers: [(GalElem, Vec<Place>); 4],
    pub in_modulus: Vec<Place>,
}

impl Partition {
    pub fn fiber(&self, s: GalElem) -> &[Place] {
        &self
            .fibers
            .iter()
            .find(|(g, _)| *g == s)
            .expect("all four classes present")
            .1
    }
}

pub fn p_partition(p: &Elem, consts: &CftConstants) -> Result<Partition> {
    if p.is_zero() {
        return domain("P(0) is undefined");
    }
    let mut fibers = GalElem::ALL.map(|g| (g, Vec::new()));
    let mut odd = Vec::new();
    let mut in_modulus = Vec::new();
    for (v, e) in factor(p)?.factors {
        if e % 2 == 0 {
            continue;
        }
        odd.push(v.clone());
        if consts.modulus.contains(&v) {
            in_modulus.push(v);
        } else {
            let g = artin_place(&v, consts)?;
            fibers
                .iter_mut()
                .find(|(s, _)| *s == g)
                .expect("four classes")
                .1
                .push(v);
        }
    }
    Ok(Partition {
        odd,
        fibers,
        in_modulus,
    })
}

/// Membership in Phi_sigma, or with `tilde` in K^x2 . Phi_sigma. Squares
/// cannot clear odd valuations, so the tilde test asks for even valuations
/// at the finite places of the modulus and then classifies P(p).
pub fn phi_membership(
    p: &Elem,
    sigma: GalElem,
    consts: &CftConstants,
    tilde: bool,
) -> Result<bool> {
    if p.is_zero() {
        return Ok(false);
    }
    for (v, _) in &consts.modulus.finite {
        let e = valuation(p, v)?.expect("nonzero");
        if if tilde { e % 2 != 0 } else { e != 0 } {
            return Ok(false);
        }
    }
    let part = p_partition(p, consts)?;
    let mut g = GalElem::IDENTITY;
    for (s, places) in &part.fibers {
        if !places.is_empty() && !s.is_identity() && *s != sigma {
            return Ok(false);
        }
        for _ in places {
            g = g * *s;
        }
    }
    Ok(g == sigma)
}

/// A semilocal ring: the intersection of the valuation rings at the places
/// of `delta`, together with the data it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilocalRing {
    pub sigma: GalElem,
    pub p: Option<Elem>,
    pub q: Option<Elem>,
    pub delta: Vec<Place>,
}

impl SemilocalRing {
    /// A ring given directly by its defining places.
    pub fn from_places(delta: Vec<Place>) -> SemilocalRing {
        SemilocalRing {
            sigma: GalElem::IDENTITY,
            p: None,
            q: None,
            delta,
        }
    }
}

pub(super) fn intersect(sets: Vec<Vec<Place>>) -> Vec<Place> {
    let mut it = sets.into_iter();
    let mut acc = it.next().unwrap_or_default();
    for s in it {
        acc.retain(|v| s.contains(v));
    }
    acc
}

/// The ramification sets whose intersection defines the ring attached to
/// sigma, over all places. Over F_q(t) the sets for (1,-1) and (-1,1) also
/// include Delta_{b,dp} and Delta_{a,cp} respectively.
pub(super) fn delta_family(
    sigma: GalElem,
    p: &Elem,
    q: Option<&Elem>,
    consts: &CftConstants,
) -> Result<Vec<Vec<Place>>> {
    if p.is_zero() {
        return domain("r_delta: p = 0");
    }
    p.check_same_field(&consts.a)?;
    let field = consts.a.field();
    let (a, b) = (&consts.a, &consts.b);
    let ab = a * b;
    let delta = |x: &Elem, y: &Elem| -> Result<Vec<Place>> { Ok(delta_set(x, y, field)?.places) };
    Ok(match (sigma.0, sigma.1) {
        (1, 1) => {
            let q = match q {
                Some(q) if !q.is_zero() => q,
                _ => return domain("the (1,1) ring needs a nonzero q"),
            };
            vec![delta(&(a * p), q)?, delta(&(b * p), q)?]
        }
        (-1, -1) => vec![delta(a, p)?, delta(b, p)?],
        (-1, 1) => {
            let mut s = vec![delta(a, p)?, delta(&ab, p)?];
            if let Some(c) = &consts.c {
                s.push(delta(a, &(c * p))?);
            }
            s
        }
        _ => {
            let mut s = vec![delta(b, p)?, delta(&ab, p)?];
            if let Some(d) = &consts.d {
                s.push(delta(b, &(d * p))?);
            }
            s
        }
    })
}

/// The ring attached to sigma and p (and q when sigma is the identity): the
/// intersection of the ramification sets of `delta_family`, taken among the
/// places coprime to the modulus.
pub fn r_delta(
    sigma: GalElem,
    p: &Elem,
    q: Option<&Elem>,
    consts: &CftConstants,
) -> Result<SemilocalRing> {
    let mut places = intersect(delta_family(sigma, p, q, consts)?);
    places.retain(|v| v.is_finite() && !consts.modulus.contains(v));
    Ok(SemilocalRing {
        sigma,
        p: Some(p.clone()),
        q: if sigma.is_identity() {
            q.cloned()
        } else {
            None
        },
        delta: places,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosetMode {
    /// x in c . K^x2 . R^x
    Units,
    /// x in c . K^x2 . (1 + J(R))
    OnePlusJ,
}

/// Local reading of the coset conditions: at every place of the ring, x/c
/// has even valuation, and for `OnePlusJ` its unit part is a residue square
/// (vacuous at a dyadic place).
pub fn coset_membership(x: &Elem, c: &Elem, ring: &SemilocalRing, mode: CosetMode) -> Result<bool> {
    if x.is_zero() || c.is_zero() {
        return domain("coset membership of zero");
    }
    let y = x.checked_div(c)?;
    for v in &ring.delta {
        if v.is_archimedean() {
            return domain("semilocal ring with an archimedean place");
        }
        if valuation(&y, v)?.expect("nonzero") % 2 != 0 {
            return Ok(false);
        }
        if mode == CosetMode::OnePlusJ && !v.is_dyadic() && unit_character(&y, v)? != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership in the Jacobson radical: positive valuation at every place.
pub fn j_membership(x: &Elem, ring: &SemilocalRing) -> Result<bool> {
    if x.is_zero() {
        return Ok(true);
    }
    for v in &ring.delta {
        if valuation(x, v)?.expect("nonzero") < 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership of (p, q) in Psi_K.
pub fn psi_membership(p: &Elem, q: &Elem, consts: &CftConstants) -> Result<bool> {
    if p.is_zero() || q.is_zero() {
        return Ok(false);
    }
    if !phi_membership(p, GalElem::IDENTITY, consts, true)?
        || !phi_membership(q, GalElem(-1, -1), consts, true)?
    {
        return Ok(false);
    }
    let ap = &consts.a * p;
    let mut sign = 1;
    for v in consts.modulus.places() {
        sign *= hilbert_symbol(&ap, q, &v)?;
    }
    if sign != -1 {
        return Ok(false);
    }
    let ring = r_delta(GalElem(-1, -1), q, None, consts)?;
    coset_membership(p, &consts.a, &ring, CosetMode::OnePlusJ)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GlobalField;

    fn q(n: i64) -> Elem {
        Elem::rational(n, 1)
    }

    fn consts() -> CftConstants {
        CftConstants::new(q(17), q(13), None, None).unwrap()
    }

    #[test]
    fn partitions() {
        let c = consts();
        let part = p_partition(&q(12), &c).unwrap();
        assert_eq!(part.odd, vec![Place::Prime(3)]);
        assert!(p_partition(&q(49), &c).unwrap().odd.is_empty());
        let part = p_partition(&q(21), &c).unwrap();
        let a3 = artin_place(&Place::Prime(3), &c).unwrap();
        let a7 = artin_place(&Place::Prime(7), &c).unwrap();
        assert!(part.fiber(a3).contains(&Place::Prime(3)));
        assert!(part.fiber(a7).contains(&Place::Prime(7)));
        assert_eq!(
            p_partition(&q(26), &c).unwrap().in_modulus,
            vec![Place::Prime(2), Place::Prime(13)]
        );
    }

    #[test]
    fn phi_examples() {
        let c = consts();
        // chi_3(17) = -1, chi_3(13) = 1
        assert!(phi_membership(&q(3), GalElem(-1, 1), &c, false).unwrap());
        assert!(!phi_membership(&q(3), GalElem(1, -1), &c, false).unwrap());
        assert!(phi_membership(&q(3 * 25), GalElem(-1, 1), &c, true).unwrap());
        assert!(!phi_membership(&q(3 * 25 * 4), GalElem(-1, 1), &c, false).unwrap());
        assert!(phi_membership(&q(3 * 25 * 4), GalElem(-1, 1), &c, true).unwrap());
        // 7: chi_7(17) = chi_7(3) = -1, chi_7(13) = chi_7(6) = -1
        assert_eq!(artin_place(&Place::Prime(7), &c).unwrap(), GalElem(-1, -1));
        assert!(!phi_membership(&q(21), GalElem(1, -1), &c, false).unwrap());
        assert!(!phi_membership(&q(21), GalElem(-1, 1), &c, false).unwrap());
    }

    #[test]
    fn coset_and_radical() {
        let r7 = SemilocalRing::from_places(vec![Place::Prime(7)]);
        let empty = SemilocalRing::from_places(vec![]);
        assert!(coset_membership(&q(5), &q(3), &empty, CosetMode::OnePlusJ).unwrap());
        assert!(coset_membership(&q(14), &q(7), &r7, CosetMode::Units).unwrap());
        assert!(!coset_membership(&q(3), &q(1), &r7, CosetMode::OnePlusJ).unwrap());
        assert!(coset_membership(&q(2), &q(1), &r7, CosetMode::OnePlusJ).unwrap());
        assert!(!coset_membership(&q(7), &q(1), &r7, CosetMode::Units).unwrap());
        let r3 = SemilocalRing::from_places(vec![Place::Prime(3)]);
        assert!(j_membership(&q(6), &r3).unwrap());
        assert!(!j_membership(&q(2), &r3).unwrap());
        assert!(j_membership(&q(2), &empty).unwrap());
        assert!(j_membership(&q(0), &r3).unwrap());
    }

    #[test]
    fn delta_rings() {
        let c = consts();
        let r = r_delta(GalElem(-1, -1), &q(7), None, &c).unwrap();
        assert_eq!(r.delta, vec![Place::Prime(7)]);
        assert!(r_delta(GalElem(-1, -1), &q(49), None, &c)
            .unwrap()
            .delta
            .is_empty());
        assert!(r_delta(GalElem(1, 1), &q(7), None, &c).is_err());
        let f3 = GlobalField::function_field(3).unwrap();
        let fc = CftConstants::new(f3.int(2), f3.parse_elem("t^2+2").unwrap(), None, None).unwrap();
        assert!(r_delta(GalElem(-1, -1), &f3.t().unwrap(), None, &fc).is_ok());
    }
}
