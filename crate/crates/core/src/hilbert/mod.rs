//! Hilbert symbols, ramification sets of quaternion algebras, and the norm
//! predicate for quadratic extensions.

mod quaternion;

pub use quaternion::{s_witness_search, t_membership, t_witness_search, Quaternion};

use crate::error::{domain, Result};
use crate::field::{
    dyadic_unit_mod8, support, unit_character, valuation, Elem, GlobalField, Place,
};

fn require_nonzero(a: &Elem, b: &Elem) -> Result<()> {
    if a.is_zero() || b.is_zero() {
        return domain("Hilbert symbol of zero");
    }
    a.check_same_field(b)
}

fn eps(u: u64) -> u64 {
    ((u - 1) / 2) & 1
}

fn omega(u: u64) -> u64 {
    ((u * u - 1) / 8) & 1
}

/// (a, b)_v: +1 iff z^2 = a x^2 + b y^2 has a nontrivial solution over K_v.
pub fn hilbert_symbol(a: &Elem, b: &Elem, v: &Place) -> Result<i8> {
    require_nonzero(a, b)?;
    let field = a.field();
    if !v.belongs_to(field) {
        return domain(format!("place {v} does not belong to {field}"));
    }
    if v.is_archimedean() {
        let neg = a.signum() == Some(-1) && b.signum() == Some(-1);
        return Ok(if neg { -1 } else { 1 });
    }
    let alpha = valuation(a, v)?.expect("nonzero");
    let beta = valuation(b, v)?.expect("nonzero");
    if v.is_dyadic() {
        let u = dyadic_unit_mod8(a);
        let w = dyadic_unit_mod8(b);
        let e = eps(u) * eps(w)
            + (alpha.rem_euclid(2) as u64) * omega(w)
            + (beta.rem_euclid(2) as u64) * omega(u);
        return Ok(if e.is_multiple_of(2) { 1 } else { -1 });
    }
    let minus_one = field.int(-1);
    let mut s = 1i8;
    if (alpha * beta) % 2 != 0 {
        s *= unit_character(&minus_one, v)?;
    }
    if beta % 2 != 0 {
        s *= unit_character(a, v)?;
    }
    if alpha % 2 != 0 {
        s *= unit_character(b, v)?;
    }
    Ok(s)
}

/// Places outside of which (a, b)_v = +1 is automatic: over Q the primes
/// dividing 2ab and the real place, over F_q(t) the irreducibles dividing ab
/// and the degree place.
pub fn candidate_places(a: &Elem, b: &Elem) -> Result<Vec<Place>> {
    require_nonzero(a, b)?;
    let field = a.field();
    let mut prod = a * b;
    if field.is_rational() {
        prod = prod * field.int(2);
    }
    let mut places = support(&prod)?;
    places.push(field.infinite_place());
    places.sort();
    places.dedup();
    Ok(places)
}

/// The places where the quaternion algebra (a, b) over K does not split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationSet {
    pub a: Elem,
    pub b: Elem,
    pub places: Vec<Place>,
}

impl RamificationSet {
    pub fn contains(&self, v: &Place) -> bool {
        self.places.contains(v)
    }

    pub fn len(&self) -> usize {
        self.places.len()
    }

    pub fn is_empty(&self) -> bool {
        self.places.is_empty()
    }

    /// Nonarchimedean members (those with a valuation ring).
    pub fn nonarchimedean(&self) -> impl Iterator<Item = &Place> {
        self.places.iter().filter(|v| !v.is_archimedean())
    }
}

pub fn delta_set(a: &Elem, b: &Elem, field: GlobalField) -> Result<RamificationSet> {
    require_nonzero(a, b)?;
    if a.field() != field {
        return domain(format!("{a} is not an element of {field}"));
    }
    let mut places = Vec::new();
    for v in candidate_places(a, b)? {
        if hilbert_symbol(a, b, &v)? == -1 {
            places.push(v);
        }
    }
    Ok(RamificationSet {
        a: a.clone(),
        b: b.clone(),
        places,
    })
}

/// Whether x is a norm from K(sqrt y). By Hasse's norm theorem this is the
/// vanishing of (y, x)_v at every place.
pub fn is_norm(x: &Elem, y: &Elem, field: GlobalField) -> Result<bool> {
    require_nonzero(x, y)?;
    if x.field() != field {
        return domain(format!("{x} is not an element of {field}"));
    }
    if y.sqrt().is_some() {
        return Ok(true);
    }
    for v in candidate_places(y, x)? {
        if hilbert_symbol(y, x, &v)? == -1 {
            return Ok(false);
        }
    }
    Ok(true)
}
