//! The biquadratic extension L = K(sqrt a, sqrt b): its Artin map, the
//! prime sets cut out by Frobenius classes, the semilocal rings built from
//! ramification sets, and the machinery that turns local symbol conditions
//! at a single prime into statements about global elements.

mod constants;
mod quadruple;
mod sets;

pub use constants::{
    bundled_constants, find_constants, verify_constants, CftConstants, ConstantsFixture,
    VerificationReport,
};
pub use quadruple::{
    dagger, direct_sweep, eval_anisotropy4, eval_symbol_agreement, isolate_prime, reciprocity_check,
    DaggerContext, Isolation, SweepOutcome, ReciprocityReport, ScanBound, SymbolRelation, Tri,
};
pub use sets::{
    coset_membership, j_membership, p_partition, phi_membership, psi_membership, r_delta,
    CosetMode, Partition, SemilocalRing,
};

use std::fmt;

use crate::error::{domain, Error, Result};
use crate::field::{factor, is_square, residue_symbol, valuation, Elem, GlobalField, Place};

/// An element of Gal(L/K) = {+-1}^2, recorded by its action on sqrt a and
/// sqrt b.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GalElem(pub i8, pub i8);

impl GalElem {
    pub const IDENTITY: GalElem = GalElem(1, 1);

    /// Identity first, then (-1,-1), (-1,1), (1,-1).
    pub const ALL: [GalElem; 4] = [
        GalElem(1, 1),
        GalElem(-1, -1),
        GalElem(-1, 1),
        GalElem(1, -1),
    ];

    pub fn new(i: i8, j: i8) -> Result<GalElem> {
        if (i == 1 || i == -1) && (j == 1 || j == -1) {
            Ok(GalElem(i, j))
        } else {
            domain(format!("({i}, {j}) is not an element of the Galois group"))
        }
    }

    pub fn is_identity(self) -> bool {
        self == GalElem::IDENTITY
    }

    pub fn parse(s: &str) -> Result<GalElem> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected (i,j), got {s:?}")))?;
        let mut parts = inner.split(',').map(|x| x.trim().parse::<i8>());
        match (parts.next(), parts.next(), parts.next()) {
            (Some(Ok(i)), Some(Ok(j)), None) => GalElem::new(i, j),
            _ => Err(Error::Parse(format!("expected (i,j), got {s:?}"))),
        }
    }
}

impl std::ops::Mul for GalElem {
    type Output = GalElem;

    fn mul(self, other: GalElem) -> GalElem {
        GalElem(self.0 * other.0, self.1 * other.1)
    }
}

impl fmt::Display for GalElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

/// A modulus: finite places with exponents together with infinite places.
/// Over F_q(t) the degree place is listed among the infinite places and
/// imposes v_inf(x - 1) >= 1 in congruences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Modulus {
    pub finite: Vec<(Place, u32)>,
    pub infinite: Vec<Place>,
}

impl Modulus {
    /// Whether the place occurs in the modulus.
    pub fn contains(&self, v: &Place) -> bool {
        self.infinite.contains(v) || self.finite.iter().any(|(p, _)| p == v)
    }

    pub fn places(&self) -> Vec<Place> {
        self.finite
            .iter()
            .map(|(p, _)| p.clone())
            .chain(self.infinite.iter().cloned())
            .collect()
    }

    /// The fractional ideal of x avoids every finite place of the modulus.
    pub fn coprime(&self, x: &Elem) -> Result<bool> {
        if x.is_zero() {
            return Ok(false);
        }
        for (p, _) in &self.finite {
            if valuation(x, p)? != Some(0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// x = 1 mod* m: v_p(x - 1) >= e at the finite places, positivity at the
    /// real place, v_inf(x - 1) >= 1 at the degree place.
    pub fn congruent_to_one(&self, x: &Elem) -> Result<bool> {
        if !self.coprime(x)? {
            return Ok(false);
        }
        let y = x - &x.field().one();
        if y.is_zero() {
            return Ok(true);
        }
        for (p, e) in &self.finite {
            if valuation(&y, p)?.is_some_and(|k| k < *e as i64) {
                return Ok(false);
            }
        }
        for v in &self.infinite {
            let ok = match v {
                Place::RealInf => x.signum() == Some(1),
                _ => valuation(&y, v)?.is_some_and(|k| k >= 1),
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (p, e) in &self.finite {
            let g = p.generator().expect("finite place").to_string();
            let g = if g.contains('+') || g.contains('*') {
                format!("({g})")
            } else {
                g
            };
            parts.push(if *e == 1 { g } else { format!("{g}^{e}") });
        }
        parts.extend(self.infinite.iter().map(|_| "inf".to_string()));
        f.write_str(&parts.join("*"))
    }
}

fn check_biquadratic(a: &Elem, b: &Elem) -> Result<()> {
    a.check_same_field(b)?;
    if a.is_zero() || b.is_zero() {
        return domain("zero parameter");
    }
    for (name, x) in [("a", a.clone()), ("b", b.clone()), ("ab", a * b)] {
        if is_square(&x)? {
            return domain(format!(
                "{name} = {x} is a square: K(sqrt a, sqrt b) is not biquadratic"
            ));
        }
    }
    Ok(())
}

/// A multiple of the conductor of K(sqrt a, sqrt b)/K: over Q 2^3, the odd
/// primes dividing ab and the real place; over F_q(t) the irreducibles
/// dividing ab and the degree place.
pub fn admissible_modulus(a: &Elem, b: &Elem, field: GlobalField) -> Result<Modulus> {
    check_biquadratic(a, b)?;
    if a.field() != field {
        return domain(format!("{a} is not an element of {field}"));
    }
    let fx = factor(&(a * b))?;
    let mut finite: Vec<(Place, u32)> = Vec::new();
    if field.is_rational() {
        finite.push((Place::Prime(2), 3));
    }
    for (p, _) in fx.factors {
        if !p.is_dyadic() {
            finite.push((p, 1));
        }
    }
    finite.sort();
    Ok(Modulus {
        finite,
        infinite: vec![field.infinite_place()],
    })
}

/// Frobenius of an unramified finite place: (chi(a), chi(b)) in the residue
/// field.
pub fn artin_place(v: &Place, consts: &CftConstants) -> Result<GalElem> {
    if v.is_infinite() {
        return domain("the Artin map is defined on finite places");
    }
    if consts.modulus.contains(v) {
        return domain(format!("{v} divides the modulus"));
    }
    GalElem::new(residue_symbol(&consts.a, v)?, residue_symbol(&consts.b, v)?)
}

/// Artin map on the principal ideal (x), extended multiplicatively.
pub fn artin_map(x: &Elem, consts: &CftConstants) -> Result<GalElem> {
    if !consts.modulus.coprime(x)? {
        return domain(format!(
            "({x}) is not coprime to the modulus {}",
            consts.modulus
        ));
    }
    let mut g = GalElem::IDENTITY;
    for (v, e) in factor(x)?.factors {
        if e % 2 != 0 {
            g = g * artin_place(&v, consts)?;
        }
    }
    Ok(g)
}
