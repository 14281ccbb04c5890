use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::int::{factor_u64, least_nonresidue, legendre};
use super::{Elem, GlobalField, Place, Poly};
use crate::error::{domain, Error, Result};

/// `unit * prod place^exponent`, places finite and strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Elem,
    pub factors: Vec<(Place, i64)>,
}

impl Factorization {
    pub fn reconstruct(&self) -> Elem {
        self.factors.iter().fold(self.unit.clone(), |acc, (p, e)| {
            let g = p.generator().expect("finite place");
            acc * g.pow(*e).expect("generator is nonzero")
        })
    }

    pub fn exponent(&self, v: &Place) -> i64 {
        self.factors
            .iter()
            .find(|(p, _)| p == v)
            .map_or(0, |(_, e)| *e)
    }
}

fn big_to_u64(n: &BigInt) -> Result<u64> {
    n.abs()
        .to_u64()
        .ok_or_else(|| Error::Domain(format!("{n} exceeds the 64-bit factoring bound")))
}

fn merge(mut factors: Vec<(Place, i64)>) -> Vec<(Place, i64)> {
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Vec<(Place, i64)> = Vec::new();
    for (p, e) in factors {
        match out.last_mut() {
            Some((q, k)) if *q == p => *k += e,
            _ => out.push((p, e)),
        }
    }
    out.retain(|(_, e)| *e != 0);
    out
}

/// Unique factorization of a nonzero element into finite places.
pub fn factor(x: &Elem) -> Result<Factorization> {
    if x.is_zero() {
        return domain("factor of zero");
    }
    match x {
        Elem::Rat(r) => {
            let mut fs = Vec::new();
            for (p, e) in factor_u64(big_to_u64(r.numer())?) {
                fs.push((Place::Prime(p), e as i64));
            }
            for (p, e) in factor_u64(big_to_u64(r.denom())?) {
                fs.push((Place::Prime(p), -(e as i64)));
            }
            let unit = x.field().int(if r.is_negative() { -1 } else { 1 });
            Ok(Factorization {
                unit,
                factors: merge(fs),
            })
        }
        Elem::Fun(f) => {
            let q = f.q();
            let (lc, num) = f.num().factor();
            let (_, den) = f.den().factor();
            let fs = num
                .into_iter()
                .map(|(p, e)| (Place::Irreducible(p), e as i64))
                .chain(
                    den.into_iter()
                        .map(|(p, e)| (Place::Irreducible(p), -(e as i64))),
                )
                .collect();
            Ok(Factorization {
                unit: Elem::from_poly(Poly::constant(q, lc)),
                factors: merge(fs),
            })
        }
    }
}

/// Finite places where `x` has nonzero valuation.
pub fn support(x: &Elem) -> Result<Vec<Place>> {
    Ok(factor(x)?.factors.into_iter().map(|(p, _)| p).collect())
}

fn int_val(n: &BigInt, p: u64) -> (i64, BigInt) {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut k = 0;
    while !n.is_zero() && n.is_multiple_of(&p) {
        n /= &p;
        k += 1;
    }
    (k, n)
}

fn poly_val(f: &Poly, pi: &Poly) -> (i64, Poly) {
    let mut f = f.clone();
    let mut k = 0;
    while !f.is_zero() {
        match f.div_exact(pi) {
            Some(g) => {
                f = g;
                k += 1;
            }
            None => break,
        }
    }
    (k, f)
}

fn check_place(x: &Elem, v: &Place) -> Result<()> {
    if v.belongs_to(x.field()) {
        Ok(())
    } else {
        domain(format!("place {v} does not belong to {}", x.field()))
    }
}

/// Normalized valuation; `None` stands for +infinity (x = 0). Over F_q(t)
/// the degree place has v(x) = deg(den) - deg(num).
pub fn valuation(x: &Elem, v: &Place) -> Result<Option<i64>> {
    check_place(x, v)?;
    if x.is_zero() {
        return if v.is_archimedean() {
            domain("the real place has no valuation")
        } else {
            Ok(None)
        };
    }
    Ok(Some(match (x, v) {
        (_, Place::RealInf) => return domain("the real place has no valuation"),
        (Elem::Rat(r), Place::Prime(p)) => int_val(r.numer(), *p).0 - int_val(r.denom(), *p).0,
        (Elem::Fun(f), Place::Irreducible(pi)) => poly_val(f.num(), pi).0 - poly_val(f.den(), pi).0,
        (Elem::Fun(f), Place::DegreeInf) => {
            f.den().degree().expect("nonzero") as i64 - f.num().degree().expect("nonzero") as i64
        }
        _ => unreachable!("checked by check_place"),
    }))
}

fn finite_valuation(x: &Elem, v: &Place) -> Result<i64> {
    valuation(x, v)?.ok_or_else(|| Error::Domain("valuation of zero".into()))
}

/// Quadratic character of the residue of `x / uniformizer^v(x)` at a
/// nondyadic nonarchimedean place.
pub(crate) fn unit_character(x: &Elem, v: &Place) -> Result<i8> {
    check_place(x, v)?;
    if x.is_zero() {
        return domain("character of zero");
    }
    match (x, v) {
        (Elem::Rat(r), Place::Prime(p)) => {
            if *p == 2 {
                return domain("residue symbol at the dyadic place");
            }
            let (_, n) = int_val(r.numer(), *p);
            let (_, d) = int_val(r.denom(), *p);
            let pb = BigInt::from(*p);
            let nd = (n * d).mod_floor(&pb).to_u64().expect("reduced");
            Ok(legendre(nd, *p))
        }
        (Elem::Fun(f), Place::Irreducible(pi)) => {
            let (_, n) = poly_val(f.num(), pi);
            let (_, d) = poly_val(f.den(), pi);
            Ok(n.quadratic_character(pi) * d.quadratic_character(pi))
        }
        (Elem::Fun(f), Place::DegreeInf) => {
            let q = f.q();
            let lc = super::int::mul_mod(f.num().lc(), f.den().lc(), q);
            Ok(legendre(lc, q))
        }
        (_, Place::RealInf) => domain("residue symbol at the real place"),
        _ => unreachable!("checked by check_place"),
    }
}

/// +1 iff the unit `u` is a square in the residue field at `v`.
pub fn residue_symbol(u: &Elem, v: &Place) -> Result<i8> {
    if v.is_archimedean() {
        return domain("residue symbol at the real place");
    }
    if v.is_dyadic() {
        return domain("residue symbol at the dyadic place");
    }
    if finite_valuation(u, v)? != 0 {
        return domain(format!("{u} is not a unit at {v}"));
    }
    unit_character(u, v)
}

/// Odd part of a nonzero rational modulo 8 (the class of the 2-adic unit).
pub(crate) fn dyadic_unit_mod8(x: &Elem) -> u64 {
    let r = x.as_rational().expect("rational");
    let (_, n) = int_val(r.numer(), 2);
    let (_, d) = int_val(r.denom(), 2);
    (n * d)
        .mod_floor(&BigInt::from(8))
        .to_u64()
        .expect("reduced")
}

/// Global square test.
pub fn is_square(x: &Elem) -> Result<bool> {
    if x.is_zero() {
        return domain("is_square of zero");
    }
    Ok(match x {
        Elem::Rat(r) => {
            let n = r.numer();
            let d = r.denom();
            n.is_positive() && n.sqrt().pow(2) == *n && d.sqrt().pow(2) == *d
        }
        Elem::Fun(f) => f.num().mul(f.den()).sqrt().is_some(),
    })
}

/// Square test in the completion at `v`.
pub fn is_local_square(x: &Elem, v: &Place) -> Result<bool> {
    check_place(x, v)?;
    if x.is_zero() {
        return domain("is_square of zero");
    }
    if v.is_archimedean() {
        return Ok(x.signum() == Some(1));
    }
    if finite_valuation(x, v)? % 2 != 0 {
        return Ok(false);
    }
    if v.is_dyadic() {
        return Ok(dyadic_unit_mod8(x) == 1);
    }
    Ok(unit_character(x, v)? == 1)
}

/// Whether `x` and `y` lie in the same class of K_v^x / K_v^x2.
pub fn same_square_class(x: &Elem, y: &Elem, v: &Place) -> Result<bool> {
    is_local_square(&(x * y), v)
}

/// A fixed nonsquare unit at a nondyadic nonarchimedean place: the least
/// nonresidue mod p, the least polynomial (in canonical order) of degree
/// below deg(pi) with character -1, or the least constant nonresidue at the
/// degree place.
pub fn nonresidue_at(v: &Place, field: GlobalField) -> Result<Elem> {
    match v {
        Place::Prime(2) | Place::RealInf => domain(format!("no residue character at {v}")),
        Place::Prime(p) => Ok(field.int(least_nonresidue(*p) as i64)),
        Place::Irreducible(pi) => {
            let q = pi.modulus();
            let d = pi.degree().expect("nonzero") as u32;
            let u = Poly::all_below_degree(q, d)
                .find(|a| !a.is_zero() && a.quadratic_character(pi) == -1)
                .expect("residue field has a nonsquare");
            Ok(Elem::from_poly(u))
        }
        Place::DegreeInf => {
            let q = field
                .q()
                .ok_or_else(|| Error::Domain("degree place over Q".into()))?;
            Ok(field.int(least_nonresidue(q) as i64))
        }
    }
}

/// Representatives of K_v^x / K_v^x2.
pub fn square_class_reps(v: &Place, field: GlobalField) -> Result<Vec<Elem>> {
    if !v.belongs_to(field) {
        return domain(format!("place {v} does not belong to {field}"));
    }
    Ok(match v {
        Place::RealInf => vec![field.int(1), field.int(-1)],
        Place::Prime(2) => [1, -1, 2, -2, 5, -5, 10, -10]
            .iter()
            .map(|&c| field.int(c))
            .collect(),
        _ => {
            let u = nonresidue_at(v, field)?;
            let pi = v.uniformizer(field).expect("nonarchimedean");
            vec![field.one(), u.clone(), pi.clone(), u * pi]
        }
    })
}

/// Residue of the unit part of `x` at a nonarchimedean place, as a
/// polynomial of degree < deg(place) (an integer mod p over Q is returned as
/// a constant over F_p). Used by the brute-force local oracle.
pub fn local_unit_residue(x: &Elem, v: &Place) -> Result<Poly> {
    check_place(x, v)?;
    if x.is_zero() {
        return domain("residue of zero");
    }
    match (x, v) {
        (Elem::Rat(r), Place::Prime(p)) => {
            let (_, n) = int_val(r.numer(), *p);
            let (_, d) = int_val(r.denom(), *p);
            let pb = BigInt::from(*p);
            let n = n.mod_floor(&pb).to_u64().expect("reduced");
            let d = d.mod_floor(&pb).to_u64().expect("reduced");
            let u = super::int::mul_mod(n, super::int::inv_mod(d, *p), *p);
            Ok(Poly::constant(*p, u))
        }
        (Elem::Fun(f), Place::Irreducible(pi)) => {
            let (_, n) = poly_val(f.num(), pi);
            let (_, d) = poly_val(f.den(), pi);
            let q = f.q();
            // invert d modulo pi by exponentiation in the residue field
            let size = pi.modulus().pow(pi.degree().expect("nonzero") as u32);
            let dinv = d.pow_mod(size - 2, pi);
            Ok(n.mul_mod(&dinv, pi).rem(pi)).map(|r| Poly::from_coeffs(q, r.coeffs().to_vec()))
        }
        (Elem::Fun(f), Place::DegreeInf) => {
            let q = f.q();
            let u = super::int::mul_mod(f.num().lc(), super::int::inv_mod(f.den().lc(), q), q);
            Ok(Poly::constant(q, u))
        }
        _ => domain(format!("no residue field at {v}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Elem {
        GlobalField::Rationals.parse_elem(s).unwrap()
    }

    fn f(qq: u64, s: &str) -> Elem {
        GlobalField::function_field(qq)
            .unwrap()
            .parse_elem(s)
            .unwrap()
    }

    #[test]
    fn factor_examples() {
        let fx = factor(&q("-12")).unwrap();
        assert_eq!(fx.unit, q("-1"));
        assert_eq!(fx.factors, vec![(Place::Prime(2), 2), (Place::Prime(3), 1)]);
        let fx = factor(&q("9/4")).unwrap();
        assert_eq!(fx.unit, q("1"));
        assert_eq!(
            fx.factors,
            vec![(Place::Prime(2), -2), (Place::Prime(3), 2)]
        );
        let fx = factor(&f(3, "t^2+t")).unwrap();
        assert_eq!(fx.unit, f(3, "1"));
        assert_eq!(
            fx.factors,
            vec![
                (Place::Irreducible(Poly::t(3)), 1),
                (Place::Irreducible(Poly::from_signed(3, &[1, 1])), 1)
            ]
        );
        assert!(matches!(factor(&q("0")), Err(Error::Domain(_))));
        assert_eq!(fx.reconstruct(), f(3, "t^2+t"));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&q("12"), &Place::Prime(2)).unwrap(), Some(2));
        let pi = Place::Irreducible(Poly::from_signed(5, &[1, 1]));
        assert_eq!(valuation(&f(5, "1/(t+1)"), &pi).unwrap(), Some(-1));
        assert_eq!(
            valuation(&f(3, "t^2+1"), &Place::DegreeInf).unwrap(),
            Some(-2)
        );
        assert_eq!(valuation(&q("0"), &Place::Prime(3)).unwrap(), None);
        assert!(valuation(&q("3"), &Place::RealInf).is_err());
        assert!(valuation(&q("3"), &Place::DegreeInf).is_err());
    }

    #[test]
    fn residue_symbol_examples() {
        assert_eq!(residue_symbol(&q("3"), &Place::Prime(7)).unwrap(), -1);
        assert_eq!(residue_symbol(&q("2"), &Place::Prime(7)).unwrap(), 1);
        assert_eq!(residue_symbol(&q("25/9"), &Place::Prime(7)).unwrap(), 1);
        assert!(residue_symbol(&q("7"), &Place::Prime(7)).is_err());
        assert!(residue_symbol(&q("3"), &Place::Prime(2)).is_err());
        // 3/5 mod 7 = 3 * 3 = 2, a square
        assert_eq!(residue_symbol(&q("3/5"), &Place::Prime(7)).unwrap(), 1);
    }

    #[test]
    fn square_examples() {
        assert!(is_square(&q("9/16")).unwrap());
        assert!(!is_square(&q("-9/16")).unwrap());
        assert!(!is_square(&q("8")).unwrap());
        assert!(is_local_square(&q("17"), &Place::Prime(2)).unwrap());
        assert!(!is_local_square(&q("5"), &Place::Prime(2)).unwrap());
        assert!(!is_local_square(&f(3, "t"), &Place::DegreeInf).unwrap());
        assert!(is_local_square(&f(3, "t^2+2"), &Place::DegreeInf).unwrap());
        assert!(!is_local_square(&f(3, "2t^2"), &Place::DegreeInf).unwrap());
        assert!(is_square(&f(3, "(t+1)^2/(t^2)")).unwrap());
        assert!(!is_square(&f(3, "2(t+1)^2")).unwrap());
        assert!(is_square(&q("0")).is_err());
    }

    #[test]
    fn class_representatives() {
        let qf = GlobalField::Rationals;
        assert_eq!(
            square_class_reps(&Place::RealInf, qf).unwrap(),
            vec![q("1"), q("-1")]
        );
        assert_eq!(square_class_reps(&Place::Prime(2), qf).unwrap().len(), 8);
        assert_eq!(
            square_class_reps(&Place::Prime(7), qf).unwrap(),
            vec![q("1"), q("3"), q("7"), q("21")]
        );
        let f3 = GlobalField::function_field(3).unwrap();
        assert_eq!(
            square_class_reps(&Place::Irreducible(Poly::t(3)), f3).unwrap(),
            vec![f(3, "1"), f(3, "2"), f(3, "t"), f(3, "2t")]
        );
        assert_eq!(
            square_class_reps(&Place::DegreeInf, f3).unwrap(),
            vec![f(3, "1"), f(3, "2"), f(3, "1/t"), f(3, "2/t")]
        );
    }

    #[test]
    fn even_degree_place_nonresidue_is_not_constant() {
        // constants are squares in F_9, so the nonresidue must involve t
        let pi = Poly::from_signed(3, &[1, 0, 1]);
        let f3 = GlobalField::function_field(3).unwrap();
        let u = nonresidue_at(&Place::Irreducible(pi.clone()), f3).unwrap();
        assert!(!u.as_ratfn().unwrap().num().is_constant());
        assert_eq!(residue_symbol(&u, &Place::Irreducible(pi)).unwrap(), -1);
    }
}
