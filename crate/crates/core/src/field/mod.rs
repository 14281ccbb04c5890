//! Exact arithmetic in the global fields Q and F_q(t), their places, and
//! the local invariants (valuations, residue symbols, square classes) that
//! everything else is built on.

pub mod expr;
pub mod int;
mod local;
pub mod poly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use expr::{eval_expr, parse_expr, ExprAlgebra};
pub(crate) use local::{dyadic_unit_mod8, unit_character};
pub use local::{
    factor, is_local_square, is_square, local_unit_residue, nonresidue_at, residue_symbol,
    same_square_class, square_class_reps, support, valuation, Factorization,
};
pub use poly::Poly;

/// The base field: Q, or F_q(t) for an odd prime q. The ring of integers is
/// Z resp. F_q[t]; for F_q(t) the place at infinity is the degree place.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GlobalField {
    Rationals,
    FunctionField { q: u64 },
}

impl GlobalField {
    pub fn function_field(q: u64) -> Result<Self> {
        if q < 3 || !int::is_prime(q) {
            return Err(Error::Domain(format!(
                "F_q(t) requires an odd prime q, got {q}"
            )));
        }
        if q >= 1 << 32 {
            return Err(Error::Domain(format!("q = {q} exceeds the 32-bit limit")));
        }
        Ok(GlobalField::FunctionField { q })
    }

    /// Parses `Q` or `F<q>(t)`.
    pub fn parse(tag: &str) -> Result<Self> {
        let tag = tag.trim();
        if tag == "Q" || tag == "QQ" {
            return Ok(GlobalField::Rationals);
        }
        let inner = tag
            .strip_prefix('F')
            .and_then(|s| s.strip_suffix("(t)"))
            .ok_or_else(|| Error::Parse(format!("unknown field tag {tag:?}")))?;
        let q: u64 = inner
            .parse()
            .map_err(|_| Error::Parse(format!("bad characteristic in {tag:?}")))?;
        Self::function_field(q)
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, GlobalField::Rationals)
    }

    /// Characteristic of the constant field (0 for Q).
    pub fn q(&self) -> Option<u64> {
        match self {
            GlobalField::Rationals => None,
            GlobalField::FunctionField { q } => Some(*q),
        }
    }

    pub fn zero(&self) -> Elem {
        self.int(0)
    }

    pub fn one(&self) -> Elem {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> Elem {
        match self {
            GlobalField::Rationals => Elem::Rat(BigRational::from_integer(n.into())),
            GlobalField::FunctionField { q } => {
                Elem::Fun(RatFn::from_poly(Poly::from_signed(*q, &[n])))
            }
        }
    }

    /// The indeterminate of F_q(t).
    pub fn t(&self) -> Option<Elem> {
        self.q().map(|q| Elem::Fun(RatFn::from_poly(Poly::t(q))))
    }

    /// The fixed nonsquare used when flattening conjunctions: 2 over Q, t
    /// over F_q(t).
    pub fn flatten_nonsquare(&self) -> Elem {
        match self {
            GlobalField::Rationals => self.int(2),
            GlobalField::FunctionField { .. } => self.t().expect("function field"),
        }
    }

    /// Infinite places (the real place, or the degree place).
    pub fn infinite_place(&self) -> Place {
        match self {
            GlobalField::Rationals => Place::RealInf,
            GlobalField::FunctionField { .. } => Place::DegreeInf,
        }
    }

    pub fn parse_elem(&self, src: &str) -> Result<Elem> {
        Elem::parse(*self, src)
    }
}

impl fmt::Display for GlobalField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GlobalField::Rationals => write!(f, "Q"),
            GlobalField::FunctionField { q } => write!(f, "F{q}(t)"),
        }
    }
}

/// Element of F_q(t) in lowest terms with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        let q = num.modulus();
        if num.is_zero() {
            return Ok(RatFn {
                num,
                den: Poly::one(q),
            });
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g).expect("gcd divides");
        let den = den.div_exact(&g).expect("gcd divides");
        let lc = den.lc();
        let inv = int::inv_mod(lc, q);
        Ok(RatFn {
            num: num.scale(inv),
            den: den.scale(inv),
        })
    }

    pub fn from_poly(p: Poly) -> Self {
        let q = p.modulus();
        RatFn {
            num: p,
            den: Poly::one(q),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn q(&self) -> u64 {
        self.num.modulus()
    }

    fn add(&self, o: &RatFn) -> RatFn {
        RatFn::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
        .expect("nonzero denominators")
    }

    fn mul(&self, o: &RatFn) -> RatFn {
        RatFn::new(self.num.mul(&o.num), self.den.mul(&o.den)).expect("nonzero denominators")
    }

    fn inv(&self) -> Option<RatFn> {
        (!self.num.is_zero())
            .then(|| RatFn::new(self.den.clone(), self.num.clone()).expect("nonzero"))
    }
}

/// An element of Q or F_q(t), always in canonical form so equality is
/// structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Rat(BigRational),
    Fun(RatFn),
}

impl Elem {
    pub fn field(&self) -> GlobalField {
        match self {
            Elem::Rat(_) => GlobalField::Rationals,
            Elem::Fun(r) => GlobalField::FunctionField { q: r.q() },
        }
    }

    pub fn rational(n: i64, d: i64) -> Elem {
        Elem::Rat(BigRational::new(n.into(), d.into()))
    }

    pub fn from_poly(p: Poly) -> Elem {
        Elem::Fun(RatFn::from_poly(p))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Elem::Rat(r) => r.is_zero(),
            Elem::Fun(f) => f.num.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Elem::Rat(r) => r.is_one(),
            Elem::Fun(f) => f.num.is_one() && f.den.is_one(),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Elem::Rat(r) => Some(r),
            Elem::Fun(_) => None,
        }
    }

    pub fn as_ratfn(&self) -> Option<&RatFn> {
        match self {
            Elem::Fun(f) => Some(f),
            Elem::Rat(_) => None,
        }
    }

    /// Sign over Q; `None` over F_q(t).
    pub fn signum(&self) -> Option<i8> {
        self.as_rational().map(|r| {
            if r.is_positive() {
                1
            } else if r.is_negative() {
                -1
            } else {
                0
            }
        })
    }

    /// Error unless both elements live in the same field.
    pub fn check_same_field(&self, other: &Elem) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{self} and {other} lie in different fields"
            )))
        }
    }

    fn assert_same_field(&self, other: &Elem) {
        assert_eq!(
            self.field(),
            other.field(),
            "arithmetic across different fields"
        );
    }

    pub fn inv(&self) -> Result<Elem> {
        match self {
            Elem::Rat(r) if r.is_zero() => Err(Error::Domain("inverse of zero".into())),
            Elem::Rat(r) => Ok(Elem::Rat(r.recip())),
            Elem::Fun(f) => f
                .inv()
                .map(Elem::Fun)
                .ok_or_else(|| Error::Domain("inverse of zero".into())),
        }
    }

    pub fn checked_div(&self, other: &Elem) -> Result<Elem> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Elem> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = self.field().one();
        let mut b = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            n >>= 1;
        }
        Ok(acc)
    }

    pub fn square(&self) -> Elem {
        self * self
    }

    pub fn parse(field: GlobalField, src: &str) -> Result<Elem> {
        let e = parse_expr(src)?;
        eval_expr(&ElemParser(field), &e)
    }

    /// Numerator and denominator over Z (Q only).
    pub fn int_parts(&self) -> Option<(&BigInt, &BigInt)> {
        self.as_rational().map(|r| (r.numer(), r.denom()))
    }

    /// Integer value if this is an integer of Q fitting in i64.
    pub fn to_i64(&self) -> Option<i64> {
        let r = self.as_rational()?;
        r.is_integer().then(|| r.numer().to_i64()).flatten()
    }

    /// Whether this is in Z resp. F_q[t].
    pub fn is_integral(&self) -> bool {
        match self {
            Elem::Rat(r) => r.is_integer(),
            Elem::Fun(f) => f.den.is_one(),
        }
    }

    /// Square root in K, if `self` is a square (the nonnegative root over Q,
    /// the root with the canonical leading coefficient over F_q(t)).
    pub fn sqrt(&self) -> Option<Elem> {
        match self {
            Elem::Rat(r) => {
                if r.is_negative() {
                    return None;
                }
                let n = r.numer().sqrt();
                let d = r.denom().sqrt();
                (&n * &n == *r.numer() && &d * &d == *r.denom())
                    .then(|| Elem::Rat(BigRational::new(n, d)))
            }
            Elem::Fun(f) => {
                let n = f.num.sqrt()?;
                let d = f.den.sqrt()?.monic();
                Some(Elem::Fun(RatFn::new(n, d).expect("nonzero denominator")))
            }
        }
    }

    /// Height: max(|num|, den) over Q, max(deg num, deg den) over F_q(t);
    /// zero has height 0.
    pub fn height(&self) -> BigInt {
        match self {
            Elem::Rat(r) => r.numer().abs().max(r.denom().clone()),
            Elem::Fun(f) => {
                let dn = f.num.degree().unwrap_or(0);
                let dd = f.den.degree().unwrap_or(0);
                BigInt::from(dn.max(dd))
            }
        }
    }
}

struct ElemParser(GlobalField);

impl ExprAlgebra for ElemParser {
    type Value = Elem;

    fn int(&self, n: &BigInt) -> Result<Elem> {
        Ok(match self.0 {
            GlobalField::Rationals => Elem::Rat(BigRational::from_integer(n.clone())),
            GlobalField::FunctionField { q } => {
                let r = n.mod_floor(&BigInt::from(q)).to_u64().expect("reduced");
                Elem::from_poly(Poly::constant(q, r))
            }
        })
    }

    fn var(&self, name: &str) -> Result<Elem> {
        match (self.0, name) {
            (GlobalField::FunctionField { .. }, "t") => Ok(self.0.t().expect("function field")),
            _ => Err(Error::Parse(format!(
                "unexpected variable {name:?} in an element of {}",
                self.0
            ))),
        }
    }

    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        a + b
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        a * b
    }

    fn neg(&self, a: &Elem) -> Elem {
        -a
    }

    fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        a.checked_div(b)
    }
}

impl<'a> Add<&'a Elem> for &'a Elem {
    type Output = Elem;
    fn add(self, rhs: &Elem) -> Elem {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a + b),
            (Elem::Fun(a), Elem::Fun(b)) => Elem::Fun(a.add(b)),
            _ => unreachable!(),
        }
    }
}

impl<'a> Mul<&'a Elem> for &'a Elem {
    type Output = Elem;
    fn mul(self, rhs: &Elem) -> Elem {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a * b),
            (Elem::Fun(a), Elem::Fun(b)) => Elem::Fun(a.mul(b)),
            _ => unreachable!(),
        }
    }
}

impl Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        match self {
            Elem::Rat(a) => Elem::Rat(-a),
            Elem::Fun(f) => Elem::Fun(RatFn {
                num: f.num.neg(),
                den: f.den.clone(),
            }),
        }
    }
}

impl<'a> Sub<&'a Elem> for &'a Elem {
    type Output = Elem;
    fn sub(self, rhs: &Elem) -> Elem {
        self + &(-rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Elem> for Elem {
            type Output = Elem;
            fn $m(self, rhs: Elem) -> Elem {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Elem> for Elem {
            type Output = Elem;
            fn $m(self, rhs: &Elem) -> Elem {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        -&self
    }
}

fn fmt_poly_factor(p: &Poly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.coeffs().iter().filter(|&&c| c != 0).count() > 1 {
        write!(f, "({p})")
    } else {
        write!(f, "{p}")
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Elem::Fun(r) => {
                if r.den.is_one() {
                    write!(f, "{}", r.num)
                } else {
                    fmt_poly_factor(&r.num, f)?;
                    write!(f, "/")?;
                    fmt_poly_factor(&r.den, f)
                }
            }
        }
    }
}

/// A place of the base field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    /// A rational prime.
    Prime(u64),
    /// The real place of Q.
    RealInf,
    /// A monic irreducible of F_q[t].
    Irreducible(Poly),
    /// The degree place of F_q(t), uniformizer 1/t.
    DegreeInf,
}

impl Place {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Place::RealInf | Place::DegreeInf)
    }

    /// Finite in the sense of the ring of integers Z / F_q[t].
    pub fn is_finite(&self) -> bool {
        !self.is_infinite()
    }

    pub fn is_archimedean(&self) -> bool {
        matches!(self, Place::RealInf)
    }

    pub fn is_dyadic(&self) -> bool {
        matches!(self, Place::Prime(2))
    }

    pub fn field(&self, hint: GlobalField) -> GlobalField {
        match self {
            Place::Prime(_) | Place::RealInf => GlobalField::Rationals,
            Place::Irreducible(p) => GlobalField::FunctionField { q: p.modulus() },
            Place::DegreeInf => hint,
        }
    }

    /// Whether this place belongs to `field`.
    pub fn belongs_to(&self, field: GlobalField) -> bool {
        match (self, field) {
            (Place::Prime(_) | Place::RealInf, GlobalField::Rationals) => true,
            (Place::Irreducible(p), GlobalField::FunctionField { q }) => p.modulus() == q,
            (Place::DegreeInf, GlobalField::FunctionField { .. }) => true,
            _ => false,
        }
    }

    /// Size of the residue field, saturating at `u64::MAX`; `None` at the
    /// real place.
    pub fn residue_size(&self, field: GlobalField) -> Option<u64> {
        match self {
            Place::Prime(p) => Some(*p),
            Place::RealInf => None,
            Place::Irreducible(pi) => {
                let d = pi.degree().expect("nonzero") as u32;
                Some(pi.modulus().checked_pow(d).unwrap_or(u64::MAX))
            }
            Place::DegreeInf => field.q(),
        }
    }

    /// Degree of the place (1 for primes of Q and for the degree place).
    pub fn degree(&self) -> u64 {
        match self {
            Place::Irreducible(pi) => pi.degree().expect("nonzero") as u64,
            _ => 1,
        }
    }

    /// Generator of the prime ideal of a finite place.
    pub fn generator(&self) -> Option<Elem> {
        match self {
            Place::Prime(p) => Some(Elem::Rat(BigRational::from_integer((*p).into()))),
            Place::Irreducible(pi) => Some(Elem::from_poly(pi.clone())),
            _ => None,
        }
    }

    /// Uniformizer at a nonarchimedean place.
    pub fn uniformizer(&self, field: GlobalField) -> Option<Elem> {
        match self {
            Place::DegreeInf => Some(field.t()?.inv().expect("t != 0")),
            _ => self.generator(),
        }
    }

    /// Parses `inf` (also `oo`, `∞`) or a prime / monic irreducible.
    pub fn parse(field: GlobalField, src: &str) -> Result<Place> {
        let s = src.trim();
        if matches!(s, "inf" | "oo" | "\u{221e}" | "infinity") {
            return Ok(field.infinite_place());
        }
        let e = Elem::parse(field, s)?;
        Place::from_generator(&e)
    }

    /// The finite place generated by a prime / monic irreducible element.
    pub fn from_generator(e: &Elem) -> Result<Place> {
        match e {
            Elem::Rat(r) => {
                let p = r
                    .is_integer()
                    .then(|| r.numer().to_u64())
                    .flatten()
                    .filter(|&p| int::is_prime(p))
                    .ok_or_else(|| Error::Domain(format!("{e} is not a prime")))?;
                Ok(Place::Prime(p))
            }
            Elem::Fun(f) => {
                if f.den.is_one() && f.num.is_monic() && f.num.is_irreducible() {
                    Ok(Place::Irreducible(f.num.clone()))
                } else {
                    Err(Error::Domain(format!("{e} is not a monic irreducible")))
                }
            }
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::RealInf | Place::DegreeInf => write!(f, "inf"),
            Place::Irreducible(pi) => write!(f, "{pi}"),
        }
    }
}

/// Finite places in canonical order: primes ascending over Q, monic
/// irreducibles by degree then coefficients over F_q(t). Iteration stops
/// once the residue field size exceeds `norm_bound`.
pub fn finite_places(field: GlobalField, norm_bound: u64) -> Vec<Place> {
    match field {
        GlobalField::Rationals => int::primes_up_to(norm_bound)
            .into_iter()
            .map(Place::Prime)
            .collect(),
        GlobalField::FunctionField { q } => {
            let mut out = Vec::new();
            let mut d = 1u32;
            while q.checked_pow(d).is_some_and(|n| n <= norm_bound) {
                out.extend(Poly::irreducibles_of_degree(q, d).map(Place::Irreducible));
                d += 1;
            }
            out
        }
    }
}

/// Search space of a given height, in canonical order. Over Q: all reduced
/// fractions p/d with max(|p|, d) = h, ordered by denominator then
/// numerator. Over F_q(t): polynomials of degree exactly h (h = 0 includes
/// zero); rational functions are not enumerated.
pub fn elems_of_height(field: GlobalField, h: u64) -> Vec<Elem> {
    match field {
        GlobalField::Rationals => {
            if h == 0 {
                return vec![field.zero()];
            }
            let h = h as i64;
            let mut out = Vec::new();
            for d in 1..=h {
                let nums: Vec<i64> = if d == h {
                    (-h..=h).collect()
                } else {
                    vec![-h, h]
                };
                for n in nums {
                    if n != 0 && n.gcd(&d) == 1 {
                        out.push(Elem::rational(n, d));
                    }
                }
            }
            out
        }
        GlobalField::FunctionField { q } => {
            let d = h as u32;
            let lo = if d == 0 { 0 } else { q.pow(d) };
            let hi = q.pow(d + 1);
            (lo..hi)
                .map(|i| Elem::from_poly(Poly::enumerate_index(q, i)))
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heights_partition() {
        let q = GlobalField::Rationals;
        let h2: Vec<String> = elems_of_height(q, 2)
            .iter()
            .map(|e| e.to_string())
            .collect();
        assert_eq!(h2, ["-2", "2", "-1/2", "1/2"]);
        assert_eq!(elems_of_height(q, 1).len(), 2);
        let f3 = GlobalField::function_field(3).unwrap();
        assert_eq!(elems_of_height(f3, 0).len(), 3);
        assert_eq!(elems_of_height(f3, 1).len(), 6);
        for e in elems_of_height(q, 5) {
            assert_eq!(e.height(), BigInt::from(5));
        }
    }

    #[test]
    fn exact_roots() {
        let q = GlobalField::Rationals;
        assert_eq!(
            q.parse_elem("9/4").unwrap().sqrt(),
            Some(q.parse_elem("3/2").unwrap())
        );
        assert_eq!(q.parse_elem("2").unwrap().sqrt(), None);
        assert_eq!(q.parse_elem("-4").unwrap().sqrt(), None);
        let f3 = GlobalField::function_field(3).unwrap();
        let x = f3.parse_elem("(t+1)^2/t^2").unwrap();
        let r = x.sqrt().unwrap();
        assert_eq!(r.square(), x);
        assert_eq!(f3.parse_elem("2t^2").unwrap().sqrt(), None);
    }

    #[test]
    fn parse_and_display() {
        let q = GlobalField::Rationals;
        assert_eq!(q.parse_elem("-12").unwrap().to_string(), "-12");
        assert_eq!(q.parse_elem("18/8").unwrap().to_string(), "9/4");
        assert_eq!(q.parse_elem("\u{2212}3/6").unwrap(), Elem::rational(-1, 2));
        let f3 = GlobalField::parse("F3(t)").unwrap();
        assert_eq!(f3.parse_elem("t^2+1").unwrap().to_string(), "t^2+1");
        assert_eq!(f3.parse_elem("4t").unwrap().to_string(), "t");
        let r = f3.parse_elem("(t^2+1)/(2t+3)").unwrap();
        // denominator made monic: (t^2+1)/(2t) = (2t^2+2)/t
        assert_eq!(r.to_string(), "(2*t^2+2)/t");
        assert_eq!(Elem::parse(f3, &r.to_string()).unwrap(), r);
        assert!(q.parse_elem("t").is_err());
        assert!(q.parse_elem("1/0").is_err());
        assert!(GlobalField::parse("F9(t)").is_err());
        assert!(GlobalField::parse("F2(t)").is_err());
        assert_eq!(f3.to_string(), "F3(t)");
    }

    #[test]
    fn places_parse() {
        let f5 = GlobalField::function_field(5).unwrap();
        assert_eq!(Place::parse(f5, "inf").unwrap(), Place::DegreeInf);
        assert_eq!(
            Place::parse(GlobalField::Rationals, "oo").unwrap(),
            Place::RealInf
        );
        assert_eq!(
            Place::parse(GlobalField::Rationals, "7").unwrap(),
            Place::Prime(7)
        );
        assert!(Place::parse(GlobalField::Rationals, "9").is_err());
        assert!(Place::parse(f5, "t^2").is_err());
        assert_eq!(
            Place::parse(f5, "t+1").unwrap(),
            Place::Irreducible(Poly::from_signed(5, &[1, 1]))
        );
    }

    #[test]
    fn place_enumeration() {
        let f3 = GlobalField::function_field(3).unwrap();
        // 3 of degree 1, 3 of degree 2 (norm 9 <= 10)
        assert_eq!(finite_places(f3, 10).len(), 6);
        assert_eq!(finite_places(GlobalField::Rationals, 30).len(), 10);
    }
}
