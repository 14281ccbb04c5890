//! Deliberately naive ground truth for diagonal forms: exhaustive global
//! zero search by height, and local solvability by residue enumeration plus
//! Hensel lifting. Nothing here consults Hilbert symbols.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::{domain, Error, Result};
use crate::field::int::exact_sqrt_i128;
use crate::field::{local_unit_residue, valuation, Elem, GlobalField, Place, Poly};

/// Search radius: max |coordinate| of an integer vector over Q, max degree of
/// a polynomial vector over F_q(t).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct HeightBound(u64);

impl HeightBound {
    pub fn new(h: u64) -> Result<Self> {
        if h == 0 {
            return domain("height bound must be at least 1");
        }
        Ok(HeightBound(h))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

fn field_of(coeffs: &[Elem]) -> Result<GlobalField> {
    let Some(first) = coeffs.first() else {
        return domain("empty coefficient list");
    };
    for c in coeffs {
        first.check_same_field(c)?;
    }
    Ok(first.field())
}

fn unit_vector(field: GlobalField, n: usize, i: usize) -> Vec<Elem> {
    (0..n)
        .map(|j| if i == j { field.one() } else { field.zero() })
        .collect()
}

/// First nontrivial zero of sum a_i x_i^2 among vectors of height <= H.
///
/// Order: the first m-1 coordinates run through tuples by increasing maximal
/// height, lexicographically within a height; the last coordinate is solved
/// for exactly and must respect the bound. Over Q only nonnegative
/// coordinates are visited (signs do not matter for a diagonal form) and the
/// result is made primitive.
pub fn global_witness_search(coeffs: &[Elem], h: HeightBound) -> Result<Option<Vec<Elem>>> {
    let field = field_of(coeffs)?;
    let n = coeffs.len();
    if let Some(i) = coeffs.iter().position(Elem::is_zero) {
        return Ok(Some(unit_vector(field, n, i)));
    }
    if n == 1 {
        return Ok(None);
    }
    match field {
        GlobalField::Rationals => search_q(coeffs, h.get()),
        GlobalField::FunctionField { q } => search_fq(q, coeffs, h.get()),
    }
}

fn integer_coeffs(coeffs: &[Elem]) -> Result<Vec<i128>> {
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| {
        acc.lcm(c.as_rational().expect("rational").denom())
    });
    coeffs
        .iter()
        .map(|c| {
            let r = c.as_rational().expect("rational");
            let v = r.numer() * (&lcm / r.denom());
            v.to_i64().map(i128::from).ok_or_else(|| {
                Error::Unsupported(format!(
                    "coefficient {v} too large for the brute-force oracle"
                ))
            })
        })
        .collect()
}

struct QSearch<'a> {
    a: &'a [i128],
    bound: i128,
    cur: Vec<i128>,
}

impl QSearch<'_> {
    // tuples over positions [pos, m-1) with entries <= h; at least one entry
    // must equal h unless `reached`
    fn visit(&mut self, pos: usize, h: i128, reached: bool, sum: i128) -> Option<i128> {
        let last = self.a.len() - 1;
        if pos == last {
            if !reached {
                return None;
            }
            let am = self.a[last];
            let rhs = -sum;
            if rhs % am != 0 {
                return None;
            }
            let y = exact_sqrt_i128(rhs / am)?;
            return (y <= self.bound).then_some(y);
        }
        let lo = if !reached && pos + 1 == last { h } else { 0 };
        for x in lo..=h {
            self.cur[pos] = x;
            let s = sum + self.a[pos] * x * x;
            if let Some(y) = self.visit(pos + 1, h, reached || x == h, s) {
                return Some(y);
            }
        }
        None
    }
}

fn search_q(coeffs: &[Elem], bound: u64) -> Result<Option<Vec<Elem>>> {
    let a = integer_coeffs(coeffs)?;
    let n = a.len();
    let mut s = QSearch {
        a: &a,
        bound: bound as i128,
        cur: vec![0; n],
    };
    for h in 1..=bound as i128 {
        if let Some(y) = s.visit(0, h, false, 0) {
            let mut v = s.cur.clone();
            v[n - 1] = y;
            let g = v.iter().fold(0i128, |g, &x| g.gcd(&x));
            return Ok(Some(
                v.iter()
                    .map(|&x| Elem::rational((x / g) as i64, 1))
                    .collect(),
            ));
        }
    }
    // tuples whose first m-1 coordinates vanish force the last to vanish too
    Ok(None)
}

fn poly_coeffs(q: u64, coeffs: &[Elem]) -> Vec<Poly> {
    let lcm = coeffs.iter().fold(Poly::one(q), |acc, c| {
        let d = c.as_ratfn().expect("function field").den();
        let g = acc.gcd(d);
        acc.mul(d).div_exact(&g).expect("gcd divides")
    });
    coeffs
        .iter()
        .map(|c| {
            let f = c.as_ratfn().expect("function field");
            f.num()
                .mul(&lcm.div_exact(f.den()).expect("den divides lcm"))
        })
        .collect()
}

struct FqSearch<'a> {
    q: u64,
    a: &'a [Poly],
    bound: usize,
    cur: Vec<Poly>,
}

impl FqSearch<'_> {
    fn visit(&mut self, pos: usize, h: usize, reached: bool, sum: &Poly) -> Option<Poly> {
        let last = self.a.len() - 1;
        if pos == last {
            if !reached {
                return None;
            }
            let (quot, rem) = sum.neg().div_rem(&self.a[last]);
            if !rem.is_zero() {
                return None;
            }
            let y = quot.sqrt()?;
            return (y.degree().unwrap_or(0) <= self.bound).then_some(y);
        }
        // degree-h polynomials (nonzero constants when h = 0) have indices
        // in [first, top)
        let top = self.q.pow(h as u32 + 1);
        let first = if h == 0 { 1 } else { self.q.pow(h as u32) };
        let lo = if !reached && pos + 1 == last {
            first
        } else {
            0
        };
        for idx in lo..top {
            let x = Poly::enumerate_index(self.q, idx);
            let hit = reached || idx >= first;
            let s = sum.add(&self.a[pos].mul(&x.mul(&x)));
            self.cur[pos] = x;
            if let Some(y) = self.visit(pos + 1, h, hit, &s) {
                return Some(y);
            }
        }
        None
    }
}

fn search_fq(q: u64, coeffs: &[Elem], bound: u64) -> Result<Option<Vec<Elem>>> {
    let a = poly_coeffs(q, coeffs);
    let n = a.len();
    let mut s = FqSearch {
        q,
        a: &a,
        bound: bound as usize,
        cur: vec![Poly::zero(q); n],
    };
    for h in 0..=bound as usize {
        if let Some(y) = s.visit(0, h, false, &Poly::zero(q)) {
            let mut v = s.cur.clone();
            v[n - 1] = y;
            return Ok(Some(v.into_iter().map(Elem::from_poly).collect()));
        }
    }
    Ok(None)
}

/// Precision threshold for [`local_solvable`]: max(v(4 prod a) + 3,
/// 2 max v(2 a_i) + 1), the second term being what the Hensel step needs.
pub fn k_min(coeffs: &[Elem], v: &Place) -> Result<u32> {
    let field = field_of(coeffs)?;
    if v.is_archimedean() {
        return Ok(0);
    }
    let four = field.int(4);
    let two = field.int(2);
    let prod = coeffs.iter().fold(four, |acc, c| acc * c.clone());
    let vp = valuation(&prod, v)?.ok_or_else(|| Error::Domain("zero coefficient".into()))?;
    let mut worst = 0i64;
    for c in coeffs {
        worst = worst.max(valuation(&(&two * c), v)?.unwrap_or(0));
    }
    Ok((vp + 3).max(2 * worst + 1).max(1) as u32)
}

/// Whether sum a_i x_i^2 has a nontrivial zero over K_v, decided by
/// enumerating primitive candidates modulo a power of the maximal ideal and
/// accepting only those the Hensel criterion lifts.
pub fn local_solvable(coeffs: &[Elem], v: &Place, k: u32) -> Result<bool> {
    let field = field_of(coeffs)?;
    if !v.belongs_to(field) {
        return domain(format!("place {v} does not belong to {field}"));
    }
    if coeffs.iter().any(Elem::is_zero) {
        return Ok(true);
    }
    if v.is_archimedean() {
        let pos = coeffs.iter().any(|c| c.signum() == Some(1));
        let neg = coeffs.iter().any(|c| c.signum() == Some(-1));
        return Ok(pos && neg);
    }
    let need = k_min(coeffs, v)?;
    if k < need {
        return domain(format!(
            "precision {k} below the lifting threshold {need} at {v}"
        ));
    }
    if v.is_dyadic() {
        return dyadic_solvable(coeffs);
    }
    let res = Residues::new(v, field);
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for c in coeffs {
        let u = local_unit_residue(c, v)?;
        if valuation(c, v)?.expect("nonzero") % 2 == 0 {
            even.push(u);
        } else {
            odd.push(u);
        }
    }
    // after scaling by squares the form is f0 + pi f1 with unit forms f0, f1;
    // it is isotropic iff f0 or f1 has a nonsingular zero mod pi
    Ok(res.nonsingular_zero(&even) || res.nonsingular_zero(&odd))
}

struct Residues {
    modulus: Poly,
    squares: Vec<Poly>,
}

impl Residues {
    fn new(v: &Place, field: GlobalField) -> Residues {
        let modulus = match (v, field) {
            (Place::Prime(p), _) => Poly::t(*p),
            (Place::Irreducible(pi), _) => pi.clone(),
            (_, GlobalField::FunctionField { q }) => Poly::t(q),
            _ => unreachable!("nonarchimedean nondyadic place"),
        };
        let q = modulus.modulus();
        let d = modulus.degree().expect("nonconstant") as u32;
        let set: HashSet<Poly> = Poly::all_below_degree(q, d)
            .map(|x| x.mul_mod(&x, &modulus))
            .collect();
        let mut squares: Vec<Poly> = set.into_iter().collect();
        squares.sort();
        Residues { modulus, squares }
    }

    fn nonsingular_zero(&self, units: &[Poly]) -> bool {
        if units.len() < 2 {
            return false;
        }
        let q = self.modulus.modulus();
        let targets: Vec<HashSet<Poly>> = units
            .iter()
            .map(|u| {
                self.squares
                    .iter()
                    .map(|s| u.mul_mod(s, &self.modulus))
                    .collect()
            })
            .collect();
        self.visit(units, &targets, 0, &Poly::zero(q), false)
    }

    fn visit(
        &self,
        units: &[Poly],
        targets: &[HashSet<Poly>],
        pos: usize,
        sum: &Poly,
        nonzero: bool,
    ) -> bool {
        let last = units.len() - 1;
        if pos == last {
            let need = sum.neg().rem(&self.modulus);
            return targets[last].contains(&need) && (nonzero || !need.is_zero());
        }
        for s in &self.squares {
            let term = units[pos].mul_mod(s, &self.modulus);
            let next = sum.add(&term).rem(&self.modulus);
            if self.visit(units, targets, pos + 1, &next, nonzero || !s.is_zero()) {
                return true;
            }
        }
        false
    }
}

fn odd_part_mod(r: &num_rational::BigRational, modulus: u64) -> (i64, u64) {
    let two = BigInt::from(2);
    let (mut n, mut d) = (r.numer().clone(), r.denom().clone());
    let mut v = 0i64;
    while n.is_even() {
        n /= &two;
        v += 1;
    }
    while d.is_even() {
        d /= &two;
        v -= 1;
    }
    let m = BigInt::from(modulus);
    let n = n.mod_floor(&m).to_u64().expect("reduced");
    let d = d.mod_floor(&m).to_u64().expect("reduced");
    let dinv = (1..modulus)
        .find(|x| (x * d) % modulus == 1)
        .expect("odd is invertible");
    (v, n * dinv % modulus)
}

fn dyadic_solvable(coeffs: &[Elem]) -> Result<bool> {
    // normalized coefficients 2^e u with e in {0, 1}; v(2 a_i) <= 2 so
    // precision 5 satisfies the Hensel threshold
    const K: u32 = 5;
    let modulus = 1u64 << K;
    let mut a = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        let (v, u) = odd_part_mod(c.as_rational().expect("rational"), modulus);
        let e = v.rem_euclid(2) as u32;
        a.push(((u << e) % modulus, e));
    }
    let n = a.len();
    let half = modulus / 2;
    let total = half.pow(n as u32);
    'outer: for idx in 0..total {
        let mut rest = idx;
        let mut sum = 0u64;
        let mut liftable = false;
        let mut primitive = false;
        for (ai, e) in &a {
            let x = rest % half;
            rest /= half;
            sum = (sum + ai * (x * x % modulus)) % modulus;
            if x % 2 == 1 {
                primitive = true;
                // v(2 a_i x_i) = 1 + e
                if 2 * (1 + e) < K {
                    liftable = true;
                }
            }
        }
        if !primitive || sum != 0 {
            continue 'outer;
        }
        if liftable {
            return Ok(true);
        }
    }
    Ok(false)
}

/// What [`class_oracle`] decides about x at v.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassKind {
    Square,
    Norm(Elem),
}

/// Square / local-norm membership through [`local_solvable`]: x is a square
/// iff z^2 - x y^2 is isotropic, a norm from K_v(sqrt y) iff z^2 - y u^2 - x w^2
/// is.
pub fn class_oracle(x: &Elem, v: &Place, kind: &ClassKind) -> Result<bool> {
    if x.is_zero() {
        return domain("class of zero");
    }
    let field = x.field();
    let coeffs = match kind {
        ClassKind::Square => vec![field.one(), -x.clone()],
        ClassKind::Norm(y) => {
            if y.is_zero() {
                return domain("norm from a degenerate extension");
            }
            vec![field.one(), -y.clone(), -x.clone()]
        }
    };
    let k = k_min(&coeffs, v)?;
    local_solvable(&coeffs, v, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qv(xs: &[i64]) -> Vec<Elem> {
        xs.iter().map(|&x| Elem::rational(x, 1)).collect()
    }

    #[test]
    fn global_examples() {
        let h1 = HeightBound::new(1).unwrap();
        let h200 = HeightBound::new(200).unwrap();
        assert_eq!(
            global_witness_search(&qv(&[1, -1]), h1).unwrap(),
            Some(qv(&[1, 1]))
        );
        assert_eq!(global_witness_search(&qv(&[1, 1, 1]), h200).unwrap(), None);
        assert_eq!(global_witness_search(&qv(&[1, 1, -7]), h200).unwrap(), None);
        assert_eq!(
            global_witness_search(&qv(&[1, 1, -2]), h1).unwrap(),
            Some(qv(&[1, 1, 1]))
        );
        assert!(HeightBound::new(0).is_err());
    }

    #[test]
    fn function_field_search() {
        let f3 = GlobalField::function_field(3).unwrap();
        let ones = vec![f3.one(); 5];
        let w = global_witness_search(&ones, HeightBound::new(1).unwrap())
            .unwrap()
            .unwrap();
        let val = w.iter().fold(f3.zero(), |acc, x| acc + x.square());
        assert!(val.is_zero() && w.iter().any(|x| !x.is_zero()));
        // t x^2 - y^2 is anisotropic: t is not a square
        let c = vec![f3.t().unwrap(), f3.int(-1)];
        assert_eq!(
            global_witness_search(&c, HeightBound::new(3).unwrap()).unwrap(),
            None
        );
    }

    #[test]
    fn local_examples() {
        let p5 = Place::Prime(5);
        let p7 = Place::Prime(7);
        let p2 = Place::Prime(2);
        assert!(local_solvable(&qv(&[1, 1, -1]), &p5, 10).unwrap());
        assert!(!local_solvable(&qv(&[1, 1, -7]), &p7, 10).unwrap());
        assert!(!local_solvable(&qv(&[1, 1, 1, 1]), &p2, 5).unwrap());
        assert!(local_solvable(&qv(&[1, 1, 1, 1, 1]), &p2, 5).unwrap());
        assert!(local_solvable(&qv(&[1, 1, 1]), &p7, 1).is_err());
        assert!(!local_solvable(&qv(&[1, 1, 1]), &Place::RealInf, 0).unwrap());
        // z^2 = -x^2 - y^2 fails at 2
        assert!(!local_solvable(&qv(&[1, 1, 1]), &p2, 5).unwrap());
    }

    #[test]
    fn class_examples() {
        assert!(
            class_oracle(&Elem::rational(17, 1), &Place::Prime(2), &ClassKind::Square).unwrap()
        );
        assert!(
            !class_oracle(&Elem::rational(3, 1), &Place::Prime(7), &ClassKind::Square).unwrap()
        );
        let x = Elem::rational(6, 1);
        let kind = ClassKind::Norm(Elem::rational(9, 1));
        for v in [Place::Prime(2), Place::Prime(3), Place::RealInf] {
            assert!(class_oracle(&x, &v, &kind).unwrap());
        }
    }
}
