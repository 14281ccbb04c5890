//! Dense univariate polynomials over the prime field F_q, q an odd prime.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use super::int::{inv_mod, legendre, mul_mod, pow_mod, sqrt_mod};

/// Polynomial in `t` over F_q. Coefficients are little-endian, reduced to
/// `0..q`, with no trailing zeros (the zero polynomial has none at all).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    q: u64,
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn from_coeffs(q: u64, coeffs: Vec<u64>) -> Self {
        let mut p = Poly {
            q,
            coeffs: coeffs.into_iter().map(|c| c % q).collect(),
        };
        p.trim();
        p
    }

    /// Coefficients given as signed integers, reduced mod q.
    pub fn from_signed(q: u64, coeffs: &[i64]) -> Self {
        let qi = q as i64;
        Self::from_coeffs(q, coeffs.iter().map(|&c| c.rem_euclid(qi) as u64).collect())
    }

    pub fn zero(q: u64) -> Self {
        Poly {
            q,
            coeffs: Vec::new(),
        }
    }

    pub fn one(q: u64) -> Self {
        Self::constant(q, 1)
    }

    pub fn constant(q: u64, c: u64) -> Self {
        Self::from_coeffs(q, vec![c])
    }

    /// The indeterminate `t`.
    pub fn t(q: u64) -> Self {
        Poly {
            q,
            coeffs: vec![0, 1],
        }
    }

    /// `c * t^n`
    pub fn monomial(q: u64, c: u64, n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[n] = c;
        Self::from_coeffs(q, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| (self.coeff(i) + other.coeff(i)) % self.q)
            .collect();
        Self::from_coeffs(self.q, coeffs)
    }

    pub fn neg(&self) -> Poly {
        let q = self.q;
        Poly {
            q,
            coeffs: self.coeffs.iter().map(|&c| (q - c) % q).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u64) -> Poly {
        let q = self.q;
        Self::from_coeffs(
            q,
            self.coeffs.iter().map(|&a| mul_mod(a, c % q, q)).collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.q);
        }
        let q = self.q;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, q)) % q;
            }
        }
        Self::from_coeffs(q, out)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.q);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let q = self.q;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Poly::zero(q), self.clone());
        }
        let inv = inv_mod(d.lc(), q);
        let mut rem = self.coeffs.clone();
        let mut quo = vec![0u64; rem.len() - dd];
        for k in (0..quo.len()).rev() {
            let c = mul_mod(rem[k + dd], inv, q);
            quo[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &b) in d.coeffs.iter().enumerate() {
                let sub = mul_mod(c, b, q);
                rem[k + j] = (rem[k + j] + q - sub) % q;
            }
        }
        (Self::from_coeffs(q, quo), Self::from_coeffs(q, rem))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Exact division, `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (quo, rem) = self.div_rem(d);
        rem.is_zero().then_some(quo)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lc(), self.q))
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let q = self.q;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % q, q))
            .collect();
        Self::from_coeffs(q, coeffs)
    }

    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Poly {
        self.mul(other).rem(m)
    }

    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.q).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            base = base.mul_mod(&base, m);
            e >>= 1;
        }
        acc
    }

    pub fn pow_mod_big(&self, e: &BigUint, m: &Poly) -> Poly {
        let mut acc = Poly::one(self.q).rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, m);
            if e.bit(i) {
                acc = acc.mul_mod(self, m);
            }
        }
        acc
    }

    pub fn eval(&self, x: u64) -> u64 {
        let q = self.q;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mul_mod(acc, x, q) + c) % q)
    }

    /// Ben-Or irreducibility test.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else { return false };
        if n == 0 {
            return false;
        }
        let f = self.monic();
        let t = Poly::t(self.q);
        let mut h = t.rem(&f);
        for _ in 0..n / 2 {
            h = h.pow_mod(self.q, &f);
            if !h.sub(&t).gcd(&f).is_one() {
                return false;
            }
        }
        true
    }

    /// Factorization of a nonzero polynomial: leading coefficient and sorted
    /// monic irreducible factors with multiplicities.
    pub fn factor(&self) -> (u64, Vec<(Poly, u32)>) {
        assert!(!self.is_zero(), "factor of zero polynomial");
        let lc = self.lc();
        let mut out: Vec<(Poly, u32)> = Vec::new();
        for (sqf, mult) in self.monic().squarefree_decomposition() {
            for (d, block) in sqf.distinct_degree() {
                for g in block.equal_degree(d) {
                    out.push((g, mult));
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        // merge repeated factors from the p-th power branch
        let mut merged: Vec<(Poly, u32)> = Vec::new();
        for (g, e) in out {
            match merged.last_mut() {
                Some((h, k)) if *h == g => *k += e,
                _ => merged.push((g, e)),
            }
        }
        (lc, merged)
    }

    // Monic input; returns squarefree parts with multiplicities.
    fn squarefree_decomposition(&self) -> Vec<(Poly, u32)> {
        let q = self.q;
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let d = self.derivative();
        if d.is_zero() {
            // f = g(t^q) = g(t)^q over F_q
            let g = Poly::from_coeffs(q, self.coeffs.iter().step_by(q as usize).copied().collect());
            for (h, e) in g.squarefree_decomposition() {
                out.push((h, e * q as u32));
            }
            return out;
        }
        let mut c = self.gcd(&d);
        let mut w = self.div_exact(&c).expect("gcd divides");
        let mut i = 1u32;
        while !w.is_one() {
            let y = w.gcd(&c);
            let z = w.div_exact(&y).expect("gcd divides");
            if !z.is_one() {
                out.push((z, i));
            }
            i += 1;
            w = y;
            c = c.div_exact(&w).expect("gcd divides");
        }
        if !c.is_one() {
            let g = Poly::from_coeffs(q, c.coeffs.iter().step_by(q as usize).copied().collect());
            for (h, e) in g.squarefree_decomposition() {
                out.push((h, e * q as u32));
            }
        }
        out
    }

    // Squarefree monic input.
    fn distinct_degree(&self) -> Vec<(usize, Poly)> {
        let mut out = Vec::new();
        let mut f = self.clone();
        let t = Poly::t(self.q);
        let mut h = t.rem(&f);
        let mut d = 0;
        while f.degree().unwrap_or(0) >= 2 * (d + 1) {
            d += 1;
            h = h.pow_mod(self.q, &f);
            let g = h.sub(&t).gcd(&f);
            if !g.is_one() {
                f = f.div_exact(&g).expect("gcd divides");
                h = h.rem(&f);
                out.push((d, g));
            }
        }
        if let Some(n) = f.degree() {
            if n > 0 {
                out.push((n, f));
            }
        }
        out
    }

    // Cantor-Zassenhaus splitting of a product of degree-d irreducibles.
    // Splitting elements are enumerated deterministically instead of sampled.
    fn equal_degree(&self, d: usize) -> Vec<Poly> {
        let n = self.degree().expect("nonzero");
        if n == d {
            return vec![self.clone()];
        }
        let q = self.q;
        let exp = (BigUint::from(q).pow(d as u32) - BigUint::one()) >> 1;
        let mut counter = 1u64;
        loop {
            let a = Poly::enumerate_index(q, counter);
            counter += 1;
            if a.is_constant() {
                continue;
            }
            let b = a.pow_mod_big(&exp, self).sub(&Poly::one(q));
            let g = b.gcd(self);
            if !g.is_one() && g.degree() != self.degree() && !g.is_zero() {
                let h = self.div_exact(&g).expect("gcd divides");
                let mut out = g.equal_degree(d);
                out.extend(h.equal_degree(d));
                return out;
            }
        }
    }

    /// The polynomial whose base-q digits are the digits of `index`.
    pub fn enumerate_index(q: u64, mut index: u64) -> Poly {
        let mut coeffs = Vec::new();
        while index > 0 {
            coeffs.push(index % q);
            index /= q;
        }
        Poly::from_coeffs(q, coeffs)
    }

    /// Inverse of `enumerate_index` (saturating on overflow).
    pub fn index(&self) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc.saturating_mul(self.q).saturating_add(c))
    }

    /// Every polynomial of degree `< n`, in index order.
    pub fn all_below_degree(q: u64, n: u32) -> impl Iterator<Item = Poly> {
        (0..q.pow(n)).map(move |i| Poly::enumerate_index(q, i))
    }

    /// Monic irreducibles of exactly degree `d`, in canonical order.
    pub fn irreducibles_of_degree(q: u64, d: u32) -> impl Iterator<Item = Poly> {
        let lead = q.pow(d);
        (0..lead)
            .map(move |i| Poly::enumerate_index(q, lead + i))
            .filter(|p| p.is_irreducible())
    }

    /// Polynomial square root, if `self` is a square in F_q[t].
    pub fn sqrt(&self) -> Option<Poly> {
        let q = self.q;
        if self.is_zero() {
            return Some(self.clone());
        }
        let low = self.coeffs.iter().position(|&c| c != 0).expect("nonzero");
        if low % 2 == 1 {
            return None;
        }
        let n = self.degree().expect("nonzero");
        if n % 2 == 1 {
            return None;
        }
        let half = n / 2;
        let top = sqrt_mod(self.lc(), q)?;
        let inv2top = inv_mod(mul_mod(2, top, q), q);
        // g = sum g_k t^(half - k), computed from the top down
        let mut g = vec![0u64; half + 1];
        g[half] = top;
        for k in 1..=half {
            // coefficient of t^(n-k) in g^2 is 2 g_top g_{half-k} + sum of known
            let mut known = 0u64;
            for i in 1..k {
                known = (known + mul_mod(g[half - i], g[half - (k - i)], q)) % q;
            }
            let target = (self.coeff(n - k) + q - known) % q;
            g[half - k] = mul_mod(target, inv2top, q);
        }
        let g = Poly::from_coeffs(q, g);
        (g.mul(&g) == *self).then_some(g)
    }

    /// Quadratic character of `self` modulo the irreducible `m`, via the norm
    /// to F_q: chi(x) = legendre(N(x)). Returns 0 when `m | self`.
    pub fn quadratic_character(&self, m: &Poly) -> i8 {
        let x = self.rem(m);
        if x.is_zero() {
            return 0;
        }
        let d = m.degree().expect("nonzero modulus");
        let mut norm = Poly::one(self.q);
        let mut conj = x;
        for _ in 0..d {
            norm = norm.mul_mod(&conj, m);
            conj = conj.pow_mod(self.q, m);
        }
        debug_assert!(norm.is_constant());
        legendre(norm.coeff(0), self.q)
    }

    /// Whether the constant `c` is a square in F_q.
    pub fn constant_is_square(q: u64, c: u64) -> bool {
        c.is_multiple_of(q) || pow_mod(c % q, (q - 1) / 2, q) == 1
    }
}

impl Ord for Poly {
    /// Degree first, then coefficients from the top down.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}*t")?,
                (i, 1) => write!(f, "t^{i}")?,
                (i, c) => write!(f, "{c}*t^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(q: u64, c: &[i64]) -> Poly {
        Poly::from_signed(q, c)
    }

    #[test]
    fn factor_t_squared_plus_t() {
        let f = p(3, &[0, 1, 1]);
        let (lc, fs) = f.factor();
        assert_eq!(lc, 1);
        assert_eq!(fs, vec![(p(3, &[0, 1]), 1), (p(3, &[1, 1]), 1)]);
    }

    #[test]
    fn factor_reconstructs() {
        for q in [3u64, 5, 7] {
            for idx in 1..(q.pow(5)).min(2000) {
                let f = Poly::enumerate_index(q, idx * 7 + 3);
                let (lc, fs) = f.factor();
                let mut prod = Poly::constant(q, lc);
                for (g, e) in &fs {
                    assert!(g.is_irreducible() && g.is_monic());
                    prod = prod.mul(&g.pow(*e as u64));
                }
                assert_eq!(prod, f);
            }
        }
    }

    #[test]
    fn factor_pth_power() {
        // (t+1)^3 * t over F_3 has zero-derivative pieces
        let f = p(3, &[1, 1]).pow(3).mul(&Poly::t(3));
        let (_, fs) = f.factor();
        assert_eq!(fs, vec![(Poly::t(3), 1), (p(3, &[1, 1]), 3)]);
    }

    #[test]
    fn irreducible_counts() {
        // number of monic irreducibles of degree 2 over F_3 is (9-3)/2 = 3
        assert_eq!(Poly::irreducibles_of_degree(3, 2).count(), 3);
        assert_eq!(Poly::irreducibles_of_degree(5, 3).count(), 40);
    }

    #[test]
    fn square_roots() {
        let g = p(5, &[2, 0, 3, 1]);
        assert_eq!(g.mul(&g).sqrt().map(|r| r.mul(&r)), Some(g.mul(&g)));
        assert_eq!(p(3, &[0, 1]).sqrt(), None);
        assert_eq!(p(3, &[2]).sqrt(), None);
        assert_eq!(p(3, &[1]).sqrt(), Some(p(3, &[1])));
    }

    #[test]
    fn character_matches_enumeration() {
        let q = 3;
        for m in Poly::irreducibles_of_degree(q, 2) {
            let elems: Vec<Poly> = Poly::all_below_degree(q, 2).collect();
            let squares: Vec<Poly> = elems.iter().map(|x| x.mul_mod(x, &m)).collect();
            for x in elems.iter().filter(|x| !x.is_zero()) {
                let expect = if squares.contains(x) { 1 } else { -1 };
                assert_eq!(x.quadratic_character(&m), expect);
            }
        }
    }

    #[test]
    fn display() {
        assert_eq!(p(3, &[1, 0, 1]).to_string(), "t^2+1");
        assert_eq!(p(5, &[4, 2]).to_string(), "2*t+4");
    }
}
