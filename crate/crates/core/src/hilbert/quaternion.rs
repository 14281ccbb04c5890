use crate::error::{domain, Error, Result};
use crate::field::{elems_of_height, valuation, Elem, GlobalField};

use super::{delta_set, hilbert_symbol};

/// x0 + x1*alpha + x2*beta + x3*alpha*beta in H_{a,b}, where alpha^2 = a,
/// beta^2 = b and alpha*beta = -beta*alpha.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quaternion {
    pub a: Elem,
    pub b: Elem,
    pub x: [Elem; 4],
}

impl Quaternion {
    pub fn new(a: Elem, b: Elem, x: [Elem; 4]) -> Result<Quaternion> {
        if a.is_zero() || b.is_zero() {
            return domain("quaternion algebra with a zero parameter");
        }
        for c in x.iter().chain([&b]) {
            a.check_same_field(c)?;
        }
        Ok(Quaternion { a, b, x })
    }

    pub fn scalar(a: &Elem, b: &Elem, c: Elem) -> Result<Quaternion> {
        let z = a.field().zero();
        Quaternion::new(a.clone(), b.clone(), [c, z.clone(), z.clone(), z])
    }

    pub fn alpha(a: &Elem, b: &Elem) -> Result<Quaternion> {
        let f = a.field();
        Quaternion::new(
            a.clone(),
            b.clone(),
            [f.zero(), f.one(), f.zero(), f.zero()],
        )
    }

    pub fn beta(a: &Elem, b: &Elem) -> Result<Quaternion> {
        let f = a.field();
        Quaternion::new(
            a.clone(),
            b.clone(),
            [f.zero(), f.zero(), f.one(), f.zero()],
        )
    }

    pub fn trd(&self) -> Elem {
        &self.x[0] + &self.x[0]
    }

    pub fn nrd(&self) -> Elem {
        let [x0, x1, x2, x3] = &self.x;
        let ab = &self.a * &self.b;
        x0.square() - &self.a * &x1.square() - &self.b * &x2.square() + ab * x3.square()
    }

    /// (Trd, Nrd).
    pub fn reduced_invariants(&self) -> (Elem, Elem) {
        (self.trd(), self.nrd())
    }
}

fn search_space(field: GlobalField, bound: u64) -> Vec<Elem> {
    (0..=bound)
        .flat_map(|h| elems_of_height(field, h))
        .collect()
}

/// First x with Trd(x) = tval and Nrd(x) = 1 whose coordinates have height
/// at most `bound`. (x2, x3) run over the search space by increasing maximal
/// height, then in canonical order; x1 is solved for exactly (nonnegative
/// root over Q).
pub fn s_witness_search(tval: &Elem, a: &Elem, b: &Elem, bound: u64) -> Result<Option<Quaternion>> {
    if bound == 0 {
        return domain("search bound must be positive");
    }
    let field = a.field();
    tval.check_same_field(a)?;
    Quaternion::new(
        a.clone(),
        b.clone(),
        [field.zero(), field.zero(), field.zero(), field.zero()],
    )?;
    let x0 = tval.checked_div(&field.int(2))?;
    let base = x0.square() - field.one();
    let ab = a * b;
    let space = search_space(field, bound);
    let heights: Vec<u64> = space
        .iter()
        .map(|e| e.height().try_into().unwrap_or(u64::MAX))
        .collect();
    let limit = num_bigint::BigInt::from(bound);
    for h in 0..=bound {
        for (i, x2) in space.iter().enumerate() {
            for (j, x3) in space.iter().enumerate() {
                if heights[i].max(heights[j]) != h {
                    continue;
                }
                let rhs = &base - &(b * &x2.square()) + &ab * &x3.square();
                let x1sq = rhs.checked_div(a)?;
                let Some(x1) = x1sq.sqrt() else { continue };
                if x1.height() > limit {
                    continue;
                }
                let q = Quaternion::new(
                    a.clone(),
                    b.clone(),
                    [x0.clone(), x1, x2.clone(), x3.clone()],
                )?;
                debug_assert!(q.nrd().is_one());
                return Ok(Some(q));
            }
        }
    }
    Ok(None)
}

fn require_real_split(a: &Elem, b: &Elem) -> Result<()> {
    if a.field().is_rational() && hilbert_symbol(a, b, &a.field().infinite_place())? == -1 {
        return Err(Error::Precondition(format!(
            "the algebra ({a}, {b}) ramifies at the real place"
        )));
    }
    Ok(())
}

/// Membership in T(H_{a,b}/K): nonnegative valuation at every
/// nonarchimedean place where the algebra ramifies.
pub fn t_membership(x: &Elem, a: &Elem, b: &Elem, field: GlobalField) -> Result<bool> {
    x.check_same_field(a)?;
    require_real_split(a, b)?;
    if x.is_zero() {
        return Ok(true);
    }
    let delta = delta_set(a, b, field)?;
    for v in delta.nonarchimedean() {
        if valuation(x, v)?.is_some_and(|k| k < 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Bounded search for y, z of reduced norm 1 with Trd(y) + Trd(z) = x. The
/// trace of y runs over 2, -2, then the search space in canonical order.
pub fn t_witness_search(
    x: &Elem,
    a: &Elem,
    b: &Elem,
    bound: u64,
) -> Result<Option<(Quaternion, Quaternion)>> {
    x.check_same_field(a)?;
    require_real_split(a, b)?;
    let field = a.field();
    let two = field.int(2);
    let minus_two = field.int(-2);
    let mut traces = vec![two.clone(), minus_two.clone()];
    traces.extend(
        search_space(field, bound)
            .into_iter()
            .filter(|t| *t != two && *t != minus_two),
    );
    for t1 in traces {
        let Some(y) = s_witness_search(&t1, a, b, bound)? else {
            continue;
        };
        if let Some(z) = s_witness_search(&(x - &t1), a, b, bound)? {
            return Ok(Some((y, z)));
        }
    }
    Ok(None)
}
