use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::Result;
use crate::field::{Elem, GlobalField, Place};
use crate::hilbert::hilbert_symbol;
use crate::oracle::{global_witness_search, HeightBound};

use super::{
    critical_places, diagonalize, local_isotropic, DiagForm, IsotropyCertificate, Obstruction,
    QuadForm,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Isotropic,
    Anisotropic,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Isotropic => "isotropic",
            Verdict::Anisotropic => "anisotropic",
        })
    }
}

#[derive(Clone, Debug)]
pub struct DecideOptions {
    /// Look for an explicit zero once the form is known to be isotropic.
    pub search_witness: bool,
    /// Enumeration budget for the witness search, in visited tuples.
    pub budget: u64,
    /// Largest height tried over Q (degree over F_q(t) is capped separately
    /// by the budget).
    pub max_height: u64,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            search_witness: true,
            budget: 20_000_000,
            max_height: 100_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Decision {
    pub verdict: Verdict,
    pub certificate: IsotropyCertificate,
    pub diagonal: DiagForm,
}

impl Decision {
    pub fn place(&self) -> Option<&Place> {
        match &self.certificate {
            IsotropyCertificate::Anisotropic { place, .. } => place.as_ref(),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&[Elem]> {
        match &self.certificate {
            IsotropyCertificate::Isotropic { witness } => Some(witness),
            IsotropyCertificate::DegenerateIsotropic { kernel } => Some(kernel),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut out = json!({ "verdict": self.verdict.to_string() });
        if self.verdict == Verdict::Anisotropic {
            out["place"] = self
                .place()
                .map_or(Value::Null, |v| Value::String(v.to_string()));
        }
        if let Some(w) = self.witness() {
            out["witness"] = Value::Array(w.iter().map(|x| Value::String(x.to_string())).collect());
        }
        out["certificate"] = self.certificate.to_json();
        out
    }
}

fn obstruction_at(b: &[Elem], v: &Place) -> Result<Obstruction> {
    let neg = |x: Elem| -x;
    if v.is_archimedean() {
        return Ok(Obstruction::Definite {
            sign: b[0].signum().expect("real place"),
        });
    }
    Ok(match b.len() {
        2 => Obstruction::NonSquare {
            value: neg(&b[0] * &b[1]),
        },
        3 => Obstruction::Conic {
            a: neg(&b[0] * &b[1]),
            b: neg(&b[0] * &b[2]),
        },
        4 => Obstruction::Quaternary {
            det: &(&b[0] * &b[1]) * &(&b[2] * &b[3]),
            h12: hilbert_symbol(&b[0], &b[1], v)?,
            h34: hilbert_symbol(&neg(b[2].clone()), &neg(b[3].clone()), v)?,
        },
        n => unreachable!("rank {n} is isotropic at nonarchimedean places"),
    })
}

/// Hasse-Minkowski: a nondegenerate form is isotropic iff it is isotropic at
/// every place, and only the critical places can fail.
pub fn decide(f: &QuadForm, opts: &DecideOptions) -> Result<Decision> {
    let field = f.field();
    let d = diagonalize(f);
    if f.is_zero() || d.is_degenerate() {
        let kernel = d.kernel_vector().expect("degenerate");
        return Ok(Decision {
            verdict: Verdict::Isotropic,
            certificate: IsotropyCertificate::DegenerateIsotropic { kernel },
            diagonal: d,
        });
    }
    let b = d.coeffs.clone();
    if b.len() == 1 {
        return Ok(Decision {
            verdict: Verdict::Anisotropic,
            certificate: IsotropyCertificate::Anisotropic {
                place: None,
                diagonal: b,
                congruence: d.congruence.clone(),
                obstruction: Obstruction::Rank1,
            },
            diagonal: d,
        });
    }
    let places = critical_places(&b)?;
    for v in &places {
        if !local_isotropic(&b, v)? {
            return Ok(Decision {
                verdict: Verdict::Anisotropic,
                certificate: IsotropyCertificate::Anisotropic {
                    place: Some(v.clone()),
                    diagonal: b.clone(),
                    congruence: d.congruence.clone(),
                    obstruction: obstruction_at(&b, v)?,
                },
                diagonal: d,
            });
        }
    }
    let witness = if opts.search_witness {
        find_witness(&d, opts)?
    } else {
        None
    };
    let certificate = match witness {
        Some(w) => IsotropyCertificate::Isotropic {
            witness: normalize(field, w),
        },
        None => IsotropyCertificate::IsotropicLocal { places },
    };
    Ok(Decision {
        verdict: Verdict::Isotropic,
        certificate,
        diagonal: d,
    })
}

pub fn decide_diagonal(
    field: GlobalField,
    coeffs: &[Elem],
    opts: &DecideOptions,
) -> Result<Decision> {
    decide(&QuadForm::diagonal(field, coeffs)?, opts)
}

fn search_cost(field: GlobalField, size: usize, h: u64) -> u64 {
    let free = size as u32 - 1;
    match field {
        GlobalField::Rationals => (h + 1).saturating_pow(free),
        GlobalField::FunctionField { q } => q.saturating_pow((h as u32 + 1).saturating_mul(free)),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Explicit zero of a nondegenerate isotropic form, in original coordinates.
///
/// Isotropic subforms of the diagonal core are tried smallest first; each
/// round raises the height (x10 over Q, +1 in degree over F_q(t)) until the
/// enumeration budget would be exceeded.
pub fn find_witness(d: &DiagForm, opts: &DecideOptions) -> Result<Option<Vec<Elem>>> {
    let b = &d.coeffs;
    let n = b.len();
    let field = b[0].field();
    let mut candidates = Vec::new();
    for k in 2..=n.min(5) {
        for s in subsets(n, k) {
            let sub: Vec<Elem> = s.iter().map(|&i| b[i].clone()).collect();
            let mut iso = true;
            for v in critical_places(&sub)? {
                if !local_isotropic(&sub, &v)? {
                    iso = false;
                    break;
                }
            }
            if iso {
                candidates.push((s, sub));
            }
        }
    }
    let heights: Vec<u64> = match field {
        GlobalField::Rationals => std::iter::successors(Some(10u64), |h| h.checked_mul(10))
            .take_while(|&h| h <= opts.max_height)
            .collect(),
        GlobalField::FunctionField { .. } => (1..16).collect(),
    };
    let mut spent = 0u64;
    for &h in &heights {
        let mut progressed = false;
        for (s, sub) in &candidates {
            let cost = search_cost(field, s.len(), h);
            if spent.saturating_add(cost) > opts.budget {
                continue;
            }
            progressed = true;
            spent += cost;
            if let Some(w) = global_witness_search(sub, HeightBound::new(h)?)? {
                let mut y = vec![field.zero(); d.ambient];
                for (k, &i) in s.iter().enumerate() {
                    y[i] = w[k].clone();
                }
                return Ok(Some(d.to_original(&y)));
            }
        }
        if !progressed {
            break;
        }
    }
    Ok(None)
}

/// Over Q scale a vector to a primitive integer vector; over F_q(t) clear
/// denominators.
fn normalize(field: GlobalField, w: Vec<Elem>) -> Vec<Elem> {
    match field {
        GlobalField::Rationals => {
            let rs: Vec<&BigRational> = w
                .iter()
                .map(|x| x.as_rational().expect("rational"))
                .collect();
            let l = rs.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
            let ints: Vec<BigInt> = rs.iter().map(|r| r.numer() * (&l / r.denom())).collect();
            let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if g.is_zero() {
                return w;
            }
            ints.into_iter()
                .map(|x| Elem::Rat(BigRational::from_integer(x / &g)))
                .collect()
        }
        GlobalField::FunctionField { q } => {
            let mut l = crate::field::Poly::one(q);
            for x in &w {
                let den = x.as_ratfn().expect("function field").den();
                let g = l.gcd(den);
                l = l.mul(den).div_exact(&g).expect("gcd divides");
            }
            let scale = Elem::from_poly(l);
            w.into_iter().map(|x| x * scale.clone()).collect()
        }
    }
}
