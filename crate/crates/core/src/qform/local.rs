use crate::error::{domain, Result};
use crate::field::{is_local_square, support, Elem, GlobalField, Place};
use crate::hilbert::hilbert_symbol;

use super::require_nonzero;

/// Isotropy of the nondegenerate diagonal form <b_1, .., b_n> over K_v.
pub fn local_isotropic(b: &[Elem], v: &Place) -> Result<bool> {
    require_nonzero(b)?;
    let field = b[0].field();
    if !v.belongs_to(field) {
        return domain(format!("place {v} does not belong to {field}"));
    }
    let n = b.len();
    if v.is_archimedean() {
        let pos = b.iter().any(|x| x.signum() == Some(1));
        let neg = b.iter().any(|x| x.signum() == Some(-1));
        return Ok(pos && neg);
    }
    Ok(match n {
        1 => false,
        2 => is_local_square(&-(&b[0] * &b[1]), v)?,
        3 => hilbert_symbol(&-(&b[0] * &b[1]), &-(&b[0] * &b[2]), v)? == 1,
        4 => {
            let d = &(&b[0] * &b[1]) * &(&b[2] * &b[3]);
            let same_class = is_local_square(&d, v)?;
            let h12 = hilbert_symbol(&b[0], &b[1], v)?;
            let h34 = hilbert_symbol(&-b[2].clone(), &-b[3].clone(), v)?;
            !(same_class && h12 == -h34)
        }
        _ => true,
    })
}

/// Places where a nondegenerate diagonal form can fail to be locally
/// isotropic, in the order `decide` scans them: over Q the real place, odd
/// primes dividing some b_i ascending, then 2; over F_q(t) the degree place
/// followed by the irreducible divisors of the b_i.
pub fn critical_places(b: &[Elem]) -> Result<Vec<Place>> {
    require_nonzero(b)?;
    let field = b[0].field();
    let mut finite: Vec<Place> = Vec::new();
    for x in b {
        finite.extend(support(x)?);
    }
    finite.sort();
    finite.dedup();
    let mut out = vec![field.infinite_place()];
    match field {
        GlobalField::Rationals => {
            out.extend(finite.into_iter().filter(|v| !v.is_dyadic()));
            out.push(Place::Prime(2));
        }
        GlobalField::FunctionField { .. } => out.extend(finite),
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qv(xs: &[i64]) -> Vec<Elem> {
        xs.iter().map(|&x| Elem::rational(x, 1)).collect()
    }

    #[test]
    fn local_examples() {
        assert!(!local_isotropic(&qv(&[1, 1, 1]), &Place::RealInf).unwrap());
        assert!(!local_isotropic(&qv(&[1, 1, -7]), &Place::Prime(7)).unwrap());
        assert!(!local_isotropic(&qv(&[1, 1, 1, 1]), &Place::Prime(2)).unwrap());
        assert!(local_isotropic(&qv(&[1, 1, 1, 1, 1]), &Place::Prime(2)).unwrap());
        let f3 = GlobalField::function_field(3).unwrap();
        let ones = vec![f3.one(); 5];
        for v in crate::field::finite_places(f3, 27) {
            assert!(local_isotropic(&ones, &v).unwrap());
        }
        assert!(local_isotropic(&qv(&[1, 0]), &Place::Prime(3)).is_err());
    }

    #[test]
    fn scan_order() {
        let s = critical_places(&qv(&[6, -35, 1])).unwrap();
        assert_eq!(
            s,
            vec![
                Place::RealInf,
                Place::Prime(3),
                Place::Prime(5),
                Place::Prime(7),
                Place::Prime(2)
            ]
        );
    }
}
