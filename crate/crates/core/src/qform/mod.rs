//! Quadratic forms: symmetric matrices, congruence diagonalization, local
//! isotropy and the global decision with checkable certificates.

mod certificate;
mod decide;
mod local;

pub use certificate::{check_certificate, CheckOutcome, IsotropyCertificate, Obstruction};
pub use decide::{decide, decide_diagonal, find_witness, DecideOptions, Decision, Verdict};
pub use local::{critical_places, local_isotropic};

use crate::error::{domain, Error, Result};
use crate::field::{Elem, GlobalField, Place};

pub type Matrix = Vec<Vec<Elem>>;

/// sum_{i,j} A_ij x_i x_j with A symmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadForm {
    field: GlobalField,
    a: Matrix,
}

impl QuadForm {
    /// From the coefficients a_ij of sum a_ij x_i x_j (not necessarily
    /// symmetric): A_ii = a_ii, A_ij = (a_ij + a_ji)/2.
    pub fn from_coefficients(field: GlobalField, a: Matrix) -> Result<QuadForm> {
        let m = a.len();
        if m == 0 {
            return domain("a quadratic form needs at least one variable");
        }
        if a.iter().any(|row| row.len() != m) {
            return domain("coefficient matrix is not square");
        }
        let half = field.int(2).inv()?;
        let mut sym = a.clone();
        for i in 0..m {
            for j in 0..m {
                if a[i][j].field() != field {
                    return domain(format!("{} is not an element of {field}", a[i][j]));
                }
                if i != j {
                    sym[i][j] = (&a[i][j] + &a[j][i]) * half.clone();
                }
            }
        }
        Ok(QuadForm { field, a: sym })
    }

    /// From an already symmetric matrix.
    pub fn symmetric(field: GlobalField, a: Matrix) -> Result<QuadForm> {
        let f = QuadForm::from_coefficients(field, a.clone())?;
        if f.a != a {
            return domain("matrix is not symmetric");
        }
        Ok(f)
    }

    pub fn diagonal(field: GlobalField, coeffs: &[Elem]) -> Result<QuadForm> {
        let m = coeffs.len();
        let mut a = vec![vec![field.zero(); m]; m];
        for (i, c) in coeffs.iter().enumerate() {
            a[i][i] = c.clone();
        }
        QuadForm::from_coefficients(field, a)
    }

    pub fn field(&self) -> GlobalField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.a
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().flatten().all(Elem::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim()).all(|i| (0..self.dim()).all(|j| i == j || self.a[i][j].is_zero()))
    }

    /// x^t A x.
    pub fn eval(&self, x: &[Elem]) -> Result<Elem> {
        if x.len() != self.dim() {
            return domain(format!(
                "vector of length {} for a form in {} variables",
                x.len(),
                self.dim()
            ));
        }
        let mut acc = self.field.zero();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if !self.a[i][j].is_zero() {
                    acc = acc + &self.a[i][j] * &(&x[i] * &x[j]);
                }
            }
        }
        Ok(acc)
    }

    /// A x.
    pub fn apply(&self, x: &[Elem]) -> Vec<Elem> {
        self.a
            .iter()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .fold(self.field.zero(), |acc, (r, xi)| acc + r * xi)
            })
            .collect()
    }
}

/// Rank-n core b_1..b_n of a form together with C such that
/// C^t A C = diag(b_1, .., b_n, 0, .., 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagForm {
    pub coeffs: Vec<Elem>,
    pub ambient: usize,
    pub congruence: Matrix,
}

impl DiagForm {
    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_degenerate(&self) -> bool {
        self.rank() < self.ambient
    }

    /// A nonzero vector of the radical, if the form is degenerate.
    pub fn kernel_vector(&self) -> Option<Vec<Elem>> {
        let r = self.rank();
        (r < self.ambient).then(|| self.congruence.iter().map(|row| row[r].clone()).collect())
    }

    /// C y, mapping a vector in diagonal coordinates back to the original
    /// ones (y is padded with zeros).
    pub fn to_original(&self, y: &[Elem]) -> Vec<Elem> {
        self.congruence
            .iter()
            .map(|row| {
                row.iter()
                    .zip(y)
                    .fold(row[0].field().zero(), |acc, (c, yi)| acc + c * yi)
            })
            .collect()
    }

    pub fn local_isotropic(&self, v: &Place) -> Result<bool> {
        local_isotropic(&self.coeffs, v)
    }
}

pub fn identity(field: GlobalField, m: usize) -> Matrix {
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| if i == j { field.one() } else { field.zero() })
                .collect()
        })
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| (0..rows).map(|i| a[i][j].clone()).collect())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    let zero = a[0][0].field().zero();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    (0..k).fold(zero.clone(), |acc, l| {
                        if a[i][l].is_zero() || b[l][j].is_zero() {
                            acc
                        } else {
                            acc + &a[i][l] * &b[l][j]
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// Determinant by Gaussian elimination.
pub fn determinant(a: &Matrix) -> Result<Elem> {
    let n = a.len();
    if n == 0 || a.iter().any(|r| r.len() != n) {
        return domain("determinant of a non-square matrix");
    }
    let field = a[0][0].field();
    let mut m = a.clone();
    let mut det = field.one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Ok(field.zero());
        };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        let pivot = m[k][k].clone();
        det = det * pivot.clone();
        let inv = pivot.inv()?;
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let factor = &m[i][k] * &inv;
            for j in k..n {
                let t = &factor * &m[k][j];
                m[i][j] = &m[i][j] - &t;
            }
        }
    }
    Ok(det)
}

struct Congruence {
    m: Matrix,
    c: Matrix,
}

impl Congruence {
    fn swap(&mut self, i: usize, j: usize) {
        self.m.swap(i, j);
        for row in &mut self.m {
            row.swap(i, j);
        }
        for row in &mut self.c {
            row.swap(i, j);
        }
    }

    // col_i += s col_j, then the same on rows
    fn add_multiple(&mut self, i: usize, j: usize, s: &Elem) {
        for row in self.m.iter_mut().chain(self.c.iter_mut()) {
            let t = s * &row[j];
            row[i] = &row[i] + &t;
        }
        let rj = self.m[j].clone();
        for (x, y) in self.m[i].iter_mut().zip(&rj) {
            *x = &*x + &(s * y);
        }
    }

    fn scale(&mut self, j: usize, s: &Elem) {
        for row in self.m.iter_mut().chain(self.c.iter_mut()) {
            row[j] = s * &row[j];
        }
        for x in self.m[j].iter_mut() {
            *x = s * &*x;
        }
    }

    // (col_i, col_j) <- (col_i + col_j, col_i - col_j)
    fn plus_minus(&mut self, i: usize, j: usize) {
        let field = self.m[0][0].field();
        self.add_multiple(i, j, &field.one());
        self.scale(j, &field.int(-2));
        self.add_multiple(j, i, &field.one());
    }
}

/// Symmetric congruence reduction. A zero diagonal with a nonzero
/// off-diagonal entry (i, j) is handled by the substitution
/// x_i = u + v, x_j = u - v.
pub fn diagonalize(f: &QuadForm) -> DiagForm {
    let m = f.dim();
    let field = f.field();
    let mut st = Congruence {
        m: f.matrix().clone(),
        c: identity(field, m),
    };
    let mut rank = m;
    for k in 0..m {
        if st.m[k][k].is_zero() {
            if let Some(j) = (k + 1..m).find(|&j| !st.m[j][j].is_zero()) {
                st.swap(k, j);
            } else if let Some((i, j)) = (k..m)
                .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
                .find(|&(i, j)| !st.m[i][j].is_zero())
            {
                st.plus_minus(i, j);
                if i != k {
                    st.swap(k, i);
                }
            } else {
                rank = k;
                break;
            }
        }
        let inv = st.m[k][k].inv().expect("pivot is nonzero");
        for i in k + 1..m {
            if st.m[i][k].is_zero() {
                continue;
            }
            let s = -(&st.m[i][k] * &inv);
            st.add_multiple(i, k, &s);
        }
    }
    DiagForm {
        coeffs: (0..rank).map(|i| st.m[i][i].clone()).collect(),
        ambient: m,
        congruence: st.c,
    }
}

pub(crate) fn require_nonzero(coeffs: &[Elem]) -> Result<()> {
    if coeffs.is_empty() {
        return domain("empty form");
    }
    if coeffs.iter().any(Elem::is_zero) {
        return Err(Error::Domain(
            "degenerate diagonal form: strip the radical first".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Elem {
        Elem::rational(n, 1)
    }

    fn qm(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect()
    }

    #[test]
    fn hyperbolic_plane() {
        let f = QuadForm::symmetric(GlobalField::Rationals, qm(&[&[0, 1], &[1, 0]])).unwrap();
        let d = diagonalize(&f);
        assert_eq!(d.coeffs, vec![q(2), q(-2)]);
        assert_eq!(d.congruence, qm(&[&[1, 1], &[1, -1]]));
    }

    #[test]
    fn already_diagonal_and_rank_one() {
        let qq = GlobalField::Rationals;
        let d = diagonalize(&QuadForm::diagonal(qq, &[q(1), q(5)]).unwrap());
        assert_eq!(d.coeffs, vec![q(1), q(5)]);
        assert_eq!(d.congruence, identity(qq, 2));

        let f = QuadForm::symmetric(qq, qm(&[&[1, 1], &[1, 1]])).unwrap();
        let d = diagonalize(&f);
        assert_eq!(d.coeffs, vec![q(1)]);
        assert!(d.is_degenerate());
        let k = d.kernel_vector().unwrap();
        assert!(f.apply(&k).iter().all(Elem::is_zero));
    }

    #[test]
    fn symmetrization() {
        let qq = GlobalField::Rationals;
        let f = QuadForm::from_coefficients(qq, qm(&[&[1, 3], &[1, 2]])).unwrap();
        assert_eq!(f.matrix(), &qm(&[&[1, 2], &[2, 2]]));
        assert!(QuadForm::symmetric(qq, qm(&[&[1, 3], &[1, 2]])).is_err());
        assert_eq!(f.eval(&[q(1), q(1)]).unwrap(), q(7));
    }

    #[test]
    fn congruence_identity() {
        let qq = GlobalField::Rationals;
        let a = qm(&[&[0, 2, 1], &[2, 0, 3], &[1, 3, 0]]);
        let f = QuadForm::symmetric(qq, a.clone()).unwrap();
        let d = diagonalize(&f);
        let b = mat_mul(&mat_mul(&transpose(&d.congruence), &a), &d.congruence);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j && i < d.rank() {
                    d.coeffs[i].clone()
                } else {
                    q(0)
                };
                assert_eq!(b[i][j], expect);
            }
        }
        assert!(!determinant(&d.congruence).unwrap().is_zero());
        assert_eq!(determinant(&a).unwrap(), q(12));
    }
}
