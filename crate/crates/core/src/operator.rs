//! Dense linear endomorphisms of the algebra and the operator constructions
//! built from the Jordan product: `L(x)`, `P(x)` and the box operator.

use crate::descriptor::AlgebraDescriptor;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::linalg;
use crate::tolerance::Tolerance;

/// A linear endomorphism of the algebra, stored as a dense `N x N` matrix
/// acting on element coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    desc: AlgebraDescriptor,
    mat: Vec<f64>,
}

impl Operator {
    pub fn from_matrix(desc: AlgebraDescriptor, mat: Vec<f64>) -> Result<Self> {
        let n = desc.ambient_dim();
        if mat.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "expected {}x{} matrix, got {} entries",
                n,
                n,
                mat.len()
            )));
        }
        if mat.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("non-finite operator entry".into()));
        }
        Ok(Operator { desc, mat })
    }

    pub fn identity(desc: AlgebraDescriptor) -> Self {
        Operator {
            desc,
            mat: linalg::identity(desc.ambient_dim()),
        }
    }

    pub fn zero(desc: AlgebraDescriptor) -> Self {
        Operator {
            desc,
            mat: vec![0.0; desc.ambient_dim() * desc.ambient_dim()],
        }
    }

    /// Multiplication operator `L(x) y = xy`, built column by column.
    pub fn lmap(x: &Element) -> Self {
        let desc = *x.descriptor();
        let n = desc.ambient_dim();
        let mut mat = vec![0.0; n * n];
        for j in 0..n {
            let b = Element::basis(desc, j).expect("basis index in range");
            let col = x.jordan_product(&b).expect("same descriptor");
            for i in 0..n {
                mat[i * n + j] = col.coords()[i];
            }
        }
        Operator { desc, mat }
    }

    /// Quadratic representation `P(x) = 2 L(x)^2 - L(x^2)`.
    pub fn quad_rep(x: &Element) -> Self {
        let l = Operator::lmap(x);
        let l2 = Operator::lmap(&x.square());
        let n = x.descriptor().ambient_dim();
        let ll = linalg::mat_mul(&l.mat, &l.mat, n);
        let mut mat = vec![0.0; n * n];
        for (m, (a, b)) in mat.iter_mut().zip(ll.iter().zip(&l2.mat)) {
            *m = 2.0 * a - b;
        }
        Operator {
            desc: *x.descriptor(),
            mat,
        }
    }

    /// Box operator `x [] y = L(xy) + L(x) L(y) - L(y) L(x)`.
    pub fn box_op(x: &Element, y: &Element) -> Result<Self> {
        x.descriptor().check_same(y.descriptor())?;
        let n = x.descriptor().ambient_dim();
        let lxy = Operator::lmap(&x.jordan_product(y)?);
        let lx = Operator::lmap(x);
        let ly = Operator::lmap(y);
        let xy = linalg::mat_mul(&lx.mat, &ly.mat, n);
        let yx = linalg::mat_mul(&ly.mat, &lx.mat, n);
        let mut mat = lxy.mat;
        for i in 0..n * n {
            mat[i] += xy[i] - yx[i];
        }
        Ok(Operator {
            desc: *x.descriptor(),
            mat,
        })
    }

    pub fn descriptor(&self) -> &AlgebraDescriptor {
        &self.desc
    }

    pub fn matrix(&self) -> &[f64] {
        &self.mat
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.mat[i * self.desc.ambient_dim() + j]
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        self.desc.check_same(x.descriptor())?;
        let n = self.desc.ambient_dim();
        Element::from_coords(self.desc, linalg::mat_vec(&self.mat, x.coords(), n))
    }

    /// Operator composition `self . other` (apply `other` first).
    pub fn compose(&self, other: &Operator) -> Result<Operator> {
        self.desc.check_same(&other.desc)?;
        let n = self.desc.ambient_dim();
        Ok(Operator {
            desc: self.desc,
            mat: linalg::mat_mul(&self.mat, &other.mat, n),
        })
    }

    pub fn add(&self, other: &Operator) -> Result<Operator> {
        self.desc.check_same(&other.desc)?;
        let mat = self
            .mat
            .iter()
            .zip(&other.mat)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Operator {
            desc: self.desc,
            mat,
        })
    }

    pub fn sub(&self, other: &Operator) -> Result<Operator> {
        self.desc.check_same(&other.desc)?;
        let mat = self
            .mat
            .iter()
            .zip(&other.mat)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Operator {
            desc: self.desc,
            mat,
        })
    }

    pub fn scale(&self, s: f64) -> Operator {
        Operator {
            desc: self.desc,
            mat: self.mat.iter().map(|v| v * s).collect(),
        }
    }

    /// Adjoint with respect to the algebra inner product. Both coordinate
    /// systems carry a uniform weight, so this is the matrix transpose.
    pub fn transpose(&self) -> Operator {
        Operator {
            desc: self.desc,
            mat: linalg::transpose(&self.mat, self.desc.ambient_dim()),
        }
    }

    /// Determinant in the space of endomorphisms.
    pub fn ddet(&self) -> f64 {
        linalg::det(&self.mat, self.desc.ambient_dim())
    }

    pub fn inverse(&self) -> Result<Operator> {
        linalg::invert(&self.mat, self.desc.ambient_dim())
            .map(|mat| Operator {
                desc: self.desc,
                mat,
            })
            .ok_or_else(|| Error::SingularElement("operator is not invertible".into()))
    }

    pub fn max_abs(&self) -> f64 {
        linalg::max_abs(&self.mat)
    }

    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        linalg::max_abs_diff(&self.mat, &other.mat)
    }

    pub fn approx_eq(&self, other: &Operator, tol: &Tolerance) -> bool {
        self.desc == other.desc
            && self
                .mat
                .iter()
                .zip(&other.mat)
                .all(|(&a, &b)| tol.close(a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sym_real::SymMatrix;

    fn sym(rows: &[&[f64]]) -> Element {
        SymMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect())
            .unwrap()
            .to_element()
            .unwrap()
    }

    #[test]
    fn lmap_of_identity() {
        let desc = AlgebraDescriptor::sym_real(3).unwrap();
        let e = Element::identity(desc);
        assert!(Operator::lmap(&e).approx_eq(&Operator::identity(desc), &Tolerance::default()));
    }

    #[test]
    fn lmap_applied_to_identity_returns_x() {
        let x = sym(&[&[1.5, -0.5, 2.0], &[-0.5, 0.25, 1.0], &[2.0, 1.0, -3.0]]);
        let e = Element::identity(*x.descriptor());
        assert!(Operator::lmap(&x)
            .apply(&e)
            .unwrap()
            .approx_eq(&x, &Tolerance::default()));
    }

    #[test]
    fn lmap_eigenvalues_of_primitive_idempotent() {
        // L(diag(1,0)) on S_2(R) has eigenvalues {1, 1/2, 0}.
        let c = sym(&[&[1.0, 0.0], &[0.0, 0.0]]);
        let l = Operator::lmap(&c);
        let m = crate::sym_real::SymMatrix::from_rows(vec![
            vec![l.entry(0, 0), l.entry(0, 1), l.entry(0, 2)],
            vec![l.entry(1, 0), l.entry(1, 1), l.entry(1, 2)],
            vec![l.entry(2, 0), l.entry(2, 1), l.entry(2, 2)],
        ])
        .unwrap();
        let (vals, _) = crate::sym_real::eig_jacobi(&m).unwrap();
        let expected = [1.0, 0.5, 0.0];
        for (v, e) in vals.iter().zip(expected) {
            assert!((v - e).abs() < 1e-12);
        }
    }

    #[test]
    fn quad_rep_matches_matrix_congruence() {
        // P(y) x = y . x . y in matrix arithmetic.
        let y = sym(&[&[2.0, 0.0], &[0.0, 1.0]]);
        let x = Element::identity(*y.descriptor());
        let got = Operator::quad_rep(&y).apply(&x).unwrap();
        assert!(got.approx_eq(&sym(&[&[4.0, 0.0], &[0.0, 1.0]]), &Tolerance::default()));
    }

    #[test]
    fn quad_rep_matches_congruence_on_random_pairs() {
        let desc = AlgebraDescriptor::sym_real(4).unwrap();
        for index in 0..50u64 {
            let mut rng = crate::cauchy::sampling::stream(23, index);
            let y = crate::cauchy::sampling::cone_element(desc, &mut rng);
            let x = crate::cauchy::sampling::element(desc, &mut rng);
            let got = Operator::quad_rep(&y).apply(&x).unwrap();

            let ym = crate::sym_real::SymMatrix::from_element(&y).unwrap();
            let xm = crate::sym_real::SymMatrix::from_element(&x).unwrap();
            let yx = crate::linalg::mat_mul(ym.as_slice(), xm.as_slice(), 4);
            let yxy = crate::linalg::mat_mul(&yx, ym.as_slice(), 4);
            let oracle = crate::sym_real::SymMatrix::from_rows(
                (0..4).map(|i| yxy[i * 4..(i + 1) * 4].to_vec()).collect(),
            )
            .unwrap()
            .to_element()
            .unwrap();
            let scale = got.max_abs().max(1.0);
            assert!(got.max_abs_diff(&oracle) < 1e-11 * scale);
        }
    }

    #[test]
    fn quad_rep_of_idempotent_projects() {
        let c = sym(&[&[1.0, 0.0], &[0.0, 0.0]]);
        let x = sym(&[&[3.0, 1.0], &[1.0, 5.0]]);
        let got = Operator::quad_rep(&c).apply(&x).unwrap();
        assert!(got.approx_eq(&sym(&[&[3.0, 0.0], &[0.0, 0.0]]), &Tolerance::default()));
    }

    #[test]
    fn quad_rep_of_identity() {
        let desc = AlgebraDescriptor::lorentz(3).unwrap();
        let e = Element::identity(desc);
        assert!(Operator::quad_rep(&e).approx_eq(&Operator::identity(desc), &Tolerance::default()));
    }

    #[test]
    fn box_with_identity_is_lmap() {
        let x = sym(&[&[1.0, 2.0], &[2.0, -1.0]]);
        let e = Element::identity(*x.descriptor());
        let b = Operator::box_op(&x, &e).unwrap();
        assert!(b.approx_eq(&Operator::lmap(&x), &Tolerance::default()));
    }

    #[test]
    fn box_against_half_space_element() {
        // z in E(c, 1/2): (z [] c) e = z / 2, and (z [] c) kills E(c, 0).
        let c = sym(&[&[1.0, 0.0], &[0.0, 0.0]]);
        let z = sym(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let b = Operator::box_op(&z, &c).unwrap();
        let e = Element::identity(*c.descriptor());
        assert!(b
            .apply(&e)
            .unwrap()
            .approx_eq(&z.scale(0.5), &Tolerance::default()));
        let y = sym(&[&[0.0, 0.0], &[0.0, 1.0]]);
        assert!(b.apply(&y).unwrap().max_abs() < 1e-15);
    }

    #[test]
    fn quad_rep_inverse_is_quad_rep_of_inverse() {
        let x = sym(&[&[3.0, 1.0], &[1.0, 2.0]]);
        let a = Operator::quad_rep(&x).inverse().unwrap();
        let b = Operator::quad_rep(&x.inverse().unwrap());
        assert!(a.max_abs_diff(&b) < 1e-12);
    }
}
