//! The universal value type: a point of the algebra in fixed coordinates.
//!
//! Coordinates are chosen so that the algebra inner product `<x, y> = tr(xy)`
//! is a weighted dot product of coordinates:
//!
//! * `sym_real`: the basis is `{E_ii}` followed by `{(E_ij + E_ji)/sqrt(2)}`
//!   for `i < j` in lexicographic order. The basis is orthonormal for the
//!   trace form, so the inner product is the plain coordinate dot product.
//! * `lorentz`: coordinates are the natural `(x0, x1, ..., xn)`. The trace
//!   form is `2 (x0 y0 + <x, y>_n)`, i.e. twice the coordinate dot product.

use serde::{Deserialize, Serialize};

use crate::descriptor::{AlgebraDescriptor, AlgebraKind};
use crate::error::{Error, Result};
use crate::json::ElementJson;
use crate::peirce;
use crate::tolerance::Tolerance;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ElementJson", into = "ElementJson")]
pub struct Element {
    desc: AlgebraDescriptor,
    coords: Vec<f64>,
}

impl Element {
    pub fn from_coords(desc: AlgebraDescriptor, coords: Vec<f64>) -> Result<Self> {
        if coords.len() != desc.ambient_dim() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} coordinates, got {}",
                desc.ambient_dim(),
                coords.len()
            )));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput("non-finite coordinate".into()));
        }
        Ok(Element { desc, coords })
    }

    pub fn zero(desc: AlgebraDescriptor) -> Self {
        Element {
            desc,
            coords: vec![0.0; desc.ambient_dim()],
        }
    }

    /// The neutral element `e` of the algebra.
    pub fn identity(desc: AlgebraDescriptor) -> Self {
        let mut coords = vec![0.0; desc.ambient_dim()];
        match desc.kind() {
            AlgebraKind::SymReal => {
                for c in coords.iter_mut().take(desc.rank()) {
                    *c = 1.0;
                }
            }
            AlgebraKind::Lorentz => coords[0] = 1.0,
        }
        Element { desc, coords }
    }

    /// The `k`-th coordinate basis element.
    pub fn basis(desc: AlgebraDescriptor, k: usize) -> Result<Self> {
        if k >= desc.ambient_dim() {
            return Err(Error::InvalidInput(format!(
                "basis index {k} out of range for dimension {}",
                desc.ambient_dim()
            )));
        }
        let mut coords = vec![0.0; desc.ambient_dim()];
        coords[k] = 1.0;
        Ok(Element { desc, coords })
    }

    pub fn descriptor(&self) -> &AlgebraDescriptor {
        &self.desc
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Jordan product `xy`.
    pub fn jordan_product(&self, other: &Element) -> Result<Element> {
        self.desc.check_same(&other.desc)?;
        match self.desc.kind() {
            AlgebraKind::SymReal => {
                let r = self.desc.rank();
                let a = crate::sym_real::coords_to_dense(&self.coords, r);
                let b = crate::sym_real::coords_to_dense(&other.coords, r);
                let ab = crate::linalg::mat_mul(&a, &b, r);
                let ba = crate::linalg::mat_mul(&b, &a, r);
                let mut prod = vec![0.0; r * r];
                for (p, (x, y)) in prod.iter_mut().zip(ab.iter().zip(&ba)) {
                    *p = 0.5 * (x + y);
                }
                Ok(Element {
                    desc: self.desc,
                    coords: crate::sym_real::dense_to_coords(&prod, r),
                })
            }
            AlgebraKind::Lorentz => {
                let (x0, xs) = self.lorentz_parts()?;
                let (y0, ys) = other.lorentz_parts()?;
                let mut coords = Vec::with_capacity(self.coords.len());
                let dot: f64 = xs.iter().zip(ys).map(|(a, b)| a * b).sum();
                coords.push(x0 * y0 + dot);
                for (a, b) in xs.iter().zip(ys) {
                    coords.push(x0 * b + y0 * a);
                }
                Ok(Element {
                    desc: self.desc,
                    coords,
                })
            }
        }
    }

    /// The associative inner product `<x, y> = tr(xy)`.
    pub fn inner(&self, other: &Element) -> Result<f64> {
        self.desc.check_same(&other.desc)?;
        let dot: f64 = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum();
        Ok(match self.desc.kind() {
            AlgebraKind::SymReal => dot,
            AlgebraKind::Lorentz => 2.0 * dot,
        })
    }

    pub fn norm(&self) -> f64 {
        self.inner(self).expect("same descriptor").sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        crate::linalg::max_abs(&self.coords)
    }

    pub fn max_abs_diff(&self, other: &Element) -> f64 {
        crate::linalg::max_abs_diff(&self.coords, &other.coords)
    }

    pub fn approx_eq(&self, other: &Element, tol: &Tolerance) -> bool {
        self.desc == other.desc
            && self
                .coords
                .iter()
                .zip(&other.coords)
                .all(|(&a, &b)| tol.close(a, b))
    }

    /// Trace: the sum of the spectral eigenvalues, computed as `<x, e>`.
    pub fn trace(&self) -> f64 {
        match self.desc.kind() {
            AlgebraKind::SymReal => self.coords[..self.desc.rank()].iter().sum(),
            AlgebraKind::Lorentz => 2.0 * self.coords[0],
        }
    }

    /// Determinant: the product of the spectral eigenvalues.
    pub fn det(&self) -> f64 {
        match self.desc.kind() {
            AlgebraKind::SymReal => {
                let r = self.desc.rank();
                let dense = crate::sym_real::coords_to_dense(&self.coords, r);
                crate::linalg::det(&dense, r)
            }
            AlgebraKind::Lorentz => {
                let (x0, xs) = self.lorentz_parts().expect("lorentz element");
                x0 * x0 - xs.iter().map(|v| v * v).sum::<f64>()
            }
        }
    }

    pub fn square(&self) -> Element {
        self.jordan_product(self).expect("same descriptor")
    }

    pub fn scale(&self, s: f64) -> Element {
        Element {
            desc: self.desc,
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.desc.check_same(&other.desc)?;
        Ok(Element {
            desc: self.desc,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.desc.check_same(&other.desc)?;
        Ok(Element {
            desc: self.desc,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// `sum_k coeff_k * term_k`; all terms must share a descriptor.
    pub fn linear_combination(terms: &[(f64, &Element)]) -> Result<Element> {
        let (first, rest) = terms
            .split_first()
            .ok_or_else(|| Error::InvalidInput("empty linear combination".into()))?;
        let mut acc = first.1.scale(first.0);
        for &(c, el) in rest {
            acc = acc.add(&el.scale(c))?;
        }
        Ok(acc)
    }

    /// Inverse via the spectral decomposition (`lambda -> 1/lambda`).
    pub fn inverse(&self) -> Result<Element> {
        let (eigenvalues, idempotents) = peirce::eigen_parts(self)?;
        let scale = crate::linalg::max_abs(&eigenvalues);
        if eigenvalues
            .iter()
            .any(|l| l.abs() <= 1e-14 * scale.max(1e-300))
        {
            return Err(Error::SingularElement(format!(
                "eigenvalue magnitude below 1e-14 * {scale:.3e}"
            )));
        }
        reconstruct(&self.desc, &eigenvalues, &idempotents, |l| 1.0 / l)
    }

    /// Square root of a cone element via the spectral decomposition.
    pub fn sqrt(&self) -> Result<Element> {
        let (eigenvalues, idempotents) = peirce::eigen_parts(self)?;
        if eigenvalues.iter().any(|&l| l <= 0.0) {
            return Err(Error::NotInCone(
                "sqrt requires strictly positive eigenvalues".into(),
            ));
        }
        reconstruct(&self.desc, &eigenvalues, &idempotents, f64::sqrt)
    }

    /// Power `x^t` via the spectral decomposition. Integer exponents accept
    /// any invertible element; fractional exponents require strict cone
    /// membership (`min eigenvalue > 1e-12 * trace`).
    pub fn power(&self, t: f64) -> Result<Element> {
        let (eigenvalues, idempotents) = peirce::eigen_parts(self)?;
        let integer = t.fract() == 0.0;
        if integer {
            if t < 0.0 {
                let scale = crate::linalg::max_abs(&eigenvalues);
                if eigenvalues
                    .iter()
                    .any(|l| l.abs() <= 1e-14 * scale.max(1e-300))
                {
                    return Err(Error::SingularElement(
                        "negative power of a singular element".into(),
                    ));
                }
            }
            reconstruct(&self.desc, &eigenvalues, &idempotents, |l| l.powi(t as i32))
        } else {
            let floor = 1e-12 * self.trace().abs();
            if eigenvalues.iter().any(|&l| l <= floor) {
                return Err(Error::NotInCone(format!(
                    "fractional power requires min eigenvalue > {floor:.3e}"
                )));
            }
            reconstruct(&self.desc, &eigenvalues, &idempotents, |l| l.powf(t))
        }
    }

    /// Cone membership: every spectral eigenvalue exceeds `tol.abs`.
    pub fn is_in_cone(&self, tol: &Tolerance) -> bool {
        match peirce::eigen_parts(self) {
            Ok((eigenvalues, _)) => eigenvalues.iter().all(|&l| l > tol.abs),
            Err(_) => false,
        }
    }

    pub(crate) fn lorentz_parts(&self) -> Result<(f64, &[f64])> {
        match self.desc.kind() {
            AlgebraKind::Lorentz => Ok((self.coords[0], &self.coords[1..])),
            AlgebraKind::SymReal => Err(Error::InvalidInput("expected a lorentz element".into())),
        }
    }
}

fn reconstruct(
    desc: &AlgebraDescriptor,
    eigenvalues: &[f64],
    idempotents: &[Element],
    f: impl Fn(f64) -> f64,
) -> Result<Element> {
    let mut acc = Element::zero(*desc);
    for (&l, c) in eigenvalues.iter().zip(idempotents) {
        acc = acc.add(&c.scale(f(l)))?;
    }
    Ok(acc)
}
