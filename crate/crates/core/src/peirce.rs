//! Spectral decomposition, Peirce projections, joint Peirce blocks, and the
//! splitting of a pair of non-orthogonal primitive idempotents.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::descriptor::{AlgebraDescriptor, AlgebraKind};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::tolerance::Tolerance;
use crate::{lorentz, sym_real};

/// Validation tolerance for frames assembled from eigensolver or
/// automorphism output.
pub(crate) const FRAME_TOL: f64 = 1e-8;

/// A complete system of `r` primitive orthogonal idempotents summing to the
/// identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "crate::json::FrameJson", into = "crate::json::FrameJson")]
pub struct JordanFrame {
    idempotents: Vec<Element>,
}

impl JordanFrame {
    pub fn new(idempotents: Vec<Element>) -> Result<Self> {
        let frame = JordanFrame { idempotents };
        frame.validate()?;
        Ok(frame)
    }

    /// The diagonal frame of `sym_real`, or `(c_u, e - c_u)` with
    /// `u = (1, 0, ...)` for the Lorentz algebra.
    pub fn standard(desc: AlgebraDescriptor) -> Self {
        let idempotents = match desc.kind() {
            AlgebraKind::SymReal => (0..desc.rank())
                .map(|i| Element::basis(desc, i).expect("diagonal slot"))
                .collect(),
            AlgebraKind::Lorentz => {
                let n = desc.ambient_dim() - 1;
                let mut u = vec![0.0; n];
                u[0] = 1.0;
                let frame = lorentz::LorentzFrame::new(u).expect("unit vector");
                vec![frame.primary_idempotent(), frame.complement_idempotent()]
            }
        };
        JordanFrame { idempotents }
    }

    fn validate(&self) -> Result<()> {
        let first = self
            .idempotents
            .first()
            .ok_or_else(|| Error::FrameIncomplete("empty frame".into()))?;
        let desc = *first.descriptor();
        if self.idempotents.len() != desc.rank() {
            return Err(Error::FrameIncomplete(format!(
                "expected {} idempotents, got {}",
                desc.rank(),
                self.idempotents.len()
            )));
        }
        let e = Element::identity(desc);
        let mut sum = Element::zero(desc);
        for (i, c) in self.idempotents.iter().enumerate() {
            desc.check_same(c.descriptor())?;
            let sq = c.square();
            if sq.max_abs_diff(c) > FRAME_TOL {
                return Err(Error::FrameIncomplete(format!(
                    "member {i} is not idempotent (residual {:.3e})",
                    sq.max_abs_diff(c)
                )));
            }
            if (c.trace() - 1.0).abs() > FRAME_TOL {
                return Err(Error::FrameIncomplete(format!(
                    "member {i} is not primitive (trace {})",
                    c.trace()
                )));
            }
            for (j, d) in self.idempotents.iter().enumerate().skip(i + 1) {
                let prod = c.jordan_product(d)?;
                if prod.max_abs() > FRAME_TOL {
                    return Err(Error::FrameIncomplete(format!(
                        "members {i} and {j} are not orthogonal (residual {:.3e})",
                        prod.max_abs()
                    )));
                }
            }
            sum = sum.add(c)?;
        }
        if sum.max_abs_diff(&e) > FRAME_TOL {
            return Err(Error::FrameIncomplete(format!(
                "idempotents sum to identity with residual {:.3e}",
                sum.max_abs_diff(&e)
            )));
        }
        Ok(())
    }

    pub fn descriptor(&self) -> &AlgebraDescriptor {
        self.idempotents[0].descriptor()
    }

    pub fn len(&self) -> usize {
        self.idempotents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.idempotents.is_empty()
    }

    pub fn get(&self, i: usize) -> &Element {
        &self.idempotents[i]
    }

    pub fn idempotents(&self) -> &[Element] {
        &self.idempotents
    }

    /// Image of the frame under an algebra automorphism.
    pub fn conjugated(&self, k: &Operator) -> Result<JordanFrame> {
        let idempotents = self
            .idempotents
            .iter()
            .map(|c| k.apply(c))
            .collect::<Result<Vec<_>>>()?;
        JordanFrame::new(idempotents)
    }

    /// Partial sum `c_1 + ... + c_k` (1-based `k`).
    pub fn partial_sum(&self, k: usize) -> Result<Element> {
        if k == 0 || k > self.len() {
            return Err(Error::IndexOutOfRange {
                k,
                rank: self.len(),
            });
        }
        let mut acc = self.idempotents[0].clone();
        for c in &self.idempotents[1..k] {
            acc = acc.add(c)?;
        }
        Ok(acc)
    }
}

/// `x = sum_i lambda_i c_i` over a Jordan frame, eigenvalues sorted
/// descending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub frame: JordanFrame,
}

impl SpectralDecomposition {
    pub fn reconstruct(&self) -> Element {
        let desc = *self.frame.descriptor();
        let mut acc = Element::zero(desc);
        for (&l, c) in self.eigenvalues.iter().zip(self.frame.idempotents()) {
            acc = acc.add(&c.scale(l)).expect("same descriptor");
        }
        acc
    }
}

/// Eigenvalues plus idempotents without frame validation; the fast path
/// used by `inverse`, `sqrt`, `power` and `is_in_cone`.
pub(crate) fn eigen_parts(x: &Element) -> Result<(Vec<f64>, Vec<Element>)> {
    match x.descriptor().kind() {
        AlgebraKind::SymReal => {
            let m = sym_real::SymMatrix::from_element(x)?;
            let r = m.size();
            let (eigenvalues, vectors) = sym_real::eig_jacobi(&m)?;
            let mut idempotents = Vec::with_capacity(r);
            for col in 0..r {
                let mut outer = vec![vec![0.0; r]; r];
                for (i, row) in outer.iter_mut().enumerate() {
                    for (j, v) in row.iter_mut().enumerate() {
                        *v = vectors[i * r + col] * vectors[j * r + col];
                    }
                }
                idempotents.push(sym_real::SymMatrix::from_rows(outer)?.to_element()?);
            }
            Ok((eigenvalues, idempotents))
        }
        AlgebraKind::Lorentz => {
            let dec = lorentz::spectral(x)?;
            Ok((dec.eigenvalues.clone(), dec.frame.idempotents().to_vec()))
        }
    }
}

/// Full spectral decomposition of `x`, with a validated frame.
pub fn spectral_decompose(x: &Element) -> Result<SpectralDecomposition> {
    let (eigenvalues, idempotents) = eigen_parts(x)?;
    Ok(SpectralDecomposition {
        eigenvalues,
        frame: JordanFrame::new(idempotents)?,
    })
}

/// The three Peirce projectors of an idempotent `c`, as Lagrange polynomials
/// in `L(c)`: eigenvalue 1, 1/2 and 0 pieces, in that order.
pub fn peirce_projectors(c: &Element, tol: &Tolerance) -> Result<(Operator, Operator, Operator)> {
    let residual = c.square().max_abs_diff(c);
    if residual > tol.abs + tol.rel * c.max_abs() {
        return Err(Error::NotIdempotent(residual));
    }
    let desc = *c.descriptor();
    let l = Operator::lmap(c);
    let l2 = l.compose(&l)?;
    let id = Operator::identity(desc);
    // p1(t) = 2t^2 - t, p_half(t) = 4t - 4t^2, p0(t) = 2t^2 - 3t + 1
    let p1 = l2.scale(2.0).sub(&l)?;
    let phalf = l.scale(4.0).sub(&l2.scale(4.0))?;
    let p0 = l2.scale(2.0).sub(&l.scale(3.0))?.add(&id)?;
    Ok((p1, phalf, p0))
}

/// Projection of `y` onto the half eigenspace of `c`, computed with Jordan
/// products only: `4 (c y) - 4 c (c y)`.
pub(crate) fn half_component(c: &Element, y: &Element) -> Result<Element> {
    let cy = c.jordan_product(y)?;
    let ccy = c.jordan_product(&cy)?;
    cy.scale(4.0).sub(&ccy.scale(4.0))
}

/// Projection of `y` onto the zero eigenspace of `c`:
/// `y - 3 (c y) + 2 c (c y)`.
pub(crate) fn zero_component(c: &Element, y: &Element) -> Result<Element> {
    let cy = c.jordan_product(y)?;
    let ccy = c.jordan_product(&cy)?;
    y.sub(&cy.scale(3.0))?.add(&ccy.scale(2.0))
}

/// Joint Peirce blocks of `x` with respect to a frame.
#[derive(Debug, Clone, PartialEq)]
pub struct PeirceBlocks {
    pub frame: JordanFrame,
    /// Component of `x` in `E_ij`, keyed by `(i, j)` with `i <= j`.
    pub blocks: BTreeMap<(usize, usize), Element>,
}

impl PeirceBlocks {
    pub fn block(&self, i: usize, j: usize) -> Option<&Element> {
        self.blocks.get(&(i.min(j), i.max(j)))
    }

    pub fn sum(&self) -> Element {
        let desc = *self.frame.descriptor();
        let mut acc = Element::zero(desc);
        for b in self.blocks.values() {
            acc = acc.add(b).expect("same descriptor");
        }
        acc
    }
}

/// Decomposes `x` into joint Peirce blocks: the diagonal block `(i, i)` is
/// `P(c_i) x`, the off-diagonal block `(i, j)` is `4 L(c_i) L(c_j) x`.
pub fn joint_peirce(x: &Element, frame: &JordanFrame) -> Result<PeirceBlocks> {
    frame.descriptor().check_same(x.descriptor())?;
    frame.validate().map_err(|e| match e {
        Error::FrameIncomplete(m) => Error::FrameIncomplete(m),
        other => other,
    })?;
    let r = frame.len();
    let mut blocks = BTreeMap::new();
    for i in 0..r {
        let ci = frame.get(i);
        blocks.insert((i, i), Operator::quad_rep(ci).apply(x)?);
        for j in i + 1..r {
            let cj = frame.get(j);
            let cjx = cj.jordan_product(x)?;
            blocks.insert((i, j), ci.jordan_product(&cjx)?.scale(4.0));
        }
    }
    Ok(PeirceBlocks {
        frame: frame.clone(),
        blocks,
    })
}

/// Result of splitting a non-orthogonal pair of primitive idempotents
/// `(a, b)`: a primitive `c` orthogonal to `a` and a connecting element `z`
/// with `b = lambda^2 a + mu^2 c + lambda mu z`, `lambda^2 + mu^2 = 1`,
/// `|z|^2 = 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct IdempotentSplit {
    pub lambda: f64,
    pub mu: f64,
    pub c: Element,
    pub z: Element,
}

fn check_primitive_idempotent(name: &str, c: &Element, tol: &Tolerance) -> Result<()> {
    let residual = c.square().max_abs_diff(c);
    if residual > tol.abs + tol.rel * c.max_abs() {
        return Err(Error::InvalidInput(format!(
            "{name} is not idempotent (residual {residual:.3e})"
        )));
    }
    if (c.trace() - 1.0).abs() > tol.abs + tol.rel {
        return Err(Error::InvalidInput(format!(
            "{name} is not primitive (trace {})",
            c.trace()
        )));
    }
    Ok(())
}

/// Splits distinct non-orthogonal primitive idempotents `a`, `b`:
/// `lambda = +sqrt(<a, b>)`, `u = ab`, `c = (b + lambda^2 a - 2u) / mu^2`,
/// `z = (2 / (lambda mu)) (u - lambda^2 a)`.
///
/// Pairs with `<a, b>` within `1e-8` of 0 or 1 are rejected: the division by
/// `lambda mu` degenerates there.
pub fn nonorthogonal_split(a: &Element, b: &Element, tol: &Tolerance) -> Result<IdempotentSplit> {
    a.descriptor().check_same(b.descriptor())?;
    check_primitive_idempotent("a", a, tol)?;
    check_primitive_idempotent("b", b, tol)?;
    let lambda2 = a.inner(b)?;
    if !(1e-8..=1.0 - 1e-8).contains(&lambda2) {
        return Err(Error::InvalidInput(format!(
            "<a, b> = {lambda2} outside the admissible open interval (0, 1)"
        )));
    }
    let mu2 = 1.0 - lambda2;
    let lambda = lambda2.sqrt();
    let mu = mu2.sqrt();
    let u = a.jordan_product(b)?;
    let c = Element::linear_combination(&[(1.0 / mu2, b), (lambda2 / mu2, a), (-2.0 / mu2, &u)])?;
    let z = Element::linear_combination(&[(2.0 / (lambda * mu), &u), (-2.0 * lambda / mu, a)])?;
    Ok(IdempotentSplit { lambda, mu, c, z })
}
