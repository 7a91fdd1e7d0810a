//! Real characters of the triangular group. The regular family is the power
//! function evaluated at `t e`: `h(t) = Delta_s(t e)`, multiplicative under
//! composition of triangular operators over a shared frame. With
//! `s = (1, ..., 1)` the exponents telescope and `h(t) = det(t e)`.

use crate::element::Element;
use crate::error::Result;
use crate::operator::Operator;
use crate::peirce::JordanFrame;
use crate::tolerance::Tolerance;
use crate::triangular::{self, TriangularDecomposition};

use super::{sampling, LawKind, ResidualReport};

/// Character value of an arbitrary triangular-group operator, evaluated from
/// the principal minors of `t e`.
pub fn character_of(op: &Operator, frame: &JordanFrame, s: &[f64]) -> Result<f64> {
    let te = op.apply(&Element::identity(*frame.descriptor()))?;
    triangular::delta_s(&te, s, frame)
}

/// Character of the operator of a triangular decomposition.
pub fn triangular_character(d: &TriangularDecomposition, s: &[f64]) -> Result<f64> {
    character_of(&d.operator()?, &d.frame, s)
}

/// Samples random pairs of triangular operators over the standard frame and
/// reports the worst relative residual of `h(s t) = h(s) h(t)`.
pub fn character_multiplicativity(
    desc: crate::descriptor::AlgebraDescriptor,
    s: &[f64],
    n_samples: usize,
    seed: u64,
    tol: &Tolerance,
) -> Result<ResidualReport> {
    let frame = JordanFrame::standard(desc);
    let mut max_abs = 0.0_f64;
    let mut max_rel = 0.0_f64;
    for index in 0..n_samples {
        let mut rng = sampling::stream(seed, index as u64);
        let d1 = triangular::triangular_decompose(&sampling::cone_element(desc, &mut rng), &frame)?;
        let d2 = triangular::triangular_decompose(&sampling::cone_element(desc, &mut rng), &frame)?;
        let op1 = d1.operator()?;
        let op2 = d2.operator()?;
        let h12 = character_of(&op1.compose(&op2)?, &frame, s)?;
        let h1h2 = character_of(&op1, &frame, s)? * character_of(&op2, &frame, s)?;
        let abs = (h12 - h1h2).abs();
        max_abs = max_abs.max(abs);
        max_rel = max_rel.max(abs / h12.abs().max(h1h2.abs()).max(1e-300));
    }
    Ok(ResidualReport {
        law: LawKind::Character,
        samples: n_samples,
        max_abs_residual: max_abs,
        max_rel_residual: max_rel,
        seed,
        pass: max_rel <= tol.rel,
    })
}
