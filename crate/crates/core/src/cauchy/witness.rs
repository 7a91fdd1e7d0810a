//! Explicit witness pairs for the quadratic-representation law.
//!
//! Given orthogonal primitive idempotents `a`, `c` joined by `z` with
//! `|z|^2 = 2`, and `b = lambda^2 a + mu^2 c + lambda mu z`, the witness pair
//! `(x, y)` satisfies
//!
//! `P(x) y^2 = alpha a + (e - a)` and `P(y) x^2 = alpha b + (e - b)`
//!
//! simultaneously, with both `x` and `y` inside the cone for every `alpha`
//! in the open interval `(0, lambda^8 / (1 + lambda^2)^2)`. Evaluating a
//! solution family on both products pins its scalar generator on that
//! interval.

use crate::element::Element;
use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::tolerance::Tolerance;

/// A constructed witness pair together with its parameters.
#[derive(Debug, Clone)]
pub struct WitnessPair {
    pub lambda2: f64,
    pub alpha: f64,
    pub x: Element,
    pub y: Element,
    pub b: Element,
}

/// Upper endpoint of the admissible open interval for `alpha`.
pub fn alpha_sup(lambda2: f64) -> f64 {
    lambda2.powi(4) / (1.0 + lambda2).powi(2)
}

fn validate_inputs(a: &Element, c: &Element, z: &Element, lambda2: f64) -> Result<()> {
    a.descriptor().check_same(c.descriptor())?;
    a.descriptor().check_same(z.descriptor())?;
    let check = 1e-8;
    for (name, idem) in [("a", a), ("c", c)] {
        if idem.square().max_abs_diff(idem) > check {
            return Err(Error::InvalidInput(format!("{name} is not idempotent")));
        }
        if (idem.trace() - 1.0).abs() > check {
            return Err(Error::InvalidInput(format!("{name} is not primitive")));
        }
    }
    if a.jordan_product(c)?.max_abs() > check {
        return Err(Error::InvalidInput("a and c are not orthogonal".into()));
    }
    for (name, idem) in [("a", a), ("c", c)] {
        let prod = idem.jordan_product(z)?;
        if prod.max_abs_diff(&z.scale(0.5)) > check * z.max_abs().max(1.0) {
            return Err(Error::InvalidInput(format!(
                "z is not in the half eigenspace of {name}"
            )));
        }
    }
    let z_norm2 = z.inner(z)?;
    if (z_norm2 - 2.0).abs() > 1e-6 {
        return Err(Error::InvalidInput(format!(
            "|z|^2 = {z_norm2}, expected 2"
        )));
    }
    if !(0.0 < lambda2 && lambda2 < 1.0) {
        return Err(Error::InvalidInput(format!(
            "lambda^2 = {lambda2} outside (0, 1)"
        )));
    }
    Ok(())
}

/// Evaluates the witness coordinates without interval or cone checks, so the
/// breakdown outside the admissible interval can be observed directly.
/// Returns `(x, y, b)`.
pub fn witness_candidate(
    a: &Element,
    c: &Element,
    z: &Element,
    lambda2: f64,
    alpha: f64,
) -> Result<(Element, Element, Element)> {
    validate_inputs(a, c, z, lambda2)?;
    if alpha <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "alpha = {alpha} must be positive"
        )));
    }
    let sqrt_alpha = alpha.sqrt();
    if (1.0 - sqrt_alpha).abs() <= 1e-12 {
        return Err(Error::InvalidInput("alpha too close to 1".into()));
    }
    let l2 = lambda2;
    let m2 = 1.0 - lambda2;
    let l = l2.sqrt();
    let m = m2.sqrt();
    let l3 = l * l2;
    let l4 = l2 * l2;
    let m4 = m2 * m2;
    let mix = 1.0 + l2 * m2;

    let denom = alpha * (1.0 - l4) + 2.0 * sqrt_alpha * l2 - l4 * (1.0 - m4);
    if denom.abs() <= 1e-12 {
        return Err(Error::InvalidInput(format!(
            "degenerate scale denominator {denom:.3e}"
        )));
    }
    let scale = (1.0 - sqrt_alpha) * l3 * mix / denom;

    let mut x1 = scale * sqrt_alpha * m2 * (l2 + sqrt_alpha * (1.0 + l2) * m2) / mix;
    let mut x2 = scale * ((1.0 - sqrt_alpha) / mix - m2);
    let mut x3 = scale * sqrt_alpha * l * m;
    // The quadratic representation is even in the rank-two block, so the
    // cone-side representative of (x1, x2, x3) satisfies the same product
    // identities.
    if x1 + x2 < 0.0 {
        x1 = -x1;
        x2 = -x2;
        x3 = -x3;
    }
    let y1 = 1.0 / (l2 * m2);
    let y2 = 1.0;
    let y3 = -(sqrt_alpha + l2 * m2) / ((1.0 - sqrt_alpha) * l3 * m);

    let e = Element::identity(*a.descriptor());
    let complement = e.sub(a)?.sub(c)?;
    let x = Element::linear_combination(&[(x1, a), (x2, c), (x3, z), (1.0, &complement)])?;
    let y = Element::linear_combination(&[(y1, a), (y2, c), (y3, z), (1.0, &complement)])?;
    let b = Element::linear_combination(&[(l2, a), (m2, c), (l * m, z)])?;
    Ok((x, y, b))
}

/// Builds and certifies a witness pair: `alpha` must lie in the open
/// admissible interval, both elements must be cone interior, and both
/// product identities must hold within `tol.abs`.
pub fn witness_pair(
    a: &Element,
    c: &Element,
    z: &Element,
    lambda2: f64,
    alpha: f64,
    tol: &Tolerance,
) -> Result<WitnessPair> {
    let sup = alpha_sup(lambda2);
    if !(0.0 < alpha && alpha < sup) {
        return Err(Error::InvalidInput(format!(
            "alpha = {alpha} outside the admissible interval (0, {sup})"
        )));
    }
    let (x, y, b) = witness_candidate(a, c, z, lambda2, alpha)?;
    if !x.is_in_cone(tol) || !y.is_in_cone(tol) {
        return Err(Error::NotInCone("witness pair left the cone".into()));
    }
    let e = Element::identity(*a.descriptor());

    let px_y2 = Operator::quad_rep(&x).apply(&y.square())?;
    let target_a = Element::linear_combination(&[(alpha, a), (1.0, &e), (-1.0, a)])?;
    let res_a = px_y2.max_abs_diff(&target_a);

    let py_x2 = Operator::quad_rep(&y).apply(&x.square())?;
    let target_b = Element::linear_combination(&[(alpha, &b), (1.0, &e), (-1.0, &b)])?;
    let res_b = py_x2.max_abs_diff(&target_b);

    let worst = res_a.max(res_b);
    if worst > tol.abs {
        return Err(Error::ToleranceExceeded {
            what: "witness product identities".into(),
            residual: worst,
        });
    }
    Ok(WitnessPair {
        lambda2,
        alpha,
        x,
        y,
        b,
    })
}
