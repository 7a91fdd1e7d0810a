//! Closed forms on the Lorentz algebra `R x R^n`, used both as a second
//! algebra instance and as an independent oracle for the abstract rank-2
//! machinery.
//!
//! Throughout, `<., .>_n` denotes the plain spatial dot product on `R^n`,
//! not the algebra inner product (which is the trace form and carries a
//! factor 2).

use serde::{Deserialize, Serialize};

use crate::descriptor::{AlgebraDescriptor, AlgebraKind};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::peirce::{JordanFrame, SpectralDecomposition};
use crate::tolerance::Tolerance;

/// A Jordan frame of the Lorentz algebra, determined by a spatial unit
/// vector `u`: the pair `(c_u, e - c_u)` with `c_u = (1, u) / 2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LorentzFrame {
    u: Vec<f64>,
}

impl LorentzFrame {
    pub fn new(u: Vec<f64>) -> Result<Self> {
        if u.len() < 2 {
            return Err(Error::InvalidInput("lorentz frame requires n >= 2".into()));
        }
        if u.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("non-finite frame vector".into()));
        }
        let norm = dot(&u, &u).sqrt();
        if (norm - 1.0).abs() > 1e-8 {
            return Err(Error::InvalidInput(format!(
                "frame vector norm {norm} is not 1"
            )));
        }
        // renormalize so downstream identities hold to machine precision
        let u = u.iter().map(|v| v / norm).collect();
        Ok(LorentzFrame { u })
    }

    pub fn u(&self) -> &[f64] {
        &self.u
    }

    pub fn descriptor(&self) -> AlgebraDescriptor {
        AlgebraDescriptor::lorentz(self.u.len()).expect("validated size")
    }

    /// `c_u = (1, u) / 2`.
    pub fn primary_idempotent(&self) -> Element {
        let mut coords = Vec::with_capacity(self.u.len() + 1);
        coords.push(0.5);
        coords.extend(self.u.iter().map(|v| 0.5 * v));
        Element::from_coords(self.descriptor(), coords).expect("valid coords")
    }

    /// `e - c_u = (1, -u) / 2`.
    pub fn complement_idempotent(&self) -> Element {
        let mut coords = Vec::with_capacity(self.u.len() + 1);
        coords.push(0.5);
        coords.extend(self.u.iter().map(|v| -0.5 * v));
        Element::from_coords(self.descriptor(), coords).expect("valid coords")
    }

    pub fn to_jordan_frame(&self) -> Result<JordanFrame> {
        JordanFrame::new(vec![
            self.primary_idempotent(),
            self.complement_idempotent(),
        ])
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn from_parts(x0: f64, spatial: &[f64]) -> Result<Element> {
    let desc = AlgebraDescriptor::lorentz(spatial.len())?;
    let mut coords = Vec::with_capacity(spatial.len() + 1);
    coords.push(x0);
    coords.extend_from_slice(spatial);
    Element::from_coords(desc, coords)
}

pub fn parts(x: &Element) -> Result<(f64, &[f64])> {
    x.lorentz_parts()
}

fn require_lorentz(x: &Element) -> Result<usize> {
    match x.descriptor().kind() {
        AlgebraKind::Lorentz => Ok(x.descriptor().ambient_dim() - 1),
        AlgebraKind::SymReal => Err(Error::InvalidInput("expected a lorentz element".into())),
    }
}

/// Spectral decomposition: eigenvalues `x0 +- |x|_n` against the frame of
/// `u = x / |x|_n`. For spatially degenerate input the convention is
/// `u = (1, 0, ..., 0)`.
pub fn spectral(x: &Element) -> Result<SpectralDecomposition> {
    let n = require_lorentz(x)?;
    let (x0, xs) = x.lorentz_parts()?;
    let norm = dot(xs, xs).sqrt();
    let u = if norm == 0.0 {
        let mut u = vec![0.0; n];
        u[0] = 1.0;
        u
    } else {
        xs.iter().map(|v| v / norm).collect()
    };
    let frame = LorentzFrame::new(u)?;
    Ok(SpectralDecomposition {
        eigenvalues: vec![x0 + norm, x0 - norm],
        frame: JordanFrame::new(vec![
            frame.primary_idempotent(),
            frame.complement_idempotent(),
        ])?,
    })
}

/// `P(x^{1/2}) y` in closed form:
/// `(x0 y0 + <x, y>_n, sqrt(det x) y + (y0 + <x, y>_n / (x0 + sqrt(det x))) x)`.
pub fn quad_sqrt_apply(x: &Element, y: &Element) -> Result<Element> {
    require_lorentz(x)?;
    x.descriptor().check_same(y.descriptor())?;
    let (x0, xs) = x.lorentz_parts()?;
    let (y0, ys) = y.lorentz_parts()?;
    let det = x.det();
    let norm = dot(xs, xs).sqrt();
    if det <= 0.0 || x0 <= norm {
        return Err(Error::NotInCone(format!("x0 = {x0}, |x|_n = {norm}")));
    }
    let sqrt_det = det.sqrt();
    let mix = y0 + dot(xs, ys) / (x0 + sqrt_det);
    let out0 = x0 * y0 + dot(xs, ys);
    let spatial: Vec<f64> = ys
        .iter()
        .zip(xs)
        .map(|(yv, xv)| sqrt_det * yv + mix * xv)
        .collect();
    from_parts(out0, &spatial)
}

/// Orthonormal basis of the half eigenspace `E(c_u, 1/2)`:
/// the elements `(0, w)` with `<w, u>_n = 0`, `|w|_n = 1`. Its dimension is
/// `n - 1`, the Peirce constant.
pub fn half_space_basis(frame: &LorentzFrame) -> Vec<Element> {
    let n = frame.u.len();
    let mut spatial_basis: Vec<Vec<f64>> = Vec::with_capacity(n - 1);
    for k in 0..n {
        if spatial_basis.len() == n - 1 {
            break;
        }
        let mut w = vec![0.0; n];
        w[k] = 1.0;
        // Gram-Schmidt against u and the accepted vectors.
        let proj = dot(&w, &frame.u);
        for (wi, ui) in w.iter_mut().zip(&frame.u) {
            *wi -= proj * ui;
        }
        for b in &spatial_basis {
            let p = dot(&w, b);
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi -= p * bi;
            }
        }
        let norm = dot(&w, &w).sqrt();
        if norm < 1e-8 {
            continue;
        }
        for wi in w.iter_mut() {
            *wi /= norm;
        }
        spatial_basis.push(w);
    }
    debug_assert_eq!(spatial_basis.len(), n - 1);
    spatial_basis
        .into_iter()
        .map(|w| from_parts(0.0, &w).expect("valid coords"))
        .collect()
}

/// Membership test for `E(c_u, 1/2)`: `z0 = 0` and `<z, u>_n = 0`.
pub fn in_half_space(z: &Element, frame: &LorentzFrame, tol: &Tolerance) -> Result<bool> {
    require_lorentz(z)?;
    let (z0, zs) = z.lorentz_parts()?;
    let scale = z.max_abs().max(1.0);
    Ok(z0.abs() <= tol.abs + tol.rel * scale
        && dot(zs, &frame.u).abs() <= tol.abs + tol.rel * scale)
}

/// Triangular parameters of a cone element `y` against the frame of `u`:
///
/// `alpha1^2 = y0 + <y, u>_n`, `alpha2^2 = det y / (y0 + <y, u>_n)`,
/// `z = (0, (y - <y, u>_n u) / (y0 + <y, u>_n))`.
pub fn triangular_params(y: &Element, frame: &LorentzFrame) -> Result<(f64, f64, Element)> {
    require_lorentz(y)?;
    let (y0, ys) = y.lorentz_parts()?;
    let det = y.det();
    let norm = dot(ys, ys).sqrt();
    if det <= 0.0 || y0 <= norm {
        return Err(Error::NotInCone(format!("y0 = {y0}, |y|_n = {norm}")));
    }
    let yu = dot(ys, &frame.u);
    let d1 = y0 + yu;
    let alpha1 = d1.sqrt();
    let alpha2 = (det / d1).sqrt();
    let spatial: Vec<f64> = ys
        .iter()
        .zip(&frame.u)
        .map(|(yv, uv)| (yv - yu * uv) / d1)
        .collect();
    Ok((alpha1, alpha2, from_parts(0.0, &spatial)?))
}

/// The triangular multiplication `t_y x` in closed form:
///
/// `t_y x = sqrt(det y) x + D1(x) y - sqrt(det y) D1(x) c_u + h_u(x, y) (e - c_u)`
///
/// with `D1(v) = v0 + <v, u>_n` and
///
/// `h_u(x, y) = sqrt(det y) [ 2 (<x, y>_n - <x, u>_n <y, u>_n) / D1(y)
///              + (1 - 2 sqrt(det y) / D1(y)) <x, u>_n - x0 ]`.
///
/// This matches the composition `tau_{c_u}(z) P(a1 c_u + a2 (e - c_u))`
/// with the parameters of [`triangular_params`]; the agreement is exercised
/// directly in the tests rather than assumed.
pub fn t_apply(y: &Element, x: &Element, frame: &LorentzFrame) -> Result<Element> {
    require_lorentz(y)?;
    y.descriptor().check_same(x.descriptor())?;
    let (x0, xs) = x.lorentz_parts()?;
    let (y0, ys) = y.lorentz_parts()?;
    let det = y.det();
    let norm = dot(ys, ys).sqrt();
    if det <= 0.0 || y0 <= norm {
        return Err(Error::NotInCone(format!("y0 = {y0}, |y|_n = {norm}")));
    }
    let sqrt_det = det.sqrt();
    let u = &frame.u;
    let xu = dot(xs, u);
    let yu = dot(ys, u);
    let d1x = x0 + xu;
    let d1y = y0 + yu;
    let h =
        sqrt_det * (2.0 * (dot(xs, ys) - xu * yu) / d1y + (1.0 - 2.0 * sqrt_det / d1y) * xu - x0);
    let c_u = frame.primary_idempotent();
    let c_perp = frame.complement_idempotent();
    Element::linear_combination(&[
        (sqrt_det, x),
        (d1x, y),
        (-sqrt_det * d1x, &c_u),
        (h, &c_perp),
    ])
}
