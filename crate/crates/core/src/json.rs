//! JSON wire formats.
//!
//! Elements serialize in their natural presentation rather than raw
//! coordinates: `sym_real` as a full symmetric matrix, the Lorentz algebra
//! as `(x0, x)`. Matrices are rejected when asymmetric beyond `1e-12`
//! relative.

use serde::{Deserialize, Serialize};

use crate::descriptor::{AlgebraDescriptor, AlgebraKind};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::peirce::JordanFrame;
use crate::sym_real::SymMatrix;

/// Wire form of [`Element`].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "algebra", rename_all = "snake_case")]
pub enum ElementJson {
    SymReal { r: usize, matrix: Vec<Vec<f64>> },
    Lorentz { n: usize, x0: f64, x: Vec<f64> },
}

impl From<Element> for ElementJson {
    fn from(el: Element) -> Self {
        match el.descriptor().kind() {
            AlgebraKind::SymReal => {
                let m = SymMatrix::from_element(&el).expect("sym_real element");
                ElementJson::SymReal {
                    r: m.size(),
                    matrix: m.rows(),
                }
            }
            AlgebraKind::Lorentz => {
                let coords = el.coords();
                ElementJson::Lorentz {
                    n: coords.len() - 1,
                    x0: coords[0],
                    x: coords[1..].to_vec(),
                }
            }
        }
    }
}

impl TryFrom<ElementJson> for Element {
    type Error = Error;

    fn try_from(json: ElementJson) -> Result<Self> {
        match json {
            ElementJson::SymReal { r, matrix } => {
                if matrix.len() != r {
                    return Err(Error::InvalidInput(format!(
                        "matrix has {} rows, expected {r}",
                        matrix.len()
                    )));
                }
                SymMatrix::from_rows(matrix)?.to_element()
            }
            ElementJson::Lorentz { n, x0, x } => {
                if x.len() != n {
                    return Err(Error::InvalidInput(format!(
                        "spatial part has {} entries, expected {n}",
                        x.len()
                    )));
                }
                let desc = AlgebraDescriptor::lorentz(n)?;
                let mut coords = Vec::with_capacity(n + 1);
                coords.push(x0);
                coords.extend(x);
                Element::from_coords(desc, coords)
            }
        }
    }
}

/// Wire form of [`JordanFrame`]. A Lorentz frame may also be given by its
/// unit vector alone, `{"u": [...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FrameJson {
    Idempotents { idempotents: Vec<ElementJson> },
    LorentzAxis { u: Vec<f64> },
}

impl From<JordanFrame> for FrameJson {
    fn from(frame: JordanFrame) -> Self {
        FrameJson::Idempotents {
            idempotents: frame
                .idempotents()
                .iter()
                .cloned()
                .map(ElementJson::from)
                .collect(),
        }
    }
}

impl TryFrom<FrameJson> for JordanFrame {
    type Error = Error;

    fn try_from(json: FrameJson) -> Result<Self> {
        match json {
            FrameJson::Idempotents { idempotents } => {
                let members = idempotents
                    .into_iter()
                    .map(Element::try_from)
                    .collect::<Result<Vec<_>>>()?;
                JordanFrame::new(members)
            }
            FrameJson::LorentzAxis { u } => crate::lorentz::LorentzFrame::new(u)?.to_jordan_frame(),
        }
    }
}

pub fn element_from_str(s: &str) -> Result<Element> {
    Ok(serde_json::from_str::<Element>(s)?)
}

pub fn element_to_string(el: &Element) -> String {
    serde_json::to_string(el).expect("element serialization cannot fail")
}

pub fn frame_from_str(s: &str) -> Result<JordanFrame> {
    Ok(serde_json::from_str::<JordanFrame>(s)?)
}

pub fn frame_to_string(frame: &JordanFrame) -> String {
    serde_json::to_string(frame).expect("frame serialization cannot fail")
}
