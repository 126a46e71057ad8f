use serde::{Deserialize, Serialize};

use super::matrix::NatMatrix;
use crate::error::{Error, Result};
use crate::finset::{self, SetMap};

/// A span `X <- A -> Y` of finite sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSpan")]
pub struct Span {
    left: SetMap,
    right: SetMap,
}

#[derive(Deserialize)]
struct RawSpan {
    left: SetMap,
    right: SetMap,
}

impl TryFrom<RawSpan> for Span {
    type Error = Error;

    fn try_from(raw: RawSpan) -> Result<Self> {
        Span::new(raw.left, raw.right)
    }
}

impl Span {
    pub fn new(left: SetMap, right: SetMap) -> Result<Self> {
        if left.dom() != right.dom() {
            return Err(Error::InvalidMap(format!(
                "span legs have apexes of sizes {} and {}",
                left.dom(),
                right.dom()
            )));
        }
        Ok(Span { left, right })
    }

    pub fn identity(n: usize) -> Self {
        Span {
            left: SetMap::identity(n),
            right: SetMap::identity(n),
        }
    }

    /// The span with empty apex.
    pub fn empty(x: usize, y: usize) -> Self {
        Span {
            left: SetMap::empty(x),
            right: SetMap::empty(y),
        }
    }

    /// A concrete span realizing a fiber-count matrix. Apex points are laid
    /// out in row-major order of `(x, y)`.
    pub fn from_matrix(m: &NatMatrix) -> Self {
        let mut l = Vec::new();
        let mut r = Vec::new();
        for x in 0..m.rows() {
            for y in 0..m.cols() {
                for _ in 0..m.get(x, y) {
                    l.push(x);
                    r.push(y);
                }
            }
        }
        Span {
            left: SetMap::from_table(m.rows(), l).unwrap(),
            right: SetMap::from_table(m.cols(), r).unwrap(),
        }
    }

    pub fn left(&self) -> &SetMap {
        &self.left
    }

    pub fn right(&self) -> &SetMap {
        &self.right
    }

    pub fn apex(&self) -> usize {
        self.left.dom()
    }

    pub fn source(&self) -> usize {
        self.left.cod()
    }

    pub fn target(&self) -> usize {
        self.right.cod()
    }
}

/// Fiber counts of the apex over `X × Y`; equal exactly for isomorphic spans.
pub fn span_canonical(s: &Span) -> NatMatrix {
    let mut m = NatMatrix::zeros(s.source(), s.target());
    for a in 0..s.apex() {
        let (x, y) = (s.left.apply(a), s.right.apply(a));
        m.set(x, y, m.get(x, y) + 1);
    }
    m
}

/// `s2 ∘ s1` for `s1: X -> Y`, `s2: Y -> Z`, with apex the pullback over `Y`.
pub fn span_compose(s2: &Span, s1: &Span) -> Result<Span> {
    if s1.target() != s2.source() {
        return Err(Error::CompositionMismatch(format!(
            "span into a set of size {} cannot be followed by a span out of a set of size {}",
            s1.target(),
            s2.source()
        )));
    }
    let (_, p1, p2) = finset::pullback(&s1.right, &s2.left)?;
    Ok(Span {
        left: finset::compose_maps(&s1.left, &p1)?,
        right: finset::compose_maps(&s2.right, &p2)?,
    })
}
