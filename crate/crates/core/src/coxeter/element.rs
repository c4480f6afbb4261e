use std::hash::{Hash, Hasher};

use super::matrix::IntMatrix;

/// An element of a crystallographic Coxeter group, stored as its action on
/// simple-root coordinates. The matrix is the equality key; the cached word,
/// when present, is a reduced expression (generator indices).
#[derive(Clone, Debug)]
pub struct GroupElement {
    pub(crate) matrix: IntMatrix,
    pub(crate) word: Option<Vec<usize>>,
}

impl GroupElement {
    pub fn from_matrix(matrix: IntMatrix) -> Self {
        Self { matrix, word: None }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn cached_word(&self) -> Option<&[usize]> {
        self.word.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    /// Image under a coordinate permutation (a diagram automorphism).
    pub fn permuted(&self, perm: &[usize]) -> GroupElement {
        GroupElement {
            matrix: self.matrix.permute(perm),
            word: self
                .word
                .as_ref()
                .map(|w| w.iter().map(|&i| perm[i]).collect()),
        }
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for GroupElement {}

impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.matrix.hash(state);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}
