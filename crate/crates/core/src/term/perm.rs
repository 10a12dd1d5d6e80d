use super::{normalize_tree, Element, Signature};
use crate::error::TermError;
use crate::scalar::Scalar;

/// Permutation of `{1, .., n}`; `images[i - 1]` is the image of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n as u8).collect() }
    }

    pub fn from_images(images: Vec<u8>) -> Result<Self, TermError> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &i in &images {
            let i = i as usize;
            if i == 0 || i > n || seen[i] {
                return Err(TermError::Signature(format!("not a permutation: {images:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Swaps `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(i - 1, j - 1);
        p
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.images[i as usize - 1] as u32
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&i| self.images[i as usize - 1]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize - 1] = i as u8 + 1;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| j as usize == i + 1)
    }

    /// All `n!` permutations in lexicographic order of their image words.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (1..=n as u8).collect();
        loop {
            out.push(Permutation { images: cur.clone() });
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

/// Renames the variables of `e` by `σ`: `x_i ↦ x_σ(i)`, renormalizing every
/// term.
pub fn act<F: Scalar>(sigma: &Permutation, e: &Element<F>, sig: &Signature) -> Element<F> {
    assert_eq!(sigma.len(), e.arity(), "permutation size differs from arity");
    if sigma.is_identity() {
        return e.clone();
    }
    let mut out = Element::zero(e.arity());
    for (m, c) in e.terms() {
        let t = m.to_tree().relabel(&|l| sigma.apply(l));
        if let Some((neg, m2)) = normalize_tree(&t, sig) {
            out.add_term(m2, if neg { c.neg_ref() } else { c.clone() });
        }
    }
    out
}
