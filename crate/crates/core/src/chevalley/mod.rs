//! Root elements `x_a(t)` and torus elements `h_a(t)` as exact matrices in the
//! adjoint representation.

mod commutator;
mod matrix;
mod structure;
mod word;

use thiserror::Error;

use crate::ring::{Elem, Ring, RingError};
use crate::roots::{Root, RootError, RootSystem};

pub use commutator::{CommutatorTable, CommutatorTerm, Pairing};
pub use matrix::GroupElement;
pub use structure::{SparseInt, StructureConstants};
pub use word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChevalleyError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("cannot parse word: {0}")]
    Parse(String),
    #[error("roots {0} and {1} are proportional")]
    Proportional(String, String),
    #[error("no constant commutator table fits for ({0}): {1}")]
    NoSolution(String, String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// The Chevalley group of a root system in its adjoint representation, ready
/// to be evaluated over any ring.
#[derive(Debug, Clone)]
pub struct Chevalley {
    sys: RootSystem,
    constants: StructureConstants,
    // divided powers of ad X_r, indexed by root
    powers: Vec<Vec<SparseInt>>,
}

impl Chevalley {
    pub fn new(sys: &RootSystem) -> Result<Self, ChevalleyError> {
        let constants = StructureConstants::new(sys)?;
        let powers = (0..sys.num_roots())
            .map(|r| constants.divided_powers(sys, r))
            .collect::<Result<_, _>>()?;
        Ok(Chevalley {
            sys: sys.clone(),
            constants,
            powers,
        })
    }

    pub fn system(&self) -> &RootSystem {
        &self.sys
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.constants
    }

    /// Adjoint dimension: rank plus number of roots.
    pub fn dim(&self) -> usize {
        self.constants.dim()
    }

    /// Basis index of `X_r` in the adjoint module.
    pub fn root_basis_index(&self, r: &Root) -> Result<usize, ChevalleyError> {
        Ok(self.sys.rank() + self.sys.require(r)?)
    }

    pub fn identity(&self, ring: &Ring) -> GroupElement {
        GroupElement::identity(ring, self.dim())
    }

    pub fn x(&self, ring: &Ring, root: &Root, t: &Elem) -> Result<GroupElement, ChevalleyError> {
        let mut g = self.identity(ring);
        self.right_mul_x(&mut g, root, t)?;
        Ok(g)
    }

    pub fn h(&self, ring: &Ring, root: &Root, t: &Elem) -> Result<GroupElement, ChevalleyError> {
        let mut g = self.identity(ring);
        self.right_mul_h(&mut g, root, t)?;
        Ok(g)
    }

    /// `g <- g * x_root(t)`.
    pub fn right_mul_x(&self, g: &mut GroupElement, root: &Root, t: &Elem) -> Result<(), ChevalleyError> {
        let r = self.sys.require(root)?;
        g.right_mul_unipotent(&self.powers[r], t);
        Ok(())
    }

    /// `g <- x_root(t) * g`.
    pub fn left_mul_x(&self, g: &mut GroupElement, root: &Root, t: &Elem) -> Result<(), ChevalleyError> {
        let r = self.sys.require(root)?;
        g.left_mul_unipotent(&self.powers[r], t);
        Ok(())
    }

    /// `g <- g * h_root(t)` through its six-factor definition.
    pub fn right_mul_h(&self, g: &mut GroupElement, root: &Root, t: &Elem) -> Result<(), ChevalleyError> {
        let ring = g.ring().clone();
        let t_inv = ring.inv(t)?;
        let neg = root.neg();
        let one = ring.one();
        let m1 = ring.neg(&one);
        for (r, v) in [
            (root, t.clone()),
            (&neg, ring.neg(&t_inv)),
            (root, t.clone()),
            (root, m1.clone()),
            (&neg, one),
            (root, m1),
        ] {
            self.right_mul_x(g, r, &v)?;
        }
        Ok(())
    }

    /// The six root letters whose product defines `h_root(t)`.
    pub fn h_word(&self, ring: &Ring, root: &Root, t: &Elem) -> Result<Word, ChevalleyError> {
        let t_inv = ring.inv(t)?;
        let neg = root.neg();
        let mut w = Word::new();
        w.push_root(root, t.clone());
        w.push_root(&neg, ring.neg(&t_inv));
        w.push_root(root, t.clone());
        w.push_root(root, ring.from_int(-1));
        w.push_root(&neg, ring.one());
        w.push_root(root, ring.from_int(-1));
        Ok(w)
    }

    /// Left-to-right product of the letters; a conjugate evaluates to
    /// `prefix * inner * prefix^-1`.
    pub fn evaluate(&self, ring: &Ring, word: &Word) -> Result<GroupElement, ChevalleyError> {
        let mut g = self.identity(ring);
        self.eval_into(&mut g, word)?;
        Ok(g)
    }

    fn eval_into(&self, g: &mut GroupElement, word: &Word) -> Result<(), ChevalleyError> {
        let ring = g.ring().clone();
        for letter in &word.0 {
            match letter {
                Letter::Root { root, t } => self.right_mul_x(g, root, t)?,
                Letter::Torus { root, t } => self.right_mul_h(g, root, t)?,
                Letter::Conjugate { prefix, inner } => {
                    self.eval_into(g, prefix)?;
                    self.eval_into(g, inner)?;
                    self.eval_into(g, &prefix.inverse(&ring)?)?;
                }
            }
        }
        Ok(())
    }

    /// `[x_a(s), x_b(t)] = x_a(s) x_b(t) x_a(-s) x_b(-t)`.
    pub fn commutator(&self, ring: &Ring, a: &Root, s: &Elem, b: &Root, t: &Elem) -> Result<GroupElement, ChevalleyError> {
        let mut g = self.identity(ring);
        self.right_mul_x(&mut g, a, s)?;
        self.right_mul_x(&mut g, b, t)?;
        self.right_mul_x(&mut g, a, &ring.neg(s))?;
        self.right_mul_x(&mut g, b, &ring.neg(t))?;
        Ok(g)
    }

    /// Commutator constants for the ordered pair `(a, b)`.
    pub fn derive_cij(&self, a: &Root, b: &Root) -> Result<CommutatorTable, ChevalleyError> {
        commutator::derive(self, a, b)
    }

    /// Checks the commutator formula at one parameter pair.
    pub fn verify_commutator(&self, ring: &Ring, table: &CommutatorTable, s: &Elem, t: &Elem) -> Result<bool, ChevalleyError> {
        commutator::verify(self, ring, table, s, t)
    }
}

#[cfg(test)]
mod tests;
