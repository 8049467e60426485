//! The action of `Sym(Ω)` by exponentiation, lifted recursively to sets,
//! lists and the object kinds of [`crate::objects`].

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Objects on which permutations act on the right: `x.act(g)` is `x^g`.
pub trait Action: Sized {
    fn act(&self, g: &Permutation) -> Result<Self>;
}

/// `x^g`.
pub fn act<T: Action>(g: &Permutation, x: &T) -> Result<T> {
    x.act(g)
}

/// Points of `Ω`.
impl Action for usize {
    fn act(&self, g: &Permutation) -> Result<Self> {
        g.try_image(*self)
    }
}

impl<A: Action, B: Action> Action for (A, B) {
    fn act(&self, g: &Permutation) -> Result<Self> {
        Ok((self.0.act(g)?, self.1.act(g)?))
    }
}

impl<T: Action + Ord> Action for BTreeSet<T> {
    fn act(&self, g: &Permutation) -> Result<Self> {
        self.iter().map(|x| x.act(g)).collect()
    }
}

impl<T: Action> Action for Vec<T> {
    fn act(&self, g: &Permutation) -> Result<Self> {
        self.iter().map(|x| x.act(g)).collect()
    }
}

/// Conjugation: `p^g = g^-1 p g`.
impl Action for Permutation {
    fn act(&self, g: &Permutation) -> Result<Self> {
        if self.degree() != g.degree() {
            return Err(Error::DegreeMismatch(self.degree(), g.degree()));
        }
        Ok(g.inverse().then(self).then(g))
    }
}
