//! Backtrack search in symmetric groups organised around stacks of points,
//! ordered partitions, labelled digraphs and extended graphs, with perfect
//! refiners for stabilisers and transporters of many kinds of objects.

pub mod action;
pub mod cli;
pub mod encode;
pub mod error;
pub mod objects;
pub mod oracle;
pub mod perm;
pub mod refiner;
pub mod search;

pub use action::{act, Action};
pub use error::{Error, Result};
pub use perm::{GroupCoset, PermGroup, Permutation};
