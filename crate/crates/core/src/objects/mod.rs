//! Objects acted on by `Sym(Ω)`: ordered partitions, (labelled) digraphs,
//! extended graphs and stacks of these.

mod digraph;
mod extended;
mod partition;
mod stack;
pub mod text;

pub use digraph::{Digraph, Graph, Label, LabelledDigraph};
pub use extended::{extended_equal, ExtendedGraph};
pub use partition::OrderedPartition;
pub use stack::{stack_concat, Stack, StackEntry, StackKind};
