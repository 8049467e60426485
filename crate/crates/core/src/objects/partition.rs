use std::collections::BTreeSet;
use std::fmt;

use crate::action::Action;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A list of nonempty, pairwise disjoint cells whose union is `{1, ..., degree}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedPartition {
    degree: usize,
    cells: Vec<BTreeSet<usize>>,
}

impl OrderedPartition {
    pub fn new(degree: usize, cells: Vec<BTreeSet<usize>>) -> Result<Self> {
        OrderedPartition { degree, cells }.validate()
    }

    /// The one-cell partition `[Ω]`.
    pub fn unit(degree: usize) -> Self {
        OrderedPartition {
            degree,
            cells: vec![(1..=degree).collect()],
        }
    }

    pub fn validate(self) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for cell in &self.cells {
            if cell.is_empty() {
                return Err(Error::InvalidObject("partition has an empty cell".into()));
            }
            for &p in cell {
                if p == 0 || p > self.degree {
                    return Err(Error::PointOutOfRange {
                        point: p,
                        degree: self.degree,
                    });
                }
                if !seen.insert(p) {
                    return Err(Error::InvalidObject(format!(
                        "partition cells intersect at {p}"
                    )));
                }
            }
        }
        if seen.len() != self.degree {
            return Err(Error::InvalidObject(
                "partition cells do not cover the domain".into(),
            ));
        }
        Ok(self)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn cells(&self) -> &[BTreeSet<usize>] {
        &self.cells
    }

    /// Index of the cell containing `point`.
    pub fn cell_of(&self, point: usize) -> Option<usize> {
        self.cells.iter().position(|c| c.contains(&point))
    }
}

impl Action for OrderedPartition {
    fn act(&self, g: &Permutation) -> Result<Self> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch(g.degree(), self.degree));
        }
        Ok(OrderedPartition {
            degree: self.degree,
            cells: self.cells.act(g)?,
        })
    }
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "partition n={}", self.degree)?;
        for cell in &self.cells {
            f.write_str(" |")?;
            for p in cell {
                write!(f, " {p}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(points: &[usize]) -> BTreeSet<usize> {
        points.iter().copied().collect()
    }

    #[test]
    fn validation() {
        assert!(OrderedPartition::new(3, vec![set(&[1, 2]), set(&[3])]).is_ok());
        assert!(matches!(
            OrderedPartition::new(2, vec![set(&[1]), set(&[1, 2])]),
            Err(Error::InvalidObject(m)) if m.contains("intersect")
        ));
        assert!(OrderedPartition::new(3, vec![set(&[1, 2])]).is_err());
        assert!(OrderedPartition::new(2, vec![set(&[1, 2]), set(&[])]).is_err());
        assert!(OrderedPartition::new(2, vec![set(&[1, 3])]).is_err());
    }

    #[test]
    fn action_moves_cells() {
        let p = OrderedPartition::new(3, vec![set(&[1, 2]), set(&[3])]).unwrap();
        let g = Permutation::parse("(2 3)", 3).unwrap();
        assert_eq!(
            p.act(&g).unwrap(),
            OrderedPartition::new(3, vec![set(&[1, 3]), set(&[2])]).unwrap()
        );
    }
}
