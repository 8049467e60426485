//! Brute-force ground truth: every question is answered by running through
//! all of `Sym(n)` for small `n`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;

use crate::action::Action;
use crate::error::{Error, Result};
use crate::perm::{generators_for, GroupCoset, PermGroup, Permutation};

pub const DEFAULT_MAX_DEGREE: usize = 8;

/// Limits for exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_degree: usize,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_degree: DEFAULT_MAX_DEGREE,
            seed: 0,
        }
    }
}

impl OracleConfig {
    /// The default configuration, with `max_degree` taken from
    /// `REFINERY_ORACLE_CAP` when that is set to a number.
    pub fn from_env() -> Self {
        let mut config = OracleConfig::default();
        if let Some(cap) = std::env::var("REFINERY_ORACLE_CAP").ok().and_then(|v| v.trim().parse().ok()) {
            config.max_degree = cap;
        }
        config
    }

    /// Fails with [`Error::DegreeTooLarge`] above the cap.
    pub fn check_degree(&self, degree: usize) -> Result<()> {
        if degree > self.max_degree {
            return Err(Error::DegreeTooLarge {
                degree,
                max: self.max_degree,
            });
        }
        Ok(())
    }
}

type Cache = Mutex<HashMap<usize, Arc<Vec<Permutation>>>>;

/// All of `Sym(degree)` in lexicographic order of image lists, cached per degree.
pub fn symmetric_elements(degree: usize, config: &OracleConfig) -> Result<Arc<Vec<Permutation>>> {
    config.check_degree(degree)?;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    let entry = guard.entry(degree).or_insert_with(|| {
        Arc::new(
            (0..degree)
                .permutations(degree)
                .map(Permutation::from_zero_based)
                .collect(),
        )
    });
    Ok(Arc::clone(entry))
}

/// Every `g` in `Sym(degree)` with `pred(g)`, in lexicographic order.
pub fn brute_filter(pred: impl Fn(&Permutation) -> bool, degree: usize, config: &OracleConfig) -> Result<Vec<Permutation>> {
    Ok(symmetric_elements(degree, config)?
        .iter()
        .filter(|g| pred(g))
        .cloned()
        .collect())
}

/// `Iso(x, y)` as an explicit sorted list.
pub fn brute_transporter_elements<T: Action + PartialEq>(x: &T, y: &T, degree: usize, config: &OracleConfig) -> Result<Vec<Permutation>> {
    brute_filter(|g| x.act(g).is_ok_and(|image| &image == y), degree, config)
}

/// `Iso(x, y)` as generators of `Auto(x)` and a representative.
pub fn brute_transporter<T: Action + PartialEq>(x: &T, y: &T, degree: usize, config: &OracleConfig) -> Result<GroupCoset> {
    coset_from_elements(degree, &brute_transporter_elements(x, y, degree, config)?)
}

/// Packs a nonempty coset `Gx`, given by all its elements, as generators of
/// `G` and the least element as representative. Returns the empty coset for
/// an empty list. The caller is responsible for the list being a coset.
pub fn coset_from_elements(degree: usize, elements: &[Permutation]) -> Result<GroupCoset> {
    let Some(first) = elements.iter().min() else {
        return Ok(GroupCoset::empty(degree));
    };
    let inv = first.inverse();
    let group: Vec<Permutation> = elements.iter().map(|g| g.then(&inv)).collect();
    let group = PermGroup::new(degree, generators_for(degree, &group))?;
    if first.is_identity() {
        Ok(GroupCoset::group(group))
    } else {
        GroupCoset::coset(group, first.clone())
    }
}

/// What a finite subset of `Sym(Ω)` looks like.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetShape {
    Empty,
    Subgroup,
    Coset,
    Other,
}

/// Classifies `elements`; duplicates are ignored.
pub fn classify(elements: &[Permutation]) -> SetShape {
    let Some(first) = elements.first() else {
        return SetShape::Empty;
    };
    let set: std::collections::HashSet<&Permutation> = elements.iter().collect();
    let inv = first.inverse();
    let shifted: std::collections::HashSet<Permutation> = set.iter().map(|g| g.then(&inv)).collect();
    let closed = shifted
        .iter()
        .all(|a| shifted.iter().all(|b| shifted.contains(&a.then(b))));
    if !closed {
        SetShape::Other
    } else if set.iter().any(|g| g.is_identity()) {
        SetShape::Subgroup
    } else {
        SetShape::Coset
    }
}
