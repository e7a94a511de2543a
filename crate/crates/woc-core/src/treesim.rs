//! Brute-force level-by-level growth of the restricted tree, the reference
//! counting engine, plus a second brute-force oracle that never builds the
//! tree at all.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::chain::{StoppingPattern, WeakOrderChain};
use crate::counting::LevelCounts;

/// Resource limits for a simulation run.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SimConfig {
    /// Maximum number of simultaneously active chains.
    pub frontier_cap: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            frontier_cap: 100_000_000,
        }
    }
}

/// Simulation failures.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SimError {
    /// The active frontier outgrew the configured cap.
    FrontierCap { level: usize, cap: usize },
    /// The exhaustive oracle only runs up to 8 variables.
    OracleSize(usize),
}

impl fmt::Display for SimError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimError::FrontierCap { level, cap } => {
                write!(f, "active frontier at level {level} exceeds cap {cap}")
            }
            SimError::OracleSize(n) => {
                write!(f, "exhaustive oracle supports at most 8 variables, got {n}")
            }
        }
    }
}

/// Per-level tallies for levels `1..=n_max`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LeafTally {
    levels: Vec<LevelCounts>,
}

impl LeafTally {
    fn from_raw(a: Vec<usize>, delta: Vec<usize>) -> Self {
        let mut levels = Vec::with_capacity(a.len());
        let mut b = BigUint::zero();
        for (a_n, d_n) in a.into_iter().zip(delta) {
            b += BigUint::from(d_n);
            let a_n = BigUint::from(a_n);
            let w = &a_n + &b;
            levels.push(LevelCounts {
                a: a_n,
                delta: BigUint::from(d_n),
                b: b.clone(),
                w,
            });
        }
        LeafTally { levels }
    }

    pub fn n_max(&self) -> usize {
        self.levels.len()
    }

    /// Counts at level `n` (1-based).
    pub fn level(&self, n: usize) -> &LevelCounts {
        &self.levels[n - 1]
    }

    pub fn levels(&self) -> &[LevelCounts] {
        &self.levels
    }
}

/// Which leaves of a level to enumerate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LeafClass {
    /// Chains of the level avoiding the pattern.
    Active,
    /// Chains that first contain the pattern at this level.
    NewlyInactive,
}

struct Grower<'p> {
    pattern: &'p StoppingPattern,
    frontier: Vec<WeakOrderChain>,
    cap: usize,
}

impl<'p> Grower<'p> {
    fn new(pattern: &'p StoppingPattern, cfg: &SimConfig) -> Self {
        // level 1 has a single chain; pattern arity >= 2 keeps it active
        Grower {
            pattern,
            frontier: alloc::vec![WeakOrderChain::singleton()],
            cap: cfg.frontier_cap,
        }
    }

    /// Advances one level and returns the newly inactive chains.
    fn step(&mut self, level: usize) -> Result<Vec<WeakOrderChain>, SimError> {
        let mut next = Vec::new();
        let mut stopped = Vec::new();
        for chain in &self.frontier {
            for child in chain.children() {
                if child.contains_ending_at_last(self.pattern) {
                    stopped.push(child);
                } else {
                    if next.len() == self.cap {
                        return Err(SimError::FrontierCap {
                            level,
                            cap: self.cap,
                        });
                    }
                    next.push(child);
                }
            }
        }
        self.frontier = next;
        Ok(stopped)
    }
}

/// Grows the tree through level `n_max` and tallies leaves per level.
pub fn tally(
    pattern: &StoppingPattern,
    n_max: usize,
    cfg: &SimConfig,
) -> Result<LeafTally, SimError> {
    let mut a = Vec::with_capacity(n_max);
    let mut delta = Vec::with_capacity(n_max);
    if n_max == 0 {
        return Ok(LeafTally::from_raw(a, delta));
    }
    let mut grower = Grower::new(pattern, cfg);
    a.push(1);
    delta.push(0);
    for level in 2..=n_max {
        let stopped = grower.step(level)?;
        a.push(grower.frontier.len());
        delta.push(stopped.len());
    }
    Ok(LeafTally::from_raw(a, delta))
}

/// Enumerates one class of leaves at level `n`, in the deterministic order
/// induced by child order.
pub fn enumerate_leaves(
    pattern: &StoppingPattern,
    n: usize,
    which: LeafClass,
    cfg: &SimConfig,
) -> Result<Vec<WeakOrderChain>, SimError> {
    assert!(n >= 1, "levels start at 1");
    let mut grower = Grower::new(pattern, cfg);
    let mut stopped = Vec::new();
    for level in 2..=n {
        stopped = grower.step(level)?;
    }
    Ok(match which {
        LeafClass::Active => grower.frontier,
        LeafClass::NewlyInactive => stopped,
    })
}

// Exhaustive containment over all index combinations; deliberately shares no
// code with the incremental tree check.
fn brute_contains(values: &[u8], pattern: &StoppingPattern) -> bool {
    fn rec(values: &[u8], rels: &[crate::chain::Relation], start: usize, prev: Option<u8>) -> bool {
        if rels.is_empty() && prev.is_some() {
            return true;
        }
        for i in start..values.len() {
            let ok = match prev {
                None => true,
                Some(p) => match rels[0] {
                    crate::chain::Relation::Lt => p < values[i],
                    crate::chain::Relation::Le => p <= values[i],
                    crate::chain::Relation::Eq => p == values[i],
                },
            };
            if !ok {
                continue;
            }
            let rest = if prev.is_none() { rels } else { &rels[1..] };
            if rec(values, rest, i + 1, Some(values[i])) {
                return true;
            }
        }
        false
    }
    values.len() >= pattern.arity() && rec(values, pattern.relations(), 0, None)
}

/// Independent tally for small `n` (at most 8): enumerates every ordered
/// partition of every size directly as a value vector and classifies it by
/// full containment checks, without growing the tree.
pub fn oracle_tally(pattern: &StoppingPattern, n_max: usize) -> Result<LeafTally, SimError> {
    if n_max > 8 {
        return Err(SimError::OracleSize(n_max));
    }
    let mut a = alloc::vec![0usize; n_max];
    let mut delta = alloc::vec![0usize; n_max];
    for s in 1..=n_max {
        let mut values = alloc::vec![0u8; s];
        let mut cnt = alloc::vec![0u32; s + 1];
        gen_partitions(&mut values, 0, &mut cnt, 0, 0, &mut |vals| {
            if brute_contains(vals, pattern) {
                if !brute_contains(&vals[..s - 1], pattern) {
                    delta[s - 1] += 1;
                }
            } else {
                a[s - 1] += 1;
            }
        });
    }
    Ok(LeafTally::from_raw(a, delta))
}

// Enumerates all vectors over {1..s} whose image is exactly {1..max} for
// some max, i.e. the value vectors of ordered partitions. Unlike restricted
// growth strings, a fresh value may skip ahead as long as the gaps get
// filled later; `missing` counts the unused values below `max`.
fn gen_partitions(
    values: &mut [u8],
    pos: usize,
    cnt: &mut [u32],
    max: usize,
    missing: usize,
    visit: &mut impl FnMut(&[u8]),
) {
    let s = values.len();
    if pos == s {
        if missing == 0 {
            visit(values);
        }
        return;
    }
    for v in 1..=s {
        let (nmax, nmissing) = if v <= max {
            (max, missing - usize::from(cnt[v] == 0))
        } else {
            (v, missing + (v - max - 1))
        };
        if nmissing > s - pos - 1 {
            continue;
        }
        cnt[v] += 1;
        values[pos] = v as u8;
        gen_partitions(values, pos + 1, cnt, nmax, nmissing, visit);
        cnt[v] -= 1;
    }
}
