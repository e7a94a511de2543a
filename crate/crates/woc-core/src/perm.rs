//! Permutations, underlined permutations, and conversions from chains.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::chain::WeakOrderChain;

/// A permutation of `{1..n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    entries: Vec<usize>,
}

impl Permutation {
    pub fn new(entries: Vec<usize>) -> Result<Self, PermError> {
        let n = entries.len();
        let mut seen = alloc::vec![false; n + 1];
        for &e in &entries {
            if e == 0 || e > n || seen[e] {
                return Err(PermError::NotABijection);
            }
            seen[e] = true;
        }
        Ok(Permutation { entries })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            entries: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// `sigma^c(i) = n + 1 - sigma(i)`.
    pub fn complement(&self) -> Permutation {
        let n = self.entries.len();
        Permutation {
            entries: self.entries.iter().map(|&e| n + 1 - e).collect(),
        }
    }

    /// `sigma^r(i) = sigma(n + 1 - i)`.
    pub fn reverse(&self) -> Permutation {
        let mut entries = self.entries.clone();
        entries.reverse();
        Permutation { entries }
    }

    /// 1-based positions `i` with `sigma(i) > sigma(i+1)`.
    pub fn descents(&self) -> Vec<usize> {
        (1..self.entries.len())
            .filter(|&i| self.entries[i - 1] > self.entries[i])
            .collect()
    }

    /// Whether some subsequence is order-isomorphic to `pat`.
    pub fn contains_pattern(&self, pat: &Permutation) -> bool {
        fn rec(entries: &[usize], pat: &[usize], chosen: &mut Vec<usize>, start: usize) -> bool {
            if chosen.len() == pat.len() {
                return true;
            }
            let k = chosen.len();
            'next: for i in start..entries.len() {
                for (j, &c) in chosen.iter().enumerate() {
                    if (pat[j] < pat[k]) != (entries[c] < entries[i]) {
                        continue 'next;
                    }
                }
                chosen.push(i);
                if rec(entries, pat, chosen, i + 1) {
                    return true;
                }
                chosen.pop();
            }
            false
        }
        pat.len() <= self.len() && rec(&self.entries, &pat.entries, &mut Vec::new(), 0)
    }

    /// The permutation on `{1..n-1}` obtained by deleting entry `n`.
    pub fn reduce(&self) -> Permutation {
        let n = self.entries.len();
        Permutation {
            entries: self.entries.iter().copied().filter(|&e| e != n).collect(),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 && self.entries.len() > 9 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PermError {
    NotABijection,
}

impl fmt::Display for PermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("entries are not a permutation of 1..n")
    }
}

/// Layout of a block inside an underlined permutation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BlockConvention {
    /// Block entries strictly decreasing.
    Decreasing,
    /// Smallest entry first, remaining entries strictly decreasing.
    MinFirst,
}

/// A permutation with *bridges*: positions `i` such that the entries at
/// `i` and `i + 1` belong to the same block of the underlying chain.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnderlinedPermutation {
    perm: Permutation,
    bridges: BTreeSet<usize>,
}

impl UnderlinedPermutation {
    pub fn new(perm: Permutation, bridges: BTreeSet<usize>) -> Result<Self, PermError> {
        if bridges.iter().any(|&b| b == 0 || b >= perm.len()) {
            return Err(PermError::NotABijection);
        }
        Ok(UnderlinedPermutation { perm, bridges })
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn bridges(&self) -> &BTreeSet<usize> {
        &self.bridges
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// Complement of the underlying permutation; bridges stay in place.
    pub fn complement(&self) -> UnderlinedPermutation {
        UnderlinedPermutation {
            perm: self.perm.complement(),
            bridges: self.bridges.clone(),
        }
    }

    /// Reverse; bridge `i` maps to `n - i`.
    pub fn reverse(&self) -> UnderlinedPermutation {
        let n = self.perm.len();
        UnderlinedPermutation {
            perm: self.perm.reverse(),
            bridges: self.bridges.iter().map(|&i| n - i).collect(),
        }
    }

    /// Maximal bridged runs, in position order.
    pub fn runs(&self) -> Vec<Vec<usize>> {
        let mut runs = Vec::new();
        let mut current = alloc::vec![self.perm.entries[0]];
        for i in 1..self.perm.len() {
            if !self.bridges.contains(&i) {
                runs.push(core::mem::take(&mut current));
            }
            current.push(self.perm.entries[i]);
        }
        runs.push(current);
        runs
    }
}

impl fmt::Display for UnderlinedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.perm.len() > 9;
        for (i, e) in self.perm.entries().iter().enumerate() {
            if i > 0 {
                f.write_str(if self.bridges.contains(&i) {
                    "_"
                } else if wide {
                    " "
                } else {
                    ""
                })?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Merges the blocks of a chain into an underlined permutation, laying each
/// block out per `convention`.
pub fn chain_to_underlined(
    chain: &WeakOrderChain,
    convention: BlockConvention,
) -> UnderlinedPermutation {
    let mut entries = Vec::with_capacity(chain.num_vars());
    let mut bridges = BTreeSet::new();
    for block in chain.blocks() {
        // blocks() yields ascending indices
        let start = entries.len();
        match convention {
            BlockConvention::Decreasing => entries.extend(block.iter().rev()),
            BlockConvention::MinFirst => {
                entries.push(block[0]);
                entries.extend(block[1..].iter().rev());
            }
        }
        for i in start + 1..entries.len() {
            bridges.insert(i);
        }
    }
    UnderlinedPermutation {
        perm: Permutation { entries },
        bridges,
    }
}

/// Inverse of [`chain_to_underlined`]: bridged runs become blocks, in
/// position order.
pub fn underlined_to_chain(up: &UnderlinedPermutation) -> WeakOrderChain {
    let blocks = up.runs();
    WeakOrderChain::from_blocks(&blocks).expect("underlined permutation is a valid partition")
}
