//! Constructive correspondences: marked Dyck paths for the active chains of
//! the three order conditions, and the descent-preserving map between newly
//! inactive chains of the mixed condition and underlined permutations that
//! first contain 213 at their top entry.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::chain::WeakOrderChain;
use crate::counting::Family;
use crate::perm::{
    chain_to_underlined, underlined_to_chain, BlockConvention, Permutation,
    UnderlinedPermutation,
};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Step {
    U,
    D,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BijectionError {
    PathSyntax { position: usize, message: &'static str },
    /// A mark does not point at a site of the path.
    MarkNotASite(usize),
    /// The colored path carries a different site kind than the map expects.
    WrongSiteKind,
    /// Exhaustive path generation is limited to semilength 14.
    SizeLimit(usize),
    /// The input is not in the domain of the requested map.
    OutsideDomain(&'static str),
}

impl fmt::Display for BijectionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BijectionError::PathSyntax { position, message } => {
                write!(f, "path syntax error at byte {position}: {message}")
            }
            BijectionError::MarkNotASite(t) => write!(f, "step {t} is not a markable site"),
            BijectionError::WrongSiteKind => f.write_str("site kind does not match the map"),
            BijectionError::SizeLimit(n) => {
                write!(f, "path enumeration is limited to semilength 14, got {n}")
            }
            BijectionError::OutsideDomain(what) => write!(f, "input outside domain: {what}"),
        }
    }
}

/// A Dyck path: balanced U/D steps never dipping below the axis.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct DyckPath {
    steps: Vec<Step>,
}

impl Ord for Step {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        (*self as u8).cmp(&(*other as u8))
    }
}

impl PartialOrd for Step {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl DyckPath {
    pub fn new(steps: Vec<Step>) -> Result<Self, BijectionError> {
        let mut height: isize = 0;
        for (i, s) in steps.iter().enumerate() {
            height += if *s == Step::U { 1 } else { -1 };
            if height < 0 {
                return Err(BijectionError::PathSyntax {
                    position: i,
                    message: "path dips below the axis",
                });
            }
        }
        if height != 0 {
            return Err(BijectionError::PathSyntax {
                position: steps.len(),
                message: "unbalanced path",
            });
        }
        Ok(DyckPath { steps })
    }

    pub fn semilength(&self) -> usize {
        self.steps.len() / 2
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn parse(text: &str) -> Result<Self, BijectionError> {
        let mut steps = Vec::with_capacity(text.len());
        for (i, c) in text.char_indices() {
            steps.push(match c {
                'U' | 'u' => Step::U,
                'D' | 'd' => Step::D,
                _ => {
                    return Err(BijectionError::PathSyntax {
                        position: i,
                        message: "expected 'U' or 'D'",
                    })
                }
            });
        }
        Self::new(steps)
    }

    /// Visits every Dyck path of semilength `n` in lexicographic order
    /// (U before D).
    pub fn for_each(n: usize, mut visit: impl FnMut(&DyckPath)) {
        fn rec(path: &mut DyckPath, ups: usize, downs: usize, n: usize, f: &mut impl FnMut(&DyckPath)) {
            if ups + downs == 2 * n {
                f(path);
                return;
            }
            if ups < n {
                path.steps.push(Step::U);
                rec(path, ups + 1, downs, n, f);
                path.steps.pop();
            }
            if downs < ups {
                path.steps.push(Step::D);
                rec(path, ups, downs + 1, n, f);
                path.steps.pop();
            }
        }
        let mut path = DyckPath { steps: Vec::new() };
        rec(&mut path, 0, 0, n, &mut visit);
    }

    pub fn all(n: usize) -> Vec<DyckPath> {
        let mut out = Vec::new();
        Self::for_each(n, |p| out.push(p.clone()));
        out
    }

    /// 1-based indices of the steps completing a site occurrence, ascending.
    pub fn sites(&self, kind: SiteKind) -> Vec<usize> {
        let s = &self.steps;
        let at = |t: usize, pat: &[Step]| t >= pat.len() && &s[t - pat.len()..t] == pat;
        (1..=s.len())
            .filter(|&t| match kind {
                SiteKind::DownUp => at(t, &[Step::D, Step::U]),
                SiteKind::UpDownDown => at(t, &[Step::U, Step::D, Step::D]),
                SiteKind::DownUpOrTripleDown => {
                    at(t, &[Step::D, Step::U]) || at(t, &[Step::D, Step::D, Step::D])
                }
            })
            .collect()
    }

    /// The block boundary a marked site stands for: the number of D steps
    /// strictly before the completing step. For every site kind this is the
    /// column of the occurrence's distinguished D step, and it bridges
    /// positions `(i, i+1)` of the associated permutation.
    fn site_bridge(&self, t: usize) -> usize {
        self.steps[..t - 1].iter().filter(|s| **s == Step::D).count()
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(if *s == Step::U { "U" } else { "D" })?;
        }
        Ok(())
    }
}

/// Which step patterns of a path may be marked.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SiteKind {
    /// `DU` valleys and (overlapping) `DDD` runs; weights the strict
    /// condition `x < y < z`.
    DownUpOrTripleDown,
    /// `UDD` occurrences; weights the weak condition `x <= y <= z`.
    UpDownDown,
    /// `DU` valleys; weights the mixed condition `x <= y < z`.
    DownUp,
}

impl SiteKind {
    /// The stopping-condition family whose active chains the colored paths
    /// of this kind encode.
    pub fn family(&self) -> Family {
        match self {
            SiteKind::DownUpOrTripleDown => Family::Strict123,
            SiteKind::UpDownDown => Family::Weak123,
            SiteKind::DownUp => Family::Mixed123,
        }
    }
}

/// A Dyck path with a subset of its sites marked.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ColoredDyckPath {
    path: DyckPath,
    kind: SiteKind,
    marked: BTreeSet<usize>,
}

impl ColoredDyckPath {
    pub fn new(
        path: DyckPath,
        kind: SiteKind,
        marked: BTreeSet<usize>,
    ) -> Result<Self, BijectionError> {
        let sites = path.sites(kind);
        for &t in &marked {
            if !sites.contains(&t) {
                return Err(BijectionError::MarkNotASite(t));
            }
        }
        Ok(ColoredDyckPath { path, kind, marked })
    }

    pub fn path(&self) -> &DyckPath {
        &self.path
    }

    pub fn kind(&self) -> SiteKind {
        self.kind
    }

    pub fn marked(&self) -> &BTreeSet<usize> {
        &self.marked
    }

    /// Parses the `UUDUDD[4]` form (steps, then bracketed mark indices).
    pub fn parse(text: &str, kind: SiteKind) -> Result<Self, BijectionError> {
        let (steps_part, marks_part) = match text.find('[') {
            Some(open) => {
                let close = text.rfind(']').ok_or(BijectionError::PathSyntax {
                    position: text.len(),
                    message: "missing closing bracket",
                })?;
                (&text[..open], &text[open + 1..close])
            }
            None => (text, ""),
        };
        let path = DyckPath::parse(steps_part)?;
        let mut marked = BTreeSet::new();
        for part in marks_part.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let t: usize = part.parse().map_err(|_| BijectionError::PathSyntax {
                position: steps_part.len(),
                message: "marks must be step indices",
            })?;
            marked.insert(t);
        }
        Self::new(path, kind, marked)
    }
}

impl fmt::Display for ColoredDyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.path)?;
        for (i, t) in self.marked.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str("]")
    }
}

/// Sum of `2^(number of sites)` over all Dyck paths of semilength `n`,
/// i.e. the number of colored paths. Limited to `n <= 14`.
pub fn weighted_count(kind: SiteKind, n: usize) -> Result<BigUint, BijectionError> {
    if n > 14 {
        return Err(BijectionError::SizeLimit(n));
    }
    let mut total = BigUint::zero();
    DyckPath::for_each(n, |p| {
        total += BigUint::from(1u8) << p.sites(kind).len();
    });
    Ok(total)
}

/// The 321-avoiding permutation of a Dyck path: each peak `UD` puts a dot
/// at (column of the D, height of the peak); the remaining columns get the
/// unused values in increasing order.
pub fn path_to_avoider(path: &DyckPath) -> Permutation {
    let n = path.semilength();
    let mut entries = alloc::vec![0usize; n];
    let (mut ups, mut downs) = (0usize, 0usize);
    for (t, s) in path.steps().iter().enumerate() {
        match s {
            Step::U => ups += 1,
            Step::D => {
                downs += 1;
                if t > 0 && path.steps()[t - 1] == Step::U {
                    entries[downs - 1] = ups;
                }
            }
        }
    }
    let mut used = alloc::vec![false; n + 1];
    for &e in &entries {
        used[e] = true;
    }
    let mut free = (1..=n).filter(|&v| !used[v]);
    for e in entries.iter_mut() {
        if *e == 0 {
            *e = free.next().expect("enough unused values");
        }
    }
    Permutation::new(entries).expect("dot construction yields a permutation")
}

/// Inverse of [`path_to_avoider`]; errors when the permutation contains a
/// 321 pattern.
pub fn avoider_to_path(perm: &Permutation) -> Result<DyckPath, BijectionError> {
    let mut steps = Vec::with_capacity(2 * perm.len());
    let mut height = 0usize;
    for &v in perm.entries() {
        while height < v {
            steps.push(Step::U);
            height += 1;
        }
        steps.push(Step::D);
    }
    let path = DyckPath::new(steps).expect("left-to-right maxima profile is a Dyck path");
    if &path_to_avoider(&path) == perm {
        Ok(path)
    } else {
        Err(BijectionError::OutsideDomain(
            "permutation contains a 321 pattern",
        ))
    }
}

/// Decodes a colored path into an active chain of the condition matching
/// its site kind: the path gives the permutation, marks become block
/// boundaries, and a final complement (strict/weak kinds) or reversal
/// (valley kind) orients the result.
pub fn chain_from_colored(cp: &ColoredDyckPath) -> Result<WeakOrderChain, BijectionError> {
    let perm = path_to_avoider(&cp.path);
    let bridges: BTreeSet<usize> = cp.marked.iter().map(|&t| cp.path.site_bridge(t)).collect();
    debug_assert_eq!(bridges.len(), cp.marked.len(), "marks map to distinct boundaries");
    let up = UnderlinedPermutation::new(perm, bridges).expect("boundaries are interior");
    let oriented = match cp.kind {
        SiteKind::DownUp => up.reverse(),
        _ => up.complement(),
    };
    let chain = underlined_to_chain(&oriented);
    debug_assert!(
        !chain.contains(&cp.kind.family().pattern()),
        "decoded chain must be active"
    );
    Ok(chain)
}

/// Encodes an active chain of the condition matching `kind` as a colored
/// path; errors when the chain is not in the image.
pub fn colored_from_chain(
    chain: &WeakOrderChain,
    kind: SiteKind,
) -> Result<ColoredDyckPath, BijectionError> {
    if chain.contains(&kind.family().pattern()) {
        return Err(BijectionError::OutsideDomain("chain is not active"));
    }
    let convention = match kind {
        SiteKind::UpDownDown => BlockConvention::MinFirst,
        _ => BlockConvention::Decreasing,
    };
    let up = chain_to_underlined(chain, convention);
    let oriented = match kind {
        SiteKind::DownUp => up.reverse(),
        _ => up.complement(),
    };
    let path = avoider_to_path(oriented.perm())?;
    let sites = path.sites(kind);
    let mut marked = BTreeSet::new();
    for &b in oriented.bridges() {
        let t = sites
            .iter()
            .copied()
            .find(|&t| path.site_bridge(t) == b)
            .ok_or(BijectionError::OutsideDomain(
                "a block boundary has no site on the path",
            ))?;
        marked.insert(t);
    }
    ColoredDyckPath::new(path, kind, marked)
}

// 0-based positions of right-to-left maxima, ascending.
fn rtl_max_positions(entries: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut best = 0;
    for i in (0..entries.len()).rev() {
        if entries[i] > best {
            best = entries[i];
            out.push(i);
        }
    }
    out.reverse();
    out
}

// Rebuilds the unique permutation with the given right-to-left maxima (kept
// in place) avoiding 213 (`avoid213 = true`) or 123 (`false`). The gaps
// between maxima are filled greedily with the largest available values below
// the bounding maximum: right to left and increasing within a gap for 213,
// left to right and decreasing for 123. `None` when no values fit.
fn rebuild_with_rtl_maxima(entries: &[usize], avoid213: bool) -> Option<Vec<usize>> {
    let n = entries.len();
    let maxima = rtl_max_positions(entries);
    let mut is_max = alloc::vec![false; n];
    for &i in &maxima {
        is_max[i] = true;
    }
    let mut out = alloc::vec![0usize; n];
    let mut pool: BTreeSet<usize> = BTreeSet::new();
    for i in 0..n {
        if is_max[i] {
            out[i] = entries[i];
        } else {
            pool.insert(entries[i]);
        }
    }
    // gaps (start, end exclusive, bound): the last position is a maximum,
    // so every gap has a bounding maximum to its right
    let mut gaps = Vec::new();
    let mut i = 0;
    while i < n {
        if is_max[i] {
            i += 1;
            continue;
        }
        let start = i;
        while !is_max[i] {
            i += 1;
        }
        gaps.push((start, i, entries[i]));
    }
    if avoid213 {
        gaps.reverse();
    }
    for (start, end, bound) in gaps {
        let take: Vec<usize> = pool.range(..bound).rev().take(end - start).copied().collect();
        if take.len() < end - start {
            return None;
        }
        for &v in &take {
            pool.remove(&v);
        }
        // `take` is descending; 213-avoidance wants ascending gap entries
        for (k, slot) in (start..end).enumerate() {
            out[slot] = if avoid213 { take[take.len() - 1 - k] } else { take[k] };
        }
    }
    Some(out)
}

// Shared bridge bookkeeping for deleting/reinserting the top entry at
// 1-based position p.
fn bridges_after_removal(bridges: &BTreeSet<usize>, p: usize) -> BTreeSet<usize> {
    bridges
        .iter()
        .filter_map(|&j| {
            if j + 1 < p {
                Some(j)
            } else if j > p {
                Some(j - 1)
            } else {
                None
            }
        })
        .collect()
}

fn bridges_after_insertion(bridges: &BTreeSet<usize>, p: usize) -> BTreeSet<usize> {
    bridges
        .iter()
        .map(|&j| if j + 1 < p { j } else { j + 1 })
        .collect()
}

fn pattern_213() -> Permutation {
    Permutation::new(alloc::vec![2, 1, 3]).expect("valid pattern")
}

/// Maps a chain that first contains the mixed condition `x <= y < z` at its
/// top variable to an underlined permutation that first contains 213 at its
/// top entry, preserving size and block boundaries.
pub fn marked_perm_from_new_inactive(
    chain: &WeakOrderChain,
) -> Result<UnderlinedPermutation, BijectionError> {
    let pat = Family::Mixed123.pattern();
    let newly = chain.contains(&pat)
        && chain.remove_last().map_or(false, |parent| !parent.contains(&pat));
    if !newly {
        return Err(BijectionError::OutsideDomain(
            "chain does not first contain the mixed condition at its top variable",
        ));
    }
    let up = chain_to_underlined(chain, BlockConvention::Decreasing);
    let n = up.len();
    let mut entries = up.perm().entries().to_vec();
    let mut bridges = up.bridges().clone();
    let p = entries.iter().position(|&e| e == n).unwrap() + 1;
    let flag = bridges.remove(&p);
    // blocks are laid out decreasing, so n heads its run
    debug_assert!(p < 2 || !bridges.contains(&(p - 1)));

    if p >= 2 && entries[p - 2] == n - 1 {
        // the prefix before (n-1) n must be strictly decreasing and
        // boundary-free; rotate (n-1) to the front so that deleting n does
        // not lose the adjacency
        let prefix_ok = entries[..p.saturating_sub(2)].windows(2).all(|w| w[0] > w[1])
            && !bridges.iter().any(|&j| j + 2 <= p);
        if !prefix_ok {
            return Err(BijectionError::OutsideDomain(
                "unexpected shape before the top entry",
            ));
        }
        entries[..p - 1].rotate_right(1);
    }

    entries.remove(p - 1);
    let bridges = bridges_after_removal(&bridges, p);
    let rebuilt = rebuild_with_rtl_maxima(&entries, true)
        .expect("every 123-avoider shares its right-to-left maxima with a 213-avoider");
    let mut out_entries = rebuilt;
    out_entries.insert(p - 1, n);
    let mut out_bridges = bridges_after_insertion(&bridges, p);
    if flag {
        out_bridges.insert(p);
    }

    let perm = Permutation::new(out_entries).expect("still a permutation");
    debug_assert!(perm.contains_pattern(&pattern_213()));
    debug_assert!(!perm.reduce().contains_pattern(&pattern_213()));
    let result = UnderlinedPermutation::new(perm, out_bridges).expect("interior boundaries");
    debug_assert!(result
        .bridges()
        .iter()
        .all(|&j| result.perm().entries()[j - 1] > result.perm().entries()[j]));
    Ok(result)
}

/// Inverse of [`marked_perm_from_new_inactive`].
pub fn new_inactive_from_marked_perm(
    up: &UnderlinedPermutation,
) -> Result<WeakOrderChain, BijectionError> {
    let n = up.len();
    let p213 = pattern_213();
    if !up.perm().contains_pattern(&p213) || up.perm().reduce().contains_pattern(&p213) {
        return Err(BijectionError::OutsideDomain(
            "permutation does not first contain 213 at its top entry",
        ));
    }
    let entries = up.perm().entries();
    if up.bridges().iter().any(|&j| entries[j - 1] < entries[j]) {
        return Err(BijectionError::OutsideDomain("boundary on an ascent"));
    }
    let mut entries = entries.to_vec();
    let mut bridges = up.bridges().clone();
    let p = entries.iter().position(|&e| e == n).unwrap() + 1;
    let flag = bridges.remove(&p);

    entries.remove(p - 1);
    let bridges = bridges_after_removal(&bridges, p);
    let rebuilt = rebuild_with_rtl_maxima(&entries, false).ok_or(
        BijectionError::OutsideDomain("no 123-avoider shares these right-to-left maxima"),
    )?;
    let mut rho = rebuilt;
    rho.insert(p - 1, n);
    let mut rho_bridges = bridges_after_insertion(&bridges, p);
    if flag {
        rho_bridges.insert(p);
    }

    // undo the prefix rotation when the output carries its mark: n-1 first,
    // then a strictly decreasing boundary-free stretch up to n
    if p >= 3
        && rho[0] == n - 1
        && rho[..p - 1].windows(2).all(|w| w[0] > w[1])
        && !rho_bridges.iter().any(|&j| j + 2 <= p)
    {
        rho[..p - 1].rotate_left(1);
    }

    let perm = Permutation::new(rho).expect("still a permutation");
    let result = UnderlinedPermutation::new(perm, rho_bridges).expect("interior boundaries");
    let chain = underlined_to_chain(&result);
    if chain_to_underlined(&chain, BlockConvention::Decreasing) != result {
        return Err(BijectionError::OutsideDomain(
            "blocks are not laid out decreasingly",
        ));
    }
    let pat = Family::Mixed123.pattern();
    let newly = chain.contains(&pat)
        && chain.remove_last().map_or(false, |parent| !parent.contains(&pat));
    if !newly {
        return Err(BijectionError::OutsideDomain(
            "reconstruction is not a newly stopped chain",
        ));
    }
    Ok(chain)
}
