//! Weak-ordering chains, stopping patterns, and containment.
//!
//! A chain is stored in value-normalized form: each variable `i` is mapped to
//! the 1-based index of its block, blocks being numbered in increasing value
//! order. Two chains are equal iff they describe the same ordered partition.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// One relation in a stopping condition.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Relation {
    /// strictly less (`<`)
    Lt,
    /// less or equal (`≤`)
    Le,
    /// equal (`=`)
    Eq,
}

impl Relation {
    fn holds(self, a: u8, b: u8) -> bool {
        match self {
            Relation::Lt => a < b,
            Relation::Le => a <= b,
            Relation::Eq => a == b,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Lt => f.write_str("<"),
            Relation::Le => f.write_str("<="),
            Relation::Eq => f.write_str("="),
        }
    }
}

/// A stopping condition: a relation chain `x_{i_1} r_1 x_{i_2} r_2 ...`
/// over variables with increasing indices `i_1 < i_2 < ... < i_m`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct StoppingPattern {
    relations: Vec<Relation>,
}

impl StoppingPattern {
    /// Builds a pattern from its relation chain. Arity is `relations.len() + 1`
    /// and must be at least 2.
    pub fn new(relations: Vec<Relation>) -> Result<Self, PatternError> {
        if relations.is_empty() {
            return Err(PatternError::TooShort);
        }
        Ok(StoppingPattern { relations })
    }

    /// The `k`-equal condition `x_{i_1} = ... = x_{i_k}`.
    pub fn k_equal(k: usize) -> Result<Self, PatternError> {
        if k < 2 {
            return Err(PatternError::TooShort);
        }
        Self::new(alloc::vec![Relation::Eq; k - 1])
    }

    /// Number of variables in the pattern (`m >= 2`).
    pub fn arity(&self) -> usize {
        self.relations.len() + 1
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }
}

/// Invalid stopping pattern.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PatternError {
    /// Patterns need arity at least 2.
    TooShort,
}

impl fmt::Display for PatternError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternError::TooShort => f.write_str("stopping pattern needs arity >= 2"),
        }
    }
}

/// A weak-ordering chain on variables `x_1..x_n`, i.e. an ordered partition
/// of `{1..n}`.
///
/// `values[i]` is the 1-based block index of variable `i + 1`; block 1 holds
/// the smallest (leftmost) tied group. Chains are capped at 255 variables.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeakOrderChain {
    values: Vec<u8>,
}

impl WeakOrderChain {
    /// The level-1 chain `x_1`.
    pub fn singleton() -> Self {
        WeakOrderChain {
            values: alloc::vec![1],
        }
    }

    /// Builds a chain from blocks listed in increasing value order.
    pub fn from_blocks(blocks: &[Vec<usize>]) -> Result<Self, ChainError> {
        let n: usize = blocks.iter().map(|b| b.len()).sum();
        if n == 0 || n > u8::MAX as usize {
            return Err(ChainError::BadSize(n));
        }
        let mut values = alloc::vec![0u8; n];
        for (bi, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(ChainError::EmptyBlock);
            }
            for &var in block {
                if var == 0 || var > n {
                    return Err(ChainError::BadVariable(var));
                }
                if values[var - 1] != 0 {
                    return Err(ChainError::DuplicateVariable(var));
                }
                values[var - 1] = (bi + 1) as u8;
            }
        }
        Ok(WeakOrderChain { values })
    }

    /// Builds a chain directly from per-variable block indices. The indices
    /// must use `1..=l` for some `l`, each at least once.
    pub fn from_values(values: Vec<u8>) -> Result<Self, ChainError> {
        if values.is_empty() {
            return Err(ChainError::BadSize(0));
        }
        let max = *values.iter().max().unwrap() as usize;
        let mut seen = alloc::vec![false; max + 1];
        for &v in &values {
            if v == 0 {
                return Err(ChainError::BadVariable(0));
            }
            seen[v as usize] = true;
        }
        if !seen[1..].iter().all(|&s| s) {
            return Err(ChainError::SkippedBlock);
        }
        Ok(WeakOrderChain { values })
    }

    /// Number of variables.
    pub fn num_vars(&self) -> usize {
        self.values.len()
    }

    /// Number of blocks.
    pub fn num_blocks(&self) -> usize {
        *self.values.iter().max().unwrap() as usize
    }

    /// 1-based block index of variable `var`.
    pub fn value(&self, var: usize) -> usize {
        self.values[var - 1] as usize
    }

    /// Blocks in increasing value order; variable indices ascending inside
    /// each block.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = alloc::vec![Vec::new(); self.num_blocks()];
        for (i, &v) in self.values.iter().enumerate() {
            blocks[v as usize - 1].push(i + 1);
        }
        blocks
    }

    /// All `2l + 1` chains obtained by inserting variable `n + 1`, in
    /// deterministic order: left to right by position, the gap before each
    /// block coming first, ending with the top gap.
    pub fn children(&self) -> Vec<WeakOrderChain> {
        let l = self.num_blocks();
        assert!(self.values.len() < u8::MAX as usize, "chain too long");
        let mut out = Vec::with_capacity(2 * l + 1);
        for pos in 0..=l {
            // singleton block inserted into gap `pos` (below block pos+1)
            let mut values: Vec<u8> = self
                .values
                .iter()
                .map(|&v| if v as usize > pos { v + 1 } else { v })
                .collect();
            values.push((pos + 1) as u8);
            out.push(WeakOrderChain { values });
            if pos < l {
                // new variable merged into block pos+1
                let mut values = self.values.clone();
                values.push((pos + 1) as u8);
                out.push(WeakOrderChain { values });
            }
        }
        out
    }

    /// Whether the chain contains the stopping pattern: some increasing index
    /// tuple `i_1 < ... < i_m` whose block values satisfy every relation.
    pub fn contains(&self, p: &StoppingPattern) -> bool {
        self.search(p.relations(), 0, 0, self.values.len())
    }

    /// Containment restricted to occurrences whose last variable is `x_n`
    /// (the most recently inserted one). Sound as an incremental check on a
    /// child whose parent already avoids the pattern.
    pub fn contains_ending_at_last(&self, p: &StoppingPattern) -> bool {
        let n = self.values.len();
        if n < p.arity() {
            return false;
        }
        self.search(p.relations(), 0, 0, n - 1)
    }

    // Picks the remaining variables of an occurrence from index range
    // `[start, limit)`; `depth` variables already chosen, the last with block
    // value encoded through `rels` progress. When `limit < n`, the final
    // variable is pinned to index `n - 1`.
    fn search(&self, rels: &[Relation], depth: usize, start: usize, limit: usize) -> bool {
        let m = rels.len() + 1;
        let pinned = limit < self.values.len();
        self.search_rec(rels, m, pinned, depth, start, limit, 0)
    }

    fn search_rec(
        &self,
        rels: &[Relation],
        m: usize,
        pinned: bool,
        depth: usize,
        start: usize,
        limit: usize,
        prev: u8,
    ) -> bool {
        if depth == m {
            return true;
        }
        if pinned && depth == m - 1 {
            let last = self.values[self.values.len() - 1];
            return rels[depth - 1].holds(prev, last);
        }
        for i in start..limit {
            let v = self.values[i];
            if depth > 0 && !rels[depth - 1].holds(prev, v) {
                continue;
            }
            if self.search_rec(rels, m, pinned, depth + 1, i + 1, limit, v) {
                return true;
            }
        }
        false
    }

    /// The chain induced on variables `{1..n-1}` by dropping the last
    /// variable (empty blocks collapse).
    pub fn remove_last(&self) -> Option<WeakOrderChain> {
        if self.values.len() <= 1 {
            return None;
        }
        let mut values = self.values[..self.values.len() - 1].to_vec();
        let dropped = self.values[self.values.len() - 1];
        if !values.contains(&dropped) {
            for v in values.iter_mut() {
                if *v > dropped {
                    *v -= 1;
                }
            }
        }
        Some(WeakOrderChain { values })
    }

    /// Renders the chain in the `x2<x4=x5<x1<x3` grammar.
    pub fn format(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        for (bi, block) in self.blocks().iter().enumerate() {
            for (vi, var) in block.iter().enumerate() {
                if bi > 0 || vi > 0 {
                    s.push(if vi == 0 { '<' } else { '=' });
                }
                let _ = write!(s, "x{var}");
            }
        }
        s
    }

    /// Parses either the chain grammar (`x3=x1<x2`) or the partition form
    /// (`2|54|1|3`, single-digit indices per character).
    pub fn parse(text: &str) -> Result<WeakOrderChain, ChainParseError> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(ChainParseError::at(0, "empty input"));
        }
        if trimmed.contains('|') || !trimmed.contains('x') {
            Self::parse_partition(trimmed)
        } else {
            Self::parse_grammar(trimmed)
        }
    }

    fn parse_grammar(text: &str) -> Result<WeakOrderChain, ChainParseError> {
        let bytes = text.as_bytes();
        let mut pos = 0usize;
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut current: Vec<usize> = Vec::new();
        loop {
            if pos >= bytes.len() || bytes[pos] != b'x' {
                return Err(ChainParseError::at(pos, "expected 'x'"));
            }
            pos += 1;
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos == start {
                return Err(ChainParseError::at(pos, "expected variable index"));
            }
            let var: usize = text[start..pos]
                .parse()
                .map_err(|_| ChainParseError::at(start, "index out of range"))?;
            if var == 0 {
                return Err(ChainParseError::at(start, "variable indices start at 1"));
            }
            current.push(var);
            if pos == bytes.len() {
                break;
            }
            match bytes[pos] {
                b'<' => {
                    blocks.push(core::mem::take(&mut current));
                    pos += 1;
                }
                b'=' => {
                    pos += 1;
                }
                _ => return Err(ChainParseError::at(pos, "expected '<', '=' or end")),
            }
        }
        blocks.push(current);
        Self::from_blocks(&blocks).map_err(|e| ChainParseError::invalid(text.len(), e))
    }

    fn parse_partition(text: &str) -> Result<WeakOrderChain, ChainParseError> {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut current: Vec<usize> = Vec::new();
        for (pos, ch) in text.char_indices() {
            match ch {
                '|' => {
                    if current.is_empty() {
                        return Err(ChainParseError::at(pos, "empty block"));
                    }
                    blocks.push(core::mem::take(&mut current));
                }
                '0' => return Err(ChainParseError::at(pos, "variable indices start at 1")),
                '1'..='9' => current.push(ch as usize - '0' as usize),
                _ => return Err(ChainParseError::at(pos, "expected digit or '|'")),
            }
        }
        if current.is_empty() {
            return Err(ChainParseError::at(text.len(), "empty block"));
        }
        blocks.push(current);
        Self::from_blocks(&blocks).map_err(|e| ChainParseError::invalid(text.len(), e))
    }
}

impl fmt::Display for WeakOrderChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

/// Structural error building a chain.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ChainError {
    BadSize(usize),
    EmptyBlock,
    BadVariable(usize),
    DuplicateVariable(usize),
    SkippedBlock,
}

impl fmt::Display for ChainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainError::BadSize(n) => write!(f, "chain must have 1..=255 variables, got {n}"),
            ChainError::EmptyBlock => f.write_str("blocks must be nonempty"),
            ChainError::BadVariable(v) => write!(f, "variable index {v} out of range"),
            ChainError::DuplicateVariable(v) => write!(f, "variable {v} appears twice"),
            ChainError::SkippedBlock => f.write_str("block values must be contiguous from 1"),
        }
    }
}

/// Parse error with byte position.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainParseError {
    pub position: usize,
    pub message: String,
}

impl ChainParseError {
    fn at(position: usize, message: &str) -> Self {
        ChainParseError {
            position,
            message: String::from(message),
        }
    }

    fn invalid(position: usize, err: ChainError) -> Self {
        use alloc::string::ToString;
        ChainParseError {
            position,
            message: err.to_string(),
        }
    }
}

impl fmt::Display for ChainParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(s: &str) -> WeakOrderChain {
        WeakOrderChain::parse(s).unwrap()
    }

    fn pat(rels: &[Relation]) -> StoppingPattern {
        StoppingPattern::new(rels.to_vec()).unwrap()
    }

    #[test]
    fn children_of_x2_lt_x1() {
        let c = chain("x2<x1");
        let kids: Vec<String> = c.children().iter().map(|c| c.format()).collect();
        assert_eq!(
            kids,
            ["x3<x2<x1", "x2=x3<x1", "x2<x3<x1", "x2<x1=x3", "x2<x1<x3"]
        );
    }

    #[test]
    fn children_counts() {
        assert_eq!(WeakOrderChain::singleton().children().len(), 3);
        let c = chain("x1<x2<x3");
        assert_eq!(c.children().len(), 7);
    }

    #[test]
    fn children_are_distinct_and_reduce_to_parent() {
        for s in ["x1", "x2<x1=x3", "x2<x4=x5<x1<x3"] {
            let c = chain(s);
            let kids = c.children();
            assert_eq!(kids.len(), 2 * c.num_blocks() + 1);
            for (i, a) in kids.iter().enumerate() {
                assert_eq!(a.remove_last().unwrap(), c);
                for b in &kids[i + 1..] {
                    assert_ne!(a, b);
                }
            }
        }
    }

    #[test]
    fn containment_examples() {
        assert!(chain("x1<x2=x3").contains(&pat(&[Relation::Le, Relation::Eq])));
        assert!(!chain("x3<x2<x1").contains(&pat(&[Relation::Lt, Relation::Lt])));
        assert!(chain("x2<x4=x5<x1<x3").contains(&pat(&[Relation::Eq])));
    }

    #[test]
    fn tie_containment_iff_fat_block() {
        let tie = pat(&[Relation::Eq]);
        assert!(!chain("x3<x2<x1").contains(&tie));
        assert!(chain("x1=x2").contains(&tie));
    }

    #[test]
    fn incremental_matches_full_on_children_of_avoiders() {
        let patterns = [
            pat(&[Relation::Eq]),
            pat(&[Relation::Lt, Relation::Lt]),
            pat(&[Relation::Le, Relation::Lt]),
            pat(&[Relation::Le, Relation::Eq]),
        ];
        for p in &patterns {
            let mut frontier = alloc::vec![WeakOrderChain::singleton()];
            for _ in 0..4 {
                let mut next = Vec::new();
                for c in &frontier {
                    for child in c.children() {
                        assert_eq!(child.contains(p), child.contains_ending_at_last(p));
                        if !child.contains(p) {
                            next.push(child);
                        }
                    }
                }
                frontier = next;
            }
        }
    }

    #[test]
    fn parse_format_round_trip() {
        for s in ["x1", "x2<x4=x5<x1<x3", "x1=x2=x3"] {
            assert_eq!(chain(s).format(), s);
        }
        assert_eq!(chain("x3=x1<x2").blocks(), [alloc::vec![1, 3], alloc::vec![2]]);
        assert_eq!(chain("2|54|1|3"), chain("x2<x4=x5<x1<x3"));
    }

    #[test]
    fn parse_errors_carry_position() {
        assert_eq!(WeakOrderChain::parse("x1<y2").unwrap_err().position, 3);
        assert!(WeakOrderChain::parse("x1<x1").is_err());
        assert!(WeakOrderChain::parse("x1<x3").is_err());
        assert!(WeakOrderChain::parse("").is_err());
    }
}
