//! Coalition structures: players, coalitions as bitmasks, and partitions with
//! a bound on the largest block.
//!
//! Partitions are always kept canonical: blocks ordered by their smallest
//! member, members ascending inside a block. Empty blocks cannot be built.
//! Coalitions are `u64` masks, so at most [`MAX_PLAYERS`] players are supported.

use crate::error::{Error, Result};
use std::fmt;

pub const MAX_PLAYERS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlayerSet {
    labels: Vec<String>,
}

impl PlayerSet {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::PlayerSet("at least one player is required".into()));
        }
        if labels.len() > MAX_PLAYERS {
            return Err(Error::PlayerSet(format!(
                "{} players exceeds the supported maximum of {MAX_PLAYERS}",
                labels.len()
            )));
        }
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty()
                || label == "*"
                || label
                    .chars()
                    .any(|c| c == ',' || c == '|' || c.is_whitespace())
            {
                return Err(Error::PlayerSet(format!(
                    "invalid player label \"{label}\" (labels must be nonempty, not \"*\", and contain no ',', '|' or whitespace)"
                )));
            }
            if labels[..i].contains(label) {
                return Err(Error::PlayerSet(format!(
                    "duplicate player label \"{label}\""
                )));
            }
        }
        Ok(PlayerSet { labels })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn full(&self) -> Coalition {
        Coalition::full(self.len())
    }
}

/// A nonempty set of player indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coalition(u64);

impl Coalition {
    pub fn from_mask(mask: u64) -> Option<Self> {
        (mask != 0).then_some(Coalition(mask))
    }

    pub fn singleton(i: usize) -> Self {
        Coalition(1u64 << i)
    }

    pub fn full(n: usize) -> Self {
        Coalition(if n >= 64 { u64::MAX } else { (1u64 << n) - 1 })
    }

    pub fn from_members(members: impl IntoIterator<Item = usize>) -> Option<Self> {
        let mask = members.into_iter().fold(0u64, |m, i| m | (1u64 << i));
        Self::from_mask(mask)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 & (1u64 << i) != 0
    }

    pub fn smallest(self) -> usize {
        self.0.trailing_zeros() as usize
    }

    pub fn is_subset_of(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn members(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (0..64).filter(move |i| mask & (1u64 << i) != 0)
    }

    pub fn render(self, ps: &PlayerSet) -> String {
        self.members()
            .map(|i| ps.label(i).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// All nonempty subsets of `{0..n-1}`, ordered by mask.
    pub fn all_nonempty(n: usize) -> impl Iterator<Item = Coalition> {
        (1..=Coalition::full(n).0).map(Coalition)
    }
}

/// Parses `"A,B"` into a coalition over `ps`.
pub fn parse_coalition(s: &str, ps: &PlayerSet) -> Result<Coalition> {
    let mut mask = 0u64;
    for raw in s.split(',') {
        let label = raw.trim();
        if label.is_empty() {
            return Err(Error::PartitionParse(format!(
                "empty player label in coalition \"{s}\""
            )));
        }
        let i = ps
            .index_of(label)
            .ok_or_else(|| Error::PartitionParse(format!("unknown player \"{label}\"")))?;
        if mask & (1u64 << i) != 0 {
            return Err(Error::PartitionParse(format!(
                "duplicate player \"{label}\""
            )));
        }
        mask |= 1u64 << i;
    }
    Ok(Coalition(mask))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    blocks: Vec<Coalition>,
}

impl Partition {
    /// Builds a canonical partition, checking disjointness and cover of `{0..n-1}`.
    pub fn from_blocks(mut blocks: Vec<Coalition>, n: usize) -> Result<Self> {
        let mut seen = 0u64;
        for b in &blocks {
            if b.0 & seen != 0 {
                return Err(Error::PartitionParse("blocks overlap".into()));
            }
            seen |= b.0;
        }
        if seen != Coalition::full(n).0 {
            return Err(Error::PartitionParse(
                "blocks do not cover the player set".into(),
            ));
        }
        blocks.sort_by_key(|b| b.smallest());
        Ok(Partition { blocks })
    }

    /// Canonicalizes blocks assumed disjoint and covering.
    pub(crate) fn from_blocks_unchecked(mut blocks: Vec<Coalition>) -> Self {
        blocks.sort_by_key(|b| b.smallest());
        Partition { blocks }
    }

    pub fn singletons(n: usize) -> Self {
        Partition {
            blocks: (0..n).map(Coalition::singleton).collect(),
        }
    }

    pub fn grand(n: usize) -> Self {
        Partition {
            blocks: vec![Coalition::full(n)],
        }
    }

    pub fn blocks(&self) -> &[Coalition] {
        &self.blocks
    }

    pub fn max_block(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).max().unwrap_or(0)
    }

    pub fn block_of(&self, i: usize) -> Coalition {
        *self
            .blocks
            .iter()
            .find(|b| b.contains(i))
            .expect("player index outside partition")
    }

    /// True iff `g` is exactly one of the blocks.
    pub fn contains_coalition(&self, g: Coalition) -> bool {
        self.blocks.contains(&g)
    }

    pub fn render(&self, ps: &PlayerSet) -> String {
        self.blocks
            .iter()
            .map(|b| b.render(ps))
            .collect::<Vec<_>>()
            .join("|")
    }

    pub fn display<'a>(&'a self, ps: &'a PlayerSet) -> PartitionDisplay<'a> {
        PartitionDisplay { p: self, ps }
    }
}

pub struct PartitionDisplay<'a> {
    p: &'a Partition,
    ps: &'a PlayerSet,
}

impl fmt::Display for PartitionDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.p.render(self.ps))
    }
}

pub fn canonical_string(p: &Partition, ps: &PlayerSet) -> String {
    p.render(ps)
}

/// Parses `"A,B|C1|C2"`; block and member order may be arbitrary.
pub fn parse_partition(s: &str, ps: &PlayerSet) -> Result<Partition> {
    let mut seen = 0u64;
    let mut blocks = Vec::new();
    for block in s.split('|') {
        let mut mask = 0u64;
        for raw in block.split(',') {
            let label = raw.trim();
            if label.is_empty() {
                return Err(Error::PartitionParse(format!(
                    "empty player label in \"{s}\""
                )));
            }
            let i = ps
                .index_of(label)
                .ok_or_else(|| Error::PartitionParse(format!("unknown player \"{label}\"")))?;
            if seen & (1u64 << i) != 0 {
                return Err(Error::PartitionParse(format!(
                    "duplicate player \"{label}\""
                )));
            }
            seen |= 1u64 << i;
            mask |= 1u64 << i;
        }
        blocks.push(Coalition(mask));
    }
    if let Some(missing) = (0..ps.len()).find(|&i| seen & (1u64 << i) == 0) {
        return Err(Error::PartitionParse(format!(
            "missing player \"{}\"",
            ps.label(missing)
        )));
    }
    Ok(Partition::from_blocks_unchecked(blocks))
}

/// Every partition of `{0..n-1}` whose blocks have at most `k` members, in
/// lexicographic order of restricted-growth strings.
pub fn enumerate_partitions(n: usize, k: usize) -> Result<Vec<Partition>> {
    if n == 0 || n > MAX_PLAYERS || k < 1 || k > n {
        return Err(Error::InvalidBound { n, k });
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    let mut sizes: Vec<usize> = Vec::with_capacity(n);
    sizes.push(1);
    extend_rgs(1, n, k, &mut rgs, &mut sizes, &mut out);
    Ok(out)
}

fn extend_rgs(
    pos: usize,
    n: usize,
    k: usize,
    rgs: &mut [usize],
    sizes: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if pos == n {
        let mut blocks = vec![0u64; sizes.len()];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b] |= 1u64 << i;
        }
        // RGS block order already coincides with smallest-member order.
        out.push(Partition {
            blocks: blocks.into_iter().map(Coalition).collect(),
        });
        return;
    }
    for b in 0..=sizes.len() {
        if b == sizes.len() {
            sizes.push(1);
        } else if sizes[b] < k {
            sizes[b] += 1;
        } else {
            continue;
        }
        rgs[pos] = b;
        extend_rgs(pos + 1, n, k, rgs, sizes, out);
        if sizes[b] == 1 && b == sizes.len() - 1 {
            sizes.pop();
        } else {
            sizes[b] -= 1;
        }
    }
}

/// Restricted-growth string of a canonical partition.
pub fn rgs_of(p: &Partition, n: usize) -> Vec<usize> {
    (0..n)
        .map(|i| p.blocks.iter().position(|b| b.contains(i)).unwrap())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dinner_players() -> PlayerSet {
        PlayerSet::new(["A", "B", "C1", "C2"]).unwrap()
    }

    #[test]
    fn counts_for_four_players() {
        assert_eq!(enumerate_partitions(4, 1).unwrap().len(), 1);
        assert_eq!(
            enumerate_partitions(4, 1).unwrap()[0],
            Partition::singletons(4)
        );
        assert_eq!(enumerate_partitions(4, 2).unwrap().len(), 10);
        assert_eq!(enumerate_partitions(4, 3).unwrap().len(), 14);
        assert_eq!(enumerate_partitions(4, 4).unwrap().len(), 15);
    }

    #[test]
    fn invalid_bounds_are_rejected() {
        assert!(matches!(
            enumerate_partitions(4, 0),
            Err(Error::InvalidBound { .. })
        ));
        assert!(matches!(
            enumerate_partitions(4, 5),
            Err(Error::InvalidBound { .. })
        ));
    }

    #[test]
    fn enumeration_is_lexicographic_in_rgs() {
        let all = enumerate_partitions(5, 5).unwrap();
        let codes: Vec<Vec<usize>> = all.iter().map(|p| rgs_of(p, 5)).collect();
        assert!(codes.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn renders_canonical_strings() {
        let ps = dinner_players();
        let p = parse_partition("C1|A,B|C2", &ps).unwrap();
        assert_eq!(canonical_string(&p, &ps), "A,B|C1|C2");
        let two = PlayerSet::new(["1", "2"]).unwrap();
        assert_eq!(canonical_string(&Partition::singletons(2), &two), "1|2");
        let ab = PlayerSet::new(["A", "B"]).unwrap();
        assert_eq!(canonical_string(&Partition::grand(2), &ab), "A,B");
    }

    #[test]
    fn parse_errors_name_the_label() {
        let ps = PlayerSet::new(["A", "B", "C"]).unwrap();
        let err = parse_partition("A,B|A", &ps).unwrap_err().to_string();
        assert!(err.contains("duplicate") && err.contains("\"A\""), "{err}");
        let err = parse_partition("A,B", &ps).unwrap_err().to_string();
        assert!(err.contains("missing") && err.contains("\"C\""), "{err}");
        let err = parse_partition("A,B|Z|C", &ps).unwrap_err().to_string();
        assert!(err.contains("unknown") && err.contains("\"Z\""), "{err}");
    }

    #[test]
    fn block_queries() {
        let ps = dinner_players();
        let p = parse_partition("A,B|C1|C2", &ps).unwrap();
        assert_eq!(p.block_of(0).render(&ps), "A,B");
        assert_eq!(
            Partition::singletons(4).block_of(2),
            Coalition::singleton(2)
        );
        assert_eq!(Partition::grand(4).block_of(3), Coalition::full(4));

        let q = parse_partition("A,B|C1,C2", &ps).unwrap();
        assert!(q.contains_coalition(parse_coalition("C1,C2", &ps).unwrap()));
        let r = parse_partition("A,B,C1|C2", &ps).unwrap();
        assert!(!r.contains_coalition(parse_coalition("A,B", &ps).unwrap()));
        assert!(Partition::singletons(4).contains_coalition(parse_coalition("A", &ps).unwrap()));
    }

    #[test]
    fn player_set_validation() {
        assert!(PlayerSet::new(Vec::<String>::new()).is_err());
        assert!(PlayerSet::new(["A", "A"]).is_err());
        assert!(PlayerSet::new(["A,B"]).is_err());
        assert!(PlayerSet::new(["*"]).is_err());
    }
}
