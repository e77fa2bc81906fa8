//! Blocks, designs, group divisible designs and resolutions.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::{DesignError, Label, LabelTable};

/// A strictly increasing list of point ids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Block(Vec<u32>);

impl Block {
    /// Sorts `points`; rejects empty blocks and repeated points.
    pub fn new(mut points: Vec<u32>) -> Result<Block, DesignError> {
        if points.is_empty() {
            return Err(DesignError::param("empty block"));
        }
        points.sort_unstable();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(DesignError::param(format!("point {} repeated in block", w[0])));
        }
        Ok(Block(points))
    }

    pub fn from_slice(points: &[u32]) -> Result<Block, DesignError> {
        Block::new(points.to_vec())
    }

    /// Wraps points the caller has already sorted and deduplicated.
    pub(crate) fn from_sorted(points: Vec<u32>) -> Block {
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        Block(points)
    }

    pub fn points(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, p: u32) -> bool {
        self.0.binary_search(&p).is_ok()
    }

    /// The block with `p` removed, or `None` if `p` is not in it.
    pub fn without(&self, p: u32) -> Option<Block> {
        let pos = self.0.binary_search(&p).ok()?;
        let mut rest = self.0.clone();
        rest.remove(pos);
        Some(Block(rest))
    }

    /// Applies an id map and restores canonical order.
    pub fn map(&self, f: impl Fn(u32) -> u32) -> Result<Block, DesignError> {
        Block::new(self.0.iter().map(|&p| f(p)).collect())
    }

    pub fn labels(&self, table: &LabelTable) -> Vec<Label> {
        self.0.iter().map(|&p| table.label(p)).collect()
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

/// A point set with a block multiset and declared strength and block sizes.
///
/// Blocks are kept sorted, so two designs with the same block multiset
/// compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Design {
    labels: LabelTable,
    t: usize,
    block_sizes: Vec<usize>,
    blocks: Vec<Block>,
}

impl Design {
    pub fn new(
        labels: LabelTable,
        t: usize,
        mut block_sizes: Vec<usize>,
        mut blocks: Vec<Block>,
    ) -> Result<Design, DesignError> {
        block_sizes.sort_unstable();
        block_sizes.dedup();
        if block_sizes.is_empty() {
            return Err(DesignError::param("no block sizes declared"));
        }
        let v = labels.len() as u32;
        for b in &blocks {
            if !block_sizes.contains(&b.len()) {
                return Err(DesignError::param(format!(
                    "block {} has size {} outside K = {:?}",
                    labels_text(&labels, b),
                    b.len(),
                    block_sizes
                )));
            }
            if let Some(&p) = b.points().last().filter(|&&p| p >= v) {
                return Err(DesignError::param(format!("point id {p} out of range (v = {v})")));
            }
        }
        blocks.sort_unstable();
        Ok(Design {
            labels,
            t,
            block_sizes,
            blocks,
        })
    }

    /// Builds blocks from label lists.
    pub fn from_labels(
        labels: LabelTable,
        t: usize,
        block_sizes: Vec<usize>,
        blocks: &[Vec<Label>],
    ) -> Result<Design, DesignError> {
        let blocks = blocks
            .iter()
            .map(|b| {
                let ids = b.iter().map(|l| labels.require(l)).collect::<Result<Vec<_>, _>>()?;
                Block::new(ids)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Design::new(labels, t, block_sizes, blocks)
    }

    pub fn v(&self) -> usize {
        self.labels.len()
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn block_sizes(&self) -> &[usize] {
        &self.block_sizes
    }

    /// The block size when `K` has a single element.
    pub fn uniform_block_size(&self) -> Option<usize> {
        match self.block_sizes.as_slice() {
            [k] => Some(*k),
            _ => None,
        }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn labels(&self) -> &LabelTable {
        &self.labels
    }

    pub fn into_blocks(self) -> Vec<Block> {
        self.blocks
    }

    /// Same points and parameters, different blocks.
    pub fn with_blocks(&self, blocks: Vec<Block>) -> Result<Design, DesignError> {
        Design::new(self.labels.clone(), self.t, self.block_sizes.clone(), blocks)
    }

    /// Number of blocks through each point.
    pub fn replication(&self) -> Vec<usize> {
        let mut r = alloc::vec![0usize; self.v()];
        for b in &self.blocks {
            for &p in b.points() {
                r[p as usize] += 1;
            }
        }
        r
    }

    pub fn block_text(&self, b: &Block) -> String {
        labels_text(&self.labels, b)
    }
}

pub(crate) fn labels_text(labels: &LabelTable, b: &Block) -> String {
    let mut s = String::from("{");
    for (i, &p) in b.points().iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        match labels.get(p) {
            Some(l) => s.push_str(&format!("{l}")),
            None => s.push_str(&format!("#{p}")),
        }
    }
    s.push('}');
    s
}

/// Multiset of group sizes, as `(size, multiplicity)` pairs in increasing
/// size order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GddType(pub Vec<(usize, usize)>);

impl GddType {
    pub fn from_sizes(sizes: impl IntoIterator<Item = usize>) -> GddType {
        let mut m = BTreeMap::new();
        for s in sizes {
            *m.entry(s).or_insert(0usize) += 1;
        }
        GddType(m.into_iter().collect())
    }

    /// `g^u`.
    pub fn uniform(g: usize, u: usize) -> GddType {
        GddType(alloc::vec![(g, u)])
    }

    /// The type after one group of size `g` is removed.
    pub fn without_one(&self, g: usize) -> GddType {
        let mut out = self.0.clone();
        if let Some(pos) = out.iter().position(|&(s, _)| s == g) {
            out[pos].1 -= 1;
            if out[pos].1 == 0 {
                out.remove(pos);
            }
        }
        GddType(out)
    }

    /// Parses `3^8` or `3^2 4^1`.
    pub fn parse(text: &str) -> Result<GddType, DesignError> {
        let mut parts = Vec::new();
        for tok in text.split_whitespace() {
            let (g, u) = tok
                .split_once('^')
                .ok_or_else(|| DesignError::param(format!("malformed type term {tok:?}")))?;
            let g: usize = g.parse().map_err(|_| DesignError::param(format!("bad group size {g:?}")))?;
            let u: usize = u.parse().map_err(|_| DesignError::param(format!("bad exponent {u:?}")))?;
            parts.push((g, u));
        }
        let mut m = BTreeMap::new();
        for (g, u) in parts {
            *m.entry(g).or_insert(0usize) += u;
        }
        m.retain(|_, u| *u > 0);
        Ok(GddType(m.into_iter().collect()))
    }
}

impl fmt::Display for GddType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (g, u)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}^{u}")?;
        }
        Ok(())
    }
}

/// A design with its points partitioned into groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gdd {
    design: Design,
    groups: Vec<Vec<u32>>,
    declared_type: GddType,
}

impl Gdd {
    /// The declared type is taken from the groups.
    pub fn new(design: Design, groups: Vec<Vec<u32>>) -> Result<Gdd, DesignError> {
        let ty = GddType::from_sizes(groups.iter().map(Vec::len));
        Gdd::with_declared_type(design, groups, ty)
    }

    /// Keeps a separately declared type (for instance from a file header);
    /// the verifier compares it with the actual group sizes.
    pub fn with_declared_type(
        design: Design,
        mut groups: Vec<Vec<u32>>,
        declared_type: GddType,
    ) -> Result<Gdd, DesignError> {
        let v = design.v();
        let mut seen = alloc::vec![false; v];
        for g in groups.iter_mut() {
            if g.is_empty() {
                return Err(DesignError::param("empty group"));
            }
            g.sort_unstable();
            for &p in g.iter() {
                let slot = seen
                    .get_mut(p as usize)
                    .ok_or_else(|| DesignError::param(format!("group point {p} out of range")))?;
                if *slot {
                    return Err(DesignError::param(format!(
                        "point {} lies in two groups",
                        design.labels().label(p)
                    )));
                }
                *slot = true;
            }
        }
        if let Some(p) = seen.iter().position(|s| !s) {
            return Err(DesignError::param(format!(
                "point {} lies in no group",
                design.labels().label(p as u32)
            )));
        }
        groups.sort_unstable();
        Ok(Gdd {
            design,
            groups,
            declared_type,
        })
    }

    pub fn design(&self) -> &Design {
        &self.design
    }

    pub fn groups(&self) -> &[Vec<u32>] {
        &self.groups
    }

    pub fn declared_type(&self) -> &GddType {
        &self.declared_type
    }

    pub fn actual_type(&self) -> GddType {
        GddType::from_sizes(self.groups.iter().map(Vec::len))
    }

    /// Group index of every point.
    pub fn group_of(&self) -> Vec<u32> {
        let mut out = alloc::vec![0u32; self.design.v()];
        for (gi, g) in self.groups.iter().enumerate() {
            for &p in g {
                out[p as usize] = gi as u32;
            }
        }
        out
    }

    pub fn into_design(self) -> Design {
        self.design
    }
}

/// A set of blocks meant to partition the ground set of a resolution.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ParallelClass {
    pub blocks: Vec<Block>,
}

impl ParallelClass {
    pub fn new(mut blocks: Vec<Block>) -> ParallelClass {
        blocks.sort_unstable();
        ParallelClass { blocks }
    }

    /// The point that appears twice, or the lowest point of `0..ground` that
    /// is missing; `None` when the class partitions `0..ground`.
    pub fn partition_defect(&self, ground: usize) -> Option<PartitionDefect> {
        let mut hit = alloc::vec![false; ground];
        for b in &self.blocks {
            for &p in b.points() {
                match hit.get_mut(p as usize) {
                    None => return Some(PartitionDefect::OutOfRange(p)),
                    Some(h) if *h => return Some(PartitionDefect::Repeated(p)),
                    Some(h) => *h = true,
                }
            }
        }
        hit.iter()
            .position(|h| !h)
            .map(|p| PartitionDefect::Missing(p as u32))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionDefect {
    Repeated(u32),
    Missing(u32),
    OutOfRange(u32),
}

/// Ordered parallel classes over a common, labelled ground set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    pub labels: LabelTable,
    pub classes: Vec<ParallelClass>,
}

impl Resolution {
    pub fn new(labels: LabelTable, classes: Vec<ParallelClass>) -> Resolution {
        Resolution { labels, classes }
    }

    pub fn block_count(&self) -> usize {
        self.classes.iter().map(|c| c.blocks.len()).sum()
    }

    /// All blocks of all classes, sorted.
    pub fn block_multiset(&self) -> Vec<Block> {
        let mut all: Vec<Block> = self
            .classes
            .iter()
            .flat_map(|c| c.blocks.iter().cloned())
            .collect();
        all.sort_unstable();
        all
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn block_is_canonical() {
        let b = Block::new(vec![5, 1, 3]).unwrap();
        assert_eq!(b.points(), &[1, 3, 5]);
        assert!(Block::new(vec![2, 2]).is_err());
        assert!(Block::new(vec![]).is_err());
        assert_eq!(b.without(3).unwrap().points(), &[1, 5]);
        assert!(b.without(4).is_none());
    }

    #[test]
    fn design_rejects_bad_blocks() {
        let labels = LabelTable::plain(4);
        let bad_size = Design::new(labels.clone(), 2, vec![3], vec![Block::new(vec![0, 1]).unwrap()]);
        assert!(bad_size.is_err());
        let out_of_range = Design::new(labels, 2, vec![2], vec![Block::new(vec![0, 4]).unwrap()]);
        assert!(out_of_range.is_err());
    }

    #[test]
    fn gdd_groups_must_partition() {
        let d = Design::new(LabelTable::plain(4), 2, vec![2], vec![]).unwrap();
        assert!(Gdd::new(d.clone(), vec![vec![0, 1], vec![2]]).is_err());
        assert!(Gdd::new(d.clone(), vec![vec![0, 1], vec![1, 2, 3]]).is_err());
        let g = Gdd::new(d, vec![vec![2, 3], vec![0, 1]]).unwrap();
        assert_eq!(g.actual_type(), GddType::uniform(2, 2));
        assert_eq!(g.group_of(), vec![0, 0, 1, 1]);
    }

    #[test]
    fn type_text() {
        let t = GddType::parse("3^8").unwrap();
        assert_eq!(t, GddType::uniform(3, 8));
        assert_eq!(alloc::format!("{}", t.without_one(3)), "3^7");
        assert_eq!(GddType::parse("4^1 3^2").unwrap().to_string_compat(), "3^2 4^1");
    }

    impl GddType {
        fn to_string_compat(&self) -> String {
            alloc::format!("{self}")
        }
    }

    #[test]
    fn partition_defects() {
        let c = ParallelClass::new(vec![Block::new(vec![0, 1]).unwrap(), Block::new(vec![1, 2]).unwrap()]);
        assert_eq!(c.partition_defect(4), Some(PartitionDefect::Repeated(1)));
        let c = ParallelClass::new(vec![Block::new(vec![0, 1]).unwrap()]);
        assert_eq!(c.partition_defect(3), Some(PartitionDefect::Missing(2)));
        assert_eq!(c.partition_defect(2), None);
    }
}
