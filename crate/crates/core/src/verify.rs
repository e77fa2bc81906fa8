//! Exhaustive checkers for Steiner systems, GDDs and resolutions.
//!
//! A checker never fails; it returns a [`VerifyReport`] holding up to
//! `limit` concrete witnesses plus the total number of violations seen.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::combin::{binomial, for_each_subset, SubsetRanker};
use crate::design::PartitionDefect;
use crate::{Block, Design, Gdd, Label, LabelTable, Resolution};

pub const DEFAULT_WITNESS_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    /// A t-set lying in no block.
    Uncovered,
    /// A t-set lying in two or more blocks.
    Overcovered,
    /// A block meeting some group twice.
    GroupIntersection,
    /// Declared GDD type differs from the group sizes.
    TypeMismatch,
    /// A class repeats a point.
    RepeatedPoint,
    /// A class misses a point of the ground set.
    MissingPoint,
    /// A block occurs more often than in the target multiset.
    SurplusBlock,
    /// A block occurs less often than in the target multiset.
    MissingBlock,
    /// Two objects that should share a point set do not.
    LabelMismatch,
    /// A structural count (classes, groups, class size) is off.
    CountMismatch,
    /// A star certificate's common triple is wrong or absent.
    CommonTriple,
    /// The order is outside the admitted congruence class.
    Order,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationKind::Uncovered => "uncovered",
            ViolationKind::Overcovered => "overcovered",
            ViolationKind::GroupIntersection => "group-intersection",
            ViolationKind::TypeMismatch => "type-mismatch",
            ViolationKind::RepeatedPoint => "repeated-point",
            ViolationKind::MissingPoint => "missing-point",
            ViolationKind::SurplusBlock => "surplus-block",
            ViolationKind::MissingBlock => "missing-block",
            ViolationKind::LabelMismatch => "label-mismatch",
            ViolationKind::CountMismatch => "count-mismatch",
            ViolationKind::CommonTriple => "common-triple",
            ViolationKind::Order => "order",
        }
    }
}

/// One failure with the points that exhibit it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub witness: Vec<Label>,
    /// Where the failure was found, e.g. `class 3`.
    pub context: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind.as_str())?;
        if !self.witness.is_empty() {
            f.write_str(" {")?;
            for (i, l) in self.witness.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{l}")?;
            }
            f.write_str("}")?;
        }
        if !self.context.is_empty() {
            write!(f, " ({})", self.context)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    violations: Vec<Violation>,
    total: usize,
    limit: usize,
    pub observed_blocks: usize,
    pub expected_blocks: Option<usize>,
}

impl VerifyReport {
    /// A limit of zero is raised to one so that a failing report always
    /// carries a witness.
    pub fn new(limit: usize) -> VerifyReport {
        VerifyReport {
            violations: Vec::new(),
            total: 0,
            limit: limit.max(1),
            observed_blocks: 0,
            expected_blocks: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    /// Every violation seen, including those not stored.
    pub fn total_violations(&self) -> usize {
        self.total
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn is_full(&self) -> bool {
        self.violations.len() >= self.limit
    }

    pub fn push(&mut self, kind: ViolationKind, witness: Vec<Label>, context: impl Into<String>) {
        self.total += 1;
        if self.violations.len() < self.limit {
            self.violations.push(Violation {
                kind,
                witness,
                context: context.into(),
            });
        }
    }

    pub(crate) fn push_ids(
        &mut self,
        kind: ViolationKind,
        labels: &LabelTable,
        ids: &[u32],
        context: impl Into<String>,
    ) {
        let witness = ids.iter().filter_map(|&p| labels.get(p)).collect();
        self.push(kind, witness, context);
    }

    /// Moves the other report's violations into this one, prefixing their
    /// context.
    pub fn absorb(&mut self, other: VerifyReport, prefix: &str) {
        self.total += other.total;
        for mut v in other.violations {
            if self.violations.len() >= self.limit {
                break;
            }
            v.context = if v.context.is_empty() {
                String::from(prefix)
            } else {
                format!("{prefix}: {}", v.context)
            };
            self.violations.push(v);
        }
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "PASS ({} blocks)", self.observed_blocks)
        } else {
            write!(f, "FAIL ({} violations", self.total)?;
            if let Some(v) = self.first() {
                write!(f, ", first: {v}")?;
            }
            f.write_str(")")
        }
    }
}

pub fn verify_steiner(d: &Design) -> VerifyReport {
    verify_steiner_with(d, DEFAULT_WITNESS_LIMIT)
}

/// Checks that every `t`-subset of the points lies in exactly one block.
pub fn verify_steiner_with(d: &Design, limit: usize) -> VerifyReport {
    let mut report = VerifyReport::new(limit);
    report.observed_blocks = d.blocks().len();
    let (v, t) = (d.v(), d.t());
    if let Some(k) = d.uniform_block_size() {
        report.expected_blocks = crate::expected_block_count(t, k, v)
            .ok()
            .filter(|c| c.exact)
            .map(|c| c.count as usize);
    }
    let ranker = SubsetRanker::new(v, t);
    let mut counts = vec![0u8; ranker.count() as usize];
    for b in d.blocks() {
        for_each_subset(b.points(), t, &mut |s| {
            let c = &mut counts[ranker.rank(s)];
            *c = c.saturating_add(1);
        });
    }
    scan_counts(&mut report, d.labels(), &ranker, &counts, |_| true);
    report
}

fn scan_counts(
    report: &mut VerifyReport,
    labels: &LabelTable,
    ranker: &SubsetRanker,
    counts: &[u8],
    relevant: impl Fn(&[u32]) -> bool,
) {
    for (rank, &c) in counts.iter().enumerate() {
        if c == 1 {
            continue;
        }
        let subset = ranker.unrank(rank as u64);
        if !relevant(&subset) {
            continue;
        }
        let kind = if c == 0 {
            ViolationKind::Uncovered
        } else {
            ViolationKind::Overcovered
        };
        let context = if c > 1 { format!("{c} blocks") } else { String::new() };
        report.push_ids(kind, labels, &subset, context);
    }
}

/// Checks the group rule (no block meets a group twice), exact coverage of
/// every cross-group `t`-set, and the declared type.
pub fn verify_gdd(g: &Gdd) -> VerifyReport {
    verify_gdd_with(g, DEFAULT_WITNESS_LIMIT)
}

pub fn verify_gdd_with(g: &Gdd, limit: usize) -> VerifyReport {
    let d = g.design();
    let labels = d.labels();
    let mut report = VerifyReport::new(limit);
    report.observed_blocks = d.blocks().len();
    let actual = g.actual_type();
    if &actual != g.declared_type() {
        report.push(
            ViolationKind::TypeMismatch,
            Vec::new(),
            format!("declared {} but groups give {}", g.declared_type(), actual),
        );
    }
    let group_of = g.group_of();
    let (v, t) = (d.v(), d.t());
    let ranker = SubsetRanker::new(v, t);
    let mut counts = vec![0u8; ranker.count() as usize];
    let cross = |s: &[u32]| {
        let mut gs: Vec<u32> = s.iter().map(|&p| group_of[p as usize]).collect();
        gs.sort_unstable();
        gs.windows(2).all(|w| w[0] != w[1])
    };
    for b in d.blocks() {
        if !cross(b.points()) {
            report.push_ids(ViolationKind::GroupIntersection, labels, b.points(), "");
        }
        for_each_subset(b.points(), t, &mut |s| {
            if cross(s) {
                let c = &mut counts[ranker.rank(s)];
                *c = c.saturating_add(1);
            }
        });
    }
    if let Some(k) = d.uniform_block_size() {
        let sizes: Vec<u64> = g.groups().iter().map(|x| x.len() as u64).collect();
        let cross_sets = elementary_symmetric(&sizes, t);
        let per_block = binomial(k as u64, t as u64);
        if per_block > 0 && cross_sets % per_block == 0 {
            report.expected_blocks = Some((cross_sets / per_block) as usize);
        }
    }
    scan_counts(&mut report, labels, &ranker, &counts, cross);
    report
}

// e_t(sizes): number of t-sets meeting t distinct groups.
fn elementary_symmetric(sizes: &[u64], t: usize) -> u64 {
    let mut e = vec![0u64; t + 1];
    e[0] = 1;
    for &s in sizes {
        for j in (1..=t).rev() {
            e[j] += e[j - 1] * s;
        }
    }
    e[t]
}

/// Checks that every class of `r` partitions the target's points and that
/// the classes together use the target's block multiset exactly.
pub fn verify_resolution(target: &Design, r: &Resolution) -> VerifyReport {
    verify_resolution_with(target, r, DEFAULT_WITNESS_LIMIT)
}

pub fn verify_resolution_with(target: &Design, r: &Resolution, limit: usize) -> VerifyReport {
    let mut report = VerifyReport::new(limit);
    report.observed_blocks = r.block_count();
    report.expected_blocks = Some(target.blocks().len());
    let labels = target.labels();
    if labels != &r.labels {
        let witness = first_label_difference(labels, &r.labels).into_iter().collect();
        report.push(ViolationKind::LabelMismatch, witness, "resolution and target point sets differ");
        return report;
    }
    for (ci, class) in r.classes.iter().enumerate() {
        match class.partition_defect(target.v()) {
            None => {}
            Some(PartitionDefect::Repeated(p)) => {
                report.push_ids(ViolationKind::RepeatedPoint, labels, &[p], format!("class {ci}"))
            }
            Some(PartitionDefect::Missing(p)) => {
                report.push_ids(ViolationKind::MissingPoint, labels, &[p], format!("class {ci}"))
            }
            Some(PartitionDefect::OutOfRange(p)) => report.push(
                ViolationKind::LabelMismatch,
                Vec::new(),
                format!("class {ci}: point id {p} out of range"),
            ),
        }
    }
    compare_multisets(&mut report, labels, &r.block_multiset(), target.blocks());
    report
}

/// Reports the difference between two sorted block multisets.
pub(crate) fn compare_multisets(
    report: &mut VerifyReport,
    labels: &LabelTable,
    got: &[Block],
    want: &[Block],
) {
    let (mut i, mut j) = (0, 0);
    while i < got.len() || j < want.len() {
        let ord = match (got.get(i), want.get(j)) {
            (Some(a), Some(b)) => a.cmp(b),
            (Some(_), None) => Ordering::Less,
            (None, _) => Ordering::Greater,
        };
        match ord {
            Ordering::Equal => {
                i += 1;
                j += 1;
            }
            Ordering::Less => {
                report.push_ids(ViolationKind::SurplusBlock, labels, got[i].points(), "");
                i += 1;
            }
            Ordering::Greater => {
                report.push_ids(ViolationKind::MissingBlock, labels, want[j].points(), "");
                j += 1;
            }
        }
    }
}

fn first_label_difference(a: &LabelTable, b: &LabelTable) -> Option<Label> {
    a.iter()
        .find(|l| b.id_of(l).is_none())
        .or_else(|| b.iter().find(|l| a.id_of(l).is_none()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{GddType, ParallelClass};
    use alloc::vec;

    fn fano() -> Design {
        let lines = [[0, 1, 3], [1, 2, 4], [2, 3, 5], [3, 4, 6], [4, 5, 0], [5, 6, 1], [6, 0, 2]];
        let blocks = lines.iter().map(|l| Block::from_slice(l).unwrap()).collect();
        Design::new(LabelTable::plain(7), 2, vec![3], blocks).unwrap()
    }

    #[test]
    fn fano_is_steiner() {
        let r = verify_steiner(&fano());
        assert!(r.passed(), "{r}");
        assert_eq!(r.expected_blocks, Some(7));
    }

    #[test]
    fn deletion_leaves_uncovered_pair() {
        let d = fano();
        let mut blocks = d.blocks().to_vec();
        let gone = blocks.remove(0);
        let r = verify_steiner(&d.with_blocks(blocks).unwrap());
        assert!(!r.passed());
        assert_eq!(r.total_violations(), 3);
        let w = &r.violations()[0];
        assert_eq!(w.kind, ViolationKind::Uncovered);
        let ids: Vec<u32> = w.witness.iter().map(|l| d.labels().id_of(l).unwrap()).collect();
        assert!(ids.iter().all(|p| gone.contains(*p)));
    }

    #[test]
    fn witness_limit_is_respected() {
        let d = Design::new(LabelTable::plain(9), 2, vec![3], vec![]).unwrap();
        let r = verify_steiner_with(&d, 4);
        assert_eq!(r.violations().len(), 4);
        assert_eq!(r.total_violations(), 36);
    }

    #[test]
    fn gdd_checks_groups_and_type() {
        // TD(2,3,2) on {0,1,2} x Z2 as points 0..6; groups {0,1},{2,3},{4,5}
        let blocks = [[0, 2, 4], [0, 3, 5], [1, 2, 5], [1, 3, 4]];
        let blocks = blocks.iter().map(|b| Block::from_slice(b).unwrap()).collect();
        let d = Design::new(LabelTable::plain(6), 2, vec![3], blocks).unwrap();
        let groups = vec![vec![0, 1], vec![2, 3], vec![4, 5]];
        let g = Gdd::new(d.clone(), groups.clone()).unwrap();
        let r = verify_gdd(&g);
        assert!(r.passed(), "{r}");
        assert_eq!(r.expected_blocks, Some(4));

        let wrong = Gdd::with_declared_type(d.clone(), groups.clone(), GddType::uniform(3, 2)).unwrap();
        assert_eq!(verify_gdd(&wrong).first().unwrap().kind, ViolationKind::TypeMismatch);

        let mut bad = d.blocks().to_vec();
        bad[0] = Block::from_slice(&[0, 1, 4]).unwrap();
        let g = Gdd::new(d.with_blocks(bad).unwrap(), groups).unwrap();
        let r = verify_gdd(&g);
        assert!(r
            .violations()
            .iter()
            .any(|v| v.kind == ViolationKind::GroupIntersection));
    }

    #[test]
    fn resolution_of_ag23() {
        // affine plane of order 3 on Z3 x Z3, point (a,b) -> 3a + b
        let mut classes = Vec::new();
        for (da, db) in [(0u32, 1u32), (1, 0), (1, 1), (1, 2)] {
            let mut seen = [false; 9];
            let mut blocks = Vec::new();
            for start in 0..9u32 {
                if seen[start as usize] {
                    continue;
                }
                let (a, b) = (start / 3, start % 3);
                let line: Vec<u32> = (0..3)
                    .map(|s| ((a + s * da) % 3) * 3 + (b + s * db) % 3)
                    .collect();
                for &p in &line {
                    seen[p as usize] = true;
                }
                blocks.push(Block::new(line).unwrap());
            }
            classes.push(ParallelClass::new(blocks));
        }
        let all: Vec<Block> = classes.iter().flat_map(|c| c.blocks.clone()).collect();
        let d = Design::new(LabelTable::plain(9), 2, vec![3], all).unwrap();
        assert!(verify_steiner(&d).passed());
        let res = Resolution::new(d.labels().clone(), classes.clone());
        assert!(verify_resolution(&d, &res).passed());

        // swap one triple between two classes
        let mut swapped = classes;
        let a = swapped[0].blocks[0].clone();
        let b = swapped[1].blocks[0].clone();
        swapped[0].blocks[0] = b;
        swapped[1].blocks[0] = a;
        let r = verify_resolution(&d, &Resolution::new(d.labels().clone(), swapped));
        assert!(!r.passed());
        assert_eq!(r.first().unwrap().kind, ViolationKind::RepeatedPoint);
    }

    #[test]
    fn elementary_symmetric_counts_cross_sets() {
        assert_eq!(elementary_symmetric(&[3; 8], 3), 27 * 56);
        assert_eq!(elementary_symmetric(&[1; 6], 3), 20);
    }
}
