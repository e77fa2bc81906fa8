//! Backtracking search for parallel classes and resolutions of small
//! designs (at most 128 points).
//!
//! `find_resolution` is an exact cover over the items "block `b` is placed"
//! and "class `c` covers point `p`". At every node it branches on the item
//! with the fewest remaining options. The blocks through point 0 are placed
//! in classes `0, 1, ..` before the search starts, which removes the
//! relabelling symmetry of the classes.

use alloc::vec;
use alloc::vec::Vec;

use crate::{derived_design_at, Design, Label, ParallelClass, Resolution};

/// Default node budget for [`find_resolution`].
pub const DEFAULT_BUDGET: u64 = 100_000_000;

const MAX_POINTS: usize = 128;

/// Lexicographically least parallel class of `d`, or `None` if there is none.
pub fn find_parallel_class(d: &Design) -> Option<ParallelClass> {
    let v = d.v();
    if v == 0 || v > MAX_POINTS {
        return None;
    }
    let masks: Vec<u128> = d.blocks().iter().map(|b| mask_of(b.points())).collect();
    let by_point = incidence(d);
    let full = full_mask(v);
    let mut chosen = Vec::new();
    if class_dfs(&masks, &by_point, full, 0, &mut chosen) {
        Some(ParallelClass::new(chosen.iter().map(|&b| d.blocks()[b].clone()).collect()))
    } else {
        None
    }
}

fn class_dfs(masks: &[u128], by_point: &[Vec<usize>], full: u128, cover: u128, chosen: &mut Vec<usize>) -> bool {
    if cover == full {
        return true;
    }
    let p = (!cover & full).trailing_zeros() as usize;
    for &b in &by_point[p] {
        if masks[b] & cover == 0 {
            chosen.push(b);
            if class_dfs(masks, by_point, full, cover | masks[b], chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResolveOutcome {
    Found(Resolution),
    /// The search space was exhausted: no resolution exists.
    NotResolvable,
    /// The node budget ran out first.
    Exhausted,
}

impl ResolveOutcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            ResolveOutcome::Found(_) => "resolvable",
            ResolveOutcome::NotResolvable => "not-resolvable",
            ResolveOutcome::Exhausted => "exhausted",
        }
    }

    pub fn resolution(&self) -> Option<&Resolution> {
        match self {
            ResolveOutcome::Found(r) => Some(r),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolveResult {
    pub outcome: ResolveOutcome,
    pub nodes: u64,
}

pub fn find_resolution(d: &Design, budget: u64) -> ResolveResult {
    let not = |nodes| ResolveResult {
        outcome: ResolveOutcome::NotResolvable,
        nodes,
    };
    let v = d.v();
    let nb = d.blocks().len();
    if v > MAX_POINTS {
        return ResolveResult {
            outcome: ResolveOutcome::Exhausted,
            nodes: 0,
        };
    }
    let k = match d.uniform_block_size() {
        Some(k) if k > 0 => k,
        _ => return not(0),
    };
    if v == 0 || v % k != 0 || (nb * k) % v != 0 {
        return not(0);
    }
    let per_class = v / k;
    let m = nb / per_class;
    let by_point = incidence(d);
    if by_point.iter().any(|bs| bs.len() != m) {
        return not(0);
    }
    let mut s = Search {
        masks: d.blocks().iter().map(|b| mask_of(b.points())).collect(),
        by_point,
        class_of: vec![None; nb],
        cover: vec![0; m],
        full: full_mask(v),
        placed: 0,
        nodes: 0,
        budget,
    };
    for c in 0..m {
        let b = s.by_point[0][c];
        s.place(b, c);
    }
    match s.run() {
        Some(true) => {
            let mut classes = vec![Vec::with_capacity(per_class); m];
            for (b, c) in s.class_of.iter().enumerate() {
                classes[c.expect("all blocks placed")].push(d.blocks()[b].clone());
            }
            let classes = classes.into_iter().map(ParallelClass::new).collect();
            ResolveResult {
                outcome: ResolveOutcome::Found(Resolution::new(d.labels().clone(), classes)),
                nodes: s.nodes,
            }
        }
        Some(false) => not(s.nodes),
        None => ResolveResult {
            outcome: ResolveOutcome::Exhausted,
            nodes: s.nodes,
        },
    }
}

struct Search {
    masks: Vec<u128>,
    by_point: Vec<Vec<usize>>,
    class_of: Vec<Option<usize>>,
    cover: Vec<u128>,
    full: u128,
    placed: usize,
    nodes: u64,
    budget: u64,
}

enum Pick {
    Cell(usize, usize),
    Block(usize),
}

impl Search {
    fn place(&mut self, b: usize, c: usize) {
        self.class_of[b] = Some(c);
        self.cover[c] |= self.masks[b];
        self.placed += 1;
    }

    fn unplace(&mut self, b: usize, c: usize) {
        self.class_of[b] = None;
        self.cover[c] &= !self.masks[b];
        self.placed -= 1;
    }

    fn cell_options(&self, c: usize, p: usize) -> impl Iterator<Item = usize> + '_ {
        let cover = self.cover[c];
        self.by_point[p]
            .iter()
            .copied()
            .filter(move |&b| self.class_of[b].is_none() && self.masks[b] & cover == 0)
    }

    fn block_options(&self, b: usize) -> impl Iterator<Item = usize> + '_ {
        let mask = self.masks[b];
        (0..self.cover.len()).filter(move |&c| self.cover[c] & mask == 0)
    }

    // Item with the fewest options; `None` if some item has none.
    fn pick(&self) -> Option<Pick> {
        let mut best: Option<(usize, Pick)> = None;
        for c in 0..self.cover.len() {
            let mut free = self.full & !self.cover[c];
            while free != 0 {
                let p = free.trailing_zeros() as usize;
                free &= free - 1;
                let n = self.cell_options(c, p).count();
                if n == 0 {
                    return None;
                }
                if best.as_ref().is_none_or(|(m, _)| n < *m) {
                    best = Some((n, Pick::Cell(c, p)));
                    if n == 1 {
                        return best.map(|(_, x)| x);
                    }
                }
            }
        }
        for b in 0..self.masks.len() {
            if self.class_of[b].is_some() {
                continue;
            }
            let n = self.block_options(b).count();
            if n == 0 {
                return None;
            }
            if best.as_ref().is_none_or(|(m, _)| n < *m) {
                best = Some((n, Pick::Block(b)));
                if n == 1 {
                    break;
                }
            }
        }
        best.map(|(_, x)| x)
    }

    // Some(true): solved; Some(false): no solution below; None: out of budget.
    fn run(&mut self) -> Option<bool> {
        if self.placed == self.masks.len() {
            return Some(true);
        }
        let options: Vec<(usize, usize)> = match self.pick() {
            None => return Some(false),
            Some(Pick::Cell(c, p)) => self.cell_options(c, p).map(|b| (b, c)).collect(),
            Some(Pick::Block(b)) => self.block_options(b).map(|c| (b, c)).collect(),
        };
        for (b, c) in options {
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            self.place(b, c);
            let r = self.run();
            if r != Some(false) {
                if r.is_none() {
                    self.unplace(b, c);
                }
                return r;
            }
            self.unplace(b, c);
        }
        Some(false)
    }
}

/// Resolvability of the derived design at every point, in point order.
pub fn confirm_rds(d: &Design, budget: u64) -> Vec<(Label, ResolveResult)> {
    (0..d.v() as u32)
        .map(|x| {
            let label = d.labels().label(x);
            let result = match derived_design_at(d, x) {
                Ok(dd) => find_resolution(&dd, budget),
                Err(_) => ResolveResult {
                    outcome: ResolveOutcome::NotResolvable,
                    nodes: 0,
                },
            };
            (label, result)
        })
        .collect()
}

fn mask_of(points: &[u32]) -> u128 {
    points.iter().fold(0u128, |m, &p| m | 1u128 << p)
}

fn full_mask(v: usize) -> u128 {
    if v >= 128 {
        u128::MAX
    } else {
        (1u128 << v) - 1
    }
}

fn incidence(d: &Design) -> Vec<Vec<usize>> {
    let mut by_point = vec![Vec::new(); d.v()];
    for (i, b) in d.blocks().iter().enumerate() {
        for &p in b.points() {
            by_point[p as usize].push(i);
        }
    }
    by_point
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::verify_resolution;
    use crate::{Block, LabelTable};

    fn design(v: u32, blocks: &[&[u32]]) -> Design {
        let blocks = blocks.iter().map(|b| Block::from_slice(b).unwrap()).collect();
        Design::new(LabelTable::plain(v), 2, vec![3], blocks).unwrap()
    }

    fn ag23() -> Design {
        // lines of Z3 x Z3, point (a,b) = 3a + b
        let mut lines = Vec::new();
        for a in 0..3 {
            lines.push(vec![3 * a, 3 * a + 1, 3 * a + 2]);
            lines.push(vec![a, a + 3, a + 6]);
        }
        for s in [1u32, 2] {
            for b in 0..3 {
                lines.push((0..3).map(|a| 3 * a + (b + s * a) % 3).collect());
            }
        }
        let refs: Vec<&[u32]> = lines.iter().map(|l| l.as_slice()).collect();
        design(9, &refs)
    }

    #[test]
    fn fano_has_no_class() {
        let d = design(7, &[&[0, 1, 3], &[1, 2, 4], &[2, 3, 5], &[3, 4, 6], &[4, 5, 0], &[5, 6, 1], &[6, 0, 2]]);
        assert!(find_parallel_class(&d).is_none());
        assert_eq!(find_resolution(&d, 1000).outcome, ResolveOutcome::NotResolvable);
    }

    #[test]
    fn affine_plane_resolves() {
        let d = ag23();
        let c = find_parallel_class(&d).unwrap();
        assert_eq!(c.blocks.len(), 3);
        assert_eq!(c.blocks[0].points(), &[0, 1, 2]);
        let r = find_resolution(&d, 10_000);
        let res = r.outcome.resolution().unwrap();
        assert_eq!(res.classes.len(), 4);
        assert!(verify_resolution(&d, res).passed());
        assert_eq!(find_resolution(&d, 10_000), r);
    }

    #[test]
    fn tiny_budget_is_exhausted_not_negative() {
        // two disjoint copies of the affine plane would need more work; a
        // budget of zero cannot even place a block
        let d = ag23();
        let r = find_resolution(&d, 0);
        assert_eq!(r.outcome, ResolveOutcome::Exhausted);
    }
}
