//! Derived designs and derived GDDs.

use alloc::format;
use alloc::vec::Vec;

use crate::{Block, Design, DesignError, Gdd, Label};

pub fn derived_design(d: &Design, x: &Label) -> Result<Design, DesignError> {
    derived_design_at(d, d.labels().require(x)?)
}

/// Blocks through `x` with `x` removed, on the remaining points (ids are
/// compacted), with strength and block sizes lowered by one.
pub fn derived_design_at(d: &Design, x: u32) -> Result<Design, DesignError> {
    if x as usize >= d.v() {
        return Err(DesignError::param(format!("point id {x} out of range")));
    }
    let (labels, map) = d.labels().without(&[x]);
    let blocks = punctured(d, x, &map)?;
    Design::new(labels, d.t().saturating_sub(1), lowered(d.block_sizes()), blocks)
}

pub fn derived_gdd(g: &Gdd, x: &Label) -> Result<Gdd, DesignError> {
    derived_gdd_at(g, g.design().labels().require(x)?)
}

/// Removes the whole group of `x` and punctures the blocks through `x`; the
/// result has one group of that size fewer.
pub fn derived_gdd_at(g: &Gdd, x: u32) -> Result<Gdd, DesignError> {
    let d = g.design();
    let group = g
        .groups()
        .iter()
        .find(|grp| grp.contains(&x))
        .ok_or_else(|| DesignError::param(format!("point id {x} is in no group")))?;
    let (labels, map) = d.labels().without(group);
    let blocks = punctured(d, x, &map)?;
    let derived = Design::new(labels, d.t().saturating_sub(1), lowered(d.block_sizes()), blocks)?;
    let groups: Vec<Vec<u32>> = g
        .groups()
        .iter()
        .filter(|grp| !grp.contains(&x))
        .map(|grp| grp.iter().filter_map(|&p| map[p as usize]).collect())
        .collect();
    let ty = g.declared_type().without_one(group.len());
    Gdd::with_declared_type(derived, groups, ty)
}

fn punctured(d: &Design, x: u32, map: &[Option<u32>]) -> Result<Vec<Block>, DesignError> {
    d.blocks()
        .iter()
        .filter(|b| b.contains(x))
        .map(|b| {
            let ids = b
                .points()
                .iter()
                .filter(|&&p| p != x)
                .map(|&p| {
                    map[p as usize].ok_or_else(|| {
                        DesignError::param(format!(
                            "block {} meets the removed group twice",
                            d.block_text(b)
                        ))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Block::from_sorted(ids))
        })
        .collect()
}

fn lowered(sizes: &[usize]) -> Vec<usize> {
    let out: Vec<usize> = sizes.iter().filter(|&&k| k > 1).map(|k| k - 1).collect();
    if out.is_empty() {
        alloc::vec![1]
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{verify_steiner, LabelTable};
    use alloc::vec;

    #[test]
    fn derived_of_fano_lines() {
        let lines = [[0, 1, 3], [1, 2, 4], [2, 3, 5], [3, 4, 6], [4, 5, 0], [5, 6, 1], [6, 0, 2]];
        let blocks = lines.iter().map(|l| Block::from_slice(l).unwrap()).collect();
        let d = Design::new(LabelTable::plain(7), 2, vec![3], blocks).unwrap();
        let dd = derived_design(&d, &Label::Plain(0)).unwrap();
        assert_eq!(dd.v(), 6);
        assert_eq!(dd.t(), 1);
        assert_eq!(dd.blocks().len(), 3);
        assert!(verify_steiner(&dd).passed());
        assert!(derived_design(&d, &Label::Plain(9)).is_err());
    }
}
