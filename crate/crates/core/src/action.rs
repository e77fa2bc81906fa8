//! Cyclic relabelings: `+s mod n` on plain labels, `+s mod m` on the first
//! coordinate of pair labels. Infinite points are fixed.

use alloc::format;
use alloc::vec::Vec;

use crate::{Block, Design, DesignError, Label, LabelTable, ParallelClass, Resolution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShiftTarget {
    /// Acts on `Plain(a)` with `a < modulus`.
    Plain { modulus: u32 },
    /// Acts on the first coordinate of `Pair(a, i)` with `a < modulus`.
    PairFirst { modulus: u32 },
}

impl ShiftTarget {
    pub fn modulus(self) -> u32 {
        match self {
            ShiftTarget::Plain { modulus } | ShiftTarget::PairFirst { modulus } => modulus,
        }
    }
}

/// A single group element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Shift {
    pub target: ShiftTarget,
    pub amount: u32,
}

impl Shift {
    pub fn new(target: ShiftTarget, amount: u32) -> Result<Shift, DesignError> {
        if target.modulus() == 0 {
            return Err(DesignError::param("shift modulus must be positive"));
        }
        Ok(Shift {
            target,
            amount: amount % target.modulus(),
        })
    }

    pub fn plain(modulus: u32, amount: u32) -> Result<Shift, DesignError> {
        Shift::new(ShiftTarget::Plain { modulus }, amount)
    }

    pub fn pair_first(modulus: u32, amount: u32) -> Result<Shift, DesignError> {
        Shift::new(ShiftTarget::PairFirst { modulus }, amount)
    }

    pub fn inverse(self) -> Shift {
        let m = self.target.modulus();
        Shift {
            target: self.target,
            amount: (m - self.amount % m) % m,
        }
    }

    pub fn apply(&self, label: Label) -> Result<Label, DesignError> {
        let m = self.target.modulus();
        let out_of_range = || {
            DesignError::param(format!("label {label} is not moved by a shift mod {m}"))
        };
        match (self.target, label) {
            (_, Label::Infinity(_)) => Ok(label),
            (ShiftTarget::Plain { .. }, Label::Plain(a)) if a < m => {
                Ok(Label::Plain((a + self.amount) % m))
            }
            (ShiftTarget::PairFirst { .. }, Label::Pair(a, i)) if a < m => {
                Ok(Label::Pair((a + self.amount) % m, i))
            }
            _ => Err(out_of_range()),
        }
    }

    /// Image label table and the id map from old to new ids.
    pub fn apply_table(&self, labels: &LabelTable) -> Result<(LabelTable, Vec<u32>), DesignError> {
        let images = labels
            .iter()
            .map(|l| self.apply(l))
            .collect::<Result<Vec<_>, _>>()?;
        let table = LabelTable::new(images.clone())?;
        let map = images.iter().map(|l| table.id_of(l).unwrap_or(u32::MAX)).collect();
        Ok((table, map))
    }
}

pub(crate) fn map_block(b: &Block, map: &[u32]) -> Block {
    let mut pts: Vec<u32> = b.points().iter().map(|&p| map[p as usize]).collect();
    pts.sort_unstable();
    Block::from_sorted(pts)
}

pub fn translate_design(d: &Design, shift: Shift) -> Result<Design, DesignError> {
    let (labels, map) = shift.apply_table(d.labels())?;
    let blocks = d.blocks().iter().map(|b| map_block(b, &map)).collect();
    Design::new(labels, d.t(), d.block_sizes().to_vec(), blocks)
}

pub fn translate_resolution(r: &Resolution, shift: Shift) -> Result<Resolution, DesignError> {
    let (labels, map) = shift.apply_table(&r.labels)?;
    let classes = r
        .classes
        .iter()
        .map(|c| ParallelClass::new(c.blocks.iter().map(|b| map_block(b, &map)).collect()))
        .collect();
    Ok(Resolution::new(labels, classes))
}

/// The cyclic group `{0, step, 2 step, ..}` mod `modulus` used to develop
/// base blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DevelopAction {
    pub target: ShiftTarget,
    pub step: u32,
}

impl DevelopAction {
    /// `+1 mod n` on plain labels.
    pub fn cyclic(n: u32) -> DevelopAction {
        DevelopAction {
            target: ShiftTarget::Plain { modulus: n },
            step: 1,
        }
    }

    /// `+step mod n` on plain labels.
    pub fn cyclic_step(n: u32, step: u32) -> DevelopAction {
        DevelopAction {
            target: ShiftTarget::Plain { modulus: n },
            step,
        }
    }

    /// `+1 mod m` on the first coordinate of pairs.
    pub fn pair_shift(m: u32) -> DevelopAction {
        DevelopAction {
            target: ShiftTarget::PairFirst { modulus: m },
            step: 1,
        }
    }

    pub fn order(&self) -> u32 {
        let m = self.target.modulus();
        m / gcd(m, self.step % m)
    }

    /// Group elements in order `0, step, 2 step, ..`.
    pub fn elements(&self) -> impl Iterator<Item = Shift> + '_ {
        let m = self.target.modulus();
        (0..self.order()).map(move |j| Shift {
            target: self.target,
            amount: (j * self.step) % m,
        })
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn shifts_and_inverse() {
        let s = Shift::plain(21, 5).unwrap();
        assert_eq!(s.apply(Label::Plain(18)).unwrap(), Label::Plain(2));
        assert_eq!(s.apply(Label::Infinity(0)).unwrap(), Label::Infinity(0));
        assert!(s.apply(Label::Plain(21)).is_err());
        assert!(s.apply(Label::Pair(1, 1)).is_err());
        let back = s.inverse();
        assert_eq!(back.apply(Label::Plain(2)).unwrap(), Label::Plain(18));
        let p = Shift::pair_first(7, 3).unwrap();
        assert_eq!(p.apply(Label::Pair(5, 2)).unwrap(), Label::Pair(1, 2));
    }

    #[test]
    fn develop_orders() {
        assert_eq!(DevelopAction::cyclic(21).order(), 21);
        assert_eq!(DevelopAction::cyclic_step(14, 2).order(), 7);
        let amounts: Vec<u32> = DevelopAction::cyclic_step(14, 2).elements().map(|s| s.amount).collect();
        assert_eq!(amounts, vec![0, 2, 4, 6, 8, 10, 12]);
    }

    #[test]
    fn translating_a_design_round_trips() {
        let labels = LabelTable::new(vec![Label::Plain(0), Label::Plain(1), Label::Plain(2), Label::Infinity(0)]).unwrap();
        let d = Design::new(labels, 2, vec![2], vec![Block::from_slice(&[0, 3]).unwrap()]).unwrap();
        let s = Shift::plain(3, 2).unwrap();
        let img = translate_design(&d, s).unwrap();
        assert_eq!(img.block_text(&img.blocks()[0]), "{2,inf_0}");
        assert_eq!(translate_design(&img, s.inverse()).unwrap(), d);
    }
}
