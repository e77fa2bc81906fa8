//! TD(3,4,3)s cut out by a linear congruence mod 3, and filling a master
//! design with them.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::verify::verify_gdd;
use crate::{Block, Design, DesignError, Gdd, Label, LabelTable};

/// Right-hand side of `c0 x + c1 y + c2 z + c3 u = m (mod 3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rhs {
    Const(u8),
    /// `m` depends on `x`, the first coordinate's level: `m = table[x]`.
    ByFirst([u8; 3]),
}

impl Rhs {
    fn at(self, x: u8) -> u8 {
        match self {
            Rhs::Const(m) => m % 3,
            Rhs::ByFirst(t) => t[x as usize] % 3,
        }
    }
}

/// An ordered base tuple with its congruence. Order matters: coefficient
/// `ci` belongs to `tuple[i]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CongruenceRule {
    pub tuple: [Label; 4],
    pub coeffs: [i8; 4],
    pub rhs: Rhs,
}

impl CongruenceRule {
    pub fn new(tuple: [Label; 4], coeffs: [i8; 4], rhs: Rhs) -> CongruenceRule {
        CongruenceRule { tuple, coeffs, rhs }
    }

    /// The 27 blocks `{(a0,x),(a1,y),(a2,z),(a3,u)}` satisfying the rule.
    pub fn blocks(&self) -> Result<Vec<[Label; 4]>, DesignError> {
        if self.coeffs.iter().any(|c| c.abs() != 1) {
            return Err(DesignError::param("congruence coefficients must be +1 or -1"));
        }
        let mut out = Vec::with_capacity(27);
        for code in 0..81u32 {
            let lv = [code / 27, code / 9 % 3, code / 3 % 3, code % 3].map(|x| x as u8);
            let sum: i32 = lv
                .iter()
                .zip(&self.coeffs)
                .map(|(&x, &c)| c as i32 * x as i32)
                .sum();
            if sum.rem_euclid(3) as u8 != self.rhs.at(lv[0]) {
                continue;
            }
            let mut block = [Label::Plain(0); 4];
            for i in 0..4 {
                block[i] = self.tuple[i].lift(lv[i] as u32)?;
            }
            out.push(block);
        }
        Ok(out)
    }

    pub fn same_set(&self, labels: &[Label]) -> bool {
        labels.len() == 4 && labels.iter().all(|l| self.tuple.contains(l))
    }
}

/// The TD(3,4,3) of a rule, with groups `{a_i} x Z_3`. The result is
/// verified; a failing rule is reported as a table error.
pub fn td343(rule: &CongruenceRule) -> Result<Gdd, DesignError> {
    let mut labels = Vec::with_capacity(12);
    let mut groups_l = Vec::with_capacity(4);
    for a in rule.tuple {
        let g: Vec<Label> = (0..3).map(|j| a.lift(j)).collect::<Result<_, _>>()?;
        labels.extend_from_slice(&g);
        groups_l.push(g);
    }
    let table = LabelTable::new(labels)?;
    let blocks: Vec<Vec<Label>> = rule.blocks()?.iter().map(|b| b.to_vec()).collect();
    let design = Design::from_labels(table.clone(), 3, vec![4], &blocks)?;
    let groups = groups_l
        .iter()
        .map(|g| g.iter().map(|l| table.require(l)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    let gdd = Gdd::new(design, groups)?;
    let report = verify_gdd(&gdd);
    if !report.passed() {
        return Err(DesignError::TableConsistency(format!(
            "rule on {:?} is not a TD(3,4,3): {report}",
            rule.tuple
        )));
    }
    Ok(gdd)
}

/// Explicit rules matched by block set, plus a default congruence for every
/// block no row names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleTable {
    pub rules: Vec<CongruenceRule>,
    pub default: Option<([i8; 4], Rhs)>,
}

/// The rule for one master block, given by its labels.
pub fn rule_for_block(block: &[Label], table: &RuleTable) -> Result<CongruenceRule, DesignError> {
    let mut hits = table.rules.iter().filter(|r| r.same_set(block));
    match (hits.next(), hits.next()) {
        (Some(r), None) => Ok(*r),
        (Some(_), Some(_)) => Err(DesignError::TableConsistency(format!(
            "block {block:?} matches more than one row"
        ))),
        (None, _) => {
            let (coeffs, rhs) = table.default.ok_or_else(|| {
                DesignError::TableConsistency(format!("block {block:?} matches no row"))
            })?;
            let mut sorted = block.to_vec();
            sorted.sort_unstable();
            let tuple: [Label; 4] = sorted.try_into().map_err(|_| {
                DesignError::param(format!("block {block:?} does not have four points"))
            })?;
            Ok(CongruenceRule::new(tuple, coeffs, rhs))
        }
    }
}

/// Blocks of the master design that no explicit row names, and rows that
/// name no master block. Both lists are empty for a consistent table.
pub fn audit_table(master: &Design, table: &RuleTable) -> (Vec<Block>, Vec<CongruenceRule>) {
    let mut unmatched = Vec::new();
    let mut used = vec![0usize; table.rules.len()];
    for b in master.blocks() {
        let labels = b.labels(master.labels());
        let hits: Vec<usize> = (0..table.rules.len())
            .filter(|&i| table.rules[i].same_set(&labels))
            .collect();
        if hits.is_empty() && table.default.is_none() {
            unmatched.push(b.clone());
        }
        for i in hits {
            used[i] += 1;
        }
    }
    let dangling = table
        .rules
        .iter()
        .zip(&used)
        .filter(|(_, &n)| n != 1)
        .map(|(r, _)| *r)
        .collect();
    (unmatched, dangling)
}

/// Replaces every master block `B` by a GDD on `B x Z_g` whose groups are
/// `{b} x Z_g`; the result has groups `{y} x Z_g` for every master point.
pub fn fill_gdd(
    master: &Design,
    g: u32,
    mut filler: impl FnMut(&[Label]) -> Result<Gdd, DesignError>,
) -> Result<Gdd, DesignError> {
    let mut all_labels = Vec::with_capacity(master.v() * g as usize);
    for l in master.labels().iter() {
        for j in 0..g {
            all_labels.push(l.lift(j)?);
        }
    }
    let table = LabelTable::new(all_labels)?;
    let mut blocks = Vec::new();
    let mut sizes = Vec::new();
    for b in master.blocks() {
        let labels = b.labels(master.labels());
        let piece = filler(&labels)?;
        let mut expected = Vec::with_capacity(labels.len() * g as usize);
        for l in &labels {
            for j in 0..g {
                expected.push(l.lift(j)?);
            }
        }
        if piece.design().labels() != &LabelTable::new(expected)? {
            return Err(DesignError::param(format!(
                "filler for block {} is not on the block's expanded points",
                master.block_text(b)
            )));
        }
        let report = verify_gdd(&piece);
        if !report.passed() {
            return Err(DesignError::TableConsistency(format!(
                "filler for block {}: {report}",
                master.block_text(b)
            )));
        }
        sizes.extend_from_slice(piece.design().block_sizes());
        let pl = piece.design().labels();
        for pb in piece.design().blocks() {
            let ids = pb
                .points()
                .iter()
                .map(|&p| table.require(&pl.label(p)))
                .collect::<Result<Vec<_>, _>>()?;
            blocks.push(Block::new(ids)?);
        }
    }
    if sizes.is_empty() {
        sizes.push(master.uniform_block_size().unwrap_or(1));
    }
    let design = Design::new(table.clone(), master.t(), sizes, blocks)?;
    let groups = master
        .labels()
        .iter()
        .map(|l| {
            (0..g)
                .map(|j| table.require(&l.lift(j)?))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Gdd::new(design, groups)
}

fn p(a: u32) -> Label {
    Label::Plain(a)
}

const ALL_PLUS: [i8; 4] = [1, 1, 1, 1];

/// Rows of the table turning SQS(8) on `Z_7 + {inf}` into the GDD of type
/// 3^8. Parameterised rows are expanded.
pub fn rdgdd24_table() -> RuleTable {
    let inf = Label::Infinity(0);
    let mut rules = Vec::new();
    for i in 0..7u32 {
        let tuple = [inf, p(i), p((1 + i) % 7), p((3 + i) % 7)];
        let rhs = if i < 2 { Rhs::ByFirst([0, 2, 1]) } else { Rhs::Const(0) };
        rules.push(CongruenceRule::new(tuple, ALL_PLUS, rhs));
    }
    for i in [0u32, 2, 6] {
        let tuple = [p(i), p((1 + i) % 7), p((2 + i) % 7), p((5 + i) % 7)];
        rules.push(CongruenceRule::new(tuple, [1, 1, -1, -1], Rhs::Const(0)));
    }
    for i in [1u32, 3] {
        let tuple = [p(i), p((1 + i) % 7), p((2 + i) % 7), p((5 + i) % 7)];
        rules.push(CongruenceRule::new(tuple, ALL_PLUS, Rhs::Const(0)));
    }
    rules.push(CongruenceRule::new(
        [p(4), p(5), p(6), p(2)],
        [1, 1, -1, 1],
        Rhs::ByFirst([0, 2, 1]),
    ));
    rules.push(CongruenceRule::new([p(5), p(6), p(0), p(3)], [1, 1, -1, 1], Rhs::Const(0)));
    RuleTable { rules, default: None }
}

/// Rows of the table turning SQS(14) into the GDD of type 3^14. Every
/// listed tuple names one block; all other blocks take the default.
pub fn rdgdd42_table() -> RuleTable {
    let t = |a: [u32; 4]| a.map(p);
    let mut rules = Vec::new();
    for a in [[4, 6, 8, 12], [2, 5, 7, 11], [8, 11, 12, 7]] {
        rules.push(CongruenceRule::new(t(a), ALL_PLUS, Rhs::ByFirst([1, 0, 2])));
    }
    for a in [[0, 2, 7, 9], [10, 12, 3, 5]] {
        rules.push(CongruenceRule::new(t(a), ALL_PLUS, Rhs::ByFirst([2, 1, 0])));
    }
    for a in [
        [8, 9, 12, 13],
        [4, 6, 11, 13],
        [11, 3, 7, 9],
        [4, 5, 11, 10],
        [6, 8, 5, 3],
        [10, 13, 9, 0],
        [12, 3, 7, 1],
        [9, 4, 6, 0],
        [12, 4, 9, 1],
    ] {
        rules.push(CongruenceRule::new(t(a), [1, 1, 1, -1], Rhs::Const(1)));
    }
    for a in [
        [13, 4, 10, 8],
        [12, 5, 8, 1],
        [12, 2, 11, 1],
        [12, 9, 11, 0],
        [6, 12, 5, 11],
        [12, 13, 3, 2],
        [4, 7, 9, 13],
        [6, 9, 5, 10],
    ] {
        rules.push(CongruenceRule::new(t(a), [1, 1, 1, -1], Rhs::Const(2)));
    }
    RuleTable {
        rules,
        default: Some((ALL_PLUS, Rhs::Const(0))),
    }
}
