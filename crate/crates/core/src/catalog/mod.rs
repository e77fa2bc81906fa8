//! Explicit designs: base-block development, the congruence TD tables and
//! the listed derived resolutions of SQS(22).

mod congruence;

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::action::{translate_resolution, DevelopAction, Shift};
use crate::verify::verify_resolution;
use crate::{
    derived_design, verify_steiner, Block, Design, DesignError, Gdd, Label, LabelTable,
    ParallelClass, Resolution, Scheme,
};

pub use congruence::{
    audit_table, fill_gdd, rdgdd24_table, rdgdd42_table, rule_for_block, td343, CongruenceRule,
    Rhs, RuleTable,
};

/// Names accepted by [`by_name`].
pub const NAMES: [&str; 7] = ["sqs8", "sqs14", "sqs16", "sqs22", "sqs28", "rdgdd24", "rdgdd42"];

/// Base blocks with the cyclic action that develops them.
#[derive(Debug, Clone)]
pub struct BaseBlockSystem {
    pub labels: LabelTable,
    pub base_blocks: Vec<Vec<Label>>,
    pub action: DevelopAction,
    pub t: usize,
    pub block_sizes: Vec<usize>,
}

pub fn develop(sys: &BaseBlockSystem) -> Result<Design, DesignError> {
    develop_with_orbits(sys).map(|(d, _)| d)
}

/// Develops every base block and returns the orbit length of each. A block
/// reached from two different base blocks is an error naming the later one.
pub fn develop_with_orbits(sys: &BaseBlockSystem) -> Result<(Design, Vec<usize>), DesignError> {
    let mut all = BTreeSet::new();
    let mut blocks = Vec::new();
    let mut orbits = Vec::with_capacity(sys.base_blocks.len());
    for (bi, base) in sys.base_blocks.iter().enumerate() {
        let mut orbit = BTreeSet::new();
        for shift in sys.action.elements() {
            let ids = base
                .iter()
                .map(|&l| sys.labels.require(&shift.apply(l)?))
                .collect::<Result<Vec<_>, _>>()?;
            orbit.insert(Block::new(ids)?);
        }
        for b in &orbit {
            if !all.insert(b.clone()) {
                return Err(DesignError::DuplicateBlock {
                    block: sys.labels.render(b.points()),
                    base: bi,
                });
            }
        }
        orbits.push(orbit.len());
        blocks.extend(orbit);
    }
    let d = Design::new(sys.labels.clone(), sys.t, sys.block_sizes.clone(), blocks)?;
    Ok((d, orbits))
}

/// Parses whitespace-separated label lists, one block per line.
pub fn parse_block_lines(text: &str, scheme: Scheme) -> Result<Vec<Vec<Label>>, DesignError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.split_whitespace().map(|t| Label::parse(t, scheme)).collect())
        .collect()
}

fn plain_bases(rows: &[&[u32]]) -> Vec<Vec<Label>> {
    rows.iter()
        .map(|r| r.iter().map(|&a| Label::Plain(a)).collect())
        .collect()
}

fn with_infinity(n: u32) -> LabelTable {
    let mut l: Vec<Label> = (0..n).map(Label::Plain).collect();
    l.push(Label::Infinity(0));
    LabelTable::new(l).expect("distinct labels")
}

const INF: u32 = u32::MAX;

fn mixed_bases(rows: &[[u32; 4]]) -> Vec<Vec<Label>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|&a| if a == INF { Label::Infinity(0) } else { Label::Plain(a) })
                .collect()
        })
        .collect()
}

pub fn sqs8_system() -> BaseBlockSystem {
    BaseBlockSystem {
        labels: with_infinity(7),
        base_blocks: mixed_bases(&[[INF, 0, 1, 3], [0, 1, 2, 5]]),
        action: DevelopAction::cyclic(7),
        t: 3,
        block_sizes: vec![4],
    }
}

pub fn sqs14_system() -> BaseBlockSystem {
    BaseBlockSystem {
        labels: LabelTable::plain(14),
        base_blocks: plain_bases(&[
            &[0, 1, 2, 3],
            &[0, 3, 5, 9],
            &[0, 5, 6, 13],
            &[0, 3, 4, 13],
            &[1, 7, 11, 13],
            &[0, 2, 7, 9],
            &[0, 1, 6, 7],
            &[0, 3, 7, 10],
            &[0, 3, 6, 11],
            &[0, 2, 11, 13],
            &[0, 2, 4, 8],
            &[0, 1, 4, 5],
            &[1, 6, 10, 12],
        ]),
        action: DevelopAction::cyclic_step(14, 2),
        t: 3,
        block_sizes: vec![4],
    }
}

pub fn sqs22_system() -> BaseBlockSystem {
    BaseBlockSystem {
        labels: with_infinity(21),
        base_blocks: mixed_bases(&[
            [0, 1, 5, INF],
            [0, 1, 2, 4],
            [0, 2, 5, 13],
            [0, 1, 9, 18],
            [0, 1, 11, 16],
            [0, 3, 9, INF],
            [0, 2, 7, 9],
            [0, 3, 7, 16],
            [0, 1, 6, 10],
            [0, 2, 15, 18],
            [0, 2, 10, INF],
            [0, 1, 7, 12],
            [0, 1, 13, 17],
            [0, 2, 6, 12],
            [0, 3, 10, 14],
            [0, 7, 14, INF],
            [0, 1, 8, 14],
            [0, 1, 15, 19],
            [0, 2, 8, 11],
        ]),
        action: DevelopAction::cyclic(21),
        t: 3,
        block_sizes: vec![4],
    }
}

const SQS28_BASES: &str = include_str!("sqs28_bases.txt");

/// Points `a_i` of `Z_7 x Z_4`.
pub fn z7_z4() -> LabelTable {
    let mut l = Vec::with_capacity(28);
    for a in 0..7 {
        for i in 0..4 {
            l.push(Label::Pair(a, i));
        }
    }
    LabelTable::new(l).expect("distinct labels")
}

pub fn sqs28_system() -> BaseBlockSystem {
    BaseBlockSystem {
        labels: z7_z4(),
        base_blocks: parse_block_lines(SQS28_BASES, Scheme::Standard).expect("embedded base blocks"),
        action: DevelopAction::pair_shift(7),
        t: 3,
        block_sizes: vec![4],
    }
}

pub fn sqs8() -> Result<Design, DesignError> {
    develop(&sqs8_system())
}

pub fn sqs14() -> Result<Design, DesignError> {
    develop(&sqs14_system())
}

pub fn sqs16() -> Result<Design, DesignError> {
    Ok(crate::construction::boolean_sqs16()?.0)
}

pub fn sqs22() -> Result<Design, DesignError> {
    develop(&sqs22_system())
}

pub fn sqs28() -> Result<Design, DesignError> {
    develop(&sqs28_system())
}

/// The filled GDD of type 3^8 on `(Z_7 + {inf}) x Z_3`.
pub fn rdgdd24() -> Result<Gdd, DesignError> {
    let table = rdgdd24_table();
    fill_gdd(&sqs8()?, 3, |b| td343(&rule_for_block(b, &table)?))
}

/// The filled GDD of type 3^14 on `Z_14 x Z_3`.
pub fn rdgdd42() -> Result<Gdd, DesignError> {
    let table = rdgdd42_table();
    fill_gdd(&sqs14()?, 3, |b| td343(&rule_for_block(b, &table)?))
}

/// A catalog entry: either a plain design or a GDD.
#[derive(Debug, Clone)]
pub enum Entry {
    Design(Design),
    Gdd(Gdd),
}

impl Entry {
    pub fn design(&self) -> &Design {
        match self {
            Entry::Design(d) => d,
            Entry::Gdd(g) => g.design(),
        }
    }
}

pub fn by_name(name: &str) -> Result<Entry, DesignError> {
    Ok(match name {
        "sqs8" => Entry::Design(sqs8()?),
        "sqs14" => Entry::Design(sqs14()?),
        "sqs16" => Entry::Design(sqs16()?),
        "sqs22" => Entry::Design(sqs22()?),
        "sqs28" => Entry::Design(sqs28()?),
        "rdgdd24" => Entry::Gdd(rdgdd24()?),
        "rdgdd42" => Entry::Gdd(rdgdd42()?),
        other => return Err(DesignError::param(format!("unknown catalog design {other:?}"))),
    })
}

const SQS22_ROWS: &str = include_str!("sqs22_rows.txt");

/// Resolution over `derived` from rows of `|`-separated label lists.
pub fn resolution_from_rows(
    derived: &Design,
    rows: &[Vec<Vec<Label>>],
) -> Result<Resolution, DesignError> {
    let labels = derived.labels();
    let classes = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|b| {
                    let ids = b.iter().map(|l| labels.require(l)).collect::<Result<Vec<_>, _>>()?;
                    Block::new(ids)
                })
                .collect::<Result<Vec<_>, _>>()
                .map(ParallelClass::new)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Resolution::new(labels.clone(), classes))
}

/// The two listed derived resolutions of SQS(22), keyed by point.
pub fn sqs22_listed() -> Result<Vec<(Label, Vec<Vec<Vec<Label>>>)>, DesignError> {
    let mut out: Vec<(Label, Vec<Vec<Vec<Label>>>)> = Vec::new();
    for line in SQS22_ROWS.lines().map(str::trim).filter(|l| !l.is_empty()) {
        if let Some(p) = line.strip_prefix("POINT ") {
            out.push((Label::parse(p.trim(), Scheme::Standard)?, Vec::new()));
            continue;
        }
        let row = line
            .split('|')
            .map(|b| {
                b.split_whitespace()
                    .map(|t| Label::parse(t, Scheme::Standard))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.last_mut()
            .ok_or_else(|| DesignError::DataIntegrity(String::from("row before POINT")))?
            .1
            .push(row);
    }
    Ok(out)
}

/// SQS(22) and a verified derived resolution at each of its 22 points, in
/// point order. Points `1..20` come from the point-0 listing shifted.
pub fn sqs22_with_resolutions() -> Result<(Design, Vec<(Label, Resolution)>), DesignError> {
    let d = sqs22()?;
    let report = verify_steiner(&d);
    if !report.passed() {
        return Err(DesignError::DataIntegrity(format!("SQS(22): {report}")));
    }
    let listed = sqs22_listed()?;
    let mut at_zero = None;
    let mut out = Vec::with_capacity(22);
    for (point, rows) in &listed {
        let res = resolution_from_rows(&derived_design(&d, point)?, rows)?;
        if *point == Label::Plain(0) {
            at_zero = Some(res.clone());
        }
        out.push((*point, res));
    }
    let base = at_zero.ok_or_else(|| DesignError::DataIntegrity(String::from("no listing at 0")))?;
    for p in 1..21 {
        let res = translate_resolution(&base, Shift::plain(21, p)?)?;
        out.push((Label::Plain(p), res));
    }
    out.sort_by_key(|(p, _)| *p);
    for (point, res) in &out {
        let report = verify_resolution(&derived_design(&d, point)?, res);
        if !report.passed() {
            return Err(DesignError::DataIntegrity(format!("resolution at {point}: {report}")));
        }
    }
    Ok((d, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_lengths() {
        let (d, orbits) = develop_with_orbits(&sqs22_system()).unwrap();
        assert_eq!(d.blocks().len(), 385);
        assert_eq!(orbits[15], 7);
        assert_eq!(orbits.iter().filter(|&&o| o == 21).count(), 18);
        let (_, orbits) = develop_with_orbits(&sqs14_system()).unwrap();
        assert!(orbits.iter().all(|&o| o == 7));
    }

    #[test]
    fn overlapping_orbits_are_rejected() {
        let mut sys = sqs8_system();
        sys.base_blocks.push(mixed_bases(&[[1, 2, 3, 6]]).remove(0));
        match develop(&sys) {
            Err(DesignError::DuplicateBlock { base, .. }) => assert_eq!(base, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sqs28_has_117_bases() {
        let sys = sqs28_system();
        assert_eq!(sys.base_blocks.len(), 117);
        assert_eq!(develop(&sys).unwrap().blocks().len(), 819);
    }

    #[test]
    fn tables_match_their_masters() {
        let (unmatched, dangling) = audit_table(&sqs8().unwrap(), &rdgdd24_table());
        assert!(unmatched.is_empty() && dangling.is_empty());
        let (unmatched, dangling) = audit_table(&sqs14().unwrap(), &rdgdd42_table());
        assert!(unmatched.is_empty() && dangling.is_empty());
    }

    #[test]
    fn listed_first_rows() {
        let listed = sqs22_listed().unwrap();
        assert_eq!(listed.len(), 2);
        assert_eq!(listed[0].0, Label::Infinity(0));
        assert_eq!(listed[0].1.len(), 10);
        assert_eq!(listed[0].1[0][0], vec![Label::Plain(0), Label::Plain(1), Label::Plain(5)]);
        assert_eq!(listed[1].1[0][0], vec![Label::Plain(1), Label::Plain(5), Label::Infinity(0)]);
    }
}
