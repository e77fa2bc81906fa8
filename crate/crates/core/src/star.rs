//! Certificates for RDSQS*(v): at every point `x` a special parallel class
//! `P'_x` of the derived design and a partition of the multiset
//! `M = 3 P'_x + 2 (B_x - P'_x)` into `v - 1` parallel classes, in groups of
//! three sharing a common triple `B_{x,k}` of `P'_x`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::action::{map_block, Shift};
use crate::design::PartitionDefect;
use crate::verify::{compare_multisets, ViolationKind};
use crate::{
    derived_design, verify_steiner, Block, Design, DesignError, Label, LabelTable,
    ParallelClass, VerifyReport, DEFAULT_WITNESS_LIMIT,
};

/// Three classes sharing a common triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarGroup {
    pub common: Block,
    pub classes: [ParallelClass; 3],
}

/// Data for one point. Block ids refer to `labels`, the point set of the
/// derived design at `point`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarPointCertificate {
    pub point: Label,
    pub labels: LabelTable,
    pub special: ParallelClass,
    pub groups: Vec<StarGroup>,
}

impl StarPointCertificate {
    pub fn classes(&self) -> impl Iterator<Item = &ParallelClass> + '_ {
        self.groups.iter().flat_map(|g| g.classes.iter())
    }

    /// The same certificate moved by `shift` to the image point.
    pub fn translate(&self, shift: Shift) -> Result<StarPointCertificate, DesignError> {
        let (labels, map) = shift.apply_table(&self.labels)?;
        let mv = |c: &ParallelClass| {
            ParallelClass::new(c.blocks.iter().map(|b| map_block(b, &map)).collect())
        };
        Ok(StarPointCertificate {
            point: shift.apply(self.point)?,
            labels,
            special: mv(&self.special),
            groups: self
                .groups
                .iter()
                .map(|g| StarGroup {
                    common: map_block(&g.common, &map),
                    classes: [mv(&g.classes[0]), mv(&g.classes[1]), mv(&g.classes[2])],
                })
                .collect(),
        })
    }

    /// For every group `k` and class `l`, the occurrence number of each block
    /// of the class: 0 for the common triple, otherwise 1 or 2 depending on
    /// whether an earlier class in `(k, l)` order already used the triple.
    pub fn occurrences(&self) -> Result<Vec<[Vec<u8>; 3]>, DesignError> {
        let mut seen: alloc::collections::BTreeMap<&Block, u8> = Default::default();
        let mut out = Vec::with_capacity(self.groups.len());
        for (k, g) in self.groups.iter().enumerate() {
            let mut per = [Vec::new(), Vec::new(), Vec::new()];
            for (l, class) in g.classes.iter().enumerate() {
                let mut commons = 0;
                for b in &class.blocks {
                    if *b == g.common {
                        commons += 1;
                        per[l].push(0);
                        continue;
                    }
                    let n = seen.entry(b).or_insert(0);
                    *n += 1;
                    if *n > 2 {
                        return Err(DesignError::DataIntegrity(format!(
                            "point {}: triple {} used a third time in group {k} class {l}",
                            self.point,
                            self.labels.render(b.points())
                        )));
                    }
                    per[l].push(*n);
                }
                if commons != 1 {
                    return Err(DesignError::DataIntegrity(format!(
                        "point {}: group {k} class {l} holds its common triple {commons} times",
                        self.point
                    )));
                }
            }
            out.push(per);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarCertificate {
    pub design: Design,
    pub points: Vec<StarPointCertificate>,
}

pub fn verify_star_point(d: &Design, c: &StarPointCertificate) -> VerifyReport {
    verify_star_point_with(d, c, DEFAULT_WITNESS_LIMIT)
}

/// Checks properties (1) to (3) for one point against the derived design.
pub fn verify_star_point_with(d: &Design, c: &StarPointCertificate, limit: usize) -> VerifyReport {
    let mut report = VerifyReport::new(limit);
    let derived = match derived_design(d, &c.point) {
        Ok(x) => x,
        Err(_) => {
            report.push(ViolationKind::LabelMismatch, vec![c.point], "point not in design");
            return report;
        }
    };
    let labels = derived.labels();
    if labels != &c.labels {
        report.push(ViolationKind::LabelMismatch, vec![c.point], "certificate point set differs");
        return report;
    }
    let ground = derived.v();
    let expected_groups = ground / 3;
    report.observed_blocks = c.classes().map(|x| x.blocks.len()).sum();
    report.expected_blocks = Some(ground * ground / 3);

    // (1) the special class
    check_partition(&mut report, labels, &c.special, ground, "special class");
    for b in &c.special.blocks {
        if derived.blocks().binary_search(b).is_err() {
            report.push_ids(ViolationKind::SurplusBlock, labels, b.points(), "special class");
        }
    }
    if c.special.blocks.len() != expected_groups {
        report.push(
            ViolationKind::CountMismatch,
            Vec::new(),
            format!("special class has {} triples, expected {expected_groups}", c.special.blocks.len()),
        );
    }

    // (3) groups and their common triples
    if c.groups.len() != expected_groups {
        report.push(
            ViolationKind::CountMismatch,
            Vec::new(),
            format!("{} groups, expected {expected_groups}", c.groups.len()),
        );
    }
    let mut commons: Vec<Block> = c.groups.iter().map(|g| g.common.clone()).collect();
    commons.sort_unstable();
    if commons != c.special.blocks {
        let odd = commons
            .iter()
            .find(|b| c.special.blocks.binary_search(b).is_err())
            .or_else(|| c.special.blocks.iter().find(|b| commons.binary_search(b).is_err()));
        let ids = odd.map(|b| b.points().to_vec()).unwrap_or_default();
        report.push_ids(ViolationKind::CommonTriple, labels, &ids, "common triples differ from the special class");
    }
    for (k, g) in c.groups.iter().enumerate() {
        for (l, class) in g.classes.iter().enumerate() {
            let ctx = format!("group {k} class {l}");
            check_partition(&mut report, labels, class, ground, &ctx);
            if class.blocks.binary_search(&g.common).is_err() {
                report.push_ids(ViolationKind::CommonTriple, labels, g.common.points(), ctx);
            }
        }
    }

    // (2) the multiset M
    let mut m = Vec::with_capacity(ground * ground / 3);
    for b in derived.blocks() {
        let times = if c.special.blocks.binary_search(b).is_ok() { 3 } else { 2 };
        for _ in 0..times {
            m.push(b.clone());
        }
    }
    m.sort_unstable();
    let mut got: Vec<Block> = c.classes().flat_map(|x| x.blocks.iter().cloned()).collect();
    got.sort_unstable();
    compare_multisets(&mut report, labels, &got, &m);
    report
}

fn check_partition(
    report: &mut VerifyReport,
    labels: &LabelTable,
    class: &ParallelClass,
    ground: usize,
    ctx: &str,
) {
    match class.partition_defect(ground) {
        None => {}
        Some(PartitionDefect::Repeated(p)) => {
            report.push_ids(ViolationKind::RepeatedPoint, labels, &[p], ctx)
        }
        Some(PartitionDefect::Missing(p)) => {
            report.push_ids(ViolationKind::MissingPoint, labels, &[p], ctx)
        }
        Some(PartitionDefect::OutOfRange(p)) => report.push(
            ViolationKind::LabelMismatch,
            Vec::new(),
            format!("{ctx}: point id {p} out of range"),
        ),
    }
}

/// Develops seed certificates by `+s mod m` on the first coordinate and
/// re-verifies every image. The result is in point order.
pub fn expand_certificate(
    design: Design,
    seeds: &[StarPointCertificate],
    modulus: u32,
) -> Result<StarCertificate, DesignError> {
    let mut points = Vec::with_capacity(seeds.len() * modulus as usize);
    for seed in seeds {
        for s in 0..modulus {
            let img = seed.translate(Shift::pair_first(modulus, s)?)?;
            let report = verify_star_point(&design, &img);
            if !report.passed() {
                return Err(DesignError::DataIntegrity(format!(
                    "certificate at {} (seed {} shifted by {s}): {report}",
                    img.point, seed.point
                )));
            }
            points.push(img);
        }
    }
    points.sort_by_key(|c| c.point);
    if let Some(w) = points.windows(2).find(|w| w[0].point == w[1].point) {
        return Err(DesignError::DataIntegrity(format!("point {} certified twice", w[0].point)));
    }
    Ok(StarCertificate { design, points })
}

pub fn verify_star(c: &StarCertificate) -> VerifyReport {
    verify_star_with(c, DEFAULT_WITNESS_LIMIT)
}

/// Steiner property, the order condition `v = 1 mod 3`, one certificate
/// per point, and every point certificate.
pub fn verify_star_with(c: &StarCertificate, limit: usize) -> VerifyReport {
    let mut report = star_frame(c, limit);
    for pc in &c.points {
        if report.is_full() {
            break;
        }
        let sub = verify_star_point_with(&c.design, pc, limit);
        report.absorb(sub, &format!("point {}", pc.point));
    }
    report
}

/// Every check of [`verify_star_with`] except the per-point ones, which a
/// caller may run in parallel with [`verify_star_point_with`].
pub fn star_frame(c: &StarCertificate, limit: usize) -> VerifyReport {
    let d = &c.design;
    let mut report = VerifyReport::new(limit);
    report.observed_blocks = d.blocks().len();
    let steiner = verify_steiner(d);
    report.expected_blocks = steiner.expected_blocks;
    if d.t() != 3 || d.uniform_block_size() != Some(4) {
        report.push(ViolationKind::CountMismatch, Vec::new(), "design is not an S(3,4,v)");
    }
    report.absorb(steiner, "design");
    if d.v() % 3 != 1 {
        report.push(ViolationKind::Order, Vec::new(), format!("v = {} is not 1 mod 3", d.v()));
    }
    let mut seen = vec![false; d.v()];
    for pc in &c.points {
        match d.labels().id_of(&pc.point) {
            None => report.push(ViolationKind::LabelMismatch, vec![pc.point], "certificate point not in design"),
            Some(id) if seen[id as usize] => {
                report.push(ViolationKind::RepeatedPoint, vec![pc.point], "two certificates")
            }
            Some(id) => seen[id as usize] = true,
        }
    }
    for (id, s) in seen.iter().enumerate() {
        if !s {
            report.push_ids(ViolationKind::MissingPoint, d.labels(), &[id as u32], "no certificate");
        }
    }
    report
}
