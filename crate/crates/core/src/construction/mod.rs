//! The quadrupling construction: an RDSQS*(v) certificate gives an SQS(4v)
//! on `X x Z_4` whose derived design at every point is resolvable.
//!
//! Output point `(x, j)` has id `4x + j` and label `x_j`, where `x` is the
//! input point's id.

mod sqs16;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::star::{StarCertificate, StarPointCertificate};
use crate::verify::{verify_resolution, verify_steiner};
use crate::{
    derived_design_at, Block, Design, DesignError, Gdd, Label, LabelTable, ParallelClass,
    Resolution,
};

pub use sqs16::{boolean_sqs16, c_blocks, Sqs16Template, FACTORIZATION};

type Tri = [u8; 3];

/// The template transported to `Z_4 x Z_4` (local id `4a + i`), with the
/// derived classes at every local point.
#[derive(Debug, Clone)]
pub struct LocalTables {
    /// The TD(3,4,4), 64 blocks.
    pub a_blocks: Vec<[u8; 4]>,
    /// `C` on the four groups, 72 blocks.
    pub c_blocks: Vec<[u8; 4]>,
    /// `a_classes[p][j]`: TD row `j` derived at `p`, 4 triples.
    pub a_classes: Vec<[Vec<Tri>; 4]>,
    /// `e_classes[p][j]`: template row derived at `p`, 5 triples. Rows 1..6
    /// are indices 0..5; the row of the special block is index 6.
    pub e_classes: Vec<[Vec<Tri>; 7]>,
}

fn derived_at(blocks: &[[u8; 4]], p: u8) -> Vec<Tri> {
    let mut out: Vec<Tri> = blocks
        .iter()
        .filter(|b| b.contains(&p))
        .map(|b| {
            let mut t = [0u8; 3];
            let mut n = 0;
            for &q in b {
                if q != p {
                    t[n] = q;
                    n += 1;
                }
            }
            t
        })
        .collect();
    out.sort_unstable();
    out
}

fn covers_exactly(tris: &[Tri], points: impl Iterator<Item = u8>) -> bool {
    let mut hit = [0u8; 16];
    for t in tris {
        for &q in t {
            hit[q as usize] += 1;
        }
    }
    let mut want = [0u8; 16];
    for q in points {
        want[q as usize] = 1;
    }
    hit == want
}

impl LocalTables {
    pub fn new(t: &Sqs16Template) -> Result<LocalTables, DesignError> {
        let rename = |q: &[crate::F16; 4]| -> [u8; 4] {
            let mut b = q.map(|e| t.local(e));
            b.sort_unstable();
            b
        };
        let develop_local = |q: &[crate::F16; 4]| -> Vec<[u8; 4]> {
            sqs16::develop(q).iter().map(rename).collect()
        };
        let mut a_blocks: Vec<[u8; 4]> = t.underlined.iter().flat_map(develop_local).collect();
        a_blocks.sort_unstable();
        let mut c_blocks = Vec::new();
        for q in t.rows.iter().flatten() {
            if *q != t.special && !t.underlined.contains(q) {
                c_blocks.extend(develop_local(q));
            }
        }
        c_blocks.sort_unstable();
        let rows: Vec<Vec<[u8; 4]>> = t
            .rows
            .iter()
            .map(|r| r.iter().flat_map(develop_local).collect())
            .collect();
        let td_rows: Vec<Vec<[u8; 4]>> = t
            .td_rows
            .iter()
            .map(|r| r.iter().flat_map(develop_local).collect())
            .collect();
        let mut all: Vec<[u8; 4]> = rows.iter().flatten().copied().collect();
        all.sort_unstable();

        let bad = |msg: String| DesignError::TableConsistency(msg);
        let mut a_classes = Vec::with_capacity(16);
        let mut e_classes = Vec::with_capacity(16);
        for p in 0..16u8 {
            let group = p / 4;
            let a: [Vec<Tri>; 4] = core::array::from_fn(|j| derived_at(&td_rows[j], p));
            for (j, class) in a.iter().enumerate() {
                if !covers_exactly(class, (0..16).filter(|q| q / 4 != group)) {
                    return Err(bad(format!("TD row {j} derived at local point {p} is not a class")));
                }
            }
            let mut union: Vec<Tri> = a.iter().flatten().copied().collect();
            union.sort_unstable();
            if union != derived_at(&a_blocks, p) {
                return Err(bad(format!("TD rows do not resolve the derived TD at {p}")));
            }
            let e: [Vec<Tri>; 7] =
                core::array::from_fn(|j| derived_at(&rows[if j == 6 { 0 } else { j + 1 }], p));
            let degenerate: Tri = degenerate_local(p);
            for (j, class) in e.iter().enumerate() {
                if !covers_exactly(class, (0..16).filter(|&q| q != p)) {
                    return Err(bad(format!("row class {j} at local point {p} is not a class")));
                }
                if class.contains(&degenerate) != (j == 6) {
                    return Err(bad(format!("group triple misplaced at local point {p}")));
                }
            }
            let mut union: Vec<Tri> = e.iter().flatten().copied().collect();
            union.sort_unstable();
            if union != derived_at(&all, p) {
                return Err(bad(format!("rows do not resolve the derived SQS(16) at {p}")));
            }
            a_classes.push(a);
            e_classes.push(e);
        }
        Ok(LocalTables {
            a_blocks,
            c_blocks,
            a_classes,
            e_classes,
        })
    }
}

fn degenerate_local(p: u8) -> Tri {
    let g = p / 4 * 4;
    let mut t = [0u8; 3];
    let mut n = 0;
    for q in g..g + 4 {
        if q != p {
            t[n] = q;
            n += 1;
        }
    }
    t
}

/// Output label table for `X x Z_4`.
pub fn quadrupled_labels(v: usize) -> LabelTable {
    let mut l = Vec::with_capacity(4 * v);
    for x in 0..v as u32 {
        for j in 0..4 {
            l.push(Label::Pair(x, j));
        }
    }
    LabelTable::new(l).expect("distinct labels")
}

fn globalize(b4: &[u32; 4], q: u8) -> u32 {
    4 * b4[(q / 4) as usize] + (q % 4) as u32
}

/// `A^B`: the TD(3,4,4) on `B x Z_4`, groups `{b} x Z_4`, template group
/// `a` sent to the `a`-th point of `B` in increasing order.
pub fn rdtd_blocks(b: &Block, tables: &LocalTables) -> Result<Gdd, DesignError> {
    let b4: [u32; 4] = b
        .points()
        .try_into()
        .map_err(|_| DesignError::param("rdtd_blocks needs a block of size 4"))?;
    let mut labels = Vec::with_capacity(16);
    for &x in &b4 {
        for j in 0..4 {
            labels.push(Label::Pair(x, j));
        }
    }
    let table = LabelTable::new(labels)?;
    let blocks = tables
        .a_blocks
        .iter()
        .map(|q| {
            let ids = q
                .iter()
                .map(|&l| table.require(&Label::Pair(b4[(l / 4) as usize], (l % 4) as u32)))
                .collect::<Result<Vec<_>, _>>()?;
            Block::new(ids)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let d = Design::new(table, 3, vec![4], blocks)?;
    let groups = (0..4u32).map(|a| (4 * a..4 * a + 4).collect()).collect();
    Gdd::new(d, groups)
}

/// The seven classes of the SQS(16) copy on `B4 x Z_4` derived at `(x, i)`,
/// over global ids `4y + j`. Class 6 holds `({x} x Z_4) - {(x, i)}`.
pub fn e_classes(
    b4: &Block,
    x: u32,
    i: u32,
    tables: &LocalTables,
) -> Result<Vec<ParallelClass>, DesignError> {
    let pts: [u32; 4] = b4
        .points()
        .try_into()
        .map_err(|_| DesignError::param("e_classes needs a block of size 4"))?;
    let a = pts
        .iter()
        .position(|&y| y == x)
        .ok_or_else(|| DesignError::param(format!("point {x} not in block")))?;
    let p = (4 * a as u32 + i) as usize;
    Ok(tables.e_classes[p]
        .iter()
        .map(|class| {
            ParallelClass::new(
                class
                    .iter()
                    .map(|t| Block::new(t.iter().map(|&q| globalize(&pts, q)).collect()).expect("distinct"))
                    .collect(),
            )
        })
        .collect())
}

/// Everything needed to build the output design and any point's resolution.
pub struct Quadrupler<'a> {
    cert: &'a StarCertificate,
    tables: LocalTables,
    labels: LabelTable,
    by_point: Vec<usize>,
}

impl<'a> Quadrupler<'a> {
    pub fn new(cert: &'a StarCertificate) -> Result<Quadrupler<'a>, DesignError> {
        let (_, template) = boolean_sqs16()?;
        let tables = LocalTables::new(&template)?;
        let d = &cert.design;
        if d.uniform_block_size() != Some(4) {
            return Err(DesignError::param("input must be a quadruple system"));
        }
        let by_point = d
            .labels()
            .iter()
            .map(|l| {
                cert.points.iter().position(|c| c.point == l).ok_or_else(|| {
                    DesignError::ConstructionIntegrity(format!("no certificate for point {l}"))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Quadrupler {
            cert,
            tables,
            labels: quadrupled_labels(d.v()),
            by_point,
        })
    }

    pub fn tables(&self) -> &LocalTables {
        &self.tables
    }

    pub fn labels(&self) -> &LabelTable {
        &self.labels
    }

    /// `D`: the `A^B` for every input block, `C^X` and the groups
    /// `{x} x Z_4`.
    pub fn design(&self) -> Result<Design, DesignError> {
        let d = &self.cert.design;
        let v = d.v() as u32;
        let mut blocks = Vec::with_capacity(d.blocks().len() * 64 + 12 * (v * (v - 1) / 2) as usize + v as usize);
        for b in d.blocks() {
            let b4: [u32; 4] = b.points().try_into().expect("size 4");
            for q in &self.tables.a_blocks {
                let mut ids: Vec<u32> = q.iter().map(|&l| globalize(&b4, l)).collect();
                ids.sort_unstable();
                blocks.push(Block::from_sorted(ids));
            }
        }
        let xs: Vec<u32> = (0..v).collect();
        blocks.extend(c_blocks(&xs));
        for x in 0..v {
            blocks.push(Block::from_sorted((4 * x..4 * x + 4).collect()));
        }
        blocks.sort_unstable();
        if let Some(w) = blocks.windows(2).find(|w| w[0] == w[1]) {
            return Err(DesignError::ConstructionIntegrity(format!(
                "block {} produced twice",
                self.labels.render(w[0].points())
            )));
        }
        Design::new(self.labels.clone(), 3, vec![4], blocks)
    }

    fn point_cert(&self, x: u32) -> &StarPointCertificate {
        &self.cert.points[self.by_point[x as usize]]
    }

    /// The `2v - 1` classes `D(k,l,r)` in `(k, l, r)` order followed by
    /// `D(2v-1)`, over the derived point set at output point `p`.
    pub fn point_resolution(&self, p: u32) -> Result<Resolution, DesignError> {
        let d = &self.cert.design;
        let (x, i) = (p / 4, p % 4);
        if x as usize >= d.v() {
            return Err(DesignError::param(format!("output point {p} out of range")));
        }
        let pc = self.point_cert(x);
        let occ = pc.occurrences()?;
        let to_input = pc
            .labels
            .iter()
            .map(|l| d.labels().require(&l))
            .collect::<Result<Vec<_>, _>>()?;
        let with_x = |t: &Block| -> ([u32; 4], usize) {
            let mut b4 = [x, 0, 0, 0];
            for (slot, &q) in b4[1..].iter_mut().zip(t.points()) {
                *slot = to_input[q as usize];
            }
            b4.sort_unstable();
            let a = b4.iter().position(|&y| y == x).expect("x is in the block");
            (b4, a)
        };
        let compact = |g: u32| if g > p { g - 1 } else { g };
        let ground = 4 * d.v() - 1;
        let where_ = |k: usize, l: usize, r: usize| {
            format!("point ({}, {i}) k={} l={} r={r}", d.labels().label(x), k + 1, l + 1)
        };

        let mut classes = Vec::with_capacity(2 * d.v() - 1);
        let mut last = Vec::new();
        let degenerate: Vec<u32> = (4 * x..4 * x + 4).filter(|&q| q != p).map(compact).collect();
        for (k, group) in pc.groups.iter().enumerate() {
            let (e4, ea) = with_x(&group.common);
            let ep = 4 * ea + i as usize;
            for l in 0..3 {
                for r in 0..2 {
                    let mut blocks = Vec::with_capacity(ground / 3);
                    for (bi, t) in group.classes[l].blocks.iter().enumerate() {
                        let n = occ[k][l][bi];
                        if n == 0 {
                            continue;
                        }
                        let (b4, a) = with_x(t);
                        let j = if n == 1 { r } else { r + 2 };
                        for tri in &self.tables.a_classes[4 * a + i as usize][j] {
                            blocks.push(tri_block(tri, &b4, compact));
                        }
                    }
                    for tri in &self.tables.e_classes[ep][2 * l + r] {
                        blocks.push(tri_block(tri, &e4, compact));
                    }
                    let class = ParallelClass::new(blocks);
                    if class.partition_defect(ground).is_some() {
                        return Err(DesignError::ConstructionIntegrity(where_(k, l, r)));
                    }
                    classes.push(class);
                }
            }
            let deg_local = degenerate_local(ep as u8);
            for tri in &self.tables.e_classes[ep][6] {
                if *tri != deg_local {
                    last.push(tri_block(tri, &e4, compact));
                }
            }
        }
        last.push(Block::from_sorted(degenerate));
        let class = ParallelClass::new(last);
        if class.partition_defect(ground).is_some() {
            return Err(DesignError::ConstructionIntegrity(format!(
                "point ({}, {i}) final class",
                d.labels().label(x)
            )));
        }
        classes.push(class);
        let (labels, _) = self.labels.without(&[p]);
        Ok(Resolution::new(labels, classes))
    }
}

fn tri_block(tri: &Tri, b4: &[u32; 4], compact: impl Fn(u32) -> u32) -> Block {
    let mut ids: Vec<u32> = tri.iter().map(|&q| compact(globalize(b4, q))).collect();
    ids.sort_unstable();
    Block::from_sorted(ids)
}

/// Output of the construction, with every part verified.
#[derive(Debug, Clone)]
pub struct QuadrupleAssembly {
    pub design: Design,
    /// Indexed by output point id.
    pub resolutions: Vec<Resolution>,
}

/// Builds and verifies the SQS(4v) and all `4v` derived resolutions, one
/// point after another.
pub fn construct_rdsqs_4v(cert: &StarCertificate) -> Result<QuadrupleAssembly, DesignError> {
    let q = Quadrupler::new(cert)?;
    let design = q.design()?;
    let report = verify_steiner(&design);
    if !report.passed() {
        return Err(DesignError::ConstructionIntegrity(format!("assembled design: {report}")));
    }
    let mut resolutions = Vec::with_capacity(design.v());
    for p in 0..design.v() as u32 {
        let res = q.point_resolution(p)?;
        let report = verify_resolution(&derived_design_at(&design, p)?, &res);
        if !report.passed() {
            return Err(DesignError::ConstructionIntegrity(format!(
                "resolution at {}: {report}",
                design.labels().label(p)
            )));
        }
        resolutions.push(res);
    }
    Ok(QuadrupleAssembly { design, resolutions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::verify_gdd;

    fn tables() -> LocalTables {
        LocalTables::new(&Sqs16Template::new()).unwrap()
    }

    #[test]
    fn local_tables_build() {
        let t = tables();
        assert_eq!(t.a_blocks.len(), 64);
        assert_eq!(t.c_blocks.len(), 72);
        assert!(t.a_classes.iter().all(|c| c.iter().all(|x| x.len() == 4)));
        assert!(t.e_classes.iter().all(|c| c.iter().all(|x| x.len() == 5)));
    }

    #[test]
    fn rdtd_on_a_block() {
        let t = tables();
        let g = rdtd_blocks(&Block::from_slice(&[2, 5, 9, 11]).unwrap(), &t).unwrap();
        assert_eq!(g.design().blocks().len(), 64);
        let r = verify_gdd(&g);
        assert!(r.passed(), "{r}");
        assert_eq!(alloc::format!("{}", g.actual_type()), "4^4");
    }

    #[test]
    fn e_class_six_holds_the_group_triple() {
        let t = tables();
        let b = Block::from_slice(&[0, 3, 4, 7]).unwrap();
        for x in [0u32, 3, 4, 7] {
            for i in 0..4 {
                let cls = e_classes(&b, x, i, &t).unwrap();
                let deg: Vec<u32> = (4 * x..4 * x + 4).filter(|&q| q != 4 * x + i).collect();
                let deg = Block::new(deg).unwrap();
                for (j, c) in cls.iter().enumerate() {
                    assert_eq!(c.blocks.contains(&deg), j == 6);
                }
            }
        }
    }
}
