//! The Boolean SQS(16) on GF(16), its seven resolvable S(2,4,16) rows, the
//! embedded TD(3,4,4) and its renaming onto `Z_4 x Z_4`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::combin::for_each_subset;
use crate::verify::{verify_gdd, verify_steiner};
use crate::{Block, Design, DesignError, Gdd, Label, LabelTable, F16};

type Quad = [F16; 4];

// Base blocks by row; a star marks the underlined ones, `!` the special block.
const ROWS: [&str; 7] = [
    "!0 1 a^1 a^4, *0 a^2 a^3 a^6, *0 a^5 a^7 a^13, *0 a^10 a^11 a^14, *0 a^8 a^9 a^12",
    "0 1 a^2 a^8, 0 a^1 a^7 a^14, 0 a^4 a^6 a^12, *0 a^3 a^5 a^11, *0 a^9 a^10 a^13",
    "0 1 a^3 a^14, 0 a^2 a^4 a^10, 0 a^1 a^12 a^13, *0 a^5 a^6 a^9, *0 a^7 a^8 a^11",
    "0 1 a^5 a^10, 0 a^1 a^6 a^11, 0 a^4 a^9 a^14, *0 a^2 a^7 a^12, *0 a^3 a^8 a^13",
    "0 1 a^6 a^13, 0 a^3 a^4 a^7, 0 a^1 a^8 a^10, *0 a^2 a^9 a^11, *0 a^5 a^12 a^14",
    "0 1 a^11 a^12, 0 a^1 a^3 a^9, 0 a^4 a^5 a^8, *0 a^6 a^7 a^10, *0 a^2 a^13 a^14",
    "0 1 a^7 a^9, 0 a^1 a^2 a^5, 0 a^4 a^11 a^13, *0 a^6 a^8 a^14, *0 a^3 a^10 a^12",
];

const TD_ROWS: [&str; 4] = [
    "0 a^2 a^3 a^6, 0 a^5 a^7 a^13, 0 a^10 a^11 a^14, 0 a^8 a^9 a^12",
    "0 a^3 a^5 a^11, 0 a^2 a^7 a^12, 0 a^9 a^10 a^13, 0 a^6 a^8 a^14",
    "0 a^5 a^6 a^9, 0 a^7 a^8 a^11, 0 a^2 a^13 a^14, 0 a^3 a^10 a^12",
    "0 a^3 a^8 a^13, 0 a^2 a^9 a^11, 0 a^5 a^12 a^14, 0 a^6 a^7 a^10",
];

// (a_0, a_1, a_2, a_3) for a = 0..3
const RENAMING: [&str; 4] = ["0 1 a^1 a^4", "a^2 a^8 a^5 a^10", "a^3 a^14 a^9 a^7", "a^6 a^13 a^11 a^12"];

/// One-factorization of `Z_4`: `F1 = {01,23}`, `F2 = {02,13}`, `F3 = {03,12}`.
pub const FACTORIZATION: [[[u32; 2]; 2]; 3] = [[[0, 1], [2, 3]], [[0, 2], [1, 3]], [[0, 3], [1, 2]]];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sqs16Template {
    pub rows: [[Quad; 5]; 7],
    pub special: Quad,
    pub underlined: Vec<Quad>,
    pub td_rows: [[Quad; 4]; 4],
    /// `renaming[a][i]` is the element named `a_i`.
    pub renaming: [Quad; 4],
}

fn parse_quad(text: &str) -> Quad {
    let mut q = [F16::ZERO; 4];
    for (slot, tok) in q.iter_mut().zip(text.split_whitespace()) {
        *slot = tok.parse().expect("embedded field element");
    }
    q
}

impl Sqs16Template {
    pub fn new() -> Sqs16Template {
        let mut rows = [[[F16::ZERO; 4]; 5]; 7];
        let mut special = [F16::ZERO; 4];
        let mut underlined = Vec::new();
        for (r, line) in ROWS.iter().enumerate() {
            for (c, cell) in line.split(',').enumerate() {
                let cell = cell.trim();
                let q = parse_quad(cell.trim_start_matches(['*', '!']));
                if cell.starts_with('*') {
                    underlined.push(q);
                }
                if cell.starts_with('!') {
                    special = q;
                }
                rows[r][c] = q;
            }
        }
        let mut td_rows = [[[F16::ZERO; 4]; 4]; 4];
        for (r, line) in TD_ROWS.iter().enumerate() {
            for (c, cell) in line.split(',').enumerate() {
                td_rows[r][c] = parse_quad(cell);
            }
        }
        let renaming = RENAMING.map(parse_quad);
        Sqs16Template {
            rows,
            special,
            underlined,
            td_rows,
            renaming,
        }
    }

    /// `(a, i)` with `e` named `a_i`.
    pub fn name_of(&self, e: F16) -> (u32, u32) {
        for (a, g) in self.renaming.iter().enumerate() {
            if let Some(i) = g.iter().position(|&x| x == e) {
                return (a as u32, i as u32);
            }
        }
        unreachable!("renaming covers the field")
    }

    /// Local id `4a + i` of an element.
    pub fn local(&self, e: F16) -> u8 {
        let (a, i) = self.name_of(e);
        (4 * a + i) as u8
    }

    /// Checks every structural claim the construction relies on.
    pub fn check(&self) -> Result<(), DesignError> {
        let fail = |msg: String| Err(DesignError::TableConsistency(msg));
        let (sqs, _) = boolean_blocks();
        let mut all = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            let mut row_blocks = Vec::new();
            for q in row {
                if q.iter().fold(F16::ZERO, |s, &x| s + x) != F16::ZERO {
                    return fail(format!("base block {q:?} does not sum to zero"));
                }
                let orbit = develop(q);
                if orbit.len() != 4 {
                    return fail(format!("base block {q:?} has orbit length {}", orbit.len()));
                }
                if !is_partition(&orbit) {
                    return fail(format!("orbit of {q:?} is not a parallel class"));
                }
                row_blocks.extend(orbit);
            }
            let d = field_design(2, row_blocks.clone())?;
            if !verify_steiner(&d).passed() {
                return fail(format!("row {r} is not an S(2,4,16)"));
            }
            all.extend(row_blocks);
        }
        all.sort_unstable();
        if all != sqs {
            return fail(String::from("the rows do not develop to the Boolean SQS(16)"));
        }
        let groups = develop(&self.special);
        let named: Vec<Quad> = self.renaming.iter().map(|g| sorted(*g)).collect();
        if sorted_vec(groups.clone()) != sorted_vec(named) {
            return fail(String::from("special orbit differs from the renamed groups"));
        }
        if self.underlined.len() != 16 {
            return fail(format!("{} underlined base blocks", self.underlined.len()));
        }
        let td: Vec<Quad> = self.underlined.iter().flat_map(develop).collect();
        if !verify_gdd(&self.field_gdd(3, td.clone())?).passed() || td.len() != 64 {
            return fail(String::from("underlined orbits are not a TD(3,4,4)"));
        }
        let mut from_rows: Vec<Quad> = Vec::new();
        for row in &self.td_rows {
            let blocks: Vec<Quad> = row.iter().flat_map(develop).collect();
            if !verify_gdd(&self.field_gdd(2, blocks.clone())?).passed() || blocks.len() != 16 {
                return fail(String::from("a TD row is not a TD(2,4,4)"));
            }
            from_rows.extend(blocks);
        }
        if sorted_vec(from_rows) != sorted_vec(td) {
            return fail(String::from("TD rows do not use the underlined orbits"));
        }
        let mut rest: Vec<[u8; 4]> = Vec::new();
        for q in self.rows.iter().flatten() {
            if *q == self.special || self.underlined.contains(q) {
                continue;
            }
            for b in develop(q) {
                let mut l = b.map(|e| self.local(e));
                l.sort_unstable();
                rest.push(l);
            }
        }
        rest.sort_unstable();
        let mut c: Vec<[u8; 4]> = c_blocks_local(&[0, 1, 2, 3]);
        c.sort_unstable();
        if rest != c {
            return fail(String::from("non-underlined orbits differ from C on the four groups"));
        }
        Ok(())
    }

    fn field_gdd(&self, t: usize, blocks: Vec<Quad>) -> Result<Gdd, DesignError> {
        let d = field_design(t, blocks)?;
        let groups = self
            .renaming
            .iter()
            .map(|g| g.iter().map(|e| d.labels().require(&Label::Field(*e))).collect())
            .collect::<Result<Vec<_>, _>>()?;
        Gdd::new(d, groups)
    }
}

impl Default for Sqs16Template {
    fn default() -> Self {
        Sqs16Template::new()
    }
}

fn sorted(mut q: Quad) -> Quad {
    q.sort_unstable();
    q
}

fn sorted_vec(mut v: Vec<Quad>) -> Vec<Quad> {
    for q in v.iter_mut() {
        q.sort_unstable();
    }
    v.sort_unstable();
    v
}

/// Distinct translates `q + e`, each sorted.
pub(crate) fn develop(q: &Quad) -> Vec<Quad> {
    let mut out: Vec<Quad> = F16::all().map(|e| sorted(q.map(|x| x + e))).collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn is_partition(blocks: &[Quad]) -> bool {
    let mut hit = [false; 16];
    for q in blocks {
        for e in q {
            if hit[e.bits() as usize] {
                return false;
            }
            hit[e.bits() as usize] = true;
        }
    }
    hit.iter().all(|&h| h)
}

/// All zero-sum 4-subsets of GF(16), sorted, and the 16 field labels.
fn boolean_blocks() -> (Vec<Quad>, LabelTable) {
    let labels = LabelTable::new(F16::all().map(Label::Field).collect()).expect("distinct");
    let ids: Vec<u32> = (0..16).collect();
    let mut out = Vec::new();
    for_each_subset(&ids, 4, &mut |s| {
        let q = [0, 1, 2, 3].map(|i| match labels.label(s[i]) {
            Label::Field(e) => e,
            _ => unreachable!(),
        });
        if q.iter().fold(F16::ZERO, |a, &x| a + x) == F16::ZERO {
            out.push(sorted(q));
        }
    });
    out.sort_unstable();
    (out, labels)
}

fn field_design(t: usize, blocks: Vec<Quad>) -> Result<Design, DesignError> {
    let labels = LabelTable::new(F16::all().map(Label::Field).collect())?;
    let lists: Vec<Vec<Label>> = blocks.iter().map(|q| q.iter().map(|&e| Label::Field(e)).collect()).collect();
    Design::from_labels(labels, t, vec![4], &lists)
}

/// The Boolean SQS(16): quadruples of GF(16) summing to zero. The template
/// is checked before it is returned.
pub fn boolean_sqs16() -> Result<(Design, Sqs16Template), DesignError> {
    let template = Sqs16Template::new();
    template.check()?;
    let (blocks, _) = boolean_blocks();
    Ok((field_design(3, blocks)?, template))
}

/// `C^Y` on `Y x Z_4` with point `(y, j)` numbered `4y + j`.
pub(crate) fn c_blocks_local(ys: &[u32]) -> Vec<[u8; 4]> {
    let mut out = Vec::new();
    for (n, &x) in ys.iter().enumerate() {
        for &y in &ys[n + 1..] {
            for f in &FACTORIZATION {
                for e in f {
                    for g in f {
                        let mut b = [4 * x + e[0], 4 * x + e[1], 4 * y + g[0], 4 * y + g[1]].map(|p| p as u8);
                        b.sort_unstable();
                        out.push(b);
                    }
                }
            }
        }
    }
    out
}

/// `C^Y` as blocks over point ids `4y + j`.
pub fn c_blocks(ys: &[u32]) -> Vec<Block> {
    let mut out = Vec::with_capacity(12 * ys.len() * ys.len().saturating_sub(1) / 2);
    for (n, &x) in ys.iter().enumerate() {
        for &y in &ys[n + 1..] {
            for f in &FACTORIZATION {
                for e in f {
                    for g in f {
                        let b = [4 * x + e[0], 4 * x + e[1], 4 * y + g[0], 4 * y + g[1]];
                        out.push(Block::new(b.to_vec()).expect("four distinct points"));
                    }
                }
            }
        }
    }
    out
}
