//! Point labels and the label table that fixes a design's point ids.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use crate::{DesignError, F16};

/// Structured name of a point.
///
/// The derived ordering is the canonical point order: plain integers, then
/// pairs `a_i` by `(a, i)`, then field elements, then the infinite points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Plain(u32),
    /// `a_i`, the point `(a, i)`.
    Pair(u32, u32),
    Field(F16),
    /// `inf_i`; a lone infinite point is `Infinity(0)`.
    Infinity(u32),
}

/// How to read a bare label token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scheme {
    /// Integers, `a_i` pairs and `inf` / `inf_i`.
    #[default]
    Standard,
    /// GF(16) elements in the `0`, `1`, `a^k` form.
    Gf16,
}

impl Label {
    pub fn parse(token: &str, scheme: Scheme) -> Result<Label, DesignError> {
        let bad = || DesignError::param(format!("malformed label {token:?}"));
        if scheme == Scheme::Gf16 {
            return token.parse::<F16>().map(Label::Field);
        }
        if token == "inf" {
            return Ok(Label::Infinity(0));
        }
        if let Some(rest) = token.strip_prefix("inf_") {
            return rest.parse().map(Label::Infinity).map_err(|_| bad());
        }
        match token.split_once('_') {
            Some((a, i)) => {
                let a = a.parse().map_err(|_| bad())?;
                let i = i.parse().map_err(|_| bad())?;
                Ok(Label::Pair(a, i))
            }
            None => token.parse().map(Label::Plain).map_err(|_| bad()),
        }
    }

    pub fn scheme(&self) -> Scheme {
        match self {
            Label::Field(_) => Scheme::Gf16,
            _ => Scheme::Standard,
        }
    }

    /// The point `(self, j)` of `self x Z_g`: plain `a` becomes `a_j` and the
    /// infinite point becomes `inf_j`.
    pub fn lift(&self, j: u32) -> Result<Label, DesignError> {
        match *self {
            Label::Plain(a) => Ok(Label::Pair(a, j)),
            Label::Infinity(0) => Ok(Label::Infinity(j)),
            other => Err(DesignError::param(format!("cannot lift label {other}"))),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Plain(n) => write!(f, "{n}"),
            Label::Pair(a, i) => write!(f, "{a}_{i}"),
            Label::Field(e) => write!(f, "{e}"),
            Label::Infinity(i) => write!(f, "inf_{i}"),
        }
    }
}

/// Sorted, duplicate-free list of labels. A point's id is its rank here.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LabelTable {
    labels: Vec<Label>,
}

impl LabelTable {
    pub fn new(mut labels: Vec<Label>) -> Result<LabelTable, DesignError> {
        labels.sort_unstable();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(DesignError::param(format!("duplicate label {}", w[0])));
        }
        if let Some(first) = labels.first() {
            let scheme = first.scheme();
            if labels.iter().any(|l| l.scheme() != scheme) {
                return Err(DesignError::param("labels mix field elements and integers"));
            }
        }
        Ok(LabelTable { labels })
    }

    /// `0 .. n` as plain labels.
    pub fn plain(n: u32) -> LabelTable {
        LabelTable {
            labels: (0..n).map(Label::Plain).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, id: u32) -> Option<Label> {
        self.labels.get(id as usize).copied()
    }

    /// Label of an id known to be in range.
    pub fn label(&self, id: u32) -> Label {
        self.labels[id as usize]
    }

    pub fn id_of(&self, label: &Label) -> Option<u32> {
        self.labels.binary_search(label).ok().map(|i| i as u32)
    }

    pub fn require(&self, label: &Label) -> Result<u32, DesignError> {
        self.id_of(label)
            .ok_or_else(|| DesignError::param(format!("unknown label {label}")))
    }

    pub fn iter(&self) -> impl Iterator<Item = Label> + '_ {
        self.labels.iter().copied()
    }

    pub fn as_slice(&self) -> &[Label] {
        &self.labels
    }

    pub fn scheme(&self) -> Scheme {
        self.labels.first().map(Label::scheme).unwrap_or_default()
    }

    /// Table with one label removed, together with the id map from the old
    /// table (`None` for the removed point).
    pub fn without(&self, removed: &[u32]) -> (LabelTable, Vec<Option<u32>>) {
        let mut map = Vec::with_capacity(self.labels.len());
        let mut kept = Vec::with_capacity(self.labels.len());
        for (id, label) in self.labels.iter().enumerate() {
            if removed.contains(&(id as u32)) {
                map.push(None);
            } else {
                map.push(Some(kept.len() as u32));
                kept.push(*label);
            }
        }
        (LabelTable { labels: kept }, map)
    }

    pub fn render(&self, ids: &[u32]) -> alloc::string::String {
        let parts: Vec<_> = ids.iter().map(|&i| self.label(i).to_string()).collect();
        parts.join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn parse_standard_forms() {
        let s = Scheme::Standard;
        assert_eq!(Label::parse("12", s).unwrap(), Label::Plain(12));
        assert_eq!(Label::parse("3_2", s).unwrap(), Label::Pair(3, 2));
        assert_eq!(Label::parse("inf", s).unwrap(), Label::Infinity(0));
        assert_eq!(Label::parse("inf_2", s).unwrap(), Label::Infinity(2));
        assert!(Label::parse("x_2", s).is_err());
        assert!(Label::parse("", s).is_err());
        assert_eq!(
            Label::parse("a^4", Scheme::Gf16).unwrap(),
            Label::Field(F16::alpha_pow(4))
        );
    }

    #[test]
    fn infinity_sorts_last() {
        let t = LabelTable::new(vec![
            Label::Infinity(0),
            Label::Pair(6, 2),
            Label::Pair(0, 1),
            Label::Infinity(1),
        ])
        .unwrap();
        assert_eq!(t.label(0), Label::Pair(0, 1));
        assert_eq!(t.label(3), Label::Infinity(1));
        assert_eq!(t.id_of(&Label::Pair(6, 2)), Some(1));
    }

    #[test]
    fn duplicates_rejected() {
        assert!(LabelTable::new(vec![Label::Plain(1), Label::Plain(1)]).is_err());
    }

    #[test]
    fn removal_compacts_ids() {
        let t = LabelTable::plain(5);
        let (rest, map) = t.without(&[2]);
        assert_eq!(rest.len(), 4);
        assert_eq!(map, vec![Some(0), Some(1), None, Some(2), Some(3)]);
        assert_eq!(rest.label(2), Label::Plain(3));
    }
}
