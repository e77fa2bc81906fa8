//! Block counts and existence congruences.

use alloc::format;

use crate::combin::binomial;
use crate::DesignError;

/// `C(v,t) / C(k,t)`, rounded down, and whether the division was exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockCount {
    pub count: u64,
    pub exact: bool,
}

pub fn expected_block_count(t: usize, k: usize, v: usize) -> Result<BlockCount, DesignError> {
    if t > k || k > v {
        return Err(DesignError::param(format!(
            "need t <= k <= v, got t = {t}, k = {k}, v = {v}"
        )));
    }
    let num = binomial(v as u64, t as u64);
    let den = binomial(k as u64, t as u64);
    Ok(BlockCount {
        count: num / den,
        exact: num % den == 0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemKind {
    /// Steiner quadruple system S(3,4,v).
    Sqs,
    /// Kirkman triple system, a resolvable S(2,3,v).
    Kts,
}

/// The existence congruence: SQS(v) iff v = 2, 4 mod 6 and KTS(v) iff
/// v = 3 mod 6.
pub fn admissible(kind: SystemKind, v: usize) -> bool {
    match kind {
        SystemKind::Sqs => v % 6 == 2 || v % 6 == 4,
        SystemKind::Kts => v % 6 == 3,
    }
}
