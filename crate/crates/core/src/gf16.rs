//! GF(16) = GF(2)[x] / (x^4 + x + 1).
//!
//! Elements are 4-bit coefficient vectors `c3 c2 c1 c0`. The class of `x`,
//! written `a` in text form, is primitive: its powers `a^0 .. a^14` run
//! through every nonzero element.

use core::fmt;
use core::ops::{Add, Mul};
use core::str::FromStr;

use crate::DesignError;

/// Low four bits of the reduction polynomial x^4 + x + 1.
const REDUCTION: u8 = 0b0011;

const fn build_exp() -> [u8; 15] {
    let mut table = [0u8; 15];
    let mut value = 1u8;
    let mut k = 0;
    while k < 15 {
        table[k] = value;
        // multiply by x, reducing x^4 to x + 1
        let carry = value & 0b1000 != 0;
        value = (value << 1) & 0b1111;
        if carry {
            value ^= REDUCTION;
        }
        k += 1;
    }
    table
}

const fn build_log(exp: &[u8; 15]) -> [u8; 16] {
    // log[0] is never read
    let mut table = [0xffu8; 16];
    let mut k = 0;
    while k < 15 {
        table[exp[k] as usize] = k as u8;
        k += 1;
    }
    table
}

const EXP: [u8; 15] = build_exp();
const LOG: [u8; 16] = build_log(&EXP);

/// An element of GF(16).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct F16(u8);

impl F16 {
    pub const ZERO: F16 = F16(0);
    pub const ONE: F16 = F16(1);
    /// The primitive element, root of x^4 + x + 1.
    pub const ALPHA: F16 = F16(0b0010);

    /// All sixteen elements in bit-vector order.
    pub fn all() -> impl Iterator<Item = F16> {
        (0u8..16).map(F16)
    }

    /// Element from its coefficient vector; only the low four bits are used.
    pub fn from_bits(bits: u8) -> Option<F16> {
        (bits < 16).then_some(F16(bits))
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    /// `a^k`, exponent taken modulo 15.
    pub fn alpha_pow(k: u32) -> F16 {
        F16(EXP[(k % 15) as usize])
    }

    pub fn pow(self, k: u32) -> F16 {
        if self.0 == 0 {
            return if k == 0 { F16::ONE } else { F16::ZERO };
        }
        let log = LOG[self.0 as usize] as u32;
        F16::alpha_pow(log * (k % 15))
    }

    /// Discrete logarithm to base `a`, in `0..15`.
    pub fn log(self) -> Result<u8, DesignError> {
        if self.0 == 0 {
            Err(DesignError::LogOfZero)
        } else {
            Ok(LOG[self.0 as usize])
        }
    }

    pub fn inverse(self) -> Option<F16> {
        let log = self.log().ok()? as u32;
        Some(F16::alpha_pow(15 - log))
    }
}

impl Add for F16 {
    type Output = F16;

    fn add(self, rhs: F16) -> F16 {
        F16(self.0 ^ rhs.0)
    }
}

impl Mul for F16 {
    type Output = F16;

    fn mul(self, rhs: F16) -> F16 {
        if self.0 == 0 || rhs.0 == 0 {
            return F16::ZERO;
        }
        let sum = LOG[self.0 as usize] as u32 + LOG[rhs.0 as usize] as u32;
        F16::alpha_pow(sum)
    }
}

/// Text form: `0`, `1`, or `a^k` with `1 <= k <= 14`.
impl fmt::Display for F16 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => f.write_str("0"),
            1 => f.write_str("1"),
            bits => write!(f, "a^{}", LOG[bits as usize]),
        }
    }
}

impl FromStr for F16 {
    type Err = DesignError;

    fn from_str(s: &str) -> Result<F16, DesignError> {
        match s {
            "0" => Ok(F16::ZERO),
            "1" => Ok(F16::ONE),
            _ => {
                let exp = s
                    .strip_prefix("a^")
                    .and_then(|k| k.parse::<u32>().ok())
                    .filter(|k| (1..15).contains(k))
                    .ok_or_else(|| {
                        DesignError::param(alloc::format!("not a GF(16) element: {s:?}"))
                    })?;
                Ok(F16::alpha_pow(exp))
            }
        }
    }
}
