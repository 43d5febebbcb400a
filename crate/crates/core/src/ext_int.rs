//! Integers extended with `-inf` and `+inf`.
//!
//! Distance computations on graphs use the conventions `min {} = +inf` and
//! `max {} = -1`; unreachable vertices are at distance `+inf` and radii may
//! be negative (a ball of negative radius is empty). `ExtInt` keeps those
//! conventions out of ad-hoc sentinel arithmetic.

use std::fmt;
use std::ops::{Add, Neg, Sub};

/// An integer, `-inf`, or `+inf`, totally ordered the obvious way.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtInt {
    NegInf,
    Finite(i64),
    PosInf,
}

pub use ExtInt::{Finite, NegInf, PosInf};

impl ExtInt {
    pub fn is_finite(self) -> bool {
        matches!(self, Finite(_))
    }

    /// The finite value, if any.
    pub fn finite(self) -> Option<i64> {
        match self {
            Finite(v) => Some(v),
            _ => None,
        }
    }

    /// The finite value; panics on an infinity.
    pub fn unwrap_finite(self) -> i64 {
        self.finite().expect("expected a finite value")
    }
}

impl From<i64> for ExtInt {
    fn from(v: i64) -> Self {
        Finite(v)
    }
}

impl From<usize> for ExtInt {
    fn from(v: usize) -> Self {
        Finite(v as i64)
    }
}

impl Add for ExtInt {
    type Output = ExtInt;

    /// Saturating addition. `(+inf) + (-inf)` is undefined on valid inputs
    /// and panics: reaching it means a caller broke an invariant upstream.
    fn add(self, rhs: ExtInt) -> ExtInt {
        match (self, rhs) {
            (Finite(a), Finite(b)) => Finite(a + b),
            (PosInf, NegInf) | (NegInf, PosInf) => {
                panic!("ExtInt: (+inf) + (-inf) is undefined")
            }
            (PosInf, _) | (_, PosInf) => PosInf,
            (NegInf, _) | (_, NegInf) => NegInf,
        }
    }
}

impl Neg for ExtInt {
    type Output = ExtInt;

    fn neg(self) -> ExtInt {
        match self {
            NegInf => PosInf,
            Finite(v) => Finite(-v),
            PosInf => NegInf,
        }
    }
}

impl Sub for ExtInt {
    type Output = ExtInt;

    fn sub(self, rhs: ExtInt) -> ExtInt {
        self + (-rhs)
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NegInf => write!(f, "-inf"),
            Finite(v) => write!(f, "{v}"),
            PosInf => write!(f, "inf"),
        }
    }
}
