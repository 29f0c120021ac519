//! Metric signatures.
//!
//! A [`Signature`] `(p, q)` says how each generator squares under the
//! geometric product: the first `p` generators square to `+1`, the next `q`
//! to `-1` and every generator after `p + q` to `0`. Either count may be
//! [`Count::Unbounded`], so `Signature::new(Count::Unbounded, 0)` is the
//! positive-definite metric on any number of generators.
//!
//! Signatures are plain values. Multivectors never carry one; it is passed
//! to the metric-dependent products explicitly.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use thiserror::Error;

/// Number of generators in one region of a signature.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Count {
    Finite(u32),
    Unbounded,
}

impl From<u32> for Count {
    fn from(n: u32) -> Self {
        Count::Finite(n)
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(n) => write!(f, "{n}"),
            Count::Unbounded => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid generator count `{0}` (expected a non-negative integer or `inf`)")]
pub struct ParseCountError(pub String);

impl FromStr for Count {
    type Err = ParseCountError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") {
            return Ok(Count::Unbounded);
        }
        t.parse::<u32>()
            .map(Count::Finite)
            .map_err(|_| ParseCountError(s.to_string()))
    }
}

/// Square of a generator, or the sign attached to a blade product.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
    Zero,
}

impl Sign {
    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
            Sign::Zero => 0.0,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
            Sign::Zero => 0,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }

    /// `(-1)^n`.
    pub fn parity(n: usize) -> Sign {
        if n.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        match (self, rhs) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Plus,
            _ => Sign::Minus,
        }
    }
}

/// Metric signature `(p, q)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    pub p: Count,
    pub q: Count,
}

impl Default for Signature {
    fn default() -> Self {
        Self::euclidean()
    }
}

impl Signature {
    pub fn new(p: impl Into<Count>, q: impl Into<Count>) -> Self {
        Signature {
            p: p.into(),
            q: q.into(),
        }
    }

    /// Every generator squares to `+1`.
    pub fn euclidean() -> Self {
        Signature::new(Count::Unbounded, 0)
    }

    /// Single-count form: `p` positive generators, every later one null.
    /// An unbounded `p` gives the Euclidean metric.
    pub fn positive(p: impl Into<Count>) -> Self {
        Signature::new(p, 0)
    }

    /// All-null metric; the geometric product reduces to the wedge product.
    pub fn null() -> Self {
        Signature::new(0, 0)
    }

    /// Square of generator `e_i` (`i` is 1-based).
    pub fn generator_square(&self, i: u32) -> Sign {
        debug_assert!(i >= 1, "generator indices are 1-based");
        let p = match self.p {
            Count::Unbounded => return Sign::Plus,
            Count::Finite(p) => p,
        };
        if i <= p {
            return Sign::Plus;
        }
        match self.q {
            Count::Unbounded => Sign::Minus,
            Count::Finite(q) if u64::from(i) <= u64::from(p) + u64::from(q) => Sign::Minus,
            Count::Finite(_) => Sign::Zero,
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

/// Convenience wrapper over [`Signature::generator_square`].
pub fn generator_square(sig: &Signature, i: u32) -> Sign {
    sig.generator_square(i)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regions() {
        assert_eq!(Signature::new(1, 1).generator_square(2), Sign::Minus);
        assert_eq!(Signature::new(0, 0).generator_square(5), Sign::Zero);
        assert_eq!(
            Signature::new(Count::Unbounded, 0).generator_square(53),
            Sign::Plus
        );
        assert_eq!(
            Signature::new(7, Count::Unbounded).generator_square(10),
            Sign::Minus
        );
        assert_eq!(Signature::positive(7).generator_square(7), Sign::Plus);
        assert_eq!(Signature::positive(7).generator_square(8), Sign::Zero);
        assert_eq!(
            Signature::positive(Count::Unbounded),
            Signature::euclidean()
        );

        let mink = Signature::new(3, 1);
        let squares: Vec<_> = (1..=6).map(|i| mink.generator_square(i)).collect();
        assert_eq!(
            squares,
            [
                Sign::Plus,
                Sign::Plus,
                Sign::Plus,
                Sign::Minus,
                Sign::Zero,
                Sign::Zero
            ]
        );
    }

    #[test]
    fn euclidean_default() {
        let e = Signature::euclidean();
        assert_eq!(e.generator_square(1), Sign::Plus);
        assert_eq!(e.generator_square(9999), Sign::Plus);
        assert_eq!(e, Signature::new(Count::Unbounded, 0));
        assert_eq!(Signature::default(), e);
    }

    #[test]
    fn unbounded_p_ignores_q() {
        let s = Signature::new(Count::Unbounded, Count::Unbounded);
        assert_eq!(s.generator_square(u32::MAX), Sign::Plus);
    }

    #[test]
    fn no_overflow_at_large_counts() {
        let s = Signature::new(u32::MAX, u32::MAX);
        assert_eq!(s.generator_square(u32::MAX), Sign::Plus);
        let s = Signature::new(u32::MAX - 1, 5);
        assert_eq!(s.generator_square(u32::MAX), Sign::Minus);
    }

    #[test]
    fn partition_points() {
        for p in 0..5u32 {
            for q in 0..5u32 {
                let s = Signature::new(p, q);
                for i in 1..15u32 {
                    let expected = if i <= p {
                        Sign::Plus
                    } else if i <= p + q {
                        Sign::Minus
                    } else {
                        Sign::Zero
                    };
                    assert_eq!(s.generator_square(i), expected, "({p},{q}) e_{i}");
                }
            }
        }
    }

    #[test]
    fn count_parsing() {
        assert_eq!("inf".parse::<Count>(), Ok(Count::Unbounded));
        assert_eq!(" 3 ".parse::<Count>(), Ok(Count::Finite(3)));
        assert!("-1".parse::<Count>().is_err());
        assert!("x".parse::<Count>().is_err());
    }

    #[test]
    fn sign_algebra() {
        assert_eq!(Sign::Minus * Sign::Minus, Sign::Plus);
        assert_eq!(Sign::Minus * Sign::Plus, Sign::Minus);
        assert_eq!(Sign::Zero * Sign::Minus, Sign::Zero);
        assert_eq!(Sign::parity(3), Sign::Minus);
        assert_eq!(Sign::parity(0), Sign::Plus);
    }
}
