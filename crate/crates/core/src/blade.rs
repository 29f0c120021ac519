//! Basis blades and their signed products.
//!
//! A [`Blade`] is a strictly increasing list of 1-based generator indices;
//! `e_12` is stored as `[1, 2]` and the empty list is the scalar unit.
//!
//! Blades are ordered by their little-endian bitmask `Σ 2^(i-1)`: the blade
//! whose highest differing index is larger sorts later. This order is
//! realized directly on the index lists so it also covers indices past 64.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;
use thiserror::Error;

use crate::metric::{Sign, Signature};

/// Largest admissible generator index.
pub const MAX_INDEX: u32 = u16::MAX as u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BladeError {
    #[error("generator index 0 is invalid (indices start at 1)")]
    ZeroIndex,
    #[error("generator index {0} exceeds the maximum {MAX_INDEX}")]
    IndexTooLarge(u64),
    #[error("generator index {0} is repeated")]
    Repeated(u32),
    #[error("indices are not strictly increasing")]
    NotIncreasing,
}

type Indices = SmallVec<[u16; 8]>;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Blade(Indices);

fn check_index(i: u64) -> Result<u16, BladeError> {
    match i {
        0 => Err(BladeError::ZeroIndex),
        i if i > u64::from(MAX_INDEX) => Err(BladeError::IndexTooLarge(i)),
        i => Ok(i as u16),
    }
}

impl Blade {
    /// The scalar unit (empty blade).
    pub fn scalar() -> Self {
        Blade(Indices::new())
    }

    pub fn generator(i: u32) -> Result<Self, BladeError> {
        let mut v = Indices::new();
        v.push(check_index(u64::from(i))?);
        Ok(Blade(v))
    }

    /// Builds a blade from indices that are already strictly increasing.
    pub fn new(indices: &[u32]) -> Result<Self, BladeError> {
        let mut v = Indices::with_capacity(indices.len());
        for &i in indices {
            let i = check_index(u64::from(i))?;
            if let Some(&last) = v.last() {
                if i <= last {
                    return Err(if i == last {
                        BladeError::Repeated(u32::from(i))
                    } else {
                        BladeError::NotIncreasing
                    });
                }
            }
            v.push(i);
        }
        Ok(Blade(v))
    }

    /// Sorts distinct indices into canonical order, returning the parity of
    /// the permutation alongside the blade. Repeated indices are rejected:
    /// resolving them needs a metric.
    pub fn from_unordered<I>(indices: I) -> Result<(Sign, Blade), BladeError>
    where
        I: IntoIterator,
        I::Item: Into<u64>,
    {
        let mut v = Indices::new();
        let mut swaps = 0usize;
        for i in indices {
            let i = check_index(i.into())?;
            // insertion sort; each element jumped over is one transposition
            let pos = v.partition_point(|&x| x < i);
            if v.get(pos) == Some(&i) {
                return Err(BladeError::Repeated(u32::from(i)));
            }
            swaps += v.len() - pos;
            v.insert(pos, i);
        }
        Ok((Sign::parity(swaps), Blade(v)))
    }

    pub fn grade(&self) -> usize {
        self.0.len()
    }

    pub fn is_scalar(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> impl DoubleEndedIterator<Item = u32> + ExactSizeIterator + '_ {
        self.0.iter().map(|&i| u32::from(i))
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.indices().collect()
    }

    pub fn contains(&self, i: u32) -> bool {
        u16::try_from(i).is_ok_and(|i| self.0.binary_search(&i).is_ok())
    }

    /// Bitmask key `Σ 2^(i-1)`, or `None` when an index exceeds 64.
    pub fn key(&self) -> Option<u64> {
        self.0
            .iter()
            .try_fold(0u64, |acc, &i| (i <= 64).then(|| acc | 1u64 << (i - 1)))
    }

    pub(crate) fn raw(&self) -> &[u16] {
        &self.0
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.iter().rev().cmp(other.0.iter().rev())
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{:?}", self.0.as_slice())
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_scalar() {
            return f.write_str("1");
        }
        let sep = if self.0.iter().any(|&i| i > 9) {
            ","
        } else {
            ""
        };
        f.write_str("e_")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(sep)?;
            }
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

/// A blade with a sign; a zero sign means the product vanished and the blade
/// carries no meaning.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedBlade {
    pub sign: Sign,
    pub blade: Blade,
}

impl SignedBlade {
    pub fn zero() -> Self {
        SignedBlade {
            sign: Sign::Zero,
            blade: Blade::scalar(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign.is_zero()
    }
}

/// Merges two canonical index lists. `on_equal` decides what a shared index
/// contributes; returning `Sign::Zero` aborts the product.
fn merge(a: &Blade, b: &Blade, mut on_equal: impl FnMut(u16) -> Sign) -> SignedBlade {
    let (a, b) = (a.raw(), b.raw());
    let mut out = Indices::with_capacity(a.len() + b.len());
    let mut swaps = 0usize;
    let mut sign = Sign::Plus;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                // b[j] passes every remaining element of a
                swaps += a.len() - i;
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                swaps += a.len() - i - 1;
                sign = sign * on_equal(a[i]);
                if sign.is_zero() {
                    return SignedBlade::zero();
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    SignedBlade {
        sign: sign * Sign::parity(swaps),
        blade: Blade(out),
    }
}

/// Geometric product of two basis blades under `sig`.
pub fn blade_product(a: &Blade, b: &Blade, sig: &Signature) -> SignedBlade {
    merge(a, b, |i| sig.generator_square(u32::from(i)))
}

/// Exterior product of two basis blades; zero when they share a generator.
pub fn blade_wedge(a: &Blade, b: &Blade) -> SignedBlade {
    merge(a, b, |_| Sign::Zero)
}

pub fn blade_key(a: &Blade) -> Option<u64> {
    a.key()
}
