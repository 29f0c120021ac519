//! Sparse multivectors and their linear operations.

use std::collections::btree_map::{self, BTreeMap};
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::blade::{Blade, BladeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultivectorError {
    #[error("{blades} index lists but {coeffs} coefficients")]
    LengthMismatch { blades: usize, coeffs: usize },
    #[error("term {term}: {source}")]
    Term {
        term: usize,
        #[source]
        source: BladeError,
    },
    #[error(transparent)]
    Blade(#[from] BladeError),
}

/// A finite sum of basis blades with real coefficients.
///
/// Terms are kept in canonical blade order and no stored coefficient is
/// ever exactly zero; the zero multivector has no terms.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Multivector {
    terms: BTreeMap<Blade, f64>,
}

/// Sums coefficients per blade, dropping exact zeros at the end.
#[derive(Default)]
pub(crate) struct TermAccumulator {
    terms: BTreeMap<Blade, f64>,
}

impl TermAccumulator {
    pub(crate) fn push(&mut self, blade: Blade, coeff: f64) {
        if coeff == 0.0 {
            return;
        }
        *self.terms.entry(blade).or_insert(0.0) += coeff;
    }

    pub(crate) fn finish(mut self) -> Multivector {
        self.terms.retain(|_, c| *c != 0.0);
        Multivector { terms: self.terms }
    }
}

impl FromIterator<(Blade, f64)> for Multivector {
    fn from_iter<T: IntoIterator<Item = (Blade, f64)>>(iter: T) -> Self {
        let mut acc = TermAccumulator::default();
        for (b, c) in iter {
            acc.push(b, c);
        }
        acc.finish()
    }
}

impl Multivector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds `Σ coeffs[k] · e_{blades[k]}`.
    ///
    /// Index lists may be in any order (the permutation parity is applied to
    /// the coefficient) but must not repeat an index.
    pub fn from_terms<B: AsRef<[u32]>>(
        blades: &[B],
        coeffs: &[f64],
    ) -> Result<Self, MultivectorError> {
        if blades.len() != coeffs.len() {
            return Err(MultivectorError::LengthMismatch {
                blades: blades.len(),
                coeffs: coeffs.len(),
            });
        }
        let mut acc = TermAccumulator::default();
        for (term, (ix, &c)) in blades.iter().zip(coeffs).enumerate() {
            let (sign, blade) = Blade::from_unordered(ix.as_ref().iter().copied())
                .map_err(|source| MultivectorError::Term { term, source })?;
            acc.push(blade, sign.as_f64() * c);
        }
        Ok(acc.finish())
    }

    pub fn from_blade(blade: Blade, coeff: f64) -> Self {
        std::iter::once((blade, coeff)).collect()
    }

    pub fn from_scalar(c: f64) -> Self {
        Self::from_blade(Blade::scalar(), c)
    }

    /// `Σ v[i] e_{i+1}`.
    pub fn as_1vector(v: &[f64]) -> Result<Self, MultivectorError> {
        v.iter()
            .enumerate()
            .map(|(i, &c)| {
                let i =
                    u32::try_from(i + 1).map_err(|_| BladeError::IndexTooLarge(i as u64 + 1))?;
                Ok((Blade::generator(i)?, c))
            })
            .collect::<Result<Vec<_>, MultivectorError>>()
            .map(|terms| terms.into_iter().collect())
    }

    /// The generator `e_i`.
    pub fn basis(i: u32) -> Result<Self, MultivectorError> {
        Ok(Self::from_blade(Blade::generator(i)?, 1.0))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Blade, f64)> + ExactSizeIterator {
        self.terms.iter().map(|(b, &c)| (b, c))
    }

    pub fn coefficient(&self, blade: &Blade) -> f64 {
        self.terms.get(blade).copied().unwrap_or(0.0)
    }

    pub fn scalar_part(&self) -> f64 {
        self.coefficient(&Blade::scalar())
    }

    /// True when every term is the scalar blade (including the zero case).
    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(Blade::is_scalar)
    }

    /// Grade of each stored term, ascending.
    pub fn grades(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.terms.keys().map(Blade::grade).collect();
        g.sort_unstable();
        g
    }

    /// `⟨A⟩_r`.
    pub fn grade_part(&self, r: usize) -> Self {
        Multivector {
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.grade() == r)
                .map(|(b, &c)| (b.clone(), c))
                .collect(),
        }
    }

    pub fn max_index(&self) -> Option<u32> {
        self.terms
            .keys()
            .filter_map(|b| b.indices().next_back())
            .max()
    }

    pub fn scalar_multiply(&self, c: f64) -> Self {
        self.terms
            .iter()
            .map(|(b, &x)| (b.clone(), c * x))
            .collect()
    }

    pub fn negate(&self) -> Self {
        Multivector {
            terms: self.terms.iter().map(|(b, &c)| (b.clone(), -c)).collect(),
        }
    }

    /// Coefficient-wise comparison with absolute tolerance `eps`.
    pub fn equals_within(&self, other: &Self, eps: f64) -> bool {
        self.terms
            .keys()
            .chain(other.terms.keys())
            .all(|b| (self.coefficient(b) - other.coefficient(b)).abs() <= eps)
    }

    fn combine(&self, other: &Self, scale: f64) -> Self {
        let mut terms = self.terms.clone();
        for (b, &c) in &other.terms {
            match terms.entry(b.clone()) {
                btree_map::Entry::Occupied(mut e) => {
                    let v = *e.get() + scale * c;
                    if v == 0.0 {
                        e.remove();
                    } else {
                        *e.get_mut() = v;
                    }
                }
                btree_map::Entry::Vacant(e) => {
                    e.insert(scale * c);
                }
            }
        }
        Multivector { terms }
    }
}

impl IntoIterator for Multivector {
    type Item = (Blade, f64);
    type IntoIter = btree_map::IntoIter<Blade, f64>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

pub fn add(a: &Multivector, b: &Multivector) -> Multivector {
    a.combine(b, 1.0)
}

pub fn subtract(a: &Multivector, b: &Multivector) -> Multivector {
    a.combine(b, -1.0)
}

pub fn negate(a: &Multivector) -> Multivector {
    a.negate()
}

pub fn scalar_multiply(c: f64, a: &Multivector) -> Multivector {
    a.scalar_multiply(c)
}

pub fn equals(a: &Multivector, b: &Multivector) -> bool {
    a == b
}

pub fn is_zero(a: &Multivector) -> bool {
    a.is_zero()
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $func:ident) => {
        impl $trait<&Multivector> for &Multivector {
            type Output = Multivector;
            fn $method(self, rhs: &Multivector) -> Multivector {
                $func(self, rhs)
            }
        }
        impl $trait<Multivector> for Multivector {
            type Output = Multivector;
            fn $method(self, rhs: Multivector) -> Multivector {
                $func(&self, &rhs)
            }
        }
        impl $trait<&Multivector> for Multivector {
            type Output = Multivector;
            fn $method(self, rhs: &Multivector) -> Multivector {
                $func(&self, rhs)
            }
        }
        impl $trait<Multivector> for &Multivector {
            type Output = Multivector;
            fn $method(self, rhs: Multivector) -> Multivector {
                $func(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, subtract);

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.negate()
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.negate()
    }
}

impl Mul<f64> for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: f64) -> Multivector {
        self.scalar_multiply(rhs)
    }
}

impl Mul<&Multivector> for f64 {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        rhs.scalar_multiply(self)
    }
}

impl Mul<Multivector> for f64 {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        rhs.scalar_multiply(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Multivector {
        Multivector::from_terms(
            &[vec![], vec![1], vec![2], vec![2, 3]],
            &[1.0, 2.0, 3.0, 4.0],
        )
        .unwrap()
    }

    fn coeffs(a: &Multivector) -> Vec<(Vec<u32>, f64)> {
        a.terms().map(|(b, c)| (b.to_vec(), c)).collect()
    }

    #[test]
    fn from_terms_basic() {
        assert_eq!(
            coeffs(&x()),
            vec![
                (vec![], 1.0),
                (vec![1], 2.0),
                (vec![2], 3.0),
                (vec![2, 3], 4.0)
            ]
        );
        let z = Multivector::from_terms(&[[1], [1]], &[1.0, -1.0]).unwrap();
        assert!(z.is_zero());
        let m = Multivector::from_terms(&[[2, 1]], &[5.0]).unwrap();
        assert_eq!(coeffs(&m), vec![(vec![1, 2], -5.0)]);
    }

    #[test]
    fn from_terms_errors() {
        assert_eq!(
            Multivector::from_terms(&[[1]], &[1.0, 2.0]),
            Err(MultivectorError::LengthMismatch {
                blades: 1,
                coeffs: 2
            })
        );
        assert!(matches!(
            Multivector::from_terms(&[vec![1], vec![2, 2]], &[1.0, 2.0]),
            Err(MultivectorError::Term {
                term: 1,
                source: BladeError::Repeated(2)
            })
        ));
        assert!(matches!(
            Multivector::from_terms(&[[0]], &[1.0]),
            Err(MultivectorError::Term {
                source: BladeError::ZeroIndex,
                ..
            })
        ));
    }

    #[test]
    fn zero_coefficients_pruned_on_construction() {
        let m = Multivector::from_terms(&[vec![1], vec![2]], &[0.0, 3.0]).unwrap();
        assert_eq!(m.len(), 1);
        assert!(Multivector::from_scalar(0.0).is_zero());
        assert_eq!(coeffs(&Multivector::from_scalar(2.0)), vec![(vec![], 2.0)]);
    }

    #[test]
    fn subtraction_drops_cancelled_term() {
        let y = Multivector::from_terms(&[[1]], &[2.0]).unwrap();
        let d = &x() - &y;
        assert_eq!(
            coeffs(&d),
            vec![(vec![], 1.0), (vec![2], 3.0), (vec![2, 3], 4.0)]
        );
        assert_eq!(d, add(&x(), &negate(&y)));
    }

    #[test]
    fn identities() {
        let a = x();
        assert_eq!(&a + &Multivector::zero(), a);
        assert!((&a + &a.negate()).is_zero());
        assert!(is_zero(&subtract(&a, &a)));
        assert!(scalar_multiply(0.0, &a).is_zero());
        assert_eq!(scalar_multiply(-1.0, &a), negate(&a));
        assert_eq!(2.0 * &a, &a + &a);
    }

    #[test]
    fn one_vectors_and_basis() {
        let v = Multivector::as_1vector(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0]).unwrap();
        assert_eq!(v.len(), 7);
        assert_eq!(v.coefficient(&Blade::generator(7).unwrap()), 7.0);
        assert!(Multivector::as_1vector(&[]).unwrap().is_zero());
        assert_eq!(
            coeffs(&Multivector::as_1vector(&[0.0, 5.0]).unwrap()),
            vec![(vec![2], 5.0)]
        );
        assert_eq!(
            coeffs(&Multivector::basis(1).unwrap()),
            vec![(vec![1], 1.0)]
        );
        assert!(Multivector::basis(0).is_err());
    }

    #[test]
    fn grade_machinery() {
        let a = Multivector::from_terms(
            &[
                vec![],
                vec![4],
                vec![6],
                vec![1, 2, 3, 5, 6],
                vec![7],
                vec![2, 3, 4, 6, 7],
                vec![5, 6, 7],
                vec![3, 5, 6, 7],
            ],
            &[4.0, 1.0, -3.0, 3.0, 2.0, -1.0, 4.0, 5.0],
        )
        .unwrap();
        assert_eq!(a.grades(), vec![0, 1, 1, 1, 3, 4, 5, 5]);
        assert_eq!(
            coeffs(&a.grade_part(1)),
            vec![(vec![4], 1.0), (vec![6], -3.0), (vec![7], 2.0)]
        );
        assert_eq!(a.grade_part(0), Multivector::from_scalar(a.scalar_part()));
        assert!(a.grade_part(2).is_zero());
        assert!(Multivector::zero().grades().is_empty());
        assert_eq!(Multivector::from_scalar(3.0).grades(), vec![0]);
        let sum = (0..=7).fold(Multivector::zero(), |s, r| s + a.grade_part(r));
        assert_eq!(sum, a);
        assert_eq!(a.max_index(), Some(7));
    }

    #[test]
    fn parity_canonicalization_equality() {
        let a = Multivector::from_terms(&[[1, 2]], &[1.0]).unwrap();
        let b = Multivector::from_terms(&[[2, 1]], &[-1.0]).unwrap();
        assert!(equals(&a, &b));
    }

    #[test]
    fn approximate_equality() {
        let a = Multivector::from_scalar(1.0);
        let b = Multivector::from_scalar(1.0 + 1e-12);
        assert!(a != b);
        assert!(a.equals_within(&b, 1e-9));
        assert!(!a.equals_within(&Multivector::basis(1).unwrap(), 0.5));
    }
}
