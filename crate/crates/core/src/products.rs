//! Bilinear products on multivectors.
//!
//! Every product is computed term by term from the blade products in
//! [`crate::blade`]. Contractions keep a blade product only when its grade
//! is the difference of the operand grades; since the product of two blades
//! is a single blade this equals summing grade projections over all grade
//! pairs.

use crate::blade::{blade_product, blade_wedge, Blade, SignedBlade};
use crate::metric::Signature;
use crate::multivector::{Multivector, TermAccumulator};

fn bilinear<F>(a: &Multivector, b: &Multivector, mut blade_op: F) -> Multivector
where
    F: FnMut(&Blade, &Blade) -> Option<SignedBlade>,
{
    let mut acc = TermAccumulator::default();
    for (ba, ca) in a.terms() {
        for (bb, cb) in b.terms() {
            if let Some(r) = blade_op(ba, bb) {
                if !r.is_zero() {
                    acc.push(r.blade, r.sign.as_f64() * ca * cb);
                }
            }
        }
    }
    acc.finish()
}

pub fn geometric_product(a: &Multivector, b: &Multivector, sig: &Signature) -> Multivector {
    bilinear(a, b, |x, y| Some(blade_product(x, y, sig)))
}

/// Exterior product. Never consults a signature.
pub fn wedge(a: &Multivector, b: &Multivector) -> Multivector {
    bilinear(a, b, |x, y| Some(blade_wedge(x, y)))
}

/// `A ⌋ B`: the grade `s - r` part of each product of a grade-`r` term of
/// `A` with a grade-`s` term of `B`.
pub fn left_contraction(a: &Multivector, b: &Multivector, sig: &Signature) -> Multivector {
    bilinear(a, b, |x, y| {
        let target = y.grade().checked_sub(x.grade())?;
        let r = blade_product(x, y, sig);
        (r.blade.grade() == target).then_some(r)
    })
}

/// `A ⌊ B`: the grade `r - s` part of each term product.
pub fn right_contraction(a: &Multivector, b: &Multivector, sig: &Signature) -> Multivector {
    bilinear(a, b, |x, y| {
        let target = x.grade().checked_sub(y.grade())?;
        let r = blade_product(x, y, sig);
        (r.blade.grade() == target).then_some(r)
    })
}

/// `A^k` under the geometric product; `A^0` is the scalar 1.
pub fn power(a: &Multivector, k: u32, sig: &Signature) -> Multivector {
    (0..k).fold(Multivector::from_scalar(1.0), |acc, _| {
        geometric_product(&acc, a, sig)
    })
}
