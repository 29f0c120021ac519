#![allow(dead_code)]

use clifford::{Blade, Multivector, RandomSpec, Sign, Signature};

/// Multiplies a word of generators by applying the defining relations one
/// step at a time: swap the leftmost out-of-order adjacent pair (negating),
/// or cancel the leftmost equal adjacent pair (multiplying by its square).
/// Returns the coefficient (-1, 0 or +1) and the normal-form word.
pub fn rewrite(word: &[u32], sig: &Signature) -> (i32, Vec<u32>) {
    let mut w = word.to_vec();
    let mut coeff = 1i32;
    'outer: loop {
        for k in 0..w.len().saturating_sub(1) {
            if w[k] > w[k + 1] {
                w.swap(k, k + 1);
                coeff = -coeff;
                continue 'outer;
            }
            if w[k] == w[k + 1] {
                coeff *= match sig.generator_square(w[k]) {
                    Sign::Plus => 1,
                    Sign::Minus => -1,
                    Sign::Zero => return (0, Vec::new()),
                };
                w.drain(k..k + 2);
                continue 'outer;
            }
        }
        return (coeff, w);
    }
}

/// Parity of a permutation of distinct values, by counting inversions.
pub fn inversion_parity(word: &[u32]) -> i32 {
    let mut inv = 0;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if word[i] > word[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Every blade over generators `1..=n`, indexed by bitmask.
pub fn all_blades(n: u32) -> Vec<Blade> {
    (0u32..1 << n)
        .map(|m| {
            let ix: Vec<u32> = (1..=n).filter(|i| m >> (i - 1) & 1 == 1).collect();
            Blade::new(&ix).unwrap()
        })
        .collect()
}

pub fn mv(blades: &[&[u32]], coeffs: &[f64]) -> Multivector {
    Multivector::from_terms(blades, coeffs).unwrap()
}

pub fn e(i: u32) -> Multivector {
    Multivector::basis(i).unwrap()
}

/// Random multivector in the shape used by the identity checks.
pub fn rand_mv(seed: u64) -> Multivector {
    clifford::random_multivector(&RandomSpec {
        dimension: 6,
        max_grade: 4,
        include_fewer: true,
        ..RandomSpec::with_seed(seed)
    })
    .unwrap()
}

pub fn signatures() -> Vec<(&'static str, Signature)> {
    vec![
        ("euclidean", Signature::euclidean()),
        ("(3,1)", Signature::new(3, 1)),
        ("(1,1)", Signature::new(1, 1)),
        ("(0,0)", Signature::null()),
        ("(7,inf)", Signature::new(7, clifford::Count::Unbounded)),
        ("(7,0)", Signature::new(7, 0)),
    ]
}

/// `x = 1 + 2e_1 + 3e_2 + 4e_23`.
pub fn sample_x() -> Multivector {
    mv(&[&[], &[1], &[2], &[2, 3]], &[1.0, 2.0, 3.0, 4.0])
}

pub const ZX_PRINTED: &str = "+ 8 + 1e_1 - 10e_2 - 1e_12 + 11e_3 - 6e_13 - 9e_23 + 4e_123 + 4e_4 - 8e_14 - 12e_24 + 16e_234 + 5e_5 - 10e_15 - 15e_25 + 20e_235 + 6e_6 - 12e_16 - 18e_26 + 24e_236 + 7e_7 - 14e_17 - 21e_27 + 28e_237";

pub const HIGH_DIM_PRINTED: &str = "- 2 - 4e_1,2,3 - 16e_7 + 8e_1,2,3,7 - 6e_1,4,6,7 - 12e_2,3,4,6,7 + 2e_1,5,6,8 + 4e_2,3,5,6,8 - 40e_2,3,5,8,10 - 30e_4,5,6,8,10 + 10e_1,5,7,8,10";

/// The two high-dimensional operands, `x = 2 + 4e_123 - 10e_{1,5,7,8,10}`
/// and `y = -1 + 4e_1237 - 3e_1467 + e_1568`.
pub fn high_dim_operands() -> (Multivector, Multivector) {
    let x = mv(&[&[1, 2, 3], &[1, 5, 7, 8, 10]], &[4.0, -10.0]) + Multivector::from_scalar(2.0);
    let y = mv(
        &[&[1, 2, 3, 7], &[1, 5, 6, 8], &[1, 4, 6, 7]],
        &[4.0, 1.0, -3.0],
    ) - Multivector::from_scalar(1.0);
    (x, y)
}

pub fn high_dim_product() -> Multivector {
    mv(
        &[
            &[],
            &[1, 2, 3],
            &[7],
            &[1, 2, 3, 7],
            &[1, 4, 6, 7],
            &[2, 3, 4, 6, 7],
            &[1, 5, 6, 8],
            &[2, 3, 5, 6, 8],
            &[2, 3, 5, 8, 10],
            &[4, 5, 6, 8, 10],
            &[1, 5, 7, 8, 10],
        ],
        &[
            -2.0, -4.0, -16.0, 8.0, -6.0, -12.0, 2.0, 4.0, -40.0, -30.0, 10.0,
        ],
    )
}

/// `(3e_123 + 4e_237) ∧ (e_123 + 2e_145 + 3e_456)`.
pub fn grassmann_operands() -> (Multivector, Multivector) {
    (
        mv(&[&[1, 2, 3], &[2, 3, 7]], &[3.0, 4.0]),
        mv(&[&[1, 2, 3], &[1, 4, 5], &[4, 5, 6]], &[1.0, 2.0, 3.0]),
    )
}

/// The eight-term random element whose grades the console listed.
pub fn printed_rcliff() -> Multivector {
    mv(
        &[
            &[],
            &[4],
            &[6],
            &[1, 2, 3, 5, 6],
            &[7],
            &[2, 3, 4, 6, 7],
            &[5, 6, 7],
            &[3, 5, 6, 7],
        ],
        &[4.0, 1.0, -3.0, 3.0, 2.0, -1.0, 4.0, 5.0],
    )
}
