//! Shared fixtures for the benchmark suite.

use axial_core::{
    frobenius_form, matsuo_algebra, sym_transpositions, FieldDescriptor, FrobeniusForm, Scalar,
    StructureAlgebra, Vector,
};
use num::bigint::BigInt;
use num::rational::BigRational;

pub fn rationals_half() -> FieldDescriptor {
    FieldDescriptor::rationals(BigRational::new(BigInt::from(1), BigInt::from(2)))
        .expect("1/2 is a valid fusion parameter")
}

pub fn sym_fixture(n: usize) -> (StructureAlgebra, FrobeniusForm) {
    let set = sym_transpositions(n).expect("supported degree");
    let alg = matsuo_algebra(&set, &rationals_half()).expect("Matsuo construction");
    let form = frobenius_form(&alg).expect("invariant form");
    (alg, form)
}

/// Deterministic pseudo-random rational vectors with small entries, enough
/// to exercise elimination without a rand dependency.
pub fn seeded_vectors(desc: &FieldDescriptor, n: usize, count: usize, seed: u64) -> Vec<Vector> {
    let mut state = seed.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    (0..count)
        .map(|_| {
            let coords: Vec<Scalar> = (0..n)
                .map(|_| desc.from_i64((next() % 7) as i64 - 3))
                .collect();
            Vector::new(coords)
        })
        .collect()
}
