#![allow(dead_code)]

use nilfield::bases::{generators_of_degree, make_generator, Family, GenIndex};
use nilfield::ratpoly::{rat, Monomial};
use nilfield::{Poly, Rational, VField};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(r: &mut ChaCha8Rng) -> Rational {
    rat(r.gen_range(-9..=9), r.gen_range(1..=5))
}

pub fn nonzero_rational(r: &mut ChaCha8Rng) -> Rational {
    loop {
        let q = small_rational(r);
        if q != rat(0, 1) {
            return q;
        }
    }
}

pub fn monomial(r: &mut ChaCha8Rng, max_degree: u32) -> Monomial {
    let d = r.gen_range(0..=max_degree);
    let ex = r.gen_range(0..=d);
    let ey = r.gen_range(0..=d - ex);
    Monomial::new(ex, ey, d - ex - ey)
}

/// Sparse polynomial with up to `terms` monomials of degree ≤ `max_degree`.
pub fn poly(r: &mut ChaCha8Rng, max_degree: u32, terms: usize) -> Poly {
    let n = r.gen_range(1..=terms);
    Poly::from_terms((0..n).map(|_| (monomial(r, max_degree), small_rational(r))))
}

pub fn field(r: &mut ChaCha8Rng, max_degree: u32, terms: usize) -> VField {
    VField::new(poly(r, max_degree, terms), poly(r, max_degree, terms), poly(r, max_degree, terms))
}

/// All B-generators with i + 2k ≤ `max_grade`.
pub fn b_generators(max_grade: u32) -> Vec<GenIndex> {
    (1..=max_grade + 1).flat_map(|d| generators_of_degree(d, &[Family::B])).collect()
}

/// Random combination of B-generators of degree ≤ `max_degree`.
pub fn member(r: &mut ChaCha8Rng, max_degree: u32) -> VField {
    let gens = b_generators(max_degree - 1);
    let n = r.gen_range(1..=5);
    let mut v = VField::zero();
    for _ in 0..n {
        let g = gens[r.gen_range(0..gens.len())];
        v = v + make_generator(g).unwrap().scale(&nonzero_rational(r));
    }
    v
}
