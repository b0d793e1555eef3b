//! Shared helpers for the integration suites: deterministic random
//! polynomial generators over a seeded RNG.
#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use paraclose_core::poly::{Monomial, PolyRing, Polynomial};
use paraclose_core::{Coeff, Field, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_coeff(rng: &mut ChaCha8Rng, field: &Field) -> Coeff {
    match field {
        Field::Q => {
            let n = rng.gen_range(-4i64..=4);
            Coeff::Rat(Rational::from(num::BigInt::from(n)))
        }
        Field::Fp(f) => Coeff::Fp(rng.gen_range(0..f.modulus() as u64)),
    }
}

pub fn random_monomial(rng: &mut ChaCha8Rng, nvars: usize, max_degree: u32) -> Monomial {
    let degree = rng.gen_range(0..=max_degree);
    let mut exps = vec![0u32; nvars];
    for _ in 0..degree {
        let i = rng.gen_range(0..nvars);
        exps[i] += 1;
    }
    Monomial::from_exponents(exps)
}

pub fn random_poly(
    rng: &mut ChaCha8Rng,
    ring: &Arc<PolyRing>,
    max_degree: u32,
    max_terms: usize,
) -> Polynomial {
    let n_terms = rng.gen_range(0..=max_terms);
    let terms = (0..n_terms)
        .map(|_| {
            (
                random_coeff(rng, ring.field()),
                random_monomial(rng, ring.nvars(), max_degree),
            )
        })
        .collect();
    Polynomial::from_terms(ring, terms)
}

/// Random polynomial with zero constant term (lies in the ideal of the
/// origin), used where membership should agree with the local ring.
pub fn random_poly_no_constant(
    rng: &mut ChaCha8Rng,
    ring: &Arc<PolyRing>,
    max_degree: u32,
    max_terms: usize,
) -> Polynomial {
    let n_terms = rng.gen_range(1..=max_terms);
    let terms = (0..n_terms)
        .map(|_| {
            let mut m = random_monomial(rng, ring.nvars(), max_degree);
            if m.is_one() {
                let i = rng.gen_range(0..ring.nvars());
                m = m.mul(&Monomial::variable(i, ring.nvars()));
            }
            (random_coeff(rng, ring.field()), m)
        })
        .collect();
    Polynomial::from_terms(ring, terms)
}
