//! Seeded random generators for property suites.
//!
//! Distribution (documented so reports are reproducible): an element is a sum
//! of `monomials` monomials; each monomial draws every y-exponent uniformly
//! from 0..=max_y_degree and rejects until the total y-degree is at most
//! max_y_degree; the eps exponent is uniform in eps_window; the coefficient
//! is num/den with num uniform in -coeff_bound..=coeff_bound excluding 0 and
//! den uniform in 1..=coeff_bound. Chains draw each slot independently.

use num::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eps::{EpsScalar, Rational};
use crate::hochschild::ChainTensor;
use crate::lie::GlWeylElement;
use crate::weyl::WeylElement;

#[derive(Clone, Debug)]
pub struct GenParams {
    pub n: usize,
    pub max_y_degree: u32,
    pub eps_window: (i64, i64),
    pub coeff_bound: i64,
    pub monomials: usize,
}

impl GenParams {
    pub fn new(n: usize, max_y_degree: u32) -> Self {
        GenParams {
            n,
            max_y_degree,
            eps_window: (-1, 1),
            coeff_bound: 5,
            monomials: 2,
        }
    }
}

pub struct WeylGen {
    rng: ChaCha8Rng,
    pub params: GenParams,
}

impl WeylGen {
    pub fn new(seed: u64, params: GenParams) -> Self {
        WeylGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            params,
        }
    }

    pub fn rational(&mut self) -> Rational {
        let b = self.params.coeff_bound;
        let mut num = 0i64;
        while num == 0 {
            num = self.rng.gen_range(-b..=b);
        }
        let den = self.rng.gen_range(1..=b);
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    pub fn eps_scalar(&mut self) -> EpsScalar {
        let (lo, hi) = self.params.eps_window;
        EpsScalar::term(self.rng.gen_range(lo..=hi), self.rational())
    }

    fn monomial_exponents(&mut self) -> Vec<u32> {
        let dim = 2 * self.params.n;
        let cap = self.params.max_y_degree;
        loop {
            let exps: Vec<u32> = (0..dim).map(|_| self.rng.gen_range(0..=cap)).collect();
            if exps.iter().sum::<u32>() <= cap {
                return exps;
            }
        }
    }

    pub fn element(&mut self) -> WeylElement {
        let mut out = WeylElement::zero(self.params.n);
        for _ in 0..self.params.monomials {
            let exps = self.monomial_exponents();
            let coeff = self.eps_scalar();
            out.add_term(exps, &coeff);
        }
        out
    }

    /// An element with eps-free coefficients (useful where eps-dependent
    /// quadratic parts must not arise).
    pub fn element_eps_free(&mut self) -> WeylElement {
        let mut out = WeylElement::zero(self.params.n);
        for _ in 0..self.params.monomials {
            let exps = self.monomial_exponents();
            out.add_term(exps, &EpsScalar::from_rational(self.rational()));
        }
        out
    }

    pub fn chain(&mut self, degree: usize) -> ChainTensor {
        let slots: Vec<WeylElement> = (0..=degree).map(|_| self.element()).collect();
        ChainTensor::from_terms(self.params.n, degree, vec![(EpsScalar::one(), slots)])
    }

    /// A normalized chain (constant parts stripped from slots >= 1).
    pub fn normalized_chain(&mut self, degree: usize) -> ChainTensor {
        self.chain(degree).normalize()
    }

    pub fn gl_element(&mut self, nn: usize) -> GlWeylElement {
        let mut out = GlWeylElement::zero(self.params.n, nn);
        for r in 0..nn {
            for c in 0..nn {
                out = out.add(&GlWeylElement::matrix_unit(nn, r, c, &self.element()));
            }
        }
        out
    }

    pub fn point(&mut self, len: usize) -> Vec<Rational> {
        (0..len).map(|_| self.rational()).collect()
    }
}

/// Convenience seeded rng for ad-hoc draws in suites.
pub fn seeded_rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}
