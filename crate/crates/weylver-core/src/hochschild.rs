//! Hochschild chains on the Weyl algebra: the boundary operator, the
//! normalized complex and the canonical cycle c_2n.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::eps::EpsScalar;
use crate::error::{Result, WeylError};
use crate::weyl::WeylElement;

/// Formal EpsScalar-linear combination of elementary tensors
/// a_0 (x) ... (x) a_k of Weyl elements; a Hochschild k-chain.
///
/// Canonicalization merges identical tuples and drops zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainTensor {
    n: usize,
    arity: usize, // k + 1 tensor slots
    terms: BTreeMap<Vec<WeylElement>, EpsScalar>,
}

impl ChainTensor {
    pub fn zero(n: usize, degree: usize) -> Self {
        ChainTensor {
            n,
            arity: degree + 1,
            terms: BTreeMap::new(),
        }
    }

    /// A single elementary tensor with coefficient 1.
    pub fn elementary(slots: Vec<WeylElement>) -> Self {
        Self::from_terms(slots[0].n(), slots.len() - 1, vec![(EpsScalar::one(), slots)])
    }

    pub fn from_terms(
        n: usize,
        degree: usize,
        terms: Vec<(EpsScalar, Vec<WeylElement>)>,
    ) -> Self {
        let mut out = Self::zero(n, degree);
        for (c, slots) in terms {
            out.add_elementary(&c, slots);
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.arity - 1
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<WeylElement>, &EpsScalar)> {
        self.terms.iter()
    }

    /// Add a multiple of an elementary tensor. Canonicalization expands every
    /// slot into monic monomials (coefficients hoisted into the term scalar),
    /// so structurally equal chains are equal as multilinear objects: the
    /// unique normal form that zero-tolerance testing requires.
    pub fn add_elementary(&mut self, c: &EpsScalar, slots: Vec<WeylElement>) {
        assert_eq!(slots.len(), self.arity, "wrong number of tensor slots");
        assert!(slots.iter().all(|f| f.n() == self.n), "dimension mismatch");
        if c.is_zero() || slots.iter().any(WeylElement::is_zero) {
            return;
        }
        let slot_terms: Vec<Vec<(Vec<u32>, EpsScalar)>> = slots
            .iter()
            .map(|f| f.terms().map(|(e, v)| (e.clone(), v.clone())).collect())
            .collect();
        for combo in slot_terms.iter().multi_cartesian_product() {
            let mut coeff = c.clone();
            let mut monic = Vec::with_capacity(combo.len());
            for (e, v) in combo {
                coeff = &coeff * v;
                monic.push(WeylElement::monomial(self.n, e.clone(), EpsScalar::one()));
            }
            match self.terms.entry(monic) {
                std::collections::btree_map::Entry::Vacant(entry) => {
                    entry.insert(coeff);
                }
                std::collections::btree_map::Entry::Occupied(mut entry) => {
                    *entry.get_mut() += &coeff;
                    if entry.get().is_zero() {
                        entry.remove();
                    }
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.arity, rhs.arity);
        let mut out = self.clone();
        for (slots, c) in &rhs.terms {
            out.add_elementary(c, slots.clone());
        }
        out
    }

    pub fn scale(&self, c: &EpsScalar) -> Self {
        let mut out = Self::zero(self.n, self.degree());
        for (slots, v) in &self.terms {
            out.add_elementary(&(v * c), slots.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&EpsScalar::from_int(-1))
    }

    /// Hochschild boundary: products taken with the Moyal product.
    pub fn boundary(&self) -> Result<ChainTensor> {
        let k = self.degree();
        if k == 0 {
            return Err(WeylError::DegreeZeroBoundary);
        }
        let mut out = ChainTensor::zero(self.n, k - 1);
        for (slots, c) in &self.terms {
            // a_0 * a_1 (x) a_2 (x) ... (x) a_k
            {
                let mut t = Vec::with_capacity(k);
                t.push(slots[0].moyal(&slots[1])?);
                t.extend_from_slice(&slots[2..]);
                out.add_elementary(c, t);
            }
            // middle contractions with alternating signs
            for j in 1..k {
                let mut t = Vec::with_capacity(k);
                t.extend_from_slice(&slots[..j]);
                t.push(slots[j].moyal(&slots[j + 1])?);
                t.extend_from_slice(&slots[j + 2..]);
                let signed = if j % 2 == 1 { -c } else { c.clone() };
                out.add_elementary(&signed, t);
            }
            // wrap-around term (-1)^k a_k * a_0 (x) a_1 (x) ... (x) a_{k-1}
            {
                let mut t = Vec::with_capacity(k);
                t.push(slots[k].moyal(&slots[0])?);
                t.extend_from_slice(&slots[1..k]);
                let signed = if k % 2 == 1 { -c } else { c.clone() };
                out.add_elementary(&signed, t);
            }
        }
        Ok(out)
    }

    /// Projection onto the normalized complex: in every slot >= 1 the
    /// constant part is subtracted (the class of f + c1 is f); terms that
    /// acquire a zero slot are dropped.
    pub fn normalize(&self) -> ChainTensor {
        let mut out = ChainTensor::zero(self.n, self.degree());
        for (slots, c) in &self.terms {
            let mut t = Vec::with_capacity(self.arity);
            t.push(slots[0].clone());
            for f in &slots[1..] {
                let constant = WeylElement::scalar(self.n, f.eval_at_zero());
                t.push(f - &constant);
            }
            out.add_elementary(c, t);
        }
        out
    }
}

/// The canonical cycle c_2n = sum_sigma sign(sigma)
/// 1 (x) y_{sigma(1)} (x) ... (x) y_{sigma(2n)}, with (2n)! elementary terms.
pub fn canonical_cycle(n: usize) -> ChainTensor {
    assert!(n >= 1);
    let dim = 2 * n;
    let mut out = ChainTensor::zero(n, dim);
    for perm in (1..=dim).permutations(dim) {
        let sign = permutation_sign(&perm);
        let mut slots = Vec::with_capacity(dim + 1);
        slots.push(WeylElement::one(n));
        for &v in &perm {
            slots.push(WeylElement::y(n, v));
        }
        out.add_elementary(&EpsScalar::from_int(sign as i64), slots);
    }
    out
}

/// Sign of a permutation in one-line notation (1-based values).
pub fn permutation_sign(perm: &[usize]) -> i8 {
    let mut sign = 1i8;
    for i in 0..perm.len() {
        for j in (i + 1)..perm.len() {
            if perm[i] > perm[j] {
                sign = -sign;
            }
        }
    }
    sign
}
