//! Exact integration of polynomial integrands over simplices, permuted
//! simplices and the cube, plus the sawtooth cycle integrals I_j and their
//! Bernoulli closed form.
//!
//! All cube integrals are performed by decomposing the cube into the k!
//! ordering regions `0 <= u_{pi(1)} <= ... <= u_{pi(k)} <= 1`, on which the
//! sawtooth `psi` is a fixed affine function of each difference; the sawtooth
//! is never evaluated at a coincidence point u_i = u_j, which has measure
//! zero.

use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use itertools::Itertools;
use num::{One, Zero};
use rayon::prelude::*;

use crate::eps::{rat, EpsScalar, Rational};
use crate::error::{Result, WeylError};
use crate::weyl::factorial;

/// Polynomial in configuration variables u_1..u_k with EpsScalar coefficients.
///
/// Canonical sparse form: no stored zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPolynomial {
    k: usize,
    terms: BTreeMap<Vec<u32>, EpsScalar>,
}

impl UPolynomial {
    pub fn zero(k: usize) -> Self {
        UPolynomial {
            k,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(k: usize, c: EpsScalar) -> Self {
        let mut out = Self::zero(k);
        out.add_term(vec![0; k], &c);
        out
    }

    pub fn one(k: usize) -> Self {
        Self::constant(k, EpsScalar::one())
    }

    /// The variable u_v (1-based).
    pub fn var(k: usize, v: usize) -> Self {
        assert!(v >= 1 && v <= k);
        let mut exps = vec![0u32; k];
        exps[v - 1] = 1;
        let mut out = Self::zero(k);
        out.add_term(exps, &EpsScalar::one());
        out
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &EpsScalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: &EpsScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.k, rhs.k);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.k, rhs.k);
        let mut out = Self::zero(self.k);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let exps: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(exps, &(c1 * c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &EpsScalar) -> Self {
        let mut out = Self::zero(self.k);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), &(v * c));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.k);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }
}

/// An ordering region `0 <= u_{order[0]} <= u_{order[1]} <= ... <= 1` of the
/// cube, together with an orientation sign. Variable indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedRegion {
    k: usize,
    order: Vec<usize>,
    sign: i8,
}

impl OrderedRegion {
    /// The standard simplex Delta_k: 0 <= u_1 <= ... <= u_k <= 1.
    pub fn simplex(k: usize) -> Self {
        OrderedRegion {
            k,
            order: (1..=k).collect(),
            sign: 1,
        }
    }

    /// Region with the given ascending variable order and orientation sign.
    pub fn new(order: Vec<usize>, sign: i8) -> Result<Self> {
        let k = order.len();
        let mut seen = vec![false; k + 1];
        for &v in &order {
            if v < 1 || v > k || seen[v] {
                return Err(WeylError::NotAPermutation(k));
            }
            seen[v] = true;
        }
        Ok(OrderedRegion { k, order, sign })
    }

    /// The region sigma(Delta_k) = { u : u_{sigma(1)} <= ... <= u_{sigma(k)} },
    /// for sigma given in one-line notation (1-based values).
    pub fn from_permutation(sigma: &[usize]) -> Result<Self> {
        Self::new(sigma.to_vec(), 1)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// Ascending variable order (1-based indices).
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// rank[v-1] = position of u_v in the ascending chain (0 = smallest).
    pub fn ranks(&self) -> Vec<usize> {
        let mut ranks = vec![0usize; self.k];
        for (pos, &v) in self.order.iter().enumerate() {
            ranks[v - 1] = pos;
        }
        ranks
    }

    /// All k! ordering regions of the cube, each with sign +1.
    pub fn all_orderings(k: usize) -> Vec<OrderedRegion> {
        (1..=k)
            .permutations(k)
            .map(|order| OrderedRegion { k, order, sign: 1 })
            .collect()
    }
}

/// Exact value of the integral of u_1^{m_1} ... u_k^{m_k} over the standard
/// simplex 0 <= u_1 <= ... <= u_k <= 1, by iterated antidifferentiation:
/// integrating out u_1, then u_2, ..., gives the product of the reciprocals
/// of the running exponent sums.
pub fn simplex_monomial_integral(exponents: &[u32]) -> Rational {
    let mut acc = 0u64;
    let mut out = Rational::one();
    for (i, &m) in exponents.iter().enumerate() {
        acc += m as u64;
        out /= Rational::from_integer((acc + i as u64 + 1).into());
    }
    out
}

/// Exact integral of `p` over the ordering region `r`, including the region's
/// orientation sign. Each monomial reduces to a standard-simplex integral by
/// the substitution v_i = u_{order[i]}.
pub fn integrate_over_region(p: &UPolynomial, r: &OrderedRegion) -> Result<EpsScalar> {
    if p.k() != r.k() {
        return Err(WeylError::ArityMismatch {
            expected: r.k(),
            got: p.k(),
        });
    }
    let mut out = EpsScalar::zero();
    for (exps, coeff) in p.terms() {
        let permuted: Vec<u32> = r.order.iter().map(|&v| exps[v - 1]).collect();
        let vol = simplex_monomial_integral(&permuted);
        out += &coeff.scale(&vol);
    }
    if r.sign < 0 {
        out = -&out;
    }
    Ok(out)
}

/// The affine branch of the sawtooth psi(u_i - u_j) on a fixed ordering
/// region: 2(u_i - u_j) + 1 where u_i < u_j, and 2(u_i - u_j) - 1 where
/// u_i > u_j (psi has period 1 and equals 2u+1 on [-1, 0)). The sawtooth is
/// only ever consumed through these branches; the coincidence set u_i = u_j
/// has measure zero and is never touched.
pub fn psi_branch(k: usize, i: usize, j: usize, i_below_j: bool) -> UPolynomial {
    let mut out = UPolynomial::constant(
        k,
        if i_below_j {
            EpsScalar::one()
        } else {
            EpsScalar::from_int(-1)
        },
    );
    out = out.add(&UPolynomial::var(k, i).scale(&EpsScalar::from_int(2)));
    out = out.add(&UPolynomial::var(k, j).scale(&EpsScalar::from_int(-2)));
    out
}

/// The cycle integral I_j of psi(u_1-u_2) psi(u_2-u_3) ... psi(u_j-u_1) over
/// the cube [0,1]^j, evaluated exactly by ordering decomposition.
///
/// On each of the j! ordering regions the substitution v_i = u_{order[i]}
/// maps the region to the standard simplex and every sawtooth factor to the
/// affine form 2 v_{rank(a)} - 2 v_{rank(b)} +- 1, so the whole integral is a
/// single simplex integral of one big integer-coefficient polynomial
/// (coefficients stay far below i64; the per-monomial count is bounded by
/// j! 4^j, about 10^9 for j = 8).
pub fn psi_cycle_integral(j: usize) -> Rational {
    assert!(j >= 2, "cycle integrals need j >= 2");
    let orderings: Vec<Vec<usize>> = (1..=j).permutations(j).collect();
    let merged: std::collections::HashMap<Vec<u8>, i64> = orderings
        .par_chunks(64.max(orderings.len() / 256))
        .map(|chunk| {
            let mut map: std::collections::HashMap<Vec<u8>, i64> =
                std::collections::HashMap::new();
            let mut exps = vec![0u8; j];
            for ordering in chunk {
                let mut ranks = vec![0usize; j];
                for (pos, &v) in ordering.iter().enumerate() {
                    ranks[v - 1] = pos;
                }
                // factor c joins u_{c+1} and u_{c+2 mod j} (0-based c)
                expand_cycle_factors(j, 0, 1, &ranks, &mut exps, &mut map);
            }
            map
        })
        .reduce(std::collections::HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let mut total = Rational::zero();
    for (exps, coeff) in merged {
        if coeff == 0 {
            continue;
        }
        let wide: Vec<u32> = exps.iter().map(|&e| e as u32).collect();
        total += Rational::from_integer(coeff.into()) * simplex_monomial_integral(&wide);
    }
    total
}

fn expand_cycle_factors(
    j: usize,
    c: usize,
    coeff: i64,
    ranks: &[usize],
    exps: &mut Vec<u8>,
    map: &mut std::collections::HashMap<Vec<u8>, i64>,
) {
    if c == j {
        *map.entry(exps.clone()).or_insert(0) += coeff;
        return;
    }
    let a = c;
    let b = (c + 1) % j;
    let (ra, rb) = (ranks[a], ranks[b]);
    let s = if ra < rb { 1 } else { -1 };
    // branch 2 v_{ra}
    exps[ra] += 1;
    expand_cycle_factors(j, c + 1, coeff * 2, ranks, exps, map);
    exps[ra] -= 1;
    // branch -2 v_{rb}
    exps[rb] += 1;
    expand_cycle_factors(j, c + 1, -coeff * 2, ranks, exps, map);
    exps[rb] -= 1;
    // constant branch +-1
    expand_cycle_factors(j, c + 1, coeff * s, ranks, exps, map);
}

/// Bernoulli number B_m (B_1 = -1/2 convention), memoized; computed by the
/// defining recurrence sum_{k<=m} C(m+1,k) B_k = 0.
pub fn bernoulli(m: usize) -> Rational {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![Rational::one()]));
    let mut cache = cache.lock().expect("bernoulli cache poisoned");
    while cache.len() <= m {
        let n = cache.len();
        let mut acc = Rational::zero();
        for (k, bk) in cache.iter().enumerate() {
            acc += binomial(n + 1, k) * bk;
        }
        let bn = -acc / binomial(n + 1, n);
        cache.push(bn);
    }
    cache[m].clone()
}

pub fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let mut out = Rational::one();
    for i in 0..k {
        out *= Rational::from_integer((n - i).into());
    }
    out / factorial(k as u32)
}

/// Closed form for the cycle integrals: 0 for odd j, and
/// I_{2m} = -B_{2m} 4^m / (2m)! for even j = 2m. This is the zeta-value
/// expression 2 (pi i)^{-2m} zeta(2m) rationalized through
/// zeta(2m) = (-1)^{m+1} B_{2m} (2 pi)^{2m} / (2 (2m)!).
pub fn closed_form_cycle_integral(j: usize) -> Rational {
    assert!(j >= 2, "cycle integrals need j >= 2");
    if j % 2 == 1 {
        return Rational::zero();
    }
    let m = j / 2;
    let four_pow = rat(4, 1).pow(m as i32);
    -bernoulli(j) * four_pow / factorial(j as u32)
}
