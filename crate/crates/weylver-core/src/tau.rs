//! The operators alpha_ij, pi_2n, mu_k, the Hochschild cocycle tau_2n
//! evaluated by exact simplex integration, its n=1 closed form, and the
//! permuted variants tau^sigma.

use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use itertools::Itertools;
use num::{One, Zero};
use rayon::prelude::*;

use crate::eps::{rat, EpsScalar, Rational};
use crate::error::{Result, WeylError};
use crate::hochschild::{permutation_sign, ChainTensor};
use crate::integrate::{integrate_over_region, psi_branch, OrderedRegion, UPolynomial};
use crate::weyl::{factorial, falling, WeylElement, YExp};

/// The map alpha_ij on chains:
/// (1/2) sum_r ( d_{p_r} a_i (x) d_{q_r} a_j - d_{q_r} a_i (x) d_{p_r} a_j ),
/// acting in slots i and j. Antisymmetry alpha_ij = -alpha_ji holds by the
/// shape of the formula.
pub fn alpha_apply(c: &ChainTensor, i: usize, j: usize) -> Result<ChainTensor> {
    let arity = c.arity();
    for idx in [i, j] {
        if idx >= arity {
            return Err(WeylError::SlotOutOfRange { index: idx, arity });
        }
    }
    if i == j {
        return Err(WeylError::EqualSlotIndices(i));
    }
    let n = c.n();
    let half = EpsScalar::rational(1, 2);
    let mut out = ChainTensor::zero(n, c.degree());
    for (slots, coeff) in c.terms() {
        for r in 1..=n {
            let (pv, qv) = (2 * r - 1, 2 * r);
            let dp_i = slots[i].partial_derivative(pv);
            let dq_j = slots[j].partial_derivative(qv);
            if !dp_i.is_zero() && !dq_j.is_zero() {
                let mut t = slots.clone();
                t[i] = dp_i;
                t[j] = dq_j;
                out.add_elementary(&(coeff * &half), t);
            }
            let dq_i = slots[i].partial_derivative(qv);
            let dp_j = slots[j].partial_derivative(pv);
            if !dq_i.is_zero() && !dp_j.is_zero() {
                let mut t = slots.clone();
                t[i] = dq_i;
                t[j] = dp_j;
                out.add_elementary(&-&(coeff * &half), t);
            }
        }
    }
    Ok(out)
}

/// pi_2n: the antisymmetrized first-derivative sum over S_{2n},
/// sum_sigma sign(sigma) a_0 (x) d_{y_sigma(1)} a_1 (x) ... Kills every
/// tensor with a scalar in a slot >= 1, so it is well defined on the
/// normalized complex.
pub fn pi_apply(c: &ChainTensor) -> Result<ChainTensor> {
    let n = c.n();
    let dim = 2 * n;
    if c.degree() != dim {
        return Err(WeylError::DegreeMismatch {
            expected: dim,
            got: c.degree(),
        });
    }
    let mut out = ChainTensor::zero(n, dim);
    for (slots, coeff) in c.terms() {
        'perm: for perm in (1..=dim).permutations(dim) {
            let sign = permutation_sign(&perm);
            let mut t = Vec::with_capacity(dim + 1);
            t.push(slots[0].clone());
            for (m, &v) in perm.iter().enumerate() {
                let d = slots[m + 1].partial_derivative(v);
                if d.is_zero() {
                    continue 'perm;
                }
                t.push(d);
            }
            out.add_elementary(&coeff.scale(&rat(sign as i64, 1)), t);
        }
    }
    Ok(out)
}

/// mu_k: sum over elementary terms of coefficient times the product of the
/// slots' constant terms a_0(0) ... a_k(0).
pub fn mu_apply(c: &ChainTensor) -> EpsScalar {
    let mut out = EpsScalar::zero();
    for (slots, coeff) in c.terms() {
        let mut v = coeff.clone();
        for f in slots {
            v = &v * &f.eval_at_zero();
            if v.is_zero() {
                break;
            }
        }
        out += &v;
    }
    out
}

/// One pairwise exponential factor exp(factor * alpha_ij) of the integrand.
pub(crate) struct PairSpec {
    i: usize,
    j: usize,
    /// eps times the affine psi branch for this pair, in the u variables.
    factor: UPolynomial,
}

impl PairSpec {
    pub(crate) fn new(i: usize, j: usize, factor: UPolynomial) -> Self {
        PairSpec { i, j, factor }
    }
}

/// Result of applying alpha_ij^k to a pair of monomials: scalar coefficient
/// (including the 1/(a! b!) weights from the exponential expansion, the
/// (1/2)^k and the falling factorials of the derivatives) and the reduced
/// exponent vectors.
fn alpha_power(
    n: usize,
    mi: &YExp,
    mj: &YExp,
    k: u32,
) -> Vec<(Rational, YExp, YExp)> {
    let mut out = Vec::new();
    // (counts per r of + branch, - branch)
    let mut stack: Vec<(usize, u32, Rational, YExp, YExp)> =
        vec![(0, k, Rational::one(), mi.clone(), mj.clone())];
    let half = rat(1, 2);
    while let Some((r, rem, coeff, ei, ej)) = stack.pop() {
        if r == n {
            if rem == 0 {
                out.push((coeff, ei, ej));
            }
            continue;
        }
        let (pi_, qi_) = (2 * r, 2 * r + 1);
        for a in 0..=rem {
            // + branch a times: d_{p_r} on i, d_{q_r} on j
            if ei[pi_] < a || ej[qi_] < a {
                break;
            }
            for b in 0..=(rem - a) {
                // - branch b times: d_{q_r} on i, d_{p_r} on j
                if ei[qi_] < b || ej[pi_] < b {
                    break;
                }
                let mut c = coeff.clone();
                c *= falling(ei[pi_], a) * falling(ei[qi_], b);
                c *= falling(ej[qi_], a) * falling(ej[pi_], b);
                c /= factorial(a) * factorial(b);
                c *= crate::weyl::rat_pow(&half, a + b);
                if b % 2 == 1 {
                    c = -c;
                }
                let mut ei2 = ei.clone();
                let mut ej2 = ej.clone();
                ei2[pi_] -= a;
                ei2[qi_] -= b;
                ej2[qi_] -= a;
                ej2[pi_] -= b;
                stack.push((r + 1, rem - a - b, c, ei2, ej2));
            }
        }
    }
    out
}

fn ydeg(e: &YExp) -> u32 {
    e.iter().sum()
}

/// Expand the product of pairwise exponentials applied to one elementary
/// monomial tensor, keeping the u-polynomial weight, and return the weight
/// of the all-constant tensor (everything else dies under mu).
pub(crate) fn expand_single(
    n: usize,
    kvars: usize,
    slots0: Vec<YExp>,
    w0: UPolynomial,
    pairs: &[PairSpec],
) -> UPolynomial {
    let arity = slots0.len();
    // last pair (in processing order) that touches each slot, for pruning
    let mut last_touch = vec![0usize; arity];
    for (idx, p) in pairs.iter().enumerate() {
        last_touch[p.i] = idx;
        last_touch[p.j] = idx;
    }
    let mut state: BTreeMap<Vec<YExp>, UPolynomial> = BTreeMap::new();
    state.insert(slots0, w0);
    for (idx, pair) in pairs.iter().enumerate() {
        let mut powers: Vec<UPolynomial> = vec![UPolynomial::one(kvars)];
        let mut next: BTreeMap<Vec<YExp>, UPolynomial> = BTreeMap::new();
        for (slots, w) in &state {
            let kmax = ydeg(&slots[pair.i]).min(ydeg(&slots[pair.j]));
            while (powers.len() as u32) <= kmax {
                let last = powers.last().unwrap().mul(&pair.factor);
                powers.push(last);
            }
            for k in 0..=kmax {
                for (coeff, ei, ej) in alpha_power(n, &slots[pair.i], &slots[pair.j], k) {
                    let mut s2 = slots.clone();
                    s2[pair.i] = ei;
                    s2[pair.j] = ej;
                    // prune: a slot past its last pair must already be constant
                    let dead = (0..arity).any(|s| {
                        last_touch[s] <= idx && ydeg(&s2[s]) > 0
                    });
                    if dead {
                        continue;
                    }
                    let add = w
                        .mul(&powers[k as usize])
                        .scale(&EpsScalar::from_rational(coeff));
                    match next.entry(s2) {
                        std::collections::btree_map::Entry::Vacant(v) => {
                            v.insert(add);
                        }
                        std::collections::btree_map::Entry::Occupied(mut o) => {
                            let merged = o.get().add(&add);
                            *o.get_mut() = merged;
                        }
                    }
                }
            }
        }
        state = next;
    }
    let constant_key = vec![vec![0u32; 2 * n]; arity];
    state
        .remove(&constant_key)
        .unwrap_or_else(|| UPolynomial::zero(kvars))
}

/// Split one slot tuple into elementary monomial tensors, folding every
/// scalar into a single coefficient per tensor.
pub(crate) fn monomialize_slots(
    slots: &[WeylElement],
    coeff: &EpsScalar,
) -> Vec<(EpsScalar, Vec<YExp>)> {
    let slot_terms: Vec<Vec<(YExp, EpsScalar)>> = slots
        .iter()
        .map(|f| f.terms().map(|(e, v)| (e.clone(), v.clone())).collect())
        .collect();
    let mut out = Vec::new();
    for combo in slot_terms.iter().multi_cartesian_product() {
        let mut c2 = coeff.clone();
        let mut exps = Vec::with_capacity(combo.len());
        for (e, v) in combo {
            c2 = &c2 * v;
            exps.push(e.clone());
        }
        out.push((c2, exps));
    }
    out
}

/// Split a chain into elementary monomial tensors, merging equal tensors.
fn monomialize(c: &ChainTensor) -> Vec<(EpsScalar, Vec<YExp>)> {
    let mut merged: BTreeMap<Vec<YExp>, EpsScalar> = BTreeMap::new();
    for (slots, coeff) in c.terms() {
        for (c2, exps) in monomialize_slots(slots, coeff) {
            match merged.entry(exps) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(c2);
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    *o.get_mut() += &c2;
                    if o.get().is_zero() {
                        o.remove();
                    }
                }
            }
        }
    }
    merged.into_iter().map(|(e, c)| (c, e)).collect()
}

/// Build the pair factors eps * psi(u_i - u_j) for all 0 <= i < j <= 2n on
/// the ordering region given by `ranks` (u_0 = 0 sits below every u_j, so
/// its branch is always 2 u_0 - 2 u_j + 1 = 1 - 2 u_j).
fn build_pairs(n: usize, ranks: &[usize]) -> Vec<PairSpec> {
    let dim = 2 * n;
    let eps = EpsScalar::eps();
    let mut pairs = Vec::new();
    for i in 0..=dim {
        for j in (i + 1)..=dim {
            let f = if i == 0 {
                // u_0 = 0 sits below every interior point: 1 - 2 u_j
                let mut f = UPolynomial::constant(dim, EpsScalar::one());
                let mut e = vec![0u32; dim];
                e[j - 1] = 1;
                f.add_term(e, &EpsScalar::from_int(-2));
                f
            } else {
                psi_branch(dim, i, j, ranks[i - 1] < ranks[j - 1])
            };
            pairs.push(PairSpec {
                i,
                j,
                factor: f.scale(&eps),
            });
        }
    }
    pairs
}

fn tau_pipeline(n: usize, c: &ChainTensor, region: &OrderedRegion) -> Result<EpsScalar> {
    if c.n() != n {
        return Err(WeylError::DimensionMismatch {
            expected: n,
            got: c.n(),
        });
    }
    let dim = 2 * n;
    if c.degree() != dim {
        return Err(WeylError::DegreeMismatch {
            expected: dim,
            got: c.degree(),
        });
    }
    let pi = pi_apply(c)?;
    let ranks = region.ranks();
    let pairs = build_pairs(n, &ranks);
    let terms = monomialize(&pi);
    let integrand = terms
        .par_iter()
        .map(|(coeff, slots)| {
            let w0 = UPolynomial::constant(dim, coeff.clone());
            expand_single(n, dim, slots.clone(), w0, &pairs)
        })
        .reduce(|| UPolynomial::zero(dim), |a, b| a.add(&b));
    let value = integrate_over_region(&integrand, region)?;
    // The alpha_ij commute, so the factor order is irrelevant; in debug
    // verification mode recompute in the reverse order and compare.
    #[cfg(debug_assertions)]
    {
        let reversed: Vec<PairSpec> = {
            let mut p = build_pairs(n, &ranks);
            p.reverse();
            p
        };
        let integrand_rev = terms
            .par_iter()
            .map(|(coeff, slots)| {
                let w0 = UPolynomial::constant(dim, coeff.clone());
                expand_single(n, dim, slots.clone(), w0, &reversed)
            })
            .reduce(|| UPolynomial::zero(dim), |a, b| a.add(&b));
        debug_assert_eq!(
            integrate_over_region(&integrand_rev, region)?,
            value,
            "pair exponentials must commute"
        );
    }
    Ok(value)
}

/// The Hochschild cocycle tau_2n evaluated on a degree-2n chain:
/// mu after exact integration over the simplex Delta_2n of the pairwise
/// exponential factors exp(eps (2u_i - 2u_j + 1) alpha_ij) applied to
/// pi_2n(a), with u_0 = 0. Each exponential truncates at the order bounded
/// by the y-degrees of its two slots.
pub fn tau_eval(n: usize, c: &ChainTensor) -> Result<EpsScalar> {
    tau_pipeline(n, c, &OrderedRegion::simplex(2 * n))
}

/// tau^sigma: the same pipeline with the psi branch chosen per the ordering
/// region sigma(Delta_2n) = { u_{sigma(1)} <= ... <= u_{sigma(2n)} } and
/// Lebesgue integration over that region.
pub fn tau_sigma_eval(n: usize, sigma: &[usize], c: &ChainTensor) -> Result<EpsScalar> {
    if sigma.len() != 2 * n {
        return Err(WeylError::NotAPermutation(2 * n));
    }
    let region = OrderedRegion::from_permutation(sigma)?;
    tau_pipeline(n, c, &region)
}

// ---------------------------------------------------------------------------
// n = 1 closed form
// ---------------------------------------------------------------------------

/// Default Taylor order for the closed-form power series F.
pub const DEFAULT_F_ORDER: usize = 12;

type TriMap = BTreeMap<[u32; 3], Rational>;

fn tri_add(map: &mut TriMap, key: [u32; 3], c: &Rational) {
    if c.is_zero() {
        return;
    }
    let entry = map.entry(key).or_insert_with(Rational::zero);
    *entry += c;
    if entry.is_zero() {
        map.remove(&key);
    }
}

/// Exact division of f by the binomial (v_a - v_b); panics if not exact
/// (which would mean the singularity of F failed to cancel).
fn divide_by_binomial(f: &TriMap, a: usize, b: usize) -> TriMap {
    let maxd = f.keys().map(|e| e[a]).max().unwrap_or(0) as usize;
    let mut by_deg: Vec<TriMap> = vec![TriMap::new(); maxd + 1];
    for (e, c) in f {
        let mut rest = *e;
        rest[a] = 0;
        tri_add(&mut by_deg[e[a] as usize], rest, c);
    }
    let shift_b = |m: &TriMap| -> TriMap {
        m.iter()
            .map(|(e, c)| {
                let mut e2 = *e;
                e2[b] += 1;
                (e2, c.clone())
            })
            .collect()
    };
    let mut q: Vec<TriMap> = vec![TriMap::new(); maxd.max(1)];
    for d in (1..=maxd).rev() {
        let mut qd = by_deg[d].clone();
        if d < maxd {
            for (e, c) in shift_b(&q[d]) {
                tri_add(&mut qd, e, &c);
            }
        }
        q[d - 1] = qd;
    }
    let mut rem = by_deg[0].clone();
    for (e, c) in shift_b(&q[0]) {
        tri_add(&mut rem, e, &c);
    }
    assert!(rem.is_empty(), "trivariate division must be exact");
    let mut out = TriMap::new();
    for (d, qd) in q.iter().enumerate() {
        for (e, c) in qd {
            let mut e2 = *e;
            e2[a] += d as u32;
            tri_add(&mut out, e2, c);
        }
    }
    out
}

/// Taylor coefficients of the power series
/// F(x,y,z) = -[(x-y)e^{x+y-z} + (y-z)e^{y+z-x} + (z-x)e^{z+x-y}]
///            / (4 (x-y)(y-z)(z-x))
/// up to total degree `order`. The removable singularities are handled by
/// exact division of homogeneous components; the rational form is never
/// evaluated at coinciding arguments.
fn build_f_table(order: usize) -> TriMap {
    let deg_top = order + 3;
    let mut numerator = TriMap::new();
    let perms: [[usize; 3]; 3] = [[0, 1, 2], [1, 2, 0], [2, 0, 1]];
    for perm in perms {
        // (v0 - v1) * exp(v0 + v1 - v2), expanded to total degree deg_top
        let mut expo = TriMap::new();
        for k in 0..deg_top as u32 {
            for i in 0..=k {
                for j in 0..=(k - i) {
                    let l = k - i - j;
                    let mut coeff = Rational::one()
                        / (factorial(i) * factorial(j) * factorial(l));
                    if l % 2 == 1 {
                        coeff = -coeff;
                    }
                    let mut e = [0u32; 3];
                    e[perm[0]] += i;
                    e[perm[1]] += j;
                    e[perm[2]] += l;
                    tri_add(&mut expo, e, &coeff);
                }
            }
        }
        for (e, c) in &expo {
            let mut e1 = *e;
            e1[perm[0]] += 1;
            tri_add(&mut numerator, e1, c);
            let mut e2 = *e;
            e2[perm[1]] += 1;
            tri_add(&mut numerator, e2, &-c);
        }
    }
    // Divide each homogeneous component by (x-y)(y-z)(z-x) and scale by -1/4.
    let mut table = TriMap::new();
    for m in 0..=order {
        let mut part = TriMap::new();
        for (e, c) in &numerator {
            if (e[0] + e[1] + e[2]) as usize == m + 3 {
                tri_add(&mut part, *e, c);
            }
        }
        if part.is_empty() {
            continue;
        }
        let part = divide_by_binomial(&part, 0, 1);
        let part = divide_by_binomial(&part, 1, 2);
        let part = divide_by_binomial(&part, 2, 0);
        for (e, c) in part {
            tri_add(&mut table, e, &(c * rat(-1, 4)));
        }
    }
    table
}

fn f_table(min_order: usize) -> TriMap {
    static CACHE: OnceLock<Mutex<(usize, TriMap)>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| {
        Mutex::new((DEFAULT_F_ORDER, build_f_table(DEFAULT_F_ORDER)))
    });
    let mut guard = cache.lock().expect("F table cache poisoned");
    if guard.0 < min_order {
        *guard = (min_order, build_f_table(min_order));
    }
    guard.1.clone()
}

/// Taylor coefficient of x^a y^b z^c in F (test hook and documentation aid).
pub fn f_taylor_coefficient(a: u32, b: u32, c: u32) -> Rational {
    let table = f_table(((a + b + c) as usize).max(DEFAULT_F_ORDER));
    table.get(&[a, b, c]).cloned().unwrap_or_else(Rational::zero)
}

/// The n = 1 closed form tau_2 = mu_2 . F(eps alpha_01, eps alpha_12,
/// eps alpha_20) . pi_2, with F consumed through its Taylor coefficients in
/// the three commuting nilpotent operators.
pub fn tau_closed_form_n1(c: &ChainTensor) -> Result<EpsScalar> {
    if c.n() != 1 {
        return Err(WeylError::ClosedFormRequiresN1(c.n()));
    }
    if c.degree() != 2 {
        return Err(WeylError::DegreeMismatch {
            expected: 2,
            got: c.degree(),
        });
    }
    let pi = pi_apply(c)?;
    let terms = monomialize(&pi);
    let needed = terms
        .iter()
        .map(|(_, slots)| slots.iter().map(ydeg).sum::<u32>() / 2)
        .max()
        .unwrap_or(0) as usize;
    let table = f_table(needed.max(DEFAULT_F_ORDER));
    let mut out = EpsScalar::zero();
    for (coeff, slots) in &terms {
        let d0 = ydeg(&slots[0]) as i64;
        let d1 = ydeg(&slots[1]) as i64;
        let d2 = ydeg(&slots[2]) as i64;
        // Per-slot exactness forces the unique operator multi-degree:
        // a + c = d0, a + b = d1, b + c = d2.
        let (ta, tb, tc) = (d0 + d1 - d2, d1 + d2 - d0, d2 + d0 - d1);
        if ta < 0 || tb < 0 || tc < 0 || ta % 2 != 0 || tb % 2 != 0 || tc % 2 != 0 {
            continue;
        }
        let (a, b, cc) = ((ta / 2) as u32, (tb / 2) as u32, (tc / 2) as u32);
        let fc = match table.get(&[a, b, cc]) {
            Some(v) => v.clone(),
            None => continue,
        };
        // alpha_20 = -alpha_02
        let mut acc = Rational::zero();
        for (c1, e0a, e1a) in alpha_power(1, &slots[0], &slots[1], a) {
            for (c2, e1b, e2b) in alpha_power(1, &e1a, &slots[2], b) {
                if ydeg(&e1b) != 0 {
                    continue;
                }
                for (c3, e0c, e2c) in alpha_power(1, &e0a, &e2b, cc) {
                    if ydeg(&e0c) == 0 && ydeg(&e2c) == 0 {
                        acc += &c1 * &c2 * &c3;
                    }
                }
            }
        }
        if cc % 2 == 1 {
            acc = -acc;
        }
        // alpha_power carries the 1/k! of the exponential expansion; the
        // Taylor coefficients multiply raw operator powers, so restore the
        // factorials.
        acc *= factorial(a) * factorial(b) * factorial(cc);
        let order = (a + b + cc) as i64;
        out += &coeff
            .scale(&(fc * acc))
            .shift_eps(order);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hochschild::canonical_cycle;

    fn elem(slots: Vec<WeylElement>) -> ChainTensor {
        ChainTensor::elementary(slots)
    }

    #[test]
    fn alpha_examples() {
        let p = WeylElement::p(1, 1);
        let q = WeylElement::q(1, 1);
        let one = WeylElement::one(1);
        let c = elem(vec![p.clone(), q.clone(), one.clone()]);
        let got = alpha_apply(&c, 0, 1).unwrap();
        let want = ChainTensor::from_terms(
            1,
            2,
            vec![(
                EpsScalar::rational(1, 2),
                vec![one.clone(), one.clone(), one.clone()],
            )],
        );
        assert_eq!(got, want);

        let c = elem(vec![q.clone(), q.clone(), one.clone()]);
        assert!(alpha_apply(&c, 0, 1).unwrap().is_zero());

        // antisymmetry
        let c = elem(vec![p.plain_mul(&q), q.plain_mul(&q), p.clone()]);
        let a12 = alpha_apply(&c, 1, 2).unwrap();
        let a21 = alpha_apply(&c, 2, 1).unwrap();
        assert_eq!(a12, a21.neg());

        assert_eq!(
            alpha_apply(&c, 1, 1),
            Err(WeylError::EqualSlotIndices(1))
        );
        assert_eq!(
            alpha_apply(&c, 0, 5),
            Err(WeylError::SlotOutOfRange { index: 5, arity: 3 })
        );
    }

    #[test]
    fn pi_examples() {
        let p = WeylElement::p(1, 1);
        let q = WeylElement::q(1, 1);
        let one = WeylElement::one(1);
        let got = pi_apply(&elem(vec![one.clone(), p.clone(), q.clone()])).unwrap();
        assert_eq!(got, elem(vec![one.clone(), one.clone(), one.clone()]));
        let got = pi_apply(&elem(vec![one.clone(), q.clone(), p.clone()])).unwrap();
        assert_eq!(
            got,
            elem(vec![one.clone(), one.clone(), one.clone()]).neg()
        );
        // scalar slot dies
        let got = pi_apply(&elem(vec![
            one.clone(),
            WeylElement::scalar(1, EpsScalar::eps()),
            q.clone(),
        ]))
        .unwrap();
        assert!(got.is_zero());
    }

    #[test]
    fn mu_examples() {
        let one = WeylElement::one(1);
        let p = WeylElement::p(1, 1);
        assert_eq!(
            mu_apply(&elem(vec![one.clone(), one.clone(), one.clone()])),
            EpsScalar::one()
        );
        assert!(mu_apply(&elem(vec![p, one.clone(), one.clone()])).is_zero());
        let e = WeylElement::scalar(1, EpsScalar::eps());
        let einv = WeylElement::scalar(1, EpsScalar::eps_pow(-1));
        assert_eq!(mu_apply(&elem(vec![e, einv, one])), EpsScalar::one());
    }

    #[test]
    fn tau_normalization_n1() {
        assert_eq!(tau_eval(1, &canonical_cycle(1)).unwrap(), EpsScalar::one());
    }

    #[test]
    fn tau_on_simple_chain() {
        let one = WeylElement::one(1);
        let p = WeylElement::p(1, 1);
        let q = WeylElement::q(1, 1);
        assert_eq!(
            tau_eval(1, &elem(vec![one, p, q])).unwrap(),
            EpsScalar::rational(1, 2)
        );
    }

    #[test]
    fn tau_regression_eps_over_12() {
        let p = WeylElement::p(1, 1);
        let q = WeylElement::q(1, 1);
        let pq = p.plain_mul(&q);
        let got = tau_eval(1, &elem(vec![p, q, pq])).unwrap();
        assert_eq!(got, EpsScalar::term(1, rat(1, 12)));
    }

    #[test]
    fn f_series_base_values() {
        assert_eq!(f_taylor_coefficient(0, 0, 0), rat(1, 2));
        // forced by tau_2(p (x) q (x) pq) = eps/12
        assert_eq!(f_taylor_coefficient(0, 0, 1), rat(1, 6));
    }

    #[test]
    fn closed_form_matches_integral_on_examples() {
        let one = WeylElement::one(1);
        let p = WeylElement::p(1, 1);
        let q = WeylElement::q(1, 1);
        let pq = p.plain_mul(&q);
        for chain in [
            elem(vec![one.clone(), p.clone(), q.clone()]),
            elem(vec![p.clone(), q.clone(), pq.clone()]),
            elem(vec![pq.clone(), pq.clone(), pq.clone()]),
            elem(vec![
                p.plain_mul(&p),
                q.plain_mul(&q),
                pq.plain_mul(&pq),
            ]),
        ] {
            assert_eq!(
                tau_closed_form_n1(&chain).unwrap(),
                tau_eval(1, &chain).unwrap(),
                "chain: {chain:?}"
            );
        }
    }

    #[test]
    fn tau_sigma_identity_permutation_matches() {
        let p = WeylElement::p(1, 1);
        let q = WeylElement::q(1, 1);
        let chain = elem(vec![p.plain_mul(&q), p.clone(), q.clone()]);
        assert_eq!(
            tau_sigma_eval(1, &[1, 2], &chain).unwrap(),
            tau_eval(1, &chain).unwrap()
        );
    }

    #[test]
    fn tau_sigma_transposition_example() {
        // -tau^(12)(1 (x) p (x) q) = tau(1 (x) q (x) p) = -1/2
        let one = WeylElement::one(1);
        let p = WeylElement::p(1, 1);
        let q = WeylElement::q(1, 1);
        let got = tau_sigma_eval(1, &[2, 1], &elem(vec![one, p, q])).unwrap();
        assert_eq!(got, EpsScalar::rational(1, 2));
    }

    #[test]
    fn tau_wrong_degree_errors() {
        let one = WeylElement::one(1);
        let p = WeylElement::p(1, 1);
        assert!(matches!(
            tau_eval(1, &elem(vec![one, p])),
            Err(WeylError::DegreeMismatch { .. })
        ));
    }
}
