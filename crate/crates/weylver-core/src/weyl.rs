//! The polynomial Weyl algebra: sparse elements, Moyal product, eps-bracket,
//! grading, and the sp(2n) embedding and action.
//!
//! Variable convention, fixed globally: `y_{2i-1} = p_i`, `y_{2i} = q_i`.
//! The symplectic form is `omega = sum dq_i /\ dp_i`, i.e. the only nonzero
//! components are `omega_{2i,2i-1} = +1` and `omega_{2i-1,2i} = -1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::{One, Signed, Zero};

use crate::eps::{fmt_rational, EpsScalar, Rational};
use crate::error::{Result, WeylError};

/// Exponent vector of a y-monomial; length 2n.
pub type YExp = Vec<u32>;

/// Falling factorial m(m-1)...(m-c+1) as an exact rational.
pub(crate) fn falling(m: u32, c: u32) -> Rational {
    let mut out = Rational::one();
    for i in 0..c {
        out *= Rational::from_integer((m - i).into());
    }
    out
}

/// Component of the standard symplectic form in y-coordinates (1-based).
pub fn omega_component(i: usize, j: usize) -> i64 {
    if i.is_multiple_of(2) && j == i - 1 {
        1
    } else if i % 2 == 1 && j == i + 1 {
        -1
    } else {
        0
    }
}

/// Sparse polynomial in y_1..y_2n with `EpsScalar` coefficients.
///
/// Canonical form: no stored zero coefficients; equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeylElement {
    n: usize,
    terms: BTreeMap<YExp, EpsScalar>,
}

impl WeylElement {
    pub fn zero(n: usize) -> Self {
        WeylElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, EpsScalar::one())
    }

    pub fn scalar(n: usize, c: EpsScalar) -> Self {
        let mut out = Self::zero(n);
        out.add_term(vec![0; 2 * n], &c);
        out
    }

    /// The monomial `coeff * y^exps`.
    pub fn monomial(n: usize, exps: YExp, coeff: EpsScalar) -> Self {
        assert_eq!(exps.len(), 2 * n, "exponent vector must have length 2n");
        let mut out = Self::zero(n);
        out.add_term(exps, &coeff);
        out
    }

    /// The generator y_v, 1-based (y_{2i-1} = p_i, y_{2i} = q_i).
    pub fn y(n: usize, v: usize) -> Self {
        assert!(v >= 1 && v <= 2 * n, "y index out of range");
        let mut exps = vec![0u32; 2 * n];
        exps[v - 1] = 1;
        Self::monomial(n, exps, EpsScalar::one())
    }

    pub fn p(n: usize, i: usize) -> Self {
        Self::y(n, 2 * i - 1)
    }

    pub fn q(n: usize, i: usize) -> Self {
        Self::y(n, 2 * i)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&YExp, &EpsScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, exps: YExp, c: &EpsScalar) {
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

    pub fn scale(&self, c: &EpsScalar) -> Self {
        let mut out = Self::zero(self.n);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), &(v * c));
        }
        out
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.n);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), &v.scale(c));
        }
        out
    }

    /// Commutative polynomial product (the eps-order-zero part of moyal).
    pub fn plain_mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let exps: YExp = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(exps, &(c1 * c2));
            }
        }
        out
    }

    /// Formal partial derivative in y_v (1-based).
    pub fn partial_derivative(&self, v: usize) -> Self {
        assert!(v >= 1 && v <= 2 * self.n, "derivative index out of range");
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            let m = e[v - 1];
            if m == 0 {
                continue;
            }
            let mut exps = e.clone();
            exps[v - 1] = m - 1;
            out.add_term(exps, &c.scale(&Rational::from_integer(m.into())));
        }
        out
    }

    /// Constant term a(0): the coefficient of the all-zero y-exponent.
    pub fn eval_at_zero(&self) -> EpsScalar {
        self.terms
            .get(&vec![0u32; 2 * self.n])
            .cloned()
            .unwrap_or_else(EpsScalar::zero)
    }

    /// True if the element has no y dependence (pure EpsScalar).
    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&m| m == 0))
    }

    /// Maximal total y-degree over all monomials (zero for the zero element).
    pub fn y_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    /// The homogeneous part of total y-degree d.
    pub fn y_homogeneous_part(&self, d: u32) -> Self {
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            if e.iter().sum::<u32>() == d {
                out.add_term(e.clone(), c);
            }
        }
        out
    }

    /// Graded degree sum(y-exponents) + 2*(eps-exponent) if homogeneous,
    /// `None` otherwise. The zero element is homogeneous of every degree;
    /// we return `Some(0)` for it.
    pub fn graded_degree(&self) -> Option<i64> {
        let mut deg: Option<i64> = None;
        for (e, c) in &self.terms {
            let ydeg = e.iter().sum::<u32>() as i64;
            for (eps_exp, _) in c.terms() {
                let d = ydeg + 2 * eps_exp;
                match deg {
                    None => deg = Some(d),
                    Some(prev) if prev != d => return None,
                    _ => {}
                }
            }
        }
        Some(deg.unwrap_or(0))
    }

    fn check_dim(&self, rhs: &Self) -> Result<()> {
        if self.n != rhs.n {
            return Err(WeylError::DimensionMismatch {
                expected: self.n,
                got: rhs.n,
            });
        }
        Ok(())
    }

    /// Moyal product f*g = m(exp(eps alpha)(f(x)g)).
    ///
    /// Expanded per generator pair by the closed bidifferential formula
    /// f*g = sum_{a,b} (eps/2)^{|a|+|b|} (-1)^{|b|} / (a! b!)
    ///       (d_p^a d_q^b f)(d_q^a d_p^b g);
    /// the sum truncates because each application lowers both y-degrees.
    pub fn moyal(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        let n = self.n;
        let mut out = Self::zero(n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                // Per-variable bounds: a_r <= min(f_p, g_q), b_r <= min(f_q, g_p).
                let mut stack = vec![(0usize, vec![0u32; n], vec![0u32; n])];
                let mut choices = Vec::new();
                while let Some((r, a, b)) = stack.pop() {
                    if r == n {
                        choices.push((a, b));
                        continue;
                    }
                    let amax = e1[2 * r].min(e2[2 * r + 1]);
                    let bmax = e1[2 * r + 1].min(e2[2 * r]);
                    for ar in 0..=amax {
                        for br in 0..=bmax {
                            let mut a2 = a.clone();
                            let mut b2 = b.clone();
                            a2[r] = ar;
                            b2[r] = br;
                            stack.push((r + 1, a2, b2));
                        }
                    }
                }
                for (a, b) in choices {
                    let order: u32 = a.iter().sum::<u32>() + b.iter().sum::<u32>();
                    let mut coeff = Rational::one();
                    let mut exps = vec![0u32; 2 * n];
                    for r in 0..n {
                        coeff *= falling(e1[2 * r], a[r])
                            * falling(e1[2 * r + 1], b[r])
                            * falling(e2[2 * r + 1], a[r])
                            * falling(e2[2 * r], b[r]);
                        coeff /= factorial(a[r]) * factorial(b[r]);
                        if b[r] % 2 == 1 {
                            coeff = -coeff;
                        }
                        exps[2 * r] = e1[2 * r] - a[r] + e2[2 * r] - b[r];
                        exps[2 * r + 1] = e1[2 * r + 1] - b[r] + e2[2 * r + 1] - a[r];
                    }
                    // (eps/2)^order
                    let half_pow = rat_pow(&crate::eps::rat(1, 2), order);
                    let scalar = (c1 * c2)
                        .scale(&(coeff * half_pow))
                        .shift_eps(order as i64);
                    out.add_term(exps, &scalar);
                }
            }
        }
        Ok(out)
    }

    /// The eps-bracket [f,g] = (f*g - g*f)/eps.
    ///
    /// Division is exact because the commutator has no eps^0 term relative to
    /// the factors; divisibility is asserted and an error is returned if it
    /// fails (which would expose a bug in `moyal`).
    pub fn bracket(&self, rhs: &Self) -> Result<Self> {
        let fg = self.moyal(rhs)?;
        let gf = rhs.moyal(self)?;
        let comm = &fg - &gf;
        let shift = min_eps_exponent(self) + min_eps_exponent(rhs);
        let mut out = Self::zero(self.n);
        for (e, c) in &comm.terms {
            // The commutator gains at least one eps power over the product of
            // the inputs' eps contents; check termwise and divide.
            let divided = c.shift_eps(-shift).div_eps_exact()?;
            out.add_term(e.clone(), &divided.shift_eps(shift));
        }
        Ok(out)
    }

    /// Shift y -> x + y: returns f(x + y) for a rational point x of length 2n.
    pub fn shift(&self, x: &[Rational]) -> Self {
        assert_eq!(x.len(), 2 * self.n, "point must have 2n coordinates");
        let n = self.n;
        let mut out = Self::zero(n);
        for (e, c) in &self.terms {
            // Binomial expansion per variable.
            let mut partial: Vec<(YExp, Rational)> =
                vec![(vec![0u32; 2 * n], Rational::one())];
            for (v, &m) in e.iter().enumerate() {
                let mut next = Vec::new();
                for k in 0..=m {
                    let binom = falling(m, k) / factorial(k);
                    let xpow = rat_pow(&x[v], m - k);
                    for (exps, coeff) in &partial {
                        let mut e2 = exps.clone();
                        e2[v] = k;
                        next.push((e2, coeff * &binom * &xpow));
                    }
                }
                partial = next;
            }
            for (exps, coeff) in partial {
                out.add_term(exps, &c.scale(&coeff));
            }
        }
        out
    }

    /// Evaluate at a rational point (all y replaced by coordinates of x).
    pub fn eval_at(&self, x: &[Rational]) -> EpsScalar {
        self.shift(x).eval_at_zero()
    }
}

/// k! as an exact rational.
pub fn factorial(k: u32) -> Rational {
    falling(k, k)
}

/// r^k for a non-negative integer k.
pub fn rat_pow(r: &Rational, k: u32) -> Rational {
    let mut out = Rational::one();
    for _ in 0..k {
        out *= r;
    }
    out
}

/// Smallest eps exponent appearing in any coefficient (0 for the zero element).
fn min_eps_exponent(f: &WeylElement) -> i64 {
    f.terms
        .values()
        .filter_map(EpsScalar::min_exp)
        .min()
        .unwrap_or(0)
}

impl Add for &WeylElement {
    type Output = WeylElement;
    fn add(self, rhs: &WeylElement) -> WeylElement {
        assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl Sub for &WeylElement {
    type Output = WeylElement;
    fn sub(self, rhs: &WeylElement) -> WeylElement {
        self + &(-rhs)
    }
}

impl Neg for &WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        WeylElement {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

/// Renders in the CLI expression grammar: one summand per (y-monomial,
/// eps-power) pair, e.g. `p1^2 + 1/2*e^2*q1 - 3*e^-1`.
impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let mut vars = String::new();
            for (v, &m) in e.iter().enumerate() {
                if m == 0 {
                    continue;
                }
                if !vars.is_empty() {
                    vars.push('*');
                }
                let name = if v % 2 == 0 {
                    format!("p{}", v / 2 + 1)
                } else {
                    format!("q{}", v / 2 + 1)
                };
                vars.push_str(&name);
                if m > 1 {
                    vars.push_str(&format!("^{m}"));
                }
            }
            for (eps_exp, coeff) in c.terms().collect::<Vec<_>>().into_iter().rev() {
                let neg = coeff.is_negative();
                if first {
                    if neg {
                        write!(f, "-")?;
                    }
                    first = false;
                } else if neg {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
                let abs = coeff.abs();
                let mut factors: Vec<String> = Vec::new();
                if !abs.is_one() {
                    factors.push(fmt_rational(&abs));
                }
                match *eps_exp {
                    0 => {}
                    1 => factors.push("e".to_string()),
                    k => factors.push(format!("e^{k}")),
                }
                if !vars.is_empty() {
                    factors.push(vars.clone());
                }
                if factors.is_empty() {
                    write!(f, "1")?;
                } else {
                    write!(f, "{}", factors.join("*"))?;
                }
            }
        }
        Ok(())
    }
}

/// Element of sp(2n): a 2n x 2n rational matrix A = (a^i_j) whose lowered
/// matrix a_{ij} = sum_k omega_{ik} a^k_j is symmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpMatrix {
    n: usize,
    entries: Vec<Rational>, // row-major a^i_j, dimension 2n x 2n
}

impl SpMatrix {
    pub fn new(n: usize, entries: Vec<Rational>) -> Result<Self> {
        assert_eq!(entries.len(), 4 * n * n, "entries must be 2n x 2n");
        let m = SpMatrix { n, entries };
        if !m.is_sp() {
            return Err(WeylError::SpInvariantViolated);
        }
        Ok(m)
    }

    pub fn zero(n: usize) -> Self {
        SpMatrix {
            n,
            entries: vec![Rational::zero(); 4 * n * n],
        }
    }

    /// Build from the symmetric lowered matrix a_{ij} via a^k_j = -sum_i omega_{ki} a_{ij}.
    pub fn from_lowered(n: usize, lowered: &[Rational]) -> Result<Self> {
        assert_eq!(lowered.len(), 4 * n * n);
        let dim = 2 * n;
        for i in 0..dim {
            for j in 0..i {
                if lowered[i * dim + j] != lowered[j * dim + i] {
                    return Err(WeylError::SpInvariantViolated);
                }
            }
        }
        let mut entries = vec![Rational::zero(); 4 * n * n];
        for k in 0..dim {
            for j in 0..dim {
                let mut v = Rational::zero();
                for i in 0..dim {
                    let w = omega_component(k + 1, i + 1);
                    if w != 0 {
                        v -= Rational::from_integer(w.into()) * &lowered[i * dim + j];
                    }
                }
                entries[k * dim + j] = v;
            }
        }
        Ok(SpMatrix { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * 2 * self.n + j]
    }

    /// Lowered matrix a_{ij} = sum_k omega_{ik} a^k_j.
    pub fn lowered(&self, i: usize, j: usize) -> Rational {
        let mut v = Rational::zero();
        for k in 0..2 * self.n {
            let w = omega_component(i + 1, k + 1);
            if w != 0 {
                v += Rational::from_integer(w.into()) * self.entry(k, j);
            }
        }
        v
    }

    pub fn is_sp(&self) -> bool {
        let dim = 2 * self.n;
        for i in 0..dim {
            for j in 0..i {
                if self.lowered(i, j) != self.lowered(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// The quadratic polynomial corresponding to A: (1/2) sum a_{ij} y_i y_j.
    ///
    /// Sign convention: with the derivative definition of the action
    /// (`act`), the tilde map is a plain Lie-algebra homomorphism,
    /// ([A,B])~ = [A~, B~]_eps, with no extra sign. This is pinned by the
    /// `tilde_is_a_lie_homomorphism` tests against the derivative oracle.
    pub fn to_quadratic(&self) -> WeylElement {
        let dim = 2 * self.n;
        let mut out = WeylElement::zero(self.n);
        let half = crate::eps::rat(1, 2);
        for i in 0..dim {
            for j in 0..dim {
                let a = self.lowered(i, j);
                if a.is_zero() {
                    continue;
                }
                let mut exps = vec![0u32; dim];
                exps[i] += 1;
                exps[j] += 1;
                out.add_term(exps, &EpsScalar::from_rational(&a * &half));
            }
        }
        out
    }

    /// The derivation A f(y) = d/dt f(exp(-tA) y)|_{t=0} = -sum a^i_j y_j d_{y_i} f.
    pub fn act(&self, f: &WeylElement) -> Result<WeylElement> {
        if f.n() != self.n {
            return Err(WeylError::DimensionMismatch {
                expected: self.n,
                got: f.n(),
            });
        }
        let dim = 2 * self.n;
        let mut out = WeylElement::zero(self.n);
        for i in 0..dim {
            let df = f.partial_derivative(i + 1);
            if df.is_zero() {
                continue;
            }
            for j in 0..dim {
                let a = self.entry(i, j);
                if a.is_zero() {
                    continue;
                }
                let yj = WeylElement::y(self.n, j + 1);
                out = &out - &yj.plain_mul(&df).scale_rational(a);
            }
        }
        Ok(out)
    }

    /// Matrix commutator [A, B] = AB - BA (again an sp matrix).
    pub fn commutator(&self, rhs: &SpMatrix) -> SpMatrix {
        assert_eq!(self.n, rhs.n);
        let dim = 2 * self.n;
        let mut entries = vec![Rational::zero(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                let mut v = Rational::zero();
                for k in 0..dim {
                    v += self.entry(i, k) * rhs.entry(k, j);
                    v -= rhs.entry(i, k) * self.entry(k, j);
                }
                entries[i * dim + j] = v;
            }
        }
        SpMatrix { n: self.n, entries }
    }
}

/// A basis of sp(2n) built from the symmetric lowered matrices
/// e_{ij} + e_{ji}, i <= j.
pub fn sp_basis(n: usize) -> Vec<SpMatrix> {
    let dim = 2 * n;
    let mut out = Vec::new();
    for i in 0..dim {
        for j in i..dim {
            let mut lowered = vec![Rational::zero(); dim * dim];
            lowered[i * dim + j] = Rational::one();
            lowered[j * dim + i] = Rational::one();
            out.push(SpMatrix::from_lowered(n, &lowered).expect("symmetric by construction"));
        }
    }
    out
}

/// The quadratic monomials y_i y_j (i <= j), spanning the image of sp(2n)
/// under the tilde map.
pub fn quadratic_basis(n: usize) -> Vec<WeylElement> {
    let dim = 2 * n;
    let mut out = Vec::new();
    for i in 0..dim {
        for j in i..dim {
            let mut exps = vec![0u32; dim];
            exps[i] += 1;
            exps[j] += 1;
            out.push(WeylElement::monomial(n, exps, EpsScalar::one()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eps::rat;

    fn pq(n: usize) -> (WeylElement, WeylElement) {
        (WeylElement::p(n, 1), WeylElement::q(n, 1))
    }

    #[test]
    fn defining_relation() {
        let (p, q) = pq(1);
        let lhs = &p.moyal(&q).unwrap() - &q.moyal(&p).unwrap();
        assert_eq!(lhs, WeylElement::scalar(1, EpsScalar::eps()));
        // cross indices commute
        let p1 = WeylElement::p(2, 1);
        let q2 = WeylElement::q(2, 2);
        let comm = &p1.moyal(&q2).unwrap() - &q2.moyal(&p1).unwrap();
        assert!(comm.is_zero());
    }

    #[test]
    fn moyal_unit() {
        let (p, q) = pq(1);
        let f = &p.plain_mul(&p) + &q;
        assert_eq!(WeylElement::one(1).moyal(&f).unwrap(), f);
        assert_eq!(f.moyal(&WeylElement::one(1)).unwrap(), f);
    }

    #[test]
    fn moyal_p2_q2() {
        // p^2 * q^2 = p^2q^2 + 2 eps pq + eps^2/2
        let (p, q) = pq(1);
        let got = p.plain_mul(&p).moyal(&q.plain_mul(&q)).unwrap();
        let mut want = WeylElement::monomial(1, vec![2, 2], EpsScalar::one());
        want.add_term(vec![1, 1], &EpsScalar::term(1, rat(2, 1)));
        want.add_term(vec![0, 0], &EpsScalar::term(2, rat(1, 2)));
        assert_eq!(got, want);
    }

    #[test]
    fn bracket_examples() {
        let (p, q) = pq(1);
        assert_eq!(p.bracket(&q).unwrap(), WeylElement::one(1));
        let f = &p.plain_mul(&q) + &WeylElement::scalar(1, EpsScalar::eps());
        assert!(f.bracket(&f).unwrap().is_zero());
        // [pq, p] = -p
        assert_eq!(p.plain_mul(&q).bracket(&p).unwrap(), -&p);
    }

    #[test]
    fn partial_derivative_examples() {
        let (p, q) = pq(1);
        let f = p.plain_mul(&p).plain_mul(&q); // p^2 q
        assert_eq!(
            f.partial_derivative(1),
            p.plain_mul(&q).scale_rational(&rat(2, 1))
        );
        assert!(p.partial_derivative(2).is_zero());
        let ep = p.scale(&EpsScalar::eps());
        assert_eq!(
            ep.partial_derivative(1),
            WeylElement::scalar(1, EpsScalar::eps())
        );
    }

    #[test]
    fn eval_at_zero_examples() {
        let (p, q) = pq(1);
        let f = &WeylElement::one(1) + &p.plain_mul(&q).scale(&EpsScalar::eps());
        assert_eq!(f.eval_at_zero(), EpsScalar::one());
        let g = q.plain_mul(&q).plain_mul(&q);
        assert!(g.eval_at_zero().is_zero());
        let h = &WeylElement::scalar(1, EpsScalar::eps_pow(-1)) + &p;
        assert_eq!(h.eval_at_zero(), EpsScalar::eps_pow(-1));
    }

    #[test]
    fn graded_degree_examples() {
        let (p, q) = pq(1);
        assert_eq!(p.scale(&EpsScalar::eps()).graded_degree(), Some(3));
        let f = &p.plain_mul(&q) + &WeylElement::scalar(1, EpsScalar::eps());
        assert_eq!(f.graded_degree(), Some(2));
        let g = &WeylElement::one(1) + &p;
        assert_eq!(g.graded_degree(), None);
    }

    #[test]
    fn sp_to_quadratic_examples() {
        // A = diag(1,-1) -> pq
        let a = SpMatrix::new(
            1,
            vec![rat(1, 1), rat(0, 1), rat(0, 1), rat(-1, 1)],
        )
        .unwrap();
        let (p, q) = pq(1);
        assert_eq!(a.to_quadratic(), p.plain_mul(&q));
        assert!(SpMatrix::zero(1).to_quadratic().is_zero());
        // lowered a_{11} = 1 only -> p^2/2
        let mut lowered = vec![Rational::zero(); 4];
        lowered[0] = rat(1, 1);
        let b = SpMatrix::from_lowered(1, &lowered).unwrap();
        assert_eq!(
            b.to_quadratic(),
            WeylElement::monomial(1, vec![2, 0], EpsScalar::rational(1, 2))
        );
    }

    #[test]
    fn sp_action_matches_bracket() {
        let a = SpMatrix::new(
            1,
            vec![rat(1, 1), rat(0, 1), rat(0, 1), rat(-1, 1)],
        )
        .unwrap();
        let (p, q) = pq(1);
        assert_eq!(a.act(&p).unwrap(), -&p);
        assert!(a.act(&WeylElement::one(1)).unwrap().is_zero());
        assert_eq!(
            a.act(&q.plain_mul(&q)).unwrap(),
            q.plain_mul(&q).scale_rational(&rat(2, 1))
        );
        // derivative definition == bracket with the quadratic, on a basis
        for b in sp_basis(1) {
            let bt = b.to_quadratic();
            for f in [p.clone(), q.clone(), p.plain_mul(&q), q.plain_mul(&q)] {
                assert_eq!(b.act(&f).unwrap(), bt.bracket(&f).unwrap());
            }
        }
    }

    #[test]
    fn tilde_intertwines_commutators() {
        // The sign forced by the derivative definition: [A,B]~ = [A~, B~]_eps.
        let basis = sp_basis(1);
        for a in &basis {
            for b in &basis {
                let lhs = a.commutator(b).to_quadratic();
                let rhs = a.to_quadratic().bracket(&b.to_quadratic()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn shift_examples() {
        let q = WeylElement::q(1, 1);
        let x = vec![rat(0, 1), rat(5, 2)];
        let shifted = q.shift(&x);
        let mut want = WeylElement::q(1, 1);
        want.add_term(vec![0, 0], &EpsScalar::rational(5, 2));
        assert_eq!(shifted, want);
        assert_eq!(shifted.eval_at_zero(), EpsScalar::rational(5, 2));
    }
}
