//! Lie-algebra cochain evaluation: d_Lie, the cup product, the maps phi^N
//! into gl_N of the Weyl algebra, the cocycle Theta^N_2n, horizontal jets of
//! the flat connection and the flat trace density.

use itertools::Itertools;

use crate::eps::{rat, EpsScalar, Rational};
use crate::error::{Result, WeylError};
use crate::hochschild::{permutation_sign, ChainTensor};
use crate::tau::tau_eval;
use crate::weyl::{factorial, WeylElement};

/// Configuration caps for the desk-scale contract. The (2n)! and matrix-trace
/// sums grow quickly; anything past these bounds needs an explicit override.
pub const MAX_DIM_N: usize = 2;
pub const MAX_MATRIX_N: usize = 3;

pub fn check_caps(n: usize, nn: usize, override_caps: bool) -> Result<()> {
    if !override_caps && (n > MAX_DIM_N || nn > MAX_MATRIX_N) {
        return Err(WeylError::CapsExceeded { n, nn });
    }
    Ok(())
}

/// Element of gl_N of the polynomial Weyl algebra: an N x N matrix of
/// Weyl elements.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GlWeylElement {
    n: usize,
    nn: usize,
    entries: Vec<WeylElement>, // row-major N x N
}

impl GlWeylElement {
    pub fn new(n: usize, nn: usize, entries: Vec<WeylElement>) -> Self {
        assert_eq!(entries.len(), nn * nn, "entries must be N x N");
        assert!(entries.iter().all(|f| f.n() == n), "dimension mismatch");
        GlWeylElement { n, nn, entries }
    }

    pub fn zero(n: usize, nn: usize) -> Self {
        Self::new(n, nn, vec![WeylElement::zero(n); nn * nn])
    }

    /// Identity matrix tensor a.
    pub fn from_weyl(nn: usize, a: &WeylElement) -> Self {
        let mut out = Self::zero(a.n(), nn);
        for r in 0..nn {
            out.entries[r * nn + r] = a.clone();
        }
        out
    }

    /// E_{rc} tensor a (0-based r, c).
    pub fn matrix_unit(nn: usize, r: usize, c: usize, a: &WeylElement) -> Self {
        let mut out = Self::zero(a.n(), nn);
        out.entries[r * nn + c] = a.clone();
        out
    }

    pub fn identity(n: usize, nn: usize) -> Self {
        Self::from_weyl(nn, &WeylElement::one(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix_size(&self) -> usize {
        self.nn
    }

    pub fn entry(&self, r: usize, c: usize) -> &WeylElement {
        &self.entries[r * self.nn + c]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(WeylElement::is_zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.n, self.nn), (rhs.n, rhs.nn));
        Self::new(
            self.n,
            self.nn,
            self.entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.n, self.nn, self.entries.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: &EpsScalar) -> Self {
        Self::new(
            self.n,
            self.nn,
            self.entries.iter().map(|a| a.scale(c)).collect(),
        )
    }

    /// Matrix product with Moyal products on the entries.
    pub fn star(&self, rhs: &Self) -> Result<Self> {
        assert_eq!((self.n, self.nn), (rhs.n, rhs.nn));
        let nn = self.nn;
        let mut out = Self::zero(self.n, nn);
        for r in 0..nn {
            for c in 0..nn {
                let mut acc = WeylElement::zero(self.n);
                for k in 0..nn {
                    acc = &acc + &self.entry(r, k).moyal(rhs.entry(k, c))?;
                }
                out.entries[r * nn + c] = acc;
            }
        }
        Ok(out)
    }

    /// Star commutator x*y - y*x (matrix products with Moyal entries).
    pub fn star_commutator(&self, rhs: &Self) -> Result<Self> {
        Ok(self.star(rhs)?.sub(&rhs.star(self)?))
    }

    /// The Lie bracket used throughout: the matrix commutator combined with
    /// the eps-bracket, [x, y] = (x*y - y*x)/eps. Over K = Q[eps, eps^-1]
    /// this is defined for all arguments (non-commuting constant matrix
    /// parts simply acquire eps^-1 coefficients).
    pub fn eps_bracket(&self, rhs: &Self) -> Result<Self> {
        let comm = self.star_commutator(rhs)?;
        Ok(Self::new(
            self.n,
            self.nn,
            comm.entries
                .iter()
                .map(|f| {
                    let mut out = WeylElement::zero(self.n);
                    for (e, c) in f.terms() {
                        out.add_term(e.clone(), &c.shift_eps(-1));
                    }
                    out
                })
                .collect(),
        ))
    }

    pub fn trace(&self) -> WeylElement {
        let mut out = WeylElement::zero(self.n);
        for r in 0..self.nn {
            out = &out + self.entry(r, r);
        }
        out
    }

    /// Embed into gl_{N'} (N' >= N) by padding with zeros.
    pub fn embed(&self, nn2: usize) -> Self {
        assert!(nn2 >= self.nn);
        let mut out = Self::zero(self.n, nn2);
        for r in 0..self.nn {
            for c in 0..self.nn {
                out.entries[r * nn2 + c] = self.entry(r, c).clone();
            }
        }
        out
    }
}

/// A wedge tuple v_1 /\ ... /\ v_k of gl_N Weyl elements. Antisymmetry is a
/// property of the consumers (phi^N, Theta, chi), not of the container.
#[derive(Clone, Debug)]
pub struct WedgeTuple(pub Vec<GlWeylElement>);

impl WedgeTuple {
    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// Plain Weyl elements embedded along the identity matrix (the N = 1
    /// picture, usable for any N).
    pub fn from_weyl(nn: usize, elements: &[WeylElement]) -> Self {
        WedgeTuple(
            elements
                .iter()
                .map(|a| GlWeylElement::from_weyl(nn, a))
                .collect(),
        )
    }
}

/// The chain map phi^N from normalized Hochschild cochains to Lie cochains
/// of gl_N with values in the dual:
/// phi^N(tau)(X_1,...,X_k)(X_0) = sum_sigma sign(sigma)
///   tau(a_0 (x) a_sigma(1) (x) ... ) tr(M_0 M_sigma(1) ... M_sigma(k)),
/// extended multilinearly from elementary tensors M (x) a. Implemented by
/// assembling a single chain from the matrix-entry cycles and evaluating the
/// cochain once.
pub fn phi_n_apply(
    k: usize,
    cochain: &dyn Fn(&ChainTensor) -> Result<EpsScalar>,
    args: &[GlWeylElement],
    target: &GlWeylElement,
) -> Result<EpsScalar> {
    if args.len() != k {
        return Err(WeylError::ArityMismatch {
            expected: k,
            got: args.len(),
        });
    }
    let n = target.n();
    let nn = target.matrix_size();
    for a in args {
        if a.n() != n {
            return Err(WeylError::DimensionMismatch {
                expected: n,
                got: a.n(),
            });
        }
        if a.matrix_size() != nn {
            return Err(WeylError::MatrixSizeMismatch {
                expected: nn,
                got: a.matrix_size(),
            });
        }
    }
    let mut chain = ChainTensor::zero(n, k);
    for perm in (0..k).permutations(k) {
        let sign = {
            let one_based: Vec<usize> = perm.iter().map(|&i| i + 1).collect();
            permutation_sign(&one_based)
        };
        let coeff = EpsScalar::from_int(sign as i64);
        // tr(M_0 M_sigma(1) ... M_sigma(k)) expands over index cycles
        // i_0 -> i_1 -> ... -> i_k -> i_0.
        for indices in std::iter::repeat_n(0..nn, k + 1).multi_cartesian_product() {
            let mut slots = Vec::with_capacity(k + 1);
            let i0 = indices[0];
            let i1 = if k == 0 { i0 } else { indices[1] };
            slots.push(target.entry(i0, i1).clone());
            let mut ok = !slots[0].is_zero();
            for (m, &p) in perm.iter().enumerate() {
                let row = indices[m + 1];
                let col = indices[(m + 2) % (k + 1)];
                let e = args[p].entry(row, col).clone();
                if e.is_zero() {
                    ok = false;
                    break;
                }
                slots.push(e);
            }
            if ok {
                chain.add_elementary(&coeff, slots);
            }
        }
    }
    cochain(&chain)
}

/// Theta^N_2n = phi^N(tau_2n): the Lie-algebra 2n-cocycle of gl_N of the
/// Weyl algebra, evaluated on a wedge tuple at a target element.
pub fn theta_eval(
    n: usize,
    nn: usize,
    args: &[GlWeylElement],
    target: &GlWeylElement,
) -> Result<EpsScalar> {
    if target.matrix_size() != nn {
        return Err(WeylError::MatrixSizeMismatch {
            expected: nn,
            got: target.matrix_size(),
        });
    }
    phi_n_apply(2 * n, &|chain| tau_eval(n, chain), args, target)
}

/// ev_1 Theta^N_2n: evaluation at the identity.
pub fn theta_eval_at_identity(n: usize, nn: usize, args: &[GlWeylElement]) -> Result<EpsScalar> {
    theta_eval(n, nn, args, &GlWeylElement::identity(n, nn))
}

/// Which Lie bracket d_Lie uses. `Eps` is the bracket of the crate
/// ((x*y - y*x)/eps); `Star` is the plain star commutator. The two differ by
/// the overall unit eps, so every vanishing statement holds for both; the
/// chain-map identity with the Hochschild differential is exact for `Star`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketKind {
    Eps,
    Star,
}

fn lie_bracket(kind: BracketKind, a: &GlWeylElement, b: &GlWeylElement) -> Result<GlWeylElement> {
    match kind {
        BracketKind::Eps => a.eps_bracket(b),
        BracketKind::Star => a.star_commutator(b),
    }
}

/// d_Lie for a cochain with values in the dual module gl_N(A)^*:
/// (d c)(a_1 /\ ... /\ a_{p+1})(m) =
///   sum_i (-1)^{i-1} (a_i . c(... \hat a_i ...))(m)
///   + sum_{i<j} (-1)^{i+j} c([a_i,a_j] /\ ... \hat a_i ... \hat a_j ...)(m)
///
/// with the coadjoint action (x . xi)(m) = -xi([x, m]).
pub fn d_lie_dual(
    cochain: &dyn Fn(&[GlWeylElement], &GlWeylElement) -> Result<EpsScalar>,
    args: &[GlWeylElement],
    target: &GlWeylElement,
    bracket: BracketKind,
) -> Result<EpsScalar> {
    let mut out = EpsScalar::zero();
    let p1 = args.len();
    for i in 0..p1 {
        let rest: Vec<GlWeylElement> = args
            .iter()
            .enumerate()
            .filter(|(m, _)| *m != i)
            .map(|(_, a)| a.clone())
            .collect();
        let moved = lie_bracket(bracket, &args[i], target)?;
        let v = cochain(&rest, &moved)?;
        // (-1)^{i-1} from the formula times -1 from the coadjoint action
        if i % 2 == 0 {
            out = &out - &v;
        } else {
            out += &v;
        }
    }
    for i in 0..p1 {
        for j in (i + 1)..p1 {
            let mut inserted = vec![lie_bracket(bracket, &args[i], &args[j])?];
            for (m, a) in args.iter().enumerate() {
                if m != i && m != j {
                    inserted.push(a.clone());
                }
            }
            let v = cochain(&inserted, target)?;
            // (-1)^{i+j} in 1-based indices = (-1)^{i+j} for 0-based too
            if (i + j) % 2 == 0 {
                out += &v;
            } else {
                out = &out - &v;
            }
        }
    }
    Ok(out)
}

/// d_Lie for a trivial-coefficient cochain (no module term).
pub fn d_lie_trivial(
    cochain: &dyn Fn(&[GlWeylElement]) -> Result<EpsScalar>,
    args: &[GlWeylElement],
    bracket: BracketKind,
) -> Result<EpsScalar> {
    let mut out = EpsScalar::zero();
    let p1 = args.len();
    for i in 0..p1 {
        for j in (i + 1)..p1 {
            let mut inserted = vec![lie_bracket(bracket, &args[i], &args[j])?];
            for (m, a) in args.iter().enumerate() {
                if m != i && m != j {
                    inserted.push(a.clone());
                }
            }
            let v = cochain(&inserted)?;
            if (i + j) % 2 == 0 {
                out += &v;
            } else {
                out = &out - &v;
            }
        }
    }
    Ok(out)
}

/// Cup product of trivial-coefficient cochains: the (p,q)-shuffle sum
/// (c u c')(a_1 /\ ... /\ a_{p+q}) = sum_shuffles sign(sigma)
/// c(a_sigma(1) ...) c'(a_sigma(p+1) ...).
pub fn cup_product(
    p: usize,
    q: usize,
    c1: &dyn Fn(&[GlWeylElement]) -> Result<EpsScalar>,
    c2: &dyn Fn(&[GlWeylElement]) -> Result<EpsScalar>,
    args: &[GlWeylElement],
) -> Result<EpsScalar> {
    if args.len() != p + q {
        return Err(WeylError::ArityMismatch {
            expected: p + q,
            got: args.len(),
        });
    }
    let mut out = EpsScalar::zero();
    for left in (0..p + q).combinations(p) {
        let right: Vec<usize> = (0..p + q).filter(|m| !left.contains(m)).collect();
        // sign: inversions between the two ascending blocks
        let mut inversions = 0usize;
        for &a in &left {
            for &b in &right {
                if a > b {
                    inversions += 1;
                }
            }
        }
        let la: Vec<GlWeylElement> = left.iter().map(|&m| args[m].clone()).collect();
        let ra: Vec<GlWeylElement> = right.iter().map(|&m| args[m].clone()).collect();
        let v = &c1(&la)? * &c2(&ra)?;
        if inversions.is_multiple_of(2) {
            out += &v;
        } else {
            out = &out - &v;
        }
    }
    Ok(out)
}

/// Horizontal jet of the flat connection D0 = d + [sum omega_ij y_i dx_j, .]:
/// horizontal sections satisfy d_x = d_y, so the infinite jet of a polynomial
/// f at the point x is f(x + y).
pub fn horizontal_jet(n: usize, f: &WeylElement, x: &[Rational]) -> WeylElement {
    assert_eq!(f.n(), n);
    f.shift(x)
}

/// Connection 1-form components of the basic example, A_j = sum_i omega_ij y_i:
/// A_{2i-1} = q_i and A_{2i} = -p_i.
pub fn flat_connection_components(n: usize) -> Vec<WeylElement> {
    let mut out = Vec::with_capacity(2 * n);
    for i in 1..=n {
        out.push(WeylElement::q(n, i));
        out.push(-&WeylElement::p(n, i));
    }
    out
}

/// The flat trace density of the basic example: the value of
/// psi_D(f) = ((-1)^n/(2n)!) Theta_2n(A /\ ... /\ A)(f_hat) as a multiple of
/// the Liouville volume form dq_1 /\ dp_1 /\ ... /\ dq_n /\ dp_n.
///
/// Sign bookkeeping: contracting the 2n-fold wedge of the 1-form A with the
/// coordinate frame (d/dx_1, ..., d/dx_2n) gives the slot-assignment sum
/// sum_sigma sign(sigma) Theta(A_sigma(1) /\ ... /\ A_sigma(2n)), the density
/// with respect to dx_1 /\ ... /\ dx_2n; rewriting that volume form in
/// Liouville order contributes a further (-1)^n which cancels the (-1)^n of
/// the definition, leaving 1/(2n)! times the slot-assignment sum. Evaluating
/// at the horizontal jet of f recovers f(x) exactly.
pub fn flat_trace_density(n: usize, f: &WeylElement, x: &[Rational]) -> Result<EpsScalar> {
    let jet = horizontal_jet(n, f, x);
    let comps = flat_connection_components(n);
    let dim = 2 * n;
    let mut total = EpsScalar::zero();
    for perm in (0..dim).permutations(dim) {
        let sign = {
            let one_based: Vec<usize> = perm.iter().map(|&i| i + 1).collect();
            permutation_sign(&one_based)
        };
        let args: Vec<GlWeylElement> = perm
            .iter()
            .map(|&i| GlWeylElement::from_weyl(1, &comps[i]))
            .collect();
        let v = phi_n_apply(
            dim,
            &|chain| tau_eval(n, chain),
            &args,
            &GlWeylElement::from_weyl(1, &jet),
        )?;
        if sign > 0 {
            total += &v;
        } else {
            total = &total - &v;
        }
    }
    Ok(total.scale(&(rat(1, 1) / factorial(dim as u32))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pqn1() -> (WeylElement, WeylElement) {
        (WeylElement::p(1, 1), WeylElement::q(1, 1))
    }

    #[test]
    fn theta_normalization_n1() {
        let (p, q) = pqn1();
        for nn in 1..=3usize {
            let args = WedgeTuple::from_weyl(nn, &[p.clone(), q.clone()]).0;
            let got = theta_eval_at_identity(1, nn, &args).unwrap();
            assert_eq!(got, EpsScalar::from_int(nn as i64), "N = {nn}");
        }
    }

    #[test]
    fn phi_n1_explicit() {
        // N=1, k=2: tau(1 (x) p (x) q) - tau(1 (x) q (x) p) = 1
        let (p, q) = pqn1();
        let args = WedgeTuple::from_weyl(1, &[p, q]).0;
        let got = phi_n_apply(
            2,
            &|chain| tau_eval(1, chain),
            &args,
            &GlWeylElement::identity(1, 1),
        )
        .unwrap();
        assert_eq!(got, EpsScalar::one());
    }

    #[test]
    fn phi_embedding_compatibility() {
        let (p, q) = pqn1();
        let a1 = GlWeylElement::matrix_unit(2, 0, 1, &p.plain_mul(&p));
        let a2 = GlWeylElement::matrix_unit(2, 1, 0, &q);
        let target = GlWeylElement::matrix_unit(2, 0, 0, &p.plain_mul(&q));
        let small = phi_n_apply(2, &|c| tau_eval(1, c), &[a1.clone(), a2.clone()], &target).unwrap();
        let big = phi_n_apply(
            2,
            &|c| tau_eval(1, c),
            &[a1.embed(3), a2.embed(3)],
            &target.embed(3),
        )
        .unwrap();
        assert_eq!(small, big);
    }

    #[test]
    fn phi_kills_identity_argument() {
        let (p, _) = pqn1();
        let args = vec![
            GlWeylElement::identity(1, 2),
            GlWeylElement::from_weyl(2, &p),
        ];
        let got = theta_eval_at_identity(1, 2, &args).unwrap();
        assert!(got.is_zero());
    }

    #[test]
    fn theta_antisymmetry() {
        let (p, q) = pqn1();
        let pq = p.plain_mul(&q);
        let a = GlWeylElement::from_weyl(1, &p.plain_mul(&pq));
        let b = GlWeylElement::from_weyl(1, &q.plain_mul(&q));
        let t = GlWeylElement::from_weyl(1, &pq);
        let v1 = theta_eval(1, 1, &[a.clone(), b.clone()], &t).unwrap();
        let v2 = theta_eval(1, 1, &[b, a], &t).unwrap();
        assert_eq!(v1, -&v2);
    }

    #[test]
    fn cup_product_p1_q1() {
        // (c u c')(a1 /\ a2) = c(a1)c'(a2) - c(a2)c'(a1)
        let (p, q) = pqn1();
        let c1 = |args: &[GlWeylElement]| Ok(args[0].trace().eval_at_zero());
        let c2 = |args: &[GlWeylElement]| {
            Ok(args[0].trace().partial_derivative(1).eval_at_zero())
        };
        let a1 = GlWeylElement::from_weyl(1, &(&p + &WeylElement::one(1)));
        let a2 = GlWeylElement::from_weyl(1, &(&q + &WeylElement::one(1)));
        let got = cup_product(1, 1, &c1, &c2, &[a1.clone(), a2.clone()]).unwrap();
        let direct = &(&c1(&[a1.clone()]).unwrap() * &c2(&[a2.clone()]).unwrap())
            - &(&c1(&[a2]).unwrap() * &c2(&[a1]).unwrap());
        assert_eq!(got, direct);
    }

    #[test]
    fn d_lie_p1_trivial_coefficients() {
        // p = 1 with trivial coefficients: (dc)(a /\ b) = -c([a, b])
        let (p, q) = pqn1();
        let c = |args: &[GlWeylElement]| Ok(args[0].trace().eval_at_zero());
        let a = GlWeylElement::from_weyl(1, &p);
        let b = GlWeylElement::from_weyl(1, &q);
        let got = d_lie_trivial(&c, &[a.clone(), b.clone()], BracketKind::Eps).unwrap();
        let want = -&c(&[a.eps_bracket(&b).unwrap()]).unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn horizontal_jet_examples() {
        let one = WeylElement::one(1);
        let x = vec![rat(3, 1), rat(5, 2)];
        assert_eq!(horizontal_jet(1, &one, &x), one);
        let q = WeylElement::q(1, 1);
        let jet = horizontal_jet(1, &q, &x);
        let mut want = WeylElement::q(1, 1);
        want.add_term(vec![0, 0], &EpsScalar::rational(5, 2));
        assert_eq!(jet, want);
    }

    #[test]
    fn flat_trace_density_examples() {
        let one = WeylElement::one(1);
        let x = vec![rat(2, 1), rat(-3, 2)];
        assert_eq!(flat_trace_density(1, &one, &x).unwrap(), EpsScalar::one());
        let q = WeylElement::q(1, 1);
        assert_eq!(
            flat_trace_density(1, &q, &x).unwrap(),
            EpsScalar::rational(-3, 2)
        );
        let p = WeylElement::p(1, 1);
        let f = p.plain_mul(&p).plain_mul(&q); // p^2 q
        assert_eq!(
            flat_trace_density(1, &f, &x).unwrap(),
            f.eval_at(&x)
        );
    }

    #[test]
    fn caps_are_enforced_with_override() {
        assert!(check_caps(2, 3, false).is_ok());
        assert!(matches!(
            check_caps(3, 1, false),
            Err(WeylError::CapsExceeded { .. })
        ));
        assert!(check_caps(3, 4, true).is_ok());
    }
}
