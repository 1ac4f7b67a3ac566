//! Chern-Weil data for the pair (gl_N of the Weyl algebra, gl_N + sp_2n):
//! the projection pr, its curvature C, the Chern-Weil cocycle chi(P), the
//! invariant polynomials built from the A-roof genus and the Chern
//! character, the Cartan graph-sum and integral formulas for P_n, and the
//! local Riemann-Roch-Hirzebruch evaluation identity on special vectors.

use itertools::Itertools;
use num::{One, Zero};

use crate::eps::{rat, EpsScalar, Rational};
use crate::error::{Result, WeylError};
use crate::hochschild::permutation_sign;
use crate::integrate::{
    closed_form_cycle_integral, integrate_over_region, psi_branch, OrderedRegion, UPolynomial,
};
use crate::lie::{theta_eval_at_identity, GlWeylElement};
use crate::series::{log_sinh_ratio_inverse, sinh_ratio_inverse};
use crate::tau::{expand_single, monomialize_slots};
use crate::weyl::{factorial, omega_component, rat_pow, WeylElement};

/// Square matrix over the exact scalar ring K = Q[eps, eps^-1].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsMatrix {
    size: usize,
    entries: Vec<EpsScalar>,
}

impl EpsMatrix {
    pub fn zero(size: usize) -> Self {
        EpsMatrix {
            size,
            entries: vec![EpsScalar::zero(); size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zero(size);
        for r in 0..size {
            m.entries[r * size + r] = EpsScalar::one();
        }
        m
    }

    pub fn from_entries(size: usize, entries: Vec<EpsScalar>) -> Self {
        assert_eq!(entries.len(), size * size);
        EpsMatrix { size, entries }
    }

    pub fn diagonal(diag: &[EpsScalar]) -> Self {
        let size = diag.len();
        let mut m = Self::zero(size);
        for (r, v) in diag.iter().enumerate() {
            m.entries[r * size + r] = v.clone();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, r: usize, c: usize) -> &EpsScalar {
        &self.entries[r * self.size + c]
    }

    pub fn set_entry(&mut self, r: usize, c: usize, v: EpsScalar) {
        self.entries[r * self.size + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(EpsScalar::is_zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.size, rhs.size);
        EpsMatrix {
            size: self.size,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.size, rhs.size);
        EpsMatrix {
            size: self.size,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &EpsScalar) -> Self {
        EpsMatrix {
            size: self.size,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.size, rhs.size);
        let s = self.size;
        let mut out = Self::zero(s);
        for r in 0..s {
            for c in 0..s {
                let mut acc = EpsScalar::zero();
                for k in 0..s {
                    acc += &(self.entry(r, k) * rhs.entry(k, c));
                }
                out.entries[r * s + c] = acc;
            }
        }
        out
    }

    pub fn trace(&self) -> EpsScalar {
        let mut acc = EpsScalar::zero();
        for r in 0..self.size {
            acc += self.entry(r, r);
        }
        acc
    }

    /// tr(M^p); tr(M^0) = size.
    pub fn trace_power(&self, p: u32) -> EpsScalar {
        if p == 0 {
            return EpsScalar::from_int(self.size as i64);
        }
        let mut m = self.clone();
        for _ in 1..p {
            m = m.mul(self);
        }
        m.trace()
    }
}

/// Element of h = sp_2n + gl_N. The sp part is stored over K: curvature
/// brackets of general arguments can produce eps-dependent quadratic parts,
/// while all the special-vector paths stay rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HElement {
    n: usize,
    nn: usize,
    sp: EpsMatrix, // 2n x 2n, sp-symmetric
    gl: EpsMatrix, // N x N
}

impl HElement {
    pub fn new(n: usize, nn: usize, sp: EpsMatrix, gl: EpsMatrix) -> Result<Self> {
        assert_eq!(sp.size(), 2 * n);
        assert_eq!(gl.size(), nn);
        let h = HElement { n, nn, sp, gl };
        if !h.sp_is_symmetric() {
            return Err(WeylError::SpInvariantViolated);
        }
        Ok(h)
    }

    pub fn zero(n: usize, nn: usize) -> Self {
        HElement {
            n,
            nn,
            sp: EpsMatrix::zero(2 * n),
            gl: EpsMatrix::zero(nn),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix_size(&self) -> usize {
        self.nn
    }

    pub fn sp_part(&self) -> &EpsMatrix {
        &self.sp
    }

    pub fn gl_part(&self) -> &EpsMatrix {
        &self.gl
    }

    /// Lowered sp entry sum_k omega_{ik} a^k_j.
    fn sp_lowered(&self, i: usize, j: usize) -> EpsScalar {
        let mut acc = EpsScalar::zero();
        for k in 0..2 * self.n {
            let w = omega_component(i + 1, k + 1);
            if w != 0 {
                acc += &self.sp.entry(k, j).scale(&rat(w, 1));
            }
        }
        acc
    }

    pub fn sp_is_symmetric(&self) -> bool {
        let dim = 2 * self.n;
        for i in 0..dim {
            for j in 0..i {
                if self.sp_lowered(i, j) != self.sp_lowered(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.n, self.nn), (rhs.n, rhs.nn));
        HElement {
            n: self.n,
            nn: self.nn,
            sp: self.sp.add(&rhs.sp),
            gl: self.gl.add(&rhs.gl),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.n, self.nn), (rhs.n, rhs.nn));
        HElement {
            n: self.n,
            nn: self.nn,
            sp: self.sp.sub(&rhs.sp),
            gl: self.gl.sub(&rhs.gl),
        }
    }

    pub fn neg(&self) -> Self {
        Self::zero(self.n, self.nn).sub(self)
    }

    pub fn is_zero(&self) -> bool {
        self.sp.is_zero() && self.gl.is_zero()
    }

    /// Embed back into gl_N of the Weyl algebra: 1 (x) A-tilde + gl (x) 1.
    pub fn embed(&self) -> GlWeylElement {
        let quad = sp_eps_to_quadratic(self.n, &self.sp);
        let mut out = GlWeylElement::from_weyl(self.nn, &quad);
        for r in 0..self.nn {
            for c in 0..self.nn {
                let v = self.gl.entry(r, c);
                if !v.is_zero() {
                    out = out.add(&GlWeylElement::matrix_unit(
                        self.nn,
                        r,
                        c,
                        &WeylElement::scalar(self.n, v.clone()),
                    ));
                }
            }
        }
        out
    }
}

/// (1/2) sum a_{ij} y_i y_j from an sp matrix over K.
pub fn sp_eps_to_quadratic(n: usize, m: &EpsMatrix) -> WeylElement {
    let dim = 2 * n;
    let mut out = WeylElement::zero(n);
    let half = rat(1, 2);
    for i in 0..dim {
        for j in 0..dim {
            // lowered entry
            let mut a = EpsScalar::zero();
            for k in 0..dim {
                let w = omega_component(i + 1, k + 1);
                if w != 0 {
                    a += &m.entry(k, j).scale(&rat(w, 1));
                }
            }
            if a.is_zero() {
                continue;
            }
            let mut exps = vec![0u32; dim];
            exps[i] += 1;
            exps[j] += 1;
            out.add_term(exps, &a.scale(&half));
        }
    }
    out
}

/// Invert the tilde correspondence: read the sp matrix (over K) off a pure
/// quadratic (1/2) sum a_{ij} y_i y_j.
pub fn quadratic_to_sp_eps(n: usize, quad: &WeylElement) -> Result<EpsMatrix> {
    let dim = 2 * n;
    for (e, _) in quad.terms() {
        if e.iter().sum::<u32>() != 2 {
            return Err(WeylError::NotQuadratic);
        }
    }
    // lowered symmetric matrix
    let mut lowered = vec![EpsScalar::zero(); dim * dim];
    for (e, c) in quad.terms() {
        let vars: Vec<usize> = (0..dim).filter(|&v| e[v] > 0).collect();
        match vars.len() {
            1 => {
                let v = vars[0];
                lowered[v * dim + v] = c.scale(&rat(2, 1));
            }
            2 => {
                let (v, w) = (vars[0], vars[1]);
                lowered[v * dim + w] = c.clone();
                lowered[w * dim + v] = c.clone();
            }
            _ => unreachable!("total degree 2"),
        }
    }
    // raise: a^k_j = -sum_i omega_{ki} a_{ij}
    let mut raised = EpsMatrix::zero(dim);
    for k in 0..dim {
        for j in 0..dim {
            let mut acc = EpsScalar::zero();
            for i in 0..dim {
                let w = omega_component(k + 1, i + 1);
                if w != 0 {
                    acc += &lowered[i * dim + j].scale(&rat(-w, 1));
                }
            }
            raised.set_entry(k, j, acc);
        }
    }
    Ok(raised)
}

/// The h-equivariant projection pr = pr_1 + pr_2 of gl_N of the Weyl algebra
/// onto h: pr_1(M (x) a) = (1/N) tr(M) a_2 read back as an sp matrix, and
/// pr_2(M (x) a) = M a_0.
pub fn project_pr(v: &GlWeylElement) -> Result<HElement> {
    let n = v.n();
    let nn = v.matrix_size();
    let quad = v
        .trace()
        .y_homogeneous_part(2)
        .scale(&EpsScalar::from_rational(rat(1, nn as i64)));
    let sp = quadratic_to_sp_eps(n, &quad)?;
    let mut gl = EpsMatrix::zero(nn);
    for r in 0..nn {
        for c in 0..nn {
            gl.set_entry(r, c, v.entry(r, c).eval_at_zero());
        }
    }
    HElement::new(n, nn, sp, gl)
}

/// C(v /\ w) = [pr(v), pr(w)] - pr([v, w]), antisymmetric in (v, w). The
/// bracket is that of gl_N of the Weyl algebra (matrix commutator combined
/// with the eps-bracket); [h, h] lands in h, so reading the first term back
/// through pr is exact.
pub fn curvature_c(v: &GlWeylElement, w: &GlWeylElement) -> Result<HElement> {
    let pv = project_pr(v)?;
    let pw = project_pr(w)?;
    let hh = project_pr(&pv.embed().eps_bracket(&pw.embed())?)?;
    let pr_vw = project_pr(&v.eps_bracket(w)?)?;
    Ok(hh.sub(&pr_vw))
}

/// A homogeneous invariant polynomial on h, represented through traces of
/// powers of the two parts: the evaluator is
/// P(X) = sum_terms coeff * prod_m tr(X_1^{p_m}) * tr(X_2^{g}),
/// normalized as the diagonal of the symmetric multilinear form (the Taylor
/// convention P(X,...,X) = j! * (degree-j series coefficient)).
#[derive(Clone, Debug)]
pub struct InvariantPoly {
    degree: usize,
    terms: Vec<InvTerm>,
}

#[derive(Clone, Debug)]
struct InvTerm {
    coeff: EpsScalar,
    sp_powers: Vec<u32>,
    gl_power: u32,
}

impl InvariantPoly {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn eval(&self, x: &HElement) -> EpsScalar {
        let mut out = EpsScalar::zero();
        for t in &self.terms {
            let mut v = t.coeff.clone();
            for &p in &t.sp_powers {
                v = &v * &x.sp_part().trace_power(p);
                if v.is_zero() {
                    break;
                }
            }
            if !v.is_zero() {
                v = &v * &x.gl_part().trace_power(t.gl_power);
            }
            out += &v;
        }
        out
    }
}

/// Degree-a part of the A-roof genus A(X) = det^{1/2}((X/2)/sinh(X/2)) in
/// trace monomials: pairs (coefficient, sorted even trace powers).
/// Derived from exp((1/2) tr log((X/2)/sinh(X/2))) with the exact log series.
pub fn ahat_series_terms(a: usize) -> Vec<(Rational, Vec<u32>)> {
    if a == 0 {
        return vec![(Rational::one(), Vec::new())];
    }
    if a % 2 == 1 {
        return Vec::new();
    }
    let g = log_sinh_ratio_inverse(a);
    // partitions of a into even parts 2m with multiplicities k_m:
    // coefficient prod ( (g_{2m}/2)^{k_m} / k_m! )
    let mut out = Vec::new();
    let parts: Vec<usize> = (1..=a / 2).map(|m| 2 * m).collect();
    // stack of (next part index, remaining, coeff, trace powers)
    let mut stack = vec![(0usize, a, Rational::one(), Vec::<u32>::new())];
    while let Some((pi, rem, coeff, powers)) = stack.pop() {
        if rem == 0 {
            out.push((coeff, powers));
            continue;
        }
        if pi >= parts.len() {
            continue;
        }
        let part = parts[pi];
        let mut k = 0usize;
        loop {
            let used = part * k;
            if used > rem {
                break;
            }
            let mut c = coeff.clone();
            let base = &g[part] / rat(2, 1);
            c *= rat_pow(&base, k as u32) / factorial(k as u32);
            let mut pw = powers.clone();
            pw.extend(std::iter::repeat_n(part as u32, k));
            stack.push((pi + 1, rem - used, c, pw));
            k += 1;
        }
    }
    out.retain(|(c, _)| !c.is_zero());
    out.sort_by(|a, b| a.1.cmp(&b.1));
    out
}

/// The degree-j Taylor component of A_eps(X_1) Ch(X_2), as an invariant
/// polynomial in the multilinear-form normalization: its evaluator is
/// j! times the degree-j series coefficient of
/// det^{1/2}((eps X_1/2)/sinh(eps X_1/2)) tr(exp X_2).
pub fn ahat_ch_component(j: usize, n: usize, nn: usize) -> InvariantPoly {
    let _ = (n, nn); // degrees are independent of the scale; kept for call-site clarity
    let jfact = factorial(j as u32);
    let mut terms = Vec::new();
    for a in (0..=j).step_by(2) {
        let b = (j - a) as u32;
        for (c, sp_powers) in ahat_series_terms(a) {
            // eps^a from A_eps, 1/b! from Ch, j! from the form normalization
            let coeff = EpsScalar::term(a as i64, c * &jfact / factorial(b));
            terms.push(InvTerm {
                coeff,
                sp_powers,
                gl_power: b,
            });
        }
    }
    InvariantPoly { degree: j, terms }
}

/// Exact polarization: recover the symmetric j-linear form from its diagonal,
/// P(Y_1,...,Y_j) = (1/j!) sum_{S subset {1..j}} (-1)^{j-|S|} P(sum_{i in S} Y_i).
/// On the diagonal this reproduces the evaluator: polarize(P, Y,...,Y) = P(Y).
pub fn polarize(p: &InvariantPoly, ys: &[HElement]) -> EpsScalar {
    let j = p.degree();
    assert_eq!(ys.len(), j, "polarize needs exactly degree-many arguments");
    assert!(j >= 1, "polarize needs positive degree");
    let n = ys[0].n();
    let nn = ys[0].matrix_size();
    let mut out = EpsScalar::zero();
    for mask in 0..(1u32 << j) {
        let mut sum = HElement::zero(n, nn);
        let mut size = 0usize;
        for (i, y) in ys.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sum = sum.add(y);
                size += 1;
            }
        }
        let v = p.eval(&sum);
        if (j - size).is_multiple_of(2) {
            out += &v;
        } else {
            out = &out - &v;
        }
    }
    out.scale(&(Rational::one() / factorial(j as u32)))
}

/// The Chern-Weil cocycle chi(P)(v_1 /\ ... /\ v_{2q}) =
/// (1/q!) sum'_sigma sign(sigma) P(C(v_sigma(1), v_sigma(2)), ...,
/// C(v_sigma(2q-1), v_sigma(2q))), over permutations with
/// sigma(2i-1) < sigma(2i).
pub fn chi_eval(p: &InvariantPoly, args: &[GlWeylElement]) -> Result<EpsScalar> {
    let q = p.degree();
    if args.len() != 2 * q {
        return Err(WeylError::ArityMismatch {
            expected: 2 * q,
            got: args.len(),
        });
    }
    // Precompute curvatures of every unordered pair.
    let mut curv = vec![vec![None; 2 * q]; 2 * q];
    for i in 0..2 * q {
        for j in (i + 1)..2 * q {
            curv[i][j] = Some(curvature_c(&args[i], &args[j])?);
        }
    }
    let mut out = EpsScalar::zero();
    for perm in (0..2 * q).permutations(2 * q) {
        if (0..q).any(|i| perm[2 * i] > perm[2 * i + 1]) {
            continue;
        }
        let sign = {
            let one_based: Vec<usize> = perm.iter().map(|&i| i + 1).collect();
            permutation_sign(&one_based)
        };
        let cs: Vec<HElement> = (0..q)
            .map(|i| curv[perm[2 * i]][perm[2 * i + 1]].clone().unwrap())
            .collect();
        let v = polarize(p, &cs);
        if sign > 0 {
            out += &v;
        } else {
            out = &out - &v;
        }
    }
    Ok(out.scale(&(Rational::one() / factorial(q as u32))))
}

// ---------------------------------------------------------------------------
// Special vectors and the evaluation identity
// ---------------------------------------------------------------------------

/// u_{ij} = q_i^2 p_i / 2 (i = j) or q_i q_j p_j (i != j), as 1 (x) u_{ij}.
pub fn special_u(n: usize, nn: usize, i: usize, j: usize) -> GlWeylElement {
    assert!(i >= 1 && i <= n && j >= 1 && j <= n);
    let w = if i == j {
        let q = WeylElement::q(n, i);
        q.plain_mul(&q)
            .plain_mul(&WeylElement::p(n, i))
            .scale(&EpsScalar::rational(1, 2))
    } else {
        WeylElement::q(n, i)
            .plain_mul(&WeylElement::q(n, j))
            .plain_mul(&WeylElement::p(n, j))
    };
    GlWeylElement::from_weyl(nn, &w)
}

/// v_{ir} = E_rr (x) q_i (r is 1-based).
pub fn special_v(n: usize, nn: usize, i: usize, r: usize) -> GlWeylElement {
    assert!(i >= 1 && i <= n && r >= 1 && r <= nn);
    GlWeylElement::matrix_unit(nn, r - 1, r - 1, &WeylElement::q(n, i))
}

/// All special vectors with labels (test and report aid).
pub fn special_vectors(n: usize, nn: usize) -> Vec<(String, GlWeylElement)> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            out.push((format!("u{i}{j}"), special_u(n, nn, i, j)));
        }
    }
    for i in 1..=n {
        for r in 1..=nn {
            out.push((format!("v{i}{r}"), special_v(n, nn, i, r)));
        }
    }
    out
}

/// Choice of the slot-j special vector in an admissible tuple
/// (p_1, v_1, ..., p_n, v_n): v_j = u_{jk} with k <= j, or v_{jr}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialChoice {
    U { k: usize },
    V { r: usize },
}

impl SpecialChoice {
    fn label(&self, j: usize) -> String {
        match self {
            SpecialChoice::U { k } => format!("u{j}{k}"),
            SpecialChoice::V { r } => format!("v{j}{r}"),
        }
    }
}

/// Every admissible choice vector for (n, N).
pub fn admissible_choices(n: usize, nn: usize) -> Vec<Vec<SpecialChoice>> {
    let per_slot: Vec<Vec<SpecialChoice>> = (1..=n)
        .map(|j| {
            let mut cs: Vec<SpecialChoice> =
                (1..=j).map(|k| SpecialChoice::U { k }).collect();
            cs.extend((1..=nn).map(|r| SpecialChoice::V { r }));
            cs
        })
        .collect();
    per_slot
        .into_iter()
        .map(|v| v.into_iter())
        .multi_cartesian_product()
        .collect()
}

/// Build the wedge tuple (p_1, v_1, ..., p_n, v_n) for a choice vector.
pub fn build_special_tuple(
    n: usize,
    nn: usize,
    choice: &[SpecialChoice],
) -> Result<Vec<GlWeylElement>> {
    if choice.len() != n {
        return Err(WeylError::InvalidTuple(format!(
            "need {n} choices, got {}",
            choice.len()
        )));
    }
    let mut args = Vec::with_capacity(2 * n);
    for (idx, c) in choice.iter().enumerate() {
        let j = idx + 1;
        let v = match c {
            SpecialChoice::U { k } => {
                if *k > j {
                    return Err(WeylError::InvalidTuple(format!(
                        "u_{{jk}} needs k <= j, got j={j}, k={k}"
                    )));
                }
                special_u(n, nn, j, *k)
            }
            SpecialChoice::V { r } => {
                if *r > nn {
                    return Err(WeylError::InvalidTuple(format!(
                        "v_{{jr}} needs r <= N, got r={r}"
                    )));
                }
                special_v(n, nn, j, *r)
            }
        };
        args.push(GlWeylElement::from_weyl(nn, &WeylElement::p(n, j)));
        args.push(v);
    }
    Ok(args)
}

// ---------------------------------------------------------------------------
// Cartan formulas for P_n
// ---------------------------------------------------------------------------

/// Diagonal data (t_1..t_n; s_1..s_N) of the Cartan element
/// X = -sum t_i q_i p_i + sum s_r E_rr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanPoint {
    pub t: Vec<Rational>,
    pub s: Vec<EpsScalar>,
}

impl CartanPoint {
    pub fn new(t: Vec<Rational>, s: Vec<EpsScalar>) -> Self {
        CartanPoint { t, s }
    }

    pub fn n(&self) -> usize {
        self.t.len()
    }

    pub fn matrix_size(&self) -> usize {
        self.s.len()
    }

    /// The corresponding h element: sp part diag(-t_1, t_1, ..., -t_n, t_n),
    /// gl part diag(s_1, ..., s_N).
    pub fn to_h_element(&self) -> HElement {
        let n = self.n();
        let mut sp = EpsMatrix::zero(2 * n);
        for (i, t) in self.t.iter().enumerate() {
            sp.set_entry(2 * i, 2 * i, EpsScalar::from_rational(-t));
            sp.set_entry(2 * i + 1, 2 * i + 1, EpsScalar::from_rational(t.clone()));
        }
        let gl = EpsMatrix::diagonal(&self.s);
        HElement::new(n, self.matrix_size(), sp, gl).expect("diagonal sp part is symmetric")
    }
}

/// The combinatorial factor C_{l_1, l_2, ...} = n! / (l_1! prod_{j>=2}
/// l_j! (2j)^{l_j}), with n = sum j l_j. `ls[j-1]` is l_j.
pub fn comb_factor(ls: &[usize]) -> Rational {
    let n: usize = ls.iter().enumerate().map(|(i, l)| (i + 1) * l).sum();
    let mut denom = factorial(ls.first().copied().unwrap_or(0) as u32);
    for (i, &l) in ls.iter().enumerate().skip(1) {
        let j = i + 1;
        denom *= factorial(l as u32) * rat_pow(&rat(2 * j as i64, 1), l as u32);
    }
    factorial(n as u32) / denom
}

/// The graph-cycle sum for P_n(X,...,X) on the Cartan, as a polynomial in
/// formal variables t_1..t_k, s_1..s_N (in that order):
/// sum over { l_j : sum j l_j = n } of
/// C_l prod_{j>=2} ( (2 I_j / 2^j) sum_i (eps t_i)^j )^{l_j} sum_r s_r^{l_1}.
pub fn p_n_graphsum_symbolic(n: usize, t_count: usize, nn: usize) -> UPolynomial {
    let kvars = t_count + nn;
    let mut out = UPolynomial::zero(kvars);
    // enumerate multiplicities l_j for j >= 2 with sum j l_j <= n
    let mut stack: Vec<(usize, usize, Vec<usize>)> = vec![(2, n, Vec::new())];
    let mut configs: Vec<Vec<usize>> = Vec::new();
    while let Some((j, rem, ls)) = stack.pop() {
        if j > n || rem == 0 {
            // l_1 = rem, l_j as collected (ls[m] = l_{m+2})
            let mut full = vec![rem];
            full.extend(&ls);
            configs.push(full);
            continue;
        }
        let mut l = 0usize;
        while j * l <= rem {
            let mut ls2 = ls.clone();
            while ls2.len() < j - 2 {
                ls2.push(0);
            }
            ls2.push(l);
            stack.push((j + 1, rem - j * l, ls2));
            l += 1;
        }
    }
    for ls in configs {
        let c = comb_factor(&ls);
        let l1 = ls[0];
        let mut term = UPolynomial::constant(kvars, EpsScalar::from_rational(c));
        for (i, &l) in ls.iter().enumerate().skip(1) {
            if l == 0 {
                continue;
            }
            let j = i + 1;
            // (2 I_j / 2^j) sum_i (eps t_i)^j
            let ij = closed_form_cycle_integral(j);
            let scale = ij * rat(2, 1) / rat_pow(&rat(2, 1), j as u32);
            let mut tsum = UPolynomial::zero(kvars);
            for v in 1..=t_count {
                let mut e = vec![0u32; kvars];
                e[v - 1] = j as u32;
                tsum.add_term(e, &EpsScalar::eps_pow(j as i64));
            }
            term = term.mul(&tsum.scale(&EpsScalar::from_rational(scale)).pow(l as u32));
        }
        // sum_r s_r^{l_1}, with the empty power summing to N
        let mut ssum = UPolynomial::zero(kvars);
        if l1 == 0 {
            ssum.add_term(vec![0u32; kvars], &EpsScalar::from_int(nn as i64));
        } else {
            for r in 1..=nn {
                let mut e = vec![0u32; kvars];
                e[t_count + r - 1] = l1 as u32;
                ssum.add_term(e, &EpsScalar::one());
            }
        }
        out = out.add(&term.mul(&ssum));
    }
    out
}

/// P_n(X,...,X) for a concrete Cartan point, via the graph-cycle sum.
pub fn p_n_cartan_graphsum(n: usize, x: &CartanPoint) -> EpsScalar {
    let poly = p_n_graphsum_symbolic(n, x.t.len(), x.s.len());
    let mut point: Vec<EpsScalar> = x
        .t
        .iter()
        .map(|t| EpsScalar::from_rational(t.clone()))
        .collect();
    point.extend(x.s.iter().cloned());
    eval_upoly(&poly, &point)
}

fn eval_upoly(p: &UPolynomial, point: &[EpsScalar]) -> EpsScalar {
    let mut out = EpsScalar::zero();
    for (exps, c) in p.terms() {
        let mut v = c.clone();
        for (val, &e) in point.iter().zip(exps) {
            for _ in 0..e {
                v = &v * val;
            }
            if v.is_zero() {
                break;
            }
        }
        out += &v;
    }
    out
}

/// One elementary Cartan argument M (x) a with M diagonal and a in the span
/// of 1 and the q_i p_i.
fn validate_cartan_pair(n: usize, m: &EpsMatrix, a: &WeylElement) -> Result<()> {
    for r in 0..m.size() {
        for c in 0..m.size() {
            if r != c && !m.entry(r, c).is_zero() {
                return Err(WeylError::NotInCartanSpan);
            }
        }
    }
    for (e, _) in a.terms() {
        let total: u32 = e.iter().sum();
        if total == 0 {
            continue;
        }
        let ok = total == 2
            && (1..=n).any(|i| e[2 * i - 2] == 1 && e[2 * i - 1] == 1);
        if !ok {
            return Err(WeylError::NotInCartanSpan);
        }
    }
    Ok(())
}

/// The restriction of P_n to the Cartan, by the exact cube integral
/// tr(M_1 ... M_n) mu_n int_{[0,1]^n} prod_{i<j} e^{eps psi(u_i-u_j) alpha_ij}
/// (a_1 (x) ... (x) a_n) du. The pair product runs over strict pairs i < j;
/// a diagonal factor would be undefined (alpha_ii, psi(0)).
pub fn p_n_cartan_integral(n: usize, args: &[(EpsMatrix, WeylElement)]) -> Result<EpsScalar> {
    if args.is_empty() {
        return Err(WeylError::ArityMismatch {
            expected: 1,
            got: 0,
        });
    }
    let slots = args.len();
    let nn = args[0].0.size();
    for (m, a) in args {
        if a.n() != n {
            return Err(WeylError::DimensionMismatch {
                expected: n,
                got: a.n(),
            });
        }
        if m.size() != nn {
            return Err(WeylError::MatrixSizeMismatch {
                expected: nn,
                got: m.size(),
            });
        }
        validate_cartan_pair(n, m, a)?;
    }
    // tr(M_1 ... M_n) for diagonal matrices
    let mut tr = EpsScalar::zero();
    for r in 0..nn {
        let mut prod = EpsScalar::one();
        for (m, _) in args {
            prod = &prod * m.entry(r, r);
            if prod.is_zero() {
                break;
            }
        }
        tr += &prod;
    }
    if tr.is_zero() {
        return Ok(EpsScalar::zero());
    }
    let weyl_slots: Vec<WeylElement> = args.iter().map(|(_, a)| a.clone()).collect();
    let mono = monomialize_slots(&weyl_slots, &EpsScalar::one());
    let mut total = EpsScalar::zero();
    for region in OrderedRegion::all_orderings(slots) {
        let ranks = region.ranks();
        let mut pairs = Vec::new();
        for i in 1..=slots {
            for j in (i + 1)..=slots {
                let f = psi_branch(slots, i, j, ranks[i - 1] < ranks[j - 1]);
                pairs.push(crate::tau::PairSpec::new(
                    i - 1,
                    j - 1,
                    f.scale(&EpsScalar::eps()),
                ));
            }
        }
        let mut integrand = UPolynomial::zero(slots);
        for (coeff, exps) in &mono {
            let w0 = UPolynomial::constant(slots, coeff.clone());
            integrand =
                integrand.add(&expand_single(n, slots, exps.clone(), w0, &pairs));
        }
        total += &integrate_over_region(&integrand, &region)?;
    }
    Ok(&tr * &total)
}

/// P_n(X,...,X) for a Cartan point by the integral route: expand X over the
/// Cartan basis and sum the elementary integrals multilinearly.
pub fn p_n_cartan_integral_diagonal(n: usize, x: &CartanPoint) -> Result<EpsScalar> {
    let nn = x.matrix_size();
    // basis with coefficients: (-t_i, Id (x) q_i p_i) and (s_r, E_rr (x) 1)
    let mut basis: Vec<(EpsScalar, EpsMatrix, WeylElement)> = Vec::new();
    for (i, t) in x.t.iter().enumerate() {
        let mut e = vec![0u32; 2 * n];
        e[2 * i] = 1;
        e[2 * i + 1] = 1;
        basis.push((
            EpsScalar::from_rational(-t),
            EpsMatrix::identity(nn),
            WeylElement::monomial(n, e, EpsScalar::one()),
        ));
    }
    for (r, s) in x.s.iter().enumerate() {
        let mut m = EpsMatrix::zero(nn);
        m.set_entry(r, r, EpsScalar::one());
        basis.push((s.clone(), m, WeylElement::one(n)));
    }
    let mut total = EpsScalar::zero();
    for combo in std::iter::repeat_n(0..basis.len(), n).multi_cartesian_product()
    {
        let mut coeff = EpsScalar::one();
        let mut args = Vec::with_capacity(n);
        for &b in &combo {
            coeff = &coeff * &basis[b].0;
            args.push((basis[b].1.clone(), basis[b].2.clone()));
        }
        if coeff.is_zero() {
            continue;
        }
        total += &(&coeff * &p_n_cartan_integral(n, &args)?);
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

/// One special-tuple case of the evaluation identity
/// ev_1 Theta_2n = (-1)^n chi((A_eps Ch)_n), together with the direct
/// adjacent-pairing value P_n(dv_1/dq_1, ..., dv_n/dq_n).
#[derive(Clone, Debug)]
pub struct RrhCase {
    pub label: String,
    pub lhs_theta: EpsScalar,
    pub rhs_polarized: EpsScalar,
    pub rhs_chi: EpsScalar,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct RrhReport {
    pub n: usize,
    pub nn: usize,
    pub cases: Vec<RrhCase>,
    pub pass: bool,
}

/// Evaluate one tuple of the local Riemann-Roch-Hirzebruch identity.
pub fn rrh_check_tuple(n: usize, nn: usize, choice: &[SpecialChoice]) -> Result<RrhCase> {
    let args = build_special_tuple(n, nn, choice)?;
    let label = {
        let mut parts = Vec::new();
        for (idx, c) in choice.iter().enumerate() {
            parts.push(format!("p{}", idx + 1));
            parts.push(c.label(idx + 1));
        }
        format!("({})", parts.join(", "))
    };
    let lhs_theta = theta_eval_at_identity(n, nn, &args)?;
    let ahat = ahat_ch_component(n, n, nn);
    // dv_j / dq_j, projected into h
    let mut hs = Vec::with_capacity(n);
    for (idx, _) in choice.iter().enumerate() {
        let j = idx + 1;
        let v = &args[2 * idx + 1];
        let mut dv = GlWeylElement::zero(n, nn);
        for r in 0..nn {
            for c in 0..nn {
                let d = v.entry(r, c).partial_derivative(2 * j);
                if !d.is_zero() {
                    dv = dv.add(&GlWeylElement::matrix_unit(nn, r, c, &d));
                }
            }
        }
        hs.push(project_pr(&dv)?);
    }
    let rhs_polarized = polarize(&ahat, &hs);
    let chi = chi_eval(&ahat, &args)?;
    let rhs_chi = if n.is_multiple_of(2) { chi } else { -&chi };
    let pass = lhs_theta == rhs_polarized && lhs_theta == rhs_chi;
    Ok(RrhCase {
        label,
        lhs_theta,
        rhs_polarized,
        rhs_chi,
        pass,
    })
}

/// Run the evaluation identity over every admissible special tuple.
/// Desk scale (n <= 2, N <= 3) is the intended range; larger scales are the
/// caller's responsibility (the CLI applies the cap with an override flag).
pub fn rrh_check(n: usize, nn: usize) -> Result<RrhReport> {
    let mut cases = Vec::new();
    for choice in admissible_choices(n, nn) {
        cases.push(rrh_check_tuple(n, nn, &choice)?);
    }
    let pass = cases.iter().all(|c| c.pass);
    Ok(RrhReport { n, nn, cases, pass })
}

#[derive(Clone, Debug)]
pub struct GenfunReport {
    pub max_n: usize,
    pub t_count: usize,
    pub nn: usize,
    pub graph_side: UPolynomial,
    pub product_side: UPolynomial,
    pub pass: bool,
}

/// Compare sum_n P_n(X,...,X)/n! against the exact Taylor expansion of
/// prod_i (eps t_i/2)/sinh(eps t_i/2) * sum_r e^{s_r}, as polynomials in
/// t_1..t_k, s_1..s_N truncated at total degree max_n.
pub fn genfun_check(max_n: usize, t_count: usize, nn: usize) -> GenfunReport {
    let kvars = t_count + nn;
    let mut graph_side = UPolynomial::zero(kvars);
    for n in 0..=max_n {
        let pn = p_n_graphsum_symbolic(n, t_count, nn);
        graph_side = graph_side.add(
            &pn.scale(&EpsScalar::from_rational(Rational::one() / factorial(n as u32))),
        );
    }
    // product side
    let inv = sinh_ratio_inverse(max_n);
    let mut product_side = UPolynomial::one(kvars);
    for v in 1..=t_count {
        let mut factor = UPolynomial::zero(kvars);
        for (k, c) in inv.iter().enumerate().take(max_n + 1) {
            if c.is_zero() {
                continue;
            }
            let mut e = vec![0u32; kvars];
            e[v - 1] = k as u32;
            factor.add_term(e, &EpsScalar::term(k as i64, c.clone()));
        }
        product_side = truncate_total_degree(&product_side.mul(&factor), max_n);
    }
    let mut ch = UPolynomial::zero(kvars);
    for r in 1..=nn {
        for k in 0..=max_n {
            let mut e = vec![0u32; kvars];
            e[t_count + r - 1] = k as u32;
            ch.add_term(
                e,
                &EpsScalar::from_rational(Rational::one() / factorial(k as u32)),
            );
        }
    }
    product_side = truncate_total_degree(&product_side.mul(&ch), max_n);
    let pass = graph_side == product_side;
    GenfunReport {
        max_n,
        t_count,
        nn,
        graph_side,
        product_side,
        pass,
    }
}

fn truncate_total_degree(p: &UPolynomial, d: usize) -> UPolynomial {
    let mut out = UPolynomial::zero(p.k());
    for (e, c) in p.terms() {
        if e.iter().sum::<u32>() as usize <= d {
            out.add_term(e.clone(), c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::theta_eval_at_identity;

    #[test]
    fn project_pr_examples() {
        // 1 (x) p1 -> 0
        let p = GlWeylElement::from_weyl(1, &WeylElement::p(1, 1));
        assert!(project_pr(&p).unwrap().is_zero());
        // special vectors are in the kernel of pr
        for (label, v) in special_vectors(2, 2) {
            assert!(project_pr(&v).unwrap().is_zero(), "{label}");
        }
        // E_11 (x) 1 -> (0, E_11)
        let e11 = GlWeylElement::matrix_unit(2, 0, 0, &WeylElement::one(1));
        let h = project_pr(&e11).unwrap();
        assert!(h.sp_part().is_zero());
        assert_eq!(*h.gl_part().entry(0, 0), EpsScalar::one());
        assert!(h.gl_part().entry(1, 1).is_zero());
    }

    #[test]
    fn special_vector_brackets() {
        // [p_i, u_ij] = du_ij/dq_i and [p_i, v_ir] = E_rr
        let n = 2;
        let nn = 2;
        for i in 1..=n {
            for j in 1..=n {
                let u = special_u(n, nn, i, j);
                let p = GlWeylElement::from_weyl(nn, &WeylElement::p(n, i));
                let got = p.eps_bracket(&u).unwrap();
                let want = GlWeylElement::from_weyl(
                    nn,
                    &u.entry(0, 0).partial_derivative(2 * i),
                );
                assert_eq!(got, want, "u{i}{j}");
            }
            for r in 1..=nn {
                let v = special_v(n, nn, i, r);
                let p = GlWeylElement::from_weyl(nn, &WeylElement::p(n, i));
                let got = p.eps_bracket(&v).unwrap();
                let want =
                    GlWeylElement::matrix_unit(nn, r - 1, r - 1, &WeylElement::one(n));
                assert_eq!(got, want, "v{i}{r}");
            }
        }
    }

    #[test]
    fn curvature_examples() {
        // C(p_1, u_11) has sp part of -q_1 p_1 and no gl part
        let n = 1;
        let p1 = GlWeylElement::from_weyl(1, &WeylElement::p(n, 1));
        let u11 = special_u(n, 1, 1, 1);
        let c = curvature_c(&p1, &u11).unwrap();
        let qp = WeylElement::q(n, 1).plain_mul(&WeylElement::p(n, 1));
        let want_sp = quadratic_to_sp_eps(n, &-&qp).unwrap();
        assert_eq!(*c.sp_part(), want_sp);
        assert!(c.gl_part().is_zero());
        // C(p_i, v_ir) = -E_rr
        let v11 = special_v(n, 2, 1, 1);
        let p1b = GlWeylElement::from_weyl(2, &WeylElement::p(n, 1));
        let c = curvature_c(&p1b, &v11).unwrap();
        assert!(c.sp_part().is_zero());
        assert_eq!(*c.gl_part().entry(0, 0), EpsScalar::from_int(-1));
        // antisymmetry
        let c1 = curvature_c(&p1, &u11).unwrap();
        let c2 = curvature_c(&u11, &p1).unwrap();
        assert_eq!(c1, c2.neg());
        assert!(curvature_c(&u11, &u11).unwrap().is_zero());
    }

    #[test]
    fn curvature_vanishes_on_h() {
        // both arguments in h: pr is a homomorphism there
        let n = 1;
        let nn = 2;
        let quad = WeylElement::p(n, 1).plain_mul(&WeylElement::q(n, 1));
        let a = GlWeylElement::from_weyl(nn, &quad);
        let b = GlWeylElement::matrix_unit(nn, 0, 0, &WeylElement::one(n));
        assert!(curvature_c(&a, &b).unwrap().is_zero());
        let q2 = WeylElement::q(n, 1).plain_mul(&WeylElement::q(n, 1));
        let c = GlWeylElement::from_weyl(nn, &q2);
        assert!(curvature_c(&a, &c).unwrap().is_zero());
    }

    #[test]
    fn ahat_series_printed_coefficients() {
        let deg2 = ahat_series_terms(2);
        assert_eq!(deg2, vec![(rat(-1, 48), vec![2])]);
        let deg4 = ahat_series_terms(4);
        // determinant formula forces 1/5760 on tr(X^4) and 1/4608 on (tr X^2)^2
        assert_eq!(
            deg4,
            vec![(rat(1, 4608), vec![2, 2]), (rat(1, 5760), vec![4])]
        );
        assert!(ahat_series_terms(3).is_empty());
    }

    #[test]
    fn ahat_component_on_cartan_matches_series() {
        // value series on a single t: 1 - (eps t)^2/24 + 7 (eps t)^4/5760 ...
        let inv = sinh_ratio_inverse(4);
        for j in [0usize, 2, 4] {
            let p = ahat_ch_component(j, 1, 1);
            let x = CartanPoint::new(vec![rat(3, 2)], vec![EpsScalar::zero()]);
            let got = p.eval(&x.to_h_element());
            // j! * c_j * (eps t)^j with the Ch factor tr(Id) = 1
            let wanted = EpsScalar::term(
                j as i64,
                factorial(j as u32) * &inv[j] * rat_pow(&rat(3, 2), j as u32),
            );
            assert_eq!(got, wanted, "degree {j}");
        }
    }

    #[test]
    fn ahat_component_degree_0_is_n() {
        let p = ahat_ch_component(0, 1, 3);
        let x = CartanPoint::new(vec![rat(0, 1)], vec![EpsScalar::zero(); 3]);
        assert_eq!(p.eval(&x.to_h_element()), EpsScalar::from_int(3));
    }

    #[test]
    fn polarize_examples() {
        let p = ahat_ch_component(2, 1, 1);
        // diagonal reproduces the evaluator
        let x = CartanPoint::new(vec![rat(2, 1)], vec![EpsScalar::rational(1, 3)]);
        let h = x.to_h_element();
        assert_eq!(polarize(&p, &[h.clone(), h.clone()]), p.eval(&h));
        // P_2(E_11, E_11) = 1 (polarizing sum s_r^2)
        let e11 = CartanPoint::new(vec![rat(0, 1)], vec![EpsScalar::one()]).to_h_element();
        assert_eq!(polarize(&p, &[e11.clone(), e11]), EpsScalar::one());
    }

    #[test]
    fn chi_q1_single_pair() {
        // q = 1: chi(P)(v1 /\ v2) = P(C(v1, v2)); concretely
        // (-1) chi((AhatCh)_1)(p1 /\ E11 q1) = 1
        let p = ahat_ch_component(1, 1, 1);
        let p1 = GlWeylElement::from_weyl(1, &WeylElement::p(1, 1));
        let v11 = special_v(1, 1, 1, 1);
        let chi = chi_eval(&p, &[p1.clone(), v11.clone()]).unwrap();
        assert_eq!(-&chi, EpsScalar::one());
        // antisymmetry
        let chi_swapped = chi_eval(&p, &[v11, p1]).unwrap();
        assert_eq!(chi, -&chi_swapped);
    }

    #[test]
    fn comb_factor_examples() {
        assert_eq!(comb_factor(&[0, 1]), rat(1, 2)); // n=2, l2=1
        assert_eq!(comb_factor(&[1]), rat(1, 1)); // n=1, l1=1
        assert_eq!(comb_factor(&[0, 2]), rat(3, 4)); // n=4, l2=2
    }

    #[test]
    fn graphsum_examples() {
        // n=1: sum_r s_r
        let x = CartanPoint::new(
            vec![rat(7, 3)],
            vec![EpsScalar::rational(1, 2), EpsScalar::rational(5, 1)],
        );
        assert_eq!(
            p_n_cartan_graphsum(1, &x),
            EpsScalar::rational(11, 2)
        );
        // n=2, s=0: -eps^2 (t1^2 + t2^2)/12
        let x = CartanPoint::new(vec![rat(1, 1), rat(2, 1)], vec![EpsScalar::zero()]);
        assert_eq!(
            p_n_cartan_graphsum(2, &x),
            EpsScalar::term(2, rat(-5, 12))
        );
        // n=2, t=0: sum_r s_r^2
        let x = CartanPoint::new(
            vec![rat(0, 1)],
            vec![EpsScalar::rational(2, 1), EpsScalar::rational(-3, 1)],
        );
        assert_eq!(p_n_cartan_graphsum(2, &x), EpsScalar::from_int(13));
    }

    #[test]
    fn cartan_integral_examples() {
        // n=1, arg 1 (x) q1 p1 -> 0
        let n = 1;
        let qp = WeylElement::monomial(n, vec![1, 1], EpsScalar::one());
        let got =
            p_n_cartan_integral(n, &[(EpsMatrix::identity(1), qp)]).unwrap();
        assert!(got.is_zero());
        // n=1, arg E_11 (x) 1 (N=1) -> 1
        let got = p_n_cartan_integral(
            n,
            &[(EpsMatrix::identity(1), WeylElement::one(n))],
        )
        .unwrap();
        assert_eq!(got, EpsScalar::one());
        // n=2, args (1 (x) q1p1, 1 (x) q2p2) -> 0 (disjoint indices)
        let n = 2;
        let q1p1 = WeylElement::monomial(n, vec![1, 1, 0, 0], EpsScalar::one());
        let q2p2 = WeylElement::monomial(n, vec![0, 0, 1, 1], EpsScalar::one());
        let got = p_n_cartan_integral(
            n,
            &[
                (EpsMatrix::identity(1), q1p1),
                (EpsMatrix::identity(1), q2p2),
            ],
        )
        .unwrap();
        assert!(got.is_zero());
        // outside the span errors
        let p = WeylElement::p(2, 1);
        assert_eq!(
            p_n_cartan_integral(2, &[(EpsMatrix::identity(1), p)]),
            Err(WeylError::NotInCartanSpan)
        );
    }

    #[test]
    fn graphsum_matches_integral_small() {
        for x in [
            CartanPoint::new(vec![rat(1, 1)], vec![EpsScalar::rational(1, 2)]),
            CartanPoint::new(vec![rat(-2, 3)], vec![EpsScalar::from_int(2)]),
        ] {
            for n in 1..=2usize {
                assert_eq!(
                    p_n_cartan_graphsum(n, &x),
                    p_n_cartan_integral_diagonal(n, &x).unwrap(),
                    "n = {n}"
                );
            }
        }
    }

    #[test]
    fn rrh_n1_base_case() {
        // (p1, E11 q1): LHS = Theta_2(p1 /\ q1)(1) = 1, RHS = P_1(E_11) = 1
        let case = rrh_check_tuple(1, 1, &[SpecialChoice::V { r: 1 }]).unwrap();
        assert_eq!(case.lhs_theta, EpsScalar::one());
        assert_eq!(case.rhs_polarized, EpsScalar::one());
        assert_eq!(case.rhs_chi, EpsScalar::one());
        assert!(case.pass);
    }

    #[test]
    fn rrh_all_tuples_n1() {
        let report = rrh_check(1, 1).unwrap();
        assert!(report.pass);
        assert_eq!(report.cases.len(), 2);
        let report = rrh_check(1, 2).unwrap();
        assert!(report.pass, "{:#?}", report.cases);
        assert_eq!(report.cases.len(), 3);
    }

    #[test]
    fn genfun_small() {
        // single t, s = 0 side-by-side with the sinh series, and t = 0 with e^s
        let r = genfun_check(2, 1, 1);
        assert!(r.pass);
        let r = genfun_check(3, 0, 1);
        assert!(r.pass);
        let r = genfun_check(4, 2, 1);
        assert!(r.pass);
    }

    #[test]
    fn theta_vanishes_on_sp_and_center() {
        // any wedge argument in sp_2n or in the scalar center kills Theta
        let n = 1;
        let quad = WeylElement::p(n, 1).plain_mul(&WeylElement::q(n, 1));
        let a = GlWeylElement::from_weyl(1, &quad);
        let b = GlWeylElement::from_weyl(1, &WeylElement::p(n, 1));
        let got = theta_eval_at_identity(n, 1, &[a, b]).unwrap();
        assert!(got.is_zero());
        let center = GlWeylElement::from_weyl(1, &WeylElement::scalar(n, EpsScalar::eps()));
        let c = GlWeylElement::from_weyl(1, &WeylElement::q(n, 1));
        let got = theta_eval_at_identity(n, 1, &[center, c]).unwrap();
        assert!(got.is_zero());
    }
}
