//! The named verification suites behind `weylver verify`.

use std::time::Instant;

use weylver_core::chern::{
    ahat_ch_component, ahat_series_terms, genfun_check, p_n_cartan_graphsum,
    p_n_cartan_integral_diagonal, rrh_check, CartanPoint,
};
use weylver_core::eps::{rat, EpsScalar, Rational};
use weylver_core::error::WeylError;
use weylver_core::gen::{GenParams, WeylGen};
use weylver_core::hochschild::{canonical_cycle, permutation_sign, ChainTensor};
use weylver_core::integrate::{closed_form_cycle_integral, psi_cycle_integral};
use weylver_core::lie::{
    check_caps, d_lie_dual, flat_trace_density, phi_n_apply, theta_eval, theta_eval_at_identity,
    BracketKind, GlWeylElement,
};
use weylver_core::series::sinh_ratio_inverse;
use weylver_core::tau::{tau_closed_form_n1, tau_eval, tau_sigma_eval};
use weylver_core::weyl::{factorial, quadratic_basis, rat_pow, WeylElement};

use crate::report::{case, flag_case, CaseResult, SuiteParameters, SuiteReport};

pub const SUITES: [&str; 16] = [
    "moyal-assoc",
    "hochschild-d2",
    "tau-cocycle",
    "tau-normalization",
    "tau-sp-invariance",
    "tau-property-iii",
    "tau-permutation",
    "tau-closed-form",
    "theta-relative",
    "theta-normalization",
    "flat-trace",
    "cycle-integrals",
    "ahat-expansion",
    "pn-crosscheck",
    "rrh",
    "genfun",
];

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub n: usize,
    pub nn: usize,
    pub deg: u32,
    pub cases: usize,
    pub seed: u64,
    pub override_caps: bool,
    pub inject_failure: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            n: 1,
            nn: 1,
            deg: 3,
            cases: 25,
            seed: 42,
            override_caps: false,
            inject_failure: false,
        }
    }
}

#[derive(Debug)]
pub enum SuiteError {
    Unknown(String),
    Caps(WeylError),
    Core(WeylError),
}

impl std::fmt::Display for SuiteError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SuiteError::Unknown(name) => {
                write!(f, "unknown suite `{name}` (try --list-suites)")
            }
            SuiteError::Caps(e) => write!(f, "{e}"),
            SuiteError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SuiteError {}

impl From<WeylError> for SuiteError {
    fn from(e: WeylError) -> Self {
        SuiteError::Core(e)
    }
}

fn params_of(opts: &SuiteOptions) -> SuiteParameters {
    SuiteParameters {
        n: opts.n,
        nn: opts.nn,
        deg: opts.deg,
        cases: opts.cases,
        seed: opts.seed,
    }
}

fn render_tensor(slots: &[WeylElement]) -> String {
    slots
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(" | ")
}

fn zero_case(index: usize, input: String, got: &EpsScalar) -> CaseResult {
    case(index, input, &EpsScalar::zero(), got)
}

/// Run one named suite. Scale caps (n <= 2, N <= 3) apply unless overridden.
pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteReport, SuiteError> {
    if !SUITES.contains(&name) {
        return Err(SuiteError::Unknown(name.to_string()));
    }
    check_caps(opts.n, opts.nn, opts.override_caps).map_err(SuiteError::Caps)?;
    let start = Instant::now();
    let mut cases = match name {
        "moyal-assoc" => moyal_assoc(opts)?,
        "hochschild-d2" => hochschild_d2(opts)?,
        "tau-cocycle" => tau_cocycle(opts)?,
        "tau-normalization" => tau_normalization(opts)?,
        "tau-sp-invariance" => tau_sp_invariance(opts)?,
        "tau-property-iii" => tau_property_iii(opts)?,
        "tau-permutation" => tau_permutation(opts)?,
        "tau-closed-form" => tau_closed_form(opts)?,
        "theta-relative" => theta_relative(opts)?,
        "theta-normalization" => theta_normalization(opts)?,
        "flat-trace" => flat_trace(opts)?,
        "cycle-integrals" => cycle_integrals(opts)?,
        "ahat-expansion" => ahat_expansion(opts)?,
        "pn-crosscheck" => pn_crosscheck(opts)?,
        "rrh" => rrh(opts)?,
        "genfun" => genfun(opts)?,
        _ => unreachable!(),
    };
    if opts.inject_failure {
        let idx = cases.len();
        cases.push(case(
            idx,
            "injected self-test failure".into(),
            &EpsScalar::one(),
            &EpsScalar::zero(),
        ));
    }
    Ok(SuiteReport::assemble(
        name,
        params_of(opts),
        cases,
        start.elapsed().as_millis(),
    ))
}

type Cases = Result<Vec<CaseResult>, SuiteError>;

fn moyal_assoc(opts: &SuiteOptions) -> Cases {
    let mut gen = WeylGen::new(opts.seed, GenParams::new(opts.n, opts.deg));
    let mut out = Vec::new();
    for i in 0..opts.cases {
        let f = gen.element();
        let g = gen.element();
        let h = gen.element();
        let lhs = f.moyal(&g)?.moyal(&h)?;
        let rhs = f.moyal(&g.moyal(&h)?)?;
        out.push(flag_case(
            i,
            format!("assoc: ({f}) * ({g}) * ({h})"),
            lhs == rhs,
        ));
    }
    Ok(out)
}

fn hochschild_d2(opts: &SuiteOptions) -> Cases {
    let mut gen = WeylGen::new(opts.seed, GenParams::new(opts.n, opts.deg.min(3)));
    let mut out = Vec::new();
    for i in 0..opts.cases {
        let degree = 2 + (i % 3);
        let c = gen.chain(degree);
        let dd = c.boundary()?.boundary()?;
        out.push(flag_case(
            i,
            format!("d(d(random degree-{degree} chain))"),
            dd.is_zero(),
        ));
    }
    Ok(out)
}

fn tau_cocycle(opts: &SuiteOptions) -> Cases {
    let ydeg = if opts.n == 1 { opts.deg } else { opts.deg.min(2) };
    let mut gen = WeylGen::new(opts.seed, GenParams::new(opts.n, ydeg));
    let mut out = Vec::new();
    for i in 0..opts.cases {
        let c = gen.normalized_chain(2 * opts.n + 1);
        let v = tau_eval(opts.n, &c.boundary()?)?;
        out.push(zero_case(i, format!("tau_{}(d c_{i})", 2 * opts.n), &v));
    }
    Ok(out)
}

fn tau_normalization(opts: &SuiteOptions) -> Cases {
    let v = tau_eval(opts.n, &canonical_cycle(opts.n))?;
    Ok(vec![case(
        0,
        format!("tau_{0}(c_{0})", 2 * opts.n),
        &EpsScalar::one(),
        &v,
    )])
}

fn tau_sp_invariance(opts: &SuiteOptions) -> Cases {
    let mut gen = WeylGen::new(opts.seed, GenParams::new(opts.n, opts.deg.min(2)));
    let quads = quadratic_basis(opts.n);
    let mut out = Vec::new();
    let mut index = 0usize;
    for _ in 0..opts.cases {
        let slots: Vec<WeylElement> = (0..=2 * opts.n).map(|_| gen.element()).collect();
        for at in &quads {
            let mut total = EpsScalar::zero();
            for i in 0..=2 * opts.n {
                let mut t = slots.clone();
                t[i] = at.bracket(&slots[i])?;
                if t[i].is_zero() {
                    continue;
                }
                total += &tau_eval(opts.n, &ChainTensor::elementary(t))?;
            }
            out.push(zero_case(
                index,
                format!("sum_i tau(.. [{at}, a_i] ..) on {}", render_tensor(&slots)),
                &total,
            ));
            index += 1;
        }
    }
    Ok(out)
}

fn tau_property_iii(opts: &SuiteOptions) -> Cases {
    let mut gen = WeylGen::new(opts.seed, GenParams::new(opts.n, opts.deg.min(2)));
    let quads = quadratic_basis(opts.n);
    let mut out = Vec::new();
    let mut index = 0usize;
    for _ in 0..opts.cases {
        let slots: Vec<WeylElement> = (0..2 * opts.n).map(|_| gen.element()).collect();
        for at in &quads {
            let mut total = EpsScalar::zero();
            for i in 1..=2 * opts.n {
                let mut t = Vec::with_capacity(2 * opts.n + 1);
                t.extend_from_slice(&slots[..i]);
                t.push(at.clone());
                t.extend_from_slice(&slots[i..]);
                let v = tau_eval(opts.n, &ChainTensor::elementary(t))?;
                if i % 2 == 0 {
                    total += &v;
                } else {
                    total = &total - &v;
                }
            }
            out.push(zero_case(
                index,
                format!("sum_i (-1)^i tau(.. {at} inserted at i ..)"),
                &total,
            ));
            index += 1;
        }
    }
    Ok(out)
}

fn tau_permutation(opts: &SuiteOptions) -> Cases {
    let mut gen = WeylGen::new(opts.seed, GenParams::new(opts.n, opts.deg.min(2)));
    let dim = 2 * opts.n;
    let sigmas: Vec<Vec<usize>> = if opts.n == 1 {
        vec![vec![1, 2], vec![2, 1]]
    } else {
        vec![
            vec![1, 2, 3, 4],
            vec![2, 1, 3, 4],
            vec![1, 3, 2, 4],
            vec![4, 3, 2, 1],
            vec![2, 3, 4, 1],
            vec![3, 1, 4, 2],
        ]
    };
    let mut out = Vec::new();
    let mut index = 0usize;
    for _ in 0..opts.cases {
        let slots: Vec<WeylElement> = (0..=dim).map(|_| gen.element()).collect();
        for sigma in &sigmas {
            let sign = permutation_sign(sigma);
            let mut inv = vec![0usize; dim];
            for (i, &v) in sigma.iter().enumerate() {
                inv[v - 1] = i + 1;
            }
            let permuted: Vec<WeylElement> = std::iter::once(slots[0].clone())
                .chain((1..=dim).map(|m| slots[inv[m - 1]].clone()))
                .collect();
            let lhs = tau_eval(opts.n, &ChainTensor::elementary(permuted))?;
            let rhs = tau_sigma_eval(opts.n, sigma, &ChainTensor::elementary(slots.clone()))?;
            let rhs = if sign > 0 { rhs } else { -&rhs };
            out.push(case(
                index,
                format!("sigma = {sigma:?} on {}", render_tensor(&slots)),
                &lhs,
                &rhs,
            ));
            index += 1;
        }
    }
    Ok(out)
}

fn tau_closed_form(opts: &SuiteOptions) -> Cases {
    if opts.n != 1 {
        return Err(SuiteError::Core(WeylError::ClosedFormRequiresN1(opts.n)));
    }
    let mut gen = WeylGen::new(opts.seed, GenParams::new(1, opts.deg.max(4)));
    let mut out = Vec::new();
    // the frozen regression values
    let one = WeylElement::one(1);
    let p = WeylElement::p(1, 1);
    let q = WeylElement::q(1, 1);
    let pq = p.plain_mul(&q);
    let reg1 = ChainTensor::elementary(vec![one, p.clone(), q.clone()]);
    out.push(case(
        0,
        "1 | p1 | q1".into(),
        &EpsScalar::rational(1, 2),
        &tau_closed_form_n1(&reg1)?,
    ));
    let reg2 = ChainTensor::elementary(vec![p, q, pq]);
    out.push(case(
        1,
        "p1 | q1 | p1*q1".into(),
        &EpsScalar::term(1, rat(1, 12)),
        &tau_closed_form_n1(&reg2)?,
    ));
    for i in 0..opts.cases {
        let slots: Vec<WeylElement> = (0..3).map(|_| gen.element()).collect();
        let c = ChainTensor::elementary(slots.clone()).normalize();
        let a = tau_closed_form_n1(&c)?;
        let b = tau_eval(1, &c)?;
        out.push(case(i + 2, render_tensor(&slots), &b, &a));
    }
    Ok(out)
}

fn theta_relative(opts: &SuiteOptions) -> Cases {
    let mut gen = WeylGen::new(opts.seed, GenParams::new(opts.n, opts.deg.min(2)));
    let nn = opts.nn;
    let mut out = Vec::new();
    let mut index = 0usize;
    let theta = |a: &[GlWeylElement], t: &GlWeylElement| {
        phi_n_apply(2 * opts.n, &|chain| tau_eval(opts.n, chain), a, t)
    };
    for _ in 0..opts.cases {
        // d_Lie Theta = 0 on a random arity-(2n+1) tuple
        let args: Vec<GlWeylElement> = (0..2 * opts.n + 1).map(|_| gen.gl_element(nn)).collect();
        let target = gen.gl_element(nn);
        let v = d_lie_dual(&theta, &args, &target, BracketKind::Eps)?;
        out.push(zero_case(index, "d_Lie Theta on random arguments".into(), &v));
        index += 1;
        // vanishing on an sp argument
        let mut args: Vec<GlWeylElement> = (0..2 * opts.n).map(|_| gen.gl_element(nn)).collect();
        let quad = quadratic_basis(opts.n)[index % (opts.n * (2 * opts.n + 1))].clone();
        let len = args.len();
        args[index % len] = GlWeylElement::from_weyl(nn, &quad);
        let v = theta_eval(opts.n, nn, &args, &target)?;
        out.push(zero_case(index, format!("Theta with sp argument {quad}"), &v));
        index += 1;
        // antisymmetry under a transposition
        let a: Vec<GlWeylElement> = (0..2 * opts.n).map(|_| gen.gl_element(nn)).collect();
        let mut b = a.clone();
        b.swap(0, 1);
        let va = theta_eval(opts.n, nn, &a, &target)?;
        let vb = theta_eval(opts.n, nn, &b, &target)?;
        out.push(case(
            index,
            "Theta antisymmetry under transposition".into(),
            &va,
            &-&vb,
        ));
        index += 1;
    }
    Ok(out)
}

fn theta_normalization(opts: &SuiteOptions) -> Cases {
    let mut ws = Vec::new();
    for i in 1..=opts.n {
        ws.push(WeylElement::p(opts.n, i));
        ws.push(WeylElement::q(opts.n, i));
    }
    let args: Vec<GlWeylElement> = ws
        .iter()
        .map(|w| GlWeylElement::from_weyl(opts.nn, w))
        .collect();
    let v = theta_eval_at_identity(opts.n, opts.nn, &args)?;
    Ok(vec![case(
        0,
        format!("Theta^{}(p1 ^ q1 ^ ...)(1), n={}", opts.nn, opts.n),
        &EpsScalar::from_int(opts.nn as i64),
        &v,
    )])
}

fn flat_trace(opts: &SuiteOptions) -> Cases {
    let mut gen = WeylGen::new(opts.seed, GenParams::new(opts.n, opts.deg.max(4)));
    let mut out = Vec::new();
    let one = WeylElement::one(opts.n);
    let origin = vec![Rational::from_integer(0.into()); 2 * opts.n];
    out.push(case(
        0,
        "density of 1 at the origin".into(),
        &EpsScalar::one(),
        &flat_trace_density(opts.n, &one, &origin)?,
    ));
    for i in 0..opts.cases {
        let f = gen.element_eps_free();
        let x = gen.point(2 * opts.n);
        let got = flat_trace_density(opts.n, &f, &x)?;
        out.push(case(i + 1, format!("density of {f}"), &f.eval_at(&x), &got));
    }
    Ok(out)
}

fn cycle_integrals(opts: &SuiteOptions) -> Cases {
    let jmax = (opts.deg.max(4) as usize).min(8);
    let mut out = Vec::new();
    for (idx, j) in (2..=jmax).enumerate() {
        let direct = EpsScalar::from_rational(psi_cycle_integral(j));
        let closed = EpsScalar::from_rational(closed_form_cycle_integral(j));
        out.push(case(idx, format!("I_{j} vs closed form"), &closed, &direct));
    }
    Ok(out)
}

fn ahat_expansion(opts: &SuiteOptions) -> Cases {
    let mut out = Vec::new();
    let deg2 = ahat_series_terms(2);
    out.push(flag_case(
        0,
        "A-roof degree 2 is -1/48 tr(X^2)".into(),
        deg2 == vec![(rat(-1, 48), vec![2])],
    ));
    let deg4 = ahat_series_terms(4);
    out.push(flag_case(
        1,
        "A-roof degree 4 is 1/4608 (tr X^2)^2 + 1/5760 tr(X^4)".into(),
        deg4 == vec![(rat(1, 4608), vec![2, 2]), (rat(1, 5760), vec![4])],
    ));
    // diagonal evaluation against the sinh-ratio series
    let inv = sinh_ratio_inverse(6);
    let mut gen = WeylGen::new(opts.seed, GenParams::new(1, 1));
    for (k, j) in [0usize, 2, 4, 6].into_iter().enumerate() {
        let t = gen.rational();
        let x = CartanPoint::new(vec![t.clone()], vec![EpsScalar::zero(); opts.nn]);
        let got = ahat_ch_component(j, 1, opts.nn).eval(&x.to_h_element());
        let want = EpsScalar::term(
            j as i64,
            factorial(j as u32) * &inv[j] * rat_pow(&t, j as u32) * rat(opts.nn as i64, 1),
        );
        out.push(case(
            k + 2,
            format!("(A_eps Ch)_{j} on diag(t) with t={t}"),
            &want,
            &got,
        ));
    }
    Ok(out)
}

fn pn_crosscheck(opts: &SuiteOptions) -> Cases {
    let mut gen = WeylGen::new(opts.seed, GenParams::new(opts.n, 1));
    let mut out = Vec::new();
    let mut index = 0usize;
    for _ in 0..opts.cases {
        for n in 1..=opts.n {
            let t: Vec<Rational> = (0..n).map(|_| gen.rational()).collect();
            let s: Vec<EpsScalar> = (0..opts.nn)
                .map(|_| EpsScalar::from_rational(gen.rational()))
                .collect();
            let x = CartanPoint::new(t, s);
            let graph = p_n_cartan_graphsum(n, &x);
            let integral = p_n_cartan_integral_diagonal(n, &x)?;
            out.push(case(
                index,
                format!("graph sum vs cube integral, n={n}"),
                &graph,
                &integral,
            ));
            index += 1;
            let ahat = ahat_ch_component(n, n, opts.nn).eval(&x.to_h_element());
            out.push(case(
                index,
                format!("graph sum vs (A_eps Ch)_{n} on the Cartan"),
                &graph,
                &ahat,
            ));
            index += 1;
        }
    }
    Ok(out)
}

fn rrh(opts: &SuiteOptions) -> Cases {
    let report = rrh_check(opts.n, opts.nn)?;
    let mut out = Vec::new();
    for (i, c) in report.cases.iter().enumerate() {
        out.push(case(
            3 * i,
            format!("{} : ev_1 Theta vs P_n at the curvature slots", c.label),
            &c.rhs_polarized,
            &c.lhs_theta,
        ));
        out.push(case(
            3 * i + 1,
            format!("{} : ev_1 Theta vs (-1)^n chi((A_eps Ch)_n)", c.label),
            &c.rhs_chi,
            &c.lhs_theta,
        ));
        out.push(flag_case(3 * i + 2, format!("{} : all routes agree", c.label), c.pass));
    }
    Ok(out)
}

fn genfun(opts: &SuiteOptions) -> Cases {
    let max_n = (opts.deg as usize).clamp(2, 4);
    let t_count = opts.n.min(2);
    let r = genfun_check(max_n, t_count, opts.nn);
    Ok(vec![flag_case(
        0,
        format!(
            "generating function to total degree {max_n} in {t_count} t's and {} s's",
            opts.nn
        ),
        r.pass,
    )])
}
