//! Property tests for the Weyl algebra, chains and exact integration.

use proptest::prelude::*;

use weylver_core::eps::{rat, EpsScalar};
use weylver_core::gen::{GenParams, WeylGen};
use weylver_core::hochschild::ChainTensor;
use weylver_core::integrate::{
    integrate_over_region, simplex_monomial_integral, OrderedRegion, UPolynomial,
};
use weylver_core::weyl::{quadratic_basis, sp_basis, WeylElement};

fn arb_weyl(n: usize, max_deg: u32, monos: usize) -> impl Strategy<Value = WeylElement> {
    prop::collection::vec(
        (
            prop::collection::vec(0..=max_deg, 2 * n),
            -1i64..=1,
            -5i64..=5,
            1i64..=5,
        ),
        1..=monos,
    )
    .prop_map(move |terms| {
        let mut f = WeylElement::zero(n);
        for (exps, eexp, num, den) in terms {
            if num != 0 && exps.iter().sum::<u32>() <= max_deg {
                f.add_term(exps, &EpsScalar::term(eexp, rat(num, den)));
            }
        }
        f
    })
}

fn moyal_associativity_holds(n: usize) {
    proptest!(ProptestConfig::with_cases(64), |(
        f in arb_weyl(n, 4, 2),
        g in arb_weyl(n, 4, 2),
        h in arb_weyl(n, 4, 2),
    )| {
        let lhs = f.moyal(&g).unwrap().moyal(&h).unwrap();
        let rhs = f.moyal(&g.moyal(&h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    });
}

#[test]
fn moyal_associativity_n1() {
    moyal_associativity_holds(1);
}

#[test]
fn moyal_associativity_n2() {
    moyal_associativity_holds(2);
}

#[test]
fn moyal_unit_and_grading() {
    proptest!(ProptestConfig::with_cases(64), |(f in arb_weyl(2, 4, 2))| {
        let one = WeylElement::one(2);
        prop_assert_eq!(one.moyal(&f).unwrap(), f.clone());
        prop_assert_eq!(f.moyal(&one).unwrap(), f.clone());
    });
    // homogeneous times homogeneous is homogeneous of the summed degree
    proptest!(ProptestConfig::with_cases(64), |(
        e1 in prop::collection::vec(0u32..=3, 4),
        e2 in prop::collection::vec(0u32..=3, 4),
        k1 in -1i64..=1,
        k2 in -1i64..=1,
    )| {
        let f = WeylElement::monomial(2, e1, EpsScalar::term(k1, rat(2, 3)));
        let g = WeylElement::monomial(2, e2, EpsScalar::term(k2, rat(-5, 2)));
        let df = f.graded_degree().unwrap();
        let dg = g.graded_degree().unwrap();
        let fg = f.moyal(&g).unwrap();
        if !fg.is_zero() {
            prop_assert_eq!(fg.graded_degree(), Some(df + dg));
        }
    });
}

#[test]
fn bracket_is_a_lie_bracket() {
    proptest!(ProptestConfig::with_cases(32), |(
        f in arb_weyl(1, 4, 2),
        g in arb_weyl(1, 4, 2),
        h in arb_weyl(1, 4, 2),
    )| {
        // antisymmetry
        let fg = f.bracket(&g).unwrap();
        prop_assert_eq!(fg.clone(), -&g.bracket(&f).unwrap());
        // Jacobi
        let j1 = fg.bracket(&h).unwrap();
        let j2 = g.bracket(&h).unwrap().bracket(&f).unwrap();
        let j3 = h.bracket(&f).unwrap().bracket(&g).unwrap();
        prop_assert!((&(&j1 + &j2) + &j3).is_zero());
        // Leibniz: [f, g*h] = [f,g]*h + g*[f,h]
        let lhs = f.bracket(&g.moyal(&h).unwrap()).unwrap();
        let rhs = &fg.moyal(&h).unwrap() + &g.moyal(&f.bracket(&h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    });
}

#[test]
fn sp_action_equals_bracket_with_quadratic() {
    for n in 1..=2usize {
        let mut gen = WeylGen::new(2024, GenParams::new(n, 3));
        for a in sp_basis(n) {
            let at = a.to_quadratic();
            for _ in 0..4 {
                let f = gen.element();
                assert_eq!(a.act(&f).unwrap(), at.bracket(&f).unwrap());
            }
        }
    }
}

#[test]
fn tilde_is_a_lie_homomorphism_n2() {
    let basis = sp_basis(2);
    for a in basis.iter().take(6) {
        for b in basis.iter().take(6) {
            assert_eq!(
                a.commutator(b).to_quadratic(),
                a.to_quadratic().bracket(&b.to_quadratic()).unwrap()
            );
        }
    }
}

#[test]
fn boundary_squares_to_zero_random() {
    for n in 1..=2usize {
        let mut gen = WeylGen::new(17, GenParams::new(n, 3));
        for degree in 2..=4usize {
            for _ in 0..6 {
                let c = gen.chain(degree);
                let dd = c.boundary().unwrap().boundary().unwrap();
                assert!(dd.is_zero(), "d^2 != 0 at n={n}, degree={degree}");
            }
        }
    }
}

#[test]
fn normalize_commutes_with_boundary_up_to_degenerates() {
    let mut gen = WeylGen::new(91, GenParams::new(1, 3));
    for degree in 2..=4usize {
        for _ in 0..8 {
            let c = gen.chain(degree);
            let direct = c.boundary().unwrap().normalize();
            let via = c.normalize().boundary().unwrap().normalize();
            assert_eq!(direct, via);
            // idempotence
            let nc = c.normalize();
            assert_eq!(nc.normalize(), nc);
        }
    }
}

#[test]
fn sp_basis_tilde_gives_the_quadratic_monomials() {
    // the lowered basis e_ij + e_ji maps onto y_i y_j for i < j and onto
    // y_i^2 / 2 on the diagonal
    for n in 1..=2usize {
        let mut tilded: Vec<WeylElement> =
            sp_basis(n).iter().map(|a| a.to_quadratic()).collect();
        tilded.sort();
        let mut quads: Vec<WeylElement> = quadratic_basis(n)
            .into_iter()
            .map(|q| {
                let is_square = q.terms().any(|(e, _)| e.iter().any(|&m| m == 2));
                if is_square {
                    q.scale_rational(&rat(1, 2))
                } else {
                    q
                }
            })
            .collect();
        quads.sort();
        assert_eq!(tilded, quads);
    }
}

/// Iterated-antidifferentiation oracle for ordered-region integrals:
/// integrate u_{order[0]} from 0 to u_{order[1]}, and so on, the last
/// variable from 0 to 1.
fn iterated_integral_oracle(p: &UPolynomial, r: &OrderedRegion) -> EpsScalar {
    let k = r.k();
    let mut current = p.clone();
    let order = r.order().to_vec();
    for (pos, &v) in order.iter().enumerate() {
        let upper = if pos + 1 < k { Some(order[pos + 1]) } else { None };
        let mut next = UPolynomial::zero(k);
        for (exps, c) in current.terms() {
            let e = exps[v - 1];
            let scaled = c.scale(&(rat(1, 1) / rat(e as i64 + 1, 1)));
            let mut e2 = exps.clone();
            e2[v - 1] = 0;
            match upper {
                Some(w) => {
                    // substitute u_v = u_w after antidifferentiation
                    e2[w - 1] += e + 1;
                    next.add_term(e2, &scaled);
                }
                None => {
                    // evaluate at 1
                    next.add_term(e2, &scaled);
                }
            }
        }
        current = next;
    }
    let mut out = EpsScalar::zero();
    for (exps, c) in current.terms() {
        assert!(exps.iter().all(|&e| e == 0));
        out += c;
    }
    if r.sign() < 0 {
        -&out
    } else {
        out
    }
}

#[test]
fn region_integral_matches_iterated_antidifferentiation() {
    proptest!(ProptestConfig::with_cases(128), |(
        exps in prop::collection::vec(0u32..=3, 3),
        perm_seed in 0usize..6,
    )| {
        let k = 3;
        let perms: Vec<Vec<usize>> = vec![
            vec![1, 2, 3], vec![1, 3, 2], vec![2, 1, 3],
            vec![2, 3, 1], vec![3, 1, 2], vec![3, 2, 1],
        ];
        let r = OrderedRegion::new(perms[perm_seed].clone(), 1).unwrap();
        let mut p = UPolynomial::zero(k);
        p.add_term(exps.clone(), &EpsScalar::rational(7, 3));
        let fast = integrate_over_region(&p, &r).unwrap();
        let slow = iterated_integral_oracle(&p, &r);
        prop_assert_eq!(fast, slow);
        // and on the standard simplex the monomial kernel agrees
        let delta = OrderedRegion::simplex(k);
        let via_kernel = EpsScalar::rational(7, 3)
            .scale(&simplex_monomial_integral(&exps));
        prop_assert_eq!(integrate_over_region(&p, &delta).unwrap(), via_kernel);
    });
}

#[test]
fn moyal_oracle_iterated_alpha() {
    // order-by-order bidifferential expansion: apply alpha as a sum of
    // tensor pairs, multiply, and compare with the closed product formula
    fn moyal_oracle(f: &WeylElement, g: &WeylElement) -> WeylElement {
        let n = f.n();
        let mut pairs = vec![(EpsScalar::one(), f.clone(), g.clone())];
        let mut out = WeylElement::zero(n);
        let mut order = 0i64;
        loop {
            // multiply current pairs into the accumulator with eps^order/order!
            let mut level = WeylElement::zero(n);
            for (c, a, b) in &pairs {
                level = &level + &a.plain_mul(b).scale(c);
            }
            let mut fact = rat(1, 1);
            for i in 1..=order {
                fact = fact * rat(i, 1);
            }
            out = &out + &level.scale(&EpsScalar::term(order, rat(1, 1) / fact));
            // apply alpha once more
            let mut next = Vec::new();
            for (c, a, b) in &pairs {
                for r in 1..=n {
                    let half = c.scale(&rat(1, 2));
                    let t1 = (a.partial_derivative(2 * r - 1), b.partial_derivative(2 * r));
                    if !t1.0.is_zero() && !t1.1.is_zero() {
                        next.push((half.clone(), t1.0, t1.1));
                    }
                    let t2 = (a.partial_derivative(2 * r), b.partial_derivative(2 * r - 1));
                    if !t2.0.is_zero() && !t2.1.is_zero() {
                        next.push((-&half, t2.0, t2.1));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            pairs = next;
            order += 1;
        }
        out
    }

    let mut gen = WeylGen::new(5150, GenParams::new(2, 3));
    for _ in 0..20 {
        let f = gen.element();
        let g = gen.element();
        assert_eq!(f.moyal(&g).unwrap(), moyal_oracle(&f, &g));
    }
    // the spec's worked example
    let p2 = WeylElement::monomial(1, vec![2, 0], EpsScalar::one());
    let q2 = WeylElement::monomial(1, vec![0, 2], EpsScalar::one());
    assert_eq!(p2.moyal(&q2).unwrap(), moyal_oracle(&p2, &q2));
}

#[test]
fn chain_canonical_form_merges_representations() {
    // (p + q) (x) 1 and p (x) 1 + q (x) 1 are the same chain
    let p = WeylElement::p(1, 1);
    let q = WeylElement::q(1, 1);
    let a = ChainTensor::elementary(vec![&p + &q, WeylElement::one(1)]);
    let mut b = ChainTensor::zero(1, 1);
    b.add_elementary(&EpsScalar::one(), vec![p, WeylElement::one(1)]);
    b.add_elementary(&EpsScalar::one(), vec![q, WeylElement::one(1)]);
    assert_eq!(a, b);
}
