use super::*;
use crate::linalg::{SparseMatrix, C64};
use crate::ncalg::{q_map, AlgebraKind, Generator::*, NCPolynomial};
use crate::rep::{
    build_module, podles as pd, BasisIndex, ModularModule, ModuleKind, Params, TruncationWindow,
};

fn g(x: crate::ncalg::Generator) -> NCPolynomial {
    NCPolynomial::generator(x)
}

fn podles(q: f64, s: f64, n: usize) -> ModularModule {
    build_module(
        ModuleKind::Podles,
        Params::new(q, s),
        TruncationWindow::podles(n),
    )
    .unwrap()
}

fn basic(q: f64, n: usize, l: usize) -> ModularModule {
    build_module(
        ModuleKind::Suq2Basic,
        Params::suq2(q),
        TruncationWindow::suq2_basic(n, l),
    )
    .unwrap()
}

#[test]
fn weight_examples() {
    let m = podles(0.5, 1.0, 20);
    let z = SparseMatrix::zeros(m.dim(), m.dim());
    assert_eq!(weight_eval(&m, &z).value, C64::new(0.0, 0.0));
    let e0 = m
        .basis()
        .position(&BasisIndex::PodlesPM { k: 0, plus: true })
        .unwrap();
    let rank_one = SparseMatrix::from_triplets(m.dim(), m.dim(), [(e0, e0, C64::new(1.0, 0.0))]);
    assert_eq!(weight_eval(&m, &rank_one).value, C64::new(1.0, 0.0));
}

#[test]
fn weight_of_commutator_product_matches_direct_summation() {
    for &(q, s) in &[(0.5, 1.0), (0.5, 0.7)] {
        let m = podles(q, s, 60);
        let t = m
            .commutator(&g(B))
            .unwrap()
            .mul(&m.commutator(&g(BStar)).unwrap());
        let e = weight_eval(&m, &t);
        // [F,B][F,B*] = -diag(D D^T, D D^T) with D e_k = d_k e_{k-1}
        let direct: f64 = (0..57)
            .map(|k| -2.0 * q.powi(-2 * k) * pd::diff_b(k as usize + 1, q, s).powi(2))
            .sum();
        assert!(
            (e.value.re - direct).abs() < 1e-10,
            "{} vs {direct}",
            e.value.re
        );
        assert!(e.tail < 1e-10);
    }
}

#[test]
fn trivial_chern_values() {
    let m = podles(0.5, 0.7, 30);
    let phi = ChernFunctional::new(&m, Normalization::Raw);
    let one = NCPolynomial::one(AlgebraKind::Podles);
    assert_eq!(
        phi.eval(&[one.clone(), one.clone(), one.clone()])
            .unwrap()
            .value,
        C64::new(0.0, 0.0)
    );
    assert!(phi.eval(&[one.clone(), one]).is_err());

    let m = basic(0.5, 20, 6);
    let phi = ChernFunctional::new(&m, Normalization::Lambda);
    let a = g(Alpha);
    assert_eq!(
        phi.eval(&[a.clone(), a.clone(), a.clone(), a])
            .unwrap()
            .value,
        C64::new(0.0, 0.0)
    );
}

#[test]
fn podles_cocycle_examples() {
    let m = podles(0.5, 0.7, 60);
    let phi = ChernFunctional::new(&m, Normalization::Raw);
    let (a, b, bs) = (g(A), g(B), g(BStar));
    assert!(
        check_sigma_invariance(&phi, &[a.clone(), a.clone(), a.clone()])
            .unwrap()
            .residual
            < 1e-10
    );
    assert!(
        check_sigma_invariance(&phi, &[a.clone(), b.clone(), bs.clone()])
            .unwrap()
            .residual
            < 1e-10
    );
    assert!(
        check_sigma_cyclicity(&phi, &[a.clone(), b.clone(), bs.clone()])
            .unwrap()
            .residual
            < 1e-8
    );
    assert!(
        check_hochschild(&phi, &[a.clone(), b, bs, a])
            .unwrap()
            .residual
            < 1e-8
    );
    let one = NCPolynomial::one(AlgebraKind::Podles);
    let ones = vec![one; 4];
    assert_eq!(check_hochschild(&phi, &ones).unwrap().residual, 0.0);
}

#[test]
fn basic_cocycle_examples() {
    let m = basic(0.5, 40, 6);
    let phi = ChernFunctional::new(&m, Normalization::Lambda);
    let (a, ast, b, bst) = (g(Alpha), g(AlphaStar), g(Beta), g(BetaStar));
    let one = NCPolynomial::one(AlgebraKind::SUq2);
    assert!(
        check_sigma_cyclicity(&phi, &[a.clone(), ast.clone(), b.clone(), bst.clone()])
            .unwrap()
            .residual
            < 1e-8
    );
    assert!(
        check_hochschild(&phi, &[a, b, ast, bst, one])
            .unwrap()
            .residual
            < 1e-8
    );
}

#[test]
fn twisted_trace_examples() {
    let m = podles(0.5, 0.7, 60);
    let x = &q_map(&g(A)) * &q_map(&g(B));
    let y = q_map(&g(BStar));
    assert!(twisted_trace_residual(&m, &x, &y).unwrap() < 1e-8);
    let zero = crate::ncalg::FreeProductElement::zero(AlgebraKind::Podles);
    assert_eq!(twisted_trace_residual(&m, &x, &zero).unwrap(), 0.0);

    let m = basic(0.5, 40, 6);
    let x = &q_map(&g(Alpha)) * &q_map(&g(Beta));
    let y = &q_map(&g(BetaStar)) * &q_map(&g(AlphaStar));
    assert!(twisted_trace_residual(&m, &x, &y).unwrap() < 1e-8);
}

#[test]
fn omega2_pairing_closed_form() {
    for &(q, s) in &[(0.5, 1.0), (0.5, 0.7), (0.3, 0.5), (0.7, 0.25)] {
        let m = podles(q, s, 80);
        let phi = ChernFunctional::new(&m, Normalization::Raw);
        let e = pair_with_chain(&phi, &TwistedChain::omega2()).unwrap();
        let expected = 4.0 * (1.0f64 + s * s).powi(3);
        assert!(
            (e.value.re - expected).abs() < 1e-8,
            "q={q} s={s}: {} vs {expected}",
            e.value
        );
        assert!(e.value.im.abs() < 1e-12);
    }
}

#[test]
fn omega2_is_carried_by_the_cubic_term() {
    // [F,A]^3 = (0, D^3; -D^3, 0) with D = (1+s^2) q^{2k}, so
    // Phi(gamma F [F,A]^3) = -2 (1+s^2)^3 / (1-q^4)
    let (q, s) = (0.5f64, 0.7f64);
    let m = podles(q, s, 80);
    let phi = ChernFunctional::new(&m, Normalization::Raw);
    let cubic = phi.eval(&[g(A), g(A), g(A)]).unwrap().value.re;
    let oracle = -2.0 * (1.0 + s * s).powi(3) / (1.0 - q.powi(4));
    assert!((cubic - oracle).abs() < 1e-10);
    let mut rest = C64::new(0.0, 0.0);
    for (c, f) in TwistedChain::omega2().terms() {
        if f.iter().all(|x| *x == g(A)) {
            continue;
        }
        rest += phi.eval(f).unwrap().value * c.eval(q, s);
    }
    assert!(rest.norm() < 1e-10, "{rest}");
}

#[test]
fn trivial_chains() {
    let m = podles(0.5, 0.7, 30);
    let phi = ChernFunctional::new(&m, Normalization::Raw);
    let empty = TwistedChain::new(AlgebraKind::Podles);
    assert_eq!(
        pair_with_chain(&phi, &empty).unwrap().value,
        C64::new(0.0, 0.0)
    );
    let mut ones = TwistedChain::new(AlgebraKind::Podles);
    let one = NCPolynomial::one(AlgebraKind::Podles);
    ones.push(
        crate::ncalg::Scalar::one(),
        vec![one.clone(), one.clone(), one],
    )
    .unwrap();
    assert_eq!(
        pair_with_chain(&phi, &ones).unwrap().value,
        C64::new(0.0, 0.0)
    );
}

#[test]
fn chern_matches_free_product_on_a_few_triples() {
    let m = podles(0.5, 0.7, 60);
    let (a, b, bs) = (g(A), g(B), g(BStar));
    for args in [
        [a.clone(), b.clone(), bs.clone()],
        [b.clone(), bs.clone(), a.clone()],
        [a.clone(), a.clone(), a],
    ] {
        let (lhs, rhs) = chern_vs_free_product(&m, &args).unwrap();
        assert!((lhs - rhs).norm() < 1e-8, "{lhs} vs {rhs}");
        assert!(lhs.norm() > 1e-3);
    }
}

#[test]
fn charged_tuples_vanish_exactly() {
    let m = basic(0.5, 30, 6);
    let phi = ChernFunctional::new(&m, Normalization::Raw);
    let monos = crate::ncalg::normal_monomials(AlgebraKind::SUq2, 2);
    let mut checked = 0;
    for (i, x) in monos.iter().enumerate() {
        for y in monos.iter().skip(i % 3).step_by(3) {
            let args = [x.clone(), y.clone(), g(Beta), g(BetaStar)];
            let c = args
                .iter()
                .map(|a| charge(a).unwrap())
                .fold((0, 0), |s, c| (s.0 + c.0, s.1 + c.1));
            if c != (0, 0) {
                assert_eq!(phi.eval(&args).unwrap().value, C64::new(0.0, 0.0));
                checked += 1;
            }
        }
    }
    assert!(checked > 10);
}
