use super::*;
use crate::linalg::C64;
use crate::ncalg::{q_map, AlgebraKind, FreeProductElement, Generator::*, NCPolynomial};

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

fn basic(q: f64) -> ModularModule {
    build_module(
        ModuleKind::Suq2Basic,
        Params::suq2(q),
        TruncationWindow::suq2_basic(20, 6),
    )
    .unwrap()
}

fn dlssv(q: f64, jmax: usize) -> ModularModule {
    build_module(
        ModuleKind::Suq2Dlssv,
        Params::suq2(q),
        TruncationWindow::dlssv(jmax),
    )
    .unwrap()
}

fn idx(m: &ModularModule, b: BasisIndex) -> usize {
    m.basis().position(&b).unwrap()
}

#[test]
fn podles_action_examples() {
    let m = podles(0.5, 0.7, 10);
    let a = m.generator(A).unwrap();
    let b = m.generator(B).unwrap();
    let e0p = idx(&m, BasisIndex::PodlesPM { k: 0, plus: true });
    let e1m = idx(&m, BasisIndex::PodlesPM { k: 1, plus: false });
    assert_eq!(a.get(e0p, e0p), C64::new(1.0, 0.0));
    assert_eq!(b.triplets().filter(|t| t.1 == e0p).count(), 0);
    assert!((a.get(e1m, e1m).re + 0.49 * 0.25).abs() < 1e-15);
}

#[test]
fn basic_action_examples() {
    let q = 0.5;
    let m = basic(q);
    let b = m.generator(Beta).unwrap();
    let a = m.generator(Alpha).unwrap();
    let ast = m.generator(AlphaStar).unwrap();
    let e00 = idx(&m, BasisIndex::SUq2Basic { k: 0, l: 0 });
    let e01 = idx(&m, BasisIndex::SUq2Basic { k: 0, l: 1 });
    let e10 = idx(&m, BasisIndex::SUq2Basic { k: 1, l: 0 });
    let e20 = idx(&m, BasisIndex::SUq2Basic { k: 2, l: 0 });
    assert_eq!(b.get(e01, e00), C64::new(1.0, 0.0));
    assert!((a.get(e20, e10).re - (1.0 - q.powi(4)).sqrt()).abs() < 1e-15);
    for l in -6..=6 {
        let c = idx(&m, BasisIndex::SUq2Basic { k: 0, l });
        assert_eq!(ast.triplets().filter(|t| t.1 == c).count(), 0);
    }
}

#[test]
fn module_generators_examples() {
    let q: f64 = 0.5;
    let m = podles(q, 0.7, 10);
    let e3m = idx(&m, BasisIndex::PodlesPM { k: 3, plus: false });
    assert!((m.k_diag()[e3m] - q.powi(-6)).abs() < 1e-12);

    let m = basic(q);
    let e50 = idx(&m, BasisIndex::SUq2Basic { k: 5, l: 0 });
    assert_eq!(m.f().get(e50, e50), C64::new(1.0, 0.0));

    let m = dlssv(q, 2);
    let i = idx(
        &m,
        BasisIndex::Dlssv {
            two_j: 1,
            two_mu: 1,
            two_n: 2,
            arrow: Arrow::Up,
        },
    );
    assert!((m.k_diag()[i] - q.powi(-3)).abs() < 1e-12);
}

#[test]
fn f_and_gamma_structure() {
    for m in [podles(0.5, 0.7, 12), basic(0.5), dlssv(0.5, 3)] {
        let f = m.f();
        let id = crate::linalg::SparseMatrix::identity(m.dim());
        assert_eq!(f.mul(f), id);
        assert_eq!(f.adjoint(), *f);
        let k = m.k_matrix();
        assert_eq!(k.mul(f), f.mul(&k));
        assert!(m.k_diag().iter().all(|v| *v > 0.0));
        if let Some(gm) = m.gamma_matrix() {
            assert_eq!(gm.mul(&gm), id);
            assert_eq!(gm.mul(f).add(&f.mul(&gm)).nnz(), 0);
            assert_eq!(gm.mul(&k), k.mul(&gm));
            for x in [A, B, BStar] {
                let p = m.generator(x).unwrap();
                assert!(m.interior_max(&gm.mul(p).sub(&p.mul(&gm))) < 1e-12);
            }
        }
    }
}

#[test]
fn commutator_examples_basic() {
    let q = 0.5;
    let m = basic(q);
    assert_eq!(m.commutator(&g(Alpha)).unwrap().nnz(), 0);
    assert_eq!(
        m.commutator(&NCPolynomial::one(AlgebraKind::SUq2))
            .unwrap()
            .nnz(),
        0
    );
    let cb = m.commutator(&g(Beta)).unwrap();
    for k in 0..20usize {
        let src = idx(&m, BasisIndex::SUq2Basic { k, l: -1 });
        let tgt = idx(&m, BasisIndex::SUq2Basic { k, l: 0 });
        assert!((cb.get(tgt, src).re - 2.0 * q.powi(k as i32)).abs() < 1e-15);
    }
    assert_eq!(cb.nnz(), 20);
    let cbs = m.commutator(&g(BetaStar)).unwrap();
    let src = idx(&m, BasisIndex::SUq2Basic { k: 3, l: 0 });
    let tgt = idx(&m, BasisIndex::SUq2Basic { k: 3, l: -1 });
    assert!((cbs.get(tgt, src).re + 2.0 * q.powi(3)).abs() < 1e-15);
}

#[test]
fn stable_commutator_matches_generic_one_on_shallow_levels() {
    let m = podles(0.6, 0.4, 12);
    for p in crate::ncalg::normal_monomials(AlgebraKind::Podles, 3) {
        let stable = m.commutator(&p).unwrap();
        let generic = m.commutator_f(&m.represent(&p).unwrap());
        assert!(m.interior_max(&stable.sub(&generic)) < 1e-14, "{p}");
    }
}

#[test]
fn commutators_anticommute_with_f() {
    let m = podles(0.5, 0.7, 10);
    let x = m.represent(&(&g(A) * &g(B))).unwrap();
    let c = m.commutator_f(&x);
    assert_eq!(m.f().mul(&c).add(&c.mul(m.f())).max_abs(), 0.0);
}

#[test]
fn relation_residuals_at_moderate_windows() {
    let m = podles(0.5, 0.7, 40);
    let r = relations_residual(&m).unwrap();
    assert!(max_residual(&r) < 1e-12, "{r:?}");
    let m = basic(0.5);
    let r = relations_residual(&m).unwrap();
    assert!(max_residual(&r) < 1e-12, "{r:?}");
    let m = dlssv(0.5, 4);
    let r = relations_residual(&m).unwrap();
    assert!(max_residual(&r) < 1e-10, "{r:?}");
}

#[test]
fn realization_examples() {
    let m = podles(0.5, 0.7, 12);
    assert_eq!(
        m.realize_free_product(&q_map(&NCPolynomial::one(AlgebraKind::Podles)))
            .unwrap()
            .nnz(),
        0
    );
    let qa = m.realize_free_product(&q_map(&g(A))).unwrap();
    let pa = m.represent(&g(A)).unwrap();
    let direct = pa.sub(&m.f().mul(&pa).mul(m.f()));
    assert!(qa.sub(&direct).max_abs() < 1e-15);
    let x = &FreeProductElement::iota(&g(A)) * &FreeProductElement::iota_bar(&g(A));
    let r = m.realize_free_product(&x).unwrap();
    assert!(r.sub(&pa.mul(&m.f().mul(&pa).mul(m.f()))).max_abs() < 1e-15);
}

#[test]
fn spanning_and_direct_realizations_agree() {
    let m = podles(0.6, 0.8, 14);
    let x = &(&q_map(&g(B)) * &FreeProductElement::iota(&g(A))) * &q_map(&(&g(BStar) * &g(A)));
    let a = m.realize_free_product(&x).unwrap();
    let b = m.realize_direct(&x).unwrap();
    let mask: Vec<bool> = (0..m.dim())
        .map(|i| m.basis().get(i).level() + 4 < 14)
        .collect();
    assert!(a.sub(&b).max_abs_masked(&mask, &mask) < 1e-13);
}

#[test]
fn wrong_algebra_is_rejected() {
    let m = basic(0.5);
    assert!(m.represent(&g(A)).is_err());
}

#[test]
fn window_underflow_is_reported() {
    let m = podles(0.5, 0.7, 6);
    let p = g(A).pow(5).unwrap();
    assert!(matches!(
        m.represent(&p),
        Err(crate::Error::WindowUnderflow { .. })
    ));
}
