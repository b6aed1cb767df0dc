use std::sync::OnceLock;

use proptest::prelude::*;
use qmod_core::linalg::{SparseMatrix, C64};
use qmod_core::ncalg::{
    apply_sigma_tilde, q_map, verify_q_identity, FreeProductElement, DEFAULT_Q_DEGREE_BOUND,
};
use qmod_core::{
    build_module, AlgebraKind, Generator, ModularModule, ModuleKind, NCPolynomial, Params, Scalar,
    TruncationWindow,
};

const PODLES: [Generator; 3] = [Generator::A, Generator::B, Generator::BStar];
const SUQ2: [Generator; 4] = [
    Generator::Alpha,
    Generator::AlphaStar,
    Generator::Beta,
    Generator::BetaStar,
];

fn letters(kind: AlgebraKind) -> &'static [Generator] {
    match kind {
        AlgebraKind::Podles => &PODLES,
        AlgebraKind::SUq2 => &SUQ2,
    }
}

fn kind() -> impl Strategy<Value = AlgebraKind> {
    prop_oneof![Just(AlgebraKind::Podles), Just(AlgebraKind::SUq2)]
}

fn raw_word(kind: AlgebraKind, max_len: usize) -> impl Strategy<Value = Vec<Generator>> {
    let n = letters(kind).len();
    prop::collection::vec(0..n, 0..=max_len)
        .prop_map(move |ix| ix.into_iter().map(|i| letters(kind)[i]).collect())
}

/// Small combinations `sum c_i q^e_i w_i` of arbitrary words, reduced.
fn poly(kind: AlgebraKind, max_len: usize) -> impl Strategy<Value = NCPolynomial> {
    prop::collection::vec((raw_word(kind, max_len), -3i128..=3, -2i32..=2), 1..=3).prop_map(
        move |terms| {
            terms
                .into_iter()
                .fold(NCPolynomial::zero(kind), |acc, (w, c, e)| {
                    let c = &Scalar::int(c) * &Scalar::q_pow(e);
                    acc.try_add(&NCPolynomial::word(kind, &w, c).unwrap())
                        .unwrap()
                })
        },
    )
}

fn with_kind<T: std::fmt::Debug>(
    f: impl Fn(AlgebraKind) -> BoxedStrategy<T> + 'static,
) -> impl Strategy<Value = (AlgebraKind, T)> {
    kind().prop_flat_map(move |k| f(k).prop_map(move |t| (k, t)))
}

fn podles_module() -> &'static ModularModule {
    static M: OnceLock<ModularModule> = OnceLock::new();
    M.get_or_init(|| {
        build_module(
            ModuleKind::Podles,
            Params::new(0.6, 0.8),
            TruncationWindow::podles(40),
        )
        .unwrap()
    })
}

fn basic_module() -> &'static ModularModule {
    static M: OnceLock<ModularModule> = OnceLock::new();
    M.get_or_init(|| {
        build_module(
            ModuleKind::Suq2Basic,
            Params::suq2(0.6),
            TruncationWindow::suq2_basic(30, 8),
        )
        .unwrap()
    })
}

fn module(kind: AlgebraKind) -> &'static ModularModule {
    match kind {
        AlgebraKind::Podles => podles_module(),
        AlgebraKind::SUq2 => basic_module(),
    }
}

/// Columns far enough inside the window that a word of length `deg` acts
/// without truncation.
fn mask(m: &ModularModule, deg: usize) -> Vec<bool> {
    let w = m.window().with_margin(deg + 1);
    m.basis()
        .labels()
        .iter()
        .map(|b| w.is_interior(b))
        .collect()
}

fn close(x: &SparseMatrix, y: &SparseMatrix, rows: &[bool], cols: &[bool]) -> f64 {
    let scale = x.max_abs().max(y.max_abs()).max(1.0);
    x.sub(y).max_abs_masked(rows, cols) / scale
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_associative((k, (x, y, z)) in with_kind(|k| (poly(k, 2), poly(k, 2), poly(k, 2)).boxed())) {
        let _ = k;
        let l = x.multiply(&y).unwrap().multiply(&z).unwrap();
        let r = x.multiply(&y.multiply(&z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn involution_reverses_products((_k, (x, y)) in with_kind(|k| (poly(k, 3), poly(k, 3)).boxed())) {
        let l = x.multiply(&y).unwrap().involution();
        let r = y.involution().multiply(&x.involution()).unwrap();
        prop_assert_eq!(l, r);
        prop_assert_eq!(x.involution().involution(), x);
    }

    #[test]
    fn sigma_is_multiplicative((_k, (x, y)) in with_kind(|k| (poly(k, 3), poly(k, 3)).boxed())) {
        let l = x.multiply(&y).unwrap().apply_sigma();
        let r = x.apply_sigma().multiply(&y.apply_sigma()).unwrap();
        prop_assert_eq!(l, r);
        prop_assert_eq!(x.apply_sigma().apply_sigma_inverse(), x.clone());
        // sigma(x*) = sigma^-1(x)*
        prop_assert_eq!(x.involution().apply_sigma(), x.apply_sigma_inverse().involution());
    }

    #[test]
    fn q_identity_holds((_k, (x, y)) in with_kind(|k| (poly(k, 2), poly(k, 2)).boxed())) {
        let r = verify_q_identity(&x, &y).unwrap();
        prop_assert!(r.is_zero());
    }

    /// Normal forms and raw generator products act identically.
    #[test]
    fn representation_is_faithful_to_rewriting((k, w) in with_kind(|k| raw_word(k, 4).boxed())) {
        let m = module(k);
        let raw = m.word_matrix(&w).unwrap();
        let normal = m.represent(&NCPolynomial::word(k, &w, Scalar::one()).unwrap()).unwrap();
        let cols = mask(m, w.len());
        let rows = vec![true; m.dim()];
        prop_assert!(close(&raw, &normal, &rows, &cols) < 1e-12);
    }

    #[test]
    fn representation_is_multiplicative((k, (x, y)) in with_kind(|k| (poly(k, 2), poly(k, 2)).boxed())) {
        let m = module(k);
        let xy = m.represent(&x.multiply(&y).unwrap()).unwrap();
        let prod = m.represent(&x).unwrap().mul(&m.represent(&y).unwrap());
        let cols = mask(m, 4);
        let rows = vec![true; m.dim()];
        prop_assert!(close(&xy, &prod, &rows, &cols) < 1e-12);
    }

    #[test]
    fn representation_respects_the_star((k, x) in with_kind(|k| poly(k, 3).boxed())) {
        let m = module(k);
        let l = m.represent(&x.involution()).unwrap();
        let r = m.represent(&x).unwrap().adjoint();
        let inner = mask(m, 3);
        prop_assert!(close(&l, &r, &inner, &inner) < 1e-12);
    }

    #[test]
    fn f_anticommutes_with_commutators((k, x) in with_kind(|k| poly(k, 3).boxed())) {
        let m = module(k);
        let c = m.commutator(&x).unwrap();
        let f = m.f();
        let s = f.mul(&c).add(&c.mul(f));
        prop_assert!(s.max_abs() <= 1e-14 * c.max_abs().max(1.0));
        // the stable commutator agrees with F pi - pi F
        let direct = m.commutator_f(&m.represent(&x).unwrap());
        let inner = mask(m, 3);
        prop_assert!(close(&c, &direct, &inner, &inner) < 1e-12);
    }

    /// `Tr(K x y) = Tr(K sigma(y) x)` with `sigma(y) = K^-1 y K` holds exactly
    /// for finite matrices.
    #[test]
    fn finite_twisted_trace(
        k in prop::collection::vec(0.1f64..10.0, 6),
        xs in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 36),
        ys in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 36),
    ) {
        let dense = |v: &[(f64, f64)]| {
            SparseMatrix::from_triplets(6, 6, v.iter().enumerate().map(|(n, (a, b))| (n / 6, n % 6, C64::new(*a, *b))))
        };
        let (x, y) = (dense(&xs), dense(&ys));
        let kc: Vec<C64> = k.iter().map(|v| C64::new(*v, 0.0)).collect();
        let kinv: Vec<C64> = k.iter().map(|v| C64::new(1.0 / v, 0.0)).collect();
        let sy = y.scale_rows(&kinv).scale_cols(&kc);
        let l = x.mul(&y).weighted_trace(&k);
        let r = sy.mul(&x).weighted_trace(&k);
        prop_assert!((l - r).norm() < 1e-12 * (1.0 + l.norm()));
    }

    /// Twisted trace of the truncated weight on operators supported inside
    /// the window.
    #[test]
    fn module_weight_is_a_twisted_trace((k, (x, y)) in with_kind(|k| (poly(k, 2), poly(k, 2)).boxed())) {
        let m = module(k);
        let cx = m.commutator(&x).unwrap();
        let cy = m.commutator(&y).unwrap();
        let l = cx.mul(&cy).weighted_trace(m.k_diag());
        let r = m.sigma_matrix(&cy).mul(&cx).weighted_trace(m.k_diag());
        prop_assert!((l - r).norm() < 1e-9 * (1.0 + l.norm()));
    }
}

fn spanning_word(kind: AlgebraKind) -> impl Strategy<Value = FreeProductElement> {
    let n = letters(kind).len();
    (0..n, prop::collection::vec(0..n, 0..=2)).prop_map(move |(a0, qs)| {
        let g = |i: usize| NCPolynomial::generator(letters(kind)[i]);
        qs.into_iter()
            .fold(FreeProductElement::iota(&g(a0)), |acc, i| {
                acc.free_multiply(&q_map(&g(i))).unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn sigma_tilde_is_multiplicative((_k, (x, y)) in with_kind(|k| (spanning_word(k), spanning_word(k)).boxed())) {
        let b = DEFAULT_Q_DEGREE_BOUND;
        let xy = x.free_multiply(&y).unwrap();
        let l = apply_sigma_tilde(&xy, b).unwrap();
        let r = apply_sigma_tilde(&x, b).unwrap().free_multiply(&apply_sigma_tilde(&y, b).unwrap()).unwrap();
        let diff = l.try_add(&r.scale(&Scalar::int(-1))).unwrap();
        prop_assert!(diff.is_zero(), "{}", diff);
    }
}
