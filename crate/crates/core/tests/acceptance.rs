//! End-to-end acceptance gate for the quantum exterior algebra computations:
//! fourteen numbered criteria, one test (and one pass/fail line) each.
//! Everything is exact arithmetic over Q with q in {2, 3, 1/2}.

use std::cell::RefCell;
use std::rc::Rc;
use twistvar::algebra::AlgebraMorphism;
use twistvar::cli::Workspace;
use twistvar::exactla::{Field, Matrix, Scalar};
use twistvar::ext::{class_equal, twisted_product, ExtContext};
use twistvar::hochschild::{
    bar_complex, bar_criterion_check, bar_hh_dims, k_eta, strong_comm_check, tensor_down,
    HhError, HhSetup, BAR_CAP,
};
use twistvar::modules::{direct_sum, is_isomorphic, IsoOutcome, Module};
use twistvar::qexterior::{QExterior, ONE, X, Y, YX};
use twistvar::resolution::{complexity, Resolution};
use twistvar::varieties::{
    fg_check, k_eta_tensor_exact, periodicity, variety_report, FgVerdict, PeriodicityOutcome,
};

const F: Field = Field::Rationals;
const QS: [(i64, i64); 3] = [(2, 1), (3, 1), (1, 2)];

fn lam(qn: i64, qd: i64) -> QExterior {
    QExterior::build(Scalar::from_fraction(qn, qd, F)).unwrap()
}

fn builtin_setup(l: &QExterior) -> HhSetup {
    HhSetup::from_resolution(&l.algebra, &l.enveloping, &l.nakayama, 2, l.bimodule_resolution())
}

fn theta(l: &QExterior, setup: &HhSetup) -> twistvar::ext::ExtClass {
    setup.ctx.class_from_images(4, 2, &l.g_class_images(1)).unwrap()
}

fn s(n: i64) -> Scalar {
    Scalar::from_i64(n, F)
}

#[test]
fn criterion_01_center() {
    for (qn, qd) in QS {
        let l = lam(qn, qd);
        let z = l.algebra.center();
        assert_eq!(z.len(), 2, "center dimension at q = {}/{}", qn, qd);
        // every central element lies in span{1, yx}
        let mut stacked = Matrix::zero(4, 0, F);
        for v in &z {
            assert!(v[X].is_zero() && v[Y].is_zero(), "center not in span(1, yx)");
            stacked = stacked.hstack(&Matrix::from_cols(4, &[v.clone()], F));
        }
        assert_eq!(stacked.rank(), 2, "central elements are independent");
    }
    println!("criterion 01 (center = span(1, yx), dim 2): pass");
}

#[test]
fn criterion_02_nakayama_closed_form() {
    for (qn, qd) in QS {
        let l = lam(qn, qd);
        let q = Scalar::from_fraction(qn, qd, F);
        let mut expected = Matrix::zero(4, 4, F);
        expected.set(ONE, ONE, Scalar::one(F));
        expected.set(X, X, q.inv().unwrap().neg());
        expected.set(Y, Y, q.neg());
        expected.set(YX, YX, Scalar::one(F));
        assert_eq!(l.nakayama.matrix, expected, "nu at q = {}/{}", qn, qd);
    }
    println!("criterion 02 (nakayama nu: x -> -x/q, y -> -qy): pass");
}

#[test]
fn criterion_03_twisted_hh_table() {
    for (qn, qd) in QS {
        let l = lam(qn, qd);
        let setup = builtin_setup(&l);
        assert_eq!(
            setup.dims(8).unwrap(),
            vec![2, 0, 1, 0, 1, 0, 1, 0, 1],
            "twisted HH table at q = {}/{}",
            qn,
            qd
        );
    }
    println!("criterion 03 (HH table (nu, t=2) grades 0..8 = [2,0,1,0,1,0,1,0,1]): pass");
}

#[test]
fn criterion_04_ring_shape() {
    for (qn, qd) in QS {
        let l = lam(qn, qd);
        let setup = builtin_setup(&l);
        let sample = setup.sample(4).unwrap();
        assert_eq!(sample.dims[0], 2, "degree-0 block is two-dimensional");

        // grade 0 = k x_k k on the window: one idempotent-like class, one
        // nilpotent class (the socle class coming from yx)
        let zero0 = vec![Scalar::zero(F); 2];
        let squares: Vec<bool> = (0..2)
            .map(|i| sample.product(0, i, 0, i).unwrap() == &zero0)
            .collect();
        assert_eq!(squares.iter().filter(|b| **b).count(), 1, "exactly one nilpotent");
        let nil = squares.iter().position(|b| *b).unwrap();

        // x = theta: powers nonzero through grade 8
        let th = sample.basis[2][0].clone();
        let mut power = th.clone();
        for m in 2..=4usize {
            power = twisted_product(&setup.ctx, &power, &th).unwrap();
            assert!(!power.is_zero(), "theta^{} vanishes at q = {}/{}", m, qn, qd);
        }

        // the nilpotent degree-0 class annihilates every power of theta
        let nil_class = sample.basis[0][nil].clone();
        let mut power = th.clone();
        for m in 1..=3usize {
            let prod = twisted_product(&setup.ctx, &nil_class, &power).unwrap();
            assert!(prod.is_zero(), "yx-class * theta^{} nonzero", m);
            power = twisted_product(&setup.ctx, &power, &th).unwrap();
        }
    }
    println!("criterion 04 (HH ring sample = k[x] x_k k): pass");
}

#[test]
fn criterion_05_theta_power_scalars() {
    for (qn, qd) in QS {
        let l = lam(qn, qd);
        let q = Scalar::from_fraction(qn, qd, F);
        let setup = builtin_setup(&l);
        let th = theta(&l, &setup);
        let mut power = th.clone();
        for m in 2..=3usize {
            power = twisted_product(&setup.ctx, &power, &th).unwrap();
            let exponent: i64 = 4 * (1..m as i64).sum::<i64>();
            let g4m = setup
                .ctx
                .class_from_images(4 * m, 2 * m as i64, &l.g_class_images(m))
                .unwrap();
            let expected = g4m.scale(&q.pow(exponent));
            assert!(
                class_equal(&power, &expected).unwrap(),
                "theta^{} != q^{} g_{} at q = {}/{}",
                m,
                exponent,
                4 * m,
                qn,
                qd
            );
        }
    }
    println!("criterion 05 (theta^m = q^(4(1+..+(m-1))) g_4m, m = 2, 3): pass");
}

#[test]
fn criterion_06_strong_commutativity() {
    for (qn, qd) in QS {
        let l = lam(qn, qd);
        let setup = builtin_setup(&l);
        let th = theta(&l, &setup);
        assert!(strong_comm_check(&setup, &th, 2).unwrap(), "theta at n = 2");

        // bar criterion where representable: degree-0 classes are within the
        // cap, and a literal bar-cochain commutation implies the class check
        for class in setup.ctx.basis(0, 0).unwrap() {
            match bar_criterion_check(&setup, &class, 1, BAR_CAP) {
                Ok(true) => assert!(strong_comm_check(&setup, &class, 1).unwrap()),
                Ok(false) => {}
                Err(HhError::SizeCap(_)) => {}
                Err(e) => panic!("bar criterion failed: {}", e),
            }
        }
    }
    println!("criterion 06 (strong_comm_check(theta, 2); bar criterion where representable): pass");
}

#[test]
fn criterion_07_resolution_closed_form() {
    for (qn, qd) in QS {
        let l = lam(qn, qd);
        let q = Scalar::from_fraction(qn, qd, F);
        for beta in [1i64, 2, -1] {
            let m = l.module(&s(1), &s(beta));
            let mut res = Resolution::minimal(&m);
            res.ensure_length(10).unwrap();
            assert_eq!(res.betti(10).unwrap(), vec![1; 11], "ranks all one");
            for n in 1..=10usize {
                // express d_n(generator of P_n) over the generator of P_(n-1):
                // the coefficient must be a unit multiple of x + q^n beta y
                let gen_n = res.projectives[n].presentation.as_ref().unwrap().gens[0]
                    .vector
                    .clone();
                let gen_prev = res.projectives[n - 1].presentation.as_ref().unwrap().gens[0]
                    .vector
                    .clone();
                let image = res.maps[n].matrix.apply(&gen_n);
                let cols: Vec<Vec<Scalar>> = (0..4)
                    .map(|i| res.projectives[n - 1].action[i].apply(&gen_prev))
                    .collect();
                let a = Matrix::from_cols(res.projectives[n - 1].dim, &cols, F);
                let b = Matrix::from_cols(a.rows, &[image], F);
                let coeff = a.solve(&b).expect("image lies in Lambda * generator");
                let c0 = coeff.at(ONE, 0);
                let cx = coeff.at(X, 0);
                let cy = coeff.at(Y, 0);
                assert!(c0.is_zero(), "unit component must vanish");
                assert!(!cx.is_zero(), "x component must be the leading unit");
                let expected = cx.mul(&q.pow(n as i64)).mul(&s(beta));
                assert_eq!(*cy, expected, "d_{} at q = {}/{}, beta = {}", n, qn, qd, beta);
            }
        }
    }
    println!("criterion 07 (M_(1,beta): rank-1 resolution, d_n ~ right mult by x + q^n beta y): pass");
}

#[test]
fn criterion_08_module_ext_dims() {
    for (qn, qd) in QS {
        let l = lam(qn, qd);
        for beta in [1i64, 2, -1] {
            let m = l.module(&s(1), &s(beta));
            let res = Rc::new(RefCell::new(Resolution::minimal(&m)));
            let ctx = ExtContext::new(res, &l.simple(), l.nakayama.clone(), 2);
            for n in 0..=6usize {
                assert_eq!(
                    ctx.dim(2 * n, n as i64).unwrap(),
                    1,
                    "Ext^{} of M_(1,{}) at q = {}/{}",
                    2 * n,
                    beta,
                    qn,
                    qd
                );
            }
        }
    }
    println!("criterion 08 (dim Ext^2n(_(nu^n) M_(1,beta), k) = 1, n = 0..6): pass");
}

#[test]
fn criterion_09_fg_dichotomy() {
    for (qn, qd) in QS {
        let l = lam(qn, qd);
        let setup = builtin_setup(&l);
        let gens = setup.ctx.basis(4, 2).unwrap();

        for beta in [1i64, 2, -1] {
            let m = l.module(&s(1), &s(beta));
            let ev = fg_check(&setup, &m, &gens, 10).unwrap();
            assert!(
                matches!(ev.verdict, FgVerdict::PassEvidence),
                "beta = {} at q = {}/{}",
                beta,
                qn,
                qd
            );
            assert_eq!(ev.action_injective_from, Some(0));
        }

        for (alpha, beta) in [(1i64, 0i64), (0, 1)] {
            let m = l.module(&s(alpha), &s(beta));
            let ev = fg_check(&setup, &m, &gens, 10).unwrap();
            match ev.verdict {
                FgVerdict::FailWitness { degree, .. } => {
                    assert_eq!(degree, 4, "transition degree for M_({},{})", alpha, beta)
                }
                other => panic!("expected a fail witness, got {:?}", other),
            }
        }

        // the induced map theta (x) id on M_(1,0) is literally the zero class
        let m10 = l.module(&s(1), &s(0));
        let out = ExtContext::new(
            Rc::new(RefCell::new(Resolution::minimal(&m10))),
            &m10,
            setup.psi.clone(),
            setup.t,
        );
        let th = theta(&l, &setup);
        let down = tensor_down(&setup, &th, &m10, &out).unwrap();
        assert!(down.is_zero(), "tensor_down(theta, M_(1,0)) at q = {}/{}", qn, qd);
    }
    println!("criterion 09 (fg dichotomy: pass for beta in {{1,2,-1}}, degree-4 witness else): pass");
}

#[test]
fn criterion_10_periodicity() {
    for (qn, qd) in QS {
        let l = lam(qn, qd);
        for beta in [1i64, 2, -1] {
            let m = l.module(&s(1), &s(beta));
            match periodicity(&m, &l.nakayama, 2, 3, 3, 11).unwrap() {
                PeriodicityOutcome::Certificate(c) => {
                    assert_eq!((c.shift, c.period), (0, 1), "M ~ tau(M) for beta = {}", beta);
                    assert!(c.verify(), "certificate re-verification");
                }
                other => panic!("no certificate for beta = {}: {:?}", beta, other),
            }
        }
        let m10 = l.module(&s(1), &s(0));
        let id = AlgebraMorphism::identity(&l.algebra);
        match periodicity(&m10, &id, 1, 3, 3, 11).unwrap() {
            PeriodicityOutcome::Certificate(c) => {
                assert_eq!((c.shift, c.period), (0, 1), "untwisted period of M_(1,0)");
                assert!(c.verify());
            }
            other => panic!("no untwisted certificate for M_(1,0): {:?}", other),
        }
    }
    println!("criterion 10 (periodicity (0,1) under (nu, t=2); untwisted (0,1) for M_(1,0)): pass");
}

#[test]
fn criterion_11_variety_dimensions() {
    let l = lam(2, 1);
    let setup = builtin_setup(&l);
    let gens = setup.ctx.basis(4, 2).unwrap();
    let window = 12;

    let m = l.module(&s(1), &s(1));
    let rep = variety_report(&setup, &m, &gens, window).unwrap();
    assert_eq!(rep.dim, Some(1), "M_(1,1) variety dimension");
    assert!(!rep.trivial);

    let free = Rc::new(Module::regular(&l.algebra));
    let rep = variety_report(&setup, &free, &gens, window).unwrap();
    assert_eq!(rep.dim, Some(0), "regular module variety dimension");
    assert!(rep.trivial);

    let rep = variety_report(&setup, &l.simple(), &gens, window).unwrap();
    assert_eq!(rep.dim, Some(2), "simple module variety dimension");
    assert!(!rep.trivial);
    assert!(
        !rep.caveats.is_empty(),
        "the simple module must carry an fg caveat on this window"
    );
    println!("criterion 11 (variety dims: M_(1,beta) -> 1, Lambda -> 0, k -> 2 + caveat): pass");
}

#[test]
fn criterion_12_bar_vs_minimal_oracle() {
    for (qn, qd) in QS {
        let l = lam(qn, qd);
        let setup = HhSetup::minimal(&l.algebra, &l.nakayama, 2);
        let minimal = setup.dims(3).unwrap();
        let bar = bar_hh_dims(&l.algebra, &l.nakayama, 2, 2, BAR_CAP).unwrap();
        assert_eq!(&minimal[..=2], &bar[..], "tables agree at q = {}/{}", qn, qd);
        // grade 3 exceeds the default bar cap: reported, never silently wrong
        assert!(matches!(
            bar_hh_dims(&l.algebra, &l.nakayama, 2, 3, BAR_CAP),
            Err(HhError::SizeCap(_))
        ));
    }
    println!("criterion 12 (bar vs minimal HH tables identical up to the bar cap): pass");
}

#[test]
fn criterion_13_k_eta_exactness() {
    for (qn, qd) in QS {
        let l = lam(qn, qd);
        let setup = builtin_setup(&l);
        let th = theta(&l, &setup);
        let ext = k_eta(&setup, &th).unwrap();
        assert!(ext.exact, "defining sequence of K_theta at q = {}/{}", qn, qd);
        // bookkeeping: dim K = dim Lambda + dim Omega^(tm)(Lambda over Lambda^e)
        assert_eq!(ext.module.dim, l.algebra.dim + ext.omega.dim);
        for beta in [1i64, 2, -1] {
            let m = l.module(&s(1), &s(beta));
            assert!(
                k_eta_tensor_exact(&setup, &ext, &m).unwrap(),
                "K_theta (x) M_(1,{}) at q = {}/{}",
                beta,
                qn,
                qd
            );
        }
    }
    println!("criterion 13 (K_theta exact, exact after (x) M_(1,beta), dims add up): pass");
}

#[test]
fn criterion_14_property_suites() {
    let l = lam(2, 1);

    // differentials square to zero and complexes are exact: bar to depth 3,
    // the closed-form periodic bimodule resolution to depth 10
    let bim = l.regular_bimodule();
    let bar = bar_complex(&l.algebra, &l.enveloping, &bim, 3, BAR_CAP).unwrap();
    assert!(bar.validate(l.algebra.dim), "bar complex d^2 = 0 and exactness");
    let mut buch = l.bimodule_resolution();
    buch.verify_exact(10).unwrap();

    // sampled graded ring: associativity and bilinearity on in-window triples
    let setup = builtin_setup(&l);
    let sample = setup.sample(3).unwrap();
    let all: Vec<_> = sample.basis.iter().flatten().collect();
    for a in &all {
        for b in &all {
            for c in &all {
                if (a.j + b.j + c.j) as usize > sample.m_max {
                    continue;
                }
                let ab = twisted_product(&setup.ctx, a, b).unwrap();
                let bc = twisted_product(&setup.ctx, b, c).unwrap();
                let left = twisted_product(&setup.ctx, &ab, c).unwrap();
                let right = twisted_product(&setup.ctx, a, &bc).unwrap();
                assert!(class_equal(&left, &right).unwrap(), "associativity");
                // bilinearity: (a + b) c = a c + b c whenever a + b makes sense
                if a.j == b.j {
                    let sum = a.add(b).unwrap();
                    let lhs = twisted_product(&setup.ctx, &sum, c).unwrap();
                    let ac = twisted_product(&setup.ctx, a, c).unwrap();
                    let bc2 = twisted_product(&setup.ctx, b, c).unwrap();
                    assert!(class_equal(&lhs, &ac.add(&bc2).unwrap()).unwrap(), "bilinearity");
                }
            }
        }
    }

    // complexity is a syzygy invariant and obeys the direct-sum max rule
    let m = l.module(&s(1), &s(1));
    let mut res = Resolution::minimal(&m);
    let omega = res.syzygy_module(1).unwrap();
    let (g1, _) = complexity(&m, 6).unwrap();
    let (g2, _) = complexity(&omega, 6).unwrap();
    assert_eq!(g1.complexity(), g2.complexity(), "syzygy invariance");
    let (gsum, _) = complexity(&direct_sum(&m, &l.simple()), 6).unwrap();
    assert_eq!(
        gsum.complexity(),
        Some(2),
        "cx(M + k) = max(cx M, cx k) = 2"
    );

    // isomorphism certificates verify exactly
    match is_isomorphic(&m, &m, 5) {
        IsoOutcome::Certificate(f) => assert!(f.verify().is_ok() && f.matrix.invert().is_some()),
        other => panic!("self-isomorphism must certify, got {:?}", other),
    }

    // parser never panics on mangled input: every outcome is a typed error
    let base = twistvar::cli::emit_builtin(&l);
    let mut mangled: Vec<String> = vec![
        String::new(),
        "####".to_string(),
        "algebra".to_string(),
        "algebra A\nfield Q\nend".to_string(),
        "module M over Missing\nend".to_string(),
        base.replace("mul", "mull"),
        base.replace("1", "1/0"),
        base.chars().rev().collect(),
    ];
    for i in 0..base.len() {
        if i % 97 == 0 {
            let mut t = base.clone();
            t.replace_range(i..i + 1, "@");
            mangled.push(t);
        }
    }
    for text in &mangled {
        let _ = Workspace::parse_texts(&[("fuzz", text)]);
    }
    println!("criterion 14 (property suites: d^2 = 0/exactness, ring axioms, complexity rules, certificates, parser fuzz): pass");
}
