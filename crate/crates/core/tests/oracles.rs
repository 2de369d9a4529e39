mod common;

use common::*;
use num_bigint::BigInt;
use topomarkov::cf_tree::{cf_tree, fixed_point_quadratic, gamma, periodic_value, qi_satisfies};
use topomarkov::cohn::cohn_at;
use topomarkov::markov::{markov_tree, markov_triple_at, mu};
use topomarkov::rational::{cf_eval, cf_expand_even, CFWord, Fraction, Mat2};
use topomarkov::topograph::{farey_tree, locate, TreeLimits};
use topomarkov::{left_companion, markov_cf, QuadraticIrrational};

fn frac(s: &str) -> Fraction {
    s.parse().unwrap()
}

fn mat(m: &M) -> Mat2 {
    Mat2::new(m[0][0], m[0][1], m[1][0], m[1][1])
}

fn to_i128(x: &BigInt) -> i128 {
    x.try_into().unwrap()
}

const ORACLE_DEPTH: usize = 6;

#[test]
fn paths_match_stern_brocot_walk() {
    for r in farey_tree(ORACLE_DEPTH, TreeLimits::default()).unwrap() {
        let (p, q) = (to_i128(r.value.numer()), to_i128(r.value.denom()));
        let path = r.path.to_string();
        let expect = sb_path(p, q);
        assert_eq!(if path == "-" { String::new() } else { path }, expect);
        assert_eq!(locate(&r.value).unwrap(), r.path);
    }
}

#[test]
fn markov_tree_matches_oracle() {
    for r in markov_tree(ORACLE_DEPTH, TreeLimits::default()).unwrap() {
        let word = r.path.to_string().replace('-', "");
        let (p, q) = markov_oracle(&word);
        assert_eq!(
            (to_i128(r.value.numer()), to_i128(r.value.denom())),
            (p, q),
            "path {word}"
        );
        let t = markov_triple_at(&r.path).unwrap();
        let (x, y, z) = triple_oracle(&word);
        assert_eq!((to_i128(&t.x), to_i128(&t.y), to_i128(&t.z)), (x, y, z));
        assert_eq!(z, q);
    }
}

#[test]
fn cohn_matrices_match_oracle() {
    for r in farey_tree(5, TreeLimits::default()).unwrap() {
        let word = r.path.to_string().replace('-', "");
        for a in -2..=3 {
            let c = cohn_at(&r.value, a).unwrap();
            assert_eq!(
                c.matrix(),
                &mat(&cohn_oracle(a as i128, &word)),
                "t = {}",
                r.value
            );
        }
    }
}

#[test]
fn cf_words_match_euclid() {
    for r in farey_tree(ORACLE_DEPTH, TreeLimits::default()).unwrap() {
        let m = mu(&r.value).unwrap();
        let (p, q) = (to_i128(m.numer()), to_i128(m.denom()));
        let expect = cf_oracle(2 * q + p, q);
        let word = markov_cf(&r.value).unwrap();
        let got: Vec<i128> = word
            .quotients()
            .iter()
            .map(|c| c.try_into().unwrap())
            .collect();
        assert_eq!(got, expect, "t = {}", r.value);
        assert_eq!(cf_value(&got), (2 * q + p, q));
        assert_eq!(cf_expand_even(&cf_eval(&word)).unwrap(), word);
    }
}

#[test]
fn gamma_matches_floating_point() {
    for r in markov_tree(4, TreeLimits::default()).unwrap() {
        let g = gamma(&r.value).unwrap();
        let (p, q) = (
            to_i128(r.value.numer()) as f64,
            to_i128(r.value.denom()) as f64,
        );
        let approx =
            (to_i128(g.p()) as f64 + (to_i128(g.d()) as f64).sqrt()) / to_i128(g.q()) as f64;
        assert!((approx - gamma_f64(p, q)).abs() < 1e-9);
    }
}

#[test]
fn markov_reference_values() {
    for (t, m) in MARKOV_BY_T {
        assert_eq!(mu(&frac(t)).unwrap(), frac(m), "t = {t}");
    }
    assert_eq!(mu(&frac("0/1")).unwrap(), frac("0/1"));
    assert_eq!(mu(&frac("1/1")).unwrap(), frac("1/2"));
}

#[test]
fn cohn_reference_values() {
    for (t, a, m) in COHN_REFERENCE {
        assert_eq!(
            cohn_at(&frac(t), a).unwrap().matrix(),
            &mat(&m),
            "t = {t}, a = {a}"
        );
    }
    let one = Fraction::one();
    for (pos, m) in COHN_MIRRORED_TRANSPOSED {
        // position t in the mirrored picture carries C_{1−t}(2)ᵀ
        let t = frac(pos);
        let mirrored =
            Fraction::new(one.numer() * t.denom() - t.numer(), t.denom().clone()).unwrap();
        assert_eq!(cohn_at(&mirrored, 2).unwrap().matrix().transpose(), mat(&m));
    }
}

#[test]
fn cf_reference_words() {
    for (t, w) in CF_WORDS {
        assert_eq!(
            markov_cf(&frac(t)).unwrap(),
            CFWord::from_slice(w).unwrap(),
            "t = {t}"
        );
    }
    let words: Vec<String> = cf_tree(1, TreeLimits::default())
        .unwrap()
        .into_iter()
        .map(|r| r.value.to_string())
        .collect();
    assert_eq!(words, ["[2,2,1,1]", "[2,2,2,2,1,1]", "[2,2,1,1,1,1]"]);
}

#[test]
fn reference_irrationals() {
    for (t, p, b, q, d) in IRRATIONALS {
        let expect = QuadraticIrrational::new(p, b, q, d).unwrap();
        let g = gamma(&mu(&frac(t)).unwrap()).unwrap();
        let x = periodic_value(&markov_cf(&frac(t)).unwrap()).unwrap();
        assert!(g.value_eq(&expect), "gamma at {t}: {g}");
        assert!(x.value_eq(&expect), "periodic at {t}: {x}");
        let (a2, a1, a0) = fixed_point_quadratic(&markov_cf(&frac(t)).unwrap());
        assert!(qi_satisfies(&g, &a2, &a1, &a0));
    }
}

#[test]
fn companion_values() {
    assert_eq!(left_companion(&frac("1/2"), 2).unwrap(), frac("179/75"));
    assert_eq!(left_companion(&frac("1/1"), 2).unwrap(), frac("29/12"));
    assert_eq!(left_companion(&frac("0/1"), 3).unwrap(), frac("13/8"));
}
