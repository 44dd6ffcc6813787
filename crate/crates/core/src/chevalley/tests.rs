use proptest::prelude::*;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::ring::OrderTable;

fn group(sel: &str) -> Chevalley {
    Chevalley::new(&RootSystem::from_selector(sel).unwrap()).unwrap()
}

fn pairs(sys: &RootSystem) -> Vec<(Root, Root)> {
    let roots = sys.roots();
    let mut out = Vec::new();
    for a in roots {
        for b in roots {
            if a != b && *a != b.neg() {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

#[test]
fn x_zero_is_identity() {
    let g = group("G2");
    let z = Ring::integers();
    for r in g.system().roots() {
        assert!(g.x(&z, r, &z.zero()).unwrap().is_identity());
    }
}

#[test]
fn x_inverse() {
    let g = group("A2");
    let z = Ring::integers();
    let a1 = Root(vec![1, 0]);
    let p = g.x(&z, &a1, &z.one()).unwrap().mul(&g.x(&z, &a1, &z.from_int(-1)).unwrap());
    assert!(p.is_identity());
}

#[test]
fn h_one_is_identity() {
    let g = group("B2");
    let z = Ring::integers();
    for r in g.system().roots() {
        assert!(g.h(&z, r, &z.one()).unwrap().is_identity());
    }
}

#[test]
fn h_inverse_mod_seven() {
    let g = group("G2");
    let r = Ring::modular(7).unwrap();
    for root in g.system().roots() {
        for t in 2..=6 {
            let t = r.from_int(t);
            let prod = g.h(&r, root, &t).unwrap().mul(&g.h(&r, root, &r.inv(&t).unwrap()).unwrap());
            assert!(prod.is_identity(), "{root}");
        }
    }
}

#[test]
fn h_needs_a_unit() {
    let g = group("A2");
    let z = Ring::integers();
    let err = g.h(&z, &Root(vec![1, 0]), &z.from_int(2)).unwrap_err();
    assert!(matches!(err, ChevalleyError::Ring(RingError::NotAUnit(_))));
}

#[test]
fn torus_action_mod_seven() {
    let r = Ring::modular(7).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for sel in ["A2", "B2", "G2"] {
        let g = group(sel);
        let sys = g.system();
        for a in sys.roots() {
            for b in sys.roots() {
                let t = r.from_int(rng.gen_range(1..7));
                let u = r.from_int(rng.gen_range(0..7));
                let mut w = Word::new();
                w.push(Letter::Conjugate {
                    prefix: Word(vec![Letter::Torus { root: a.clone(), t: t.clone() }]),
                    inner: Word::root(b, u.clone()),
                });
                let lhs = g.evaluate(&r, &w).unwrap();
                let e = sys.cartan_int(b, a) as i64;
                let rhs = g.x(&r, b, &r.mul(&r.pow(&t, e).unwrap(), &u)).unwrap();
                assert_eq!(lhs, rhs, "{sel}: h_{a} x_{b}");
            }
        }
    }
}

#[test]
fn evaluate_basics() {
    let g = group("A2");
    let z = Ring::integers();
    assert!(g.evaluate(&z, &Word::new()).unwrap().is_identity());
    let a = Root(vec![1, 1]);
    let mut w = Word::new();
    for t in [2, 3, -2, -3] {
        w.push_root(&a, z.from_int(t));
    }
    assert!(g.evaluate(&z, &w).unwrap().is_identity());
    let h = Ring::localized(&z, &z.from_int(2)).unwrap();
    let t = h.from_int(4);
    let six = g.h_word(&h, &a, &t).unwrap();
    assert_eq!(six.letter_count(), 6);
    assert_eq!(g.evaluate(&h, &six).unwrap(), g.h(&h, &a, &t).unwrap());
}

#[test]
fn a2_single_constant() {
    let g = group("A2");
    let t = g.derive_cij(&Root(vec![1, 0]), &Root(vec![0, 1])).unwrap();
    assert_eq!(t.terms.len(), 1);
    assert_eq!((t.terms[0].i, t.terms[0].j), (1, 1));
    assert_eq!(t.terms[0].c.abs(), 1);
    assert_eq!(t.pairing, Pairing::Indistinguishable);
}

#[test]
fn b2_short_pair_has_two_terms() {
    let g = group("B2");
    // a1 is long, a2 short; a1 + a2 and a2 + (a1 + a2) are the short-short pair
    let (s1, s2) = (Root(vec![0, 1]), Root(vec![1, 1]));
    let t = g.derive_cij(&s1, &s2).unwrap();
    // s1 + s2 is long, and neither 2 s1 + s2 nor s1 + 2 s2 is a root
    assert_eq!(t.terms.len(), 1);
    let (long, short) = (Root(vec![1, 0]), Root(vec![0, 1]));
    let t = g.derive_cij(&long, &short).unwrap();
    let ij: Vec<(u32, u32)> = t.terms.iter().map(|c| (c.i, c.j)).collect();
    assert_eq!(ij, vec![(1, 1), (1, 2)]);
    assert_ne!(t.pairing, Pairing::Indistinguishable);
}

#[test]
fn first_constant_is_structure_constant() {
    // C_11 = N(a, b) independently of the pairing
    for sel in ["B2", "G2", "B3"] {
        let g = group(sel);
        let sys = g.system();
        for (a, b) in pairs(sys) {
            let t = g.derive_cij(&a, &b).unwrap();
            let n = g.constants().n(sys.index_of(&a).unwrap(), sys.index_of(&b).unwrap());
            assert_eq!(t.constant(1, 1).unwrap_or(0), n, "{sel} ({a}, {b})");
            for term in &t.terms {
                assert!((1..=3).contains(&term.c.abs()));
            }
        }
    }
}

#[test]
fn proportional_pairs_rejected() {
    let g = group("A2");
    let a = Root(vec![1, 0]);
    assert!(matches!(g.derive_cij(&a, &a.neg()), Err(ChevalleyError::Proportional(..))));
}

#[test]
fn orthogonal_roots_commute() {
    let g = group("B2");
    let z = Ring::integers();
    // a1 + 2a2 and a1 are long and orthogonal-ish: their sum is not a root
    let (a, b) = (Root(vec![1, 2]), Root(vec![1, 0]));
    let t = g.derive_cij(&a, &b).unwrap();
    assert!(t.terms.is_empty());
    assert!(g.commutator(&z, &a, &z.from_int(4), &b, &z.from_int(-7)).unwrap().is_identity());
}

#[test]
fn commutator_formula_over_z_and_zm() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let rings = [Ring::integers(), Ring::modular(12).unwrap()];
    for sel in ["A2", "B2", "G2"] {
        let g = group(sel);
        for (a, b) in pairs(g.system()) {
            let table = g.derive_cij(&a, &b).unwrap();
            for ring in &rings {
                for _ in 0..3 {
                    let s = ring.from_int(rng.gen_range(-9..=9));
                    let t = ring.from_int(rng.gen_range(-9..=9));
                    assert!(g.verify_commutator(ring, &table, &s, &t).unwrap(), "{sel} ({a},{b})");
                }
            }
        }
    }
}

#[test]
fn commutator_formula_over_order() {
    let g = group("G2");
    let r = Ring::order(OrderTable::quadratic(2));
    let s = r.element(&[3.into(), (-1).into()], 0).unwrap();
    let t = r.element(&[0.into(), 2.into()], 0).unwrap();
    for (a, b) in pairs(g.system()) {
        let table = g.derive_cij(&a, &b).unwrap();
        assert!(g.verify_commutator(&r, &table, &s, &t).unwrap());
    }
}

#[test]
fn word_text_examples() {
    let sys = RootSystem::from_selector("A2").unwrap();
    let base = Ring::integers();
    let r = Ring::localized(&base, &base.from_int(2)).unwrap();
    let text = "x[a1+a2](3) h[a1](1/u^2) conj(x[a2](-1); x[a1](5) x[a1](1/u^1))";
    let w = Word::parse(text, &sys, &r).unwrap();
    assert_eq!(w.format(&r), text);
    assert_eq!(w.letter_count(), 1 + 1 + 2 + 2);
    assert!(Word::parse("x[a3](1)", &sys, &r).is_err());
    assert!(Word::parse("h[a1](3)", &sys, &r).is_err());
    assert!(Word::parse("conj(x[a1](1) x[a2](1))", &sys, &r).is_err());
    assert!(Word::parse("y[a1](1)", &sys, &r).is_err());
    assert_eq!(Word::parse("  ", &sys, &r).unwrap(), Word::new());
}

#[test]
fn flatten_matches_evaluate() {
    let sys = RootSystem::from_selector("B2").unwrap();
    let g = Chevalley::new(&sys).unwrap();
    let r = Ring::modular(9).unwrap();
    let w = Word::parse("conj(x[a1](2) h[a2](4); x[a1+a2](3) conj(x[a2](1); x[-a1](7)))", &sys, &r).unwrap();
    let flat = w.flatten(&r).unwrap();
    assert!(flat.0.iter().all(|l| !matches!(l, Letter::Conjugate { .. })));
    assert_eq!(g.evaluate(&r, &w).unwrap(), g.evaluate(&r, &flat).unwrap());
    let inv = g.evaluate(&r, &w.inverse(&r).unwrap()).unwrap();
    assert!(g.evaluate(&r, &w).unwrap().mul(&inv).is_identity());
}

fn arb_letter(depth: u32) -> BoxedStrategy<String> {
    let roots = prop::sample::select(vec!["a1", "a2", "a1+a2", "a1+2a2", "-a1", "-a1-2a2"]);
    let leaf = (roots.clone(), -20i64..20, 0u32..3, any::<bool>())
        .prop_map(|(r, c, k, torus)| {
            if torus {
                // powers of 2 are units of Z[1/2]
                format!("h[{r}]({}/u^{k})", if c < 0 { -1i64 << (c.unsigned_abs() % 4) } else { 1 << (c % 4) })
            } else if k == 0 {
                format!("x[{r}]({c})")
            } else {
                format!("x[{r}]({c}/u^{k})")
            }
        })
        .boxed();
    if depth == 0 {
        return leaf;
    }
    let word = prop::collection::vec(arb_letter(depth - 1), 0..3).prop_map(|v| v.join(" "));
    prop_oneof![
        3 => leaf,
        1 => (word.clone(), word).prop_map(|(p, w)| format!("conj({p}; {w})")),
    ]
    .boxed()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn word_round_trip(letters in prop::collection::vec(arb_letter(2), 0..5)) {
        let sys = RootSystem::from_selector("B2").unwrap();
        let z = Ring::integers();
        let r = Ring::localized(&z, &z.from_int(2)).unwrap();
        let w = Word::parse(&letters.join(" "), &sys, &r).unwrap();
        let again = Word::parse(&w.format(&r), &sys, &r).unwrap();
        prop_assert_eq!(&again, &w);
        prop_assert_eq!(again.format(&r), w.format(&r));
    }

    #[test]
    fn additivity(idx in 0usize..12, s in -50i64..50, t in -50i64..50) {
        let g = group("G2");
        let z = Ring::integers();
        let r = g.system().roots()[idx].clone();
        let lhs = g.x(&z, &r, &z.from_int(s)).unwrap().mul(&g.x(&z, &r, &z.from_int(t)).unwrap());
        prop_assert_eq!(lhs, g.x(&z, &r, &z.from_int(s + t)).unwrap());
    }
}
