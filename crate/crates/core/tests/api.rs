use num_bigint::BigInt;
use proptest::prelude::*;

use chevalley::chevalley::{Chevalley, Word};
use chevalley::norm;
use chevalley::ring::{Ring, RingConfig};
use chevalley::roots::RootSystem;
use chevalley::witness;

fn chev(sel: &str) -> Chevalley {
    Chevalley::new(&RootSystem::from_selector(sel).unwrap()).unwrap()
}

fn ring(json: &str) -> Ring {
    RingConfig::from_json(json).unwrap().build().unwrap()
}

#[test]
fn adjoint_sl2_images_are_psl2() {
    // |PSL2(Z/m)| = |SL2(Z/m)| / |{a : a^2 = 1}|
    let g = chev("A1");
    for (m, order) in [(3u64, 12usize), (4, 24), (5, 60)] {
        let q = norm::enumerate_quotient(&g, m, &norm::root_generators(&g), norm::DEFAULT_MEM_CAP).unwrap();
        assert_eq!(q.order(), order, "m = {m}");
    }
}

#[test]
fn word_text_survives_ring_config() {
    let r = ring(r#"{"kind": "order", "rank": 2, "mul_table": [[[1,0],[0,1]],[[0,1],[2,0]]]}"#);
    let g = chev("B2");
    let w = Word::parse("x[a1](1,2) conj(x[a2](3,0); x[a1+a2](0,-1))", g.system(), &r).unwrap();
    let again = Word::parse(&w.format(&r), g.system(), &r).unwrap();
    assert_eq!(g.evaluate(&r, &w).unwrap(), g.evaluate(&r, &again).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Letter count depends on the ring rank and case only, not on the size of `a`.
    #[test]
    fn root_element_witness_length_is_flat(c0 in -100_000i64..100_000, c1 in -100_000i64..100_000, sel in prop::sample::select(vec!["A2", "B2", "G2"])) {
        let r = ring(r#"{"kind": "order", "rank": 2, "mul_table": [1,0, 0,1, 0,1, 2,0]}"#);
        let g = chev(sel);
        let q = BigInt::from(2);
        let small = r.element(&[BigInt::from(1), BigInt::from(1)], 0).unwrap();
        let a = r.element(&[BigInt::from(c0), BigInt::from(c1)], 0).unwrap();
        for alpha in g.system().simple_roots() {
            let w = witness::witness_root_element(&g, &r, &alpha, &a, &q).unwrap();
            prop_assert_eq!(g.evaluate(&r, &w).unwrap(), g.x(&r, &alpha, &a).unwrap());
            let base = witness::witness_root_element(&g, &r, &alpha, &small, &q).unwrap();
            prop_assert!(w.letter_count() <= base.letter_count());
        }
    }

    #[test]
    fn denominators_clear_by_conjugation(b in -1000i64..1000, k in 0u32..8) {
        let r = ring(r#"{"kind": "integers", "localize_at": [3]}"#);
        let g = chev("G2");
        let a = r.element(&[BigInt::from(b)], k).unwrap();
        for alpha in g.system().roots() {
            let (conj, inner) = witness::clear_denominators_conjugation(&g, &r, alpha, &a).unwrap();
            prop_assert!(conj.letter_count() <= 1);
            let mut w = conj.clone();
            w.extend(inner);
            w.extend(conj.inverse(&r).unwrap());
            prop_assert_eq!(g.evaluate(&r, &w).unwrap(), g.x(&r, alpha, &a).unwrap());
        }
    }
}
