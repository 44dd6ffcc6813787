use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn zxi() -> Ring {
    Ring::order(OrderTable::quadratic(2))
}

fn z_half() -> Ring {
    let z = Ring::integers();
    Ring::localized(&z, &z.from_int(2)).unwrap()
}

fn el(r: &Ring, coords: &[i64], k: u32) -> Elem {
    let c: Vec<BigInt> = coords.iter().map(|&x| big(x)).collect();
    r.element(&c, k).unwrap()
}

#[test]
fn modular_addition_reduces() {
    let r = Ring::modular(5).unwrap();
    assert_eq!(r.add(&r.from_int(3), &r.from_int(4)), r.from_int(2));
}

#[test]
fn order_addition_is_coordinatewise() {
    let r = zxi();
    let s = r.add(&el(&r, &[1, 1], 0), &el(&r, &[2, -1], 0));
    assert_eq!(s, el(&r, &[3, 0], 0));
}

#[test]
fn localized_sum_cancels_denominator() {
    let r = z_half();
    let s = r.add(&el(&r, &[3], 1), &el(&r, &[1], 1));
    assert_eq!(s.coords[0], big(2));
    assert_eq!(s.denom_exp, 0);
}

#[test]
fn multiplication_examples() {
    let r = zxi();
    assert_eq!(r.mul(&r.basis(1), &r.basis(1)), el(&r, &[2, 0], 0));
    let m6 = Ring::modular(6).unwrap();
    assert!(m6.is_zero(&m6.mul(&m6.from_int(2), &m6.from_int(3))));
    let h = z_half();
    let half = el(&h, &[1], 1);
    let q = h.mul(&half, &half);
    assert_eq!((q.coords[0].clone(), q.denom_exp), (big(1), 2));
}

#[test]
fn inverse_examples() {
    let r = Ring::modular(7).unwrap();
    assert_eq!(r.inv(&r.from_int(3)).unwrap(), r.from_int(5));
    let h = z_half();
    assert_eq!(h.inv(&h.from_int(2)).unwrap(), el(&h, &[1], 1));
    let z = Ring::integers();
    assert!(matches!(z.inv(&z.from_int(2)), Err(RingError::NotAUnit(_))));
    assert!(matches!(h.inv(&h.from_int(3)), Err(RingError::NotAUnit(_))));
    assert!(matches!(r.inv(&r.from_int(0)), Err(RingError::NotAUnit(_))));
}

#[test]
fn order_units_are_inverted() {
    // 1 + xi has norm 1 - 2 = -1 in Z[sqrt 2].
    let r = zxi();
    let u = el(&r, &[1, 1], 0);
    let inv = r.inv(&u).unwrap();
    assert!(r.is_one(&r.mul(&u, &inv)));
    assert!(r.inv(&r.basis(1)).is_err());
}

#[test]
fn localized_order_inverts_u() {
    let base = zxi();
    let r = Ring::localized(&base, &base.basis(1)).unwrap();
    let xi = r.from_base(&base.basis(1));
    let inv = r.inv(&xi).unwrap();
    assert!(r.is_one(&r.mul(&xi, &inv)));
    // xi^-1 = xi / 2 is not integral, so the canonical form keeps a denominator
    assert_eq!(inv.denom_exp, 1);
}

#[test]
fn divmod_examples() {
    let r = zxi();
    let (n, rem) = r.divmod_basis(&el(&r, &[7, 5], 0), &big(3)).unwrap();
    assert_eq!(n, vec![big(2), big(1)]);
    assert_eq!(rem, vec![big(1), big(2)]);
    let z = Ring::integers();
    let (n, rem) = z.divmod_basis(&z.from_int(-1), &big(2)).unwrap();
    assert_eq!((n, rem), (vec![big(-1)], vec![big(1)]));
    let (n, rem) = z.divmod_basis(&z.zero(), &big(5)).unwrap();
    assert_eq!((n, rem), (vec![big(0)], vec![big(0)]));
    assert!(z_half().divmod_basis(&z_half().one(), &big(2)).is_err());
}

#[test]
fn clear_denominator_examples() {
    let h = z_half();
    let (k, b) = h.clear_denominator(&el(&h, &[3], 2)).unwrap();
    assert_eq!((k, b.coords[0].clone()), (2, big(3)));
    let (k, b) = h.clear_denominator(&h.from_int(6)).unwrap();
    assert_eq!((k, b.coords[0].clone()), (0, big(6)));

    let base = zxi();
    let r = Ring::localized(&base, &base.basis(1)).unwrap();
    let a = el(&r, &[2, 0], 1);
    let (k, b) = r.clear_denominator(&a).unwrap();
    assert_eq!(k, 0);
    assert_eq!(b, base.basis(1));
    // multiplying back: xi * xi = 2
    assert_eq!(base.mul(&b, &base.basis(1)), el(&base, &[2, 0], 0));
}

#[test]
fn spec_mismatch_is_reported() {
    let a = RingElement::from_int(&Ring::integers(), 1);
    let b = RingElement::from_int(&Ring::modular(3).unwrap(), 1);
    assert_eq!(a.add(&b), Err(RingError::SpecMismatch));
    // structurally equal specs are the same ring
    let c = RingElement::from_int(&Ring::modular(3).unwrap(), 2);
    assert!(b.mul(&c).is_ok());
}

#[test]
fn table_validation() {
    assert!(OrderTable::new(2, vec![1, 0, 0, 1, 0, 1, 2, 0]).is_ok());
    // xi_0 not the identity
    assert!(OrderTable::new(2, vec![0, 1, 0, 1, 0, 1, 2, 0]).is_err());
    // non-commutative
    assert!(OrderTable::new(2, vec![1, 0, 0, 1, 1, 1, 2, 0]).is_err());
    assert!(OrderTable::new(2, vec![1, 0]).is_err());
    assert!(Ring::modular(1).is_err());
    let z = Ring::integers();
    assert_eq!(Ring::localized(&z, &z.zero()), Err(RingError::BadLocalizer));
}

#[test]
fn non_associative_table_rejected() {
    // basis 1, a, b with a*a = b, a*b = 1, b*b = 0: (a*b)*b = b but a*(b*b) = 0
    let mut t = vec![0i64; 27];
    let set = |t: &mut Vec<i64>, i: usize, j: usize, v: [i64; 3]| {
        for k in 0..3 {
            t[(i * 3 + j) * 3 + k] = v[k];
            t[(j * 3 + i) * 3 + k] = v[k];
        }
    };
    set(&mut t, 0, 0, [1, 0, 0]);
    set(&mut t, 0, 1, [0, 1, 0]);
    set(&mut t, 0, 2, [0, 0, 1]);
    set(&mut t, 1, 1, [0, 0, 1]);
    set(&mut t, 1, 2, [1, 0, 0]);
    set(&mut t, 2, 2, [0, 0, 0]);
    let err = OrderTable::new(3, t).unwrap_err();
    assert!(err.to_string().contains("associative"), "{err}");
}

#[test]
fn config_round_trip() {
    let cfg = RingConfig::from_json(
        r#"{"kind": "order", "rank": 2, "mul_table": [[[1,0],[0,1]],[[0,1],[2,0]]], "localize_at": [0, 1]}"#,
    )
    .unwrap();
    let r = cfg.build().unwrap();
    assert_eq!(r.width(), 2);
    assert!(r.localization().is_some());
    let m = RingConfig::from_json(r#"{"kind": "modular", "modulus": 7}"#).unwrap().build().unwrap();
    assert_eq!(m.modulus(), Some(&big(7)));
    assert!(RingConfig::from_json(r#"{"kind": "modular", "modulus": 1}"#).unwrap().build().is_err());
    assert!(RingConfig::from_json(r#"{"kind": "field"}"#).unwrap().build().is_err());
}

#[test]
fn text_form_round_trips() {
    let base = zxi();
    let r = Ring::localized(&base, &el(&base, &[3, 0], 0)).unwrap();
    let a = el(&r, &[1, 2], 3);
    assert_eq!(r.format(&a), "1,2/u^3");
    assert_eq!(r.parse("1,2/u^3").unwrap(), a);
    assert_eq!(r.parse(" 6, 3 /u^1").unwrap(), el(&r, &[2, 1], 0));
    assert!(r.parse("1/x^2").is_err());
    assert!(Ring::integers().parse("1,2").is_err());
    assert!(Ring::integers().parse("2/u^1").is_err());
}

fn ring_for(kind: u8) -> Ring {
    match kind {
        0 => Ring::integers(),
        1 => Ring::modular(12).unwrap(),
        2 => zxi(),
        3 => z_half(),
        _ => {
            let base = Ring::order(OrderTable::quadratic(-5));
            Ring::localized(&base, &el(&base, &[1, 1], 0)).unwrap()
        }
    }
}

fn arb_elem(r: &Ring, raw: &[i64], k: u32) -> Elem {
    let w = r.width();
    let k = if r.localization().is_some() { k } else { 0 };
    el(r, &raw[..w], k)
}

proptest! {
    #[test]
    fn ring_axioms(kind in 0u8..5, xs in prop::collection::vec(-50i64..50, 6), ks in prop::collection::vec(0u32..4, 3)) {
        let r = ring_for(kind);
        let w = r.width();
        let a = arb_elem(&r, &xs[0..w], ks[0]);
        let b = arb_elem(&r, &xs[2..2 + w], ks[1]);
        let c = arb_elem(&r, &xs[4..4 + w], ks[2]);
        prop_assert_eq!(r.add(&r.add(&a, &b), &c), r.add(&a, &r.add(&b, &c)));
        prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
        prop_assert_eq!(r.add(&a, &b), r.add(&b, &a));
        prop_assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
        prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
        prop_assert!(r.is_zero(&r.sub(&a, &a)));
        prop_assert_eq!(r.mul(&a, &r.one()), a.clone());
    }

    #[test]
    fn localized_denominator_is_minimal(kind in 3u8..5, xs in prop::collection::vec(-200i64..200, 2), k in 0u32..6) {
        let r = ring_for(kind);
        let loc = r.localization().unwrap().clone();
        let a = arb_elem(&r, &xs, k);
        let u = r.from_base(&loc.u());
        let scaled = r.mul(&r.pow(&u, a.denom_exp as i64).unwrap(), &a);
        prop_assert!(r.is_integral(&scaled));
        if a.denom_exp >= 1 {
            let less = r.mul(&r.pow(&u, a.denom_exp as i64 - 1).unwrap(), &a);
            prop_assert!(!r.is_integral(&less));
        }
    }

    #[test]
    fn divmod_reconstructs(xs in prop::collection::vec(-10_000i64..10_000, 2), p in 1i64..40) {
        let r = zxi();
        let a = el(&r, &xs, 0);
        let p = big(p);
        let (n, rem) = r.divmod_basis(&a, &p).unwrap();
        for l in 0..2 {
            prop_assert!(rem[l] >= big(0) && rem[l] < p);
            prop_assert_eq!(&p * &n[l] + &rem[l], a.coords[l].clone());
        }
    }

    #[test]
    fn units_invert(kind in 0u8..5, xs in prop::collection::vec(-30i64..30, 2), k in 0u32..3) {
        let r = ring_for(kind);
        let a = arb_elem(&r, &xs, k);
        if let Ok(inv) = r.inv(&a) {
            prop_assert!(r.is_one(&r.mul(&a, &inv)));
        }
    }
}
