//! Commutator constants `C_ij` for `[x_a(s), x_b(t)] = prod x_{ia+jb}(C_ij * monomial)`.
//!
//! The product runs over `i, j > 0` with `ia + jb` a root, by increasing `i + j`
//! and then increasing `i`. The monomial is either `t^i s^j` (`Printed`) or
//! `s^i t^j` (`Swapped`); which one fits is part of the derivation.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::ring::{Elem, Ring};
use crate::roots::Root;

use super::{Chevalley, ChevalleyError, GroupElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Pairing {
    /// `C_ij t^i s^j`: the exponent `i` goes with the second parameter.
    Printed,
    /// `C_ij s^i t^j`.
    Swapped,
    /// Every term has `i = j`, so both pairings give the same monomials.
    Indistinguishable,
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pairing::Printed => "t^i s^j",
            Pairing::Swapped => "s^i t^j",
            Pairing::Indistinguishable => "symmetric",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutatorTerm {
    pub i: u32,
    pub j: u32,
    pub root: Root,
    pub c: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutatorTable {
    pub alpha: Root,
    pub beta: Root,
    pub pairing: Pairing,
    pub terms: Vec<CommutatorTerm>,
}

impl CommutatorTable {
    /// Exponents `(of s, of t)` of the monomial attached to a term.
    pub fn exponents(&self, term: &CommutatorTerm) -> (u32, u32) {
        match self.pairing {
            Pairing::Swapped => (term.i, term.j),
            _ => (term.j, term.i),
        }
    }

    pub fn constant(&self, i: u32, j: u32) -> Option<i64> {
        self.terms.iter().find(|c| c.i == i && c.j == j).map(|c| c.c)
    }

    /// The factors of the right-hand side at `(s, t)` as `(root, parameter)`.
    pub fn factors(&self, ring: &Ring, s: &Elem, t: &Elem) -> Vec<(Root, Elem)> {
        self.terms
            .iter()
            .map(|term| {
                let (a, b) = self.exponents(term);
                let mono = ring.mul(
                    &ring.pow(s, a as i64).expect("non-negative power"),
                    &ring.pow(t, b as i64).expect("non-negative power"),
                );
                (term.root.clone(), ring.scale_int(&mono, &BigInt::from(term.c)))
            })
            .collect()
    }
}

// parameter pairs used to pin down the constants; the monomials t^i s^j of
// degree <= 4 separate the two pairings on these
const PROBES: [(i64, i64); 5] = [(1, 1), (2, 3), (3, 2), (-1, 2), (5, -3)];

pub(super) fn derive(chev: &Chevalley, a: &Root, b: &Root) -> Result<CommutatorTable, ChevalleyError> {
    let sys = chev.system();
    sys.require(a)?;
    sys.require(b)?;
    if *a == *b || *a == b.neg() {
        return Err(ChevalleyError::Proportional(a.to_string(), b.to_string()));
    }
    let mut slots: Vec<(u32, u32, Root)> = Vec::new();
    for i in 1..=4u32 {
        for j in 1..=4u32 {
            let r = a.combine(i as i32, b, j as i32);
            if sys.is_root(&r) {
                slots.push((i, j, r));
            }
        }
    }
    slots.sort_by_key(|&(i, j, _)| (i + j, i));

    let z = Ring::integers();
    let label = format!("{a}, {b}");
    let mut observed: Vec<Vec<BigInt>> = Vec::new();
    for &(s, t) in &PROBES {
        let g = chev.commutator(&z, a, &z.from_int(s), b, &z.from_int(t))?;
        observed.push(peel(chev, g, &slots).ok_or_else(|| {
            ChevalleyError::NoSolution(label.clone(), format!("ordered product does not reproduce the commutator at (s,t)=({s},{t})"))
        })?);
    }

    let fits = |printed: bool| -> Option<Vec<i64>> {
        let consts: Vec<i64> = observed[0].iter().map(|c| c.to_i64()).collect::<Option<_>>()?;
        for (probe, coeffs) in PROBES.iter().zip(&observed) {
            for (k, &(i, j, _)) in slots.iter().enumerate() {
                let (es, et) = if printed { (j, i) } else { (i, j) };
                let mono = BigInt::from(probe.0).pow(es) * BigInt::from(probe.1).pow(et);
                if coeffs[k] != mono * consts[k] {
                    return None;
                }
            }
        }
        Some(consts)
    };
    let symmetric = slots.iter().all(|&(i, j, _)| i == j);
    let (pairing, consts) = match (fits(true), fits(false)) {
        (Some(c), Some(_)) if symmetric => (Pairing::Indistinguishable, c),
        (Some(c), None) => (Pairing::Printed, c),
        (None, Some(c)) => (Pairing::Swapped, c),
        (Some(c), Some(_)) => (Pairing::Printed, c),
        (None, None) => {
            return Err(ChevalleyError::NoSolution(
                label,
                "neither monomial pairing gives constant coefficients".into(),
            ))
        }
    };
    let terms = slots
        .into_iter()
        .zip(consts)
        .map(|((i, j, root), c)| CommutatorTerm { i, j, root, c })
        .collect();
    Ok(CommutatorTable {
        alpha: a.clone(),
        beta: b.clone(),
        pairing,
        terms,
    })
}

/// Writes `g` as `prod x_{slot}(c_slot)` in the given order, reading each
/// parameter off the `(X_r, H_i)` entry and stripping the leftmost factor.
/// Returns `None` if something other than the identity remains.
fn peel(chev: &Chevalley, mut g: GroupElement, slots: &[(u32, u32, Root)]) -> Option<Vec<BigInt>> {
    let sys = chev.system();
    let ring = g.ring().clone();
    let mut out = Vec::with_capacity(slots.len());
    for (_, _, r) in slots {
        // ad X_r maps H_i to -<r, a_i> X_r
        let (i, c) = (0..sys.rank())
            .map(|i| (i, sys.cartan_int(r, &Root::simple(sys.rank(), i))))
            .find(|&(_, c)| c != 0)?;
        let row = chev.root_basis_index(r).ok()?;
        let entry = &g.at(row, i).coords[0];
        let c = BigInt::from(-c);
        if entry % &c != BigInt::from(0) {
            return None;
        }
        let param = entry / &c;
        chev.left_mul_x(&mut g, r, &ring.from_int(-param.clone())).ok()?;
        out.push(param);
    }
    g.is_identity().then_some(out)
}

pub(super) fn verify(chev: &Chevalley, ring: &Ring, table: &CommutatorTable, s: &Elem, t: &Elem) -> Result<bool, ChevalleyError> {
    let lhs = chev.commutator(ring, &table.alpha, s, &table.beta, t)?;
    let mut rhs = chev.identity(ring);
    for (root, p) in table.factors(ring, s, t) {
        chev.right_mul_x(&mut rhs, &root, &p)?;
    }
    Ok(lhs == rhs)
}
