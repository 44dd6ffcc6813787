use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::chevalley::{Chevalley, GroupElement, Letter, Word};
use crate::ring::{Elem, Ring, RingSpec};

use super::WitnessError;

/// Principal congruence subgroup of level `q`: matrices congruent to the
/// identity modulo `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceSubgroup {
    level: BigInt,
}

impl CongruenceSubgroup {
    /// Levels must be at least 2 and, over `Z/m`, divide `m`.
    pub fn new(ring: &Ring, level: impl Into<BigInt>) -> Result<Self, WitnessError> {
        let level = level.into();
        if level < BigInt::from(2) {
            return Err(WitnessError::Unsupported(format!("level {level} < 2")));
        }
        match ring.spec() {
            RingSpec::Integers | RingSpec::Order(_) => {}
            RingSpec::Modular(m) if m.is_multiple_of(&level) => {}
            _ => {
                return Err(WitnessError::Unsupported(format!(
                    "congruence subgroup of level {level} over {}",
                    ring.describe()
                )))
            }
        }
        Ok(CongruenceSubgroup { level })
    }

    pub fn level(&self) -> &BigInt {
        &self.level
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        let d = g.dim();
        (0..d).all(|i| {
            (0..d).all(|j| {
                g.at(i, j).coords.iter().enumerate().all(|(l, c)| {
                    let c = if i == j && l == 0 { c - BigInt::one() } else { c.clone() };
                    c.is_multiple_of(&self.level)
                })
            })
        })
    }
}

/// Right-coset representatives `x_alpha(r)`, `0 <= r_l < q` coordinatewise,
/// of `E_alpha ∩ H` in `E_alpha`. The same set serves every root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    level: BigInt,
}

impl CosetTable {
    pub fn new(h: &CongruenceSubgroup) -> Self {
        CosetTable { level: h.level.clone() }
    }

    /// Splits `a = (a - r) + r` with `r` the reduced representative.
    pub fn split(&self, ring: &Ring, a: &Elem) -> (Elem, Elem) {
        let r: Vec<BigInt> = a.coords.iter().map(|c| c.mod_floor(&self.level)).collect();
        let r = ring.element(&r, 0).expect("reduced coordinates fit the ring");
        (ring.sub(a, &r), r)
    }

    pub fn is_representative(&self, a: &Elem) -> bool {
        a.denom_exp == 0 && a.coords.iter().all(|c| *c >= BigInt::zero() && *c < self.level)
    }

    /// All representative parameters, in lexicographic coordinate order.
    pub fn representatives(&self, ring: &Ring) -> Vec<Elem> {
        let q = self.level.clone();
        let mut out: Vec<Vec<BigInt>> = vec![vec![]];
        for _ in 0..ring.width() {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    num_iter(&q).map(move |r| {
                        let mut v = prefix.clone();
                        v.push(r);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(|c| ring.element(&c, 0).unwrap()).collect()
    }
}

fn num_iter(q: &BigInt) -> impl Iterator<Item = BigInt> {
    let q = q.clone();
    let mut i = BigInt::zero();
    std::iter::from_fn(move || {
        (i < q).then(|| {
            let v = i.clone();
            i += 1;
            v
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetRewrite {
    /// `prod_i (t_1..t_{i-1}) h_i (t_1..t_{i-1})^-1`, one conjugate letter per `h_i != 1`.
    pub conjugated: Word,
    /// `t_1 .. t_m`, omitting trivial representatives.
    pub tail: Word,
}

/// Splits each letter `e_i = x_{a_i}(a_i) = h_i t_i` with `h_i` in `H` and `t_i`
/// a coset representative, and regroups the product as conjugates of the
/// `h_i` followed by the product of the `t_i`.
pub fn coset_rewrite(chev: &Chevalley, ring: &Ring, letters: &Word, h: &CongruenceSubgroup, table: &CosetTable) -> Result<CosetRewrite, WitnessError> {
    let full = chev.evaluate(ring, letters)?;
    if !h.contains(&full) {
        return Err(WitnessError::InputNotInH(h.level.clone()));
    }
    let mut conjugated = Word::new();
    let mut tail = Word::new();
    for letter in &letters.0 {
        let Letter::Root { root, t: a } = letter else {
            return Err(WitnessError::Unsupported("coset rewriting takes root letters only".into()));
        };
        let (hp, tp) = table.split(ring, a);
        if !ring.is_zero(&hp) {
            let inner = Word::root(root, hp);
            let conj = if tail.is_empty() {
                inner
            } else {
                Word(vec![Letter::Conjugate {
                    prefix: tail.clone(),
                    inner,
                }])
            };
            if !h.contains(&chev.evaluate(ring, &conj)?) {
                return Err(WitnessError::NotVerified(format!("conjugate {} left H", conj.format(ring))));
            }
            conjugated.extend(conj);
        }
        if !ring.is_zero(&tp) {
            tail.push_root(root, tp);
        }
    }
    let mut whole = conjugated.clone();
    whole.extend(tail.clone());
    if chev.evaluate(ring, &whole)? != full {
        return Err(WitnessError::NotVerified("coset rewrite does not reconstruct the input".into()));
    }
    Ok(CosetRewrite { conjugated, tail })
}
