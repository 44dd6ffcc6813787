//! Explicit words of bounded length for powers of root elements, and the
//! rewriting steps that reduce an element of a congruence subgroup to
//! conjugates of such powers.
//!
//! Every construction evaluates its own output and fails if the word does not
//! equal its target.

mod coset;
mod factor;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use thiserror::Error;

use crate::chevalley::{Chevalley, ChevalleyError, GroupElement, Letter, Word};
use crate::ring::{Elem, Ring, RingError};
use crate::roots::{Rank2Embedding, Root, RootError, WitnessCase};

pub use coset::{coset_rewrite, CongruenceSubgroup, CosetRewrite, CosetTable};
pub use factor::factor_elementary;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error(transparent)]
    Chevalley(#[from] ChevalleyError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("embedding is {found}, construction needs {expected}")]
    CaseMismatch { expected: WitnessCase, found: WitnessCase },
    #[error("witness does not evaluate to its target: {0}")]
    NotVerified(String),
    #[error("input product is not in the congruence subgroup of level {0}")]
    InputNotInH(BigInt),
    #[error("element is not in the elementary subgroup: {0}")]
    NotElementary(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// A word equal to `x_alpha(base)^exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerWitness {
    pub alpha: Root,
    pub base: Elem,
    pub exponent: BigInt,
    pub case: WitnessCase,
    pub word: Word,
    /// Letter count of every witness of this case, whatever `n` is.
    pub length_bound: usize,
}

impl PowerWitness {
    pub fn letters(&self) -> usize {
        self.word.letter_count()
    }
}

/// Letters in a long-root witness, and in a long-root power with remainder.
const LONG_LETTERS: usize = 4;
const LONG_POWER_LETTERS: usize = LONG_LETTERS + 1;

pub fn length_bound(case: WitnessCase) -> usize {
    match case {
        WitnessCase::Long => LONG_LETTERS,
        WitnessCase::B2Short => LONG_LETTERS + LONG_POWER_LETTERS,
        WitnessCase::G2Short => LONG_LETTERS + 2 * LONG_POWER_LETTERS,
    }
}

/// `x_alpha(p xi)^(C p n)` as the commutator `[x_beta(p xi), x_gamma(p n)]`.
pub fn witness_long(chev: &Chevalley, ring: &Ring, emb: &Rank2Embedding, p: &BigInt, xi: &Elem, n: &BigInt) -> Result<PowerWitness, WitnessError> {
    require_case(emb, WitnessCase::Long)?;
    witness_power(chev, ring, emb, p, xi, n)
}

/// Short root of a `B2`: the commutator followed by one long-root correction.
pub fn witness_short_b2(chev: &Chevalley, ring: &Ring, emb: &Rank2Embedding, p: &BigInt, xi: &Elem, n: &BigInt) -> Result<PowerWitness, WitnessError> {
    require_case(emb, WitnessCase::B2Short)?;
    witness_power(chev, ring, emb, p, xi, n)
}

/// Short root of a `G2`: the commutator followed by two long-root corrections.
pub fn witness_short_g2(chev: &Chevalley, ring: &Ring, emb: &Rank2Embedding, p: &BigInt, xi: &Elem, n: &BigInt) -> Result<PowerWitness, WitnessError> {
    require_case(emb, WitnessCase::G2Short)?;
    witness_power(chev, ring, emb, p, xi, n)
}

fn require_case(emb: &Rank2Embedding, expected: WitnessCase) -> Result<(), WitnessError> {
    if emb.case != expected {
        return Err(WitnessError::CaseMismatch {
            expected,
            found: emb.case,
        });
    }
    Ok(())
}

/// Dispatches on the embedding's case. The word is
/// `[x_beta(p xi), x_gamma(p n)]` followed by the inverses of the higher
/// commutator factors, each written as a bounded long-root power.
pub fn witness_power(chev: &Chevalley, ring: &Ring, emb: &Rank2Embedding, p: &BigInt, xi: &Elem, n: &BigInt) -> Result<PowerWitness, WitnessError> {
    let table = chev.derive_cij(&emb.beta, &emb.gamma)?;
    let c = table
        .constant(1, 1)
        .ok_or_else(|| WitnessError::NotVerified(format!("{} + {} has no (1,1) term", emb.beta, emb.gamma)))?;
    let extra: Vec<(i32, i32)> = table
        .terms
        .iter()
        .filter(|t| (t.i, t.j) != (1, 1))
        .map(|t| (t.i as i32, t.j as i32))
        .collect();
    if extra != emb.corrections() {
        return Err(WitnessError::NotVerified(format!(
            "commutator of {} and {} has correction terms {extra:?}, case {} expects {:?}",
            emb.beta,
            emb.gamma,
            emb.case,
            emb.corrections()
        )));
    }

    let s = ring.scale_int(xi, p);
    let t = ring.from_int(p * n);
    let mut word = commutator_word(ring, &emb.beta, &s, &emb.gamma, &t);
    // [x_b(s), x_g(t)] = x_alpha(C s t) * rest, so x_alpha(C s t) = [..] * rest^-1
    for term in table.terms.iter().skip(1).rev() {
        let (a, b) = table.exponents(term);
        let base = ring.scale_int(&ring.pow(xi, a as i64)?, p);
        let exponent = -BigInt::from(term.c) * p.pow(a + b - 1) * n.pow(b);
        word.extend(long_power_word(chev, ring, &term.root, &base, &exponent, p)?);
    }

    let exponent = BigInt::from(c) * p * n;
    let witness = PowerWitness {
        alpha: emb.alpha.clone(),
        base: s,
        exponent,
        case: emb.case,
        word,
        length_bound: length_bound(emb.case),
    };
    let target = chev.x(ring, &witness.alpha, &ring.scale_int(&witness.base, &witness.exponent))?;
    check(chev, ring, &witness.word, &target, || format!("{} power witness for {}", emb.case, emb.alpha))?;
    if witness.letters() != witness.length_bound {
        return Err(WitnessError::NotVerified(format!(
            "witness has {} letters, bound is {}",
            witness.letters(),
            witness.length_bound
        )));
    }
    Ok(witness)
}

fn commutator_word(ring: &Ring, a: &Root, s: &Elem, b: &Root, t: &Elem) -> Word {
    let mut w = Word::new();
    w.push_root(a, s.clone());
    w.push_root(b, t.clone());
    w.push_root(a, ring.neg(s));
    w.push_root(b, ring.neg(t));
    w
}

/// `x_delta(base)^exponent` for a root `delta` in the long case, written as a
/// commutator times one remainder letter: with `d = C p`,
/// `exponent = d m + r`, `0 <= r < |d|`, and
/// `x_delta(base)^exponent = [x_b(base), x_g(p m)] x_delta(r base)`.
fn long_power_word(chev: &Chevalley, ring: &Ring, delta: &Root, base: &Elem, exponent: &BigInt, p: &BigInt) -> Result<Word, WitnessError> {
    let emb = chev.system().find_witness_pair(delta)?;
    require_case(&emb, WitnessCase::Long)?;
    let c = chev
        .derive_cij(&emb.beta, &emb.gamma)?
        .constant(1, 1)
        .expect("long case always has a (1,1) term");
    let d = BigInt::from(c) * p;
    let (q, r) = exponent.div_mod_floor(&d.abs());
    let m = if d.is_negative() { -q } else { q };
    let mut w = commutator_word(ring, &emb.beta, base, &emb.gamma, &ring.from_int(p * &m));
    w.push_root(delta, ring.scale_int(base, &r));
    Ok(w)
}

fn check(chev: &Chevalley, ring: &Ring, word: &Word, target: &GroupElement, what: impl FnOnce() -> String) -> Result<(), WitnessError> {
    if chev.evaluate(ring, word)? != *target {
        return Err(WitnessError::NotVerified(what()));
    }
    Ok(())
}

/// Writes `x_alpha(a)` for `a` in `Z` or an order as a product of bounded
/// power witnesses at level `q`, one per basis coordinate, followed by the
/// remainder letter `x_alpha(sum r_l xi_l)` with `0 <= r_l < q`.
pub fn witness_root_element(chev: &Chevalley, ring: &Ring, alpha: &Root, a: &Elem, q: &BigInt) -> Result<Word, WitnessError> {
    if ring.is_zero(a) {
        return Ok(Word::new());
    }
    let emb = chev.system().find_witness_pair(alpha)?;
    let c = chev
        .derive_cij(&emb.beta, &emb.gamma)?
        .constant(1, 1)
        .expect("witness pair has a (1,1) term");
    let d = BigInt::from(c) * q;
    let (ns, rs) = ring.divmod_basis(a, q)?;
    let mut word = Word::new();
    for (l, nl) in ns.iter().enumerate() {
        // x_alpha(q xi_l)^nl with nl = d m + r
        let xi = ring.basis(l);
        let (quot, r) = nl.div_mod_floor(&d.abs());
        let m = if d.is_negative() { -quot } else { quot };
        word.extend(witness_power(chev, ring, &emb, q, &xi, &m)?.word);
        word.push_root(alpha, ring.scale_int(&xi, &(q * r)));
    }
    let rem = ring.element(&rs, 0)?;
    word.push_root(alpha, rem);
    check(chev, ring, &word, &chev.x(ring, alpha, a)?, || format!("root element witness for x_{alpha}"))?;
    Ok(word)
}

/// For `a = u^-k b` in `O[1/u]`, returns `(h_alpha(u^-k), x_alpha(u^k b))`; the
/// conjugate of the second by the first is `x_alpha(a)`.
pub fn clear_denominators_conjugation(chev: &Chevalley, ring: &Ring, alpha: &Root, a: &Elem) -> Result<(Word, Word), WitnessError> {
    let (k, b) = ring.clear_denominator(a)?;
    if ring.is_zero(a) {
        return Ok((Word::new(), Word::new()));
    }
    let u = ring.from_base(&ring.localization().expect("checked by clear_denominator").u());
    let uk = ring.pow(&u, k as i64)?;
    let core = Word::root(alpha, ring.mul(&uk, &ring.from_base(&b)));
    let conjugator = if k == 0 {
        Word::new()
    } else {
        Word(vec![Letter::Torus {
            root: alpha.clone(),
            t: ring.pow(&u, -(k as i64))?,
        }])
    };
    let whole = Word(vec![Letter::Conjugate {
        prefix: conjugator.clone(),
        inner: core.clone(),
    }]);
    check(chev, ring, &whole, &chev.x(ring, alpha, a)?, || format!("denominator clearing for x_{alpha}"))?;
    Ok((conjugator, core))
}
