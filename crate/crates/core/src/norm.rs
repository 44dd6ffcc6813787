//! Conjugation-invariant word norms on finite quotients `E(Phi, Z/m)`.
//!
//! Elements are adjoint matrices with entries in `[0, m)`, stored row-major in
//! an insertion-ordered set so that indices are deterministic.

use indexmap::IndexSet;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::chevalley::{Chevalley, ChevalleyError, Letter, Word};
use crate::ring::Ring;

pub const DEFAULT_MEM_CAP: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormError {
    #[error(transparent)]
    Chevalley(#[from] ChevalleyError),
    #[error("more than {cap} elements; raise the memory cap")]
    MemoryBudgetExceeded { cap: usize },
    #[error("generating set reaches {reached} of {total} elements")]
    NotGenerating { reached: usize, total: usize },
    #[error("modulus {0} out of range 2..=65535")]
    BadModulus(u64),
    #[error("generators must be root letters")]
    BadGenerator,
    #[error("seed is not an element of the quotient")]
    NotInQuotient,
}

type Key = Box<[u16]>;

/// `X - I` for a generator `X`, as `(row, col, value)`.
#[derive(Debug, Clone)]
struct SparseGen {
    delta: Vec<(usize, usize, u64)>,
}

#[derive(Debug, Clone)]
pub struct FiniteQuotient {
    modulus: u32,
    dim: usize,
    elements: IndexSet<Key>,
    gens: Vec<SparseGen>,
    gen_inverses: Vec<SparseGen>,
}

impl FiniteQuotient {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn matrix(&self, i: usize) -> &[u16] {
        &self.elements[i]
    }

    pub fn index_of(&self, m: &[u16]) -> Option<usize> {
        self.elements.get_index_of(m)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let p = self.mul_raw(&self.elements[a], &self.elements[b]);
        self.elements.get_index_of(&p[..]).expect("quotient is closed")
    }

    fn mul_raw(&self, a: &[u16], b: &[u16]) -> Key {
        let d = self.dim;
        let m = self.modulus as u64;
        let mut out = vec![0u16; d * d];
        for i in 0..d {
            let mut row = vec![0u64; d];
            for k in 0..d {
                let x = a[i * d + k] as u64;
                if x == 0 {
                    continue;
                }
                for j in 0..d {
                    row[j] += x * b[k * d + j] as u64;
                }
            }
            for j in 0..d {
                out[i * d + j] = (row[j] % m) as u16;
            }
        }
        out.into_boxed_slice()
    }

    fn right_gen(&self, a: &[u16], g: &SparseGen) -> Key {
        let d = self.dim;
        let m = self.modulus as u64;
        let mut out: Vec<u16> = a.to_vec();
        for &(k, j, v) in &g.delta {
            for i in 0..d {
                let x = a[i * d + k] as u64;
                if x != 0 {
                    let slot = &mut out[i * d + j];
                    *slot = ((*slot as u64 + x * v) % m) as u16;
                }
            }
        }
        out.into_boxed_slice()
    }

    fn left_gen(&self, a: &[u16], g: &SparseGen) -> Key {
        let d = self.dim;
        let m = self.modulus as u64;
        let mut out: Vec<u16> = a.to_vec();
        for &(i, k, v) in &g.delta {
            for j in 0..d {
                let x = a[k * d + j] as u64;
                if x != 0 {
                    let slot = &mut out[i * d + j];
                    *slot = ((*slot as u64 + v * x) % m) as u16;
                }
            }
        }
        out.into_boxed_slice()
    }

    /// `x a x^-1` for the `k`-th generator `x`.
    fn conj_gen(&self, a: &[u16], k: usize) -> Key {
        let t = self.left_gen(a, &self.gens[k]);
        self.right_gen(&t, &self.gen_inverses[k])
    }

    pub fn inverse(&self, a: usize) -> usize {
        // a^-1 = a^(ord - 1)
        let mut prev = self.identity();
        let mut cur = a;
        while cur != self.identity() {
            prev = cur;
            cur = self.mul(cur, a);
        }
        prev
    }

    /// Conjugacy class id of every element, numbered by first occurrence.
    pub fn conjugacy_classes(&self) -> Classes {
        let n = self.order();
        let mut parent: Vec<u32> = (0..n as u32).collect();
        fn find(parent: &mut [u32], mut x: u32) -> u32 {
            while parent[x as usize] != x {
                parent[x as usize] = parent[parent[x as usize] as usize];
                x = parent[x as usize];
            }
            x
        }
        for i in 0..n {
            for k in 0..self.gens.len() {
                let c = self.conj_gen(&self.elements[i], k);
                let j = self.elements.get_index_of(&c[..]).expect("quotient is closed") as u32;
                let (a, b) = (find(&mut parent, i as u32), find(&mut parent, j));
                if a != b {
                    parent[a.max(b) as usize] = a.min(b);
                }
            }
        }
        let mut id = vec![u32::MAX; n];
        let mut reps = Vec::new();
        let mut root_id = vec![u32::MAX; n];
        for i in 0..n {
            let r = find(&mut parent, i as u32) as usize;
            if root_id[r] == u32::MAX {
                root_id[r] = reps.len() as u32;
                reps.push(i);
            }
            id[i] = root_id[r];
        }
        Classes { id, reps }
    }
}

#[derive(Debug, Clone)]
pub struct Classes {
    /// Class of each element.
    pub id: Vec<u32>,
    /// Least element index in each class.
    pub reps: Vec<usize>,
}

impl Classes {
    pub fn count(&self) -> usize {
        self.reps.len()
    }
}

fn to_key(g: &crate::chevalley::GroupElement) -> Key {
    g.entries()
        .iter()
        .map(|e| e.coords[0].to_u16().expect("entries reduced below the modulus"))
        .collect()
}

fn sparse_delta(g: &crate::chevalley::GroupElement) -> SparseGen {
    let d = g.dim();
    let key = to_key(g);
    let m = g.ring().modulus().and_then(|m| m.to_u64()).expect("modular ring");
    let mut delta = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let v = (key[i * d + j] as u64 + if i == j { m - 1 } else { 0 }) % m;
            if v != 0 {
                delta.push((i, j, v));
            }
        }
    }
    SparseGen { delta }
}

/// All elements reachable from the identity by right multiplication with the
/// root letters of `generators`, reduced mod `m`.
pub fn enumerate_quotient(chev: &Chevalley, m: u64, generators: &Word, mem_cap: usize) -> Result<FiniteQuotient, NormError> {
    if !(2..=u16::MAX as u64).contains(&m) {
        return Err(NormError::BadModulus(m));
    }
    let ring = Ring::modular(m).expect("modulus checked");
    let mut gens = Vec::new();
    let mut gen_inverses = Vec::new();
    for l in &generators.0 {
        let Letter::Root { root, t } = l else {
            return Err(NormError::BadGenerator);
        };
        let t = ring.reduce(t.clone());
        gens.push(sparse_delta(&chev.x(&ring, root, &t)?));
        gen_inverses.push(sparse_delta(&chev.x(&ring, root, &ring.neg(&t))?));
    }
    let mut q = FiniteQuotient {
        modulus: m as u32,
        dim: chev.dim(),
        elements: IndexSet::new(),
        gens,
        gen_inverses,
    };
    q.elements.insert(to_key(&chev.identity(&ring)));
    let mut next = 0;
    while next < q.elements.len() {
        for k in 0..q.gens.len() {
            let p = q.right_gen(&q.elements[next], &q.gens[k]);
            if !q.elements.contains(&p) {
                if q.elements.len() >= mem_cap {
                    return Err(NormError::MemoryBudgetExceeded { cap: mem_cap });
                }
                q.elements.insert(p);
            }
        }
        next += 1;
    }
    Ok(q)
}

/// `{ g s^{+-1} g^-1 : g in Q, s in seeds }`, as sorted element indices.
pub fn conj_closure(q: &FiniteQuotient, seeds: &[usize]) -> Vec<usize> {
    let mut seen: IndexSet<usize> = IndexSet::new();
    for &s in seeds {
        seen.insert(s);
        seen.insert(q.inverse(s));
    }
    let mut next = 0;
    while next < seen.len() {
        let e = seen[next];
        for k in 0..q.gens.len() {
            let c = q.conj_gen(q.matrix(e), k);
            seen.insert(q.index_of(&c).expect("quotient is closed"));
        }
        next += 1;
    }
    let mut out: Vec<usize> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

/// Word norm with respect to a conjugation-closed generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormTable {
    norms: Vec<u32>,
}

impl NormTable {
    pub fn norm(&self, g: usize) -> u32 {
        self.norms[g]
    }

    pub fn values(&self) -> &[u32] {
        &self.norms
    }

    /// Largest norm value.
    pub fn diameter(&self) -> u32 {
        self.norms.iter().copied().max().unwrap_or(0)
    }

    /// Number of elements of each norm value `0..=diameter`.
    pub fn sphere_sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.diameter() as usize + 1];
        for &v in &self.norms {
            out[v as usize] += 1;
        }
        out
    }
}

pub fn diameter(t: &NormTable) -> u32 {
    t.diameter()
}

/// Breadth-first distances from the identity in the Cayley graph on `s`.
/// `s` must be closed under conjugation and inverses; then every ball is a
/// union of conjugacy classes, and the search runs over class representatives.
pub fn word_norm_bfs(q: &FiniteQuotient, s: &[usize]) -> Result<NormTable, NormError> {
    let classes = q.conjugacy_classes();
    let mut class_norm = vec![u32::MAX; classes.count()];
    class_norm[classes.id[q.identity()] as usize] = 0;
    let mut level = 0;
    loop {
        // ball_{k+1} = ball_k * S (S = S^-1), tested on representatives
        let fresh: Vec<usize> = (0..classes.count())
            .filter(|&c| class_norm[c] == u32::MAX)
            .filter(|&c| {
                let r = classes.reps[c];
                s.iter().any(|&x| class_norm[classes.id[q.mul(r, x)] as usize] <= level)
            })
            .collect();
        if fresh.is_empty() {
            break;
        }
        level += 1;
        for c in fresh {
            class_norm[c] = level;
        }
    }
    let norms: Vec<u32> = classes.id.iter().map(|&c| class_norm[c as usize]).collect();
    let reached = norms.iter().filter(|&&v| v != u32::MAX).count();
    if reached < norms.len() {
        return Err(NormError::NotGenerating {
            reached,
            total: norms.len(),
        });
    }
    Ok(NormTable { norms })
}

/// Element-wise breadth-first search, without using conjugation invariance.
pub fn word_norm_bfs_plain(q: &FiniteQuotient, s: &[usize]) -> Result<NormTable, NormError> {
    let n = q.order();
    let mut norms = vec![u32::MAX; n];
    norms[q.identity()] = 0;
    let mut frontier = vec![q.identity()];
    let mut level = 0;
    while !frontier.is_empty() {
        level += 1;
        let mut next = Vec::new();
        for &g in &frontier {
            for &x in s {
                let h = q.mul(g, x);
                if norms[h] == u32::MAX {
                    norms[h] = level;
                    next.push(h);
                }
            }
        }
        frontier = next;
    }
    let reached = norms.iter().filter(|&&v| v != u32::MAX).count();
    if reached < n {
        return Err(NormError::NotGenerating { reached, total: n });
    }
    Ok(NormTable { norms })
}

/// Outcome of checking the norm axioms on every element or pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxiomReport {
    pub zero_iff_identity: bool,
    pub symmetric: bool,
    pub triangle: bool,
    pub conjugation_invariant: bool,
}

impl AxiomReport {
    pub fn all(&self) -> bool {
        self.zero_iff_identity && self.symmetric && self.triangle && self.conjugation_invariant
    }
}

/// Checks the four norm axioms over all elements and all pairs. Quadratic in
/// the group order.
pub fn check_axioms(q: &FiniteQuotient, t: &NormTable) -> AxiomReport {
    let n = q.order();
    let inv: Vec<usize> = (0..n).map(|g| q.inverse(g)).collect();
    let zero_iff_identity = (0..n).all(|g| (t.norm(g) == 0) == (g == q.identity()));
    let symmetric = (0..n).all(|g| t.norm(inv[g]) == t.norm(g));
    let mut triangle = true;
    let mut conjugation_invariant = true;
    for g in 0..n {
        for h in 0..n {
            let gh = q.mul(g, h);
            triangle &= t.norm(gh) <= t.norm(g) + t.norm(h);
            let c = q.mul(inv[h], gh);
            conjugation_invariant &= t.norm(c) == t.norm(g);
        }
    }
    AxiomReport {
        zero_iff_identity,
        symmetric,
        triangle,
        conjugation_invariant,
    }
}

/// Index of the element a root word evaluates to.
pub fn element_of(chev: &Chevalley, q: &FiniteQuotient, w: &Word) -> Result<usize, NormError> {
    let ring = Ring::modular(q.modulus()).expect("modulus >= 2");
    let g = chev.evaluate(&ring, w)?;
    q.index_of(&to_key(&g)).ok_or(NormError::NotInQuotient)
}

/// `x_r(1)` for every root: generates `E(Phi, Z/m)`.
pub fn root_generators(chev: &Chevalley) -> Word {
    let ring = Ring::integers();
    let mut w = Word::new();
    for r in chev.system().roots() {
        w.push_root(r, ring.one());
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{Root, RootSystem};
    use proptest::prelude::*;

    fn group(sel: &str) -> Chevalley {
        Chevalley::new(&RootSystem::from_selector(sel).unwrap()).unwrap()
    }

    fn quotient(sel: &str, m: u64) -> (Chevalley, FiniteQuotient) {
        let chev = group(sel);
        let q = enumerate_quotient(&chev, m, &root_generators(&chev), DEFAULT_MEM_CAP).unwrap();
        (chev, q)
    }

    fn transvection_norm(chev: &Chevalley, q: &FiniteQuotient) -> (Vec<usize>, NormTable) {
        let z = Ring::integers();
        let seed = element_of(chev, q, &Word::root(&chev.system().roots()[0], z.one())).unwrap();
        let s = conj_closure(q, &[seed]);
        let t = word_norm_bfs(q, &s).unwrap();
        (s, t)
    }

    /// Distances by repeated set multiplication on raw matrices.
    fn naive_norms(q: &FiniteQuotient, s: &[usize]) -> Vec<u32> {
        let mut ball: std::collections::BTreeSet<Vec<u16>> = [q.matrix(0).to_vec()].into();
        let mut dist: std::collections::BTreeMap<Vec<u16>, u32> = [(q.matrix(0).to_vec(), 0)].into();
        for k in 1.. {
            let mut grown = ball.clone();
            for b in &ball {
                for &x in s {
                    grown.insert(q.mul_raw(b, q.matrix(x)).to_vec());
                }
            }
            for g in &grown {
                dist.entry(g.clone()).or_insert(k);
            }
            if grown.len() == ball.len() {
                break;
            }
            ball = grown;
        }
        (0..q.order()).map(|i| dist[q.matrix(i)]).collect()
    }

    #[test]
    fn small_orders() {
        let chev = group("A1");
        let z = Ring::integers();
        let mut gens = Word::new();
        gens.push_root(&Root(vec![1]), z.one());
        gens.push_root(&Root(vec![-1]), z.one());
        let q = enumerate_quotient(&chev, 2, &gens, DEFAULT_MEM_CAP).unwrap();
        assert_eq!(q.order(), 6);
        assert_eq!(quotient("A2", 2).1.order(), 168);
    }

    #[test]
    fn memory_cap() {
        let chev = group("A2");
        let err = enumerate_quotient(&chev, 3, &root_generators(&chev), 1000).unwrap_err();
        assert_eq!(err, NormError::MemoryBudgetExceeded { cap: 1000 });
        assert!(matches!(enumerate_quotient(&chev, 1, &root_generators(&chev), 10), Err(NormError::BadModulus(1))));
    }

    #[test]
    fn closure_examples() {
        let (chev, q) = quotient("A2", 2);
        assert_eq!(conj_closure(&q, &[q.identity()]), vec![q.identity()]);
        let (s, _) = transvection_norm(&chev, &q);
        // transvections of F_2^3: I + v w^T with w.v = 0, v, w non-zero
        let mut count = 0;
        for v in 1..8u32 {
            for w in 1..8u32 {
                if (v & w).count_ones() % 2 == 0 {
                    count += 1;
                }
            }
        }
        assert_eq!(s.len(), count);
        assert_eq!(s.len(), 21);
    }

    #[test]
    fn central_seed() {
        // every singleton class is central
        let (_, q) = quotient("A1", 3);
        let classes = q.conjugacy_classes();
        for (c, &rep) in classes.reps.iter().enumerate() {
            let size = classes.id.iter().filter(|&&x| x as usize == c).count();
            if size == 1 {
                let closure = conj_closure(&q, &[rep]);
                let expected = {
                    let mut v = vec![rep, q.inverse(rep)];
                    v.sort_unstable();
                    v.dedup();
                    v
                };
                assert_eq!(closure, expected);
            }
        }
    }

    #[test]
    fn norms_on_sl2_mod_2() {
        let chev = group("A1");
        let q = enumerate_quotient(&chev, 2, &root_generators(&chev), DEFAULT_MEM_CAP).unwrap();
        let (s, t) = transvection_norm(&chev, &q);
        assert_eq!(t.norm(q.identity()), 0);
        assert!(s.iter().all(|&x| t.norm(x) == 1));
        assert_eq!(t.values(), &naive_norms(&q, &s)[..]);
        assert_eq!(t, word_norm_bfs_plain(&q, &s).unwrap());
        assert!(check_axioms(&q, &t).all());
    }

    #[test]
    fn sl3_mod_2_norm() {
        let (chev, q) = quotient("A2", 2);
        let (s, t) = transvection_norm(&chev, &q);
        assert_eq!(t.values(), &naive_norms(&q, &s)[..]);
        assert_eq!(t, word_norm_bfs_plain(&q, &s).unwrap());
        assert!(check_axioms(&q, &t).all());
        assert_eq!(t.diameter(), 3);
        assert_eq!(t.sphere_sizes(), vec![1, 21, 98, 48]);
    }

    #[test]
    fn trivial_and_cyclic_diameters() {
        let (_, q) = quotient("A1", 2);
        let t = word_norm_bfs(&q, &[]).unwrap_err();
        assert_eq!(t, NormError::NotGenerating { reached: 1, total: 6 });
        let all: Vec<usize> = (1..q.order()).collect();
        assert_eq!(diameter(&word_norm_bfs(&q, &all).unwrap()), 1);
    }

    #[test]
    fn enlarging_generators_shrinks_norm() {
        let (chev, q) = quotient("A2", 2);
        let (s, small) = transvection_norm(&chev, &q);
        let classes = q.conjugacy_classes();
        for extra in classes.reps.iter().skip(1) {
            let mut bigger = s.clone();
            bigger.extend(conj_closure(&q, &[*extra]));
            bigger.sort_unstable();
            bigger.dedup();
            let t = word_norm_bfs(&q, &bigger).unwrap();
            assert!((0..q.order()).all(|g| t.norm(g) <= small.norm(g)));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn class_bfs_matches_plain(seed_idx in 1usize..168) {
            let (_, q) = quotient("A2", 2);
            let s = conj_closure(&q, &[seed_idx]);
            let fast = word_norm_bfs(&q, &s);
            let plain = word_norm_bfs_plain(&q, &s);
            prop_assert_eq!(fast, plain);
        }
    }
}
