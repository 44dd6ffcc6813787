//! Chevalley basis of the Lie algebra attached to a root system.
//!
//! Basis order: the simple coroots `H_1..H_l`, then `X_r` for every root `r` in
//! the canonical root order. Signs are fixed by declaring `N(a, b) = +(p+1)` on
//! extraspecial pairs and propagating with the standard identities.

use std::collections::HashMap;

use crate::roots::{Root, RootSystem};

use super::ChevalleyError;

/// A sparse integer matrix as `(row, col, value)` triples.
pub type SparseInt = Vec<(usize, usize, i64)>;

#[derive(Debug, Clone)]
pub struct StructureConstants {
    rank: usize,
    // (a, b) root indices with a + b a root
    table: HashMap<(usize, usize), i64>,
    // coroot of each root in the basis of simple coroots
    coroots: Vec<Vec<i64>>,
}

impl StructureConstants {
    pub fn new(sys: &RootSystem) -> Result<Self, ChevalleyError> {
        let rank = sys.rank();
        let roots = sys.roots();
        let npos = roots.len() / 2;
        let coroots = roots
            .iter()
            .map(|r| {
                let len = sys.norm2(r);
                (0..rank)
                    .map(|i| {
                        let simple = Root::simple(rank, i);
                        r.0[i] as i64 * sys.norm2(&simple) / len
                    })
                    .collect()
            })
            .collect();
        let mut sc = StructureConstants {
            rank,
            table: HashMap::new(),
            coroots,
        };

        // Positive roots are stored by increasing height, so every positive pair
        // that sums to `xi` was recorded before `xi` is processed.
        for xi in 0..npos {
            let mut special: Vec<(usize, usize)> = Vec::new();
            for a in 0..xi {
                let b_root = roots[xi].sub(&roots[a]);
                if let Some(b) = sys.index_of(&b_root) {
                    if b < npos && a < b {
                        special.push((a, b));
                    }
                }
            }
            let Some(&(a, b)) = special.first() else {
                continue;
            };
            let p = sys.string_down(&roots[a], &roots[b]) as i64;
            sc.set(a, b, p + 1);
            let xi_len = sys.norm2(&roots[xi]);
            let n_ab = p + 1;
            for &(c, d) in &special[1..] {
                // four-root identity with alpha, beta, -gamma, -delta
                let (alpha, beta) = (&roots[a], &roots[b]);
                let (mgamma, mdelta) = (roots[c].neg(), roots[d].neg());
                let mut acc = 0i64;
                let mut denom_terms: Vec<(i64, i64)> = Vec::new();
                let bg = beta.add(&mgamma);
                if sys.is_root(&bg) {
                    let num = sc.get(sys, beta, &mgamma) * sc.get(sys, alpha, &mdelta);
                    denom_terms.push((num, sys.norm2(&bg)));
                }
                let ag = alpha.add(&mgamma);
                if sys.is_root(&ag) {
                    let num = sc.get(sys, &mgamma, alpha) * sc.get(sys, beta, &mdelta);
                    denom_terms.push((num, sys.norm2(&ag)));
                }
                // N(-c,-d) = -(xi,xi) / N(a,b) * sum(num / len); keep it integral
                let lcm = denom_terms.iter().fold(1i64, |l, &(_, den)| lcm(l, den));
                for (num, den) in denom_terms {
                    acc += num * (lcm / den);
                }
                let top = -xi_len * acc;
                let bottom = n_ab * lcm;
                if top % bottom != 0 {
                    return Err(ChevalleyError::Internal(format!(
                        "non-integral structure constant for ({}, {})",
                        roots[c], roots[d]
                    )));
                }
                let n_neg = top / bottom;
                sc.set(c, d, -n_neg);
            }
        }

        // Fill in every pair from the positive ones.
        let all = roots.len();
        for a in 0..all {
            for b in 0..all {
                let s = roots[a].add(&roots[b]);
                if s.is_zero() || !sys.is_root(&s) {
                    continue;
                }
                let v = sc.get(sys, &roots[a], &roots[b]);
                sc.table.insert((a, b), v);
            }
        }
        sc.check(sys)?;
        Ok(sc)
    }

    fn set(&mut self, a: usize, b: usize, v: i64) {
        self.table.insert((a, b), v);
        self.table.insert((b, a), -v);
    }

    /// `N(a, b)`, derived on demand from positive pairs.
    fn get(&self, sys: &RootSystem, a: &Root, b: &Root) -> i64 {
        let s = a.add(b);
        if s.is_zero() || !sys.is_root(&s) {
            return 0;
        }
        let (ia, ib) = (sys.index_of(a).unwrap(), sys.index_of(b).unwrap());
        if let Some(&v) = self.table.get(&(ia, ib)) {
            return v;
        }
        match (a.is_positive(), b.is_positive()) {
            (true, true) => unreachable!("positive pair {a}, {b} not yet assigned"),
            (false, false) => -self.get(sys, &a.neg(), &b.neg()),
            (false, true) => -self.get(sys, b, a),
            (true, false) => {
                // a + b + c = 0: N(a,b)/(c,c) = N(b,c)/(a,a) = N(c,a)/(b,b)
                let c = s.neg();
                let cc = sys.norm2(&c);
                if c.is_positive() {
                    cc * self.get(sys, &c, a) / sys.norm2(b)
                } else {
                    cc * self.get(sys, b, &c) / sys.norm2(a)
                }
            }
        }
    }

    fn check(&self, sys: &RootSystem) -> Result<(), ChevalleyError> {
        let roots = sys.roots();
        for (&(a, b), &v) in &self.table {
            let p = sys.string_down(&roots[a], &roots[b]) as i64;
            if v.abs() != p + 1 || self.table.get(&(b, a)) != Some(&-v) {
                return Err(ChevalleyError::Internal(format!(
                    "bad constant N({}, {}) = {v}",
                    roots[a], roots[b]
                )));
            }
        }
        Ok(())
    }

    /// `N(a, b)` for root indices, zero when `a + b` is not a root.
    pub fn n(&self, a: usize, b: usize) -> i64 {
        self.table.get(&(a, b)).copied().unwrap_or(0)
    }

    pub fn pairs(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.table.iter().map(|(&k, &v)| (k, v))
    }

    /// Coordinates of the coroot `H_r` in the basis of simple coroots.
    pub fn coroot(&self, r: usize) -> &[i64] {
        &self.coroots[r]
    }

    pub fn dim(&self) -> usize {
        self.rank + self.coroots.len()
    }

    /// Bracket of two basis vectors as a sparse coordinate list.
    pub fn bracket(&self, sys: &RootSystem, u: usize, v: usize) -> Vec<(usize, i64)> {
        let l = self.rank;
        let roots = sys.roots();
        match (u < l, v < l) {
            (true, true) => vec![],
            (true, false) => {
                let c = sys.cartan_int(&roots[v - l], &Root::simple(l, u)) as i64;
                if c == 0 {
                    vec![]
                } else {
                    vec![(v, c)]
                }
            }
            (false, true) => self
                .bracket(sys, v, u)
                .into_iter()
                .map(|(k, c)| (k, -c))
                .collect(),
            (false, false) => {
                let (a, b) = (u - l, v - l);
                if roots[a] == roots[b].neg() {
                    self.coroots[a]
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(i, &c)| (i, c))
                        .collect()
                } else {
                    match sys.index_of(&roots[a].add(&roots[b])) {
                        Some(s) => vec![(l + s, self.n(a, b))],
                        None => vec![],
                    }
                }
            }
        }
    }

    /// Matrix of `ad X_r`.
    pub fn ad_root(&self, sys: &RootSystem, r: usize) -> SparseInt {
        let u = self.rank + r;
        let mut out = Vec::new();
        for v in 0..self.dim() {
            for (row, c) in self.bracket(sys, u, v) {
                out.push((row, v, c));
            }
        }
        out
    }

    /// Divided powers `(ad X_r)^m / m!` for `m = 1, 2, ...` until nilpotency.
    pub fn divided_powers(&self, sys: &RootSystem, r: usize) -> Result<Vec<SparseInt>, ChevalleyError> {
        let d = self.dim();
        let ad = self.ad_root(sys, r);
        let mut dense = vec![0i64; d * d];
        for &(i, j, v) in &ad {
            dense[i * d + j] = v;
        }
        let mut powers = Vec::new();
        let mut current = dense.clone();
        let mut m = 1i64;
        loop {
            let sparse: SparseInt = (0..d * d)
                .filter(|&k| current[k] != 0)
                .map(|k| (k / d, k % d, current[k]))
                .collect();
            if sparse.is_empty() {
                break;
            }
            powers.push(sparse);
            // next = current * ad / (m + 1)
            m += 1;
            let mut next = vec![0i64; d * d];
            for i in 0..d {
                for k in 0..d {
                    let a = current[i * d + k];
                    if a == 0 {
                        continue;
                    }
                    for j in 0..d {
                        next[i * d + j] += a * dense[k * d + j];
                    }
                }
            }
            for v in next.iter_mut() {
                if *v % m != 0 {
                    return Err(ChevalleyError::Internal(format!(
                        "divided power of ad X_{} not integral",
                        sys.roots()[r]
                    )));
                }
                *v /= m;
            }
            current = next;
            if m > 8 {
                return Err(ChevalleyError::Internal("ad X_r is not nilpotent".into()));
            }
        }
        Ok(powers)
    }

    /// Brute-force Jacobi identity over all basis triples; returns the first
    /// violating triple if any.
    pub fn jacobi_violation(&self, sys: &RootSystem) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        let br = |u: usize, vec: &[(usize, i64)]| -> Vec<i64> {
            let mut out = vec![0i64; d];
            for &(k, c) in vec {
                for (idx, v) in self.bracket(sys, u, k) {
                    out[idx] += c * v;
                }
            }
            out
        };
        for a in 0..d {
            for b in 0..d {
                let ab = self.bracket(sys, a, b);
                for c in 0..d {
                    let bc = self.bracket(sys, b, c);
                    let ca = self.bracket(sys, c, a);
                    let t1 = br(a, &bc);
                    let t2 = br(b, &ca);
                    let t3 = br(c, &ab);
                    if (0..d).any(|k| t1[k] + t2[k] + t3[k] != 0) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    use num_integer::Integer;
    a.lcm(&b)
}
