//! Root-letter factorization of elements of `E(A_{n-1}, R)` for `R = Z` or `Z/m`.
//!
//! The adjoint matrix is lifted to `SL_n(R)` through the rank-one images
//! `g E_kl g^-1 = (g e_k)(e_l^T g^-1)` of the matrix units, then reduced to the
//! identity by Euclidean row and column operations.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::chevalley::{Chevalley, GroupElement, Word};
use crate::ring::intmat::IntMatrix;
use crate::ring::{Ring, RingSpec};
use crate::roots::Root;

use super::WitnessError;

type Mat = Vec<Vec<BigInt>>;

/// The natural representation of a type-A Chevalley basis: `X_r -> eps_r E_kl`.
struct Natural {
    n: usize,
    // root index -> (k, l, eps)
    units: Vec<(usize, usize, i64)>,
    by_pair: HashMap<(usize, usize), usize>,
}

impl Natural {
    fn new(chev: &Chevalley) -> Result<Self, WitnessError> {
        let sys = chev.system();
        let label = sys.label();
        if !label.starts_with('A') || label.contains('x') {
            return Err(WitnessError::Unsupported(format!("factorization needs type A, got {label}")));
        }
        let l = sys.rank();
        let n = l + 1;
        let roots = sys.roots();
        let mut pair_of = Vec::with_capacity(roots.len());
        let mut by_pair = HashMap::new();
        for (idx, r) in roots.iter().enumerate() {
            // e_k - e_m has coordinates 1 on simple roots k..m-1
            let support: Vec<usize> = (0..l).filter(|&i| r.0[i] != 0).collect();
            let (k, m) = (support[0], support[support.len() - 1] + 1);
            let pair = if r.is_positive() { (k, m) } else { (m, k) };
            pair_of.push(pair);
            by_pair.insert(pair, idx);
        }
        let mut eps = vec![0i64; roots.len()];
        let npos = roots.len() / 2;
        // positive roots come by increasing height
        for idx in 0..npos {
            let (k, m) = pair_of[idx];
            eps[idx] = if m == k + 1 {
                1
            } else {
                let a = by_pair[&(k, k + 1)];
                let b = by_pair[&(k + 1, m)];
                eps[a] * eps[b] * chev.constants().n(a, b)
            };
        }
        for idx in npos..roots.len() {
            let (k, m) = pair_of[idx];
            eps[idx] = eps[by_pair[&(m, k)]];
        }
        let units = pair_of.iter().zip(&eps).map(|(&(k, m), &e)| (k, m, e)).collect();
        let nat = Natural { n, units, by_pair };
        nat.check(chev)?;
        Ok(nat)
    }

    /// Bracket relations of the image, checked on matrix units.
    fn check(&self, chev: &Chevalley) -> Result<(), WitnessError> {
        let roots = chev.system().roots();
        for (a, &(ka, la, ea)) in self.units.iter().enumerate() {
            for (b, &(kb, lb, eb)) in self.units.iter().enumerate() {
                // [eps_a E_{ka la}, eps_b E_{kb lb}]
                let mut br: HashMap<(usize, usize), i64> = HashMap::new();
                if la == kb {
                    *br.entry((ka, lb)).or_default() += ea * eb;
                }
                if lb == ka {
                    *br.entry((kb, la)).or_default() -= ea * eb;
                }
                br.retain(|_, v| *v != 0);
                let expected: HashMap<(usize, usize), i64> = if roots[a] == roots[b].neg() {
                    // coroot e_ka - e_la
                    HashMap::from([((ka, ka), 1), ((la, la), -1)])
                } else {
                    match chev.system().index_of(&roots[a].add(&roots[b])) {
                        Some(s) => {
                            let (k, l, e) = self.units[s];
                            HashMap::from([((k, l), e * chev.constants().n(a, b))])
                        }
                        None => HashMap::new(),
                    }
                };
                if br != expected {
                    return Err(WitnessError::NotVerified(format!(
                        "natural representation fails on [{}, {}]",
                        roots[a], roots[b]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Natural matrix of an adjoint coordinate vector.
    fn matrix_of(&self, chev: &Chevalley, g: &GroupElement, col: usize) -> Mat {
        let rank = chev.system().rank();
        let mut m = vec![vec![BigInt::zero(); self.n]; self.n];
        for row in 0..g.dim() {
            let v = &g.at(row, col).coords[0];
            if v.is_zero() {
                continue;
            }
            if row < rank {
                m[row][row] += v;
                m[row + 1][row + 1] -= v;
            } else {
                let (k, l, e) = self.units[row - rank];
                m[k][l] += v * e;
            }
        }
        m
    }

    /// `g E_kl g^-1` read off the adjoint matrix.
    fn conjugated_unit(&self, chev: &Chevalley, g: &GroupElement, k: usize, l: usize) -> Mat {
        let idx = self.by_pair[&(k, l)];
        let (_, _, e) = self.units[idx];
        let mut m = self.matrix_of(chev, g, chev.system().rank() + idx);
        for row in m.iter_mut() {
            for v in row.iter_mut() {
                *v *= e;
            }
        }
        m
    }
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum()).collect())
        .collect()
}

fn det(a: &Mat) -> BigInt {
    let n = a.len();
    let mut m = IntMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            *m.at_mut(i, j) = a[i][j].clone();
        }
    }
    m.det()
}

fn primes_of(m: &BigInt) -> Vec<(BigInt, BigInt)> {
    let mut out = Vec::new();
    let mut rest = m.clone();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        if rest.is_multiple_of(&p) {
            let mut pe = BigInt::one();
            while rest.is_multiple_of(&p) {
                rest /= &p;
                pe *= &p;
            }
            out.push((p.clone(), pe));
        }
        p += 1;
    }
    if rest > BigInt::one() {
        out.push((rest.clone(), rest));
    }
    out
}

/// Lifts `g` (adjoint) to `G` in `SL_n(R)` with `Ad(G) = g`.
fn lift(chev: &Chevalley, nat: &Natural, g: &GroupElement, modulus: Option<&BigInt>) -> Result<Mat, WitnessError> {
    let n = nat.n;
    let red = |x: BigInt| match modulus {
        Some(m) => x.mod_floor(m),
        None => x,
    };
    // cols[k] = u_k v_0^T
    let mut cols: Vec<Mat> = Vec::with_capacity(n);
    cols.push(mat_mul(&nat.conjugated_unit(chev, g, 0, 1), &nat.conjugated_unit(chev, g, 1, 0)));
    for k in 1..n {
        cols.push(nat.conjugated_unit(chev, g, k, 0));
    }
    let build = |w: &[BigInt]| -> Mat {
        let mut q = vec![vec![BigInt::zero(); n]; n];
        for (k, c) in cols.iter().enumerate() {
            for i in 0..n {
                let v: BigInt = (0..n).map(|j| &c[i][j] * &w[j]).sum();
                q[i][k] = red(v);
            }
        }
        q
    };
    let not_elem = |why: &str| WitnessError::NotElementary(why.to_string());

    match modulus {
        None => {
            // v_0 up to sign is the primitive part of any non-zero row
            let row = cols
                .iter()
                .flat_map(|c| c.iter())
                .find(|r| r.iter().any(|v| !v.is_zero()))
                .ok_or_else(|| not_elem("degenerate adjoint image"))?;
            let content = row.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
            let v: Vec<BigInt> = row.iter().map(|x| x / &content).collect();
            // w with v . w = 1 by successive extended gcds
            let mut w = vec![BigInt::zero(); n];
            let mut acc = BigInt::zero();
            for j in 0..n {
                if v[j].is_zero() {
                    continue;
                }
                if acc.is_zero() {
                    acc = v[j].clone();
                    w[j] = BigInt::one();
                    continue;
                }
                let e = acc.extended_gcd(&v[j]);
                for x in w.iter_mut() {
                    *x *= &e.x;
                }
                w[j] = e.y;
                acc = e.gcd;
            }
            if !acc.is_one() {
                if acc == -BigInt::one() {
                    w.iter_mut().for_each(|x| *x = -x.clone());
                } else {
                    return Err(not_elem("row of the lift is not primitive"));
                }
            }
            let mut q = build(&w);
            let d = det(&q);
            if d == -BigInt::one() && n % 2 == 1 {
                q.iter_mut().flatten().for_each(|x| *x = -x.clone());
            } else if !d.is_one() {
                return Err(not_elem("lift has determinant other than 1"));
            }
            Ok(q)
        }
        Some(m) => {
            let mut w = vec![BigInt::zero(); n];
            for (p, pe) in primes_of(m) {
                let j = (0..n)
                    .find(|&j| {
                        let mut e = vec![BigInt::zero(); n];
                        e[j] = BigInt::one();
                        !det(&build(&e)).is_multiple_of(&p)
                    })
                    .ok_or_else(|| not_elem("lift is singular modulo a prime"))?;
                // CRT idempotent: 1 mod pe, 0 mod m / pe
                let other = m / &pe;
                let inv = other.extended_gcd(&pe).x.mod_floor(&pe);
                w[j] += other * inv;
            }
            let q = build(&w);
            let d = det(&q).mod_floor(m);
            let root = num_iter(m)
                .find(|x| x.gcd(m).is_one() && x.modpow(&BigInt::from(n), m) == d)
                .ok_or_else(|| not_elem("determinant has no n-th root"))?;
            let inv = root.extended_gcd(m).x.mod_floor(m);
            Ok(q.into_iter().map(|r| r.into_iter().map(|x| (x * &inv).mod_floor(m)).collect()).collect())
        }
    }
}

fn num_iter(m: &BigInt) -> impl Iterator<Item = BigInt> + '_ {
    let mut i = BigInt::zero();
    std::iter::from_fn(move || {
        i += 1;
        (&i < m).then(|| i.clone())
    })
}

/// Row and column reduction of `G` to the identity. Returns the elementary
/// matrices `(k, l, t)`, `I + t E_kl`, whose product is `G`.
fn eliminate(mut g: Mat, modulus: Option<&BigInt>) -> Result<Vec<(usize, usize, BigInt)>, WitnessError> {
    let n = g.len();
    let red = |x: BigInt| match modulus {
        Some(m) => x.mod_floor(m),
        None => x,
    };
    let mut left: Vec<(usize, usize, BigInt)> = Vec::new();
    let mut right: Vec<(usize, usize, BigInt)> = Vec::new();
    // row_k += t row_l
    let row_op = |g: &mut Mat, left: &mut Vec<(usize, usize, BigInt)>, k: usize, l: usize, t: BigInt| {
        if t.is_zero() {
            return;
        }
        for j in 0..n {
            let v = &g[l][j] * &t;
            g[k][j] = red(&g[k][j] + v);
        }
        left.push((k, l, t));
    };
    for c in 0..n {
        loop {
            let nonzero: Vec<usize> = (c..n).filter(|&i| !g[i][c].is_zero()).collect();
            match nonzero.len() {
                0 => return Err(WitnessError::NotElementary("singular matrix".into())),
                1 => {
                    let i = nonzero[0];
                    if i != c {
                        row_op(&mut g, &mut left, c, i, BigInt::one());
                        row_op(&mut g, &mut left, i, c, -BigInt::one());
                    }
                    break;
                }
                _ => {
                    let piv = *nonzero.iter().min_by_key(|&&i| g[i][c].abs()).unwrap();
                    for &i in &nonzero {
                        if i != piv {
                            // truncating quotient keeps |remainder| < |pivot|
                            let q = &g[i][c] / &g[piv][c];
                            row_op(&mut g, &mut left, i, piv, -q);
                        }
                    }
                }
            }
        }
        let d = g[c][c].clone();
        if !d.is_one() {
            let inv = match modulus {
                Some(m) if d.gcd(m).is_one() => d.extended_gcd(m).x.mod_floor(m),
                None if d == -BigInt::one() => d.clone(),
                _ => return Err(WitnessError::NotElementary(format!("pivot {d} is not a unit"))),
            };
            if c + 1 == n {
                return Err(WitnessError::NotElementary("determinant is not 1".into()));
            }
            // (d, 0) -> (d, 1) -> (1, 1) -> (1, 0)
            let j = c + 1;
            row_op(&mut g, &mut left, j, c, inv);
            row_op(&mut g, &mut left, c, j, red(BigInt::one() - &d));
            row_op(&mut g, &mut left, j, c, -BigInt::one());
        }
        for j in (c + 1)..n {
            let t = red(-g[c][j].clone());
            if t.is_zero() {
                continue;
            }
            // col_j += t col_c, i.e. G <- G (I + t E_cj)
            for i in 0..n {
                let v = &g[i][c] * &t;
                g[i][j] = red(&g[i][j] + v);
            }
            right.push((c, j, t));
        }
    }
    // L_a..L_1 G R_1..R_b = I
    let mut out: Vec<(usize, usize, BigInt)> = left.into_iter().map(|(k, l, t)| (k, l, -t)).collect();
    out.extend(right.into_iter().rev().map(|(k, l, t)| (k, l, -t)));
    Ok(out)
}

/// Factors an adjoint-representation element of `E(A_{n-1}, R)`, `R = Z` or
/// `Z/m`, into root letters. The length is not bounded uniformly.
pub fn factor_elementary(chev: &Chevalley, ring: &Ring, g: &GroupElement) -> Result<Word, WitnessError> {
    let modulus = match ring.spec() {
        RingSpec::Integers => None,
        RingSpec::Modular(m) => Some(m.clone()),
        _ => return Err(WitnessError::Unsupported(format!("factorization over {}", ring.describe()))),
    };
    let nat = Natural::new(chev)?;
    if g.is_identity() {
        return Ok(Word::new());
    }
    let big = lift(chev, &nat, g, modulus.as_ref())?;
    let ops = eliminate(big, modulus.as_ref())?;
    let roots = chev.system().roots();
    let mut word = Word::new();
    for (k, l, t) in ops {
        let idx = nat.by_pair[&(k, l)];
        let (_, _, e) = nat.units[idx];
        let root: &Root = &roots[idx];
        word.push_root(root, ring.from_int(t * e));
    }
    if chev.evaluate(ring, &word)? != *g {
        return Err(WitnessError::NotElementary("factorization does not reproduce the element".into()));
    }
    Ok(word)
}
