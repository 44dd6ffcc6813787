use std::fmt;

use num_bigint::BigInt;

use crate::ring::{Elem, Ring};

use super::structure::SparseInt;

/// A square matrix over a [`Ring`], stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupElement {
    ring: Ring,
    dim: usize,
    data: Vec<Elem>,
}

impl GroupElement {
    pub fn identity(ring: &Ring, dim: usize) -> Self {
        let mut data = vec![ring.zero(); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = ring.one();
        }
        GroupElement {
            ring: ring.clone(),
            dim,
            data,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn at(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.dim + j]
    }

    pub fn is_identity(&self) -> bool {
        let d = self.dim;
        (0..d).all(|i| {
            (0..d).all(|j| {
                let e = self.at(i, j);
                if i == j {
                    self.ring.is_one(e)
                } else {
                    self.ring.is_zero(e)
                }
            })
        })
    }

    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let d = self.dim;
        let r = &self.ring;
        let mut data = vec![r.zero(); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = &self.data[i * d + k];
                if r.is_zero(a) {
                    continue;
                }
                for j in 0..d {
                    let b = &other.data[k * d + j];
                    if r.is_zero(b) {
                        continue;
                    }
                    let slot = &mut data[i * d + j];
                    *slot = r.mul_add(slot, a, b);
                }
            }
        }
        GroupElement {
            ring: r.clone(),
            dim: d,
            data,
        }
    }

    /// `self^e` for `e >= 0` by repeated squaring.
    pub fn pow(&self, e: &BigInt) -> GroupElement {
        assert!(e.sign() != num_bigint::Sign::Minus, "negative exponent");
        let mut result = GroupElement::identity(&self.ring, self.dim);
        let mut base = self.clone();
        let bits = e.bits();
        for b in 0..bits {
            if e.bit(b) {
                result = result.mul(&base);
            }
            if b + 1 < bits {
                base = base.mul(&base);
            }
        }
        result
    }

    /// `self <- self * (I + sum_m t^m E_m)`.
    pub(crate) fn right_mul_unipotent(&mut self, powers: &[SparseInt], t: &Elem) {
        let r = self.ring.clone();
        if r.is_zero(t) {
            return;
        }
        let d = self.dim;
        let mut updates: Vec<(usize, usize, Elem)> = Vec::new();
        let mut tm = r.one();
        for e in powers {
            tm = r.mul(&tm, t);
            for &(k, j, v) in e {
                let c = r.scale_int(&tm, &BigInt::from(v));
                for i in 0..d {
                    let a = &self.data[i * d + k];
                    if !r.is_zero(a) {
                        updates.push((i, j, r.mul(a, &c)));
                    }
                }
            }
        }
        for (i, j, v) in updates {
            let slot = &mut self.data[i * d + j];
            *slot = r.add(slot, &v);
        }
    }

    /// `self <- (I + sum_m t^m E_m) * self`.
    pub(crate) fn left_mul_unipotent(&mut self, powers: &[SparseInt], t: &Elem) {
        let r = self.ring.clone();
        if r.is_zero(t) {
            return;
        }
        let d = self.dim;
        let mut updates: Vec<(usize, usize, Elem)> = Vec::new();
        let mut tm = r.one();
        for e in powers {
            tm = r.mul(&tm, t);
            for &(i, k, v) in e {
                let c = r.scale_int(&tm, &BigInt::from(v));
                for j in 0..d {
                    let b = &self.data[k * d + j];
                    if !r.is_zero(b) {
                        updates.push((i, j, r.mul(&c, b)));
                    }
                }
            }
        }
        for (i, j, v) in updates {
            let slot = &mut self.data[i * d + j];
            *slot = r.add(slot, &v);
        }
    }

    /// Entries reduced into another ring through `f`.
    pub fn map(&self, ring: &Ring, f: impl Fn(&Elem) -> Elem) -> GroupElement {
        GroupElement {
            ring: ring.clone(),
            dim: self.dim,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GroupElement({}x{} over {})", self.dim, self.dim, self.ring.describe())?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| self.ring.format(self.at(i, j))).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}
