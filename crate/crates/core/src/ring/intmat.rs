use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Small dense square integer matrix used for exact division in orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![BigInt::zero(); n * n],
        }
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.n + j]
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.at(i, j) * &v[j]).sum())
            .collect()
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn det(&self) -> BigInt {
        let n = self.n;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                match (k + 1..n).find(|&r| !a[r * n + k].is_zero()) {
                    Some(r) => {
                        for c in 0..n {
                            a.swap(k * n + c, r * n + c);
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = v / &prev;
                }
            }
            prev = a[k * n + k].clone();
        }
        sign * &a[n * n - 1]
    }

    fn minor(&self, row: usize, col: usize) -> IntMatrix {
        let n = self.n;
        let mut m = IntMatrix::zeros(n - 1);
        let mut idx = 0;
        for i in (0..n).filter(|&i| i != row) {
            for j in (0..n).filter(|&j| j != col) {
                m.data[idx] = self.at(i, j).clone();
                idx += 1;
            }
        }
        m
    }

    /// Classical adjugate: `adj(M) * M = det(M) * I`.
    pub fn adjugate(&self) -> IntMatrix {
        let n = self.n;
        let mut adj = IntMatrix::zeros(n);
        if n == 1 {
            adj.data[0] = BigInt::one();
            return adj;
        }
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(j, i).det();
                *adj.at_mut(i, j) = if (i + j) % 2 == 0 { c } else { -c };
            }
        }
        adj
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(n: usize, v: &[i64]) -> IntMatrix {
        IntMatrix {
            n,
            data: v.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    #[test]
    fn determinant_with_pivoting() {
        assert_eq!(mat(3, &[0, 1, 2, 1, 0, 3, 4, -3, 8]).det(), BigInt::from(-2));
        assert_eq!(mat(2, &[1, 2, 2, 4]).det(), BigInt::zero());
    }

    #[test]
    fn adjugate_inverts_up_to_determinant() {
        let m = mat(3, &[2, 1, 0, 1, 3, 1, 0, 1, 4]);
        let adj = m.adjugate();
        let det = m.det();
        for i in 0..3 {
            for j in 0..3 {
                let v: BigInt = (0..3).map(|k| adj.at(i, k) * m.at(k, j)).sum();
                assert_eq!(v, if i == j { det.clone() } else { BigInt::zero() });
            }
        }
    }
}
