//! Exact coefficient rings.
//!
//! Four kinds of commutative ring are supported: the integers, `Z/m`, orders
//! `O = Z xi_0 + ... + Z xi_r` given by an explicit multiplication table in a
//! fixed integral basis, and localizations `O[1/u]` at a single non-zero-divisor.
//!
//! A [`Ring`] is a cheap, shareable handle to a validated [`RingSpec`]. Raw
//! values ([`Elem`]) carry no ring pointer and are what matrices store; the
//! checked [`RingElement`] wrapper pairs a value with its ring.

mod config;
mod element;
pub(crate) mod intmat;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;
use thiserror::Error;

pub use config::RingConfig;
pub use element::RingElement;

use intmat::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(BigInt),
    #[error("invalid multiplication table: {0}")]
    BadTable(String),
    #[error("localization element is zero or a zero divisor")]
    BadLocalizer,
    #[error("localization is only supported over the integers or an order")]
    BadLocalizationBase,
    #[error("elements belong to different rings")]
    SpecMismatch,
    #[error("{0} is not a unit")]
    NotAUnit(String),
    #[error("operation requires {expected}, ring is {found}")]
    WrongRingKind { expected: &'static str, found: String },
    #[error("cannot parse ring element `{0}`")]
    Parse(String),
    #[error("wrong number of coordinates: expected {expected}, got {found}")]
    Arity { expected: usize, found: usize },
}

pub type Coords = SmallVec<[BigInt; 2]>;

/// A raw ring value: `u^{-denom_exp} * (sum coords[l] xi_l)`.
///
/// `denom_exp` is always zero outside localized rings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Elem {
    pub coords: Coords,
    pub denom_exp: u32,
}

impl Elem {
    fn integral(coords: Coords) -> Self {
        Elem {
            coords,
            denom_exp: 0,
        }
    }
}

/// Multiplication table of an order in a fixed integral basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderTable {
    size: usize,
    // table[(i * size + j) * size + k] = coefficient of xi_k in xi_i * xi_j
    table: Vec<i64>,
}

impl OrderTable {
    pub fn new(size: usize, table: Vec<i64>) -> Result<Self, RingError> {
        if size == 0 {
            return Err(RingError::BadTable("basis must be non-empty".into()));
        }
        if table.len() != size * size * size {
            return Err(RingError::BadTable(format!(
                "expected {} entries, got {}",
                size * size * size,
                table.len()
            )));
        }
        let t = OrderTable { size, table };
        t.validate()?;
        Ok(t)
    }

    /// `Z[x]/(x^2 - d)` in the basis `1, x`.
    pub fn quadratic(d: i64) -> Self {
        OrderTable {
            size: 2,
            table: vec![1, 0, 0, 1, 0, 1, d, 0],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, i: usize, j: usize, k: usize) -> i64 {
        self.table[(i * self.size + j) * self.size + k]
    }

    fn validate(&self) -> Result<(), RingError> {
        let n = self.size;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.entry(0, j, k) != i64::from(j == k) {
                        return Err(RingError::BadTable(
                            "xi_0 is not the multiplicative identity".into(),
                        ));
                    }
                    if self.entry(i, j, k) != self.entry(j, i, k) {
                        return Err(RingError::BadTable(format!(
                            "not commutative at (xi_{i}, xi_{j})"
                        )));
                    }
                }
            }
        }
        // (xi_i xi_j) xi_l == xi_i (xi_j xi_l)
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    for out in 0..n {
                        let lhs: i128 = (0..n)
                            .map(|k| self.entry(i, j, k) as i128 * self.entry(k, l, out) as i128)
                            .sum();
                        let rhs: i128 = (0..n)
                            .map(|k| self.entry(j, l, k) as i128 * self.entry(i, k, out) as i128)
                            .sum();
                        if lhs != rhs {
                            return Err(RingError::BadTable(format!(
                                "not associative at (xi_{i}, xi_{j}, xi_{l})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Coords {
        let n = self.size;
        let mut out: Coords = (0..n).map(|_| BigInt::zero()).collect();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let prod = ai * bj;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.entry(i, j, k);
                    if c != 0 {
                        *o += &prod * c;
                    }
                }
            }
        }
        out
    }

    /// Matrix of multiplication by `a`; column `j` holds the coordinates of `a * xi_j`.
    fn mul_matrix(&self, a: &[BigInt]) -> IntMatrix {
        let n = self.size;
        let mut m = IntMatrix::zeros(n);
        for j in 0..n {
            for (i, ai) in a.iter().enumerate() {
                if ai.is_zero() {
                    continue;
                }
                for k in 0..n {
                    let c = self.entry(i, j, k);
                    if c != 0 {
                        *m.at_mut(k, j) += ai * c;
                    }
                }
            }
        }
        m
    }
}

/// Exact solver for `M x = y` over the integers with a fixed non-singular `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct ExactDivisor {
    det: BigInt,
    adj: IntMatrix,
}

impl ExactDivisor {
    fn new(m: &IntMatrix) -> Option<Self> {
        let det = m.det();
        if det.is_zero() {
            return None;
        }
        Some(ExactDivisor { adj: m.adjugate(), det })
    }

    fn solve(&self, y: &[BigInt]) -> Option<Coords> {
        self.adj
            .mul_vec(y)
            .into_iter()
            .map(|v| {
                let (q, r) = v.div_rem(&self.det);
                r.is_zero().then_some(q)
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Localization {
    base: Ring,
    u: Coords,
    divide_by_u: ExactDivisor,
}

impl Localization {
    pub fn base(&self) -> &Ring {
        &self.base
    }

    pub fn u(&self) -> Elem {
        Elem::integral(self.u.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingSpec {
    Integers,
    Modular(BigInt),
    Order(OrderTable),
    Localized(Localization),
}

/// Shared handle to a validated ring.
#[derive(Clone)]
pub struct Ring(Arc<RingSpec>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.describe())
    }
}

impl Ring {
    pub fn integers() -> Self {
        Ring(Arc::new(RingSpec::Integers))
    }

    pub fn modular(m: impl Into<BigInt>) -> Result<Self, RingError> {
        let m = m.into();
        if m < BigInt::from(2) {
            return Err(RingError::BadModulus(m));
        }
        Ok(Ring(Arc::new(RingSpec::Modular(m))))
    }

    pub fn order(table: OrderTable) -> Self {
        Ring(Arc::new(RingSpec::Order(table)))
    }

    /// `base[1/u]`; the base must be the integers or an order.
    pub fn localized(base: &Ring, u: &Elem) -> Result<Self, RingError> {
        base.check_arity(u)?;
        let mat = match base.spec() {
            RingSpec::Integers => {
                let mut m = IntMatrix::zeros(1);
                *m.at_mut(0, 0) = u.coords[0].clone();
                m
            }
            RingSpec::Order(t) => t.mul_matrix(&u.coords),
            _ => return Err(RingError::BadLocalizationBase),
        };
        let divide_by_u = ExactDivisor::new(&mat).ok_or(RingError::BadLocalizer)?;
        Ok(Ring(Arc::new(RingSpec::Localized(Localization {
            base: base.clone(),
            u: u.coords.clone(),
            divide_by_u,
        }))))
    }

    pub fn spec(&self) -> &RingSpec {
        &self.0
    }

    /// Number of integer coordinates per element.
    pub fn width(&self) -> usize {
        match self.spec() {
            RingSpec::Integers | RingSpec::Modular(_) => 1,
            RingSpec::Order(t) => t.size,
            RingSpec::Localized(l) => l.base.width(),
        }
    }

    pub fn modulus(&self) -> Option<&BigInt> {
        match self.spec() {
            RingSpec::Modular(m) => Some(m),
            _ => None,
        }
    }

    pub fn localization(&self) -> Option<&Localization> {
        match self.spec() {
            RingSpec::Localized(l) => Some(l),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        match self.spec() {
            RingSpec::Integers => "Z".into(),
            RingSpec::Modular(m) => format!("Z/{m}"),
            RingSpec::Order(t) => format!("order of rank {}", t.size),
            RingSpec::Localized(l) => {
                format!("{}[1/{}]", l.base.describe(), l.base.format(&l.u()))
            }
        }
    }

    fn check_arity(&self, a: &Elem) -> Result<(), RingError> {
        if a.coords.len() != self.width() {
            return Err(RingError::Arity {
                expected: self.width(),
                found: a.coords.len(),
            });
        }
        Ok(())
    }

    // ---- construction ----

    pub fn zero(&self) -> Elem {
        Elem::integral((0..self.width()).map(|_| BigInt::zero()).collect())
    }

    pub fn one(&self) -> Elem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: impl Into<BigInt>) -> Elem {
        let mut c = self.zero().coords;
        c[0] = n.into();
        self.reduce(Elem::integral(c))
    }

    /// Basis element `xi_l` (for the integers and `Z/m`, only `l = 0`).
    pub fn basis(&self, l: usize) -> Elem {
        let mut c = self.zero().coords;
        c[l] = BigInt::one();
        Elem::integral(c)
    }

    /// Builds an element from coordinates and a denominator exponent, bringing it
    /// into canonical form.
    pub fn element(&self, coords: &[BigInt], denom_exp: u32) -> Result<Elem, RingError> {
        let e = Elem {
            coords: coords.iter().cloned().collect(),
            denom_exp,
        };
        self.check_arity(&e)?;
        if denom_exp > 0 && self.localization().is_none() {
            return Err(RingError::WrongRingKind {
                expected: "a localized ring",
                found: self.describe(),
            });
        }
        Ok(self.reduce(e))
    }

    /// Canonical form: modular reduction, or minimal denominator exponent.
    pub fn reduce(&self, mut a: Elem) -> Elem {
        match self.spec() {
            RingSpec::Integers | RingSpec::Order(_) => a,
            RingSpec::Modular(m) => {
                a.coords[0] = a.coords[0].mod_floor(m);
                a
            }
            RingSpec::Localized(l) => {
                if a.coords.iter().all(Zero::is_zero) {
                    a.denom_exp = 0;
                    return a;
                }
                while a.denom_exp > 0 {
                    match l.divide_by_u.solve(&a.coords) {
                        Some(q) => {
                            a.coords = q;
                            a.denom_exp -= 1;
                        }
                        None => break,
                    }
                }
                a
            }
        }
    }

    // ---- arithmetic on raw values ----

    pub fn is_zero(&self, a: &Elem) -> bool {
        a.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        a.denom_exp == 0 && a.coords[0].is_one() && a.coords[1..].iter().all(Zero::is_zero)
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        self.reduce(Elem {
            coords: a.coords.iter().map(|c| -c).collect(),
            denom_exp: a.denom_exp,
        })
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        if let Some(l) = self.localization() {
            if a.denom_exp != b.denom_exp {
                let k = a.denom_exp.max(b.denom_exp);
                let a2 = l.scale_to(a, k);
                let b2 = l.scale_to(b, k);
                return self.reduce(Elem {
                    coords: add_coords(&a2, &b2),
                    denom_exp: k,
                });
            }
        }
        self.reduce(Elem {
            coords: add_coords(&a.coords, &b.coords),
            denom_exp: a.denom_exp,
        })
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match self.spec() {
            RingSpec::Integers => Elem::integral(smallvec::smallvec![&a.coords[0] * &b.coords[0]]),
            RingSpec::Modular(m) => {
                Elem::integral(smallvec::smallvec![(&a.coords[0] * &b.coords[0]).mod_floor(m)])
            }
            RingSpec::Order(t) => Elem::integral(t.mul(&a.coords, &b.coords)),
            RingSpec::Localized(l) => {
                let prod = l.base.mul(&Elem::integral(a.coords.clone()), &Elem::integral(b.coords.clone()));
                self.reduce(Elem {
                    coords: prod.coords,
                    denom_exp: a.denom_exp + b.denom_exp,
                })
            }
        }
    }

    /// `a + b * c`, the inner step of matrix products.
    pub fn mul_add(&self, a: &Elem, b: &Elem, c: &Elem) -> Elem {
        match self.spec() {
            RingSpec::Integers => {
                Elem::integral(smallvec::smallvec![&a.coords[0] + &b.coords[0] * &c.coords[0]])
            }
            _ => self.add(a, &self.mul(b, c)),
        }
    }

    pub fn scale_int(&self, a: &Elem, n: &BigInt) -> Elem {
        self.reduce(Elem {
            coords: a.coords.iter().map(|c| c * n).collect(),
            denom_exp: a.denom_exp,
        })
    }

    pub fn pow(&self, a: &Elem, e: i64) -> Result<Elem, RingError> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        Ok(acc)
    }

    pub fn is_unit(&self, a: &Elem) -> bool {
        self.inv(a).is_ok()
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem, RingError> {
        let not_unit = || RingError::NotAUnit(self.format(a));
        match self.spec() {
            RingSpec::Integers => {
                if a.coords[0].abs().is_one() {
                    Ok(a.clone())
                } else {
                    Err(not_unit())
                }
            }
            RingSpec::Modular(m) => {
                let e = a.coords[0].extended_gcd(m);
                if !e.gcd.is_one() {
                    return Err(not_unit());
                }
                Ok(Elem::integral(smallvec::smallvec![e.x.mod_floor(m)]))
            }
            RingSpec::Order(t) => {
                let mat = t.mul_matrix(&a.coords);
                let det = mat.det();
                if !det.abs().is_one() {
                    return Err(not_unit());
                }
                let div = ExactDivisor { adj: mat.adjugate(), det };
                let one = self.one();
                div.solve(&one.coords).map(Elem::integral).ok_or_else(not_unit)
            }
            RingSpec::Localized(l) => {
                // a = u^-k B is a unit iff B divides some power of u in the base.
                let b = Elem::integral(a.coords.clone());
                let mat = l.base.mul_matrix_of(&b);
                let det = mat.det();
                if det.is_zero() {
                    return Err(not_unit());
                }
                let div = ExactDivisor { adj: mat.adjugate(), det: det.clone() };
                let exponent = det.bits() as u32 + 1;
                let u_pow = l.base.pow(&l.u(), exponent as i64)?;
                let c = div.solve(&u_pow.coords).ok_or_else(not_unit)?;
                let uk = l.base.pow(&l.u(), a.denom_exp as i64)?;
                let num = l.base.mul(&uk, &Elem::integral(c));
                Ok(self.reduce(Elem {
                    coords: num.coords,
                    denom_exp: exponent,
                }))
            }
        }
    }

    fn mul_matrix_of(&self, a: &Elem) -> IntMatrix {
        match self.spec() {
            RingSpec::Order(t) => t.mul_matrix(&a.coords),
            _ => {
                let mut m = IntMatrix::zeros(1);
                *m.at_mut(0, 0) = a.coords[0].clone();
                m
            }
        }
    }

    // ---- operations used by the witness constructions ----

    /// Splits every basis coordinate `m_l = p * n_l + r_l` with `0 <= r_l < p`.
    pub fn divmod_basis(&self, a: &Elem, p: &BigInt) -> Result<(Vec<BigInt>, Vec<BigInt>), RingError> {
        match self.spec() {
            RingSpec::Integers | RingSpec::Order(_) => {}
            _ => {
                return Err(RingError::WrongRingKind {
                    expected: "the integers or an order",
                    found: self.describe(),
                })
            }
        }
        assert!(p.is_positive(), "divisor must be positive");
        Ok(a.coords.iter().map(|m| m.div_mod_floor(p)).unzip())
    }

    /// Writes a localized element as `u^{-k} b` with `b` in the base ring and
    /// `k` minimal.
    pub fn clear_denominator(&self, a: &Elem) -> Result<(u32, Elem), RingError> {
        if self.localization().is_none() {
            return Err(RingError::WrongRingKind {
                expected: "a localized ring",
                found: self.describe(),
            });
        }
        let a = self.reduce(a.clone());
        Ok((a.denom_exp, Elem::integral(a.coords)))
    }

    /// Embeds a base-ring element into this localization.
    pub fn from_base(&self, b: &Elem) -> Elem {
        self.reduce(Elem::integral(b.coords.clone()))
    }

    /// Whether `a` lies in the base ring (denominator exponent zero).
    pub fn is_integral(&self, a: &Elem) -> bool {
        a.denom_exp == 0
    }

    // ---- text form ----

    /// Comma-separated basis coordinates with an optional `/u^k` suffix.
    pub fn format(&self, a: &Elem) -> String {
        let mut s = a
            .coords
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",");
        if a.denom_exp > 0 {
            s.push_str(&format!("/u^{}", a.denom_exp));
        }
        s
    }

    pub fn parse(&self, text: &str) -> Result<Elem, RingError> {
        let bad = || RingError::Parse(text.to_string());
        let text = text.trim();
        let (body, k) = match text.split_once('/') {
            Some((body, suffix)) => {
                let exp = suffix.trim().strip_prefix("u^").ok_or_else(bad)?;
                (body, exp.trim().parse::<u32>().map_err(|_| bad())?)
            }
            None => (text, 0),
        };
        let coords = body
            .split(',')
            .map(|c| c.trim().parse::<BigInt>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        self.element(&coords, k)
    }
}

impl Localization {
    /// Coordinates of `u^(k - a.denom_exp) * numerator(a)`, for `k >= a.denom_exp`.
    fn scale_to(&self, a: &Elem, k: u32) -> Coords {
        let mut c = Elem::integral(a.coords.clone());
        let u = self.u();
        for _ in a.denom_exp..k {
            c = self.base.mul(&c, &u);
        }
        c.coords
    }
}

fn add_coords(a: &[BigInt], b: &[BigInt]) -> Coords {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

#[cfg(test)]
mod tests;
