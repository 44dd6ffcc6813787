use std::fmt;

use num_bigint::BigInt;

use super::{Elem, Ring, RingError};

/// A ring value bundled with its ring; binary operations check that both
/// operands live in the same ring.
#[derive(Clone, PartialEq, Eq)]
pub struct RingElement {
    ring: Ring,
    value: Elem,
}

impl RingElement {
    pub fn new(ring: &Ring, value: Elem) -> Self {
        let value = ring.reduce(value);
        RingElement {
            ring: ring.clone(),
            value,
        }
    }

    pub fn from_int(ring: &Ring, n: impl Into<BigInt>) -> Self {
        RingElement {
            ring: ring.clone(),
            value: ring.from_int(n),
        }
    }

    pub fn parse(ring: &Ring, text: &str) -> Result<Self, RingError> {
        Ok(RingElement {
            ring: ring.clone(),
            value: ring.parse(text)?,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn value(&self) -> &Elem {
        &self.value
    }

    pub fn into_value(self) -> Elem {
        self.value
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.value.coords
    }

    pub fn denom_exp(&self) -> u32 {
        self.value.denom_exp
    }

    fn same_ring(&self, other: &Self) -> Result<(), RingError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(RingError::SpecMismatch)
        }
    }

    fn wrap(&self, value: Elem) -> Self {
        RingElement {
            ring: self.ring.clone(),
            value,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        self.same_ring(other)?;
        Ok(self.wrap(self.ring.add(&self.value, &other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RingError> {
        self.same_ring(other)?;
        Ok(self.wrap(self.ring.sub(&self.value, &other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, RingError> {
        self.same_ring(other)?;
        Ok(self.wrap(self.ring.mul(&self.value, &other.value)))
    }

    pub fn neg(&self) -> Self {
        self.wrap(self.ring.neg(&self.value))
    }

    pub fn inv(&self) -> Result<Self, RingError> {
        Ok(self.wrap(self.ring.inv(&self.value)?))
    }

    pub fn pow(&self, e: i64) -> Result<Self, RingError> {
        Ok(self.wrap(self.ring.pow(&self.value, e)?))
    }

    pub fn is_zero(&self) -> bool {
        self.ring.is_zero(&self.value)
    }

    pub fn is_one(&self) -> bool {
        self.ring.is_one(&self.value)
    }

    pub fn divmod_basis(&self, p: &BigInt) -> Result<(Vec<BigInt>, Vec<BigInt>), RingError> {
        self.ring.divmod_basis(&self.value, p)
    }

    /// `(k, b)` with `self = u^{-k} b`, `b` an element of the base ring.
    pub fn clear_denominator(&self) -> Result<(u32, RingElement), RingError> {
        let (k, b) = self.ring.clear_denominator(&self.value)?;
        let base = self.ring.localization().expect("checked above").base();
        Ok((k, RingElement::new(base, b)))
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format(&self.value))
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.ring.describe())
    }
}
