//! Exact arithmetic over Q, over finite products of truncated polynomial
//! rings `Q[t]/(t^m)`, and over their quadratic extensions `R ⊗ Q(√d)`.

mod element;
mod quad;
mod text;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub use element::AlgebraElement;
pub use quad::{QuadElement, Sign};
pub use text::{parse_rational, parse_ring};
pub(crate) use text::{format_entry, parse_quad_at};

/// Exact rationals, always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shape of the coefficient algebra `R = Π Q[t]/(t^m_i)` together with the
/// discriminant `d` of `L = Q(√d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraSpec {
    factors: Vec<usize>,
    d: Rational,
}

pub type SpecRef = Arc<AlgebraSpec>;

impl AlgebraSpec {
    pub fn new(factors: Vec<usize>, d: Rational) -> Result<SpecRef> {
        if factors.is_empty() {
            return Err(Error::InvalidAlgebra("no factors".into()));
        }
        if let Some(bad) = factors.iter().find(|&&m| m == 0) {
            return Err(Error::InvalidAlgebra(format!("truncation order {bad} < 1")));
        }
        if is_rational_square(&d) {
            return Err(Error::SquareDiscriminant(d.to_string()));
        }
        Ok(Arc::new(AlgebraSpec { factors, d }))
    }

    /// The base field itself, `prod(1)`.
    pub fn rational(d: Rational) -> Result<SpecRef> {
        Self::new(vec![1], d)
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn d(&self) -> &Rational {
        &self.d
    }

    /// Nilpotency index of the radical: `J^max_order = 0`.
    pub fn max_order(&self) -> usize {
        self.factors.iter().copied().max().unwrap_or(1)
    }

    pub fn is_field(&self) -> bool {
        self.factors == [1]
    }

    /// Q-dimension of R.
    pub fn dimension(&self) -> usize {
        self.factors.iter().sum()
    }

    /// The local factor `Q[t]/(t^m_i)` with the same discriminant.
    pub fn factor_spec(&self, i: usize) -> SpecRef {
        Arc::new(AlgebraSpec {
            factors: vec![self.factors[i]],
            d: self.d.clone(),
        })
    }

    /// Splits `A × B` after the first `k` factors.
    pub fn split_at(&self, k: usize) -> Result<(SpecRef, SpecRef)> {
        if k == 0 || k >= self.factors.len() {
            return Err(Error::SpecMismatch(format!(
                "cannot split {} after {k} factors",
                self
            )));
        }
        let a = AlgebraSpec {
            factors: self.factors[..k].to_vec(),
            d: self.d.clone(),
        };
        let b = AlgebraSpec {
            factors: self.factors[k..].to_vec(),
            d: self.d.clone(),
        };
        Ok((Arc::new(a), Arc::new(b)))
    }

    pub fn product(a: &AlgebraSpec, b: &AlgebraSpec) -> Result<SpecRef> {
        if a.d != b.d {
            return Err(Error::SpecMismatch(format!(
                "discriminants differ: {} vs {}",
                a.d, b.d
            )));
        }
        let mut factors = a.factors.clone();
        factors.extend_from_slice(&b.factors);
        Ok(Arc::new(AlgebraSpec {
            factors,
            d: a.d.clone(),
        }))
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let orders: Vec<String> = self.factors.iter().map(|m| m.to_string()).collect();
        write!(f, "prod({}); d={}", orders.join(","), self.d)
    }
}

pub(crate) fn same_spec(a: &SpecRef, b: &SpecRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// `d` is a square in Q iff `num·den` is a perfect square (lowest terms).
fn is_rational_square(d: &Rational) -> bool {
    if d.is_zero() {
        return true;
    }
    if d.is_negative() {
        return false;
    }
    let prod: BigInt = d.numer() * d.denom();
    let root = prod.sqrt();
    &root * &root == prod
}

/// Powers `J^a` of the radical; `a = 0` is the whole ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RadicalLevel(usize);

impl RadicalLevel {
    pub fn new(a: usize, spec: &AlgebraSpec) -> Result<Self> {
        if a > spec.max_order() {
            return Err(Error::InvalidAlgebra(format!(
                "radical level {a} exceeds nilpotency index {}",
                spec.max_order()
            )));
        }
        Ok(RadicalLevel(a))
    }

    pub fn top(spec: &AlgebraSpec) -> Self {
        RadicalLevel(spec.max_order())
    }

    pub fn get(self) -> usize {
        self.0
    }
}

impl fmt::Display for RadicalLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_square_discriminants() {
        assert!(matches!(
            AlgebraSpec::rational(int(4)),
            Err(Error::SquareDiscriminant(_))
        ));
        assert!(AlgebraSpec::rational(rat(9, 4)).is_err());
        assert!(AlgebraSpec::rational(rat(1, 1)).is_err());
        assert!(AlgebraSpec::rational(int(0)).is_err());
        assert!(AlgebraSpec::rational(rat(1, 2)).is_ok());
        assert!(AlgebraSpec::rational(int(-1)).is_ok());
        assert!(AlgebraSpec::rational(int(5)).is_ok());
        // 8/2 reduces to 4
        assert!(AlgebraSpec::rational(rat(8, 2)).is_err());
    }

    #[test]
    fn rejects_bad_orders() {
        assert!(AlgebraSpec::new(vec![], int(5)).is_err());
        assert!(AlgebraSpec::new(vec![2, 0], int(5)).is_err());
    }

    #[test]
    fn split_and_product() {
        let s = AlgebraSpec::new(vec![1, 2, 3], int(5)).unwrap();
        let (a, b) = s.split_at(1).unwrap();
        assert_eq!(a.factors(), &[1]);
        assert_eq!(b.factors(), &[2, 3]);
        assert_eq!(*AlgebraSpec::product(&a, &b).unwrap(), *s);
        assert!(s.split_at(0).is_err());
        assert!(s.split_at(3).is_err());
    }

    #[test]
    fn radical_level_bounds() {
        let s = AlgebraSpec::new(vec![1, 3], int(2)).unwrap();
        assert!(RadicalLevel::new(3, &s).is_ok());
        assert!(RadicalLevel::new(4, &s).is_err());
        assert_eq!(RadicalLevel::top(&s).get(), 3);
    }
}
