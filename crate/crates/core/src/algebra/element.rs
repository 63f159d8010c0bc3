use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{same_spec, RadicalLevel, Rational, SpecRef};
use crate::error::{Error, Result};

/// An element of `R = Π Q[t]/(t^m_i)`, stored as one truncated coefficient
/// vector per factor.
#[derive(Clone, Debug)]
pub struct AlgebraElement {
    spec: SpecRef,
    coeffs: Vec<Vec<Rational>>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        same_spec(&self.spec, &other.spec) && self.coeffs == other.coeffs
    }
}

impl Eq for AlgebraElement {}

impl AlgebraElement {
    pub fn zero(spec: &SpecRef) -> Self {
        let coeffs = spec
            .factors()
            .iter()
            .map(|&m| vec![Rational::zero(); m])
            .collect();
        AlgebraElement {
            spec: spec.clone(),
            coeffs,
        }
    }

    pub fn one(spec: &SpecRef) -> Self {
        Self::from_rational(spec, Rational::one())
    }

    /// The image of a scalar `c ∈ Q` under the structure map `Q → R`.
    pub fn from_rational(spec: &SpecRef, c: Rational) -> Self {
        let mut x = Self::zero(spec);
        for f in &mut x.coeffs {
            f[0] = c.clone();
        }
        x
    }

    pub fn from_int(spec: &SpecRef, c: i64) -> Self {
        Self::from_rational(spec, super::int(c))
    }

    /// The nilpotent generator `t` of factor `i` (zero in every other factor).
    pub fn t(spec: &SpecRef, i: usize) -> Self {
        let mut x = Self::zero(spec);
        if spec.factors()[i] > 1 {
            x.coeffs[i][1] = Rational::one();
        }
        x
    }

    pub fn from_coeffs(spec: &SpecRef, coeffs: Vec<Vec<Rational>>) -> Result<Self> {
        if coeffs.len() != spec.num_factors() {
            return Err(Error::SpecMismatch(format!(
                "{} coefficient vectors for {} factors",
                coeffs.len(),
                spec.num_factors()
            )));
        }
        for (i, (c, &m)) in coeffs.iter().zip(spec.factors()).enumerate() {
            if c.len() != m {
                return Err(Error::SpecMismatch(format!(
                    "factor {i} has {} coefficients, expected {m}",
                    c.len()
                )));
            }
        }
        Ok(AlgebraElement {
            spec: spec.clone(),
            coeffs,
        })
    }

    pub fn spec(&self) -> &SpecRef {
        &self.spec
    }

    pub fn coeffs(&self) -> &[Vec<Rational>] {
        &self.coeffs
    }

    pub fn factor(&self, i: usize) -> &[Rational] {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs
            .iter()
            .all(|f| f[0].is_one() && f[1..].iter().all(Zero::is_zero))
    }

    /// The scalar this element equals, if it lies in the image of `Q`.
    pub fn as_scalar(&self) -> Option<Rational> {
        let c = self.coeffs[0][0].clone();
        self.coeffs
            .iter()
            .all(|f| f[0] == c && f[1..].iter().all(Zero::is_zero))
            .then_some(c)
    }

    /// Units are exactly the elements with nonzero degree-0 part in every factor.
    pub fn is_unit(&self) -> bool {
        self.coeffs.iter().all(|f| !f[0].is_zero())
    }

    pub fn invert(&self) -> Result<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (i, f) in self.coeffs.iter().enumerate() {
            if f[0].is_zero() {
                return Err(Error::NonUnit { factor: i });
            }
            out.push(invert_series(f));
        }
        Ok(AlgebraElement {
            spec: self.spec.clone(),
            coeffs: out,
        })
    }

    /// Zeroes every coefficient of `t`-degree `>= a`: the projection `R → R/J^a`
    /// composed with the degree-truncation section.
    pub fn reduce_mod(&self, a: RadicalLevel) -> Self {
        let a = a.get();
        let coeffs = self
            .coeffs
            .iter()
            .map(|f| {
                f.iter()
                    .enumerate()
                    .map(|(k, c)| if k < a { c.clone() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        AlgebraElement {
            spec: self.spec.clone(),
            coeffs,
        }
    }

    /// Smallest `t`-degree carrying a nonzero coefficient, over all factors.
    /// `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .filter_map(|f| f.iter().position(|c| !c.is_zero()))
            .min()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        AlgebraElement {
            spec: self.spec.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|f| f.iter().map(|x| x * c).collect())
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.spec);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Projection onto factor `i`, as an element of the local algebra
    /// `target` (which must have the shape of that factor).
    pub fn project(&self, i: usize, target: &SpecRef) -> Self {
        debug_assert_eq!(target.factors(), &[self.spec.factors()[i]]);
        AlgebraElement {
            spec: target.clone(),
            coeffs: vec![self.coeffs[i].clone()],
        }
    }

    /// Restriction to the factor range `range` of the product.
    pub fn restrict(&self, range: std::ops::Range<usize>, target: &SpecRef) -> Self {
        debug_assert_eq!(target.factors(), &self.spec.factors()[range.clone()]);
        AlgebraElement {
            spec: target.clone(),
            coeffs: self.coeffs[range].to_vec(),
        }
    }

    /// Embeds an element of a sub-product occupying factors starting at
    /// `offset` into `target`, zero elsewhere.
    pub fn embed(&self, offset: usize, target: &SpecRef) -> Self {
        let mut x = Self::zero(target);
        for (k, f) in self.coeffs.iter().enumerate() {
            debug_assert_eq!(f.len(), target.factors()[offset + k]);
            x.coeffs[offset + k] = f.clone();
        }
        x
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        assert_same_spec(&self.spec, &other.spec);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| op(x, y)).collect())
            .collect();
        AlgebraElement {
            spec: self.spec.clone(),
            coeffs,
        }
    }
}

pub(crate) fn assert_same_spec(a: &SpecRef, b: &SpecRef) {
    assert!(same_spec(a, b), "algebra mismatch: {a} vs {b}");
}

/// Power-series inverse of a truncated polynomial with invertible constant term.
fn invert_series(f: &[Rational]) -> Vec<Rational> {
    let m = f.len();
    let inv0 = f[0].recip();
    let mut g = vec![Rational::zero(); m];
    g[0] = inv0.clone();
    for k in 1..m {
        let mut s = Rational::zero();
        for j in 1..=k {
            if !f[j].is_zero() {
                s += &f[j] * &g[k - j];
            }
        }
        g[k] = -(s * &inv0);
    }
    g
}

fn truncated_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let m = a.len();
    let mut out = vec![Rational::zero(); m];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b[..m - i].iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

impl<'a> Add<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.zip_with(rhs, |x, y| x + y)
    }
}

impl<'a> Sub<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.zip_with(rhs, |x, y| x - y)
    }
}

impl<'a> Mul<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        assert_same_spec(&self.spec, &rhs.spec);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| truncated_mul(a, b))
            .collect();
        AlgebraElement {
            spec: self.spec.clone(),
            coeffs,
        }
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement {
            spec: self.spec.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|f| f.iter().map(|c| -c).collect())
                .collect(),
        }
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a $ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &'a $ty) -> $ty { (&self).$m(rhs) }
        }
    )*};
}
pub(crate) use forward_owned;

forward_owned!(AlgebraElement, Add add, Sub sub, Mul mul);

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        -&self
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|c| super::text::format_poly(c))
            .collect();
        write!(f, "[{}]", parts.join(" | "))
    }
}
