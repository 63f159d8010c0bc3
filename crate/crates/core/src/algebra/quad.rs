use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::element::{assert_same_spec, forward_owned};
use super::{AlgebraElement, RadicalLevel, Rational, SpecRef};
use crate::error::Result;

/// `±1`, used for the δ-twist `v ↦ v_δ` and for signs of structure constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i32(s: i32) -> Self {
        if s < 0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn to_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// An element `re + im·√d` of `R_L = R ⊗ Q(√d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadElement {
    re: AlgebraElement,
    im: AlgebraElement,
}

impl QuadElement {
    pub fn new(re: AlgebraElement, im: AlgebraElement) -> Self {
        assert_same_spec(re.spec(), im.spec());
        QuadElement { re, im }
    }

    pub fn real(re: AlgebraElement) -> Self {
        let im = AlgebraElement::zero(re.spec());
        QuadElement { re, im }
    }

    pub fn zero(spec: &SpecRef) -> Self {
        Self::real(AlgebraElement::zero(spec))
    }

    pub fn one(spec: &SpecRef) -> Self {
        Self::real(AlgebraElement::one(spec))
    }

    pub fn from_rationals(spec: &SpecRef, re: Rational, im: Rational) -> Self {
        QuadElement {
            re: AlgebraElement::from_rational(spec, re),
            im: AlgebraElement::from_rational(spec, im),
        }
    }

    /// `√d` itself.
    pub fn sqrt_d(spec: &SpecRef) -> Self {
        QuadElement {
            re: AlgebraElement::zero(spec),
            im: AlgebraElement::one(spec),
        }
    }

    pub fn spec(&self) -> &SpecRef {
        self.re.spec()
    }

    pub fn re(&self) -> &AlgebraElement {
        &self.re
    }

    pub fn im(&self) -> &AlgebraElement {
        &self.im
    }

    pub fn into_parts(self) -> (AlgebraElement, AlgebraElement) {
        (self.re, self.im)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// The Galois involution τ: `re + im√d ↦ re − im√d`.
    pub fn conj(&self) -> Self {
        QuadElement {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `Tr(x) = x + x̄ = 2·re`.
    pub fn trace(&self) -> AlgebraElement {
        &self.re + &self.re
    }

    /// `x ↦ x_δ`: identity for `δ = +1`, τ for `δ = −1`.
    pub fn delta_conj(&self, delta: Sign) -> Self {
        match delta {
            Sign::Plus => self.clone(),
            Sign::Minus => self.conj(),
        }
    }

    /// `x·x̄ = re² − d·im²`.
    pub fn norm(&self) -> AlgebraElement {
        let d = self.spec().d().clone();
        &(&self.re * &self.re) - &(&self.im * &self.im).scale(&d)
    }

    /// A unit iff its norm is a unit of `R`.
    pub fn is_unit(&self) -> bool {
        self.norm().is_unit()
    }

    pub fn invert(&self) -> Result<Self> {
        let n = self.norm().invert()?;
        let c = self.conj();
        Ok(QuadElement {
            re: &c.re * &n,
            im: &c.im * &n,
        })
    }

    pub fn reduce_mod(&self, a: RadicalLevel) -> Self {
        QuadElement {
            re: self.re.reduce_mod(a),
            im: self.im.reduce_mod(a),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QuadElement {
            re: self.re.scale(c),
            im: self.im.scale(c),
        }
    }

    pub fn mul_real(&self, r: &AlgebraElement) -> Self {
        QuadElement {
            re: &self.re * r,
            im: &self.im * r,
        }
    }

    pub fn valuation(&self) -> Option<usize> {
        match (self.re.valuation(), self.im.valuation()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    pub fn project(&self, i: usize, target: &SpecRef) -> Self {
        QuadElement {
            re: self.re.project(i, target),
            im: self.im.project(i, target),
        }
    }

    pub fn restrict(&self, range: std::ops::Range<usize>, target: &SpecRef) -> Self {
        QuadElement {
            re: self.re.restrict(range.clone(), target),
            im: self.im.restrict(range, target),
        }
    }

    pub fn embed(&self, offset: usize, target: &SpecRef) -> Self {
        QuadElement {
            re: self.re.embed(offset, target),
            im: self.im.embed(offset, target),
        }
    }

    /// Parses `re ; im`.
    pub fn parse(spec: &SpecRef, s: &str) -> Result<Self> {
        super::text::parse_quad(spec, s, 1)
    }
}

impl From<AlgebraElement> for QuadElement {
    fn from(re: AlgebraElement) -> Self {
        QuadElement::real(re)
    }
}

impl<'a> Add<&'a QuadElement> for &'a QuadElement {
    type Output = QuadElement;
    fn add(self, rhs: &QuadElement) -> QuadElement {
        QuadElement {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'a> Sub<&'a QuadElement> for &'a QuadElement {
    type Output = QuadElement;
    fn sub(self, rhs: &QuadElement) -> QuadElement {
        QuadElement {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl<'a> Mul<&'a QuadElement> for &'a QuadElement {
    type Output = QuadElement;
    fn mul(self, rhs: &QuadElement) -> QuadElement {
        let d = self.spec().d().clone();
        let re = &(&self.re * &rhs.re) + &(&self.im * &rhs.im).scale(&d);
        let im = &(&self.re * &rhs.im) + &(&self.im * &rhs.re);
        QuadElement { re, im }
    }
}

impl Neg for &QuadElement {
    type Output = QuadElement;
    fn neg(self) -> QuadElement {
        QuadElement {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl Neg for QuadElement {
    type Output = QuadElement;
    fn neg(self) -> QuadElement {
        -&self
    }
}

forward_owned!(QuadElement, Add add, Sub sub, Mul mul);

impl fmt::Display for QuadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ; {}", self.re, self.im)
    }
}
