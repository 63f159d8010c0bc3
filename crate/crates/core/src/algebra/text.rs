//! Text forms: `[1 + 3t + 1/2 t^2 | 0]` for elements of R, `re ; im` for
//! elements of R_L, and `prod(m1,...,mr); d=<rational>` for the algebra.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{AlgebraElement, AlgebraSpec, QuadElement, Rational, SpecRef};
use crate::error::{Error, Result};

pub(crate) fn format_poly(coeffs: &[Rational]) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let a = c.abs();
        let mono = match k {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{k}"),
        };
        if k == 0 {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&mono);
        } else if a.is_integer() {
            out.push_str(&format!("{a}{mono}"));
        } else {
            out.push_str(&format!("{a} {mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    line: usize,
    base_col: usize,
    src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str, line: usize, base_col: usize) -> Self {
        Cursor {
            chars: src.char_indices().collect(),
            pos: 0,
            line,
            base_col,
            src,
        }
    }

    fn column(&self) -> usize {
        let byte = self
            .chars
            .get(self.pos)
            .map(|&(b, _)| b)
            .unwrap_or(self.src.len());
        self.base_col + self.src[..byte].chars().count()
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, self.column(), msg)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.chars.len()
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        BigInt::from_str(&s).ok()
    }

    fn unsigned_rational(&mut self) -> Result<Option<Rational>> {
        let Some(n) = self.digits() else {
            return Ok(None);
        };
        if self.eat('/') {
            let d = self.digits().ok_or_else(|| self.err("expected denominator"))?;
            if d.is_zero() {
                return Err(self.err("zero denominator"));
            }
            Ok(Some(Rational::new(n, d)))
        } else {
            Ok(Some(Rational::from_integer(n)))
        }
    }

    fn signed_rational(&mut self) -> Result<Rational> {
        let negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let r = self
            .unsigned_rational()?
            .ok_or_else(|| self.err("expected a rational number"))?;
        Ok(if negative { -r } else { r })
    }

    /// One polynomial in `t`, truncated at `m`.
    fn poly(&mut self, m: usize) -> Result<Vec<Rational>> {
        let mut coeffs = vec![Rational::zero(); m];
        let mut first = true;
        loop {
            self.skip_ws();
            let negative = if self.eat('-') {
                true
            } else if self.eat('+') || first {
                false
            } else {
                break;
            };
            first = false;
            let c = self.unsigned_rational()?;
            let degree = if self.eat('t') {
                if self.eat('^') {
                    let e = self.digits().ok_or_else(|| self.err("expected exponent"))?;
                    usize::try_from(e).map_err(|_| self.err("exponent too large"))?
                } else {
                    1
                }
            } else if c.is_some() {
                0
            } else {
                return Err(self.err("expected a term"));
            };
            if degree >= m {
                return Err(self.err(format!("degree {degree} not below truncation order {m}")));
            }
            let c = c.unwrap_or_else(Rational::one);
            coeffs[degree] += if negative { -c } else { c };
            self.skip_ws();
            if !matches!(self.peek(), Some('+') | Some('-')) {
                break;
            }
        }
        Ok(coeffs)
    }

    fn element(&mut self, spec: &SpecRef) -> Result<AlgebraElement> {
        self.skip_ws();
        let bracketed = self.eat('[');
        if !bracketed && spec.num_factors() > 1 {
            return Err(self.err("expected '['"));
        }
        let mut coeffs = Vec::with_capacity(spec.num_factors());
        for (i, &m) in spec.factors().iter().enumerate() {
            if i > 0 {
                self.expect('|')?;
            }
            coeffs.push(self.poly(m)?);
        }
        if bracketed {
            self.expect(']')?;
        }
        AlgebraElement::from_coeffs(spec, coeffs)
    }
}

impl AlgebraElement {
    /// Parses the bracketed text form. With a single factor the brackets may
    /// be omitted.
    pub fn parse(spec: &SpecRef, s: &str) -> Result<Self> {
        parse_element(spec, s, 1, 1)
    }
}

pub(crate) fn parse_element(spec: &SpecRef, s: &str, line: usize, col: usize) -> Result<AlgebraElement> {
    let mut c = Cursor::new(s, line, col);
    let x = c.element(spec)?;
    if !c.at_end() {
        return Err(c.err("trailing input"));
    }
    Ok(x)
}

pub(crate) fn parse_quad(spec: &SpecRef, s: &str, line: usize) -> Result<QuadElement> {
    parse_quad_at(spec, s, line, 1)
}

pub(crate) fn parse_quad_at(spec: &SpecRef, s: &str, line: usize, col: usize) -> Result<QuadElement> {
    let Some(split) = s.find(';') else {
        return Err(Error::parse(line, col, "expected 're ; im'"));
    };
    let re = parse_element(spec, &s[..split], line, col)?;
    let im_col = col + s[..=split].chars().count();
    let im = parse_element(spec, &s[split + 1..], line, im_col)?;
    Ok(QuadElement::new(re, im))
}

/// Compact entry form used in matrix files: bare rationals over Q, bracketed
/// element text otherwise.
pub(crate) fn format_entry(x: &QuadElement) -> String {
    if x.spec().is_field() {
        format!("{};{}", x.re().factor(0)[0], x.im().factor(0)[0])
    } else {
        format!("{};{}", x.re(), x.im())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let mut c = Cursor::new(s, 1, 1);
    let r = c.signed_rational()?;
    if !c.at_end() {
        return Err(c.err("trailing input"));
    }
    Ok(r)
}

impl FromStr for AlgebraSpec {
    type Err = Error;

    /// `prod(m1,...,mr); d=<rational>`
    fn from_str(s: &str) -> Result<Self> {
        let mut c = Cursor::new(s, 1, 1);
        c.skip_ws();
        for ch in "prod".chars() {
            c.expect(ch)?;
        }
        c.expect('(')?;
        let mut factors = Vec::new();
        loop {
            let m = c.digits().ok_or_else(|| c.err("expected truncation order"))?;
            factors.push(usize::try_from(m).map_err(|_| c.err("order too large"))?);
            if !c.eat(',') {
                break;
            }
        }
        c.expect(')')?;
        c.expect(';')?;
        c.expect('d')?;
        c.expect('=')?;
        let d = c.signed_rational()?;
        if !c.at_end() {
            return Err(c.err("trailing input"));
        }
        AlgebraSpec::new(factors, d).map(|s| (*s).clone())
    }
}

/// Ring descriptions accepted on the command line: `Q`, `Q[t]/(t^m)`,
/// products of those joined by `x`, or `prod(m1,...,mr)`.
pub fn parse_ring(ring: &str, d: Rational) -> Result<SpecRef> {
    let ring = ring.trim();
    if let Some(rest) = ring.strip_prefix("prod") {
        let inner = rest
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::parse(1, 5, "expected prod(m1,...,mr)"))?;
        let factors = inner
            .split(',')
            .map(|m| {
                m.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::parse(1, 1, format!("bad truncation order '{m}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        return AlgebraSpec::new(factors, d);
    }
    let mut factors = Vec::new();
    let mut col = 1;
    for part in ring.split(['x', '×']) {
        let p: String = part.chars().filter(|c| !c.is_whitespace()).collect();
        let m = if p == "Q" {
            1
        } else if let Some(m) = p
            .strip_prefix("Q[t]/(t^")
            .and_then(|r| r.strip_suffix(')'))
        {
            m.parse::<usize>()
                .map_err(|_| Error::parse(1, col, format!("bad truncation order in '{part}'")))?
        } else if p == "Q[t]/(t)" {
            1
        } else {
            return Err(Error::parse(1, col, format!("unrecognised ring factor '{}'", part.trim())));
        };
        factors.push(m);
        col += part.chars().count() + 1;
    }
    AlgebraSpec::new(factors, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn spec(f: &[usize]) -> SpecRef {
        AlgebraSpec::new(f.to_vec(), int(5)).unwrap()
    }

    #[test]
    fn canonical_form() {
        let s = spec(&[3, 1]);
        let x = AlgebraElement::from_coeffs(
            &s,
            vec![vec![int(1), int(3), rat(1, 2)], vec![Rational::zero()]],
        )
        .unwrap();
        assert_eq!(x.to_string(), "[1 + 3t + 1/2 t^2 | 0]");
        assert_eq!(AlgebraElement::parse(&s, "[1 + 3t + 1/2 t^2 | 0]").unwrap(), x);
    }

    #[test]
    fn signs_and_unit_coefficients() {
        let s = spec(&[4]);
        let x = AlgebraElement::from_coeffs(&s, vec![vec![int(0), int(-1), int(1), rat(-3, 4)]]).unwrap();
        let text = x.to_string();
        assert_eq!(text, "[-t + t^2 - 3/4 t^3]");
        assert_eq!(AlgebraElement::parse(&s, &text).unwrap(), x);
        // whitespace-insensitive
        assert_eq!(AlgebraElement::parse(&s, "[ -t+t^2-3/4t^3 ]").unwrap(), x);
    }

    #[test]
    fn brackets_optional_for_one_factor() {
        let s = spec(&[1]);
        assert_eq!(
            AlgebraElement::parse(&s, "-7/3").unwrap(),
            AlgebraElement::from_rational(&s, rat(-7, 3))
        );
        assert_eq!(
            AlgebraElement::parse(&spec(&[2]), "3 - t").unwrap(),
            AlgebraElement::parse(&spec(&[2]), "[3 - t]").unwrap()
        );
        assert!(AlgebraElement::parse(&spec(&[1, 2]), "3").is_err());
    }

    #[test]
    fn parse_errors_carry_columns() {
        let s = spec(&[2]);
        match AlgebraElement::parse(&s, "[1 + t^2]") {
            Err(Error::Parse { line: 1, column, .. }) => assert_eq!(column, 9),
            other => panic!("unexpected {other:?}"),
        }
        assert!(AlgebraElement::parse(&s, "[1 | 2]").is_err());
        assert!(AlgebraElement::parse(&s, "[1/0]").is_err());
    }

    #[test]
    fn quad_roundtrip() {
        let s = spec(&[2]);
        let x = QuadElement::new(
            AlgebraElement::from_coeffs(&s, vec![vec![int(1), rat(2, 3)]]).unwrap(),
            AlgebraElement::from_coeffs(&s, vec![vec![int(0), int(-1)]]).unwrap(),
        );
        assert_eq!(x.to_string(), "[1 + 2/3 t] ; [-t]");
        assert_eq!(QuadElement::parse(&s, &x.to_string()).unwrap(), x);
    }

    #[test]
    fn spec_roundtrip() {
        let s = AlgebraSpec::new(vec![1, 2], rat(-3, 2)).unwrap();
        let text = s.to_string();
        assert_eq!(text, "prod(1,2); d=-3/2");
        assert_eq!(text.parse::<AlgebraSpec>().unwrap(), *s);
        assert!("prod(1,2); d=4".parse::<AlgebraSpec>().is_err());
    }

    #[test]
    fn cli_ring_forms() {
        assert_eq!(parse_ring("Q", int(5)).unwrap().factors(), &[1]);
        assert_eq!(parse_ring("Q[t]/(t^3)", int(5)).unwrap().factors(), &[3]);
        assert_eq!(parse_ring("Q x Q[t]/(t^2)", int(5)).unwrap().factors(), &[1, 2]);
        assert_eq!(parse_ring("prod(2,3)", int(5)).unwrap().factors(), &[2, 3]);
        assert!(parse_ring("Z", int(5)).is_err());
    }
}
