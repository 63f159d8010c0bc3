//! Words in the Steinberg group: symbols `X̃_α(v)^{±1}`, the rewriting steps
//! (R1) and (R2), evaluation to matrices, change of coefficients along ring
//! homomorphisms, and splitting over products `A × B`.

use std::fmt;

use crate::algebra::{rat, same_spec, AlgebraElement, AlgebraSpec, QuadElement, Rational, SpecRef};
use crate::constants::{closed_table, expand_closed, NMap};
use crate::error::{Error, Result};
use crate::group::{right_mul_root, Coord, GroupElement, Matrix};
use crate::roots::Root;

/// `X̃_α(v)` or its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symbol {
    root: Root,
    coord: Coord,
    inverse: bool,
}

impl Symbol {
    pub fn new(root: Root, coord: Coord, inverse: bool) -> Result<Self> {
        coord.check_kind(&root)?;
        Ok(Symbol {
            root,
            coord,
            inverse,
        })
    }

    pub fn root(&self) -> &Root {
        &self.root
    }

    pub fn coord(&self) -> &Coord {
        &self.coord
    }

    pub fn is_inverse(&self) -> bool {
        self.inverse
    }

    /// The coordinate `c` with `symbol = X̃_α(c)` modulo (R1).
    pub fn effective(&self) -> Coord {
        if self.inverse {
            self.coord.neg()
        } else {
            self.coord.clone()
        }
    }

    pub fn inverted(&self) -> Symbol {
        Symbol {
            inverse: !self.inverse,
            ..self.clone()
        }
    }

    fn cancels(&self, other: &Symbol) -> bool {
        self.inverse != other.inverse && self.root == other.root && self.coord == other.coord
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X[{}]({})", self.root, self.coord.to_token())?;
        if self.inverse {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

/// A freely reduced word over a fixed rank and coefficient algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinbergWord {
    n: usize,
    spec: SpecRef,
    symbols: Vec<Symbol>,
}

impl SteinbergWord {
    pub fn empty(n: usize, spec: &SpecRef) -> Self {
        SteinbergWord {
            n,
            spec: spec.clone(),
            symbols: Vec::new(),
        }
    }

    pub fn from_symbols(n: usize, spec: &SpecRef, symbols: impl IntoIterator<Item = Symbol>) -> Result<Self> {
        let mut w = Self::empty(n, spec);
        for s in symbols {
            if s.root.rank() != n {
                return Err(Error::InvalidRoot(format!("{} has rank {} in a rank-{n} word", s.root, s.root.rank())));
            }
            if !same_spec(s.coord.spec(), spec) {
                return Err(Error::SpecMismatch(format!("coordinate of {} lives over {}", s.root, s.coord.spec())));
            }
            w.push(s);
        }
        Ok(w)
    }

    pub fn generator(root: &Root, coord: &Coord) -> Result<Self> {
        let s = Symbol::new(root.clone(), coord.clone(), false)?;
        Self::from_symbols(root.rank(), coord.spec(), [s])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spec(&self) -> &SpecRef {
        &self.spec
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Appends a symbol, cancelling it against an inverse at the end.
    pub fn push(&mut self, s: Symbol) {
        if self.symbols.last().is_some_and(|last| last.cancels(&s)) {
            self.symbols.pop();
        } else {
            self.symbols.push(s);
        }
    }

    pub fn concat(&self, other: &SteinbergWord) -> Result<SteinbergWord> {
        self.check_compatible(other)?;
        let mut w = self.clone();
        for s in &other.symbols {
            w.push(s.clone());
        }
        Ok(w)
    }

    pub fn inverse(&self) -> SteinbergWord {
        SteinbergWord {
            n: self.n,
            spec: self.spec.clone(),
            symbols: self.symbols.iter().rev().map(Symbol::inverted).collect(),
        }
    }

    /// `a b a⁻¹ b⁻¹`.
    pub fn commutator(a: &SteinbergWord, b: &SteinbergWord) -> Result<SteinbergWord> {
        a.concat(b)?.concat(&a.inverse())?.concat(&b.inverse())
    }

    fn check_compatible(&self, other: &SteinbergWord) -> Result<()> {
        if self.n != other.n || !same_spec(&self.spec, &other.spec) {
            return Err(Error::SpecMismatch(format!(
                "words over rank {} / {} and rank {} / {}",
                self.n, self.spec, other.n, other.spec
            )));
        }
        Ok(())
    }

    /// `π_R`: the product of the root elements.
    pub fn evaluate(&self) -> GroupElement {
        let mut m = Matrix::identity(&self.spec, 2 * self.n);
        for s in &self.symbols {
            right_mul_root(&mut m, &s.root, &s.effective().as_quad());
        }
        GroupElement::from_trusted(m)
    }

    /// (R1) everywhere: merges runs of equal roots and drops zero coordinates.
    pub fn apply_r1(&self) -> SteinbergWord {
        let mut out: Vec<Symbol> = Vec::with_capacity(self.symbols.len());
        for s in &self.symbols {
            let merged = match out.last() {
                Some(last) if last.root == s.root => {
                    let sum = last.effective().add(&s.effective()).expect("same root, same kind");
                    out.pop();
                    Some(sum)
                }
                _ => None,
            };
            let (coord, inverse) = match merged {
                Some(c) => (c, false),
                None => (s.coord.clone(), s.inverse),
            };
            if !coord.is_zero() {
                out.push(Symbol {
                    root: s.root.clone(),
                    coord,
                    inverse,
                });
            }
        }
        SteinbergWord {
            n: self.n,
            spec: self.spec.clone(),
            symbols: out,
        }
    }

    /// (R2) at `pos`. A commutator pattern `a b a⁻¹ b⁻¹` starting at `pos` is
    /// replaced by its chain expansion; otherwise the adjacent pair
    /// `X̃_α(u) X̃_β(v)` becomes `[X̃_α(u), X̃_β(v)]·X̃_β(v) X̃_α(u)` with the
    /// commutator expanded. Pairs with `α = ±β` are not rewritten.
    pub fn apply_r2_at(&self, pos: usize) -> Result<SteinbergWord> {
        let s = &self.symbols;
        let inapplicable = |reason: &str| Error::RewriteInapplicable {
            position: pos,
            reason: reason.to_string(),
        };
        if pos + 2 > s.len() {
            return Err(inapplicable("fewer than two symbols"));
        }
        let (a, b) = (&s[pos], &s[pos + 1]);
        if a.root == b.root {
            return Err(inapplicable("equal roots are merged by (R1)"));
        }
        if a.root == b.root.neg() {
            return Err(inapplicable("no relation for opposite roots"));
        }
        let (ua, vb) = (a.effective(), b.effective());
        let expansion = expand_closed(&a.root, &b.root, &ua, &vb)?;
        let chain = expansion
            .terms
            .into_iter()
            .map(|(t, c)| Symbol::new(t.root, c, false));

        let is_commutator = s.len() >= pos + 4 && {
            let (c, d) = (&s[pos + 2], &s[pos + 3]);
            c.root == a.root && d.root == b.root && c.effective() == ua.neg() && d.effective() == vb.neg()
        };
        let mut out: Vec<Symbol> = s[..pos].to_vec();
        for sym in chain {
            out.push(sym?);
        }
        let rest = if is_commutator {
            pos + 4
        } else {
            out.push(b.clone());
            out.push(a.clone());
            pos + 2
        };
        out.extend_from_slice(&s[rest..]);
        Self::from_symbols(self.n, &self.spec, out)
    }

    /// `V_α(f)` on every coordinate.
    pub fn map_coords(&self, f: &RingMap) -> Result<SteinbergWord> {
        if !same_spec(&self.spec, &f.source) {
            return Err(Error::SpecMismatch(format!("word over {}, map from {}", self.spec, f.source)));
        }
        let symbols = self.symbols.iter().map(|s| Symbol {
            root: s.root.clone(),
            coord: s.coord.map_real(|x| f.apply(x)),
            inverse: s.inverse,
        });
        Self::from_symbols(self.n, &f.target, symbols)
    }

    /// Splits the word into consecutive commutators `a b a⁻¹ b⁻¹` of single
    /// symbols, if it has that shape.
    pub fn commutator_blocks(&self) -> Option<Vec<(Symbol, Symbol)>> {
        if !self.symbols.len().is_multiple_of(4) {
            return None;
        }
        self.symbols
            .chunks(4)
            .map(|c| {
                (c[2] == c[0].inverted() && c[3] == c[1].inverted()).then(|| (c[0].clone(), c[1].clone()))
            })
            .collect()
    }

    pub fn to_text(&self) -> String {
        let tokens: Vec<String> = self.symbols.iter().map(|s| s.to_string()).collect();
        tokens.join(" ")
    }

    /// Reads whitespace-separated `X[<root>](<coord>)` tokens, each optionally
    /// followed by `^-1`. Lines starting with `#` are skipped.
    pub fn parse(text: &str, n: usize, spec: &SpecRef) -> Result<SteinbergWord> {
        let mut symbols = Vec::new();
        for (k, line) in text.lines().enumerate() {
            if line.trim_start().starts_with('#') {
                continue;
            }
            parse_line(line, k + 1, n, spec, &mut symbols)?;
        }
        Self::from_symbols(n, spec, symbols)
    }
}

impl fmt::Display for SteinbergWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn parse_line(line: &str, lineno: usize, n: usize, spec: &SpecRef, out: &mut Vec<Symbol>) -> Result<()> {
    let chars: Vec<char> = line.chars().collect();
    let err = |col: usize, msg: &str| Error::parse(lineno, col + 1, msg);
    let mut i = 0;
    while i < chars.len() {
        if chars[i].is_whitespace() {
            i += 1;
            continue;
        }
        if chars.get(i) != Some(&'X') || chars.get(i + 1) != Some(&'[') {
            return Err(err(i, "expected 'X['"));
        }
        let root_start = i + 2;
        let root_end = (root_start..chars.len())
            .find(|&k| chars[k] == ']')
            .ok_or_else(|| err(root_start, "unterminated root"))?;
        let root_text: String = chars[root_start..root_end].iter().collect();
        let root = Root::parse(&root_text, n).map_err(|e| err(root_start, &e.to_string()))?;
        if chars.get(root_end + 1) != Some(&'(') {
            return Err(err(root_end + 1, "expected '('"));
        }
        let coord_start = root_end + 2;
        let mut depth = 1;
        let mut k = coord_start;
        while k < chars.len() {
            match chars[k] {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        break;
                    }
                }
                _ => {}
            }
            k += 1;
        }
        if depth != 0 {
            return Err(err(coord_start, "unterminated coordinate"));
        }
        let coord_text: String = chars[coord_start..k].iter().collect();
        let coord = Coord::parse(&root, spec, &coord_text).map_err(|e| match e {
            Error::Parse { column, message, .. } => Error::parse(lineno, coord_start + column, message),
            other => other,
        })?;
        i = k + 1;
        let rest: String = chars[i..].iter().take(3).collect();
        let inverse = if rest == "^-1" {
            i += 3;
            true
        } else if rest.starts_with("^1") {
            i += 2;
            false
        } else {
            false
        };
        if i < chars.len() && !chars[i].is_whitespace() {
            return Err(err(i, "expected whitespace between symbols"));
        }
        out.push(Symbol::new(root, coord, inverse).map_err(|e| err(root_start, &e.to_string()))?);
    }
    Ok(())
}

/// A unital Q-algebra homomorphism between products of truncated polynomial
/// rings. Target factor `k` reads source factor `route` and sends `t` to
/// `image` (a polynomial without constant term).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMap {
    source: SpecRef,
    target: SpecRef,
    routes: Vec<(usize, Vec<Rational>)>,
}

fn poly_mul(a: &[Rational], b: &[Rational], m: usize) -> Vec<Rational> {
    let mut out = vec![Rational::from_integer(0.into()); m];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if i + j < m {
                out[i + j] += x * y;
            }
        }
    }
    out
}

impl RingMap {
    /// Checks `image(0) = 0` and `image^{m_source} = 0`, which make
    /// `t ↦ image` well defined on `Q[t]/(t^{m_source})`.
    pub fn new(source: &SpecRef, target: &SpecRef, routes: Vec<(usize, Vec<Rational>)>) -> Result<Self> {
        if source.d() != target.d() {
            return Err(Error::InvalidRingMap("discriminants differ".into()));
        }
        if routes.len() != target.num_factors() {
            return Err(Error::InvalidRingMap(format!(
                "{} routes for {} target factors",
                routes.len(),
                target.num_factors()
            )));
        }
        for (k, (i, image)) in routes.iter().enumerate() {
            let m = target.factors()[k];
            let Some(&mi) = source.factors().get(*i) else {
                return Err(Error::InvalidRingMap(format!("no source factor {i}")));
            };
            if image.len() != m {
                return Err(Error::InvalidRingMap(format!("image in factor {k} needs {m} coefficients")));
            }
            if image[0] != Rational::from_integer(0.into()) {
                return Err(Error::InvalidRingMap(format!("image of t in factor {k} is not nilpotent")));
            }
            let mut power = vec![Rational::from_integer(0.into()); m];
            power[0] = Rational::from_integer(1.into());
            for _ in 0..mi {
                power = poly_mul(&power, image, m);
            }
            if power.iter().any(|c| *c != Rational::from_integer(0.into())) {
                return Err(Error::InvalidRingMap(format!(
                    "image of t in factor {k} does not satisfy t^{mi} = 0"
                )));
            }
        }
        Ok(RingMap {
            source: source.clone(),
            target: target.clone(),
            routes,
        })
    }

    pub fn identity(spec: &SpecRef) -> Self {
        let routes = spec
            .factors()
            .iter()
            .enumerate()
            .map(|(i, &m)| {
                let mut t = vec![Rational::from_integer(0.into()); m];
                if m > 1 {
                    t[1] = Rational::from_integer(1.into());
                }
                (i, t)
            })
            .collect();
        RingMap {
            source: spec.clone(),
            target: spec.clone(),
            routes,
        }
    }

    pub fn source(&self) -> &SpecRef {
        &self.source
    }

    pub fn target(&self) -> &SpecRef {
        &self.target
    }

    pub fn apply(&self, x: &AlgebraElement) -> AlgebraElement {
        let coeffs = self
            .routes
            .iter()
            .zip(self.target.factors())
            .map(|((i, image), &m)| {
                let mut acc = vec![Rational::from_integer(0.into()); m];
                let mut power = vec![Rational::from_integer(0.into()); m];
                power[0] = Rational::from_integer(1.into());
                for c in x.factor(*i) {
                    for (a, p) in acc.iter_mut().zip(&power) {
                        *a += c * p;
                    }
                    power = poly_mul(&power, image, m);
                }
                acc
            })
            .collect();
        AlgebraElement::from_coeffs(&self.target, coeffs).expect("shape matches target")
    }

    pub fn apply_quad(&self, x: &QuadElement) -> QuadElement {
        QuadElement::new(self.apply(x.re()), self.apply(x.im()))
    }

    /// The entrywise image of a matrix.
    pub fn apply_matrix(&self, g: &GroupElement) -> GroupElement {
        g.map_entries(&self.target, |x| self.apply_quad(x))
    }
}

fn word_of(n: usize, spec: &SpecRef, items: &[(&Root, Coord, bool)]) -> Result<SteinbergWord> {
    let symbols = items
        .iter()
        .map(|(r, c, inv)| Symbol::new((*r).clone(), c.clone(), *inv))
        .collect::<Result<Vec<_>>>()?;
    SteinbergWord::from_symbols(n, spec, symbols)
}

fn commutator_of(n: usize, spec: &SpecRef, a: (&Root, Coord), b: (&Root, Coord)) -> Result<SteinbergWord> {
    word_of(
        n,
        spec,
        &[(a.0, a.1.clone(), false), (b.0, b.1.clone(), false), (a.0, a.1, true), (b.0, b.1, true)],
    )
}

/// A product of commutators of generators with roots other than `α` that
/// evaluates to `X_α(v)`.
///
/// Long `α = 2εe_i` is `γ_1 + γ_2` with `γ_1 = εe_i − e_j`, `γ_2 = εe_i + e_j`,
/// and `[X̃_γ1(1), X̃_γ2(w)] = X̃_α(±2w)`. Short `α = γ_1 + γ_2` with `γ_1`
/// long and `γ_2` short uses two commutators whose `X_{γ_1+2γ_2}` parts cancel.
pub fn express_as_commutator(alpha: &Root, v: &Coord) -> Result<SteinbergWord> {
    v.check_kind(alpha)?;
    let n = alpha.rank();
    let spec = v.spec();
    if v.is_zero() {
        return Ok(SteinbergWord::empty(n, spec));
    }
    let support = alpha.support();
    if alpha.is_long() {
        let (i, c) = support[0];
        let eps = c.signum();
        let j = if i == 0 { 1 } else { 0 };
        let mut w1 = vec![0; n];
        w1[i] = eps;
        w1[j] = -1;
        let mut w2 = w1.clone();
        w2[j] = 1;
        let (g1, g2) = (Root::new(w1)?, Root::new(w2)?);
        let map = closed_table(&g1, &g2)?[0].map;
        let one = Coord::one_for(&g1, spec);
        let Coord::Long(c) = map.eval(&one, &Coord::one_for(&g2, spec)) else {
            return Err(Error::Internal("trace map returned a short coordinate".into()));
        };
        let c = c
            .as_scalar()
            .ok_or_else(|| Error::Internal("N11(1, 1) is not a scalar".into()))?;
        let Coord::Long(target) = v else { unreachable!() };
        let w = Coord::Short(QuadElement::real(target.scale(&(Rational::from_integer(1.into()) / c))));
        commutator_of(n, spec, (&g1, one), (&g2, w))
    } else {
        let [(a, sa), (b, sb)] = support[..] else {
            unreachable!("short roots have two indices")
        };
        let mut w1 = vec![0; n];
        w1[a] = 2 * sa;
        let mut w2 = vec![0; n];
        w2[a] = -sa;
        w2[b] = sb;
        let (g1, g2) = (Root::new(w1)?, Root::new(w2)?);
        let NMap::Product {
            sign, conj_second, ..
        } = closed_table(&g1, &g2)?[0].map
        else {
            return Err(Error::Internal("unexpected map for a long/short pair".into()));
        };
        let Coord::Short(target) = v else { unreachable!() };
        let signed = match sign {
            crate::algebra::Sign::Plus => target.clone(),
            crate::algebra::Sign::Minus => -target,
        };
        let w = if conj_second { signed.conj() } else { signed };
        let long = |c: Rational| Coord::Long(AlgebraElement::from_rational(spec, c));
        // N11 parts: 2·N + (−1/2)·2N = N; norm parts: 2·|w|² − (1/2)·4|w|² = 0
        let first = commutator_of(n, spec, (&g1, long(rat(2, 1))), (&g2, Coord::Short(w.clone())))?;
        let second = commutator_of(n, spec, (&g1, long(rat(-1, 2))), (&g2, Coord::Short(w.scale(&rat(2, 1)))))?;
        first.concat(&second)
    }
}

fn restrict_coord(c: &Coord, range: std::ops::Range<usize>, target: &SpecRef) -> Coord {
    match c {
        Coord::Long(x) => Coord::Long(x.restrict(range, target)),
        Coord::Short(x) => Coord::Short(x.restrict(range, target)),
    }
}

fn embed_coord(c: &Coord, offset: usize, target: &SpecRef) -> Coord {
    match c {
        Coord::Long(x) => Coord::Long(x.embed(offset, target)),
        Coord::Short(x) => Coord::Short(x.embed(offset, target)),
    }
}

/// `p`: projects a word over `A × B` (split after `k` factors) to words over
/// `A` and `B`, dropping symbols whose projected coordinate is zero.
pub fn split_word(w: &SteinbergWord, k: usize) -> Result<(SteinbergWord, SteinbergWord)> {
    let (sa, sb) = w.spec.split_at(k)?;
    let total = w.spec.num_factors();
    let project = |range: std::ops::Range<usize>, target: &SpecRef| {
        let symbols = w.symbols.iter().filter_map(|s| {
            let c = restrict_coord(&s.coord, range.clone(), target);
            (!c.is_zero()).then(|| Symbol {
                root: s.root.clone(),
                coord: c,
                inverse: s.inverse,
            })
        });
        SteinbergWord::from_symbols(w.n, target, symbols)
    };
    Ok((project(0..k, &sa)?, project(k..total, &sb)?))
}

/// `s`: the word over `A × B` whose image under `p` is `(wa, wb)`.
pub fn join_words(wa: &SteinbergWord, wb: &SteinbergWord) -> Result<SteinbergWord> {
    if wa.n != wb.n {
        return Err(Error::SpecMismatch(format!("ranks {} and {}", wa.n, wb.n)));
    }
    let target = AlgebraSpec::product(&wa.spec, &wb.spec)?;
    let offset = wa.spec.num_factors();
    let embed = |w: &SteinbergWord, at: usize| {
        w.symbols
            .iter()
            .map(|s| Symbol {
                root: s.root.clone(),
                coord: embed_coord(&s.coord, at, &target),
                inverse: s.inverse,
            })
            .collect::<Vec<_>>()
    };
    let mut symbols = embed(wa, 0);
    symbols.extend(embed(wb, offset));
    SteinbergWord::from_symbols(wa.n, &target, symbols)
}
