//! Writing elements of `G(R)` as products of root elements, congruence
//! levels, and the Levi splitting `G(A) = G(A, J) ⋊ G(Ā)`.

use crate::algebra::{AlgebraElement, QuadElement, RadicalLevel, SpecRef};
use crate::error::{Error, Result};
use crate::group::{left_mul_root, membership_violation, right_mul_root, Coord, GroupElement, Matrix};
use crate::random::Sampler;
use crate::roots::Root;
use crate::steinberg::{SteinbergWord, Symbol};

/// One elimination step `X_α(x)`, with `x` as a matrix entry.
struct Step {
    root: Root,
    x: QuadElement,
}

impl Step {
    fn coord(&self) -> Coord {
        if self.root.is_long() {
            debug_assert!(self.x.is_real());
            Coord::Long(self.x.re().clone())
        } else {
            Coord::Short(self.x.clone())
        }
    }

    /// `X_α(x)⁻¹ = X_α(−x)`.
    fn inverse_symbol(&self) -> Result<Symbol> {
        Symbol::new(self.root.clone(), self.coord().neg(), false)
    }
}

struct Eliminator {
    n: usize,
    m: Matrix,
    left: Vec<Step>,
    right: Vec<Step>,
}

fn long_root(n: usize, k: usize, sign: i32) -> Root {
    let mut w = vec![0; n];
    w[k] = 2 * sign;
    Root::new(w).expect("valid long root")
}

fn short_root(n: usize, a: usize, sa: i32, b: usize, sb: i32) -> Root {
    let mut w = vec![0; n];
    w[a] = sa;
    w[b] = sb;
    Root::new(w).expect("valid short root")
}

impl Eliminator {
    fn apply_left(&mut self, root: Root, x: QuadElement) {
        if x.is_zero() {
            return;
        }
        left_mul_root(&mut self.m, &root, &x);
        self.left.push(Step { root, x });
    }

    fn apply_right(&mut self, root: Root, x: QuadElement) {
        if x.is_zero() {
            return;
        }
        right_mul_root(&mut self.m, &root, &x);
        self.right.push(Step { root, x });
    }

    fn real_coefficient(x: QuadElement, what: &str) -> Result<QuadElement> {
        if !x.is_real() {
            return Err(Error::Internal(format!("{what} coefficient {x} is not in R")));
        }
        Ok(x)
    }

    /// Reduces pair `p` (rows and columns `2p`, `2p+1`) to `diag(c, 1/c̄)`.
    fn reduce_pair(&mut self, p: usize) -> Result<()> {
        let n = self.n;
        let col = 2 * p;
        let pivot_row = (col..2 * n)
            .find(|&r| self.m.get(r, col).is_unit())
            .ok_or_else(|| Error::Internal(format!("no unit in column {} below the diagonal", col + 1)))?;
        if pivot_row != col {
            let one = QuadElement::one(self.m.spec());
            // a root whose defining slot is (2p, pivot_row)
            let root = if pivot_row == col + 1 {
                long_root(n, p, 1)
            } else if pivot_row % 2 == 0 {
                short_root(n, p, 1, pivot_row / 2, -1)
            } else {
                short_root(n, p, 1, pivot_row / 2, 1)
            };
            self.apply_left(root, one);
        }
        let pivot_inv = self.m.get(col, col).invert()?;

        // clear column 2p below the pivot pair
        for j in p + 1..n {
            let x = -(self.m.get(2 * j, col) * &pivot_inv);
            self.apply_left(short_root(n, j, 1, p, -1), x);
            let x = -(self.m.get(2 * j + 1, col) * &pivot_inv);
            self.apply_left(short_root(n, p, -1, j, -1), x);
        }
        let x = Self::real_coefficient(-(self.m.get(col + 1, col) * &pivot_inv), "partner-row")?;
        self.apply_left(long_root(n, p, -1), x);

        // clear row 2p to the right of the pivot
        for j in p + 1..n {
            let x = -(&pivot_inv * self.m.get(col, 2 * j));
            self.apply_right(short_root(n, p, 1, j, -1), x);
            let x = -(&pivot_inv * self.m.get(col, 2 * j + 1));
            self.apply_right(short_root(n, p, 1, j, 1), x);
        }
        let x = Self::real_coefficient(-(&pivot_inv * self.m.get(col, col + 1)), "partner-column")?;
        self.apply_right(long_root(n, p, 1), x);
        Ok(())
    }
}

/// The defining word of `h_α(v) = w_α(v)·w_α(1)⁻¹`.
fn torus_word(root: &Root, v: &Coord) -> Result<Vec<Symbol>> {
    let spec = v.spec();
    let one = Coord::one_for(root, spec);
    let minus_one = one.neg();
    let neg = root.neg();
    Ok(vec![
        Symbol::new(root.clone(), v.clone(), false)?,
        Symbol::new(neg.clone(), v.invert()?.neg(), false)?,
        Symbol::new(root.clone(), v.clone(), false)?,
        Symbol::new(root.clone(), one.clone(), true)?,
        Symbol::new(neg, minus_one, true)?,
        Symbol::new(root.clone(), one, true)?,
    ])
}

/// Writes `diag(c_0, 1/c̄_0, …, c_{n−1}, 1/c̄_{n−1})` with `Π c_i/c̄_i = 1` as
/// a product of torus elements: `h_{e_i − e_{i+1}}(c)` moves `c` from pair `i`
/// to pair `i+1`, and the last entry is real.
fn diagonal_word(d: &Matrix, n: usize) -> Result<Vec<Symbol>> {
    let mut out = Vec::new();
    let mut carry = QuadElement::one(d.spec());
    for i in 0..n {
        let c = d.get(2 * i, 2 * i) * &carry;
        if i + 1 < n {
            if !c.is_one() {
                out.extend(torus_word(&short_root(n, i, 1, i + 1, -1), &Coord::Short(c.clone()))?);
            }
            carry = c;
        } else {
            let c = Eliminator::real_coefficient(c, "final torus")?;
            if !c.is_one() {
                out.extend(torus_word(&long_root(n, i, 1), &Coord::Long(c.re().clone()))?);
            }
        }
    }
    Ok(out)
}

/// Elimination over one local factor `Q[t]/(t^m)`.
fn decompose_local(x: &Matrix, n: usize) -> Result<Vec<Symbol>> {
    let mut e = Eliminator {
        n,
        m: x.clone(),
        left: Vec::new(),
        right: Vec::new(),
    };
    for p in 0..n {
        e.reduce_pair(p)?;
    }
    // L_k ⋯ L_1 · X · R_1 ⋯ R_m = D, so X = L_1⁻¹ ⋯ L_k⁻¹ · D · R_m⁻¹ ⋯ R_1⁻¹
    let mut out = Vec::new();
    for s in &e.left {
        out.push(s.inverse_symbol()?);
    }
    out.extend(diagonal_word(&e.m, n)?);
    for s in e.right.iter().rev() {
        out.push(s.inverse_symbol()?);
    }
    Ok(out)
}

fn embed_coord(c: &Coord, offset: usize, target: &SpecRef) -> Coord {
    match c {
        Coord::Long(x) => Coord::Long(x.embed(offset, target)),
        Coord::Short(x) => Coord::Short(x.embed(offset, target)),
    }
}

/// A word of root elements evaluating to `x`. Products of local factors are
/// handled factor by factor; each factor is reduced by unit-pivot
/// elimination and the residual diagonal is written with torus elements.
pub fn decompose(x: &GroupElement) -> Result<SteinbergWord> {
    if let Some(v) = membership_violation(x.matrix()) {
        return Err(Error::NotMember(v));
    }
    let spec = x.spec();
    let n = x.n();
    let mut symbols = Vec::new();
    for i in 0..spec.num_factors() {
        let local = spec.factor_spec(i);
        let xi = x.matrix().map(&local, |e| e.project(i, &local));
        for s in decompose_local(&xi, n)? {
            let coord = embed_coord(s.coord(), i, spec);
            symbols.push(Symbol::new(s.root().clone(), coord, s.is_inverse())?);
        }
    }
    SteinbergWord::from_symbols(n, spec, symbols)
}

/// The largest `a` with `X ≡ 1 mod J^a`, capped at the nilpotency index.
pub fn congruence_level(x: &GroupElement) -> RadicalLevel {
    let spec = x.spec();
    let top = spec.max_order();
    let id = Matrix::identity(spec, x.matrix().dim());
    let level = x
        .matrix()
        .sub(&id)
        .entries()
        .filter_map(|(_, _, e)| e.valuation())
        .min()
        .map_or(top, |v| v.min(top));
    RadicalLevel::new(level, spec).expect("level within bounds")
}

/// Outcome of [`filtration_commutator_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiltrationReport {
    pub trials: usize,
    /// Smallest level of `[g, h]` seen.
    pub min_level: usize,
}

/// Checks `[G(A, J^a), G(A, J^b)] ⊂ G(A, J^{a+b})` on random pairs built as
/// products of root elements with coordinates in `J^a` and `J^b`.
pub fn filtration_commutator_check(
    a: usize,
    b: usize,
    trials: usize,
    spec: &SpecRef,
    n: usize,
    sampler: &mut Sampler,
) -> Result<FiltrationReport> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidAlgebra("filtration levels start at 1".into()));
    }
    let top = spec.max_order();
    let expected = (a + b).min(top);
    let mut min_level = top;
    for _ in 0..trials {
        let g = sampler.word_in(n, spec, 6, a).evaluate();
        let h = sampler.word_in(n, spec, 6, b).evaluate();
        let (lg, lh) = (congruence_level(&g).get(), congruence_level(&h).get());
        if lg < a.min(top) || lh < b.min(top) {
            return Err(Error::Internal(format!("sampled levels {lg}, {lh} below {a}, {b}")));
        }
        let c = g.commutator(&h);
        if !c.is_member() {
            return Err(Error::NotMember(format!("[g, h] for levels {a}, {b}")));
        }
        let lc = congruence_level(&c).get();
        if lc < expected {
            return Err(Error::IdentityFailed(format!(
                "[g, h] has level {lc} < {expected}\ng =\n{}h =\n{}",
                g.matrix().to_text(),
                h.matrix().to_text()
            )));
        }
        min_level = min_level.min(lc);
    }
    Ok(FiltrationReport { trials, min_level })
}

/// `X = u·s` with `u ∈ G(A, J)` and `s` the degree-0 section of `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviPair {
    pub u: GroupElement,
    pub s: GroupElement,
}

/// Whether every entry of `x` is its own degree-0 part.
pub fn in_degree_zero_section(x: &GroupElement) -> bool {
    let top = RadicalLevel::new(1, x.spec()).expect("level 1 exists");
    x.matrix().entries().all(|(_, _, e)| e.reduce_mod(top) == *e)
}

pub fn levi_factor(x: &GroupElement) -> Result<LeviPair> {
    if let Some(v) = membership_violation(x.matrix()) {
        return Err(Error::NotMember(v));
    }
    let spec = x.spec();
    let one = RadicalLevel::new(1, spec)?;
    let s = x.map_entries(spec, |e| e.reduce_mod(one));
    if !s.is_member() {
        return Err(Error::Internal("degree-0 section left the group".into()));
    }
    let u = x * &s.inverse();
    if congruence_level(&u).get() < 1.min(spec.max_order()) || &u * &s != *x {
        return Err(Error::Internal("Levi factors do not recombine".into()));
    }
    Ok(LeviPair { u, s })
}

/// The degree-0 coefficients of an element of `R`, as an element of `R`.
pub fn degree_zero(x: &AlgebraElement) -> AlgebraElement {
    x.reduce_mod(RadicalLevel::new(1, x.spec()).expect("level 1 exists"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, AlgebraSpec};
    use crate::group::root_element;
    use crate::roots::roots;

    fn check_round_trip(x: &GroupElement) {
        let w = decompose(x).unwrap();
        assert_eq!(w.evaluate(), *x);
    }

    #[test]
    fn identity_decomposes_to_empty() {
        let s = AlgebraSpec::rational(int(5)).unwrap();
        assert!(decompose(&GroupElement::identity(&s, 2)).unwrap().is_empty());
    }

    #[test]
    fn root_elements_round_trip() {
        let s = AlgebraSpec::new(vec![3], int(5)).unwrap();
        let mut sampler = Sampler::new(1);
        for n in [2, 3] {
            for a in roots(n).unwrap() {
                let v = sampler.coord(&a, &s);
                check_round_trip(&root_element(&a, &v).unwrap());
            }
        }
    }

    #[test]
    fn random_products_round_trip() {
        let mut sampler = Sampler::new(2);
        for factors in [vec![1], vec![3], vec![1, 2]] {
            for d in [2, 5] {
                let s = AlgebraSpec::new(factors.clone(), int(d)).unwrap();
                for n in [2, 3] {
                    for _ in 0..3 {
                        check_round_trip(&sampler.word(n, &s, 20).evaluate());
                    }
                }
            }
        }
    }

    #[test]
    fn pivot_needs_a_row_move() {
        // w_{2e1}(1) has a zero in the (1,1) slot
        let s = AlgebraSpec::rational(int(2)).unwrap();
        let a = Root::parse("+2e1", 2).unwrap();
        let w = crate::group::weyl_element(&a, &Coord::one_for(&a, &s)).unwrap();
        check_round_trip(&w);
        let b = Root::parse("+e1-e2", 2).unwrap();
        let w = crate::group::weyl_element(&b, &Coord::one_for(&b, &s)).unwrap();
        check_round_trip(&w);
    }

    #[test]
    fn rejects_non_members() {
        let s = AlgebraSpec::rational(int(5)).unwrap();
        let mut m = Matrix::identity(&s, 4);
        m.set(0, 0, QuadElement::from_rationals(&s, int(2), int(0)));
        let g = GroupElement::from_trusted(m);
        assert!(matches!(decompose(&g), Err(Error::NotMember(_))));
    }

    #[test]
    fn congruence_levels() {
        let s = AlgebraSpec::new(vec![3], int(5)).unwrap();
        let a = Root::parse("+2e1", 2).unwrap();
        assert_eq!(congruence_level(&GroupElement::identity(&s, 2)).get(), 3);
        let t = AlgebraElement::t(&s, 0);
        assert_eq!(congruence_level(&root_element(&a, &Coord::Long(t.clone())).unwrap()).get(), 1);
        assert_eq!(congruence_level(&root_element(&a, &Coord::Long(&t * &t)).unwrap()).get(), 2);
        assert_eq!(congruence_level(&root_element(&a, &Coord::one_for(&a, &s)).unwrap()).get(), 0);
    }

    #[test]
    fn filtration_examples() {
        let mut sampler = Sampler::new(3);
        let dual = AlgebraSpec::new(vec![2], int(5)).unwrap();
        let r = filtration_commutator_check(1, 1, 5, &dual, 2, &mut sampler).unwrap();
        assert_eq!(r.min_level, 2);
        let cubic = AlgebraSpec::new(vec![3], int(5)).unwrap();
        let r = filtration_commutator_check(1, 1, 5, &cubic, 2, &mut sampler).unwrap();
        assert!(r.min_level >= 2);
        let r = filtration_commutator_check(2, 2, 5, &cubic, 2, &mut sampler).unwrap();
        assert_eq!(r.min_level, 3);
    }

    #[test]
    fn levi_examples() {
        let s = AlgebraSpec::new(vec![2], int(5)).unwrap();
        let a = Root::parse("+2e1", 2).unwrap();
        let t = AlgebraElement::t(&s, 0);
        let one = AlgebraElement::one(&s);
        let x = root_element(&a, &Coord::Long(&one + &t)).unwrap();
        let pair = levi_factor(&x).unwrap();
        assert_eq!(pair.u, root_element(&a, &Coord::Long(t.clone())).unwrap());
        assert_eq!(pair.s, root_element(&a, &Coord::Long(one)).unwrap());

        let q = AlgebraSpec::rational(int(5)).unwrap();
        let mut sampler = Sampler::new(4);
        let y = sampler.word(2, &q, 10).evaluate();
        let pair = levi_factor(&y).unwrap();
        assert!(pair.u.is_identity());
        assert_eq!(pair.s, y);

        let z = sampler.word_in(2, &s, 8, 1).evaluate();
        let pair = levi_factor(&z).unwrap();
        assert_eq!(pair.u, z);
        assert!(pair.s.is_identity());
    }
}
