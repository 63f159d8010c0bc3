//! Generalized Chevalley coefficients `N_ij^{αβ}`: a closed-form table, a
//! brute-force matrix oracle, the Weyl twist `φ`, and the identities used to
//! identify rank-one subgroups.

use std::fmt;

use crate::algebra::{rat, AlgebraElement, QuadElement, Rational, Sign, SpecRef};
use crate::error::{Error, Result};
use crate::group::{
    right_mul_root, root_element, root_slots, torus_element, weyl_element, Coord, GroupElement,
    Matrix, Slot,
};
use crate::random::Sampler;
use crate::roots::{chain, reflect, roots, ChainTerm, Root};

/// Shape of one coefficient map, with `u` the first and `v` the second argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NMap {
    /// `±u_a·v_b`.
    Product {
        sign: Sign,
        conj_first: bool,
        conj_second: bool,
    },
    /// `±Tr(u_a·v)`, both arguments short.
    Trace { sign: Sign, conj_first: bool },
    /// `±(long)·(short)·(short)‾`; degree two in the short argument.
    Norm { sign: Sign, short_first: bool },
}

fn conj_if(x: &QuadElement, c: bool) -> QuadElement {
    if c {
        x.conj()
    } else {
        x.clone()
    }
}

fn signed(x: QuadElement, s: Sign) -> QuadElement {
    match s {
        Sign::Plus => x,
        Sign::Minus => -x,
    }
}

impl NMap {
    pub fn eval(&self, u: &Coord, v: &Coord) -> Coord {
        let (qu, qv) = (u.as_quad(), v.as_quad());
        match *self {
            NMap::Product {
                sign,
                conj_first,
                conj_second,
            } => Coord::Short(signed(
                &conj_if(&qu, conj_first) * &conj_if(&qv, conj_second),
                sign,
            )),
            NMap::Trace { sign, conj_first } => {
                let t = (&conj_if(&qu, conj_first) * &qv).trace();
                Coord::Long(signed(QuadElement::real(t), sign).into_parts().0)
            }
            NMap::Norm { sign, short_first } => {
                let (long, short) = if short_first { (&qv, &qu) } else { (&qu, &qv) };
                let x = long.re() * &short.norm();
                Coord::Long(signed(QuadElement::real(x), sign).into_parts().0)
            }
        }
    }

    /// Degrees `(i, j)` of homogeneity in `u` and `v`.
    pub fn degree(&self) -> (u32, u32) {
        match *self {
            NMap::Norm {
                short_first: true, ..
            } => (2, 1),
            NMap::Norm {
                short_first: false, ..
            } => (1, 2),
            _ => (1, 1),
        }
    }
}

impl fmt::Display for NMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bar = |c: bool| if c { "bar" } else { "" };
        let minus = |s: Sign| if s == Sign::Minus { "-" } else { "" };
        match *self {
            NMap::Product {
                sign,
                conj_first,
                conj_second,
            } => write!(f, "{}u{}*v{}", minus(sign), bar(conj_first), bar(conj_second)),
            NMap::Trace { sign, conj_first } => {
                write!(f, "{}Tr(u{}*v)", minus(sign), bar(conj_first))
            }
            NMap::Norm {
                sign,
                short_first: true,
            } => write!(f, "{}v*u*ubar", minus(sign)),
            NMap::Norm {
                sign,
                short_first: false,
            } => write!(f, "{}u*v*vbar", minus(sign)),
        }
    }
}

/// One entry of the closed-form table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedTerm {
    pub term: ChainTerm,
    pub map: NMap,
}

/// `[X_α(u), X_β(v)] = Π X_{iα+jβ}(c_ij)`, in chain order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorExpansion {
    pub terms: Vec<(ChainTerm, Coord)>,
}

impl CommutatorExpansion {
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn evaluate(&self, spec: &SpecRef, n: usize) -> Result<GroupElement> {
        let mut m = Matrix::identity(spec, 2 * n);
        for (t, c) in &self.terms {
            c.check_kind(&t.root)?;
            right_mul_root(&mut m, &t.root, &c.as_quad());
        }
        Ok(GroupElement::from_trusted(m))
    }

    /// For two-term expansions, whether the two factors commute as matrices.
    pub fn terms_commute(&self) -> Result<bool> {
        if self.terms.len() < 2 {
            return Ok(true);
        }
        let a = root_element(&self.terms[0].0.root, &self.terms[0].1)?;
        let b = root_element(&self.terms[1].0.root, &self.terms[1].1)?;
        Ok(&a * &b == &b * &a)
    }
}

/// The parts of `X_α(x) − 1` that meet at a shared index: `AB[P,R]` needs an
/// `α`-slot `(P,Q)` followed by a `β`-slot `(Q,R)`.
fn matches(a: &[Slot], b: &[Slot], p: usize, r: usize) -> Vec<(Slot, Slot)> {
    let mut out = Vec::new();
    for sa in a {
        for sb in b {
            if sa.row == p && sa.col == sb.row && sb.col == r {
                out.push((*sa, *sb));
            }
        }
    }
    out
}

/// Short + short = short: the coefficient is a signed product with
/// conjugations fixed by which matrix slots meet.
fn product_rule(alpha: &Root, beta: &Root, gamma: &Root) -> Result<NMap> {
    let (sa, sb) = (root_slots(alpha), root_slots(beta));
    for g in root_slots(gamma) {
        let ab = matches(&sa, &sb, g.row, g.col);
        let ba = matches(&sb, &sa, g.row, g.col);
        let (sign, ka, kb) = match (&ab[..], &ba[..]) {
            ([(x, y)], []) => (Sign::Plus, x.form, y.form),
            ([], [(y, x)]) => (Sign::Minus, x.form, y.form),
            _ => continue,
        };
        return Ok(NMap::Product {
            sign: sign * ka.sign * kb.sign * g.form.sign,
            conj_first: ka.conj ^ g.form.conj,
            conj_second: kb.conj ^ g.form.conj,
        });
    }
    Err(Error::Internal(format!("no slot product for ({alpha}, {beta})")))
}

/// Sign of the weight of `r` at index `k`.
fn weight_sign(r: &Root, k: usize) -> Sign {
    Sign::from_i32(r.weights()[k].signum())
}

/// Short `ε(e_i − e_j)` (i < j) against short `ω(e_i + e_j)`: `±ωTr(u_{−εω}v)`.
fn trace_rule(diff: &Root, sum: &Root, diff_first: bool) -> NMap {
    let support = diff.support();
    let eps = weight_sign(diff, support[0].0);
    let omega = weight_sign(sum, support[0].0);
    NMap::Trace {
        sign: if diff_first { omega } else { omega.flip() },
        conj_first: eps * omega == Sign::Plus,
    }
}

/// Short `εe_i + ωe_j` against long `−2εe_i`.
fn long_short_rules(short: &Root, long: &Root, short_first: bool) -> Vec<NMap> {
    let (i, li) = long.support()[0];
    let eps = Sign::from_i32(-li.signum());
    let (j, _) = *short
        .support()
        .iter()
        .find(|(k, _)| *k != i)
        .expect("short roots have two indices");
    let omega = weight_sign(short, j);
    // c_ij = 1 for i < j, and u_{−c} is the conjugate exactly then
    let conj = i < j;
    if short_first {
        vec![
            NMap::Product {
                sign: omega,
                conj_first: conj,
                conj_second: false,
            },
            NMap::Norm {
                sign: (eps * omega).flip(),
                short_first: true,
            },
        ]
    } else {
        vec![
            NMap::Product {
                sign: omega.flip(),
                conj_first: false,
                conj_second: conj,
            },
            NMap::Norm {
                sign: eps * omega,
                short_first: false,
            },
        ]
    }
}

/// The closed-form coefficient maps for `(α, β)`, in chain order; empty when
/// `X_α` and `X_β` commute.
pub fn closed_table(alpha: &Root, beta: &Root) -> Result<Vec<ClosedTerm>> {
    let terms = chain(alpha, beta)?;
    if terms.is_empty() {
        return Ok(Vec::new());
    }
    let maps = match (alpha.is_long(), beta.is_long()) {
        (false, false) => {
            let gamma = &terms[0].root;
            if gamma.is_long() {
                let alpha_is_diff = alpha.weights().iter().sum::<i32>() == 0;
                if alpha_is_diff {
                    vec![trace_rule(alpha, beta, true)]
                } else {
                    vec![trace_rule(beta, alpha, false)]
                }
            } else {
                vec![product_rule(alpha, beta, gamma)?]
            }
        }
        (false, true) => long_short_rules(alpha, beta, true),
        (true, false) => long_short_rules(beta, alpha, false),
        (true, true) => unreachable!("two long roots never form a chain"),
    };
    debug_assert_eq!(maps.len(), terms.len());
    Ok(terms
        .into_iter()
        .zip(maps)
        .map(|(term, map)| ClosedTerm { term, map })
        .collect())
}

/// Evaluates the closed-form table.
pub fn expand_closed(alpha: &Root, beta: &Root, u: &Coord, v: &Coord) -> Result<CommutatorExpansion> {
    u.check_kind(alpha)?;
    v.check_kind(beta)?;
    Ok(CommutatorExpansion {
        terms: closed_table(alpha, beta)?
            .into_iter()
            .map(|c| {
                let x = c.map.eval(u, v);
                (c.term, x)
            })
            .collect(),
    })
}

/// `[X_α(u), X_β(v)]` as a matrix.
pub fn commutator_matrix(alpha: &Root, beta: &Root, u: &Coord, v: &Coord) -> Result<Matrix> {
    u.check_kind(alpha)?;
    v.check_kind(beta)?;
    let (qu, qv) = (u.as_quad(), v.as_quad());
    let mut m = Matrix::identity(u.spec(), 2 * alpha.rank());
    right_mul_root(&mut m, alpha, &qu);
    right_mul_root(&mut m, beta, &qv);
    right_mul_root(&mut m, alpha, &-&qu);
    right_mul_root(&mut m, beta, &-&qv);
    Ok(m)
}

/// Reads each chain term's coordinate from the commutator matrix and checks
/// that the product of the terms rebuilds it exactly.
pub fn expand_bruteforce(alpha: &Root, beta: &Root, u: &Coord, v: &Coord) -> Result<CommutatorExpansion> {
    let terms = chain(alpha, beta)?;
    let c = commutator_matrix(alpha, beta, u, v)?;
    let fail = |detail: String| Error::Reconstruction {
        alpha: alpha.to_string(),
        beta: beta.to_string(),
        detail,
    };
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let s = root_slots(&t.root)[0];
        let x = c.get(s.row, s.col).clone();
        let coord = if t.root.is_long() {
            if !x.is_real() {
                return Err(fail(format!("long term {} read a non-real entry {x}", t.root)));
            }
            Coord::Long(x.into_parts().0)
        } else {
            Coord::Short(x)
        };
        out.push((t, coord));
    }
    let expansion = CommutatorExpansion { terms: out };
    let rebuilt = expansion.evaluate(u.spec(), alpha.rank())?;
    if *rebuilt.matrix() != c {
        return Err(fail("product of extracted terms differs from the commutator".into()));
    }
    Ok(expansion)
}

/// Solves `N_11^{αβ}(u, v) = w`.
pub fn n11_preimage(alpha: &Root, beta: &Root, w: &Coord) -> Result<(Coord, Coord)> {
    let table = closed_table(alpha, beta)?;
    let first = table
        .iter()
        .find(|c| c.term.i == 1 && c.term.j == 1)
        .ok_or_else(|| Error::Internal(format!("no N11 for ({alpha}, {beta})")))?;
    w.check_kind(&first.term.root)?;
    let spec = w.spec();
    let qw = w.as_quad();
    Ok(match first.map {
        NMap::Product {
            sign,
            conj_first,
            conj_second,
        } => {
            if beta.is_short() {
                let v = conj_if(&signed(qw, sign), conj_second);
                (Coord::one_for(alpha, spec), Coord::Short(v))
            } else {
                let u = conj_if(&signed(qw, sign), conj_first);
                (Coord::Short(u), Coord::one_for(beta, spec))
            }
        }
        NMap::Trace { sign, .. } => {
            let half = signed(qw, sign).scale(&rat(1, 2));
            (Coord::one_for(alpha, spec), Coord::Short(half))
        }
        NMap::Norm { .. } => unreachable!("N11 is never a norm map"),
    })
}

/// `φ` in `w_α(1)·X_β(v)·w_α(1)⁻¹ = X_{s_α β}(φv)`: `φv = sign·v` or `sign·v̄`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeylTwist {
    pub sign: Sign,
    pub conjugate: bool,
}

impl WeylTwist {
    pub fn apply(&self, v: &Coord) -> Coord {
        let c = if self.conjugate {
            v.delta_conj(Sign::Minus)
        } else {
            v.clone()
        };
        match self.sign {
            Sign::Plus => c,
            Sign::Minus => c.neg(),
        }
    }
}

impl fmt::Display for WeylTwist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign == Sign::Minus { "-" } else { "+" };
        write!(f, "{s}{}", if self.conjugate { "vbar" } else { "v" })
    }
}

fn conjugated(w: &GroupElement, w_inv: &GroupElement, beta: &Root, v: &Coord) -> Result<Matrix> {
    Ok((&(w * &root_element(beta, v)?) * w_inv).into_matrix())
}

/// Infers the twist from probe coordinates and confirms it on `checks`
/// further random coordinates by full matrix comparison.
pub fn weyl_twist(
    alpha: &Root,
    beta: &Root,
    spec: &SpecRef,
    sampler: &mut Sampler,
    checks: usize,
) -> Result<WeylTwist> {
    let target = reflect(alpha, beta);
    let w = weyl_element(alpha, &Coord::one_for(alpha, spec))?;
    let w_inv = w.inverse();
    let zero = Rational::from_integer(0.into());
    let one = Rational::from_integer(1.into());
    let probes: Vec<Coord> = if beta.is_long() {
        vec![Coord::Long(AlgebraElement::one(spec))]
    } else {
        vec![
            Coord::Short(QuadElement::from_rationals(spec, one.clone(), zero.clone())),
            Coord::Short(QuadElement::from_rationals(spec, zero, one)),
        ]
    };
    let defining = root_slots(&target)[0];
    let mut images = Vec::with_capacity(probes.len());
    for p in &probes {
        let m = conjugated(&w, &w_inv, beta, p)?;
        images.push((m.get(defining.row, defining.col).clone(), m));
    }
    let no_twist = || Error::NoTwist {
        alpha: alpha.to_string(),
        beta: beta.to_string(),
    };
    let conj_choices: &[bool] = if beta.is_long() { &[false] } else { &[false, true] };
    let mut found = Vec::new();
    for &conjugate in conj_choices {
        for sign in [Sign::Plus, Sign::Minus] {
            let phi = WeylTwist { sign, conjugate };
            if probes
                .iter()
                .zip(&images)
                .all(|(p, (y, _))| phi.apply(p).as_quad() == *y)
            {
                found.push(phi);
            }
        }
    }
    let [phi] = found[..] else {
        return Err(no_twist());
    };
    for (p, (_, m)) in probes.iter().zip(&images) {
        if *root_element(&target, &phi.apply(p))?.matrix() != *m {
            return Err(no_twist());
        }
    }
    for _ in 0..checks {
        let v = sampler.coord(beta, spec);
        let m = conjugated(&w, &w_inv, beta, &v)?;
        if *root_element(&target, &phi.apply(&v))?.matrix() != m {
            return Err(no_twist());
        }
    }
    Ok(phi)
}

/// Twists for every ordered pair of roots of rank `n`, in lexicographic order.
pub fn twist_table(
    n: usize,
    spec: &SpecRef,
    sampler: &mut Sampler,
    checks: usize,
) -> Result<Vec<(Root, Root, WeylTwist)>> {
    let all = roots(n)?;
    let mut out = Vec::with_capacity(all.len() * all.len());
    for a in &all {
        for b in &all {
            out.push((a.clone(), b.clone(), weyl_twist(a, b, spec, sampler, checks)?));
        }
    }
    Ok(out)
}

/// Number of checks performed by [`verify_compatibility_identities`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompatibilityReport {
    pub samples: usize,
    pub identities: usize,
}

/// Checks, with `α = e1 − e2`, `β = −2e2` and `h = h_{2α−β}(1/2)`:
///
/// 1. `[X_α(s√d), X_{β−α}(−1/(2√d))] = X_β(s)`
/// 2. `h·[X_β(t), X_{α−β}(−√d)]·[X_β(t), X_{α−β}(√d)]⁻¹·h⁻¹ = X_α(t√d)`
/// 3. `h·X_α(2v)·h⁻¹ = X_α(v)`
pub fn verify_compatibility_identities(
    n: usize,
    spec: &SpecRef,
    samples: usize,
    sampler: &mut Sampler,
) -> Result<CompatibilityReport> {
    let alpha = Root::short(n, 1, 1, 2, -1)?;
    let beta = Root::long(n, 2, -1)?;
    let beta_minus_alpha = Root::short(n, 1, -1, 2, -1)?;
    let alpha_minus_beta = beta_minus_alpha.neg();
    let long_top = Root::long(n, 1, 1)?;
    let h = torus_element(&long_top, &Coord::Long(AlgebraElement::from_rational(spec, rat(1, 2))))?;
    let sqrt_d = QuadElement::sqrt_d(spec);
    let d = spec.d().clone();
    // 1/(2√d) = √d/(2d)
    let inv_two_sqrt_d = QuadElement::from_rationals(spec, Rational::from_integer(0.into()), rat(1, 2) / d);

    let fail = |which: &str, witness: String| {
        Err(Error::IdentityFailed(format!("identity {which} fails for {witness}")))
    };
    for _ in 0..samples {
        let s = sampler.rational();
        let t = sampler.rational();
        let v = sampler.quad(spec);
        let s_elem = AlgebraElement::from_rational(spec, s.clone());
        let t_elem = AlgebraElement::from_rational(spec, t.clone());

        let lhs = root_element(&alpha, &Coord::Short(sqrt_d.mul_real(&s_elem)))?.commutator(
            &root_element(&beta_minus_alpha, &Coord::Short(-&inv_two_sqrt_d))?,
        );
        if lhs != root_element(&beta, &Coord::Long(s_elem))? {
            return fail("(i)", format!("s = {s}"));
        }

        let xb = root_element(&beta, &Coord::Long(t_elem.clone()))?;
        let c1 = xb.commutator(&root_element(&alpha_minus_beta, &Coord::Short(-&sqrt_d))?);
        let c2 = xb.commutator(&root_element(&alpha_minus_beta, &Coord::Short(sqrt_d.clone()))?);
        let lhs = h.conjugate(&(&c1 * &c2.inverse()));
        if lhs != root_element(&alpha, &Coord::Short(sqrt_d.mul_real(&t_elem)))? {
            return fail("(ii)", format!("t = {t}"));
        }

        let lhs = h.conjugate(&root_element(&alpha, &Coord::Short(v.scale(&rat(2, 1))))?);
        if lhs != root_element(&alpha, &Coord::Short(v.clone()))? {
            return fail("(iii)", format!("v = {v}"));
        }
    }
    Ok(CompatibilityReport {
        samples,
        identities: 3,
    })
}

/// The closed-form table as text: one line per ordered pair with a
/// nontrivial commutator, pairs in lexicographic order of weights.
pub fn dump_table(n: usize) -> Result<String> {
    let all = roots(n)?;
    let mut out = String::new();
    for a in &all {
        for b in &all {
            if a == b || *a == b.neg() {
                continue;
            }
            let table = closed_table(a, b)?;
            if table.is_empty() {
                continue;
            }
            let cells: Vec<String> = table
                .iter()
                .map(|c| format!("N{}{}[{}] = {}", c.term.i, c.term.j, c.term.root, c.map))
                .collect();
            out.push_str(&format!("{a} {b}  {}\n", cells.join("  ")));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, AlgebraSpec};

    fn r(s: &str, n: usize) -> Root {
        Root::parse(s, n).unwrap()
    }

    fn q(spec: &SpecRef, a: i64, b: i64) -> Coord {
        Coord::Short(QuadElement::from_rationals(spec, int(a), int(b)))
    }

    fn l(spec: &SpecRef, a: i64) -> Coord {
        Coord::Long(AlgebraElement::from_int(spec, a))
    }

    #[test]
    fn literal_case_one_is_uv() {
        let s = AlgebraSpec::rational(int(5)).unwrap();
        let (a, b) = (r("+e1-e2", 3), r("+e2-e3", 3));
        let table = closed_table(&a, &b).unwrap();
        assert_eq!(table[0].map.to_string(), "u*v");
        assert_eq!(closed_table(&b, &a).unwrap()[0].map.to_string(), "-u*v");
        let (u, v) = (q(&s, 1, 2), q(&s, -3, 1));
        let e = expand_bruteforce(&a, &b, &u, &v).unwrap();
        assert_eq!(e.terms.len(), 1);
        assert_eq!(e.terms[0].1.as_quad(), &u.as_quad() * &v.as_quad());
        let one = q(&s, 1, 0);
        assert_eq!(expand_closed(&a, &b, &one, &one).unwrap().terms[0].1, one);
    }

    #[test]
    fn case_two_regression() {
        // u = 1 + √5, v = 2: single long term ωTr(ū v) = 4
        let s = AlgebraSpec::rational(int(5)).unwrap();
        let (a, b) = (r("+e1-e2", 2), r("+e1+e2", 2));
        assert_eq!(closed_table(&a, &b).unwrap()[0].map.to_string(), "Tr(ubar*v)");
        let e = expand_bruteforce(&a, &b, &q(&s, 1, 1), &q(&s, 2, 0)).unwrap();
        assert_eq!(e.terms.len(), 1);
        assert_eq!(e.terms[0].0.root, r("+2e1", 2));
        assert_eq!(e.terms[0].1, l(&s, 4));
    }

    #[test]
    fn case_three_regression() {
        // α = e1 − e2, β = −2e1 (ε = ω... with ω = −1), u = 1 + √5, v = 2
        let s = AlgebraSpec::rational(int(5)).unwrap();
        let (a, b) = (r("+e1-e2", 2), r("-2e1", 2));
        let e = expand_bruteforce(&a, &b, &q(&s, 1, 1), &l(&s, 2)).unwrap();
        assert_eq!(e, expand_closed(&a, &b, &q(&s, 1, 1), &l(&s, 2)).unwrap());
        assert_eq!(e.terms.len(), 2);
        assert_eq!(e.terms[0].0.root, r("-e1-e2", 2));
        assert_eq!(e.terms[0].1, q(&s, -2, 2));
        assert_eq!(e.terms[1].0.root, r("-2e2", 2));
        // −εω·v·u·ū = 2·(1 − 5) = −8
        assert_eq!(e.terms[1].1, l(&s, -8));
        assert!(e.terms_commute().unwrap());
    }

    #[test]
    fn commuting_pairs_are_empty() {
        let s = AlgebraSpec::rational(int(2)).unwrap();
        let (a, b) = (r("+2e1", 2), r("+2e2", 2));
        assert!(expand_closed(&a, &b, &l(&s, 3), &l(&s, 4)).unwrap().is_empty());
        assert!(expand_bruteforce(&a, &b, &l(&s, 3), &l(&s, 4)).unwrap().is_empty());
        assert!(expand_closed(&a, &a.neg(), &l(&s, 1), &l(&s, 1)).is_err());
    }

    #[test]
    fn oracle_agrees_on_all_pairs() {
        for d in [-1, 2, 5] {
            let s = AlgebraSpec::rational(int(d)).unwrap();
            let mut sampler = Sampler::new(7);
            for n in [2, 3] {
                let all = roots(n).unwrap();
                for a in &all {
                    for b in &all {
                        if a == b || *a == b.neg() {
                            continue;
                        }
                        for _ in 0..3 {
                            let u = sampler.coord(a, &s);
                            let v = sampler.coord(b, &s);
                            assert_eq!(
                                expand_bruteforce(a, b, &u, &v).unwrap(),
                                expand_closed(a, b, &u, &v).unwrap(),
                                "{a} {b} d={d}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn preimages_hit_targets() {
        let s = AlgebraSpec::new(vec![2], int(3)).unwrap();
        let mut sampler = Sampler::new(11);
        let all = roots(3).unwrap();
        for a in &all {
            for b in &all {
                if a == b || *a == b.neg() || closed_table(a, b).unwrap().is_empty() {
                    continue;
                }
                let gamma = a.combine(1, b, 1).unwrap();
                let w = sampler.coord(&gamma, &s);
                let (u, v) = n11_preimage(a, b, &w).unwrap();
                assert_eq!(expand_closed(a, b, &u, &v).unwrap().terms[0].1, w, "{a} {b}");
            }
        }
    }

    #[test]
    fn twist_examples() {
        let s = AlgebraSpec::rational(int(5)).unwrap();
        let mut sampler = Sampler::new(3);
        let a = r("+2e1", 2);
        let phi = weyl_twist(&a, &a, &s, &mut sampler, 5).unwrap();
        assert!(!phi.conjugate);
        // orthogonal roots: β is fixed
        let b = r("+2e2", 2);
        let phi = weyl_twist(&a, &b, &s, &mut sampler, 5).unwrap();
        assert_eq!(phi, WeylTwist { sign: Sign::Plus, conjugate: false });
        for (_, _, phi) in twist_table(2, &s, &mut sampler, 2).unwrap() {
            let v = q(&s, 3, -7);
            assert_eq!(phi.apply(&phi.apply(&v)), v);
        }
    }

    #[test]
    fn compatibility_identities_hold() {
        for d in [2, 5] {
            let s = AlgebraSpec::rational(int(d)).unwrap();
            let mut sampler = Sampler::new(1);
            verify_compatibility_identities(2, &s, 5, &mut sampler).unwrap();
        }
    }

    #[test]
    fn table_dump_is_stable() {
        let t = dump_table(2).unwrap();
        assert!(t.lines().next().unwrap().starts_with("-2e1 "));
        assert_eq!(t, dump_table(2).unwrap());
        assert!(t.contains("+e1-e2 +e1+e2  N11[+2e1] = Tr(ubar*v)"));
    }
}
