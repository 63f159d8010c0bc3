//! The verification suites behind `su2n verify`.

use rayon::prelude::*;

use crate::algebra::{parse_ring, rat, AlgebraElement, AlgebraSpec, Rational, SpecRef};
use crate::constants::{
    expand_bruteforce, expand_closed, twist_table, verify_compatibility_identities,
};
use crate::decomposition::{congruence_level, decompose, filtration_commutator_check, in_degree_zero_section, levi_factor};
use crate::error::{Error, Result};
use crate::group::{character, root_element, split_torus, GroupElement};
use crate::random::Sampler;
use crate::roots::{roots, Root};
use crate::steinberg::{express_as_commutator, join_words, split_word, SteinbergWord};

pub const DEFAULT_N: usize = 2;
pub const DEFAULT_D: i64 = 5;
pub const DEFAULT_RING: &str = "Q";
pub const DEFAULT_SEED: u64 = 20240001;
pub const DEFAULT_TRIALS: usize = 25;

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub n: usize,
    pub spec: SpecRef,
    pub seed: u64,
    pub trials: usize,
}

impl RunConfig {
    pub fn new(n: usize, d: Rational, ring: &str, seed: u64, trials: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::RankTooSmall(n));
        }
        if trials == 0 {
            return Err(Error::InvalidAlgebra("trials must be at least 1".into()));
        }
        let spec = parse_ring(ring, d)?;
        Ok(RunConfig { n, spec, seed, trials })
    }
}

/// The suites, in report order.
pub const SUITES: [&str; 10] = [
    "additivity",
    "torus action",
    "oracle equivalence",
    "homogeneity",
    "R7 twist table",
    "compatibility",
    "perfectness",
    "product splitting",
    "filtration",
    "decomposition",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checks: usize,
    /// Set when the suite ran over a ring other than the configured one.
    pub ring: Option<String>,
    /// The first counterexample, if any.
    pub failure: Option<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub results: Vec<SuiteResult>,
}

impl Report {
    pub fn passed(&self) -> usize {
        self.results.iter().filter(|r| r.passed()).count()
    }

    pub fn all_passed(&self) -> bool {
        self.passed() == self.results.len()
    }

    pub fn to_text(&self, config: &RunConfig) -> String {
        let mut out = format!(
            "n={} ring={} seed={} trials={}\n",
            config.n, config.spec, config.seed, config.trials
        );
        for r in &self.results {
            match &r.failure {
                None => {
                    out.push_str(&format!("PASS  {:<20} {} checks", r.name, r.checks));
                    if let Some(ring) = &r.ring {
                        out.push_str(&format!(" over {ring}"));
                    }
                    out.push('\n');
                }
                Some(f) => out.push_str(&format!("FAIL  {:<20} {}\n", r.name, f.replace('\n', "\n      "))),
            }
        }
        out.push_str(&format!("SUITES {}/{} PASS\n", self.passed(), self.results.len()));
        out
    }
}

/// Counts checks and membership of every produced matrix.
struct Ctx {
    checks: usize,
}

impl Ctx {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) -> Result<()> {
        self.checks += 1;
        if ok {
            Ok(())
        } else {
            Err(Error::IdentityFailed(what()))
        }
    }

    fn member(&mut self, g: &GroupElement, what: &str) -> Result<()> {
        self.check(g.is_member(), || format!("{what} is not in G(R)"))
    }
}

fn ordered_pairs(n: usize) -> Result<Vec<(Root, Root)>> {
    let all = roots(n)?;
    let mut out = Vec::new();
    for a in &all {
        for b in &all {
            if a != b && *a != b.neg() {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(out)
}

pub fn additivity(n: usize, spec: &SpecRef, trials: usize, sampler: &mut Sampler) -> Result<usize> {
    let mut ctx = Ctx { checks: 0 };
    for a in roots(n)? {
        for _ in 0..trials {
            let (u, v) = (sampler.coord(&a, spec), sampler.coord(&a, spec));
            let (xu, xv) = (root_element(&a, &u)?, root_element(&a, &v)?);
            ctx.member(&xu, "X_α(u)")?;
            let sum = root_element(&a, &u.add(&v)?)?;
            ctx.check(&xu * &xv == sum, || format!("X[{a}]({u})·X[{a}]({v}) != X[{a}](u+v)"))?;
        }
    }
    Ok(ctx.checks)
}

/// `s·X_α(v)·s⁻¹ = X_α(α(s)·v)` for random `s` in the split torus.
pub fn torus_action(n: usize, spec: &SpecRef, trials: usize, sampler: &mut Sampler) -> Result<usize> {
    let mut ctx = Ctx { checks: 0 };
    for _ in 0..trials {
        let ts: Vec<AlgebraElement> = (0..n).map(|_| sampler.unit(spec)).collect();
        let s = split_torus(&ts)?;
        ctx.member(&s, "torus element")?;
        for a in roots(n)? {
            let v = sampler.coord(&a, spec);
            let chi = character(&a, &ts)?;
            let scaled = v.map_real(|x| x * &chi);
            let lhs = s.conjugate(&root_element(&a, &v)?);
            ctx.check(lhs == root_element(&a, &scaled)?, || format!("torus action on {a}"))?;
        }
    }
    Ok(ctx.checks)
}

pub fn oracle_equivalence(n: usize, spec: &SpecRef, trials: usize, sampler: &mut Sampler) -> Result<usize> {
    let mut ctx = Ctx { checks: 0 };
    for (a, b) in ordered_pairs(n)? {
        for _ in 0..trials {
            let (u, v) = (sampler.coord(&a, spec), sampler.coord(&b, spec));
            let brute = expand_bruteforce(&a, &b, &u, &v)?;
            let closed = expand_closed(&a, &b, &u, &v)?;
            ctx.check(brute == closed, || {
                format!("({a}, {b}) at u = {u}, v = {v}: matrix {:?} vs table {:?}", brute.terms, closed.terms)
            })?;
            ctx.check(brute.terms_commute()?, || format!("terms of ({a}, {b}) do not commute"))?;
        }
    }
    Ok(ctx.checks)
}

fn pow(l: &Rational, e: u32) -> Rational {
    (0..e).fold(Rational::from_integer(1.into()), |acc, _| acc * l)
}

/// `N_ij(λu, v) = λ^i N_ij(u, v)` and `N_ij(u, λv) = λ^j N_ij(u, v)`, read
/// off the commutator matrices.
pub fn homogeneity(n: usize, spec: &SpecRef, trials: usize, sampler: &mut Sampler) -> Result<usize> {
    let mut ctx = Ctx { checks: 0 };
    let lambdas = [rat(-1, 1), rat(2, 1), rat(1, 3)];
    for (a, b) in ordered_pairs(n)? {
        for _ in 0..trials {
            let (u, v) = (sampler.coord(&a, spec), sampler.coord(&b, spec));
            let base = expand_bruteforce(&a, &b, &u, &v)?;
            if base.is_empty() {
                continue;
            }
            for l in &lambdas {
                let left = expand_bruteforce(&a, &b, &u.scale(l), &v)?;
                let right = expand_bruteforce(&a, &b, &u, &v.scale(l))?;
                for (k, (t, c)) in base.terms.iter().enumerate() {
                    ctx.check(left.terms[k].1 == c.scale(&pow(l, t.i)), || {
                        format!("N{}{} of ({a}, {b}) not of degree {} in u (λ = {l})", t.i, t.j, t.i)
                    })?;
                    ctx.check(right.terms[k].1 == c.scale(&pow(l, t.j)), || {
                        format!("N{}{} of ({a}, {b}) not of degree {} in v (λ = {l})", t.i, t.j, t.j)
                    })?;
                }
            }
        }
    }
    Ok(ctx.checks)
}

pub fn twists(n: usize, spec: &SpecRef, checks: usize, sampler: &mut Sampler) -> Result<usize> {
    let mut ctx = Ctx { checks: 0 };
    let table = twist_table(n, spec, sampler, checks)?;
    for (a, b, phi) in &table {
        ctx.checks += checks;
        let v = sampler.coord(b, spec);
        ctx.check(phi.apply(&phi.apply(&v)) == v, || format!("φ² != Id for ({a}, {b})"))?;
    }
    Ok(ctx.checks)
}

pub fn compatibility(n: usize, spec: &SpecRef, samples: usize, sampler: &mut Sampler) -> Result<usize> {
    let r = verify_compatibility_identities(n, spec, samples, sampler)?;
    Ok(r.samples * r.identities)
}

pub fn perfectness(n: usize, spec: &SpecRef, trials: usize, sampler: &mut Sampler) -> Result<usize> {
    let mut ctx = Ctx { checks: 0 };
    for a in roots(n)? {
        for _ in 0..trials {
            let v = sampler.coord(&a, spec);
            let w = express_as_commutator(&a, &v)?;
            let g = w.evaluate();
            ctx.member(&g, "commutator word")?;
            ctx.check(g == root_element(&a, &v)?, || format!("commutator word for X[{a}]({v}) evaluates wrongly"))?;
            ctx.check(w.symbols().iter().all(|s| *s.root() != a), || format!("word for {a} uses {a}"))?;
            ctx.check(w.commutator_blocks().is_some(), || format!("word for {a} is not a product of commutators"))?;
        }
    }
    Ok(ctx.checks)
}

/// Factor projection of a matrix over `A × B` onto the factors in `range`.
fn project_matrix(g: &GroupElement, range: std::ops::Range<usize>, target: &SpecRef) -> GroupElement {
    g.map_entries(target, |x| x.restrict(range.clone(), target))
}

/// Splitting over `A × B`: factor evaluations, `join ∘ split`, `p ∘ s`, and
/// commutation of generators supported on different factors.
pub fn product_splitting(n: usize, spec: &SpecRef, trials: usize, sampler: &mut Sampler) -> Result<usize> {
    let mut ctx = Ctx { checks: 0 };
    let k = spec.num_factors() - 1;
    if k == 0 {
        return Err(Error::SpecMismatch(format!("{spec} is not a product")));
    }
    let total = spec.num_factors();
    let (sa, sb) = spec.split_at(k)?;
    for _ in 0..trials {
        let w = sampler.word(n, spec, 12);
        let g = w.evaluate();
        ctx.member(&g, "word evaluation")?;
        let (wa, wb) = split_word(&w, k)?;
        ctx.check(wa.evaluate() == project_matrix(&g, 0..k, &sa), || "A-factor evaluation differs".into())?;
        ctx.check(wb.evaluate() == project_matrix(&g, k..total, &sb), || "B-factor evaluation differs".into())?;
        let joined = join_words(&wa, &wb)?;
        ctx.check(joined.evaluate() == g, || "join ∘ split changes the evaluation".into())?;
        ctx.check(split_word(&joined, k)? == (wa.clone(), wb.clone()), || "p ∘ s is not the identity".into())?;

        let all = roots(n)?;
        let (a, b) = (&all[sampler.index(all.len())], &all[sampler.index(all.len())]);
        let ca = sampler.coord(a, &sa);
        let cb = sampler.coord(b, &sb);
        let left = join_words(&SteinbergWord::generator(a, &ca)?, &SteinbergWord::empty(n, &sb))?;
        let right = join_words(&SteinbergWord::empty(n, &sa), &SteinbergWord::generator(b, &cb)?)?;
        let c = SteinbergWord::commutator(&left, &right)?.evaluate();
        ctx.check(c.is_identity(), || format!("X[{a}](a,0) and X[{b}](0,b) do not commute"))?;
    }
    Ok(ctx.checks)
}

pub fn filtration(n: usize, spec: &SpecRef, trials: usize, sampler: &mut Sampler) -> Result<usize> {
    let top = spec.max_order();
    let mut checks = 0;
    for a in 1..top {
        for b in 1..top {
            checks += filtration_commutator_check(a, b, trials, spec, n, sampler)?.trials;
        }
    }
    Ok(checks)
}

/// Decomposition round trips of random 30-generator products, plus the Levi
/// factorization of each.
pub fn decomposition(n: usize, spec: &SpecRef, trials: usize, sampler: &mut Sampler) -> Result<usize> {
    let mut ctx = Ctx { checks: 0 };
    for _ in 0..trials {
        let g = sampler.word(n, spec, 30).evaluate();
        ctx.member(&g, "random product")?;
        let w = decompose(&g)?;
        let back = w.evaluate();
        ctx.member(&back, "decomposition")?;
        ctx.check(back == g, || format!("decomposition of\n{}does not re-evaluate", g.matrix().to_text()))?;

        let pair = levi_factor(&g)?;
        ctx.member(&pair.u, "Levi u")?;
        ctx.member(&pair.s, "Levi s")?;
        ctx.check(&pair.u * &pair.s == g, || "u·s != X".into())?;
        ctx.check(congruence_level(&pair.u).get() >= 1.min(spec.max_order()), || "u is not ≡ 1 mod J".into())?;
        ctx.check(in_degree_zero_section(&pair.s), || "s has positive-degree terms".into())?;
        ctx.check(levi_factor(&pair.s)?.s == pair.s, || "refactoring s is not idempotent".into())?;
    }
    Ok(ctx.checks)
}

/// The coefficient ring for the splitting suite: the configured ring if it
/// is already a product, else the ring times `Q[t]/(t^2)`.
fn product_spec(spec: &SpecRef) -> Result<SpecRef> {
    if spec.num_factors() > 1 {
        return Ok(spec.clone());
    }
    let dual = AlgebraSpec::new(vec![2], spec.d().clone())?;
    AlgebraSpec::product(spec, &dual)
}

/// The ring for the filtration suite: the configured ring if it has a
/// nonzero radical, else `Q[t]/(t^3)`.
fn radical_spec(spec: &SpecRef) -> Result<SpecRef> {
    if spec.max_order() > 1 {
        return Ok(spec.clone());
    }
    AlgebraSpec::new(vec![3], spec.d().clone())
}

fn run_suite(index: usize, config: &RunConfig) -> SuiteResult {
    let (n, spec, trials) = (config.n, &config.spec, config.trials);
    let mut sampler = Sampler::fork(config.seed, index as u64);
    let few = trials.min(5);
    let mut ring = None;
    let mut substitute = |s: SpecRef| {
        if &s != spec {
            ring = Some(s.to_string());
        }
        s
    };
    let outcome = match index {
        0 => additivity(n, spec, trials, &mut sampler),
        1 => torus_action(n, spec, trials, &mut sampler),
        2 => oracle_equivalence(n, spec, trials, &mut sampler),
        3 => homogeneity(n, spec, few, &mut sampler),
        4 => twists(n, spec, 10, &mut sampler),
        5 => compatibility(n, spec, trials, &mut sampler),
        6 => perfectness(n, spec, trials.min(10), &mut sampler),
        7 => product_spec(spec).map(&mut substitute).and_then(|s| product_splitting(n, &s, trials, &mut sampler)),
        8 => radical_spec(spec).map(&mut substitute).and_then(|s| filtration(n, &s, trials, &mut sampler)),
        9 => decomposition(n, spec, trials, &mut sampler),
        _ => unreachable!("ten suites"),
    };
    let (checks, failure) = match outcome {
        Ok(c) => (c, None),
        Err(e) => (0, Some(e.to_string())),
    };
    SuiteResult {
        name: SUITES[index],
        checks,
        ring,
        failure,
    }
}

/// Runs every suite; suites run concurrently and are reported in fixed order.
pub fn run(config: &RunConfig) -> Report {
    let results = (0..SUITES.len())
        .into_par_iter()
        .map(|i| run_suite(i, config))
        .collect();
    Report { results }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    #[test]
    fn config_validation() {
        assert!(matches!(RunConfig::new(1, int(5), "Q", 1, 1), Err(Error::RankTooSmall(1))));
        assert!(matches!(RunConfig::new(2, int(4), "Q", 1, 1), Err(Error::SquareDiscriminant(_))));
        assert!(RunConfig::new(2, int(5), "Q", 1, 0).is_err());
        assert!(RunConfig::new(2, int(5), "Qx", 1, 1).is_err());
    }

    #[test]
    fn small_run_passes_and_is_reproducible() {
        let config = RunConfig::new(2, int(5), "Q", 42, 2).unwrap();
        let report = run(&config);
        let text = report.to_text(&config);
        assert!(report.all_passed(), "{text}");
        assert!(text.ends_with("SUITES 10/10 PASS\n"));
        assert_eq!(text, run(&config).to_text(&config));
    }
}
