//! Registry of theorem checks runnable against any group.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::affine::AffineGroup;
use crate::classify::{
    check_affine_prefix, check_prefix_of_quasi_coxeter, multiset_criterion_check,
    quasi_coxeter_witness, transitivity_check, ReflectionPool,
};
use crate::codec::{AnyGroup, ElementCodec};
use crate::coxeter::{elements_up_to_length, enumerate, product, CoxeterGroup, FiniteGroup};
use crate::dyer::red_t;
use crate::error::{Error, Result};
use crate::hurwitz::{apply_braid, extend_to_simples, reduce, reduce_by_search, Reduction};

#[derive(Clone, Debug)]
pub struct CheckConfig {
    /// Enumeration cap for factorization sets and groups.
    pub cap: usize,
    /// Hurwitz orbit cap for orbit searches.
    pub orbit_cap: usize,
    /// Largest `|k|` of affine reflections used in witness searches.
    pub level_bound: i64,
    /// Largest factorization length sampled by reduction checks.
    pub max_length: usize,
    /// `ℓ_S` bound for element sets of infinite groups.
    pub word_bound: usize,
    pub samples: usize,
    pub seed: u64,
    /// Element to check instead of the default one, as a generator word.
    pub element: Option<Vec<usize>>,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            cap: 1_000_000,
            orbit_cap: 10_000,
            level_bound: 3,
            max_length: 6,
            word_bound: 8,
            samples: 200,
            seed: 0,
            element: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub theorem: String,
    pub statement: String,
    pub group: Value,
    pub checked: usize,
    pub passed: bool,
    pub indeterminate: usize,
    pub counterexample: Option<Value>,
    pub seed: u64,
    pub details: Value,
}

pub trait TheoremCheck: Send + Sync {
    fn name(&self) -> &'static str;
    fn statement(&self) -> &'static str;
    fn run(&self, group: &AnyGroup, config: &CheckConfig) -> Result<Report>;
}

pub struct Registry {
    checks: BTreeMap<&'static str, Box<dyn TheoremCheck>>,
}

impl Registry {
    pub fn empty() -> Self {
        Registry { checks: BTreeMap::new() }
    }

    pub fn builtin() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(Reduction1));
        r.register(Box::new(Extension1));
        r.register(Box::new(TransitivityAll));
        r.register(Box::new(AffinePrefix));
        r.register(Box::new(PrefixOfQuasiCoxeter));
        r.register(Box::new(Multiset));
        r.register(Box::new(TransitivityOne));
        r
    }

    pub fn register(&mut self, check: Box<dyn TheoremCheck>) {
        self.checks.insert(check.name(), check);
    }

    pub fn get(&self, name: &str) -> Option<&dyn TheoremCheck> {
        self.checks.get(name).map(|c| c.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.checks.keys().copied().collect()
    }

    pub fn run(&self, name: &str, group: &AnyGroup, config: &CheckConfig) -> Result<Report> {
        self.get(name)
            .ok_or_else(|| Error::Parse(format!("unknown theorem {name:?}; known: {}", self.names().join(", "))))?
            .run(group, config)
    }
}

enum Outcome {
    Pass,
    Indeterminate,
    Fail(Value),
}

#[derive(Default)]
struct Tally {
    checked: usize,
    indeterminate: usize,
    failures: usize,
    counterexample: Option<Value>,
}

/// Runs `f` on every item in parallel; the first failure in item order is
/// the reported counterexample.
fn tally<T: Sync>(items: &[T], f: impl Fn(&T) -> Result<Outcome> + Sync) -> Result<Tally> {
    let outcomes: Vec<Outcome> = items
        .par_iter()
        .map(|x| match f(x) {
            Err(Error::Indeterminate(_)) | Err(Error::CapExceeded { .. }) => Ok(Outcome::Indeterminate),
            other => other,
        })
        .collect::<Result<_>>()?;
    let mut t = Tally::default();
    for o in outcomes {
        t.checked += 1;
        match o {
            Outcome::Pass => {}
            Outcome::Indeterminate => t.indeterminate += 1,
            Outcome::Fail(v) => {
                t.failures += 1;
                t.counterexample.get_or_insert(v);
            }
        }
    }
    Ok(t)
}

fn report(check: &dyn TheoremCheck, group: &AnyGroup, config: &CheckConfig, t: Tally, details: Value) -> Report {
    Report {
        theorem: check.name().into(),
        statement: check.statement().into(),
        group: group.descriptor(),
        checked: t.checked,
        passed: t.failures == 0,
        indeterminate: t.indeterminate,
        counterexample: t.counterexample,
        seed: config.seed,
        details,
    }
}

fn unsupported(check: &dyn TheoremCheck, group: &AnyGroup) -> Error {
    Error::Unsupported(format!("{} is not available for {} groups", check.name(), group.kind()))
}

/// A uniformly chosen generator conjugated by a random word.
pub fn random_reflection<G: CoxeterGroup + ?Sized>(g: &G, rng: &mut impl Rng) -> G::Elem {
    let len = rng.gen_range(0..=2 * g.rank() + 2);
    let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..g.rank())).collect();
    let w = g.element_from_word(&word).expect("indices in range");
    g.conjugate(&w, &g.generator(rng.gen_range(0..g.rank())))
}

/// Random factorizations of lengths `ℓ_T(product) + 2k ≤ max_length`.
fn random_factorizations<G: CoxeterGroup + ?Sized>(
    g: &G,
    pool: Option<&[G::Elem]>,
    config: &CheckConfig,
) -> Vec<Vec<G::Elem>> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    (0..config.samples)
        .map(|_| {
            let len = rng.gen_range(1..=config.max_length.max(1));
            (0..len)
                .map(|_| match pool {
                    Some(p) => p[rng.gen_range(0..p.len())].clone(),
                    None => random_reflection(g, &mut rng),
                })
                .collect()
        })
        .collect()
}

/// Checks a reduction against its input: braid replay, product, reduced
/// prefix, duplicated tail pairs.
pub fn verify_reduction<G: CoxeterGroup + ?Sized>(g: &G, f: &[G::Elem], r: &Reduction<G::Elem>) -> Result<bool> {
    let replay = apply_braid(g, f, &r.braid)?;
    let k = r.reduced_len;
    Ok(replay == r.tuple
        && product(g, &r.tuple) == product(g, f)
        && g.reflection_length(&product(g, &r.tuple[..k])) == k
        && r.tuple[k..].chunks(2).all(|p| p.len() == 2 && p[0] == p[1]))
}

fn elements_for<G: CoxeterGroup + ?Sized>(g: &G, config: &CheckConfig) -> Result<Vec<G::Elem>> {
    if let Some(word) = &config.element {
        return Ok(vec![g.element_from_word(word)?]);
    }
    if g.is_finite() {
        enumerate(g, config.cap)
    } else {
        Ok(elements_up_to_length(g, config.word_bound))
    }
}

fn single_element<G: CoxeterGroup + ?Sized>(g: &G, config: &CheckConfig) -> Result<G::Elem> {
    let word = config.element.clone().unwrap_or_else(|| (0..g.rank()).collect());
    g.element_from_word(&word)
}

fn encode_tuple<G: ElementCodec + ?Sized>(g: &G, f: &[G::Elem]) -> Value {
    g.encode_tuple(f)
}

struct Reduction1;

impl TheoremCheck for Reduction1 {
    fn name(&self) -> &'static str {
        "main1"
    }

    fn statement(&self) -> &'static str {
        "every reflection factorization is Hurwitz-equivalent to a reduced one followed by equal adjacent pairs"
    }

    fn run(&self, group: &AnyGroup, config: &CheckConfig) -> Result<Report> {
        let (t, method) = match group {
            AnyGroup::Finite(g) => {
                let fs = random_factorizations(g, Some(g.reflections()), config);
                let t = tally(&fs, |f| {
                    let r = reduce(g, f)?;
                    Ok(if verify_reduction(g, f, &r)? {
                        Outcome::Pass
                    } else {
                        Outcome::Fail(json!({"factorization": encode_tuple(g, f)}))
                    })
                })?;
                (t, "constructive")
            }
            AnyGroup::Affine(g) => (search_reductions(g, config)?, "orbit search"),
            AnyGroup::General(g) => (search_reductions(g, config)?, "orbit search"),
        };
        Ok(report(self, group, config, t, json!({"method": method, "max_length": config.max_length})))
    }
}

fn search_reductions<G: ElementCodec>(g: &G, config: &CheckConfig) -> Result<Tally> {
    let fs = random_factorizations(g, None, config);
    tally(&fs, |f| {
        let r = reduce_by_search(g, f, config.orbit_cap)?;
        Ok(if verify_reduction(g, f, &r)? {
            Outcome::Pass
        } else {
            Outcome::Fail(json!({"factorization": encode_tuple(g, f)}))
        })
    })
}

struct Extension1;

impl TheoremCheck for Extension1 {
    fn name(&self) -> &'static str {
        "main1.1"
    }

    fn statement(&self) -> &'static str {
        "a reduced reflection factorization of w extends by simple reflections to a tuple Hurwitz-equivalent to a reduced word of w"
    }

    fn run(&self, group: &AnyGroup, config: &CheckConfig) -> Result<Report> {
        let t = crate::with_group!(group, g => extension_tally(g, config)?);
        Ok(report(self, group, config, t, json!({})))
    }
}

fn extension_tally<G: ElementCodec>(g: &G, config: &CheckConfig) -> Result<Tally> {
    let mut cases = Vec::new();
    for w in elements_for(g, config)? {
        let fs = match red_t(g, &w, config.cap) {
            Ok(fs) => fs,
            Err(Error::Unsupported(_)) => vec![g.reduced_reflection_factorization(&w)],
            Err(e) => return Err(e),
        };
        cases.extend(fs.into_iter().map(|f| (w.clone(), f)));
    }
    tally(&cases, |(w, f)| {
        let word = g.reduced_word(w);
        let ext = extend_to_simples(g, &word, f, config.orbit_cap)?;
        let simples: Vec<G::Elem> = word.iter().map(|&s| g.generator(s)).collect();
        let q_len = ext.q.len();
        let ok = apply_braid(g, &simples, &ext.braid)? == ext.tuple
            && ext.tuple[q_len..] == f[..]
            && g.is_identity(&g.element_from_word(&ext.q)?);
        Ok(if ok {
            Outcome::Pass
        } else {
            Outcome::Fail(json!({"element": g.encode(w), "factorization": encode_tuple(g, f)}))
        })
    })
}

fn finite_only<'a>(check: &dyn TheoremCheck, group: &'a AnyGroup) -> Result<&'a FiniteGroup> {
    match group {
        AnyGroup::Finite(g) => Ok(g),
        _ => Err(unsupported(check, group)),
    }
}

struct TransitivityAll;

impl TheoremCheck for TransitivityAll {
    fn name(&self) -> &'static str {
        "main2"
    }

    fn statement(&self) -> &'static str {
        "the Hurwitz action is transitive on Red_T(w) iff w is parabolic quasi-Coxeter"
    }

    fn run(&self, group: &AnyGroup, config: &CheckConfig) -> Result<Report> {
        let g = finite_only(self, group)?;
        let elems = elements_for(g, config)?;
        let t = tally(&elems, |w| {
            let r = transitivity_check(g, w, config.cap)?;
            Ok(if r.agrees {
                Outcome::Pass
            } else {
                Outcome::Fail(json!({"element": g.encode(w), "report": r}))
            })
        })?;
        let pqc = elems
            .par_iter()
            .map(|w| crate::classify::parabolic_quasi_coxeter_witness(g, w, config.cap).map(|x| x.is_some() as usize))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .sum::<usize>();
        Ok(report(self, group, config, t, json!({"parabolic_quasi_coxeter": pqc})))
    }
}

struct TransitivityOne;

impl TheoremCheck for TransitivityOne {
    fn name(&self) -> &'static str {
        "transitivity"
    }

    fn statement(&self) -> &'static str {
        "for one element: Red_T(w) is a single Hurwitz orbit iff w is parabolic quasi-Coxeter"
    }

    fn run(&self, group: &AnyGroup, config: &CheckConfig) -> Result<Report> {
        let g = finite_only(self, group)?;
        let w = single_element(g, config)?;
        let r = transitivity_check(g, &w, config.cap)?;
        let t = Tally {
            checked: 1,
            failures: (!r.agrees) as usize,
            counterexample: (!r.agrees).then(|| g.encode(&w)),
            ..Tally::default()
        };
        Ok(report(self, group, config, t, json!({"element": g.encode(&w), "report": r})))
    }
}

struct Multiset;

impl TheoremCheck for Multiset {
    fn name(&self) -> &'static str {
        "multiset"
    }

    fn statement(&self) -> &'static str {
        "for quasi-Coxeter w, two factorizations of equal length are Hurwitz-equivalent iff their conjugacy-class multisets agree"
    }

    fn run(&self, group: &AnyGroup, config: &CheckConfig) -> Result<Report> {
        let g = finite_only(self, group)?;
        let w = single_element(g, config)?;
        if quasi_coxeter_witness(g, &w, config.cap)?.is_none() {
            return Err(Error::Precondition("element is not quasi-Coxeter".into()));
        }
        let len = g.reflection_length(&w) + 2;
        let r = multiset_criterion_check(g, &w, len, config.cap)?;
        let t = Tally {
            checked: r.factorizations,
            failures: (!r.holds) as usize,
            counterexample: (!r.holds).then(|| g.encode(&w)),
            ..Tally::default()
        };
        Ok(report(self, group, config, t, json!({"element": g.encode(&w), "report": r})))
    }
}

struct PrefixOfQuasiCoxeter;

impl TheoremCheck for PrefixOfQuasiCoxeter {
    fn name(&self) -> &'static str {
        "thm13"
    }

    fn statement(&self) -> &'static str {
        "for l_T(x) = n - 1: x is proper parabolic quasi-Coxeter iff x <=_T w for a quasi-Coxeter w and P(x) != W; then rank P(x) = n - 1"
    }

    fn run(&self, group: &AnyGroup, config: &CheckConfig) -> Result<Report> {
        let t = match group {
            AnyGroup::Finite(g) => prefix_tally(g, config)?,
            AnyGroup::Affine(g) => prefix_tally(g, config)?,
            AnyGroup::General(_) => return Err(unsupported(self, group)),
        };
        Ok(report(self, group, config, t, json!({"level_bound": config.level_bound})))
    }
}

fn prefix_tally<G: ElementCodec + ReflectionPool>(g: &G, config: &CheckConfig) -> Result<Tally> {
    let n = g.rank();
    let xs: Vec<G::Elem> = elements_for(g, config)?
        .into_iter()
        .filter(|x| g.reflection_length(x) + 1 == n)
        .collect();
    tally(&xs, |x| {
        let b = check_prefix_of_quasi_coxeter(g, x, config.level_bound, config.cap)?;
        Ok(if !b.holds {
            Outcome::Fail(json!({"element": g.encode(x), "lhs": b.lhs, "rhs": b.rhs}))
        } else if b.indeterminate {
            Outcome::Indeterminate
        } else {
            Outcome::Pass
        })
    })
}

struct AffinePrefix;

impl TheoremCheck for AffinePrefix {
    fn name(&self) -> &'static str {
        "main4"
    }

    fn statement(&self) -> &'static str {
        "affine, l_T(x) < n: x proper parabolic quasi-Coxeter iff x <=_T w quasi-Coxeter with P(x) != W iff x <=_T w quasi-Coxeter with x elliptic"
    }

    fn run(&self, group: &AnyGroup, config: &CheckConfig) -> Result<Report> {
        let AnyGroup::Affine(g) = group else {
            return Err(unsupported(self, group));
        };
        let (t, elliptic) = affine_prefix_tally(g, config)?;
        Ok(report(
            self,
            group,
            config,
            t,
            json!({"level_bound": config.level_bound, "word_bound": config.word_bound, "elliptic": elliptic}),
        ))
    }
}

fn affine_prefix_tally(g: &AffineGroup, config: &CheckConfig) -> Result<(Tally, usize)> {
    let n = g.rank();
    let xs: Vec<_> = elements_for(g, config)?
        .into_iter()
        .filter(|x| g.is_elliptic(x) && g.reflection_length(x) < n)
        .collect();
    let count = xs.len();
    let t = tally(&xs, |x| {
        let r = check_affine_prefix(g, x, config.level_bound, config.cap)?;
        Ok(if !r.holds {
            Outcome::Fail(json!({"element": g.encode(x), "report": r}))
        } else if r.indeterminate {
            Outcome::Indeterminate
        } else {
            Outcome::Pass
        })
    })?;
    Ok((t, count))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(name: &str, ty: &str, config: CheckConfig) -> Report {
        let g = AnyGroup::from_type(ty, 100_000).unwrap();
        Registry::builtin().run(name, &g, &config).unwrap()
    }

    #[test]
    fn registry_names() {
        assert_eq!(
            Registry::builtin().names(),
            vec!["main1", "main1.1", "main2", "main4", "multiset", "thm13", "transitivity"]
        );
    }

    #[test]
    fn small_checks_pass() {
        let small = CheckConfig { samples: 30, ..CheckConfig::default() };
        for (name, ty) in [
            ("main1", "A2"),
            ("main1.1", "A2"),
            ("main2", "B2"),
            ("thm13", "A2"),
            ("multiset", "A2"),
            ("transitivity", "A3"),
        ] {
            let r = run(name, ty, small.clone());
            assert!(r.passed && r.indeterminate == 0, "{name} on {ty}: {r:?}");
        }
    }

    #[test]
    fn transitivity_failure_is_consistent() {
        let c = CheckConfig { element: Some(vec![0, 1, 0, 1]), ..CheckConfig::default() };
        let r = run("transitivity", "B2", c);
        assert!(r.passed);
        assert_eq!(r.details["report"]["orbit_sizes"], json!([2, 2]));
    }

    #[test]
    fn unsupported_combinations() {
        let g = AnyGroup::from_type("At2", 10).unwrap();
        assert!(matches!(
            Registry::builtin().run("main2", &g, &CheckConfig::default()),
            Err(Error::Unsupported(_))
        ));
        let f = AnyGroup::from_type("A2", 10).unwrap();
        assert!(Registry::builtin().run("main4", &f, &CheckConfig::default()).is_err());
        assert!(Registry::builtin().run("nope", &f, &CheckConfig::default()).is_err());
    }
}
