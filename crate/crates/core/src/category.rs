//! The category Λ of compatible morphisms and its law checkers.
//!
//! Objects are the vertices of the graph, morphisms of degree `w` are the
//! compatible morphisms `E_w → E`, and composition lifts the concatenation
//! of traversals. The verification sweeps range over every morphism lifted
//! from a path of bounded length.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Mutex;

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::Serialize;
use thiserror::Error;

use crate::degree::Degree;
use crate::enumerate::{enumerate_morphisms, EnumerateError};
use crate::graph::{ColouredGraph, GraphError, Path, VertexId};
use crate::lift::{lift_path, LiftError};
use crate::morphism::{Morphism, MorphismError};
use crate::square::{Collection, CompletenessReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("collection is not complete for this graph")]
    Incomplete(Box<CompletenessReport>),
    #[error(
        "cannot compose: source of the first morphism ({0}) is not the range of the second ({1})"
    )]
    NotComposable(String, String),
    #[error("degree mismatch: {w1} · {w2} = {product} but the morphism has degree {degree}")]
    DegreeMismatch {
        w1: String,
        w2: String,
        product: String,
        degree: String,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Lift(#[from] LiftError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
}

/// A graph together with a collection verified complete for it.
#[derive(Debug, Clone)]
pub struct LambdaContext {
    graph: ColouredGraph,
    collection: Collection,
    report: CompletenessReport,
}

impl LambdaContext {
    pub fn new(graph: ColouredGraph, collection: Collection) -> Result<Self, CategoryError> {
        let report = collection.report(&graph);
        if !report.is_complete() {
            return Err(CategoryError::Incomplete(Box::new(report)));
        }
        Ok(LambdaContext {
            graph,
            collection,
            report,
        })
    }

    pub fn graph(&self) -> &ColouredGraph {
        &self.graph
    }

    pub fn collection(&self) -> &Collection {
        &self.collection
    }

    pub fn report(&self) -> &CompletenessReport {
        &self.report
    }

    pub fn identity<D: Degree>(&self, v: VertexId) -> Morphism<D> {
        Morphism::identity(v)
    }

    pub fn identity_named<D: Degree>(&self, name: &str) -> Result<Morphism<D>, CategoryError> {
        Ok(Morphism::identity(self.graph.vertex(name)?))
    }

    pub fn lift<D: Degree>(&self, x: &Path) -> Result<Morphism<D>, CategoryError> {
        Ok(lift_path(&self.graph, &self.collection, x)?)
    }

    /// `μν`: the lift of a traversal of `μ` followed by one of `ν`.
    pub fn compose<D: Degree>(
        &self,
        mu: &Morphism<D>,
        nu: &Morphism<D>,
    ) -> Result<Morphism<D>, CategoryError> {
        if mu.source() != nu.range() {
            return Err(CategoryError::NotComposable(
                self.graph.vertex_name(mu.source()).to_owned(),
                self.graph.vertex_name(nu.range()).to_owned(),
            ));
        }
        let x = mu.shortest_traversal()?;
        let y = nu.shortest_traversal()?;
        let xy = x.concat(&y, &self.graph)?;
        self.lift(&xy)
    }

    /// Splits `λ` into the pair of degrees `(w1, w2)` with `w1 · w2 = d(λ)`.
    pub fn factorize<D: Degree>(
        &self,
        lambda: &Morphism<D>,
        w1: &D,
        w2: &D,
    ) -> Result<(Morphism<D>, Morphism<D>), CategoryError> {
        let product = w1.mul(w2);
        if product != *lambda.degree() {
            return Err(CategoryError::DegreeMismatch {
                w1: w1.to_string(),
                w2: w2.to_string(),
                product: product.to_string(),
                degree: lambda.degree().to_string(),
            });
        }
        Ok((
            lambda.restrict(w1)?,
            lambda.restrict_shifted(w1, lambda.degree())?,
        ))
    }

    /// Factorization at a prefix `w1` of `d(λ)`.
    pub fn factorize_at<D: Degree>(
        &self,
        lambda: &Morphism<D>,
        w1: &D,
    ) -> Result<(Morphism<D>, Morphism<D>), CategoryError> {
        let w2 = w1
            .left_quotient(lambda.degree())
            .ok_or_else(|| MorphismError::NotAPrefix {
                prefix: w1.to_string(),
                word: lambda.degree().to_string(),
            })?;
        self.factorize(lambda, w1, &w2)
    }

    /// Distinct morphisms lifted from vertex paths and all paths of length `1..=max_len`,
    /// in order of first appearance.
    pub fn pool<D: Degree>(&self, max_len: usize) -> Result<Vec<Morphism<D>>, CategoryError> {
        let mut paths: Vec<Path> = self.graph.vertex_ids().map(Path::Vertex).collect();
        paths.extend(self.graph.paths_up_to(max_len).into_iter().map(Path::Edges));
        let lifted = paths
            .par_iter()
            .map(|p| self.lift::<D>(p))
            .collect::<Result<Vec<_>, _>>()?;
        let mut seen = HashSet::new();
        Ok(lifted
            .into_iter()
            .filter(|m| seen.insert(m.clone()))
            .collect())
    }

    pub fn verify_category<D: Degree>(
        &self,
        max_len: usize,
    ) -> Result<VerificationReport, CategoryError> {
        let memo = LiftMemo::default();
        self.verify_category_with::<D, _>(max_len, |mu, nu| self.compose_memo(&memo, mu, nu))
    }

    /// [`compose`](Self::compose), reusing lifts of paths already seen.
    fn compose_memo<D: Degree>(
        &self,
        memo: &LiftMemo<D>,
        mu: &Morphism<D>,
        nu: &Morphism<D>,
    ) -> Result<Morphism<D>, CategoryError> {
        if mu.source() != nu.range() {
            return self.compose(mu, nu);
        }
        let xy = mu
            .shortest_traversal()?
            .concat(&nu.shortest_traversal()?, &self.graph)?;
        if let Some(hit) = memo.get(&xy) {
            return Ok(hit);
        }
        let lam = self.lift(&xy)?;
        memo.put(xy, lam.clone());
        Ok(lam)
    }

    /// Category laws with a caller-supplied composition (used for fault injection).
    pub fn verify_category_with<D, F>(
        &self,
        max_len: usize,
        compose: F,
    ) -> Result<VerificationReport, CategoryError>
    where
        D: Degree,
        F: Fn(&Morphism<D>, &Morphism<D>) -> Result<Morphism<D>, CategoryError> + Sync,
    {
        let pool = self.pool::<D>(max_len)?;
        let g = &self.graph;
        let pairs: Vec<(usize, usize)> = composable_pairs(&pool);
        // a composition that errors on a composable pair counts as a law failure
        let products: HashMap<(usize, usize), Result<Morphism<D>, String>> = pairs
            .par_iter()
            .map(|&(i, j)| {
                (
                    (i, j),
                    compose(&pool[i], &pool[j]).map_err(|e| e.to_string()),
                )
            })
            .collect();

        let mut report = VerificationReport::new(max_len, pool.len());

        let mut ends = LawCheck::new("range-source");
        for &(i, j) in &pairs {
            let (ok, why) = match &products[&(i, j)] {
                Ok(prod) => (
                    prod.range() == pool[i].range() && prod.source() == pool[j].source(),
                    String::new(),
                ),
                Err(e) => (false, format!(": {e}")),
            };
            ends.record(ok, || {
                format!(
                    "r/s of {} {}{}",
                    describe(g, &pool[i]),
                    describe(g, &pool[j]),
                    why
                )
            });
        }
        report.push(ends);

        let mut assoc = LawCheck::new("associativity");
        let mut by_range: HashMap<VertexId, Vec<usize>> = HashMap::new();
        for (k, m) in pool.iter().enumerate() {
            by_range.entry(m.range()).or_default().push(k);
        }
        let triples: Vec<(usize, usize, usize)> = pairs
            .iter()
            .flat_map(|&(i, j)| {
                by_range
                    .get(&pool[j].source())
                    .into_iter()
                    .flatten()
                    .map(move |&k| (i, j, k))
            })
            .collect();
        let outcomes: Vec<_> = triples
            .par_iter()
            .map(|&(i, j, k)| {
                let check = || -> Result<bool, String> {
                    let ij = products[&(i, j)].as_ref().map_err(Clone::clone)?;
                    let jk = products[&(j, k)].as_ref().map_err(Clone::clone)?;
                    let left = compose(ij, &pool[k]).map_err(|e| e.to_string())?;
                    let right = compose(&pool[i], jk).map_err(|e| e.to_string())?;
                    Ok(left == right)
                };
                (check(), (i, j, k))
            })
            .collect();
        for (res, (i, j, k)) in outcomes {
            let (ok, why) = match res {
                Ok(ok) => (ok, String::new()),
                Err(e) => (false, format!(": {e}")),
            };
            assoc.record(ok, || {
                format!(
                    "({} {}) {} differs from {} ({} {}){}",
                    describe(g, &pool[i]),
                    describe(g, &pool[j]),
                    describe(g, &pool[k]),
                    describe(g, &pool[i]),
                    describe(g, &pool[j]),
                    describe(g, &pool[k]),
                    why
                )
            });
        }
        report.push(assoc);

        let mut ident = LawCheck::new("identity");
        for m in &pool {
            let left = compose(&Morphism::identity(m.range()), m);
            ident.record(left.as_ref() == Ok(m), || {
                format!("λ_r {} differs from {}", describe(g, m), describe(g, m))
            });
            let right = compose(m, &Morphism::identity(m.source()));
            ident.record(right.as_ref() == Ok(m), || {
                format!("{} λ_s differs from {}", describe(g, m), describe(g, m))
            });
        }
        report.push(ident);
        Ok(report)
    }

    pub fn verify_functor<D: Degree>(
        &self,
        max_len: usize,
    ) -> Result<VerificationReport, CategoryError> {
        let pool = self.pool::<D>(max_len)?;
        let g = &self.graph;
        let memo = LiftMemo::default();
        let pairs = composable_pairs(&pool);
        let outcomes = pairs
            .par_iter()
            .map(|&(i, j)| {
                let prod = self.compose_memo(&memo, &pool[i], &pool[j])?;
                Ok((
                    *prod.degree() == pool[i].degree().mul(pool[j].degree()),
                    (i, j),
                ))
            })
            .collect::<Result<Vec<_>, CategoryError>>()?;
        let mut report = VerificationReport::new(max_len, pool.len());
        let mut mult = LawCheck::new("degree-multiplicative");
        for (ok, (i, j)) in outcomes {
            mult.record(ok, || {
                format!(
                    "d({} ∘ {}) is not {} · {}",
                    describe(g, &pool[i]),
                    describe(g, &pool[j]),
                    pool[i].degree(),
                    pool[j].degree()
                )
            });
        }
        report.push(mult);
        let mut unit = LawCheck::new("degree-of-identity");
        for v in g.vertex_ids() {
            let id: Morphism<D> = Morphism::identity(v);
            unit.record(id.degree().is_identity(), || {
                format!("d(λ_{}) is not e", g.vertex_name(v))
            });
        }
        report.push(unit);
        Ok(report)
    }

    pub fn verify_factorization<D: Degree>(
        &self,
        max_len: usize,
    ) -> Result<VerificationReport, CategoryError> {
        let pool = self.pool::<D>(max_len)?;
        let g = &self.graph;
        let memo = LiftMemo::default();
        let mut degrees: Vec<D> = Vec::new();
        for m in &pool {
            for w1 in m.degree().prefixes() {
                let w2 = w1.left_quotient(m.degree()).unwrap();
                degrees.push(w1);
                degrees.push(w2);
            }
        }
        degrees.sort();
        degrees.dedup();
        let layers: HashMap<D, Vec<Morphism<D>>> = degrees
            .par_iter()
            .map(|w| enumerate_morphisms(g, &self.collection, w).map(|all| (w.clone(), all)))
            .collect::<Result<_, _>>()?;

        struct Split {
            recompose: bool,
            restrictions: bool,
            unique_pairs: usize,
        }
        let jobs: Vec<(usize, D)> = pool
            .iter()
            .enumerate()
            .flat_map(|(k, m)| m.degree().prefixes().into_iter().map(move |w1| (k, w1)))
            .collect();
        let outcomes = jobs
            .par_iter()
            .map(|(k, w1)| {
                let lam = &pool[*k];
                let w2 = w1.left_quotient(lam.degree()).unwrap();
                let (mu, nu) = self.factorize(lam, w1, &w2)?;
                let back = self.compose_memo(&memo, &mu, &nu)?;
                let restrictions =
                    back.restrict(w1)? == mu && back.restrict_shifted(w1, back.degree())? == nu;
                let mut unique_pairs = 0;
                for a in &layers[w1] {
                    for b in &layers[&w2] {
                        if a.source() == b.range() && self.compose_memo(&memo, a, b)? == *lam {
                            unique_pairs += 1;
                        }
                    }
                }
                Ok(Split {
                    recompose: back == *lam,
                    restrictions,
                    unique_pairs,
                })
            })
            .collect::<Result<Vec<_>, CategoryError>>()?;

        let mut report = VerificationReport::new(max_len, pool.len());
        let mut recompose = LawCheck::new("factor-then-compose");
        let mut restrict = LawCheck::new("composite-restricts-to-factors");
        let mut unique = LawCheck::new("factorization-unique");
        for ((k, w1), out) in jobs.iter().zip(outcomes) {
            let lam = &pool[*k];
            recompose.record(out.recompose, || {
                format!(
                    "splitting {} at {} and recomposing changes it",
                    describe(g, lam),
                    w1
                )
            });
            restrict.record(out.restrictions, || {
                format!(
                    "composite of the factors of {} at {} does not restrict back",
                    describe(g, lam),
                    w1
                )
            });
            unique.record(out.unique_pairs == 1, || {
                format!(
                    "{} has {} factor pairs at {}",
                    describe(g, lam),
                    out.unique_pairs,
                    w1
                )
            });
        }
        report.push(recompose);
        report.push(restrict);
        report.push(unique);
        Ok(report)
    }
}

struct LiftMemo<D>(Mutex<FxHashMap<Path, Morphism<D>>>);

impl<D> Default for LiftMemo<D> {
    fn default() -> Self {
        LiftMemo(Mutex::new(FxHashMap::default()))
    }
}

impl<D: Degree> LiftMemo<D> {
    fn get(&self, x: &Path) -> Option<Morphism<D>> {
        self.0.lock().unwrap().get(x).cloned()
    }

    fn put(&self, x: Path, m: Morphism<D>) {
        self.0.lock().unwrap().insert(x, m);
    }
}

fn composable_pairs<D: Degree>(pool: &[Morphism<D>]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, mu) in pool.iter().enumerate() {
        for (j, nu) in pool.iter().enumerate() {
            if mu.source() == nu.range() {
                out.push((i, j));
            }
        }
    }
    out
}

/// A morphism as its geodesic traversal, e.g. `[ggfh]`.
fn describe<D: Degree>(g: &ColouredGraph, m: &Morphism<D>) -> String {
    match m.shortest_traversal() {
        Ok(p) => format!("[{}]", g.display_path(&p)),
        Err(_) => format!("[degree {}]", m.degree()),
    }
}

/// Outcome of one law over all its instances.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawCheck {
    pub law: String,
    pub instances: usize,
    pub failures: usize,
    pub passed: bool,
    pub counterexample: Option<String>,
}

impl LawCheck {
    pub fn new(law: &str) -> Self {
        LawCheck {
            law: law.to_owned(),
            instances: 0,
            failures: 0,
            passed: true,
            counterexample: None,
        }
    }

    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            self.passed = false;
            if self.counterexample.is_none() {
                self.counterexample = Some(witness());
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub max_len: usize,
    pub pool_size: usize,
    pub passed: bool,
    pub laws: Vec<LawCheck>,
}

impl VerificationReport {
    pub fn new(max_len: usize, pool_size: usize) -> Self {
        VerificationReport {
            max_len,
            pool_size,
            passed: true,
            laws: Vec::new(),
        }
    }

    pub fn push(&mut self, law: LawCheck) {
        self.passed &= law.passed;
        self.laws.push(law);
    }

    /// Concatenates the laws of two reports over the same pool.
    pub fn merge(mut self, other: VerificationReport) -> VerificationReport {
        self.pool_size = self.pool_size.max(other.pool_size);
        for law in other.laws {
            self.push(law);
        }
        self
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {} morphisms from paths of length <= {}",
            if self.passed { "pass" } else { "FAIL" },
            self.pool_size,
            self.max_len
        )?;
        for law in &self.laws {
            write!(
                f,
                "  {:<32} {:>8} instances  {}",
                law.law,
                law.instances,
                if law.passed { "ok" } else { "FAILED" }
            )?;
            if let Some(c) = &law.counterexample {
                write!(f, "  counterexample: {c}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree::{BsWord, SquareShape};
    use crate::graph::tests::example_e;
    use crate::square::tests::{phi1, phi2};

    fn ctx() -> LambdaContext {
        let g = example_e();
        let c = Collection::from_specs(&g, SquareShape::Bs, &[phi1(), phi2()]).unwrap();
        LambdaContext::new(g, c).unwrap()
    }

    fn lift(ctx: &LambdaContext, p: &str) -> Morphism<BsWord> {
        ctx.lift(&ctx.graph().parse_path(p).unwrap()).unwrap()
    }

    #[test]
    fn incomplete_context_is_rejected() {
        let g = example_e();
        let c = Collection::from_specs(&g, SquareShape::Bs, &[phi1()]).unwrap();
        assert!(matches!(
            LambdaContext::new(g, c),
            Err(CategoryError::Incomplete(_))
        ));
    }

    #[test]
    fn compose_examples() {
        let ctx = ctx();
        let gf = ctx.compose(&lift(&ctx, "g"), &lift(&ctx, "f")).unwrap();
        assert_eq!(gf, lift(&ctx, "f k k"));
        let figure = ctx.compose(&lift(&ctx, "g g"), &lift(&ctx, "f h")).unwrap();
        assert_eq!(figure, lift(&ctx, "g g f h"));
        assert_eq!(*figure.degree(), BsWord::new(2, 8u32));
        let u = ctx.graph().vertex("u").unwrap();
        let lg = lift(&ctx, "g");
        assert_eq!(ctx.compose(&Morphism::identity(u), &lg).unwrap(), lg);
        assert_eq!(ctx.compose(&lg, &Morphism::identity(u)).unwrap(), lg);
        assert!(matches!(
            ctx.compose(&lift(&ctx, "f"), &lift(&ctx, "g")),
            Err(CategoryError::NotComposable(..))
        ));
    }

    #[test]
    fn factorize_examples() {
        let ctx = ctx();
        let figure = lift(&ctx, "g g f h");
        let (mu, nu) = ctx
            .factorize(&figure, &BsWord::new(0, 2u32), &BsWord::new(2, 0u32))
            .unwrap();
        assert_eq!(mu, lift(&ctx, "g g"));
        assert_eq!(nu, lift(&ctx, "f h"));
        let (id, same) = ctx
            .factorize(&figure, &BsWord::new(0, 0u32), figure.degree())
            .unwrap();
        assert_eq!(id, Morphism::identity(figure.range()));
        assert_eq!(same, figure);
        let phi1 = lift(&ctx, "g f");
        let (b, a) = ctx.factorize(&phi1, &BsWord::b(), &BsWord::a()).unwrap();
        assert_eq!(b, lift(&ctx, "g"));
        assert_eq!(a, lift(&ctx, "f"));
        assert!(matches!(
            ctx.factorize(&phi1, &BsWord::a(), &BsWord::a()),
            Err(CategoryError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn corrupted_composition_is_caught() {
        let ctx = ctx();
        let g = ctx.graph().clone();
        let gid = g.edge("g").unwrap();
        let kid = g.edge("k").unwrap();
        let report = ctx
            .verify_category_with::<BsWord, _>(2, |mu, nu| {
                let good = ctx.compose(mu, nu)?;
                // swap g and k in every edge image of long composites
                if good.edge_map().len() < 3 {
                    return Ok(good);
                }
                let emap = good
                    .edge_map()
                    .iter()
                    .map(|(key, &e)| {
                        let e = if e == gid {
                            kid
                        } else if e == kid {
                            gid
                        } else {
                            e
                        };
                        (key.clone(), e)
                    })
                    .collect();
                Ok(Morphism::from_maps_unchecked(
                    good.degree().clone(),
                    good.vertex_map().clone(),
                    emap,
                ))
            })
            .unwrap();
        assert!(!report.passed);
        let failed: Vec<_> = report.laws.iter().filter(|l| !l.passed).collect();
        assert!(failed.iter().all(|l| l.counterexample.is_some()));
    }

    #[test]
    fn empty_graph_passes_vacuously() {
        let g = ColouredGraph::default();
        let c = Collection::new(SquareShape::Bs, Vec::new()).unwrap();
        let ctx = LambdaContext::new(g, c).unwrap();
        let report = ctx.verify_category::<BsWord>(3).unwrap();
        assert!(report.passed);
        assert_eq!(report.pool_size, 0);
    }
}
