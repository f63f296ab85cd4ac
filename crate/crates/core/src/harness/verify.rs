//! Small-instance verification against exhaustive search, plus property
//! checks on the objectives.
//!
//! Each `check_*` function is self-contained and returns one [`Check`];
//! [`verify_suite`] runs them all.

use std::fmt;

use rand::seq::{IteratorRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::baselines::run_greedy;
use crate::boostratio::{pass_bound, run_boostratio, run_qs_br, BoostParams};
use crate::element::{elements, Element};
use crate::error::Result;
use crate::objectives::generate::{barabasi_albert, gnm, gnp};
use crate::objectives::{
    make_revenue_instance, AdversarialInstance, GraphInstance, MaxCover, Modular,
};
use crate::oracle::{brute_force_opt, Objective};
use crate::quickstream::{
    dispatch, largek_applies, largek_ratio, memory_bound, query_bound, run_quicksingleton,
    run_quickstream, run_quickstream_largek, stream_ratio_nominal, LargeKConfig, QuickStream,
    QuickStreamConfig,
};

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub instances: usize,
    pub permutations: usize,
    pub triples: usize,
    pub eps: f64,
    pub seed: u64,
    /// Mutation knob: accept blocks only on strictly positive slack.
    pub strict_acceptance: bool,
    /// Mutation knob: the threshold schedule's floor divisor (4 unmutated).
    pub floor_divisor: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            instances: 200,
            permutations: 5,
            triples: 1000,
            eps: 0.1,
            seed: 2021,
            strict_acceptance: false,
            floor_divisor: 4.0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, failures: Vec<String>, summary: String) -> Self {
        let passed = failures.is_empty();
        let detail = if passed {
            summary
        } else {
            let shown: Vec<_> = failures.iter().take(3).cloned().collect();
            format!("{} failure(s); first: {}", failures.len(), shown.join("; "))
        };
        Check {
            name,
            passed,
            detail,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {}: {}", self.name, self.detail)
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Random max-cover graphs with `4 ≤ n ≤ 10`.
pub fn small_instances(count: usize, seed: u64) -> Vec<GraphInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(4..=10);
            let p = rng.random_range(0.15..0.6);
            gnp(n, p, rng.random())
        })
        .collect()
}

/// Node order followed by `count − 1` seeded shuffles.
pub fn permutations(n: usize, count: usize, seed: u64) -> Vec<Vec<Element>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base: Vec<Element> = (0..n).map(Element::from).collect();
    (0..count)
        .map(|i| {
            let mut order = base.clone();
            if i > 0 {
                order.shuffle(&mut rng);
            }
            order
        })
        .collect()
}

/// Slack for float comparisons against exhaustive optima.
fn tol(opt: f64) -> f64 {
    1e-9 * opt.max(1.0)
}

/// A zero-gain first block must be accepted: the comparison is `≥`.
pub fn check_zero_gain_at_empty(opts: &VerifyOptions) -> Result<Check> {
    let f = Modular::new(vec![0.0, 1.0]);
    let mut cfg = QuickStreamConfig::new(2, 1, opts.eps);
    cfg.strict_acceptance = opts.strict_acceptance;
    let mut qs = QuickStream::new(&f, cfg)?;
    qs.process_block(&elements([0u32]))?;
    let failures = if qs.buffer().contains(Element(0)) {
        vec![]
    } else {
        vec!["zero-gain block rejected while the buffer was empty".into()]
    };
    Ok(Check::new(
        "qs-zero-gain-at-empty",
        failures,
        "accepted".into(),
    ))
}

/// Ratio, query, memory, feasibility, and progress checks for the block
/// algorithm over the small-instance family, `k ∈ {2, 3}`, `c ∈ {1, 2}`.
pub fn check_single_pass(opts: &VerifyOptions) -> Result<Check> {
    let mut failures = Vec::new();
    let mut runs = 0;
    let mut worst = f64::INFINITY;
    for (i, g) in small_instances(opts.instances, opts.seed)
        .iter()
        .enumerate()
    {
        let f = MaxCover::new(g);
        let n = g.node_count();
        for k in [2, 3] {
            let (_, opt) = brute_force_opt(&f, k)?;
            for c in [1, 2] {
                for order in permutations(n, opts.permutations, opts.seed ^ i as u64) {
                    let mut cfg = QuickStreamConfig::new(k, c, opts.eps).with_audit(true);
                    cfg.strict_acceptance = opts.strict_acceptance;
                    let run = run_quickstream(&f, &order, cfg)?;
                    runs += 1;
                    let o = &run.outcome;
                    let target = stream_ratio_nominal(c, opts.eps) * opt;
                    if opt > 0.0 {
                        worst = worst.min(o.value / opt);
                    }
                    let tag = format!("instance {i} k={k} c={c}");
                    if o.value < target {
                        failures.push(format!("{tag}: value {} < {target}", o.value));
                    }
                    if o.ledger.queries() > query_bound(n, c) {
                        failures.push(format!("{tag}: {} queries", o.ledger.queries()));
                    }
                    if o.ledger.peak_stored() as f64 > memory_bound(c, k, opts.eps) {
                        failures.push(format!("{tag}: stored {}", o.ledger.peak_stored()));
                    }
                    if o.solution.len() > k {
                        failures.push(format!("{tag}: solution size {}", o.solution.len()));
                    }
                    if run.progress_violations + run.true_value_decreases > 0 {
                        failures.push(format!("{tag}: f(A) decreased"));
                    }
                }
            }
        }
    }
    Ok(Check::new(
        "qs-single-pass",
        failures,
        format!("{runs} runs, worst value/OPT {worst:.4}"),
    ))
}

/// Budget-one variant: value ≥ OPT/c.
pub fn check_singleton(opts: &VerifyOptions) -> Result<Check> {
    let mut failures = Vec::new();
    let mut runs = 0;
    for (i, g) in small_instances(opts.instances, opts.seed)
        .iter()
        .enumerate()
    {
        let f = MaxCover::new(g);
        let n = g.node_count();
        let (_, opt) = brute_force_opt(&f, 1)?;
        for c in [1, 2, 3] {
            for order in permutations(n, opts.permutations, opts.seed ^ i as u64) {
                let o = run_quicksingleton(&f, &order, c)?;
                runs += 1;
                if o.value < opt / c as f64 - tol(opt) || o.solution.len() > 1 {
                    failures.push(format!(
                        "instance {i} c={c}: value {} vs OPT {opt}",
                        o.value
                    ));
                }
                if o.ledger.queries() > query_bound(n, c) {
                    failures.push(format!(
                        "instance {i} c={c}: {} queries",
                        o.ledger.queries()
                    ));
                }
            }
        }
    }
    Ok(Check::new(
        "qsingleton-ratio",
        failures,
        format!("{runs} runs"),
    ))
}

/// Large-budget variant where `k ≥ 8c/e` fits the instance.
pub fn check_largek(opts: &VerifyOptions) -> Result<Check> {
    let mut failures = Vec::new();
    let mut runs = 0;
    for (i, g) in small_instances(opts.instances, opts.seed)
        .iter()
        .enumerate()
    {
        let f = MaxCover::new(g);
        let n = g.node_count();
        for (k, c) in [(3, 1), (4, 1), (6, 2)] {
            if k > n || !largek_applies(k, c) {
                continue;
            }
            let (_, opt) = brute_force_opt(&f, k)?;
            for order in permutations(n, opts.permutations, opts.seed ^ i as u64) {
                let run =
                    run_quickstream_largek(&f, &order, &LargeKConfig::new(k, c).with_audit(true))?;
                runs += 1;
                let o = &run.outcome;
                let target = largek_ratio(c, k) * opt;
                let tag = format!("instance {i} k={k} c={c}");
                if o.value < target - tol(opt) {
                    failures.push(format!("{tag}: value {} < {target}", o.value));
                }
                if o.ledger.queries() > n.div_ceil(c) as u64 {
                    failures.push(format!("{tag}: {} queries", o.ledger.queries()));
                }
                if o.solution.len() > k || run.progress_violations + run.true_value_decreases > 0 {
                    failures.push(format!("{tag}: infeasible or non-monotone"));
                }
            }
        }
    }
    Ok(Check::new(
        "qslargek-ratio",
        failures,
        format!("{runs} runs"),
    ))
}

/// Boosted composition: value ≥ (1 − e^{−1+ε})·OPT, the per-addition gain
/// inequality on runs that fill `k`, and the pass bound. The pass bound is
/// checked with the schedule built from `opts.floor_divisor`, including on
/// a fixed star instance whose run never fills `k`.
pub fn check_boostratio(opts: &VerifyOptions) -> Result<Check> {
    let eps = opts.eps;
    let target_ratio = 1.0 - (-1.0 + eps).exp();
    let mut failures = Vec::new();
    let mut runs = 0;
    let mut claim_checks = 0;

    let star = GraphInstance::from_edges(4, [(0, 1), (0, 2), (0, 3)]);
    let star_f = MaxCover::new(&star);
    let mut star_params = BoostParams::new(3.0, 0.25, eps, 2);
    star_params.floor_divisor = opts.floor_divisor;
    let star_run = run_boostratio(&star_f, &star_params, &elements(0u32..4))?;
    if star_run.outcome.ledger.passes() > pass_bound(0.25, eps) {
        failures.push(format!(
            "star: {} passes > bound {}",
            star_run.outcome.ledger.passes(),
            pass_bound(0.25, eps)
        ));
    }

    for (i, g) in small_instances(opts.instances, opts.seed)
        .iter()
        .enumerate()
    {
        let f = MaxCover::new(g);
        let n = g.node_count();
        for k in 1..=4.min(n) {
            let (_, opt) = brute_force_opt(&f, k)?;
            for order in permutations(n, opts.permutations, opts.seed ^ i as u64) {
                let tag = format!("instance {i} k={k}");
                let run = run_qs_br(&f, &order, k, eps)?;
                runs += 1;
                if run.outcome.value < target_ratio * opt - tol(opt) {
                    failures.push(format!("{tag}: value {} vs OPT {opt}", run.outcome.value));
                }
                if run.boost_passes > pass_bound(run.feed_ratio, eps) {
                    failures.push(format!("{tag}: {} passes", run.boost_passes));
                }

                let feed = dispatch(&f, &order, k, 1, eps)?;
                if feed.outcome.value == 0.0 {
                    continue;
                }
                let mut params = BoostParams::new(feed.outcome.value, feed.ratio, eps, k);
                params.floor_divisor = opts.floor_divisor;
                let boost = run_boostratio(&f, &params, &order)?;
                if boost.outcome.ledger.passes() > pass_bound(feed.ratio, eps) {
                    failures.push(format!(
                        "{tag}: {} passes > bound {}",
                        boost.outcome.ledger.passes(),
                        pass_bound(feed.ratio, eps)
                    ));
                }
                if boost.outcome.solution.len() == k {
                    for a in &boost.additions {
                        claim_checks += 1;
                        let need = (1.0 - eps) / k as f64 * (opt - a.value_before);
                        if a.value_after - a.value_before < need - tol(opt) {
                            failures.push(format!("{tag}: addition gain below (1-eps)/k gap"));
                        }
                    }
                }
            }
        }
    }
    Ok(Check::new(
        "boostratio",
        failures,
        format!("{runs} runs, {claim_checks} per-addition checks"),
    ))
}

/// Greedy ≥ (1 − 1/e)·OPT and lazy ≡ eager.
pub fn check_greedy(opts: &VerifyOptions) -> Result<Check> {
    let bound = 1.0 - (-1f64).exp();
    let mut failures = Vec::new();
    for (i, g) in small_instances(opts.instances, opts.seed)
        .iter()
        .enumerate()
    {
        let f = MaxCover::new(g);
        for k in 1..=4.min(g.node_count()) {
            let (_, opt) = brute_force_opt(&f, k)?;
            let eager = run_greedy(&f, k, false)?;
            let lazy = run_greedy(&f, k, true)?;
            if eager.value < bound * opt - tol(opt) {
                failures.push(format!(
                    "instance {i} k={k}: greedy {} vs OPT {opt}",
                    eager.value
                ));
            }
            if eager.solution != lazy.solution || lazy.ledger.queries() > eager.ledger.queries() {
                failures.push(format!("instance {i} k={k}: lazy differs from eager"));
            }
        }
    }
    Ok(Check::new(
        "greedy",
        failures,
        format!("{} instances", opts.instances),
    ))
}

/// Monotonicity and submodularity on random `A ⊆ B`, `x ∉ B`, and
/// agreement of incremental evaluation with evaluation from scratch.
pub fn property_failures<F: Objective>(
    f: &F,
    triples: usize,
    tolerance: f64,
    seed: u64,
) -> Vec<String> {
    let n = f.ground_size();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for t in 0..triples {
        let b_size = rng.random_range(0..n);
        let b: Vec<Element> = (0..n).map(Element::from).choose_multiple(&mut rng, b_size);
        let a: Vec<Element> = b.iter().copied().filter(|_| rng.random_bool(0.5)).collect();
        let x = loop {
            let x = Element::from(rng.random_range(0..n));
            if !b.contains(&x) {
                break x;
            }
        };
        let fa = f.measure(&a);
        let fb = f.measure(&b);
        let mut st_a = f.empty_state();
        f.insert(&mut st_a, &a);
        let mut st_b = f.empty_state();
        f.insert(&mut st_b, &b);
        let fax = f.value_with(&mut st_a, &[x]);
        let fbx = f.value_with(&mut st_b, &[x]);
        if fa > fb + tolerance {
            failures.push(format!("triple {t}: f(A) = {fa} > f(B) = {fb}"));
        }
        if fax - fa < fbx - fb - tolerance {
            failures.push(format!(
                "triple {t}: gain at A {} < gain at B {}",
                fax - fa,
                fbx - fb
            ));
        }
        let mut ax = a.clone();
        ax.push(x);
        if (f.measure(&ax) - fax).abs() > tolerance {
            failures.push(format!("triple {t}: incremental value disagrees"));
        }
    }
    failures
}

/// Three graphs used for the objective checks.
pub fn property_graphs(seed: u64) -> [GraphInstance; 3] {
    [
        gnm(60, 150, seed),
        barabasi_albert(80, 3, seed),
        gnp(40, 0.08, seed),
    ]
}

pub fn check_objectives(opts: &VerifyOptions) -> Result<Check> {
    let mut failures = Vec::new();
    for (i, g) in property_graphs(opts.seed).iter().enumerate() {
        let cover = MaxCover::new(g);
        for f in property_failures(&cover, opts.triples, 0.0, opts.seed + i as u64) {
            failures.push(format!("maxcover graph {i}: {f}"));
        }
        let revenue = make_revenue_instance(g, opts.seed);
        for f in property_failures(&revenue, opts.triples, 1e-9, opts.seed + i as u64) {
            failures.push(format!("revmax graph {i}: {f}"));
        }
        for u in g.nodes() {
            let d = g.degree(u.index());
            if d > 0 && cover.measure(&[u]) != (1 + d) as f64 {
                failures.push(format!("maxcover graph {i}: f({{{u}}}) != 1 + degree"));
            }
        }
    }
    let plain = AdversarialInstance::plain(50, 2, 5)?;
    for f in property_failures(&plain, opts.triples, 0.0, opts.seed) {
        failures.push(format!("adversarial f: {f}"));
    }
    let hidden = AdversarialInstance::hidden(50, 2, 5, Element(17))?;
    for f in property_failures(&hidden, opts.triples, 0.0, opts.seed) {
        failures.push(format!("adversarial g: {f}"));
    }
    Ok(Check::new(
        "objective-properties",
        failures,
        format!("{} triples per objective and graph", opts.triples),
    ))
}

pub fn verify_suite(opts: &VerifyOptions) -> Result<VerifyReport> {
    Ok(VerifyReport {
        checks: vec![
            check_zero_gain_at_empty(opts)?,
            check_single_pass(opts)?,
            check_singleton(opts)?,
            check_largek(opts)?,
            check_boostratio(opts)?,
            check_greedy(opts)?,
            check_objectives(opts)?,
        ],
    })
}
