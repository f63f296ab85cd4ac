use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::element::Element;
use crate::objectives::GraphInstance;
use crate::oracle::Objective;

/// Revenue maximization in the concave graph model:
/// `f(S) = Σ_u (Σ_{v ∈ S} w_uv)^α_u`, summed over every node `u`.
#[derive(Clone, Debug)]
pub struct RevenueInstance<'g> {
    graph: &'g GraphInstance,
    // aligned with the graph's flat neighbor array
    weights: Vec<f64>,
    alpha: Vec<f64>,
    seed: u64,
}

/// Exponents drawn uniformly from the open interval (0, 1), one per node.
///
/// Node `u` uses stream `u` of a ChaCha8 generator keyed by `seed`, so the
/// draw for a node depends only on `(seed, u)`.
pub fn draw_exponents(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n as u64)
        .map(|u| {
            rng.set_stream(u);
            rng.set_word_pos(0);
            rng.sample(Open01)
        })
        .collect()
}

/// Unit-weight revenue instance; a pure function of `(graph, seed)`.
pub fn make_revenue_instance(graph: &GraphInstance, seed: u64) -> RevenueInstance<'_> {
    RevenueInstance {
        graph,
        weights: vec![1.0; 2 * graph.edge_count()],
        alpha: draw_exponents(graph.node_count(), seed),
        seed,
    }
}

impl<'g> RevenueInstance<'g> {
    pub fn graph(&self) -> &'g GraphInstance {
        self.graph
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Replaces the exponents. Each must lie strictly inside (0, 1).
    pub fn with_alpha(mut self, alpha: Vec<f64>) -> Self {
        assert_eq!(alpha.len(), self.graph.node_count());
        assert!(
            alpha.iter().all(|&a| a > 0.0 && a < 1.0),
            "exponent outside (0,1)"
        );
        self.alpha = alpha;
        self
    }

    fn weighted_neighbors(&self, v: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.graph.edge_range(v);
        self.graph
            .neighbors(v)
            .iter()
            .zip(&self.weights[range])
            .map(|(&u, &w)| (u as usize, w))
    }

    #[inline]
    fn revenue(&self, u: usize, load: f64) -> f64 {
        load.powf(self.alpha[u])
    }
}

#[derive(Clone, Debug)]
pub struct RevenueState {
    load: Vec<f64>,
    member: Vec<bool>,
    value: f64,
    // scratch for value_with
    acc: Vec<f64>,
    touched: Vec<u32>,
    // per-call marks: stamp for loaded nodes, seen for nodes of `extra`
    stamp: Vec<u32>,
    seen: Vec<u32>,
    generation: u32,
}

impl RevenueInstance<'_> {
    /// Accumulates the extra load `extra` puts on each node into the scratch
    /// buffers and returns the resulting change in value.
    fn stage(&self, st: &mut RevenueState, extra: &[Element]) -> f64 {
        st.generation = st.generation.wrapping_add(1);
        if st.generation == 0 {
            st.stamp.fill(0);
            st.seen.fill(0);
            st.generation = 1;
        }
        let gen = st.generation;
        st.touched.clear();
        for &v in extra {
            let v = v.index();
            if st.member[v] || st.seen[v] == gen {
                continue;
            }
            st.seen[v] = gen;
            for (u, w) in self.weighted_neighbors(v) {
                if st.stamp[u] != gen {
                    st.stamp[u] = gen;
                    st.acc[u] = 0.0;
                    st.touched.push(u as u32);
                }
                st.acc[u] += w;
            }
        }
        st.touched
            .iter()
            .map(|&u| {
                let u = u as usize;
                self.revenue(u, st.load[u] + st.acc[u]) - self.revenue(u, st.load[u])
            })
            .sum()
    }
}

impl Objective for RevenueInstance<'_> {
    type State = RevenueState;

    fn ground_size(&self) -> usize {
        self.graph.node_count()
    }

    fn empty_state(&self) -> RevenueState {
        let n = self.graph.node_count();
        RevenueState {
            load: vec![0.0; n],
            member: vec![false; n],
            value: 0.0,
            acc: vec![0.0; n],
            touched: Vec::new(),
            stamp: vec![0; n],
            seen: vec![0; n],
            generation: 0,
        }
    }

    fn state_value(&self, state: &RevenueState) -> f64 {
        state.value
    }

    fn value_with(&self, state: &mut RevenueState, extra: &[Element]) -> f64 {
        state.value + self.stage(state, extra)
    }

    fn insert(&self, state: &mut RevenueState, extra: &[Element]) {
        let delta = self.stage(state, extra);
        for i in 0..state.touched.len() {
            let u = state.touched[i] as usize;
            state.load[u] += state.acc[u];
        }
        for &v in extra {
            state.member[v.index()] = true;
        }
        state.value += delta;
    }

    fn evaluate(&self, set: &[Element]) -> f64 {
        let n = self.graph.node_count();
        let mut member = vec![false; n];
        for &v in set {
            member[v.index()] = true;
        }
        let mut load = vec![0.0; n];
        for v in (0..n).filter(|&v| member[v]) {
            for (u, w) in self.weighted_neighbors(v) {
                load[u] += w;
            }
        }
        (0..n).map(|u| self.revenue(u, load[u])).sum()
    }
}

/// `f(S)` for the revenue objective, computed from scratch.
pub fn revenue_eval(instance: &RevenueInstance<'_>, set: &[Element]) -> f64 {
    instance.evaluate(set)
}
