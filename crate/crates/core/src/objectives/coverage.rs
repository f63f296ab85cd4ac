use crate::element::Element;
use crate::objectives::GraphInstance;
use crate::oracle::Objective;

/// Maximum coverage on a graph: `f(S)` is the number of vertices incident
/// with some edge that touches `S`.
///
/// For a non-isolated `u` this is its closed neighborhood; an isolated
/// vertex covers nothing.
#[derive(Clone, Copy, Debug)]
pub struct MaxCover<'g> {
    graph: &'g GraphInstance,
}

impl<'g> MaxCover<'g> {
    pub fn new(graph: &'g GraphInstance) -> Self {
        MaxCover { graph }
    }

    pub fn graph(&self) -> &'g GraphInstance {
        self.graph
    }

    /// Calls `visit` on every vertex covered by `v`.
    #[inline]
    fn for_covered(&self, v: Element, mut visit: impl FnMut(usize)) {
        let nb = self.graph.neighbors(v.index());
        if nb.is_empty() {
            return;
        }
        visit(v.index());
        for &w in nb {
            visit(w as usize);
        }
    }
}

#[derive(Clone, Debug)]
pub struct CoverState {
    covered: Vec<bool>,
    count: usize,
    // scratch marks for value_with; a vertex is marked iff stamp == generation
    stamp: Vec<u32>,
    generation: u32,
}

impl CoverState {
    fn next_generation(&mut self) -> u32 {
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.stamp.fill(0);
            self.generation = 1;
        }
        self.generation
    }
}

impl Objective for MaxCover<'_> {
    type State = CoverState;

    fn ground_size(&self) -> usize {
        self.graph.node_count()
    }

    fn empty_state(&self) -> CoverState {
        let n = self.graph.node_count();
        CoverState {
            covered: vec![false; n],
            count: 0,
            stamp: vec![0; n],
            generation: 0,
        }
    }

    fn state_value(&self, state: &CoverState) -> f64 {
        state.count as f64
    }

    fn value_with(&self, state: &mut CoverState, extra: &[Element]) -> f64 {
        let gen = state.next_generation();
        let mut fresh = 0usize;
        for &v in extra {
            self.for_covered(v, |w| {
                if !state.covered[w] && state.stamp[w] != gen {
                    state.stamp[w] = gen;
                    fresh += 1;
                }
            });
        }
        (state.count + fresh) as f64
    }

    fn insert(&self, state: &mut CoverState, extra: &[Element]) {
        for &v in extra {
            self.for_covered(v, |w| {
                if !state.covered[w] {
                    state.covered[w] = true;
                    state.count += 1;
                }
            });
        }
    }
}

/// `|S^I|` for `S` on `graph`.
pub fn max_cover_eval(graph: &GraphInstance, set: &[Element]) -> usize {
    MaxCover::new(graph).evaluate(set) as usize
}
