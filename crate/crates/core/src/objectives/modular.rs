use crate::element::Element;
use crate::oracle::Objective;

/// An additive objective, `f(S) = Σ_{s ∈ S} w_s`.
#[derive(Clone, Debug)]
pub struct Modular {
    weights: Vec<f64>,
}

impl Modular {
    pub fn new(weights: Vec<f64>) -> Self {
        assert!(
            weights.iter().all(|&w| w >= 0.0 && w.is_finite()),
            "modular weights must be finite and non-negative"
        );
        Modular { weights }
    }

    pub fn weight(&self, e: Element) -> f64 {
        self.weights[e.index()]
    }
}

#[derive(Clone, Debug)]
pub struct ModularState {
    member: Vec<bool>,
    value: f64,
}

impl Objective for Modular {
    type State = ModularState;

    fn ground_size(&self) -> usize {
        self.weights.len()
    }

    fn empty_state(&self) -> ModularState {
        ModularState {
            member: vec![false; self.weights.len()],
            value: 0.0,
        }
    }

    fn state_value(&self, st: &ModularState) -> f64 {
        st.value
    }

    fn value_with(&self, st: &mut ModularState, extra: &[Element]) -> f64 {
        let mut fresh: Vec<Element> = extra
            .iter()
            .copied()
            .filter(|e| !st.member[e.index()])
            .collect();
        fresh.sort_unstable();
        fresh.dedup();
        st.value + fresh.iter().map(|&e| self.weight(e)).sum::<f64>()
    }

    fn insert(&self, st: &mut ModularState, extra: &[Element]) {
        for &e in extra {
            if !st.member[e.index()] {
                st.member[e.index()] = true;
                st.value += self.weight(e);
            }
        }
    }
}
