use std::sync::atomic::{AtomicU64, Ordering};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::oracle::Objective;

/// Which member of the indistinguishable pair to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// `f(A) = min(|A|, ck)`.
    Plain,
    /// `g(A) = ck` when the hidden element is in `A`, otherwise `f(A)`.
    Hidden(Element),
}

/// The query lower-bound construction: two monotone submodular functions
/// that differ only on small sets containing one hidden element.
///
/// The instance counts *distinguishing* queries, those of a set `S` with
/// `|S| <= ck - 1` that contains the hidden element. Only queries are
/// counted; building incremental state is not.
#[derive(Debug)]
pub struct AdversarialInstance {
    n: usize,
    c: usize,
    k: usize,
    variant: Variant,
    distinguishing: AtomicU64,
}

impl AdversarialInstance {
    pub fn new(n: usize, c: usize, k: usize, variant: Variant) -> Result<Self> {
        if c < 2 {
            return Err(Error::param(format!(
                "adversarial instance needs c >= 2, got {c}"
            )));
        }
        if k < 1 {
            return Err(Error::param("adversarial instance needs k >= 1"));
        }
        if let Variant::Hidden(a) = variant {
            if a.index() >= n {
                return Err(Error::ElementOutOfRange {
                    index: a.index(),
                    n,
                });
            }
        }
        Ok(AdversarialInstance {
            n,
            c,
            k,
            variant,
            distinguishing: AtomicU64::new(0),
        })
    }

    pub fn plain(n: usize, c: usize, k: usize) -> Result<Self> {
        Self::new(n, c, k, Variant::Plain)
    }

    pub fn hidden(n: usize, c: usize, k: usize, a: Element) -> Result<Self> {
        Self::new(n, c, k, Variant::Hidden(a))
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// `ck`, the value cap.
    pub fn cap(&self) -> usize {
        self.c * self.k
    }

    /// Number of distinguishing queries seen so far.
    pub fn distinguishing_queries(&self) -> u64 {
        self.distinguishing.load(Ordering::Relaxed)
    }

    fn value_of(&self, size: usize, has_hidden: bool) -> f64 {
        let cap = self.cap();
        match self.variant {
            Variant::Hidden(_) if has_hidden => cap as f64,
            _ => size.min(cap) as f64,
        }
    }

    fn probe(&self, size: usize, has_hidden: bool) {
        if has_hidden && size < self.cap() {
            self.distinguishing.fetch_add(1, Ordering::Relaxed);
        }
    }

    fn is_hidden(&self, e: Element) -> bool {
        matches!(self.variant, Variant::Hidden(a) if a == e)
    }
}

#[derive(Clone, Debug)]
pub struct AdversarialState {
    member: Vec<bool>,
    size: usize,
    has_hidden: bool,
    seen: Vec<u32>,
    generation: u32,
}

impl Objective for AdversarialInstance {
    type State = AdversarialState;

    fn ground_size(&self) -> usize {
        self.n
    }

    fn empty_state(&self) -> AdversarialState {
        AdversarialState {
            member: vec![false; self.n],
            size: 0,
            has_hidden: false,
            seen: vec![0; self.n],
            generation: 0,
        }
    }

    fn state_value(&self, st: &AdversarialState) -> f64 {
        self.probe(st.size, st.has_hidden);
        self.value_of(st.size, st.has_hidden)
    }

    fn measure_state(&self, st: &AdversarialState) -> f64 {
        self.value_of(st.size, st.has_hidden)
    }

    fn value_with(&self, st: &mut AdversarialState, extra: &[Element]) -> f64 {
        st.generation = st.generation.wrapping_add(1);
        if st.generation == 0 {
            st.seen.fill(0);
            st.generation = 1;
        }
        let gen = st.generation;
        let mut size = st.size;
        let mut has_hidden = st.has_hidden;
        for &e in extra {
            let i = e.index();
            if !st.member[i] && st.seen[i] != gen {
                st.seen[i] = gen;
                size += 1;
                has_hidden |= self.is_hidden(e);
            }
        }
        self.probe(size, has_hidden);
        self.value_of(size, has_hidden)
    }

    fn insert(&self, st: &mut AdversarialState, extra: &[Element]) {
        for &e in extra {
            let i = e.index();
            if !st.member[i] {
                st.member[i] = true;
                st.size += 1;
                st.has_hidden |= self.is_hidden(e);
            }
        }
    }
}

/// `min(|S|, ck)` or its hidden-element variant.
pub fn adversarial_eval(instance: &AdversarialInstance, set: &[Element]) -> f64 {
    instance.evaluate(set)
}
