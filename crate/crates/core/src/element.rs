//! Ground-set elements and insertion-ordered element sets.

use std::collections::HashSet;
use std::fmt;

/// A member of the ground set, identified by a dense index in `0..n`.
///
/// Indices are assigned once at ingestion and never change, so the i-th
/// element of one pass is the i-th element of every other pass.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(pub u32);

impl Element {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<u32> for Element {
    fn from(i: u32) -> Self {
        Element(i)
    }
}

impl From<usize> for Element {
    fn from(i: usize) -> Self {
        Element(u32::try_from(i).expect("element index exceeds u32"))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A set of distinct elements that remembers the order of insertion.
///
/// The streaming algorithms reason about "the elements most recently added",
/// so the oldest element is always at position 0 and the newest at the end.
#[derive(Clone, Debug, Default)]
pub struct ElementSet {
    items: Vec<Element>,
    members: HashSet<Element>,
}

impl ElementSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(cap: usize) -> Self {
        ElementSet {
            items: Vec::with_capacity(cap),
            members: HashSet::with_capacity(cap),
        }
    }

    /// Appends `e` as the most recent element. Returns `false` if it was
    /// already present, in which case its position is unchanged.
    pub fn insert(&mut self, e: Element) -> bool {
        let fresh = self.members.insert(e);
        if fresh {
            self.items.push(e);
        }
        fresh
    }

    pub fn extend_from_slice(&mut self, es: &[Element]) {
        for &e in es {
            self.insert(e);
        }
    }

    pub fn contains(&self, e: Element) -> bool {
        self.members.contains(&e)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn clear(&mut self) {
        self.items.clear();
        self.members.clear();
    }

    /// Elements from oldest to newest.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Element> + ExactSizeIterator + '_ {
        self.items.iter().copied()
    }

    pub fn as_slice(&self) -> &[Element] {
        &self.items
    }

    /// The `m` most recently inserted elements, oldest first.
    pub fn most_recent(&self, m: usize) -> &[Element] {
        let s = self.as_slice();
        &s[s.len().saturating_sub(m)..]
    }

    /// Drops all but the `m` most recently inserted elements.
    pub fn retain_most_recent(&mut self, m: usize) {
        let excess = self.items.len().saturating_sub(m);
        for e in self.items.drain(..excess) {
            self.members.remove(&e);
        }
    }

    pub fn to_vec(&self) -> Vec<Element> {
        self.as_slice().to_vec()
    }
}

impl PartialEq for ElementSet {
    /// Two sets are equal when they hold the same elements in the same order.
    fn eq(&self, other: &Self) -> bool {
        self.items == other.items
    }
}

impl Eq for ElementSet {}

impl FromIterator<Element> for ElementSet {
    fn from_iter<I: IntoIterator<Item = Element>>(iter: I) -> Self {
        let mut set = ElementSet::new();
        for e in iter {
            set.insert(e);
        }
        set
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = Element;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, Element>>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.iter().copied()
    }
}

/// Shorthand for building element vectors from plain indices.
pub fn elements<I>(indices: I) -> Vec<Element>
where
    I: IntoIterator,
    I::Item: Into<Element>,
{
    indices.into_iter().map(Into::into).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insertion_order_and_dedup() {
        let mut s = ElementSet::new();
        assert!(s.insert(Element(3)));
        assert!(s.insert(Element(1)));
        assert!(!s.insert(Element(3)));
        assert!(s.insert(Element(7)));
        assert_eq!(s.as_slice(), &elements([3u32, 1, 7])[..]);
        assert_eq!(s.most_recent(2), &elements([1u32, 7])[..]);
        assert_eq!(s.most_recent(10).len(), 3);
    }

    #[test]
    fn retain_most_recent_drops_oldest() {
        let mut s: ElementSet = elements(0u32..10).into_iter().collect();
        s.retain_most_recent(4);
        assert_eq!(s.to_vec(), elements([6u32, 7, 8, 9]));
        assert!(!s.contains(Element(0)));
        // re-inserting a dropped element makes it the newest
        s.insert(Element(0));
        assert_eq!(s.most_recent(1), &[Element(0)]);
        s.retain_most_recent(100);
        assert_eq!(s.len(), 5);
    }
}
