use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use crate::element::Element;
use crate::error::{Error, Result};

/// An undirected simple graph in compressed adjacency form.
///
/// Adjacency is symmetric, free of self-loops and duplicate edges, and each
/// neighbor list is sorted. Nodes are dense indices; `labels` keeps the IDs
/// they had in the source file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphInstance {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    labels: Vec<u64>,
}

impl GraphInstance {
    /// Builds a graph on nodes `0..n` from an arbitrary edge list. Self-loops
    /// and repeated edges (in either orientation) are dropped.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Self {
        Self::with_labels((0..n as u64).collect(), edges)
    }

    fn with_labels(labels: Vec<u64>, edges: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let n = labels.len();
        let mut pairs: Vec<(u32, u32)> = edges
            .into_iter()
            .filter(|(u, v)| u != v)
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        assert!(
            pairs.iter().all(|&(_, v)| (v as usize) < n),
            "edge endpoint outside 0..{n}"
        );
        pairs.sort_unstable();
        pairs.dedup();

        let mut degree = vec![0usize; n];
        for &(u, v) in &pairs {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0u32; 2 * pairs.len()];
        for &(u, v) in &pairs {
            targets[fill[u as usize]] = v;
            fill[u as usize] += 1;
            targets[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        for u in 0..n {
            targets[offsets[u]..offsets[u + 1]].sort_unstable();
        }
        GraphInstance {
            offsets,
            targets,
            labels,
        }
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, u: usize) -> &[u32] {
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        self.offsets[u + 1] - self.offsets[u]
    }

    /// Position of `(u, v)` in the flat target array, for per-edge payloads.
    #[inline]
    pub(crate) fn edge_range(&self, u: usize) -> std::ops::Range<usize> {
        self.offsets[u]..self.offsets[u + 1]
    }

    /// Original dataset ID of a node.
    pub fn label(&self, e: Element) -> u64 {
        self.labels[e.index()]
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = Element> {
        (0..self.node_count() as u32).map(Element)
    }
}

/// Reads a SNAP-style edge list: one `u v` pair per line, arbitrary
/// whitespace, `#` comments. Node IDs are remapped to dense indices in order
/// of first appearance and the graph is symmetrized.
pub fn load_edge_list(path: impl AsRef<Path>) -> Result<GraphInstance> {
    let path = path.as_ref();
    let reader = BufReader::new(File::open(path)?);

    let mut ids: HashMap<u64, u32> = HashMap::new();
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    let mut intern = |label: u64| -> u32 {
        *ids.entry(label).or_insert_with(|| {
            labels.push(label);
            (labels.len() - 1) as u32
        })
    };

    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            path: path.to_path_buf(),
            line: lineno + 1,
            message,
        };
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(parse_err(format!(
                "expected two node IDs, found {} fields",
                fields.len()
            )));
        }
        let mut ends = [0u64; 2];
        for (slot, tok) in ends.iter_mut().zip(&fields) {
            *slot = tok
                .parse()
                .map_err(|_| parse_err(format!("invalid node ID {tok:?}")))?;
        }
        let u = intern(ends[0]);
        let v = intern(ends[1]);
        edges.push((u, v));
    }

    let graph = GraphInstance::with_labels(labels, edges);
    if graph.edge_count() == 0 {
        return Err(Error::EmptyGraph(path.to_path_buf()));
    }
    Ok(graph)
}
