//! Letter-disjointness graphs over the remaining words, and k-clique
//! enumeration by ordered backtracking.

use std::fmt::Write as _;
use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WordleError};
use crate::tracker::WordleTracker;
use crate::vocab::Vocabulary;

/// How many unseen letters two adjacent words may share.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// No common unseen letter.
    Hard,
    /// Exactly one common unseen letter.
    Soft,
}

impl Regime {
    pub fn allowed_common(self) -> usize {
        match self {
            Regime::Hard => 0,
            Regime::Soft => 1,
        }
    }
}

/// Undirected graph over vocabulary indices.
#[derive(Clone)]
pub struct WordGraph {
    adjacency: Vec<Vec<usize>>,
    neighbors: Vec<FixedBitSet>,
    regime: Regime,
    edge_count: usize,
    active_vertices: usize,
}

impl std::fmt::Debug for WordGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("WordGraph")
            .field("regime", &self.regime)
            .field("vertices", &self.adjacency.len())
            .field("edges", &self.edge_count)
            .finish()
    }
}

impl WordGraph {
    /// Builds a graph from an edge list. Duplicate edges collapse; self
    /// loops and out-of-range endpoints are errors.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)], regime: Regime) -> Result<Self> {
        let mut rows = vec![Vec::new(); vertex_count];
        for &(a, b) in edges {
            if a == b {
                return Err(WordleError::Contract(format!("self loop on vertex {a}")));
            }
            if a >= vertex_count || b >= vertex_count {
                return Err(WordleError::Contract(format!("edge ({a}, {b}) out of range")));
            }
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            rows[lo].push(hi);
        }
        for r in &mut rows {
            r.sort_unstable();
            r.dedup();
        }
        Ok(Self::from_upper_rows(rows, regime, vertex_count))
    }

    /// `upper[i]` lists the neighbours `j > i` of `i` in increasing order.
    fn from_upper_rows(upper: Vec<Vec<usize>>, regime: Regime, active_vertices: usize) -> Self {
        let n = upper.len();
        let mut adjacency = vec![Vec::new(); n];
        let mut neighbors = vec![FixedBitSet::with_capacity(n); n];
        let mut edge_count = 0;
        for (i, row) in upper.into_iter().enumerate() {
            for j in row {
                adjacency[i].push(j);
                adjacency[j].push(i);
                neighbors[i].insert(j);
                neighbors[j].insert(i);
                edge_count += 1;
            }
        }
        WordGraph {
            adjacency,
            neighbors,
            regime,
            edge_count,
            active_vertices,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn edge_exists(&self) -> bool {
        self.edge_count > 0
    }

    /// Sorted neighbour list of a vertex.
    pub fn adjacency(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn neighbor_set(&self, v: usize) -> &FixedBitSet {
        &self.neighbors[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.neighbors[a].contains(b)
    }
}

/// Connects every pair of non-discarded words sharing exactly the regime's
/// allowed number of unseen letters.
pub fn form_graph_helper(tracker: &WordleTracker, regime: Regime) -> WordGraph {
    let vocab = tracker.vocab();
    let unseen = tracker.unseen_chars();
    let allowed = regime.allowed_common();
    let n = vocab.len();
    let masks: Vec<Option<u32>> = (0..n)
        .map(|i| (!tracker.is_discarded(i)).then(|| vocab.word(i).mask().intersection(unseen).0))
        .collect();
    let upper: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let Some(mi) = masks[i] else {
                return Vec::new();
            };
            (i + 1..n)
                .filter(|&j| masks[j].is_some_and(|mj| (mi & mj).count_ones() as usize == allowed))
                .collect()
        })
        .collect();
    let active = masks.iter().filter(|m| m.is_some()).count();
    WordGraph::from_upper_rows(upper, regime, active)
}

/// The hard graph, or the soft graph when the hard one has no edge.
pub fn form_graph(tracker: &WordleTracker) -> WordGraph {
    let hard = form_graph_helper(tracker, Regime::Hard);
    if hard.edge_exists() {
        hard
    } else {
        form_graph_helper(tracker, Regime::Soft)
    }
}

/// Pairwise-adjacent vertices, strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Clique {
    pub members: Vec<usize>,
}

impl Clique {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Search options for clique enumeration.
#[derive(Default)]
pub struct CliqueSearch<'a> {
    /// Stop (with `complete == false`) once this much time has elapsed.
    pub budget: Option<Duration>,
    /// Stop after this many cliques.
    pub limit: Option<usize>,
    /// Called with (starting vertex, vertex count) as the outer loop advances.
    pub progress: Option<&'a mut dyn FnMut(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueSearchResult {
    pub cliques: Vec<Clique>,
    pub complete: bool,
}

/// Every k-clique of `graph`, each once, in lexicographic member order.
pub fn find_k_cliques(graph: &WordGraph, k: usize) -> Vec<Clique> {
    find_k_cliques_with(graph, k, CliqueSearch::default()).cliques
}

pub fn find_k_cliques_with(graph: &WordGraph, k: usize, mut opts: CliqueSearch<'_>) -> CliqueSearchResult {
    let mut cliques = Vec::new();
    let limit = opts.limit;
    let complete = visit_k_cliques(graph, k, opts.budget, opts.progress.take(), |members| {
        cliques.push(Clique {
            members: members.to_vec(),
        });
        if limit.is_some_and(|l| cliques.len() >= l) {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    let complete = complete && limit.is_none_or(|l| cliques.len() < l);
    CliqueSearchResult { cliques, complete }
}

/// Counts k-cliques without storing them. Returns `(count, complete)`.
pub fn count_k_cliques(graph: &WordGraph, k: usize, budget: Option<Duration>) -> (u64, bool) {
    let mut count = 0u64;
    let complete = visit_k_cliques(graph, k, budget, None, |_| {
        count += 1;
        ControlFlow::Continue(())
    });
    (count, complete)
}

/// Ordered backtracking: a partial clique is only extended by vertices that
/// are adjacent to every member and larger than the last member. Returns
/// false when the budget ran out or the visitor stopped the search.
pub fn visit_k_cliques(
    graph: &WordGraph,
    k: usize,
    budget: Option<Duration>,
    mut progress: Option<&mut dyn FnMut(usize, usize)>,
    mut visit: impl FnMut(&[usize]) -> ControlFlow<()>,
) -> bool {
    assert!(k >= 2, "clique size must be at least 2");
    let n = graph.vertex_count();
    let mut walker = Walker {
        graph,
        k,
        deadline: budget.map(|b| Instant::now() + b),
        nodes: 0,
        clique: Vec::with_capacity(k),
    };
    for v in 0..n {
        if let Some(p) = progress.as_mut() {
            p(v, n);
        }
        if graph.adjacency(v).len() + 1 < k {
            continue;
        }
        let mut cand = graph.neighbor_set(v).clone();
        cand.set_range(..v + 1, false);
        walker.clique.push(v);
        let flow = walker.extend(&cand, &mut visit);
        walker.clique.pop();
        if flow.is_break() {
            return false;
        }
    }
    true
}

struct Walker<'g> {
    graph: &'g WordGraph,
    k: usize,
    deadline: Option<Instant>,
    nodes: u64,
    clique: Vec<usize>,
}

impl Walker<'_> {
    fn extend(&mut self, cand: &FixedBitSet, visit: &mut impl FnMut(&[usize]) -> ControlFlow<()>) -> ControlFlow<()> {
        if self.clique.len() == self.k {
            return visit(&self.clique);
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) && self.deadline.is_some_and(|d| Instant::now() >= d) {
            return ControlFlow::Break(());
        }
        let need = self.k - self.clique.len();
        if cand.count_ones(..) < need {
            return ControlFlow::Continue(());
        }
        for u in cand.ones() {
            let mut next = cand.clone();
            next.intersect_with(self.graph.neighbor_set(u));
            next.set_range(..u + 1, false);
            if need > 1 && next.count_ones(..) < need - 1 {
                continue;
            }
            self.clique.push(u);
            let flow = self.extend(&next, visit);
            self.clique.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    /// All vocabulary words.
    pub vertex_count: usize,
    /// Words that were not discarded when the graph was built.
    pub active_vertex_count: usize,
    /// Vertices with at least one edge.
    pub non_isolated_count: usize,
    pub edge_count: usize,
}

pub fn graph_stats(graph: &WordGraph) -> GraphStats {
    GraphStats {
        vertex_count: graph.vertex_count(),
        active_vertex_count: graph.active_vertices,
        non_isolated_count: (0..graph.vertex_count())
            .filter(|&v| !graph.adjacency(v).is_empty())
            .count(),
        edge_count: graph.adjacency.iter().map(Vec::len).sum::<usize>() / 2,
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering of the non-isolated part of a graph.
pub fn graph_to_dot(graph: &WordGraph, vocab: &Vocabulary) -> String {
    let mut out = String::from("graph words {\n");
    for v in 0..graph.vertex_count() {
        if !graph.adjacency(v).is_empty() {
            let _ = writeln!(out, "  {v} [label=\"{}\"];", dot_escape(vocab.word(v).text()));
        }
    }
    for v in 0..graph.vertex_count() {
        for &u in graph.adjacency(v).iter().filter(|&&u| u > v) {
            let _ = writeln!(out, "  {v} -- {u};");
        }
    }
    out.push_str("}\n");
    out
}

/// Graphviz rendering of cliques, one cluster per clique.
pub fn cliques_to_dot(cliques: &[Clique], vocab: &Vocabulary) -> String {
    let mut out = String::from("graph cliques {\n");
    for (c, clique) in cliques.iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_{c} {{");
        let _ = writeln!(out, "    label=\"clique {}\";", c + 1);
        for &m in &clique.members {
            let _ = writeln!(out, "    c{c}_{m} [label=\"{}\"];", dot_escape(vocab.word(m).text()));
        }
        for (i, &a) in clique.members.iter().enumerate() {
            for &b in &clique.members[i + 1..] {
                let _ = writeln!(out, "    c{c}_{a} -- c{c}_{b};");
            }
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}

/// Cliques as a JSON array of word lists.
pub fn cliques_to_json(cliques: &[Clique], vocab: &Vocabulary) -> String {
    let lists: Vec<Vec<&str>> = cliques
        .iter()
        .map(|c| c.members.iter().map(|&m| vocab.word(m).text()).collect())
        .collect();
    serde_json::to_string(&lists).expect("string lists serialize")
}
