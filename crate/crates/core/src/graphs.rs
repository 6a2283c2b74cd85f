//! The discrepancy graphs `G(n, Δ)` and `Ĝ(n, Δ)` on all `2^n` words.
//!
//! Vertex `u` is the word with `u = x_0 + 2x_1 + ... + 2^(n−1) x_(n−1)`. Words `x ≠ y`
//! are adjacent in `G` when `min{δ(y, x), δ(x, y)} >= Δ`, in `Ĝ` when `δ̂(x, y) >= Δ`,
//! and in the Hamming graph when `d^H(x, y) >= Δ`. Cliques with at least two vertices
//! are exactly the codes whose minimum (symmetric) discrepancy is at least `Δ`.

use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;

use crate::channel::ChannelParams;
use crate::discrepancy::LatticeValue;
use crate::error::{Error, Result};
use crate::threshold::Threshold;

/// Default largest `n` accepted by [`build_graph`].
pub const DEFAULT_GRAPH_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphKind {
    /// `G(n, Δ)`.
    Discrepancy,
    /// `Ĝ(n, Δ)`.
    SymmetricDiscrepancy,
    /// Minimum Hamming distance graph, for `A^H`.
    Hamming,
}

impl FromStr for GraphKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "delta" | "G" | "g" => Ok(GraphKind::Discrepancy),
            "deltahat" | "Ghat" | "ghat" => Ok(GraphKind::SymmetricDiscrepancy),
            "hamming" | "H" | "h" => Ok(GraphKind::Hamming),
            other => Err(Error::Parse(format!("unknown graph kind {other:?}"))),
        }
    }
}

/// Fixed-size bitset over vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn full(len: usize) -> Self {
        let mut b = Self::empty(len);
        for v in 0..len {
            b.insert(v);
        }
        b
    }

    fn insert(&mut self, v: usize) {
        self.0[v / 64] |= 1 << (v % 64);
    }

    fn remove(&mut self, v: usize) {
        self.0[v / 64] &= !(1 << (v % 64));
    }

    fn contains(&self, v: usize) -> bool {
        self.0[v / 64] >> (v % 64) & 1 == 1
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn and(&self, other: &Self) -> Self {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn and_not_assign(&mut self, other: &Self) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= !b;
        }
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + t)
            })
        })
    }
}

/// An undirected graph on the `2^n` words of length `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscrepancyGraph {
    n: usize,
    kind: GraphKind,
    threshold: Threshold,
    rows: Vec<Bits>,
}

/// The value compared against `Δ` for words with packed indices `u` and `v`.
fn edge_value(kind: GraphKind, u: u64, v: u64) -> [LatticeValue; 2] {
    let dh = (u ^ v).count_ones() as i64;
    match kind {
        GraphKind::Discrepancy => {
            // δ(u, v) and δ(v, u): d01 counts positions where the first word is 0.
            let a = (!u & v).count_ones() as i64;
            let b = (u & !v).count_ones() as i64;
            [LatticeValue::new(a, b), LatticeValue::new(b, a)]
        }
        GraphKind::SymmetricDiscrepancy => {
            let d11 = (u & v).count_ones() as i64;
            let v = LatticeValue::new(dh + d11, -d11);
            [v, v]
        }
        GraphKind::Hamming => {
            let v = LatticeValue::new(dh, 0);
            [v, v]
        }
    }
}

/// Builds the graph of the given kind, rejecting `n` above `cap`.
pub fn build_graph(
    ch: &ChannelParams,
    n: usize,
    threshold: Threshold,
    kind: GraphKind,
    cap: usize,
) -> Result<DiscrepancyGraph> {
    if n > cap {
        return Err(Error::CapExceeded {
            what: "graph construction",
            n,
            cap,
        });
    }
    if n < crate::bits::MIN_LENGTH {
        return Err(Error::InvalidWord(format!("word length {n} is below the minimum")));
    }
    if kind != GraphKind::Hamming {
        ch.require_strict()?;
    }
    let size = 1usize << n;
    let rows = (0..size)
        .into_par_iter()
        .map(|u| {
            let mut row = Bits::empty(size);
            for v in 0..size {
                if u != v
                    && edge_value(kind, u as u64, v as u64)
                        .iter()
                        .all(|&d| threshold.is_met_by(ch, d))
                {
                    row.insert(v);
                }
            }
            row
        })
        .collect();
    Ok(DiscrepancyGraph {
        n,
        kind,
        threshold,
        rows,
    })
}

impl DiscrepancyGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn threshold(&self) -> Threshold {
        self.threshold
    }

    pub fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[u].iter()
    }

    pub fn degree(&self, u: usize) -> usize {
        self.rows[u].count()
    }

    /// Degrees in vertex index order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        (0..self.vertex_count()).map(|u| self.degree(u)).collect()
    }

    /// All degrees equal. A necessary condition for vertex-transitivity.
    pub fn is_regular(&self) -> bool {
        let degrees = self.degree_sequence();
        degrees.windows(2).all(|w| w[0] == w[1])
    }

    pub fn edge_count(&self) -> usize {
        self.degree_sequence().iter().sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count()).flat_map(move |u| {
            self.rows[u].iter().filter(move |&v| v > u).map(move |v| (u, v))
        })
    }

    /// Whether every pair of the given vertices is adjacent.
    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| {
            vertices[i + 1..].iter().all(|&v| u != v && self.has_edge(u, v))
        })
    }

    /// An exact maximum clique, found by branch and bound with greedy colouring
    /// bounds. Returns the size and the vertices in increasing order.
    pub fn max_clique(&self) -> (usize, Vec<usize>) {
        let size = self.vertex_count();
        let mut best = vec![0];
        let mut current = Vec::new();
        self.expand(&mut current, Bits::full(size), &mut best);
        best.sort_unstable();
        (best.len(), best)
    }

    /// Orders `p` by greedy colour classes; returns vertices with their colour number.
    fn colour_sort(&self, p: &Bits) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(p.count());
        let mut uncoloured = p.clone();
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut candidates = uncoloured.clone();
            while let Some(v) = candidates.first() {
                candidates.remove(v);
                candidates.and_not_assign(&self.rows[v]);
                uncoloured.remove(v);
                out.push((v, colour));
            }
        }
        out
    }

    fn expand(&self, current: &mut Vec<usize>, mut p: Bits, best: &mut Vec<usize>) {
        let order = self.colour_sort(&p);
        for &(v, colour) in order.iter().rev() {
            if current.len() + colour <= best.len() {
                return;
            }
            current.push(v);
            let next = p.and(&self.rows[v]);
            if next.is_empty() {
                if current.len() > best.len() {
                    best.clone_from(current);
                }
            } else {
                self.expand(current, next, best);
            }
            current.pop();
            p.remove(v);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    /// One `u v` line per edge with `u < v`.
    EdgeList,
    /// An undirected DOT graph.
    Dot,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edges" | "edgelist" | "edge-list" => Ok(ExportFormat::EdgeList),
            "dot" => Ok(ExportFormat::Dot),
            other => Err(Error::UnsupportedFormat(other.to_string())),
        }
    }
}

pub fn export_graph(g: &DiscrepancyGraph, format: ExportFormat) -> String {
    let mut out = String::new();
    match format {
        ExportFormat::EdgeList => {
            for (u, v) in g.edges() {
                writeln!(out, "{u} {v}").unwrap();
            }
        }
        ExportFormat::Dot => {
            out.push_str("graph {\n");
            for u in 0..g.vertex_count() {
                writeln!(out, "  {u};").unwrap();
            }
            for (u, v) in g.edges() {
                writeln!(out, "  {u} -- {v};").unwrap();
            }
            out.push_str("}\n");
        }
    }
    out
}

/// Parses an edge list as written by [`export_graph`].
pub fn parse_edge_list(text: &str) -> Result<Vec<(usize, usize)>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, line)| {
            let mut it = line.split_whitespace().map(str::parse::<usize>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(u)), Some(Ok(v)), None) => Ok((u, v)),
                _ => Err(Error::Parse(format!("line {}: expected `u v`", i + 1))),
            }
        })
        .collect()
}
