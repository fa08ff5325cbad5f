//! Torus fixed points of a quiver Grassmannian and their moment graph.
//!
//! Fixed points are the successor-closed subquivers of the coefficient
//! quiver, encoded as suffix tuples: (s_1, …, s_d) picks the points
//! b_{j,s_j}, …, b_{j,ℓ_j−1} from each segment. Two fixed points are joined
//! by an edge when they differ by one mutation — relocating the first m
//! points of one segment's suffix onto another segment through the same
//! cycle-vertex columns. The edge is labeled by the T-weight difference of
//! the terminal moved point and oriented toward larger column positions.

use crate::poly::Character;
use crate::rep::{column_order, BasisPoint, Cocharacter, ColumnOrder, CycleRep, NotAttractive};
use std::collections::{BTreeMap, BinaryHeap};
use std::fmt;

/// Suffix tuple (s_1, …, s_d) with 0 ≤ s_j ≤ ℓ_j; segment j contributes the
/// points b_{j,s_j}, …, b_{j,ℓ_j−1} (none when s_j = ℓ_j).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FixedPoint(pub Vec<usize>);

impl FixedPoint {
    /// The basis points of the subrepresentation, by (segment, position).
    pub fn points(&self, rep: &CycleRep) -> Vec<BasisPoint> {
        let mut out = Vec::new();
        for (j0, &s) in self.0.iter().enumerate() {
            for p in s..rep.length(j0 + 1) {
                out.push(BasisPoint { segment: j0 + 1, position: p });
            }
        }
        out
    }

    /// Number of contributed points over each cycle vertex.
    pub fn dimension_vector(&self, rep: &CycleRep) -> Vec<usize> {
        let mut dims = vec![0; rep.n()];
        for b in self.points(rep) {
            dims[rep.vertex_of(b) - 1] += 1;
        }
        dims
    }
}

impl fmt::Display for FixedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

/// All suffix tuples whose per-vertex point counts equal `e`, in ascending
/// lexicographic order. The count is the Euler characteristic of the
/// Grassmannian; an empty list means no subrepresentation has that dimension
/// vector.
pub fn enumerate_fixed_points(rep: &CycleRep, e: &[usize]) -> Vec<FixedPoint> {
    assert_eq!(e.len(), rep.n(), "dimension vector length must equal n");
    fn go(
        rep: &CycleRep,
        j: usize,
        rem: &mut Vec<i64>,
        cur: &mut Vec<usize>,
        out: &mut Vec<FixedPoint>,
    ) {
        if j > rep.d() {
            if rem.iter().all(|&r| r == 0) {
                out.push(FixedPoint(cur.clone()));
            }
            return;
        }
        'choice: for s in 0..=rep.length(j) {
            let mut touched = Vec::new();
            for p in s..rep.length(j) {
                let v = rep.vertex_of(BasisPoint { segment: j, position: p });
                rem[v - 1] -= 1;
                touched.push(v);
                if rem[v - 1] < 0 {
                    for &t in &touched {
                        rem[t - 1] += 1;
                    }
                    continue 'choice;
                }
            }
            cur.push(s);
            go(rep, j + 1, rem, cur, out);
            cur.pop();
            for &t in &touched {
                rem[t - 1] += 1;
            }
        }
    }
    let mut rem: Vec<i64> = e.iter().map(|&x| x as i64).collect();
    let mut out = Vec::new();
    go(rep, 1, &mut rem, &mut Vec::new(), &mut out);
    out
}

/// Relocation of the first `len` points of segment `source_segment`'s suffix
/// onto segment `target_segment` (1-based segment indices).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Mutation {
    pub source_segment: usize,
    pub target_segment: usize,
    pub len: usize,
}

/// One mutation applicable at a fixed point, with the resulting fixed point,
/// the label oriented along the movement, and whether the movement increases
/// column positions (the fundamental direction).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MutationArrow {
    pub mutation: Mutation,
    pub result: FixedPoint,
    pub label: Character,
    pub outgoing: bool,
}

/// Every mutation applicable at `l`, ordered by (source segment, target
/// segment, length). The label is t_weight(terminal after) − t_weight(terminal
/// before), where the terminals are the last moved point in the result and in
/// `l`; `outgoing` records whether the terminal's column position grows.
pub fn mutations_from(rep: &CycleRep, order: &ColumnOrder, l: &FixedPoint) -> Vec<MutationArrow> {
    assert_eq!(l.0.len(), rep.d());
    let mut out = Vec::new();
    for js in 1..=rep.d() {
        for jt in 1..=rep.d() {
            if js == jt {
                continue;
            }
            let (ss, st) = (l.0[js - 1], l.0[jt - 1]);
            let max_m = (rep.length(js) - ss).min(st);
            for m in 1..=max_m {
                let first_before = BasisPoint { segment: js, position: ss };
                let first_after = BasisPoint { segment: jt, position: st - m };
                if rep.vertex_of(first_before) != rep.vertex_of(first_after) {
                    continue;
                }
                let mut s = l.0.clone();
                s[js - 1] += m;
                s[jt - 1] -= m;
                let before = BasisPoint { segment: js, position: ss + m - 1 };
                let after = BasisPoint { segment: jt, position: st - 1 };
                let label = rep.t_weight(after).sub(&rep.t_weight(before));
                let outgoing = order.index_in_column(after) > order.index_in_column(before);
                // Every moved point shifts in the same column direction.
                for t in 0..m {
                    let b = BasisPoint { segment: js, position: ss + t };
                    let a = BasisPoint { segment: jt, position: st - m + t };
                    let (vb, pb) = order.position(b);
                    let (va, pa) = order.position(a);
                    assert_eq!(vb, va, "moved point left its column");
                    assert_eq!(pa > pb, outgoing, "moved points shifted in mixed directions");
                }
                out.push(MutationArrow { mutation: Mutation { source_segment: js, target_segment: jt, len: m }, result: FixedPoint(s), label, outgoing });
            }
        }
    }
    out
}

/// Oriented edge of the moment graph; `mutation` applied at `tail` yields
/// `head`, and `label` is oriented along it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub label: Character,
    pub mutation: Mutation,
}

/// The labeled moment graph of a quiver Grassmannian, with its flow order and
/// a fixed linear extension.
#[derive(Clone, Debug)]
pub struct MomentGraph {
    rep: CycleRep,
    chi: Cocharacter,
    e: Vec<usize>,
    order: ColumnOrder,
    vertices: Vec<FixedPoint>,
    index: BTreeMap<FixedPoint, usize>,
    edges: Vec<Edge>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    rank: Vec<usize>,
    by_rank: Vec<usize>,
    reach: Vec<Vec<bool>>,
}

/// Builds the moment graph: vertices are the fixed points in lexicographic
/// order, and each mutation-related pair contributes one edge, oriented along
/// the fundamental (column-position-increasing) direction.
pub fn build_graph(
    rep: &CycleRep,
    chi: &Cocharacter,
    e: &[usize],
) -> Result<MomentGraph, NotAttractive> {
    let order = column_order(rep, chi)?;
    let vertices = enumerate_fixed_points(rep, e);
    let index: BTreeMap<FixedPoint, usize> =
        vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
    let mut edges = Vec::new();
    for (tail, l) in vertices.iter().enumerate() {
        for arrow in mutations_from(rep, &order, l) {
            if !arrow.outgoing {
                continue;
            }
            let head = *index
                .get(&arrow.result)
                .expect("mutation must preserve the dimension vector");
            edges.push(Edge { tail, head, label: arrow.label, mutation: arrow.mutation });
        }
    }
    Ok(MomentGraph::assemble(
        rep.clone(),
        chi.clone(),
        e.to_vec(),
        order,
        vertices,
        edges,
    ))
}

impl MomentGraph {
    /// Derives adjacency, the linear extension, and reachability from an
    /// explicit vertex/edge list (shared by `build_graph` and restriction to
    /// order ideals).
    pub(crate) fn assemble(
        rep: CycleRep,
        chi: Cocharacter,
        e: Vec<usize>,
        order: ColumnOrder,
        vertices: Vec<FixedPoint>,
        edges: Vec<Edge>,
    ) -> MomentGraph {
        let nv = vertices.len();
        let index: BTreeMap<FixedPoint, usize> =
            vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let mut out_adj = vec![Vec::new(); nv];
        let mut in_adj = vec![Vec::new(); nv];
        for (i, edge) in edges.iter().enumerate() {
            out_adj[edge.tail].push(i);
            in_adj[edge.head].push(i);
        }
        // Linear extension by Kahn's algorithm from the sinks up; among the
        // ready vertices the lexicographically largest suffix tuple goes first.
        let mut remaining: Vec<usize> = out_adj.iter().map(|a| a.len()).collect();
        let mut ready: BinaryHeap<(FixedPoint, usize)> = vertices
            .iter()
            .enumerate()
            .filter(|(i, _)| remaining[*i] == 0)
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let mut by_rank = Vec::with_capacity(nv);
        let mut rank = vec![usize::MAX; nv];
        while let Some((_, v)) = ready.pop() {
            rank[v] = by_rank.len();
            by_rank.push(v);
            for &ei in &in_adj[v] {
                let pred = edges[ei].tail;
                remaining[pred] -= 1;
                if remaining[pred] == 0 {
                    ready.push((vertices[pred].clone(), pred));
                }
            }
        }
        assert_eq!(by_rank.len(), nv, "moment graph contains an oriented cycle");
        let mut reach = vec![vec![false; nv]; nv];
        // Process sinks first so each row can absorb its successors' rows.
        for &v in &by_rank {
            reach[v][v] = true;
            for &ei in &out_adj[v].clone() {
                let h = edges[ei].head;
                let (row_v, row_h) = if v < h {
                    let (a, b) = reach.split_at_mut(h);
                    (&mut a[v], &b[0])
                } else {
                    let (a, b) = reach.split_at_mut(v);
                    (&mut b[0], &a[h])
                };
                for (slot, &r) in row_v.iter_mut().zip(row_h.iter()) {
                    *slot |= r;
                }
            }
        }
        MomentGraph { rep, chi, e, order, vertices, index, edges, out_adj, in_adj, rank, by_rank, reach }
    }

    pub fn rep(&self) -> &CycleRep {
        &self.rep
    }

    pub fn chi(&self) -> &Cocharacter {
        &self.chi
    }

    pub fn dimension_vector(&self) -> &[usize] {
        &self.e
    }

    pub fn column_order(&self) -> &ColumnOrder {
        &self.order
    }

    pub fn vertices(&self) -> &[FixedPoint] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, l: &FixedPoint) -> Option<usize> {
        self.index.get(l).copied()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = &Edge> {
        self.out_adj[v].iter().map(|&i| &self.edges[i])
    }

    pub fn in_edges(&self, v: usize) -> impl Iterator<Item = &Edge> {
        self.in_adj[v].iter().map(|&i| &self.edges[i])
    }

    pub fn outdeg(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    /// True when some directed path runs from `x` to `y` (so x ⪰ y in the
    /// flow order; every vertex reaches itself).
    pub fn succeq(&self, x: usize, y: usize) -> bool {
        self.reach[x][y]
    }

    /// Position of the vertex in the fixed linear extension (0 = first sink);
    /// a topological order read against the arrows: rank(head) < rank(tail)
    /// for every edge.
    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    /// Vertex indices sorted by ascending rank.
    pub fn linear_extension(&self) -> &[usize] {
        &self.by_rank
    }

    pub fn vertex_by_rank(&self, r: usize) -> usize {
        self.by_rank[r]
    }

    /// Display name by linear-extension rank: the first sink is "L1".
    pub fn vertex_name(&self, v: usize) -> String {
        format!("L{}", self.rank[v] + 1)
    }

    /// Inverse of [`vertex_name`](Self::vertex_name): "L3" → the vertex of
    /// rank 2. `None` for malformed names or out-of-range ranks.
    pub fn vertex_by_name(&self, name: &str) -> Option<usize> {
        let k: usize = name.strip_prefix('L')?.parse().ok()?;
        if k == 0 || k > self.vertex_count() {
            return None;
        }
        Some(self.by_rank[k - 1])
    }

    /// The first edge (in construction order) along which the out-degree
    /// fails to drop strictly, if any.
    pub fn palais_smale_violation(&self) -> Option<&Edge> {
        self.edges.iter().find(|e| self.outdeg(e.tail) <= self.outdeg(e.head))
    }

    pub fn is_palais_smale(&self) -> bool {
        self.palais_smale_violation().is_none()
    }

    pub fn poincare(&self) -> Poincare {
        let mut coeffs = Vec::new();
        for v in 0..self.vertex_count() {
            let k = self.outdeg(v);
            if coeffs.len() <= k {
                coeffs.resize(k + 1, 0);
            }
            coeffs[k] += 1;
        }
        Poincare(coeffs)
    }

    /// Edge indices sorted by (tail rank, head rank) — the fixed export order.
    fn export_edge_order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.edges.len()).collect();
        idx.sort_by_key(|&i| (self.rank[self.edges[i].tail], self.rank[self.edges[i].head]));
        idx
    }

    /// DOT rendering with vertices named by rank and compact character labels.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph moment_graph {\n");
        for r in 0..self.vertex_count() {
            let v = self.by_rank[r];
            s.push_str(&format!(
                "  L{} [label=\"L{} {}\"];\n",
                r + 1,
                r + 1,
                self.vertices[v]
            ));
        }
        for i in self.export_edge_order() {
            let e = &self.edges[i];
            s.push_str(&format!(
                "  {} -> {} [label=\"{}\"];\n",
                self.vertex_name(e.tail),
                self.vertex_name(e.head),
                e.label.to_polynomial().to_compact_string()
            ));
        }
        s.push_str("}\n");
        s
    }

    /// JSON rendering: vertices ascending by rank, edges in the export order.
    pub fn to_json(&self) -> serde_json::Value {
        let vertices: Vec<serde_json::Value> = (0..self.vertex_count())
            .map(|r| {
                let v = self.by_rank[r];
                serde_json::json!({
                    "name": format!("L{}", r + 1),
                    "suffix": self.vertices[v].0,
                    "outdeg": self.outdeg(v),
                })
            })
            .collect();
        let edges: Vec<serde_json::Value> = self
            .export_edge_order()
            .into_iter()
            .map(|i| {
                let e = &self.edges[i];
                serde_json::json!({
                    "from": self.vertex_name(e.tail),
                    "to": self.vertex_name(e.head),
                    "label": e.label.to_polynomial().to_compact_string(),
                })
            })
            .collect();
        serde_json::json!({
            "n": self.rep.n(),
            "dimension_vector": self.e,
            "vertices": vertices,
            "edges": edges,
            "palais_smale": self.is_palais_smale(),
            "poincare": self.poincare().to_string(),
        })
    }
}

/// Poincaré polynomial Σ_L q^{outdeg L}; `coeffs[k]` counts vertices of
/// out-degree k.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poincare(pub Vec<u64>);

impl fmt::Display for Poincare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "q")?,
                (1, c) => write!(f, "{c}*q")?,
                (k, 1) => write!(f, "q^{k}")?,
                (k, c) => write!(f, "{c}*q^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
