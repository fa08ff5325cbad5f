//! Equivariant classes in the GKM model of a moment graph.
//!
//! A class assigns one polynomial to each fixed point; it lies in equivariant
//! cohomology iff every edge's label divides the difference of its endpoint
//! entries. The Knutson–Tao class of a vertex L is supported on {N ⪰ L},
//! normalized at L by the product of its outgoing labels, homogeneous of
//! degree outdeg(L), and computed vertex by vertex along a linear extension
//! by solving the edge congruences exactly.

use crate::graph::{Edge, FixedPoint, MomentGraph};
use crate::poly::{divides, solve_congruences, Polynomial, Rat, SolveOutcome};
use std::collections::BTreeMap;

/// One polynomial per vertex of a fixed moment graph, indexed like its
/// vertex list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EquivariantClass {
    entries: Vec<Polynomial>,
}

impl EquivariantClass {
    pub fn zero(g: &MomentGraph) -> Self {
        let arity = g.rep().d() + 1;
        EquivariantClass { entries: vec![Polynomial::zero(arity); g.vertex_count()] }
    }

    pub fn constant(g: &MomentGraph, c: Rat) -> Self {
        let arity = g.rep().d() + 1;
        EquivariantClass { entries: vec![Polynomial::constant(arity, c); g.vertex_count()] }
    }

    pub fn from_entries(entries: Vec<Polynomial>) -> Self {
        EquivariantClass { entries }
    }

    pub fn entry(&self, v: usize) -> &Polynomial {
        &self.entries[v]
    }

    pub fn set_entry(&mut self, v: usize, p: Polynomial) {
        self.entries[v] = p;
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    /// Vertices with nonzero entries.
    pub fn support(&self) -> Vec<usize> {
        (0..self.entries.len()).filter(|&v| !self.entries[v].is_zero()).collect()
    }

    pub fn add(&self, other: &EquivariantClass) -> EquivariantClass {
        assert_eq!(self.entries.len(), other.entries.len());
        EquivariantClass {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &EquivariantClass) -> EquivariantClass {
        assert_eq!(self.entries.len(), other.entries.len());
        EquivariantClass {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> EquivariantClass {
        EquivariantClass { entries: self.entries.iter().map(|p| p.neg()).collect() }
    }

    /// Multiply every entry by a coefficient polynomial (the R-module action).
    pub fn scale_poly(&self, a: &Polynomial) -> EquivariantClass {
        EquivariantClass { entries: self.entries.iter().map(|p| p.mul(a)).collect() }
    }
}

/// The first edge (in construction order) whose label fails to divide the
/// difference of the class entries at its endpoints, if any.
pub fn gkm_violation<'g>(g: &'g MomentGraph, f: &EquivariantClass) -> Option<&'g Edge> {
    g.edges()
        .iter()
        .find(|e| !divides(&e.label, &f.entry(e.tail).sub(f.entry(e.head))))
}

pub fn is_gkm_class(g: &MomentGraph, f: &EquivariantClass) -> bool {
    gkm_violation(g, f).is_none()
}

/// Product of the labels of the outgoing edges at `v` — the Knutson–Tao
/// normalization of the vertex (1 for a sink).
pub fn kt_normalization(g: &MomentGraph, v: usize) -> Polynomial {
    let mut p = Polynomial::one(g.rep().d() + 1);
    for e in g.out_edges(v) {
        p = p.mul(&e.label.to_polynomial());
    }
    p
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum KtError {
    #[error(
        "the congruences for the class of {class_vertex} are inconsistent at \
         {at_vertex}: no Knutson-Tao class exists"
    )]
    NoSolution { class_vertex: FixedPoint, at_vertex: FixedPoint },
    #[error(
        "the congruences for the class of {class_vertex} are underdetermined at \
         {at_vertex}: the Knutson-Tao class is not unique"
    )]
    NonUnique { class_vertex: FixedPoint, at_vertex: FixedPoint },
    #[error("Knutson-Tao axioms fail after construction: {0}")]
    AxiomFailure(String),
}

/// Knutson–Tao class of the vertex `l`, solved along the graph's own linear
/// extension.
pub fn kt_class(g: &MomentGraph, l: usize) -> Result<EquivariantClass, KtError> {
    kt_class_with_order(g, l, g.linear_extension())
}

/// Knutson–Tao class of `l` solved along a caller-supplied linear extension
/// (any topological order of the vertices, sinks first). On a Palais-Smale
/// graph every valid extension yields the same class.
///
/// # Panics
/// Panics when `order` is not a topological order of the graph.
pub fn kt_class_with_order(
    g: &MomentGraph,
    l: usize,
    order: &[usize],
) -> Result<EquivariantClass, KtError> {
    assert_eq!(order.len(), g.vertex_count(), "order must list every vertex");
    let mut pos = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    for e in g.edges() {
        assert!(pos[e.head] < pos[e.tail], "order must be a linear extension of the flow order");
    }

    let deg = g.outdeg(l) as u32;
    let d = g.rep().d();
    let mut class = EquivariantClass::zero(g);
    class.set_entry(l, kt_normalization(g, l));
    for &v in order {
        if v == l || !g.succeq(v, l) {
            continue;
        }
        let constraints: Vec<_> = g
            .out_edges(v)
            .map(|e| (e.label.clone(), class.entry(e.head).clone()))
            .collect();
        match solve_congruences(d, deg, &constraints) {
            SolveOutcome::Unique(f) => class.set_entry(v, f),
            SolveOutcome::NonUnique => {
                assert!(
                    !g.is_palais_smale(),
                    "Knutson-Tao classes on a Palais-Smale graph must be unique"
                );
                return Err(KtError::NonUnique {
                    class_vertex: g.vertices()[l].clone(),
                    at_vertex: g.vertices()[v].clone(),
                });
            }
            SolveOutcome::NoSolution => {
                assert!(
                    !g.is_palais_smale(),
                    "Knutson-Tao classes on a Palais-Smale graph must exist"
                );
                return Err(KtError::NoSolution {
                    class_vertex: g.vertices()[l].clone(),
                    at_vertex: g.vertices()[v].clone(),
                });
            }
        }
    }
    Ok(class)
}

/// The Knutson–Tao classes of every vertex, indexed like the vertex list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KtBasis {
    classes: Vec<EquivariantClass>,
}

impl KtBasis {
    pub fn class(&self, v: usize) -> &EquivariantClass {
        &self.classes[v]
    }

    pub fn classes(&self) -> &[EquivariantClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Checks the three Knutson–Tao axioms and GKM membership for a candidate
/// class of the vertex `v`; the error describes the first failure.
pub fn verify_kt_axioms(g: &MomentGraph, v: usize, class: &EquivariantClass) -> Result<(), String> {
    if let Some(e) = gkm_violation(g, class) {
        return Err(format!(
            "class of {} violates the GKM condition on edge {} -> {}",
            g.vertices()[v],
            g.vertices()[e.tail],
            g.vertices()[e.head]
        ));
    }
    if class.entry(v) != &kt_normalization(g, v) {
        return Err(format!(
            "class of {} is not normalized to the product of its outgoing labels",
            g.vertices()[v]
        ));
    }
    let deg = g.outdeg(v) as u32;
    for y in 0..g.vertex_count() {
        if !class.entry(y).is_homogeneous_of_degree(deg) {
            return Err(format!(
                "class of {} has an entry at {} that is not homogeneous of degree {}",
                g.vertices()[v],
                g.vertices()[y],
                deg
            ));
        }
        if !g.succeq(y, v) && !class.entry(y).is_zero() {
            return Err(format!(
                "class of {} has support at {}, which does not lie above it",
                g.vertices()[v],
                g.vertices()[y]
            ));
        }
    }
    Ok(())
}

/// Knutson–Tao classes for every vertex, verified against the axioms after
/// construction. Solver failures carry the offending vertex; axiom failures
/// are aggregated.
pub fn kt_basis(g: &MomentGraph) -> Result<KtBasis, KtError> {
    let mut classes = Vec::with_capacity(g.vertex_count());
    for l in 0..g.vertex_count() {
        classes.push(kt_class(g, l)?);
    }
    let failures: Vec<String> = (0..g.vertex_count())
        .filter_map(|l| verify_kt_axioms(g, l, &classes[l]).err())
        .collect();
    if !failures.is_empty() {
        return Err(KtError::AxiomFailure(failures.join("; ")));
    }
    Ok(KtBasis { classes })
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error(
    "class has no expansion in the Knutson-Tao basis: the residual at \
     {at_vertex} is not divisible by the vertex normalization"
)]
pub struct NotInSpan {
    pub at_vertex: FixedPoint,
}

/// Coefficients of an expansion f = Σ a_L p^L, keyed by vertex index; zero
/// coefficients are omitted.
pub type Expansion = BTreeMap<usize, Polynomial>;

/// Expands a GKM class in the Knutson–Tao basis by peeling along the linear
/// extension: at each vertex the residual entry must be exactly divisible by
/// the vertex normalization.
pub fn expand(g: &MomentGraph, basis: &KtBasis, f: &EquivariantClass) -> Result<Expansion, NotInSpan> {
    let mut residual = f.clone();
    let mut coeffs = Expansion::new();
    for &v in g.linear_extension() {
        if residual.entry(v).is_zero() {
            continue;
        }
        let a = residual
            .entry(v)
            .div_exact(&kt_normalization(g, v))
            .ok_or_else(|| NotInSpan { at_vertex: g.vertices()[v].clone() })?;
        residual = residual.sub(&basis.class(v).scale_poly(&a));
        coeffs.insert(v, a);
    }
    debug_assert!(residual.is_zero());
    Ok(coeffs)
}

/// Evaluates a coefficient map back to the class Σ a_L p^L.
pub fn combine(g: &MomentGraph, basis: &KtBasis, coeffs: &Expansion) -> EquivariantClass {
    let mut f = EquivariantClass::zero(g);
    for (&v, a) in coeffs {
        f = f.add(&basis.class(v).scale_poly(a));
    }
    f
}

/// Restriction to the order ideal of `l`: the full subgraph on {N : L ⪰ N}
/// together with the restriction of each basis class p^N (N ⪯ L), indexed by
/// subgraph vertex. Every restricted class is re-verified against the
/// Knutson–Tao axioms on the subgraph.
///
/// # Panics
/// Panics when a restricted class fails the axioms, which would contradict
/// the uniqueness of Knutson–Tao classes on order ideals.
pub fn restrict(
    g: &MomentGraph,
    l: usize,
    basis: &KtBasis,
) -> (MomentGraph, Vec<EquivariantClass>) {
    let keep: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.succeq(l, v)).collect();
    let mut new_index = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in keep.iter().enumerate() {
        new_index[v] = i;
    }
    let vertices: Vec<FixedPoint> = keep.iter().map(|&v| g.vertices()[v].clone()).collect();
    let edges: Vec<Edge> = g
        .edges()
        .iter()
        .filter(|e| new_index[e.tail] != usize::MAX && new_index[e.head] != usize::MAX)
        .map(|e| Edge {
            tail: new_index[e.tail],
            head: new_index[e.head],
            label: e.label.clone(),
            mutation: e.mutation,
        })
        .collect();
    let sub = MomentGraph::assemble(
        g.rep().clone(),
        g.chi().clone(),
        g.dimension_vector().to_vec(),
        g.column_order().clone(),
        vertices,
        edges,
    );
    let classes: Vec<EquivariantClass> = keep
        .iter()
        .map(|&v| {
            let mut c = EquivariantClass::zero(&sub);
            for (i, &w) in keep.iter().enumerate() {
                c.set_entry(i, basis.class(v).entry(w).clone());
            }
            c
        })
        .collect();
    for (i, class) in classes.iter().enumerate() {
        if let Err(msg) = verify_kt_axioms(&sub, i, class) {
            panic!("restriction to an order ideal broke the Knutson-Tao axioms: {msg}");
        }
    }
    (sub, classes)
}

/// JSON rendering of a basis: vertex names by rank and, per class, its
/// nonzero entries as compact polynomial strings.
pub fn kt_basis_json(g: &MomentGraph, basis: &KtBasis) -> serde_json::Value {
    let vertices: Vec<serde_json::Value> = (0..g.vertex_count())
        .map(|r| {
            let v = g.vertex_by_rank(r);
            serde_json::json!({
                "name": format!("L{}", r + 1),
                "suffix": g.vertices()[v].0,
            })
        })
        .collect();
    let mut classes = serde_json::Map::new();
    for r in 0..g.vertex_count() {
        let v = g.vertex_by_rank(r);
        let mut entries = serde_json::Map::new();
        for s in 0..g.vertex_count() {
            let w = g.vertex_by_rank(s);
            let p = basis.class(v).entry(w);
            if !p.is_zero() {
                entries.insert(format!("L{}", s + 1), p.to_compact_string().into());
            }
        }
        classes.insert(format!("L{}", r + 1), entries.into());
    }
    serde_json::json!({ "vertices": vertices, "classes": classes })
}
