//! Nilpotent representations of the equioriented cycle quiver Δ_n.
//!
//! A representation is an ordered list of segments; segment j starts at a
//! cycle vertex and has length ℓ_j, contributing basis points b_{j,0}, …,
//! b_{j,ℓ_j−1} with b_{j,p} sitting over vertex start_j + p (mod n) and
//! carrying the torus weight ε_j + p·δ. Isomorphic segments (same start and
//! length) must be contiguous in the list; the maximal runs are the blocks.
//!
//! A cocharacter (χ_0; χ_1, …, χ_d) grades the basis by wt(b_{j,p}) =
//! χ_j + p·χ_0. The validators check that the grading is attractive (distinct
//! weights within each column of the coefficient quiver), aligned (segment
//! endpoints above arrow sources, arrows order-preserving), and homogeneous
//! (additionally gapless above every arrow).

use crate::poly::Character;
use std::collections::BTreeMap;
use std::fmt;

/// One segment: the indecomposable starting at `start` of length `length`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Segment {
    /// Start vertex, 1-based in 1..=n.
    pub start: usize,
    /// Number of basis points, ≥ 1.
    pub length: usize,
}

/// Basis point b_{j,p}: `segment` is 1-based, `position` is 0-based.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BasisPoint {
    pub segment: usize,
    pub position: usize,
}

impl fmt::Display for BasisPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b({},{})", self.segment, self.position)
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RepError {
    #[error("the cycle quiver needs at least one vertex")]
    NoVertices,
    #[error("segment {index}: start vertex {start} is out of range 1..={n}")]
    StartOutOfRange { index: usize, start: usize, n: usize },
    #[error("segment {index}: length must be at least 1")]
    ZeroLength { index: usize },
    #[error(
        "segments {first} and {second} are isomorphic but separated in the list; \
         isomorphism classes must be contiguous"
    )]
    SplitIsoClass { first: usize, second: usize },
}

/// A nilpotent Δ_n-representation given by ordered segments.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycleRep {
    n: usize,
    segments: Vec<Segment>,
    cuts: Vec<usize>,
    offsets: Vec<usize>,
}

impl CycleRep {
    /// Validates vertex ranges, lengths, and contiguity of isomorphism
    /// classes, and records the block structure as cut points
    /// k'_1 < … < k'_{d_0} = d (each the last segment index of its block).
    pub fn new(n: usize, segments: Vec<Segment>) -> Result<Self, RepError> {
        if n == 0 {
            return Err(RepError::NoVertices);
        }
        for (idx, seg) in segments.iter().enumerate() {
            if seg.length == 0 {
                return Err(RepError::ZeroLength { index: idx + 1 });
            }
            if seg.start == 0 || seg.start > n {
                return Err(RepError::StartOutOfRange { index: idx + 1, start: seg.start, n });
            }
        }
        for j in 0..segments.len() {
            for k in j + 2..segments.len() {
                if segments[j] == segments[k] && segments[j + 1..k].iter().any(|s| *s != segments[j]) {
                    return Err(RepError::SplitIsoClass { first: j + 1, second: k + 1 });
                }
            }
        }
        let mut cuts = Vec::new();
        for j in 0..segments.len() {
            if j + 1 == segments.len() || segments[j + 1] != segments[j] {
                cuts.push(j + 1);
            }
        }
        let mut offsets = Vec::with_capacity(segments.len());
        let mut acc = 0;
        for seg in &segments {
            offsets.push(acc);
            acc += seg.length;
        }
        Ok(CycleRep { n, segments, cuts, offsets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of segments d.
    pub fn d(&self) -> usize {
        self.segments.len()
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Cut points k'_1 < … < k'_{d_0} = d of the block structure (1-based,
    /// each the last segment index of its block).
    pub fn cuts(&self) -> &[usize] {
        &self.cuts
    }

    /// Multiplicities k_1, …, k_{d_0} of the iso classes, in block order.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.cuts.len());
        let mut lo = 0;
        for &hi in &self.cuts {
            out.push(hi - lo);
            lo = hi;
        }
        out
    }

    pub fn total_dim(&self) -> usize {
        self.segments.iter().map(|s| s.length).sum()
    }

    /// Dimension at each cycle vertex (index 0 = vertex 1).
    pub fn dimension_vector(&self) -> Vec<usize> {
        let mut dims = vec![0; self.n];
        for b in self.points() {
            dims[self.vertex_of(b) - 1] += 1;
        }
        dims
    }

    /// The cycle vertex (1-based) that b_{j,p} sits over.
    pub fn vertex_of(&self, b: BasisPoint) -> usize {
        let seg = &self.segments[b.segment - 1];
        (seg.start - 1 + b.position) % self.n + 1
    }

    pub fn length(&self, segment: usize) -> usize {
        self.segments[segment - 1].length
    }

    /// All basis points, ordered by (segment, position).
    pub fn points(&self) -> impl Iterator<Item = BasisPoint> + '_ {
        self.segments.iter().enumerate().flat_map(|(j, seg)| {
            (0..seg.length).map(move |p| BasisPoint { segment: j + 1, position: p })
        })
    }

    /// Dense index of a basis point in [0, total_dim).
    pub fn point_id(&self, b: BasisPoint) -> usize {
        self.offsets[b.segment - 1] + b.position
    }

    /// The coefficient-quiver arrow out of `b`, if `b` is not an endpoint.
    pub fn arrow_target(&self, b: BasisPoint) -> Option<BasisPoint> {
        if b.position + 1 < self.length(b.segment) {
            Some(BasisPoint { segment: b.segment, position: b.position + 1 })
        } else {
            None
        }
    }

    pub fn is_endpoint(&self, b: BasisPoint) -> bool {
        b.position + 1 == self.length(b.segment)
    }

    /// T-weight ε_j + p·δ of the basis point b_{j,p}.
    pub fn t_weight(&self, b: BasisPoint) -> Character {
        let mut c = Character::eps(self.d(), b.segment);
        c.delta = b.position as i64;
        c
    }
}

/// Exponents (χ_0; χ_1, …, χ_d) of a one-parameter subgroup of the acting
/// torus; induces the grading wt(b_{j,p}) = χ_j + p·χ_0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cocharacter {
    pub delta: i64,
    pub eps: Vec<i64>,
}

impl Cocharacter {
    pub fn new(delta: i64, eps: Vec<i64>) -> Self {
        Cocharacter { delta, eps }
    }

    pub fn weight(&self, b: BasisPoint) -> i64 {
        self.eps[b.segment - 1] + b.position as i64 * self.delta
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error(
    "cocharacter is not attractive: {first} and {second} over vertex {vertex} \
     both have weight {weight}"
)]
pub struct NotAttractive {
    pub vertex: usize,
    pub first: BasisPoint,
    pub second: BasisPoint,
    pub weight: i64,
}

/// The basis points over each cycle vertex, sorted ascending by weight.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ColumnOrder {
    columns: Vec<Vec<BasisPoint>>,
    pos: BTreeMap<BasisPoint, (usize, usize)>,
}

impl ColumnOrder {
    /// Points over `vertex` (1-based), ascending by weight.
    pub fn column(&self, vertex: usize) -> &[BasisPoint] {
        &self.columns[vertex - 1]
    }

    pub fn columns(&self) -> &[Vec<BasisPoint>] {
        &self.columns
    }

    /// (vertex, 0-based index within the column) of a basis point.
    pub fn position(&self, b: BasisPoint) -> (usize, usize) {
        self.pos[&b]
    }

    /// 0-based index of a basis point within its column.
    pub fn index_in_column(&self, b: BasisPoint) -> usize {
        self.pos[&b].1
    }
}

/// Sorts the points of each column ascending by `chi`-weight; fails when two
/// points of one column share a weight (the grading is not attractive).
pub fn column_order(rep: &CycleRep, chi: &Cocharacter) -> Result<ColumnOrder, NotAttractive> {
    assert_eq!(chi.eps.len(), rep.d(), "cocharacter arity must match segment count");
    let mut columns: Vec<Vec<BasisPoint>> = vec![Vec::new(); rep.n()];
    for b in rep.points() {
        columns[rep.vertex_of(b) - 1].push(b);
    }
    for (v0, col) in columns.iter_mut().enumerate() {
        col.sort_by_key(|&b| (chi.weight(b), b));
        for w in col.windows(2) {
            if chi.weight(w[0]) == chi.weight(w[1]) {
                return Err(NotAttractive {
                    vertex: v0 + 1,
                    first: w[0],
                    second: w[1],
                    weight: chi.weight(w[0]),
                });
            }
        }
    }
    let mut pos = BTreeMap::new();
    for (v0, col) in columns.iter().enumerate() {
        for (idx, &b) in col.iter().enumerate() {
            pos.insert(b, (v0 + 1, idx));
        }
    }
    Ok(ColumnOrder { columns, pos })
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum AlignmentViolation {
    #[error(
        "segment endpoint {endpoint} sits below arrow source {arrow_source} in the \
         column of vertex {vertex}"
    )]
    EndpointBelowSource { vertex: usize, endpoint: BasisPoint, arrow_source: BasisPoint },
    #[error(
        "arrows out of the column of vertex {vertex} cross: {lower} sits below \
         {upper} but its image sits above"
    )]
    ArrowsCross { vertex: usize, lower: BasisPoint, upper: BasisPoint },
}

/// Checks the two alignment axioms column by column: every segment endpoint
/// sits above every arrow source, and arrows out of a column are
/// order-preserving. Returns the first violation in (vertex, column index)
/// order.
pub fn check_alignment(rep: &CycleRep, order: &ColumnOrder) -> Result<(), AlignmentViolation> {
    for vertex in 1..=rep.n() {
        let col = order.column(vertex);
        for (i, &a) in col.iter().enumerate() {
            if !rep.is_endpoint(a) {
                continue;
            }
            if let Some(&src) = col[i + 1..].iter().find(|&&b| !rep.is_endpoint(b)) {
                return Err(AlignmentViolation::EndpointBelowSource {
                    vertex,
                    endpoint: a,
                    arrow_source: src,
                });
            }
        }
        let sources: Vec<BasisPoint> = col.iter().copied().filter(|&b| !rep.is_endpoint(b)).collect();
        for w in sources.windows(2) {
            let ta = rep.arrow_target(w[0]).unwrap();
            let tb = rep.arrow_target(w[1]).unwrap();
            if order.index_in_column(ta) >= order.index_in_column(tb) {
                return Err(AlignmentViolation::ArrowsCross { vertex, lower: w[0], upper: w[1] });
            }
        }
    }
    Ok(())
}

pub fn is_aligned(rep: &CycleRep, order: &ColumnOrder) -> bool {
    check_alignment(rep, order).is_ok()
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum HomogeneityViolation {
    #[error("{0}")]
    NotAttractive(#[from] NotAttractive),
    #[error("{0}")]
    NotAligned(#[from] AlignmentViolation),
    #[error(
        "the column of vertex {vertex} is gappy above {arrow_source}: {above} should \
         carry an arrow onto {expected}"
    )]
    Gap { vertex: usize, arrow_source: BasisPoint, above: BasisPoint, expected: BasisPoint },
}

/// Checks that the grading is attractive, aligned, and gapless: above every
/// arrow source, the next vectors of the column carry arrows onto the
/// consecutive next vectors of the target column, up to its top. Returns the
/// column order on success.
pub fn check_homogeneous(
    rep: &CycleRep,
    chi: &Cocharacter,
) -> Result<ColumnOrder, HomogeneityViolation> {
    let order = column_order(rep, chi)?;
    check_alignment(rep, &order)?;
    for vertex in 1..=rep.n() {
        let col = order.column(vertex);
        for (k0, &b) in col.iter().enumerate() {
            let Some(target) = rep.arrow_target(b) else { continue };
            let (tv, tk0) = order.position(target);
            let tcol = order.column(tv);
            for r in 1..tcol.len() - tk0 {
                let expected = tcol[tk0 + r];
                let above = col.get(k0 + r).copied();
                let actual = above.and_then(|a| rep.arrow_target(a));
                if actual != Some(expected) {
                    return Err(HomogeneityViolation::Gap {
                        vertex,
                        arrow_source: b,
                        above: above.unwrap_or(expected),
                        expected,
                    });
                }
            }
        }
    }
    Ok(order)
}

pub fn is_homogeneous(rep: &CycleRep, chi: &Cocharacter) -> bool {
    check_homogeneous(rep, chi).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Character;

    fn seg(start: usize, length: usize) -> Segment {
        Segment { start, length }
    }

    fn b(j: usize, p: usize) -> BasisPoint {
        BasisPoint { segment: j, position: p }
    }

    /// A_2 ⊕ A_1 ⊕ A_1 over the one-vertex cycle.
    fn loop_rep() -> CycleRep {
        CycleRep::new(1, vec![seg(1, 2), seg(1, 1), seg(1, 1)]).unwrap()
    }

    #[test]
    fn blocks_of_contiguous_iso_classes() {
        assert_eq!(loop_rep().cuts(), &[1, 3]);
        assert_eq!(loop_rep().block_sizes(), vec![1, 2]);
        let three = CycleRep::new(2, vec![seg(1, 2), seg(1, 2), seg(1, 2)]).unwrap();
        assert_eq!(three.cuts(), &[3]);
        assert_eq!(three.block_sizes(), vec![3]);
    }

    #[test]
    fn split_iso_class_is_rejected() {
        let err = CycleRep::new(1, vec![seg(1, 1), seg(1, 2), seg(1, 1)]).unwrap_err();
        assert_eq!(err, RepError::SplitIsoClass { first: 1, second: 3 });
    }

    #[test]
    fn input_validation() {
        assert_eq!(CycleRep::new(0, vec![]).unwrap_err(), RepError::NoVertices);
        assert_eq!(
            CycleRep::new(2, vec![seg(3, 1)]).unwrap_err(),
            RepError::StartOutOfRange { index: 1, start: 3, n: 2 }
        );
        assert_eq!(
            CycleRep::new(2, vec![seg(1, 0)]).unwrap_err(),
            RepError::ZeroLength { index: 1 }
        );
    }

    #[test]
    fn geometry_of_points() {
        let rep = CycleRep::new(2, vec![seg(1, 2), seg(2, 3)]).unwrap();
        assert_eq!(rep.vertex_of(b(1, 0)), 1);
        assert_eq!(rep.vertex_of(b(1, 1)), 2);
        assert_eq!(rep.vertex_of(b(2, 0)), 2);
        assert_eq!(rep.vertex_of(b(2, 2)), 2);
        assert_eq!(rep.dimension_vector(), vec![2, 3]);
        assert_eq!(rep.total_dim(), 5);
        assert_eq!(rep.arrow_target(b(1, 0)), Some(b(1, 1)));
        assert_eq!(rep.arrow_target(b(1, 1)), None);
        let ids: Vec<usize> = rep.points().map(|p| rep.point_id(p)).collect();
        assert_eq!(ids, (0..5).collect::<Vec<_>>());
    }

    #[test]
    fn t_weights() {
        let rep = loop_rep();
        assert_eq!(rep.t_weight(b(1, 0)), Character::eps(3, 1));
        let mut e1d = Character::eps(3, 1);
        e1d.delta = 1;
        assert_eq!(rep.t_weight(b(1, 1)), e1d);
        let rep2 = CycleRep::new(2, vec![seg(1, 2), seg(1, 2), seg(1, 2)]).unwrap();
        let mut e3d = Character::eps(3, 3);
        e3d.delta = 1;
        assert_eq!(rep2.t_weight(b(3, 1)), e3d);
    }

    #[test]
    fn column_orders_of_the_loop_example() {
        let rep = loop_rep();
        let chi_prime = Cocharacter::new(3, vec![1, 2, 3]);
        let order = column_order(&rep, &chi_prime).unwrap();
        assert_eq!(order.column(1), &[b(1, 0), b(2, 0), b(3, 0), b(1, 1)]);
        let chi = Cocharacter::new(1, vec![1, 3, 4]);
        let order = column_order(&rep, &chi).unwrap();
        assert_eq!(order.column(1), &[b(1, 0), b(1, 1), b(2, 0), b(3, 0)]);
    }

    #[test]
    fn weight_collisions_are_rejected() {
        let rep = loop_rep();
        let err = column_order(&rep, &Cocharacter::new(0, vec![1, 1, 1])).unwrap_err();
        assert_eq!(err.vertex, 1);
        assert_eq!(err.weight, 1);
        assert_eq!((err.first, err.second), (b(1, 0), b(1, 1)));
    }

    #[test]
    fn column_order_partitions_the_basis() {
        let rep = CycleRep::new(3, vec![seg(1, 4), seg(2, 2), seg(3, 1)]).unwrap();
        let chi = Cocharacter::new(10, vec![1, 2, 3]);
        let order = column_order(&rep, &chi).unwrap();
        let mut seen = Vec::new();
        for v in 1..=3 {
            for &p in order.column(v) {
                assert_eq!(rep.vertex_of(p), v);
                seen.push(p);
            }
        }
        seen.sort();
        let mut all: Vec<BasisPoint> = rep.points().collect();
        all.sort();
        assert_eq!(seen, all);
    }

    #[test]
    fn arrows_shift_weights_by_the_loop_exponent() {
        let rep = CycleRep::new(2, vec![seg(1, 3), seg(2, 2)]).unwrap();
        let chi = Cocharacter::new(7, vec![5, -2]);
        for p in rep.points() {
            if let Some(q) = rep.arrow_target(p) {
                assert_eq!(chi.weight(q), chi.weight(p) + chi.delta);
            }
        }
    }

    #[test]
    fn alignment_of_the_loop_orders() {
        let rep = loop_rep();
        let order = column_order(&rep, &Cocharacter::new(3, vec![1, 2, 3])).unwrap();
        assert!(is_aligned(&rep, &order));
        // Both loop-example cocharacters are aligned; χ fails only at gaplessness.
        let order = column_order(&rep, &Cocharacter::new(1, vec![1, 3, 4])).unwrap();
        assert!(is_aligned(&rep, &order));
    }

    #[test]
    fn endpoint_below_source_is_reported() {
        // Two 2-chains plus isolated points, graded so an endpoint sits below
        // an arrow source in the vertex-1 column.
        let rep =
            CycleRep::new(2, vec![seg(1, 2), seg(2, 2), seg(1, 1), seg(2, 1)]).unwrap();
        let chi = Cocharacter::new(10, vec![2, 1, 1, 3]);
        let order = column_order(&rep, &chi).unwrap();
        assert_eq!(order.column(1), &[b(3, 0), b(1, 0), b(2, 1)]);
        let err = check_alignment(&rep, &order).unwrap_err();
        assert_eq!(
            err,
            AlignmentViolation::EndpointBelowSource {
                vertex: 1,
                endpoint: b(3, 0),
                arrow_source: b(1, 0)
            }
        );
    }

    #[test]
    fn all_length_one_is_aligned() {
        let rep = CycleRep::new(2, vec![seg(1, 1), seg(1, 1), seg(2, 1)]).unwrap();
        let order = column_order(&rep, &Cocharacter::new(1, vec![1, 2, 3])).unwrap();
        assert!(is_aligned(&rep, &order));
    }

    #[test]
    fn homogeneity_of_the_loop_orders() {
        let rep = loop_rep();
        assert!(is_homogeneous(&rep, &Cocharacter::new(3, vec![1, 2, 3])));
        let err = check_homogeneous(&rep, &Cocharacter::new(1, vec![1, 3, 4])).unwrap_err();
        // Order is [b(1,0), b(1,1), b(2,0), b(3,0)]: the arrow b(1,0)→b(1,1)
        // lands at index 1 with two vectors above it, but b(1,1) is an endpoint.
        assert_eq!(
            err,
            HomogeneityViolation::Gap {
                vertex: 1,
                arrow_source: b(1, 0),
                above: b(1, 1),
                expected: b(2, 0)
            }
        );
    }

    #[test]
    fn triple_segment_rep_is_homogeneous() {
        let rep = CycleRep::new(2, vec![seg(1, 2), seg(1, 2), seg(1, 2)]).unwrap();
        assert!(is_homogeneous(&rep, &Cocharacter::new(1, vec![1, 2, 3])));
    }

    #[test]
    fn homogeneous_implies_aligned() {
        let reps = [
            CycleRep::new(1, vec![seg(1, 2), seg(1, 1), seg(1, 1)]).unwrap(),
            CycleRep::new(2, vec![seg(1, 2), seg(1, 2), seg(1, 2)]).unwrap(),
            CycleRep::new(1, vec![seg(1, 4), seg(1, 2), seg(1, 2)]).unwrap(),
        ];
        for rep in &reps {
            for delta in 1..=5i64 {
                for perm in [[1, 2, 3], [2, 1, 3], [3, 1, 2]] {
                    let chi = Cocharacter::new(delta, perm.to_vec());
                    if let Ok(order) = check_homogeneous(rep, &chi) {
                        assert!(is_aligned(rep, &order));
                    }
                }
            }
        }
    }

    #[test]
    fn block_permutations_preserve_column_weight_multisets() {
        let rep = CycleRep::new(2, vec![seg(1, 2), seg(1, 2), seg(1, 2)]).unwrap();
        let chi = Cocharacter::new(1, vec![1, 2, 3]);
        // Permuting ε-exponents within the single block permutes weights among
        // isomorphic segments, so the per-column weight multisets agree.
        let chi_perm = Cocharacter::new(1, vec![3, 1, 2]);
        for v in 1..=2 {
            let weights = |c: &Cocharacter| {
                let mut w: Vec<i64> =
                    rep.points().filter(|&p| rep.vertex_of(p) == v).map(|p| c.weight(p)).collect();
                w.sort();
                w
            };
            assert_eq!(weights(&chi), weights(&chi_perm));
        }
    }
}
