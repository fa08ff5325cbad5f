//! Block-permutation symmetries and nil Hecke operators on equivariant
//! classes.
//!
//! Permutations of isomorphic segments act on fixed points by reindexing
//! suffix tuples and on classes by `(σ·f)_L = σ(f_{σ⁻¹L})`; both are left
//! actions. The action is triangular in the Knutson–Tao basis, averaging a
//! basis class over the block group yields an invariant class, and the
//! divided differences `D_i(f) = (f − σ_i·f)/(ε_{i+1} − ε_i)` make the
//! cohomology a module over the nil Hecke ring. The module is not cyclic in
//! general, so no generator search is attempted; `verify_nilhecke` checks the
//! defining relations instead.

use crate::gkm::{expand, is_gkm_class, EquivariantClass, Expansion, KtBasis};
use crate::graph::{FixedPoint, MomentGraph};
use crate::poly::{act_on_polynomial, rat, Character, Permutation, Polynomial};
use crate::rep::CycleRep;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::fmt;

/// Indices `i` for which the adjacent transposition σ_i = (i, i+1) preserves
/// the representation: segments i and i+1 lie in the same isomorphism block,
/// i.e. i is not a block cut.
pub fn generators(rep: &CycleRep) -> Vec<usize> {
    (1..rep.d()).filter(|i| !rep.cuts().contains(i)).collect()
}

fn permutations_of(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut tail in permutations_of(&rest) {
            let mut v = Vec::with_capacity(items.len());
            v.push(x);
            v.append(&mut tail);
            out.push(v);
        }
    }
    out
}

/// Every permutation of the segment indices that maps each isomorphism block
/// into itself, in lexicographic order of image vectors. The identity comes
/// first; the order of the group is the product of the block-size factorials.
pub fn block_group(rep: &CycleRep) -> Vec<Permutation> {
    let mut images: Vec<Vec<usize>> = vec![Vec::new()];
    let mut lo = 1;
    for &hi in rep.cuts() {
        let block: Vec<usize> = (lo..=hi).collect();
        let mut next = Vec::new();
        for prefix in &images {
            for perm in permutations_of(&block) {
                let mut v = prefix.clone();
                v.extend(perm);
                next.push(v);
            }
        }
        images = next;
        lo = hi + 1;
    }
    images
        .into_iter()
        .map(|im| Permutation::from_images(&im).expect("block images form a bijection"))
        .collect()
}

/// Action on fixed points: the suffix of `σ·L` at segment j is L's suffix at
/// segment σ⁻¹(j). Well defined for block-stabilizing permutations because
/// segments in a block are identical.
pub fn act_on_fixed_point(s: &Permutation, l: &FixedPoint) -> FixedPoint {
    let inv = s.inverse();
    FixedPoint((1..=l.0.len()).map(|j| l.0[inv.apply(j) - 1]).collect())
}

/// Action on classes: `(σ·f)_L = σ(f_{σ⁻¹L})`, a left action by ring
/// automorphisms twisted over the coefficient action on polynomials.
///
/// # Panics
/// Panics when `s` does not stabilize the blocks of the representation, or
/// when the result violates the GKM condition (which would contradict the
/// action being well defined on equivariant cohomology).
pub fn act_on_class(g: &MomentGraph, s: &Permutation, f: &EquivariantClass) -> EquivariantClass {
    assert!(
        s.stabilizes_blocks(g.rep().cuts()),
        "only block-stabilizing permutations act on the moment graph"
    );
    let mut out = EquivariantClass::zero(g);
    for v in 0..g.vertex_count() {
        let image = act_on_fixed_point(s, &g.vertices()[v]);
        let iv = g
            .vertex_index(&image)
            .expect("block-stabilizing permutations permute the fixed points");
        out.set_entry(iv, act_on_polynomial(s, f.entry(v)));
    }
    assert!(
        is_gkm_class(g, &out),
        "the symmetric-group action must preserve the GKM condition"
    );
    out
}

/// Expansion of σ_i·p^L in the Knutson–Tao basis, by the closed form: the
/// class is fixed unless σ_iL lies strictly below L, in which case the single
/// correction term (ε_i − ε_{i+1})·p^{σ_iL} appears.
///
/// # Panics
/// Panics when `i` is not a generator or when the closed form disagrees with
/// the direct expansion of `act_on_class`.
pub fn simple_action_on_kt(g: &MomentGraph, basis: &KtBasis, i: usize, l: usize) -> Expansion {
    let d = g.rep().d();
    assert!(
        generators(g.rep()).contains(&i),
        "σ_{i} does not preserve the representation"
    );
    let sigma = Permutation::transposition(d, i, i + 1);
    let image = act_on_fixed_point(&sigma, &g.vertices()[l]);
    let sl = g
        .vertex_index(&image)
        .expect("block-stabilizing permutations permute the fixed points");
    let mut exp = Expansion::new();
    exp.insert(l, Polynomial::one(d + 1));
    if sl != l && g.succeq(l, sl) {
        let coeff = Character::eps(d, i).sub(&Character::eps(d, i + 1));
        exp.insert(sl, coeff.to_polynomial());
    } else if sl != l {
        assert!(g.succeq(sl, l), "a reflection pair must be comparable");
    }
    let direct = expand(g, basis, &act_on_class(g, &sigma, basis.class(l)))
        .expect("simple reflections act within the span of the basis");
    assert_eq!(
        exp, direct,
        "closed form for the simple-reflection action disagrees with the direct expansion"
    );
    exp
}

/// The block-group average `h^L = (1/|W|) Σ_{σ∈W} σ·p^L`: an invariant class
/// whose expansion is unitriangular (coefficient 1 at L, support below L).
/// The invariant classes form a basis of the invariant subring.
///
/// # Panics
/// Panics when the average fails invariance or unitriangularity, which would
/// contradict the triangularity of the group action.
pub fn invariant_class(g: &MomentGraph, basis: &KtBasis, l: usize) -> EquivariantClass {
    let group = block_group(g.rep());
    let mut sum = EquivariantClass::zero(g);
    for s in &group {
        sum = sum.add(&act_on_class(g, s, basis.class(l)));
    }
    let scale = rat(1) / rat(group.len() as i64);
    let h = EquivariantClass::from_entries(
        sum.entries().iter().map(|p| p.scale(&scale)).collect(),
    );
    for i in generators(g.rep()) {
        let sigma = Permutation::transposition(g.rep().d(), i, i + 1);
        assert!(
            act_on_class(g, &sigma, &h) == h,
            "the block-group average must be invariant"
        );
    }
    let exp = expand(g, basis, &h).expect("the average stays in the span of the basis");
    assert!(
        exp.get(&l).is_some_and(|c| c.is_one()),
        "the invariant class must have coefficient 1 at its own vertex"
    );
    assert!(
        exp.keys().all(|&n| g.succeq(l, n)),
        "the invariant class must be supported below its own vertex"
    );
    h
}

/// Divided difference `D_i(f) = (f − σ_i·f)/(ε_{i+1} − ε_i)`, computed by
/// exact entrywise division. Sends GKM classes to GKM classes and lowers
/// degree by one.
///
/// # Panics
/// Panics when `i` is not a generator, when an entry fails to divide (which
/// would contradict the GKM condition on the reflection edges), or when the
/// result is not a GKM class.
pub fn divided_difference(g: &MomentGraph, i: usize, f: &EquivariantClass) -> EquivariantClass {
    let d = g.rep().d();
    assert!(
        generators(g.rep()).contains(&i),
        "σ_{i} does not preserve the representation"
    );
    let sigma = Permutation::transposition(d, i, i + 1);
    let diff = f.sub(&act_on_class(g, &sigma, f));
    let denom = Character::eps(d, i + 1).sub(&Character::eps(d, i)).to_polynomial();
    let entries: Vec<Polynomial> = diff
        .entries()
        .iter()
        .map(|p| {
            p.div_exact(&denom)
                .expect("f − σ_i·f is divisible by ε_{i+1} − ε_i at every fixed point")
        })
        .collect();
    let out = EquivariantClass::from_entries(entries);
    assert!(is_gkm_class(g, &out), "divided differences preserve the GKM condition");
    out
}

/// Applies divided differences along a word of generator indices, leftmost
/// first; the empty word is the identity.
pub fn apply_word(g: &MomentGraph, word: &[usize], f: &EquivariantClass) -> EquivariantClass {
    let mut out = f.clone();
    for &i in word {
        out = divided_difference(g, i, &out);
    }
    out
}

/// Outcome of checking one family of nil Hecke relations.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RelationCheck {
    pub checks: usize,
    pub failures: usize,
}

impl RelationCheck {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn record(&mut self, ok: bool) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
        }
    }
}

impl fmt::Display for RelationCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "pass ({} checks)", self.checks)
        } else {
            write!(f, "FAIL ({} of {} checks)", self.failures, self.checks)
        }
    }
}

/// Report of the nil Hecke relation checks: squares `D_i² = 0`, commutation
/// `D_iD_j = D_jD_i` for distant generators, and braid
/// `D_iD_{i+1}D_i = D_{i+1}D_iD_{i+1}` for adjacent ones.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NilHeckeReport {
    pub generators: Vec<usize>,
    pub classes_checked: usize,
    pub squares: RelationCheck,
    pub commutations: RelationCheck,
    pub braids: RelationCheck,
}

impl NilHeckeReport {
    pub fn all_pass(&self) -> bool {
        self.squares.passed() && self.commutations.passed() && self.braids.passed()
    }
}

impl fmt::Display for NilHeckeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "generators {:?} on {} classes: squares {}, commutation {}, braid {}",
            self.generators, self.classes_checked, self.squares, self.commutations, self.braids
        )
    }
}

/// Checks the nil Hecke relations on every basis class and on `samples`
/// random R-combinations with coefficients of degree ≤ 3, drawn from a seeded
/// generator so reports are reproducible.
pub fn verify_nilhecke(
    g: &MomentGraph,
    basis: &KtBasis,
    samples: usize,
    seed: u64,
) -> NilHeckeReport {
    let gens = generators(g.rep());
    let mut classes: Vec<EquivariantClass> = basis.classes().to_vec();
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..samples {
        let mut f = EquivariantClass::zero(g);
        for class in basis.classes() {
            if rng.gen_bool(0.5) {
                continue;
            }
            let a = crate::poly::random_polynomial(&mut rng, g.rep().d() + 1, 3);
            f = f.add(&class.scale_poly(&a));
        }
        classes.push(f);
    }
    let mut report = NilHeckeReport {
        generators: gens.clone(),
        classes_checked: classes.len(),
        squares: RelationCheck::default(),
        commutations: RelationCheck::default(),
        braids: RelationCheck::default(),
    };
    for f in &classes {
        for &i in &gens {
            report.squares.record(apply_word(g, &[i, i], f).is_zero());
        }
        for (a, &i) in gens.iter().enumerate() {
            for &j in &gens[a + 1..] {
                if j - i > 1 {
                    report
                        .commutations
                        .record(apply_word(g, &[i, j], f) == apply_word(g, &[j, i], f));
                } else {
                    report.braids.record(
                        apply_word(g, &[i, j, i], f) == apply_word(g, &[j, i, j], f),
                    );
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gkm::{combine, kt_basis, kt_normalization};
    use crate::graph::build_graph;
    use crate::poly::{parse_polynomial, partial_delta, random_polynomial};
    use crate::rep::{Cocharacter, Segment};

    fn seg(start: usize, length: usize) -> Segment {
        Segment { start, length }
    }

    fn loop_rep() -> CycleRep {
        CycleRep::new(1, vec![seg(1, 2), seg(1, 1), seg(1, 1)]).unwrap()
    }

    fn loop_graph() -> MomentGraph {
        build_graph(&loop_rep(), &Cocharacter::new(3, vec![1, 2, 3]), &[2]).unwrap()
    }

    fn flag_graph() -> MomentGraph {
        let rep = CycleRep::new(2, vec![seg(1, 2), seg(1, 2), seg(1, 2)]).unwrap();
        build_graph(&rep, &Cocharacter::new(1, vec![1, 2, 3]), &[1, 2]).unwrap()
    }

    fn two_loops_graph() -> MomentGraph {
        let rep = CycleRep::new(1, vec![seg(1, 1), seg(1, 1), seg(1, 2), seg(1, 2)]).unwrap();
        build_graph(&rep, &Cocharacter::new(5, vec![3, 4, 1, 2]), &[1]).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, 3).unwrap()
    }

    fn fp(s: &[usize]) -> FixedPoint {
        FixedPoint(s.to_vec())
    }

    #[test]
    fn generator_indices() {
        assert_eq!(generators(&loop_rep()), vec![2]);
        let two = CycleRep::new(1, vec![seg(1, 1), seg(1, 1), seg(1, 2), seg(1, 2)]).unwrap();
        assert_eq!(generators(&two), vec![1, 3]);
        let rigid = CycleRep::new(1, vec![seg(1, 2), seg(1, 1)]).unwrap();
        assert_eq!(generators(&rigid), Vec::<usize>::new());
    }

    #[test]
    fn block_group_enumeration() {
        let w = block_group(&loop_rep());
        assert_eq!(w.len(), 2);
        assert!(w[0].is_identity());
        assert_eq!(w[1], Permutation::transposition(3, 2, 3));
        assert_eq!(block_group(&two_loops_graph().rep().clone()).len(), 4);
        assert_eq!(block_group(&flag_graph().rep().clone()).len(), 6);
        for s in block_group(&flag_graph().rep().clone()) {
            assert!(s.stabilizes_blocks(&[3]));
        }
    }

    #[test]
    fn fixed_point_action() {
        let s = Permutation::transposition(3, 2, 3);
        assert_eq!(act_on_fixed_point(&s, &fp(&[1, 0, 1])), fp(&[1, 1, 0]));
        assert_eq!(act_on_fixed_point(&s, &fp(&[0, 1, 1])), fp(&[0, 1, 1]));
        let id = Permutation::identity(3);
        assert_eq!(act_on_fixed_point(&id, &fp(&[2, 0, 0])), fp(&[2, 0, 0]));
    }

    #[test]
    fn class_action_on_the_loop_basis() {
        let g = loop_graph();
        let basis = kt_basis(&g).unwrap();
        let s2 = Permutation::transposition(3, 2, 3);
        let l1 = g.vertex_by_rank(0);
        let l2 = g.vertex_by_rank(1);
        let moved = act_on_class(&g, &s2, basis.class(l2));
        let expected = basis.class(l2).add(&basis.class(l1).scale_poly(&p("e2-e3")));
        assert_eq!(moved, expected);
        for r in [2, 3] {
            let v = g.vertex_by_rank(r);
            assert_eq!(act_on_class(&g, &s2, basis.class(v)), *basis.class(v));
        }
        let id = Permutation::identity(3);
        assert_eq!(act_on_class(&g, &id, basis.class(l2)), *basis.class(l2));
    }

    #[test]
    fn simple_action_expansions() {
        let g = loop_graph();
        let basis = kt_basis(&g).unwrap();
        let l1 = g.vertex_by_rank(0);
        let l2 = g.vertex_by_rank(1);
        let l4 = g.vertex_by_rank(3);
        assert_eq!(
            simple_action_on_kt(&g, &basis, 2, l2),
            Expansion::from([(l2, p("1")), (l1, p("e2-e3"))])
        );
        assert_eq!(simple_action_on_kt(&g, &basis, 2, l4), Expansion::from([(l4, p("1"))]));
        assert_eq!(simple_action_on_kt(&g, &basis, 2, l1), Expansion::from([(l1, p("1"))]));
    }

    #[test]
    fn invariant_classes_on_the_loop_graph() {
        let g = loop_graph();
        let basis = kt_basis(&g).unwrap();
        let l1 = g.vertex_by_rank(0);
        let l2 = g.vertex_by_rank(1);
        let l3 = g.vertex_by_rank(2);
        assert_eq!(invariant_class(&g, &basis, l3), *basis.class(l3));
        let h2 = invariant_class(&g, &basis, l2);
        let expected = basis
            .class(l2)
            .add(&basis.class(l1).scale_poly(&p("1/2*e2-1/2*e3")));
        assert_eq!(h2, expected);
        assert_eq!(invariant_class(&g, &basis, l1), *basis.class(l1));
    }

    #[test]
    fn invariant_classes_exist_on_the_flag_graph() {
        let g = flag_graph();
        let basis = kt_basis(&g).unwrap();
        for v in 0..g.vertex_count() {
            // Construction self-verifies invariance and unitriangularity.
            let _ = invariant_class(&g, &basis, v);
        }
    }

    #[test]
    fn divided_difference_on_basis_classes() {
        let g = loop_graph();
        let basis = kt_basis(&g).unwrap();
        let l1 = g.vertex_by_rank(0);
        let l2 = g.vertex_by_rank(1);
        let l3 = g.vertex_by_rank(2);
        assert_eq!(divided_difference(&g, 2, basis.class(l2)), *basis.class(l1));
        assert!(divided_difference(&g, 2, basis.class(l3)).is_zero());
        let c = EquivariantClass::constant(&g, rat(7));
        assert!(divided_difference(&g, 2, &c).is_zero());
    }

    #[test]
    fn words_of_operators() {
        let g = loop_graph();
        let basis = kt_basis(&g).unwrap();
        for v in 0..g.vertex_count() {
            assert!(apply_word(&g, &[2, 2], basis.class(v)).is_zero());
            assert_eq!(apply_word(&g, &[], basis.class(v)), *basis.class(v));
        }
        let two = two_loops_graph();
        let basis2 = kt_basis(&two).unwrap();
        for v in 0..two.vertex_count() {
            assert!(apply_word(&two, &[3, 1], basis2.class(v)).is_zero());
            assert!(apply_word(&two, &[1, 3], basis2.class(v)).is_zero());
        }
    }

    #[test]
    fn nilhecke_relations_hold() {
        let g = loop_graph();
        let basis = kt_basis(&g).unwrap();
        let report = verify_nilhecke(&g, &basis, 3, 7);
        assert!(report.all_pass());
        assert_eq!(report.generators, vec![2]);
        assert_eq!(report.classes_checked, 7);
        assert_eq!(report.squares.checks, 7);
        assert_eq!(report.commutations.checks, 0);

        let two = two_loops_graph();
        let basis2 = kt_basis(&two).unwrap();
        let report2 = verify_nilhecke(&two, &basis2, 2, 11);
        assert!(report2.all_pass());
        assert!(report2.commutations.checks > 0);
        assert_eq!(report2.braids.checks, 0);

        let flag = flag_graph();
        let basis3 = kt_basis(&flag).unwrap();
        let report3 = verify_nilhecke(&flag, &basis3, 2, 13);
        assert!(report3.all_pass());
        assert!(report3.braids.checks > 0);
    }

    fn random_gkm_class(
        g: &MomentGraph,
        basis: &KtBasis,
        rng: &mut StdRng,
        max_deg: u32,
    ) -> EquivariantClass {
        let mut f = EquivariantClass::zero(g);
        for class in basis.classes() {
            if rng.gen_bool(0.4) {
                f = f.add(&class.scale_poly(&random_polynomial(rng, g.rep().d() + 1, max_deg)));
            }
        }
        f
    }

    #[test]
    fn class_action_is_a_group_action() {
        let g = flag_graph();
        let basis = kt_basis(&g).unwrap();
        let group = block_group(g.rep());
        let mut rng = StdRng::seed_from_u64(5);
        let f = random_gkm_class(&g, &basis, &mut rng, 2);
        for s in &group {
            for t in &group {
                let st = s.compose(t);
                assert_eq!(
                    act_on_class(&g, &st, &f),
                    act_on_class(&g, s, &act_on_class(&g, t, &f))
                );
            }
        }
    }

    #[test]
    fn class_action_is_twisted_linear() {
        let g = loop_graph();
        let basis = kt_basis(&g).unwrap();
        let mut rng = StdRng::seed_from_u64(17);
        let s2 = Permutation::transposition(3, 2, 3);
        for _ in 0..5 {
            let a = random_polynomial(&mut rng, 4, 3);
            let f = random_gkm_class(&g, &basis, &mut rng, 2);
            assert_eq!(
                act_on_class(&g, &s2, &f.scale_poly(&a)),
                act_on_class(&g, &s2, &f).scale_poly(&act_on_polynomial(&s2, &a))
            );
        }
    }

    #[test]
    fn group_action_is_triangular_on_the_basis() {
        for g in [loop_graph(), flag_graph()] {
            let basis = kt_basis(&g).unwrap();
            for s in block_group(g.rep()) {
                for l in 0..g.vertex_count() {
                    let exp = expand(&g, &basis, &act_on_class(&g, &s, basis.class(l))).unwrap();
                    assert!(exp[&l].is_one());
                    for (&n, c) in &exp {
                        assert!(g.succeq(l, n));
                        let deg = (g.outdeg(l) - g.outdeg(n)) as u32;
                        assert!(c.is_homogeneous_of_degree(deg));
                    }
                }
            }
        }
    }

    #[test]
    fn divided_difference_is_a_twisted_derivation() {
        let g = loop_graph();
        let basis = kt_basis(&g).unwrap();
        let mut rng = StdRng::seed_from_u64(23);
        let s2 = Permutation::transposition(3, 2, 3);
        for _ in 0..5 {
            let a = random_polynomial(&mut rng, 4, 3);
            let f = random_gkm_class(&g, &basis, &mut rng, 2);
            let lhs = divided_difference(&g, 2, &f.scale_poly(&a));
            let rhs = f
                .scale_poly(&partial_delta(2, &a))
                .add(&divided_difference(&g, 2, &f).scale_poly(&act_on_polynomial(&s2, &a)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn divided_difference_expansion_matches_the_closed_form() {
        for g in [loop_graph(), flag_graph()] {
            let basis = kt_basis(&g).unwrap();
            let d = g.rep().d();
            let mut rng = StdRng::seed_from_u64(31);
            for &i in &generators(g.rep()) {
                let sigma = Permutation::transposition(d, i, i + 1);
                let mut coeffs = Expansion::new();
                for l in 0..g.vertex_count() {
                    coeffs.insert(l, random_polynomial(&mut rng, d + 1, 2));
                }
                let f = combine(&g, &basis, &coeffs);
                let mut expected = EquivariantClass::zero(&g);
                for (&l, a) in &coeffs {
                    expected = expected.add(&basis.class(l).scale_poly(&partial_delta(i, a)));
                    let sl = g
                        .vertex_index(&act_on_fixed_point(&sigma, &g.vertices()[l]))
                        .unwrap();
                    if sl != l && g.succeq(l, sl) {
                        expected = expected
                            .add(&basis.class(sl).scale_poly(&act_on_polynomial(&sigma, a)));
                    }
                }
                assert_eq!(divided_difference(&g, i, &f), expected);
            }
        }
    }

    #[test]
    fn reflection_pairs_are_edges_toward_lower_outdegree() {
        for g in [loop_graph(), flag_graph(), two_loops_graph()] {
            let d = g.rep().d();
            let mut lo = 1;
            let mut pairs = Vec::new();
            for &hi in g.rep().cuts() {
                for h in lo..=hi {
                    for l in h + 1..=hi {
                        pairs.push((h, l));
                    }
                }
                lo = hi + 1;
            }
            let mut seen = 0;
            for (h, l) in pairs {
                let sigma = Permutation::transposition(d, h, l);
                for v in 0..g.vertex_count() {
                    let sv_point = act_on_fixed_point(&sigma, &g.vertices()[v]);
                    let sv = g.vertex_index(&sv_point).unwrap();
                    if sv == v || g.outdeg(sv) >= g.outdeg(v) {
                        continue;
                    }
                    let edge = g
                        .out_edges(v)
                        .find(|e| e.head == sv)
                        .expect("a reflection pair with an outdegree drop is an edge");
                    let expected = Character::eps(d, l).sub(&Character::eps(d, h));
                    assert_eq!(edge.label, expected);
                    seen += 1;
                }
            }
            assert!(seen > 0);
        }
    }

    #[test]
    fn simple_reflections_drop_outdegree_by_one() {
        for g in [loop_graph(), flag_graph(), two_loops_graph()] {
            let d = g.rep().d();
            for &i in &generators(g.rep()) {
                let sigma = Permutation::transposition(d, i, i + 1);
                for v in 0..g.vertex_count() {
                    let sv = g
                        .vertex_index(&act_on_fixed_point(&sigma, &g.vertices()[v]))
                        .unwrap();
                    if sv != v && g.succeq(v, sv) {
                        assert_eq!(g.outdeg(sv) + 1, g.outdeg(v));
                    }
                }
            }
        }
    }

    #[test]
    fn two_loops_graph_matches_the_worked_example() {
        let g = two_loops_graph();
        assert_eq!(g.vertex_count(), 4);
        let order: Vec<FixedPoint> = (0..4).map(|r| g.vertices()[g.vertex_by_rank(r)].clone()).collect();
        assert_eq!(
            order,
            vec![fp(&[1, 1, 2, 1]), fp(&[1, 1, 1, 2]), fp(&[1, 0, 2, 2]), fp(&[0, 1, 2, 2])]
        );
        let src = g.vertex_index(&fp(&[0, 1, 2, 2])).unwrap();
        assert_eq!(g.outdeg(src), 3);
        let labels: Vec<String> = g
            .out_edges(src)
            .map(|e| e.label.to_polynomial().to_compact_string())
            .collect();
        assert_eq!(labels.len(), 3);
        for want in ["e2-e1", "e3-e1+d", "e4-e1+d"] {
            assert!(labels.iter().any(|s| s == want), "missing label {want}: {labels:?}");
        }
        assert!(g.is_palais_smale());
        let basis = kt_basis(&g).unwrap();
        let sink = g.vertex_by_rank(0);
        assert_eq!(kt_normalization(&g, sink), Polynomial::one(5));
        assert_eq!(basis.class(sink).entry(sink), &Polynomial::one(5));
    }
}
