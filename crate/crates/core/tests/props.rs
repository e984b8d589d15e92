mod common;

use std::collections::BTreeSet;

use common::*;
use mcb_core::arrangement::graphic::Graph;
use mcb_core::arrangement::supersolvable::{extend_by_pencil, supersolvable_decompose};
use mcb_core::arrangement::Arrangement;
use mcb_core::chow::hilbert_fy;
use mcb_core::descriptor::Descriptor;
use mcb_core::nest::BuildingSet;
use mcb_core::paving::random_sparse_paving;
use mcb_core::{Degree, ElemSet, IntPolynomial, McbEngine, SetFamily};
use num_rational::BigRational;
use proptest::prelude::*;

fn graph_from_mask(v: usize, mask: u32) -> Option<Graph> {
    let pairs: Vec<(usize, usize)> = (0..v).flat_map(|a| (a + 1..v).map(move |b| (a, b))).collect();
    let edges: Vec<(usize, usize)> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| *e).collect();
    if edges.is_empty() {
        return None;
    }
    Graph::new(v, &edges).ok()
}

fn elem_set(n: usize) -> impl Strategy<Value = ElemSet> {
    prop::collection::btree_set(0..n, 1..=n).prop_map(ElemSet::from_elems)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bitset_laws(a in prop::collection::btree_set(0usize..128, 0..20), b in prop::collection::btree_set(0usize..128, 0..20)) {
        let (x, y) = (ElemSet::from_elems(a.iter().copied()), ElemSet::from_elems(b.iter().copied()));
        let union: BTreeSet<usize> = x.union(y).iter().collect();
        prop_assert_eq!(union, a.union(&b).copied().collect::<BTreeSet<_>>());
        let inter: BTreeSet<usize> = x.intersection(y).iter().collect();
        prop_assert_eq!(inter, a.intersection(&b).copied().collect::<BTreeSet<_>>());
        prop_assert_eq!(x.is_subset(y), a.is_subset(&b));
        prop_assert_eq!(x.len(), a.len());
        let json = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<ElemSet>(&json).unwrap(), x);
    }

    #[test]
    fn graphic_mcb_matches_brute_force(v in 3usize..=5, mask in 1u32..1024) {
        let Some(g) = graph_from_mask(v, mask) else { return Ok(()) };
        let m = g.matroid();
        let engine = McbEngine::for_matroid(&m);
        let profile = engine.profile();
        let brute_fail = (0..m.n()).filter_map(|p| brute_min_cover_avoiding(&m, p)).min();
        prop_assert_eq!(profile.min_failure_degree, Degree::from(brute_fail));
        if let Some(w) = &profile.failure_witness {
            prop_assert!(valid_matroid_witness(&m, w));
        }
        let ground: Degree = engine.min_cover_of_ground().map(|c| c.len()).into();
        prop_assert_eq!(profile.min_nontrivial_degree, profile.min_failure_degree.min(ground));
        for a in 1..=m.n() {
            prop_assert_eq!(engine.is_mcb(a).holds, brute_is_mcb(&m, a), "a = {}", a);
        }
    }

    #[test]
    fn mcb_failure_is_monotone(n in 5usize..=9, m in 2usize..=3, seed in any::<u64>()) {
        prop_assume!(n > m + 1);
        let p = random_sparse_paving(n, m, seed).unwrap();
        let engine = McbEngine::for_matroid(&p.matroid());
        let holds: Vec<bool> = (1..=n).map(|a| engine.is_mcb(a).holds).collect();
        prop_assert!(holds.windows(2).all(|w| w[0] || !w[1]), "{:?}", holds);
        let fail = engine.min_failure_degree();
        for (i, h) in holds.iter().enumerate() {
            prop_assert_eq!(*h, Degree::Finite(i + 1) < fail);
        }
    }

    #[test]
    fn sparse_paving_is_seed_deterministic(n in 5usize..=10, seed in any::<u64>()) {
        let a = random_sparse_paving(n, 2, seed).unwrap();
        let b = random_sparse_paving(n, 2, seed).unwrap();
        prop_assert_eq!(&a, &b);
        let blocks = a.blocks();
        for (i, x) in blocks.iter().enumerate() {
            for y in &blocks[i + 1..] {
                prop_assert!(x.intersection(*y).len() < 2);
            }
        }
    }

    #[test]
    fn building_set_closure(n in 2usize..=5, family in prop::collection::vec(elem_set(5), 0..5)) {
        let family: Vec<ElemSet> = family.into_iter().map(|s| s.intersection(ElemSet::full(n))).filter(|s| !s.is_empty()).collect();
        let b = BuildingSet::closure(n, &SetFamily::new(n, family.clone())).unwrap();
        for s in &family {
            prop_assert!(b.contains(*s));
        }
        for e in 0..n {
            prop_assert!(b.contains(ElemSet::singleton(e)));
        }
        // union of two intersecting members is a member
        for x in b.members() {
            for y in b.members() {
                if x.intersects(*y) {
                    prop_assert!(b.contains(x.union(*y)));
                }
            }
        }
        let again = BuildingSet::closure(n, &b.to_family()).unwrap();
        prop_assert_eq!(again.members(), b.members());
        let engine = b.engine();
        for p in 0..n {
            let cands: Vec<ElemSet> = b.proper_members().into_iter().filter(|s| !s.contains(p)).collect();
            let fast = engine.min_cover_avoiding(p, None).map(|c| c.len());
            prop_assert_eq!(fast, brute_min_cover(ElemSet::full(n).without(p), &cands));
        }
    }

    #[test]
    fn descriptors_round_trip(v in 2usize..=5, mask in 1u32..1024, seed in any::<u64>()) {
        if let Some(g) = graph_from_mask(v, mask) {
            for d in [Descriptor::of_graph(&g), Descriptor::of_graph_arrangement(&g), Descriptor::of_matroid(&g.matroid())] {
                let back = Descriptor::from_json(&d.to_json()).unwrap();
                prop_assert_eq!(&back, &d);
                prop_assert_eq!(back.resolve().unwrap().matroid().unwrap(), g.matroid());
            }
        }
        let p = random_sparse_paving(7, 2, seed).unwrap();
        let d = Descriptor::of_paving(&p);
        prop_assert_eq!(Descriptor::from_json(&d.to_json()).unwrap().resolve().unwrap().matroid().unwrap(), p.matroid());
    }

    #[test]
    fn chow_hilbert_is_palindromic(v in 2usize..=5, mask in 1u32..1024) {
        let Some(g) = graph_from_mask(v, mask) else { return Ok(()) };
        let h = hilbert_fy(&g.matroid()).unwrap();
        prop_assert!(h.is_palindromic());
        prop_assert_eq!(h.coeff(0), 1);
        prop_assert_eq!(h.degree(), g.matroid().rank() as i64 - 1);
    }

    #[test]
    fn characteristic_polynomial_vanishes_at_one(v in 2usize..=5, mask in 1u32..1024) {
        let Some(g) = graph_from_mask(v, mask) else { return Ok(()) };
        let m = g.matroid();
        let chi = m.characteristic_polynomial();
        prop_assert_eq!(chi.eval(1), 0);
        prop_assert_eq!(chi.degree(), m.rank() as i64);
        prop_assert_eq!(chi.coeff(m.rank() - 1), -(m.atoms().len() as i64));
    }

    #[test]
    fn rank_three_regions_agree(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 3..7)) {
        let rows: Vec<Vec<i64>> = rows.into_iter().filter(|r| r.iter().any(|&x| x != 0)).collect();
        let Ok(a) = Arrangement::from_i64(3, &rows) else { return Ok(()) };
        let r = a.regions_count().unwrap();
        prop_assert_eq!(r.from_characteristic, r.geometric);
    }

    #[test]
    fn pencil_extensions_are_supersolvable(k in 2usize..=4, host in 0usize..4, count in 1usize..=4, w0 in -2i64..=2, w1 in -2i64..=2) {
        let normals: Vec<Vec<i64>> = std::iter::once(vec![1, 0]).chain((0..k as i64 - 1).map(|j| vec![j, 1])).collect();
        let base = Arrangement::from_i64(2, &normals).unwrap();
        let rat = |x: i64| BigRational::from_integer(x.into());
        let w = [rat(w0), rat(w1), rat(1)];
        let ext = extend_by_pencil(&base, host % k, &w, count).unwrap();
        prop_assert!(ext.invariant.iter().all(|&b| b));
        let a = &ext.arrangement;
        for &r in &ext.added {
            let old = ElemSet::full(base.len()).with(r);
            prop_assert_eq!(a.rank_of(old), a.rank());
        }
        let m = a.matroid();
        let chain = supersolvable_decompose(&m).unwrap();
        prop_assert_eq!(chain.e.last().copied(), Some(count));
        prop_assert_eq!(chain.product_polynomial(), m.characteristic_polynomial());
    }

    #[test]
    fn polynomial_arithmetic(roots in prop::collection::vec(-4i64..=4, 0..5), t in -5i64..=5) {
        let p: IntPolynomial = roots.iter().map(|&r| IntPolynomial::linear_factor(r)).product();
        let direct: i64 = roots.iter().map(|&r| t - r).product();
        prop_assert_eq!(p.eval(t), direct);
        for &r in &roots {
            prop_assert!(p.root_multiplicity(r) >= 1);
        }
    }
}
