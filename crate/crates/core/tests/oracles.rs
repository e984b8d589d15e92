mod common;

use common::*;
use mcb_core::arrangement::graphic::Graph;
use mcb_core::arrangement::lines::{hh_family, HhKind};
use mcb_core::arrangement::supersolvable::supersolvable_decompose;
use mcb_core::arrangement::Arrangement;
use mcb_core::catalog;
use mcb_core::chow::{fy_basis_enumerate, hilbert_fy, hilbert_presentation_oracle};
use mcb_core::paving::{random_sparse_paving, PavingBlocks};
use mcb_core::{Degree, ElemSet, IntPolynomial, Matroid, McbEngine};

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn engine_matches_exhaustive_search_on_small_catalog() {
    for (name, m) in catalog::catalog_matroids().into_iter().filter(|(_, m)| m.n() <= 7) {
        let engine = McbEngine::for_matroid(&m);
        for p in 0..m.n() {
            let fast = engine.min_cover_avoiding(p, None);
            assert_eq!(fast.as_ref().map(Vec::len), brute_min_cover_avoiding(&m, p), "{name} p={p}");
            if let Some(members) = fast {
                let w = mcb_core::Witness { avoid: p, members };
                assert!(valid_matroid_witness(&m, &w), "{name} p={p}");
            }
        }
    }
}

#[test]
fn building_set_engine_matches_exhaustive_search() {
    for (name, b) in catalog::building_sets() {
        let engine = b.engine();
        let proper = b.proper_members();
        for p in 0..b.n() {
            let cands: Vec<ElemSet> = proper.iter().copied().filter(|s| !s.contains(p)).collect();
            let brute = brute_min_cover(ElemSet::full(b.n()).without(p), &cands);
            let fast = engine.min_cover_avoiding(p, None);
            assert_eq!(fast.as_ref().map(Vec::len), brute, "{name} p={p}");
            if let Some(members) = fast {
                assert!(valid_family_witness(b.n(), &proper, &mcb_core::Witness { avoid: p, members }));
            }
        }
    }
}

#[test]
fn uniform_matroid_failure_degrees() {
    // U(r,n) for r >= 2: r-1 subsets cover n-1 points in ceil((n-1)/(r-1)) pieces
    for n in 3..=7 {
        for r in 2..n {
            let m = Matroid::uniform(r, n).unwrap();
            let expected = (n - 1).div_ceil(r - 1);
            assert_eq!(McbEngine::for_matroid(&m).min_failure_degree(), Degree::Finite(expected), "U({r},{n})");
        }
    }
}

fn eulerian(n: usize) -> Vec<i64> {
    // A(n,k) = (k+1) A(n-1,k) + (n-k) A(n-1,k-1)
    let mut row = vec![1i64];
    for m in 2..=n {
        let mut next = vec![0i64; m];
        for k in 0..m {
            let a = if k < row.len() { (k as i64 + 1) * row[k] } else { 0 };
            let b = if k >= 1 && k - 1 < row.len() { (m - k) as i64 * row[k - 1] } else { 0 };
            next[k] = a + b;
        }
        row = next;
    }
    row
}

#[test]
fn chow_hilbert_series() {
    for n in 1..=4 {
        let b = Matroid::boolean(n).unwrap();
        assert_eq!(hilbert_fy(&b).unwrap().coeffs(), eulerian(n).as_slice(), "B_{n}");
        assert_eq!(hilbert_presentation_oracle(&b, None).unwrap().coeffs(), eulerian(n).as_slice());
    }
    assert_eq!(hilbert_fy(&Matroid::uniform(2, 3).unwrap()).unwrap().coeffs(), &[1, 1]);
    for (name, m) in catalog::catalog_matroids().into_iter().filter(|(_, m)| m.n() <= 6 && !m.has_loops()) {
        let fy = hilbert_fy(&m).unwrap();
        for (d, &c) in fy.coeffs().iter().enumerate() {
            assert_eq!(fy_basis_enumerate(&m, d).unwrap().len() as i64, c, "{name} degree {d}");
        }
        assert!(fy.is_palindromic(), "{name}");
    }
}

fn proper_colorings(g: &Graph, t: usize) -> i64 {
    let v = g.vertices();
    let total = t.pow(v as u32);
    (0..total)
        .filter(|&code| {
            let colour = |x: usize| (code / t.pow(x as u32)) % t;
            g.edges().iter().all(|&(a, b)| colour(a) != colour(b))
        })
        .count() as i64
}

fn graph_components(g: &Graph) -> u32 {
    let mut parent: Vec<usize> = (0..g.vertices()).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for &(a, b) in g.edges() {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    (0..g.vertices()).filter(|&x| find(&mut parent, x) == x).count() as u32
}

#[test]
fn characteristic_polynomial_against_chromatic_counts() {
    for g in catalog::graphs_up_to(5) {
        let chi = g.matroid().characteristic_polynomial();
        let c = graph_components(&g);
        for t in 0..=5usize {
            let lhs = chi.eval(t as i64) * (t as i64).pow(c);
            assert_eq!(lhs, proper_colorings(&g, t), "{} t={t}", catalog::graph_name(&g));
        }
    }
}

/// Chordal iff no induced cycle on four or more vertices.
fn chordal_by_cycles(g: &Graph) -> bool {
    let v = g.vertices();
    (0u32..1 << v).filter(|s| s.count_ones() >= 4).all(|s| {
        let verts: Vec<usize> = (0..v).filter(|&x| s >> x & 1 == 1).collect();
        let deg = |x: usize| verts.iter().filter(|&&y| g.adjacent(x, y)).count();
        if !verts.iter().all(|&x| deg(x) == 2) {
            return true;
        }
        // all degrees 2: a cycle exactly when connected
        let mut seen = vec![verts[0]];
        let mut i = 0;
        while i < seen.len() {
            let x = seen[i];
            for &y in &verts {
                if g.adjacent(x, y) && !seen.contains(&y) {
                    seen.push(y);
                }
            }
            i += 1;
        }
        seen.len() != verts.len()
    })
}

#[test]
fn supersolvable_iff_chordal() {
    for g in catalog::graphs_up_to(6) {
        let chordal = chordal_by_cycles(&g);
        assert_eq!(g.is_chordal(), chordal);
        let chain = supersolvable_decompose(&g.matroid());
        assert_eq!(chain.is_some(), chordal, "{}", catalog::graph_name(&g));
        if let Some(c) = chain {
            assert_eq!(c.product_polynomial(), g.matroid().characteristic_polynomial());
        }
    }
}

#[test]
fn braid_regions_are_factorials() {
    for (n, f) in [(2, 2usize), (3, 6), (4, 24), (5, 120), (6, 720)] {
        let chi = Arrangement::braid(n).characteristic_polynomial();
        assert_eq!(chi.eval(-1).unsigned_abs() as usize, f, "braid({n})");
    }
    for n in [3, 4] {
        let r = Arrangement::braid(n).regions_count().unwrap();
        assert!(r.agree());
    }
}

#[test]
fn line_families_count_every_pair_once() {
    let mut kinds = catalog::hh_kinds();
    kinds.push(HhKind::FourModular);
    for kind in kinds {
        let l = hh_family(kind).unwrap().arrangement;
        let pairs: usize = l.tvector().iter().map(|(&k, &t)| t * binomial(k, 2)).sum();
        assert_eq!(pairs, binomial(l.line_count(), 2), "{}", catalog::hh_name(kind));
        assert_eq!(l.matroid().rank(), 3);
    }
}

#[test]
fn sparse_paving_blocks_partition_m_sets() {
    for seed in 0..20u64 {
        for (n, m) in [(6, 2), (7, 2), (8, 3), (9, 2)] {
            let p = random_sparse_paving(n, m, seed).unwrap();
            let covered: usize = p.blocks().iter().map(|b| binomial(b.len(), m)).sum();
            assert_eq!(covered, binomial(n, m));
            let again = PavingBlocks::new(n, m, p.blocks()).unwrap();
            assert_eq!(again, p);
            assert_eq!(p.matroid().rank(), m + 1);
            assert_eq!(p.matroid().hyperplanes().len(), p.blocks().len());
        }
    }
}

#[test]
fn fano_values() {
    let engine = McbEngine::for_matroid(&mcb_core::paving::fano().matroid());
    assert_eq!(engine.min_cover_of_ground().unwrap().len(), 3);
    assert_eq!(engine.min_failure_degree(), Degree::Finite(3));
    assert!(engine.is_mcb(2).holds);
}

#[test]
fn product_of_linear_factors() {
    let p: IntPolynomial = [1i64, 2, 3].iter().map(|&e| IntPolynomial::linear_factor(e)).product();
    assert_eq!(p.coeffs(), &[-6, 11, -6, 1]);
}
