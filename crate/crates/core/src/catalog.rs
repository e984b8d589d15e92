//! Named instance families used by the claims harness and the test suites.

use std::collections::BTreeSet;

use num_rational::BigRational;

use crate::arrangement::graphic::Graph;
use crate::arrangement::lines::{hh_family, HhKind, LineArrangement};
use crate::arrangement::supersolvable::{extend_by_pencil, PencilExtension};
use crate::arrangement::Arrangement;
use crate::bitset::{ElemSet, SetFamily};
use crate::descriptor::Descriptor;
use crate::matroid::Matroid;
use crate::nest::BuildingSet;
use crate::paving::{fano, random_sparse_paving, PavingBlocks, PavingFamilyParams};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub descriptor: Descriptor,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// One representative of each isomorphism class of graphs on exactly `v`
/// vertices without isolated vertices, as the lexicographically least edge
/// mask over relabelings.
pub fn graphs_on(v: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..v).flat_map(|i| (i + 1..v).map(move |j| (i, j))).collect();
    let mut index = vec![vec![0; v]; v];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        index[i][j] = k;
        index[j][i] = k;
    }
    let perms = permutations(v);
    let mut seen = BTreeSet::new();
    for mask in 1u32..(1 << pairs.len()) {
        let mut deg = vec![0; v];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                deg[i] += 1;
                deg[j] += 1;
            }
        }
        if deg.contains(&0) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| mask >> k & 1 == 1)
                    .fold(0u32, |acc, (_, &(i, j))| acc | 1 << index[p[i]][p[j]])
            })
            .min()
            .expect("at least one permutation");
        seen.insert(canon);
    }
    seen.into_iter()
        .map(|mask| {
            let edges: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|&(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect();
            Graph::new(v, &edges).expect("enumerated graphs are simple")
        })
        .collect()
}

/// Graphs on 2..=`max_vertices` vertices, no isolated vertices, up to isomorphism.
pub fn graphs_up_to(max_vertices: usize) -> Vec<Graph> {
    (2..=max_vertices).flat_map(graphs_on).collect()
}

pub fn graph_name(g: &Graph) -> String {
    let edges: Vec<String> = g.edges().iter().map(|&(u, v)| format!("{}{}", u + 1, v + 1)).collect();
    format!("G{}[{}]", g.vertices(), edges.join(","))
}

fn set(v: &[usize]) -> ElemSet {
    ElemSet::from_elems(v.iter().map(|e| e - 1))
}

pub fn small_paving() -> Vec<(String, PavingBlocks)> {
    let mut out = vec![
        ("fano".to_string(), fano()),
        (
            "paving4".to_string(),
            PavingBlocks::new(4, 2, &[set(&[1, 2, 3]), set(&[1, 4]), set(&[2, 4]), set(&[3, 4])]).expect("valid"),
        ),
        ("paving6_two_triples".to_string(), PavingBlocks::complete(6, 2, &[set(&[1, 2, 3]), set(&[4, 5, 6])]).expect("valid")),
        ("paving7_k4_block".to_string(), PavingBlocks::complete(7, 2, &[set(&[1, 2, 3, 4])]).expect("valid")),
    ];
    for (n, m, seed) in [(5, 2, 0), (6, 2, 1), (7, 2, 1), (6, 3, 2), (7, 3, 3)] {
        out.push((format!("sparse_paving({n},{m},seed={seed})"), random_sparse_paving(n, m, seed).expect("n > m >= 2")));
    }
    out
}

/// Large-block paving instances with `n / (C k² (m - 1)) >= 4k`.
pub struct RegimeInstance {
    pub name: String,
    pub paving: PavingBlocks,
    pub designated: Vec<ElemSet>,
    pub params: PavingFamilyParams,
}

fn regime_instance(m: usize, c: usize, sizes: &[usize]) -> RegimeInstance {
    let paving = PavingBlocks::partitioned(m, sizes).expect("disjoint blocks of size >= m");
    let mut start = 0;
    let designated = sizes
        .iter()
        .map(|&s| {
            let b = ElemSet::from_elems(start..start + s);
            start += s;
            b
        })
        .collect();
    let sizes_label: Vec<String> = sizes.iter().map(|s| s.to_string()).collect();
    RegimeInstance {
        name: format!("large_blocks(m={m},sizes={})", sizes_label.join("+")),
        params: PavingFamilyParams { n: paving.n(), m, k: sizes.len(), c, sizes: sizes.to_vec() },
        paving,
        designated,
    }
}

pub fn paving_in_regime() -> Vec<RegimeInstance> {
    [&[32, 32][..], &[30, 34], &[36, 36], &[40, 40], &[48, 48], &[45, 55], &[64, 64]]
        .iter()
        .map(|sizes| regime_instance(2, 2, sizes))
        .collect()
}

/// Large-block instances below the regime threshold.
pub fn paving_out_of_regime() -> Vec<RegimeInstance> {
    vec![regime_instance(3, 2, &[12, 12, 12]), regime_instance(2, 2, &[6, 6]), regime_instance(2, 2, &[4, 5, 5])]
}

pub fn hh_kinds() -> Vec<HhKind> {
    let mut kinds = vec![
        HhKind::TwoModular { a: 2, b: 3 },
        HhKind::TwoModular { a: 2, b: 4 },
        HhKind::TwoModular { a: 3, b: 4 },
        HhKind::TwoModular { a: 3, b: 5 },
        HhKind::TwoModular { a: 4, b: 5 },
        HhKind::FourModular,
    ];
    kinds.extend((4..=8).map(|m| HhKind::ThreeModular { m }));
    kinds
}

pub fn hh_name(kind: HhKind) -> String {
    match kind {
        HhKind::TwoModular { a, b } => format!("two_modular({a},{b})"),
        HhKind::ThreeModular { m } => format!("three_modular({m})"),
        HhKind::FourModular => "four_modular".to_string(),
    }
}

pub fn line_arrangements() -> Vec<(String, LineArrangement)> {
    let mut out: Vec<(String, LineArrangement)> =
        hh_kinds().into_iter().map(|k| (hh_name(k), hh_family(k).expect("catalog parameters are valid").arrangement)).collect();
    out.push((
        "generic4".to_string(),
        LineArrangement::from_i64(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]).expect("distinct lines"),
    ));
    out.push((
        "near_pencil4".to_string(),
        LineArrangement::from_i64(&[[1, 0, 0], [1, 1, 0], [1, 2, 0], [0, 0, 1]]).expect("distinct lines"),
    ));
    out
}

pub fn building_sets() -> Vec<(String, BuildingSet)> {
    let fam = |n: usize, lists: &[&[usize]]| {
        let lists: Vec<Vec<usize>> = lists.iter().map(|l| l.to_vec()).collect();
        SetFamily::from_one_based(n, &lists).expect("catalog lists are in range")
    };
    let all_subsets = |n: usize| SetFamily::new(n, (1..1u128 << n).map(ElemSet).collect());
    let path = |n: usize| SetFamily::new(n, (0..n - 1).map(|i| ElemSet::from_elems([i, i + 1])).collect());
    let cycle = |n: usize| SetFamily::new(n, (0..n).map(|i| ElemSet::from_elems([i, (i + 1) % n])).collect());
    let star = |n: usize| SetFamily::new(n, (1..n).map(|i| ElemSet::from_elems([0, i])).collect());
    let cases: Vec<(&str, usize, SetFamily)> = vec![
        ("bs_discrete_2", 2, fam(2, &[&[1, 2]])),
        ("bs_all_3", 3, all_subsets(3)),
        ("bs_top_3", 3, fam(3, &[&[1, 2, 3]])),
        ("bs_pair_top_3", 3, fam(3, &[&[1, 2], &[1, 2, 3]])),
        ("bs_pair_3", 3, fam(3, &[&[1, 2]])),
        ("bs_path_3", 3, path(3)),
        ("bs_all_4", 4, all_subsets(4)),
        ("bs_path_4", 4, path(4)),
        ("bs_cycle_4", 4, cycle(4)),
        ("bs_star_4", 4, star(4)),
        ("bs_two_pairs_4", 4, fam(4, &[&[1, 2], &[3, 4], &[1, 2, 3, 4]])),
        ("bs_chain_4", 4, fam(4, &[&[1, 2], &[1, 2, 3], &[1, 2, 3, 4]])),
        ("bs_all_5", 5, all_subsets(5)),
        ("bs_path_5", 5, path(5)),
        ("bs_cycle_5", 5, cycle(5)),
        ("bs_star_5", 5, star(5)),
        ("bs_top_5", 5, fam(5, &[&[1, 2, 3, 4, 5]])),
        ("bs_blocks_5", 5, fam(5, &[&[1, 2], &[3, 4, 5], &[1, 2, 3, 4, 5]])),
    ];
    cases
        .into_iter()
        .map(|(name, n, f)| (name.to_string(), BuildingSet::closure(n, &f).expect("nonempty members")))
        .collect()
}

fn rat(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
}

/// Rank-2 pencils of `k` lines extended once or twice by pencils through a
/// codimension-2 subspace of the first hyperplane.
pub fn pencil_instances() -> Vec<(String, PencilExtension)> {
    let base = |k: usize| {
        let normals: Vec<Vec<i64>> =
            std::iter::once(vec![1, 0]).chain((0..k as i64 - 1).map(|j| vec![j, 1])).collect();
        Arrangement::from_i64(2, &normals).expect("distinct lines")
    };
    let mut out = Vec::new();
    for k in 2..=4 {
        for c in 1..=3 {
            let ext = extend_by_pencil(&base(k), 0, &rat(&[0, 0, 1]), c).expect("valid pencil");
            out.push((format!("pencil(k={k};{c})"), ext));
        }
    }
    for (k, c1, host, c2) in [(2, 2, 1, 3), (3, 1, 0, 2), (3, 2, 2, 2), (4, 3, 4, 1)] {
        let first = extend_by_pencil(&base(k), 0, &rat(&[0, 0, 1]), c1).expect("valid pencil");
        let ext = extend_by_pencil(&first.arrangement, host, &rat(&[0, 0, 0, 1]), c2).expect("valid pencil");
        out.push((format!("pencil(k={k};{c1},{c2};host={})", host + 1), ext));
    }
    let coord = extend_by_pencil(&Arrangement::coordinate(3), 0, &rat(&[0, 0, 0, 1]), 2).expect("valid pencil");
    out.push(("pencil(coordinate3;2)".to_string(), coord));
    out
}

/// Arrangements of rank at most 3 for the region cross-check.
pub fn low_rank_arrangements() -> Vec<(String, Arrangement)> {
    let a = |dim: usize, rows: &[&[i64]]| {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Arrangement::from_i64(dim, &rows).expect("distinct hyperplanes")
    };
    let mut out = vec![
        ("two_lines".to_string(), Arrangement::coordinate(2)),
        ("three_concurrent_lines".to_string(), a(2, &[&[1, 0], &[0, 1], &[1, 1]])),
        ("five_concurrent_lines".to_string(), a(2, &[&[1, 0], &[0, 1], &[1, 1], &[1, 2], &[1, -1]])),
        ("coordinate_planes".to_string(), Arrangement::coordinate(3)),
        ("braid3".to_string(), Arrangement::braid(3)),
        ("braid4".to_string(), Arrangement::braid(4)),
        ("generic_planes4".to_string(), a(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]])),
        ("generic_planes5".to_string(), a(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1], &[1, 2, 3]])),
        ("four_modular_planes".to_string(), a(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, -1, 0], &[1, 0, -1], &[0, 1, -1]])),
        ("pencil_and_plane".to_string(), a(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 1]])),
    ];
    for g in [Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).expect("simple"), Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).expect("simple")] {
        out.push((format!("graphic {}", graph_name(&g)), g.arrangement()));
    }
    for (name, ext) in pencil_instances() {
        if ext.arrangement.rank() <= 3 {
            out.push((name, ext.arrangement));
        }
    }
    out
}

/// Every named instance of the catalog.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    let mut push = |name: String, descriptor: Descriptor| out.push(CatalogEntry { name, descriptor });
    for n in 1..=7 {
        for r in 1..=n {
            push(format!("U({r},{n})"), Descriptor::Uniform { r, n });
        }
    }
    for g in graphs_up_to(5) {
        push(graph_name(&g), Descriptor::of_graph(&g));
    }
    for (name, p) in small_paving() {
        push(name, Descriptor::of_paving(&p));
    }
    for (name, l) in line_arrangements() {
        push(name, Descriptor::of_lines(&l));
    }
    for v in 3..=6 {
        push(format!("braid{v}"), Descriptor::of_graph_arrangement(&Graph::complete(v)));
    }
    for (name, a) in low_rank_arrangements() {
        if !name.starts_with("braid") {
            push(name, Descriptor::of_arrangement(&a));
        }
    }
    for (name, b) in building_sets() {
        push(name, Descriptor::of_building_set(&b));
    }
    out
}

/// Catalog entries that define a matroid.
pub fn catalog_matroids() -> Vec<(String, Matroid)> {
    catalog()
        .into_iter()
        .filter_map(|e| {
            let inst = e.descriptor.resolve().expect("catalog entries validate");
            inst.matroid().ok().map(|m| (e.name, m))
        })
        .collect()
}
