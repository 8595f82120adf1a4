//! Exhaustive small-case checks for 2-spheres: a census of triangulated
//! 2-spheres on at most 7 vertices, and the degrees of every vertex map from
//! each of them onto the 4-vertex sphere.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::bundle::standard_base;
use crate::complex::Complex;
use crate::constructions::{build_join_cone_sphere, build_stacked_sphere};
use crate::error::{Error, Result};
use crate::homology::{sphere_check, CheckLevel};
use crate::label::VertexLabel;
use crate::orientation::{coherent_orientation, ordered_sign, permutation_sign, Sign};
use crate::simplex::Simplex;
use crate::simplicial_map::{degree_by_counting, VertexMap};

pub const MAX_CENSUS_VERTICES: usize = 7;

type Tri = [u8; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchOrder {
    /// Start from `{0,1,2}`, always close the smallest open edge, try apexes ascending.
    Ascending,
    /// Start from the top three vertices, close the largest open edge, try apexes descending.
    Descending,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusEntry {
    pub complex: Complex,
    pub vertex_count: usize,
    /// Sorted degree sequence followed by the lexicographically least
    /// relabelled triangle list over degree-respecting relabellings.
    pub canonical_key: String,
}

struct Search {
    v: u8,
    order: SearchOrder,
    edges: [[u8; 8]; 8],
    tris: Vec<Tri>,
    found: Vec<Vec<Tri>>,
}

impl Search {
    fn edge_count(&self, a: u8, b: u8) -> u8 {
        self.edges[a as usize][b as usize]
    }

    fn bump(&mut self, t: Tri, delta: i8) {
        for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            let e = &mut self.edges[a as usize][b as usize];
            *e = (*e as i8 + delta) as u8;
            self.edges[b as usize][a as usize] = *e;
        }
    }

    fn open_edge(&self) -> Option<(u8, u8)> {
        let pairs = (0..self.v).flat_map(|a| (a + 1..self.v).map(move |b| (a, b)));
        let mut open = pairs.filter(|&(a, b)| self.edge_count(a, b) == 1);
        match self.order {
            SearchOrder::Ascending => open.next(),
            SearchOrder::Descending => open.last(),
        }
    }

    /// The link of `x` must be a disjoint union of paths or a single cycle.
    fn link_ok(&self, x: u8) -> bool {
        let edges: Vec<(u8, u8)> = self
            .tris
            .iter()
            .filter(|t| t.contains(&x))
            .map(|t| {
                let o: Vec<u8> = t.iter().copied().filter(|&y| y != x).collect();
                (o[0], o[1])
            })
            .collect();
        let verts: BTreeSet<u8> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        let mut uf = crate::complex::UnionFind::new(self.v as usize);
        let mut cycles = 0;
        for &(a, b) in &edges {
            if uf.find(a as usize) == uf.find(b as usize) {
                cycles += 1;
            } else {
                uf.union(a as usize, b as usize);
            }
        }
        if cycles == 0 {
            return true;
        }
        let components: BTreeSet<usize> = verts.iter().map(|&y| uf.find(y as usize)).collect();
        cycles == 1 && components.len() == 1
    }

    fn run(&mut self) {
        let Some((a, b)) = self.open_edge() else {
            let used: BTreeSet<u8> = self.tris.iter().flatten().copied().collect();
            if used.len() == self.v as usize && self.tris.len() == 2 * self.v as usize - 4 {
                self.found.push(self.tris.clone());
            }
            return;
        };
        if self.tris.len() >= 2 * self.v as usize - 4 {
            return;
        }
        let apexes: Vec<u8> = match self.order {
            SearchOrder::Ascending => (0..self.v).collect(),
            SearchOrder::Descending => (0..self.v).rev().collect(),
        };
        for w in apexes {
            if w == a || w == b || self.edge_count(a, w) >= 2 || self.edge_count(b, w) >= 2 {
                continue;
            }
            let mut t = [a, b, w];
            t.sort_unstable();
            if self.tris.contains(&t) {
                continue;
            }
            self.tris.push(t);
            self.bump(t, 1);
            if t.iter().all(|&x| self.link_ok(x)) {
                self.run();
            }
            self.bump(t, -1);
            self.tris.pop();
        }
    }
}

fn labelled_spheres(v: u8, order: SearchOrder) -> Vec<Vec<Tri>> {
    let start = match order {
        SearchOrder::Ascending => [0, 1, 2],
        SearchOrder::Descending => [v - 3, v - 2, v - 1],
    };
    let mut s = Search { v, order, edges: [[0; 8]; 8], tris: vec![start], found: Vec::new() };
    s.bump(start, 1);
    s.run();
    s.found
}

fn canonical_key(v: usize, tris: &[Tri]) -> String {
    let mut degree = vec![0usize; v];
    for t in tris {
        for &x in t {
            degree[x as usize] += 1;
        }
    }
    // vertices grouped by descending degree; relabel only within groups
    let mut groups: BTreeMap<std::cmp::Reverse<usize>, Vec<u8>> = BTreeMap::new();
    for x in 0..v {
        groups.entry(std::cmp::Reverse(degree[x])).or_default().push(x as u8);
    }
    let groups: Vec<Vec<u8>> = groups.into_values().collect();
    let mut best: Option<Vec<Tri>> = None;
    for choice in groups.iter().map(|g| g.iter().copied().permutations(g.len())).multi_cartesian_product() {
        let mut relabel = [0u8; 8];
        for (new, &old) in choice.iter().flatten().enumerate() {
            relabel[old as usize] = new as u8;
        }
        let mut enc: Vec<Tri> = tris
            .iter()
            .map(|t| {
                let mut r = [relabel[t[0] as usize], relabel[t[1] as usize], relabel[t[2] as usize]];
                r.sort_unstable();
                r
            })
            .collect();
        enc.sort_unstable();
        if best.as_ref().is_none_or(|b| enc < *b) {
            best = Some(enc);
        }
    }
    let mut seq = degree.clone();
    seq.sort_unstable_by(|a, b| b.cmp(a));
    let tri_part = best.unwrap_or_default().iter().map(|t| format!("{}{}{}", t[0], t[1], t[2])).join(",");
    format!("{}|{}", seq.iter().join(","), tri_part)
}

fn census_label(i: u8) -> VertexLabel {
    VertexLabel::indexed("x", i as u32 + 1)
}

/// One triangulated 2-sphere per isomorphism class on exactly `v` vertices.
pub fn enumerate_2spheres_with(v: usize, order: SearchOrder) -> Result<Vec<CensusEntry>> {
    if !(4..=MAX_CENSUS_VERTICES).contains(&v) {
        return Err(Error::OutOfRange(format!("census size {v} (supported: 4..={MAX_CENSUS_VERTICES})")));
    }
    let mut classes: BTreeMap<String, Vec<Tri>> = BTreeMap::new();
    for tris in labelled_spheres(v as u8, order) {
        classes.entry(canonical_key(v, &tris)).or_insert(tris);
    }
    Ok(classes
        .into_iter()
        .map(|(key, tris)| {
            let complex = Complex::from_simplices(
                tris.iter().map(|t| Simplex::new(t.iter().map(|&x| census_label(x))).expect("distinct")),
            );
            CensusEntry { complex, vertex_count: v, canonical_key: key }
        })
        .collect())
}

pub fn enumerate_2spheres(v: usize) -> Result<Vec<CensusEntry>> {
    enumerate_2spheres_with(v, SearchOrder::Ascending)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapSearch {
    pub max_abs: i64,
    pub witness: Option<VertexMap>,
    /// Achieved degree -> number of vertex maps (surjective ones only).
    pub degrees: BTreeMap<i64, usize>,
}

/// Degree of vertex maps from a fixed oriented 2-sphere onto the 4-vertex
/// sphere, with maps given as target indices `0..4` per source vertex.
pub struct MapCounter {
    vertices: Vec<VertexLabel>,
    facets: Vec<([usize; 3], i64)>,
    target_sign: [i64; 4],
}

impl MapCounter {
    /// Orients `k` with its first facet positive and the target with `[v1 v2 v3]` positive.
    pub fn new(k: &Complex) -> Result<Self> {
        if k.dim() != 2 {
            return Err(Error::PreconditionFailed("expected a 2-dimensional complex".into()));
        }
        let vertices: Vec<VertexLabel> = k.vertices().into_iter().collect();
        let index: BTreeMap<&VertexLabel, usize> = vertices.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let base = k.facets().first().expect("nonempty").clone();
        let ok = coherent_orientation(k, &base, Sign::Positive)?;
        let facets = ok
            .signs()
            .iter()
            .map(|(f, s)| {
                let v = f.vertices();
                ([index[&v[0]], index[&v[1]], index[&v[2]]], s.value())
            })
            .collect();
        let target = Complex::standard_sphere(2);
        let tb = standard_base(2);
        let ol = coherent_orientation(&target, &Simplex::new(tb.iter().cloned())?, ordered_sign(&tb)?)?;
        let mut target_sign = [0; 4];
        for (i, s) in target_sign.iter_mut().enumerate() {
            let f = Simplex::new((0..4).filter(|&j| j != i).map(target_label)).expect("distinct");
            *s = ol.sign(&f).expect("facet").value();
        }
        Ok(Self { vertices, facets, target_sign })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Algebraic numbers of the four target facets (the facet missing `v{i+1}` at index `i`).
    pub fn alg_numbers(&self, img: &[u8]) -> [i64; 4] {
        let mut alg = [0i64; 4];
        for (f, s) in &self.facets {
            let im = [img[f[0]], img[f[1]], img[f[2]]];
            if im[0] == im[1] || im[0] == im[2] || im[1] == im[2] {
                continue;
            }
            let missing = 6 - (im[0] + im[1] + im[2]) as usize;
            alg[missing] += s * permutation_sign(&rank3(im)).expect("distinct").value();
        }
        for (a, s) in alg.iter_mut().zip(self.target_sign) {
            *a *= s;
        }
        alg
    }

    pub fn to_map(&self, img: &[u8]) -> VertexMap {
        VertexMap::new(self.vertices.iter().zip(img).map(|(x, &t)| (x.clone(), target_label(t as usize))).collect())
    }
}

fn target_label(i: usize) -> VertexLabel {
    VertexLabel::indexed("v", i as u32 + 1)
}

/// Degrees of all `4^{f_0}` vertex maps from a 2-sphere onto the 4-vertex
/// sphere. Maps missing a target vertex are skipped, as they have degree 0.
pub fn max_abs_degree(k: &Complex) -> Result<MapSearch> {
    let counter = MapCounter::new(k)?;
    let n = counter.vertex_count();
    let per_first = 4usize.pow(n as u32 - 1);
    let partial: Vec<(BTreeMap<i64, usize>, Option<(i64, Vec<u8>)>)> = (0..4u8)
        .into_par_iter()
        .map(|first| {
            let mut degrees = BTreeMap::new();
            let mut best: Option<(i64, Vec<u8>)> = None;
            let mut img = vec![first; n];
            for code in 0..per_first {
                let mut c = code;
                for slot in img.iter_mut().skip(1) {
                    *slot = (c % 4) as u8;
                    c /= 4;
                }
                if img.iter().fold(0u8, |m, &x| m | (1 << x)) != 0b1111 {
                    continue;
                }
                let alg = counter.alg_numbers(&img);
                assert!(alg.iter().all(|&a| a == alg[0]), "inconsistent algebraic numbers {alg:?}");
                *degrees.entry(alg[0]).or_insert(0) += 1;
                if best.as_ref().is_none_or(|(b, _)| alg[0].abs() > *b) {
                    best = Some((alg[0].abs(), img.clone()));
                }
            }
            (degrees, best)
        })
        .collect();

    let mut degrees = BTreeMap::new();
    let mut best: Option<(i64, Vec<u8>)> = None;
    for (d, b) in partial {
        for (k, c) in d {
            *degrees.entry(k).or_insert(0) += c;
        }
        if let Some((a, img)) = b {
            if best.as_ref().is_none_or(|(x, _)| a > *x) {
                best = Some((a, img));
            }
        }
    }
    let witness = best.as_ref().map(|(_, img)| counter.to_map(img));
    Ok(MapSearch { max_abs: best.map_or(0, |(a, _)| a), witness, degrees })
}

/// Ranks of three distinct values, as a permutation of `0..3`.
fn rank3(im: [u8; 3]) -> [usize; 3] {
    let mut r = [0; 3];
    for i in 0..3 {
        r[i] = im.iter().filter(|&&x| x < im[i]).count();
    }
    r
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub vertices: usize,
    pub classes: usize,
    pub orders_agree: bool,
    pub max_abs_degrees: Vec<i64>,
    pub symmetric: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalityReport {
    pub max_vertices: usize,
    pub rows: Vec<CensusRow>,
    /// No sphere with at most 6 vertices maps with degree of absolute value 2.
    pub no_degree_two_below_seven: bool,
    /// No sphere with at most 7 vertices maps with degree of absolute value 3.
    pub no_degree_three_below_eight: bool,
    pub seven_vertex_degree_two: Option<i64>,
    pub eight_vertex_degree_three: Option<i64>,
    pub counterexamples: Vec<String>,
    pub passed: bool,
}

impl MinimalityReport {
    pub fn census_sizes(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.classes).collect()
    }
}

impl fmt::Display for MinimalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "2-sphere census and map search (up to {} vertices): {}", self.max_vertices, if self.passed { "PASS" } else { "FAIL" })?;
        for r in &self.rows {
            writeln!(
                f,
                "  v = {}: {} classes, search orders agree: {}, max |degree| per class: {:?}, symmetric: {}",
                r.vertices, r.classes, r.orders_agree, r.max_abs_degrees, r.symmetric
            )?;
        }
        writeln!(f, "  no |degree| = 2 with <= 6 vertices: {}", self.no_degree_two_below_seven)?;
        writeln!(f, "  no |degree| = 3 with <= 7 vertices: {}", self.no_degree_three_below_eight)?;
        if let Some(d) = self.seven_vertex_degree_two {
            writeln!(f, "  7-vertex join-cone sphere: degree {d}")?;
        }
        if let Some(d) = self.eight_vertex_degree_three {
            writeln!(f, "  8-vertex stacked sphere: degree {d}")?;
        }
        for c in &self.counterexamples {
            writeln!(f, "  implementation bug suspected, counterexample: {c}")?;
        }
        Ok(())
    }
}

const EXPECTED_CENSUS: [usize; 4] = [1, 1, 2, 5];

/// Runs the census for `4..=max_vertices` and the exhaustive degree search on every class.
pub fn verify_lemmas_4_1_and_4_2(max_vertices: usize) -> Result<MinimalityReport> {
    if !(4..=MAX_CENSUS_VERTICES).contains(&max_vertices) {
        return Err(Error::OutOfRange(format!("census size {max_vertices}")));
    }
    let mut rows = Vec::new();
    let mut counterexamples = Vec::new();
    let mut passed = true;
    let mut no_two = true;
    let mut no_three = true;
    for v in 4..=max_vertices {
        let asc = enumerate_2spheres_with(v, SearchOrder::Ascending)?;
        let desc = enumerate_2spheres_with(v, SearchOrder::Descending)?;
        let keys = |e: &[CensusEntry]| e.iter().map(|x| x.canonical_key.clone()).collect::<Vec<_>>();
        let orders_agree = keys(&asc) == keys(&desc);
        let searches: Vec<MapSearch> = asc.par_iter().map(|e| max_abs_degree(&e.complex)).collect::<Result<_>>()?;
        let mut symmetric = true;
        for (entry, s) in asc.iter().zip(&searches) {
            symmetric &= s.degrees.iter().all(|(d, c)| s.degrees.get(&-d) == Some(c));
            let shape_ok = sphere_check(&entry.complex, 2, CheckLevel::CertifyLowDim).passed;
            let two = v <= 6 && s.degrees.keys().any(|d| d.abs() == 2);
            let three = s.degrees.keys().any(|d| d.abs() == 3);
            no_two &= !two;
            no_three &= !three;
            if two || three || !shape_ok {
                counterexamples.push(format!("v = {v}, class {}", entry.canonical_key));
            }
        }
        passed &= orders_agree && symmetric && asc.len() == EXPECTED_CENSUS[v - 4];
        rows.push(CensusRow {
            vertices: v,
            classes: asc.len(),
            orders_agree,
            max_abs_degrees: searches.iter().map(|s| s.max_abs).collect(),
            symmetric,
        });
    }
    let seven = if max_vertices >= 7 { Some(degree_by_counting(&build_join_cone_sphere(2, 2)?)?.degree) } else { None };
    let eight = if max_vertices >= 7 { Some(degree_by_counting(&build_stacked_sphere(2)?)?.degree) } else { None };
    passed &= counterexamples.is_empty() && seven.is_none_or(|d| d == 2) && eight.is_none_or(|d| d == 3);
    Ok(MinimalityReport {
        max_vertices,
        rows,
        no_degree_two_below_seven: no_two,
        no_degree_three_below_eight: no_three,
        seven_vertex_degree_two: seven,
        eight_vertex_degree_three: eight,
        counterexamples,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::ConstructionBundle;
    use rand::{Rng, SeedableRng};

    #[test]
    fn census_sizes_and_identities() {
        for (v, want) in (4..=7).zip(EXPECTED_CENSUS) {
            let asc = enumerate_2spheres_with(v, SearchOrder::Ascending).unwrap();
            let desc = enumerate_2spheres_with(v, SearchOrder::Descending).unwrap();
            assert_eq!(asc.len(), want, "v = {v}");
            assert_eq!(
                asc.iter().map(|e| &e.canonical_key).collect::<Vec<_>>(),
                desc.iter().map(|e| &e.canonical_key).collect::<Vec<_>>()
            );
            for e in &asc {
                let f = e.complex.f_vector();
                assert_eq!(f.f(2), 2 * f.f(0) - 4);
                assert_eq!(2 * f.f(1), 3 * f.f(2));
                assert!(sphere_check(&e.complex, 2, CheckLevel::CertifyLowDim).passed);
            }
        }
        assert!(enumerate_2spheres(8).is_err());
        assert!(enumerate_2spheres(3).is_err());
    }

    #[test]
    fn tetrahedron_maps() {
        let s = max_abs_degree(&Complex::standard_sphere(2)).unwrap();
        assert_eq!(s.max_abs, 1);
        assert_eq!(s.degrees.values().sum::<usize>(), 24);
    }

    #[test]
    fn fast_count_matches_general_degree() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for entry in enumerate_2spheres(7).unwrap().iter().chain(&enumerate_2spheres(6).unwrap()) {
            let k = &entry.complex;
            let counter = MapCounter::new(k).unwrap();
            let base = k.facets().first().unwrap().vertices().to_vec();
            for _ in 0..40 {
                let img: Vec<u8> = (0..counter.vertex_count()).map(|_| rng.gen_range(0..4)).collect();
                let b = ConstructionBundle {
                    label: "random".into(),
                    source: k.clone(),
                    target: Complex::standard_sphere(2),
                    map: counter.to_map(&img),
                    source_base: base.clone(),
                    target_base: standard_base(2),
                    expected_degree: 0,
                    expected_vertices: counter.vertex_count(),
                };
                let general = degree_by_counting(&b).unwrap();
                let fast = counter.alg_numbers(&img);
                assert!(fast.iter().all(|&a| a == general.degree), "{fast:?} vs {}", general.degree);
            }
        }
    }

    #[test]
    fn seven_vertex_degree_two_source() {
        let b = build_join_cone_sphere(2, 2).unwrap();
        assert!(max_abs_degree(&b.source).unwrap().max_abs >= 2);
    }

    #[test]
    fn restricted_run() {
        let r = verify_lemmas_4_1_and_4_2(6).unwrap();
        assert!(r.passed, "{r}");
        assert_eq!(r.census_sizes(), vec![1, 1, 2]);
    }
}
