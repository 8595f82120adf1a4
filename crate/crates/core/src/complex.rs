//! Pure-ish simplicial complexes stored by their facets.
//!
//! A [`Complex`] keeps only inclusion-maximal simplices; every face of a
//! facet is implicitly a member. Two degenerate complexes matter and are kept
//! apart: [`Complex::void`] has no simplices at all, while
//! [`Complex::empty_simplex`] holds only the empty simplex and is the identity
//! for [`Complex::join`].

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::label::VertexLabel;
use crate::simplex::Simplex;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Complex {
    facets: BTreeSet<Simplex>,
}

/// `(f_{-1}, f_0, ..., f_d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    /// Number of `i`-dimensional faces, `i >= -1`.
    pub fn f(&self, i: isize) -> usize {
        self.0.get((i + 1) as usize).copied().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .skip(1)
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PseudomanifoldReport {
    pub pure: bool,
    /// Every ridge lies in at most two facets.
    pub thin: bool,
    /// Every ridge lies in exactly two facets.
    pub closed: bool,
    pub connected: bool,
    pub boundary_ridges: usize,
}

impl PseudomanifoldReport {
    pub fn is_closed_pseudomanifold(&self) -> bool {
        self.pure && self.thin && self.closed && self.connected
    }
}

impl Complex {
    /// The complex with no simplices.
    pub fn void() -> Self {
        Self::default()
    }

    /// The complex `{∅}`.
    pub fn empty_simplex() -> Self {
        Self { facets: BTreeSet::from([Simplex::empty()]) }
    }

    /// Builds a complex from arbitrary simplices, dropping non-maximal ones.
    pub fn from_simplices<I: IntoIterator<Item = Simplex>>(simplices: I) -> Self {
        let mut all: Vec<Simplex> = simplices.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        all.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));

        let mut by_vertex: HashMap<&VertexLabel, Vec<usize>> = HashMap::new();
        let mut kept: Vec<usize> = Vec::new();
        for (idx, s) in all.iter().enumerate() {
            let absorbed = match s.vertices().first() {
                None => !kept.is_empty(),
                Some(v0) => by_vertex
                    .get(v0)
                    .is_some_and(|cands| cands.iter().any(|&c| s.is_face_of(&all[c]))),
            };
            if !absorbed {
                kept.push(idx);
                for v in s.vertices() {
                    by_vertex.entry(v).or_default().push(idx);
                }
            }
        }
        let facets = kept.into_iter().map(|i| all[i].clone()).collect();
        Self { facets }
    }

    pub fn facets(&self) -> &BTreeSet<Simplex> {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn vertices(&self) -> BTreeSet<VertexLabel> {
        self.facets.iter().flat_map(|f| f.vertices().iter().cloned()).collect()
    }

    /// Maximum facet dimension; -1 for both `void` and `{∅}`.
    pub fn dim(&self) -> isize {
        self.facets.iter().map(Simplex::dim).max().unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets.iter().all(|f| f.dim() == d)
    }

    pub fn contains_face(&self, s: &Simplex) -> bool {
        self.facets.iter().any(|f| s.is_face_of(f))
    }

    /// All `k`-dimensional faces; empty when `k` is out of range.
    pub fn faces(&self, k: isize) -> BTreeSet<Simplex> {
        if k < -1 || k > self.dim() || self.is_void() {
            return BTreeSet::new();
        }
        let size = (k + 1) as usize;
        self.facets
            .iter()
            .filter(|f| f.len() >= size)
            .flat_map(|f| f.faces_of_size(size))
            .collect()
    }

    pub fn f_vector(&self) -> FVector {
        let d = self.dim();
        FVector((-1..=d).map(|k| self.faces(k).len()).collect())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().euler_characteristic()
    }

    /// Ridges (codimension-one faces of facets) with the facets containing them.
    pub fn ridge_map(&self) -> BTreeMap<Simplex, Vec<Simplex>> {
        let mut map: BTreeMap<Simplex, Vec<Simplex>> = BTreeMap::new();
        for f in &self.facets {
            for i in 0..f.len() {
                map.entry(f.omit(i)).or_default().push(f.clone());
            }
        }
        map
    }

    pub fn union(&self, other: &Complex) -> Complex {
        Complex::from_simplices(self.facets.iter().chain(other.facets.iter()).cloned())
    }

    pub fn join(&self, other: &Complex) -> Result<Complex> {
        if let Some(v) = self.vertices().intersection(&other.vertices()).next() {
            return Err(Error::VertexCollision(v.to_string()));
        }
        let mut facets = BTreeSet::new();
        for a in &self.facets {
            for b in &other.facets {
                facets.insert(a.join(b)?);
            }
        }
        // joins of maximal faces over disjoint vertex sets stay maximal
        Ok(Complex { facets })
    }

    pub fn cone(&self, apex: &VertexLabel) -> Result<Complex> {
        self.join(&Complex::from_simplices([Simplex::new([apex.clone()])?]))
    }

    /// Subcomplex generated by ridges lying in exactly one facet.
    pub fn boundary(&self) -> Result<Complex> {
        if !self.is_pure() {
            return Err(Error::NotPure);
        }
        if self.dim() < 0 {
            return Ok(Complex::void());
        }
        Ok(Complex::from_simplices(
            self.ridge_map().into_iter().filter(|(_, fs)| fs.len() == 1).map(|(r, _)| r),
        ))
    }

    pub fn link(&self, face: &Simplex) -> Result<Complex> {
        let containing: Vec<Simplex> =
            self.facets.iter().filter(|f| face.is_face_of(f)).map(|f| f.minus(face)).collect();
        if containing.is_empty() {
            return Err(Error::FaceNotInComplex(face.clone()));
        }
        Ok(Complex::from_simplices(containing))
    }

    pub fn star(&self, face: &Simplex) -> Result<Complex> {
        Complex::from_simplices([face.clone()]).join(&self.link(face)?)
    }

    pub fn pseudomanifold_check(&self) -> PseudomanifoldReport {
        let pure = self.is_pure();
        let ridges = self.ridge_map();
        let thin = ridges.values().all(|fs| fs.len() <= 2);
        let boundary_ridges = ridges.values().filter(|fs| fs.len() == 1).count();
        let closed = !self.is_void() && ridges.values().all(|fs| fs.len() == 2);

        let index: HashMap<&Simplex, usize> = self.facets.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let mut uf = UnionFind::new(self.facets.len());
        for fs in ridges.values() {
            for pair in fs.windows(2) {
                uf.union(index[&pair[0]], index[&pair[1]]);
            }
        }
        let connected = uf.components() <= 1;
        PseudomanifoldReport { pure, thin, closed, connected, boundary_ridges }
    }

    /// Boundary of the `(n+1)`-simplex on `v1, ..., v{n+2}`.
    pub fn standard_sphere(n: usize) -> Complex {
        let all: Vec<VertexLabel> = (1..=(n as u32 + 2)).map(|i| VertexLabel::indexed("v", i)).collect();
        let facets = (0..all.len())
            .map(|skip| {
                Simplex::from_sorted(all.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, v)| v.clone()).collect())
            })
            .collect();
        Complex { facets }
    }
}

/// Builds a complex from raw facet label lists.
pub fn make_complex<F, I>(facet_list: F) -> Result<Complex>
where
    F: IntoIterator<Item = I>,
    I: IntoIterator<Item = VertexLabel>,
{
    let simplices = facet_list.into_iter().map(Simplex::new).collect::<Result<Vec<_>>>()?;
    Ok(Complex::from_simplices(simplices))
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    pub(crate) fn components(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }
}
