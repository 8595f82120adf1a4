//! A source sphere, a vertex map onto a standard sphere, the ordered base
//! facets fixing both orientations, and the degree the map should have.

use std::collections::BTreeMap;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::label::VertexLabel;
use crate::simplicial_map::{compose, VertexMap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionBundle {
    pub label: String,
    pub source: Complex,
    pub target: Complex,
    pub map: VertexMap,
    /// Source facet in the vertex order declared positive.
    pub source_base: Vec<VertexLabel>,
    /// Target facet in the vertex order declared positive.
    pub target_base: Vec<VertexLabel>,
    pub expected_degree: i64,
    pub expected_vertices: usize,
}

pub(crate) fn v(i: usize) -> VertexLabel {
    VertexLabel::indexed("v", i as u32)
}

/// `[v1 ... v{n+1}]`.
pub fn standard_base(n: usize) -> Vec<VertexLabel> {
    (1..=n + 1).map(v).collect()
}

fn self_bundle(n: usize, label: String, map: VertexMap, expected_degree: i64) -> ConstructionBundle {
    let s = Complex::standard_sphere(n);
    ConstructionBundle {
        label,
        source: s.clone(),
        target: s,
        map,
        source_base: standard_base(n),
        target_base: standard_base(n),
        expected_degree,
        expected_vertices: n + 2,
    }
}

pub fn identity_bundle(n: usize) -> ConstructionBundle {
    let s = Complex::standard_sphere(n);
    self_bundle(n, format!("identity n={n}"), VertexMap::identity(&s.vertices()), 1)
}

/// The transposition of `v{n+1}` and `v{n+2}` on the standard `n`-sphere.
pub fn swap_map(n: usize) -> ConstructionBundle {
    permutation_bundle(n, &swap_permutation(n)).with_label(format!("swap n={n}"))
}

fn swap_permutation(n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n + 2).collect();
    p.swap(n, n + 1);
    p
}

/// Automorphism `v{i+1} -> v{perm[i]+1}` of the standard `n`-sphere; its degree is the permutation sign.
pub fn permutation_bundle(n: usize, perm: &[usize]) -> ConstructionBundle {
    assert_eq!(perm.len(), n + 2);
    let map = VertexMap::new((0..n + 2).map(|i| (v(i + 1), v(perm[i] + 1))).collect::<BTreeMap<_, _>>());
    let sign = crate::orientation::permutation_sign(perm).expect("permutation").value();
    self_bundle(n, format!("permutation n={n} {perm:?}"), map, sign)
}

impl ConstructionBundle {
    pub fn with_label(mut self, label: String) -> Self {
        self.label = label;
        self
    }

    pub fn dim(&self) -> usize {
        self.target.dim().max(0) as usize
    }

    /// Follows this bundle's map by the self-map of the target carried by `then`.
    pub fn then(&self, then: &ConstructionBundle) -> Result<ConstructionBundle> {
        if then.source != self.target || then.target != self.target {
            return Err(Error::DomainMismatch(format!("{} does not act on the target of {}", then.label, self.label)));
        }
        Ok(ConstructionBundle {
            label: format!("{} ; {}", self.label, then.label),
            map: compose(&self.map, &then.map)?,
            expected_degree: self.expected_degree * then.expected_degree,
            ..self.clone()
        })
    }
}
