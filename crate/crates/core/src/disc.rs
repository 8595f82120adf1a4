//! The polygon-reduction disc `Δ_d`: a triangulated 3d-gon whose triangles
//! are properly 3-colored by class, with 2d-1 positive and d-1 negative ones.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::label::VertexLabel;
use crate::orientation::{coherent_orientation, Sign};
use crate::simplex::Simplex;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolygonCycle {
    vertices: Vec<VertexLabel>,
}

impl PolygonCycle {
    pub fn new(vertices: Vec<VertexLabel>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::BadLength(vertices.len()));
        }
        Simplex::new(vertices.iter().cloned())?;
        Ok(Self { vertices })
    }

    /// The outer boundary `u1_1, u2_1, u3_1, u1_2, ..., u3_d`.
    pub fn outer(d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::BadLength(0));
        }
        Self::new((1..=d).flat_map(|i| (1..=3).map(move |j| VertexLabel::pair("u", j, i))).collect())
    }

    pub fn vertices(&self) -> &[VertexLabel] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&VertexLabel, &VertexLabel)> {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    /// Triangles along the polygon (the terminal triangle when `L = 3`).
    pub triangles: Vec<[VertexLabel; 3]>,
    /// `(c0, c2, c4)` and `(c0, c4, c[L-1])` when `L / 3` is odd and above one.
    pub extra: Vec<[VertexLabel; 3]>,
    pub inner: Option<PolygonCycle>,
}

pub fn reduction_step(cycle: &PolygonCycle) -> Result<ReductionStep> {
    let c = &cycle.vertices;
    let l = c.len();
    if l == 0 || l % 3 != 0 {
        return Err(Error::BadLength(l));
    }
    let tri = |a: usize, b: usize, e: usize| [c[a].clone(), c[b].clone(), c[e % l].clone()];
    let m = l / 3;
    if m == 1 {
        return Ok(ReductionStep { triangles: vec![tri(0, 1, 2)], extra: Vec::new(), inner: None });
    }
    if m % 2 == 0 {
        let triangles = (0..l / 2).map(|t| tri(2 * t, 2 * t + 1, 2 * t + 2)).collect();
        let inner = PolygonCycle { vertices: (0..l).step_by(2).map(|i| c[i].clone()).collect() };
        Ok(ReductionStep { triangles, extra: Vec::new(), inner: Some(inner) })
    } else {
        let triangles = (0..=(l - 3) / 2).map(|t| tri(2 * t, 2 * t + 1, 2 * t + 2)).collect();
        let extra = vec![tri(0, 2, 4), tri(0, 4, l - 1)];
        let inner = PolygonCycle { vertices: (4..l).step_by(2).map(|i| c[i].clone()).collect() };
        Ok(ReductionStep { triangles, extra, inner: Some(inner) })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionRecord {
    pub level: usize,
    pub cycle: PolygonCycle,
    pub step: ReductionStep,
    /// Sign of this level's polygon triangles; `+` at level 0, alternating inward.
    pub sign: Sign,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaDisc {
    pub d: u32,
    pub complex: Complex,
    pub signs: BTreeMap<Simplex, Sign>,
    pub trace: Vec<ReductionRecord>,
}

impl DeltaDisc {
    pub fn positives(&self) -> usize {
        self.signs.values().filter(|&&s| s == Sign::Positive).count()
    }

    pub fn negatives(&self) -> usize {
        self.signs.values().filter(|&&s| s == Sign::Negative).count()
    }

    /// Triangles produced at reduction levels `>= level`.
    pub fn triangles_from_level(&self, level: usize) -> Complex {
        Complex::from_simplices(
            self.trace
                .iter()
                .filter(|r| r.level >= level)
                .flat_map(|r| r.step.triangles.iter().chain(&r.step.extra))
                .map(|t| Simplex::new(t.iter().cloned()).expect("distinct polygon vertices")),
        )
    }

    pub fn outer_cycle(&self) -> &PolygonCycle {
        &self.trace[0].cycle
    }
}

pub fn build_delta(d: u32) -> Result<DeltaDisc> {
    let mut cycle = PolygonCycle::outer(d)?;
    let mut trace = Vec::new();
    let mut signs = BTreeMap::new();
    let mut sign = Sign::Positive;
    for level in 0.. {
        let step = reduction_step(&cycle)?;
        let mut put = |t: &[VertexLabel; 3], s: Sign| {
            signs.insert(Simplex::new(t.iter().cloned()).expect("distinct polygon vertices"), s);
        };
        for t in &step.triangles {
            put(t, sign);
        }
        if let [first, second] = step.extra.as_slice() {
            put(first, -sign);
            put(second, sign);
        }
        let next = step.inner.clone();
        trace.push(ReductionRecord { level, cycle, step, sign });
        match next {
            Some(inner) => cycle = inner,
            None => break,
        }
        sign = -sign;
    }
    let complex = Complex::from_simplices(signs.keys().cloned());
    Ok(DeltaDisc { d, complex, signs, trace })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma31Counts {
    pub positives: usize,
    pub negatives: usize,
    pub boundary_in_positive: bool,
    pub sign_agrees_with_orientation: bool,
}

/// Sign counts plus two cross-checks: every polygon edge lies in a positive
/// triangle, and the level-alternating signs coincide with the coherent
/// orientation in which the first outer triangle, read in class order, is positive.
pub fn lemma31_counts(disc: &DeltaDisc) -> Lemma31Counts {
    let boundary_in_positive = disc.outer_cycle().edges().all(|(a, b)| {
        let edge = Simplex::new([a.clone(), b.clone()]).expect("distinct");
        disc.signs.iter().any(|(t, &s)| s == Sign::Positive && edge.is_face_of(t))
    });
    let first = &disc.trace[0].step.triangles[0];
    let base = Simplex::new(first.iter().cloned()).expect("distinct");
    let sign_agrees_with_orientation = coherent_orientation(&disc.complex, &base, Sign::Positive)
        .is_ok_and(|o| o.signs() == &disc.signs);
    Lemma31Counts {
        positives: disc.positives(),
        negatives: disc.negatives(),
        boundary_in_positive,
        sign_agrees_with_orientation,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn labels(s: &str) -> Vec<VertexLabel> {
        crate::simplex::parse_ordered(s).unwrap()
    }

    fn tri(s: &str) -> [VertexLabel; 3] {
        labels(s).try_into().unwrap()
    }

    fn sx(s: &str) -> Simplex {
        s.parse().unwrap()
    }

    #[test]
    fn terminal_and_bad_lengths() {
        let c = PolygonCycle::new(labels("a b c")).unwrap();
        let step = reduction_step(&c).unwrap();
        assert_eq!(step.triangles, vec![tri("a b c")]);
        assert!(step.inner.is_none());
        let four = PolygonCycle::new(labels("a b c d")).unwrap();
        assert_eq!(reduction_step(&four), Err(Error::BadLength(4)));
        assert!(PolygonCycle::new(labels("a b")).is_err());
    }

    #[test]
    fn even_step_d2() {
        let step = reduction_step(&PolygonCycle::outer(2).unwrap()).unwrap();
        assert_eq!(step.triangles.len(), 3);
        assert_eq!(step.triangles[2], tri("u2_2 u3_2 u1_1"));
        assert_eq!(step.inner.unwrap().vertices(), labels("u1_1 u3_1 u2_2").as_slice());
    }

    #[test]
    fn odd_step_d3() {
        let step = reduction_step(&PolygonCycle::outer(3).unwrap()).unwrap();
        assert_eq!(step.extra, vec![tri("u1_1 u3_1 u2_2"), tri("u1_1 u2_2 u3_3")]);
        assert_eq!(step.inner.unwrap().vertices(), labels("u2_2 u1_3 u3_3").as_slice());
    }

    fn negatives(d: &DeltaDisc) -> Vec<Simplex> {
        d.signs.iter().filter(|(_, &s)| s == Sign::Negative).map(|(t, _)| t.clone()).collect()
    }

    #[test]
    fn small_discs_match_reference_lists() {
        let d2 = build_delta(2).unwrap();
        assert_eq!(d2.complex, fixtures::delta2_reference());
        assert_eq!(negatives(&d2), vec![sx("u1_1 u2_2 u3_1")]);

        let d3 = build_delta(3).unwrap();
        assert_eq!(d3.complex, fixtures::delta3_reference());
        assert_eq!(negatives(&d3), vec![sx("u1_1 u2_2 u3_1"), sx("u1_3 u2_2 u3_3")]);

        let d4 = build_delta(4).unwrap();
        assert_eq!(d4.complex, fixtures::delta4_reference());
        assert_eq!(d4.signs[&sx("u1_1 u2_2 u3_3")], Sign::Positive);
        assert_eq!(
            negatives(&d4),
            vec![sx("u1_1 u2_2 u3_1"), sx("u1_1 u2_4 u3_3"), sx("u1_3 u2_2 u3_3")]
        );
    }

    #[test]
    fn lemma_counts_examples() {
        let want = |p, n| Lemma31Counts { positives: p, negatives: n, boundary_in_positive: true, sign_agrees_with_orientation: true };
        assert_eq!(lemma31_counts(&build_delta(1).unwrap()), want(1, 0));
        assert_eq!(lemma31_counts(&build_delta(2).unwrap()), want(3, 1));
        assert_eq!(lemma31_counts(&build_delta(12).unwrap()), want(23, 11));
    }

    #[test]
    fn invariants_up_to_64() {
        for d in 1..=64u32 {
            let disc = build_delta(d).unwrap();
            let k = &disc.complex;
            let n = d as usize;
            let f = k.f_vector();
            assert_eq!((f.f(0), f.f(2)), (3 * n, 3 * n - 2), "d = {d}");
            assert_eq!(k.euler_characteristic(), 1);
            let c = lemma31_counts(&disc);
            assert_eq!((c.positives, c.negatives), (2 * n - 1, n - 1));
            assert!(c.boundary_in_positive && c.sign_agrees_with_orientation, "d = {d}");
            for t in k.facets() {
                let classes: Vec<u32> = t.vertices().iter().map(|v| v.class_index().unwrap()).collect();
                assert_eq!(classes, vec![1, 2, 3]);
            }
            let boundary = k.boundary().unwrap();
            let polygon = Complex::from_simplices(
                disc.outer_cycle().edges().map(|(a, b)| Simplex::new([a.clone(), b.clone()]).unwrap()),
            );
            assert_eq!(boundary, polygon);
            assert!(disc.trace.windows(2).all(|w| w[0].sign == -w[1].sign));
        }
    }
}
