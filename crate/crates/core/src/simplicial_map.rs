//! Vertex maps between complexes and their degree, computed two ways: by
//! signed preimage counting over oriented complexes, and by pushing an
//! integer generator of top homology forward.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bundle::ConstructionBundle;
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::homology::top_cycle_generator;
use crate::label::VertexLabel;
use crate::orientation::{coherent_orientation, ordered_sign, relative_sign, OrientedComplex, Sign};
use crate::simplex::Simplex;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VertexMap {
    assignment: BTreeMap<VertexLabel, VertexLabel>,
}

impl VertexMap {
    pub fn new(assignment: BTreeMap<VertexLabel, VertexLabel>) -> Self {
        Self { assignment }
    }

    pub fn identity<'a>(vertices: impl IntoIterator<Item = &'a VertexLabel>) -> Self {
        Self { assignment: vertices.into_iter().map(|v| (v.clone(), v.clone())).collect() }
    }

    pub fn get(&self, v: &VertexLabel) -> Option<&VertexLabel> {
        self.assignment.get(v)
    }

    pub fn insert(&mut self, from: VertexLabel, to: VertexLabel) {
        self.assignment.insert(from, to);
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&VertexLabel, &VertexLabel)> {
        self.assignment.iter()
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    /// Images of the vertices of `s` in `s`'s sorted order (repeats kept).
    pub fn image_sequence(&self, s: &Simplex) -> Result<Vec<VertexLabel>> {
        s.vertices()
            .iter()
            .map(|v| self.get(v).cloned().ok_or_else(|| Error::MapNotTotal(v.to_string())))
            .collect()
    }

    /// Image of `s` as a set.
    pub fn image(&self, s: &Simplex) -> Result<Simplex> {
        let mut seq = self.image_sequence(s)?;
        seq.sort();
        seq.dedup();
        Ok(Simplex::new(seq).expect("deduplicated"))
    }
}

/// `g ∘ f`: apply `f`, then `g`.
pub fn compose(f: &VertexMap, g: &VertexMap) -> Result<VertexMap> {
    let mut out = BTreeMap::new();
    for (a, b) in f.pairs() {
        let c = g.get(b).ok_or_else(|| Error::DomainMismatch(b.to_string()))?;
        out.insert(a.clone(), c.clone());
    }
    Ok(VertexMap::new(out))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SimplicialCheck {
    pub ok: bool,
    /// Source facets whose image has lower dimension.
    pub degenerate_facets: Vec<Simplex>,
    /// Source facets whose image is not a face of the target.
    pub non_simplicial: Vec<Simplex>,
}

pub fn check_simplicial(f: &VertexMap, k: &Complex, l: &Complex) -> Result<SimplicialCheck> {
    let mut report = SimplicialCheck::default();
    for facet in k.facets() {
        let image = f.image(facet)?;
        if !l.contains_face(&image) {
            report.non_simplicial.push(facet.clone());
        }
        if image.len() < facet.len() {
            report.degenerate_facets.push(facet.clone());
        }
    }
    report.ok = report.non_simplicial.is_empty();
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeMethod {
    Counting,
    FundamentalCycle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgNumber {
    pub alg: i64,
    pub alpha_plus: Vec<Simplex>,
    pub alpha_minus: Vec<Simplex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub degree: i64,
    pub method: DegreeMethod,
    pub per_facet: BTreeMap<Simplex, AlgNumber>,
    pub degenerate: Vec<Simplex>,
}

impl fmt::Display for DegreeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "degree = {} ({:?})", self.degree, self.method)?;
        for (sigma, a) in &self.per_facet {
            writeln!(f, "  [{sigma}]  alg {:>3}  (+{} / -{})", a.alg, a.alpha_plus.len(), a.alpha_minus.len())?;
            for t in &a.alpha_plus {
                writeln!(f, "    + [{t}]")?;
            }
            for t in &a.alpha_minus {
                writeln!(f, "    - [{t}]")?;
            }
        }
        if !self.degenerate.is_empty() {
            writeln!(f, "  {} degenerate source facets", self.degenerate.len())?;
        }
        Ok(())
    }
}

/// Sign induced on `tau` by the target ordering, or `None` if `f` collapses `tau`.
fn induced(f: &VertexMap, ok: &OrientedComplex, tau: &Simplex) -> Result<Option<(Simplex, Sign)>> {
    let seq = f.image_sequence(tau)?;
    let image = f.image(tau)?;
    if image.len() < tau.len() {
        return Ok(None);
    }
    let rel = relative_sign(&seq, image.vertices())?;
    let s = ok.sign(tau).expect("oriented facet");
    Ok(Some((image, s * rel)))
}

/// `alg(σ)`: preimage facets of `σ` split by induced sign, counted relative to `σ`'s own sign.
pub fn alg_number(f: &VertexMap, ok: &OrientedComplex, ol: &OrientedComplex, sigma: &Simplex) -> Result<AlgNumber> {
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for tau in ok.complex().facets() {
        let image = f.image(tau)?;
        if !ol.complex().contains_face(&image) {
            return Err(Error::NotSimplicial(tau.clone()));
        }
        if let Some((image, s)) = induced(f, ok, tau)? {
            if image == *sigma {
                match s {
                    Sign::Positive => plus.push(tau.clone()),
                    Sign::Negative => minus.push(tau.clone()),
                }
            }
        }
    }
    let target_sign = ol.sign(sigma).ok_or_else(|| Error::FaceNotInComplex(sigma.clone()))?;
    let alg = (plus.len() as i64 - minus.len() as i64) * target_sign.value();
    Ok(AlgNumber { alg, alpha_plus: plus, alpha_minus: minus })
}

/// Degree from given orientations; every target facet must report the same `alg`.
pub fn degree_from_orientations(f: &VertexMap, ok: &OrientedComplex, ol: &OrientedComplex) -> Result<DegreeReport> {
    let mut per_facet: BTreeMap<Simplex, AlgNumber> = ol
        .complex()
        .facets()
        .iter()
        .map(|s| (s.clone(), AlgNumber { alg: 0, alpha_plus: Vec::new(), alpha_minus: Vec::new() }))
        .collect();
    let mut degenerate = Vec::new();
    for tau in ok.complex().facets() {
        let image = f.image(tau)?;
        if !ol.complex().contains_face(&image) {
            return Err(Error::NotSimplicial(tau.clone()));
        }
        match induced(f, ok, tau)? {
            None => degenerate.push(tau.clone()),
            Some((image, s)) => {
                let entry = per_facet.get_mut(&image).ok_or_else(|| Error::NotSimplicial(tau.clone()))?;
                match s {
                    Sign::Positive => entry.alpha_plus.push(tau.clone()),
                    Sign::Negative => entry.alpha_minus.push(tau.clone()),
                }
            }
        }
    }
    for (sigma, a) in per_facet.iter_mut() {
        a.alg = (a.alpha_plus.len() as i64 - a.alpha_minus.len() as i64) * ol.sign(sigma).expect("facet").value();
    }
    let values: Vec<i64> = per_facet.values().map(|a| a.alg).collect();
    if values.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::InconsistentAlg(values));
    }
    Ok(DegreeReport { degree: values.first().copied().unwrap_or(0), method: DegreeMethod::Counting, per_facet, degenerate })
}

fn orient_bundle(bundle: &ConstructionBundle) -> Result<(OrientedComplex, OrientedComplex)> {
    let sb = Simplex::new(bundle.source_base.iter().cloned())?;
    let tb = Simplex::new(bundle.target_base.iter().cloned())?;
    let ok = coherent_orientation(&bundle.source, &sb, ordered_sign(&bundle.source_base)?)?;
    let ol = coherent_orientation(&bundle.target, &tb, ordered_sign(&bundle.target_base)?)?;
    Ok((ok, ol))
}

/// Orients source and target so their base facets, in written order, are
/// positive, then counts preimages of every target facet.
pub fn degree_by_counting(bundle: &ConstructionBundle) -> Result<DegreeReport> {
    let (ok, ol) = orient_bundle(bundle)?;
    degree_from_orientations(&bundle.map, &ok, &ol)
}

/// Top-homology generator normalized so `base`, read in written order, has coefficient +1.
fn normalized_generator(k: &Complex, base: &[VertexLabel]) -> Result<BTreeMap<Simplex, BigInt>> {
    let mut z = top_cycle_generator(k)?;
    let key = Simplex::new(base.iter().cloned())?;
    let at = z.get(&key).cloned().unwrap_or_default();
    if at.is_zero() {
        return Err(Error::PreconditionFailed(format!("generator vanishes on base facet {key}")));
    }
    if at.is_negative() != (ordered_sign(base)? == Sign::Negative) {
        for v in z.values_mut() {
            *v = -&*v;
        }
    }
    Ok(z)
}

/// Degree via `f_*[K] = d [L]`, using integer kernel generators rather than
/// orientation propagation.
pub fn degree_by_cycle(bundle: &ConstructionBundle) -> Result<i64> {
    let z = normalized_generator(&bundle.source, &bundle.source_base)?;
    let w = normalized_generator(&bundle.target, &bundle.target_base)?;
    let pushed: BTreeMap<Simplex, BigInt> = z
        .par_iter()
        .map(|(tau, c)| -> Result<Option<(Simplex, BigInt)>> {
            let seq = bundle.map.image_sequence(tau)?;
            let image = bundle.map.image(tau)?;
            if image.len() < tau.len() {
                return Ok(None);
            }
            if !bundle.target.contains_face(&image) {
                return Err(Error::NotSimplicial(tau.clone()));
            }
            let s = relative_sign(&seq, image.vertices())?;
            Ok(Some((image, c * BigInt::from(s.value()))))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .fold(BTreeMap::new(), |mut acc, (s, c)| {
            *acc.entry(s).or_insert_with(BigInt::zero) += c;
            acc
        });
    let tb = Simplex::new(bundle.target_base.iter().cloned())?;
    let (q, r) = pushed.get(&tb).cloned().unwrap_or_default().div_rem(&w[&tb]);
    // the image must be an exact multiple of the target generator
    let consistent = r.is_zero()
        && w.iter().all(|(s, c)| pushed.get(s).cloned().unwrap_or_default() == &q * c)
        && pushed.keys().all(|s| w.contains_key(s));
    if !consistent {
        let coeffs = w.keys().map(|s| pushed.get(s).and_then(|c| c.to_i64()).unwrap_or(0)).collect();
        return Err(Error::InconsistentAlg(coeffs));
    }
    Ok(q.to_i64().expect("degree fits in i64"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::{identity_bundle, swap_map};

    fn lab(s: &str) -> VertexLabel {
        s.parse().unwrap()
    }

    #[test]
    fn identity_and_swap() {
        for n in 1..=5 {
            let id = identity_bundle(n);
            assert_eq!(degree_by_counting(&id).unwrap().degree, 1);
            assert_eq!(degree_by_cycle(&id).unwrap(), 1);
            let sw = swap_map(n);
            assert_eq!(degree_by_counting(&sw).unwrap().degree, -1);
            assert_eq!(degree_by_cycle(&sw).unwrap(), -1);
            let twice = compose(&sw.map, &sw.map).unwrap();
            let b = ConstructionBundle { map: twice, ..sw.clone() };
            assert_eq!(degree_by_counting(&b).unwrap().degree, 1);
        }
    }

    #[test]
    fn alg_of_identity_is_one() {
        let s = Complex::standard_sphere(3);
        let id = VertexMap::identity(&s.vertices());
        let ok = coherent_orientation(&s, s.facets().first().unwrap(), Sign::Positive).unwrap();
        for sigma in s.facets() {
            assert_eq!(alg_number(&id, &ok, &ok, sigma).unwrap().alg, 1);
        }
    }

    #[test]
    fn collapse_is_degenerate_and_degree_zero() {
        let s = Complex::standard_sphere(2);
        let mut f = VertexMap::identity(&s.vertices());
        f.insert(lab("v4"), lab("v3"));
        let check = check_simplicial(&f, &s, &s).unwrap();
        assert!(check.ok);
        assert_eq!(check.degenerate_facets.len(), 2);
        let b = ConstructionBundle { map: f, ..identity_bundle(2) };
        assert_eq!(degree_by_counting(&b).unwrap().degree, 0);
        assert_eq!(degree_by_cycle(&b).unwrap(), 0);
    }

    #[test]
    fn map_must_be_total() {
        let s = Complex::standard_sphere(2);
        let mut f = VertexMap::identity(&s.vertices());
        f.assignment.remove(&lab("v1"));
        assert_eq!(check_simplicial(&f, &s, &s), Err(Error::MapNotTotal("v1".into())));
    }

    #[test]
    fn compose_checks_domain() {
        let mut f = VertexMap::default();
        f.insert(lab("u1"), lab("v1"));
        assert!(matches!(compose(&f, &f), Err(Error::DomainMismatch(_))));
        let id = VertexMap::identity(&[lab("v1")]);
        assert_eq!(compose(&f, &id).unwrap(), f);
    }

    #[test]
    fn orientation_flip_covariance() {
        let b = swap_map(3);
        let (ok, ol) = orient_bundle(&b).unwrap();
        let d = degree_from_orientations(&b.map, &ok, &ol).unwrap().degree;
        assert_eq!(degree_from_orientations(&b.map, &ok.negated(), &ol).unwrap().degree, -d);
        assert_eq!(degree_from_orientations(&b.map, &ok, &ol.negated()).unwrap().degree, -d);
    }
}
