//! Coherent orientations of pseudomanifolds and permutation signs.
//!
//! Facet signs are always relative to the facet's canonical (sorted) vertex
//! order. Two facets sharing a ridge are coherent when
//! `sign(a) * sign(b) == -(-1)^(p + q)`, where `p` and `q` are the sorted
//! positions of the vertices opposite the ridge in `a` and `b`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Deserialize, Serialize};

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::label::VertexLabel;
use crate::simplex::Simplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Sign {
    Negative,
    Positive,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Self {
        if odd { Sign::Negative } else { Sign::Positive }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs { Sign::Positive } else { Sign::Negative }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.value() as i8
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;
    fn try_from(v: i8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(Sign::Positive),
            -1 => Ok(Sign::Negative),
            other => Err(format!("orientation sign must be 1 or -1, got {other}")),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if *self == Sign::Positive { "+" } else { "-" })
    }
}

/// Sign of the permutation taking `reference` to `arrangement`.
pub fn relative_sign(arrangement: &[VertexLabel], reference: &[VertexLabel]) -> Result<Sign> {
    if arrangement.len() != reference.len() {
        return Err(Error::NotAPermutation);
    }
    let pos: HashMap<&VertexLabel, usize> = reference.iter().enumerate().map(|(i, v)| (v, i)).collect();
    if pos.len() != reference.len() {
        return Err(Error::NotAPermutation);
    }
    let mut perm = Vec::with_capacity(arrangement.len());
    for v in arrangement {
        perm.push(*pos.get(v).ok_or(Error::NotAPermutation)?);
    }
    permutation_sign(&perm).ok_or(Error::NotAPermutation)
}

/// Sign of a permutation of `0..len`, or `None` if `perm` is not one.
pub fn permutation_sign(perm: &[usize]) -> Option<Sign> {
    let mut seen = vec![false; perm.len()];
    let mut odd = false;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = *perm.get(i)?;
            len += 1;
        }
        if i != start {
            return None;
        }
        odd ^= len % 2 == 0;
    }
    Some(Sign::from_parity(odd))
}

/// Sign of an ordered facet relative to its canonical order.
pub fn ordered_sign(ordered: &[VertexLabel]) -> Result<Sign> {
    let sorted = Simplex::new(ordered.iter().cloned())?;
    relative_sign(ordered, sorted.vertices())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Traversal {
    BreadthFirst,
    DepthFirst,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedComplex {
    complex: Complex,
    signs: BTreeMap<Simplex, Sign>,
    base_facet: Simplex,
    base_sign: Sign,
}

impl OrientedComplex {
    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn signs(&self) -> &BTreeMap<Simplex, Sign> {
        &self.signs
    }

    pub fn sign(&self, facet: &Simplex) -> Option<Sign> {
        self.signs.get(facet).copied()
    }

    pub fn base_facet(&self) -> &Simplex {
        &self.base_facet
    }

    pub fn base_sign(&self) -> Sign {
        self.base_sign
    }

    pub fn negated(&self) -> OrientedComplex {
        OrientedComplex {
            complex: self.complex.clone(),
            signs: self.signs.iter().map(|(f, s)| (f.clone(), -*s)).collect(),
            base_facet: self.base_facet.clone(),
            base_sign: -self.base_sign,
        }
    }

    /// Checks the ridge coherence condition everywhere.
    pub fn is_coherent(&self) -> bool {
        signs_are_coherent(&self.complex, &self.signs)
    }
}

/// True when `signs` covers every facet and satisfies the ridge condition.
pub fn signs_are_coherent(k: &Complex, signs: &BTreeMap<Simplex, Sign>) -> bool {
    if k.facets().iter().any(|f| !signs.contains_key(f)) {
        return false;
    }
    k.ridge_map().iter().all(|(ridge, fs)| match fs.as_slice() {
        [a, b] => signs[a] * signs[b] == required_product(ridge, a, b),
        _ => true,
    })
}

fn opposite_position(facet: &Simplex, ridge: &Simplex) -> usize {
    let extra = facet.minus(ridge);
    facet.position(&extra.vertices()[0]).expect("opposite vertex")
}

fn required_product(ridge: &Simplex, a: &Simplex, b: &Simplex) -> Sign {
    let p = opposite_position(a, ridge);
    let q = opposite_position(b, ridge);
    -Sign::from_parity((p + q) % 2 == 1)
}

pub fn coherent_orientation(k: &Complex, base: &Simplex, base_sign: Sign) -> Result<OrientedComplex> {
    coherent_orientation_with(k, base, base_sign, Traversal::BreadthFirst)
}

pub fn coherent_orientation_with(
    k: &Complex,
    base: &Simplex,
    base_sign: Sign,
    traversal: Traversal,
) -> Result<OrientedComplex> {
    let report = k.pseudomanifold_check();
    if !report.pure || !report.thin || !report.connected {
        return Err(Error::PreconditionFailed(
            "orientation needs a pure, connected complex with every ridge in at most two facets".into(),
        ));
    }
    if !k.facets().contains(base) {
        return Err(Error::PreconditionFailed(format!("{base} is not a facet")));
    }

    let ridges = k.ridge_map();
    let mut signs: BTreeMap<Simplex, Sign> = BTreeMap::new();
    signs.insert(base.clone(), base_sign);
    let mut frontier = VecDeque::from([base.clone()]);

    while let Some(facet) = match traversal {
        Traversal::BreadthFirst => frontier.pop_front(),
        Traversal::DepthFirst => frontier.pop_back(),
    } {
        let s = signs[&facet];
        for i in 0..facet.len() {
            let ridge = facet.omit(i);
            for other in &ridges[&ridge] {
                if *other == facet {
                    continue;
                }
                let want = s * required_product(&ridge, &facet, other);
                match signs.get(other) {
                    Some(&have) if have != want => {
                        return Err(Error::NonOrientable { witness: other.clone() });
                    }
                    Some(_) => {}
                    None => {
                        signs.insert(other.clone(), want);
                        frontier.push_back(other.clone());
                    }
                }
            }
        }
    }

    Ok(OrientedComplex { complex: k.clone(), signs, base_facet: base.clone(), base_sign })
}

/// Orients `k` so that `ordered_base`, read in the given vertex order, is
/// positively oriented.
pub fn orient_from_ordered(k: &Complex, ordered_base: &[VertexLabel]) -> Result<OrientedComplex> {
    let base = Simplex::new(ordered_base.iter().cloned())?;
    coherent_orientation(k, &base, ordered_sign(ordered_base)?)
}

/// An integer chain: a finitely supported function on equal-dimension simplices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Chain {
    pub dim: isize,
    pub coefficients: BTreeMap<Simplex, i64>,
}

impl Chain {
    pub fn is_zero(&self) -> bool {
        self.coefficients.values().all(|&c| c == 0)
    }

    pub fn coefficient(&self, s: &Simplex) -> i64 {
        self.coefficients.get(s).copied().unwrap_or(0)
    }

    /// Simplicial boundary, using `(-1)^i` for the face omitting sorted vertex `i`.
    pub fn boundary(&self) -> Chain {
        let mut out: BTreeMap<Simplex, i64> = BTreeMap::new();
        for (s, &c) in &self.coefficients {
            for i in 0..s.len() {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                *out.entry(s.omit(i)).or_default() += sign * c;
            }
        }
        out.retain(|_, c| *c != 0);
        Chain { dim: self.dim - 1, coefficients: out }
    }
}

pub fn fundamental_cycle(ok: &OrientedComplex) -> Result<Chain> {
    if !ok.complex.pseudomanifold_check().closed {
        return Err(Error::NotClosed);
    }
    Ok(Chain {
        dim: ok.complex.dim(),
        coefficients: ok.signs.iter().map(|(f, s)| (f.clone(), s.value())).collect(),
    })
}
