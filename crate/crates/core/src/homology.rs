//! Exact integer chain-complex machinery.
//!
//! Boundary matrices are kept sparse with arbitrary-precision entries. Smith
//! normal form first peels off unit pivots (cheapest by Markowitz cost),
//! which covers nearly all of a simplicial boundary matrix, then finishes the
//! leftover block with dense smallest-absolute-value pivoting.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::simplex::Simplex;

type Row = BTreeMap<usize, BigInt>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Row>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Row::new(); rows] }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.data[i].get(&j).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        assert!(i < self.rows && j < self.cols);
        if v.is_zero() {
            self.data[i].remove(&j);
        } else {
            self.data[i].insert(j, v);
        }
    }

    pub fn row_entries(&self, i: usize) -> impl Iterator<Item = (usize, &BigInt)> {
        self.data[i].iter().map(|(&j, v)| (j, v))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Row::is_empty)
    }

    pub fn mul(&self, rhs: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntegerMatrix::zeros(self.rows, rhs.cols);
        for (i, row) in self.data.iter().enumerate() {
            let mut acc = Row::new();
            for (&k, a) in row {
                for (&j, b) in &rhs.data[k] {
                    *acc.entry(j).or_default() += a * b;
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.data[i] = acc;
        }
        out
    }

    /// Applies `new_row[i] = old_row[row_perm[i]]` and likewise for columns.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> IntegerMatrix {
        let mut inv_col = vec![0; self.cols];
        for (new, &old) in col_perm.iter().enumerate() {
            inv_col[old] = new;
        }
        let mut out = IntegerMatrix::zeros(self.rows, self.cols);
        for (new_i, &old_i) in row_perm.iter().enumerate() {
            out.data[new_i] = self.data[old_i].iter().map(|(&j, v)| (inv_col[j], v.clone())).collect();
        }
        out
    }

    /// Applies the matrix to an integer column vector.
    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.cols);
        self.data.iter().map(|row| row.iter().map(|(&j, v)| v * &x[j]).sum()).collect()
    }
}

/// Sparse working copy with a column index, supporting kernel-preserving row operations.
struct Elimination {
    rows: Vec<Row>,
    col_rows: Vec<BTreeSet<usize>>,
}

impl Elimination {
    fn new(m: &IntegerMatrix) -> Self {
        let mut col_rows = vec![BTreeSet::new(); m.cols];
        for (i, row) in m.data.iter().enumerate() {
            for &j in row.keys() {
                col_rows[j].insert(i);
            }
        }
        Self { rows: m.data.clone(), col_rows }
    }

    /// `row[target] = a * row[target] - b * row[source]`.
    fn combine(&mut self, target: usize, a: &BigInt, b: &BigInt, source: usize) {
        let src = self.rows[source].clone();
        let row = &mut self.rows[target];
        if !a.is_one() {
            for v in row.values_mut() {
                *v *= a;
            }
        }
        for (j, sv) in src {
            let entry = row.entry(j).or_default();
            *entry -= b * sv;
            if entry.is_zero() {
                row.remove(&j);
                self.col_rows[j].remove(&target);
            } else {
                self.col_rows[j].insert(target);
            }
        }
    }

    fn normalize_content(&mut self, i: usize) {
        let g = self.rows[i].values().fold(BigInt::zero(), |g, v| g.gcd(v));
        if !g.is_zero() && !g.is_one() {
            for v in self.rows[i].values_mut() {
                *v /= &g;
            }
        }
    }

    fn drop_row(&mut self, i: usize) {
        for &j in self.rows[i].keys() {
            self.col_rows[j].remove(&i);
        }
        self.rows[i].clear();
    }

    /// Cheapest unit entry among `candidates` by Markowitz cost.
    fn unit_pivot(&self, candidates: impl Iterator<Item = usize>) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in candidates {
            let rl = self.rows[i].len();
            for (&j, v) in &self.rows[i] {
                if v.abs().is_one() {
                    let cost = (rl - 1) * (self.col_rows[j].len() - 1);
                    if best.is_none_or(|(c, _, _)| cost < c) {
                        best = Some((cost, i, j));
                        if cost == 0 {
                            return Some((i, j));
                        }
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    /// Smallest-magnitude entry among `candidates`, ties broken by sparsity.
    fn small_pivot(&self, candidates: impl Iterator<Item = usize>) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize, usize)> = None;
        for i in candidates {
            let rl = self.rows[i].len();
            for (&j, v) in &self.rows[i] {
                let key = (v.abs(), rl * self.col_rows[j].len());
                if best.as_ref().is_none_or(|(a, c, _, _)| (&key.0, key.1) < (a, *c)) {
                    best = Some((key.0, key.1, i, j));
                }
            }
        }
        best.map(|(_, _, i, j)| (i, j))
    }

    /// Clears column `j` from every row other than `p`.
    fn clear_column(&mut self, p: usize, j: usize) {
        let pivot = self.rows[p][&j].clone();
        let others: Vec<usize> = self.col_rows[j].iter().copied().filter(|&i| i != p).collect();
        for i in others {
            let b = self.rows[i][&j].clone();
            if pivot.abs().is_one() {
                // pivot^{-1} == pivot for units
                let f = &b * &pivot;
                self.combine(i, &BigInt::one(), &f, p);
            } else {
                let g = pivot.gcd(&b);
                let a = &pivot / &g;
                let bb = &b / &g;
                self.combine(i, &a, &bb, p);
                self.normalize_content(i);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    /// Nonzero invariant factors `d_1 | d_2 | ... | d_r`.
    pub diagonal: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| **d > BigInt::one()).cloned().collect()
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SnfResult {
    let mut work = Elimination::new(m);
    let mut units = 0usize;
    while let Some((p, j)) = work.unit_pivot(0..work.rows.len()) {
        work.clear_column(p, j);
        // the remaining entries of row p are cleared by column operations
        // that touch nothing else, so the row can simply be dropped
        work.drop_row(p);
        units += 1;
    }

    let live_rows: Vec<usize> = (0..work.rows.len()).filter(|&i| !work.rows[i].is_empty()).collect();
    let live_cols: Vec<usize> = (0..m.cols).filter(|&j| !work.col_rows[j].is_empty()).collect();
    let col_pos: HashMap<usize, usize> = live_cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    let mut dense: Vec<Vec<BigInt>> = live_rows
        .iter()
        .map(|&i| {
            let mut r = vec![BigInt::zero(); live_cols.len()];
            for (j, v) in &work.rows[i] {
                r[col_pos[j]] = v.clone();
            }
            r
        })
        .collect();

    let mut diagonal = vec![BigInt::one(); units];
    diagonal.extend(dense_snf(&mut dense));
    SnfResult { diagonal }
}

fn dense_snf(a: &mut [Vec<BigInt>]) -> Vec<BigInt> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = smallest_entry(a, t) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = &a[i][t] / &a[t][t];
                    let (head, tail) = a.split_at_mut(i);
                    for j in t..n {
                        let d = &q * &head[t][j];
                        tail[0][j] -= d;
                    }
                    if !a[i][t].is_zero() {
                        a.swap(t, i);
                        clean = false;
                    }
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = &a[t][j] / &a[t][t];
                    for row in a.iter_mut().skip(t) {
                        let d = &q * &row[t];
                        row[j] -= d;
                    }
                    if !a[t][j].is_zero() {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            let pivot = a[t][t].clone();
            let bad = (t + 1..m).find(|&i| a[i][t + 1..].iter().any(|v| !v.is_multiple_of(&pivot)));
            match bad {
                Some(i) => {
                    let (head, tail) = a.split_at_mut(i);
                    for j in t..n {
                        head[t][j] += &tail[0][j];
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

fn smallest_entry(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if !v.is_zero() && best.as_ref().is_none_or(|(b, _, _)| v.abs() < *b) {
                best = Some((v.abs(), i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Row-reduces a copy of `m` (Gauss-Jordan over the integers, content
/// normalized) and returns the reduced rows with their pivot columns.
fn gauss_jordan(m: &IntegerMatrix) -> (Vec<Row>, BTreeMap<usize, usize>) {
    let mut work = Elimination::new(m);
    let mut pivot_rows: BTreeMap<usize, usize> = BTreeMap::new(); // column -> row
    let mut used = vec![false; m.rows];
    loop {
        let free = (0..m.rows).filter(|&i| !used[i] && !work.rows[i].is_empty());
        let Some((p, j)) = work.unit_pivot(free.clone()).or_else(|| work.small_pivot(free)) else {
            break;
        };
        work.clear_column(p, j);
        used[p] = true;
        pivot_rows.insert(j, p);
    }
    (work.rows, pivot_rows)
}

pub fn rank(m: &IntegerMatrix) -> usize {
    gauss_jordan(m).1.len()
}

/// The primitive integer vector spanning the kernel of `m`, which must have
/// nullity exactly one. The sign is normalized so the first nonzero entry is positive.
pub fn kernel_generator(m: &IntegerMatrix) -> Result<Vec<BigInt>> {
    let (rows, pivots) = gauss_jordan(m);
    let free: Vec<usize> = (0..m.cols).filter(|j| !pivots.contains_key(j)).collect();
    if free.len() != 1 {
        return Err(Error::KernelRankNotOne(free.len()));
    }
    let f = free[0];
    // each pivot row reads a_p x_p + b x_f = 0
    let scale = pivots.iter().fold(BigInt::one(), |l, (&j, &i)| l.lcm(&rows[i][&j]));
    let mut x = vec![BigInt::zero(); m.cols];
    x[f] = scale.clone();
    for (&j, &i) in &pivots {
        let b = rows[i].get(&f).cloned().unwrap_or_default();
        x[j] = -(&b * &scale) / &rows[i][&j];
    }
    let g = x.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    for v in &mut x {
        *v /= &g;
    }
    if x.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative()) {
        for v in &mut x {
            *v = -&*v;
        }
    }
    debug_assert!(m.apply(&x).iter().all(Zero::is_zero));
    Ok(x)
}

/// Boundary operator with its row and column bases.
#[derive(Clone, Debug)]
pub struct BoundaryMatrix {
    pub matrix: IntegerMatrix,
    /// `(k-1)`-faces in canonical order.
    pub row_faces: Vec<Simplex>,
    /// `k`-faces in canonical order.
    pub col_faces: Vec<Simplex>,
}

/// `∂_k : C_k -> C_{k-1}`. The face omitting sorted vertex `i` gets `(-1)^i`.
/// The chain complex is unaugmented, so `∂_0` has no rows.
pub fn boundary_matrix(k: &Complex, dim: isize) -> BoundaryMatrix {
    let col_faces: Vec<Simplex> = k.faces(dim).into_iter().collect();
    let row_faces: Vec<Simplex> = if dim <= 0 { Vec::new() } else { k.faces(dim - 1).into_iter().collect() };
    let row_index: HashMap<&Simplex, usize> = row_faces.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut matrix = IntegerMatrix::zeros(row_faces.len(), col_faces.len());
    if dim > 0 {
        for (j, s) in col_faces.iter().enumerate() {
            for i in 0..s.len() {
                let v = if i % 2 == 0 { 1 } else { -1 };
                matrix.set(row_index[&s.omit(i)], j, BigInt::from(v));
            }
        }
    }
    BoundaryMatrix { matrix, row_faces, col_faces }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub betti: usize,
    #[serde(serialize_with = "bigints_as_strings")]
    pub torsion: Vec<BigInt>,
}

fn bigints_as_strings<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl HomologyGroup {
    pub fn is_free_of_rank(&self, r: usize) -> bool {
        self.betti == r && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.betti > 0 {
            parts.push(if self.betti == 1 { "Z".to_string() } else { format!("Z^{}", self.betti) });
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Unreduced integral homology `H_0 .. H_dim`.
pub fn homology_groups(k: &Complex) -> Vec<HomologyGroup> {
    let d = k.dim();
    if d < 0 {
        return Vec::new();
    }
    let snfs: Vec<SnfResult> = (0..=d + 1).map(|i| smith_normal_form(&boundary_matrix(k, i).matrix)).collect();
    let f = k.f_vector();
    (0..=d)
        .map(|i| {
            let idx = i as usize;
            HomologyGroup {
                betti: f.f(i) - snfs[idx].rank() - snfs[idx + 1].rank(),
                torsion: snfs[idx + 1].torsion(),
            }
        })
        .collect()
}

/// Primitive generator of the top cycle group, as a chain on facets.
pub fn top_cycle_generator(k: &Complex) -> Result<BTreeMap<Simplex, BigInt>> {
    let b = boundary_matrix(k, k.dim());
    let x = kernel_generator(&b.matrix)?;
    Ok(b.col_faces.into_iter().zip(x).filter(|(_, v)| !v.is_zero()).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckLevel {
    Necessary,
    CertifyLowDim,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphereReport {
    pub n: usize,
    pub level: CheckLevel,
    pub passed: bool,
    pub checks: Vec<CheckLine>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub caveat: Option<String>,
}

impl SphereReport {
    fn push(&mut self, name: &str, passed: bool, detail: String) {
        self.passed &= passed;
        self.checks.push(CheckLine { name: name.to_string(), passed, detail });
    }
}

impl fmt::Display for SphereReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "sphere check (n = {}, {:?}): {}", self.n, self.level, if self.passed { "PASS" } else { "FAIL" })?;
        for c in &self.checks {
            writeln!(f, "  [{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail)?;
        }
        if let Some(c) = &self.caveat {
            writeln!(f, "  note: {c}")?;
        }
        Ok(())
    }
}

/// Checks that `k` looks like (or, in low dimension, is) a triangulated `n`-sphere.
///
/// `Necessary` verifies closed pseudomanifold structure, Euler characteristic
/// and the homology of `S^n`. `CertifyLowDim` additionally requires every
/// vertex link to certify as an `(n-1)`-sphere, bottoming out at single
/// cycles for `n = 1`. For `n = 3` this accepts closed 3-manifolds with the
/// homology of `S^3`; for `n >= 4` certification is unavailable and reported
/// as a failed check.
pub fn sphere_check(k: &Complex, n: usize, level: CheckLevel) -> SphereReport {
    let mut report = SphereReport { n, level, passed: true, checks: Vec::new(), caveat: None };
    report.push("dimension", k.dim() == n as isize, format!("dim {}", k.dim()));
    if !report.passed {
        return report;
    }

    if n == 0 {
        let count = k.facet_count();
        report.push("two points", count == 2, format!("{count} vertices"));
        return report;
    }

    let pm = k.pseudomanifold_check();
    report.push("pure", pm.pure, String::new());
    report.push(
        "closed",
        pm.thin && pm.closed,
        format!("{} boundary ridges{}", pm.boundary_ridges, if pm.thin { "" } else { ", branching ridges" }),
    );
    report.push("connected", pm.connected, String::new());
    let chi = k.euler_characteristic();
    let want_chi = if n % 2 == 0 { 2 } else { 0 };
    report.push("euler characteristic", chi == want_chi, format!("chi = {chi}, expected {want_chi}"));
    if !report.passed {
        return report;
    }

    let h = homology_groups(k);
    let profile_ok = h.iter().enumerate().all(|(i, g)| g.is_free_of_rank(usize::from(i == 0 || i == n)));
    report.push(
        "homology",
        profile_ok,
        h.iter().enumerate().map(|(i, g)| format!("H{i}={g}")).collect::<Vec<_>>().join(", "),
    );

    if level == CheckLevel::CertifyLowDim {
        if n > 3 {
            report.push("link certification", false, "not available for n >= 4".into());
        } else if n == 1 {
            let deg_ok = k.vertices().iter().all(|v| k.link(&Simplex::from_sorted(vec![v.clone()])).is_ok_and(|l| l.facet_count() == 2));
            report.push("single cycle", deg_ok && pm.connected, String::new());
        } else {
            let mut bad = Vec::new();
            for v in k.vertices() {
                let lk = k.link(&Simplex::from_sorted(vec![v.clone()])).expect("vertex of complex");
                if !sphere_check(&lk, n - 1, CheckLevel::CertifyLowDim).passed {
                    bad.push(v.to_string());
                }
            }
            report.push(
                "vertex links",
                bad.is_empty(),
                if bad.is_empty() { format!("all links are {}-spheres", n - 1) } else { format!("bad links at {}", bad.join(", ")) },
            );
            if n == 3 {
                report.caveat = Some(
                    "a closed 3-manifold with the homology of S^3 is accepted as a 3-sphere; \
                     full 3-sphere recognition is not attempted"
                        .into(),
                );
            }
        }
    }
    report
}

/// `sum_k (-1)^k betti_k`.
pub fn euler_from_betti(h: &[HomologyGroup]) -> i64 {
    h.iter().enumerate().map(|(i, g)| if i % 2 == 0 { g.betti as i64 } else { -(g.betti as i64) }).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    fn to_i64(v: &BigInt) -> i64 {
        num_traits::ToPrimitive::to_i64(v).unwrap()
    }

    fn diag(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_examples() {
        assert_eq!(smith_normal_form(&IntegerMatrix::identity(3)).diagonal, diag(&[1, 1, 1]));
        assert_eq!(smith_normal_form(&IntegerMatrix::from_dense(&[vec![1, 2], vec![3, 4]])).diagonal, diag(&[1, 2]));
        let z = smith_normal_form(&IntegerMatrix::zeros(3, 4));
        assert!(z.diagonal.is_empty());
        assert_eq!(z.rank(), 0);
        assert_eq!(smith_normal_form(&IntegerMatrix::from_dense(&[vec![2, 4], vec![6, 8]])).diagonal, diag(&[2, 4]));
        assert_eq!(
            smith_normal_form(&IntegerMatrix::from_dense(&[vec![2, 0], vec![0, 3]])).diagonal,
            diag(&[1, 6])
        );
        assert_eq!(
            smith_normal_form(&IntegerMatrix::from_dense(&[vec![4, 6, 0], vec![6, 9, 15], vec![0, 0, 10]])).diagonal,
            diag(&[1, 10])
        );
    }

    #[test]
    fn triangle_boundary_matrix() {
        let k = Complex::from_simplices(["a b", "b c", "a c"].iter().map(|s| s.parse().unwrap()));
        let b = boundary_matrix(&k, 1);
        assert_eq!((b.matrix.rows(), b.matrix.cols()), (3, 3));
        for j in 0..3 {
            let col: Vec<i64> = (0..3).map(|i| to_i64(&b.matrix.get(i, j))).collect();
            assert_eq!(col.iter().filter(|&&v| v == 1).count(), 1);
            assert_eq!(col.iter().filter(|&&v| v == -1).count(), 1);
        }
        assert_eq!(boundary_matrix(&k, 0).matrix.rows(), 0);
    }

    #[test]
    fn boundary_squares_to_zero() {
        for k in [Complex::standard_sphere(3), Complex::standard_sphere(5), fixtures::rp2(), fixtures::delta4_reference()] {
            for d in 1..k.dim() {
                let prod = boundary_matrix(&k, d).matrix.mul(&boundary_matrix(&k, d + 1).matrix);
                assert!(prod.is_zero(), "d = {d}");
            }
        }
    }

    /// Rank over the rationals by plain fraction-free elimination on a dense copy.
    fn rational_rank(m: &IntegerMatrix) -> usize {
        let mut a: Vec<Vec<BigInt>> = (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j)).collect()).collect();
        let mut r = 0;
        for c in 0..m.cols() {
            let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            for i in 0..a.len() {
                if i != r && !a[i][c].is_zero() {
                    let (x, y) = (a[r][c].clone(), a[i][c].clone());
                    for j in 0..m.cols() {
                        a[i][j] = &a[i][j] * &x - &a[r][j] * &y;
                    }
                }
            }
            r += 1;
        }
        r
    }

    #[test]
    fn rank_of_tetrahedron_boundary() {
        let b2 = boundary_matrix(&Complex::standard_sphere(2), 2).matrix;
        assert_eq!(rational_rank(&b2), 3);
        assert_eq!(rank(&b2), 3);
        assert_eq!(smith_normal_form(&b2).rank(), 3);
    }

    #[test]
    fn homology_examples() {
        for n in 0..6usize {
            let h = homology_groups(&Complex::standard_sphere(n));
            let want: Vec<usize> = if n == 0 {
                vec![2]
            } else {
                (0..=n).map(|i| usize::from(i == 0 || i == n)).collect()
            };
            assert_eq!(h.iter().map(|g| g.betti).collect::<Vec<_>>(), want);
            assert!(h.iter().all(|g| g.torsion.is_empty()));
        }
        let h = homology_groups(&fixtures::rp2());
        assert_eq!(h[0], HomologyGroup { betti: 1, torsion: vec![] });
        assert_eq!(h[1], HomologyGroup { betti: 0, torsion: diag(&[2]) });
        assert_eq!(h[2], HomologyGroup { betti: 0, torsion: vec![] });
        assert_eq!(euler_from_betti(&h), fixtures::rp2().euler_characteristic());
    }

    #[test]
    fn kernel_generator_of_sphere() {
        let k = Complex::standard_sphere(3);
        let z = top_cycle_generator(&k).unwrap();
        assert_eq!(z.len(), 5);
        assert!(z.values().all(|v| v.abs().is_one()));
        let disc = boundary_matrix(&fixtures::delta2_reference(), 2).matrix;
        assert_eq!(kernel_generator(&disc), Err(Error::KernelRankNotOne(0)));
        let two = IntegerMatrix::zeros(1, 2);
        assert_eq!(kernel_generator(&two), Err(Error::KernelRankNotOne(2)));
        // nullity one with non-unit pivots
        let m = IntegerMatrix::from_dense(&[vec![2, 3, 0], vec![0, 4, 6]]);
        let x = kernel_generator(&m).unwrap();
        assert_eq!(x, diag(&[9, -6, 4]));
    }

    #[test]
    fn sphere_check_examples() {
        let r = sphere_check(&Complex::standard_sphere(3), 3, CheckLevel::CertifyLowDim);
        assert!(r.passed, "{r}");
        assert!(r.caveat.is_some());
        let ball = fixtures::delta4_reference().cone(&"u4".parse().unwrap()).unwrap();
        assert!(!sphere_check(&ball, 3, CheckLevel::Necessary).passed);
        assert!(!sphere_check(&fixtures::rp2(), 2, CheckLevel::Necessary).passed);
        assert!(sphere_check(&Complex::standard_sphere(0), 0, CheckLevel::CertifyLowDim).passed);
        assert!(sphere_check(&Complex::standard_sphere(1), 1, CheckLevel::CertifyLowDim).passed);
        assert!(!sphere_check(&Complex::standard_sphere(2), 3, CheckLevel::Necessary).passed);
        let r = sphere_check(&Complex::standard_sphere(4), 4, CheckLevel::CertifyLowDim);
        assert!(!r.passed);
        assert!(sphere_check(&Complex::standard_sphere(4), 4, CheckLevel::Necessary).passed);
    }

    #[test]
    fn two_disjoint_circles_fail() {
        let k = Complex::from_simplices(
            ["a b", "b c", "a c", "d e", "e f", "d f"].iter().map(|s| s.parse().unwrap()),
        );
        assert!(!sphere_check(&k, 1, CheckLevel::CertifyLowDim).passed);
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-6i64..7, c), r))
    }

    proptest! {
        #[test]
        fn snf_invariant_under_permutation(rows in small_matrix(), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let m = IntegerMatrix::from_dense(&rows);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut rp: Vec<usize> = (0..m.rows()).collect();
            let mut cp: Vec<usize> = (0..m.cols()).collect();
            rp.shuffle(&mut rng);
            cp.shuffle(&mut rng);
            let a = smith_normal_form(&m);
            let b = smith_normal_form(&m.permuted(&rp, &cp));
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(a.rank(), rational_rank(&m));
            for w in a.diagonal.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
        }

        #[test]
        fn snf_determinant_for_square(rows in (1usize..5).prop_flat_map(|n| proptest::collection::vec(proptest::collection::vec(-5i64..6, n), n))) {
            let m = IntegerMatrix::from_dense(&rows);
            let snf = smith_normal_form(&m);
            let det = det_bareiss(&rows);
            if det != 0 {
                let prod: BigInt = snf.diagonal.iter().product();
                prop_assert_eq!(prod, BigInt::from(det.abs()));
            } else {
                prop_assert!(snf.rank() < rows.len());
            }
        }
    }

    fn det_bareiss(rows: &[Vec<i64>]) -> i128 {
        let n = rows.len();
        let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
        let mut sign = 1;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        sign * a[n - 1][n - 1]
    }
}
