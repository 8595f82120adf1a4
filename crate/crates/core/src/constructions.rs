//! Four families of triangulated spheres mapping onto the standard sphere
//! with prescribed degree.

use std::collections::BTreeMap;

use crate::bundle::{standard_base, v, ConstructionBundle};
use crate::complex::Complex;
use crate::disc::build_delta;
use crate::error::{Error, Result};
use crate::label::VertexLabel;
use crate::simplex::Simplex;
use crate::simplicial_map::VertexMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Even,
    Odd,
}

fn u(i: usize) -> VertexLabel {
    VertexLabel::indexed("u", i as u32)
}

fn up(i: usize) -> VertexLabel {
    u(i).primed()
}

/// `[u{from} ... u{to}]`, or the empty simplex when the range is empty.
fn u_range(from: usize, to: usize) -> Simplex {
    Simplex::new((from..=to).map(u)).expect("distinct")
}

fn simplex_complex(s: Simplex) -> Complex {
    Complex::from_simplices([s])
}

/// `(apex * ∂B) ∪ B` for a ball `B`.
fn close_up(ball: &Complex, apex: &VertexLabel) -> Result<Complex> {
    Ok(ball.boundary()?.cone(apex)?.union(ball))
}

/// Sends each label to `v` of its class index, which is how every family
/// here maps `u_{j,i}`, `u_j` and `u'_j`.
fn class_map(k: &Complex) -> VertexMap {
    VertexMap::new(k.vertices().into_iter().map(|x| {
        let j = x.class_index().expect("indexed label") as usize;
        (x, v(j))
    }).collect::<BTreeMap<_, _>>())
}

fn bundle(label: String, source: Complex, n: usize, source_base: Vec<VertexLabel>, degree: i64, vertices: usize) -> ConstructionBundle {
    let map = class_map(&source);
    ConstructionBundle {
        label,
        source,
        target: Complex::standard_sphere(n),
        map,
        source_base,
        target_base: standard_base(n),
        expected_degree: degree,
        expected_vertices: vertices,
    }
}

fn require(cond: bool, what: &str) -> Result<()> {
    if cond { Ok(()) } else { Err(Error::PreconditionFailed(what.into())) }
}

/// `K' = Δ_d * [u4 ... u{n+1}]`, closed up by a cone on `u{n+2}`.
pub fn build_join_cone_sphere(n: usize, d: usize) -> Result<ConstructionBundle> {
    require(n >= 2, "join-cone needs n >= 2")?;
    require(d >= 1, "join-cone needs d >= 1")?;
    let disc = build_delta(d as u32)?;
    let ball = disc.complex.join(&simplex_complex(u_range(4, n + 1)))?;
    let k = close_up(&ball, &u(n + 2))?;
    let mut base = vec![VertexLabel::pair("u", 1, 1), VertexLabel::pair("u", 2, 1), VertexLabel::pair("u", 3, 1)];
    base.extend((4..=n + 1).map(u));
    Ok(bundle(format!("join-cone n={n} d={d}"), k, n, base, d as i64, 3 * d + n - 1))
}

/// Two cones over nested discs of `Δ_{2d}` (even) or `Δ_{2d+1}` (odd),
/// joined with `[u5 ... u{n+1}]` and closed up by a cone on `u{n+2}`.
pub fn build_double_cone_sphere(n: usize, d: usize, variant: Variant) -> Result<ConstructionBundle> {
    require(n >= 3, "double-cone needs n >= 3")?;
    require(d >= 1, "double-cone needs d >= 1")?;
    let size = match variant {
        Variant::Even => 2 * d,
        Variant::Odd => 2 * d + 1,
    };
    let disc = build_delta(size as u32)?;
    let outer = disc.complex.cone(&u(4))?;
    let inner = disc.triangles_from_level(1).cone(&up(4))?;
    let ball = outer.union(&inner).join(&simplex_complex(u_range(5, n + 1)))?;
    let k = close_up(&ball, &u(n + 2))?;
    let mut base = vec![VertexLabel::pair("u", 1, 1), VertexLabel::pair("u", 2, 1), VertexLabel::pair("u", 3, 1)];
    base.extend((4..=n + 1).map(u));
    let (degree, vertices) = match variant {
        Variant::Even => (3 * d, 6 * d + n),
        Variant::Odd => (3 * d + 1, 6 * d + n + 3),
    };
    let tag = match variant {
        Variant::Even => "even",
        Variant::Odd => "odd",
    };
    Ok(bundle(format!("double-cone n={n} d={d} {tag}"), k, n, base, degree as i64, vertices))
}

/// The simplex `[u1 ... u{k+1}]` with an ear `u'_i * [u1 .. û_i .. u{k+1}]`
/// on each facet, joined with `[u{k+2} ... u{n+1}]` and closed up by `u{n+2}`.
pub fn build_facet_cone_sphere(n: usize, k: usize) -> Result<ConstructionBundle> {
    require(k >= 2 && k <= n, "facet-cone needs 2 <= k <= n")?;
    let central = u_range(1, k + 1);
    let ears = (0..=k).map(|i| central.omit(i).with_vertex(&up(i + 1)).expect("fresh apex"));
    let stacked = Complex::from_simplices(std::iter::once(central.clone()).chain(ears));
    let ball = stacked.join(&simplex_complex(u_range(k + 2, n + 1)))?;
    let sphere = close_up(&ball, &u(n + 2))?;
    let base: Vec<VertexLabel> = (1..=n + 1).map(|i| if i == k { up(i) } else { u(i) }).collect();
    Ok(bundle(format!("facet-cone n={n} k={k}"), sphere, n, base, k as i64, k + n + 3))
}

/// Ears `u'_i * [u1 .. û_i .. u{n+1}]` around the stellar subdivision
/// `u{n+2} * ∂[u1 ... u{n+1}]`, closed up by a cone on `u'{n+2}`.
pub fn build_stacked_sphere(n: usize) -> Result<ConstructionBundle> {
    require(n >= 2, "stacked needs n >= 2")?;
    let sigma = u_range(1, n + 1);
    let ears = (0..=n).map(|i| sigma.omit(i).with_vertex(&up(i + 1)).expect("fresh apex"));
    let fan = (0..=n).map(|i| sigma.omit(i).with_vertex(&u(n + 2)).expect("fresh apex"));
    let ball = Complex::from_simplices(ears.chain(fan));
    let sphere = close_up(&ball, &up(n + 2))?;
    let mut base: Vec<VertexLabel> = (1..=n).map(u).collect();
    base.push(up(n + 1));
    Ok(bundle(format!("stacked n={n}"), sphere, n, base, n as i64 + 1, 2 * n + 4))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::homology::{sphere_check, CheckLevel};
    use crate::simplicial_map::{check_simplicial, degree_by_counting, degree_by_cycle};

    fn assert_bundle(b: &ConstructionBundle) {
        let n = b.dim();
        assert_eq!(b.source.vertices().len(), b.expected_vertices, "{}", b.label);
        let level = if n <= 3 { CheckLevel::CertifyLowDim } else { CheckLevel::Necessary };
        let r = sphere_check(&b.source, n, level);
        assert!(r.passed, "{}: {r}", b.label);
        let c = check_simplicial(&b.map, &b.source, &b.target).unwrap();
        assert!(c.ok && c.degenerate_facets.is_empty(), "{}", b.label);
        assert_eq!(degree_by_counting(b).unwrap().degree, b.expected_degree, "{}", b.label);
        assert_eq!(degree_by_cycle(b).unwrap(), b.expected_degree, "{}", b.label);
    }

    #[test]
    fn join_cone_example() {
        let b = build_join_cone_sphere(3, 4).unwrap();
        assert_eq!(b.source.facet_count(), 32);
        assert_bundle(&b);
        let report = degree_by_counting(&b).unwrap();
        for (target, positive, facets) in fixtures::degree4_preimages() {
            let sigma: Simplex = target.parse().unwrap();
            let a = &report.per_facet[&sigma];
            let got = if positive { &a.alpha_plus } else { &a.alpha_minus };
            let want: Vec<Simplex> = facets.iter().map(|f| f.parse().unwrap()).collect();
            let mut got = got.clone();
            got.sort();
            let mut want = want;
            want.sort();
            assert_eq!(got, want, "{target} {positive}");
        }
    }

    #[test]
    fn small_parameters() {
        assert_bundle(&build_join_cone_sphere(2, 2).unwrap());
        assert_bundle(&build_join_cone_sphere(5, 1).unwrap());
        assert_bundle(&build_double_cone_sphere(4, 1, Variant::Even).unwrap());
        assert_bundle(&build_double_cone_sphere(4, 1, Variant::Odd).unwrap());
        assert_bundle(&build_double_cone_sphere(3, 2, Variant::Even).unwrap());
        assert_bundle(&build_facet_cone_sphere(3, 2).unwrap());
        assert_bundle(&build_facet_cone_sphere(3, 3).unwrap());
        assert_bundle(&build_facet_cone_sphere(5, 4).unwrap());
        for n in [2, 3, 6] {
            let b = build_stacked_sphere(n).unwrap();
            assert_eq!(b.source.facet_count(), (n + 1) * (n + 2));
            assert_bundle(&b);
        }
    }

    #[test]
    fn preconditions() {
        assert!(matches!(build_join_cone_sphere(1, 2), Err(Error::PreconditionFailed(_))));
        assert!(matches!(build_join_cone_sphere(3, 0), Err(Error::PreconditionFailed(_))));
        assert!(matches!(build_double_cone_sphere(2, 1, Variant::Even), Err(Error::PreconditionFailed(_))));
        assert!(matches!(build_facet_cone_sphere(3, 4), Err(Error::PreconditionFailed(_))));
        assert!(matches!(build_facet_cone_sphere(3, 1), Err(Error::PreconditionFailed(_))));
        assert!(matches!(build_stacked_sphere(1), Err(Error::PreconditionFailed(_))));
    }
}
