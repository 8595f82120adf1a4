//! Hand-written reference complexes used by tests and the CLI checks.

use crate::complex::Complex;
use crate::simplex::Simplex;

fn from_lines(lines: &[&str]) -> Complex {
    Complex::from_simplices(lines.iter().map(|l| l.parse::<Simplex>().expect("fixture facet")))
}

/// The four triangles of the degree-2 disc, as listed in the literature.
pub fn delta2_reference() -> Complex {
    from_lines(&["u1_1 u2_1 u3_1", "u1_2 u2_2 u3_1", "u1_1 u2_2 u3_2", "u1_1 u2_2 u3_1"])
}

/// The seven triangles of the degree-3 disc.
pub fn delta3_reference() -> Complex {
    from_lines(&[
        "u1_1 u2_2 u3_1",
        "u1_3 u2_2 u3_3",
        "u1_1 u2_1 u3_1",
        "u1_2 u2_2 u3_1",
        "u1_3 u2_2 u3_2",
        "u1_3 u2_3 u3_3",
        "u1_1 u2_2 u3_3",
    ])
}

/// The ten triangles of the degree-4 disc (the cone bases of the 3-dimensional
/// degree-4 example).
pub fn delta4_reference() -> Complex {
    from_lines(&[
        "u1_1 u2_1 u3_1",
        "u1_2 u2_2 u3_1",
        "u1_3 u2_2 u3_2",
        "u1_3 u2_3 u3_3",
        "u1_4 u2_4 u3_3",
        "u1_1 u2_4 u3_4",
        "u1_1 u2_2 u3_3",
        "u1_1 u2_2 u3_1",
        "u1_3 u2_2 u3_3",
        "u1_1 u2_4 u3_3",
    ])
}

/// Six-vertex real projective plane.
pub fn rp2() -> Complex {
    from_lines(&[
        "x1 x2 x3", "x1 x3 x4", "x1 x4 x5", "x1 x5 x6", "x1 x2 x6",
        "x2 x3 x5", "x3 x4 x6", "x2 x4 x5", "x3 x5 x6", "x2 x4 x6",
    ])
}

/// Preimage sets of the degree-4 map on the 14-vertex 3-sphere, keyed by
/// `(target facet, positive?)`. Sets not listed are empty.
pub fn degree4_preimages() -> Vec<(&'static str, bool, Vec<&'static str>)> {
    vec![
        (
            "v1 v2 v3 v4",
            true,
            vec![
                "u1_1 u2_1 u3_1 u4",
                "u1_2 u2_2 u3_1 u4",
                "u1_3 u2_2 u3_2 u4",
                "u1_3 u2_3 u3_3 u4",
                "u1_4 u2_4 u3_3 u4",
                "u1_1 u2_4 u3_4 u4",
                "u1_1 u2_2 u3_3 u4",
            ],
        ),
        ("v1 v2 v3 v4", false, vec!["u1_1 u2_2 u3_1 u4", "u1_3 u2_2 u3_3 u4", "u1_1 u2_4 u3_3 u4"]),
        (
            "v1 v2 v3 v5",
            false,
            vec![
                "u1_1 u2_1 u3_1 u5",
                "u1_2 u2_2 u3_1 u5",
                "u1_3 u2_2 u3_2 u5",
                "u1_3 u2_3 u3_3 u5",
                "u1_4 u2_4 u3_3 u5",
                "u1_1 u2_4 u3_4 u5",
                "u1_1 u2_2 u3_3 u5",
            ],
        ),
        ("v1 v2 v4 v5", true, vec!["u1_1 u2_1 u4 u5", "u1_2 u2_2 u4 u5", "u1_3 u2_3 u4 u5", "u1_4 u2_4 u4 u5"]),
        ("v1 v3 v4 v5", false, vec!["u1_2 u3_1 u4 u5", "u1_3 u3_2 u4 u5", "u1_4 u3_3 u4 u5", "u1_1 u3_4 u4 u5"]),
        ("v2 v3 v4 v5", true, vec!["u2_1 u3_1 u4 u5", "u2_2 u3_2 u4 u5", "u2_3 u3_3 u4 u5", "u2_4 u3_4 u4 u5"]),
    ]
}
