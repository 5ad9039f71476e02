//! Triangulations used by the benchmarks.

use twonormal::Triangulation;

const SAMPLES: [(&str, &str); 4] = [
    (
        "one_tet",
        include_str!("../../../triangulations/one_tet.tri"),
    ),
    (
        "two_tet",
        include_str!("../../../triangulations/two_tet.tri"),
    ),
    (
        "three_tet",
        include_str!("../../../triangulations/three_tet.tri"),
    ),
    (
        "four_tet",
        include_str!("../../../triangulations/four_tet.tri"),
    ),
];

/// `double2` followed by the sample triangulations, smallest first.
pub fn samples() -> Vec<(&'static str, Triangulation)> {
    let mut out = vec![(
        "double2",
        Triangulation::builtin("double2").expect("built-in"),
    )];
    for (name, text) in SAMPLES {
        out.push((name, Triangulation::parse(text).expect("sample parses")));
    }
    out
}
