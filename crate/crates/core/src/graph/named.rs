//! A small reference family of graphs and chord diagrams used by the CLI
//! and the test suites, with fixed orientations.

use super::End::{Int, Per};
use super::{canonicalize, ExtGraph, GraphClass};

/// `Gamma1` .. `Gamma9`: the tetrahedron family and the two-chord family.
pub fn named_graphs() -> Vec<(&'static str, ExtGraph)> {
    vec![
        ("Gamma1", gamma(1)),
        ("Gamma2", gamma(2)),
        ("Gamma3", gamma(3)),
        ("Gamma4", gamma(4)),
        ("Gamma5", gamma(5)),
        ("Gamma6", gamma(6)),
        ("Gamma7", gamma(7)),
        ("Gamma8", gamma(8)),
        ("Gamma9", gamma(9)),
    ]
}

/// Reference representative number `k` (1-based).
pub fn gamma(k: u32) -> ExtGraph {
    match k {
        // tetrahedron, edges ascending
        1 => ExtGraph::plain(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap(),
        // two doubled sides of a square
        2 => ExtGraph::plain(4, &[(1, 2), (1, 2), (1, 4), (2, 3), (3, 4), (3, 4)]).unwrap(),
        // doubled tripod: one 4-valent vertex
        3 => ExtGraph::plain(3, &[(1, 2), (1, 2), (1, 3), (1, 3), (2, 3)]).unwrap(),
        // two adjacent chords
        4 => ExtGraph::new(0, 4, vec![(Per(1), Per(2)), (Per(4), Per(3))]).unwrap(),
        // two crossing chords
        5 => ExtGraph::new(0, 4, vec![(Per(1), Per(3)), (Per(2), Per(4))]).unwrap(),
        // one internal vertex joined to three circle points
        6 => ExtGraph::new(1, 3, vec![(Per(1), Int(1)), (Per(2), Int(1)), (Per(3), Int(1))])
            .unwrap(),
        // two legs and a doubled internal edge
        7 => ExtGraph::new(
            2,
            2,
            vec![(Per(1), Int(1)), (Per(2), Int(2)), (Int(1), Int(2)), (Int(1), Int(2))],
        )
        .unwrap(),
        // path of two chords through one circle point
        8 => ExtGraph::new(0, 3, vec![(Per(1), Per(2)), (Per(3), Per(2))]).unwrap(),
        // one leg and a doubled chord into an internal vertex
        9 => ExtGraph::new(1, 2, vec![(Per(1), Int(1)), (Int(1), Per(2)), (Int(1), Per(2))])
            .unwrap(),
    _ => panic!("reference graphs are numbered 1..=9"),
    }
}

/// Name of the class of `g` within the reference family, when it matches.
pub fn class_name(class: &GraphClass) -> Option<&'static str> {
    for (name, g) in named_graphs() {
        let c = canonicalize(&g).expect("reference graphs are well-formed");
        if c.class.as_ref() == Some(class) {
            return Some(name);
        }
    }
    None
}
