//! Canonical form: lexicographically minimal edge list over all internal
//! relabelings, peripheral rotations and edge orientations, with the sign
//! tracked as parity of transpositions times `(-1)` per flipped edge times
//! the rotation sign `(-1)^{q-1}` per step.

use super::{End, ExtGraph, GraphClass, GraphError, PlainGraph};

/// Result of canonicalization: `None` when the class is zero (the graph has
/// a symmetry acting by `-1` on itself, e.g. a self-loop).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonical {
    pub class: Option<GraphClass>,
    /// Sign relating the input representative to the canonical one; zero
    /// classes report `0`.
    pub sign: i8,
}

impl Canonical {
    pub fn zero() -> Self {
        Canonical { class: None, sign: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.class.is_none()
    }
}

fn perm_parity(perm: &[u32]) -> i8 {
    let mut seen = vec![false; perm.len()];
    let mut parity = 0usize;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0usize;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i] as usize;
            len += 1;
        }
        parity += len + 1;
    }
    if parity % 2 == 0 {
        1
    } else {
        -1
    }
}

fn apply(g: &ExtGraph, int_perm: &[u32], rot: u32) -> (Vec<(End, End)>, i8) {
    let q = g.n_per;
    let map = |e: End| -> End {
        match e {
            End::Int(i) => End::Int(int_perm[(i - 1) as usize] + 1),
            End::Per(i) => End::Per((i - 1 + rot) % q + 1),
        }
    };
    let mut flips = 0u32;
    let mut edges: Vec<(End, End)> = g
        .edges
        .iter()
        .map(|&(a, b)| {
            let (a, b) = (map(a), map(b));
            if b < a {
                flips += 1;
                (b, a)
            } else {
                (a, b)
            }
        })
        .collect();
    edges.sort();
    let sign = if flips % 2 == 0 { 1 } else { -1 };
    (edges, sign)
}

fn rotation_sign(q: u32, rot: u32) -> i8 {
    // one step carries (-1)^{q-1}
    if q == 0 || (q - 1) % 2 == 0 {
        1
    } else if rot % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Iterates permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = (0..n as u32).collect();
    loop {
        out.push(cur.clone());
        // next_permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// Canonicalizes an extended graph; errors on malformed labels.
pub fn canonicalize(g: &ExtGraph) -> Result<Canonical, GraphError> {
    g.validate()?;
    if g.has_self_loop() {
        return Ok(Canonical::zero());
    }
    let rots = if g.n_per == 0 { 1 } else { g.n_per };
    let mut best: Option<(Vec<(End, End)>, i8)> = None;
    let mut zero = false;
    for perm in permutations(g.n_int as usize) {
        let pp = perm_parity(&perm);
        for rot in 0..rots {
            let (edges, flip_sign) = apply(g, &perm, rot);
            let total = pp * flip_sign * rotation_sign(g.n_per, rot);
            match &best {
                None => best = Some((edges, total)),
                Some((b, s)) => {
                    if edges < *b {
                        zero = false;
                        best = Some((edges, total));
                    } else if edges == *b && total != *s {
                        zero = true;
                    }
                }
            }
        }
    }
    if zero {
        return Ok(Canonical::zero());
    }
    let (edges, sign) = best.expect("at least the identity relabeling");
    let canon = ExtGraph { n_int: g.n_int, n_per: g.n_per, edges };
    Ok(Canonical { class: Some(GraphClass::from_canonical(canon)), sign })
}

pub fn canonicalize_plain(g: &PlainGraph) -> Result<Canonical, GraphError> {
    canonicalize(&g.0)
}

/// Order of the vertex automorphism group: internal permutations and
/// peripheral rotations preserving the unoriented edge multiset.
pub fn aut_order(g: &ExtGraph) -> u64 {
    let unoriented = |edges: &[(End, End)]| -> Vec<(End, End)> {
        let mut v: Vec<(End, End)> = edges
            .iter()
            .map(|&(a, b)| if b < a { (b, a) } else { (a, b) })
            .collect();
        v.sort();
        v
    };
    let base = unoriented(&g.edges);
    let rots = if g.n_per == 0 { 1 } else { g.n_per };
    let mut count = 0u64;
    for perm in permutations(g.n_int as usize) {
        for rot in 0..rots {
            let (edges, _) = apply(g, &perm, rot);
            if unoriented(&edges) == base {
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_loop_is_zero() {
        let g = ExtGraph::plain(1, &[(1, 1)]).unwrap();
        assert!(canonicalize(&g).unwrap().is_zero());
    }

    #[test]
    fn idempotent_on_canonical() {
        let g = ExtGraph::plain(3, &[(1, 2), (1, 2), (1, 3), (1, 3), (2, 3)]).unwrap();
        let c = canonicalize(&g).unwrap();
        let rep = c.class.unwrap();
        let c2 = canonicalize(rep.graph()).unwrap();
        assert_eq!(c2.sign, 1);
        assert_eq!(c2.class.unwrap(), rep);
    }

    #[test]
    fn sign_composes_under_relabeling_and_flip() {
        // swapping two vertices of the triple-legged graph and flipping one
        // edge must compose multiplicatively
        let g = ExtGraph::plain(3, &[(1, 2), (1, 2), (1, 3), (1, 3), (2, 3)]).unwrap();
        let base = canonicalize(&g).unwrap();
        let flipped = ExtGraph::plain(3, &[(1, 2), (1, 2), (1, 3), (1, 3), (3, 2)]).unwrap();
        let c = canonicalize(&flipped).unwrap();
        assert_eq!(c.class, base.class);
        assert_eq!(c.sign, -base.sign);
    }

    #[test]
    fn quadruple_edge_pair_vanishes() {
        // two vertices joined by four parallel edges: the swap acts by -1
        let g = ExtGraph::plain(2, &[(1, 2), (1, 2), (1, 2), (1, 2)]).unwrap();
        assert!(canonicalize(&g).unwrap().is_zero());
    }

    #[test]
    fn theta_graph_survives() {
        let g = ExtGraph::plain(2, &[(1, 2), (1, 2), (1, 2)]).unwrap();
        let c = canonicalize(&g).unwrap();
        assert!(!c.is_zero());
        assert_eq!(aut_order(c.class.unwrap().graph()), 2);
    }

    #[test]
    fn single_vertex_no_edges() {
        let g = ExtGraph::plain(1, &[]).unwrap();
        assert_eq!(aut_order(&g), 1);
        assert!(!canonicalize(&g).unwrap().is_zero());
    }

    #[test]
    fn bad_labels_rejected() {
        assert!(ExtGraph::plain(1, &[(1, 2)]).is_err());
        assert!(ExtGraph::new(0, 1, vec![(End::Per(1), End::Per(2))]).is_err());
    }
}
