//! Enumeration of graph classes by backtracking over vertex-pair edge
//! multiplicities, one canonical representative per nonzero class.

use super::canon::canonicalize;
use super::{End, ExtGraph, GraphClass, GraphError};
use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Valence {
    pub min: u32,
    pub max: u32,
}

impl Valence {
    pub fn exactly(v: u32) -> Self {
        Valence { min: v, max: v }
    }

    pub fn at_most(v: u32) -> Self {
        Valence { min: 0, max: v }
    }

    pub fn between(min: u32, max: u32) -> Self {
        Valence { min, max }
    }
}

#[derive(Clone, Debug)]
pub struct EnumLimits {
    pub max_vertices: u32,
    pub max_edges: usize,
    /// Cap on parallel edges between one vertex pair.
    pub max_multiplicity: u32,
    /// When set, only graphs with exactly this many edges are produced.
    pub exact_edges: Option<usize>,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits { max_vertices: 10, max_edges: 16, max_multiplicity: 3, exact_edges: None }
    }
}

/// All canonical classes with `p` internal and `q` peripheral vertices whose
/// valences fall in the given ranges. Zero classes are skipped. Errors when
/// the request exceeds the limits.
pub fn enumerate_graphs(
    p: u32,
    q: u32,
    internal: Valence,
    peripheral: Valence,
    limits: &EnumLimits,
) -> Result<Vec<GraphClass>, GraphError> {
    if p + q > limits.max_vertices {
        return Err(GraphError::ResourceLimit(format!(
            "{} vertices requested, limit {}",
            p + q,
            limits.max_vertices
        )));
    }
    let verts: Vec<End> = (1..=p)
        .map(End::Int)
        .chain((1..=q).map(End::Per))
        .collect();
    let n = verts.len();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            pairs.push((i, j));
        }
    }
    let vmin = |v: usize| if verts[v].is_internal() { internal.min } else { peripheral.min };
    let vmax = |v: usize| if verts[v].is_internal() { internal.max } else { peripheral.max };

    let mut found: BTreeSet<GraphClass> = BTreeSet::new();
    let mut mult = vec![0u32; pairs.len()];
    let mut deg = vec![0u32; n];

    // remaining capacity heuristic: after choosing the first k pairs, each
    // vertex can still gain edges only through later pairs
    fn later_capacity(pairs: &[(usize, usize)], from: usize, v: usize, per_pair: u32) -> u32 {
        pairs[from..]
            .iter()
            .map(|&(a, b)| if a == v || b == v { per_pair } else { 0 })
            .sum()
    }

    fn rec(
        k: usize,
        pairs: &[(usize, usize)],
        mult: &mut Vec<u32>,
        deg: &mut Vec<u32>,
        edges_so_far: usize,
        verts: &[End],
        vmin: &dyn Fn(usize) -> u32,
        vmax: &dyn Fn(usize) -> u32,
        limits: &EnumLimits,
        found: &mut BTreeSet<GraphClass>,
    ) -> Result<(), GraphError> {
        if let Some(exact) = limits.exact_edges {
            if edges_so_far > exact {
                return Ok(());
            }
        }
        if edges_so_far > limits.max_edges {
            return Ok(());
        }
        if k == pairs.len() {
            if deg.iter().enumerate().any(|(v, &d)| d < vmin(v) || d > vmax(v)) {
                return Ok(());
            }
            if let Some(exact) = limits.exact_edges {
                if edges_so_far != exact {
                    return Ok(());
                }
            }
            let mut edge_list = Vec::with_capacity(edges_so_far);
            for (idx, &m) in mult.iter().enumerate() {
                let (a, b) = pairs[idx];
                for _ in 0..m {
                    edge_list.push((verts[a], verts[b]));
                }
            }
            let g = ExtGraph {
                n_int: verts.iter().filter(|e| e.is_internal()).count() as u32,
                n_per: verts.iter().filter(|e| !e.is_internal()).count() as u32,
                edges: edge_list,
            };
            if let Some(class) = canonicalize(&g)?.class {
                found.insert(class);
            }
            return Ok(());
        }
        let (a, b) = pairs[k];
        // prune: a vertex that can no longer reach its minimum
        for v in 0..deg.len() {
            let reachable = deg[v] + later_capacity(pairs, k, v, limits.max_multiplicity);
            if reachable < vmin(v) {
                return Ok(());
            }
        }
        let cap = limits
            .max_multiplicity
            .min(vmax(a).saturating_sub(deg[a]))
            .min(vmax(b).saturating_sub(deg[b]));
        for m in 0..=cap {
            mult[k] = m;
            deg[a] += m;
            deg[b] += m;
            rec(k + 1, pairs, mult, deg, edges_so_far + m as usize, verts, vmin, vmax, limits, found)?;
            deg[a] -= m;
            deg[b] -= m;
            mult[k] = 0;
        }
        Ok(())
    }

    rec(0, &pairs, &mut mult, &mut deg, 0, &verts, &vmin, &vmax, limits, &mut found)?;
    Ok(found.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_internal_trivalent_is_theta_only() {
        let classes =
            enumerate_graphs(2, 0, Valence::exactly(3), Valence::exactly(1), &EnumLimits::default())
                .unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].graph().n_edges(), 3);
    }

    #[test]
    fn one_internal_trivalent_is_empty() {
        // a single trivalent vertex needs a self-loop, which vanishes
        let classes =
            enumerate_graphs(1, 0, Valence::exactly(3), Valence::exactly(1), &EnumLimits::default())
                .unwrap();
        assert!(classes.is_empty());
    }

    #[test]
    fn two_peripheral_one_chord() {
        let classes =
            enumerate_graphs(0, 2, Valence::exactly(3), Valence::exactly(1), &EnumLimits::default())
                .unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].graph().n_edges(), 1);
    }

    #[test]
    fn vertex_limit_enforced() {
        let err = enumerate_graphs(
            8,
            8,
            Valence::exactly(3),
            Valence::exactly(1),
            &EnumLimits { max_vertices: 10, ..Default::default() },
        )
        .unwrap_err();
        assert!(matches!(err, GraphError::ResourceLimit(_)));
    }
}
