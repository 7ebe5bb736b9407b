//! Enumeration of vertex sets that are connected in a graph power `G^k`.
//!
//! Every set is produced exactly once by the usual include/exclude branching:
//! the current set `S` carries a candidate frontier; popping a candidate `u`
//! either grows `S` by `u` (and extends the frontier by `u`'s fresh
//! neighbours) or forbids `u` for the remaining siblings.

use super::{Graph, VertexSet};

/// Visits every `S ∋ anchor` with `|S| ≤ max_size` that is connected in the
/// graph whose neighbourhoods are `neighborhoods`, avoiding `forbidden`.
pub fn for_each_connected_set<F>(
    neighborhoods: &[VertexSet],
    anchor: usize,
    max_size: usize,
    forbidden: &VertexSet,
    visit: &mut F,
) where
    F: FnMut(&VertexSet),
{
    if max_size == 0 || forbidden.contains(anchor) {
        return;
    }
    let n = neighborhoods.len();
    let mut set = VertexSet::singleton(n, anchor);
    let mut blocked = forbidden.union(&set);
    let frontier: Vec<usize> = neighborhoods[anchor].difference(&blocked).iter().collect();
    for &w in &frontier {
        blocked.insert(w);
    }
    grow(
        neighborhoods,
        &mut set,
        frontier,
        &mut blocked,
        max_size,
        visit,
    );
}

fn grow<F>(
    neighborhoods: &[VertexSet],
    set: &mut VertexSet,
    mut frontier: Vec<usize>,
    blocked: &mut VertexSet,
    max_size: usize,
    visit: &mut F,
) where
    F: FnMut(&VertexSet),
{
    visit(set);
    if set.len() == max_size {
        return;
    }
    // `blocked` covers the set, the forbidden vertices and every frontier
    // member; popped candidates stay blocked for later siblings.
    while let Some(u) = frontier.pop() {
        set.insert(u);
        let fresh: Vec<usize> = neighborhoods[u].difference(blocked).iter().collect();
        for &w in &fresh {
            blocked.insert(w);
        }
        let mut next = frontier.clone();
        next.extend_from_slice(&fresh);
        grow(neighborhoods, set, next, blocked, max_size, visit);
        for &w in &fresh {
            blocked.remove(w);
        }
        set.remove(u);
    }
}

/// Every `G^k`-connected set containing `anchor` with at most `max_size`
/// vertices.
pub fn enumerate_connected_sets(
    g: &Graph,
    anchor: usize,
    max_size: usize,
    power: usize,
) -> Vec<VertexSet> {
    let nb = g.power_neighborhoods(power);
    let mut out = Vec::new();
    for_each_connected_set(&nb, anchor, max_size, &VertexSet::empty(g.n()), &mut |s| {
        out.push(s.clone())
    });
    out
}

/// Visits the `G^k`-connected sets inside `allowed` whose smallest vertex is
/// `root`. Summing over all roots lists every connected set exactly once.
pub fn for_each_rooted_connected_set<F>(
    neighborhoods: &[VertexSet],
    root: usize,
    max_size: usize,
    allowed: &VertexSet,
    visit: &mut F,
) where
    F: FnMut(&VertexSet),
{
    let mut forbidden = allowed.complement();
    for v in 0..root {
        forbidden.insert(v);
    }
    for_each_connected_set(neighborhoods, root, max_size, &forbidden, visit);
}

/// `Σ_{s=1..t} (e·D)^s` with `D = Δ^k`: the bound on connected sets of size at
/// most `t` through a fixed vertex in a graph of maximum degree `D`.
pub fn connected_set_bound(max_degree: usize, power: usize, max_size: usize) -> f64 {
    let base = std::f64::consts::E * (max_degree as f64).powi(power as i32);
    (1..=max_size).map(|s| base.powi(s as i32)).sum()
}
