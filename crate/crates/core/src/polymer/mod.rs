//! Abstract polymer models: enumeration of the polymer universe, the
//! incompatibility structure, clusters and the truncated cluster expansion.

mod cluster;
mod expansion;
mod kp;
mod ursell;
pub(crate) mod xi;

use num_rational::BigRational;
use serde::Serialize;

use crate::error::Result;
use crate::graph::{for_each_rooted_connected_set, Graph, VertexSet};
use crate::par::prelude::*;

pub use cluster::{
    enumerate_clusters, for_each_cluster, Cluster, ClusterLimits, DEFAULT_CLUSTER_BUDGET,
};
pub use expansion::{
    truncated_expansion, truncated_expansion_exact, truncation_cutoff, Truncation,
};
pub use kp::{kp_empirical, AnalyticKp, KpReport, KpStatus};
pub use ursell::{ursell, ursell_blowup, ursell_edge_subsets, UrsellValue, MAX_URSELL_NODES};
pub use xi::{
    xi_exact, xi_exact_with, xi_log, xi_rational, LogValue, XiAlgebra, DEFAULT_XI_STATES,
};

/// A polymer model on a host graph. Polymers are vertex sets connected in
/// `G^k` (`k = power()`); two polymers are compatible iff their graph distance
/// exceeds `k`.
pub trait PolymerModel: Sync {
    fn label(&self) -> String;

    fn power(&self) -> usize;

    /// Vertices polymers may use (a bipartition side, or everything).
    fn allowed(&self, g: &Graph) -> VertexSet;

    /// Largest admissible polymer size, independent of any truncation.
    fn max_polymer_size(&self, g: &Graph) -> usize;

    /// Model-specific admissibility beyond connectivity, `allowed` and the
    /// size cap.
    fn admissible(&self, _g: &Graph, _set: &VertexSet) -> bool {
        true
    }

    /// `ln w_γ`, or `None` when `w_γ = 0` (such sets are not polymers).
    fn log_weight(&self, g: &Graph, set: &VertexSet) -> Result<Option<f64>>;

    /// Exact weight when the parameters are rational.
    fn exact_weight(&self, _g: &Graph, _set: &VertexSet) -> Result<Option<BigRational>> {
        Ok(None)
    }

    /// `g(γ)`.
    fn decay(&self, g: &Graph, set: &VertexSet) -> f64;

    /// `ρ` with `g(γ) ≥ ρ|γ|` for every polymer.
    fn decay_slope(&self, g: &Graph) -> f64;
}

#[derive(Debug, Clone, Serialize)]
pub struct Polymer {
    pub vertices: VertexSet,
    pub size: usize,
    pub log_weight: f64,
    #[serde(skip)]
    pub exact_weight: Option<BigRational>,
    pub decay: f64,
    pub min_vertex: usize,
}

/// Description of a polymer for [`PolymerIndex::from_parts`].
#[derive(Debug, Clone)]
pub struct AbstractPolymer {
    pub log_weight: f64,
    pub exact_weight: Option<BigRational>,
    pub size: usize,
    pub decay: f64,
}

impl AbstractPolymer {
    /// Size-1 polymer of weight `w` with `g = 1`.
    pub fn unit(w: f64) -> Self {
        AbstractPolymer {
            log_weight: w.ln(),
            exact_weight: None,
            size: 1,
            decay: 1.0,
        }
    }

    pub fn unit_exact(w: BigRational) -> Self {
        let f = num_traits::ToPrimitive::to_f64(&w).expect("finite weight");
        AbstractPolymer {
            exact_weight: Some(w),
            ..AbstractPolymer::unit(f)
        }
    }
}

/// The enumerated polymer universe with dense ids and its incompatibility
/// graph. Ids are sorted by `(size, vertex set)`. Every polymer is
/// incompatible with itself; `incompatible(i)` lists the other ids only.
#[derive(Debug, Clone)]
pub struct PolymerIndex {
    n_vertices: usize,
    power: usize,
    decay_slope: f64,
    size_cap: usize,
    label: String,
    polymers: Vec<Polymer>,
    incompat: Vec<Vec<usize>>,
}

impl PolymerIndex {
    /// Every admissible `G^k`-connected set of at most `size_cap` vertices.
    pub fn build(g: &Graph, model: &dyn PolymerModel, size_cap: usize) -> Result<PolymerIndex> {
        let k = model.power();
        let cap = size_cap.min(model.max_polymer_size(g));
        let allowed = model.allowed(g);
        let nb = g.power_neighborhoods(k);
        let roots = allowed.to_vec();
        let per_root: Vec<Result<Vec<Polymer>>> = roots
            .par_iter()
            .map(|&root| {
                let mut sets = Vec::new();
                for_each_rooted_connected_set(&nb, root, cap, &allowed, &mut |s| {
                    if model.admissible(g, s) {
                        sets.push(s.clone());
                    }
                });
                let mut out = Vec::with_capacity(sets.len());
                for s in sets {
                    if let Some(lw) = model.log_weight(g, &s)? {
                        out.push(Polymer {
                            size: s.len(),
                            log_weight: lw,
                            exact_weight: model.exact_weight(g, &s)?,
                            decay: model.decay(g, &s),
                            min_vertex: root,
                            vertices: s,
                        });
                    }
                }
                Ok(out)
            })
            .collect();
        let mut polymers = Vec::new();
        for chunk in per_root {
            polymers.extend(chunk?);
        }
        polymers.sort_by(|a, b| {
            a.size
                .cmp(&b.size)
                .then_with(|| a.vertices.cmp(&b.vertices))
        });
        let incompat = incompatibility(g, &polymers, k);
        Ok(PolymerIndex {
            n_vertices: g.n(),
            power: k,
            decay_slope: model.decay_slope(g),
            size_cap: cap,
            label: model.label(),
            polymers,
            incompat,
        })
    }

    /// Index over abstract polymers with an explicit list of incompatible
    /// pairs. Polymer `i` is placed at vertex `i`.
    pub fn from_parts(
        parts: Vec<AbstractPolymer>,
        incompatible_pairs: &[(usize, usize)],
    ) -> PolymerIndex {
        let p = parts.len();
        let decay_slope = parts
            .iter()
            .map(|a| a.decay / a.size as f64)
            .fold(f64::INFINITY, f64::min);
        let size_cap = parts.iter().map(|a| a.size).max().unwrap_or(0);
        let polymers = parts
            .into_iter()
            .enumerate()
            .map(|(i, a)| Polymer {
                vertices: VertexSet::singleton(p, i),
                size: a.size,
                log_weight: a.log_weight,
                exact_weight: a.exact_weight,
                decay: a.decay,
                min_vertex: i,
            })
            .collect();
        let mut incompat = vec![Vec::new(); p];
        for &(a, b) in incompatible_pairs {
            assert!(a < p && b < p, "polymer id out of range");
            if a != b && !incompat[a].contains(&b) {
                incompat[a].push(b);
                incompat[b].push(a);
            }
        }
        for list in &mut incompat {
            list.sort_unstable();
        }
        PolymerIndex {
            n_vertices: p,
            power: 1,
            decay_slope: if decay_slope.is_finite() {
                decay_slope
            } else {
                1.0
            },
            size_cap,
            label: "abstract".into(),
            polymers,
            incompat,
        }
    }

    /// `p` pairwise incompatible unit polymers of weight `w`.
    pub fn mutually_incompatible(p: usize, w: f64) -> PolymerIndex {
        let pairs: Vec<_> = (0..p)
            .flat_map(|i| (i + 1..p).map(move |j| (i, j)))
            .collect();
        PolymerIndex::from_parts(vec![AbstractPolymer::unit(w); p], &pairs)
    }

    /// Sub-index on the polymers selected by `keep`, preserving order.
    pub fn restrict(&self, keep: impl Fn(&Polymer) -> bool) -> (PolymerIndex, Vec<usize>) {
        let ids: Vec<usize> = (0..self.len())
            .filter(|&i| keep(&self.polymers[i]))
            .collect();
        let mut remap = vec![usize::MAX; self.len()];
        for (new, &old) in ids.iter().enumerate() {
            remap[old] = new;
        }
        let incompat = ids
            .iter()
            .map(|&old| {
                self.incompat[old]
                    .iter()
                    .filter_map(|&j| (remap[j] != usize::MAX).then_some(remap[j]))
                    .collect()
            })
            .collect();
        let sub = PolymerIndex {
            n_vertices: self.n_vertices,
            power: self.power,
            decay_slope: self.decay_slope,
            size_cap: self.size_cap,
            label: self.label.clone(),
            polymers: ids.iter().map(|&i| self.polymers[i].clone()).collect(),
            incompat,
        };
        (sub, ids)
    }

    pub fn len(&self) -> usize {
        self.polymers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polymers.is_empty()
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn power(&self) -> usize {
        self.power
    }

    pub fn decay_slope(&self) -> f64 {
        self.decay_slope
    }

    pub fn size_cap(&self) -> usize {
        self.size_cap
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn polymers(&self) -> &[Polymer] {
        &self.polymers
    }

    pub fn polymer(&self, id: usize) -> &Polymer {
        &self.polymers[id]
    }

    /// Ids incompatible with `id`, excluding `id` itself.
    pub fn incompatible(&self, id: usize) -> &[usize] {
        &self.incompat[id]
    }

    pub fn are_incompatible(&self, a: usize, b: usize) -> bool {
        a == b || self.incompat[a].binary_search(&b).is_ok()
    }

    /// Exact weights for every polymer, if the model supplied them.
    pub fn exact_weights(&self) -> Option<Vec<BigRational>> {
        self.polymers
            .iter()
            .map(|p| p.exact_weight.clone())
            .collect()
    }
}

fn incompatibility(g: &Graph, polymers: &[Polymer], k: usize) -> Vec<Vec<usize>> {
    let mut containing = vec![Vec::new(); g.n()];
    for (i, p) in polymers.iter().enumerate() {
        for v in p.vertices.iter() {
            containing[v].push(i);
        }
    }
    polymers
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            let ball = g.ball(&p.vertices, k);
            let mut out: Vec<usize> = ball
                .iter()
                .flat_map(|v| containing[v].iter().copied())
                .filter(|&j| j != i)
                .collect();
            out.sort_unstable();
            out.dedup();
            out
        })
        .collect()
}

/// Convenience wrapper for [`PolymerIndex::build`].
pub fn enumerate_polymers(
    g: &Graph,
    model: &dyn PolymerModel,
    size_cap: usize,
) -> Result<PolymerIndex> {
    PolymerIndex::build(g, model, size_cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    /// Connected sets of one side of a bipartite graph in `G²`, with
    /// `2|S| ≤ |side|` and weight `1`.
    struct SideModel;

    impl PolymerModel for SideModel {
        fn label(&self) -> String {
            "side".into()
        }
        fn power(&self) -> usize {
            2
        }
        fn allowed(&self, g: &Graph) -> VertexSet {
            g.sides().unwrap().even().clone()
        }
        fn max_polymer_size(&self, g: &Graph) -> usize {
            g.sides().unwrap().even().len() / 2
        }
        fn log_weight(&self, _g: &Graph, _s: &VertexSet) -> Result<Option<f64>> {
            Ok(Some(0.0))
        }
        fn decay(&self, _g: &Graph, s: &VertexSet) -> f64 {
            s.len() as f64
        }
        fn decay_slope(&self, _g: &Graph) -> f64 {
            1.0
        }
    }

    #[test]
    fn k33_even_side_singletons() {
        let g = named::complete_bipartite(3, 3);
        let idx = PolymerIndex::build(&g, &SideModel, 3).unwrap();
        assert_eq!(idx.len(), 3);
        for i in 0..3 {
            assert_eq!(idx.polymer(i).size, 1);
            assert_eq!(idx.incompatible(i).len(), 2);
        }
    }

    #[test]
    fn c8_even_side_compatibility() {
        // Even side of C8 is {1,3,5,7}; in G² it is a 4-cycle.
        let g = named::cycle(8).require_bipartition().unwrap();
        let idx = PolymerIndex::build(&g, &SideModel, 8).unwrap();
        // 4 singletons + 4 adjacent pairs.
        assert_eq!(idx.len(), 8);
        let singles: Vec<_> = (0..4).collect();
        assert!(idx.are_incompatible(singles[0], singles[1]));
        // {1} and {5} are at distance 4.
        assert!(!idx.are_incompatible(0, 2));
    }

    #[test]
    fn restrict_remaps_ids() {
        let idx = PolymerIndex::mutually_incompatible(4, 0.1);
        let (sub, ids) = idx.restrict(|p| p.min_vertex % 2 == 0);
        assert_eq!(ids, vec![0, 2]);
        assert_eq!(sub.incompatible(0), &[1]);
    }
}
