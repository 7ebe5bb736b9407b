//! Self-reducibility sampler for the polymer measure
//! `ν(Γ) = ∏_{γ∈Γ} w_γ / Ξ`.
//!
//! Vertices are visited in ascending order. Step `j` considers the live
//! polymers whose minimum vertex is `v_j`; they pairwise share `v_j`, so at
//! most one is chosen. Given the current universe `C`,
//! `Pr[γ] = w_γ Ξ(C ∖ N[γ]) / Ξ(C)`, where `N[γ]` is `γ` together with every
//! polymer incompatible with it. With the truncated expansion,
//! `ln Ξ(C) − ln Ξ(C ∖ N[γ])` is the sum of the live cluster terms that touch
//! `N[γ]`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polymer::{for_each_cluster, ClusterLimits, PolymerIndex};
use crate::polymer::{xi::XiSolver, LogValue, DEFAULT_XI_STATES};

/// Excess selection mass that is renormalised instead of rejected.
pub const MASS_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum XiMethod {
    /// Restricted partition functions from the truncated cluster expansion.
    Truncated,
    /// Restricted partition functions computed exactly.
    Exact,
}

/// One independent RNG stream per draw.
pub fn draw_rng(seed: u64, draw: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(draw);
    rng
}

/// Truncation for the polymer universe: polymers with `g(γ) < ln(2n/ε)`.
pub fn universe_cutoff(n: usize, eps: f64) -> f64 {
    (2.0 * n.max(1) as f64 / eps).ln()
}

/// Per-step cluster cutoff `ln(4n²/ε)`, i.e. error `ε/(4n)` per restricted
/// partition function.
pub fn step_cutoff(n: usize, eps: f64) -> f64 {
    let n = n.max(1) as f64;
    (4.0 * n * n / eps).ln()
}

struct ClusterTerm {
    ids: Vec<usize>,
    term: f64,
}

/// Prepared sampler over an index. Ids returned refer to the original index.
pub struct PolymerSampler {
    eligible: PolymerIndex,
    original_ids: Vec<usize>,
    method: XiMethod,
    m: f64,
    m_step: f64,
    by_vertex: Vec<Vec<usize>>,
    clusters: Vec<ClusterTerm>,
    clusters_of: Vec<Vec<usize>>,
}

impl PolymerSampler {
    pub fn new(index: &PolymerIndex, eps: f64, method: XiMethod) -> Result<Self> {
        if !(eps > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "eps must be positive, got {eps}"
            )));
        }
        let n = index.n_vertices();
        let m = universe_cutoff(n, eps);
        let m_step = step_cutoff(n, eps);
        let (eligible, original_ids) = index.restrict(|p| p.decay < m);
        let mut by_vertex = vec![Vec::new(); n];
        for (i, p) in eligible.polymers().iter().enumerate() {
            by_vertex[p.min_vertex].push(i);
        }
        let mut clusters = Vec::new();
        let mut clusters_of = vec![Vec::new(); eligible.len()];
        if method == XiMethod::Truncated {
            let per_root = for_each_cluster(
                &eligible,
                ClusterLimits::for_index(&eligible, m_step),
                Vec::new,
                |acc: &mut Vec<ClusterTerm>, c| {
                    acc.push(ClusterTerm {
                        ids: c.ids.clone(),
                        term: c.term(),
                    })
                },
            )?;
            clusters = per_root.into_iter().flatten().collect();
            for (ci, c) in clusters.iter().enumerate() {
                for &id in &c.ids {
                    clusters_of[id].push(ci);
                }
            }
        }
        Ok(PolymerSampler {
            eligible,
            original_ids,
            method,
            m,
            m_step,
            by_vertex,
            clusters,
            clusters_of,
        })
    }

    pub fn truncation(&self) -> f64 {
        self.m
    }

    pub fn step_truncation(&self) -> f64 {
        self.m_step
    }

    pub fn cluster_count(&self) -> usize {
        self.clusters.len()
    }

    pub fn eligible_count(&self) -> usize {
        self.eligible.len()
    }

    /// Draw number `draw` of the stream seeded by `seed`.
    pub fn sample(&self, seed: u64, draw: u64) -> Result<Vec<usize>> {
        self.sample_with(&mut draw_rng(seed, draw))
    }

    pub fn sample_with<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Vec<usize>> {
        let p = self.eligible.len();
        let mut alive = vec![true; p];
        let mut dead_members = vec![0u32; self.clusters.len()];
        let mut stamp = vec![0u32; self.clusters.len()];
        let mut token = 0u32;
        let weights: Vec<LogValue> = self
            .eligible
            .polymers()
            .iter()
            .map(|q| LogValue(q.log_weight))
            .collect();
        let mut solver = (self.method == XiMethod::Exact)
            .then(|| XiSolver::new(&self.eligible, &weights, DEFAULT_XI_STATES));
        let mut chosen = Vec::new();

        for (v, owned) in self.by_vertex.iter().enumerate() {
            let live: Vec<usize> = owned.iter().copied().filter(|&i| alive[i]).collect();
            if live.is_empty() {
                continue;
            }
            let mut probs = Vec::with_capacity(live.len());
            let log_xi_here = match solver.as_mut() {
                Some(s) => Some(s.solve(&alive)?.0),
                None => None,
            };
            for &g in &live {
                let log_ratio = match (solver.as_mut(), log_xi_here) {
                    (Some(s), Some(full)) => {
                        let mut rest = alive.clone();
                        rest[g] = false;
                        for &j in self.eligible.incompatible(g) {
                            rest[j] = false;
                        }
                        full - s.solve(&rest)?.0
                    }
                    _ => {
                        token += 1;
                        let mut sum = 0.0;
                        let closed =
                            std::iter::once(g).chain(self.eligible.incompatible(g).iter().copied());
                        for j in closed.filter(|&j| alive[j]) {
                            for &c in &self.clusters_of[j] {
                                if stamp[c] != token && dead_members[c] == 0 {
                                    stamp[c] = token;
                                    sum += self.clusters[c].term;
                                }
                            }
                        }
                        sum
                    }
                };
                probs.push((self.eligible.polymer(g).log_weight - log_ratio).exp());
            }
            let mass: f64 = probs.iter().sum();
            if !(mass <= 1.0 + MASS_TOLERANCE) {
                return Err(Error::ProbabilityMass { vertex: v, mass });
            }
            let scale = if mass > 1.0 { 1.0 / mass } else { 1.0 };
            let u: f64 = rng.random();
            let mut acc = 0.0;
            let mut pick = None;
            for (k, &pr) in probs.iter().enumerate() {
                acc += pr * scale;
                if u < acc {
                    pick = Some(live[k]);
                    break;
                }
            }
            let mut kill = |i: usize, alive: &mut Vec<bool>| {
                if alive[i] {
                    alive[i] = false;
                    for &c in &self.clusters_of[i] {
                        dead_members[c] += 1;
                    }
                }
            };
            for &g in &live {
                kill(g, &mut alive);
            }
            if let Some(g) = pick {
                for &j in self.eligible.incompatible(g) {
                    kill(j, &mut alive);
                }
                chosen.push(g);
            }
        }
        debug_assert!(chosen.iter().enumerate().all(|(a, &x)| chosen[a + 1..]
            .iter()
            .all(|&y| !self.eligible.are_incompatible(x, y))));
        Ok(chosen.into_iter().map(|i| self.original_ids[i]).collect())
    }
}

/// One draw from `ν` at total-variation error `eps`.
pub fn sample_config(index: &PolymerIndex, eps: f64, seed: u64) -> Result<Vec<usize>> {
    PolymerSampler::new(index, eps, XiMethod::Truncated)?.sample(seed, 0)
}

/// True when the ids are pairwise compatible in `index`.
pub fn is_compatible_family(index: &PolymerIndex, ids: &[usize]) -> bool {
    ids.iter()
        .enumerate()
        .all(|(a, &x)| ids[a + 1..].iter().all(|&y| !index.are_incompatible(x, y)))
}
