//! Cluster enumeration. A cluster is a multiset of polymers whose
//! incompatibility graph (copies of one polymer are mutually incompatible) is
//! connected. Each is produced once: the distinct ids form a connected set in
//! the incompatibility graph rooted at its minimum id, and multiplicities are
//! enumerated on top.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::ursell::{factorial, log_abs_and_sign, Blowup};
use super::PolymerIndex;
use crate::error::{Error, Result};
use crate::par::prelude::*;

/// Default cap on the number of clusters a single enumeration may emit.
pub const DEFAULT_CLUSTER_BUDGET: usize = 20_000_000;

/// Distinct polymers per cluster are limited by the `u32` type masks.
const MAX_DISTINCT: usize = 32;

#[derive(Debug, Clone, Copy)]
pub struct ClusterLimits {
    /// Clusters with `g(Γ) < m` are kept.
    pub m: f64,
    /// Upper bound on `|Γ| = Σ m_γ|γ|`.
    pub size_bound: usize,
    pub budget: usize,
}

impl ClusterLimits {
    /// `size_bound = ⌈m/ρ⌉`, enough since `g(Γ) ≥ ρ|Γ|`.
    pub fn for_index(index: &PolymerIndex, m: f64) -> Self {
        let rho = index.decay_slope();
        let size_bound = if rho > 0.0 && m.is_finite() {
            ((m / rho) * (1.0 + 1e-12)).ceil().max(0.0) as usize
        } else {
            usize::MAX
        };
        ClusterLimits {
            m,
            size_bound,
            budget: DEFAULT_CLUSTER_BUDGET,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Cluster {
    /// Distinct polymer ids, ascending.
    pub ids: Vec<usize>,
    pub mults: Vec<u32>,
    pub total_size: usize,
    pub total_g: f64,
    /// `U(H(Γ))` of the blown-up incompatibility graph.
    pub raw_u: BigInt,
    /// `U(H(Γ)) / ∏ m_γ!`.
    pub ursell: BigRational,
    /// `Σ m_γ ln w_γ`.
    pub log_weight_sum: f64,
}

#[derive(Serialize)]
struct ClusterDump<'a> {
    ids: &'a [usize],
    mults: &'a [u32],
    #[serde(rename = "U_num")]
    u_num: String,
    #[serde(rename = "U_den")]
    u_den: String,
    term: f64,
}

impl Cluster {
    pub fn order(&self) -> u32 {
        self.mults.iter().sum()
    }

    /// `(U/∏m!)·∏ w^m`, assembled in log space.
    pub fn term(&self) -> f64 {
        if self.ursell.is_zero() {
            return 0.0;
        }
        let (log_abs, sign) = log_abs_and_sign(&self.ursell);
        sign * (log_abs + self.log_weight_sum).exp()
    }

    /// Exact term from exact polymer weights.
    pub fn exact_term(&self, weights: &[BigRational]) -> BigRational {
        let mut t = self.ursell.clone();
        for (&id, &m) in self.ids.iter().zip(&self.mults) {
            t *= num_traits::pow(weights[id].clone(), m as usize);
        }
        t
    }

    /// JSON record `{ids, mults, U_num, U_den, term}`; the `U` fields hold the
    /// reduced fraction `U/∏m!`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ClusterDump {
            ids: &self.ids,
            mults: &self.mults,
            u_num: self.ursell.numer().to_string(),
            u_den: self.ursell.denom().to_string(),
            term: self.term(),
        })
        .expect("cluster dump is serialisable")
    }
}

/// Folds the clusters rooted at each polymer id into one accumulator per
/// root, in parallel over roots; results come back in root order.
pub fn for_each_cluster<R, I, F>(
    index: &PolymerIndex,
    limits: ClusterLimits,
    init: I,
    fold: F,
) -> Result<Vec<R>>
where
    R: Send,
    I: Fn() -> R + Sync,
    F: Fn(&mut R, &Cluster) + Sync,
{
    let emitted = AtomicUsize::new(0);
    let over = AtomicBool::new(false);
    let out: Vec<R> = (0..index.len())
        .into_par_iter()
        .map(|root| {
            let mut acc = init();
            if !over.load(Ordering::Relaxed) {
                let mut walk = RootWalk {
                    index,
                    limits,
                    root,
                    blocked: vec![false; index.len()],
                    set: Vec::new(),
                    emitted: &emitted,
                    over: &over,
                };
                walk.run(&mut |c| fold(&mut acc, c));
            }
            acc
        })
        .collect();
    if over.load(Ordering::Relaxed) {
        return Err(Error::BudgetExceeded(limits.budget));
    }
    Ok(out)
}

/// Every cluster with `g(Γ) < m` and `|Γ| ≤ size_bound`, ordered by root id.
pub fn enumerate_clusters(index: &PolymerIndex, m: f64, size_bound: usize) -> Result<Vec<Cluster>> {
    let limits = ClusterLimits {
        size_bound,
        ..ClusterLimits::for_index(index, m)
    };
    let per_root = for_each_cluster(index, limits, Vec::new, |v: &mut Vec<Cluster>, c| {
        v.push(c.clone())
    })?;
    Ok(per_root.into_iter().flatten().collect())
}

struct RootWalk<'a> {
    index: &'a PolymerIndex,
    limits: ClusterLimits,
    root: usize,
    blocked: Vec<bool>,
    set: Vec<usize>,
    emitted: &'a AtomicUsize,
    over: &'a AtomicBool,
}

impl RootWalk<'_> {
    fn run(&mut self, visit: &mut dyn FnMut(&Cluster)) {
        let p = self.index.polymer(self.root);
        if p.decay >= self.limits.m || p.size > self.limits.size_bound {
            return;
        }
        self.blocked[self.root] = true;
        self.set.push(self.root);
        let frontier = self.fresh_neighbours(self.root);
        self.grow(frontier, p.decay, p.size, visit);
    }

    fn fresh_neighbours(&mut self, id: usize) -> Vec<usize> {
        let fresh: Vec<usize> = self
            .index
            .incompatible(id)
            .iter()
            .copied()
            .filter(|&j| j > self.root && !self.blocked[j])
            .collect();
        for &j in &fresh {
            self.blocked[j] = true;
        }
        fresh
    }

    fn grow(
        &mut self,
        mut frontier: Vec<usize>,
        g_sum: f64,
        size_sum: usize,
        visit: &mut dyn FnMut(&Cluster),
    ) {
        self.emit_multiplicities(g_sum, size_sum, visit);
        if self.set.len() == MAX_DISTINCT {
            return;
        }
        while let Some(u) = frontier.pop() {
            if self.over.load(Ordering::Relaxed) {
                return;
            }
            let p = self.index.polymer(u);
            // Supersets containing `u` only grow g and size, so skipping `u`
            // here is the exclude branch for the whole subtree.
            if g_sum + p.decay >= self.limits.m || size_sum + p.size > self.limits.size_bound {
                continue;
            }
            self.set.push(u);
            let fresh = self.fresh_neighbours(u);
            let mut next = frontier.clone();
            next.extend_from_slice(&fresh);
            self.grow(next, g_sum + p.decay, size_sum + p.size, visit);
            for &j in &fresh {
                self.blocked[j] = false;
            }
            self.set.pop();
        }
    }

    fn emit_multiplicities(
        &mut self,
        g_sum: f64,
        size_sum: usize,
        visit: &mut dyn FnMut(&Cluster),
    ) {
        let mut ids = self.set.clone();
        ids.sort_unstable();
        let types: Vec<u32> = ids
            .iter()
            .map(|&a| {
                ids.iter()
                    .enumerate()
                    .filter(|&(_, &b)| b != a && self.index.are_incompatible(a, b))
                    .fold(0u32, |m, (j, _)| m | 1 << j)
            })
            .collect();
        let mut blowup = Blowup::new(&types);
        let mut mults = vec![1u32; ids.len()];
        self.multiplicities(&ids, &mut mults, 0, g_sum, size_sum, &mut blowup, visit);
    }

    #[allow(clippy::too_many_arguments)]
    fn multiplicities(
        &self,
        ids: &[usize],
        mults: &mut Vec<u32>,
        pos: usize,
        g_sum: f64,
        size_sum: usize,
        blowup: &mut Blowup<'_>,
        visit: &mut dyn FnMut(&Cluster),
    ) {
        if pos == ids.len() {
            if self.emitted.fetch_add(1, Ordering::Relaxed) >= self.limits.budget {
                self.over.store(true, Ordering::Relaxed);
                return;
            }
            visit(&self.assemble(ids, mults, g_sum, size_sum, blowup));
            return;
        }
        let p = self.index.polymer(ids[pos]);
        let (mut g, mut s) = (g_sum, size_sum);
        loop {
            self.multiplicities(ids, mults, pos + 1, g, s, blowup, visit);
            if self.over.load(Ordering::Relaxed) {
                return;
            }
            g += p.decay;
            s += p.size;
            if g >= self.limits.m || s > self.limits.size_bound {
                break;
            }
            mults[pos] += 1;
        }
        mults[pos] = 1;
    }

    fn assemble(
        &self,
        ids: &[usize],
        mults: &[u32],
        g_sum: f64,
        size_sum: usize,
        blowup: &mut Blowup<'_>,
    ) -> Cluster {
        let raw_u = blowup.value(mults);
        let denom = mults
            .iter()
            .fold(BigInt::one(), |acc, &m| acc * factorial(m as usize));
        let log_weight_sum = ids
            .iter()
            .zip(mults)
            .map(|(&id, &m)| m as f64 * self.index.polymer(id).log_weight)
            .sum();
        Cluster {
            ids: ids.to_vec(),
            mults: mults.to_vec(),
            total_size: size_sum,
            total_g: g_sum,
            ursell: BigRational::new(raw_u.clone(), denom),
            raw_u,
            log_weight_sum,
        }
    }
}
