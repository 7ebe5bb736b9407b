//! Model instantiations: each reduces a spin system to one or more polymer
//! models around its ground states and combines the truncated expansions.

mod coloring;
mod hardcore;
mod potts;

use serde::Serialize;

use crate::error::Result;
use crate::graph::{expansion_exact, Graph, VertexSet, DEFAULT_EXACT_CAP};
use crate::polymer::{
    kp_empirical, truncated_expansion, AnalyticKp, KpReport, KpStatus, PolymerIndex, PolymerModel,
    Truncation,
};

pub use coloring::{
    coloring_analytic_kp, coloring_brute_count, coloring_count, coloring_index,
    coloring_little_cap, coloring_weight, enumerate_patterns, extension_count, extensions,
    is_proper, CapMode, ColoringModel, ColoringParams, ColoringSampler, Pattern, DEFAULT_C,
    MAX_EXTENSION_VERTICES,
};
pub use hardcore::{
    hc_analytic_kp, hc_brute_coefficients, hc_count, hc_index, hc_random_analytic_kp, hc_size_cap,
    hc_tilde_exact, hc_tilde_log, hc_weight, HardCoreModel, HardCoreParams, HardCoreSampler,
    HardCoreVariant, SizeCap,
};
pub use potts::{
    potts_analytic_kp, potts_brute_histogram, potts_certified_count, potts_count, potts_index,
    potts_tilde_log, potts_weight, potts_weight_polynomial, potts_xi_polynomial, Laurent,
    PottsCertification, PottsModel, PottsParams, PottsSampler, CERTIFY_EPS, MAX_INNER_VERTICES,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Truncated cluster expansion around the ground states.
    Polymer,
    /// Exhaustive enumeration (the small-ε branch).
    Brute,
}

/// One sampler output: the ground state and polymers drawn, and the spin
/// configuration rebuilt from them.
#[derive(Debug, Clone, Serialize)]
pub struct Draw<T> {
    /// `None` on the exhaustive branch.
    pub ground_state: Option<String>,
    pub polymers: Vec<VertexSet>,
    pub reconstruction: T,
}

impl<T> Draw<T> {
    pub(crate) fn exhaustive(reconstruction: T) -> Self {
        Draw {
            ground_state: None,
            polymers: Vec::new(),
            reconstruction,
        }
    }
}

/// One polymer model of a pipeline: the expansion around a single ground
/// state, with its log prefactor (`ln` of the ground-state weight).
#[derive(Debug, Clone, Serialize)]
pub struct BranchReport {
    pub label: String,
    pub log_prefactor: f64,
    pub truncation: Truncation,
    pub polymer_count: usize,
    pub size_cap: usize,
    pub kp: KpReport,
}

impl BranchReport {
    /// `ln` of the branch's contribution, prefactor times `exp(T_m)`.
    pub fn log_value(&self) -> f64 {
        self.log_prefactor + self.truncation.value
    }
}

/// An ε-relative approximation of `ln Z` with its certification trail.
#[derive(Debug, Clone, Serialize)]
pub struct ApproxResult {
    pub model: String,
    pub log_z: f64,
    pub eps: f64,
    pub method: Method,
    /// `None` on the brute-force branch.
    pub kp_status: Option<KpStatus>,
    pub analytic_kp: Option<AnalyticKp>,
    pub alpha: Option<f64>,
    /// Which stated inequality gates the run.
    pub binding_threshold: Option<String>,
    pub truncation_m: Option<f64>,
    pub cluster_count: usize,
    pub polymer_count: usize,
    pub branches: Vec<BranchReport>,
    pub warnings: Vec<String>,
}

impl ApproxResult {
    /// `rule` is the ε condition that selected the exhaustive branch.
    pub(crate) fn brute(model: &str, log_z: f64, eps: f64, rule: &str) -> Self {
        ApproxResult {
            model: model.into(),
            log_z,
            eps,
            method: Method::Brute,
            kp_status: None,
            analytic_kp: None,
            alpha: None,
            binding_threshold: Some(rule.into()),
            truncation_m: None,
            cluster_count: 0,
            polymer_count: 0,
            branches: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub(crate) fn polymer(
        model: &str,
        log_z: f64,
        eps: f64,
        m: f64,
        analytic: Option<AnalyticKp>,
        branches: Vec<BranchReport>,
    ) -> Self {
        let status = combined_status(analytic.as_ref(), &branches);
        let mut warnings = Vec::new();
        match status {
            KpStatus::Violated => warnings.push(
                "empirical Kotecký–Preiss check fails on an enumerated polymer; the ε guarantee does not apply".into(),
            ),
            KpStatus::VerifiedToCutoff => warnings.push(
                "analytic threshold not met; Kotecký–Preiss verified only up to the enumerated polymer size".into(),
            ),
            _ => {}
        }
        if let Some(a) = &analytic {
            if a.at_threshold() {
                warnings.push(format!(
                    "{} sits exactly on its threshold {}",
                    a.parameter, a.inequality
                ));
            }
        }
        ApproxResult {
            model: model.into(),
            log_z,
            eps,
            method: Method::Polymer,
            kp_status: Some(status),
            binding_threshold: analytic.as_ref().map(|a| a.inequality.clone()),
            analytic_kp: analytic,
            alpha: None,
            truncation_m: Some(m),
            cluster_count: branches.iter().map(|b| b.truncation.cluster_count).sum(),
            polymer_count: branches.iter().map(|b| b.polymer_count).sum(),
            branches,
            warnings,
        }
    }
}

/// Analytic certification wins; otherwise the weakest empirical verdict over
/// the branches.
fn combined_status(analytic: Option<&AnalyticKp>, branches: &[BranchReport]) -> KpStatus {
    if analytic.is_some_and(|a| a.threshold_ok) {
        return KpStatus::Analytic;
    }
    if branches.iter().any(|b| b.kp.status == KpStatus::Violated) {
        KpStatus::Violated
    } else if branches.is_empty() {
        KpStatus::Unchecked
    } else {
        KpStatus::VerifiedToCutoff
    }
}

/// Polymer size beyond which no polymer can enter a cluster with
/// `g(Γ) < m`, given `g(γ) = ρ|γ|`.
pub(crate) fn truncation_size_cap(m: f64, rho: f64) -> usize {
    if !(rho > 0.0) || !m.is_finite() {
        return usize::MAX;
    }
    (m / rho).ceil().max(0.0) as usize
}

pub(crate) fn run_branch(
    g: &Graph,
    model: &dyn PolymerModel,
    m: f64,
    log_prefactor: f64,
    per_vertex_target: f64,
) -> Result<BranchReport> {
    let cap = truncation_size_cap(m, model.decay_slope(g));
    let index = PolymerIndex::build(g, model, cap)?;
    let truncation = truncated_expansion(&index, m)?;
    Ok(BranchReport {
        label: model.label(),
        log_prefactor,
        truncation,
        polymer_count: index.len(),
        size_cap: index.size_cap(),
        kp: kp_empirical(&index, per_vertex_target),
    })
}

/// Exact `h(G)` when the graph is small enough, else `None`.
pub(crate) fn measured_edge_expansion(g: &Graph) -> Option<f64> {
    expansion_exact(g, DEFAULT_EXACT_CAP)
        .ok()
        .and_then(|r| r.edge_expansion.map(|x| x.to_f64()))
}

/// Exact bipartite `α` when the graph is small enough, else `None`.
pub(crate) fn measured_bipartite_alpha(g: &Graph) -> Option<f64> {
    expansion_exact(g, DEFAULT_EXACT_CAP)
        .ok()
        .and_then(|r| r.bipartite_alpha)
}

pub(crate) fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(crate::Error::InvalidParameter(format!(
            "eps must be positive and finite, got {eps}"
        )))
    }
}
