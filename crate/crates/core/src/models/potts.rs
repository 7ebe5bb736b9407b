//! Ferromagnetic Potts model at low temperature.
//!
//! Ground states are the `q` monochromatic colourings. Fixing the colour `r`,
//! a polymer is a connected set `γ` with `|γ| ≤ n/2` of vertices not coloured
//! `r`, weighted by `w_γ = e^{−β|∇γ|} Z_{G[γ],q−1}(β)`, where `∇γ` is the set
//! of edges incident to `γ`. Then `Z ≈ q e^{β e(G)} Ξ`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{
    check_eps, measured_edge_expansion, run_branch, truncation_size_cap, ApproxResult, Draw,
};
use crate::error::{Error, Result};
use crate::graph::{expansion_spectral, ExpansionReport, Graph, VertexSet};
use crate::numeric::log_sum_exp;
use crate::polymer::{
    truncation_cutoff, xi_exact_with, xi_log, AnalyticKp, PolymerIndex, PolymerModel, XiAlgebra,
    DEFAULT_XI_STATES,
};
use crate::sampler::{draw_rng, universe_cutoff, PolymerSampler, XiMethod};

/// Largest polymer whose inner partition function is summed exhaustively.
pub const MAX_INNER_VERTICES: usize = 20;

/// Slack in the spectral check `λ(G) ≤ 2√(Δ−1) + 1/100`.
pub const CERTIFY_EPS: f64 = 0.01;

/// Cap on `q^{n−1}` for whole-graph enumeration.
const BRUTE_ASSIGNMENTS: f64 = (1u64 << 30) as f64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PottsParams {
    pub q: usize,
    pub beta: f64,
    /// Edge expansion `α` with `|∂ₑS| ≥ α|S|` for `|S| ≤ n/2`. Measured
    /// exactly when absent and the graph is small.
    pub alpha: Option<f64>,
}

impl PottsParams {
    pub fn new(q: usize, beta: f64) -> Self {
        PottsParams {
            q,
            beta,
            alpha: None,
        }
    }

    pub fn with_alpha(self, alpha: f64) -> Self {
        PottsParams {
            alpha: Some(alpha),
            ..self
        }
    }

    fn validate(&self) -> Result<()> {
        if self.q < 2 || self.q > u8::MAX as usize {
            return Err(Error::InvalidParameter(format!(
                "q must lie in 2..=255, got {}",
                self.q
            )));
        }
        if !(self.beta > 0.0 && self.beta.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "beta must be positive, got {}",
                self.beta
            )));
        }
        if let Some(a) = self.alpha {
            if !(a > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "alpha must be positive, got {a}"
                )));
            }
        }
        Ok(())
    }
}

/// Induced subgraph on an ordered vertex list, with each vertex's
/// neighbours among the earlier ones.
struct Induced {
    vertices: Vec<usize>,
    earlier: Vec<Vec<usize>>,
}

impl Induced {
    fn new(g: &Graph, vertices: Vec<usize>) -> Self {
        let mut pos = vec![usize::MAX; g.n()];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let earlier = vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                g.neighbors(v)
                    .iter()
                    .filter_map(|&w| (pos[w] < i).then_some(pos[w]))
                    .collect()
            })
            .collect();
        Induced { vertices, earlier }
    }

    fn edge_count(&self) -> usize {
        self.earlier.iter().map(Vec::len).sum()
    }

    /// Depth-first walk over colourings; `visit(colouring, mono)` returns
    /// `false` to stop. With `fix_first`, vertex 0 is pinned to colour 0.
    fn walk(&self, colours: usize, fix_first: bool, visit: &mut dyn FnMut(&[u8], usize) -> bool) {
        let mut col = vec![0u8; self.vertices.len()];
        self.walk_from(0, 0, colours, fix_first, &mut col, visit);
    }

    fn walk_from(
        &self,
        i: usize,
        mono: usize,
        colours: usize,
        fix_first: bool,
        col: &mut [u8],
        visit: &mut dyn FnMut(&[u8], usize) -> bool,
    ) -> bool {
        if i == col.len() {
            return visit(col, mono);
        }
        let top = if fix_first && i == 0 { 1 } else { colours };
        for c in 0..top {
            col[i] = c as u8;
            let extra = self.earlier[i]
                .iter()
                .filter(|&&j| col[j] == c as u8)
                .count();
            if !self.walk_from(i + 1, mono + extra, colours, fix_first, col, visit) {
                return false;
            }
        }
        true
    }

    /// Number of colourings with `k` monochromatic edges, for each `k`.
    fn histogram(&self, colours: usize) -> Vec<u64> {
        let mut hist = vec![0u64; self.edge_count() + 1];
        if self.vertices.is_empty() {
            hist[0] = 1;
            return hist;
        }
        self.walk(colours, true, &mut |_, k| {
            hist[k] += 1;
            true
        });
        for h in &mut hist {
            *h *= colours as u64;
        }
        hist
    }

    /// Exact draw from `μ_{H,colours,β}`.
    fn sample<R: Rng + ?Sized>(&self, colours: usize, beta: f64, rng: &mut R) -> Vec<u8> {
        let hist = self.histogram(colours);
        let top = hist.len() - 1;
        let total: f64 = hist
            .iter()
            .enumerate()
            .map(|(k, &c)| c as f64 * (beta * (k as f64 - top as f64)).exp())
            .sum();
        let mut target = rng.random::<f64>() * total;
        let mut out = None;
        let mut last = Vec::new();
        self.walk(colours, false, &mut |col, k| {
            target -= (beta * (k as f64 - top as f64)).exp();
            last = col.to_vec();
            if target < 0.0 {
                out = Some(col.to_vec());
                false
            } else {
                true
            }
        });
        out.unwrap_or(last)
    }
}

fn log_from_histogram(hist: &[u64], beta: f64) -> f64 {
    let terms: Vec<f64> = hist
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(k, &c)| (c as f64).ln() + beta * k as f64)
        .collect();
    log_sum_exp(&terms)
}

fn inner_histogram(g: &Graph, set: &VertexSet, colours: usize) -> Result<Vec<u64>> {
    if set.len() > MAX_INNER_VERTICES {
        return Err(Error::TooLarge {
            what: "polymer for the exhaustive inner sum",
            size: set.len(),
            cap: MAX_INNER_VERTICES,
        });
    }
    Ok(Induced::new(g, set.to_vec()).histogram(colours))
}

/// `ln w_γ = −β|∇γ| + ln Z_{G[γ],q−1}(β)`.
pub fn potts_weight(g: &Graph, set: &VertexSet, params: &PottsParams) -> Result<f64> {
    let hist = inner_histogram(g, set, params.q - 1)?;
    let incident = g.boundaries(set).incident_edges;
    Ok(log_from_histogram(&hist, params.beta) - params.beta * incident as f64)
}

/// `w_γ` as a Laurent polynomial in `x = e^β`.
pub fn potts_weight_polynomial(g: &Graph, set: &VertexSet, q: usize) -> Result<Laurent> {
    let hist = inner_histogram(g, set, q - 1)?;
    let incident = g.boundaries(set).incident_edges as i64;
    Ok(Laurent::from_coefficients(
        -incident,
        hist.into_iter().map(BigInt::from).collect(),
    ))
}

/// Colouring counts by number of monochromatic edges over all of `G`.
pub fn potts_brute_histogram(g: &Graph, q: usize) -> Result<Vec<u64>> {
    let n = g.n();
    if (q as f64).powi(n.saturating_sub(1) as i32) > BRUTE_ASSIGNMENTS {
        return Err(Error::TooLarge {
            what: "Potts brute-force enumeration (vertices)",
            size: n,
            cap: (BRUTE_ASSIGNMENTS.ln() / (q as f64).ln()) as usize + 1,
        });
    }
    Ok(Induced::new(g, (0..n).collect()).histogram(q))
}

pub struct PottsModel {
    params: PottsParams,
}

impl PottsModel {
    pub fn new(params: PottsParams) -> Self {
        PottsModel { params }
    }
}

impl PolymerModel for PottsModel {
    fn label(&self) -> String {
        format!("potts(q={})", self.params.q)
    }

    fn power(&self) -> usize {
        1
    }

    fn allowed(&self, g: &Graph) -> VertexSet {
        g.all_vertices()
    }

    fn max_polymer_size(&self, g: &Graph) -> usize {
        g.n() / 2
    }

    fn log_weight(&self, g: &Graph, set: &VertexSet) -> Result<Option<f64>> {
        potts_weight(g, set, &self.params).map(Some)
    }

    fn decay(&self, _g: &Graph, set: &VertexSet) -> f64 {
        set.len() as f64
    }

    fn decay_slope(&self, _g: &Graph) -> f64 {
        1.0
    }
}

/// Polymers of size at most `size_cap` (and `n/2`).
pub fn potts_index(g: &Graph, params: &PottsParams, size_cap: usize) -> Result<PolymerIndex> {
    params.validate()?;
    PolymerIndex::build(g, &PottsModel::new(*params), size_cap)
}

/// `Ξ` over the full polymer universe as a Laurent polynomial in `x = e^β`.
pub fn potts_xi_polynomial(g: &Graph, q: usize) -> Result<Laurent> {
    let index = potts_index(g, &PottsParams::new(q, 1.0), usize::MAX)?;
    let weights = index
        .polymers()
        .iter()
        .map(|p| potts_weight_polynomial(g, &p.vertices, q))
        .collect::<Result<Vec<_>>>()?;
    xi_exact_with(&index, &weights, DEFAULT_XI_STATES)
}

/// `ln(q e^{β e(G)} Ξ)` with `Ξ` evaluated exactly over the full universe.
pub fn potts_tilde_log(g: &Graph, params: &PottsParams) -> Result<f64> {
    let index = potts_index(g, params, usize::MAX)?;
    Ok((params.q as f64).ln() + params.beta * g.edge_count() as f64 + xi_log(&index)?)
}

/// Closed-form condition `β ≥ (4 + 2 ln(qΔ))/α`, under which
/// `Σ_{γ∋v} w_γ e^{2|γ|} ≤ Σ_t ((q−1)Δ e^{3−αβ})^t ≤ 1/(Δ+1)`.
pub fn potts_analytic_kp(q: usize, delta: usize, alpha: f64, beta: f64) -> AnalyticKp {
    let d = delta as f64;
    let threshold = (4.0 + 2.0 * (q as f64 * d).ln()) / alpha;
    let base = (q as f64 - 1.0) * d * (3.0 - alpha * beta).exp();
    AnalyticKp::evaluate(
        "beta",
        beta,
        threshold,
        "beta >= (4 + 2 ln(q*Delta)) / alpha",
        base,
        1.0 / (d + 1.0),
    )
}

fn resolve_alpha(g: &Graph, params: &PottsParams, warnings: &mut Vec<String>) -> Option<f64> {
    if params.alpha.is_some() {
        return params.alpha;
    }
    match measured_edge_expansion(g) {
        Some(h) if h > 0.0 => {
            warnings.push(format!(
                "alpha not supplied; using the exact edge expansion h(G) = {h}"
            ));
            Some(h)
        }
        _ => {
            warnings.push("alpha not supplied and not measurable; analytic check skipped".into());
            None
        }
    }
}

/// ε-relative approximation of `ln Z_{G,q}(β)`.
pub fn potts_count(g: &Graph, params: &PottsParams, eps: f64) -> Result<ApproxResult> {
    params.validate()?;
    check_eps(eps)?;
    let n = g.n();
    if eps <= (-(n as f64) / 2.0).exp() {
        let hist = potts_brute_histogram(g, params.q)?;
        return Ok(ApproxResult::brute(
            "potts",
            log_from_histogram(&hist, params.beta),
            eps,
            "eps <= e^(-n/2)",
        ));
    }
    let mut warnings = Vec::new();
    let alpha = resolve_alpha(g, params, &mut warnings);
    let delta = g.max_degree();
    let analytic = alpha.map(|a| potts_analytic_kp(params.q, delta, a, params.beta));
    if let Some(a) = alpha {
        let lemma = 2.0 * (std::f64::consts::E * params.q as f64).ln() / a;
        if params.beta <= lemma {
            warnings.push(format!(
                "beta <= 2 ln(e*q)/alpha = {lemma}; the ground-state approximation is not guaranteed"
            ));
        }
    }
    let m = truncation_cutoff(n, eps / 2.0);
    let prefactor = (params.q as f64).ln() + params.beta * g.edge_count() as f64;
    let branch = run_branch(
        g,
        &PottsModel::new(*params),
        m,
        prefactor,
        1.0 / (delta as f64 + 1.0),
    )?;
    let mut result =
        ApproxResult::polymer("potts", branch.log_value(), eps, m, analytic, vec![branch]);
    result.alpha = alpha;
    warnings.append(&mut result.warnings);
    result.warnings = warnings;
    Ok(result)
}

/// Outcome of the spectral certification route for random regular graphs.
#[derive(Debug, Clone, Serialize)]
pub struct PottsCertification {
    pub expansion: ExpansionReport,
    pub delta: usize,
    pub spectral_ok: bool,
    /// `Δ/40` when certified.
    pub alpha: Option<f64>,
    pub beta: f64,
    pub beta_threshold: f64,
    pub beta_ok: bool,
    pub certified: bool,
    pub reason: Option<String>,
    pub result: Option<ApproxResult>,
}

/// Certifies `α = Δ/40` from `λ(G) ≤ 2√(Δ−1) + 1/100` and Cheeger's bound,
/// requires `β > 200 ln(qΔ)/Δ`, and only then counts. Not certifying is a
/// regular outcome.
pub fn potts_certified_count(
    g: &Graph,
    q: usize,
    beta: f64,
    eps: f64,
) -> Result<PottsCertification> {
    PottsParams::new(q, beta).validate()?;
    check_eps(eps)?;
    let delta = g.regular_degree().ok_or(Error::NotRegular)?;
    let expansion = expansion_spectral(g, CERTIFY_EPS)?;
    let spectral_ok = expansion.friedman_ok == Some(true) && delta >= 3;
    let d = delta as f64;
    let beta_threshold = 200.0 * (q as f64 * d).ln() / d;
    let beta_ok = beta >= beta_threshold * (1.0 - 1e-12);
    let certified = spectral_ok && beta_ok;
    let reason = if !spectral_ok {
        Some(if delta < 3 {
            "the spectral route needs degree at least 3".to_string()
        } else {
            format!(
                "lambda(G) = {} exceeds 2 sqrt(Delta-1) + {CERTIFY_EPS}",
                expansion.lambda_abs.unwrap_or(f64::NAN)
            )
        })
    } else if !beta_ok {
        Some(format!(
            "beta = {beta} is below 200 ln(q*Delta)/Delta = {beta_threshold}"
        ))
    } else {
        None
    };
    let mut cert = PottsCertification {
        alpha: spectral_ok.then_some(d / 40.0),
        expansion,
        delta,
        spectral_ok,
        beta,
        beta_threshold,
        beta_ok,
        certified,
        reason,
        result: None,
    };
    if certified {
        debug_assert!(cert.expansion.cheeger_lb.unwrap_or(0.0) >= d / 40.0);
        cert.result = Some(potts_count(
            g,
            &PottsParams::new(q, beta).with_alpha(d / 40.0),
            eps,
        )?);
    }
    Ok(cert)
}

/// Prepared approximate sampler for `μ_{G,q,β}`.
pub struct PottsSampler {
    graph: Graph,
    params: PottsParams,
    polymers: Option<(PolymerIndex, PolymerSampler)>,
}

impl PottsSampler {
    pub fn new(g: &Graph, params: &PottsParams, eps: f64, method: XiMethod) -> Result<Self> {
        params.validate()?;
        check_eps(eps)?;
        let n = g.n();
        let polymers = if eps <= (-(n as f64) / 2.0).exp() {
            potts_brute_histogram(g, params.q)?;
            None
        } else {
            let cap = truncation_size_cap(universe_cutoff(n, eps / 2.0), 1.0);
            let index = potts_index(g, params, cap)?;
            let sampler = PolymerSampler::new(&index, eps / 2.0, method)?;
            Some((index, sampler))
        };
        Ok(PottsSampler {
            graph: g.clone(),
            params: *params,
            polymers,
        })
    }

    pub fn is_brute(&self) -> bool {
        self.polymers.is_none()
    }

    /// Draw number `draw` of the stream seeded by `seed`; one colour per vertex.
    pub fn sample(&self, seed: u64, draw: u64) -> Result<Vec<u8>> {
        self.draw(seed, draw).map(|d| d.reconstruction)
    }

    pub fn draw(&self, seed: u64, draw: u64) -> Result<Draw<Vec<u8>>> {
        let mut rng = draw_rng(seed, draw);
        let g = &self.graph;
        let q = self.params.q;
        let Some((index, sampler)) = &self.polymers else {
            let colouring =
                Induced::new(g, (0..g.n()).collect()).sample(q, self.params.beta, &mut rng);
            return Ok(Draw::exhaustive(colouring));
        };
        let r = rng.random_range(0..q) as u8;
        let mut colouring = vec![r; g.n()];
        let mut polymers = Vec::new();
        for id in sampler.sample_with(&mut rng)? {
            let set = &index.polymer(id).vertices;
            let inner = Induced::new(g, set.to_vec());
            let local = inner.sample(q - 1, self.params.beta, &mut rng);
            for (&v, &c) in inner.vertices.iter().zip(&local) {
                colouring[v] = if c < r { c } else { c + 1 };
            }
            polymers.push(set.clone());
        }
        Ok(Draw {
            ground_state: Some(format!("colour {r}")),
            polymers,
            reconstruction: colouring,
        })
    }
}

/// Integer Laurent polynomial `Σ_i c_i x^{low+i}`, normalised so that the
/// extreme coefficients are non-zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Laurent {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn monomial(c: BigInt, exponent: i64) -> Self {
        Laurent::from_coefficients(exponent, vec![c])
    }

    pub fn from_coefficients(low: i64, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Laurent::zero();
        }
        coeffs.drain(..lead);
        Laurent {
            low: low + lead as i64,
            coeffs,
        }
    }

    /// Ordinary polynomial with `coeffs[k]` the coefficient of `x^k`.
    pub fn from_polynomial<T: Into<BigInt> + Clone>(coeffs: &[T]) -> Self {
        Laurent::from_coefficients(0, coeffs.iter().cloned().map(Into::into).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, exponent: i64) -> BigInt {
        let i = exponent - self.low;
        if i < 0 || i as usize >= self.coeffs.len() {
            BigInt::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// Lowest and highest exponents with a non-zero coefficient.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        (!self.is_zero()).then(|| (self.low, self.low + self.coeffs.len() as i64 - 1))
    }

    /// Multiplication by `c x^k`.
    pub fn scaled(&self, c: &BigInt, k: i64) -> Self {
        Laurent::from_coefficients(self.low + k, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `ln p(e^β)` for a polynomial with non-negative coefficients.
    pub fn ln_eval(&self, beta: f64) -> f64 {
        let terms: Vec<f64> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_positive())
            .map(|(i, c)| big_ln(c) + beta * (self.low + i as i64) as f64)
            .collect();
        log_sum_exp(&terms)
    }
}

fn big_ln(c: &BigInt) -> f64 {
    match c.to_f64() {
        Some(f) if f.is_finite() => f.ln(),
        _ => {
            let bits = c.bits();
            let shift = bits.saturating_sub(64);
            (c >> shift).to_f64().unwrap_or(f64::NAN).ln() + shift as f64 * std::f64::consts::LN_2
        }
    }
}

impl XiAlgebra for Laurent {
    fn one() -> Self {
        Laurent::monomial(BigInt::from(1), 0)
    }

    fn add(&self, other: &Self) -> Self {
        let (Some((a0, a1)), Some((b0, b1))) = (self.degree_range(), other.degree_range()) else {
            return if self.is_zero() {
                other.clone()
            } else {
                self.clone()
            };
        };
        let low = a0.min(b0);
        let mut coeffs = vec![BigInt::zero(); (a1.max(b1) - low + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(a0 - low) as usize + i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[(b0 - low) as usize + i] += c;
        }
        Laurent::from_coefficients(low, coeffs)
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Laurent::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Laurent::from_coefficients(self.low + other.low, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::models::Method;
    use crate::polymer::KpStatus;

    fn single(n: usize, v: usize) -> VertexSet {
        VertexSet::singleton(n, v)
    }

    #[test]
    fn triangle_single_vertex_weights() {
        let k3 = named::complete(3);
        for beta in [0.3, 1.0, 2.5] {
            let w2 = potts_weight(&k3, &single(3, 0), &PottsParams::new(2, beta)).unwrap();
            assert!((w2 - (-2.0 * beta)).abs() < 1e-12);
            let w3 = potts_weight(&k3, &single(3, 0), &PottsParams::new(3, beta)).unwrap();
            assert!((w3 - (2f64.ln() - 2.0 * beta)).abs() < 1e-12);
        }
    }

    #[test]
    fn edge_inside_regular_graph() {
        let g = named::petersen();
        let delta = 3.0;
        let edge = VertexSet::from_vertices(10, [0, 1]);
        assert!(g.has_edge(0, 1));
        let beta = 0.7;
        let w = potts_weight(&g, &edge, &PottsParams::new(2, beta)).unwrap();
        assert!((w - beta * (2.0 - 2.0 * delta)).abs() < 1e-12);
    }

    #[test]
    fn inner_cap_is_enforced() {
        let g = named::path(22);
        let set = VertexSet::from_vertices(22, 0..21);
        assert!(matches!(
            potts_weight(&g, &set, &PottsParams::new(3, 1.0)),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn triangle_polynomial_identity() {
        let k3 = named::complete(3);
        let xi = potts_xi_polynomial(&k3, 2).unwrap();
        // Ξ = 1 + 3x^{-2}
        assert_eq!(
            xi,
            Laurent::from_coefficients(-2, vec![3.into(), 0.into(), 1.into()])
        );
        let z = xi.scaled(&BigInt::from(2), 3);
        assert_eq!(z, Laurent::from_polynomial(&[0, 6, 0, 2]));
        for beta in [0.5f64, 1.0, 3.0] {
            let direct = (2.0 * (3.0 * beta).exp() + 6.0 * beta.exp()).ln();
            let tilde = potts_tilde_log(&k3, &PottsParams::new(2, beta)).unwrap();
            assert!((tilde - direct).abs() < 1e-12);
            assert!((z.ln_eval(beta) - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn brute_histogram_of_triangle() {
        let hist = potts_brute_histogram(&named::complete(3), 2).unwrap();
        assert_eq!(hist, vec![0, 6, 0, 2]);
        let hist3 = potts_brute_histogram(&named::complete(3), 3).unwrap();
        assert_eq!(hist3.iter().sum::<u64>(), 27);
        assert_eq!(hist3[3], 3);
    }

    #[test]
    fn brute_branch_selection() {
        let k3 = named::complete(3);
        let p = PottsParams::new(2, 1.0);
        let r = potts_count(&k3, &p, (-2.0f64).exp()).unwrap();
        assert_eq!(r.method, Method::Brute);
        assert!((r.log_z - (2.0 * 3f64.exp() + 6.0 * 1f64.exp()).ln()).abs() < 1e-12);
        let r = potts_count(&k3, &p, 0.5).unwrap();
        assert_eq!(r.method, Method::Polymer);
        assert!(r.kp_status.is_some());
    }

    #[test]
    fn large_beta_approaches_ground_states() {
        let g = named::petersen();
        let p = PottsParams::new(3, 60.0);
        let r = potts_count(&g, &p, 0.1).unwrap();
        let ground = 3f64.ln() + 60.0 * 15.0;
        assert!((r.log_z - ground).abs() < 1e-12);
        assert_eq!(r.kp_status, Some(KpStatus::Analytic));
    }

    #[test]
    fn analytic_threshold_boundary() {
        let t = (4.0 + 2.0 * (9.0f64).ln()) / 0.5;
        assert!(potts_analytic_kp(3, 3, 0.5, t).threshold_ok);
        assert!(!potts_analytic_kp(3, 3, 0.5, 0.9 * t).threshold_ok);
    }

    #[test]
    fn certification_paths() {
        let pet = named::petersen();
        let c = potts_certified_count(&pet, 3, 500.0, 0.1).unwrap();
        assert!(c.spectral_ok && c.certified);
        assert!((c.alpha.unwrap() - 0.075).abs() < 1e-15);
        assert!((c.expansion.cheeger_lb.unwrap() - 1.0).abs() < 1e-9);
        assert!(c.result.is_some());

        let low = potts_certified_count(&pet, 3, 5.0, 0.1).unwrap();
        assert!(low.spectral_ok && !low.beta_ok && !low.certified && low.result.is_none());

        let mut edges = Vec::new();
        for base in [0, 4] {
            for i in 0..4 {
                for j in i + 1..4 {
                    edges.push((base + i, base + j));
                }
            }
        }
        let two_k4 = Graph::new(8, &edges).unwrap();
        let c = potts_certified_count(&two_k4, 3, 500.0, 0.1).unwrap();
        assert!(!c.spectral_ok && !c.certified);

        let path = named::path(4);
        assert!(matches!(
            potts_certified_count(&path, 3, 5.0, 0.1),
            Err(Error::NotRegular)
        ));
    }

    #[test]
    fn sampler_is_monochromatic_at_large_beta() {
        let g = named::cycle(8);
        let s =
            PottsSampler::new(&g, &PottsParams::new(3, 40.0), 0.1, XiMethod::Truncated).unwrap();
        assert!(!s.is_brute());
        for draw in 0..50 {
            let c = s.sample(5, draw).unwrap();
            assert!(c.iter().all(|&x| x == c[0]));
        }
    }

    #[test]
    fn brute_sampler_is_exact_branch() {
        let k3 = named::complete(3);
        let s =
            PottsSampler::new(&k3, &PottsParams::new(2, 0.5), 1e-3, XiMethod::Truncated).unwrap();
        assert!(s.is_brute());
        let c = s.sample(1, 0).unwrap();
        assert_eq!(c.len(), 3);
        assert!(c.iter().all(|&x| x < 2));
    }

    #[test]
    fn laurent_arithmetic() {
        let a = Laurent::from_coefficients(-1, vec![1.into(), 2.into()]);
        let b = Laurent::from_coefficients(0, vec![0.into(), 0.into(), 3.into()]);
        assert_eq!(b.degree_range(), Some((2, 2)));
        let s = a.add(&b);
        assert_eq!(s.coefficient(-1), 1.into());
        assert_eq!(s.coefficient(2), 3.into());
        let p = a.mul(&a);
        assert_eq!(
            p,
            Laurent::from_coefficients(-2, vec![1.into(), 4.into(), 4.into()])
        );
        assert!(a.add(&a.scaled(&BigInt::from(-1), 0)).is_zero());
    }
}
