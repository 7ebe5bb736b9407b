use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::{Graph, Side, VertexSet};
use crate::error::{Error, Result};
use crate::numeric::binary_entropy;
use crate::par::prelude::*;

/// Default vertex cap for exhaustive expansion measurements.
pub const DEFAULT_EXACT_CAP: usize = 24;

/// Exact non-negative rational `num / den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactRatio {
    pub num: u64,
    pub den: u64,
}

impl ExactRatio {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0);
        let g = gcd(num, den);
        ExactRatio {
            num: num / g,
            den: den / g,
        }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    fn less_than(self, other: ExactRatio) -> bool {
        (self.num as u128) * (other.den as u128) < (other.num as u128) * (self.den as u128)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExpansionMethod {
    Exact,
    Spectral,
}

/// Vertex expansion of one bipartite side: `min |∂S|/|S|` over non-empty
/// `S ⊆ side` with `|S| ≤ σ·|side|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VertexExpansion {
    pub sigma: f64,
    pub min_ratio: Option<ExactRatio>,
}

impl VertexExpansion {
    /// `ρ` such that the side is a `(σ, ρ)`-expander.
    pub fn rho(&self) -> Option<f64> {
        self.min_ratio.map(ExactRatio::to_f64)
    }

    pub fn satisfies(&self, rho: f64) -> bool {
        self.rho().is_none_or(|r| r >= rho)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionReport {
    pub method: ExpansionMethod,
    /// Exact `h(G)`; `None` for spectral reports or when no set qualifies.
    pub edge_expansion: Option<ExactRatio>,
    /// Per-side vertex expansion at `σ = 1/2` (exact, bipartite graphs only).
    pub odd_vertex_expansion: Option<VertexExpansion>,
    pub even_vertex_expansion: Option<VertexExpansion>,
    /// Bipartite `α` with `|∂S| ≥ (1+α)|S|` for every small one-sided `S`.
    pub bipartite_alpha: Option<f64>,
    pub lambda2: Option<f64>,
    pub lambda_min: Option<f64>,
    /// `λ(G) = max(|λ₂|, |λₙ|)`.
    pub lambda_abs: Option<f64>,
    pub cheeger_lb: Option<f64>,
    pub tanner_alpha: Option<f64>,
    pub friedman_bound: Option<f64>,
    pub friedman_ok: Option<bool>,
}

impl ExpansionReport {
    fn empty(method: ExpansionMethod) -> Self {
        ExpansionReport {
            method,
            edge_expansion: None,
            odd_vertex_expansion: None,
            even_vertex_expansion: None,
            bipartite_alpha: None,
            lambda2: None,
            lambda_min: None,
            lambda_abs: None,
            cheeger_lb: None,
            tanner_alpha: None,
            friedman_bound: None,
            friedman_ok: None,
        }
    }
}

/// Exhaustive `h(G) = min_{1 ≤ |S| ≤ n/2} |∂ₑS|/|S|`, plus the bipartite vertex
/// expansion of each side when the graph carries a bipartition.
pub fn expansion_exact(g: &Graph, cap: usize) -> Result<ExpansionReport> {
    let n = g.n();
    if n > cap || n > 30 {
        return Err(Error::TooLarge {
            what: "graph for exact expansion",
            size: n,
            cap: cap.min(30),
        });
    }
    let mut report = ExpansionReport::empty(ExpansionMethod::Exact);
    report.edge_expansion = exact_edge_expansion(g);
    if g.sides().is_some() {
        let odd = bipartite_vertex_expansion(g, Side::Odd, 0.5, cap)?;
        let even = bipartite_vertex_expansion(g, Side::Even, 0.5, cap)?;
        let worst = [odd.rho(), even.rho()]
            .into_iter()
            .flatten()
            .fold(f64::INFINITY, f64::min);
        report.bipartite_alpha = worst.is_finite().then_some(worst - 1.0);
        report.odd_vertex_expansion = Some(odd);
        report.even_vertex_expansion = Some(even);
    }
    Ok(report)
}

fn exact_edge_expansion(g: &Graph) -> Option<ExactRatio> {
    let n = g.n();
    if n < 2 {
        return None;
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let deg: Vec<i64> = (0..n).map(|v| g.degree(v) as i64).collect();
    // Fix the top `high` bits per task and Gray-code through the rest.
    let high = n.min(6);
    let low = n - high;
    let best = (0u32..1 << high)
        .into_par_iter()
        .map(|prefix| {
            let base = prefix << low;
            let mut set = base;
            let mut cut: i64 = (0..n)
                .filter(|&v| set >> v & 1 == 1)
                .map(|v| (adj[v] & !set).count_ones() as i64)
                .sum();
            let mut best: Option<ExactRatio> = None;
            let mut consider = |set: u32, cut: i64| {
                let size = set.count_ones() as u64;
                if size >= 1 && 2 * size <= n as u64 {
                    let r = ExactRatio::new(cut as u64, size);
                    if best.is_none_or(|b| r.less_than(b)) {
                        best = Some(r);
                    }
                }
            };
            consider(set, cut);
            for i in 1u32..(1 << low) {
                let v = i.trailing_zeros() as usize;
                let inside = (adj[v] & set).count_ones() as i64;
                if set >> v & 1 == 1 {
                    set &= !(1 << v);
                    cut -= deg[v] - 2 * inside;
                } else {
                    set |= 1 << v;
                    cut += deg[v] - 2 * inside;
                }
                consider(set, cut);
            }
            best
        })
        .collect::<Vec<_>>();
    best.into_iter()
        .flatten()
        .fold(None, |acc: Option<ExactRatio>, r| match acc {
            Some(a) if !r.less_than(a) => Some(a),
            _ => Some(r),
        })
}

/// Exact `min |∂S|/|S|` over non-empty `S ⊆ side`, `|S| ≤ σ·|side|`.
pub fn bipartite_vertex_expansion(
    g: &Graph,
    side: Side,
    sigma: f64,
    cap: usize,
) -> Result<VertexExpansion> {
    let sides = g.sides().ok_or(Error::NotBipartite)?;
    let members = sides.side(side).to_vec();
    if members.len() > cap.min(30) {
        return Err(Error::TooLarge {
            what: "side for exact vertex expansion",
            size: members.len(),
            cap: cap.min(30),
        });
    }
    let limit = (sigma * members.len() as f64 + 1e-9).floor() as u32;
    let nb: Vec<VertexSet> = members.iter().map(|&v| g.neighbor_set(v)).collect();
    let k = members.len();
    let best = (1u64..1 << k)
        .into_par_iter()
        .filter(|mask| mask.count_ones() <= limit)
        .map(|mask| {
            let mut boundary = VertexSet::empty(g.n());
            for (i, set) in nb.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    boundary.union_with(set);
                }
            }
            ExactRatio::new(boundary.len() as u64, mask.count_ones() as u64)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(None, |acc: Option<ExactRatio>, r| match acc {
            Some(a) if !r.less_than(a) => Some(a),
            _ => Some(r),
        });
    Ok(VertexExpansion {
        sigma,
        min_ratio: best,
    })
}

/// Spectral certificates for a `Δ`-regular graph: `λ₂`, `λₙ`, Cheeger's
/// `h ≥ (Δ − λ₂)/2`, the Friedman-type check `λ(G) ≤ 2√(Δ−1) + eps` and, for
/// connected bipartite graphs, Tanner's `α = (Δ² − λ₂²)/(Δ² + λ₂²)`.
pub fn expansion_spectral(g: &Graph, eps: f64) -> Result<ExpansionReport> {
    let delta = g.regular_degree().ok_or(Error::NotRegular)? as f64;
    let n = g.n();
    if n < 2 {
        return Err(Error::InvalidParameter(
            "spectral certificate needs at least two vertices".into(),
        ));
    }
    let mut a = DMatrix::<f64>::zeros(n, n);
    for &(u, v) in g.edges() {
        a[(u, v)] = 1.0;
        a[(v, u)] = 1.0;
    }
    let mut eig: Vec<f64> = SymmetricEigen::new(a).eigenvalues.iter().copied().collect();
    eig.sort_by(|x, y| y.total_cmp(x));
    let lambda2 = eig[1];
    let lambda_min = eig[n - 1];
    let lambda_abs = lambda2.abs().max(lambda_min.abs());
    let bound = 2.0 * (delta - 1.0).max(0.0).sqrt() + eps;

    let mut report = ExpansionReport::empty(ExpansionMethod::Spectral);
    report.lambda2 = Some(lambda2);
    report.lambda_min = Some(lambda_min);
    report.lambda_abs = Some(lambda_abs);
    report.cheeger_lb = Some((delta - lambda2) / 2.0);
    report.friedman_bound = Some(bound);
    report.friedman_ok = Some(lambda_abs <= bound);
    if g.sides().is_some() && g.is_connected() && delta > 0.0 {
        let d2 = delta * delta;
        let l2 = lambda2 * lambda2;
        report.tanner_alpha = Some((d2 - l2) / (d2 + l2));
    }
    Ok(report)
}

/// Degree above which almost every `Δ`-regular bipartite graph is a
/// `(σ, ρ)`-expander: `(H(σ) + H(σρ)) / (H(σ) − σρ·H(1/ρ))` with base-2 `H`.
pub fn bassalygo_threshold(sigma: f64, rho: f64) -> Result<f64> {
    if !(sigma > 0.0 && sigma < 1.0) || !(rho > 1.0) || !(sigma * rho < 1.0) {
        return Err(Error::Infeasible(format!(
            "need 0 < sigma < 1, rho > 1 and sigma*rho < 1 (sigma = {sigma}, rho = {rho})"
        )));
    }
    let num = binary_entropy(sigma) + binary_entropy(sigma * rho);
    let den = binary_entropy(sigma) - sigma * rho * binary_entropy(1.0 / rho);
    if den <= 0.0 {
        return Err(Error::Infeasible(format!(
            "threshold denominator {den} is not positive"
        )));
    }
    Ok(num / den)
}

/// `(σ, ρ) = (4 ln Δ / Δ, Δ/(4 ln Δ) − 1/2)`, the expansion profile used for
/// random regular bipartite graphs.
pub fn random_regular_expander_params(delta: usize) -> (f64, f64) {
    let d = delta as f64;
    let sigma = 4.0 * d.ln() / d;
    (sigma, 1.0 / sigma - 0.5)
}

#[cfg(test)]
mod tests {
    use super::super::named;
    use super::*;

    #[test]
    fn k33_bipartite_alpha_is_two() {
        let r = expansion_exact(&named::complete_bipartite(3, 3), DEFAULT_EXACT_CAP).unwrap();
        assert_eq!(
            r.odd_vertex_expansion.unwrap().min_ratio,
            Some(ExactRatio::new(3, 1))
        );
        assert_eq!(r.bipartite_alpha, Some(2.0));
    }

    #[test]
    fn small_edge_expansions() {
        // C4: a singleton has ratio 2, but an adjacent pair cuts 2 edges.
        let c4 = expansion_exact(&named::cycle(4), DEFAULT_EXACT_CAP).unwrap();
        assert_eq!(c4.edge_expansion, Some(ExactRatio::new(1, 1)));
        let k2 = expansion_exact(&named::complete(2), DEFAULT_EXACT_CAP).unwrap();
        assert_eq!(k2.edge_expansion, Some(ExactRatio::new(1, 1)));
        // Petersen: h = 1 (a 5-cycle has 5 boundary edges).
        let p = expansion_exact(&named::petersen(), DEFAULT_EXACT_CAP).unwrap();
        assert_eq!(p.edge_expansion, Some(ExactRatio::new(1, 1)));
    }

    #[test]
    fn exact_rejects_large_graphs() {
        let g = named::cycle(40);
        assert!(matches!(
            expansion_exact(&g, DEFAULT_EXACT_CAP),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn petersen_spectrum() {
        let r = expansion_spectral(&named::petersen(), 0.01).unwrap();
        assert!((r.lambda2.unwrap() - 1.0).abs() < 1e-9);
        assert!((r.lambda_min.unwrap() + 2.0).abs() < 1e-9);
        assert!((r.cheeger_lb.unwrap() - 1.0).abs() < 1e-9);
        assert_eq!(r.friedman_ok, Some(true));
    }

    #[test]
    fn complete_bipartite_spectrum() {
        for d in 2..6 {
            let r = expansion_spectral(&named::complete_bipartite(d, d), 0.01).unwrap();
            assert!(r.lambda2.unwrap().abs() < 1e-9);
            assert!((r.tanner_alpha.unwrap() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn spectral_needs_regular() {
        assert!(matches!(
            expansion_spectral(&named::path(4), 0.01),
            Err(Error::NotRegular)
        ));
    }

    #[test]
    fn bassalygo_example() {
        let t = bassalygo_threshold(0.1, 5.0).unwrap();
        let h = |p: f64| -p * p.log2() - (1.0 - p) * (1.0 - p).log2();
        let expected = (h(0.1) + 1.0) / (h(0.1) - 0.5 * h(0.2));
        assert!((t - expected).abs() < 1e-12);
        assert!((t - 13.6).abs() < 0.05);
        assert!(bassalygo_threshold(0.5, 2.0).is_err());
        assert!(bassalygo_threshold(0.1, 0.5).is_err());
    }
}
