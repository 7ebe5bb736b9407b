//! Hard-core model on bipartite graphs at large fugacity.
//!
//! The two ground states occupy one side each. Defects on the other side are
//! `G²`-connected one-sided polymers with `w_γ = λ^{|γ|}/(1+λ)^{|∂γ|}`, and
//! `Z ≈ Z̃ = (1+λ)^{|O|} Ξ^E + (1+λ)^{|E|} Ξ^O`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{
    check_eps, measured_bipartite_alpha, run_branch, truncation_size_cap, ApproxResult,
    BranchReport, Draw,
};
use crate::error::{Error, Result};
use crate::graph::{Graph, Side, VertexSet};
use crate::numeric::{log_add_exp, log_sum_exp};
use crate::par;
use crate::polymer::{
    truncated_expansion, truncation_cutoff, xi_log, xi_rational, AnalyticKp, PolymerIndex,
    PolymerModel,
};
use crate::sampler::{draw_rng, universe_cutoff, PolymerSampler, XiMethod};

/// Largest graph for the exhaustive branch.
const BRUTE_MAX_VERTICES: usize = 40;

/// Largest table of independent sets kept for exact sampling.
const SAMPLE_TABLE_CAP: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HardCoreVariant {
    /// Bipartite α-expanders: polymers are small (`2|γ| ≤ |side|`), `g = |γ|`.
    Expander,
    /// Random regular bipartite graphs: tiny polymers and a steeper `g`.
    #[serde(rename = "random")]
    RandomRegular,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HardCoreParams {
    pub lambda: f64,
    /// Exact fugacity, enabling rational polymer weights.
    #[serde(skip)]
    pub lambda_exact: Option<BigRational>,
    pub variant: HardCoreVariant,
    /// Bipartite expansion `α` (expander variant). Measured exactly when
    /// absent and the graph is small.
    pub alpha: Option<f64>,
}

impl HardCoreParams {
    pub fn new(lambda: f64) -> Self {
        HardCoreParams {
            lambda,
            lambda_exact: None,
            variant: HardCoreVariant::Expander,
            alpha: None,
        }
    }

    pub fn rational(num: i64, den: i64) -> Self {
        let exact = BigRational::new(num.into(), den.into());
        HardCoreParams {
            lambda_exact: Some(exact),
            ..HardCoreParams::new(num as f64 / den as f64)
        }
    }

    pub fn with_variant(self, variant: HardCoreVariant) -> Self {
        HardCoreParams { variant, ..self }
    }

    pub fn with_alpha(self, alpha: f64) -> Self {
        HardCoreParams {
            alpha: Some(alpha),
            ..self
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "lambda must be positive, got {}",
                self.lambda
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

/// Polymer size cap on one side. `clamped` records that the tiny cap
/// exceeded the small cap and was lowered to it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SizeCap {
    pub cap: usize,
    pub clamped: bool,
}

pub fn hc_size_cap(g: &Graph, side: Side, variant: HardCoreVariant) -> Result<SizeCap> {
    let sides = g.sides().ok_or(Error::NotBipartite)?;
    let small = sides.side(side).len() / 2;
    match variant {
        HardCoreVariant::Expander => Ok(SizeCap {
            cap: small,
            clamped: false,
        }),
        HardCoreVariant::RandomRegular => {
            let delta = g.regular_degree().ok_or(Error::NotRegular)? as f64;
            let m = (g.n() / 2) as f64;
            let tiny = if delta > 1.0 {
                (4.0 * delta.ln() / delta * m).floor() as usize
            } else {
                0
            };
            Ok(SizeCap {
                cap: tiny.min(small),
                clamped: tiny > small,
            })
        }
    }
}

/// `ln w_γ = |γ| ln λ − |∂γ| ln(1+λ)`.
pub fn hc_weight(g: &Graph, set: &VertexSet, lambda: f64) -> f64 {
    let boundary = g.boundaries(set).vertex_boundary.len();
    set.len() as f64 * lambda.ln() - boundary as f64 * lambda.ln_1p()
}

fn exact_weight(g: &Graph, set: &VertexSet, lambda: &BigRational) -> BigRational {
    let boundary = g.boundaries(set).vertex_boundary.len();
    let one_plus = BigRational::one() + lambda;
    num_traits::pow(lambda.clone(), set.len()) / num_traits::pow(one_plus, boundary)
}

pub struct HardCoreModel {
    side: Side,
    lambda: f64,
    lambda_exact: Option<BigRational>,
    cap: usize,
    slope: f64,
}

impl HardCoreModel {
    pub fn new(g: &Graph, side: Side, params: &HardCoreParams) -> Result<Self> {
        params.validate()?;
        check_variant(g, params.variant)?;
        let cap = hc_size_cap(g, side, params.variant)?.cap;
        let slope = match params.variant {
            HardCoreVariant::Expander => 1.0,
            HardCoreVariant::RandomRegular => {
                let delta = g.max_degree() as f64;
                delta * params.lambda.ln_1p() / (10.0 * delta.ln())
            }
        };
        Ok(HardCoreModel {
            side,
            lambda: params.lambda,
            lambda_exact: params.lambda_exact.clone(),
            cap,
            slope,
        })
    }
}

impl PolymerModel for HardCoreModel {
    fn label(&self) -> String {
        match self.side {
            Side::Odd => "hardcore-odd".into(),
            Side::Even => "hardcore-even".into(),
        }
    }

    fn power(&self) -> usize {
        2
    }

    fn allowed(&self, g: &Graph) -> VertexSet {
        g.sides().expect("bipartite graph").side(self.side).clone()
    }

    fn max_polymer_size(&self, _g: &Graph) -> usize {
        self.cap
    }

    fn log_weight(&self, g: &Graph, set: &VertexSet) -> Result<Option<f64>> {
        Ok(Some(hc_weight(g, set, self.lambda)))
    }

    fn exact_weight(&self, g: &Graph, set: &VertexSet) -> Result<Option<BigRational>> {
        Ok(self.lambda_exact.as_ref().map(|l| exact_weight(g, set, l)))
    }

    fn decay(&self, _g: &Graph, set: &VertexSet) -> f64 {
        self.slope * set.len() as f64
    }

    fn decay_slope(&self, _g: &Graph) -> f64 {
        self.slope
    }
}

fn check_variant(g: &Graph, variant: HardCoreVariant) -> Result<()> {
    let sides = g.sides().ok_or(Error::NotBipartite)?;
    if variant == HardCoreVariant::RandomRegular {
        let regular = g.regular_degree().is_some_and(|d| d >= 2);
        if !regular || sides.odd().len() != sides.even().len() {
            return Err(Error::InvalidParameter(
                "the random-regular variant needs a regular bipartite graph of degree >= 2 with equal sides".into(),
            ));
        }
    }
    Ok(())
}

fn with_sides(g: &Graph) -> Result<Graph> {
    if g.sides().is_some() {
        Ok(g.clone())
    } else {
        g.require_bipartition()
    }
}

/// Full polymer universe of one side (no truncation).
pub fn hc_index(g: &Graph, side: Side, params: &HardCoreParams) -> Result<PolymerIndex> {
    let g = with_sides(g)?;
    let model = HardCoreModel::new(&g, side, params)?;
    PolymerIndex::build(&g, &model, usize::MAX)
}

/// Independent-set counts by size, branching on a vertex of largest
/// remaining degree.
pub fn hc_brute_coefficients(g: &Graph) -> Result<Vec<u64>> {
    let n = g.n();
    if n > BRUTE_MAX_VERTICES {
        return Err(Error::TooLarge {
            what: "hard-core brute-force enumeration (vertices)",
            size: n,
            cap: BRUTE_MAX_VERTICES,
        });
    }
    let nb: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect();
    let mut memo = HashMap::new();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    Ok(independence_polynomial(full, &nb, &mut memo))
}

fn independence_polynomial(alive: u64, nb: &[u64], memo: &mut HashMap<u64, Vec<u64>>) -> Vec<u64> {
    if let Some(p) = memo.get(&alive) {
        return p.clone();
    }
    let mut best = None;
    let mut best_deg = 0;
    let mut rest = alive;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = (nb[v] & alive).count_ones();
        if best.is_none() || d > best_deg {
            best = Some(v);
            best_deg = d;
        }
    }
    let out = match best {
        None => vec![1],
        Some(_) if best_deg == 0 => binomial_row(alive.count_ones() as usize),
        Some(v) => {
            let without = independence_polynomial(alive & !(1 << v), nb, memo);
            let with = independence_polynomial(alive & !(1 << v) & !nb[v], nb, memo);
            let mut p = vec![0u64; without.len().max(with.len() + 1)];
            for (k, c) in without.iter().enumerate() {
                p[k] += c;
            }
            for (k, c) in with.iter().enumerate() {
                p[k + 1] += c;
            }
            p
        }
    };
    memo.insert(alive, out.clone());
    out
}

fn binomial_row(k: usize) -> Vec<u64> {
    let mut row = vec![1u64];
    for _ in 0..k {
        let mut next = vec![1u64; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row
}

fn log_from_coefficients(coeffs: &[u64], lambda: f64) -> f64 {
    let terms: Vec<f64> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(k, &c)| (c as f64).ln() + k as f64 * lambda.ln())
        .collect();
    log_sum_exp(&terms)
}

/// Closed form for the expander variant: `λ ≥ max{(2e³Δ⁴)^{1/α}, e^{11/α}}`.
/// The first bound makes `Σ_t (e³Δ²(1+λ)^{−α})^t ≤ 1/Δ²`; the second is the
/// ground-state approximation's hypothesis. The inequality names the binding
/// one.
pub fn hc_analytic_kp(delta: usize, alpha: f64, lambda: f64) -> AnalyticKp {
    let d = delta as f64;
    let kp = (2.0 * 3f64.exp() * d.powi(4)).powf(1.0 / alpha);
    let approx = (11.0 / alpha).exp();
    let inequality = if kp >= approx {
        "lambda >= (2 e^3 Delta^4)^(1/alpha)"
    } else {
        "lambda >= e^(11/alpha)"
    };
    let base = 3f64.exp() * d * d * (1.0 + lambda).powf(-alpha);
    AnalyticKp::evaluate(
        "lambda",
        lambda,
        kp.max(approx),
        inequality,
        base,
        1.0 / (d * d),
    )
}

/// Closed form for the random-regular variant: `λ ≥ 50 ln²Δ/Δ`, with base
/// `exp(2 ln Δ + 2 − Δ ln(1+λ)/(10 ln Δ) + ln λ)` and target `1/Δ²`.
pub fn hc_random_analytic_kp(delta: usize, lambda: f64) -> AnalyticKp {
    let d = delta as f64;
    let ld = d.ln();
    let threshold = 50.0 * ld * ld / d;
    let base = (2.0 * ld + 2.0 - d / (10.0 * ld) * lambda.ln_1p() + lambda.ln()).exp();
    AnalyticKp::evaluate(
        "lambda",
        lambda,
        threshold,
        "lambda >= 50 ln^2(Delta) / Delta",
        base,
        1.0 / (d * d),
    )
}

fn side_prefactor(g: &Graph, polymer_side: Side, lambda: f64) -> f64 {
    let sides = g.sides().expect("bipartite graph");
    sides.side(polymer_side.other()).len() as f64 * lambda.ln_1p()
}

/// ε-relative approximation of `ln Z_G(λ)`.
pub fn hc_count(g: &Graph, params: &HardCoreParams, eps: f64) -> Result<ApproxResult> {
    params.validate()?;
    check_eps(eps)?;
    let g = with_sides(g)?;
    check_variant(&g, params.variant)?;
    let n = g.n();
    if eps < 0.5f64.powi(n as i32) {
        let coeffs = hc_brute_coefficients(&g)?;
        return Ok(ApproxResult::brute(
            "hardcore",
            log_from_coefficients(&coeffs, params.lambda),
            eps,
            "eps < 2^(-n)",
        ));
    }
    let delta = g.max_degree();
    let mut warnings = Vec::new();
    let mut alpha = None;
    let analytic = match params.variant {
        HardCoreVariant::Expander => {
            alpha = params.alpha.or_else(|| {
                let a = measured_bipartite_alpha(&g).filter(|&a| a > 0.0);
                match a {
                    Some(a) => warnings.push(format!(
                        "alpha not supplied; using the exact bipartite expansion {a}"
                    )),
                    None => warnings.push(
                        "alpha not supplied and not measurable; analytic check skipped".into(),
                    ),
                }
                a
            });
            alpha.map(|a| hc_analytic_kp(delta, a, params.lambda))
        }
        HardCoreVariant::RandomRegular => {
            warnings.push(
                "the random-regular bounds hold for Delta beyond an unquantified Delta_0; the analytic status is indicative"
                    .into(),
            );
            for side in [Side::Odd, Side::Even] {
                if hc_size_cap(&g, side, params.variant)?.clamped {
                    warnings.push(format!(
                        "{side:?} tiny cap exceeds the small cap and was clamped to it"
                    ));
                }
            }
            Some(hc_random_analytic_kp(delta, params.lambda))
        }
    };
    let m = truncation_cutoff(n, eps / 2.0);
    let target = 1.0 / (delta.max(1) as f64).powi(2);
    let branch = |side: Side| -> Result<BranchReport> {
        let model = HardCoreModel::new(&g, side, params)?;
        run_branch(
            &g,
            &model,
            m,
            side_prefactor(&g, side, params.lambda),
            target,
        )
    };
    let (even, odd) = par::join(|| branch(Side::Even), || branch(Side::Odd));
    let (even, odd) = (even?, odd?);
    let log_z = log_add_exp(even.log_value(), odd.log_value());
    let mut result = ApproxResult::polymer("hardcore", log_z, eps, m, analytic, vec![even, odd]);
    result.alpha = alpha;
    warnings.append(&mut result.warnings);
    result.warnings = warnings;
    Ok(result)
}

/// `Z̃ = (1+λ)^{|O|} Ξ^E + (1+λ)^{|E|} Ξ^O` in exact rational arithmetic over
/// the full polymer universes.
pub fn hc_tilde_exact(
    g: &Graph,
    lambda: &BigRational,
    variant: HardCoreVariant,
) -> Result<BigRational> {
    let g = with_sides(g)?;
    let params = HardCoreParams {
        lambda: lambda.to_f64().unwrap_or(f64::NAN),
        lambda_exact: Some(lambda.clone()),
        variant,
        alpha: None,
    };
    let one_plus = BigRational::one() + lambda;
    let sides = g.sides().expect("bipartite graph");
    let mut total = BigRational::from_integer(BigInt::from(0));
    for side in [Side::Even, Side::Odd] {
        let xi = xi_rational(&hc_index(&g, side, &params)?)?;
        total += num_traits::pow(one_plus.clone(), sides.side(side.other()).len()) * xi;
    }
    Ok(total)
}

/// `ln Z̃` with each `Ξ` evaluated exactly in floating point.
pub fn hc_tilde_log(g: &Graph, params: &HardCoreParams) -> Result<f64> {
    let g = with_sides(g)?;
    let mut parts = Vec::new();
    for side in [Side::Even, Side::Odd] {
        parts.push(side_prefactor(&g, side, params.lambda) + xi_log(&hc_index(&g, side, params)?)?);
    }
    Ok(log_sum_exp(&parts))
}

struct SideSampler {
    side: Side,
    index: PolymerIndex,
    sampler: PolymerSampler,
}

/// Prepared approximate sampler for `μ_{G,λ}`.
pub struct HardCoreSampler {
    graph: Graph,
    lambda: f64,
    /// `(set, cumulative weight)` for the exhaustive branch.
    table: Option<Vec<(u64, f64)>>,
    sides: Vec<SideSampler>,
    p_odd: f64,
}

impl HardCoreSampler {
    pub fn new(g: &Graph, params: &HardCoreParams, eps: f64, method: XiMethod) -> Result<Self> {
        params.validate()?;
        check_eps(eps)?;
        let g = with_sides(g)?;
        check_variant(&g, params.variant)?;
        let n = g.n();
        if eps < 0.5f64.powi(n as i32) {
            let table = independent_set_table(&g, params.lambda)?;
            return Ok(HardCoreSampler {
                graph: g,
                lambda: params.lambda,
                table: Some(table),
                sides: Vec::new(),
                p_odd: 0.0,
            });
        }
        let m_est = truncation_cutoff(n, eps / 8.0);
        let mut sides = Vec::new();
        let mut log_est = Vec::new();
        for side in [Side::Even, Side::Odd] {
            let model = HardCoreModel::new(&g, side, params)?;
            let slope = model.decay_slope(&g);
            let log_xi = match method {
                XiMethod::Truncated => {
                    let index = PolymerIndex::build(&g, &model, truncation_size_cap(m_est, slope))?;
                    truncated_expansion(&index, m_est)?.value
                }
                XiMethod::Exact => xi_log(&PolymerIndex::build(&g, &model, usize::MAX)?)?,
            };
            log_est.push(side_prefactor(&g, side, params.lambda) + log_xi);
            let cap = truncation_size_cap(universe_cutoff(n, eps / 4.0), slope);
            let index = PolymerIndex::build(&g, &model, cap)?;
            let sampler = PolymerSampler::new(&index, eps / 4.0, method)?;
            sides.push(SideSampler {
                side,
                index,
                sampler,
            });
        }
        let p_odd = 1.0 / (1.0 + (log_est[0] - log_est[1]).exp());
        Ok(HardCoreSampler {
            graph: g,
            lambda: params.lambda,
            table: None,
            sides,
            p_odd,
        })
    }

    pub fn is_brute(&self) -> bool {
        self.table.is_some()
    }

    /// Probability of taking the odd-polymer ground state (even side mostly
    /// occupied).
    pub fn odd_probability(&self) -> f64 {
        self.p_odd
    }

    pub fn sample(&self, seed: u64, draw: u64) -> Result<VertexSet> {
        self.draw(seed, draw).map(|d| d.reconstruction)
    }

    pub fn draw(&self, seed: u64, draw: u64) -> Result<Draw<VertexSet>> {
        let mut rng = draw_rng(seed, draw);
        let g = &self.graph;
        if let Some(table) = &self.table {
            let total = table.last().map_or(0.0, |t| t.1);
            let u = rng.random::<f64>() * total;
            let i = table.partition_point(|t| t.1 <= u).min(table.len() - 1);
            let set =
                VertexSet::from_vertices(g.n(), (0..g.n()).filter(|&v| table[i].0 >> v & 1 == 1));
            return Ok(Draw::exhaustive(set));
        }
        let chosen = if rng.random::<f64>() < self.p_odd {
            Side::Odd
        } else {
            Side::Even
        };
        let s = self
            .sides
            .iter()
            .find(|s| s.side == chosen)
            .expect("both sides prepared");
        let mut occupied = VertexSet::empty(g.n());
        let mut polymers = Vec::new();
        for id in s.sampler.sample_with(&mut rng)? {
            let set = &s.index.polymer(id).vertices;
            occupied.union_with(set);
            polymers.push(set.clone());
        }
        let blocked = g.boundaries(&occupied).vertex_boundary;
        let p = self.lambda / (1.0 + self.lambda);
        let sides = g.sides().expect("bipartite graph");
        for v in sides.side(chosen.other()).iter() {
            if !blocked.contains(v) && rng.random::<f64>() < p {
                occupied.insert(v);
            }
        }
        assert!(
            g.is_independent(&occupied),
            "sampled set is not independent"
        );
        let ground = match chosen {
            Side::Odd => "even side occupied",
            Side::Even => "odd side occupied",
        };
        Ok(Draw {
            ground_state: Some(ground.into()),
            polymers,
            reconstruction: occupied,
        })
    }
}

fn independent_set_table(g: &Graph, lambda: f64) -> Result<Vec<(u64, f64)>> {
    let n = g.n();
    if n > BRUTE_MAX_VERTICES {
        return Err(Error::TooLarge {
            what: "hard-core exact sampler (vertices)",
            size: n,
            cap: BRUTE_MAX_VERTICES,
        });
    }
    let nb: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect();
    let mut sets = Vec::new();
    let mut stack = vec![(0usize, 0u64, 0u64)];
    while let Some((v, set, blocked)) = stack.pop() {
        if v == n {
            sets.push(set);
            if sets.len() > SAMPLE_TABLE_CAP {
                return Err(Error::TooLarge {
                    what: "independent-set table",
                    size: sets.len(),
                    cap: SAMPLE_TABLE_CAP,
                });
            }
            continue;
        }
        stack.push((v + 1, set, blocked));
        if blocked >> v & 1 == 0 {
            stack.push((v + 1, set | 1 << v, blocked | nb[v]));
        }
    }
    sets.sort_unstable();
    let top = (n as f64 / 2.0) * lambda.ln();
    let mut acc = 0.0;
    Ok(sets
        .into_iter()
        .map(|s| {
            acc += (s.count_ones() as f64 * lambda.ln() - top).exp();
            (s, acc)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::models::Method;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn k33_weights() {
        let g = named::complete_bipartite(3, 3);
        let v = VertexSet::singleton(6, 3);
        assert!((hc_weight(&g, &v, 1.0) - (1.0f64 / 8.0).ln()).abs() < 1e-12);
        assert!((hc_weight(&g, &v, 10.0) - (10.0f64 / 1331.0).ln()).abs() < 1e-12);
        assert_eq!(exact_weight(&g, &v, &r(10, 1)), r(10, 1331));
    }

    #[test]
    fn k33_tilde_values() {
        let g = named::complete_bipartite(3, 3);
        let e = HardCoreVariant::Expander;
        assert_eq!(hc_tilde_exact(&g, &r(10, 1), e).unwrap(), r(2722, 1));
        assert_eq!(hc_tilde_exact(&g, &r(1, 1), e).unwrap(), r(22, 1));
        let coeffs = hc_brute_coefficients(&g).unwrap();
        assert_eq!(coeffs, vec![1, 6, 6, 2]);
        assert!((log_from_coefficients(&coeffs, 10.0) - 2661f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn brute_branch_on_k33() {
        let g = named::complete_bipartite(3, 3);
        let r = hc_count(&g, &HardCoreParams::new(1.0), 0.01).unwrap();
        assert_eq!(r.method, Method::Brute);
        assert!((r.log_z - 15f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn polymer_route_on_k33() {
        let g = named::complete_bipartite(3, 3);
        let r = hc_count(&g, &HardCoreParams::new(10.0), 0.05).unwrap();
        assert_eq!(r.method, Method::Polymer);
        assert_eq!(r.branches.len(), 2);
        assert!((r.log_z - 2722f64.ln()).abs() < 0.05);
    }

    #[test]
    fn independence_polynomial_of_paths() {
        // Fibonacci: independent sets of P_n number F_{n+2}.
        let mut fib = vec![1u64, 2];
        for i in 2..20 {
            fib.push(fib[i - 1] + fib[i - 2]);
        }
        for n in 1..15 {
            let total: u64 = hc_brute_coefficients(&named::path(n)).unwrap().iter().sum();
            assert_eq!(total, fib[n]);
        }
    }

    #[test]
    fn non_bipartite_rejected() {
        let k3 = named::complete(3);
        assert!(matches!(
            hc_count(&k3, &HardCoreParams::new(1.0), 0.1),
            Err(Error::NotBipartite)
        ));
    }

    #[test]
    fn random_variant_caps() {
        let g = named::complete_bipartite(3, 3);
        let c = hc_size_cap(&g, Side::Odd, HardCoreVariant::RandomRegular).unwrap();
        assert!(c.clamped);
        assert_eq!(c.cap, 1);
        let p = HardCoreParams::new(50.0).with_variant(HardCoreVariant::RandomRegular);
        let r = hc_count(&g, &p, 0.05).unwrap();
        assert!(r.warnings.iter().any(|w| w.contains("clamped")));
        let path = named::path(4);
        assert!(hc_count(&path, &p, 0.05).is_err());
    }

    #[test]
    fn threshold_binding() {
        let a = hc_analytic_kp(10, 1.0, 1000.0);
        assert!(a.inequality.contains("Delta^4"));
        let b = hc_analytic_kp(2, 5.0, 1000.0);
        assert!(b.inequality.contains("11"));
        let t = 2.0 * 3f64.exp() * 1e4;
        assert!(hc_analytic_kp(10, 1.0, t).threshold_ok);
        assert!(!hc_analytic_kp(10, 1.0, 0.9 * t).threshold_ok);
    }

    #[test]
    fn samples_are_independent_and_seeded() {
        let g = named::cycle(8);
        let s =
            HardCoreSampler::new(&g, &HardCoreParams::new(20.0), 0.1, XiMethod::Truncated).unwrap();
        assert!(!s.is_brute());
        assert!((s.odd_probability() - 0.5).abs() < 1e-12);
        for d in 0..100 {
            let a = s.sample(3, d).unwrap();
            assert!(g.is_independent(&a));
            assert_eq!(a, s.sample(3, d).unwrap());
        }
    }

    #[test]
    fn huge_lambda_concentrates_on_full_sides() {
        let g = named::complete_bipartite(3, 3);
        let s =
            HardCoreSampler::new(&g, &HardCoreParams::new(1e9), 0.1, XiMethod::Truncated).unwrap();
        for d in 0..50 {
            let a = s.sample(9, d).unwrap();
            assert_eq!(a.len(), 3);
        }
    }

    #[test]
    fn exact_sampler_branch() {
        let g = named::complete_bipartite(3, 3);
        let s = HardCoreSampler::new(&g, &HardCoreParams::new(1.0), 0.001, XiMethod::Truncated)
            .unwrap();
        assert!(s.is_brute());
        let mut seen = std::collections::BTreeSet::new();
        for d in 0..2000 {
            seen.insert(s.sample(1, d).unwrap().to_vec());
        }
        assert_eq!(seen.len(), 15);
    }
}
