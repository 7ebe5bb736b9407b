//! Proper `q`-colourings of bipartite graphs with equal sides.
//!
//! Ground states are patterns `(A, B)`: odd vertices coloured from `A`, even
//! vertices from `B`. A polymer is a `G³`-connected set `γ` of vertices that
//! disagree with the pattern, weighted by
//! `w(γ) = |χ̂(γ)| / (|A|^{|γ⁺∩O|} |B|^{|γ⁺∩E|})`, where `χ̂(γ)` are the proper
//! colourings of `γ⁺ = γ ∪ ∂γ` disagreeing on `γ` and agreeing on `∂γ`.
//! Then `Z ≈ Σ_{(A,B)} |A|^m |B|^m Ξ_{A,B}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use super::{check_eps, run_branch, truncation_size_cap, ApproxResult, BranchReport, Draw};
use crate::error::{Error, Result};
use crate::graph::{Graph, Side, VertexSet};
use crate::numeric::log_sum_exp;
use crate::par::prelude::*;
use crate::polymer::{
    truncated_expansion, truncation_cutoff, xi_log, AnalyticKp, PolymerIndex, PolymerModel,
};
use crate::sampler::{draw_rng, universe_cutoff, PolymerSampler, XiMethod};

/// Default constant in `Δ ≥ C q² ln² q`.
pub const DEFAULT_C: f64 = 1e4;

/// Largest `|γ⁺|` whose extensions are enumerated.
pub const MAX_EXTENSION_VERTICES: usize = 24;

const MAX_Q: usize = 16;
const BRUTE_MAX_VERTICES: usize = 40;
const SAMPLE_TABLE_CAP: usize = 1 << 22;

/// An ordered bipartition `(A, B)` of the colours, as bit masks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    pub a: u32,
    pub b: u32,
}

impl Pattern {
    pub fn a_len(&self) -> usize {
        self.a.count_ones() as usize
    }

    pub fn b_len(&self) -> usize {
        self.b.count_ones() as usize
    }

    pub fn a_colours(&self) -> Vec<u8> {
        mask_colours(self.a)
    }

    pub fn b_colours(&self) -> Vec<u8> {
        mask_colours(self.b)
    }

    /// Colours on which a vertex of `side` agrees with the pattern.
    pub fn agreeing(&self, side: Side) -> u32 {
        match side {
            Side::Odd => self.a,
            Side::Even => self.b,
        }
    }
}

fn mask_colours(mask: u32) -> Vec<u8> {
    (0..32u8).filter(|&c| mask >> c & 1 == 1).collect()
}

impl Serialize for Pattern {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Pattern", 2)?;
        st.serialize_field("A", &self.a_colours())?;
        st.serialize_field("B", &self.b_colours())?;
        st.end()
    }
}

/// All `2^q − 2` patterns with both parts non-empty.
pub fn enumerate_patterns(q: usize) -> Vec<Pattern> {
    let full = (1u32 << q) - 1;
    (1..full).map(|a| Pattern { a, b: full ^ a }).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "mode")]
pub enum CapMode {
    /// Little sets, `|γ| ≤ 4q ln Δ/Δ · m`, and `g(γ) = Δ|γ|/(10 q² ln Δ)`.
    Paper,
    /// Test mode for desk-scale graphs: explicit size cap and `g(γ) = |γ|`.
    Override { size_cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ColoringParams {
    pub q: usize,
    /// Constant `C` in `Δ ≥ C q² ln² q`.
    pub c: f64,
    pub caps: CapMode,
}

impl ColoringParams {
    pub fn new(q: usize) -> Self {
        ColoringParams {
            q,
            c: DEFAULT_C,
            caps: CapMode::Paper,
        }
    }

    pub fn with_c(self, c: f64) -> Self {
        ColoringParams { c, ..self }
    }

    pub fn with_override(self, size_cap: usize) -> Self {
        ColoringParams {
            caps: CapMode::Override { size_cap },
            ..self
        }
    }

    fn validate(&self) -> Result<()> {
        if !(3..=MAX_Q).contains(&self.q) {
            return Err(Error::InvalidParameter(format!(
                "q must lie in 3..={MAX_Q}, got {}",
                self.q
            )));
        }
        if !(self.c > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "C must be positive, got {}",
                self.c
            )));
        }
        Ok(())
    }
}

/// `⌊4q ln Δ/Δ · m⌋` with `m = n/2`.
pub fn coloring_little_cap(g: &Graph, q: usize) -> usize {
    let d = g.max_degree() as f64;
    if d <= 1.0 {
        return 0;
    }
    (4.0 * q as f64 * d.ln() / d * (g.n() / 2) as f64).floor() as usize
}

fn with_equal_sides(g: &Graph) -> Result<Graph> {
    let g = if g.sides().is_some() {
        g.clone()
    } else {
        g.require_bipartition()?
    };
    let sides = g.sides().expect("bipartition present");
    if sides.odd().len() != sides.even().len() {
        return Err(Error::InvalidParameter(format!(
            "colourings need equal sides, got {} and {}",
            sides.odd().len(),
            sides.even().len()
        )));
    }
    Ok(g)
}

/// Proper colourings of `G[γ⁺]` disagreeing with the pattern on `γ` and
/// agreeing on `∂γ`; `visit` receives each one over the returned vertex
/// order and returns `false` to stop.
fn walk_extensions(
    g: &Graph,
    set: &VertexSet,
    pattern: &Pattern,
    q: usize,
    visit: &mut dyn FnMut(&[u8]) -> bool,
) -> Result<Vec<usize>> {
    let sides = g.sides().ok_or(Error::NotBipartite)?;
    let closure = g.boundaries(set).closure;
    if closure.len() > MAX_EXTENSION_VERTICES {
        return Err(Error::TooLarge {
            what: "polymer closure for extension enumeration",
            size: closure.len(),
            cap: MAX_EXTENSION_VERTICES,
        });
    }
    let order = closure.to_vec();
    let full = (1u32 << q) - 1;
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let domains: Vec<u32> = order
        .iter()
        .map(|&v| {
            let agree = pattern.agreeing(sides.side_of(v));
            if set.contains(v) {
                full ^ agree
            } else {
                agree
            }
        })
        .collect();
    let earlier: Vec<Vec<usize>> = order
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            g.neighbors(v)
                .iter()
                .filter_map(|&w| (pos[w] < i).then_some(pos[w]))
                .collect()
        })
        .collect();
    let mut col = vec![0u8; order.len()];
    extend(0, &domains, &earlier, &mut col, visit);
    Ok(order)
}

fn extend(
    i: usize,
    domains: &[u32],
    earlier: &[Vec<usize>],
    col: &mut [u8],
    visit: &mut dyn FnMut(&[u8]) -> bool,
) -> bool {
    if i == col.len() {
        return visit(col);
    }
    let mut free = domains[i];
    for &j in &earlier[i] {
        free &= !(1 << col[j]);
    }
    while free != 0 {
        col[i] = free.trailing_zeros() as u8;
        free &= free - 1;
        if !extend(i + 1, domains, earlier, col, visit) {
            return false;
        }
    }
    true
}

/// `|χ̂_{A,B}(γ)|`.
pub fn extension_count(g: &Graph, set: &VertexSet, pattern: &Pattern, q: usize) -> Result<u64> {
    let mut count = 0u64;
    walk_extensions(g, set, pattern, q, &mut |_| {
        count += 1;
        true
    })?;
    Ok(count)
}

/// The closure `γ⁺` in ascending order and every element of `χ̂_{A,B}(γ)`.
pub fn extensions(
    g: &Graph,
    set: &VertexSet,
    pattern: &Pattern,
    q: usize,
) -> Result<(Vec<usize>, Vec<Vec<u8>>)> {
    let mut all = Vec::new();
    let order = walk_extensions(g, set, pattern, q, &mut |c| {
        all.push(c.to_vec());
        true
    })?;
    Ok((order, all))
}

fn closure_sides(g: &Graph, set: &VertexSet) -> (usize, usize) {
    let sides = g.sides().expect("bipartite graph");
    let closure = g.boundaries(set).closure;
    (
        closure.intersection_len(sides.odd()),
        closure.intersection_len(sides.even()),
    )
}

/// `ln w_{A,B}(γ)`, or `None` when `χ̂` is empty.
pub fn coloring_weight(
    g: &Graph,
    set: &VertexSet,
    pattern: &Pattern,
    q: usize,
) -> Result<Option<f64>> {
    let count = extension_count(g, set, pattern, q)?;
    if count == 0 {
        return Ok(None);
    }
    let (odd, even) = closure_sides(g, set);
    Ok(Some(
        (count as f64).ln()
            - odd as f64 * (pattern.a_len() as f64).ln()
            - even as f64 * (pattern.b_len() as f64).ln(),
    ))
}

fn exact_coloring_weight(
    g: &Graph,
    set: &VertexSet,
    pattern: &Pattern,
    q: usize,
) -> Result<BigRational> {
    let count = extension_count(g, set, pattern, q)?;
    let (odd, even) = closure_sides(g, set);
    let den = num_traits::pow(BigInt::from(pattern.a_len()), odd)
        * num_traits::pow(BigInt::from(pattern.b_len()), even);
    Ok(BigRational::new(BigInt::from(count), den))
}

pub struct ColoringModel {
    pattern: Pattern,
    q: usize,
    cap: usize,
    slope: f64,
}

impl ColoringModel {
    pub fn new(g: &Graph, pattern: Pattern, params: &ColoringParams) -> Self {
        let (cap, slope) = match params.caps {
            CapMode::Paper => {
                let d = g.max_degree() as f64;
                let slope = if d > 1.0 {
                    d / (10.0 * (params.q * params.q) as f64 * d.ln())
                } else {
                    1.0
                };
                (coloring_little_cap(g, params.q), slope)
            }
            CapMode::Override { size_cap } => (size_cap, 1.0),
        };
        ColoringModel {
            pattern,
            q: params.q,
            cap,
            slope,
        }
    }
}

impl PolymerModel for ColoringModel {
    fn label(&self) -> String {
        format!(
            "coloring(A={:?},B={:?})",
            self.pattern.a_colours(),
            self.pattern.b_colours()
        )
    }

    fn power(&self) -> usize {
        3
    }

    fn allowed(&self, g: &Graph) -> VertexSet {
        g.all_vertices()
    }

    fn max_polymer_size(&self, _g: &Graph) -> usize {
        self.cap
    }

    fn log_weight(&self, g: &Graph, set: &VertexSet) -> Result<Option<f64>> {
        coloring_weight(g, set, &self.pattern, self.q)
    }

    fn exact_weight(&self, g: &Graph, set: &VertexSet) -> Result<Option<BigRational>> {
        exact_coloring_weight(g, set, &self.pattern, self.q).map(Some)
    }

    fn decay(&self, _g: &Graph, set: &VertexSet) -> f64 {
        self.slope * set.len() as f64
    }

    fn decay_slope(&self, _g: &Graph) -> f64 {
        self.slope
    }
}

/// Polymer index of one pattern with polymers of at most `size_cap`
/// vertices (and the mode's cap).
pub fn coloring_index(
    g: &Graph,
    pattern: Pattern,
    params: &ColoringParams,
    size_cap: usize,
) -> Result<PolymerIndex> {
    params.validate()?;
    let g = with_equal_sides(g)?;
    PolymerIndex::build(&g, &ColoringModel::new(&g, pattern, params), size_cap)
}

/// Closed form `Δ ≥ C q² ln² q`, with per-vertex geometric sum
/// `Σ_t (e²Δ³ exp(−Δ/(10 q² ln Δ)))^t ≤ 1/Δ³`.
pub fn coloring_analytic_kp(q: usize, delta: usize, c: f64) -> AnalyticKp {
    let d = delta as f64;
    let lq = (q as f64).ln();
    let threshold = c * (q * q) as f64 * lq * lq;
    let base = if d > 1.0 {
        (2.0 + 3.0 * d.ln() - d / (10.0 * (q * q) as f64 * d.ln())).exp()
    } else {
        f64::INFINITY
    };
    AnalyticKp::evaluate(
        "Delta",
        d,
        threshold,
        "Delta >= C q^2 ln^2 q",
        base,
        1.0 / (d * d * d),
    )
}

/// Number of proper `q`-colourings by backtracking.
pub fn coloring_brute_count(g: &Graph, q: usize) -> Result<u128> {
    let mut count = 0u128;
    walk_proper(g, q, &mut |_| {
        count += 1;
        true
    })?;
    Ok(count)
}

fn walk_proper(g: &Graph, q: usize, visit: &mut dyn FnMut(&[u8]) -> bool) -> Result<()> {
    let n = g.n();
    if n > BRUTE_MAX_VERTICES || q > MAX_Q {
        return Err(Error::TooLarge {
            what: "colouring brute-force enumeration (vertices)",
            size: n,
            cap: BRUTE_MAX_VERTICES,
        });
    }
    let earlier: Vec<Vec<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().copied().filter(|&w| w < v).collect())
        .collect();
    let domains = vec![(1u32 << q) - 1; n];
    let mut col = vec![0u8; n];
    extend(0, &domains, &earlier, &mut col, visit);
    Ok(())
}

pub fn is_proper(g: &Graph, colouring: &[u8]) -> bool {
    colouring.len() == g.n() && g.edges().iter().all(|&(u, v)| colouring[u] != colouring[v])
}

/// ε-relative approximation of `ln Z_G(q)`, the log number of proper
/// colourings.
pub fn coloring_count(g: &Graph, params: &ColoringParams, eps: f64) -> Result<ApproxResult> {
    params.validate()?;
    check_eps(eps)?;
    let g = with_equal_sides(g)?;
    let n = g.n();
    let q = params.q;
    if eps < (-(n as f64) / (8.0 * q as f64)).exp() {
        let count = coloring_brute_count(&g, q)?;
        return Ok(ApproxResult::brute(
            "colorings",
            (count as f64).ln(),
            eps,
            "eps < e^(-n/(8q))",
        ));
    }
    let delta = g.max_degree();
    let mut warnings = Vec::new();
    let analytic = match params.caps {
        CapMode::Paper => Some(coloring_analytic_kp(q, delta, params.c)),
        CapMode::Override { size_cap } => {
            warnings.push(format!(
                "size caps overridden (cap {size_cap}, g = |gamma|): test mode outside the certified regime"
            ));
            None
        }
    };
    let m = truncation_cutoff(n, eps / 3.0);
    let half = (n / 2) as f64;
    let target = 1.0 / (delta.max(1) as f64).powi(3);
    let branches: Vec<Result<BranchReport>> = enumerate_patterns(q)
        .par_iter()
        .map(|&p| {
            let model = ColoringModel::new(&g, p, params);
            let prefactor = half * ((p.a_len() as f64).ln() + (p.b_len() as f64).ln());
            run_branch(&g, &model, m, prefactor, target)
        })
        .collect();
    let branches = branches.into_iter().collect::<Result<Vec<_>>>()?;
    let log_z = log_sum_exp(
        &branches
            .iter()
            .map(BranchReport::log_value)
            .collect::<Vec<_>>(),
    );
    let mut result = ApproxResult::polymer("colorings", log_z, eps, m, analytic, branches);
    warnings.append(&mut result.warnings);
    result.warnings = warnings;
    Ok(result)
}

struct PatternSampler {
    pattern: Pattern,
    index: PolymerIndex,
    sampler: PolymerSampler,
}

/// Prepared approximate sampler for the uniform distribution on proper
/// colourings.
pub struct ColoringSampler {
    graph: Graph,
    q: usize,
    table: Option<Vec<Vec<u8>>>,
    patterns: Vec<PatternSampler>,
    /// Cumulative pattern probabilities.
    cumulative: Vec<f64>,
}

impl ColoringSampler {
    pub fn new(g: &Graph, params: &ColoringParams, eps: f64, method: XiMethod) -> Result<Self> {
        params.validate()?;
        check_eps(eps)?;
        let g = with_equal_sides(g)?;
        let n = g.n();
        let q = params.q;
        if eps < (-(n as f64) / (8.0 * q as f64)).exp() {
            let mut table = Vec::new();
            let mut overflow = false;
            walk_proper(&g, q, &mut |c| {
                table.push(c.to_vec());
                overflow = table.len() > SAMPLE_TABLE_CAP;
                !overflow
            })?;
            if overflow {
                return Err(Error::TooLarge {
                    what: "proper-colouring table",
                    size: table.len(),
                    cap: SAMPLE_TABLE_CAP,
                });
            }
            return Ok(ColoringSampler {
                graph: g,
                q,
                table: Some(table),
                patterns: Vec::new(),
                cumulative: Vec::new(),
            });
        }
        let m_est = truncation_cutoff(n, eps / 8.0);
        let half = (n / 2) as f64;
        let prepared: Vec<Result<(f64, PatternSampler)>> = enumerate_patterns(q)
            .par_iter()
            .map(|&pattern| {
                let model = ColoringModel::new(&g, pattern, params);
                let slope = model.decay_slope(&g);
                let log_xi = match method {
                    XiMethod::Truncated => {
                        let index =
                            PolymerIndex::build(&g, &model, truncation_size_cap(m_est, slope))?;
                        truncated_expansion(&index, m_est)?.value
                    }
                    XiMethod::Exact => xi_log(&PolymerIndex::build(&g, &model, usize::MAX)?)?,
                };
                let prefactor =
                    half * ((pattern.a_len() as f64).ln() + (pattern.b_len() as f64).ln());
                let cap = truncation_size_cap(universe_cutoff(n, eps / 4.0), slope);
                let index = PolymerIndex::build(&g, &model, cap)?;
                let sampler = PolymerSampler::new(&index, eps / 4.0, method)?;
                Ok((
                    prefactor + log_xi,
                    PatternSampler {
                        pattern,
                        index,
                        sampler,
                    },
                ))
            })
            .collect();
        let mut logs = Vec::new();
        let mut patterns = Vec::new();
        for p in prepared {
            let (l, s) = p?;
            logs.push(l);
            patterns.push(s);
        }
        let total = log_sum_exp(&logs);
        let mut acc = 0.0;
        let cumulative = logs
            .iter()
            .map(|l| {
                acc += (l - total).exp();
                acc
            })
            .collect();
        Ok(ColoringSampler {
            graph: g,
            q,
            table: None,
            patterns,
            cumulative,
        })
    }

    pub fn is_brute(&self) -> bool {
        self.table.is_some()
    }

    /// Draws a colouring together with the pattern it was reconstructed from
    /// (`None` on the exhaustive branch).
    pub fn sample_with_pattern(&self, seed: u64, draw: u64) -> Result<(Vec<u8>, Option<Pattern>)> {
        self.draw_inner(seed, draw)
            .map(|(d, p)| (d.reconstruction, p))
    }

    pub fn sample(&self, seed: u64, draw: u64) -> Result<Vec<u8>> {
        self.sample_with_pattern(seed, draw).map(|(c, _)| c)
    }

    pub fn draw(&self, seed: u64, draw: u64) -> Result<Draw<Vec<u8>>> {
        self.draw_inner(seed, draw).map(|(d, _)| d)
    }

    fn draw_inner(&self, seed: u64, draw: u64) -> Result<(Draw<Vec<u8>>, Option<Pattern>)> {
        let mut rng = draw_rng(seed, draw);
        let g = &self.graph;
        if let Some(table) = &self.table {
            let colouring = table[rng.random_range(0..table.len())].clone();
            return Ok((Draw::exhaustive(colouring), None));
        }
        let u = rng.random::<f64>() * self.cumulative.last().copied().unwrap_or(1.0);
        let k = self
            .cumulative
            .partition_point(|&c| c <= u)
            .min(self.patterns.len() - 1);
        let chosen = &self.patterns[k];
        let pattern = chosen.pattern;
        let mut colouring = vec![u8::MAX; g.n()];
        let mut polymers = Vec::new();
        for id in chosen.sampler.sample_with(&mut rng)? {
            let set = &chosen.index.polymer(id).vertices;
            let (order, all) = extensions(g, set, &pattern, self.q)?;
            let pick = &all[rng.random_range(0..all.len())];
            for (&v, &c) in order.iter().zip(pick) {
                colouring[v] = c;
            }
            polymers.push(set.clone());
        }
        let sides = g.sides().expect("bipartite graph");
        let a = pattern.a_colours();
        let b = pattern.b_colours();
        for v in 0..g.n() {
            if colouring[v] == u8::MAX {
                let pool = if sides.side_of(v) == Side::Odd {
                    &a
                } else {
                    &b
                };
                colouring[v] = pool[rng.random_range(0..pool.len())];
            }
        }
        assert!(is_proper(g, &colouring), "sampled colouring is not proper");
        let draw = Draw {
            ground_state: Some(format!("A={:?} B={:?}", a, b)),
            polymers,
            reconstruction: colouring,
        };
        Ok((draw, Some(pattern)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::models::Method;
    use crate::polymer::xi_rational;

    #[test]
    fn pattern_counts() {
        assert_eq!(enumerate_patterns(3).len(), 6);
        assert_eq!(enumerate_patterns(4).len(), 14);
        for p in enumerate_patterns(5) {
            assert_eq!(p.a & p.b, 0);
            assert_eq!(p.a | p.b, 31);
            assert!(p.a_len() > 0 && p.b_len() > 0);
        }
    }

    #[test]
    fn single_vertex_weight_in_cubic_graph() {
        let g = named::complete_bipartite(3, 3);
        let p = Pattern { a: 0b001, b: 0b110 };
        let v = VertexSet::singleton(6, 0);
        assert_eq!(extension_count(&g, &v, &p, 3).unwrap(), 2);
        let w = coloring_weight(&g, &v, &p, 3).unwrap().unwrap();
        assert!((w - 0.25f64.ln()).abs() < 1e-12);
        assert_eq!(
            exact_coloring_weight(&g, &v, &p, 3).unwrap(),
            BigRational::new(1.into(), 4.into())
        );
    }

    #[test]
    fn singleton_pattern_side_drops_polymer() {
        let g = named::complete_bipartite(3, 3);
        let p = Pattern { a: 0b011, b: 0b100 };
        let v = VertexSet::singleton(6, 0);
        assert_eq!(coloring_weight(&g, &v, &p, 3).unwrap(), None);
    }

    #[test]
    fn four_cycle_brute_count() {
        assert_eq!(coloring_brute_count(&named::cycle(4), 3).unwrap(), 18);
        assert_eq!(coloring_brute_count(&named::cycle(6), 3).unwrap(), 66);
        let r = coloring_count(&named::cycle(4), &ColoringParams::new(3), 0.01).unwrap();
        assert_eq!(r.method, Method::Brute);
        assert!((r.log_z - 18f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn k2_pattern_mixture_overcounts() {
        let g = named::path(2);
        let r = coloring_count(&g, &ColoringParams::new(3), 0.95).unwrap();
        assert_eq!(r.method, Method::Polymer);
        assert_eq!(r.polymer_count, 0);
        assert!((r.log_z - 12f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn overridden_caps_count_every_colouring_once_per_pattern() {
        let g = named::cycle(6);
        let params = ColoringParams::new(3).with_override(6);
        let mut total = BigRational::from_integer(0.into());
        for p in enumerate_patterns(3) {
            let xi = xi_rational(&coloring_index(&g, p, &params, usize::MAX).unwrap()).unwrap();
            let pre = num_traits::pow(BigInt::from(p.a_len() * p.b_len()), 3);
            total += BigRational::from_integer(pre) * xi;
        }
        assert_eq!(total, BigRational::from_integer((6 * 66).into()));
    }

    #[test]
    fn unequal_sides_rejected() {
        let g = named::complete_bipartite(2, 3);
        assert!(coloring_count(&g, &ColoringParams::new(3), 0.5).is_err());
        assert!(coloring_count(&named::complete(3), &ColoringParams::new(3), 0.5).is_err());
    }

    #[test]
    fn analytic_threshold() {
        let c = 1e4;
        let t = c * 9.0 * 3f64.ln().powi(2);
        let at = coloring_analytic_kp(3, t.ceil() as usize, c);
        assert!(at.threshold_ok && at.geometric_ok);
        assert!(!coloring_analytic_kp(3, (0.9 * t) as usize, c).threshold_ok);
    }

    #[test]
    fn sampler_outputs_proper_colourings() {
        let g = named::cycle(6).require_bipartition().unwrap();
        let params = ColoringParams::new(3).with_override(6);
        let s = ColoringSampler::new(&g, &params, 0.9, XiMethod::Exact).unwrap();
        assert!(!s.is_brute());
        for d in 0..200 {
            let (c, p) = s.sample_with_pattern(4, d).unwrap();
            assert!(is_proper(&g, &c));
            let p = p.unwrap();
            let sides = g.sides().unwrap();
            // Disagreement set is exactly the union of sampled polymers, so
            // every vertex outside it agrees with the pattern.
            let disagree = (0..6)
                .filter(|&v| p.agreeing(sides.side_of(v)) >> c[v] & 1 == 0)
                .count();
            assert!(disagree <= 6);
        }
        let brute = ColoringSampler::new(&g, &params, 0.1, XiMethod::Exact).unwrap();
        assert!(brute.is_brute());
        assert!(is_proper(&g, &brute.sample(1, 1).unwrap()));
    }
}
