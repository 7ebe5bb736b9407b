//! Exhaustive ground truth.
//!
//! Everything here enumerates configurations directly from the definitions
//! and deliberately shares no code with [`crate::polymer`] or
//! [`crate::models`]: vertex sets are handled as `u64` masks, distances and
//! components come from local breadth-first searches, and the only import
//! from the rest of the crate is [`Graph`] for adjacency.

use std::collections::HashMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::par::prelude::*;

/// Environment variable overriding the vertex caps of the `qⁿ` and
/// measure enumerations.
pub const BRUTE_CAP_ENV: &str = "POLYMER_BRUTE_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OracleLimits {
    pub hardcore_vertices: usize,
    /// Applies to every `qⁿ` enumeration (Potts, colourings, disagreement sets).
    pub assignment_vertices: usize,
    pub xi_polymers: usize,
    pub measure_vertices: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            hardcore_vertices: 40,
            assignment_vertices: 14,
            xi_polymers: 25,
            measure_vertices: 20,
        }
    }
}

impl OracleLimits {
    /// Defaults, with `POLYMER_BRUTE_CAP` replacing the assignment and
    /// measure caps when set (never above 64, the mask width).
    pub fn from_env() -> Self {
        let mut limits = OracleLimits::default();
        if let Some(cap) = std::env::var(BRUTE_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            limits.assignment_vertices = cap.min(64);
            limits.measure_vertices = cap.min(64);
        }
        limits
    }
}

fn check(what: &'static str, size: usize, cap: usize) -> Result<()> {
    if size > cap.min(64) {
        return Err(Error::TooLarge { what, size, cap });
    }
    Ok(())
}

fn ser_rational<S: Serializer>(
    v: &Option<BigRational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_some(&r.to_string()),
        None => s.serialize_none(),
    }
}

fn ser_coefficients<S: Serializer>(
    v: &Option<Vec<BigInt>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(c) => s.collect_seq(c.iter().map(|x| x.to_string())),
        None => s.serialize_none(),
    }
}

/// An exactly enumerated partition function.
#[derive(Debug, Clone, Serialize)]
pub struct ExactValue {
    /// Exact value when every input is rational.
    #[serde(serialize_with = "ser_rational")]
    pub value: Option<BigRational>,
    /// Coefficients in the model's variable (`λ` for hard-core, `x = e^β` for
    /// Potts), lowest degree first.
    #[serde(serialize_with = "ser_coefficients")]
    pub polynomial: Option<Vec<BigInt>>,
    pub log_value: f64,
    /// Configurations with non-zero weight.
    pub count: u64,
    pub wall_time_ms: f64,
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn adjacency_masks(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect()
}

fn mask_of(set: &VertexSet) -> u64 {
    set.iter().fold(0u64, |m, v| m | 1 << v)
}

fn set_of(n: usize, mask: u64) -> VertexSet {
    VertexSet::from_vertices(n, (0..n).filter(|&v| mask >> v & 1 == 1))
}

/// `ln Σ_k c_k t^k` from `ln t`.
fn log_polynomial(coeffs: &[u64], ln_t: f64) -> f64 {
    let terms: Vec<f64> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(k, &c)| (c as f64).ln() + k as f64 * ln_t)
        .collect();
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + terms.iter().map(|t| (t - max).exp()).sum::<f64>().ln()
}

fn eval_rational(coeffs: &[u64], t: &BigRational) -> BigRational {
    coeffs.iter().rev().fold(BigRational::zero(), |acc, &c| {
        acc * t + BigRational::from_integer(BigInt::from(c))
    })
}

fn ln_rational(r: &BigRational) -> f64 {
    let bits = |x: &BigInt| x.bits() as i64;
    let shift = |x: &BigInt| (bits(x) - 60).max(0);
    let (sn, sd) = (shift(r.numer()), shift(r.denom()));
    let n = (r.numer() >> sn as usize).to_f64().unwrap_or(f64::NAN);
    let d = (r.denom() >> sd as usize).to_f64().unwrap_or(f64::NAN);
    n.ln() - d.ln() + (sn - sd) as f64 * std::f64::consts::LN_2
}

/// Independent sets by include/exclude recursion in vertex order; calls
/// `visit(mask)` once per independent set.
fn walk_independent(adj: &[u64], v: usize, chosen: u64, blocked: u64, visit: &mut dyn FnMut(u64)) {
    if v == adj.len() {
        visit(chosen);
        return;
    }
    walk_independent(adj, v + 1, chosen, blocked, visit);
    if blocked >> v & 1 == 0 {
        walk_independent(adj, v + 1, chosen | 1 << v, blocked | adj[v], visit);
    }
}

/// Independent-set counts by size, `c_k = #{I : |I| = k}`.
pub fn hardcore_coefficients(g: &Graph, limits: &OracleLimits) -> Result<Vec<u64>> {
    let n = g.n();
    check("hard-core oracle (vertices)", n, limits.hardcore_vertices)?;
    let adj = adjacency_masks(g);
    // Split on the choices for the first few vertices and enumerate the
    // remaining suffixes in parallel.
    let depth = n.min(8);
    let mut prefixes = Vec::new();
    walk_independent(&adj[..depth], 0, 0, 0, &mut |m| prefixes.push(m));
    let partials: Vec<Vec<u64>> = prefixes
        .par_iter()
        .map(|&prefix| {
            let blocked = (0..depth)
                .filter(|&v| prefix >> v & 1 == 1)
                .fold(0u64, |b, v| b | adj[v]);
            let mut counts = vec![0u64; n + 1];
            walk_independent(&adj, depth, prefix, blocked, &mut |m| {
                counts[m.count_ones() as usize] += 1
            });
            counts
        })
        .collect();
    let mut coeffs = vec![0u64; n + 1];
    for p in partials {
        for (c, x) in coeffs.iter_mut().zip(p) {
            *c += x;
        }
    }
    while coeffs.len() > 1 && coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    Ok(coeffs)
}

/// `Z_G(λ) = Σ_I λ^{|I|}` at rational `λ`.
pub fn exact_hardcore(
    g: &Graph,
    lambda: &BigRational,
    limits: &OracleLimits,
) -> Result<ExactValue> {
    let start = Instant::now();
    let coeffs = hardcore_coefficients(g, limits)?;
    let value = eval_rational(&coeffs, lambda);
    Ok(ExactValue {
        log_value: ln_rational(&value),
        value: Some(value),
        count: coeffs.iter().sum(),
        polynomial: Some(coeffs.iter().map(|&c| BigInt::from(c)).collect()),
        wall_time_ms: elapsed_ms(start),
    })
}

/// `ln Z_G(λ)` at floating `λ`.
pub fn hardcore_log(g: &Graph, lambda: f64, limits: &OracleLimits) -> Result<f64> {
    Ok(log_polynomial(
        &hardcore_coefficients(g, limits)?,
        lambda.ln(),
    ))
}

/// Visits every assignment of `q` colours to the `n` vertices, split in
/// parallel on the colour of vertex 0.
fn par_assignments<T: Send>(
    n: usize,
    q: usize,
    init: impl Fn() -> T + Sync,
    visit: impl Fn(&mut T, &[u8]) + Sync,
) -> Vec<T> {
    (0..q as u8)
        .into_par_iter()
        .map(|first| {
            let mut acc = init();
            let mut col = vec![0u8; n];
            if n == 0 {
                if first == 0 {
                    visit(&mut acc, &col);
                }
                return acc;
            }
            col[0] = first;
            loop {
                visit(&mut acc, &col);
                let mut i = n;
                loop {
                    i -= 1;
                    if i == 0 {
                        return acc;
                    }
                    col[i] += 1;
                    if (col[i] as usize) < q {
                        break;
                    }
                    col[i] = 0;
                }
            }
        })
        .collect()
}

fn monochromatic(g: &Graph, col: &[u8]) -> usize {
    g.edges().iter().filter(|&&(u, v)| col[u] == col[v]).count()
}

/// Histogram of monochromatic-edge counts over all `qⁿ` colourings: the
/// Potts partition function as a polynomial in `x = e^β`.
pub fn potts_polynomial(g: &Graph, q: usize, limits: &OracleLimits) -> Result<Vec<u64>> {
    check("Potts oracle (vertices)", g.n(), limits.assignment_vertices)?;
    let e = g.edge_count();
    let parts = par_assignments(
        g.n(),
        q,
        || vec![0u64; e + 1],
        |h, col| h[monochromatic(g, col)] += 1,
    );
    let mut hist = vec![0u64; e + 1];
    for p in parts {
        for (a, b) in hist.iter_mut().zip(p) {
            *a += b;
        }
    }
    Ok(hist)
}

/// `Z_{G,q}(β) = Σ_σ e^{β·mono(σ)}`, with the exact polynomial in `x = e^β`.
pub fn exact_potts(g: &Graph, q: usize, beta: f64, limits: &OracleLimits) -> Result<ExactValue> {
    let start = Instant::now();
    let hist = potts_polynomial(g, q, limits)?;
    Ok(ExactValue {
        value: None,
        log_value: log_polynomial(&hist, beta),
        count: hist.iter().sum(),
        polynomial: Some(hist.iter().map(|&c| BigInt::from(c)).collect()),
        wall_time_ms: elapsed_ms(start),
    })
}

fn is_proper_assignment(g: &Graph, col: &[u8]) -> bool {
    g.edges().iter().all(|&(u, v)| col[u] != col[v])
}

/// `Z_G(q)`: proper colourings among all `qⁿ` assignments.
pub fn exact_colorings(g: &Graph, q: usize, limits: &OracleLimits) -> Result<ExactValue> {
    let start = Instant::now();
    check(
        "colouring oracle (vertices)",
        g.n(),
        limits.assignment_vertices,
    )?;
    let parts = par_assignments(
        g.n(),
        q,
        || 0u64,
        |c, col| *c += is_proper_assignment(g, col) as u64,
    );
    let count: u64 = parts.into_iter().sum();
    Ok(ExactValue {
        value: Some(BigRational::from_integer(BigInt::from(count))),
        polynomial: None,
        log_value: (count as f64).ln(),
        count,
        wall_time_ms: elapsed_ms(start),
    })
}

/// Vertices within graph distance `k` of `mask`, by breadth-first search.
fn within(adj: &[u64], mask: u64, k: usize) -> u64 {
    let mut reached = mask;
    let mut frontier = mask;
    for _ in 0..k {
        let mut next = 0u64;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[v];
        }
        frontier = next & !reached;
        reached |= next;
        if frontier == 0 {
            break;
        }
    }
    reached
}

/// Components of `mask` in `G^k`.
fn power_components(adj: &[u64], mask: u64, k: usize) -> Vec<u64> {
    let mut left = mask;
    let mut out = Vec::new();
    while left != 0 {
        let seed = left & left.wrapping_neg();
        let mut comp = seed;
        loop {
            let grown = within(adj, comp, k) & mask;
            if grown == comp {
                break;
            }
            comp = grown;
        }
        left &= !comp;
        out.push(comp);
    }
    out
}

/// Pairwise incompatibility masks: polymers at graph distance `≤ k`
/// (including overlapping ones) are incompatible.
pub fn incompatibility_masks(g: &Graph, k: usize, sets: &[VertexSet]) -> Result<Vec<u64>> {
    check("oracle polymer universe", sets.len(), 64)?;
    check("oracle graph (vertices)", g.n(), 64)?;
    let adj = adjacency_masks(g);
    let masks: Vec<u64> = sets.iter().map(mask_of).collect();
    Ok(masks
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let near = within(&adj, a, k);
            masks
                .iter()
                .enumerate()
                .filter(|&(j, &b)| j != i && near & b != 0)
                .fold(0u64, |m, (j, _)| m | 1 << j)
        })
        .collect())
}

/// Every pairwise-compatible family, as a bit mask over polymer ids.
fn compatible_families(incompatible: &[u64]) -> Vec<u64> {
    fn rec(i: usize, incompatible: &[u64], chosen: u64, forbidden: u64, out: &mut Vec<u64>) {
        if i == incompatible.len() {
            out.push(chosen);
            return;
        }
        rec(i + 1, incompatible, chosen, forbidden, out);
        if forbidden >> i & 1 == 0 {
            rec(
                i + 1,
                incompatible,
                chosen | 1 << i,
                forbidden | incompatible[i],
                out,
            );
        }
    }
    let mut out = Vec::new();
    rec(0, incompatible, 0, 0, &mut out);
    out
}

/// Incompatibility masks from an explicit list of incompatible pairs.
pub fn masks_from_pairs(count: usize, pairs: &[(usize, usize)]) -> Vec<u64> {
    let mut masks = vec![0u64; count];
    for &(a, b) in pairs {
        if a != b {
            masks[a] |= 1 << b;
            masks[b] |= 1 << a;
        }
    }
    masks
}

/// `Ξ = Σ_{compatible Γ} Π_{γ∈Γ} w(γ)` over an explicit universe.
pub fn exact_xi(
    weights: &[BigRational],
    incompatible: &[u64],
    limits: &OracleLimits,
) -> Result<BigRational> {
    check("oracle polymer universe", weights.len(), limits.xi_polymers)?;
    Ok(compatible_families(incompatible)
        .into_iter()
        .map(|f| {
            (0..weights.len())
                .filter(|&i| f >> i & 1 == 1)
                .fold(BigRational::one(), |p, i| p * &weights[i])
        })
        .fold(BigRational::zero(), |a, b| a + b))
}

/// `ν(Γ) = Π w(γ)/Ξ` for every compatible family `Γ` (ids ascending).
pub fn exact_nu(
    weights: &[f64],
    incompatible: &[u64],
    limits: &OracleLimits,
) -> Result<Vec<(Vec<usize>, f64)>> {
    check("oracle polymer universe", weights.len(), limits.xi_polymers)?;
    let table: Vec<(Vec<usize>, f64)> = compatible_families(incompatible)
        .into_iter()
        .map(|f| {
            let ids: Vec<usize> = (0..weights.len()).filter(|&i| f >> i & 1 == 1).collect();
            let w = ids.iter().map(|&i| weights[i]).product();
            (ids, w)
        })
        .collect();
    Ok(normalise(table))
}

fn normalise<K>(table: Vec<(K, f64)>) -> Vec<(K, f64)> {
    let total: f64 = table.iter().map(|(_, w)| w).sum();
    table.into_iter().map(|(k, w)| (k, w / total)).collect()
}

/// `μ_{G,λ}(I) = λ^{|I|}/Z_G(λ)` over all independent sets.
pub fn hardcore_measure(
    g: &Graph,
    lambda: f64,
    limits: &OracleLimits,
) -> Result<Vec<(VertexSet, f64)>> {
    let n = g.n();
    check("hard-core measure (vertices)", n, limits.measure_vertices)?;
    let adj = adjacency_masks(g);
    let mut table = Vec::new();
    walk_independent(&adj, 0, 0, 0, &mut |m| {
        table.push((set_of(n, m), lambda.powi(m.count_ones() as i32)))
    });
    Ok(normalise(table))
}

/// Uniform measure on proper `q`-colourings.
pub fn coloring_measure(g: &Graph, q: usize, limits: &OracleLimits) -> Result<Vec<(Vec<u8>, f64)>> {
    check(
        "colouring measure (vertices)",
        g.n(),
        limits.measure_vertices.min(limits.assignment_vertices),
    )?;
    let parts = par_assignments(g.n(), q, Vec::new, |t: &mut Vec<(Vec<u8>, f64)>, col| {
        if is_proper_assignment(g, col) {
            t.push((col.to_vec(), 1.0));
        }
    });
    Ok(normalise(parts.into_iter().flatten().collect()))
}

/// `μ_{G,q,β}(σ) ∝ e^{β·mono(σ)}` over all `qⁿ` colourings.
pub fn potts_measure(
    g: &Graph,
    q: usize,
    beta: f64,
    limits: &OracleLimits,
) -> Result<Vec<(Vec<u8>, f64)>> {
    check(
        "Potts measure (vertices)",
        g.n(),
        limits.measure_vertices.min(limits.assignment_vertices),
    )?;
    let parts = par_assignments(g.n(), q, Vec::new, |t: &mut Vec<(Vec<u8>, f64)>, col| {
        t.push((col.to_vec(), (beta * monochromatic(g, col) as f64).exp()));
    });
    Ok(normalise(parts.into_iter().flatten().collect()))
}

/// The two sums separating the side-split hard-core approximation from the
/// true partition function.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseSums {
    /// `Σ λ^{|I|}` over independent sets sparse on both sides.
    pub both: BigRational,
    /// `Σ λ^{|I|}` over independent sets sparse on neither side.
    pub neither: BigRational,
}

/// A set is sparse on a side when every `G²`-component of its trace there
/// has at most `cap` vertices. Requires a declared bipartition.
pub fn hardcore_sparse_sums(
    g: &Graph,
    lambda: &BigRational,
    odd_cap: usize,
    even_cap: usize,
    limits: &OracleLimits,
) -> Result<SparseSums> {
    let n = g.n();
    check(
        "hard-core sparse oracle (vertices)",
        n,
        limits.hardcore_vertices,
    )?;
    let sides = g.sides().ok_or(Error::NotBipartite)?;
    let odd = mask_of(sides.odd());
    let even = mask_of(sides.even());
    let adj = adjacency_masks(g);
    let sparse = |m: u64, cap: usize| {
        power_components(&adj, m, 2)
            .iter()
            .all(|c| c.count_ones() as usize <= cap)
    };
    let mut both = vec![0u64; n + 1];
    let mut neither = vec![0u64; n + 1];
    walk_independent(&adj, 0, 0, 0, &mut |m| {
        let k = m.count_ones() as usize;
        match (sparse(m & odd, odd_cap), sparse(m & even, even_cap)) {
            (true, true) => both[k] += 1,
            (false, false) => neither[k] += 1,
            _ => {}
        }
    });
    Ok(SparseSums {
        both: eval_rational(&both, lambda),
        neither: eval_rational(&neither, lambda),
    })
}

/// `Σ_r Σ_σ x^{mono(σ)}` over colourings whose non-`r` vertices form a set
/// with every connected component of at most `cap` vertices, as a histogram
/// over monochromatic-edge counts.
pub fn potts_sparse_polynomial(
    g: &Graph,
    q: usize,
    cap: usize,
    limits: &OracleLimits,
) -> Result<Vec<u64>> {
    check(
        "Potts sparse oracle (vertices)",
        g.n(),
        limits.assignment_vertices,
    )?;
    let adj = adjacency_masks(g);
    let e = g.edge_count();
    let parts = par_assignments(
        g.n(),
        q,
        || vec![0u64; e + 1],
        |h, col| {
            let mono = monochromatic(g, col);
            for r in 0..q as u8 {
                let off = col
                    .iter()
                    .enumerate()
                    .filter(|&(_, &c)| c != r)
                    .fold(0u64, |m, (v, _)| m | 1 << v);
                if power_components(&adj, off, 1)
                    .iter()
                    .all(|c| c.count_ones() as usize <= cap)
                {
                    h[mono] += 1;
                }
            }
        },
    );
    let mut hist = vec![0u64; e + 1];
    for p in parts {
        for (a, b) in hist.iter_mut().zip(p) {
            *a += b;
        }
    }
    Ok(hist)
}

/// `|χ_{A,B}(S)|` for every disagreement set `S`: proper colourings grouped
/// by the set of vertices disagreeing with the pattern (odd side coloured
/// from mask `a`, even side from mask `b`).
pub fn disagreement_counts(
    g: &Graph,
    q: usize,
    a: u32,
    b: u32,
    limits: &OracleLimits,
) -> Result<HashMap<VertexSet, u64>> {
    let n = g.n();
    check(
        "disagreement oracle (vertices)",
        n,
        limits.assignment_vertices,
    )?;
    let sides = g.sides().ok_or(Error::NotBipartite)?;
    let odd = mask_of(sides.odd());
    let parts = par_assignments(n, q, HashMap::<u64, u64>::new, |t, col| {
        if !is_proper_assignment(g, col) {
            return;
        }
        let s = (0..n)
            .filter(|&v| {
                let allowed = if odd >> v & 1 == 1 { a } else { b };
                allowed >> col[v] & 1 == 0
            })
            .fold(0u64, |m, v| m | 1 << v);
        *t.entry(s).or_default() += 1;
    });
    let mut out = HashMap::new();
    for p in parts {
        for (s, c) in p {
            *out.entry(set_of(n, s)).or_default() += c;
        }
    }
    Ok(out)
}

/// Components of `set` in `G^k`, for callers comparing decompositions.
pub fn components(g: &Graph, set: &VertexSet, k: usize) -> Vec<VertexSet> {
    let adj = adjacency_masks(g);
    power_components(&adj, mask_of(set), k)
        .into_iter()
        .map(|m| set_of(g.n(), m))
        .collect()
}

/// Total-variation distance between an exact table and empirical counts over
/// `draws` samples; keys missing from the table count fully.
pub fn total_variation<K: std::hash::Hash + Eq>(
    exact: &[(K, f64)],
    empirical: &HashMap<K, u64>,
    draws: u64,
) -> f64 {
    let mut tv = 0.0;
    let mut seen = 0u64;
    for (k, p) in exact {
        let c = empirical.get(k).copied().unwrap_or(0);
        seen += c;
        tv += (p - c as f64 / draws as f64).abs();
    }
    tv += (draws - seen.min(draws)) as f64 / draws as f64;
    tv / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn k33_hardcore() {
        let g = named::complete_bipartite(3, 3);
        let l = OracleLimits::default();
        assert_eq!(
            exact_hardcore(&g, &r(1, 1), &l).unwrap().value,
            Some(r(15, 1))
        );
        let v = exact_hardcore(&g, &r(10, 1), &l).unwrap();
        assert_eq!(v.value, Some(r(2661, 1)));
        assert!((v.log_value - 2661f64.ln()).abs() < 1e-12);
        assert_eq!(v.count, 15);
    }

    #[test]
    fn triangle_potts_and_cycle_colourings() {
        let l = OracleLimits::default();
        assert_eq!(
            potts_polynomial(&named::complete(3), 2, &l).unwrap(),
            vec![0, 6, 0, 2]
        );
        assert_eq!(exact_colorings(&named::cycle(4), 3, &l).unwrap().count, 18);
        assert_eq!(
            exact_colorings(&named::petersen(), 3, &l).unwrap().count,
            120
        );
    }

    #[test]
    fn k33_even_side_xi() {
        let g = named::complete_bipartite(3, 3)
            .require_bipartition()
            .unwrap();
        let sides = g.sides().unwrap();
        let even: Vec<VertexSet> = sides
            .even()
            .iter()
            .map(|v| VertexSet::singleton(6, v))
            .collect();
        let inc = incompatibility_masks(&g, 2, &even).unwrap();
        let w = vec![r(10, 1331); 3];
        assert_eq!(
            exact_xi(&w, &inc, &OracleLimits::default()).unwrap(),
            r(1361, 1331)
        );
    }

    #[test]
    fn nu_and_mu_tables() {
        let l = OracleLimits::default();
        let nu = exact_nu(
            &[0.1; 3],
            &masks_from_pairs(3, &[(0, 1), (0, 2), (1, 2)]),
            &l,
        )
        .unwrap();
        assert_eq!(nu.len(), 4);
        assert!((nu.iter().map(|x| x.1).sum::<f64>() - 1.0).abs() < 1e-15);
        let mu = hardcore_measure(&named::complete_bipartite(3, 3), 1.0, &l).unwrap();
        assert_eq!(mu.len(), 15);
        assert!(mu.iter().all(|(_, p)| (p - 1.0 / 15.0).abs() < 1e-15));
    }

    #[test]
    fn k33_sparse_correction() {
        let g = named::complete_bipartite(3, 3)
            .require_bipartition()
            .unwrap();
        let s = hardcore_sparse_sums(&g, &r(10, 1), 1, 1, &OracleLimits::default()).unwrap();
        assert_eq!(s.both, r(61, 1));
        assert!(s.neither.is_zero());
    }

    #[test]
    fn triangle_sparse_potts() {
        let hist =
            potts_sparse_polynomial(&named::complete(3), 2, 1, &OracleLimits::default()).unwrap();
        assert_eq!(hist, vec![0, 6, 0, 2]);
    }

    #[test]
    fn disagreement_sets_partition_colourings() {
        let g = named::cycle(6).require_bipartition().unwrap();
        let counts = disagreement_counts(&g, 3, 0b001, 0b110, &OracleLimits::default()).unwrap();
        assert_eq!(counts.values().sum::<u64>(), 66);
        assert_eq!(counts[&VertexSet::empty(6)], 8);
    }

    #[test]
    fn caps_enforced() {
        let l = OracleLimits {
            assignment_vertices: 3,
            ..OracleLimits::default()
        };
        assert!(exact_colorings(&named::cycle(4), 3, &l).is_err());
    }

    #[test]
    fn components_in_square() {
        let g = named::path(5);
        let set = VertexSet::from_vertices(5, [0, 2, 4]);
        assert_eq!(components(&g, &set, 1).len(), 3);
        assert_eq!(components(&g, &set, 2).len(), 1);
    }
}
