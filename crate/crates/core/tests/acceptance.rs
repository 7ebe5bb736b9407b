//! Acceptance suite: ten end-to-end criteria, one PASS/FAIL line each.
//!
//! Runs with `harness = false` so the verdict lines always reach stdout.
//! Reference values come from the exhaustive oracle or from closed forms
//! computed here, never from the code under test.

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polymer_expansion::graph::{
    expansion_exact, expansion_spectral, named, random_regular, DEFAULT_EXACT_CAP,
};
use polymer_expansion::models::{
    coloring_analytic_kp, coloring_brute_count, coloring_count, coloring_weight,
    enumerate_patterns, extension_count, hc_analytic_kp, hc_brute_coefficients, hc_count,
    hc_random_analytic_kp, hc_tilde_exact, potts_analytic_kp, potts_brute_histogram,
    potts_certified_count, potts_count, potts_tilde_log, potts_xi_polynomial, ColoringParams,
    HardCoreParams, HardCoreSampler, HardCoreVariant, Laurent, PottsParams, DEFAULT_C,
};
use polymer_expansion::oracle::{self, OracleLimits};
use polymer_expansion::polymer::{truncated_expansion, ursell, ursell_blowup, PolymerIndex};
use polymer_expansion::sampler::{is_compatible_family, PolymerSampler, XiMethod};
use polymer_expansion::{Graph, KpStatus, Method, VertexSet};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn bip(g: Graph) -> Graph {
    if g.sides().is_some() {
        g
    } else {
        g.require_bipartition().expect("bipartite corpus graph")
    }
}

fn cubic_bipartite(n: usize, seed: u64) -> Graph {
    random_regular(n, 3, true, seed).expect("generator")
}

// ---------------------------------------------------------------- criterion 1

/// `U(H)` by summing `(−1)^{|A|}` over spanning connected subsets of a
/// multigraph's edge list.
fn ursell_edge_oracle(nodes: usize, edges: &[(usize, usize)]) -> BigInt {
    let mut total = BigInt::zero();
    for subset in 0u32..1 << edges.len() {
        let mut parent: Vec<usize> = (0..nodes).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut comps = nodes;
        for (i, &(a, b)) in edges.iter().enumerate() {
            if subset >> i & 1 == 1 {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                    comps -= 1;
                }
            }
        }
        if comps == 1 {
            total += if subset.count_ones() % 2 == 0 { 1 } else { -1 };
        }
    }
    total
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |a, i| a * i)
}

fn simple_adjacency(nodes: usize, edges: &[(usize, usize)]) -> Vec<u32> {
    let mut adj = vec![0u32; nodes];
    for &(a, b) in edges {
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    adj
}

fn connected(adj: &[u32]) -> bool {
    let mut seen = 1u32;
    let mut stack = vec![0usize];
    while let Some(v) = stack.pop() {
        let fresh = adj[v] & !seen;
        seen |= fresh;
        stack.extend((0..adj.len()).filter(|&w| fresh >> w & 1 == 1));
    }
    seen.count_ones() as usize == adj.len()
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut clusters = 0;
    let mut multigraphs = 0;
    // Incompatibility graphs of random cluster multisets.
    while clusters < 300 {
        let t = rng.random_range(1..=4usize);
        let mut types = vec![0u32; t];
        for i in 0..t {
            for j in i + 1..t {
                if rng.random_bool(0.5) {
                    types[i] |= 1 << j;
                    types[j] |= 1 << i;
                }
            }
        }
        let counts: Vec<u32> = (0..t).map(|_| rng.random_range(1..=3)).collect();
        if counts.iter().sum::<u32>() > 6 {
            continue;
        }
        let copies: Vec<usize> = counts
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| std::iter::repeat_n(i, c as usize))
            .collect();
        let mut edges = Vec::new();
        for a in 0..copies.len() {
            for b in a + 1..copies.len() {
                if copies[a] == copies[b] || types[copies[a]] >> copies[b] & 1 == 1 {
                    edges.push((a, b));
                }
            }
        }
        let adj = simple_adjacency(copies.len(), &edges);
        if !connected(&adj) || edges.len() > 15 {
            continue;
        }
        let want = ursell_edge_oracle(copies.len(), &edges);
        let got = ursell(&adj).map_err(|e| e.to_string())?;
        ensure(got.u == want, || {
            format!("ursell mismatch on cluster {counts:?}/{types:?}")
        })?;
        ensure(
            got.phi() == BigRational::new(want.clone(), factorial(copies.len())),
            || "phi normalisation".into(),
        )?;
        ensure(ursell_blowup(&types, &counts) == want, || {
            format!("blow-up mismatch on {counts:?}/{types:?}")
        })?;
        clusters += 1;
    }
    // Multigraphs with parallel edges.
    while multigraphs < 200 {
        let nodes = rng.random_range(2..=6usize);
        let mut edges = Vec::new();
        for a in 0..nodes {
            for b in a + 1..nodes {
                for _ in 0..rng.random_range(0..=2) {
                    edges.push((a, b));
                }
            }
        }
        let adj = simple_adjacency(nodes, &edges);
        if !connected(&adj) || edges.len() > 16 {
            continue;
        }
        let got = ursell(&adj).map_err(|e| e.to_string())?.u;
        ensure(got == ursell_edge_oracle(nodes, &edges), || {
            format!("multigraph mismatch {edges:?}")
        })?;
        multigraphs += 1;
    }
    let phi = |adj: &[u32]| ursell(adj).unwrap().phi();
    ensure(phi(&[0b10, 0b01]) == r(-1, 2), || "phi(K2)".into())?;
    ensure(phi(&[0b010, 0b101, 0b010]) == r(1, 6), || "phi(P3)".into())?;
    ensure(phi(&[0b110, 0b101, 0b011]) == r(1, 3), || "phi(K3)".into())?;
    Ok(format!("{clusters} cluster graphs and {multigraphs} multigraphs exact; phi(K2)=-1/2, phi(P3)=1/6, phi(K3)=1/3"))
}

// ---------------------------------------------------------------- criterion 2

fn log1p_taylor(x: f64, order: usize) -> f64 {
    (1..=order)
        .map(|k| if k % 2 == 1 { 1.0 } else { -1.0 } * x.powi(k as i32) / k as f64)
        .sum()
}

fn criterion_2() -> Outcome {
    let mut worst: f64 = 0.0;
    for w in [0.05, 0.1] {
        for (p, scale) in [(3usize, 3.0), (1, 1.0)] {
            let index = PolymerIndex::mutually_incompatible(p, w);
            for j in 1..=8 {
                // Unit polymers with g = 1: g(Γ) < j + 1/2 keeps total size ≤ j.
                let t = truncated_expansion(&index, j as f64 + 0.5)
                    .map_err(|e| e.to_string())?
                    .value;
                let err = (t - log1p_taylor(scale * w, j)).abs();
                worst = worst.max(err);
                ensure(err <= 1e-12, || {
                    format!("p={p} w={w} j={j}: |T - taylor| = {err:e}")
                })?;
            }
        }
    }
    Ok(format!(
        "orders 1..8, w in {{0.05, 0.1}}, max deviation {worst:.1e} <= 1e-12"
    ))
}

// ---------------------------------------------------------------- criterion 3

fn criterion_3() -> Outcome {
    let g = named::complete(3);
    let limits = OracleLimits::default();
    let hist = oracle::potts_polynomial(&g, 2, &limits).map_err(|e| e.to_string())?;
    let xi = potts_xi_polynomial(&g, 2).map_err(|e| e.to_string())?;
    let lhs = xi.scaled(&BigInt::from(2), g.edge_count() as i64);
    let rhs = Laurent::from_polynomial(&hist);
    ensure(lhs == rhs, || {
        format!("polynomial identity fails: {lhs:?} vs {rhs:?}")
    })?;
    let mut worst: f64 = 0.0;
    for k in 1..=10 {
        let beta = 0.5 * k as f64;
        let exact = oracle::exact_potts(&g, 2, beta, &limits)
            .map_err(|e| e.to_string())?
            .log_value;
        let ours = potts_tilde_log(&g, &PottsParams::new(2, beta)).map_err(|e| e.to_string())?;
        worst = worst.max((exact - ours).abs());
    }
    ensure(worst <= 1e-10, || format!("numerical deviation {worst:e}"))?;
    Ok(format!(
        "2x^3 Xi = 2x^3 + 6x exactly; beta in 0.5..5 max |dlog| {worst:.1e}"
    ))
}

// ---------------------------------------------------------------- criterion 4

fn criterion_4() -> Outcome {
    let limits = OracleLimits::default();
    let mut graphs = vec![bip(named::complete_bipartite(3, 3))];
    for (i, n) in [8, 8, 8, 10, 10, 10, 12, 12, 12, 12]
        .into_iter()
        .enumerate()
    {
        graphs.push(cubic_bipartite(n, 400 + i as u64));
    }
    for g in &graphs {
        let sides = g.sides().expect("sides");
        let (odd_cap, even_cap) = (sides.odd().len() / 2, sides.even().len() / 2);
        for lambda in [r(1, 1), r(10, 1)] {
            let tilde =
                hc_tilde_exact(g, &lambda, HardCoreVariant::Expander).map_err(|e| e.to_string())?;
            let z = oracle::exact_hardcore(g, &lambda, &limits)
                .map_err(|e| e.to_string())?
                .value
                .unwrap();
            let sums = oracle::hardcore_sparse_sums(g, &lambda, odd_cap, even_cap, &limits)
                .map_err(|e| e.to_string())?;
            ensure(&tilde - &z == &sums.both - &sums.neither, || {
                format!("identity fails on n={} at lambda={lambda}", g.n())
            })?;
            ensure(sums.neither.is_zero(), || {
                format!(
                    "n={}: sets sparse on neither side carry mass {}",
                    g.n(),
                    sums.neither
                )
            })?;
        }
    }
    let k33 = &graphs[0];
    let tilde =
        hc_tilde_exact(k33, &r(10, 1), HardCoreVariant::Expander).map_err(|e| e.to_string())?;
    let z = oracle::exact_hardcore(k33, &r(10, 1), &limits)
        .map_err(|e| e.to_string())?
        .value
        .unwrap();
    ensure(tilde == r(2722, 1) && z == r(2661, 1), || {
        format!("K33: tilde {tilde}, Z {z}")
    })?;
    Ok(format!(
        "{} graphs x lambda in {{1,10}} exact; K33: 2722 - 2661 = 61",
        graphs.len()
    ))
}

// ---------------------------------------------------------------- criterion 5

fn criterion_5() -> Outcome {
    let limits = OracleLimits::default();
    let mut lines = Vec::new();
    let mut failures = Vec::new();
    for (i, n) in [10usize, 12, 14].into_iter().enumerate() {
        let g = cubic_bipartite(n, 500 + i as u64);
        let h = expansion_exact(&g, DEFAULT_EXACT_CAP)
            .map_err(|e| e.to_string())?
            .edge_expansion
            .ok_or("no edge expansion")?
            .to_f64();
        let z_hc = oracle::hardcore_log(&g, 50.0, &limits).map_err(|e| e.to_string())?;
        let q = 3;
        let beta = 1.05 * (4.0 + 2.0 * ((q * 3) as f64).ln()) / h;
        let z_potts = oracle::exact_potts(&g, q, beta, &limits)
            .map_err(|e| e.to_string())?
            .log_value;
        for eps in [0.1, 0.01] {
            let hc = hc_count(&g, &HardCoreParams::new(50.0), eps).map_err(|e| e.to_string())?;
            let potts = potts_count(&g, &PottsParams::new(q, beta).with_alpha(h), eps)
                .map_err(|e| e.to_string())?;
            for (label, res, exact) in [("hardcore", &hc, z_hc), ("potts", &potts, z_potts)] {
                let err = (res.log_z - exact).abs();
                let status = res.kp_status;
                lines.push(format!(
                    "{label} n={n} eps={eps}: err {err:.2e} kp {status:?}"
                ));
                if err > eps && status != Some(KpStatus::Violated) {
                    failures.push(format!(
                        "{label} n={n} eps={eps}: |dlog| = {err:.3e} > eps with kp {status:?}"
                    ));
                }
            }
        }
    }
    if failures.is_empty() {
        Ok(lines.join("; "))
    } else {
        Err(failures.join("; "))
    }
}

// ---------------------------------------------------------------- criterion 6

fn closure(g: &Graph, s: &VertexSet) -> VertexSet {
    let mut c = s.clone();
    for v in s.iter() {
        for &w in g.neighbors(v) {
            c.insert(w);
        }
    }
    c
}

fn criterion_6() -> Outcome {
    let limits = OracleLimits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let patterns = enumerate_patterns(3);
    let graphs: Vec<Graph> = [(6, 2), (8, 3), (10, 3), (10, 2)]
        .into_iter()
        .enumerate()
        .map(|(i, (n, d))| random_regular(n, d, true, 600 + i as u64).expect("generator"))
        .collect();
    let mut cache: HashMap<(usize, usize), HashMap<VertexSet, u64>> = HashMap::new();
    let mut nonzero = 0;
    for trial in 0..20 {
        let gi = trial % graphs.len();
        let g = &graphs[gi];
        let n = g.n();
        let pi = rng.random_range(0..patterns.len());
        let p = patterns[pi];
        let counts = match cache.entry((gi, pi)) {
            std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
            std::collections::hash_map::Entry::Vacant(e) => e.insert(
                oracle::disagreement_counts(g, 3, p.a, p.b, &limits).map_err(|e| e.to_string())?,
            ),
        };
        // Odd trials draw a realised disagreement set, even ones a uniform
        // small set (usually with no colouring behind it).
        let s = if trial % 2 == 1 {
            let mut keys: Vec<&VertexSet> = counts
                .keys()
                .filter(|k| !k.is_empty() && k.len() <= n / 2)
                .collect();
            keys.sort();
            keys[rng.random_range(0..keys.len())].clone()
        } else {
            let size = rng.random_range(1..=3usize);
            VertexSet::from_vertices(n, (0..size).map(|_| rng.random_range(0..n)))
        };
        let chi = BigInt::from(counts.get(&s).copied().unwrap_or(0));
        let chi_hat = extension_count(g, &s, &p, 3).map_err(|e| e.to_string())?;
        let sides = g.sides().expect("sides");
        let plus = closure(g, &s);
        let (a, b) = (BigInt::from(p.a_len()), BigInt::from(p.b_len()));
        let m = n / 2;
        let lhs = &chi
            * num_traits::pow(a.clone(), plus.intersection_len(sides.odd()))
            * num_traits::pow(b.clone(), plus.intersection_len(sides.even()));
        let rhs = BigInt::from(chi_hat) * num_traits::pow(a, m) * num_traits::pow(b, m);
        ensure(lhs == rhs, || {
            format!("extension identity fails for S={s:?} on n={n}")
        })?;
        let product: u64 = oracle::components(g, &s, 3)
            .iter()
            .map(|c| extension_count(g, c, &p, 3).expect("extension count"))
            .product();
        ensure(product == chi_hat, || {
            format!("factorisation over G^3 components fails for S={s:?}")
        })?;
        nonzero += usize::from(chi_hat > 0);
    }
    for (g, want) in [(cubic_bipartite(8, 61), 0.25), (bip(named::cycle(6)), 0.5)] {
        let v = g.sides().expect("sides").odd().first().expect("odd vertex");
        let p = enumerate_patterns(3)
            .into_iter()
            .find(|p| p.a == 0b001)
            .expect("pattern");
        let w = coloring_weight(&g, &VertexSet::singleton(g.n(), v), &p, 3)
            .map_err(|e| e.to_string())?;
        ensure(w.is_some_and(|w| (w - f64::ln(want)).abs() < 1e-12), || {
            format!("single-vertex weight {w:?} != {want}")
        })?;
    }
    Ok(format!("20 sets ({nonzero} with chi > 0) by double enumeration; w({{v}}) = 2^(1-Delta) for Delta = 3, 2"))
}

// ---------------------------------------------------------------- criterion 7

const DRAWS: u64 = 100_000;

fn tv_bound(eps: f64, support: usize) -> f64 {
    eps + 3.0 * (support as f64 / DRAWS as f64).sqrt()
}

fn criterion_7() -> Outcome {
    let eps = 0.02;
    let limits = OracleLimits::default();
    let w = 0.1;
    let index = PolymerIndex::mutually_incompatible(3, w);
    let sampler =
        PolymerSampler::new(&index, eps, XiMethod::Truncated).map_err(|e| e.to_string())?;
    let mut counts: HashMap<Vec<usize>, u64> = HashMap::new();
    for d in 0..DRAWS {
        let mut gamma = sampler.sample(7, d).map_err(|e| e.to_string())?;
        ensure(is_compatible_family(&index, &gamma), || {
            "incompatible configuration emitted".into()
        })?;
        gamma.sort_unstable();
        *counts.entry(gamma).or_default() += 1;
    }
    let nu = oracle::exact_nu(
        &[w; 3],
        &oracle::masks_from_pairs(3, &[(0, 1), (0, 2), (1, 2)]),
        &limits,
    )
    .map_err(|e| e.to_string())?;
    let tv_poly = oracle::total_variation(&nu, &counts, DRAWS);
    let bound_poly = tv_bound(eps, nu.len());
    ensure(tv_poly <= bound_poly, || {
        format!("polymer TV {tv_poly:.4} > {bound_poly:.4}")
    })?;

    let g = bip(named::complete_bipartite(3, 3));
    let hc = HardCoreSampler::new(&g, &HardCoreParams::new(10.0), eps, XiMethod::Truncated)
        .map_err(|e| e.to_string())?;
    ensure(!hc.is_brute(), || "expected the polymer branch".into())?;
    let mut counts: HashMap<VertexSet, u64> = HashMap::new();
    for d in 0..DRAWS {
        let set = hc.sample(11, d).map_err(|e| e.to_string())?;
        ensure(g.is_independent(&set), || {
            "non-independent set emitted".into()
        })?;
        *counts.entry(set).or_default() += 1;
    }
    let mu = oracle::hardcore_measure(&g, 10.0, &limits).map_err(|e| e.to_string())?;
    let tv_hc = oracle::total_variation(&mu, &counts, DRAWS);
    let bound_hc = tv_bound(eps, mu.len());
    ensure(tv_hc <= bound_hc, || {
        format!("hard-core TV {tv_hc:.4} > {bound_hc:.4}")
    })?;
    Ok(format!(
        "3-polymer TV {tv_poly:.4} <= {bound_poly:.4}; K33 lambda=10 TV {tv_hc:.4} <= {bound_hc:.4}; all draws structurally valid"
    ))
}

// ---------------------------------------------------------------- criterion 8

fn criterion_8() -> Outcome {
    let mut checks = Vec::new();
    let (q, delta, alpha) = (3usize, 3usize, 0.5);
    let beta = (4.0 + 2.0 * ((q * delta) as f64).ln()) / alpha;
    checks.push((
        "potts",
        potts_analytic_kp(q, delta, alpha, beta),
        potts_analytic_kp(q, delta, alpha, 0.9 * beta),
    ));
    let (delta, alpha) = (10usize, 1.0);
    let lambda = (2.0 * 3f64.exp() * (delta as f64).powi(4)).powf(1.0 / alpha);
    ensure(lambda >= (11.0 / alpha).exp(), || {
        "chosen point is not KP-bound".into()
    })?;
    checks.push((
        "hardcore",
        hc_analytic_kp(delta, alpha, lambda),
        hc_analytic_kp(delta, alpha, 0.9 * lambda),
    ));
    let delta = 1usize << 10;
    let ld = (delta as f64).ln();
    let lambda = 50.0 * ld * ld / delta as f64;
    checks.push((
        "random",
        hc_random_analytic_kp(delta, lambda),
        hc_random_analytic_kp(delta, 0.9 * lambda),
    ));
    let q = 3usize;
    let lq = (q as f64).ln();
    let delta = (DEFAULT_C * (q * q) as f64 * lq * lq).ceil() as usize;
    checks.push((
        "colorings",
        coloring_analytic_kp(q, delta, DEFAULT_C),
        coloring_analytic_kp(q, (0.9 * delta as f64) as usize, DEFAULT_C),
    ));
    let mut notes = Vec::new();
    for (name, at, below) in &checks {
        ensure(at.threshold_ok, || {
            format!("{name}: threshold value rejected")
        })?;
        ensure(!below.threshold_ok, || {
            format!("{name}: value 10% below accepted")
        })?;
        notes.push(format!("{name} geometric<=target {}", at.geometric_ok));
    }
    let coloring = &checks[3].1;
    ensure(coloring.geometric_ok, || {
        "colorings geometric sum exceeds 1/Delta^3 at threshold".into()
    })?;
    Ok(format!(
        "4 thresholds accepted, 10% below rejected ({})",
        notes.join(", ")
    ))
}

// ---------------------------------------------------------------- criterion 9

fn criterion_9() -> Outcome {
    let mut corpus: Vec<(String, Graph)> = vec![
        ("K4".into(), named::complete(4)),
        ("K5".into(), named::complete(5)),
        ("K33".into(), named::complete_bipartite(3, 3)),
        ("K44".into(), named::complete_bipartite(4, 4)),
        ("C6".into(), named::cycle(6)),
        ("C8".into(), named::cycle(8)),
        ("Petersen".into(), named::petersen()),
    ];
    for (i, &(n, d, b)) in [
        (8, 3, true),
        (10, 3, true),
        (12, 3, true),
        (14, 3, true),
        (16, 3, true),
        (10, 3, false),
        (12, 3, false),
        (16, 3, false),
        (12, 4, false),
        (16, 4, true),
    ]
    .iter()
    .enumerate()
    {
        corpus.push((
            format!("rr({n},{d},{b})"),
            random_regular(n, d, b, 900 + i as u64).expect("generator"),
        ));
    }
    let mut triggered = 0;
    for (name, g) in &corpus {
        let spec = expansion_spectral(g, 0.01).map_err(|e| e.to_string())?;
        let exact = expansion_exact(g, DEFAULT_EXACT_CAP).map_err(|e| e.to_string())?;
        let h = exact.edge_expansion.ok_or("no edge expansion")?.to_f64();
        let lb = spec.cheeger_lb.ok_or("no cheeger bound")?;
        ensure(lb <= h + 1e-9, || {
            format!("{name}: cheeger_lb {lb} > h {h}")
        })?;
        let delta = g.regular_degree().expect("regular") as f64;
        let lam = spec.lambda_abs.ok_or("no lambda")?;
        let predicate = delta >= 3.0 && lam <= 2.0 * (delta - 1.0).sqrt() + 0.01;
        let cert = potts_certified_count(g, 3, 1.0, 0.1).map_err(|e| e.to_string())?;
        ensure(cert.alpha.is_some() == predicate, || {
            format!(
                "{name}: certification path {} but lambda = {lam}",
                cert.alpha.is_some()
            )
        })?;
        if let Some(a) = cert.alpha {
            ensure((a - delta / 40.0).abs() < 1e-15 && lb >= a, || {
                format!("{name}: alpha {a} not Delta/40 below cheeger")
            })?;
            triggered += 1;
        }
    }
    let p = expansion_spectral(&named::petersen(), 0.01).map_err(|e| e.to_string())?;
    let (l2, lb) = (p.lambda2.unwrap(), p.cheeger_lb.unwrap());
    ensure((l2 - 1.0).abs() < 1e-9 && (lb - 1.0).abs() < 1e-9, || {
        format!("Petersen lambda2 {l2}, cheeger {lb}")
    })?;
    Ok(format!("{} graphs: cheeger_lb <= h; Delta/40 path triggered on {triggered} exactly where lambda <= 2 sqrt(Delta-1) + 0.01; Petersen lambda2 = 1, cheeger_lb = 1", corpus.len()))
}

// ---------------------------------------------------------------- criterion 10

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * b.abs().max(1.0)
}

fn criterion_10() -> Outcome {
    let limits = OracleLimits::default();
    let mut runs = 0;
    let potts_graphs = [
        named::complete(3),
        named::cycle(4),
        named::petersen(),
        random_regular(8, 3, false, 77).expect("generator"),
    ];
    for g in &potts_graphs {
        let eps = (-(g.n() as f64) / 2.0).exp();
        for (q, beta) in [(2usize, 0.7), (3, 2.0)] {
            let res = potts_count(g, &PottsParams::new(q, beta), eps).map_err(|e| e.to_string())?;
            let exact = oracle::exact_potts(g, q, beta, &limits).map_err(|e| e.to_string())?;
            ensure(res.method == Method::Brute, || {
                "potts: expected the exhaustive branch".into()
            })?;
            ensure(close(res.log_z, exact.log_value), || {
                format!(
                    "potts n={} q={q}: {} vs {}",
                    g.n(),
                    res.log_z,
                    exact.log_value
                )
            })?;
            let ours = potts_brute_histogram(g, q).map_err(|e| e.to_string())?;
            ensure(
                ours == oracle::potts_polynomial(g, q, &limits).map_err(|e| e.to_string())?,
                || "potts histogram".into(),
            )?;
            runs += 1;
        }
    }
    let bipartite = [
        bip(named::cycle(4)),
        bip(named::cycle(6)),
        bip(named::complete_bipartite(3, 3)),
        cubic_bipartite(8, 78),
        cubic_bipartite(10, 79),
    ];
    for g in &bipartite {
        let n = g.n();
        let eps = 0.5 * 2f64.powi(-(n as i32));
        for lambda in [1.0, 2.5] {
            let res = hc_count(g, &HardCoreParams::new(lambda), eps).map_err(|e| e.to_string())?;
            let exact = oracle::hardcore_log(g, lambda, &limits).map_err(|e| e.to_string())?;
            ensure(res.method == Method::Brute, || {
                "hardcore: expected the exhaustive branch".into()
            })?;
            ensure(close(res.log_z, exact), || {
                format!("hardcore n={n}: {} vs {exact}", res.log_z)
            })?;
            runs += 1;
        }
        ensure(
            hc_brute_coefficients(g).map_err(|e| e.to_string())?
                == oracle::hardcore_coefficients(g, &limits).map_err(|e| e.to_string())?,
            || "hardcore coefficients".into(),
        )?;
        let q = 3;
        let eps = 0.5 * (-(n as f64) / (8.0 * q as f64)).exp();
        let res = coloring_count(g, &ColoringParams::new(q), eps).map_err(|e| e.to_string())?;
        let exact = oracle::exact_colorings(g, q, &limits).map_err(|e| e.to_string())?;
        ensure(res.method == Method::Brute, || {
            "colorings: expected the exhaustive branch".into()
        })?;
        ensure(
            coloring_brute_count(g, q).map_err(|e| e.to_string())? == exact.count as u128,
            || "colouring count".into(),
        )?;
        ensure(close(res.log_z, exact.log_value), || {
            format!("colorings n={n}: {} vs {}", res.log_z, exact.log_value)
        })?;
        runs += 1;
    }
    Ok(format!(
        "{runs} brute-branch runs match the oracle (exact counts, log values to 1e-12)"
    ))
}

// ---------------------------------------------------------------- harness

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, u64); 10] = [
        ("ursell exactness", criterion_1, 5),
        ("cluster-expansion series identity", criterion_2, 1),
        ("potts exactness on K3", criterion_3, 1),
        ("hard-core correction identity", criterion_4, 10),
        ("end-to-end eps contract", criterion_5, 120),
        ("coloring extension identity", criterion_6, 30),
        ("sampler total variation", criterion_7, 180),
        ("threshold arithmetic", criterion_8, 1),
        ("spectral certification", criterion_9, 10),
        ("brute-force branch equivalence", criterion_10, 30),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let id = format!("criterion {:>2}", i + 1);
        if !filter.is_empty()
            && !filter
                .iter()
                .any(|f| id.contains(f.as_str()) || name.contains(f.as_str()))
        {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let took = start.elapsed();
        let over = if took > Duration::from_secs(*budget) {
            format!(" [over {budget}s budget]")
        } else {
            String::new()
        };
        match outcome {
            Ok(detail) => println!(
                "{id} PASS {name} ({:.2}s{over}): {detail}",
                took.as_secs_f64()
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "{id} FAIL {name} ({:.2}s{over}): {detail}",
                    took.as_secs_f64()
                );
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion/criteria failed");
        ExitCode::FAILURE
    }
}
