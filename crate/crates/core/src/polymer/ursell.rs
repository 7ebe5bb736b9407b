//! Exact Ursell function `U(H) = Σ_{A ⊆ E(H) spanning connected} (−1)^{|A|}`
//! and `φ(H) = U(H)/|V(H)|!`.
//!
//! `U` only depends on the underlying simple graph: parallel edges collapse
//! (a non-empty bundle contributes `−1`, just like a single edge) and a loop
//! contributes `1 − 1 = 0`.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Node cap for arbitrary graphs (adjacency is stored in `u32` masks).
pub const MAX_URSELL_NODES: usize = 20;

const BRUTE_FORCE_EDGES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UrsellValue {
    pub u: BigInt,
    pub nodes: usize,
}

impl UrsellValue {
    /// `φ(H) = U(H)/c!`.
    pub fn phi(&self) -> BigRational {
        BigRational::new(self.u.clone(), factorial(self.nodes))
    }
}

pub(crate) fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

fn validate(adj: &[u32]) -> Result<()> {
    let c = adj.len();
    if c == 0 || c > MAX_URSELL_NODES {
        return Err(Error::TooLarge {
            what: "Ursell graph",
            size: c,
            cap: MAX_URSELL_NODES,
        });
    }
    for (v, &row) in adj.iter().enumerate() {
        if row >> c != 0 {
            return Err(Error::InvalidParameter(format!(
                "node {v} has a neighbour outside the graph"
            )));
        }
        for w in 0..c {
            if (row >> w & 1) != (adj[w] >> v & 1) {
                return Err(Error::InvalidParameter("adjacency is not symmetric".into()));
            }
        }
    }
    if !connected(adj) {
        return Err(Error::Disconnected);
    }
    Ok(())
}

fn connected(adj: &[u32]) -> bool {
    let c = adj.len();
    if c == 0 {
        return false;
    }
    let all = if c == 32 { u32::MAX } else { (1u32 << c) - 1 };
    let mut seen = 1u32;
    let mut frontier = 1u32;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = adj[v] & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen == all
}

fn has_loop(adj: &[u32]) -> bool {
    adj.iter().enumerate().any(|(v, &row)| row >> v & 1 == 1)
}

/// `U(H)` for a connected simple graph given by symmetric adjacency masks,
/// by deletion–contraction `U(G) = U(G − e) − U(G / e)` with memoisation.
/// A loop anywhere makes `U = 0`.
pub fn ursell(adj: &[u32]) -> Result<UrsellValue> {
    if has_loop(adj) {
        let stripped: Vec<u32> = adj
            .iter()
            .enumerate()
            .map(|(v, &r)| r & !(1 << v))
            .collect();
        validate(&stripped)?;
        return Ok(UrsellValue {
            u: BigInt::zero(),
            nodes: adj.len(),
        });
    }
    validate(adj)?;
    let u = MEMO.with(|m| deletion_contraction(adj, &mut m.borrow_mut()));
    Ok(UrsellValue {
        u,
        nodes: adj.len(),
    })
}

thread_local! {
    static MEMO: RefCell<HashMap<Vec<u32>, BigInt>> = RefCell::new(HashMap::new());
}

fn edge_count(adj: &[u32]) -> usize {
    adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
}

fn deletion_contraction(adj: &[u32], memo: &mut HashMap<Vec<u32>, BigInt>) -> BigInt {
    let c = adj.len();
    if c == 1 {
        return BigInt::one();
    }
    if !connected(adj) {
        return BigInt::zero();
    }
    let sign = if c % 2 == 1 {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let e = edge_count(adj);
    if e == c - 1 {
        return sign;
    }
    if e == c * (c - 1) / 2 {
        return sign * factorial(c - 1);
    }
    if e <= BRUTE_FORCE_EDGES {
        return edge_subset_sum(adj);
    }
    if let Some(v) = memo.get(adj) {
        return v.clone();
    }
    // Branch on an edge at a minimum-degree vertex.
    let u = (0..c).min_by_key(|&v| adj[v].count_ones()).unwrap();
    let v = adj[u].trailing_zeros() as usize;

    let mut deleted = adj.to_vec();
    deleted[u] &= !(1 << v);
    deleted[v] &= !(1 << u);

    let contracted = contract(adj, u, v);
    let result = deletion_contraction(&deleted, memo) - deletion_contraction(&contracted, memo);
    memo.insert(adj.to_vec(), result.clone());
    result
}

/// Merges `v` into `u`, dropping the edge `uv` and relabelling `v`'s
/// successors down by one.
fn contract(adj: &[u32], u: usize, v: usize) -> Vec<u32> {
    let squeeze = |mask: u32| -> u32 {
        let low = mask & ((1u32 << v) - 1);
        let high = if v + 1 >= 32 { 0 } else { mask >> (v + 1) };
        low | (high << v)
    };
    let mut merged = adj.to_vec();
    merged[u] = (adj[u] | adj[v]) & !(1 << u) & !(1 << v);
    for w in 0..adj.len() {
        if w != u && w != v && adj[w] >> v & 1 == 1 {
            merged[w] = (merged[w] & !(1 << v)) | (1 << u);
        }
    }
    merged
        .iter()
        .enumerate()
        .filter(|&(w, _)| w != v)
        .map(|(_, &row)| squeeze(row))
        .collect()
}

fn edge_subset_sum(adj: &[u32]) -> BigInt {
    let c = adj.len();
    let edges: Vec<(usize, usize)> = (0..c)
        .flat_map(|a| {
            (a + 1..c)
                .filter(move |&b| adj[a] >> b & 1 == 1)
                .map(move |b| (a, b))
        })
        .collect();
    let mut total: i64 = 0;
    for mask in 0u64..1 << edges.len() {
        let mut sub = vec![0u32; c];
        for (i, &(a, b)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                sub[a] |= 1 << b;
                sub[b] |= 1 << a;
            }
        }
        if connected(&sub) {
            total += if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        }
    }
    BigInt::from(total)
}

/// `U(H)` by direct enumeration of all edge subsets (at most 24 edges).
pub fn ursell_edge_subsets(adj: &[u32]) -> Result<UrsellValue> {
    if has_loop(adj) {
        return ursell(adj);
    }
    validate(adj)?;
    let e = edge_count(adj);
    if e > 24 {
        return Err(Error::TooLarge {
            what: "edge set for subset enumeration",
            size: e,
            cap: 24,
        });
    }
    Ok(UrsellValue {
        u: edge_subset_sum(adj),
        nodes: adj.len(),
    })
}

/// `U` of the blow-up of a type graph: type `i` is replaced by `mults[i]`
/// pairwise adjacent copies, and copies of adjacent types are fully joined.
/// This is the incompatibility graph of a cluster whose distinct polymers
/// have incompatibility masks `types` (self-incompatibility is implicit).
///
/// Uses the exponential formula on count vectors: with `f(S) = [E(S) = ∅]`
/// and a distinguished node `s₀`, `U(S) = f(S) − Σ_{∅ ≠ R ⊆ S∖s₀} U(S∖R) f(R)`,
/// where only independent `R` contribute and `U(S)` depends on `S` only
/// through its count vector.
pub struct Blowup<'a> {
    types: &'a [u32],
    memo: HashMap<Vec<u32>, BigInt>,
}

impl<'a> Blowup<'a> {
    pub fn new(types: &'a [u32]) -> Self {
        assert!(types.len() <= 32);
        Blowup {
            types,
            memo: HashMap::new(),
        }
    }

    pub fn value(&mut self, counts: &[u32]) -> BigInt {
        assert_eq!(counts.len(), self.types.len());
        if counts.iter().all(|&c| c == 0) {
            return BigInt::zero();
        }
        self.eval(counts.to_vec())
    }

    fn independent(&self, support: u32) -> bool {
        let mut rest = support;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.types[i] & support & !(1 << i) != 0 {
                return false;
            }
        }
        true
    }

    fn eval(&mut self, counts: Vec<u32>) -> BigInt {
        if let Some(v) = self.memo.get(&counts) {
            return v.clone();
        }
        let support: u32 = counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .fold(0, |m, (i, _)| m | 1 << i);
        let i0 = support.trailing_zeros() as usize;
        let mut value = if counts.iter().all(|&c| c <= 1) && self.independent(support) {
            BigInt::one()
        } else {
            BigInt::zero()
        };
        // Non-empty independent R ⊆ support avoiding the distinguished copy.
        let mut sub = support;
        while sub != 0 {
            if self.independent(sub) {
                let mut ways = BigInt::one();
                let mut rest = sub;
                while rest != 0 {
                    let i = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    ways *= counts[i] - u32::from(i == i0);
                }
                if !ways.is_zero() {
                    let mut smaller = counts.clone();
                    let mut rest = sub;
                    while rest != 0 {
                        let i = rest.trailing_zeros() as usize;
                        rest &= rest - 1;
                        smaller[i] -= 1;
                    }
                    let inner = self.eval(smaller);
                    value -= ways * inner;
                }
            }
            sub = (sub - 1) & support;
        }
        self.memo.insert(counts, value.clone());
        value
    }
}

/// One-shot [`Blowup::value`].
pub fn ursell_blowup(types: &[u32], counts: &[u32]) -> BigInt {
    Blowup::new(types).value(counts)
}

/// `|U|` as `f64` logarithm and sign, for log-space term assembly.
pub(crate) fn log_abs_and_sign(x: &BigRational) -> (f64, f64) {
    use num_traits::ToPrimitive;
    let sign = if x.is_negative() { -1.0 } else { 1.0 };
    let num = x.numer().abs().to_f64().unwrap_or(f64::INFINITY);
    let den = x.denom().to_f64().unwrap_or(f64::INFINITY);
    if num.is_finite() && den.is_finite() {
        (num.ln() - den.ln(), sign)
    } else {
        (big_ln(x.numer()) - big_ln(x.denom()), sign)
    }
}

fn big_ln(x: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    let bits = x.bits();
    if bits < 1000 {
        return x.abs().to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top: BigInt = x.abs() >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}
