//! Exact polymer partition function `Ξ = Σ_{compatible Γ} ∏ w_γ` by the
//! recursion `Ξ(U) = Ξ(U ∖ p) + w_p Ξ(U ∖ N[p])`, memoised on the set of
//! remaining polymers.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::One;

use super::PolymerIndex;
use crate::error::{Error, Result};
use crate::numeric::log_add_exp;

/// Default cap on memoised sub-universes.
pub const DEFAULT_XI_STATES: usize = 2_000_000;

/// Commutative semiring the recursion runs in.
pub trait XiAlgebra: Clone {
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
}

/// A positive real stored as its natural logarithm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogValue(pub f64);

impl XiAlgebra for LogValue {
    fn one() -> Self {
        LogValue(0.0)
    }
    fn add(&self, other: &Self) -> Self {
        LogValue(log_add_exp(self.0, other.0))
    }
    fn mul(&self, other: &Self) -> Self {
        LogValue(self.0 + other.0)
    }
}

impl XiAlgebra for BigRational {
    fn one() -> Self {
        One::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

type Bits = Vec<u64>;

/// Exact `Ξ` over the polymers flagged in `alive`, with memo reuse across
/// calls on the same index.
pub struct XiSolver<'a, A: XiAlgebra> {
    closed: Vec<Bits>,
    weights: &'a [A],
    memo: HashMap<Bits, A>,
    visited: usize,
    max_states: usize,
}

impl<'a, A: XiAlgebra> XiSolver<'a, A> {
    pub fn new(index: &PolymerIndex, weights: &'a [A], max_states: usize) -> Self {
        assert_eq!(weights.len(), index.len());
        let words = index.len().div_ceil(64).max(1);
        let closed = (0..index.len())
            .map(|i| {
                let mut b = vec![0u64; words];
                set(&mut b, i);
                for &j in index.incompatible(i) {
                    set(&mut b, j);
                }
                b
            })
            .collect();
        XiSolver {
            closed,
            weights,
            memo: HashMap::new(),
            visited: 0,
            max_states,
        }
    }

    pub fn full_set(&self) -> Vec<bool> {
        vec![true; self.weights.len()]
    }

    pub fn solve(&mut self, alive: &[bool]) -> Result<A> {
        let words = self.weights.len().div_ceil(64).max(1);
        let mut bits = vec![0u64; words];
        for (i, &a) in alive.iter().enumerate() {
            if a {
                set(&mut bits, i);
            }
        }
        self.eval(bits)
    }

    fn eval(&mut self, bits: Bits) -> Result<A> {
        let Some(p) = first(&bits) else {
            return Ok(A::one());
        };
        if let Some(v) = self.memo.get(&bits) {
            return Ok(v.clone());
        }
        self.visited += 1;
        if self.visited > self.max_states {
            return Err(Error::TooLarge {
                what: "exact polymer partition function state space",
                size: self.visited,
                cap: self.max_states,
            });
        }
        let mut without = bits.clone();
        clear(&mut without, p);
        let mut apart = bits.clone();
        for (w, c) in apart.iter_mut().zip(&self.closed[p]) {
            *w &= !c;
        }
        let a = self.eval(without)?;
        let b = self.eval(apart)?;
        let v = a.add(&self.weights[p].mul(&b));
        self.memo.insert(bits, v.clone());
        Ok(v)
    }
}

fn set(b: &mut [u64], i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn clear(b: &mut [u64], i: usize) {
    b[i / 64] &= !(1 << (i % 64));
}

fn first(b: &[u64]) -> Option<usize> {
    b.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

/// `Ξ` over the whole index in any algebra.
pub fn xi_exact_with<A: XiAlgebra>(
    index: &PolymerIndex,
    weights: &[A],
    max_states: usize,
) -> Result<A> {
    let mut solver = XiSolver::new(index, weights, max_states);
    let all = solver.full_set();
    solver.solve(&all)
}

/// `ln Ξ` in floating point.
pub fn xi_log(index: &PolymerIndex) -> Result<f64> {
    let w: Vec<LogValue> = index
        .polymers()
        .iter()
        .map(|p| LogValue(p.log_weight))
        .collect();
    Ok(xi_exact_with(index, &w, DEFAULT_XI_STATES)?.0)
}

/// Alias of [`xi_log`].
pub fn xi_exact(index: &PolymerIndex) -> Result<f64> {
    xi_log(index)
}

/// `Ξ` as an exact rational; needs exact polymer weights.
pub fn xi_rational(index: &PolymerIndex) -> Result<BigRational> {
    let w = index
        .exact_weights()
        .ok_or_else(|| Error::InvalidParameter("index has no exact weights".into()))?;
    if w.is_empty() {
        return Ok(<BigRational as One>::one());
    }
    xi_exact_with(index, &w, DEFAULT_XI_STATES)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymer::AbstractPolymer;
    use num_bigint::BigInt;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn three_incompatible() {
        let idx = PolymerIndex::from_parts(
            vec![AbstractPolymer::unit_exact(r(10, 1331)); 3],
            &[(0, 1), (0, 2), (1, 2)],
        );
        assert_eq!(xi_rational(&idx).unwrap(), r(1361, 1331));
        assert!((xi_log(&idx).unwrap() - (1361f64 / 1331.0).ln()).abs() < 1e-15);
    }

    #[test]
    fn compatible_pair_factorises() {
        let idx = PolymerIndex::from_parts(
            vec![
                AbstractPolymer::unit_exact(r(1, 3)),
                AbstractPolymer::unit_exact(r(2, 5)),
            ],
            &[],
        );
        assert_eq!(xi_rational(&idx).unwrap(), r(4, 3) * r(7, 5));
    }

    #[test]
    fn empty_is_one() {
        let idx = PolymerIndex::from_parts(Vec::new(), &[]);
        assert_eq!(xi_rational(&idx).unwrap(), <BigRational as One>::one());
        assert_eq!(xi_log(&idx).unwrap(), 0.0);
    }

    #[test]
    fn path_of_four_polymers() {
        // Independent sets of P4 weighted by w: 1 + 4w + 3w² .
        let w = r(1, 2);
        let idx = PolymerIndex::from_parts(
            vec![AbstractPolymer::unit_exact(w.clone()); 4],
            &[(0, 1), (1, 2), (2, 3)],
        );
        let expected = r(1, 1) + r(4, 1) * w.clone() + r(3, 1) * w.clone() * w;
        assert_eq!(xi_rational(&idx).unwrap(), expected);
    }

    #[test]
    fn state_cap() {
        let idx = PolymerIndex::from_parts(vec![AbstractPolymer::unit(0.1); 20], &[]);
        let w = vec![LogValue(0.1f64.ln()); 20];
        assert!(matches!(
            xi_exact_with(&idx, &w, 5),
            Err(Error::TooLarge { .. })
        ));
    }
}
