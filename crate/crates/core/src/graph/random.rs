use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::error::{Error, Result};

/// Configuration-model attempts before giving up on a simple graph.
pub const MAX_REJECTIONS: usize = 10_000;

/// Uniform simple `Δ`-regular graph by the configuration model with
/// rejection. In bipartite mode vertices `0..n/2` form the odd side and
/// half-edges are only paired across sides.
pub fn random_regular(n: usize, delta: usize, bipartite: bool, seed: u64) -> Result<Graph> {
    if bipartite {
        if n % 2 != 0 {
            return Err(Error::Infeasible(format!(
                "bipartite mode needs even n, got {n}"
            )));
        }
        if delta > n / 2 {
            return Err(Error::Infeasible(format!(
                "degree {delta} exceeds side size {}",
                n / 2
            )));
        }
    } else {
        if (n * delta) % 2 != 0 {
            return Err(Error::Infeasible(format!(
                "n * delta = {} is odd",
                n * delta
            )));
        }
        if delta >= n && !(n == 0 && delta == 0) {
            return Err(Error::Infeasible(format!(
                "degree {delta} needs more than {n} vertices"
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half = n / 2;
    let sides = bipartite.then(|| ((0..half).collect::<Vec<_>>(), (half..n).collect::<Vec<_>>()));

    for _ in 0..MAX_REJECTIONS {
        let edges = if bipartite {
            let left: Vec<usize> = (0..half)
                .flat_map(|v| std::iter::repeat_n(v, delta))
                .collect();
            let mut right: Vec<usize> = (half..n)
                .flat_map(|v| std::iter::repeat_n(v, delta))
                .collect();
            right.shuffle(&mut rng);
            left.into_iter().zip(right).collect::<Vec<_>>()
        } else {
            let mut points: Vec<usize> =
                (0..n).flat_map(|v| std::iter::repeat_n(v, delta)).collect();
            points.shuffle(&mut rng);
            points.chunks(2).map(|p| (p[0], p[1])).collect()
        };
        if let Ok(g) = Graph::build(n, &edges, sides.clone()) {
            return Ok(g);
        }
    }
    Err(Error::RejectionLimit(MAX_REJECTIONS))
}
