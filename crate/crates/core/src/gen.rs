//! Random graph generators: Chung-Lu, Chung-Lu with household cliques,
//! a stochastic block model, and bounded-depth trees with pendant paths.
//!
//! All generators are deterministic given their seed. Randomness comes from
//! ChaCha12 (`rand_chacha::ChaCha12Rng`), a portable counter-based stream
//! cipher generator, so outputs are identical across platforms and runs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn rng_for(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

/// Draws per-vertex weights with geometric (exponential-decay) tails and
/// rescales them so they sum to `target_sum`.
fn geometric_weights(n: usize, mean: f64, target_sum: f64, rng: &mut ChaCha12Rng) -> Vec<f64> {
    // Success probability so the pre-scale mean is roughly `mean`.
    let p = (1.0 / mean.max(1.0)).clamp(1e-9, 1.0);
    let mut w: Vec<f64> = (0..n)
        .map(|_| {
            let u: f64 = 1.0 - rng.gen::<f64>(); // in (0, 1]
            let failures = if p >= 1.0 {
                0.0
            } else {
                (u.ln() / (1.0 - p).ln()).floor()
            };
            failures + 1.0
        })
        .collect();
    let total: f64 = w.iter().sum();
    if total > 0.0 {
        let scale = target_sum / total;
        for x in &mut w {
            *x *= scale;
        }
    }
    w
}

fn check_avg_degree(n: usize, avg_degree: f64) -> Result<()> {
    if !avg_degree.is_finite() || avg_degree < 0.0 {
        return Err(Error::InvalidParams(format!(
            "average degree must be a nonnegative finite number, got {}",
            avg_degree
        )));
    }
    if n > 0 && avg_degree > (n - 1) as f64 {
        return Err(Error::InvalidParams(format!(
            "average degree {} exceeds n-1 = {}",
            avg_degree,
            n - 1
        )));
    }
    Ok(())
}

/// Chung-Lu random graph: vertex weights `w` are rescaled to sum to
/// `n * avg_degree` and each pair `{u, v}` appears independently with
/// probability `min(1, w_u * w_v / sum(w))`.
pub fn gen_chung_lu(n: usize, avg_degree: f64, seed: u64) -> Result<Graph> {
    check_avg_degree(n, avg_degree)?;
    let mut rng = rng_for(seed);
    let total = n as f64 * avg_degree;
    let w = geometric_weights(n, avg_degree, total, &mut rng);
    let mut g = Graph::new(n);
    if total <= 0.0 {
        return Ok(g);
    }
    for u in 0..n {
        for v in u + 1..n {
            let p = (w[u] * w[v] / total).min(1.0);
            if rng.gen::<f64>() < p {
                g.add_edge(u as u32, v as u32)?;
            }
        }
    }
    Ok(g)
}

/// Chung-Lu graph with household structure: vertices are grouped into
/// consecutive households of `household_size`, each household forms a clique,
/// and Chung-Lu edges between distinct households target the residual average
/// degree `avg_degree - (household_size - 1)`.
pub fn gen_chung_lu_households(
    n: usize,
    avg_degree: f64,
    household_size: usize,
    seed: u64,
) -> Result<Graph> {
    check_avg_degree(n, avg_degree)?;
    if household_size == 0 {
        return Err(Error::InvalidParams("household size must be positive".into()));
    }
    if n % household_size != 0 {
        return Err(Error::InvalidParams(format!(
            "n = {} is not divisible by household size {}",
            n, household_size
        )));
    }
    let residual = avg_degree - (household_size as f64 - 1.0);
    if residual < 0.0 {
        return Err(Error::InvalidParams(format!(
            "average degree {} is below the intra-household degree {}",
            avg_degree,
            household_size - 1
        )));
    }
    let mut rng = rng_for(seed);
    let total = n as f64 * residual;
    let w = geometric_weights(n, residual.max(1.0), total, &mut rng);
    let mut g = Graph::new(n);
    for h in 0..n / household_size {
        let base = h * household_size;
        for i in base..base + household_size {
            for j in i + 1..base + household_size {
                g.add_edge(i as u32, j as u32)?;
            }
        }
    }
    if total > 0.0 {
        for u in 0..n {
            for v in u + 1..n {
                if u / household_size == v / household_size {
                    continue;
                }
                let p = (w[u] * w[v] / total).min(1.0);
                if rng.gen::<f64>() < p {
                    g.add_edge(u as u32, v as u32)?;
                }
            }
        }
    }
    Ok(g)
}

/// The default 4-block connection matrix used by the stochastic block model
/// experiments.
pub fn sbm_default_matrix() -> Vec<Vec<f64>> {
    vec![
        vec![0.40, 0.30, 0.20, 0.10],
        vec![0.30, 0.50, 0.13, 0.05],
        vec![0.20, 0.13, 0.35, 0.11],
        vec![0.10, 0.05, 0.11, 0.45],
    ]
}

/// Stochastic block model with equal-size blocks: `matrix[i][j]` gives the
/// relative density between blocks `i` and `j`; the whole matrix is rescaled
/// by one global factor so the expected average degree is `avg_degree`.
pub fn gen_sbm(n: usize, avg_degree: f64, matrix: &[Vec<f64>], seed: u64) -> Result<Graph> {
    check_avg_degree(n, avg_degree)?;
    let k = matrix.len();
    if k == 0 {
        return Err(Error::InvalidParams("block matrix is empty".into()));
    }
    for (i, row) in matrix.iter().enumerate() {
        if row.len() != k {
            return Err(Error::InvalidParams(format!(
                "block matrix row {} has {} entries, expected {}",
                i,
                row.len(),
                k
            )));
        }
        for (j, &x) in row.iter().enumerate() {
            if !(0.0..=1.0).contains(&x) {
                return Err(Error::InvalidParams(format!(
                    "block matrix entry [{}][{}] = {} outside [0, 1]",
                    i, j, x
                )));
            }
            if (x - matrix[j][i]).abs() > 1e-12 {
                return Err(Error::InvalidParams(format!(
                    "block matrix is not symmetric at [{}][{}]",
                    i, j
                )));
            }
        }
    }
    if n % k != 0 {
        return Err(Error::InvalidParams(format!(
            "n = {} is not divisible by block count {}",
            n, k
        )));
    }
    let block_size = n / k;
    // Expected degree of a vertex in block i under the raw matrix.
    let mut mean = 0.0;
    for i in 0..k {
        for j in 0..k {
            let peers = if i == j { block_size - 1 } else { block_size };
            mean += peers as f64 * matrix[i][j];
        }
    }
    mean /= k as f64;
    if mean <= 0.0 && avg_degree > 0.0 {
        return Err(Error::InvalidParams(
            "block matrix is all-zero, cannot reach requested degree".into(),
        ));
    }
    let gamma = if mean > 0.0 { avg_degree / mean } else { 0.0 };
    let mut rng = rng_for(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            let p = (gamma * matrix[u / block_size][v / block_size]).min(1.0);
            if p > 0.0 && rng.gen::<f64>() < p {
                g.add_edge(u as u32, v as u32)?;
            }
        }
    }
    Ok(g)
}

/// Complete binary tree of depth `d` (ids in heap order, `2^(d+1) - 1`
/// vertices) with `s * 2^d` pendant paths of `l` vertices each attached at
/// uniformly random tree vertices, drawn with replacement.
pub fn gen_tree_paths(d: u32, s: u32, l: u32, seed: u64) -> Result<Graph> {
    if d > 20 {
        return Err(Error::InvalidParams(format!("tree depth {} too large", d)));
    }
    if l == 0 {
        return Err(Error::InvalidParams("pendant path length must be positive".into()));
    }
    let tree_n = (1usize << (d + 1)) - 1;
    let path_count = s as usize * (1usize << d);
    let n = tree_n + path_count * l as usize;
    if n > (1 << 28) {
        return Err(Error::InvalidParams(format!("graph order {} too large", n)));
    }
    let mut rng = rng_for(seed);
    let mut g = Graph::new(n);
    for v in 1..tree_n {
        g.add_edge(v as u32, ((v - 1) / 2) as u32)?;
    }
    let mut next = tree_n as u32;
    for _ in 0..path_count {
        let attach = rng.gen_range(0..tree_n) as u32;
        let mut prev = attach;
        for _ in 0..l {
            g.add_edge(prev, next)?;
            prev = next;
            next += 1;
        }
    }
    Ok(g)
}
