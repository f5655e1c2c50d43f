use super::ShapleyError;
use crate::digraph::Digraph;

pub const BRUTE_FORCE_MAX_NODES: usize = 12;

/// Exact Shapley values of the fringe game `v(C) = |C ∪ N_out(C)|` by
/// enumerating every coalition.
pub fn fringe_game_shapley(g: &Digraph) -> Result<Vec<f64>, ShapleyError> {
    let n = g.node_count();
    if n > BRUTE_FORCE_MAX_NODES {
        return Err(ShapleyError::TooLarge { nodes: n, max: BRUTE_FORCE_MAX_NODES });
    }
    if let Some(v) = (0..n).find(|&v| g.has_edge(v, v)) {
        return Err(ShapleyError::SelfLoop(v));
    }
    let closed: Vec<u32> = (0..n)
        .map(|v| g.out_neighbors(v).iter().fold(1u32 << v, |m, &t| m | (1 << t)))
        .collect();
    let masks = 1usize << n;
    let mut fringe = vec![0u32; masks];
    for m in 1..masks {
        let low = m.trailing_zeros() as usize;
        fringe[m] = fringe[m & (m - 1)] | closed[low];
    }

    // |S|! (n - |S| - 1)! / n!
    let factorial = |k: usize| (1..=k).map(|x| x as f64).product::<f64>();
    let weight: Vec<f64> = (0..n).map(|s| factorial(s) * factorial(n - s - 1) / factorial(n)).collect();

    let mut phi = vec![0.0; n];
    for (i, p) in phi.iter_mut().enumerate() {
        let bit = 1usize << i;
        for m in (0..masks).filter(|m| m & bit == 0) {
            let gain = fringe[m | bit].count_ones() - fringe[m].count_ones();
            if gain > 0 {
                *p += weight[m.count_ones() as usize] * gain as f64;
            }
        }
    }
    Ok(phi)
}

/// Fringe-game Shapley values minus each node's self-share
/// `1 / (1 + indegree)`.
pub fn brute_force_shapley(g: &Digraph) -> Result<Vec<f64>, ShapleyError> {
    let mut phi = fringe_game_shapley(g)?;
    for (v, p) in phi.iter_mut().enumerate() {
        *p -= 1.0 / (1.0 + g.in_degree(v) as f64);
    }
    Ok(phi)
}
