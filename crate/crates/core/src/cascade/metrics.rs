use std::collections::BTreeMap;

use super::tree::CascadeTree;
use super::CascadeError;
use crate::UserId;

/// Mean shortest-path distance over ordered node pairs of the undirected
/// tree.
///
/// Each edge separating `s` nodes from `n - s` lies on `2 s (n - s)` ordered
/// paths, so the pair sum is accumulated exactly in integers.
pub fn structural_virality(tree: &CascadeTree) -> Result<f64, CascadeError> {
    let n = tree.node_count();
    if n < 2 {
        return Err(CascadeError::TooSmall(n));
    }
    let mut subtree = vec![1u64; n];
    for &v in tree.preorder().iter().rev() {
        if let Some(p) = tree.parent[v as usize] {
            subtree[p as usize] += subtree[v as usize];
        }
    }
    let n64 = n as u64;
    let pair_sum: u128 = tree
        .edges()
        .map(|(_, c)| {
            let s = subtree[c as usize];
            2 * s as u128 * (n64 - s) as u128
        })
        .sum();
    Ok(pair_sum as f64 / (n64 as f64 * (n64 - 1) as f64))
}

/// Child count of every node in the tree.
pub fn influence_degree(tree: &CascadeTree) -> Vec<u32> {
    let mut counts = vec![0u32; tree.node_count()];
    for p in tree.parent.iter().flatten() {
        counts[*p as usize] += 1;
    }
    counts
}

/// Sum of child counts over all trees each user appears in. Every
/// participant gets an entry, including those with zero children.
pub fn global_influence<'a, I>(trees: I) -> BTreeMap<UserId, u64>
where
    I: IntoIterator<Item = &'a CascadeTree>,
{
    let mut totals = BTreeMap::new();
    for t in trees {
        for (user, d) in t.users.iter().zip(influence_degree(t)) {
            *totals.entry(*user).or_insert(0) += d as u64;
        }
    }
    totals
}
