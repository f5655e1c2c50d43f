use std::collections::VecDeque;

use super::*;
use crate::graph::{FollowerGraph, NodeTable};
use crate::ingest::TrollRegistry;
use crate::Group;

fn follower_graph(follows: &[(u64, u64, i64)]) -> FollowerGraph {
    let mut nodes = NodeTable::new();
    let edges = follows
        .iter()
        .map(|&(a, b, t)| (nodes.intern(a, Group::Regular), nodes.intern(b, Group::Regular), t))
        .collect();
    FollowerGraph::from_edges(nodes, edges)
}

fn edge_users(flow: &FlowGraph) -> Vec<(u64, u64)> {
    let mut e: Vec<_> = flow
        .graph
        .edges()
        .map(|(s, t)| (flow.users[s as usize], flow.users[t as usize]))
        .collect();
    e.sort();
    e
}

/// Root `a` = 1; b, c, d, e = 2..=5 retweet at 10, 20, 30, 40; c and d follow b.
fn toy_flow() -> FlowGraph {
    let fg = follower_graph(&[(3, 2, 1), (4, 2, 1), (2, 1, 1)]);
    FlowGraph::from_first_retweets((1, 5), &[(2, 10), (3, 20), (4, 30), (5, 40)], &fg).unwrap()
}

/// Ordered pair distance sum by BFS from every node.
fn bfs_virality(tree: &CascadeTree) -> f64 {
    let n = tree.node_count();
    let mut adj = vec![Vec::new(); n];
    for (p, c) in tree.edges() {
        adj[p as usize].push(c as usize);
        adj[c as usize].push(p as usize);
    }
    let mut total = 0u64;
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &u in &adj[v] {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    q.push_back(u);
                }
            }
        }
        total += dist.iter().map(|&d| d as u64).sum::<u64>();
    }
    total as f64 / (n as f64 * (n - 1) as f64)
}

fn tree_from_parents(parents: &[Option<u32>]) -> CascadeTree {
    let n = parents.len();
    CascadeTree::from_parents((0..n as u64).collect(), (0..n as i64).collect(), parents.to_vec()).unwrap()
}

fn star(n: usize) -> CascadeTree {
    tree_from_parents(&(0..n).map(|i| (i > 0).then_some(0)).collect::<Vec<_>>())
}

fn path(n: usize) -> CascadeTree {
    tree_from_parents(&(0..n).map(|i| (i > 0).then(|| i as u32 - 1)).collect::<Vec<_>>())
}

#[test]
fn toy_flow_graph() {
    let flow = toy_flow();
    assert_eq!(edge_users(&flow), vec![(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4)]);
}

#[test]
fn toy_flow_tree() {
    let tree = build_cascade_tree(&toy_flow());
    let parent_of = |u: u64| {
        let i = tree.users.iter().position(|&x| x == u).unwrap();
        tree.users[tree.parent[i].unwrap() as usize]
    };
    assert_eq!(parent_of(3), 2);
    assert_eq!(parent_of(4), 2);
    assert_eq!(parent_of(2), 1);
    assert_eq!(parent_of(5), 1);
    let infl = influence_degree(&tree);
    assert_eq!(infl[0], 2);
    assert_eq!(infl[1], 2);
    assert_eq!(infl[4], 0);
}

#[test]
fn no_follows_gives_star() {
    let fg = follower_graph(&[(7, 8, 1)]);
    let flow = FlowGraph::from_first_retweets((1, 0), &[(2, 10), (3, 20), (4, 30)], &fg).unwrap();
    assert_eq!(flow.edge_count(), 3);
    let tree = build_cascade_tree(&flow);
    assert!(tree.parent[1..].iter().all(|p| *p == Some(0)));
}

#[test]
fn full_follow_graph_five_retweeters() {
    let users = [2u64, 3, 4, 5, 6];
    let follows: Vec<_> = users
        .iter()
        .flat_map(|&a| users.iter().filter(move |&&b| b != a).map(move |&b| (a, b, 0)))
        .collect();
    let fg = follower_graph(&follows);
    let rts: Vec<_> = users.iter().enumerate().map(|(i, &u)| (u, 10 + i as i64)).collect();
    let flow = FlowGraph::from_first_retweets((1, 0), &rts, &fg).unwrap();
    assert_eq!(flow.edge_count(), 5 + 10);
    let tree = build_cascade_tree(&flow);
    let parents: Vec<_> = tree.parent.clone();
    assert_eq!(parents, vec![None, Some(0), Some(1), Some(2), Some(3), Some(4)]);
}

#[test]
fn follow_must_precede_retweet() {
    // 3 starts following 2 only after retweeting
    let fg = follower_graph(&[(3, 2, 25)]);
    let flow = FlowGraph::from_first_retweets((1, 0), &[(2, 10), (3, 20)], &fg).unwrap();
    assert_eq!(edge_users(&flow), vec![(1, 2), (1, 3)]);
}

#[test]
fn same_second_cannot_influence() {
    let fg = follower_graph(&[(3, 2, 1), (2, 3, 1)]);
    let flow = FlowGraph::from_first_retweets((1, 0), &[(2, 10), (3, 10)], &fg).unwrap();
    assert_eq!(flow.edge_count(), 2);
}

#[test]
fn parent_is_most_recent_friend() {
    // v=4 follows 2 (t=3) and 3 (t=7)
    let fg = follower_graph(&[(4, 2, 0), (4, 3, 0)]);
    let flow = FlowGraph::from_first_retweets((1, 0), &[(2, 3), (3, 7), (4, 9)], &fg).unwrap();
    let tree = build_cascade_tree(&flow);
    assert_eq!(tree.users[tree.parent[3].unwrap() as usize], 3);
}

#[test]
fn parent_tie_breaks_on_user_id() {
    let fg = follower_graph(&[(9, 5, 0), (9, 3, 0)]);
    let flow = FlowGraph::from_first_retweets((1, 0), &[(3, 7), (5, 7), (9, 8)], &fg).unwrap();
    let tree = build_cascade_tree(&flow);
    let v = tree.users.iter().position(|&u| u == 9).unwrap();
    assert_eq!(tree.users[tree.parent[v].unwrap() as usize], 3);
}

#[test]
fn high_degree_follower_uses_member_scan() {
    // retweeter 2 follows many accounts outside the cascade
    let mut follows: Vec<_> = (100..200).map(|x| (2, x, 0)).collect();
    follows.push((2, 3, 0));
    let fg = follower_graph(&follows);
    let flow = FlowGraph::from_first_retweets((1, 0), &[(3, 5), (2, 6)], &fg).unwrap();
    assert_eq!(edge_users(&flow), vec![(1, 2), (1, 3), (3, 2)]);
}

#[test]
fn cascade_without_retweeters_is_an_error() {
    let fg = follower_graph(&[]);
    assert_eq!(FlowGraph::from_first_retweets((1, 0), &[], &fg), Err(CascadeError::NoRetweeters));
}

#[test]
fn retweeters_absent_from_follower_graph() {
    let fg = follower_graph(&[(50, 51, 0)]);
    let flow = FlowGraph::from_first_retweets((1, 0), &[(2, 1), (3, 2)], &fg).unwrap();
    assert_eq!(flow.edge_count(), 2);
}

#[test]
fn virality_closed_forms() {
    assert_eq!(structural_virality(&star(2)).unwrap(), 1.0);
    assert_eq!(structural_virality(&path(2)).unwrap(), 1.0);
    assert_eq!(structural_virality(&star(5)).unwrap(), 1.6);
    assert_eq!(structural_virality(&path(3)).unwrap(), 4.0 / 3.0);
    for n in 2..60 {
        assert_eq!(structural_virality(&star(n)).unwrap(), 2.0 * (n - 1) as f64 / n as f64);
        assert_eq!(structural_virality(&path(n)).unwrap(), (n + 1) as f64 / 3.0);
        assert_eq!(bfs_virality(&star(n)), structural_virality(&star(n)).unwrap());
    }
}

#[test]
fn chains_beat_broadcasts_from_six_nodes() {
    for n in 6..200 {
        assert!(structural_virality(&star(n)).unwrap() < structural_virality(&path(n)).unwrap());
    }
}

#[test]
fn virality_needs_two_nodes() {
    assert_eq!(structural_virality(&star(1)), Err(CascadeError::TooSmall(1)));
}

#[test]
fn invalid_parent_vectors() {
    let ids = || (0..3u64).collect::<Vec<_>>();
    let ts = || vec![0i64; 3];
    assert!(CascadeTree::from_parents(ids(), ts(), vec![None, None, Some(0)]).is_err());
    assert!(CascadeTree::from_parents(ids(), ts(), vec![Some(1), Some(2), Some(0)]).is_err());
    assert!(CascadeTree::from_parents(ids(), ts(), vec![None, Some(2), Some(1)]).is_err());
    assert!(CascadeTree::from_parents(ids(), ts(), vec![None, Some(7), Some(0)]).is_err());
}

#[test]
fn global_influence_sums_trees() {
    // user 10 has child counts 1, 0, 4 across three trees
    let t1 = CascadeTree::from_parents(vec![10, 11], vec![0, 1], vec![None, Some(0)]).unwrap();
    let t2 = CascadeTree::from_parents(vec![12, 10], vec![0, 1], vec![None, Some(0)]).unwrap();
    let t3 = CascadeTree::from_parents(
        vec![10, 1, 2, 3, 4],
        vec![0; 5],
        vec![None, Some(0), Some(0), Some(0), Some(0)],
    )
    .unwrap();
    let g = global_influence([&t1, &t2, &t3]);
    assert_eq!(g[&10], 5);
    assert_eq!(g[&11], 0);
    assert_eq!(g[&12], 1);
}

#[test]
fn scatter_rows() {
    let reg: TrollRegistry = [0].into_iter().collect();
    let s = star(101);
    let p = path(4);
    let rows = virality_vs_size([("s", &s), ("p", &p)], &reg);
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0].n_nodes, 101);
    assert_eq!(rows[0].virality, 200.0 / 101.0);
    assert_eq!(rows[0].root_group, Group::Troll);
    assert_eq!(rows[1].virality, 5.0 / 3.0);
    assert!(virality_vs_size(std::iter::empty(), &reg).is_empty());
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    fn random_tree() -> impl Strategy<Value = CascadeTree> {
        (2usize..300).prop_flat_map(|n| {
            proptest::collection::vec(any::<proptest::sample::Index>(), n - 1).prop_map(move |picks| {
                let mut parents = vec![None];
                for (i, pick) in picks.iter().enumerate() {
                    parents.push(Some(pick.index(i + 1) as u32));
                }
                tree_from_parents(&parents)
            })
        })
    }

    /// Random cascade over a random follow relation.
    fn random_flow() -> impl Strategy<Value = FlowGraph> {
        (1usize..40).prop_flat_map(|m| {
            (
                proptest::collection::vec(0i64..50, m),
                proptest::collection::vec((0u64..m as u64, 0u64..m as u64, 0i64..60), 0..(m * m).min(300)),
            )
                .prop_map(move |(mut times, follows)| {
                    times.sort();
                    let rts: Vec<(u64, i64)> = times.iter().enumerate().map(|(i, &t)| (100 + i as u64, 100 + t)).collect();
                    let follows: Vec<_> = follows.into_iter().filter(|f| f.0 != f.1).map(|(a, b, t)| (100 + a, 100 + b, 100 + t)).collect();
                    FlowGraph::from_first_retweets((1, 99), &rts, &follower_graph(&follows)).unwrap()
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn virality_matches_bfs_oracle(tree in random_tree()) {
            let fast = structural_virality(&tree).unwrap();
            let oracle = bfs_virality(&tree);
            prop_assert!((fast - oracle).abs() <= 1e-12, "{fast} vs {oracle}");
        }

        #[test]
        fn influence_sums_to_n_minus_one(tree in random_tree()) {
            let total: u64 = influence_degree(&tree).iter().map(|&d| d as u64).sum();
            prop_assert_eq!(total, tree.node_count() as u64 - 1);
        }

        #[test]
        fn tree_is_spanning_subgraph_of_flow(flow in random_flow()) {
            let tree = build_cascade_tree(&flow);
            prop_assert!(CascadeTree::from_parents(tree.users.clone(), tree.times.clone(), tree.parent.clone()).is_ok());
            for (p, c) in tree.edges() {
                prop_assert!(flow.graph.has_edge(p as usize, c as usize));
                prop_assert!(flow.times[p as usize] < flow.times[c as usize]);
            }
            for (u, v) in flow.graph.edges() {
                prop_assert!(flow.times[u as usize] < flow.times[v as usize]);
            }
            prop_assert_eq!(tree.parent.iter().filter(|p| p.is_none()).count(), 1);
            let total: u32 = influence_degree(&tree).iter().sum();
            prop_assert_eq!(total as usize, flow.node_count() - 1);
        }
    }
}
