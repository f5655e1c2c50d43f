//! Interaction multigraph, follower graph and topology statistics.

mod averages;
mod components;
mod follower;
mod interaction;
mod kcore;

pub use averages::{group_averages, GroupAverages, Metric};
pub use components::{components_from_edges, connected_components, Components, UnionFind};
pub use follower::{collapse_to_follower_graph, FollowerGraph, FGR_MAGIC};
pub use interaction::{build_interaction_graph, ActionType, Interaction, InteractionGraph, NodeTable};
pub use kcore::{kcore_decomposition, UndirectedView};

use crate::ccdf::CcdfTable;
use crate::Group;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    In,
    Out,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::In => "in",
            Direction::Out => "out",
        }
    }
}

/// Graphs exposing per-node degrees and group labels.
pub trait DegreeSource {
    fn node_table(&self) -> &NodeTable;
    fn degrees(&self, direction: Direction) -> Vec<u64>;
}

impl DegreeSource for InteractionGraph {
    fn node_table(&self) -> &NodeTable {
        &self.nodes
    }

    fn degrees(&self, direction: Direction) -> Vec<u64> {
        match direction {
            Direction::In => self.in_degrees(),
            Direction::Out => self.out_degrees(),
        }
    }
}

impl DegreeSource for FollowerGraph {
    fn node_table(&self) -> &NodeTable {
        &self.nodes
    }

    fn degrees(&self, direction: Direction) -> Vec<u64> {
        match direction {
            Direction::In => self.in_degrees(),
            Direction::Out => self.out_degrees(),
        }
    }
}

/// CCDF of non-zero degrees, optionally restricted to one group.
pub fn degree_ccdf<G: DegreeSource>(g: &G, direction: Direction, group: Option<Group>) -> CcdfTable {
    let groups = g.node_table().groups();
    let degrees = g.degrees(direction);
    CcdfTable::from_counts(
        degrees
            .into_iter()
            .zip(groups)
            .filter(|(_, &gr)| group.is_none_or(|want| want == gr))
            .map(|(d, _)| d),
    )
}

/// Coreness for the largest connected component of the undirected follower
/// graph, indexed by global node; nodes outside it are `None`.
pub fn largest_component_coreness(fg: &FollowerGraph, components: &Components) -> Vec<Option<u32>> {
    let mut out = vec![None; fg.node_count()];
    let Some(largest) = components.largest() else {
        return out;
    };
    let view = UndirectedView::from_follower_graph(fg, &components.members(largest));
    for (local, core) in kcore_decomposition(&view).into_iter().enumerate() {
        out[view.nodes[local] as usize] = Some(core);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::TrollRegistry;

    #[test]
    fn ccdf_by_group() {
        let reg: TrollRegistry = [9].into_iter().collect();
        let mut g = InteractionGraph::default();
        for (s, d) in [(1, 2), (3, 2), (4, 9), (5, 9), (6, 9)] {
            g.push(s, d, ActionType::Mention, 0, &reg);
        }
        let trolls = degree_ccdf(&g, Direction::In, Some(Group::Troll));
        assert_eq!(trolls.points, vec![(3.0, 1.0)]);
        let regular = degree_ccdf(&g, Direction::In, Some(Group::Regular));
        assert_eq!(regular.points, vec![(2.0, 1.0)]);
        let out = degree_ccdf(&g, Direction::Out, None);
        assert_eq!(out.points, vec![(1.0, 1.0)]);
        assert_eq!(out.population, 5);
    }

    #[test]
    fn coreness_only_on_largest_component() {
        let mut nodes = NodeTable::new();
        for id in 0..6 {
            nodes.intern(id, Group::Regular);
        }
        let fg = FollowerGraph::from_edges(nodes, vec![(0, 1, 0), (1, 2, 0), (2, 0, 0), (3, 4, 0)]);
        let comps = connected_components(&fg);
        let core = largest_component_coreness(&fg, &comps);
        assert_eq!(core, vec![Some(2), Some(2), Some(2), None, None, None]);
    }
}
