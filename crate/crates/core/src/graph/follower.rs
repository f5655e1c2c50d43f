use std::io::{self, Read, Write};

use rayon::prelude::*;

use super::interaction::{InteractionGraph, NodeTable};
use crate::Timestamp;

pub const FGR_MAGIC: &[u8; 4] = b"FGR1";

/// Simple digraph where edge `(i, j)` means "i follows j" and carries the
/// earliest observed interaction time. Information flows `j -> i`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FollowerGraph {
    pub nodes: NodeTable,
    offsets: Vec<u64>,
    targets: Vec<u32>,
    timestamps: Vec<Timestamp>,
    rev_offsets: Vec<u64>,
    rev_sources: Vec<u32>,
    /// Position of each reverse entry in the forward arrays.
    rev_edge: Vec<u64>,
}

impl FollowerGraph {
    /// Builds from arbitrary `(follower, followee, time)` triples, keeping the
    /// earliest time per ordered pair.
    pub fn from_edges(nodes: NodeTable, mut edges: Vec<(u32, u32, Timestamp)>) -> Self {
        let n = nodes.len();
        edges.par_sort_unstable();
        edges.dedup_by(|later, first| later.0 == first.0 && later.1 == first.1);
        let mut offsets = vec![0u64; n + 1];
        for &(s, t, _) in &edges {
            assert!((s as usize) < n && (t as usize) < n, "edge endpoint out of range");
            offsets[s as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let targets = edges.iter().map(|e| e.1).collect();
        let timestamps = edges.iter().map(|e| e.2).collect();
        Self::with_reverse(nodes, offsets, targets, timestamps)
    }

    fn with_reverse(nodes: NodeTable, offsets: Vec<u64>, targets: Vec<u32>, timestamps: Vec<Timestamp>) -> Self {
        let n = nodes.len();
        let mut rev_offsets = vec![0u64; n + 1];
        for &t in &targets {
            rev_offsets[t as usize + 1] += 1;
        }
        for i in 0..n {
            rev_offsets[i + 1] += rev_offsets[i];
        }
        let mut cursor: Vec<u64> = rev_offsets[..n].to_vec();
        let mut rev_sources = vec![0u32; targets.len()];
        let mut rev_edge = vec![0u64; targets.len()];
        for s in 0..n {
            for e in offsets[s]..offsets[s + 1] {
                let t = targets[e as usize] as usize;
                let slot = cursor[t] as usize;
                rev_sources[slot] = s as u32;
                rev_edge[slot] = e;
                cursor[t] += 1;
            }
        }
        Self {
            nodes,
            offsets,
            targets,
            timestamps,
            rev_offsets,
            rev_sources,
            rev_edge,
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len()
    }

    fn out_range(&self, node: u32) -> std::ops::Range<usize> {
        self.offsets[node as usize] as usize..self.offsets[node as usize + 1] as usize
    }

    fn in_range(&self, node: u32) -> std::ops::Range<usize> {
        self.rev_offsets[node as usize] as usize..self.rev_offsets[node as usize + 1] as usize
    }

    /// Accounts `node` follows, sorted by index, with earliest times.
    pub fn following(&self, node: u32) -> (&[u32], &[Timestamp]) {
        let r = self.out_range(node);
        (&self.targets[r.clone()], &self.timestamps[r])
    }

    /// Accounts following `node`, sorted by index.
    pub fn followers(&self, node: u32) -> &[u32] {
        &self.rev_sources[self.in_range(node)]
    }

    pub fn followers_with_time(&self, node: u32) -> impl Iterator<Item = (u32, Timestamp)> + '_ {
        self.in_range(node)
            .map(move |slot| (self.rev_sources[slot], self.timestamps[self.rev_edge[slot] as usize]))
    }

    pub fn out_degree(&self, node: u32) -> usize {
        self.out_range(node).len()
    }

    pub fn in_degree(&self, node: u32) -> usize {
        self.in_range(node).len()
    }

    /// Earliest time `follower` is known to follow `followee`.
    pub fn follow_time(&self, follower: u32, followee: u32) -> Option<Timestamp> {
        let (targets, times) = self.following(follower);
        targets.binary_search(&followee).ok().map(|i| times[i])
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32, Timestamp)> + '_ {
        (0..self.node_count() as u32).flat_map(move |s| {
            let (t, ts) = self.following(s);
            t.iter().zip(ts).map(move |(&t, &ts)| (s, t, ts))
        })
    }

    pub fn out_degrees(&self) -> Vec<u64> {
        self.offsets.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn in_degrees(&self) -> Vec<u64> {
        self.rev_offsets.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Writes the `FGR1` adjacency: magic, node and edge counts (u64 LE),
    /// `n + 1` forward offsets (u64 LE), targets (u32 LE), earliest
    /// timestamps (i64 LE). The node table is stored separately.
    pub fn write_binary<W: Write>(&self, mut w: W) -> io::Result<()> {
        w.write_all(FGR_MAGIC)?;
        w.write_all(&(self.node_count() as u64).to_le_bytes())?;
        w.write_all(&(self.edge_count() as u64).to_le_bytes())?;
        for &o in &self.offsets {
            w.write_all(&o.to_le_bytes())?;
        }
        for &t in &self.targets {
            w.write_all(&t.to_le_bytes())?;
        }
        for &ts in &self.timestamps {
            w.write_all(&ts.to_le_bytes())?;
        }
        w.flush()
    }

    /// Reads an `FGR1` adjacency written by [`FollowerGraph::write_binary`].
    pub fn read_binary<R: Read>(mut r: R, nodes: NodeTable) -> io::Result<Self> {
        let invalid = |msg: String| io::Error::new(io::ErrorKind::InvalidData, msg);
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != FGR_MAGIC {
            return Err(invalid(format!("bad magic {magic:?}")));
        }
        let n = read_u64(&mut r)? as usize;
        let m = read_u64(&mut r)? as usize;
        if n != nodes.len() {
            return Err(invalid(format!("adjacency has {n} nodes, node table has {}", nodes.len())));
        }
        let mut offsets = Vec::with_capacity(n + 1);
        for _ in 0..=n {
            offsets.push(read_u64(&mut r)?);
        }
        if offsets.first() != Some(&0) || offsets.last() != Some(&(m as u64)) || offsets.windows(2).any(|w| w[0] > w[1]) {
            return Err(invalid("inconsistent offsets".into()));
        }
        let mut buf = vec![0u8; m * 4];
        r.read_exact(&mut buf)?;
        let targets: Vec<u32> = buf.chunks_exact(4).map(|c| u32::from_le_bytes(c.try_into().unwrap())).collect();
        if targets.iter().any(|&t| t as usize >= n) {
            return Err(invalid("target out of range".into()));
        }
        let mut buf = vec![0u8; m * 8];
        r.read_exact(&mut buf)?;
        let timestamps = buf.chunks_exact(8).map(|c| i64::from_le_bytes(c.try_into().unwrap())).collect();
        Ok(Self::with_reverse(nodes, offsets, targets, timestamps))
    }
}

fn read_u64<R: Read>(r: &mut R) -> io::Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}

/// Drops duplicate `(i, j)` interactions, keeping the earliest.
pub fn collapse_to_follower_graph(ig: &InteractionGraph) -> FollowerGraph {
    let edges = ig.edges.iter().map(|e| (e.src, e.dst, e.timestamp)).collect();
    FollowerGraph::from_edges(ig.nodes.clone(), edges)
}
