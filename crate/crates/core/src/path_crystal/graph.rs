use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::path::{straight_path, PlPath};
use super::Crystal;
use crate::root_data::{CartanData, Weight};
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone)]
struct Node {
    key: String,
    path: PlPath,
    weight: Weight,
    eps: Vec<u32>,
    phi: Vec<u32>,
}

impl Node {
    fn from_path(cartan: &CartanData, path: PlPath) -> Node {
        let n = cartan.rank();
        Node {
            key: path.key(),
            weight: path.endpoint(),
            eps: (0..n).map(|i| path.eps(cartan, i)).collect(),
            phi: (0..n).map(|i| path.phi(cartan, i)).collect(),
            path,
        }
    }

    fn depth(&self) -> usize {
        self.weight.depth() as usize
    }
}

/// A finite, possibly truncated, crystal graph of one `B(ν)`.
///
/// Node 0 is the highest weight element. `ε`/`φ` are computed from the paths
/// themselves, so they are exact even on the truncation frontier; only the
/// `f`-edges leaving frontier nodes are missing.
#[derive(Debug, Clone)]
pub struct CrystalGraph {
    cartan: CartanData,
    hw: Vec<i64>,
    nodes: Vec<Node>,
    index: HashMap<String, usize>,
    f_edges: Vec<Vec<Option<usize>>>,
    e_edges: Vec<Vec<Option<usize>>>,
    truncated: bool,
    depth_cutoff: Option<usize>,
    depth_used: usize,
}

/// BFS closure of the highest weight path under all `f_i`, stopping after
/// `depth_cutoff` lowering steps.
pub fn generate_crystal(cartan: &CartanData, hw: &[i64], depth_cutoff: usize) -> Result<CrystalGraph> {
    generate(cartan, hw, Some(depth_cutoff))
}

/// The complete crystal. Requires finite type unless `ν = 0`.
pub fn generate_complete(cartan: &CartanData, hw: &[i64]) -> Result<CrystalGraph> {
    cartan.check_dominant(hw)?;
    if !cartan.is_finite() && hw.iter().any(|&x| x != 0) {
        return Err(Error::NotFiniteType);
    }
    generate(cartan, hw, None)
}

fn generate(cartan: &CartanData, hw: &[i64], cutoff: Option<usize>) -> Result<CrystalGraph> {
    let top = straight_path(cartan, hw)?;
    let n = cartan.rank();
    let mut g = CrystalGraph {
        cartan: cartan.clone(),
        hw: hw.to_vec(),
        nodes: Vec::new(),
        index: HashMap::new(),
        f_edges: Vec::new(),
        e_edges: Vec::new(),
        truncated: false,
        depth_cutoff: cutoff,
        depth_used: 0,
    };
    g.insert(Node::from_path(cartan, top));
    let mut frontier = vec![0usize];
    let mut depth = 0usize;
    while !frontier.is_empty() {
        if cutoff == Some(depth) {
            g.truncated = frontier.iter().any(|&b| g.nodes[b].phi.iter().any(|&p| p > 0));
            break;
        }
        let lowered: Vec<Vec<(usize, Node)>> = frontier
            .par_iter()
            .map(|&b| {
                let node = &g.nodes[b];
                (0..n)
                    .filter(|&i| node.phi[i] > 0)
                    .map(|i| {
                        let path = node.path.f(cartan, i).expect("φ > 0 but f undefined");
                        (i, Node::from_path(cartan, path))
                    })
                    .collect()
            })
            .collect();
        let mut next = Vec::new();
        for (&src, targets) in frontier.iter().zip(lowered) {
            for (i, node) in targets {
                let dst = match g.index.get(&node.key) {
                    Some(&k) => k,
                    None => {
                        let k = g.insert(node);
                        next.push(k);
                        k
                    }
                };
                g.f_edges[src][i] = Some(dst);
                g.e_edges[dst][i] = Some(src);
            }
        }
        frontier = next;
        depth += 1;
    }
    g.depth_used = g.nodes.iter().map(Node::depth).max().unwrap_or(0);
    Ok(g)
}

impl CrystalGraph {
    fn insert(&mut self, node: Node) -> usize {
        let k = self.nodes.len();
        let n = self.cartan.rank();
        self.index.insert(node.key.clone(), k);
        self.nodes.push(node);
        self.f_edges.push(vec![None; n]);
        self.e_edges.push(vec![None; n]);
        k
    }

    pub fn cartan_data(&self) -> &CartanData {
        &self.cartan
    }

    pub fn highest_weight(&self) -> &[i64] {
        &self.hw
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn hw_node(&self) -> usize {
        0
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn depth_cutoff(&self) -> Option<usize> {
        self.depth_cutoff
    }

    pub fn depth_used(&self) -> usize {
        self.depth_used
    }

    pub fn nodes(&self) -> std::ops::Range<usize> {
        0..self.nodes.len()
    }

    pub fn key(&self, b: usize) -> &str {
        &self.nodes[b].key
    }

    pub fn path(&self, b: usize) -> &PlPath {
        &self.nodes[b].path
    }

    pub fn node_weight(&self, b: usize) -> &Weight {
        &self.nodes[b].weight
    }

    pub fn node_eps(&self, b: usize) -> &[u32] {
        &self.nodes[b].eps
    }

    pub fn node_phi(&self, b: usize) -> &[u32] {
        &self.nodes[b].phi
    }

    pub fn depth(&self, b: usize) -> usize {
        self.nodes[b].depth()
    }

    pub fn find(&self, key: &str) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// Stored `f_i`-edge; `None` both for `f_i b = 0` and for a missing edge
    /// on the truncation frontier.
    pub fn f_edge(&self, b: usize, i: usize) -> Option<usize> {
        self.f_edges[b][i]
    }

    pub fn e_edge(&self, b: usize, i: usize) -> Option<usize> {
        self.e_edges[b][i]
    }

    /// All `(source, i, target)` f-edges, sorted.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        let mut out: Vec<_> = self
            .f_edges
            .iter()
            .enumerate()
            .flat_map(|(b, row)| row.iter().enumerate().filter_map(move |(i, t)| t.map(|t| (b, i, t))))
            .collect();
        out.sort_unstable();
        out
    }

    /// Removes one f-edge (and its reverse e-edge). Used to build broken
    /// graphs for testing the axiom checkers.
    pub fn remove_f_edge(&mut self, b: usize, i: usize) -> Option<usize> {
        let t = self.f_edges[b][i].take()?;
        self.e_edges[t][i] = None;
        Some(t)
    }

    /// Nodes whose weight has the given coroot pairings.
    pub fn nodes_with_pairings(&self, pairings: &[i64]) -> Vec<usize> {
        self.nodes().filter(|&b| self.nodes[b].weight.pairings(&self.cartan) == pairings).collect()
    }

    /// Sorted list of canonical node keys.
    pub fn sorted_keys(&self) -> Vec<String> {
        let mut keys: Vec<String> = self.nodes.iter().map(|n| n.key.clone()).collect();
        keys.sort();
        keys
    }

    pub fn to_json(&self) -> CrystalJson {
        CrystalJson {
            schema_version: SCHEMA_VERSION,
            cartan: self.cartan.clone(),
            highest_weight: self.hw.clone(),
            truncated: self.truncated,
            depth_cutoff: self.depth_cutoff,
            depth_used: self.depth_used,
            nodes: self
                .nodes
                .iter()
                .map(|n| NodeJson {
                    key: n.key.clone(),
                    weight: WeightJson { root: n.weight.root.clone(), pairings: n.weight.pairings(&self.cartan) },
                    eps: n.eps.clone(),
                    phi: n.phi.clone(),
                })
                .collect(),
            edges: self.edges(),
        }
    }

    /// Rebuilds a graph from its JSON export, re-deriving every path from its
    /// key and checking the stored statistics against it.
    pub fn from_json(json: &CrystalJson) -> Result<CrystalGraph> {
        if json.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!("unsupported schema_version {}", json.schema_version)));
        }
        let cartan = json.cartan.clone().revalidate()?;
        cartan.check_dominant(&json.highest_weight)?;
        let mut g = CrystalGraph {
            cartan: cartan.clone(),
            hw: json.highest_weight.clone(),
            nodes: Vec::new(),
            index: HashMap::new(),
            f_edges: Vec::new(),
            e_edges: Vec::new(),
            truncated: json.truncated,
            depth_cutoff: json.depth_cutoff,
            depth_used: json.depth_used,
        };
        for nj in &json.nodes {
            let node = Node::from_path(&cartan, PlPath::from_key(&json.highest_weight, &nj.key)?);
            if node.key != nj.key || node.eps != nj.eps || node.phi != nj.phi || node.weight.root != nj.weight.root {
                return Err(Error::Parse(format!("node {:?} is inconsistent with its path", nj.key)));
            }
            if g.index.contains_key(&node.key) {
                return Err(Error::Parse(format!("duplicate node {:?}", nj.key)));
            }
            g.insert(node);
        }
        if g.nodes.first().map(|n| n.path.breakpoints().len()) != Some(2) || g.nodes[0].weight.depth() != 0 {
            return Err(Error::Parse("node 0 must be the highest weight element".into()));
        }
        for &(b, i, t) in &json.edges {
            if b >= g.len() || t >= g.len() || i >= cartan.rank() {
                return Err(Error::Parse(format!("edge ({b}, {i}, {t}) out of range")));
            }
            g.f_edges[b][i] = Some(t);
            g.e_edges[t][i] = Some(b);
        }
        Ok(g)
    }

    /// Graphviz rendering; edges are coloured by index and stably sorted.
    pub fn to_dot(&self) -> String {
        const COLORS: [&str; 8] = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"];
        let mut s = String::from("digraph crystal {\n  node [shape=box];\n");
        for b in self.nodes() {
            let p = self.nodes[b].weight.pairings(&self.cartan);
            let label = p.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
            writeln!(s, "  n{b} [label=\"({label})\", tooltip=\"{}\"];", self.nodes[b].key).unwrap();
        }
        for (b, i, t) in self.edges() {
            writeln!(s, "  n{b} -> n{t} [label=\"{i}\", color=\"{}\"];", COLORS[i % COLORS.len()]).unwrap();
        }
        s.push_str("}\n");
        s
    }
}

impl PartialEq for CrystalGraph {
    fn eq(&self, other: &Self) -> bool {
        self.cartan == other.cartan
            && self.hw == other.hw
            && self.truncated == other.truncated
            && self.nodes.iter().map(|n| &n.key).eq(other.nodes.iter().map(|n| &n.key))
            && self.f_edges == other.f_edges
    }
}

impl Crystal for CrystalGraph {
    type Elem = usize;

    fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    fn e(&self, &b: &usize, i: usize) -> Result<Option<usize>> {
        if self.nodes[b].eps[i] == 0 {
            return Ok(None);
        }
        self.e_edges[b][i].map(Some).ok_or(Error::TruncatedStatistics { factor: 0, node: b })
    }

    fn f(&self, &b: &usize, i: usize) -> Result<Option<usize>> {
        if self.nodes[b].phi[i] == 0 {
            return Ok(None);
        }
        self.f_edges[b][i].map(Some).ok_or(Error::TruncatedStatistics { factor: 0, node: b })
    }

    fn eps(&self, &b: &usize, i: usize) -> Result<u32> {
        Ok(self.nodes[b].eps[i])
    }

    fn phi(&self, &b: &usize, i: usize) -> Result<u32> {
        Ok(self.nodes[b].phi[i])
    }

    fn weight(&self, &b: &usize) -> Weight {
        self.nodes[b].weight.clone()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightJson {
    pub root: Vec<i64>,
    pub pairings: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeJson {
    pub key: String,
    pub weight: WeightJson,
    pub eps: Vec<u32>,
    pub phi: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrystalJson {
    pub schema_version: u32,
    pub cartan: CartanData,
    pub highest_weight: Vec<i64>,
    pub truncated: bool,
    pub depth_cutoff: Option<usize>,
    pub depth_used: usize,
    pub nodes: Vec<NodeJson>,
    /// `[source, i, target]` for every `f_i`-edge.
    pub edges: Vec<(usize, usize, usize)>,
}
