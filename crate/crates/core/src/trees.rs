//! Finite truncations of trees `T ⊆ ω^<ω`.
//!
//! A tree here is prefix closed, bounded in depth and branching. "Ill-founded"
//! is only approximated: a tree is ill at truncation when it has a node of
//! full depth.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Node = Vec<u32>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("tree is empty")]
    Empty,
    #[error("node {0:?} breaks the depth or branching bound")]
    OutOfBounds(String),
    #[error("node {0:?} has a missing prefix")]
    NotPrefixClosed(String),
    #[error("branching bound must be between 1 and 36")]
    BadBranching,
    #[error("malformed predicate {0:?}")]
    BadPredicate(String),
    #[error("invalid tree json: {0}")]
    Json(String),
}

/// Digit-string form of a node, entries written in base 36.
pub fn node_to_string(node: &[u32]) -> String {
    node.iter()
        .map(|&d| char::from_digit(d, 36).expect("entry below 36"))
        .collect()
}

pub fn node_from_str(s: &str) -> Option<Node> {
    s.chars().map(|c| c.to_digit(36)).collect()
}

/// Every sequence of length at most `depth` over `0..branching`, shortest
/// first and lexicographic within a length.
pub fn all_nodes(depth: usize, branching: u32) -> Vec<Node> {
    let mut out = vec![Vec::new()];
    let mut level = vec![Vec::new()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for n in &level {
            for d in 0..branching {
                let mut c = n.clone();
                c.push(d);
                next.push(c);
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// A finite characteristic function: the nodes listed in `ones` map to 1,
/// every other node within the bounds to 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipTable {
    pub depth: usize,
    pub branching: u32,
    pub ones: BTreeSet<Node>,
}

impl MembershipTable {
    pub fn new(depth: usize, branching: u32, ones: impl IntoIterator<Item = Node>) -> Result<Self, TreeError> {
        if !(1..=36).contains(&branching) {
            return Err(TreeError::BadBranching);
        }
        let ones: BTreeSet<Node> = ones.into_iter().collect();
        for n in &ones {
            if n.len() > depth || n.iter().any(|&d| d >= branching) {
                return Err(TreeError::OutOfBounds(node_to_string(n)));
            }
        }
        Ok(MembershipTable { depth, branching, ones })
    }

    pub fn get(&self, node: &[u32]) -> bool {
        self.ones.contains(node)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&TreeJson {
            depth: self.depth,
            branching: self.branching,
            ones: self.ones.iter().map(|n| node_to_string(n)).collect(),
        })
        .expect("tree serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self, TreeError> {
        let raw: TreeJson = serde_json::from_str(text).map_err(|e| TreeError::Json(e.to_string()))?;
        let ones = raw
            .ones
            .iter()
            .map(|s| node_from_str(s).ok_or_else(|| TreeError::Json(format!("bad node {s:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        MembershipTable::new(raw.depth, raw.branching, ones)
    }
}

#[derive(Serialize, Deserialize)]
struct TreeJson {
    depth: usize,
    branching: u32,
    ones: Vec<String>,
}

/// A prefix-closed set of nodes within depth and branching bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTree {
    nodes: BTreeSet<Node>,
    pub depth_bound: usize,
    pub branching_bound: u32,
}

impl FiniteTree {
    pub fn new(depth_bound: usize, branching_bound: u32, nodes: impl IntoIterator<Item = Node>) -> Result<Self, TreeError> {
        let t = MembershipTable::new(depth_bound, branching_bound, nodes)?;
        for n in &t.ones {
            if !n.is_empty() && !t.ones.contains(&n[..n.len() - 1]) {
                return Err(TreeError::NotPrefixClosed(node_to_string(n)));
            }
        }
        Ok(FiniteTree {
            nodes: t.ones,
            depth_bound,
            branching_bound,
        })
    }

    pub fn nodes(&self) -> &BTreeSet<Node> {
        &self.nodes
    }

    pub fn contains(&self, node: &[u32]) -> bool {
        self.nodes.contains(node)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Children of `node` present in the tree, ascending.
    pub fn children(&self, node: &[u32]) -> Vec<Node> {
        (0..self.branching_bound)
            .map(|d| {
                let mut c = node.to_vec();
                c.push(d);
                c
            })
            .filter(|c| self.nodes.contains(c))
            .collect()
    }

    pub fn table(&self) -> MembershipTable {
        MembershipTable {
            depth: self.depth_bound,
            branching: self.branching_bound,
            ones: self.nodes.clone(),
        }
    }

    /// True iff some node reaches the depth bound.
    pub fn ill_at_truncation(&self) -> bool {
        self.nodes.iter().any(|n| n.len() == self.depth_bound)
    }
}

impl fmt::Display for FiniteTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self
            .nodes
            .iter()
            .map(|n| if n.is_empty() { "λ".into() } else { node_to_string(n) })
            .collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

/// Nodes dropped by [`normalize`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RepairReport {
    pub deleted: Vec<Node>,
}

impl RepairReport {
    pub fn is_clean(&self) -> bool {
        self.deleted.is_empty()
    }
}

/// Largest prefix-closed subset of the table's 1-set: a node survives iff it
/// and all of its prefixes map to 1. Every other 1-node is reported.
pub fn normalize(tbl: &MembershipTable) -> (FiniteTree, RepairReport) {
    let mut kept = BTreeSet::new();
    let mut report = RepairReport::default();
    // BTreeSet order visits every prefix before its extensions.
    for n in &tbl.ones {
        if n.is_empty() || kept.contains(&n[..n.len() - 1]) {
            kept.insert(n.clone());
        } else {
            report.deleted.push(n.clone());
        }
    }
    let tree = FiniteTree {
        nodes: kept,
        depth_bound: tbl.depth,
        branching_bound: tbl.branching,
    };
    (tree, report)
}

/// Lexicographically least node of maximal length, and whether it reaches the
/// depth bound.
pub fn longest_path(tree: &FiniteTree) -> Result<(Node, bool), TreeError> {
    let best = tree
        .nodes
        .iter()
        .fold(None::<&Node>, |best, n| match best {
            Some(b) if b.len() >= n.len() => Some(b),
            _ => Some(n),
        })
        .ok_or(TreeError::Empty)?;
    Ok((best.clone(), best.len() == tree.depth_bound))
}

/// Fixture language for membership tables.
#[derive(Clone, Debug, PartialEq)]
pub enum Predicate {
    /// Every node.
    All,
    /// Exactly the prefixes of one sequence.
    Path(Node),
    /// The spine `0^i` plus teeth `0^i 1 0^j` with `j < k`.
    Comb(usize),
    /// Each node independently with the given probability; the root always.
    Random { seed: u64, density: f64 },
}

impl FromStr for Predicate {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || TreeError::BadPredicate(s.to_string());
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["all"] => Ok(Predicate::All),
            ["path", p] => node_from_str(p).map(Predicate::Path).ok_or_else(bad),
            ["comb", k] => k.parse().map(Predicate::Comb).map_err(|_| bad()),
            ["random", seed, density] => {
                let seed = seed.parse().map_err(|_| bad())?;
                let density: f64 = density.parse().map_err(|_| bad())?;
                if !(0.0..=1.0).contains(&density) {
                    return Err(bad());
                }
                Ok(Predicate::Random { seed, density })
            }
            _ => Err(bad()),
        }
    }
}

pub fn from_predicate(pred: &Predicate, depth: usize, branching: u32) -> Result<MembershipTable, TreeError> {
    if !(1..=36).contains(&branching) {
        return Err(TreeError::BadBranching);
    }
    let nodes = all_nodes(depth, branching);
    let ones: Vec<Node> = match pred {
        Predicate::All => nodes,
        Predicate::Path(p) => {
            if p.len() > depth || p.iter().any(|&d| d >= branching) {
                return Err(TreeError::OutOfBounds(node_to_string(p)));
            }
            (0..=p.len()).map(|i| p[..i].to_vec()).collect()
        }
        Predicate::Comb(k) => nodes
            .into_iter()
            .filter(|n| match n.iter().position(|&d| d != 0) {
                None => true,
                Some(i) => n[i] == 1 && n[i + 1..].iter().all(|&d| d == 0) && n.len() - i - 1 < *k,
            })
            .collect(),
        Predicate::Random { seed, density } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            nodes
                .into_iter()
                .filter(|n| {
                    let keep = rng.gen_bool(*density);
                    n.is_empty() || keep
                })
                .collect()
        }
    };
    MembershipTable::new(depth, branching, ones)
}
