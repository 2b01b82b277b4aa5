//! Cross-immunoreactivity networks.
//!
//! A network is a directed graph over antigen variants. Edge `i -> j` means
//! antibodies raised against variant `j` also act on variant `i`: they
//! neutralize it (weight `beta`) and are stimulated by it (weight `alpha`).
//!
//! Indices are 0-based inside the crate and 1-based in every file format.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Directed graph without self-loops or parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrNetwork {
    n: usize,
    /// Sorted, deduplicated, 0-based.
    edges: Vec<(usize, usize)>,
    adjacency: Vec<bool>,
}

/// On-disk representation: `{"n": 3, "edges": [[1, 2], [2, 3]]}` with 1-based labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl CrNetwork {
    /// Builds a network from 0-based edges.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidNetwork("network must have at least one node".into()));
        }
        let mut adjacency = vec![false; n * n];
        let mut sorted = Vec::with_capacity(edges.len());
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::InvalidNetwork(format!(
                    "edge ({}, {}) out of range for n = {n}",
                    i + 1,
                    j + 1
                )));
            }
            if i == j {
                return Err(Error::InvalidNetwork(format!("self-loop on node {}", i + 1)));
            }
            if adjacency[i * n + j] {
                return Err(Error::InvalidNetwork(format!(
                    "duplicate edge ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
            adjacency[i * n + j] = true;
            sorted.push((i, j));
        }
        sorted.sort_unstable();
        Ok(Self { n, edges: sorted, adjacency })
    }

    /// Builds a network from 1-based edges, as written in files and on the command line.
    pub fn from_one_based(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut zero = Vec::with_capacity(edges.len());
        for &(i, j) in edges {
            if i == 0 || j == 0 {
                return Err(Error::InvalidNetwork(
                    "node labels are 1-based; found label 0".into(),
                ));
            }
            zero.push((i - 1, j - 1));
        }
        Self::new(n, &zero)
    }

    /// Builds a network from a dense 0/1 adjacency matrix.
    pub fn from_adjacency(adjacency: &DMatrix<f64>) -> Result<Self> {
        if adjacency.nrows() != adjacency.ncols() {
            return Err(Error::InvalidNetwork("adjacency matrix must be square".into()));
        }
        let n = adjacency.nrows();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let a = adjacency[(i, j)];
                if a == 1.0 {
                    edges.push((i, j));
                } else if a != 0.0 {
                    return Err(Error::InvalidNetwork(format!(
                        "adjacency entry ({}, {}) = {a} is not 0 or 1",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Self::new(n, &edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges as 0-based `(from, to)` pairs in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i * self.n + j]
    }

    /// Dense adjacency matrix `A` with `A[i][j] = 1` iff `i -> j`.
    pub fn adjacency(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| if self.has_edge(i, j) { 1.0 } else { 0.0 })
    }

    pub fn out_neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.has_edge(i, j))
    }

    pub fn in_neighbors(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&i| self.has_edge(i, j))
    }

    pub fn indegree(&self, j: usize) -> usize {
        self.in_neighbors(j).count()
    }

    pub fn outdegree(&self, i: usize) -> usize {
        self.out_neighbors(i).count()
    }

    /// Relabels nodes so that old node `k` becomes `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch {
                what: "permutation length",
                expected: self.n,
                actual: perm.len(),
            });
        }
        let edges: Vec<_> = self.edges.iter().map(|&(i, j)| (perm[i], perm[j])).collect();
        Self::new(self.n, &edges)
    }

    pub fn to_file(&self) -> NetworkFile {
        NetworkFile {
            n: self.n,
            edges: self.edges.iter().map(|&(i, j)| [i + 1, j + 1]).collect(),
        }
    }

    pub fn from_file(file: &NetworkFile) -> Result<Self> {
        let edges: Vec<_> = file.edges.iter().map(|e| (e[0], e[1])).collect();
        Self::from_one_based(file.n, &edges)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: NetworkFile = serde_json::from_str(text)?;
        Self::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("network serialization cannot fail")
    }
}

impl Serialize for CrNetwork {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_file().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CrNetwork {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let file = NetworkFile::deserialize(d)?;
        Self::from_file(&file).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_self_loops_and_duplicates() {
        assert!(CrNetwork::new(2, &[(0, 0)]).is_err());
        assert!(CrNetwork::new(2, &[(0, 1), (0, 1)]).is_err());
        assert!(CrNetwork::new(2, &[(0, 2)]).is_err());
        assert!(CrNetwork::new(0, &[]).is_err());
        assert!(CrNetwork::from_one_based(2, &[(0, 1)]).is_err());
    }

    #[test]
    fn adjacency_matches_edges() {
        let g = CrNetwork::from_one_based(3, &[(2, 3), (1, 2), (3, 2)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2), (2, 1)]);
        let a = g.adjacency();
        for i in 0..3 {
            assert_eq!(a[(i, i)], 0.0);
            for j in 0..3 {
                assert_eq!(a[(i, j)] == 1.0, g.edges().contains(&(i, j)));
            }
        }
        assert_eq!(CrNetwork::from_adjacency(&a).unwrap(), g);
        assert_eq!((0..3).map(|j| g.indegree(j)).collect::<Vec<_>>(), vec![0, 2, 1]);
    }

    #[test]
    fn json_is_one_based_and_round_trips() {
        let g = CrNetwork::from_one_based(2, &[(1, 2)]).unwrap();
        assert_eq!(g.to_json(), r#"{"n":2,"edges":[[1,2]]}"#);
        assert_eq!(CrNetwork::from_json(&g.to_json()).unwrap(), g);
        assert!(CrNetwork::from_json(r#"{"n":2,"edges":[[1,1]]}"#).is_err());
    }

    #[test]
    fn large_networks_are_supported() {
        let edges: Vec<_> = (0..63).map(|i| (i, i + 1)).collect();
        let g = CrNetwork::new(64, &edges).unwrap();
        assert_eq!(g.n(), 64);
        assert_eq!(g.indegree(0), 0);
        assert_eq!(g.outdegree(63), 0);
    }
}
