//! The small named networks.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::CrNetwork;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedNetwork {
    /// `1->2`.
    Asym2,
    /// `1->2, 2->1`.
    Sym2,
    /// `1->2, 2->3`.
    ChainBranch3,
    /// `1->2, 2->3, 3->2`.
    BranchCycle3,
    /// `1->2, 2->3, 3->1`.
    Cycle3,
    /// `2->1, 3->1, 4->1`.
    TShape4,
    /// Branch-cycle mirrored about node 1:
    /// `1->2, 2->3, 3->2, 1->4, 5->4, 4->5`.
    Composed5,
}

impl NamedNetwork {
    pub const ALL: [NamedNetwork; 7] = [
        NamedNetwork::Asym2,
        NamedNetwork::Sym2,
        NamedNetwork::ChainBranch3,
        NamedNetwork::BranchCycle3,
        NamedNetwork::Cycle3,
        NamedNetwork::TShape4,
        NamedNetwork::Composed5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedNetwork::Asym2 => "asym2",
            NamedNetwork::Sym2 => "sym2",
            NamedNetwork::ChainBranch3 => "chain_branch3",
            NamedNetwork::BranchCycle3 => "branch_cycle3",
            NamedNetwork::Cycle3 => "cycle3",
            NamedNetwork::TShape4 => "t_shape4",
            NamedNetwork::Composed5 => "composed5",
        }
    }

    /// Node count and 1-based edges.
    fn definition(self) -> (usize, &'static [(usize, usize)]) {
        match self {
            NamedNetwork::Asym2 => (2, &[(1, 2)]),
            NamedNetwork::Sym2 => (2, &[(1, 2), (2, 1)]),
            NamedNetwork::ChainBranch3 => (3, &[(1, 2), (2, 3)]),
            NamedNetwork::BranchCycle3 => (3, &[(1, 2), (2, 3), (3, 2)]),
            NamedNetwork::Cycle3 => (3, &[(1, 2), (2, 3), (3, 1)]),
            NamedNetwork::TShape4 => (4, &[(2, 1), (3, 1), (4, 1)]),
            NamedNetwork::Composed5 => (5, &[(1, 2), (2, 3), (3, 2), (1, 4), (5, 4), (4, 5)]),
        }
    }

    pub fn network(self) -> CrNetwork {
        let (n, edges) = self.definition();
        CrNetwork::from_one_based(n, edges).expect("named networks are valid")
    }
}

impl fmt::Display for NamedNetwork {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedNetwork {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NamedNetwork::ALL
            .into_iter()
            .find(|n| n.name() == s)
            .ok_or_else(|| Error::UnknownNetwork(s.to_string()))
    }
}

/// Network by name, e.g. `"branch_cycle3"`.
pub fn get_network(name: &str) -> Result<CrNetwork> {
    Ok(name.parse::<NamedNetwork>()?.network())
}
