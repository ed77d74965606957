//! The four graph classes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Outerplanar,
    SeriesParallel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Connectivity {
    TwoConnected,
    Connected,
}

/// A family together with a connectivity requirement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct GraphClass {
    pub connectivity: Connectivity,
    pub family: Family,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown graph class {0:?}; expected one of 2conn-outerplanar, conn-outerplanar, 2conn-sp, conn-sp")]
pub struct UnknownClass(pub String);

impl GraphClass {
    pub const TWO_CONN_OUTERPLANAR: GraphClass =
        GraphClass { connectivity: Connectivity::TwoConnected, family: Family::Outerplanar };
    pub const CONN_OUTERPLANAR: GraphClass =
        GraphClass { connectivity: Connectivity::Connected, family: Family::Outerplanar };
    pub const TWO_CONN_SP: GraphClass =
        GraphClass { connectivity: Connectivity::TwoConnected, family: Family::SeriesParallel };
    pub const CONN_SP: GraphClass =
        GraphClass { connectivity: Connectivity::Connected, family: Family::SeriesParallel };

    pub const ALL: [GraphClass; 4] =
        [Self::TWO_CONN_OUTERPLANAR, Self::CONN_OUTERPLANAR, Self::TWO_CONN_SP, Self::CONN_SP];

    /// Smallest number of vertices of a member.
    pub fn min_size(self) -> usize {
        match self.connectivity {
            Connectivity::TwoConnected => 2,
            Connectivity::Connected => 1,
        }
    }

    pub fn is_two_connected(self) -> bool {
        self.connectivity == Connectivity::TwoConnected
    }

    pub fn name(self) -> &'static str {
        match (self.connectivity, self.family) {
            (Connectivity::TwoConnected, Family::Outerplanar) => "2conn-outerplanar",
            (Connectivity::Connected, Family::Outerplanar) => "conn-outerplanar",
            (Connectivity::TwoConnected, Family::SeriesParallel) => "2conn-sp",
            (Connectivity::Connected, Family::SeriesParallel) => "conn-sp",
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphClass {
    type Err = UnknownClass;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GraphClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| UnknownClass(s.to_string()))
    }
}

impl From<GraphClass> for String {
    fn from(c: GraphClass) -> String {
        c.name().to_string()
    }
}

impl TryFrom<String> for GraphClass {
    type Error = UnknownClass;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}
