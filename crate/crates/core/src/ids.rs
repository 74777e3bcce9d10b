use core::fmt;

/// Identifier of an actor, standing in for the address of its mail queue.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize), serde(transparent))]
pub struct ActorId(pub u32);

/// Identifier of a node in a passive reference graph.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize), serde(transparent))]
pub struct PassiveNodeId(pub u64);

impl From<u32> for ActorId {
    fn from(id: u32) -> Self {
        ActorId(id)
    }
}

impl From<u64> for PassiveNodeId {
    fn from(id: u64) -> Self {
        PassiveNodeId(id)
    }
}

impl From<ActorId> for PassiveNodeId {
    /// Identity embedding used by the vertex-preserving transforms.
    fn from(id: ActorId) -> Self {
        PassiveNodeId(u64::from(id.0))
    }
}

impl fmt::Display for ActorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for PassiveNodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
