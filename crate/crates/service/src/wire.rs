//! JSON shapes exchanged with clients. Field names are part of the API
//! contract documented in `docs/api.md`.

use occupation_core::format::GameFile;
use occupation_core::reduction::GadgetMove;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mover {
    #[default]
    Human,
    Engine,
}

impl Mover {
    pub fn other(self) -> Mover {
        match self {
            Mover::Human => Mover::Engine,
            Mover::Engine => Mover::Human,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    InProgress,
    HumanLost,
    HumanWon,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Nim,
    Subtraction,
    Gadget,
    Explicit,
}

/// Game parameters for `POST /sessions`, tagged by `variant`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum GameSpec {
    Nim { piles: Vec<usize> },
    Subtraction { piles: Vec<usize> },
    Gadget { weights: Vec<u64>, target: u64 },
    Explicit { game: GameFile },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CreateRequest {
    #[serde(flatten)]
    pub game: GameSpec,
    #[serde(default)]
    pub first: Mover,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PileWire {
    pub pile: usize,
    pub take: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitWire {
    pub elements: Vec<String>,
}

/// A move on the wire; the accepted shape depends on the session variant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WireMove {
    Pile(PileWire),
    Gadget(GadgetMove),
    Explicit(ExplicitWire),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateView {
    Gadget {
        v: usize,
        w: usize,
        l: u64,
        piles: Vec<usize>,
    },
    Piles {
        piles: Vec<usize>,
    },
    Explicit {
        elements: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistoryEntry {
    pub by: Mover,
    #[serde(rename = "move")]
    pub mv: WireMove,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionView {
    pub id: String,
    pub variant: Variant,
    pub state: StateView,
    pub to_move: Mover,
    pub status: Status,
    /// Value of the start position for whoever moved first.
    pub start_truth: u8,
    /// Value of the current position for the player to move.
    pub truth: u8,
    pub history: Vec<HistoryEntry>,
    pub legal_moves: Vec<WireMove>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubmitResponse {
    #[serde(flatten)]
    pub session: SessionView,
    pub engine_reply: Option<WireMove>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub error: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub clause: Option<String>,
}
