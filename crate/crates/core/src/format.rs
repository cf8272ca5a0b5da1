//! JSON game files.
//!
//! ```json
//! {
//!   "elements": ["a", "b"],
//!   "states": {"kind": "all"},
//!   "moves": {"kind": "explicit", "sets": [["a"], ["b"], ["a", "b"]]},
//!   "start": ["a", "b"]
//! }
//! ```
//!
//! `states` may also be `{"kind": "explicit", "sets": [...]}` or
//! `{"kind": "band", "w_region": [...], "v_region": [...]}`. An optional
//! `regions` array carries one tag per element.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{ElementSet, GroundSet, MoveFamily, OccupationGame, StateFamily};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameFile {
    pub elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regions: Option<Vec<String>>,
    pub states: StatesDoc,
    pub moves: MovesDoc,
    pub start: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum StatesDoc {
    All,
    Explicit {
        sets: Vec<Vec<String>>,
    },
    Band {
        w_region: Vec<String>,
        v_region: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MovesDoc {
    Explicit { sets: Vec<Vec<String>> },
}

impl GameFile {
    pub fn from_game(game: &OccupationGame) -> Result<GameFile> {
        let ground = &game.ground;
        let names = |s: ElementSet| -> Vec<String> { ground.labels_of(s).into_iter().map(str::to_string).collect() };
        let states = match &game.states {
            StateFamily::All => StatesDoc::All,
            StateFamily::Explicit(sets) => StatesDoc::Explicit {
                sets: sets.iter().copied().map(names).collect(),
            },
            StateFamily::Band { w_region, v_region } => StatesDoc::Band {
                w_region: names(*w_region),
                v_region: names(*v_region),
            },
        };
        let moves = match &game.moves {
            MoveFamily::Explicit(moves) => MovesDoc::Explicit {
                sets: moves.iter().copied().map(names).collect(),
            },
            MoveFamily::Structured(rule) => {
                return Err(Error::Unsupported(format!(
                    "serializing structured move family {}",
                    rule.name()
                )))
            }
        };
        Ok(GameFile {
            elements: ground.labels().to_vec(),
            regions: ground.regions().map(<[String]>::to_vec),
            states,
            moves,
            start: names(game.start),
        })
    }

    /// Resolves labels and validates the result as a game.
    pub fn to_game(&self) -> Result<OccupationGame> {
        let mut ground = GroundSet::new(self.elements.iter().cloned());
        if let Some(tags) = &self.regions {
            ground = ground.with_regions(tags.iter().cloned());
        }
        let resolve_all =
            |sets: &[Vec<String>]| -> Result<Vec<ElementSet>> { sets.iter().map(|s| ground.set_of(s)).collect() };
        let states = match &self.states {
            StatesDoc::All => StateFamily::All,
            StatesDoc::Explicit { sets } => StateFamily::Explicit(resolve_all(sets)?),
            StatesDoc::Band { w_region, v_region } => StateFamily::Band {
                w_region: ground.set_of(w_region)?,
                v_region: ground.set_of(v_region)?,
            },
        };
        let moves = match &self.moves {
            MovesDoc::Explicit { sets } => MoveFamily::Explicit(resolve_all(sets)?),
        };
        let start = ground.set_of(&self.start)?;
        OccupationGame::new(ground, states, moves, start)
    }
}

pub fn parse_game_file(text: &str) -> Result<GameFile> {
    serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn parse_game(text: &str) -> Result<OccupationGame> {
    parse_game_file(text)?.to_game()
}

pub fn serialize_game(game: &OccupationGame) -> Result<String> {
    let doc = GameFile::from_game(game)?;
    Ok(serde_json::to_string_pretty(&doc).expect("game files always serialize"))
}
