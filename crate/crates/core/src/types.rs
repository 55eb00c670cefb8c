use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Which of the two questions is being asked. `A` is measured in the
/// standard basis, `B` in the rotated one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Question {
    A,
    B,
}

impl Question {
    pub fn other(self) -> Self {
        match self {
            Question::A => Question::B,
            Question::B => Question::A,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Answer {
    Yes,
    No,
}

impl Answer {
    pub const BOTH: [Answer; 2] = [Answer::Yes, Answer::No];
}

/// Question order for a two-question sequence.
///
/// `AthenB` asks `A` first and reports the total probability of `B = yes`;
/// `BthenA` asks `B` first and reports the total probability of `A = yes`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    AthenB,
    BthenA,
}

impl Direction {
    pub fn first_question(self) -> Question {
        match self {
            Direction::AthenB => Question::A,
            Direction::BthenA => Question::B,
        }
    }

    pub fn second_question(self) -> Question {
        self.first_question().other()
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::AthenB => "AthenB",
            Direction::BthenA => "BthenA",
        })
    }
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "AthenB" | "athenb" | "a-then-b" => Ok(Direction::AthenB),
            "BthenA" | "bthena" | "b-then-a" => Ok(Direction::BthenA),
            other => Err(format!(
                "unknown direction `{other}` (expected AthenB or BthenA)"
            )),
        }
    }
}

/// Amplitude field of the projection model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Quantum,
    Classical,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Quantum => "quantum",
            Model::Classical => "classical",
        })
    }
}

impl FromStr for Model {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "quantum" => Ok(Model::Quantum),
            "classical" => Ok(Model::Classical),
            other => Err(format!(
                "unknown model `{other}` (expected quantum or classical)"
            )),
        }
    }
}
