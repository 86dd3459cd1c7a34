//! Public announcement logic over finite S5 models: formulas, models,
//! announcement updates, a syntactic success classifier and a bounded
//! semantic oracle to check it against.

pub mod classify;
pub mod formula;
pub mod gen;
pub mod kripke;
pub mod oracle;
pub mod parser;
mod semantics;
pub mod verify;
pub mod worldset;

pub use formula::{AgentId, Formula, PropId, SingleTermView};
pub use kripke::{KripkeModel, PointedModel, RawModel};
pub use parser::{parse, render, SourceError};
