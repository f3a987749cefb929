//! Text format for belief models, signals and games.
//!
//! ```text
//! # three states, one player who cannot tell w3 apart from anything
//! states w1 w2 w3;
//! player 1 {
//!   kripke { w1: {w1}; w2: {w2}; w3: {w1, w2, w3}; }
//! }
//! signal x : {a, b} { w1 -> a; w2 -> b; w3 -> a; } family { {a} {b} }
//! ```
//!
//! Operators are given as a possibility correspondence (`kripke`), a full
//! table over every event (`table`), or a partial table closed upward
//! (`core`). A `game` block lists actions, one rank per player and profile,
//! and one strategy per player.

mod lexer;
mod parser;
mod serialize;
mod validate;

use std::fmt;

pub use parser::parse_model_spec;
pub use serialize::serialize;
pub use validate::{document_of, document_of_game, validate, Validated};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// Source position carried by document nodes. It is not part of a
/// document's identity: two documents that differ only in layout are equal.
#[derive(Clone, Copy, Debug, Default)]
pub struct Loc(pub Option<Pos>);

impl PartialEq for Loc {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Loc {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Lexical,
    Syntax,
    Semantic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DslError {
    pub kind: ErrorKind,
    pub pos: Pos,
    pub message: String,
}

impl DslError {
    pub(crate) fn new(kind: ErrorKind, pos: Pos, message: impl Into<String>) -> Self {
        DslError {
            kind,
            pos,
            message: message.into(),
        }
    }

    pub(crate) fn semantic(loc: Loc, message: impl Into<String>) -> Self {
        DslError::new(ErrorKind::Semantic, loc.0.unwrap_or(Pos { line: 1, col: 1 }), message)
    }
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ErrorKind::Lexical => "lexical error",
            ErrorKind::Syntax => "syntax error",
            ErrorKind::Semantic => "semantic error",
        };
        write!(f, "{}: {kind}: {}", self.pos, self.message)
    }
}

impl std::error::Error for DslError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Name {
    pub text: String,
    pub loc: Loc,
}

impl Name {
    pub fn new(text: impl Into<String>) -> Self {
        Name {
            text: text.into(),
            loc: Loc(None),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetLit {
    pub items: Vec<Name>,
    pub loc: Loc,
}

impl SetLit {
    pub fn of<S: Into<String>>(items: impl IntoIterator<Item = S>) -> Self {
        SetLit {
            items: items.into_iter().map(Name::new).collect(),
            loc: Loc(None),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorSpec {
    Kripke(Vec<(Name, SetLit)>),
    Table(Vec<(SetLit, SetLit)>),
    Core(Vec<(SetLit, SetLit)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlayerDecl {
    pub name: Name,
    pub spec: OperatorSpec,
    pub loc: Loc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignalDecl {
    pub name: Name,
    pub codomain: SetLit,
    pub assignment: Vec<(Name, Name)>,
    pub family: Vec<SetLit>,
    pub loc: Loc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankDecl {
    pub player: Name,
    pub profile: Vec<Name>,
    pub rank: i64,
    pub loc: Loc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyDecl {
    pub player: Name,
    pub moves: Vec<(Name, Name)>,
    pub loc: Loc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameDecl {
    pub actions: Vec<(Name, Vec<Name>)>,
    pub ranks: Vec<RankDecl>,
    pub strategies: Vec<StrategyDecl>,
    pub loc: Loc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSpecDocument {
    pub states: Vec<Name>,
    pub players: Vec<PlayerDecl>,
    pub signals: Vec<SignalDecl>,
    pub game: Option<GameDecl>,
}

/// Parses an event in brace notation, e.g. `{w1, w3}`, against a state space.
pub fn parse_event(space: &crate::space::StateSpace, text: &str) -> Result<crate::space::Event, DslError> {
    let set = parser::parse_set_only(text)?;
    validate::event_of(space, &set)
}
