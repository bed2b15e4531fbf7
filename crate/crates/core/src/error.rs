use thiserror::Error;

use crate::geom::Position;

/// Structural problems with a chord model.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("chord {chord} has both endpoints at position {pos}")]
    DegenerateChord { chord: usize, pos: Position },
    #[error("position {pos} is outside 1..={max}")]
    PositionOutOfRange { pos: Position, max: Position },
    #[error("duplicate endpoint {pos}")]
    DuplicateEndpoint { pos: Position },
    #[error("chords share endpoint {pos}")]
    SharedEndpoint { pos: Position },
    #[error("side lengths sum to {got}, expected {expected}")]
    SideLengthMismatch { got: u32, expected: u32 },
    #[error("a polygon model needs at least 3 sides, got {0}")]
    TooFewSides(usize),
    #[error("chord endpoints on same side (chord {chord}, side {side})")]
    SameSide { chord: usize, side: usize },
    #[error("operation requires a polygon model with sides")]
    NoSides,
}

/// A parse failure, tagged with the 1-based line it was detected on.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}
