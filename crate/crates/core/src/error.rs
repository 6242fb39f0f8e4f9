use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes of the library. Validation errors name the offending
/// entry so callers can report it verbatim.
#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate edge {{{u},{v}}} in assignment list")]
    DuplicateEdge { u: usize, v: usize },

    #[error("vertex out of range: edge {{{u},{v}}} does not fit n={n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },

    #[error("color out of range: edge {{{u},{v}}} has color {color}, budget k={k}")]
    ColorOutOfRange { u: usize, v: usize, color: u32, k: u32 },

    #[error("incomplete coloring: edge {{{u},{v}}} is unassigned")]
    IncompleteColoring { u: usize, v: usize },

    #[error("fan length {got} does not match vertex count {expected}")]
    FanLengthMismatch { expected: usize, got: usize },

    #[error("not a Gallai coloring: rainbow triangle {{{0},{1},{2}}}", .triangle[0], .triangle[1], .triangle[2])]
    NotGallai { triangle: [usize; 3] },

    #[error("fan is not a Gallai extension: rainbow triangle {{{0},{1},{2}}}", .triangle[0], .triangle[1], .triangle[2])]
    InvalidFan { triangle: [usize; 3] },

    #[error("color budget k={k} is below the largest color {max_used} used in the coloring")]
    InsufficientColorBudget { k: u32, max_used: u32 },

    #[error("instance too large: estimated {estimate} DFS nodes exceeds budget {budget}")]
    BudgetExceeded { estimate: String, budget: u64 },

    #[error("coloring uses {got} colors where at most 2 are allowed")]
    NotTwoColored { got: usize },

    #[error("coloring is not in F, so F' membership is undefined")]
    NotInF,

    #[error("malformed host set: {reason}")]
    MalformedHost { reason: String },

    #[error("n={n} exceeds the {max}-vertex limit of this operation")]
    UnsupportedSize { n: usize, max: usize },

    #[error("parameter out of domain for {expr}: {reason}")]
    OutOfDomain { expr: String, reason: String },

    #[error("unknown verification suite '{name}'")]
    UnknownSuite { name: String },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("checkpoint does not match this run: {reason}")]
    CheckpointMismatch { reason: String },

    #[error("n must be at least {min} for this operation (got {n})")]
    TooFewVertices { n: usize, min: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
