use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank must be positive")]
    ZeroRank,

    #[error("letter {letter} is outside the generator range 1..={rank}")]
    LetterOutOfRange { letter: usize, rank: usize },

    #[error("cannot parse word {input:?}: {reason}")]
    WordSyntax { input: String, reason: String },

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("congruence class grew beyond {cap} words")]
    ClassCapExceeded { cap: usize },

    #[error("class of {word} has no member in staircase form")]
    NoStaircaseMember { word: String },

    #[error("class of {word} has {count} members in staircase form")]
    MultipleStaircaseMembers { word: String, count: usize },

    #[error("index constraint violated: {0}")]
    IndexConstraintViolated(String),

    #[error("pair ({left}, {right}) relates words of different lengths")]
    InhomogeneousPair { left: String, right: String },

    #[error("malformed staircase form: {0}")]
    MalformedStaircase(String),

    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),

    #[error("rank {0} is too small for the diagram tree (need n >= 3)")]
    RankTooSmall(usize),

    #[error("diagram {0} is not a leaf")]
    NotALeaf(String),

    #[error("step {0} is not an arc step")]
    NotAnArcStep(usize),

    #[error("the two representations belong to the same leaf {0}")]
    SameLeaf(String),

    #[error("cannot parse bicyclic element {0:?}")]
    BicyclicSyntax(String),

    #[error("unknown suite {0:?}")]
    UnknownSuite(String),

    #[error("parameters exceed desk-scale bounds: {0}")]
    BoundsExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;
