use thiserror::Error;

/// Errors raised by link, diagram, engine and database operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("Seifert parameters must be nonzero (got p={p}, q={q})")]
    ZeroParameter { p: i64, q: i64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("label {0} has no component named {1:?}")]
    UnknownComponent(String, String),

    #[error("the Seifert fibring of {0} is not unique (unknot or Hopf link)")]
    NonUniqueFibration(String),

    #[error("{0} does not have a Seifert-fibred complement")]
    NotSeifertFibred(String),

    #[error("unknown atom {0:?}")]
    UnknownAtom(String),

    #[error("atom {atom:?} has no sublink record for {{{subset}}}")]
    NoSublinkRecord { atom: String, subset: String },

    #[error("atom {0:?} has no linking matrix")]
    MissingLinkingData(String),

    #[error("atom {atom:?} has no Alexander polynomial for component {component:?}")]
    MissingAlexander { atom: String, component: String },

    #[error("atom {0:?} has no volume record")]
    MissingVolume(String),

    #[error("diagram contains a cycle through edge {0:?}")]
    Cycle(String),

    #[error("dangling component: {0}")]
    DanglingComponent(String),

    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),

    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),

    #[error("unknown edge {0:?}")]
    UnknownEdge(String),

    #[error("unknown external label {0:?}")]
    UnknownExternal(String),

    #[error("vertex {0:?} is not labelled by a split link")]
    NotSplit(String),

    #[error("vertex set is not connected")]
    Disconnected,

    #[error("edge {0:?} is not realizable: its label lies in neither companion's strong Brunnian set")]
    NotRealizable(String),

    #[error("stored orientation of edge {edge:?} is {stored}, derived orientation is {derived}")]
    OrientationMismatch {
        edge: String,
        stored: String,
        derived: String,
    },

    #[error("splice precondition failed: neither {0:?} nor {1:?} is an unknotted component")]
    PreconditionBrunnian(String, String),

    #[error("key-chain merge across mixed clasp handedness is not supported (edge {0:?})")]
    UnsupportedMixedKeychain(String),

    #[error("expected a knot (exactly one external label), found {0} external labels")]
    NotAKnot(usize),

    #[error("atom database rejected:\n{}", .0.join("\n"))]
    AtomValidation(Vec<String>),

    #[error("json: {0}")]
    Json(String),

    #[error("syntax error at {line}:{col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },

    #[error("unknown selector {name:?} at {line}:{col}")]
    UnknownSelector {
        name: String,
        line: usize,
        col: usize,
    },

    #[error("at {line}:{col}: {source}")]
    At {
        line: usize,
        col: usize,
        #[source]
        source: Box<Error>,
    },
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
