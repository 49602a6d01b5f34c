use thiserror::Error;

/// Every failure the library can report.
///
/// The CLI maps each variant to a stable code via [`Error::code`], so
/// variants should not be renamed casually.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("self-loop on vertex {vertex} at time {time}")]
    SelfLoop { vertex: usize, time: u32 },
    #[error("time label {time} outside [1, {tau}]")]
    TimeOutOfRange { time: u32, tau: u32 },
    #[error("vertex {vertex} outside [0, {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("empty time interval [{from}, {to}]")]
    EmptyInterval { from: u32, to: u32 },
    #[error("duplicate edge ({u}, {v}, {time})")]
    DuplicateEdge { u: usize, v: usize, time: u32 },
    #[error("source and sink must differ (both {0})")]
    SameTerminals(usize),
    #[error("path has no edges")]
    EmptyPath,
    #[error("malformed path: {0}")]
    MalformedPath(String),
    #[error("separator contains terminal vertex {0}")]
    TerminalInSeparator(usize),
    #[error("no separator exists: edge ({s}, {z}, {time}) is a qualifying path without interior vertices")]
    Infeasible { s: usize, z: usize, time: u32 },
    #[error("unsupported case: {0}")]
    UnsupportedCase(String),
    #[error("static digraph has a direct source-to-sink arc")]
    DirectArc,
    #[error("branchwidth exceeds 2 (a biconnected component is not series-parallel)")]
    WidthExceeded,
    #[error("vertex {0} has no incident edges")]
    IsolatedVertex(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid branch decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("terminals {0} and {1} are adjacent")]
    TerminalAdjacent(usize, usize),
    #[error("universe element {0} is not covered by any set")]
    UncoveredElement(usize),
    #[error("segment {0} has no covered endpoint")]
    UncoveredSegment(usize),
    #[error("empty interval family")]
    EmptyFamily,
    #[error("edge ({0}, {1}) is not covered by any bag")]
    EdgeUncovered(usize, usize),
    #[error("bags containing vertex {0} are not contiguous")]
    VertexBagsDisconnected(usize),
    #[error("source instance is infeasible: {0}")]
    SourceInfeasible(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::SelfLoop { .. } => "E_SELF_LOOP",
            Error::TimeOutOfRange { .. } => "E_TIME_RANGE",
            Error::VertexOutOfRange { .. } => "E_VERTEX_RANGE",
            Error::EmptyInterval { .. } => "E_EMPTY_INTERVAL",
            Error::DuplicateEdge { .. } => "E_DUPLICATE_EDGE",
            Error::SameTerminals(_) => "E_SAME_TERMINALS",
            Error::EmptyPath => "E_EMPTY_PATH",
            Error::MalformedPath(_) => "E_MALFORMED_PATH",
            Error::TerminalInSeparator(_) => "E_TERMINAL_IN_SEPARATOR",
            Error::Infeasible { .. } => "E_INFEASIBLE",
            Error::UnsupportedCase(_) => "E_UNSUPPORTED",
            Error::DirectArc => "E_DIRECT_ARC",
            Error::WidthExceeded => "E_WIDTH_EXCEEDED",
            Error::IsolatedVertex(_) => "E_ISOLATED_VERTEX",
            Error::PreconditionViolated(_) => "E_PRECONDITION",
            Error::InvalidDecomposition(_) => "E_INVALID_DECOMPOSITION",
            Error::TerminalAdjacent(..) => "E_TERMINAL_ADJACENT",
            Error::UncoveredElement(_) => "E_UNCOVERED_ELEMENT",
            Error::UncoveredSegment(_) => "E_UNCOVERED_SEGMENT",
            Error::EmptyFamily => "E_EMPTY_FAMILY",
            Error::EdgeUncovered(..) => "E_EDGE_UNCOVERED",
            Error::VertexBagsDisconnected(_) => "E_BAGS_DISCONNECTED",
            Error::SourceInfeasible(_) => "E_SOURCE_INFEASIBLE",
            Error::Parse { .. } => "E_PARSE",
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
