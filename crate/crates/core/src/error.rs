use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("duplicate identifier `{0}`")]
    DuplicateIdentifier(String),
    #[error("edge `{edge}` uses undeclared vertex `{vertex}`")]
    UndeclaredEndpoint { edge: String, vertex: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("vertex set is not hereditary and saturated")]
    NotHereditarySaturated,
    #[error("vertex set must be nonempty")]
    EmptyVertexSet,
    #[error("elements belong to different graphs or fields")]
    GraphMismatch,
    #[error("graph has a cycle")]
    HasCycle,
    #[error("graph has a bifurcation at `{0}`")]
    HasBifurcation(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("block {block} is not group invertible (rank {rank}, rank of square {rank_of_square})")]
    NotGroupInvertible {
        block: usize,
        rank: usize,
        rank_of_square: usize,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("element must be nonzero")]
    ZeroElement,
    #[error("no witness found within search bounds")]
    NotFoundWithinBounds,
    #[error("graph does not match the E(n, F) pattern")]
    NotToeplitzFamily,
    #[error("window {window} too small for element of total degree {degree}")]
    WindowTooSmall { window: usize, degree: usize },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("name collision: `{0}`")]
    NameCollision(String),
}

impl Error {
    /// A stable snake_case name for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "syntax",
            Error::DuplicateIdentifier(_) => "duplicate_identifier",
            Error::UndeclaredEndpoint { .. } => "undeclared_endpoint",
            Error::UnknownVertex(_) => "unknown_vertex",
            Error::UnknownIdentifier(_) => "unknown_identifier",
            Error::NotACycle(_) => "not_a_cycle",
            Error::NotHereditarySaturated => "not_hereditary_saturated",
            Error::EmptyVertexSet => "empty_vertex_set",
            Error::GraphMismatch => "graph_mismatch",
            Error::HasCycle => "has_cycle",
            Error::HasBifurcation(_) => "has_bifurcation",
            Error::Precondition(_) => "precondition",
            Error::NotGroupInvertible { .. } => "not_group_invertible",
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::ZeroElement => "zero_element",
            Error::NotFoundWithinBounds => "not_found_within_bounds",
            Error::NotToeplitzFamily => "not_toeplitz_family",
            Error::WindowTooSmall { .. } => "window_too_small",
            Error::InvalidField(_) => "invalid_field",
            Error::DivisionByZero => "division_by_zero",
            Error::NameCollision(_) => "name_collision",
        }
    }
}
