use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),

    #[error("graph has no edges")]
    NoEdges,

    #[error("graph is disconnected: {} components ({})", .0.len(), format_components(.0))]
    Disconnected(Vec<Vec<usize>>),

    #[error("graph6: {0}")]
    Graph6(String),

    #[error("unknown graph name `{0}`")]
    UnknownGraph(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vertices 0 and 1 are not adjacent; normalize the graph first")]
    NotNormalized,

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("{what} exceeds size guard: {actual} > {limit}")]
    SizeGuard {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("trace set is not closed under the group action")]
    NotClosed,
}

fn format_components(components: &[Vec<usize>]) -> String {
    components
        .iter()
        .map(|c| {
            let labels: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            format!("{{{}}}", labels.join(" "))
        })
        .collect::<Vec<_>>()
        .join(", ")
}
