use core::fmt;

/// Errors raised while validating inputs or decomposing a graph.
///
/// Internal invariant violations (a budget found negative, an angle sum off)
/// are asserted, not returned: they signal a bug, never bad input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A vertex id occurs twice in the vertex list.
    DuplicateVertex(u64),
    /// An edge id occurs twice in the edge list.
    DuplicateEdge(u64),
    /// An edge endpoint references an unknown vertex id.
    UnknownVertex(u64),
    /// The rotation system or a face designation references an unknown edge.
    UnknownEdge(u64),
    /// Self-loops cannot occur in a series-parallel 4-graph.
    SelfLoop(u64),
    /// A vertex has degree greater than four.
    DegreeExceeded(u64),
    /// The rotation list at a vertex does not match its incident edges.
    RotationMismatch(u64),
    /// The input graph is not connected.
    Disconnected,
    /// Face tracing contradicts Euler's formula, so the rotation system is
    /// not a planar embedding.
    NotPlanar { vertices: usize, edges: usize, faces: usize },
    /// The named external face designation is invalid.
    BadExternalFace,
    /// The reference edge does not border the external face.
    ReferenceNotExternal,
    /// The graph cannot be made biconnected by one edge on the external face.
    NotAugmentable,
    /// The graph is not two-terminal series-parallel for the chosen poles.
    NotSeriesParallel,
    /// The generator was given an unsatisfiable size request.
    BadGeneratorSpec,
    /// Substitution of components with different spiralities was rejected.
    SpiralityMismatch,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DuplicateVertex(id) => write!(f, "duplicate vertex id {id}"),
            Error::DuplicateEdge(id) => write!(f, "duplicate edge id {id}"),
            Error::UnknownVertex(id) => write!(f, "unknown vertex id {id}"),
            Error::UnknownEdge(id) => write!(f, "unknown edge id {id}"),
            Error::SelfLoop(id) => write!(f, "edge {id} is a self-loop"),
            Error::DegreeExceeded(id) => write!(f, "vertex {id} has degree > 4"),
            Error::RotationMismatch(id) => {
                write!(f, "rotation at vertex {id} does not list its incident edges")
            }
            Error::Disconnected => write!(f, "graph is not connected"),
            Error::NotPlanar { vertices, edges, faces } => write!(
                f,
                "rotation system is not a planar embedding (V={vertices}, E={edges}, F={faces})"
            ),
            Error::BadExternalFace => write!(f, "external face designation is invalid"),
            Error::ReferenceNotExternal => {
                write!(f, "reference edge does not border the external face")
            }
            Error::NotAugmentable => write!(
                f,
                "graph cannot be biconnected by a single edge on the external face"
            ),
            Error::NotSeriesParallel => {
                write!(f, "graph is not two-terminal series-parallel")
            }
            Error::BadGeneratorSpec => write!(f, "generator spec is unsatisfiable"),
            Error::SpiralityMismatch => {
                write!(f, "substituted components must have equal spirality")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
