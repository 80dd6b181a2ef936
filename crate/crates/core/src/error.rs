use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("malformed quiver: {0}")]
    Structural(String),
    #[error("quiver has an oriented cycle")]
    NotAcyclic,
    #[error("quiver has multiple arrows")]
    MultipleArrows,
    #[error("quiver is not connected")]
    Disconnected,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("arrows do not compose: {0}")]
    NotComposable(String),
    #[error("paths are not parallel")]
    NotParallel,
    #[error("stationary path where a nontrivial path is required")]
    StationaryPath,
    #[error("arrow `{0}` does not occur in the path")]
    ArrowNotInPath(String),
    #[error("not a bypass: {0}")]
    NotABypass(String),
    #[error("empty term list has no endpoints")]
    EmptyTerms,
    #[error("capacity exceeded: {what} (limit {limit})")]
    Capacity { what: &'static str, limit: usize },
    #[error("ideal is not admissible: {0}")]
    NotAdmissible(String),
    #[error("element does not lie in the ideal")]
    NotInIdeal,
    #[error("zero scale for arrow `{0}`")]
    ZeroScale(String),
    #[error("substitution is not invertible: {0}")]
    NotInvertible(String),
    #[error("not a product of transvections: {0}")]
    NotTransvectionProduct(String),
    #[error("ideal is not monomial")]
    NotMonomial,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("ideals are not conjugate: {0}")]
    NotConjugate(String),
    #[error("homotopy relations are not comparable: {0}")]
    NotComparable(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        source: alloc::boxed::Box<Error>,
    },
}

impl Error {
    pub(crate) fn at(self, stage: &'static str) -> Error {
        Error::Stage {
            stage,
            source: alloc::boxed::Box::new(self),
        }
    }
}
