use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("abelian group specs do not match: {0}")]
    SpecMismatch(String),

    #[error("invalid automaton: {}", .0.join("; "))]
    InvalidAutomaton(Vec<String>),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("unknown letter {0:?}")]
    UnknownLetter(char),

    #[error("alphabet is not closed under inverses: no inverse for {0:?}")]
    NotInverseClosed(char),

    #[error("resource guard exceeded: {0}")]
    ResourceGuard(String),

    #[error("map is not injective: {0}")]
    NotInjective(String),

    #[error("subgroup has infinite index")]
    InfiniteIndex,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("element is not in the subgroup")]
    NotInSubgroup,

    #[error("well-definedness violation: {0}")]
    WellDefinedness(String),

    #[error("certification failure: {0}")]
    Certification(String),

    #[error("word problem contract violated: {0}")]
    LanguageContract(String),
}

pub type Result<T> = std::result::Result<T, Error>;
