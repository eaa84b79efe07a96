use crate::kernel::Name;
use thiserror::Error;

/// Source position (1-based line and column).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl std::fmt::Display for Pos {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unbound name `{0}`")]
    UnboundName(Name),
    #[error("type mismatch{}: expected {expected}, found {found}", ctx_suffix(.context))]
    TypeMismatch { context: Option<Name>, expected: String, found: String },
    #[error("kind mismatch: expected {expected}, found {found}")]
    KindMismatch { expected: String, found: String },
    #[error("`{0}` is not a function")]
    NotAFunction(String),
    #[error("ill-typed: {0}")]
    IllTyped(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(Name),
    #[error("ill-formed classifier for `{0}`: {1}")]
    IllFormedClassifier(Name, String),
    #[error("no assignment for source symbol `{0}`")]
    MissingAssignment(Name),
    #[error("assignment to `{0}`, which is not a source symbol")]
    ExtraAssignment(Name),
    #[error("source/target mismatch: {0}")]
    SourceTargetMismatch(String),
    #[error("not an embedding: {0}")]
    NotAnEmbedding(String),
    #[error("renaming is not injective: `{0}` and `{1}` both map to `{2}`")]
    NotInjective(Name, Name, Name),
    #[error("renaming collides with existing name `{0}`")]
    NameCollision(Name),
    #[error("shared base mismatch: {0}")]
    SharedBaseMismatch(String),
    #[error("renaming condition violated for `{0}` and `{1}`: the names must be identified exactly when they come from the same base symbol")]
    RenamingConditionViolated(Name, Name),
    #[error("renaming images are not disjoint: `{0}`")]
    NotDisjoint(Name),
    #[error("renaming of the right operand may only touch its extension, but renames base symbol `{0}`")]
    RenamesBaseSymbol(Name),
    #[error("square does not commute at `{0}`")]
    SquareDoesNotCommute(Name),
    #[error("lexical error at {pos}: {msg}")]
    Lex { pos: Pos, msg: String },
    #[error("parse error at {pos}: expected {expected}, found {found}")]
    Parse { pos: Pos, expected: String, found: String },
    #[error("duplicate definition `{name}`")]
    DuplicateDefinition { name: Name, pos: Pos },
    #[error("unknown reference `{name}`")]
    UnknownReference { name: Name, pos: Pos },
    #[error("specification error: {0}")]
    SpecificationError(String),
    #[error("type error ({rule}): {msg}")]
    TypeError { rule: &'static str, msg: String },
    #[error("unknown definition `{0}`")]
    UnknownDefinition(Name),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

fn ctx_suffix(c: &Option<Name>) -> String {
    match c {
        Some(n) => format!(" at `{n}`"),
        None => String::new(),
    }
}

impl Error {
    /// Stable diagnostic code used in CLI reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::UnboundName(_) => "UnboundName",
            Error::TypeMismatch { .. } => "TypeMismatch",
            Error::KindMismatch { .. } => "KindMismatch",
            Error::NotAFunction(_) => "NotAFunction",
            Error::IllTyped(_) => "IllTyped",
            Error::DuplicateName(_) => "DuplicateName",
            Error::IllFormedClassifier(..) => "IllFormedClassifier",
            Error::MissingAssignment(_) => "MissingAssignment",
            Error::ExtraAssignment(_) => "ExtraAssignment",
            Error::SourceTargetMismatch(_) => "SourceTargetMismatch",
            Error::NotAnEmbedding(_) => "NotAnEmbedding",
            Error::NotInjective(..) => "NotInjective",
            Error::NameCollision(_) => "NameCollision",
            Error::SharedBaseMismatch(_) => "SharedBaseMismatch",
            Error::RenamingConditionViolated(..) => "RenamingConditionViolated",
            Error::NotDisjoint(_) => "NotDisjoint",
            Error::RenamesBaseSymbol(_) => "RenamesBaseSymbol",
            Error::SquareDoesNotCommute(_) => "SquareDoesNotCommute",
            Error::Lex { .. } => "LexError",
            Error::Parse { .. } => "ParseError",
            Error::DuplicateDefinition { .. } => "DuplicateDefinition",
            Error::UnknownReference { .. } => "UnknownReference",
            Error::SpecificationError(_) => "SpecificationError",
            Error::TypeError { .. } => "TypeError",
            Error::UnknownDefinition(_) => "UnknownDefinition",
            Error::Internal(_) => "Internal",
        }
    }

    /// Position carried by the error itself, if any.
    pub fn pos(&self) -> Option<Pos> {
        match self {
            Error::Lex { pos, .. }
            | Error::Parse { pos, .. }
            | Error::DuplicateDefinition { pos, .. }
            | Error::UnknownReference { pos, .. } => Some(*pos),
            _ => None,
        }
    }

    pub fn type_mismatch(context: Option<Name>, expected: impl Into<String>, found: impl Into<String>) -> Self {
        Error::TypeMismatch { context, expected: expected.into(), found: found.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
