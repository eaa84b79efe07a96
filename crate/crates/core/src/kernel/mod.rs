//! The underlying calculus: λΠ with one universe `type` and an equality type former.
//! Conversion is βη; bound variables are de Bruijn indices.

pub mod print;
pub mod resolve;
mod syntax;
mod typing;

pub use syntax::{is_operator_char, Assignment, Family, Hint, Image, Kind, Name, Term, TypeExpr, OPERATOR_CHARS};
pub use typing::{check_kind, conv, infer_type, normalize, Ctx, Signature};
