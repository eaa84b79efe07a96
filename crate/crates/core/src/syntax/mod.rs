//! Surface syntax: lexer, combinator-expression AST, parser and printer.

pub mod ast;
pub mod lexer;
pub mod parser;
pub mod pretty;

pub use ast::{DefBody, Definition, MapArg, Module, RawBinder, RawDecl, RawExpr, RawMap, TpcExpr};
pub use parser::{parse_expr, parse_module, parse_raw};
