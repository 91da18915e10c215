//! Meromorphic expressions: the extended-plane value type, the expression
//! tree with its parser and symbolic derivative, and the disk automorphisms.

mod diff;
mod expr;
mod mobius;
mod parse;
mod value;

pub use diff::differentiate;
pub use expr::{Expr, Func};
pub use mobius::{compose_map, MobiusMap};
pub use parse::parse_expr;
pub use value::ExtComplex;
