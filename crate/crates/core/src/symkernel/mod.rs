//! Scalar computer algebra: expressions, parsing, rational normal forms,
//! differentiation and zero testing.

mod diff;
mod eval;
mod expr;
mod gcd;
mod parse;
mod poly;
mod ratfun;
mod render;
mod simplify;

pub use diff::diff_expr;
pub use eval::{eval, eval_real, Env};
pub use expr::{Expr, Func, Kernel, Node};
pub use gcd::poly_gcd;
pub use parse::parse;
pub use poly::{Mono, Poly};
pub use ratfun::{RatCtx, RatFun};
pub use render::{render, render_latex};
pub use simplify::{diff, is_zero, numeric_zero_test, ratsimp, trigsimp, zero_test, ZeroTest};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SymError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown function '{name}' at {pos}")]
    UnknownFunction { pos: usize, name: String },
    #[error("division by zero")]
    DivisionByZero,
}
