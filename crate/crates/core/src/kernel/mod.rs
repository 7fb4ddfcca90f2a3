//! Exact coefficients, monomials, orders and sparse polynomials.

pub mod coeff;
pub mod int;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod poly;
pub mod ring;

pub use coeff::{Coeff, FieldMode, DEFAULT_PRIME};
pub use monomial::{weighted_degree, Monomial};
pub use order::{compare, Block, BlockOrder, MonomialOrder};
pub use poly::{Polynomial, Term};
pub use ring::Ring;
