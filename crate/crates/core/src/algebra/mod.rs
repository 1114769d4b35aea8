//! Free algebra layer: scalars, quivers, monomials, polynomials and orders.

mod lincomb;
mod order;
mod poly;
mod quiver;
mod scalar;

pub use lincomb::LinComb;
pub use order::{MonomialOrder, OrderKind};
pub use poly::{coeff_text, poly_arith, PolyOp, Polynomial};
pub use quiver::{Gen, Generator, Monomial, Obj, Quiver};
pub use scalar::{display_cmp, is_prime, rational_mod, FieldSpec, Fp, ParamCtx, RatFunc, Scalar, UPoly};
