//! Exact computations around the Coble cubic: Heisenberg-invariant forms on
//! ℙ⁸, Barth quadrics, restriction of invariant sextics to fixed planes, dual
//! sextics of Hesse cubics, and the enumerative arithmetic attached to them.

pub mod arith;
pub mod poly;
pub mod heisenberg;
pub mod invariants;
pub mod reference;
pub mod coble;
pub mod nu;
pub mod hesse;
pub mod enumerative;
pub mod prym;
pub mod properties;
pub mod verify;
