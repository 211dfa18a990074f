//! Second-order freeness: the axioms as checkable predicates on a concrete
//! second-order probability space, and the expansion of mixed fluctuation
//! moments `ρ(a₁⋯a_n, b₁⋯b_m)` of free subalgebras into balanced
//! expressions.

mod check;
mod expand;
mod model;

pub use check::{alternating_tuples, check_second_order_free, Condition, FreenessReport, Slot, Witness};
pub use expand::{condition_star, expand_rho, is_cyclically_alternating, rho_expand, Atom, Expansion};
pub use model::{FockSecondOrder, PerturbedRho, SecondOrderModel};
