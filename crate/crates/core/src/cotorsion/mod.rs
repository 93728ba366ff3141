//! Classes of modules, closure properties and `n`-cotorsion pairs.

mod closure;
mod pair;
mod theorems;
mod triangular;
mod universe;

pub use closure::{Approximation, ClosureCheck};
pub use pair::{Check, HereditaryReport, Outcome, PairReport, PairSide};
pub use triangular::Setting;
pub use universe::{Budget, ModClass, Universe};
pub use theorems::{overall, ComponentClasses, NamedClass, TheoremReport};
