//! State complexity of the shuffle product: reachable tableaux of two monsters,
//! the vector-pair calculus that encodes their paths, exact enumeration by
//! transfer matrices and generating series, and computational checks of the
//! open conjectures at small sizes.

pub mod automata;
pub mod conjecture;
pub mod enumeration;
mod error;
pub mod guard;
pub mod monster;
pub mod upair;

pub use automata::{Dfa, Nfa, Transformation};
pub use conjecture::{ConjectureReport, Status};
pub use enumeration::{ExactMatrix, TruncatedSeries};
pub use error::{Error, Result};
pub use guard::Guard;
pub use monster::{MonsterLetter, Tableau};
pub use upair::{SetVector, UPair};
