//! Rigorous certification of boxes in the bicuspid parameter space.
//!
//! Words in the generators `M`, `N`, `G` are evaluated over parameter boxes
//! with affine complex jets whose error radii absorb all floating-point
//! round-off. Proof trees assign each leaf box a terminal condition that is
//! checked over the whole box.

pub mod apps;
pub mod boxes;
pub mod conditions;
pub mod jet;
pub mod matchings;
pub mod pairs;
pub mod par;
pub mod prooftree;
pub mod round;
pub mod words;

pub use boxes::{Boxcode, ParamBox};
pub use conditions::{Boundary, CertResult, CertStatus, Mode, TerminalCondition};
pub use jet::{AbsBounds, Jet, JetError};
pub use words::{Letter, Word};
