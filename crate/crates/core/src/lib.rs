pub mod arith;
pub mod detkit;
pub mod forms;
pub mod formulas;
pub mod harness;
mod error;

pub use error::{Error, Result};

// The guide's code listings run as doctests, one module per chapter.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/residues.md")]
    mod residues {}
    #[doc = include_str!("../../../book/src/determinants.md")]
    mod determinants {}
    #[doc = include_str!("../../../book/src/families.md")]
    mod families {}
    #[doc = include_str!("../../../book/src/closed-forms.md")]
    mod closed_forms {}
    #[doc = include_str!("../../../book/src/campaigns.md")]
    mod campaigns {}
}
