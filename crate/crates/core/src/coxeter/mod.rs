//! Coxeter diagrams, the geometric representation and word combinatorics.

mod diagram;
mod word;

pub use diagram::{
    Bond, BondValue, CoxeterDiagram, DiagramDocument, DiagramError, FiniteType, GroupOrder,
    NamedType,
};
pub use word::{
    element_length, enumerate_elements, is_reduced, normal_form, root_image, simple_reflection,
    Word, WordError,
};

pub(crate) use diagram::crystallographic_cartan;
pub(crate) use word::reflect_in_place;
