//! Finite categories, functors, natural transformations, and finite (co)limits of finite sets.

mod category;
mod elements;
mod finset;
mod functor;

pub use category::{Arrow, FinCat, FinCatData};
pub use elements::{category_of_elements, Elements, Presheaf};
pub use finset::{
    connected_order, diagram_limit, finite_coproduct, finite_limit, Coproduct, DiagramArrow, FinSetBase, Limit, LimitCone,
    SetDiagram, SetFunctor, SetMap,
};
pub(crate) use functor::is_bijection;
pub use functor::{
    enumerate_functors, enumerate_functors_among, enumerate_transformations, functor_category, FinFunctor, FunctorCategory, NatTrans,
};
