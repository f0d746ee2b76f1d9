pub mod delta;
pub mod family;
pub mod gamma;
pub mod tilde;

pub use delta::{delta_f, delta_f_all, delta_t, SigmaChoice};
pub use family::{gallai_graph_base, iterate_m_prime, simple_gallai_graphs};
pub use gamma::{
    for_each_realization, gamma, gamma_with_origin, ConstructionSpec, LeafPool, Realization,
};
pub use tilde::{signature_choices, tilde_classes, TildePartition};
