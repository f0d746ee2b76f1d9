pub mod cliques;
pub mod color;
pub mod construction;
pub mod decomposition;
pub mod error;
pub mod maximal;
pub mod mixed;
pub mod multigraph;
pub mod oracle;
pub mod rainbow;
pub mod reduce;
