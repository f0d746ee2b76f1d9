pub mod canonical;
pub mod census;
pub mod completeness;
pub mod roundtrip;
