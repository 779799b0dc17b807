pub mod algebra;
pub mod error;
pub mod partitions;
pub mod oracle;
pub mod wd;
pub mod bernstein;
pub mod multiseg;
pub mod local;
pub mod zeta;
pub mod dsl;
pub mod cli;
