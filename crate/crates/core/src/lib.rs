pub mod basis;
pub mod cli;
pub mod forward;
pub mod inverse;
pub mod oracle;
pub mod specfun;
