pub mod cochains;
pub mod dcomplex;
pub mod error;
pub mod euler;
pub mod gauge;
pub mod groups;
pub mod io;
pub mod pathintegral;
pub mod phase;
pub mod verify;
