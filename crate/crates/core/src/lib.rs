pub mod arrangement;
pub mod connection;
pub mod fixtures;
pub mod fox;
pub mod linalg;
pub mod oscomplex;
pub mod parallel;
pub mod ring;
