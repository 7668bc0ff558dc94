//! Exact modular representation theory of the periplectic and queer Lie
//! superalgebras over finite fields of odd characteristic.

pub mod cache;
pub mod envmod;
pub mod experiment;
pub mod field;
pub mod linalg;
pub mod meataxe;
pub mod pchar;
pub mod superalg;
pub mod verma;
