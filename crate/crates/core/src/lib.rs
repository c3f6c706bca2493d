pub mod check;
pub mod cli;
pub mod formulas;
pub mod perm;
pub mod qpoly;
pub mod tableaux;
