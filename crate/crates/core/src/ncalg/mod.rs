pub mod symbol;
pub mod poly;
pub mod quotient;
pub mod series;
pub mod import;
