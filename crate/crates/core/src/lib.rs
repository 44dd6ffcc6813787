pub mod ring;
pub mod roots;
pub mod chevalley;
pub mod witness;
pub mod norm;
