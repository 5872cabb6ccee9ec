pub mod exact;
pub mod json;
pub mod linalg;
pub mod logconcave;
pub mod polytope;
pub mod pushforward;
pub mod sl2forms;
