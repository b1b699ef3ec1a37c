pub mod assessment;
pub mod qdomain;
pub mod selections;
pub mod set;
pub mod universe;

pub use assessment::Assessment;
pub use qdomain::QDomain;
pub use selections::selections;
pub use set::{Family, ThingSet, MAX_THINGS};
pub use universe::{Payload, PayloadKind, Universe, VectorLayout, DEFAULT_THING_CAP};
