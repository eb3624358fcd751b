//! Finite unital rings as Cayley tables, element decompositions with
//! explicit witnesses, and executable checks of structural theorems about
//! them.

pub mod classify;
pub mod dsl;
pub mod ring;
pub mod search;
pub mod star;
pub mod suite;

pub use classify::{
    basic_sets, ring_census, BasicSets, Census, CentralPolynomial, Classifier, ElementProfile, RegularityRule,
};
pub use dsl::{build_spec, parse_ring_spec, Built, DslError, Plan};
pub use ring::{Elem, FiniteRing, Ideal, RingError, RingMap};
pub use search::{corpus_generate, find_witness, Caps, CorpusEntry, WitnessQuery};
pub use star::{Involution, StarError};
pub use suite::{run_check, run_suite, CheckId, CheckInput, CheckReport, Status};
