//! Frame properties against the postulates they characterize, in both directions.

mod generate;
mod pairs;
mod verdict;
mod witness;

pub use generate::{
    admissible, enumerate_frames, is_canonical, permutations, FrameGenSpec, FrameStream, GenMode,
    MAX_EXHAUSTIVE_STATES,
};
pub use pairs::{parse_pairs, CorrespondencePair, Scope};
pub use verdict::{
    census, correspondence_verdict, valuations, CensusReport, CensusSummary, ClassBits, CorrespondConfig,
    Counterexample, FrameEntry, PairReport, PairSummary, WitnessModelReport, ATOMS, DEFAULT_SAMPLES,
    EXHAUSTIVE_VALUATION_BITS,
};
pub use witness::{build_witness_model, instance_fails, AxiomInstance, InstanceReport, WitnessModel};
