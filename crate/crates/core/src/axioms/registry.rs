use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::event::Event;
use crate::frames::Frame;

/// Update (`D*`) and revision (`R*`) postulates. There is no `D8`: the
/// disjunction rule is audited separately by [`super::audit_km8`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomId {
    D0,
    D1,
    D2,
    D3,
    D4,
    D5,
    D6,
    D7,
    D9,
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
}

impl AxiomId {
    pub const ALL: [AxiomId; 17] = [
        AxiomId::D0,
        AxiomId::D1,
        AxiomId::D2,
        AxiomId::D3,
        AxiomId::D4,
        AxiomId::D5,
        AxiomId::D6,
        AxiomId::D7,
        AxiomId::D9,
        AxiomId::R1,
        AxiomId::R2,
        AxiomId::R3,
        AxiomId::R4,
        AxiomId::R5,
        AxiomId::R6,
        AxiomId::R7,
        AxiomId::R8,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AxiomId::D0 => "D0",
            AxiomId::D1 => "D1",
            AxiomId::D2 => "D2",
            AxiomId::D3 => "D3",
            AxiomId::D4 => "D4",
            AxiomId::D5 => "D5",
            AxiomId::D6 => "D6",
            AxiomId::D7 => "D7",
            AxiomId::D9 => "D9",
            AxiomId::R1 => "R1",
            AxiomId::R2 => "R2",
            AxiomId::R3 => "R3",
            AxiomId::R4 => "R4",
            AxiomId::R5 => "R5",
            AxiomId::R6 => "R6",
            AxiomId::R7 => "R7",
            AxiomId::R8 => "R8",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            AxiomId::D0 | AxiomId::R1 => "K∘φ = Cn(K∘φ)",
            AxiomId::D1 | AxiomId::R2 => "φ ∈ K∘φ",
            AxiomId::D2 => "if φ ∈ K then K∘φ = K",
            AxiomId::D3 | AxiomId::R5 => "K∘φ = Φ0 if and only if φ is a contradiction",
            AxiomId::D4 | AxiomId::R6 => "if ⊢ φ↔ψ then K∘φ = K∘ψ",
            AxiomId::D5 | AxiomId::R7 => "K∘(φ∧ψ) ⊆ (K∘φ)+ψ",
            AxiomId::D6 => "if ψ ∈ K∘φ and φ ∈ K∘ψ then K∘φ = K∘ψ",
            AxiomId::D7 => "if K is complete then (K∘φ)∩(K∘ψ) ⊆ K∘(φ∨ψ)",
            AxiomId::D9 => "if K is complete and ¬ψ ∉ K∘φ then (K∘φ)+ψ ⊆ K∘(φ∧ψ)",
            AxiomId::R3 => "K∘φ ⊆ K+φ",
            AxiomId::R4 => "if ¬φ ∉ K then K ⊆ K∘φ",
            AxiomId::R8 => "if ¬ψ ∉ K∘φ then (K∘φ)+ψ ⊆ K∘(φ∧ψ)",
        }
    }

    /// Checked only where the initial belief set is complete.
    pub fn needs_complete(self) -> bool {
        matches!(self, AxiomId::D7 | AxiomId::D9)
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AxiomId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase();
        AxiomId::ALL
            .into_iter()
            .find(|a| a.as_str() == norm)
            .ok_or_else(|| Error::UnknownSelector(s.to_string()))
    }
}

impl Serialize for AxiomId {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(self.as_str())
    }
}

/// Truth sets for `φ`, `ψ` and a distinguishing `χ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AxiomWitness {
    pub e: Event,
    pub f: Option<Event>,
    pub g: Event,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomVerdict {
    Holds,
    Fails(AxiomWitness),
    NotApplicable,
}

impl AxiomVerdict {
    pub fn is_violation(&self) -> bool {
        matches!(self, AxiomVerdict::Fails(_))
    }

    pub fn witness(&self) -> Option<AxiomWitness> {
        match self {
            AxiomVerdict::Fails(w) => Some(*w),
            _ => None,
        }
    }

    pub fn report(&self, frame: &Frame, axiom: AxiomId, s: usize) -> AxiomReport {
        AxiomReport {
            axiom,
            state: frame.name(s).to_string(),
            applicable: !matches!(self, AxiomVerdict::NotApplicable),
            holds: match self {
                AxiomVerdict::NotApplicable => None,
                v => Some(!v.is_violation()),
            },
            witness: self.witness().map(|w| AxiomWitnessReport {
                e: frame.event_names(w.e),
                f: w.f.map(|f| frame.event_names(f)),
                g: frame.event_names(w.g),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomWitnessReport {
    #[serde(rename = "E")]
    pub e: Vec<String>,
    #[serde(rename = "F", skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<String>>,
    #[serde(rename = "G")]
    pub g: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub axiom: AxiomId,
    pub state: String,
    pub applicable: bool,
    pub holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<AxiomWitnessReport>,
}
