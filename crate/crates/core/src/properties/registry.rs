use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::event::Event;
use crate::frames::{Clause, Frame};

/// The frame properties the checker knows about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PropertyId {
    Base,
    Pd2,
    Pd57,
    Pd57Strong,
    Pd6,
    Pd7,
    Pd9,
    Pr4,
    Pr8,
}

impl PropertyId {
    pub const ALL: [PropertyId; 9] = [
        PropertyId::Base,
        PropertyId::Pd2,
        PropertyId::Pd57,
        PropertyId::Pd57Strong,
        PropertyId::Pd6,
        PropertyId::Pd7,
        PropertyId::Pd9,
        PropertyId::Pr4,
        PropertyId::Pr8,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PropertyId::Base => "BASE",
            PropertyId::Pd2 => "PD2",
            PropertyId::Pd57 => "PD57",
            PropertyId::Pd57Strong => "PD57_STRONG",
            PropertyId::Pd6 => "PD6",
            PropertyId::Pd7 => "PD7",
            PropertyId::Pd9 => "PD9",
            PropertyId::Pr4 => "PR4",
            PropertyId::Pr8 => "PR8",
        }
    }

    /// The defining condition, quantified over states and nonempty events.
    pub fn statement(self) -> &'static str {
        match self {
            PropertyId::Base => {
                "B serial; f(s,E) nonempty, f(s,E) ⊆ E, and s ∈ E ⇒ s ∈ f(s,E)"
            }
            PropertyId::Pd2 => "B(s) ⊆ E ⇒ ∀s'∈B(s): f(s',E) ⊆ B(s)",
            PropertyId::Pd57 => {
                "E∩F ≠ ∅ ∧ ∀s'∈B(s): f(s',E∩F) ⊆ G ⇒ ∀s'∈B(s): f(s',E)∩F ⊆ G"
            }
            PropertyId::Pd57Strong => "∀s'∈B(s): f(s',E)∩F ⊆ f(s',E∩F)",
            PropertyId::Pd6 => {
                "∀s'∈B(s): f(s',E) ⊆ F ∧ f(s',F) ⊆ E ⇒ ⋃_{B(s)} f(·,E) = ⋃_{B(s)} f(·,F)"
            }
            PropertyId::Pd7 => "B(s) = {s'} ⇒ f(s',E∪F) ⊆ f(s',E) ∪ f(s',F)",
            PropertyId::Pd9 => "B(s) = {s'} ∧ f(s',E)∩F ≠ ∅ ⇒ f(s',E∩F) ⊆ f(s',E)∩F",
            PropertyId::Pr4 => "B(s)∩E ≠ ∅ ⇒ ∀s'∈B(s): f(s',E) ⊆ B(s)∩E",
            PropertyId::Pr8 => {
                "∃ŝ∈B(s): f(ŝ,E)∩F ≠ ∅ ⇒ ∀s'∈B(s): f(s',E∩F) ⊆ ⋃_{B(s)} (f(·,E)∩F)"
            }
        }
    }

    /// The postulate the property validates.
    pub fn postulate(self) -> &'static str {
        match self {
            PropertyId::Base => "frame conditions",
            PropertyId::Pd2 => "if φ∈K then K∘φ=K",
            PropertyId::Pd57 => "K∘(φ∧ψ) ⊆ (K∘φ)+ψ",
            PropertyId::Pd57Strong => "K∘(φ∧ψ) ⊆ (K∘φ)+ψ (sufficient, not necessary)",
            PropertyId::Pd6 => "if ψ∈K∘φ and φ∈K∘ψ then K∘φ=K∘ψ",
            PropertyId::Pd7 => "(K∘φ)∩(K∘ψ) ⊆ K∘(φ∨ψ) at pointed states",
            PropertyId::Pd9 => "if ¬ψ∉K∘φ then (K∘φ)+ψ ⊆ K∘(φ∧ψ) at pointed states",
            PropertyId::Pr4 => "if ¬φ∉K then K ⊆ K∘φ",
            PropertyId::Pr8 => "if ¬ψ∉K∘φ then (K∘φ)+ψ ⊆ K∘(φ∧ψ)",
        }
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PropertyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        PropertyId::ALL
            .into_iter()
            .find(|p| p.as_str() == norm)
            .ok_or_else(|| Error::UnknownSelector(s.to_string()))
    }
}

impl Serialize for PropertyId {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(self.as_str())
    }
}

/// States and events instantiating a violated universal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct PropertyWitness {
    pub s: usize,
    pub s_prime: Option<usize>,
    pub e: Option<Event>,
    pub f: Option<Event>,
    pub g: Option<Event>,
    pub clause: Option<Clause>,
}

impl PropertyWitness {
    pub fn report(&self, frame: &Frame) -> WitnessReport {
        WitnessReport {
            s: frame.name(self.s).to_string(),
            s_prime: self.s_prime.map(|i| frame.name(i).to_string()),
            e: self.e.map(|x| frame.event_names(x)),
            f: self.f.map(|x| frame.event_names(x)),
            g: self.g.map(|x| frame.event_names(x)),
            clause: self.clause,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub s: String,
    #[serde(rename = "sPrime", skip_serializing_if = "Option::is_none")]
    pub s_prime: Option<String>,
    #[serde(rename = "E", skip_serializing_if = "Option::is_none")]
    pub e: Option<Vec<String>>,
    #[serde(rename = "F", skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<String>>,
    #[serde(rename = "G", skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clause: Option<Clause>,
}

/// Outcome of one property check; `witness` is the first violation in
/// canonical order (state, then event masks ascending, then `s'`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PropertyVerdict {
    pub property: PropertyId,
    pub witness: Option<PropertyWitness>,
}

impl PropertyVerdict {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }

    pub fn report(&self, frame: &Frame) -> VerdictReport {
        VerdictReport {
            property: self.property,
            holds: self.holds(),
            witness: self.witness.map(|w| w.report(frame)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub property: PropertyId,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_ids() {
        assert_eq!("PD57-strong".parse::<PropertyId>().unwrap(), PropertyId::Pd57Strong);
        assert_eq!("pr8".parse::<PropertyId>().unwrap(), PropertyId::Pr8);
        assert!(matches!("PD8".parse::<PropertyId>(), Err(Error::UnknownSelector(_))));
        for p in PropertyId::ALL {
            assert_eq!(p.as_str().parse::<PropertyId>().unwrap(), p);
        }
    }

    #[test]
    fn verdict_json_shape() {
        let fr = Frame::indexed(vec![Event::singleton(1), Event::singleton(1)]);
        let v = PropertyVerdict {
            property: PropertyId::Pd57,
            witness: Some(PropertyWitness {
                s: 0,
                s_prime: Some(1),
                e: Some(Event::full(2)),
                f: Some(Event::singleton(1)),
                ..Default::default()
            }),
        };
        assert_eq!(
            serde_json::to_string(&v.report(&fr)).unwrap(),
            r#"{"property":"PD57","holds":false,"witness":{"s":"s0","sPrime":"s1","E":["s0","s1"],"F":["s1"]}}"#
        );
    }
}
