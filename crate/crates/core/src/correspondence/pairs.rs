use std::fmt;

use serde::{Serialize, Serializer};

use crate::axioms::AxiomId;
use crate::error::{Error, Result};
use crate::properties::PropertyId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    AllStates,
    PointedStates,
}

/// A frame property and the postulate it characterizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CorrespondencePair {
    pub property: PropertyId,
    pub axiom: AxiomId,
    pub scope: Scope,
}

impl CorrespondencePair {
    const fn new(property: PropertyId, axiom: AxiomId, scope: Scope) -> Self {
        CorrespondencePair {
            property,
            axiom,
            scope,
        }
    }

    pub const ALL: [CorrespondencePair; 7] = [
        Self::new(PropertyId::Pd2, AxiomId::D2, Scope::AllStates),
        Self::new(PropertyId::Pd57, AxiomId::D5, Scope::AllStates),
        Self::new(PropertyId::Pd6, AxiomId::D6, Scope::AllStates),
        Self::new(PropertyId::Pd7, AxiomId::D7, Scope::PointedStates),
        Self::new(PropertyId::Pd9, AxiomId::D9, Scope::PointedStates),
        Self::new(PropertyId::Pr4, AxiomId::R4, Scope::AllStates),
        Self::new(PropertyId::Pr8, AxiomId::R8, Scope::AllStates),
    ];

    pub fn label(&self) -> String {
        format!("{}:{}", self.property, self.axiom)
    }

    fn accepts_axiom(&self, a: AxiomId) -> bool {
        a == self.axiom || (self.axiom == AxiomId::D5 && a == AxiomId::R7)
    }
}

impl fmt::Display for CorrespondencePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.property, self.axiom)
    }
}

impl Serialize for CorrespondencePair {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.label())
    }
}

/// Parses a comma-separated selector list: `all`, `PR4:R4`, or a bare property id.
pub fn parse_pairs(text: &str) -> Result<Vec<CorrespondencePair>> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if item.eq_ignore_ascii_case("all") {
            for p in CorrespondencePair::ALL {
                if !out.contains(&p) {
                    out.push(p);
                }
            }
            continue;
        }
        let unknown = || Error::UnknownSelector(item.to_string());
        let (prop, axiom) = match item.split_once(':') {
            Some((p, a)) => (p.parse::<PropertyId>().map_err(|_| unknown())?, Some(a.parse::<AxiomId>().map_err(|_| unknown())?)),
            None => (item.parse::<PropertyId>().map_err(|_| unknown())?, None),
        };
        let pair = CorrespondencePair::ALL
            .into_iter()
            .find(|p| p.property == prop && axiom.map_or(true, |a| p.accepts_axiom(a)))
            .ok_or_else(unknown)?;
        if !out.contains(&pair) {
            out.push(pair);
        }
    }
    if out.is_empty() {
        return Err(Error::UnknownSelector(text.to_string()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_selectors() {
        assert_eq!(parse_pairs("all").unwrap(), CorrespondencePair::ALL.to_vec());
        assert_eq!(parse_pairs("PR4:R4").unwrap(), vec![CorrespondencePair::ALL[5]]);
        assert_eq!(parse_pairs("PD57:R7, pd7").unwrap(), vec![CorrespondencePair::ALL[1], CorrespondencePair::ALL[3]]);
        assert!(parse_pairs("PR4:D2").is_err());
        assert!(parse_pairs("PD57_STRONG").is_err());
        assert!(parse_pairs("").is_err());
    }
}
