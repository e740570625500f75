use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::frames::Frame;

use super::{check_property, CheckConfig, PropertyId, PropertyVerdict, VerdictReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FrameClass {
    Update,
    StrongUpdate,
    /// PR4 and PR8 only.
    RevisionDef12,
    /// PR4, PD57 and PR8.
    RevisionStrict,
}

impl FrameClass {
    pub const ALL: [FrameClass; 4] = [
        FrameClass::Update,
        FrameClass::StrongUpdate,
        FrameClass::RevisionDef12,
        FrameClass::RevisionStrict,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FrameClass::Update => "update",
            FrameClass::StrongUpdate => "strong-update",
            FrameClass::RevisionDef12 => "revision-def12",
            FrameClass::RevisionStrict => "revision-strict",
        }
    }

    pub fn properties(self) -> &'static [PropertyId] {
        use PropertyId::*;
        match self {
            FrameClass::Update => &[Base, Pd2, Pd57, Pd6, Pd7],
            FrameClass::StrongUpdate => &[Base, Pd2, Pd57, Pd9],
            FrameClass::RevisionDef12 => &[Base, Pr4, Pr8],
            FrameClass::RevisionStrict => &[Base, Pr4, Pd57, Pr8],
        }
    }
}

impl fmt::Display for FrameClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FrameClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        FrameClass::ALL
            .into_iter()
            .find(|c| c.as_str() == norm)
            .ok_or_else(|| Error::UnknownSelector(s.to_string()))
    }
}

impl Serialize for FrameClass {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassVerdict {
    pub class: FrameClass,
    pub verdicts: Vec<PropertyVerdict>,
}

impl ClassVerdict {
    pub fn holds(&self) -> bool {
        self.verdicts.iter().all(PropertyVerdict::holds)
    }

    pub fn report(&self, frame: &Frame) -> ClassReport {
        ClassReport {
            class: self.class,
            holds: self.holds(),
            properties: self.verdicts.iter().map(|v| v.report(frame)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub class: FrameClass,
    pub holds: bool,
    pub properties: Vec<VerdictReport>,
}

/// Checks every property of `class`; all verdicts are reported, not just the first failure.
pub fn check_class(frame: &Frame, class: FrameClass, cfg: &CheckConfig) -> Result<ClassVerdict> {
    let verdicts = class
        .properties()
        .iter()
        .map(|&p| check_property(frame, p, cfg))
        .collect::<Result<_>>()?;
    Ok(ClassVerdict { class, verdicts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::event::Event;
    use crate::frames::CompletionRule;

    #[test]
    fn parse_classes() {
        assert_eq!("revision-strict".parse::<FrameClass>().unwrap(), FrameClass::RevisionStrict);
        assert_eq!("STRONG_UPDATE".parse::<FrameClass>().unwrap(), FrameClass::StrongUpdate);
        assert!("revision".parse::<FrameClass>().is_err());
    }

    #[test]
    fn seriality_failure_sinks_every_class() {
        let fr = Frame::indexed(vec![Event::singleton(0), Event::EMPTY]).complete(CompletionRule::Default);
        for c in FrameClass::ALL {
            let v = check_class(&fr, c, &CheckConfig::default()).unwrap();
            assert!(!v.holds());
            assert_eq!(v.verdicts[0].property, PropertyId::Base);
            assert!(!v.verdicts[0].holds());
        }
    }

    #[test]
    fn singleton_default_frames_are_in_every_class() {
        // B(s) = {s} and f(s,E) = {s} on s ∈ E: the centred default frame.
        let fr = Frame::indexed((0..3).map(Event::singleton).collect()).complete(CompletionRule::Default);
        for c in FrameClass::ALL {
            let v = check_class(&fr, c, &CheckConfig::default()).unwrap();
            assert!(v.holds(), "{c}: {:?}", v.verdicts);
        }
    }
}
