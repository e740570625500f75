//! The JSON file format for frames and models.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::event::Event;

use super::{Frame, Model};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelectionEntry {
    pub s: String,
    pub event: Vec<String>,
    pub selects: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameFile {
    pub states: Vec<String>,
    pub belief: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub selection: Vec<SelectionEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valuation: Option<BTreeMap<String, Vec<String>>>,
}

/// A parsed file: a bare frame or a model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Loaded {
    Frame(Frame),
    Model(Model),
}

impl Loaded {
    pub fn frame(&self) -> &Frame {
        match self {
            Loaded::Frame(f) => f,
            Loaded::Model(m) => m.frame(),
        }
    }
}

impl FrameFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("frame files serialize")
    }

    pub fn to_frame(&self) -> Result<Frame> {
        let mut belief = vec![Event::EMPTY; self.states.len()];
        let mut frame = Frame::new(self.states.clone(), belief.clone())?;
        for (s, ids) in &self.belief {
            belief[frame.index_of(s)?] = frame.event_of(ids)?;
        }
        for (i, b) in belief.into_iter().enumerate() {
            frame.set_belief(i, b);
        }
        let mut seen = HashSet::new();
        for entry in &self.selection {
            let s = frame.index_of(&entry.s)?;
            let e = frame.event_of(&entry.event)?;
            let out = frame.event_of(&entry.selects)?;
            if !seen.insert((s, e)) {
                return Err(Error::DuplicateSelection {
                    state: entry.s.clone(),
                    event: frame.event_label(e),
                });
            }
            frame.set_selection(s, e, out);
        }
        Ok(frame)
    }

    pub fn load(&self) -> Result<Loaded> {
        let frame = self.to_frame()?;
        match &self.valuation {
            None => Ok(Loaded::Frame(frame)),
            Some(v) => {
                let mut val = BTreeMap::new();
                for (atom, ids) in v {
                    val.insert(atom.clone(), frame.event_of(ids)?);
                }
                Ok(Loaded::Model(Model::new(frame, val)?))
            }
        }
    }

    pub fn from_frame(frame: &Frame) -> Self {
        let belief = (0..frame.len())
            .map(|s| (frame.name(s).to_string(), frame.event_names(frame.belief(s))))
            .collect();
        let selection = frame
            .selection_entries()
            .into_iter()
            .map(|(s, e, out)| SelectionEntry {
                s: frame.name(s).to_string(),
                event: frame.event_names(e),
                selects: frame.event_names(out),
            })
            .collect();
        FrameFile {
            states: frame.names().to_vec(),
            belief,
            selection,
            valuation: None,
        }
    }

    pub fn from_model(model: &Model) -> Self {
        let mut file = FrameFile::from_frame(model.frame());
        file.valuation = Some(
            model
                .valuation()
                .iter()
                .map(|(a, e)| (a.clone(), model.frame().event_names(*e)))
                .collect(),
        );
        file
    }
}

/// Parses frame or model JSON text.
pub fn load_json(text: &str) -> Result<Loaded> {
    FrameFile::from_json(text)?.load()
}
