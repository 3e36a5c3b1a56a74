use serde::Serialize;
use serde_json::Value;

use crate::resolution::Window;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Yes,
    No,
    Inconclusive,
}

/// How far a verdict reaches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    /// Decided outright (finite resolution or finite algebra).
    Exact,
    /// Only the window was inspected; nothing is claimed beyond it.
    WithinWindow,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub property: String,
    pub outcome: Outcome,
    pub scope: Scope,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<Window>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shift: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
}

impl Verdict {
    pub fn new(property: &str, outcome: Outcome, scope: Scope) -> Verdict {
        Verdict {
            property: property.into(),
            outcome,
            scope,
            window: None,
            witness: None,
            shift: None,
            details: None,
        }
    }

    pub fn with_window(mut self, w: Window) -> Verdict {
        self.window = Some(w);
        self
    }

    pub fn with_witness(mut self, w: Value) -> Verdict {
        self.witness = Some(w);
        self
    }

    pub fn with_details(mut self, d: Value) -> Verdict {
        self.details = Some(d);
        self
    }

    pub fn is_yes(&self) -> bool {
        self.outcome == Outcome::Yes
    }

    pub fn is_no(&self) -> bool {
        self.outcome == Outcome::No
    }
}
