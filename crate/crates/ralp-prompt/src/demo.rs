//! Few-shot demonstrations.

use std::collections::BTreeMap;

use crate::Signature;

/// One worked example: field-name -> text for inputs and outputs.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Demo {
    pub inputs: BTreeMap<String, String>,
    pub outputs: BTreeMap<String, String>,
}

impl Demo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn input(mut self, field: impl Into<String>, value: impl Into<String>) -> Self {
        self.inputs.insert(field.into(), value.into());
        self
    }

    pub fn output(mut self, field: impl Into<String>, value: impl Into<String>) -> Self {
        self.outputs.insert(field.into(), value.into());
        self
    }

    /// Whether this demo supplies every field of the signature.
    pub fn covers(&self, sig: &Signature) -> bool {
        sig.input_fields
            .iter()
            .all(|f| self.inputs.contains_key(&f.name))
            && sig
                .output_fields
                .iter()
                .all(|f| self.outputs.contains_key(&f.name))
    }
}

/// A KvsAll query-answer pair in label space: the raw material few-shot
/// demos are cut from. The same pair renders differently for the
/// composer and the scorer stage.
#[derive(Clone, Debug, PartialEq)]
pub struct KvsAllDemo {
    pub subject: String,
    pub relation: String,
    pub objects: Vec<String>,
}

impl KvsAllDemo {
    pub fn to_composer_demo(&self) -> Demo {
        Demo::new()
            .input("subject", &self.subject)
            .input("relation", &self.relation)
            .output("candidates", format!("[{}]", self.objects.join(", ")))
    }

    pub fn to_scorer_demo(&self) -> Demo {
        let lines: Vec<String> = self
            .objects
            .iter()
            .map(|o| format!("{o}\t1.0\tasserted in the graph"))
            .collect();
        Demo::new()
            .input("subject", &self.subject)
            .input("relation", &self.relation)
            .input("candidates", format!("[{}]", self.objects.join(", ")))
            .output("scores", format!("```\n{}\n```", lines.join("\n")))
    }
}
