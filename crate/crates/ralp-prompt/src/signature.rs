//! Task signatures: named input/output fields plus an instruction.

use crate::PromptError;

#[derive(Clone, Debug, PartialEq)]
pub struct FieldSpec {
    pub name: String,
    pub description: String,
}

impl FieldSpec {
    pub fn new(name: impl Into<String>, description: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            description: description.into(),
        }
    }

    /// Display form used in rendered prompts ("subject" -> "Subject").
    pub fn display_name(&self) -> String {
        let mut chars = self.name.chars();
        match chars.next() {
            Some(first) => first.to_uppercase().collect::<String>() + chars.as_str(),
            None => String::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Signature {
    pub name: String,
    pub input_fields: Vec<FieldSpec>,
    pub output_fields: Vec<FieldSpec>,
    pub instruction: String,
}

impl Signature {
    pub fn new(
        name: impl Into<String>,
        input_fields: Vec<FieldSpec>,
        output_fields: Vec<FieldSpec>,
        instruction: impl Into<String>,
    ) -> Result<Self, PromptError> {
        let sig = Self {
            name: name.into(),
            input_fields,
            output_fields,
            instruction: instruction.into(),
        };
        if sig.instruction.trim().is_empty() {
            return Err(PromptError::EmptyInstruction {
                signature: sig.name,
            });
        }
        let mut names: Vec<&str> = sig
            .input_fields
            .iter()
            .chain(&sig.output_fields)
            .map(|f| f.name.as_str())
            .collect();
        names.sort_unstable();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return Err(PromptError::DuplicateField {
                signature: sig.name,
            });
        }
        Ok(sig)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_instruction_and_duplicate_fields() {
        let err = Signature::new("t", vec![], vec![], "  ");
        assert!(matches!(err, Err(PromptError::EmptyInstruction { .. })));

        let err = Signature::new(
            "t",
            vec![FieldSpec::new("x", "a")],
            vec![FieldSpec::new("x", "b")],
            "do it",
        );
        assert!(matches!(err, Err(PromptError::DuplicateField { .. })));
    }

    #[test]
    fn display_name_capitalizes() {
        assert_eq!(FieldSpec::new("subject", "").display_name(), "Subject");
    }
}
