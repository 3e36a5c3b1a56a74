//! Input documents: graded presentations (`generators`, ...) or finite-dimensional
//! algebras by structure constants (`basis`, `products`).

use dgk_core::gradedalg::{
    FdAlgebra, FdAlgebraFile, GradedQuotient, Presentation, PresentationFile,
};
use dgk_core::{Error, Field};
use serde_json::Value;

#[derive(Clone, Debug)]
pub enum Input {
    Presentation(Presentation),
    Algebra(FdAlgebra),
}

fn syntax(e: serde_json::Error) -> Error {
    Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

impl Input {
    /// Parses `text`, returning the input and its canonical JSON form (sorted keys, no
    /// whitespace) used for cache keys.
    pub fn parse(text: &str, field: Option<Field>) -> Result<(Input, String), Error> {
        let value: Value = serde_json::from_str(text).map_err(syntax)?;
        let canonical = value.to_string();
        let input = if value.get("basis").is_some() {
            let file: FdAlgebraFile = serde_json::from_value(value).map_err(syntax)?;
            Input::Algebra(FdAlgebra::from_file(&file, field)?)
        } else {
            let file: PresentationFile = serde_json::from_value(value).map_err(syntax)?;
            Input::Presentation(Presentation::from_file(&file, field)?)
        };
        Ok((input, canonical))
    }

    pub fn field(&self) -> Field {
        match self {
            Input::Presentation(p) => p.field,
            Input::Algebra(e) => e.field,
        }
    }

    pub fn presentation(&self) -> Result<&Presentation, Error> {
        match self {
            Input::Presentation(p) => Ok(p),
            Input::Algebra(_) => Err(Error::Precondition(
                "this command needs a graded presentation (`generators`), not structure constants"
                    .into(),
            )),
        }
    }

    /// The finite-dimensional algebra of the input. A presentation must have zero
    /// differential and vanish in high degrees inside its truncation.
    pub fn algebra(&self) -> Result<FdAlgebra, Error> {
        match self {
            Input::Algebra(e) => Ok(e.clone()),
            Input::Presentation(p) => {
                if !p.has_zero_differential() {
                    return Err(Error::Precondition(
                        "a finite-dimensional algebra input must have zero differential".into(),
                    ));
                }
                FdAlgebra::from_graded(&GradedQuotient::new(p.clone()))
            }
        }
    }
}
