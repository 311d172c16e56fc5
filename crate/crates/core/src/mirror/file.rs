//! TOML model files:
//!
//! ```toml
//! variables = ["t", "u", "z"]
//! affine = ["t", "u", "z"]
//! relations = ["z*(t+1)*(u+1) = t*(t-e)*u*(u-e)"]
//! potential = "z"
//!
//! [parameters]
//! e = 0.1            # or a string such as "0.1+0.2i"
//!
//! [[eliminate]]
//! var = "z"
//! relation = 0
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{split_relation, LGModel, MirrorError, Pick, Relation};
use crate::laurent::{LaurentPoly, ParseError};
use crate::C64;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    variables: Vec<String>,
    #[serde(default)]
    affine: Vec<String>,
    #[serde(default)]
    relations: Vec<String>,
    potential: String,
    #[serde(default)]
    parameters: BTreeMap<String, ParamValue>,
    #[serde(default)]
    eliminate: Vec<PickEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ParamValue {
    Number(f64),
    Text(String),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PickEntry {
    var: String,
    relation: usize,
}

/// Line and column (both 1-based) of byte offset `offset` in `text`.
fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

fn expression_error(text: &str, expr: &str, offset_in_expr: usize, err: &ParseError) -> MirrorError {
    // Best effort: point at the first occurrence of the expression.
    let base = text.find(expr).unwrap_or(0);
    let char_offset: usize = expr.chars().take(err.column.saturating_sub(1)).map(char::len_utf8).sum();
    let (line, column) = position(text, base + offset_in_expr + char_offset);
    MirrorError::Parse { line, column, message: err.message.clone() }
}

pub fn parse_model_file(text: &str) -> Result<LGModel, MirrorError> {
    let file: ModelFile = toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((1, 1), |s| position(text, s.start));
        MirrorError::Parse { line, column, message: e.message().to_string() }
    })?;
    let empty = BTreeMap::new();
    let mut parameters = BTreeMap::new();
    for (name, v) in &file.parameters {
        let value = match v {
            ParamValue::Number(x) => C64::new(*x, 0.0),
            ParamValue::Text(s) => LaurentPoly::parse(s, &[], &empty)
                .map_err(|e| expression_error(text, s, 0, &e))?
                .as_constant()
                .ok_or_else(|| MirrorError::InvalidParameter { name: name.clone(), reason: "not a constant".into() })?,
        };
        parameters.insert(name.clone(), value);
    }
    let vars = &file.variables;
    let parse = |s: &str, offset: usize, whole: &str| {
        LaurentPoly::parse(s, vars, &parameters).map_err(|e| expression_error(text, whole, offset, &e))
    };
    let mut relations = Vec::new();
    for r in &file.relations {
        let (lhs, rhs) = split_relation(r).ok_or_else(|| {
            let (line, column) = position(text, text.find(r.as_str()).unwrap_or(0));
            MirrorError::Parse { line, column, message: format!("relation `{r}` needs exactly one `=`") }
        })?;
        relations.push(Relation::new(parse(lhs, 0, r)?, parse(rhs, lhs.len() + 1, r)?));
    }
    let model = LGModel {
        potential: parse(&file.potential, 0, &file.potential)?,
        variables: file.variables.clone(),
        affine: file.affine,
        parameters: parameters.clone(),
        relations,
        eliminate: file.eliminate.into_iter().map(|p| Pick { var: p.var, relation: p.relation }).collect(),
    };
    model.validate()?;
    Ok(model)
}

/// Writes with parameters already substituted into the expressions, so the
/// file re-parses to the same structure.
pub fn write_model_file(model: &LGModel) -> String {
    let parameters = model
        .parameters
        .iter()
        .map(|(k, v)| {
            let value = if v.im == 0.0 {
                ParamValue::Number(v.re)
            } else {
                ParamValue::Text(crate::laurent::format_coeff(*v).trim_matches(|c| c == '(' || c == ')').to_string())
            };
            (k.clone(), value)
        })
        .collect();
    let file = ModelFile {
        variables: model.variables.clone(),
        affine: model.affine.clone(),
        relations: model.relations.iter().map(|r| format!("{} = {}", r.lhs, r.rhs)).collect(),
        potential: model.potential.to_string(),
        parameters,
        eliminate: model
            .eliminate
            .iter()
            .map(|p| PickEntry { var: p.var.clone(), relation: p.relation })
            .collect(),
    };
    toml::to_string(&file).expect("model file serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mirror::{builtin_model, PRESETS};

    #[test]
    fn presets_round_trip() {
        let p: BTreeMap<String, C64> = [("A", 1.0), ("e", 0.1), ("a1", 0.013), ("a2", 0.02), ("a", 0.3), ("k", 4.0)]
            .iter()
            .map(|(k, v)| (k.to_string(), C64::new(*v, 0.0)))
            .collect();
        for name in PRESETS {
            let m = builtin_model(name, &p).unwrap();
            let text = write_model_file(&m);
            let back = parse_model_file(&text).unwrap_or_else(|e| panic!("{name}: {e}\n{text}"));
            assert_eq!(back, m, "{name}");
        }
    }

    #[test]
    fn complex_parameter() {
        let text = r#"
variables = ["x", "y"]
relations = ["x*y = c"]
potential = "x + y"

[parameters]
c = "0.5-2i"

[[eliminate]]
var = "y"
relation = 0
"#;
        let m = parse_model_file(text).unwrap();
        assert_eq!(m.parameters["c"], C64::new(0.5, -2.0));
        let again = parse_model_file(&write_model_file(&m)).unwrap();
        assert_eq!(again, m);
        let e = m.eliminate().unwrap();
        assert_eq!(e.free, vec!["x"]);
    }

    #[test]
    fn expression_error_position() {
        let text = "variables = [\"x\"]\npotential = \"x + y\"\n";
        match parse_model_file(text).unwrap_err() {
            MirrorError::Parse { line, column, .. } => {
                assert_eq!(line, 2);
                assert_eq!(column, 18);
            }
            e => panic!("{e}"),
        }
    }

    #[test]
    fn toml_error_position() {
        let text = "variables = [\"x\"\npotential = \"x\"\n";
        assert!(matches!(parse_model_file(text), Err(MirrorError::Parse { line: 2, .. })));
    }
}
