//! TRS serialization: a JSON schema that round-trips, and the legacy
//! TPDB text format for hand-off to external termination tools.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::trs::{Rule, Signature, Term, Trs, TrsError};

/// Output formats for [`serialize_trs`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrsFormat {
    Json,
    Tpdb,
}

#[derive(Serialize, Deserialize)]
struct TrsJson {
    signature: Vec<FunSymJson>,
    rules: Vec<RuleJson>,
}

#[derive(Serialize, Deserialize)]
struct FunSymJson {
    name: String,
    arity: usize,
}

#[derive(Serialize, Deserialize)]
struct RuleJson {
    lhs: TermJson,
    rhs: TermJson,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum TermJson {
    App {
        f: String,
        #[serde(default)]
        args: Vec<TermJson>,
    },
    Var {
        var: String,
    },
}

fn term_to_json(trs: &Trs, t: &Term) -> TermJson {
    match t {
        Term::Var(v) => TermJson::Var { var: trs.var_name(*v) },
        Term::App(f, args) => TermJson::App {
            f: trs.signature().name(*f).to_string(),
            args: args.iter().map(|arg| term_to_json(trs, arg)).collect(),
        },
    }
}

/// Serializes deterministically in the requested format.
///
/// The JSON form round-trips through [`trs_from_json_str`]; the TPDB form
/// is a `(VAR ...)` block followed by a `(RULES ...)` block.
pub fn serialize_trs(trs: &Trs, format: TrsFormat) -> String {
    match format {
        TrsFormat::Json => {
            let doc = TrsJson {
                signature: trs
                    .signature()
                    .iter()
                    .map(|(_, s)| FunSymJson { name: s.name.clone(), arity: s.arity })
                    .collect(),
                rules: trs
                    .rules()
                    .iter()
                    .map(|r| RuleJson {
                        lhs: term_to_json(trs, r.lhs()),
                        rhs: term_to_json(trs, r.rhs()),
                    })
                    .collect(),
            };
            let mut out = serde_json::to_string_pretty(&doc).expect("serializable structs");
            out.push('\n');
            out
        }
        TrsFormat::Tpdb => {
            let mut out = String::from("(VAR");
            for name in trs.var_names() {
                out.push(' ');
                out.push_str(name);
            }
            out.push_str(")\n(RULES\n");
            for rule in trs.rules() {
                out.push_str("  ");
                out.push_str(&trs.display_rule(rule));
                out.push('\n');
            }
            out.push_str(")\n");
            out
        }
    }
}

/// Errors from reading a TRS back out of its JSON form.
#[derive(Debug)]
pub enum TrsJsonError {
    Syntax(serde_json::Error),
    UnknownSymbol(String),
    Structure(TrsError),
}

impl fmt::Display for TrsJsonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TrsJsonError::Syntax(e) => write!(f, "invalid TRS json: {}", e),
            TrsJsonError::UnknownSymbol(name) => {
                write!(f, "rule uses symbol `{}` missing from the signature", name)
            }
            TrsJsonError::Structure(e) => write!(f, "ill-formed TRS: {}", e),
        }
    }
}

impl std::error::Error for TrsJsonError {}

impl From<TrsError> for TrsJsonError {
    fn from(e: TrsError) -> TrsJsonError {
        TrsJsonError::Structure(e)
    }
}

fn term_from_json(
    sig: &Signature,
    var_names: &mut Vec<String>,
    t: &TermJson,
) -> Result<Term, TrsJsonError> {
    match t {
        TermJson::Var { var } => {
            let id = match var_names.iter().position(|n| n == var) {
                Some(id) => id,
                None => {
                    var_names.push(var.clone());
                    var_names.len() - 1
                }
            };
            Ok(Term::var(id))
        }
        TermJson::App { f, args } => {
            let id = sig.by_name(f).ok_or_else(|| TrsJsonError::UnknownSymbol(f.clone()))?;
            let args = args
                .iter()
                .map(|arg| term_from_json(sig, var_names, arg))
                .collect::<Result<Vec<Term>, TrsJsonError>>()?;
            Ok(Term::app(id, args))
        }
    }
}

/// Parses the JSON form produced by [`serialize_trs`].
///
/// Variable ids are assigned by first occurrence across the rules, read
/// left to right; for systems built by this crate that matches the
/// original numbering, so the round trip is the identity.
pub fn trs_from_json_str(text: &str) -> Result<Trs, TrsJsonError> {
    let doc: TrsJson = serde_json::from_str(text).map_err(TrsJsonError::Syntax)?;
    let mut sig = Signature::new();
    for s in &doc.signature {
        sig.add(&s.name, s.arity)?;
    }
    let mut var_names: Vec<String> = Vec::new();
    let mut rules = Vec::with_capacity(doc.rules.len());
    for r in &doc.rules {
        let lhs = term_from_json(&sig, &mut var_names, &r.lhs)?;
        let rhs = term_from_json(&sig, &mut var_names, &r.rhs)?;
        rules.push(Rule::new(lhs, rhs)?);
    }
    Ok(Trs::new(sig, rules, var_names)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::trs::{build_qr_trs, build_single_rule_trs};

    fn gadgets() -> (Trs, Trs) {
        let p = parse_poly("2*x1").unwrap();
        let q = parse_poly("x1^2 + 1").unwrap();
        (build_single_rule_trs(&p, &q).unwrap(), build_qr_trs(&p, &q).unwrap())
    }

    #[test]
    fn tpdb_layout() {
        let (single, qr) = gadgets();
        let text = serialize_trs(&single, TrsFormat::Tpdb);
        assert!(text.starts_with("(VAR y1 y2 y3)\n(RULES\n"), "got: {}", text);
        assert!(text.ends_with(")\n"));
        assert_eq!(text.matches(" -> ").count(), 1);

        let text = serialize_trs(&qr, TrsFormat::Tpdb);
        assert!(text.starts_with("(VAR x)\n"));
        assert_eq!(text.matches(" -> ").count(), 8);
        assert_eq!(text.lines().count(), 1 + 1 + 8 + 1);
    }

    #[test]
    fn json_round_trip_is_identity() {
        let (single, qr) = gadgets();
        for trs in [single, qr] {
            let text = serialize_trs(&trs, TrsFormat::Json);
            let back = trs_from_json_str(&text).unwrap();
            assert_eq!(back, trs);
        }
    }

    #[test]
    fn serialization_is_deterministic() {
        let (single, _) = gadgets();
        for format in [TrsFormat::Json, TrsFormat::Tpdb] {
            assert_eq!(serialize_trs(&single, format), serialize_trs(&single, format));
        }
    }

    #[test]
    fn json_terms_use_documented_shapes() {
        let (single, _) = gadgets();
        let text = serialize_trs(&single, TrsFormat::Json);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["signature"][0], serde_json::json!({"name": "z", "arity": 0}));
        let lhs = &value["rules"][0]["lhs"];
        assert_eq!(lhs["f"], "f");
        assert_eq!(lhs["args"][0], serde_json::json!({"var": "y1"}));
    }

    #[test]
    fn parse_rejects_unknown_symbols_and_bad_rules() {
        let missing = r#"{"signature":[{"name":"z","arity":0}],
            "rules":[{"lhs":{"f":"a","args":[]},"rhs":{"f":"z","args":[]}}]}"#;
        assert!(matches!(trs_from_json_str(missing), Err(TrsJsonError::UnknownSymbol(_))));

        let var_lhs = r#"{"signature":[{"name":"z","arity":0}],
            "rules":[{"lhs":{"var":"x"},"rhs":{"f":"z","args":[]}}]}"#;
        assert!(matches!(trs_from_json_str(var_lhs), Err(TrsJsonError::Structure(_))));

        let garbage = "not json";
        assert!(matches!(trs_from_json_str(garbage), Err(TrsJsonError::Syntax(_))));
    }
}
