//! Problem files: UTF-8 `key: value` lines with `;`-separated polynomial
//! lists. Every referenced name must be declared by the `vars` line, and all
//! polynomials round-trip through the core parser.
//!
//! ```text
//! # Roberts data
//! field: Q
//! vars: x, y, z
//! generators: x^3; y^3; z^3
//! h: x^2*y^2*z^2
//! params: x; y; z
//! k_max: 3
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use paraclose_core::forcing::RingPresentation;
use paraclose_core::groebner::Ideal;
use paraclose_core::poly::{MonomialOrder, PolyRing, Polynomial};
use paraclose_core::{Error, Field, Result};

/// Raw problem data: strings plus the line each came from, so polynomial
/// errors can be reported with file positions.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ProblemFile {
    pub field: Option<String>,
    pub vars: Vec<String>,
    pub relations: Vec<Sourced>,
    pub generators: Vec<Sourced>,
    pub h: Option<Sourced>,
    pub params: Vec<Sourced>,
    pub u: Option<Sourced>,
    pub lhs: Option<Sourced>,
    pub rhs: Option<Sourced>,
    pub k_max: Option<u32>,
    pub e_max: Option<u32>,
    pub degree_bound: Option<u32>,
    pub search_degree: Option<u32>,
    pub n: Option<usize>,
    pub w: Option<u32>,
}

/// A text fragment with its source line (line 0 for synthesized presets).
#[derive(Debug, Clone, Serialize)]
pub struct Sourced {
    pub text: String,
    #[serde(skip)]
    pub line: usize,
}

impl Sourced {
    pub fn synthetic(text: impl Into<String>) -> Sourced {
        Sourced {
            text: text.into(),
            line: 0,
        }
    }
}

fn split_list(value: &str, line: usize) -> Vec<Sourced> {
    value
        .split(';')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| Sourced {
            text: s.to_string(),
            line,
        })
        .collect()
}

fn parse_int<T: std::str::FromStr>(value: &str, line: usize, key: &str) -> Result<T> {
    value.trim().parse().map_err(|_| Error::Parse {
        line,
        column: 1,
        message: format!("`{key}` expects an integer, got `{}`", value.trim()),
    })
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<ProblemFile> {
        let mut out = ProblemFile::default();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once(':') else {
                return Err(Error::Parse {
                    line: line_no,
                    column: 1,
                    message: "expected `key: value`".into(),
                });
            };
            let key = key.trim();
            let value = value.trim();
            match key {
                "field" => out.field = Some(value.to_string()),
                "vars" => {
                    out.vars = value
                        .split(',')
                        .map(|s| s.trim().to_string())
                        .filter(|s| !s.is_empty())
                        .collect()
                }
                "relations" => out.relations = split_list(value, line_no),
                "generators" => out.generators = split_list(value, line_no),
                "h" => {
                    out.h = Some(Sourced {
                        text: value.to_string(),
                        line: line_no,
                    })
                }
                "params" => out.params = split_list(value, line_no),
                "u" => {
                    out.u = Some(Sourced {
                        text: value.to_string(),
                        line: line_no,
                    })
                }
                "lhs" => {
                    out.lhs = Some(Sourced {
                        text: value.to_string(),
                        line: line_no,
                    })
                }
                "rhs" => {
                    out.rhs = Some(Sourced {
                        text: value.to_string(),
                        line: line_no,
                    })
                }
                "k_max" => out.k_max = Some(parse_int(value, line_no, key)?),
                "e_max" => out.e_max = Some(parse_int(value, line_no, key)?),
                "degree_bound" => out.degree_bound = Some(parse_int(value, line_no, key)?),
                "search_degree" => out.search_degree = Some(parse_int(value, line_no, key)?),
                "n" => out.n = Some(parse_int(value, line_no, key)?),
                "w" => out.w = Some(parse_int(value, line_no, key)?),
                other => {
                    return Err(Error::Parse {
                        line: line_no,
                        column: 1,
                        message: format!("unknown key `{other}`"),
                    })
                }
            }
        }
        Ok(out)
    }

    /// Echo of the inputs for reports, with stable key order.
    pub fn echo(&self) -> serde_json::Value {
        let mut map = BTreeMap::new();
        if let Some(f) = &self.field {
            map.insert("field", serde_json::json!(f));
        }
        map.insert("vars", serde_json::json!(self.vars));
        let list =
            |v: &[Sourced]| serde_json::json!(v.iter().map(|s| s.text.clone()).collect::<Vec<_>>());
        if !self.relations.is_empty() {
            map.insert("relations", list(&self.relations));
        }
        if !self.generators.is_empty() {
            map.insert("generators", list(&self.generators));
        }
        if let Some(h) = &self.h {
            map.insert("h", serde_json::json!(h.text));
        }
        if !self.params.is_empty() {
            map.insert("params", list(&self.params));
        }
        if let Some(u) = &self.u {
            map.insert("u", serde_json::json!(u.text));
        }
        if let Some(l) = &self.lhs {
            map.insert("lhs", serde_json::json!(l.text));
        }
        if let Some(r) = &self.rhs {
            map.insert("rhs", serde_json::json!(r.text));
        }
        for (k, v) in [
            ("k_max", self.k_max),
            ("e_max", self.e_max),
            ("degree_bound", self.degree_bound),
            ("search_degree", self.search_degree),
            ("w", self.w),
        ] {
            if let Some(v) = v {
                map.insert(k, serde_json::json!(v));
            }
        }
        if let Some(n) = self.n {
            map.insert("n", serde_json::json!(n));
        }
        serde_json::to_value(map).expect("plain map")
    }

    /// Build the algebra objects. Field and bound overrides come from the
    /// command line.
    pub fn resolve(&self, field_override: Option<&str>) -> Result<Problem> {
        let tag = field_override
            .map(|s| s.to_string())
            .or_else(|| self.field.clone())
            .unwrap_or_else(|| "Q".to_string());
        let field = Field::from_tag(&tag)?;
        if self.vars.is_empty() {
            return Err(Error::InvalidInput("no variables declared".into()));
        }
        let ring = PolyRing::new(self.vars.clone(), field, MonomialOrder::GrevLex)?;
        let parse = |s: &Sourced| -> Result<Polynomial> {
            Polynomial::parse(&ring, &s.text).map_err(|e| relocate(e, s.line))
        };
        let relations = Ideal::new(
            &ring,
            self.relations
                .iter()
                .map(parse)
                .collect::<Result<Vec<_>>>()?,
        )?;
        let base = RingPresentation::new(&ring, relations)?;
        let generators = self
            .generators
            .iter()
            .map(parse)
            .collect::<Result<Vec<_>>>()?;
        let h = self.h.as_ref().map(parse).transpose()?;
        let params = if self.params.is_empty() {
            (0..ring.nvars())
                .map(|i| Polynomial::variable(&ring, i))
                .collect()
        } else {
            self.params.iter().map(parse).collect::<Result<Vec<_>>>()?
        };
        let u = self.u.as_ref().map(parse).transpose()?;
        Ok(Problem {
            file: self.clone(),
            field,
            ring,
            base,
            generators,
            h,
            params,
            u,
        })
    }
}

/// Attach the problem-file line to a polynomial parse error.
fn relocate(e: Error, line: usize) -> Error {
    match e {
        Error::Parse {
            column, message, ..
        } if line > 0 => Error::Parse {
            line,
            column,
            message,
        },
        other => other,
    }
}

/// Resolved problem: ring, presented base, data polynomials.
#[derive(Debug, Clone)]
pub struct Problem {
    pub file: ProblemFile,
    pub field: Field,
    pub ring: Arc<PolyRing>,
    pub base: RingPresentation,
    pub generators: Vec<Polynomial>,
    pub h: Option<Polynomial>,
    pub params: Vec<Polynomial>,
    pub u: Option<Polynomial>,
}

impl Problem {
    pub fn require_h(&self) -> Result<&Polynomial> {
        self.h
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("problem file needs an `h:` line".into()))
    }

    pub fn require_generators(&self) -> Result<&[Polynomial]> {
        if self.generators.is_empty() {
            return Err(Error::InvalidInput(
                "problem file needs a `generators:` line".into(),
            ));
        }
        Ok(&self.generators)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_full_file() {
        let text = "\
# Roberts data
field: Q
vars: x, y, z
generators: x^3; y^3; z^3
h: x^2*y^2*z^2
params: x; y; z
k_max: 3
";
        let file = ProblemFile::parse(text).unwrap();
        assert_eq!(file.vars, vec!["x", "y", "z"]);
        assert_eq!(file.generators.len(), 3);
        assert_eq!(file.k_max, Some(3));
        let problem = file.resolve(None).unwrap();
        assert_eq!(problem.generators.len(), 3);
        assert_eq!(problem.params.len(), 3);
    }

    #[test]
    fn unknown_key_is_an_error_with_position() {
        let err = ProblemFile::parse("vars: x\nfoo: 1\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn polynomial_errors_carry_the_file_line() {
        let text = "field: Q\nvars: x\ngenerators: x^3\nh: x + q\n";
        let file = ProblemFile::parse(text).unwrap();
        match file.resolve(None).unwrap_err() {
            Error::Parse { line, message, .. } => {
                assert_eq!(line, 4);
                assert!(message.contains('q'));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn params_default_to_the_variables() {
        let file = ProblemFile::parse("field: Q\nvars: x, y\ngenerators: x\nh: y\n").unwrap();
        let problem = file.resolve(None).unwrap();
        assert_eq!(problem.params.len(), 2);
        assert_eq!(problem.params[0].to_string(), "x");
    }

    #[test]
    fn field_override_wins() {
        let file = ProblemFile::parse("field: Q\nvars: x\ngenerators: x\nh: x\n").unwrap();
        let problem = file.resolve(Some("Fp:5")).unwrap();
        assert_eq!(problem.field.tag(), "Fp:5");
    }
}
