//! The on-disk fixture format: a `ring:` header naming the variables, a
//! `quartic:` line (or `gen:` lines for ideal fixtures), and an optional
//! `plane:` line with two linear forms separated by `;`.

use crate::field::FieldDescriptor;
use crate::fibration::{FibError, PlaneInP4};
use crate::parse::{parse, ParseError};
use crate::poly::{Polynomial, Ring};
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum FixtureError {
    #[error("fixture line {0}: unknown directive {1:?}")]
    UnknownDirective(usize, String),
    #[error("fixture has no ring: header")]
    MissingRing,
    #[error("fixture defines no quartic or generators")]
    Empty,
    #[error("plane: line needs two linear forms separated by ';'")]
    BadPlane,
    #[error("duplicate {0}: line")]
    Duplicate(&'static str),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Fibration(#[from] FibError),
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub ring: Arc<Ring>,
    pub quartic: Option<Polynomial>,
    pub plane: Option<PlaneInP4>,
    pub generators: Vec<Polynomial>,
}

impl Fixture {
    pub fn parse_str(text: &str) -> Result<Fixture, FixtureError> {
        let mut ring: Option<Arc<Ring>> = None;
        let mut quartic = None;
        let mut plane_line: Option<(usize, String)> = None;
        let mut generators = vec![];
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, rest)) = line.split_once(':') else {
                return Err(FixtureError::UnknownDirective(lineno + 1, line.to_string()));
            };
            let rest = rest.trim();
            match key.trim() {
                "ring" => {
                    if ring.is_some() {
                        return Err(FixtureError::Duplicate("ring"));
                    }
                    let vars: Vec<String> =
                        rest.split_whitespace().map(|s| s.to_string()).collect();
                    ring = Some(Ring::from_names(FieldDescriptor::Rational, vars));
                }
                "quartic" => {
                    if quartic.is_some() {
                        return Err(FixtureError::Duplicate("quartic"));
                    }
                    let r = ring.as_ref().ok_or(FixtureError::MissingRing)?;
                    quartic = Some(parse(rest, r)?);
                }
                "plane" => {
                    if plane_line.is_some() {
                        return Err(FixtureError::Duplicate("plane"));
                    }
                    plane_line = Some((lineno + 1, rest.to_string()));
                }
                "gen" => {
                    let r = ring.as_ref().ok_or(FixtureError::MissingRing)?;
                    generators.push(parse(rest, r)?);
                }
                other => {
                    return Err(FixtureError::UnknownDirective(lineno + 1, other.to_string()))
                }
            }
        }
        let ring = ring.ok_or(FixtureError::MissingRing)?;
        if quartic.is_none() && generators.is_empty() {
            return Err(FixtureError::Empty);
        }
        let plane = match plane_line {
            None => None,
            Some((_, text)) => {
                let mut parts = text.split(';');
                let (Some(l1), Some(l2), None) = (parts.next(), parts.next(), parts.next())
                else {
                    return Err(FixtureError::BadPlane);
                };
                Some(PlaneInP4::new(parse(l1.trim(), &ring)?, parse(l2.trim(), &ring)?)?)
            }
        };
        Ok(Fixture { ring, quartic, plane, generators })
    }

    pub fn load(path: &std::path::Path) -> Result<Fixture, FixtureError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            FixtureError::UnknownDirective(0, format!("cannot read {}: {e}", path.display()))
        })?;
        Fixture::parse_str(&text)
    }

    /// The plane to analyze against: the declared one, or {x0, x1}.
    pub fn plane_or_default(&self) -> PlaneInP4 {
        self.plane.clone().unwrap_or_else(|| PlaneInP4::standard(&self.ring))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_fixture() {
        let text = "\
# the Burkhardt quartic
ring: x0 x1 x2 x3 x4
quartic: x0^4 - x0*(x1^3+x2^3+x3^3+x4^3) + 3*x1*x2*x3*x4
plane: x0; x1
";
        let f = Fixture::parse_str(text).unwrap();
        assert_eq!(f.ring.vars.len(), 5);
        assert!(f.quartic.is_some());
        assert!(f.plane.is_some());
        assert!(f.generators.is_empty());
    }

    #[test]
    fn parses_generator_fixture() {
        let text = "ring: x0 x1 x2\ngen: x0^2 - x1\ngen: x0^3 - x2\n";
        let f = Fixture::parse_str(text).unwrap();
        assert_eq!(f.generators.len(), 2);
        assert!(f.quartic.is_none());
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(
            Fixture::parse_str("quartic: x0^4\n"),
            Err(FixtureError::MissingRing)
        ));
        assert!(matches!(
            Fixture::parse_str("ring: x0 x1\n"),
            Err(FixtureError::Empty)
        ));
        assert!(Fixture::parse_str("ring: x0 x1\nquartic: x0^4\nplane: x0\n").is_err());
        assert!(Fixture::parse_str("ring: x0 x1\nfoo: bar\nquartic: x0^4\n").is_err());
    }

    #[test]
    fn default_plane_is_standard() {
        let f = Fixture::parse_str("ring: x0 x1 x2 x3 x4\nquartic: x0*x2^3\n").unwrap();
        let p = f.plane_or_default();
        assert_eq!(p.l1.render(), "x0");
        assert_eq!(p.l2.render(), "x1");
    }
}
