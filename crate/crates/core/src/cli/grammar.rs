//! Shell-friendly `family:param[:param...]` grammars for graphs and states.

use std::path::PathBuf;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphFamily};
use crate::walk::{basis_arc_state, uniform_state, ArcState};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StateSpec {
    /// `|uv⟩`
    Edge(usize, usize),
    /// `(|uv⟩ − |vu⟩)/√2`
    SelfFlip(usize, usize),
    /// Equal superposition over every arc.
    Uniform,
    Csv(PathBuf),
}

fn number<T: std::str::FromStr>(field: &str, what: &str, spec: &str) -> Result<T> {
    field
        .parse()
        .map_err(|_| Error::arg(format!("invalid {what} {field:?} in {spec:?}")))
}

/// `complete:N`, `bipartite:n`, `hypercube:d`, `torus:dim:side`, `cycle:N`,
/// `random:n:d[:seed]` or `file:PATH`. A random graph without an explicit
/// seed takes `default_seed`.
pub fn parse_graph_spec(spec: &str, default_seed: u64) -> Result<GraphFamily> {
    if let Some(path) = spec.strip_prefix("file:") {
        if path.is_empty() {
            return Err(Error::arg("file: needs a path"));
        }
        return Ok(GraphFamily::EdgeList { path: path.into() });
    }
    let fields: Vec<&str> = spec.split(':').collect();
    let arity = |expected: &[usize]| -> Result<()> {
        if expected.contains(&(fields.len() - 1)) {
            Ok(())
        } else {
            Err(Error::arg(format!(
                "wrong number of parameters in graph spec {spec:?}"
            )))
        }
    };
    let family = match fields[0] {
        "complete" => {
            arity(&[1])?;
            GraphFamily::Complete {
                n: number(fields[1], "size", spec)?,
            }
        }
        "bipartite" => {
            arity(&[1])?;
            GraphFamily::CompleteBipartite {
                n: number(fields[1], "size", spec)?,
            }
        }
        "hypercube" => {
            arity(&[1])?;
            GraphFamily::Hypercube {
                dim: number(fields[1], "dimension", spec)?,
            }
        }
        "torus" => {
            arity(&[2])?;
            GraphFamily::Torus {
                dim: number(fields[1], "dimension", spec)?,
                side: number(fields[2], "side", spec)?,
            }
        }
        "cycle" => {
            arity(&[1])?;
            GraphFamily::Cycle {
                n: number(fields[1], "size", spec)?,
            }
        }
        "random" => {
            arity(&[2, 3])?;
            GraphFamily::RandomRegular {
                n: number(fields[1], "size", spec)?,
                degree: number(fields[2], "degree", spec)?,
                seed: match fields.get(3) {
                    Some(s) => number(s, "seed", spec)?,
                    None => default_seed,
                },
            }
        }
        other => return Err(Error::arg(format!("unknown graph family {other:?}"))),
    };
    Ok(family)
}

/// `edge:u:v`, `selfflip:u:v`, `uniform` or `csv:PATH`.
pub fn parse_state_spec(spec: &str) -> Result<StateSpec> {
    if let Some(path) = spec.strip_prefix("csv:") {
        return Ok(StateSpec::Csv(path.into()));
    }
    if spec == "uniform" {
        return Ok(StateSpec::Uniform);
    }
    let fields: Vec<&str> = spec.split(':').collect();
    if fields.len() != 3 {
        return Err(Error::arg(format!("invalid state spec {spec:?}")));
    }
    let u = number(fields[1], "vertex", spec)?;
    let v = number(fields[2], "vertex", spec)?;
    match fields[0] {
        "edge" => Ok(StateSpec::Edge(u, v)),
        "selfflip" => Ok(StateSpec::SelfFlip(u, v)),
        other => Err(Error::arg(format!("unknown state kind {other:?}"))),
    }
}

/// `a:b`
pub fn parse_pair(spec: &str) -> Result<(usize, usize)> {
    let (a, b) = spec
        .split_once(':')
        .ok_or_else(|| Error::arg(format!("expected a:b, got {spec:?}")))?;
    Ok((number(a, "vertex", spec)?, number(b, "vertex", spec)?))
}

impl StateSpec {
    /// The state on `g`. CSV states are returned as read, without renormalizing.
    pub fn build(&self, g: &Graph) -> Result<ArcState> {
        match *self {
            StateSpec::Edge(u, v) => basis_arc_state(g, u, v),
            StateSpec::SelfFlip(u, v) => {
                let fwd = basis_arc_state(g, u, v)?;
                let back = basis_arc_state(g, v, u)?;
                Ok(&(&fwd - &back) * Complex64::new(0.5f64.sqrt(), 0.0))
            }
            StateSpec::Uniform => uniform_state(g, &(0..g.n()).collect::<Vec<_>>()),
            StateSpec::Csv(ref path) => ArcState::from_csv(g, &std::fs::read_to_string(path)?),
        }
    }

    pub fn is_self_flip(&self) -> bool {
        matches!(self, StateSpec::SelfFlip(..))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_specs() {
        assert_eq!(
            parse_graph_spec("complete:5", 0).unwrap(),
            GraphFamily::Complete { n: 5 }
        );
        assert_eq!(
            parse_graph_spec("torus:2:5", 0).unwrap(),
            GraphFamily::Torus { dim: 2, side: 5 }
        );
        assert_eq!(
            parse_graph_spec("random:10:4", 7).unwrap(),
            GraphFamily::RandomRegular {
                n: 10,
                degree: 4,
                seed: 7
            }
        );
        assert_eq!(
            parse_graph_spec("random:10:4:3", 7).unwrap(),
            GraphFamily::RandomRegular {
                n: 10,
                degree: 4,
                seed: 3
            }
        );
        for bad in [
            "complete",
            "complete:x",
            "torus:2",
            "star:5",
            "file:",
            "cycle:4:4",
        ] {
            assert!(parse_graph_spec(bad, 0).is_err(), "{bad}");
        }
    }

    #[test]
    fn state_specs() {
        assert_eq!(parse_state_spec("edge:0:1").unwrap(), StateSpec::Edge(0, 1));
        assert_eq!(
            parse_state_spec("selfflip:2:3").unwrap(),
            StateSpec::SelfFlip(2, 3)
        );
        assert_eq!(parse_state_spec("uniform").unwrap(), StateSpec::Uniform);
        assert!(parse_state_spec("edge:0").is_err());
        assert!(parse_state_spec("vertex:0:1").is_err());
        assert_eq!(parse_pair("3:4").unwrap(), (3, 4));
        assert!(parse_pair("3").is_err());
    }

    #[test]
    fn selfflip_state_is_normalized_and_self_flip() {
        let g = Graph::complete(4).unwrap();
        let s = StateSpec::SelfFlip(0, 1).build(&g).unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-15);
        assert!(crate::walk::flip_transform(&g, &s).distance(&s) < 1e-15);
        assert!(StateSpec::Edge(0, 0).build(&g).is_err());
    }
}
