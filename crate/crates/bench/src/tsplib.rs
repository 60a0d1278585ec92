//! TSPLIB `.tsp` ingestion (EUC_2D node-coordinate files).

use std::fs;
use std::path::Path;

use mtsp_core::{Instance, InstanceError, Point};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TsplibError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("missing {0} entry")]
    MissingField(&'static str),
    #[error("line {line}: unsupported EDGE_WEIGHT_TYPE `{found}` (only EUC_2D)")]
    UnsupportedEdgeWeightType { line: usize, found: String },
    #[error("expected {expected} coordinate lines, found {found}")]
    MissingCoords { expected: usize, found: usize },
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// Parses TSPLIB text with a `NODE_COORD_SECTION`. Coordinates keep the
/// file order; the depot is the first listed node. `EDGE_WEIGHT_TYPE`
/// must be `EUC_2D` (it defaults to that when absent, since coordinate
/// files without the entry exist in the wild).
pub fn parse_tsplib(text: &str) -> Result<Instance, TsplibError> {
    let mut name = String::new();
    let mut dimension: Option<usize> = None;
    let mut coords: Vec<Point> = Vec::new();
    let mut in_coords = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if in_coords {
            if line == "EOF" {
                break;
            }
            let mut parts = line.split_whitespace();
            let _label = parts.next();
            let coord = |part: Option<&str>| -> Result<f64, TsplibError> {
                part.ok_or_else(|| TsplibError::Malformed {
                    line: line_no,
                    msg: format!("coordinate line needs `<id> <x> <y>`, got `{line}`"),
                })?
                .parse()
                .map_err(|_| TsplibError::Malformed {
                    line: line_no,
                    msg: format!("cannot parse coordinate in `{line}`"),
                })
            };
            let x = coord(parts.next())?;
            let y = coord(parts.next())?;
            coords.push(Point::new(x, y));
            if Some(coords.len()) == dimension {
                break;
            }
            continue;
        }
        if line == "NODE_COORD_SECTION" {
            if dimension.is_none() {
                return Err(TsplibError::MissingField("DIMENSION"));
            }
            in_coords = true;
            continue;
        }
        let (key, value) = match line.split_once(':') {
            Some((k, v)) => (k.trim(), v.trim()),
            None => (line, ""),
        };
        match key {
            "NAME" => name = value.to_string(),
            "DIMENSION" => {
                dimension = Some(value.parse().map_err(|_| TsplibError::Malformed {
                    line: line_no,
                    msg: format!("DIMENSION is not a positive integer: `{value}`"),
                })?)
            }
            "EDGE_WEIGHT_TYPE" => {
                if value != "EUC_2D" {
                    return Err(TsplibError::UnsupportedEdgeWeightType {
                        line: line_no,
                        found: value.to_string(),
                    });
                }
            }
            // TYPE, COMMENT and anything else informational
            _ => {}
        }
    }

    let expected = dimension.ok_or(TsplibError::MissingField("DIMENSION"))?;
    if !in_coords {
        return Err(TsplibError::MissingField("NODE_COORD_SECTION"));
    }
    if coords.len() != expected {
        return Err(TsplibError::MissingCoords {
            expected,
            found: coords.len(),
        });
    }
    Ok(Instance::from_coords(name, coords, 0)?)
}

/// Reads and parses an instance file.
pub fn load_instance(path: &Path) -> Result<Instance, TsplibError> {
    let text = fs::read_to_string(path).map_err(|source| TsplibError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_tsplib(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::path::PathBuf;

    pub(crate) fn data_file(name: &str) -> PathBuf {
        PathBuf::from(env!("CARGO_MANIFEST_DIR"))
            .join("../../data")
            .join(name)
    }

    #[test]
    fn minimal_two_city_file() {
        let text = "NAME: tiny\nTYPE: TSP\nDIMENSION: 2\nEDGE_WEIGHT_TYPE: EUC_2D\n\
                    NODE_COORD_SECTION\n1 0 0\n2 3 4\nEOF\n";
        let inst = parse_tsplib(text).unwrap();
        assert_eq!(inst.n(), 2);
        assert_eq!(inst.name(), "tiny");
        assert_eq!(inst.depot(), 0);
        assert_eq!(inst.distance(0, 1), 5.0);
    }

    #[test]
    fn loads_eil51() {
        let inst = load_instance(&data_file("eil51.tsp")).unwrap();
        assert_eq!(inst.n(), 51);
        assert_eq!(inst.name(), "eil51");
        // first two coordinate lines are (37,52) and (49,49)
        let expected = ((37.0f64 - 49.0).powi(2) + (52.0f64 - 49.0).powi(2)).sqrt();
        assert_eq!(inst.distance(0, 1), expected);
    }

    #[test]
    fn loads_rat99() {
        let inst = load_instance(&data_file("rat99.tsp")).unwrap();
        assert_eq!(inst.n(), 99);
    }

    #[test]
    fn loads_berlin52_and_eil76() {
        assert_eq!(load_instance(&data_file("berlin52.tsp")).unwrap().n(), 52);
        assert_eq!(load_instance(&data_file("eil76.tsp")).unwrap().n(), 76);
    }

    #[test]
    fn rejects_missing_dimension() {
        let text = "NAME: broken\nNODE_COORD_SECTION\n1 0 0\nEOF\n";
        assert!(matches!(
            parse_tsplib(text),
            Err(TsplibError::MissingField("DIMENSION"))
        ));
    }

    #[test]
    fn rejects_unsupported_edge_weight_type() {
        let text = "DIMENSION: 3\nEDGE_WEIGHT_TYPE: GEO\nNODE_COORD_SECTION\n";
        match parse_tsplib(text) {
            Err(TsplibError::UnsupportedEdgeWeightType { line, found }) => {
                assert_eq!(line, 2);
                assert_eq!(found, "GEO");
            }
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn rejects_short_coordinate_section() {
        let text = "DIMENSION: 3\nEDGE_WEIGHT_TYPE: EUC_2D\nNODE_COORD_SECTION\n1 0 0\n2 1 1\nEOF\n";
        assert!(matches!(
            parse_tsplib(text),
            Err(TsplibError::MissingCoords {
                expected: 3,
                found: 2
            })
        ));
    }

    #[test]
    fn rejects_malformed_coordinate_line() {
        let text = "DIMENSION: 2\nEDGE_WEIGHT_TYPE: EUC_2D\nNODE_COORD_SECTION\n1 0 0\n2 one 1\n";
        match parse_tsplib(text) {
            Err(TsplibError::Malformed { line, msg }) => {
                assert_eq!(line, 5);
                assert!(msg.contains("2 one 1"));
            }
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn reparse_roundtrips_coordinates_exactly() {
        let inst = load_instance(&data_file("berlin52.tsp")).unwrap();
        let mut text = format!(
            "NAME: {}\nTYPE: TSP\nDIMENSION: {}\nEDGE_WEIGHT_TYPE: EUC_2D\nNODE_COORD_SECTION\n",
            inst.name(),
            inst.n()
        );
        for (i, p) in inst.coords().iter().enumerate() {
            text.push_str(&format!("{} {} {}\n", i + 1, p.x, p.y));
        }
        text.push_str("EOF\n");
        let reparsed = parse_tsplib(&text).unwrap();
        assert_eq!(inst.coords(), reparsed.coords());
    }
}
