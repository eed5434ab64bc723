//! Polygon files: `{"vertices": [[x, y], ...]}` or two-column CSV with an
//! optional `x,y` header.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::geom::{make_polygon, ConvexPolygon, Point2};

#[derive(Serialize, Deserialize)]
struct VertexList {
    vertices: Vec<[f64; 2]>,
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Points of a polygon file, in file order. JSON is recognised by a leading
/// `{`, anything else is read as CSV.
pub fn parse_points(text: &str) -> Result<Vec<Point2>> {
    let pts = if text.trim_start().starts_with('{') {
        parse_json(text)?
    } else {
        parse_csv(text)?
    };
    if pts.len() < 3 {
        return Err(parse_err(format!(
            "need at least 3 points, found {}",
            pts.len()
        )));
    }
    Ok(pts)
}

fn parse_json(text: &str) -> Result<Vec<Point2>> {
    let doc: Value = serde_json::from_str(text).map_err(|e| parse_err(format!("JSON: {e}")))?;
    let list = doc
        .get("vertices")
        .ok_or_else(|| parse_err("JSON: missing \"vertices\""))?
        .as_array()
        .ok_or_else(|| parse_err("JSON: \"vertices\" must be an array"))?;
    list.iter()
        .enumerate()
        .map(|(i, v)| {
            let bad = || {
                parse_err(format!(
                    "JSON: vertices[{i}] must be [x, y] with finite numbers, got {v}"
                ))
            };
            let pair = v.as_array().filter(|a| a.len() == 2).ok_or_else(bad)?;
            let x = pair[0].as_f64().ok_or_else(bad)?;
            let y = pair[1].as_f64().ok_or_else(bad)?;
            let p = Point2::new(x, y);
            if p.is_finite() {
                Ok(p)
            } else {
                Err(bad())
            }
        })
        .collect()
}

fn parse_csv(text: &str) -> Result<Vec<Point2>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut pts = Vec::new();
    for (k, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| parse_err(format!("CSV: {e}")))?;
        let line = rec.position().map_or(k as u64 + 1, |p| p.line());
        if rec.iter().all(str::is_empty) {
            continue;
        }
        if rec.len() != 2 {
            return Err(parse_err(format!(
                "CSV line {line}: expected 2 fields, found {}",
                rec.len()
            )));
        }
        let x = rec[0].parse::<f64>();
        let y = rec[1].parse::<f64>();
        match (x, y) {
            (Ok(x), Ok(y)) if x.is_finite() && y.is_finite() => pts.push(Point2::new(x, y)),
            (Ok(_), Ok(_)) => {
                return Err(parse_err(format!(
                    "CSV line {line}: coordinates must be finite"
                )));
            }
            // a non-numeric first row is a header
            (Err(_), Err(_)) if pts.is_empty() && k == 0 => {}
            _ => {
                return Err(parse_err(format!(
                    "CSV line {line}: cannot parse \"{},{}\" as numbers",
                    &rec[0], &rec[1]
                )));
            }
        }
    }
    Ok(pts)
}

/// Parse a polygon file and take the convex hull of its points.
pub fn parse_polygon(text: &str) -> Result<ConvexPolygon> {
    make_polygon(&parse_points(text)?)
}

pub fn read_polygon(path: &Path) -> Result<ConvexPolygon> {
    let text =
        std::fs::read_to_string(path).map_err(|e| parse_err(format!("{}: {e}", path.display())))?;
    parse_polygon(&text)
}

/// JSON form; numbers are written in shortest round-trip notation.
pub fn polygon_to_json(poly: &ConvexPolygon) -> String {
    let doc = VertexList {
        vertices: poly.vertices().iter().map(|v| [v.x, v.y]).collect(),
    };
    let mut s = serde_json::to_string(&doc).expect("finite coordinates serialize");
    s.push('\n');
    s
}

/// CSV form with an `x,y` header.
pub fn polygon_to_csv(poly: &ConvexPolygon) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["x", "y"]).expect("in-memory write");
    for v in poly.vertices() {
        w.serialize((v.x, v.y)).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory write")).expect("CSV output is UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_and_csv() {
        let j = parse_polygon(r#"{"vertices": [[0,0],[1,0],[1,1],[0,1]]}"#).unwrap();
        let c = parse_polygon("x,y\n0,0\n1,0\n1,1\n0,1\n").unwrap();
        let bare = parse_polygon("0, 0\n1 ,0\n\n1,1\n0,1").unwrap();
        assert_eq!(j, c);
        assert_eq!(c, bare);
        assert_eq!(j.area(), 1.0);
    }

    #[test]
    fn diagnostics() {
        let e = parse_points("x,y\n0,0\n1,zz\n").unwrap_err().to_string();
        assert!(e.contains("line 3"), "{e}");
        let e = parse_points(r#"{"vertices": [[0,0],[1,0],[1]]}"#)
            .unwrap_err()
            .to_string();
        assert!(e.contains("vertices[2]"), "{e}");
        let e = parse_points("0,0\n1,1\n").unwrap_err().to_string();
        assert!(e.contains("at least 3"), "{e}");
        assert!(parse_points("0,0\n1,inf\n2,2\n").is_err());
        assert!(parse_points("0,0,0\n1,1\n2,2\n").is_err());
        assert!(parse_points("{\"vertices\": [[0,0],").is_err());
        assert!(parse_points(r#"{"points": []}"#).is_err());
        assert!(matches!(
            parse_polygon("0,0\n1,1\n2,2\n"),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn round_trip_is_exact() {
        let p = make_polygon(&[
            Point2::new(0.1, 0.2),
            Point2::new(1.0 / 3.0, -1e-17),
            Point2::new(std::f64::consts::E, std::f64::consts::PI),
            Point2::new(-7.000000000000001, 1e-3),
        ])
        .unwrap();
        assert_eq!(parse_polygon(&polygon_to_json(&p)).unwrap(), p);
        assert_eq!(parse_polygon(&polygon_to_csv(&p)).unwrap(), p);
    }
}
