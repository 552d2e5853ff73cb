//! The JSON-lines point-set record shared by every subcommand.

use ips_core::field::FieldCtx;
use ips_core::plane::PointSet;
use serde::{Deserialize, Serialize};

/// One point set; coordinates are field-element codes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub q: u32,
    pub p: u32,
    pub r: u32,
    pub size: usize,
    pub points: Vec<[u32; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stab_order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit_len: Option<u64>,
}

impl Record {
    pub fn new(ctx: &FieldCtx, set: &PointSet) -> Self {
        Record {
            q: ctx.q(),
            p: ctx.p(),
            r: ctx.r(),
            size: set.len(),
            points: set.coords(),
            stab_order: None,
            orbit_len: None,
        }
    }
}

/// What `check` and `plot` accept: any object with `q` and `points`.
#[derive(Clone, Debug, Deserialize)]
pub struct InputSet {
    pub q: u32,
    pub points: Vec<[u32; 2]>,
}

impl InputSet {
    pub fn to_pointset(&self) -> Result<PointSet, String> {
        let coords: Vec<(u32, u32)> = self.points.iter().map(|&[x, y]| (x, y)).collect();
        PointSet::from_coords(self.q, &coords).map_err(|e| e.to_string())
    }
}

/// Parses one set per non-empty line.
pub fn parse_lines(text: &str) -> Result<Vec<InputSet>, String> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| format!("line {}: {e}", i + 1)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_round_trip() {
        let ctx = FieldCtx::from_order(7).unwrap();
        let set = PointSet::from_coords(7, &[(0, 0), (3, 0)]).unwrap();
        let line = serde_json::to_string(&Record::new(&ctx, &set)).unwrap();
        assert_eq!(line, r#"{"q":7,"p":7,"r":1,"size":2,"points":[[0,0],[3,0]]}"#);
        let back = parse_lines(&format!("{line}\n\n")).unwrap();
        assert_eq!(back[0].to_pointset().unwrap(), set);
    }

    #[test]
    fn bad_input() {
        assert!(parse_lines("{\"q\":7}").is_err());
        let s = parse_lines(r#"{"q":7,"points":[[9,0]]}"#).unwrap();
        assert!(s[0].to_pointset().is_err());
    }
}
