//! CSV output for geodesic trajectories and the stereographic sweep.
//!
//! `geodesic.csv` has header `s,x0,x1,x2,x3,x4` and `steps + 1` rows;
//! `stereo.csv` has header `phi,theta,residual` and one row per integer
//! degree in `1..=179`.

use std::path::{Path, PathBuf};

use penta_core::fivegeom::{integrate_geodesic, minkowski, preferred_geodesic_field, FiveMetric, GeodesicState};
use penta_core::spinormap::stereographic_sweep;
use penta_core::symtensor::{parse_sexpr, NumericEnv, SymExpr};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Symbolic five-metric pieces, each an s-expression in the coordinates
/// `(x 0)` … `(x 4)`. Omitted factors default to `1`, an omitted observer
/// block to `diag(1, −1, −1, −1)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricSpec {
    pub potential: [String; 4],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g4: Option<[[String; 4]; 4]>,
    #[serde(default = "one")]
    pub lambda: String,
    #[serde(default = "one")]
    pub chi: String,
    #[serde(default = "one")]
    pub omega: String,
}

fn one() -> String {
    "1".to_string()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeodesicScenario {
    pub metric: MetricSpec,
    pub start: [f64; 5],
    pub ds: f64,
    pub steps: usize,
}

impl Default for GeodesicScenario {
    /// Constant potential `𝒜 = (1/2, 1/4, 0, 0)` from the origin.
    fn default() -> Self {
        Self {
            metric: MetricSpec {
                potential: ["1/2".into(), "1/4".into(), "0".into(), "0".into()],
                g4: None,
                lambda: one(),
                chi: one(),
                omega: one(),
            },
            start: [0.0; 5],
            ds: 0.01,
            steps: 100,
        }
    }
}

fn parse(what: &str, s: &str) -> Result<SymExpr, CliError> {
    parse_sexpr(s).map_err(|e| CliError::ConfigInvalid(format!("{what}: {e}")))
}

impl GeodesicScenario {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::ConfigInvalid(format!("scenario: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        Self::from_json(&std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?)
    }

    pub fn five_metric(&self) -> Result<FiveMetric, CliError> {
        let m = &self.metric;
        let mut a = Vec::with_capacity(4);
        for (i, s) in m.potential.iter().enumerate() {
            a.push(parse(&format!("potential[{i}]"), s)?);
        }
        let g4 = match &m.g4 {
            None => minkowski(),
            Some(rows) => {
                let mut g = minkowski();
                for (i, row) in rows.iter().enumerate() {
                    for (j, s) in row.iter().enumerate() {
                        g[i][j] = parse(&format!("g4[{i}][{j}]"), s)?;
                    }
                }
                g
            }
        };
        let a: [SymExpr; 4] = a.try_into().expect("four components");
        Ok(FiveMetric::standard(g4, a).with_factors(parse("lambda", &m.lambda)?, parse("chi", &m.chi)?, parse("omega", &m.omega)?))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.ds.is_finite() && self.ds > 0.0) {
            return Err(CliError::ConfigInvalid(format!("ds must be positive, got {}", self.ds)));
        }
        if self.start.iter().any(|v| !v.is_finite()) {
            return Err(CliError::ConfigInvalid("start must be finite".into()));
        }
        Ok(())
    }

    pub fn integrate(&self) -> Result<Vec<GeodesicState>, CliError> {
        self.validate()?;
        let field = preferred_geodesic_field(&self.five_metric()?, NumericEnv::new())
            .map_err(|e| CliError::ConfigInvalid(e.to_string()))?;
        integrate_geodesic(&field, GeodesicState { x: self.start, s: 0.0 }, self.ds, self.steps)
            .map_err(|e| CliError::ConfigInvalid(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CsvRequest {
    Geodesic(GeodesicScenario),
    Stereographic,
}

#[derive(Serialize)]
struct GeodesicRow {
    s: f64,
    x0: f64,
    x1: f64,
    x2: f64,
    x3: f64,
    x4: f64,
}

/// Writes the requested CSV into `dir`; returns the path and data-row count.
pub fn emit_csv(req: &CsvRequest, dir: &Path) -> Result<(PathBuf, usize), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let (path, rows) = match req {
        CsvRequest::Geodesic(sc) => {
            let path = dir.join("geodesic.csv");
            let states = sc.integrate()?;
            let rows: Vec<GeodesicRow> = states
                .iter()
                .map(|st| GeodesicRow { s: st.s, x0: st.x[0], x1: st.x[1], x2: st.x[2], x3: st.x[3], x4: st.x[4] })
                .collect();
            let n = write_rows(&path, &rows)?;
            (path, n)
        }
        CsvRequest::Stereographic => {
            let path = dir.join("stereo.csv");
            let n = write_rows(&path, &stereographic_sweep())?;
            (path, n)
        }
    };
    Ok((path, rows))
}

fn write_rows<T: Serialize>(path: &Path, rows: &[T]) -> Result<usize, CliError> {
    let to_io = |e: csv::Error| CliError::io(path, e.into());
    let mut w = csv::Writer::from_path(path).map_err(to_io)?;
    for r in rows {
        w.serialize(r).map_err(to_io)?;
    }
    w.flush().map_err(|e| CliError::io(path, e))?;
    Ok(rows.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scenario_json_round_trip_with_defaults() {
        let text = r#"{"metric":{"potential":["1","0","0","(x 0)"]},"start":[0,0,0,0,0],"ds":0.1,"steps":3}"#;
        let sc = GeodesicScenario::from_json(text).unwrap();
        assert_eq!(sc.metric.omega, "1");
        assert_eq!(GeodesicScenario::from_json(&serde_json::to_string(&sc).unwrap()).unwrap(), sc);
        assert_eq!(sc.integrate().unwrap().len(), 4);
    }

    #[test]
    fn malformed_scenarios_rejected() {
        assert!(GeodesicScenario::from_json(r#"{"metric":{}}"#).is_err());
        let mut sc = GeodesicScenario::default();
        sc.ds = -1.0;
        assert!(matches!(sc.integrate(), Err(CliError::ConfigInvalid(_))));
        let mut sc = GeodesicScenario::default();
        sc.metric.omega = "(+ 1".into();
        assert!(matches!(sc.integrate(), Err(CliError::ConfigInvalid(_))));
    }
}
