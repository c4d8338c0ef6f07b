use std::sync::Arc;

use exlab_core::io::parse_grid;
use exlab_core::removal::{
    corner_oracle, diamond_find, grid_cover, grid_pipeline, is_diamond, removal_iterate, sparse_pair_step,
    triangle_census, GridColoring, IterVerdict, MAX_PIPELINE_SIDE,
};
use exlab_core::RngStream;
use serde_json::json;

use super::{flag, pre, read_text, Operation, TrialOutput};
use crate::error::{invalid, LabResult};
use crate::params::Params;

pub const OPS: &[&str] = &["census", "step", "iterate", "diamond", "grid"];

enum GridSource {
    Fixed(Arc<GridColoring>),
    Random { side: usize, r: usize },
}

impl GridSource {
    fn draw(&self, rng: &mut RngStream) -> exlab_core::Result<Arc<GridColoring>> {
        match self {
            GridSource::Fixed(g) => Ok(g.clone()),
            GridSource::Random { side, r } => Ok(Arc::new(GridColoring::random(*side, *r, rng)?)),
        }
    }
}

fn source(p: &mut Params) -> LabResult<GridSource> {
    if let Some(path) = p.opt_str("grid_file")? {
        return Ok(GridSource::Fixed(Arc::new(pre(parse_grid(&read_text(&path)?))?)));
    }
    let side = p.at_least("N", 15, 1)?;
    let r = p.at_least("r", 2, 1)?;
    if side > MAX_PIPELINE_SIDE {
        return invalid(format!("grid side must be <= {MAX_PIPELINE_SIDE}, got {side}"));
    }
    if r > 254 {
        return invalid(format!("at most 254 colors, got {r}"));
    }
    Ok(GridSource::Random { side, r })
}

pub fn resolve(op: &str, p: &mut Params) -> LabResult<Operation> {
    let src = source(p)?;
    let op = op.to_string();
    let guaranteed = op != "diamond";
    let key = match op.as_str() {
        "census" => "census",
        "step" => "measured",
        "iterate" => "levels",
        "diamond" => "found",
        _ => "corners",
    };
    Ok(Operation::new(guaranteed, Some(key), move |rng| {
        let g = src.draw(rng)?;
        let side2 = (g.side() * g.side()) as f64;
        if op == "grid" {
            let out = grid_pipeline(&g)?;
            let oracle = corner_oracle(&g)?;
            let ok = match &out.corner {
                Some(c) => oracle.contains(c),
                None => oracle.is_empty(),
            };
            return Ok(TrialOutput::new(ok, ok, &out)
                .stat("corners", oracle.len() as f64)
                .stat("found", flag(out.corner.is_some())));
        }
        let cover = grid_cover(&g)?;
        let c = cover.coloring();
        Ok(match op.as_str() {
            "census" => {
                let census = triangle_census(c)?;
                let ok = census.total as f64 >= side2;
                TrialOutput::new(ok, ok, &census)
                    .stat("census", census.total as f64)
                    .stat("cover", cover.triangles().len() as f64)
            }
            "step" => {
                let s = sparse_pair_step(&cover)?;
                let direct = s
                    .v1
                    .iter()
                    .flat_map(|&i| s.v2.iter().map(move |&j| (i, j)))
                    .filter(|&(i, j)| c.c12(i, j) == s.color)
                    .count() as u64;
                let ok = s.size_holds && s.edge_holds && direct == s.measured;
                TrialOutput::new(ok, ok, &s)
                    .stat("measured", s.measured as f64)
                    .stat("edge_bound", s.edge_bound)
                    .stat("size", s.v1.len().min(s.v2.len()) as f64)
                    .stat("size_bound", s.size_bound)
                    .stat("delta", s.delta)
            }
            "iterate" => {
                let trace = removal_iterate(&cover)?;
                let diamond_ok = match &trace.verdict {
                    IterVerdict::DiamondFound { diamond, .. } => is_diamond(c, diamond),
                    IterVerdict::BoundHolds => true,
                };
                let base_ok = trace.base_case.as_ref().is_none_or(|b| b.holds);
                let ok = trace.theorem_bound_holds && diamond_ok && base_ok;
                TrialOutput::new(ok, ok, &trace)
                    .stat("levels", trace.levels.len() as f64)
                    .stat("diamond", flag(matches!(trace.verdict, IterVerdict::DiamondFound { .. })))
                    .stat("ln_theorem_bound", trace.ln_theorem_bound)
            }
            _ => {
                let census = triangle_census(c)?;
                let d = diamond_find(c)?;
                let premise = census.total as f64 > side2;
                let valid = d.as_ref().is_none_or(|d| is_diamond(c, d));
                let ok = valid && (!premise || d.is_some());
                TrialOutput::new(d.is_some() && valid, ok, json!({ "diamond": d }))
                    .stat("census", census.total as f64)
                    .stat("premise", flag(premise))
                    .stat("found", flag(d.is_some()))
            }
        })
    }))
}
