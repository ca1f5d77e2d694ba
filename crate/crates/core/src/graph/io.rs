//! Map, scenario and plan file formats.
//!
//! Map: `{"vertices":[{"id":0,"x":0.0,"y":0.0},...],"edges":[[0,1],...]}`
//! Scenario: `{"agents":[{"start":3,"goal":17},...]}`
//! Plan: CSV with header `t,agent0,...,agent{k-1}` and one row per time step.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::FormatError;
use crate::graph::{Assignment, Configuration, Plan, Roadmap, VertexId};
use crate::scalar::Scalar;

#[derive(Debug, Serialize, Deserialize)]
struct VertexRecord {
    id: VertexId,
    x: f64,
    y: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct MapFile {
    vertices: Vec<VertexRecord>,
    edges: Vec<[VertexId; 2]>,
}

#[derive(Debug, Serialize, Deserialize)]
struct AgentRecord {
    start: VertexId,
    goal: VertexId,
}

#[derive(Debug, Serialize, Deserialize)]
struct ScenarioFile {
    agents: Vec<AgentRecord>,
}

pub fn map_to_json<S: Scalar>(map: &Roadmap<S>) -> String {
    let file = MapFile {
        vertices: map
            .points()
            .iter()
            .enumerate()
            .map(|(id, p)| VertexRecord {
                id,
                x: p.x.to_f64_lossy(),
                y: p.y.to_f64_lossy(),
            })
            .collect(),
        edges: map.edges().iter().map(|&(a, b)| [a, b]).collect(),
    };
    serde_json::to_string(&file).expect("map serialization")
}

pub fn map_from_json<S: Scalar>(text: &str) -> Result<Roadmap<S>, FormatError> {
    let file: MapFile = serde_json::from_str(text)?;
    Ok(Roadmap::from_vertex_records(
        file.vertices
            .into_iter()
            .map(|v| (v.id, S::of(v.x), S::of(v.y))),
        file.edges.into_iter().map(|[a, b]| (a, b)),
    )?)
}

pub fn scenario_to_json(assignment: &Assignment) -> String {
    let file = ScenarioFile {
        agents: assignment
            .starts()
            .iter()
            .zip(assignment.goals().iter())
            .map(|(&start, &goal)| AgentRecord { start, goal })
            .collect(),
    };
    serde_json::to_string(&file).expect("scenario serialization")
}

pub fn scenario_from_json(text: &str) -> Result<Assignment, FormatError> {
    let file: ScenarioFile = serde_json::from_str(text)?;
    let (starts, goals) = file.agents.into_iter().map(|a| (a.start, a.goal)).unzip();
    Ok(Assignment::new(starts, goals)?)
}

pub fn write_plan<W: Write>(plan: &Plan, writer: W) -> Result<(), FormatError> {
    let mut out = csv::Writer::from_writer(writer);
    let mut header = vec!["t".to_string()];
    header.extend((0..plan.agent_count()).map(|i| format!("agent{i}")));
    out.write_record(&header)?;
    for (t, config) in plan.steps().iter().enumerate() {
        let mut row = vec![t.to_string()];
        row.extend(config.iter().map(|v| v.to_string()));
        out.write_record(&row)?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_plan<R: Read>(reader: R) -> Result<Plan, FormatError> {
    let mut input = csv::Reader::from_reader(reader);
    let header = input.headers()?.clone();
    if header.get(0) != Some("t") {
        return Err(FormatError::Malformed("plan header must start with `t`".into()));
    }
    for (i, name) in header.iter().skip(1).enumerate() {
        if name != format!("agent{i}") {
            return Err(FormatError::Malformed(format!(
                "unexpected plan column `{name}`"
            )));
        }
    }
    let mut steps = Vec::new();
    for (row_index, record) in input.records().enumerate() {
        let record = record?;
        let parse = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|e| FormatError::Malformed(format!("row {row_index}: {e}")))
        };
        let t = parse(record.get(0).unwrap_or(""))?;
        if t != row_index {
            return Err(FormatError::Malformed(format!(
                "row {row_index} has time {t}"
            )));
        }
        let positions = record.iter().skip(1).map(parse).collect::<Result<_, _>>()?;
        steps.push(Configuration::new(positions)?);
    }
    Ok(Plan::new(steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Point;

    #[test]
    fn map_round_trip() {
        let map = Roadmap::new(
            vec![Point::new(0.0, 0.0), Point::new(1.5, -2.0), Point::new(3.0, 4.0)],
            [(0, 1), (2, 1)],
        )
        .unwrap();
        let text = map_to_json(&map);
        assert!(text.starts_with(r#"{"vertices":[{"id":0,"x":0.0,"y":0.0}"#));
        let back: Roadmap<f64> = map_from_json(&text).unwrap();
        assert_eq!(back, map);
    }

    #[test]
    fn scenario_round_trip() {
        let a = Assignment::new(vec![3, 1], vec![17, 2]).unwrap();
        let text = scenario_to_json(&a);
        assert_eq!(
            text,
            r#"{"agents":[{"start":3,"goal":17},{"start":1,"goal":2}]}"#
        );
        assert_eq!(scenario_from_json(&text).unwrap(), a);
    }

    #[test]
    fn plan_format() {
        let c = |v: Vec<usize>| Configuration::new(v).unwrap();
        let plan = Plan::new(vec![c(vec![0, 2]), c(vec![1, 2])]);
        let mut buf = Vec::new();
        write_plan(&plan, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf.clone()).unwrap(),
            "t,agent0,agent1\n0,0,2\n1,1,2\n"
        );
        assert_eq!(read_plan(buf.as_slice()).unwrap(), plan);
        assert!(read_plan("x,agent0\n0,1\n".as_bytes()).is_err());
    }
}
