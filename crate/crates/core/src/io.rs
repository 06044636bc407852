//! File formats.
//!
//! * interval samples: CSV with columns `t,value`, optional header row;
//! * graphs: `{"vertices":[{"id":int,"value":float}],"edges":[[int,int]]}`;
//! * diagrams: `{"infinity":[k,...],"points":[{"x":..,"y":..,"mult":n}]}`
//!   (the serde form of [`SizeFunctionDiagram`]).

use std::collections::HashMap;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::persistence::SizeFunctionDiagram;
use crate::size_space::{DiscreteSizePair, GraphWarnings, IntervalSamples};

pub fn read_interval_csv<R: Read>(reader: R) -> Result<IntervalSamples> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);
    let (mut params, mut values) = (Vec::new(), Vec::new());
    for (row, record) in rdr.records().enumerate() {
        let record = record?;
        if record.len() != 2 {
            return Err(Error::Parse(format!(
                "row {}: expected 2 columns `t,value`, found {}",
                row + 1,
                record.len()
            )));
        }
        let parsed = (record[0].parse::<f64>(), record[1].parse::<f64>());
        match parsed {
            (Ok(t), Ok(v)) => {
                params.push(t);
                values.push(v);
            }
            // header
            _ if row == 0 => continue,
            _ => {
                return Err(Error::Parse(format!(
                    "row {}: cannot parse `{},{}` as numbers",
                    row + 1,
                    &record[0],
                    &record[1]
                )))
            }
        }
    }
    IntervalSamples::new(params, values)
}

pub fn write_interval_csv(samples: &IntervalSamples) -> String {
    let mut out = String::from("t,value\n");
    for (t, v) in samples.params().iter().zip(samples.values()) {
        out.push_str(&format!("{t:?},{v:?}\n"));
    }
    out
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphVertex {
    id: i64,
    value: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphFile {
    vertices: Vec<GraphVertex>,
    #[serde(default)]
    edges: Vec<[i64; 2]>,
}

/// Parses the graph JSON format. Vertex ids may be any distinct integers;
/// vertices are indexed in file order.
pub fn read_graph_json<R: Read>(reader: R) -> Result<(DiscreteSizePair, GraphWarnings)> {
    let file: GraphFile = serde_json::from_reader(reader)?;
    let mut index = HashMap::with_capacity(file.vertices.len());
    for (i, v) in file.vertices.iter().enumerate() {
        if index.insert(v.id, i).is_some() {
            return Err(Error::Parse(format!("duplicate vertex id {}", v.id)));
        }
    }
    let len = file.vertices.len();
    let lookup = |id: i64| {
        index.get(&id).copied().ok_or(Error::VertexOutOfRange {
            index: id.max(0) as usize,
            len,
        })
    };
    let edges = file
        .edges
        .iter()
        .map(|&[a, b]| Ok((lookup(a)?, lookup(b)?)))
        .collect::<Result<Vec<_>>>()?;
    DiscreteSizePair::from_graph(file.vertices.iter().map(|v| v.value).collect(), edges)
}

pub fn graph_to_json(pair: &DiscreteSizePair) -> Result<String> {
    let file = GraphFile {
        vertices: pair
            .values()
            .iter()
            .enumerate()
            .map(|(i, &value)| GraphVertex { id: i as i64, value })
            .collect(),
        edges: pair.edges().iter().map(|&(a, b)| [a as i64, b as i64]).collect(),
    };
    Ok(serde_json::to_string(&file)?)
}

pub fn read_diagram_json<R: Read>(reader: R) -> Result<SizeFunctionDiagram> {
    Ok(serde_json::from_reader(reader)?)
}

/// Reads a size pair from `path`: `.csv` as interval samples, anything else
/// as graph JSON.
pub fn read_pair(path: &Path) -> Result<(DiscreteSizePair, Option<IntervalSamples>, GraphWarnings)> {
    let file = std::fs::File::open(path)?;
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let is_csv = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    if is_csv {
        let samples = read_interval_csv(file)?;
        let pair = DiscreteSizePair::from_interval_samples(&samples).with_label(label);
        Ok((pair, Some(samples), GraphWarnings::default()))
    } else {
        let (pair, warnings) = read_graph_json(file)?;
        Ok((pair.with_label(label), None, warnings))
    }
}
