//! File formats.
//!
//! * graph: `{"vertices": [...], "edges": [["a","b"], ...]}`, or DIMACS text
//!   (`p edge n m` header, `e i j` lines, 1-indexed, `c` comments)
//! * channel: `{"inputs": [...], "outputs": [{"label", "support", "probs"?}]}`
//! * vectors: `{"dimension": d, "vectors": {"v1": [[re, im], ...]}}`
//! * transcripts: JSON lines, one entry per line, then a summary line

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::channel::{ChannelFile, ChannelSpec};
use crate::constructions::NamedConstruction;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphFile};
use crate::protocol::{TranscriptEntry, TranscriptSummary};
use crate::quantum::{VectorSet, VectorSetFile};

pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    let mut declared = 0;
    let mut seen = 0;
    for (lineno, line) in text.lines().enumerate() {
        let bad = |what: &str| Error::Parse(format!("line {}: {what}", lineno + 1));
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.first().copied() {
            None | Some("c") => {}
            Some("p") => {
                if graph.is_some() {
                    return Err(bad("second problem line"));
                }
                if fields.len() != 4 || fields[1] != "edge" {
                    return Err(bad("expected `p edge <n> <m>`"));
                }
                let n: usize = fields[2].parse().map_err(|_| bad("bad vertex count"))?;
                declared = fields[3].parse().map_err(|_| bad("bad edge count"))?;
                graph = Some(Graph::new((1..=n).map(|i| i.to_string()))?);
            }
            Some("e") => {
                let g = graph.as_mut().ok_or_else(|| bad("edge before problem line"))?;
                if fields.len() != 3 {
                    return Err(bad("expected `e <u> <v>`"));
                }
                let end = |s: &str| -> Result<usize> {
                    let i: usize = s.parse().map_err(|_| bad("bad vertex number"))?;
                    if i == 0 || i > g.len() {
                        return Err(bad("vertex number out of range"));
                    }
                    Ok(i - 1)
                };
                let (u, v) = (end(fields[1])?, end(fields[2])?);
                if u != v && g.adjacent(u, v) {
                    return Err(bad("duplicate edge"));
                }
                g.add_edge(u, v).map_err(|e| bad(&e.to_string()))?;
                seen += 1;
            }
            Some(other) => return Err(bad(&format!("unknown line type {other:?}"))),
        }
    }
    let g = graph.ok_or_else(|| Error::Parse("missing `p edge` line".into()))?;
    if seen != declared {
        return Err(Error::Parse(format!("header declares {declared} edges, found {seen}")));
    }
    Ok(g)
}

/// Graph from JSON or DIMACS text (detected by a leading `{`).
pub fn parse_graph(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        let f: GraphFile = serde_json::from_str(text)?;
        Graph::try_from(f)
    } else {
        parse_dimacs(text)
    }
}

pub fn parse_channel(text: &str) -> Result<ChannelSpec> {
    let f: ChannelFile = serde_json::from_str(text)?;
    ChannelSpec::try_from(f)
}

pub fn parse_vectors(text: &str) -> Result<VectorSet> {
    let f: VectorSetFile = serde_json::from_str(text)?;
    f.into_vector_set()
}

/// What a graph-or-channel file turned out to hold.
pub enum GraphSource {
    Graph(Graph),
    Channel(ChannelSpec),
}

impl GraphSource {
    pub fn graph(&self) -> Graph {
        match self {
            GraphSource::Graph(g) => g.clone(),
            GraphSource::Channel(c) => c.confusability_graph(),
        }
    }
}

/// JSON with an `"inputs"` key is a channel; anything else is a graph.
pub fn parse_graph_or_channel(text: &str) -> Result<GraphSource> {
    if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(text)?;
        if v.get("inputs").is_some() {
            return Ok(GraphSource::Channel(parse_channel(text)?));
        }
    }
    Ok(GraphSource::Graph(parse_graph(text)?))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

pub fn load_graph(path: &Path) -> Result<Graph> {
    parse_graph(&read(path)?)
}

pub fn load_channel(path: &Path) -> Result<ChannelSpec> {
    parse_channel(&read(path)?)
}

pub fn load_vectors(path: &Path) -> Result<VectorSet> {
    parse_vectors(&read(path)?)
}

pub fn load_graph_or_channel(path: &Path) -> Result<GraphSource> {
    parse_graph_or_channel(&read(path)?)
}

/// Construction named after the channel file's stem.
pub fn load_construction(channel: &Path, vectors: &Path) -> Result<NamedConstruction> {
    let name = channel
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "construction".into());
    Ok(NamedConstruction::new(name, load_vectors(vectors)?, load_channel(channel)?))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

/// Writes the channel and vector files of a construction.
pub fn export(c: &NamedConstruction, channel: &Path, vectors: &Path) -> Result<()> {
    write_json(channel, &c.channel.to_file())?;
    write_json(vectors, &c.vectors.to_file())
}

pub fn write_transcript<W: Write>(mut w: W, entries: &[TranscriptEntry], summary: &TranscriptSummary) -> Result<()> {
    for e in entries {
        serde_json::to_writer(&mut w, e)?;
        w.write_all(b"\n")?;
    }
    serde_json::to_writer(&mut w, &serde_json::json!({ "summary": summary }))?;
    w.write_all(b"\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::cabello18;

    #[test]
    fn dimacs_parses() {
        let g = parse_graph("c pentagon\np edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n").unwrap();
        assert_eq!(g, Graph::from_edges(["1", "2", "3", "4", "5"], &[("1", "2"), ("2", "3"), ("3", "4"), ("4", "5"), ("1", "5")]).unwrap());
    }

    #[test]
    fn dimacs_errors() {
        assert!(parse_dimacs("e 1 2\n").is_err());
        assert!(parse_dimacs("p edge 2 1\ne 1 3\n").is_err());
        assert!(parse_dimacs("p edge 2 2\ne 1 2\ne 2 1\n").is_err());
        assert!(parse_dimacs("p edge 2 2\ne 1 2\n").is_err());
        assert!(parse_dimacs("p edge 2 1\ne 1 1\n").is_err());
        assert!(parse_dimacs("p col 2 1\n").is_err());
    }

    #[test]
    fn json_graph_validation() {
        assert!(parse_graph(r#"{"vertices":["a","b"],"edges":[["a","b"],["b","a"]]}"#).is_err());
        assert!(parse_graph(r#"{"vertices":["a","b"],"edges":[["a","c"]]}"#).is_err());
        let g = parse_graph(r#"{"vertices":["a","b","c"],"edges":[["a","b"]]}"#).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn detects_channels() {
        let c = cabello18();
        let text = serde_json::to_string(&c.channel.to_file()).unwrap();
        match parse_graph_or_channel(&text).unwrap() {
            GraphSource::Channel(ch) => assert_eq!(ch.confusability_graph(), c.confusability_graph()),
            GraphSource::Graph(_) => panic!("expected a channel"),
        }
    }

    #[test]
    fn export_and_reload() {
        let dir = tempfile::tempdir().unwrap();
        let (cp, vp) = (dir.path().join("c18.json"), dir.path().join("c18v.json"));
        let c = cabello18();
        export(&c, &cp, &vp).unwrap();
        let back = load_construction(&cp, &vp).unwrap();
        assert_eq!(back.name, "c18");
        assert_eq!(back.vectors, c.vectors);
        assert_eq!(back.channel, c.channel);
    }

    #[test]
    fn transcript_lines() {
        let entries = vec![TranscriptEntry {
            message: "m1".into(),
            vertex: "v1".into(),
            output: "h1".into(),
            decoded: "v1".into(),
            probability: 1.0,
        }];
        let summary = TranscriptSummary {
            name: "x".into(),
            mode: "exhaustive".into(),
            achieved: Some(1),
            baseline: None,
            gap: None,
            trials: None,
            successes: None,
        };
        let mut buf = Vec::new();
        write_transcript(&mut buf, &entries, &summary).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        let first: TranscriptEntry = serde_json::from_str(lines[0]).unwrap();
        assert_eq!(first, entries[0]);
        assert!(lines[1].starts_with(r#"{"summary":{"name":"x""#));
    }
}
