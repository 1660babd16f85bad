//! Reading graphs, embeddings, lists and patterns from files or stdin.

use std::fs;
use std::io::Read;
use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use dpcolor::dp::MatchingFile;
use dpcolor::reducibility::ConfigPattern;
use dpcolor::{brute_force_embed, parse_graph6, Graph, ListAssignment, MatchingAssignment, PlaneEmbedding};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Guess from the content.
    Auto,
    Graph6,
    /// `u v` pairs, one per line, optional `n N` line.
    Edges,
    /// `{"n": .., "rotation": [[..], ..]}`.
    Embedding,
}

pub fn read_text(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn detect(text: &str) -> Format {
    if text.trim_start().starts_with('{') {
        return Format::Embedding;
    }
    match content_lines(text).next() {
        Some(l) if l.split_whitespace().count() > 1 => Format::Edges,
        _ => Format::Graph6,
    }
}

pub enum Loaded {
    Graph(Graph),
    Embedding(PlaneEmbedding),
}

impl Loaded {
    pub fn into_graph(self) -> Graph {
        match self {
            Loaded::Graph(g) => g,
            Loaded::Embedding(e) => e.graph().clone(),
        }
    }

    /// The embedding itself, or one found by exhaustive search for small
    /// planar graphs.
    pub fn into_embedding(self) -> Result<PlaneEmbedding> {
        match self {
            Loaded::Embedding(e) => Ok(e),
            Loaded::Graph(g) => brute_force_embed(&g).context("no embedding given and none found"),
        }
    }
}

pub fn load(path: &Path, format: Format) -> Result<Loaded> {
    let text = read_text(path)?;
    let format = if format == Format::Auto { detect(&text) } else { format };
    Ok(match format {
        Format::Embedding => Loaded::Embedding(PlaneEmbedding::from_json(&text)?),
        Format::Edges => Loaded::Graph(Graph::parse_edge_list(&text)?),
        Format::Graph6 | Format::Auto => {
            let lines: Vec<&str> = content_lines(&text).collect();
            match lines[..] {
                [one] => Loaded::Graph(parse_graph6(one)?),
                [] => bail!("no graph in input"),
                _ => bail!("{} graph6 lines; expected one", lines.len()),
            }
        }
    })
}

/// Nonempty, non-comment lines of a graph6 stream.
pub fn graph6_stream(path: &Path) -> Result<Vec<String>> {
    Ok(content_lines(&read_text(path)?).map(str::to_string).collect())
}

/// `v: c1 c2 ..` per vertex.
pub fn load_lists(path: &Path, n: usize) -> Result<ListAssignment> {
    let text = read_text(path)?;
    let mut lists = vec![None; n];
    for (idx, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (v, cs) = line.split_once(':').with_context(|| format!("line {}: expected `v: colors`", idx + 1))?;
        let v: usize = v.trim().parse().with_context(|| format!("line {}: bad vertex", idx + 1))?;
        let cs = cs
            .split_whitespace()
            .map(|c| c.parse().with_context(|| format!("line {}: bad color `{c}`", idx + 1)))
            .collect::<Result<Vec<_>>>()?;
        match lists.get_mut(v) {
            Some(slot @ None) => *slot = Some(cs),
            Some(Some(_)) => bail!("line {}: vertex {v} listed twice", idx + 1),
            None => bail!("line {}: vertex {v} out of range for {n} vertices", idx + 1),
        }
    }
    let lists = lists
        .into_iter()
        .enumerate()
        .map(|(v, l)| l.with_context(|| format!("no list for vertex {v}")))
        .collect::<Result<Vec<_>>>()?;
    Ok(ListAssignment::new(lists)?)
}

pub fn load_matchings(path: &Path, g: &Graph) -> Result<MatchingAssignment> {
    Ok(MatchingFile::parse(&read_text(path)?)?.to_assignment(g)?)
}

pub fn load_pattern(path: &Path) -> Result<ConfigPattern> {
    Ok(ConfigPattern::from_json(&read_text(path)?)?)
}
