use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use zelist::{Channel, Dist, Hypergraph};

use crate::args::Source;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn channel(path: &Path) -> Result<Channel> {
    let is_csv = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    let parsed = if is_csv {
        let file = fs::File::open(path).with_context(|| format!("reading {}", path.display()))?;
        Channel::from_csv_reader(file)
    } else {
        Channel::from_json_str(&read(path)?)
    };
    parsed.with_context(|| format!("parsing channel {}", path.display()))
}

pub fn graph(path: &Path) -> Result<Hypergraph> {
    Hypergraph::from_json_str(&read(path)?)
        .with_context(|| format!("parsing hypergraph {}", path.display()))
}

pub fn dist(path: &Path) -> Result<Dist> {
    Dist::from_json_str(&read(path)?)
        .with_context(|| format!("parsing distribution {}", path.display()))
}

pub fn codebook(path: &Path) -> Result<zelist::Codebook> {
    zelist::Codebook::from_json_str(&read(path)?)
        .with_context(|| format!("parsing codebook {}", path.display()))
}

/// Hypergraph from either a channel or a hypergraph file, plus the channel
/// when one was given.
pub fn hypergraph_of(
    channel_path: Option<&Path>,
    graph_path: Option<&Path>,
) -> Result<(Hypergraph, Option<Channel>)> {
    match (channel_path, graph_path) {
        (Some(c), None) => {
            let ch = channel(c)?;
            Ok((
                zelist::channel::distinguishability_hypergraph(&ch),
                Some(ch),
            ))
        }
        (None, Some(g)) => Ok((graph(g)?, None)),
        _ => Err(zelist::Error::InvalidArgument(
            "give exactly one of --channel and --graph".into(),
        )
        .into()),
    }
}

pub fn source(src: &Source) -> Result<(Hypergraph, Dist)> {
    let (g, _) = hypergraph_of(src.channel.as_deref(), src.graph.as_deref())?;
    Ok((g, dist(&src.probs)?))
}

/// `a:b` (inclusive) or a single blocklength.
pub fn n_range(text: &str) -> Result<std::ops::RangeInclusive<u32>> {
    let bad = || zelist::Error::Parse(format!("--n-range {text:?}: expected `a:b` or `n`"));
    let parse = |s: &str| s.trim().parse::<u32>().map_err(|_| bad());
    let range = match text.split_once(':') {
        Some((a, b)) => parse(a)?..=parse(b)?,
        None => {
            let n = parse(text)?;
            n..=n
        }
    };
    if range.is_empty() || *range.start() == 0 {
        return Err(bad().into());
    }
    Ok(range)
}
