use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use flate2::read::GzDecoder;

use super::Graph;
use crate::error::{Error, Result};

/// Parses a SNAP-style edge list: one `u v` pair per line, `#` comments.
///
/// Node labels are re-indexed densely in order of first appearance; the
/// original labels are kept on the graph (`Graph::labels`).
pub fn parse_edge_list<R: BufRead>(reader: R, directed: bool) -> Result<Graph> {
    let mut index: HashMap<u64, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    let mut intern = |label: u64| -> usize {
        *index.entry(label).or_insert_with(|| {
            labels.push(label);
            labels.len() - 1
        })
    };

    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        let body = line.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let mut tokens = body.split_whitespace();
        let (Some(a), Some(b), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected two node ids, found {body:?}"),
            });
        };
        let parse = |tok: &str| {
            tok.parse::<u64>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("{tok:?} is not a non-negative integer node id"),
            })
        };
        let (u, v) = (parse(a)?, parse(b)?);
        let u = intern(u);
        let v = intern(v);
        edges.push((u, v));
    }

    let n = labels.len();
    Ok(Graph::from_edges(n, &edges, directed)?.with_labels(labels))
}

/// Opens an edge-list file, transparently decompressing gzip input.
pub fn open_edge_list(path: &Path) -> Result<Box<dyn BufRead>> {
    let mut file = File::open(path)?;
    let mut magic = [0u8; 2];
    let gz = file.read(&mut magic)? == 2 && magic == [0x1f, 0x8b];
    let file = File::open(path)?;
    Ok(if gz {
        Box::new(BufReader::new(GzDecoder::new(file)))
    } else {
        Box::new(BufReader::new(file))
    })
}

pub fn read_edge_list_file(path: &Path, directed: bool) -> Result<Graph> {
    parse_edge_list(open_edge_list(path)?, directed)
}

/// Writes the graph as an edge list over dense ids.
pub fn write_edge_list<W: Write>(graph: &Graph, mut out: W) -> Result<()> {
    writeln!(out, "# nodes: {} edges: {}", graph.n(), graph.num_edges())?;
    for (u, v) in graph.edges() {
        writeln!(out, "{u} {v}")?;
    }
    out.flush()?;
    Ok(())
}

/// Writes `dense_id original_label` lines.
pub fn write_id_map<W: Write>(graph: &Graph, mut out: W) -> Result<()> {
    for (id, label) in graph.labels().iter().enumerate() {
        writeln!(out, "{id} {label}")?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;
    use std::io::Cursor;

    use proptest::prelude::*;

    use super::*;

    fn parse(s: &str) -> Result<Graph> {
        parse_edge_list(Cursor::new(s), false)
    }

    #[test]
    fn path_of_three() {
        let g = parse("0 1\n1 2").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.num_edges(), 2);
        assert_eq!(g.degree(1), 2);
    }

    #[test]
    fn comments_and_reindexing() {
        let g = parse("# comment\n5 7").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.num_edges(), 1);
        assert_eq!(g.labels(), &[5, 7]);
    }

    #[test]
    fn reverse_duplicate_is_one_edge() {
        let g = parse("0 1\n1 0").unwrap();
        assert_eq!(g.num_edges(), 1);
    }

    #[test]
    fn malformed_line_reports_line_number() {
        match parse("0 1\n\n1 x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(parse("1 2 3"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse("7"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn gzip_input_is_detected() {
        use flate2::write::GzEncoder;
        use flate2::Compression;

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.txt.gz");
        let mut enc = GzEncoder::new(File::create(&path).unwrap(), Compression::default());
        enc.write_all(b"# c\n10 20\n20 30\n").unwrap();
        enc.finish().unwrap();
        let g = read_edge_list_file(&path, false).unwrap();
        assert_eq!((g.n(), g.num_edges()), (3, 2));
    }

    fn labelled_edges(g: &Graph) -> BTreeSet<(u64, u64)> {
        g.edges()
            .map(|(u, v)| {
                let (a, b) = (g.labels()[u], g.labels()[v]);
                (a.min(b), a.max(b))
            })
            .collect()
    }

    proptest! {
        #[test]
        fn serialize_parse_round_trip(edges in prop::collection::vec((0usize..30, 0usize..30), 1..80)) {
            let g = Graph::from_edges(30, &edges, false).unwrap();
            prop_assume!(g.num_edges() > 0);
            let mut buf = Vec::new();
            write_edge_list(&g, &mut buf).unwrap();
            let back = parse_edge_list(Cursor::new(buf), false).unwrap();
            prop_assert_eq!(back.num_edges(), g.num_edges());
            prop_assert_eq!(labelled_edges(&back), labelled_edges(&g));
        }
    }
}
