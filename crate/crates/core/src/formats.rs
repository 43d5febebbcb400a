//! Text formats for graphs, certificates, samples, and codes.
//!
//! Graphs use a PACE-style header `p <n> <m>` followed by one `u v` line
//! per edge. Tree decompositions follow the PACE td layout (`s td ...`,
//! `b` lines, edge lines) extended with a root line `r <id>` and child
//! order lines `o <id> <left> <right>` (0 meaning absent). NLC
//! decompositions use the line-based sections NODES/ALPHA/BETA/REL. All
//! ids are 1-indexed on disk and 0-indexed in memory; lines starting with
//! `c` are comments.

use crate::balls::Sample;
use crate::codes::{ArrayCode, Bits, LabeledCode};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::nlc::NlcDecomposition;
use crate::tree::RootedBinaryTree;
use crate::treewidth::{RawTreeDecomposition, TreeDecomposition};

fn parse_err(file: &str, line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        file: file.to_string(),
        line,
        msg: msg.into(),
    }
}

struct Lines<'a> {
    file: &'a str,
    items: Vec<(usize, &'a str)>,
    at: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str, file: &'a str) -> Self {
        let items = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with("c ") && *l != "c")
            .collect();
        Lines { file, items, at: 0 }
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let item = self.items.get(self.at).copied();
        self.at += 1;
        item
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str)> {
        self.next()
            .ok_or_else(|| parse_err(self.file, self.items.last().map_or(0, |&(n, _)| n), format!("missing {what}")))
    }
}

fn parse_usize(file: &str, line: usize, token: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| parse_err(file, line, format!("expected an integer, got {token:?}")))
}

/// Token as a 1-indexed id, converted to 0-indexed.
fn parse_id(file: &str, line: usize, token: &str) -> Result<usize> {
    let v = parse_usize(file, line, token)?;
    if v == 0 {
        return Err(parse_err(file, line, "ids are 1-indexed"));
    }
    Ok(v - 1)
}

fn parse_id_list(file: &str, line: usize, tokens: &[&str]) -> Result<Vec<usize>> {
    tokens.iter().map(|t| parse_id(file, line, t)).collect()
}

pub fn parse_graph(text: &str, file: &str) -> Result<Graph> {
    let mut lines = Lines::new(text, file);
    let (line_no, header) = lines.expect("p header")?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let [p, n, m] = tokens.as_slice() else {
        return Err(parse_err(file, line_no, "expected `p <n> <m>`"));
    };
    if *p != "p" {
        return Err(parse_err(file, line_no, "expected `p <n> <m>`"));
    }
    let n = parse_usize(file, line_no, n)?;
    let m = parse_usize(file, line_no, m)?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line_no, line) = lines.expect("edge line")?;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let [u, v] = tokens.as_slice() else {
            return Err(parse_err(file, line_no, "expected `u v`"));
        };
        edges.push((parse_id(file, line_no, u)?, parse_id(file, line_no, v)?));
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(parse_err(file, line_no, "trailing content after the edge list"));
    }
    Graph::new(n, &edges).map_err(|e| parse_err(file, line_no, e.to_string()))
}

pub fn render_graph(graph: &Graph) -> String {
    let mut out = format!("p {} {}\n", graph.n(), graph.edge_count());
    for (u, v) in graph.edges() {
        out.push_str(&format!("{} {}\n", u + 1, v + 1));
    }
    out
}

pub fn parse_tree_decomposition(
    text: &str,
    file: &str,
    graph: &Graph,
) -> Result<TreeDecomposition> {
    let mut lines = Lines::new(text, file);
    let (line_no, header) = lines.expect("s header")?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let [s, td, bags_n, _max_bag, _n] = tokens.as_slice() else {
        return Err(parse_err(file, line_no, "expected `s td <bags> <width+1> <n>`"));
    };
    if *s != "s" || *td != "td" {
        return Err(parse_err(file, line_no, "expected `s td <bags> <width+1> <n>`"));
    }
    let bag_count = parse_usize(file, line_no, bags_n)?;
    let mut bags = vec![None; bag_count];
    let mut edges = Vec::new();
    let mut root = None;
    let mut order: Vec<Option<(usize, usize)>> = vec![None; bag_count];
    let mut has_order = false;
    while let Some((line_no, line)) = lines.next() {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["b", id, verts @ ..] => {
                let id = parse_id(file, line_no, id)?;
                if id >= bag_count {
                    return Err(parse_err(file, line_no, format!("bag id {} out of range", id + 1)));
                }
                let vs = parse_id_list(file, line_no, verts)?;
                bags[id] = Some(VertexSet::from_unsorted(vs));
            }
            ["r", id] => root = Some(parse_id(file, line_no, id)?),
            ["o", id, left, right] => {
                let id = parse_id(file, line_no, id)?;
                if id >= bag_count {
                    return Err(parse_err(file, line_no, format!("node id {} out of range", id + 1)));
                }
                let left = parse_usize(file, line_no, left)?;
                let right = parse_usize(file, line_no, right)?;
                order[id] = Some((left, right));
                has_order = true;
            }
            [a, b] => {
                edges.push((parse_id(file, line_no, a)?, parse_id(file, line_no, b)?));
            }
            _ => return Err(parse_err(file, line_no, format!("unrecognized line {line:?}"))),
        }
    }
    let bags: Vec<VertexSet> = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| parse_err(file, 0, format!("bag {} is missing", i + 1))))
        .collect::<Result<_>>()?;

    if has_order {
        let root = root.ok_or_else(|| parse_err(file, 0, "child order lines require a root line"))?;
        let mut left = vec![None; bag_count];
        let mut right = vec![None; bag_count];
        for (id, slot) in order.iter().enumerate() {
            if let Some((l, r)) = slot {
                left[id] = l.checked_sub(1);
                right[id] = r.checked_sub(1);
            }
        }
        let tree = RootedBinaryTree::new(root, left, right)
            .map_err(|e| parse_err(file, 0, e.to_string()))?;
        TreeDecomposition::from_binary(graph, tree, bags)
    } else {
        TreeDecomposition::make_binary(graph, &RawTreeDecomposition { bags, edges, root })
    }
}

pub fn render_tree_decomposition(td: &TreeDecomposition, graph_n: usize) -> String {
    let tree = td.tree();
    let max_bag = td.bags().iter().map(VertexSet::len).max().unwrap_or(0);
    let mut out = format!("s td {} {} {}\n", tree.len(), max_bag, graph_n);
    for (i, bag) in td.bags().iter().enumerate() {
        out.push_str(&format!("b {}", i + 1));
        for v in bag.iter() {
            out.push_str(&format!(" {}", v + 1));
        }
        out.push('\n');
    }
    for x in 0..tree.len() {
        for c in tree.children(x) {
            out.push_str(&format!("{} {}\n", x + 1, c + 1));
        }
    }
    out.push_str(&format!("r {}\n", tree.root() + 1));
    for x in 0..tree.len() {
        let left = tree.left(x).map_or(0, |c| c + 1);
        let right = tree.right(x).map_or(0, |c| c + 1);
        if left != 0 || right != 0 {
            out.push_str(&format!("o {} {} {}\n", x + 1, left, right));
        }
    }
    out
}

pub fn parse_nlc(text: &str, file: &str) -> Result<NlcDecomposition> {
    let mut lines = Lines::new(text, file);
    let (line_no, header) = lines.expect("nlc header")?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let [tag, t, nodes, n] = tokens.as_slice() else {
        return Err(parse_err(file, line_no, "expected `nlc <t> <nodes> <n>`"));
    };
    if *tag != "nlc" {
        return Err(parse_err(file, line_no, "expected `nlc <t> <nodes> <n>`"));
    }
    let t = parse_usize(file, line_no, t)?;
    let node_count = parse_usize(file, line_no, nodes)?;
    let n = parse_usize(file, line_no, n)?;

    let (line_no, section) = lines.expect("NODES section")?;
    if section != "NODES" {
        return Err(parse_err(file, line_no, "expected the NODES section"));
    }
    let mut left = vec![None; node_count];
    let mut right = vec![None; node_count];
    let mut vertex_of = vec![None; node_count];
    let mut root = vec![true; node_count];
    for _ in 0..node_count {
        let (line_no, line) = lines.expect("node line")?;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let [id, l, r, v] = tokens.as_slice() else {
            return Err(parse_err(file, line_no, "expected `<id> <left> <right> <vertex>`"));
        };
        let id = parse_id(file, line_no, id)?;
        if id >= node_count {
            return Err(parse_err(file, line_no, format!("node id {} out of range", id + 1)));
        }
        let l = parse_usize(file, line_no, l)?;
        let r = parse_usize(file, line_no, r)?;
        left[id] = l.checked_sub(1);
        right[id] = r.checked_sub(1);
        for child in [l, r].into_iter().flat_map(|c| c.checked_sub(1)) {
            if child >= node_count {
                return Err(parse_err(file, line_no, format!("child id {} out of range", child + 1)));
            }
            root[child] = false;
        }
        vertex_of[id] = parse_usize(file, line_no, v)?.checked_sub(1);
    }
    let root = (0..node_count)
        .find(|&x| root[x])
        .ok_or_else(|| parse_err(file, 0, "no root node"))?;
    let tree = RootedBinaryTree::new(root, left, right)
        .map_err(|e| parse_err(file, 0, e.to_string()))?;

    let (line_no, section) = lines.expect("ALPHA section")?;
    if section != "ALPHA" {
        return Err(parse_err(file, line_no, "expected the ALPHA section"));
    }
    let mut alpha = vec![0; n];
    for _ in 0..n {
        let (line_no, line) = lines.expect("alpha line")?;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let [v, label] = tokens.as_slice() else {
            return Err(parse_err(file, line_no, "expected `<vertex> <label>`"));
        };
        let v = parse_id(file, line_no, v)?;
        if v >= n {
            return Err(parse_err(file, line_no, format!("vertex {} out of range", v + 1)));
        }
        alpha[v] = parse_id(file, line_no, label)?;
    }

    let (line_no, section) = lines.expect("BETA section")?;
    if section != "BETA" {
        return Err(parse_err(file, line_no, "expected the BETA section"));
    }
    let mut edge_map: Vec<Option<Vec<usize>>> = vec![None; node_count];
    for _ in 0..node_count.saturating_sub(1) {
        let (line_no, line) = lines.expect("beta line")?;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let Some((id, images)) = tokens.split_first() else {
            return Err(parse_err(file, line_no, "expected `<node> <images...>`"));
        };
        let id = parse_id(file, line_no, id)?;
        if id >= node_count {
            return Err(parse_err(file, line_no, format!("node id {} out of range", id + 1)));
        }
        if images.len() != t {
            return Err(parse_err(file, line_no, format!("expected {t} label images")));
        }
        edge_map[id] = Some(parse_id_list(file, line_no, images)?);
    }

    let (line_no, section) = lines.expect("REL section")?;
    if section != "REL" {
        return Err(parse_err(file, line_no, "expected the REL section"));
    }
    let mut relation: Vec<Option<Vec<bool>>> = (0..node_count)
        .map(|x| (!tree.is_leaf(x)).then(|| vec![false; t * t]))
        .collect();
    while let Some((line_no, line)) = lines.next() {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let Some((id, pairs)) = tokens.split_first() else {
            return Err(parse_err(file, line_no, "expected `<node> <a b ...>`"));
        };
        let id = parse_id(file, line_no, id)?;
        if pairs.len() % 2 != 0 {
            return Err(parse_err(file, line_no, "relation pairs must come in twos"));
        }
        let matrix = relation
            .get_mut(id)
            .and_then(Option::as_mut)
            .ok_or_else(|| parse_err(file, line_no, format!("node {} is not internal", id + 1)))?;
        for pair in pairs.chunks(2) {
            let a = parse_id(file, line_no, pair[0])?;
            let b = parse_id(file, line_no, pair[1])?;
            if a >= t || b >= t {
                return Err(parse_err(file, line_no, "relation label out of range"));
            }
            matrix[a * t + b] = true;
        }
    }

    NlcDecomposition::new(tree, t, vertex_of, alpha, edge_map, relation)
}

pub fn render_nlc(d: &NlcDecomposition) -> String {
    let tree = d.tree();
    let t = d.labels();
    let mut out = format!("nlc {} {} {}\n", t, tree.len(), d.n());
    out.push_str("NODES\n");
    for x in 0..tree.len() {
        out.push_str(&format!(
            "{} {} {} {}\n",
            x + 1,
            tree.left(x).map_or(0, |c| c + 1),
            tree.right(x).map_or(0, |c| c + 1),
            d.vertex_of(x).map_or(0, |v| v + 1),
        ));
    }
    out.push_str("ALPHA\n");
    for v in 0..d.n() {
        out.push_str(&format!("{} {}\n", v + 1, d.alpha(v) + 1));
    }
    out.push_str("BETA\n");
    for x in 0..tree.len() {
        if let Some(map) = d.edge_map(x) {
            out.push_str(&format!("{}", x + 1));
            for &img in map {
                out.push_str(&format!(" {}", img + 1));
            }
            out.push('\n');
        }
    }
    out.push_str("REL\n");
    for x in 0..tree.len() {
        if tree.is_leaf(x) {
            continue;
        }
        out.push_str(&format!("{}", x + 1));
        for a in 0..t {
            for b in 0..t {
                if d.relation_contains(x, a, b) {
                    out.push_str(&format!(" {} {}", a + 1, b + 1));
                }
            }
        }
        out.push('\n');
    }
    out
}

pub fn parse_cover(text: &str, file: &str) -> Result<(usize, VertexSet)> {
    let mut lines = Lines::new(text, file);
    let (line_no, line) = lines.expect("cover line")?;
    let tokens: Vec<&str> = line.split_whitespace().collect();
    let Some((tag, rest)) = tokens.split_first() else {
        return Err(parse_err(file, line_no, "expected `cover <t> <ids...>`"));
    };
    if *tag != "cover" || rest.is_empty() {
        return Err(parse_err(file, line_no, "expected `cover <t> <ids...>`"));
    }
    let t = parse_usize(file, line_no, rest[0])?;
    let ids = parse_id_list(file, line_no, &rest[1..])?;
    Ok((t, VertexSet::from_unsorted(ids)))
}

pub fn render_cover(t: usize, cover: &VertexSet) -> String {
    let mut out = format!("cover {t}");
    for v in cover.iter() {
        out.push_str(&format!(" {}", v + 1));
    }
    out.push('\n');
    out
}

pub fn parse_sample(text: &str, file: &str) -> Result<Sample> {
    let mut plus = None;
    let mut minus = None;
    let mut lines = Lines::new(text, file);
    while let Some((line_no, line)) = lines.next() {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let Some((tag, ids)) = tokens.split_first() else {
            continue;
        };
        let slot = match *tag {
            "+" => &mut plus,
            "-" => &mut minus,
            _ => return Err(parse_err(file, line_no, "expected a `+` or `-` line")),
        };
        if slot.is_some() {
            return Err(parse_err(file, line_no, "duplicate sign line"));
        }
        *slot = Some(VertexSet::from_unsorted(parse_id_list(file, line_no, ids)?));
    }
    match (plus, minus) {
        (Some(p), Some(m)) => Sample::new(p, m).map_err(|e| parse_err(file, 0, e.to_string())),
        _ => Err(parse_err(file, 0, "sample needs one `+` line and one `-` line")),
    }
}

pub fn render_sample(sample: &Sample) -> String {
    let mut out = String::from("+");
    for v in sample.plus().iter() {
        out.push_str(&format!(" {}", v + 1));
    }
    out.push_str("\n-");
    for v in sample.minus().iter() {
        out.push_str(&format!(" {}", v + 1));
    }
    out.push('\n');
    out
}

pub fn parse_array_code(text: &str, file: &str) -> Result<ArrayCode> {
    let mut lines = Lines::new(text, file);
    let (line_no, line) = lines.expect("code line")?;
    let entries = line
        .split_whitespace()
        .map(|token| {
            if token == "_" {
                Ok(None)
            } else {
                parse_id(file, line_no, token).map(Some)
            }
        })
        .collect::<Result<Vec<Option<Vertex>>>>()?;
    Ok(ArrayCode::new(entries))
}

pub fn render_array_code(code: &ArrayCode) -> String {
    let tokens: Vec<String> = code
        .entries()
        .iter()
        .map(|e| match e {
            Some(v) => (v + 1).to_string(),
            None => "_".to_string(),
        })
        .collect();
    format!("{}\n", tokens.join(" "))
}

pub fn parse_labeled_code(text: &str, file: &str) -> Result<LabeledCode> {
    let mut y_plus = None;
    let mut y_minus = None;
    let mut bits = None;
    let mut lines = Lines::new(text, file);
    while let Some((line_no, line)) = lines.next() {
        if let Some(rest) = line.strip_prefix("Y+:") {
            let ids: Vec<&str> = rest.split_whitespace().collect();
            y_plus = Some(VertexSet::from_unsorted(parse_id_list(file, line_no, &ids)?));
        } else if let Some(rest) = line.strip_prefix("Y-:") {
            let ids: Vec<&str> = rest.split_whitespace().collect();
            y_minus = Some(VertexSet::from_unsorted(parse_id_list(file, line_no, &ids)?));
        } else if let Some(rest) = line.strip_prefix("bits:") {
            bits = Some(Bits::parse(rest.trim()).map_err(|e| parse_err(file, line_no, e.to_string()))?);
        } else {
            return Err(parse_err(file, line_no, format!("unrecognized line {line:?}")));
        }
    }
    match (y_plus, y_minus, bits) {
        (Some(y_plus), Some(y_minus), Some(bits)) => Ok(LabeledCode {
            y_plus,
            y_minus,
            bits,
        }),
        _ => Err(parse_err(file, 0, "labeled code needs Y+:, Y-: and bits: lines")),
    }
}

pub fn render_labeled_code(code: &LabeledCode) -> String {
    let ids = |s: &VertexSet| -> String {
        s.iter().map(|v| format!(" {}", v + 1)).collect()
    };
    format!(
        "Y+:{}\nY-:{}\nbits: {}\n",
        ids(&code.y_plus),
        ids(&code.y_minus),
        code.bits
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{gen_nlc_graph, gen_partial_ktree};

    #[test]
    fn graph_round_trip() {
        let (g, _) = gen_partial_ktree(10, 2, 800, 4).unwrap();
        let text = render_graph(&g);
        assert!(text.starts_with(&format!("p 10 {}\n", g.edge_count())));
        let back = parse_graph(&text, "g.gr").unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn graph_parse_errors_carry_positions() {
        let err = parse_graph("p 2 1\n1 3\n", "bad.gr").unwrap_err();
        assert!(err.to_string().starts_with("bad.gr:"), "{err}");
        let err = parse_graph("p 2 2\n1 2\n", "bad.gr").unwrap_err();
        assert!(err.to_string().contains("missing"), "{err}");
        assert!(parse_graph("q 2 1\n1 2\n", "bad.gr").is_err());
    }

    #[test]
    fn tree_decomposition_round_trip() {
        let (g, td) = gen_partial_ktree(12, 2, 900, 7).unwrap();
        let text = render_tree_decomposition(&td, g.n());
        let back = parse_tree_decomposition(&text, "d.td", &g).unwrap();
        assert_eq!(back.bags(), td.bags());
        assert_eq!(back.tree(), td.tree());
        assert_eq!(back.width(), td.width());
    }

    #[test]
    fn tree_decomposition_without_order_lines_is_binarized() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let text = "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n";
        let td = parse_tree_decomposition(text, "d.td", &g).unwrap();
        assert_eq!(td.width(), 1);
        assert_eq!(td.tree().len(), 2);
    }

    #[test]
    fn nlc_round_trip() {
        let (_, d) = gen_nlc_graph(9, 2, 11).unwrap();
        let text = render_nlc(&d);
        let back = parse_nlc(&text, "d.nlc").unwrap();
        assert_eq!(render_nlc(&back), text);
        assert_eq!(back.realize_graph(), d.realize_graph());
    }

    #[test]
    fn cover_round_trip() {
        let cover = VertexSet::from_unsorted(vec![0, 3, 5]);
        let text = render_cover(4, &cover);
        assert_eq!(text, "cover 4 1 4 6\n");
        let (t, back) = parse_cover(&text, "c.vc").unwrap();
        assert_eq!(t, 4);
        assert_eq!(back, cover);
    }

    #[test]
    fn sample_round_trip() {
        let s = Sample::new(
            VertexSet::from_unsorted(vec![0, 2]),
            VertexSet::from_unsorted(vec![5]),
        )
        .unwrap();
        let text = render_sample(&s);
        assert_eq!(text, "+ 1 3\n- 6\n");
        let back = parse_sample(&text, "s.sample").unwrap();
        assert_eq!(back, s);

        let empty = parse_sample("+\n-\n", "s.sample").unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn array_code_round_trip() {
        let code = ArrayCode::new(vec![Some(4), None, Some(0)]);
        let text = render_array_code(&code);
        assert_eq!(text, "5 _ 1\n");
        assert_eq!(parse_array_code(&text, "k.code").unwrap(), code);
    }

    #[test]
    fn labeled_code_round_trip() {
        let code = LabeledCode {
            y_plus: VertexSet::from_unsorted(vec![1]),
            y_minus: VertexSet::new(),
            bits: Bits::parse("0110").unwrap(),
        };
        let text = render_labeled_code(&code);
        assert_eq!(text, "Y+: 2\nY-:\nbits: 0110\n");
        assert_eq!(parse_labeled_code(&text, "k.code").unwrap(), code);
    }
}
