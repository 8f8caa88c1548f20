//! Schematic SVG rendering of a diagram JSON document.
//!
//! One row of squares per bubble (the jacket quadrangulation, sides labeled
//! by color, corners by surface vertex id), each square with its removed
//! disc marked by the tube it belongs to, and the curves drawn as colored
//! paths: alpha red, beta green, gamma blue. Curves of a family whose
//! selection failed are drawn dashed, all candidates included.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("diagram schema error: {0}")]
pub struct SchemaError(pub String);

const SIZE: f64 = 120.0;
const GAP: f64 = 70.0;
const MARGIN: f64 = 50.0;
const INSET: f64 = 0.32;

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, SchemaError> {
    v.get(key)
        .ok_or_else(|| SchemaError(format!("missing field `{key}`")))
}

fn array<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>, SchemaError> {
    field(v, key)?
        .as_array()
        .ok_or_else(|| SchemaError(format!("`{key}` is not an array")))
}

fn uint(v: &Value, key: &str) -> Result<u64, SchemaError> {
    field(v, key)?
        .as_u64()
        .ok_or_else(|| SchemaError(format!("`{key}` is not a non-negative integer")))
}

fn string<'a>(v: &'a Value, key: &str) -> Result<&'a str, SchemaError> {
    field(v, key)?
        .as_str()
        .ok_or_else(|| SchemaError(format!("`{key}` is not a string")))
}

fn pair(v: &Value, key: &str) -> Result<[u64; 2], SchemaError> {
    let a = array(v, key)?;
    match a.as_slice() {
        [x, y] => Ok([
            x.as_u64()
                .ok_or_else(|| SchemaError(format!("bad `{key}`")))?,
            y.as_u64()
                .ok_or_else(|| SchemaError(format!("bad `{key}`")))?,
        ]),
        _ => Err(SchemaError(format!("`{key}` must have two entries"))),
    }
}

/// Node reference as written in the JSON (`+3`, `-1`), ordered positives
/// first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct NodeKey(bool, u64);

fn node_key(s: &str) -> Result<NodeKey, SchemaError> {
    let bad = || SchemaError(format!("bad node reference `{s}`"));
    let (sign, rest) = s.split_at(1);
    let idx: u64 = rest.parse().map_err(|_| bad())?;
    match sign {
        "+" => Ok(NodeKey(false, idx)),
        "-" => Ok(NodeKey(true, idx)),
        _ => Err(bad()),
    }
}

fn node_name(k: &NodeKey) -> String {
    format!("{}{}", if k.0 { '-' } else { '+' }, k.1)
}

#[derive(Clone, Copy)]
struct Point(f64, f64);

struct Square {
    origin: Point,
}

impl Square {
    /// Outer corner `t` (between sides `t` and `t+1`); sides run bottom,
    /// right, top, left.
    fn corner(&self, t: usize) -> Point {
        let Point(x, y) = self.origin;
        match t % 4 {
            0 => Point(x + SIZE, y + SIZE),
            1 => Point(x + SIZE, y),
            2 => Point(x, y),
            _ => Point(x, y + SIZE),
        }
    }

    fn center(&self) -> Point {
        Point(self.origin.0 + SIZE / 2.0, self.origin.1 + SIZE / 2.0)
    }

    fn inner(&self, t: usize) -> Point {
        let (c, m) = (self.corner(t), self.center());
        Point(
            c.0 + (m.0 - c.0) * INSET * 2.0,
            c.1 + (m.1 - c.1) * INSET * 2.0,
        )
    }
}

fn mid(a: Point, b: Point) -> Point {
    Point((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0)
}

/// Renders the diagram document to SVG text.
pub fn render(doc: &Value) -> Result<String, SchemaError> {
    let choice = field(doc, "choice")?;
    let special = uint(choice, "special")?;
    let ap = pair(choice, "alpha_pair")?;
    let bp = pair(choice, "beta_pair")?;
    let order = [ap[0], bp[0], ap[1], bp[1]];
    let side_of = |c: u64| order.iter().position(|&x| x == c);
    let corner_of = |p: [u64; 2]| -> Result<usize, SchemaError> {
        side_of(p[0]).ok_or_else(|| SchemaError(format!("corner {p:?} not in square order")))
    };
    let genus = uint(doc, "genus")?;
    let loops = uint(doc, "L")?;
    let status = string(field(doc, "status")?, "kind")?;
    let surface = field(doc, "surface")?;
    let vertices = array(surface, "vertices")?;
    let edges = array(surface, "edges")?;
    array(surface, "faces")?;

    // bubble of every node, through the corner end of its diagonals
    let mut bubble_of: BTreeMap<NodeKey, u64> = BTreeMap::new();
    for e in edges {
        let label = field(e, "label")?;
        if string(label, "kind")? == "Diagonal" {
            let node = node_key(string(label, "node")?)?;
            let from = uint(e, "from")? as usize;
            let v = vertices
                .get(from)
                .ok_or_else(|| SchemaError(format!("vertex {from} out of range")))?;
            bubble_of.insert(node, uint(v, "bubble")?);
        }
    }
    let mut rows: BTreeMap<u64, Vec<NodeKey>> = BTreeMap::new();
    for (node, b) in &bubble_of {
        rows.entry(*b).or_default().push(node.clone());
    }
    let mut squares: BTreeMap<NodeKey, Square> = BTreeMap::new();
    let mut width = 0.0f64;
    for (r, nodes) in rows.values().enumerate() {
        for (k, node) in nodes.iter().enumerate() {
            let origin = Point(
                MARGIN + k as f64 * (SIZE + GAP),
                MARGIN + 40.0 + r as f64 * (SIZE + GAP),
            );
            width = width.max(origin.0 + SIZE + MARGIN);
            squares.insert(node.clone(), Square { origin });
        }
    }
    let height = MARGIN + 40.0 + rows.len() as f64 * (SIZE + GAP) + MARGIN;
    let width = width.max(480.0);
    let square = |k: &NodeKey| {
        squares
            .get(k)
            .ok_or_else(|| SchemaError(format!("node {} has no square", node_name(k))))
    };

    // tubes: special line -> (positive end, negative end)
    let mut tubes: BTreeMap<(u64, u64), (NodeKey, NodeKey)> = BTreeMap::new();
    let line_key = |l: &Value| -> Result<(u64, u64), SchemaError> {
        Ok((uint(l, "color")?, uint(l, "black")?))
    };
    let mut edge_geom: Vec<Vec<(Point, Point)>> = Vec::with_capacity(edges.len());
    // negative end of each tube, from the inner vertex at the far end
    for e in edges {
        let label = field(e, "label")?;
        if string(label, "kind")? == "Longitudinal" {
            let key = line_key(field(label, "line")?)?;
            let to = uint(e, "to")? as usize;
            let v = vertices
                .get(to)
                .ok_or_else(|| SchemaError(format!("vertex {to} out of range")))?;
            tubes.insert(key, (NodeKey(false, key.1), node_key(string(v, "node")?)?));
        }
    }

    for e in edges {
        let label = field(e, "label")?;
        let seg = match string(label, "kind")? {
            "Line" => {
                let l = field(label, "line")?;
                let (color, black) = line_key(l)?;
                let t = side_of(color).ok_or_else(|| SchemaError(format!("side color {color}")))?;
                let sq = square(&NodeKey(false, black))?;
                vec![(sq.corner(t + 3), sq.corner(t))]
            }
            "Diagonal" => {
                let sq = square(&node_key(string(label, "node")?)?)?;
                let t = corner_of(pair(label, "corner")?)?;
                vec![(sq.corner(t), sq.inner(t))]
            }
            "InnerArc" => {
                let sq = square(&node_key(string(label, "node")?)?)?;
                let color = uint(label, "side")?;
                let t = side_of(color).ok_or_else(|| SchemaError(format!("side color {color}")))?;
                vec![(sq.inner(t + 3), sq.inner(t))]
            }
            "Longitudinal" => {
                let key = line_key(field(label, "line")?)?;
                let t = corner_of(pair(label, "corner")?)?;
                let (p, n) = &tubes[&key];
                let (sp, sn) = (square(p)?, square(n)?);
                vec![(sp.inner(t), sp.center()), (sn.center(), sn.inner(t))]
            }
            other => return Err(SchemaError(format!("unknown edge kind `{other}`"))),
        };
        edge_geom.push(seg);
    }

    let failed: Vec<&str> = array(doc, "failures")?
        .iter()
        .map(|f| string(f, "family"))
        .collect::<Result<_, _>>()?;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{MARGIN}" y="{:.0}" font-family="sans-serif" font-size="16">special color {special}, pairs {}{}|{}{}: genus {genus}, L={loops}, {status}</text>"#,
        MARGIN - 10.0,
        ap[0],
        ap[1],
        bp[0],
        bp[1]
    );
    for (b, nodes) in &rows {
        let first = &squares[&nodes[0]];
        let _ = writeln!(
            svg,
            r##"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="12" fill="#555">{special}^ bubble {}</text>"##,
            first.origin.0,
            first.origin.1 - 22.0,
            b + 1
        );
    }

    // surface vertex id at outer corner t of each square
    let mut corner_vertex: BTreeMap<(NodeKey, usize), u64> = BTreeMap::new();
    for e in edges {
        let label = field(e, "label")?;
        if string(label, "kind")? == "Diagonal" {
            let t = corner_of(pair(label, "corner")?)?;
            corner_vertex.insert((node_key(string(label, "node")?)?, t), uint(e, "from")?);
        }
    }
    for (node, sq) in &squares {
        let Point(x, y) = sq.origin;
        let _ = writeln!(
            svg,
            r##"<rect class="square" x="{x:.1}" y="{y:.1}" width="{SIZE:.1}" height="{SIZE:.1}" fill="#f7f7f7" stroke="#333" stroke-width="1.5"/>"##
        );
        let c = sq.center();
        let _ = writeln!(
            svg,
            r#"<text class="node" x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="11" font-weight="bold">{}</text>"#,
            x + 6.0,
            y + 15.0,
            node_name(node)
        );
        for (t, color) in order.iter().enumerate() {
            let m = mid(sq.corner(t + 3), sq.corner(t));
            let (dx, dy) = ((m.0 - c.0) * 0.12, (m.1 - c.1) * 0.12);
            let _ = writeln!(
                svg,
                r#"<text class="side" x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="12" text-anchor="middle" dominant-baseline="middle">{color}</text>"#,
                m.0 + dx,
                m.1 + dy
            );
            if let Some(v) = corner_vertex.get(&(node.clone(), t)) {
                let p = sq.corner(t);
                let (dx, dy) = ((p.0 - c.0) * 0.18, (p.1 - c.1) * 0.18);
                let _ = writeln!(
                    svg,
                    r##"<text class="corner" x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="9" fill="#777" text-anchor="middle" dominant-baseline="middle">v{v}</text>"##,
                    p.0 + dx,
                    p.1 + dy
                );
            }
        }
    }
    for (k, ((color, black), (p, n))) in tubes.iter().enumerate() {
        for end in [p, n] {
            let sq = square(end)?;
            let pts: Vec<String> = (0..4)
                .map(|t| {
                    let q = sq.inner(t);
                    format!("{:.1},{:.1}", q.0, q.1)
                })
                .collect();
            let c = sq.center();
            let _ = writeln!(
                svg,
                r##"<polygon class="disc" data-tube="{k}" points="{}" fill="#d9d9d9" stroke="#888" stroke-width="0.8"/>"##,
                pts.join(" ")
            );
            let _ = writeln!(
                svg,
                r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="9" text-anchor="middle" dominant-baseline="middle">{color}:{}</text>"#,
                c.0, c.1, black
            );
        }
    }

    for curve in array(doc, "curves")? {
        let family = string(curve, "family")?;
        let selected = field(curve, "selected")?
            .as_bool()
            .ok_or_else(|| SchemaError("`selected` is not a boolean".into()))?;
        let family_failed = failed.contains(&family);
        if !selected && !family_failed {
            continue;
        }
        let (stroke, offset) = match family {
            "Alpha" => ("#d62728", -3.0),
            "Beta" => ("#2ca02c", 0.0),
            "Gamma" => ("#1f77b4", 3.0),
            other => return Err(SchemaError(format!("unknown family `{other}`"))),
        };
        let mut d = String::new();
        for step in array(curve, "walk")? {
            let id = step
                .as_i64()
                .ok_or_else(|| SchemaError("walk entries must be integers".into()))?;
            let idx = (id.unsigned_abs() as usize)
                .checked_sub(1)
                .filter(|&i| i < edge_geom.len())
                .ok_or_else(|| SchemaError(format!("walk references missing edge {id}")))?;
            let mut segs = edge_geom[idx].clone();
            if id < 0 {
                segs.reverse();
                for s in &mut segs {
                    *s = (s.1, s.0);
                }
            }
            for (a, b) in segs {
                let _ = write!(
                    d,
                    "M{:.1} {:.1} L{:.1} {:.1} ",
                    a.0 + offset,
                    a.1 + offset,
                    b.0 + offset,
                    b.1 + offset
                );
            }
        }
        let dash = if selected {
            ""
        } else {
            r#" stroke-dasharray="6,4""#
        };
        let _ = writeln!(
            svg,
            r#"<path class="curve {}" d="{}" fill="none" stroke="{stroke}" stroke-width="2.5" stroke-linecap="round"{dash}/>"#,
            family.to_lowercase(),
            d.trim_end()
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
