//! Closed, bipartite, properly edge-colored graphs (GEMs).
//!
//! A graph of rank `d` has `d + 1` colors `0..=d` and `2n` nodes split into
//! `n` positive (black) and `n` negative (white) nodes. Every color is a
//! perfect matching between the two sides, stored as a permutation
//! `matchings[c][black] = white`. All indices are 0-based in the API; the
//! `.gem` text format and [`Node`]'s `Display` are 1-based.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Color of a line, `0..=rank`.
pub type Color = usize;

/// Side of the bipartition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

/// A node reference: sign plus 0-based index within its side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Node {
    pub sign: Sign,
    pub index: usize,
}

impl Node {
    pub const fn pos(index: usize) -> Self {
        Node {
            sign: Sign::Pos,
            index,
        }
    }

    pub const fn neg(index: usize) -> Self {
        Node {
            sign: Sign::Neg,
            index,
        }
    }

    /// Dense id in `0..2n`: positives first, then negatives.
    pub fn dense(self, half: usize) -> usize {
        match self.sign {
            Sign::Pos => self.index,
            Sign::Neg => half + self.index,
        }
    }

    pub fn from_dense(id: usize, half: usize) -> Self {
        if id < half {
            Node::pos(id)
        } else {
            Node::neg(id - half)
        }
    }

    pub fn is_pos(self) -> bool {
        self.sign == Sign::Pos
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.is_pos() { '+' } else { '-' };
        write!(f, "{s}{}", self.index + 1)
    }
}

impl Serialize for Node {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Identifies a line by its color and its positive endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LineId {
    pub color: Color,
    pub black: usize,
}

/// Serialized as `{"color": c, "black": b}` with `b` 1-based, like nodes.
impl Serialize for LineId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("LineId", 2)?;
        st.serialize_field("color", &self.color)?;
        st.serialize_field("black", &(self.black + 1))?;
        st.end()
    }
}

impl fmt::Display for LineId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.color, self.black + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Defect {
    #[error("rank {0} is below the minimum of 2")]
    BadRank(usize),
    #[error("matching of color {color} is not a bijection")]
    MatchingNotBijective { color: Color },
    #[error("expected {expected} matchings, found {found}")]
    ColorCountMismatch { expected: usize, found: usize },
    #[error("graph has {components} connected components")]
    Disconnected { components: usize },
}

impl Defect {
    pub fn kind(&self) -> &'static str {
        match self {
            Defect::BadRank(_) => "BadRank",
            Defect::MatchingNotBijective { .. } => "MatchingNotBijective",
            Defect::ColorCountMismatch { .. } => "ColorCountMismatch",
            Defect::Disconnected { .. } => "Disconnected",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub defects: Vec<Defect>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.defects.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: index out of range in `{token}`")]
    OutOfRange { line: usize, token: String },
    #[error("line {line}: duplicate line of color {color} at black node {}", black + 1)]
    DuplicateLine {
        line: usize,
        color: Color,
        black: usize,
    },
    #[error("missing line of color {color} at black node {}", black + 1)]
    MissingLine { color: Color, black: usize },
    #[error("{0}")]
    Semantic(Defect),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("empty color set")]
    EmptyColorSet,
    #[error("color {0} out of range")]
    ColorOutOfRange(Color),
    #[error("{0}")]
    Invalid(Defect),
}

/// A (d+1)-colored bipartite graph.
///
/// Constructed through [`ColoredGraph::new`] (checked) or
/// [`ColoredGraph::from_raw`] (unchecked, for feeding [`validate`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColoredGraph {
    rank: usize,
    half: usize,
    matchings: Vec<Vec<usize>>,
}

impl ColoredGraph {
    /// Builds a graph, requiring `rank + 1` bijective matchings.
    ///
    /// Rank 1 is accepted here because bubbles on two colors are rank-1
    /// graphs (bicolored cycles); [`validate`] still flags it.
    pub fn new(rank: usize, matchings: Vec<Vec<usize>>) -> Result<Self, Defect> {
        if rank < 1 {
            return Err(Defect::BadRank(rank));
        }
        if matchings.len() != rank + 1 {
            return Err(Defect::ColorCountMismatch {
                expected: rank + 1,
                found: matchings.len(),
            });
        }
        let half = matchings[0].len();
        for (color, m) in matchings.iter().enumerate() {
            if m.len() != half || !is_permutation(m) {
                return Err(Defect::MatchingNotBijective { color });
            }
        }
        if half == 0 {
            return Err(Defect::MatchingNotBijective { color: 0 });
        }
        Ok(ColoredGraph {
            rank,
            half,
            matchings,
        })
    }

    /// Stores the matchings without any check.
    pub fn from_raw(rank: usize, half: usize, matchings: Vec<Vec<usize>>) -> Self {
        ColoredGraph {
            rank,
            half,
            matchings,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn colors(&self) -> std::ops::RangeInclusive<Color> {
        0..=self.rank
    }

    pub fn half_size(&self) -> usize {
        self.half
    }

    pub fn node_count(&self) -> usize {
        2 * self.half
    }

    pub fn line_count(&self) -> usize {
        (self.rank + 1) * self.half
    }

    pub fn matching(&self, color: Color) -> &[usize] {
        &self.matchings[color]
    }

    pub fn matchings(&self) -> &[Vec<usize>] {
        &self.matchings
    }

    /// White endpoint of the line.
    pub fn white_of(&self, line: LineId) -> usize {
        self.matchings[line.color][line.black]
    }

    pub fn has_line(&self, line: LineId) -> bool {
        line.color <= self.rank && line.black < self.half
    }

    /// The node joined to `node` by its `color` line.
    pub fn neighbor(&self, node: Node, color: Color) -> Node {
        match node.sign {
            Sign::Pos => Node::neg(self.matchings[color][node.index]),
            Sign::Neg => Node::pos(self.inverse(color)[node.index]),
        }
    }

    /// The line of `color` incident to `node`.
    pub fn line_at(&self, node: Node, color: Color) -> LineId {
        let black = match node.sign {
            Sign::Pos => node.index,
            Sign::Neg => self.inverse(color)[node.index],
        };
        LineId { color, black }
    }

    /// Inverse permutation of one matching (white -> black).
    pub fn inverse(&self, color: Color) -> Vec<usize> {
        invert(&self.matchings[color])
    }

    /// All lines sorted by (color, black).
    pub fn lines(&self) -> impl Iterator<Item = LineId> + '_ {
        self.colors()
            .flat_map(move |color| (0..self.half).map(move |black| LineId { color, black }))
    }
}

pub(crate) fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

fn is_permutation(m: &[usize]) -> bool {
    let mut seen = vec![false; m.len()];
    for &w in m {
        if w >= m.len() || seen[w] {
            return false;
        }
        seen[w] = true;
    }
    true
}

/// Parses the `.gem` text format.
pub fn parse(text: &str) -> Result<ColoredGraph, ParseError> {
    let mut header: Vec<(usize, usize)> = Vec::new();
    let mut records: Vec<(usize, [usize; 3], String)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        match header.len() {
            0 => {
                if tokens != ["gem", "1"] {
                    return Err(syntax(line, format!("expected `gem 1`, found `{trimmed}`")));
                }
                header.push((line, 1));
            }
            1 | 2 => {
                let key = if header.len() == 1 { "rank" } else { "half" };
                if tokens.len() != 2 || tokens[0] != key {
                    return Err(syntax(
                        line,
                        format!("expected `{key} <int>`, found `{trimmed}`"),
                    ));
                }
                let value = parse_int(line, tokens[1])?;
                header.push((line, value));
            }
            _ => {
                if tokens.len() != 3 {
                    return Err(syntax(
                        line,
                        format!("expected `<color> <black> <white>`, found `{trimmed}`"),
                    ));
                }
                let mut v = [0; 3];
                for (slot, tok) in v.iter_mut().zip(&tokens) {
                    *slot = parse_int(line, tok)?;
                }
                records.push((line, v, trimmed.to_string()));
            }
        }
    }
    if header.len() < 3 {
        return Err(syntax(
            text.lines().count().max(1),
            "truncated header".into(),
        ));
    }
    let rank = header[1].1;
    let half = header[2].1;
    if rank < 2 {
        return Err(ParseError::Semantic(Defect::BadRank(rank)));
    }
    if half == 0 {
        return Err(syntax(header[2].0, "half must be at least 1".into()));
    }

    let mut slots: Vec<Vec<Option<usize>>> = vec![vec![None; half]; rank + 1];
    for (line, [color, black, white], text) in records {
        if color > rank || black == 0 || black > half || white == 0 || white > half {
            return Err(ParseError::OutOfRange { line, token: text });
        }
        let slot = &mut slots[color][black - 1];
        if slot.is_some() {
            return Err(ParseError::DuplicateLine {
                line,
                color,
                black: black - 1,
            });
        }
        *slot = Some(white - 1);
    }

    let present = slots
        .iter()
        .filter(|s| s.iter().any(Option::is_some))
        .count();
    if present != rank + 1 {
        return Err(ParseError::Semantic(Defect::ColorCountMismatch {
            expected: rank + 1,
            found: present,
        }));
    }
    let mut matchings = Vec::with_capacity(rank + 1);
    for (color, s) in slots.into_iter().enumerate() {
        let mut m = Vec::with_capacity(half);
        for (black, w) in s.into_iter().enumerate() {
            m.push(w.ok_or(ParseError::MissingLine { color, black })?);
        }
        if !is_permutation(&m) {
            return Err(ParseError::Semantic(Defect::MatchingNotBijective { color }));
        }
        matchings.push(m);
    }
    Ok(ColoredGraph {
        rank,
        half,
        matchings,
    })
}

fn syntax(line: usize, message: String) -> ParseError {
    ParseError::Syntax { line, message }
}

fn parse_int(line: usize, tok: &str) -> Result<usize, ParseError> {
    tok.parse()
        .map_err(|_| syntax(line, format!("`{tok}` is not a non-negative integer")))
}

/// Canonical text form: header, then records sorted by (color, black).
pub fn serialize(g: &ColoredGraph) -> String {
    let mut out = format!("gem 1\nrank {}\nhalf {}\n", g.rank, g.half);
    for line in g.lines() {
        out.push_str(&format!(
            "{} {} {}\n",
            line.color,
            line.black + 1,
            g.white_of(line) + 1
        ));
    }
    out
}

/// Reports every structural defect of a possibly malformed graph.
pub fn validate(g: &ColoredGraph) -> ValidationReport {
    let mut defects = Vec::new();
    if g.rank < 2 {
        defects.push(Defect::BadRank(g.rank));
    }
    if g.matchings.len() != g.rank + 1 {
        defects.push(Defect::ColorCountMismatch {
            expected: g.rank + 1,
            found: g.matchings.len(),
        });
    }
    let mut bijective = true;
    for (color, m) in g.matchings.iter().enumerate() {
        if m.len() != g.half || !is_permutation(m) {
            defects.push(Defect::MatchingNotBijective { color });
            bijective = false;
        }
    }
    if bijective && g.half > 0 && !g.matchings.is_empty() {
        let all: Vec<Color> = (0..g.matchings.len()).collect();
        let count = raw_components(g, &all).len();
        if count > 1 {
            defects.push(Defect::Disconnected { components: count });
        }
    }
    ValidationReport { defects }
}

/// Requires a defect-free graph; used as the precondition gate downstream.
pub fn require_valid(g: &ColoredGraph) -> Result<(), Defect> {
    match validate(g).defects.into_iter().next() {
        Some(d) => Err(d),
        None => Ok(()),
    }
}

/// Connected components of the subgraph spanned by `colors`, as sorted dense
/// node-id lists, ordered by their smallest member.
pub fn components(g: &ColoredGraph, colors: &[Color]) -> Result<Vec<Vec<usize>>, GraphError> {
    if colors.is_empty() {
        return Err(GraphError::EmptyColorSet);
    }
    if let Some(&c) = colors.iter().find(|&&c| c > g.rank) {
        return Err(GraphError::ColorOutOfRange(c));
    }
    Ok(raw_components(g, colors))
}

fn raw_components(g: &ColoredGraph, colors: &[Color]) -> Vec<Vec<usize>> {
    let n = g.half;
    let mut parent: Vec<usize> = (0..2 * n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &c in colors {
        for (b, &w) in g.matchings[c].iter().enumerate() {
            let (ra, rb) = (find(&mut parent, b), find(&mut parent, n + w));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; 2 * n];
    for v in 0..2 * n {
        let r = find(&mut parent, v);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(v);
    }
    groups
}

pub fn is_connected(g: &ColoredGraph) -> bool {
    let all: Vec<Color> = g.colors().collect();
    raw_components(g, &all).len() == 1
}

/// The elementary melon: two nodes joined by `rank + 1` parallel lines.
pub fn generate_melon(rank: usize) -> Result<ColoredGraph, Defect> {
    if rank < 2 {
        return Err(Defect::BadRank(rank));
    }
    Ok(ColoredGraph {
        rank,
        half: 1,
        matchings: vec![vec![0]; rank + 1],
    })
}

/// Uniformly random matchings, resampled until the graph is connected.
pub fn random_connected<R: Rng + ?Sized>(rank: usize, half: usize, rng: &mut R) -> ColoredGraph {
    assert!(
        rank >= 2 && half >= 1,
        "random_connected needs rank >= 2 and half >= 1"
    );
    loop {
        let matchings = (0..=rank)
            .map(|_| {
                let mut m: Vec<usize> = (0..half).collect();
                m.shuffle(rng);
                m
            })
            .collect();
        let g = ColoredGraph {
            rank,
            half,
            matchings,
        };
        if is_connected(&g) {
            return g;
        }
    }
}

/// Colors of the graph other than those listed.
pub fn complement(g: &ColoredGraph, excluded: &[Color]) -> Vec<Color> {
    let ex: BTreeSet<Color> = excluded.iter().copied().collect();
    g.colors().filter(|c| !ex.contains(c)).collect()
}
