//! Edge colorings of complete graphs and the basic Gallai analyzers.
//!
//! Vertices are `0..n`. Edges are unordered pairs `{u,v}` with `u < v`,
//! indexed in the order `{0,1},{0,2},{1,2},{0,3},...` (grouped by the larger
//! endpoint), so that the edges of `K_{j+1}` extend those of `K_j` by a
//! contiguous block. Colors are `1..=k`; `0` marks an unassigned edge inside
//! partial colorings.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use std::collections::BTreeSet;
use std::fmt;

/// A color symbol. Valid colors are `1..=k` for the enclosing budget `k`.
pub type ColorId = u32;

/// Index of edge `{u,v}` (`u < v`) in the block-by-larger-endpoint order.
#[inline]
pub const fn edge_index(u: usize, v: usize) -> usize {
    debug_assert!(u < v);
    v * (v - 1) / 2 + u
}

/// Number of edges of `K_n` (zero for `n <= 1`).
#[inline]
pub const fn edge_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Endpoints `(u, v)` of the edge with the given index.
pub fn edge_endpoints(index: usize) -> (usize, usize) {
    let mut v = 1;
    while edge_index(0, v + 1) <= index {
        v += 1;
    }
    (index - edge_index(0, v), v)
}

/// All edges of `K_n` in index order.
pub fn edges(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..n).flat_map(|v| (0..v).map(move |u| (u, v)))
}

/// An edge coloring of `K_n` with colors from `[1, k]`.
///
/// A coloring may be partial (unassigned edges) while it is being built; all
/// analyzers require completeness and reject otherwise.
#[derive(Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    n: usize,
    k: ColorId,
    colors: Vec<ColorId>, // edge-indexed; 0 = unassigned
}

impl EdgeColoring {
    /// Validates and builds a coloring from explicit `((u,v), color)`
    /// assignments. Duplicate edges, out-of-range vertices and out-of-range
    /// colors are each rejected with an error naming the offending entry.
    pub fn new(n: usize, k: ColorId, assignments: &[((usize, usize), ColorId)]) -> Result<Self> {
        let mut colors = vec![0; edge_count(n)];
        for &((u, v), c) in assignments {
            if u >= v || v >= n {
                return Err(Error::VertexOutOfRange { u, v, n });
            }
            if c < 1 || c > k {
                return Err(Error::ColorOutOfRange { u, v, color: c, k });
            }
            let idx = edge_index(u, v);
            if colors[idx] != 0 {
                return Err(Error::DuplicateEdge { u, v });
            }
            colors[idx] = c;
        }
        Ok(EdgeColoring { n, k, colors })
    }

    /// Builds a complete coloring from an edge-indexed color vector.
    pub fn from_colors(n: usize, k: ColorId, colors: Vec<ColorId>) -> Result<Self> {
        if colors.len() < edge_count(n) {
            let (u, v) = edge_endpoints(colors.len());
            return Err(Error::IncompleteColoring { u, v });
        }
        if colors.len() > edge_count(n) {
            // The first excess entry would color edge {0, n}.
            return Err(Error::VertexOutOfRange { u: 0, v: n, n });
        }
        for (i, &c) in colors.iter().enumerate() {
            if c < 1 || c > k {
                let (u, v) = edge_endpoints(i);
                return Err(Error::ColorOutOfRange { u, v, color: c, k });
            }
        }
        Ok(EdgeColoring { n, k, colors })
    }

    /// Wraps engine-owned parts without revalidation. The caller guarantees
    /// ranges and length.
    pub(crate) fn from_parts(n: usize, k: ColorId, colors: Vec<ColorId>) -> Self {
        debug_assert_eq!(colors.len(), edge_count(n));
        EdgeColoring { n, k, colors }
    }

    /// The monochromatic coloring of `K_n` in color `c`.
    pub fn monochromatic(n: usize, k: ColorId, c: ColorId) -> Result<Self> {
        if c < 1 || c > k {
            return Err(Error::ColorOutOfRange { u: 0, v: 1, color: c, k });
        }
        Ok(EdgeColoring {
            n,
            k,
            colors: vec![c; edge_count(n)],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Color budget `k`.
    pub fn k(&self) -> ColorId {
        self.k
    }

    /// The color of `{u,v}`, or `None` if unassigned.
    pub fn color(&self, u: usize, v: usize) -> Option<ColorId> {
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        match self.colors[edge_index(u, v)] {
            0 => None,
            c => Some(c),
        }
    }

    /// The color of `{u,v}` assuming the edge is assigned.
    #[inline]
    pub(crate) fn color_unchecked(&self, u: usize, v: usize) -> ColorId {
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        self.colors[edge_index(u, v)]
    }

    /// Edge-indexed colors, `0` for unassigned.
    pub fn raw_colors(&self) -> &[ColorId] {
        &self.colors
    }

    pub fn is_complete(&self) -> bool {
        self.colors.iter().all(|&c| c != 0)
    }

    pub(crate) fn require_complete(&self) -> Result<()> {
        match self.colors.iter().position(|&c| c == 0) {
            None => Ok(()),
            Some(i) => {
                let (u, v) = edge_endpoints(i);
                Err(Error::IncompleteColoring { u, v })
            }
        }
    }

    /// All rainbow triangles `{a,b,c}` in lexicographic order. The coloring
    /// is Gallai iff the result is empty.
    pub fn rainbow_triangles(&self) -> Result<Vec<[usize; 3]>> {
        self.require_complete()?;
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in a + 1..self.n {
                let ab = self.colors[edge_index(a, b)];
                for c in b + 1..self.n {
                    let ac = self.colors[edge_index(a, c)];
                    let bc = self.colors[edge_index(b, c)];
                    if ab != ac && ab != bc && ac != bc {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        Ok(out)
    }

    /// The lexicographically first rainbow triangle, if any.
    pub fn first_rainbow_triangle(&self) -> Result<Option<[usize; 3]>> {
        self.require_complete()?;
        for a in 0..self.n {
            for b in a + 1..self.n {
                let ab = self.colors[edge_index(a, b)];
                for c in b + 1..self.n {
                    let ac = self.colors[edge_index(a, c)];
                    let bc = self.colors[edge_index(b, c)];
                    if ab != ac && ab != bc && ac != bc {
                        return Ok(Some([a, b, c]));
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn is_gallai(&self) -> Result<bool> {
        Ok(self.first_rainbow_triangle()?.is_none())
    }

    /// Errors with the witness triangle unless the coloring is Gallai.
    pub fn require_gallai(&self) -> Result<()> {
        match self.first_rainbow_triangle()? {
            None => Ok(()),
            Some(triangle) => Err(Error::NotGallai { triangle }),
        }
    }

    /// Whether attaching a new vertex with the given edge colors (`fan[v]` is
    /// the color of the edge to vertex `v`) keeps the coloring rainbow-free.
    /// Only the triangles through the new vertex are examined.
    pub fn is_gallai_with_new_vertex(&self, fan: &[ColorId]) -> Result<bool> {
        self.require_complete()?;
        if fan.len() != self.n {
            return Err(Error::FanLengthMismatch {
                expected: self.n,
                got: fan.len(),
            });
        }
        for v in 0..self.n {
            for w in 0..v {
                let base = self.colors[edge_index(w, v)];
                if fan[v] != fan[w] && fan[v] != base && fan[w] != base {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The coloring of `K_{n+1}` obtained by attaching a new vertex `n` with
    /// the given fan. Rejects fans that create a rainbow triangle.
    pub fn extend_with_fan(&self, fan: &[ColorId]) -> Result<EdgeColoring> {
        if !self.is_gallai_with_new_vertex(fan)? {
            // Find a witness triangle through the new vertex.
            for v in 0..self.n {
                for w in 0..v {
                    let base = self.colors[edge_index(w, v)];
                    if fan[v] != fan[w] && fan[v] != base && fan[w] != base {
                        return Err(Error::InvalidFan {
                            triangle: [w, v, self.n],
                        });
                    }
                }
            }
            unreachable!();
        }
        for (v, &c) in fan.iter().enumerate() {
            if c < 1 || c > self.k {
                return Err(Error::ColorOutOfRange {
                    u: v,
                    v: self.n,
                    color: c,
                    k: self.k,
                });
            }
        }
        let mut colors = self.colors.clone();
        colors.extend_from_slice(fan);
        Ok(EdgeColoring {
            n: self.n + 1,
            k: self.k,
            colors,
        })
    }

    /// The set of colors appearing on at least one assigned edge.
    pub fn colors_used(&self) -> BTreeSet<ColorId> {
        self.colors.iter().copied().filter(|&c| c != 0).collect()
    }

    /// The smallest color whose edge graph is connected on all `n` vertices,
    /// or `None` if no color qualifies. By convention `n = 1` yields `None`
    /// (there are no edges); every Gallai coloring with `n >= 2` has one.
    pub fn monochromatic_spanning_color(&self) -> Result<Option<ColorId>> {
        self.require_complete()?;
        if self.n < 2 {
            return Ok(None);
        }
        for &c in &self.colors_used() {
            if self.color_class_connected(c) {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }

    /// Breadth-first connectivity of the subgraph formed by `c`-colored edges.
    fn color_class_connected(&self, c: ColorId) -> bool {
        let mut seen = VertexSet::empty(self.n);
        let mut queue = vec![0usize];
        seen.insert(0);
        let mut count = 1;
        while let Some(x) = queue.pop() {
            for y in 0..self.n {
                if y != x && !seen.contains(y) && self.color_unchecked(x, y) == c {
                    seen.insert(y);
                    count += 1;
                    queue.push(y);
                }
            }
        }
        count == self.n
    }

    /// The `(vertex, color, degree)` triple maximizing the number of
    /// same-colored edges at one vertex; ties broken by smallest `(v, c)`.
    /// Every Gallai coloring satisfies `5 * degree >= 2 * n`.
    pub fn max_color_degree(&self) -> Result<(usize, ColorId, usize)> {
        self.require_complete()?;
        if self.n < 2 {
            return Err(Error::TooFewVertices { n: self.n, min: 2 });
        }
        let mut best: Option<(usize, ColorId, usize)> = None;
        for v in 0..self.n {
            let mut counts: std::collections::BTreeMap<ColorId, usize> = Default::default();
            for u in 0..self.n {
                if u != v {
                    *counts.entry(self.color_unchecked(u, v)).or_insert(0) += 1;
                }
            }
            for (&c, &d) in &counts {
                if best.is_none() || d > best.unwrap().2 {
                    best = Some((v, c, d));
                }
            }
        }
        Ok(best.expect("n >= 2 has at least one edge"))
    }

    /// The induced coloring on `set`, with vertices relabeled `0..|set|` in
    /// increasing order of their original labels.
    pub fn restricted_to(&self, set: &VertexSet) -> EdgeColoring {
        let members = set.members();
        let m = members.len();
        let mut colors = vec![0; edge_count(m)];
        for v in 0..m {
            for u in 0..v {
                colors[edge_index(u, v)] = self.color_unchecked(members[u], members[v]);
            }
        }
        EdgeColoring {
            n: m,
            k: self.k,
            colors,
        }
    }
}

impl fmt::Debug for EdgeColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EdgeColoring(n={}, k={}, [", self.n, self.k)?;
        for (i, &c) in self.colors.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "])")
    }
}

/// Parses the coloring text format: first line `n k`, then one `u v c` line
/// per edge (any order). Errors carry the 1-based line number.
pub fn parse_coloring(text: &str) -> Result<EdgeColoring> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Parse { line: 1, msg: "empty input".into() })?;
    let mut it = header.split_whitespace();
    let parse_num = |tok: Option<&str>, line: usize, what: &str| -> Result<u64> {
        let tok = tok.ok_or_else(|| Error::Parse { line, msg: format!("missing {what}") })?;
        tok.parse::<u64>().map_err(|_| Error::Parse {
            line,
            msg: format!("invalid {what} '{tok}'"),
        })
    };
    let n = parse_num(it.next(), 1, "vertex count")? as usize;
    let k = parse_num(it.next(), 1, "color budget")? as ColorId;
    if it.next().is_some() {
        return Err(Error::Parse { line: 1, msg: "trailing tokens after 'n k'".into() });
    }
    if n < 1 || k < 1 {
        return Err(Error::Parse { line: 1, msg: "n and k must be at least 1".into() });
    }

    let mut colors = vec![0 as ColorId; edge_count(n)];
    for (i, raw) in lines {
        let line = i + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let mut it = raw.split_whitespace();
        let u = parse_num(it.next(), line, "vertex u")? as usize;
        let v = parse_num(it.next(), line, "vertex v")? as usize;
        let c = parse_num(it.next(), line, "color")? as ColorId;
        if it.next().is_some() {
            return Err(Error::Parse { line, msg: "trailing tokens after 'u v c'".into() });
        }
        if u >= v || v >= n {
            return Err(Error::Parse {
                line,
                msg: format!("edge {{{u},{v}}} does not satisfy 0 <= u < v < {n}"),
            });
        }
        if c < 1 || c > k {
            return Err(Error::Parse {
                line,
                msg: format!("color {c} outside [1, {k}]"),
            });
        }
        let idx = edge_index(u, v);
        if colors[idx] != 0 {
            return Err(Error::Parse { line, msg: format!("duplicate edge {{{u},{v}}}") });
        }
        colors[idx] = c;
    }
    Ok(EdgeColoring { n, k, colors })
}

/// Serializes a coloring in the text format, assigned edges in index order.
/// Output is byte-reproducible; parsing it back yields an equal coloring.
pub fn write_coloring(coloring: &EdgeColoring) -> String {
    let mut out = format!("{} {}\n", coloring.n(), coloring.k());
    for (u, v) in edges(coloring.n()) {
        if let Some(c) = coloring.color(u, v) {
            out.push_str(&format!("{u} {v} {c}\n"));
        }
    }
    out
}
