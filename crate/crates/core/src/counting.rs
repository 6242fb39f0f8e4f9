//! Exact values of `c(n,k)`, the number of Gallai k-colorings of labeled `K_n`.
//!
//! Two independent methods are provided and must agree wherever both run:
//!
//! - [`count_gallai_dfs`]: direct pruned enumeration, vertex by vertex (edge
//!   blocks in index order), rejecting any partial coloring that closes a
//!   rainbow triangle. The search tree is split at a fixed vertex prefix into
//!   independent work units; units combine by addition, may run on any number
//!   of threads, and can be checkpointed to a file for resumable long counts.
//! - [`count_gallai_via_exact`]: exact-color decomposition. `ĝ(n,j)`, the
//!   number of Gallai colorings whose used-color set is exactly `[j]`, equals
//!   `j!` times the number of *canonical* colorings (colors first appear in
//!   increasing order along the edge order): a coloring using all of `[j]`
//!   has trivial stabilizer under color permutations. Recombining with
//!   binomials, `c(n,k) = Σ_j C(k,j)·ĝ(n,j)`, which supports astronomically
//!   large `k` since only `ĝ` values are enumerated. Gallai colorings of
//!   `K_n` use at most `n-1` colors, so the sum stops there (`ĝ(n,0)` covers
//!   the degenerate edgeless cases `n <= 1`).
//!
//! Feasibility is guarded up front: an instance is refused when the ceiling
//! `(k-1)^n · 2^C(n,2)` exceeds the node budget.

use crate::arith::{big, binomial, binomial_big, choose2, factorial, pow2, BigCount, ExactRatio};
use crate::coloring::{edge_count, edge_endpoints, ColorId, EdgeColoring};
use crate::error::{Error, Result};
use rayon::prelude::*;
use std::collections::HashMap;
use std::fmt;
use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

/// Default DFS node budget for the feasibility guard.
pub const DEFAULT_NODE_BUDGET: u64 = 5_000_000_000;

/// Vertex limit of the bitset-based enumeration engines.
const MAX_N: usize = 64;

/// Knobs for the counting engines.
#[derive(Clone, Debug)]
pub struct CountConfig {
    /// Refuse instances whose `(k-1)^n · 2^C(n,2)` ceiling exceeds this.
    pub budget: u64,
    /// Work units are all Gallai colorings of the first `split_vertices`
    /// vertices (clamped to `n`).
    pub split_vertices: usize,
    /// Process work units one at a time in order instead of in parallel.
    pub sequential: bool,
    /// Record `(prefix-id, partial count)` pairs here; completed units are
    /// skipped when the same count is rerun.
    pub checkpoint: Option<PathBuf>,
}

impl Default for CountConfig {
    fn default() -> Self {
        CountConfig {
            budget: DEFAULT_NODE_BUDGET,
            split_vertices: 4,
            sequential: false,
            checkpoint: None,
        }
    }
}

impl CountConfig {
    /// A sequential configuration with the given budget.
    pub fn with_budget(budget: u64) -> Self {
        CountConfig {
            budget,
            ..Default::default()
        }
    }
}

fn validate_instance(n: usize, k: ColorId) -> Result<()> {
    if n < 1 {
        return Err(Error::TooFewVertices { n, min: 1 });
    }
    if n > MAX_N {
        return Err(Error::UnsupportedSize { n, max: MAX_N });
    }
    if k < 1 {
        return Err(Error::OutOfDomain {
            expr: "count".into(),
            reason: "k must be at least 1".into(),
        });
    }
    Ok(())
}

/// The ceiling `(k-1)^n · 2^C(n,2)` on the search size, used as the estimate.
fn node_estimate(n: usize, k: ColorId) -> BigCount {
    big(k as u64 - 1).pow(n as u32) * pow2(choose2(n as u64))
}

fn check_budget(n: usize, k: ColorId, budget: u64) -> Result<()> {
    let estimate = node_estimate(n, k);
    if estimate > big(budget) {
        return Err(Error::BudgetExceeded {
            estimate: estimate.to_string(),
            budget,
        });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Core DFS over edges in index order with incremental rainbow rejection
// ---------------------------------------------------------------------------

/// Partial coloring with per-color per-vertex adjacency bitsets. Assigning
/// edge `{u,v}` (u < v) only closes triangles `{w,u,v}` with `w < u`, whose
/// other two edges are already assigned; the rainbow test for a candidate
/// color is three mask operations.
struct EdgeDfs {
    n: usize,
    k: ColorId,
    adj: Vec<u64>, // (c-1)*n + v
    colors: Vec<ColorId>,
    ends: Vec<(usize, usize)>,
}

impl EdgeDfs {
    fn new(n: usize, k: ColorId) -> Self {
        EdgeDfs {
            n,
            k,
            adj: vec![0; k as usize * n],
            colors: vec![0; edge_count(n)],
            ends: (0..edge_count(n)).map(edge_endpoints).collect(),
        }
    }

    #[inline]
    fn assign(&mut self, idx: usize, c: ColorId) {
        let (u, v) = self.ends[idx];
        self.colors[idx] = c;
        let base = (c as usize - 1) * self.n;
        self.adj[base + u] |= 1 << v;
        self.adj[base + v] |= 1 << u;
    }

    #[inline]
    fn unassign(&mut self, idx: usize, c: ColorId) {
        let (u, v) = self.ends[idx];
        self.colors[idx] = 0;
        let base = (c as usize - 1) * self.n;
        self.adj[base + u] &= !(1 << v);
        self.adj[base + v] &= !(1 << u);
    }

    /// Positions `w` where `φ(w,u) = φ(w,v)` among assigned colors.
    #[inline]
    fn same_mask(&self, u: usize, v: usize) -> u64 {
        let mut same = 0;
        for c in 0..self.k as usize {
            same |= self.adj[c * self.n + u] & self.adj[c * self.n + v];
        }
        same
    }

    #[inline]
    fn conflict_free(&self, u: usize, v: usize, c: ColorId, same: u64, below: u64) -> bool {
        let base = (c as usize - 1) * self.n;
        below & !self.adj[base + u] & !self.adj[base + v] & !same == 0
    }

    /// Number of rainbow-free completions from edge `from` onward.
    fn count_completions(&mut self, from: usize) -> u64 {
        if from == self.colors.len() {
            return 1;
        }
        let (u, v) = self.ends[from];
        let same = self.same_mask(u, v);
        let below = (1u64 << u) - 1;
        let mut total = 0;
        for c in 1..=self.k {
            if self.conflict_free(u, v, c, same, below) {
                self.assign(from, c);
                total += self.count_completions(from + 1);
                self.unassign(from, c);
            }
        }
        total
    }

    /// Visits every rainbow-free completion from edge `from` onward.
    fn for_each_completion<F: FnMut(&[ColorId])>(&mut self, from: usize, f: &mut F) {
        if from == self.colors.len() {
            f(&self.colors);
            return;
        }
        let (u, v) = self.ends[from];
        let same = self.same_mask(u, v);
        let below = (1u64 << u) - 1;
        for c in 1..=self.k {
            if self.conflict_free(u, v, c, same, below) {
                self.assign(from, c);
                self.for_each_completion(from + 1, f);
                self.unassign(from, c);
            }
        }
    }

    /// Canonical enumeration: a color may be used only if all smaller colors
    /// already appear. Tallies completions by the exact number of colors used.
    fn canonical_tally(&mut self, from: usize, max_used: ColorId, cap: ColorId, tally: &mut [u64]) {
        if from == self.colors.len() {
            tally[max_used as usize] += 1;
            return;
        }
        let (u, v) = self.ends[from];
        let same = self.same_mask(u, v);
        let below = (1u64 << u) - 1;
        for c in 1..=(max_used + 1).min(cap) {
            if self.conflict_free(u, v, c, same, below) {
                self.assign(from, c);
                self.canonical_tally(from + 1, max_used.max(c), cap, tally);
                self.unassign(from, c);
            }
        }
    }
}

/// Visits every Gallai coloring of `K_n` with colors in `[1, k]`, in the
/// deterministic DFS order. Subject to the same feasibility guard as the
/// counting entry points.
pub fn for_each_gallai<F: FnMut(&EdgeColoring)>(
    n: usize,
    k: ColorId,
    budget: u64,
    mut f: F,
) -> Result<()> {
    validate_instance(n, k)?;
    check_budget(n, k, budget)?;
    if n == 1 {
        // Edgeless; avoid sizing the color tables by k.
        f(&EdgeColoring::from_parts(1, k, Vec::new()));
        return Ok(());
    }
    let mut dfs = EdgeDfs::new(n, k);
    dfs.for_each_completion(0, &mut |colors| {
        f(&EdgeColoring::from_parts(n, k, colors.to_vec()));
    });
    Ok(())
}

// ---------------------------------------------------------------------------
// c(n,k) by direct pruned DFS with work units and checkpointing
// ---------------------------------------------------------------------------

/// Exact `c(n,k)` by pruned enumeration.
pub fn count_gallai_dfs(n: usize, k: ColorId, cfg: &CountConfig) -> Result<BigCount> {
    validate_instance(n, k)?;
    check_budget(n, k, cfg.budget)?;
    if n == 1 {
        return Ok(big(1));
    }

    let p = cfg.split_vertices.clamp(1, n);
    let prefix_edges = edge_count(p);

    // Work units: all Gallai colorings of the first p vertices.
    let mut prefixes: Vec<Vec<ColorId>> = Vec::new();
    {
        let mut dfs = EdgeDfs::new(p, k);
        dfs.for_each_completion(0, &mut |colors| prefixes.push(colors.to_vec()));
    }

    let mut done: HashMap<usize, BigCount> = HashMap::new();
    let sink: Option<Mutex<File>> = match &cfg.checkpoint {
        Some(path) => {
            let (loaded, file) = open_checkpoint(path, n, k, p, prefixes.len())?;
            done = loaded;
            Some(Mutex::new(file))
        }
        None => None,
    };

    let pending: Vec<(usize, &Vec<ColorId>)> = prefixes
        .iter()
        .enumerate()
        .filter(|(id, _)| !done.contains_key(id))
        .collect();

    let run_unit = |&(id, prefix): &(usize, &Vec<ColorId>)| -> Result<BigCount> {
        let mut dfs = EdgeDfs::new(n, k);
        for (idx, &c) in prefix.iter().enumerate() {
            dfs.assign(idx, c);
        }
        let count = dfs.count_completions(prefix_edges);
        if let Some(sink) = &sink {
            let mut file = sink.lock().expect("checkpoint lock");
            writeln!(file, "{id} {count}")?;
            file.flush()?;
        }
        Ok(big(count))
    };

    let fresh: Vec<BigCount> = if cfg.sequential {
        pending.iter().map(run_unit).collect::<Result<_>>()?
    } else {
        pending.par_iter().map(run_unit).collect::<Result<_>>()?
    };

    let mut total = BigCount::ZERO;
    for count in done.into_values() {
        total += count;
    }
    for count in fresh {
        total += count;
    }
    Ok(total)
}

fn checkpoint_header(n: usize, k: ColorId, p: usize, units: usize) -> String {
    format!("gallai-checkpoint v1 n={n} k={k} split={p} units={units}")
}

fn open_checkpoint(
    path: &Path,
    n: usize,
    k: ColorId,
    p: usize,
    units: usize,
) -> Result<(HashMap<usize, BigCount>, File)> {
    let header = checkpoint_header(n, k, p, units);
    let mut done = HashMap::new();
    if path.exists() {
        let text = std::fs::read_to_string(path)?;
        let mut lines = text.lines();
        match lines.next() {
            Some(first) if first == header => {}
            Some(first) => {
                return Err(Error::CheckpointMismatch {
                    reason: format!("header is '{first}', this run needs '{header}'"),
                });
            }
            None => {}
        }
        for line in lines {
            if line.trim().is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let id: usize = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::CheckpointMismatch {
                    reason: format!("bad unit line '{line}'"),
                })?;
            let count: BigCount =
                it.next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::CheckpointMismatch {
                        reason: format!("bad unit line '{line}'"),
                    })?;
            if id >= units {
                return Err(Error::CheckpointMismatch {
                    reason: format!("unit id {id} out of range (units={units})"),
                });
            }
            done.insert(id, count);
        }
        let file = OpenOptions::new().append(true).open(path)?;
        Ok((done, file))
    } else {
        let mut file = File::create(path)?;
        writeln!(file, "{header}")?;
        file.flush()?;
        Ok((done, file))
    }
}

// ---------------------------------------------------------------------------
// Exact-color decomposition
// ---------------------------------------------------------------------------

/// `ĝ(n,j)` for all `j <= j_cap` (index `j` of the result). `ĝ(n,0)` is 1
/// exactly when `n <= 1` (the edgeless coloring).
pub fn exact_color_counts(n: usize, j_cap: ColorId, budget: u64) -> Result<Vec<BigCount>> {
    if n < 1 {
        return Err(Error::TooFewVertices { n, min: 1 });
    }
    if n > MAX_N {
        return Err(Error::UnsupportedSize { n, max: MAX_N });
    }
    let cap = j_cap.min(edge_count(n) as ColorId);
    check_budget(n, cap.max(1), budget)?;
    let mut tally = vec![0u64; cap as usize + 1];
    let mut dfs = EdgeDfs::new(n, cap.max(1));
    dfs.canonical_tally(0, 0, cap, &mut tally);
    Ok(tally
        .iter()
        .enumerate()
        .map(|(j, &t)| factorial(j as u64) * big(t))
        .collect())
}

/// `ĝ(n,j)`: Gallai colorings of `K_n` whose used-color set is exactly `[j]`,
/// computed as `j!` times the canonical count. Zero for every `j >= n` when
/// `n >= 2` (Gallai colorings use at most `n-1` colors) — established by the
/// enumeration itself, not assumed.
pub fn count_exact_colors(n: usize, j: ColorId, budget: u64) -> Result<BigCount> {
    if j < 1 {
        return Err(Error::OutOfDomain {
            expr: "exact-colors".into(),
            reason: "j must be at least 1".into(),
        });
    }
    let counts = exact_color_counts(n, j, budget)?;
    Ok(counts.get(j as usize).cloned().unwrap_or(BigCount::ZERO))
}

/// Exact `c(n,k)` via `Σ_j C(k,j)·ĝ(n,j)`. Only `ĝ` values are enumerated,
/// so `k` may be astronomically large (for example `2^(2n)`).
pub fn count_gallai_via_exact(n: usize, k: &BigCount, budget: u64) -> Result<BigCount> {
    if n < 1 {
        return Err(Error::TooFewVertices { n, min: 1 });
    }
    if *k < big(1) {
        return Err(Error::OutOfDomain {
            expr: "count".into(),
            reason: "k must be at least 1".into(),
        });
    }
    // Gallai colorings of K_n use at most n-1 colors.
    let color_cap = big(n.saturating_sub(1) as u64);
    let cap_big = color_cap.min(k.clone());
    let cap = u32::try_from(&cap_big).expect("cap is at most n-1");
    let counts = exact_color_counts(n, cap, budget)?;
    let mut total = BigCount::ZERO;
    for (j, g) in counts.iter().enumerate() {
        if *g != BigCount::ZERO {
            total += binomial_big(k, j as u64) * g;
        }
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// Dominance report
// ---------------------------------------------------------------------------

/// Exact data for the two-color dominance trend at one `(n,k)` cell.
#[derive(Clone, Debug)]
pub struct DominanceReport {
    pub n: usize,
    pub k: ColorId,
    /// `c(n,k)`.
    pub count: BigCount,
    /// Colorings using at most two colors: `C(k,2)(2^C(n,2) - 2) + k`.
    pub two_color_count: BigCount,
    /// `c(n,k) / (C(k,2) · 2^C(n,2))` as a reduced fraction.
    pub ratio: ExactRatio,
}

pub fn dominance_report(n: usize, k: ColorId, budget: u64) -> Result<DominanceReport> {
    if n < 2 {
        return Err(Error::TooFewVertices { n, min: 2 });
    }
    if k < 2 {
        return Err(Error::OutOfDomain {
            expr: "dominance".into(),
            reason: "k must be at least 2".into(),
        });
    }
    let count = count_gallai_via_exact(n, &big(k as u64), budget)?;
    let e = choose2(n as u64);
    let pairs = binomial(k as u64, 2);
    let two_color_count = &pairs * (pow2(e) - big(2)) + big(k as u64);
    let ratio = ExactRatio::new(count.clone(), pairs * pow2(e));
    Ok(DominanceReport {
        n,
        k,
        count,
        two_color_count,
        ratio,
    })
}

// ---------------------------------------------------------------------------
// Count tables
// ---------------------------------------------------------------------------

/// How a table cell was computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMethod {
    Dfs,
    ExactColor,
    Formula,
}

impl CountMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            CountMethod::Dfs => "dfs",
            CountMethod::ExactColor => "exact-color",
            CountMethod::Formula => "formula",
        }
    }
}

impl fmt::Display for CountMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One computed cell.
#[derive(Clone, Debug)]
pub struct CountEntry {
    pub n: usize,
    pub k: BigCount,
    pub method: CountMethod,
    pub count: BigCount,
    pub seconds: f64,
}

/// A `(n, k, method) -> count` table with timing, for reports.
#[derive(Clone, Debug, Default)]
pub struct CountTable {
    pub entries: Vec<CountEntry>,
}

impl CountTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, entry: CountEntry) {
        self.entries.push(entry);
    }

    /// First pair of entries for the same `(n,k)` whose counts differ, if any.
    pub fn agreement_violation(&self) -> Option<(&CountEntry, &CountEntry)> {
        for (i, a) in self.entries.iter().enumerate() {
            for b in &self.entries[i + 1..] {
                if a.n == b.n && a.k == b.k && a.count != b.count {
                    return Some((a, b));
                }
            }
        }
        None
    }
}
