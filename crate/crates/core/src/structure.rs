//! Structural machinery: the families F and F', the extremal sets A(φ) and
//! A'(φ), the nearly-monochromatic predicate, the M1–M4 classifier, and the
//! two greedy packings used in the extension bounds.
//!
//! Threshold conventions (all exact integer comparisons, no floating point):
//! `a < n/6 ⟺ 6a < n`; `m >= n/7 ⟺ 7m >= n`; a subset is "big" when
//! `10|S| >= 9n`; nearly monochromatic means `20·minority <= m²` (boundary
//! inclusive); the packing hypothesis "both colors more than `3mn` times"
//! is strict.
//!
//! Subset searches run top-down by size, enumerate index combinations in
//! lexicographic order (a deterministic stand-in for an arbitrary choice
//! among maxima), stop at the first hit, and charge every examined subset
//! against a budget.

use crate::arith::BigCount;
use crate::bitset::VertexSet;
use crate::coloring::{ColorId, EdgeColoring};
use crate::counting::for_each_gallai;
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// Classification label for a Gallai coloring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MClass {
    /// Uses at most two colors (equivalently `m = n`).
    TwoColored,
    /// `6a < n`.
    M1,
    /// `7m >= n`, A'(φ) not nearly monochromatic.
    M2,
    /// `7m >= n`, A'(φ) nearly monochromatic.
    M3,
    /// `6a >= n` and `7m <= n`.
    M4,
}

impl MClass {
    pub const ALL: [MClass; 5] = [
        MClass::TwoColored,
        MClass::M1,
        MClass::M2,
        MClass::M3,
        MClass::M4,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MClass::TwoColored => "TwoColored",
            MClass::M1 => "M1",
            MClass::M2 => "M2",
            MClass::M3 => "M3",
            MClass::M4 => "M4",
        }
    }
}

impl fmt::Display for MClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Per-coloring structural analysis.
#[derive(Clone, Debug)]
pub struct StructureReport {
    pub n: usize,
    /// Smallest color whose class is connected and spanning, if any.
    pub spanning_color: Option<ColorId>,
    /// Maximizing `(vertex, color, degree)`; `None` for n < 2.
    pub max_degree: Option<(usize, ColorId, usize)>,
    /// `a = |A(φ)|`.
    pub a: usize,
    /// `m = |A'(φ)|`.
    pub m: usize,
    pub set_a: VertexSet,
    pub set_a_prime: VertexSet,
    pub in_f: bool,
    pub in_f_prime: bool,
    /// Defined when `m >= 2`.
    pub nearly_mono: Option<bool>,
    pub class: MClass,
}

/// Disjoint `(r, u, b)` triples with `φ(u r) = red`, `φ(u b) = blue`.
#[derive(Clone, Debug)]
pub struct TriplePacking {
    pub red: ColorId,
    pub blue: ColorId,
    /// Each triple is `[r, u, b]`; all vertices distinct across triples.
    pub triples: Vec<[usize; 3]>,
}

/// A rainbow star `K_{1,3}`: three center-leaf edges in three colors.
#[derive(Clone, Debug)]
pub struct RainbowClaw {
    pub center: usize,
    pub leaves: [usize; 3],
    pub colors: [ColorId; 3],
}

/// Vertex-disjoint rainbow claws inside a host set, plus what is left.
#[derive(Clone, Debug)]
pub struct RainbowClawPacking {
    pub claws: Vec<RainbowClaw>,
    pub residual: VertexSet,
}

// ---------------------------------------------------------------------------
// F and F'
// ---------------------------------------------------------------------------

/// Whether every vertex is incident to edges of at most 2 distinct colors.
/// For Gallai colorings this characterizes membership in F.
pub fn trichromatic_vertex_free(phi: &EdgeColoring) -> Result<bool> {
    require_complete(phi)?;
    let n = phi.n();
    for v in 0..n {
        let mut first = None;
        let mut second = None;
        for u in 0..n {
            if u == v {
                continue;
            }
            let c = phi.color(u.min(v), u.max(v)).expect("complete");
            if first.is_none() {
                first = Some(c);
            } else if first != Some(c) && second.is_none() {
                second = Some(c);
            } else if first != Some(c) && second != Some(c) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn require_complete(phi: &EdgeColoring) -> Result<()> {
    phi.require_complete()
}

/// Membership in F by the structural definition: some base color `c` exists
/// such that every connected component of the non-`c` edge graph uses exactly
/// one color besides `c` inside. Components sharing a private color merge
/// into one class whose interior still uses only that color and `c`, so the
/// partition demanded by the definition exists iff this test passes.
/// `n <= 2` is in F for any colors (singleton classes carry no inner edges).
pub fn in_f(phi: &EdgeColoring) -> Result<bool> {
    require_complete(phi)?;
    Ok(in_f_on(phi, &all_vertices(phi.n())))
}

fn all_vertices(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// F-membership of the coloring induced on `members` (sorted vertex labels).
fn in_f_on(phi: &EdgeColoring, members: &[usize]) -> bool {
    let s = members.len();
    if s <= 2 {
        return true;
    }
    let mut used: Vec<ColorId> = Vec::new();
    for i in 0..s {
        for j in 0..i {
            let c = phi.color_unchecked(members[j], members[i]);
            if !used.contains(&c) {
                used.push(c);
            }
        }
    }
    'base: for &base in &used {
        let mut visited = vec![false; s];
        for start in 0..s {
            if visited[start] {
                continue;
            }
            // Component of the non-base graph.
            let mut comp = vec![start];
            visited[start] = true;
            let mut head = 0;
            while head < comp.len() {
                let x = comp[head];
                head += 1;
                for y in 0..s {
                    if !visited[y]
                        && phi.color_unchecked(members[x.min(y)], members[x.max(y)]) != base
                    {
                        visited[y] = true;
                        comp.push(y);
                    }
                }
            }
            // The component interior may use one color besides the base.
            let mut private: Option<ColorId> = None;
            for (idx, &x) in comp.iter().enumerate() {
                for &y in &comp[..idx] {
                    let c = phi.color_unchecked(members[x.min(y)], members[x.max(y)]);
                    if c != base {
                        match private {
                            None => private = Some(c),
                            Some(p) if p != c => continue 'base,
                            _ => {}
                        }
                    }
                }
            }
        }
        return true;
    }
    false
}

/// Distinct colors within `members`, early-exiting once more than `cap` are
/// seen (the result then has `cap + 1` entries).
fn colors_within_capped(phi: &EdgeColoring, members: &[usize], cap: usize) -> Vec<ColorId> {
    let mut seen: Vec<ColorId> = Vec::new();
    for (i, &v) in members.iter().enumerate() {
        for &u in &members[..i] {
            let c = phi.color_unchecked(u.min(v), u.max(v));
            if !seen.contains(&c) {
                seen.push(c);
                if seen.len() > cap {
                    return seen;
                }
            }
        }
    }
    seen
}

/// Whether some vertex subset `S` with `10|S| >= 9n` induces at most 2
/// colors. Only subsets of the threshold size need to be checked: a larger
/// 2-colored set contains a threshold-sized one.
fn has_big_two_colored(phi: &EdgeColoring, budget: u64) -> Result<bool> {
    let n = phi.n();
    let s0 = (9 * n).div_ceil(10);
    let mut examined = 0u64;
    let hit = first_combination(&all_vertices(n), s0, budget, &mut examined, |subset| {
        colors_within_capped(phi, subset, 2).len() <= 2
    })?;
    Ok(hit.is_some())
}

/// Membership in F': in F, and no 0.9n-fraction subset induces a 2-colored
/// clique. Errors when `phi` is not in F (F' is a subfamily of F).
pub fn in_f_prime(phi: &EdgeColoring, budget: u64) -> Result<bool> {
    if !in_f(phi)? {
        return Err(Error::NotInF);
    }
    Ok(!has_big_two_colored(phi, budget)?)
}

/// Exact `|F(n,k)|` by filtered enumeration. Every coloring in F is
/// rainbow-free (a triangle meets at most one class interior, so it sees at
/// most two colors), so filtering the Gallai enumeration loses nothing.
pub fn count_f(n: usize, k: ColorId, budget: u64) -> Result<BigCount> {
    let mut count = BigCount::ZERO;
    for_each_gallai(n, k, budget, |phi| {
        if in_f_on(phi, &all_vertices(n)) {
            count += 1u32;
        }
    })?;
    Ok(count)
}

/// Exact `f'(n,k) = |F'(n,k)|` by filtered enumeration.
pub fn count_f_prime(n: usize, k: ColorId, budget: u64) -> Result<BigCount> {
    let mut count = BigCount::ZERO;
    let mut err = None;
    for_each_gallai(n, k, budget, |phi| {
        if err.is_none() && in_f_on(phi, &all_vertices(n)) {
            match has_big_two_colored(phi, budget) {
                Ok(false) => count += 1u32,
                Ok(true) => {}
                Err(e) => err = Some(e),
            }
        }
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(count),
    }
}

// ---------------------------------------------------------------------------
// A(φ), A'(φ) and the classifier
// ---------------------------------------------------------------------------

/// First size-`s` combination of `items` (lexicographic) satisfying `pred`.
/// Each examined subset counts against `budget`.
fn first_combination(
    items: &[usize],
    s: usize,
    budget: u64,
    examined: &mut u64,
    mut pred: impl FnMut(&[usize]) -> bool,
) -> Result<Option<Vec<usize>>> {
    if s > items.len() {
        return Ok(None);
    }
    let mut idx: Vec<usize> = (0..s).collect();
    let mut subset = vec![0usize; s];
    loop {
        *examined += 1;
        if *examined > budget {
            return Err(Error::BudgetExceeded {
                estimate: "subset search".into(),
                budget,
            });
        }
        for (slot, &i) in idx.iter().enumerate() {
            subset[slot] = items[i];
        }
        if pred(&subset) {
            return Ok(Some(subset));
        }
        // Advance to the next combination in lexicographic order.
        let mut i = s;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            if idx[i] != i + items.len() - s {
                idx[i] += 1;
                for j in i + 1..s {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// A(φ): a maximum-size vertex set whose induced coloring lies in F; among
/// maxima, the lexicographically smallest. Singletons are always in F, so
/// the search cannot come up empty.
pub fn max_f_subset(phi: &EdgeColoring, budget: u64) -> Result<VertexSet> {
    require_complete(phi)?;
    let n = phi.n();
    if n < 1 {
        return Err(Error::TooFewVertices { n, min: 1 });
    }
    let items = all_vertices(n);
    let mut examined = 0u64;
    for s in (1..=n).rev() {
        if let Some(hit) = first_combination(&items, s, budget, &mut examined, |subset| {
            in_f_on(phi, subset)
        })? {
            return Ok(VertexSet::from_members(n, &hit));
        }
    }
    unreachable!("singletons are in F");
}

/// A'(φ): a maximum-size subset of `a_set` inducing at most 2 colors;
/// lexicographic tie-break. `a_set` is expected to be `max_f_subset(φ)`.
pub fn max_two_colored_subset(
    phi: &EdgeColoring,
    a_set: &VertexSet,
    budget: u64,
) -> Result<VertexSet> {
    require_complete(phi)?;
    let items = a_set.members();
    let mut examined = 0u64;
    for s in (1..=items.len()).rev() {
        if let Some(hit) = first_combination(&items, s, budget, &mut examined, |subset| {
            colors_within_capped(phi, subset, 2).len() <= 2
        })? {
            return Ok(VertexSet::from_members(phi.n(), &hit));
        }
    }
    unreachable!("singletons induce no colors");
}

/// Whether the 2-colored restriction of `phi` to `set` is nearly
/// monochromatic: the minority color is used at most `m²/20` times
/// (`20·minority <= m²`, boundary inclusive). Rejects restrictions with
/// more than 2 colors.
pub fn is_nearly_monochromatic(phi: &EdgeColoring, set: &VertexSet) -> Result<bool> {
    require_complete(phi)?;
    let members = set.members();
    let mut counts: BTreeMap<ColorId, u64> = BTreeMap::new();
    for (i, &v) in members.iter().enumerate() {
        for &u in &members[..i] {
            *counts.entry(phi.color_unchecked(u.min(v), u.max(v))).or_insert(0) += 1;
        }
    }
    if counts.len() > 2 {
        return Err(Error::NotTwoColored { got: counts.len() });
    }
    let minority = if counts.len() == 2 {
        counts.values().copied().min().unwrap()
    } else {
        0
    };
    let m = members.len() as u128;
    Ok(20 * minority as u128 <= m * m)
}

fn class_from_parts(
    phi: &EdgeColoring,
    a: usize,
    m: usize,
    m_set: &VertexSet,
) -> Result<MClass> {
    let n = phi.n();
    if m == n {
        return Ok(MClass::TwoColored);
    }
    if 6 * a < n {
        return Ok(MClass::M1);
    }
    if 7 * m >= n {
        return Ok(if is_nearly_monochromatic(phi, m_set)? {
            MClass::M3
        } else {
            MClass::M2
        });
    }
    debug_assert!(6 * a >= n && 7 * m <= n);
    Ok(MClass::M4)
}

/// Classifies a complete Gallai coloring with `n >= 2` into TwoColored or
/// M1..M4, resolving boundary overlaps by the priority M1, M2/M3, M4.
pub fn classify(phi: &EdgeColoring, budget: u64) -> Result<MClass> {
    if phi.n() < 2 {
        return Err(Error::TooFewVertices { n: phi.n(), min: 2 });
    }
    phi.require_gallai()?;
    let a_set = max_f_subset(phi, budget)?;
    let m_set = max_two_colored_subset(phi, &a_set, budget)?;
    class_from_parts(phi, a_set.len(), m_set.len(), &m_set)
}

/// Full structural report for a complete Gallai coloring.
pub fn analyze(phi: &EdgeColoring, budget: u64) -> Result<StructureReport> {
    let n = phi.n();
    if n < 1 {
        return Err(Error::TooFewVertices { n, min: 1 });
    }
    phi.require_gallai()?;
    let spanning_color = phi.monochromatic_spanning_color()?;
    let max_degree = if n >= 2 {
        Some(phi.max_color_degree()?)
    } else {
        None
    };
    let set_a = max_f_subset(phi, budget)?;
    let set_a_prime = max_two_colored_subset(phi, &set_a, budget)?;
    let (a, m) = (set_a.len(), set_a_prime.len());
    debug_assert!(set_a_prime.is_subset_of(&set_a) && m <= a && a <= n);
    let in_f = a == n;
    let in_f_prime = in_f && !has_big_two_colored(phi, budget)?;
    let nearly_mono = if m >= 2 {
        Some(is_nearly_monochromatic(phi, &set_a_prime)?)
    } else {
        None
    };
    let class = if n >= 2 {
        class_from_parts(phi, a, m, &set_a_prime)?
    } else {
        MClass::TwoColored
    };
    Ok(StructureReport {
        n,
        spanning_color,
        max_degree,
        a,
        m,
        set_a,
        set_a_prime,
        in_f,
        in_f_prime,
        nearly_mono,
        class,
    })
}

// ---------------------------------------------------------------------------
// Greedy packings
// ---------------------------------------------------------------------------

/// Greedy packing of disjoint `(r, u, b)` triples with `φ(u r) = red` and
/// `φ(u b) = blue`, scanning `u` in index order. Stops once `target + 1`
/// triples are found (enough to certify the packing threshold) or no triple
/// can be added. Rejects colorings using more than 2 colors; with fewer than
/// 2 colors the packing is empty.
pub fn find_bichromatic_triples(phi: &EdgeColoring, target: usize) -> Result<TriplePacking> {
    require_complete(phi)?;
    let used: Vec<ColorId> = phi.colors_used().into_iter().collect();
    if used.len() > 2 {
        return Err(Error::NotTwoColored { got: used.len() });
    }
    let (red, blue) = match used.as_slice() {
        [one, two] => (*one, *two),
        [one] => (*one, *one),
        _ => (1, 1),
    };
    let n = phi.n();
    let mut taken = vec![false; n];
    let mut triples = Vec::new();
    if red != blue {
        for u in 0..n {
            if triples.len() > target {
                break;
            }
            if taken[u] {
                continue;
            }
            let r = (0..n).find(|&r| {
                r != u && !taken[r] && phi.color_unchecked(r.min(u), r.max(u)) == red
            });
            let Some(r) = r else { continue };
            let b = (0..n).find(|&b| {
                b != u && b != r && !taken[b] && phi.color_unchecked(b.min(u), b.max(u)) == blue
            });
            let Some(b) = b else { continue };
            taken[u] = true;
            taken[r] = true;
            taken[b] = true;
            triples.push([r, u, b]);
        }
    }
    Ok(TriplePacking { red, blue, triples })
}

/// Greedy packing of vertex-disjoint rainbow claws inside `host`, scanning
/// candidate claw centers in index order and stopping at `target`. The host
/// must lie inside one color class of `center`. When fewer than `target`
/// claws exist the packing is maximal, so no residual vertex sees three
/// colors within the residual; for Gallai input the residual then induces a
/// coloring in F.
pub fn find_rainbow_claw_packing(
    phi: &EdgeColoring,
    center: usize,
    host: &VertexSet,
    target: usize,
) -> Result<RainbowClawPacking> {
    require_complete(phi)?;
    let n = phi.n();
    if center >= n {
        return Err(Error::MalformedHost {
            reason: format!("center {center} outside [0, {n})"),
        });
    }
    if host.universe() != n {
        return Err(Error::MalformedHost {
            reason: format!("host universe {} does not match n={n}", host.universe()),
        });
    }
    if host.contains(center) {
        return Err(Error::MalformedHost {
            reason: format!("host contains the center {center}"),
        });
    }
    let mut host_color = None;
    for v in host.iter() {
        let c = phi.color_unchecked(center.min(v), center.max(v));
        match host_color {
            None => host_color = Some(c),
            Some(h) if h != c => {
                return Err(Error::MalformedHost {
                    reason: format!(
                        "host is not monochromatic from the center: colors {h} and {c}"
                    ),
                });
            }
            _ => {}
        }
    }

    let mut available = host.clone();
    let mut claws = Vec::new();
    for x in host.members() {
        if claws.len() >= target {
            break;
        }
        if !available.contains(x) {
            continue;
        }
        let leaves: Vec<usize> = available.iter().filter(|&y| y != x).collect();
        let Some(&y1) = leaves.first() else { continue };
        let c1 = phi.color_unchecked(x.min(y1), x.max(y1));
        let Some(&y2) = leaves
            .iter()
            .find(|&&y| phi.color_unchecked(x.min(y), x.max(y)) != c1)
        else {
            continue;
        };
        let c2 = phi.color_unchecked(x.min(y2), x.max(y2));
        let Some(&y3) = leaves.iter().find(|&&y| {
            let c = phi.color_unchecked(x.min(y), x.max(y));
            c != c1 && c != c2
        }) else {
            continue;
        };
        let c3 = phi.color_unchecked(x.min(y3), x.max(y3));
        for v in [x, y1, y2, y3] {
            available.remove(v);
        }
        claws.push(RainbowClaw {
            center: x,
            leaves: [y1, y2, y3],
            colors: [c1, c2, c3],
        });
    }

    if claws.len() < target {
        debug_assert!(
            phi.first_rainbow_triangle()?.is_some() || in_f_on(phi, &available.members()),
            "maximal packing must leave an F residual for Gallai input"
        );
    }
    Ok(RainbowClawPacking {
        claws,
        residual: available,
    })
}
