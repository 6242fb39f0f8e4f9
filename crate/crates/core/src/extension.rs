//! Extension counts: the number of ways `w(φ,k)` to extend a Gallai coloring
//! of `K_n` by one new vertex so that no rainbow triangle appears.
//!
//! The count is computed by depth-first search over the `n` fan edges with
//! incremental rainbow rejection. Two distinct colors absent from `φ` can
//! never share a fan (the triangle they form with any `φ`-colored base edge
//! is rainbow), so the search runs over the used colors plus a single
//! representative fresh color and weights fresh-using fans by the number of
//! available fresh colors. This keeps the count exact for any `k` and is
//! asserted against the literal enumeration in the tests.

use crate::arith::{big, pow2, BigCount};
use crate::coloring::{ColorId, EdgeColoring};
use crate::error::{Error, Result};

/// Vertex limit of the bitset-based search.
const MAX_N: usize = 64;

/// Breakdown of `w(φ,k)` by whether a fan uses a color absent from `φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionCounts {
    /// `w(φ,k)`.
    pub total: BigCount,
    /// Fans whose colors all appear in `φ`.
    pub within_used: BigCount,
    /// Fans using at least one color that `φ` does not use.
    pub with_new_color: BigCount,
}

/// `w(φ,k)`: the number of Gallai extensions of `φ` by one vertex with fan
/// colors from `[1, k]`. Rejects non-Gallai `φ` (the count is undefined) and
/// budgets `k` below the largest used color.
pub fn count_extensions(phi: &EdgeColoring, k: ColorId) -> Result<BigCount> {
    Ok(count_extensions_split(phi, k)?.total)
}

/// Like [`count_extensions`], also separating the fans that use a fresh color.
pub fn count_extensions_split(phi: &EdgeColoring, k: ColorId) -> Result<ExtensionCounts> {
    validate(phi, k)?;
    let used: Vec<ColorId> = phi.colors_used().into_iter().collect();
    let fresh_colors = k as u64 - used.len() as u64;

    let mut search = FanSearch::new(phi, &used, fresh_colors > 0);
    search.run();

    let within_used = big(search.used_leaves);
    let with_new = big(search.fresh_leaves) * big(fresh_colors);
    Ok(ExtensionCounts {
        total: &within_used + &with_new,
        within_used,
        with_new_color: with_new,
    })
}

fn validate(phi: &EdgeColoring, k: ColorId) -> Result<()> {
    if phi.n() < 1 {
        return Err(Error::TooFewVertices { n: phi.n(), min: 1 });
    }
    if phi.n() > MAX_N {
        return Err(Error::UnsupportedSize { n: phi.n(), max: MAX_N });
    }
    phi.require_gallai()?;
    let max_used = phi.colors_used().into_iter().max().unwrap_or(0);
    if k < max_used.max(1) {
        return Err(Error::InsufficientColorBudget { k, max_used });
    }
    Ok(())
}

/// DFS state over fan positions `0..n`, one slot per used color plus an
/// optional fresh slot whose adjacency is empty.
struct FanSearch {
    n: usize,
    slots: usize,
    fresh_slot: Option<usize>,
    adj: Vec<u64>,      // slot * n + v: neighbors w of v with that slot's color
    fan_pos: Vec<u64>,  // positions currently assigned each slot
    same: Vec<u64>,     // same[v]: positions w < v with fan[w] = φ(w,v)
    used_leaves: u64,
    fresh_leaves: u64,
}

impl FanSearch {
    fn new(phi: &EdgeColoring, used: &[ColorId], with_fresh: bool) -> Self {
        let n = phi.n();
        let slots = used.len() + usize::from(with_fresh);
        let mut adj = vec![0u64; slots * n];
        for v in 0..n {
            for w in 0..v {
                let c = phi.color_unchecked(w, v);
                let s = used.binary_search(&c).expect("color is used");
                adj[s * n + v] |= 1 << w;
                adj[s * n + w] |= 1 << v;
            }
        }
        FanSearch {
            n,
            slots,
            fresh_slot: with_fresh.then_some(used.len()),
            adj,
            fan_pos: vec![0; slots],
            same: vec![0; n],
            used_leaves: 0,
            fresh_leaves: 0,
        }
    }

    fn run(&mut self) {
        if self.slots == 0 {
            // No colors at all (k = 0 is rejected earlier); nothing to count.
            return;
        }
        self.descend(0);
    }

    fn descend(&mut self, v: usize) {
        if v == self.n {
            match self.fresh_slot {
                Some(s) if self.fan_pos[s] != 0 => self.fresh_leaves += 1,
                _ => self.used_leaves += 1,
            }
            return;
        }
        let below = (1u64 << v) - 1;
        for s in 0..self.slots {
            // Position w < v closes a rainbow triangle iff its fan color,
            // the candidate color and φ(w,v) are pairwise distinct.
            let bad = below & !self.fan_pos[s] & !self.adj[s * self.n + v] & !self.same[v];
            if bad != 0 {
                continue;
            }
            self.fan_pos[s] |= 1 << v;
            let above = self.adj[s * self.n + v] & !((1u64 << (v + 1)).wrapping_sub(1));
            let mut rest = above;
            while rest != 0 {
                let w = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                self.same[w] |= 1 << v;
            }
            self.descend(v + 1);
            let mut rest = above;
            while rest != 0 {
                let w = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                self.same[w] &= !(1 << v);
            }
            self.fan_pos[s] &= !(1 << v);
        }
    }
}

/// `(k-1)·2^n - (k-2)`: the extension count of a monochromatic `K_n`,
/// computed as `(k-1)(2^n - 1) + 1` to stay in nonnegative arithmetic.
pub fn mono_extension_value(n: u64, k: &BigCount) -> Result<BigCount> {
    if *k < big(1) {
        return Err(Error::OutOfDomain {
            expr: "mono-ext".into(),
            reason: "k must be at least 1".into(),
        });
    }
    Ok((k - big(1)) * (pow2(n) - big(1)) + big(1))
}

/// Lexicographic stream of all Gallai extension fans of `φ` over `[1, k]`.
///
/// The literal per-color enumeration; its length equals [`count_extensions`].
pub fn enumerate_extensions(phi: &EdgeColoring, k: ColorId) -> Result<Extensions<'_>> {
    validate(phi, k)?;
    Ok(Extensions {
        phi,
        k,
        fan: Vec::with_capacity(phi.n()),
        started: false,
        done: false,
    })
}

pub struct Extensions<'a> {
    phi: &'a EdgeColoring,
    k: ColorId,
    fan: Vec<ColorId>,
    started: bool,
    done: bool,
}

impl Extensions<'_> {
    fn placeable(&self, pos: usize, c: ColorId) -> bool {
        for w in 0..pos {
            let f = self.fan[w];
            let base = self.phi.color_unchecked(w, pos);
            if f != c && base != c && base != f {
                return false;
            }
        }
        true
    }
}

impl Iterator for Extensions<'_> {
    type Item = Vec<ColorId>;

    fn next(&mut self) -> Option<Vec<ColorId>> {
        if self.done {
            return None;
        }
        let n = self.phi.n();
        let mut candidate = if !self.started {
            self.started = true;
            1
        } else {
            match self.fan.pop() {
                Some(c) => c + 1,
                None => {
                    self.done = true;
                    return None;
                }
            }
        };
        loop {
            let pos = self.fan.len();
            let next = (candidate..=self.k).find(|&c| self.placeable(pos, c));
            match next {
                Some(c) => {
                    self.fan.push(c);
                    if self.fan.len() == n {
                        return Some(self.fan.clone());
                    }
                    candidate = 1;
                }
                None => match self.fan.pop() {
                    Some(c) => candidate = c + 1,
                    None => {
                        self.done = true;
                        return None;
                    }
                },
            }
        }
    }
}

/// Outcome of checking the extension recurrence `w(φ',k) <= 2w(φ,k) + (k-2)`
/// on one parent/child pair.
#[derive(Clone, Debug)]
pub struct RecurrenceCheck {
    pub parent_count: BigCount,
    pub child_count: BigCount,
    pub bound: BigCount,
    pub holds: bool,
}

/// Extends `φ` by `fan`, computes both extension counts and reports whether
/// the child count obeys `2·w(φ,k) + (k-2)`. Rejects fans that are not
/// Gallai extensions.
pub fn check_recurrence(phi: &EdgeColoring, fan: &[ColorId], k: ColorId) -> Result<RecurrenceCheck> {
    let child = phi.extend_with_fan(fan)?;
    let parent_count = count_extensions(phi, k)?;
    let child_count = count_extensions(&child, k)?;
    // 2w + k - 2 stays nonnegative for every w >= 1, k >= 1.
    let bound = (&parent_count * big(2) + big(k as u64)) - big(2);
    let holds = child_count <= bound;
    Ok(RecurrenceCheck {
        parent_count,
        child_count,
        bound,
        holds,
    })
}
