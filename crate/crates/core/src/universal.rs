//! Strahler-universal trees.
//!
//! `U(t, h, k)` and `V(t, h, k)` are built explicitly by mutual recursion.
//! Their labelled counterparts are described succinctly: a leaf of the
//! labelled tree `B(t, h, k)` is a tuple `⟨β_{h-1}, …, β_1⟩` of bit strings,
//! and [`SuccinctLeaf`] stores only its `(component, bit)` pairs. The
//! level successor and minimal completion work on that representation
//! without materializing the tree.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::trees::{tree_from_leaves, LabelledTree, OrderedTree};

/// Default cap on the number of leaves of an explicitly built tree.
pub const DEFAULT_LEAF_CAP: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("invalid tree parameters t={t}, h={h}, k={k}: need h >= k >= {min_k}")]
    InvalidParams { t: u32, h: u32, k: u32, min_k: u32 },
    #[error("tree would have up to {predicted} leaves, above the cap of {cap}")]
    BudgetExceeded { predicted: BigUint, cap: u64 },
    #[error("tuple is not a leaf of the tree with t={t}, h={h}, k={k}")]
    NotALeaf { t: u32, h: u32, k: u32 },
}

/// Parameters of a universal tree: `t` is the log of the leaf budget, `h`
/// the height and `k` the Strahler budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TreeParams {
    pub t: u32,
    pub h: u32,
    pub k: u32,
}

impl TreeParams {
    pub fn new(t: u32, h: u32, k: u32) -> Result<Self, TreeError> {
        let p = TreeParams { t, h, k };
        p.check(1)?;
        Ok(p)
    }

    fn check(&self, min_k: u32) -> Result<(), TreeError> {
        if self.k < min_k || self.k > self.h {
            return Err(TreeError::InvalidParams {
                t: self.t,
                h: self.h,
                k: self.k,
                min_k,
            });
        }
        Ok(())
    }

    /// Number of components of a leaf tuple.
    pub fn width(&self) -> u32 {
        self.h - 1
    }
}

/// A finite bit string, ordered by `0β < ε < 1β` and `bβ < bβ'` iff `β < β'`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn empty() -> Self {
        BitString(Vec::new())
    }

    pub fn from_bits(bits: impl IntoIterator<Item = bool>) -> Self {
        BitString(bits.into_iter().collect())
    }

    pub fn zeros(len: usize) -> Self {
        BitString(vec![false; len])
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn leading_bit(&self) -> Option<bool> {
        self.0.first().copied()
    }

    /// Bits after the leading one.
    pub fn non_leading(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }
}

impl std::str::FromStr for BitString {
    type Err = String;

    /// Parses `0`/`1` characters; `-` or the empty string is `ε`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "-" {
            return Ok(BitString::empty());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(format!("invalid bit {other:?}")),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BitString)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "-");
        }
        for &b in &self.0 {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Lexicographic comparison of bit sequences under `0β < ε < 1β`.
pub fn lex_compare_bits(
    mut a: impl Iterator<Item = bool>,
    mut b: impl Iterator<Item = bool>,
) -> Ordering {
    loop {
        match (a.next(), b.next()) {
            (None, None) => return Ordering::Equal,
            (None, Some(next)) => {
                return if next {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            (Some(next), None) => {
                return if next {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
            (Some(x), Some(y)) if x != y => return x.cmp(&y),
            _ => {}
        }
    }
}

pub fn lex_compare(a: &BitString, b: &BitString) -> Ordering {
    lex_compare_bits(a.0.iter().copied(), b.0.iter().copied())
}

impl Ord for BitString {
    fn cmp(&self, other: &Self) -> Ordering {
        lex_compare(self, other)
    }
}

impl PartialOrd for BitString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Entry {
    component: u32,
    bit: bool,
}

/// A leaf tuple `⟨β_{h-1}, …, β_1⟩` stored as its sequence of
/// `(component, bit)` pairs, highest component first and bits of one
/// component in string order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SuccinctLeaf {
    width: u32,
    entries: Vec<Entry>,
    nonempty: u32,
    non_leading: u32,
}

impl SuccinctLeaf {
    /// Builds a leaf from its components, `components[0]` being `β_{h-1}`.
    pub fn from_components(components: &[BitString]) -> Self {
        let width = components.len() as u32;
        let mut entries = Vec::new();
        let mut nonempty = 0;
        let mut non_leading = 0;
        for (i, beta) in components.iter().enumerate() {
            let component = width - i as u32;
            if !beta.is_empty() {
                nonempty += 1;
                non_leading += beta.non_leading() as u32;
            }
            entries.extend(beta.bits().iter().map(|&bit| Entry { component, bit }));
        }
        SuccinctLeaf {
            width,
            entries,
            nonempty,
            non_leading,
        }
    }

    /// Parses the dump format: components separated by commas, `-` for `ε`.
    pub fn parse(text: &str) -> Result<Self, String> {
        let trimmed = text.trim().trim_start_matches('<').trim_end_matches('>');
        if trimmed.is_empty() {
            return Ok(SuccinctLeaf::from_components(&[]));
        }
        let comps = trimmed
            .split(',')
            .map(|c| c.trim().parse::<BitString>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SuccinctLeaf::from_components(&comps))
    }

    /// Number of components (`h - 1`).
    pub fn width(&self) -> u32 {
        self.width
    }

    /// Number of stored `(component, bit)` pairs.
    pub fn entry_count(&self) -> usize {
        self.entries.len()
    }

    pub fn nonempty_count(&self) -> u32 {
        self.nonempty
    }

    pub fn non_leading_count(&self) -> u32 {
        self.non_leading
    }

    /// The `(component, bit)` pairs, highest component first.
    pub fn sparse_entries(&self) -> impl Iterator<Item = (u32, bool)> + '_ {
        self.entries.iter().map(|e| (e.component, e.bit))
    }

    /// `β_i` for `1 <= i <= width`.
    pub fn component(&self, i: u32) -> BitString {
        BitString::from_bits(
            self.entries
                .iter()
                .filter(|e| e.component == i)
                .map(|e| e.bit),
        )
    }

    /// All components, `β_{h-1}` first.
    pub fn components(&self) -> Vec<BitString> {
        let mut out = vec![BitString::empty(); self.width as usize];
        for e in &self.entries {
            out[(self.width - e.component) as usize].push(e.bit);
        }
        out
    }

    /// Non-empty components as `(index, bits)`, highest index first.
    fn groups(&self) -> impl Iterator<Item = (u32, &[Entry])> + '_ {
        self.entries
            .chunk_by(|a, b| a.component == b.component)
            .map(|g| (g[0].component, g))
    }

    /// Lexicographic comparison of the prefixes `⟨β_{h-1}, …, β_level⟩`.
    /// `level = 1` compares the whole tuples; `level > width` compares
    /// empty prefixes.
    pub fn compare_prefix(&self, other: &SuccinctLeaf, level: u32) -> Ordering {
        debug_assert_eq!(self.width, other.width);
        let mut a = self.groups().take_while(|g| g.0 >= level).peekable();
        let mut b = other.groups().take_while(|g| g.0 >= level).peekable();
        // A non-empty string against ε is decided by its leading bit.
        let against_empty = |g: &[Entry]| {
            if g[0].bit {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        };
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, ga)), None) => return against_empty(ga),
                (None, Some(&(_, gb))) => return against_empty(gb).reverse(),
                (Some(&(ca, ga)), Some(&(cb, gb))) => match ca.cmp(&cb) {
                    Ordering::Greater => against_empty(ga),
                    Ordering::Less => against_empty(gb).reverse(),
                    Ordering::Equal => {
                        lex_compare_bits(ga.iter().map(|e| e.bit), gb.iter().map(|e| e.bit))
                    }
                },
            };
            if ord != Ordering::Equal {
                return ord;
            }
            a.next();
            b.next();
        }
    }

    /// Keeps components `>= level` and fills the ones below with the
    /// least completion allowed by the remaining budgets.
    fn complete_below(&self, params: TreeParams, level: u32) -> SuccinctLeaf {
        let mut entries: Vec<Entry> = self
            .entries
            .iter()
            .copied()
            .filter(|e| e.component >= level)
            .collect();
        let (nonempty, non_leading) = budgets_of(&entries);
        let mut leaf = SuccinctLeaf {
            width: self.width,
            entries: Vec::new(),
            nonempty,
            non_leading,
        };
        let remaining = (params.k - 1).saturating_sub(nonempty);
        let spare = params.t.saturating_sub(non_leading);
        fill_minimal(&mut entries, level, remaining, spare);
        leaf.entries = entries;
        leaf.nonempty = nonempty + remaining;
        leaf.non_leading = non_leading + if remaining > 0 { spare } else { 0 };
        leaf
    }
}

fn budgets_of(entries: &[Entry]) -> (u32, u32) {
    let mut nonempty = 0;
    let mut bits = 0;
    for g in entries.chunk_by(|a, b| a.component == b.component) {
        nonempty += 1;
        bits += g.len() as u32 - 1;
    }
    (nonempty, bits)
}

/// Appends the minimal fill below `level`: `0^{spare+1}` at `level - 1`,
/// then `0` for the next `remaining - 1` components, then `ε`.
fn fill_minimal(entries: &mut Vec<Entry>, level: u32, remaining: u32, spare: u32) {
    if remaining == 0 {
        return;
    }
    debug_assert!(level > remaining, "not enough components for the fill");
    let first = level - 1;
    for _ in 0..=spare {
        entries.push(Entry {
            component: first,
            bit: false,
        });
    }
    for component in (first - remaining + 1..first).rev() {
        entries.push(Entry {
            component,
            bit: false,
        });
    }
}

impl Ord for SuccinctLeaf {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare_prefix(other, 1)
    }
}

impl PartialOrd for SuccinctLeaf {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Dump format: components separated by commas, `ε` as `-`.
impl fmt::Display for SuccinctLeaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components().iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for SuccinctLeaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{self}>")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Kind {
    U,
    V,
}

/// Explicit builder for `U` and `V` trees, sharing equal subtrees.
struct Builder {
    memo: HashMap<(Kind, u32, u32, u32), OrderedTree>,
}

impl Builder {
    fn u(&mut self, t: u32, h: u32, k: u32) -> OrderedTree {
        if let Some(tree) = self.memo.get(&(Kind::U, t, h, k)) {
            return tree.clone();
        }
        let tree = if k == 1 {
            OrderedTree::chain(h as usize)
        } else if t == 0 {
            OrderedTree::node(vec![self.u(t, h - 1, k - 1)])
        } else if h == k {
            self.v(t, h, k)
        } else {
            let side = self.v(t, h, k);
            let middle = OrderedTree::node(vec![self.u(t, h - 1, k)]);
            side.compose(&middle).compose(&side)
        };
        self.memo.insert((Kind::U, t, h, k), tree.clone());
        tree
    }

    fn v(&mut self, t: u32, h: u32, k: u32) -> OrderedTree {
        debug_assert!(h >= k && k >= 2);
        if let Some(tree) = self.memo.get(&(Kind::V, t, h, k)) {
            return tree.clone();
        }
        let tree = if t == 0 {
            OrderedTree::node(vec![self.u(t, h - 1, k - 1)])
        } else {
            let side = self.v(t - 1, h, k);
            let middle = OrderedTree::node(vec![self.u(t, h - 1, k - 1)]);
            side.compose(&middle).compose(&side)
        };
        self.memo.insert((Kind::V, t, h, k), tree.clone());
        tree
    }
}

fn check_cap(p: TreeParams, cap: u64) -> Result<(), TreeError> {
    let predicted = leaf_bound(p)?;
    if predicted > BigUint::from(cap) {
        return Err(TreeError::BudgetExceeded { predicted, cap });
    }
    Ok(())
}

/// The ordered tree `U(t, h, k)`.
pub fn build_u(p: TreeParams, cap: u64) -> Result<OrderedTree, TreeError> {
    p.check(1)?;
    check_cap(p, cap)?;
    let mut builder = Builder {
        memo: HashMap::new(),
    };
    Ok(builder.u(p.t, p.h, p.k))
}

/// The ordered tree `V(t, h, k)`, defined for `h >= k >= 2`.
pub fn build_v(p: TreeParams, cap: u64) -> Result<OrderedTree, TreeError> {
    p.check(2)?;
    check_cap(p, cap)?;
    let mut builder = Builder {
        memo: HashMap::new(),
    };
    Ok(builder.v(p.t, p.h, p.k))
}

fn binomial(n: u32, r: u32) -> BigUint {
    if r > n {
        return BigUint::from(0u32);
    }
    let mut acc = BigUint::one();
    for i in 0..r {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Upper bound on the number of leaves of `U(t, h, k)`: 1 when `k = 1`,
/// otherwise `2^(t+k) · C(t+k-2, k-2) · C(h-1, k-1)`.
pub fn leaf_bound(p: TreeParams) -> Result<BigUint, TreeError> {
    p.check(1)?;
    if p.k == 1 {
        return Ok(BigUint::one());
    }
    let power = BigUint::one() << (p.t + p.k) as usize;
    Ok(power * binomial(p.t + p.k - 2, p.k - 2) * binomial(p.h - 1, p.k - 1))
}

/// Whether `leaf` satisfies the four defining conditions of the leaves of
/// `B(t, h, k)`.
pub fn is_b_leaf(p: TreeParams, leaf: &SuccinctLeaf) -> bool {
    if p.check(1).is_err() || leaf.width() != p.width() {
        return false;
    }
    let comps = leaf.components();
    let nonempty = comps.iter().filter(|b| !b.is_empty()).count() as u32;
    let total_bits: u32 = comps.iter().map(|b| b.len() as u32).sum();
    if nonempty != p.k - 1 || total_bits > (p.k - 1) + p.t {
        return false;
    }
    // comps[j] is β_{h-1-j}; the components above β_i are comps[..j].
    let mut seen_nonempty = 0;
    let mut seen_non_leading = 0;
    for beta in &comps {
        if seen_nonempty < p.k - 1 && seen_non_leading >= p.t && *beta != BitString::zeros(1) {
            return false;
        }
        if !beta.is_empty() {
            seen_nonempty += 1;
            seen_non_leading += beta.non_leading() as u32;
        }
    }
    // Every component in the trailing run of non-empty strings is 0-led.
    comps
        .iter()
        .rev()
        .take_while(|b| !b.is_empty())
        .all(|b| b.leading_bit() == Some(false))
}

/// All tuples satisfying the necessary counting conditions, then filtered
/// by [`is_b_leaf`], sorted lexicographically.
pub fn b_leaves(p: TreeParams, cap: u64) -> Result<Vec<SuccinctLeaf>, TreeError> {
    p.check(1)?;
    check_cap(p, cap)?;
    let width = p.width() as usize;
    let mut out = Vec::new();
    let mut current: Vec<BitString> = Vec::with_capacity(width);
    enumerate_tuples(p, width, &mut current, 0, 0, &mut out);
    out.sort();
    Ok(out)
}

fn enumerate_tuples(
    p: TreeParams,
    width: usize,
    current: &mut Vec<BitString>,
    nonempty: u32,
    bits: u32,
    out: &mut Vec<SuccinctLeaf>,
) {
    let position = current.len();
    if position == width {
        let leaf = SuccinctLeaf::from_components(current);
        if is_b_leaf(p, &leaf) {
            out.push(leaf);
        }
        return;
    }
    let needed = (p.k - 1) - nonempty;
    let slots_after = (width - position - 1) as u32;
    if slots_after >= needed {
        current.push(BitString::empty());
        enumerate_tuples(p, width, current, nonempty, bits, out);
        current.pop();
    }
    if needed == 0 {
        return;
    }
    let max_len = (p.k - 1 + p.t) - bits;
    for len in 1..=max_len {
        for pattern in 0u64..(1u64 << len) {
            let beta = BitString::from_bits((0..len).rev().map(|i| pattern >> i & 1 == 1));
            current.push(beta);
            enumerate_tuples(p, width, current, nonempty + 1, bits + len, out);
            current.pop();
        }
    }
}

/// The labelled tree `B(t, h, k)` generated by its leaf tuples, children
/// ordered by [`lex_compare`].
pub fn build_labelled_b(p: TreeParams, cap: u64) -> Result<LabelledTree<BitString>, TreeError> {
    let leaves = b_leaves(p, cap)?;
    Ok(tree_from_leaves(leaves.iter().map(|l| l.components())))
}

/// The least leaf of `B(t, h, k)`.
pub fn min_leaf(p: TreeParams) -> Result<SuccinctLeaf, TreeError> {
    p.check(1)?;
    let empty = SuccinctLeaf {
        width: p.width(),
        entries: Vec::new(),
        nonempty: 0,
        non_leading: 0,
    };
    Ok(empty.complete_below(p, p.h))
}

/// The least leaf that agrees with `leaf` on the components `>= level`.
pub fn min_descendant(p: TreeParams, leaf: &SuccinctLeaf, level: u32) -> SuccinctLeaf {
    leaf.complete_below(p, level.clamp(1, p.h))
}

/// Next child label after `beta` among the children of a node whose
/// subtree is `B(spare, height, remaining + 1)`, where `remaining >= 1`
/// non-empty components are still to be placed and `spare` non-leading
/// bits are still available.
///
/// The child labels are all strings of length at most `spare + 1` led by
/// `0`, then (if `height > remaining + 1`) `ε` and all strings of length
/// at most `spare + 1` led by `1`; lexicographic successor in that set.
fn next_label(beta: &[bool], spare: u32, height: u32, remaining: u32) -> Option<Vec<bool>> {
    let max_len = spare as usize + 1;
    let epsilon_allowed = height > remaining + 1 && spare >= 1;
    if beta.len() < max_len {
        if beta.is_empty() && !epsilon_allowed {
            return None;
        }
        let mut next = beta.to_vec();
        next.push(true);
        next.extend(std::iter::repeat(false).take(max_len - beta.len() - 1));
        return Some(next);
    }
    // Full length: drop the trailing `0 1^j`.
    let last_zero = beta.iter().rposition(|&b| !b)?;
    let next = beta[..last_zero].to_vec();
    if next.is_empty() && !epsilon_allowed {
        return None;
    }
    Some(next)
}

/// The lexicographically least leaf whose prefix `⟨β_{h-1}, …, β_level⟩`
/// is strictly greater than that of `leaf`, if any.
///
/// Only components holding bits and the runs of `ε` between them are
/// visited, so the work is proportional to the number of stored entries.
pub fn level_successor(
    p: TreeParams,
    leaf: &SuccinctLeaf,
    level: u32,
) -> Result<Option<SuccinctLeaf>, TreeError> {
    if !is_b_leaf(p, leaf) {
        return Err(TreeError::NotALeaf {
            t: p.t,
            h: p.h,
            k: p.k,
        });
    }
    Ok(level_successor_unchecked(p, leaf, level))
}

/// [`level_successor`] without re-validating `leaf`.
pub fn level_successor_unchecked(
    p: TreeParams,
    leaf: &SuccinctLeaf,
    level: u32,
) -> Option<SuccinctLeaf> {
    let top = p.width();
    if level == 0 || level > top {
        return None;
    }
    // Non-empty components in ascending order with suffix budgets.
    let groups: Vec<(u32, &[Entry])> = leaf
        .entries
        .chunk_by(|a, b| a.component == b.component)
        .rev()
        .map(|g| (g[0].component, g))
        .collect();
    let count = groups.len();
    // above[j] = (non-empty, non-leading) among groups j.. (ascending index).
    let mut above = vec![(0u32, 0u32); count + 1];
    for j in (0..count).rev() {
        above[j] = (
            above[j + 1].0 + 1,
            above[j + 1].1 + groups[j].1.len() as u32 - 1,
        );
    }
    let mut j = groups.iter().position(|g| g.0 >= level).unwrap_or(count);
    let mut r = level;
    while r <= top {
        if j < count && groups[j].0 == r {
            let (used, used_bits) = above[j + 1];
            let remaining = (p.k - 1) - used;
            let spare = p.t - used_bits;
            let beta: Vec<bool> = groups[j].1.iter().map(|e| e.bit).collect();
            if let Some(next) = next_label(&beta, spare, r + 1, remaining) {
                return Some(rebuild(p, leaf, r, &next));
            }
            r += 1;
            j += 1;
        } else {
            // A run of ε components up to the next non-empty one.
            let (used, used_bits) = above[j];
            let remaining = (p.k - 1) - used;
            let spare = p.t - used_bits;
            let run_end = if j < count { groups[j].0 } else { top + 1 };
            if remaining >= 1 && spare >= 1 {
                let candidate = r.max(remaining + 1);
                if candidate < run_end {
                    let next = next_label(&[], spare, candidate + 1, remaining)
                        .expect("ε has a successor when budgets remain");
                    return Some(rebuild(p, leaf, candidate, &next));
                }
            }
            r = run_end;
        }
    }
    None
}

/// Keeps components above `at`, sets `β_at = label`, and fills below.
fn rebuild(p: TreeParams, leaf: &SuccinctLeaf, at: u32, label: &[bool]) -> SuccinctLeaf {
    let mut entries: Vec<Entry> = leaf
        .entries
        .iter()
        .copied()
        .filter(|e| e.component > at)
        .collect();
    entries.extend(label.iter().map(|&bit| Entry { component: at, bit }));
    let (nonempty, non_leading) = budgets_of(&entries);
    let remaining = (p.k - 1) - nonempty;
    let spare = p.t - non_leading;
    fill_minimal(&mut entries, at, remaining, spare);
    SuccinctLeaf {
        width: leaf.width,
        nonempty: nonempty + remaining,
        non_leading: non_leading + if remaining > 0 { spare } else { 0 },
        entries,
    }
}

/// Leaf-tuple dump: one tuple per line.
pub fn render_leaves(leaves: &[SuccinctLeaf]) -> String {
    let mut out = String::new();
    for leaf in leaves {
        out.push_str(&leaf.to_string());
        out.push('\n');
    }
    out
}

/// `leaf_bound` as `f64` (for growth tables).
pub fn leaf_bound_f64(p: TreeParams) -> Result<f64, TreeError> {
    Ok(leaf_bound(p)?.to_f64().unwrap_or(f64::INFINITY))
}
