//! Ordered trees, labelled ordered trees and their metrics.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// An ordered tree: a finite sequence of child trees. The trivial tree
/// `⟨⟩` has no children and is a single leaf.
///
/// Children are shared behind an `Arc`, so the recursive constructions of
/// universal trees reuse identical subtrees instead of copying them.
#[derive(Clone, Default)]
pub struct OrderedTree {
    children: Arc<Vec<OrderedTree>>,
}

impl OrderedTree {
    /// The trivial tree `⟨⟩`.
    pub fn leaf() -> Self {
        OrderedTree::default()
    }

    pub fn node(children: Vec<OrderedTree>) -> Self {
        OrderedTree {
            children: Arc::new(children),
        }
    }

    /// The single-leaf tree of height `h` (`h >= 1`).
    pub fn chain(h: usize) -> Self {
        assert!(h >= 1, "chain trees have height at least 1");
        let mut tree = OrderedTree::leaf();
        for _ in 1..h {
            tree = OrderedTree::node(vec![tree]);
        }
        tree
    }

    /// `⟨t, …, t⟩` with `copies` children.
    pub fn repeated(t: &OrderedTree, copies: usize) -> Self {
        OrderedTree::node(vec![t.clone(); copies])
    }

    pub fn children(&self) -> &[OrderedTree] {
        &self.children
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn height(&self) -> usize {
        1 + self.children.iter().map(|c| c.height()).max().unwrap_or(0)
    }

    pub fn leaves(&self) -> usize {
        if self.is_leaf() {
            1
        } else {
            self.children.iter().map(|c| c.leaves()).sum()
        }
    }

    /// Height and number of leaves.
    pub fn metrics(&self) -> (usize, usize) {
        (self.height(), self.leaves())
    }

    /// Strahler number: 1 for a leaf; otherwise the largest child value
    /// `m`, plus one unless `m` is attained by a single child.
    pub fn strahler(&self) -> usize {
        let mut best = 0;
        let mut ties = 0;
        for child in self.children.iter() {
            let s = child.strahler();
            match s.cmp(&best) {
                Ordering::Greater => {
                    best = s;
                    ties = 1;
                }
                Ordering::Equal => ties += 1,
                Ordering::Less => {}
            }
        }
        match ties {
            0 => 1,
            1 => best,
            _ => best + 1,
        }
    }

    /// Sequential composition: merges the roots, children of `self` first.
    pub fn compose(&self, other: &OrderedTree) -> OrderedTree {
        let mut children = Vec::with_capacity(self.children.len() + other.children.len());
        children.extend(self.children.iter().cloned());
        children.extend(other.children.iter().cloned());
        OrderedTree::node(children)
    }

    /// Whether `self` embeds into `big`: the children of `self` embed, in
    /// order, into a subsequence of the children of `big`.
    ///
    /// Each child is matched to the earliest feasible child of `big`.
    pub fn embeds_into(&self, big: &OrderedTree) -> bool {
        if Arc::ptr_eq(&self.children, &big.children) {
            return true;
        }
        let mut candidates = big.children.iter();
        'outer: for child in self.children.iter() {
            for target in candidates.by_ref() {
                if child.embeds_into(target) {
                    continue 'outer;
                }
            }
            return false;
        }
        true
    }

    /// The `{1, 2, …}`-labelled tree whose labels number the children.
    pub fn natural_labelling(&self) -> LabelledTree<usize> {
        LabelledTree::node(
            self.children
                .iter()
                .enumerate()
                .map(|(i, c)| (i + 1, c.natural_labelling()))
                .collect(),
        )
    }

    /// Root-to-leaf label paths of the natural labelling, in order.
    pub fn leaf_paths(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        collect_paths(self, &mut path, &mut out);
        out
    }

    /// Indented text dump, one node per line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        render_into(self, 0, &mut out);
        out
    }
}

fn collect_paths(tree: &OrderedTree, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if tree.is_leaf() {
        out.push(path.clone());
        return;
    }
    for (i, child) in tree.children.iter().enumerate() {
        path.push(i + 1);
        collect_paths(child, path, out);
        path.pop();
    }
}

fn render_into(tree: &OrderedTree, depth: usize, out: &mut String) {
    for _ in 0..depth {
        out.push_str("  ");
    }
    out.push_str(if tree.is_leaf() { "o\n" } else { "+\n" });
    for child in tree.children.iter() {
        render_into(child, depth + 1, out);
    }
}

impl PartialEq for OrderedTree {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.children, &other.children) || self.children == other.children
    }
}

impl Eq for OrderedTree {}

impl fmt::Debug for OrderedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Bracket notation: `<>` is the trivial tree, `<<>,<>>` has two leaves.
impl fmt::Display for OrderedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, child) in self.children.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{child}")?;
        }
        write!(f, ">")
    }
}

/// An ordered tree whose edges to children carry strictly increasing
/// labels. Nodes are identified with their label sequences from the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledTree<L> {
    children: Vec<(L, LabelledTree<L>)>,
}

impl<L> Default for LabelledTree<L> {
    fn default() -> Self {
        LabelledTree {
            children: Vec::new(),
        }
    }
}

impl<L: Ord + Clone> LabelledTree<L> {
    pub fn leaf() -> Self {
        LabelledTree::default()
    }

    /// Builds a node. Panics if the labels are not strictly increasing.
    pub fn node(children: Vec<(L, LabelledTree<L>)>) -> Self {
        assert!(
            children.windows(2).all(|w| w[0].0 < w[1].0),
            "sibling labels must be strictly increasing"
        );
        LabelledTree { children }
    }

    pub fn children(&self) -> &[(L, LabelledTree<L>)] {
        &self.children
    }

    /// Drops the labels.
    pub fn unlabel(&self) -> OrderedTree {
        OrderedTree::node(self.children.iter().map(|(_, c)| c.unlabel()).collect())
    }

    /// Label sequences of the leaves, in tree order.
    pub fn leaves(&self) -> Vec<Vec<L>> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.collect_leaves(&mut path, &mut out);
        out
    }

    fn collect_leaves(&self, path: &mut Vec<L>, out: &mut Vec<Vec<L>>) {
        if self.children.is_empty() {
            out.push(path.clone());
            return;
        }
        for (label, child) in &self.children {
            path.push(label.clone());
            child.collect_leaves(path, out);
            path.pop();
        }
    }
}

/// The labelled tree whose node set is the prefix closure of `labels`.
pub fn tree_from_leaves<L, I>(labels: I) -> LabelledTree<L>
where
    L: Ord + Clone,
    I: IntoIterator<Item = Vec<L>>,
{
    #[derive(Default)]
    struct Trie<L: Ord> {
        children: BTreeMap<L, Trie<L>>,
    }

    fn freeze<L: Ord + Clone>(trie: Trie<L>) -> LabelledTree<L> {
        LabelledTree {
            children: trie
                .children
                .into_iter()
                .map(|(label, child)| (label, freeze(child)))
                .collect(),
        }
    }

    let mut root: Trie<L> = Trie {
        children: BTreeMap::new(),
    };
    for sequence in labels {
        let mut node = &mut root;
        for label in sequence {
            node = node.children.entry(label).or_insert_with(|| Trie {
                children: BTreeMap::new(),
            });
        }
    }
    freeze(root)
}

/// Every ordered tree with at most `max_leaves` leaves and height at most
/// `max_height`, each exactly once.
///
/// Trees are grouped by height (then by leaf count); within a group they
/// are produced by recursive composition of a first child with the rest.
pub fn small_trees(max_leaves: usize, max_height: usize) -> Vec<OrderedTree> {
    let mut table = SmallTreeTable::default();
    let mut out = Vec::new();
    for h in 1..=max_height {
        for leaves in 1..=max_leaves {
            out.extend(table.exact(leaves, h).iter().cloned());
        }
    }
    out
}

/// Memo tables of trees by exact height and leaf count.
#[derive(Default)]
struct SmallTreeTable {
    /// Trees of exactly `leaves` leaves and height exactly `h`.
    exact: BTreeMap<(usize, usize), Vec<OrderedTree>>,
    /// Non-empty child sequences with `leaves` leaves in total whose
    /// children have height `< h`, at least one of them exactly `h - 1`.
    forests: BTreeMap<(usize, usize, bool), Vec<Vec<OrderedTree>>>,
}

impl SmallTreeTable {
    fn exact(&mut self, leaves: usize, h: usize) -> Vec<OrderedTree> {
        if let Some(found) = self.exact.get(&(leaves, h)) {
            return found.clone();
        }
        let trees = if h == 1 {
            if leaves == 1 {
                vec![OrderedTree::leaf()]
            } else {
                Vec::new()
            }
        } else {
            self.forests(leaves, h - 1, true)
                .into_iter()
                .map(OrderedTree::node)
                .collect()
        };
        self.exact.insert((leaves, h), trees.clone());
        trees
    }

    /// Non-empty sequences of trees of height `<= max_h` totalling
    /// `leaves` leaves; if `need_tall`, some tree has height exactly `max_h`.
    fn forests(&mut self, leaves: usize, max_h: usize, need_tall: bool) -> Vec<Vec<OrderedTree>> {
        if leaves == 0 || max_h == 0 {
            return Vec::new();
        }
        if let Some(found) = self.forests.get(&(leaves, max_h, need_tall)) {
            return found.clone();
        }
        let mut out = Vec::new();
        for first_leaves in 1..=leaves {
            for first_h in 1..=max_h {
                let firsts = self.exact(first_leaves, first_h);
                if firsts.is_empty() {
                    continue;
                }
                let first_is_tall = first_h == max_h;
                let rest_leaves = leaves - first_leaves;
                let rests: Vec<Vec<OrderedTree>> = if rest_leaves == 0 {
                    if need_tall && !first_is_tall {
                        Vec::new()
                    } else {
                        vec![Vec::new()]
                    }
                } else {
                    self.forests(rest_leaves, max_h, need_tall && !first_is_tall)
                };
                for first in &firsts {
                    for rest in &rests {
                        let mut seq = Vec::with_capacity(rest.len() + 1);
                        seq.push(first.clone());
                        seq.extend(rest.iter().cloned());
                        out.push(seq);
                    }
                }
            }
        }
        self.forests.insert((leaves, max_h, need_tall), out.clone());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leaf() -> OrderedTree {
        OrderedTree::leaf()
    }

    /// `⟨⟨∘³⟩, ∘⁴, ⟨⟨∘⟩⟩²⟩` from the running example.
    fn running_example() -> OrderedTree {
        let first = OrderedTree::repeated(&leaf(), 3);
        let nested = OrderedTree::node(vec![OrderedTree::node(vec![leaf()])]);
        let mut children = vec![first];
        children.extend(std::iter::repeat(leaf()).take(4));
        children.extend(std::iter::repeat(nested).take(2));
        OrderedTree::node(children)
    }

    #[test]
    fn strahler_examples() {
        assert_eq!(leaf().strahler(), 1);
        assert_eq!(running_example().strahler(), 2);
        let mut perfect = leaf();
        for _ in 1..3 {
            perfect = OrderedTree::repeated(&perfect, 2);
        }
        assert_eq!(perfect.height(), 3);
        assert_eq!(perfect.strahler(), 3);
    }

    #[test]
    fn metrics_examples() {
        assert_eq!(leaf().metrics(), (1, 1));
        assert_eq!(running_example().metrics(), (4, 9));
        assert_eq!(OrderedTree::chain(3).metrics(), (3, 1));
    }

    #[test]
    fn compose_examples() {
        let a = OrderedTree::node(vec![OrderedTree::repeated(&leaf(), 3)]);
        let nested = OrderedTree::node(vec![OrderedTree::node(vec![leaf()])]);
        let mut b_children = vec![leaf(); 4];
        b_children.extend([nested.clone(), nested]);
        let b = OrderedTree::node(b_children);
        assert_eq!(a.compose(&b), running_example());
        assert_eq!(leaf().compose(&b), b);
        let i = OrderedTree::repeated(&leaf(), 2);
        let j = OrderedTree::repeated(&leaf(), 3);
        assert_eq!(i.compose(&j), OrderedTree::repeated(&leaf(), 5));
    }

    #[test]
    fn embedding_examples() {
        assert!(leaf().embeds_into(&running_example()));
        let two = OrderedTree::repeated(&leaf(), 2);
        let one = OrderedTree::repeated(&leaf(), 1);
        assert!(!two.embeds_into(&one));
        assert!(one.embeds_into(&two));
        // Order matters: ⟨⟨∘⟩, ∘∘⟩ does not fit ⟨∘, ⟨∘⟩⟩'s order constraint
        // when it requires two children after the deep one.
        let deep = OrderedTree::node(vec![leaf()]);
        let small = OrderedTree::node(vec![deep.clone(), leaf()]);
        let big = OrderedTree::node(vec![leaf(), deep]);
        assert!(!small.embeds_into(&big));
    }

    #[test]
    fn generated_tree_example() {
        let tree = tree_from_leaves(vec![vec![1], vec![3, 1], vec![3, 4, 1], vec![6, 1]]);
        let expected = OrderedTree::node(vec![
            leaf(),
            OrderedTree::node(vec![leaf(), OrderedTree::node(vec![leaf()])]),
            OrderedTree::node(vec![leaf()]),
        ]);
        assert_eq!(tree.unlabel(), expected);
        assert_eq!(tree_from_leaves::<u32, _>(Vec::new()).unlabel(), leaf());
        assert_eq!(
            tree_from_leaves(vec![vec!['a']]).unlabel(),
            OrderedTree::node(vec![leaf()])
        );
    }

    #[test]
    fn natural_labelling_leaves() {
        let paths = running_example().leaf_paths();
        assert_eq!(
            paths,
            vec![
                vec![1, 1],
                vec![1, 2],
                vec![1, 3],
                vec![2],
                vec![3],
                vec![4],
                vec![5],
                vec![6, 1, 1],
                vec![7, 1, 1]
            ]
        );
        assert_eq!(running_example().natural_labelling().leaves(), paths);
    }

    #[test]
    fn small_tree_enumeration_edges() {
        let singles = small_trees(1, 4);
        assert_eq!(singles, (1..=4).map(OrderedTree::chain).collect::<Vec<_>>());
        let two_two = small_trees(2, 2);
        assert_eq!(two_two.len(), 3);
        assert!(two_two.contains(&OrderedTree::repeated(&leaf(), 2)));
    }

    #[test]
    #[should_panic]
    fn labels_must_increase() {
        LabelledTree::node(vec![(2, LabelledTree::leaf()), (1, LabelledTree::leaf())]);
    }
}
