//! Safra-Piterman determinization of Büchi automata with accepting
//! transitions.
//!
//! Trees are kept in compact form: node `i` has name `i + 1`, names are
//! ordered by age, so a parent always precedes its children and siblings
//! appear oldest first.

use std::collections::HashMap;

use super::Nba;
use crate::bitset::BitSet;
use crate::gadget::Gadget;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Node {
    parent: Option<usize>,
    label: BitSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Tree {
    nodes: Vec<Node>,
}

/// Lazily explored history trees of one Büchi automaton. Transition colors
/// are min-parity in `1..=2N+1` where `N` bounds the number of nodes:
/// `2i` when node `i` is the smallest one to turn green, `2i - 1` when it is
/// the smallest one to be removed, `2N + 1` when nothing happens.
#[derive(Debug, Clone)]
pub(crate) struct Determinizer {
    nba: Nba,
    trees: Vec<Tree>,
    index: HashMap<Tree, usize>,
    cache: HashMap<(usize, usize), (usize, u32)>,
}

impl Determinizer {
    pub fn new(nba: Nba) -> Self {
        let m = nba.num_states();
        let init = BitSet::from_indices(m, nba.initial_states());
        let root = if init.is_empty() { Vec::new() } else { vec![Node { parent: None, label: init }] };
        let mut d = Determinizer { nba, trees: Vec::new(), index: HashMap::new(), cache: HashMap::new() };
        d.intern_tree(Tree { nodes: root });
        d
    }

    pub fn intern_letter(&mut self, g: &Gadget) -> usize {
        self.nba.intern(g)
    }

    pub fn initial(&self) -> usize {
        0
    }

    /// Bound on the number of tree nodes.
    pub fn max_nodes(&self) -> u32 {
        u32::try_from(self.nba.num_states()).expect("automaton size fits in u32")
    }

    /// The largest color `step` can produce.
    pub fn max_color(&self) -> u32 {
        2 * self.max_nodes() + 1
    }

    fn intern_tree(&mut self, t: Tree) -> usize {
        if let Some(&i) = self.index.get(&t) {
            return i;
        }
        self.trees.push(t.clone());
        self.index.insert(t, self.trees.len() - 1);
        self.trees.len() - 1
    }

    /// Successor tree and min-parity color on `letter`.
    pub fn step(&mut self, tree: usize, letter: usize) -> (usize, u32) {
        if let Some(&hit) = self.cache.get(&(tree, letter)) {
            return hit;
        }
        let (next, color) = self.compute(tree, letter);
        let id = self.intern_tree(next);
        self.cache.insert((tree, letter), (id, color));
        (id, color)
    }

    fn compute(&self, tree: usize, letter: usize) -> (Tree, u32) {
        let m = self.nba.num_states();
        let old = &self.trees[tree].nodes;
        let old_len = old.len();

        // successor labels, plus one new youngest child per node holding the
        // states reached through accepting transitions
        let mut parent: Vec<Option<usize>> = old.iter().map(|n| n.parent).collect();
        let mut label: Vec<BitSet> = Vec::with_capacity(2 * old_len);
        let mut fresh = Vec::new();
        for (i, node) in old.iter().enumerate() {
            let mut all = BitSet::empty(m);
            let mut acc = BitSet::empty(m);
            for s in node.label.iter() {
                for (t, accepting) in self.nba.successors(s, letter) {
                    all.insert(t);
                    if accepting {
                        acc.insert(t);
                    }
                }
            }
            label.push(all);
            if !acc.is_empty() {
                fresh.push((i, acc));
            }
        }
        for (p, acc) in fresh {
            parent.push(Some(p));
            label.push(acc);
        }
        let len = label.len();
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); len];
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = p {
                children[*p].push(v);
            }
        }

        // a state stays only in the oldest branch that holds it
        if len > 0 {
            horizontal_merge(0, &BitSet::empty(m), &children, &mut label);
        }

        let mut removed = vec![false; len];
        for v in 0..len {
            if label[v].is_empty() || parent[v].is_some_and(|p| removed[p]) {
                removed[v] = true;
            }
        }
        let mut green = vec![false; len];
        for v in 0..len {
            if removed[v] || children[v].is_empty() {
                continue;
            }
            let mut union = BitSet::empty(m);
            for &c in children[v].iter().filter(|&&c| !removed[c]) {
                union.union_with(&label[c]);
            }
            if !union.is_empty() && union == label[v] {
                green[v] = true;
                remove_descendants(v, &children, &mut removed);
            }
        }

        let first_removed = (0..old_len).find(|&v| removed[v]);
        let first_green = (0..len).find(|&v| green[v]);
        let name = |v: usize| u32::try_from(v + 1).expect("small tree");
        let color = match (first_green, first_removed) {
            (Some(g), Some(r)) if g < r => 2 * name(g),
            (Some(g), None) => 2 * name(g),
            (_, Some(r)) => 2 * name(r) - 1,
            (None, None) => self.max_color(),
        };

        // compact names, keeping age order
        let mut rename = vec![usize::MAX; len];
        let mut nodes = Vec::new();
        for v in (0..len).filter(|&v| !removed[v]) {
            rename[v] = nodes.len();
            nodes.push(Node { parent: parent[v].map(|p| rename[p]), label: label[v].clone() });
        }
        (Tree { nodes }, color)
    }
}

/// Removes from `v` and its subtree every state in `blocked`, then lets
/// older children claim their states before younger ones.
fn horizontal_merge(v: usize, blocked: &BitSet, children: &[Vec<usize>], label: &mut [BitSet]) {
    label[v].difference_with(blocked);
    let mut seen = blocked.clone();
    for &c in &children[v] {
        horizontal_merge(c, &seen, children, label);
        seen.union_with(&label[c]);
    }
}

fn remove_descendants(v: usize, children: &[Vec<usize>], removed: &mut [bool]) {
    for &c in &children[v] {
        removed[c] = true;
        remove_descendants(c, children, removed);
    }
}
