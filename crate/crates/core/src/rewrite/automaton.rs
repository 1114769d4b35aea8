//! Aho–Corasick matcher over generator ids, used to find every rule source
//! occurring as a factor of a word in one pass.

use std::collections::{HashMap, VecDeque};

use crate::algebra::Gen;

#[derive(Clone, Debug, Default)]
struct Node {
    next: HashMap<Gen, usize>,
    fail: usize,
    /// (pattern index, pattern length) for patterns ending here, including via suffix links.
    out: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct Matcher {
    nodes: Vec<Node>,
}

impl Matcher {
    pub fn new<'a>(patterns: impl IntoIterator<Item = &'a [Gen]>) -> Matcher {
        let mut nodes = vec![Node::default()];
        for (pi, pat) in patterns.into_iter().enumerate() {
            if pat.is_empty() {
                continue;
            }
            let mut cur = 0;
            for &g in pat {
                cur = match nodes[cur].next.get(&g) {
                    Some(&n) => n,
                    None => {
                        nodes.push(Node::default());
                        let n = nodes.len() - 1;
                        nodes[cur].next.insert(g, n);
                        n
                    }
                };
            }
            nodes[cur].out.push((pi, pat.len()));
        }
        let mut queue = VecDeque::new();
        let root_children: Vec<usize> = nodes[0].next.values().copied().collect();
        for c in root_children {
            nodes[c].fail = 0;
            queue.push_back(c);
        }
        while let Some(u) = queue.pop_front() {
            let edges: Vec<(Gen, usize)> = nodes[u].next.iter().map(|(&g, &v)| (g, v)).collect();
            for (g, v) in edges {
                let mut f = nodes[u].fail;
                let target = loop {
                    if let Some(&t) = nodes[f].next.get(&g) {
                        if t != v {
                            break t;
                        }
                    }
                    if f == 0 {
                        break 0;
                    }
                    f = nodes[f].fail;
                };
                nodes[v].fail = target;
                let inherited = nodes[target].out.clone();
                nodes[v].out.extend(inherited);
                queue.push_back(v);
            }
        }
        Matcher { nodes }
    }

    fn step(&self, mut state: usize, g: Gen) -> usize {
        loop {
            if let Some(&n) = self.nodes[state].next.get(&g) {
                return n;
            }
            if state == 0 {
                return 0;
            }
            state = self.nodes[state].fail;
        }
    }

    /// All `(start, pattern)` occurrences, sorted by start then pattern index.
    pub fn find_all(&self, word: &[Gen]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut s = 0;
        for (i, &g) in word.iter().enumerate() {
            s = self.step(s, g);
            for &(pi, len) in &self.nodes[s].out {
                out.push((i + 1 - len, pi));
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_irreducible(&self, word: &[Gen]) -> bool {
        let mut s = 0;
        for &g in word {
            s = self.step(s, g);
            if !self.nodes[s].out.is_empty() {
                return false;
            }
        }
        true
    }

    /// State after reading `word`, for incremental scans.
    pub fn state_after(&self, word: &[Gen]) -> usize {
        word.iter().fold(0, |s, &g| self.step(s, g))
    }

    /// Advance one letter; returns the new state and whether a pattern ends there.
    pub fn advance(&self, state: usize, g: Gen) -> (usize, bool) {
        let n = self.step(state, g);
        (n, !self.nodes[n].out.is_empty())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(pats: &[Vec<Gen>], w: &[Gen]) -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for (pi, p) in pats.iter().enumerate() {
            if p.len() <= w.len() {
                for s in 0..=w.len() - p.len() {
                    if &w[s..s + p.len()] == p.as_slice() {
                        v.push((s, pi));
                    }
                }
            }
        }
        v.sort_unstable();
        v
    }

    #[test]
    fn agrees_with_naive_scan() {
        let pats = vec![vec![1, 1], vec![0, 1], vec![1, 0, 0], vec![0, 1, 2], vec![1]];
        let m = Matcher::new(pats.iter().map(|p| p.as_slice()));
        let words: Vec<Vec<Gen>> = vec![vec![1, 1, 1], vec![0, 1, 0, 0, 1, 2], vec![], vec![2, 2], vec![1, 0, 0, 1, 1, 0, 0]];
        for w in words {
            assert_eq!(m.find_all(&w), naive(&pats, &w), "word {w:?}");
        }
    }
}
