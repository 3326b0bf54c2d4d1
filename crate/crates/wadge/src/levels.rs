//! Finite combinatorics of tuple sets: the coordinate-sharing graph,
//! one-sidedness, almost acyclicity, and basepoint partitions.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LevelError {
    #[error("tuple {index} has arity {got}, expected {expected}")]
    Arity { index: usize, got: usize, expected: usize },
    #[error("basepoint index {0} out of range")]
    NoBasepoint(usize),
    #[error("partition property ({property}) fails at tuples {a} and {b}")]
    PartitionCheck { property: u8, a: usize, b: usize },
}

/// A finite set of `d`-tuples, sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleSet<L> {
    d: usize,
    tuples: Vec<Vec<L>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasepointPartition {
    pub basepoint: usize,
    /// `M_0, …, M_{ℒ−1}` as tuple indices; empty blocks are kept.
    pub blocks: Vec<Vec<usize>>,
}

impl BasepointPartition {
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Nonempty blocks with their original indices.
    pub fn normalized(&self) -> Vec<(usize, Vec<usize>)> {
        self.blocks
            .iter()
            .enumerate()
            .filter(|(_, b)| !b.is_empty())
            .map(|(j, b)| (j, b.clone()))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub one_sided: bool,
    pub almost_acyclic: bool,
    /// Per basepoint: whether the construction succeeded.
    pub partitions: Vec<bool>,
}

impl EquivalenceReport {
    pub fn left(&self) -> bool {
        self.one_sided && self.almost_acyclic
    }

    pub fn right(&self) -> bool {
        self.partitions.iter().all(|&p| p)
    }

    pub fn agrees(&self) -> bool {
        self.left() == self.right()
    }
}

impl<L: std::cmp::Ord + Clone + Hash + Debug> TupleSet<L> {
    pub fn new(d: usize, tuples: Vec<Vec<L>>) -> Result<Self, LevelError> {
        for (index, t) in tuples.iter().enumerate() {
            if t.len() != d {
                return Err(LevelError::Arity { index, got: t.len(), expected: d });
            }
        }
        let tuples: Vec<Vec<L>> = tuples.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        Ok(TupleSet { d, tuples })
    }

    pub fn arity(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn tuples(&self) -> &[Vec<L>] {
        &self.tuples
    }

    pub fn index_of(&self, t: &[L]) -> Option<usize> {
        self.tuples.binary_search_by(|x| x.as_slice().cmp(t)).ok()
    }

    pub fn shared(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.d).filter(|&i| self.tuples[a][i] == self.tuples[b][i]).collect()
    }

    /// Members of each class `(i, label)` with at least two tuples.
    fn classes(&self) -> Vec<Vec<usize>> {
        let mut map: HashMap<(usize, &L), Vec<usize>> = HashMap::new();
        for (k, t) in self.tuples.iter().enumerate() {
            for (i, l) in t.iter().enumerate() {
                map.entry((i, l)).or_default().push(k);
            }
        }
        let mut out: Vec<Vec<usize>> = map.into_values().filter(|v| v.len() > 1).collect();
        out.sort();
        out
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.len()];
        for class in self.classes() {
            for &a in &class {
                for &b in &class {
                    if a != b {
                        adj[a].insert(b);
                    }
                }
            }
        }
        adj.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    /// Edges of `G^𝒯`: distinct tuples sharing a coordinate.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let adj = self.adjacency();
        let mut out = Vec::new();
        for (a, ns) in adj.iter().enumerate() {
            out.extend(ns.iter().filter(|&&b| a < b).map(|&b| (a, b)));
        }
        out
    }

    /// A pair of distinct tuples sharing two coordinates, if any.
    pub fn one_sided_witness(&self) -> Option<(usize, usize)> {
        self.edges().into_iter().find(|&(a, b)| self.shared(a, b).len() >= 2)
    }

    pub fn is_one_sided(&self) -> bool {
        self.one_sided_witness().is_none()
    }

    /// A vertex-distinct cycle of length `3 ≤ L ≤ max_len` in which no
    /// coordinate class holds three of its vertices.
    pub fn violating_cycle(&self, max_len: usize) -> Option<Vec<usize>> {
        let adj = self.adjacency();
        let mut counts: HashMap<(usize, &L), u8> = HashMap::new();
        let mut path = Vec::new();
        let mut on_path = vec![false; self.len()];
        for s in 0..self.len() {
            if self.enter(s, &mut counts) {
                path.push(s);
                on_path[s] = true;
                if self.extend(s, &adj, max_len, &mut path, &mut on_path, &mut counts) {
                    return Some(path);
                }
                path.pop();
                on_path[s] = false;
            }
            self.leave(s, &mut counts);
        }
        None
    }

    fn enter<'a>(&'a self, v: usize, counts: &mut HashMap<(usize, &'a L), u8>) -> bool {
        let mut ok = true;
        for (i, l) in self.tuples[v].iter().enumerate() {
            let c = counts.entry((i, l)).or_insert(0);
            *c += 1;
            ok &= *c < 3;
        }
        ok
    }

    fn leave<'a>(&'a self, v: usize, counts: &mut HashMap<(usize, &'a L), u8>) {
        for (i, l) in self.tuples[v].iter().enumerate() {
            *counts.get_mut(&(i, l)).unwrap() -= 1;
        }
    }

    fn extend<'a>(
        &'a self,
        start: usize,
        adj: &[Vec<usize>],
        max_len: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        counts: &mut HashMap<(usize, &'a L), u8>,
    ) -> bool {
        let last = *path.last().unwrap();
        if path.len() >= 3 && adj[last].binary_search(&start).is_ok() {
            return true;
        }
        if path.len() == max_len {
            return false;
        }
        for &u in &adj[last] {
            if u <= start || on_path[u] {
                continue;
            }
            if self.enter(u, counts) {
                path.push(u);
                on_path[u] = true;
                if self.extend(start, adj, max_len, path, on_path, counts) {
                    return true;
                }
                path.pop();
                on_path[u] = false;
            }
            self.leave(u, counts);
        }
        false
    }

    pub fn is_almost_acyclic_bruteforce(&self, max_len: usize) -> bool {
        self.violating_cycle(max_len).is_none()
    }

    /// Whether the bipartite incidence graph between tuples and coordinate
    /// classes is a forest. Under one-sidedness this is equivalent to almost
    /// acyclicity for cycles of every length.
    pub fn incidence_forest(&self) -> bool {
        let classes = self.classes();
        let n = self.len();
        let mut parent: Vec<usize> = (0..n + classes.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for (c, members) in classes.iter().enumerate() {
            for &v in members {
                let (a, b) = (find(&mut parent, v), find(&mut parent, n + c));
                if a == b {
                    return false;
                }
                parent[a] = b;
            }
        }
        true
    }

    /// Minimal walks from the basepoint by breadth-first search with
    /// neighbours visited in increasing index order; returns parents.
    fn bfs(&self, adj: &[Vec<usize>], root: usize) -> Vec<Option<usize>> {
        let mut parent = vec![None; self.len()];
        let mut seen = vec![false; self.len()];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    parent[u] = Some(v);
                    queue.push_back(u);
                }
            }
        }
        parent
    }

    /// Blocks `M_j = L_j` for `j ≤ j_0` and `M_{j_0+1} = N`, where `L_j` holds
    /// the tuples whose minimal walk reaches the basepoint through a tuple
    /// sharing coordinate `j` with it, and `N` the unreachable tuples.
    pub fn partition_for(&self, basepoint: usize) -> Result<BasepointPartition, LevelError> {
        if basepoint >= self.len() {
            return Err(LevelError::NoBasepoint(basepoint));
        }
        let adj = self.adjacency();
        let parent = self.bfs(&adj, basepoint);
        let mut l_blocks: Vec<Vec<usize>> = vec![Vec::new(); self.d];
        let mut unreachable = Vec::new();
        for x in 0..self.len() {
            if x == basepoint {
                continue;
            }
            let Some(mut v) = parent[x] else {
                unreachable.push(x);
                continue;
            };
            let mut penultimate = x;
            while v != basepoint {
                penultimate = v;
                v = parent[v].expect("reached vertices have parents");
            }
            let j = self.shared(penultimate, basepoint)[0];
            l_blocks[j].push(x);
        }
        let j0 = l_blocks.iter().rposition(|b| !b.is_empty()).unwrap_or(0);
        let mut blocks: Vec<Vec<usize>> = l_blocks.into_iter().take(j0 + 1).collect();
        blocks.push(unreachable);
        let out = BasepointPartition { basepoint, blocks };
        self.check_partition(&out)?;
        Ok(out)
    }

    /// Properties (1) `Π_i[M_j] ∩ Π_i[M_k] = ∅` for `j ≠ k` and
    /// (2) `x_i = x^0_i ⇒ i = j` for `x ∈ M_j`.
    pub fn check_partition(&self, p: &BasepointPartition) -> Result<(), LevelError> {
        let mut block_of = vec![usize::MAX; self.len()];
        for (j, b) in p.blocks.iter().enumerate() {
            for &x in b {
                block_of[x] = j;
            }
        }
        for (a, b) in self.edges() {
            if a != p.basepoint && b != p.basepoint && block_of[a] != block_of[b] {
                return Err(LevelError::PartitionCheck { property: 1, a, b });
            }
        }
        for (j, b) in p.blocks.iter().enumerate() {
            for &x in b {
                if self.shared(x, p.basepoint).iter().any(|&i| i != j) {
                    return Err(LevelError::PartitionCheck { property: 2, a: x, b: p.basepoint });
                }
            }
        }
        Ok(())
    }

    /// Exhaustive search over labelled partitions with `1 ≤ ℒ ≤ d + 1` blocks.
    pub fn partition_exists_exhaustive(&self, basepoint: usize) -> bool {
        let others: Vec<usize> = (0..self.len()).filter(|&x| x != basepoint).collect();
        for l in 1..=self.d + 1 {
            let total = l.pow(others.len() as u32);
            for code in 0..total {
                let mut blocks = vec![Vec::new(); l];
                let mut c = code;
                for &x in &others {
                    blocks[c % l].push(x);
                    c /= l;
                }
                let p = BasepointPartition { basepoint, blocks };
                if self.check_partition(&p).is_ok() {
                    return true;
                }
            }
        }
        false
    }

    pub fn check_equivalence(&self, max_len: usize) -> EquivalenceReport {
        EquivalenceReport {
            one_sided: self.is_one_sided(),
            almost_acyclic: self.is_almost_acyclic_bruteforce(max_len),
            partitions: (0..self.len()).map(|b| self.partition_for(b).is_ok()).collect(),
        }
    }

    pub fn restrict(&self, keep: &[usize]) -> TupleSet<L> {
        let tuples = keep.iter().map(|&k| self.tuples[k].clone()).collect();
        TupleSet::new(self.d, tuples).expect("same arity")
    }
}
