//! Synchronous (letter-to-letter) Mealy transducers over `X_n`: minimization,
//! products, inversion, the exact synchronization decision and cores.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::words::{Letter, PeriodicTail};

/// Transition `π` and output `λ` tables, indexed `[state][letter]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SynchronousTransducer {
    n: u32,
    next: Vec<Vec<usize>>,
    out: Vec<Vec<Letter>>,
    start: Option<usize>,
}

/// Level `k` and the map `𝔰 : X_n^k → Q` with `π(Γ, q) = 𝔰(Γ)` for all `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyncCertificate {
    pub level: usize,
    /// Indexed by the base-`n` value of `Γ`, most significant letter first.
    pub smap: Vec<usize>,
}

impl SyncCertificate {
    pub fn state_after(&self, n: u32, word: &[Letter]) -> usize {
        let tail = &word[word.len() - self.level..];
        self.smap[word_index(n, tail)]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SyncVerdict {
    Synchronizing(SyncCertificate),
    /// A cycle of non-singleton subsets reachable from the full state set.
    NotSynchronizing(Vec<Vec<usize>>),
}

impl SyncVerdict {
    pub fn certificate(self) -> Result<SyncCertificate> {
        match self {
            SyncVerdict::Synchronizing(c) => Ok(c),
            SyncVerdict::NotSynchronizing(w) => Err(Error::NotSynchronizing(w)),
        }
    }
}

/// Result of reading `w^ω` from a state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailImage {
    /// Number of copies of `w` read before the state sequence enters its cycle.
    pub entry: usize,
    /// Length `m` of that cycle, so `π(w^m, q') = q'` on it.
    pub cycle_len: usize,
    /// First state on the cycle.
    pub cycle_state: usize,
    pub image: PeriodicTail,
}

pub(crate) fn word_index(n: u32, word: &[Letter]) -> usize {
    word.iter().fold(0usize, |acc, &a| acc * n as usize + a as usize)
}

fn all_words(n: u32, k: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..n).map(move |a| {
                    let mut w = w.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out
}

impl SynchronousTransducer {
    pub fn new(n: u32, next: Vec<Vec<usize>>, out: Vec<Vec<Letter>>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParams(format!("n = {n} must be at least 2")));
        }
        if next.is_empty() || next.len() != out.len() {
            return Err(Error::InvalidTransducer(
                "transition and output tables differ in size".into(),
            ));
        }
        let states = next.len();
        for (q, (nrow, orow)) in next.iter().zip(&out).enumerate() {
            if nrow.len() != n as usize || orow.len() != n as usize {
                return Err(Error::InvalidTransducer(format!("state {q} is missing edges")));
            }
            if nrow.iter().any(|&p| p >= states) || orow.iter().any(|&b| b >= n) {
                return Err(Error::InvalidTransducer(format!("state {q} has an out-of-range edge")));
            }
        }
        Ok(SynchronousTransducer {
            n,
            next,
            out,
            start: None,
        })
    }

    pub fn with_start(mut self, start: Option<usize>) -> Result<Self> {
        if let Some(s) = start {
            if s >= self.num_states() {
                return Err(Error::InvalidTransducer(format!("start state {s} out of range")));
            }
        }
        self.start = start;
        Ok(self)
    }

    /// The one-state identity machine.
    pub fn identity(n: u32) -> Self {
        Self::letter_permutation(n, &(0..n).collect::<Vec<_>>())
    }

    /// The one-state machine applying `perm` to every letter.
    pub fn letter_permutation(n: u32, perm: &[Letter]) -> Self {
        SynchronousTransducer::new(n, vec![vec![0; n as usize]], vec![perm.to_vec()])
            .expect("valid permutation machine")
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn start(&self) -> Option<usize> {
        self.start
    }

    pub fn num_states(&self) -> usize {
        self.next.len()
    }

    pub fn next_state(&self, q: usize, a: Letter) -> usize {
        self.next[q][a as usize]
    }

    pub fn output(&self, q: usize, a: Letter) -> Letter {
        self.out[q][a as usize]
    }

    pub fn output_row(&self, q: usize) -> &[Letter] {
        &self.out[q]
    }

    /// Output of reading `word` from `q`, and the final state.
    pub fn run(&self, q: usize, word: &[Letter]) -> (Vec<Letter>, usize) {
        let mut q = q;
        let mut out = Vec::with_capacity(word.len());
        for &a in word {
            out.push(self.out[q][a as usize]);
            q = self.next[q][a as usize];
        }
        (out, q)
    }

    pub fn state_after(&self, q: usize, word: &[Letter]) -> usize {
        word.iter().fold(q, |q, &a| self.next[q][a as usize])
    }

    /// True for the one-state identity machine.
    pub fn is_trivial(&self) -> bool {
        self.num_states() == 1 && self.out[0].iter().enumerate().all(|(a, &b)| a as Letter == b)
    }

    fn row_is_permutation(&self, q: usize) -> bool {
        let mut seen = vec![false; self.n as usize];
        self.out[q]
            .iter()
            .all(|&b| !std::mem::replace(&mut seen[b as usize], true))
    }

    pub fn check_invertible(&self) -> Result<()> {
        match (0..self.num_states()).find(|&q| !self.row_is_permutation(q)) {
            Some(q) => Err(Error::NotInvertible(q)),
            None => Ok(()),
        }
    }

    /// Every state reachable from `q` outputs its input letter.
    pub fn acts_as_identity(&self, q: usize) -> bool {
        self.reachable_from(q)
            .into_iter()
            .all(|p| self.out[p].iter().enumerate().all(|(a, &b)| a as Letter == b))
    }

    pub fn reachable_from(&self, q: usize) -> Vec<usize> {
        let mut seen = vec![false; self.num_states()];
        let mut order = vec![q];
        seen[q] = true;
        let mut i = 0;
        while i < order.len() {
            let p = order[i];
            for &s in &self.next[p] {
                if !seen[s] {
                    seen[s] = true;
                    order.push(s);
                }
            }
            i += 1;
        }
        order
    }

    pub fn is_strongly_connected(&self) -> bool {
        let all = self.num_states();
        (0..all).all(|q| self.reachable_from(q).len() == all)
    }

    /// Moore partition refinement. Returns the minimal machine and the map
    /// from old states to their classes; classes are numbered by their
    /// least original state.
    pub fn minimize(&self) -> (SynchronousTransducer, Vec<usize>) {
        let states = self.num_states();
        let mut class = renumber(&(0..states).map(|q| self.out[q].clone()).collect::<Vec<_>>());
        loop {
            let keys: Vec<(usize, Vec<usize>)> = (0..states)
                .map(|q| (class[q], self.next[q].iter().map(|&p| class[p]).collect()))
                .collect();
            let refined = renumber(&keys);
            let done = refined.iter().max() == class.iter().max();
            class = refined;
            if done {
                break;
            }
        }
        let count = class.iter().max().map_or(0, |m| m + 1);
        let mut next = vec![Vec::new(); count];
        let mut out = vec![Vec::new(); count];
        for q in 0..states {
            let c = class[q];
            if next[c].is_empty() {
                next[c] = self.next[q].iter().map(|&p| class[p]).collect();
                out[c] = self.out[q].clone();
            }
        }
        let machine = SynchronousTransducer {
            n: self.n,
            next,
            out,
            start: self.start.map(|s| class[s]),
        };
        (machine, class)
    }

    /// Shortest word on which `p` and `q` produce different outputs.
    pub fn distinguishing_word(&self, p: usize, q: usize) -> Option<Vec<Letter>> {
        self.distinguishing_word_with(p, self, q)
    }

    /// Shortest word separating state `p` of `self` from state `q` of `other`.
    pub fn distinguishing_word_with(&self, p: usize, other: &SynchronousTransducer, q: usize) -> Option<Vec<Letter>> {
        type Pair = (usize, usize);
        let mut parent: HashMap<Pair, Option<(Pair, Letter)>> = HashMap::new();
        let mut queue = VecDeque::from([(p, q)]);
        parent.insert((p, q), None);
        while let Some((a, b)) = queue.pop_front() {
            for x in 0..self.n {
                let step = ((a, b), x);
                if self.output(a, x) != other.output(b, x) {
                    let mut word = vec![x];
                    let mut cur = (a, b);
                    while let Some(Some((prev, y))) = parent.get(&cur) {
                        word.push(*y);
                        cur = *prev;
                    }
                    word.reverse();
                    return Some(word);
                }
                let succ = (self.next_state(a, x), other.next_state(b, x));
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(succ) {
                    e.insert(Some(step));
                    queue.push_back(succ);
                }
            }
        }
        None
    }

    /// Pair-state machine reading through `self` then `other`, unminimized.
    /// Pair `(p, q)` is state `p * |other| + q`.
    pub fn product_raw(&self, other: &SynchronousTransducer) -> Result<SynchronousTransducer> {
        if self.n != other.n {
            return Err(Error::ParamsMismatch(format!("arity {} vs {}", self.n, other.n)));
        }
        let nb = other.num_states();
        let mut next = Vec::with_capacity(self.num_states() * nb);
        let mut out = Vec::with_capacity(self.num_states() * nb);
        for p in 0..self.num_states() {
            for q in 0..nb {
                let mut nrow = Vec::with_capacity(self.n as usize);
                let mut orow = Vec::with_capacity(self.n as usize);
                for x in 0..self.n {
                    let y = self.output(p, x);
                    nrow.push(self.next_state(p, x) * nb + other.next_state(q, y));
                    orow.push(other.output(q, y));
                }
                next.push(nrow);
                out.push(orow);
            }
        }
        let start = match (self.start, other.start) {
            (Some(a), Some(b)) => Some(a * nb + b),
            _ => None,
        };
        Ok(SynchronousTransducer {
            n: self.n,
            next,
            out,
            start,
        })
    }

    /// Minimized product; restricted to pairs reachable from the start pair
    /// when both machines carry a start state.
    pub fn product(&self, other: &SynchronousTransducer) -> Result<SynchronousTransducer> {
        let raw = self.product_raw(other)?;
        let raw = match raw.start {
            Some(s) => raw.restrict(&raw.reachable_from(s)),
            None => raw,
        };
        Ok(raw.minimize().0)
    }

    /// Sub-machine on `states` (closed under transitions), renumbered in the given order.
    pub fn restrict(&self, states: &[usize]) -> SynchronousTransducer {
        let mut index = vec![usize::MAX; self.num_states()];
        for (i, &q) in states.iter().enumerate() {
            index[q] = i;
        }
        let next = states
            .iter()
            .map(|&q| self.next[q].iter().map(|&p| index[p]).collect())
            .collect();
        let out = states.iter().map(|&q| self.out[q].clone()).collect();
        SynchronousTransducer {
            n: self.n,
            next,
            out,
            start: self.start.map(|s| index[s]).filter(|&s| s != usize::MAX),
        }
    }

    /// Edge-swapped machine: `λ'(q, y) = λ(q, ·)⁻¹(y)`.
    pub fn invert(&self) -> Result<SynchronousTransducer> {
        self.check_invertible()?;
        let mut next = Vec::with_capacity(self.num_states());
        let mut out = Vec::with_capacity(self.num_states());
        for q in 0..self.num_states() {
            let mut nrow = vec![0; self.n as usize];
            let mut orow = vec![0; self.n as usize];
            for x in 0..self.n {
                let y = self.output(q, x) as usize;
                orow[y] = x;
                nrow[y] = self.next_state(q, x);
            }
            next.push(nrow);
            out.push(orow);
        }
        Ok(SynchronousTransducer {
            n: self.n,
            next,
            out,
            start: self.start,
        })
    }

    /// Exact decision through the subset automaton seeded at the full state set.
    pub fn synchronization_certificate(&self) -> SyncVerdict {
        let full: Vec<usize> = (0..self.num_states()).collect();
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut subsets: Vec<Vec<usize>> = Vec::new();
        let mut edges: Vec<Vec<usize>> = Vec::new();
        ids.insert(full.clone(), 0);
        subsets.push(full);
        let mut i = 0;
        while i < subsets.len() {
            let mut row = Vec::with_capacity(self.n as usize);
            if subsets[i].len() > 1 {
                for a in 0..self.n {
                    let mut image: Vec<usize> = subsets[i].iter().map(|&q| self.next_state(q, a)).collect();
                    image.sort_unstable();
                    image.dedup();
                    let id = match ids.get(&image) {
                        Some(&id) => id,
                        None => {
                            let id = subsets.len();
                            ids.insert(image.clone(), id);
                            subsets.push(image);
                            id
                        }
                    };
                    row.push(id);
                }
            }
            edges.push(row);
            i += 1;
        }
        // heights on the graph of non-singleton subsets; a back edge is a witness cycle
        let count = subsets.len();
        let mut height = vec![None; count];
        let mut on_stack = vec![false; count];
        let mut path: Vec<usize> = Vec::new();
        if let Err(cycle) = subset_height(0, &edges, &mut height, &mut on_stack, &mut path) {
            return SyncVerdict::NotSynchronizing(cycle.into_iter().map(|s| subsets[s].clone()).collect());
        }
        let level = height[0].unwrap_or(0);
        let smap = all_words(self.n, level)
            .iter()
            .map(|w| {
                let mut set: Vec<usize> = (0..self.num_states()).map(|q| self.state_after(q, w)).collect();
                set.sort_unstable();
                set.dedup();
                debug_assert_eq!(set.len(), 1);
                set[0]
            })
            .collect();
        SyncVerdict::Synchronizing(SyncCertificate { level, smap })
    }

    /// States in the image of the synchronizing map, ascending.
    pub fn core_states(&self) -> Result<Vec<usize>> {
        let cert = self.synchronization_certificate().certificate()?;
        let mut states = cert.smap;
        states.sort_unstable();
        states.dedup();
        Ok(states)
    }

    /// The sub-machine on the image of the synchronizing map.
    pub fn core_extract(&self) -> Result<SynchronousTransducer> {
        let states = self.core_states()?;
        let mut core = self.restrict(&states);
        core.start = None;
        Ok(core)
    }

    /// Reads `w^ω` from `q` until the state sequence at period boundaries repeats.
    pub fn tail_image(&self, q: usize, w: &[Letter]) -> TailImage {
        assert!(!w.is_empty(), "tail word must be nonempty");
        let mut seen: HashMap<usize, usize> = HashMap::new();
        let mut outputs: Vec<Vec<Letter>> = Vec::new();
        let mut state = q;
        loop {
            if let Some(&entry) = seen.get(&state) {
                let stem: Vec<Letter> = outputs[..entry].concat();
                let period: Vec<Letter> = outputs[entry..].concat();
                return TailImage {
                    entry,
                    cycle_len: outputs.len() - entry,
                    cycle_state: state,
                    image: PeriodicTail::new(stem, period),
                };
            }
            seen.insert(state, outputs.len());
            let (out, next) = self.run(state, w);
            outputs.push(out);
            state = next;
        }
    }

    /// Relabels states in breadth-first order from `q`, letters in order.
    /// `None` when some state is unreachable from `q`.
    pub fn relabel_from(&self, q: usize) -> Option<(SynchronousTransducer, Vec<usize>)> {
        let order = self.reachable_from(q);
        if order.len() != self.num_states() {
            return None;
        }
        let mut index = vec![0; order.len()];
        for (i, &p) in order.iter().enumerate() {
            index[p] = i;
        }
        let mut machine = self.restrict(&order);
        machine.start = self.start.map(|s| index[s]);
        Some((machine, index))
    }

    /// Start-independent representative of the isomorphism class of a
    /// strongly connected machine: the least breadth-first relabeling.
    pub fn iso_canonical(&self) -> SynchronousTransducer {
        let mut base = self.clone();
        base.start = None;
        (0..base.num_states())
            .filter_map(|q| base.relabel_from(q).map(|(m, _)| m))
            .min_by(|a, b| (&a.next, &a.out).cmp(&(&b.next, &b.out)))
            .unwrap_or(base)
    }

    /// Machine isomorphism of minimal strongly connected machines.
    pub fn isomorphic(&self, other: &SynchronousTransducer) -> bool {
        self.n == other.n && self.iso_canonical() == other.iso_canonical()
    }

    pub(crate) fn rows(&self) -> (&[Vec<usize>], &[Vec<Letter>]) {
        (&self.next, &self.out)
    }
}

/// Numbers distinct keys by first occurrence.
fn renumber<K: std::hash::Hash + Eq + Clone>(keys: &[K]) -> Vec<usize> {
    let mut ids: HashMap<K, usize> = HashMap::new();
    keys.iter()
        .map(|k| {
            let next = ids.len();
            *ids.entry(k.clone()).or_insert(next)
        })
        .collect()
}

fn subset_height(
    s: usize,
    edges: &[Vec<usize>],
    height: &mut [Option<usize>],
    on_stack: &mut [bool],
    path: &mut Vec<usize>,
) -> std::result::Result<usize, Vec<usize>> {
    if let Some(h) = height[s] {
        return Ok(h);
    }
    if edges[s].is_empty() {
        height[s] = Some(0);
        return Ok(0);
    }
    if on_stack[s] {
        let from = path.iter().position(|&p| p == s).expect("on path");
        return Err(path[from..].to_vec());
    }
    on_stack[s] = true;
    path.push(s);
    let mut best = 0;
    for &t in &edges[s] {
        best = best.max(subset_height(t, edges, height, on_stack, path)?);
    }
    path.pop();
    on_stack[s] = false;
    height[s] = Some(best + 1);
    Ok(best + 1)
}
