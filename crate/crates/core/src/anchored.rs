//! Elements of `B_{n,r}` in anchored form: a complete antichain of cells
//! `(u, v, q)` over a minimal synchronous core, acting by
//! `u ρ ↦ v λ_core(ρ, q)`.
//!
//! Canonical form: the core is minimal, no digit-sibling cell family can be
//! merged into its parent, and core states are numbered breadth-first from
//! the state of the lex-least cell. Two elements are equal as maps exactly
//! when their canonical forms are identical.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::mealy::{SyncCertificate, SyncVerdict, SynchronousTransducer};
use crate::prefix_map::PrefixMap;
use crate::words::{locate_prefix, CompleteAntichain, EventuallyPeriodicPoint, Letter, Params, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub input: Word,
    pub output: Word,
    pub state: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AnchoredHomeo {
    params: Params,
    core: SynchronousTransducer,
    cells: Vec<Cell>,
}

/// Image of a finite word. `complete` is false when the word is shorter than
/// every cell it meets; `output` is then the common prefix of their images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordImage {
    pub output: Word,
    pub complete: bool,
}

impl AnchoredHomeo {
    /// Validates the core (synchronous, invertible, equal to its own core)
    /// and bijectivity, then returns the canonical form.
    pub fn new(params: Params, core: SynchronousTransducer, cells: Vec<Cell>) -> Result<Self> {
        if core.n() != params.n {
            return Err(Error::ParamsMismatch(format!(
                "core arity {} vs n = {}",
                core.n(),
                params.n
            )));
        }
        core.check_invertible()?;
        let core_states = core.core_states()?;
        if core_states.len() != core.num_states() {
            return Err(Error::InvalidTransducer(format!(
                "machine has {} states but its core has {}",
                core.num_states(),
                core_states.len()
            )));
        }
        let mut cells = cells;
        cells.sort();
        if let Some(c) = cells.iter().find(|c| c.state >= core.num_states()) {
            return Err(Error::InvalidTransducer(format!("cell state {} out of range", c.state)));
        }
        for c in &cells {
            if !c.output.is_rooted() {
                return Err(Error::MissingRootOutput(c.output.to_text(params.n)));
            }
        }
        CompleteAntichain::validate(cells.iter().map(|c| c.input.clone()).collect(), params)?;
        check_bijective(&cells, params)?;
        Ok(AnchoredHomeo { params, core, cells }.canonical())
    }

    pub(crate) fn from_parts_unchecked(params: Params, core: SynchronousTransducer, cells: Vec<Cell>) -> Self {
        let mut cells = cells;
        cells.sort();
        AnchoredHomeo { params, core, cells }
    }

    pub fn identity(params: Params) -> Self {
        Self::from_prefix_map(&PrefixMap::identity(params))
    }

    /// Trivial-core element with cells `(u_a, v_{perm[a]})`.
    pub fn from_prefix_map(g: &PrefixMap) -> Self {
        let params = g.params();
        let cells = g
            .pairs()
            .map(|(u, v)| Cell {
                input: u.clone(),
                output: v.clone(),
                state: 0,
            })
            .collect();
        AnchoredHomeo::from_parts_unchecked(params, SynchronousTransducer::identity(params.n), cells).canonical()
    }

    /// The element acting as `core` from `state` on every root cone.
    pub fn from_core_state(params: Params, core: SynchronousTransducer, state: usize) -> Result<Self> {
        let cells = params
            .roots()
            .into_iter()
            .map(|w| Cell {
                input: w.clone(),
                output: w,
                state,
            })
            .collect();
        AnchoredHomeo::new(params, core, cells)
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn core(&self) -> &SynchronousTransducer {
        &self.core
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn max_cell_len(&self) -> usize {
        self.cells.iter().map(|c| c.input.len()).max().unwrap_or(1)
    }

    pub fn sync_level(&self) -> usize {
        self.core_certificate().level
    }

    pub fn core_certificate(&self) -> SyncCertificate {
        match self.core.synchronization_certificate() {
            SyncVerdict::Synchronizing(c) => c,
            SyncVerdict::NotSynchronizing(_) => unreachable!("cores are synchronizing"),
        }
    }

    fn inputs(&self) -> Vec<Word> {
        self.cells.iter().map(|c| c.input.clone()).collect()
    }

    fn locate(&self, letters: &[Letter]) -> Option<usize> {
        // cells are sorted by input word
        let idx = self.cells.partition_point(|c| c.input.letters() <= letters);
        (idx > 0 && self.cells[idx - 1].input.is_prefix_of_letters(letters)).then(|| idx - 1)
    }

    /// Minimal core, maximal merging of sibling cells, breadth-first state numbering.
    pub fn canonical(&self) -> AnchoredHomeo {
        let (core, class) = self.core.minimize();
        let n = self.params.n as usize;
        let mut by_rows: HashMap<(&[usize], &[Letter]), usize> = HashMap::new();
        let (next_rows, out_rows) = core.rows();
        for q in 0..core.num_states() {
            by_rows.insert((next_rows[q].as_slice(), out_rows[q].as_slice()), q);
        }
        let mut map: BTreeMap<Word, (Word, usize)> = self
            .cells
            .iter()
            .map(|c| (c.input.clone(), (c.output.clone(), class[c.state])))
            .collect();
        loop {
            let keys: Vec<Word> = map.keys().cloned().collect();
            let mut merges = Vec::new();
            let mut i = 0;
            while i + n <= keys.len() {
                if let Some(merge) = mergeable(&keys[i..i + n], &map, &by_rows) {
                    merges.push((i, merge));
                    i += n;
                } else {
                    i += 1;
                }
            }
            if merges.is_empty() {
                break;
            }
            for (i, (parent, output, state)) in merges {
                for k in &keys[i..i + n] {
                    map.remove(k);
                }
                map.insert(parent, (output, state));
            }
        }
        let first_state = map.values().next().expect("nonempty").1;
        let (core, index) = core.relabel_from(first_state).expect("cores are strongly connected");
        let cells = map
            .into_iter()
            .map(|(input, (output, state))| Cell {
                input,
                output,
                state: index[state],
            })
            .collect();
        AnchoredHomeo {
            params: self.params,
            core,
            cells,
        }
    }

    pub fn canonical_equal(&self, other: &AnchoredHomeo) -> Result<bool> {
        self.params.check_same(&other.params)?;
        Ok(self.canonical() == other.canonical())
    }

    pub fn is_identity(&self) -> bool {
        let c = self.canonical();
        c.core.is_trivial() && c.cells.iter().all(|cell| cell.input == cell.output)
    }

    pub fn evaluate_word(&self, w: &Word) -> WordImage {
        if let Some(i) = self.locate(w.letters()) {
            let cell = &self.cells[i];
            let (out, _) = self.core.run(cell.state, &w.letters()[cell.input.len()..]);
            return WordImage {
                output: cell.output.concat(&out),
                complete: true,
            };
        }
        let below: Vec<&Cell> = self.cells.iter().filter(|c| w.is_prefix_of(&c.input)).collect();
        let mut common = below[0].output.clone();
        for c in &below[1..] {
            common = common.truncated(common.longest_common_prefix(&c.output));
        }
        WordImage {
            output: common,
            complete: false,
        }
    }

    /// Exact image of an eventually periodic point, in canonical form.
    pub fn evaluate_point(&self, x: &EventuallyPeriodicPoint) -> EventuallyPeriodicPoint {
        let probe = x.prefix(self.max_cell_len());
        let cell = &self.cells[self.locate(probe.letters()).expect("cells cover the space")];
        let tail = x.tail_after(cell.input.len());
        let (out, q) = self.core.run(cell.state, &tail.stem);
        let image = self.core.tail_image(q, &tail.period).image;
        let prefix = cell.output.concat(&out);
        EventuallyPeriodicPoint::from_parts(&prefix, &image).expect("image point is valid")
    }

    /// True when both maps act identically on `U_w`, where `w` extends a
    /// cell of each.
    pub fn agrees_on_cone(&self, other: &AnchoredHomeo, w: &Word) -> bool {
        match (self.local_at(w), other.local_at(w)) {
            (Some((v1, q1)), Some((v2, q2))) => {
                v1 == v2 && self.core.distinguishing_word_with(q1, &other.core, q2).is_none()
            }
            _ => false,
        }
    }

    /// Output word and core state reached on the cone `U_w`, when `w`
    /// extends a cell.
    pub fn local_at(&self, w: &Word) -> Option<(Word, usize)> {
        let cell = &self.cells[self.locate(w.letters())?];
        let (out, q) = self.core.run(cell.state, &w.letters()[cell.input.len()..]);
        Some((cell.output.concat(&out), q))
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &AnchoredHomeo) -> Result<AnchoredHomeo> {
        self.params.check_same(&other.params)?;
        let product = self.core.product_raw(&other.core)?;
        let core_list = product.core_states()?;
        let mut core_index = vec![usize::MAX; product.num_states()];
        for (i, &s) in core_list.iter().enumerate() {
            core_index[s] = i;
        }
        let width = other.core.num_states();
        let other_inputs = other.inputs();
        let mut cells = Vec::new();
        for cell in &self.cells {
            let mut queue: VecDeque<Vec<Letter>> = VecDeque::from([Vec::new()]);
            while let Some(ext) = queue.pop_front() {
                let (out_g, state_g) = self.core.run(cell.state, &ext);
                let mut image = cell.output.letters().to_vec();
                image.extend_from_slice(&out_g);
                let settled = locate_prefix(&other_inputs, &image).and_then(|j| {
                    let h = &other.cells[j];
                    let (out_h, state_h) = other.core.run(h.state, &image[h.input.len()..]);
                    let pair = state_g * width + state_h;
                    (core_index[pair] != usize::MAX).then(|| Cell {
                        input: cell.input.concat(&ext),
                        output: h.output.concat(&out_h),
                        state: core_index[pair],
                    })
                });
                match settled {
                    Some(c) => cells.push(c),
                    None => {
                        for a in 0..self.params.n {
                            let mut longer = ext.clone();
                            longer.push(a);
                            queue.push_back(longer);
                        }
                    }
                }
            }
        }
        let core = product.restrict(&core_list);
        Ok(AnchoredHomeo::from_parts_unchecked(self.params, core, cells).canonical())
    }

    pub fn inverse(&self) -> Result<AnchoredHomeo> {
        check_bijective(&self.cells, self.params)?;
        let core = self.core.invert()?;
        if let SyncVerdict::NotSynchronizing(_) = core.synchronization_certificate() {
            return Err(Error::InverseNotSynchronizing);
        }
        let cells = self
            .cells
            .iter()
            .map(|c| Cell {
                input: c.output.clone(),
                output: c.input.clone(),
                state: c.state,
            })
            .collect();
        Ok(AnchoredHomeo::from_parts_unchecked(self.params, core, cells).canonical())
    }

    /// The prefix map when the minimal core is the one-state identity.
    pub fn trivial_core_extract(&self) -> std::result::Result<PrefixMap, SynchronousTransducer> {
        let canon = self.canonical();
        if !canon.core.is_trivial() {
            return Err(canon.core);
        }
        let pairs = canon.cells.into_iter().map(|c| (c.input, c.output)).collect();
        Ok(PrefixMap::from_pairs(canon.params, pairs).expect("cells form a prefix map"))
    }

    /// `h⁻¹ · self · h`.
    pub fn conjugate(&self, h: &AnchoredHomeo) -> Result<AnchoredHomeo> {
        h.inverse()?.compose(self)?.compose(h)
    }

    /// A cone on which the map is the identity, if one exists.
    pub fn small_support_witness(&self) -> Option<Word> {
        let canon = self.canonical();
        let core = &canon.core;
        for cell in canon.cells.iter().filter(|c| c.input == c.output) {
            // follow edges that echo their letter until an identity state appears
            let mut seen = vec![false; core.num_states()];
            let mut queue = VecDeque::from([(cell.state, Vec::new())]);
            seen[cell.state] = true;
            while let Some((q, path)) = queue.pop_front() {
                if core.acts_as_identity(q) {
                    return Some(cell.input.concat(&path));
                }
                for a in 0..canon.params.n {
                    let p = core.next_state(q, a);
                    if core.output(q, a) == a && !seen[p] {
                        seen[p] = true;
                        let mut longer: Vec<Letter> = path.clone();
                        longer.push(a);
                        queue.push_back((p, longer));
                    }
                }
            }
        }
        None
    }

    pub fn is_small_support(&self) -> bool {
        self.small_support_witness().is_some()
    }
}

/// Parent cell for a digit-sibling family, when a core state realises it.
fn mergeable(
    family: &[Word],
    map: &BTreeMap<Word, (Word, usize)>,
    by_rows: &HashMap<(&[usize], &[Letter]), usize>,
) -> Option<(Word, Word, usize)> {
    let parent = family[0].parent()?;
    let siblings = family
        .iter()
        .enumerate()
        .all(|(a, w)| w.len() == parent.len() + 1 && parent.is_prefix_of(w) && w.last_digit() == Some(a as Letter));
    if !siblings {
        return None;
    }
    let outputs: Vec<&(Word, usize)> = family.iter().map(|w| &map[w]).collect();
    let target = outputs[0].0.parent()?;
    let mut next_row = Vec::with_capacity(family.len());
    let mut out_row = Vec::with_capacity(family.len());
    for (w, q) in outputs {
        if w.len() != target.len() + 1 || !target.is_prefix_of(w) {
            return None;
        }
        next_row.push(*q);
        out_row.push(w.last_digit()?);
    }
    let state = *by_rows.get(&(next_row.as_slice(), out_row.as_slice()))?;
    Some((parent, target, state))
}

fn check_bijective(cells: &[Cell], params: Params) -> Result<()> {
    let mut outputs: Vec<Word> = cells.iter().map(|c| c.output.clone()).collect();
    outputs.sort();
    for pair in outputs.windows(2) {
        if pair[0].is_prefix_of(&pair[1]) {
            return Err(Error::NotBijective(pair[0].clone(), pair[1].clone()));
        }
    }
    match CompleteAntichain::validate(outputs, params) {
        Ok(_) => Ok(()),
        Err(Error::Incomplete(_)) => Err(Error::NotSurjective),
        Err(e) => Err(e),
    }
}

/// One edge of a raw initial transducer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawEdge {
    pub output: Word,
    pub next: usize,
}

/// An initial transducer whose initial state reads one dot letter and whose
/// other states read digits, with word outputs of any length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawInitialTransducer {
    pub params: Params,
    pub initial: usize,
    /// `edges[q]` has `r` entries for the initial state and `n` otherwise.
    pub edges: Vec<Vec<RawEdge>>,
}

impl RawInitialTransducer {
    pub fn validate(&self) -> Result<()> {
        let Params { n, r } = self.params;
        if self.initial >= self.edges.len() {
            return Err(Error::InvalidTransducer("initial state out of range".into()));
        }
        for (q, row) in self.edges.iter().enumerate() {
            let want = if q == self.initial { r } else { n } as usize;
            if row.len() != want {
                return Err(Error::InvalidTransducer(format!(
                    "state {q} has {} edges, expected {want}",
                    row.len()
                )));
            }
            for e in row {
                if e.next >= self.edges.len() || e.next == self.initial {
                    return Err(Error::InvalidTransducer(format!(
                        "state {q} has a bad target {}",
                        e.next
                    )));
                }
                e.output.validate(&self.params)?;
            }
        }
        Ok(())
    }

    /// Output of reading a rooted word from the initial state, or
    /// `MissingRootOutput` when the output is nonempty but does not start
    /// with exactly one dot letter.
    pub fn run(&self, w: &Word) -> Result<(Vec<Letter>, usize)> {
        let mut out: Vec<Letter> = Vec::new();
        let mut q = self.initial;
        for &a in w.letters() {
            let e = &self.edges[q][a as usize];
            if !e.output.is_empty() && e.output.is_rooted() != out.is_empty() {
                let mut shown = out.clone();
                shown.extend_from_slice(e.output.letters());
                return Err(Error::MissingRootOutput(Word::plain(shown).to_text(self.params.n)));
            }
            out.extend_from_slice(e.output.letters());
            q = e.next;
        }
        Ok((out, q))
    }

    fn digit_states(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&q| q != self.initial).collect()
    }

    /// Converts to anchored form, tabulating cells at the synchronization
    /// level of the digit part.
    pub fn to_anchored(&self) -> Result<AnchoredHomeo> {
        self.validate()?;
        let params = self.params;
        let states = self.digit_states();
        let mut index = vec![usize::MAX; self.edges.len()];
        for (i, &q) in states.iter().enumerate() {
            index[q] = i;
        }
        // transition structure only; outputs are placeholders
        let shape = SynchronousTransducer::new(
            params.n,
            states
                .iter()
                .map(|&q| self.edges[q].iter().map(|e| index[e.next]).collect())
                .collect(),
            vec![(0..params.n).collect(); states.len()],
        )?;
        let cert = match shape.synchronization_certificate() {
            SyncVerdict::Synchronizing(c) => c,
            SyncVerdict::NotSynchronizing(w) => {
                let w = w
                    .into_iter()
                    .map(|set| set.into_iter().map(|i| states[i]).collect())
                    .collect();
                return Err(Error::NotSynchronizing(w));
            }
        };
        let mut core_list = cert.smap.clone();
        core_list.sort_unstable();
        core_list.dedup();
        let mut core_index = vec![usize::MAX; states.len()];
        for (i, &s) in core_list.iter().enumerate() {
            core_index[s] = i;
        }
        let mut next = Vec::new();
        let mut out = Vec::new();
        for &s in &core_list {
            let q = states[s];
            let mut nrow = Vec::new();
            let mut orow = Vec::new();
            for e in &self.edges[q] {
                if e.output.len() != 1 || e.output.is_rooted() {
                    return Err(Error::CoreNotSynchronous(q, e.output.len()));
                }
                nrow.push(core_index[index[e.next]]);
                orow.push(e.output.letters()[0]);
            }
            next.push(nrow);
            out.push(orow);
        }
        let core = SynchronousTransducer::new(params.n, next, out)?;
        if let Err(Error::NotInvertible(i)) = core.check_invertible() {
            return Err(Error::CoreNotInvertible(states[core_list[i]]));
        }
        if let SyncVerdict::NotSynchronizing(_) = core.invert()?.synchronization_certificate() {
            return Err(Error::InverseNotSynchronizing);
        }
        let mut cells = Vec::new();
        for input in params.words_at_depth(cert.level) {
            let (output, _) = self.run(&input)?;
            if output.is_empty() {
                return Err(Error::MissingRootOutput(format!(
                    "nothing written on {}",
                    input.to_text(params.n)
                )));
            }
            let state = core_index[cert.state_after(params.n, input.digits())];
            cells.push(Cell {
                output: Word::rooted(output[0], &output[1..]),
                input,
                state,
            });
        }
        AnchoredHomeo::new(params, core, cells)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p21() -> Params {
        Params::new(2, 1).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s, &Params::new(3, 2).unwrap()).unwrap()
    }

    fn swap_elem() -> AnchoredHomeo {
        AnchoredHomeo::from_core_state(p21(), SynchronousTransducer::letter_permutation(2, &[1, 0]), 0).unwrap()
    }

    fn rotation() -> PrefixMap {
        PrefixMap::from_pairs(
            p21(),
            vec![
                (w("d0:0"), w("d0:10")),
                (w("d0:10"), w("d0:11")),
                (w("d0:11"), w("d0:0")),
            ],
        )
        .unwrap()
    }

    #[test]
    fn prefix_map_round_trip() {
        let id = AnchoredHomeo::from_prefix_map(&PrefixMap::identity(p21()));
        assert_eq!(id.cells().len(), 1);
        assert!(id.core().is_trivial());
        let r = AnchoredHomeo::from_prefix_map(&rotation());
        assert_eq!(r.cells().len(), 3);
        assert_eq!(r.trivial_core_extract().unwrap(), rotation());
        assert_eq!(swap_elem().trivial_core_extract().unwrap_err().num_states(), 1);
    }

    #[test]
    fn evaluate_examples() {
        let id = AnchoredHomeo::identity(p21());
        assert_eq!(id.evaluate_word(&w("d0:01")).output, w("d0:01"));
        assert_eq!(swap_elem().evaluate_word(&w("d0:01")).output, w("d0:10"));
        let r = AnchoredHomeo::from_prefix_map(&rotation());
        let short = r.evaluate_word(&w("d0:1"));
        assert!(!short.complete);
        assert_eq!(short.output, w("d0"));
    }

    #[test]
    fn inverse_and_compose() {
        let s = swap_elem();
        assert_eq!(s.inverse().unwrap(), s);
        assert!(s.compose(&s).unwrap().is_identity());
        let r = AnchoredHomeo::from_prefix_map(&rotation());
        assert!(r.compose(&r.inverse().unwrap()).unwrap().is_identity());
        let rs = r.compose(&s).unwrap();
        assert_eq!(rs.evaluate_word(&w("d0:0110")).output, w("d0:01001"));
    }

    #[test]
    fn equal_at_different_depths() {
        let coarse = AnchoredHomeo::identity(p21());
        let fine = AnchoredHomeo::from_parts_unchecked(
            p21(),
            SynchronousTransducer::identity(2),
            vec![
                Cell {
                    input: w("d0:0"),
                    output: w("d0:0"),
                    state: 0,
                },
                Cell {
                    input: w("d0:1"),
                    output: w("d0:1"),
                    state: 0,
                },
            ],
        );
        assert!(coarse.canonical_equal(&fine).unwrap());
        assert!(!coarse.canonical_equal(&swap_elem()).unwrap());
    }

    #[test]
    fn small_support_examples() {
        assert_eq!(AnchoredHomeo::identity(p21()).small_support_witness(), Some(w("d0")));
        assert_eq!(
            AnchoredHomeo::from_prefix_map(&rotation()).small_support_witness(),
            None
        );
        let swap = crate::prefix_map::cone_swap(p21(), &w("d0:0"), &w("d0:10")).unwrap();
        let h = AnchoredHomeo::from_prefix_map(&swap);
        assert_eq!(h.small_support_witness(), Some(w("d0:11")));
        assert!(!swap_elem().is_small_support());
    }

    #[test]
    fn non_bijective_cells_rejected() {
        let cells = vec![
            Cell {
                input: w("d0:0"),
                output: w("d0:0"),
                state: 0,
            },
            Cell {
                input: w("d0:1"),
                output: w("d0:01"),
                state: 0,
            },
        ];
        let r = AnchoredHomeo::new(p21(), SynchronousTransducer::identity(2), cells);
        assert!(matches!(r, Err(Error::NotBijective(..))));
    }

    fn raw(edges: Vec<Vec<(&str, usize)>>) -> RawInitialTransducer {
        let p = p21();
        RawInitialTransducer {
            params: p,
            initial: 0,
            edges: edges
                .into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|(o, next)| RawEdge {
                            output: Word::parse(o, &p).unwrap(),
                            next,
                        })
                        .collect()
                })
                .collect(),
        }
    }

    #[test]
    fn from_raw_examples() {
        let echo = raw(vec![vec![("d0", 1)], vec![("0", 1), ("1", 1)]]);
        assert!(echo.to_anchored().unwrap().is_identity());

        let swap = raw(vec![vec![("d0", 1)], vec![("1", 1), ("0", 1)]]);
        assert_eq!(swap.to_anchored().unwrap(), swap_elem());

        let frozen = raw(vec![
            vec![("d0", 1)],
            vec![("0", 1), ("1", 2)],
            vec![("0", 2), ("1", 1)],
        ]);
        assert!(matches!(frozen.to_anchored(), Err(Error::NotSynchronizing(_))));

        let stretch = raw(vec![vec![("d0", 1)], vec![("00", 1), ("1", 1)]]);
        assert!(matches!(stretch.to_anchored(), Err(Error::CoreNotSynchronous(1, 2))));

        // a transient state emitting extra letters before a synchronous core
        let shifted = raw(vec![
            vec![("d0:1", 1)],
            vec![("0", 2), ("-", 2)],
            vec![("0", 2), ("1", 2)],
        ]);
        assert!(shifted.to_anchored().is_err());
    }
}
