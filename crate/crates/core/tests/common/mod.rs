#![allow(dead_code)]

use cantor_core::circle::nadic_expansions;
use cantor_core::prefix_map::{cone_local_map, realize_germ};
use cantor_core::{
    AnchoredHomeo, EventuallyPeriodicPoint, Letter, Params, PrefixMap, SyncVerdict, SynchronousTransducer, Word,
};
use num::{BigInt, BigRational};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn params(n: u32, r: u32) -> Params {
    Params::new(n, r).unwrap()
}

pub fn w(text: &str, p: &Params) -> Word {
    Word::parse(text, p).unwrap()
}

pub fn pt(text: &str, p: &Params) -> EventuallyPeriodicPoint {
    EventuallyPeriodicPoint::parse(text, p).unwrap()
}

pub fn frac(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// All rooted words with exactly `digits` digits.
pub fn all_words(p: &Params, digits: usize) -> Vec<Vec<Letter>> {
    let mut words: Vec<Vec<Letter>> = (0..p.r).map(|d| vec![d]).collect();
    for _ in 0..digits {
        words = words
            .into_iter()
            .flat_map(|w| {
                (0..p.n).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    words
}

/// All plain words of length `len` over `n` letters.
pub fn plain_words(n: u32, len: usize) -> Vec<Vec<Letter>> {
    let mut words = vec![Vec::new()];
    for _ in 0..len {
        words = words
            .into_iter()
            .flat_map(|w| {
                (0..n).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    words
}

/// Random complete antichain with `expansions` leaf expansions.
pub fn random_antichain(rng: &mut ChaCha8Rng, p: &Params, expansions: usize) -> Vec<Word> {
    let mut leaves = p.roots();
    for _ in 0..expansions {
        let i = rng.gen_range(0..leaves.len());
        let leaf = leaves.remove(i);
        leaves.extend(leaf.children(p.n));
    }
    leaves.sort();
    leaves
}

/// Expansions needed to keep at most `max_leaves` leaves.
pub fn expansions_for(rng: &mut ChaCha8Rng, p: &Params, max_leaves: usize) -> usize {
    let step = p.n as usize - 1;
    let most = max_leaves.saturating_sub(p.r as usize) / step;
    rng.gen_range(0..=most)
}

pub fn random_prefix_map(rng: &mut ChaCha8Rng, p: &Params, max_leaves: usize) -> PrefixMap {
    let k = expansions_for(rng, p, max_leaves);
    let dom = random_antichain(rng, p, k);
    let ran = random_antichain(rng, p, k);
    let mut perm: Vec<usize> = (0..dom.len()).collect();
    perm.shuffle(rng);
    let pairs = dom.into_iter().zip(perm.into_iter().map(|j| ran[j].clone())).collect();
    PrefixMap::from_pairs(*p, pairs).unwrap()
}

/// Random element of `T_{n,r}`: lex-ordered leaves rotated by a random shift.
pub fn random_torder(rng: &mut ChaCha8Rng, p: &Params, max_leaves: usize) -> PrefixMap {
    let k = expansions_for(rng, p, max_leaves);
    let dom = random_antichain(rng, p, k);
    let ran = random_antichain(rng, p, k);
    let b = rng.gen_range(0..dom.len());
    let l = dom.len();
    let pairs = (0..l).map(|a| (dom[a].clone(), ran[(a + b) % l].clone())).collect();
    PrefixMap::from_pairs(*p, pairs).unwrap()
}

/// Random machine with permutation output rows.
pub fn random_invertible(rng: &mut ChaCha8Rng, n: u32, states: usize) -> SynchronousTransducer {
    let next = (0..states)
        .map(|_| (0..n).map(|_| rng.gen_range(0..states)).collect())
        .collect();
    let out = (0..states)
        .map(|_| {
            let mut row: Vec<Letter> = (0..n).collect();
            row.shuffle(rng);
            row
        })
        .collect();
    SynchronousTransducer::new(n, next, out).unwrap()
}

pub fn random_machine(rng: &mut ChaCha8Rng, n: u32, states: usize) -> SynchronousTransducer {
    let next = (0..states)
        .map(|_| (0..n).map(|_| rng.gen_range(0..states)).collect())
        .collect();
    let out = (0..states)
        .map(|_| (0..n).map(|_| rng.gen_range(0..n)).collect())
        .collect();
    SynchronousTransducer::new(n, next, out).unwrap()
}

/// Random invertible machine that is synchronizing with synchronizing inverse.
pub fn random_bisync(rng: &mut ChaCha8Rng, n: u32, states: usize) -> SynchronousTransducer {
    loop {
        let t = random_invertible(rng, n, states);
        let sync = matches!(t.synchronization_certificate(), SyncVerdict::Synchronizing(_));
        if sync
            && matches!(
                t.invert().unwrap().synchronization_certificate(),
                SyncVerdict::Synchronizing(_)
            )
        {
            return t;
        }
    }
}

/// Random anchored element: a random prefix map followed by a cell-wise
/// choice of core states of a random bi-synchronizing core.
pub fn random_anchored(rng: &mut ChaCha8Rng, p: &Params, max_leaves: usize, states: usize) -> AnchoredHomeo {
    let core = random_bisync(rng, p.n, states).core_extract().unwrap();
    let g = random_prefix_map(rng, p, max_leaves);
    let cells = g
        .pairs()
        .map(|(u, v)| cantor_core::Cell {
            input: u.clone(),
            output: v.clone(),
            state: rng.gen_range(0..core.num_states()),
        })
        .collect();
    AnchoredHomeo::new(*p, core, cells).unwrap()
}

/// Image of a finite word under a prefix map, by scanning the leaf pairs.
pub fn oracle_prefix_map(g: &PrefixMap, letters: &[Letter]) -> Option<Vec<Letter>> {
    for (u, v) in g.pairs() {
        let ul = u.letters();
        if letters.len() >= ul.len() && letters[..ul.len()] == *ul {
            let mut out = v.letters().to_vec();
            out.extend_from_slice(&letters[ul.len()..]);
            return Some(out);
        }
    }
    None
}

/// Output of a machine run letter by letter.
pub fn oracle_run(t: &SynchronousTransducer, mut q: usize, letters: &[Letter]) -> (Vec<Letter>, usize) {
    let mut out = Vec::new();
    for &a in letters {
        out.push(t.output(q, a));
        q = t.next_state(q, a);
    }
    (out, q)
}

/// Image of a finite word under an anchored element, by scanning cells.
pub fn oracle_anchored(h: &AnchoredHomeo, letters: &[Letter]) -> Option<Vec<Letter>> {
    for c in h.cells() {
        let ul = c.input.letters();
        if letters.len() >= ul.len() && letters[..ul.len()] == *ul {
            let mut out = c.output.letters().to_vec();
            out.extend(oracle_run(h.core(), c.state, &letters[ul.len()..]).0);
            return Some(out);
        }
    }
    None
}

/// Least `k <= max` such that every length-`k` word sends all states to one
/// state, found by enumeration.
pub fn oracle_sync_level(t: &SynchronousTransducer, max: usize) -> Option<usize> {
    (0..=max).find(|&k| {
        plain_words(t.n(), k).iter().all(|word| {
            let target = oracle_run(t, 0, word).1;
            (0..t.num_states()).all(|q| oracle_run(t, q, word).1 == target)
        })
    })
}

/// Exact value of the first `letters` of an expansion: dot + digits / n^k.
pub fn oracle_value(p: &Params, letters: &[Letter]) -> BigRational {
    let mut value = BigRational::from_integer(BigInt::from(letters[0]));
    let mut scale = BigRational::from_integer(BigInt::from(1));
    let n = BigRational::from_integer(BigInt::from(p.n));
    for &a in &letters[1..] {
        scale /= n.clone();
        value += scale.clone() * BigRational::from_integer(BigInt::from(a));
    }
    value
}

/// Brute-force gluing partner of a point given by stem letters and a
/// one-letter period of `0` or `n-1`.
pub fn oracle_partner(p: &Params, stem: &[Letter], tail: Letter) -> (Vec<Letter>, Letter) {
    let top = p.n - 1;
    let mut s = stem.to_vec();
    if s.len() == 1 {
        let d = s[0];
        return if tail == 0 {
            (vec![(d + p.r - 1) % p.r], top)
        } else {
            (vec![(d + 1) % p.r], 0)
        };
    }
    let last = s.len() - 1;
    if tail == 0 {
        s[last] -= 1;
        (s, top)
    } else {
        s[last] += 1;
        (s, 0)
    }
}

/// Raw initial transducer with the same action as `h`: a tree of transient
/// states over the cell inputs feeding a copy of the core. With `eager`,
/// every tree edge writes as much as all cells below it agree on.
pub fn raw_from_anchored(h: &AnchoredHomeo, eager: bool) -> cantor_core::RawInitialTransducer {
    use cantor_core::RawEdge;
    use std::collections::BTreeMap;
    let p = h.params();
    let cells = h.cells();
    // proper prefixes of cell inputs, excluding the empty word, become tree states
    let mut nodes: BTreeMap<Vec<Letter>, usize> = BTreeMap::new();
    for c in cells {
        for len in 1..c.input.len() {
            let key = c.input.letters()[..len].to_vec();
            let next = nodes.len() + 1;
            nodes.entry(key).or_insert(next);
        }
    }
    let core_offset = nodes.len() + 1;
    let written = |prefix: &[Letter]| -> Vec<Letter> {
        if !eager {
            return Vec::new();
        }
        let below: Vec<&[Letter]> = cells
            .iter()
            .filter(|c| c.input.letters().starts_with(prefix))
            .map(|c| c.output.letters())
            .collect();
        let mut common = below[0].to_vec();
        for o in &below[1..] {
            let k = common.iter().zip(o.iter()).take_while(|(a, b)| a == b).count();
            common.truncate(k);
        }
        common
    };
    let to_word = |letters: &[Letter], rooted: bool| {
        if rooted {
            Word::rooted(letters[0], &letters[1..])
        } else {
            Word::plain(letters.to_vec())
        }
    };
    let edge = |from: &[Letter], a: Letter| -> RawEdge {
        let mut child = from.to_vec();
        child.push(a);
        let before = if from.is_empty() { Vec::new() } else { written(from) };
        let (after, next) = match cells.iter().find(|c| c.input.letters() == child.as_slice()) {
            Some(c) => (c.output.letters().to_vec(), core_offset + c.state),
            None => (written(&child), nodes[&child]),
        };
        let piece = &after[before.len()..];
        let output = if piece.is_empty() {
            Word::empty()
        } else {
            to_word(piece, before.is_empty())
        };
        RawEdge { output, next }
    };
    let mut edges = vec![Vec::new(); core_offset + h.core().num_states()];
    edges[0] = (0..p.r).map(|d| edge(&[], d)).collect();
    for (key, &id) in &nodes {
        edges[id] = (0..p.n).map(|a| edge(key, a)).collect();
    }
    for q in 0..h.core().num_states() {
        edges[core_offset + q] = (0..p.n)
            .map(|a| RawEdge {
                output: Word::plain(vec![h.core().output(q, a)]),
                next: core_offset + h.core().next_state(q, a),
            })
            .collect();
    }
    cantor_core::RawInitialTransducer {
        params: p,
        initial: 0,
        edges,
    }
}

/// Pointwise identity on every word below `cone` with `depth` letters in total.
pub fn fixes_cone_to_depth(g: &PrefixMap, cone: &Word, depth: usize) -> bool {
    let extra = depth.saturating_sub(cone.len());
    cone.extensions(g.params().n, extra)
        .iter()
        .all(|x| oracle_prefix_map(g, x.letters()).as_deref() == Some(x.letters()))
}

/// Every point `w 0^ω` with at most `depth` digits.
pub fn nadic_points(p: &Params, depth: usize) -> Vec<EventuallyPeriodicPoint> {
    (0..=depth)
        .flat_map(|k| all_words(p, k))
        .map(|w| EventuallyPeriodicPoint::new(Word::rooted(w[0], &w[1..]), vec![0]).unwrap())
        .collect()
}

/// Letter-by-letter test that two points are distinct expansions of one
/// circle value.
pub fn oracle_glued(p: &Params, x: &EventuallyPeriodicPoint, y: &EventuallyPeriodicPoint) -> bool {
    let top = p.n - 1;
    let horizon = x.stem().len() + y.stem().len() + 2 * (x.period().len() + y.period().len()) + 2;
    let letters = |z: &EventuallyPeriodicPoint| (0..horizon).map(|i| z.letter_at(i)).collect::<Vec<Letter>>();
    let (a, b) = (letters(x), letters(y));
    let all = |s: &[Letter], v: Letter| s.iter().all(|&c| c == v);
    // d0 0^ω against d(r-1) (n-1)^ω
    let wraps = |lo: &[Letter], hi: &[Letter]| lo[0] == p.r - 1 && hi[0] == 0 && all(&lo[1..], top) && all(&hi[1..], 0);
    if wraps(&a, &b) || wraps(&b, &a) {
        return true;
    }
    let Some(i) = (0..horizon).find(|&i| a[i] != b[i]) else {
        return false;
    };
    let (hi, lo) = if a[i] > b[i] { (&a, &b) } else { (&b, &a) };
    hi[i] == lo[i] + 1 && all(&hi[i + 1..], 0) && all(&lo[i + 1..], top)
}

/// Brute-force check that `h` sends every sampled `≃`-pair to a `≃`-pair.
pub fn pairs_map_to_pairs(h: &AnchoredHomeo, depth: usize) -> bool {
    let p = h.params();
    nadic_points(&p, depth).iter().all(|x| {
        let stem = x.stem().letters();
        let (ps, pt) = oracle_partner(&p, stem, 0);
        let y = EventuallyPeriodicPoint::new(Word::rooted(ps[0], &ps[1..]), vec![pt]).unwrap();
        oracle_glued(&p, &h.evaluate_point(x), &h.evaluate_point(&y))
    })
}

pub fn reflection(p: &Params) -> AnchoredHomeo {
    let perm: Vec<Letter> = (0..p.n).rev().collect();
    AnchoredHomeo::from_core_state(*p, SynchronousTransducer::letter_permutation(p.n, &perm), 0).unwrap()
}

/// Cones at depth `depth` missing both expansions of `x`.
pub fn cones_away_from(p: &Params, x: &EventuallyPeriodicPoint, depth: usize) -> Vec<Word> {
    let expansions: Vec<EventuallyPeriodicPoint> = match nadic_expansions(x, p) {
        Ok((l, r)) => vec![l, r],
        Err(_) => vec![x.clone()],
    };
    all_words(p, depth)
        .into_iter()
        .map(|w| Word::rooted(w[0], &w[1..]))
        .filter(|c| expansions.iter().all(|e| !e.in_cone(c)))
        .collect()
}

/// An order-preserving map moving one subcone of `support` onto another.
pub fn local_move(r: &mut ChaCha8Rng, p: &Params, support: &Word) -> AnchoredHomeo {
    let pick = |r: &mut ChaCha8Rng| {
        let len = r.gen_range(1..=2);
        support.concat(&(0..len).map(|_| r.gen_range(0..p.n)).collect::<Vec<_>>())
    };
    // a cone touching an edge of the support can only go to another such cone
    loop {
        let (from, to) = (pick(r), pick(r));
        if let Ok(g) = cone_local_map(*p, support, &from, &to) {
            return AnchoredHomeo::from_prefix_map(&g);
        }
    }
}

/// Generators of the orientation-preserving stabilizer of `x` in `T`.
pub fn stabilizer_generator(r: &mut ChaCha8Rng, p: &Params, x: &EventuallyPeriodicPoint) -> AnchoredHomeo {
    if r.gen_bool(0.5) {
        let away = cones_away_from(p, x, 2);
        let support = &away[r.gen_range(0..away.len())];
        return local_move(r, p, support);
    }
    match nadic_expansions(x, p) {
        Ok(_) => {
            let (i, j) = (r.gen_range(-2..=2), r.gen_range(-2..=2));
            AnchoredHomeo::from_prefix_map(&realize_germ(*p, x, i, j, None).unwrap())
        }
        Err(_) => {
            // stretch the cone around τ w^ω by one period
            let stem = x.stem().len();
            let period = x.period().len();
            let support = x.prefix(stem + 1);
            let from = x.prefix(stem + period + 1);
            let to = x.prefix(stem + 2 * period + 1);
            let g = AnchoredHomeo::from_prefix_map(&cone_local_map(*p, &support, &from, &to).unwrap());
            if r.gen_bool(0.5) {
                g
            } else {
                g.inverse().unwrap()
            }
        }
    }
}

pub fn stabilizer_element(r: &mut ChaCha8Rng, p: &Params, x: &EventuallyPeriodicPoint) -> AnchoredHomeo {
    let mut h = AnchoredHomeo::identity(*p);
    for _ in 0..r.gen_range(1..=3) {
        h = h.compose(&stabilizer_generator(r, p, x)).unwrap();
    }
    h
}
