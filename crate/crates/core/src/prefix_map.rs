//! Elements of the Higman-Thompson group `G_{n,r}` as prefix-replacement maps,
//! the `T_{n,r}` membership test and the constructive witnesses used to
//! certify fullness, flexibility and transitivity.

use std::collections::BTreeMap;

use num::BigRational;

use crate::circle;
use crate::error::{Error, Result};
use crate::words::{complete_with, normalize_cones, CompleteAntichain, EventuallyPeriodicPoint, Letter, Params, Word};

/// A prefix-replacement homeomorphism: `u_a ρ ↦ v_{perm[a]} ρ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrefixMap {
    domain: CompleteAntichain,
    range: CompleteAntichain,
    perm: Vec<usize>,
}

/// Output of [`PrefixMap::small_support_decompose`]: `first · second = g`, and
/// each factor is the identity on the cone recorded next to it.
#[derive(Clone, Debug)]
pub struct SmallSupportFactors {
    pub first: PrefixMap,
    pub first_fixed: Word,
    pub second: PrefixMap,
    pub second_fixed: Word,
}

impl PrefixMap {
    pub fn new(domain: CompleteAntichain, range: CompleteAntichain, perm: Vec<usize>) -> Result<Self> {
        domain.params().check_same(&range.params())?;
        if !domain.words()[0].is_rooted() || !range.words()[0].is_rooted() {
            return Err(Error::InvalidPrefixMap(
                "antichains must consist of rooted words".into(),
            ));
        }
        if domain.len() != range.len() || perm.len() != domain.len() {
            return Err(Error::InvalidPrefixMap(format!(
                "domain has {} leaves, range {}, bijection {}",
                domain.len(),
                range.len(),
                perm.len()
            )));
        }
        let mut seen = vec![false; perm.len()];
        for &b in &perm {
            if b >= seen.len() || std::mem::replace(&mut seen[b], true) {
                return Err(Error::InvalidPrefixMap("leaf pairing is not a bijection".into()));
            }
        }
        Ok(PrefixMap { domain, range, perm })
    }

    /// Builds a map from `(domain word, range word)` pairs in any order.
    pub fn from_pairs(params: Params, pairs: Vec<(Word, Word)>) -> Result<Self> {
        let mut pairs = pairs;
        pairs.sort();
        let (dom, ran): (Vec<Word>, Vec<Word>) = pairs.into_iter().unzip();
        let domain = CompleteAntichain::validate(dom, params)?;
        let range = CompleteAntichain::validate(ran.clone(), params)?;
        let perm = ran
            .iter()
            .map(|v| range.words().binary_search(v).expect("range word present"))
            .collect();
        PrefixMap::new(domain, range, perm)
    }

    pub fn identity(params: Params) -> Self {
        let root = CompleteAntichain::root(params);
        PrefixMap {
            perm: (0..root.len()).collect(),
            domain: root.clone(),
            range: root,
        }
    }

    pub fn params(&self) -> Params {
        self.domain.params()
    }

    pub fn domain(&self) -> &CompleteAntichain {
        &self.domain
    }

    pub fn range(&self) -> &CompleteAntichain {
        &self.range
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// `(u_a, v_{perm[a]})` in domain order.
    pub fn pairs(&self) -> impl Iterator<Item = (&Word, &Word)> + '_ {
        self.domain
            .words()
            .iter()
            .zip(&self.perm)
            .map(|(u, &b)| (u, &self.range.words()[b]))
    }

    /// Image of a finite word long enough to determine a domain leaf.
    pub fn apply_letters(&self, letters: &[Letter]) -> Option<Vec<Letter>> {
        let a = self.domain.locate(letters)?;
        let u = &self.domain.words()[a];
        let v = &self.range.words()[self.perm[a]];
        let mut out = v.letters().to_vec();
        out.extend_from_slice(&letters[u.len()..]);
        Some(out)
    }

    pub fn apply_word(&self, w: &Word) -> Option<Word> {
        let a = self.domain.locate(w.letters())?;
        let u = &self.domain.words()[a];
        let v = &self.range.words()[self.perm[a]];
        Some(v.concat(&w.letters()[u.len()..]))
    }

    pub fn apply_point(&self, x: &EventuallyPeriodicPoint) -> EventuallyPeriodicPoint {
        let probe = x.prefix(self.domain.max_len());
        let a = self
            .domain
            .locate(probe.letters())
            .expect("complete antichain covers the point");
        let u = &self.domain.words()[a];
        let v = &self.range.words()[self.perm[a]];
        EventuallyPeriodicPoint::from_parts(v, &x.tail_after(u.len())).expect("valid point")
    }

    /// Unique reduced representative: repeatedly merges digit-sibling leaf
    /// families that map to digit-sibling families with matching last digits.
    pub fn canonicalize(&self) -> PrefixMap {
        let n = self.params().n as usize;
        let mut map: BTreeMap<Word, Word> = self.pairs().map(|(u, v)| (u.clone(), v.clone())).collect();
        loop {
            let keys: Vec<Word> = map.keys().cloned().collect();
            let mut merges = Vec::new();
            let mut i = 0;
            while i + n <= keys.len() {
                if let Some(parent) = sibling_family_parent(&keys[i..i + n], n) {
                    let images: Vec<&Word> = keys[i..i + n].iter().map(|k| &map[k]).collect();
                    if let Some(target) = sibling_family_parent_refs(&images, n) {
                        merges.push((i, parent, target));
                        i += n;
                        continue;
                    }
                }
                i += 1;
            }
            if merges.is_empty() {
                break;
            }
            for (i, parent, target) in merges {
                for k in &keys[i..i + n] {
                    map.remove(k);
                }
                map.insert(parent, target);
            }
        }
        PrefixMap::from_pairs(self.params(), map.into_iter().collect()).expect("reduction preserves validity")
    }

    /// Equality of the induced homeomorphisms.
    pub fn same_map(&self, other: &PrefixMap) -> bool {
        self.canonicalize() == other.canonicalize()
    }

    pub fn is_identity(&self) -> bool {
        self.pairs().all(|(u, v)| u == v)
    }

    /// `self` then `other` (right action), in canonical form.
    pub fn compose(&self, other: &PrefixMap) -> Result<PrefixMap> {
        self.params().check_same(&other.params())?;
        let common = self.range.refine(&other.domain)?;
        let mut inv = vec![0; self.perm.len()];
        for (a, &b) in self.perm.iter().enumerate() {
            inv[b] = a;
        }
        let pairs = common
            .words()
            .iter()
            .map(|w| {
                let b = self.range.locate(w.letters()).expect("refinement of range");
                let pre = self.domain.words()[inv[b]].concat(&w.letters()[self.range.words()[b].len()..]);
                let img = other.apply_word(w).expect("refinement of domain");
                (pre, img)
            })
            .collect();
        Ok(PrefixMap::from_pairs(self.params(), pairs)?.canonicalize())
    }

    pub fn inverse(&self) -> PrefixMap {
        let pairs = self.pairs().map(|(u, v)| (v.clone(), u.clone())).collect();
        PrefixMap::from_pairs(self.params(), pairs)
            .expect("swapping a valid map stays valid")
            .canonicalize()
    }

    /// `Some(b)` when the canonical form pairs lex-sorted leaves by the cyclic
    /// shift `a ↦ (a + b) mod L`; then the map lies in `T_{n,r}`.
    pub fn is_torder(&self) -> Option<usize> {
        let canon = self.canonicalize();
        let len = canon.perm.len();
        let b = canon.perm[0];
        canon
            .perm
            .iter()
            .enumerate()
            .all(|(a, &p)| p == (a + b) % len)
            .then_some(b)
    }

    /// Writes a non-identity map as a product of two maps of small support.
    ///
    /// Picks a cone `E` with `E ∩ (E)g = ∅` and `E ∪ (E)g` proper, lets `h`
    /// swap `E` and `(E)g` as `g` does, and returns `(g·h, h⁻¹)`.
    pub fn small_support_decompose(&self) -> Result<SmallSupportFactors> {
        let g = self.canonicalize();
        let params = g.params();
        let (u, v) = g
            .pairs()
            .find(|(u, v)| u != v)
            .map(|(u, v)| (u.clone(), v.clone()))
            .ok_or(Error::IsIdentity)?;
        // e and its image e' are incomparable cones with U_e g = U_e'
        let (e, e_img) = if u.is_prefix_of(&v) || v.is_prefix_of(&u) {
            let (short, long) = if u.len() < v.len() { (&u, &v) } else { (&v, &u) };
            let s0 = long.letters()[short.len()];
            let c = if s0 == 0 { 1 } else { 0 };
            (u.child(c), v.child(c))
        } else {
            (u.clone(), v.clone())
        };
        let cone = e.child(0);
        let cone_img = e_img.child(0);
        let swap = cone_swap(params, &cone, &cone_img)?;
        let first = g.compose(&swap)?;
        let second = swap.inverse();
        Ok(SmallSupportFactors {
            first,
            first_fixed: cone,
            second,
            second_fixed: e.child(1),
        })
    }

    /// True when `self` is the identity on every point of `U_cone`.
    pub fn fixes_cone(&self, cone: &Word) -> bool {
        // a canonical map fixes U_w pointwise iff every leaf meeting U_w is a fixed leaf
        let canon = self.canonicalize();
        let fixed = canon.pairs().all(|(u, v)| {
            let meets = u.is_prefix_of(cone) || cone.is_prefix_of(u);
            !meets || u == v
        });
        fixed
    }
}

/// `Some(p)` when `family` is exactly `p·0, ..., p·(n-1)`.
fn sibling_family_parent(family: &[Word], n: usize) -> Option<Word> {
    let refs: Vec<&Word> = family.iter().collect();
    sibling_family_parent_refs(&refs, n)
}

fn sibling_family_parent_refs(family: &[&Word], n: usize) -> Option<Word> {
    let parent = family[0].parent()?;
    let ok = family.len() == n
        && family
            .iter()
            .enumerate()
            .all(|(a, w)| w.len() == parent.len() + 1 && parent.is_prefix_of(w) && w.last_digit() == Some(a as Letter));
    ok.then_some(parent)
}

/// The involution exchanging two disjoint cones, identity elsewhere.
pub fn cone_swap(params: Params, a: &Word, b: &Word) -> Result<PrefixMap> {
    if a.is_prefix_of(b) || b.is_prefix_of(a) {
        return Err(Error::InvalidPrefixMap(format!("cones {a} and {b} overlap")));
    }
    let pairs = complete_with(&params, &[a.clone(), b.clone()])
        .into_iter()
        .map(|(w, _)| {
            let img = if &w == a {
                b.clone()
            } else if &w == b {
                a.clone()
            } else {
                w.clone()
            };
            (w, img)
        })
        .collect();
    PrefixMap::from_pairs(params, pairs)
}

/// Pads paired segments to equal leaf counts, then pairs their leaves in
/// order. Padding replaces the first leaf of the shorter segment by its
/// children, which adds `n - 1` leaves.
pub fn pair_segments(params: Params, segments: Vec<(Vec<Word>, Vec<Word>)>) -> Result<PrefixMap> {
    let step = params.n as usize - 1;
    let mut pairs = Vec::new();
    for (mut dom, mut ran) in segments {
        if dom.is_empty() != ran.is_empty() {
            return Err(Error::ResidueMismatch("one side of a segment is empty".into()));
        }
        if dom.len() % step != ran.len() % step {
            return Err(Error::ResidueMismatch(format!("{} vs {} leaves", dom.len(), ran.len())));
        }
        while dom.len() != ran.len() {
            let short = if dom.len() < ran.len() { &mut dom } else { &mut ran };
            let first = short.remove(0);
            let children: Vec<Word> = first.children(params.n).collect();
            short.splice(0..0, children);
        }
        pairs.extend(dom.into_iter().zip(ran));
    }
    PrefixMap::from_pairs(params, pairs)
}

/// Order-preserving map supported on `U_support` sending `U_from` onto `U_to`.
pub fn cone_local_map(params: Params, support: &Word, from: &Word, to: &Word) -> Result<PrefixMap> {
    if !support.is_prefix_of(from) || !support.is_prefix_of(to) {
        return Err(Error::InvalidPrefixMap(format!(
            "{from} and {to} must lie inside {support}"
        )));
    }
    // complement cones of a target are either inside the support or disjoint from it
    let split = |target: &Word| {
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut outside = Vec::new();
        for (w, given) in complete_with(&params, std::slice::from_ref(target)) {
            if given {
                continue;
            }
            if !support.is_prefix_of(&w) {
                outside.push(w);
            } else if w < *target {
                left.push(w);
            } else {
                right.push(w);
            }
        }
        (left, right, outside)
    };
    let (dl, dr, outside) = split(from);
    let (rl, rr, _) = split(to);
    let mut segments = vec![(vec![from.clone()], vec![to.clone()])];
    if !dl.is_empty() || !rl.is_empty() {
        segments.push((dl, rl));
    }
    if !dr.is_empty() || !rr.is_empty() {
        segments.push((dr, rr));
    }
    segments.extend(outside.into_iter().map(|w| (vec![w.clone()], vec![w])));
    pair_segments(params, segments)
}

/// Some `g` with `(E1)g ⊆ E2` for unions of cones `E1`, `E2`.
///
/// The cones of `E1` go, in order, to the first descendants of the lex-least
/// cone of `E2` at a depth that leaves room for them plus one spare cone; the
/// complements are matched in order after padding.
pub fn flexibility_witness(params: Params, e1: &[Word], e2: &[Word]) -> Result<PrefixMap> {
    let source = normalize_cones(e1);
    let target = normalize_cones(e2);
    if target.is_empty() {
        return Err(Error::EmptyTarget);
    }
    for w in source.iter().chain(&target) {
        w.validate(&params)?;
        if !w.is_rooted() {
            return Err(Error::InvalidWord(format!("{w} is not rooted")));
        }
    }
    let domain = complete_with(&params, &source);
    if domain.iter().all(|(_, given)| *given) {
        return Err(Error::E1NotProper);
    }
    if source.is_empty() || source.iter().all(|u| target.iter().any(|t| t.is_prefix_of(u))) {
        return Ok(PrefixMap::identity(params));
    }
    let anchor = &target[0];
    let k = source.len();
    let mut depth = 0;
    while (params.n as usize).pow(depth as u32) < k + 1 {
        depth += 1;
    }
    let slots: Vec<Word> = anchor.extensions(params.n, depth).into_iter().take(k).collect();
    let range = complete_with(&params, &slots);
    let dom_rest: Vec<Word> = domain.iter().filter(|(_, g)| !g).map(|(w, _)| w.clone()).collect();
    let ran_rest: Vec<Word> = range.iter().filter(|(_, g)| !g).map(|(w, _)| w.clone()).collect();
    let mut segments: Vec<(Vec<Word>, Vec<Word>)> = source
        .iter()
        .cloned()
        .zip(slots)
        .map(|(u, v)| (vec![u], vec![v]))
        .collect();
    segments.push((dom_rest, ran_rest));
    let g = pair_segments(params, segments)?;
    debug_assert!(check_flexibility(&g, &source, &target));
    Ok(g)
}

/// Post-check for [`flexibility_witness`]: every leaf inside `E1` lands in `E2`.
pub fn check_flexibility(g: &PrefixMap, e1: &[Word], e2: &[Word]) -> bool {
    let e1 = normalize_cones(e1);
    let refined = {
        let mut pairs = Vec::new();
        let d = CompleteAntichain::validate(
            complete_with(&g.params(), &e1).into_iter().map(|(w, _)| w).collect(),
            g.params(),
        )
        .expect("completion is complete");
        for w in d.refine(g.domain()).expect("same params").words() {
            pairs.push((w.clone(), g.apply_word(w).expect("covers")));
        }
        pairs
    };
    refined.iter().all(|(u, v)| {
        let inside_e1 = e1.iter().any(|c| c.is_prefix_of(u));
        !inside_e1 || e2.iter().any(|c| c.is_prefix_of(v))
    })
}

/// Some `h` equal to the identity outside `U` with `(x)h ∈ V`.
///
/// Returns the involution swapping a cone around `x` with the lex-least cone
/// of `V`; both lie inside `U`.
pub fn rubin_witness(params: Params, x: &EventuallyPeriodicPoint, u: &[Word], v: &[Word]) -> Result<PrefixMap> {
    let u = normalize_cones(u);
    let v = normalize_cones(v);
    let home = u.iter().find(|c| x.in_cone(c)).ok_or(Error::PointOutsideU)?;
    if v.is_empty() || !v.iter().all(|c| u.iter().any(|big| big.is_prefix_of(c))) {
        return Err(Error::VNotInsideU);
    }
    if v.iter().any(|c| x.in_cone(c)) {
        return Ok(PrefixMap::identity(params));
    }
    let target = &v[0];
    let around = x.prefix(target.len().max(home.len()));
    cone_swap(params, &around, target)
}

/// Some `g ∈ T_{n,r}` with `(x_i)g = y_i`, for n-adic circle points given
/// as exact values in `[0, r)` listed in circular order.
pub fn transitive_witness(params: Params, xs: &[BigRational], ys: &[BigRational]) -> Result<PrefixMap> {
    if xs.len() != ys.len() {
        return Err(Error::NotCircularlyOrdered);
    }
    if xs.is_empty() {
        return Ok(PrefixMap::identity(params));
    }
    let mut depth = 0;
    let mut scaled = Vec::new();
    for x in xs.iter().chain(ys) {
        let (num, c) = circle::nadic_parts(x, &params)?;
        depth = depth.max(c);
        scaled.push((num, c));
    }
    let leaves = CompleteAntichain::uniform(params, depth).into_words();
    let total = leaves.len();
    let index = |(num, c): &(num::BigInt, usize)| -> usize {
        let factor = num::BigInt::from(params.n).pow((depth - c) as u32);
        let idx: num::BigInt = num * factor;
        usize::try_from(idx).expect("index fits") % total
    };
    let xi: Vec<usize> = scaled[..xs.len()].iter().map(index).collect();
    let yi: Vec<usize> = scaled[xs.len()..].iter().map(index).collect();
    if !circle::cyclically_increasing(&xi) || !circle::cyclically_increasing(&yi) {
        return Err(Error::NotCircularlyOrdered);
    }
    let k = xi.len();
    let segment = |start: usize, end: usize| -> Vec<Word> {
        let count = if k == 1 { total } else { (end + total - start) % total };
        (0..count).map(|t| leaves[(start + t) % total].clone()).collect()
    };
    let segments = (0..k)
        .map(|i| {
            let next = (i + 1) % k;
            (segment(xi[i], xi[next]), segment(yi[i], yi[next]))
        })
        .collect();
    Ok(pair_segments(params, segments)?.canonicalize())
}

/// Some `f ∈ T_{n,r}` fixing the n-adic point `x` whose germ at `x` has
/// length offsets `d = i` on the `(n-1)^ω` side and `e = j` on the `0^ω`
/// side, and which is the identity on `avoid`.
pub fn realize_germ(
    params: Params,
    x: &EventuallyPeriodicPoint,
    i: i64,
    j: i64,
    avoid: Option<&Word>,
) -> Result<PrefixMap> {
    let (left, right) = circle::nadic_expansions(x, &params)?;
    if let Some(a) = avoid {
        if left.in_cone(a) || right.in_cone(a) {
            return Err(Error::AvoidContainsX(a.clone()));
        }
    }
    let tau_left = left.stem().clone();
    let tau_right = right.stem().clone();
    let floor = avoid.map_or(0, Word::len);
    let mut s = 1;
    while tau_left.len() + s < floor || tau_right.len() + s < floor {
        s += 1;
    }
    let n = params.n;
    let right_cone = tau_right.concat(&vec![0; s]);
    let left_cone = tau_left.concat(&vec![n - 1; s]);

    let mut f = PrefixMap::identity(params);
    if j != 0 {
        let step = right_shift(params, &right_cone)?;
        let step = if j > 0 { step } else { step.inverse() };
        for _ in 0..j.unsigned_abs() {
            f = f.compose(&step)?;
        }
    }
    if i != 0 {
        let step = left_shift(params, &left_cone)?;
        let step = if i > 0 { step } else { step.inverse() };
        for _ in 0..i.unsigned_abs() {
            f = f.compose(&step)?;
        }
    }
    Ok(f)
}

/// Supported on `U_p`, maps `U_{p0}` onto `U_{p00}` order-preservingly.
fn right_shift(params: Params, p: &Word) -> Result<PrefixMap> {
    let n = params.n;
    let mut dom = vec![p.child(0)];
    dom.extend(p.child(1).children(n));
    dom.extend((2..n).map(|a| p.child(a)));
    let mut ran: Vec<Word> = p.child(0).children(n).collect();
    ran.extend((1..n).map(|a| p.child(a)));
    local_with_identity(params, p, dom, ran)
}

/// Supported on `U_q`, maps `U_{q(n-1)}` onto `U_{q(n-1)(n-1)}`.
fn left_shift(params: Params, q: &Word) -> Result<PrefixMap> {
    let n = params.n;
    let mut dom: Vec<Word> = (0..n - 2).map(|a| q.child(a)).collect();
    dom.extend(q.child(n - 2).children(n));
    dom.push(q.child(n - 1));
    let mut ran: Vec<Word> = (0..n - 1).map(|a| q.child(a)).collect();
    ran.extend(q.child(n - 1).children(n));
    local_with_identity(params, q, dom, ran)
}

fn local_with_identity(params: Params, support: &Word, dom: Vec<Word>, ran: Vec<Word>) -> Result<PrefixMap> {
    let mut pairs: Vec<(Word, Word)> = dom.into_iter().zip(ran).collect();
    for (w, given) in complete_with(&params, std::slice::from_ref(support)) {
        if !given {
            pairs.push((w.clone(), w));
        }
    }
    PrefixMap::from_pairs(params, pairs)
}
