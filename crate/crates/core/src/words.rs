//! Finite words over `X_n` and `X_{n,r}`, complete antichains and eventually
//! periodic points of the Cantor space `C_{n,r}`.
//!
//! A rooted word starts with a dot letter `d0 .. d(r-1)` followed by digits in
//! `0 .. n`. Its cone `U_w` is the clopen set of all infinite words extending
//! it. Lexicographic order is the first-difference order with a prefix placed
//! before its extensions, which on rooted words is exactly the derived `Ord`.

use std::cmp::Ordering;
use std::fmt;

use num::{BigUint, One, Zero};

use crate::error::{Error, Result};

pub type Letter = u32;

/// Arity `n` and number of roots `r` of `C_{n,r}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Params {
    pub n: u32,
    pub r: u32,
}

impl Params {
    pub fn new(n: u32, r: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParams(format!("n = {n} must be at least 2")));
        }
        if r < 1 {
            return Err(Error::InvalidParams(format!("r = {r} must be at least 1")));
        }
        Ok(Params { n, r })
    }

    pub fn check_same(&self, other: &Params) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ParamsMismatch(format!(
                "n={} r={} vs n={} r={}",
                self.n, self.r, other.n, other.r
            )))
        }
    }

    /// The root antichain `{d0, ..., d(r-1)}`.
    pub fn roots(&self) -> Vec<Word> {
        (0..self.r).map(Word::root).collect()
    }

    /// Every rooted word with exactly `depth` digits, in lex order.
    pub fn words_at_depth(&self, depth: usize) -> Vec<Word> {
        let mut out = Vec::new();
        for root in self.roots() {
            out.extend(root.extensions(self.n, depth));
        }
        out
    }
}

impl Default for Params {
    fn default() -> Self {
        Params { n: 2, r: 1 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WordKind {
    Plain,
    Rooted,
}

/// A finite word. For rooted words `letters[0]` is the dot-letter index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    kind: WordKind,
    letters: Vec<Letter>,
}

/// Position of two words in the prefix order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrefixRelation {
    Equal,
    /// The first word is a proper prefix of the second.
    PrefixOf,
    /// The first word properly extends the second.
    ExtensionOf,
    Incomparable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WordComparison {
    pub prefix: PrefixRelation,
    pub lex: Ordering,
}

impl Word {
    pub fn plain(digits: impl Into<Vec<Letter>>) -> Word {
        Word {
            kind: WordKind::Plain,
            letters: digits.into(),
        }
    }

    pub fn empty() -> Word {
        Word::plain(Vec::new())
    }

    pub fn root(dot: Letter) -> Word {
        Word {
            kind: WordKind::Rooted,
            letters: vec![dot],
        }
    }

    pub fn rooted(dot: Letter, digits: &[Letter]) -> Word {
        let mut letters = Vec::with_capacity(digits.len() + 1);
        letters.push(dot);
        letters.extend_from_slice(digits);
        Word {
            kind: WordKind::Rooted,
            letters,
        }
    }

    pub fn kind(&self) -> WordKind {
        self.kind
    }

    pub fn is_rooted(&self) -> bool {
        self.kind == WordKind::Rooted
    }

    /// All letters, including the dot letter of a rooted word.
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// The digit part: everything after the dot letter for rooted words.
    pub fn digits(&self) -> &[Letter] {
        match self.kind {
            WordKind::Plain => &self.letters,
            WordKind::Rooted => &self.letters[1..],
        }
    }

    /// Dot-letter index of a rooted word.
    pub fn dot(&self) -> Option<Letter> {
        match self.kind {
            WordKind::Rooted => Some(self.letters[0]),
            WordKind::Plain => None,
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn validate(&self, params: &Params) -> Result<()> {
        let digits = match self.kind {
            WordKind::Rooted => {
                match self.letters.first() {
                    None => return Err(Error::InvalidWord("empty rooted word".into())),
                    Some(&d) if d >= params.r => {
                        return Err(Error::InvalidWord(format!(
                            "dot letter d{d} out of range for r = {}",
                            params.r
                        )))
                    }
                    _ => {}
                }
                &self.letters[1..]
            }
            WordKind::Plain => &self.letters[..],
        };
        if let Some(&bad) = digits.iter().find(|&&a| a >= params.n) {
            return Err(Error::InvalidWord(format!(
                "digit {bad} out of range for n = {}",
                params.n
            )));
        }
        Ok(())
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        self.kind == other.kind && other.letters.starts_with(&self.letters)
    }

    /// True when `self` is a prefix of the letter sequence `letters`.
    pub fn is_prefix_of_letters(&self, letters: &[Letter]) -> bool {
        letters.starts_with(&self.letters)
    }

    pub fn child(&self, a: Letter) -> Word {
        let mut letters = self.letters.clone();
        letters.push(a);
        Word {
            kind: self.kind,
            letters,
        }
    }

    pub fn children(&self, n: u32) -> impl Iterator<Item = Word> + '_ {
        (0..n).map(move |a| self.child(a))
    }

    pub fn concat(&self, tail: &[Letter]) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(tail);
        Word {
            kind: self.kind,
            letters,
        }
    }

    /// Drops the last letter, keeping a rooted word nonempty.
    pub fn parent(&self) -> Option<Word> {
        let min = if self.is_rooted() { 1 } else { 0 };
        if self.letters.len() <= min {
            return None;
        }
        Some(Word {
            kind: self.kind,
            letters: self.letters[..self.letters.len() - 1].to_vec(),
        })
    }

    pub fn last_digit(&self) -> Option<Letter> {
        self.digits().last().copied()
    }

    pub fn truncated(&self, len: usize) -> Word {
        Word {
            kind: self.kind,
            letters: self.letters[..len.min(self.letters.len())].to_vec(),
        }
    }

    /// Every extension of `self` by exactly `k` digits, in lex order.
    pub fn extensions(&self, n: u32, k: usize) -> Vec<Word> {
        let mut out = vec![self.clone()];
        for _ in 0..k {
            out = out.iter().flat_map(|w| w.children(n)).collect();
        }
        out
    }

    pub fn longest_common_prefix(&self, other: &Word) -> usize {
        self.letters
            .iter()
            .zip(&other.letters)
            .take_while(|(a, b)| a == b)
            .count()
    }

    /// Renders the word in the text syntax used by every file format.
    pub fn to_text(&self, n: u32) -> String {
        let digits = format_digits(self.digits(), n);
        match self.kind {
            WordKind::Rooted if digits.is_empty() => format!("d{}", self.letters[0]),
            WordKind::Rooted => format!("d{}:{}", self.letters[0], digits),
            WordKind::Plain if digits.is_empty() => "-".to_string(),
            WordKind::Plain => digits,
        }
    }

    /// Parses `d<i>`, `d<i>:<digits>`, plain `<digits>` or `-` for the empty word.
    pub fn parse(text: &str, params: &Params) -> Result<Word> {
        let text = text.trim();
        let word = if let Some(rest) = text.strip_prefix('d') {
            let (dot, digits) = match rest.split_once(':') {
                Some((dot, digits)) => (dot, digits),
                None => (rest, ""),
            };
            let dot: Letter = dot
                .parse()
                .map_err(|_| Error::InvalidWord(format!("bad dot letter in {text:?}")))?;
            Word::rooted(dot, &parse_digits(digits, params.n)?)
        } else if text == "-" || text == "e" || text.is_empty() {
            Word::empty()
        } else {
            Word::plain(parse_digits(text, params.n)?)
        };
        word.validate(params)?;
        Ok(word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.digits().iter().any(|&a| a >= 10);
        let n = if wide { 11 } else { 10 };
        f.write_str(&self.to_text(n))
    }
}

pub(crate) fn format_digits(digits: &[Letter], n: u32) -> String {
    if n <= 10 {
        digits.iter().map(|a| char::from_digit(*a, 10).unwrap()).collect()
    } else {
        digits.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
    }
}

pub(crate) fn parse_digits(text: &str, n: u32) -> Result<Vec<Letter>> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let digits: Vec<Letter> = if n <= 10 {
        text.chars()
            .map(|c| {
                c.to_digit(10)
                    .ok_or_else(|| Error::InvalidWord(format!("bad digit {c:?}")))
            })
            .collect::<Result<_>>()?
    } else {
        text.split(',')
            .map(|s| {
                s.trim()
                    .parse()
                    .map_err(|_| Error::InvalidWord(format!("bad digit {s:?}")))
            })
            .collect::<Result<_>>()?
    };
    if let Some(bad) = digits.iter().find(|&&a| a >= n) {
        return Err(Error::InvalidWord(format!("digit {bad} out of range for n = {n}")));
    }
    Ok(digits)
}

/// Prefix relation and lexicographic verdict of two words of the same kind.
pub fn compare_words(a: &Word, b: &Word) -> Result<WordComparison> {
    if a.kind != b.kind {
        return Err(Error::KindMismatch);
    }
    let common = a.longest_common_prefix(b);
    let prefix = match (common == a.len(), common == b.len()) {
        (true, true) => PrefixRelation::Equal,
        (true, false) => PrefixRelation::PrefixOf,
        (false, true) => PrefixRelation::ExtensionOf,
        (false, false) => PrefixRelation::Incomparable,
    };
    Ok(WordComparison {
        prefix,
        lex: a.letters.cmp(&b.letters),
    })
}

/// The plain word `tau` with `eta = nu tau`.
pub fn word_subtract(eta: &Word, nu: &Word) -> Result<Word> {
    if !nu.is_prefix_of(eta) {
        return Err(Error::NotAPrefix {
            eta: eta.clone(),
            nu: nu.clone(),
        });
    }
    Ok(Word::plain(eta.letters[nu.len()..].to_vec()))
}

/// A lex-sorted complete antichain: the cones of its words partition the space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CompleteAntichain {
    params: Params,
    words: Vec<Word>,
}

impl CompleteAntichain {
    /// Sorts `words` and checks incomparability and the Kraft equality.
    pub fn validate(words: Vec<Word>, params: Params) -> Result<Self> {
        let mut words = words;
        let Some(first) = words.first() else {
            return Err(Error::Incomplete("empty antichain".into()));
        };
        let kind = first.kind;
        for w in &words {
            if w.kind != kind {
                return Err(Error::KindMismatch);
            }
            w.validate(&params)?;
        }
        words.sort();
        for pair in words.windows(2) {
            if pair[0].is_prefix_of(&pair[1]) {
                return Err(Error::NotAntichain(pair[0].clone(), pair[1].clone()));
            }
        }
        let (sum, target) = kraft(&words, &params);
        if sum != target {
            return Err(Error::Incomplete(format!(
                "Kraft sum {sum} differs from target {target} (scaled)"
            )));
        }
        Ok(CompleteAntichain { params, words })
    }

    pub fn root(params: Params) -> Self {
        CompleteAntichain {
            words: params.roots(),
            params,
        }
    }

    pub fn uniform(params: Params, depth: usize) -> Self {
        CompleteAntichain {
            words: params.words_at_depth(depth),
            params,
        }
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn into_words(self) -> Vec<Word> {
        self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn max_len(&self) -> usize {
        self.words.iter().map(Word::len).max().unwrap_or(0)
    }

    /// Index of the element that is a prefix of `letters`, if any.
    pub fn locate(&self, letters: &[Letter]) -> Option<usize> {
        locate_prefix(&self.words, letters)
    }

    /// Coarsest common refinement: the maximal words of `self ∪ other`.
    pub fn refine(&self, other: &CompleteAntichain) -> Result<CompleteAntichain> {
        self.params.check_same(&other.params)?;
        let mut all: Vec<Word> = self.words.iter().chain(&other.words).cloned().collect();
        all.sort();
        all.dedup();
        let mut out = Vec::with_capacity(all.len());
        for (i, w) in all.iter().enumerate() {
            // extensions of w sort immediately after it
            let extended = all.get(i + 1).is_some_and(|next| w.is_prefix_of(next));
            if !extended {
                out.push(w.clone());
            }
        }
        Ok(CompleteAntichain {
            params: self.params,
            words: out,
        })
    }

    /// Replaces the word at `index` by its `n` children.
    pub fn expand(&mut self, index: usize) {
        let w = self.words.remove(index);
        let children: Vec<Word> = w.children(self.params.n).collect();
        self.words.splice(index..index, children);
    }
}

/// Kraft sum and its target, both scaled by `n^max_digits`.
fn kraft(words: &[Word], params: &Params) -> (BigUint, BigUint) {
    let max_digits = words.iter().map(|w| w.digits().len()).max().unwrap_or(0);
    let n = BigUint::from(params.n);
    let mut pow = vec![BigUint::one()];
    for i in 1..=max_digits {
        let next = &pow[i - 1] * &n;
        pow.push(next);
    }
    let mut sum = BigUint::zero();
    for w in words {
        sum += &pow[max_digits - w.digits().len()];
    }
    let target = match words.first().map(Word::kind) {
        Some(WordKind::Rooted) => &pow[max_digits] * BigUint::from(params.r),
        _ => pow[max_digits].clone(),
    };
    (sum, target)
}

/// Index of the element of the sorted antichain `words` that is a prefix of `letters`.
pub(crate) fn locate_prefix(words: &[Word], letters: &[Letter]) -> Option<usize> {
    // the prefix, if present, is the greatest element <= letters
    let idx = words.partition_point(|w| w.letters.as_slice() <= letters);
    if idx == 0 {
        return None;
    }
    let candidate = &words[idx - 1];
    candidate.is_prefix_of_letters(letters).then_some(idx - 1)
}

/// Removes duplicates and words having a proper prefix in the set.
pub fn normalize_cones(cones: &[Word]) -> Vec<Word> {
    let mut sorted = cones.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut out: Vec<Word> = Vec::with_capacity(sorted.len());
    for w in sorted {
        if out.last().is_some_and(|p: &Word| p.is_prefix_of(&w)) {
            continue;
        }
        out.push(w);
    }
    out
}

/// Completes a set of pairwise incomparable rooted cones to a complete
/// antichain by adding the coarsest cones covering the complement. Returns
/// the antichain in lex order with a flag marking the given cones.
pub fn complete_with(params: &Params, cones: &[Word]) -> Vec<(Word, bool)> {
    let given = normalize_cones(cones);
    let mut out = Vec::new();
    let mut stack: Vec<Word> = params.roots().into_iter().rev().collect();
    while let Some(w) = stack.pop() {
        let idx = given.partition_point(|g| g < &w);
        if given.get(idx) == Some(&w) {
            out.push((w, true));
        } else if given.get(idx).is_some_and(|g| w.is_prefix_of(g)) {
            let children: Vec<Word> = w.children(params.n).collect();
            stack.extend(children.into_iter().rev());
        } else {
            out.push((w, false));
        }
    }
    out
}

/// A rooted infinite word `stem · period^ω` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EventuallyPeriodicPoint {
    stem: Word,
    period: Vec<Letter>,
}

impl EventuallyPeriodicPoint {
    pub fn new(stem: Word, period: Vec<Letter>) -> Result<Self> {
        if !stem.is_rooted() {
            return Err(Error::InvalidWord("point stem must be rooted".into()));
        }
        if period.is_empty() {
            return Err(Error::InvalidWord("period must be nonempty".into()));
        }
        let mut letters = stem.letters;
        let period = canonical_tail(&mut letters, 1, period);
        Ok(EventuallyPeriodicPoint {
            stem: Word {
                kind: WordKind::Rooted,
                letters,
            },
            period,
        })
    }

    pub fn with_params(stem: Word, period: Vec<Letter>, params: &Params) -> Result<Self> {
        stem.validate(params)?;
        Word::plain(period.clone()).validate(params)?;
        Self::new(stem, period)
    }

    pub fn stem(&self) -> &Word {
        &self.stem
    }

    pub fn period(&self) -> &[Letter] {
        &self.period
    }

    pub fn letter_at(&self, i: usize) -> Letter {
        let s = self.stem.len();
        if i < s {
            self.stem.letters[i]
        } else {
            self.period[(i - s) % self.period.len()]
        }
    }

    /// The rooted prefix of length `len` (including the dot letter).
    pub fn prefix(&self, len: usize) -> Word {
        Word {
            kind: WordKind::Rooted,
            letters: (0..len.max(1)).map(|i| self.letter_at(i)).collect(),
        }
    }

    pub fn in_cone(&self, cone: &Word) -> bool {
        cone.is_rooted() && (0..cone.len()).all(|i| cone.letters[i] == self.letter_at(i))
    }

    /// The plain tail after the first `k` letters.
    pub fn tail_after(&self, k: usize) -> PeriodicTail {
        let s = self.stem.len();
        if k <= s {
            PeriodicTail::new(self.stem.letters[k..].to_vec(), self.period.clone())
        } else {
            let shift = (k - s) % self.period.len();
            let mut period = self.period[shift..].to_vec();
            period.extend_from_slice(&self.period[..shift]);
            PeriodicTail::new(Vec::new(), period)
        }
    }

    /// Builds the point `prefix · tail`.
    pub fn from_parts(prefix: &Word, tail: &PeriodicTail) -> Result<Self> {
        Self::new(prefix.concat(&tail.stem), tail.period.clone())
    }

    pub fn to_text(&self, n: u32) -> String {
        let digits = format_digits(self.stem.digits(), n);
        let sep = if n <= 10 || digits.is_empty() { "" } else { "," };
        format!(
            "d{}:{}{}({})",
            self.stem.letters[0],
            digits,
            sep,
            format_digits(&self.period, n)
        )
    }

    /// Parses `d<i>:<digits>(<period>)`.
    pub fn parse(text: &str, params: &Params) -> Result<Self> {
        let text = text.trim();
        let open = text
            .find('(')
            .ok_or_else(|| Error::InvalidWord(format!("point {text:?} lacks a period")))?;
        let close = text
            .strip_suffix(')')
            .ok_or_else(|| Error::InvalidWord(format!("point {text:?} lacks ')'")))?;
        let stem_text = text[..open].trim_end_matches(',');
        let period_text = &close[open + 1..];
        let stem = Word::parse(stem_text, params)?;
        if !stem.is_rooted() {
            return Err(Error::InvalidWord(format!(
                "point {text:?} must start with a dot letter"
            )));
        }
        let period = parse_digits(period_text, params.n)?;
        Self::new(stem, period)
    }
}

impl fmt::Display for EventuallyPeriodicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.stem.digits().iter().chain(&self.period).any(|&a| a >= 10);
        f.write_str(&self.to_text(if wide { 11 } else { 10 }))
    }
}

/// A plain infinite word `stem · period^ω` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodicTail {
    pub stem: Vec<Letter>,
    pub period: Vec<Letter>,
}

impl PeriodicTail {
    pub fn new(mut stem: Vec<Letter>, period: Vec<Letter>) -> Self {
        assert!(!period.is_empty(), "period must be nonempty");
        let period = canonical_tail(&mut stem, 0, period);
        PeriodicTail { stem, period }
    }

    pub fn letter_at(&self, i: usize) -> Letter {
        if i < self.stem.len() {
            self.stem[i]
        } else {
            self.period[(i - self.stem.len()) % self.period.len()]
        }
    }

    pub fn prefix(&self, len: usize) -> Vec<Letter> {
        (0..len).map(|i| self.letter_at(i)).collect()
    }
}

/// Makes `period` primitive and shortens `stem` (keeping `keep` letters).
fn canonical_tail(stem: &mut Vec<Letter>, keep: usize, period: Vec<Letter>) -> Vec<Letter> {
    let p = period.len();
    let root_len = (1..=p)
        .find(|&d| p.is_multiple_of(d) && (d..p).all(|i| period[i] == period[i - d]))
        .unwrap_or(p);
    let mut period = period[..root_len].to_vec();
    while stem.len() > keep && stem.last() == period.last() {
        stem.pop();
        period.rotate_right(1);
    }
    period
}
