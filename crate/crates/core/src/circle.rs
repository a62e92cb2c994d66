//! The circle `S_r = [0, r)` as a quotient of `C_{n,r}`: exact values of
//! eventually periodic points, the gluing `ν a 0^ω ≃ ν (a-1) (n-1)^ω`, and
//! the finite check deciding whether an anchored element respects it.

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

use crate::anchored::AnchoredHomeo;
use crate::error::{Error, Result};
use crate::words::{CompleteAntichain, EventuallyPeriodicPoint, Letter, Params, PeriodicTail, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Preserving,
    Reversing,
}

/// The `≃`-partner of an n-adic point; `None` for points with one expansion.
pub fn partner_point(p: &EventuallyPeriodicPoint, params: &Params) -> Option<EventuallyPeriodicPoint> {
    let top = params.n - 1;
    let period = p.period();
    if period.len() != 1 || (period[0] != 0 && period[0] != top) {
        return None;
    }
    let stem = p.stem();
    let dot = stem.dot().expect("rooted stem");
    let raising = period[0] == top;
    let (new_stem, new_period) = match (stem.last_digit(), raising) {
        // ν a 0^ω ↦ ν (a-1) (n-1)^ω
        (Some(a), false) => (stem.parent().unwrap().child(a - 1), top),
        (Some(a), true) => (stem.parent().unwrap().child(a + 1), 0),
        // dot-letter boundaries, wrapping d0 0^ω to d(r-1) (n-1)^ω
        (None, false) => (Word::root((dot + params.r - 1) % params.r), top),
        (None, true) => (Word::root((dot + 1) % params.r), 0),
    };
    Some(EventuallyPeriodicPoint::new(new_stem, vec![new_period]).expect("valid partner"))
}

/// Left endpoint of the interval of `U_w`.
pub fn word_value(w: &Word, params: &Params) -> BigRational {
    let n = BigInt::from(params.n);
    let mut num = BigInt::from(w.dot().unwrap_or(0));
    let mut den = BigInt::one();
    for &a in w.digits() {
        num = num * &n + BigInt::from(a);
        den *= &n;
    }
    BigRational::new(num, den)
}

/// Exact value in `[0, r)`; `≃`-partners get equal values.
pub fn point_value(p: &EventuallyPeriodicPoint, params: &Params) -> BigRational {
    let n = BigInt::from(params.n);
    let stem_value = word_value(p.stem(), params);
    let scale = n.pow(p.stem().digits().len() as u32);
    let mut period_num = BigInt::zero();
    for &a in p.period() {
        period_num = period_num * &n + BigInt::from(a);
    }
    let period_den = n.pow(p.period().len() as u32) - BigInt::one();
    let value = stem_value + BigRational::new(period_num, period_den * scale);
    let r = BigRational::from_integer(BigInt::from(params.r));
    if value >= r {
        value - r
    } else {
        value
    }
}

/// `(m, c)` with `x = m / n^c` and `c` minimal; rejects values outside `[0, r)`.
pub fn nadic_parts(x: &BigRational, params: &Params) -> Result<(BigInt, usize)> {
    check_range(x, params)?;
    let n = BigInt::from(params.n);
    let mut den = x.denom().clone();
    let mut c = 0;
    while !den.is_one() {
        let g = den.gcd(&n);
        if g.is_one() {
            return Err(Error::NotNAdic(x.to_string()));
        }
        den /= g;
        c += 1;
    }
    // den divides n^c; recover the numerator over n^c
    let scaled = x * BigRational::from_integer(n.pow(c as u32));
    debug_assert!(scaled.is_integer());
    Ok((scaled.to_integer(), c))
}

fn check_range(x: &BigRational, params: &Params) -> Result<()> {
    if x.is_negative() || x >= &BigRational::from_integer(BigInt::from(params.r)) {
        return Err(Error::NotNAdic(format!("{x} lies outside [0, {})", params.r)));
    }
    Ok(())
}

/// The expansion of a rational in `[0, r)`; n-adic values get the `0^ω` one.
pub fn point_from_value(x: &BigRational, params: &Params) -> Result<EventuallyPeriodicPoint> {
    check_range(x, params)?;
    let n = BigInt::from(params.n);
    let dot = x.floor().to_integer();
    let frac = x - BigRational::from_integer(dot.clone());
    let den = frac.denom().clone();
    let mut rem = frac.numer().clone();
    let mut digits: Vec<Letter> = Vec::new();
    let mut seen = std::collections::HashMap::new();
    loop {
        if let Some(&start) = seen.get(&rem) {
            let period = digits[start..].to_vec();
            digits.truncate(start);
            let stem = Word::rooted(dot.to_u32().expect("dot fits"), &digits);
            return EventuallyPeriodicPoint::new(stem, period);
        }
        seen.insert(rem.clone(), digits.len());
        let scaled = &rem * &n;
        let (digit, next) = scaled.div_rem(&den);
        digits.push(digit.to_u32().expect("digit fits"));
        rem = next;
    }
}

/// Parses a point given as `d<i>:<digits>(<period>)` or as a fraction `p/q`.
pub fn parse_point(text: &str, params: &Params) -> Result<EventuallyPeriodicPoint> {
    let text = text.trim();
    if text.starts_with('d') {
        return EventuallyPeriodicPoint::parse(text, params);
    }
    let value: BigRational = text
        .parse()
        .map_err(|_| Error::InvalidWord(format!("cannot read point {text:?}")))?;
    point_from_value(&value, params)
}

/// `(left, right)` expansions of an n-adic point: `τ (n-1)^ω` and `τ' 0^ω`.
pub fn nadic_expansions(
    x: &EventuallyPeriodicPoint,
    params: &Params,
) -> Result<(EventuallyPeriodicPoint, EventuallyPeriodicPoint)> {
    let partner = partner_point(x, params).ok_or_else(|| Error::NotNAdic(x.to_text(params.n)))?;
    if x.period() == [0] {
        Ok((partner, x.clone()))
    } else {
        Ok((x.clone(), partner))
    }
}

/// True when the distinct values, read cyclically, increase exactly once around.
pub fn cyclically_increasing<T: Ord>(values: &[T]) -> bool {
    let k = values.len();
    if k <= 2 {
        return k < 2 || values[0] != values[1];
    }
    let descents = (0..k).filter(|&i| values[i] >= values[(i + 1) % k]).count();
    descents == 1
}

fn cyclic_order(a: &BigRational, b: &BigRational, c: &BigRational) -> Option<Orientation> {
    if a == b || b == c || a == c {
        return None;
    }
    if (a < b && b < c) || (b < c && c < a) || (c < a && a < b) {
        Some(Orientation::Preserving)
    } else {
        Some(Orientation::Reversing)
    }
}

/// Plain tails `μ b 0^ω` and `μ (b-1) (n-1)^ω`, in either order.
pub fn tails_are_partners(x: &PeriodicTail, y: &PeriodicTail, n: u32) -> bool {
    let top = n - 1;
    let (hi, lo) = if x.period == [0] { (x, y) } else { (y, x) };
    if hi.period != [0] || lo.period != [top] {
        return false;
    }
    let Some((&b, mu)) = hi.stem.split_last() else {
        return false;
    };
    b >= 1 && lo.stem.len() == hi.stem.len() && lo.stem[..mu.len()] == *mu && lo.stem[mu.len()] == b - 1
}

/// One configuration at which the gluing is not respected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimeqFailure {
    /// Adjacent cell boundary points whose images are not partners.
    Boundary {
        inverse: bool,
        points: (EventuallyPeriodicPoint, EventuallyPeriodicPoint),
        images: (EventuallyPeriodicPoint, EventuallyPeriodicPoint),
    },
    /// Tails `a 0^ω` and `(a-1)(n-1)^ω` read from a core state.
    CoreTail {
        inverse: bool,
        state: usize,
        digit: Letter,
        images: (PeriodicTail, PeriodicTail),
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimeqReport {
    pub failures: Vec<SimeqFailure>,
}

impl SimeqReport {
    pub fn compatible(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Decides whether `h` and `h⁻¹` map every `≃`-pair to a `≃`-pair.
///
/// Pairs split across two cells are exactly the adjacent cell boundaries;
/// pairs inside a cell reduce to the tails `a 0^ω`, `(a-1)(n-1)^ω` read from
/// some core state, and every core state is reachable inside every cell.
pub fn simeq_compatible(h: &AnchoredHomeo) -> Result<SimeqReport> {
    let inv = h.inverse()?;
    let mut failures = boundary_failures(h, false);
    failures.extend(boundary_failures(&inv, true));
    Ok(SimeqReport { failures })
}

fn boundary_failures(h: &AnchoredHomeo, inverse: bool) -> Vec<SimeqFailure> {
    let h = h.canonical();
    let params = h.params();
    let top = params.n - 1;
    let cells = h.cells();
    let mut failures = Vec::new();
    for i in 0..cells.len() {
        let left = EventuallyPeriodicPoint::new(cells[i].input.clone(), vec![top]).expect("point");
        let right = EventuallyPeriodicPoint::new(cells[(i + 1) % cells.len()].input.clone(), vec![0]).expect("point");
        let (li, ri) = (h.evaluate_point(&left), h.evaluate_point(&right));
        if partner_point(&li, &params).as_ref() != Some(&ri) {
            failures.push(SimeqFailure::Boundary {
                inverse,
                points: (left, right),
                images: (li, ri),
            });
        }
    }
    let core = h.core();
    for q in 0..core.num_states() {
        for a in 1..params.n {
            let read = |first: Letter, tail: Letter| {
                let (out, p) = core.run(q, &[first]);
                let image = core.tail_image(p, &[tail]).image;
                let mut stem = out;
                stem.extend_from_slice(&image.stem);
                PeriodicTail::new(stem, image.period)
            };
            let hi = read(a, 0);
            let lo = read(a - 1, top);
            if !tails_are_partners(&hi, &lo, params.n) {
                failures.push(SimeqFailure::CoreTail {
                    inverse,
                    state: q,
                    digit: a,
                    images: (hi, lo),
                });
            }
        }
    }
    failures
}

/// Whether a circle map preserves or reverses the cyclic order, read off
/// the images of the left endpoints of three consecutive cones.
pub fn orientation_of(h: &AnchoredHomeo) -> Result<Orientation> {
    if !simeq_compatible(h)?.compatible() {
        return Err(Error::NotCircleMap);
    }
    let params = h.params();
    let mut depth = 0;
    while (params.r as usize) * (params.n as usize).pow(depth) < 3 {
        depth += 1;
    }
    let cells = CompleteAntichain::validate(h.cells().iter().map(|c| c.input.clone()).collect(), params)?;
    let grid = cells.refine(&CompleteAntichain::uniform(params, depth as usize))?;
    let values: Vec<BigRational> = grid.words()[..3]
        .iter()
        .map(|w| {
            let x = EventuallyPeriodicPoint::new(w.clone(), vec![0]).expect("point");
            point_value(&h.evaluate_point(&x), &params)
        })
        .collect();
    cyclic_order(&values[0], &values[1], &values[2]).ok_or(Error::NotCircleMap)
}

/// Independent check that the images of all cell boundary points, taken at
/// `extra` digits below the cells, appear in one consistent cyclic order.
pub fn circular_order_consistent(h: &AnchoredHomeo, extra: usize) -> Result<bool> {
    let params = h.params();
    let orientation = orientation_of(h)?;
    let mut words = Vec::new();
    for c in h.cells() {
        words.extend(c.input.extensions(params.n, extra));
    }
    let values: Vec<BigRational> = words
        .iter()
        .map(|w| {
            let x = EventuallyPeriodicPoint::new(w.clone(), vec![0]).expect("point");
            point_value(&h.evaluate_point(&x), &params)
        })
        .collect();
    let ordered = match orientation {
        Orientation::Preserving => values,
        Orientation::Reversing => values.into_iter().rev().collect(),
    };
    Ok(cyclically_increasing(&ordered))
}

/// Independent check that n-adic tails stay n-adic: every core state maps
/// `0^ω` and `(n-1)^ω` to tails ending in `0^ω` or `(n-1)^ω`.
pub fn preserves_nadic_tails(h: &AnchoredHomeo) -> bool {
    let top = h.params().n - 1;
    let core = h.core();
    (0..core.num_states()).all(|q| {
        [0, top].iter().all(|&a| {
            let image = core.tail_image(q, &[a]).image;
            image.period == [0] || image.period == [top]
        })
    })
}
