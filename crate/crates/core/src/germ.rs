//! Germ invariants of orientation-preserving circle maps at fixed
//! eventually periodic points.
//!
//! At an n-adic point with expansions `τ (n-1)^ω` and `τ' 0^ω` the germ is
//! the core together with the length offsets `d` (left side) and `e`
//! (right side); at a rational point `τ w^ω` it is the core and one offset.
//! Offsets are output length minus input length, in letters.

use std::fmt;

use sha2::{Digest, Sha256};

use crate::anchored::AnchoredHomeo;
use crate::artifact::print_mealy;
use crate::circle::{self, Orientation};
use crate::error::{Error, Result};
use crate::mealy::SynchronousTransducer;
use crate::words::{EventuallyPeriodicPoint, Letter};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Germ {
    NAdic {
        core: SynchronousTransducer,
        d: i64,
        e: i64,
    },
    Rational {
        core: SynchronousTransducer,
        d: i64,
    },
}

impl Germ {
    pub fn core(&self) -> &SynchronousTransducer {
        match self {
            Germ::NAdic { core, .. } | Germ::Rational { core, .. } => core,
        }
    }

    /// The neutral n-adic germ over `X_n`.
    pub fn trivial_nadic(n: u32, d: i64, e: i64) -> Germ {
        Germ::NAdic {
            core: SynchronousTransducer::identity(n),
            d,
            e,
        }
    }

    pub fn trivial_rational(n: u32, d: i64) -> Germ {
        Germ::Rational {
            core: SynchronousTransducer::identity(n),
            d,
        }
    }
}

/// `trivial` for the one-state identity, otherwise a digest of the
/// canonical machine text.
pub fn core_name(core: &SynchronousTransducer) -> String {
    if core.is_trivial() {
        return "trivial".to_string();
    }
    let digest = Sha256::digest(print_mealy(core).as_bytes());
    let hex: String = digest.iter().take(8).map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

impl fmt::Display for Germ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Germ::NAdic { core, d, e } => write!(f, "NADIC core={} d={d} e={e}", core_name(core)),
            Germ::Rational { core, d } => write!(f, "RATIONAL core={} d={d}", core_name(core)),
        }
    }
}

fn germ_core(h: &AnchoredHomeo) -> SynchronousTransducer {
    h.canonical().core().iso_canonical()
}

/// Offset of `h` on the cone given by the first `len` letters of `x`.
fn offset(h: &AnchoredHomeo, x: &EventuallyPeriodicPoint, len: usize) -> Option<i64> {
    let (out, _) = h.local_at(&x.prefix(len))?;
    Some(out.len() as i64 - len as i64)
}

/// Offset read at `depth` letters past the stem and again one letter later.
fn stable_offset(h: &AnchoredHomeo, x: &EventuallyPeriodicPoint, depth: usize) -> Result<i64> {
    let len = x.stem().len() + depth;
    match (offset(h, x, len), offset(h, x, len + 1)) {
        (Some(a), Some(b)) if a == b => Ok(a),
        _ => Err(Error::DepthTooSmall(depth)),
    }
}

/// The certified depth past which offsets no longer change.
pub fn certified_depth(h: &AnchoredHomeo) -> usize {
    h.max_cell_len() + h.sync_level()
}

pub fn germ_at(h: &AnchoredHomeo, x: &EventuallyPeriodicPoint) -> Result<Germ> {
    germ_at_depth(h, x, None)
}

/// `germ_at` with an explicit probing depth in place of the certified one.
pub fn germ_at_depth(h: &AnchoredHomeo, x: &EventuallyPeriodicPoint, depth: Option<usize>) -> Result<Germ> {
    let params = h.params();
    if circle::orientation_of(h)? != Orientation::Preserving {
        return Err(Error::NotOrientationPreserving);
    }
    let image = h.evaluate_point(x);
    if circle::point_value(&image, &params) != circle::point_value(x, &params) {
        return Err(Error::DoesNotFixPoint);
    }
    let h = h.canonical();
    let depth = depth.unwrap_or_else(|| certified_depth(&h));
    let core = germ_core(&h);
    match circle::nadic_expansions(x, &params) {
        Ok((left, right)) => Ok(Germ::NAdic {
            core,
            d: stable_offset(&h, &left, depth)?,
            e: stable_offset(&h, &right, depth)?,
        }),
        Err(_) => Ok(Germ::Rational {
            core,
            d: stable_offset(&h, x, depth)?,
        }),
    }
}

/// Core of the product of two cores, minimized, in isomorphism-canonical form.
pub fn core_product(a: &SynchronousTransducer, b: &SynchronousTransducer) -> Result<SynchronousTransducer> {
    Ok(a.product_raw(b)?.core_extract()?.minimize().0.iso_canonical())
}

/// Germ of `g1` then `g2`.
pub fn germ_compose(g1: &Germ, g2: &Germ) -> Result<Germ> {
    match (g1, g2) {
        (Germ::NAdic { core: a, d: d1, e: e1 }, Germ::NAdic { core: b, d: d2, e: e2 }) => Ok(Germ::NAdic {
            core: core_product(a, b)?,
            d: d1 + d2,
            e: e1 + e2,
        }),
        (Germ::Rational { core: a, d: d1 }, Germ::Rational { core: b, d: d2 }) => Ok(Germ::Rational {
            core: core_product(a, b)?,
            d: d1 + d2,
        }),
        _ => Err(Error::VariantMismatch),
    }
}

/// Whether the core copies `w^m` on the cycle `w^ω` settles into, `m`
/// being the cycle length.
pub fn core_fixes_tail(t: &SynchronousTransducer, w: &[Letter]) -> bool {
    let tail = t.tail_image(0, w);
    let power: Vec<Letter> = w.iter().copied().cycle().take(w.len() * tail.cycle_len).collect();
    t.run(tail.cycle_state, &power).0 == power
}
