//! Exact arithmetic on admissible-spirality intervals.
//!
//! Spiralities of series-parallel components are integers or semi-integers.
//! Everything here is stored in *doubled* units: the doubled value `2k`
//! stands for spirality `k`, the doubled value `2k+1` for `k + 1/2`. All
//! interval endpoints of one interval share a parity, and the admissible
//! values inside step by one whole unit (two doubled units).

use crate::spqtree::PNodeType;

/// A spirality value in doubled units.
pub type Spirality2 = i32;

/// Parity of a spirality interval: `Even` holds whole integers, `Odd`
/// semi-integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Closed interval of admissible spiralities in doubled units.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpiralityInterval {
    lo: Spirality2,
    hi: Spirality2,
}

impl SpiralityInterval {
    /// Builds an interval, checking `lo <= hi` and parity agreement.
    pub fn new(lo: Spirality2, hi: Spirality2) -> Self {
        assert!(lo <= hi, "interval endpoints out of order: [{lo}, {hi}]");
        assert_eq!((lo - hi) & 1, 0, "interval endpoints disagree on parity");
        SpiralityInterval { lo, hi }
    }

    /// Interval holding a single value.
    pub fn point(v: Spirality2) -> Self {
        SpiralityInterval { lo: v, hi: v }
    }

    /// Convenience constructor from whole (non-doubled) spiralities.
    pub fn whole(lo: i32, hi: i32) -> Self {
        Self::new(lo * 2, hi * 2)
    }

    pub fn lo(&self) -> Spirality2 {
        self.lo
    }

    pub fn hi(&self) -> Spirality2 {
        self.hi
    }

    pub fn parity(&self) -> Parity {
        if self.lo & 1 == 0 { Parity::Even } else { Parity::Odd }
    }

    pub fn contains(&self, v: Spirality2) -> bool {
        self.lo <= v && v <= self.hi && (v - self.lo) & 1 == 0
    }

    /// Widens both ends by `bends` whole units, the effect of placing that
    /// many subdivision vertices on an exposed edge of the component.
    pub fn widen(&self, bends: u32) -> Self {
        let b = bends as i32 * 2;
        SpiralityInterval { lo: self.lo - b, hi: self.hi + b }
    }

    /// Componentwise sum (series composition of two components).
    pub fn sum(&self, other: &Self) -> Self {
        SpiralityInterval { lo: self.lo + other.lo, hi: self.hi + other.hi }
    }

    /// Shifts both ends by a doubled amount.
    pub fn shift(&self, d: Spirality2) -> Self {
        SpiralityInterval { lo: self.lo + d, hi: self.hi + d }
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        if lo <= hi { Some(SpiralityInterval { lo, hi }) } else { None }
    }

    /// The admissible value closest to `target`, ties resolved toward the
    /// smaller value. `target` must share the interval's parity.
    pub fn closest_to(&self, target: Spirality2) -> Spirality2 {
        debug_assert_eq!((target - self.lo) & 1, 0);
        target.clamp(self.lo, self.hi)
    }

    /// How far `v` lies outside the interval, in whole units (0 if inside).
    pub fn overflow(&self, v: Spirality2) -> u32 {
        let d2 = if v > self.hi {
            v - self.hi
        } else if v < self.lo {
            self.lo - v
        } else {
            0
        };
        debug_assert_eq!(d2 & 1, 0, "overflow is not a whole number of bends");
        (d2 / 2) as u32
    }
}

/// Distance between two intervals in doubled units: zero when they
/// intersect, otherwise the smaller endpoint gap.
pub fn interval_distance(a: &SpiralityInterval, b: &SpiralityInterval) -> Spirality2 {
    if a.intersect(b).is_some() {
        0
    } else {
        (a.hi - b.lo).abs().min((b.hi - a.lo).abs())
    }
}

/// Representability interval of a Q*-node of chain length `len`.
pub fn interval_qstar(len: u32) -> SpiralityInterval {
    assert!(len >= 1);
    let m = (len as i32 - 1) * 2;
    SpiralityInterval::new(-m, m)
}

/// Representability interval of an S-node: componentwise sum over children.
pub fn interval_series<'a, I>(children: I) -> SpiralityInterval
where
    I: IntoIterator<Item = &'a SpiralityInterval>,
{
    let mut lo = 0;
    let mut hi = 0;
    let mut n = 0;
    for c in children {
        lo += c.lo;
        hi += c.hi;
        n += 1;
    }
    assert!(n >= 1, "series composition needs children");
    SpiralityInterval::new(lo, hi)
}

/// The three child intervals of a P-node with three children, shifted per
/// the composition relation: left by -2, center unchanged, right by +2.
pub fn p3_shifted(
    il: &SpiralityInterval,
    ic: &SpiralityInterval,
    ir: &SpiralityInterval,
) -> [SpiralityInterval; 3] {
    [il.shift(-4), *ic, ir.shift(4)]
}

/// Representability interval of a P-node with three children, or `None`
/// when the representability condition fails.
pub fn interval_p3(
    il: &SpiralityInterval,
    ic: &SpiralityInterval,
    ir: &SpiralityInterval,
) -> Option<SpiralityInterval> {
    let [sl, sc, sr] = p3_shifted(il, ic, ir);
    sl.intersect(&sc).and_then(|i| i.intersect(&sr))
}

/// Representability interval of a P-node with two children, or `None` when
/// the type's condition fails.
///
/// The condition intersects the difference interval `[m_l - M_r, M_l - m_r]`
/// with the type's window; the interval formulas follow the type as well.
pub fn interval_p2(
    ty: &PNodeType,
    il: &SpiralityInterval,
    ir: &SpiralityInterval,
) -> Option<SpiralityInterval> {
    if !p2_condition(ty, il, ir) {
        return None;
    }
    let (lo, hi) = p2_raw_bounds(ty, il, ir);
    assert!(lo <= hi, "condition held but interval empty");
    Some(SpiralityInterval::new(lo, hi))
}

/// Difference interval `[m_l - M_r, M_l - m_r]` of two child intervals.
pub fn p2_difference(il: &SpiralityInterval, ir: &SpiralityInterval) -> SpiralityInterval {
    SpiralityInterval::new(il.lo - ir.hi, il.hi - ir.lo)
}

/// Whether the representability condition of a two-child P-node holds.
pub fn p2_condition(ty: &PNodeType, il: &SpiralityInterval, ir: &SpiralityInterval) -> bool {
    let diff = p2_difference(il, ir);
    let win = ty.window();
    debug_assert_eq!(
        (diff.lo - win.lo) & 1,
        0,
        "difference parity disagrees with the type window"
    );
    diff.intersect(&win).is_some()
}

/// Raw lower/upper bounds of the type's interval formula, evaluated even
/// when the condition fails (the bend-budget formulas consume the raw pair,
/// which may then be inverted).
pub fn p2_raw_bounds(
    ty: &PNodeType,
    il: &SpiralityInterval,
    ir: &SpiralityInterval,
) -> (Spirality2, Spirality2) {
    let (ml, big_ml) = (il.lo, il.hi);
    let (mr, big_mr) = (ir.lo, ir.hi);
    match *ty {
        PNodeType::Pio2 { gamma, .. } => {
            let g = gamma as i32;
            (
                (ml - 4).max(mr) + g,
                big_ml.min(big_mr + 4) - g,
            )
        }
        PNodeType::Pio3 { gamma, phi_d, .. } => {
            let g = gamma as i32;
            let p = phi_d as i32;
            (
                (ml - 3).max(mr + 2) + (g - p),
                (big_ml - 1).min(big_mr + 4) - (g + p),
            )
        }
        PNodeType::Pin3 { phi_sum, .. } => {
            let p = phi_sum as i32;
            (
                (ml - 2).max(mr + 4) - p,
                (big_ml - 2).min(big_mr + 4) - p,
            )
        }
    }
}
