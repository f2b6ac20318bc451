//! Permutations of a finite integer interval realized by plane maps that are
//! the identity outside a thin rectangle around the interval.
//!
//! A transposition `m ↔ n` is three layers of slides: lift `m` down and `n`
//! up with vertical slides, carry them past each other along horizontal
//! strips, then drop them back on the real axis. A general permutation peels
//! off its top index one transposition at a time. The lane construction
//! moves every displaced integer at once, each in its own horizontal lane,
//! which keeps the composition three layers deep.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::mapcore::{MapExpr, Rect, TentSlide};

/// Permutation `j ↦ values[j − lo]` of `[lo, hi]`, to be realized inside
/// `(lo − ½, hi + ½) × (−delta, delta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockPermutation {
    pub lo: i64,
    pub hi: i64,
    pub values: Vec<i64>,
    pub delta: f64,
}

impl BlockPermutation {
    pub fn new(lo: i64, values: Vec<i64>, delta: f64) -> Result<Self> {
        let hi = lo + values.len() as i64 - 1;
        let p = BlockPermutation { lo, hi, values, delta };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0) {
            return Err(Error::Malformed(alloc::format!("delta {} must be positive", self.delta)));
        }
        if self.values.len() as i64 != self.hi - self.lo + 1 {
            return Err(Error::Malformed("block window and values disagree".into()));
        }
        let mut seen = alloc::vec![false; self.values.len()];
        for &v in &self.values {
            let i = v - self.lo;
            if i < 0 || i as usize >= seen.len() || seen[i as usize] {
                return Err(Error::NotBijective);
            }
            seen[i as usize] = true;
        }
        Ok(())
    }

    /// The rectangle outside of which the realization is the identity.
    pub fn support(&self) -> Result<Rect> {
        Rect::from_bounds(self.lo as f64 - 0.5, self.hi as f64 + 0.5, -self.delta, self.delta)
    }
}

/// Plane map exchanging the integers `m < n` of `[lo, hi]`, fixing every
/// other integer, and equal to the identity outside
/// `(lo − ½, hi + ½) × (−delta, delta)`. `m == n` gives the identity.
pub fn transposition_move(m: i64, n: i64, lo: i64, hi: i64, delta: f64) -> Result<MapExpr> {
    if m == n && lo <= m && m <= hi {
        return Ok(MapExpr::identity());
    }
    if !(lo <= m && m < n && n <= hi) {
        return Err(Error::InvalidTransposition { m, n, lo, hi });
    }
    if !(delta > 0.0) {
        return Err(Error::Malformed(alloc::format!("delta {delta} must be positive")));
    }
    let (mf, nf) = (m as f64, n as f64);
    let half = delta / 2.0;
    let column = |x: f64| Rect::new(x, 0.0, 0.5, delta);

    // m ↦ m − iδ/2, n ↦ n + iδ/2
    let lift = MapExpr::disjoint([
        TentSlide::vertical(column(mf)?, 0.0, -half)?.into(),
        TentSlide::vertical(column(nf)?, 0.0, half)?.into(),
    ])?;

    // lower strip carries m to n, upper strip carries n to m
    let cx = (lo + hi) as f64 / 2.0;
    let hw = (hi - lo + 1) as f64 / 2.0;
    let strip = |cy: f64| Rect::new(cx, cy, hw, delta / 4.0);
    let carry = MapExpr::disjoint([
        TentSlide::horizontal(strip(-half)?, mf - cx, nf - cx)?.into(),
        TentSlide::horizontal(strip(half)?, nf - cx, mf - cx)?.into(),
    ])?;

    let drop = MapExpr::disjoint([
        TentSlide::vertical(column(nf)?, -half, 0.0)?.into(),
        TentSlide::vertical(column(mf)?, half, 0.0)?.into(),
    ])?;

    Ok(MapExpr::Seq { items: alloc::vec![lift, carry, drop] })
}

/// Realizes a block permutation by peeling off the top index: with
/// `m = f(top)`, the transposition `g = (m top)` makes `g⁻¹∘f` fix `top`,
/// and `f = g ∘ (g⁻¹∘f)`. At most `hi − lo` transpositions are used.
pub fn build_block_permutation(p: &BlockPermutation) -> Result<MapExpr> {
    p.validate()?;
    let mut current = p.values.clone();
    let mut moves = Vec::new();
    for top in (p.lo + 1..=p.hi).rev() {
        let m = current[(top - p.lo) as usize];
        if m == top {
            continue;
        }
        moves.push(transposition_move(m, top, p.lo, p.hi, p.delta)?);
        for v in current.iter_mut() {
            if *v == m {
                *v = top;
            } else if *v == top {
                *v = m;
            }
        }
    }
    debug_assert!(current.iter().enumerate().all(|(i, &v)| v == p.lo + i as i64));
    // the last transposition found is applied first
    moves.reverse();
    Ok(MapExpr::Seq { items: moves })
}

/// How a block permutation is turned into slides.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum PermStrategy {
    /// One [`transposition_move`] per displaced top index.
    Transpositions,
    /// Lift, carry and drop every displaced integer in one pass.
    #[default]
    Lanes,
}

pub fn realize_block_permutation(p: &BlockPermutation, strategy: PermStrategy) -> Result<MapExpr> {
    match strategy {
        PermStrategy::Transpositions => build_block_permutation(p),
        PermStrategy::Lanes => lane_permutation(p),
    }
}

/// Realizes a block permutation with three layers. Displaced integers, in
/// ascending order, alternate between lanes below and above the axis; each
/// is lifted into its lane, carried to its target column, and dropped.
///
/// A single transposition gives exactly [`transposition_move`].
pub fn lane_permutation(p: &BlockPermutation) -> Result<MapExpr> {
    p.validate()?;
    let moved: Vec<(i64, i64)> = (p.lo..=p.hi)
        .zip(p.values.iter().copied())
        .filter(|(j, v)| j != v)
        .collect();
    if moved.is_empty() {
        return Ok(MapExpr::identity());
    }
    let delta = p.delta;
    let below = moved.len().div_ceil(2) as f64;
    let above = (moved.len() / 2) as f64;
    let lane = |k: usize| {
        let (i, slots, side) = if k % 2 == 0 { (k / 2, below, -1.0) } else { (k / 2, above, 1.0) };
        (side * (i as f64 + 0.5) * delta / slots, delta / (4.0 * slots))
    };
    let column = |x: i64| Rect::new(x as f64, 0.0, 0.5, delta);
    let cx = (p.lo + p.hi) as f64 / 2.0;
    let hw = (p.hi - p.lo + 1) as f64 / 2.0;

    let mut lift = Vec::with_capacity(moved.len());
    let mut carry = Vec::with_capacity(moved.len());
    let mut drop = Vec::with_capacity(moved.len());
    for (k, &(from, to)) in moved.iter().enumerate() {
        let (y, hh) = lane(k);
        lift.push(TentSlide::vertical(column(from)?, 0.0, y)?.into());
        let strip = Rect::new(cx, y, hw, hh)?;
        carry.push(TentSlide::horizontal(strip, from as f64 - cx, to as f64 - cx)?.into());
        drop.push(TentSlide::vertical(column(to)?, y, 0.0)?.into());
    }
    Ok(MapExpr::Seq {
        items: alloc::vec![
            MapExpr::disjoint(lift)?,
            MapExpr::disjoint(carry)?,
            MapExpr::disjoint(drop)?,
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapcore::Point;
    use alloc::vec;

    fn assert_maps(e: &MapExpr, from: i64, to: i64) {
        let w = e.eval(Point::real(from as f64));
        assert!(w.dist(Point::real(to as f64)) < 1e-9, "{from} -> {w:?}, expected {to}");
    }

    #[test]
    fn equal_indices_give_identity() {
        assert!(transposition_move(2, 2, 1, 3, 1.0).unwrap().is_identity());
        assert!(transposition_move(3, 2, 1, 3, 1.0).is_err());
        assert!(transposition_move(0, 2, 1, 3, 1.0).is_err());
    }

    #[test]
    fn swaps_adjacent_pair() {
        let e = transposition_move(1, 2, 1, 2, 1.0).unwrap();
        assert_maps(&e, 1, 2);
        assert_maps(&e, 2, 1);
        assert_eq!(e.eval(Point::real(0.0)), Point::real(0.0));
        assert_eq!(e.eval(Point::real(3.0)), Point::real(3.0));
        let z = Point::new(1.3, 1.0);
        assert_eq!(e.eval(z), z);
    }

    #[test]
    fn fixes_bystanders_exactly() {
        let e = transposition_move(2, 5, 0, 6, 0.5).unwrap();
        for j in [0, 1, 3, 4, 6] {
            assert_eq!(e.eval(Point::real(j as f64)), Point::real(j as f64));
        }
        assert_maps(&e, 2, 5);
        assert_maps(&e, 5, 2);
    }

    #[test]
    fn single_swap_block_is_one_move() {
        let p = BlockPermutation::new(1, vec![2, 1], 1.0).unwrap();
        let e = build_block_permutation(&p).unwrap();
        match &e {
            MapExpr::Seq { items } => assert_eq!(items.len(), 1),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(e, MapExpr::Seq { items: vec![transposition_move(1, 2, 1, 2, 1.0).unwrap()] });
    }

    #[test]
    fn three_cycle() {
        let p = BlockPermutation::new(1, vec![2, 3, 1], 1.0).unwrap();
        let e = build_block_permutation(&p).unwrap();
        assert_maps(&e, 1, 2);
        assert_maps(&e, 2, 3);
        assert_maps(&e, 3, 1);
    }

    #[test]
    fn identity_block_is_empty() {
        let p = BlockPermutation::new(-2, vec![-2, -1, 0], 2.0).unwrap();
        let e = build_block_permutation(&p).unwrap();
        assert!(e.is_identity());
        assert_eq!(e.dilatation_bound(), 1.0);
    }

    #[test]
    fn lanes_reduce_to_one_transposition() {
        let p = BlockPermutation::new(-1, vec![-1, 3, 1, 2, 0], 1.0).unwrap();
        let swap = BlockPermutation::new(0, vec![0, 3, 2, 1], 0.5).unwrap();
        assert_eq!(lane_permutation(&swap).unwrap(), transposition_move(1, 3, 0, 3, 0.5).unwrap());
        let e = lane_permutation(&p).unwrap();
        for (j, &v) in (p.lo..).zip(&p.values) {
            assert_maps(&e, j, v);
        }
        assert_eq!(e.eval(Point::real(-1.0)), Point::real(-1.0));
    }

    #[test]
    fn strategies_agree_on_integers() {
        let p = BlockPermutation::new(2, vec![5, 7, 2, 6, 3, 4], 0.75).unwrap();
        for s in [PermStrategy::Transpositions, PermStrategy::Lanes] {
            let e = realize_block_permutation(&p, s).unwrap();
            for (j, &v) in (p.lo..).zip(&p.values) {
                assert_maps(&e, j, v);
            }
        }
    }

    #[test]
    fn support_stays_in_block_rectangle() {
        let p = BlockPermutation::new(0, vec![3, 0, 2, 1], 0.5).unwrap();
        let e = build_block_permutation(&p).unwrap();
        match e.support() {
            crate::mapcore::Support::Bounded(r) => {
                let s = p.support().unwrap();
                assert!(r.x0() >= s.x0() && r.x1() <= s.x1());
                assert!(r.y0() >= s.y0() && r.y1() <= s.y1());
            }
            other => panic!("unexpected support {other:?}"),
        }
    }
}
