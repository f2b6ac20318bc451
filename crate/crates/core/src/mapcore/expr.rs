use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};

use super::beltrami::{numeric_beltrami, BeltramiSample, Jacobian};
use super::geometry::{Point, Rect};
use super::tent::{TentSlide, DEFAULT_DILATATION_GRID};

/// `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "i8", into = "i8"))]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    #[inline]
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        match s {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl TryFrom<i8> for Sign {
    type Error = &'static str;
    fn try_from(v: i8) -> core::result::Result<Self, Self::Error> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err("sign must be 1 or -1"),
        }
    }
}

/// `z ↦ sign·z + shift`. Conformal.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Similarity {
    pub sign: Sign,
    pub shift: Point,
}

impl Similarity {
    pub const IDENTITY: Similarity = Similarity { sign: Sign::Plus, shift: Point::ZERO };
    pub const NEGATION: Similarity = Similarity { sign: Sign::Minus, shift: Point::ZERO };

    pub fn translation(shift: Point) -> Self {
        Similarity { sign: Sign::Plus, shift }
    }

    #[inline]
    pub fn eval(&self, z: Point) -> Point {
        z * self.sign.value() + self.shift
    }

    #[inline]
    pub fn inverse(&self, w: Point) -> Point {
        (w - self.shift) * self.sign.value()
    }

    #[inline]
    pub fn is_identity(&self) -> bool {
        self.sign == Sign::Plus && self.shift == Point::ZERO
    }
}

/// Region outside which a map is the identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Support {
    Empty,
    Bounded(Rect),
    Plane,
}

impl Support {
    pub fn contains(&self, z: Point) -> bool {
        match self {
            Support::Empty => false,
            Support::Bounded(r) => r.contains(z),
            Support::Plane => true,
        }
    }

    fn union(self, other: Support) -> Support {
        match (self, other) {
            (Support::Empty, s) | (s, Support::Empty) => s,
            (Support::Plane, _) | (_, Support::Plane) => Support::Plane,
            (Support::Bounded(a), Support::Bounded(b)) => Support::Bounded(a.union(&b)),
        }
    }
}

/// Composition tree of plane homeomorphisms.
///
/// `Seq` applies its items left to right. `Disjoint` holds maps with pairwise
/// disjoint open supports; at any point at most one of them acts.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "node", rename_all = "snake_case"))]
pub enum MapExpr {
    Tent(TentSlide),
    #[cfg_attr(feature = "serde", serde(rename = "sim"))]
    Sim(Similarity),
    Seq { items: Vec<MapExpr> },
    Disjoint { items: Vec<MapExpr> },
    Inv { inner: Box<MapExpr> },
}

impl Default for MapExpr {
    fn default() -> Self {
        MapExpr::identity()
    }
}

impl MapExpr {
    /// The empty sequence.
    pub fn identity() -> Self {
        MapExpr::Seq { items: Vec::new() }
    }

    /// Sequence of `items`, dropping structural identities. A single
    /// survivor is returned unwrapped.
    pub fn seq<I: IntoIterator<Item = MapExpr>>(items: I) -> Self {
        let mut items: Vec<MapExpr> = items.into_iter().filter(|e| !e.is_identity()).collect();
        if items.len() == 1 {
            return items.pop().unwrap();
        }
        MapExpr::Seq { items }
    }

    /// Disjoint union, rejecting children whose open supports overlap or are
    /// unbounded. Structural identities are dropped.
    pub fn disjoint<I: IntoIterator<Item = MapExpr>>(items: I) -> Result<Self> {
        let items: Vec<MapExpr> = items.into_iter().filter(|e| !e.is_identity()).collect();
        check_disjoint(&items)?;
        Ok(MapExpr::Disjoint { items })
    }

    pub fn inv(inner: MapExpr) -> Self {
        MapExpr::Inv { inner: Box::new(inner) }
    }

    /// Structural identity test: empty compositions, identity leaves, and
    /// compositions of those.
    pub fn is_identity(&self) -> bool {
        match self {
            MapExpr::Tent(t) => t.is_identity(),
            MapExpr::Sim(s) => s.is_identity(),
            MapExpr::Seq { items } | MapExpr::Disjoint { items } => {
                items.iter().all(MapExpr::is_identity)
            }
            MapExpr::Inv { inner } => inner.is_identity(),
        }
    }

    /// Re-checks every leaf and every disjointness constraint. Needed for
    /// trees that were not built through the checked constructors.
    pub fn validate(&self) -> Result<()> {
        match self {
            MapExpr::Tent(t) => t.validate(),
            MapExpr::Sim(s) => {
                if s.shift.is_finite() {
                    Ok(())
                } else {
                    Err(Error::Malformed("non-finite similarity shift".into()))
                }
            }
            MapExpr::Seq { items } => items.iter().try_for_each(MapExpr::validate),
            MapExpr::Disjoint { items } => {
                items.iter().try_for_each(MapExpr::validate)?;
                check_disjoint(items)
            }
            MapExpr::Inv { inner } => inner.validate(),
        }
    }

    pub fn support(&self) -> Support {
        match self {
            MapExpr::Tent(t) if t.is_identity() => Support::Empty,
            MapExpr::Tent(t) => Support::Bounded(t.rect),
            MapExpr::Sim(s) if s.is_identity() => Support::Empty,
            MapExpr::Sim(_) => Support::Plane,
            MapExpr::Seq { items } | MapExpr::Disjoint { items } => {
                items.iter().fold(Support::Empty, |acc, e| acc.union(e.support()))
            }
            MapExpr::Inv { inner } => inner.support(),
        }
    }

    pub fn eval(&self, z: Point) -> Point {
        match self {
            MapExpr::Tent(t) => t.eval(z),
            MapExpr::Sim(s) => s.eval(z),
            MapExpr::Seq { items } => items.iter().fold(z, |acc, e| e.eval(acc)),
            MapExpr::Disjoint { items } => match acting_child(items, z) {
                Some(e) => e.eval(z),
                None => z,
            },
            MapExpr::Inv { inner } => inner.inverse_eval(z),
        }
    }

    pub fn inverse_eval(&self, w: Point) -> Point {
        match self {
            MapExpr::Tent(t) => t.inverse(w),
            MapExpr::Sim(s) => s.inverse(w),
            MapExpr::Seq { items } => items.iter().rev().fold(w, |acc, e| e.inverse_eval(acc)),
            // each child maps its support onto itself
            MapExpr::Disjoint { items } => match acting_child(items, w) {
                Some(e) => e.inverse_eval(w),
                None => w,
            },
            MapExpr::Inv { inner } => inner.eval(w),
        }
    }

    /// Jacobian by the chain rule through the tree, using each slide's kink
    /// convention.
    pub fn jacobian(&self, z: Point) -> Jacobian {
        match self {
            MapExpr::Tent(t) => t.jacobian(z),
            MapExpr::Sim(s) => {
                let v = s.sign.value();
                Jacobian { ux: v, uy: 0.0, vx: 0.0, vy: v }
            }
            MapExpr::Seq { items } => {
                let mut at = z;
                let mut j = Jacobian::IDENTITY;
                for e in items {
                    j = e.jacobian(at).compose(&j);
                    at = e.eval(at);
                }
                j
            }
            MapExpr::Disjoint { items } => match acting_child(items, z) {
                Some(e) => e.jacobian(z),
                None => Jacobian::IDENTITY,
            },
            MapExpr::Inv { inner } => inner.jacobian(inner.inverse_eval(z)).inverse(),
        }
    }

    /// Upper bound for the maximal dilatation: maxima over disjoint children,
    /// products along sequences, 1 for similarities.
    pub fn dilatation_bound(&self) -> f64 {
        self.dilatation_bound_with_grid(DEFAULT_DILATATION_GRID)
    }

    pub fn dilatation_bound_with_grid(&self, grid: usize) -> f64 {
        let mut cache = BTreeMap::new();
        self.bound_cached(grid, &mut cache)
    }

    fn bound_cached(&self, grid: usize, cache: &mut BTreeMap<[u64; 3], f64>) -> f64 {
        match self {
            MapExpr::Tent(t) => {
                if t.is_identity() {
                    return 1.0;
                }
                // the distortion is invariant under similarity of the frame,
                // so slides with the same normalized shape share a bound
                let a = t.axis_extent();
                let key = [(t.p / a).to_bits(), (t.q / a).to_bits(), (t.cross_extent() / a).to_bits()];
                *cache.entry(key).or_insert_with(|| t.dilatation_with_grid(grid))
            }
            MapExpr::Sim(_) => 1.0,
            MapExpr::Seq { items } => items.iter().map(|e| e.bound_cached(grid, cache)).product(),
            MapExpr::Disjoint { items } => {
                items.iter().map(|e| e.bound_cached(grid, cache)).fold(1.0, f64::max)
            }
            MapExpr::Inv { inner } => inner.bound_cached(grid, cache),
        }
    }

    /// Finite-difference Beltrami coefficient of the composed map.
    pub fn numeric_beltrami(&self, z: Point, h: f64) -> Result<BeltramiSample> {
        numeric_beltrami(|p| self.eval(p), z, h)
    }

    /// Number of leaves in the tree.
    pub fn leaf_count(&self) -> usize {
        match self {
            MapExpr::Tent(_) | MapExpr::Sim(_) => 1,
            MapExpr::Seq { items } | MapExpr::Disjoint { items } => {
                items.iter().map(MapExpr::leaf_count).sum()
            }
            MapExpr::Inv { inner } => inner.leaf_count(),
        }
    }
}

fn acting_child(items: &[MapExpr], z: Point) -> Option<&MapExpr> {
    items.iter().find(|e| e.support().contains(z))
}

fn check_disjoint(items: &[MapExpr]) -> Result<()> {
    let mut rects: Vec<(usize, Rect)> = Vec::with_capacity(items.len());
    for (i, e) in items.iter().enumerate() {
        match e.support() {
            Support::Empty => {}
            Support::Plane => return Err(Error::UnboundedSupport { index: i }),
            Support::Bounded(r) => rects.push((i, r)),
        }
    }
    // sweep in x so abutting blocks stay linear
    rects.sort_by(|a, b| a.1.x0().total_cmp(&b.1.x0()));
    for (k, (i, r)) in rects.iter().enumerate() {
        for (j, s) in rects[k + 1..].iter() {
            if s.x0() >= r.x1() {
                break;
            }
            if r.overlaps(s) {
                let (first, second) = if i < j { (*i, *j) } else { (*j, *i) };
                return Err(Error::OverlappingSupports { first, second });
            }
        }
    }
    Ok(())
}

impl From<TentSlide> for MapExpr {
    fn from(t: TentSlide) -> Self {
        MapExpr::Tent(t)
    }
}

impl From<Similarity> for MapExpr {
    fn from(s: Similarity) -> Self {
        MapExpr::Sim(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use approx::assert_abs_diff_eq;

    fn slide_at(cx: f64) -> TentSlide {
        TentSlide::horizontal(Rect::new(cx, 0.0, 1.0, 1.0).unwrap(), -0.5, 0.5).unwrap()
    }

    #[test]
    fn empty_seq_is_identity() {
        let e = MapExpr::identity();
        let z = Point::new(0.3, -2.0);
        assert_eq!(e.eval(z), z);
        assert_eq!(e.inverse_eval(z), z);
        assert_eq!(e.dilatation_bound(), 1.0);
    }

    #[test]
    fn slide_then_inverse_round_trips() {
        let t = MapExpr::Tent(slide_at(0.0));
        let e = MapExpr::seq([t.clone(), MapExpr::inv(t)]);
        let z = Point::new(0.1, 0.4);
        assert!(e.eval(z).dist(z) < 1e-12);
    }

    #[test]
    fn disjoint_acts_through_one_child() {
        let (a, b) = (slide_at(0.0), slide_at(2.0));
        let e = MapExpr::disjoint([a.into(), b.into()]).unwrap();
        let z = Point::new(2.1, 0.3);
        assert_eq!(e.eval(z), b.eval(z));
        let swapped = MapExpr::disjoint([b.into(), a.into()]).unwrap();
        assert_eq!(swapped.eval(z), e.eval(z));
    }

    #[test]
    fn disjoint_rejects_overlap_and_planes() {
        let err = MapExpr::disjoint([slide_at(0.0).into(), slide_at(1.5).into()]).unwrap_err();
        assert_eq!(err, Error::OverlappingSupports { first: 0, second: 1 });
        let sim = MapExpr::Sim(Similarity::translation(Point::real(1.0)));
        assert!(MapExpr::disjoint([sim]).is_err());
    }

    #[test]
    fn bound_rules() {
        let t = slide_at(0.0);
        let k = t.dilatation();
        let d = MapExpr::disjoint([t.into(), slide_at(2.0).into()]).unwrap();
        assert_eq!(d.dilatation_bound(), k);
        let s = MapExpr::seq([t.into(), t.into()]);
        assert_abs_diff_eq!(s.dilatation_bound(), k * k, epsilon = 1e-12);
        assert_eq!(MapExpr::Sim(Similarity::NEGATION).dilatation_bound(), 1.0);
    }

    #[test]
    fn numeric_beltrami_outside_support_vanishes() {
        let e = MapExpr::seq(vec![slide_at(0.0).into()]);
        let b = e.numeric_beltrami(Point::new(5.0, 5.0), 1e-5).unwrap();
        assert!(b.mu.norm() < 1e-8);
        let id = MapExpr::identity().numeric_beltrami(Point::new(0.2, 0.1), 1e-5).unwrap();
        assert!(id.mu.norm() < 1e-8);
    }
}
