//! Turning a bijection with the three-point condition into a boundedly
//! splittable one by sorting value intervals, then extending it to the plane.
//!
//! All work happens in absolute coordinates. The pivot is the leftmost window
//! index, so everything left of it is already the identity and only the
//! positive direction needs steps.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::mapcore::{scan_distortion, MapExpr, Point, Rect, Similarity, DEFAULT_FD_STEP};
use crate::permbuild::{realize_block_permutation, BlockPermutation, PermStrategy};
use crate::seqcore::{
    block_image, splits_interval, three_point_lambda, IntBijection, SplitDecomposition,
    ThreePointReport,
};

/// How one step reorders the integer interval `value_interval`.
///
/// The block's own values (`block_image_sorted`) are packed onto `c_range` in
/// ascending order. The remaining values keep their order and go below
/// `c_range` if they were below the pivot, above it otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SortPlan {
    pub value_interval: (i64, i64),
    pub block_image_sorted: Vec<i64>,
    pub complement_sorted: Vec<i64>,
    pub c_range: (i64, i64),
}

impl SortPlan {
    fn new(value_interval: (i64, i64), mut block: Vec<i64>, pivot: i64) -> Self {
        block.sort_unstable();
        let (v0, v1) = value_interval;
        let complement: Vec<i64> =
            (v0..=v1).filter(|x| block.binary_search(x).is_err()).collect();
        let below = complement.iter().filter(|&&d| d < pivot).count() as i64;
        let m0 = v0 + below;
        let c_range = (m0, m0 + block.len() as i64 - 1);
        SortPlan { value_interval, block_image_sorted: block, complement_sorted: complement, c_range }
    }

    /// Target of every value in `value_interval`, in value order.
    pub fn targets(&self) -> Vec<i64> {
        let (v0, v1) = self.value_interval;
        let mut out = alloc::vec![0; (v1 - v0 + 1) as usize];
        for (j, &c) in self.block_image_sorted.iter().enumerate() {
            out[(c - v0) as usize] = self.c_range.0 + j as i64;
        }
        // complement values keep their order; the first few fill the slots
        // below the packed block
        let slots = (v0..self.c_range.0).chain(self.c_range.1 + 1..=v1);
        for (&d, slot) in self.complement_sorted.iter().zip(slots) {
            out[(d - v0) as usize] = slot;
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.targets().iter().zip(self.value_interval.0..).all(|(&t, x)| t == x)
    }
}

/// Bookkeeping for one step. `interval` is the block `Iₘ`; `argmax_idx` and
/// `argmin_idx` locate its extreme values before sorting.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StepTrace {
    pub step_index: usize,
    pub interval: (i64, i64),
    pub argmax_idx: i64,
    pub argmin_idx: i64,
    /// Largest distance the step's extreme value lies from its anchor.
    pub anchor_gap: i64,
    pub claim_bound_ok: bool,
}

#[derive(Debug, Clone)]
pub struct Splitting {
    pub f1: MapExpr,
    pub b: IntBijection,
    pub decomposition: SplitDecomposition,
    pub steps: Vec<StepTrace>,
    pub plans: Vec<SortPlan>,
    pub lambda: f64,
}

/// Horizon large enough that the tail term of the three-point certificate is
/// close to 1.
pub fn auto_horizon(seq: &IntBijection) -> i64 {
    let (_, base) = seq.base();
    let d = base.max_displacement().unwrap_or(0);
    let (lo, hi) = base.window();
    let span = (hi - lo + 1).max(0);
    (10 * d + span).max(40)
}

pub fn certify(seq: &IntBijection) -> Result<ThreePointReport> {
    three_point_lambda(seq, auto_horizon(seq))
}

/// Values of an identity-tail sequence as they are being rewritten.
struct Work {
    lo: i64,
    cur: Vec<i64>,
}

impl Work {
    fn get(&self, n: i64) -> i64 {
        if n < self.lo {
            return n;
        }
        self.cur.get((n - self.lo) as usize).copied().unwrap_or(n)
    }

    fn reach(&mut self, n: i64) {
        while self.lo + (self.cur.len() as i64) <= n {
            let next = self.lo + self.cur.len() as i64;
            self.cur.push(next);
        }
    }

    fn apply(&mut self, plan: &SortPlan) {
        let (v0, v1) = plan.value_interval;
        self.reach(v1);
        let targets = plan.targets();
        for v in self.cur.iter_mut() {
            if (v0..=v1).contains(v) {
                *v = targets[(*v - v0) as usize];
            }
        }
    }

    fn extremes(&self, lo: i64, hi: i64) -> (i64, i64) {
        let idx = lo..=hi;
        let max = idx.clone().max_by_key(|&n| self.get(n)).unwrap();
        let min = idx.min_by_key(|&n| self.get(n)).unwrap();
        (max, min)
    }
}

/// Rewrites an identity-tail bijection with the `lambda`-three-point
/// condition into one whose consecutive splitting blocks have size at most
/// `2λ + 3`, using plane maps supported in `|Im z| < delta`.
pub fn make_splittable(seq: &IntBijection, lambda: f64, delta: f64) -> Result<Splitting> {
    make_splittable_with(seq, lambda, delta, PermStrategy::default())
}

pub fn make_splittable_with(
    seq: &IntBijection,
    lambda: f64,
    delta: f64,
    strategy: PermStrategy,
) -> Result<Splitting> {
    let (lo, values) = match seq {
        IntBijection::IdentityTail { lo, values, .. } => (*lo, values.clone()),
        _ => return Err(Error::Unsupported("splitting needs an identity-tail sequence".into())),
    };
    if !seq.is_bijective() {
        return Err(Error::NotBijective);
    }
    let certified = certify(seq)?.lambda_certified;
    if certified > lambda {
        return Err(Error::LambdaTooSmall { certified, lambda });
    }
    let hi = lo + values.len() as i64 - 1;
    let lp = lambda + 1.0;
    let size_cap = 2.0 * lp + 1.0;
    let mut w = Work { lo, cur: values };
    let mut steps = Vec::new();
    let mut plans = Vec::new();
    let mut cuts = alloc::vec![lo - 1];

    if hi >= lo {
        // step 0 around the pivot value
        let v0 = w.get(lo);
        let k1 = (lo..=hi).rev().find(|&n| w.get(n) <= v0).unwrap();
        let (l0, r0) = w.extremes(lo, k1);
        let (top, bottom) = (w.get(l0), w.get(r0));
        let plan = SortPlan::new((bottom, top), (lo..=k1).map(|n| w.get(n)).collect(), v0);
        let gap = (top - v0).max(v0 - bottom);
        let size = k1 - lo + 1;
        steps.push(StepTrace {
            step_index: 0,
            interval: (lo, k1),
            argmax_idx: l0,
            argmin_idx: r0,
            anchor_gap: gap,
            claim_bound_ok: gap as f64 <= lp && size as f64 <= size_cap,
        });
        let (mut k, mut t, mut m) = (k1, top, plan.c_range.1);
        w.apply(&plan);
        plans.push(plan);
        cuts.push(k);

        while k < hi || m < t {
            let reach = hi.max(t + 1);
            let next = (k + 1..=reach)
                .rev()
                .find(|&n| (m + 1..=t + 1).contains(&w.get(n)))
                .ok_or_else(|| Error::Internal(format!("no index takes value {}", t + 1)))?;
            let (l, r) = w.extremes(k + 1, next);
            let new_top = w.get(l);
            let block: Vec<i64> =
                (k + 1..=next).map(|n| w.get(n)).filter(|&v| v > t).collect();
            let plan = SortPlan::new((t + 1, new_top), block, t + 1);
            let gap = new_top - (t + 1);
            let size = next - k;
            steps.push(StepTrace {
                step_index: steps.len(),
                interval: (k + 1, next),
                argmax_idx: l,
                argmin_idx: r,
                anchor_gap: gap,
                claim_bound_ok: gap as f64 <= lp && size as f64 <= size_cap,
            });
            m = plan.c_range.1;
            k = next;
            t = new_top;
            w.apply(&plan);
            plans.push(plan);
            cuts.push(k);
        }
    }

    if let Some(bad) = steps.iter().find(|s| !s.claim_bound_ok) {
        return Err(Error::Internal(format!(
            "step {} on [{}, {}] breaks the claimed bounds (gap {}, λ {lambda})",
            bad.step_index, bad.interval.0, bad.interval.1, bad.anchor_gap
        )));
    }

    let k_end = *cuts.last().unwrap();
    let b_values: Vec<i64> = (lo..=k_end).map(|n| w.get(n)).collect();
    let b = IntBijection::identity_tail(lo, b_values)?;
    if !b.is_bijective() || (k_end + 1..k_end + 1 + w.cur.len() as i64).any(|n| w.get(n) != n) {
        return Err(Error::Internal("rewritten sequence is not an identity-tail bijection".into()));
    }
    let decomposition = SplitDecomposition::from_cuts(cuts);
    for (p, q) in decomposition.blocks() {
        if !splits_interval(&b, p, q) {
            return Err(Error::Internal(format!("block [{p}, {q}] does not split")));
        }
    }

    let mut layers = Vec::new();
    for plan in &plans {
        if plan.is_identity() {
            continue;
        }
        let perm = BlockPermutation::new(plan.value_interval.0, plan.targets(), delta)?;
        layers.push(realize_block_permutation(&perm, strategy)?);
    }
    let f1 = if layers.is_empty() { MapExpr::identity() } else { MapExpr::disjoint(layers)? };
    Ok(Splitting { f1, b, decomposition, steps, plans, lambda })
}

/// A plane map sending `n ↦ bₙ` for every `n`, built block by block from a
/// splitting decomposition.
pub fn assemble(b: &IntBijection, dec: &SplitDecomposition, delta: f64) -> Result<MapExpr> {
    assemble_with(b, dec, delta, PermStrategy::default())
}

pub fn assemble_with(
    b: &IntBijection,
    dec: &SplitDecomposition,
    delta: f64,
    strategy: PermStrategy,
) -> Result<MapExpr> {
    let mut shift = None;
    let mut layers = Vec::new();
    for (p, q) in dec.blocks() {
        let image = block_image(b, p, q).filter(|_| splits_interval(b, p, q));
        let (ip, _) = image.ok_or(Error::DecompositionMismatch { lo: p, hi: q })?;
        let t = ip - p;
        if *shift.get_or_insert(t) != t {
            return Err(Error::DecompositionMismatch { lo: p, hi: q });
        }
        if p == q {
            continue;
        }
        let values = (p..=q).map(|n| b.value(n) - t).collect();
        let perm = BlockPermutation::new(p, values, delta)?;
        layers.push(realize_block_permutation(&perm, strategy)?);
    }
    let t = shift.unwrap_or(0);
    if matches!(b, IntBijection::IdentityTail { .. }) && t != 0 {
        return Err(Error::DecompositionMismatch { lo: dec.coverage.0, hi: dec.coverage.1 });
    }
    let blocks = if layers.is_empty() { MapExpr::identity() } else { MapExpr::disjoint(layers)? };
    Ok(MapExpr::seq([
        blocks,
        Similarity::translation(Point::real(t as f64)).into(),
    ]))
}

/// Plane map `F` with `F(n) = aₙ` for every integer `n`. For same-direction
/// inputs it is the identity on `|Im z| ≥ delta`; mirrored inputs are
/// followed by `z ↦ −z`.
pub fn extend_automorphism(seq: &IntBijection, delta: f64) -> Result<MapExpr> {
    extend_automorphism_with(seq, delta, PermStrategy::default())
}

pub fn extend_automorphism_with(
    seq: &IntBijection,
    delta: f64,
    strategy: PermStrategy,
) -> Result<MapExpr> {
    extend_with_lambda(seq, None, delta, strategy)
}

/// As [`extend_automorphism_with`], running the splitter with `lambda`
/// instead of the certified constant. `lambda` must not be below it.
pub fn extend_with_lambda(
    seq: &IntBijection,
    lambda: Option<f64>,
    delta: f64,
    strategy: PermStrategy,
) -> Result<MapExpr> {
    if !seq.is_bijective() {
        return Err(Error::NotBijective);
    }
    let (mirrored, base) = seq.base();
    if !matches!(base, IntBijection::IdentityTail { .. }) {
        return Err(Error::Unsupported("only identity-tail sequences can be extended".into()));
    }
    let lambda = match lambda {
        Some(l) => l,
        None => certify(base)?.lambda_certified,
    };
    let s = make_splittable_with(base, lambda, delta, strategy)?;
    let f2 = assemble_with(&s.b, &s.decomposition, delta, strategy)?;
    let g = MapExpr::seq([f2, MapExpr::inv(s.f1)]);
    Ok(if mirrored { MapExpr::seq([g, Similarity::NEGATION.into()]) } else { g })
}

/// Measurements taken by [`verify_extension`].
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExtensionReport {
    pub integer_residual: f64,
    pub integer_witness: i64,
    /// Largest deviation from `z` (or `−z` when mirrored) at sampled points
    /// with `|Im z| ≥ delta`.
    pub outside_residual: f64,
    pub round_trip: f64,
    /// Grid points where the Jacobian determinant is not positive.
    pub folded: usize,
    pub min_jacobian: f64,
    pub dilatation_bound: f64,
    pub sampled_k: f64,
    pub pass: bool,
}

/// Checks an extension against its sequence on `[−window, window]` and on a
/// 40×40 grid covering the strip.
pub fn verify_extension(
    expr: &MapExpr,
    seq: &IntBijection,
    window: i64,
    delta: f64,
    tol: f64,
) -> ExtensionReport {
    let (integer_residual, integer_witness) = (-window..=window)
        .map(|n| (expr.eval(Point::real(n as f64)).dist(Point::real(seq.value(n) as f64)), n))
        .fold((0.0, -window), |acc, x| if x.0 > acc.0 { x } else { acc });

    let (mirrored, _) = seq.base();
    let (lo, hi) = seq.window();
    let (x0, x1) = ((lo.min(-window) - 2) as f64, (hi.max(window) + 2) as f64);
    let mut outside_residual: f64 = 0.0;
    for i in 0..100 {
        let x = x0 + (x1 - x0) * (i as f64 + 0.5) / 100.0;
        let y = if i % 2 == 0 { delta } else { -delta } * (1.0 + (i % 7) as f64 * 0.25);
        let z = Point::new(x, y);
        let expect = if mirrored { -z } else { z };
        outside_residual = outside_residual.max(expr.eval(z).dist(expect));
    }

    let (sx0, sx1) = ((lo.min(0) - 1) as f64, (hi.max(0) + 1) as f64);
    let region = Rect::from_bounds(sx0, sx1, -delta, delta).expect("nonempty strip");
    let n = 40;
    let mut round_trip: f64 = 0.0;
    let mut folded = 0;
    let mut min_jacobian = f64::INFINITY;
    for i in 0..n {
        for j in 0..n {
            // off-center samples stay clear of integer and half-integer kinks
            let z = Point::new(
                sx0 + (sx1 - sx0) * (i as f64 + 0.37) / n as f64,
                -delta + 2.0 * delta * (j as f64 + 0.41) / n as f64,
            );
            round_trip = round_trip.max(expr.inverse_eval(expr.eval(z)).dist(z));
            let det = expr.jacobian(z).det();
            min_jacobian = min_jacobian.min(det);
            if !(det > 0.0) {
                folded += 1;
            }
        }
    }
    let sampled_k = scan_distortion(|z| expr.eval(z), region, n, DEFAULT_FD_STEP).max_k;
    let dilatation_bound = expr.dilatation_bound();
    let pass = integer_residual < tol
        && outside_residual == 0.0
        && round_trip < tol
        && folded == 0
        && dilatation_bound >= sampled_k - 1e-6;
    ExtensionReport {
        integer_residual,
        integer_witness,
        outside_residual,
        round_trip,
        folded,
        min_jacobian,
        dilatation_bound,
        sampled_k,
        pass,
    }
}
