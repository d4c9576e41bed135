//! Exhaustive search over t-spread strongly stable ideals.
//!
//! The degree-`ell` part of such an ideal, restricted to t-spread
//! monomials, is a down-set `D_ell` of `M_{n,ell,t}` under componentwise
//! order, and `Shad_t(D_ell)` is contained in `D_{ell+1}`. Ideals of initial
//! degree `ell1` are in bijection with chains `D_{ell1} != {}, ..., D_L`,
//! `L = floor((n-1)/t) + 1`, satisfying that containment. The minimal
//! generators are `D_ell \ Shad_t(D_{ell-1})`.
//!
//! Down-sets are built by deciding each monomial in slex-descending order:
//! it may be added only when all its unit-decrement predecessors are in.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::betti::{corners_from_table, corners_via_characterization_unchecked, graded_betti_unchecked};
use crate::construct::{build_omegas, construct_extremal_ideal, max_corners};
use crate::error::{Error, Result};
use crate::ideal::{borel_closure_degree, SpreadIdeal};
use crate::monomial::{enumerate, spread_count, Context, Monomial, MonomialSet};

/// Limits on an exhaustive search; `None` means unlimited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_n: Option<u32>,
    /// Cap on the candidate pool `sum over ell of |M_{n,ell,t}|`.
    pub max_total_gens: Option<u128>,
    pub max_ideals: Option<u64>,
    pub timeout: Option<Duration>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        Self { max_n: None, max_total_gens: None, max_ideals: None, timeout: None }
    }

    pub fn with_timeout(timeout: Duration) -> Self {
        Self { timeout: Some(timeout), ..Self::unlimited() }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self::unlimited()
    }
}

struct Meter<'a> {
    budget: &'a SearchBudget,
    start: Instant,
    count: u64,
    exceeded: Option<String>,
}

impl<'a> Meter<'a> {
    fn new(budget: &'a SearchBudget) -> Self {
        Self { budget, start: Instant::now(), count: 0, exceeded: None }
    }

    /// Registers one more emitted object; false once any limit is hit.
    fn tick(&mut self) -> bool {
        if self.exceeded.is_some() {
            return false;
        }
        if let Some(cap) = self.budget.max_ideals {
            if self.count >= cap {
                self.exceeded = Some(format!("more than {cap} objects"));
                return false;
            }
        }
        if let Some(limit) = self.budget.timeout {
            if self.count.is_multiple_of(256) && self.start.elapsed() > limit {
                self.exceeded = Some(format!("timeout after {:.1}s", limit.as_secs_f64()));
                return false;
            }
        }
        self.count += 1;
        true
    }
}

fn check_size(ctx: &Context, budget: &SearchBudget, degrees: impl Iterator<Item = usize>) -> Result<()> {
    if let Some(max_n) = budget.max_n {
        if ctx.n() > max_n {
            return Err(Error::BudgetExceeded(format!("n = {} exceeds {max_n}", ctx.n())));
        }
    }
    if let Some(cap) = budget.max_total_gens {
        let pool: u128 = degrees.map(|d| spread_count(ctx, d)).sum();
        if pool > cap {
            return Err(Error::BudgetExceeded(format!("{pool} candidate generators exceed {cap}")));
        }
    }
    Ok(())
}

/// `M_{n,d,t}` with, for every member, the positions of its unit-decrement
/// predecessors and of its t-spread multiples in degree `d + 1`.
struct Layer {
    members: Vec<Monomial>,
    preds: Vec<Vec<usize>>,
    ups: Vec<Vec<usize>>,
}

impl Layer {
    fn new(ctx: &Context, d: usize, next: Option<&[Monomial]>) -> Self {
        let members = enumerate(ctx, d).into_members();
        let pos = |set: &[Monomial], u: &Monomial| set.binary_search(u).ok();
        let preds = members
            .iter()
            .map(|u| {
                let idx = u.indices();
                (0..idx.len())
                    .filter_map(|q| {
                        let lowered = idx[q] - 1;
                        let fits = if q == 0 { lowered >= 1 } else { lowered >= idx[q - 1] + ctx.gap() };
                        if !fits {
                            return None;
                        }
                        let mut v = idx.to_vec();
                        v[q] = lowered;
                        pos(&members, &Monomial::from_sorted_unchecked(v))
                    })
                    .collect()
            })
            .collect();
        let ups = match next {
            None => vec![Vec::new(); members.len()],
            Some(next) => members
                .iter()
                .map(|u| {
                    (1..=ctx.n())
                        .filter_map(|i| u.times_var(i))
                        .filter(|v| v.spread_ok(ctx.t()))
                        .filter_map(|v| pos(next, &v))
                        .collect()
                })
                .collect(),
        };
        Self { members, preds, ups }
    }

    fn len(&self) -> usize {
        self.members.len()
    }

    /// Visits every down-set containing `lower`, which must be a down-set.
    fn down_sets(&self, lower: &FixedBitSet, visit: &mut dyn FnMut(&FixedBitSet) -> bool) -> bool {
        let mut current = lower.clone();
        self.extend(0, &mut current, lower, visit)
    }

    fn extend(
        &self,
        i: usize,
        current: &mut FixedBitSet,
        lower: &FixedBitSet,
        visit: &mut dyn FnMut(&FixedBitSet) -> bool,
    ) -> bool {
        if i == self.len() {
            return visit(current);
        }
        if lower.contains(i) {
            return self.extend(i + 1, current, lower, visit);
        }
        if !self.extend(i + 1, current, lower, visit) {
            return false;
        }
        if self.preds[i].iter().all(|&p| current.contains(p)) {
            current.insert(i);
            let go_on = self.extend(i + 1, current, lower, visit);
            current.set(i, false);
            return go_on;
        }
        true
    }

    fn shadow(&self, set: &FixedBitSet, next_len: usize) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(next_len);
        for i in set.ones() {
            for &j in &self.ups[i] {
                out.insert(j);
            }
        }
        out
    }

    fn subset(&self, set: &FixedBitSet, degree: usize) -> MonomialSet {
        MonomialSet::from_sorted_unchecked(degree, set.ones().map(|i| self.members[i].clone()).collect())
    }
}

fn layers(ctx: &Context, from: usize, to: usize) -> Vec<Layer> {
    let sets: Vec<Vec<Monomial>> = (from..=to).map(|d| enumerate(ctx, d).into_members()).collect();
    (from..=to)
        .enumerate()
        .map(|(pos, d)| Layer::new(ctx, d, sets.get(pos + 1).map(Vec::as_slice)))
        .collect()
}

/// All subsets of `M_{n,d,t}` closed under t-spread moves `x_i (u / x_j)`,
/// `i < j`, including the empty set and the whole set, in a fixed order.
pub fn enumerate_borel_closed(ctx: &Context, d: usize, budget: &SearchBudget) -> Result<Vec<MonomialSet>> {
    check_size(ctx, budget, std::iter::once(d))?;
    let layer = Layer::new(ctx, d, None);
    let mut meter = Meter::new(budget);
    let mut out = Vec::new();
    layer.down_sets(&FixedBitSet::with_capacity(layer.len()), &mut |set| {
        if !meter.tick() {
            return false;
        }
        out.push(layer.subset(set, d));
        true
    });
    match meter.exceeded {
        Some(reason) => Err(Error::BudgetExceeded(reason)),
        None => Ok(out),
    }
}

/// How an enumeration ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationOutcome {
    pub ideals: u64,
    /// Set when a budget limit stopped the search early.
    pub partial: Option<String>,
}

/// Streams every t-spread strongly stable ideal of initial degree `ell1`
/// to `visit`; `visit` returning false stops the search (not flagged as
/// partial).
pub fn enumerate_strongly_stable_ideals(
    ctx: &Context,
    ell1: usize,
    budget: &SearchBudget,
    visit: &mut dyn FnMut(&SpreadIdeal) -> bool,
) -> Result<EnumerationOutcome> {
    let top = ctx.max_spread_degree();
    if ell1 == 0 {
        return Err(Error::InvalidArgument("initial degree must be positive".into()));
    }
    if ell1 > top {
        return Ok(EnumerationOutcome { ideals: 0, partial: None });
    }
    check_size(ctx, budget, ell1..=top)?;
    let layers = layers(ctx, ell1, top);
    let mut meter = Meter::new(budget);
    let mut chain: Vec<FixedBitSet> = Vec::with_capacity(layers.len());
    let mut gens: Vec<FixedBitSet> = Vec::with_capacity(layers.len());
    let empty = FixedBitSet::with_capacity(layers[0].len());
    let mut walker = ChainWalker { ctx, ell1, layers: &layers, meter: &mut meter, visit };
    walker.level(0, &empty, &mut chain, &mut gens);
    Ok(EnumerationOutcome { ideals: meter.count, partial: meter.exceeded })
}

struct ChainWalker<'a, 'b> {
    ctx: &'a Context,
    ell1: usize,
    layers: &'a [Layer],
    meter: &'a mut Meter<'b>,
    visit: &'a mut dyn FnMut(&SpreadIdeal) -> bool,
}

impl ChainWalker<'_, '_> {
    /// Chooses `D` at position `pos` above `lower = Shad(D_{pos-1})`.
    fn level(
        &mut self,
        pos: usize,
        lower: &FixedBitSet,
        chain: &mut Vec<FixedBitSet>,
        gens: &mut Vec<FixedBitSet>,
    ) -> bool {
        if pos == self.layers.len() {
            return self.emit(gens);
        }
        let layer = &self.layers[pos];
        let next_len = self.layers.get(pos + 1).map_or(0, Layer::len);
        let mut keep_going = true;
        layer.down_sets(lower, &mut |set| {
            if pos == 0 && set.is_clear() {
                return true;
            }
            let mut g = set.clone();
            g.difference_with(lower);
            let shadow = layer.shadow(set, next_len);
            chain.push(set.clone());
            gens.push(g);
            keep_going = self.level(pos + 1, &shadow, chain, gens);
            chain.pop();
            gens.pop();
            keep_going
        });
        keep_going
    }

    fn emit(&mut self, gens: &[FixedBitSet]) -> bool {
        if !self.meter.tick() {
            return false;
        }
        let parts = gens
            .iter()
            .zip(self.layers)
            .enumerate()
            .filter(|(_, (g, _))| !g.is_clear())
            .map(|(pos, (g, layer))| {
                let d = self.ell1 + pos;
                (d, layer.subset(g, d))
            })
            .collect();
        let ideal = SpreadIdeal::from_parts_unchecked(*self.ctx, parts);
        (self.visit)(&ideal)
    }
}

/// Which ideals count toward a brute-force maximum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CornerFilter {
    /// Keep only ideals with a corner in their initial degree.
    pub require_corner_at_ell1: bool,
    /// Keep only ideals whose corner values are all 1.
    pub require_unit_values: bool,
    /// Corners `(k, ell)` with `k` below this are not counted.
    pub min_corner_k: usize,
}

impl Default for CornerFilter {
    fn default() -> Self {
        Self { require_corner_at_ell1: true, require_unit_values: true, min_corner_k: 1 }
    }
}

impl CornerFilter {
    /// Number of counted corners of `ideal`, `None` if the ideal is excluded.
    pub fn score(&self, ideal: &SpreadIdeal, ell1: usize) -> Option<usize> {
        let corners = corners_from_table(&graded_betti_unchecked(ideal));
        self.score_corners(&corners.corners, &corners.values, ell1)
    }

    fn score_corners(
        &self,
        corners: &[(usize, usize)],
        values: &[num_bigint::BigUint],
        ell1: usize,
    ) -> Option<usize> {
        let counted: Vec<usize> = (0..corners.len()).filter(|&i| corners[i].0 >= self.min_corner_k).collect();
        if self.require_unit_values && !counted.iter().all(|&i| num_traits::One::is_one(&values[i])) {
            return None;
        }
        if self.require_corner_at_ell1 && !counted.iter().any(|&i| corners[i].1 == ell1) {
            return None;
        }
        Some(counted.len()).filter(|&c| c > 0)
    }
}

/// Where a table value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    BruteForce,
    Formula,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::BruteForce => "brute-force",
            Provenance::Formula => "formula",
        }
    }
}

/// One cell of a maximal-corner table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableCell {
    pub t: u32,
    pub n: u32,
    pub ell1: usize,
    /// Maximal corner count; `None` when no qualifying ideal exists.
    pub value: Option<usize>,
    pub provenance: Provenance,
    /// The search stopped early; `value` is then only a lower bound.
    pub partial: bool,
    /// Brute force only: maximum without the unit-value requirement.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub any_values: Option<Option<usize>>,
    /// Brute force only: maximum without the initial-degree corner requirement.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub any_start: Option<Option<usize>>,
}

impl TableCell {
    pub fn from_formula(t: u32, n: u32, ell1: usize) -> Self {
        Self {
            t,
            n,
            ell1,
            value: max_corners(n, t, ell1),
            provenance: Provenance::Formula,
            partial: false,
            any_values: None,
            any_start: None,
        }
    }

    /// `-` when empty, a trailing `+` when only a lower bound.
    pub fn display_value(&self) -> String {
        let v = self.value.map_or_else(|| "-".to_string(), |v| v.to_string());
        if self.partial {
            format!("{v}+")
        } else {
            v
        }
    }
}

/// Maximal number of corners over all ideals of initial degree `ell1`
/// accepted by `filter`. The relaxed maxima are computed in the same pass.
pub fn brute_force_max_corners(
    ctx: &Context,
    ell1: usize,
    budget: &SearchBudget,
    filter: CornerFilter,
) -> Result<TableCell> {
    let relax_values = CornerFilter { require_unit_values: false, ..filter };
    let relax_start = CornerFilter { require_corner_at_ell1: false, ..filter };
    let (mut best, mut best_values, mut best_start) = (None, None, None);
    let outcome = enumerate_strongly_stable_ideals(ctx, ell1, budget, &mut |ideal| {
        let corners = corners_from_table(&graded_betti_unchecked(ideal));
        let (c, v) = (&corners.corners, &corners.values);
        best = best.max(filter.score_corners(c, v, ell1));
        best_values = best_values.max(relax_values.score_corners(c, v, ell1));
        best_start = best_start.max(relax_start.score_corners(c, v, ell1));
        true
    })?;
    Ok(TableCell {
        t: ctx.t(),
        n: ctx.n(),
        ell1,
        value: best,
        provenance: Provenance::BruteForce,
        partial: outcome.partial.is_some(),
        any_values: Some(best_values),
        any_start: Some(best_start),
    })
}

/// Cells for `n` in `ns` and `ell1` in `ells`, brute force up to
/// `brute_force_upto` variables and the closed form beyond.
pub fn regenerate_table(
    t: u32,
    ns: std::ops::RangeInclusive<u32>,
    ells: std::ops::RangeInclusive<usize>,
    brute_force_upto: Option<u32>,
    budget: &SearchBudget,
) -> Result<Vec<TableCell>> {
    let mut cells = Vec::new();
    for ell1 in ells {
        for n in ns.clone() {
            let brute = brute_force_upto.is_some_and(|cap| n <= cap);
            cells.push(if brute {
                brute_force_max_corners(&Context::new(n, t)?, ell1, budget, CornerFilter::default())?
            } else {
                TableCell::from_formula(t, n, ell1)
            });
        }
    }
    Ok(cells)
}

/// One failed comparison found by [`cross_validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub check: &'static str,
    pub n: u32,
    pub t: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell1: Option<usize>,
    pub detail: String,
}

/// Outcome of [`cross_validate`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: u64,
    pub partial_cells: u64,
    pub disagreements: Vec<Disagreement>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.disagreements.is_empty() && self.partial_cells == 0
    }
}

/// Componentwise-dominated t-spread monomials of the degree of `u`.
fn dominated(u: &Monomial, ctx: &Context) -> MonomialSet {
    let members = enumerate(ctx, u.degree())
        .into_members()
        .into_iter()
        .filter(|v| v.indices().iter().zip(u.indices()).all(|(a, b)| a <= b))
        .collect();
    MonomialSet::from_sorted_unchecked(u.degree(), members)
}

/// Runs every independent comparison on the given ranges:
///
/// * `closure`: breadth-first Borel closure against componentwise domination;
/// * `corners`: corners from the Betti table against the generator
///   characterization, on every enumerated ideal;
/// * `max-corners`: brute force, closed form and construction length;
/// * `positions`: constructed corners satisfy `k + t(ell - 1) + 1 = n`.
pub fn cross_validate(
    ns: std::ops::RangeInclusive<u32>,
    ts: std::ops::RangeInclusive<u32>,
    ells: std::ops::RangeInclusive<usize>,
    budget: &SearchBudget,
) -> Result<ValidationReport> {
    let mut report = ValidationReport::default();
    for t in ts {
        for n in ns.clone() {
            let ctx = Context::new(n, t)?;
            for d in 1..=ctx.max_spread_degree() {
                for u in &enumerate(&ctx, d) {
                    report.checks += 1;
                    if borel_closure_degree(u, &ctx)? != dominated(u, &ctx) {
                        report.disagreements.push(Disagreement {
                            check: "closure",
                            n,
                            t,
                            ell1: None,
                            detail: format!("closure of {u} differs from its dominated set"),
                        });
                    }
                }
            }
            for ell1 in ells.clone() {
                validate_cell(&ctx, ell1, budget, &mut report)?;
            }
        }
    }
    Ok(report)
}

fn validate_cell(ctx: &Context, ell1: usize, budget: &SearchBudget, report: &mut ValidationReport) -> Result<()> {
    let (n, t) = (ctx.n(), ctx.t());
    let filter = CornerFilter::default();
    let mut best: Option<usize> = None;
    let mut mismatches: BTreeSet<String> = BTreeSet::new();
    let mut checks = 0u64;
    let outcome = enumerate_strongly_stable_ideals(ctx, ell1, budget, &mut |ideal| {
        checks += 1;
        let table = corners_from_table(&graded_betti_unchecked(ideal));
        let characterized = corners_via_characterization_unchecked(ideal);
        if table != characterized && mismatches.len() < 5 {
            mismatches.insert(format!("{ideal}: table {:?} vs generators {:?}", table.corners, characterized.corners));
        }
        best = best.max(filter.score_corners(&table.corners, &table.values, ell1));
        true
    })?;
    report.checks += checks;
    for detail in mismatches {
        report.disagreements.push(Disagreement { check: "corners", n, t, ell1: Some(ell1), detail });
    }
    if outcome.partial.is_some() {
        report.partial_cells += 1;
        return Ok(());
    }
    let formula = max_corners(n, t, ell1);
    let built = build_omegas(n, t, ell1).ok().map(|r| r.total);
    report.checks += 1;
    if best != formula || formula != built {
        report.disagreements.push(Disagreement {
            check: "max-corners",
            n,
            t,
            ell1: Some(ell1),
            detail: format!("brute force {best:?}, closed form {formula:?}, construction {built:?}"),
        });
    }
    if formula.is_some() {
        report.checks += 1;
        match construct_extremal_ideal(n, t, ell1) {
            Ok((ideal, _)) => {
                let corners = corners_from_table(&graded_betti_unchecked(&ideal));
                let off: Vec<_> = corners
                    .corners
                    .iter()
                    .filter(|&&(k, ell)| k + t as usize * (ell - 1) + 1 != n as usize)
                    .collect();
                if !off.is_empty() {
                    report.disagreements.push(Disagreement {
                        check: "positions",
                        n,
                        t,
                        ell1: Some(ell1),
                        detail: format!("corners {off:?} do not end at x{n}"),
                    });
                }
            }
            Err(e) => report.disagreements.push(Disagreement {
                check: "positions",
                n,
                t,
                ell1: Some(ell1),
                detail: e.to_string(),
            }),
        }
    }
    Ok(())
}
