//! Ideals with the maximal number of corners for a given initial degree.
//!
//! Write `n = d + k t` with `1 <= d <= t`. Starting from
//! `omega_0 = x_1 x_{1+t} ... x_{1+(ell1-2)t} x_n`, each further `omega_j` is
//! the slex-largest t-spread monomial of degree `ell1 + j` with maximal index
//! `n` that avoids the iterated shadows of `B_t(omega_0), ..., B_t(omega_{j-1})`.
//! The closed forms below produce these monomials directly: first the
//! forward monomials `omega_1 .. omega_{j_max}`, then, when it exists, the
//! critic monomial followed by backward monomials that move a block of
//! indices `d + i t` one step further back.
//!
//! The Borel ideal of all `omega_j` has one corner per generator degree,
//! every corner sits at `(n - t(ell - 1) - 1, ell)`, and every value is 1.

use num_traits::One;

use crate::betti::{corners_via_characterization, CornerSequence};
use crate::error::{Error, Result};
use crate::ideal::{borel_closure_degree, borel_ideal, shadow, SpreadIdeal};
use crate::monomial::{enumerate_into, max_index, Context, Monomial, MonomialSet};

/// `n = d + k t` with `1 <= d <= t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decomposition {
    pub d: u32,
    pub k: u32,
}

/// Unique decomposition of `n` with respect to `t`.
pub fn decompose(n: u32, t: u32) -> Result<Decomposition> {
    if t == 0 {
        return Err(Error::InvalidArgument("decomposition needs t >= 1".into()));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("decomposition needs n >= 1".into()));
    }
    let d = (n - 1) % t + 1;
    Ok(Decomposition { d, k: (n - d) / t })
}

/// Largest t-spread `w` with `max(w) = n` that is slex-smaller than `u`.
///
/// `None` when every gap of `u` equals `t`, i.e. `u` is already the smallest
/// t-spread monomial of its degree with maximal index `n`.
pub fn slex_successor_with_max_n(u: &Monomial, ctx: &Context) -> Result<Option<Monomial>> {
    u.check_in(ctx)?;
    if !u.spread_ok(ctx.t()) {
        return Err(Error::NotSpread { monomial: u.to_string(), t: ctx.t() });
    }
    if u.is_one() || max_index(u) != ctx.n() {
        return Err(Error::InvalidArgument(format!("{u} does not have maximal index {}", ctx.n())));
    }
    let gap = ctx.gap();
    let idx = u.indices();
    let Some(p) = (0..idx.len() - 1).rev().find(|&j| idx[j + 1] - idx[j] > gap) else {
        return Ok(None);
    };
    let mut out = idx[..p].to_vec();
    let start = idx[p] + 1;
    out.extend((0..(idx.len() - 1 - p) as u32).map(|i| start + i * gap));
    out.push(ctx.n());
    Ok(Some(Monomial::from_sorted_unchecked(out)))
}

/// Index of the last forward monomial.
pub fn j_max(n: u32, t: u32, ell1: usize) -> i64 {
    let (n, t, l) = (i64::from(n), i64::from(t), ell1 as i64);
    (n - (l - 2) * t).div_euclid(1 + t) - 1
}

/// Slack between the last two indices of `omega_{j_max}`, measured from `2t`.
pub fn s_value(n: u32, t: u32, ell1: usize, j_max: i64) -> i64 {
    let (n, t, l) = (i64::from(n), i64::from(t), ell1 as i64);
    2 * t - n + j_max * (1 + t) + 1 + (l - 2) * t
}

/// Index of the last backward monomial, counted from the critic monomial.
pub fn nu_max(decomp: Decomposition, t: u32, ell1: usize, j_max: i64) -> i64 {
    let (d, k, t, l) = (i64::from(decomp.d), i64::from(decomp.k), i64::from(t), ell1 as i64);
    if ell1 == 2 {
        (d - 3).div_euclid(t) + k - 2 - j_max
    } else {
        (d - 2).div_euclid(t) + k - 2 - j_max - (l - 2)
    }
}

/// Which family of closed forms covers an input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `k >= 4`.
    General,
    /// `k = 3`, handled case by case.
    KThree,
    /// `k <= 2`.
    SmallK,
}

impl Regime {
    fn of(decomp: Decomposition) -> Self {
        match decomp.k {
            0..=2 => Regime::SmallK,
            3 => Regime::KThree,
            _ => Regime::General,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Regime::General => "general",
            Regime::KThree => "k=3",
            Regime::SmallK => "small-k",
        }
    }
}

/// Largest initial degree that admits a corner count.
fn ell1_upper(decomp: Decomposition, t: u32) -> i64 {
    i64::from(decomp.k) + (i64::from(decomp.d) - 2).div_euclid(i64::from(t)) + 1
}

/// Maximal number of corners of a t-spread strongly stable ideal in `n`
/// variables with initial degree `ell1` and a corner in that degree.
///
/// `None` when no ideal of this shape exists or the closed form does not
/// apply (`t < 2`, `ell1 < 2`, `ell1` above its range).
pub fn max_corners(n: u32, t: u32, ell1: usize) -> Option<usize> {
    if t < 2 || ell1 < 2 || n == 0 {
        return None;
    }
    let dc = decompose(n, t).ok()?;
    let (d, k) = (i64::from(dc.d), i64::from(dc.k));
    let value = if ell1 == 2 {
        match dc.k {
            0 => return None,
            1 => 1,
            2 => {
                if dc.d == 1 {
                    1
                } else {
                    2
                }
            }
            _ => k + (d - 3).div_euclid(i64::from(t)),
        }
    } else {
        if ell1 as i64 > ell1_upper(dc, t) {
            return None;
        }
        k + (d - 2).div_euclid(i64::from(t)) - (ell1 as i64 - 2)
    };
    usize::try_from(value).ok().filter(|&v| v >= 1)
}

/// Everything the construction computes for one `(n, t, ell1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionReport {
    pub ctx: Context,
    pub ell1: usize,
    pub decomp: Decomposition,
    pub j_max: i64,
    pub s: i64,
    pub nu_max: i64,
    pub omegas: Vec<Monomial>,
    /// Positions `(n - t(ell - 1) - 1, ell)` for `ell = ell1 .. ell1 + total - 1`.
    pub predicted_corners: Vec<(usize, usize)>,
    pub total: usize,
    pub regime: Regime,
    /// Whether the critic monomial is part of `omegas`.
    pub has_critic: bool,
}

fn mono(indices: Vec<u32>) -> Monomial {
    Monomial::from_sorted_unchecked(indices)
}

/// `x_1 x_{1+t} ... x_{1+(ell1-2)t} x_n`.
fn omega_zero(n: u32, t: u32, ell1: usize) -> Monomial {
    let mut v: Vec<u32> = (0..(ell1 - 1) as u32).map(|i| 1 + i * t).collect();
    v.push(n);
    mono(v)
}

/// Forward monomial `omega_j`, `j >= 1`.
fn forward(n: u32, t: u32, ell1: usize, j: u32) -> Monomial {
    let head = (ell1 - 2) as u32;
    let mut v: Vec<u32> = (0..head).map(|i| 1 + i * t).collect();
    v.extend((0..j).map(|i| 2 + i + (head + i) * t));
    v.push((j + 1) + (head + j) * t);
    v.push(n);
    mono(v)
}

/// Critic (`nu = 0`) and backward (`nu >= 1`) monomials: a prefix of
/// `omega_{j_max}` followed by `x_{d+it}` for `i` from `k-4-s-nu(1+t)` to `k`.
fn backward(
    last_forward: &Monomial,
    decomp: Decomposition,
    t: u32,
    ell1: usize,
    s: i64,
    j_max: i64,
    nu: i64,
) -> Result<Monomial> {
    let (t64, k) = (i64::from(t), i64::from(decomp.k));
    let prefix_len = j_max + ell1 as i64 - 4 - s - nu * t64;
    let block_start = k - 4 - s - nu * (1 + t64);
    if prefix_len < 0 || block_start < 0 {
        return Err(Error::InvariantViolation(format!(
            "backward monomial nu={nu} has prefix length {prefix_len} and block start {block_start}"
        )));
    }
    let mut v = last_forward.indices()[..prefix_len as usize].to_vec();
    v.extend((block_start..=k).map(|i| decomp.d + i as u32 * t));
    Ok(mono(v))
}

/// The closed forms for `k >= 3`, without case distinctions.
fn general_omegas(
    n: u32,
    t: u32,
    ell1: usize,
    decomp: Decomposition,
) -> Result<(Vec<Monomial>, bool)> {
    let jm = j_max(n, t, ell1);
    let s = s_value(n, t, ell1, jm);
    let nm = nu_max(decomp, t, ell1, jm);
    let mut omegas = vec![omega_zero(n, t, ell1)];
    omegas.extend((1..=jm.max(0) as u32).map(|j| forward(n, t, ell1, j)));
    let critic = if ell1 == 2 { jm - 1 - s >= 1 } else { jm + ell1 as i64 - 3 - s >= ell1 as i64 - 2 };
    if critic {
        let last = omegas.last().cloned().expect("omega_0 is present");
        for nu in 0..=nm.max(0) {
            omegas.push(backward(&last, decomp, t, ell1, s, jm, nu)?);
        }
    }
    Ok((omegas, critic))
}

/// The enumerated `k = 3` cases.
fn k_three_omegas(n: u32, t: u32, ell1: usize, d: u32) -> Vec<Monomial> {
    let o0 = omega_zero(n, t, ell1);
    match (ell1, d) {
        (2, 1 | 2) => vec![o0, mono(vec![2, 2 + t, n])],
        (2, _) => vec![o0, mono(vec![2, 2 + t, n]), mono(vec![2, 3 + t, 3 + 2 * t, n])],
        (3, 1) => vec![o0],
        (3, _) => vec![o0, mono(vec![1, 2 + t, 2 + 2 * t, n])],
        _ => vec![o0],
    }
}

/// The `k <= 2` cases that admit a corner.
fn small_k_omegas(n: u32, t: u32, ell1: usize, decomp: Decomposition) -> Vec<Monomial> {
    let o0 = omega_zero(n, t, ell1);
    if ell1 == 2 && decomp.k == 2 && decomp.d >= 2 {
        vec![o0, mono(vec![2, 2 + t, n])]
    } else {
        vec![o0]
    }
}

/// Builds `omega_0, omega_1, ...` for `(n, t, ell1)`.
pub fn build_omegas(n: u32, t: u32, ell1: usize) -> Result<ConstructionReport> {
    if t < 2 {
        return Err(Error::Inapplicable(format!("t = {t} is below 2")));
    }
    if ell1 < 2 {
        return Err(Error::Inapplicable(format!("initial degree {ell1} is below 2")));
    }
    let ctx = Context::new(n, t)?;
    let decomp = decompose(n, t)?;
    if ell1 > ctx.max_spread_degree() {
        return Err(Error::Inapplicable(format!(
            "no {t}-spread monomial of degree {ell1} in {n} variables"
        )));
    }
    let Some(expected) = max_corners(n, t, ell1) else {
        return Err(Error::Inapplicable(format!(
            "initial degree {ell1} exceeds k + floor((d-2)/t) + 1 = {} for n = {} + {}*{t}",
            ell1_upper(decomp, t),
            decomp.d,
            decomp.k
        )));
    };
    let regime = Regime::of(decomp);
    let jm = j_max(n, t, ell1);
    let s = s_value(n, t, ell1, jm);
    let nm = nu_max(decomp, t, ell1, jm);
    let (omegas, has_critic) = match regime {
        Regime::General => general_omegas(n, t, ell1, decomp)?,
        Regime::KThree => (k_three_omegas(n, t, ell1, decomp.d), false),
        Regime::SmallK => (small_k_omegas(n, t, ell1, decomp), false),
    };
    for (j, w) in omegas.iter().enumerate() {
        let shaped = w.degree() == ell1 + j && max_index(w) == n && w.spread_ok(t);
        if !shaped {
            return Err(Error::InvariantViolation(format!(
                "omega_{j} = {w} is not a {t}-spread monomial of degree {} ending in x{n}",
                ell1 + j
            )));
        }
    }
    if omegas.len() != expected {
        return Err(Error::InvariantViolation(format!(
            "built {} monomials, expected {expected}",
            omegas.len()
        )));
    }
    let predicted_corners = (ell1..ell1 + omegas.len())
        .map(|ell| ((n - t * (ell as u32 - 1) - 1) as usize, ell))
        .collect();
    Ok(ConstructionReport {
        ctx,
        ell1,
        decomp,
        j_max: jm,
        s,
        nu_max: nm,
        total: omegas.len(),
        omegas,
        predicted_corners,
        regime,
        has_critic,
    })
}

/// Builds the extremal ideal `B_t(omega_0, omega_1, ...)` and checks its
/// corners against the prediction.
pub fn construct_extremal_ideal(n: u32, t: u32, ell1: usize) -> Result<(SpreadIdeal, ConstructionReport)> {
    let report = build_omegas(n, t, ell1)?;
    let ideal = borel_ideal(&report.omegas, &report.ctx)?;
    let corners: CornerSequence = corners_via_characterization(&ideal)?;
    if corners.corners != report.predicted_corners || !corners.values.iter().all(One::is_one) {
        return Err(Error::InvariantViolation(format!(
            "corners {:?} with values {:?} differ from the prediction {:?}",
            corners.corners, corners.values, report.predicted_corners
        )));
    }
    Ok((ideal, report))
}

/// `u` has a subsequence dominated componentwise by `w`, i.e. `u` lies in an
/// iterated shadow of `B_t(w)` (both t-spread, `deg u >= deg w`).
fn sub_dominated(w: &[u32], u: &[u32]) -> bool {
    let mut it = u.iter();
    w.iter().all(|&bound| it.any(|&x| x <= bound))
}

/// `Omega_j` by explicit enumeration: degree `ell1 + j`, maximal index `n`,
/// outside `Shad^{j-i}(B_t(omega_i))` for all `i < j`.
pub fn omega_set(omegas: &[Monomial], ctx: &Context, ell1: usize, j: usize) -> Result<MonomialSet> {
    let mut sets = omega_sets(omegas, ctx, ell1, j)?;
    Ok(sets.pop().expect("one set per degree"))
}

/// `Omega_0, ..., Omega_upto`, carrying the covered set forward: the union
/// of shadows in degree `ell1 + j` is the shadow of the previous union
/// together with `B_t(omega_{j-1})`.
fn omega_sets(omegas: &[Monomial], ctx: &Context, ell1: usize, upto: usize) -> Result<Vec<MonomialSet>> {
    let mut covered = MonomialSet::empty(ell1);
    let mut out = Vec::with_capacity(upto + 1);
    for j in 0..=upto {
        if j > 0 {
            let mut prior = covered.into_members();
            if let Some(w) = omegas.get(j - 1) {
                prior.extend(borel_closure_degree(w, ctx)?.into_members());
            }
            covered = shadow(&MonomialSet::new(ell1 + j - 1, prior)?, ctx);
        }
        let degree = ell1 + j;
        let mut members = Vec::new();
        if degree <= ctx.max_spread_degree() {
            let mut prefix = Vec::with_capacity(degree);
            enumerate_into(ctx, degree, &mut prefix, &mut |u| {
                if max_index(&u) == ctx.n() && !covered.contains(&u) {
                    members.push(u);
                }
            });
        }
        out.push(MonomialSet::new(degree, members)?);
    }
    Ok(out)
}

/// `max Omega_j` without enumerating: covered monomials form a down-set
/// under componentwise order, so the slex-largest uncovered one is found
/// greedily, one position at a time, by binary search on the next index.
fn omega_max_pruned(omegas: &[Monomial], ctx: &Context, ell1: usize, j: usize) -> Option<Monomial> {
    let degree = ell1 + j;
    if degree > ctx.max_spread_degree() {
        return None;
    }
    let (n, gap) = (ctx.n(), ctx.gap());
    let earlier: Vec<&[u32]> = omegas[..j].iter().map(Monomial::indices).collect();
    let covered = |u: &[u32]| earlier.iter().any(|w| sub_dominated(w, u));
    // componentwise largest completion of a prefix, ending in x_n
    let top = |prefix: &[u32]| -> Vec<u32> {
        let mut v = prefix.to_vec();
        v.extend((prefix.len()..degree).map(|q| n - (degree - 1 - q) as u32 * gap));
        v
    };
    let mut prefix: Vec<u32> = Vec::with_capacity(degree);
    if covered(&top(&prefix)) {
        return None;
    }
    for q in 0..degree - 1 {
        let lo = prefix.last().map_or(1, |&x| x + gap);
        let hi = n - (degree - 1 - q) as u32 * gap;
        let (mut a, mut b) = (lo, hi);
        // the top completion of prefix + hi is uncovered by the loop invariant
        while a < b {
            let mid = a + (b - a) / 2;
            prefix.push(mid);
            let free = !covered(&top(&prefix));
            prefix.pop();
            if free {
                b = mid;
            } else {
                a = mid + 1;
            }
        }
        prefix.push(a);
    }
    prefix.push(n);
    Some(mono(prefix))
}

/// How [`omega_claim_check_with`] computes each `Omega_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClaimRoute {
    /// Enumerate every t-spread monomial and subtract explicit shadows.
    Explicit,
    /// Greedy search over the down-set of covered monomials.
    Pruned,
    /// Explicit when every degree involved has at most [`EXPLICIT_LIMIT`]
    /// monomials, pruned otherwise.
    Auto,
}

/// Size bound for the explicit route under [`ClaimRoute::Auto`].
pub const EXPLICIT_LIMIT: u128 = 5_000;

/// Checks that `omegas[j] = max Omega_j` for every `j` and that `Omega` is
/// empty right after the last one.
pub fn omega_claim_check(omegas: &[Monomial], ctx: &Context, ell1: usize) -> bool {
    omega_claim_check_with(omegas, ctx, ell1, ClaimRoute::Auto)
}

pub fn omega_claim_check_with(omegas: &[Monomial], ctx: &Context, ell1: usize, route: ClaimRoute) -> bool {
    let shaped = omegas.iter().enumerate().all(|(j, w)| {
        w.degree() == ell1 + j && w.check_in(ctx).is_ok() && w.spread_ok(ctx.t())
    });
    if !shaped || ell1 == 0 {
        return false;
    }
    let explicit = match route {
        ClaimRoute::Explicit => true,
        ClaimRoute::Pruned => false,
        ClaimRoute::Auto => (ell1..=ell1 + omegas.len())
            .all(|deg| crate::monomial::spread_count(ctx, deg) <= EXPLICIT_LIMIT),
    };
    if explicit {
        let Ok(sets) = omega_sets(omegas, ctx, ell1, omegas.len()) else {
            return false;
        };
        sets.iter().enumerate().all(|(j, set)| set.max() == omegas.get(j))
    } else {
        (0..=omegas.len()).all(|j| omega_max_pruned(omegas, ctx, ell1, j).as_ref() == omegas.get(j))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    #[test]
    fn decompositions() {
        assert_eq!(decompose(46, 3).unwrap(), Decomposition { d: 1, k: 15 });
        assert_eq!(decompose(32, 5).unwrap(), Decomposition { d: 2, k: 6 });
        assert_eq!(decompose(14, 3).unwrap(), Decomposition { d: 2, k: 4 });
        assert_eq!(decompose(3, 3).unwrap(), Decomposition { d: 3, k: 0 });
        assert!(decompose(5, 0).is_err());
    }

    #[test]
    fn successor_examples() {
        let c = Context::new(14, 3).unwrap();
        assert_eq!(slex_successor_with_max_n(&m("x1*x11*x14"), &c).unwrap(), Some(m("x2*x5*x14")));
        assert_eq!(slex_successor_with_max_n(&m("x8*x11*x14"), &c).unwrap(), None);
        assert!(slex_successor_with_max_n(&m("x1*x13"), &c).is_err());
    }

    #[test]
    fn successor_walks_the_max_n_list() {
        let c = Context::new(9, 2).unwrap();
        let listed = [
            "x1*x3*x5*x9", "x1*x3*x6*x9", "x1*x3*x7*x9", "x1*x4*x6*x9", "x1*x4*x7*x9",
            "x1*x5*x7*x9", "x2*x4*x6*x9", "x2*x4*x7*x9", "x2*x5*x7*x9",
        ];
        // the listed monomials are only those beginning below x3
        for pair in listed.windows(2) {
            assert_eq!(slex_successor_with_max_n(&m(pair[0]), &c).unwrap(), Some(m(pair[1])));
        }
        assert_eq!(slex_successor_with_max_n(&m("x2*x5*x7*x9"), &c).unwrap(), Some(m("x3*x5*x7*x9")));
        assert_eq!(slex_successor_with_max_n(&m("x3*x5*x7*x9"), &c).unwrap(), None);
    }

    #[test]
    fn parameter_examples() {
        assert_eq!(j_max(46, 3, 2), 10);
        assert_eq!(j_max(32, 5, 2), 4);
        assert_eq!(j_max(138, 11, 5), 7);
        assert_eq!(s_value(46, 3, 2, 10), 1);
        assert_eq!(s_value(32, 5, 2, 4), 3);
        assert_eq!(s_value(138, 11, 5, 7), 2);
        assert_eq!(nu_max(decompose(46, 3).unwrap(), 3, 2, 10), 2);
        assert_eq!(nu_max(decompose(32, 5).unwrap(), 5, 2, 4), -1);
        assert_eq!(nu_max(decompose(138, 11).unwrap(), 11, 5, 7), 0);
    }

    #[test]
    fn max_corner_examples() {
        assert_eq!(max_corners(9, 2, 2), Some(3));
        assert_eq!(max_corners(14, 3, 2), Some(3));
        assert_eq!(max_corners(20, 3, 7), Some(1));
        assert_eq!(max_corners(20, 3, 8), None);
        assert_eq!(max_corners(3, 3, 2), None);
        assert_eq!(max_corners(9, 1, 2), None);
    }

    #[test]
    fn long_construction_matches_listed_monomials() {
        let r = build_omegas(46, 3, 2).unwrap();
        assert_eq!(r.total, 14);
        assert!(r.has_critic);
        assert_eq!(r.omegas[10], m("x2*x6*x10*x14*x18*x22*x26*x30*x34*x38*x41*x46"));
        assert_eq!(r.omegas[11], m("x2*x6*x10*x14*x18*x22*x26*x31*x34*x37*x40*x43*x46"));
        assert_eq!(r.omegas[12], m("x2*x6*x10*x14*x19*x22*x25*x28*x31*x34*x37*x40*x43*x46"));
        assert_eq!(r.omegas[13], m("x2*x7*x10*x13*x16*x19*x22*x25*x28*x31*x34*x37*x40*x43*x46"));
    }

    #[test]
    fn construction_without_critic() {
        let r = build_omegas(32, 5, 2).unwrap();
        assert_eq!(r.total, 5);
        assert!(!r.has_critic);
        assert_eq!(r.omegas[4], m("x2*x8*x14*x20*x25*x32"));
    }

    #[test]
    fn construction_in_higher_initial_degree() {
        let r = build_omegas(138, 11, 5).unwrap();
        assert_eq!(r.total, 9);
        assert_eq!(r.omegas[7], m("x1*x12*x23*x35*x47*x59*x71*x83*x95*x107*x118*x138"));
        assert_eq!(r.omegas[8], m("x1*x12*x23*x35*x47*x59*x72*x83*x94*x105*x116*x127*x138"));
    }

    #[test]
    fn small_example_ideal() {
        let (ideal, r) = construct_extremal_ideal(14, 3, 2).unwrap();
        assert_eq!(r.omegas, vec![m("x1*x14"), m("x2*x5*x14"), m("x2*x6*x9*x14")]);
        assert_eq!(r.predicted_corners, vec![(10, 2), (7, 3), (4, 4)]);
        assert_eq!(ideal.num_generators(), 21);
        let (_, r) = construct_extremal_ideal(9, 2, 2).unwrap();
        assert_eq!(r.predicted_corners, vec![(6, 2), (4, 3), (2, 4)]);
    }

    #[test]
    fn k_three_cases_agree_with_closed_forms() {
        for t in 2..=9 {
            for d in 1..=t {
                let n = d + 3 * t;
                let dc = decompose(n, t).unwrap();
                for ell1 in 2..=4 {
                    if max_corners(n, t, ell1).is_none() {
                        continue;
                    }
                    let (general, _) = general_omegas(n, t, ell1, dc).unwrap();
                    assert_eq!(k_three_omegas(n, t, ell1, d), general, "n={n} t={t} ell1={ell1}");
                }
            }
        }
    }

    #[test]
    fn inapplicable_inputs() {
        assert!(matches!(build_omegas(20, 3, 8), Err(Error::Inapplicable(_))));
        assert!(matches!(build_omegas(9, 1, 2), Err(Error::Inapplicable(_))));
        assert!(matches!(build_omegas(3, 3, 2), Err(Error::Inapplicable(_))));
        assert!(matches!(build_omegas(9, 2, 1), Err(Error::Inapplicable(_))));
    }

    #[test]
    fn omega_two_for_nine_variables() {
        let c = Context::new(9, 2).unwrap();
        let omegas = [m("x1*x9"), m("x2*x4*x9")];
        let set = omega_set(&omegas, &c, 2, 2).unwrap();
        // x3*x5*x7*x9 has no index below 3, so it avoids both shadows
        assert_eq!(set.members(), &[m("x2*x5*x7*x9"), m("x3*x5*x7*x9")]);
        assert_eq!(set.max(), Some(&m("x2*x5*x7*x9")));
    }

    #[test]
    fn claim_holds_on_examples_both_routes() {
        for (n, t, ell1) in [(9, 2, 2), (14, 3, 2), (32, 5, 2), (20, 3, 3), (17, 2, 4)] {
            let r = build_omegas(n, t, ell1).unwrap();
            for route in [ClaimRoute::Explicit, ClaimRoute::Pruned] {
                assert!(omega_claim_check_with(&r.omegas, &r.ctx, ell1, route), "n={n} t={t} ell1={ell1}");
            }
        }
        let r = build_omegas(46, 3, 2).unwrap();
        assert!(omega_claim_check(&r.omegas, &r.ctx, 2));
    }

    #[test]
    fn claim_rejects_perturbed_omegas() {
        let r = build_omegas(14, 3, 2).unwrap();
        let mut bad = r.omegas.clone();
        bad[1] = m("x2*x6*x14");
        for route in [ClaimRoute::Explicit, ClaimRoute::Pruned] {
            assert!(!omega_claim_check_with(&bad, &r.ctx, 2, route));
            assert!(!omega_claim_check_with(&r.omegas[..2], &r.ctx, 2, route));
        }
    }
}
