//! Squarefree monomials as sorted index vectors, the t-spread predicate,
//! the squarefree lexicographic order and enumeration of `M_{n,d,t}`.
//!
//! A monomial `x_{i_1} x_{i_2} ... x_{i_d}` is stored as the strictly
//! increasing list `[i_1, ..., i_d]`; the empty list is the monomial `1`.
//! Repeated variables are not representable, so `t = 0` behaves like `t = 1`
//! for every structural algorithm in the crate.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::binom::binomial_u128;
use crate::error::{Error, Result};

/// Ambient parameters: number of variables `n` and spread `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Context {
    n_vars: u32,
    spread_t: u32,
}

impl Context {
    pub fn new(n_vars: u32, spread_t: u32) -> Result<Self> {
        if n_vars == 0 {
            return Err(Error::InvalidContext("n must be at least 1".into()));
        }
        Ok(Self { n_vars, spread_t })
    }

    pub fn n(&self) -> u32 {
        self.n_vars
    }

    pub fn t(&self) -> u32 {
        self.spread_t
    }

    /// Minimal gap between consecutive indices of a representable t-spread
    /// monomial. Indices are strictly increasing, so this is never below 1.
    pub(crate) fn gap(&self) -> u32 {
        self.spread_t.max(1)
    }

    /// Largest degree for which `M_{n,d,t}` is nonempty.
    pub fn max_spread_degree(&self) -> usize {
        ((self.n_vars - 1) / self.gap()) as usize + 1
    }
}

/// A squarefree monomial, stored as its strictly increasing index list.
///
/// The derived `Ord` is plain lexicographic order on the index lists; within a
/// fixed degree this is the *reverse* of the squarefree lexicographic order
/// (see [`slex_cmp`]).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(indices: Vec<u32>) -> Result<Self> {
        if indices.first() == Some(&0) {
            return Err(Error::InvalidMonomial("variable indices start at 1".into()));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidMonomial(format!(
                "indices must be strictly increasing, got {indices:?}"
            )));
        }
        Ok(Self(indices))
    }

    /// The monomial `1`.
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub(crate) fn from_sorted_unchecked(indices: Vec<u32>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        Self(indices)
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Checks that every index lies in `[1, n]`.
    pub fn check_in(&self, ctx: &Context) -> Result<()> {
        match self.0.last() {
            Some(&last) if last > ctx.n() => Err(Error::IndexOutOfRange {
                index: last,
                n: ctx.n(),
            }),
            _ => Ok(()),
        }
    }

    /// Gap test without range validation.
    pub(crate) fn spread_ok(&self, t: u32) -> bool {
        self.0.windows(2).all(|w| w[1] - w[0] >= t)
    }

    /// `self | other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.degree() > other.degree() {
            return false;
        }
        let mut rest = other.0.iter();
        'outer: for &i in &self.0 {
            for &j in rest.by_ref() {
                match j.cmp(&i) {
                    Ordering::Less => continue,
                    Ordering::Equal => continue 'outer,
                    Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    /// `x_i * self`, or `None` when `i` already divides `self`.
    pub fn times_var(&self, i: u32) -> Option<Monomial> {
        match self.0.binary_search(&i) {
            Ok(_) => None,
            Err(pos) => {
                let mut v = self.0.clone();
                v.insert(pos, i);
                Some(Monomial(v))
            }
        }
    }

    /// Drops the last (largest) variable.
    pub fn without_max(&self) -> Monomial {
        let mut v = self.0.clone();
        v.pop();
        Monomial(v)
    }
}

impl TryFrom<Vec<u32>> for Monomial {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        Monomial::new(v)
    }
}

impl From<Monomial> for Vec<u32> {
    fn from(m: Monomial) -> Self {
        m.0
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (pos, i) in self.0.iter().enumerate() {
            if pos > 0 {
                f.write_str("*")?;
            }
            write!(f, "x{i}")?;
        }
        Ok(())
    }
}

impl FromStr for Monomial {
    type Err = Error;

    /// Parses `x2*x5*x14` (whitespace is ignored, factors may come in any
    /// order) or `1`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "1" {
            return Ok(Monomial::one());
        }
        if compact.is_empty() {
            return Err(Error::Parse("empty monomial".into()));
        }
        let mut indices = Vec::new();
        for factor in compact.split('*') {
            let digits = factor
                .strip_prefix('x')
                .ok_or_else(|| Error::Parse(format!("expected x<index>, got `{factor}`")))?;
            let i: u32 = digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad variable index in `{factor}`")))?;
            indices.push(i);
        }
        indices.sort_unstable();
        Monomial::new(indices).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Parses a comma-separated monomial list such as `x1*x14, x2*x5*x14`.
pub fn parse_monomial_list(s: &str) -> Result<Vec<Monomial>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(str::parse)
        .collect()
}

/// Monomials of one degree, sorted strictly descending in slex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialSet {
    degree: usize,
    members: Vec<Monomial>,
}

impl MonomialSet {
    pub fn empty(degree: usize) -> Self {
        Self {
            degree,
            members: Vec::new(),
        }
    }

    /// Collects monomials of the given degree, sorting and deduplicating.
    pub fn new(degree: usize, members: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let set: BTreeSet<Monomial> = members.into_iter().collect();
        if let Some(bad) = set.iter().find(|m| m.degree() != degree) {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: bad.degree(),
            });
        }
        Ok(Self {
            degree,
            members: set.into_iter().collect(),
        })
    }

    /// `members` must already be sorted lexicographically ascending and
    /// free of duplicates.
    pub(crate) fn from_sorted_unchecked(degree: usize, members: Vec<Monomial>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(members.iter().all(|m| m.degree() == degree));
        Self { degree, members }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Monomial] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Monomial> {
        self.members.iter()
    }

    pub fn contains(&self, u: &Monomial) -> bool {
        self.members.binary_search(u).is_ok()
    }

    /// Slex-largest member.
    pub fn max(&self) -> Option<&Monomial> {
        self.members.first()
    }

    /// Slex-smallest member.
    pub fn min(&self) -> Option<&Monomial> {
        self.members.last()
    }

    pub fn into_members(self) -> Vec<Monomial> {
        self.members
    }

    pub fn is_subset(&self, other: &MonomialSet) -> bool {
        self.members.iter().all(|m| other.contains(m))
    }
}

impl<'a> IntoIterator for &'a MonomialSet {
    type Item = &'a Monomial;
    type IntoIter = std::slice::Iter<'a, Monomial>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// Whether all consecutive index gaps of `u` are at least `t`.
pub fn is_t_spread(u: &Monomial, ctx: &Context) -> Result<bool> {
    u.check_in(ctx)?;
    Ok(u.spread_ok(ctx.t()))
}

/// Squarefree lexicographic comparison of two monomials of equal degree.
///
/// `Greater` means `u >_slex v`: at the first differing position `u` has
/// the smaller index.
pub fn slex_cmp(u: &Monomial, v: &Monomial) -> Result<Ordering> {
    if u.degree() != v.degree() {
        return Err(Error::DegreeMismatch {
            left: u.degree(),
            right: v.degree(),
        });
    }
    Ok(v.indices().cmp(u.indices()))
}

/// All t-spread monomials of degree `d`, slex-descending.
///
/// Monomials are generated by choosing `i_1` and recursing on the shifted
/// tail, which emits them in slex-descending order directly.
pub fn enumerate(ctx: &Context, d: usize) -> MonomialSet {
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(d);
    enumerate_into(ctx, d, &mut prefix, &mut |m| out.push(m));
    MonomialSet::from_sorted_unchecked(d, out)
}

/// Visits every t-spread monomial of degree `d` extending `prefix`, in
/// slex-descending order.
pub(crate) fn enumerate_into(
    ctx: &Context,
    d: usize,
    prefix: &mut Vec<u32>,
    emit: &mut dyn FnMut(Monomial),
) {
    let pos = prefix.len();
    if pos == d {
        emit(Monomial::from_sorted_unchecked(prefix.clone()));
        return;
    }
    let gap = ctx.gap();
    let lo = prefix.last().map_or(1, |&p| p + gap);
    let remaining = (d - pos - 1) as u32;
    let Some(hi) = ctx.n().checked_sub(remaining * gap) else {
        return;
    };
    for i in lo..=hi {
        prefix.push(i);
        enumerate_into(ctx, d, prefix, emit);
        prefix.pop();
    }
}

/// `|M_{n,d,t}| = binom(n - (d-1)(t-1), d)` for `t >= 1`.
pub fn spread_count(ctx: &Context, d: usize) -> u128 {
    if d == 0 {
        return 1;
    }
    let shrink = (d as u64 - 1) * (u64::from(ctx.gap()) - 1);
    let top = u64::from(ctx.n()).saturating_sub(shrink);
    if u64::from(ctx.n()) < shrink {
        return 0;
    }
    binomial_u128(top, d as u64).unwrap_or(u128::MAX)
}

/// `x_1 x_{1+t} ... x_{1+(d-1)t}`, the slex-largest element of `M_{n,d,t}`.
pub fn slex_max_spread(ctx: &Context, d: usize) -> Option<Monomial> {
    let gap = ctx.gap();
    let v: Vec<u32> = (0..d as u32).map(|i| 1 + i * gap).collect();
    match v.last() {
        Some(&last) if last > ctx.n() => None,
        _ => Some(Monomial::from_sorted_unchecked(v)),
    }
}

pub fn max_index(u: &Monomial) -> u32 {
    u.indices().last().copied().unwrap_or(0)
}

pub fn min_index(u: &Monomial) -> u32 {
    u.indices().first().copied().unwrap_or(0)
}

pub fn support(u: &Monomial) -> BTreeSet<u32> {
    u.indices().iter().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    fn ctx(n: u32, t: u32) -> Context {
        Context::new(n, t).unwrap()
    }

    #[test]
    fn spread_predicate() {
        assert!(is_t_spread(&m("x1*x3*x6"), &ctx(6, 2)).unwrap());
        assert!(!is_t_spread(&m("x1*x3*x6"), &ctx(6, 3)).unwrap());
        for t in 0..5 {
            assert!(is_t_spread(&Monomial::one(), &ctx(3, t)).unwrap());
        }
        assert!(is_t_spread(&m("x4"), &ctx(4, 9)).unwrap());
        assert_eq!(
            is_t_spread(&m("x1*x7"), &ctx(6, 2)),
            Err(Error::IndexOutOfRange { index: 7, n: 6 })
        );
    }

    #[test]
    fn slex_examples() {
        assert_eq!(slex_cmp(&m("x1*x4"), &m("x2*x3")).unwrap(), Ordering::Greater);
        assert_eq!(slex_cmp(&m("x2*x3"), &m("x1*x4")).unwrap(), Ordering::Less);
        assert_eq!(slex_cmp(&m("x2*x5"), &m("x2*x5")).unwrap(), Ordering::Equal);
        assert!(slex_cmp(&m("x2"), &m("x2*x5")).is_err());

        let c = ctx(13, 3);
        let top = slex_max_spread(&c, 4).unwrap();
        assert_eq!(top, m("x1*x4*x7*x10"));
        for v in enumerate(&c, 4).iter().filter(|v| **v != top) {
            assert_eq!(slex_cmp(&top, v).unwrap(), Ordering::Greater);
        }
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate(&ctx(9, 2), 4).len(), 15);
        let small = enumerate(&ctx(4, 3), 2);
        assert_eq!(small.members(), &[m("x1*x4")]);
        // n = d + 3t with 3 <= d <= t leaves no degree-5 monomials
        for t in 3..7u32 {
            for d in 3..=t {
                assert!(enumerate(&ctx(d + 3 * t, t), 5).is_empty());
            }
        }
        assert!(enumerate(&ctx(3, 3), 2).is_empty());
    }

    #[test]
    fn enumeration_is_slex_descending() {
        let set = enumerate(&ctx(11, 2), 3);
        for w in set.members().windows(2) {
            assert_eq!(slex_cmp(&w[0], &w[1]).unwrap(), Ordering::Greater);
        }
        assert_eq!(set.max(), Some(&m("x1*x3*x5")));
        assert_eq!(set.min(), Some(&m("x7*x9*x11")));
    }

    #[test]
    fn extremes() {
        let u = m("x2*x5*x14");
        assert_eq!((max_index(&u), min_index(&u)), (14, 2));
        assert_eq!((max_index(&Monomial::one()), min_index(&Monomial::one())), (0, 0));
        assert_eq!((max_index(&m("x7")), min_index(&m("x7"))), (7, 7));
        assert_eq!(support(&u), BTreeSet::from([2, 5, 14]));
    }

    #[test]
    fn text_syntax() {
        assert_eq!(m(" x14 * x2*x5 ").to_string(), "x2*x5*x14");
        assert_eq!(m("1"), Monomial::one());
        assert_eq!(Monomial::one().to_string(), "1");
        assert!("x2*x2".parse::<Monomial>().is_err());
        assert!("x0".parse::<Monomial>().is_err());
        assert!("y3".parse::<Monomial>().is_err());
        assert!("".parse::<Monomial>().is_err());
        assert_eq!(
            parse_monomial_list("x1*x14, x2*x5*x14").unwrap(),
            vec![m("x1*x14"), m("x2*x5*x14")]
        );
    }

    #[test]
    fn json_form_is_index_array() {
        let u = m("x2*x5*x14");
        assert_eq!(serde_json::to_string(&u).unwrap(), "[2,5,14]");
        let back: Monomial = serde_json::from_str("[2,5,14]").unwrap();
        assert_eq!(back, u);
        assert!(serde_json::from_str::<Monomial>("[5,2]").is_err());
    }

    #[test]
    fn divisibility() {
        assert!(m("x2*x5").divides(&m("x2*x5*x9")));
        assert!(m("x2*x9").divides(&m("x2*x5*x9")));
        assert!(!m("x2*x6").divides(&m("x2*x5*x9")));
        assert!(Monomial::one().divides(&m("x3")));
        assert!(!m("x3*x4").divides(&m("x3")));
    }

    #[test]
    fn set_rejects_mixed_degrees() {
        assert!(MonomialSet::new(2, [m("x1*x3"), m("x1*x3*x5")]).is_err());
        let s = MonomialSet::new(2, [m("x2*x4"), m("x1*x3"), m("x1*x3")]).unwrap();
        assert_eq!(s.members(), &[m("x1*x3"), m("x2*x4")]);
    }

    #[test]
    fn context_rejects_zero_variables() {
        assert!(Context::new(0, 2).is_err());
        assert_eq!(ctx(9, 2).max_spread_degree(), 5);
        assert_eq!(ctx(14, 3).max_spread_degree(), 5);
    }
}
