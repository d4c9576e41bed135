//! Graded Betti numbers of t-spread strongly stable ideals and their
//! extremal Betti numbers.
//!
//! For such an ideal `I`,
//! `beta_{k,k+ell}(I) = sum over u in G(I)_ell of binom(max(u) - t(ell-1) - 1, k)`.
//! Tables describe the ideal `I` itself, not the quotient `S/I`: row `ell`
//! holds the generators of degree `ell` in column `k = 0`.
//!
//! Corners are computed two ways, directly from a table
//! ([`corners_from_table`]) and from the generators alone
//! ([`corners_via_characterization`]).

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::binom::pascal_row;
use crate::error::{Error, Result};
use crate::ideal::{stability_violation, SpreadIdeal};
use crate::monomial::max_index;

/// Sparse table of nonzero `beta_{k,k+ell}`, keyed by `(k, ell)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BettiTable {
    // keyed (ell, k) so iteration runs row by row
    entries: BTreeMap<(usize, usize), BigUint>,
}

impl BettiTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a table from `((k, ell), beta)` triples; zeros are dropped and
    /// repeated positions are summed.
    pub fn from_entries(entries: impl IntoIterator<Item = ((usize, usize), BigUint)>) -> Self {
        let mut table = Self::new();
        for ((k, ell), v) in entries {
            table.add(k, ell, v);
        }
        table
    }

    fn add(&mut self, k: usize, ell: usize, v: BigUint) {
        if v.is_zero() {
            return;
        }
        *self.entries.entry((ell, k)).or_default() += v;
    }

    /// `beta_{k,k+ell}`, zero when absent.
    pub fn get(&self, k: usize, ell: usize) -> BigUint {
        self.entries.get(&(ell, k)).cloned().unwrap_or_default()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Nonzero entries as `((k, ell), beta)`, row by row.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &BigUint)> {
        self.entries.iter().map(|(&(ell, k), v)| ((k, ell), v))
    }

    /// Rows with at least one nonzero entry, ascending.
    pub fn rows(&self) -> Vec<usize> {
        let mut rows: Vec<usize> = self.entries.keys().map(|&(ell, _)| ell).collect();
        rows.dedup();
        rows
    }

    /// Row `ell` as a dense vector over `k = 0 ..= last nonzero k`.
    pub fn row(&self, ell: usize) -> Vec<BigUint> {
        let cells: Vec<(usize, &BigUint)> = self
            .entries
            .range((ell, 0)..=(ell, usize::MAX))
            .map(|(&(_, k), v)| (k, v))
            .collect();
        let Some(&(last, _)) = cells.last() else {
            return Vec::new();
        };
        let mut out = vec![BigUint::zero(); last + 1];
        for (k, v) in cells {
            out[k] = v.clone();
        }
        out
    }

    /// Largest homological index with a nonzero entry.
    pub fn max_k(&self) -> Option<usize> {
        self.entries.keys().map(|&(_, k)| k).max()
    }
}

/// Extremal Betti numbers: positions `(k_i, ell_i)` with `k` strictly
/// decreasing and `ell` strictly increasing, and their values.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CornerSequence {
    pub corners: Vec<(usize, usize)>,
    pub values: Vec<BigUint>,
}

impl CornerSequence {
    pub fn len(&self) -> usize {
        self.corners.len()
    }

    pub fn is_empty(&self) -> bool {
        self.corners.is_empty()
    }

    pub fn all_values_one(&self) -> bool {
        self.values.iter().all(One::is_one)
    }

    fn sorted(mut pairs: Vec<((usize, usize), BigUint)>) -> Self {
        pairs.sort_by_key(|p| std::cmp::Reverse(p.0 .0));
        let (corners, values) = pairs.into_iter().unzip();
        Self { corners, values }
    }
}

fn require_stable(ideal: &SpreadIdeal) -> Result<()> {
    match stability_violation(ideal) {
        Some(v) => Err(Error::NotStronglyStable(v.to_string())),
        None => Ok(()),
    }
}

/// Row offset `max(u) - t(ell-1) - 1` of a generator of degree `ell`.
fn column_span(max: u32, t: u32, ell: usize) -> u64 {
    let shift = u64::from(t) * (ell as u64 - 1) + 1;
    u64::from(max)
        .checked_sub(shift)
        .expect("t-spread generator of degree ell has max >= t(ell-1)+1")
}

/// Graded Betti numbers of a t-spread strongly stable ideal.
pub fn graded_betti(ideal: &SpreadIdeal) -> Result<BettiTable> {
    require_stable(ideal)?;
    Ok(graded_betti_unchecked(ideal))
}

/// [`graded_betti`] without the stability check. The result is meaningless
/// for ideals that are not t-spread strongly stable.
pub fn graded_betti_unchecked(ideal: &SpreadIdeal) -> BettiTable {
    let t = ideal.ctx().t();
    let mut table = BettiTable::new();
    for (ell, gens) in ideal.graded_gens() {
        let mut histogram: BTreeMap<u64, u64> = BTreeMap::new();
        for u in gens {
            *histogram.entry(column_span(max_index(u), t, ell)).or_default() += 1;
        }
        for (span, count) in histogram {
            for (k, b) in pascal_row(span).into_iter().enumerate() {
                table.add(k, ell, b * count);
            }
        }
    }
    table
}

/// Corners read off a table: nonzero entries with no other nonzero entry
/// weakly south-east of them.
pub fn corners_from_table(table: &BettiTable) -> CornerSequence {
    let mut found = Vec::new();
    let mut blocking_k: Option<usize> = None;
    for ell in table.rows().into_iter().rev() {
        let row = table.row(ell);
        let last_k = row.len() - 1;
        if blocking_k.is_none_or(|b| last_k > b) {
            found.push(((last_k, ell), row[last_k].clone()));
            blocking_k = Some(last_k);
        }
    }
    CornerSequence::sorted(found)
}

/// Corners from the generators: `(k, ell)` is a corner iff
/// `k + t(ell-1) + 1 = max{max(u) : u in G(I)_ell}` and every generator `u`
/// of a higher degree `j` has `max(u) < k + t(j-1) + 1`. Its value is the
/// number of generators of degree `ell` attaining that maximum.
pub fn corners_via_characterization(ideal: &SpreadIdeal) -> Result<CornerSequence> {
    require_stable(ideal)?;
    Ok(corners_via_characterization_unchecked(ideal))
}

pub(crate) fn corners_via_characterization_unchecked(ideal: &SpreadIdeal) -> CornerSequence {
    let t = i64::from(ideal.ctx().t());
    let tops: Vec<(usize, u32, usize)> = ideal
        .graded_gens()
        .map(|(ell, gens)| {
            let top = gens.iter().map(max_index).max().unwrap_or(0);
            let count = gens.iter().filter(|u| max_index(u) == top).count();
            (ell, top, count)
        })
        .collect();
    let mut found = Vec::new();
    for (pos, &(ell, top, count)) in tops.iter().enumerate() {
        let k = i64::from(top) - t * (ell as i64 - 1) - 1;
        let unblocked = tops[pos + 1..]
            .iter()
            .all(|&(j, top_j, _)| i64::from(top_j) < k + t * (j as i64 - 1) + 1);
        if unblocked {
            found.push(((k as usize, ell), BigUint::from(count)));
        }
    }
    CornerSequence::sorted(found)
}

/// Regularity of the ideal: the largest row holding a nonzero entry.
pub fn regularity(table: &BettiTable) -> Result<usize> {
    table
        .rows()
        .last()
        .copied()
        .ok_or_else(|| Error::InvalidArgument("empty Betti table".into()))
}

/// Projective dimension of the ideal: the largest nonzero column.
pub fn proj_dim(table: &BettiTable) -> Result<usize> {
    table
        .max_k()
        .ok_or_else(|| Error::InvalidArgument("empty Betti table".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::borel_ideal;
    use crate::monomial::{parse_monomial_list, Context, Monomial};

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    fn example() -> SpreadIdeal {
        let c = Context::new(14, 3).unwrap();
        borel_ideal(&parse_monomial_list("x1*x14, x2*x5*x14, x2*x6*x9*x14").unwrap(), &c).unwrap()
    }

    #[test]
    fn example_diagram() {
        let table = graded_betti(&example()).unwrap();
        assert_eq!(table.rows(), vec![2, 3, 4]);
        assert_eq!(table.row(2), big(&[11, 55, 165, 330, 462, 462, 330, 165, 55, 11, 1]));
        assert_eq!(table.row(3), big(&[7, 28, 56, 70, 56, 28, 8, 1]));
        assert_eq!(table.row(4), big(&[3, 9, 10, 5, 1]));
        assert_eq!(regularity(&table).unwrap(), 4);
        assert_eq!(proj_dim(&table).unwrap(), 10);
    }

    #[test]
    fn example_corners_both_ways() {
        let ideal = example();
        let from_table = corners_from_table(&graded_betti(&ideal).unwrap());
        assert_eq!(from_table.corners, vec![(10, 2), (7, 3), (4, 4)]);
        assert_eq!(from_table.values, big(&[1, 1, 1]));
        assert_eq!(corners_via_characterization(&ideal).unwrap(), from_table);
    }

    #[test]
    fn first_column_counts_generators() {
        let ideal = example();
        let table = graded_betti(&ideal).unwrap();
        for (ell, gens) in ideal.graded_gens() {
            assert_eq!(table.get(0, ell), BigUint::from(gens.len()));
        }
    }

    #[test]
    fn single_generator_row() {
        let c = Context::new(12, 2).unwrap();
        let u: Monomial = "x2*x5*x9*x12".parse().unwrap();
        let ideal = SpreadIdeal::from_generators(c, [Monomial::new(vec![1, 3, 5, 7]).unwrap()]).unwrap();
        let table = graded_betti(&ideal).unwrap();
        assert_eq!(table.row(4), big(&[1]));

        let ideal = borel_ideal(&[u], &c).unwrap();
        let table = graded_betti(&ideal).unwrap();
        let corners = corners_via_characterization(&ideal).unwrap();
        assert_eq!(corners.corners, vec![(12 - 2 * 3 - 1, 4)]);
        assert_eq!(corners, corners_from_table(&table));
    }

    #[test]
    fn single_entry_table() {
        let table = BettiTable::from_entries([((3, 5), BigUint::from(4u32))]);
        let c = corners_from_table(&table);
        assert_eq!(c.corners, vec![(3, 5)]);
        assert_eq!(c.values, big(&[4]));
        assert_eq!((proj_dim(&table).unwrap(), regularity(&table).unwrap()), (3, 5));
    }

    #[test]
    fn empty_table() {
        let table = BettiTable::new();
        assert!(corners_from_table(&table).is_empty());
        assert!(regularity(&table).is_err());
        assert!(proj_dim(&table).is_err());
        let c = Context::new(6, 2).unwrap();
        assert!(graded_betti(&SpreadIdeal::zero(c)).unwrap().is_empty());
    }

    #[test]
    fn non_stable_input_is_rejected() {
        let c = Context::new(9, 2).unwrap();
        let ideal = SpreadIdeal::from_generators(c, ["x2*x5".parse().unwrap()]).unwrap();
        assert!(matches!(graded_betti(&ideal), Err(Error::NotStronglyStable(_))));
        assert!(corners_via_characterization(&ideal).is_err());
    }

    #[test]
    fn corner_blocked_by_lower_row() {
        let table = BettiTable::from_entries([
            ((0, 2), BigUint::from(1u32)),
            ((1, 2), BigUint::from(2u32)),
            ((3, 3), BigUint::from(1u32)),
        ]);
        assert_eq!(corners_from_table(&table).corners, vec![(3, 3)]);
    }
}
