//! t-spread strongly stable ideals: Borel closures, shadows and minimal
//! generators.
//!
//! A [`SpreadIdeal`] only stores its minimal generators `G(I)`, grouped by
//! degree. Two closure routes exist:
//!
//! * [`borel_closure_degree`] follows the definition literally, a
//!   breadth-first search over single moves `x_i (w / x_j)`;
//! * [`borel_ideal`] never materialises closures. It walks the cone of
//!   monomials componentwise below each Borel generator and prunes every
//!   subtree whose largest completion is already a multiple of a
//!   lower-degree generator. Closures can be astronomically larger than
//!   `G(I)`, so this is the route used by the constructions.
//!
//! [`borel_ideal_by_closure`] assembles an ideal from the BFS closures and is
//! kept as the reference the fast route is tested against.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::monomial::{Context, Monomial, MonomialSet};

/// A t-spread monomial ideal given by its minimal generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpreadIdeal {
    ctx: Context,
    gens: BTreeMap<usize, MonomialSet>,
}

impl SpreadIdeal {
    /// The zero ideal.
    pub fn zero(ctx: Context) -> Self {
        Self {
            ctx,
            gens: BTreeMap::new(),
        }
    }

    /// The ideal generated by `gens` (any order, duplicates and
    /// non-minimal elements allowed). Every generator must be t-spread.
    /// Strong stability is not checked.
    pub fn from_generators(ctx: Context, gens: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let mut by_degree: BTreeMap<usize, BTreeSet<Monomial>> = BTreeMap::new();
        for g in gens {
            check_spread(&g, &ctx)?;
            by_degree.entry(g.degree()).or_default().insert(g);
        }
        let mut kept: Vec<Monomial> = Vec::new();
        let mut out = BTreeMap::new();
        for (deg, set) in by_degree {
            let survivors: Vec<Monomial> = set
                .into_iter()
                .filter(|g| !kept.iter().any(|h| h.divides(g)))
                .collect();
            if survivors.is_empty() {
                continue;
            }
            kept.extend(survivors.iter().cloned());
            out.insert(deg, MonomialSet::from_sorted_unchecked(deg, survivors));
        }
        Ok(Self { ctx, gens: out })
    }

    pub(crate) fn from_parts_unchecked(ctx: Context, gens: BTreeMap<usize, MonomialSet>) -> Self {
        debug_assert!(gens.values().all(|s| !s.is_empty()));
        Self { ctx, gens }
    }

    pub fn ctx(&self) -> &Context {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// `G(I)_ell`, if nonempty.
    pub fn gens_in_degree(&self, ell: usize) -> Option<&MonomialSet> {
        self.gens.get(&ell)
    }

    /// Nonempty generator degrees with their generators, ascending.
    pub fn graded_gens(&self) -> impl Iterator<Item = (usize, &MonomialSet)> {
        self.gens.iter().map(|(d, s)| (*d, s))
    }

    pub fn generators(&self) -> impl Iterator<Item = &Monomial> {
        self.gens.values().flat_map(|s| s.iter())
    }

    pub fn num_generators(&self) -> usize {
        self.gens.values().map(MonomialSet::len).sum()
    }

    /// Initial degree; `None` for the zero ideal.
    pub fn indeg(&self) -> Option<usize> {
        self.gens.keys().next().copied()
    }

    /// Largest generator degree; `None` for the zero ideal.
    pub fn max_gen_degree(&self) -> Option<usize> {
        self.gens.keys().next_back().copied()
    }
}

impl fmt::Display for SpreadIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (pos, g) in self.generators().enumerate() {
            if pos > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

fn check_spread(u: &Monomial, ctx: &Context) -> Result<()> {
    u.check_in(ctx)?;
    if !u.spread_ok(ctx.t()) {
        return Err(Error::NotSpread {
            monomial: u.to_string(),
            t: ctx.t(),
        });
    }
    Ok(())
}

/// All t-spread monomials of degree `deg(u)` reachable from `u` by iterated
/// moves `x_i (w / x_j)`, `i < j`, through t-spread intermediates.
pub fn borel_closure_degree(u: &Monomial, ctx: &Context) -> Result<MonomialSet> {
    check_spread(u, ctx)?;
    let mut seen: BTreeSet<Monomial> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(u.clone());
    queue.push_back(u.clone());
    while let Some(w) = queue.pop_front() {
        let idx = w.indices();
        for pos in 0..idx.len() {
            let j = idx[pos];
            for i in 1..j {
                if idx.binary_search(&i).is_ok() {
                    continue;
                }
                let mut v: Vec<u32> = idx.to_vec();
                v.remove(pos);
                let at = v.partition_point(|&x| x < i);
                v.insert(at, i);
                let v = Monomial::from_sorted_unchecked(v);
                if v.spread_ok(ctx.t()) && !seen.contains(&v) {
                    seen.insert(v.clone());
                    queue.push_back(v);
                }
            }
        }
    }
    Ok(MonomialSet::from_sorted_unchecked(
        u.degree(),
        seen.into_iter().collect(),
    ))
}

/// Prefix tree over generator index sequences. In a t-spread strongly stable
/// ideal a t-spread monomial lies in the ideal exactly when one of its
/// prefixes is a minimal generator, so membership is a single walk.
#[derive(Debug, Default)]
pub(crate) struct PrefixTrie {
    nodes: Vec<TrieNode>,
}

#[derive(Debug, Default)]
struct TrieNode {
    children: HashMap<u32, usize>,
    terminal: bool,
}

impl PrefixTrie {
    pub(crate) fn new() -> Self {
        Self {
            nodes: vec![TrieNode::default()],
        }
    }

    pub(crate) fn insert(&mut self, seq: &[u32]) {
        let mut node = 0;
        for &x in seq {
            node = match self.nodes[node].children.get(&x) {
                Some(&c) => c,
                None => {
                    self.nodes.push(TrieNode::default());
                    let c = self.nodes.len() - 1;
                    self.nodes[node].children.insert(x, c);
                    c
                }
            };
        }
        self.nodes[node].terminal = true;
    }

    /// Whether some prefix of `seq` (possibly all of it) was inserted.
    pub(crate) fn covers(&self, seq: impl IntoIterator<Item = u32>) -> bool {
        let mut node = 0;
        for x in seq {
            if self.nodes[node].terminal {
                return true;
            }
            match self.nodes[node].children.get(&x) {
                Some(&c) => node = c,
                None => return false,
            }
        }
        self.nodes[node].terminal
    }
}

/// Minimal generators contributed by the cone of `omega`: t-spread
/// monomials `v` with `v_s <= omega_s` for every position, that are not
/// covered by `trie`.
fn cone_generators(omega: &[u32], gap: u32, trie: &PrefixTrie, out: &mut BTreeSet<Monomial>) {
    fn walk(
        omega: &[u32],
        gap: u32,
        trie: &PrefixTrie,
        prefix: &mut Vec<u32>,
        out: &mut BTreeSet<Monomial>,
    ) {
        let q = prefix.len();
        let lo = prefix.last().map_or(1, |&p| p + gap);
        let hi = omega[q];
        if lo > hi {
            return;
        }
        // The largest completion of prefix + [x] is omega's own tail. Covered
        // monomials form a down-set, so uncovered choices of x are a suffix
        // of [lo, hi].
        let covered = |x: u32| {
            trie.covers(
                prefix
                    .iter()
                    .copied()
                    .chain(std::iter::once(x))
                    .chain(omega[q + 1..].iter().copied()),
            )
        };
        let (mut a, mut b) = (lo, hi + 1);
        while a < b {
            let mid = a + (b - a) / 2;
            if covered(mid) {
                a = mid + 1;
            } else {
                b = mid;
            }
        }
        for x in a..=hi {
            prefix.push(x);
            if q + 1 == omega.len() {
                out.insert(Monomial::from_sorted_unchecked(prefix.clone()));
            } else {
                walk(omega, gap, trie, prefix, out);
            }
            prefix.pop();
        }
    }
    if omega.is_empty() {
        if !trie.covers(std::iter::empty()) {
            out.insert(Monomial::one());
        }
        return;
    }
    walk(omega, gap, trie, &mut Vec::with_capacity(omega.len()), out);
}

/// `B_t(u_1, ..., u_r)`, the smallest t-spread strongly stable ideal
/// containing the given monomials, as its minimal generators.
pub fn borel_ideal(gens: &[Monomial], ctx: &Context) -> Result<SpreadIdeal> {
    let mut by_degree: BTreeMap<usize, BTreeSet<&Monomial>> = BTreeMap::new();
    for g in gens {
        check_spread(g, ctx)?;
        by_degree.entry(g.degree()).or_default().insert(g);
    }
    let mut trie = PrefixTrie::new();
    let mut out = BTreeMap::new();
    for (deg, borel_gens) in by_degree {
        let mut found = BTreeSet::new();
        for omega in borel_gens {
            cone_generators(omega.indices(), ctx.gap(), &trie, &mut found);
        }
        if found.is_empty() {
            continue;
        }
        for g in &found {
            trie.insert(g.indices());
        }
        out.insert(
            deg,
            MonomialSet::from_sorted_unchecked(deg, found.into_iter().collect()),
        );
    }
    Ok(SpreadIdeal::from_parts_unchecked(*ctx, out))
}

/// Reference construction of `B_t(gens)`: union the BFS closures degree by
/// degree, then drop every monomial divisible by a lower-degree survivor.
pub fn borel_ideal_by_closure(gens: &[Monomial], ctx: &Context) -> Result<SpreadIdeal> {
    let mut closures: BTreeMap<usize, BTreeSet<Monomial>> = BTreeMap::new();
    for g in gens {
        let cl = borel_closure_degree(g, ctx)?;
        closures
            .entry(g.degree())
            .or_default()
            .extend(cl.into_members());
    }
    let mut kept: Vec<Monomial> = Vec::new();
    let mut out = BTreeMap::new();
    for (deg, set) in closures {
        let survivors: Vec<Monomial> = set
            .into_iter()
            .filter(|u| !kept.iter().any(|h| h.divides(u)))
            .collect();
        if survivors.is_empty() {
            continue;
        }
        kept.extend(survivors.iter().cloned());
        out.insert(deg, MonomialSet::from_sorted_unchecked(deg, survivors));
    }
    Ok(SpreadIdeal::from_parts_unchecked(*ctx, out))
}

/// `Shad_t(T)`: all t-spread `x_i w` with `w` in `T`. May be empty.
pub fn shadow(set: &MonomialSet, ctx: &Context) -> MonomialSet {
    let mut out = BTreeSet::new();
    for w in set {
        for i in 1..=ctx.n() {
            if let Some(v) = w.times_var(i) {
                if v.spread_ok(ctx.t()) {
                    out.insert(v);
                }
            }
        }
    }
    MonomialSet::from_sorted_unchecked(set.degree() + 1, out.into_iter().collect())
}

/// `Shad_t^m(T)`, the `m`-fold shadow; `m` must be positive.
pub fn iterated_shadow(set: &MonomialSet, ctx: &Context, m: usize) -> Result<MonomialSet> {
    if m == 0 {
        return Err(Error::InvalidArgument("shadow power must be positive".into()));
    }
    let mut cur = shadow(set, ctx);
    for _ in 1..m {
        cur = shadow(&cur, ctx);
    }
    Ok(cur)
}

/// A move `x_to (g / x_from)` applied to a minimal generator `g` whose
/// result is t-spread but not in the ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityViolation {
    pub generator: Monomial,
    pub from: u32,
    pub to: u32,
    pub result: Monomial,
}

impl fmt::Display for StabilityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x{}*({}/x{}) = {} is t-spread but not in the ideal",
            self.to, self.generator, self.from, self.result
        )
    }
}

/// First violating move, or `None` when the ideal is t-spread strongly
/// stable.
///
/// Every admissible move is a chain of unit decrements `i_s -> i_s - 1`
/// through t-spread monomials, and a decrement of a multiple `g m` either
/// stays a multiple of `g` or is a multiple of a decrement of `g`. So it is
/// enough to test unit decrements of minimal generators. Degrees are
/// processed in ascending order; once all lower degrees passed, membership
/// of a degree-`ell` monomial reduces to a prefix lookup.
pub fn stability_violation(ideal: &SpreadIdeal) -> Option<StabilityViolation> {
    let gap = ideal.ctx.gap();
    let mut trie = PrefixTrie::new();
    for (_, set) in ideal.graded_gens() {
        let same_degree: HashSet<&[u32]> = set.iter().map(Monomial::indices).collect();
        for g in set {
            let idx = g.indices();
            for s in 0..idx.len() {
                let lowered = idx[s] - 1;
                let floor = if s == 0 { 1 } else { idx[s - 1] + gap };
                if lowered < floor {
                    continue;
                }
                let mut v = idx.to_vec();
                v[s] = lowered;
                if same_degree.contains(v.as_slice()) || trie.covers(v.iter().copied()) {
                    continue;
                }
                return Some(StabilityViolation {
                    generator: g.clone(),
                    from: idx[s],
                    to: lowered,
                    result: Monomial::from_sorted_unchecked(v),
                });
            }
        }
        for g in set {
            trie.insert(g.indices());
        }
    }
    None
}

pub fn is_strongly_stable(ideal: &SpreadIdeal) -> bool {
    stability_violation(ideal).is_none()
}

/// Whether some minimal generator divides `u`.
pub fn contains(ideal: &SpreadIdeal, u: &Monomial) -> bool {
    ideal
        .gens
        .range(..=u.degree())
        .any(|(_, set)| set.iter().any(|g| g.divides(u)))
}
