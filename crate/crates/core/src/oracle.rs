//! Brute-force ground truth for `(α, β)`-regular subgroups.
//!
//! Every normal square-free set is a union of square-free conjugacy classes (squares
//! are closed under conjugation), so the oracle enumerates subsets of those classes.
//! For each candidate it counts `|S ∩ H|` and `|S ∩ Hx|` per right coset; `H` is
//! `(α, β)`-regular exactly when the outside counts are all equal to `β`. That fast
//! path is cross-checked against full graph construction by [`verify_fast_path`].
//! No closed-form theory is consulted here.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cayley::{build_graph, check_regular_set, make_connection_set};
use crate::elements::ElementSet;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::group::Group;
use crate::subgroup::{all_subgroups, right_cosets, Subgroup, DEFAULT_SUBGROUP_BUDGET};

pub type Pair = (usize, usize);

pub const DEFAULT_MAX_CANDIDATE_SETS: u64 = 1 << 20;

const CHUNK: u64 = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum EnumerationMode {
    Exhaustive,
    /// Uniform class-subsets; feasibility results are lower bounds only.
    Sampled {
        samples: u64,
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_candidate_sets: u64,
    pub mode: EnumerationMode,
    pub execution: Execution,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        Self {
            max_candidate_sets: DEFAULT_MAX_CANDIDATE_SETS,
            mode: EnumerationMode::Exhaustive,
            execution: Execution::default(),
        }
    }
}

impl EnumerationBudget {
    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    /// Whether an exhaustive run over `classes` square-free classes fits.
    pub fn admits(&self, classes: usize) -> bool {
        classes < 64 && (1u64 << classes) <= self.max_candidate_sets
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairEvidence {
    /// Number of connection sets realising the pair (within the enumerated space).
    pub count: u64,
    /// The first realising set in enumeration order.
    pub witness: ElementSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub pairs: BTreeMap<Pair, PairEvidence>,
    pub mode: EnumerationMode,
    /// Number of square-free conjugacy classes.
    pub classes: usize,
    /// `2^classes`, the number of normal square-free sets including `∅`.
    pub candidate_space: u64,
}

impl OracleReport {
    pub fn pair_set(&self) -> BTreeSet<Pair> {
        self.pairs.keys().copied().collect()
    }

    pub fn is_authoritative(&self) -> bool {
        self.mode == EnumerationMode::Exhaustive
    }

    pub fn contains(&self, pair: Pair) -> bool {
        self.pairs.contains_key(&pair)
    }
}

/// The square-free conjugacy classes, ordered by minimal element.
pub fn candidate_space(g: &Group) -> Vec<ElementSet> {
    let squares = g.squares();
    g.conjugacy_classes()
        .into_iter()
        .filter(|c| c.is_disjoint(&squares))
        .collect()
}

/// Per-class intersection sizes with every right coset (slot 0 is `H`).
struct CosetProfile {
    classes: Vec<ElementSet>,
    counts: Vec<Vec<u32>>,
    cosets: usize,
}

impl CosetProfile {
    fn new(g: &Group, h: &Subgroup) -> Self {
        let classes = candidate_space(g);
        let decomposition = right_cosets(g, h);
        let counts = classes
            .iter()
            .map(|c| {
                decomposition
                    .cosets()
                    .iter()
                    .map(|coset| coset.intersection_len(c) as u32)
                    .collect()
            })
            .collect();
        Self {
            classes,
            counts,
            cosets: decomposition.len(),
        }
    }

    fn evaluate(&self, mask: u64, scratch: &mut [u32]) -> Option<Pair> {
        scratch.fill(0);
        let mut bits = mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            for (acc, c) in scratch.iter_mut().zip(&self.counts[i]) {
                *acc += c;
            }
        }
        let beta = scratch[1];
        scratch[2..]
            .iter()
            .all(|&c| c == beta)
            .then_some((scratch[0] as usize, beta as usize))
    }

    fn set_of(&self, universe: usize, mask: u64) -> ElementSet {
        let mut s = ElementSet::empty(universe);
        for (i, class) in self.classes.iter().enumerate() {
            if mask >> i & 1 == 1 {
                s.union_with(class);
            }
        }
        s
    }
}

type Partial = BTreeMap<Pair, (u64, u64)>;

fn merge(mut a: Partial, b: Partial) -> Partial {
    for (pair, (count, mask)) in b {
        let entry = a.entry(pair).or_insert((0, u64::MAX));
        entry.0 += count;
        entry.1 = entry.1.min(mask);
    }
    a
}

/// Exact feasible pairs (exhaustive mode) for a proper subgroup `h`.
pub fn enumerate_pairs(
    g: &Group,
    h: &Subgroup,
    budget: &EnumerationBudget,
) -> Result<OracleReport> {
    if h.is_whole() {
        return Err(Error::WholeGroup);
    }
    let profile = CosetProfile::new(g, h);
    let k = profile.classes.len();
    let candidate_space = if k < 64 { 1u64 << k } else { u64::MAX };

    let partial = match budget.mode {
        EnumerationMode::Exhaustive => {
            if !budget.admits(k) {
                return Err(Error::BudgetExceeded {
                    classes: k,
                    budget: budget.max_candidate_sets,
                });
            }
            let chunks = candidate_space.div_ceil(CHUNK) as usize;
            budget.execution.map_reduce(
                chunks,
                Partial::new(),
                |chunk| {
                    let start = (chunk as u64 * CHUNK).max(1);
                    let end = ((chunk as u64 + 1) * CHUNK).min(candidate_space);
                    let mut scratch = vec![0u32; profile.cosets];
                    let mut local = Partial::new();
                    for mask in start..end {
                        if let Some(pair) = profile.evaluate(mask, &mut scratch) {
                            let entry = local.entry(pair).or_insert((0, mask));
                            entry.0 += 1;
                        }
                    }
                    local
                },
                merge,
            )
        }
        EnumerationMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let top = if k >= 64 { u64::MAX } else { candidate_space };
            let masks: Vec<u64> = (0..samples)
                .map(|_| if top <= 1 { 0 } else { rng.gen_range(1..top) })
                .filter(|&m| m != 0)
                .collect();
            let mut scratch = vec![0u32; profile.cosets];
            let mut local = Partial::new();
            for mask in masks {
                if let Some(pair) = profile.evaluate(mask, &mut scratch) {
                    let entry = local.entry(pair).or_insert((0, mask));
                    entry.0 += 1;
                    entry.1 = entry.1.min(mask);
                }
            }
            local
        }
    };

    let pairs = partial
        .into_iter()
        .map(|(pair, (count, mask))| {
            let witness = profile.set_of(g.order(), mask);
            (pair, PairEvidence { count, witness })
        })
        .collect();
    Ok(OracleReport {
        pairs,
        mode: budget.mode,
        classes: k,
        candidate_space,
    })
}

/// Same answer as [`enumerate_pairs`] but through full graph construction per candidate.
///
/// Exhaustive and sequential; only meant for small inputs and for validating the fast path.
pub fn enumerate_pairs_by_graph(g: &Group, h: &Subgroup) -> Result<BTreeMap<Pair, u64>> {
    if h.is_whole() {
        return Err(Error::WholeGroup);
    }
    let classes = candidate_space(g);
    let mut out = BTreeMap::new();
    for mask in 1u64..(1u64 << classes.len()) {
        let mut s = g.empty_set();
        for (i, c) in classes.iter().enumerate() {
            if mask >> i & 1 == 1 {
                s.union_with(c);
            }
        }
        let graph = build_graph(g, &make_connection_set(g, s)?);
        if let Some(pair) = check_regular_set(&graph, h.elements())?.pair() {
            *out.entry(pair).or_insert(0) += 1;
        }
    }
    Ok(out)
}

/// Compares the coset-count shortcut with full graph regularity checks on
/// `instances` random `(G, H, S)` triples.
pub fn verify_fast_path(seed: u64, instances: usize) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    while done < instances {
        let g = random_small_group(&mut rng);
        let subgroups = all_subgroups(&g, DEFAULT_SUBGROUP_BUDGET)?;
        let proper: Vec<&Subgroup> = subgroups.iter().filter(|h| !h.is_whole()).collect();
        let h = proper[rng.gen_range(0..proper.len())];
        let profile = CosetProfile::new(&g, h);
        let k = profile.classes.len();
        if k == 0 {
            continue;
        }
        let mask = rng.gen_range(1..(1u64 << k.min(63)));
        let mut scratch = vec![0u32; profile.cosets];
        let fast = profile.evaluate(mask, &mut scratch);
        let s = make_connection_set(&g, profile.set_of(g.order(), mask))?;
        let slow = check_regular_set(&build_graph(&g, &s), h.elements())?.pair();
        if fast != slow {
            return Err(Error::FastPathMismatch(format!(
                "{} with H = {:?}, S = {:?}: counts give {fast:?}, graph gives {slow:?}",
                g.spec(),
                h.elements(),
                s.elements()
            )));
        }
        done += 1;
    }
    Ok(())
}

/// A random abelian (order <= 48) or dihedral (n <= 16) group.
pub fn random_small_group(rng: &mut impl Rng) -> Group {
    if rng.gen_bool(0.5) {
        let mut factors = Vec::new();
        let mut order = 1;
        loop {
            let m = rng.gen_range(2..=8);
            if order * m > 48 {
                break;
            }
            factors.push(m);
            order *= m;
            if rng.gen_bool(0.4) {
                break;
            }
        }
        if factors.is_empty() {
            factors.push(rng.gen_range(2..=8));
        }
        Group::abelian(&factors).expect("valid factors")
    } else {
        Group::dihedral(rng.gen_range(3..=16)).expect("n >= 3")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subgroup::generate_subgroup;

    #[test]
    fn d8_candidate_space() {
        let g = Group::dihedral(4).unwrap();
        let classes = candidate_space(&g);
        assert_eq!(
            classes,
            vec![g.set_of([1, 3]), g.set_of([4, 6]), g.set_of([5, 7])]
        );
        assert!(candidate_space(&Group::abelian(&[3]).unwrap()).is_empty());
        let ab = Group::abelian(&[2, 4]).unwrap();
        let cs = candidate_space(&ab);
        assert_eq!(cs.len(), ab.non_squares().len());
        assert!(cs.iter().all(|c| c.len() == 1));
    }

    #[test]
    fn every_union_of_classes_is_a_connection_set() {
        let g = Group::dihedral(6).unwrap();
        let classes = candidate_space(&g);
        for mask in 0u64..(1 << classes.len()) {
            let mut s = g.empty_set();
            for (i, c) in classes.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    s.union_with(c);
                }
            }
            assert!(make_connection_set(&g, s).is_ok());
        }
    }

    #[test]
    fn d8_reflection_subgroup() {
        let g = Group::dihedral(4).unwrap();
        let h = generate_subgroup(&g, &[g.reflection(2)]);
        let report = enumerate_pairs(&g, &h, &EnumerationBudget::default()).unwrap();
        assert_eq!(report.pair_set(), BTreeSet::from([(1, 1)]));
        let ev = &report.pairs[&(1, 1)];
        assert_eq!(ev.count, 2);
        assert_eq!(ev.witness, g.set_of([1, 3, 4, 6]));
    }

    #[test]
    fn d8_index_two_subgroup() {
        let g = Group::dihedral(4).unwrap();
        let h = generate_subgroup(&g, &[g.rotation(2), g.reflection(1)]);
        let report = enumerate_pairs(&g, &h, &EnumerationBudget::default()).unwrap();
        let expected: BTreeSet<Pair> = [(0, 2), (0, 4), (2, 0), (2, 2), (2, 4)]
            .into_iter()
            .collect();
        assert_eq!(report.pair_set(), expected);
    }

    #[test]
    fn c4_order_two_subgroup() {
        let g = Group::abelian(&[4]).unwrap();
        let h = generate_subgroup(&g, &[2]);
        let report = enumerate_pairs(&g, &h, &EnumerationBudget::default()).unwrap();
        assert_eq!(report.pair_set(), BTreeSet::from([(0, 1), (0, 2)]));
        assert_eq!(report.pairs[&(0, 1)].count, 2);
        assert_eq!(report.pairs[&(0, 2)].count, 1);
    }

    #[test]
    fn whole_group_is_rejected() {
        let g = Group::abelian(&[4]).unwrap();
        assert_eq!(
            enumerate_pairs(&g, &Subgroup::whole(&g), &EnumerationBudget::default()).unwrap_err(),
            Error::WholeGroup
        );
    }

    #[test]
    fn budget_gate() {
        let g = Group::abelian(&[2, 2, 2, 2]).unwrap();
        let h = generate_subgroup(&g, &[]);
        let tight = EnumerationBudget {
            max_candidate_sets: 1 << 10,
            ..Default::default()
        };
        assert_eq!(
            enumerate_pairs(&g, &h, &tight).unwrap_err(),
            Error::BudgetExceeded {
                classes: 15,
                budget: 1024
            }
        );
        let sampled = EnumerationBudget {
            mode: EnumerationMode::Sampled {
                samples: 500,
                seed: 7,
            },
            ..tight
        };
        let report = enumerate_pairs(&g, &h, &sampled).unwrap();
        assert!(!report.is_authoritative());
        let again = enumerate_pairs(&g, &h, &sampled).unwrap();
        assert_eq!(report, again);
    }

    #[test]
    fn fast_path_matches_graphs_exhaustively_on_small_groups() {
        for g in [
            Group::dihedral(4).unwrap(),
            Group::dihedral(5).unwrap(),
            Group::dihedral(6).unwrap(),
            Group::abelian(&[2, 4]).unwrap(),
            Group::abelian(&[8]).unwrap(),
        ] {
            for h in all_subgroups(&g, DEFAULT_SUBGROUP_BUDGET).unwrap() {
                if h.is_whole() {
                    continue;
                }
                let fast = enumerate_pairs(&g, &h, &EnumerationBudget::default()).unwrap();
                let slow = enumerate_pairs_by_graph(&g, &h).unwrap();
                let fast_counts: BTreeMap<Pair, u64> =
                    fast.pairs.iter().map(|(p, e)| (*p, e.count)).collect();
                assert_eq!(fast_counts, slow, "{} {:?}", g.spec(), h.elements());
            }
        }
    }

    #[test]
    fn fast_path_random_instances() {
        verify_fast_path(2024, 100).unwrap();
    }

    #[test]
    fn sequential_and_parallel_reports_identical() {
        let g = Group::abelian(&[2, 2, 4]).unwrap();
        for h in all_subgroups(&g, DEFAULT_SUBGROUP_BUDGET).unwrap() {
            if h.is_whole() {
                continue;
            }
            let seq = EnumerationBudget::default().with_execution(Execution::Sequential);
            let par = EnumerationBudget::default().with_execution(Execution::Parallel);
            assert_eq!(
                enumerate_pairs(&g, &h, &seq).unwrap(),
                enumerate_pairs(&g, &h, &par).unwrap()
            );
        }
    }
}
