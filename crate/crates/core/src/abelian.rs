//! Closed-form predictions for abelian groups.
//!
//! For a subgroup `H` of `G`, `L(H)` is the least number of non-squares in a
//! non-trivial right coset. For abelian `G` the feasible `(α, β)` pairs are exactly
//! `0 ≤ α ≤ |NSq ∩ H|`, `0 ≤ β ≤ L(H)` minus the origin, and `L(H)` equals `|H|`
//! when all squares lie in `H` and `|NSq ∩ H|` otherwise.

use serde::Serialize;

use crate::cayley::{build_graph, check_regular_set, make_connection_set, ConnectionSet};
use crate::elements::ElementSet;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::subgroup::{generate_subgroup, right_cosets, Subgroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LBranch {
    #[serde(rename = "sq-inside-H")]
    SquaresInside,
    #[serde(rename = "sq-outside-H")]
    SquareOutside,
    /// `H = G`: there are no non-trivial cosets.
    WholeGroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LValue {
    /// `None` when `H = G` (the minimum over an empty set).
    pub value: Option<usize>,
    pub branch: LBranch,
    /// A coset representative attaining the minimum.
    pub argmin: Option<usize>,
}

fn branch_of(g: &Group, h: &Subgroup) -> LBranch {
    if h.is_whole() {
        LBranch::WholeGroup
    } else if g.squares().is_subset(h.elements()) {
        LBranch::SquaresInside
    } else {
        LBranch::SquareOutside
    }
}

/// `L(H)` by scanning every non-trivial coset. Valid for any group.
pub fn l_of_h_bruteforce(g: &Group, h: &Subgroup) -> LValue {
    let nsq = g.non_squares();
    let best = right_cosets(g, h)
        .non_trivial()
        .map(|(rep, coset)| (coset.intersection_len(&nsq), rep))
        .min();
    LValue {
        value: best.map(|(v, _)| v),
        branch: branch_of(g, h),
        argmin: best.map(|(_, rep)| rep),
    }
}

/// `L(H)` from the squares-inside / square-outside dichotomy.
pub fn l_of_h_abelian_closed_form(g: &Group, h: &Subgroup) -> Result<LValue> {
    require_abelian(g)?;
    let branch = branch_of(g, h);
    let value = match branch {
        LBranch::WholeGroup => None,
        LBranch::SquaresInside => Some(h.order()),
        LBranch::SquareOutside => Some(g.non_squares().intersection_len(h.elements())),
    };
    let brute = l_of_h_bruteforce(g, h);
    debug_assert_eq!(value, brute.value, "closed form disagrees with coset scan");
    Ok(LValue {
        value,
        branch,
        argmin: brute.argmin,
    })
}

fn require_abelian(g: &Group) -> Result<()> {
    if g.is_abelian() {
        Ok(())
    } else {
        Err(Error::NotAbelian)
    }
}

fn require_proper(h: &Subgroup) -> Result<()> {
    if h.is_whole() {
        Err(Error::WholeGroup)
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairRegion {
    pub alpha_max: usize,
    pub beta_max: usize,
    pub excludes_origin: bool,
}

impl PairRegion {
    pub fn contains(&self, alpha: usize, beta: usize) -> bool {
        alpha <= self.alpha_max
            && beta <= self.beta_max
            && !(self.excludes_origin && alpha == 0 && beta == 0)
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..=self.alpha_max)
            .flat_map(|a| (0..=self.beta_max).map(move |b| (a, b)))
            .filter(|&(a, b)| self.contains(a, b))
            .collect()
    }

    pub fn len(&self) -> usize {
        (self.alpha_max + 1) * (self.beta_max + 1) - usize::from(self.excludes_origin)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn feasible_pairs_abelian(g: &Group, h: &Subgroup) -> Result<PairRegion> {
    require_abelian(g)?;
    require_proper(h)?;
    let l = l_of_h_abelian_closed_form(g, h)?;
    Ok(PairRegion {
        alpha_max: g.non_squares().intersection_len(h.elements()),
        beta_max: l.value.expect("proper subgroup"),
        excludes_origin: true,
    })
}

fn check_feasible(g: &Group, h: &Subgroup, alpha: usize, beta: usize) -> Result<PairRegion> {
    let region = feasible_pairs_abelian(g, h)?;
    if region.contains(alpha, beta) {
        return Ok(region);
    }
    let reason = if alpha == 0 && beta == 0 {
        "the empty connection set is excluded".to_string()
    } else if alpha > region.alpha_max {
        format!("alpha exceeds |NSq(G) ∩ H| = {}", region.alpha_max)
    } else {
        format!("beta exceeds L(H) = {}", region.beta_max)
    };
    Err(Error::Infeasible {
        alpha,
        beta,
        reason,
    })
}

/// The lowest-index `(α, β)` witness, verified against the graph before returning.
pub fn witness_abelian(
    g: &Group,
    h: &Subgroup,
    alpha: usize,
    beta: usize,
) -> Result<ConnectionSet> {
    check_feasible(g, h, alpha, beta)?;
    let nsq = g.non_squares();
    let mut s = g.empty_set();
    for x in nsq.intersection(h.elements()).iter().take(alpha) {
        s.insert(x);
    }
    for (_, coset) in right_cosets(g, h).non_trivial() {
        for x in coset.intersection(&nsq).iter().take(beta) {
            s.insert(x);
        }
    }
    let connection = make_connection_set(g, s)?;
    verify_witness(g, h, &connection, alpha, beta)?;
    Ok(connection)
}

pub(crate) fn verify_witness(
    g: &Group,
    h: &Subgroup,
    connection: &ConnectionSet,
    alpha: usize,
    beta: usize,
) -> Result<()> {
    let graph = build_graph(g, connection);
    let got = check_regular_set(&graph, h.elements())?.pair();
    if got == Some((alpha, beta)) {
        Ok(())
    } else {
        Err(Error::WitnessVerification(format!(
            "expected ({alpha}, {beta}), graph gives {got:?}"
        )))
    }
}

/// `C(n, k)` in 128 bits.
pub fn binomial(n: usize, k: usize) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.checked_mul((n - i) as u128).ok_or(Error::CountOverflow)? / (i as u128 + 1);
    }
    Ok(r)
}

/// Number of `(α, β)`-witnesses: every non-square subset of an abelian group is a
/// connection set, so choices are independent across `H` and each coset.
pub fn count_witnesses_abelian(g: &Group, h: &Subgroup, alpha: usize, beta: usize) -> Result<u128> {
    check_feasible(g, h, alpha, beta)?;
    let nsq = g.non_squares();
    let mut total = binomial(nsq.intersection_len(h.elements()), alpha)?;
    for (_, coset) in right_cosets(g, h).non_trivial() {
        total = total
            .checked_mul(binomial(coset.intersection_len(&nsq), beta)?)
            .ok_or(Error::CountOverflow)?;
    }
    Ok(total)
}

/// `C(L, β)^[G:H] · C(|NSq ∩ H|, α)`, the closed form as published. Kept for comparison
/// with [`count_witnesses_abelian`]; it is not an exact count in general.
pub fn stated_witness_count(g: &Group, h: &Subgroup, alpha: usize, beta: usize) -> Result<u128> {
    let region = check_feasible(g, h, alpha, beta)?;
    let base = binomial(region.beta_max, beta)?;
    let index = h.index_in(g) as u32;
    base.checked_pow(index)
        .and_then(|p| p.checked_mul(binomial(region.alpha_max, alpha).ok()?))
        .ok_or(Error::CountOverflow)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PerfectCodeReason {
    SquaresInside,
    NonSquareInside,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PerfectCodeVerdict {
    pub is_perfect_code: bool,
    pub reason: PerfectCodeReason,
}

pub fn is_subgroup_perfect_code_abelian(g: &Group, h: &Subgroup) -> Result<PerfectCodeVerdict> {
    require_abelian(g)?;
    let reason = if g.squares().is_subset(h.elements()) {
        PerfectCodeReason::SquaresInside
    } else if !g.non_squares().is_disjoint(h.elements()) {
        PerfectCodeReason::NonSquareInside
    } else {
        PerfectCodeReason::Neither
    };
    Ok(PerfectCodeVerdict {
        is_perfect_code: reason != PerfectCodeReason::Neither,
        reason,
    })
}

/// `G = E × K` with `E` the largest elementary abelian 2-group direct factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E2Decomposition {
    pub e2_orders: Vec<usize>,
    /// Primary cyclic orders of `K`.
    pub complement_orders: Vec<usize>,
    pub e2: Subgroup,
    pub complement: Subgroup,
}

impl E2Decomposition {
    /// Splits `x = e·k` with `e ∈ E`, `k ∈ K`.
    pub fn project(&self, g: &Group, x: usize) -> (usize, usize) {
        self.e2
            .elements()
            .iter()
            .map(|e| (e, g.mul(g.inv(e), x)))
            .find(|&(_, k)| self.complement.contains(k))
            .expect("E × K covers G")
    }
}

pub fn e2_decomposition(g: &Group) -> Result<E2Decomposition> {
    require_abelian(g)?;
    let factors = g.factor_orders().ok_or(Error::NoFactorForm)?.to_vec();
    let mut e2_orders = Vec::new();
    let mut complement_orders = Vec::new();
    let mut e_gens = Vec::new();
    let mut k_gens = Vec::new();
    for (i, &m) in factors.iter().enumerate() {
        let two_part = 1usize << m.trailing_zeros();
        let odd = m / two_part;
        let unit = |c: usize| {
            let mut coords = vec![0; factors.len()];
            coords[i] = c % m;
            g.from_coordinates(&coords).expect("in range")
        };
        if two_part == 2 {
            e2_orders.push(2);
            e_gens.push(unit(m / 2));
            if odd > 1 {
                k_gens.push(unit(2));
            }
        } else {
            if two_part > 2 {
                complement_orders.push(two_part);
            }
            k_gens.push(unit(1));
        }
        if odd > 1 {
            complement_orders.push(odd);
        }
    }
    complement_orders.sort_unstable();
    let e2 = generate_subgroup(g, &e_gens);
    let complement = generate_subgroup(g, &k_gens);
    debug_assert_eq!(e2.order() * complement.order(), g.order());
    debug_assert!(e2.elements().intersection(complement.elements()).len() == 1);
    Ok(E2Decomposition {
        e2_orders,
        complement_orders,
        e2,
        complement,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassTheorem {
    ZeroTwo,
    ZeroThree,
}

impl ClassTheorem {
    pub fn beta(self) -> usize {
        match self {
            ClassTheorem::ZeroTwo => 2,
            ClassTheorem::ZeroThree => 3,
        }
    }

    fn cases(self) -> &'static [u8] {
        match self {
            ClassTheorem::ZeroTwo => &[1, 2, 3],
            ClassTheorem::ZeroThree => &[1, 2, 3, 4, 5, 6],
        }
    }
}

/// Structural evidence for a matched case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CaseWitness {
    ProperSubsetOfSquares {
        squares: ElementSet,
    },
    ElementaryAbelian,
    DirectFactor {
        x: usize,
        complement: ElementSet,
    },
    E2TimesC4 {
        e2_orders: Vec<usize>,
        t_generator: usize,
    },
    Generators {
        m: usize,
        x: usize,
        y: usize,
    },
    NonSquareOfOrderFour {
        x: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseMatch {
    pub case: u8,
    pub label: &'static str,
    pub witness: CaseWitness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Outcome {
    IsRegular,
    NotRegular(CaseMatch),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub theorem: ClassTheorem,
    pub l_value: usize,
    pub outcome: Outcome,
}

impl Classification {
    pub fn is_regular(&self) -> bool {
        self.outcome == Outcome::IsRegular
    }

    pub fn case(&self) -> Option<u8> {
        match &self.outcome {
            Outcome::IsRegular => None,
            Outcome::NotRegular(m) => Some(m.case),
        }
    }
}

fn label(theorem: ClassTheorem, case: u8) -> &'static str {
    match (theorem, case) {
        (_, 1) => "H ⊊ Sq(G)",
        (ClassTheorem::ZeroTwo, 2) => "H trivial and G elementary abelian",
        (ClassTheorem::ZeroThree, 2) => "G an elementary abelian 2-group and |H| ≤ 2",
        (_, 3) => "G ≅ H × K with H ≅ C₂ and K having a non-trivial square",
        (_, 4) => "G ≅ E₂(G) × C₄ with H the order-2 subgroup of C₄",
        (_, 5) => "H = ⟨x, y⟩ with x = (m, k₁), y = (m, k₂), e ≠ m ∈ E₂(G), o(k₁), o(k₂) ≤ 2",
        (_, 6) => "H generated by a non-square of order 4",
        _ => unreachable!("no such case"),
    }
}

fn is_elementary_abelian_2(g: &Group) -> bool {
    g.order() > 1 && g.elements().all(|x| g.element_order(x) <= 2)
}

/// Index-2 subgroup avoiding `x`, as the kernel of `G → C₂` given by parities of
/// coordinates in the even factors.
fn c2_complement(g: &Group, x: usize) -> Option<ElementSet> {
    let factors = g.factor_orders()?;
    let even: Vec<usize> = (0..factors.len())
        .filter(|&i| factors[i] % 2 == 0)
        .collect();
    let parity = |y: usize, mask: u64| -> usize {
        let c = g.coordinates(y).expect("factor form");
        even.iter()
            .enumerate()
            .filter(|&(j, _)| mask >> j & 1 == 1)
            .map(|(_, &i)| c[i] % 2)
            .sum::<usize>()
            % 2
    };
    (1u64..1 << even.len())
        .find(|&mask| parity(x, mask) == 1)
        .map(|mask| g.set_of(g.elements().filter(|&y| parity(y, mask) == 0)))
}

fn match_case(g: &Group, h: &Subgroup, theorem: ClassTheorem, case: u8) -> Option<CaseWitness> {
    let squares = g.squares();
    let nsq = g.non_squares();
    let hs = h.elements();
    match case {
        1 => (hs.is_subset(&squares) && hs != &squares)
            .then_some(CaseWitness::ProperSubsetOfSquares { squares }),
        2 => {
            let size_ok = match theorem {
                ClassTheorem::ZeroTwo => h.is_trivial(),
                ClassTheorem::ZeroThree => h.order() <= 2,
            };
            (size_ok && is_elementary_abelian_2(g)).then_some(CaseWitness::ElementaryAbelian)
        }
        3 => {
            if h.order() != 2 {
                return None;
            }
            let x = hs.iter().find(|&y| y != g.identity())?;
            let complement = c2_complement(g, x)?;
            let has_square = complement.iter().any(|k| g.mul(k, k) != g.identity());
            has_square.then_some(CaseWitness::DirectFactor { x, complement })
        }
        4 => {
            let d = e2_decomposition(g).ok()?;
            if d.complement_orders != [4] || h.order() != 2 {
                return None;
            }
            let t = d
                .complement
                .elements()
                .iter()
                .find(|&k| g.element_order(k) == 4)?;
            (hs == &g.set_of([g.identity(), g.mul(t, t)])).then_some(CaseWitness::E2TimesC4 {
                e2_orders: d.e2_orders,
                t_generator: t,
            })
        }
        5 => {
            let d = e2_decomposition(g).ok()?;
            let members = hs.to_vec();
            for (i, &x) in members.iter().enumerate() {
                for &y in &members[i + 1..] {
                    let (m, k1) = d.project(g, x);
                    let (m2, k2) = d.project(g, y);
                    if m == g.identity()
                        || m != m2
                        || g.element_order(k1) > 2
                        || g.element_order(k2) > 2
                    {
                        continue;
                    }
                    if generate_subgroup(g, &[x, y]).elements() == hs {
                        return Some(CaseWitness::Generators { m, x, y });
                    }
                }
            }
            None
        }
        6 => {
            if h.order() != 4 {
                return None;
            }
            hs.iter()
                .find(|&x| g.element_order(x) == 4 && nsq.contains(x))
                .map(|x| CaseWitness::NonSquareOfOrderFour { x })
        }
        _ => None,
    }
}

/// Every case of `theorem` whose structural description `H` satisfies, in listed order.
///
/// Independent of `L(H)`; a non-empty result does not by itself imply non-regularity.
pub fn matching_cases(g: &Group, h: &Subgroup, theorem: ClassTheorem) -> Result<Vec<CaseMatch>> {
    require_abelian(g)?;
    require_proper(h)?;
    Ok(theorem
        .cases()
        .iter()
        .filter_map(|&case| {
            match_case(g, h, theorem, case).map(|witness| CaseMatch {
                case,
                label: label(theorem, case),
                witness,
            })
        })
        .collect())
}

/// Decides `(0, β)`-regularity from `L(H) ≥ β`; when not regular, attaches the first
/// listed case that `H` satisfies.
pub fn classify(g: &Group, h: &Subgroup, theorem: ClassTheorem) -> Result<Classification> {
    require_abelian(g)?;
    require_proper(h)?;
    let l_value = l_of_h_abelian_closed_form(g, h)?
        .value
        .expect("proper subgroup");
    let outcome = if l_value >= theorem.beta() {
        Outcome::IsRegular
    } else {
        let first = matching_cases(g, h, theorem)?
            .into_iter()
            .next()
            .ok_or_else(|| {
                Error::Unclassified(format!(
                    "{} with H = {:?} has L(H) = {l_value} but matches no case",
                    g.spec(),
                    h.elements()
                ))
            })?;
        Outcome::NotRegular(first)
    };
    Ok(Classification {
        theorem,
        l_value,
        outcome,
    })
}

pub fn classify_02(g: &Group, h: &Subgroup) -> Result<Classification> {
    classify(g, h, ClassTheorem::ZeroTwo)
}

pub fn classify_03(g: &Group, h: &Subgroup) -> Result<Classification> {
    classify(g, h, ClassTheorem::ZeroThree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subgroup::{all_subgroups, DEFAULT_SUBGROUP_BUDGET};

    fn sub(g: &Group, gens: &[usize]) -> Subgroup {
        generate_subgroup(g, gens)
    }

    fn el(g: &Group, coords: &[usize]) -> usize {
        g.from_coordinates(coords).unwrap()
    }

    #[test]
    fn l_values() {
        let c4 = Group::abelian(&[4]).unwrap();
        let h = sub(&c4, &[2]);
        assert_eq!(l_of_h_bruteforce(&c4, &h).value, Some(2));
        let closed = l_of_h_abelian_closed_form(&c4, &h).unwrap();
        assert_eq!(
            (closed.value, closed.branch),
            (Some(2), LBranch::SquaresInside)
        );

        let v4 = Group::abelian(&[2, 2]).unwrap();
        assert_eq!(l_of_h_bruteforce(&v4, &sub(&v4, &[])).value, Some(1));

        let c3 = Group::abelian(&[3]).unwrap();
        let l = l_of_h_abelian_closed_form(&c3, &sub(&c3, &[])).unwrap();
        assert_eq!((l.value, l.branch), (Some(0), LBranch::SquareOutside));

        let g = Group::abelian(&[2, 8]).unwrap();
        let h = sub(&g, &[el(&g, &[1, 2])]);
        let l = l_of_h_abelian_closed_form(&g, &h).unwrap();
        assert_eq!((l.value, l.branch), (Some(2), LBranch::SquareOutside));

        let whole = l_of_h_bruteforce(&c4, &Subgroup::whole(&c4));
        assert_eq!((whole.value, whole.branch), (None, LBranch::WholeGroup));
    }

    #[test]
    fn dihedral_bruteforce_l() {
        let d8 = Group::dihedral(4).unwrap();
        let h = sub(&d8, &[d8.reflection(2)]);
        let l = l_of_h_bruteforce(&d8, &h);
        assert_eq!(l.value, Some(1));
        assert_eq!(
            l_of_h_abelian_closed_form(&d8, &h).unwrap_err(),
            Error::NotAbelian
        );
    }

    #[test]
    fn closed_form_matches_scan_everywhere() {
        for factors in [
            vec![2, 2, 2],
            vec![2, 4],
            vec![8],
            vec![2, 6],
            vec![3, 3],
            vec![4, 4],
            vec![12],
        ] {
            let g = Group::abelian(&factors).unwrap();
            for h in all_subgroups(&g, DEFAULT_SUBGROUP_BUDGET).unwrap() {
                assert_eq!(
                    l_of_h_abelian_closed_form(&g, &h).unwrap().value,
                    l_of_h_bruteforce(&g, &h).value
                );
            }
        }
    }

    #[test]
    fn regions() {
        let c4 = Group::abelian(&[4]).unwrap();
        let r = feasible_pairs_abelian(&c4, &sub(&c4, &[2])).unwrap();
        assert_eq!((r.alpha_max, r.beta_max, r.excludes_origin), (0, 2, true));
        assert_eq!(r.pairs(), vec![(0, 1), (0, 2)]);
        assert_eq!(r.len(), 2);

        let c2 = Group::abelian(&[2]).unwrap();
        let r = feasible_pairs_abelian(&c2, &sub(&c2, &[])).unwrap();
        assert_eq!((r.alpha_max, r.beta_max), (0, 1));

        let v4 = Group::abelian(&[2, 2]).unwrap();
        let h = sub(&v4, &[el(&v4, &[1, 0])]);
        let r = feasible_pairs_abelian(&v4, &h).unwrap();
        assert_eq!((r.alpha_max, r.beta_max), (1, 2));
        let oracle = crate::oracle::enumerate_pairs(&v4, &h, &Default::default()).unwrap();
        assert_eq!(oracle.pair_set(), r.pairs().into_iter().collect());

        let c3 = Group::abelian(&[3]).unwrap();
        assert!(feasible_pairs_abelian(&c3, &sub(&c3, &[]))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn witnesses() {
        let c4 = Group::abelian(&[4]).unwrap();
        let h = sub(&c4, &[2]);
        let s = witness_abelian(&c4, &h, 0, 2).unwrap();
        assert_eq!(s.elements(), &c4.set_of([1, 3]));
        assert!(matches!(
            witness_abelian(&c4, &h, 1, 1),
            Err(Error::Infeasible {
                alpha: 1,
                beta: 1,
                ..
            })
        ));
        assert!(matches!(
            witness_abelian(&c4, &h, 0, 0),
            Err(Error::Infeasible { .. })
        ));

        let v4 = Group::abelian(&[2, 2]).unwrap();
        let x = el(&v4, &[1, 0]);
        let s = witness_abelian(&v4, &sub(&v4, &[x]), 1, 1).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.elements().contains(x));
    }

    #[test]
    fn counts() {
        let c4 = Group::abelian(&[4]).unwrap();
        let h = sub(&c4, &[2]);
        assert_eq!(count_witnesses_abelian(&c4, &h, 0, 2).unwrap(), 1);
        assert_eq!(count_witnesses_abelian(&c4, &h, 0, 1).unwrap(), 2);
        assert_eq!(stated_witness_count(&c4, &h, 0, 1).unwrap(), 4);

        let v4 = Group::abelian(&[2, 2]).unwrap();
        let h = sub(&v4, &[el(&v4, &[1, 0])]);
        assert_eq!(count_witnesses_abelian(&v4, &h, 0, 1).unwrap(), 2);
        assert_eq!(count_witnesses_abelian(&v4, &h, 1, 0).unwrap(), 1);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2).unwrap(), 10);
        assert_eq!(binomial(3, 5).unwrap(), 0);
        assert_eq!(binomial(0, 0).unwrap(), 1);
        assert_eq!(binomial(100, 50).unwrap(), 100891344545564193334812497256);
    }

    #[test]
    fn perfect_codes() {
        let c4 = Group::abelian(&[4]).unwrap();
        let v = is_subgroup_perfect_code_abelian(&c4, &sub(&c4, &[2])).unwrap();
        assert_eq!(
            (v.is_perfect_code, v.reason),
            (true, PerfectCodeReason::SquaresInside)
        );
        let v = is_subgroup_perfect_code_abelian(&c4, &sub(&c4, &[])).unwrap();
        assert_eq!(
            (v.is_perfect_code, v.reason),
            (false, PerfectCodeReason::Neither)
        );
        let e = Group::abelian(&[2, 2, 2]).unwrap();
        assert!(
            is_subgroup_perfect_code_abelian(&e, &sub(&e, &[]))
                .unwrap()
                .is_perfect_code
        );
    }

    #[test]
    fn e2_split() {
        let g = Group::abelian(&[2, 2, 4, 3]).unwrap();
        let d = e2_decomposition(&g).unwrap();
        assert_eq!(d.e2_orders, vec![2, 2]);
        assert_eq!(d.complement_orders, vec![3, 4]);
        assert_eq!((d.e2.order(), d.complement.order()), (4, 12));

        let d = e2_decomposition(&Group::abelian(&[2, 2, 2]).unwrap()).unwrap();
        assert_eq!((d.e2_orders.len(), d.complement.order()), (3, 1));

        let d = e2_decomposition(&Group::abelian(&[8]).unwrap()).unwrap();
        assert!(d.e2_orders.is_empty());

        let g = Group::abelian(&[2, 6]).unwrap();
        let d = e2_decomposition(&g).unwrap();
        assert_eq!(
            (d.e2_orders.len(), d.complement_orders.clone()),
            (2, vec![3])
        );
        for x in g.elements() {
            let (e, k) = d.project(&g, x);
            assert_eq!(g.mul(e, k), x);
        }
    }

    #[test]
    fn classify_zero_two() {
        let c8 = Group::abelian(&[8]).unwrap();
        assert_eq!(classify_02(&c8, &sub(&c8, &[4])).unwrap().case(), Some(1));

        let e = Group::abelian(&[2, 2, 2]).unwrap();
        assert_eq!(classify_02(&e, &sub(&e, &[])).unwrap().case(), Some(2));

        let g = Group::abelian(&[2, 4]).unwrap();
        let c = classify_02(&g, &sub(&g, &[el(&g, &[1, 0])])).unwrap();
        assert_eq!(c.case(), Some(3));
        let Outcome::NotRegular(CaseMatch {
            witness: CaseWitness::DirectFactor { complement, .. },
            ..
        }) = c.outcome
        else {
            panic!("expected a complement");
        };
        assert_eq!(complement.len(), 4);

        let c4 = Group::abelian(&[4]).unwrap();
        assert!(classify_02(&c4, &sub(&c4, &[2])).unwrap().is_regular());
    }

    #[test]
    fn classify_zero_three() {
        let g = Group::abelian(&[2, 8]).unwrap();
        let c = classify_03(&g, &sub(&g, &[el(&g, &[1, 2])])).unwrap();
        assert_eq!(c.case(), Some(6));

        let e = Group::abelian(&[2, 2, 2, 2]).unwrap();
        let c = classify_03(&e, &sub(&e, &[el(&e, &[1, 0, 0, 0])])).unwrap();
        assert_eq!(c.case(), Some(2));

        let g = Group::abelian(&[2, 4]).unwrap();
        let c = classify_03(&g, &sub(&g, &[el(&g, &[0, 2])])).unwrap();
        assert_eq!(c.case(), Some(4));

        let g = Group::abelian(&[2, 8]).unwrap();
        let h = sub(&g, &[el(&g, &[1, 0]), el(&g, &[1, 4])]);
        assert_eq!(l_of_h_bruteforce(&g, &h).value, Some(2));
        assert_eq!(classify_03(&g, &h).unwrap().case(), Some(5));
    }

    #[test]
    fn structural_match_without_failure() {
        let g = Group::abelian(&[2, 4]).unwrap();
        let h = sub(&g, &[el(&g, &[1, 1])]);
        assert!(classify_03(&g, &h).unwrap().is_regular());
        let cases: Vec<u8> = matching_cases(&g, &h, ClassTheorem::ZeroThree)
            .unwrap()
            .iter()
            .map(|m| m.case)
            .collect();
        assert_eq!(cases, vec![6]);
    }

    #[test]
    fn whole_group_rejected() {
        let c4 = Group::abelian(&[4]).unwrap();
        assert_eq!(
            classify_02(&c4, &Subgroup::whole(&c4)).unwrap_err(),
            Error::WholeGroup
        );
        assert_eq!(
            feasible_pairs_abelian(&c4, &Subgroup::whole(&c4)).unwrap_err(),
            Error::WholeGroup
        );
    }
}
