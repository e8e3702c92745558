//! Closed-form predictions and explicit witnesses for `D_{2n}`.
//!
//! Every subgroup is `<a^t>` or `<a^t, a^s b>`; the feasible `(α, β)` set depends
//! only on the family, the parities of `n`, `t` and `m = n/2`, and on whether `t`
//! is `1`, `2`, `n` or something else. Witnesses are unions of named conjugacy
//! classes and are checked against the graph before they are returned.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::abelian::verify_witness;
use crate::cayley::{make_connection_set, ConnectionSet};
use crate::elements::ElementSet;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::subgroup::{right_cosets, DihedralFamily, Subgroup};

/// Which closed-form clause governs a family instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Clause {
    /// `<a^s b>`, order 2.
    Reflection,
    /// `<a^t, a^s b>`, n odd, `1 < t < n`.
    MixedOddN,
    /// `<a^t, a^s b>`, n = 2m, t = 2, m odd.
    MixedIndexTwoOddM,
    /// `<a^t, a^s b>`, n = 2m, t = 2, m even.
    MixedIndexTwoEvenM,
    /// `<a^t, a^s b>`, n = 2m, `t > 2` even.
    MixedEvenT,
    /// `<a^t, a^s b>`, n = 2m, t odd, m odd.
    MixedOddTOddM,
    /// `<a^t, a^s b>`, n = 2m, t odd, m even.
    MixedOddTEvenM,
    /// `<a>`, n odd.
    CyclicOddNWhole,
    /// `<a^t>`, n odd, `t > 1`.
    CyclicOddNProper,
    /// `<a^2>`, n even.
    CyclicSquares,
    /// `<a^t>`, n even, `t > 2` even.
    CyclicEvenT,
    /// `<a>`, n = 2m, m odd.
    CyclicRotationsOddM,
    /// `<a>`, n = 2m, m even.
    CyclicRotationsEvenM,
    /// `<a^t>`, n = 2m, `t > 1` odd, m odd.
    CyclicOddTOddM,
    /// `<a^t>`, n = 2m, `t > 1` odd, m even.
    CyclicOddTEvenM,
}

impl Clause {
    pub fn describe(self) -> &'static str {
        match self {
            Clause::Reflection => "reflection subgroup <a^s b>",
            Clause::MixedOddN => "<a^t, a^s b>, n odd, 1 < t < n",
            Clause::MixedIndexTwoOddM => "<a^t, a^s b>, n = 2m, t = 2, m odd",
            Clause::MixedIndexTwoEvenM => "<a^t, a^s b>, n = 2m, t = 2, m even",
            Clause::MixedEvenT => "<a^t, a^s b>, n = 2m, t > 2 even",
            Clause::MixedOddTOddM => "<a^t, a^s b>, n = 2m, t odd, m odd",
            Clause::MixedOddTEvenM => "<a^t, a^s b>, n = 2m, t odd, m even",
            Clause::CyclicOddNWhole => "<a>, n odd",
            Clause::CyclicOddNProper => "<a^t>, n odd, t > 1",
            Clause::CyclicSquares => "<a^2>, n even",
            Clause::CyclicEvenT => "<a^t>, n even, t > 2 even",
            Clause::CyclicRotationsOddM => "<a>, n = 2m, m odd",
            Clause::CyclicRotationsEvenM => "<a>, n = 2m, m even",
            Clause::CyclicOddTOddM => "<a^t>, n = 2m, t > 1 odd, m odd",
            Clause::CyclicOddTEvenM => "<a^t>, n = 2m, t > 1 odd, m even",
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.describe())
    }
}

/// Selects the governing clause. Errors on invalid parameters and on `H = G`.
pub fn clause_for(n: usize, family: DihedralFamily) -> Result<Clause> {
    if n < 3 {
        return Err(Error::DihedralTooSmall(n));
    }
    family.validate(n)?;
    let t = family.t();
    let m = n / 2;
    let n_even = n % 2 == 0;
    Ok(match family {
        DihedralFamily::Mixed { .. } if t == 1 => return Err(Error::WholeGroup),
        DihedralFamily::Mixed { .. } if t == n => Clause::Reflection,
        DihedralFamily::Mixed { .. } if !n_even => Clause::MixedOddN,
        DihedralFamily::Mixed { .. } if t == 2 && m % 2 == 1 => Clause::MixedIndexTwoOddM,
        DihedralFamily::Mixed { .. } if t == 2 => Clause::MixedIndexTwoEvenM,
        DihedralFamily::Mixed { .. } if t % 2 == 0 => Clause::MixedEvenT,
        DihedralFamily::Mixed { .. } if m % 2 == 1 => Clause::MixedOddTOddM,
        DihedralFamily::Mixed { .. } => Clause::MixedOddTEvenM,
        DihedralFamily::Cyclic { .. } if !n_even && t == 1 => Clause::CyclicOddNWhole,
        DihedralFamily::Cyclic { .. } if !n_even => Clause::CyclicOddNProper,
        DihedralFamily::Cyclic { .. } if t == 2 => Clause::CyclicSquares,
        DihedralFamily::Cyclic { .. } if t % 2 == 0 => Clause::CyclicEvenT,
        DihedralFamily::Cyclic { .. } if t == 1 && m % 2 == 1 => Clause::CyclicRotationsOddM,
        DihedralFamily::Cyclic { .. } if t == 1 => Clause::CyclicRotationsEvenM,
        DihedralFamily::Cyclic { .. } if m % 2 == 1 => Clause::CyclicOddTOddM,
        DihedralFamily::Cyclic { .. } => Clause::CyclicOddTEvenM,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FeasiblePairSet {
    pub pairs: BTreeSet<(usize, usize)>,
    pub clause: Clause,
}

impl FeasiblePairSet {
    pub fn contains(&self, alpha: usize, beta: usize) -> bool {
        self.pairs.contains(&(alpha, beta))
    }
}

fn grid(alphas: impl IntoIterator<Item = usize>, betas: &[usize]) -> BTreeSet<(usize, usize)> {
    alphas
        .into_iter()
        .flat_map(|a| betas.iter().map(move |&b| (a, b)))
        .filter(|&p| p != (0, 0))
        .collect()
}

pub fn feasible_pairs_dihedral(n: usize, family: DihedralFamily) -> Result<FeasiblePairSet> {
    let clause = clause_for(n, family)?;
    let h = family.order(n);
    let t = family.t();
    let m = n / 2;
    let half = h / 2;
    let pairs = match clause {
        Clause::Reflection => grid([1], &[1]),
        Clause::MixedOddN | Clause::MixedEvenT => grid([half], &[half]),
        Clause::MixedIndexTwoOddM => grid([0, half], &(0..=h).collect::<Vec<_>>()),
        Clause::MixedIndexTwoEvenM => grid([0, half], &(0..=h).step_by(2).collect::<Vec<_>>()),
        Clause::MixedOddTOddM | Clause::MixedOddTEvenM => {
            let q = m / t;
            let step = if clause == Clause::MixedOddTEvenM {
                2
            } else {
                1
            };
            let mut out = BTreeSet::new();
            for c in 0..3 {
                for eta in (0..=q).step_by(step) {
                    for zeta in 0..=q {
                        out.insert((eta + c * q, zeta + c * q));
                    }
                }
            }
            out.remove(&(0, 0));
            out
        }
        Clause::CyclicOddNWhole | Clause::CyclicSquares => grid([0], &[h]),
        Clause::CyclicOddNProper | Clause::CyclicEvenT => BTreeSet::new(),
        Clause::CyclicRotationsOddM => grid(0..=half, &[0, half, h]),
        Clause::CyclicRotationsEvenM => grid((0..=half).step_by(2), &[0, half, h]),
        Clause::CyclicOddTOddM => grid(0..=half, &[0, half]),
        Clause::CyclicOddTEvenM => grid((0..=half).step_by(2), &[0, half]),
    };
    Ok(FeasiblePairSet { pairs, clause })
}

/// A named normal square-free building block of `D_{2n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Ingredient {
    /// `b^G`: all reflections for n odd, `a^{2j} b` for n even.
    ClassB,
    /// `(ab)^G`: `a^{2j+1} b`, n even only.
    ClassAB,
    /// `{a^m}`, n = 2m.
    Central,
    /// `{a^k, a^{-k}}`.
    RotationPair { k: usize },
    /// `Ω_β`, the union of the first `β` transversal blocks `𝔖_i` for odd `t`.
    Omega { t: usize, beta: usize },
    /// `{a^k : k odd, t ∤ k}`.
    OddRotations { t: usize },
}

impl Ingredient {
    pub fn elements(self, n: usize) -> ElementSet {
        let rot = |i: usize| i % n;
        match self {
            Ingredient::ClassB if n % 2 == 1 => ElementSet::from_indices(2 * n, n..2 * n),
            Ingredient::ClassB => ElementSet::from_indices(2 * n, (n..2 * n).step_by(2)),
            Ingredient::ClassAB => ElementSet::from_indices(2 * n, (n + 1..2 * n).step_by(2)),
            Ingredient::Central => ElementSet::singleton(2 * n, n / 2),
            Ingredient::RotationPair { k } => {
                ElementSet::from_indices(2 * n, [rot(k), rot(n - k % n)])
            }
            Ingredient::Omega { t, beta } => {
                let mut s = ElementSet::empty(2 * n);
                for i in 0..beta {
                    s.union_with(&frak_s(n, t, i));
                }
                s
            }
            Ingredient::OddRotations { t } => {
                ElementSet::from_indices(2 * n, (1..n).filter(|&k| k % 2 == 1 && k % t != 0))
            }
        }
    }
}

impl fmt::Display for Ingredient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Ingredient::ClassB => write!(f, "b^G"),
            Ingredient::ClassAB => write!(f, "(ab)^G"),
            Ingredient::Central => write!(f, "{{a^m}}"),
            Ingredient::RotationPair { k } => write!(f, "{{a^{k}, a^-{k}}}"),
            Ingredient::Omega { beta, .. } => write!(f, "Ω_{beta}"),
            Ingredient::OddRotations { t } => write!(f, "Ω(t={t})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessRecipe {
    pub clause: Clause,
    pub ingredients: Vec<Ingredient>,
    pub set: ElementSet,
}

impl WitnessRecipe {
    pub fn names(&self) -> Vec<String> {
        self.ingredients.iter().map(ToString::to_string).collect()
    }
}

/// `𝔖_i = {a^j, a^{-j} : it+1 ≤ j ≤ (i+1)t-1, j odd}`.
pub fn frak_s(n: usize, t: usize, i: usize) -> ElementSet {
    let mut s = ElementSet::empty(2 * n);
    for j in (i * t + 1)..((i + 1) * t) {
        if j % 2 == 1 {
            s.insert(j % n);
            s.insert((n - j % n) % n);
        }
    }
    s
}

fn require_odd_t(n: usize, t: usize) -> Result<usize> {
    if n % 2 == 1 || t % 2 == 0 || n % t != 0 {
        return Err(Error::OutOfRange(format!(
            "t = {t} must be an odd divisor of even n = {n}"
        )));
    }
    let m = n / 2;
    assert_eq!(m % t, 0, "odd t dividing 2m divides m");
    Ok(m / t)
}

/// `Ω_β` for odd `t | n`, `0 ≤ β ≤ m/t`.
pub fn omega_blocks(n: usize, t: usize, beta: usize) -> Result<ElementSet> {
    let q = require_odd_t(n, t)?;
    if beta > q {
        return Err(Error::OutOfRange(format!(
            "beta = {beta} exceeds m/t = {q}"
        )));
    }
    Ok(Ingredient::Omega { t, beta }.elements(n))
}

/// Ingredients of the size-`α` normal square-free subset of `<a^t>` built from
/// `{a^m}` (m odd only) and the pairs `{a^{t(2j+1)}, a^{-t(2j+1)}}` in increasing `j`.
fn s_alpha_ingredients(n: usize, t: usize, alpha: usize) -> Result<Vec<Ingredient>> {
    if n % 2 == 1 || n % t != 0 {
        return Err(Error::OutOfRange(format!("t = {t} with n = {n}")));
    }
    let m = n / 2;
    let mut out = Vec::new();
    let mut rest = alpha;
    if alpha % 2 == 1 {
        if m % 2 == 0 || t % 2 == 0 {
            return Err(Error::OutOfRange(format!(
                "alpha = {alpha} must be even when a^m is not an available non-square"
            )));
        }
        out.push(Ingredient::Central);
        rest -= 1;
    }
    let mut k = t;
    while rest > 0 {
        if k >= m {
            return Err(Error::OutOfRange(format!(
                "alpha = {alpha} too large for t = {t}"
            )));
        }
        out.push(Ingredient::RotationPair { k });
        rest -= 2;
        k += 2 * t;
    }
    Ok(out)
}

pub fn s_alpha_inside(n: usize, t: usize, alpha: usize) -> Result<ElementSet> {
    let mut s = ElementSet::empty(2 * n);
    for ing in s_alpha_ingredients(n, t, alpha)? {
        s.union_with(&ing.elements(n));
    }
    Ok(s)
}

/// `A_i = {a^{it} b, …, a^{(i+1)t-1} b}` for `0 ≤ i < n/t`.
pub fn blocks_a_i(n: usize, t: usize) -> Vec<ElementSet> {
    (0..n / t)
        .map(|i| ElementSet::from_indices(2 * n, (i * t..(i + 1) * t).map(|j| n + j)))
        .collect()
}

/// Normal square-free set of size `β` outside `<a^2, a^s b>` (index 2): `{a^m}`
/// when m is odd, odd-rotation pairs below `a^m`, and the outside reflection class.
fn index_two_outside(n: usize, s: usize, beta: usize) -> Result<Vec<Ingredient>> {
    let m = n / 2;
    let outside_class = if (s + 1) % 2 == 0 {
        Ingredient::ClassB
    } else {
        Ingredient::ClassAB
    };
    let mut out = Vec::new();
    let mut rest = beta;
    if rest >= m {
        out.push(outside_class);
        rest -= m;
    }
    if rest % 2 == 1 {
        if m % 2 == 0 {
            return Err(Error::OutOfRange(format!("beta = {beta} must be even")));
        }
        out.push(Ingredient::Central);
        rest -= 1;
    }
    let mut k = 1;
    while rest > 0 {
        if k >= m {
            return Err(Error::OutOfRange(format!("beta = {beta} too large")));
        }
        out.push(Ingredient::RotationPair { k });
        rest -= 2;
        k += 2;
    }
    Ok(out)
}

fn recipe_ingredients(
    n: usize,
    family: DihedralFamily,
    clause: Clause,
    alpha: usize,
    beta: usize,
) -> Result<Vec<Ingredient>> {
    let t = family.t();
    let m = n / 2;
    let h = family.order(n);
    let both = || {
        if n % 2 == 0 {
            vec![Ingredient::ClassB, Ingredient::ClassAB]
        } else {
            vec![Ingredient::ClassB]
        }
    };
    Ok(match clause {
        Clause::Reflection | Clause::MixedEvenT => both(),
        Clause::MixedOddN | Clause::CyclicOddNWhole => vec![Ingredient::ClassB],
        Clause::MixedIndexTwoOddM | Clause::MixedIndexTwoEvenM => {
            let DihedralFamily::Mixed { s, .. } = family else {
                unreachable!("mixed clause")
            };
            let mut out = Vec::new();
            if alpha > 0 {
                out.push(if s % 2 == 0 {
                    Ingredient::ClassB
                } else {
                    Ingredient::ClassAB
                });
            }
            out.extend(index_two_outside(n, s, beta)?);
            out
        }
        Clause::MixedOddTOddM | Clause::MixedOddTEvenM => {
            let q = m / t;
            let c = (0..3)
                .find(|&c| {
                    alpha >= c * q
                        && beta >= c * q
                        && alpha - c * q <= q
                        && beta - c * q <= q
                        && (clause == Clause::MixedOddTOddM || (alpha - c * q) % 2 == 0)
                })
                .expect("pair is feasible");
            let mut out = both()[..c].to_vec();
            out.extend(s_alpha_ingredients(n, t, alpha - c * q)?);
            if beta > c * q {
                out.push(Ingredient::Omega {
                    t,
                    beta: beta - c * q,
                });
            }
            out
        }
        Clause::CyclicSquares => {
            let mut out = both();
            out.push(Ingredient::OddRotations { t: 2 });
            out
        }
        Clause::CyclicRotationsOddM | Clause::CyclicRotationsEvenM => {
            let mut out = s_alpha_ingredients(n, 1, alpha)?;
            out.extend(both()[..beta / (h / 2)].iter().copied());
            out
        }
        Clause::CyclicOddTOddM | Clause::CyclicOddTEvenM => {
            let mut out = s_alpha_ingredients(n, t, alpha)?;
            if beta > 0 {
                out.push(Ingredient::ClassB);
                out.push(Ingredient::OddRotations { t });
            }
            out
        }
        Clause::CyclicOddNProper | Clause::CyclicEvenT => unreachable!("no feasible pairs"),
    })
}

/// An explicit `(α, β)` witness for `family` inside the dihedral group `g`.
pub fn witness_dihedral(
    g: &Group,
    family: DihedralFamily,
    alpha: usize,
    beta: usize,
) -> Result<WitnessRecipe> {
    let n = g.dihedral_n().ok_or(Error::NotDihedral)?;
    let feasible = feasible_pairs_dihedral(n, family)?;
    if !feasible.contains(alpha, beta) {
        return Err(Error::Infeasible {
            alpha,
            beta,
            reason: format!("not admitted for {family} ({})", feasible.clause),
        });
    }
    let ingredients = recipe_ingredients(n, family, feasible.clause, alpha, beta)?;
    let mut set = g.empty_set();
    for ing in &ingredients {
        let part = ing.elements(n);
        if !set.is_disjoint(&part) {
            return Err(Error::WitnessVerification(format!(
                "ingredient {ing} overlaps"
            )));
        }
        set.union_with(&part);
    }
    let h = Subgroup::dihedral(g, family)?;
    let connection: ConnectionSet = make_connection_set(g, set.clone())?;
    verify_witness(g, &h, &connection, alpha, beta)?;
    let index = h.index_in(g);
    if set.len() != alpha + beta * (index - 1) {
        return Err(Error::WitnessVerification(format!(
            "|S| = {} but α + β([G:H]−1) = {}",
            set.len(),
            alpha + beta * (index - 1)
        )));
    }
    Ok(WitnessRecipe {
        clause: feasible.clause,
        ingredients,
        set,
    })
}

/// `|b^G ∩ H| = |(ab)^G ∩ H| = m/t` for `H = <a^t, a^s b>` with t odd, n even.
pub fn claim_reflections_inside(n: usize, t: usize, s: usize) -> bool {
    let Ok(q) = require_odd_t(n, t) else {
        return false;
    };
    let h = DihedralFamily::Mixed { t, s }.elements(n);
    Ingredient::ClassB.elements(n).intersection_len(&h) == q
        && Ingredient::ClassAB.elements(n).intersection_len(&h) == q
}

/// `|b^G ∩ Hx| = |(ab)^G ∩ Hx| = m/t` for every non-trivial right coset `Hx`.
pub fn claim_reflections_per_coset(g: &Group, t: usize, s: usize) -> bool {
    let Some(n) = g.dihedral_n() else {
        return false;
    };
    let Ok(q) = require_odd_t(n, t) else {
        return false;
    };
    let Ok(h) = Subgroup::dihedral(g, DihedralFamily::Mixed { t, s }) else {
        return false;
    };
    let (cb, cab) = (
        Ingredient::ClassB.elements(n),
        Ingredient::ClassAB.elements(n),
    );
    right_cosets(g, &h)
        .non_trivial()
        .all(|(_, coset)| coset.intersection_len(&cb) == q && coset.intersection_len(&cab) == q)
}

/// `𝔖_i ∪ {e}` is a right transversal of `<a^t, a^s b>`.
pub fn claim_transversal(g: &Group, t: usize, s: usize, i: usize) -> bool {
    let Some(n) = g.dihedral_n() else {
        return false;
    };
    if require_odd_t(n, t).is_err() {
        return false;
    }
    let Ok(h) = Subgroup::dihedral(g, DihedralFamily::Mixed { t, s }) else {
        return false;
    };
    let mut candidate = frak_s(n, t, i);
    candidate.insert(g.identity());
    right_cosets(g, &h).is_transversal(&candidate)
}
