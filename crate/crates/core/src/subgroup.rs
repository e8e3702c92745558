//! Subgroups, their enumeration, and right coset decompositions.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::elements::ElementSet;
use crate::error::{Error, Result};
use crate::group::Group;

/// Default order bound for generic subgroup enumeration.
pub const DEFAULT_SUBGROUP_BUDGET: usize = 256;

/// The two subgroup families of `D_{2n}`.
///
/// `Cyclic { t }` is `<a^t>` with index `2t`; `Mixed { t, s }` is
/// `<a^t, a^s b>` with index `t`. Both require `t | n`, and `s < t` for mixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum DihedralFamily {
    Cyclic { t: usize },
    Mixed { t: usize, s: usize },
}

impl DihedralFamily {
    pub fn t(&self) -> usize {
        match *self {
            DihedralFamily::Cyclic { t } | DihedralFamily::Mixed { t, .. } => t,
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let t = self.t();
        if t == 0 || n % t != 0 {
            return Err(Error::BadFamily(format!("t = {t} does not divide n = {n}")));
        }
        if let DihedralFamily::Mixed { s, .. } = *self {
            if s >= t {
                return Err(Error::BadFamily(format!("s = {s} must be < t = {t}")));
            }
        }
        Ok(())
    }

    /// Order of the subgroup inside `D_{2n}`.
    pub fn order(&self, n: usize) -> usize {
        match *self {
            DihedralFamily::Cyclic { t } => n / t,
            DihedralFamily::Mixed { t, .. } => 2 * n / t,
        }
    }

    pub fn elements(&self, n: usize) -> ElementSet {
        let order = 2 * n;
        match *self {
            DihedralFamily::Cyclic { t } => ElementSet::from_indices(order, (0..n).step_by(t)),
            DihedralFamily::Mixed { t, s } => ElementSet::from_indices(
                order,
                (0..n).step_by(t).flat_map(|i| [i, n + (i + s) % n]),
            ),
        }
    }

    /// Every family instance of `D_{2n}`, cyclic first, each ordered by `(t, s)`.
    pub fn all(n: usize) -> Vec<DihedralFamily> {
        let divisors: Vec<usize> = (1..=n).filter(|t| n % t == 0).collect();
        let cyclic = divisors.iter().map(|&t| DihedralFamily::Cyclic { t });
        let mixed = divisors
            .iter()
            .flat_map(|&t| (0..t).map(move |s| DihedralFamily::Mixed { t, s }));
        cyclic.chain(mixed).collect()
    }

    /// Recovers the family of a subgroup of `D_{2n}` from its elements.
    pub fn identify(n: usize, h: &ElementSet) -> Option<DihedralFamily> {
        let reflections: Vec<usize> = h.iter().filter(|&x| x >= n).map(|x| x - n).collect();
        let family = if reflections.is_empty() {
            let size = h.len();
            if size == 0 || n % size != 0 {
                return None;
            }
            DihedralFamily::Cyclic { t: n / size }
        } else {
            let rotations = h.len() - reflections.len();
            if rotations == 0 || n % rotations != 0 {
                return None;
            }
            let t = n / rotations;
            DihedralFamily::Mixed {
                t,
                s: reflections[0] % t,
            }
        };
        (family.elements(n) == *h).then_some(family)
    }
}

impl fmt::Display for DihedralFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            DihedralFamily::Cyclic { t } => write!(f, "<a^{t}>"),
            DihedralFamily::Mixed { t, s } => write!(f, "<a^{t}, a^{s}b>"),
        }
    }
}

/// A verified subgroup of some group of the same order as its element universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    elements: ElementSet,
    generators: Vec<usize>,
    family: Option<DihedralFamily>,
}

impl Subgroup {
    /// Verifies that `elements` is a subgroup of `g`.
    pub fn from_elements(g: &Group, elements: ElementSet) -> Result<Self> {
        if elements.universe() != g.order() {
            return Err(Error::NotSubgroup(
                "element set over a different group".into(),
            ));
        }
        if !elements.contains(0) {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        for x in elements.iter() {
            if !elements.contains(g.inv(x)) {
                return Err(Error::NotSubgroup(format!("inverse of {x} missing")));
            }
            for y in elements.iter() {
                if !elements.contains(g.mul(x, y)) {
                    return Err(Error::NotSubgroup(format!("{x} * {y} not in set")));
                }
            }
        }
        if g.order() % elements.len() != 0 {
            return Err(Error::NotSubgroup("order does not divide |G|".into()));
        }
        let family = g
            .dihedral_n()
            .and_then(|n| DihedralFamily::identify(n, &elements));
        Ok(Self {
            elements,
            generators: Vec::new(),
            family,
        })
    }

    /// The family subgroup of a dihedral group.
    pub fn dihedral(g: &Group, family: DihedralFamily) -> Result<Self> {
        let n = g.dihedral_n().ok_or(Error::NotDihedral)?;
        family.validate(n)?;
        let generators = match family {
            DihedralFamily::Cyclic { t } => vec![t % n],
            DihedralFamily::Mixed { t, s } => vec![t % n, n + s],
        };
        Ok(Self {
            elements: family.elements(n),
            generators,
            family: Some(family),
        })
    }

    pub fn whole(g: &Group) -> Self {
        Self {
            elements: ElementSet::full(g.order()),
            generators: Vec::new(),
            family: g.dihedral_n().map(|_| DihedralFamily::Mixed { t: 1, s: 0 }),
        }
    }

    pub fn elements(&self) -> &ElementSet {
        &self.elements
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn family(&self) -> Option<DihedralFamily> {
        self.family
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.contains(x)
    }

    pub fn index_in(&self, g: &Group) -> usize {
        g.order() / self.order()
    }

    pub fn is_whole(&self) -> bool {
        self.elements.is_full()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_normal_in(&self, g: &Group) -> bool {
        g.is_normal_subset(&self.elements)
    }
}

/// `<gens>`: breadth-first closure of `{e}` under right multiplication by the generators.
pub fn generate_subgroup(g: &Group, gens: &[usize]) -> Subgroup {
    let mut elements = ElementSet::singleton(g.order(), 0);
    let mut queue = vec![0];
    while let Some(x) = queue.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if elements.insert(y) {
                queue.push(y);
            }
        }
    }
    let family = g
        .dihedral_n()
        .and_then(|n| DihedralFamily::identify(n, &elements));
    Subgroup {
        elements,
        generators: gens.to_vec(),
        family,
    }
}

/// Every subgroup exactly once, sorted by order and then by ascending element list.
///
/// Dihedral groups use the two closed-form families for any `n`; other groups are
/// enumerated by joining cyclic subgroups until a fixpoint, within `budget`.
pub fn all_subgroups(g: &Group, budget: usize) -> Result<Vec<Subgroup>> {
    let mut subgroups = match g.dihedral_n() {
        Some(n) => DihedralFamily::all(n)
            .into_iter()
            .map(|f| Subgroup::dihedral(g, f))
            .collect::<Result<Vec<_>>>()?,
        None => {
            if g.order() > budget {
                return Err(Error::SubgroupBudget {
                    order: g.order(),
                    budget,
                });
            }
            subgroups_by_join(g)
        }
    };
    sort_subgroups(&mut subgroups);
    Ok(subgroups)
}

/// Generic enumeration, independent of any closed form.
pub fn subgroups_by_join(g: &Group) -> Vec<Subgroup> {
    let mut seen: HashSet<ElementSet> = HashSet::new();
    let mut cyclic = Vec::new();
    for x in g.elements() {
        let c = generate_subgroup(g, &[x]);
        if seen.insert(c.elements.clone()) {
            cyclic.push(c);
        }
    }
    let mut all = cyclic.clone();
    let mut frontier = cyclic.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for k in &frontier {
            for c in &cyclic {
                if c.elements.is_subset(&k.elements) {
                    continue;
                }
                let mut gens = k.generators.clone();
                gens.extend_from_slice(&c.generators);
                let joined = generate_subgroup(g, &gens);
                if seen.insert(joined.elements.clone()) {
                    next.push(joined);
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}

fn sort_subgroups(subgroups: &mut [Subgroup]) {
    subgroups.sort_by_cached_key(|h| (h.order(), h.elements.to_vec()));
}

/// Right cosets `Hx`, ordered by minimal element, so `H` itself comes first.
#[derive(Debug, Clone)]
pub struct CosetDecomposition {
    cosets: Vec<ElementSet>,
    representatives: Vec<usize>,
    coset_of: Vec<usize>,
}

impl CosetDecomposition {
    pub fn cosets(&self) -> &[ElementSet] {
        &self.cosets
    }

    /// Minimal element of each coset.
    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn coset_of(&self, x: usize) -> usize {
        self.coset_of[x]
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    /// Cosets other than `H`, paired with their representatives.
    pub fn non_trivial(&self) -> impl Iterator<Item = (usize, &ElementSet)> {
        self.representatives
            .iter()
            .copied()
            .zip(&self.cosets)
            .skip(1)
    }

    /// True iff `t` meets every coset exactly once.
    pub fn is_transversal(&self, t: &ElementSet) -> bool {
        t.len() == self.len() && self.cosets.iter().all(|c| c.intersection_len(t) == 1)
    }
}

pub fn right_cosets(g: &Group, h: &Subgroup) -> CosetDecomposition {
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut cosets = Vec::new();
    let mut representatives = Vec::new();
    for x in g.elements() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let coset = g.set_of(h.elements.iter().map(|y| g.mul(y, x)));
        for y in coset.iter() {
            coset_of[y] = cosets.len();
        }
        representatives.push(x);
        cosets.push(coset);
    }
    CosetDecomposition {
        cosets,
        representatives,
        coset_of,
    }
}
