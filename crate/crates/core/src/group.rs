//! Finite groups on dense element indices.
//!
//! Every group numbers its elements `0..order` with the identity at index 0.
//! Abelian groups `C_{m_0} x .. x C_{m_{k-1}}` use mixed-radix indices with the
//! first coordinate most significant, so index order is lexicographic tuple order.
//! The dihedral group `D_{2n}` encodes `a^i b^l` as `i + n * l`.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::elements::ElementSet;
use crate::error::{Error, Result};

/// Tables up to this order are checked for associativity exhaustively.
pub const EXHAUSTIVE_AXIOM_LIMIT: usize = 128;

/// Structured groups up to this order get a precomputed Cayley table.
const TABLE_CACHE_LIMIT: usize = 1024;

const SAMPLED_AXIOM_SEED: u64 = 0x5eed_a550c;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Abelian(Vec<usize>),
    Dihedral(usize),
    Table {
        order: usize,
        table: Vec<usize>,
        source: Option<PathBuf>,
    },
}

#[derive(Debug, Deserialize, Serialize)]
struct TableFile {
    order: usize,
    table: Vec<usize>,
}

impl GroupSpec {
    /// Reads a `{order, table}` JSON file.
    pub fn from_table_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::TableIo(format!("{}: {e}", path.display())))?;
        let file: TableFile = serde_json::from_str(&text)
            .map_err(|e| Error::TableIo(format!("{}: {e}", path.display())))?;
        Ok(GroupSpec::Table {
            order: file.order,
            table: file.table,
            source: Some(path.to_path_buf()),
        })
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Grammar: `abelian:2,4,3` | `dihedral:12` | `table:<path>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedSpec(s.to_string());
        let (kind, rest) = s.trim().split_once(':').ok_or_else(bad)?;
        match kind {
            "abelian" => {
                let factors = rest
                    .split(',')
                    .map(|f| f.trim().parse::<usize>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| bad())?;
                Ok(GroupSpec::Abelian(factors))
            }
            "dihedral" => rest
                .trim()
                .parse()
                .map(GroupSpec::Dihedral)
                .map_err(|_| bad()),
            "table" if !rest.is_empty() => GroupSpec::from_table_file(Path::new(rest)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Abelian(factors) => {
                let parts: Vec<String> = factors.iter().map(|m| m.to_string()).collect();
                write!(f, "abelian:{}", parts.join(","))
            }
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Table {
                source: Some(p), ..
            } => write!(f, "table:{}", p.display()),
            GroupSpec::Table { order, .. } => write!(f, "table:<inline order {order}>"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupKind {
    Abelian { factors: Vec<usize> },
    Dihedral { n: usize },
    Table,
}

/// How thoroughly associativity was verified at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxiomCheck {
    /// Holds by construction (abelian and dihedral kinds).
    Structural,
    Exhaustive,
    Sampled {
        triples: usize,
    },
}

/// An immutable finite group.
#[derive(Debug, Clone)]
pub struct Group {
    kind: GroupKind,
    order: usize,
    table: Option<Vec<u32>>,
    inverses: Vec<usize>,
    axioms: AxiomCheck,
    spec: GroupSpec,
}

pub fn build_group(spec: &GroupSpec) -> Result<Group> {
    Group::new(spec.clone())
}

impl Group {
    pub fn new(spec: GroupSpec) -> Result<Self> {
        match &spec {
            GroupSpec::Abelian(factors) => {
                if factors.is_empty() || factors.iter().any(|&m| m < 2) {
                    return Err(Error::BadFactor(factors.clone()));
                }
                let order = factors.iter().product();
                let kind = GroupKind::Abelian {
                    factors: factors.clone(),
                };
                Ok(Self::structured(kind, order, spec))
            }
            &GroupSpec::Dihedral(n) => {
                if n < 3 {
                    return Err(Error::DihedralTooSmall(n));
                }
                Ok(Self::structured(GroupKind::Dihedral { n }, 2 * n, spec))
            }
            GroupSpec::Table { order, table, .. } => {
                let (inverses, axioms) = validate_table(*order, table)?;
                Ok(Self {
                    kind: GroupKind::Table,
                    order: *order,
                    table: Some(table.iter().map(|&v| v as u32).collect()),
                    inverses,
                    axioms,
                    spec,
                })
            }
        }
    }

    pub fn abelian(factors: &[usize]) -> Result<Self> {
        Self::new(GroupSpec::Abelian(factors.to_vec()))
    }

    pub fn dihedral(n: usize) -> Result<Self> {
        Self::new(GroupSpec::Dihedral(n))
    }

    fn structured(kind: GroupKind, order: usize, spec: GroupSpec) -> Self {
        let mut g = Self {
            kind,
            order,
            table: None,
            inverses: Vec::new(),
            axioms: AxiomCheck::Structural,
            spec,
        };
        g.inverses = (0..order).map(|x| g.compute_inverse(x)).collect();
        if order <= TABLE_CACHE_LIMIT {
            let mut table = Vec::with_capacity(order * order);
            for x in 0..order {
                for y in 0..order {
                    table.push(g.compute_product(x, y) as u32);
                }
            }
            g.table = Some(table);
        }
        g
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn axiom_check(&self) -> AxiomCheck {
        self.axioms
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// `n` when this is `D_{2n}`.
    pub fn dihedral_n(&self) -> Option<usize> {
        match self.kind {
            GroupKind::Dihedral { n } => Some(n),
            _ => None,
        }
    }

    pub fn factor_orders(&self) -> Option<&[usize]> {
        match &self.kind {
            GroupKind::Abelian { factors } => Some(factors),
            _ => None,
        }
    }

    pub fn is_abelian(&self) -> bool {
        match &self.kind {
            GroupKind::Abelian { .. } => true,
            GroupKind::Dihedral { .. } => false,
            GroupKind::Table => {
                (0..self.order).all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
            }
        }
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        match &self.table {
            Some(t) => t[x * self.order + y] as usize,
            None => self.compute_product(x, y),
        }
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inverses[x]
    }

    pub fn pow(&self, x: usize, mut k: usize) -> usize {
        let (mut acc, mut base) = (0, x);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> usize {
        let (mut y, mut k) = (x, 1);
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// `g x g^{-1}`.
    #[inline]
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn empty_set(&self) -> ElementSet {
        ElementSet::empty(self.order)
    }

    pub fn set_of<I: IntoIterator<Item = usize>>(&self, xs: I) -> ElementSet {
        ElementSet::from_indices(self.order, xs)
    }

    // --- dihedral coordinates ---

    /// Index of `a^i` in `D_{2n}` (exponent taken mod n).
    pub fn rotation(&self, i: i64) -> usize {
        let n = self.dihedral_n().expect("rotation on non-dihedral group");
        i.rem_euclid(n as i64) as usize
    }

    /// Index of `a^i b` in `D_{2n}`.
    pub fn reflection(&self, i: i64) -> usize {
        let n = self.dihedral_n().expect("reflection on non-dihedral group");
        i.rem_euclid(n as i64) as usize + n
    }

    // --- abelian coordinates ---

    pub fn coordinates(&self, x: usize) -> Option<Vec<usize>> {
        let factors = self.factor_orders()?;
        let mut coords = vec![0; factors.len()];
        let mut rest = x;
        for (slot, &m) in coords.iter_mut().zip(factors).rev() {
            *slot = rest % m;
            rest /= m;
        }
        Some(coords)
    }

    pub fn from_coordinates(&self, coords: &[usize]) -> Option<usize> {
        let factors = self.factor_orders()?;
        if coords.len() != factors.len() || coords.iter().zip(factors).any(|(c, m)| c >= m) {
            return None;
        }
        Some(
            coords
                .iter()
                .zip(factors)
                .fold(0, |acc, (&c, &m)| acc * m + c),
        )
    }

    fn compute_product(&self, x: usize, y: usize) -> usize {
        match &self.kind {
            GroupKind::Abelian { factors } => {
                let (mut out, mut stride, mut xr, mut yr) = (0, 1, x, y);
                for &m in factors.iter().rev() {
                    out += (xr % m + yr % m) % m * stride;
                    stride *= m;
                    xr /= m;
                    yr /= m;
                }
                out
            }
            &GroupKind::Dihedral { n } => {
                let (i, l) = (x % n, x / n);
                let (k, r) = (y % n, y / n);
                // a^i b^l a^k b^r = a^(i + (-1)^l k) b^(l + r)
                let exp = if l == 0 { (i + k) % n } else { (i + n - k) % n };
                exp + n * ((l + r) % 2)
            }
            GroupKind::Table => unreachable!("table groups always carry a table"),
        }
    }

    fn compute_inverse(&self, x: usize) -> usize {
        match &self.kind {
            GroupKind::Abelian { factors } => {
                let (mut out, mut stride, mut xr) = (0, 1, x);
                for &m in factors.iter().rev() {
                    out += (m - xr % m) % m * stride;
                    stride *= m;
                    xr /= m;
                }
                out
            }
            &GroupKind::Dihedral { n } => {
                if x < n {
                    (n - x) % n
                } else {
                    x
                }
            }
            GroupKind::Table => unreachable!(),
        }
    }

    // --- rendering and parsing ---

    pub fn render(&self, x: usize) -> String {
        match &self.kind {
            GroupKind::Abelian { .. } => {
                let coords = self.coordinates(x).unwrap();
                let parts: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
                format!("({})", parts.join(","))
            }
            &GroupKind::Dihedral { n } => {
                let (i, l) = (x % n, x / n);
                let rot = match i {
                    0 => String::new(),
                    1 => "a".to_string(),
                    _ => format!("a^{i}"),
                };
                match (rot.is_empty(), l) {
                    (true, 0) => "e".to_string(),
                    (true, _) => "b".to_string(),
                    (false, 0) => rot,
                    (false, _) => format!("{rot}*b"),
                }
            }
            GroupKind::Table => x.to_string(),
        }
    }

    pub fn render_set(&self, s: &ElementSet) -> Vec<String> {
        s.iter().map(|x| self.render(x)).collect()
    }

    /// Parses an element name.
    ///
    /// Accepted everywhere: `e` and bare indices. Dihedral: `a`, `a3`, `a^3`,
    /// `b`, `ab`, `a2b`, `a^2*b`. Abelian: `g(1,2,0)`, `(1,2,0)`, and `g<k>`
    /// for the k-th power of the generator of a cyclic group.
    pub fn parse_element(&self, text: &str) -> Result<usize> {
        let t = text.trim();
        let unknown = || Error::UnknownElement(text.to_string());
        if t == "e" {
            return Ok(0);
        }
        if let Ok(idx) = t.parse::<usize>() {
            return if idx < self.order {
                Ok(idx)
            } else {
                Err(unknown())
            };
        }
        match &self.kind {
            GroupKind::Dihedral { .. } => {
                let compact: String = t.chars().filter(|c| !matches!(c, '^' | '*')).collect();
                let (rot, refl) = match compact.strip_suffix('b') {
                    Some(r) => (r, true),
                    None => (compact.as_str(), false),
                };
                let exp: i64 = if rot.is_empty() {
                    0
                } else {
                    let digits = rot.strip_prefix('a').ok_or_else(unknown)?;
                    if digits.is_empty() {
                        1
                    } else {
                        digits.parse().map_err(|_| unknown())?
                    }
                };
                Ok(if refl {
                    self.reflection(exp)
                } else {
                    self.rotation(exp)
                })
            }
            GroupKind::Abelian { factors } => {
                let body = t.strip_prefix('g').unwrap_or(t);
                if let Some(inner) = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')) {
                    let coords = inner
                        .split(',')
                        .map(|c| c.trim().parse::<usize>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| unknown())?;
                    return self.from_coordinates(&coords).ok_or_else(unknown);
                }
                if factors.len() == 1 && t.starts_with('g') {
                    let k: usize = body.parse().map_err(|_| unknown())?;
                    return Ok(k % factors[0]);
                }
                Err(unknown())
            }
            GroupKind::Table => Err(unknown()),
        }
    }

    pub fn parse_elements(&self, text: &str) -> Result<ElementSet> {
        let mut set = self.empty_set();
        for part in split_element_list(text) {
            set.insert(self.parse_element(&part)?);
        }
        Ok(set)
    }

    // --- squares and conjugacy ---

    /// `Sq(G) = { y^2 : y in G }`.
    pub fn squares(&self) -> ElementSet {
        self.set_of(self.elements().map(|y| self.mul(y, y)))
    }

    /// `NSq(G)`, the complement of [`Group::squares`].
    pub fn non_squares(&self) -> ElementSet {
        self.squares().complement()
    }

    /// Conjugacy classes ordered by minimal element.
    pub fn conjugacy_classes(&self) -> Vec<ElementSet> {
        match self.kind {
            GroupKind::Abelian { .. } => self
                .elements()
                .map(|x| ElementSet::singleton(self.order, x))
                .collect(),
            GroupKind::Dihedral { n } => {
                let classes = dihedral_classes(n);
                debug_assert_eq!(classes, self.orbit_classes());
                classes
            }
            GroupKind::Table => self.orbit_classes(),
        }
    }

    /// Conjugacy classes by direct orbit computation.
    pub fn orbit_classes(&self) -> Vec<ElementSet> {
        let mut seen = self.empty_set();
        let mut classes = Vec::new();
        for x in self.elements() {
            if seen.contains(x) {
                continue;
            }
            let class = self.set_of(self.elements().map(|g| self.conjugate(x, g)));
            seen.union_with(&class);
            classes.push(class);
        }
        classes
    }

    /// True iff `s` is closed under conjugation, i.e. a union of classes.
    pub fn is_normal_subset(&self, s: &ElementSet) -> bool {
        self.first_normality_violation(s).is_none()
    }

    /// Some `(x, g x g^{-1})` with `x` in `s` and the conjugate outside.
    pub fn first_normality_violation(&self, s: &ElementSet) -> Option<(usize, usize)> {
        s.iter().find_map(|x| {
            self.elements()
                .map(|g| self.conjugate(x, g))
                .find(|c| !s.contains(*c))
                .map(|c| (x, c))
        })
    }
}

/// Splits `a2,ab` or `(1,0),(0,1)` on commas outside parentheses.
pub fn split_element_list(text: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    for c in text.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                if !current.trim().is_empty() {
                    parts.push(current.trim().to_string());
                }
                current.clear();
                continue;
            }
            _ => {}
        }
        current.push(c);
    }
    if !current.trim().is_empty() {
        parts.push(current.trim().to_string());
    }
    parts
}

/// Closed-form conjugacy classes of `D_{2n}`, sorted by minimal index.
///
/// n odd: `{e}`, `{a^i, a^-i}` for `1 <= i <= (n-1)/2`, and all reflections.
/// n = 2m: additionally `{a^m}`, and the reflections split by parity of the exponent.
pub fn dihedral_classes(n: usize) -> Vec<ElementSet> {
    let order = 2 * n;
    let mut classes = vec![ElementSet::singleton(order, 0)];
    for i in 1..=(n / 2) {
        classes.push(ElementSet::from_indices(order, [i, (n - i) % n]));
    }
    if n % 2 == 1 {
        classes.push(ElementSet::from_indices(order, n..2 * n));
    } else {
        classes.push(ElementSet::from_indices(order, (n..2 * n).step_by(2)));
        classes.push(ElementSet::from_indices(order, (n + 1..2 * n).step_by(2)));
    }
    classes
}

fn validate_table(order: usize, table: &[usize]) -> Result<(Vec<usize>, AxiomCheck)> {
    if order == 0 || table.len() != order * order {
        return Err(Error::TableShape {
            got: table.len(),
            expected: order * order,
        });
    }
    if let Some(&value) = table.iter().find(|&&v| v >= order) {
        return Err(Error::TableEntry { value, order });
    }
    let mul = |x: usize, y: usize| table[x * order + y];
    if let Some(x) = (0..order).find(|&x| mul(0, x) != x || mul(x, 0) != x) {
        return Err(Error::MissingIdentity(x));
    }
    let mut inverses = Vec::with_capacity(order);
    for x in 0..order {
        let inv = (0..order)
            .find(|&y| mul(x, y) == 0 && mul(y, x) == 0)
            .ok_or(Error::MissingInverse(x))?;
        inverses.push(inv);
    }
    let assoc = |x: usize, y: usize, z: usize| mul(mul(x, y), z) == mul(x, mul(y, z));
    let axioms = if order <= EXHAUSTIVE_AXIOM_LIMIT {
        for x in 0..order {
            for y in 0..order {
                for z in 0..order {
                    if !assoc(x, y, z) {
                        return Err(Error::NonAssociative(x, y, z));
                    }
                }
            }
        }
        AxiomCheck::Exhaustive
    } else {
        let triples = 10 * order;
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLED_AXIOM_SEED);
        for _ in 0..triples {
            let (x, y, z) = (
                rng.gen_range(0..order),
                rng.gen_range(0..order),
                rng.gen_range(0..order),
            );
            if !assoc(x, y, z) {
                return Err(Error::NonAssociative(x, y, z));
            }
        }
        AxiomCheck::Sampled { triples }
    };
    Ok((inverses, axioms))
}
