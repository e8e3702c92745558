//! Theory-versus-oracle sweeps over instance grids.
//!
//! Grammar: `abelian:max_order=N` | `dihedral:n=A..B` | `single:<group-spec>:<i,j,...>`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::abelian::feasible_pairs_abelian;
use crate::dihedral::feasible_pairs_dihedral;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::group::{Group, GroupSpec};
use crate::oracle::{enumerate_pairs, EnumerationBudget, Pair};
use crate::subgroup::{all_subgroups, DihedralFamily, Subgroup, DEFAULT_SUBGROUP_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SweepSpec {
    Abelian {
        max_order: usize,
    },
    Dihedral {
        from: usize,
        to: usize,
    },
    Single {
        group: GroupSpec,
        subgroup: Vec<usize>,
    },
}

impl FromStr for SweepSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::MalformedSweep(text.to_string());
        let text = text.trim();
        if let Some(rest) = text.strip_prefix("abelian:") {
            let max_order = rest
                .strip_prefix("max_order=")
                .and_then(|v| v.trim().parse().ok())
                .ok_or_else(bad)?;
            Ok(SweepSpec::Abelian { max_order })
        } else if let Some(rest) = text.strip_prefix("dihedral:") {
            let range = rest.strip_prefix("n=").ok_or_else(bad)?;
            let (from, to) = match range.split_once("..") {
                Some((a, b)) => (a.trim().parse().ok(), b.trim().parse().ok()),
                None => {
                    let n = range.trim().parse().ok();
                    (n, n)
                }
            };
            match (from, to) {
                (Some(from), Some(to)) if from >= 3 && from <= to => {
                    Ok(SweepSpec::Dihedral { from, to })
                }
                _ => Err(bad()),
            }
        } else if let Some(rest) = text.strip_prefix("single:") {
            let (group, indices) = rest.rsplit_once(':').ok_or_else(bad)?;
            let group: GroupSpec = group.parse()?;
            let subgroup = indices
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| bad())?;
            Ok(SweepSpec::Single { group, subgroup })
        } else {
            Err(bad())
        }
    }
}

impl fmt::Display for SweepSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SweepSpec::Abelian { max_order } => write!(f, "abelian:max_order={max_order}"),
            SweepSpec::Dihedral { from, to } => write!(f, "dihedral:n={from}..{to}"),
            SweepSpec::Single { group, subgroup } => {
                let idx: Vec<String> = subgroup.iter().map(ToString::to_string).collect();
                write!(f, "single:{group}:{}", idx.join(","))
            }
        }
    }
}

/// Every nondecreasing list of factors `>= 2` with product `<= max_order`.
pub fn abelian_factor_lists(max_order: usize) -> Vec<Vec<usize>> {
    fn go(min: usize, budget: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for f in min..=budget {
            prefix.push(f);
            out.push(prefix.clone());
            go(f, budget / f, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(2, max_order, &mut Vec::new(), &mut out);
    out.sort_by_key(|f| (f.iter().product::<usize>(), f.clone()));
    out
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub group: Group,
    pub subgroup: Subgroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkippedInstance {
    pub group: String,
    pub subgroup: Vec<usize>,
    pub reason: String,
}

fn skipped(g: &Group, h: &Subgroup, reason: impl Into<String>) -> SkippedInstance {
    SkippedInstance {
        group: g.spec().to_string(),
        subgroup: h.elements().to_vec(),
        reason: reason.into(),
    }
}

/// Expands a sweep into proper-subgroup instances; `H = G` instances are listed as skipped.
pub fn instances(spec: &SweepSpec) -> Result<(Vec<Instance>, Vec<SkippedInstance>)> {
    let groups: Vec<(Group, Vec<Subgroup>)> = match spec {
        SweepSpec::Abelian { max_order } => abelian_factor_lists(*max_order)
            .into_iter()
            .map(|f| {
                let g = Group::abelian(&f)?;
                let subs = all_subgroups(&g, DEFAULT_SUBGROUP_BUDGET)?;
                Ok((g, subs))
            })
            .collect::<Result<_>>()?,
        SweepSpec::Dihedral { from, to } => (*from..=*to)
            .map(|n| {
                let g = Group::dihedral(n)?;
                let subs = DihedralFamily::all(n)
                    .into_iter()
                    .map(|f| Subgroup::dihedral(&g, f))
                    .collect::<Result<_>>()?;
                Ok((g, subs))
            })
            .collect::<Result<_>>()?,
        SweepSpec::Single { group, subgroup } => {
            let g = Group::new(group.clone())?;
            let set = g.set_of(subgroup.iter().copied().filter(|&x| x < g.order()));
            if set.len() != subgroup.len() {
                return Err(Error::UnknownElement(format!("{subgroup:?}")));
            }
            let h = Subgroup::from_elements(&g, set)?;
            vec![(g, vec![h])]
        }
    };
    let mut out = Vec::new();
    let mut skip = Vec::new();
    for (g, subs) in groups {
        for h in subs {
            if h.is_whole() {
                skip.push(skipped(&g, &h, "subgroup is the whole group"));
            } else {
                out.push(Instance {
                    group: g.clone(),
                    subgroup: h,
                });
            }
        }
    }
    Ok((out, skip))
}

/// Pair-set prediction from the closed forms; `NoPredictor` when none applies.
pub fn theory_pairs(g: &Group, h: &Subgroup) -> Result<BTreeSet<Pair>> {
    if g.is_abelian() {
        return Ok(feasible_pairs_abelian(g, h)?.pairs().into_iter().collect());
    }
    match (g.dihedral_n(), h.family()) {
        (Some(n), Some(family)) => Ok(feasible_pairs_dihedral(n, family)?.pairs),
        _ => Err(Error::NoPredictor(format!(
            "{} is neither abelian nor dihedral",
            g.spec()
        ))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub group: String,
    pub subgroup: Vec<usize>,
    pub family: Option<String>,
    pub theory: BTreeSet<Pair>,
    pub oracle: BTreeSet<Pair>,
    pub agree: bool,
    pub only_theory: Vec<Pair>,
    pub only_oracle: Vec<Pair>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub spec: String,
    pub rows: Vec<SweepRow>,
    pub skipped: Vec<SkippedInstance>,
}

impl SweepReport {
    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(|r| r.agree)
    }

    pub fn disagreements(&self) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(|r| !r.agree)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from(
            "group\tsubgroup\tfamily\tagree\ttheory\toracle\tonly_theory\tonly_oracle\n",
        );
        for r in &self.rows {
            let idx: Vec<String> = r.subgroup.iter().map(ToString::to_string).collect();
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                r.group,
                idx.join(","),
                r.family.as_deref().unwrap_or("-"),
                r.agree,
                render_pairs(&r.theory),
                render_pairs(&r.oracle),
                render_pairs(&r.only_theory),
                render_pairs(&r.only_oracle),
            ));
        }
        out
    }
}

pub fn render_pairs<'a>(pairs: impl IntoIterator<Item = &'a Pair>) -> String {
    let parts: Vec<String> = pairs
        .into_iter()
        .map(|(a, b)| format!("({a},{b})"))
        .collect();
    if parts.is_empty() {
        "-".to_string()
    } else {
        parts.join(";")
    }
}

enum Outcome {
    Row(SweepRow),
    Skip(SkippedInstance),
}

/// Compares `predictor` with the exhaustive oracle on every instance of `spec`.
///
/// Disagreements are data; only malformed input is an error. Instances the
/// predictor or oracle cannot handle (no closed form, budget) are listed as skipped.
pub fn sweep_with<P>(
    spec: &SweepSpec,
    budget: &EnumerationBudget,
    predictor: P,
) -> Result<SweepReport>
where
    P: Fn(&Group, &Subgroup) -> Result<BTreeSet<Pair>> + Sync + Send,
{
    let (grid, mut skip) = instances(spec)?;
    let inner = EnumerationBudget {
        execution: Execution::Sequential,
        ..*budget
    };
    let outcomes = budget.execution.map(&grid, |inst| {
        let (g, h) = (&inst.group, &inst.subgroup);
        let theory = match predictor(g, h) {
            Ok(p) => p,
            Err(e) => return Outcome::Skip(skipped(g, h, e.to_string())),
        };
        let oracle = match enumerate_pairs(g, h, &inner) {
            Ok(r) => r.pair_set(),
            Err(e) => return Outcome::Skip(skipped(g, h, e.to_string())),
        };
        let only_theory: Vec<Pair> = theory.difference(&oracle).copied().collect();
        let only_oracle: Vec<Pair> = oracle.difference(&theory).copied().collect();
        Outcome::Row(SweepRow {
            group: g.spec().to_string(),
            subgroup: h.elements().to_vec(),
            family: h.family().map(|f| f.to_string()),
            agree: only_theory.is_empty() && only_oracle.is_empty(),
            theory,
            oracle,
            only_theory,
            only_oracle,
        })
    });
    let mut rows = Vec::new();
    for o in outcomes {
        match o {
            Outcome::Row(r) => rows.push(r),
            Outcome::Skip(s) => skip.push(s),
        }
    }
    Ok(SweepReport {
        spec: spec.to_string(),
        rows,
        skipped: skip,
    })
}

pub fn verify_theorem_sweep(spec: &SweepSpec, budget: &EnumerationBudget) -> Result<SweepReport> {
    sweep_with(spec, budget, theory_pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_grammar() {
        assert_eq!(
            "abelian:max_order=16".parse::<SweepSpec>().unwrap(),
            SweepSpec::Abelian { max_order: 16 }
        );
        assert_eq!(
            "dihedral:n=3..14".parse::<SweepSpec>().unwrap(),
            SweepSpec::Dihedral { from: 3, to: 14 }
        );
        assert_eq!(
            "single:abelian:2,4:0,4".parse::<SweepSpec>().unwrap(),
            SweepSpec::Single {
                group: GroupSpec::Abelian(vec![2, 4]),
                subgroup: vec![0, 4]
            }
        );
        for bad in [
            "abelian:16",
            "dihedral:n=2..5",
            "dihedral:n=9..4",
            "single:dihedral:4",
            "nope",
        ] {
            assert!(bad.parse::<SweepSpec>().is_err(), "{bad}");
        }
        let s: SweepSpec = "single:dihedral:4:0,6".parse().unwrap();
        assert_eq!(s.to_string().parse::<SweepSpec>().unwrap(), s);
    }

    #[test]
    fn factor_lists() {
        let lists = abelian_factor_lists(8);
        assert_eq!(
            lists,
            vec![
                vec![2],
                vec![3],
                vec![2, 2],
                vec![4],
                vec![5],
                vec![2, 3],
                vec![6],
                vec![7],
                vec![2, 2, 2],
                vec![2, 4],
                vec![8],
            ]
        );
    }

    #[test]
    fn small_sweeps_agree() {
        let budget = EnumerationBudget::default();
        let report =
            verify_theorem_sweep(&"abelian:max_order=8".parse().unwrap(), &budget).unwrap();
        assert!(report.all_agree());
        assert_eq!(report.skipped.len(), abelian_factor_lists(8).len());
        let report = verify_theorem_sweep(&"dihedral:n=3..6".parse().unwrap(), &budget).unwrap();
        assert!(report.all_agree());
        assert!(report.to_tsv().lines().count() == report.rows.len() + 1);
    }

    #[test]
    fn corrupted_predictor_is_caught() {
        let spec: SweepSpec = "dihedral:n=4..5".parse().unwrap();
        let report = sweep_with(&spec, &EnumerationBudget::default(), |g, h| {
            let mut p = theory_pairs(g, h)?;
            p.insert((99, 99));
            Ok(p)
        })
        .unwrap();
        assert!(!report.all_agree());
        assert!(report
            .disagreements()
            .all(|r| r.only_theory == vec![(99, 99)]));
    }

    #[test]
    fn single_instance_and_errors() {
        let spec: SweepSpec = "single:dihedral:4:0,6".parse().unwrap();
        let report = verify_theorem_sweep(&spec, &EnumerationBudget::default()).unwrap();
        assert_eq!(report.rows.len(), 1);
        assert_eq!(report.rows[0].oracle, BTreeSet::from([(1, 1)]));
        let bad: SweepSpec = "single:dihedral:4:0,1".parse().unwrap();
        assert!(matches!(instances(&bad), Err(Error::NotSubgroup(_))));
    }
}
