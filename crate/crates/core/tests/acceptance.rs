//! Acceptance criteria A1–A8. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use regset::abelian::{
    classify_02, classify_03, l_of_h_abelian_closed_form, l_of_h_bruteforce, Outcome,
};
use regset::cayley::{
    build_graph, check_perfect_code_conditions, check_regular_set, make_connection_set,
    quotient_matrix,
};
use regset::dihedral::{
    claim_reflections_inside, claim_reflections_per_coset, claim_transversal, witness_dihedral,
};
use regset::discrepancy::discrepancy_report;
use regset::oracle::{candidate_space, enumerate_pairs, random_small_group, EnumerationBudget};
use regset::subgroup::{all_subgroups, generate_subgroup, DEFAULT_SUBGROUP_BUDGET};
use regset::sweep::{instances, verify_theorem_sweep, SweepSpec};
use regset::{DihedralFamily, Group, Subgroup};

struct Criterion {
    pass: bool,
    detail: String,
}

type Check = (&'static str, &'static str, fn() -> Criterion);

fn check(pass: bool, detail: impl Into<String>) -> Criterion {
    Criterion {
        pass,
        detail: detail.into(),
    }
}

fn within(start: Instant, limit: Duration) -> (bool, String) {
    let elapsed = start.elapsed();
    (
        elapsed <= limit,
        format!("{:.2?} (limit {:?})", elapsed, limit),
    )
}

fn a1() -> Criterion {
    let start = Instant::now();
    let g = Group::dihedral(4).unwrap();
    let class_b = g.set_of([g.reflection(0), g.reflection(2)]);
    let class_ab = g.set_of([g.reflection(1), g.reflection(3)]);
    let s = make_connection_set(&g, class_b.union(&class_ab)).unwrap();
    let graph = build_graph(&g, &s);

    let h1 = generate_subgroup(&g, &[g.reflection(2)]);
    let p1 = check_regular_set(&graph, h1.elements()).unwrap().pair();
    let h2 = generate_subgroup(&g, &[g.rotation(2), g.reflection(1)]);
    let p2 = check_regular_set(&graph, h2.elements()).unwrap().pair();
    let (fast, time) = within(start, Duration::from_secs(1));
    check(
        p1 == Some((1, 1)) && p2 == Some((2, 2)) && fast,
        format!("<a^2b>: {p1:?}, <a^2,ab>: {p2:?}, {time}"),
    )
}

fn a2() -> Criterion {
    let start = Instant::now();
    let budget = EnumerationBudget::default();
    let mut bad = Vec::new();
    let mut checked = 0;
    for n in 3..=30 {
        let g = Group::dihedral(n).unwrap();
        for s in 0..n {
            let h = Subgroup::dihedral(&g, DihedralFamily::Mixed { t: n, s }).unwrap();
            let pairs = enumerate_pairs(&g, &h, &budget).unwrap().pair_set();
            checked += 1;
            if pairs != BTreeSet::from([(1, 1)]) {
                bad.push(format!("n={n} s={s}: {pairs:?}"));
            }
        }
    }
    let (fast, time) = within(start, Duration::from_secs(30));
    check(
        bad.is_empty() && fast,
        format!(
            "{checked} reflection subgroups, {} mismatches {bad:?}, {time}",
            bad.len()
        ),
    )
}

fn abelian_grid() -> SweepSpec {
    SweepSpec::Abelian { max_order: 16 }
}

fn a3() -> Criterion {
    let start = Instant::now();
    let report = verify_theorem_sweep(&abelian_grid(), &EnumerationBudget::default()).unwrap();
    let budget_skips: Vec<_> = report
        .skipped
        .iter()
        .filter(|s| s.reason != "subgroup is the whole group")
        .collect();
    let bad: Vec<String> = report
        .disagreements()
        .map(|r| format!("{} {:?}", r.group, r.subgroup))
        .collect();
    let (fast, time) = within(start, Duration::from_secs(300));
    check(
        bad.is_empty() && fast && !report.rows.is_empty(),
        format!(
            "{} (G,H) instances, {} mismatches {bad:?}, skipped for budget: {budget_skips:?}, {time}",
            report.rows.len(),
            bad.len()
        ),
    )
}

fn a4() -> Criterion {
    let (grid, _) = instances(&abelian_grid()).unwrap();
    let bad: Vec<String> = grid
        .iter()
        .filter(|i| {
            l_of_h_abelian_closed_form(&i.group, &i.subgroup)
                .unwrap()
                .value
                != l_of_h_bruteforce(&i.group, &i.subgroup).value
        })
        .map(|i| format!("{} {:?}", i.group.spec(), i.subgroup.elements()))
        .collect();
    check(
        bad.is_empty(),
        format!(
            "{} (G,H) instances, {} mismatches {bad:?}",
            grid.len(),
            bad.len()
        ),
    )
}

fn a5() -> Criterion {
    let start = Instant::now();
    let budget = EnumerationBudget::default();
    let report = verify_theorem_sweep(&SweepSpec::Dihedral { from: 3, to: 20 }, &budget).unwrap();
    let bad: Vec<String> = report
        .disagreements()
        .map(|r| {
            format!(
                "{} {}: theory-only {:?} oracle-only {:?}",
                r.group,
                r.family.as_deref().unwrap_or("?"),
                r.only_theory,
                r.only_oracle
            )
        })
        .collect();
    let mut witness_failures = Vec::new();
    let mut witnesses = 0;
    for row in &report.rows {
        let n: usize = row.group.trim_start_matches("dihedral:").parse().unwrap();
        let g = Group::dihedral(n).unwrap();
        let family = DihedralFamily::identify(n, &g.set_of(row.subgroup.iter().copied())).unwrap();
        for &(a, b) in &row.theory {
            witnesses += 1;
            if let Err(e) = witness_dihedral(&g, family, a, b) {
                witness_failures.push(format!("n={n} {family} ({a},{b}): {e}"));
            }
        }
    }
    let discrepancies = discrepancy_report(&budget).unwrap();
    let adjudicated = ["cyclic-odd-n-beta", "witness-count-exponent"]
        .iter()
        .all(|id| discrepancies.get(id).is_some());
    for f in &discrepancies.findings {
        println!(
            "    [{}] claim holds: {}; {}",
            f.id, f.claim_holds, f.observed
        );
    }
    let (fast, time) = within(start, Duration::from_secs(300));
    check(
        bad.is_empty() && witness_failures.is_empty() && adjudicated && fast,
        format!(
            "{} family instances, {} mismatches {bad:?}, {witnesses} witnesses built, {} failed {witness_failures:?}, {time}",
            report.rows.len(),
            bad.len(),
            witness_failures.len()
        ),
    )
}

fn a6() -> Criterion {
    let mut failures = Vec::new();
    let mut checks = 0;
    for n in (4..=30).step_by(2) {
        let g = Group::dihedral(n).unwrap();
        let m = n / 2;
        for t in (3..=n).filter(|&t| n % t == 0 && t % 2 == 1) {
            for s in 0..t {
                checks += 2;
                if !claim_reflections_inside(n, t, s) {
                    failures.push(format!("inside n={n} t={t} s={s}"));
                }
                if !claim_reflections_per_coset(&g, t, s) {
                    failures.push(format!("per-coset n={n} t={t} s={s}"));
                }
                for i in 0..m / t {
                    checks += 1;
                    if !claim_transversal(&g, t, s, i) {
                        failures.push(format!("transversal n={n} t={t} s={s} i={i}"));
                    }
                }
            }
        }
    }
    check(
        failures.is_empty(),
        format!(
            "{checks} claim checks, {} failures {failures:?}",
            failures.len()
        ),
    )
}

fn a7() -> Criterion {
    let budget = EnumerationBudget::default();
    let (grid, _) = instances(&abelian_grid()).unwrap();
    let mut bad = Vec::new();
    for inst in &grid {
        let (g, h) = (&inst.group, &inst.subgroup);
        let oracle = enumerate_pairs(g, h, &budget).unwrap();
        let c2 = classify_02(g, h);
        let c3 = classify_03(g, h);
        match (c2, c3) {
            (Ok(c2), Ok(c3)) => {
                if c2.is_regular() != oracle.contains((0, 2))
                    || c3.is_regular() != oracle.contains((0, 3))
                {
                    bad.push(format!("{} {:?}", g.spec(), h.elements()));
                }
            }
            (c2, c3) => bad.push(format!(
                "{} {:?}: {:?} {:?}",
                g.spec(),
                h.elements(),
                c2.err(),
                c3.err()
            )),
        }
    }
    let g = Group::abelian(&[2, 8]).unwrap();
    let h = generate_subgroup(&g, &[g.from_coordinates(&[1, 2]).unwrap()]);
    let named = classify_03(&g, &h).unwrap();
    let named_ok = matches!(&named.outcome, Outcome::NotRegular(m) if m.case == 6);
    check(
        bad.is_empty() && named_ok,
        format!(
            "{} (G,H) instances, {} mismatches {bad:?}; C2xC8, <(1,2)> -> case {:?}",
            grid.len(),
            bad.len(),
            named.case()
        ),
    )
}

fn a8() -> Criterion {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA8);
    let mut failures = Vec::new();
    let mut regular = 0;
    let mut perfect = 0;
    let mut done = 0;
    while done < 1000 {
        let g = random_small_group(&mut rng);
        let classes = candidate_space(&g);
        if classes.is_empty() {
            continue;
        }
        let subgroups = all_subgroups(&g, DEFAULT_SUBGROUP_BUDGET).unwrap();
        let proper: Vec<&Subgroup> = subgroups.iter().filter(|h| !h.is_whole()).collect();
        let h = proper[rng.gen_range(0..proper.len())];
        let mut s = g.empty_set();
        while s.is_empty() {
            for c in &classes {
                if rng.gen_bool(0.5) {
                    s.union_with(c);
                }
            }
        }
        done += 1;
        let label = format!("{} H={:?} S={:?}", g.spec(), h.elements(), s);
        let c = make_connection_set(&g, s).unwrap();
        let graph = build_graph(&g, &c);
        if graph.degree() != c.len() || !graph.is_regular() {
            failures.push(format!("degree: {label}"));
        }
        if !graph.is_symmetric() || !graph.is_loopless() {
            failures.push(format!("symmetry/loops: {label}"));
        }
        let result = check_regular_set(&graph, h.elements()).unwrap();
        if let Some((a, b)) = result.pair() {
            regular += 1;
            if c.len() != a + b * (h.index_in(&g) - 1) {
                failures.push(format!("|S| formula: {label}"));
            }
            let q = quotient_matrix(&graph, h.elements()).unwrap();
            if q.iter().any(|row| row[0] + row[1] != c.len()) {
                failures.push(format!("quotient rows: {label}"));
            }
        }
        match check_perfect_code_conditions(&g, h, &c) {
            Ok(p) => perfect += usize::from(p.holds()),
            Err(e) => failures.push(format!("perfect-code conditions {e}: {label}")),
        }
    }
    check(
        failures.is_empty(),
        format!(
            "{done} random instances ({regular} regular, {perfect} perfect codes), {} failures {:?}",
            failures.len(),
            &failures[..failures.len().min(5)]
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Check; 8] = [
        ("A1", "D_8 fixtures", a1),
        ("A2", "reflection subgroups, n = 3..30", a2),
        ("A3", "abelian feasible region vs oracle, |G| <= 16", a3),
        ("A4", "L(H) closed form vs coset scan", a4),
        ("A5", "dihedral families vs oracle, n = 3..20", a5),
        (
            "A6",
            "reflection counts and transversal blocks, n <= 30",
            a6,
        ),
        ("A7", "(0,2)/(0,3) classifiers vs oracle", a7),
        ("A8", "structural properties, 1000 random instances", a8),
    ];
    let mut all = true;
    for (id, name, run) in criteria {
        let outcome = run();
        all &= outcome.pass;
        println!(
            "{id} {} {name}: {}",
            if outcome.pass { "PASS" } else { "FAIL" },
            outcome.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
