//! Worked D_8 examples and their drawings.

use std::collections::BTreeSet;

use regset::abelian::l_of_h_bruteforce;
use regset::cayley::{
    build_graph, check_regular_subgroup, decompose_connection_set, make_connection_set,
    quotient_matrix, to_dot,
};
use regset::oracle::{enumerate_pairs, EnumerationBudget};
use regset::subgroup::{generate_subgroup, right_cosets};
use regset::Group;

fn d8() -> Group {
    Group::dihedral(4).unwrap()
}

fn names(g: &Group, edges: &[(&str, &str)]) -> BTreeSet<(usize, usize)> {
    edges
        .iter()
        .map(|(x, y)| {
            let (x, y) = (g.parse_element(x).unwrap(), g.parse_element(y).unwrap());
            (x.min(y), x.max(y))
        })
        .collect()
}

/// Edge list of CayS(D_8, b^G ∪ (ab)^G) as drawn, split by line style.
struct Drawing {
    dashed: Vec<(&'static str, &'static str)>,
    bold: Vec<(&'static str, &'static str)>,
    plain: Vec<(&'static str, &'static str)>,
}

fn drawing_a() -> Drawing {
    Drawing {
        dashed: vec![("e", "a2b")],
        bold: vec![
            ("a", "a2b"),
            ("a2", "a2b"),
            ("a3", "a2b"),
            ("e", "a3b"),
            ("e", "ab"),
            ("e", "b"),
        ],
        plain: vec![
            ("a", "a3b"),
            ("a", "ab"),
            ("a", "b"),
            ("a2", "a3b"),
            ("a2", "ab"),
            ("a2", "b"),
            ("a3", "a3b"),
            ("a3", "ab"),
            ("a3", "b"),
        ],
    }
}

fn drawing_b() -> Drawing {
    Drawing {
        dashed: vec![("a2", "a3b"), ("a2", "ab"), ("e", "a3b"), ("e", "ab")],
        bold: vec![
            ("e", "a2b"),
            ("a", "a3b"),
            ("a", "ab"),
            ("a2", "a2b"),
            ("a2", "b"),
            ("a3", "a3b"),
            ("a3", "ab"),
            ("e", "b"),
        ],
        plain: vec![("a", "a2b"), ("a", "b"), ("a3", "a2b"), ("a3", "b")],
    }
}

fn dot_edges(dot: &str, style: Option<&str>) -> BTreeSet<(usize, usize)> {
    dot.lines()
        .filter(|l| l.contains(" -- "))
        .filter(|l| match style {
            Some(s) => l.contains(s),
            None => !l.contains('['),
        })
        .map(|l| {
            let body = l.trim().trim_end_matches(';');
            let body = body.split(" [").next().unwrap();
            let (x, y) = body.split_once(" -- ").unwrap();
            (x.parse().unwrap(), y.parse().unwrap())
        })
        .collect()
}

fn check_drawing(generators: &[&str], drawing: Drawing, pair: (usize, usize)) {
    let g = d8();
    let gens: Vec<usize> = generators
        .iter()
        .map(|x| g.parse_element(x).unwrap())
        .collect();
    let h = generate_subgroup(&g, &gens);
    let s = make_connection_set(&g, g.parse_elements("b,a2b,ab,a3b").unwrap()).unwrap();
    let graph = build_graph(&g, &s);

    let all: BTreeSet<_> = [&drawing.dashed, &drawing.bold, &drawing.plain]
        .into_iter()
        .flat_map(|e| names(&g, e))
        .collect();
    assert_eq!(graph.edges().collect::<BTreeSet<_>>(), all);

    let dot = to_dot(&g, &graph, Some(h.elements()));
    assert_eq!(dot_edges(&dot, Some("dashed")), names(&g, &drawing.dashed));
    assert_eq!(dot_edges(&dot, Some("bold")), names(&g, &drawing.bold));
    assert_eq!(dot_edges(&dot, None), names(&g, &drawing.plain));
    for x in g.elements() {
        let node = format!("  {x} [");
        let line = dot.lines().find(|l| l.starts_with(&node)).unwrap();
        assert_eq!(line.contains("fillcolor=white"), h.contains(x));
    }

    let result = check_regular_subgroup(&g, &graph, &h).unwrap();
    assert_eq!(result.pair(), Some(pair));
    let k = s.len();
    assert_eq!(
        quotient_matrix(&graph, h.elements()).unwrap(),
        [[pair.0, k - pair.0], [pair.1, k - pair.1]]
    );
}

#[test]
fn drawing_a_reflection_subgroup() {
    check_drawing(&["a2b"], drawing_a(), (1, 1));
}

#[test]
fn drawing_b_index_two_subgroup() {
    check_drawing(&["a2", "ab"], drawing_b(), (2, 2));
}

#[test]
fn worked_example_coset_data() {
    let g = d8();
    let h = generate_subgroup(&g, &[g.parse_element("a2b").unwrap()]);
    let nsq = g.non_squares();
    let cosets = right_cosets(&g, &h);
    assert_eq!(cosets.len(), 4);
    let meet: Vec<BTreeSet<String>> = cosets
        .cosets()
        .iter()
        .map(|c| g.render_set(&c.intersection(&nsq)).into_iter().collect())
        .collect();
    let expected: Vec<BTreeSet<String>> = [
        vec!["a^2*b"],
        vec!["a", "a*b"],
        vec!["b"],
        vec!["a^3", "a^3*b"],
    ]
    .into_iter()
    .map(|v| v.into_iter().map(String::from).collect())
    .collect();
    let mut meet_sorted = meet.clone();
    meet_sorted.sort();
    let mut expected_sorted = expected;
    expected_sorted.sort();
    assert_eq!(meet_sorted, expected_sorted);
    assert_eq!(l_of_h_bruteforce(&g, &h).value, Some(1));

    let s = make_connection_set(&g, g.parse_elements("b,a2b,ab,a3b").unwrap()).unwrap();
    let d = decompose_connection_set(&g, &h, &s).unwrap();
    assert_eq!(d.inside.len(), 1);
    assert_eq!(d.beta(), 1);
}

#[test]
fn d8_oracle_pair_sets() {
    let g = d8();
    let budget = EnumerationBudget::default();
    let pairs = |gens: &[&str]| {
        let gens: Vec<usize> = gens.iter().map(|x| g.parse_element(x).unwrap()).collect();
        enumerate_pairs(&g, &generate_subgroup(&g, &gens), &budget)
            .unwrap()
            .pair_set()
    };
    assert_eq!(pairs(&["a2b"]), BTreeSet::from([(1, 1)]));
    assert!(pairs(&["a2", "ab"]).contains(&(2, 2)));
}
