use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use regset::abelian::{
    classify_02, classify_03, feasible_pairs_abelian, is_subgroup_perfect_code_abelian,
    l_of_h_abelian_closed_form, l_of_h_bruteforce, witness_abelian, Classification, LBranch,
    PerfectCodeVerdict,
};
use regset::cayley::{
    build_graph, check_perfect_code_conditions, check_regular_subgroup, make_connection_set,
    to_dot, ConnectionSet, RegularityReport,
};
use regset::dihedral::{feasible_pairs_dihedral, witness_dihedral};
use regset::oracle::{
    candidate_space, enumerate_pairs, EnumerationBudget, OracleReport, Pair,
    DEFAULT_MAX_CANDIDATE_SETS,
};
use regset::subgroup::{all_subgroups, DEFAULT_SUBGROUP_BUDGET};
use regset::sweep::{theory_pairs, verify_theorem_sweep, SweepSpec};
use regset::{Error, Execution, Group, GroupSpec, Subgroup};

use crate::output::{json, pair_text, ExportDoc};
use crate::selector::{parse_pair, parse_subgroup};
use crate::{Format, Method, Target};

pub const BUDGET_ENV: &str = "REGSET_BUDGET";

/// A non-zero exit: code, one-line diagnostic, and optional standard output.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
    pub stdout: Option<String>,
}

impl Failure {
    fn usage(message: impl std::fmt::Display) -> Self {
        Self {
            code: 1,
            message: format!("usage error: {message}"),
            stdout: None,
        }
    }

    fn infeasible(message: impl std::fmt::Display) -> Self {
        Self {
            code: 2,
            message: format!("infeasible: {message}"),
            stdout: None,
        }
    }

    fn disagreement(message: impl std::fmt::Display, stdout: String) -> Self {
        Self {
            code: 3,
            message: format!("disagreement: {message}"),
            stdout: Some(stdout),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, prefix) = match &e {
            Error::MalformedSpec(_) | Error::MalformedSweep(_) | Error::TableIo(_) => {
                (1, "spec error")
            }
            Error::BudgetExceeded { .. } | Error::SubgroupBudget { .. } => (1, "budget exceeded"),
            Error::Infeasible { .. } => (2, "infeasible"),
            Error::ConditionDisagreement { .. } | Error::WitnessVerification(_) => {
                (3, "disagreement")
            }
            _ => (1, "input error"),
        };
        Self {
            code,
            message: format!("{prefix}: {e}"),
            stdout: None,
        }
    }
}

type Outcome = Result<String, Failure>;

pub struct Context {
    format: Format,
    budget: EnumerationBudget,
}

impl Context {
    pub fn new(format: Format, budget: Option<u64>, sequential: bool) -> Result<Self, Failure> {
        let max_candidate_sets = match budget {
            Some(b) => b,
            None => match std::env::var(BUDGET_ENV) {
                Ok(v) => v
                    .trim()
                    .parse()
                    .map_err(|_| Failure::usage(format!("{BUDGET_ENV}=`{v}` is not an integer")))?,
                Err(_) => DEFAULT_MAX_CANDIDATE_SETS,
            },
        };
        let execution = if sequential {
            Execution::Sequential
        } else {
            Execution::default()
        };
        Ok(Self {
            format,
            budget: EnumerationBudget {
                max_candidate_sets,
                ..EnumerationBudget::default()
            }
            .with_execution(execution),
        })
    }

    pub fn with_format(mut self, format: Option<Format>) -> Self {
        if let Some(f) = format {
            self.format = f;
        }
        self
    }

    fn unsupported(&self, verb: &str) -> Failure {
        Failure::usage(format!(
            "format {:?} is not available for `{verb}`",
            self.format
        ))
    }

    fn group(text: &str) -> Result<Group, Failure> {
        let spec: GroupSpec = text.parse()?;
        Ok(Group::new(spec)?)
    }

    fn target(target: &Target) -> Result<(Group, Subgroup), Failure> {
        let selector = target
            .subgroup
            .as_deref()
            .ok_or_else(|| Failure::usage("--subgroup is required"))?;
        let g = Self::group(&target.group)?;
        let h = parse_subgroup(&g, selector)?;
        if h.is_whole() {
            return Err(Error::WholeGroup.into());
        }
        Ok((g, h))
    }

    fn pair_arg(text: &str) -> Result<Pair, Failure> {
        parse_pair(text).ok_or_else(|| Failure::usage(format!("pair `{text}` is not `alpha,beta`")))
    }

    // --- verbs ---

    pub fn squares(&self, group: &str) -> Outcome {
        let g = Self::group(group)?;
        let sq = g.squares();
        let nsq = g.non_squares();
        match self.format {
            Format::Json => {
                #[derive(Serialize)]
                struct Out {
                    group: String,
                    squares: Vec<usize>,
                    square_names: Vec<String>,
                    non_squares: Vec<usize>,
                    non_square_names: Vec<String>,
                }
                Ok(json(&Out {
                    group: g.spec().to_string(),
                    squares: sq.to_vec(),
                    square_names: g.render_set(&sq),
                    non_squares: nsq.to_vec(),
                    non_square_names: g.render_set(&nsq),
                }))
            }
            Format::Tsv => {
                let mut out = String::from("index\tname\tsquare\n");
                for x in g.elements() {
                    let _ = writeln!(out, "{x}\t{}\t{}", g.render(x), sq.contains(x));
                }
                Ok(out)
            }
            Format::Text => Ok(format!(
                "Sq(G)  = {{{}}}\nNSq(G) = {{{}}}\n",
                g.render_set(&sq).join(", "),
                g.render_set(&nsq).join(", ")
            )),
            Format::Dot => Err(self.unsupported("squares")),
        }
    }

    pub fn classes(&self, group: &str) -> Outcome {
        let g = Self::group(group)?;
        let sq = g.squares();
        #[derive(Serialize)]
        struct Class {
            elements: Vec<usize>,
            names: Vec<String>,
            square_free: bool,
        }
        let classes: Vec<Class> = g
            .conjugacy_classes()
            .iter()
            .map(|c| Class {
                elements: c.to_vec(),
                names: g.render_set(c),
                square_free: c.is_disjoint(&sq),
            })
            .collect();
        match self.format {
            Format::Json => Ok(json(&classes)),
            Format::Tsv => {
                let mut out = String::from("class\telements\tsquare_free\n");
                for (i, c) in classes.iter().enumerate() {
                    let _ = writeln!(out, "{i}\t{}\t{}", c.names.join(","), c.square_free);
                }
                Ok(out)
            }
            Format::Text => {
                let mut out = String::new();
                for c in &classes {
                    let mark = if c.square_free {
                        ""
                    } else {
                        "  (contains a square)"
                    };
                    let _ = writeln!(out, "{{{}}}{mark}", c.names.join(", "));
                }
                Ok(out)
            }
            Format::Dot => Err(self.unsupported("classes")),
        }
    }

    pub fn subgroups(&self, group: &str) -> Outcome {
        let g = Self::group(group)?;
        let subgroups = all_subgroups(&g, DEFAULT_SUBGROUP_BUDGET)?;
        #[derive(Serialize)]
        struct Row {
            elements: Vec<usize>,
            names: Vec<String>,
            order: usize,
            index: usize,
            family: Option<String>,
        }
        let rows: Vec<Row> = subgroups
            .iter()
            .map(|h| Row {
                elements: h.elements().to_vec(),
                names: g.render_set(h.elements()),
                order: h.order(),
                index: h.index_in(&g),
                family: h.family().map(|f| f.to_string()),
            })
            .collect();
        match self.format {
            Format::Json => Ok(json(&rows)),
            Format::Tsv => {
                let mut out = String::from("order\tindex\tfamily\telements\n");
                for r in &rows {
                    let _ = writeln!(
                        out,
                        "{}\t{}\t{}\t{}",
                        r.order,
                        r.index,
                        r.family.as_deref().unwrap_or("-"),
                        r.names.join(",")
                    );
                }
                Ok(out)
            }
            Format::Text => {
                let mut out = String::new();
                for r in &rows {
                    let family = r
                        .family
                        .as_deref()
                        .map(|f| format!(" {f}"))
                        .unwrap_or_default();
                    let _ = writeln!(
                        out,
                        "|H| = {:<3}{family} {{{}}}",
                        r.order,
                        r.names.join(", ")
                    );
                }
                Ok(out)
            }
            Format::Dot => Err(self.unsupported("subgroups")),
        }
    }

    pub fn lh(&self, target: &Target) -> Outcome {
        let (g, h) = Self::target(target)?;
        #[derive(Serialize)]
        struct AbelianClassification {
            perfect_code: PerfectCodeVerdict,
            zero_two: Option<Classification>,
            zero_three: Option<Classification>,
        }
        #[derive(Serialize)]
        struct Out {
            group: String,
            subgroup: Vec<usize>,
            #[serde(rename = "L")]
            l: Option<usize>,
            branch: LBranch,
            alpha_max: Option<usize>,
            beta_max: Option<usize>,
            classification: Option<AbelianClassification>,
        }
        let (l, alpha_max, beta_max, classification) =
            if g.is_abelian() && g.factor_orders().is_some() {
                let l = l_of_h_abelian_closed_form(&g, &h)?;
                let region = feasible_pairs_abelian(&g, &h)?;
                let classification = AbelianClassification {
                    perfect_code: is_subgroup_perfect_code_abelian(&g, &h)?,
                    zero_two: classify_02(&g, &h).ok(),
                    zero_three: classify_03(&g, &h).ok(),
                };
                (
                    l,
                    Some(region.alpha_max),
                    Some(region.beta_max),
                    Some(classification),
                )
            } else {
                let l = l_of_h_bruteforce(&g, &h);
                let (a, b) = match (g.dihedral_n(), h.family()) {
                    (Some(n), Some(f)) => {
                        let pairs = feasible_pairs_dihedral(n, f)?.pairs;
                        (
                            pairs.iter().map(|p| p.0).max(),
                            pairs.iter().map(|p| p.1).max(),
                        )
                    }
                    _ => (None, None),
                };
                (l, a, b, None)
            };
        let out = Out {
            group: g.spec().to_string(),
            subgroup: h.elements().to_vec(),
            l: l.value,
            branch: l.branch,
            alpha_max,
            beta_max,
            classification,
        };
        match self.format {
            Format::Json => Ok(json(&out)),
            Format::Text => {
                let show = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
                let mut text = format!(
                    "L(H) = {} ({})\nalpha_max = {}, beta_max = {}\n",
                    show(out.l),
                    serde_json::to_value(out.branch)
                        .unwrap()
                        .as_str()
                        .unwrap_or(""),
                    show(out.alpha_max),
                    show(out.beta_max)
                );
                if let Some(c) = &out.classification {
                    let _ = writeln!(text, "perfect code: {}", c.perfect_code.is_perfect_code);
                    for (name, cl) in [("(0,2)", &c.zero_two), ("(0,3)", &c.zero_three)] {
                        if let Some(cl) = cl {
                            let verdict = match cl.case() {
                                None => "regular".to_string(),
                                Some(k) => format!("not regular, case ({k})"),
                            };
                            let _ = writeln!(text, "{name}: {verdict}");
                        }
                    }
                }
                Ok(text)
            }
            _ => Err(self.unsupported("lh")),
        }
    }

    fn oracle(&self, g: &Group, h: &Subgroup) -> Result<OracleReport, Failure> {
        Ok(enumerate_pairs(g, h, &self.budget)?)
    }

    pub fn pairs(&self, target: &Target, method: Option<Method>) -> Outcome {
        let (g, h) = Self::target(target)?;
        let theory = theory_pairs(&g, &h);
        let admitted = self.budget.admits(candidate_space(&g).len());
        let method = match method {
            Some(m) => m,
            None if theory.is_err() => Method::Oracle,
            None if !admitted => {
                eprintln!(
                    "warning: oracle budget {} too small for {}, using theory only",
                    self.budget.max_candidate_sets,
                    g.spec()
                );
                Method::Theory
            }
            None => Method::Both,
        };
        let theory: Option<BTreeSet<Pair>> = match method {
            Method::Oracle => None,
            _ => Some(theory?),
        };
        let oracle: Option<BTreeSet<Pair>> = match method {
            Method::Theory => None,
            _ => Some(self.oracle(&g, &h)?.pair_set()),
        };
        let agree = match (&theory, &oracle) {
            (Some(t), Some(o)) => Some(t == o),
            _ => None,
        };
        let as_vec =
            |s: &Option<BTreeSet<Pair>>| s.as_ref().map(|s| s.iter().copied().collect::<Vec<_>>());
        #[derive(Serialize)]
        struct Out {
            group: String,
            subgroup: Vec<usize>,
            method: &'static str,
            pairs_theory: Option<Vec<Pair>>,
            pairs_oracle: Option<Vec<Pair>>,
            agree: Option<bool>,
        }
        let out = Out {
            group: g.spec().to_string(),
            subgroup: h.elements().to_vec(),
            method: match method {
                Method::Theory => "theory",
                Method::Oracle => "oracle",
                Method::Both => "both",
            },
            pairs_theory: as_vec(&theory),
            pairs_oracle: as_vec(&oracle),
            agree,
        };
        match self.format {
            Format::Json => Ok(json(&out)),
            Format::Tsv => {
                let mut text = String::from("alpha\tbeta\ttheory\toracle\n");
                let all: BTreeSet<Pair> = theory
                    .iter()
                    .chain(oracle.iter())
                    .flatten()
                    .copied()
                    .collect();
                let flag = |s: &Option<BTreeSet<Pair>>, p: &Pair| match s {
                    Some(s) => s.contains(p).to_string(),
                    None => "-".to_string(),
                };
                for p in &all {
                    let _ = writeln!(
                        text,
                        "{}\t{}\t{}\t{}",
                        p.0,
                        p.1,
                        flag(&theory, p),
                        flag(&oracle, p)
                    );
                }
                Ok(text)
            }
            Format::Text => {
                let mut text = format!(
                    "theory: {}\noracle: {}\n",
                    pair_text(out.pairs_theory.as_deref()),
                    pair_text(out.pairs_oracle.as_deref())
                );
                if let Some(a) = agree {
                    let _ = writeln!(text, "agree: {a}");
                }
                Ok(text)
            }
            Format::Dot => Err(self.unsupported("pairs")),
        }
    }

    /// A verified connection set for `(alpha, beta)`, with recipe names where a
    /// closed-form construction exists.
    fn build_witness(
        &self,
        g: &Group,
        h: &Subgroup,
        (alpha, beta): Pair,
    ) -> Result<(ConnectionSet, &'static str, Vec<String>), Failure> {
        if g.factor_orders().is_some() {
            return Ok((witness_abelian(g, h, alpha, beta)?, "theory", Vec::new()));
        }
        if let Some(family) = h.family() {
            let recipe = witness_dihedral(g, family, alpha, beta)?;
            let names = recipe.names();
            return Ok((make_connection_set(g, recipe.set)?, "theory", names));
        }
        let report = self.oracle(g, h)?;
        match report.pairs.get(&(alpha, beta)) {
            Some(ev) => Ok((
                make_connection_set(g, ev.witness.clone())?,
                "oracle",
                Vec::new(),
            )),
            None if report.is_authoritative() => Err(Failure::infeasible(format!(
                "no normal square-free connection set makes H ({alpha},{beta})-regular"
            ))),
            None => Err(Failure::infeasible(format!(
                "({alpha},{beta}) not found by sampled enumeration"
            ))),
        }
    }

    fn document(g: &Group, h: &Subgroup, c: &ConnectionSet) -> Result<ExportDoc, Failure> {
        let graph = build_graph(g, c);
        let result = check_regular_subgroup(g, &graph, h)?;
        let perfect = check_perfect_code_conditions(g, h, c)?;
        Ok(ExportDoc {
            group: g.spec().to_string(),
            subgroup: h.elements().to_vec(),
            connection: c.elements().to_vec(),
            connection_names: g.render_set(c.elements()),
            regularity: RegularityReport::new(g, &graph, &result),
            perfect_code: perfect.holds(),
        })
    }

    fn render_document(
        &self,
        verb: &str,
        g: &Group,
        h: &Subgroup,
        c: &ConnectionSet,
        doc: &ExportDoc,
    ) -> Outcome {
        match self.format {
            Format::Json => Ok(json(doc)),
            Format::Dot => Ok(to_dot(g, &build_graph(g, c), Some(h.elements()))),
            Format::Text => {
                let verdict = match (doc.regularity.alpha, doc.regularity.beta) {
                    (Some(a), Some(b)) => format!("({a},{b})-regular"),
                    _ => "not regular".to_string(),
                };
                Ok(format!(
                    "S = {{{}}}\nH = {{{}}}\nH is {verdict}; perfect code: {}\n",
                    doc.connection_names.join(", "),
                    g.render_set(h.elements()).join(", "),
                    doc.perfect_code
                ))
            }
            Format::Tsv => Err(self.unsupported(verb)),
        }
    }

    pub fn witness(&self, target: &Target, pair: &str) -> Outcome {
        let pair = Self::pair_arg(pair)?;
        let (g, h) = Self::target(target)?;
        let (c, source, recipe) = self.build_witness(&g, &h, pair)?;
        let doc = Self::document(&g, &h, &c)?;
        if self.format != Format::Json {
            return self.render_document("witness", &g, &h, &c, &doc);
        }
        #[derive(Serialize)]
        struct Out<'a> {
            pair: Pair,
            source: &'a str,
            recipe: Vec<String>,
            #[serde(flatten)]
            doc: &'a ExportDoc,
        }
        Ok(json(&Out {
            pair,
            source,
            recipe,
            doc: &doc,
        }))
    }

    pub fn export(&self, target: &Target, connection: Option<&str>, pair: Option<&str>) -> Outcome {
        let (g, h) = Self::target(target)?;
        let c = match (connection, pair) {
            (Some(text), None) => make_connection_set(&g, g.parse_elements(text)?)?,
            (None, Some(p)) => self.build_witness(&g, &h, Self::pair_arg(p)?)?.0,
            _ => {
                return Err(Failure::usage(
                    "export needs exactly one of --connection or --pair",
                ))
            }
        };
        let doc = Self::document(&g, &h, &c)?;
        self.render_document("export", &g, &h, &c, &doc)
    }

    pub fn verify(
        &self,
        target: Option<&Target>,
        connection: Option<&str>,
        pair: Option<&str>,
        from_file: Option<&Path>,
    ) -> Outcome {
        if let Some(path) = from_file {
            if target.is_some() || connection.is_some() {
                return Err(Failure::usage(
                    "--from-file takes no group or connection set",
                ));
            }
            return self.verify_file(path);
        }
        let target =
            target.ok_or_else(|| Failure::usage("verify needs a group, or --from-file"))?;
        let expected = pair.map(Self::pair_arg).transpose()?;
        let (g, h) = Self::target(target)?;
        match connection {
            Some(text) => {
                let c = make_connection_set(&g, g.parse_elements(text)?)?;
                let doc = Self::document(&g, &h, &c)?;
                let out = self.render_document("verify", &g, &h, &c, &doc)?;
                let got = doc.regularity.alpha.zip(doc.regularity.beta);
                match expected {
                    Some(p) if got != Some(p) => Err(Failure::disagreement(
                        format!("expected ({},{}), graph gives {got:?}", p.0, p.1),
                        out,
                    )),
                    _ => Ok(out),
                }
            }
            None => self.verify_theory(&g, &h, expected),
        }
    }

    fn verify_theory(&self, g: &Group, h: &Subgroup, expected: Option<Pair>) -> Outcome {
        let theory = theory_pairs(g, h)?;
        let oracle = self.oracle(g, h)?.pair_set();
        let mut problems = Vec::new();
        if theory != oracle {
            problems.push(format!(
                "theory {} vs oracle {}",
                regset::sweep::render_pairs(&theory),
                regset::sweep::render_pairs(&oracle)
            ));
        }
        let mut witnesses = 0;
        for &p in &theory {
            match self.build_witness(g, h, p) {
                Ok(_) => witnesses += 1,
                Err(f) => problems.push(format!("witness ({},{}): {}", p.0, p.1, f.message)),
            }
        }
        if let Some(p) = expected {
            if !oracle.contains(&p) {
                problems.push(format!("({},{}) is not attained", p.0, p.1));
            }
        }
        #[derive(Serialize)]
        struct Out {
            group: String,
            subgroup: Vec<usize>,
            pairs_theory: Vec<Pair>,
            pairs_oracle: Vec<Pair>,
            witnesses_verified: usize,
            agree: bool,
            problems: Vec<String>,
        }
        let out = Out {
            group: g.spec().to_string(),
            subgroup: h.elements().to_vec(),
            pairs_theory: theory.into_iter().collect(),
            pairs_oracle: oracle.into_iter().collect(),
            witnesses_verified: witnesses,
            agree: problems.is_empty(),
            problems,
        };
        let text = match self.format {
            Format::Json => json(&out),
            Format::Text => format!(
                "theory: {}\noracle: {}\nwitnesses verified: {}\nagree: {}\n",
                pair_text(Some(&out.pairs_theory)),
                pair_text(Some(&out.pairs_oracle)),
                out.witnesses_verified,
                out.agree
            ),
            _ => return Err(self.unsupported("verify")),
        };
        if out.agree {
            Ok(text)
        } else {
            Err(Failure::disagreement(out.problems.join("; "), text))
        }
    }

    fn verify_file(&self, path: &Path) -> Outcome {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
        let saved: ExportDoc = serde_json::from_str(&text).map_err(|e| {
            Failure::usage(format!("{} is not an export document: {e}", path.display()))
        })?;
        let g = Self::group(&saved.group)?;
        let h = Subgroup::from_elements(&g, g.set_of(saved.subgroup.iter().copied()))?;
        if saved.connection.iter().any(|&x| x >= g.order()) {
            return Err(Error::UnknownElement(format!("{:?}", saved.connection)).into());
        }
        let c = make_connection_set(&g, g.set_of(saved.connection.iter().copied()))?;
        let fresh = Self::document(&g, &h, &c)?;
        let out = self.render_document("verify", &g, &h, &c, &fresh)?;
        if fresh.verdict() == saved.verdict() {
            Ok(out)
        } else {
            Err(Failure::disagreement(
                format!(
                    "saved verdict {:?}, recomputed {:?}",
                    saved.verdict(),
                    fresh.verdict()
                ),
                out,
            ))
        }
    }

    pub fn sweep(&self, spec: &str) -> Outcome {
        let spec: SweepSpec = spec.parse()?;
        let report = verify_theorem_sweep(&spec, &self.budget)?;
        let out = match self.format {
            Format::Json => report.to_json(),
            Format::Tsv => report.to_tsv(),
            Format::Text => {
                let disagreements = report.disagreements().count();
                let mut text = format!(
                    "{}: {} instances, {} disagreements, {} skipped\n",
                    report.spec,
                    report.rows.len(),
                    disagreements,
                    report.skipped.len()
                );
                for r in report.disagreements() {
                    let _ = writeln!(
                        text,
                        "  {} {:?}: theory-only {} oracle-only {}",
                        r.group,
                        r.subgroup,
                        regset::sweep::render_pairs(&r.only_theory),
                        regset::sweep::render_pairs(&r.only_oracle)
                    );
                }
                text
            }
            Format::Dot => return Err(self.unsupported("sweep")),
        };
        if report.all_agree() {
            Ok(out)
        } else {
            Err(Failure::disagreement(
                format!("{} instances disagree", report.disagreements().count()),
                out,
            ))
        }
    }
}
