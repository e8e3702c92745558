use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed group spec `{0}`")]
    MalformedSpec(String),
    #[error("cannot read group table: {0}")]
    TableIo(String),
    #[error("dihedral group needs n >= 3, got {0}")]
    DihedralTooSmall(usize),
    #[error("abelian factor orders must be >= 2, got {0:?}")]
    BadFactor(Vec<usize>),
    #[error("multiplication table has {got} entries, expected {expected}")]
    TableShape { got: usize, expected: usize },
    #[error("table entry {value} out of range for order {order}")]
    TableEntry { value: usize, order: usize },
    #[error("index 0 is not a two-sided identity (fails at element {0})")]
    MissingIdentity(usize),
    #[error("element {0} has no two-sided inverse")]
    MissingInverse(usize),
    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),
    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("element set is not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("group order {order} exceeds the subgroup enumeration budget {budget}")]
    SubgroupBudget { order: usize, budget: usize },
    #[error("invalid dihedral family parameters: {0}")]
    BadFamily(String),

    #[error("connection set contains the identity")]
    ContainsIdentity,
    #[error("connection set contains the square element {0}")]
    SquareElement(usize),
    #[error("connection set is not normal: conjugate {conjugate} of {element} is missing")]
    NotNormal { element: usize, conjugate: usize },
    #[error("vertex subset must be non-empty and proper")]
    DegeneratePartition,
    #[error("partition is not equitable at vertex {vertex} ({inside} neighbours inside, expected {expected})")]
    NotEquitable {
        vertex: usize,
        inside: usize,
        expected: usize,
    },
    #[error("|S ∩ Hx| is not constant: coset of {representative} meets S in {count}, expected {expected}")]
    NotZeroBetaRegular {
        representative: usize,
        count: usize,
        expected: usize,
    },
    #[error("subgroup is not normal")]
    NotNormalSubgroup,
    #[error("invalid transversal decomposition: {0}")]
    BadTransversal(String),
    #[error("perfect-code conditions disagree: perfect code {perfect_code}, transversal {transversal}, index condition {index_condition}")]
    ConditionDisagreement {
        perfect_code: bool,
        transversal: bool,
        index_condition: bool,
    },

    #[error("operation requires an abelian group")]
    NotAbelian,
    #[error("operation requires an abelian group given by cyclic factor orders")]
    NoFactorForm,
    #[error("operation requires a dihedral group")]
    NotDihedral,
    #[error("subgroup is the whole group")]
    WholeGroup,
    #[error("pair ({alpha}, {beta}) is not feasible: {reason}")]
    Infeasible {
        alpha: usize,
        beta: usize,
        reason: String,
    },
    #[error("constructed witness failed verification: {0}")]
    WitnessVerification(String),
    #[error("no classification case matches: {0}")]
    Unclassified(String),
    #[error("witness count overflows 128 bits")]
    CountOverflow,
    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("candidate space 2^{classes} exceeds budget {budget}; use sampled mode")]
    BudgetExceeded { classes: usize, budget: u64 },
    #[error("fast-path equivalence check failed: {0}")]
    FastPathMismatch(String),
    #[error("malformed sweep spec `{0}`")]
    MalformedSweep(String),
    #[error("no predictor available: {0}")]
    NoPredictor(String),
}
