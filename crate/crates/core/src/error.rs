use std::fmt;

use thiserror::Error;

use crate::rng::Elem;

/// An axiom that a table-presented structure is required to satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    TableRange,
    AdditiveIdentity,
    AdditiveInverse,
    AdditiveCommutativity,
    AdditiveAssociativity,
    MultiplicativeAssociativity,
    LeftDistributivity,
    RightDistributivity,
    ZeroAbsorption,
    UnitLaw,
    LeftActionAdditivity,
    RightActionAdditivity,
    ActionUnitality,
    ModuleAssociativity,
    Compatibility,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::TableRange => "table-range",
            Axiom::AdditiveIdentity => "additive-identity",
            Axiom::AdditiveInverse => "additive-inverse",
            Axiom::AdditiveCommutativity => "additive-commutativity",
            Axiom::AdditiveAssociativity => "additive-associativity",
            Axiom::MultiplicativeAssociativity => "associativity",
            Axiom::LeftDistributivity => "left-distributivity",
            Axiom::RightDistributivity => "right-distributivity",
            Axiom::ZeroAbsorption => "zero-absorption",
            Axiom::UnitLaw => "unit",
            Axiom::LeftActionAdditivity => "left-action-additivity",
            Axiom::RightActionAdditivity => "right-action-additivity",
            Axiom::ActionUnitality => "action-unitality",
            Axiom::ModuleAssociativity => "module-associativity",
            Axiom::Compatibility => "compatibility",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One failing instance of an axiom together with the elements that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<Elem>,
}

impl Violation {
    pub fn new(axiom: Axiom, witness: impl Into<Vec<Elem>>) -> Self {
        Violation {
            axiom,
            witness: witness.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {:?}", self.axiom, self.witness)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{} axiom violation(s), first: {}", .0.len(), .0[0])]
    AxiomViolation(Vec<Violation>),

    #[error("dimension mismatch in {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("order {requested} exceeds the configured cap of {cap}")]
    OrderCapExceeded { requested: u128, cap: usize },

    #[error("subset is not {kind} (witness {witness:?})")]
    NotAnIdeal {
        kind: &'static str,
        witness: Vec<Elem>,
    },

    #[error("invalid decomposition: {condition} fails (witness {witness:?})")]
    InvalidDecomposition {
        condition: &'static str,
        witness: Vec<Elem>,
    },

    #[error("search budget of {budget} nodes exhausted")]
    SearchBudgetExceeded { budget: u64 },

    #[error("map is not a multiplicative retraction (witness {witness:?})")]
    NotARetraction { witness: Vec<Elem> },

    #[error("the rng is zero")]
    EmptyRng,

    #[error("ring is not commutative: {0} * {1} differs from {1} * {0}")]
    NotCommutative(Elem, Elem),

    #[error("ring has no multiplicative unit")]
    NotUnital,

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Two computations that must agree did not. Always an implementation bug.
    #[error("internal discrepancy: {0}")]
    Discrepancy(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
