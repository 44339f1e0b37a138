use std::fmt;

/// Which structural identity failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    DSquared,
    Degree,
    Associativity,
    Leibniz,
    Unit,
    Augmentation,
    Coassociativity,
    Counit,
    CoLeibniz,
    Coaugmentation,
    OneReduced,
    Commutativity,
    Antisymmetry,
    Jacobi,
    Derivation,
    HopfCompatibility,
    ChainMap,
    Multiplicative,
    Group,
    Subcomplex,
    Acyclicity,
    Cocycle,
    SphereModel,
}

/// A failed structural check, naming the basis elements involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

impl Violation {
    pub fn new(kind: ViolationKind, detail: impl Into<String>) -> Self {
        Violation {
            kind,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ViolationKind::DSquared => "d^2 != 0",
            ViolationKind::Degree => "degree",
            ViolationKind::Associativity => "associativity",
            ViolationKind::Leibniz => "Leibniz rule",
            ViolationKind::Unit => "unit",
            ViolationKind::Augmentation => "augmentation",
            ViolationKind::Coassociativity => "coassociativity",
            ViolationKind::Counit => "counit",
            ViolationKind::CoLeibniz => "co-Leibniz rule",
            ViolationKind::Coaugmentation => "coaugmentation",
            ViolationKind::OneReduced => "1-reduced",
            ViolationKind::Commutativity => "graded commutativity",
            ViolationKind::Antisymmetry => "graded antisymmetry",
            ViolationKind::Jacobi => "graded Jacobi identity",
            ViolationKind::Derivation => "derivation rule",
            ViolationKind::HopfCompatibility => "Hopf compatibility",
            ViolationKind::ChainMap => "chain map",
            ViolationKind::Multiplicative => "multiplicativity",
            ViolationKind::Group => "group axioms",
            ViolationKind::Subcomplex => "subcomplex",
            ViolationKind::Acyclicity => "acyclicity",
            ViolationKind::Cocycle => "cocycle",
            ViolationKind::SphereModel => "sphere model",
        };
        f.write_str(s)
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated: {}", self.kind, self.detail)
    }
}
