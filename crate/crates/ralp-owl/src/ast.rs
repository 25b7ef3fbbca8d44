//! Class expression AST covering negation, boolean connectives,
//! quantified and cardinality restrictions, nominals, and inverse roles.

use std::collections::BTreeSet;

/// A role reference, possibly inverted (edges read backward).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Role {
    pub name: String,
    pub inverted: bool,
}

impl Role {
    pub fn named(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            inverted: false,
        }
    }

    pub fn inverse(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            inverted: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassExpression {
    Atomic(String),
    Not(Box<ClassExpression>),
    And(Box<ClassExpression>, Box<ClassExpression>),
    Or(Box<ClassExpression>, Box<ClassExpression>),
    Exists(Role, Box<ClassExpression>),
    Forall(Role, Box<ClassExpression>),
    MinCard(u32, Role, Box<ClassExpression>),
    MaxCard(u32, Role, Box<ClassExpression>),
    OneOf(BTreeSet<String>),
}

impl ClassExpression {
    pub fn atomic(name: impl Into<String>) -> Self {
        ClassExpression::Atomic(name.into())
    }

    pub fn negation(e: ClassExpression) -> Self {
        ClassExpression::Not(Box::new(e))
    }

    pub fn conjunction(a: ClassExpression, b: ClassExpression) -> Self {
        ClassExpression::And(Box::new(a), Box::new(b))
    }

    pub fn disjunction(a: ClassExpression, b: ClassExpression) -> Self {
        ClassExpression::Or(Box::new(a), Box::new(b))
    }

    pub fn exists(role: Role, filler: ClassExpression) -> Self {
        ClassExpression::Exists(role, Box::new(filler))
    }

    pub fn forall(role: Role, filler: ClassExpression) -> Self {
        ClassExpression::Forall(role, Box::new(filler))
    }

    pub fn at_least(n: u32, role: Role, filler: ClassExpression) -> Self {
        ClassExpression::MinCard(n, role, Box::new(filler))
    }

    pub fn at_most(n: u32, role: Role, filler: ClassExpression) -> Self {
        ClassExpression::MaxCard(n, role, Box::new(filler))
    }

    pub fn one_of<I: IntoIterator<Item = S>, S: Into<String>>(names: I) -> Self {
        ClassExpression::OneOf(names.into_iter().map(Into::into).collect())
    }

    /// Does any role anywhere in the tree read edges backward?
    pub fn mentions_inverse(&self) -> bool {
        match self {
            ClassExpression::Atomic(_) | ClassExpression::OneOf(_) => false,
            ClassExpression::Not(e) => e.mentions_inverse(),
            ClassExpression::And(a, b) | ClassExpression::Or(a, b) => {
                a.mentions_inverse() || b.mentions_inverse()
            }
            ClassExpression::Exists(r, e) | ClassExpression::Forall(r, e) => {
                r.inverted || e.mentions_inverse()
            }
            ClassExpression::MinCard(_, r, e) | ClassExpression::MaxCard(_, r, e) => {
                r.inverted || e.mentions_inverse()
            }
        }
    }

    pub fn mentions_nominal(&self) -> bool {
        match self {
            ClassExpression::OneOf(_) => true,
            ClassExpression::Atomic(_) => false,
            ClassExpression::Not(e) => e.mentions_nominal(),
            ClassExpression::And(a, b) | ClassExpression::Or(a, b) => {
                a.mentions_nominal() || b.mentions_nominal()
            }
            ClassExpression::Exists(_, e)
            | ClassExpression::Forall(_, e)
            | ClassExpression::MinCard(_, _, e)
            | ClassExpression::MaxCard(_, _, e) => e.mentions_nominal(),
        }
    }
}

/// The ten structural groups used for reporting.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum ConceptGroup {
    Atomic,
    Negation,
    Conjunction,
    Disjunction,
    Existential,
    Universal,
    AtLeast,
    AtMost,
    Nominals,
    Inverse,
}

impl ConceptGroup {
    pub const ALL: [ConceptGroup; 10] = [
        ConceptGroup::Atomic,
        ConceptGroup::Negation,
        ConceptGroup::Conjunction,
        ConceptGroup::Disjunction,
        ConceptGroup::Existential,
        ConceptGroup::Universal,
        ConceptGroup::AtLeast,
        ConceptGroup::AtMost,
        ConceptGroup::Nominals,
        ConceptGroup::Inverse,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ConceptGroup::Atomic => "atomic",
            ConceptGroup::Negation => "negation",
            ConceptGroup::Conjunction => "conjunction",
            ConceptGroup::Disjunction => "disjunction",
            ConceptGroup::Existential => "existential",
            ConceptGroup::Universal => "universal",
            ConceptGroup::AtLeast => "at_least_restriction",
            ConceptGroup::AtMost => "at_most_restriction",
            ConceptGroup::Nominals => "nominals",
            ConceptGroup::Inverse => "inverse",
        }
    }
}

/// Priority classification: an inverse role anywhere wins, then a
/// nominal anywhere, then the outermost constructor.
pub fn classify_concept(e: &ClassExpression) -> ConceptGroup {
    if e.mentions_inverse() {
        return ConceptGroup::Inverse;
    }
    if e.mentions_nominal() {
        return ConceptGroup::Nominals;
    }
    match e {
        ClassExpression::Atomic(_) => ConceptGroup::Atomic,
        ClassExpression::Not(_) => ConceptGroup::Negation,
        ClassExpression::And(_, _) => ConceptGroup::Conjunction,
        ClassExpression::Or(_, _) => ConceptGroup::Disjunction,
        ClassExpression::Exists(_, _) => ConceptGroup::Existential,
        ClassExpression::Forall(_, _) => ConceptGroup::Universal,
        ClassExpression::MinCard(_, _, _) => ConceptGroup::AtLeast,
        ClassExpression::MaxCard(_, _, _) => ConceptGroup::AtMost,
        ClassExpression::OneOf(_) => ConceptGroup::Nominals,
    }
}
