//! Formula syntax tree, negation normal form, single-term views and the
//! propositional truth-table helpers the classifier leans on.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest number of distinct atoms the truth-table routines will expand.
pub const MAX_TABLE_ATOMS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdError {
    #[error("invalid agent name {0:?}: expected a non-empty token of letters and digits")]
    Agent(String),
    #[error("invalid proposition name {0:?}: expected a lowercase identifier that is not a keyword")]
    Prop(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("negation of {operator} has no normal form here")]
    UnsupportedNegation { operator: &'static str },
    #[error("{count} distinct atoms exceed the truth-table limit of {MAX_TABLE_ATOMS}")]
    TooManyAtoms { count: usize },
    #[error("formula is not propositional: {0}")]
    NotPropositional(String),
}

/// Agent name. The token is kept verbatim, so `1` and `a` are both valid.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct AgentId(String);

impl AgentId {
    pub fn new(name: impl Into<String>) -> Result<Self, IdError> {
        let name = name.into();
        if !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric()) {
            Ok(AgentId(name))
        } else {
            Err(IdError::Agent(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

/// Propositional letter: lowercase identifier other than `true`/`false`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct PropId(String);

pub(crate) fn is_keyword(token: &str) -> bool {
    matches!(token, "true" | "false")
}

impl PropId {
    pub fn new(name: impl Into<String>) -> Result<Self, IdError> {
        let name = name.into();
        let mut chars = name.chars();
        let head_ok = chars.next().is_some_and(|c| c.is_ascii_lowercase());
        let tail_ok = chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_');
        if head_ok && tail_ok && !is_keyword(&name) {
            Ok(PropId(name))
        } else {
            Err(IdError::Prop(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

macro_rules! id_conversions {
    ($ty:ident) => {
        impl TryFrom<String> for $ty {
            type Error = IdError;
            fn try_from(value: String) -> Result<Self, Self::Error> {
                $ty::new(value)
            }
        }

        impl From<$ty> for String {
            fn from(value: $ty) -> String {
                value.0
            }
        }

        impl FromStr for $ty {
            type Err = IdError;
            fn from_str(s: &str) -> Result<Self, Self::Err> {
                $ty::new(s)
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }
    };
}

id_conversions!(AgentId);
id_conversions!(PropId);

/// A public announcement logic formula.
///
/// `Poss(a, φ)` is kept as its own node but always evaluates like `¬K_a¬φ`.
/// Implication and equivalence only exist in the concrete syntax.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(PropId),
    True,
    False,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Know(AgentId, Box<Formula>),
    Poss(AgentId, Box<Formula>),
    Common(Box<Formula>),
    Announce(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(p: PropId) -> Formula {
        Formula::Atom(p)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    /// `a -> b`, desugared to `~a | b`.
    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::or(Formula::not(a), b)
    }

    /// `a <-> b`, desugared to `(a -> b) & (b -> a)`.
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::implies(a.clone(), b.clone()), Formula::implies(b, a))
    }

    pub fn know(agent: AgentId, f: Formula) -> Formula {
        Formula::Know(agent, Box::new(f))
    }

    pub fn poss(agent: AgentId, f: Formula) -> Formula {
        Formula::Poss(agent, Box::new(f))
    }

    pub fn common(f: Formula) -> Formula {
        Formula::Common(Box::new(f))
    }

    pub fn announce(announced: Formula, after: Formula) -> Formula {
        Formula::Announce(Box::new(announced), Box::new(after))
    }

    /// Conjunction of all items, `True` when empty. Left-nested.
    pub fn conjunction(items: impl IntoIterator<Item = Formula>) -> Formula {
        items.into_iter().reduce(Formula::and).unwrap_or(Formula::True)
    }

    pub fn agents(&self) -> BTreeSet<AgentId> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Know(a, _) | Formula::Poss(a, _) = f {
                out.insert(a.clone());
            }
        });
        out
    }

    pub fn props(&self) -> BTreeSet<PropId> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Atom(p) = f {
                out.insert(p.clone());
            }
        });
        out
    }

    /// No modal, common-knowledge or announcement operator anywhere.
    pub fn is_propositional(&self) -> bool {
        let mut ok = true;
        self.visit(&mut |f| {
            if matches!(
                f,
                Formula::Know(..) | Formula::Poss(..) | Formula::Common(_) | Formula::Announce(..)
            ) {
                ok = false;
            }
        });
        ok
    }

    pub fn is_announcement_free(&self) -> bool {
        let mut ok = true;
        self.visit(&mut |f| {
            if matches!(f, Formula::Announce(..)) {
                ok = false;
            }
        });
        ok
    }

    /// Negation only ever applied to atoms.
    pub fn is_nnf(&self) -> bool {
        let mut ok = true;
        self.visit(&mut |f| {
            if let Formula::Not(inner) = f {
                if !matches!(**inner, Formula::Atom(_)) {
                    ok = false;
                }
            }
        });
        ok
    }

    /// Number of `K`, `L` and `C` operators.
    pub fn modal_count(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |f| {
            if matches!(f, Formula::Know(..) | Formula::Poss(..) | Formula::Common(_)) {
                n += 1;
            }
        });
        n
    }

    /// Pre-order traversal.
    pub fn visit(&self, visitor: &mut impl FnMut(&Formula)) {
        visitor(self);
        match self {
            Formula::Atom(_) | Formula::True | Formula::False => {}
            Formula::Not(g) | Formula::Know(_, g) | Formula::Poss(_, g) | Formula::Common(g) => {
                g.visit(visitor)
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Announce(a, b) => {
                a.visit(visitor);
                b.visit(visitor);
            }
        }
    }
}

/// Push negations down to the atoms using De Morgan and the `K`/`L` duals.
///
/// `¬Cφ` and `¬[φ]ψ` are rejected; common knowledge and announcements that
/// are not negated keep their shape with normalised arguments.
pub fn to_nnf(f: &Formula) -> Result<Formula, FormulaError> {
    nnf(f, false)
}

fn nnf(f: &Formula, negate: bool) -> Result<Formula, FormulaError> {
    Ok(match f {
        Formula::Atom(_) if negate => Formula::not(f.clone()),
        Formula::Atom(_) => f.clone(),
        Formula::True if negate => Formula::False,
        Formula::False if negate => Formula::True,
        Formula::True | Formula::False => f.clone(),
        Formula::Not(g) => nnf(g, !negate)?,
        Formula::And(a, b) if negate => Formula::or(nnf(a, true)?, nnf(b, true)?),
        Formula::And(a, b) => Formula::and(nnf(a, false)?, nnf(b, false)?),
        Formula::Or(a, b) if negate => Formula::and(nnf(a, true)?, nnf(b, true)?),
        Formula::Or(a, b) => Formula::or(nnf(a, false)?, nnf(b, false)?),
        Formula::Know(ag, g) if negate => Formula::poss(ag.clone(), nnf(g, true)?),
        Formula::Know(ag, g) => Formula::know(ag.clone(), nnf(g, false)?),
        Formula::Poss(ag, g) if negate => Formula::know(ag.clone(), nnf(g, true)?),
        Formula::Poss(ag, g) => Formula::poss(ag.clone(), nnf(g, false)?),
        Formula::Common(_) if negate => {
            return Err(FormulaError::UnsupportedNegation { operator: "common knowledge" })
        }
        Formula::Common(g) => Formula::common(nnf(g, false)?),
        Formula::Announce(..) if negate => {
            return Err(FormulaError::UnsupportedNegation { operator: "an announcement" })
        }
        Formula::Announce(a, b) => Formula::announce(nnf(a, false)?, nnf(b, false)?),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Modality {
    #[serde(rename = "K")]
    Know,
    #[serde(rename = "L")]
    Poss,
}

impl fmt::Display for Modality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Modality::Know => "K",
            Modality::Poss => "L",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModalOp {
    pub modality: Modality,
    pub agent: AgentId,
}

impl ModalOp {
    pub fn know(agent: AgentId) -> Self {
        ModalOp { modality: Modality::Know, agent }
    }

    pub fn poss(agent: AgentId) -> Self {
        ModalOp { modality: Modality::Poss, agent }
    }
}

impl fmt::Display for ModalOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.modality, self.agent)
    }
}

/// A chain `E₁…Eₙ α` of knowledge/possibility operators over a propositional
/// body in negation normal form. An empty chain is a bare propositional formula.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SingleTermView {
    pub ops: Vec<ModalOp>,
    pub body: Formula,
}

/// Recognise `f` as a single term. `f` is expected to be in NNF already.
pub fn as_single_term(f: &Formula) -> Option<SingleTermView> {
    let mut ops = Vec::new();
    let mut cur = f;
    loop {
        match cur {
            Formula::Know(a, g) => {
                ops.push(ModalOp::know(a.clone()));
                cur = g;
            }
            Formula::Poss(a, g) => {
                ops.push(ModalOp::poss(a.clone()));
                cur = g;
            }
            _ => break,
        }
    }
    (cur.is_propositional() && cur.is_nnf()).then(|| SingleTermView { ops, body: cur.clone() })
}

impl SingleTermView {
    pub fn new(ops: Vec<ModalOp>, body: Formula) -> Option<Self> {
        (body.is_propositional() && body.is_nnf()).then_some(SingleTermView { ops, body })
    }

    /// Each agent occurs at most once in the chain.
    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.ops.iter().all(|op| seen.insert(&op.agent))
    }

    pub fn agents(&self) -> BTreeSet<AgentId> {
        self.ops.iter().map(|op| op.agent.clone()).collect()
    }

    /// Length of the leading run of `L` operators.
    pub fn poss_prefix_len(&self) -> usize {
        self.ops.iter().take_while(|op| op.modality == Modality::Poss).count()
    }

    pub fn to_formula(&self) -> Formula {
        self.ops.iter().rev().fold(self.body.clone(), |acc, op| match op.modality {
            Modality::Know => Formula::know(op.agent.clone(), acc),
            Modality::Poss => Formula::poss(op.agent.clone(), acc),
        })
    }
}

/// Structural class of a single-term chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shape {
    PureK,
    PureL,
    LkSimple,
    KlSimple,
    KCompound,
    LCompound,
    MixedCompound(CompoundPattern),
}

/// Mixed compound chains that have a dedicated rule. Agents named `i`, `j`,
/// `k` are pairwise distinct.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CompoundPattern {
    /// `K_i L_j K_i`
    KiLjKi,
    /// `K_i K_j L_i`
    KiKjLi,
    /// `L_i K_j K_k L_i`
    LiKjKkLi,
    Other,
}

impl Shape {
    pub fn is_simple(self) -> bool {
        matches!(self, Shape::PureK | Shape::PureL | Shape::LkSimple | Shape::KlSimple)
    }
}

pub fn shape_of(v: &SingleTermView) -> Shape {
    let has_k = v.ops.iter().any(|op| op.modality == Modality::Know);
    let has_l = v.ops.iter().any(|op| op.modality == Modality::Poss);
    let simple = v.is_simple();
    match (has_k, has_l, simple) {
        (_, false, true) => Shape::PureK,
        (_, false, false) => Shape::KCompound,
        (false, true, true) => Shape::PureL,
        (false, true, false) => Shape::LCompound,
        (true, true, true) => {
            let first_k = v.ops.iter().position(|op| op.modality == Modality::Know);
            let l_after_k = first_k
                .is_some_and(|i| v.ops[i + 1..].iter().any(|op| op.modality == Modality::Poss));
            if l_after_k {
                Shape::KlSimple
            } else {
                Shape::LkSimple
            }
        }
        (true, true, false) => Shape::MixedCompound(compound_pattern(&v.ops)),
    }
}

fn compound_pattern(ops: &[ModalOp]) -> CompoundPattern {
    use Modality::{Know as K, Poss as L};
    let m: Vec<Modality> = ops.iter().map(|op| op.modality).collect();
    let a: Vec<&AgentId> = ops.iter().map(|op| &op.agent).collect();
    match m.as_slice() {
        [K, L, K] if a[0] == a[2] && a[0] != a[1] => CompoundPattern::KiLjKi,
        [K, K, L] if a[0] == a[2] && a[0] != a[1] => CompoundPattern::KiKjLi,
        [L, K, K, L] if a[0] == a[3] && a[0] != a[1] && a[0] != a[2] && a[1] != a[2] => {
            CompoundPattern::LiKjKkLi
        }
        _ => CompoundPattern::Other,
    }
}

/// Built from literals, `∧`, `∨`, `K` and announcements of the form
/// `[¬φ]ψ` with both sides in the fragment. Members are preserved under
/// induced submodels and therefore successful.
pub fn in_universal_fragment(f: &Formula) -> bool {
    match f {
        Formula::Atom(_) | Formula::True | Formula::False => true,
        Formula::Not(g) => matches!(**g, Formula::Atom(_)),
        Formula::And(a, b) | Formula::Or(a, b) => in_universal_fragment(a) && in_universal_fragment(b),
        Formula::Know(_, g) => in_universal_fragment(g),
        Formula::Announce(a, b) => match &**a {
            Formula::Not(inner) => in_universal_fragment(inner) && in_universal_fragment(b),
            _ => false,
        },
        Formula::Poss(..) | Formula::Common(_) => false,
    }
}

/// Grammar `p | ¬p | φ∧ψ | φ∨ψ | L_aφ | ¬[φ]¬ψ` (plus the constants),
/// whose members stay true when the model grows.
pub fn in_supermodel_fragment(f: &Formula) -> bool {
    match f {
        Formula::Atom(_) | Formula::True | Formula::False => true,
        Formula::Not(g) => match &**g {
            Formula::Atom(_) => true,
            Formula::Announce(a, b) => match &**b {
                Formula::Not(inner) => in_supermodel_fragment(a) && in_supermodel_fragment(inner),
                _ => false,
            },
            _ => false,
        },
        Formula::And(a, b) | Formula::Or(a, b) => {
            in_supermodel_fragment(a) && in_supermodel_fragment(b)
        }
        Formula::Poss(_, g) => in_supermodel_fragment(g),
        Formula::Know(..) | Formula::Common(_) | Formula::Announce(..) => false,
    }
}

/// Truth assignment over an ordered variable list; bit `i` is variable `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    vars: Vec<PropId>,
    bits: u32,
}

impl Assignment {
    pub fn value(&self, p: &PropId) -> bool {
        self.vars
            .iter()
            .position(|v| v == p)
            .is_some_and(|i| self.bits >> i & 1 == 1)
    }

    pub fn vars(&self) -> &[PropId] {
        &self.vars
    }

    pub fn true_vars(&self) -> impl Iterator<Item = &PropId> {
        self.vars.iter().enumerate().filter(move |(i, _)| self.bits >> i & 1 == 1).map(|(_, v)| v)
    }
}

/// Truth value of a propositional formula; atoms missing from the
/// assignment are false.
pub fn eval_prop(f: &Formula, a: &Assignment) -> bool {
    match f {
        Formula::Atom(p) => a.value(p),
        Formula::True => true,
        Formula::False => false,
        Formula::Not(g) => !eval_prop(g, a),
        Formula::And(x, y) => eval_prop(x, a) && eval_prop(y, a),
        Formula::Or(x, y) => eval_prop(x, a) || eval_prop(y, a),
        Formula::Know(..) | Formula::Poss(..) | Formula::Common(_) | Formula::Announce(..) => {
            unreachable!("eval_prop on a modal formula")
        }
    }
}

fn table_vars<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> Result<Vec<PropId>, FormulaError> {
    let mut vars = BTreeSet::new();
    for f in formulas {
        if !f.is_propositional() {
            return Err(FormulaError::NotPropositional(f.to_string()));
        }
        vars.extend(f.props());
    }
    if vars.len() > MAX_TABLE_ATOMS {
        return Err(FormulaError::TooManyAtoms { count: vars.len() });
    }
    Ok(vars.into_iter().collect())
}

/// First assignment over `vars` (ascending bitmask order) accepted by `pred`.
pub fn find_assignment(
    vars: &[PropId],
    mut pred: impl FnMut(&Assignment) -> bool,
) -> Result<Option<Assignment>, FormulaError> {
    if vars.len() > MAX_TABLE_ATOMS {
        return Err(FormulaError::TooManyAtoms { count: vars.len() });
    }
    let mut a = Assignment { vars: vars.to_vec(), bits: 0 };
    for bits in 0..1u32 << vars.len() {
        a.bits = bits;
        if pred(&a) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

fn all_assignments(
    formulas: &[&Formula],
    pred: impl Fn(&Assignment) -> bool,
) -> Result<bool, FormulaError> {
    let vars = table_vars(formulas.iter().copied())?;
    Ok(find_assignment(&vars, |a| !pred(a))?.is_none())
}

pub fn prop_taut(a: &Formula) -> Result<bool, FormulaError> {
    all_assignments(&[a], |v| eval_prop(a, v))
}

pub fn prop_satisfiable(a: &Formula) -> Result<bool, FormulaError> {
    all_assignments(&[a], |v| !eval_prop(a, v)).map(|unsat| !unsat)
}

/// Every assignment satisfying `a` satisfies `b`.
pub fn prop_entails(a: &Formula, b: &Formula) -> Result<bool, FormulaError> {
    all_assignments(&[a, b], |v| !eval_prop(a, v) || eval_prop(b, v))
}

pub fn prop_equiv(a: &Formula, b: &Formula) -> Result<bool, FormulaError> {
    all_assignments(&[a, b], |v| eval_prop(a, v) == eval_prop(b, v))
}

/// Satisfiable and falsifiable.
pub fn prop_contingent(a: &Formula) -> Result<bool, FormulaError> {
    Ok(prop_satisfiable(a)? && !prop_taut(a)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn view(s: &str) -> SingleTermView {
        as_single_term(&to_nnf(&f(s)).unwrap()).unwrap()
    }

    #[test]
    fn ids_reject_bad_tokens() {
        assert!(AgentId::new("1").is_ok());
        assert!(AgentId::new("ab2").is_ok());
        assert!(AgentId::new("").is_err());
        assert!(AgentId::new("a_b").is_err());
        assert!(PropId::new("p1").is_ok());
        assert!(PropId::new("true").is_err());
        assert!(PropId::new("P").is_err());
        assert!(PropId::new("1p").is_err());
    }

    #[test]
    fn nnf_examples() {
        assert_eq!(to_nnf(&f("~K_a p")).unwrap(), f("L_a ~p"));
        assert_eq!(to_nnf(&f("~(p & q)")).unwrap(), f("~p | ~q"));
        assert_eq!(to_nnf(&f("~L_1 ~p")).unwrap(), f("K_1 p"));
        assert_eq!(to_nnf(&f("~true")).unwrap(), Formula::False);
        assert_eq!(to_nnf(&f("C ~~p")).unwrap(), f("C p"));
        assert_eq!(to_nnf(&f("[~~p] ~(q | r)")).unwrap(), f("[p] (~q & ~r)"));
    }

    #[test]
    fn nnf_refuses_negated_common_and_announcement() {
        assert_eq!(
            to_nnf(&f("~C p")),
            Err(FormulaError::UnsupportedNegation { operator: "common knowledge" })
        );
        assert!(matches!(
            to_nnf(&f("p & ~[q] p")),
            Err(FormulaError::UnsupportedNegation { .. })
        ));
    }

    #[test]
    fn single_term_examples() {
        let v = view("K_1 L_2 p");
        assert_eq!(v.ops, vec![ModalOp::know(AgentId::new("1").unwrap()), ModalOp::poss(AgentId::new("2").unwrap())]);
        assert_eq!(v.body, f("p"));
        assert!(as_single_term(&f("p & q")).is_some_and(|v| v.ops.is_empty()));
        assert!(as_single_term(&f("K_1 p & q")).is_none());
        let v = view("L_1 (p | ~q)");
        assert_eq!(v.ops.len(), 1);
        assert_eq!(v.body, f("p | ~q"));
        assert!(as_single_term(&f("K_1 ~K_2 p")).is_none());
    }

    #[test]
    fn shapes() {
        assert_eq!(shape_of(&view("K_1 L_2 L_3 K_4 L_5 p")), Shape::KlSimple);
        assert_eq!(shape_of(&view("L_1 K_2 p")), Shape::LkSimple);
        assert_eq!(shape_of(&view("L_1 L_2 K_3 K_4 p")), Shape::LkSimple);
        assert_eq!(shape_of(&view("K_1 L_2 K_1 p")), Shape::MixedCompound(CompoundPattern::KiLjKi));
        assert_eq!(shape_of(&view("K_1 K_2 L_1 p")), Shape::MixedCompound(CompoundPattern::KiKjLi));
        assert_eq!(
            shape_of(&view("L_1 K_2 K_3 L_1 p")),
            Shape::MixedCompound(CompoundPattern::LiKjKkLi)
        );
        assert_eq!(
            shape_of(&view("L_1 K_2 K_2 L_1 p")),
            Shape::MixedCompound(CompoundPattern::Other)
        );
        assert_eq!(shape_of(&view("K_1 K_2 p")), Shape::PureK);
        assert_eq!(shape_of(&view("K_1 K_1 p")), Shape::KCompound);
        assert_eq!(shape_of(&view("L_1 L_1 p")), Shape::LCompound);
        assert_eq!(shape_of(&view("p")), Shape::PureK);
    }

    #[test]
    fn truth_tables() {
        assert!(prop_entails(&f("p & q"), &f("p")).unwrap());
        assert!(!prop_entails(&f("p"), &f("q")).unwrap());
        assert!(prop_taut(&f("p | ~p")).unwrap());
        assert!(prop_equiv(&f("p -> q"), &f("~q -> ~p")).unwrap());
        assert!(!prop_satisfiable(&f("p & ~p")).unwrap());
        assert!(prop_contingent(&f("p")).unwrap());
        assert!(matches!(prop_taut(&f("K_a p")), Err(FormulaError::NotPropositional(_))));
    }

    #[test]
    fn truth_table_atom_cap() {
        let wide = |n: usize| Formula::conjunction((0..n).map(|i| Formula::atom(PropId::new(format!("p{i}")).unwrap())));
        assert!(prop_satisfiable(&wide(20)).unwrap());
        assert_eq!(prop_satisfiable(&wide(21)), Err(FormulaError::TooManyAtoms { count: 21 }));
    }

    #[test]
    fn fragments() {
        assert!(in_universal_fragment(&f("K_1 (p & K_2 q)")));
        assert!(!in_universal_fragment(&f("~K_1 p")));
        assert!(in_universal_fragment(&f("p | ~q")));
        assert!(in_universal_fragment(&f("[~K_1 p] K_2 q")));
        assert!(!in_universal_fragment(&f("[p] q")));
        assert!(in_supermodel_fragment(&f("L_a (p | q)")));
        assert!(!in_supermodel_fragment(&f("K_a p")));
        assert!(in_supermodel_fragment(&f("~[p] ~q")));
        assert!(!in_supermodel_fragment(&f("~[p] q")));
    }

    #[test]
    fn first_assignment_order() {
        let vars: Vec<PropId> = vec![PropId::new("p").unwrap(), PropId::new("q").unwrap()];
        let a = find_assignment(&vars, |a| eval_prop(&f("(p | q) & ~p"), a)).unwrap().unwrap();
        assert!(a.value(&vars[1]) && !a.value(&vars[0]));
    }
}
