//! Syntactic success classification.
//!
//! Verdicts come from a fixed catalogue of rules. A few rule applications
//! are contradicted by exhaustive model checking; those are marked
//! disputed, kept as stated under [`RuleSet::Paper`] and degraded to
//! `Unknown` under [`RuleSet::Validated`].

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::formula::{
    as_single_term, in_universal_fragment, prop_entails, prop_equiv, prop_satisfiable, prop_taut, shape_of, to_nnf,
    AgentId, CompoundPattern, Formula, FormulaError, Modality, Shape, SingleTermView,
};
use crate::kripke::PointedModel;
use crate::oracle::{
    build_conj_chain_countermodel, build_glued_countermodel, build_klsimple_countermodel, find_success_counterexample,
    success_failures, BuildError, SearchBounds, SearchError, Strategy,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RuleId {
    UniversalFragment,
    TautBody,
    ContraBody,
    KSimple,
    LSimple,
    LKSimple,
    KLSimple,
    KCompound,
    LCompound,
    KiLjKi,
    KiKjLi,
    LiKjKkLi,
    SingleAgent,
    ConjCase1,
    ConjCase2,
    ConjCase3,
    ConjCase4,
    ConjCase5,
    FootnoteA,
    FootnoteB,
    FootnoteC,
    ConjUnsuccPair,
    ConjSuccUnsucc,
}

impl RuleId {
    pub const ALL: [RuleId; 23] = [
        RuleId::UniversalFragment,
        RuleId::TautBody,
        RuleId::ContraBody,
        RuleId::KSimple,
        RuleId::LSimple,
        RuleId::LKSimple,
        RuleId::KLSimple,
        RuleId::KCompound,
        RuleId::LCompound,
        RuleId::KiLjKi,
        RuleId::KiKjLi,
        RuleId::LiKjKkLi,
        RuleId::SingleAgent,
        RuleId::ConjCase1,
        RuleId::ConjCase2,
        RuleId::ConjCase3,
        RuleId::ConjCase4,
        RuleId::ConjCase5,
        RuleId::FootnoteA,
        RuleId::FootnoteB,
        RuleId::FootnoteC,
        RuleId::ConjUnsuccPair,
        RuleId::ConjSuccUnsucc,
    ];

    pub fn citation(self) -> &'static str {
        match self {
            RuleId::UniversalFragment => {
                "literals combined with and, or and knowledge operators keep their truth in every submodel"
            }
            RuleId::TautBody => "a chain over a tautology is true in every model",
            RuleId::ContraBody => "a formula with an unsatisfiable propositional core is never true",
            RuleId::KSimple => "knowledge operators of distinct agents over a propositional body",
            RuleId::LSimple => "possibility operators of distinct agents over a propositional body",
            RuleId::LKSimple => "distinct agents, possibility operators first, knowledge operators after",
            RuleId::KLSimple => "distinct agents with some possibility operator under a knowledge operator fails",
            RuleId::KCompound => "knowledge operators only, with some agent repeated",
            RuleId::LCompound => "possibility operators only, with some agent repeated",
            RuleId::KiLjKi => "K_i L_j K_i over a propositional body",
            RuleId::KiKjLi => "K_i K_j L_i over a propositional body claimed to fail",
            RuleId::LiKjKkLi => "L_i K_j K_k L_i over a propositional body",
            RuleId::SingleAgent => "for one agent an S5 chain is equivalent to its innermost operator",
            RuleId::ConjCase1 => "propositional part together with knowledge chains",
            RuleId::ConjCase2 => "a ∧ L..L b with two or more L's holds up exactly when a entails b",
            RuleId::ConjCase3 => "a ∧ L..L K..K b with two or more L's claimed to fail",
            RuleId::ConjCase4 => "K..K a ∧ L..L b with two or more L's holds up exactly when a entails b",
            RuleId::ConjCase5 => "two successful terms at least one of which starts with two or more L's, claimed to fail",
            RuleId::FootnoteA => "a ∧ L_i K..K b claimed to hold up exactly when b entails a",
            RuleId::FootnoteB => "L_i a ∧ L_j b holds up exactly when a and b are equivalent",
            RuleId::FootnoteC => "a ∧ L_i b holds up exactly when one of a, b entails the other",
            RuleId::ConjUnsuccPair => "two failing terms over separate agents and variables fail together",
            RuleId::ConjSuccUnsucc => "a failing term next to successful terms on other variables still fails",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A rule as applied to one formula. `disputed` is set when model checking
/// contradicts this particular application.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Rule {
    pub id: RuleId,
    pub citation: &'static str,
    pub disputed: bool,
}

impl Rule {
    fn new(id: RuleId) -> Rule {
        Rule { id, citation: id.citation(), disputed: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleSet {
    /// Every rule as originally stated.
    Paper,
    /// Disputed applications become `Unknown`.
    #[default]
    Validated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Successful,
    Unsuccessful,
    Unknown,
}

/// How to obtain a counter-model for an unsuccessful verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessRecipe {
    KlSimple(SingleTermView),
    ConjChain { alpha: Formula, lseq: Vec<AgentId>, beta: Formula },
    Glued { unsuccessful: Vec<SingleTermView>, successful: Vec<SingleTermView> },
    /// No explicit construction; search path-shaped models up to this size.
    ChainSearch { max_worlds: usize },
}

pub const CHAIN_SEARCH_WORLDS: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("no path-shaped counter-model with at most {0} worlds")]
    NotFound(usize),
    #[error("internal defect: witness does not refute {0}")]
    NotACounterModel(String),
}

impl WitnessRecipe {
    pub fn name(&self) -> &'static str {
        match self {
            WitnessRecipe::KlSimple(_) => "klsimple",
            WitnessRecipe::ConjChain { .. } => "conj-chain",
            WitnessRecipe::Glued { .. } => "glued",
            WitnessRecipe::ChainSearch { .. } => "chain-search",
        }
    }

    /// Build the counter-model and check it against `f`.
    pub fn materialize(&self, f: &Formula) -> Result<PointedModel, WitnessError> {
        let pm = match self {
            WitnessRecipe::KlSimple(v) => build_klsimple_countermodel(v)?,
            WitnessRecipe::ConjChain { alpha, lseq, beta } => build_conj_chain_countermodel(alpha, lseq, beta)?,
            WitnessRecipe::Glued { unsuccessful, successful } => build_glued_countermodel(unsuccessful, successful)?,
            WitnessRecipe::ChainSearch { max_worlds } => {
                let agents: Vec<AgentId> = f.agents().into_iter().collect();
                let bounds = SearchBounds::new(*max_worlds, agents, Strategy::Chain)?;
                let report = find_success_counterexample(f, &bounds)?;
                report.witness().cloned().ok_or(WitnessError::NotFound(*max_worlds))?
            }
        };
        if success_failures(&pm.model, f).contains(pm.point) {
            Ok(pm)
        } else {
            Err(WitnessError::NotACounterModel(f.to_string()))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub rule: Option<Rule>,
    pub witness: Option<WitnessRecipe>,
    pub reason: Option<String>,
}

impl Verdict {
    fn successful(id: RuleId) -> Verdict {
        Verdict { status: Status::Successful, rule: Some(Rule::new(id)), witness: None, reason: None }
    }

    fn unsuccessful(id: RuleId, witness: WitnessRecipe) -> Verdict {
        Verdict { status: Status::Unsuccessful, rule: Some(Rule::new(id)), witness: Some(witness), reason: None }
    }

    pub fn unknown(reason: impl Into<String>) -> Verdict {
        Verdict { status: Status::Unknown, rule: None, witness: None, reason: Some(reason.into()) }
    }

    /// A rule application that model checking contradicts: the rule says
    /// unsuccessful, yet no counter-model exists.
    fn disputed(id: RuleId, rs: RuleSet, why: &str) -> Verdict {
        match rs {
            RuleSet::Paper => Verdict {
                status: Status::Unsuccessful,
                rule: Some(Rule { disputed: true, ..Rule::new(id) }),
                witness: None,
                reason: Some(format!("disputed: {why}")),
            },
            RuleSet::Validated => Verdict::unknown(format!("{id} does not apply: {why}")),
        }
    }

    /// JSON form. Witnesses are materialized against `f` when present.
    pub fn to_json(&self, f: &Formula) -> Value {
        let witness = self.witness.as_ref().map(|w| (w.name(), w.materialize(f)));
        let mut out = json!({
            "formula": f.to_string(),
            "status": self.status,
            "rule_id": self.rule.map(|r| r.id),
            "citation": self.rule.map(|r| r.citation),
            "disputed": self.rule.is_some_and(|r| r.disputed),
            "witness_recipe": witness.as_ref().map(|(name, _)| *name),
            "witness": Value::Null,
            "reason": self.reason,
        });
        match witness {
            Some((_, Ok(pm))) => out["witness"] = serde_json::to_value(pm.to_raw()).unwrap(),
            Some((_, Err(e))) => out["witness_error"] = json!(e.to_string()),
            None => {}
        }
        out
    }
}

fn body_class(body: &Formula) -> Result<Option<RuleId>, FormulaError> {
    if !prop_satisfiable(body)? {
        Ok(Some(RuleId::ContraBody))
    } else if prop_taut(body)? {
        Ok(Some(RuleId::TautBody))
    } else {
        Ok(None)
    }
}

/// Classify one chain of knowledge and possibility operators.
pub fn classify_single_term(v: &SingleTermView, rs: RuleSet) -> Verdict {
    match body_class(&v.body) {
        Err(e) => return Verdict::unknown(e.to_string()),
        Ok(Some(id)) => return Verdict::successful(id),
        Ok(None) => {}
    }
    if v.ops.is_empty() {
        return Verdict::successful(RuleId::UniversalFragment);
    }
    match shape_of(v) {
        Shape::PureK => Verdict::successful(RuleId::KSimple),
        Shape::PureL => Verdict::successful(RuleId::LSimple),
        Shape::LkSimple => Verdict::successful(RuleId::LKSimple),
        Shape::KlSimple => Verdict::unsuccessful(RuleId::KLSimple, WitnessRecipe::KlSimple(v.clone())),
        Shape::KCompound => Verdict::successful(RuleId::KCompound),
        Shape::LCompound => Verdict::successful(RuleId::LCompound),
        Shape::MixedCompound(CompoundPattern::KiLjKi) => Verdict::successful(RuleId::KiLjKi),
        Shape::MixedCompound(CompoundPattern::LiKjKkLi) => Verdict::successful(RuleId::LiKjKkLi),
        Shape::MixedCompound(CompoundPattern::KiKjLi) => Verdict::disputed(
            RuleId::KiKjLi,
            rs,
            "the outer knowledge formula is constant on the first agent's blocks, so announcing it removes whole blocks and the inner possibility survives",
        ),
        Shape::MixedCompound(CompoundPattern::Other) if v.agents().len() == 1 => {
            Verdict::successful(RuleId::SingleAgent)
        }
        Shape::MixedCompound(CompoundPattern::Other) => {
            Verdict::unknown("compound chain outside the recognised patterns")
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Kind {
    Prop,
    K,
    L,
    Lk,
}

fn kind(v: &SingleTermView) -> Option<Kind> {
    if v.ops.is_empty() {
        return Some(Kind::Prop);
    }
    match shape_of(v) {
        Shape::PureK => Some(Kind::K),
        Shape::PureL => Some(Kind::L),
        Shape::LkSimple => Some(Kind::Lk),
        _ => None,
    }
}

fn lseq(v: &SingleTermView) -> Vec<AgentId> {
    v.ops.iter().take_while(|op| op.modality == Modality::Poss).map(|op| op.agent.clone()).collect()
}

fn disjoint<T: Ord>(a: &std::collections::BTreeSet<T>, b: &std::collections::BTreeSet<T>) -> bool {
    a.intersection(b).next().is_none()
}

/// Classify a conjunction of simple terms and propositional formulas.
pub fn classify_conjunction(terms: &[SingleTermView], rs: RuleSet) -> Verdict {
    match conjunction(terms, rs) {
        Ok(v) => v,
        Err(e) => Verdict::unknown(e.to_string()),
    }
}

fn conjunction(terms: &[SingleTermView], rs: RuleSet) -> Result<Verdict, FormulaError> {
    if let Some(v) = terms.iter().find(|v| !v.ops.is_empty() && !v.is_simple()) {
        return Ok(Verdict::unknown(format!("conjunct {} is not a simple term", v.to_formula())));
    }
    let mut live = Vec::new();
    for v in terms {
        match body_class(&v.body)? {
            Some(RuleId::ContraBody) => return Ok(Verdict::successful(RuleId::ContraBody)),
            Some(_) => {}
            None => live.push(v.clone()),
        }
    }
    // Propositional conjuncts merge into one.
    let (props, mut modal): (Vec<_>, Vec<_>) = live.into_iter().partition(|v| v.ops.is_empty());
    if !props.is_empty() {
        let alpha = Formula::conjunction(props.into_iter().map(|v| v.body));
        if !prop_satisfiable(&alpha)? {
            return Ok(Verdict::successful(RuleId::ContraBody));
        }
        modal.insert(0, SingleTermView { ops: Vec::new(), body: alpha });
    }
    match modal.len() {
        0 => return Ok(Verdict::successful(RuleId::TautBody)),
        1 => return Ok(classify_single_term(&modal[0], rs)),
        _ => {}
    }

    let verdicts: Vec<Verdict> = modal.iter().map(|v| classify_single_term(v, rs)).collect();
    if verdicts.iter().any(|v| v.status == Status::Unsuccessful) {
        return Ok(glue(&modal, &verdicts));
    }
    if verdicts.iter().any(|v| v.status == Status::Unknown) {
        return Ok(Verdict::unknown("a conjunct has no verdict of its own"));
    }
    if modal.len() > 2 {
        return Ok(Verdict::unknown("no rule for more than two successful conjuncts"));
    }
    let (mut a, mut b) = (&modal[0], &modal[1]);
    let (Some(mut ka), Some(mut kb)) = (kind(a), kind(b)) else {
        return Ok(Verdict::unknown("conjunct shape has no conjunction rule"));
    };
    if ka > kb {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut ka, &mut kb);
    }
    if kb == Kind::K {
        return Ok(Verdict::successful(RuleId::ConjCase1));
    }
    if !disjoint(&a.agents(), &b.agents()) {
        return Ok(Verdict::unknown("the two conjuncts share an agent"));
    }
    let (alpha, beta) = (&a.body, &b.body);
    let (la, lb) = (a.poss_prefix_len(), b.poss_prefix_len());
    let search = WitnessRecipe::ChainSearch { max_worlds: CHAIN_SEARCH_WORLDS };
    let chain = || WitnessRecipe::ConjChain { alpha: alpha.clone(), lseq: lseq(b), beta: beta.clone() };
    Ok(match (ka, kb) {
        (Kind::Prop, Kind::L) if lb >= 2 => {
            if prop_entails(alpha, beta)? {
                Verdict::successful(RuleId::ConjCase2)
            } else {
                Verdict::unsuccessful(RuleId::ConjCase2, chain())
            }
        }
        (Kind::Prop, Kind::L) => {
            if prop_entails(alpha, beta)? || prop_entails(beta, alpha)? {
                Verdict::successful(RuleId::FootnoteC)
            } else {
                Verdict::unsuccessful(RuleId::FootnoteC, chain())
            }
        }
        (Kind::Prop, Kind::Lk) if lb >= 2 => {
            if prop_entails(alpha, beta)? {
                Verdict::disputed(RuleId::ConjCase3, rs, "the propositional part entails the inner body")
            } else {
                Verdict::unsuccessful(RuleId::ConjCase3, search)
            }
        }
        (Kind::Prop, Kind::Lk) => {
            if prop_entails(beta, alpha)? {
                Verdict::successful(RuleId::FootnoteA)
            } else if prop_entails(alpha, beta)? {
                Verdict::disputed(RuleId::FootnoteA, rs, "the propositional part entails the inner body")
            } else {
                Verdict::unsuccessful(RuleId::FootnoteA, search)
            }
        }
        (Kind::K, Kind::L) if lb >= 2 => {
            if prop_entails(alpha, beta)? {
                Verdict::successful(RuleId::ConjCase4)
            } else {
                Verdict::unsuccessful(RuleId::ConjCase4, chain())
            }
        }
        (Kind::K, Kind::Lk) if lb >= 2 => {
            if prop_entails(alpha, beta)? {
                Verdict::disputed(RuleId::ConjCase5, rs, "the known body entails the inner body")
            } else {
                Verdict::unsuccessful(RuleId::ConjCase5, search)
            }
        }
        (Kind::L, Kind::L) if la == 1 && lb == 1 => {
            if prop_equiv(alpha, beta)? {
                Verdict::successful(RuleId::FootnoteB)
            } else {
                Verdict::unsuccessful(RuleId::FootnoteB, search)
            }
        }
        (Kind::L | Kind::Lk, Kind::L | Kind::Lk) if la >= 2 && lb >= 2 => {
            Verdict::unsuccessful(RuleId::ConjCase5, search)
        }
        _ => Verdict::unknown("no conjunction rule for these prefix lengths"),
    })
}

/// Conjunctions where some conjunct is unsuccessful on its own.
fn glue(terms: &[SingleTermView], verdicts: &[Verdict]) -> Verdict {
    let mut bad = Vec::new();
    let mut good = Vec::new();
    for (t, v) in terms.iter().zip(verdicts) {
        match (v.status, &v.witness) {
            (Status::Unsuccessful, Some(WitnessRecipe::KlSimple(_))) => bad.push(t.clone()),
            (Status::Unsuccessful, _) => return Verdict::unknown("a failing conjunct has no explicit counter-model"),
            (Status::Successful, _) => good.push(t.clone()),
            (Status::Unknown, _) => return Verdict::unknown("a conjunct has no verdict of its own"),
        }
    }
    for (i, x) in bad.iter().enumerate() {
        for y in &bad[i + 1..] {
            if !disjoint(&x.agents(), &y.agents()) {
                return Verdict::unknown("two failing conjuncts share an agent");
            }
            if !disjoint(&x.body.props(), &y.body.props()) {
                return Verdict::unknown("two failing conjuncts share a variable");
            }
        }
    }
    let id = if good.is_empty() {
        RuleId::ConjUnsuccPair
    } else {
        let bad_vars: std::collections::BTreeSet<_> = bad.iter().flat_map(|v| v.body.props()).collect();
        if good.iter().any(|v| !disjoint(&v.body.props(), &bad_vars)) {
            return Verdict::unknown("a successful conjunct shares a variable with a failing one");
        }
        let joint = Formula::conjunction(good.iter().map(|v| v.body.clone()));
        if !prop_satisfiable(&joint).unwrap_or(false) {
            return Verdict::unknown("the successful bodies are jointly unsatisfiable");
        }
        RuleId::ConjSuccUnsucc
    };
    Verdict::unsuccessful(id, WitnessRecipe::Glued { unsuccessful: bad, successful: good })
}

fn conjuncts(f: &Formula, out: &mut Vec<Formula>) {
    match f {
        Formula::And(a, b) => {
            conjuncts(a, out);
            conjuncts(b, out);
        }
        _ => out.push(f.clone()),
    }
}

/// Classify any formula.
pub fn classify(f: &Formula, rs: RuleSet) -> Verdict {
    if in_universal_fragment(f) {
        return Verdict::successful(RuleId::UniversalFragment);
    }
    let mut has_dynamic = false;
    f.visit(&mut |g| has_dynamic |= matches!(g, Formula::Common(_) | Formula::Announce(..)));
    if has_dynamic {
        return Verdict::unknown("common knowledge or announcements outside the universal fragment");
    }
    let nnf = match to_nnf(f) {
        Ok(g) => g,
        Err(e) => return Verdict::unknown(e.to_string()),
    };
    if let Some(v) = as_single_term(&nnf) {
        return classify_single_term(&v, rs);
    }
    if let Formula::And(..) = nnf {
        let mut parts = Vec::new();
        conjuncts(&nnf, &mut parts);
        let views: Option<Vec<SingleTermView>> = parts.iter().map(as_single_term).collect();
        return match views {
            Some(vs) => classify_conjunction(&vs, rs),
            None => Verdict::unknown("a conjunct is not a single term"),
        };
    }
    Verdict::unknown("disjunctions and other shapes have no rule")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn check(s: &str, rs: RuleSet) -> (Status, Option<RuleId>) {
        let v = classify(&f(s), rs);
        (v.status, v.rule.map(|r| r.id))
    }

    use RuleSet::{Paper, Validated};
    use Status::{Successful as S, Unknown as U, Unsuccessful as X};

    #[test]
    fn single_terms() {
        assert_eq!(check("K_1 L_2 p", Validated), (X, Some(RuleId::KLSimple)));
        assert_eq!(check("K_1 L_2 K_1 p", Validated), (S, Some(RuleId::KiLjKi)));
        assert_eq!(check("L_1 L_1 p", Validated), (S, Some(RuleId::LCompound)));
        assert_eq!(check("L_1 K_2 p", Validated), (S, Some(RuleId::LKSimple)));
        assert_eq!(check("L_1 K_2 K_3 L_1 p", Validated), (S, Some(RuleId::LiKjKkLi)));
        assert_eq!(check("L_1 L_2 p", Validated), (S, Some(RuleId::LSimple)));
        assert_eq!(check("K_1 L_1 p", Validated), (S, Some(RuleId::SingleAgent)));
        assert_eq!(check("K_1 L_2 (p | ~p)", Validated), (S, Some(RuleId::TautBody)));
        assert_eq!(check("L_1 (p & ~p)", Validated), (S, Some(RuleId::ContraBody)));
        assert_eq!(check("L_2 L_1 K_a K_b L_1 p", Validated).0, U);
    }

    #[test]
    fn disputed_rule_depends_on_mode() {
        let paper = classify(&f("K_1 K_2 L_1 p"), Paper);
        assert_eq!(paper.status, X);
        assert!(paper.rule.unwrap().disputed);
        assert!(paper.witness.is_none());
        assert_eq!(check("K_1 K_2 L_1 p", Validated), (U, None));
    }

    #[test]
    fn universal_fragment_first() {
        assert_eq!(check("K_a (p | K_b q)", Validated), (S, Some(RuleId::UniversalFragment)));
        assert_eq!(check("[~p] K_1 q", Validated), (S, Some(RuleId::UniversalFragment)));
        assert_eq!(check("C p", Validated), (U, None));
    }

    #[test]
    fn conjunctions() {
        assert_eq!(check("K_1 L_2 p & K_3 L_4 q", Validated), (X, Some(RuleId::ConjUnsuccPair)));
        assert_eq!(check("K_1 L_2 p & L_3 q", Validated), (X, Some(RuleId::ConjSuccUnsucc)));
        assert_eq!(check("p & L_1 L_2 p", Validated), (S, Some(RuleId::ConjCase2)));
        assert_eq!(check("p & L_1 L_2 q", Validated), (X, Some(RuleId::ConjCase2)));
        assert_eq!(check("p & L_1 q", Validated), (X, Some(RuleId::FootnoteC)));
        assert_eq!(check("p & ~K_b p", Validated), (X, Some(RuleId::FootnoteC)));
        assert_eq!(check("L_1 p & L_2 p", Validated), (S, Some(RuleId::FootnoteB)));
        assert_eq!(check("K_1 p & L_2 L_3 q", Validated), (X, Some(RuleId::ConjCase4)));
        assert_eq!(check("p & L_1 K_2 (p & q)", Validated), (S, Some(RuleId::FootnoteA)));
        assert_eq!(check("p & L_1 L_2 K_3 q", Validated), (X, Some(RuleId::ConjCase3)));
        assert_eq!(check("p & L_1 L_2 K_3 p", Validated), (U, None));
        assert_eq!(check("p & L_1 L_2 K_3 p", Paper), (X, Some(RuleId::ConjCase3)));
        assert_eq!(check("L_1 L_2 p & L_3 L_4 p", Validated), (X, Some(RuleId::ConjCase5)));
        assert_eq!(check("L_1 p & L_1 L_2 q", Validated), (U, None));
        assert_eq!(check("p & q & L_1 L_2 p", Validated), (S, Some(RuleId::ConjCase2)));
        assert_eq!(check("p & ~p & L_1 q", Validated), (S, Some(RuleId::ContraBody)));
        assert_eq!(check("L_1 p | L_2 q", Validated), (U, None));
    }

    #[test]
    fn witnesses_materialize() {
        for s in [
            "K_1 L_2 p",
            "K_1 L_2 p & K_3 L_4 q",
            "K_1 L_2 p & L_3 q",
            "p & L_1 L_2 q",
            "p & L_1 q",
            "K_1 p & L_2 L_3 q",
            "p & L_1 L_2 K_3 q",
            "p & L_1 K_2 q",
            "L_1 p & L_2 q",
            "L_1 L_2 p & L_3 L_4 p",
            "K_1 q & L_2 L_3 K_4 p",
        ] {
            let g = f(s);
            let v = classify(&g, Validated);
            assert_eq!(v.status, X, "{s}");
            v.witness.unwrap().materialize(&g).unwrap_or_else(|e| panic!("{s}: {e}"));
        }
    }

    #[test]
    fn commutative_on_examples() {
        for (a, b) in [("p", "L_1 q"), ("K_1 p", "L_2 L_3 q"), ("L_1 L_2 p", "L_3 L_4 K_5 q"), ("K_1 L_2 p", "q")] {
            let x = classify(&f(&format!("{a} & {b}")), Validated);
            let y = classify(&f(&format!("{b} & {a}")), Validated);
            assert_eq!(x.status, y.status, "{a} / {b}");
        }
    }
}
