//! Explicit counter-model constructions.
//!
//! Every builder checks its own postcondition before returning, so a
//! returned model is a genuine counter-model for the formula it names.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::search::success_failures;
use crate::formula::{
    find_assignment, prop_contingent, prop_entails, prop_satisfiable, shape_of, eval_prop, AgentId, Assignment,
    Formula, FormulaError, Modality, PropId, Shape, SingleTermView,
};
use crate::kripke::{KripkeModel, PointedModel};
use crate::worldset::WorldSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("term {0} is not KL-simple")]
    WrongShape(String),
    #[error("body {0} is not contingent")]
    NonContingentBody(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("internal defect: constructed model does not refute {0}")]
    PostconditionFailed(String),
}

fn agent(name: &str) -> AgentId {
    AgentId::new(name).expect("valid agent literal")
}

fn prop(name: &str) -> PropId {
    PropId::new(name).expect("valid prop literal")
}

fn set(ws: &[usize]) -> WorldSet {
    ws.iter().copied().collect()
}

/// Install `a` at every world of `at`.
fn assign(valuation: &mut BTreeMap<PropId, WorldSet>, a: &Assignment, at: WorldSet) {
    for v in a.vars() {
        let slot = valuation.entry(v.clone()).or_default();
        if a.value(v) {
            *slot = slot.union(at);
        }
    }
}

fn check_refutes(m: KripkeModel, point: usize, f: &Formula) -> Result<PointedModel, BuildError> {
    if success_failures(&m, f).contains(point) {
        Ok(PointedModel { model: m, point })
    } else {
        Err(BuildError::PostconditionFailed(f.to_string()))
    }
}

fn sorted_vars(fs: &[&Formula]) -> Vec<PropId> {
    fs.iter().flat_map(|f| f.props()).collect::<BTreeSet<_>>().into_iter().collect()
}

fn sat_and_fal(body: &Formula) -> Result<(Assignment, Assignment), BuildError> {
    let vars = sorted_vars(&[body]);
    let sat = find_assignment(&vars, |a| eval_prop(body, a))?;
    let fal = find_assignment(&vars, |a| !eval_prop(body, a))?;
    match (sat, fal) {
        (Some(s), Some(f)) => Ok((s, f)),
        _ => Err(BuildError::NonContingentBody(body.to_string())),
    }
}

/// Four-world counter-model for a KL-simple term.
///
/// The first `K` agent groups `{w1,w2}` and `{w3,w4}`, the first `L` agent
/// after it groups `{w2,w3}`; every other agent of the term sees only
/// itself. The body holds at `w1` and `w3` only.
pub fn build_klsimple_countermodel(v: &SingleTermView) -> Result<PointedModel, BuildError> {
    let f = v.to_formula();
    if shape_of(v) != Shape::KlSimple {
        return Err(BuildError::WrongShape(f.to_string()));
    }
    let (sat, fal) = sat_and_fal(&v.body)?;
    let k = v.ops.iter().position(|op| op.modality == Modality::Know).unwrap();
    let l = k + 1 + v.ops[k + 1..].iter().position(|op| op.modality == Modality::Poss).unwrap();

    let mut agents: BTreeMap<AgentId, Vec<WorldSet>> =
        v.ops.iter().map(|op| (op.agent.clone(), Vec::new())).collect();
    agents.insert(v.ops[k].agent.clone(), vec![set(&[0, 1]), set(&[2, 3])]);
    agents.insert(v.ops[l].agent.clone(), vec![set(&[1, 2])]);
    let mut valuation = BTreeMap::new();
    assign(&mut valuation, &sat, set(&[0, 2]));
    assign(&mut valuation, &fal, set(&[1, 3]));
    let m = KripkeModel::from_parts(KripkeModel::numbered_worlds(4), agents, valuation);
    check_refutes(m, 0, &f)
}

/// `α ∧ L_{a1}…L_{an} β` as a formula.
pub fn conj_chain_formula(alpha: &Formula, lseq: &[AgentId], beta: &Formula) -> Formula {
    let chain = lseq.iter().rev().fold(beta.clone(), |acc, a| Formula::poss(a.clone(), acc));
    Formula::and(alpha.clone(), chain)
}

/// Path `w1 … w(n+1)` refuting `α ∧ L_{a1}…L_{an} β`, with `w_i` and
/// `w_(i+1)` merged for agent `a_i`. `w1` satisfies `α ∧ ¬β`, the far end
/// satisfies `β` (and `¬α` when possible), everything in between `¬α`.
pub fn build_conj_chain_countermodel(
    alpha: &Formula,
    lseq: &[AgentId],
    beta: &Formula,
) -> Result<PointedModel, BuildError> {
    let pre = |msg: String| Err(BuildError::PreconditionViolated(msg));
    if !prop_contingent(alpha)? {
        return pre(format!("{alpha} is not contingent"));
    }
    if prop_entails(alpha, beta)? {
        return pre(format!("{alpha} entails {beta}"));
    }
    if !prop_satisfiable(beta)? {
        return pre(format!("{beta} is unsatisfiable"));
    }
    if lseq.is_empty() {
        return pre("the L sequence is empty".into());
    }
    if lseq.iter().collect::<BTreeSet<_>>().len() != lseq.len() {
        return pre("the L sequence repeats an agent".into());
    }
    // With a single L the far end is also a neighbour of w1 and must not
    // survive the announcement.
    if lseq.len() == 1 && prop_entails(beta, alpha)? {
        return pre(format!("{beta} entails {alpha}"));
    }

    let n = lseq.len();
    let vars = sorted_vars(&[alpha, beta]);
    let start = find_assignment(&vars, |a| eval_prop(alpha, a) && !eval_prop(beta, a))?.unwrap();
    let end = match find_assignment(&vars, |a| eval_prop(beta, a) && !eval_prop(alpha, a))? {
        Some(a) => a,
        None => find_assignment(&vars, |a| eval_prop(beta, a))?.unwrap(),
    };
    let middle = find_assignment(&vars, |a| !eval_prop(alpha, a))?.unwrap();

    let mut agents = BTreeMap::new();
    for (i, a) in lseq.iter().enumerate() {
        agents.insert(a.clone(), vec![set(&[i, i + 1])]);
    }
    let mut valuation = BTreeMap::new();
    assign(&mut valuation, &start, WorldSet::singleton(0));
    assign(&mut valuation, &middle, (1..n).collect());
    assign(&mut valuation, &end, WorldSet::singleton(n));
    let m = KripkeModel::from_parts(KripkeModel::numbered_worlds(n + 1), agents, valuation);
    check_refutes(m, 0, &conj_chain_formula(alpha, lseq, beta))
}

/// The six-world model drawn for `K₁K₂L₁p`.
pub fn build_figure3_model() -> KripkeModel {
    let agents = BTreeMap::from([
        (agent("1"), vec![set(&[0, 1]), set(&[2, 3, 4]), set(&[5])]),
        (agent("2"), vec![set(&[1, 2]), set(&[4, 5]), set(&[0]), set(&[3])]),
    ]);
    let valuation = BTreeMap::from([(prop("p"), set(&[0, 3]))]);
    KripkeModel::from_parts(KripkeModel::numbered_worlds(6), agents, valuation)
}

/// Counter-model for a conjunction of KL-simple terms and successful terms.
///
/// Each KL-simple term gets its own four-world model; these are glued at
/// the shared point `w1`. On worlds outside its own part, a term's
/// variables take a value making its body true, and the successful
/// bodies are made true everywhere. Requires the KL-simple terms to have
/// pairwise disjoint agents and variables, and the successful bodies to
/// share no variable with them.
pub fn build_glued_countermodel(
    unsuccessful: &[SingleTermView],
    successful: &[SingleTermView],
) -> Result<PointedModel, BuildError> {
    let pre = |msg: &str| Err(BuildError::PreconditionViolated(msg.into()));
    if unsuccessful.is_empty() {
        return pre("no unsuccessful term");
    }
    let mut seen_agents = BTreeSet::new();
    let mut seen_vars = BTreeSet::new();
    for v in unsuccessful {
        if !v.agents().iter().all(|a| seen_agents.insert(a.clone())) {
            return pre("unsuccessful terms share an agent");
        }
        if !v.body.props().into_iter().all(|p| seen_vars.insert(p)) {
            return pre("unsuccessful terms share a variable");
        }
    }
    let good = Formula::conjunction(successful.iter().map(|v| v.body.clone()));
    if good.props().iter().any(|p| seen_vars.contains(p)) {
        return pre("a successful body shares a variable with an unsuccessful term");
    }
    let good_vars = sorted_vars(&[&good]);
    let Some(good_assignment) = find_assignment(&good_vars, |a| eval_prop(&good, a))? else {
        return pre("the successful bodies are jointly unsatisfiable");
    };

    let parts = unsuccessful
        .iter()
        .map(|v| Ok((build_klsimple_countermodel(v)?, sat_and_fal(&v.body)?.0)))
        .collect::<Result<Vec<_>, BuildError>>()?;
    let n = 1 + 3 * parts.len();
    let universe = WorldSet::full(n);
    let mut agents: BTreeMap<AgentId, Vec<WorldSet>> = BTreeMap::new();
    let mut valuation = BTreeMap::new();
    for (i, (part, sat)) in parts.iter().enumerate() {
        // Part world 0 is the shared point, worlds 1..4 go to 3i+1..3i+4.
        let lift = |s: WorldSet| -> WorldSet { s.iter().map(|w| if w == 0 { 0 } else { 3 * i + w }).collect() };
        let own = lift(part.model.universe());
        for a in part.model.agents() {
            agents.insert(a.clone(), part.model.blocks(a).into_iter().map(lift).collect());
        }
        for p in part.model.props() {
            let slot: &mut WorldSet = valuation.entry(p.clone()).or_default();
            *slot = slot.union(lift(part.model.valuation(p)));
        }
        assign(&mut valuation, sat, universe.minus(own));
    }
    assign(&mut valuation, &good_assignment, universe);
    let m = KripkeModel::from_parts(KripkeModel::numbered_worlds(n), agents, valuation);
    let f = Formula::conjunction(
        unsuccessful.iter().chain(successful).map(|v| v.to_formula()),
    );
    check_refutes(m, 0, &f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::as_single_term;
    use crate::parser::parse;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn view(s: &str) -> SingleTermView {
        as_single_term(&f(s)).unwrap()
    }

    #[test]
    fn klsimple_builder_reproduces_figure2() {
        let pm = build_klsimple_countermodel(&view("K_1 L_2 p")).unwrap();
        let raw = pm.to_raw();
        assert_eq!(raw.worlds, vec!["w1", "w2", "w3", "w4"]);
        assert_eq!(raw.agents["1"], vec![vec!["w1", "w2"], vec!["w3", "w4"]]);
        assert_eq!(raw.agents["2"], vec![vec!["w1".to_string()], vec!["w2".into(), "w3".into()], vec!["w4".into()]]);
        assert_eq!(raw.valuation["p"], vec!["w1", "w3"]);
        assert_eq!(pm.point, 0);
        assert_eq!(build_klsimple_countermodel(&view("K_1 L_2 (p & p)")).unwrap().model, pm.model);
    }

    #[test]
    fn klsimple_builder_handles_longer_chains() {
        let pm = build_klsimple_countermodel(&view("K_1 L_2 L_3 K_4 L_5 p")).unwrap();
        assert_eq!(pm.model.len(), 4);
        for a in ["3", "4", "5"] {
            assert_eq!(pm.model.blocks(&agent(a)).len(), 4);
        }
    }

    #[test]
    fn klsimple_builder_rejects() {
        assert!(matches!(build_klsimple_countermodel(&view("L_1 K_2 p")), Err(BuildError::WrongShape(_))));
        assert!(matches!(
            build_klsimple_countermodel(&view("K_1 L_2 (p | ~p)")),
            Err(BuildError::NonContingentBody(_))
        ));
    }

    #[test]
    fn conj_chain_builder() {
        let pm = build_conj_chain_countermodel(&f("p"), &[agent("1"), agent("2")], &f("q")).unwrap();
        assert_eq!(pm.model.len(), 3);
        assert!(pm.model.eval("w1", &f("p & ~q")).unwrap());
        assert!(pm.model.eval("w3", &f("q")).unwrap());

        assert_eq!(build_conj_chain_countermodel(&f("p"), &[agent("1")], &f("q")).unwrap().model.len(), 2);

        let pm = build_conj_chain_countermodel(&f("p | q"), &[agent("1"), agent("2")], &f("p")).unwrap();
        assert!(pm.model.eval("w1", &f("q & ~p")).unwrap());

        assert!(matches!(
            build_conj_chain_countermodel(&f("p"), &[agent("1"), agent("2")], &f("p | q")),
            Err(BuildError::PreconditionViolated(_))
        ));
        assert!(matches!(
            build_conj_chain_countermodel(&f("p | q"), &[agent("1")], &f("p")),
            Err(BuildError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn figure3_model() {
        let m = build_figure3_model();
        let g = f("K_1 K_2 L_1 p");
        assert!(m.eval("w1", &g).unwrap());
        assert!(!m.eval("w6", &g).unwrap());
        assert_eq!(m.truth_set(&g), set(&[0, 1]));
    }

    #[test]
    fn glued_builder() {
        let pm = build_glued_countermodel(&[view("K_1 L_2 p"), view("K_3 L_4 q")], &[]).unwrap();
        assert_eq!(pm.model.len(), 7);
        let pm = build_glued_countermodel(&[view("K_1 L_2 p")], &[view("q"), view("L_1 (r | q)")]).unwrap();
        assert_eq!(pm.model.len(), 4);
        assert!(build_glued_countermodel(&[view("K_1 L_2 p"), view("K_1 L_3 q")], &[]).is_err());
        assert!(build_glued_countermodel(&[view("K_1 L_2 p")], &[view("p")]).is_err());
    }
}
