//! Finite S5 models: validation, truth evaluation, announcement updates and
//! the induced-submodel relation.
//!
//! Each agent's accessibility relation is stored as a partition of the worlds.
//! Agents a formula mentions but the model does not list behave as the
//! identity relation, and atoms missing from the valuation are false
//! everywhere.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{AgentId, Formula, PropId};
use crate::semantics::{truth, Node, Structure};
use crate::worldset::{WorldSet, MAX_WORLDS};

/// Model file contents, before validation.
///
/// ```json
/// {"worlds": ["w1", "w2"], "agents": {"a": [["w1", "w2"]]},
///  "valuation": {"p": ["w1"]}, "designated": "w1"}
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawModel {
    pub worlds: Vec<String>,
    #[serde(default)]
    pub agents: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default)]
    pub valuation: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub designated: Option<String>,
}

impl RawModel {
    /// Parse the JSON model format. Worlds an agent's partition leaves out
    /// become singleton blocks.
    pub fn from_json(text: &str) -> Result<RawModel, ModelError> {
        let mut raw: RawModel =
            serde_json::from_str(text).map_err(|e| ModelError::Json(e.to_string()))?;
        raw.add_missing_singletons();
        Ok(raw)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serialises")
    }

    /// Give every world not listed in an agent's blocks its own block.
    pub fn add_missing_singletons(&mut self) {
        for blocks in self.agents.values_mut() {
            let listed: BTreeSet<&String> = blocks.iter().flatten().collect();
            let missing: Vec<Vec<String>> = self
                .worlds
                .iter()
                .filter(|w| !listed.contains(w))
                .map(|w| vec![w.clone()])
                .collect();
            blocks.extend(missing);
        }
    }
}

/// One broken model invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    TooManyWorlds { count: usize },
    EmptyWorldName,
    DuplicateWorld { world: String },
    BadAgentName { agent: String },
    BadPropName { prop: String },
    EmptyBlock { agent: String },
    UnknownWorldInPartition { agent: String, world: String },
    WorldInSeveralBlocks { agent: String, world: String },
    Uncovered { agent: String, world: String },
    UnknownWorldInValuation { prop: String, world: String },
    UnknownDesignated { world: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooManyWorlds { count } => {
                write!(f, "{count} worlds exceed the limit of {MAX_WORLDS}")
            }
            Violation::EmptyWorldName => write!(f, "empty world name"),
            Violation::DuplicateWorld { world } => write!(f, "world {world:?} listed twice"),
            Violation::BadAgentName { agent } => write!(f, "invalid agent name {agent:?}"),
            Violation::BadPropName { prop } => write!(f, "invalid proposition name {prop:?}"),
            Violation::EmptyBlock { agent } => write!(f, "agent {agent}: empty block"),
            Violation::UnknownWorldInPartition { agent, world } => {
                write!(f, "agent {agent}: unknown world {world:?}")
            }
            Violation::WorldInSeveralBlocks { agent, world } => {
                write!(f, "agent {agent}: world {world:?} appears in more than one block")
            }
            Violation::Uncovered { agent, world } => {
                write!(f, "agent {agent}: world {world:?} is in no block")
            }
            Violation::UnknownWorldInValuation { prop, world } => {
                write!(f, "valuation of {prop}: unknown world {world:?}")
            }
            Violation::UnknownDesignated { world } => {
                write!(f, "designated world {world:?} does not exist")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("malformed model file: {0}")]
    Json(String),
    #[error("invalid model: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
}

fn join_violations(vs: &[Violation]) -> String {
    vs.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KripkeError {
    #[error("unknown world {0:?}")]
    UnknownWorld(String),
    #[error("the announcement leaves no world")]
    EmptyModel,
}

/// Check every model invariant, collecting all violations.
pub fn validate(raw: &RawModel) -> Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    if raw.worlds.len() > MAX_WORLDS {
        out.push(Violation::TooManyWorlds { count: raw.worlds.len() });
    }
    let mut worlds = BTreeSet::new();
    for w in &raw.worlds {
        if w.is_empty() {
            out.push(Violation::EmptyWorldName);
        }
        if !worlds.insert(w.as_str()) {
            out.push(Violation::DuplicateWorld { world: w.clone() });
        }
    }
    for (agent, blocks) in &raw.agents {
        if AgentId::new(agent.as_str()).is_err() {
            out.push(Violation::BadAgentName { agent: agent.clone() });
        }
        let mut seen = BTreeSet::new();
        for block in blocks {
            if block.is_empty() {
                out.push(Violation::EmptyBlock { agent: agent.clone() });
            }
            for w in block {
                if !worlds.contains(w.as_str()) {
                    out.push(Violation::UnknownWorldInPartition { agent: agent.clone(), world: w.clone() });
                } else if !seen.insert(w.as_str()) {
                    out.push(Violation::WorldInSeveralBlocks { agent: agent.clone(), world: w.clone() });
                }
            }
        }
        for w in &raw.worlds {
            if !seen.contains(w.as_str()) && worlds.contains(w.as_str()) {
                out.push(Violation::Uncovered { agent: agent.clone(), world: w.clone() });
            }
        }
    }
    for (prop, ws) in &raw.valuation {
        if PropId::new(prop.as_str()).is_err() {
            out.push(Violation::BadPropName { prop: prop.clone() });
        }
        for w in ws {
            if !worlds.contains(w.as_str()) {
                out.push(Violation::UnknownWorldInValuation { prop: prop.clone(), world: w.clone() });
            }
        }
    }
    if let Some(d) = &raw.designated {
        if !worlds.contains(d.as_str()) {
            out.push(Violation::UnknownDesignated { world: d.clone() });
        }
    }
    out.dedup();
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// A validated finite S5 model.
///
/// Blocks are kept sorted by their lowest world, so structurally equal
/// partitions compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeModel {
    worlds: Vec<String>,
    agent_ids: Vec<AgentId>,
    partitions: Vec<Vec<WorldSet>>,
    props: Vec<PropId>,
    valuation: Vec<WorldSet>,
}

/// A model together with a designated world (by index).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedModel {
    pub model: KripkeModel,
    pub point: usize,
}

impl PointedModel {
    pub fn point_name(&self) -> &str {
        self.model.world_name(self.point)
    }

    pub fn to_raw(&self) -> RawModel {
        self.model.to_raw(Some(self.point))
    }
}

fn sort_blocks(mut blocks: Vec<WorldSet>, universe: WorldSet) -> Vec<WorldSet> {
    blocks.retain(|b| !b.is_empty());
    let covered = blocks.iter().fold(WorldSet::EMPTY, |acc, b| acc.union(*b));
    blocks.extend(universe.minus(covered).iter().map(WorldSet::singleton));
    blocks.sort_by_key(|b| b.first());
    blocks
}

impl KripkeModel {
    /// Validate and build. Returns the designated world index if one is given.
    pub fn from_raw(raw: &RawModel) -> Result<(KripkeModel, Option<usize>), Vec<Violation>> {
        validate(raw)?;
        let index: BTreeMap<&str, usize> =
            raw.worlds.iter().enumerate().map(|(i, w)| (w.as_str(), i)).collect();
        let set = |ws: &[String]| ws.iter().map(|w| index[w.as_str()]).collect::<WorldSet>();
        let agents = raw
            .agents
            .iter()
            .map(|(a, blocks)| (AgentId::new(a.as_str()).unwrap(), blocks.iter().map(|b| set(b)).collect()))
            .collect();
        let valuation = raw
            .valuation
            .iter()
            .map(|(p, ws)| (PropId::new(p.as_str()).unwrap(), set(ws)))
            .collect();
        let model = KripkeModel::from_parts(raw.worlds.clone(), agents, valuation);
        let point = raw.designated.as_ref().map(|d| index[d.as_str()]);
        Ok((model, point))
    }

    /// Parse and validate a JSON model file.
    pub fn from_json(text: &str) -> Result<(KripkeModel, Option<usize>), ModelError> {
        let raw = RawModel::from_json(text)?;
        KripkeModel::from_raw(&raw).map_err(ModelError::Invalid)
    }

    /// Build from index-level data. Worlds missing from an agent's blocks
    /// become singletons. Callers guarantee blocks are disjoint and in range.
    pub(crate) fn from_parts(
        worlds: Vec<String>,
        agents: BTreeMap<AgentId, Vec<WorldSet>>,
        valuation: BTreeMap<PropId, WorldSet>,
    ) -> KripkeModel {
        let universe = WorldSet::full(worlds.len());
        let (agent_ids, partitions) = agents
            .into_iter()
            .map(|(a, blocks)| (a, sort_blocks(blocks, universe)))
            .unzip();
        let (props, valuation) = valuation.into_iter().map(|(p, s)| (p, s.intersect(universe))).unzip();
        let m = KripkeModel { worlds, agent_ids, partitions, props, valuation };
        debug_assert!(validate(&m.to_raw(None)).is_ok());
        m
    }

    /// Default world names `w1..wn`.
    pub fn numbered_worlds(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("w{i}")).collect()
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn len(&self) -> usize {
        self.worlds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.worlds.is_empty()
    }

    pub fn universe(&self) -> WorldSet {
        WorldSet::full(self.worlds.len())
    }

    pub fn world_name(&self, w: usize) -> &str {
        &self.worlds[w]
    }

    pub fn world_index(&self, name: &str) -> Result<usize, KripkeError> {
        self.worlds
            .iter()
            .position(|w| w == name)
            .ok_or_else(|| KripkeError::UnknownWorld(name.to_string()))
    }

    pub fn agents(&self) -> &[AgentId] {
        &self.agent_ids
    }

    /// Blocks of `agent`; all singletons when the model does not list it.
    pub fn blocks(&self, agent: &AgentId) -> Vec<WorldSet> {
        match self.agent_ids.iter().position(|a| a == agent) {
            Some(i) => self.partitions[i].clone(),
            None => self.universe().iter().map(WorldSet::singleton).collect(),
        }
    }

    pub fn props(&self) -> &[PropId] {
        &self.props
    }

    /// Worlds where `p` holds.
    pub fn valuation(&self, p: &PropId) -> WorldSet {
        self.props.iter().position(|q| q == p).map_or(WorldSet::EMPTY, |i| self.valuation[i])
    }

    pub(crate) fn compile(&self, f: &Formula) -> Node {
        Node::compile(
            f,
            &|a| self.agent_ids.iter().position(|x| x == a),
            &|p| self.props.iter().position(|x| x == p),
        )
    }

    /// All worlds where `f` is true.
    pub fn truth_set(&self, f: &Formula) -> WorldSet {
        truth(self, &self.compile(f), self.universe())
    }

    /// Truth of `f` at the world with index `w`.
    pub fn holds_at(&self, w: usize, f: &Formula) -> bool {
        self.truth_set(f).contains(w)
    }

    /// Truth of `f` at the named world.
    pub fn eval(&self, world: &str, f: &Formula) -> Result<bool, KripkeError> {
        Ok(self.holds_at(self.world_index(world)?, f))
    }

    /// Submodel induced on `keep`, with worlds renumbered in their original order.
    pub fn induced(&self, keep: WorldSet) -> KripkeModel {
        let keep = keep.intersect(self.universe());
        let old: Vec<usize> = keep.iter().collect();
        let remap = |s: WorldSet| -> WorldSet {
            old.iter().enumerate().filter(|(_, &o)| s.contains(o)).map(|(n, _)| n).collect()
        };
        let universe = WorldSet::full(old.len());
        let partitions = self
            .partitions
            .iter()
            .map(|blocks| sort_blocks(blocks.iter().map(|&b| remap(b)).collect(), universe))
            .collect();
        KripkeModel {
            worlds: old.iter().map(|&o| self.worlds[o].clone()).collect(),
            agent_ids: self.agent_ids.clone(),
            partitions,
            props: self.props.clone(),
            valuation: self.valuation.iter().map(|&s| remap(s)).collect(),
        }
    }

    /// `M|f`: the submodel induced on the worlds where `f` holds.
    pub fn restrict(&self, f: &Formula) -> Result<KripkeModel, KripkeError> {
        let keep = self.truth_set(f);
        if keep.is_empty() {
            return Err(KripkeError::EmptyModel);
        }
        Ok(self.induced(keep))
    }

    /// Serialise with every block listed, singletons included.
    pub fn to_raw(&self, designated: Option<usize>) -> RawModel {
        let names = |s: WorldSet| s.iter().map(|w| self.worlds[w].clone()).collect::<Vec<_>>();
        RawModel {
            worlds: self.worlds.clone(),
            agents: self
                .agent_ids
                .iter()
                .zip(&self.partitions)
                .map(|(a, blocks)| {
                    (a.to_string(), blocks.iter().map(|&b| names(b)).collect())
                })
                .collect(),
            valuation: self.props.iter().zip(&self.valuation).map(|(p, &s)| (p.to_string(), names(s))).collect(),
            designated: designated.map(|w| self.worlds[w].clone()),
        }
    }

    pub fn to_json(&self, designated: Option<usize>) -> String {
        self.to_raw(designated).to_json()
    }
}

impl Structure for KripkeModel {
    fn universe(&self) -> WorldSet {
        KripkeModel::universe(self)
    }

    fn agent_count(&self) -> usize {
        self.partitions.len()
    }

    fn blocks(&self, a: usize) -> &[WorldSet] {
        &self.partitions[a]
    }

    fn prop(&self, p: usize) -> WorldSet {
        self.valuation[p]
    }
}

/// Whether `small` is the submodel of `big` induced on `small`'s worlds,
/// matching worlds by name.
pub fn is_induced_submodel(small: &KripkeModel, big: &KripkeModel) -> bool {
    let Ok(map) = small.worlds.iter().map(|w| big.world_index(w)).collect::<Result<Vec<_>, _>>() else {
        return false;
    };
    let image: WorldSet = map.iter().copied().collect();
    let lift = |s: WorldSet| -> WorldSet { s.iter().map(|w| map[w]).collect() };
    let agents: BTreeSet<&AgentId> = small.agent_ids.iter().chain(&big.agent_ids).collect();
    for a in agents {
        let mut mine: Vec<WorldSet> = small.blocks(a).into_iter().map(lift).collect();
        let mut theirs: Vec<WorldSet> = big
            .blocks(a)
            .into_iter()
            .map(|b| b.intersect(image))
            .filter(|b| !b.is_empty())
            .collect();
        mine.sort();
        theirs.sort();
        if mine != theirs {
            return false;
        }
    }
    let props: BTreeSet<&PropId> = small.props.iter().chain(&big.props).collect();
    props
        .into_iter()
        .all(|p| lift(small.valuation(p)) == big.valuation(p).intersect(image))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    pub(crate) const FIGURE1: &str = r#"{
        "worlds": ["w1", "w2"],
        "agents": {"a": [["w1"], ["w2"]], "b": [["w1", "w2"]]},
        "valuation": {"p": ["w2"]},
        "designated": "w2"
    }"#;

    const FIGURE2: &str = r#"{
        "worlds": ["w1", "w2", "w3", "w4"],
        "agents": {"1": [["w1", "w2"], ["w3", "w4"]], "2": [["w2", "w3"]]},
        "valuation": {"p": ["w1", "w3"]}
    }"#;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn model(text: &str) -> KripkeModel {
        KripkeModel::from_json(text).unwrap().0
    }

    fn raw(text: &str) -> RawModel {
        RawModel::from_json(text).unwrap()
    }

    #[test]
    fn figure1_validates() {
        assert_eq!(validate(&raw(FIGURE1)), Ok(()));
        let (_, point) = KripkeModel::from_json(FIGURE1).unwrap();
        assert_eq!(point, Some(1));
    }

    #[test]
    fn violations_are_reported() {
        let mut r = raw(FIGURE1);
        r.agents.insert("a".into(), vec![vec!["w1".into()]]);
        assert_eq!(
            validate(&r),
            Err(vec![Violation::Uncovered { agent: "a".into(), world: "w2".into() }])
        );
        let mut r = raw(FIGURE1);
        r.valuation.insert("q".into(), vec!["w9".into()]);
        assert_eq!(
            validate(&r),
            Err(vec![Violation::UnknownWorldInValuation { prop: "q".into(), world: "w9".into() }])
        );
        let mut r = raw(FIGURE1);
        r.agents.insert("b".into(), vec![vec!["w1".into(), "w2".into()], vec!["w2".into()], vec![]]);
        r.worlds.push("w1".into());
        r.designated = Some("w7".into());
        let errs = validate(&r).unwrap_err();
        assert!(errs.contains(&Violation::WorldInSeveralBlocks { agent: "b".into(), world: "w2".into() }));
        assert!(errs.contains(&Violation::EmptyBlock { agent: "b".into() }));
        assert!(errs.contains(&Violation::DuplicateWorld { world: "w1".into() }));
        assert!(errs.contains(&Violation::UnknownDesignated { world: "w7".into() }));
    }

    #[test]
    fn json_omitted_worlds_are_singletons() {
        let m = model(r#"{"worlds":["x","y","z"],"agents":{"a":[["x","z"]]},"valuation":{}}"#);
        let a = AgentId::new("a").unwrap();
        let blocks: Vec<Vec<usize>> = m.blocks(&a).iter().map(|b| b.iter().collect()).collect();
        assert_eq!(blocks, vec![vec![0, 2], vec![1]]);
        assert!(KripkeModel::from_json("{").is_err());
    }

    #[test]
    fn moore_sentence_on_figure1() {
        let m = model(FIGURE1);
        let moore = f("p & ~K_b p");
        assert!(m.eval("w2", &moore).unwrap());
        assert!(!m.eval("w1", &moore).unwrap());
        assert!(!m.eval("w2", &f("[p & ~K_b p](p & ~K_b p)")).unwrap());
        assert!(m.eval("w1", &f("[p & ~K_b p](p & ~K_b p)")).unwrap());
        let after = m.restrict(&moore).unwrap();
        assert_eq!(after.worlds(), ["w2"]);
        assert_eq!(after.valuation(&PropId::new("p").unwrap()), WorldSet::singleton(0));
        assert!(is_induced_submodel(&after, &m));
        assert_eq!(m.eval("w9", &moore), Err(KripkeError::UnknownWorld("w9".into())));
    }

    #[test]
    fn figure2_announcement() {
        let m = model(FIGURE2);
        let phi = f("K_1 L_2 p");
        assert_eq!(m.truth_set(&phi).iter().collect::<Vec<_>>(), vec![0, 1]);
        assert!(!m.eval("w3", &phi).unwrap());
        let after = m.restrict(&phi).unwrap();
        assert_eq!(after.worlds(), ["w1", "w2"]);
        assert!(!after.eval("w1", &phi).unwrap());
    }

    #[test]
    fn common_knowledge() {
        let m = model(FIGURE2);
        for w in m.worlds() {
            assert!(m.eval(w, &f("C true")).unwrap());
        }
        // The whole chain is one component and p fails at w2.
        assert!(m.truth_set(&f("C (p | ~p)")).len() == 4);
        assert!(m.truth_set(&f("C p")).is_empty());
        let split = model(r#"{"worlds":["u","v","x"],"agents":{"a":[["u","v"]]},"valuation":{"p":["u","v"]}}"#);
        assert_eq!(split.truth_set(&f("C p")).iter().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(split.truth_set(&f("C p")), split.truth_set(&f("K_a p")));
    }

    #[test]
    fn restrict_by_true_is_identity() {
        let m = model(FIGURE2);
        assert_eq!(m.restrict(&Formula::True).unwrap(), m);
        assert_eq!(m.restrict(&f("p & ~p")), Err(KripkeError::EmptyModel));
    }

    #[test]
    fn unknown_agents_are_identity() {
        let m = model(FIGURE2);
        assert_eq!(m.truth_set(&f("K_z p")), m.truth_set(&f("p")));
        assert_eq!(m.truth_set(&f("L_z K_q p")), m.truth_set(&f("p")));
        assert!(m.truth_set(&f("r")).is_empty());
    }

    #[test]
    fn submodel_relation() {
        let m = model(FIGURE2);
        assert!(is_induced_submodel(&m, &m));
        let sub = m.induced([1, 2, 3].into_iter().collect());
        assert!(is_induced_submodel(&sub, &m));
        let mut r = sub.to_raw(None);
        r.agents.insert("1".into(), vec![vec!["w2".into(), "w3".into(), "w4".into()]]);
        let (tampered, _) = KripkeModel::from_raw(&r).unwrap();
        assert!(!is_induced_submodel(&tampered, &m));
        let mut r = sub.to_raw(None);
        r.valuation.insert("p".into(), vec!["w2".into()]);
        let (tampered, _) = KripkeModel::from_raw(&r).unwrap();
        assert!(!is_induced_submodel(&tampered, &m));
        assert!(!is_induced_submodel(&m, &sub));
    }

    #[test]
    fn json_round_trip() {
        let m = model(FIGURE2);
        let (back, point) = KripkeModel::from_json(&m.to_json(Some(2))).unwrap();
        assert_eq!(back, m);
        assert_eq!(point, Some(2));
    }
}
