//! Bounded counter-model search.
//!
//! A `Found` report is definitive. `NoneUpToBound` only says that no model
//! inside the bound refutes the property.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use super::enumerate::{Frame, Level};
use crate::formula::{AgentId, Formula, PropId};
use crate::kripke::{is_induced_submodel, KripkeModel, PointedModel};
use crate::semantics::{is_connected, truth, Node, Structure};
use crate::worldset::{WorldSet, MAX_WORLDS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "strategy", rename_all = "kebab-case")]
pub enum Strategy {
    /// Every model up to the world bound, in canonical order.
    Exhaustive,
    /// Path-shaped models: consecutive worlds share exactly one agent's block.
    Chain,
    /// Seeded random tree-shaped models.
    RandomTree { samples: u64, seed: u64 },
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Exhaustive => "exhaustive",
            Strategy::Chain => "chain",
            Strategy::RandomTree { .. } => "random-tree",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_worlds: usize,
    pub agents: Vec<AgentId>,
    pub strategy: Strategy,
}

impl SearchBounds {
    pub fn new(max_worlds: usize, agents: Vec<AgentId>, strategy: Strategy) -> Result<Self, SearchError> {
        if max_worlds == 0 || max_worlds > MAX_WORLDS {
            return Err(SearchError::InvalidBounds(format!("max_worlds must be in 1..={MAX_WORLDS}")));
        }
        if agents.is_empty() {
            return Err(SearchError::InvalidBounds("at least one agent is required".into()));
        }
        if let Strategy::RandomTree { samples: 0, .. } = strategy {
            return Err(SearchError::InvalidBounds("random-tree needs at least one sample".into()));
        }
        Ok(SearchBounds { max_worlds, agents, strategy })
    }

    pub fn exhaustive(max_worlds: usize, agents: &[&str]) -> Result<Self, SearchError> {
        Self::new(max_worlds, parse_agents(agents)?, Strategy::Exhaustive)
    }

    pub fn chain(max_worlds: usize, agents: &[&str]) -> Result<Self, SearchError> {
        Self::new(max_worlds, parse_agents(agents)?, Strategy::Chain)
    }

    pub fn random_tree(max_worlds: usize, agents: &[&str], samples: u64, seed: u64) -> Result<Self, SearchError> {
        Self::new(max_worlds, parse_agents(agents)?, Strategy::RandomTree { samples, seed })
    }
}

fn parse_agents(names: &[&str]) -> Result<Vec<AgentId>, SearchError> {
    names
        .iter()
        .map(|n| AgentId::new(*n).map_err(|e| SearchError::InvalidBounds(e.to_string())))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("invalid search bounds: {0}")]
    InvalidBounds(String),
    #[error("formula mentions agents outside the search bounds: {}", names(.0))]
    AgentsNotCovered(Vec<AgentId>),
    #[error("the {0} strategy does not support announcements")]
    AnnouncementsUnsupported(&'static str),
    #[error("search space at {worlds} worlds does not fit in 64 bits")]
    SpaceTooLarge { worlds: usize },
    #[error("internal defect: witness failed re-verification: {0}")]
    CorruptWitness(String),
}

fn names(agents: &[AgentId]) -> String {
    agents.iter().map(|a| a.as_str()).collect::<Vec<_>>().join(", ")
}

/// The property a search tries to refute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    /// `[φ]φ` is valid.
    Success,
    /// `[φ]¬φ` is valid.
    SelfRefutation,
    /// Truth at a world survives every extension to a larger model.
    SupermodelPreservation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// Pointed counter-model. For supermodel preservation the formula holds
    /// in `witness` and fails at the same world in `supermodel`.
    Found { witness: PointedModel, supermodel: Option<KripkeModel> },
    NoneUpToBound,
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub formula: Formula,
    pub property: Property,
    pub bounds: SearchBounds,
    pub outcome: Outcome,
    /// Position of the witness in the scan order, or the number of models
    /// scanned when nothing was found.
    pub models_examined: u64,
    pub elapsed: Duration,
}

impl SearchReport {
    pub fn found(&self) -> bool {
        matches!(self.outcome, Outcome::Found { .. })
    }

    pub fn witness(&self) -> Option<&PointedModel> {
        match &self.outcome {
            Outcome::Found { witness, .. } => Some(witness),
            Outcome::NoneUpToBound => None,
        }
    }

    /// JSON form. `stable` drops the elapsed time so identical runs compare
    /// byte for byte.
    pub fn to_json(&self, stable: bool) -> Value {
        let (samples, seed) = match self.bounds.strategy {
            Strategy::RandomTree { samples, seed } => (json!(samples), json!(seed)),
            _ => (Value::Null, Value::Null),
        };
        let mut out = json!({
            "formula": self.formula.to_string(),
            "property": self.property,
            "strategy": self.bounds.strategy.name(),
            "samples": samples,
            "seed": seed,
            "max_worlds": self.bounds.max_worlds,
            "agents": self.bounds.agents,
            "models_examined": self.models_examined,
        });
        match &self.outcome {
            Outcome::Found { witness, supermodel } => {
                out["outcome"] = json!("found");
                out["witness"] = serde_json::to_value(witness.to_raw()).unwrap();
                if let Some(sup) = supermodel {
                    out["supermodel"] = serde_json::to_value(sup.to_raw(Some(witness_index_in(sup, witness)))).unwrap();
                }
            }
            Outcome::NoneUpToBound => {
                out["outcome"] = json!("none_up_to_bound");
                out["note"] = json!("no counter-model within the bound; evidence, not proof");
            }
        }
        if !stable {
            out["elapsed_ms"] = json!(self.elapsed.as_secs_f64() * 1e3);
        }
        out
    }
}

fn witness_index_in(sup: &KripkeModel, witness: &PointedModel) -> usize {
    sup.world_index(witness.point_name()).unwrap_or(0)
}

/// Success on one model: every world satisfying `f` still satisfies it after `f` is announced.
pub fn is_successful_on(m: &KripkeModel, f: &Formula) -> bool {
    success_failures(m, f).is_empty()
}

/// Worlds where `f` holds but fails after its own announcement.
pub fn success_failures(m: &KripkeModel, f: &Formula) -> WorldSet {
    let before = m.truth_set(f);
    let Ok(after) = m.restrict(f) else {
        return WorldSet::EMPTY;
    };
    before.iter().filter(|&w| !after.eval(m.world_name(w), f).unwrap()).collect()
}

/// Self-refutation on one model: `f` is false wherever it was true, once announced.
pub fn is_self_refuting_on(m: &KripkeModel, f: &Formula) -> bool {
    selfref_failures(m, f).is_empty()
}

pub fn selfref_failures(m: &KripkeModel, f: &Formula) -> WorldSet {
    let before = m.truth_set(f);
    let Ok(after) = m.restrict(f) else {
        return WorldSet::EMPTY;
    };
    before.iter().filter(|&w| after.eval(m.world_name(w), f).unwrap()).collect()
}

pub const MAX_SUPER_SUCCESS_WORLDS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{worlds} worlds exceed the limit of {MAX_SUPER_SUCCESS_WORLDS} for intermediate-submodel enumeration")]
pub struct TooLarge {
    pub worlds: usize,
}

/// Super-success on one model: `f` survives in every induced submodel
/// between `M|f` and `M` at every world where it held.
pub fn is_super_successful_on(m: &KripkeModel, f: &Formula) -> Result<bool, TooLarge> {
    if m.len() > MAX_SUPER_SUCCESS_WORLDS {
        return Err(TooLarge { worlds: m.len() });
    }
    let node = m.compile(f);
    let all = m.universe();
    let core = truth(m, &node, all);
    let free: Vec<usize> = all.minus(core).iter().collect();
    for bits in 0u32..1 << free.len() {
        let mut domain = core;
        for (i, &w) in free.iter().enumerate() {
            if bits >> i & 1 == 1 {
                domain.insert(w);
            }
        }
        if !core.is_subset(truth(m, &node, domain)) {
            return Ok(false);
        }
    }
    Ok(true)
}

struct Prepared {
    node: Node,
    agents: Vec<AgentId>,
    props: Vec<PropId>,
}

fn prepare(f: &Formula, bounds: &SearchBounds) -> Result<Prepared, SearchError> {
    let allowed: BTreeSet<&AgentId> = bounds.agents.iter().collect();
    let agents: Vec<AgentId> = f.agents().into_iter().collect();
    let missing: Vec<AgentId> = agents.iter().filter(|a| !allowed.contains(a)).cloned().collect();
    if !missing.is_empty() {
        return Err(SearchError::AgentsNotCovered(missing));
    }
    if !matches!(bounds.strategy, Strategy::Exhaustive) && !f.is_announcement_free() {
        return Err(SearchError::AnnouncementsUnsupported(bounds.strategy.name()));
    }
    let props: Vec<PropId> = f.props().into_iter().collect();
    let node = Node::compile(
        f,
        &|a| agents.iter().position(|x| x == a),
        &|p| props.iter().position(|x| x == p),
    );
    Ok(Prepared { node, agents, props })
}

/// First world (lowest index) at which the model refutes `property`.
fn refuting_world<S: Structure>(s: &S, node: &Node, property: Property) -> Option<usize> {
    let all = s.universe();
    let before = truth(s, node, all);
    if before.is_empty() {
        return None;
    }
    let after = truth(s, node, before);
    match property {
        Property::Success => before.minus(after).first(),
        Property::SelfRefutation => before.intersect(after).first(),
        Property::SupermodelPreservation => unreachable!("handled by the subset scan"),
    }
}

/// Re-check a witness through the public model API.
fn verify(witness: &PointedModel, f: &Formula, property: Property) -> Result<(), SearchError> {
    let m = &witness.model;
    let w = witness.point;
    let holds = m.holds_at(w, f);
    let after = m.restrict(f).ok();
    let survives = after.as_ref().is_some_and(|a| a.eval(m.world_name(w), f).unwrap_or(false));
    let ok = match property {
        Property::Success => holds && !survives,
        Property::SelfRefutation => holds && survives,
        Property::SupermodelPreservation => unreachable!(),
    };
    if ok {
        Ok(())
    } else {
        Err(SearchError::CorruptWitness(format!("{} at {}", f, witness.point_name())))
    }
}

fn verify_super(base: &PointedModel, sup: &KripkeModel, f: &Formula) -> Result<(), SearchError> {
    let ok = is_induced_submodel(&base.model, sup)
        && base.model.holds_at(base.point, f)
        && !sup.eval(base.point_name(), f).unwrap_or(true);
    if ok {
        Ok(())
    } else {
        Err(SearchError::CorruptWitness(format!("{} at {}", f, base.point_name())))
    }
}

struct Hit {
    witness: PointedModel,
    supermodel: Option<KripkeModel>,
}

fn exhaustive(p: &Prepared, max_worlds: usize, property: Property) -> Result<(Option<Hit>, u64), SearchError> {
    let mut scanned = 0u64;
    for n in 1..=max_worlds {
        let level = Level::new(n, p.agents.len(), p.props.len());
        let (tuples, vals) = match (level.partition_tuples(), level.valuations(), level.size()) {
            (Some(t), Some(v), Some(_)) => (t, v),
            _ => return Err(SearchError::SpaceTooLarge { worlds: n }),
        };
        let hit = (0..tuples).into_par_iter().find_map_first(|t| {
            let mut frame = level.frame(t);
            // A counter-model that is not connected has a smaller connected
            // one, already covered at a lower level.
            if n > 1 && !is_connected(&frame) {
                return None;
            }
            for v in 0..vals {
                frame.set_valuation(n, v);
                if let Some(w) = refuting_world(&frame, &p.node, property) {
                    return Some((t * vals + v, frame.to_model(&p.agents, &p.props), w));
                }
            }
            None
        });
        if let Some((pos, model, point)) = hit {
            return Ok((
                Some(Hit { witness: PointedModel { model, point }, supermodel: None }),
                scanned + pos + 1,
            ));
        }
        scanned += tuples * vals;
    }
    Ok((None, scanned))
}

fn chain_blocks(n: usize, labels: &[usize], agents: usize) -> Vec<Vec<WorldSet>> {
    let mut out = vec![Vec::new(); agents];
    for (a, blocks) in out.iter_mut().enumerate() {
        let mut cur = WorldSet::singleton(0);
        for w in 1..n {
            if labels[w - 1] == a {
                cur.insert(w);
            } else {
                blocks.push(cur);
                cur = WorldSet::singleton(w);
            }
        }
        blocks.push(cur);
    }
    out
}

fn chain(p: &Prepared, max_worlds: usize, property: Property) -> Result<(Option<Hit>, u64), SearchError> {
    let k = p.agents.len();
    let mut scanned = 0u64;
    for n in 1..=max_worlds {
        if n > 1 && k == 0 {
            break;
        }
        let bits = n * p.props.len();
        if bits >= 64 {
            return Err(SearchError::SpaceTooLarge { worlds: n });
        }
        let vals = 1u64 << bits;
        let labelings = (k as u128).pow((n - 1) as u32);
        let labelings = u64::try_from(labelings).map_err(|_| SearchError::SpaceTooLarge { worlds: n })?;
        labelings.checked_mul(vals).ok_or(SearchError::SpaceTooLarge { worlds: n })?;
        let hit = (0..labelings).into_par_iter().find_map_first(|code| {
            let mut labels = vec![0usize; n.saturating_sub(1)];
            let mut c = code;
            for slot in labels.iter_mut().rev() {
                *slot = (c % k as u64) as usize;
                c /= k as u64;
            }
            let blocks = chain_blocks(n, &labels, k);
            let mut frame = Frame {
                universe: WorldSet::full(n),
                blocks: blocks.iter().map(|b| &b[..]).collect(),
                props: vec![WorldSet::EMPTY; p.props.len()],
            };
            for v in 0..vals {
                frame.set_valuation(n, v);
                if let Some(w) = refuting_world(&frame, &p.node, property) {
                    return Some((code * vals + v, frame.to_model(&p.agents, &p.props), w));
                }
            }
            None
        });
        if let Some((pos, model, point)) = hit {
            let position = scanned + pos + 1;
            return Ok((Some(Hit { witness: PointedModel { model, point }, supermodel: None }), position));
        }
        scanned += labelings * vals;
    }
    Ok((None, scanned))
}

/// Random tree with at most `max_worlds` worlds. Edges carry one agent;
/// an agent's blocks are the components of its edges.
fn random_tree(rng: &mut ChaCha8Rng, max_worlds: usize, agents: usize, props: usize) -> (Vec<Vec<WorldSet>>, Vec<WorldSet>) {
    let n = if agents == 0 { 1 } else { rng.gen_range(1..=max_worlds) };
    let mut label = vec![usize::MAX; n];
    let mut parent = vec![0usize; n];
    for w in 1..n {
        parent[w] = rng.gen_range(0..w);
        label[w] = rng.gen_range(0..agents);
    }
    let mut blocks = Vec::with_capacity(agents);
    for a in 0..agents {
        // Union-find over the edges labelled `a`.
        let mut root: Vec<usize> = (0..n).collect();
        fn find(root: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while root[r] != r {
                r = root[r];
            }
            root[x] = r;
            r
        }
        for w in 1..n {
            if label[w] == a {
                let (x, y) = (find(&mut root, w), find(&mut root, parent[w]));
                root[x.max(y)] = x.min(y);
            }
        }
        let mut cells = vec![WorldSet::EMPTY; n];
        for w in 0..n {
            let r = find(&mut root, w);
            cells[r].insert(w);
        }
        cells.retain(|c| !c.is_empty());
        blocks.push(cells);
    }
    let valuation = (0..props)
        .map(|_| WorldSet::from_bits(rng.gen::<u64>() & WorldSet::full(n).bits()))
        .collect();
    (blocks, valuation)
}

fn sampled(p: &Prepared, max_worlds: usize, samples: u64, seed: u64, property: Property) -> (Option<Hit>, u64) {
    let hit = (0..samples).into_par_iter().find_map_first(|i| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i);
        let (blocks, valuation) = random_tree(&mut rng, max_worlds, p.agents.len(), p.props.len());
        let n = blocks.first().map_or(1, |b| b.iter().map(|c| c.len()).sum());
        let frame = Frame {
            universe: WorldSet::full(n),
            blocks: blocks.iter().map(|b| &b[..]).collect(),
            props: valuation,
        };
        refuting_world(&frame, &p.node, property).map(|w| (i, frame.to_model(&p.agents, &p.props), w))
    });
    match hit {
        Some((i, model, point)) => {
            (Some(Hit { witness: PointedModel { model, point }, supermodel: None }), i + 1)
        }
        None => (None, samples),
    }
}

fn run(f: &Formula, bounds: &SearchBounds, property: Property) -> Result<SearchReport, SearchError> {
    let start = Instant::now();
    let p = prepare(f, bounds)?;
    let (hit, examined) = match bounds.strategy {
        Strategy::Exhaustive => exhaustive(&p, bounds.max_worlds, property)?,
        Strategy::Chain => chain(&p, bounds.max_worlds, property)?,
        Strategy::RandomTree { samples, seed } => sampled(&p, bounds.max_worlds, samples, seed, property),
    };
    let outcome = match hit {
        Some(Hit { witness, supermodel, .. }) => {
            match &supermodel {
                Some(sup) => verify_super(&witness, sup, f)?,
                None => verify(&witness, f, property)?,
            }
            Outcome::Found { witness, supermodel }
        }
        None => Outcome::NoneUpToBound,
    };
    Ok(SearchReport {
        formula: f.clone(),
        property,
        bounds: bounds.clone(),
        outcome,
        models_examined: examined,
        elapsed: start.elapsed(),
    })
}

/// Look for a pointed model where `f` holds but fails after being announced.
pub fn find_success_counterexample(f: &Formula, bounds: &SearchBounds) -> Result<SearchReport, SearchError> {
    run(f, bounds, Property::Success)
}

/// Look for a pointed model where `f` holds and still holds after being announced.
pub fn find_selfref_counterexample(f: &Formula, bounds: &SearchBounds) -> Result<SearchReport, SearchError> {
    run(f, bounds, Property::SelfRefutation)
}

/// Look for `m ⊆ m'` (induced) and a world where `f` holds in `m` but not in `m'`.
///
/// Larger models `m'` are enumerated exhaustively up to `max_worlds`; the
/// strategy field is ignored. Smaller models range over every non-empty
/// proper subset of `m'`'s worlds.
pub fn check_supermodel_preservation(f: &Formula, bounds: &SearchBounds) -> Result<SearchReport, SearchError> {
    let start = Instant::now();
    let exhaustive_bounds = SearchBounds { strategy: Strategy::Exhaustive, ..bounds.clone() };
    let p = prepare(f, &exhaustive_bounds)?;
    let mut scanned = 0u64;
    let mut found = None;
    for n in 1..=bounds.max_worlds {
        let level = Level::new(n, p.agents.len(), p.props.len());
        let (tuples, vals) = match (level.partition_tuples(), level.valuations(), level.size()) {
            (Some(t), Some(v), Some(_)) => (t, v),
            _ => return Err(SearchError::SpaceTooLarge { worlds: n }),
        };
        let hit = (0..tuples).into_par_iter().find_map_first(|t| {
            let mut frame = level.frame(t);
            let all = frame.universe;
            for v in 0..vals {
                frame.set_valuation(n, v);
                let big = truth(&frame, &p.node, all);
                for bits in 1..all.bits() {
                    let sub = WorldSet::from_bits(bits);
                    let lost = truth(&frame, &p.node, sub).minus(big);
                    if let Some(w) = lost.first() {
                        return Some((t * vals + v, frame.to_model(&p.agents, &p.props), sub, w));
                    }
                }
            }
            None
        });
        if let Some((pos, sup, sub, w)) = hit {
            let base = sup.induced(sub);
            let point = base.world_index(sup.world_name(w)).unwrap();
            scanned += pos + 1;
            found = Some((PointedModel { model: base, point }, sup));
            break;
        }
        scanned += tuples * vals;
    }
    let outcome = match found {
        Some((witness, sup)) => {
            verify_super(&witness, &sup, f)?;
            Outcome::Found { witness, supermodel: Some(sup) }
        }
        None => Outcome::NoneUpToBound,
    };
    Ok(SearchReport {
        formula: f.clone(),
        property: Property::SupermodelPreservation,
        bounds: exhaustive_bounds,
        outcome,
        models_examined: scanned,
        elapsed: start.elapsed(),
    })
}
