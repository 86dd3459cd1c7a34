#![allow(dead_code)]

use std::collections::BTreeMap;

use palkit::formula::{AgentId, Formula, PropId};
use palkit::kripke::{KripkeModel, RawModel};
use proptest::prelude::*;

pub fn agent(s: &str) -> AgentId {
    AgentId::new(s).unwrap()
}

pub fn prop(s: &str) -> PropId {
    PropId::new(s).unwrap()
}

pub fn f(s: &str) -> Formula {
    palkit::parse(s).unwrap()
}

pub fn agent_names(f: &Formula) -> Vec<String> {
    f.agents().iter().map(|a| a.to_string()).collect()
}

pub const AGENTS: [&str; 3] = ["1", "2", "3"];
pub const ATOMS: [&str; 3] = ["p", "q", "r"];

/// Formulas over the first `agents` agents and `atoms` atoms.
pub fn formula(agents: usize, atoms: usize, depth: u32, dynamic: bool) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        1 => Just(Formula::True),
        1 => Just(Formula::False),
        6 => (0..atoms).prop_map(|i| Formula::atom(prop(ATOMS[i]))),
    ];
    leaf.prop_recursive(depth, 48, 2, move |inner| {
        let a = 0..agents;
        let mut options: Vec<BoxedStrategy<Formula>> = vec![
            inner.clone().prop_map(Formula::not).boxed(),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Formula::and(x, y)).boxed(),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Formula::or(x, y)).boxed(),
            (a.clone(), inner.clone()).prop_map(|(i, x)| Formula::know(agent(AGENTS[i]), x)).boxed(),
            (a, inner.clone()).prop_map(|(i, x)| Formula::poss(agent(AGENTS[i]), x)).boxed(),
        ];
        if dynamic {
            options.push(inner.clone().prop_map(Formula::common).boxed());
            options.push((inner.clone(), inner).prop_map(|(x, y)| Formula::announce(x, y)).boxed());
        }
        proptest::strategy::Union::new(options)
    })
}

/// Universal-fragment formulas: literals, and, or, K, `[¬φ]ψ`.
pub fn universal(agents: usize, atoms: usize, depth: u32) -> impl Strategy<Value = Formula> {
    let leaf = (0..atoms, any::<bool>()).prop_map(|(i, neg)| {
        let p = Formula::atom(prop(ATOMS[i]));
        if neg {
            Formula::not(p)
        } else {
            p
        }
    });
    leaf.prop_recursive(depth, 32, 2, move |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Formula::and(x, y)),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Formula::or(x, y)),
            (0..agents, inner.clone()).prop_map(|(i, x)| Formula::know(agent(AGENTS[i]), x)),
            (inner.clone(), inner).prop_map(|(x, y)| Formula::announce(Formula::not(x), y)),
        ]
    })
}

/// Random S5 model with up to `max_worlds` worlds over the first `agents`
/// agents and `atoms` atoms.
pub fn model(max_worlds: usize, agents: usize, atoms: usize) -> impl Strategy<Value = KripkeModel> {
    (1..=max_worlds)
        .prop_flat_map(move |n| {
            (
                Just(n),
                proptest::collection::vec(proptest::collection::vec(0..n, n), agents),
                proptest::collection::vec(0u64..1 << n, atoms),
            )
        })
        .prop_map(move |(n, labels, vals)| {
            let worlds: Vec<String> = (1..=n).map(|i| format!("w{i}")).collect();
            let mut agents_map = BTreeMap::new();
            for (a, labels) in labels.iter().enumerate() {
                let mut blocks: BTreeMap<usize, Vec<String>> = BTreeMap::new();
                for (w, &l) in labels.iter().enumerate() {
                    blocks.entry(l).or_default().push(worlds[w].clone());
                }
                agents_map.insert(AGENTS[a].to_string(), blocks.into_values().collect());
            }
            let valuation = vals
                .iter()
                .enumerate()
                .map(|(i, &bits)| {
                    let ws = (0..n).filter(|w| bits >> w & 1 == 1).map(|w| worlds[w].clone()).collect();
                    (ATOMS[i].to_string(), ws)
                })
                .collect();
            let raw = RawModel { worlds, agents: agents_map, valuation, designated: None };
            KripkeModel::from_raw(&raw).unwrap().0
        })
}

pub fn all_models(max_worlds: usize, agents: usize, atoms: usize) -> Vec<KripkeModel> {
    let ags: Vec<AgentId> = AGENTS[..agents].iter().map(|a| agent(a)).collect();
    let ps: Vec<PropId> = ATOMS[..atoms].iter().map(|p| prop(p)).collect();
    (1..=max_worlds).flat_map(|n| palkit::oracle::enumerate_models(n, &ags, &ps)).collect()
}
