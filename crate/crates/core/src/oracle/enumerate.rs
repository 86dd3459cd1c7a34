//! Canonical enumeration of all S5 models on a fixed number of worlds.
//!
//! Each agent's partition is a restricted growth string; models are ordered
//! by the tuple of partition indices (first agent most significant), then by
//! the valuation bitmasks (first proposition most significant, world `i` at
//! bit `i`).

use std::collections::BTreeMap;

use crate::formula::{AgentId, PropId};
use crate::kripke::KripkeModel;
use crate::semantics::Structure;
use crate::worldset::WorldSet;

/// Bell number `B(n)`, the number of partitions of an `n`-element set.
pub fn bell(n: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for &x in &row {
            let prev = *next.last().unwrap();
            next.push(prev + x);
        }
        row = next;
    }
    row[0]
}

/// Every restricted growth string of length `n` in lexicographic order.
pub fn restricted_growth_strings(n: usize) -> Vec<Vec<u8>> {
    fn extend(prefix: &mut Vec<u8>, max: u8, n: usize, out: &mut Vec<Vec<u8>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let limit = if prefix.is_empty() { 0 } else { max + 1 };
        for label in 0..=limit {
            prefix.push(label);
            extend(prefix, max.max(label), n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
    } else {
        extend(&mut Vec::with_capacity(n), 0, n, &mut out);
    }
    out
}

/// Blocks of the partition a restricted growth string encodes, ordered by
/// lowest world.
pub fn rgs_blocks(rgs: &[u8]) -> Vec<WorldSet> {
    let count = rgs.iter().map(|&l| l as usize + 1).max().unwrap_or(0);
    let mut blocks = vec![WorldSet::EMPTY; count];
    for (w, &label) in rgs.iter().enumerate() {
        blocks[label as usize].insert(w);
    }
    blocks
}

/// All models of one size over fixed agents and propositions.
pub(crate) struct Level {
    pub n: usize,
    pub agents: usize,
    pub props: usize,
    partitions: Vec<Vec<WorldSet>>,
}

impl Level {
    pub fn new(n: usize, agents: usize, props: usize) -> Level {
        let partitions = if agents == 0 {
            Vec::new()
        } else {
            restricted_growth_strings(n).iter().map(|r| rgs_blocks(r)).collect()
        };
        Level { n, agents, props, partitions }
    }

    pub fn partition_tuples(&self) -> Option<u64> {
        u64::try_from((self.partitions.len() as u128).checked_pow(self.agents as u32)?).ok()
    }

    pub fn valuations(&self) -> Option<u64> {
        let bits = self.n * self.props;
        (bits < 64).then(|| 1u64 << bits)
    }

    pub fn size(&self) -> Option<u64> {
        self.partition_tuples()?.checked_mul(self.valuations()?)
    }

    /// Frame for partition tuple `t`, valuations all empty.
    pub fn frame(&self, mut t: u64) -> Frame<'_> {
        let b = self.partitions.len() as u64;
        let mut blocks: Vec<&[WorldSet]> = (0..self.agents)
            .map(|_| {
                let i = (t % b) as usize;
                t /= b;
                &self.partitions[i][..]
            })
            .collect();
        blocks.reverse();
        Frame { universe: WorldSet::full(self.n), blocks, props: vec![WorldSet::EMPTY; self.props] }
    }
}

/// Lightweight structure used inside the searches.
pub(crate) struct Frame<'a> {
    pub universe: WorldSet,
    pub blocks: Vec<&'a [WorldSet]>,
    pub props: Vec<WorldSet>,
}

impl Frame<'_> {
    /// Install valuation number `v` of a level with `n` worlds.
    pub fn set_valuation(&mut self, n: usize, v: u64) {
        let mask = (1u64 << n) - 1;
        let j = self.props.len();
        for (p, slot) in self.props.iter_mut().enumerate() {
            *slot = WorldSet::from_bits(v >> (n * (j - 1 - p)) & mask);
        }
    }

    pub fn to_model(&self, agents: &[AgentId], props: &[PropId]) -> KripkeModel {
        let n = self.universe.len();
        let partitions: BTreeMap<AgentId, Vec<WorldSet>> =
            agents.iter().cloned().zip(self.blocks.iter().map(|b| b.to_vec())).collect();
        let valuation: BTreeMap<PropId, WorldSet> = props.iter().cloned().zip(self.props.iter().copied()).collect();
        KripkeModel::from_parts(KripkeModel::numbered_worlds(n), partitions, valuation)
    }
}

impl Structure for Frame<'_> {
    fn universe(&self) -> WorldSet {
        self.universe
    }

    fn agent_count(&self) -> usize {
        self.blocks.len()
    }

    fn blocks(&self, a: usize) -> &[WorldSet] {
        self.blocks[a]
    }

    fn prop(&self, p: usize) -> WorldSet {
        self.props[p]
    }
}

/// Every S5 model on worlds `w1..wn` over the given agents and propositions,
/// each exactly once, in canonical order. Agents and propositions are sorted
/// and deduplicated first.
pub fn enumerate_models(
    n: usize,
    agents: &[AgentId],
    props: &[PropId],
) -> impl Iterator<Item = KripkeModel> {
    let mut agents = agents.to_vec();
    agents.sort();
    agents.dedup();
    let mut props = props.to_vec();
    props.sort();
    props.dedup();
    let level = Level::new(n, agents.len(), props.len());
    let tuples = level.partition_tuples().expect("partition space fits in u64");
    let vals = level.valuations().expect("valuation space fits in u64");
    (0..tuples).flat_map(move |t| {
        let mut frame = level.frame(t);
        let models: Vec<KripkeModel> = (0..vals)
            .map(|v| {
                frame.set_valuation(n, v);
                frame.to_model(&agents, &props)
            })
            .collect();
        models
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let known = [1u128, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975];
        for (n, &b) in known.iter().enumerate() {
            assert_eq!(bell(n), b, "B({n})");
            assert_eq!(restricted_growth_strings(n).len() as u128, b);
        }
    }

    #[test]
    fn rgs_are_lexicographic_and_valid() {
        let all = restricted_growth_strings(4);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all[0], vec![0, 0, 0, 0]);
        assert_eq!(all.last().unwrap(), &vec![0, 1, 2, 3]);
        for r in &all {
            let mut max = 0;
            for (i, &x) in r.iter().enumerate() {
                assert!(i == 0 && x == 0 || i > 0 && x <= max + 1);
                max = max.max(x);
            }
        }
        let blocks = rgs_blocks(&[0, 1, 0, 2]);
        assert_eq!(blocks.iter().map(|b| b.iter().collect::<Vec<_>>()).collect::<Vec<_>>(), vec![vec![0, 2], vec![1], vec![3]]);
    }

    #[test]
    fn small_model_counts() {
        let a = |s: &str| AgentId::new(s).unwrap();
        let p = PropId::new("p").unwrap();
        assert_eq!(enumerate_models(1, &[a("1")], &[p.clone()]).count(), 2);
        assert_eq!(enumerate_models(2, &[a("1")], &[p.clone()]).count(), 8);
        assert_eq!(enumerate_models(3, &[a("1"), a("2")], &[p]).count(), 200);
    }

    #[test]
    fn enumeration_is_duplicate_free_and_ordered() {
        let a = |s: &str| AgentId::new(s).unwrap();
        let props = [PropId::new("p").unwrap(), PropId::new("q").unwrap()];
        let models: Vec<KripkeModel> = enumerate_models(2, &[a("x"), a("y")], &props).collect();
        assert_eq!(models.len(), 4 * 16);
        for (i, m) in models.iter().enumerate() {
            assert!(!models[..i].contains(m));
        }
        // Last proposition varies fastest.
        assert!(models[0].valuation(&props[1]).is_empty() && models[1].valuation(&props[1]) == WorldSet::singleton(0));
        assert_eq!(models[4].valuation(&props[0]), WorldSet::singleton(0));
        // First agent's partition varies slowest: coarse partition first.
        assert_eq!(models[0].blocks(&a("x")).len(), 1);
        assert_eq!(models[32].blocks(&a("x")).len(), 2);
    }
}
