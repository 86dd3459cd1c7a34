//! Seeded random formulas and exhaustive single-term enumeration for
//! experiments and tests.

use rand::Rng;

use crate::formula::{AgentId, Formula, ModalOp, PropId, SingleTermView};

/// Which connectives a random formula may use.
#[derive(Debug, Clone)]
pub struct GenConfig {
    pub agents: Vec<AgentId>,
    pub props: Vec<PropId>,
    pub max_depth: usize,
    pub common: bool,
    pub announcements: bool,
}

impl GenConfig {
    /// Agents named `1..=agents`, atoms `p, q, r, …`.
    pub fn new(agents: usize, props: usize, max_depth: usize) -> GenConfig {
        GenConfig {
            agents: (1..=agents).map(|i| AgentId::new(i.to_string()).unwrap()).collect(),
            props: (0..props).map(|i| PropId::new(atom_name(i)).unwrap()).collect(),
            max_depth,
            common: false,
            announcements: false,
        }
    }

    pub fn with_common(mut self) -> Self {
        self.common = true;
        self
    }

    pub fn with_announcements(mut self) -> Self {
        self.announcements = true;
        self
    }
}

fn atom_name(i: usize) -> String {
    const NAMES: &[&str] = &["p", "q", "r", "s", "t", "u"];
    NAMES.get(i).map_or_else(|| format!("p{i}"), |s| s.to_string())
}

fn leaf(rng: &mut impl Rng, cfg: &GenConfig) -> Formula {
    match rng.gen_range(0..10) {
        0 => Formula::True,
        1 => Formula::False,
        _ => Formula::atom(cfg.props[rng.gen_range(0..cfg.props.len())].clone()),
    }
}

fn agent(rng: &mut impl Rng, cfg: &GenConfig) -> AgentId {
    cfg.agents[rng.gen_range(0..cfg.agents.len())].clone()
}

/// Random formula of depth at most `cfg.max_depth`.
pub fn random_formula(rng: &mut impl Rng, cfg: &GenConfig) -> Formula {
    go(rng, cfg, cfg.max_depth)
}

fn go(rng: &mut impl Rng, cfg: &GenConfig, depth: usize) -> Formula {
    if depth == 0 || rng.gen_range(0..4) == 0 {
        return leaf(rng, cfg);
    }
    let d = depth - 1;
    let choices = 6 + cfg.common as u32 + cfg.announcements as u32;
    match rng.gen_range(0..choices) {
        0 => Formula::not(go(rng, cfg, d)),
        1 => Formula::and(go(rng, cfg, d), go(rng, cfg, d)),
        2 => Formula::or(go(rng, cfg, d), go(rng, cfg, d)),
        3 => Formula::know(agent(rng, cfg), go(rng, cfg, d)),
        4 => Formula::poss(agent(rng, cfg), go(rng, cfg, d)),
        5 => Formula::not(Formula::know(agent(rng, cfg), go(rng, cfg, d))),
        6 if cfg.common => Formula::common(go(rng, cfg, d)),
        _ => Formula::announce(go(rng, cfg, d), go(rng, cfg, d)),
    }
}

/// Random member of the fragment built from literals, `∧`, `∨`, `L` and
/// `¬[φ]¬ψ`.
pub fn random_supermodel_formula(rng: &mut impl Rng, cfg: &GenConfig) -> Formula {
    sup(rng, cfg, cfg.max_depth)
}

fn sup(rng: &mut impl Rng, cfg: &GenConfig, depth: usize) -> Formula {
    if depth == 0 || rng.gen_range(0..4) == 0 {
        let p = Formula::atom(cfg.props[rng.gen_range(0..cfg.props.len())].clone());
        return if rng.gen() { p } else { Formula::not(p) };
    }
    let d = depth - 1;
    match rng.gen_range(0..4) {
        0 => Formula::and(sup(rng, cfg, d), sup(rng, cfg, d)),
        1 => Formula::or(sup(rng, cfg, d), sup(rng, cfg, d)),
        2 => Formula::poss(agent(rng, cfg), sup(rng, cfg, d)),
        _ => Formula::not(Formula::announce(sup(rng, cfg, d), Formula::not(sup(rng, cfg, d)))),
    }
}

/// Every chain of 1..=`max_ops` operators over `agents` with the given body.
pub fn single_terms(max_ops: usize, agents: &[AgentId], body: &Formula) -> Vec<SingleTermView> {
    let mut out = Vec::new();
    let mut ops = Vec::new();
    fn extend(
        ops: &mut Vec<ModalOp>,
        max: usize,
        agents: &[AgentId],
        body: &Formula,
        out: &mut Vec<SingleTermView>,
    ) {
        if !ops.is_empty() {
            out.push(SingleTermView { ops: ops.clone(), body: body.clone() });
        }
        if ops.len() == max {
            return;
        }
        for a in agents {
            for op in [ModalOp::know(a.clone()), ModalOp::poss(a.clone())] {
                ops.push(op);
                extend(ops, max, agents, body, out);
                ops.pop();
            }
        }
    }
    extend(&mut ops, max_ops, agents, body, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::in_supermodel_fragment;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_respect_config() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let cfg = GenConfig::new(2, 2, 3);
        for _ in 0..200 {
            let f = random_formula(&mut rng, &cfg);
            assert!(f.is_announcement_free());
            assert!(f.agents().len() <= 2 && f.props().len() <= 2);
            assert!(in_supermodel_fragment(&random_supermodel_formula(&mut rng, &cfg)));
        }
    }

    #[test]
    fn single_term_counts() {
        let agents = GenConfig::new(2, 1, 0).agents;
        let p = Formula::atom(PropId::new("p").unwrap());
        // 4 + 16 + 64 chains of length 1, 2, 3.
        assert_eq!(single_terms(3, &agents, &p).len(), 84);
    }
}
