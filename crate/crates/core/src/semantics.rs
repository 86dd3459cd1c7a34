//! Set-at-a-time evaluation over world bitmasks.
//!
//! Formulas are compiled against a structure's agent and proposition
//! numbering, then evaluated for a whole domain at once. Restricting the
//! domain is how announcements are handled: `M|φ` is never materialised.

use crate::formula::{AgentId, Formula, PropId};
use crate::worldset::WorldSet;

/// Anything with per-agent partitions and a valuation over world indices.
pub(crate) trait Structure {
    fn universe(&self) -> WorldSet;
    fn agent_count(&self) -> usize;
    /// Blocks of agent `a`, covering the universe.
    fn blocks(&self, a: usize) -> &[WorldSet];
    fn prop(&self, p: usize) -> WorldSet;
}

/// Formula with agents and atoms resolved to indices. `None` marks an agent
/// with the identity relation or an atom that is false everywhere.
#[derive(Debug, Clone)]
pub(crate) enum Node {
    True,
    False,
    Prop(Option<usize>),
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Know(Option<usize>, Box<Node>),
    Poss(Option<usize>, Box<Node>),
    Common(Box<Node>),
    Announce(Box<Node>, Box<Node>),
}

impl Node {
    pub(crate) fn compile(
        f: &Formula,
        agent: &impl Fn(&AgentId) -> Option<usize>,
        prop: &impl Fn(&PropId) -> Option<usize>,
    ) -> Node {
        let rec = |g: &Formula| Box::new(Node::compile(g, agent, prop));
        match f {
            Formula::Atom(p) => Node::Prop(prop(p)),
            Formula::True => Node::True,
            Formula::False => Node::False,
            Formula::Not(g) => Node::Not(rec(g)),
            Formula::And(a, b) => Node::And(rec(a), rec(b)),
            Formula::Or(a, b) => Node::Or(rec(a), rec(b)),
            Formula::Know(ag, g) => Node::Know(agent(ag), rec(g)),
            Formula::Poss(ag, g) => Node::Poss(agent(ag), rec(g)),
            Formula::Common(g) => Node::Common(rec(g)),
            Formula::Announce(a, b) => Node::Announce(rec(a), rec(b)),
        }
    }
}

/// Worlds of `domain` where `node` holds in the submodel induced on `domain`.
pub(crate) fn truth<S: Structure>(s: &S, node: &Node, domain: WorldSet) -> WorldSet {
    match node {
        Node::True => domain,
        Node::False => WorldSet::EMPTY,
        Node::Prop(Some(p)) => s.prop(*p).intersect(domain),
        Node::Prop(None) => WorldSet::EMPTY,
        Node::Not(g) => domain.minus(truth(s, g, domain)),
        Node::And(a, b) => {
            let left = truth(s, a, domain);
            if left.is_empty() {
                return left;
            }
            left.intersect(truth(s, b, domain))
        }
        Node::Or(a, b) => truth(s, a, domain).union(truth(s, b, domain)),
        Node::Know(None, g) | Node::Poss(None, g) => truth(s, g, domain),
        Node::Know(Some(a), g) => {
            let inner = truth(s, g, domain);
            let mut out = WorldSet::EMPTY;
            for &block in s.blocks(*a) {
                let cell = block.intersect(domain);
                if cell.is_subset(inner) {
                    out = out.union(cell);
                }
            }
            out
        }
        Node::Poss(Some(a), g) => {
            let inner = truth(s, g, domain);
            let mut out = WorldSet::EMPTY;
            for &block in s.blocks(*a) {
                let cell = block.intersect(domain);
                if cell.meets(inner) {
                    out = out.union(cell);
                }
            }
            out
        }
        Node::Common(g) => {
            let inner = truth(s, g, domain);
            let mut out = WorldSet::EMPTY;
            let mut rest = domain;
            while let Some(w) = rest.first() {
                let comp = component(s, w, domain);
                if comp.is_subset(inner) {
                    out = out.union(comp);
                }
                rest = rest.minus(comp);
            }
            out
        }
        Node::Announce(a, b) => {
            let survivors = truth(s, a, domain);
            domain.minus(survivors).union(truth(s, b, survivors))
        }
    }
}

/// Worlds reachable from `w` inside `domain` through any agent's relation.
pub(crate) fn component<S: Structure>(s: &S, w: usize, domain: WorldSet) -> WorldSet {
    let mut comp = WorldSet::singleton(w);
    loop {
        let mut next = comp;
        for a in 0..s.agent_count() {
            for &block in s.blocks(a) {
                if block.meets(comp) {
                    next = next.union(block.intersect(domain));
                }
            }
        }
        if next == comp {
            return comp;
        }
        comp = next;
    }
}

/// Whether the whole universe is one component.
pub(crate) fn is_connected<S: Structure>(s: &S) -> bool {
    let u = s.universe();
    match u.first() {
        None => true,
        Some(w) => component(s, w, u) == u,
    }
}
