//! Construction certificates: operation trees over the base graphs K1, K2
//! and C6, annotated with the bracket and decycling number each node claims.
//!
//! Certificates serialize to a nested JSON document tagged `cert-v1`:
//!
//! ```json
//! {
//!   "version": "cert-v1",
//!   "target": { "k": 1, "q": 1 },
//!   "root": {
//!     "kind": "extend", "length": 1, "bracket": [1, 2, 1], "phi": 1,
//!     "children": [ { "kind": "base", "base": "C6", "bracket": [2, 1, -1], "phi": 1, "children": [] } ]
//!   }
//! }
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bracket::Bracket;
use crate::decycling::PhiCertificate;
use crate::error::{Error, Result};
use crate::graph::{make_complete, make_cycle, RootedGraph};

pub const CERT_VERSION: &str = "cert-v1";

/// Leaf graphs of a construction, each rooted at vertex 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseGraph {
    K1,
    K2,
    C6,
}

impl BaseGraph {
    pub fn name(self) -> &'static str {
        match self {
            BaseGraph::K1 => "K1",
            BaseGraph::K2 => "K2",
            BaseGraph::C6 => "C6",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "K1" => Some(BaseGraph::K1),
            "K2" => Some(BaseGraph::K2),
            "C6" => Some(BaseGraph::C6),
            _ => None,
        }
    }

    pub fn rooted(self) -> RootedGraph {
        let graph = match self {
            BaseGraph::K1 => make_complete(1),
            BaseGraph::K2 => make_complete(2),
            BaseGraph::C6 => make_cycle(6),
        }
        .expect("fixed sizes are in range");
        RootedGraph::new(graph, 0).expect("vertex 0 exists")
    }

    pub fn vertex_count(self) -> usize {
        match self {
            BaseGraph::K1 => 1,
            BaseGraph::K2 => 2,
            BaseGraph::C6 => 6,
        }
    }

    pub fn bracket(self) -> Bracket {
        match self {
            BaseGraph::K1 => Bracket::new(1, 1),
            BaseGraph::K2 => Bracket::new(0, 1),
            BaseGraph::C6 => Bracket::new(1, -1),
        }
    }

    pub fn phi(self) -> u32 {
        match self {
            BaseGraph::C6 => 1,
            BaseGraph::K1 | BaseGraph::K2 => 0,
        }
    }
}

impl fmt::Display for BaseGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertKind {
    Base(BaseGraph),
    Extend {
        length: usize,
        child: Box<CertNode>,
    },
    Paste {
        left: Box<CertNode>,
        right: Box<CertNode>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertNode {
    pub kind: CertKind,
    pub claimed_bracket: Bracket,
    pub claimed_phi: u32,
}

impl CertNode {
    pub fn base(base: BaseGraph) -> Self {
        CertNode {
            kind: CertKind::Base(base),
            claimed_bracket: base.bracket(),
            claimed_phi: base.phi(),
        }
    }

    pub fn extend(self, length: usize) -> Self {
        CertNode {
            claimed_bracket: self.claimed_bracket.extend(length),
            claimed_phi: self.claimed_phi,
            kind: CertKind::Extend {
                length,
                child: Box::new(self),
            },
        }
    }

    pub fn paste(self, right: CertNode) -> Self {
        CertNode {
            claimed_bracket: self.claimed_bracket.paste(&right.claimed_bracket),
            claimed_phi: self.claimed_phi + right.claimed_phi,
            kind: CertKind::Paste {
                left: Box::new(self),
                right: Box::new(right),
            },
        }
    }

    pub fn vertex_count(&self) -> usize {
        match &self.kind {
            CertKind::Base(b) => b.vertex_count(),
            CertKind::Extend { length, child } => child.vertex_count() + length,
            CertKind::Paste { left, right } => left.vertex_count() + right.vertex_count() - 1,
        }
    }

    pub fn children(&self) -> Vec<&CertNode> {
        match &self.kind {
            CertKind::Base(_) => vec![],
            CertKind::Extend { child, .. } => vec![child],
            CertKind::Paste { left, right } => vec![left, right],
        }
    }

    /// Number of C6 leaves.
    pub fn cycle_blocks(&self) -> usize {
        match &self.kind {
            CertKind::Base(b) => usize::from(*b == BaseGraph::C6),
            _ => self.children().iter().map(|c| c.cycle_blocks()).sum(),
        }
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }
}

/// Bracket folded bottom-up from the leaves, ignoring every claimed field.
pub fn predicted_bracket(node: &CertNode) -> Bracket {
    match &node.kind {
        CertKind::Base(b) => b.bracket(),
        CertKind::Extend { length, child } => predicted_bracket(child).extend(*length),
        CertKind::Paste { left, right } => predicted_bracket(left).paste(&predicted_bracket(right)),
    }
}

/// Decycling number folded bottom-up: C6 counts 1, pasting adds, extending
/// keeps.
pub fn predicted_phi(node: &CertNode) -> u32 {
    match &node.kind {
        CertKind::Base(b) => b.phi(),
        CertKind::Extend { child, .. } => predicted_phi(child),
        CertKind::Paste { left, right } => predicted_phi(left) + predicted_phi(right),
    }
}

/// Compares every node's claims with the folds; reports the first mismatch
/// by its path from the root.
pub fn check_claims(node: &CertNode) -> Result<()> {
    fn walk(node: &CertNode, path: &str) -> Result<(Bracket, u32)> {
        let (bracket, phi) = match &node.kind {
            CertKind::Base(b) => (b.bracket(), b.phi()),
            CertKind::Extend { length, child } => {
                let (b, p) = walk(child, &format!("{path}/extend"))?;
                (b.extend(*length), p)
            }
            CertKind::Paste { left, right } => {
                let (lb, lp) = walk(left, &format!("{path}/left"))?;
                let (rb, rp) = walk(right, &format!("{path}/right"))?;
                (lb.paste(&rb), lp + rp)
            }
        };
        if bracket != node.claimed_bracket {
            return Err(Error::InconsistentCertificate {
                path: path.to_string(),
                message: format!(
                    "claims bracket {} but folds to {bracket}",
                    node.claimed_bracket
                ),
            });
        }
        if phi != node.claimed_phi {
            return Err(Error::InconsistentCertificate {
                path: path.to_string(),
                message: format!("claims phi {} but folds to {phi}", node.claimed_phi),
            });
        }
        Ok((bracket, phi))
    }
    walk(node, "root").map(|_| ())
}

/// Every Paste node must join two graphs on at least two vertices each.
pub fn check_structure(node: &CertNode) -> Result<()> {
    if let CertKind::Paste { left, right } = &node.kind {
        for (side, child) in [("left", left), ("right", right)] {
            if child.vertex_count() < 2 {
                return Err(Error::InvalidCertificate(format!(
                    "paste operand ({side}) realizes {} vertex; at least 2 required",
                    child.vertex_count()
                )));
            }
        }
    }
    node.children().into_iter().try_for_each(check_structure)
}

/// The (k, q) a certificate claims to realize.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Target {
    pub k: u32,
    pub q: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionCertificate {
    pub target: Target,
    pub root: CertNode,
}

/// A realized certificate: the rooted graph and, for each C6 leaf, its six
/// vertices in cycle order.
#[derive(Clone, Debug)]
pub struct Realization {
    pub rooted: RootedGraph,
    pub cycle_blocks: Vec<Vec<usize>>,
}

impl Realization {
    /// The C6 blocks as disjoint cycles, hitting each at its first vertex.
    pub fn phi_certificate(&self) -> PhiCertificate {
        PhiCertificate {
            disjoint_cycles: self.cycle_blocks.clone(),
            decycling_set: self.cycle_blocks.iter().map(|c| c[0]).collect(),
        }
    }
}

pub fn realize_with_blocks(node: &CertNode) -> Result<Realization> {
    check_structure(node)?;
    Ok(realize_unchecked(node))
}

fn realize_unchecked(node: &CertNode) -> Realization {
    match &node.kind {
        CertKind::Base(b) => Realization {
            rooted: b.rooted(),
            cycle_blocks: if *b == BaseGraph::C6 {
                vec![(0..6).collect()]
            } else {
                vec![]
            },
        },
        CertKind::Extend { length, child } => {
            let inner = realize_unchecked(child);
            Realization {
                rooted: inner.rooted.extend(*length),
                cycle_blocks: inner.cycle_blocks,
            }
        }
        CertKind::Paste { left, right } => {
            let l = realize_unchecked(left);
            let r = realize_unchecked(right);
            let pasted = l.rooted.paste_with_maps(&r.rooted);
            let relabel = |blocks: Vec<Vec<usize>>, map: &[usize]| {
                blocks
                    .into_iter()
                    .map(|b| b.into_iter().map(|v| map[v]).collect::<Vec<_>>())
                    .collect::<Vec<_>>()
            };
            let mut cycle_blocks = relabel(l.cycle_blocks, &pasted.left_map);
            cycle_blocks.extend(relabel(r.cycle_blocks, &pasted.right_map));
            Realization {
                rooted: pasted.rooted,
                cycle_blocks,
            }
        }
    }
}

/// Materializes the operation tree as a rooted graph.
pub fn realize(node: &CertNode) -> Result<RootedGraph> {
    realize_with_blocks(node).map(|r| r.rooted)
}

#[derive(Serialize, Deserialize)]
struct Document {
    version: String,
    target: Target,
    root: NodeDoc,
}

#[derive(Serialize, Deserialize)]
struct NodeDoc {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    base: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    length: Option<usize>,
    #[serde(default)]
    children: Vec<NodeDoc>,
    bracket: [i64; 3],
    phi: u32,
}

impl From<&CertNode> for NodeDoc {
    fn from(node: &CertNode) -> Self {
        let (kind, base, length) = match &node.kind {
            CertKind::Base(b) => ("base", Some(b.name().to_string()), None),
            CertKind::Extend { length, .. } => ("extend", None, Some(*length)),
            CertKind::Paste { .. } => ("paste", None, None),
        };
        NodeDoc {
            kind: kind.to_string(),
            base,
            length,
            children: node.children().into_iter().map(NodeDoc::from).collect(),
            bracket: node.claimed_bracket.triple(),
            phi: node.claimed_phi,
        }
    }
}

impl TryFrom<NodeDoc> for CertNode {
    type Error = Error;

    fn try_from(doc: NodeDoc) -> Result<Self> {
        let invalid = |m: String| Error::InvalidCertificate(m);
        let claimed_bracket = Bracket::try_from(doc.bracket).map_err(|e| invalid(e.to_string()))?;
        let arity = doc.children.len();
        let mut children = doc.children.into_iter();
        let kind = match doc.kind.as_str() {
            "base" => {
                let name = doc
                    .base
                    .ok_or_else(|| invalid("base node without `base` name".into()))?;
                let base = BaseGraph::from_name(&name)
                    .ok_or_else(|| invalid(format!("unknown base graph {name:?}")))?;
                if arity != 0 {
                    return Err(invalid("base node with children".into()));
                }
                CertKind::Base(base)
            }
            "extend" => {
                let length = doc
                    .length
                    .ok_or_else(|| invalid("extend node without `length`".into()))?;
                if arity != 1 {
                    return Err(invalid(format!("extend node needs 1 child, has {arity}")));
                }
                CertKind::Extend {
                    length,
                    child: Box::new(children.next().unwrap().try_into()?),
                }
            }
            "paste" => {
                if arity != 2 {
                    return Err(invalid(format!("paste node needs 2 children, has {arity}")));
                }
                CertKind::Paste {
                    left: Box::new(children.next().unwrap().try_into()?),
                    right: Box::new(children.next().unwrap().try_into()?),
                }
            }
            other => return Err(invalid(format!("unknown node kind {other:?}"))),
        };
        Ok(CertNode {
            kind,
            claimed_bracket,
            claimed_phi: doc.phi,
        })
    }
}

impl ConstructionCertificate {
    pub fn to_json(&self) -> String {
        let doc = Document {
            version: CERT_VERSION.to_string(),
            target: self.target,
            root: NodeDoc::from(&self.root),
        };
        serde_json::to_string_pretty(&doc).expect("certificate documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let mut de = serde_json::Deserializer::from_str(text);
        de.disable_recursion_limit();
        let doc = Document::deserialize(&mut de)
            .and_then(|d| de.end().map(|_| d))
            .map_err(|e| Error::InvalidCertificate(e.to_string()))?;
        if doc.version != CERT_VERSION {
            return Err(Error::InvalidCertificate(format!(
                "unsupported version {:?}, expected {CERT_VERSION:?}",
                doc.version
            )));
        }
        Ok(ConstructionCertificate {
            target: doc.target,
            root: doc.root.try_into()?,
        })
    }

    pub fn realize(&self) -> Result<RootedGraph> {
        realize(&self.root)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{bracket, value_at_minus_one};

    fn c6() -> CertNode {
        CertNode::base(BaseGraph::C6)
    }

    #[test]
    fn base_realizations() {
        let g = realize(&c6()).unwrap();
        assert_eq!(g.graph().vertex_count(), 6);
        assert_eq!(bracket(&g), Bracket::new(1, -1));
        let g1 = realize(&c6().extend(1)).unwrap();
        assert_eq!(g1.graph().vertex_count(), 7);
        assert_eq!(bracket(&g1).triple(), [1, 2, 1]);
    }

    #[test]
    fn pasted_extensions() {
        let node = c6().extend(1).paste(c6().extend(1));
        let g = realize(&node).unwrap();
        assert_eq!(g.graph().vertex_count(), 13);
        assert_eq!(value_at_minus_one(g.graph()), 3);
        assert_eq!(predicted_bracket(&node).triple(), [3, 4, 1]);
    }

    #[test]
    fn predictions() {
        assert_eq!(predicted_bracket(&c6()).triple(), [2, 1, -1]);
        assert_eq!(predicted_phi(&c6()), 1);
        let e3 = c6().extend(3);
        assert_eq!(predicted_bracket(&e3).triple(), [-2, -1, 1]);
        assert_eq!(predicted_phi(&e3), 1);
        let p3 = CertNode::base(BaseGraph::K2).paste(CertNode::base(BaseGraph::K2));
        assert_eq!(predicted_bracket(&p3).triple(), [-1, 0, 1]);
        assert_eq!(predicted_phi(&p3), 0);
        assert_eq!(value_at_minus_one(realize(&p3).unwrap().graph()), -1);
    }

    #[test]
    fn tampered_claims_are_caught() {
        let mut node = c6().extend(1).paste(c6().extend(2));
        assert!(check_claims(&node).is_ok());
        node.claimed_bracket = Bracket::new(5, 1);
        assert!(matches!(
            check_claims(&node),
            Err(Error::InconsistentCertificate { .. })
        ));
        let mut node = c6().extend(1);
        node.claimed_phi = 2;
        assert!(check_claims(&node).is_err());
    }

    #[test]
    fn paste_needs_two_vertices() {
        let node = CertNode::base(BaseGraph::K1).paste(c6());
        assert!(matches!(realize(&node), Err(Error::InvalidCertificate(_))));
        let ok = CertNode::base(BaseGraph::K1).extend(2).paste(c6());
        assert!(realize(&ok).is_ok());
    }

    #[test]
    fn blocks_track_cycles() {
        let node = c6().extend(1).paste(c6().extend(2)).extend(3);
        let r = realize_with_blocks(&node).unwrap();
        assert_eq!(r.cycle_blocks.len(), 2);
        let g = r.rooted.graph();
        for block in &r.cycle_blocks {
            for i in 0..6 {
                assert!(g.has_edge(block[i], block[(i + 1) % 6]));
            }
        }
    }

    #[test]
    fn json_round_trip_and_rejections() {
        let cert = ConstructionCertificate {
            target: Target { k: 2, q: 3 },
            root: c6().extend(1).paste(c6().extend(1)),
        };
        let text = cert.to_json();
        assert!(text.contains("\"cert-v1\""));
        assert_eq!(ConstructionCertificate::from_json(&text).unwrap(), cert);

        let bad_version = text.replace("cert-v1", "cert-v0");
        assert!(ConstructionCertificate::from_json(&bad_version).is_err());
        let bad_base = text.replace("\"C6\"", "\"C7\"");
        assert!(ConstructionCertificate::from_json(&bad_base).is_err());
        let bad_triple = text.replacen("[\n      3,\n      4,\n      1\n    ]", "[9, 4, 1]", 1);
        assert_ne!(bad_triple, text);
        assert!(matches!(
            ConstructionCertificate::from_json(&bad_triple),
            Err(Error::InvalidCertificate(_))
        ));
        assert!(ConstructionCertificate::from_json("{").is_err());
    }

    #[test]
    fn deep_documents_parse() {
        let mut node = c6();
        for _ in 0..400 {
            node = node.extend(1);
        }
        let cert = ConstructionCertificate {
            target: Target {
                k: 1,
                q: node.claimed_bracket.value(),
            },
            root: node,
        };
        assert_eq!(
            ConstructionCertificate::from_json(&cert.to_json()).unwrap(),
            cert
        );
    }
}
