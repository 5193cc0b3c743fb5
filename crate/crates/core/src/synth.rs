//! Constructive synthesis of connected (k, q)-graphs: graphs with decycling
//! number `k` and `I(G; -1) = q`, for any `k >= 1` and `|q| <= 2^k`.
//!
//! Dispatch, in order:
//! - `k = 1`, `q != 0`: C6 extended by 0..=3 gives 2, 1, -1, -2.
//! - `q = 0`: combine a (k, 1)-graph with K1.
//! - `q < 0`: combine a (k, -q)-graph with K2.
//! - `q` even: combine a (k - 1, q / 2)-graph with C6.
//! - `q` odd: [`claim_graph`].

use crate::bracket::Bracket;
use crate::certificate::{BaseGraph, CertNode, ConstructionCertificate, Target};
use crate::error::{Error, Result};

/// Largest supported `k`; keeps every bracket product well inside `i64`.
pub const MAX_K: u32 = 40;

/// Combines a (k1, q1)-certificate and a (k2, q2)-certificate into a
/// connected (k1 + k2, q1 q2)-certificate.
///
/// Both operands are 2-extended (so each has at least 3 vertices and a
/// pendant root), pasted, then extended by 4. Pasting the 2-extensions gives
/// bracket `<bd - q1 q2, bd, q1 q2>`; one more step yields value `-q1 q2`,
/// and three further steps negate it back to `q1 q2`.
pub fn connectify(left: CertNode, right: CertNode) -> CertNode {
    left.extend(2).paste(right.extend(2)).extend(4)
}

/// Which of the two bracket shapes a claim certificate carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClaimForm {
    /// `<q, 2^k, 2^k - q>`
    Form1,
    /// `<q, q - 2^k, -2^k>`
    Form2,
}

impl ClaimForm {
    pub fn bracket(self, k: u32, q: i64) -> Bracket {
        let top = 1i64 << k;
        match self {
            ClaimForm::Form1 => Bracket::new(top, top - q),
            ClaimForm::Form2 => Bracket::new(q - top, -top),
        }
    }
}

fn check_k(k: u32) -> Result<()> {
    if k == 0 || k > MAX_K {
        return Err(Error::InvalidArgument(format!(
            "k must lie in 1..={MAX_K}, got {k}"
        )));
    }
    Ok(())
}

/// Connected (k, q)-certificate for odd `q` in `(0, 2^k)` whose bracket has
/// `2^k` or `-2^k` in it, in the shape named by the returned form.
pub fn claim_graph(k: u32, q: i64) -> Result<(CertNode, ClaimForm)> {
    check_k(k)?;
    let top = 1i64 << k;
    if q % 2 == 0 || q <= 0 || q >= top {
        return Err(Error::InvalidArgument(format!(
            "claim graphs need odd q in (0, 2^{k}), got {q}"
        )));
    }
    if k == 1 {
        return Ok((CertNode::base(BaseGraph::C6).extend(1), ClaimForm::Form1));
    }
    let half = top / 2;
    if q > half {
        // q = 2^k - r; the (k - 1, 2^(k-1) - r) claim graph has r in its bracket.
        let r = top - q;
        let (child, form) = claim_graph(k - 1, half - r)?;
        let gadget = match form {
            ClaimForm::Form1 => CertNode::base(BaseGraph::C6).extend(1),
            ClaimForm::Form2 => CertNode::base(BaseGraph::C6).extend(2),
        };
        Ok((child.paste(gadget), form))
    } else {
        // q is the r appearing in the bracket of the (k, 2^k - q) claim graph.
        let (upper, form) = claim_graph(k, top - q)?;
        Ok(match form {
            ClaimForm::Form1 => (upper.extend(4), ClaimForm::Form2),
            ClaimForm::Form2 => (upper.extend(2), ClaimForm::Form1),
        })
    }
}

fn synth_node(k: u32, q: i64) -> Result<CertNode> {
    if k == 1 && q != 0 {
        let length = match q {
            2 => 0,
            1 => 1,
            -1 => 2,
            -2 => 3,
            _ => unreachable!("|q| <= 2 checked by caller"),
        };
        return Ok(CertNode::base(BaseGraph::C6).extend(length));
    }
    if q == 0 {
        let (nonzero, _) = claim_graph(k, 1)?;
        return Ok(connectify(nonzero, CertNode::base(BaseGraph::K1)));
    }
    if q < 0 {
        return Ok(connectify(
            synth_node(k, -q)?,
            CertNode::base(BaseGraph::K2),
        ));
    }
    if q % 2 == 0 {
        return Ok(connectify(
            synth_node(k - 1, q / 2)?,
            CertNode::base(BaseGraph::C6),
        ));
    }
    claim_graph(k, q).map(|(node, _)| node)
}

/// Certificate for a connected graph with decycling number `k` and
/// `I(G; -1) = q`.
pub fn synth(k: u32, q: i64) -> Result<ConstructionCertificate> {
    check_k(k)?;
    if q.unsigned_abs() > 1u64 << k {
        return Err(Error::BoundViolation { k, q });
    }
    let root = synth_node(k, q)?;
    Ok(ConstructionCertificate {
        target: Target { k, q },
        root,
    })
}
