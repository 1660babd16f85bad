//! Exact-rational discharging on plane embeddings.
//!
//! Every vertex and face starts with charge `d(x) - 4`; over a connected
//! plane graph these sum to `-8`. Rules move charge in a fixed phase order
//! and the total is checked after every phase.

mod audit;
mod bounds;
mod classify;
mod engine;

use std::fmt;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::embedding::{FaceId, PlaneEmbedding};
use crate::graph::Vertex;

pub use audit::{audit, AuditOptions, AuditReport, Finding};
pub use bounds::{face_stats, lemma5_bound, lemma6_bound, path_stats, FaceStats, PathCounts};
pub use classify::{classify_face_roles, FaceRoles, GoodPair};
pub use engine::{apply_rules, apply_rules_with, RuleVariant};

/// Exact charge amounts.
pub type Charge = Rational64;

/// Total charge of any connected plane graph.
pub const TOTAL_CHARGE: i64 = -8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DischargeError {
    #[error("initial charges sum to {0}, not -8")]
    ChargeSumMismatch(Charge),
    #[error("total charge {total} after phase {phase}")]
    ConservationViolated { phase: u8, total: Charge },
    #[error("variant {variant} needs no {{{lengths}}}-cycles, but the graph has a {found}-cycle")]
    VariantPrecondition { variant: RuleVariant, lengths: String, found: usize },
}

/// A vertex or a face.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Element {
    Vertex(Vertex),
    Face(FaceId),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "v{v}"),
            Element::Face(x) => write!(f, "f{x}"),
        }
    }
}

/// Rule labels carried in the transfer log.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Rule {
    /// 5+-face to adjacent 3-face.
    R1Triangle,
    /// 5+-vertex to incident 5+-face.
    R1BigVertex,
    /// Special semi-rich 4+-vertex to a 10+-face.
    R2Special,
    /// 10+-face to a rich 4-vertex on a 3-face.
    R2Rich,
    /// Good face to poor face.
    R3,
    R4aBigToFive,
    R4aTriangular,
    R4aRemainder,
    R4aPull,
    R4bVertex,
    R4bSeven,
    R4bBad,
    R4bSurplus,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::R1Triangle | Rule::R1BigVertex => "R1",
            Rule::R2Special | Rule::R2Rich => "R2",
            Rule::R3 => "R3",
            Rule::R4aBigToFive => "R4a.i",
            Rule::R4aTriangular => "R4a.ii",
            Rule::R4aRemainder => "R4a.iii",
            Rule::R4aPull => "R4a.iv",
            Rule::R4bVertex => "R4b.i",
            Rule::R4bSeven => "R4b.ii",
            Rule::R4bBad => "R4b.iii",
            Rule::R4bSurplus => "R4b.iv",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Transfer {
    pub phase: u8,
    pub rule: Rule,
    pub source: Element,
    pub sink: Element,
    #[serde(serialize_with = "ser_charge")]
    pub amount: Charge,
}

fn ser_charge<S: serde::Serializer>(c: &Charge, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fraction(c))
}

/// `p/q` with an explicit denominator, also for integers.
pub fn fraction(c: &Charge) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

fn ser_charges<S: serde::Serializer>(cs: &[Charge], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(cs.iter().map(fraction))
}

/// Charges of every vertex and face plus the log of transfers that
/// produced them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChargeState {
    #[serde(serialize_with = "ser_charges")]
    pub vertex: Vec<Charge>,
    #[serde(serialize_with = "ser_charges")]
    pub face: Vec<Charge>,
    pub log: Vec<Transfer>,
    /// Total after each completed phase, starting with the initial total.
    #[serde(serialize_with = "ser_charges")]
    pub phase_totals: Vec<Charge>,
}

impl ChargeState {
    pub fn total(&self) -> Charge {
        self.vertex.iter().chain(&self.face).sum()
    }

    pub fn get(&self, x: Element) -> Charge {
        match x {
            Element::Vertex(v) => self.vertex[v],
            Element::Face(f) => self.face[f],
        }
    }

    fn slot(&mut self, x: Element) -> &mut Charge {
        match x {
            Element::Vertex(v) => &mut self.vertex[v],
            Element::Face(f) => &mut self.face[f],
        }
    }

    /// Moves `amount` from `source` to `sink`. Zero amounts are dropped.
    pub(crate) fn give(&mut self, phase: u8, rule: Rule, source: Element, sink: Element, amount: Charge) {
        assert!(!amount.is_negative(), "negative transfer {amount} under {rule}");
        if amount.is_zero() {
            return;
        }
        *self.slot(source) -= amount;
        *self.slot(sink) += amount;
        self.log.push(Transfer { phase, rule, source, sink, amount });
    }

    /// Elements with negative charge, vertices first.
    pub fn negative(&self) -> Vec<(Element, Charge)> {
        let vs = self.vertex.iter().enumerate().map(|(v, &c)| (Element::Vertex(v), c));
        let fs = self.face.iter().enumerate().map(|(f, &c)| (Element::Face(f), c));
        vs.chain(fs).filter(|(_, c)| c.is_negative()).collect()
    }

    /// Total sent by `x` (`out`) and received (`in`) over the whole log.
    pub fn flow(&self, x: Element) -> (Charge, Charge) {
        let out = self.log.iter().filter(|t| t.source == x).map(|t| t.amount).sum();
        let inc = self.log.iter().filter(|t| t.sink == x).map(|t| t.amount).sum();
        (out, inc)
    }

    /// Transfer log as tab-separated `phase rule source sink amount` lines
    /// with a header.
    pub fn log_tsv(&self) -> String {
        let mut s = String::from("phase\trule\tsource\tsink\tamount\n");
        for t in &self.log {
            s.push_str(&format!("{}\t{}\t{}\t{}\t{}\n", t.phase, t.rule, t.source, t.sink, fraction(&t.amount)));
        }
        s
    }
}

/// `d(v) - 4` on vertices and `len(f) - 4` on faces.
pub fn initial_charges(emb: &PlaneEmbedding) -> Result<ChargeState, DischargeError> {
    let g = emb.graph();
    let vertex: Vec<Charge> = (0..g.n()).map(|v| Charge::from_integer(g.degree(v) as i64 - 4)).collect();
    let face: Vec<Charge> = emb.faces().iter().map(|f| Charge::from_integer(f.len() as i64 - 4)).collect();
    let mut state = ChargeState { vertex, face, log: Vec::new(), phase_totals: Vec::new() };
    let total = state.total();
    if total != Charge::from_integer(TOTAL_CHARGE) {
        return Err(DischargeError::ChargeSumMismatch(total));
    }
    state.phase_totals.push(total);
    Ok(state)
}
