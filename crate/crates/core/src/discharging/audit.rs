//! Runs every check that could rule a plane graph out as a minimal
//! counterexample, then the rules, and lists what is left.

use serde::Serialize;

use super::classify::{classify_face_roles, FaceRoles, GoodPair};
use super::engine::{apply_rules_with, RuleVariant};
use super::{fraction, Charge, ChargeState, DischargeError, Element};
use crate::cycles::{cycle_spectrum, CycleSpectrum, DEFAULT_MAX_LEN};
use crate::embedding::{FaceId, PlaneEmbedding};
use crate::graph::Vertex;
use crate::reducibility::{find_pattern, ConfigPattern};

#[derive(Debug, Clone)]
pub struct AuditOptions {
    pub variant: RuleVariant,
    /// Refuse to run the rules when the cycle hypothesis fails.
    pub strict: bool,
    pub patterns: Vec<ConfigPattern>,
}

impl AuditOptions {
    pub fn new(variant: RuleVariant) -> Self {
        AuditOptions { variant, strict: false, patterns: Vec::new() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Finding {
    /// A cycle length the variant assumes absent.
    ForbiddenCycle { len: usize },
    /// Minimum degree below 3.
    LowDegree { vertex: Vertex, degree: usize },
    /// Occurrences of a supplied pattern.
    PatternHit { pattern: usize, occurrences: usize },
    NegativeCharge {
        element: Element,
        #[serde(serialize_with = "ser_charge")]
        charge: Charge,
    },
    /// Faces sharing several edges; adjacency counted per edge.
    RepeatedAdjacency { faces: (FaceId, FaceId) },
    /// A detected good/poor pair, matched only on the explicit part of the
    /// definition.
    GoodPairForReview(GoodPair),
}

fn ser_charge<S: serde::Serializer>(c: &Charge, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fraction(c))
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub variant: RuleVariant,
    pub spectrum: CycleSpectrum,
    pub hypothesis_holds: bool,
    /// Forbidden cycle, low degree or pattern hit present.
    pub escape_hatch: bool,
    pub findings: Vec<Finding>,
    pub roles: FaceRoles,
    pub state: ChargeState,
}

impl AuditReport {
    pub fn negative(&self) -> impl Iterator<Item = (Element, Charge)> + '_ {
        self.findings.iter().filter_map(|f| match f {
            Finding::NegativeCharge { element, charge } => Some((*element, *charge)),
            _ => None,
        })
    }

    /// Plain-text summary, one finding per line.
    pub fn render(&self) -> String {
        let mut s = format!(
            "variant {}: cycle spectrum {} ({}hypothesis holds)\n",
            self.variant,
            self.spectrum,
            if self.hypothesis_holds { "" } else { "no " }
        );
        s.push_str(&format!(
            "total {} after {} transfers\n",
            self.state.total(),
            self.state.log.len()
        ));
        for f in &self.findings {
            let line = match f {
                Finding::ForbiddenCycle { len } => format!("forbidden cycle present: length {len}"),
                Finding::LowDegree { vertex, degree } => format!("low degree: v{vertex} has degree {degree}"),
                Finding::PatternHit { pattern, occurrences } => {
                    format!("pattern {pattern}: {occurrences} occurrence(s)")
                }
                Finding::NegativeCharge { element, charge } => format!("negative: {element} = {}", fraction(charge)),
                Finding::RepeatedAdjacency { faces: (a, b) } => format!("faces f{a} and f{b} share several edges"),
                Finding::GoodPairForReview(p) => {
                    format!("review: f{} good to f{} across edge {}", p.good, p.poor, p.edge)
                }
            };
            s.push_str(&line);
            s.push('\n');
        }
        s
    }
}

/// Cycle hypothesis, minimum degree, pattern occurrences, then the rules.
///
/// A graph meeting every hypothesis and containing none of the patterns
/// would be a minimal counterexample; the rules should then leave nothing
/// negative, contradicting the total of `-8`. So on any input at least one
/// finding is expected.
pub fn audit(emb: &PlaneEmbedding, opts: &AuditOptions) -> Result<AuditReport, DischargeError> {
    let g = emb.graph();
    let spectrum = cycle_spectrum(g, DEFAULT_MAX_LEN);
    let forbidden = opts.variant.forbidden();
    let present: Vec<usize> = forbidden.lengths().into_iter().filter(|&l| spectrum.contains(l)).collect();
    if opts.strict {
        if let Some(&found) = present.first() {
            return Err(DischargeError::VariantPrecondition {
                variant: opts.variant,
                lengths: forbidden.lengths().map(|l| l.to_string()).join(","),
                found,
            });
        }
    }
    let mut findings: Vec<Finding> = present.iter().map(|&len| Finding::ForbiddenCycle { len }).collect();
    findings.extend(
        (0..g.n())
            .filter(|&v| g.degree(v) < 3)
            .map(|v| Finding::LowDegree { vertex: v, degree: g.degree(v) }),
    );
    for (i, p) in opts.patterns.iter().enumerate() {
        let occurrences = find_pattern(g, p).len();
        if occurrences > 0 {
            findings.push(Finding::PatternHit { pattern: i, occurrences });
        }
    }
    let escape_hatch = !findings.is_empty();
    let roles = classify_face_roles(emb);
    let state = apply_rules_with(emb, &roles, opts.variant)?;
    findings.extend(
        state
            .negative()
            .into_iter()
            .map(|(element, charge)| Finding::NegativeCharge { element, charge }),
    );
    findings.extend(roles.repeated_adjacency.iter().map(|&faces| Finding::RepeatedAdjacency { faces }));
    findings.extend(roles.good_pairs.iter().map(|&p| Finding::GoodPairForReview(p)));
    Ok(AuditReport {
        variant: opts.variant,
        spectrum,
        hypothesis_holds: present.is_empty(),
        escape_hatch,
        findings,
        roles,
        state,
    })
}
