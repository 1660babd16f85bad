//! The rule engine: fixed phases, exact amounts, conservation checked after
//! each phase.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::classify::{adjacent_faces, classify_face_roles, FaceRoles};
use super::{initial_charges, Charge, ChargeState, DischargeError, Element, Rule, TOTAL_CHARGE};
use crate::cycles::ForbiddenVariant;
use crate::embedding::{FaceId, PlaneEmbedding, Richness};

/// Which family of rules runs after the shared ones: `A` for graphs without
/// {4,7,8,9}-cycles, `B67`/`B68` for graphs without {4,6,7,9}- or
/// {4,6,8,9}-cycles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RuleVariant {
    A,
    B67,
    B68,
}

impl RuleVariant {
    pub const ALL: [RuleVariant; 3] = [RuleVariant::A, RuleVariant::B67, RuleVariant::B68];

    /// The cycle lengths the variant assumes absent.
    pub fn forbidden(self) -> ForbiddenVariant {
        match self {
            RuleVariant::A => ForbiddenVariant::No4789,
            RuleVariant::B67 => ForbiddenVariant::No4679,
            RuleVariant::B68 => ForbiddenVariant::No4689,
        }
    }
}

impl fmt::Display for RuleVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RuleVariant::A => "a",
            RuleVariant::B67 => "b67",
            RuleVariant::B68 => "b68",
        })
    }
}

impl FromStr for RuleVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(RuleVariant::A),
            "b67" => Ok(RuleVariant::B67),
            "b68" => Ok(RuleVariant::B68),
            _ => Err(format!("unknown variant {s:?}; expected a, b67 or b68")),
        }
    }
}

struct Run<'a> {
    emb: &'a PlaneEmbedding,
    roles: &'a FaceRoles,
    state: ChargeState,
    phase: u8,
}

fn q(n: i64, d: i64) -> Charge {
    Charge::new(n, d)
}

impl Run<'_> {
    fn len(&self, f: FaceId) -> usize {
        self.emb.face_len(f)
    }

    fn deg(&self, v: usize) -> usize {
        self.emb.graph().degree(v)
    }

    fn faces(&self) -> std::ops::Range<FaceId> {
        0..self.emb.faces().len()
    }

    fn give(&mut self, rule: Rule, from: Element, to: Element, amount: Charge) {
        self.state.give(self.phase, rule, from, to, amount);
    }

    fn end_phase(&mut self) -> Result<(), DischargeError> {
        let total = self.state.total();
        self.state.phase_totals.push(total);
        if total != Charge::from_integer(TOTAL_CHARGE) {
            return Err(DischargeError::ConservationViolated { phase: self.phase, total });
        }
        self.phase += 1;
        Ok(())
    }

    fn r1(&mut self) {
        for t in self.faces() {
            if self.len(t) != 3 {
                continue;
            }
            for g in adjacent_faces(self.emb, t) {
                if self.len(g) >= 5 {
                    self.give(Rule::R1Triangle, Element::Face(g), Element::Face(t), q(1, 3));
                }
            }
        }
        for f in self.faces() {
            if self.len(f) < 5 {
                continue;
            }
            for v in self.emb.face(f).vertices.clone() {
                if self.deg(v) >= 5 {
                    self.give(Rule::R1BigVertex, Element::Vertex(v), Element::Face(f), q(1, 5));
                }
            }
        }
    }

    fn r2(&mut self) {
        for f in self.faces() {
            if self.len(f) < 10 {
                continue;
            }
            for v in self.emb.face(f).vertices.clone() {
                if self.deg(v) < 4 {
                    continue;
                }
                let r = self.roles.richness_to(v, f).expect("classified");
                if r == Richness::SemiRich && self.roles.special[v] {
                    self.give(Rule::R2Special, Element::Vertex(v), Element::Face(f), q(1, 6));
                }
                let on_triangle = self.emb.corners(v).iter().any(|c| self.len(c.face) == 3);
                if r == Richness::Rich && self.deg(v) == 4 && on_triangle {
                    self.give(Rule::R2Rich, Element::Face(f), Element::Vertex(v), q(1, 3));
                }
            }
        }
    }

    fn r3(&mut self) {
        for p in self.roles.good_pairs.clone() {
            self.give(Rule::R3, Element::Face(p.good), Element::Face(p.poor), q(1, 6));
        }
    }

    /// 10+-face gifts to 5-faces next to 3-faces.
    fn r4a_big_to_five(&mut self) {
        let g = self.emb.graph();
        for five in self.faces() {
            if self.len(five) != 5 {
                continue;
            }
            let darts = self.emb.face(five).darts.clone();
            let mut shares_33 = false;
            let mut donors = Vec::new();
            for &d in &darts {
                let t = self.emb.across(d);
                if t == five || self.len(t) != 3 {
                    continue;
                }
                let (a, b) = self.emb.dart_ends(d);
                match (g.degree(a) == 3, g.degree(b) == 3) {
                    (true, true) => shares_33 = true,
                    (true, false) | (false, true) => {
                        let three = if g.degree(a) == 3 { a } else { b };
                        // The 3-vertex's faces other than this 5-face and
                        // the 3-face; normally exactly one.
                        if let Some(h) = self
                            .emb
                            .faces_at(three)
                            .into_iter()
                            .find(|&h| h != five && h != t && self.len(h) >= 10)
                        {
                            donors.push(h);
                        }
                    }
                    (false, false) => {}
                }
            }
            if shares_33 {
                donors.extend(adjacent_faces(self.emb, five).into_iter().filter(|&h| self.len(h) >= 10));
            }
            for h in donors {
                self.give(Rule::R4aBigToFive, Element::Face(h), Element::Face(five), q(1, 3));
            }
        }
    }

    fn r4a_triangular(&mut self) {
        for five in self.faces() {
            if self.len(five) != 5 {
                continue;
            }
            for v in self.emb.face(five).vertices.clone() {
                if self.roles.triangular[v] {
                    self.give(Rule::R4aTriangular, Element::Face(five), Element::Vertex(v), Charge::from_integer(1));
                }
            }
        }
    }

    fn r4a_remainder(&mut self) {
        for five in self.faces() {
            if self.len(five) != 5 || !self.state.face[five].is_positive() {
                continue;
            }
            let tens: Vec<FaceId> = adjacent_faces(self.emb, five).into_iter().filter(|&h| self.len(h) == 10).collect();
            if tens.is_empty() {
                continue;
            }
            let share = self.state.face[five] / Charge::from_integer(tens.len() as i64);
            for h in tens {
                self.give(Rule::R4aRemainder, Element::Face(five), Element::Face(h), share);
            }
        }
    }

    /// Each 3-vertex takes whatever it still lacks, evenly from its
    /// incident faces of length at least `min_len`.
    fn pull_to_zero(&mut self, rule: Rule, min_len: usize) {
        for v in 0..self.emb.graph().n() {
            if self.deg(v) != 3 {
                continue;
            }
            let need = -self.state.vertex[v];
            if !need.is_positive() {
                continue;
            }
            let donors: Vec<FaceId> =
                self.emb.corners(v).iter().map(|c| c.face).filter(|&f| self.len(f) >= min_len).collect();
            if donors.is_empty() {
                continue;
            }
            let share = need / Charge::from_integer(donors.len() as i64);
            for f in donors {
                self.give(rule, Element::Face(f), Element::Vertex(v), share);
            }
        }
    }

    fn r4b_vertex(&mut self) {
        for v in 0..self.emb.graph().n() {
            if self.deg(v) != 3 {
                continue;
            }
            let donors: Vec<FaceId> = self.emb.corners(v).iter().map(|c| c.face).filter(|&f| self.len(f) >= 5).collect();
            if donors.is_empty() {
                continue;
            }
            let share = Charge::new(1, donors.len() as i64);
            for f in donors {
                self.give(Rule::R4bVertex, Element::Face(f), Element::Vertex(v), share);
            }
        }
    }

    fn r4b_seven(&mut self) {
        for five in self.faces() {
            if self.len(five) != 5 {
                continue;
            }
            for h in adjacent_faces(self.emb, five) {
                if self.len(h) >= 7 {
                    self.give(Rule::R4bSeven, Element::Face(h), Element::Face(five), q(1, 6));
                }
            }
        }
    }

    fn r4b_bad(&mut self) {
        for five in self.faces() {
            if !self.roles.bad_five[five] {
                continue;
            }
            for h in adjacent_faces(self.emb, five) {
                if self.len(h) == 5 {
                    self.give(Rule::R4bBad, Element::Face(h), Element::Face(five), q(1, 12));
                }
            }
        }
    }

    /// One synchronous pass: shares are computed from the charges before
    /// the pass, so nothing received here is passed on.
    fn r4b_surplus(&mut self) {
        let before = self.state.face.clone();
        for five in self.faces() {
            if self.len(five) != 5 || !before[five].is_positive() {
                continue;
            }
            let fives: Vec<FaceId> = adjacent_faces(self.emb, five).into_iter().filter(|&h| self.len(h) == 5).collect();
            if fives.is_empty() {
                continue;
            }
            let share = before[five] / Charge::from_integer(fives.len() as i64);
            for h in fives {
                self.give(Rule::R4bSurplus, Element::Face(five), Element::Face(h), share);
            }
        }
    }
}

/// Runs every phase of `variant` from the initial charges.
pub fn apply_rules(emb: &PlaneEmbedding, variant: RuleVariant) -> Result<ChargeState, DischargeError> {
    apply_rules_with(emb, &classify_face_roles(emb), variant)
}

/// As [`apply_rules`] with precomputed roles.
pub fn apply_rules_with(
    emb: &PlaneEmbedding,
    roles: &FaceRoles,
    variant: RuleVariant,
) -> Result<ChargeState, DischargeError> {
    let mut run = Run { emb, roles, state: initial_charges(emb)?, phase: 1 };
    run.r1();
    run.end_phase()?;
    run.r2();
    run.end_phase()?;
    match variant {
        RuleVariant::A => {
            run.r4a_big_to_five();
            run.end_phase()?;
            run.r4a_triangular();
            run.end_phase()?;
            run.r4a_remainder();
            run.end_phase()?;
            run.pull_to_zero(Rule::R4aPull, 6);
            run.end_phase()?;
        }
        RuleVariant::B67 | RuleVariant::B68 => {
            run.r4b_vertex();
            run.end_phase()?;
            run.r4b_seven();
            run.end_phase()?;
            run.r4b_bad();
            run.end_phase()?;
            run.r4b_surplus();
            run.end_phase()?;
        }
    }
    run.r3();
    run.end_phase()?;
    debug_assert!(run.state.log.iter().all(|t| !t.amount.is_zero()));
    Ok(run.state)
}
