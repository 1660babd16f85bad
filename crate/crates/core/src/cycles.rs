//! Bounded cycle-length enumeration and the forbidden-cycle hypotheses.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Vertex};

/// Largest forbidden cycle length in any of the hypothesis sets.
pub const DEFAULT_MAX_LEN: usize = 9;

/// Cycle lengths present in a graph, up to `search_bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleSpectrum {
    pub present: BTreeSet<usize>,
    pub search_bound: usize,
}

impl CycleSpectrum {
    pub fn contains(&self, len: usize) -> bool {
        self.present.contains(&len)
    }
}

impl fmt::Display for CycleSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.present.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// Exact set of cycle lengths `3..=max_len` occurring in `g`.
///
/// Every simple cycle is enumerated from its smallest vertex, growing paths
/// through larger vertices only. Search stops early once every length in
/// range has been witnessed.
pub fn cycle_spectrum(g: &Graph, max_len: usize) -> CycleSpectrum {
    assert!(max_len >= 3, "max_len must be at least 3");
    let mut present = BTreeSet::new();
    let mut on_path = vec![false; g.n()];
    let wanted = max_len - 2;
    for start in 0..g.n() {
        if present.len() == wanted {
            break;
        }
        on_path[start] = true;
        extend(g, start, start, 1, max_len, &mut on_path, &mut present, wanted);
        on_path[start] = false;
    }
    CycleSpectrum { present, search_bound: max_len }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    start: Vertex,
    tip: Vertex,
    len: usize,
    max_len: usize,
    on_path: &mut [bool],
    present: &mut BTreeSet<usize>,
    wanted: usize,
) {
    for &w in g.neighbors(tip) {
        if w == start && len >= 3 {
            present.insert(len);
            if present.len() == wanted {
                return;
            }
        } else if w > start && !on_path[w] && len < max_len {
            on_path[w] = true;
            extend(g, start, w, len + 1, max_len, on_path, present, wanted);
            on_path[w] = false;
            if present.len() == wanted {
                return;
            }
        }
    }
}

/// The three forbidden-cycle hypothesis sets `{4, a, b, 9}` with
/// `a, b` distinct in `{6, 7, 8}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ForbiddenVariant {
    /// No cycles of length 4, 6, 7 or 9.
    No4679,
    /// No cycles of length 4, 6, 8 or 9.
    No4689,
    /// No cycles of length 4, 7, 8 or 9.
    No4789,
}

impl ForbiddenVariant {
    pub const ALL: [ForbiddenVariant; 3] =
        [ForbiddenVariant::No4679, ForbiddenVariant::No4689, ForbiddenVariant::No4789];

    pub fn lengths(self) -> [usize; 4] {
        match self {
            ForbiddenVariant::No4679 => [4, 6, 7, 9],
            ForbiddenVariant::No4689 => [4, 6, 8, 9],
            ForbiddenVariant::No4789 => [4, 7, 8, 9],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ForbiddenVariant::No4679 => "{4,6,7,9}",
            ForbiddenVariant::No4689 => "{4,6,8,9}",
            ForbiddenVariant::No4789 => "{4,7,8,9}",
        }
    }

    pub fn is_satisfied_by(self, spectrum: &CycleSpectrum) -> bool {
        debug_assert!(spectrum.search_bound >= 9);
        self.lengths().iter().all(|&l| !spectrum.contains(l))
    }
}

impl fmt::Display for ForbiddenVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ForbiddenVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim_matches(|c| c == '{' || c == '}').replace(',', "").as_str() {
            "4679" => Ok(ForbiddenVariant::No4679),
            "4689" => Ok(ForbiddenVariant::No4689),
            "4789" => Ok(ForbiddenVariant::No4789),
            other => Err(format!("unknown forbidden-cycle set `{other}`")),
        }
    }
}

/// Which hypothesis sets `g` satisfies (no cycle of any listed length).
pub fn forbidden_variant(g: &Graph) -> BTreeSet<ForbiddenVariant> {
    let spectrum = cycle_spectrum(g, DEFAULT_MAX_LEN);
    satisfied_variants(&spectrum)
}

pub fn satisfied_variants(spectrum: &CycleSpectrum) -> BTreeSet<ForbiddenVariant> {
    ForbiddenVariant::ALL
        .into_iter()
        .filter(|v| v.is_satisfied_by(spectrum))
        .collect()
}
