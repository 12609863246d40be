//! Fiedler vectors of trees: where the extremal entries sit, and the
//! structural criteria that predict it.

mod caterpillar;
mod census;
mod graft;
mod lconfig;
mod rose;

pub use caterpillar::{caterpillar_extrema, gencater_check, CaterpillarPrediction, GencaterReport, GencaterVerdict};
pub use census::{fed_census, random_census_trees, write_census_csv, CensusRow, CensusSummary};
pub use graft::{star_graft, StarGraft};
pub use lconfig::{l_configuration_check, LConfigReport, LConfigVerdict};
pub use rose::{
    g_path_closed_form, g_star_closed_form, rose_analysis, rose_gencater_path, rose_sweep, RoseAnalysis, RoseSweep,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{laplacian, sym_eigen};
use crate::numfmt::{round_sig, round_vec};
use crate::tree::Tree;

/// `a(T)` counts as simple when `λ_3 − λ_2 > SIMPLE_GAP · λ_n`.
pub const SIMPLE_GAP: f64 = 1e-8;
/// Absolute tolerance (unit-norm vector) for membership in the extrema sets.
pub const EXTREMA_TOL: f64 = 1e-9;

/// Fiedler-extrema-diameter verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Fed {
    /// The only extrema are the two endpoints of the unique longest path.
    Holds,
    /// `witness` is an extremal vertex off the longest path's endpoints.
    Fails { witness: usize },
    NotApplicable { reason: String },
}

impl Fed {
    pub fn label(&self) -> &'static str {
        match self {
            Fed::Holds => "holds",
            Fed::Fails { .. } => "fails",
            Fed::NotApplicable { .. } => "not_applicable",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FiedlerReport {
    pub n: usize,
    /// Algebraic connectivity `λ_2`.
    pub a: f64,
    /// `λ_3 − λ_2` (infinite for `n = 2`).
    pub gap: f64,
    pub simple: bool,
    /// Unit Fiedler vector with the sign convention applied; absent when
    /// `a(T)` is not simple.
    pub vector: Option<Vec<f64>>,
    pub argmax: Vec<usize>,
    pub argmin: Vec<usize>,
    /// Whether each vertex of `argmax ∪ argmin` (ascending) is pendant.
    pub pendant_flags: Vec<(usize, bool)>,
    pub longest_path: Vec<usize>,
    pub unique_longest_path: bool,
    pub fed: Fed,
}

/// Flips `x` so that the entry at the smallest-labeled pendant vertex is
/// positive, falling back to the first nonzero entry.
fn apply_sign_convention(t: &Tree, x: &mut [f64]) {
    let pivot = t
        .pendant_vertices()
        .into_iter()
        .map(|p| x[p])
        .find(|v| v.abs() > EXTREMA_TOL)
        .or_else(|| x.iter().copied().find(|v| v.abs() > EXTREMA_TOL));
    if let Some(p) = pivot {
        if p < 0.0 {
            x.iter_mut().for_each(|v| *v = -*v);
        }
    }
}

/// Vertices within [`EXTREMA_TOL`] of the maximum and of the minimum.
pub fn extrema_sets(x: &[f64]) -> (Vec<usize>, Vec<usize>) {
    let max = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = x.iter().copied().fold(f64::INFINITY, f64::min);
    let argmax = (0..x.len()).filter(|&v| x[v] >= max - EXTREMA_TOL).collect();
    let argmin = (0..x.len()).filter(|&v| x[v] <= min + EXTREMA_TOL).collect();
    (argmax, argmin)
}

pub fn fiedler_report(t: &Tree) -> Result<FiedlerReport> {
    let n = t.n();
    if n < 2 {
        return Err(Error::BadParams("a Fiedler vector needs n >= 2".into()));
    }
    let sp = sym_eigen(&laplacian(t))?;
    let a = sp.values[1];
    let gap = if n > 2 { sp.values[2] - sp.values[1] } else { f64::INFINITY };
    let simple = gap > SIMPLE_GAP * sp.values[n - 1];
    let longest_path = t.longest_path();
    let unique_longest_path = t.has_unique_longest_path();

    let (vector, argmax, argmin) = if simple {
        let mut x = sp.vectors[1].clone();
        apply_sign_convention(t, &mut x);
        let (mx, mn) = extrema_sets(&x);
        (Some(x), mx, mn)
    } else {
        (None, Vec::new(), Vec::new())
    };

    let mut extremal: Vec<usize> = argmax.iter().chain(&argmin).copied().collect();
    extremal.sort_unstable();
    extremal.dedup();
    let pendant_flags = extremal.iter().map(|&v| (v, t.is_pendant(v))).collect();

    let fed = if !simple {
        Fed::NotApplicable { reason: "a(T) is not simple".into() }
    } else if !unique_longest_path {
        Fed::NotApplicable { reason: "longest path is not unique".into() }
    } else {
        let ends = [longest_path[0], *longest_path.last().unwrap()];
        match extremal.iter().find(|v| !ends.contains(v)) {
            Some(&w) => Fed::Fails { witness: w },
            None if argmax.len() == 1 && argmin.len() == 1 => Fed::Holds,
            // Both endpoints tied on one side; name the endpoint that
            // should have been the other extremum.
            None => Fed::Fails { witness: extremal[0] },
        }
    };

    Ok(FiedlerReport {
        n,
        a,
        gap,
        simple,
        vector,
        argmax,
        argmin,
        pendant_flags,
        longest_path,
        unique_longest_path,
        fed,
    })
}

/// Shape of the Fiedler vector along a path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PathProfile {
    /// Entries monotone along the path.
    Monotone,
    /// Nonnegative ends, non-increasing then non-decreasing to a
    /// nonnegative minimum.
    NonnegativeValley,
    /// Nonpositive ends, non-decreasing then non-increasing to a
    /// nonpositive maximum.
    NonpositivePeak,
    /// None of the above.
    Irregular,
}

/// Classifies `x` restricted to `path`.
pub fn classify_profile(x: &[f64], path: &[usize]) -> PathProfile {
    let tol = 1e-12;
    let y: Vec<f64> = path.iter().map(|&v| x[v]).collect();
    let nonincreasing = |s: &[f64]| s.windows(2).all(|w| w[1] <= w[0] + tol);
    let nondecreasing = |s: &[f64]| s.windows(2).all(|w| w[1] >= w[0] - tol);
    if nonincreasing(&y) || nondecreasing(&y) {
        return PathProfile::Monotone;
    }
    let (first, last) = (y[0], y[y.len() - 1]);
    if first >= -tol && last >= -tol {
        let m = (0..y.len()).min_by(|&i, &j| y[i].total_cmp(&y[j])).unwrap();
        if y[m] >= -tol && nonincreasing(&y[..=m]) && nondecreasing(&y[m..]) {
            return PathProfile::NonnegativeValley;
        }
    }
    if first <= tol && last <= tol {
        let m = (0..y.len()).max_by(|&i, &j| y[i].total_cmp(&y[j])).unwrap();
        if y[m] <= tol && nondecreasing(&y[..=m]) && nonincreasing(&y[m..]) {
            return PathProfile::NonpositivePeak;
        }
    }
    PathProfile::Irregular
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PendantExtremaVerdict {
    pub pass: bool,
    /// Extremal vertices that are not pendant.
    pub offending: Vec<usize>,
    /// Profile along the longest path.
    pub profile: PathProfile,
}

/// Checks that every extremal entry sits at a pendant vertex and classifies
/// the profile along the longest path.
pub fn check_pendant_extrema(rep: &FiedlerReport, t: &Tree) -> Result<PendantExtremaVerdict> {
    let x = rep.vector.as_ref().ok_or(Error::NotSimple)?;
    if t.diameter() < 2 {
        return Err(Error::BadParams("pendant extrema need diameter >= 2".into()));
    }
    let offending: Vec<usize> = rep.pendant_flags.iter().filter(|(_, p)| !p).map(|&(v, _)| v).collect();
    Ok(PendantExtremaVerdict {
        pass: offending.is_empty(),
        offending,
        profile: classify_profile(x, &rep.longest_path),
    })
}

/// Non-pendant vertices whose entry is a strict positive local maximum or a
/// strict negative local minimum over their neighbors.
pub fn interior_local_extrema(t: &Tree, x: &[f64]) -> Vec<usize> {
    let tol = 1e-12;
    (0..t.n())
        .filter(|&v| t.degree(v) >= 2)
        .filter(|&v| {
            let nb = t.neighbors(v);
            (x[v] > tol && nb.iter().all(|&u| x[v] > x[u] + tol))
                || (x[v] < -tol && nb.iter().all(|&u| x[v] < x[u] - tol))
        })
        .collect()
}

/// Extremal vertex sets in the JSON report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremaJson {
    pub max: Vec<usize>,
    pub min: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionsJson {
    pub unique_longest_path: bool,
    pub extrema_pendant: Option<bool>,
    pub gap: f64,
    pub witness: Option<usize>,
    pub reason: Option<String>,
}

/// Stable JSON layout of a [`FiedlerReport`]; numbers carry twelve
/// significant digits.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportJson {
    pub tree: Vec<[usize; 2]>,
    pub n: usize,
    pub a: f64,
    pub simple: bool,
    pub vector: Option<Vec<f64>>,
    pub extrema: ExtremaJson,
    pub longest_path: Vec<usize>,
    pub fed: String,
    pub conditions: ConditionsJson,
}

impl FiedlerReport {
    pub fn to_json(&self, t: &Tree) -> ReportJson {
        let (witness, reason) = match &self.fed {
            Fed::Fails { witness } => (Some(*witness), None),
            Fed::NotApplicable { reason } => (None, Some(reason.clone())),
            Fed::Holds => (None, None),
        };
        ReportJson {
            tree: t.edges().iter().map(|&(u, v)| [u, v]).collect(),
            n: self.n,
            a: round_sig(self.a),
            simple: self.simple,
            vector: self.vector.as_deref().map(round_vec),
            extrema: ExtremaJson { max: self.argmax.clone(), min: self.argmin.clone() },
            longest_path: self.longest_path.clone(),
            fed: self.fed.label().to_string(),
            conditions: ConditionsJson {
                unique_longest_path: self.unique_longest_path,
                extrema_pendant: self.vector.as_ref().map(|_| self.pendant_flags.iter().all(|p| p.1)),
                gap: round_sig(if self.gap.is_finite() { self.gap } else { -1.0 }),
                witness,
                reason,
            },
        }
    }
}
