use serde::{Deserialize, Serialize};

use crate::correlation::SpectrumKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// Predicted and observed values of one correlation function over every shift.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Series {
    pub quantity: String,
    pub kind: SpectrumKind,
    pub period: usize,
    pub predicted: Vec<i64>,
    pub observed: Vec<i64>,
}

impl Series {
    pub fn new(quantity: &str, kind: SpectrumKind, predicted: Vec<i64>, observed: Vec<i64>) -> Self {
        assert_eq!(predicted.len(), observed.len(), "series {quantity}: length mismatch");
        Self {
            quantity: quantity.to_string(),
            kind,
            period: observed.len(),
            predicted,
            observed,
        }
    }

    pub fn mismatched_shifts(&self) -> Vec<usize> {
        (0..self.period)
            .filter(|&i| self.predicted[i] != self.observed[i])
            .collect()
    }
}

/// One `(shift, predicted, observed)` comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ReportRow<'a> {
    pub quantity: &'a str,
    pub shift: usize,
    pub predicted: i64,
    pub observed: i64,
    pub matches: bool,
}

/// A yes/no sub-check that is not a per-shift comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, status: Status, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            status,
            detail: detail.into(),
        }
    }
}

/// Mismatch counts for competing readings of one table row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReadingExperiment {
    pub row: String,
    pub rows_compared: usize,
    pub candidates: Vec<ReadingCandidate>,
    /// Candidates with zero mismatches.
    pub matching: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReadingCandidate {
    pub index: String,
    pub mismatches: usize,
}

/// Parameters of the instance a report was produced for.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub description: String,
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(rename = "T")]
    pub t: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regime: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c1: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d0: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition: Option<u8>,
    /// Column balances `d(a_0), ..., d(a_{T-1})` with column 0 as used.
    pub balances: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub instance: Instance,
    pub series: Vec<Series>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub experiments: Vec<ReadingExperiment>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
    pub mismatches: usize,
    pub verdict: Status,
}

impl TheoremReport {
    /// Assembles a report; mismatches count differing series entries plus
    /// failed checks, and the verdict is pass iff that count is zero.
    pub fn new(
        theorem: &str,
        instance: Instance,
        series: Vec<Series>,
        checks: Vec<Check>,
    ) -> Self {
        let mismatches = series.iter().map(|s| s.mismatched_shifts().len()).sum::<usize>()
            + checks.iter().filter(|c| c.status == Status::Fail).count();
        Self {
            theorem: theorem.to_string(),
            instance,
            series,
            checks,
            experiments: Vec::new(),
            notes: Vec::new(),
            mismatches,
            verdict: Status::from_bool(mismatches == 0),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Status::Pass
    }

    /// Every compared `(quantity, shift)` pair.
    pub fn rows(&self) -> impl Iterator<Item = ReportRow<'_>> {
        self.series.iter().flat_map(|s| {
            (0..s.period).map(move |shift| ReportRow {
                quantity: &s.quantity,
                shift,
                predicted: s.predicted[shift],
                observed: s.observed[shift],
                matches: s.predicted[shift] == s.observed[shift],
            })
        })
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Short human-readable summary.
    pub fn summary(&self) -> String {
        let mut out = format!(
            "{} [{}]: {} ({} mismatches, {} rows)\n",
            self.theorem,
            self.instance.description,
            match self.verdict {
                Status::Pass => "PASS",
                _ => "FAIL",
            },
            self.mismatches,
            self.rows().count()
        );
        for s in &self.series {
            let bad = s.mismatched_shifts();
            out.push_str(&format!("  {}: {} shifts, {} mismatched", s.quantity, s.period, bad.len()));
            if let Some(&first) = bad.first() {
                out.push_str(&format!(
                    " (first at {first}: predicted {}, observed {})",
                    s.predicted[first], s.observed[first]
                ));
            }
            out.push('\n');
        }
        for c in &self.checks {
            out.push_str(&format!("  {} {:?}: {}\n", c.name, c.status, c.detail));
        }
        for e in &self.experiments {
            let cands: Vec<String> = e
                .candidates
                .iter()
                .map(|c| format!("{}={}", c.index, c.mismatches))
                .collect();
            out.push_str(&format!(
                "  reading {} over {} rows: {} -> matching {:?}\n",
                e.row,
                e.rows_compared,
                cands.join(", "),
                e.matching
            ));
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        out
    }
}
