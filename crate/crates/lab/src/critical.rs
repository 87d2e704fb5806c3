//! Locating transitions in sweep tables.

use crate::table::SweepRow;
use crate::LabError;

/// Metrics that move from one plateau to another; their critical point is
/// the 0.5 crossing. Everything else is located by its maximum.
pub const SIGMOIDAL: [&str; 3] = ["backbone_fraction", "lp_integral", "freq_guess"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriticalKind {
    Peak,
    HalfCrossing,
}

pub fn kind_of(metric: &str) -> CriticalKind {
    if SIGMOIDAL.contains(&metric) {
        CriticalKind::HalfCrossing
    } else {
        CriticalKind::Peak
    }
}

/// `(clue_count, value)` pairs of one metric/statistic, sorted, checked to be
/// from a single board spec and evenly spaced.
pub fn series(rows: &[SweepRow], metric: &str, statistic: &str) -> Result<Vec<(usize, f64)>, LabError> {
    let selected: Vec<&SweepRow> = rows
        .iter()
        .filter(|r| r.metric == metric && r.statistic == statistic)
        .collect();
    let Some(first) = selected.first() else {
        return Err(LabError::Critical(format!("no rows for {metric}/{statistic}")));
    };
    if let Some(other) = selected.iter().find(|r| r.spec_id != first.spec_id) {
        return Err(LabError::Critical(format!(
            "rows mix {} and {}",
            first.spec_id, other.spec_id
        )));
    }
    let mut points: Vec<(usize, f64)> = selected.iter().map(|r| (r.clue_count, r.value)).collect();
    points.sort_by_key(|p| p.0);
    if points.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(LabError::Critical("duplicate clue counts".into()));
    }
    if points.len() > 2 {
        let stride = points[1].0 - points[0].0;
        if points.windows(2).any(|w| w[1].0 - w[0].0 != stride) {
            return Err(LabError::Critical("clue counts are not evenly spaced".into()));
        }
    }
    Ok(points)
}

/// Critical clue count of `metric`: the argmax of the statistic for peaked
/// metrics (lowest clue count on ties), the linearly interpolated first 0.5
/// crossing for sigmoidal ones.
pub fn critical_point(rows: &[SweepRow], metric: &str, statistic: &str) -> Result<f64, LabError> {
    let points = series(rows, metric, statistic)?;
    match kind_of(metric) {
        CriticalKind::Peak => Ok(argmax(&points) as f64),
        CriticalKind::HalfCrossing => {
            half_crossing(&points).ok_or_else(|| LabError::Critical(format!("{metric} never crosses 0.5")))
        }
    }
}

pub fn argmax(points: &[(usize, f64)]) -> usize {
    let mut best = points[0];
    for &p in &points[1..] {
        if p.1 > best.1 {
            best = p;
        }
    }
    best.0
}

pub fn half_crossing(points: &[(usize, f64)]) -> Option<f64> {
    points.windows(2).find_map(|w| {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        let (a, b) = (y0 - 0.5, y1 - 0.5);
        if a == 0.0 {
            Some(x0 as f64)
        } else if a * b < 0.0 || b == 0.0 {
            Some(x0 as f64 + (x1 - x0) as f64 * a / (a - b))
        } else {
            None
        }
    })
}
