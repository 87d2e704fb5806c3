//! Long-format sweep table: one row per (clue count, metric, statistic).

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use sudoku_phase::BoardSpec;

use crate::LabError;

pub const COLUMNS: [&str; 9] = [
    "spec_id",
    "side",
    "variant",
    "clue_count",
    "metric",
    "statistic",
    "value",
    "n_samples",
    "master_seed",
];

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub spec_id: String,
    pub side: usize,
    pub variant: String,
    pub clue_count: usize,
    pub metric: String,
    /// `mean`, `variance` (unbiased), `value` or `max`.
    pub statistic: String,
    pub value: f64,
    pub n_samples: usize,
    pub master_seed: u64,
}

impl SweepRow {
    pub fn new(
        spec: BoardSpec,
        clue_count: usize,
        metric: &str,
        statistic: &str,
        value: f64,
        n_samples: usize,
        master_seed: u64,
    ) -> Self {
        Self {
            spec_id: spec.id(),
            side: spec.side(),
            variant: spec.variant().name().to_string(),
            clue_count,
            metric: metric.to_string(),
            statistic: statistic.to_string(),
            value,
            n_samples,
            master_seed,
        }
    }

    fn record(&self) -> [String; 9] {
        [
            self.spec_id.clone(),
            self.side.to_string(),
            self.variant.clone(),
            self.clue_count.to_string(),
            self.metric.clone(),
            self.statistic.clone(),
            self.value.to_string(),
            self.n_samples.to_string(),
            self.master_seed.to_string(),
        ]
    }
}

/// The CSV body (header row and data rows, no comment line).
pub fn to_csv_string(rows: &[SweepRow]) -> Result<String, LabError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(COLUMNS)?;
    for row in rows {
        w.write_record(row.record())?;
    }
    let bytes = w.into_inner().map_err(|e| LabError::Table(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| LabError::Table(e.to_string()))
}

/// Writes `# generated <timestamp>` followed by the table, atomically: the
/// file is assembled next to `path` and renamed into place.
pub fn write_csv(path: &Path, rows: &[SweepRow]) -> Result<(), LabError> {
    let body = to_csv_string(rows)?;
    let stamp = chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true);
    let werr = |source| LabError::Write {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(werr)?;
    write!(tmp, "# generated {stamp}\n{body}").map_err(werr)?;
    tmp.as_file().sync_all().map_err(werr)?;
    tmp.persist(path).map_err(|e| werr(e.error))?;
    Ok(())
}

pub fn read_csv(path: &Path) -> Result<Vec<SweepRow>, LabError> {
    let file = File::open(path).map_err(|source| LabError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    parse_csv(BufReader::new(file))
}

pub fn parse_csv(reader: impl BufRead) -> Result<Vec<SweepRow>, LabError> {
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(reader);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != COLUMNS {
        return Err(LabError::Table(format!("unexpected columns {header:?}")));
    }
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let field = |k: usize| rec.get(k).unwrap_or_default();
        let num = |k: usize| -> Result<f64, LabError> {
            field(k)
                .parse()
                .map_err(|_| LabError::Table(format!("data row {}: bad {} {:?}", i + 1, COLUMNS[k], field(k))))
        };
        let int = |k: usize| -> Result<u64, LabError> {
            field(k)
                .parse()
                .map_err(|_| LabError::Table(format!("data row {}: bad {} {:?}", i + 1, COLUMNS[k], field(k))))
        };
        rows.push(SweepRow {
            spec_id: field(0).to_string(),
            side: int(1)? as usize,
            variant: field(2).to_string(),
            clue_count: int(3)? as usize,
            metric: field(4).to_string(),
            statistic: field(5).to_string(),
            value: num(6)?,
            n_samples: int(7)? as usize,
            master_seed: int(8)?,
        });
    }
    Ok(rows)
}
