//! Two-column `x,y` CSV input.

use std::io::Read;

use monotone_index::SamplePairs;

use crate::error::CliError;

/// Reads `x,y` rows with a dot decimal separator. A first row that does not
/// parse as two numbers is taken as a header; any later such row is an error.
/// Lines starting with `#` are skipped.
pub fn read_pairs<R: Read>(reader: R) -> Result<SamplePairs, CliError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .flexible(true)
        .from_reader(reader);

    let mut pairs = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| CliError::Input(e.to_string()))?;
        let line = record.position().map_or(i as u64 + 1, |p| p.line());
        if record.len() != 2 {
            return Err(CliError::Input(format!(
                "line {line}: expected 2 columns, found {}",
                record.len()
            )));
        }
        let parsed = (record[0].parse::<f64>(), record[1].parse::<f64>());
        match parsed {
            (Ok(x), Ok(y)) => pairs.push((x, y)),
            _ if i == 0 => continue,
            _ => return Err(CliError::Input(format!("line {line}: not a pair of numbers"))),
        }
    }
    if pairs.len() < 2 {
        return Err(CliError::Input(format!(
            "need at least 2 data rows, found {}",
            pairs.len()
        )));
    }
    SamplePairs::new(pairs).map_err(|e| CliError::Input(e.to_string()))
}
