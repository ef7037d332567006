use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::{CliError, Format};

/// A row type with a fixed column order.
pub trait Table: Serialize {
    const COLUMNS: &'static [&'static str];
}

impl Table for rendezvous_core::analysis::ScalingRow {
    const COLUMNS: &'static [&'static str] = &rendezvous_core::analysis::SCALING_COLUMNS;
}

/// Writes `rows` as CSV (header always present) or as a JSON array of
/// objects, ending with a newline.
pub fn emit_to<T: Table, W: Write>(rows: &[T], format: Format, out: W) -> io::Result<()> {
    let mut out = BufWriter::new(out);
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(&mut out);
            w.write_record(T::COLUMNS)?;
            for row in rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, rows)?;
            out.write_all(b"\n")?;
        }
    }
    out.flush()
}

/// [`emit_to`] on a file, or on stdout when `path` is `None`.
pub fn emit<T: Table>(rows: &[T], path: Option<&Path>, format: Format) -> Result<(), CliError> {
    match path {
        None => emit_to(rows, format, io::stdout().lock())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
        Some(p) => File::create(p)
            .and_then(|f| emit_to(rows, format, f))
            .map_err(|source| CliError::Io { path: p.to_path_buf(), source }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rendezvous_core::analysis::ScalingRow;

    fn row() -> ScalingRow {
        ScalingRow {
            n: 15.0,
            f: 24_489,
            seed: 42,
            t_total: 123.456789012345,
            t_1a: 18.0,
            t_1b: 20.5,
            t_1c: 70.25,
            t_wave: 9.0,
            t_travel: 5.706789012345,
            success: true,
            leader_count: 1,
            blue_count: 300,
            pink_count: 12,
            boundary_count: 140,
        }
    }

    fn render(rows: &[ScalingRow], format: Format) -> String {
        let mut buf = Vec::new();
        emit_to(rows, format, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn empty_table_is_header_only() {
        assert_eq!(
            render(&[], Format::Csv),
            "n,f,seed,t_total,t_1A,t_1B,t_1C,t_wave,t_travel,success,leader_count,blue_count,pink_count,boundary_count\n"
        );
        assert_eq!(render(&[], Format::Json), "[]\n");
    }

    #[test]
    fn csv_round_trip() {
        let text = render(&[row()], Format::Csv);
        let mut rdr = csv::Reader::from_reader(text.as_bytes());
        assert_eq!(rdr.headers().unwrap().len(), 14);
        let back: Vec<ScalingRow> = rdr.deserialize().collect::<Result<_, _>>().unwrap();
        assert_eq!(back, vec![row()]);
    }

    #[test]
    fn json_keys_match_csv_header() {
        let text = render(&[row()], Format::Json);
        assert!(text.ends_with('\n'));
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let obj = v.as_array().unwrap()[0].as_object().unwrap();
        let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        let mut cols = ScalingRow::COLUMNS.to_vec();
        keys.sort_unstable();
        cols.sort_unstable();
        assert_eq!(keys, cols);
        let back: Vec<ScalingRow> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, vec![row()]);
    }
}
