use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use super::{map_to_orl, PipelineError, SrlRecord};

pub const SRL_HEADER: [&str; 6] = [
    "sentence",
    "treebanked_sentence",
    "predicate",
    "arg0",
    "arg1",
    "merged_arguments",
];

pub const ORL_HEADER: [&str; 5] = [
    "sentence",
    "treebanked_sentence",
    "holder",
    "expression",
    "target",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Schema {
    #[default]
    Srl,
    Orl,
}

impl FromStr for Schema {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "srl" => Ok(Schema::Srl),
            "orl" => Ok(Schema::Orl),
            other => Err(format!("unknown schema {other:?} (expected `srl` or `orl`)")),
        }
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Schema::Srl => "srl",
            Schema::Orl => "orl",
        })
    }
}

/// Writes a header row and one row per record.
pub fn write_csv<W: Write>(records: &[SrlRecord], out: W, schema: Schema) -> Result<(), csv::Error> {
    let mut w = csv::WriterBuilder::new()
        .quote_style(csv::QuoteStyle::Necessary)
        .from_writer(out);
    match schema {
        Schema::Srl => {
            w.write_record(SRL_HEADER)?;
            for r in records {
                w.write_record([
                    &r.sentence,
                    &r.treebanked_sentence,
                    &r.predicate,
                    &r.arg0,
                    &r.arg1,
                    &r.merged_arguments,
                ])?;
            }
        }
        Schema::Orl => {
            w.write_record(ORL_HEADER)?;
            for r in records.iter().map(map_to_orl) {
                w.write_record([
                    &r.sentence,
                    &r.treebanked_sentence,
                    &r.holder,
                    &r.expression,
                    &r.target,
                ])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

pub fn export_csv(records: &[SrlRecord], path: &Path, schema: Schema) -> Result<(), PipelineError> {
    let io_err = |source: io::Error| PipelineError::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(io_err)?;
    let mut out = BufWriter::new(file);
    write_csv(records, &mut out, schema)?;
    out.flush().map_err(io_err)
}

/// Reads an exported dataset back. Accepts either schema's header; ORL rows
/// are mapped back onto ARG0/REL/ARG1.
pub fn read_dataset_csv(path: &Path) -> Result<Vec<SrlRecord>, PipelineError> {
    let file = File::open(path).map_err(|source| PipelineError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_dataset(file)
}

/// Reads an SRL or ORL dataset from any reader.
pub fn read_dataset<R: io::Read>(input: R) -> Result<Vec<SrlRecord>, PipelineError> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    let schema = if header == SRL_HEADER {
        Schema::Srl
    } else if header == ORL_HEADER {
        Schema::Orl
    } else {
        return Err(PipelineError::HeaderMismatch {
            expected: SRL_HEADER.join(","),
            found: header.join(","),
        });
    };
    let mut records = Vec::new();
    for row in rdr.records() {
        let row = row?;
        let f = |i: usize| row.get(i).unwrap_or("").to_string();
        let record = match schema {
            Schema::Srl => SrlRecord::new(f(0), f(1), f(2), f(3), f(4), None),
            Schema::Orl => SrlRecord::new(f(0), f(1), f(3), f(2), f(4), None),
        };
        records.push(record);
    }
    Ok(records)
}
