//! Dataset CSV: header `label,c1,...,cm`, one point per row.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::geometry::{Dataset, Dissimilarity};
use crate::hierarchy::Label;

pub fn read_dataset_csv<R: Read>(reader: R, kind: Dissimilarity) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header = rdr.headers()?.clone();
    if header.get(0) != Some("label") || header.len() < 2 {
        return Err(Error::parse(0, "header must be label,c1,...,cm"));
    }
    let mut points = Vec::new();
    for record in rdr.records() {
        let record = record?;
        let pos = record.position().map_or(0, |p| p.byte() as usize);
        let label: Label = record[0]
            .parse()
            .map_err(|_| Error::parse(pos, format!("bad label {:?}", &record[0])))?;
        let coords = record
            .iter()
            .skip(1)
            .map(|f| {
                f.parse::<f64>()
                    .map_err(|_| Error::parse(pos, format!("bad coordinate {f:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        points.push((label, coords));
    }
    Dataset::new(points, kind)
}

pub fn write_dataset_csv<W: Write>(writer: W, data: &Dataset) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let mut header = vec!["label".to_string()];
    header.extend((1..=data.dim()).map(|k| format!("c{k}")));
    w.write_record(&header)?;
    for (label, x) in data.points() {
        let mut row = vec![label.to_string()];
        row.extend(x.iter().map(|v| format!("{v:?}")));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
