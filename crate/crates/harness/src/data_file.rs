//! Hermite data files: CSV with header `vertex_index,deriv_order,value`.

use std::io::Read;

use serde::Deserialize;
use split_spline::{HermiteData64, Partition64};

use crate::HarnessError;

#[derive(Debug, Deserialize)]
struct Record {
    vertex_index: usize,
    deriv_order: usize,
    value: f64,
}

/// Reads one value per `(vertex, order)` with `order < phi(vertex)`. Every
/// such pair must appear exactly once.
pub fn read_hermite_data(reader: impl Read, partition: &Partition64) -> Result<HermiteData64, HarnessError> {
    let phi = partition.phi();
    let mut rows: Vec<Vec<Option<f64>>> = phi.values().iter().map(|&k| vec![None; k]).collect();
    for record in csv::Reader::from_reader(reader).deserialize::<Record>() {
        let Record { vertex_index: i, deriv_order: j, value } =
            record.map_err(|e| HarnessError::Parse(format!("hermite data: {e}")))?;
        let slot = rows
            .get_mut(i)
            .and_then(|row| row.get_mut(j))
            .ok_or_else(|| HarnessError::Parse(format!("no Hermite slot for vertex {i}, order {j}")))?;
        if slot.replace(value).is_some() {
            return Err(HarnessError::Parse(format!("duplicate entry for vertex {i}, order {j}")));
        }
    }
    let rows = rows
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            row.into_iter()
                .enumerate()
                .map(|(j, v)| v.ok_or_else(|| HarnessError::Parse(format!("missing entry for vertex {i}, order {j}"))))
                .collect()
        })
        .collect::<Result<Vec<Vec<f64>>, _>>()?;
    Ok(HermiteData64::new(rows))
}
