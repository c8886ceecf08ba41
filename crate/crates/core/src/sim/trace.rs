use std::io::Write;

use serde::Serialize;

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EventKind {
    Arrival,
    Success,
    Collision,
    Drop,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceEvent {
    #[serde(rename = "time_us")]
    pub time: f64,
    pub event: EventKind,
    pub station_id: usize,
    pub queue_len: usize,
}

/// Writes `time_us,event,station_id,queue_len` rows with a header.
pub fn write_trace_csv<W: Write>(events: &[TraceEvent], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for event in events {
        writer.serialize(event)?;
    }
    writer.flush()?;
    Ok(())
}
