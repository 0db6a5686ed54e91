use std::io::{self, Write};

use super::gapfit::GapPoint;
use super::scan::{Quantity, ScanRow};
use crate::spectrum::Boundary;

pub const SCAN_HEADER: &str = "alpha,gamma,quantity,value,status";
pub const GAP_HEADER: &str = "n,boundary,alpha,gamma,gap,n_times_gap";

/// 17 significant digits, enough to round-trip an f64.
pub fn format_value(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else {
        format!("{v:.16e}")
    }
}

pub fn write_scan_csv<W: Write>(mut w: W, quantity: Quantity, rows: &[ScanRow]) -> io::Result<()> {
    writeln!(w, "{SCAN_HEADER}")?;
    for r in rows {
        writeln!(w, "{},{},{},{},{}", format_value(r.alpha), format_value(r.gamma), quantity, format_value(r.value), r.status.as_str())?;
    }
    Ok(())
}

/// One (α, γ) gap series of a gap CSV.
#[derive(Debug, Clone, Copy)]
pub struct GapSeries<'a> {
    pub alpha: f64,
    pub gamma: f64,
    pub boundary: Boundary,
    pub points: &'a [GapPoint],
}

/// All series under a single header, in the order given.
pub fn write_gap_csv<W: Write>(mut w: W, series: &[GapSeries<'_>]) -> io::Result<()> {
    writeln!(w, "{GAP_HEADER}")?;
    for s in series {
        for p in s.points {
            writeln!(
                w,
                "{},{},{},{},{},{}",
                p.n,
                s.boundary,
                format_value(s.alpha),
                format_value(s.gamma),
                format_value(p.gap),
                format_value(p.gap * p.n as f64)
            )?;
        }
    }
    Ok(())
}
