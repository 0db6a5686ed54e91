//! Parameter scans, gap series and finite-size fits, CSV output and
//! plot-script generation.

mod figures;
mod gapfit;
mod output;
mod scan;

pub use figures::{figure, plot_script, Figure, PlotKind, FIGURES};
pub use gapfit::{count_local_minima, fit_gap_scaling, gap_series, geometric_ladder, range_sensitivity, GapFit, GapPoint, RangeFit};
pub use output::{format_value, write_gap_csv, write_scan_csv, GapSeries, GAP_HEADER, SCAN_HEADER};
pub use scan::{scan, AxisRange, Quantity, ScanGrid, ScanRow, Status};
