use std::fmt;
use std::str::FromStr;

use crate::closedform::{circle_derivative, ground_energy, magnetization, susceptibility, ModelParams};
use crate::error::{Error, Result};
use crate::parallel::Execution;
use crate::spectrum::{gap, Boundary, ChainSpec};

/// `count` equally spaced values from `lo` to `hi` inclusive. A single
/// value is allowed only for a degenerate range `lo == hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisRange {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl AxisRange {
    pub fn new(lo: f64, hi: f64, count: usize) -> Result<Self> {
        let r = Self { lo, hi, count };
        r.validate("range")?;
        Ok(r)
    }

    fn validate(&self, what: &str) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite()) {
            return Err(Error::Invalid(format!("{what}: bounds must be finite")));
        }
        if self.count < 2 && !(self.count == 1 && self.lo == self.hi) {
            return Err(Error::Invalid(format!("{what}: count must be >= 2 unless lo == hi, got {}", self.count)));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.lo];
        }
        let step = (self.hi - self.lo) / (self.count - 1) as f64;
        (0..self.count).map(|i| if i + 1 == self.count { self.hi } else { self.lo + step * i as f64 }).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    Energy,
    Magnetization,
    Susceptibility,
    /// Δ_N of a finite chain.
    Gap {
        n_sites: usize,
        boundary: Boundary,
    },
    /// ∂^order ε_g/∂α^order on the circle; depends on γ only.
    CircleDerivative {
        order: u32,
    },
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Energy => f.write_str("energy"),
            Quantity::Magnetization => f.write_str("magnetization"),
            Quantity::Susceptibility => f.write_str("susceptibility"),
            Quantity::Gap { n_sites, boundary } => write!(f, "gap_{boundary}_{n_sites}"),
            Quantity::CircleDerivative { order } => write!(f, "circle_derivative_{order}"),
        }
    }
}

impl FromStr for Quantity {
    type Err = Error;

    /// Accepts the names produced by `Display`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "energy" => return Ok(Quantity::Energy),
            "magnetization" => return Ok(Quantity::Magnetization),
            "susceptibility" => return Ok(Quantity::Susceptibility),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("circle_derivative_") {
            let order = rest.parse().map_err(|_| Error::Invalid(format!("bad derivative order in '{s}'")))?;
            return Ok(Quantity::CircleDerivative { order });
        }
        if let Some(rest) = s.strip_prefix("gap_") {
            if let Some((b, n)) = rest.split_once('_') {
                let boundary = b.parse()?;
                let n_sites = n.parse().map_err(|_| Error::Invalid(format!("bad chain length in '{s}'")))?;
                return Ok(Quantity::Gap { n_sites, boundary });
            }
        }
        Err(Error::Invalid(format!(
            "unknown quantity '{s}' (energy, magnetization, susceptibility, gap_<open|cyclic>_<N>, circle_derivative_<order>)"
        )))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanGrid {
    pub alpha: AxisRange,
    pub gamma: AxisRange,
    pub quantity: Quantity,
}

impl ScanGrid {
    pub fn validate(&self) -> Result<()> {
        self.alpha.validate("alpha range")?;
        self.gamma.validate("gamma range")?;
        if self.gamma.lo.abs() > 1.0 || self.gamma.hi.abs() > 1.0 {
            return Err(Error::Invalid("gamma range must lie in [-1, 1]".into()));
        }
        match self.quantity {
            Quantity::Gap { n_sites, boundary } => {
                ChainSpec::new(n_sites, boundary)?;
            }
            Quantity::CircleDerivative { order } if !(2..=crate::closedform::MAX_CIRCLE_ORDER).contains(&order) => {
                return Err(Error::Invalid(format!("circle derivative order {order} outside 2..=60")));
            }
            _ => {}
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.alpha.count * self.gamma.count
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Ok,
    DivergentLine,
    DomainError,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::DivergentLine => "divergent_line",
            Status::DomainError => "domain_error",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub alpha: f64,
    pub gamma: f64,
    /// NaN unless `status` is `Ok`.
    pub value: f64,
    pub status: Status,
}

fn evaluate(q: Quantity, alpha: f64, gamma: f64) -> Result<f64> {
    let p = ModelParams::new(alpha, gamma)?;
    match q {
        Quantity::Energy => Ok(ground_energy(p)),
        Quantity::Magnetization => Ok(magnetization(p)),
        Quantity::Susceptibility => susceptibility(p),
        Quantity::Gap { n_sites, boundary } => gap(p, ChainSpec::new(n_sites, boundary)?),
        Quantity::CircleDerivative { order } => circle_derivative(order, gamma.abs()),
    }
}

/// Evaluates the grid quantity at every node, α-major. Nodes where the
/// quantity diverges or is undefined are flagged rather than failing the scan.
pub fn scan(grid: &ScanGrid, exec: Execution) -> Result<Vec<ScanRow>> {
    grid.validate()?;
    let alphas = grid.alpha.values();
    let gammas = grid.gamma.values();
    let ng = gammas.len();
    Ok(exec.map_range(grid.len(), |i| {
        let (alpha, gamma) = (alphas[i / ng], gammas[i % ng]);
        match evaluate(grid.quantity, alpha, gamma) {
            Ok(value) => ScanRow { alpha, gamma, value, status: Status::Ok },
            Err(e) => {
                let status = match e {
                    Error::Divergent { .. } => Status::DivergentLine,
                    _ => Status::DomainError,
                };
                ScanRow { alpha, gamma, value: f64::NAN, status }
            }
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(q: Quantity) -> ScanGrid {
        ScanGrid { alpha: AxisRange::new(0.0, 2.0, 11).unwrap(), gamma: AxisRange::new(0.0, 1.0, 6).unwrap(), quantity: q }
    }

    #[test]
    fn ordering_is_alpha_major() {
        let rows = scan(&grid(Quantity::Energy), Execution::Parallel).unwrap();
        assert_eq!(rows.len(), 66);
        assert_eq!((rows[0].alpha, rows[0].gamma), (0.0, 0.0));
        assert_eq!((rows[1].alpha, rows[1].gamma), (0.0, 0.2));
        assert_eq!((rows[6].alpha, rows[6].gamma), (0.2, 0.0));
        assert_eq!(rows[65].alpha, 2.0);
    }

    #[test]
    fn circle_node_is_minus_half() {
        let g = ScanGrid {
            alpha: AxisRange::new(0.0, 1.2, 7).unwrap(),
            gamma: AxisRange::new(0.0, 1.0, 6).unwrap(),
            quantity: Quantity::Energy,
        };
        let rows = scan(&g, Execution::Sequential).unwrap();
        let node = rows.iter().find(|r| (r.alpha - 0.6).abs() < 1e-12 && (r.gamma - 0.8).abs() < 1e-12).unwrap();
        assert_eq!(node.value, -0.5);
    }

    #[test]
    fn divergences_are_flagged() {
        let rows = scan(&grid(Quantity::Susceptibility), Execution::Parallel).unwrap();
        for r in &rows {
            let on_line = (r.alpha - 1.0).abs() < 1e-12;
            assert_eq!(r.status == Status::DivergentLine, on_line, "{r:?}");
            if r.status == Status::Ok {
                assert!(r.value >= 0.0);
            }
        }
        let rows = scan(&grid(Quantity::CircleDerivative { order: 3 }), Execution::Parallel).unwrap();
        assert!(rows.iter().filter(|r| r.gamma == 0.0 || r.gamma == 1.0).all(|r| r.status == Status::DomainError));
    }

    #[test]
    fn magnetization_zero_field_row() {
        let rows = scan(&grid(Quantity::Magnetization), Execution::Parallel).unwrap();
        assert!(rows.iter().filter(|r| r.alpha == 0.0).all(|r| r.value == 0.0));
    }

    #[test]
    fn modes_agree_bitwise() {
        let q = Quantity::Gap { n_sites: 12, boundary: Boundary::Open };
        let a = scan(&grid(q), Execution::Parallel).unwrap();
        let b = scan(&grid(q), Execution::Sequential).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.value.to_bits(), y.value.to_bits());
        }
    }

    #[test]
    fn quantity_names_round_trip() {
        for q in [
            Quantity::Energy,
            Quantity::Magnetization,
            Quantity::Susceptibility,
            Quantity::Gap { n_sites: 20, boundary: Boundary::Open },
            Quantity::Gap { n_sites: 8, boundary: Boundary::CCyclic },
            Quantity::CircleDerivative { order: 4 },
        ] {
            assert_eq!(q.to_string().parse::<Quantity>().unwrap(), q);
        }
        assert!("entropy".parse::<Quantity>().is_err());
    }

    #[test]
    fn grid_validation() {
        assert!(AxisRange::new(0.0, 1.0, 1).is_err());
        assert_eq!(AxisRange::new(0.5, 0.5, 1).unwrap().values(), vec![0.5]);
        let mut g = grid(Quantity::Energy);
        g.gamma.hi = 1.5;
        assert!(scan(&g, Execution::Sequential).is_err());
        let g = grid(Quantity::Gap { n_sites: 1, boundary: Boundary::Open });
        assert!(scan(&g, Execution::Sequential).is_err());
    }
}
