//! Worked-example table, Werner-family sweep and isospectral comparison.

use std::f64::consts::LN_2;

use serde::Serialize;

use crate::concurrence::{concurrence, lambda_spectrum};
use crate::entropy::{conditional_tsallis, entropy_difference, mutual_entropy, tsallis_infinity_criterion};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, partial_transpose, DensityMatrix, Subsystem};
use crate::states::{example_state, isospectral_pair, werner, ExampleId};
use crate::structure::quantum_deficit;
use crate::tolerance::Tolerances;

pub const CLOSED_FORM_TOL: f64 = 1e-10;
pub const PRINTED_TOL: f64 = 1e-4;

/// One computed quantity with its closed form and, where the table prints
/// one, the printed decimal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cell {
    pub name: &'static str,
    pub computed: f64,
    pub closed_form: f64,
    pub printed: Option<f64>,
}

impl Cell {
    pub fn closed_form_ok(&self, tol: &Tolerances) -> bool {
        (self.computed - self.closed_form).abs() <= tol.bound(CLOSED_FORM_TOL)
    }

    pub fn printed_ok(&self, tol: &Tolerances) -> bool {
        self.printed
            .is_none_or(|x| (self.computed - x).abs() <= tol.bound(PRINTED_TOL))
    }

    pub fn ok(&self, tol: &Tolerances) -> bool {
        self.closed_form_ok(tol) && self.printed_ok(tol)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub id: ExampleId,
    pub cells: Vec<Cell>,
}

impl TableRow {
    pub fn ok(&self, tol: &Tolerances) -> bool {
        self.cells.iter().all(|c| c.ok(tol))
    }
}

struct Expected {
    concurrence: f64,
    diff_a: f64,
    diff_b: f64,
    deficit: f64,
    mutual: f64,
    printed_deficit: Option<f64>,
    printed_mutual: Option<f64>,
}

fn expected(id: ExampleId) -> Expected {
    let (ln2, ln3, ln5) = (LN_2, 3f64.ln(), 5f64.ln());
    let h_third = (3.0 * ln3 - 2.0 * ln2) / (3.0 * ln2);
    match id {
        ExampleId::E1 => Expected {
            concurrence: 2.0 / 3.0,
            diff_a: -(5.0 / 6.0) * (5.0f64 / 4.0).ln(),
            diff_b: 0.0,
            deficit: (5.0 * ln5 - 8.0 * ln2) / (6.0 * ln2),
            mutual: h_third,
            printed_deficit: Some(0.6016),
            printed_mutual: Some(0.9182),
        },
        ExampleId::E2 => Expected {
            concurrence: 1.0 / 3.0,
            diff_a: (5.0 / 6.0) * (5.0f64 / 4.0).ln(),
            diff_b: (5.0 / 6.0) * (5.0f64 / 4.0).ln(),
            deficit: 1.0 / 3.0,
            mutual: (3.0 * ln3 + 8.0 * ln2 - 5.0 * ln5) / (3.0 * ln2),
            printed_deficit: None,
            printed_mutual: Some(0.3817),
        },
        ExampleId::E3 => Expected {
            concurrence: 2.0 / 3.0,
            diff_a: 0.0,
            diff_b: 0.0,
            deficit: 2.0 / 3.0,
            mutual: h_third,
            printed_deficit: None,
            printed_mutual: Some(0.9183),
        },
        ExampleId::E4 => Expected {
            concurrence: 1.0,
            diff_a: -ln2,
            diff_b: -ln2,
            deficit: 1.0,
            mutual: 2.0,
            printed_deficit: None,
            printed_mutual: None,
        },
        ExampleId::E5 => Expected {
            concurrence: 0.0,
            diff_a: ln2,
            diff_b: 0.0,
            deficit: 0.0,
            mutual: 0.0,
            printed_deficit: None,
            printed_mutual: None,
        },
        ExampleId::E6 => Expected {
            concurrence: 0.0,
            diff_a: 0.0,
            diff_b: 0.0,
            deficit: 0.0,
            mutual: 1.0,
            printed_deficit: None,
            printed_mutual: None,
        },
    }
}

pub fn table_row(id: ExampleId) -> Result<TableRow> {
    let rho = example_state(id);
    let e = expected(id);
    let cell = |name, computed, closed_form, printed| Cell {
        name,
        computed,
        closed_form,
        printed,
    };
    Ok(TableRow {
        id,
        cells: vec![
            cell("concurrence", concurrence(&rho)?, e.concurrence, None),
            cell("entropy_diff_a", entropy_difference(&rho, Subsystem::A, 1.0)?, e.diff_a, None),
            cell("entropy_diff_b", entropy_difference(&rho, Subsystem::B, 1.0)?, e.diff_b, None),
            cell("deficit_over_ln2", quantum_deficit(&rho)? / LN_2, e.deficit, e.printed_deficit),
            cell("mutual_over_ln2", mutual_entropy(&rho)? / LN_2, e.mutual, e.printed_mutual),
        ],
    })
}

pub fn table1() -> Result<Vec<TableRow>> {
    ExampleId::ALL.into_iter().map(table_row).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WernerRow {
    pub p: f64,
    pub concurrence: f64,
    pub mutual_over_ln2: f64,
    pub deficit_over_ln2: f64,
    pub cond_entropy_q1: f64,
    pub ppt_min_eig: f64,
}

pub const WERNER_CSV_HEADER: &str = "p,concurrence,mutual_over_ln2,deficit_over_ln2,cond_entropy_q1,ppt_min_eig";

pub fn ppt_min_eigenvalue(rho: &DensityMatrix) -> Result<f64> {
    let eig = hermitian_eig(&partial_transpose(rho, Subsystem::B))?;
    Ok(eig.values[eig.dim() - 1])
}

pub fn werner_row(p: f64) -> Result<WernerRow> {
    let rho = werner(p)?;
    Ok(WernerRow {
        p,
        concurrence: concurrence(&rho)?,
        mutual_over_ln2: mutual_entropy(&rho)? / LN_2,
        deficit_over_ln2: quantum_deficit(&rho)? / LN_2,
        cond_entropy_q1: conditional_tsallis(&rho, Subsystem::A, 1.0)?,
        ppt_min_eig: ppt_min_eigenvalue(&rho)?,
    })
}

/// The grid `min, min + step, ...` up to `max`, with `max` itself always
/// included.
pub fn sweep_grid(min: f64, max: f64, step: f64) -> Result<Vec<f64>> {
    if !(0.0..=1.0).contains(&min) || !(0.0..=1.0).contains(&max) || min > max {
        return Err(Error::OutOfRange {
            name: "p range",
            value: if (0.0..=1.0).contains(&min) { max } else { min },
            range: "0 <= min <= max <= 1",
        });
    }
    if step <= 0.0 || !step.is_finite() {
        return Err(Error::OutOfRange {
            name: "step",
            value: step,
            range: "(0, inf)",
        });
    }
    let n = ((max - min) / step + 1e-9).floor() as usize;
    let mut grid: Vec<f64> = (0..=n).map(|k| min + k as f64 * step).collect();
    if max - grid[n] > 1e-9 * step {
        grid.push(max);
    } else {
        grid[n] = max;
    }
    Ok(grid)
}

pub fn werner_sweep(min: f64, max: f64, step: f64) -> Result<Vec<WernerRow>> {
    sweep_grid(min, max, step)?.into_iter().map(werner_row).collect()
}

/// Root of a function with a sign change on `[lo, hi]`.
pub fn bisect(mut lo: f64, mut hi: f64, tol: f64, mut f: impl FnMut(f64) -> Result<f64>) -> Result<f64> {
    let mut f_lo = f(lo)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    let f_hi = f(hi)?;
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::OutOfRange {
            name: "bracket",
            value: lo,
            range: "an interval with a sign change",
        });
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Parameter values where the Werner-family diagnostics change behavior.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WernerThresholds {
    pub concurrence_zero: f64,
    pub ppt_sign_change: f64,
    pub cond_entropy_root: f64,
    pub infinity_boundary: f64,
    pub deficit_concurrence_crossing: f64,
}

pub fn werner_thresholds() -> Result<WernerThresholds> {
    let concurrence_zero = bisect(0.0, 1.0, 1e-13, |p| Ok(lambda_spectrum(&werner(p)?)?.margin()))?;
    let ppt_sign_change = bisect(0.0, 1.0, 1e-13, |p| ppt_min_eigenvalue(&werner(p)?))?;
    let cond_entropy_root = bisect(1.0 / 3.0, 1.0, 1e-12, |p| conditional_tsallis(&werner(p)?, Subsystem::A, 1.0))?;
    let infinity_boundary = bisect(0.0, 1.0, 1e-13, |p| {
        let w = tsallis_infinity_criterion(&werner(p)?)?;
        Ok(if w.satisfied_a && w.satisfied_b { 1.0 } else { -1.0 })
    })?;

    // D/ln2 starts above C once C turns on; find where it first drops below.
    let gap = |p: f64| -> Result<f64> {
        let rho = werner(p)?;
        Ok(quantum_deficit(&rho)? / LN_2 - concurrence(&rho)?)
    };
    let mut lo = concurrence_zero + 0.01;
    let mut crossing = f64::NAN;
    while lo < 0.99 {
        let hi = lo + 0.01;
        if gap(lo)? > 0.0 && gap(hi)? < 0.0 {
            crossing = bisect(lo, hi, 1e-12, gap)?;
            break;
        }
        lo = hi;
    }
    Ok(WernerThresholds {
        concurrence_zero,
        ppt_sign_change,
        cond_entropy_root,
        infinity_boundary,
        deficit_concurrence_crossing: crossing,
    })
}

/// `D(p)` for the Werner family in closed form.
pub fn werner_deficit_closed_form(p: f64) -> f64 {
    let xlnx = |x: f64| if x > 0.0 { x * x.ln() } else { 0.0 };
    xlnx((1.0 + 3.0 * p) / 4.0) + xlnx((1.0 - p) / 4.0) - (1.0 + p) / 2.0 * ((1.0 + p) / 4.0).ln()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsoSide {
    pub spectrum: Vec<f64>,
    pub marginal_spectrum_a: Vec<f64>,
    pub marginal_spectrum_b: Vec<f64>,
    pub mutual: f64,
    pub deficit: f64,
    pub concurrence: f64,
    pub entropy_diff_a: f64,
    pub entropy_diff_b: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsoReport {
    pub entangled: IsoSide,
    pub separable: IsoSide,
    pub max_spectrum_diff: f64,
}

fn iso_side(rho: &DensityMatrix) -> Result<IsoSide> {
    use crate::linalg::partial_trace;
    Ok(IsoSide {
        spectrum: rho.spectrum()?,
        marginal_spectrum_a: partial_trace(rho, Subsystem::A).spectrum()?,
        marginal_spectrum_b: partial_trace(rho, Subsystem::B).spectrum()?,
        mutual: mutual_entropy(rho)?,
        deficit: quantum_deficit(rho)?,
        concurrence: concurrence(rho)?,
        entropy_diff_a: entropy_difference(rho, Subsystem::A, 1.0)?,
        entropy_diff_b: entropy_difference(rho, Subsystem::B, 1.0)?,
    })
}

pub fn iso_report() -> Result<IsoReport> {
    let (e, s) = isospectral_pair();
    let entangled = iso_side(&e)?;
    let separable = iso_side(&s)?;
    let pairs = [
        (&entangled.spectrum, &separable.spectrum),
        (&entangled.marginal_spectrum_a, &separable.marginal_spectrum_a),
        (&entangled.marginal_spectrum_b, &separable.marginal_spectrum_b),
    ];
    let max_spectrum_diff = pairs
        .iter()
        .flat_map(|(x, y)| x.iter().zip(y.iter()).map(|(a, b)| (a - b).abs()))
        .fold(0.0, f64::max);
    Ok(IsoReport {
        entangled,
        separable,
        max_spectrum_diff,
    })
}
