//! Per-n certified sandwich lower ≤ D(g_n) ≤ upper for SL_k(Z), with
//! empirical log-log slopes against the target exponent k−1.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::congruence::congruence_witness;
use super::heisenberg::heisenberg_divisibility;
use super::matrix::{g_n, lcm_1_to};
use super::SlkError;

#[derive(Debug, Clone)]
pub struct SlkRow {
    pub n: u64,
    pub lcm: BigInt,
    pub lower: BigInt,
    pub upper: BigInt,
    pub p: u64,
    /// Running exponent fit of the lower column over rows 2..=n.
    pub slope_partial: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct SlkTable {
    pub k: usize,
    pub rows: Vec<SlkRow>,
    pub slope_lower: f64,
    pub slope_upper: f64,
}

/// Least-squares power-law exponent through the origin of log-log space:
/// minimizes Σ(y − s·x)² for y = ln value, x = ln n, giving s = Σxy / Σx².
pub fn fit_exponent(points: &[(f64, f64)]) -> f64 {
    let sxy: f64 = points.iter().map(|(x, y)| x * y).sum();
    let sxx: f64 = points.iter().map(|(x, _)| x * x).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

fn log_point(n: u64, value: &BigInt) -> (f64, f64) {
    let v = value.to_f64().expect("table values stay far below f64 range");
    ((n as f64).ln(), v.ln())
}

/// Rows n = 1..=n_max of (lower, upper) bounds for D(g_n) in SL_k(Z):
/// the Heisenberg integer program for L = lcm(1..n) below, the congruence
/// witness index for g_n above. Slopes are fit over n ≥ 2.
pub fn slk_bounds_table(k: usize, n_max: u64) -> Result<SlkTable, SlkError> {
    if k < 3 {
        return Err(SlkError::BadDimension(format!(
            "the bounds table needs k ≥ 3, got {k}"
        )));
    }
    let mut rows = Vec::with_capacity(n_max as usize);
    let mut lower_points: Vec<(f64, f64)> = Vec::new();
    let mut upper_points: Vec<(f64, f64)> = Vec::new();
    for n in 1..=n_max {
        let lcm = lcm_1_to(n);
        let (lower, _basis) = heisenberg_divisibility(k, &lcm)?;
        let witness = congruence_witness(&g_n(k, n)?)?;
        let upper = witness.index.clone();
        let slope_partial = if n >= 2 {
            lower_points.push(log_point(n, &lower));
            upper_points.push(log_point(n, &upper));
            Some(fit_exponent(&lower_points))
        } else {
            None
        };
        rows.push(SlkRow { n, lcm, lower, upper, p: witness.p, slope_partial });
    }
    Ok(SlkTable {
        k,
        rows,
        slope_lower: fit_exponent(&lower_points),
        slope_upper: fit_exponent(&upper_points),
    })
}

impl SlkTable {
    /// CSV per the `# rfg-v1` schema: n, lcm, lower, upper, p, slope_partial;
    /// final slopes of both columns appear as a trailing comment.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("# rfg-v1\nn,lcm,lower,upper,p,slope_partial\n");
        for row in &self.rows {
            let slope = row
                .slope_partial
                .map(|s| format!("{s:.4}"))
                .unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                row.n, row.lcm, row.lower, row.upper, row.p, slope
            ));
        }
        out.push_str(&format!(
            "# slope_lower={:.4},slope_upper={:.4},target_exponent={}\n",
            self.slope_lower,
            self.slope_upper,
            self.k - 1
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pinned_rows_for_k3() {
        let table = slk_bounds_table(3, 6).unwrap();
        let row4 = &table.rows[3];
        assert_eq!(row4.n, 4);
        assert_eq!(row4.lower, BigInt::from(25));
        assert_eq!(row4.upper, BigInt::from(31));
        assert_eq!(row4.p, 5);
        let row6 = &table.rows[5];
        assert_eq!(row6.lower, BigInt::from(49));
        assert_eq!(row6.upper, BigInt::from(57));
        assert_eq!(row6.p, 7);
    }

    #[test]
    fn sandwich_holds_in_every_row() {
        let table = slk_bounds_table(3, 20).unwrap();
        for row in &table.rows {
            assert!(row.lower <= row.upper, "row n={}", row.n);
        }
    }

    #[test]
    fn k4_rows_are_consistent() {
        let table = slk_bounds_table(4, 8).unwrap();
        for row in &table.rows {
            assert!(row.lower <= row.upper, "row n={}", row.n);
        }
        // n = 4: least non-divisor of 12 is 5, so lower = 5³
        assert_eq!(table.rows[3].lower, BigInt::from(125));
    }

    #[test]
    fn exponent_fit_recovers_exact_power_laws() {
        // independent oracle: y = x^2 exactly should fit slope 2
        let pts: Vec<(f64, f64)> =
            (2..=20).map(|n| ((n as f64).ln(), (n as f64).powi(2).ln())).collect();
        assert!((fit_exponent(&pts) - 2.0).abs() < 1e-12);
        let pts3: Vec<(f64, f64)> =
            (2..=20).map(|n| ((n as f64).ln(), (n as f64).powi(3).ln())).collect();
        assert!((fit_exponent(&pts3) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn csv_shape() {
        let table = slk_bounds_table(3, 4).unwrap();
        let csv = table.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("# rfg-v1"));
        assert_eq!(lines.next(), Some("n,lcm,lower,upper,p,slope_partial"));
        assert_eq!(lines.next(), Some("1,1,4,7,2,"));
        assert!(csv.trim_end().lines().last().unwrap().starts_with("# slope_lower="));
    }

    #[test]
    fn rejects_k2() {
        assert!(matches!(slk_bounds_table(2, 5), Err(SlkError::BadDimension(_))));
    }
}
