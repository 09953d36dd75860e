//! Centered finite differences on possibly non-uniform grids.

use crate::error::{Error, Result};

/// First and second derivative at `grid[index]` from the three-point
/// Lagrange stencil `{index-1, index, index+1}`.
///
/// Second-order accurate on uniform grids and exact for quadratics on
/// any grid; profiles are sampled on graded grids near their domain
/// endpoints, so the weights keep the unequal spacings.
pub fn fd_derivatives(grid: &[f64], values: &[f64], index: usize) -> Result<(f64, f64)> {
    if grid.len() != values.len() {
        return Err(Error::Alignment(format!(
            "grid has {} points but values has {}",
            grid.len(),
            values.len()
        )));
    }
    if grid.len() < 3 {
        return Err(Error::domain("finite differences need at least 3 points"));
    }
    if index == 0 || index + 1 >= grid.len() {
        return Err(Error::BoundaryIndex {
            index,
            len: grid.len(),
        });
    }

    let h1 = grid[index] - grid[index - 1];
    let h2 = grid[index + 1] - grid[index];
    if !(h1 > 0.0 && h2 > 0.0) {
        return Err(Error::domain("grid must be strictly increasing"));
    }

    let (ym, y0, yp) = (values[index - 1], values[index], values[index + 1]);
    let first =
        -ym * h2 / (h1 * (h1 + h2)) + y0 * (h2 - h1) / (h1 * h2) + yp * h1 / (h2 * (h1 + h2));
    let second = 2.0 * (ym / (h1 * (h1 + h2)) - y0 / (h1 * h2) + yp / (h2 * (h1 + h2)));
    Ok((first, second))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_for_quadratic_on_uniform_grid() {
        let grid: Vec<f64> = (0..11).map(|j| j as f64 / 10.0).collect();
        let values: Vec<f64> = grid.iter().map(|b| b * b).collect();
        for i in 1..10 {
            let (d1, d2) = fd_derivatives(&grid, &values, i).unwrap();
            assert!((d1 - 2.0 * grid[i]).abs() < 1e-12);
            assert!((d2 - 2.0).abs() < 1e-10);
        }
    }

    #[test]
    fn exact_for_quadratic_on_non_uniform_grid() {
        let grid = [0.0, 0.05, 0.3, 0.35, 0.9, 1.0];
        let values: Vec<f64> = grid.iter().map(|b| 3.0 * b * b - b + 2.0).collect();
        for i in 1..5 {
            let (d1, d2) = fd_derivatives(&grid, &values, i).unwrap();
            assert!((d1 - (6.0 * grid[i] - 1.0)).abs() < 1e-11);
            assert!((d2 - 6.0).abs() < 1e-9);
        }
    }

    #[test]
    fn constant_has_zero_derivatives() {
        let grid = [0.1, 0.4, 0.5, 0.88];
        let values = [7.0; 4];
        for i in 1..3 {
            let (d1, d2) = fd_derivatives(&grid, &values, i).unwrap();
            assert!(d1.abs() < 1e-12);
            assert!(d2.abs() < 1e-11);
        }
    }

    #[test]
    fn boundary_index_is_rejected() {
        let grid = [0.0, 0.5, 1.0];
        let values = [1.0, 2.0, 3.0];
        assert!(matches!(
            fd_derivatives(&grid, &values, 0),
            Err(Error::BoundaryIndex { .. })
        ));
        assert!(matches!(
            fd_derivatives(&grid, &values, 2),
            Err(Error::BoundaryIndex { .. })
        ));
    }
}
