//! Pascal's pyramid layers and their placement on Pascal's cube.
//!
//! The `n`-th pyramid layer (1-based, layer 1 is the apex) is built from the
//! first `n` rows of Pascal's triangle by scaling row `r` with the `r`-th
//! entry of the last row, so `entry(r, k) = C(n-1, r) * C(r, k)`. Each layer
//! is a diagonal cross-section of the cube: position `(r, k)` sits at the
//! cube coordinate `(r-k, k, n-1-r)` on the anti-diagonal plane
//! `x + y + z = n - 1`.
//!
//! Layer numbers are 1-based to match the pyramid's usual counting; cube
//! coordinates are 0-based. The off-by-one lives entirely at this boundary.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extbinom::{binomial, ext_binom_closed, BigCount, CoeffIndex};

/// 0-based Cartesian coordinate on Pascal's cube.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubeCoord {
    pub x: u64,
    pub y: u64,
    pub z: u64,
}

impl CubeCoord {
    pub fn new(x: u64, y: u64, z: u64) -> Self {
        Self { x, y, z }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PyramidError {
    #[error("layer numbers are 1-based; layer 0 does not exist")]
    LayerZero,
    #[error("layer export has {rows} rows but claims n = {n}")]
    RowCountMismatch { n: u64, rows: usize },
    #[error("row {r} of layer export has {len} entries, expected {expected}")]
    RowLengthMismatch {
        r: usize,
        len: usize,
        expected: usize,
    },
    #[error("layer export entry ({r}, {k}) is not a decimal integer: {text:?}")]
    BadEntry { r: usize, k: usize, text: String },
}

/// One pyramid layer: a triangular grid of coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerGrid {
    n: u64,
    rows: Vec<Vec<BigCount>>,
}

impl LayerGrid {
    /// 1-based layer number.
    pub fn layer_number(&self) -> u64 {
        self.n
    }

    pub fn rows(&self) -> &[Vec<BigCount>] {
        &self.rows
    }

    /// Entry at row `r`, column `k` (`0 <= k <= r <= n-1`).
    pub fn entry(&self, r: u64, k: u64) -> Option<&BigCount> {
        self.rows.get(r as usize)?.get(k as usize)
    }

    /// Row-major iterator over the positions `(r, k)` of the layer.
    pub fn positions(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        (0..self.n).flat_map(|r| (0..=r).map(move |k| (r, k)))
    }

    /// Exact sum of all entries; equals `3^(n-1)`.
    pub fn sum(&self) -> BigCount {
        self.rows
            .iter()
            .flatten()
            .fold(BigCount::zero(), |acc, v| acc + v)
    }
}

/// Build the `n`-th pyramid layer (`n >= 1`).
pub fn build_layer(n: u64) -> Result<LayerGrid, PyramidError> {
    if n == 0 {
        return Err(PyramidError::LayerZero);
    }
    let last_row: Vec<BigCount> = (0..n).map(|r| binomial(n - 1, r as i64)).collect();
    let rows = (0..n)
        .map(|r| {
            (0..=r)
                .map(|k| &last_row[r as usize] * binomial(r, k as i64))
                .collect()
        })
        .collect();
    Ok(LayerGrid { n, rows })
}

/// Coefficient at a cube coordinate: the extended binomial at
/// `(a = x+y, b = y, c = z)`.
pub fn coeff_at_cube(coord: CubeCoord) -> BigCount {
    let a = i64::try_from(coord.x + coord.y).expect("cube coordinate too large");
    let b = i64::try_from(coord.y).expect("cube coordinate too large");
    let c = i64::try_from(coord.z).expect("cube coordinate too large");
    ext_binom_closed(CoeffIndex::new(a, b, c))
}

/// Cube coordinate of layer position `(r, k)` in the `n`-th layer.
pub fn layer_position_to_cube(n: u64, r: u64, k: u64) -> CubeCoord {
    debug_assert!(k <= r && r < n);
    CubeCoord::new(r - k, k, n - 1 - r)
}

/// The layer-to-cube bijection for the `n`-th layer: every position `(r, k)`
/// mapped onto the anti-diagonal `x + y + z = n - 1`.
pub fn layer_to_cube(n: u64) -> Result<BTreeMap<(u64, u64), CubeCoord>, PyramidError> {
    if n == 0 {
        return Err(PyramidError::LayerZero);
    }
    Ok((0..n)
        .flat_map(|r| (0..=r).map(move |k| ((r, k), layer_position_to_cube(n, r, k))))
        .collect())
}

/// Exact sum of the `n`-th layer's entries.
pub fn layer_sum(n: u64) -> Result<BigCount, PyramidError> {
    Ok(build_layer(n)?.sum())
}

/// Serialization form of a layer: coefficients as decimal strings so that
/// arbitrary-precision values survive JSON round trips.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerExport {
    pub n: u64,
    pub rows: Vec<Vec<String>>,
}

impl From<&LayerGrid> for LayerExport {
    fn from(grid: &LayerGrid) -> Self {
        LayerExport {
            n: grid.n,
            rows: grid
                .rows
                .iter()
                .map(|row| row.iter().map(|v| v.to_string()).collect())
                .collect(),
        }
    }
}

impl TryFrom<LayerExport> for LayerGrid {
    type Error = PyramidError;

    fn try_from(export: LayerExport) -> Result<Self, Self::Error> {
        if export.n == 0 {
            return Err(PyramidError::LayerZero);
        }
        if export.rows.len() as u64 != export.n {
            return Err(PyramidError::RowCountMismatch {
                n: export.n,
                rows: export.rows.len(),
            });
        }
        let mut rows = Vec::with_capacity(export.rows.len());
        for (r, row) in export.rows.into_iter().enumerate() {
            if row.len() != r + 1 {
                return Err(PyramidError::RowLengthMismatch {
                    r,
                    len: row.len(),
                    expected: r + 1,
                });
            }
            let mut parsed = Vec::with_capacity(row.len());
            for (k, text) in row.into_iter().enumerate() {
                let value = text
                    .parse::<BigCount>()
                    .map_err(|_| PyramidError::BadEntry { r, k, text })?;
                parsed.push(value);
            }
            rows.push(parsed);
        }
        Ok(LayerGrid { n: export.n, rows })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigCount {
        BigCount::from(v)
    }

    #[test]
    fn apex_layer_is_a_single_one() {
        let grid = build_layer(1).unwrap();
        assert_eq!(grid.rows(), &[vec![big(1)]]);
        assert_eq!(grid.sum(), big(1));
    }

    #[test]
    fn layer_zero_is_rejected() {
        assert_eq!(build_layer(0), Err(PyramidError::LayerZero));
        assert_eq!(layer_to_cube(0), Err(PyramidError::LayerZero));
    }

    #[test]
    fn third_layer_matches_known_rows() {
        let grid = build_layer(3).unwrap();
        assert_eq!(
            grid.rows(),
            &[
                vec![big(1)],
                vec![big(2), big(2)],
                vec![big(1), big(2), big(1)]
            ]
        );
    }

    #[test]
    fn scaled_row_product_example() {
        // entry(2, 1) of layer 5 = C(4,2) * C(2,1) = 12.
        let grid = build_layer(5).unwrap();
        assert_eq!(grid.entry(2, 1), Some(&big(12)));
    }

    #[test]
    fn cube_coefficient_examples() {
        assert_eq!(coeff_at_cube(CubeCoord::new(0, 0, 0)), big(1));
        assert_eq!(coeff_at_cube(CubeCoord::new(1, 1, 1)), big(6));
        assert_eq!(coeff_at_cube(CubeCoord::new(2, 0, 0)), big(1));
    }

    #[test]
    fn layer_positions_map_onto_the_anti_diagonal() {
        let map = layer_to_cube(1).unwrap();
        assert_eq!(map[&(0, 0)], CubeCoord::new(0, 0, 0));

        let map = layer_to_cube(3).unwrap();
        assert_eq!(map[&(2, 1)], CubeCoord::new(1, 1, 0));
        assert_eq!(coeff_at_cube(map[&(2, 1)]), big(2));

        // Layer 4 covers exactly the 10 lattice points with x + y + z = 3.
        let map = layer_to_cube(4).unwrap();
        assert_eq!(map.len(), 10);
        let mut images: Vec<CubeCoord> = map.values().copied().collect();
        images.sort();
        images.dedup();
        assert_eq!(images.len(), 10, "map must be injective");
        for coord in &images {
            assert_eq!(coord.x + coord.y + coord.z, 3);
        }
    }

    #[test]
    fn layer_sums_are_powers_of_three() {
        assert_eq!(layer_sum(1).unwrap(), big(1));
        assert_eq!(layer_sum(4).unwrap(), big(27));
        assert_eq!(layer_sum(10).unwrap(), big(19683));
        for n in 1..=25u64 {
            assert_eq!(
                layer_sum(n).unwrap(),
                BigCount::from(3u32).pow(n as u32 - 1),
                "layer {n}"
            );
        }
    }

    #[test]
    fn entries_agree_with_mapped_cube_coefficients() {
        for n in 1..=25u64 {
            let grid = build_layer(n).unwrap();
            let map = layer_to_cube(n).unwrap();
            for (r, k) in grid.positions() {
                assert_eq!(
                    grid.entry(r, k).unwrap(),
                    &coeff_at_cube(map[&(r, k)]),
                    "layer {n}, position ({r}, {k})"
                );
            }
        }
    }

    #[test]
    fn layers_have_three_way_symmetry() {
        // Entry (r, k) carries the trinomial parts (k, n-1-r, r-k); any
        // permutation of the parts must name another position with the
        // same value.
        for n in 1..=12u64 {
            let grid = build_layer(n).unwrap();
            for (r, k) in grid.positions() {
                let parts = [k, n - 1 - r, r - k];
                let perms = [
                    [parts[0], parts[1], parts[2]],
                    [parts[0], parts[2], parts[1]],
                    [parts[1], parts[0], parts[2]],
                    [parts[1], parts[2], parts[0]],
                    [parts[2], parts[0], parts[1]],
                    [parts[2], parts[1], parts[0]],
                ];
                for [p1, p2, p3] in perms {
                    let (r2, k2) = (n - 1 - p2, p1);
                    debug_assert_eq!(p3, r2 - k2);
                    assert_eq!(
                        grid.entry(r, k),
                        grid.entry(r2, k2),
                        "layer {n}: ({r},{k}) vs ({r2},{k2})"
                    );
                }
            }
        }
    }

    #[test]
    fn export_round_trips() {
        let grid = build_layer(7).unwrap();
        let export = LayerExport::from(&grid);
        let back = LayerGrid::try_from(export).unwrap();
        assert_eq!(back, grid);
    }

    #[test]
    fn export_validation_catches_malformed_grids() {
        let export = LayerExport {
            n: 2,
            rows: vec![vec!["1".into()]],
        };
        assert!(matches!(
            LayerGrid::try_from(export),
            Err(PyramidError::RowCountMismatch { .. })
        ));

        let export = LayerExport {
            n: 2,
            rows: vec![vec!["1".into()], vec!["1".into()]],
        };
        assert!(matches!(
            LayerGrid::try_from(export),
            Err(PyramidError::RowLengthMismatch { .. })
        ));

        let export = LayerExport {
            n: 1,
            rows: vec![vec!["one".into()]],
        };
        assert!(matches!(
            LayerGrid::try_from(export),
            Err(PyramidError::BadEntry { .. })
        ));
    }
}
