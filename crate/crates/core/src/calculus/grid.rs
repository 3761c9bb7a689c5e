use crate::clifford::CMv;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::field::{MultivectorField, Point4};

/// Uniform lattice in `(t, x, y, z)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid4 {
    pub origin: Point4,
    pub spacing: [f64; 4],
    pub extents: [usize; 4],
}

impl Grid4 {
    pub fn new(origin: Point4, spacing: [f64; 4], extents: [usize; 4]) -> Result<Self> {
        if spacing.iter().any(|h| !(*h > 0.0) || !h.is_finite()) {
            return Err(Error::InvalidGrid(format!("spacings must be positive, got {spacing:?}")));
        }
        if extents.contains(&0) {
            return Err(Error::InvalidGrid(format!("extents must be positive, got {extents:?}")));
        }
        Ok(Self { origin, spacing, extents })
    }

    /// Grid with `intervals[μ]` cells covering `[lo, hi]` along each axis.
    pub fn window(lo: Point4, hi: Point4, intervals: [usize; 4]) -> Result<Self> {
        let mut spacing = [0.0; 4];
        for mu in 0..4 {
            if !(hi[mu] > lo[mu]) || intervals[mu] == 0 {
                return Err(Error::InvalidGrid(format!(
                    "axis {mu}: window [{}, {}] with {} intervals",
                    lo[mu], hi[mu], intervals[mu]
                )));
            }
            spacing[mu] = (hi[mu] - lo[mu]) / intervals[mu] as f64;
        }
        Self::new(lo, spacing, intervals.map(|n| n + 1))
    }

    pub fn len(&self) -> usize {
        self.extents.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn point(&self, idx: [usize; 4]) -> Point4 {
        std::array::from_fn(|mu| self.origin[mu] + idx[mu] as f64 * self.spacing[mu])
    }

    /// Row-major multi-index (z fastest).
    pub fn unravel(&self, mut i: usize) -> [usize; 4] {
        let mut idx = [0; 4];
        for mu in (0..4).rev() {
            idx[mu] = i % self.extents[mu];
            i /= self.extents[mu];
        }
        idx
    }

    pub fn ravel(&self, idx: [usize; 4]) -> usize {
        idx.iter().zip(&self.extents).fold(0, |acc, (i, n)| acc * n + i)
    }

    /// Same physical window with every spacing halved.
    pub fn refined(&self) -> Self {
        Self {
            origin: self.origin,
            spacing: self.spacing.map(|h| h / 2.0),
            extents: self.extents.map(|n| 2 * (n - 1) + 1),
        }
    }

    /// The sub-grid `width` points in from every face.
    pub fn shrink(&self, width: usize) -> Result<Self> {
        if self.extents.iter().any(|&n| n <= 2 * width) {
            return Err(Error::GridTooSmall(format!(
                "extents {:?} leave no interior for a stencil of half-width {width}",
                self.extents
            )));
        }
        Ok(Self {
            origin: std::array::from_fn(|mu| self.origin[mu] + width as f64 * self.spacing[mu]),
            spacing: self.spacing,
            extents: self.extents.map(|n| n - 2 * width),
        })
    }

    /// Largest spacing, used as the refinement parameter.
    pub fn h(&self) -> f64 {
        self.spacing.iter().cloned().fold(0.0, f64::max)
    }
}

/// Field values on every point of a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledField {
    grid: Grid4,
    values: Vec<CMv>,
}

impl SampledField {
    pub fn new(grid: Grid4, values: Vec<CMv>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidGrid(format!(
                "{} values for a grid of {} points",
                values.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &Grid4 {
        &self.grid
    }

    pub fn values(&self) -> &[CMv] {
        &self.values
    }

    pub fn get(&self, idx: [usize; 4]) -> &CMv {
        &self.values[self.grid.ravel(idx)]
    }

    pub fn map(&self, f: impl Fn(&CMv) -> CMv) -> Self {
        Self { grid: self.grid, values: self.values.iter().map(f).collect() }
    }

    /// Largest coefficient modulus over the grid.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(CMv::max_abs).fold(0.0, f64::max)
    }
}

/// Evaluate a field on every grid point.
pub fn sample<F: MultivectorField + ?Sized>(grid: &Grid4, field: &F, exec: Exec) -> SampledField {
    let values = exec.map_indices(grid.len(), |i| field.at(grid.point(grid.unravel(i))));
    SampledField { grid: *grid, values }
}
