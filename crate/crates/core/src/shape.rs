//! Matrix shapes, cells and lines.
//!
//! A [`Shape`] `n_1 x ... x n_d` doubles as the Hamming graph
//! `K_{n_1} x ... x K_{n_d}`: cells are vertices and every [`Line`] is one of
//! the cliques. Storage everywhere is dense row-major, last coordinate fastest.
//! Coordinates and axes are zero-based in this API.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Clique orders, normalized to be non-decreasing with no factor of 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Shape {
    dims: Vec<usize>,
    strides: Vec<usize>,
    volume: usize,
}

impl Shape {
    /// Normalizes `dims`: sorts ascending and drops 1s (a `K_1` factor adds
    /// no edges). Zero dims, the empty shape and volume overflow are errors.
    pub fn new(dims: &[usize]) -> Result<Self> {
        if let Some(pos) = dims.iter().position(|&n| n == 0) {
            return Err(Error::InvalidShape(format!(
                "dimension {} is zero",
                pos + 1
            )));
        }
        let mut dims: Vec<usize> = dims.iter().copied().filter(|&n| n > 1).collect();
        if dims.is_empty() {
            return Err(Error::InvalidShape(
                "no dimension larger than 1 (empty product)".into(),
            ));
        }
        dims.sort_unstable();
        Self::from_sorted(dims)
    }

    /// Accepts `dims` only if it is already normalized.
    pub fn from_normalized(dims: &[usize]) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidShape("empty shape".into()));
        }
        if dims.iter().any(|&n| n < 2) {
            return Err(Error::InvalidShape(format!(
                "dimensions must be at least 2, got {dims:?}"
            )));
        }
        if dims.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidShape(format!(
                "dimensions must be non-decreasing, got {dims:?}"
            )));
        }
        Self::from_sorted(dims.to_vec())
    }

    fn from_sorted(dims: Vec<usize>) -> Result<Self> {
        let volume = dims
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .ok_or(Error::Overflow("shape volume"))?;
        let mut strides = vec![1; dims.len()];
        for k in (0..dims.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * dims[k + 1];
        }
        Ok(Shape {
            dims,
            strides,
            volume,
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn ndim(&self) -> usize {
        self.dims.len()
    }

    pub fn volume(&self) -> usize {
        self.volume
    }

    pub fn strides(&self) -> &[usize] {
        &self.strides
    }

    /// The shape with the first (smallest) dimension removed, or `None` for
    /// `d = 1`.
    pub fn tail(&self) -> Option<Shape> {
        if self.ndim() < 2 {
            return None;
        }
        Some(Self::from_sorted(self.dims[1..].to_vec()).expect("sub-shape of a valid shape"))
    }

    pub fn index_of(&self, cell: &Cell) -> Result<usize> {
        self.check_cell(cell)?;
        Ok(cell.0.iter().zip(&self.strides).map(|(c, s)| c * s).sum())
    }

    pub fn cell_at(&self, index: usize) -> Cell {
        debug_assert!(index < self.volume);
        Cell(
            self.dims
                .iter()
                .zip(&self.strides)
                .map(|(&n, &s)| (index / s) % n)
                .collect(),
        )
    }

    /// Coordinate of flat `index` along `axis`.
    #[inline]
    pub fn coord(&self, index: usize, axis: usize) -> usize {
        (index / self.strides[axis]) % self.dims[axis]
    }

    fn check_cell(&self, cell: &Cell) -> Result<()> {
        if cell.0.len() != self.ndim() {
            return Err(Error::ShapeMismatch(format!(
                "cell {cell} has {} coordinates, shape {self} has {}",
                cell.0.len(),
                self.ndim()
            )));
        }
        if cell.0.iter().zip(&self.dims).any(|(c, n)| c >= n) {
            return Err(Error::ShapeMismatch(format!(
                "cell {cell} lies outside shape {self}"
            )));
        }
        Ok(())
    }

    /// Total number of lines, `sum_j V / n_j`.
    pub fn line_count(&self) -> usize {
        self.dims.iter().map(|n| self.volume / n).sum()
    }

    /// Flat indices of the first cell of every line along `axis`.
    pub fn line_starts(&self, axis: usize) -> impl Iterator<Item = usize> + '_ {
        let stride = self.strides[axis];
        let block = stride * self.dims[axis];
        (0..self.volume).filter(move |i| i % block < stride)
    }

    /// Every line of the shape, axis by axis.
    pub fn lines(&self) -> impl Iterator<Item = Line> + '_ {
        (0..self.ndim()).flat_map(move |axis| {
            self.line_starts(axis).map(move |start| {
                let cell = self.cell_at(start);
                let fixed = cell
                    .0
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != axis)
                    .map(|(_, &c)| c)
                    .collect();
                Line { axis, fixed }
            })
        })
    }

    /// Flat index of the first cell of `line`, validating it against this shape.
    pub fn line_start(&self, line: &Line) -> Result<usize> {
        let d = self.ndim();
        if line.axis >= d || line.fixed.len() + 1 != d {
            return Err(Error::ShapeMismatch(format!(
                "line along axis {} with {} fixed coordinates does not fit shape {self}",
                line.axis,
                line.fixed.len()
            )));
        }
        let mut coords = line.fixed.clone();
        coords.insert(line.axis, 0);
        self.index_of(&Cell(coords))
    }

    /// Flat indices of the cells of `line`, in order of the free coordinate.
    pub fn line_cells(&self, line: &Line) -> Result<Vec<usize>> {
        let start = self.line_start(line)?;
        let stride = self.strides[line.axis];
        Ok((0..self.dims[line.axis])
            .map(|k| start + k * stride)
            .collect())
    }
}

impl TryFrom<Vec<usize>> for Shape {
    type Error = Error;

    fn try_from(dims: Vec<usize>) -> Result<Self> {
        Shape::from_normalized(&dims)
    }
}

impl From<Shape> for Vec<usize> {
    fn from(shape: Shape) -> Self {
        shape.dims
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|n| n.to_string()).collect();
        f.write_str(&parts.join("x"))
    }
}

/// Zero-based coordinates of one matrix cell (one Hamming-graph vertex).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell(pub Vec<usize>);

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A full one-dimensional submatrix: `axis` is free, `fixed` holds the other
/// `d - 1` coordinates in axis order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Line {
    pub axis: usize,
    pub fixed: Vec<usize>,
}
