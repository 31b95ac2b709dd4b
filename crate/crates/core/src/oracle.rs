//! Exact minimum spread for desk-sized shapes.
//!
//! Sorting lines never increases spread, so some optimal arrangement is
//! monotonic, i.e. a linear extension of the product-of-chains order on
//! cells. [`exact_min_spread`] enumerates only those, placing `1, 2, ...` in
//! turn on cells whose lower neighbours are already filled.
//! [`exact_min_spread_unrestricted`] searches all bijections and exists to
//! check that restriction.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::shape::Shape;

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Largest volume searched without first consulting the extension count.
const DIRECT_VOLUME: usize = 24;
const UNRESTRICTED_VOLUME: usize = 9;
const DOWNSET_LIMIT: usize = 4_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub shape: Shape,
    pub optimum: u64,
    pub witness: Arrangement,
    /// Complete arrangements reached (each improved on the incumbent).
    pub extensions_visited: u64,
    /// Search nodes expanded, the quantity the budget limits.
    pub nodes: u64,
}

struct Search<'a> {
    shape: &'a Shape,
    monotone_only: bool,
    budget: u64,
    /// Line ids through each cell, one per axis.
    cell_lines: Vec<Vec<usize>>,
    line_len: Vec<usize>,
    line_first: Vec<usize>,
    line_filled: Vec<usize>,
    values: Vec<usize>,
    best: usize,
    witness: Option<Vec<usize>>,
    extensions: u64,
    nodes: u64,
    exhausted: bool,
}

impl<'a> Search<'a> {
    fn new(shape: &'a Shape, monotone_only: bool, budget: u64) -> Self {
        let volume = shape.volume();
        let mut cell_lines = vec![Vec::with_capacity(shape.ndim()); volume];
        let mut line_len = Vec::new();
        for axis in 0..shape.ndim() {
            let stride = shape.strides()[axis];
            let n = shape.dims()[axis];
            for start in shape.line_starts(axis) {
                let id = line_len.len();
                line_len.push(n);
                for k in 0..n {
                    cell_lines[start + k * stride].push(id);
                }
            }
        }
        let lines = line_len.len();
        Search {
            shape,
            monotone_only,
            budget,
            cell_lines,
            line_len,
            line_first: vec![0; lines],
            line_filled: vec![0; lines],
            values: vec![0; volume],
            best: usize::MAX,
            witness: None,
            extensions: 0,
            nodes: 0,
            exhausted: false,
        }
    }

    fn placeable(&self, cell: usize) -> bool {
        if self.values[cell] != 0 {
            return false;
        }
        !self.monotone_only
            || (0..self.shape.ndim()).all(|axis| {
                self.shape.coord(cell, axis) == 0
                    || self.values[cell - self.shape.strides()[axis]] != 0
            })
    }

    /// Smallest spread any completion can have once `v` is the last value
    /// placed: an open line with first value `f` and `r` empty cells ends at
    /// `v + r` or later.
    fn completion_bound(&self, v: usize) -> usize {
        self.line_first
            .iter()
            .zip(&self.line_filled)
            .zip(&self.line_len)
            .filter(|((&f, &filled), &len)| f != 0 && filled < len)
            .map(|((&f, &filled), &len)| v + (len - filled) - f)
            .max()
            .unwrap_or(0)
    }

    fn run(&mut self, v: usize, partial: usize) {
        if self.exhausted {
            return;
        }
        if v > self.shape.volume() {
            if partial < self.best {
                self.best = partial;
                self.witness = Some(self.values.clone());
            }
            self.extensions += 1;
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        for cell in 0..self.shape.volume() {
            if !self.placeable(cell) {
                continue;
            }
            let mut next = partial;
            for &line in &self.cell_lines[cell] {
                let first = self.line_first[line];
                if first != 0 {
                    next = next.max(v - first);
                }
            }
            if next >= self.best {
                continue;
            }
            self.values[cell] = v;
            for &line in &self.cell_lines[cell] {
                if self.line_first[line] == 0 {
                    self.line_first[line] = v;
                }
                self.line_filled[line] += 1;
            }
            if next.max(self.completion_bound(v)) < self.best {
                self.run(v + 1, next);
            }
            for &line in &self.cell_lines[cell] {
                self.line_filled[line] -= 1;
                if self.line_first[line] == v {
                    self.line_first[line] = 0;
                }
            }
            self.values[cell] = 0;
            if self.exhausted {
                return;
            }
        }
    }

    fn finish(self) -> Result<OracleResult> {
        let witness = self
            .witness
            .map(|values| Arrangement::new(self.shape.clone(), values))
            .transpose()?;
        if self.exhausted {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
                best: witness.map(Box::new),
            });
        }
        let witness = witness.expect("an exhausted search always finds an arrangement");
        Ok(OracleResult {
            shape: self.shape.clone(),
            optimum: self.best as u64,
            witness,
            extensions_visited: self.extensions,
            nodes: self.nodes,
        })
    }
}

/// Minimum spread over monotonic arrangements, which is the minimum overall.
/// Shapes above 24 cells are accepted only when their linear-extension
/// count fits within `budget`.
pub fn exact_min_spread(shape: &Shape, budget: u64) -> Result<OracleResult> {
    if shape.volume() > DIRECT_VOLUME {
        let fits = count_linear_extensions(shape)
            .map(|c| !c.saturated && c.count <= u128::from(budget))
            .unwrap_or(false);
        if !fits {
            return Err(Error::InvalidArgument(format!(
                "shape {shape} is too large for the exact search with budget {budget}"
            )));
        }
    }
    let mut search = Search::new(shape, true, budget);
    search.run(1, 0);
    search.finish()
}

/// Branch and bound over every bijection, for shapes of at most 9 cells.
/// The witness need not be monotonic.
pub fn exact_min_spread_unrestricted(shape: &Shape, budget: u64) -> Result<OracleResult> {
    if shape.volume() > UNRESTRICTED_VOLUME {
        return Err(Error::InvalidArgument(format!(
            "unrestricted search is limited to {UNRESTRICTED_VOLUME} cells, shape {shape} has {}",
            shape.volume()
        )));
    }
    let mut search = Search::new(shape, false, budget);
    search.run(1, 0);
    search.finish()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionCount {
    pub count: u128,
    /// The true count exceeds `u128::MAX`; `count` is clamped.
    pub saturated: bool,
}

/// Number of linear extensions (monotonic arrangements) of `shape`, by
/// dynamic programming over down-sets. Limited to 64 cells and a few million
/// reachable down-sets.
pub fn count_linear_extensions(shape: &Shape) -> Result<ExtensionCount> {
    let volume = shape.volume();
    if volume > 64 {
        return Err(Error::InvalidArgument(format!(
            "linear-extension count is limited to 64 cells, shape {shape} has {volume}"
        )));
    }
    let full: u64 = if volume == 64 {
        u64::MAX
    } else {
        (1 << volume) - 1
    };
    let preds: Vec<u64> = (0..volume)
        .map(|i| {
            (0..shape.ndim())
                .filter(|&axis| shape.coord(i, axis) > 0)
                .fold(0u64, |m, axis| m | 1 << (i - shape.strides()[axis]))
        })
        .collect();

    // Layered forward pass: ways[S] = number of ways to fill down-set S.
    let mut layer: HashMap<u64, (u128, bool)> = HashMap::from([(0, (1, false))]);
    for _ in 0..volume {
        let mut next: HashMap<u64, (u128, bool)> = HashMap::with_capacity(layer.len() * 2);
        for (&set, &(ways, sat)) in &layer {
            for (i, &p) in preds.iter().enumerate() {
                if set & (1 << i) == 0 && set & p == p {
                    let entry = next.entry(set | 1 << i).or_insert((0, false));
                    let (sum, overflow) = entry.0.overflowing_add(ways);
                    *entry = if overflow {
                        (u128::MAX, true)
                    } else {
                        (sum, entry.1 || sat)
                    };
                }
            }
        }
        if next.len() > DOWNSET_LIMIT {
            return Err(Error::InvalidArgument(format!(
                "shape {shape} has too many down-sets to count extensions"
            )));
        }
        layer = next;
    }
    let (count, saturated) = layer[&full];
    Ok(ExtensionCount { count, saturated })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(dims: &[usize]) -> Shape {
        Shape::new(dims).unwrap()
    }

    #[test]
    fn restricted_examples() {
        let r = exact_min_spread(&shape(&[2, 2]), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.optimum, 2);
        assert!(r.extensions_visited <= 2);
        let r = exact_min_spread(&shape(&[3, 4]), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.optimum, 7);
        assert!(r.extensions_visited <= 462);
        let r = exact_min_spread(&shape(&[2, 2, 2]), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.optimum, 4);
        assert!(r.extensions_visited <= 48);
    }

    #[test]
    fn witnesses_revalidate() {
        for dims in [vec![2, 3], vec![3, 3], vec![2, 2, 2], vec![5]] {
            let r = exact_min_spread(&shape(&dims), DEFAULT_BUDGET).unwrap();
            assert!(r.witness.is_monotonic());
            assert_eq!(r.witness.spread() as u64, r.optimum);
        }
    }

    #[test]
    fn unrestricted_examples() {
        for (dims, opt) in [(vec![2, 2], 2), (vec![2, 3], 3), (vec![3, 3], 5)] {
            let r = exact_min_spread_unrestricted(&shape(&dims), DEFAULT_BUDGET).unwrap();
            assert_eq!(r.optimum, opt, "{dims:?}");
            assert_eq!(r.witness.spread() as u64, opt);
        }
        assert!(matches!(
            exact_min_spread_unrestricted(&shape(&[2, 5]), DEFAULT_BUDGET),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn budget_exhaustion_carries_incumbent() {
        match exact_min_spread(&shape(&[3, 4]), 20) {
            Err(Error::BudgetExceeded { budget, best }) => {
                assert_eq!(budget, 20);
                let best = best.expect("depth-first search reaches a leaf within 20 nodes");
                assert!(best.spread() >= 7);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
        assert!(matches!(
            exact_min_spread(&shape(&[2, 2]), 1),
            Err(Error::BudgetExceeded { best: None, .. })
        ));
    }

    #[test]
    fn oversized_shapes_are_refused() {
        assert!(matches!(
            exact_min_spread(&shape(&[9, 9]), 1000),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn extension_counts() {
        let c = |dims: &[usize]| count_linear_extensions(&shape(dims)).unwrap();
        assert_eq!(c(&[2, 2]).count, 2);
        assert_eq!(c(&[3, 3]).count, 42);
        assert_eq!(c(&[3, 4]).count, 462);
        assert_eq!(c(&[2, 2, 2]).count, 48);
        assert_eq!(c(&[7]).count, 1);
        assert!(!c(&[4, 4]).saturated);
        assert!(count_linear_extensions(&shape(&[5, 13])).is_err());
    }
}
