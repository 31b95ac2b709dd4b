//! Arrangements of `1..=V` in a matrix and labelings of the matching
//! Hamming graph.
//!
//! The two are the same data seen from different sides: a value in cell
//! `(i_1, ..., i_d)` is the label of vertex `(i_1, ..., i_d)`, and the numbers
//! sharing a line are exactly the labels of one clique. Spread of an
//! arrangement therefore equals bandwidth of the labeling.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shape::{Cell, Line, Shape};

/// Bijection from the cells of a [`Shape`] onto `1..=V`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ArrangementFile", into = "ArrangementFile")]
pub struct Arrangement {
    shape: Shape,
    values: Vec<usize>,
    /// `cells[v - 1]` is the flat index holding value `v`.
    cells: Vec<usize>,
}

impl Arrangement {
    /// Validates that `values` (row-major) is a permutation of `1..=V`.
    pub fn new(shape: Shape, values: Vec<usize>) -> Result<Self> {
        let volume = shape.volume();
        if values.len() != volume {
            return Err(Error::NotBijection {
                volume,
                reason: format!("expected {volume} values, got {}", values.len()),
            });
        }
        let mut cells = vec![usize::MAX; volume];
        for (index, &v) in values.iter().enumerate() {
            if v == 0 || v > volume {
                return Err(Error::NotBijection {
                    volume,
                    reason: format!("value {v} out of range"),
                });
            }
            if cells[v - 1] != usize::MAX {
                return Err(Error::NotBijection {
                    volume,
                    reason: format!("value {v} appears more than once"),
                });
            }
            cells[v - 1] = index;
        }
        Ok(Arrangement {
            shape,
            values,
            cells,
        })
    }

    /// Builds an arrangement from a fill order: the `k`-th flat index in
    /// `order` receives value `k + 1`.
    pub fn from_fill_order(shape: Shape, order: &[usize]) -> Result<Self> {
        let volume = shape.volume();
        let mut values = vec![0; volume];
        for (k, &index) in order.iter().enumerate() {
            if index >= volume {
                return Err(Error::NotBijection {
                    volume,
                    reason: format!("cell index {index} out of range"),
                });
            }
            values[index] = k + 1;
        }
        Self::new(shape, values)
    }

    /// Row-major enumeration `1, 2, ..., V`.
    pub fn row_major(shape: Shape) -> Self {
        let values = (1..=shape.volume()).collect();
        Self::new(shape, values).expect("identity is a bijection")
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// Row-major values.
    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn into_values(self) -> Vec<usize> {
        self.values
    }

    pub fn value_at(&self, cell: &Cell) -> Result<usize> {
        Ok(self.values[self.shape.index_of(cell)?])
    }

    /// The cell holding value `v`, or `None` if `v` is outside `1..=V`.
    pub fn cell_of(&self, v: usize) -> Option<Cell> {
        let index = *self.cells.get(v.checked_sub(1)?)?;
        Some(self.shape.cell_at(index))
    }

    /// Flat index holding value `v` (1-based).
    pub fn index_of_value(&self, v: usize) -> Option<usize> {
        self.cells.get(v.checked_sub(1)?).copied()
    }

    fn span_from(&self, start: usize, axis: usize) -> usize {
        let stride = self.shape.strides()[axis];
        let n = self.shape.dims()[axis];
        let mut lo = usize::MAX;
        let mut hi = 0;
        for k in 0..n {
            let v = self.values[start + k * stride];
            lo = lo.min(v);
            hi = hi.max(v);
        }
        hi - lo
    }

    /// Maximum over all lines of (largest - smallest value on the line).
    pub fn spread(&self) -> usize {
        (0..self.shape.ndim())
            .flat_map(|axis| {
                self.shape
                    .line_starts(axis)
                    .map(move |start| self.span_from(start, axis))
            })
            .max()
            .unwrap_or(0)
    }

    pub fn line_spread(&self, line: &Line) -> Result<usize> {
        let start = self.shape.line_start(line)?;
        Ok(self.span_from(start, line.axis))
    }

    /// A line realizing the spread (first in axis-then-row-major order) and
    /// its spread.
    pub fn widest_line(&self) -> (Line, usize) {
        self.shape
            .lines()
            .map(|line| {
                let s = self.line_spread(&line).expect("line of own shape");
                (line, s)
            })
            .fold(None, |best: Option<(Line, usize)>, (line, s)| match best {
                Some((_, b)) if b >= s => best,
                _ => Some((line, s)),
            })
            .expect("a shape has at least one line")
    }

    /// True iff values strictly increase along every line.
    pub fn is_monotonic(&self) -> bool {
        let shape = &self.shape;
        (0..shape.ndim()).all(|axis| {
            let stride = shape.strides()[axis];
            (0..shape.volume())
                .filter(|&i| shape.coord(i, axis) + 1 < shape.dims()[axis])
                .all(|i| self.values[i] < self.values[i + stride])
        })
    }

    /// Sorts every line ascending, one axis at a time (axis 0 first, one
    /// pass per axis). The result is monotonic and its spread is no larger.
    pub fn monotone_sort(&self) -> Arrangement {
        let shape = &self.shape;
        let mut values = self.values.clone();
        let mut buf = Vec::new();
        for axis in 0..shape.ndim() {
            let stride = shape.strides()[axis];
            let n = shape.dims()[axis];
            for start in shape.line_starts(axis) {
                buf.clear();
                buf.extend((0..n).map(|k| values[start + k * stride]));
                buf.sort_unstable();
                for (k, &v) in buf.iter().enumerate() {
                    values[start + k * stride] = v;
                }
            }
        }
        let sorted = Arrangement::new(shape.clone(), values).expect("sorting permutes values");
        // Earlier passes stay sorted under later ones (Gale-Karp); a single
        // pass per axis must therefore suffice.
        assert!(
            sorted.is_monotonic(),
            "line sorting left {shape} arrangement non-monotonic"
        );
        sorted
    }

    /// `v -> V + 1 - v`.
    pub fn reversed(&self) -> Arrangement {
        let volume = self.shape.volume();
        let values = self.values.iter().map(|v| volume + 1 - v).collect();
        Arrangement::new(self.shape.clone(), values).expect("reversal is a bijection")
    }

    pub fn to_labeling(&self) -> Labeling {
        Labeling {
            shape: self.shape.clone(),
            labels: self.values.clone(),
        }
    }

    /// Rows of a two-dimensional arrangement.
    pub fn rows(&self) -> Option<Vec<Vec<usize>>> {
        if self.shape.ndim() != 2 {
            return None;
        }
        let n2 = self.shape.dims()[1];
        Some(self.values.chunks(n2).map(<[usize]>::to_vec).collect())
    }
}

/// Vertex labeling of `K_{n_1} x ... x K_{n_d}`. Vertices are indexed like
/// the cells of the matching shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    shape: Shape,
    labels: Vec<usize>,
}

impl Labeling {
    /// `labels[i]` is the label of the vertex whose cell has flat index `i`.
    pub fn new(shape: Shape, labels: Vec<usize>) -> Result<Self> {
        let checked = Arrangement::new(shape, labels)?;
        Ok(Labeling {
            shape: checked.shape,
            labels: checked.values,
        })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn label(&self, vertex: &Cell) -> Result<usize> {
        Ok(self.labels[self.shape.index_of(vertex)?])
    }

    /// `B_f(G)`: the largest label difference across an edge. Edges are the
    /// vertex pairs differing in exactly one coordinate, enumerated pairwise
    /// within each clique.
    pub fn bandwidth(&self) -> usize {
        let shape = &self.shape;
        let mut best = 0;
        for axis in 0..shape.ndim() {
            let stride = shape.strides()[axis];
            let n = shape.dims()[axis];
            for start in shape.line_starts(axis) {
                for a in 0..n {
                    let la = self.labels[start + a * stride];
                    for b in a + 1..n {
                        let lb = self.labels[start + b * stride];
                        best = best.max(la.abs_diff(lb));
                    }
                }
            }
        }
        best
    }

    pub fn to_arrangement(&self) -> Arrangement {
        Arrangement::new(self.shape.clone(), self.labels.clone())
            .expect("labeling was validated as a bijection")
    }
}

/// Free-function form of [`Arrangement::spread`].
pub fn spread(a: &Arrangement) -> usize {
    a.spread()
}

/// Free-function form of [`Labeling::bandwidth`].
pub fn graph_bandwidth(lab: &Labeling) -> usize {
    lab.bandwidth()
}

/// On-disk JSON layout: `{"shape":[..],"order":"row-major","values":[..]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrangementFile {
    shape: Vec<usize>,
    order: String,
    values: Vec<usize>,
}

impl TryFrom<ArrangementFile> for Arrangement {
    type Error = Error;

    fn try_from(file: ArrangementFile) -> Result<Self> {
        if file.order != "row-major" {
            return Err(Error::Format(format!(
                "unsupported order {:?}, expected \"row-major\"",
                file.order
            )));
        }
        // Unit dims do not move any value in row-major order, so they can be
        // dropped; an unsorted shape cannot be reinterpreted without a transpose.
        let dims: Vec<usize> = file.shape.iter().copied().filter(|&n| n != 1).collect();
        let shape = Shape::from_normalized(&dims)?;
        Arrangement::new(shape, file.values)
    }
}

impl From<Arrangement> for ArrangementFile {
    fn from(a: Arrangement) -> Self {
        ArrangementFile {
            shape: a.shape.dims().to_vec(),
            order: "row-major".into(),
            values: a.values,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arr(dims: &[usize], values: &[usize]) -> Arrangement {
        Arrangement::new(Shape::new(dims).unwrap(), values.to_vec()).unwrap()
    }

    #[test]
    fn spread_examples() {
        assert_eq!(arr(&[2, 3], &[1, 2, 3, 4, 5, 6]).spread(), 3);
        assert_eq!(arr(&[2, 2], &[4, 1, 3, 2]).spread(), 3);
        assert_eq!(arr(&[5], &[1, 2, 3, 4, 5]).spread(), 4);
    }

    #[test]
    fn line_spread_examples() {
        let a = arr(&[2, 3], &[1, 2, 3, 4, 5, 6]);
        let row1 = Line {
            axis: 1,
            fixed: vec![0],
        };
        let col2 = Line {
            axis: 0,
            fixed: vec![1],
        };
        assert_eq!(a.line_spread(&row1).unwrap(), 2);
        assert_eq!(a.line_spread(&col2).unwrap(), 3);
        let foreign = Line {
            axis: 0,
            fixed: vec![7],
        };
        assert!(matches!(
            a.line_spread(&foreign),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn rejects_non_bijections() {
        let shape = Shape::new(&[2, 2]).unwrap();
        for bad in [
            vec![1, 3, 2, 2],
            vec![0, 1, 2, 3],
            vec![1, 2, 3, 5],
            vec![1, 2, 3],
        ] {
            assert!(matches!(
                Arrangement::new(shape.clone(), bad),
                Err(Error::NotBijection { .. })
            ));
        }
    }

    #[test]
    fn inverse_lookup_is_consistent() {
        let a = arr(&[2, 3], &[4, 1, 6, 2, 5, 3]);
        for v in 1..=6 {
            let cell = a.cell_of(v).unwrap();
            assert_eq!(a.value_at(&cell).unwrap(), v);
        }
        assert_eq!(a.cell_of(0), None);
        assert_eq!(a.cell_of(7), None);
    }

    #[test]
    fn bandwidth_examples() {
        let lab = Labeling::new(Shape::new(&[2, 2]).unwrap(), vec![1, 2, 3, 4]).unwrap();
        assert_eq!(lab.bandwidth(), 2);
        let edge = Labeling::new(Shape::new(&[2]).unwrap(), vec![1, 2]).unwrap();
        assert_eq!(edge.bandwidth(), 1);
        let a = arr(&[2, 2], &[1, 2, 3, 4]);
        assert_eq!(graph_bandwidth(&a.to_labeling()), 2);
    }

    #[test]
    fn labeling_round_trip() {
        let a = arr(&[2, 3], &[4, 1, 6, 2, 5, 3]);
        assert_eq!(a.to_labeling().to_arrangement(), a);
        let lab = a.to_labeling();
        assert_eq!(lab.label(&Cell(vec![1, 1])).unwrap(), 5);
    }

    #[test]
    fn monotone_sort_examples() {
        let sorted = arr(&[2, 2], &[1, 2, 3, 4]).monotone_sort();
        assert_eq!(sorted.values(), &[1, 2, 3, 4]);

        let a = arr(&[2, 2], &[4, 1, 3, 2]);
        let sorted = a.monotone_sort();
        assert_eq!(sorted.values(), &[1, 3, 2, 4]);
        assert_eq!(a.spread(), 3);
        assert_eq!(sorted.spread(), 2);
    }

    #[test]
    fn monotonicity() {
        assert!(arr(&[2, 2], &[1, 2, 3, 4]).is_monotonic());
        assert!(!arr(&[2, 2], &[2, 1, 3, 4]).is_monotonic());
        assert!(!arr(&[2, 2], &[1, 4, 3, 2]).is_monotonic());
    }

    #[test]
    fn widest_line_realizes_spread() {
        let a = arr(&[2, 3], &[1, 2, 3, 4, 5, 6]);
        let (line, s) = a.widest_line();
        assert_eq!(s, 3);
        assert_eq!(line.axis, 0);
    }

    #[test]
    fn json_format() {
        let a = arr(&[2, 3], &[1, 2, 3, 4, 5, 6]);
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(
            text,
            r#"{"shape":[2,3],"order":"row-major","values":[1,2,3,4,5,6]}"#
        );
        let back: Arrangement = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);

        let dup = r#"{"shape":[2,2],"order":"row-major","values":[1,3,2,2]}"#;
        assert!(serde_json::from_str::<Arrangement>(dup).is_err());
        let unsorted = r#"{"shape":[3,2],"order":"row-major","values":[1,2,3,4,5,6]}"#;
        assert!(serde_json::from_str::<Arrangement>(unsorted).is_err());
        let col = r#"{"shape":[2,3],"order":"column-major","values":[1,2,3,4,5,6]}"#;
        assert!(serde_json::from_str::<Arrangement>(col).is_err());
        let unit = r#"{"shape":[1,2,3],"order":"row-major","values":[1,2,3,4,5,6]}"#;
        assert_eq!(serde_json::from_str::<Arrangement>(unit).unwrap(), a);
    }
}
