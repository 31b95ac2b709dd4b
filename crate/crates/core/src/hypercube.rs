//! Optimal numberings of `K_2^d` and the orthant split that lifts them to a
//! full matrix.
//!
//! A hypercube vertex is a `u32` bitmask; bit `k` is coordinate `k`, which is
//! also matrix axis `k` once orthants are attached. Bit strings are printed
//! with coordinate 0 first.

use std::ops::Range;

use crate::bounds::hypercube_bandwidth;
use crate::error::{Error, Result};
use crate::shape::Shape;

pub const MAX_DIM: u32 = 20;

/// Ordering of the `2^d` hypercube vertices; `order[k]` carries number `k + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypercubeNumbering {
    d: u32,
    order: Vec<u32>,
    position: Vec<usize>,
}

/// A hypercube edge realizing the bandwidth, endpoints ordered by position.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MaxEdge {
    pub low: u32,
    pub high: u32,
    /// Coordinate in which the endpoints differ.
    pub coordinate: u32,
}

impl HypercubeNumbering {
    pub fn new(d: u32, order: Vec<u32>) -> Result<Self> {
        if d == 0 || d > MAX_DIM {
            return Err(Error::InvalidArgument(format!(
                "hypercube dimension must be in 1..={MAX_DIM}, got {d}"
            )));
        }
        let n = 1usize << d;
        if order.len() != n {
            return Err(Error::InvalidArgument(format!(
                "numbering of K_2^{d} needs {n} vertices, got {}",
                order.len()
            )));
        }
        let mut position = vec![usize::MAX; n];
        for (k, &v) in order.iter().enumerate() {
            let slot = position.get_mut(v as usize).ok_or_else(|| {
                Error::InvalidArgument(format!("vertex {v:#b} is not in K_2^{d}"))
            })?;
            if *slot != usize::MAX {
                return Err(Error::InvalidArgument(format!(
                    "vertex {v:#b} numbered twice"
                )));
            }
            *slot = k;
        }
        Ok(HypercubeNumbering { d, order, position })
    }

    pub fn dim(&self) -> u32 {
        self.d
    }

    pub fn order(&self) -> &[u32] {
        &self.order
    }

    /// Zero-based position of `vertex`.
    pub fn position(&self, vertex: u32) -> usize {
        self.position[vertex as usize]
    }

    fn edges(&self) -> impl Iterator<Item = (u32, u32, u32)> + '_ {
        (0..1u32 << self.d).flat_map(move |v| {
            (0..self.d)
                .filter(move |&k| v & (1 << k) == 0)
                .map(move |k| (v, v | (1 << k), k))
        })
    }

    /// `max |pos(u) - pos(v)|` over hypercube edges.
    pub fn bandwidth(&self) -> usize {
        self.edges()
            .map(|(u, v, _)| self.position(u).abs_diff(self.position(v)))
            .max()
            .unwrap_or(0)
    }

    /// Multiset of position differences, sorted.
    pub fn edge_differences(&self) -> Vec<usize> {
        let mut diffs: Vec<usize> = self
            .edges()
            .map(|(u, v, _)| self.position(u).abs_diff(self.position(v)))
            .collect();
        diffs.sort_unstable();
        diffs
    }

    /// Edges realizing the bandwidth, sorted by the position of the lower
    /// endpoint, then by its bit string.
    pub fn max_edges(&self) -> Vec<MaxEdge> {
        let bw = self.bandwidth();
        let mut edges: Vec<MaxEdge> = self
            .edges()
            .filter(|&(u, v, _)| self.position(u).abs_diff(self.position(v)) == bw)
            .map(|(u, v, k)| {
                let (low, high) = if self.position(u) < self.position(v) {
                    (u, v)
                } else {
                    (v, u)
                };
                MaxEdge {
                    low,
                    high,
                    coordinate: k,
                }
            })
            .collect();
        edges.sort_by_key(|e| (self.position(e.low), self.bit_string(e.low)));
        edges
    }

    pub fn bit_string(&self, vertex: u32) -> String {
        (0..self.d)
            .map(|k| if vertex & (1 << k) != 0 { '1' } else { '0' })
            .collect()
    }

    pub fn bit_strings(&self) -> Vec<String> {
        self.order.iter().map(|&v| self.bit_string(v)).collect()
    }

    /// Renames coordinates: coordinate `k` becomes `perm[k]`.
    pub fn permute_coordinates(&self, perm: &[u32]) -> Result<HypercubeNumbering> {
        let mut seen = vec![false; self.d as usize];
        if perm.len() != self.d as usize
            || perm
                .iter()
                .any(|&p| p >= self.d || std::mem::replace(&mut seen[p as usize], true))
        {
            return Err(Error::InvalidArgument(format!(
                "{perm:?} is not a permutation of 0..{}",
                self.d
            )));
        }
        let order = self
            .order
            .iter()
            .map(|&v| {
                (0..self.d)
                    .filter(|&k| v & (1 << k) != 0)
                    .fold(0u32, |acc, k| acc | (1 << perm[k as usize]))
            })
            .collect();
        HypercubeNumbering::new(self.d, order)
    }
}

fn compare_reverse_lex(d: u32, a: u32, b: u32) -> std::cmp::Ordering {
    // Bit strings compared from coordinate 0, with '1' sorting before '0'.
    for k in 0..d {
        let (x, y) = (a >> k & 1, b >> k & 1);
        if x != y {
            return y.cmp(&x);
        }
    }
    std::cmp::Ordering::Equal
}

/// Harper-optimal numbering of `K_2^d`: vertices by Hamming weight, each
/// weight class in reverse lexicographic order of its bit string. Starts at
/// the all-zeros vertex and ends at the all-ones vertex.
pub fn harper_numbering(d: u32) -> Result<HypercubeNumbering> {
    if d == 0 || d > MAX_DIM {
        return Err(Error::InvalidArgument(format!(
            "hypercube dimension must be in 1..={MAX_DIM}, got {d}"
        )));
    }
    let mut order: Vec<u32> = (0..1u32 << d).collect();
    order.sort_by(|&a, &b| {
        a.count_ones()
            .cmp(&b.count_ones())
            .then_with(|| compare_reverse_lex(d, a, b))
    });
    let numbering = HypercubeNumbering::new(d, order)?;
    let expected = hypercube_bandwidth(d)?;
    let achieved = numbering.bandwidth() as u64;
    if achieved != expected {
        return Err(Error::ConstructionInvariant(format!(
            "numbering of K_2^{d} has bandwidth {achieved}, expected {expected}"
        )));
    }
    Ok(numbering)
}

/// Permutes coordinates so that every maximum-difference edge runs along
/// coordinate 0 (matrix axis 0). Fails if the maximum edges do not all share
/// one coordinate, since no relabeling can then align them.
pub fn align_max_edges_to_dim1(num: &HypercubeNumbering) -> Result<HypercubeNumbering> {
    let edges = num.max_edges();
    let coordinate = edges[0].coordinate;
    if let Some(other) = edges.iter().find(|e| e.coordinate != coordinate) {
        return Err(Error::ConstructionInvariant(format!(
            "maximum edges of K_2^{} run along coordinates {} and {}",
            num.dim(),
            coordinate,
            other.coordinate
        )));
    }
    let mut perm: Vec<u32> = (0..num.dim()).collect();
    perm.swap(0, coordinate as usize);
    num.permute_coordinates(&perm)
}

/// Split of a shape into `2^d` orthants. Bit `k` of an orthant mask selects
/// the low (0) or high (1) half of axis `k`; the low half of an axis of
/// length `n` has `floor(n/2)` entries. In odd mode axis 0 (odd length) loses
/// its central index, which lies in no orthant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthantDecomposition {
    shape: Shape,
    odd_mode: bool,
    halves: Vec<[Range<usize>; 2]>,
}

impl OrthantDecomposition {
    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn odd_mode(&self) -> bool {
        self.odd_mode
    }

    pub fn orthant_count(&self) -> usize {
        1 << self.shape.ndim()
    }

    /// Coordinate range of each axis for orthant `mask`.
    pub fn ranges(&self, mask: u32) -> Vec<Range<usize>> {
        self.halves
            .iter()
            .enumerate()
            .map(|(k, h)| h[(mask >> k & 1) as usize].clone())
            .collect()
    }

    pub fn volume(&self, mask: u32) -> usize {
        self.ranges(mask).iter().map(|r| r.len()).product()
    }

    /// Index of the central hyperplane along axis 0 in odd mode.
    pub fn central_index(&self) -> Option<usize> {
        self.odd_mode.then(|| self.shape.dims()[0] / 2)
    }

    /// Number of cells in no orthant (the central hyperplane in odd mode).
    pub fn excluded_volume(&self) -> usize {
        if self.odd_mode {
            self.shape.volume() / self.shape.dims()[0]
        } else {
            0
        }
    }

    /// Flat indices of orthant `mask` in odometer order: axis 0 fastest,
    /// carrying into axis 1, and so on.
    pub fn cells(&self, mask: u32) -> Vec<usize> {
        let ranges = self.ranges(mask);
        if ranges.iter().any(|r| r.is_empty()) {
            return Vec::new();
        }
        let strides = self.shape.strides();
        let mut coords: Vec<usize> = ranges.iter().map(|r| r.start).collect();
        let mut out = Vec::with_capacity(self.volume(mask));
        'outer: loop {
            out.push(coords.iter().zip(strides).map(|(c, s)| c * s).sum());
            for (k, r) in ranges.iter().enumerate() {
                coords[k] += 1;
                if coords[k] < r.end {
                    continue 'outer;
                }
                coords[k] = r.start;
            }
            break;
        }
        out
    }
}

/// Splits `shape` into orthants. `odd_mode` requires an odd first dimension
/// and leaves its central hyperplane out.
pub fn decompose(shape: &Shape, odd_mode: bool) -> Result<OrthantDecomposition> {
    let dims = shape.dims();
    if odd_mode && dims[0].is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "odd-mode split needs an odd first dimension, shape is {shape}"
        )));
    }
    let halves = dims
        .iter()
        .enumerate()
        .map(|(k, &n)| {
            if odd_mode && k == 0 {
                [0..n / 2, n / 2 + 1..n]
            } else {
                [0..n / 2, n / 2..n]
            }
        })
        .collect();
    let dec = OrthantDecomposition {
        shape: shape.clone(),
        odd_mode,
        halves,
    };

    let mut covered = vec![false; shape.volume()];
    for mask in 0..dec.orthant_count() as u32 {
        for i in dec.cells(mask) {
            if std::mem::replace(&mut covered[i], true) {
                return Err(Error::ConstructionInvariant(format!(
                    "orthants of {shape} overlap at cell {}",
                    shape.cell_at(i)
                )));
            }
        }
    }
    let central = dec.central_index();
    for (i, &c) in covered.iter().enumerate() {
        let in_plane = central == Some(shape.coord(i, 0));
        if c == in_plane {
            return Err(Error::ConstructionInvariant(format!(
                "orthants of {shape} do not partition the matrix at cell {}",
                shape.cell_at(i)
            )));
        }
    }
    Ok(dec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(n: &HypercubeNumbering) -> Vec<String> {
        n.bit_strings()
    }

    #[test]
    fn small_numberings() {
        let h1 = harper_numbering(1).unwrap();
        assert_eq!(strings(&h1), ["0", "1"]);
        assert_eq!(h1.bandwidth(), 1);

        let h2 = harper_numbering(2).unwrap();
        assert_eq!(strings(&h2), ["00", "10", "01", "11"]);
        assert_eq!(h2.bandwidth(), 2);

        let h3 = harper_numbering(3).unwrap();
        assert_eq!(
            strings(&h3),
            ["000", "100", "010", "001", "110", "101", "011", "111"]
        );
        assert_eq!(h3.bandwidth(), 4);
    }

    #[test]
    fn rejects_out_of_range_dimension() {
        assert!(matches!(
            harper_numbering(0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            harper_numbering(21),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn alignment_puts_max_edges_on_axis_zero() {
        let h2 = align_max_edges_to_dim1(&harper_numbering(2).unwrap()).unwrap();
        assert_eq!(strings(&h2), ["00", "01", "10", "11"]);
        assert_eq!(h2.bandwidth(), 2);
        assert!(h2.max_edges().iter().all(|e| e.coordinate == 0));

        let h3 = align_max_edges_to_dim1(&harper_numbering(3).unwrap()).unwrap();
        assert_eq!(
            strings(&h3),
            ["000", "001", "010", "100", "011", "101", "110", "111"]
        );
        assert_eq!(h3.bandwidth(), 4);
        assert!(h3.max_edges().iter().all(|e| e.coordinate == 0));

        let h1 = harper_numbering(1).unwrap();
        assert_eq!(align_max_edges_to_dim1(&h1).unwrap(), h1);
    }

    #[test]
    fn alignment_preserves_difference_multiset() {
        for d in 1..=10 {
            let h = harper_numbering(d).unwrap();
            let a = align_max_edges_to_dim1(&h).unwrap();
            assert_eq!(h.edge_differences(), a.edge_differences());
            assert!(a.max_edges().iter().all(|e| e.coordinate == 0));
            assert_eq!(a.order()[0], 0);
        }
    }

    #[test]
    fn misaligned_numbering_is_reported() {
        // Gray-code order: a single maximum edge, always alignable.
        let gray = HypercubeNumbering::new(2, vec![0b00, 0b01, 0b11, 0b10]).unwrap();
        let a = align_max_edges_to_dim1(&gray).unwrap();
        assert!(a.max_edges().iter().all(|e| e.coordinate == 0));

        let mixed = HypercubeNumbering::new(3, vec![0, 1, 2, 4, 5, 3, 6, 7]).unwrap();
        let coords: std::collections::BTreeSet<u32> =
            mixed.max_edges().iter().map(|e| e.coordinate).collect();
        assert!(coords.len() > 1);
        assert!(matches!(
            align_max_edges_to_dim1(&mixed),
            Err(Error::ConstructionInvariant(_))
        ));
    }

    #[test]
    fn numbering_validation() {
        assert!(HypercubeNumbering::new(2, vec![0, 1, 2]).is_err());
        assert!(HypercubeNumbering::new(2, vec![0, 1, 1, 3]).is_err());
        assert!(HypercubeNumbering::new(2, vec![0, 1, 2, 4]).is_err());
    }

    #[test]
    fn decompose_examples() {
        let dec = decompose(&Shape::new(&[2, 2]).unwrap(), false).unwrap();
        assert!((0..4).all(|m| dec.volume(m) == 1));

        let dec = decompose(&Shape::new(&[3, 4]).unwrap(), true).unwrap();
        assert!((0..4).all(|m| dec.volume(m) == 2));
        assert_eq!(dec.excluded_volume(), 4);
        assert_eq!(dec.central_index(), Some(1));
        assert_eq!(dec.ranges(0b11), vec![2..3, 2..4]);

        let dec = decompose(&Shape::new(&[4, 6]).unwrap(), false).unwrap();
        assert!((0..4).all(|m| dec.volume(m) == 6));
        assert_eq!(dec.ranges(0b00), vec![0..2, 0..3]);
        assert_eq!(dec.ranges(0b11), vec![2..4, 3..6]);

        assert!(matches!(
            decompose(&Shape::new(&[4, 6]).unwrap(), true),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn odometer_runs_axis_zero_fastest() {
        let dec = decompose(&Shape::new(&[4, 4]).unwrap(), false).unwrap();
        // axis 0 rows 0..2, axis 1 cols 0..2; strides [4, 1]
        assert_eq!(dec.cells(0), vec![0, 4, 1, 5]);
    }

    #[test]
    fn orthant_volumes_sum_to_covered_cells() {
        for dims in [vec![3, 3, 3], vec![3, 4, 5], vec![5, 5], vec![2, 3, 5, 7]] {
            let shape = Shape::new(&dims).unwrap();
            for odd in [false, true] {
                let Ok(dec) = decompose(&shape, odd) else {
                    assert!(odd && dims[0] % 2 == 0);
                    continue;
                };
                let total: usize = (0..dec.orthant_count() as u32).map(|m| dec.volume(m)).sum();
                assert_eq!(total + dec.excluded_volume(), shape.volume());
            }
        }
    }
}
