//! Near-optimal arrangements.
//!
//! Two dimensions are filled by half-columns and are optimal. Higher
//! dimensions split the matrix into orthants and fill them as consecutive
//! blocks in the order of an optimal hypercube numbering whose
//! maximum-difference edges all run along axis 0. When `n_1` is odd the
//! central hyperplane along axis 0 is kept out of the orthants and filled
//! from a recursive construction of `n_2 x ... x n_d`, in two pieces.
//!
//! Every result re-measures its spread and must land inside the bracket from
//! [`crate::bounds`]; anything else is reported as a construction error.

use serde::{Deserialize, Serialize};

use crate::arrangement::Arrangement;
use crate::bounds::{
    clique_bandwidth, lower_bound, lower_bound_2d, upper_bound, upper_bound_general,
};
use crate::error::{Error, Result};
use crate::hypercube::{
    align_max_edges_to_dim1, decompose, harper_numbering, HypercubeNumbering, OrthantDecomposition,
};
use crate::shape::Shape;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionResult {
    pub arrangement: Arrangement,
    #[serde(rename = "spread")]
    pub measured_spread: u64,
    pub lower: u64,
    pub upper: u64,
}

impl ConstructionResult {
    fn checked(arrangement: Arrangement, lower: u64, upper: u64) -> Result<Self> {
        let measured_spread = arrangement.spread() as u64;
        if measured_spread < lower || measured_spread > upper {
            return Err(Error::ConstructionInvariant(format!(
                "arrangement of {} has spread {measured_spread}, outside [{lower}, {upper}]",
                arrangement.shape()
            )));
        }
        Ok(ConstructionResult {
            arrangement,
            measured_spread,
            lower,
            upper,
        })
    }
}

fn check_pair(n1: usize, n2: usize, odd: bool) -> Result<Shape> {
    if n1 < 2 || n1 > n2 {
        return Err(Error::InvalidArgument(format!(
            "expected 2 <= n1 <= n2, got ({n1}, {n2})"
        )));
    }
    if (n1 % 2 == 1) != odd {
        let want = if odd { "odd" } else { "even" };
        return Err(Error::InvalidArgument(format!("n1 = {n1} is not {want}")));
    }
    Shape::from_normalized(&[n1, n2])
}

/// Even `n1`: upper half-columns left to right, then lower half-columns.
/// Spread `n1 (n2 + 1) / 2 - 1`.
pub fn construct_2d_even(n1: usize, n2: usize) -> Result<ConstructionResult> {
    let shape = check_pair(n1, n2, false)?;
    let half = n1 / 2;
    let values = (0..n1)
        .flat_map(|i1| {
            (0..n2).map(move |i2| {
                if i1 < half {
                    i2 * half + i1 + 1
                } else {
                    half * n2 + i2 * half + (i1 - half) + 1
                }
            })
        })
        .collect();
    let bound = lower_bound_2d(n1, n2)?;
    ConstructionResult::checked(Arrangement::new(shape, values)?, bound, bound)
}

/// Odd `n1`, six consecutive runs:
/// 1. upper `floor(n1/2)` cells of columns `1..=ceil(n2/2)`, column by column;
/// 2. left `ceil(n2/2)` cells of the middle row;
/// 3. upper cells of the remaining columns;
/// 4. lower cells of columns `1..=ceil(n2/2)`;
/// 5. right `floor(n2/2)` cells of the middle row;
/// 6. lower cells of the remaining columns.
///
/// Spread `(n1 + 1) n2 / 2 - 1`.
pub fn construct_2d_odd(n1: usize, n2: usize) -> Result<ConstructionResult> {
    let shape = check_pair(n1, n2, true)?;
    let mid = n1 / 2;
    let left = n2.div_ceil(2);
    let at = |i1: usize, i2: usize| i1 * n2 + i2;
    let mut order = Vec::with_capacity(n1 * n2);
    let half_columns =
        |order: &mut Vec<usize>, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>| {
            for i2 in cols {
                order.extend(rows.clone().map(|i1| at(i1, i2)));
            }
        };
    half_columns(&mut order, 0..mid, 0..left);
    order.extend((0..left).map(|i2| at(mid, i2)));
    half_columns(&mut order, 0..mid, left..n2);
    half_columns(&mut order, mid + 1..n1, 0..left);
    order.extend((left..n2).map(|i2| at(mid, i2)));
    half_columns(&mut order, mid + 1..n1, left..n2);

    let bound = lower_bound_2d(n1, n2)?;
    ConstructionResult::checked(Arrangement::from_fill_order(shape, &order)?, bound, bound)
}

/// Even `n_1`, any `d >= 2`: orthants as consecutive blocks in aligned
/// Harper order, each filled in odometer order with axis 0 fastest.
/// Spread at most `B(K_2^d) prod ceil(n_t/2) + n_1/2 - 1`.
pub fn construct_even(shape: &Shape) -> Result<ConstructionResult> {
    let d = shape.ndim();
    if d < 2 || shape.dims()[0] % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "even construction needs d >= 2 and even n1, shape is {shape}"
        )));
    }
    let numbering = align_max_edges_to_dim1(&harper_numbering(d as u32)?)?;
    let dec = decompose(shape, false)?;
    let order: Vec<usize> = numbering
        .order()
        .iter()
        .flat_map(|&mask| dec.cells(mask))
        .collect();
    ConstructionResult::checked(
        Arrangement::from_fill_order(shape.clone(), &order)?,
        lower_bound(shape)?,
        upper_bound_general(shape)?,
    )
}

/// Odd `n_1`. At `d = 2` this is [`construct_2d_odd`]. Otherwise, with
/// `(u, v)` a maximum-difference hypercube edge and `H` the central
/// hyperplane along axis 0:
///
/// 1. orthants up to and including `u`;
/// 2. the shadow of those orthants on `H`;
/// 3. orthants after `u` up to and including `v`;
/// 4. the rest of `H`;
/// 5. the remaining orthants.
///
/// `H` cells are taken in the value order of the recursive construction of
/// `n_2 x ... x n_d`. Every maximum edge is tried as `(u, v)`; the smallest
/// spread wins, ties going to the edge whose `u` comes first.
pub fn construct_odd(shape: &Shape) -> Result<ConstructionResult> {
    let d = shape.ndim();
    if d < 2 || shape.dims()[0].is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "odd construction needs d >= 2 and odd n1, shape is {shape}"
        )));
    }
    if d == 2 {
        return construct_2d_odd(shape.dims()[0], shape.dims()[1]);
    }

    let numbering = align_max_edges_to_dim1(&harper_numbering(d as u32)?)?;
    let dec = decompose(shape, true)?;
    let sub_shape = shape.tail().expect("d >= 3");
    let sub = construct(&sub_shape)?.arrangement;
    let plane: Vec<usize> = (1..=sub_shape.volume())
        .map(|v| sub.index_of_value(v).expect("value in range"))
        .collect();

    let mut best: Option<Arrangement> = None;
    for edge in numbering.max_edges() {
        let candidate = odd_fill(
            shape,
            &numbering,
            &dec,
            &sub_shape,
            &plane,
            numbering.position(edge.low),
            numbering.position(edge.high),
        )?;
        if best
            .as_ref()
            .is_none_or(|b| candidate.spread() < b.spread())
        {
            best = Some(candidate);
        }
    }
    ConstructionResult::checked(
        best.expect("a numbering has at least one maximum edge"),
        lower_bound(shape)?,
        upper_bound(shape)?,
    )
}

/// One odd-case fill pivoting on the edge between positions `first` and
/// `second`. `plane` lists flat indices of `sub_shape` in value order.
fn odd_fill(
    shape: &Shape,
    numbering: &HypercubeNumbering,
    dec: &OrthantDecomposition,
    sub_shape: &Shape,
    plane: &[usize],
    first: usize,
    second: usize,
) -> Result<Arrangement> {
    let plane_offset = dec.central_index().expect("odd mode") * shape.strides()[0];

    // Projections (orthant mask without the axis-0 bit) of orthants filled
    // before the shadow.
    let shadow_masks: Vec<u32> = numbering.order()[..=first].iter().map(|m| m >> 1).collect();
    let sub_dims = sub_shape.dims();
    let projected_mask = |j: usize| -> u32 {
        (0..sub_dims.len())
            .filter(|&k| sub_shape.coord(j, k) >= sub_dims[k] / 2)
            .fold(0, |m, k| m | (1 << k))
    };
    let (shadow, rest): (Vec<usize>, Vec<usize>) = plane
        .iter()
        .partition(|&&j| shadow_masks.contains(&projected_mask(j)));

    let orthants = |range: std::ops::Range<usize>| -> Vec<usize> {
        numbering.order()[range]
            .iter()
            .flat_map(|&mask| dec.cells(mask))
            .collect()
    };
    let mut order = orthants(0..first + 1);
    order.extend(shadow.iter().map(|j| plane_offset + j));
    order.extend(orthants(first + 1..second + 1));
    order.extend(rest.iter().map(|j| plane_offset + j));
    order.extend(orthants(second + 1..dec.orthant_count()));
    Arrangement::from_fill_order(shape.clone(), &order)
}

/// Parity dispatch: a single clique gets `1..=n`, two dimensions use the
/// optimal 2D fills, higher dimensions the orthant constructions.
pub fn construct(shape: &Shape) -> Result<ConstructionResult> {
    match shape.dims() {
        &[n] => {
            let b = clique_bandwidth(n);
            ConstructionResult::checked(Arrangement::row_major(shape.clone()), b, b)
        }
        &[n1, n2] if n1 % 2 == 0 => construct_2d_even(n1, n2),
        &[n1, n2] => construct_2d_odd(n1, n2),
        dims if dims[0] % 2 == 0 => construct_even(shape),
        _ => construct_odd(shape),
    }
}
