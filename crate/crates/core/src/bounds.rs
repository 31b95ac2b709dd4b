//! Closed-form bandwidth bounds for `K_{n_1} x ... x K_{n_d}`.
//!
//! Two dimensions are solved exactly: [`lower_bound_2d`] is attained by the
//! constructions, so [`lower_bound`] and [`upper_bound`] agree there. From
//! three dimensions on the bracket is
//!
//! ```text
//! LB = B(K_2^d) * prod floor(n_t / 2)
//! UB = B(K_2^d) * prod ceil(n_t / 2) + n_1/2 - 1                          (n_1 even)
//! UB = B(K_{n_2} x ... x K_{n_d}) + B(K_2^d) * floor(n_1/2) * prod_{t>=2} ceil(n_t/2)   (n_1 odd)
//! ```
//!
//! The `*_general` variants apply the d-dimensional formulas at `d = 2` too.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shape::Shape;

fn binomial(n: u64, k: u64) -> Option<u64> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // exact at every step: acc * (n - i) is divisible by (i + 1)
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    u64::try_from(acc).ok()
}

/// `B(K_2^d) = sum_{t=0}^{d-1} C(t, floor(t/2))`.
pub fn hypercube_bandwidth(d: u32) -> Result<u64> {
    if d == 0 {
        return Err(Error::InvalidArgument(
            "hypercube dimension must be >= 1".into(),
        ));
    }
    (0..u64::from(d)).try_fold(0u64, |acc, t| {
        binomial(t, t / 2)
            .and_then(|c| acc.checked_add(c))
            .ok_or(Error::Overflow("hypercube bandwidth"))
    })
}

/// `K_n` alone: every labeling has bandwidth `n - 1`.
pub fn clique_bandwidth(n: usize) -> u64 {
    n.saturating_sub(1) as u64
}

fn check_sorted_pair(n1: usize, n2: usize) -> Result<()> {
    if n1 < 2 || n1 > n2 {
        return Err(Error::InvalidArgument(format!(
            "expected 2 <= n1 <= n2, got ({n1}, {n2})"
        )));
    }
    Ok(())
}

fn product<I: IntoIterator<Item = u64>>(items: I) -> Result<u64> {
    items
        .into_iter()
        .try_fold(1u64, |acc, x| acc.checked_mul(x))
        .ok_or(Error::Overflow("bound product"))
}

fn mul(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b).ok_or(Error::Overflow("bound product"))
}

fn add(a: u64, b: u64) -> Result<u64> {
    a.checked_add(b).ok_or(Error::Overflow("bound sum"))
}

/// Sharp lower bound for an `n1 x n2` matrix, `n1 <= n2`:
/// `(n1+1) n2 / 2 - 1` for odd `n1`, `n1 (n2+1) / 2 - 1` for even `n1`.
pub fn lower_bound_2d(n1: usize, n2: usize) -> Result<u64> {
    check_sorted_pair(n1, n2)?;
    let (a, b) = (n1 as u64, n2 as u64);
    let twice = if a % 2 == 1 {
        mul(a + 1, b)?
    } else {
        mul(a, b + 1)?
    };
    assert!(twice % 2 == 0, "parity guarantees an even product");
    Ok(twice / 2 - 1)
}

/// Re-derives the two-dimensional bound from separating quadrants: for each
/// line, the minimum over its cells of the area of the two quadrants that
/// separate the first from the last one, then the maximum over all lines.
/// Direct enumeration over `(i_1, i_2)`, no closed form.
///
/// For two even dimensions this is weaker than [`lower_bound_2d`]; e.g.
/// `(4, 4)` gives 7 against the sharp 9.
pub fn quadrant_lower_bound_2d(n1: usize, n2: usize) -> Result<u64> {
    check_sorted_pair(n1, n2)?;
    let (n1, n2) = (n1 as i64, n2 as i64);
    let area = |i1: i64, i2: i64| i1 * (n2 - i2 + 1) + (n1 - i1 + 1) * i2 - 2;
    let rows = (1..=n1)
        .map(|i1| {
            (1..=n2)
                .map(|i2| area(i1, i2) - (i1 - 1).max(n1 - i1))
                .min()
                .expect("n2 >= 2")
        })
        .max()
        .expect("n1 >= 2");
    let cols = (1..=n2)
        .map(|i2| {
            (1..=n1)
                .map(|i1| area(i1, i2) - (i2 - 1).max(n2 - i2))
                .min()
                .expect("n1 >= 2")
        })
        .max()
        .expect("n2 >= 2");
    Ok(rows.max(cols) as u64)
}

fn require_multi(shape: &Shape) -> Result<()> {
    if shape.ndim() < 2 {
        return Err(Error::InvalidArgument(format!(
            "bounds need at least two dimensions, shape is {shape}"
        )));
    }
    Ok(())
}

fn floor_halves(dims: &[usize]) -> impl Iterator<Item = u64> + '_ {
    dims.iter().map(|&n| (n / 2) as u64)
}

fn ceil_halves(dims: &[usize]) -> impl Iterator<Item = u64> + '_ {
    dims.iter().map(|&n| n.div_ceil(2) as u64)
}

/// `B(K_2^d) * prod floor(n_t / 2)` at any `d >= 2`.
pub fn lower_bound_general(shape: &Shape) -> Result<u64> {
    require_multi(shape)?;
    mul(
        hypercube_bandwidth(shape.ndim() as u32)?,
        product(floor_halves(shape.dims()))?,
    )
}

/// Best known lower bound: sharp form at `d = 2`, general form above.
pub fn lower_bound(shape: &Shape) -> Result<u64> {
    require_multi(shape)?;
    match shape.dims() {
        &[n1, n2] => lower_bound_2d(n1, n2),
        _ => lower_bound_general(shape),
    }
}

/// Bandwidth bound used for the central hyperplane in the odd recursion.
fn sub_bandwidth(sub: &Shape) -> Result<u64> {
    match sub.dims() {
        &[n] => Ok(clique_bandwidth(n)),
        _ => upper_bound(sub),
    }
}

/// The d-dimensional upper-bound formulas, applied at any `d >= 2`.
pub fn upper_bound_general(shape: &Shape) -> Result<u64> {
    require_multi(shape)?;
    let dims = shape.dims();
    let cube = hypercube_bandwidth(shape.ndim() as u32)?;
    let n1 = dims[0];
    if n1.is_multiple_of(2) {
        add(mul(cube, product(ceil_halves(dims))?)?, (n1 / 2 - 1) as u64)
    } else {
        let sub = shape.tail().expect("d >= 2");
        let blocks = mul(
            mul(cube, (n1 / 2) as u64)?,
            product(ceil_halves(&dims[1..]))?,
        )?;
        add(sub_bandwidth(&sub)?, blocks)
    }
}

/// Upper bound achieved by the constructions: sharp at `d = 2`, the general
/// formulas above (the odd case recursing on `n_2 x ... x n_d`).
pub fn upper_bound(shape: &Shape) -> Result<u64> {
    require_multi(shape)?;
    match shape.dims() {
        &[n1, n2] => lower_bound_2d(n1, n2),
        _ => upper_bound_general(shape),
    }
}

/// Bracket for one shape, with the measured spread of its construction when
/// one was built.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub shape: Shape,
    pub lower: u64,
    #[serde(rename = "upper")]
    pub upper_formula: u64,
    pub construction_spread: Option<u64>,
}

impl BoundsReport {
    pub fn new(shape: &Shape) -> Result<Self> {
        Ok(BoundsReport {
            shape: shape.clone(),
            lower: lower_bound(shape)?,
            upper_formula: upper_bound(shape)?,
            construction_spread: None,
        })
    }

    /// Same, using the `*_general` formulas.
    pub fn general(shape: &Shape) -> Result<Self> {
        Ok(BoundsReport {
            shape: shape.clone(),
            lower: lower_bound_general(shape)?,
            upper_formula: upper_bound_general(shape)?,
            construction_spread: None,
        })
    }

    pub fn with_construction_spread(mut self, spread: u64) -> Self {
        self.construction_spread = Some(spread);
        self
    }

    /// `lower <= upper` and the measured spread, if any, lies in between.
    pub fn is_consistent(&self) -> bool {
        self.lower <= self.upper_formula
            && self
                .construction_spread
                .is_none_or(|s| self.lower <= s && s <= self.upper_formula)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(dims: &[usize]) -> Shape {
        Shape::new(dims).unwrap()
    }

    #[test]
    fn hypercube_values() {
        assert_eq!(hypercube_bandwidth(1).unwrap(), 1);
        assert_eq!(hypercube_bandwidth(2).unwrap(), 2);
        assert_eq!(hypercube_bandwidth(3).unwrap(), 4);
        assert!(matches!(
            hypercube_bandwidth(0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(hypercube_bandwidth(200), Err(Error::Overflow(_))));
        let mut prev = 0;
        for d in 1..=40 {
            let b = hypercube_bandwidth(d).unwrap();
            assert!(b > prev);
            prev = b;
        }
    }

    #[test]
    fn two_dimensional_lower_bound() {
        assert_eq!(lower_bound_2d(2, 2).unwrap(), 2);
        assert_eq!(lower_bound_2d(3, 4).unwrap(), 7);
        assert_eq!(lower_bound_2d(2, 3).unwrap(), 3);
        assert_eq!(lower_bound_2d(4, 4).unwrap(), 9);
        assert!(matches!(
            lower_bound_2d(4, 3),
            Err(Error::InvalidArgument(_))
        ));
        assert!(lower_bound_2d(1, 3).is_err());
    }

    #[test]
    fn quadrant_bound_examples() {
        assert_eq!(quadrant_lower_bound_2d(3, 4).unwrap(), 7);
        // Both dims even: the quadrant argument alone stops short.
        assert_eq!(quadrant_lower_bound_2d(2, 2).unwrap(), 1);
        assert_eq!(quadrant_lower_bound_2d(4, 4).unwrap(), 7);
        assert!(quadrant_lower_bound_2d(5, 4).is_err());
    }

    #[test]
    fn quadrant_bound_matches_closed_form() {
        for n1 in 2..=30usize {
            for n2 in n1..=30 {
                let closed = (n1.div_ceil(2) * n2 - 1).max(n1 * n2.div_ceil(2) - 1) as u64;
                assert_eq!(
                    quadrant_lower_bound_2d(n1, n2).unwrap(),
                    closed,
                    "({n1},{n2})"
                );
                assert!(closed <= lower_bound_2d(n1, n2).unwrap());
            }
        }
    }

    #[test]
    fn multi_dimensional_bounds() {
        assert_eq!(lower_bound(&shape(&[2, 2, 2])).unwrap(), 4);
        assert_eq!(lower_bound(&shape(&[3, 3, 3])).unwrap(), 4);
        assert_eq!(lower_bound(&shape(&[2, 4, 6])).unwrap(), 24);
        assert_eq!(upper_bound(&shape(&[2, 2, 2])).unwrap(), 4);
        assert_eq!(upper_bound(&shape(&[4, 4, 4])).unwrap(), 33);
        assert_eq!(upper_bound(&shape(&[3, 3, 3])).unwrap(), 21);
        assert_eq!(upper_bound(&shape(&[3, 4, 4])).unwrap(), 25);
        assert!(lower_bound(&shape(&[5])).is_err());
        assert!(upper_bound(&shape(&[5])).is_err());
    }

    #[test]
    fn two_dimensional_bounds_are_sharp_and_general_form_is_weaker() {
        let s = shape(&[2, 3]);
        assert_eq!(lower_bound(&s).unwrap(), 3);
        assert_eq!(upper_bound(&s).unwrap(), 3);
        assert_eq!(upper_bound_general(&s).unwrap(), 4);
        for n1 in 2..=40 {
            for n2 in n1..=40 {
                let s = shape(&[n1, n2]);
                assert_eq!(lower_bound(&s).unwrap(), upper_bound(&s).unwrap());
                assert!(lower_bound_general(&s).unwrap() <= lower_bound(&s).unwrap());
                assert!(upper_bound_general(&s).unwrap() >= upper_bound(&s).unwrap());
            }
        }
    }

    #[test]
    fn all_even_gap_is_half_n1_minus_one() {
        for dims in [[2, 2, 2], [4, 4, 4], [2, 4, 6], [6, 8, 8], [4, 6, 10]] {
            let s = shape(&dims);
            let gap = upper_bound(&s).unwrap() - lower_bound(&s).unwrap();
            assert_eq!(gap, (dims[0] / 2 - 1) as u64, "{dims:?}");
        }
        let s = shape(&[4, 6, 8, 8]);
        assert_eq!(upper_bound(&s).unwrap() - lower_bound(&s).unwrap(), 1);
    }

    #[test]
    fn report_json() {
        let r = BoundsReport::new(&shape(&[3, 4])).unwrap();
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"shape":[3,4],"lower":7,"upper":7,"construction_spread":null}"#
        );
        let r = r.with_construction_spread(7);
        assert!(r.is_consistent());
        assert!(!BoundsReport::new(&shape(&[3, 4]))
            .unwrap()
            .with_construction_spread(8)
            .is_consistent());
    }
}
