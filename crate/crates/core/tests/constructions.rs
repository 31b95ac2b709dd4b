use cliqueband::bounds::{lower_bound, lower_bound_2d, upper_bound};
use cliqueband::construct::construct;
use cliqueband::Shape;

fn sorted_shapes(d: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<usize>| {
                let lo = prefix.last().copied().unwrap_or(2);
                (lo..=max).map(move |n| {
                    let mut p = prefix.clone();
                    p.push(n);
                    p
                })
            })
            .collect();
    }
    out
}

#[test]
fn two_dimensional_constructions_are_optimal() {
    for n1 in 2..=40 {
        for n2 in n1..=40 {
            let r = construct(&Shape::new(&[n1, n2]).unwrap()).unwrap();
            assert_eq!(
                r.measured_spread,
                lower_bound_2d(n1, n2).unwrap(),
                "({n1},{n2})"
            );
        }
    }
}

#[test]
fn higher_dimensional_constructions_land_in_bracket() {
    let mut failures = Vec::new();
    for d in [3, 4] {
        for dims in sorted_shapes(d, 6) {
            let shape = Shape::new(&dims).unwrap();
            match construct(&shape) {
                Ok(r) => {
                    assert!(lower_bound(&shape).unwrap() <= r.measured_spread);
                    assert!(r.measured_spread <= upper_bound(&shape).unwrap());
                }
                Err(e) => failures.push(format!("{dims:?}: {e}")),
            }
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn constructions_survive_line_sorting() {
    for dims in [
        vec![2, 3],
        vec![3, 4],
        vec![4, 5],
        vec![2, 2, 2],
        vec![3, 3, 3],
        vec![2, 4, 6],
        vec![3, 4, 5, 5],
    ] {
        let r = construct(&Shape::new(&dims).unwrap()).unwrap();
        let sorted = r.arrangement.monotone_sort();
        assert!(sorted.is_monotonic());
        assert_eq!(sorted.spread() as u64, r.measured_spread, "{dims:?}");
    }
}
