use cliqueband::{Arrangement, Labeling, Shape};
use proptest::prelude::*;

fn shape_and_values(max_volume: usize) -> impl Strategy<Value = (Shape, Vec<usize>)> {
    prop::collection::vec(1usize..=5, 1..=4)
        .prop_filter_map("volume", move |dims| {
            let shape = Shape::new(&dims).ok()?;
            (shape.volume() <= max_volume).then_some(shape)
        })
        .prop_flat_map(|shape| {
            let values: Vec<usize> = (1..=shape.volume()).collect();
            (Just(shape), Just(values).prop_shuffle())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn bandwidth_equals_spread((shape, values) in shape_and_values(60)) {
        let lab = Labeling::new(shape, values).unwrap();
        prop_assert_eq!(lab.bandwidth(), lab.to_arrangement().spread());
        prop_assert_eq!(lab.to_arrangement().to_labeling(), lab);
    }

    #[test]
    fn sorting_lines_never_widens((shape, values) in shape_and_values(60)) {
        let a = Arrangement::new(shape, values).unwrap();
        let sorted = a.monotone_sort();
        prop_assert!(sorted.is_monotonic());
        prop_assert!(sorted.spread() <= a.spread());
        let mut before = a.values().to_vec();
        let mut after = sorted.values().to_vec();
        before.sort_unstable();
        after.sort_unstable();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn reversal_preserves_spread((shape, values) in shape_and_values(60)) {
        let a = Arrangement::new(shape, values).unwrap();
        prop_assert_eq!(a.reversed().spread(), a.spread());
    }

    #[test]
    fn json_round_trip((shape, values) in shape_and_values(60)) {
        let a = Arrangement::new(shape, values).unwrap();
        let back = cliqueband::io::from_json(&cliqueband::io::to_json(&a)).unwrap();
        prop_assert_eq!(back, a);
    }
}
