mod common;

use proptest::prelude::*;
use srkit_core::io::{from_json, read_dense, read_pm, read_srm, to_json, write_dense, write_pm, write_srm};
use srkit_core::{DenseMatrix, Gf};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn files_round_trip(q in proptest::sample::select(vec![2u64, 3, 7, 8, 9, 64, 125]), seed in any::<u64>()) {
        let gf = Gf::shared(q).unwrap();
        let mut rng = common::rng(seed);
        let a = common::random_toeplitz(&gf, 6, &mut rng);
        prop_assert_eq!(&read_srm(&write_srm(&a)).unwrap(), &a);
        prop_assert_eq!(&from_json(&to_json(&a)).unwrap(), &a);

        let p = common::random_poly_matrix(&gf, 3, 2, 3, &mut rng);
        let (g2, p2) = read_pm(&write_pm(&gf, &p)).unwrap();
        prop_assert_eq!(&*g2, &*gf);
        prop_assert_eq!(&p2, &p);

        let rows = (0..3).map(|_| (0..4).map(|_| common::random_elem(&gf, &mut rng)).collect()).collect();
        let d = DenseMatrix::from_rows(rows).unwrap();
        let text = write_dense(&gf, &d);
        let (g3, d3) = read_dense(&text).unwrap();
        prop_assert_eq!(write_dense(&g3, &d3), text);
    }
}
