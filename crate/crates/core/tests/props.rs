//! Property tests for the document layer: emitted values re-parse to equal
//! values, and canonical serialization is stable.

use proptest::prelude::*;

use monocat::json;
use monocat::matrix::Matrix;
use monocat::{Field, Scalar};

fn fp_matrix(p: u64) -> impl Strategy<Value = Matrix> {
    (1usize..5, 1usize..5).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(0..p, r * c).prop_map(move |data| {
            let f = Field::Prime(p);
            let scalars: Vec<Scalar> = data.iter().map(|&v| f.from_i64(v as i64)).collect();
            Matrix::new(f, r, c, scalars).unwrap()
        })
    })
}

fn q_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..4, 1usize..4).prop_flat_map(|(r, c)| {
        proptest::collection::vec((-9i64..10, 1i64..7), r * c).prop_map(move |data| {
            let f = Field::Rational;
            let scalars: Vec<Scalar> = data
                .iter()
                .map(|&(n, d)| {
                    let num = f.from_i64(n);
                    let den = f.from_i64(d);
                    f.mul(&num, &f.inv(&den))
                })
                .collect();
            Matrix::new(f, r, c, scalars).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn fp_matrix_round_trips(m in fp_matrix(5)) {
        let v = json::matrix_to_json(&m);
        let back = json::parse_matrix_shaped(m.field(), &v, m.rows(), m.cols(), "/m").unwrap();
        prop_assert_eq!(m, back);
    }

    #[test]
    fn q_matrix_round_trips(m in q_matrix()) {
        let v = json::matrix_to_json(&m);
        let back = json::parse_matrix_shaped(m.field(), &v, m.rows(), m.cols(), "/m").unwrap();
        prop_assert_eq!(m, back);
    }

    #[test]
    fn canonical_form_is_idempotent(m in fp_matrix(7)) {
        let v = json::matrix_to_json(&m);
        let s1 = json::to_canonical_string(&v);
        let reparsed: serde_json::Value = serde_json::from_str(&s1).unwrap();
        prop_assert_eq!(s1, json::to_canonical_string(&reparsed));
    }
}
