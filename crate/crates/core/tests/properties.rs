//! Property tests for the structural invariants that hold on arbitrary
//! well-formed inputs.

use proptest::prelude::*;

use grouplin::fourier::{index_to_tuple, orbit_reps, tuple_to_index, GroupTable};
use grouplin::group::load_group;
use grouplin::lin::{
    evaluate, generate_planted, parse_instance, serialize_instance, LinConstraint, LinInstance,
    Term,
};

proptest! {
    #[test]
    fn mixed_radix_round_trips(order in 2usize..9, n in 1usize..4, seed in any::<u64>()) {
        let points = order.pow(n as u32);
        let idx = (seed as usize) % points;
        let tuple = index_to_tuple(idx, order, n);
        prop_assert!(tuple.iter().all(|&x| x < order));
        prop_assert_eq!(tuple_to_index(&tuple, order), idx);
    }

    #[test]
    fn lin_files_round_trip(vars in 1usize..6, cons in 1usize..8, seed in any::<u64>()) {
        let g = load_group("S3").unwrap();
        let (inst, _) = generate_planted(&g, vars, cons, 1 + seed as usize % vars, seed).unwrap();
        // one serialize/parse round canonicalizes; after that it is stable
        let canonical = serialize_instance(&parse_instance(
            &serialize_instance(&inst),
            |n| load_group(n),
        ).unwrap());
        let back = parse_instance(&canonical, |n| load_group(n)).unwrap();
        prop_assert_eq!(serialize_instance(&back), canonical);
        prop_assert_eq!(back.num_vars, inst.num_vars);
        prop_assert_eq!(back.num_constraints(), inst.num_constraints());
    }

    #[test]
    fn weight_splitting_preserves_value(seed in any::<u64>(), split in 0.05f64..0.95) {
        let g = load_group("Q8").unwrap();
        let (inst, planted) = generate_planted(&g, 4, 6, 2, seed).unwrap();
        let v = evaluate(&inst, &planted).unwrap();
        let mut constraints = inst.constraints.clone();
        let mut a = constraints[0].clone();
        let mut b = constraints[0].clone();
        a.weight *= split;
        b.weight *= 1.0 - split;
        constraints[0] = a;
        constraints.push(b);
        let split_inst = LinInstance::new(g.clone(), 4, constraints).unwrap();
        let v2 = evaluate(&split_inst, &planted).unwrap();
        prop_assert!((v - v2).abs() < 1e-9);
    }

    #[test]
    fn folded_extension_really_folds(seed in any::<u64>()) {
        let g = load_group("S3").unwrap();
        let reps = orbit_reps(&g, 2).unwrap();
        let rep_values: Vec<usize> = (0..reps.len())
            .map(|i| ((seed >> (i * 3)) % 6) as usize)
            .collect();
        let f = GroupTable::from_rep_values(g, 2, &rep_values).unwrap();
        prop_assert!(f.folding_holds());
    }

    #[test]
    fn constraint_word_respects_inverses(x in 0usize..6, c0 in 0usize..6, c1 in 0usize..6) {
        // c0 ⊙ x ⊙ c1 ⊙ x⁻¹ ⊙ c2 with c2 = identity evaluates consistently
        let g = load_group("S3").unwrap();
        let c = LinConstraint {
            weight: 1.0,
            rhs: 0,
            consts: vec![c0, c1, 0],
            terms: vec![
                Term { var: 0, inverse: false },
                Term { var: 0, inverse: true },
            ],
        };
        let word = c.word_value(&g, &[x]);
        let expected = g.mul(g.mul(g.mul(c0, x), c1), g.inv(x));
        prop_assert_eq!(word, expected);
    }
}
