use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use commdiag::oracle::{oracle_verify, oracle_verify_exact, validate_witness};
use commdiag::random::{random_labels, random_small_diagram, LabelMode, SmallConfig};
use commdiag::{
    parse_diagram, serialize_diagram, verify, CountingMonoid, Diagram, FreeWord, Monoid, MonoidKind, MonoidValue,
    VerifyOptions,
};

fn diagram(seed: u64) -> Diagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_small_diagram(&mut rng, SmallConfig::default())
}

fn small_diagram(seed: u64) -> Diagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_small_diagram(&mut rng, SmallConfig { max_vertices: 4, max_edges: 5 })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn counters_match_monoid_calls(seed in any::<u64>()) {
        let d = diagram(seed);
        let counted = d.clone().with_monoid(CountingMonoid::new(*d.monoid()));
        let r = verify(&counted, VerifyOptions::default());
        prop_assert_eq!(counted.monoid().op_calls(), r.counters.mult_total());
        prop_assert_eq!(counted.monoid().equality_calls(), r.counters.eq_total());
        prop_assert_eq!(r, verify(&d, VerifyOptions::default()));
    }

    #[test]
    fn witnesses_validate(seed in any::<u64>()) {
        let d = diagram(seed);
        let r = verify(&d, VerifyOptions::default());
        prop_assert_eq!(r.commutative, r.witness.is_none());
        if let Some(w) = &r.witness {
            prop_assert!(validate_witness(&d, w));
        }
    }

    #[test]
    fn oracle_is_monotone_in_length(seed in any::<u64>()) {
        let d = small_diagram(seed);
        let n = d.graph().vertex_count();
        let verdicts: Vec<bool> = (0..=n + 2).map(|l| oracle_verify(&d, l).unwrap()).collect();
        prop_assert!(verdicts.windows(2).all(|w| w[0] || !w[1]));
    }

    #[test]
    fn serialization_round_trips(seed in any::<u64>()) {
        let d = diagram(seed);
        let text = serialize_diagram(&d);
        let back = parse_diagram(&text).unwrap();
        prop_assert_eq!(&back, &d);
        prop_assert_eq!(serialize_diagram(&back), text);
    }

    #[test]
    fn labels_of_concatenations_multiply(seed in any::<u64>(), split in 0usize..8, len in 0usize..8) {
        let d = diagram(seed);
        let m = d.graph().edge_count();
        prop_assume!(m > 0);
        // any edge sequence, not only paths
        let seq: Vec<usize> = (0..len).map(|i| (seed as usize).wrapping_add(i * 7) % m).collect();
        let k = split.min(seq.len());
        let whole = d.label_of_sequence(&seq).unwrap();
        let parts = d.monoid().op(
            &d.label_of_sequence(&seq[..k]).unwrap(),
            &d.label_of_sequence(&seq[k..]).unwrap(),
        );
        prop_assert!(d.monoid().equals(&whole, &parts));
    }

    #[test]
    fn traced_relations_are_complete(seed in any::<u64>()) {
        let d = diagram(seed);
        let g = d.graph().clone();
        // an all-identity labeling lets the run finish, producing the full system
        let ids = vec![MonoidValue::Word(FreeWord::empty()); g.edge_count()];
        let base = Diagram::new(g.clone(), MonoidKind::Free, ids).unwrap();
        let trace = verify(&base, VerifyOptions { trace: true }).trace.unwrap();
        for rel in &trace.relations {
            let left = commdiag::Path::from_edges(&g, rel.left.clone());
            prop_assert!(left.is_some() || rel.left.is_empty());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabc);
        for kind in [MonoidKind::Free, MonoidKind::Additive, MonoidKind::Matrix { k: 2 }] {
            for mode in [LabelMode::Uniform, LabelMode::IdentityBiased, LabelMode::Potential] {
                let l = random_labels(&mut rng, &g, kind, mode);
                let holds = trace.relations.iter().all(|r| {
                    let a = l.label_of_sequence(&r.left).unwrap();
                    let b = l.label_of_sequence(&r.right).unwrap();
                    l.monoid().equals(&a, &b)
                });
                prop_assert_eq!(holds, oracle_verify_exact(&l).unwrap());
            }
        }
    }
}
