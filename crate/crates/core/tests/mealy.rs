mod common;

use cantor_core::{Letter, SyncVerdict, SynchronousTransducer};
use common::*;
use proptest::prelude::*;
use rand::Rng;

fn arity() -> impl Strategy<Value = u32> {
    prop_oneof![Just(2u32), Just(3u32)]
}

fn outputs_agree(a: &SynchronousTransducer, p: usize, b: &SynchronousTransducer, q: usize, len: usize) -> bool {
    plain_words(a.n(), len)
        .iter()
        .all(|x| oracle_run(a, p, x).0 == oracle_run(b, q, x).0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn minimize_preserves_outputs(n in arity(), seed in any::<u64>()) {
        let t = random_machine(&mut rng(seed), n, 4);
        let (m, class) = t.minimize();
        let len = if n == 2 { 10 } else { 6 };
        for (q, &c) in class.iter().enumerate() {
            prop_assert!(outputs_agree(&t, q, &m, c, len));
        }
        // distinct classes are separated by a short word
        for p in 0..m.num_states() {
            for q in p + 1..m.num_states() {
                let word = m.distinguishing_word(p, q);
                prop_assert!(word.is_some());
                let word = word.unwrap();
                prop_assert!(word.len() <= m.num_states());
                prop_assert_ne!(oracle_run(&m, p, &word).0, oracle_run(&m, q, &word).0);
            }
        }
        prop_assert_eq!(m.minimize().0.num_states(), m.num_states());
    }

    #[test]
    fn product_runs_both_machines(n in arity(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_machine(&mut r, n, 3);
        let b = random_machine(&mut r, n, 2);
        let ab = a.product_raw(&b).unwrap();
        let len = if n == 2 { 10 } else { 6 };
        for p in 0..a.num_states() {
            for q in 0..b.num_states() {
                for x in plain_words(n, len).iter().step_by(7) {
                    let (mid, _) = oracle_run(&a, p, x);
                    let (end, _) = oracle_run(&b, q, &mid);
                    prop_assert_eq!(oracle_run(&ab, p * b.num_states() + q, x).0, end);
                }
            }
        }
    }

    #[test]
    fn product_is_associative(n in arity(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_invertible(&mut r, n, 2).with_start(Some(0)).unwrap();
        let b = random_invertible(&mut r, n, 2).with_start(Some(1)).unwrap();
        let c = random_invertible(&mut r, n, 3).with_start(Some(0)).unwrap();
        let left = a.product(&b).unwrap().product(&c).unwrap();
        let right = a.product(&b.product(&c).unwrap()).unwrap();
        let len = if n == 2 { 9 } else { 5 };
        prop_assert_eq!(left.num_states(), right.num_states());
        prop_assert!(outputs_agree(&left, left.start().unwrap(), &right, right.start().unwrap(), len));
    }

    #[test]
    fn inverse_cancels(n in arity(), seed in any::<u64>(), start in 0usize..3) {
        let t = random_bisync(&mut rng(seed), n, 3).with_start(Some(start)).unwrap();
        let inv = t.invert().unwrap();
        prop_assert!(t.product(&inv).unwrap().is_trivial());
        prop_assert!(inv.product(&t).unwrap().is_trivial());
    }

    #[test]
    fn sync_level_matches_enumeration(n in arity(), seed in any::<u64>(), states in 1usize..4) {
        let t = random_machine(&mut rng(seed), n, states);
        let bound = if n == 2 { 8 } else { 5 };
        match t.synchronization_certificate() {
            SyncVerdict::Synchronizing(cert) => {
                if cert.level <= bound {
                    prop_assert_eq!(oracle_sync_level(&t, bound), Some(cert.level));
                }
                let mut r = rng(seed ^ 1);
                for x in plain_words(n, cert.level) {
                    for _ in 0..5 {
                        let (p, q) = (r.gen_range(0..states), r.gen_range(0..states));
                        prop_assert_eq!(oracle_run(&t, p, &x).1, oracle_run(&t, q, &x).1);
                    }
                    prop_assert_eq!(cert.state_after(n, &x), oracle_run(&t, 0, &x).1);
                }
            }
            SyncVerdict::NotSynchronizing(cycle) => {
                prop_assert_eq!(oracle_sync_level(&t, bound), None);
                // the witness subsets are closed under some letter and never shrink to one state
                prop_assert!(cycle.iter().all(|s| s.len() > 1));
            }
        }
    }

    #[test]
    fn core_is_strongly_connected(n in arity(), seed in any::<u64>()) {
        let t = random_machine(&mut rng(seed), n, 4);
        if let SyncVerdict::Synchronizing(cert) = t.synchronization_certificate() {
            let core = t.core_extract().unwrap();
            prop_assert!(core.is_strongly_connected());
            match core.synchronization_certificate() {
                SyncVerdict::Synchronizing(c) => prop_assert!(c.level <= cert.level),
                SyncVerdict::NotSynchronizing(_) => prop_assert!(false, "core lost synchronization"),
            }
            let mut image: Vec<usize> = plain_words(n, cert.level).iter().map(|x| oracle_run(&t, 0, x).1).collect();
            image.sort_unstable();
            image.dedup();
            prop_assert_eq!(image, t.core_states().unwrap());
        }
    }

    #[test]
    fn tail_image_matches_simulation(n in arity(), seed in any::<u64>()) {
        let t = random_machine(&mut rng(seed), n, 4);
        let w: Vec<Letter> = vec![0, 1];
        for q in 0..4 {
            let tail = t.tail_image(q, &w).image;
            let input: Vec<Letter> = w.iter().cycle().take(40).copied().collect();
            let out = oracle_run(&t, q, &input).0;
            prop_assert_eq!(tail.prefix(40), out);
        }
    }
}

#[test]
fn bisynchronizing_is_decided_for_small_machines() {
    // every invertible machine over two letters with up to three states, sampled
    let mut r = rng(7);
    let mut both = 0;
    let mut one_sided = 0;
    for _ in 0..400 {
        let states = r.gen_range(1..=3);
        let t = random_invertible(&mut r, 2, states);
        let forward = matches!(t.synchronization_certificate(), SyncVerdict::Synchronizing(_));
        let backward = matches!(
            t.invert().unwrap().synchronization_certificate(),
            SyncVerdict::Synchronizing(_)
        );
        assert_eq!(forward, oracle_sync_level(&t, 8).is_some());
        assert_eq!(backward, oracle_sync_level(&t.invert().unwrap(), 8).is_some());
        if forward && backward {
            both += 1;
        } else if forward {
            one_sided += 1;
        }
    }
    assert!(both > 0);
    assert!(
        one_sided > 0,
        "some synchronizing machine should have a non-synchronizing inverse"
    );
}

#[test]
fn reset_machine_has_level_one() {
    // the next state depends only on the letter read
    let t = SynchronousTransducer::new(2, vec![vec![0, 1], vec![0, 1]], vec![vec![0, 1], vec![1, 0]]).unwrap();
    match t.synchronization_certificate() {
        SyncVerdict::Synchronizing(c) => assert_eq!(c.level, 1),
        other => panic!("{other:?}"),
    }
    assert_eq!(oracle_sync_level(&t, 3), Some(1));
}

#[test]
fn transient_state_is_dropped_from_core() {
    // state 2 feeds the swap state 0 and is never re-entered
    let t = SynchronousTransducer::new(
        2,
        vec![vec![0, 0], vec![0, 0], vec![0, 0]],
        vec![vec![1, 0], vec![0, 1], vec![0, 1]],
    )
    .unwrap();
    let core = t.core_extract().unwrap();
    assert_eq!(core.num_states(), 1);
    assert!(core.isomorphic(&SynchronousTransducer::letter_permutation(2, &[1, 0])));
}

#[test]
fn single_state_machines_are_level_zero() {
    let swap = SynchronousTransducer::letter_permutation(2, &[1, 0]);
    match swap.synchronization_certificate() {
        SyncVerdict::Synchronizing(c) => assert_eq!(c.level, 0),
        other => panic!("{other:?}"),
    }
}
