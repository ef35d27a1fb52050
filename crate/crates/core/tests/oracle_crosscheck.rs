use std::sync::Arc;

use siltwb::derived::{iso_test, DObject, Stalk};
use siltwb::oracle::{TypeAOracle, Window};
use siltwb::quiver::Quiver;
use siltwb::rep::{ext1_dim, Representation};
use siltwb::silting::{
    bongartz_complete, complete_presilting, is_presilting, is_silting, is_tilting_module,
    mutate_left, mutate_right, silting_to_tilting,
};
use siltwb::smc::{complete_presmc, smc_reduce, PreSmcCompletion};
use siltwb::Field;

fn oracle(q: Quiver) -> TypeAOracle {
    TypeAOracle::new(&Arc::new(q), Field::default()).unwrap()
}

fn orientations() -> Vec<Quiver> {
    vec![
        Quiver::linear_a(2),
        Quiver::linear_a(3),
        Quiver::new(3, vec![(0, 1), (2, 1)]).unwrap(),
        Quiver::new(3, vec![(1, 0), (1, 2)]).unwrap(),
    ]
}

fn in_list(list: &[DObject], t: &DObject) -> bool {
    list.iter().any(|s| iso_test(s, t))
}

fn in_window(t: &DObject, w: Window) -> bool {
    t.summands().iter().all(|s| w.contains(s.shift))
}

#[test]
fn is_silting_agrees_with_thick_closure() {
    let w = Window::default();
    for q in [Quiver::linear_a(2), Quiver::linear_a(3)] {
        let o = oracle(q);
        let silting = o.enumerate_silting(w);
        let mut agreed = 0;
        for t in o.enumerate_presilting(w) {
            assert!(is_presilting(&t), "{t}");
            assert_eq!(is_silting(&t), in_list(&silting, &t), "{t}");
            agreed += 1;
        }
        assert!(agreed > 0);
    }
}

#[test]
fn completions_appear_in_the_enumeration() {
    let w = Window::new(-1, 1).unwrap();
    for q in orientations() {
        let o = oracle(q);
        let wide = o.enumerate_silting(w.padded(2));
        for t in o.enumerate_presilting(w) {
            let out = complete_presilting(&t).unwrap();
            assert!(in_list(&wide, &out), "{t} completed to {out}");
        }
    }
}

#[test]
fn mutation_stays_in_enumeration_and_inverts() {
    let w = Window::new(-1, 1).unwrap();
    for q in orientations() {
        let o = oracle(q);
        let all = o.enumerate_silting(w);
        for t in &all {
            for m in t.summands() {
                let left = mutate_left(t, m).unwrap();
                if in_window(&left.result, w) {
                    assert!(in_list(&all, &left.result), "{t} at {m}");
                }
                let back_at = &left.new_summand.summands()[0];
                let back = mutate_right(&left.result, back_at).unwrap();
                assert!(iso_test(&back.result, t), "{t} at {m}: back to {}", back.result);
            }
        }
    }
}

#[test]
fn silting_objects_give_tilting_modules() {
    let w = Window::new(-1, 1).unwrap();
    for q in orientations() {
        let o = oracle(q);
        let tilting = o.enumerate_tilting_modules();
        for t in o.enumerate_silting(w) {
            let m = silting_to_tilting(&t).unwrap();
            assert!(is_tilting_module(&m));
            let obj = DObject::stalk(m, 0);
            assert!(tilting.iter().any(|x| iso_test(&DObject::stalk(x.clone(), 0), &obj)));
        }
    }
}

#[test]
fn bongartz_completes_rigid_modules() {
    for q in orientations() {
        let o = oracle(q);
        let qa = o.quiver().clone();
        let f = o.field();
        for t in o.enumerate_rigid(Window::new(0, 0).unwrap()) {
            let parts: Vec<&Representation> = t.summands().iter().map(|s| &s.rep).collect();
            let m = Representation::direct_sum(qa.clone(), f, &parts);
            assert_eq!(ext1_dim(&m, &m), 0);
            let n = bongartz_complete(&m).unwrap();
            let sum = Representation::direct_sum(qa.clone(), f, &[&m, &n]);
            assert!(is_tilting_module(&sum), "{t}");
        }
    }
}

#[test]
fn reduction_and_lift_reproduce_smcs() {
    let w = Window::new(-1, 1).unwrap();
    for q in orientations() {
        let o = oracle(q);
        for x in o.enumerate_smc(w) {
            for r in &x {
                let reduced = smc_reduce(&x, std::slice::from_ref(r)).unwrap();
                let mut back: Vec<Stalk> = reduced;
                back.push(r.clone());
                assert_eq!(back.len(), x.len());
                assert!(x.iter().all(|s| back.iter().any(|b| b.is_isomorphic(s))));
            }
        }
    }
}

#[test]
fn smc_completion_on_other_orientations() {
    let w = Window::new(-1, 1).unwrap();
    for q in orientations() {
        let o = oracle(q);
        let smcs = o.enumerate_smc(w.padded(2));
        for x in o.enumerate_pre_smc(w) {
            match complete_presmc(&x).unwrap() {
                PreSmcCompletion::Completed(c) => {
                    assert_eq!(c.class_determinant.abs(), 1);
                    assert!(smcs.iter().any(|s| c
                        .collection
                        .iter()
                        .all(|y| s.iter().any(|z| z.is_isomorphic(y)))));
                }
                PreSmcCompletion::NotCompletable { cycle } => panic!("{x:?} has cycle {cycle:?}"),
            }
        }
    }
}
