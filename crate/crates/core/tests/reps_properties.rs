mod common;

use common::*;
use etalink::algebra::{Cyclotomic, Matrix, RootOfUnity};
use etalink::reps::{closure, ff2_rep, induce, pdp_element, Closure, FiniteRep, PdpSpec};
use proptest::prelude::*;
use rand::Rng;

fn commutator(a: usize, b: usize) -> Vec<(usize, i32)> {
    vec![(a, 1), (b, 1), (a, -1), (b, -1)]
}

fn inverse_word(w: &[(usize, i32)]) -> Vec<(usize, i32)> {
    w.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

/// `[[t_a, t_b], t_c]` as a word.
fn triple(a: usize, b: usize, c: usize) -> Vec<(usize, i32)> {
    let ab = commutator(a, b);
    let mut w = ab.clone();
    w.push((c, 1));
    w.extend(inverse_word(&ab));
    w.push((c, -1));
    w
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ff2_commutators_are_scalar(seed in any::<u64>(), k in 1usize..5, m in 2usize..5) {
        let mut r = rng(seed);
        let zs: Vec<RootOfUnity> = (0..k).map(|_| random_root(&mut r)).collect();
        let chi: Vec<RootOfUnity> = (0..m)
            .map(|_| RootOfUnity::new(r.random_range(0..k as i64), k as u64))
            .collect();
        let alpha = ff2_rep(k, &zs, &chi).unwrap();
        let id = Matrix::<Cyclotomic>::identity(k);
        for j in 1..m {
            let c = alpha.eval_word(&commutator(0, j)).unwrap();
            prop_assert_eq!(c, id.scale(&chi[0].inv().to_cyclotomic()));
            for l in 0..m {
                prop_assert_eq!(alpha.eval_word(&triple(0, j, l)).unwrap(), id.clone());
            }
            for l in 1..m {
                prop_assert_eq!(alpha.eval_word(&commutator(j, l)).unwrap(), id.clone());
            }
        }
    }

    #[test]
    fn induced_representations_are_homomorphisms(seed in any::<u64>(), which in 0usize..64) {
        let mut r = rng(seed);
        let groups = small_groups();
        let (name, gens) = &groups[which % groups.len()];
        let g = closure(gens, 64).group().unwrap().clone();
        let table = g.table().unwrap();
        let picks: Vec<usize> = (0..r.random_range(0..3)).map(|_| r.random_range(0..table.order())).collect();
        let q = generated(&table, &picks);
        let beta = if r.random_bool(0.5) {
            FiniteRep::trivial(table.subgroup(&q).unwrap(), 1)
        } else {
            restriction(g.elements(), &table, &q)
        };
        let ind = induce(&table, &q, &beta).unwrap();
        prop_assert_eq!(ind.dim, table.order() / q.len() * beta.dim, "{}", name);
        prop_assert!(ind.check_homomorphism().is_ok(), "{}", name);
    }

    #[test]
    fn pdp_generators_in_a_sylow_subgroup_close_to_p_groups(seed in any::<u64>(), pi in 0usize..3, k in 1usize..5, ngen in 1usize..4) {
        let mut r = rng(seed);
        let p = [2u64, 3, 5][pi];
        let max_root = [8u64, 9, 5][pi];
        let sylow = sylow_permutations(p, k);
        let gens: Vec<Matrix<Cyclotomic>> = (0..ngen)
            .map(|_| {
                let spec = PdpSpec {
                    perm: sylow[r.random_range(0..sylow.len())].clone(),
                    diag: (0..k)
                        .map(|_| RootOfUnity::new(r.random_range(0..max_root as i64), max_root))
                        .collect(),
                };
                pdp_element(p, &spec).unwrap()
            })
            .collect();
        match closure(&gens, 100_000) {
            Closure::Group(g) => prop_assert!(g.is_p_group(p), "order {} for p = {}", g.order(), p),
            Closure::Overflow { .. } => prop_assert!(false, "PD_p closure overflowed"),
        }
    }
}

#[test]
fn mixed_two_power_permutations_can_leave_two_groups() {
    // (0 1) and (1 2) each have order 2, yet together they generate S_3
    let spec = |perm: Vec<usize>| PdpSpec { perm, diag: vec![RootOfUnity::one(); 3] };
    let a = pdp_element(2, &spec(vec![1, 0, 2])).unwrap();
    let b = pdp_element(2, &spec(vec![0, 2, 1])).unwrap();
    let g = closure(&[a, b], 100).group().unwrap().order();
    assert_eq!(g, 6);
}

#[test]
fn induction_is_a_homomorphism_for_every_cyclic_and_pair_subgroup() {
    let mut checked = 0;
    for (name, gens) in small_groups() {
        let g = closure(&gens, 64).group().unwrap().clone();
        assert!(g.order() <= 16, "{name} has order {}", g.order());
        let table = g.table().unwrap();
        let s = table.order();
        let mut seen: Vec<Vec<usize>> = Vec::new();
        for a in 0..s {
            for b in a..s {
                let mut q = generated(&table, &[a, b]);
                let key = {
                    let mut k = q.clone();
                    k.sort();
                    k
                };
                if seen.contains(&key) {
                    continue;
                }
                seen.push(key);
                q.sort();
                for beta in [FiniteRep::trivial(table.subgroup(&q).unwrap(), 1), restriction(g.elements(), &table, &q)] {
                    if beta.dim * s / q.len() > 16 {
                        continue;
                    }
                    let ind = induce(&table, &q, &beta).unwrap();
                    ind.check_homomorphism().unwrap_or_else(|e| panic!("{name}, Q = {q:?}: {e}"));
                    checked += 1;
                }
            }
        }
    }
    assert!(checked >= 200, "only {checked} inductions checked");
}
