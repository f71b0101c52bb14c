use std::sync::Arc;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use sedf_core::catalog::catalog_groups;
use sedf_core::constructions::{
    construct_dihedral_sedf, construct_even_k, construct_pa_st, construct_paley, construct_trivial,
};
use sedf_core::params::enumerate_admissible;
use sedf_core::{
    automorphisms, canonical_form, equivalent, invert_family, map_family, search_all,
    translate_family, verify_coedf, verify_cosedf, verify_edf, verify_sedf, BlockFamily,
    FiniteGroup, GroupMap, Side,
};

/// Verified SEDFs, with their λ, in groups of order at most 24.
fn pool() -> Vec<(BlockFamily, usize)> {
    let mut out = vec![
        (construct_pa_st(2).unwrap(), 1),
        (construct_pa_st(3).unwrap(), 1),
        (construct_pa_st(4).unwrap(), 1),
        (construct_even_k(2).unwrap(), 1),
        (construct_paley(9).unwrap(), 2),
        (construct_paley(13).unwrap(), 3),
        (construct_paley(17).unwrap(), 4),
        (construct_dihedral_sedf(3).unwrap(), 1),
    ];
    for spec in ["Z6", "D8", "Z2xZ4", "SD(7,3,2)", "D12"] {
        let g = Arc::new(FiniteGroup::from_spec(spec).unwrap());
        out.push((construct_trivial(g).unwrap(), 1));
    }
    out
}

fn transform(
    fam: &BlockFamily,
    alpha: &GroupMap,
    g: usize,
    h: usize,
    perm_seed: u64,
) -> BlockFamily {
    let moved = map_family(fam, alpha).unwrap();
    let moved = translate_family(&moved, h, Side::Left).unwrap();
    let moved = translate_family(&moved, g, Side::Right).unwrap();
    let mut blocks = moved.blocks().to_vec();
    blocks.shuffle(&mut StdRng::seed_from_u64(perm_seed));
    BlockFamily::new(fam.group().clone(), blocks).unwrap()
}

fn random_family(g: &Arc<FiniteGroup>, m: usize, k: usize, seed: u64) -> BlockFamily {
    let mut elems: Vec<usize> = (0..g.order()).collect();
    elems.shuffle(&mut StdRng::seed_from_u64(seed));
    let blocks = (0..m).map(|i| elems[i * k..(i + 1) * k].to_vec()).collect();
    BlockFamily::new(g.clone(), blocks).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn canonical_form_is_invariant(
        which in 0usize..13,
        a in any::<u64>(),
        g in any::<u64>(),
        h in any::<u64>(),
        perm in any::<u64>(),
    ) {
        let pool = pool();
        let (fam, lambda) = &pool[which % pool.len()];
        let auts = automorphisms(fam.group());
        let n = fam.group().order();
        let alpha = &auts[(a % auts.len() as u64) as usize];
        let y = transform(fam, alpha, (g % n as u64) as usize, (h % n as u64) as usize, perm);
        prop_assert_eq!(canonical_form(&y), canonical_form(fam));
        prop_assert!(verify_sedf(&y, *lambda).unwrap());
        let w = equivalent(fam, &y).unwrap();
        prop_assert!(w.is_some());
        let w = w.unwrap();
        for (i, b) in fam.blocks().iter().enumerate() {
            let mut img: Vec<usize> = b.iter().map(|&x| w.apply(x)).collect();
            img.sort_unstable();
            prop_assert_eq!(&img, &y.blocks()[w.permutation[i]]);
        }
    }

    #[test]
    fn inversion_swaps_differences_and_codifferences(
        spec in prop::sample::select(vec!["D10", "SD(7,3,2)", "D12", "Z9", "D8"]),
        m in 2usize..4,
        k in 1usize..4,
        seed in any::<u64>(),
        lambda in 1usize..3,
    ) {
        let g = Arc::new(FiniteGroup::from_spec(spec).unwrap());
        prop_assume!(m * k <= g.order());
        let fam = random_family(&g, m, k, seed);
        let inv = invert_family(&fam);
        prop_assert_eq!(verify_sedf(&fam, lambda).unwrap(), verify_cosedf(&inv, lambda).unwrap());
        prop_assert_eq!(verify_edf(&fam, lambda).unwrap(), verify_coedf(&inv, lambda).unwrap());
        prop_assert_eq!(verify_cosedf(&fam, lambda).unwrap(), verify_sedf(&inv, lambda).unwrap());
    }
}

#[test]
fn inversion_on_known_families() {
    for (fam, lambda) in pool() {
        let inv = invert_family(&fam);
        assert!(verify_cosedf(&inv, lambda).unwrap(), "{fam}");
    }
    let d = construct_dihedral_sedf(3).unwrap();
    let inv = invert_family(&d);
    let expected = BlockFamily::parse_text("D10: {e,s,r^4},{sr,r^2,sr^4}").unwrap();
    assert_eq!(inv, expected);
    assert!(verify_sedf(&inv, 1).unwrap());
}

/// Families that are both SEDFs and coSEDFs with λ = 1 have two blocks or
/// singleton blocks.
#[test]
fn joint_lambda1_families_have_two_blocks_or_singletons() {
    let mut checked = 0;
    for p in enumerate_admissible(24, true) {
        if p.lambda != 1 || (p.is_trivial() && p.n > 8) {
            continue;
        }
        for g in catalog_groups(p.n).unwrap() {
            let g = Arc::new(g);
            for f in search_all(&g, p.m, p.k, 1).unwrap() {
                if verify_cosedf(&f, 1).unwrap() {
                    checked += 1;
                    assert!(p.m == 2 || p.k == 1, "{f}");
                }
            }
        }
    }
    assert!(checked > 0);
}

/// Equivalence is reflexive, symmetric and transitive on search output.
#[test]
fn equivalence_relation_on_search_output() {
    for (spec, m, k, lambda) in [("Z17", 2, 4, 1), ("D10", 2, 3, 1), ("Z10", 2, 3, 1)] {
        let g = Arc::new(FiniteGroup::from_spec(spec).unwrap());
        let fams = search_all(&g, m, k, lambda).unwrap();
        let sample: Vec<&BlockFamily> =
            fams.iter().step_by(fams.len().div_ceil(6).max(1)).collect();
        for x in &sample {
            assert!(equivalent(x, x).unwrap().is_some());
            for y in &sample {
                let xy = equivalent(x, y).unwrap().is_some();
                assert_eq!(xy, equivalent(y, x).unwrap().is_some());
                assert_eq!(xy, canonical_form(x) == canonical_form(y));
                for z in &sample {
                    if xy && equivalent(y, z).unwrap().is_some() {
                        assert!(equivalent(x, z).unwrap().is_some());
                    }
                }
            }
        }
    }
}
