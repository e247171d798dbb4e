use std::collections::BTreeSet;

use hflens_core::alexpoly::SymLaurentPoly;
use hflens_core::lens::{d_vector, DCache, LensSpec};
use hflens_core::ratmod::{gcd, mod_inverse, units_mod, Rational};
use hflens_core::surgery::{
    accepted_correspondences, complexity_lower_bound, enumerate_family, frac_surgery_chain_check,
    renormalized_complexity_s3, surgery_descriptor, zero_surgery_profile, Correspondence, SurgeryScreen, SurgerySign,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn coprime_pairs(pmin: u64, pmax: u64) -> Vec<(u64, i64)> {
    (pmin..=pmax).flat_map(|p| (1..p as i64).filter(move |&q| gcd(p as i64, q) == 1).map(move |q| (p, q))).collect()
}

fn relabeled_family(p: u64, q: i64, a: u64, u: u64) -> BTreeSet<SymLaurentPoly> {
    let dl = d_vector(p, q).unwrap().reversed();
    // new label i carries the value of old label a + u·i
    let moved = (0..p).map(|i| dl[((a + u * i) % p) as usize].clone()).collect();
    SurgeryScreen::from_values(p, moved).family()
}

#[test]
fn families_ignore_affine_relabeling() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for (p, q) in coprime_pairs(2, 26) {
        let base = enumerate_family(p, q).unwrap();
        let units = units_mod(p);
        for _ in 0..4 {
            let u = units[rng.gen_range(0..units.len())].value();
            let a = rng.gen_range(0..p);
            assert_eq!(relabeled_family(p, q, a, u), base, "L({p},{q}) relabel a={a} u={u}");
        }
    }
}

#[test]
fn members_are_normalized_and_nonnegative() {
    for (p, q) in coprime_pairs(2, 26) {
        for poly in enumerate_family(p, q).unwrap() {
            assert_eq!(poly.eval_at_one(), 1);
            assert!(poly.torsion_coeffs().is_nonnegative());
        }
    }
}

#[test]
fn q_one_gives_trivial_polynomial() {
    for p in 2..=26 {
        assert_eq!(enumerate_family(p, 1).unwrap(), BTreeSet::from([SymLaurentPoly::one()]));
    }
}

#[test]
fn small_lens_spaces_admit_nothing_else() {
    for (p, q) in coprime_pairs(2, 4) {
        if q != 1 {
            assert!(enumerate_family(p, q).unwrap().is_empty(), "L({p},{q})");
        }
    }
}

#[test]
fn accepted_correspondences_close_under_symmetries() {
    for (p, q) in coprime_pairs(2, 26) {
        let here = accepted_correspondences(p, q).unwrap();
        let qinv = mod_inverse(q, p).unwrap().value() as i64;
        let there = accepted_correspondences(p, qinv).unwrap();
        for cand in &here {
            let h = cand.correspondence.h.value() as i64;
            // conjugation: i -> -i
            assert!(here
                .iter()
                .any(|o| o.correspondence.h.value() as i64 == (p as i64 - h) % p as i64 && o.torsion == cand.torsion));
            // L(p,q) ≅ L(p,q^{-1}) reverses the correspondence
            let hinv = mod_inverse(h, p).unwrap().value();
            assert!(
                there.iter().any(|o| o.correspondence.h.value() == hinv && o.torsion == cand.torsion),
                "L({p},{q}) (c,h)=({},{h})",
                cand.correspondence.c
            );
        }
    }
}

#[test]
fn zero_surgery_matches_integral_homology_spheres() {
    let half = Rational::from_bigints(1.into(), 2.into()).unwrap();
    for (p, q) in coprime_pairs(2, 26) {
        for cand in accepted_correspondences(p, q).unwrap() {
            let prof = zero_surgery_profile(p, q, &cand.correspondence).unwrap();
            let plus = surgery_descriptor(&cand.poly, 1, SurgerySign::Plus).unwrap();
            let minus = surgery_descriptor(&cand.poly, 1, SurgerySign::Minus).unwrap();
            assert_eq!(&prof.d_plus_half - &half, plus.d);
            assert_eq!(&minus.d - &half, prof.d_minus_half);
            assert!(prof.sigma_plus >= 0);
            assert!(prof.d_plus_half <= half);
            assert_eq!(prof.torsion, cand.torsion);
            let chain: Vec<_> = (1..=4)
                .flat_map(|n| {
                    [SurgerySign::Plus, SurgerySign::Minus].map(|s| surgery_descriptor(&cand.poly, n, s).unwrap())
                })
                .collect();
            assert_eq!(frac_surgery_chain_check(&chain, &prof), Ok(()));
        }
    }
}

#[test]
fn complexity_bound_below_renormalized_sum() {
    for (p, q) in coprime_pairs(2, 26) {
        for poly in enumerate_family(p, q).unwrap() {
            for n in 1..=5 {
                let desc = surgery_descriptor(&poly, n, SurgerySign::Plus).unwrap();
                assert!(Rational::from(complexity_lower_bound(&poly, n)) <= renormalized_complexity_s3(&desc));
            }
        }
    }
}

#[test]
fn euler_characteristic_minus_half_d_is_casson() {
    for (p, q) in coprime_pairs(2, 26) {
        for poly in enumerate_family(p, q).unwrap() {
            for n in 1..=4 {
                for sign in [SurgerySign::Plus, SurgerySign::Minus] {
                    let desc = surgery_descriptor(&poly, n, sign).unwrap();
                    let lhs = Rational::from(desc.chi_red) - &desc.d / &Rational::from(2);
                    assert_eq!(lhs, Rational::from(desc.casson));
                }
            }
        }
    }
}

#[test]
fn screen_shares_cache() {
    let mut cache = DCache::new();
    let lens = LensSpec::new(21, 16).unwrap();
    let screen = SurgeryScreen::new(lens, &mut cache);
    assert_eq!(screen.family().len(), 2);
    assert!(!cache.is_empty());
    let id = Correspondence::identity(21).unwrap();
    assert!(screen.screen(&id).is_err());
}
