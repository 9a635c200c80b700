//! End-to-end verification of the assembled ring over the canonical basis.

use crcoh::rational::{integer, rational};
use crcoh::{
    canonical_basis, cr_poincare, enumerate_labels, fixed_locus_relation, product, run_suite,
    untwisted_poincare, BasisKind, CrClass, ExteriorMonomial, FixedLocusRelation, Sampler, Suite,
};
use std::collections::BTreeMap;

#[test]
fn exhaustive_suites_pass_for_genus_two() {
    let expected = [
        (Suite::Associativity, 39_304),
        (Suite::Frobenius, 39_304),
        (Suite::Graded, 1_156),
        (Suite::PairingRank, 17),
    ];
    for (suite, count) in expected {
        let report = run_suite(2, suite, &Sampler::Exhaustive).unwrap();
        assert!(report.passed(), "{suite}: {:?}", report.violations);
        assert_eq!(report.checked, count, "{suite}");
    }
}

#[test]
fn exhaustive_suites_pass_for_genus_three() {
    // The triple suites pair every ordered basis pair with the third factors
    // of complementary degree.
    let expected = [
        (Suite::Associativity, 863_380),
        (Suite::Frobenius, 863_380),
        (Suite::Graded, 261_121),
        (Suite::PairingRank, 130),
    ];
    for (suite, count) in expected {
        let report = run_suite(3, suite, &Sampler::Exhaustive).unwrap();
        assert!(report.passed(), "{suite}: {:?}", report.violations);
        assert_eq!(report.checked, count, "{suite}");
    }
}

#[test]
fn seeded_suites_pass_for_larger_genus() {
    for (genus, seed) in [(4, 0), (5, 42)] {
        let sampler = Sampler::Seeded { samples: 200, seed };
        for suite in [Suite::Associativity, Suite::Frobenius, Suite::Graded] {
            let report = run_suite(genus, suite, &sampler).unwrap();
            assert!(
                report.passed(),
                "{suite} at g = {genus}: {:?}",
                report.violations
            );
            assert_eq!(report.checked, 200);
        }
    }
}

#[test]
fn unit_is_neutral_across_the_basis() {
    for g in [2, 3] {
        let one = CrClass::one(g).unwrap();
        for element in canonical_basis(g).unwrap() {
            assert_eq!(product(&one, &element.class).unwrap(), element.class);
        }
    }
}

#[test]
fn basis_matches_twisted_poincare_coefficients() {
    for g in [2usize, 3] {
        let mut counts: BTreeMap<usize, i64> = BTreeMap::new();
        for element in canonical_basis(g).unwrap() {
            if matches!(element.kind, BasisKind::Sector { .. }) {
                *counts.entry(element.cr_degree).or_insert(0) += 1;
            }
        }
        let twisted = &cr_poincare(g).unwrap().poly().clone() - &untwisted_poincare(g).unwrap();
        for (degree, count) in counts {
            assert_eq!(
                twisted.coeff(degree),
                integer(count),
                "degree {degree} at g = {g}"
            );
        }
    }
}

#[test]
fn products_respect_fixed_locus_geometry() {
    let g = 2;
    let labels: Vec<_> = enumerate_labels(g)
        .unwrap()
        .filter(|l| !l.is_zero())
        .collect();
    for l1 in &labels {
        for l2 in &labels {
            if l1 == l2 {
                continue;
            }
            let a = CrClass::sector_term(l1, ExteriorMonomial::UNIT, integer(1)).unwrap();
            let b = CrClass::sector_term(l2, ExteriorMonomial::UNIT, integer(1)).unwrap();
            let prod = product(&a, &b).unwrap();
            match fixed_locus_relation(l1, l2).unwrap() {
                FixedLocusRelation::Disjoint => {
                    assert!(prod.is_zero(), "{l1} * {l2} should vanish")
                }
                FixedLocusRelation::FinitePoints(_) => {
                    let sector = prod.sector_part(&l1.tensor(l2).unwrap()).unwrap();
                    let top = ExteriorMonomial::top(g).unwrap();
                    assert_eq!(sector.coefficient(&top), rational(1, 4));
                }
                other => panic!("unexpected relation {other:?} for distinct nonzero labels"),
            }
        }
    }
}
