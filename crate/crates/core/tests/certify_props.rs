mod common;

use common::*;
use flatcert_core::certify::*;
use flatcert_core::flats::*;
use flatcert_core::moebius::OrientedGeodesic;
use flatcert_core::quaternion::{congruence_units, AlgebraDesc, GroupSpec, QuatElem};
use std::sync::OnceLock;

fn alg() -> AlgebraDesc {
    AlgebraDesc::from_ints(sqrt2(), 1, 1).unwrap()
}

fn anchored(n: usize) -> &'static ConfigSpec {
    static ONE: OnceLock<ConfigSpec> = OnceLock::new();
    static TWO: OnceLock<ConfigSpec> = OnceLock::new();
    let cell = if n == 1 { &ONE } else { &TWO };
    cell.get_or_init(|| {
        let (c, report) =
            anchor_configuration(&build_configuration(n, 2).unwrap(), &alg(), 5).unwrap();
        assert!(c.has_triangular_pattern().unwrap());
        assert_eq!(report.alpha.len(), n);
        assert_eq!(report.beta.len(), n);
        for (b, beta) in c.b().iter().zip(&report.beta) {
            assert_eq!(b.provenance(), Some(beta));
        }
        c
    })
}

#[test]
fn signed_count_examples() {
    let a = alg();
    let g = OrientedGeodesic::from_rationals(rat(0, 1), rat(1, 1)).unwrap();
    let rec = |s: CrossingSign| TranslateRecord {
        gamma: QuatElem::one(&a),
        flat: Flat::diagonal(g.clone(), 2).unwrap(),
        sign: s,
    };
    assert_eq!(signed_count(&[]), (0, true));
    let plus = rec(CrossingSign::Positive);
    assert_eq!(
        signed_count(&[plus.clone(), plus.clone(), plus.clone()]),
        (3, true)
    );
    assert_eq!(
        signed_count(&[plus, rec(CrossingSign::Negative)]),
        (0, false)
    );
}

#[test]
fn flipping_b_negates_counts() {
    let c = anchored(2);
    let g = GroupSpec::new(&alg(), 2, 5).unwrap();
    for (i, a) in c.a().iter().enumerate() {
        for (j, b) in c.b().iter().enumerate() {
            let (n, ok) = signed_count(&orbit_translates(a, b, &g).unwrap());
            // the orientation of a product flat flips with one factor
            let mut coords = b.coords().to_vec();
            coords[0] = coords[0].reversed();
            let flipped = Flat::new(coords).unwrap();
            let (m, ok2) = signed_count(&orbit_translates(a, &flipped, &g).unwrap());
            assert_eq!(m, -n, "entry ({i},{j})");
            assert_eq!(ok, ok2);
            // reversing both factors of r = 2 keeps the orientation
            let (k, _) = signed_count(&orbit_translates(a, &b.reversed(), &g).unwrap());
            assert_eq!(k, n);
        }
    }
}

#[test]
fn dedup_is_an_equivalence() {
    let c = anchored(2);
    let g = GroupSpec::new(&alg(), 2, 5).unwrap();
    let units = congruence_units(&g);
    let (a, b) = (&c.a()[0], &c.b()[1]);
    let stab = stabilizer_in(b, &units).unwrap();
    assert!(stab.iter().any(|d| d.is_one()));
    let raw = orbit_scan_with(a, b, &units, &[]).unwrap();
    let kept = orbit_scan_with(a, b, &units, &stab).unwrap();
    assert!(!kept.records.is_empty());
    assert_eq!(
        kept.records.len() + kept.duplicates,
        raw.records.len() + raw.duplicates
    );
    for r in &raw.records {
        assert!(translates_equivalent(&r.flat, &r.flat, &stab).unwrap());
    }
    for (n, r) in raw.records.iter().enumerate() {
        for s in &raw.records[..n] {
            assert_eq!(
                translates_equivalent(&r.flat, &s.flat, &stab).unwrap(),
                translates_equivalent(&s.flat, &r.flat, &stab).unwrap()
            );
        }
    }
    for (n, r) in kept.records.iter().enumerate() {
        for s in &kept.records[..n] {
            assert!(!translates_equivalent(&r.flat, &s.flat, &stab).unwrap());
            assert!(!translates_equivalent(&s.flat, &r.flat, &stab).unwrap());
        }
    }
}

#[test]
fn accepted_certificates_are_stable_in_height() {
    for n in [1, 2] {
        let c = anchored(n);
        for h in [5, 6] {
            let cert = certify(c, &GroupSpec::new(&alg(), 3, h).unwrap()).unwrap();
            assert_eq!(
                cert.verdict,
                Verdict::RankAtLeastN(n),
                "n={n} H={h}: {:?}",
                cert.caveats
            );
            assert!(cert.matrix.is_upper_triangular());
            assert!(cert.matrix.has_nonzero_diagonal());
            let pattern = c.pattern().unwrap();
            for i in 0..n {
                for j in 0..n {
                    if i > j {
                        assert!(!pattern[i][j]);
                    }
                    let w = &cert.matrix.witnesses[i][j];
                    assert_eq!(cert.matrix.entries[i][j].unsigned_abs() as usize, w.len());
                }
            }
            assert!(cert.caveats[0].contains("window"));
        }
    }
}

#[test]
fn vanishing_diagonal_is_inconclusive() {
    let far = OrientedGeodesic::from_rationals(rat(2, 1), rat(3, 1)).unwrap();
    let near = OrientedGeodesic::from_rationals(rat(-1, 1), rat(1, 1)).unwrap();
    let c = ConfigSpec::new(
        vec![Flat::diagonal(near, 2).unwrap()],
        vec![Flat::diagonal(far, 2).unwrap()],
    )
    .unwrap();
    let cert = certify(&c, &GroupSpec::new(&alg(), 4, 1).unwrap()).unwrap();
    assert_eq!(cert.verdict, Verdict::Inconclusive);
    assert_eq!(cert.matrix.entries, vec![vec![0]]);
    assert!(cert.caveats.iter().any(|s| s.contains("increase height H")));
    assert!(cert
        .caveats
        .iter()
        .any(|s| s.contains("stabilizing element")));
}
