use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;
use crate::diagram::builder::corpus;
use crate::ring::{AlphaPolys, Integers, PrimeField, QPoly, RatPolyH, Rationals};

fn load(name: &str) -> AnnularDiagram {
    let f = corpus().into_iter().find(|f| f.name.as_deref() == Some(name)).unwrap();
    AnnularDiagram::from_file(&f).unwrap()
}

fn int_complex(name: &str) -> ChainComplex<Integers> {
    build_complex(&load(name), &Tqft::new(Integers, Variant::AnnularZero).unwrap()).unwrap()
}

fn int_matrix(rows: &[Vec<i64>]) -> SparseMatrix<BigInt> {
    let d: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    SparseMatrix::from_dense(&Integers, rows.len(), rows.first().map_or(0, |r| r.len()), &d)
}

fn dense_mul<R: Ring>(ring: &R, a: &Dense<R::Elem>, b: &Dense<R::Elem>, inner: usize, cols: usize) -> Dense<R::Elem> {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(ring.zero(), |acc, k| ring.add(&acc, &ring.mul(&row[k], &b[k][j])))
                })
                .collect()
        })
        .collect()
}

#[test]
fn snf_small_cases() {
    let r = smith_normal_form(&Integers, &int_matrix(&[vec![2]]), false);
    assert_eq!(r.invariants, vec![BigInt::from(2)]);
    let r = smith_normal_form(&Integers, &int_matrix(&[vec![0]]), false);
    assert_eq!((r.rank, r.invariants.len()), (0, 0));
    let r = smith_normal_form(&Integers, &int_matrix(&[vec![2, 0], vec![0, 3]]), false);
    assert_eq!(r.invariants, vec![BigInt::from(1), BigInt::from(6)]);

    let h = QPoly::h();
    let h2 = h.mul(&h);
    let m = SparseMatrix::from_dense(&RatPolyH, 2, 2, &[vec![h.clone(), QPoly::zero()], vec![QPoly::zero(), h2.clone()]]);
    let r = smith_normal_form(&RatPolyH, &m, false);
    assert_eq!(r.invariants, vec![h, h2]);

    let f = SparseMatrix::from_dense(&Rationals, 1, 2, &[vec![Rationals.from_int(3), Rationals.from_int(5)]]);
    assert_eq!(smith_normal_form(&Rationals, &f, false).invariants, vec![Rationals.one()]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_witnesses(entries in proptest::collection::vec(-6i64..7, 12), shape in 0usize..3) {
        let (rows, cols) = [(3, 4), (4, 3), (2, 6)][shape];
        let rows_v: Vec<Vec<i64>> = entries.chunks(cols).take(rows).map(|c| c.to_vec()).collect();
        let a = int_matrix(&rows_v);
        let res = smith_normal_form(&Integers, &a, true);
        let w = res.witnesses.as_ref().unwrap();
        let z = &Integers;
        let uav = dense_mul(z, &dense_mul(z, &w.u, &a.to_dense(z), rows, cols), &w.v, cols, cols);
        for (i, row) in uav.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let expect = if i == j && i < res.rank { res.invariants[i].clone() } else { BigInt::from(0) };
                prop_assert_eq!(x, &expect);
            }
        }
        for pair in res.invariants.windows(2) {
            prop_assert!(z.divides(&pair[0], &pair[1]));
        }
        prop_assert!(res.invariants.iter().all(|d| d > &BigInt::from(0)));
        let vv = dense_mul(z, &w.v, &w.v_inv, cols, cols);
        for (i, row) in vv.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                prop_assert_eq!(x, &BigInt::from(i64::from(i == j)));
            }
        }
        prop_assert_eq!(res.rank, rank(&Rationals, &a.map(&Rationals, |x| Rationals.from_bigint(x))));
    }
}

#[test]
fn unknot_tables() {
    let h = homology(&int_complex("trivial_unknot"));
    let keys: Vec<_> = h.entries.keys().copied().collect();
    assert_eq!(keys, vec![(0, Some(-1), 0), (0, Some(1), 0)]);
    let h = homology(&int_complex("essential_unknot"));
    let keys: Vec<_> = h.entries.keys().copied().collect();
    assert_eq!(keys, vec![(0, Some(-1), -1), (0, Some(1), 1)]);
    assert_eq!(h.poincare_table().len(), 2);
    assert!(h.entries.values().all(|g| g.rank == 1 && g.torsion.is_empty()));
}

#[test]
fn trefoil_tables() {
    // Planar Khovanov homology of the right trefoil over Z, in a q
    // convention where 1 sits in degree -1 (the usual table, q negated).
    let d = load("trefoil_planar");
    let c = build_complex(&d, &Tqft::new(Integers, Variant::Planar).unwrap()).unwrap();
    let h = homology(&c);
    let rows: Vec<(i32, i32, usize, Vec<String>)> = h
        .poincare_table()
        .into_iter()
        .map(|r| (r.i, r.q.unwrap(), r.rank, r.torsion))
        .collect();
    assert_eq!(
        rows,
        vec![
            (0, -3, 1, vec![]),
            (0, -1, 1, vec![]),
            (2, -5, 1, vec![]),
            (3, -9, 1, vec![]),
            (3, -7, 0, vec!["2".to_string()]),
        ]
    );
    assert_eq!(euler_check(&c, &h), Ok(()));
}

#[test]
fn euler_characteristic_matches_chain_ranks() {
    for name in ["trefoil", "hopf_essential", "r2_straddle_b", "r3_mixed_a", "clasp"] {
        let d = load(name);
        let c = build_complex(&d, &Tqft::new(Integers, Variant::AnnularZero).unwrap()).unwrap();
        assert_eq!(euler_check(&c, &homology(&c)), Ok(()), "{name}");
        let c = build_complex(&d, &Tqft::new(RatPolyH, Variant::AnnularH).unwrap()).unwrap();
        assert_eq!(euler_check(&c, &homology(&c)), Ok(()), "{name}");
        let c = build_complex(&d, &Tqft::new(PrimeField::new(2).unwrap(), Variant::AnnularZero).unwrap()).unwrap();
        assert_eq!(euler_check(&c, &homology(&c)), Ok(()), "{name}");
    }
}

#[test]
fn h_torsion_is_monic() {
    let c = build_complex(&load("essential_unknot"), &Tqft::new(RatPolyH, Variant::AnnularH).unwrap()).unwrap();
    let h = homology(&c);
    assert_eq!(h.total_rank(), 2);
    let c = build_complex(&load("trefoil"), &Tqft::new(RatPolyH, Variant::AnnularH).unwrap()).unwrap();
    let h = homology(&c);
    for g in h.entries.values() {
        for t in &g.torsion {
            assert!(t.starts_with('h'), "{t}");
        }
    }
}

#[test]
fn lee_ranks() {
    for (name, expect) in [
        ("trivial_unknot", 2),
        ("essential_unknot", 2),
        ("essential_unknot_cw", 2),
        ("clasp", 2),
        ("hopf_null", 4),
        ("hopf_essential", 4),
        ("trefoil", 2),
        ("trefoil_left", 2),
    ] {
        assert_eq!(lee_rank(&load(name)).unwrap(), expect, "{name}");
    }
}

#[test]
fn canonical_generators_by_hand() {
    let d = load("essential_unknot");
    let g = canonical_generator(&d, &OrientationChoice::keep(1)).unwrap();
    assert_eq!((g.labels.clone(), g.word_label.as_str(), g.adeg), (vec![true], "w0", -1));
    let g = canonical_generator(&d, &OrientationChoice { flags: vec![true] }).unwrap();
    assert_eq!((g.labels.clone(), g.word_label.as_str(), g.adeg), (vec![false], "w1", 1));
    let g = canonical_generator(&load("trivial_unknot"), &OrientationChoice::keep(1)).unwrap();
    assert_eq!((g.labels.clone(), g.word_label.as_str(), g.adeg), (vec![true], "e1", 0));
}

fn localized(d: &AnnularDiagram) -> ChainComplex<AlphaEval> {
    build_complex(d, &Tqft::new(AlphaEval::from_ints(0, 1), Variant::AnnularD).unwrap()).unwrap()
}

#[test]
fn canonical_generators_are_cycles() {
    for name in ["essential_unknot", "essential_unknot_cw", "trivial_unknot", "hopf_null", "hopf_essential", "trefoil", "trefoil_left", "clasp"] {
        let d = load(name);
        let c = localized(&d);
        let mut gens = Vec::new();
        for o in OrientationChoice::all(d.component_count()) {
            let rep = verify_canonical(&c, &d, &o).unwrap();
            assert!(rep.passed(), "{name} {o:?}: {rep:?}");
            gens.push(rep.generator);
        }
        assert_eq!(span_in_homology(&c, &gens), 1 << d.component_count(), "{name}");
    }
    // The right trefoil: m = 2 essential circles, w = 2 either way round.
    let d = load("trefoil");
    let rep = verify_canonical(&localized(&d), &d, &OrientationChoice::keep(1)).unwrap();
    assert_eq!((rep.generator.essential_circles, rep.winding, rep.generator.adeg), (2, 2, 2));
}

#[test]
fn canonical_needs_idempotent_bases() {
    let d = load("essential_unknot");
    let c = build_complex(&d, &Tqft::new(AlphaPolys, Variant::AnnularAlpha).unwrap()).unwrap();
    assert!(!verify_canonical(&c, &d, &OrientationChoice::keep(1)).unwrap().is_cycle);
}

#[test]
fn tables_render() {
    assert_eq!(BigradedHomology::default().to_tsv(), "i\tq\ta\trank\ttorsion\n");
    let h = homology(&int_complex("essential_unknot"));
    assert_eq!(h.to_tsv(), "i\tq\ta\trank\ttorsion\n0\t-1\t-1\t1\t-\n0\t1\t1\t1\t-\n");
    assert_eq!(BigradedHomology::from_json(&h.to_json()).unwrap(), h);
    let l = localized_homology(&load("essential_unknot")).unwrap();
    assert!(l.to_tsv().lines().skip(1).all(|line| line.split('\t').nth(1) == Some("*")));
}
