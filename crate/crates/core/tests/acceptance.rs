//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

mod common;

use std::collections::{BTreeMap, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::Instant;

use annkh::complex::{build_complex, build_cube, check_functoriality, check_splitting, ChainComplex};
use annkh::diagram::builder::REIDEMEISTER_PAIRS;
use annkh::diagram::{AnnularDiagram, OrientationChoice};
use annkh::homology::{homology, lee_rank, span_in_homology, verify_canonical, BigradedHomology};
use annkh::matrix::SparseMatrix;
use annkh::ring::{
    AlphaEval, AlphaPolys, AlphaRing, BivariatePoly, EuclideanRing, Integers, PrimeField, QDeg, QGrading, RatPolyH,
    Rationals, Ring,
};
use annkh::tl::{enumerate_reduced, loop_value, reduce, spin_evaluate, DottedTangle, TlMorphism};
use annkh::tqft::{SaddleKind, StateSpace, Tqft, Variant};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn corpus() -> Vec<(String, AnnularDiagram)> {
    let dir: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "corpus"].iter().collect();
    let mut paths: Vec<PathBuf> = std::fs::read_dir(&dir)
        .expect("corpus directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            let d = AnnularDiagram::load(&p).unwrap_or_else(|e| panic!("{name}: {e}"));
            (name, d)
        })
        .collect()
}

fn find<'a>(all: &'a [(String, AnnularDiagram)], name: &str) -> &'a AnnularDiagram {
    &all.iter().find(|(n, _)| n == name).unwrap_or_else(|| panic!("{name} missing")).1
}

fn complex<R: AlphaRing>(ring: R, v: Variant, d: &AnnularDiagram) -> Result<ChainComplex<R>, String> {
    let t = Tqft::new(ring, v).map_err(|e| e.to_string())?;
    build_complex(d, &t).map_err(|e| e.to_string())
}

/// `b * a == 0`, multiplied out from the triplets.
fn product_vanishes<R: Ring>(ring: &R, a: &SparseMatrix<R::Elem>, b: &SparseMatrix<R::Elem>) -> bool {
    sum_of_products_vanishes(ring, &[(a, b)])
}

fn sum_of_products_vanishes<R: Ring>(ring: &R, pairs: &[(&SparseMatrix<R::Elem>, &SparseMatrix<R::Elem>)]) -> bool {
    let mut acc: HashMap<(usize, usize), R::Elem> = HashMap::new();
    for (a, b) in pairs {
        let mut by_col: HashMap<usize, Vec<(usize, &R::Elem)>> = HashMap::new();
        for (r, j, v) in b.iter() {
            by_col.entry(j).or_default().push((r, v));
        }
        for (j, c, x) in a.iter() {
            for (r, y) in by_col.get(&j).into_iter().flatten() {
                let e = acc.entry((*r, c)).or_insert_with(|| ring.zero());
                *e = ring.add(e, &ring.mul(y, x));
            }
        }
    }
    acc.values().all(|v| ring.is_zero(v))
}

fn criterion_1() -> Outcome {
    let all = corpus();
    let mut checked = 0;
    for (name, d) in &all {
        ensure(d.crossing_count() <= 6, || format!("{name} has {} crossings", d.crossing_count()))?;
        for v in [Variant::AnnularAlpha, Variant::Planar] {
            let c = complex(AlphaPolys, v, d)?;
            c.verify_d_squared().map_err(|e| format!("{name} {v}: {e:?}"))?;
            for pair in c.differentials.windows(2) {
                ensure(product_vanishes(&c.ring, &pair[0], &pair[1]), || format!("{name} {v}: d^2 nonzero"))?;
            }
            checked += c.differentials.len().saturating_sub(1);
        }
    }
    Ok(format!("{} diagrams, {checked} products", all.len()))
}

/// Expected images of basis words under the formulas with both alphas zero.
fn zero_formula(kind: SaddleKind, bits: &[usize]) -> Vec<Vec<usize>> {
    match (kind, bits) {
        (SaddleKind::MergeTT, [0, 0]) => vec![vec![0]],
        (SaddleKind::MergeTT, [0, 1] | [1, 0]) => vec![vec![1]],
        (SaddleKind::MergeTT, _) => vec![],
        (SaddleKind::SplitT, [0]) => vec![vec![0, 1], vec![1, 0]],
        (SaddleKind::SplitT, _) => vec![vec![1, 1]],
        (SaddleKind::TypeI, [b, 0]) => vec![vec![*b]],
        (SaddleKind::TypeI, _) => vec![],
        (SaddleKind::TypeII, [1, 0] | [0, 1]) => vec![vec![1]],
        (SaddleKind::TypeII, _) => vec![],
        (SaddleKind::TypeIII, [b]) => vec![vec![*b, 1]],
        (SaddleKind::TypeIV, [0]) => vec![vec![0, 1], vec![1, 0]],
        _ => vec![],
    }
}

fn word(space: &StateSpace, bits: &[usize]) -> usize {
    bits.iter().enumerate().fold(0, |w, (j, &b)| space.with_bit(w, j, b))
}

fn criterion_2() -> Outcome {
    let t = Tqft::new(AlphaPolys, Variant::AnnularAlpha).map_err(|e| e.to_string())?;
    let z = Tqft::new(Integers, Variant::AnnularZero).map_err(|e| e.to_string())?;
    let mut entries = 0;
    for kind in SaddleKind::ALL {
        for first in [1, 2, 3] {
            let (from, to, s) = t.elementary(kind, first);
            let m = t.saddle(&s, &from, &to).map_err(|e| e.to_string())?;
            let spec = m.map_ring(&Integers, |p| Integers.specialize(p));
            let (zf, zt, zs) = z.elementary(kind, first);
            let table = z.saddle(&zs, &zf, &zt).map_err(|e| e.to_string())?;
            for w in 0..from.rank() {
                let bits: Vec<usize> = (0..from.slots.len()).map(|j| from.bit(w, j)).collect();
                let images: Vec<usize> = zero_formula(kind, &bits).iter().map(|b| word(&to, b)).collect();
                for target in 0..to.rank() {
                    let expect = BigInt::from(usize::from(images.contains(&target)));
                    for (label, got) in [("specialized", spec.matrix.get(target, w)), ("table", table.matrix.get(target, w))] {
                        let got = got.cloned().unwrap_or_default();
                        ensure(got == expect, || {
                            format!("{kind} at {first}, {label}: {} -> {} is {got}", from.label(w), to.label(target))
                        })?;
                    }
                    entries += 1;
                }
            }
        }
    }
    // Dotted essential identities vanish once the alphas are zero.
    for index in [1, 2, 3] {
        let space = StateSpace::new(vec![t.slot(None), t.slot(Some(index))]);
        for dots in 1..=4 {
            let m = t.dotted_identity(&space, 1, dots).map_err(|e| e.to_string())?;
            let spec = m.map_ring(&Integers, |p| Integers.specialize(p));
            ensure(!m.matrix.is_zero() && spec.matrix.is_zero(), || format!("{dots} dots on essential circle {index}"))?;
            let zs = StateSpace::new(vec![z.slot(None), z.slot(Some(index))]);
            ensure(z.dotted_identity(&zs, 1, dots).map_err(|e| e.to_string())?.matrix.is_zero(), || {
                format!("{dots} dots on essential circle {index} in the zero theory")
            })?;
        }
    }
    Ok(format!("{entries} entries match"))
}

fn criterion_3() -> Outcome {
    let all = corpus();
    let (mut edges, mut pairs) = (0, 0);
    for v in [Variant::AnnularAlpha, Variant::Beta] {
        let t = Tqft::new(AlphaPolys, v).map_err(|e| e.to_string())?;
        for (name, d) in &all {
            let cube = build_cube(d, &t).map_err(|e| e.to_string())?;
            edges += check_splitting(&cube, &t).map_err(|e| format!("{name} {v}: {e}"))?;
            pairs += check_functoriality(&cube, &t).map_err(|e| format!("{name} {v}: {e}"))?;
        }
    }
    let t = Tqft::new(AlphaEval::from_ints(0, 1), Variant::AnnularD).map_err(|e| e.to_string())?;
    for (name, d) in &all {
        let cube = build_cube(d, &t).map_err(|e| e.to_string())?;
        check_splitting(&cube, &t).map_err(|e| format!("{name} localized: {e}"))?;
        pairs += check_functoriality(&cube, &t).map_err(|e| format!("{name} localized: {e}"))?;
    }
    Ok(format!("{edges} edges split, {pairs} composable pairs commute"))
}

fn criterion_4() -> Outcome {
    let all = corpus();
    for (name, expect) in [("essential_unknot", 2), ("trivial_unknot", 2), ("hopf_null", 4), ("hopf_essential", 4), ("trefoil", 2), ("trefoil_left", 2)] {
        let got = lee_rank(find(&all, name)).map_err(|e| e.to_string())?;
        ensure(got == expect, || format!("{name}: rank {got}, expected {expect}"))?;
    }
    for (name, d) in &all {
        let got = lee_rank(d).map_err(|e| e.to_string())?;
        let expect = 1usize << d.component_count();
        ensure(got == expect, || format!("{name}: rank {got}, expected {expect}"))?;
    }
    Ok(format!("{} diagrams", all.len()))
}

fn criterion_5() -> Outcome {
    let all = corpus();
    let mut count = 0;
    for (name, d) in &all {
        let c = complex(AlphaEval::from_ints(0, 1), Variant::AnnularD, d)?;
        let mut gens = Vec::new();
        for o in OrientationChoice::all(d.component_count()) {
            let rep = verify_canonical(&c, d, &o).map_err(|e| e.to_string())?;
            ensure(rep.is_cycle, || format!("{name} {:?}: not a cycle", o.flags))?;
            ensure(rep.generator.adeg == rep.expected_adeg, || {
                format!("{name} {:?}: adeg {} expected {}", o.flags, rep.generator.adeg, rep.expected_adeg)
            })?;
            gens.push(rep.generator);
            count += 1;
        }
        let span = span_in_homology(&c, &gens);
        ensure(span == gens.len(), || format!("{name}: span {span} of {}", gens.len()))?;
        if name.starts_with("hopf") {
            ensure(span == 4, || format!("{name}: span {span}"))?;
        }
    }
    Ok(format!("{count} orientations"))
}

fn table<R: EuclideanRing + AlphaRing>(ring: R, v: Variant, d: &AnnularDiagram) -> Result<BigradedHomology, String> {
    Ok(homology(&complex(ring, v, d)?))
}

fn criterion_6() -> Outcome {
    let all = corpus();
    for (mv, a, b) in REIDEMEISTER_PAIRS {
        let (x, y) = (find(&all, a), find(&all, b));
        let gf2 = || PrimeField::new(2).expect("prime");
        let checks = [
            ("int", table(Integers, Variant::AnnularZero, x)? == table(Integers, Variant::AnnularZero, y)?),
            ("gf2", table(gf2(), Variant::AnnularZero, x)? == table(gf2(), Variant::AnnularZero, y)?),
            ("qh", table(RatPolyH, Variant::AnnularH, x)? == table(RatPolyH, Variant::AnnularH, y)?),
            (
                "alpha:0,1",
                table(AlphaEval::from_ints(0, 1), Variant::AnnularD, x)? == table(AlphaEval::from_ints(0, 1), Variant::AnnularD, y)?,
            ),
        ];
        for (ring, same) in checks {
            ensure(same, || format!("{mv} {a} vs {b} over {ring}"))?;
        }
    }
    Ok(format!("{} pairs over 4 rings", REIDEMEISTER_PAIRS.len()))
}

fn compare<R: EuclideanRing<Elem = num_rational::BigRational> + AlphaRing>(
    name: &str,
    c: &ChainComplex<R>,
    by_q: bool,
) -> Result<(), String> {
    let expect = common::betti(c, by_q);
    let got: BTreeMap<_, _> = homology(c)
        .entries
        .into_iter()
        .filter(|(_, g)| g.rank > 0 || !g.torsion.is_empty())
        .map(|(k, g)| (k, g.rank))
        .collect();
    ensure(got == expect, || format!("{name} {}: {got:?} vs oracle {expect:?}", c.variant))
}

fn criterion_7() -> Outcome {
    let all = corpus();
    let mut n = 0;
    for (name, d) in all.iter().filter(|(_, d)| d.crossing_count() <= 3) {
        compare(name, &complex(Rationals, Variant::AnnularZero, d)?, true)?;
        compare(name, &complex(Rationals, Variant::Planar, d)?, true)?;
        compare(name, &complex(AlphaEval::from_ints(0, 1), Variant::AnnularD, d)?, false)?;
        compare(name, &complex(AlphaEval::from_ints(1, 1), Variant::AnnularAlpha, d)?, false)?;
        n += 1;
    }
    Ok(format!("{n} diagrams, 4 theories each"))
}

fn criterion_8() -> Outcome {
    let all = corpus();
    let mut raising_entries = 0;
    for (name, d) in &all {
        let c = complex(AlphaPolys, Variant::Beta, d)?;
        c.verify_beta().map_err(|(which, e)| format!("{name}: {which} {e:?}"))?;
        let raising = c.raising.as_ref().ok_or_else(|| format!("{name}: no raising part"))?;
        let r = &c.ring;
        raising_entries += raising.iter().map(SparseMatrix::nnz).sum::<usize>();
        for k in 0..c.differentials.len().saturating_sub(1) {
            let (d0, d0n) = (&c.differentials[k], &c.differentials[k + 1]);
            let (d2, d2n) = (&raising[k], &raising[k + 1]);
            ensure(product_vanishes(r, d0, d0n), || format!("{name}: d0 d0 at {k}"))?;
            ensure(sum_of_products_vanishes(r, &[(d0, d2n), (d2, d0n)]), || format!("{name}: d0 d2 + d2 d0 at {k}"))?;
            ensure(product_vanishes(r, d2, d2n), || format!("{name}: d2 d2 at {k}"))?;
        }
    }
    ensure(raising_entries > 0, || "the raising part vanishes everywhere".into())?;
    Ok(format!("{} diagrams, {raising_entries} raising entries", all.len()))
}

fn random_morphism(rng: &mut StdRng, n: usize, m: usize) -> Result<TlMorphism, String> {
    let all = enumerate_reduced(n, m).map_err(|e| e.to_string())?;
    let mut f = TlMorphism::zero(n, m);
    for _ in 0..rng.gen_range(1..4) {
        let base = &all[rng.gen_range(0..all.len())];
        let dots = base.dots.iter().map(|_| rng.gen_range(0..3)).collect();
        let loops = (0..rng.gen_range(0..2)).map(|_| rng.gen_range(0..3)).collect();
        let t = DottedTangle::new(n, m, base.pairs.clone(), dots, loops).map_err(|e| e.to_string())?;
        let c = BivariatePoly::constant(rng.gen_range(-2..3)) + BivariatePoly::alpha1() * BivariatePoly::constant(rng.gen_range(0..2));
        f = f.add(&reduce(&t).scale(&c));
    }
    Ok(f)
}

fn criterion_9() -> Outcome {
    let empty = DottedTangle::new(0, 0, vec![], vec![], vec![]).map_err(|e| e.to_string())?;
    let t = Tqft::new(AlphaPolys, Variant::AnnularAlpha).map_err(|e| e.to_string())?;
    let (a0, a1) = (BivariatePoly::alpha0(), BivariatePoly::alpha1());
    for k in 0..=5u32 {
        let expect = if k == 0 { BivariatePoly::constant(2) } else { a0.pow(k) + a1.pow(k) };
        let closed = DottedTangle::new(0, 0, vec![], vec![], vec![k]).map_err(|e| e.to_string())?;
        let r = reduce(&closed);
        ensure(r.terms.len() == 1 && r.terms.get(&empty) == Some(&expect), || format!("loop with {k} dots reduces to {r}"))?;
        ensure(loop_value(k) == expect, || format!("loop_value({k})"))?;
        let m = spin_evaluate(&r, &t).map_err(|e| e.to_string())?;
        ensure(m.matrix.get(0, 0) == Some(&expect), || format!("spun loop with {k} dots"))?;
    }
    let catalan = [1usize, 1, 2, 5, 14, 42];
    for (l, c) in catalan.iter().enumerate() {
        for n in 0..=2 * l {
            let got = enumerate_reduced(n, 2 * l - n).map_err(|e| e.to_string())?.len();
            ensure(got == (1 << l) * c, || format!("({n},{}) has {got}", 2 * l - n))?;
        }
    }
    ensure(enumerate_reduced(3, 3).map_err(|e| e.to_string())?.len() == 40, || "(3,3)".into())?;

    let mut rng = StdRng::seed_from_u64(2024);
    let mut composites = 0;
    let z = Tqft::new(Integers, Variant::AnnularZero).map_err(|e| e.to_string())?;
    let dl = Tqft::new(AlphaEval::from_ints(3, -1), Variant::AnnularD).map_err(|e| e.to_string())?;
    for _ in 0..20 {
        let n = rng.gen_range(0..4);
        let m = 2 * rng.gen_range(0..2) + n % 2;
        let k = 2 * rng.gen_range(0..2) + m % 2;
        let f = random_morphism(&mut rng, n, m)?;
        let g = random_morphism(&mut rng, m, k)?;
        let fg = f.compose(&g).map_err(|e| e.to_string())?;
        fn agree<R: AlphaRing>(t: &Tqft<R>, f: &TlMorphism, g: &TlMorphism, fg: &TlMorphism) -> Result<bool, String> {
            let s = |x: &TlMorphism| spin_evaluate(x, t).map_err(|e| e.to_string());
            let composite = s(f)?.then(t.ring(), &s(g)?).map_err(|e| e.to_string())?;
            Ok(s(fg)?.matrix == composite.matrix)
        }
        ensure(agree(&t, &f, &g, &fg)?, || format!("{f} then {g} over the generic ring"))?;
        ensure(agree(&z, &f, &g, &fg)?, || format!("{f} then {g} with alphas zero"))?;
        ensure(agree(&dl, &f, &g, &fg)?, || format!("{f} then {g} localized"))?;
        composites += 1;
    }
    Ok(format!("loops k <= 5, counts l <= 5, {composites} random composites"))
}

fn grading_of<R: AlphaRing>(name: &str, c: &ChainComplex<R>) -> Result<usize, String> {
    c.check_grading().map_err(|e| format!("{name} {}: {e:?}", c.variant))?;
    let graded = c.ring.q_grading() != QGrading::Ungraded;
    for (k, group) in c.groups.iter().enumerate() {
        let i = k as i32 - c.n_minus as i32;
        for g in group {
            let (q, a) = c.vertices[g.vertex].space.bidegree(g.word);
            let shifted = q - i - c.n_plus as i32 + c.n_minus as i32;
            ensure((g.q, g.a) == (shifted, a), || format!("{name}: generator shift in degree {i}"))?;
        }
    }
    let mut entries = 0;
    let mut check = |k: usize, m: &SparseMatrix<R::Elem>, shift: i32| -> Result<(), String> {
        for (r, col, v) in m.iter() {
            let (from, to) = (c.groups[k][col], c.groups[k + 1][r]);
            if graded {
                let QDeg::Homogeneous(e) = c.ring.qdeg(v) else {
                    return Err(format!("{name}: inhomogeneous entry {}", c.ring.format(v)));
                };
                ensure(from.q == to.q + e, || format!("{name} {}: qdeg of {}", c.variant, c.ring.format(v)))?;
            }
            ensure(c.variant == Variant::Planar || to.a == from.a + shift, || format!("{name} {}: adeg", c.variant))?;
            entries += 1;
        }
        Ok(())
    };
    for (k, m) in c.differentials.iter().enumerate() {
        check(k, m, 0)?;
    }
    for (k, m) in c.raising.iter().flatten().enumerate() {
        check(k, m, 2)?;
    }
    Ok(entries)
}

fn criterion_10() -> Outcome {
    let all = corpus();
    let mut entries = 0;
    for (name, d) in &all {
        entries += grading_of(name, &complex(AlphaPolys, Variant::Planar, d)?)?;
        entries += grading_of(name, &complex(AlphaPolys, Variant::AnnularAlpha, d)?)?;
        entries += grading_of(name, &complex(AlphaPolys, Variant::Beta, d)?)?;
        entries += grading_of(name, &complex(Integers, Variant::AnnularZero, d)?)?;
        entries += grading_of(name, &complex(RatPolyH, Variant::AnnularH, d)?)?;
        entries += grading_of(name, &complex(AlphaEval::from_ints(0, 1), Variant::AnnularD, d)?)?;
    }
    Ok(format!("{entries} entries in {} complexes", all.len() * 6))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("d^2 = 0 over Z[a0,a1]", criterion_1),
        ("elementary maps at a0 = a1 = 0", criterion_2),
        ("splitting and truncated functoriality", criterion_3),
        ("localized rank 2^k", criterion_4),
        ("canonical generators", criterion_5),
        ("Reidemeister invariance", criterion_6),
        ("dense oracle agreement", criterion_7),
        ("beta deformation", criterion_8),
        ("Temperley-Lieb evaluations", criterion_9),
        ("grading contract", criterion_10),
    ];
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2} {title}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {title}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
