//! One line per acceptance criterion. Run with `cargo test --test acceptance`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use dmres::cli::{parse, Artifact, Object};
use dmres::diffmod::{find_isomorphism, is_contractible, DifferentialModule};
use dmres::graded::{FreeModule, GradedMatrix, PresentedModule};
use dmres::groebner::min_free_resolution;
use dmres::random::{random_fold, random_form, random_standard_form, rng};
use dmres::resolve::{
    betti_dm, check_hilbert_burch, check_semicontinuity, compare_minimal, deformation_resolution, flag_resolution_cone,
    flag_resolution_stai, minimize, BettiMethod, DeformationFamily, FreeFlag,
};
use dmres::ring::{GradedRing, Polynomial};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn load(name: &str) -> Artifact {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name);
    parse(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn matrix(a: &Artifact, name: &str) -> GradedMatrix {
    match a.get(name) {
        Some(Object::Matrix(m)) => m.clone(),
        _ => panic!("no matrix {name}"),
    }
}

fn rank_two() -> (GradedRing, DifferentialModule) {
    let a = load("rank_two.dm");
    let d = a.dm("D").unwrap();
    (a.ring, d)
}

fn diag(ring: &GradedRing, f: &FreeModule, signs: &[i64]) -> GradedMatrix {
    let n = f.rank();
    let entries = (0..n)
        .map(|i| (0..n).map(|j| if i == j { ring.from_i64(signs[i]) } else { ring.zero() }).collect())
        .collect();
    GradedMatrix::new(ring, f.clone(), f.clone(), 0, entries).unwrap()
}

fn criterion_1() -> Outcome {
    let a = load("nonminimal_rank_four.dm");
    let ring = &a.ring;
    let f = e(a.dm("F"))?;
    let d = e(a.dm("D"))?;
    let start = Instant::now();
    let m = e(minimize(ring, &f))?;
    let elapsed = start.elapsed();
    ensure(m.rank() == 2, format!("rank {}", m.rank()))?;
    ensure(m.minimal.differential().is_minimal(ring), "result not minimal")?;
    ensure(e(m.verify(ring, f.differential()))?, "A d A^-1 certificate fails")?;
    let p = e(find_isomorphism(ring, &m.minimal, &d, 7))?.ok_or("no isomorphism onto [[xy, -x^2], [y^2, -xy]]")?;
    let lhs = e(p.compose(ring, m.minimal.differential()))?;
    let rhs = e(d.differential().compose(ring, &p))?;
    ensure(lhs.same_entries(&rhs), "P d_M != d_D P")?;
    // the printed change of basis: A d_F = (A d_F A^-1) A with A invertible
    let pa = matrix(&a, "A");
    let pc = matrix(&a, "A_conj");
    let l = e(pa.compose(ring, f.differential()))?;
    let r = e(pc.compose(ring, &pa))?;
    ensure(l.same_entries(&r), "A d_F != A_conj A")?;
    let s = diag(ring, f.generators(), &[1, -1, 1, -1]);
    ensure(e(s.compose(ring, &pa))?.same_entries(&m.change_of_basis), "certificate A is not S A_printed")?;
    let spcs = e(s.compose(ring, &e(pc.compose(ring, &s))?))?;
    ensure(spcs.same_entries(&m.conjugated), "certificate conjugation is not S (A d_F A^-1) S")?;
    ensure(elapsed < Duration::from_secs(1), format!("took {elapsed:?}"))?;
    Ok(format!(
        "rank 2, minimal {}, printed A d_F A^-1 reproduced exactly, certificate = S.printed.S with S = diag(1,-1,1,-1), {elapsed:?}",
        m.minimal.differential().format(ring)
    ))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let a0 = load("residue_field_a0.dm");
    let t = e(betti_dm(&a0.ring, &e(a0.dm("K"))?, -5, 20, BettiMethod::Minres, 20))?;
    for (j, v, cert) in t.rows() {
        ensure(v == Some(u64::from(j >= 0)), format!("a=0: beta_{j} = {v:?}"))?;
        ensure(cert, format!("a=0: beta_{j} not certified"))?;
    }
    let a2 = load("residue_field_a2.dm");
    let t = e(betti_dm(&a2.ring, &e(a2.dm("K"))?, -20, 5, BettiMethod::Minres, 22))?;
    for (j, v, _) in t.rows() {
        ensure(v == Some(u64::from(j <= 0)), format!("a=2: beta_{j} = {v:?}"))?;
    }
    let a1 = load("residue_field_a1.dm");
    let t = e(betti_dm(&a1.ring, &e(a1.dm("K"))?, -3, 3, BettiMethod::Minres, 8))?;
    ensure(t.get(0).is_none(), format!("a=1: finite beta_0 = {:?}", t.get(0)))?;
    ensure(t.notices.iter().any(|n| n.contains("no convergence")), "a=1: no non-convergence notice")?;
    for j in [-3, -2, -1, 1, 2, 3] {
        ensure(t.get(j) == Some(0), format!("a=1: beta_{j} = {:?}", t.get(j)))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), format!("took {elapsed:?}"))?;
    Ok(format!("a=0: 1 on [0,20], 0 on [-5,-1]; a=2: 1 on [-20,0], 0 on [1,5]; a=1: beta_0 not finite, notice given; {elapsed:?}"))
}

/// The rank two module and five folds of random complexes over Q[x,y].
fn deformation_instances() -> Vec<(String, GradedRing, DifferentialModule)> {
    let (r, d) = rank_two();
    let mut v = vec![("rank two".to_string(), r.clone(), d)];
    let p = GradedRing::polynomial(&["x", "y"]);
    for seed in 0..5 {
        v.push((format!("fold seed {seed}"), p.clone(), random_fold(&p, 3, 0, seed).unwrap()));
    }
    v
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    for (name, ring, d) in deformation_instances() {
        let ring = &ring;
        let def = e(deformation_resolution(ring, &d, 4))?;
        let res = &def.resolution;
        let flag = &res.flag;
        ensure(flag.is_strictly_upper(), format!("{name}: not strictly upper"))?;
        ensure(e(flag.to_dm(ring))?.square(ring).is_zero(), format!("{name}: d^2 != 0"))?;
        let h = e(d.homology(ring))?;
        let mfr = e(min_free_resolution(ring, &h.module, 4))?;
        let a = d.degree();
        let blocks = flag.compact();
        ensure(blocks.len() == mfr.modules.len(), format!("{name}: {} blocks vs {} modules", blocks.len(), mfr.modules.len()))?;
        for (i, m) in mfr.modules.iter().enumerate() {
            ensure(blocks.blocks()[i] == m.shift(i as i64 * a), format!("{name}: block {i} twists differ"))?;
        }
        for (i, m) in mfr.maps.iter().enumerate() {
            ensure(blocks.block(i, i + 1).same_entries(m), format!("{name}: block ({i},{}) differs from the resolution map", i + 1))?;
        }
        let v = e(res.verify(ring, -5, 12))?;
        ensure(v.passed(), format!("{name}: {}", v.to_text()))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), format!("took {elapsed:?}"))?;
    Ok(format!("6 instances: strictly upper, superdiagonal = minimal resolution of H(D), d^2 = 0, cone exact on [-5,12]; {elapsed:?}"))
}

fn criterion_4() -> Outcome {
    for (name, ring, d) in deformation_instances() {
        let ring = &ring;
        let flag = e(deformation_resolution(ring, &d, 4))?.resolution.flag;
        let fam = DeformationFamily::new(&flag);
        ensure(e(fam.is_square_zero(ring))?, format!("{name}: family not square-zero in t"))?;
        let zero = e(fam.evaluate(ring, &ring.field().zero()))?;
        let got = zero.homology_oracle(ring, -5, 12);
        let want = e(d.homology(ring))?.module.hilbert_function(ring, -5, 12);
        ensure(got == want, format!("{name}: t=0 homology {:?} vs H(D) {:?}", got.values(), want.values()))?;
    }
    Ok("6 instances: family squares to zero in t, t=0 homology Hilbert function = H(D) on [-5,12]".into())
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let r2 = GradedRing::polynomial(&["x", "y"]);
    let r3 = GradedRing::polynomial(&["x", "y", "z"]);
    let mut counts = [0usize; 2];
    for seed in 0..100u64 {
        let ring = if seed % 2 == 0 { &r2 } else { &r3 };
        let terms = 2 + ((seed / 2) % 2) as usize;
        counts[terms - 2] += 1;
        let d = e(random_fold(ring, terms, 0, 1000 + seed))?;
        let depth = ring.nvars() + 1;
        let rep = e(check_semicontinuity(ring, &d, 0, 12, depth))?;
        ensure(rep.passed(), format!("seed {seed}: {}", rep.to_text()))?;
        let a = e(betti_dm(ring, &d, 0, 12, BettiMethod::Minres, depth))?;
        let b = e(betti_dm(ring, &d, 0, 12, BettiMethod::Tor, depth))?;
        ensure(a.values == b.values, format!("seed {seed}: minres {:?} vs tor {:?}", a.values, b.values))?;
        ensure(a.values.iter().all(|v| v.is_some()), format!("seed {seed}: unresolved entries"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(300), format!("took {elapsed:?}"))?;
    Ok(format!(
        "100 folds ({} two-term, {} three-term): inequality and parity on [0,12], minres = tor; {elapsed:?}",
        counts[0], counts[1]
    ))
}

/// Resolution of `R/I` as a flag, with `extra` added to the corner block.
fn hb_flag(ring: &GradedRing, power: u32, seed: Option<u64>) -> FreeFlag {
    let (x, y) = (ring.var(0), ring.var(1));
    let z = ring.zero();
    let (twists, d10, d21): (Vec<Vec<i64>>, Vec<Polynomial>, Vec<Vec<Polynomial>>) = if power == 1 {
        (vec![vec![0], vec![1, 1], vec![2]], vec![x.clone(), y.clone()], vec![vec![ring.neg(&y)], vec![x.clone()]])
    } else {
        (
            vec![vec![0], vec![2, 2, 2], vec![3, 3]],
            vec![ring.mul(&x, &x), ring.mul(&x, &y), ring.mul(&y, &y)],
            vec![vec![y.clone(), z.clone()], vec![ring.neg(&x), y.clone()], vec![z.clone(), ring.neg(&x)]],
        )
    };
    let blocks: Vec<FreeModule> = twists.iter().cloned().map(FreeModule::new).collect();
    let (n1, n2) = (blocks[1].rank(), blocks[2].rank());
    let n = 1 + n1 + n2;
    let mut m = vec![vec![ring.zero(); n]; n];
    for (k, f) in d10.iter().enumerate() {
        m[0][1 + k] = f.clone();
    }
    for i in 0..n1 {
        for j in 0..n2 {
            m[1 + i][1 + n1 + j] = d21[i][j].clone();
        }
    }
    if let Some(s) = seed {
        let mut g = rng(s);
        for j in 0..n2 {
            m[0][1 + n1 + j] = random_form(ring, blocks[2].twist(j), &mut g);
        }
    }
    let f = FreeModule::direct_sum(&blocks.iter().collect::<Vec<_>>());
    let d = GradedMatrix::new(ring, f.clone(), f, 0, m).unwrap();
    FreeFlag::new(blocks, d).unwrap()
}

fn criterion_6() -> Outcome {
    let ring = GradedRing::polynomial(&["x", "y"]);
    let ring = &ring;
    let mut n = 0;
    for power in [1, 2] {
        let ideal = if power == 1 { vec![ring.var(0), ring.var(1)] } else { hb_flag(ring, 2, None).block(0, 1).rows()[0].clone() };
        let rel = GradedMatrix::new(
            ring,
            FreeModule::new(ideal.iter().map(|f| ring.degree_of(f)).map(|d| match d {
                dmres::ring::PolyDegree::Degree(d) => d,
                _ => unreachable!(),
            }).collect()),
            FreeModule::new(vec![0]),
            0,
            vec![ideal.clone()],
        )
        .unwrap();
        let quotient = PresentedModule::cokernel(ring, rel).unwrap();
        let want = quotient.hilbert_function(ring, -2, 10);
        for seed in [None, Some(1), Some(2), Some(3)] {
            let flag = hb_flag(ring, power, seed);
            let d = e(flag.to_dm(ring))?;
            ensure(d.homology_oracle(ring, -2, 10) == want, format!("power {power} seed {seed:?}: H(D) is not R/I"))?;
            let def = e(deformation_resolution(ring, &d, 4))?.resolution.flag.compact();
            let rep = e(check_hilbert_burch(ring, &def))?;
            ensure(rep.passed(), format!("power {power} seed {seed:?}: {}", rep.to_text()))?;
            let direct = e(check_hilbert_burch(ring, &flag))?;
            ensure(direct.passed(), format!("power {power} seed {seed:?} (input flag): {}", direct.to_text()))?;
            n += 1;
        }
    }
    Ok(format!("{n} instances over R/(x,y) and R/(x,y)^2, zero and random corner blocks: rank F1 = rank F2 + 1, d10 = signed minors of d21 up to a unit"))
}

fn criterion_7() -> Outcome {
    let ring = GradedRing::polynomial(&["x", "y", "z"]);
    let ring = &ring;
    let mut n = 0;
    for seed in 0..18u64 {
        let pairs = 1 + (seed % 3) as usize;
        let a = ((seed / 3) % 3) as i64;
        let d = e(random_standard_form(ring, pairs, a, seed))?;
        let c = e(is_contractible(ring, &d))?;
        ensure(c.contractible, format!("seed {seed}: not contractible"))?;
        let h = c.homotopy.ok_or("no homotopy")?.map;
        let hd = e(h.compose(ring, d.differential()))?;
        let dh = e(d.differential().compose(ring, &h))?;
        let sum = e(hd.add(ring, &dh))?;
        ensure(sum.same_entries(&GradedMatrix::identity(ring, d.generators())), format!("seed {seed}: h d + d h != id"))?;
        n += 1;
    }
    let a = load("acyclic_not_contractible.dm");
    let q = &a.ring;
    for rank in 1..=3 {
        let f = FreeModule::new(vec![0; rank]);
        let x = q.var(0);
        let entries = (0..rank).map(|i| (0..rank).map(|j| if i == j { x.clone() } else { q.zero() }).collect()).collect();
        let d = e(DifferentialModule::free(q, e(GradedMatrix::new(q, f.clone(), f, 1, entries))?))?;
        ensure(!e(is_contractible(q, &d))?.contractible, format!("x.id of rank {rank} reported contractible"))?;
        ensure(d.homology_oracle(q, -10, 10).is_zero(), format!("x.id of rank {rank} has homology"))?;
    }
    Ok(format!("{n} standard forms (pairs 1..3, a in 0..2, each pair twice) contractible with h d + d h = id exactly; x.id over Q[x]/(x^2) acyclic on [-10,10] but not contractible"))
}

fn criterion_8() -> Outcome {
    let (ring, d) = rank_two();
    let ring = &ring;
    let s = e(flag_resolution_stai(ring, &d, 4))?;
    let c = e(flag_resolution_cone(ring, &d, 4))?;
    let ms = e(minimize(ring, &e(s.dm(ring))?))?;
    let mc = e(minimize(ring, &e(c.dm(ring))?))?;
    let ds = ms.minimal.generators().degree_multiset();
    let dc = mc.minimal.generators().degree_multiset();
    ensure(ds == vec![0, 0] && dc == vec![0, 0], format!("degrees {ds:?} and {dc:?}"))?;
    let cmp = e(compare_minimal(ring, &s, &ms, &c, &mc))?;
    ensure(cmp.identity_mod_maximal_ideal, "composites are not the identity mod m")?;
    Ok(format!("stai (rank {}) and cone (rank {}) minimize to degrees {{0, 0}}; both composites = id mod m", s.flag.rank(), c.flag.rank()))
}

fn criterion_9() -> Outcome {
    let p = GradedRing::polynomial(&["x"]);
    let ring = &p.with_quotient(vec![p.pow(&p.var(0), 2)]).unwrap();
    for a in 0..=3i64 {
        let x = ring.var(0);
        let d = e(DifferentialModule::from_entries(ring, vec![a, 1], a, vec![vec![ring.zero(), x], vec![ring.zero(), ring.zero()]]))?;
        let m = e(minimize(ring, &d))?;
        ensure(m.rank() == 2 && m.minimal.differential().same_entries(d.differential()), format!("a={a}: D is not its own minimal resolution"))?;
        ensure(m.change_of_basis == GradedMatrix::identity(ring, d.generators()), format!("a={a}: nontrivial change of basis"))?;
        let h = e(d.homology(ring))?;
        let hf = h.module.hilbert_function(ring, -5, 12);
        for (deg, dim) in hf.iter() {
            let want = i64::from(deg == a) + i64::from(deg == 2);
            ensure(dim == want, format!("a={a}: dim H_{deg} = {dim}, want {want}"))?;
        }
        ensure(hf == d.homology_oracle(ring, -5, 12), format!("a={a}: homology disagrees with the oracle"))?;
        let res = e(min_free_resolution(ring, &h.module, 8))?;
        ensure(res.truncated, format!("a={a}: resolution of the homology not flagged truncated"))?;
    }
    Ok("a = 0..3: D minimal and its own resolution, H(D) = k(-a) + k(-2), resolution of H(D) flagged truncated".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 minimization of a rank four flag", criterion_1),
        ("2 Betti tables of the residue field", criterion_2),
        ("3 deformation resolution shape", criterion_3),
        ("4 degeneration family", criterion_4),
        ("5 semicontinuity property suite", criterion_5),
        ("6 Hilbert-Burch structure", criterion_6),
        ("7 contractibility", criterion_7),
        ("8 uniqueness of minimal resolutions", criterion_8),
        ("9 a module that is its own resolution", criterion_9),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match out {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(why) => {
                failed += 1;
                println!("criterion {name}: FAIL ({why})");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
