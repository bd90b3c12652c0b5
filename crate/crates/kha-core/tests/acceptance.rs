//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use kha_core::arith::{coefficient_at, delta_coefficient, parse_rf, Direction, LaurentPoly, Monomial, RationalFunction, VarId, Q};
use kha_core::fixedpoint::{gram_matrix, relation_suite, FixedPointLabel, FixedPointModule, ModuleVector, Rel5Scope};
use kha_core::quiver::{DimVector, Quiver};
use kha_core::report::Report;
use kha_core::rmatrix::{coproduct_relation_check, limit_checks};
use kha_core::shuffle::{generator, MAX_DEGREE_PER_VERTEX, shuffle_mul, symmetrize, wheel_check, word_to_shuffle, ShuffleElement};
use kha_core::taut::ef_commutator_grid;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn dv(x: &[i64]) -> DimVector {
    DimVector(x.to_vec())
}

fn boxes(n: usize, max: i64) -> Vec<DimVector> {
    DimVector::box_below(&DimVector(vec![max; n]))
}

fn quivers() -> [(&'static str, Quiver); 3] {
    [("A1", Quiver::a1()), ("Jordan", Quiver::jordan()), ("A2", Quiver::a2())]
}

fn report_outcome(r: &Report, what: &str) -> Outcome {
    match r.failures().next() {
        Some(c) => Err(format!("{what}: {} {}", c.name, c.detail)),
        None => Ok(format!("{what}: {} checks", r.checks.len())),
    }
}

fn err(e: kha_core::KhaError) -> String {
    e.to_string()
}

fn a1_relations() -> Outcome {
    let mut all = Report::new();
    for w in [1, 2] {
        all.extend(relation_suite(&Quiver::a1(), &dv(&[w]), &dv(&[w]), -2, 2, Rel5Scope::Full).map_err(err)?);
    }
    report_outcome(&all, "A1 w=(1),(2)")
}

fn vacuum_commutator() -> Outcome {
    let a1 = Quiver::a1();
    let m = FixedPointModule::new(&a1, &dv(&[1])).map_err(err)?;
    let vac = ModuleVector::basis(FixedPointLabel::vacuum(1));
    let c = m.act_e(0, 0, &m.act_f(0, 0, &vac).map_err(err)?).map_err(err)?.sub(&m.act_f(0, 0, &m.act_e(0, 0, &vac).map_err(err)?).map_err(err)?);
    if !c.equals(&vac.scale(&RationalFunction::int(-1))) {
        return Err(format!("A1 [e0,f0](I_empty) = {c}"));
    }
    let mut all = Report::new();
    for (_, q) in quivers().into_iter().skip(1) {
        let n = q.n_vertices();
        for w in boxes(n, 2) {
            all.extend(relation_suite(&q, &w, &q.zeros(), -2, 2, Rel5Scope::Vacuum).map_err(err)?);
        }
    }
    report_outcome(&all, "Jordan, A2 vacuum; A1 [e0,f0] = -1")
}

fn symbolic_commutator() -> Outcome {
    let mut total = 0;
    for (name, q) in quivers() {
        let n = q.n_vertices();
        for w in boxes(n, 2) {
            for v in boxes(n, 2) {
                for i in 0..n {
                    for e in ef_commutator_grid(&q, i, &v, &w, (-2, 2), (-2, 2)).map_err(err)? {
                        total += 1;
                        if !e.holds {
                            return Err(format!("{name} i={} v={v} w={w} d={} k={}", i + 1, e.d, e.k));
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{total} identities"))
}

fn random_element(rng: &mut ChaCha8Rng, q: &Quiver, k: usize) -> ShuffleElement {
    let z: Vec<VarId> = (0..k).map(|a| VarId::z(0, a + 1)).collect();
    let mut p = LaurentPoly::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let mut exps: Vec<(VarId, i32)> = z.iter().map(|&v| (v, rng.gen_range(-1..=1))).collect();
        exps.push((VarId::QH, rng.gen_range(-1..=1)));
        let m = Monomial::from_pairs(exps);
        p = p.add(&LaurentPoly::term(Q::new(rng.gen_range(-3..=3), rng.gen_range(1..=2)), m));
    }
    let r = symmetrize(&RationalFunction::from_poly(p), &DimVector(vec![k as i64])).unwrap();
    assert_eq!(q.n_vertices(), 1);
    r
}

fn shuffle_kernel() -> Outcome {
    let a1 = Quiver::a1();
    let ff = shuffle_mul(&a1, &generator(&a1, 0, 0), &generator(&a1, 0, 0)).map_err(err)?;
    if !ff.value.rf_eq(&parse_rf("qh + qh^-1").unwrap()) {
        return Err(format!("f0*f0 = {}", ff.value));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    // Jordan products in total degree 4 run to ~10^5 terms, so Jordan stays at total degree 3.
    for (name, q, count, cap) in [("A1", Quiver::a1(), 50, MAX_DEGREE_PER_VERTEX), ("Jordan", Quiver::jordan(), 10, 3)] {
        for t in 0..count {
            let ks = loop {
                let ks: [usize; 3] = [rng.gen_range(1..=2), rng.gen_range(1..=2), rng.gen_range(1..=2)];
                if ks.iter().sum::<usize>() as i64 <= cap {
                    break ks;
                }
            };
            let (a, b, c) = (random_element(&mut rng, &q, ks[0]), random_element(&mut rng, &q, ks[1]), random_element(&mut rng, &q, ks[2]));
            let ab = shuffle_mul(&q, &a, &b).map_err(err)?;
            if ab.degree != a.degree.add(&b.degree) {
                return Err(format!("{name} triple {t}: degree not additive"));
            }
            let left = shuffle_mul(&q, &ab, &c).map_err(err)?;
            let right = shuffle_mul(&q, &a, &shuffle_mul(&q, &b, &c).map_err(err)?).map_err(err)?;
            if left.degree != right.degree || !left.value.rf_eq(&right.value) {
                return Err(format!("{name} triple {t}: associativity fails"));
            }
        }
    }
    Ok("f0*f0 = qh + qh^-1; 50 A1 and 10 Jordan associative triples".into())
}

fn words(n: usize, max_len: usize, exps: std::ops::RangeInclusive<i32>) -> Vec<Vec<(usize, i32)>> {
    let mut out: Vec<Vec<(usize, i32)>> = vec![vec![]];
    let mut layer = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for i in 0..n {
                for d in exps.clone() {
                    let mut x = w.clone();
                    x.push((i, d));
                    next.push(x);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn word_consistency() -> Outcome {
    let mut total = 0;
    for (name, q) in quivers() {
        let n = q.n_vertices();
        let ws = words(n, 3, -2..=2);
        for w in boxes(n, 2) {
            let m = FixedPointModule::new(&q, &w).map_err(err)?;
            let top = m.enumerate_basis(&w);
            for word in &ws {
                let r = word_to_shuffle(&q, word).map_err(err)?;
                for l in &top {
                    let x = ModuleVector::basis(l.clone());
                    total += 1;
                    if !m.act_word_f(word, &x).map_err(err)?.equals(&m.act_shuffle(&r, &x).map_err(err)?) {
                        return Err(format!("{name} w={w} word {word:?} at I[{l}]"));
                    }
                }
            }
        }
    }
    Ok(format!("{total} comparisons"))
}

fn wheel() -> Outcome {
    let mut total = 0;
    let mut specs = 0;
    for (name, q) in quivers().into_iter().skip(1) {
        for word in words(q.n_vertices(), 3, -2..=2).into_iter().filter(|w| w.len() == 3) {
            let r = word_to_shuffle(&q, &word).map_err(err)?;
            let verdict = wheel_check(&q, &r).map_err(err)?;
            if !verdict.passed() {
                return Err(format!("{name} word {word:?}: {verdict:?}"));
            }
            if let kha_core::shuffle::WheelVerdict::Pass { specializations } = verdict {
                specs += specializations;
            }
            total += 1;
        }
    }
    if specs == 0 {
        return Err("no wheel specializations were exercised".into());
    }
    Ok(format!("{total} words, {specs} specializations"))
}

fn r_limits() -> Outcome {
    let mut all = Report::new();
    for w in [1, 2] {
        all.extend(limit_checks(&Quiver::a1(), 0, &dv(&[w]), &dv(&[w])).map_err(err)?);
        all.extend(limit_checks(&Quiver::jordan(), 0, &dv(&[w]), &dv(&[1])).map_err(err)?);
    }
    let skipped = all.count(kha_core::report::Verdict::Skipped);
    report_outcome(&all, &format!("A1 all sectors, Jordan v<=1 ({skipped} non-vacuum e-limits skipped)"))
}

fn pairing() -> Outcome {
    let mut sectors = 0;
    for (name, q) in quivers() {
        let n = q.n_vertices();
        let vmax = if q.is_edge_free() { 2 } else { 0 };
        for w in boxes(n, 2) {
            let m = FixedPointModule::new(&q, &w).map_err(err)?;
            for v in m.sectors(&DimVector(vec![vmax; n])) {
                let g = gram_matrix(&m, &v).map_err(err)?;
                for (r, row) in g.iter().enumerate() {
                    for (c, x) in row.iter().enumerate() {
                        if (r == c) == x.is_zero() {
                            return Err(format!("{name} w={w} v={v} entry ({r},{c}) = {x}"));
                        }
                    }
                }
                sectors += 1;
            }
        }
    }
    let a1 = FixedPointModule::new(&Quiver::a1(), &dv(&[1])).map_err(err)?;
    let g = gram_matrix(&a1, &dv(&[1])).map_err(err)?;
    if !g[0][0].is_one() {
        return Err(format!("A1 v=1 w=1 diagonal entry is {}", g[0][0]));
    }
    Ok(format!("{sectors} sectors; A1 (1,1) entry = 1"))
}

fn coproduct() -> Outcome {
    let r = coproduct_relation_check(&Quiver::a1(), &dv(&[1]), &dv(&[1]), 0).map_err(err)?;
    report_outcome(&r, "A1 w1=w2=(1)")
}

fn random_poly(rng: &mut ChaCha8Rng, vars: &[VarId]) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for _ in 0..rng.gen_range(1..=5) {
        let m = Monomial::from_pairs(vars.iter().map(|&v| (v, rng.gen_range(-3..=3))));
        p = p.add(&LaurentPoly::term(Q::new(rng.gen_range(-9..=9), rng.gen_range(1..=4)), m));
    }
    p
}

fn kernel() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let z = VarId::z(0, 1);
    let vars = [z, VarId::QH, VarId::t(1)];
    for k in 0..1000 {
        let f = RationalFunction::from_poly(random_poly(&mut rng, &vars));
        let d = rng.gen_range(-4..=4);
        let c = delta_coefficient(&f, z, d).map_err(err)?;
        if !c.is_zero() {
            return Err(format!("polynomial {k}: delta coefficient at z^{d} is {c}"));
        }
    }
    // f·(z − a) = p checked order by order on both expansions.
    for k in 0..20 {
        let p = random_poly(&mut rng, &vars);
        let a = RationalFunction::from_poly(LaurentPoly::term(Q::new(rng.gen_range(1..=5), rng.gen_range(1..=3)), Monomial::var(VarId::QH, rng.gen_range(-2..=2))));
        let den = RationalFunction::var(z).sub(&a);
        let f = RationalFunction::from_poly(p.clone()).div(&den).map_err(err)?;
        let pr = RationalFunction::from_poly(p.clone());
        for dir in [Direction::AtZero, Direction::AtInfinity] {
            for e in -6..=6 {
                let lhs = coefficient_at(&f, z, dir, e - 1).map_err(err)?.sub(&a.mul(&coefficient_at(&f, z, dir, e).map_err(err)?));
                let rhs = coefficient_at(&pr, z, dir, e).map_err(err)?;
                if !lhs.rf_eq(&rhs) {
                    return Err(format!("rational function {k}: recurrence fails at z^{e} ({dir:?})"));
                }
            }
        }
    }
    for k in 0..200 {
        let num = random_poly(&mut rng, &vars);
        let den = random_poly(&mut rng, &vars);
        let Ok(f) = RationalFunction::from_poly(num).div(&RationalFunction::from_poly(den)) else { continue };
        let s = f.to_string();
        let back = parse_rf(&s).map_err(err)?;
        if !back.rf_eq(&f) || back.to_string() != s {
            return Err(format!("round trip {k}: `{s}` reparses as `{back}`"));
        }
    }
    Ok("1000 polynomials, 20 recurrences, 200 round trips".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 A1 relation suite", a1_relations),
        ("2 vacuum commutator", vacuum_commutator),
        ("3 symbolic commutator identity", symbolic_commutator),
        ("4 shuffle kernel", shuffle_kernel),
        ("5 words vs shuffle action", word_consistency),
        ("6 wheel conditions", wheel),
        ("7 R-block limits", r_limits),
        ("8 pairing perfectness", pairing),
        ("9 coproduct identity", coproduct),
        ("10 kernel properties", kernel),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        match run() {
            Ok(detail) => println!("PASS {name}: {detail} ({:.1?})", t.elapsed()),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail} ({:.1?})", t.elapsed());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
