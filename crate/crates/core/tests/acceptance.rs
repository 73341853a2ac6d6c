//! Acceptance battery: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::time::{Duration, Instant};

use indgrass::extension_ledger::{
    build_ledger, les_intervals, theorem_f_from_ledger, LedgerEntry, Partition, H1_ZERO_TWISTS,
};
use indgrass::p1bundles::{lemma_ineq2_check, ChainBundle, SplittingType};
use indgrass::quadric::{h_ideal, h_line, koszul_h, koszul_target, BiDegree, FiberPointSet};
use indgrass::ratlinalg::Rational;
use indgrass::sampling::Sampler;
use indgrass::segre_curves::{
    chain_of_lines, curve_degree, embed_chain, plucker_curve, plucker_point, same_plucker_point, standard_config,
};
use indgrass::twist_bound::{
    cumulative_degree, flag_sections_dim, main_inequality, schur_dimension, triviality_threshold, IndGrassSpec,
};
use num_bigint::BigUint;
use num_traits::ToPrimitive;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, u64);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn bd(a: i64, b: i64) -> BiDegree {
    BiDegree::new(a, b)
}

/// Every partition in the sweep with a few sampled point configurations.
fn sweep() -> Vec<(Partition, FiberPointSet)> {
    let mut sampler = Sampler::new(2024);
    let mut out = Vec::new();
    for r in 2..=6 {
        for d in 0..=10 {
            for p in Partition::enumerate(r, d) {
                for _ in 0..3 {
                    let z = p.sample_points(&mut sampler);
                    out.push((p.clone(), z));
                }
            }
        }
    }
    out
}

fn ledgers() -> Result<Vec<(Partition, Vec<LedgerEntry>)>, String> {
    sweep()
        .into_iter()
        .map(|(p, z)| {
            build_ledger(&p, &z)
                .map(|l| (p.clone(), l))
                .map_err(|e| format!("{:?}: {e}", p.parts()))
        })
        .collect()
}

fn f_invariants_battery() -> Check {
    let all = ledgers()?;
    for (p, ledger) in &all {
        let (a1, d, r) = (p.a(1), p.d(), p.r() as u64);
        let f = theorem_f_from_ledger(p, ledger).map_err(|e| format!("{:?}: {e}", p.parts()))?;
        let top = ledger.last().expect("nonempty ledger");
        // F = E_r(2,0), so F(i,j) = E_r(i+2, j).
        let h = |a: i64, b: i64| {
            let t = bd(a, b);
            top.triple(t).copied().ok_or_else(|| format!("{:?}: twist {t} not tracked", p.parts()))
        };
        ensure(f.h0_f_m1_m1 == a1 + d && h(1, -1)?.h0 == a1 + d, || format!("{:?}: h0(F(-1,-1))", p.parts()))?;
        ensure(f.h0_f_m1_0 == a1 + d + 2 * r && h(1, 0)?.h0 == a1 + d + 2 * r, || {
            format!("{:?}: h0(F(-1,0))", p.parts())
        })?;
        ensure(f.h0_f == a1 + 2 * d + 3 * r && h(2, 0)?.h0 == a1 + 2 * d + 3 * r, || {
            format!("{:?}: h0(F)", p.parts())
        })?;
        for (a, b) in [(1, -1), (0, 0), (0, -1), (1, 0)] {
            ensure(h(a, b)?.h1 == 0, || format!("{:?}: h1(F({},{})) != 0", p.parts(), a - 2, b))?;
        }
        ensure(f.h1_vanishing.len() == 4 && f.h1_vanishing.iter().all(|(_, v)| *v == 0), || {
            format!("{:?}: record h1 vanishings", p.parts())
        })?;
        ensure(h(0, -1)?.h2 == 0 && f.h2_f_m2_m1 == 0, || format!("{:?}: h2(F(-2,-1))", p.parts()))?;
    }
    Ok(format!("{} ledgers", all.len()))
}

fn level_closed_forms() -> Check {
    let all = ledgers()?;
    let mut levels = 0;
    for (p, ledger) in &all {
        for e in ledger {
            let k = e.k;
            let a1 = p.a(1);
            let tail: u64 = (2..=k).map(|i| p.a(i)).sum();
            let k64 = k as u64;
            let expected = [
                (bd(0, 0), a1 + k64),
                (bd(0, -1), a1),
                (bd(1, -1), 2 * a1 + tail),
                (bd(1, 0), 2 * a1 + tail + 2 * k64),
                (bd(2, 0), 3 * a1 + 2 * tail + 3 * k64),
            ];
            for (t, v) in expected {
                ensure(e.h0(t) == Some(v), || {
                    format!("{:?} k={k} twist {t}: h0 {:?} != {v}", p.parts(), e.h0(t))
                })?;
            }
            for t in H1_ZERO_TWISTS {
                ensure(e.triple(t).is_some_and(|h| h.h1 == 0), || format!("{:?} k={k}: h1 at {t}", p.parts()))?;
            }
            levels += 1;
        }
        // Recompute the extension steps: every interval must collapse onto the recorded value.
        for k in 2..=p.r() {
            let prev = &ledger[k - 2];
            let cur = &ledger[k - 1];
            for row in &cur.rows {
                let t = row.twist;
                let Some(a) = prev.triple(t) else { continue };
                let c = quotient_of(p, k, t);
                let iv = les_intervals(a, &c);
                ensure(iv.is_collapsed() && iv.exact() == Some(row.h), || {
                    format!("{:?} k={k} twist {t}: interval {iv:?} vs {:?}", p.parts(), row.h)
                })?;
            }
        }
    }
    Ok(format!("{levels} levels"))
}

// The quotient I_{Z_k}(0, a_k) only depends on the number of points, so a fixed
// point set of the right size stands in for the sampled one.
fn quotient_of(p: &Partition, k: usize, t: BiDegree) -> indgrass::CohomologyTriple {
    let ak = p.a(k);
    let pts: Vec<Rational> = (1..=ak as i64).map(|i| Rational::from_integer(i.into())).collect();
    let z = FiberPointSet::single(pts).expect("distinct integers");
    h_ideal(&z, bd(0, ak as i64).plus(t)).expect("ideal cohomology")
}

fn ideal_oracle() -> Check {
    let mut sampler = Sampler::new(99);
    let mut checked = 0;
    for ak in 0..=8i64 {
        let z = FiberPointSet::single(sampler.distinct_rationals(ak as usize)).map_err(|e| e.to_string())?;
        let h = |a: i64, b: i64| h_ideal(&z, bd(a, b)).map_err(|e| e.to_string());
        let n = ak as u64;
        let values = [
            ((0, ak - 1), h(0, ak - 1)?.h0, 0),
            ((1, ak - 1), h(1, ak - 1)?.h0, n),
            ((0, ak), h(0, ak)?.h0, 1),
            ((1, ak), h(1, ak)?.h0, n + 2),
            ((2, ak), h(2, ak)?.h0, 2 * n + 3),
        ];
        for ((a, b), got, want) in values {
            ensure(got == want, || format!("a_k={ak}: h0(I({a},{b})) = {got}, expected {want}"))?;
        }
        for (a, b) in [(0, ak), (1, ak), (1, ak - 1)] {
            ensure(h(a, b)?.h1 == 0, || format!("a_k={ak}: h1(I({a},{b})) != 0"))?;
        }
        for a in -2..=3 {
            for b in -2..=3 {
                let t = bd(a, b);
                let iv = koszul_h(&z, 0, t).map_err(|e| e.to_string())?;
                let exact = koszul_target(&z, 0, t).map_err(|e| e.to_string())?;
                ensure(iv.contains(&exact), || format!("a_k={ak} twist {t}: {iv:?} misses {exact:?}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} Koszul intervals"))
}

fn unit_shift_suite() -> Check {
    let mut sampler = Sampler::new(4242);
    let mut cases = 0;
    for _ in 0..1000 {
        let rank = sampler.int_in(1, 5) as usize;
        let len = sampler.int_in(1, 5) as usize;
        let comps = (0..len)
            .map(|_| SplittingType::new((0..rank).map(|_| sampler.int_in(-5, 5)).collect()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        let cb = ChainBundle::new(comps).map_err(|e| e.to_string())?;
        for mask in 1u32..(1 << len) {
            let deltas: Vec<u64> = (0..len).map(|i| u64::from(mask >> i & 1)).collect();
            let ok = lemma_ineq2_check(&cb, &deltas).map_err(|e| e.to_string())?;
            ensure(ok, || format!("{cb} with deltas {deltas:?}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} cases"))
}

fn compositions(total: u64) -> Vec<Vec<u64>> {
    if total == 0 {
        return vec![vec![]];
    }
    (1..=total)
        .flat_map(|first| {
            compositions(total - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn segre_degrees() -> Check {
    let mut sampler = Sampler::new(5150);
    for r in 2..=5usize {
        let cfg = standard_config(r).map_err(|e| e.to_string())?;
        let y0 = plucker_point(cfg.v_prime()).map_err(|e| e.to_string())?;
        for _ in 0..20 {
            let ts: Vec<Rational> = (1..r).map(|_| sampler.nonzero_rational()).collect();
            let pc = plucker_curve(&cfg, &ts).map_err(|e| e.to_string())?;
            let deg = curve_degree(&pc);
            ensure(deg == r, || format!("r={r}, t={ts:?}: degree {deg}"))?;
            ensure(same_plucker_point(&pc.eval(&Rational::from_integer(0.into())), &y0), || {
                format!("r={r}: curve misses y0")
            })?;
        }
        let ch = chain_of_lines(&cfg).map_err(|e| e.to_string())?;
        ensure(ch.is_path() && ch.nodes.len() == r - 1, || format!("r={r}: chain of lines not a path"))?;
    }
    let mut chains = 0;
    for total in 1..=8 {
        for degrees in compositions(total) {
            let rep = embed_chain(&degrees).map_err(|e| e.to_string())?;
            ensure(rep.span_dim as u64 == 1 + total && rep.incidences_ok(), || {
                format!("{degrees:?}: span {} incidences {}", rep.span_dim, rep.incidences_ok())
            })?;
            chains += 1;
        }
    }
    Ok(format!("80 curves, {chains} chains"))
}

fn bound_engine() -> Check {
    let spec = IndGrassSpec::constant(2, 2, 2, 0);
    let rep = triviality_threshold(&spec, 20).map_err(|e| e.to_string())?;
    ensure(rep.threshold == Some(8), || format!("threshold {:?}", rep.threshold))?;
    // Independent oracle: machine integers over D_m in [1, 10^6].
    for m in 1..=20u64 {
        let d = cumulative_degree(&spec, m).map_err(|e| e.to_string())?.to_i128().unwrap();
        let (k, d1, r) = (2i128, 0i128, 2i128);
        let fails_all = (1..=1_000_000i128).all(|dm| d * dm > 4 * k * (d1 + 2) * (2 * r * dm + 1) - 2 * k);
        let row = &rep.rows[m as usize - 1];
        ensure(row.fails_all == fails_all, || format!("m={m}: criterion {} vs brute {fails_all}", row.fails_all))?;
    }
    let mut sampler = Sampler::new(66);
    for _ in 0..100 {
        let s = IndGrassSpec::constant(
            sampler.int_in(2, 40) as u64,
            sampler.int_in(1, 6) as u64,
            sampler.int_in(1, 10) as u64,
            sampler.int_in(0, 10) as u64,
        );
        let m = sampler.int_in(1, 30) as u64;
        let e = main_inequality(&s, m, 0).map_err(|e| e.to_string())?;
        ensure(e.holds, || format!("{s:?} m={m}: D_m = 0 excluded"))?;
    }
    Ok("threshold 8".into())
}

fn consistency() -> Check {
    let mut triples = 0;
    for a in -6..=6 {
        for b in -6..=6 {
            ensure(h_line(bd(a, b)).is_consistent(), || format!("O({a},{b})"))?;
            triples += 1;
        }
    }
    for (p, ledger) in ledgers()? {
        for e in &ledger {
            for row in &e.rows {
                ensure(row.h.is_consistent(), || format!("{:?} k={}: {}", p.parts(), e.k, row.h))?;
                triples += 1;
            }
            let partial: u64 = (1..=e.k).map(|i| p.a(i)).sum();
            ensure(e.c1 == bd(0, partial as i64), || format!("{:?} k={}: c1 {}", p.parts(), e.k, e.c1))?;
            ensure(e.restriction_generic_fiber.degree() == e.c1.a, || format!("{:?}: fiber degree", p.parts()))?;
            ensure(e.restriction_p.degree() == e.c1.b, || format!("{:?}: P degree", p.parts()))?;
            ensure(e.restriction_pprime.degree() == e.c1.b, || format!("{:?}: P' degree", p.parts()))?;
            if let Some(j) = &e.restriction_jumping_fiber {
                ensure(j.degree() == e.c1.a, || format!("{:?}: jumping fiber degree", p.parts()))?;
            }
            for st in [&e.restriction_generic_fiber, &e.restriction_p, &e.restriction_pprime] {
                ensure(st.rank() == e.k, || format!("{:?} k={}: rank {}", p.parts(), e.k, st.rank()))?;
            }
        }
    }
    Ok(format!("{triples} triples"))
}

fn ssyt_count(lambda: &[u64], n: u64) -> u64 {
    fn go(idx: usize, cells: &[(usize, usize)], grid: &mut [Vec<u64>], n: u64) -> u64 {
        let Some(&(i, j)) = cells.get(idx) else { return 1 };
        let lo = (if j > 0 { grid[i][j - 1] } else { 1 }).max(if i > 0 { grid[i - 1][j] + 1 } else { 1 });
        (lo..=n)
            .map(|v| {
                grid[i][j] = v;
                go(idx + 1, cells, grid, n)
            })
            .sum()
    }
    let cells: Vec<(usize, usize)> = lambda
        .iter()
        .enumerate()
        .flat_map(|(i, &l)| (0..l as usize).map(move |j| (i, j)))
        .collect();
    let mut grid: Vec<Vec<u64>> = lambda.iter().map(|&l| vec![0; l as usize]).collect();
    go(0, &cells, &mut grid, n)
}

fn partitions(total: u64, max: u64) -> Vec<Vec<u64>> {
    if total == 0 {
        return vec![vec![]];
    }
    (1..=max.min(total))
        .rev()
        .flat_map(|first| {
            partitions(total - first, first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn schur_vs_tableaux() -> Check {
    let mut cases = 0;
    for total in 0..=8 {
        for lambda in partitions(total, total) {
            for n in 1..=6 {
                let hook = schur_dimension(&lambda, n).map_err(|e| e.to_string())?;
                let count = ssyt_count(&lambda, n);
                ensure(hook == BigUint::from(count), || format!("{lambda:?}, n={n}: {hook} vs {count}"))?;
                cases += 1;
            }
        }
    }
    for (n, r, k, want) in [(3, 2, 1, 8u32), (3, 2, 2, 15)] {
        let got = flag_sections_dim(n, r, k).map_err(|e| e.to_string())?;
        ensure(got == BigUint::from(want), || format!("flag_sections_dim({n},{r},{k}) = {got}"))?;
    }
    Ok(format!("{cases} shapes"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("invariants of F", f_invariants_battery, 60),
        ("level closed forms and collapse", level_closed_forms, 60),
        ("ideal-sheaf oracle and Koszul intervals", ideal_oracle, 30),
        ("chain vanishing for unit shifts", unit_shift_suite, 10),
        ("Segre degrees, line chains, chain embeddings", segre_degrees, 30),
        ("bound engine", bound_engine, 10),
        ("chi and Chern bookkeeping", consistency, 60),
        ("Schur dimensions", schur_vs_tableaux, 10),
    ];
    let mut failed = 0;
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(*budget);
        match outcome {
            Ok(detail) if !over => println!("PASS {} {name} ({detail}; {:.2?})", i + 1, elapsed),
            Ok(detail) => {
                failed += 1;
                println!("FAIL {} {name} ({detail}; {:.2?} exceeds {budget}s)", i + 1, elapsed);
            }
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} ({:.2?})", i + 1, elapsed);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
