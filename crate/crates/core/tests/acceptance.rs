//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. Limits and seeds are fixed below.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use dihedrant::arith::{divisors, units};
use dihedrant::constructions::enumerate_family;
use dihedrant::cyclotomic::{fourier_at_values, fourier_values, ramanujan, Cyclotomic};
use dihedrant::dsrg::{verify_fourier, verify_groupring, verify_matrix, Dihedrant, DsrgParams};
use dihedrant::residue::{orbit, ZnMultiset};
use dihedrant::search::{
    canonical_orbit_total, cross_validate, search_xx, search_xy, xx_candidates, xy_candidates, SearchMode,
    SearchOptions, SearchRecord,
};
use dihedrant::structure::{decompose_ux, q_values, shape_t14, shape_t15, shape_t16};
use dihedrant::{constructions::validate_t11, Family};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FOURIER_SEED: u64 = 0x5EED_0008;
const AGREEMENT_SEED: u64 = 0x5EED_0009;
const AGREEMENT_INSTANCES: usize = 10_000;
const AGREEMENT_MAX_N: usize = 24;
const FOURIER_MAX_N: usize = 100;

type Outcome = Result<String, String>;

struct Suite {
    failed: usize,
}

impl Suite {
    fn run(&mut self, id: u32, title: &str, limit: Duration, body: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let outcome = body();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > limit => Err(format!("{detail}; over time limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS [{id:>2}] {title}: {detail} ({elapsed:.2?} / {limit:?})"),
            Err(detail) => {
                self.failed += 1;
                println!("FAIL [{id:>2}] {title}: {detail} ({elapsed:.2?} / {limit:?})");
            }
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn single() -> SearchOptions {
    SearchOptions { jobs: 1, ..SearchOptions::default() }
}

fn all_verifiers(d: &Dihedrant) -> Result<DsrgParams, String> {
    let p = verify_matrix(d).map_err(|v| format!("{d}: {v}"))?;
    let g = verify_groupring(d, &p).map_err(err)?;
    let f = verify_fourier(d, &p).map_err(err)?;
    ensure(g.holds() && f.holds(), || format!("{d}: group ring {g:?}, Fourier {f:?}"))?;
    Ok(p)
}

fn c1() -> Outcome {
    let d = Dihedrant::from_elements(3, &[1], &[1]).map_err(err)?;
    let n = 3i64;
    let formula = DsrgParams::new(2 * n, n - 1, (n - 1) / 2, (n - 3) / 2, (n - 1) / 2);
    let p = all_verifiers(&d)?;
    ensure(p == formula && p.is_genuine(), || format!("got {p}, formula gives {formula}"))?;
    Ok(format!("{d} is {p}"))
}

fn c2() -> Outcome {
    let cases: [(Family, &[usize], &[usize]); 4] = [
        (Family::C51, &[9, 27], &[3, 9, 27]),
        (Family::C52, &[4, 8, 16], &[4, 8, 16]),
        (Family::C53, &[3, 9, 27], &[3, 9, 27]),
        (Family::C54, &[3, 9, 27], &[3, 9, 27]),
    ];
    let mut total = 0;
    for (family, ns, vs) in cases {
        for &n in ns {
            for &v in vs.iter().filter(|&&v| v <= n && n % v == 0) {
                for inst in enumerate_family(family, n, v).map_err(err)? {
                    let got = verify_matrix(&inst.dihedrant).map_err(|e| format!("{}: {e}", inst.dihedrant))?;
                    ensure(got == inst.params, || format!("{}: {got} vs {}", inst.dihedrant, inst.params))?;
                    total += 1;
                }
            }
        }
    }
    ensure(total > 0, || "no instances".into())?;
    Ok(format!("{total} instances verified"))
}

fn disjoint_from_negative(r: &SearchRecord) -> bool {
    let x = r.x_set();
    x.is_disjoint(&x.negate()).expect("same modulus")
}

fn dedup_consistent(records: &[SearchRecord], xx: bool) -> Result<(), String> {
    let total = canonical_orbit_total(records, |x, y| !xx || x == y).map_err(err)?;
    ensure(total == records.len(), || format!("canonical orbits cover {total} of {} records", records.len()))
}

fn c3(records: &[SearchRecord]) -> Outcome {
    ensure(records.len() == 18, || format!("{} records, expected 18", records.len()))?;
    let cv = cross_validate(records, xx_candidates(9), |x, _| shape_t14(3, 2, x).unwrap_or(false));
    ensure(cv.is_clean(), || format!("{} failing, {} missing", cv.failing.len(), cv.missing.len()))?;
    dedup_consistent(records, true)?;
    Ok("18 records, both defect lists empty".into())
}

fn c4(runs: &[(u32, Vec<SearchRecord>)]) -> Outcome {
    let mut sizes = Vec::new();
    for (alpha, records) in runs {
        let n = 1usize << alpha;
        let cv = cross_validate(records, xx_candidates(n), |x, _| shape_t15(*alpha, x).unwrap_or(false));
        ensure(cv.is_clean(), || {
            format!("n = {n}: {} failing, {} missing", cv.failing.len(), cv.missing.len())
        })?;
        dedup_consistent(records, true)?;
        sizes.push(records.len());
    }
    ensure(sizes == [2, 6, 22], || format!("record counts {sizes:?}, expected [2, 6, 22]"))?;
    Ok(format!("record counts {sizes:?}, defect lists empty"))
}

fn c5(runs: &[(u32, Vec<SearchRecord>)]) -> Outcome {
    let bad: Vec<_> = runs.iter().flat_map(|(_, r)| r).filter(|r| disjoint_from_negative(r)).collect();
    ensure(bad.is_empty(), || format!("{} records with X ∩ (−X) = ∅", bad.len()))?;
    Ok(format!("{} records checked", runs.iter().map(|(_, r)| r.len()).sum::<usize>()))
}

fn c6(runs: &[(u32, Vec<SearchRecord>)]) -> Outcome {
    let mut sizes = Vec::new();
    for (alpha, records) in runs {
        let n = 3usize.pow(*alpha);
        let nested: Vec<SearchRecord> =
            records.iter().filter(|r| r.nested_orbit_union == Some(true)).cloned().collect();
        let cv = cross_validate(&nested, xy_candidates(n), |x, y| shape_t16(3, *alpha, x, y).unwrap_or(false));
        ensure(cv.is_clean(), || {
            format!("n = {n}: {} failing, {} missing", cv.failing.len(), cv.missing.len())
        })?;
        dedup_consistent(records, false)?;
        sizes.push(nested.len());
    }
    ensure(sizes == [2, 20], || format!("nested sub-list sizes {sizes:?}, expected [2, 20]"))?;
    Ok(format!("nested sub-list sizes {sizes:?}, equal to shape lists"))
}

fn c7() -> Outcome {
    let records = search_xy(5, 1, &SearchOptions::default()).map_err(err)?;
    let t11 = |x: &ZnMultiset, y: &ZnMultiset| matches!(validate_t11(x, y), Ok(Some(_)));
    let cv = cross_validate(&records, xy_candidates(5), t11);
    ensure(cv.is_clean(), || format!("{} failing, {} missing", cv.failing.len(), cv.missing.len()))?;
    ensure(records.len() == 40, || format!("{} genuine pairs, expected 40", records.len()))?;
    Ok("40 genuine pairs, all and only those meeting the T1.1 conditions".into())
}

fn c8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(FOURIER_SEED);
    let mut checks = 0usize;
    for n in 1..=FOURIER_MAX_N {
        let f: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
        let g: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
        let ff = fourier_values(&f);
        let fg = fourier_values(&g);

        // inversion: Σ_z F(z) ζ^{−iz} = n f(i)
        for (i, &fi) in f.iter().enumerate() {
            let mut s = Cyclotomic::<i64>::zero(n);
            for z in 0..n {
                s = &s + &ff.at(z).shift(-((i * z) as i64));
            }
            ensure(s.try_eq(&Cyclotomic::from_int(n, n as i64 * fi)).map_err(err)?, || {
                format!("inversion fails at n = {n}, i = {i}")
            })?;
            checks += 1;
        }

        let conv: Vec<i64> =
            (0..n).map(|k| (0..n).map(|i| f[i] * g[(n + k - i) % n]).sum()).collect();
        let reflected: Vec<i64> = (0..n).map(|i| f[(n - i) % n]).collect();
        let fc = fourier_values(&conv);
        let fr = fourier_values(&reflected);
        for z in 0..n {
            let prod = ff.at(z) * fg.at(z);
            ensure(fc.at(z).try_eq(&prod).map_err(err)?, || format!("convolution fails at n = {n}, z = {z}"))?;
            ensure(fr.at(z).try_eq(&ff.at(z).conjugate()).map_err(err)?, || {
                format!("conjugation fails at n = {n}, z = {z}")
            })?;
            checks += 2;
        }

        for r in divisors(n) {
            let o = orbit(n, r).map_err(err)?;
            let mut ind = vec![0i64; n];
            for &e in &o.elements {
                ind[e] = 1;
            }
            for z in 0..n {
                let closed = ramanujan(n, r, z).map_err(err)?;
                let direct = fourier_at_values(&ind, z);
                ensure(direct.try_eq(&Cyclotomic::from_int(n, closed)).map_err(err)?, || {
                    format!("Ramanujan sum differs at n = {n}, r = {r}, z = {z}")
                })?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} exact identities, n ≤ {FOURIER_MAX_N}, seed {FOURIER_SEED:#x}"))
}

/// Parameters read off row 0 of A², used as the candidate for non-DSRGs.
fn row_zero_params(d: &Dihedrant) -> DsrgParams {
    let a = d.adjacency();
    let size = a.size();
    let t = a.square_entry(0, 0) as i64;
    let lambda = (1..size).find(|&j| a.get(0, j)).map_or(0, |j| a.square_entry(0, j) as i64);
    let mu = (1..size).find(|&j| !a.get(0, j)).map_or(0, |j| a.square_entry(0, j) as i64);
    DsrgParams::new(size as i64, d.degree() as i64, mu, lambda, t)
}

fn random_set(rng: &mut ChaCha8Rng, n: usize, skip_zero: bool) -> Vec<i64> {
    let density: f64 = rng.gen();
    (0..n as i64).filter(|&e| !(skip_zero && e == 0) && rng.gen_bool(density)).collect()
}

fn c9() -> Outcome {
    let mut pool = Vec::new();
    for n in 3..=AGREEMENT_MAX_N {
        for family in Family::ALL {
            let vs = if family.uses_quotient() { divisors(n) } else { vec![0] };
            for v in vs {
                if let Ok(found) = enumerate_family(family, n, v) {
                    pool.extend(found.into_iter().map(|i| i.dihedrant));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(AGREEMENT_SEED);
    let (mut dsrg, mut other) = (0usize, 0usize);
    for i in 0..AGREEMENT_INSTANCES {
        let d = if i % 2 == 0 {
            let base = &pool[rng.gen_range(0..pool.len())];
            let us = units(base.n());
            let b = us[rng.gen_range(0..us.len())] as i64;
            base.transform(b, rng.gen_range(0..base.n() as i64)).map_err(err)?
        } else {
            let n = rng.gen_range(1..=AGREEMENT_MAX_N);
            let x = random_set(&mut rng, n, true);
            let y = random_set(&mut rng, n, false);
            Dihedrant::from_elements(n, &x, &y).map_err(err)?
        };
        match verify_matrix(&d) {
            Ok(p) => {
                all_verifiers(&d)?;
                // μ is unconstrained when there are no non-arcs
                let wrong = if p.k == p.v - 1 {
                    DsrgParams::new(p.v, p.k, p.mu, p.lambda + 1, p.t)
                } else {
                    DsrgParams::new(p.v, p.k, p.mu + 1, p.lambda, p.t)
                };
                let g = verify_groupring(&d, &wrong).map_err(err)?;
                let f = verify_fourier(&d, &wrong).map_err(err)?;
                ensure(!g.holds() && !f.holds(), || format!("{d}: accepts wrong parameters {wrong}"))?;
                dsrg += 1;
            }
            Err(_) => {
                let cand = row_zero_params(&d);
                let g = verify_groupring(&d, &cand).map_err(err)?;
                let f = verify_fourier(&d, &cand).map_err(err)?;
                ensure(!g.holds() && !f.holds(), || format!("{d}: matrix rejects, group ring {g:?}, Fourier {f:?}"))?;
                other += 1;
            }
        }
    }
    Ok(format!(
        "{AGREEMENT_INSTANCES} instances ({dsrg} DSRG, {other} not), pool {}, seed {AGREEMENT_SEED:#x}",
        pool.len()
    ))
}

fn c10(records: &[&SearchRecord]) -> Outcome {
    for r in records {
        let d = r.dihedrant().map_err(err)?;
        let comp = verify_matrix(&d.complement()).map_err(|e| format!("complement of {d}: {e}"))?;
        ensure(comp == r.params.complement(), || {
            format!("complement of {d} is {comp}, expected {}", r.params.complement())
        })?;
        let e = r.params.eigenvalues().map_err(|e| format!("{}: {e}", r.params))?;
        let (k, v) = (r.params.k, r.params.v);
        ensure(k + e.rho * e.m_rho + e.sigma * e.m_sigma == 0, || format!("{}: trace", r.params))?;
        ensure(1 + e.m_rho + e.m_sigma == v, || format!("{}: multiplicities", r.params))?;
    }
    Ok(format!("{} records", records.len()))
}

fn c11(odd: &[SearchRecord], even: &[(u32, Vec<SearchRecord>)]) -> Outcome {
    let q_ok = |r: &SearchRecord| {
        let target = r.params.lambda - r.params.mu;
        q_values(&r.x_set())[1..].iter().all(|q| *q == Some(0) || *q == Some(target))
    };
    for r in odd {
        let dec = decompose_ux(3, 2, &r.x_set()).map_err(err)?;
        ensure(dec.valid && dec.i1.is_empty(), || format!("{:?}: {dec:?}", r.x))?;
        ensure(q_ok(r), || format!("{:?}: q-values", r.x))?;
    }
    let mut count = odd.len();
    for (alpha, records) in even {
        for r in records {
            let dec = decompose_ux(2, *alpha, &r.x_set()).map_err(err)?;
            let beta = dec.beta.ok_or_else(|| format!("{:?}: no β", r.x))?;
            ensure(dec.valid && dec.i1 == [beta + 1], || format!("{:?}: {dec:?}", r.x))?;
            ensure(q_ok(r), || format!("{:?}: q-values", r.x))?;
            count += 1;
        }
    }
    Ok(format!("{count} records"))
}

fn main() -> ExitCode {
    let mut suite = Suite { failed: 0 };
    let secs = Duration::from_secs;

    suite.run(1, "T1.1 instance Dih(3,{1},{1})", Duration::from_millis(10), c1);
    suite.run(2, "construction regression", secs(60), c2);

    let mut odd = Vec::new();
    suite.run(3, "X = Y search at n = 9 vs T1.4 shape", secs(5), || {
        odd = search_xx(3, 2, SearchMode::Exhaustive, &single()).map_err(err)?;
        c3(&odd)
    });

    let mut even = Vec::new();
    suite.run(4, "X = Y search at n = 4, 8, 16 vs T1.5 shape", secs(30), || {
        for alpha in 2..=4 {
            even.push((alpha, search_xx(2, alpha, SearchMode::Exhaustive, &single()).map_err(err)?));
        }
        c4(&even)
    });
    suite.run(5, "X ∩ (−X) nonempty at n = 2^α", secs(1), || c5(&even));

    let mut pairs = Vec::new();
    suite.run(6, "pair search at n = 3, 9 vs T1.6 shape", secs(600), || {
        for alpha in 1..=2 {
            pairs.push((alpha, search_xy(3, alpha, &SearchOptions::default()).map_err(err)?));
        }
        c6(&pairs)
    });
    suite.run(7, "pair search at n = 5 vs T1.1 conditions", secs(120), c7);
    suite.run(8, "Fourier identities", secs(120), c8);
    suite.run(9, "verifier agreement", secs(120), c9);

    let closure: Vec<&SearchRecord> = odd
        .iter()
        .chain(even.iter().flat_map(|(_, r)| r))
        .chain(pairs.iter().flat_map(|(_, r)| r))
        .collect();
    suite.run(10, "complement and spectrum closure", secs(60), || c10(&closure));
    suite.run(11, "U_X decomposition and q-values", secs(30), || c11(&odd, &even));

    if suite.failed == 0 {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} criteria fail", suite.failed);
        ExitCode::FAILURE
    }
}
