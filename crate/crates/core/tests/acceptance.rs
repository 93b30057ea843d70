//! Acceptance suite: one line per criterion, non-zero exit status on failure.

use std::collections::{BTreeSet, HashSet};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use coxeter_core::chartab::{adjunction_check, inflate, inner_product, steinberg, ClassFunction, CosetCensus};
use coxeter_core::matgroup::{Flavor, GroupSpec, MatrixGroup};
use coxeter_core::predict::{dimension_set, predict, sign_from_dim};
use coxeter_core::ring::{Mode, RingSpec};
use coxeter_core::verify::{load_manifest, run_case, Verdict, VerifyOptions};
use coxeter_core::weyl::{sweep, RootDatum};
use coxeter_core::workbench::Workbench;
use num_rational::Ratio;

const MODES: [Mode; 2] = [Mode::Mixed, Mode::Equal];
const FLAVORS: [Flavor; 2] = [Flavor::Gl, Flavor::Sl];
const GROUP_LIMIT: Duration = Duration::from_secs(30);
const TABLE_LIMIT: Duration = Duration::from_secs(600);
const TABLE_SIZE: u64 = 50_000;

type Outcome = Result<String, String>;

fn ring(p: u32, k: u32, r: u32, mode: Mode) -> RingSpec {
    RingSpec::new(p, k, r, mode).expect("valid ring")
}

fn manifest() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../manifests/default.toml")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn closed_order(q: u64, r: u32, flavor: Flavor) -> u64 {
    match flavor {
        Flavor::Gl => q.pow(4 * (r - 1)) * (q * q - 1) * (q * q - q),
        Flavor::Sl => q.pow(3 * (r - 1)) * q * (q * q - 1),
    }
}

fn criterion_1() -> Outcome {
    let mut n = 0;
    let mut slowest = Duration::ZERO;
    for (p, k, r) in [(2, 1, 1), (3, 1, 1), (2, 1, 2), (3, 1, 2), (2, 2, 2), (2, 1, 3)] {
        for flavor in FLAVORS {
            for mode in MODES {
                let spec = GroupSpec::new(ring(p, k, r, mode), flavor);
                let start = Instant::now();
                let g = MatrixGroup::new(spec).map_err(|e| format!("{spec}: {e}"))?;
                let t = start.elapsed();
                slowest = slowest.max(t);
                let want = closed_order(u64::from(p).pow(k), r, flavor);
                ensure(g.order() as u64 == want, || format!("{spec}: |G| = {} but formula gives {want}", g.order()))?;
                ensure(t < GROUP_LIMIT, || format!("{spec}: {t:?} over the limit"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} groups, slowest {:.2}s", slowest.as_secs_f64()))
}

fn criterion_2(wb: &Workbench) -> Outcome {
    let cases = load_manifest(&manifest()).map_err(|e| e.to_string())?;
    let specs: BTreeSet<GroupSpec> = cases.iter().map(|c| c.group().expect("valid case")).collect();
    let mut orders = BTreeSet::new();
    let mut slowest = Duration::ZERO;
    for spec in specs {
        if spec.order_formula() > TABLE_SIZE {
            continue;
        }
        let start = Instant::now();
        let data = wb.group(spec).map_err(|e| e.to_string())?;
        let table = wb.table(spec).map_err(|e| format!("{spec}: {e}"))?;
        let v = table.validate(&data.classes).map_err(|e| e.to_string())?;
        let t = start.elapsed();
        slowest = slowest.max(t);
        ensure(v.passed(), || format!("{spec}: {v:?}"))?;
        ensure(t < TABLE_LIMIT, || format!("{spec}: {t:?} over the limit"))?;
        orders.insert(data.group.order() as u64);
    }
    ensure(orders.contains(&3888) && orders.contains(&46080), || format!("orders covered: {orders:?}"))?;
    Ok(format!("{} distinct orders up to {}, slowest {:.1}s", orders.len(), orders.last().unwrap(), slowest.as_secs_f64()))
}

fn criterion_3(wb: &Workbench) -> Outcome {
    let mut n = 0;
    for (p, k) in [(2, 1), (3, 1), (2, 2)] {
        let q = i64::from(p).pow(k);
        for flavor in FLAVORS {
            for mode in MODES {
                let spec = GroupSpec::new(ring(p, k, 2, mode), flavor);
                let e = |x: coxeter_core::Error| format!("{spec}: {x}");
                let low = wb.group(spec.at_level(1)).map_err(e)?;
                let high = wb.group(spec).map_err(e)?;
                let hom = wb.reduction(spec, 1).map_err(e)?;
                let st = steinberg::<i64>(&low.group, &low.classes).map_err(e)?;
                let one = ClassFunction::trivial(low.group.id(), low.classes.len());
                let v1 = one.sub(&st).map_err(e)?;
                let v = inflate(&v1, &hom, &high.classes, &low.classes).map_err(e)?;
                let norm = inner_product(&high.classes, &v, &v).map_err(e)?;
                ensure(norm == Ratio::from_integer(2), || format!("{spec}: <V, V> = {norm}"))?;
                let table = wb.table(spec).map_err(e)?;
                let mult = table.decompose(&high.classes, &v).map_err(e)?;
                let mut found: Vec<(i64, i64)> =
                    mult.iter().zip(table.degrees()).filter(|(m, _)| **m != 0).map(|(&m, d)| (d, m)).collect();
                found.sort();
                ensure(found == vec![(1, 1), (q, -1)], || format!("{spec}: constituents {found:?}"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} groups, <V, V> = 2 with constituents of degrees 1 and q"))
}

fn criterion_4() -> Outcome {
    let mut n = 0usize;
    for (p, r) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)] {
        for mode in MODES {
            let t = coxeter_core::torus::CoxeterTorus::new(ring(p, 1, r, mode)).map_err(|e| e.to_string())?;
            let g = t.group();
            for th in t.characters() {
                let (brute, alpha, _) = t.conductor_brute_force(&th);
                let (peeled, _) = t.conductor_peeling(&th).map_err(|e| e.to_string())?;
                ensure(brute == peeled, || format!("p={p} r={r} {mode}: brute {brute} vs peeling {peeled} for {:?}", th.exps))?;
                if brute > 1 {
                    let eta = g.char_mul(&th, &t.norm_twist(&alpha));
                    let tau = t.tau_at_layer(&eta, brute - 1).map_err(|e| e.to_string())?;
                    ensure(!t.is_central(tau), || format!("p={p} r={r}: descended character not regular"))?;
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} characters, conductors agree and descents are regular"))
}

const PRED_CASES: [(u32, u32); 4] = [(2, 1), (3, 1), (2, 2), (5, 1)];

fn criterion_5(wb: &Workbench) -> Outcome {
    let mut n = 0usize;
    for (p, k) in PRED_CASES {
        let q = p.pow(k);
        for r in 1..=3 {
            let set = dimension_set(q, r);
            for mode in MODES {
                let data = wb.torus(ring(p, k, r, mode)).map_err(|e| e.to_string())?;
                for tc in &data.classes {
                    for flavor in FLAVORS {
                        let pr = predict(flavor, tc, q, r).map_err(|e| e.to_string())?;
                        ensure(set.contains(&pr.total_dim), || format!("q={q} r={r}: {} not in {set:?}", pr.total_dim))?;
                        if pr.total_dim.unsigned_abs() >= u64::from(q - 1) {
                            let s = sign_from_dim(pr.total_dim, q).map_err(|e| e.to_string())?;
                            ensure(s == pr.sign, || format!("q={q} r={r}: sign {s} vs {}", pr.sign))?;
                        }
                        n += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{n} predictions inside the dimension set with matching signs"))
}

fn criterion_6(wb: &Workbench) -> Outcome {
    for mode in MODES {
        let data = wb.torus(ring(3, 1, 2, mode)).map_err(|e| e.to_string())?;
        let orbits: HashSet<_> =
            data.classes.iter().filter(|c| c.regular).map(|c| data.torus.sigma_orbit_key(&c.theta)).collect();
        ensure(orbits.len() == 24, || format!("{mode}: {} regular orbits", orbits.len()))?;
        let spec = GroupSpec::new(ring(3, 1, 2, mode), Flavor::Gl);
        let table = wb.table(spec).map_err(|e| e.to_string())?;
        let six = table.count_degree(6);
        ensure(six >= 24, || format!("{spec}: only {six} irreducibles of degree 6"))?;
    }
    let cases = load_manifest(&manifest()).map_err(|e| e.to_string())?;
    let mut passed = 0;
    for c in &cases {
        let rep = run_case(wb, *c, &VerifyOptions::default()).map_err(|e| e.to_string())?;
        let chk = rep.check("degree_census").expect("census check present");
        ensure(chk.verdict != Verdict::Fail, || format!("{c}: census {}", chk.computed))?;
        if chk.verdict == Verdict::Pass {
            passed += 1;
        }
    }
    Ok(format!("24 regular orbits, >= 24 degree-6 irreducibles in both tables, census passes for {passed} manifest cases"))
}

fn criterion_7(wb: &Workbench) -> Outcome {
    let sl = |p, k, r, mode| GroupSpec::new(ring(p, k, r, mode), Flavor::Sl);
    let t3 = wb.table(sl(3, 1, 1, Mode::Mixed)).map_err(|e| e.to_string())?;
    let linear = t3.count_degree(1) - 1;
    ensure(linear >= 2, || format!("SL2(F3): {linear} nontrivial linear characters"))?;
    let t5 = wb.table(sl(5, 1, 1, Mode::Mixed)).map_err(|e| e.to_string())?;
    let two = t5.count_degree(2);
    ensure(two >= 2, || format!("SL2(F5): {two} irreducibles of degree 2"))?;
    let mut details = vec![format!("SL2(F3) {linear} nontrivial linear"), format!("SL2(F5) {two} of degree 2")];
    for mode in MODES {
        let data = wb.torus(ring(2, 1, 2, mode)).map_err(|e| e.to_string())?;
        let flagged: HashSet<_> = data.classes.iter().filter(|c| c.sl.even_split).map(|c| c.sl.bar_orbit.clone()).collect();
        ensure(!flagged.is_empty(), || format!("{mode}: no flagged orbits"))?;
        let t = wb.table(sl(2, 1, 2, mode)).map_err(|e| e.to_string())?;
        let ones = t.count_degree(1);
        ensure(ones > 2 * flagged.len(), || format!("{mode}: {ones} linear characters for {} flagged orbits", flagged.len()))?;
        details.push(format!("SL2 q=2 r=2 {mode}: {ones} linear for {} flagged orbit(s)", flagged.len()));
    }
    Ok(details.join(", "))
}

fn criterion_8(wb: &Workbench) -> Outcome {
    let mut n = 0usize;
    for (p, k) in PRED_CASES {
        let q = p.pow(k);
        for r in 1..=3 {
            for mode in MODES {
                let data = wb.torus(ring(p, k, r, mode)).map_err(|e| e.to_string())?;
                for tc in &data.classes {
                    for flavor in FLAVORS {
                        let pr = predict(flavor, tc, q, r).map_err(|e| e.to_string())?;
                        let c = pr.conjecture(p, k).map_err(|e| e.to_string())?;
                        ensure(c.sign == Some(pr.sign), || {
                            format!("q={q} r={r} {flavor}: exponent {} vs sign {}", c.exponent_string(), pr.sign)
                        })?;
                        n += 1;
                    }
                }
            }
        }
    }
    let data: Vec<RootDatum> = (2..=5).flat_map(|m| [RootDatum::Gl(m), RootDatum::Sl(m)]).collect();
    let rows = sweep(&data, &[2, 3, 4, 5, 7, 8, 9]).map_err(|e| e.to_string())?;
    let inapplicable = rows.iter().filter(|r| r.sign.is_none()).count();
    let failing = rows.iter().filter(|r| r.verdict != "pass").count();
    ensure(inapplicable == 0 && failing == 0, || format!("sweep: {failing} failing, {inapplicable} inapplicable"))?;
    Ok(format!("{n} torus signs agree, {} sweep rows pass with 0 inapplicable", rows.len()))
}

fn criterion_9(wb: &Workbench) -> Outcome {
    let mut pairs = 0usize;
    for flavor in FLAVORS {
        for mode in MODES {
            let spec = GroupSpec::new(ring(2, 1, 2, mode), flavor);
            let e = |x: coxeter_core::Error| format!("{spec}: {x}");
            let high = wb.group(spec).map_err(e)?;
            let low = wb.group(spec.at_level(1)).map_err(e)?;
            let hom = wb.reduction(spec, 1).map_err(e)?;
            let census = CosetCensus::new(&high.group, &hom, &high.classes, &low.classes);
            let th = wb.table(spec).map_err(e)?;
            let tl = wb.table(spec.at_level(1)).map_err(e)?;
            for chi in tl.characters() {
                for psi in th.characters() {
                    let ok = adjunction_check(chi, psi, &hom, &census, &high.classes, &low.classes).map_err(e)?;
                    ensure(ok, || format!("{spec}: adjunction fails"))?;
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn main() -> ExitCode {
    if std::env::args().any(|a| a == "--list") {
        for i in 1..=9 {
            println!("criterion_{i}: test");
        }
        return ExitCode::SUCCESS;
    }
    let wb = Workbench::default();
    let criteria: Vec<(u32, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (1, Box::new(criterion_1)),
        (2, Box::new(|| criterion_2(&wb))),
        (3, Box::new(|| criterion_3(&wb))),
        (4, Box::new(criterion_4)),
        (5, Box::new(|| criterion_5(&wb))),
        (6, Box::new(|| criterion_6(&wb))),
        (7, Box::new(|| criterion_7(&wb))),
        (8, Box::new(|| criterion_8(&wb))),
        (9, Box::new(|| criterion_9(&wb))),
    ];
    let mut failed = 0;
    for (i, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let t = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {i}: PASS ({msg}) [{t:.1}s]"),
            Err(msg) => {
                failed += 1;
                println!("criterion {i}: FAIL ({msg}) [{t:.1}s]");
            }
        }
    }
    println!("acceptance: {} of 9 criteria pass", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
