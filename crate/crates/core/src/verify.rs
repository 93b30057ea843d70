//! Checks that confront predictions with computed character tables.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;
use std::time::Instant;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::chartab::{adjunction_check, inflate, inner_product, steinberg, Character, ClassFunction, CosetCensus, TABLE_BOUND};
use crate::error::{Error, Result};
use crate::matgroup::{Flavor, GroupSpec, MAX_GROUP_ORDER};
use crate::predict::{dimension_set, predict, sign_from_dim, stability_consistency, Clause, Prediction};
use crate::ring::{RingSpec, MAX_RING_SIZE};
use crate::torus::TorusCharClass;
use crate::weyl::RootDatum;
use crate::workbench::{TorusData, Workbench};

/// Largest torus classified by the verifier.
pub const TORUS_BOUND: u64 = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CaseKey {
    pub p: u32,
    pub k: u32,
    pub r: u32,
    pub flavor: Flavor,
    pub mode: crate::ring::Mode,
}

impl CaseKey {
    pub fn ring(&self) -> Result<RingSpec> {
        RingSpec::new(self.p, self.k, self.r, self.mode)
    }

    pub fn group(&self) -> Result<GroupSpec> {
        Ok(GroupSpec::new(self.ring()?, self.flavor))
    }

    pub fn q(&self) -> u32 {
        self.p.pow(self.k)
    }
}

impl fmt::Display for CaseKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}2 p={} k={} r={} {}", self.flavor, self.p, self.k, self.r, self.mode)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inapplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inapplicable => "inapplicable",
        })
    }
}

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub case: String,
    pub check_id: String,
    pub clause: String,
    pub computed: Value,
    pub predicted: Value,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    pub runtime_s: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub case: CaseKey,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    /// No check failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn check(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.check_id == id)
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.checks.iter().filter(|c| c.verdict == v).count()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub passed: bool,
    pub cases: Vec<VerificationReport>,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub table_bound: u64,
    pub torus_bound: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { table_bound: TABLE_BOUND, torus_bound: TORUS_BOUND }
    }
}

struct Outcome {
    computed: Value,
    predicted: Value,
    verdict: Verdict,
    note: Option<String>,
}

impl Outcome {
    fn new(computed: Value, predicted: Value, ok: bool) -> Self {
        Outcome { computed, predicted, verdict: verdict(ok), note: None }
    }

    fn inapplicable(reason: impl Into<String>) -> Self {
        Outcome { computed: Value::Null, predicted: Value::Null, verdict: Verdict::Inapplicable, note: Some(reason.into()) }
    }

    fn with_note(mut self, note: Option<String>) -> Self {
        if self.note.is_none() {
            self.note = note;
        }
        self
    }
}

/// Check ids in execution order.
pub const CHECK_IDS: [&str; 11] = [
    "group_order",
    "table_validity",
    "stability",
    "classification",
    "dimension_formula",
    "stability_consistency",
    "weyl_stabilizer",
    "degree_census",
    "sl_exceptions",
    "conjecture",
    "adjunction",
];

fn clause_of(id: &str) -> &'static str {
    match id {
        "group_order" => "closed order formula",
        "table_validity" => "orthogonality relations",
        "stability" => "inflated 1 - St has self-pairing 2",
        "classification" => "conductor by norm twists",
        "dimension_formula" => "signed dimension set",
        "stability_consistency" => "predictions stable under inflation",
        "weyl_stabilizer" => "self-pairing equals Weyl stabilizer",
        "degree_census" => "distinct irreducibles per orbit",
        "sl_exceptions" => "SL2 splitting into two halves",
        "conjecture" => "sign conjecture",
        "adjunction" => "inflation adjunction",
        _ => "",
    }
}

struct Ctx<'a> {
    wb: &'a Workbench,
    key: CaseKey,
    spec: GroupSpec,
    group_ok: Option<String>,
    table_ok: Option<String>,
    torus_ok: Option<String>,
}

impl Ctx<'_> {
    fn torus(&self) -> Result<std::sync::Arc<TorusData>> {
        self.wb.torus(self.spec.ring)
    }

    fn predictions(&self, t: &TorusData) -> Result<Vec<Prediction>> {
        let (q, r) = (self.key.q(), self.key.r);
        t.classes.par_iter().map(|tc| predict(self.key.flavor, tc, q, r)).collect()
    }

    /// Orbits of characters that must give pairwise distinct irreducibles.
    fn orbits(&self, t: &TorusData) -> BTreeMap<Vec<u32>, Vec<usize>> {
        let mut out: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
        for (i, tc) in t.classes.iter().enumerate() {
            let key = match self.key.flavor {
                Flavor::Gl => t.torus.sigma_orbit_key(&tc.theta).exps,
                Flavor::Sl => tc.sl.bar_orbit.clone(),
            };
            out.entry(key).or_default().push(i);
        }
        out
    }

    fn distinctness_note(&self) -> Option<String> {
        (self.key.flavor == Flavor::Sl && self.key.q() < 7)
            .then(|| "distinctness across orbits is empirically observed for SL2 with q < 7".to_string())
    }
}

pub fn run_case(wb: &Workbench, key: CaseKey, opts: &VerifyOptions) -> Result<VerificationReport> {
    let spec = key.group()?;
    if f64::from(key.k * key.r) * f64::from(key.p).ln() > (MAX_RING_SIZE as f64).ln() + 1e-9 {
        let label = key.to_string();
        let reason = format!("ring of size {}^{} exceeds the bound {MAX_RING_SIZE}", key.q(), key.r);
        let checks = CHECK_IDS
            .iter()
            .map(|&id| CheckResult {
                case: label.clone(),
                check_id: id.to_string(),
                clause: clause_of(id).to_string(),
                computed: Value::Null,
                predicted: Value::Null,
                verdict: Verdict::Inapplicable,
                note: Some(reason.clone()),
                runtime_s: 0.0,
            })
            .collect();
        return Ok(VerificationReport { case: key, checks });
    }
    let q = u64::from(key.q());
    let order = spec.order_formula();
    let torus_order = (q * q - 1) * q.pow(2 * (key.r - 1));
    let ring_size = spec.ring.size();
    let group_ok = (order > MAX_GROUP_ORDER || ring_size > MAX_RING_SIZE)
        .then(|| format!("|G| = {order} exceeds the enumeration bound {MAX_GROUP_ORDER}"));
    let table_ok = group_ok
        .clone()
        .or_else(|| (order > opts.table_bound).then(|| format!("|G| = {order} exceeds the table bound {}", opts.table_bound)));
    let torus_ok = (torus_order > opts.torus_bound || ring_size > MAX_RING_SIZE)
        .then(|| format!("|T| = {torus_order} exceeds the torus bound {}", opts.torus_bound));
    let ctx = Ctx { wb, key, spec, group_ok, table_ok, torus_ok };
    let label = key.to_string();
    let checks = CHECK_IDS
        .iter()
        .map(|&id| {
            let start = Instant::now();
            let outcome = match run_check(&ctx, id) {
                Ok(o) => o,
                Err(e) => Outcome {
                    computed: json!({ "error": e.to_string() }),
                    predicted: Value::Null,
                    verdict: Verdict::Fail,
                    note: None,
                },
            };
            CheckResult {
                case: label.clone(),
                check_id: id.to_string(),
                clause: clause_of(id).to_string(),
                computed: outcome.computed,
                predicted: outcome.predicted,
                verdict: outcome.verdict,
                note: outcome.note,
                runtime_s: start.elapsed().as_secs_f64(),
            }
        })
        .collect();
    Ok(VerificationReport { case: key, checks })
}

fn run_check(ctx: &Ctx, id: &str) -> Result<Outcome> {
    let needs_group = matches!(id, "group_order");
    let needs_table = matches!(id, "table_validity" | "stability" | "degree_census" | "sl_exceptions" | "adjunction");
    let needs_torus = !needs_group && !matches!(id, "table_validity" | "stability" | "adjunction");
    if needs_group {
        if let Some(reason) = &ctx.group_ok {
            return Ok(Outcome::inapplicable(reason.clone()));
        }
    }
    if needs_table {
        if let Some(reason) = &ctx.table_ok {
            return Ok(Outcome::inapplicable(reason.clone()));
        }
    }
    if needs_torus {
        if let Some(reason) = &ctx.torus_ok {
            return Ok(Outcome::inapplicable(reason.clone()));
        }
    }
    match id {
        "group_order" => check_group_order(ctx),
        "table_validity" => check_table_validity(ctx),
        "stability" => check_stability(ctx),
        "classification" => check_classification(ctx),
        "dimension_formula" => check_dimension_formula(ctx),
        "stability_consistency" => check_stability_consistency(ctx),
        "weyl_stabilizer" => check_weyl_stabilizer(ctx),
        "degree_census" => check_degree_census(ctx),
        "sl_exceptions" => check_sl_exceptions(ctx),
        "conjecture" => check_conjecture(ctx),
        "adjunction" => check_adjunction(ctx),
        other => Err(Error::InvalidParameters(format!("unknown check {other}"))),
    }
}

fn check_group_order(ctx: &Ctx) -> Result<Outcome> {
    let g = ctx.wb.group(ctx.spec)?;
    let n = g.group.order() as u64;
    let f = ctx.spec.order_formula();
    Ok(Outcome::new(json!(n), json!(f), n == f))
}

fn check_table_validity(ctx: &Ctx) -> Result<Outcome> {
    let g = ctx.wb.group(ctx.spec)?;
    let t = ctx.wb.table(ctx.spec)?;
    let v = t.validate(&g.classes)?;
    let ok = v.passed();
    Ok(Outcome::new(
        serde_json::to_value(&v)?,
        json!({ "degree_square_sum": v.group_order, "irreducibles": v.classes }),
        ok,
    ))
}

fn coxeter_stabilizer(flavor: Flavor) -> usize {
    let d = match flavor {
        Flavor::Gl => RootDatum::Gl(2),
        Flavor::Sl => RootDatum::Sl(2),
    };
    d.twisted_fixed_subgroup(&d.coxeter_element()).len()
}

fn check_stability(ctx: &Ctx) -> Result<Outcome> {
    let q = i64::from(ctx.key.q());
    let low_spec = ctx.spec.at_level(1);
    let low = ctx.wb.group(low_spec)?;
    let st = steinberg::<i64>(&low.group, &low.classes)?;
    let triv = ClassFunction::trivial(low.group.id(), low.classes.len());
    let high = ctx.wb.group(ctx.spec)?;
    let (one, st) = if ctx.key.r == 1 {
        (triv, st)
    } else {
        let hom = ctx.wb.reduction(ctx.spec, 1)?;
        (inflate(&triv, &hom, &high.classes, &low.classes)?, inflate(&st, &hom, &high.classes, &low.classes)?)
    };
    let v = one.sub(&st)?;
    let norm = inner_product(&high.classes, &v, &v)?;
    let table = ctx.wb.table(ctx.spec)?;
    let mult = table.decompose(&high.classes, &v)?;
    let degrees = table.degrees();
    let mut constituents: Vec<(i64, i64)> =
        mult.iter().zip(&degrees).filter(|(m, _)| **m != 0).map(|(&m, &d)| (d, m)).collect();
    constituents.sort();
    let found = table.find(&one).is_some() && table.find(&st).is_some();
    let weyl = coxeter_stabilizer(ctx.key.flavor) as i64;
    let ok = norm == Ratio::from_integer(2) && weyl == 2 && constituents == vec![(1, 1), (q, -1)] && found;
    Ok(Outcome::new(
        json!({
            "self_pairing": norm.to_string(),
            "constituents": constituents.iter().map(|(d, m)| json!({"degree": d, "coefficient": m})).collect::<Vec<_>>(),
            "inflations_in_table": found,
            "weyl_stabilizer": weyl,
        }),
        json!({
            "self_pairing": "2",
            "constituents": [{"degree": 1, "coefficient": 1}, {"degree": q, "coefficient": -1}],
            "inflations_in_table": true,
            "weyl_stabilizer": 2,
        }),
        ok,
    ))
}

fn check_classification(ctx: &Ctx) -> Result<Outcome> {
    let t = ctx.torus()?;
    let mut conductor_mismatch = 0;
    let mut descent_violations = 0;
    let mut regular_fixed = 0;
    let mut multiple_minimizers = 0;
    for tc in &t.classes {
        if !tc.regular && tc.r0 != tc.peeled_r0 {
            conductor_mismatch += 1;
        }
        if tc.regular && tc.peeled_r0 != ctx.key.r {
            conductor_mismatch += 1;
        }
        if !(tc.r0 == 1 || tc.theta0_regular) {
            descent_violations += 1;
        }
        if tc.regular && tc.stabilizer != 1 {
            regular_fixed += 1;
        }
        if tc.alpha_minimizers > 1 {
            multiple_minimizers += 1;
        }
    }
    let ok = conductor_mismatch == 0 && descent_violations == 0 && regular_fixed == 0;
    Ok(Outcome::new(
        json!({
            "characters": t.classes.len(),
            "conductor_mismatches": conductor_mismatch,
            "descent_violations": descent_violations,
            "regular_sigma_fixed": regular_fixed,
            "characters_with_several_minimal_twists": multiple_minimizers,
        }),
        json!({ "conductor_mismatches": 0, "descent_violations": 0, "regular_sigma_fixed": 0 }),
        ok,
    ))
}

fn check_dimension_formula(ctx: &Ctx) -> Result<Outcome> {
    let t = ctx.torus()?;
    let q = ctx.key.q();
    let set = dimension_set(q, ctx.key.r);
    let preds = ctx.predictions(&t)?;
    let mut outside = 0;
    let mut sign_mismatch = 0;
    let mut totals: BTreeMap<i64, usize> = BTreeMap::new();
    for p in &preds {
        *totals.entry(p.total_dim).or_default() += 1;
        if !set.contains(&p.total_dim) {
            outside += 1;
        }
        if p.total_dim.unsigned_abs() >= u64::from(q - 1) {
            match sign_from_dim(p.total_dim, q) {
                Ok(s) if s == p.sign => {}
                _ => sign_mismatch += 1,
            }
        }
    }
    Ok(Outcome::new(
        json!({ "totals": totals, "outside_set": outside, "sign_mismatches": sign_mismatch }),
        json!({ "dimension_set": set }),
        outside == 0 && sign_mismatch == 0,
    ))
}

fn check_stability_consistency(ctx: &Ctx) -> Result<Outcome> {
    if ctx.key.r == 1 {
        return Ok(Outcome::inapplicable("no lower level at r = 1"));
    }
    let t = ctx.torus()?;
    let mut checked = 0;
    let mut failures = 0;
    for r_low in 1..ctx.key.r {
        let lower = t.torus.at_level(r_low)?;
        let results: Vec<Option<bool>> = t
            .classes
            .par_iter()
            .map(|tc| stability_consistency(ctx.key.flavor, &t.torus, &lower, tc))
            .collect::<Result<_>>()?;
        for r in results.into_iter().flatten() {
            checked += 1;
            if !r {
                failures += 1;
            }
        }
    }
    Ok(Outcome::new(json!({ "inflated_characters": checked, "mismatches": failures }), json!({ "mismatches": 0 }), failures == 0))
}

fn stabilizer(flavor: Flavor, tc: &TorusCharClass) -> u32 {
    match flavor {
        Flavor::Gl => tc.stabilizer,
        Flavor::Sl => tc.sl.stabilizer,
    }
}

fn check_weyl_stabilizer(ctx: &Ctx) -> Result<Outcome> {
    let t = ctx.torus()?;
    let preds = ctx.predictions(&t)?;
    let bound = coxeter_stabilizer(ctx.key.flavor) as u32;
    let mut mismatches = 0;
    let mut above = 0;
    for (tc, p) in t.classes.iter().zip(&preds) {
        let s = stabilizer(ctx.key.flavor, tc);
        if u64::from(s) != p.norm() {
            mismatches += 1;
        }
        if s > bound {
            above += 1;
        }
    }
    let trivial_ok = t.classes.first().is_some_and(|tc| stabilizer(ctx.key.flavor, tc) == bound);
    Ok(Outcome::new(
        json!({ "mismatches": mismatches, "above_weyl_bound": above, "trivial_stabilizer": t.classes.first().map(|tc| stabilizer(ctx.key.flavor, tc)) }),
        json!({ "mismatches": 0, "above_weyl_bound": 0, "trivial_stabilizer": bound }),
        mismatches == 0 && above == 0 && trivial_ok,
    )
    .with_note(ctx.distinctness_note()))
}

struct Census {
    required: BTreeMap<u64, u64>,
    regular_orbits: usize,
    orbits: usize,
    inconsistent_orbits: usize,
}

fn census(ctx: &Ctx, t: &TorusData, preds: &[Prediction], filter: impl Fn(&Prediction) -> bool) -> Census {
    let mut required: BTreeMap<u64, u64> = BTreeMap::new();
    let mut regular_orbits = 0;
    let mut inconsistent_orbits = 0;
    let orbits = ctx.orbits(t);
    let mut counted = 0;
    for members in orbits.values() {
        let first = &preds[members[0]];
        if members.iter().any(|&i| !preds[i].same_shape(first)) {
            inconsistent_orbits += 1;
        }
        if t.classes[members[0]].regular {
            regular_orbits += 1;
        }
        if !filter(first) {
            continue;
        }
        counted += 1;
        for c in &first.constituents {
            *required.entry(c.dim).or_default() += u64::from(c.multiplicity);
        }
    }
    Census { required, regular_orbits, orbits: counted, inconsistent_orbits }
}

fn check_degree_census(ctx: &Ctx) -> Result<Outcome> {
    let t = ctx.torus()?;
    let preds = ctx.predictions(&t)?;
    let c = census(ctx, &t, &preds, |_| true);
    let table = ctx.wb.table(ctx.spec)?;
    let mut available = BTreeMap::new();
    let mut ok = c.inconsistent_orbits == 0;
    for (&d, &need) in &c.required {
        let have = table.count_degree(d as i64) as u64;
        ok &= have >= need;
        available.insert(d, have);
    }
    let margins: BTreeMap<u64, i64> =
        c.required.iter().map(|(d, &need)| (*d, available[d] as i64 - need as i64)).collect();
    Ok(Outcome::new(
        json!({
            "orbits": c.orbits,
            "regular_orbits": c.regular_orbits,
            "inconsistent_orbits": c.inconsistent_orbits,
            "available": available,
            "margins": margins,
        }),
        json!({ "required": c.required, "inconsistent_orbits": 0 }),
        ok,
    )
    .with_note(ctx.distinctness_note()))
}

fn check_sl_exceptions(ctx: &Ctx) -> Result<Outcome> {
    if ctx.key.flavor == Flavor::Gl {
        return Ok(Outcome::inapplicable("GL2 has no splitting cases"));
    }
    let t = ctx.torus()?;
    let preds = ctx.predictions(&t)?;
    let exceptional = |p: &Prediction| matches!(p.clause, Clause::SlQuadratic | Clause::SlEvenSplit);
    let flagged = census(ctx, &t, &preds, exceptional);
    if flagged.orbits == 0 {
        return Ok(Outcome::inapplicable(format!("no flagged orbits for q = {}, r = {}", ctx.key.q(), ctx.key.r)));
    }
    let all = census(ctx, &t, &preds, |_| true);
    let table = ctx.wb.table(ctx.spec)?;
    let mut rows = Vec::new();
    let mut ok = true;
    for (&d, &need) in &flagged.required {
        let have = table.count_degree(d as i64) as u64;
        let total = all.required[&d];
        ok &= have >= total;
        rows.push(json!({
            "degree": d,
            "available": have,
            "required_by_flagged_orbits": need,
            "required_in_total": total,
        }));
    }
    Ok(Outcome::new(
        json!({ "flagged_orbits": flagged.orbits, "degrees": rows }),
        json!({ "per_flagged_orbit": 2 }),
        ok,
    )
    .with_note(ctx.distinctness_note()))
}

fn check_conjecture(ctx: &Ctx) -> Result<Outcome> {
    let t = ctx.torus()?;
    let preds = ctx.predictions(&t)?;
    let mut agree = 0;
    let mut disagree = 0;
    let mut inapplicable = Vec::new();
    for (i, p) in preds.iter().enumerate() {
        let c = p.conjecture(ctx.key.p, ctx.key.k)?;
        match c.sign {
            Some(s) if s == p.sign => agree += 1,
            Some(_) => disagree += 1,
            None => inapplicable.push(json!({ "index": i, "dim": p.total_dim, "exponent": c.exponent_string() })),
        }
    }
    let ok = disagree == 0 && inapplicable.is_empty();
    Ok(Outcome::new(
        json!({ "agree": agree, "disagree": disagree, "non_integer_exponents": inapplicable }),
        json!({ "agree": preds.len() }),
        ok,
    ))
}

fn check_adjunction(ctx: &Ctx) -> Result<Outcome> {
    if ctx.key.r == 1 {
        return Ok(Outcome::inapplicable("no lower level at r = 1"));
    }
    let high = ctx.wb.group(ctx.spec)?;
    let high_table = ctx.wb.table(ctx.spec)?;
    let mut pairs = 0usize;
    let mut failures = 0usize;
    for r_low in 1..ctx.key.r {
        let low_spec = ctx.spec.at_level(r_low);
        let low = ctx.wb.group(low_spec)?;
        let low_table = ctx.wb.table(low_spec)?;
        let hom = ctx.wb.reduction(ctx.spec, r_low)?;
        let census = CosetCensus::new(&high.group, &hom, &high.classes, &low.classes);
        let jobs: Vec<(&Character, &Character)> = low_table
            .characters()
            .iter()
            .flat_map(|chi| high_table.characters().iter().map(move |psi| (chi, psi)))
            .collect();
        let results: Vec<bool> = jobs
            .par_iter()
            .map(|(chi, psi)| adjunction_check(chi, psi, &hom, &census, &high.classes, &low.classes))
            .collect::<Result<_>>()?;
        pairs += results.len();
        failures += results.iter().filter(|ok| !**ok).count();
    }
    Ok(Outcome::new(json!({ "pairs": pairs, "failures": failures }), json!({ "failures": 0 }), failures == 0))
}

#[derive(Deserialize)]
struct ManifestFile {
    #[serde(default)]
    case: Vec<CaseKey>,
}

pub fn parse_manifest(text: &str) -> Result<Vec<CaseKey>> {
    let m: ManifestFile = toml::from_str(text).map_err(|e| Error::Manifest(e.to_string()))?;
    if m.case.is_empty() {
        return Err(Error::Manifest("no [[case]] entries".into()));
    }
    for c in &m.case {
        c.ring().map_err(|e| Error::Manifest(format!("{c}: {e}")))?;
    }
    Ok(m.case)
}

pub fn load_manifest(path: &Path) -> Result<Vec<CaseKey>> {
    parse_manifest(&std::fs::read_to_string(path)?)
}

/// Runs every case, in parallel, and collects the reports in input order.
pub fn run_suite(wb: &Workbench, cases: &[CaseKey], opts: &VerifyOptions) -> Result<SuiteReport> {
    let reports: Vec<VerificationReport> = cases.par_iter().map(|&c| run_case(wb, c, opts)).collect::<Result<_>>()?;
    Ok(SuiteReport { passed: reports.iter().all(VerificationReport::passed), cases: reports })
}

/// Counts of `(check id, verdict)` over a suite.
pub fn tally(report: &SuiteReport) -> HashMap<(String, Verdict), usize> {
    let mut out = HashMap::new();
    for c in report.cases.iter().flat_map(|r| &r.checks) {
        *out.entry((c.check_id.clone(), c.verdict)).or_default() += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Mode;

    fn key(p: u32, k: u32, r: u32, flavor: Flavor, mode: Mode) -> CaseKey {
        CaseKey { p, k, r, flavor, mode }
    }

    #[test]
    fn manifest_parsing() {
        let text = "[[case]]\np = 3\nk = 1\nr = 2\nflavor = \"gl\"\nmode = \"mixed\"\n\n[[case]]\np = 2\nk = 1\nr = 1\nflavor = \"sl\"\nmode = \"equal\"\n";
        let cases = parse_manifest(text).unwrap();
        assert_eq!(cases, vec![key(3, 1, 2, Flavor::Gl, Mode::Mixed), key(2, 1, 1, Flavor::Sl, Mode::Equal)]);
        assert!(parse_manifest("").is_err());
        assert!(parse_manifest("[[case]]\np = 4\nk = 1\nr = 1\nflavor = \"gl\"\nmode = \"mixed\"\n").is_err());
    }

    #[test]
    fn small_cases_pass() {
        let wb = Workbench::default();
        for c in [
            key(2, 1, 1, Flavor::Sl, Mode::Equal),
            key(3, 1, 1, Flavor::Gl, Mode::Mixed),
            key(2, 1, 2, Flavor::Gl, Mode::Mixed),
            key(2, 1, 2, Flavor::Sl, Mode::Equal),
        ] {
            let rep = run_case(&wb, c, &VerifyOptions::default()).unwrap();
            for chk in &rep.checks {
                assert_ne!(chk.verdict, Verdict::Fail, "{c}: {} {}", chk.check_id, chk.computed);
            }
            let ids: Vec<&str> = rep.checks.iter().map(|c| c.check_id.as_str()).collect();
            assert_eq!(ids, CHECK_IDS);
        }
    }

    #[test]
    fn oversized_case_is_inapplicable() {
        let wb = Workbench::default();
        let rep = run_case(&wb, key(7, 1, 3, Flavor::Gl, Mode::Mixed), &VerifyOptions::default()).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.count(Verdict::Inapplicable), CHECK_IDS.len());
    }
}
