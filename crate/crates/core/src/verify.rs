//! Exhaustive identity sweeps at a fixed truncation level.
//!
//! Each suite lists its tuples in canonical order, checks them (possibly in
//! parallel) and keeps the results in that order, so a report is a pure
//! function of family, level and seed.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::audit::{admissibility_audit, AuditReport};
use crate::context::Context;
use crate::correspondence::{phi, phi_preimage, solve_p_from_s, xi_closed_form, xi_count_oracle, HatVector};
use crate::error::{Error, Result};
use crate::exec::par_map;
use crate::export::{OutputFormat, SCHEMA_VERSION};
use crate::family::Family;
use crate::int::Int;
use crate::label::{labels_up_to, ClassLabel, OmegaLabel};
use crate::partial::project;
use crate::vector::IkVector;
use crate::wreath::{class_label, conjugate, inverse, multiply, support, GroupElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    MainLemma,
    Invert,
    Phi,
    Tower,
    Audit,
    Xi,
    Diagonal,
    Elements,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 9] = ["main-lemma", "invert", "phi", "tower", "audit", "xi", "diagonal", "elements", "all"];

    pub fn name(self) -> &'static str {
        match self {
            Suite::MainLemma => "main-lemma",
            Suite::Invert => "invert",
            Suite::Phi => "phi",
            Suite::Tower => "tower",
            Suite::Audit => "audit",
            Suite::Xi => "xi",
            Suite::Diagonal => "diagonal",
            Suite::Elements => "elements",
            Suite::All => "all",
        }
    }

    /// The concrete suites `self` stands for. Only the audit is meaningful
    /// for a family that is not admissible.
    pub fn expand(self, family: &Family) -> Vec<Suite> {
        match self {
            Suite::All if !family.is_admissible_kind() => vec![Suite::Audit],
            Suite::All => vec![Suite::Xi, Suite::Diagonal, Suite::MainLemma, Suite::Invert, Suite::Phi, Suite::Tower, Suite::Audit],
            s => vec![s],
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        let t = s.trim().to_lowercase().replace('_', "-");
        Suite::NAMES
            .iter()
            .zip([
                Suite::MainLemma,
                Suite::Invert,
                Suite::Phi,
                Suite::Tower,
                Suite::Audit,
                Suite::Xi,
                Suite::Diagonal,
                Suite::Elements,
                Suite::All,
            ])
            .find(|(n, _)| **n == t)
            .map(|(_, s)| s)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`; expected one of {}", Suite::NAMES.join(", "))))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub level: usize,
    pub budget: u64,
    pub jobs: usize,
    pub seed: u64,
    /// Random samples drawn by the `elements` suite.
    pub samples: usize,
}

impl VerifyConfig {
    pub fn new(level: usize) -> VerifyConfig {
        VerifyConfig { level, budget: crate::wreath::DEFAULT_BUDGET, jobs: 1, seed: 0, samples: 256 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checked: u64,
    pub failed: u64,
    pub passed: bool,
    pub first_failure: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
    pub rows: Vec<Value>,
}

impl SuiteReport {
    fn from_rows(suite: Suite, rows: Vec<Value>) -> SuiteReport {
        let bad: Vec<&Value> = rows.iter().filter(|r| r["ok"] != json!(true)).collect();
        SuiteReport {
            suite: suite.name().into(),
            checked: rows.len() as u64,
            failed: bad.len() as u64,
            passed: bad.is_empty(),
            first_failure: bad.first().map(|v| (*v).clone()),
            details: None,
            rows,
        }
    }

    fn from_audit(r: &AuditReport) -> SuiteReport {
        let passed = r.matches_expectation();
        SuiteReport {
            suite: Suite::Audit.name().into(),
            checked: r.pairs_checked,
            failed: u64::from(!passed),
            passed,
            first_failure: if passed { None } else { Some(serde_json::to_value(r).expect("audit serializes")) },
            details: Some(serde_json::to_value(r).expect("audit serializes")),
            rows: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub family: String,
    pub level: usize,
    pub seed: u64,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            OutputFormat::Csv => {
                let mut t = crate::export::Table::new("verify", &["suite", "status", "checked", "failed"]);
                for s in &self.suites {
                    t.push(vec![json!(s.suite), json!(status(s.passed)), json!(s.checked), json!(s.failed)]);
                }
                t.to_csv()
            }
            OutputFormat::Table => {
                let mut out = format!("family {}  level {}\n", self.family, self.level);
                for s in &self.suites {
                    out.push_str(&format!("{:<11} {}  checked {}  failed {}\n", s.suite, status(s.passed), s.checked, s.failed));
                    if let Some(d) = &s.details {
                        out.push_str(&format!(
                            "  outcome {} (expected {})\n",
                            if d["passed"] == json!(true) { "PASS" } else { "FAIL" },
                            if d["expected_pass"] == json!(true) { "PASS" } else { "FAIL" },
                        ));
                        for a in d["axioms"].as_array().into_iter().flatten() {
                            out.push_str(&format!("  {:<17} {:<12} {}\n", s_of(&a["axiom"]), s_of(&a["status"]), s_of(&a["detail"])));
                        }
                        let w = &d["witness"];
                        if !w.is_null() {
                            out.push_str(&format!(
                                "  witness ({}, {}) ~ ({}, {}) inside {} via {}; |G_N| = {}, |G_lambda| = {}\n",
                                s_of(&w["lambda1"]),
                                s_of(&w["h1"]),
                                s_of(&w["lambda2"]),
                                s_of(&w["h2"]),
                                s_of(&w["lambda"]),
                                s_of(&w["conjugator"]),
                                w["ambient_order"],
                                w["local_order"],
                            ));
                        }
                    } else if let Some(f) = &s.first_failure {
                        out.push_str(&format!("  first failure {f}\n"));
                    }
                }
                out.push_str(&format!("overall {}\n", status(self.passed)));
                out
            }
        }
    }
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn s_of(v: &Value) -> String {
    v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string())
}

fn int(x: &Int) -> Value {
    serde_json::to_value(x).expect("integers serialize")
}

fn collect<T>(rs: Vec<Result<T>>) -> Result<Vec<T>> {
    rs.into_iter().collect()
}

pub fn run_verify(family: &Family, suite: Suite, cfg: &VerifyConfig) -> Result<VerifyReport> {
    let suites = suite.expand(family);
    let ctx = if family.is_admissible_kind() { Some(Context::new(family.clone(), cfg.budget)?) } else { None };
    let mut reports = Vec::new();
    for s in suites {
        let report = match (s, &ctx) {
            (Suite::Audit, _) => SuiteReport::from_audit(&admissibility_audit(family, cfg.level, cfg.budget, cfg.jobs)?),
            (_, None) => return Err(Error::NotAdmissible(format!("{family}: only the audit suite applies"))),
            (Suite::MainLemma, Some(c)) => SuiteReport::from_rows(s, main_lemma_rows(c, cfg.level, cfg.jobs)?),
            (Suite::Invert, Some(c)) => SuiteReport::from_rows(s, invert_rows(c, cfg.level, cfg.jobs)?),
            (Suite::Phi, Some(c)) => SuiteReport::from_rows(s, phi_rows(c, cfg.level, cfg.jobs)?),
            (Suite::Tower, Some(c)) => SuiteReport::from_rows(s, tower_rows(c, cfg.level, cfg.jobs)?),
            (Suite::Xi, Some(c)) => SuiteReport::from_rows(s, xi_rows(c, cfg.level)?),
            (Suite::Diagonal, Some(c)) => SuiteReport::from_rows(s, diagonal_rows(c, cfg.level, cfg.jobs)?),
            (Suite::Elements, Some(c)) => SuiteReport::from_rows(s, element_rows(c, cfg.level, cfg.seed, cfg.samples)?),
            (Suite::All, _) => unreachable!("expanded above"),
        };
        reports.push(report);
    }
    Ok(VerifyReport {
        schema: SCHEMA_VERSION,
        family: family.to_string(),
        level: cfg.level,
        seed: cfg.seed,
        passed: reports.iter().all(|r| r.passed),
        suites: reports,
    })
}

/// `lhs` and `rhs` of the xi/S/P identity for every `(l1,c1,l2,c2,l,c)` with
/// `l1, l2 <= l <= n` and `c1, c2, c` classes of `G_l`.
pub fn main_lemma_rows(ctx: &Context, n: usize, jobs: usize) -> Result<Vec<Value>> {
    let mut tuples = Vec::new();
    for l in 0..=n {
        let labels = ctx.level(l)?.labels().to_vec();
        for l1 in 0..=l {
            for c1 in &labels {
                for l2 in 0..=l {
                    for c2 in &labels {
                        for c in &labels {
                            tuples.push((l1, c1.clone(), l2, c2.clone(), l, c.clone()));
                        }
                    }
                }
            }
        }
    }
    let fam = ctx.family();
    collect(par_map(jobs, &tuples, |(l1, c1, l2, c2, l, c)| {
        let m = ctx.verify_main_lemma(*l1, c1, *l2, c2, *l, c)?;
        Ok(json!({
            "l1": l1, "c1": fam.render_class(c1),
            "l2": l2, "c2": fam.render_class(c2),
            "l": l, "c": fam.render_class(c),
            "lhs": int(&m.lhs), "rhs": int(&m.rhs), "ok": m.equal,
        }))
    }))
}

/// Every pair of basis classes with `l1 + l2 <= n` and every class `c` of
/// `G_{l1+l2}`: `P` recovered from `S` against the counted `P`.
pub fn invert_rows(ctx: &Context, n: usize, jobs: usize) -> Result<Vec<Value>> {
    let basis = ctx.omega_basis(n)?;
    let mut tuples = Vec::new();
    for w1 in &basis {
        for w2 in &basis {
            if w1.l + w2.l > n {
                continue;
            }
            for c in ctx.level(w1.l + w2.l)?.labels() {
                tuples.push((w1.clone(), w2.clone(), c.clone()));
            }
        }
    }
    let fam = ctx.family();
    collect(par_map(jobs, &tuples, |(w1, w2, c)| {
        let sys = ctx.build_r_system(w1, w2, c)?;
        let solved = solve_p_from_s(&sys);
        let mut counted = Vec::new();
        for l in sys.levels() {
            counted.push(if c.alpha() > l { Int::ZERO } else { Int::from(ctx.p_constant(w1, w2, &OmegaLabel { l, c: c.clone() })?) });
        }
        Ok(json!({
            "omega1": fam.render_omega(w1), "omega2": fam.render_omega(w2), "c": fam.render_class(c),
            "levels": [sys.lo, sys.hi],
            "solved": solved.iter().map(int).collect::<Vec<_>>(),
            "counted": counted.iter().map(int).collect::<Vec<_>>(),
            "ok": solved == counted,
        }))
    }))
}

fn render_hat(ctx: &Context, v: &HatVector) -> Value {
    let fam = ctx.family();
    let mut m = serde_json::Map::new();
    for (l, x) in &v.components {
        m.insert(l.to_string(), x.to_json(|c| fam.render_class(c)));
    }
    Value::Object(m)
}

/// Multiplicativity of `phi` on basis pairs with `l1 + l2 <= n`, the
/// unitriangular shape of its matrix, and the triangular preimage of every
/// center basis vector.
pub fn phi_rows(ctx: &Context, n: usize, jobs: usize) -> Result<Vec<Value>> {
    let fam = ctx.family();
    let basis = ctx.omega_basis(n)?;
    let pairs: Vec<(OmegaLabel, OmegaLabel)> = basis
        .iter()
        .flat_map(|a| basis.iter().map(move |b| (a.clone(), b.clone())))
        .filter(|(a, b)| a.l + b.l <= n)
        .collect();
    let mut rows = collect(par_map(jobs, &pairs, |(w1, w2)| {
        let a = IkVector::basis(n, w1.clone());
        let b = IkVector::basis(n, w2.clone());
        let left = ctx.hat_product(&phi(&a), &phi(&b))?;
        let right = phi(&ctx.ik_product(&a, &b)?);
        Ok(json!({
            "check": "multiplicative",
            "omega1": fam.render_omega(w1), "omega2": fam.render_omega(w2),
            "product_of_images": render_hat(ctx, &left),
            "image_of_product": render_hat(ctx, &right),
            "ok": left == right,
        }))
    }))?;

    let (row_labels, cols, m) = ctx.phi_matrix(n)?;
    let mut bad = None;
    let square = row_labels.len() == cols.len();
    'outer: for (j, w) in cols.iter().enumerate() {
        for (i, r) in row_labels.iter().enumerate() {
            let diag = r.l == w.l && r.c == w.c;
            let ok = if diag { i == j && m[i][j] == Int::ONE } else { i > j || m[i][j].is_zero() };
            if !ok {
                bad = Some(format!("{} / {}", r.render(fam.label_style()), fam.render_omega(w)));
                break 'outer;
            }
        }
    }
    rows.push(json!({
        "check": "unitriangular",
        "size": [row_labels.len(), cols.len()],
        "entry": bad,
        "ok": square && bad.is_none(),
    }));

    let mut targets = Vec::new();
    for l in 0..=n {
        targets.extend(ctx.center_basis(l)?);
    }
    rows.extend(collect(par_map(jobs, &targets, |t| {
        let pre = phi_preimage(t, n)?;
        let ok = phi(&pre) == HatVector::basis(n, t);
        Ok(json!({
            "check": "preimage",
            "target": t.render(fam.label_style()),
            "preimage": pre.to_json(|w| fam.render_omega(w)),
            "ok": ok,
        }))
    }))?);
    Ok(rows)
}

/// Projections `A_{<=n} -> A_{<=k}`: multiplicative on all basis products,
/// onto, and compatible under composition.
pub fn tower_rows(ctx: &Context, n: usize, jobs: usize) -> Result<Vec<Value>> {
    let fam = ctx.family();
    let basis = ctx.omega_basis(n)?;
    let pairs: Vec<(OmegaLabel, OmegaLabel)> =
        basis.iter().flat_map(|a| basis.iter().map(move |b| (a.clone(), b.clone()))).collect();
    let mut rows = collect(par_map(jobs, &pairs, |(w1, w2)| {
        let a = IkVector::basis(n, w1.clone());
        let b = IkVector::basis(n, w2.clone());
        let ab = ctx.ik_product(&a, &b)?;
        let mut failures = Vec::new();
        for k in 0..=n {
            let lhs = project(&ab, k)?;
            let rhs = ctx.ik_product(&project(&a, k)?, &project(&b, k)?)?;
            if lhs != rhs {
                failures.push(format!("multiplicative at {k}"));
            }
            for j in 0..=k {
                if project(&lhs, j)? != project(&ab, j)? {
                    failures.push(format!("composition {n}->{k}->{j}"));
                }
            }
        }
        Ok(json!({
            "check": "projection",
            "omega1": fam.render_omega(w1), "omega2": fam.render_omega(w2),
            "failures": failures,
            "ok": failures.is_empty(),
        }))
    }))?;
    for k in 0..=n {
        let target = ctx.omega_basis(k)?;
        let hit = target.iter().all(|w| project(&IkVector::basis(n, w.clone()), k).map(|v| v == IkVector::basis(k, w.clone())).unwrap_or(false));
        rows.push(json!({ "check": "onto", "to": k, "basis": target.len(), "ok": hit }));
    }
    Ok(rows)
}

/// Closed form against subset counting for every `l <= n`, `l' <= l` and
/// every label with support at most `l'`. Needs no group enumeration.
pub fn xi_rows(ctx: &Context, n: usize) -> Result<Vec<Value>> {
    let fam = ctx.family();
    let nk = ctx.group().num_classes();
    let mut rows = Vec::new();
    for l in 0..=n {
        for lp in 0..=l {
            for c in labels_up_to(lp, nk) {
                let closed = xi_closed_form(lp, &c, l);
                let counted = xi_count_oracle(lp, &c, l, ctx.group(), ctx.budget())?;
                rows.push(json!({
                    "lprime": lp, "c": fam.render_class(&c), "l": l,
                    "closed": int(&closed), "counted": counted,
                    "ok": closed == Int::from(counted),
                }));
            }
        }
    }
    Ok(rows)
}

/// `P^{(l,c)}_{(l,c1),(l,c2)} = S^{c(l)}_{c1(l),c2(l)}` for every `l <= n`.
pub fn diagonal_rows(ctx: &Context, n: usize, jobs: usize) -> Result<Vec<Value>> {
    let mut tuples: Vec<(usize, ClassLabel, ClassLabel, ClassLabel)> = Vec::new();
    for l in 0..=n {
        let labels = ctx.level(l)?.labels().to_vec();
        for a in &labels {
            for b in &labels {
                for c in &labels {
                    tuples.push((l, a.clone(), b.clone(), c.clone()));
                }
            }
        }
    }
    let fam = ctx.family();
    collect(par_map(jobs, &tuples, |(l, a, b, c)| {
        let w = |x: &ClassLabel| OmegaLabel { l: *l, c: x.clone() };
        let p = ctx.p_constant(&w(a), &w(b), &w(c))?;
        let s = ctx.s_constant(a, b, c, *l)?;
        Ok(json!({
            "l": l, "c1": fam.render_class(a), "c2": fam.render_class(b), "c": fam.render_class(c),
            "P": p, "S": s, "ok": p == s,
        }))
    }))
}

fn random_element(rng: &mut ChaCha8Rng, n: usize, order: usize, ctx: &Context) -> Result<GroupElement> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let deco: Vec<usize> = (0..n).map(|_| rng.gen_range(0..order)).collect();
    GroupElement::new(perm, deco, ctx.group())
}

/// Seeded random triples of `G_n`: associativity, inverses, conjugation
/// invariance of labels and subadditivity of supports.
pub fn element_rows(ctx: &Context, n: usize, seed: u64, samples: usize) -> Result<Vec<Value>> {
    ctx.family().require_admissible()?;
    let f = ctx.group();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(samples);
    for _ in 0..samples {
        let a = random_element(&mut rng, n, f.order(), ctx)?;
        let b = random_element(&mut rng, n, f.order(), ctx)?;
        let c = random_element(&mut rng, n, f.order(), ctx)?;
        let assoc = multiply(&multiply(&a, &b, f)?, &c, f)? == multiply(&a, &multiply(&b, &c, f)?, f)?;
        let inv = multiply(&a, &inverse(&a, f), f)?.is_identity(f);
        let label = class_label(&conjugate(&b, &a, f), f) == class_label(&a, f);
        let sub = support(&multiply(&a, &b, f)?, f).is_subset(support(&a, f).union(support(&b, f)));
        rows.push(json!({
            "a": a.display(f).to_string(), "b": b.display(f).to_string(), "c": c.display(f).to_string(),
            "associative": assoc, "inverse": inv, "label_invariant": label, "support_subadditive": sub,
            "ok": assoc && inv && label && sub,
        }));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Builtin;

    fn cfg(level: usize, jobs: usize) -> VerifyConfig {
        VerifyConfig { jobs, ..VerifyConfig::new(level) }
    }

    #[test]
    fn suite_names_round_trip() {
        for n in Suite::NAMES {
            assert_eq!(n.parse::<Suite>().unwrap().name(), n);
        }
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn all_passes_for_small_admissible_families() {
        let r = run_verify(&Family::symmetric(), Suite::All, &cfg(3, 2)).unwrap();
        assert!(r.passed, "{}", r.render(OutputFormat::Table));
        assert_eq!(r.suites.len(), 7);
        let r = run_verify(&Family::wreath_builtin(Builtin::Cyclic(2)).unwrap(), Suite::All, &cfg(2, 2)).unwrap();
        assert!(r.passed);
    }

    #[test]
    fn d_type_only_audits() {
        let r = run_verify(&Family::d_type(), Suite::All, &cfg(3, 1)).unwrap();
        assert_eq!(r.suites.len(), 1);
        assert!(r.passed);
        let text = r.render(OutputFormat::Table);
        assert!(text.contains("outcome FAIL (expected FAIL)"), "{text}");
        assert!(text.contains("((1 2); +,+)"));
        assert!(matches!(run_verify(&Family::d_type(), Suite::Phi, &cfg(3, 1)), Err(Error::NotAdmissible(_))));
    }

    #[test]
    fn output_does_not_depend_on_jobs() {
        let fam = Family::symmetric();
        let one = run_verify(&fam, Suite::All, &cfg(3, 1)).unwrap().render(OutputFormat::Json);
        let many = run_verify(&fam, Suite::All, &cfg(3, 8)).unwrap().render(OutputFormat::Json);
        assert_eq!(one, many);
    }

    #[test]
    fn elements_suite_is_seeded() {
        let fam = Family::wreath_builtin(Builtin::Sym3).unwrap();
        let a = run_verify(&fam, Suite::Elements, &VerifyConfig { seed: 7, ..cfg(4, 1) }).unwrap();
        let b = run_verify(&fam, Suite::Elements, &VerifyConfig { seed: 7, ..cfg(4, 1) }).unwrap();
        let c = run_verify(&fam, Suite::Elements, &VerifyConfig { seed: 8, ..cfg(4, 1) }).unwrap();
        assert!(a.passed);
        assert_eq!(a, b);
        assert_ne!(a.suites[0].rows, c.suites[0].rows);
    }

    #[test]
    fn budget_errors_surface() {
        let fam = Family::symmetric();
        let tight = VerifyConfig { budget: 100, ..cfg(6, 1) };
        assert!(matches!(run_verify(&fam, Suite::MainLemma, &tight), Err(Error::BudgetExceeded { .. })));
    }
}
