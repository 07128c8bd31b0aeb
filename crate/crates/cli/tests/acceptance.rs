//! Acceptance checks, one line per criterion. Every comparison is an exact
//! integer equality (tolerance 0); wall-clock limits are pinned below.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use ikalg::verify::{diagonal_rows, invert_rows, main_lemma_rows, phi_rows, tower_rows, xi_rows};
use ikalg::wreath::{class_label, conjugate};
use ikalg::{
    admissibility_audit, omega_of, partial_elements, phi, phi_preimage, pmultiply, Builtin, ClassLabel, Context, Family,
    GroupElement, HatVector, IkVector, Int, OmegaLabel, DEFAULT_BUDGET,
};
use serde_json::Value;

type Check = Result<String, String>;
type Criterion = (u8, &'static str, Duration, fn() -> Check);

fn sym() -> Family {
    Family::symmetric()
}

fn bn() -> Family {
    Family::wreath_builtin(Builtin::Cyclic(2)).unwrap()
}

fn ctx(f: Family) -> Context {
    Context::new(f, DEFAULT_BUDGET).unwrap()
}

fn w(s: &str) -> OmegaLabel {
    s.parse().unwrap()
}

fn all_ok(what: &str, rows: ikalg::Result<Vec<Value>>) -> Result<usize, String> {
    let rows = rows.map_err(|e| format!("{what}: {e}"))?;
    match rows.iter().find(|r| r["ok"] != Value::Bool(true)) {
        Some(bad) => Err(format!("{what}: {bad}")),
        None => Ok(rows.len()),
    }
}

/// `e_{w1} e_{w2}` at level `n` from all pairs of partial elements: the
/// coefficient of `w` is (pairs landing in `w`) / |w|.
fn brute_product(fam: &Family, n: usize, w1: &OmegaLabel, w2: &OmegaLabel) -> BTreeMap<OmegaLabel, Int> {
    let f = fam.group();
    let all = partial_elements(fam, n, DEFAULT_BUDGET).unwrap();
    let mut size: HashMap<OmegaLabel, i64> = HashMap::new();
    for p in &all {
        *size.entry(omega_of(p, f)).or_default() += 1;
    }
    let a: Vec<_> = all.iter().filter(|p| omega_of(p, f) == *w1).collect();
    let b: Vec<_> = all.iter().filter(|p| omega_of(p, f) == *w2).collect();
    let mut hits: BTreeMap<OmegaLabel, i64> = BTreeMap::new();
    for x in &a {
        for y in &b {
            *hits.entry(omega_of(&pmultiply(x, y, f).unwrap(), f)).or_default() += 1;
        }
    }
    hits.into_iter()
        .map(|(k, v)| {
            assert_eq!(v % size[&k], 0, "class sums must multiply to class sums");
            (k.clone(), Int::from(v / size[&k]))
        })
        .collect()
}

fn criterion_1() -> Check {
    let c = ctx(sym());
    let cases = [
        ("1:[]", vec![("1:[]", 1), ("2:[]", 2)]),
        ("2:[2]", vec![("2:[]", 1), ("3:[3]", 3), ("4:[2,2]", 2)]),
    ];
    for (x, expect) in cases {
        let expect: BTreeMap<OmegaLabel, Int> = expect.into_iter().map(|(k, v)| (w(k), Int::from(v as i64))).collect();
        let v = c.ik_product(&IkVector::basis(4, w(x)), &IkVector::basis(4, w(x))).map_err(|e| e.to_string())?;
        let got: BTreeMap<OmegaLabel, Int> = v.iter().map(|(k, x)| (k.clone(), x.clone())).collect();
        if got != expect {
            return Err(format!("e_{x}^2 = {got:?}"));
        }
        if brute_product(&sym(), 4, &w(x), &w(x)) != expect {
            return Err(format!("pair enumeration disagrees for e_{x}^2"));
        }
    }
    Ok("e_(1,[])^2 and e_(2,[2])^2 at N=4, also by pair enumeration".into())
}

/// Conjugation orbits of `G_n` on itself, by brute force.
fn element_orbits(fam: &Family, n: usize) -> Vec<HashSet<GroupElement>> {
    let f = fam.group();
    let els = fam.elements(n, DEFAULT_BUDGET).unwrap();
    let mut seen: HashSet<GroupElement> = HashSet::new();
    let mut orbits = Vec::new();
    for h in &els {
        if seen.contains(h) {
            continue;
        }
        let orbit: HashSet<GroupElement> = els.iter().map(|g| conjugate(g, h, f)).collect();
        seen.extend(orbit.iter().cloned());
        orbits.push(orbit);
    }
    orbits
}

fn criterion_2() -> Check {
    let mut checked = 0;
    for (fam, max_n) in [(sym(), 4), (bn(), 3)] {
        let c = ctx(fam.clone());
        for n in 0..=max_n {
            let orbits = c.orbit_oracle(n).map_err(|e| e.to_string())?;
            let mut labels = HashSet::new();
            for o in &orbits {
                let ls: HashSet<OmegaLabel> = o.iter().map(|p| omega_of(p, fam.group())).collect();
                if ls.len() != 1 || !labels.insert(ls.into_iter().next().unwrap()) {
                    return Err(format!("{fam} N={n}: omega labels do not match orbits"));
                }
            }
            checked += 1;
        }
    }
    let c3 = Family::wreath_builtin(Builtin::Cyclic(3)).unwrap();
    for (fam, max_n) in [(sym(), 5), (bn(), 3), (c3, 3)] {
        for n in 0..=max_n {
            let orbits = element_orbits(&fam, n);
            let mut labels = HashSet::new();
            for o in &orbits {
                let ls: HashSet<ClassLabel> = o.iter().map(|h| class_label(h, fam.group())).collect();
                if ls.len() != 1 || !labels.insert(ls.into_iter().next().unwrap()) {
                    return Err(format!("{fam} n={n}: class labels do not match conjugacy classes"));
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (family, level) partitions agree"))
}

fn criterion_3() -> Check {
    let mut notes = Vec::new();
    for (fam, n) in [(sym(), 5), (bn(), 3)] {
        let rows = main_lemma_rows(&ctx(fam.clone()), n, 4).map_err(|e| e.to_string())?;
        let total = all_ok(&fam.to_string(), Ok(rows.clone()))?;
        let nonzero = rows.iter().filter(|r| r["lhs"] != 0).count();
        if nonzero == 0 {
            return Err(format!("{fam}: every tuple is trivially zero"));
        }
        notes.push(format!("{total} tuples ({nonzero} nonzero) for {fam}, l<={n}"));
    }
    Ok(notes.join("; "))
}

fn criterion_4() -> Check {
    let a = all_ok("sym", invert_rows(&ctx(sym()), 5, 4))?;
    let b = all_ok("wreath:cyclic2", invert_rows(&ctx(bn()), 3, 4))?;
    Ok(format!("{a} + {b} systems solved by forward substitution match counted P"))
}

fn criterion_5() -> Check {
    let a = all_ok("sym", xi_rows(&ctx(sym()), 8))?;
    let b = all_ok("wreath:cyclic2", xi_rows(&ctx(bn()), 8))?;
    Ok(format!("{a} + {b} values, l<=8"))
}

fn criterion_6() -> Check {
    let a = all_ok("sym", diagonal_rows(&ctx(sym()), 4, 4))?;
    let b = all_ok("wreath:cyclic2", diagonal_rows(&ctx(bn()), 2, 4))?;
    Ok(format!("{a} + {b} diagonal triples"))
}

fn criterion_7() -> Check {
    let a = all_ok("sym", phi_rows(&ctx(sym()), 5, 4))?;
    let b = all_ok("wreath:cyclic2", phi_rows(&ctx(bn()), 3, 4))?;
    let mut round_trips = 0;
    for fam in [sym(), bn()] {
        let c = ctx(fam.clone());
        for n in 0..=5 {
            for l in 0..=n {
                for t in c.center_basis(l).map_err(|e| e.to_string())? {
                    let pre = phi_preimage(&t, n).map_err(|e| e.to_string())?;
                    if phi(&pre) != HatVector::basis(n, &t) {
                        return Err(format!("{fam}: preimage of {t} at N={n}"));
                    }
                    round_trips += 1;
                }
            }
        }
    }
    Ok(format!("{a} + {b} multiplicativity/triangularity checks, {round_trips} preimage round trips (N<=5)"))
}

fn criterion_8() -> Check {
    let mut total = 0;
    for (fam, max_n) in [(sym(), 4), (bn(), 3)] {
        let c = ctx(fam.clone());
        for n in 0..=max_n {
            total += all_ok(&format!("{fam} N={n}"), tower_rows(&c, n, 4))?;
        }
    }
    Ok(format!("{total} projection checks"))
}

fn criterion_9() -> Check {
    for (fam, n) in [(sym(), 4), (bn(), 3)] {
        let r = admissibility_audit(&fam, n, DEFAULT_BUDGET, 4).map_err(|e| e.to_string())?;
        if !r.passed {
            return Err(format!("{fam} N={n} failed: {:?}", r.witness));
        }
    }
    let r = admissibility_audit(&Family::d_type(), 3, DEFAULT_BUDGET, 4).map_err(|e| e.to_string())?;
    let w = r.witness.ok_or("dtype passed")?;
    let got = (w.lambda1.as_str(), w.h1.as_str(), w.lambda2.as_str(), w.h2.as_str(), w.lambda.as_str());
    if r.passed || got != ("{1,2}", "((1 2); +,+)", "{1,2}", "((1 2); -,-)", "{1,2}") {
        return Err(format!("dtype witness {got:?}"));
    }
    Ok(format!("sym N=4 PASS, wreath:cyclic2 N=3 PASS, dtype N=3 FAIL at {} ~ {} in {}", w.h1, w.h2, w.lambda))
}

fn criterion_10() -> Check {
    let runs = [("sym", "4"), ("wreath:cyclic2", "3"), ("dtype", "3")];
    let mut bytes = 0;
    for (fam, level) in runs {
        for format in ["json", "table"] {
            let mut outputs = Vec::new();
            for jobs in ["1", "2", "8"] {
                let o = Command::new(env!("CARGO_BIN_EXE_ikalg"))
                    .args(["verify", "all", "--family", fam, "--level", level, "--format", format, "--jobs", jobs])
                    .output()
                    .map_err(|e| e.to_string())?;
                if !o.status.success() {
                    return Err(format!("verify all --family {fam} exited {:?}", o.status.code()));
                }
                outputs.push(o.stdout);
            }
            if outputs.iter().any(|o| *o != outputs[0]) {
                return Err(format!("{fam} {format}: output differs across 1, 2, 8 jobs"));
            }
            bytes += outputs[0].len();
        }
    }
    Ok(format!("identical across 1, 2, 8 jobs ({bytes} bytes compared per worker count)"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "IK product golden values", Duration::from_secs(1), criterion_1),
        (2, "class labels classify orbits", Duration::from_secs(30), criterion_2),
        (3, "xi/S/P identity, all tuples", Duration::from_secs(120), criterion_3),
        (4, "P recovered from S", Duration::from_secs(120), criterion_4),
        (5, "xi closed form vs subset count", Duration::from_secs(60), criterion_5),
        (6, "P equals S on the diagonal", Duration::from_secs(60), criterion_6),
        (7, "phi multiplicative, injective, invertible", Duration::from_secs(120), criterion_7),
        (8, "projection tower", Duration::from_secs(120), criterion_8),
        (9, "admissibility audit", Duration::from_secs(60), criterion_9),
        (10, "determinism across workers", Duration::from_secs(120), criterion_10),
    ];
    let mut failed = 0;
    for (n, name, limit, check) in criteria {
        let t = Instant::now();
        let result = check();
        let dt = t.elapsed();
        let (status, note) = match result {
            Ok(note) if dt <= limit => ("PASS", note),
            Ok(note) => ("FAIL", format!("{note}; over time limit")),
            Err(why) => ("FAIL", why),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {n:>2} {status}  {name}  [tolerance 0, {:.2}s / limit {}s]  {note}",
            dt.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
