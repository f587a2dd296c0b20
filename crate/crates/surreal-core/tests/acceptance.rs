//! Acceptance gate: the eleven exact criteria, one verdict line each.
//!
//! Everything here is exact — no tolerances. Criterion 10 is the arbitration
//! criterion: it does not require the coherence suites to pass, it requires
//! the reports to exist, be deterministic, and replay; the verdicts per
//! convention are recorded in the formula ledger.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use surreal_core::audit::{corpus, run_case, run_suite, CaseOutcome};
use surreal_core::logatomic::{
    la_decompose, la_lambda, la_rebuild, rho_grid, Convention, Position,
};
use surreal_core::maps::{map_eps, map_iota, map_kappa, map_mo, map_mo_inv};
use surreal_core::{Number, OrdinalTerm};

fn verdict(n: u32, name: &str, ok: bool) {
    println!("acceptance {n:>2} {name}: {}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n} ({name}) failed");
}

fn suite_clean(name: &str, conv: &Convention) -> bool {
    let report = run_suite(name, conv);
    report.failed == 0 && report.budget_exceeded == 0
}

/// ~215 enumerated ordinals below ω³ (plus a few higher powers).
fn enumerated_ordinals() -> Vec<OrdinalTerm> {
    let mut out = Vec::new();
    for a in 0..6u32 {
        for b in 0..6u32 {
            for c in 0..6u32 {
                if a + b + c == 0 || (a + b + c) % 3 != 0 {
                    continue;
                }
                let mut t = OrdinalTerm::zero();
                for (e, k) in [(2u32, a), (1, b), (0, c)] {
                    if k == 0 {
                        continue;
                    }
                    let exp = OrdinalTerm::from_nat(e.into());
                    let pow = OrdinalTerm::omega_pow(&exp);
                    t = t.plus(&pow.times(&OrdinalTerm::from_nat(k.into())));
                }
                out.push(t);
            }
        }
    }
    out
}

#[test]
fn criterion_01_ord_oracle() {
    verdict(1, "ORD-ORACLE", suite_clean("ord-oracle", &Convention::PAPER_VERBATIM));
}

#[test]
fn criterion_02_omega_map_anchors() {
    let mut ok = true;
    let anchors = [("[+1, -1]", "[+w, -w^(2)]"), ("[+1, -w]", "[+w, -w^(3)]")];
    for (z, want) in anchors {
        let z: Number = z.parse().unwrap();
        let want: Number = want.parse().unwrap();
        ok &= map_mo(&z).unwrap() == want;
    }
    for alpha in enumerated_ordinals() {
        let got = map_mo(&Number::from_ordinal(&alpha)).unwrap();
        let want: Number = format!("[+w^({alpha})]").parse().unwrap();
        ok &= got == want;
    }
    verdict(2, "OMEGA-MAP anchors", ok);
}

#[test]
fn criterion_03_omega_map_structure() {
    let zs = corpus(4);
    let mut ok = true;
    let images: Vec<Number> = zs
        .iter()
        .map(|z| {
            let m = map_mo(z).unwrap();
            ok &= map_mo_inv(&m).unwrap() == *z;
            m
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..100_000 {
        let i = rng.gen_range(0..zs.len());
        let j = rng.gen_range(0..zs.len());
        ok &= images[i].cmp_num(&images[j]).unwrap() == zs[i].cmp_num(&zs[j]).unwrap();
        ok &= images[i].is_initial(&images[j]).unwrap() == zs[i].is_initial(&zs[j]).unwrap();
    }
    verdict(3, "OMEGA-MAP structure", ok);
}

/// The padding identity: when the maximal ordinal initial segment of `y` is
/// a nonzero limit, `mo(x ∔ y) = mo(x) ∔ mo([+τ_x] ∔ y)`.
fn padding_holds(x: &Number, y: &Number) -> bool {
    let lhs = map_mo(&x.concat(y).unwrap()).unwrap();
    let padded = Number::from_ordinal(&x.tau()).concat(y).unwrap();
    let rhs = map_mo(x).unwrap().concat(&map_mo(&padded).unwrap()).unwrap();
    lhs == rhs
}

fn padding_hypothesis(y: &Number) -> bool {
    match y.explicit_runs().unwrap().first() {
        Some(r) if r.sign == surreal_core::Sign::Plus => {
            let (limit, fin) = r.len.split();
            fin == 0u32.into() && !limit.is_zero()
        }
        _ => false,
    }
}

#[test]
fn criterion_04_padding() {
    let small = corpus(2);
    let mut ok = true;
    for x in &small {
        for y in &small {
            if padding_hypothesis(y) {
                ok &= padding_holds(x, y);
            }
        }
    }
    // Deeper corpus, sampled.
    let full = corpus(4);
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let mut checked = 0usize;
    while checked < 2000 {
        let x = &full[rng.gen_range(0..full.len())];
        let y = &full[rng.gen_range(0..full.len())];
        if padding_hypothesis(y) {
            ok &= padding_holds(x, y);
            checked += 1;
        }
    }
    verdict(4, "PADDING", ok);
}

#[test]
fn criterion_05_eps_fixed() {
    let mut ok = true;
    for z in corpus(4) {
        let e = map_eps(&z).unwrap();
        ok &= map_mo(&e).unwrap() == e;
    }
    for alpha in enumerated_ordinals() {
        let got = map_eps(&Number::from_ordinal(&alpha)).unwrap().as_ordinal().unwrap();
        ok &= got == OrdinalTerm::eps(&surreal_core::ExtOrdinal::Ord(alpha.clone()));
    }
    ok &= suite_clean("eps-fixed", &Convention::PAPER_VERBATIM);
    verdict(5, "EPS-FIXED", ok);
}

#[test]
fn criterion_06_iota_kappa() {
    let mut ok = true;
    ok &= map_kappa(&Number::zero()).unwrap() == "[+w]".parse().unwrap();
    ok &= map_kappa(&Number::from_int(1)).unwrap() == "[+eps(0)]".parse().unwrap();
    let zs = corpus(4);
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    for _ in 0..20_000 {
        let x = &zs[rng.gen_range(0..zs.len())];
        let y = &zs[rng.gen_range(0..zs.len())];
        let ix = map_iota(x).unwrap();
        let iy = map_iota(y).unwrap();
        ok &= ix.cmp_num(&iy).unwrap() == x.cmp_num(y).unwrap();
        ok &= ix.is_initial(&iy).unwrap() == x.is_initial(y).unwrap();
    }
    verdict(6, "IOTA-KAPPA", ok);
}

#[test]
fn criterion_07_v_fixed() {
    verdict(7, "V-FIXED", suite_clean("v-fixed", &Convention::PAPER_VERBATIM));
}

#[test]
fn criterion_08_th_formula() {
    verdict(8, "THFORMULA", suite_clean("th-formula", &Convention::PAPER_VERBATIM));
}

#[test]
fn criterion_09_lambda_grid() {
    let mut ok = true;
    let conv = Convention::PAPER_VERBATIM;
    ok &= la_lambda(&Number::zero(), &conv).unwrap() == "[+w]".parse().unwrap();
    ok &= la_lambda(&Number::from_int(-1), &conv).unwrap() == "[+w, -w^(3)]".parse().unwrap();
    let family = ["0", "[+1]", "[-1]", "[+2]", "[-2]", "[+1, -1]", "[-1, +1]", "[+w]"];
    for a in family {
        let a: Number = a.parse().unwrap();
        for n in -6..=0i64 {
            let z = la_rebuild(&Position::Grid { a: a.clone(), n }).unwrap();
            let got = la_lambda(&z, &conv).unwrap();
            let idx = map_iota(&a).unwrap().concat(&Number::from_int(n)).unwrap();
            let want = map_mo(&map_mo(&idx).unwrap()).unwrap();
            ok &= got == want;
            ok &= rho_grid(&a, n, &conv).unwrap() == idx;
        }
    }
    verdict(9, "LAMBDA-GRID", ok);
}

#[test]
fn criterion_10_arbitration() {
    let mut ok = true;
    let mut verbatim_defect = false;
    for conv in Convention::ALL {
        for suite in ["lambda-grid", "lambda-shift", "boundary"] {
            let first = run_suite(suite, &conv);
            let second = run_suite(suite, &conv);
            // Deterministic: byte-identical serialized reports.
            ok &= serde_json::to_string(&first).unwrap() == serde_json::to_string(&second).unwrap();
            // Replayable: every recorded finding reproduces its verdict.
            for finding in &first.findings {
                ok &= run_case(&finding.spec) == finding.outcome;
                ok &= !matches!(finding.outcome, CaseOutcome::Pass);
            }
            if conv.name() == "paper-verbatim" && (first.failed > 0) {
                verbatim_defect = true;
            }
        }
    }
    // The verbatim reading must be refuted mechanically, not assumed.
    ok &= verbatim_defect;
    verdict(10, "LAMBDA-SHIFT + BOUNDARY arbitration", ok);
}

#[test]
fn criterion_11_roundtrip() {
    let mut ok = true;
    for z in corpus(4) {
        ok &= la_rebuild(&la_decompose(&z).unwrap()).unwrap() == z;
        // Notation round trip.
        let printed = z.to_string();
        ok &= printed.parse::<Number>().unwrap() == z;
    }
    // Report schema: serialize, validate required fields, deserialize back.
    let report = surreal_core::audit::run_audit(&Convention::SHIFTED_GUARDED);
    let json = report.to_json();
    ok &= json["schema_version"] == surreal_core::audit::SCHEMA_VERSION;
    ok &= json["convention"] == "shifted-guarded";
    ok &= json["suites"].as_array().map(|s| s.len()) == Some(11);
    for suite in json["suites"].as_array().unwrap() {
        for key in ["name", "total", "passed", "failed", "budget_exceeded", "findings"] {
            ok &= !suite[key].is_null();
        }
    }
    let back: surreal_core::audit::AuditReport = serde_json::from_value(json).unwrap();
    ok &= serde_json::to_value(&back).unwrap() == report.to_json();
    verdict(11, "ROUNDTRIP", ok);
}
