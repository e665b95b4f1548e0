//! One line per acceptance criterion. Exits nonzero if any criterion fails.

use std::process::Command;
use std::time::Instant;

use qhopf::g2::{self, VerificationReport};
use qhopf::suite::{self, SuiteOptions};
use qhopf::{ClosedKind, Engine};

type Criterion<'a> = (&'a str, Box<dyn Fn() -> Result<String, String> + 'a>);

fn all_pass(reports: &[VerificationReport]) -> Result<String, String> {
    match reports.iter().find(|r| !r.passed()) {
        None => Ok(reports.iter().map(|r| r.name.as_str()).collect::<Vec<_>>().join(", ")),
        Some(r) => Err(format!("{}: {}", r.name, r.witness.as_deref().unwrap_or("failed"))),
    }
}

fn cli(args: &[&str]) -> (Option<i32>, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_qhopf"))
        .args(args)
        .env_remove("QHOPF_FORMAT")
        .output()
        .expect("binary runs");
    (o.status.code(), String::from_utf8_lossy(&o.stdout).into_owned())
}

fn criterion_8() -> Result<String, String> {
    let (code, out) = cli(&["verify", "--identity", "all", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    if code != Some(0) || v["status"] != "pass" {
        return Err(format!("exit {code:?}, status {}", v["status"]));
    }
    let names: Vec<&str> = v["reports"].as_array().unwrap().iter().filter_map(|r| r["name"].as_str()).collect();
    for want in ["coSer", "mon", "ser3", "mon1", "coSer4", "mon2", "pol", "serre-kernel", "leq", "basis-change", "c5"] {
        if !names.contains(&want) {
            return Err(format!("report lacks {want}"));
        }
    }
    if v["reports"].as_array().unwrap().iter().any(|r| r["status"] != "pass") {
        return Err("a report is not pass".into());
    }
    let (code, out) = cli(&["verify", "--identity", "all", "--format", "json", "--corrupt"]);
    let v: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let witness = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .find_map(|r| r["witness"].as_str())
        .unwrap_or_default()
        .to_string();
    if code != Some(1) || witness.is_empty() {
        return Err(format!("corrupted run: exit {code:?}, witness {witness:?}"));
    }
    Ok(format!("{} identities pass; corrupted run exits 1 with witness \"{witness}\"", names.len()))
}

fn main() {
    let opts = SuiteOptions::default();
    let g2e = Engine::g2();
    let criteria: Vec<Criterion> = vec![
        ("coproduct of [x1x2^n] against its closed form, 0 <= n <= 6", Box::new(|| {
            all_pass(&[suite::closed_family(ClosedKind::CoSer, &opts)])
        })),
        ("alpha closed = recurrent and the two-variable identity, n <= 8", Box::new(|| {
            all_pass(&[suite::alpha_and_pol(&opts)])
        })),
        ("mirror and scaled families, 0 <= n <= 6", Box::new(|| {
            let kinds = [ClosedKind::Mon, ClosedKind::Ser3, ClosedKind::Mon1, ClosedKind::CoSer4, ClosedKind::Mon2];
            all_pass(&kinds.map(|k| suite::closed_family(k, &opts)))
        })),
        ("Omega on x2^n (n <= 6) and on Serre polynomials (n <= 5)", Box::new(|| {
            all_pass(&[suite::omega_forms(&opts)])
        })),
        ("shuffle displays, brackets, Omega multiplicativity, braided compatibility", Box::new(|| {
            all_pass(&[suite::shuffle_identities(&opts)])
        })),
        ("G2 suite: Serre kernel, linear relation, basis change, top coproduct", Box::new(|| {
            all_pass(&[
                g2::verify_serre_kernel(&g2e),
                g2::verify_lemma_leq(&g2e),
                g2::verify_basis_change(&g2e),
                g2::verify_theorem_c5(&g2e),
            ])
        })),
        ("coproduct multiplicativity and coassociativity, 50 random cases", Box::new(|| {
            all_pass(&[suite::hopf_sanity(&opts)])
        })),
        ("CLI verify --identity all, clean and corrupted", Box::new(criterion_8)),
    ];

    let mut failed = 0;
    for (i, (label, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = check();
        let ms = t.elapsed().as_millis();
        match r {
            Ok(d) => println!("criterion {}: PASS  {label} ({ms} ms) [{d}]", i + 1),
            Err(w) => {
                failed += 1;
                println!("criterion {}: FAIL  {label} ({ms} ms) witness: {w}", i + 1);
            }
        }
    }
    println!("{} criteria, {failed} failed", criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
