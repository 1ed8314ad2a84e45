//! Acceptance criteria 1–9, one PASS/FAIL line each. All comparisons are exact
//! integer equality. Exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use specials::classify::ClassificationReport;
use specials::fixtures::{fixtures_dir, load_dir, verify, Fixture};
use specials::group::{sweep_groups, GroupParams};
use specials::hj::{gcd, hj_evaluate, hj_expand, Ratio};
use specials::{batch, build_ar_quiver, Strategy};

type Verdict = Result<String, String>;

fn fixtures_pass(all: &[Fixture], ids: &[&str]) -> Verdict {
    let mut notes = Vec::new();
    for id in ids {
        let f = all.iter().find(|f| f.id == *id).ok_or(format!("fixture {id} missing"))?;
        let o = verify(f).map_err(|e| format!("{id}: {e}"))?;
        if !o.pass {
            return Err(format!("{id}: {:?}", o.diffs));
        }
        notes.push(*id);
    }
    Ok(notes.join(", "))
}

fn hj_exactness() -> Verdict {
    let hj = hj_expand(23, 18).map_err(|e| e.to_string())?;
    if hj.alphas != [2, 2, 2, 3, 3] || hj.i(4) != 3 {
        return Err(format!("23/18 → {:?}, i₄ = {}", hj.alphas, hj.i(4)));
    }
    let mut pairs = 0;
    for r in 2..=500u64 {
        for a in 1..r {
            if gcd(r, a) != 1 {
                continue;
            }
            let back = hj_evaluate(&hj_expand(r, a).unwrap().alphas).unwrap();
            if back != Ratio::new(r, a) {
                return Err(format!("{r}/{a} evaluates back to {back}"));
            }
            pairs += 1;
        }
    }
    Ok(format!("[2,2,2,3,3], i4 = 3; {pairs} round trips"))
}

fn structural(groups: &[GroupParams]) -> Verdict {
    for g in groups {
        let q = build_ar_quiver(g).map_err(|e| format!("{g}: {e}"))?;
        if let Some(x) = q.mesh_violations().first() {
            return Err(format!("{g}: mesh fails at vertex {x}"));
        }
        if !q.translation_violations().is_empty() {
            return Err(format!("{g}: arrows and τ⁻ disagree"));
        }
        if q.len() as u64 != g.vertex_count() {
            return Err(format!("{g}: {} vertices, expected {}", q.len(), g.vertex_count()));
        }
        if q.sum_rank_squares() != g.order() {
            return Err(format!("{g}: Σ rank² = {}, |G| = {}", q.sum_rank_squares(), g.order()));
        }
        if q.rank(q.r) != 1 || (0..q.len()).any(|v| q.rank(q.tau[v]) != q.rank(v)) {
            return Err(format!("{g}: ranks not τ-invariant or rank R ≠ 1"));
        }
    }
    Ok(format!("{} quivers", groups.len()))
}

fn sweep_check(
    reports: &[Result<ClassificationReport, String>],
    what: &str,
    ok: impl Fn(&ClassificationReport) -> Option<String>,
) -> Verdict {
    let mut bad = Vec::new();
    for r in reports {
        match r {
            Err(e) => bad.push(e.clone()),
            Ok(rep) => {
                if let Some(d) = ok(rep) {
                    bad.push(format!("{}: {d}", rep.group));
                }
            }
        }
    }
    if bad.is_empty() {
        Ok(format!("{} groups, {what}", reports.len()))
    } else {
        Err(format!("{} failures, first: {}", bad.len(), bad[0]))
    }
}

fn main() -> ExitCode {
    let started = Instant::now();
    let all = match load_dir(&fixtures_dir()) {
        Ok(a) => a,
        Err(e) => {
            println!("cannot load fixtures: {e}");
            return ExitCode::FAILURE;
        }
    };
    let groups = sweep_groups();
    let reports: Vec<Result<ClassificationReport, String>> = batch(&groups, Strategy::Parallel)
        .into_iter()
        .zip(&groups)
        .map(|(r, g)| r.map_err(|e| format!("{g}: {e}")))
        .collect();

    let criteria: Vec<(&str, Verdict)> = vec![
        ("HJ exactness", hj_exactness()),
        ("Laufer fixtures", fixtures_pass(&all, &["laufer_star_minus3", "laufer_star_minus2", "zf_I1"])),
        ("D(5,2) counting table", fixtures_pass(&all, &["d5_2_ext1"])),
        ("syzygy fixtures", fixtures_pass(&all, &["d14_9_syzygy", "d23_18_syzygy"])),
        (
            "free-expansion windows",
            fixtures_pass(&all, &["freeT_general", "freeT_t3", "freeO_general", "freeO_t3", "freeI_general", "freeI_t3"]),
        ),
        (
            "oracle equivalence sweep",
            sweep_check(&reports, "counting = closed form", |r| r.checks.oracle_equivalence.detail.clone()),
        ),
        (
            "Wunram sweep",
            sweep_check(&reports, "count and ranks match Z_f", |r| r.checks.wunram.detail.clone()),
        ),
        (
            "Ω-duality sweep",
            sweep_check(&reports, "biconditional holds; Gorenstein members all special", |r| {
                if let Some(d) = &r.checks.omega_duality.detail {
                    return Some(d.clone());
                }
                let gorenstein = matches!(r.group, GroupParams::A { .. } | GroupParams::T { .. } | GroupParams::O { .. } | GroupParams::I { .. })
                    && r.group.is_gorenstein();
                (gorenstein && r.specials_by_counting.len() != r.vertex_count)
                    .then(|| "Gorenstein group with a non-special vertex".into())
            }),
        ),
        ("structural properties", structural(&groups)),
    ];

    let mut failed = 0;
    for (i, (name, verdict)) in criteria.iter().enumerate() {
        match verdict {
            Ok(note) => println!("criterion {}: PASS  {name} ({note})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed in {:.1?}", criteria.len() - failed, criteria.len(), started.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
