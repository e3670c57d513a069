//! Acceptance gate: twelve end-to-end criteria, each reported on its own
//! pass/fail line with the measured wall time against the expected budget.
//! A failing line means the corresponding identity genuinely fails as
//! computed (the module notes document each known discrepancy); nothing is
//! weakened to force a pass.

use std::time::Instant;

use rttk_core::qloop;
use rttk_core::report::{Status, SuiteOutcome};
use rttk_core::suites::{self, Bounds, Mode, SuiteConfig};
use rttk_core::superlinalg::SuperSpace;
use rttk_core::KernelError;

const SHALLOW: Bounds = Bounds {
    loop_degree: 1,
    level: 2,
    word_length: 2,
    gamma_depth: 2,
};

fn bounds(loop_degree: i32, level: i32, word_length: usize, gamma_depth: i32) -> Bounds {
    Bounds {
        loop_degree,
        level,
        word_length,
        gamma_depth,
    }
}

/// Run one registered suite and fold its outcome into the aggregate,
/// prefixing the context so witnesses stay attributable.
fn fold(
    agg: &mut SuiteOutcome,
    name: &str,
    cfg: &SuiteConfig,
    label: &str,
) -> Result<(), KernelError> {
    let def = suites::find(name).expect("registered suite");
    let outcome = def.run(cfg, Mode::Honest)?;
    if outcome.status != Status::Pass {
        agg.status = Status::Fail;
    }
    for mut w in outcome.witnesses {
        w.location = format!("{label}: {}", w.location);
        agg.witnesses.push(w);
    }
    for n in outcome.notes {
        agg.notes.push(format!("{label}: {n}"));
    }
    Ok(())
}

struct Gate {
    failures: Vec<String>,
}

impl Gate {
    fn criterion(
        &mut self,
        number: u32,
        title: &str,
        budget_secs: u64,
        body: impl FnOnce() -> Result<SuiteOutcome, KernelError>,
    ) {
        let start = Instant::now();
        let result = body();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(out) if out.status == Status::Pass => {
                println!(
                    "criterion {number:>2} ({title}): pass  [{secs:.1} s, budget {budget_secs} s]"
                );
                for n in &out.notes {
                    println!("    note: {n}");
                }
            }
            Ok(out) => {
                println!(
                    "criterion {number:>2} ({title}): FAIL  [{secs:.1} s, budget {budget_secs} s]"
                );
                for w in out.witnesses.iter().take(4) {
                    println!("    witness: {} -- {}", w.location, w.detail);
                }
                for n in &out.notes {
                    println!("    note: {n}");
                }
                self.failures.push(format!("criterion {number} ({title})"));
            }
            Err(e) => {
                println!(
                    "criterion {number:>2} ({title}): ERROR {e}  [{secs:.1} s, budget {budget_secs} s]"
                );
                self.failures.push(format!("criterion {number} ({title}): {e}"));
            }
        }
        if secs > budget_secs as f64 {
            println!("    note: over the expected budget on this host");
        }
    }
}

#[test]
fn acceptance() {
    let mut gate = Gate { failures: Vec::new() };

    gate.criterion(1, "Yang-Baxter equations", 30, || {
        let mut agg = SuiteOutcome::pass();
        for m in 0..=4usize {
            for nn in 0..=(4 - m) {
                if m + nn == 0 {
                    continue;
                }
                let cfg = SuiteConfig::untwisted(m, nn, SHALLOW);
                fold(&mut agg, "qybe", &cfg, &format!("({m}|{nn})"))?;
            }
        }
        Ok(agg)
    });

    gate.criterion(2, "R-matrix identities", 10, || {
        let mut agg = SuiteOutcome::pass();
        for m in 0..=4usize {
            for n in 0..=((4 - m) / 2) {
                if m + 2 * n == 0 {
                    continue;
                }
                let cfg = SuiteConfig::twisted(m, n, SHALLOW);
                fold(&mut agg, "r-identities", &cfg, &format!("({m}, n={n})"))?;
            }
        }
        Ok(agg)
    });

    gate.criterion(3, "Yangian RTT equivalence", 120, || {
        let mut agg = SuiteOutcome::pass();
        for (m, nn) in [(1usize, 1usize), (2, 1)] {
            let cfg = SuiteConfig::untwisted(m, nn, bounds(1, 4, 2, 2));
            fold(&mut agg, "yangian-rtt", &cfg, &format!("({m}|{nn})"))?;
        }
        Ok(agg)
    });

    gate.criterion(4, "Yangian PBW", 120, || {
        let mut agg = SuiteOutcome::pass();
        let cfg = SuiteConfig::untwisted(1, 1, bounds(1, 3, 2, 2));
        fold(&mut agg, "yangian-pbw", &cfg, "(1|1)")?;
        Ok(agg)
    });

    gate.criterion(5, "Hopf structure", 120, || {
        let mut agg = SuiteOutcome::pass();
        let cfg = SuiteConfig::untwisted(1, 1, bounds(1, 2, 2, 2));
        fold(&mut agg, "yangian-hopf", &cfg, "(1|1)")?;
        Ok(agg)
    });

    gate.criterion(6, "twisted super Yangian", 180, || {
        let mut agg = SuiteOutcome::pass();
        let cfg = SuiteConfig::twisted(1, 1, bounds(1, 2, 2, 2));
        fold(&mut agg, "twisted-yangian", &cfg, "(1|2)")?;
        Ok(agg)
    });

    gate.criterion(7, "twisted quantum loop", 300, || {
        let mut agg = SuiteOutcome::pass();
        let cfg = SuiteConfig::twisted(1, 1, bounds(1, 2, 2, 2));
        fold(&mut agg, "twisted-qloop", &cfg, "(1|2)")?;
        // closed-sum agreement additionally at (2|2), degree <= 2
        let mut alg = qloop::build_qloop(SuperSpace::new(2, 2), 2, 2)?;
        let tq = qloop::build_twisted_qloop(&mut alg)?;
        let bad = qloop::utw1_mismatches(&tq, true);
        if !bad.is_empty() {
            agg.status = Status::Fail;
            agg.witnesses.push(rttk_core::report::Witness::new(
                "(2|2): closed sum form",
                format!("{} mismatching entries", bad.len()),
            ));
        }
        Ok(agg)
    });

    gate.criterion(8, "twisted PBW", 300, || {
        let mut agg = SuiteOutcome::pass();
        let cfg = SuiteConfig::twisted(1, 1, bounds(1, 2, 4, 2));
        fold(&mut agg, "pbw-twisted-dimension", &cfg, "(1|2)")?;
        Ok(agg)
    });

    gate.criterion(9, "classical limit and integral form", 120, || {
        let mut agg = SuiteOutcome::pass();
        for (m, nn) in [(1usize, 1usize), (1, 2)] {
            let cfg = SuiteConfig::untwisted(m, nn, SHALLOW);
            fold(&mut agg, "psi-prime-vanishing", &cfg, &format!("({m}|{nn})"))?;
        }
        let cfg = SuiteConfig::twisted(1, 1, SHALLOW);
        fold(&mut agg, "unique1", &cfg, "(1|2)")?;
        Ok(agg)
    });

    gate.criterion(10, "graded limits", 600, || {
        let mut agg = SuiteOutcome::pass();
        let deep = bounds(1, 2, 2, 3);
        fold(
            &mut agg,
            "binomial-identities",
            &SuiteConfig::untwisted(1, 1, deep),
            "(1|1)",
        )?;
        for (m, nn) in [(1usize, 1usize), (1, 2)] {
            let cfg = SuiteConfig::untwisted(m, nn, SHALLOW);
            fold(&mut agg, "main1-graded-limit", &cfg, &format!("({m}|{nn})"))?;
        }
        let tw = SuiteConfig::twisted(1, 1, SHALLOW);
        fold(&mut agg, "lm3", &tw, "(1|2)")?;
        fold(&mut agg, "embedding", &tw, "(1|2)")?;
        fold(&mut agg, "main2-diagram", &tw, "(1|2)")?;
        Ok(agg)
    });

    gate.criterion(11, "orthosymplectic involution", 30, || {
        let mut agg = SuiteOutcome::pass();
        for m in 0..=5usize {
            for n in 0..=((5 - m) / 2) {
                if m + 2 * n == 0 {
                    continue;
                }
                let cfg = SuiteConfig::twisted(m, n, SHALLOW);
                fold(&mut agg, "osp-involution", &cfg, &format!("({m}, n={n})"))?;
            }
        }
        Ok(agg)
    });

    gate.criterion(12, "negative controls", 120, || {
        let mut agg = SuiteOutcome::pass();
        // suites that need the bar involution get the twisted (1|2)
        // configuration; the rest run on the cheaper (1|1)
        let twisted_only = [
            "r-identities",
            "twisted-yangian",
            "twisted-qloop",
            "pbw-twisted-dimension",
            "unique1",
            "lm3",
            "embedding",
            "main2-diagram",
            "osp-involution",
        ];
        for def in suites::registry() {
            let cfg = if twisted_only.contains(&def.name) {
                SuiteConfig::twisted(1, 1, SHALLOW)
            } else {
                SuiteConfig::untwisted(1, 1, SHALLOW)
            };
            let out = def.run(&cfg, Mode::Mutated)?;
            if out.status != Status::Fail || out.witnesses.is_empty() {
                agg.status = Status::Fail;
                agg.witnesses.push(rttk_core::report::Witness::new(
                    format!("negative control '{}'", def.name),
                    format!(
                        "mutation '{}' did not produce a failing witness",
                        def.mutation
                    ),
                ));
            }
        }
        Ok(agg)
    });

    assert!(
        gate.failures.is_empty(),
        "acceptance criteria failed: {:?}",
        gate.failures
    );
}
