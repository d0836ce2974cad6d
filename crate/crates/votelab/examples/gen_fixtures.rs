//! Regenerates the bundled fixture corpus under `fixtures/`.
//!
//! Run from the crate root: `cargo run -p votelab --example gen_fixtures`.
//! Every output is deterministic, and the mini-corpus manifest records the
//! expected corpus table so tests can compare exactly.

use std::fs;
use std::path::PathBuf;

use votelab::constructions::par_violation_profile;
use votelab::model::{distribution_from_pairs, PreferenceModel};
use votelab::preflib::{evaluate_corpus, PreflibRecord};
use votelab::sampling::{sample_profile, EstimatedAxiom, SamplerPlan};
use votelab::{ratio, Profile, Ranking, RuleSpec, TieBreakOrder};

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn model_from_table(m: usize, table: &[(&[u8], (i64, i64))]) -> PreferenceModel {
    let pairs: Vec<(&[u8], votelab::Rat)> = table
        .iter()
        .map(|(o, (p, q))| (*o, ratio(*p, *q)))
        .collect();
    let d = distribution_from_pairs(m, &pairs).unwrap();
    PreferenceModel::new(m, vec![d]).unwrap()
}

fn write_soc(dir: &std::path::Path, name: &str, title: &str, profile: &Profile) {
    let record = PreflibRecord {
        source: None,
        title: title.to_string(),
        m: profile.m(),
        voters: {
            let t = profile.total();
            t.numer().to_string().parse().unwrap()
        },
        profile: profile.clone(),
        alternatives: (1..=profile.m() as u64)
            .map(|i| (i, format!("alternative {i}")))
            .collect(),
    };
    fs::write(dir.join(name), votelab::preflib::to_soc(&record)).unwrap();
}

fn main() {
    let root = fixture_dir();
    let models = root.join("models");
    let corpus = root.join("minicorpus");
    fs::create_dir_all(&models).unwrap();
    fs::create_dir_all(&corpus).unwrap();

    // ---- preference models -------------------------------------------------
    let ic3 = PreferenceModel::impartial_culture(3);
    fs::write(models.join("ic3.json"), ic3.to_json()).unwrap();
    let ic4 = PreferenceModel::impartial_culture(4);
    fs::write(models.join("ic4.json"), ic4.to_json()).unwrap();

    // As printed in the source table; its majority structure is inconsistent
    // with the claims made about it, so it is kept only as a flagged fixture.
    let pi1_printed = model_from_table(
        3,
        &[
            (&[1, 2, 3], (1, 4)),
            (&[1, 3, 2], (1, 4)),
            (&[2, 3, 1], (1, 8)),
            (&[3, 2, 1], (1, 8)),
            (&[2, 1, 3], (1, 8)),
            (&[3, 1, 2], (1, 8)),
        ],
    );
    let mut pi1_json: serde_json::Value =
        serde_json::from_str(&pi1_printed.to_json()).unwrap();
    pi1_json["note"] = serde_json::json!(
        "printed table values; the majority structure here has a Condorcet \
         winner, so claims that rely on two almost-Condorcet winners do not \
         hold at this point -- see acw_plurality.json for the working fixture"
    );
    fs::write(
        models.join("pi1_printed.json"),
        serde_json::to_string_pretty(&pi1_json).unwrap(),
    )
    .unwrap();

    let pi2 = model_from_table(
        3,
        &[
            (&[1, 2, 3], (1, 8)),
            (&[1, 3, 2], (1, 8)),
            (&[2, 3, 1], (3, 8)),
            (&[3, 2, 1], (1, 8)),
            (&[2, 1, 3], (1, 8)),
            (&[3, 1, 2], (1, 8)),
        ],
    );
    fs::write(models.join("pi2.json"), pi2.to_json()).unwrap();

    // Derived fixture with ACW = {2,3} and plurality winner {1}: the
    // unlikely-case (even) / very-unlikely-case (odd) point.
    let acw = model_from_table(
        3,
        &[
            (&[1, 2, 3], (3, 16)),
            (&[1, 3, 2], (3, 16)),
            (&[2, 3, 1], (4, 16)),
            (&[3, 2, 1], (4, 16)),
            (&[2, 1, 3], (1, 16)),
            (&[3, 1, 2], (1, 16)),
        ],
    );
    fs::write(models.join("acw_plurality.json"), acw.to_json()).unwrap();

    // Derived strictly positive point whose Condorcet winner loses plurality.
    let vu = model_from_table(
        3,
        &[
            (&[1, 2, 3], (62, 140)),
            (&[1, 3, 2], (2, 140)),
            (&[2, 1, 3], (2, 140)),
            (&[2, 3, 1], (42, 140)),
            (&[3, 1, 2], (2, 140)),
            (&[3, 2, 1], (30, 140)),
        ],
    );
    fs::write(models.join("vu_plurality.json"), vu.to_json()).unwrap();

    // ---- mini corpus -------------------------------------------------------
    let r = |o: &[u8]| Ranking::new(o.to_vec()).unwrap();
    let t4 = TieBreakOrder::identity(4);

    // 1: unanimous
    let mut p = Profile::new(3);
    p.add_int(r(&[1, 2, 3]), 4).unwrap();
    write_soc(&corpus, "01_unanimous.soc", "unanimous", &p);

    // 2: Condorcet winner 2 beaten by the plurality leader
    let mut p = Profile::new(3);
    p.add_int(r(&[1, 2, 3]), 6).unwrap();
    p.add_int(r(&[2, 3, 1]), 4).unwrap();
    p.add_int(r(&[3, 2, 1]), 4).unwrap();
    write_soc(&corpus, "02_plurality_cc.soc", "plurality misses the CW", &p);

    // 3: perfect cycle
    let mut p = Profile::new(3);
    p.add_int(r(&[1, 2, 3]), 3).unwrap();
    p.add_int(r(&[2, 3, 1]), 3).unwrap();
    p.add_int(r(&[3, 1, 2]), 3).unwrap();
    write_soc(&corpus, "03_cycle.soc", "majority cycle", &p);

    // 4: veto misses the Condorcet winner
    let veto = votelab::constructions::cw_scoring_gap_profile(&[1, 1, 0], 3, 74, 1, 2).unwrap();
    write_soc(&corpus, "04_veto_cc.soc", "veto misses the CW", &veto);

    // 5: STV eliminates the Condorcet winner first
    let mut p = Profile::new(3);
    p.add_int(r(&[1, 2, 3]), 4).unwrap();
    p.add_int(r(&[3, 2, 1]), 5).unwrap();
    p.add_int(r(&[2, 1, 3]), 3).unwrap();
    write_soc(&corpus, "05_stv_cc.soc", "stv drops the CW", &p);

    // 6: Copeland(1/2) participation violation
    let (p, _) =
        par_violation_profile(&RuleSpec::Copeland(ratio(1, 2)), 4, 22, &t4).unwrap();
    write_soc(&corpus, "06_copeland_par.soc", "copeland no-show", &p);

    // 7: STV participation violation
    let n_stv = votelab::constructions::par_violation_min_n(&RuleSpec::Stv, 4, true).unwrap();
    let (p, _) = par_violation_profile(&RuleSpec::Stv, 4, n_stv, &t4).unwrap();
    write_soc(&corpus, "07_stv_par.soc", "stv no-show", &p);

    // 8: Black participation violation
    let n_black = votelab::constructions::par_violation_min_n(&RuleSpec::Black, 4, true).unwrap();
    let (p, _) = par_violation_profile(&RuleSpec::Black, 4, n_black, &t4).unwrap();
    write_soc(&corpus, "08_black_par.soc", "black no-show", &p);

    // 9 and 10: seeded impartial-culture draws
    let plan = SamplerPlan::impartial_culture(4, 25, 2024, 2);
    write_soc(
        &corpus,
        "09_random_m4.soc",
        "seeded draw m=4",
        &sample_profile(&plan, 0).unwrap(),
    );
    let plan = SamplerPlan::impartial_culture(5, 40, 2025, 1);
    write_soc(
        &corpus,
        "10_random_m5.soc",
        "seeded draw m=5",
        &sample_profile(&plan, 0).unwrap(),
    );

    // ---- profile fixtures --------------------------------------------------
    let profiles = root.join("profiles");
    fs::create_dir_all(&profiles).unwrap();
    // As printed, the fourteen-vote example elects its own Condorcet winner
    // under plurality, contradicting the claim made about it; the corrected
    // variant swaps the third block so the plurality winner differs.
    let mut printed = Profile::new(3);
    printed.add_int(r(&[1, 2, 3]), 6).unwrap();
    printed.add_int(r(&[2, 3, 1]), 4).unwrap();
    printed.add_int(r(&[2, 1, 3]), 4).unwrap();
    fs::write(
        profiles.join("p14_printed.txt"),
        format!(
            "# fourteen-vote example as printed (flagged): the Condorcet winner\n             # is also the plurality winner here, so it shows no violation\n{}",
            printed.to_text()
        ),
    )
    .unwrap();
    let mut corrected = Profile::new(3);
    corrected.add_int(r(&[1, 2, 3]), 6).unwrap();
    corrected.add_int(r(&[2, 3, 1]), 4).unwrap();
    corrected.add_int(r(&[3, 2, 1]), 4).unwrap();
    fs::write(
        profiles.join("p14_corrected.txt"),
        format!(
            "# corrected fourteen-vote example: Condorcet winner 2, plurality\n             # winner 1\n{}",
            corrected.to_text()
        ),
    )
    .unwrap();

    // ---- participation-violation fixtures -----------------------------------
    let violations = root.join("violations");
    fs::create_dir_all(&violations).unwrap();
    let mut entries = Vec::new();
    for family in [
        RuleSpec::Maximin,
        RuleSpec::RankedPairs,
        RuleSpec::Schulze,
        RuleSpec::Copeland(ratio(1, 2)),
        RuleSpec::Copeland(votelab::rat(0)),
        RuleSpec::Stv,
        RuleSpec::Black,
    ] {
        let m = 4;
        let n = votelab::constructions::par_violation_min_n(&family, m, false).unwrap();
        let (profile, witness) = par_violation_profile(&family, m, n, &t4).unwrap();
        let before = family.resolve(&profile, &t4).unwrap();
        let after = family
            .resolve(&profile.remove_one(&witness).unwrap(), &t4)
            .unwrap();
        let name = format!(
            "{}_m{m}_n{n}.txt",
            family.to_string().replace([':', '/'], "_")
        );
        fs::write(
            violations.join(&name),
            format!(
                "# participation violation fixture\n# family: {family}\n# m: {m}\n# n: {n}\n# witness: {witness}\n# winner_with_vote: {before}\n# winner_without_vote: {after}\n{}",
                profile.to_text()
            ),
        )
        .unwrap();
        entries.push(serde_json::json!({
            "file": name,
            "family": family.to_string(),
            "m": m,
            "n": n,
            "witness": witness.to_string(),
            "winner_with_vote": before,
            "winner_without_vote": after,
        }));
    }
    fs::write(
        violations.join("manifest.json"),
        serde_json::to_string_pretty(&serde_json::json!({ "fixtures": entries })).unwrap(),
    )
    .unwrap();

    // ---- manifest ----------------------------------------------------------
    let rules = vec![
        RuleSpec::Plurality,
        RuleSpec::Borda,
        RuleSpec::Veto,
        RuleSpec::Stv,
        RuleSpec::Black,
        RuleSpec::Maximin,
        RuleSpec::Schulze,
        RuleSpec::RankedPairs,
        RuleSpec::Copeland(ratio(1, 2)),
    ];
    let axioms = vec![
        EstimatedAxiom::CondorcetCriterion,
        EstimatedAxiom::Participation,
    ];
    let tie = TieBreakOrder::identity(1);
    let report = evaluate_corpus(&corpus, &rules, &axioms, &tie, 8).unwrap();
    assert!(report.failures.is_empty());
    let manifest = serde_json::json!({
        "rules": rules.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "axioms": axioms.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
        "tiebreak": "identity",
        "put_bound": 8,
        "files": report.files.iter()
            .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
            .collect::<Vec<_>>(),
        "rows": report.rows.iter().map(|row| serde_json::json!({
            "rule": row.rule,
            "axiom": row.axiom.to_string(),
            "satisfied": row.satisfied,
            "evaluated": row.evaluated,
            "skipped": row.skipped,
            "percent": row.percent(),
        })).collect::<Vec<_>>(),
        "audit": report.audit,
    });
    fs::write(
        corpus.join("manifest.json"),
        serde_json::to_string_pretty(&manifest).unwrap(),
    )
    .unwrap();
    println!("fixtures written under {}", root.display());
}
