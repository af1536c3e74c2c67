//! File-format round trips, validation errors, job execution and report
//! determinism.

use nangulate::format::{
    parse_category_file, selector_for, serialize_category, validate_parsed, ClassSelector,
};
use nangulate::jobs::{exit_code, render_report, run_job, JobConfig, Task};
use nangulate::report::{Budget, Verdict};

fn budget() -> Budget {
    Budget { cap_objects: 2, cap_solutions: 256, cap_instances: 40, exhaustive: false }
}

const DUAL_NUMBERS: &str = "\
field p=2 n=4
gen P
hom P P dim=2 basis=id_P x
comp x x = 0
angles wrap-exact
";

const TWO_SIMPLES_SWAP: &str = "\
field p=2 n=4
gen s
gen t
hom s s dim=1 basis=id_s
hom t t dim=1 basis=id_t
sigma gen s -> t
sigma gen t -> s
angles split
";

#[test]
fn parse_and_validate_the_sample_files() {
    for text in [DUAL_NUMBERS, TWO_SIMPLES_SWAP] {
        let parsed = parse_category_file(text).unwrap();
        let (st, class) = validate_parsed(&parsed, &budget()).unwrap();
        assert!(st.n == 4);
        assert!(!class.name().is_empty());
    }
}

#[test]
fn serialize_parse_round_trip_is_identity_on_canonical_files() {
    for text in [DUAL_NUMBERS, TWO_SIMPLES_SWAP] {
        let parsed = parse_category_file(text).unwrap();
        let st = parsed.structure();
        let canonical = serialize_category(&st, &parsed.selector);
        let reparsed = parse_category_file(&canonical).unwrap();
        let again = serialize_category(&reparsed.structure(), &reparsed.selector);
        assert_eq!(canonical, again);
        // and the parsed data agrees
        assert_eq!(parsed.p, reparsed.p);
        assert_eq!(parsed.n, reparsed.n);
        for g in 0..parsed.cat.gen_count() {
            for h in 0..parsed.cat.gen_count() {
                assert_eq!(parsed.cat.hom_dim(g, h), reparsed.cat.hom_dim(g, h));
            }
        }
    }
}

#[test]
fn corpus_exports_round_trip() {
    for entry in nangulate::corpus::default_entries(4) {
        let selector = selector_for(entry.class.as_ref(), &entry.structure, &budget());
        let text = serialize_category(&entry.structure, &selector);
        let parsed = parse_category_file(&text).unwrap();
        let (st, _) = validate_parsed(&parsed, &budget()).unwrap();
        assert_eq!(st.cat.gen_count(), entry.structure.cat.gen_count());
        let again = serialize_category(&st, &parsed.selector);
        assert_eq!(text, again);
    }
}

#[test]
fn enumerated_class_files_round_trip() {
    // export the one-generator split class as an explicit list
    let entry = nangulate::corpus::split_structure(2, 1, &[0], 4).unwrap();
    let small = Budget { cap_objects: 1, cap_solutions: 64, cap_instances: 6, exhaustive: false };
    let (members, _) = entry.class.enumerate(&entry.structure, &small);
    let raw: Vec<_> = members
        .iter()
        .map(|m| nangulate::format::sequence_to_raw(&entry.structure, m))
        .collect();
    let text = serialize_category(&entry.structure, &ClassSelector::List(raw));
    let parsed = parse_category_file(&text).unwrap();
    let (st, class) = validate_parsed(&parsed, &budget()).unwrap();
    let (listed, _) = class.enumerate(&st, &budget());
    assert_eq!(listed.len(), members.len());
}

#[test]
fn parse_errors_carry_positions_and_laws() {
    // unknown directive with its line number
    let err = parse_category_file("field p=2 n=4\nbogus line\n").unwrap_err().to_string();
    assert!(err.contains("line 2"), "{}", err);
    // missing modulus
    let err = parse_category_file("gen P\nangles split\n").unwrap_err().to_string();
    assert!(err.contains("missing field"), "{}", err);
    // a contradiction with the unit law is caught and named
    let bad_unit = "\
field p=2 n=4
gen P
hom P P dim=2 basis=id_P x
comp id_P x = 0
angles wrap-exact
";
    let err = parse_category_file(bad_unit).unwrap_err().to_string();
    assert!(err.contains("associativity/unit"), "{}", err);
    // an associativity contradiction names the basis triple
    let bad_assoc = "\
field p=2 n=4
gen Q
hom Q Q dim=3 basis=id_Q a b
comp a a = b
comp a b = id_Q
angles wrap-exact
";
    let err = parse_category_file(bad_assoc).unwrap_err().to_string();
    assert!(err.contains("associativity"), "{}", err);
    assert!(err.contains('a'), "{}", err);
    // the empty generator list is a valid zero category
    let zero = parse_category_file("field p=2 n=4\nangles split\n").unwrap();
    assert_eq!(zero.cat.gen_count(), 0);
}

#[test]
fn jobs_run_with_exit_codes_and_deterministic_reports() {
    let dir = std::env::temp_dir().join("nangulate-test-jobs");
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("split.cat");
    let entry = nangulate::corpus::split_structure(2, 1, &[0], 4).unwrap();
    let text = serialize_category(&entry.structure, &ClassSelector::Split);
    std::fs::write(&input, text).unwrap();

    let config = JobConfig {
        input: input.clone(),
        task: Task::CheckAxioms,
        n: None,
        budget: Budget { cap_objects: 2, cap_solutions: 512, cap_instances: 64, exhaustive: false },
        seed: 11,
        output: None,
        z: None,
        d: None,
        witness: None,
    };
    let report = run_job(&config).unwrap();
    assert_eq!(report.overall, Verdict::Pass);
    assert_eq!(exit_code(report.overall), 0);
    assert_eq!(report.seed, 11);
    // determinism: identical configuration gives byte-identical reports
    let report2 = run_job(&config).unwrap();
    assert_eq!(render_report(&report), render_report(&report2));

    // subcategory guard: D not inside Z is an input error (exit 3)
    let bad = JobConfig {
        z: Some(vec![]),
        d: Some(vec!["s0".into()]),
        task: Task::VerifyTheorem,
        ..config.clone()
    };
    let err = run_job(&bad).unwrap_err().to_string();
    assert!(err.contains("subset"), "{}", err);

    // verify-theorem on the degenerate pair passes
    let theorem = JobConfig { task: Task::VerifyTheorem, ..config.clone() };
    let report = run_job(&theorem).unwrap();
    assert_eq!(report.overall, Verdict::Pass, "{:?}", report.checks);

    // a corrupted witness file fails with a replayable report (exit 1)
    let full = nangulate::addcat::Subcategory::full(&entry.structure.cat);
    let (witness, _) = nangulate::mutation::validate_mutation_pair(
        &entry.structure,
        entry.class.as_ref(),
        &full,
        &full,
        &theorem.budget,
    );
    let mut witness = witness.unwrap();
    let angle = &mut witness.forward[0].angle;
    let dom = angle.maps[0].dom().clone();
    let cod = angle.maps[0].cod().clone();
    let mut flat = angle.maps[0].to_flat();
    flat[0] ^= 1;
    angle.maps[0] = nangulate::Morphism::from_flat(&entry.structure.cat, &dom, &cod, &flat);
    let wpath = dir.join("witness.json");
    std::fs::write(&wpath, serde_json::to_string(&witness).unwrap()).unwrap();
    let replay = JobConfig {
        task: Task::VerifyTheorem,
        d: Some(vec!["s0".into()]),
        z: Some(vec!["s0".into()]),
        witness: Some(wpath),
        ..config.clone()
    };
    let report = run_job(&replay).unwrap();
    assert_eq!(report.overall, Verdict::Fail);
    assert_eq!(exit_code(report.overall), 1);
}

#[test]
fn validate_category_task_reports_the_screen() {
    let dir = std::env::temp_dir().join("nangulate-test-validate");
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("dual.cat");
    std::fs::write(&input, DUAL_NUMBERS).unwrap();
    let config = JobConfig {
        input,
        task: Task::ValidateCategory,
        n: None,
        budget: budget(),
        seed: 0,
        output: None,
        z: None,
        d: None,
        witness: None,
    };
    let report = run_job(&config).unwrap();
    assert_eq!(report.overall, Verdict::Pass);
    assert!(report.checks.iter().any(|c| c.name.contains("hom-exact")));
}
