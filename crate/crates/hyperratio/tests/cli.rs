//! End-to-end tests of the command-line binary: exit-code contract
//! (0 verified / 1 certified violation / 2 bad input / 3 precision
//! exhausted), frozen output values, format switches, environment-variable
//! precedence, and byte-level determinism.

use std::process::Command;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run_with_env(args: &[&str], envs: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hyperratio"));
    // Hermetic by default: the suite controls the precision variable.
    cmd.env_remove("HYPERRATIO_PRECISION_BITS");
    for (key, value) in envs {
        cmd.env(key, value);
    }
    let out = cmd.args(args).output().expect("binary must launch");
    Run {
        code: out.status.code().expect("binary must exit normally"),
        stdout: String::from_utf8(out.stdout).expect("stdout must be UTF-8"),
        stderr: String::from_utf8(out.stderr).expect("stderr must be UTF-8"),
    }
}

fn run(args: &[&str]) -> Run {
    run_with_env(args, &[])
}

fn assert_contains(haystack: &str, needle: &str) {
    assert!(
        haystack.contains(needle),
        "expected output to contain {needle:?}, got:\n{haystack}"
    );
}

// ---------------------------------------------------------------- exit 0 --

#[test]
fn eval_1f1_prints_frozen_enclosure() {
    let r = run(&["eval", "1f1", "--a", "1", "--b", "2", "--x", "1"]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    assert_contains(&r.stdout, "value = 1.71828182845904523536028747135\n");
    assert_contains(&r.stdout, "terms_used = 28\n");
}

#[test]
fn eval_pfq_with_empty_lower_list_at_zero_is_exact_one() {
    let r = run(&["eval", "pfq", "--a", "1", "--b", "", "--x", "0"]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    assert_eq!(r.stdout, "value = 1\nerror_radius = 0\nterms_used = 1\n");
}

#[test]
fn eval_remainder_prints_frozen_enclosure() {
    let r = run(&["eval", "remainder", "--n", "1", "--x", "1"]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    assert_contains(&r.stdout, "value = 0.718281828459045235360287471353\n");
}

#[test]
fn sections_table_has_exact_and_enclosed_columns() {
    let r = run(&["sections", "--n", "1", "--grid", "0:10:11"]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(lines[0], "x\tS_1\tR_1\tf_1");
    assert_eq!(lines.len(), 12, "header plus one row per grid point");
    // x = 0: S_1 = 1 and R_1 = 0 exactly; the ratio is exactly 2/3.
    assert_eq!(lines[1], "0\t1\t0\t0.666666666666666666666666666667");
    // x = 1: the ratio of adjacent remainders, frozen at 30 digits.
    assert_contains(lines[2], "\t0.726979595168962437965990370289");
}

#[test]
fn theta_range_prints_frozen_values_in_bounds() {
    let r = run(&["theta", "--n", "1..2"]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    assert_contains(
        &r.stdout,
        "n = 1: theta = 0.359140914229522617680143735676, error_radius = \
         5.84998942112031619896605179797e-32, in_bounds = true\n",
    );
    assert_contains(&r.stdout, "n = 2: theta = 0.347264024732662556807606865143");
    assert_contains(&r.stdout, "all_in_bounds = true\n");
}

#[test]
fn verify_adjacent_remainder_ratio_passes_with_bounds() {
    let r = run(&[
        "verify", "--target", "f", "--n", "3", "--grid", "0:100:129", "--format", "plain",
    ]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    assert_contains(&r.stdout, "verdict = certified-nondecreasing\n");
    assert_contains(&r.stdout, "lower_bound = 0.8, holds = true");
    assert_contains(&r.stdout, "upper_bound = 1, holds = true");
    assert_contains(&r.stdout, "RESULT: verified\n");
}

#[test]
fn verify_zero_shift_target_is_constant_one() {
    let r = run(&[
        "verify", "--target", "h", "--a", "1", "--b", "3", "--c", "0", "--grid", "0:10:11",
        "--format", "plain",
    ]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    assert_contains(&r.stdout, "turan_min = 0\n");
    assert_contains(&r.stdout, "turan_holds = true\n");
    assert_contains(&r.stdout, "RESULT: verified\n");
}

#[test]
fn verify_vector_target_forced_past_failed_clause_passes() {
    let r = run(&[
        "verify", "--target", "hpq", "--a", "1,1", "--b", "2", "--c", "1", "--x-max", "0.99",
        "--force", "--format", "plain",
    ]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    assert_contains(&r.stdout, "a_2 > b_1: FAIL\n");
    assert_contains(&r.stdout, "all_satisfied = false\n");
    assert_contains(&r.stdout, "RESULT: verified\n");
}

#[test]
fn certify_unit_shift_forced_is_strict() {
    let r = run(&[
        "certify", "--a", "1", "--b", "2", "--c", "1", "--N", "64", "--force", "--format",
        "plain",
    ]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    assert_contains(&r.stdout, "a < b - c: FAIL\n");
    assert_contains(&r.stdout, "forced = true\n");
    assert_contains(
        &r.stdout,
        "coefficient_ratio: direction = nondecreasing, holds = true, strict = true\n",
    );
    assert_contains(&r.stdout, "weight_rows: count = 65, all hold\n");
    assert_contains(&r.stdout, "holds = true\nstrict = true\nRESULT: certified\n");
}

#[test]
fn certify_zero_shift_holds_without_strictness() {
    let r = run(&[
        "certify", "--a", "1", "--b", "2", "--c", "0", "--N", "16", "--format", "plain",
    ]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    assert_contains(&r.stdout, "all_satisfied = true\n");
    assert_contains(
        &r.stdout,
        "coefficient_ratio: direction = constant, holds = true, strict = false\n",
    );
    assert_contains(&r.stdout, "holds = true\nstrict = false\nRESULT: certified\n");
}

#[test]
fn certify_vector_shift_holds() {
    let r = run(&[
        "certify", "--a", "1", "--b", "2,3", "--c", "1,1", "--N", "32", "--format", "plain",
    ]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    assert_contains(&r.stdout, "weight_rows: count = 33, all hold\n");
    assert_contains(&r.stdout, "holds = true\nstrict = true\nRESULT: certified\n");
}

/// A sign-varying shift certifies with every weight row nonincreasing, so the
/// composite certificate holds while the strict nondecreasing chain does not.
#[test]
fn certify_sign_varying_shift_forced_holds_nonstrictly() {
    let r = run(&[
        "certify", "--a", "1", "--b", "1/2", "--c", "1", "--N", "8", "--force", "--format",
        "plain",
    ]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    assert_contains(
        &r.stdout,
        "coefficient_ratio: direction = nonincreasing, holds = true, strict = true\n",
    );
    assert_contains(&r.stdout, "holds = true\nstrict = false\nRESULT: certified\n");
}

#[test]
fn certify_csv_emits_exact_ratio_rows() {
    let r = run(&[
        "certify", "--a", "1", "--b", "2", "--c", "0", "--N", "4", "--format", "csv",
    ]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    assert_eq!(r.stdout, "n,coefficient_ratio\n0,1/1\n1,1/1\n2,1/1\n3,1/1\n4,1/1\n");
}

#[test]
fn exact_helper_targets_print_exact_rationals() {
    let cases: &[(&[&str], &str)] = &[
        (&["eval", "poch", "--z", "5/2", "--n", "0"], "value = 1\n"),
        (&["eval", "poch", "--z", "2", "--n", "3"], "value = 24\n"),
        (&["eval", "poch", "--z", "1", "--n", "6"], "value = 720\n"),
        (&["eval", "coeff", "--a", "1", "--b", "2", "--n", "1"], "value = 1/2\n"),
        (&["eval", "coeff", "--a", "7/2,2", "--b", "5,5", "--n", "0"], "value = 1\n"),
        (&["eval", "coeff", "--a", "1,1", "--b", "1", "--n", "2"], "value = 1\n"),
        (&["eval", "term-ratio", "--a", "1", "--b", "2", "--x", "1", "--n", "0"], "value = 1/2\n"),
        (&["eval", "term-ratio", "--a", "1,4", "--b", "7/3,2", "--x", "0", "--n", "5"], "value = 0\n"),
        (&["eval", "term-ratio", "--a", "1", "--b", "3", "--x", "2", "--n", "1"], "value = 1/2\n"),
    ];
    for (args, expected) in cases {
        let r = run(args);
        assert_eq!(r.code, 0, "args {args:?}: stderr {}", r.stderr);
        assert_eq!(&r.stdout, expected, "args {args:?}");
    }
}

#[test]
fn shifted_ratio_point_targets_evaluate() {
    let r = run(&["eval", "h", "--a", "1", "--b", "3", "--c", "1", "--x", "0"]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    assert_contains(&r.stdout, "value = 1\nerror_radius = 0\n");

    // A zero shift short-circuits to exactly one at any argument.
    let r = run(&["eval", "h", "--a", "2", "--b", "3", "--c", "0", "--x", "5"]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    assert_contains(&r.stdout, "value = 1\nerror_radius = 0\n");

    let r = run(&["eval", "hpq", "--a", "2,1", "--b", "3/2", "--c", "1/2", "--x", "1/2"]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    assert_contains(&r.stdout, "value = 1.21047171444593927409674458374\n");
}

#[test]
fn ebounds_prints_exact_brackets() {
    let r = run(&["ebounds", "--n", "1..2"]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    assert_eq!(
        r.stdout,
        "n = 1: lower = 8/3, upper = 3, verified = true\n\
         n = 2: lower = 22/3, upper = 8, verified = true\n\
         all_verified = true\n"
    );

    let r = run(&["ebounds", "--n", "0"]);
    assert_eq!(r.code, 2);
    assert_contains(&r.stderr, "index n must be at least 1");
}

#[test]
fn kernel_weights_and_ratios_are_exact() {
    let cases: &[(&[&str], &str)] = &[
        (&["kernel", "w", "--b", "2", "--c", "1", "--n", "2", "--k", "1"], "value = 4/3\n"),
        (&["kernel", "w", "--b", "3", "--c", "1/2", "--n", "4", "--k", "0"], "value = 640/1001\n"),
        (&["kernel", "w", "--b", "5/2", "--c", "0", "--n", "6", "--k", "3"], "value = 1\n"),
        (&["kernel", "wratio", "--b", "2", "--c", "1", "--n", "2", "--k", "0"], "value = 8/3\n"),
        (&["kernel", "wratio", "--b", "2,3", "--c", "1,1", "--n", "2", "--k", "0"], "value = 5\n"),
        (&["kernel", "wratio", "--b", "4,7/2", "--c", "0,0", "--n", "5", "--k", "2"], "value = 1\n"),
        // Closed form equals the raw weight quotient: 256/245 over 64/77.
        (&["kernel", "wratio", "--b", "3", "--c", "1/2", "--n", "4", "--k", "1"], "value = 44/35\n"),
        (&["kernel", "w", "--b", "3", "--c", "1/2", "--n", "4", "--k", "2"], "value = 256/245\n"),
        (&["kernel", "w", "--b", "3", "--c", "1/2", "--n", "4", "--k", "1"], "value = 64/77\n"),
    ];
    for (args, expected) in cases {
        let r = run(args);
        assert_eq!(r.code, 0, "args {args:?}: stderr {}", r.stderr);
        assert_eq!(&r.stdout, expected, "args {args:?}");
    }
}

#[test]
fn kernel_prefix_certifies_explicit_sequences() {
    let r = run(&["kernel", "prefix", "--num", "0,1,2,3", "--den", "1,1,1,1"]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    assert_contains(&r.stdout, "prefix_ratios = 0, 1/2, 1, 3/2\n");
    assert_contains(&r.stdout, "direction = nondecreasing\nholds = true\nstrict = true\n");

    let r = run(&["kernel", "prefix", "--num", "1,2,4", "--den", "1,2,4"]);
    assert_eq!(r.code, 0);
    assert_contains(&r.stdout, "prefix_ratios = 1, 1, 1\ndirection = constant\nholds = true\n");

    let r = run(&["kernel", "prefix", "--num", "1,1,1,1,1", "--den", "1,2,4,8,16"]);
    assert_eq!(r.code, 0);
    assert_contains(&r.stdout, "prefix_ratios = 1, 2/3, 3/7, 4/15, 5/31\n");
    assert_contains(&r.stdout, "direction = nonincreasing\nholds = true\n");

    // A rise-then-fall ratio sequence is certified non-monotone: exit 1.
    let r = run(&["kernel", "prefix", "--num", "0,3,0", "--den", "1,1,1"]);
    assert_eq!(r.code, 1);
    assert_contains(&r.stdout, "holds = false\n");
    assert_contains(&r.stdout, "violation: index = 1");
}

#[test]
fn kernel_cauchy_prints_exact_product_rows() {
    let r = run(&["kernel", "cauchy", "--c1", "1,1/2,1/6", "--c2", "1,1/2,1/6"]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    assert_eq!(r.stdout, "n = 0: 1\nn = 1: 1\nn = 2: 7/12\n");

    let r = run(&["kernel", "cauchy", "--c1", "1,1", "--c2", "1,1/3"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, "n = 0: 1\nn = 1: 4/3\n");
}

#[test]
fn verify_accepts_explicit_point_grids() {
    let r = run(&[
        "verify", "--target", "f", "--n", "1", "--grid", "0,1,2,5,10", "--format", "plain",
    ]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    assert_contains(&r.stdout, "points = 5\n");
    assert_contains(&r.stdout, "RESULT: verified\n");

    let r = run(&[
        "verify", "--target", "hpq", "--a", "1", "--b", "2", "--c", "1", "--grid",
        "0,1/4,1/2,3/4", "--format", "plain",
    ]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    assert_contains(&r.stdout, "all_satisfied = true\n");
    assert_contains(&r.stdout, "RESULT: verified\n");

    let r = run(&["verify", "--target", "g", "--n", "1", "--grid", "0,1"]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    let parsed: serde_json::Value = serde_json::from_str(&r.stdout).expect("valid JSON");
    assert_eq!(parsed["report"]["points"][1]["value"],
        serde_json::json!("1.09046939275344365694898555543"));
}

#[test]
fn digits_flag_controls_rendered_precision() {
    let r = run(&["eval", "1f1", "--a", "1", "--b", "2", "--x", "1", "--digits", "10"]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    assert_contains(&r.stdout, "value = 1.718281828\n");
}

#[test]
fn json_format_emits_parseable_report() {
    let r = run(&["verify", "--target", "g", "--n", "2", "--grid", "0:2:3"]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    let parsed: serde_json::Value = serde_json::from_str(&r.stdout).expect("valid JSON");
    assert_eq!(parsed["passed"], serde_json::json!(true));
    assert_eq!(parsed["report"]["target"], serde_json::json!("g_2"));
    assert_eq!(parsed["report"]["verdict"], serde_json::json!("certified-nondecreasing"));
    assert_eq!(parsed["report"]["turan_holds"], serde_json::json!(true));
    assert_eq!(parsed["report"]["points"].as_array().map(Vec::len), Some(3));
}

// ------------------------------------------------- environment precedence --

#[test]
fn environment_variable_sets_working_precision() {
    let default = run(&["eval", "1f1", "--a", "1", "--b", "2", "--x", "1"]);
    let coarse = run_with_env(
        &["eval", "1f1", "--a", "1", "--b", "2", "--x", "1"],
        &[("HYPERRATIO_PRECISION_BITS", "64")],
    );
    assert_eq!(coarse.code, 0, "stderr: {}", coarse.stderr);
    assert_ne!(coarse.stdout, default.stdout, "64-bit run must differ from 128-bit run");

    // An explicit flag takes precedence over the environment.
    let flagged = run_with_env(
        &["eval", "1f1", "--a", "1", "--b", "2", "--x", "1", "--precision-bits", "128"],
        &[("HYPERRATIO_PRECISION_BITS", "64")],
    );
    assert_eq!(flagged.stdout, default.stdout);
}

// ---------------------------------------------------------------- exit 1 --

#[test]
fn theta_literal_remainder_fails_bounds_with_warning() {
    let r = run(&["theta", "--n", "1", "--literal-remainder"]);
    assert_eq!(r.code, 1);
    assert_contains(&r.stderr, "warning:");
    assert_contains(&r.stdout, "theta = -0.359140914229522617680143735676");
    assert_contains(&r.stdout, "in_bounds = false\n");
    assert_contains(&r.stdout, "all_in_bounds = false\n");
}

#[test]
fn certify_mixed_shift_reports_failing_weight_row() {
    let r = run(&[
        "certify", "--a", "1", "--b", "3/2,10", "--c", "1/2,-7/4", "--N", "8", "--format",
        "plain",
    ]);
    assert_eq!(r.code, 1, "stderr: {}", r.stderr);
    assert_contains(&r.stdout, "all_satisfied = true\n");
    assert_contains(&r.stdout, "forced = false\n");
    assert_contains(&r.stdout, "weight_rows: count = 9, first failing row = 5\n");
    assert_contains(&r.stdout, "holds = false\nstrict = false\nRESULT: NOT CERTIFIED\n");
}

/// The grid checker certifies a genuine decrease of the shifted ratio for
/// parameters that satisfy every hypothesis clause, while the Turán floor
/// still holds; the run exits 1 and reports both facts.
#[test]
fn verify_certifies_decrease_for_admissible_parameters() {
    let r = run(&[
        "verify", "--target", "h", "--a", "1/8", "--b", "9/4", "--c", "1/4", "--grid",
        "9:10:9", "--format", "plain",
    ]);
    assert_eq!(r.code, 1, "stderr: {}", r.stderr);
    assert_contains(&r.stdout, "all_satisfied = true\n");
    assert_contains(&r.stdout, "verdict = certified-decrease\n");
    assert_contains(&r.stdout, "nondecreasing = false\n");
    assert_contains(&r.stdout, "turan_holds = true\n");
    assert_contains(&r.stdout, "RESULT: CERTIFIED VIOLATION\n");
}

// ---------------------------------------------------------------- exit 2 --

#[test]
fn verify_vector_target_gates_on_failed_clause() {
    let r = run(&[
        "verify", "--target", "hpq", "--a", "1,1", "--b", "2", "--c", "1", "--x-max", "0.99",
        "--format", "plain",
    ]);
    assert_eq!(r.code, 2);
    assert_contains(&r.stdout, "a_2 > b_1: FAIL\n");
    assert_contains(
        &r.stdout,
        "RESULT: conditions not satisfied; rerun with --force to verify anyway\n",
    );
}

#[test]
fn certify_gates_on_failed_clause_without_force() {
    let r = run(&["certify", "--a", "1", "--b", "2", "--c", "1", "--N", "64"]);
    assert_eq!(r.code, 2);
    assert_contains(&r.stderr, "a < b - c");
    assert_contains(&r.stderr, "enable force");
}

#[test]
fn bad_inputs_exit_2_with_named_clause() {
    let cases: &[(&[&str], &str)] = &[
        (
            &["eval", "pfq", "--a", "1,1", "--b", "2", "--x", "1"],
            "argument x must satisfy x < 1 when p = q + 1",
        ),
        (&["verify", "--target", "g", "--n", "1", "--grid", "5:1:3"], "grid requires min < max"),
        (&["eval", "1f1", "--a", "1", "--b", "2", "--x", "1/0"], "denominator is zero"),
        (
            &["eval", "1f1", "--a", "1", "--b", "2", "--x", "1", "--precision-bits", "32"],
            "working_bits must be at least 53",
        ),
        (&["theta", "--n", "0"], "index n must be at least 1"),
        (&["theta", "--n", "5..2"], "range end must not be below range start"),
        (
            &["eval", "1f1", "--a", "1", "--b", "2", "--x", "1", "--digits", "0"],
            "--digits must be at least 1",
        ),
        (&["verify", "--target", "f", "--a", "1"], "target f takes --n, not --a/--b/--c"),
        (&["verify", "--target", "zeta", "--n", "1"], "target must be one of f, g, h, hpq"),
        (
            &["kernel", "w", "--b", "2", "--c", "1", "--n", "2", "--k", "3"],
            "weight position requires k <= n",
        ),
        (
            &["kernel", "wratio", "--b", "2,3", "--c", "1", "--n", "2", "--k", "0"],
            "length mismatch",
        ),
        (
            &["kernel", "prefix", "--num", "1,2", "--den", "1"],
            "--num and --den must be nonempty lists of equal length",
        ),
        (
            &["verify", "--target", "g", "--n", "1", "--grid", "0,2,1"],
            "explicit grid must be strictly increasing",
        ),
    ];
    for (args, needle) in cases {
        let r = run(args);
        assert_eq!(r.code, 2, "args {args:?}: stderr {}", r.stderr);
        assert_contains(&r.stderr, needle);
    }
}

#[test]
fn invalid_precision_environment_variable_exits_2() {
    let r = run_with_env(
        &["eval", "1f1", "--a", "1", "--b", "2", "--x", "1"],
        &[("HYPERRATIO_PRECISION_BITS", "abc")],
    );
    assert_eq!(r.code, 2);
    assert_contains(&r.stderr, "HYPERRATIO_PRECISION_BITS must be an unsigned integer");
}

// ---------------------------------------------------------------- exit 3 --

#[test]
fn slowly_converging_series_exhausts_precision() {
    let r = run(&["eval", "pfq", "--a", "1,1", "--b", "1", "--x", "0.999"]);
    assert_eq!(r.code, 3);
    assert_contains(&r.stderr, "precision exhausted");
}

// ----------------------------------------------------------- determinism --

#[test]
fn identical_invocations_are_byte_identical() {
    let commands: &[&[&str]] = &[
        &["verify", "--target", "g", "--n", "2", "--grid", "0:2:3"],
        &["theta", "--n", "1..3", "--format", "csv"],
        &["certify", "--a", "1", "--b", "2,3", "--c", "1,1", "--N", "16"],
        &["eval", "1f1", "--a", "2", "--b", "7/2", "--x", "13/4", "--format", "json"],
    ];
    for args in commands {
        let first = run(args);
        let second = run(args);
        assert_eq!(first.code, second.code);
        assert_eq!(
            first.stdout, second.stdout,
            "stdout must be byte-identical across runs of {args:?}"
        );
    }
}
