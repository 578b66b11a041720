//! End-to-end tests driving the compiled binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use pascube::{build_layer, LayerExport, LayerGrid};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pascube"))
        .args(args)
        .output()
        .expect("binary should spawn")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout should be UTF-8")
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr should be UTF-8")
}

fn code_of(output: &Output) -> i32 {
    output.status.code().expect("process should exit")
}

#[test]
fn coeff_all_routes_prints_values_and_verdict() {
    let output = run(&["coeff", "-a", "3", "-b", "2", "-c", "2", "--route", "all"]);
    assert_eq!(code_of(&output), 0);
    assert_eq!(stdout_of(&output), "30\n30\n30\nmatch\n");
}

#[test]
fn coeff_defaults_to_the_closed_form() {
    let output = run(&["coeff", "-a", "3", "-b", "2", "-c", "2"]);
    assert_eq!(code_of(&output), 0);
    assert_eq!(stdout_of(&output), "30\n");
}

#[test]
fn coeff_output_is_format_independent() {
    for format in ["csv", "json", "pretty"] {
        let output = run(&["--format", format, "coeff", "-a", "3", "-b", "2", "-c", "2"]);
        assert_eq!(code_of(&output), 0);
        assert_eq!(stdout_of(&output), "30\n");
    }
}

#[test]
fn coeff_out_of_range_subscript_is_zero() {
    let output = run(&["coeff", "-a", "2", "-b", "5", "-c", "3"]);
    assert_eq!(code_of(&output), 0);
    assert_eq!(stdout_of(&output), "0\n");

    let output = run(&["coeff", "-a", "2", "-b", "-1", "-c", "3"]);
    assert_eq!(code_of(&output), 0);
    assert_eq!(stdout_of(&output), "0\n");
}

#[test]
fn coeff_all_on_the_base_layer_skips_the_convolution_route() {
    let output = run(&["coeff", "-a", "5", "-b", "2", "-c", "0", "--route", "all"]);
    assert_eq!(code_of(&output), 0);
    assert_eq!(stdout_of(&output), "10\n10\nmatch\n");
}

#[test]
fn coeff_conv_rejects_the_base_layer() {
    let output = run(&["coeff", "-a", "5", "-b", "2", "-c", "0", "--route", "conv"]);
    assert_eq!(code_of(&output), 64);
    assert!(stderr_of(&output).contains("c must be >= 1"));
}

#[test]
fn layer_three_matches_the_hand_expansion() {
    let output = run(&["layer", "-n", "3"]);
    assert_eq!(code_of(&output), 0);
    assert_eq!(
        stdout_of(&output),
        "layer 3\n1\n2 2\n1 2 1\nsum 9\nsum_is_power_of_three true\n"
    );
}

#[test]
fn layer_one_is_the_apex() {
    let output = run(&["layer", "-n", "1"]);
    assert_eq!(code_of(&output), 0);
    assert_eq!(
        stdout_of(&output),
        "layer 1\n1\nsum 1\nsum_is_power_of_three true\n"
    );
}

#[test]
fn layer_csv_keeps_stdout_a_pure_table() {
    let output = run(&["--format", "csv", "layer", "-n", "3"]);
    assert_eq!(code_of(&output), 0);
    assert_eq!(
        stdout_of(&output),
        "r,k,value\n0,0,1\n1,0,2\n1,1,2\n2,0,1\n2,1,2\n2,2,1\n"
    );
    let err = stderr_of(&output);
    assert!(err.contains("sum 9"));
    assert!(err.contains("sum_is_power_of_three true"));
}

#[test]
fn layer_cube_slice_lists_cube_coordinates() {
    let output = run(&[
        "--format",
        "csv",
        "layer",
        "-n",
        "2",
        "--target",
        "cube-slice",
    ]);
    assert_eq!(code_of(&output), 0);
    assert_eq!(
        stdout_of(&output),
        "r,k,x,y,z,value\n0,0,0,0,1,1\n1,0,1,0,0,1\n1,1,0,1,0,1\n"
    );
}

#[test]
fn layer_json_round_trips_through_the_export_form() {
    let output = run(&["--format", "json", "layer", "-n", "12"]);
    assert_eq!(code_of(&output), 0);
    let value: serde_json::Value =
        serde_json::from_str(&stdout_of(&output)).expect("stdout should be JSON");
    assert_eq!(value["sum"], "177147");
    assert_eq!(value["sum_is_power_of_three"], true);
    let export = LayerExport {
        n: value["n"].as_u64().expect("n should be an integer"),
        rows: serde_json::from_value(value["rows"].clone()).expect("rows should parse"),
    };
    let grid = LayerGrid::try_from(export).expect("export should validate");
    assert_eq!(grid, build_layer(12).expect("layer 12 should build"));
}

#[test]
fn layer_zero_is_a_usage_error() {
    let output = run(&["layer", "-n", "0"]);
    assert_eq!(code_of(&output), 64);
}

#[test]
fn verify_routes_sweep_matches_the_advertised_tally() {
    let output = run(&[
        "verify", "--suite", "routes", "--a-max", "15", "--c-max", "15",
    ]);
    assert_eq!(code_of(&output), 0);
    assert_eq!(stdout_of(&output), "checked 2176, failed 0\n");
}

#[test]
fn verify_layersum_counts_one_check_per_layer() {
    let output = run(&["verify", "--suite", "layersum", "--n-max", "1"]);
    assert_eq!(code_of(&output), 0);
    assert_eq!(stdout_of(&output), "checked 1, failed 0\n");
}

#[test]
fn verify_all_suites_pass_with_defaults() {
    let output = run(&["verify"]);
    assert_eq!(code_of(&output), 0);
    let text = stdout_of(&output);
    assert!(text.starts_with("routes: checked 2176, failed 0\n"));
    assert!(text.ends_with("total: checked 6417, failed 0\n"));
}

#[test]
fn walk_exact_lists_the_first_shell() {
    let output = run(&["--format", "csv", "walk", "-t", "1"]);
    assert_eq!(code_of(&output), 0);
    let text = stdout_of(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 11);
    assert_eq!(lines[0], "x,y,t,numerator,denominator,float_value");
    assert_eq!(lines[1], "-3,-1,1,1,27,0.037037037037037035");
    assert_eq!(lines[5], "0,0,1,2,9,0.2222222222222222");
}

#[test]
fn walk_at_time_zero_has_no_simulation_error() {
    let output = run(&[
        "--seed", "9", "walk", "-t", "0", "-N", "512", "--emit", "both",
    ]);
    assert_eq!(code_of(&output), 0);
    let text = stdout_of(&output);
    assert!(text.contains("0 0 0 1 1 1 512 512\n"));
    assert!(text.contains("tv_distance 0\n"));
}

#[test]
fn walk_runs_are_reproducible_for_a_fixed_seed() {
    let args = [
        "--format", "csv", "--seed", "42", "walk", "-t", "2", "-N", "4096", "--emit", "both",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(code_of(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stderr, second.stderr);
}

#[test]
fn output_file_receives_exactly_the_stdout_bytes() {
    let path: PathBuf = std::env::temp_dir().join("pascube-cli-test-walk.csv");
    let args = [
        "--format", "csv", "--seed", "1", "walk", "-t", "2", "-N", "2048", "--emit", "both",
    ];
    let direct = run(&args);
    assert_eq!(code_of(&direct), 0);

    let mut filed: Vec<&str> = args.to_vec();
    let path_str = path.to_str().expect("temp path should be UTF-8");
    filed.extend(["--output", path_str]);
    let via_file = run(&filed);
    assert_eq!(code_of(&via_file), 0);
    assert!(via_file.stdout.is_empty());

    let written = std::fs::read(&path).expect("output file should exist");
    assert_eq!(written, direct.stdout);
    std::fs::remove_file(&path).ok();
}

#[test]
fn walk_rejects_an_empty_simulation() {
    let output = run(&["walk", "-t", "1", "-N", "0", "--emit", "empirical"]);
    assert_eq!(code_of(&output), 64);
    assert!(stderr_of(&output).contains("num_walks"));
}

#[test]
fn heat_sweep_exits_clean_and_fits_the_diffusion_constant() {
    let output = run(&[
        "--format",
        "json",
        "heat",
        "--t",
        "50,100,200,400",
        "--window",
        "1",
    ]);
    assert_eq!(code_of(&output), 0);
    let value: serde_json::Value =
        serde_json::from_str(&stdout_of(&output)).expect("stdout should be JSON");
    assert_eq!(value["residual_strictly_decreasing"], true);
    let summaries = value["summaries"]
        .as_array()
        .expect("summaries should be an array");
    assert_eq!(summaries.len(), 4);
    for summary in summaries {
        let fitted = summary["fitted_D"]
            .as_f64()
            .expect("fitted_D should be a float");
        assert!(
            (fitted - 0.5).abs() < 0.02,
            "fitted_D {fitted} strays from 1/2"
        );
    }
}

#[test]
fn heat_accepts_a_single_time() {
    let output = run(&["heat", "--t", "10"]);
    assert_eq!(code_of(&output), 0);
}

#[test]
fn heat_sorts_and_dedups_the_time_list() {
    let output = run(&["--format", "csv", "heat", "--t", "200,50,100,50"]);
    assert_eq!(code_of(&output), 0);
    let text = stdout_of(&output);
    let times: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|line| line.split(',').next().expect("row should have a t column"))
        .collect();
    assert_eq!(times, ["50", "100", "200"]);
}

#[test]
fn heat_rejects_windows_reaching_the_domain_edge() {
    let output = run(&["heat", "--t", "5", "--window", "7"]);
    assert_eq!(code_of(&output), 64);

    let output = run(&["heat", "--t", "1"]);
    assert_eq!(code_of(&output), 64);
}

#[test]
fn help_exits_zero_and_unknown_flags_exit_sixty_four() {
    let output = run(&["--help"]);
    assert_eq!(code_of(&output), 0);

    let output = run(&["coeff", "-a", "1", "--bogus"]);
    assert_eq!(code_of(&output), 64);

    let output = run(&["nonsense"]);
    assert_eq!(code_of(&output), 64);
}
