// Model against simulation at 0.2, 0.5 and 1.5 times the critical rate.

use dcf_throughput::harness::{cmd_compare, LambdaGrid, SimOverrides, SweepSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let spec = SweepSpec {
        n_list: vec![5],
        lambda_grid: LambdaGrid::Relative(vec![0.2, 0.5, 1.5]),
        with_simulation: true,
        sim: SimOverrides {
            replications: 4,
            duration_us: 5e6,
            ..SimOverrides::default()
        },
        ..SweepSpec::default()
    };
    let report = cmd_compare(&spec)?;
    for row in &report.rows {
        println!(
            "N={} {:>4.1}λc {:<11} model {:.4}  sim {:.4}  rel {:+.3}  {}",
            row.n,
            row.lambda_over_lambda_c,
            row.regime.to_string(),
            row.s_model_mbps,
            row.s_sim_mbps,
            row.rel_error,
            if row.pass { "ok" } else { "outside CI" }
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
