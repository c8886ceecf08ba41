// Throughput curves over an automatic arrival-rate grid, written as CSV.

use dcf_throughput::harness::{cmd_sweep, csv_string, SweepSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let spec = SweepSpec {
        n_list: vec![10, 20],
        ..SweepSpec::default()
    };
    let points = cmd_sweep(&spec)?;
    print!("{}", csv_string(&points)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
