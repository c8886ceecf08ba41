// Below the critical rate throughput is nearly `N·λ·E[PL]`; this prints the
// relative gap between the full model and that line.

use dcf_throughput::{critical_lambda, linearity_error, PhyMacParams, SolverConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let params = PhyMacParams::dot11g_54();
    let cfg = SolverConfig::default();
    for n in [10, 20, 30] {
        let report = critical_lambda(n, &params, &cfg)?;
        print!("N={n:<3}");
        for frac in [0.1, 0.25, 0.5, 0.8, 0.95] {
            let lambda = frac * report.lambda_c;
            let err = linearity_error(lambda, n, &params, &cfg)?;
            print!(
                "  {frac:.2}λc: {:>6.2}% ({})",
                100.0 * err,
                report.regime_of(lambda)
            );
        }
        println!();
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
