// Solve the per-station operating point at a few arrival rates and show
// both throughput forms agree.

use dcf_throughput::{
    per_second_to_per_us, solve_fixed_point, throughput, throughput_tau_form, PhyMacParams,
    SolverConfig,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let params = PhyMacParams::dot11g_54();
    let cfg = SolverConfig::default();
    let n = 10;
    println!(
        "{:>8} {:>10} {:>8} {:>8} {:>10} {:>10}",
        "pkt/s", "tau", "p", "rho", "S [Mbps]", "S(tau)"
    );
    for rate in [10.0, 50.0, 100.0, 200.0] {
        let sol = solve_fixed_point(per_second_to_per_us(rate), n, &params, &cfg)?;
        let s = throughput(&sol, n, &params)?;
        let s_tau = throughput_tau_form(sol.tau, n, &params)?;
        println!(
            "{rate:>8.1} {:>10.6} {:>8.4} {:>8.4} {s:>10.4} {s_tau:>10.4}",
            sol.tau,
            sol.p,
            sol.rho.min(99.0)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
