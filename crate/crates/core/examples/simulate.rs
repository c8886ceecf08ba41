// Run the slot-level simulator with a few replications and report the mean
// throughput with its 95% interval. Pass `--long` for full-length runs.

use dcf_throughput::sim::{self, SimConfig};
use dcf_throughput::{per_second_to_per_us, PhyMacParams};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let long = std::env::args().any(|a| a == "--long");
    let cfg = SimConfig {
        sim_duration: if long { 5e7 } else { 5e6 },
        replications: if long { 10 } else { 4 },
        ..SimConfig::new(10, per_second_to_per_us(50.0), PhyMacParams::dot11g_54())
    };
    let result = sim::run(&cfg)?;
    println!(
        "N=10, 50 pkt/s: {:.4} Mbps ± {:.4}, collision fraction {:.4}, {} drops",
        result.mean_throughput,
        result.ci95_halfwidth.unwrap_or(0.0),
        result.collision_fraction(),
        result.drops
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
