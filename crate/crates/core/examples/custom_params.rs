// Load a parameter set from JSON, inspect the derived channel times and
// compare the saturated operating point with the default profile.

use dcf_throughput::{derive_times, solve_saturated, throughput, PhyMacParams, SolverConfig};

const SHORT_PAYLOAD: &str = r#"{
    "mac_header_bits": 224, "phy_preamble_bits": 144, "plcp_header_bits": 48,
    "ack_bits": 112, "payload_bits": 1600, "data_rate": 54.0, "basic_rate": 1.0,
    "slot_sigma": 20.0, "sifs": 10.0, "difs": 50.0, "eifs": 364.0,
    "ack_timeout": 364.0, "prop_delta": 1.0, "w0": 32, "m": 5, "w_max": 1024,
    "queue_capacity_K": 50
}"#;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = SolverConfig::default();
    for params in [
        PhyMacParams::dot11g_54(),
        PhyMacParams::from_json_str(SHORT_PAYLOAD)?,
    ] {
        let times = derive_times(&params)?;
        println!(
            "payload {} bits: T_s = {:.1} µs, T_c = {:.1} µs",
            params.payload_bits, times.t_s, times.t_c
        );
        for (name, value) in &times.success_breakdown {
            println!("  {name:<14} {value:>8.2}");
        }
        let sat = solve_saturated(20, &params, &cfg)?;
        println!(
            "  saturated N=20: tau {:.5}, S {:.3} Mbps",
            sat.tau,
            throughput(&sat, 20, &params)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
