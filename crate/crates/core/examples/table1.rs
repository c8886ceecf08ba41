// Maximum throughput and critical per-station arrival rate for 10, 20 and
// 30 stations on the 802.11g 54 Mbps profile.

use dcf_throughput::harness::cmd_table1;
use dcf_throughput::PhyMacParams;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let params = PhyMacParams::dot11g_54();
    let rows = cmd_table1(&params, &[10, 20, 30])?;
    println!(
        "{:>4} {:>12} {:>16} {:>10}",
        "N", "S_m [Mbps]", "lambda_c [pkt/s]", "tau*"
    );
    for row in &rows {
        println!(
            "{:>4} {:>12.4} {:>16.3} {:>10.6}",
            row.n, row.s_max_mbps, row.lambda_c_pkt_s, row.tau_max
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
