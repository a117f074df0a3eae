//! Detection windows for the three-qubit GHZ state mixed with white noise.

use multiconc::bounds::{analyze, AnalysisOptions};
use multiconc::cli::cmd_scan;
use multiconc::states::ghz3_with_noise;

fn main() -> multiconc::Result<()> {
    let opts = AnalysisOptions::default();
    println!("{:>5}  {:>10}  {:>10}  verdict", "x", "raw bound", "threshold");
    for k in 0..=10 {
        let x = 0.05 * k as f64;
        let r = analyze(&ghz3_with_noise(x)?, &opts)?;
        println!(
            "{x:>5.2}  {:>10.6}  {:>10.6}  {}",
            r.concurrence_lower_raw,
            r.gme_threshold.unwrap_or(f64::NAN),
            r.verdict.as_str()
        );
    }
    for predicate in ["gme", "entangled"] {
        let out = cmd_scan(None, predicate, 1e-6);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).expect("scan report");
        println!("{predicate} detected for x < {:.5}", v["crossing_x"].as_f64().unwrap());
    }
    Ok(())
}
