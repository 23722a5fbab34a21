//! Load a manifest, run its audit, and print both report formats.
//!
//! `cargo run --example manifest_audit -- path/to/manifest.toml`

use warpcheck::audit::{run_audit, select};
use warpcheck::report;
use warpcheck::scenario::Scenario;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/manifests/polar_yano.toml").to_string());
    let scenario = Scenario::load(&path)?;
    let checks = select(&scenario.checks, scenario.placement, scenario.preset)?;
    let result = run_audit(&scenario.setup(), &checks)?;
    print!("{}", report::to_table(&result));
    let json = report::to_json(&result);
    assert_eq!(report::from_json(&json)?, result);
    println!("{}", json.lines().take(12).collect::<Vec<_>>().join("\n"));
    Ok(())
}
