//! Audit random connection data confined to one factor of a
//! four-dimensional warped product, for both placements.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use warpcheck::audit::{run_audit, select, AuditConfig, AuditSetup, Placement};
use warpcheck::{fixtures, random, report};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fx = fixtures::product4()?;
    for placement in [Placement::Horizontal, Placement::Vertical] {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let data = random::random_data(&mut rng, &fx.wp, &fx.sample_box, Some(placement))?;
        let setup = AuditSetup {
            wp: fx.wp.clone(),
            data,
            placement: Some(placement),
            preset: None,
            sample_box: fx.sample_box.clone(),
            config: AuditConfig::default(),
        };
        let checks = select(&[], Some(placement), None)?;
        println!("{placement} placement");
        print!("{}", report::to_table(&run_audit(&setup, &checks)?));
        println!();
    }
    Ok(())
}
