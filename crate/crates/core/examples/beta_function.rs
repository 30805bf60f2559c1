//! One-loop beta function of the three quartic models from their
//! intermediate-field maps.
//!
//! cargo run --release --example beta_function

use tensortrack::beta::{enumerate_one_loop, one_loop_coefficients};
use tensortrack::power::{ModelKind, ModelSpec};

fn main() -> tensortrack::Result<()> {
    for kind in [ModelKind::Vector, ModelKind::Matrix, ModelKind::Tensor] {
        let model = ModelSpec::new(kind);
        println!("{kind}");
        for npoints in [4, 2] {
            let orbit = enumerate_one_loop(&model, npoints)?;
            println!("  Γ{npoints}: {} maps, total weight {}", orbit.maps.len(), orbit.total_weight());
            for m in &orbit.maps {
                println!(
                    "    weight {:<5} seed {:<5} carries momentum {:<5} corners {} bubbles {:?}",
                    m.weight.to_string(),
                    m.seed,
                    m.carries_momentum,
                    m.map.corners(),
                    m.map.bubble
                );
            }
            if npoints == 4 {
                println!("    tree weight {}", orbit.tree_weight);
            }
        }
        println!("  {}", one_loop_coefficients(&model)?);
    }
    Ok(())
}
