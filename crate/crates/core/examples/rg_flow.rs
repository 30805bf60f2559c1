//! Running coupling g(t), t = ln N, for each model's one-loop β₂.
//!
//! cargo run --release --example rg_flow

use tensortrack::beta::{integrate_flow, one_loop_coefficients};
use tensortrack::power::{ModelKind, ModelSpec};

fn main() -> tensortrack::Result<()> {
    let (g0, t_max, steps) = (0.01, 4.0, 8);
    for kind in [ModelKind::Vector, ModelKind::Matrix, ModelKind::Tensor] {
        let c = one_loop_coefficients(&ModelSpec::new(kind))?;
        let traj = integrate_flow(g0, c.beta2(), t_max, steps)?;
        let gs: Vec<String> = traj.points.iter().map(|(_, g)| format!("{g:.6}")).collect();
        println!("{kind:<7} β₂ = {:>8.4}  g(t) = {}", c.beta2(), gs.join(" "));
        println!("        midpoint residual {:.1e}, pole at t = {:?}", traj.midpoint_residual(), traj.solution.pole());
    }
    // the vector model reaches its Landau pole at t = 1/(β₂ g0)
    let beta2 = one_loop_coefficients(&ModelSpec::new(ModelKind::Vector))?.beta2();
    match integrate_flow(g0, beta2, 10.0, 10) {
        Ok(_) => println!("no pole before t = 10"),
        Err(e) => println!("vector model up to t = 10: {e}"),
    }
    Ok(())
}
