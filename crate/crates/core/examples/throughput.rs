//! Rough single-point throughput check: `cargo run --release --example throughput`.

use std::time::Instant;

use risfade_core::montecarlo::{estimate_op_point, SeedContext};
use risfade_core::sysmodel::{LinkFading, Scheme, SystemConfig, User};

fn main() {
    let trials = 200_000;
    for (name, link) in [
        ("nakagami m=2", LinkFading::Nakagami { m: 2.0 }),
        ("kappa_mu k=2 mu=2", LinkFading::KappaMu { kappa: 2.0, mu: 2.0 }),
    ] {
        let cfg = SystemConfig {
            direct_u1: link,
            ..SystemConfig::default()
        };
        let ctx = SeedContext { master_seed: 1, point_index: 0 };
        let t = Instant::now();
        let r = estimate_op_point(&cfg, 10.0, trials, ctx, Scheme::RisNoma, User::U1).unwrap();
        println!("{name}: op={} in {:.2?}", r.op_estimate, t.elapsed());
    }
}
