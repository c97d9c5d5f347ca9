//! Timing probe for the surface-genus expansion at increasing q-orders.
//!
//! Run with `cargo run --release -p elliptic-genus --example bench_genus`.

use std::time::Instant;

use elliptic_genus::surface::{elliptic_genus, SurfaceSpec};

fn main() {
    for order in [10, 30, 50, 72, 100, 116] {
        let t = Instant::now();
        let e = elliptic_genus(&SurfaceSpec::k3(), order);
        println!("order {order}: {:?} ({} terms)", t.elapsed(), e.term_count());
    }
}
