//! Times `solve` on random games: `cargo run --release -p lqnash --example solve_throughput [count]`.

use std::time::Instant;

use lqnash::game::GameParams;
use lqnash::solver::solve;

fn main() {
    let mut x: u64 = 88172645463325252;
    let mut u = || {
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        (x >> 11) as f64 / (1u64 << 53) as f64
    };
    let games: Vec<GameParams> = (0..std::env::args().nth(1).map_or(1000, |s| s.parse().unwrap()))
        .map(|_| {
            let w = |v: f64| 10f64.powf(4.0 * v - 2.0);
            GameParams::from_f64(4.0 * (1.0 - u()), w(u()), w(u()), w(u()), w(u())).unwrap()
        })
        .collect();
    let t = Instant::now();
    for g in &games {
        solve(g).unwrap();
    }
    println!("{:?} per solve", t.elapsed() / games.len() as u32);
}
