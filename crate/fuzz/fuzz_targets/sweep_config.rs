#![no_main]

use libfuzzer_sys::fuzz_target;
use lqnash_cli::sweep::SweepConfig;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(cfg) = SweepConfig::from_json(s) else { return };
    // huge grids are valid but too slow to plan here
    if cfg.a_grid.count > 4096 {
        return;
    }
    if let Ok(plan) = cfg.plan() {
        assert!(!plan.a_values.is_empty() && !plan.r2_values.is_empty());
        assert!(plan.r2_values.windows(2).all(|w| w[0] < w[1]));
    }
});
