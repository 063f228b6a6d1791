#![no_main]

use libfuzzer_sys::fuzz_target;
use planecut::geom::Int;
use planecut::solver::{solve, Caps};

// Coefficient caps keep single runs fast; the library's internal
// assertions are the oracle.
fn small(f: &planecut::instance::InstanceFile) -> bool {
    let norm_cap = Int::from(1000);
    let rhs_cap = Int::from(1_000_000);
    f.rows.len() <= 16
        && f.objective.norm_inf() <= norm_cap
        && f.rows.iter().all(|r| {
            use num::Signed;
            r.a.norm_inf() <= norm_cap && r.b.abs() <= rhs_cap
        })
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(file) = planecut::instance::parse(text) else { return };
    if !small(&file) {
        return;
    }
    let p = file.polyhedron();
    let _ = solve(&p, &file.objective, &Caps::default());
});
