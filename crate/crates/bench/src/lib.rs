//! Fixtures shared by the criterion benches.

use polyinv::invariance::AdequateMap;
use polyinv::{parse, Context, CycloField, MPoly};

/// `x, y, z` over ℚ(ζ_M).
pub fn context(m: u32) -> Context {
    Context::new(&["x", "y", "z"], CycloField::new(m).unwrap()).unwrap()
}

pub fn adequate(ctx: &Context, map: &str) -> AdequateMap {
    AdequateMap::from_polynomial(&parse(map, ctx).unwrap()).unwrap()
}

/// An invariant polynomial of z-degree `m·depth` built from the canonical
/// generator.
pub fn invariant(map: &AdequateMap, depth: u32) -> MPoly {
    let ctx = map.context();
    let b = map.generator();
    let mut f = ctx.zero();
    for j in 0..=depth {
        let c = parse(&format!("x^{j} + {}*y - 1", j + 1), ctx).unwrap();
        f = &f + &(&c * &b.pow(j));
    }
    f
}
