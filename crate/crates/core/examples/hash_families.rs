//! Build deterministic and Monte-Carlo coloring families.

use mapdd::colorcoding::{build_family, is_perfect, monte_carlo_size, FamilyMode};
use num_rational::BigRational;

fn main() -> mapdd::Result<()> {
    let fail = BigRational::new(1.into(), 1_000_000_000.into());
    for (q, n) in [(6, 3), (10, 4), (12, 5)] {
        let det = build_family(q, n, FamilyMode::Deterministic, &fail, 0)?;
        println!("q={q} colors={n}: {} members, {}, perfect={}", det.len(), det.kind, is_perfect(&det));
        let mc = build_family(q, n, FamilyMode::MonteCarlo, &fail, 7)?;
        println!("  monte-carlo: {} members (closed form {})", mc.len(), monte_carlo_size(q, n, &fail)?);
    }
    Ok(())
}
