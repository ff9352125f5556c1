//! Rewrite an accepted equilibrium outcome into a well-structured one with
//! a simple segment decomposition.
//!
//! Run with `cargo run --example simplify_outcome`.

use nashsynth::fixtures;
use nashsynth::format::{parse_lasso, render_lasso};
use nashsynth::simplify::{simplify_safety, simplify_spath, OutcomeShape};

fn main() {
    // a meandering shortest-path outcome: the prefix detours through t1
    // before settling into the sink
    let file = fixtures::fig1a();
    let input = parse_lasso("v0,v1,t1,v1|v2", &file).expect("valid lasso");
    let simplified = simplify_spath(&file.game, &input).expect("accepted outcome");
    println!("input:      {}", render_lasso(&input, &file));
    println!("simplified: {}", render_lasso(&simplified.lasso, &file));
    if let OutcomeShape::Decomposed(d) = &simplified.shape {
        for (i, seg) in d.segments.iter().enumerate() {
            let names: Vec<&str> = seg.iter().map(|&v| file.name(v)).collect();
            println!("  segment {}: {}", i + 1, names.join(" "));
        }
        println!("  tail: {}", render_lasso(&d.tail, &file));
    }
    println!(
        "  costs {} -> {}",
        file.game.cost_profile(&input),
        file.game.cost_profile(&simplified.lasso)
    );

    // a safety outcome is closed at the earliest backward edge
    let file = fixtures::fig5a();
    let input = parse_lasso("v0,v1,v2,v3|v4", &file).expect("valid lasso");
    let simplified = simplify_safety(&file.game, &input).expect("accepted outcome");
    println!(
        "safety: {} -> {} (satisfied players {:?})",
        render_lasso(&input, &file),
        render_lasso(&simplified.lasso, &file),
        simplified.satisfied
    );
}
