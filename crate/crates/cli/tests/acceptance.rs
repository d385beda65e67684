//! One line per acceptance criterion; exits non-zero if any fails.

use setram_cli::acceptance;

fn main() {
    let results = acceptance::run(0, &[], |r| {
        println!(
            "criterion {:>2} {} - {} ({} ms): {}",
            r.id,
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.wall_ms,
            r.detail
        );
    });
    let failed: Vec<usize> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    println!("acceptance: {} passed, {} failed", results.len() - failed.len(), failed.len());
    if results.len() != acceptance::CRITERIA.len() || !failed.is_empty() {
        std::process::exit(1);
    }
}
