//! Runs the full acceptance battery and prints one line per criterion.

use std::io::Write;

use hypermatch::selftest;

#[test]
fn acceptance_battery() {
    // written to the real stdout so the table survives output capture
    let mut out = std::io::stdout().lock();
    let mut failed = Vec::new();
    for criterion in &selftest::CRITERIA {
        let o = criterion.run();
        writeln!(out, "{}", o.line()).unwrap();
        out.flush().unwrap();
        if !o.passed {
            failed.push(o.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
