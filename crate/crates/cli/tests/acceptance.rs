//! One PASS/FAIL line per criterion; exits nonzero when any fails.

use std::process::ExitCode;

use cli::acceptance::{criteria, SuiteContext};

fn main() -> ExitCode {
    let ctx = SuiteContext::default();
    let mut failed = 0;
    for c in criteria() {
        let r = c.run(&ctx);
        println!("{}  ({:.1}s)", r.line(), r.seconds);
        failed += usize::from(!r.passed);
    }
    println!("acceptance: {} of {} criteria passed", criteria().len() - failed, criteria().len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
