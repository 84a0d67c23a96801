use gfsi_core::suites::*;

fn main() {
    let cfg = SuiteConfig::default();
    for name in SUITE_NAMES {
        match run_suite(name, &cfg) {
            Ok(rep) => {
                println!("== {} ({:.1} s) pass={}", rep.suite, rep.runtime_seconds, rep.pass);
                for c in &rep.cases {
                    println!(
                        "  [{}] {}: measured {:.3e} vs {} {:.1e}",
                        if c.pass { "ok" } else { "FAIL" },
                        c.name,
                        c.measured,
                        if c.exceed { ">" } else { "<=" },
                        c.tolerance
                    );
                }
            }
            Err(e) => println!("== {name} ERROR: {e}"),
        }
    }
}
