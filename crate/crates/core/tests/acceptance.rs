//! End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero
//! exit status if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use pointed_tensor::verify::{self, SuiteReport, DEFAULT_SEED, DEFAULT_TRIPLES};
use pointed_tensor::{oracle_sweep, Execution, Params};

struct Criterion {
    passed: bool,
    checked: u64,
    detail: Option<String>,
}

impl Criterion {
    fn new() -> Self {
        Criterion {
            passed: true,
            checked: 0,
            detail: None,
        }
    }

    fn absorb(&mut self, params: Option<&Params>, report: &SuiteReport) {
        self.checked += report.checked;
        if !report.passed() {
            self.passed = false;
            if self.detail.is_none() {
                let at = params.map(|p| format!(" at {p}")).unwrap_or_default();
                let example = report.counterexample.clone().unwrap_or_default();
                self.detail = Some(format!("{}{at}: {example}", report.name));
            }
        }
    }

    fn fail(&mut self, msg: String) {
        self.passed = false;
        self.detail.get_or_insert(msg);
    }
}

fn line(number: usize, title: &str, c: &Criterion, elapsed: Duration, note: &str) -> bool {
    let status = if c.passed { "PASS" } else { "FAIL" };
    println!(
        "[{status}] criterion {number}: {title} ({} checks, {:.1}s){note}",
        c.checked,
        elapsed.as_secs_f64()
    );
    if let Some(d) = &c.detail {
        println!("         first failure: {d}");
    }
    c.passed
}

fn timed<F: FnOnce() -> Criterion>(f: F) -> (Criterion, Duration) {
    let start = Instant::now();
    let c = f();
    (c, start.elapsed())
}

fn main() -> ExitCode {
    let exec = Execution::Parallel;
    let all = Params::all_up_to(5);
    println!("acceptance: {} parameter sets with n <= 5", all.len());
    let mut ok = true;

    let mut small_time = Duration::ZERO;
    let (c, t) = timed(|| {
        let mut c = Criterion::new();
        for p in &all {
            let start = Instant::now();
            match oracle_sweep(p, exec) {
                Ok(r) => {
                    c.checked += r.checked as u64;
                    if r.checked != (p.n() * p.d()).pow(2) {
                        c.fail(format!("{p}: only {} pairs checked", r.checked));
                    }
                    if let Some(m) = r.mismatches.first() {
                        c.fail(format!("{p}: {}⊗{} formula {} oracle {}", m.left, m.right, m.formula, m.oracle));
                    }
                }
                Err(e) => c.fail(format!("{p}: {e}")),
            }
            if p.n() <= 3 {
                small_time += start.elapsed();
            }
        }
        c
    });
    let note = format!("; n <= 3 subset {:.2}s", small_time.as_secs_f64());
    ok &= line(1, "oracle agrees with the closed form on every pair", &c, t, &note);

    let (c, t) = timed(|| {
        let mut c = Criterion::new();
        for p in &all {
            match verify::suite_identities(p) {
                Ok(r) => c.absorb(Some(p), &r),
                Err(e) => c.fail(format!("{p}: {e}")),
            }
        }
        c
    });
    ok &= line(2, "tensor identities and Green ring relations", &c, t, "");

    let (c, t) = timed(|| {
        let mut c = Criterion::new();
        for p in &all {
            match verify::suite_green_ring(p, exec) {
                Ok(r) => c.absorb(Some(p), &r),
                Err(e) => c.fail(format!("{p}: {e}")),
            }
        }
        c
    });
    ok &= line(3, "Green ring isomorphism with the polynomial quotient", &c, t, "");

    let (c, t) = timed(|| {
        let mut c = Criterion::new();
        c.absorb(None, &verify::suite_count_n(8));
        for p in &all {
            match verify::suite_counting(p, exec) {
                Ok(r) => c.absorb(Some(p), &r),
                Err(e) => c.fail(format!("{p}: {e}")),
            }
        }
        c
    });
    let mut c = c;
    if t > Duration::from_secs(60) {
        c.fail(format!("took {:.1}s, over one minute", t.as_secs_f64()));
    }
    ok &= line(4, "vertex counts, dimensions, kernels and summand counts", &c, t, "");

    let (c, t) = timed(|| {
        let mut c = Criterion::new();
        for p in &all {
            c.absorb(Some(p), &verify::suite_truncation(p));
            c.absorb(Some(p), &verify::suite_coalgebra(p));
            c.absorb(Some(p), &verify::suite_multiplicativity(p, exec));
            match verify::suite_comodule(p, exec) {
                Ok(r) => c.absorb(Some(p), &r),
                Err(e) => c.fail(format!("{p}: {e}")),
            }
        }
        c
    });
    ok &= line(5, "coalgebra, multiplicativity, comodule and truncation laws", &c, t, "");

    let (c, t) = timed(|| {
        let mut c = Criterion::new();
        c.absorb(None, &verify::suite_fibonacci(30));
        c
    });
    ok &= line(6, "Fibonacci recursion equals the closed form up to index 30", &c, t, "");

    let (c, t) = timed(|| {
        let mut c = Criterion::new();
        for p in &all {
            c.absorb(Some(p), &verify::suite_fusion_laws(p));
            match verify::suite_ring_laws(p, DEFAULT_TRIPLES, DEFAULT_SEED) {
                Ok(r) => c.absorb(Some(p), &r),
                Err(e) => c.fail(format!("{p}: {e}")),
            }
        }
        c
    });
    ok &= line(7, "commutativity and associativity of the Green ring", &c, t, "");

    let mut assoc = (0u64, 0u64);
    let mut associative_sets = 0;
    for p in &all {
        let r = verify::suite_path_associativity(p);
        assoc.0 += r.checked;
        assoc.1 += r.failed;
        associative_sets += usize::from(r.failed == 0);
    }
    println!(
        "[INFO] path products: {} of {} triples bracket differently; associative in {associative_sets} of {} parameter sets",
        assoc.1,
        assoc.0,
        all.len()
    );

    if ok {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
