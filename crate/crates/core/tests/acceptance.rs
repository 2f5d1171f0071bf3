//! Runs the acceptance battery and prints one line per criterion.

use pmutl::acceptance;

fn main() {
    let outcomes: Vec<_> = std::thread::scope(|s| {
        let handles: Vec<_> = (1..=acceptance::count()).map(|id| s.spawn(move || acceptance::run(id))).collect();
        handles.into_iter().map(|h| h.join().expect("criterion panicked")).collect()
    });
    for o in &outcomes {
        println!("{o}");
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("acceptance: {} passed, {failed} failed", outcomes.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
