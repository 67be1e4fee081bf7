//! Builds a few satellite knots and prints their invariants.
//!
//!     cargo run --example satellites -- 'cable(2,5, atom(F8))'

use splicegraph::{diagram, dsl, invariants, AtomDb};

fn main() {
    let db = AtomDb::seed();
    let mut exprs: Vec<String> = std::env::args().skip(1).collect();
    if exprs.is_empty() {
        exprs = ["sum(T(2,3), atom(F8))", "cable(2,17, T(-3,2))", "whitehead(T(2,3))"]
            .map(String::from)
            .to_vec();
    }
    for e in &exprs {
        let d = match dsl::evaluate(e, &db) {
            Ok(d) => d,
            Err(err) => {
                eprintln!("{e}: {err}");
                continue;
            }
        };
        println!("{e}");
        println!("  canonical  {}", diagram::canonical_form(&d));
        match invariants::alexander(&d) {
            Ok(p) => println!("  alexander  {p}"),
            Err(err) => println!("  alexander  ({err})"),
        }
        match invariants::gromov_norm(&d) {
            Ok(v) => println!("  gromov     {}", v.normalize()),
            Err(err) => println!("  gromov     ({err})"),
        }
    }
}
