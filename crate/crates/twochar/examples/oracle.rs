//! Compare the closed formula for linear 2-characters with twisted regular matrices.

use twochar::cochain::schur_classes;
use twochar::corpus;
use twochar::gkchar::{gk_linear, oracle_twisted_regular};

fn main() {
    for name in ["V4", "D4", "Q8"] {
        let g = corpus::group_arc(name).unwrap();
        let schur = schur_classes(g.clone()).unwrap();
        for i in 0..schur.len() {
            let mu = schur.representative(i);
            let agree = g.commuting_pairs().into_iter().all(|(a, b)| {
                gk_linear(mu, a, b).unwrap() == oracle_twisted_regular(mu, a, b).unwrap()
            });
            println!(
                "{name} class {i}: formula and matrices agree on all commuting pairs: {agree}"
            );
        }
    }
    let v4 = corpus::group_arc("V4").unwrap();
    let schur = schur_classes(v4).unwrap();
    println!(
        "V4 nontrivial class at (1, 2): {}",
        gk_linear(schur.representative(1), 1, 2).unwrap()
    );
}
