//! H²(G, Z/L) and Schur classes through the bar resolution.

use std::sync::Arc;

use twochar::cochain::{h2, schur_classes, Cochain, GModule};
use twochar::corpus;

fn main() {
    for name in ["Z4", "V4", "S3", "D4", "Q8"] {
        let g = corpus::group_arc(name).unwrap();
        let level = g.order() as u64;
        let h = h2(g.clone(), GModule::trivial(level)).unwrap();
        let schur = schur_classes(g).unwrap();
        println!(
            "{name}: H2(G, Z/{level}) factors {:?}, Schur classes {}",
            h.invariant_factors,
            schur.len()
        );
    }

    // a coboundary: the differential of a 1-cochain
    let g = Arc::new(corpus::group("S3").unwrap());
    let pi = Cochain::from_fn(g, 6, 1, |t| t[0] as i64);
    let d = pi.differential();
    println!(
        "d(pi) is a cocycle: {}, d(d(pi)) = 0: {}",
        d.is_cocycle(),
        d.differential().is_zero()
    );
    println!(
        "d(pi) is a coboundary: {}",
        d.is_coboundary().unwrap().is_some()
    );
}
