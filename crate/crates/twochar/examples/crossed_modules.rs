//! Crossed modules, their homotopy groups and the triples a 2-character is evaluated on.

use twochar::corpus;
use twochar::crossed::CrossedModule;

fn main() {
    let k = corpus::crossed("z2_z4").unwrap();
    println!(
        "|pi1| = {}, |pi2| = {}",
        k.pi1().group.order(),
        k.pi2().order()
    );
    println!("triples: {}", k.triples().unwrap().len());
    println!(
        "interchange law holds: {}",
        k.interchange_violation().is_none()
    );

    let inner = CrossedModule::inner(corpus::group_arc("S3").unwrap());
    println!(
        "inner S3: {} triples in {} classes",
        inner.triples().unwrap().len(),
        inner.triple_classes().unwrap().len()
    );

    match corpus::crossed("broken_peiffer") {
        Ok(_) => println!("unexpectedly valid"),
        Err(e) => println!("broken_peiffer rejected: {e}"),
    }
}
