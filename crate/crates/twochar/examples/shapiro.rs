//! Shapiro comparison maps between C(Q, M) and C(G, Coind M).

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twochar::cochain::GModule;
use twochar::corpus;
use twochar::shapiro::Shapiro;
use twochar::verify::random_cochain;

fn main() {
    let g = corpus::group_arc("S3").unwrap();
    let a3 = g.generated_subgroup(&[2]);
    let local = Arc::new(g.subgroup_as_group(&a3));
    let sh = Shapiro::with_local(g.clone(), &a3, local.clone(), GModule::trivial(6)).unwrap();
    println!(
        "Q = {a3}, coinduced module of dimension {}",
        sh.coinduced().dim()
    );

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mu = random_cochain(&local, sh.base(), 2, &mut rng);
    let psi = sh.psi(&mu).unwrap();
    println!("phi(psi(mu)) == mu: {}", sh.phi(&psi).unwrap() == mu);

    let theta = random_cochain(&g, sh.coinduced(), 2, &mut rng);
    let lhs = sh
        .psi(&sh.phi(&theta).unwrap())
        .unwrap()
        .sub(&theta)
        .unwrap();
    let rhs = sh
        .varpi(&theta)
        .unwrap()
        .differential()
        .add(&sh.varpi(&theta.differential()).unwrap())
        .unwrap();
    println!("psi phi - 1 == d varpi + varpi d: {}", lhs == rhs);
}
