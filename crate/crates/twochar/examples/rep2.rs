//! Linear 2-representations as sums of pairs (P, μ).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twochar::atlas::Atlas;
use twochar::corpus;
use twochar::rep2::Rep2;

fn main() {
    let atlas = Atlas::new(corpus::group_arc("D4").unwrap());
    let unit = Rep2::unit(atlas.clone());
    let reg = Rep2::regular(atlas.clone());
    println!(
        "unit degree {}, regular degree {}",
        unit.degree(),
        reg.degree()
    );

    let sq = reg.tensor(&reg).unwrap();
    println!(
        "regular ⊠ regular has {} summands of total degree {}",
        sq.keys().len(),
        sq.degree()
    );

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let r = Rep2::random(&atlas, &mut rng, 3).unwrap();
    println!(
        "random rep: {} summands, degree {}",
        r.keys().len(),
        r.degree()
    );
    let perm = r.to_perm_cocycle().unwrap();
    let back = Rep2::from_perm_cocycle(atlas.clone(), &perm).unwrap();
    println!(
        "permutation-cocycle roundtrip on {} points: {}",
        perm.size(),
        back.equivalent(&r).unwrap()
    );

    let z4 = atlas.group().generated_subgroup(&[1]);
    let local = twochar::atlas::Atlas::with_level(
        std::sync::Arc::new(atlas.group().subgroup_as_group(&z4)),
        8,
    )
    .unwrap();
    println!(
        "restriction to Z4 has degree {}",
        r.mackey_restrict(&z4, &local).unwrap().degree()
    );
}
