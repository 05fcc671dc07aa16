//! Build groups from Cayley tables and permutations, then look at their subgroups.

use twochar::corpus;
use twochar::group::FiniteGroup;

fn main() {
    let s3 = FiniteGroup::from_permutation_generators(3, vec![vec![1, 0, 2], vec![1, 2, 0]], "S3")
        .unwrap();
    println!("{} has order {}", s3.name(), s3.order());
    for class in s3.subgroup_conjugacy_classes() {
        println!(
            "  subgroup class {} with {} conjugates",
            class.representative,
            class.orbit.len()
        );
    }
    println!(
        "commuting pair classes: {}",
        s3.commuting_pair_classes().len()
    );

    let d4 = corpus::group("D4").unwrap();
    let z4 = d4.generated_subgroup(&[1]);
    println!("D4 subgroups: {}", d4.all_subgroups().len());
    println!(
        "right transversal of {z4} in D4: {:?}",
        d4.right_transversal(&z4)
    );
    for (x, coset) in d4.double_cosets(&z4, &z4) {
        println!("  double coset of {x}: {coset:?}");
    }
}
