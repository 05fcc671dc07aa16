//! Exact arithmetic in Z[ζ_L].

use twochar::cyclo::{cyclotomic_polynomial, determinant, CycloInt, CycloRat, RootOfUnity};

fn main() {
    println!("Φ_12 coefficients: {:?}", cyclotomic_polynomial(12));
    let i = RootOfUnity::new(4, 1);
    println!("{i} squared is {}", i.pow(2));

    // 1 + ζ_3 + ζ_3^2 vanishes
    let s = CycloInt::sum_of_roots(3, [0, 1, 2]);
    println!("1 + ζ3 + ζ3^2 = {s}");

    let z = CycloInt::root(8, 1);
    let z2 = &z * &z;
    println!(
        "ζ8^2 = {z2}, as a complex number {:?}",
        z2.to_complex_approx()
    );
    println!("norm of 1 + ζ8: {}", (&CycloInt::one(8) + &z).norm());

    let m = vec![
        vec![
            CycloRat::from_int(4, 2),
            CycloRat::from(CycloInt::root(4, 1)),
        ],
        vec![
            CycloRat::from(CycloInt::root(4, 1)),
            CycloRat::from_int(4, 1),
        ],
    ];
    println!("det = {}", determinant(&m, 4).unwrap());
}
