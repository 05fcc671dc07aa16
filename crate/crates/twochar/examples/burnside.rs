//! The Burnside ring of a group with cocycle-twisted basis, and its table of marks.

use twochar::atlas::Atlas;
use twochar::corpus;
use twochar::io::BurnsideReport;

fn main() {
    for name in ["S3", "V4"] {
        let atlas = Atlas::new(corpus::group_arc(name).unwrap());
        print!("{}", BurnsideReport::new(atlas).unwrap().to_text(false));
        println!();
    }
}
