//! 2-character tables on commuting pairs, cross-checked against three formulas.

use twochar::atlas::Atlas;
use twochar::corpus;
use twochar::gkchar::char_table;
use twochar::io::char_table_text;

fn main() {
    for name in ["S3", "V4", "Q8"] {
        let atlas = Atlas::new(corpus::group_arc(name).unwrap());
        let table = char_table(&atlas).unwrap();
        print!("{}", char_table_text(&table, &atlas, false));
        println!();
    }
}
