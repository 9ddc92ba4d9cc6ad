// A clarified C_4-functor split into its C_2 top and C_2 bottom, glued
// back, and a gluing that is refused.

use tambara::aut::FieldAut;
use tambara::construct::{glue, split};
use tambara::field::Field;
use tambara::spec::TambaraSpec;
use tambara::subfield::SubfieldDescriptor as D;
use tambara::Error;

pub fn main() -> tambara::Result<()> {
    let f = Field::ratfunc(2)?;
    let k = TambaraSpec::new(2, 2, 2, f.clone(), FieldAut::Trivial, vec![D::Full, D::frob_image(1), D::frob_image(2)])?;
    let g = split(&k)?;
    println!("top: {:?}", g.top);
    println!("bottom: {:?}", g.bottom);
    println!("glued back to the same functor: {}", glue(&g)?.same_functor(&k));

    let mut bad = g;
    bad.bottom = TambaraSpec::new(2, 1, 1, f, FieldAut::Trivial, vec![D::Full, D::Full])?;
    match glue(&bad) {
        Err(Error::Glue { criterion, detail }) => println!("refused by criterion {criterion}: {detail}"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
