// Tambara functors over F_2(t) whose top level is a Frobenius image,
// where the norm becomes the Frobenius.

use tambara::aut::FieldAut;
use tambara::field::Field;
use tambara::spec::TambaraSpec;
use tambara::subfield::{poly_elem, SubfieldDescriptor as D};
use tambara::validate::{validate, SamplingPolicy};

pub fn main() -> tambara::Result<()> {
    let f = Field::ratfunc(2)?;
    let k = TambaraSpec::new(2, 1, 1, f.clone(), FieldAut::Trivial, vec![D::Full, D::frob_image(1)])?;
    println!("{}", k.to_json());

    let report = validate(&k, &SamplingPolicy::default())?;
    println!("verdict: {:?}", report.verdict);

    let t = poly_elem(&f, &[0, 1]);
    let x = k.elem(0, k.gring().constant(&f.add(&t, &f.one())))?;
    let n = k.norm(0, 1, &x)?;
    let tr = k.tr(0, 1, &x)?;
    println!("N(t+1) = {:?}, Tr(t+1) = {:?}", n.value, tr.value);

    // the top level is closed under norms but not every constant lands there
    match k.elem(1, k.gring().constant(&t)) {
        Ok(_) => println!("t is in the top level"),
        Err(e) => println!("t rejected at the top: {e}"),
    }

    // the same shape with t -> t+1 acting
    let shifted = TambaraSpec::new(2, 1, 1, f, FieldAut::shift(), vec![D::Full, D::Full])?;
    println!("fixed-point functor of t -> t+1: {:?}", validate(&shifted, &SamplingPolicy::default())?.verdict);
    Ok(())
}
