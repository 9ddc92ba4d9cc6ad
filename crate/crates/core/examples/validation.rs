// Validation reports, including a rejected spec and its witness.

use tambara::aut::FieldAut;
use tambara::field::Field;
use tambara::spec::TambaraSpec;
use tambara::subfield::SubfieldDescriptor as D;
use tambara::validate::{validate, SamplingPolicy};

pub fn main() -> tambara::Result<()> {
    let f = Field::gf(3, 2)?;
    let policy = SamplingPolicy::default();

    let good = TambaraSpec::new(2, 1, 1, f.clone(), FieldAut::frobenius(1), vec![D::Full, D::Full])?;
    println!("GF(9), C_2 by Frobenius: {:?}", validate(&good, &policy)?.verdict);

    // trivial action, but the top level is cut down to GF(3)
    let bad = TambaraSpec::new(2, 1, 1, f, FieldAut::Trivial, vec![D::Full, D::fixed([FieldAut::frobenius(1)])])?;
    let report = validate(&bad, &policy)?;
    println!("GF(9), trivial C_2, top GF(3): {:?}", report.verdict);
    for failure in &report.failures {
        println!("  {}: {}", failure.check, failure.message);
        println!("    witness {}", failure.witness);
    }
    Ok(())
}
