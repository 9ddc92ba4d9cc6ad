// Every field-like functor is coinduced from a clarified one; `decompose`
// recovers the clarified piece and a certificate.

use tambara::analysis::decompose;
use tambara::aut::FieldAut;
use tambara::construct::coinduce;
use tambara::field::Field;
use tambara::spec::TambaraSpec;
use tambara::subfield::SubfieldDescriptor as D;
use tambara::validate::SamplingPolicy;

pub fn main() -> tambara::Result<()> {
    let f = Field::ratfunc(3)?;
    let ell = TambaraSpec::new(3, 1, 1, f, FieldAut::Trivial, vec![D::Full, D::frob_image(1)])?;
    let k = coinduce(&ell, 3)?;
    println!("coinduced to C_27: s = {}, {} bottom coordinates", k.s, k.gring().coord_count());
    for i in 0..=k.n {
        println!("  level {i}: {} free coordinate(s) in {}", k.free_coords(i), k.level_field(i));
    }

    let cert = decompose(&k, true, &SamplingPolicy::default())?;
    println!("recovered s = {}, same clarified piece: {}", cert.s, cert.ell.same_functor(&ell));
    for e in &cert.evidence {
        println!("  {}: {} ({})", e.check, if e.passed { "ok" } else { "FAILED" }, e.detail);
    }
    Ok(())
}
