// The fixed-point functor of GF(16) under Frobenius, viewed as a
// C_4-Tambara functor, and its transfers and norms.

use tambara::aut::FieldAut;
use tambara::construct::fixed_point_functor;
use tambara::field::Field;
use tambara::subfield::{subfield_compare, SubfieldDescriptor};
use tambara::validate::{validate, SamplingPolicy};

pub fn main() -> tambara::Result<()> {
    let f = Field::gf(2, 4)?;
    let phi = FieldAut::frobenius(1);
    println!("{f}, Frobenius of order {}", phi.order(&f)?);

    let k = fixed_point_functor(&f, &phi, 2, 2)?;
    for i in 0..=k.n {
        println!("level {i}: {}", k.level_field(i));
    }

    let gf4 = SubfieldDescriptor::fixed([FieldAut::frobenius(2)]);
    println!("level 1 vs GF(4): {:?}", subfield_compare(&k.level_field(1), &gf4, &f));

    let g = f.generator();
    let x = k.elem(0, k.gring().constant(&g))?;
    let tr = k.tr(0, 2, &x)?;
    let nm = k.norm(0, 2, &x)?;
    println!("absolute trace of {g}: {:?}", tr.value);
    println!("absolute norm of {g}: {:?}", nm.value);

    let report = validate(&k, &SamplingPolicy::default())?;
    println!("verdict: {:?} ({} checks)", report.verdict, report.checks_run.len());
    Ok(())
}
