// Surjectivity of the trace of an automorphism, with a certificate.

use tambara::analysis::{trace_image_check, TraceMode};
use tambara::aut::FieldAut;
use tambara::field::Field;

pub fn main() -> tambara::Result<()> {
    let cases = [
        (Field::ratfunc(2)?, FieldAut::shift(), TraceMode::Sampled),
        (Field::ratfunc(3)?, FieldAut::shift(), TraceMode::Sampled),
        (Field::ratfunc(2)?, FieldAut::mobius(0, 1, 1, 0), TraceMode::Sampled),
        (Field::gf(2, 4)?, FieldAut::frobenius(1), TraceMode::Exhaustive),
    ];
    for (f, a, mode) in cases {
        let outcome = trace_image_check(&f, &a, mode)?;
        println!("{f} under {a}: {}", serde_json::to_string(&outcome).expect("serializes"));
    }
    Ok(())
}
