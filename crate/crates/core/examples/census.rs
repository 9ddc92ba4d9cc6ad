// Catalog census of clarified and field-like C_4-functors over a few
// backends, rendered as markdown.

use tambara::aut::FieldAut;
use tambara::census::{emit_report, run_census, Backend, CensusConfig, ReportFormat};
use tambara::field::Field;

pub fn main() -> tambara::Result<()> {
    let backends = vec![
        Backend { field: Field::ratfunc(2)?, action: FieldAut::Trivial },
        Backend { field: Field::ratfunc(2)?, action: FieldAut::shift() },
        Backend { field: Field::gf(2, 4)?, action: FieldAut::frobenius(1) },
    ];
    let mut cfg = CensusConfig::new(2, 2, backends);
    cfg.max_frob = 3;
    let report = run_census(&cfg)?;
    print!("{}", emit_report(&report, ReportFormat::Markdown));
    println!("all cross-checks pass: {}", report.all_checks_pass());
    Ok(())
}
