//! Brute-force privacy audit: build the full output matrix of small
//! protocols and report the largest likelihood ratio next to e^ε.

use ldp_hist::protocols::{output_matrix, LocalProtocol, OutputMatrix};
use ldp_hist::geometry::ProjectiveSpace;
use ldp_hist::prelude::*;

fn report(name: &str, eps: f64, m: &OutputMatrix) {
    println!(
        "{name:<18} eps = {eps:<6.3} outputs = {:>5}  max ratio = {:>9.4}  e^eps = {:>9.4}  column defect = {:.1e}",
        m.rows(),
        m.max_privacy_ratio(),
        eps.exp(),
        m.max_column_defect()
    );
}

fn main() -> Result<()> {
    for eps in [0.5, 1.0, 4f64.ln(), 5.0] {
        report("krr(6)", eps, &output_matrix(&Krr::new(6, eps)?)?);
        report("rappor(8)", eps, &output_matrix(&Rappor::new(8, eps)?)?);
        report("ss(8)", eps, &output_matrix(&SubsetSelection::new(8, eps)?)?);
        report("hr(7)", eps, &output_matrix(&HadamardResponse::for_alphabet(7, eps)?)?);
        let fano = ProjectiveGeometryResponse::from_space(ProjectiveSpace::new(2, 3)?, eps)?;
        report("pgr PG(2,2)", eps, &output_matrix(&fano)?);

        let split = Split::build(SplitConfig::new(eps, Some(2))?, |e| Krr::new(4, e))?;
        let base = output_matrix(split.base())?;
        let joint = base.power(split.config().repetitions())?;
        debug_assert_eq!(joint.cols(), split.alphabet_size());
        report("split(krr(4))", eps, &joint);
    }
    Ok(())
}
