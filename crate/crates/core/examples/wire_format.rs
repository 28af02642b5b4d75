//! Encoding reports for transport and decoding them on the server.

use ldp_hist::prelude::*;
use ldp_hist::protocols::wire::{decode_batch, encode_batch};

fn main() -> Result<()> {
    let k = 40;
    let ss = SubsetSelection::new(k, 1.5)?;
    let id = LocalProtocol::descriptor(&ss).id;
    let mut stream = SeedSpec::new(3, 0).stream();
    let reports: Vec<_> = (0..1000).map(|i| ss.randomize(i % k, &mut stream)).collect();

    let bytes = encode_batch(id, &reports);
    println!(
        "{} subset reports -> {} bytes ({:.1} per report, tag {:#04x})",
        reports.len(),
        bytes.len(),
        bytes.len() as f64 / reports.len() as f64,
        id.code()
    );
    let decoded = decode_batch(id, &bytes)?;
    assert_eq!(decoded, reports);

    let a = ss.aggregate(&reports)?;
    let b = ss.aggregate(&decoded)?;
    assert_eq!(a, b);
    println!("first report: {:?}", decoded[0].members());
    Ok(())
}
