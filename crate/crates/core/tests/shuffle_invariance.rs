use ldp_hist::prelude::*;
use rand::seq::SliceRandom;

fn invariant<P: LocalProtocol>(p: &P, data: &Dataset, seed: u64) {
    let mut stream = SeedSpec::new(seed, 0).stream();
    let mut messages: Vec<_> = data.items().iter().map(|&x| p.randomize(x, &mut stream)).collect();
    let before = p.aggregate(&messages).unwrap();
    for _ in 0..5 {
        messages.shuffle(&mut stream);
        assert_eq!(p.aggregate(&messages).unwrap(), before);
    }
}

#[test]
fn aggregates_ignore_message_order() {
    let k = 30;
    let data = Dataset::new((0..500).map(|i| (i * 13) % 7).collect(), k).unwrap();
    invariant(&Krr::new(k, 1.0).unwrap(), &data, 1);
    invariant(&Rappor::new(k, 2.0).unwrap(), &data, 2);
    invariant(&SubsetSelection::new(k, 1.5).unwrap(), &data, 3);
    invariant(&HadamardResponse::for_alphabet(k, 1.0).unwrap(), &data, 4);
    invariant(&ProjectiveGeometryResponse::for_alphabet(k, 2.0).unwrap(), &data, 5);
    let split = Split::build(SplitConfig::new(3.0, None).unwrap(), |e| Krr::new(k, e)).unwrap();
    invariant(&split, &data, 6);
}

#[test]
fn shuffled_estimate_matches_plain_distribution() {
    // same randomness for the reports; the shuffle only draws afterwards
    let k = 10;
    let data = Dataset::new((0..300).map(|i| i % k).collect(), k).unwrap();
    let rr = Krr::new(k, 1.0).unwrap();
    let a = rr.estimate(&data, &mut SeedSpec::new(9, 0).stream()).unwrap();
    let b = rr.estimate_shuffled(&data, &mut SeedSpec::new(9, 0).stream()).unwrap();
    assert_eq!(a, b);
}
