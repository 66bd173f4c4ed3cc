use hdx_algebra::rng::keyed_hash;
use hdx_algebra::Rng;
use hdx_kms::{route_subset_internal, uniform_sl, CanonicalCoset, KmsParams};

#[test]
#[ignore]
fn probe() {
    let p = KmsParams::new(4, 7, 2).unwrap();
    let vert = p.color_shift(2);
    let mut rng = Rng::new(909);
    let in_t = |name: &str| (keyed_hash(0x909, name.as_bytes()) as f64 / u64::MAX as f64) < 0.9;
    let pred = |c: &CanonicalCoset| in_t(&c.name(&p));
    let mut fails = 0;
    for _ in 0..300 {
        let mut grab = || loop {
            let g = uniform_sl(&p, &mut rng).unwrap();
            let c = CanonicalCoset::new(&p, &g, vert.clone()).unwrap();
            if in_t(&c.name(&p)) { return c; }
        };
        let a = grab();
        let b = grab();
        let path = route_subset_internal(&p, &a, &b, &pred, &mut rng).unwrap();
        if path.fail { fails += 1; }
    }
    println!("fails {fails}/300");
}
