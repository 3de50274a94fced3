//! Random barcodes for experiments and tests.

use rand::Rng;

use crate::barcode::Barcode;
use crate::coordinates::EXACT;

/// `n` bars with births uniform on `[0, 1)` and lengths uniform on
/// `(0, 1]`. With `strict`, draws are repeated until births and deaths are
/// each pairwise distinct.
pub fn random_barcode<R: Rng + ?Sized>(rng: &mut R, n: usize, strict: bool) -> Barcode {
    assert!(n >= 1, "a barcode needs at least one bar");
    loop {
        let pairs: Vec<(f64, f64)> = (0..n)
            .map(|_| {
                let birth: f64 = rng.gen();
                let length = 1.0 - rng.gen::<f64>();
                (birth, birth + length)
            })
            .collect();
        // a very short length can round away, which validation rejects
        let Ok(b) = Barcode::from_pairs(&pairs) else {
            continue;
        };
        if !strict || b.is_strict(EXACT) {
            return b;
        }
    }
}
