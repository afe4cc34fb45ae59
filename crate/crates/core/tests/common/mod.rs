#![allow(dead_code)]

use polyop::laurent::{LaurentPoly, Mode, Window};
use polyop::ncseries::{NCEndomorphism, NCSeries};
use polyop::polytope::FaceId;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn coefficient(rng: &mut ChaCha8Rng, min_exp: i32, mode: Mode) -> LaurentPoly {
    let terms = rng.gen_range(1..=2);
    LaurentPoly::from_terms(
        (0..terms).map(|_| (rng.gen_range(min_exp..=min_exp + 2), [1, -1, 2][rng.gen_range(0..3)])),
        mode,
    )
}

/// A sparse endomorphism whose linear part is the identity plus multiples of
/// positive powers of `t`, with nonlinear coefficients in nonnegative degrees.
pub fn random_endo(rng: &mut ChaCha8Rng, colors: usize, max_len: usize, window: Window, mode: Mode) -> NCEndomorphism {
    let labels: Vec<String> = (0..colors).map(|c| format!("c{c}")).collect();
    let images = (0..colors)
        .map(|c| {
            let mut s = NCSeries::zero(max_len, window);
            s.add(&[FaceId::from_index(c)], &LaurentPoly::one(), mode);
            for d in 0..colors {
                if rng.gen_bool(0.4) {
                    s.add(&[FaceId::from_index(d)], &coefficient(rng, 1, mode), mode);
                }
            }
            for _ in 0..rng.gen_range(1..=4) {
                let len = rng.gen_range(2..=max_len);
                let word: Vec<FaceId> = (0..len).map(|_| FaceId::from_index(rng.gen_range(0..colors))).collect();
                s.add(&word, &coefficient(rng, 0, mode), mode);
            }
            s
        })
        .collect();
    NCEndomorphism::from_images(labels, images, 1, mode, max_len, window)
}

pub fn identity_like(f: &NCEndomorphism) -> NCEndomorphism {
    NCEndomorphism::identity(f.labels().to_vec(), f.mode(), f.max_len(), f.window())
}
