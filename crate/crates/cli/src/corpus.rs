//! The verification corpus: named deterministic families plus seeded
//! random rational arrangements.

use polarbetti::arrangement::{Arrangement, Hyperplane};
use polarbetti::families;
use polarbetti::qpoly::rat::{rat, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every named corpus arrangement, in a fixed order: Boolean up to
/// dimension 4, braid up to dimension 4, generic families with up to 6
/// hyperplanes in dimensions up to 3, concurrent and parallel lines,
/// points on a line, and the degenerate edge cases.
pub fn corpus() -> Vec<(String, Arrangement)> {
    let mut out: Vec<(String, Arrangement)> = Vec::new();
    out.push(("empty_dim0".into(), Arrangement::empty(0)));
    out.push(("empty_dim3".into(), Arrangement::empty(3)));
    for n in 1..=4 {
        out.push((format!("boolean_{n}"), families::boolean(n)));
    }
    for n in 2..=4 {
        out.push((format!("braid_{n}"), families::braid(n)));
    }
    for n in 1..=3 {
        for k in 1..=6 {
            out.push((format!("generic_{n}_{k}"), families::generic(n, k)));
        }
    }
    for k in 1..=6 {
        out.push((format!("concurrent_{k}"), families::concurrent(k)));
    }
    for k in 1..=6 {
        out.push((format!("parallel_{k}"), families::parallel(k)));
    }
    for k in 1..=6 {
        out.push((format!("points_{k}"), families::points(k)));
    }
    out
}

/// Deterministic random rational arrangement for a seed: ambient dimension
/// in 1..=3, up to 6 hyperplanes, small rational coefficients. Duplicates
/// after canonicalization are resampled.
pub fn random_arrangement(seed: u64) -> Arrangement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=3usize);
    let k = rng.random_range(0..=6usize);
    let mut hyperplanes: Vec<Hyperplane> = Vec::with_capacity(k);
    let mut attempts = 0;
    while hyperplanes.len() < k && attempts < 1000 {
        attempts += 1;
        let normal: Vec<Rat> = (0..n)
            .map(|_| rat(rng.random_range(-4..=4), rng.random_range(1..=3)))
            .collect();
        let offset = rat(rng.random_range(-4..=4), rng.random_range(1..=3));
        let Ok(h) = Hyperplane::new(normal, offset) else {
            continue;
        };
        let duplicate = hyperplanes
            .iter()
            .any(|g| g.normal() == h.normal() && g.offset() == h.offset());
        if !duplicate {
            hyperplanes.push(h);
        }
    }
    Arrangement::new(n, hyperplanes, false).expect("deduplicated by construction")
}

/// The seeded random corpus: seeds `0..count`.
pub fn random_corpus(count: u64) -> Vec<(String, Arrangement)> {
    (0..count)
        .map(|seed| (format!("random_{seed}"), random_arrangement(seed)))
        .collect()
}
