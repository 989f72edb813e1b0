//! Deterministic arrangement families used by tests and the CLI generator.

use crate::arrangement::{Arrangement, Hyperplane};
use crate::qpoly::rat::{rat_int, Rat};
use num_traits::{One, Zero};

/// The coordinate hyperplanes `{x_i = 0}` in `C^n`.
pub fn boolean(n: usize) -> Arrangement {
    let hyperplanes = (0..n)
        .map(|i| {
            let mut normal = vec![Rat::zero(); n];
            normal[i] = Rat::one();
            Hyperplane::new(normal, Rat::zero()).unwrap()
        })
        .collect();
    Arrangement::new(n, hyperplanes, false).unwrap()
}

/// The diagonal hyperplanes `{x_i = x_j}` for `i < j` in `C^n`; requires
/// `n >= 1`.
pub fn braid(n: usize) -> Arrangement {
    assert!(n >= 1, "braid family needs n >= 1");
    let mut hyperplanes = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut normal = vec![Rat::zero(); n];
            normal[i] = Rat::one();
            normal[j] = -Rat::one();
            hyperplanes.push(Hyperplane::new(normal, Rat::zero()).unwrap());
        }
    }
    Arrangement::new(n, hyperplanes, false).unwrap()
}

/// `k` hyperplanes in general position in `C^n`, from the deterministic
/// moment-curve schedule: hyperplane `i` (for `t = i + 1`) is
/// `x_1 + t x_2 + ... + t^(n-1) x_n = t^n`. Any `n` of the normals are
/// independent (Vandermonde) and no `n + 1` of the hyperplanes meet (a
/// monic degree-`n` polynomial cannot have `n + 1` roots), so every
/// `q`-subset with `q <= n` contributes exactly one flat of codimension
/// `q`. The poset shape is verified before returning.
pub fn generic(n: usize, k: usize) -> Arrangement {
    assert!(n >= 1, "generic family needs n >= 1");
    let hyperplanes = (1..=k as i64)
        .map(|t| {
            let normal: Vec<Rat> = (0..n).map(|p| rat_int(t.pow(p as u32))).collect();
            Hyperplane::new(normal, rat_int(t.pow(n as u32))).unwrap()
        })
        .collect();
    let a = Arrangement::new(n, hyperplanes, false).unwrap();
    let expected: u64 = (0..=n.min(k)).map(|q| binomial(k, q)).sum();
    let got = crate::arrangement::build_poset(&a).flats().len() as u64;
    assert_eq!(got, expected, "generic schedule produced a degenerate poset");
    a
}

/// `k` distinct lines through the origin of `C^2`: `y = i x` for
/// `i = 0..k`.
pub fn concurrent(k: usize) -> Arrangement {
    let hyperplanes = (0..k as i64)
        .map(|i| Hyperplane::new(vec![rat_int(i), rat_int(-1)], Rat::zero()).unwrap())
        .collect();
    Arrangement::new(2, hyperplanes, false).unwrap()
}

/// `k` parallel lines `x = 0, 1, ..., k-1` in `C^2`.
pub fn parallel(k: usize) -> Arrangement {
    let hyperplanes = (0..k as i64)
        .map(|i| Hyperplane::new(vec![Rat::one(), Rat::zero()], rat_int(i)).unwrap())
        .collect();
    Arrangement::new(2, hyperplanes, false).unwrap()
}

/// `k` distinct points `x = 0, 1, ..., k-1` in `C^1`.
pub fn points(k: usize) -> Arrangement {
    let hyperplanes = (0..k as i64)
        .map(|i| Hyperplane::new(vec![Rat::one()], rat_int(i)).unwrap())
        .collect();
    Arrangement::new(1, hyperplanes, false).unwrap()
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}
