//! Test-only oracles, independent of the continuation code paths.
#![allow(dead_code)]

use certroot::{ComplexValue, Polynomial};
use rand::Rng;

pub fn c(re: f64, im: f64) -> ComplexValue {
    ComplexValue::new(re, im)
}

pub fn unit_box<R: Rng>(rng: &mut R) -> ComplexValue {
    c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn uniform_in_disk<R: Rng>(rng: &mut R, center: ComplexValue, radius: f64) -> ComplexValue {
    center
        + ComplexValue::from_polar(
            radius * rng.random::<f64>().sqrt(),
            rng.random_range(0.0..std::f64::consts::TAU),
        )
}

/// Degree in `1..=max_degree`, every coefficient drawn from the unit box.
pub fn random_unit_box_poly<R: Rng>(rng: &mut R, max_degree: usize) -> Polynomial {
    let degree = rng.random_range(1..=max_degree);
    Polynomial::new((0..=degree).map(|_| unit_box(rng)).collect()).unwrap()
}

/// Roots in the unit box with pairwise distance at least `separation`.
pub fn separated_roots<R: Rng>(rng: &mut R, count: usize, separation: f64) -> Vec<ComplexValue> {
    let mut roots: Vec<ComplexValue> = Vec::with_capacity(count);
    while roots.len() < count {
        let z = unit_box(rng);
        if roots.iter().all(|r| (r - z).norm() >= separation) {
            roots.push(z);
        }
    }
    roots
}

/// Weierstrass / Durand–Kerner simultaneous iteration on the monic normalisation.
pub fn durand_kerner(f: &Polynomial) -> Vec<ComplexValue> {
    let lead = f.leading();
    let monic: Vec<ComplexValue> = f.coeffs().iter().map(|a| a / lead).collect();
    let n = monic.len() - 1;
    let eval = |z: ComplexValue| monic.iter().rev().fold(c(0.0, 0.0), |acc, &a| acc * z + a);
    let seed = c(0.4, 0.9);
    let mut z: Vec<ComplexValue> = (0..n).map(|j| seed.powu(j as u32)).collect();
    for _ in 0..5000 {
        let mut biggest = 0.0f64;
        for i in 0..n {
            let mut denom = c(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            let delta = eval(z[i]) / denom;
            z[i] -= delta;
            biggest = biggest.max(delta.norm());
        }
        if biggest < 1e-16 {
            break;
        }
    }
    // a few Newton polish steps per root
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (v, d) = monic.iter().rev().fold((c(0.0, 0.0), c(0.0, 0.0)), |(v, d), &a| {
                (v * *zi + a, d * *zi + v)
            });
            if d.norm() > 0.0 {
                *zi -= v / d;
            }
        }
    }
    z
}

/// Bottleneck matching distance between two equal-size multisets, by
/// exhaustive search over permutations (fine up to degree ~8).
pub fn matching_distance(a: &[ComplexValue], b: &[ComplexValue]) -> f64 {
    assert_eq!(a.len(), b.len());
    fn search(a: &[ComplexValue], b: &[ComplexValue], used: &mut Vec<bool>, i: usize, worst: f64, best: &mut f64) {
        if worst >= *best {
            return;
        }
        if i == a.len() {
            *best = worst;
            return;
        }
        for j in 0..b.len() {
            if !used[j] {
                used[j] = true;
                search(a, b, used, i + 1, worst.max((a[i] - b[j]).norm()), best);
                used[j] = false;
            }
        }
    }
    let mut best = f64::INFINITY;
    search(a, b, &mut vec![false; b.len()], 0, 0.0, &mut best);
    best
}

/// Real root of `g` on `[lo, hi]` by bisection; `g(lo)` and `g(hi)` must differ in sign.
pub fn bisect(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let sign_lo = g(lo).signum();
    assert_ne!(sign_lo, g(hi).signum());
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid).signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
