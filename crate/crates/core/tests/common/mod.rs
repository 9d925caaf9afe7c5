#![allow(dead_code)]

use apartments_core::{CVector, GaussianRational, Subspace};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_scalar(rng: &mut impl Rng, bound: i64) -> GaussianRational {
    GaussianRational::from_ints(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound))
}

pub fn random_vector(rng: &mut impl Rng, n: usize, bound: i64) -> CVector {
    CVector::new((0..n).map(|_| random_scalar(rng, bound)).collect()).unwrap()
}

/// Span of `count` random vectors; generically of dimension `min(count, n)`.
pub fn random_subspace(rng: &mut impl Rng, n: usize, count: usize) -> Subspace {
    let vectors: Vec<CVector> = (0..count).map(|_| random_vector(rng, n, 2)).collect();
    Subspace::span(n, &vectors).unwrap()
}

/// Plain Gram-Schmidt without normalization, written independently of the library.
pub fn gram_schmidt(vectors: &[CVector]) -> Vec<CVector> {
    let mut out: Vec<CVector> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for u in &out {
            let coeff = &w.hermitian_inner(u).unwrap() / &u.hermitian_inner(u).unwrap();
            w = w.sub(&u.scale(&coeff)).unwrap();
        }
        if !w.is_zero() {
            out.push(w);
        }
    }
    out
}

/// A random orthogonal base of `Q(i)^n`: Gram-Schmidt on random vectors,
/// topped up with standard vectors if the draw was degenerate.
pub fn random_orthogonal_base(rng: &mut impl Rng, n: usize) -> Vec<CVector> {
    let mut vectors: Vec<CVector> = (0..n).map(|_| random_vector(rng, n, 2)).collect();
    vectors.extend((0..n).map(|i| CVector::unit(n, i)));
    let base = gram_schmidt(&vectors);
    assert_eq!(base.len(), n);
    base
}

pub fn random_index_subset(rng: &mut impl Rng, n: usize, size: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    idx.truncate(size);
    idx.sort();
    idx
}

pub fn span_of(n: usize, base: &[CVector], idx: &[usize]) -> Subspace {
    let vectors: Vec<CVector> = idx.iter().map(|&i| base[i].clone()).collect();
    Subspace::span(n, &vectors).unwrap()
}

/// A mix of compatible and generic pairs: one third spans of subsets of a
/// common random orthogonal base (always compatible), one third perturbations
/// of those, one third independent random subspaces.
pub fn random_pair(rng: &mut impl Rng, n: usize) -> (Subspace, Subspace) {
    match rng.gen_range(0..3) {
        0 => {
            let base = random_orthogonal_base(rng, n);
            let a = rng.gen_range(0..=n);
            let b = rng.gen_range(0..=n);
            (span_of(n, &base, &random_index_subset(rng, n, a)), span_of(n, &base, &random_index_subset(rng, n, b)))
        }
        1 => {
            let base = random_orthogonal_base(rng, n);
            let a = rng.gen_range(1..=n);
            let x = span_of(n, &base, &random_index_subset(rng, n, a));
            let b = rng.gen_range(1..=n);
            let mut vectors: Vec<CVector> = random_index_subset(rng, n, b).into_iter().map(|i| base[i].clone()).collect();
            let pos = rng.gen_range(0..vectors.len());
            let other = &base[rng.gen_range(0..n)];
            vectors[pos] = vectors[pos].add(&other.scale(&random_scalar(rng, 1))).unwrap();
            (x, Subspace::span(n, &vectors).unwrap())
        }
        _ => {
            let a = rng.gen_range(0..=n);
            let b = rng.gen_range(0..=n);
            (random_subspace(rng, n, a), random_subspace(rng, n, b))
        }
    }
}

pub fn is_zero_scalar(z: &GaussianRational) -> bool {
    z.is_zero()
}
