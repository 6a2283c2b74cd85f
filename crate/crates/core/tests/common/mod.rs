//! Independent oracles shared by the integration tests. Nothing here calls into the
//! library's counting, comparison or probability code.
#![allow(dead_code)]

use bacodes::{BitVector, Code};
use rand::seq::index::sample;
use rand::Rng;

/// `(d00, d01, d10, d11)` by walking positions. `d_ab` counts `y_i = a, x_i = b`.
pub fn naive_counts(y: &BitVector, x: &BitVector) -> (u32, u32, u32, u32) {
    let mut c = (0, 0, 0, 0);
    for i in 0..y.len() {
        match (y.get(i), x.get(i)) {
            (false, false) => c.0 += 1,
            (false, true) => c.1 += 1,
            (true, false) => c.2 += 1,
            (true, true) => c.3 += 1,
        }
    }
    c
}

pub fn gamma_of(p: f64, q: f64) -> f64 {
    (p / (1.0 - q)).ln() / (q / (1.0 - p)).ln()
}

pub fn naive_delta(g: f64, y: &BitVector, x: &BitVector) -> f64 {
    let (_, d01, d10, _) = naive_counts(y, x);
    d01 as f64 + g * d10 as f64
}

pub fn naive_weight(y: &BitVector) -> u32 {
    (0..y.len()).filter(|&i| y.get(i)).count() as u32
}

pub fn naive_delta_hat(g: f64, y: &BitVector, x: &BitVector) -> f64 {
    naive_delta(g, y, x) - naive_weight(y) as f64 * (g - 1.0)
}

pub fn naive_hamming(y: &BitVector, x: &BitVector) -> u32 {
    (0..y.len()).filter(|&i| y.get(i) != x.get(i)).count() as u32
}

/// `P(y | x)` as a product over positions.
pub fn naive_prob(p: f64, q: f64, y: &BitVector, x: &BitVector) -> f64 {
    (0..y.len())
        .map(|i| match (x.get(i), y.get(i)) {
            (false, false) => 1.0 - p,
            (false, true) => p,
            (true, false) => q,
            (true, true) => 1.0 - q,
        })
        .product()
}

/// `a > b` beyond a relative tolerance.
pub fn clearly_greater(a: f64, b: f64) -> bool {
    a - b > 1e-12 * a.abs().max(b.abs())
}

/// Index of the unique most likely codeword, `None` on a tie.
pub fn naive_ml_decode(p: f64, q: f64, code: &Code, y: &BitVector) -> Option<usize> {
    let probs: Vec<f64> = code.words().iter().map(|x| naive_prob(p, q, y, x)).collect();
    let (best, &pmax) = probs
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .unwrap();
    let contenders = probs.iter().filter(|&&v| !clearly_greater(pmax, v)).count();
    (contenders == 1).then_some(best)
}

pub fn all_words(n: usize) -> Vec<BitVector> {
    (0..1u64 << n)
        .map(|u| BitVector::from_bits((0..n).map(|i| (u >> i) & 1 == 1)).unwrap())
        .collect()
}

/// PUD by summing over every received word with the naive ML decoder.
pub fn naive_pud(p: f64, q: f64, code: &Code) -> f64 {
    let mut sum = 0.0;
    for y in all_words(code.n()) {
        let decoded = naive_ml_decode(p, q, code, &y);
        for (k, x) in code.words().iter().enumerate() {
            if decoded != Some(k) {
                sum += naive_prob(p, q, &y, x);
            }
        }
    }
    sum / code.len() as f64
}

pub fn random_word<R: Rng>(rng: &mut R, n: usize) -> BitVector {
    BitVector::from_bits((0..n).map(|_| rng.random::<bool>())).unwrap()
}

/// A code of `m` distinct random words of length `n` (`2 <= m <= 2^n`).
pub fn random_code<R: Rng>(rng: &mut R, n: usize, m: usize) -> Code {
    let words = sample(rng, 1 << n, m)
        .into_iter()
        .map(|u| BitVector::from_bits((0..n).map(|i| (u >> i) & 1 == 1)).unwrap())
        .collect();
    Code::new(words).unwrap()
}

/// Random `0 < p <= q < 1/2`, with `p = q` about one time in ten.
pub fn random_channel<R: Rng>(rng: &mut R) -> (f64, f64) {
    let p = rng.random_range(0.01..0.45);
    if rng.random_range(0..10) == 0 {
        (p, p)
    } else {
        (p, rng.random_range(p..0.49))
    }
}

/// Size of a largest clique, by extending cliques one vertex at a time in increasing
/// order. Visits every clique of the graph.
pub fn brute_force_clique(vertices: usize, adjacent: &dyn Fn(usize, usize) -> bool) -> usize {
    fn grow(
        clique: &mut Vec<usize>,
        start: usize,
        vertices: usize,
        adjacent: &dyn Fn(usize, usize) -> bool,
        best: &mut usize,
    ) {
        *best = (*best).max(clique.len());
        for v in start..vertices {
            // Even taking every remaining vertex cannot beat the best.
            if clique.len() + vertices - v <= *best {
                return;
            }
            if clique.iter().all(|&u| adjacent(u, v)) {
                clique.push(v);
                grow(clique, v + 1, vertices, adjacent, best);
                clique.pop();
            }
        }
    }
    let mut best = 0;
    grow(&mut Vec::new(), 0, vertices, adjacent, &mut best);
    best
}

pub fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    // Pascal's triangle, row by row.
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![1u128; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row[k as usize]
}

/// Reads a CSV fixture of published plot coordinates: `q, bound_delta, bound_deltahat, exact`.
pub fn read_figure(text: &str) -> Vec<[f64; 4]> {
    text.lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|f| f.trim().parse().unwrap()).collect();
            [v[0], v[1], v[2], v[3]]
        })
        .collect()
}

pub fn read_edges(text: &str) -> Vec<(usize, usize)> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let mut it = l.split_whitespace().map(|t| t.parse().unwrap());
            (it.next().unwrap(), it.next().unwrap())
        })
        .collect()
}
