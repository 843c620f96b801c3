//! Slow, literal re-implementations of each procedure, used to cross-check
//! the library. They work on explicit subsets and sorted copies rather than
//! on bitmasks and rank arrays.

use kfwer::{BoundInput, CriticalSchedule, LocalTestFamily, PValues};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Hypothesis indices sorted by (p-value, index).
fn ranked(p: &PValues) -> Vec<usize> {
    let v = p.values();
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[a].partial_cmp(&v[b]).unwrap().then(a.cmp(&b)));
    idx
}

fn first_ranks(p: &PValues, r: usize) -> Vec<usize> {
    let mut out: Vec<usize> = ranked(p).into_iter().take(r).collect();
    out.sort_unstable();
    out
}

/// Stepdown, read off the definition: reject `H_(1..r)` for the largest
/// `r >= k` with `P_(k) <= a_k, ..., P_(r) <= a_r`, or the first `k - 1`.
pub fn stepdown(p: &PValues, s: &CriticalSchedule) -> Vec<usize> {
    let (k, n) = (s.k(), s.n());
    let v = p.values();
    let order = ranked(p);
    let pth = |i: usize| v[order[i - 1]];
    let r = (k..=n)
        .rev()
        .find(|&r| (k..=r).all(|j| pth(j) <= s.alpha(j)))
        .unwrap_or(k - 1);
    first_ranks(p, r)
}

/// Stepup, read off the definition.
pub fn stepup(p: &PValues, s: &CriticalSchedule) -> Vec<usize> {
    let (k, n) = (s.k(), s.n());
    let v = p.values();
    let order = ranked(p);
    let pth = |i: usize| v[order[i - 1]];
    if pth(n) <= s.alpha(n) {
        return first_ranks(p, n);
    }
    if (k..=n).all(|r| pth(r) > s.alpha(r)) {
        return first_ranks(p, k - 1);
    }
    let r = (k..=n)
        .find(|&r| ((r + 1)..=n).all(|j| pth(j) > s.alpha(j)))
        .unwrap();
    first_ranks(p, r)
}

fn local_test(sorted: &[f64], f: &LocalTestFamily) -> bool {
    let m = sorted.len();
    (f.k()..=m).any(|j| sorted[j - 1] <= f.alpha(j, m))
}

/// Closed testing by brute force: `H_h` is rejected iff every subset `I`
/// with `|I| >= k` in which `h` sits at position `>= k` is rejected by its
/// local test. Positions within `I` use the same (p-value, index) order.
pub fn closed_testing(p: &PValues, f: &LocalTestFamily) -> Vec<usize> {
    let (k, n) = (f.k(), f.n());
    let v = p.values();
    let rank_pos: Vec<usize> = {
        let order = ranked(p);
        let mut pos = vec![0; n];
        for (r, &h) in order.iter().enumerate() {
            pos[h] = r;
        }
        pos
    };
    let mut rejected = vec![true; n];
    for mask in 1u32..(1 << n) {
        let mut members: Vec<usize> = (0..n).filter(|&h| mask >> h & 1 == 1).collect();
        if members.len() < k {
            continue;
        }
        members.sort_by_key(|&h| rank_pos[h]);
        let sorted: Vec<f64> = members.iter().map(|&h| v[h]).collect();
        if !local_test(&sorted, f) {
            for &h in &members[k - 1..] {
                rejected[h] = false;
            }
        }
    }
    (0..n).filter(|&h| rejected[h]).collect()
}

/// Generalized Hommel, read off the definition. Returns `j` (if it exists)
/// and the rejected hypotheses.
pub fn hommel(p: &PValues, f: &LocalTestFamily) -> (Option<usize>, Vec<usize>) {
    let (k, n) = (f.k(), f.n());
    let v = p.values();
    let order = ranked(p);
    let pth = |i: usize| v[order[i - 1]];
    let j = (k..=n)
        .filter(|&i| (k..=i).all(|l| pth(n - i + l) > f.alpha(l, i)))
        .max();
    let mut out: Vec<usize> = match j {
        None => (0..n).collect(),
        Some(j) => (1..=n)
            .filter(|&i| i < k || pth(i) <= f.alpha(k, j))
            .map(|i| order[i - 1])
            .collect(),
    };
    out.sort_unstable();
    (j, out)
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Exact rational stepup normalizer for a schedule `nums[i] / den`, returned
/// as `(numerator, denominator, argmax m)`.
pub fn normalizer_exact(nums: &[i64], den: i64, k: usize) -> (i128, i128, usize) {
    let n = k + nums.len() - 1;
    let a = |i: usize| nums[i - k] as i128;
    let mut best: Option<(i128, i128, usize)> = None;
    for m in k..=n {
        let shift = n - m;
        // m * (a_{shift+k}/k + sum_{i>k} (a_{shift+i} - a_{shift+i-1}) / i) / den
        let (mut num, mut d) = (a(shift + k), k as i128);
        for i in (k + 1)..=m {
            let term = a(shift + i) - a(shift + i - 1);
            num = num * i as i128 + term * d;
            d *= i as i128;
            let g = gcd(num, d).max(1);
            num /= g;
            d /= g;
        }
        num *= m as i128;
        d *= den as i128;
        let g = gcd(num, d).max(1);
        let (num, d) = (num / g, d / g);
        if best.is_none_or(|(bn, bd, _)| num * bd > bn * d) {
            best = Some((num, d, m));
        }
    }
    best.unwrap()
}

/// Type I error bound of a local test computed directly from the family:
/// `m * (alpha_{k,m} / k + sum_{i>k} (alpha_{i,m} - alpha_{i-1,m}) / i)`.
pub fn type1_direct(f: &LocalTestFamily, m: usize) -> f64 {
    let k = f.k();
    let mut sum = f.alpha(k, m) / k as f64;
    for i in (k + 1)..=m {
        sum += (f.alpha(i, m) - f.alpha(i - 1, m)) / i as f64;
    }
    m as f64 * sum
}

/// Random thresholds with `t <= 10`, `m <= t`, scaled so the order statistic
/// bound lands in `[0.05, 1]`.
pub fn random_bound_input<R: Rng>(rng: &mut R) -> BoundInput {
    loop {
        let t = rng.random_range(1..=10);
        let m = rng.random_range(1..=t);
        let mut raw: Vec<f64> = (0..m).map(|_| rng.random::<f64>()).collect();
        raw.sort_by(|a, b| a.partial_cmp(b).unwrap());
        // occasionally flatten a prefix to zero to exercise zero padding
        if m > 1 && rng.random_bool(0.3) {
            let z = rng.random_range(1..m);
            raw[..z].iter_mut().for_each(|b| *b = 0.0);
        }
        let mut s = 0.0;
        let mut prev = 0.0;
        for (i, &b) in raw.iter().enumerate() {
            s += (b - prev) / (i + 1) as f64;
            prev = b;
        }
        let raw_bound = t as f64 * s;
        if raw_bound <= 0.0 {
            continue;
        }
        let target = rng.random_range(0.05..=1.0);
        let betas: Vec<f64> = raw.iter().map(|b| b * (target / raw_bound)).collect();
        if betas[m - 1] <= 1.0 {
            return BoundInput::new(t, betas).unwrap();
        }
    }
}

/// Monte Carlo estimate (and standard error) of the probability that
/// `U_(i) <= beta_i` for some `i`, where `U_(1) <= ... <= U_(t)` are ordered
/// independent uniforms.
pub fn order_statistic_event_probability(input: &BoundInput, reps: u64, seed: u64) -> (f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let betas = input.betas();
    let mut u = vec![0.0; input.t()];
    let mut hits = 0u64;
    for _ in 0..reps {
        u.iter_mut().for_each(|x| *x = rng.random::<f64>());
        u.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if betas.iter().zip(&u).any(|(b, x)| x <= b) {
            hits += 1;
        }
    }
    let est = hits as f64 / reps as f64;
    (est, (est * (1.0 - est) / reps as f64).sqrt())
}
