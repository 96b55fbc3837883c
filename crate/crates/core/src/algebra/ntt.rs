//! Multiplication of long polynomials over `F_p` by number-theoretic
//! transforms modulo three 62-bit primes and Chinese remaindering.
//!
//! A product coefficient is below `len * p^2 < 2^160` for `p < 2^64` and
//! operands shorter than `2^32`, well inside the product of the three primes.

use std::sync::{Arc, RwLock};

/// `c * 2^32 + 1` with the given primitive root.
const PRIMES: [(u64, u64); 3] = [
    (4_611_685_941_117_976_577, 3),
    (4_611_685_692_009_873_409, 19),
    (4_611_685_606_110_527_489, 3),
];

/// Montgomery arithmetic with `R = 2^64`, for odd `p < 2^62`.
#[derive(Clone, Copy)]
struct Mont {
    p: u64,
    /// `-p^{-1} mod 2^64`
    pneg_inv: u64,
    /// `R^2 mod p`
    r2: u64,
}

impl Mont {
    fn new(p: u64) -> Self {
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        Mont {
            p,
            pneg_inv: inv.wrapping_neg(),
            r2,
        }
    }

    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        let t = a as u128 * b as u128;
        let m = (t as u64).wrapping_mul(self.pneg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        // branch-free conditional subtraction
        u.min(u.wrapping_sub(self.p))
    }

    #[inline]
    fn sub(&self, a: u64, b: u64) -> u64 {
        let d = a.wrapping_sub(b);
        d.min(d.wrapping_add(self.p))
    }

    fn to_montgomery(self, a: u64) -> u64 {
        self.mul(a % self.p, self.r2)
    }
}

/// `(w, floor(w 2^64 / p))` for Shoup multiplication by the constant `w`.
fn shoup(w: u64, p: u64) -> (u64, u64) {
    (w, (((w as u128) << 64) / p as u128) as u64)
}

/// `a w mod p` up to one multiple of `p`: the result lies in `[0, 2p)`.
#[inline]
fn mul_shoup(a: u64, (w, wq): (u64, u64), p: u64) -> u64 {
    let q = ((a as u128 * wq as u128) >> 64) as u64;
    a.wrapping_mul(w).wrapping_sub(q.wrapping_mul(p))
}

/// Per prime and direction, level `len = 2h` occupies `[h, 2h)` and holds
/// `w_len^j` for `j < h`.
type TwiddleTable = Arc<Vec<(u64, u64)>>;

static TWIDDLES: RwLock<Vec<TwiddleTable>> = RwLock::new(Vec::new());

fn twiddles(idx: usize, inverse: bool, n: usize) -> TwiddleTable {
    let slot = 2 * idx + inverse as usize;
    if let Some(t) = TWIDDLES.read().unwrap().get(slot) {
        if t.len() >= n {
            return t.clone();
        }
    }
    let (p, g) = PRIMES[idx];
    let mut table = vec![(0, 0); n.max(2)];
    let mut h = 1;
    while h < n {
        let mut w = powmod(g, (p - 1) / (2 * h) as u64, p);
        if inverse {
            w = powmod(w, p - 2, p);
        }
        let mut x = 1;
        for j in 0..h {
            table[h + j] = shoup(x, p);
            x = mulmod(x, w, p);
        }
        h *= 2;
    }
    let table = Arc::new(table);
    let mut all = TWIDDLES.write().unwrap();
    if all.len() < 6 {
        *all = (0..6).map(|_| Arc::new(Vec::new())).collect();
    }
    if all[slot].len() < table.len() {
        all[slot] = table.clone();
    }
    table
}

/// Decimation in frequency: natural order in, bit-reversed order out, values
/// kept in `[0, 2p)`.
fn forward(a: &mut [u64], p: u64, tw: &[(u64, u64)]) {
    let two_p = 2 * p;
    let mut h = a.len() / 2;
    while h >= 1 {
        let ws = &tw[h..2 * h];
        for chunk in a.chunks_mut(2 * h) {
            let (lo, hi) = chunk.split_at_mut(h);
            for ((x, y), &w) in lo.iter_mut().zip(hi.iter_mut()).zip(ws) {
                let (u, v) = (*x, *y);
                let s = u + v;
                *x = s.min(s.wrapping_sub(two_p));
                *y = mul_shoup(u + two_p - v, w, p);
            }
        }
        h /= 2;
    }
}

/// Decimation in time: bit-reversed order in, natural order out, values in
/// `[0, 4p)`.
fn inverse(a: &mut [u64], p: u64, tw: &[(u64, u64)]) {
    let two_p = 2 * p;
    let n = a.len();
    let mut h = 1;
    while h < n {
        let ws = &tw[h..2 * h];
        for chunk in a.chunks_mut(2 * h) {
            let (lo, hi) = chunk.split_at_mut(h);
            for ((x, y), &w) in lo.iter_mut().zip(hi.iter_mut()).zip(ws) {
                let u = (*x).min((*x).wrapping_sub(two_p));
                let t = mul_shoup(*y, w, p);
                *x = u + t;
                *y = u + two_p - t;
            }
        }
        h *= 2;
    }
}

fn convolve_mod(idx: usize, a: &[u64], b: &[u64], n: usize) -> Vec<u64> {
    let p = PRIMES[idx].0;
    let m = Mont::new(p);
    let tw = twiddles(idx, false, n);
    let mut fa = vec![0u64; n];
    let mut fb = vec![0u64; n];
    for (x, &y) in fa.iter_mut().zip(a) {
        *x = y % p;
    }
    for (x, &y) in fb.iter_mut().zip(b) {
        *x = y % p;
    }
    forward(&mut fa, p, &tw);
    forward(&mut fb, p, &tw);
    // the Montgomery product leaves a factor R^-1, removed with 1/n below
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x = m.mul(*x, *y);
    }
    inverse(&mut fa, p, &twiddles(idx, true, n));
    let r = ((1u128 << 64) % p as u128) as u64;
    let scale = shoup(mulmod(r, powmod(n as u64 % p, p - 2, p), p), p);
    for x in fa.iter_mut() {
        let y = mul_shoup(*x, scale, p);
        *x = y.min(y.wrapping_sub(p));
    }
    fa
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(a: u64, mut e: u64, p: u64) -> u64 {
    let (mut base, mut acc) = (a % p, 1 % p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    acc
}

/// `a * b` with residues modulo `p` (any modulus below `2^64`).
pub fn mul_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let len = a.len() + b.len() - 1;
    let n = len.next_power_of_two();
    let [r1, r2, r3] = {
        [convolve_mod(0, a, b, n), convolve_mod(1, a, b, n), convolve_mod(2, a, b, n)]
    };
    let (p1, p2, p3) = (PRIMES[0].0, PRIMES[1].0, PRIMES[2].0);
    let (m2, m3) = (Mont::new(p2), Mont::new(p3));
    // constants in Montgomery form
    let inv_p1_mod_p2 = m2.to_montgomery(powmod(p1 % p2, p2 - 2, p2));
    let p1_mod_p3 = m3.to_montgomery(p1 % p3);
    let inv_p1p2_mod_p3 = m3.to_montgomery(powmod(mulmod(p1 % p3, p2 % p3, p3), p3 - 2, p3));
    let c1 = (p1 % p) as u128;
    let c2 = mulmod(p1 % p, p2 % p, p) as u128;
    let p = p as u128;
    (0..len)
        .map(|i| {
            // Garner: x = v1 + v2 p1 + v3 p1 p2
            let v1 = r1[i];
            let v2 = m2.mul(m2.sub(r2[i], if v1 >= p2 { v1 - p2 } else { v1 }), inv_p1_mod_p2);
            let t = m3.sub(r3[i], if v1 >= p3 { v1 - p3 } else { v1 });
            let t = m3.sub(t, m3.mul(v2, p1_mod_p3));
            let v3 = m3.mul(t, inv_p1p2_mod_p3);
            ((v1 as u128 + v2 as u128 * c1 + v3 as u128 * c2) % p) as u64
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn schoolbook(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = ((out[i + j] as u128 + mulmod(x, y, p) as u128) % p as u128) as u64;
            }
        }
        out
    }

    #[test]
    fn matches_schoolbook() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in [(1u64 << 61) - 1, 1009, 18_446_744_073_709_551_557] {
            for (la, lb) in [(1, 1), (7, 300), (257, 256), (500, 3), (3000, 2100)] {
                let a: Vec<u64> = (0..la).map(|_| rng.gen_range(0..p)).collect();
                let b: Vec<u64> = (0..lb).map(|_| rng.gen_range(0..p)).collect();
                assert_eq!(mul_mod(&a, &b, p), schoolbook(&a, &b, p));
            }
        }
    }
}
