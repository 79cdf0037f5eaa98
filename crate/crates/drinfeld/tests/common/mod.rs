//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the crate's arithmetic; inputs are taken from the published tower
//! header only.

#![allow(dead_code)]

use drinfeld::ffield::TowerHeader;

/// `F_{q^r}` as `F_p[a, b] / (f(a), g(a, b))`, with schoolbook products.
pub struct NaiveTower {
    pub p: u32,
    pub e: usize,
    pub r: usize,
    f: Vec<u32>,
    g: Vec<Vec<u32>>,
}

impl NaiveTower {
    pub fn from_header(h: &TowerHeader) -> Self {
        NaiveTower { p: h.p, e: h.e as usize, r: h.r as usize, f: h.fq_modulus.clone(), g: h.fqr_modulus.clone() }
    }

    pub fn size(&self) -> u32 {
        self.p.pow((self.e * self.r) as u32)
    }

    pub fn decode(&self, mut v: u32) -> Vec<Vec<u32>> {
        let mut out = vec![vec![0; self.e]; self.r];
        for row in out.iter_mut() {
            for c in row.iter_mut() {
                *c = v % self.p;
                v /= self.p;
            }
        }
        out
    }

    pub fn encode(&self, x: &[Vec<u32>]) -> u32 {
        let mut v = 0u32;
        for row in x.iter().rev() {
            for &c in row.iter().rev() {
                v = v * self.p + c;
            }
        }
        v
    }

    fn fq_mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let mut t = vec![0u64; 2 * self.e];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                t[i + j] = (t[i + j] + x as u64 * y as u64) % p;
            }
        }
        for d in (self.e..t.len()).rev() {
            let c = t[d];
            if c != 0 {
                for (i, &fi) in self.f.iter().enumerate() {
                    let k = d - self.e + i;
                    t[k] = (t[k] + p * p - c * fi as u64 % p) % p;
                }
            }
        }
        t.truncate(self.e);
        t.into_iter().map(|v| v as u32).collect()
    }

    fn fq_add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.p).collect()
    }

    fn fq_neg(&self, a: &[u32]) -> Vec<u32> {
        a.iter().map(|&x| (self.p - x) % self.p).collect()
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        let (a, b) = (self.decode(x), self.decode(y));
        let s: Vec<Vec<u32>> = a.iter().zip(&b).map(|(u, v)| self.fq_add(u, v)).collect();
        self.encode(&s)
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        let (a, b) = (self.decode(x), self.decode(y));
        let zero = vec![0; self.e];
        let mut t = vec![zero.clone(); 2 * self.r];
        for (i, u) in a.iter().enumerate() {
            for (j, v) in b.iter().enumerate() {
                t[i + j] = self.fq_add(&t[i + j], &self.fq_mul(u, v));
            }
        }
        for d in (self.r..t.len()).rev() {
            let c = t[d].clone();
            if c.iter().any(|&v| v != 0) {
                for (i, gi) in self.g.iter().enumerate() {
                    let k = d - self.r + i;
                    t[k] = self.fq_add(&t[k], &self.fq_neg(&self.fq_mul(&c, gi)));
                }
            }
        }
        t.truncate(self.r);
        self.encode(&t)
    }

    pub fn pow(&self, x: u32, mut k: u64) -> u32 {
        let (mut acc, mut base) = (1u32, x);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }
}

/// Monic irreducibility over a prime field by trial division.
pub fn irreducible_mod_p(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        for idx in 0..(p as u64).pow(d as u32) {
            let mut g: Vec<u32> = (0..d).map(|i| ((idx / (p as u64).pow(i as u32)) % p as u64) as u32).collect();
            g.push(1);
            if rem_mod_p(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Remainder of `f` by monic `g` over `F_p`.
pub fn rem_mod_p(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = f.to_vec();
    let d = g.len() - 1;
    while r.len() > d {
        let c = *r.last().unwrap();
        let s = r.len() - 1 - d;
        for (i, &gi) in g.iter().enumerate() {
            r[s + i] = (r[s + i] + p * p - c * gi % p) % p;
        }
        r.pop();
    }
    r
}

/// All monic polynomials of degree `d` over `F_p`, constant term first.
pub fn monic_polys(p: u32, d: usize) -> Vec<Vec<u32>> {
    (0..(p as u64).pow(d as u32))
        .map(|idx| {
            let mut g: Vec<u32> = (0..d).map(|i| ((idx / (p as u64).pow(i as u32)) % p as u64) as u32).collect();
            g.push(1);
            g
        })
        .collect()
}
