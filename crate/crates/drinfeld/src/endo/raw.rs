// Polynomial arithmetic on bare encoding vectors, for the search loops.

use crate::error::{Error, Result};
use crate::ffield::{FieldTower, Level};
use crate::polyring::Poly;

pub(crate) fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn add(t: &FieldTower, a: &[u32], b: &[u32]) -> Vec<u32> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, &s) in out.iter_mut().zip(short) {
        *o = t.add(*o, s);
    }
    trim(&mut out);
    out
}

pub(crate) fn sub(t: &FieldTower, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), 0);
    }
    for (o, &s) in out.iter_mut().zip(b) {
        *o = t.sub(*o, s);
    }
    trim(&mut out);
    out
}

pub(crate) fn mul(t: &FieldTower, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                out[i + j] = t.add(out[i + j], t.mul(x, y));
            }
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn frob(t: &FieldTower, a: &[u32], i: i64) -> Vec<u32> {
    a.iter().map(|&c| t.frob(c, i)).collect()
}

pub(crate) fn pow(t: &FieldTower, a: &[u32], k: usize) -> Vec<u32> {
    (0..k).fold(vec![1], |acc, _| mul(t, &acc, a))
}

/// `Σ_{i<r} σ^i(a)`.
pub(crate) fn trace(t: &FieldTower, a: &[u32]) -> Vec<u32> {
    (1..t.r() as i64).fold(a.to_vec(), |acc, i| add(t, &acc, &frob(t, a, i)))
}

/// `Π_{i<r} σ^i(a)`.
pub(crate) fn norm(t: &FieldTower, a: &[u32]) -> Vec<u32> {
    (1..t.r() as i64).fold(a.to_vec(), |acc, i| mul(t, &acc, &frob(t, a, i)))
}

fn permutations(k: usize) -> Vec<(Vec<usize>, bool)> {
    fn go(prefix: &mut Vec<usize>, k: usize, out: &mut Vec<(Vec<usize>, bool)>) {
        if prefix.len() == k {
            let inv = (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).filter(|&(a, b)| prefix[a] > prefix[b]).count();
            out.push((prefix.clone(), inv % 2 == 1));
            return;
        }
        for v in 0..k {
            if !prefix.contains(&v) {
                prefix.push(v);
                go(prefix, k, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), k, &mut out);
    out
}

/// The terms of every principal minor of an `r × r` matrix, grouped by size.
pub(crate) struct MinorPlan {
    r: usize,
    // by_size[k-1]: (flat cell indices, odd permutation)
    by_size: Vec<Vec<(Vec<usize>, bool)>>,
}

impl MinorPlan {
    pub(crate) fn new(r: usize) -> Self {
        let mut by_size = vec![Vec::new(); r];
        for mask in 1u32..(1 << r) {
            let s: Vec<usize> = (0..r).filter(|&i| mask >> i & 1 == 1).collect();
            let k = s.len();
            for (p, odd) in permutations(k) {
                let cells = (0..k).map(|a| s[a] * r + s[p[a]]).collect();
                by_size[k - 1].push((cells, odd));
            }
        }
        MinorPlan { r, by_size }
    }

    /// `e_1, …, e_r`: sums of principal minors, each checked to lie in `F_q[T]`.
    pub(crate) fn elementary(&self, t: &FieldTower, cells: &[&[u32]]) -> Result<Vec<Vec<u32>>> {
        debug_assert_eq!(cells.len(), self.r * self.r);
        let q = t.q();
        let mut out = Vec::with_capacity(self.r);
        for terms in &self.by_size {
            let mut acc: Vec<u32> = Vec::new();
            'term: for (cs, odd) in terms {
                let mut prod: Vec<u32> = cells[cs[0]].to_vec();
                for &c in &cs[1..] {
                    if prod.is_empty() {
                        continue 'term;
                    }
                    prod = mul(t, &prod, cells[c]);
                }
                acc = if *odd { sub(t, &acc, &prod) } else { add(t, &acc, &prod) };
            }
            if acc.iter().any(|&c| c >= q) {
                return Err(Error::NotGaloisStable);
            }
            out.push(acc);
        }
        Ok(out)
    }
}

/// Whether `a ∈ F_q[T]` is an `l`-th power there (`l` prime).
pub(crate) fn is_power(a: &Poly<'_>, l: usize) -> bool {
    let t = a.tower();
    let p = t.p() as usize;
    let c = a.raw();
    if c.is_empty() {
        return true;
    }
    if l == p {
        // F_q is perfect, so only the exponents matter.
        return c.iter().enumerate().all(|(i, &v)| v == 0 || i % p == 0);
    }
    let deg = c.len() - 1;
    if !deg.is_multiple_of(l) {
        return false;
    }
    let lead = *c.last().expect("nonzero");
    let qm1 = t.q() as u64 - 1;
    let g = num_integer::gcd(l as u64, qm1);
    if t.pow(lead, qm1 / g) != 1 {
        return false;
    }
    let inv_lead = t.inv(lead).expect("nonzero");
    let b: Vec<u32> = c.iter().map(|&v| t.mul(v, inv_lead)).collect();
    let d = deg / l;
    let inv_l = t.inv((l % p) as u32).expect("l is prime to p");
    let mut root = vec![0u32; d + 1];
    root[d] = 1;
    for k in 1..=d {
        let partial = pow(t, &root, l);
        let have = partial.get(l * d - k).copied().unwrap_or(0);
        root[d - k] = t.mul(t.sub(b[l * d - k], have), inv_l);
    }
    debug_assert!(root.iter().all(|&v| t.contains(Level::Fq, v)));
    pow(t, &root, l) == b
}
