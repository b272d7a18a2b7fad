//! Polynomials over `F_p`, coefficients from the constant term up.

use crate::arith::{inv_mod, mul_mod};

pub(crate) type Poly = Vec<u64>;

pub(crate) fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Poly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn divrem(a: &[u64], b: &[u64], p: u64) -> (Poly, Poly) {
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p).expect("leading coefficient is a unit");
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    for i in (db..r.len()).rev() {
        let c = mul_mod(r[i], lead_inv, p);
        if c == 0 {
            continue;
        }
        for j in 0..=db {
            r[i - db + j] = (r[i - db + j] + p - mul_mod(c, b[j], p)) % p;
        }
        q[i - db] = c;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub(crate) fn rem(a: &[u64], b: &[u64], p: u64) -> Poly {
    divrem(a, b, p).1
}

pub(crate) fn monic(a: Poly, p: u64) -> Poly {
    match a.last() {
        None => a,
        Some(&lead) => {
            let inv = inv_mod(lead, p).expect("nonzero over a field");
            a.into_iter().map(|c| mul_mod(c, inv, p)).collect()
        }
    }
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(a, p)
}

pub(crate) fn derivative(a: &[u64], p: u64) -> Poly {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| mul_mod(c, i as u64 % p, p)).collect())
}

/// `base^e mod modulus`.
pub(crate) fn pow_mod(base: &[u64], mut e: u64, modulus: &[u64], p: u64) -> Poly {
    let mut acc = rem(&[1], modulus, p);
    let mut b = rem(base, modulus, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), modulus, p);
        }
        b = rem(&mul(&b, &b, p), modulus, p);
        e >>= 1;
    }
    acc
}

/// Degrees of the irreducible factors of a squarefree monic `f`.
pub(crate) fn distinct_degree_degrees(f: &[u64], p: u64) -> Vec<u64> {
    let mut f = trim(f.to_vec());
    let mut out = Vec::new();
    let x: Poly = vec![0, 1];
    let mut h = rem(&x, &f, p);
    let mut d = 1u64;
    while f.len() > 1 && 2 * d <= (f.len() - 1) as u64 {
        h = pow_mod(&h, p, &f, p);
        let g = gcd(&f, &sub(&h, &x, p), p);
        let dg = (g.len() - 1) as u64;
        if dg > 0 {
            out.extend(std::iter::repeat_n(d, (dg / d) as usize));
            f = divrem(&f, &g, p).0;
            h = rem(&h, &f, p);
        }
        d += 1;
    }
    if f.len() > 1 {
        out.push((f.len() - 1) as u64);
    }
    out.sort_unstable();
    out
}

/// Rank of a matrix over `F_p`, rows as coefficient vectors.
pub(crate) fn rank(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    for r in &mut rows {
        r.resize(cols, 0);
    }
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inv_mod(rows[rank][c], p).expect("nonzero pivot");
        let pivot_row: Vec<u64> = rows[rank].iter().map(|&x| mul_mod(x, inv, p)).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[c] != 0 {
                let k = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p - mul_mod(k, y, p)) % p;
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}
