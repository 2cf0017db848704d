//! Word-sized prime field helpers and dense univariate polynomials over them.

pub const PRIMES: [u64; 40] = [
    4611686018427387847, 4611686018427387817, 4611686018427387787, 4611686018427387761,
    4611686018427387751, 4611686018427387737, 4611686018427387733, 4611686018427387709,
    4611686018427387701, 4611686018427387631, 4611686018427387617, 4611686018427387587,
    4611686018427387461, 4611686018427387421, 4611686018427387409, 4611686018427387329,
    4611686018427387323, 4611686018427387301, 4611686018427387271, 4611686018427387241,
    4611686018427387139, 4611686018427387131, 4611686018427387127, 4611686018427387113,
    4611686018427387091, 4611686018427387073, 4611686018427386981, 4611686018427386923,
    4611686018427386911, 4611686018427386903, 4611686018427386897, 4611686018427386887,
    4611686018427386707, 4611686018427386663, 4611686018427386611, 4611686018427386551,
    4611686018427386471, 4611686018427386389, 4611686018427386351, 4611686018427386329,
];

#[inline]
pub fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow(a, p - 2, p)
}

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
pub type UPoly = Vec<u64>;

pub fn trim(a: &mut UPoly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn eval(a: &[u64], x: u64, p: u64) -> u64 {
    let mut r = 0;
    for &c in a.iter().rev() {
        r = add(mul(r, x, p), c, p);
    }
    r
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> UPoly {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let il = inv(b[db], p);
    while r.len() > db {
        let top = r.len() - 1;
        let f = mul(r[top], il, p);
        if f != 0 {
            let shift = top - db;
            for (i, &bc) in b.iter().enumerate() {
                r[shift + i] = sub(r[shift + i], mul(f, bc, p), p);
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

/// Quotient of `a` by `b`, returning `None` when the remainder is nonzero.
pub fn div_exact(a: &[u64], b: &[u64], p: u64) -> Option<UPoly> {
    let mut r = a.to_vec();
    trim(&mut r);
    if r.is_empty() {
        return Some(Vec::new());
    }
    let db = b.len() - 1;
    if r.len() <= db {
        return None;
    }
    let il = inv(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db {
        let top = r.len() - 1;
        let f = mul(r[top], il, p);
        let shift = top - db;
        q[shift] = f;
        if f != 0 {
            for (i, &bc) in b.iter().enumerate() {
                r[shift + i] = sub(r[shift + i], mul(f, bc, p), p);
            }
        }
        r.pop();
    }
    trim(&mut r);
    if r.is_empty() {
        trim(&mut q);
        Some(q)
    } else {
        None
    }
}

pub fn monic(mut a: UPoly, p: u64) -> UPoly {
    trim(&mut a);
    if let Some(&l) = a.last() {
        let il = inv(l, p);
        for c in a.iter_mut() {
            *c = mul(*c, il, p);
        }
    }
    a
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> UPoly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(x, p)
}

pub fn mul_poly(a: &[u64], b: &[u64], p: u64) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = add(r[i + j], mul(x, y, p), p);
        }
    }
    r
}

pub fn scale(a: &mut [u64], s: u64, p: u64) {
    for c in a.iter_mut() {
        *c = mul(*c, s, p);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn univariate_gcd() {
        let p = PRIMES[0];
        // (x+1)(x+2) and (x+1)(x+3)
        let a = vec![2, 3, 1];
        let b = vec![3, 4, 1];
        assert_eq!(gcd(&a, &b, p), vec![1, 1]);
        assert_eq!(div_exact(&a, &[1, 1], p), Some(vec![2, 1]));
        assert_eq!(div_exact(&a, &[3, 1], p), None);
    }
}
