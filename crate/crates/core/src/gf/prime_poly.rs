//! Dense polynomials over a prime field, used only while building a field:
//! modulus decoding, irreducibility testing and the default modulus scan.

/// Coefficients in ascending degree order, each in `[0, p)`.
pub(crate) type PrimePoly = Vec<u32>;

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn trim(a: &mut PrimePoly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn degree(a: &PrimePoly) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime and small, Fermat is fine.
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut exp = p as u64 - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    result as u32
}

/// Remainder of `a` modulo `m` (m nonzero).
pub(crate) fn rem(a: &PrimePoly, m: &PrimePoly, p: u32) -> PrimePoly {
    let mut r = a.clone();
    trim(&mut r);
    let dm = degree(m).expect("nonzero modulus");
    let lead_inv = inv_mod(m[dm], p) as u64;
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let factor = r[dr] as u64 * lead_inv % p as u64;
        let shift = dr - dm;
        for (i, &c) in m.iter().enumerate() {
            let sub = factor * c as u64 % p as u64;
            let slot = &mut r[i + shift];
            *slot = ((*slot as u64 + p as u64 - sub) % p as u64) as u32;
        }
        trim(&mut r);
    }
    trim(&mut r);
    r
}

pub(crate) fn mul_mod(a: &PrimePoly, b: &PrimePoly, m: &PrimePoly, p: u32) -> PrimePoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let prod: PrimePoly = prod.into_iter().map(|c| c as u32).collect();
    rem(&prod, m, p)
}

fn pow_mod(base: &PrimePoly, mut exp: u64, m: &PrimePoly, p: u32) -> PrimePoly {
    let mut result = rem(&vec![1], m, p);
    let mut b = rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(&result, &b, m, p);
        }
        b = mul_mod(&b, &b, m, p);
        exp >>= 1;
    }
    result
}

fn sub(a: &PrimePoly, b: &PrimePoly, p: u32) -> PrimePoly {
    let len = a.len().max(b.len());
    let mut out: PrimePoly = (0..len)
        .map(|i| {
            let x = *a.get(i).unwrap_or(&0);
            let y = *b.get(i).unwrap_or(&0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

fn gcd(a: &PrimePoly, b: &PrimePoly, p: u32) -> PrimePoly {
    let mut x = a.clone();
    let mut y = b.clone();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Rabin's test: `m` of degree d is irreducible iff x^{p^d} = x mod m and
/// gcd(x^{p^{d/r}} - x, m) = 1 for every prime r dividing d.
pub(crate) fn is_irreducible(m: &PrimePoly, p: u32) -> bool {
    let d = match degree(m) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if d == 1 {
        return true;
    }
    let x: PrimePoly = vec![0, 1];
    // frob[i] = x^{p^i} mod m
    let mut frob = vec![rem(&x, m, p)];
    for i in 1..=d {
        let next = pow_mod(&frob[i - 1], p as u64, m, p);
        frob.push(next);
    }
    if sub(&frob[d], &x, p) != Vec::<u32>::new() {
        return false;
    }
    for r in prime_factors(d as u64) {
        let g = gcd(&sub(&frob[d / r as usize], &x, p), m, p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

pub(crate) fn encode(m: &PrimePoly, p: u32) -> u64 {
    m.iter().rev().fold(0u64, |acc, &c| acc * p as u64 + c as u64)
}

pub(crate) fn decode(mut code: u64, p: u32) -> PrimePoly {
    let mut out = Vec::new();
    while code > 0 {
        out.push((code % p as u64) as u32);
        code /= p as u64;
    }
    out
}

/// First monic irreducible of degree `d` in lexicographic (integer-encoding) order.
pub(crate) fn first_irreducible(p: u32, d: u32) -> PrimePoly {
    let start = (p as u64).pow(d);
    let end = start * p as u64;
    (start..end)
        .map(|code| decode(code, p))
        .find(|m| is_irreducible(m, p))
        .expect("an irreducible polynomial exists in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn binary_quartic() {
        // x^4 + x + 1 is irreducible; x^4 + x^2 + 1 = (x^2 + x + 1)^2 is not.
        assert!(is_irreducible(&decode(19, 2), 2));
        assert!(!is_irreducible(&decode(21, 2), 2));
        assert_eq!(encode(&first_irreducible(2, 4), 2), 19);
    }

    #[test]
    fn ternary_quadratic() {
        // x^2 + 1 over F_3: -1 is a non-square mod 3.
        assert!(is_irreducible(&vec![1, 0, 1], 3));
        // x^2 - 1 = (x - 1)(x + 1)
        assert!(!is_irreducible(&vec![2, 0, 1], 3));
    }

    #[test]
    fn rabin_matches_root_and_quadratic_factor_search() {
        // Independent check over F_2 in degree 4: irreducible iff no roots and
        // not divisible by the only irreducible quadratic x^2 + x + 1.
        for code in 16u64..32 {
            let m = decode(code, 2);
            let has_root = m[0] == 0 || m.iter().sum::<u32>() % 2 == 0;
            let quad_factor = rem(&m, &vec![1, 1, 1], 2).is_empty();
            assert_eq!(is_irreducible(&m, 2), !has_root && !quad_factor, "code {code}");
        }
    }
}
