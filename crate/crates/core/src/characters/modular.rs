//! Linear algebra over the prime field `F_p`, for the modular eigenvector
//! step of the character table computation.

pub(crate) fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

pub(crate) fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub(crate) fn pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow(a, p - 2, p)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime `p = 1 (mod e)` with `p > lower`, searching below `bound`.
pub(crate) fn prime_one_mod(e: u64, lower: u64, bound: u64) -> Option<u64> {
    let mut p = (lower / e) * e + 1;
    if p <= lower {
        p += e;
    }
    while p < bound {
        if is_prime(p) {
            return Some(p);
        }
        p += e;
    }
    None
}

/// Some element of exact multiplicative order `e` in `F_p`, `e | p - 1`.
pub(crate) fn root_of_unity(e: u64, p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    let generator = (2..p)
        .find(|&g| factors.iter().all(|&f| pow(g, (p - 1) / f, p) != 1))
        .unwrap_or(1);
    pow(generator, (p - 1) / e, p)
}

/// Row-reduces `rows` in place to reduced echelon form and returns the pivot
/// columns; zero rows are dropped.
pub(crate) fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(found) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, found);
        let scale = inv(rows[r][col], p);
        for x in rows[r].iter_mut() {
            *x = mul(*x, scale, p);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][col] != 0 {
                let f = rows[i][col];
                for j in 0..width {
                    let t = mul(f, rows[r][j], p);
                    rows[i][j] = sub(rows[i][j], t, p);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{u : A u = 0}` for a square matrix.
pub(crate) fn nullspace(a: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    let mut rows = a.to_vec();
    let pivots = rref(&mut rows, p);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; n];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = sub(0, rows[r][f], p);
            }
            v
        })
        .collect()
}

/// Characteristic polynomial (constant term first) via reduction to upper
/// Hessenberg form.
pub(crate) fn charpoly(a: &[Vec<u64>], p: u64) -> Vec<u64> {
    let m = a.len();
    let mut h = a.to_vec();
    for col in 0..m.saturating_sub(2) {
        let Some(piv) = (col + 1..m).find(|&r| h[r][col] != 0) else {
            continue;
        };
        if piv != col + 1 {
            h.swap(piv, col + 1);
            for row in h.iter_mut() {
                row.swap(piv, col + 1);
            }
        }
        let pinv = inv(h[col + 1][col], p);
        for i in col + 2..m {
            if h[i][col] == 0 {
                continue;
            }
            let f = mul(h[i][col], pinv, p);
            for j in 0..m {
                let t = mul(f, h[col + 1][j], p);
                h[i][j] = sub(h[i][j], t, p);
            }
            for row in h.iter_mut() {
                let t = mul(f, row[i], p);
                row[col + 1] = add(row[col + 1], t, p);
            }
        }
    }

    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=m {
        let prev = &polys[k - 1];
        let mut pk = vec![0; k + 1];
        for (i, &c) in prev.iter().enumerate() {
            pk[i + 1] = add(pk[i + 1], c, p);
            pk[i] = sub(pk[i], mul(h[k - 1][k - 1], c, p), p);
        }
        let mut prod = 1;
        for i in (1..k).rev() {
            prod = mul(prod, h[i][i - 1], p);
            let coef = mul(h[i - 1][k - 1], prod, p);
            if coef != 0 {
                for (j, &c) in polys[i - 1].iter().enumerate() {
                    pk[j] = sub(pk[j], mul(coef, c, p), p);
                }
            }
        }
        polys.push(pk);
    }
    polys.pop().unwrap()
}

pub(crate) fn eval(poly: &[u64], x: u64, p: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| add(mul(acc, x, p), c, p))
}
