//! Small independent reimplementations in checked `i128` arithmetic, plus
//! the reference values the library must reproduce.

#![allow(dead_code)]

pub type Frac = (i128, i128);
pub type M = [[i128; 2]; 2];

fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

pub fn reduce((p, q): Frac) -> Frac {
    let g = gcd(p, q);
    (p / g, q / g)
}

/// Left/right word of `p/q ∈ (0, 1)` in the Stern–Brocot subtree, walking by
/// comparison rather than by mediants of neighbours.
pub fn sb_path(p: i128, q: i128) -> String {
    let (mut lo, mut hi) = ((0i128, 1i128), (1i128, 1i128));
    let mut out = String::new();
    loop {
        let m = (lo.0 + hi.0, lo.1 + hi.1);
        match (p * m.1).cmp(&(m.0 * q)) {
            std::cmp::Ordering::Equal => return out,
            std::cmp::Ordering::Less => {
                out.push('L');
                hi = m;
            }
            std::cmp::Ordering::Greater => {
                out.push('R');
                lo = m;
            }
        }
    }
}

fn mul(a: &M, b: &M) -> M {
    let e = |i: usize, j: usize| {
        a[i][0]
            .checked_mul(b[0][j])
            .and_then(|x| a[i][1].checked_mul(b[1][j]).and_then(|y| x.checked_add(y)))
            .expect("i128 overflow in oracle")
    };
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// Cohn matrix by walking the word over `A(a)`, `B(a)` with products.
pub fn cohn_oracle(a: i128, word: &str) -> M {
    let mut left: M = [[a, 1], [3 * a - a * a - 1, 3 - a]];
    let mut right: M = [[2 * a + 1, 2], [-2 * a * a + 4 * a + 2, 5 - 2 * a]];
    let mut node = mul(&left, &right);
    for c in word.chars() {
        if c == 'L' {
            right = node;
        } else {
            left = node;
        }
        node = mul(&left, &right);
    }
    node
}

/// Markov fraction through the unreduced Springborn mediant.
pub fn markov_oracle(word: &str) -> Frac {
    let springborn = |x: Frac, y: Frac| reduce((x.0 * x.1 + y.0 * y.1, x.1 * x.1 + y.1 * y.1));
    let (mut lo, mut hi) = ((0i128, 1i128), (1i128, 2i128));
    let mut node = springborn(lo, hi);
    for c in word.chars() {
        if c == 'L' {
            hi = node;
        } else {
            lo = node;
        }
        node = springborn(lo, hi);
    }
    node
}

/// Markov triple of the regions around a node, by Vieta moves on `(x, y, z)`.
pub fn triple_oracle(word: &str) -> (i128, i128, i128) {
    let (mut x, mut y, mut z) = (1i128, 2i128, 5i128);
    for c in word.chars() {
        if c == 'L' {
            // keep x and z, replace y
            (x, y, z) = (x, z, 3 * x * z - y);
        } else {
            (x, y, z) = (z, y, 3 * z * y - x);
        }
    }
    (x, y, z)
}

/// Even-length expansion of `p/q > 1` by Euclid.
pub fn cf_oracle(p: i128, q: i128) -> Vec<i128> {
    let (mut p, mut q) = (p, q);
    let mut out = Vec::new();
    while q != 0 {
        out.push(p / q);
        (p, q) = (q, p % q);
    }
    if out.len() % 2 == 1 {
        let last = out.pop().unwrap();
        out.push(last - 1);
        out.push(1);
    }
    out
}

/// Value of `[c_1, ..., c_k]` folded from the back.
pub fn cf_value(word: &[i128]) -> Frac {
    let mut x: Frac = (word[word.len() - 1], 1);
    for &c in word[..word.len() - 1].iter().rev() {
        x = reduce((c * x.0 + x.1, x.0));
    }
    x
}

pub fn gamma_f64(p: f64, q: f64) -> f64 {
    (2.0 * p + q + (9.0 * q * q - 4.0).sqrt()) / (2.0 * q)
}

/// Farey coordinate to Markov fraction for every node of depth at most 3.
pub const MARKOV_BY_T: [(&str, &str); 15] = [
    ("1/2", "2/5"),
    ("1/3", "5/13"),
    ("2/3", "12/29"),
    ("1/4", "13/34"),
    ("2/5", "75/194"),
    ("3/5", "179/433"),
    ("3/4", "70/169"),
    ("1/5", "34/89"),
    ("2/7", "507/1325"),
    ("3/8", "2923/7561"),
    ("3/7", "1120/2897"),
    ("4/7", "2673/6466"),
    ("5/8", "15571/37666"),
    ("5/7", "6089/14701"),
    ("4/5", "408/985"),
];

/// Markov fractions with denominator at most 1000.
pub const SMALL_DENOMINATORS: [&str; 13] = [
    "0/1", "1/2", "2/5", "5/13", "12/29", "13/34", "34/89", "70/169", "75/194", "89/233",
    "179/433", "233/610", "408/985",
];

/// `(t, a, C_t(a))` for the seeds, the root and its children.
pub const COHN_REFERENCE: [(&str, i64, M); 10] = [
    ("0/1", 1, [[1, 1], [1, 2]]),
    ("1/1", 1, [[3, 2], [4, 3]]),
    ("1/2", 1, [[7, 5], [11, 8]]),
    ("1/3", 1, [[18, 13], [29, 21]]),
    ("2/3", 1, [[41, 29], [65, 46]]),
    ("0/1", 2, [[2, 1], [1, 1]]),
    ("1/1", 2, [[5, 2], [2, 1]]),
    ("1/2", 2, [[12, 5], [7, 3]]),
    ("1/3", 2, [[31, 13], [19, 8]]),
    ("2/3", 2, [[70, 29], [41, 17]]),
];

/// Mirrored tree of transposes for `a = 2`: `(t, matrix)`.
pub const COHN_MIRRORED_TRANSPOSED: [(&str, M); 3] = [
    ("1/2", [[12, 7], [5, 3]]),
    ("2/3", [[31, 19], [13, 8]]),
    ("1/3", [[70, 41], [29, 17]]),
];

/// Continued fraction words of `2 + μ(t)`.
pub const CF_WORDS: [(&str, &[u64]); 5] = [
    ("0/1", &[1, 1]),
    ("1/1", &[2, 2]),
    ("1/2", &[2, 2, 1, 1]),
    ("1/3", &[2, 2, 1, 1, 1, 1]),
    ("2/3", &[2, 2, 2, 2, 1, 1]),
];

/// `(t, P, B, Q, D)` of the Markov irrationalities.
pub const IRRATIONALS: [(&str, i64, i64, i64, i64); 5] = [
    ("0/1", 1, 1, 2, 5),
    ("1/1", 1, 1, 1, 2),
    ("1/2", 9, 1, 10, 221),
    ("1/3", 23, 1, 26, 1517),
    ("2/3", 53, 1, 58, 7565),
];
