//! Finite fields `F_q` and linear algebra over them.

mod matrix;
mod subspace;

pub use matrix::Mat;
pub use subspace::{gaussian_binomial, graded_subspaces, subspaces, Subspace};

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// Field elements are indices `0..q`; `0` and `1` are the field's zero and one.
pub type Fe = u16;

/// Largest field order with precomputed tables.
pub const MAX_FIELD_ORDER: u32 = 256;

/// A finite field with full addition and multiplication tables.
///
/// For `q = p^k` with `k > 1` the element with base-`p` digits `c_0 c_1 …` is
/// the class of `Σ c_j x^j` modulo the lexicographically first monic
/// irreducible polynomial of degree `k`.
pub struct Field {
    q: u32,
    p: u32,
    add: Vec<Fe>,
    mul: Vec<Fe>,
    neg: Vec<Fe>,
    inv: Vec<Fe>,
}

impl std::fmt::Debug for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

/// `(p, k)` with `q = p^k`, if `q` is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut k = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

/// Prime powers in increasing order, starting at 2.
pub fn prime_powers() -> impl Iterator<Item = u32> {
    (2u32..).filter(|&q| prime_power(q).is_some())
}

/// The field with `q` elements, built once per process.
pub fn field(q: u32) -> Result<Arc<Field>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Field>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().expect("field cache poisoned").get(&q) {
        return Ok(f.clone());
    }
    let f = Arc::new(Field::build(q)?);
    cache.lock().expect("field cache poisoned").insert(q, f.clone());
    Ok(f)
}

impl Field {
    fn build(q: u32) -> Result<Field> {
        let (p, k) = prime_power(q).ok_or_else(|| Error::input(format!("{q} is not a prime power")))?;
        if q > MAX_FIELD_ORDER {
            return Err(Error::resource(format!("field order {q} exceeds {MAX_FIELD_ORDER}")));
        }
        let modulus = irreducible(p, k);
        let digits = |x: u32| -> Vec<u32> {
            let mut d = vec![0; k as usize];
            let mut r = x;
            for slot in d.iter_mut() {
                *slot = r % p;
                r /= p;
            }
            d
        };
        let number = |d: &[u32]| d.iter().rev().fold(0, |acc, &c| acc * p + c);
        let n = q as usize;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = number(&s) as Fe;
                mul[(a * q + b) as usize] = number(&poly_mulmod(&da, &db, &modulus, p)) as Fe;
            }
        }
        let mut neg = vec![0; n];
        let mut inv = vec![0; n];
        for a in 0..n {
            neg[a] = (0..n).find(|&b| add[a * n + b] == 0).expect("additive inverse") as Fe;
            if a != 0 {
                inv[a] = (0..n).find(|&b| mul[a * n + b] == 1).expect("multiplicative inverse") as Fe;
            }
        }
        Ok(Field { q, p, add, mul, neg, inv })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `inv(0)` is an error in the caller.
    #[inline]
    pub fn inv(&self, a: Fe) -> Fe {
        debug_assert!(a != 0, "inverse of zero");
        self.inv[a as usize]
    }

    /// The image of an integer under `Z -> F_q`.
    pub fn from_int(&self, n: i64) -> Fe {
        let r = n.rem_euclid(i64::from(self.p)) as u32;
        // digit 0 carries the prime-field part
        r as Fe
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        0..self.q as Fe
    }
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for deg in (k..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        // modulus is monic of degree k
        for (j, &m) in modulus.iter().enumerate() {
            let idx = deg - k + j;
            prod[idx] = (prod[idx] + p * p - c * m % p) % p;
        }
    }
    prod.truncate(k.max(1));
    prod.resize(k, 0);
    prod
}

/// Coefficients (low degree first) of the first monic irreducible of degree `k`.
fn irreducible(p: u32, k: u32) -> Vec<u32> {
    if k == 1 {
        return vec![0, 1];
    }
    let count = p.pow(k);
    for low in 0..count {
        let mut f: Vec<u32> = (0..k).map(|j| low / p.pow(j) % p).collect();
        f.push(1);
        if f[0] != 0 && !has_factor(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn has_factor(f: &[u32], p: u32) -> bool {
    let k = f.len() as u32 - 1;
    for d in 1..=k / 2 {
        for low in 0..p.pow(d) {
            let mut g: Vec<u32> = (0..d).map(|j| low / p.pow(j) % p).collect();
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return true;
            }
        }
    }
    false
}

fn poly_rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let c = *r.last().expect("nonempty");
        let shift = r.len() - 1 - dg;
        for (j, &gc) in g.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p * p - c * gc % p) % p;
        }
        r.pop();
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_list() {
        let v: Vec<u32> = prime_powers().take(12).collect();
        assert_eq!(v, [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19]);
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(27), Some((3, 3)));
    }

    #[test]
    fn field_axioms_small_orders() {
        for q in [2, 3, 4, 5, 8, 9, 16] {
            let f = field(q).unwrap();
            let els: Vec<Fe> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for &b in &els {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
            }
        }
    }

    #[test]
    fn multiplicative_group_is_cyclic() {
        for q in [4, 8, 9, 16, 25] {
            let f = field(q).unwrap();
            let has_generator = f.elements().skip(1).any(|g| {
                let mut x = g;
                let mut order = 1;
                while x != 1 {
                    x = f.mul(x, g);
                    order += 1;
                }
                order == q - 1
            });
            assert!(has_generator, "F_{q}");
        }
    }

    #[test]
    fn rejects_bad_orders() {
        assert!(matches!(field(6), Err(Error::Input(_))));
        assert!(matches!(field(257), Err(Error::Resource(_))));
    }
}
