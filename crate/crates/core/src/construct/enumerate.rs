//! Exhaustive enumeration of small effect algebras up to isomorphism.
//!
//! With `0` and `1` fixed, an effect algebra is determined by its
//! complement involution together with the set of multisets `{x, y, z}`
//! of elements other than `0`, `1` satisfying `x ⊕ y ⊕ z = 1`: each such
//! triple fixes `x ⊕ y = z'`, `x ⊕ z = y'` and `y ⊕ z = x'`, and every
//! sum of two such elements arises this way. Up to relabelling the
//! involution can be taken as `p` swapped pairs followed by `f` fixed
//! points, so the search runs over sets of triples for each `(p, f)` and
//! keeps the least code under the involution-preserving relabellings.

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::EffectAlgebra;
use crate::element::ElementId;

/// Default largest carrier for [`enumerate_all`].
pub const DEFAULT_MAX_N: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("enumeration up to {requested} elements exceeds the cap of {cap}")]
    CapExceeded { requested: usize, cap: usize },
}

/// Every effect algebra with `2..=max_n` elements, one per isomorphism
/// class, ordered by size, then by number of self-complementary elements,
/// then by canonical code.
pub fn enumerate_all(max_n: usize) -> Result<Vec<EffectAlgebra>, EnumerateError> {
    enumerate_all_capped(max_n, DEFAULT_MAX_N)
}

pub fn enumerate_all_capped(max_n: usize, cap: usize) -> Result<Vec<EffectAlgebra>, EnumerateError> {
    if max_n > cap {
        return Err(EnumerateError::CapExceeded { requested: max_n, cap });
    }
    Ok((2..=max_n).flat_map(enumerate_size_unchecked).collect())
}

/// All isomorphism classes of effect algebras with exactly `n` elements.
pub fn enumerate_size(n: usize) -> Result<Vec<EffectAlgebra>, EnumerateError> {
    if n > DEFAULT_MAX_N {
        return Err(EnumerateError::CapExceeded {
            requested: n,
            cap: DEFAULT_MAX_N,
        });
    }
    Ok(enumerate_size_unchecked(n))
}

fn enumerate_size_unchecked(n: usize) -> Vec<EffectAlgebra> {
    if n < 2 {
        return Vec::new();
    }
    let m = n - 2;
    let shapes: Vec<(usize, usize)> = (0..=m / 2).rev().map(|p| (p, m - 2 * p)).collect();
    shapes
        .into_par_iter()
        .map(|(p, f)| Shape::new(p, f).search())
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// One involution shape: middle elements `0..m` (local indices), pairs
/// `(2k, 2k+1)` for `k < p`, then `f` fixed points.
struct Shape {
    p: usize,
    m: usize,
    comp: Vec<usize>,
    triples: Vec<[usize; 3]>,
    // for each relabelling, the image index of every triple
    images: Vec<Vec<usize>>,
}

impl Shape {
    fn new(p: usize, f: usize) -> Self {
        let m = 2 * p + f;
        let comp: Vec<usize> = (0..m)
            .map(|x| if x < 2 * p { x ^ 1 } else { x })
            .collect();
        let mut triples = Vec::new();
        for x in 0..m {
            for y in x..m {
                for z in y..m {
                    let pairs = [(x, y), (x, z), (y, z)];
                    if pairs.iter().all(|&(u, v)| comp[u] != v) {
                        triples.push([x, y, z]);
                    }
                }
            }
        }
        assert!(triples.len() <= 128, "shape too large for a 128-bit code");
        let index: BTreeMap<[usize; 3], usize> = triples.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        let images = relabellings(p, f)
            .into_iter()
            .map(|perm| {
                triples
                    .iter()
                    .map(|t| {
                        let mut u = t.map(|x| perm[x]);
                        u.sort_unstable();
                        index[&u]
                    })
                    .collect()
            })
            .collect();
        Shape {
            p,
            m,
            comp,
            triples,
            images,
        }
    }

    fn search(&self) -> Vec<EffectAlgebra> {
        let mut used = vec![false; self.m * self.m];
        let mut found = BTreeMap::new();
        self.dfs(0, 0u128, &mut used, &mut found);
        found.into_values().collect()
    }

    fn pairs(t: [usize; 3]) -> [(usize, usize); 3] {
        [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])]
    }

    fn dfs(&self, i: usize, code: u128, used: &mut [bool], found: &mut BTreeMap<u128, EffectAlgebra>) {
        if i == self.triples.len() {
            let table = self.table(code);
            if associative(&table, self.m + 2) {
                let canon = self.canonical(code);
                found.entry(canon).or_insert_with(|| self.algebra(canon));
            }
            return;
        }
        let t = self.triples[i];
        let mut pairs: Vec<(usize, usize)> = Self::pairs(t).to_vec();
        pairs.sort_unstable();
        pairs.dedup();
        if pairs.iter().all(|&(u, v)| !used[u * self.m + v]) {
            for &(u, v) in &pairs {
                used[u * self.m + v] = true;
            }
            self.dfs(i + 1, code | (1 << i), used, found);
            for &(u, v) in &pairs {
                used[u * self.m + v] = false;
            }
        }
        self.dfs(i + 1, code, used, found);
    }

    /// Full table over `0, middle…, 1` as global ids (`0`, `1..=m`, `m+1`).
    fn table(&self, code: u128) -> Vec<Option<u8>> {
        let n = self.m + 2;
        let one = n - 1;
        let g = |x: usize| x + 1;
        let mut table = vec![None; n * n];
        for x in 0..n {
            table[x] = Some(x as u8);
            table[x * n] = Some(x as u8);
        }
        for x in 0..self.m {
            table[g(x) * n + g(self.comp[x])] = Some(one as u8);
        }
        for (i, &t) in self.triples.iter().enumerate() {
            if code & (1 << i) == 0 {
                continue;
            }
            for (k, &(a, b)) in Self::pairs(t).iter().enumerate() {
                let rest = t[2 - k];
                let c = g(self.comp[rest]) as u8;
                table[g(a) * n + g(b)] = Some(c);
                table[g(b) * n + g(a)] = Some(c);
            }
        }
        table
    }

    fn canonical(&self, code: u128) -> u128 {
        self.images
            .iter()
            .map(|img| {
                let mut out = 0u128;
                for (i, &j) in img.iter().enumerate() {
                    if code & (1 << i) != 0 {
                        out |= 1 << j;
                    }
                }
                out
            })
            .min()
            .expect("identity relabelling")
    }

    fn names(&self) -> Vec<String> {
        let letter = |k: usize| {
            let c = (b'a' + (k % 26) as u8) as char;
            if k < 26 {
                c.to_string()
            } else {
                format!("{c}{}", k / 26)
            }
        };
        let mut names = vec!["0".to_string()];
        for x in 0..self.m {
            if x < 2 * self.p {
                let base = letter(x / 2);
                names.push(if x % 2 == 0 { base } else { format!("{base}'") });
            } else {
                names.push(letter(self.p + (x - 2 * self.p)));
            }
        }
        names.push("1".to_string());
        names
    }

    fn algebra(&self, code: u128) -> EffectAlgebra {
        let n = self.m + 2;
        let table = self
            .table(code)
            .into_iter()
            .map(|c| c.map(|c| ElementId::new(c as usize)))
            .collect();
        EffectAlgebra::from_table(self.names(), ElementId::new(0), ElementId::new(n - 1), table)
            .expect("associative triple systems are effect algebras")
    }
}

/// Relabellings of the middle elements that commute with the involution:
/// permute the pairs, swap inside pairs, permute the fixed points.
fn relabellings(p: usize, f: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for pair_perm in permutations(p) {
        for flips in 0..(1usize << p) {
            for fixed_perm in permutations(f) {
                let mut perm = vec![0; 2 * p + f];
                for (k, &target) in pair_perm.iter().enumerate() {
                    let flip = (flips >> k) & 1;
                    perm[2 * k] = 2 * target + flip;
                    perm[2 * k + 1] = 2 * target + (1 - flip);
                }
                for (j, &target) in fixed_perm.iter().enumerate() {
                    perm[2 * p + j] = 2 * p + target;
                }
                out.push(perm);
            }
        }
    }
    out
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(k - 1) {
        for pos in 0..k {
            let mut perm = rest.clone();
            perm.insert(pos, k - 1);
            out.push(perm);
        }
    }
    out
}

fn associative(table: &[Option<u8>], n: usize) -> bool {
    for a in 0..n {
        for b in 0..n {
            let Some(d) = table[a * n + b] else { continue };
            for c in 0..n {
                let Some(e) = table[d as usize * n + c] else { continue };
                match table[b * n + c] {
                    Some(f) if table[a * n + f as usize] == Some(e) => {}
                    _ => return false,
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::catalog;
    use crate::iso::find_isomorphism;

    #[test]
    fn smallest_sizes() {
        let two = enumerate_size(2).unwrap();
        assert_eq!(two.len(), 1);
        assert!(find_isomorphism(&two[0], &catalog::chain(1)).is_some());
        let three = enumerate_size(3).unwrap();
        assert_eq!(three.len(), 1);
        assert!(find_isomorphism(&three[0], &catalog::chain(2)).is_some());
    }

    #[test]
    fn four_elements() {
        let four = enumerate_size(4).unwrap();
        let b2 = catalog::boolean(2);
        let c3 = catalog::chain(3);
        let h = crate::construct::horizontal_sum(&catalog::chain(2), &catalog::chain(2)).unwrap();
        assert_eq!(four.len(), 3);
        for target in [&b2, &c3, &h] {
            assert_eq!(four.iter().filter(|e| find_isomorphism(e, target).is_some()).count(), 1);
        }
    }

    #[test]
    fn six_contains_r6() {
        let six = enumerate_size(6).unwrap();
        let r6 = catalog::r6();
        assert_eq!(six.iter().filter(|e| find_isomorphism(e, &r6).is_some()).count(), 1);
    }

    #[test]
    fn relabelling_counts() {
        assert_eq!(relabellings(2, 2).len(), 2 * 4 * 2);
        assert_eq!(relabellings(0, 4).len(), 24);
        assert_eq!(permutations(4).len(), 24);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(enumerate_all(9).is_err());
        assert!(enumerate_size(9).is_err());
    }
}
