//! Dense matrices over `ℤ/m` and their Smith normal form.
//!
//! `ℤ/m` is not a domain, so the elimination only uses unimodular moves:
//! swaps, adding multiples, scaling by units and 2×2 Bezout blocks of
//! determinant one. The diagonal entries come out as divisors of `m`
//! (zero is stored as `0`); no divisibility chain is enforced.

use num_integer::Integer;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMatrix {
    rows: usize,
    cols: usize,
    modulus: i64,
    data: Vec<i64>,
}

impl ModMatrix {
    pub fn zeros(rows: usize, cols: usize, modulus: i64) -> Self {
        assert!(modulus > 0);
        ModMatrix {
            rows,
            cols,
            modulus,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, modulus: i64) -> Self {
        let mut m = Self::zeros(n, n, modulus);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>], modulus: i64) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c, modulus);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v.rem_euclid(self.modulus);
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: i64) {
        let k = i * self.cols + j;
        self.data[k] = (self.data[k] + v).rem_euclid(self.modulus);
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols);
        let m = self.modulus as i128;
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                let s: i128 = row
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as i128 * b as i128)
                    .sum();
                s.rem_euclid(m) as i64
            })
            .collect()
    }

    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = ModMatrix::zeros(self.rows, other.cols, self.modulus);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        out.add_to(
                            i,
                            j,
                            ((a as i128 * b as i128) % self.modulus as i128) as i64,
                        );
                    }
                }
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    fn mulmod(&self, a: i64, b: i64) -> i64 {
        ((a as i128 * b as i128).rem_euclid(self.modulus as i128)) as i64
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `(row_a, row_b) ← (s·row_a + t·row_b, x·row_a + y·row_b)`.
    fn combine_rows(&mut self, a: usize, b: usize, s: i64, t: i64, x: i64, y: i64) {
        for j in 0..self.cols {
            let (u, v) = (self.get(a, j), self.get(b, j));
            if u == 0 && v == 0 {
                continue;
            }
            let na = self.mulmod(s, u) + self.mulmod(t, v);
            let nb = self.mulmod(x, u) + self.mulmod(y, v);
            self.set(a, j, na);
            self.set(b, j, nb);
        }
    }

    /// `(col_a, col_b) ← (s·col_a + t·col_b, x·col_a + y·col_b)`.
    fn combine_cols(&mut self, a: usize, b: usize, s: i64, t: i64, x: i64, y: i64) {
        for i in 0..self.rows {
            let (u, v) = (self.get(i, a), self.get(i, b));
            if u == 0 && v == 0 {
                continue;
            }
            let na = self.mulmod(s, u) + self.mulmod(t, v);
            let nb = self.mulmod(x, u) + self.mulmod(y, v);
            self.set(i, a, na);
            self.set(i, b, nb);
        }
    }
}

/// `p · a · q = d` with `d` diagonal. Transforms are present only if requested.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub modulus: i64,
    /// Diagonal entries, each a divisor of the modulus or `0`.
    pub diag: Vec<i64>,
    pub p: Option<ModMatrix>,
    pub p_inv: Option<ModMatrix>,
    pub q: Option<ModMatrix>,
    pub q_inv: Option<ModMatrix>,
}

impl SmithForm {
    /// `gcd(d_i, m)` for diagonal position `i`, treating positions past the diagonal as zero.
    pub fn gcd_at(&self, i: usize) -> i64 {
        let d = self.diag.get(i).copied().unwrap_or(0);
        d.gcd(&self.modulus)
    }
}

/// Which transforms to track.
#[derive(Clone, Copy, Debug, Default)]
pub struct Track {
    pub rows: bool,
    pub cols: bool,
}

struct Transforms {
    p: Option<ModMatrix>,
    p_inv: Option<ModMatrix>,
    q: Option<ModMatrix>,
    q_inv: Option<ModMatrix>,
}

impl Transforms {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if let Some(p) = &mut self.p {
            p.swap_rows(a, b);
        }
        if let Some(pi) = &mut self.p_inv {
            pi.swap_cols(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if let Some(q) = &mut self.q {
            q.swap_cols(a, b);
        }
        if let Some(qi) = &mut self.q_inv {
            qi.swap_rows(a, b);
        }
    }

    // The 2×2 block [[s,t],[x,y]] has determinant one; its inverse is [[y,-t],[-x,s]].
    fn combine_rows(&mut self, a: usize, b: usize, s: i64, t: i64, x: i64, y: i64) {
        if let Some(p) = &mut self.p {
            p.combine_rows(a, b, s, t, x, y);
        }
        if let Some(pi) = &mut self.p_inv {
            pi.combine_cols(a, b, y, -x, -t, s);
        }
    }

    fn combine_cols(&mut self, a: usize, b: usize, s: i64, t: i64, x: i64, y: i64) {
        if let Some(q) = &mut self.q {
            q.combine_cols(a, b, s, t, x, y);
        }
        if let Some(qi) = &mut self.q_inv {
            qi.combine_rows(a, b, y, -x, -t, s);
        }
    }

    fn scale_row(&mut self, a: usize, u: i64, u_inv: i64) {
        if let Some(p) = &mut self.p {
            p.scale_row_in_place(a, u);
        }
        if let Some(pi) = &mut self.p_inv {
            pi.scale_col_in_place(a, u_inv);
        }
    }
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    (e.gcd, e.x, e.y)
}

fn mod_inverse(u: i64, m: i64) -> i64 {
    let (g, x, _) = ext_gcd(u.rem_euclid(m), m);
    debug_assert_eq!(g, 1);
    x.rem_euclid(m)
}

/// A unit `u` mod `m` with `u·v ≡ gcd(v, m)`.
fn unit_normalizer(v: i64, m: i64) -> i64 {
    let g = v.gcd(&m);
    let (v1, m1) = (v / g, m / g);
    // v1 is a unit mod m1; lift its inverse to a unit mod m
    let w = mod_inverse(v1, m1.max(1));
    let mut u = w;
    while u.gcd(&m) != 1 {
        u += m1.max(1);
    }
    u.rem_euclid(m.max(1))
}

impl ModMatrix {
    fn scale_row_in_place(&mut self, a: usize, u: i64) {
        for j in 0..self.cols {
            let v = self.get(a, j);
            if v != 0 {
                let w = self.mulmod(u, v);
                self.set(a, j, w);
            }
        }
    }

    fn scale_col_in_place(&mut self, b: usize, u: i64) {
        for i in 0..self.rows {
            let v = self.get(i, b);
            if v != 0 {
                let w = self.mulmod(u, v);
                self.set(i, b, w);
            }
        }
    }

    pub fn smith(&self, track: Track) -> SmithForm {
        let m = self.modulus;
        let mut a = self.clone();
        let mut tr = Transforms {
            p: track.rows.then(|| ModMatrix::identity(self.rows, m)),
            p_inv: track.rows.then(|| ModMatrix::identity(self.rows, m)),
            q: track.cols.then(|| ModMatrix::identity(self.cols, m)),
            q_inv: track.cols.then(|| ModMatrix::identity(self.cols, m)),
        };
        let n = self.rows.min(self.cols);
        let mut diag = Vec::with_capacity(n);
        for t in 0..n {
            // pivot with the smallest gcd against m
            let mut best: Option<(i64, usize, usize)> = None;
            'search: for i in t..a.rows {
                for j in t..a.cols {
                    let v = a.get(i, j);
                    if v == 0 {
                        continue;
                    }
                    let g = v.gcd(&m);
                    if best.map_or(true, |(bg, _, _)| g < bg) {
                        best = Some((g, i, j));
                        if g == 1 {
                            break 'search;
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                diag.resize(n, 0);
                break;
            };
            a.swap_rows(t, pi);
            tr.swap_rows(t, pi);
            a.swap_cols(t, pj);
            tr.swap_cols(t, pj);
            let u = unit_normalizer(a.get(t, t), m);
            if u != 1 {
                a.scale_row_in_place(t, u);
                tr.scale_row(t, u, mod_inverse(u, m));
            }
            loop {
                let mut dirty = false;
                for i in t + 1..a.rows {
                    let v = a.get(i, t);
                    if v == 0 {
                        continue;
                    }
                    let g = a.get(t, t);
                    if v % g == 0 {
                        let k = (m - v / g) % m;
                        a.combine_rows(t, i, 1, 0, k, 1);
                        tr.combine_rows(t, i, 1, 0, k, 1);
                    } else {
                        let (d, s, x) = ext_gcd(g, v);
                        let (p, q) = (-(v / d), g / d);
                        a.combine_rows(t, i, s, x, p, q);
                        tr.combine_rows(t, i, s, x, p, q);
                    }
                }
                for j in t + 1..a.cols {
                    let v = a.get(t, j);
                    if v == 0 {
                        continue;
                    }
                    let g = a.get(t, t);
                    if v % g == 0 {
                        let k = (m - v / g) % m;
                        a.combine_cols(t, j, 1, 0, k, 1);
                        tr.combine_cols(t, j, 1, 0, k, 1);
                    } else {
                        let (d, s, x) = ext_gcd(g, v);
                        let (p, q) = (-(v / d), g / d);
                        a.combine_cols(t, j, s, x, p, q);
                        tr.combine_cols(t, j, s, x, p, q);
                        dirty = true;
                    }
                }
                if !dirty {
                    break;
                }
            }
            diag.push(a.get(t, t));
        }
        SmithForm {
            modulus: m,
            diag,
            p: tr.p,
            p_inv: tr.p_inv,
            q: tr.q,
            q_inv: tr.q_inv,
        }
    }

    /// Some `x` with `self · x = b`, if one exists.
    pub fn solve(&self, b: &[i64]) -> Option<Vec<i64>> {
        let snf = self.smith(Track {
            rows: true,
            cols: true,
        });
        solve_with(&snf, b)
    }
}

/// Solves `a x = b` given the Smith form of `a` with both transforms.
pub fn solve_with(snf: &SmithForm, b: &[i64]) -> Option<Vec<i64>> {
    let p = snf.p.as_ref().expect("row transform");
    let q = snf.q.as_ref().expect("column transform");
    let w = p.mul_vec(b);
    let mut y = vec![0i64; q.rows()];
    for (i, &wi) in w.iter().enumerate() {
        let d = snf.diag.get(i).copied().unwrap_or(0);
        if d == 0 {
            if wi != 0 {
                return None;
            }
        } else {
            if wi % d != 0 {
                return None;
            }
            y[i] = wi / d;
        }
    }
    Some(q.mul_vec(&y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, r: usize, c: usize, m: i64) -> ModMatrix {
        let rows: Vec<Vec<i64>> = (0..r)
            .map(|_| {
                (0..c)
                    .map(|_| {
                        if rng.gen_bool(0.4) {
                            rng.gen_range(0..m)
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        ModMatrix::from_rows(&rows, m)
    }

    fn is_diagonal_with(d: &ModMatrix, diag: &[i64]) -> bool {
        (0..d.rows()).all(|i| {
            (0..d.cols()).all(|j| {
                d.get(i, j)
                    == if i == j {
                        diag.get(i).copied().unwrap_or(0)
                    } else {
                        0
                    }
            })
        })
    }

    #[test]
    fn transforms_diagonalize() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &m in &[2i64, 4, 6, 8, 9, 12, 36, 64] {
            for _ in 0..30 {
                let (r, c) = (rng.gen_range(1..7), rng.gen_range(1..7));
                let a = random_matrix(&mut rng, r, c, m);
                let s = a.smith(Track {
                    rows: true,
                    cols: true,
                });
                let (p, pi, q, qi) = (
                    s.p.unwrap(),
                    s.p_inv.unwrap(),
                    s.q.unwrap(),
                    s.q_inv.unwrap(),
                );
                assert_eq!(p.mul(&pi), ModMatrix::identity(r, m));
                assert_eq!(q.mul(&qi), ModMatrix::identity(c, m));
                let d = p.mul(&a).mul(&q);
                assert!(is_diagonal_with(&d, &s.diag), "{a:?} -> {d:?}");
                assert!(s.diag.iter().all(|&x| x == 0 || m % x == 0));
            }
        }
    }

    // Oracle: count solutions of a x = 0 by brute force and compare with ∏ gcd(d_i, m).
    #[test]
    fn kernel_size_matches_diagonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &m in &[4i64, 6, 8] {
            for _ in 0..20 {
                let (r, c) = (rng.gen_range(1..4), rng.gen_range(1..4));
                let a = random_matrix(&mut rng, r, c, m);
                let s = a.smith(Track::default());
                let predicted: i64 = (0..c).map(|i| s.gcd_at(i)).product();
                let mut count = 0;
                let total = (m as usize).pow(c as u32);
                for code in 0..total {
                    let x: Vec<i64> = (0..c)
                        .map(|k| ((code / (m as usize).pow(k as u32)) % m as usize) as i64)
                        .collect();
                    if a.mul_vec(&x).iter().all(|&v| v == 0) {
                        count += 1;
                    }
                }
                assert_eq!(count, predicted);
            }
        }
    }

    #[test]
    fn solves_consistent_systems() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let m = [4i64, 6, 12][rng.gen_range(0..3)];
            let a = random_matrix(&mut rng, 5, 4, m);
            let x: Vec<i64> = (0..4).map(|_| rng.gen_range(0..m)).collect();
            let b = a.mul_vec(&x);
            let y = a.solve(&b).expect("consistent");
            assert_eq!(a.mul_vec(&y), b);
        }
        let a = ModMatrix::from_rows(&[vec![2]], 4);
        assert!(a.solve(&[1]).is_none());
    }
}
