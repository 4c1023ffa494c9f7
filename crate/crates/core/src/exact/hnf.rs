use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Row-style Hermite normal form `U * M = H` with `U` unimodular.
///
/// `h` has positive pivots that move strictly right as the row index grows,
/// entries above each pivot reduced into `[0, pivot)`, and all zero rows at
/// the bottom. `h` is the canonical representative of the row lattice of the
/// input, so two generating sets span the same lattice iff their `h` parts
/// are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteForm {
    pub h: Vec<Vec<BigInt>>,
    pub u: Vec<Vec<BigInt>>,
    pub rank: usize,
}

pub fn hermite_normal_form(rows: &[Vec<BigInt>]) -> HermiteForm {
    let m = rows.len();
    let n = rows.first().map_or(0, |r| r.len());
    let mut h: Vec<Vec<BigInt>> = rows.to_vec();
    for row in &h {
        assert_eq!(row.len(), n, "ragged row list");
    }
    let mut u: Vec<Vec<BigInt>> = (0..m)
        .map(|i| {
            let mut e = vec![BigInt::zero(); m];
            e[i] = BigInt::one();
            e
        })
        .collect();

    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !h[i][c].is_zero()) else {
            continue;
        };
        h.swap(r, p);
        u.swap(r, p);
        // Clear the column below the pivot with 2x2 unimodular combinations:
        // with g = s*x + t*y the block [s t; -y/g x/g] has determinant 1 and
        // sends (x, y) to (g, 0).
        for i in r + 1..m {
            if h[i][c].is_zero() {
                continue;
            }
            let x = h[r][c].clone();
            let y = h[i][c].clone();
            let ext = x.extended_gcd(&y);
            let (g, s, t) = (ext.gcd, ext.x, ext.y);
            let a = &x / &g;
            let b = &y / &g;
            let (hr, hi) = h.split_pair(r, i);
            combine(hr, hi, &s, &t, &a, &b);
            let (ur, ui) = u.split_pair(r, i);
            combine(ur, ui, &s, &t, &a, &b);
        }
        if h[r][c].is_negative() {
            negate(&mut h[r]);
            negate(&mut u[r]);
        }
        // Reduce entries above the pivot into [0, pivot).
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            if !q.is_zero() {
                let (hi, hr) = h.split_pair(i, r);
                sub_mul(hi, hr, &q);
                let (ui, ur) = u.split_pair(i, r);
                sub_mul(ui, ur, &q);
            }
        }
        r += 1;
    }
    HermiteForm { h, u, rank: r }
}

/// row_a, row_b <- s*row_a + t*row_b, -b*row_a + a*row_b
fn combine(ra: &mut [BigInt], rb: &mut [BigInt], s: &BigInt, t: &BigInt, a: &BigInt, b: &BigInt) {
    for (ea, eb) in ra.iter_mut().zip(rb.iter_mut()) {
        let na = s * &*ea + t * &*eb;
        let nb = a * &*eb - b * &*ea;
        *ea = na;
        *eb = nb;
    }
}

fn sub_mul(target: &mut [BigInt], source: &[BigInt], q: &BigInt) {
    for (t, s) in target.iter_mut().zip(source) {
        *t -= q * s;
    }
}

fn negate(row: &mut [BigInt]) {
    for e in row {
        *e = -std::mem::take(e);
    }
}

/// Borrow two distinct rows of a `Vec<Vec<_>>` mutably at once.
trait SplitPair<T> {
    fn split_pair(&mut self, a: usize, b: usize) -> (&mut [T], &mut [T]);
}

impl<T> SplitPair<T> for Vec<Vec<T>> {
    fn split_pair(&mut self, a: usize, b: usize) -> (&mut [T], &mut [T]) {
        assert_ne!(a, b);
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.split_at_mut(hi);
        let first = head[lo].as_mut_slice();
        let second = tail[0].as_mut_slice();
        if a < b {
            (first, second)
        } else {
            (second, first)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::IntMatrix;

    fn rows(data: &[&[i64]]) -> Vec<Vec<BigInt>> {
        data.iter()
            .map(|r| r.iter().map(|&e| BigInt::from(e)).collect())
            .collect()
    }

    fn check_u_times_m(rows_in: &[Vec<BigInt>], hf: &HermiteForm) {
        let m = rows_in.len();
        let n = rows_in[0].len();
        for i in 0..m {
            for j in 0..n {
                let s: BigInt = (0..m).map(|k| &hf.u[i][k] * &rows_in[k][j]).sum();
                assert_eq!(s, hf.h[i][j], "U*M != H at ({i},{j})");
            }
        }
    }

    #[test]
    fn hnf_of_identity_is_identity() {
        let m = rows(&[&[1, 0], &[0, 1]]);
        let hf = hermite_normal_form(&m);
        assert_eq!(hf.h, m);
        assert_eq!(hf.rank, 2);
    }

    #[test]
    fn hnf_canonicalizes_generating_sets() {
        // two generating sets of the same rank-2 lattice in Z^3
        let g1 = rows(&[&[2, 0, 1], &[0, 3, 1]]);
        let g2 = rows(&[&[2, 3, 2], &[2, -3, 0], &[4, 3, 3]]);
        let h1 = hermite_normal_form(&g1);
        let h2 = hermite_normal_form(&g2);
        assert_eq!(h1.rank, 2);
        assert_eq!(h2.rank, 2);
        assert_eq!(h1.h[..2], h2.h[..2]);
        check_u_times_m(&g1, &h1);
        check_u_times_m(&g2, &h2);
    }

    #[test]
    fn hnf_u_is_unimodular() {
        let g = rows(&[&[6, 4, 2, 0], &[0, 0, 0, 0], &[2, 1, 1, 7], &[9, 3, 0, 1]]);
        let hf = hermite_normal_form(&g);
        check_u_times_m(&g, &hf);
        let u = IntMatrix::from_rows(hf.u.clone()).unwrap();
        assert!(u.det().abs() == BigInt::from(1));
    }

    #[test]
    fn hnf_pivots_are_positive_and_reduced() {
        let g = rows(&[&[-4, 8], &[6, 2]]);
        let hf = hermite_normal_form(&g);
        assert_eq!(hf.rank, 2);
        for (i, row) in hf.h.iter().enumerate().take(hf.rank) {
            let p = row.iter().position(|e| !e.is_zero()).unwrap();
            assert!(row[p] > BigInt::from(0));
            for above in hf.h.iter().take(i) {
                assert!(above[p] >= BigInt::from(0) && above[p] < row[p]);
            }
        }
    }

    #[test]
    fn hnf_handles_zero_matrix() {
        let g = rows(&[&[0, 0, 0], &[0, 0, 0]]);
        let hf = hermite_normal_form(&g);
        assert_eq!(hf.rank, 0);
        assert_eq!(hf.h, g);
    }
}
