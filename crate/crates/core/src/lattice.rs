//! Integer row lattices: Hermite normal form, membership solving and
//! intersection. Dimensions here are tiny (at most 4 columns), so the
//! straightforward extended-gcd elimination is used.

pub(crate) type Row = Vec<i128>;

fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = egcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

fn combine(x: i128, r1: &[i128], y: i128, r2: &[i128]) -> Row {
    r1.iter()
        .zip(r2)
        .map(|(a, b)| {
            x.checked_mul(*a)
                .and_then(|u| y.checked_mul(*b).and_then(|v| u.checked_add(v)))
                .expect("lattice arithmetic overflowed i128")
        })
        .collect()
}

/// Echelon form `H = U·G` of the row lattice spanned by `gens`.
///
/// `H` has positive pivots, entries above each pivot reduced into
/// `[0, pivot)`, and no zero rows. `U` holds the rows of the unimodular
/// transform that produce the rows of `H`.
pub(crate) fn hnf_with_transform(gens: &[Row]) -> (Vec<Row>, Vec<Row>) {
    let m = gens.len();
    if m == 0 {
        return (Vec::new(), Vec::new());
    }
    let ncols = gens[0].len();
    let mut h: Vec<Row> = gens.to_vec();
    let mut u: Vec<Row> = (0..m)
        .map(|i| (0..m).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut r = 0;
    for col in 0..ncols {
        if r == m {
            break;
        }
        for i in (r + 1)..m {
            if h[i][col] == 0 {
                continue;
            }
            let (a, b) = (h[r][col], h[i][col]);
            let (g, x, y) = egcd(a, b);
            let (p, q) = (-b / g, a / g);
            let (hr, hi) = (combine(x, &h[r], y, &h[i]), combine(p, &h[r], q, &h[i]));
            let (ur, ui) = (combine(x, &u[r], y, &u[i]), combine(p, &u[r], q, &u[i]));
            h[r] = hr;
            h[i] = hi;
            u[r] = ur;
            u[i] = ui;
        }
        if h[r][col] == 0 {
            continue;
        }
        if h[r][col] < 0 {
            h[r].iter_mut().for_each(|v| *v = -*v);
            u[r].iter_mut().for_each(|v| *v = -*v);
        }
        let pivot = h[r][col];
        for i in 0..r {
            let k = h[i][col].div_euclid(pivot);
            if k != 0 {
                h[i] = combine(1, &h[i].clone(), -k, &h[r]);
                u[i] = combine(1, &u[i].clone(), -k, &u[r]);
            }
        }
        r += 1;
    }
    h.truncate(r);
    u.truncate(r);
    (h, u)
}

pub(crate) fn hnf(gens: &[Row]) -> Vec<Row> {
    hnf_with_transform(gens).0
}

fn pivot_col(row: &[i128]) -> Option<usize> {
    row.iter().position(|v| *v != 0)
}

/// Integer coefficients `c` with `Σ c_i·gens_i = target`, if any exist.
pub(crate) fn solve(gens: &[Row], target: &[i128]) -> Option<Vec<i128>> {
    if gens.is_empty() {
        return target.iter().all(|v| *v == 0).then(Vec::new);
    }
    let (h, u) = hnf_with_transform(gens);
    let mut t: Row = target.to_vec();
    let mut w = vec![0i128; h.len()];
    for (k, row) in h.iter().enumerate() {
        let pc = pivot_col(row).expect("echelon rows are nonzero");
        if t[..pc].iter().any(|v| *v != 0) {
            return None;
        }
        if t[pc] % row[pc] != 0 {
            return None;
        }
        w[k] = t[pc] / row[pc];
        t = combine(1, &t, -w[k], row);
    }
    if t.iter().any(|v| *v != 0) {
        return None;
    }
    let mut coeffs = vec![0i128; gens.len()];
    for (k, wk) in w.iter().enumerate() {
        for (j, c) in coeffs.iter_mut().enumerate() {
            *c += wk * u[k][j];
        }
    }
    Some(coeffs)
}

/// Echelon basis of the intersection of two row lattices of equal width.
pub(crate) fn intersect(a: &[Row], b: &[Row]) -> Vec<Row> {
    let k = a.first().or(b.first()).map_or(0, |r| r.len());
    let mut stacked: Vec<Row> = Vec::with_capacity(a.len() + b.len());
    for r in a {
        stacked.push(r.iter().chain(r.iter()).copied().collect());
    }
    for r in b {
        stacked.push(r.iter().copied().chain(std::iter::repeat_n(0, k)).collect());
    }
    let h = hnf(&stacked);
    let inner: Vec<Row> = h
        .into_iter()
        .filter(|row| row[..k].iter().all(|v| *v == 0))
        .map(|row| row[k..].to_vec())
        .collect();
    hnf(&inner)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_of_integers() {
        assert_eq!(hnf(&[vec![4], vec![6]]), vec![vec![2]]);
        assert_eq!(hnf(&[vec![0], vec![-3]]), vec![vec![3]]);
    }

    #[test]
    fn hnf_two_dim() {
        let h = hnf(&[vec![1, 1], vec![2, 0], vec![0, 2]]);
        assert_eq!(h, vec![vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn transform_reproduces_rows() {
        let g = vec![vec![3, 5], vec![6, -1], vec![-2, 7]];
        let (h, u) = hnf_with_transform(&g);
        for (hr, ur) in h.iter().zip(&u) {
            let mut acc = vec![0i128; 2];
            for (c, gr) in ur.iter().zip(&g) {
                acc[0] += c * gr[0];
                acc[1] += c * gr[1];
            }
            assert_eq!(&acc, hr);
        }
    }

    #[test]
    fn solve_and_intersect() {
        let c = solve(&[vec![4], vec![6]], &[10]).unwrap();
        assert_eq!(c[0] * 4 + c[1] * 6, 10);
        assert!(solve(&[vec![4], vec![6]], &[3]).is_none());
        assert_eq!(intersect(&[vec![4]], &[vec![6]]), vec![vec![12]]);
        let i = intersect(&[vec![2, 0], vec![0, 1]], &[vec![1, 0], vec![0, 3]]);
        assert_eq!(i, vec![vec![2, 0], vec![0, 3]]);
    }
}
