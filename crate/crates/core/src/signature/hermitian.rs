//! Inertia of symmetric matrices: exact over the rationals, and certified
//! over interval entries by symmetric elimination with 1×1 and 2×2 pivots
//! (Bunch–Kaufman). Updates skip structural zeros, so banded input stays
//! cheap.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::interval::Interval;

/// `(n₊, n₋, n₀)` of an integer symmetric matrix.
pub fn exact_inertia(m: &[Vec<i64>]) -> (usize, usize, usize) {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| row.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect())
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    while let Some(&r) = active.first() {
        if !a[r][r].is_zero() {
            if a[r][r].is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            exact_one(&mut a, &mut active, r);
            continue;
        }
        let Some(&k) = active[1..].iter().find(|&&k| !a[r][k].is_zero()) else {
            zero += 1;
            active.remove(0);
            continue;
        };
        if !a[k][k].is_zero() {
            if a[k][k].is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            exact_one(&mut a, &mut active, k);
        } else {
            // [[0, b], [b, 0]] is hyperbolic
            pos += 1;
            neg += 1;
            exact_two(&mut a, &mut active, r, k);
        }
    }
    (pos, neg, zero)
}

fn exact_one(a: &mut [Vec<BigRational>], active: &mut Vec<usize>, r: usize) {
    active.retain(|&i| i != r);
    let nz: Vec<usize> = active.iter().copied().filter(|&i| !a[i][r].is_zero()).collect();
    let l: Vec<BigRational> = nz.iter().map(|&i| &a[i][r] / &a[r][r]).collect();
    for (x, &i) in nz.iter().enumerate() {
        for &j in &nz[x..] {
            let v = &a[i][j] - &l[x] * &a[r][j];
            if i != j {
                a[j][i] = v.clone();
            }
            a[i][j] = v;
        }
    }
}

/// Pivot on `[[0, b], [b, 0]]` at rows `r, k`.
fn exact_two(a: &mut [Vec<BigRational>], active: &mut Vec<usize>, r: usize, k: usize) {
    active.retain(|&i| i != r && i != k);
    let b = a[r][k].clone();
    let nz: Vec<usize> = active
        .iter()
        .copied()
        .filter(|&i| !a[i][r].is_zero() || !a[i][k].is_zero())
        .collect();
    // [a_ir a_ik] E⁻¹ with E⁻¹ = [[-a_kk, b], [b, 0]] / b², a_kk possibly nonzero
    let akk = a[k][k].clone();
    let b2 = &b * &b;
    let w: Vec<(BigRational, BigRational)> = nz
        .iter()
        .map(|&i| {
            let wr = (&a[i][k] * &b - &a[i][r] * &akk) / &b2;
            let wk = &a[i][r] / &b;
            (wr, wk)
        })
        .collect();
    for (x, &i) in nz.iter().enumerate() {
        for &j in &nz[x..] {
            let v = &a[i][j] - (&w[x].0 * &a[r][j] + &w[x].1 * &a[k][j]);
            if i != j {
                a[j][i] = v.clone();
            }
            a[i][j] = v;
        }
    }
}

const ALPHA: f64 = 0.6404;

/// `(n₊, n₋)` of a symmetric interval matrix, certified for every matrix
/// in the enclosure; `None` when some pivot decision cannot be certified.
pub fn certified_inertia<I: Interval>(mut a: Vec<Vec<I>>) -> Option<(usize, usize)> {
    let mut active: Vec<usize> = (0..a.len()).collect();
    let (mut pos, mut neg) = (0, 0);
    let mut tally = |s: i8, k: usize| {
        if s > 0 {
            pos += k;
        } else {
            neg += k;
        }
    };
    while let Some(&r) = active.first() {
        let (lambda, j) = column_max(&a, &active, r);
        let arr = a[r][r].magnitude();
        let r_sign = a[r][r].sign();
        if j.is_none() || (r_sign.is_some() && arr >= ALPHA * lambda) {
            tally(eliminate_one(&mut a, &mut active, r)?, 1);
            continue;
        }
        let j = j?;
        let (sigma, _) = column_max(&a, &active, j);
        if r_sign.is_some() && arr * sigma >= ALPHA * lambda * lambda {
            tally(eliminate_one(&mut a, &mut active, r)?, 1);
            continue;
        }
        let j_sign = a[j][j].sign();
        if j_sign.is_some() && a[j][j].magnitude() >= ALPHA * sigma {
            tally(eliminate_one(&mut a, &mut active, j)?, 1);
            continue;
        }
        let det = a[r][r].mul(&a[j][j]).sub(&a[r][j].mul(&a[r][j]));
        match det.sign() {
            Some(-1) => {
                eliminate_two(&mut a, &mut active, r, j, &det)?;
                tally(1, 1);
                tally(-1, 1);
            }
            Some(_) => {
                let s = r_sign.or(j_sign)?;
                eliminate_two(&mut a, &mut active, r, j, &det)?;
                tally(s, 2);
            }
            None if r_sign.is_some() => tally(eliminate_one(&mut a, &mut active, r)?, 1),
            None if j_sign.is_some() => tally(eliminate_one(&mut a, &mut active, j)?, 1),
            None => return None,
        }
    }
    Some((pos, neg))
}

/// Largest off-diagonal magnitude in column `r` among the active rows.
fn column_max<I: Interval>(a: &[Vec<I>], active: &[usize], r: usize) -> (f64, Option<usize>) {
    let mut best = (0.0, None);
    for &i in active {
        if i != r && !a[i][r].is_exact_zero() {
            let m = a[i][r].magnitude();
            if best.1.is_none() || m > best.0 {
                best = (m, Some(i));
            }
        }
    }
    best
}

fn eliminate_one<I: Interval>(a: &mut [Vec<I>], active: &mut Vec<usize>, r: usize) -> Option<i8> {
    let d = a[r][r].clone();
    let s = d.sign()?;
    active.retain(|&i| i != r);
    let nz: Vec<usize> = active.iter().copied().filter(|&i| !a[i][r].is_exact_zero()).collect();
    let l: Vec<I> = nz.iter().map(|&i| a[i][r].div(&d)).collect::<Option<_>>()?;
    for (x, &i) in nz.iter().enumerate() {
        for &j in &nz[x..] {
            let v = a[i][j].sub(&l[x].mul(&a[r][j]));
            if i != j {
                a[j][i] = v.clone();
            }
            a[i][j] = v;
        }
    }
    Some(s)
}

fn eliminate_two<I: Interval>(a: &mut [Vec<I>], active: &mut Vec<usize>, j: usize, k: usize, det: &I) -> Option<()> {
    let (ajj, ajk, akk) = (a[j][j].clone(), a[j][k].clone(), a[k][k].clone());
    active.retain(|&i| i != j && i != k);
    let nz: Vec<usize> = active
        .iter()
        .copied()
        .filter(|&i| !a[i][j].is_exact_zero() || !a[i][k].is_exact_zero())
        .collect();
    // rows of [a_ij a_ik] · E⁻¹
    let mut w = Vec::with_capacity(nz.len());
    for &i in &nz {
        let wj = a[i][j].mul(&akk).sub(&a[i][k].mul(&ajk)).div(det)?;
        let wk = a[i][k].mul(&ajj).sub(&a[i][j].mul(&ajk)).div(det)?;
        w.push((wj, wk));
    }
    for (x, &i) in nz.iter().enumerate() {
        let (wj, wk) = &w[x];
        for &m in &nz[x..] {
            let v = a[i][m].sub(&wj.mul(&a[j][m]).add(&wk.mul(&a[k][m])));
            if i != m {
                a[m][i] = v.clone();
            }
            a[i][m] = v;
        }
    }
    Some(())
}

#[cfg(test)]
mod tests {
    use super::super::interval::{F64Interval, FixedInterval};
    use super::*;

    fn f64_matrix(m: &[Vec<i64>]) -> Vec<Vec<F64Interval>> {
        m.iter()
            .map(|row| row.iter().map(|&v| F64Interval::new(v as f64, v as f64)).collect())
            .collect()
    }

    fn fixed_matrix(m: &[Vec<i64>]) -> Vec<Vec<FixedInterval>> {
        m.iter().map(|row| row.iter().map(|&v| FixedInterval::exact_int(v, 64)).collect()).collect()
    }

    #[test]
    fn exact_examples() {
        assert_eq!(exact_inertia(&[vec![-2, 1], vec![1, -2]]), (0, 2, 0));
        assert_eq!(exact_inertia(&[vec![0, 1], vec![1, 0]]), (1, 1, 0));
        assert_eq!(exact_inertia(&[vec![1, 1], vec![1, 1]]), (1, 0, 1));
        assert_eq!(exact_inertia(&[vec![0, 0], vec![0, 0]]), (0, 0, 2));
        assert_eq!(exact_inertia(&[]), (0, 0, 0));
        let m = vec![vec![0, 2, 0], vec![2, 0, 1], vec![0, 1, 0]];
        assert_eq!(exact_inertia(&m), (1, 1, 1));
    }

    #[test]
    fn certified_examples() {
        let hyperbolic = vec![vec![0, 3], vec![3, 0]];
        assert_eq!(certified_inertia(f64_matrix(&hyperbolic)), Some((1, 1)));
        assert_eq!(certified_inertia(fixed_matrix(&hyperbolic)), Some((1, 1)));
        let m = vec![vec![4, 1, 0], vec![1, -3, 2], vec![0, 2, 5]];
        assert_eq!(certified_inertia(f64_matrix(&m)), Some(exact_inertia(&m)).map(|(p, n, _)| (p, n)));
        assert_eq!(certified_inertia(fixed_matrix(&m)), Some((2, 1)));
        assert_eq!(certified_inertia(f64_matrix(&[vec![1, 1], vec![1, 1]])), None);
    }

    #[test]
    fn certified_agrees_with_exact_on_random_matrices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.gen_range(1..12);
            let mut m = vec![vec![0i64; n]; n];
            for i in 0..n {
                for j in i..n {
                    let v = rng.gen_range(-3..=3);
                    m[i][j] = v;
                    m[j][i] = v;
                }
            }
            let (p, q, z) = exact_inertia(&m);
            match certified_inertia(fixed_matrix(&m)) {
                Some(r) => assert_eq!(r, (p, q), "{m:?}"),
                None => assert!(z > 0, "stalled on a nonsingular matrix {m:?}"),
            }
        }
    }
}
