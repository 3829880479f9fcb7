use crate::error::LaurentError;
use crate::poly::LaurentPoly;

pub type LaurentMatrix = Vec<Vec<LaurentPoly>>;

const COFACTOR_LIMIT: usize = 4;

fn check_square(m: &[Vec<LaurentPoly>]) -> Result<usize, LaurentError> {
    let n = m.len();
    for (row, r) in m.iter().enumerate() {
        if r.len() != n {
            return Err(LaurentError::NotSquare {
                rows: n,
                row,
                len: r.len(),
            });
        }
    }
    Ok(n)
}

/// Exact determinant: cofactor expansion up to 4x4, fraction-free elimination
/// above. Small sizes are cross-checked against elimination in debug builds.
pub fn det_laurent(m: &[Vec<LaurentPoly>]) -> Result<LaurentPoly, LaurentError> {
    let n = check_square(m)?;
    if n <= COFACTOR_LIMIT {
        let d = cofactor(m);
        debug_assert_eq!(d, bareiss(m), "determinant algorithms disagree");
        Ok(d)
    } else {
        Ok(bareiss(m))
    }
}

/// Laplace expansion along the first row.
pub fn det_cofactor(m: &[Vec<LaurentPoly>]) -> Result<LaurentPoly, LaurentError> {
    check_square(m)?;
    Ok(cofactor(m))
}

/// Bareiss fraction-free elimination; every division is exact in `Z[t, t^-1]`.
pub fn det_bareiss(m: &[Vec<LaurentPoly>]) -> Result<LaurentPoly, LaurentError> {
    check_square(m)?;
    Ok(bareiss(m))
}

fn cofactor(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = m.len();
    match n {
        0 => return LaurentPoly::one(),
        1 => return m[0][0].clone(),
        _ => {}
    }
    let mut acc = LaurentPoly::zero();
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<LaurentPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = entry * &cofactor(&minor);
        if j % 2 == 0 {
            acc += &term;
        } else {
            acc -= &term;
        }
    }
    acc
}

fn bareiss(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut a: Vec<Vec<LaurentPoly>> = m.to_vec();
    let mut prev = LaurentPoly::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return LaurentPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = LaurentPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Matrix product; panics on incompatible shapes.
pub fn mat_mul(a: &[Vec<LaurentPoly>], b: &[Vec<LaurentPoly>]) -> LaurentMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "incompatible matrix shapes");
            (0..cols)
                .map(|j| {
                    (0..inner)
                        .map(|k| &row[k] * &b[k][j])
                        .fold(LaurentPoly::zero(), |acc, x| acc + x)
                })
                .collect()
        })
        .collect()
}
