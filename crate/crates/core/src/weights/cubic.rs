//! The operator of the four-legged H diagram on S^2 L modulo the Casimir line.

use super::{universal_dim, LieAlgebraSpec, VogelParams};
use crate::{Error, Result, Q};
use num_traits::{Signed, Zero};

type Mat = Vec<Vec<Q>>;

fn mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let m = b[0].len();
    let mut c = vec![vec![Q::zero(); m]; n];
    for i in 0..n {
        for k in 0..b.len() {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[k][j].is_zero() {
                    c[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    c
}

/// Psi^{ab}_{cd} = g_ij f^{ia}_c f^{jb}_d as a matrix acting on components
/// v^{cd}, indexed by (a*d + b, c*d + d').
pub fn psi_matrix(l: &LieAlgebraSpec) -> Mat {
    let d = l.dim_l;
    let gi = &l.inverse_metric;
    // h[a][i][c] = f^{ia}_c = g^{ii'} g^{aa'} f_{i'a'c}
    let mut h = vec![vec![vec![Q::zero(); d]; d]; d];
    for a in 0..d {
        for i in 0..d {
            for c in 0..d {
                let mut s = Q::zero();
                for i2 in 0..d {
                    if gi[i][i2].is_zero() {
                        continue;
                    }
                    for a2 in 0..d {
                        if !gi[a][a2].is_zero() && !l.f_lower[i2][a2][c].is_zero() {
                            s += &gi[i][i2] * &gi[a][a2] * &l.f_lower[i2][a2][c];
                        }
                    }
                }
                h[a][i][c] = s;
            }
        }
    }
    let mut m = vec![vec![Q::zero(); d * d]; d * d];
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                for e in 0..d {
                    let mut s = Q::zero();
                    for i in 0..d {
                        if h[a][i][c].is_zero() {
                            continue;
                        }
                        for j in 0..d {
                            if !l.metric[i][j].is_zero() && !h[b][j][e].is_zero() {
                                s += &l.metric[i][j] * &h[a][i][c] * &h[b][j][e];
                            }
                        }
                    }
                    m[a * d + b][c * d + e] = s;
                }
            }
        }
    }
    m
}

/// Matrix of Psi on Y = S^2 L / Omega.
pub fn psi_on_y(l: &LieAlgebraSpec) -> Result<Mat> {
    let d = l.dim_l;
    let m = psi_matrix(l);
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|c| (c..d).map(move |e| (c, e))).collect();
    let sym = |p: (usize, usize)| -> Vec<Q> {
        let mut v = vec![Q::zero(); d * d];
        v[p.0 * d + p.1] += Q::from_integer(1.into());
        if p.0 != p.1 {
            v[p.1 * d + p.0] += Q::from_integer(1.into());
        }
        v
    };
    let coords = |v: &Vec<Q>| -> Result<Vec<Q>> {
        for c in 0..d {
            for e in 0..d {
                if v[c * d + e] != v[e * d + c] {
                    return Err(Error::Consistency("Psi does not preserve S^2 L".into()));
                }
            }
        }
        Ok(pairs.iter().map(|&(c, e)| v[c * d + e].clone()).collect())
    };
    let apply = |v: &Vec<Q>| -> Vec<Q> {
        (0..d * d).map(|r| (0..d * d).fold(Q::zero(), |s, k| if m[r][k].is_zero() { s } else { s + &m[r][k] * &v[k] })).collect()
    };
    let omega: Vec<Q> = (0..d * d).map(|k| l.inverse_metric[k / d][k % d].clone()).collect();
    let om = coords(&omega)?;
    let p = om.iter().position(|x| !x.is_zero()).ok_or_else(|| Error::Domain("degenerate metric".into()))?;
    let quot = |w: Vec<Q>| -> Vec<Q> {
        let f = &w[p] / &om[p];
        w.iter().zip(&om).enumerate().filter(|(i, _)| *i != p).map(|(_, (x, o))| x - &f * o).collect()
    };
    if quot(coords(&apply(&omega))?).iter().any(|x| !x.is_zero()) {
        return Err(Error::Consistency("Casimir element is not an eigenvector of Psi".into()));
    }
    let keep: Vec<usize> = (0..pairs.len()).filter(|&i| i != p).collect();
    let cols: Vec<Vec<Q>> = keep.iter().map(|&j| coords(&apply(&sym(pairs[j]))).map(&quot)).collect::<Result<_>>()?;
    let n = keep.len();
    Ok((0..n).map(|r| (0..n).map(|c| cols[c][r].clone()).collect()).collect())
}

/// Sum of absolute entries of A^3 - t A^2 + (sigma - 2t^2) A - (omega - t sigma),
/// where A = -Psi on Y. With f_abc = g([T_a, T_b], T_c) the literal Psi equals
/// sum g^ij ad_i (x) ad_j, whose eigenvalues on Y are -alpha, -beta, -gamma.
pub fn cubic_relation_check(l: &LieAlgebraSpec, v: &VogelParams) -> Result<Q> {
    let k = |p: super::LaurentPolyN| p.as_constant().ok_or_else(|| Error::Domain("numeric Vogel parameters expected".into()));
    let (t, s, w) = (k(v.t())?, k(v.sigma())?, k(v.omega())?);
    if let Ok(dim) = universal_dim(v) {
        if dim.as_constant() != Some(Q::from_integer(l.dim_l.into())) {
            return Err(Error::Domain(format!("{} parameters do not match {} (dim {})", v.name, l.name, l.dim_l)));
        }
    }
    let a: Mat = psi_on_y(l)?.into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect();
    let a2 = mul(&a, &a);
    let a3 = mul(&a2, &a);
    let c1 = &s - &t * &t * Q::from_integer(2.into());
    let c0 = &w - &t * &s;
    let mut norm = Q::zero();
    for i in 0..a.len() {
        for j in 0..a.len() {
            let mut r = &a3[i][j] - &t * &a2[i][j] + &c1 * &a[i][j];
            if i == j {
                r -= &c0;
            }
            norm += r.abs();
        }
    }
    Ok(norm)
}
