//! Small helpers around `rug::Rational` shared by the exact modules.

use rug::{Integer, Rational};

use crate::error::{Error, Result};

/// Renders as `"num/den"`, always with an explicit denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `"num/den"` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: Integer = n
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
    let d: Integer = d
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
    if d == 0 {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::from((n, d)))
}

pub fn factorial(k: u32) -> Integer {
    Integer::from(Integer::factorial(k))
}

/// `1/k!` for `k = 0..=m`.
pub fn inverse_factorials(m: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(m + 1);
    let mut f = Integer::from(1);
    for k in 0..=m {
        if k > 0 {
            f *= k as u32;
        }
        out.push(Rational::from((Integer::from(1), f.clone())));
    }
    out
}

/// Lossy conversion used only by reporting and fitting code.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64()
}

/// Solves the square system `a x = b` by Gaussian elimination; `None`
/// when `a` is singular.
pub fn solve_linear(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    assert!(a.len() == n && a.iter().all(|r| r.len() == n), "square system expected");
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(pivot, col);
        b.swap(pivot, col);
        let inv = Rational::from(a[col][col].recip_ref());
        for r in col + 1..n {
            if a[r][col] == 0 {
                continue;
            }
            let f = Rational::from(&a[r][col] * &inv);
            for c in col..n {
                let t = Rational::from(&f * &a[col][c]);
                a[r][c] -= t;
            }
            let t = Rational::from(&f * &b[col]);
            b[r] -= t;
        }
    }
    let mut x = vec![Rational::new(); n];
    for r in (0..n).rev() {
        let mut acc = b[r].clone();
        for c in r + 1..n {
            acc -= Rational::from(&a[r][c] * &x[c]);
        }
        x[r] = acc / &a[r][r];
    }
    Some(x)
}

/// Coefficients (lowest first) of the polynomial of degree `< xs.len()`
/// through the given points; the nodes must be distinct.
pub fn interpolate_exact(xs: &[Rational], ys: &[Rational]) -> Vec<Rational> {
    let m = xs.len();
    assert_eq!(m, ys.len());
    let mut dd = ys.to_vec();
    for level in 1..m {
        for i in (level..m).rev() {
            let num = Rational::from(&dd[i] - &dd[i - 1]);
            let den = Rational::from(&xs[i] - &xs[i - level]);
            dd[i] = num / den;
        }
    }
    let mut coeffs = vec![Rational::new(); m];
    for i in (0..m).rev() {
        // coeffs <- coeffs * (x - xs[i]) + dd[i]
        let mut next = vec![Rational::new(); m];
        for j in 0..m {
            if coeffs[j] == 0 {
                continue;
            }
            if j + 1 < m {
                next[j + 1] += &coeffs[j];
            }
            next[j] -= Rational::from(&coeffs[j] * &xs[i]);
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    coeffs
}

/// `Σ c_i x^i`.
pub fn eval_poly(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs
        .iter()
        .rev()
        .fold(Rational::new(), |acc, c| acc * x + c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn linear_solve() {
        let a = vec![vec![r(0, 1), r(2, 1)], vec![r(3, 1), r(1, 1)]];
        let x = solve_linear(a, vec![r(4, 1), r(5, 1)]).unwrap();
        assert_eq!(x, vec![r(1, 1), r(2, 1)]);
        let singular = vec![vec![r(1, 1), r(2, 1)], vec![r(2, 1), r(4, 1)]];
        assert!(solve_linear(singular, vec![r(1, 1), r(1, 1)]).is_none());
    }

    #[test]
    fn interpolation_in_reciprocals() {
        // 1/2 - u + 3u^2 at u = 1, 1/2, 1/3
        let coeffs = vec![r(1, 2), r(-1, 1), r(3, 1)];
        let xs: Vec<Rational> = (1..=3).map(|n| r(1, n)).collect();
        let ys: Vec<Rational> = xs.iter().map(|x| eval_poly(&coeffs, x)).collect();
        assert_eq!(interpolate_exact(&xs, &ys), coeffs);
    }

    #[test]
    fn format_and_parse() {
        let r = Rational::from((-6, 4));
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(parse_rational("-3/2").unwrap(), r);
        assert_eq!(parse_rational("7").unwrap(), 7);
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn inverse_factorial_table() {
        let t = inverse_factorials(4);
        assert_eq!(t[0], 1);
        assert_eq!(t[4], Rational::from((1, 24)));
        assert_eq!(factorial(5), 120);
    }
}
