//! Sparse integer polynomials in `Y`, the bivariate spectral polynomial
//! `P(X, Y) = sum_i a_i(Y) X^i`, and its tangent cone.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Integer, Rational};

use crate::error::{Error, Result};

/// Sparse polynomial in one variable with arbitrary-precision integer
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UniPoly {
    terms: BTreeMap<u64, Integer>,
}

impl UniPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * Y^e`.
    pub fn monomial(c: impl Into<Integer>, e: u64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c.into());
        p
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u64, C)>,
        C: Into<Integer>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn add_term(&mut self, e: u64, c: Integer) {
        if c == 0 {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                *existing += c;
                if *existing == 0 {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest stored exponent, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().next_back().copied()
    }

    /// Lowest stored exponent, `None` for the zero polynomial.
    pub fn min_degree(&self) -> Option<u64> {
        self.terms.keys().next().copied()
    }

    pub fn coeff(&self, e: u64) -> Integer {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u64, &Integer)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn eval(&self, y: &Rational) -> Rational {
        // Horner over the sparse exponents, highest first.
        let mut acc = Rational::new();
        let mut prev: Option<u64> = None;
        for (e, c) in self.terms.iter().rev() {
            if let Some(p) = prev {
                acc *= pow_rational(y, p - e);
            }
            acc += c;
            prev = Some(*e);
        }
        if let Some(p) = prev {
            acc *= pow_rational(y, p);
        }
        acc
    }

    pub fn eval_integer(&self, y: &Integer) -> Integer {
        let mut acc = Integer::new();
        let mut prev: Option<u64> = None;
        for (e, c) in self.terms.iter().rev() {
            if let Some(p) = prev {
                acc *= pow_integer(y, p - e);
            }
            acc += c;
            prev = Some(*e);
        }
        if let Some(p) = prev {
            acc *= pow_integer(y, p);
        }
        acc
    }
}

pub(crate) fn pow_rational(y: &Rational, e: u64) -> Rational {
    let (num, den) = y.clone().into_numer_denom();
    Rational::from((pow_integer(&num, e), pow_integer(&den, e)))
}

pub(crate) fn pow_integer(y: &Integer, e: u64) -> Integer {
    let mut base = y.clone();
    let mut acc = Integer::from(1);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base.square_mut();
        }
    }
    acc
}

impl Add<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, Integer::from(-c));
        }
        out
    }
}

impl Mul<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        let mut acc: BTreeMap<u64, Integer> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let slot = acc.entry(ea + eb).or_default();
                *slot += Integer::from(ca * cb);
            }
        }
        acc.retain(|_, c| *c != 0);
        UniPoly { terms: acc }
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, Integer::from(-c)))
                .collect(),
        }
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let sign = if *c < 0 { "-" } else { "+" };
            if i == 0 {
                if *c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = Integer::from(c.abs_ref());
            match (*e, mag == 1) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "Y")?,
                (1, false) => write!(f, "{mag}*Y")?,
                (e, true) => write!(f, "Y^{e}")?,
                (e, false) => write!(f, "{mag}*Y^{e}")?,
            }
        }
        Ok(())
    }
}

/// Dense univariate polynomial with exact rational coefficients, lowest
/// degree first. Used for characteristic polynomials in `X`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    /// Builds from coefficients, lowest degree first; trailing zeros are trimmed.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| *c == 0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_integers<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        Self::new(coeffs.into_iter().map(Rational::from).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            let neg = *c < 0;
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mag = Rational::from(c.abs_ref());
            match (i, mag == 1) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "X")?,
                (1, false) => write!(f, "{mag}*X")?,
                (i, true) => write!(f, "X^{i}")?,
                (i, false) => write!(f, "{mag}*X^{i}")?,
            }
        }
        Ok(())
    }
}

/// `P(X, Y) = sum_{i=0}^{n} a_i(Y) X^i`, monic in `X` with `a_0 = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpectralPolynomial {
    coeffs: Vec<UniPoly>,
}

impl SpectralPolynomial {
    /// Validates the Laplacian shape: degree `n >= 1`, `a_n = 1`, `a_0 = 0`.
    pub fn new(coeffs: Vec<UniPoly>) -> Result<Self> {
        let n = coeffs.len().checked_sub(1).ok_or_else(|| {
            Error::InvalidArgument("spectral polynomial needs at least one coefficient".into())
        })?;
        if coeffs[n] != UniPoly::one() {
            return Err(Error::InvalidArgument(format!(
                "spectral polynomial must be monic in X, leading coefficient is {}",
                coeffs[n]
            )));
        }
        if n >= 1 && !coeffs[0].is_zero() {
            return Err(Error::InvalidArgument(
                "spectral polynomial must have zero constant term in X".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    /// X-degree, i.e. the number of vertices.
    pub fn n(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `a_i(Y)`.
    pub fn coeff(&self, i: usize) -> &UniPoly {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[UniPoly] {
        &self.coeffs
    }

    /// Total Y-degree over all coefficients.
    pub fn y_degree(&self) -> u64 {
        self.coeffs
            .iter()
            .filter_map(UniPoly::degree)
            .max()
            .unwrap_or(0)
    }

    /// Substitutes `Y = y` exactly.
    pub fn evaluate_y(&self, y: &Rational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|a| a.eval(y)).collect())
    }

    /// Monomials `(c, j, k)` meaning `c X^j Y^k`, sorted by `j` descending
    /// then `k` ascending.
    pub fn monomials(&self) -> Vec<(Integer, usize, u64)> {
        let mut out = Vec::new();
        for j in (0..self.coeffs.len()).rev() {
            for (k, c) in self.coeffs[j].terms() {
                out.push((c.clone(), j, k));
            }
        }
        out
    }

    /// Homogeneous part of minimal total degree.
    pub fn tangent_cone(&self) -> Result<BivariateHomogeneous> {
        let monos = self.monomials();
        let d = monos
            .iter()
            .map(|(_, j, k)| *j as u64 + k)
            .min()
            .ok_or(Error::ZeroPolynomial)?;
        let terms = monos
            .into_iter()
            .filter(|(_, j, k)| *j as u64 + k == d)
            .collect();
        Ok(BivariateHomogeneous { degree: d, terms })
    }

    /// Text form: header `spoly n=<n>`, then one `c j k` line per monomial.
    pub fn to_text(&self) -> String {
        let mut s = format!("spoly n={}\n", self.n());
        for (c, j, k) in self.monomials() {
            s.push_str(&format!("{c} {j} {k}\n"));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let n: usize = header
            .strip_prefix("spoly n=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::Parse {
                line: hl,
                msg: format!("expected `spoly n=<n>`, got `{header}`"),
            })?;
        let mut coeffs = vec![UniPoly::zero(); n + 1];
        for (ln, line) in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let bad = |msg: &str| Error::Parse {
                line: ln,
                msg: msg.to_string(),
            };
            if parts.len() != 3 {
                return Err(bad("expected `c j k`"));
            }
            let c: Integer = parts[0].parse().map_err(|_| bad("bad coefficient"))?;
            let j: usize = parts[1].parse().map_err(|_| bad("bad X exponent"))?;
            let k: u64 = parts[2].parse().map_err(|_| bad("bad Y exponent"))?;
            if j > n {
                return Err(bad("X exponent exceeds n"));
            }
            coeffs[j].add_term(k, c);
        }
        Self::new(coeffs)
    }
}

impl fmt::Display for SpectralPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for j in (0..self.coeffs.len()).rev() {
            let a = &self.coeffs[j];
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let xpart = match j {
                0 => String::new(),
                1 => "X".to_string(),
                j => format!("X^{j}"),
            };
            if *a == UniPoly::one() {
                write!(f, "{}", if xpart.is_empty() { "1" } else { &xpart })?;
            } else if xpart.is_empty() {
                write!(f, "({a})")?;
            } else {
                write!(f, "({a})*{xpart}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Homogeneous bivariate polynomial: monomials `c X^j Y^k` with `j + k = degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateHomogeneous {
    pub degree: u64,
    /// `(c, j, k)` sorted by `j` descending.
    pub terms: Vec<(Integer, usize, u64)>,
}

impl fmt::Display for BivariateHomogeneous {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, j, k)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " {} ", if *c < 0 { "-" } else { "+" })?;
            } else if *c < 0 {
                write!(f, "-")?;
            }
            let mag = Integer::from(c.abs_ref());
            let mut parts = Vec::new();
            if mag != 1 || (*j == 0 && *k == 0) {
                parts.push(mag.to_string());
            }
            match *j {
                0 => {}
                1 => parts.push("X".into()),
                j => parts.push(format!("X^{j}")),
            }
            match *k {
                0 => {}
                1 => parts.push("Y".into()),
                k => parts.push(format!("Y^{k}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2() -> SpectralPolynomial {
        SpectralPolynomial::new(vec![
            UniPoly::zero(),
            UniPoly::monomial(-2, 1),
            UniPoly::one(),
        ])
        .unwrap()
    }

    #[test]
    fn unipoly_arithmetic_drops_zeros() {
        let a = UniPoly::from_terms([(1, 1), (2, 3)]);
        let b = UniPoly::from_terms([(2, 3)]);
        let d = &a - &b;
        assert_eq!(d, UniPoly::monomial(1, 1));
        assert!((&a - &a).is_zero());
        let sq = &a * &a;
        assert_eq!(sq, UniPoly::from_terms([(2, 1), (3, 6), (4, 9)]));
        assert_eq!(sq.degree(), Some(4));
        assert_eq!(UniPoly::zero().degree(), None);
    }

    #[test]
    fn evaluation_is_exact() {
        let a = UniPoly::from_terms([(0, 2), (3, -1)]);
        assert_eq!(a.eval(&Rational::from((1, 2))), Rational::from((15, 8)));
        assert_eq!(a.eval_integer(&Integer::from(3)), -25);
    }

    #[test]
    fn evaluate_y_examples() {
        let p = k2();
        assert_eq!(
            p.evaluate_y(&Rational::from(1)),
            RatPoly::from_integers([0, -2, 1])
        );
        assert_eq!(
            p.evaluate_y(&Rational::from(5)),
            RatPoly::from_integers([0, -10, 1])
        );
    }

    #[test]
    fn tangent_cone_examples() {
        // X^3 - 2(Y + Y^2) X^2 + 3 Y^3 X
        let p = SpectralPolynomial::new(vec![
            UniPoly::zero(),
            UniPoly::monomial(3, 3),
            UniPoly::from_terms([(1, -2), (2, -2)]),
            UniPoly::one(),
        ])
        .unwrap();
        let cone = p.tangent_cone().unwrap();
        assert_eq!(cone.degree, 3);
        assert_eq!(
            cone.terms,
            vec![(Integer::from(1), 3, 0), (Integer::from(-2), 2, 1)]
        );
        assert_eq!(cone.to_string(), "X^3 - 2*X^2*Y");

        let cone = k2().tangent_cone().unwrap();
        assert_eq!(cone.degree, 2);
        assert_eq!(cone.terms.len(), 2);
    }

    #[test]
    fn rejects_non_monic_and_constant_term() {
        assert!(SpectralPolynomial::new(vec![UniPoly::zero(), UniPoly::monomial(2, 0)]).is_err());
        assert!(SpectralPolynomial::new(vec![UniPoly::one(), UniPoly::one()]).is_err());
        assert!(SpectralPolynomial::new(vec![]).is_err());
    }

    #[test]
    fn text_format_is_sorted() {
        let p = SpectralPolynomial::new(vec![
            UniPoly::zero(),
            UniPoly::from_terms([(3, 3), (5, 3), (6, 3)]),
            UniPoly::from_terms([(1, -2), (2, -2), (4, -2)]),
            UniPoly::one(),
        ])
        .unwrap();
        let text = p.to_text();
        assert_eq!(
            text,
            "spoly n=3\n1 3 0\n-2 2 1\n-2 2 2\n-2 2 4\n3 1 3\n3 1 5\n3 1 6\n"
        );
        assert_eq!(SpectralPolynomial::from_text(&text).unwrap(), p);
        assert!(SpectralPolynomial::from_text("spoly n=1\n1 2 0\n").is_err());
        assert!(SpectralPolynomial::from_text("poly\n").is_err());
    }
}
