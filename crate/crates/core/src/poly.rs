//! Dense univariate polynomials over the rationals and the rational
//! functions built from them. These back the symbolic coefficient field
//! used when the Jordan parameter is left as an indeterminate.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Hard cap on polynomial degree inside rational-function arithmetic.
///
/// Every quantity produced by the verifier is a ratio of low-degree
/// polynomials in the Jordan parameter; reduced numerators and denominators
/// staying below this bound is an invariant, and blowing past it means a
/// normalization bug, so we fail loudly instead of grinding on.
pub const MAX_DEGREE: usize = 64;

/// Polynomial in one indeterminate `eta` with rational coefficients.
/// Coefficient `coeffs[k]` multiplies `eta^k`; no trailing zeros are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = QPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn eta() -> Self {
        QPoly {
            coeffs: vec![BigRational::zero(), BigRational::one()],
        }
    }

    pub fn monomial(c: BigRational, k: usize) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        QPoly { coeffs }
    }

    fn trim(&mut self) {
        while let Some(last) = self.coeffs.last() {
            if last.is_zero() {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + other.coeff(k));
        }
        let mut p = QPoly { coeffs };
        p.trim();
        p
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let deg = self.coeffs.len() + other.coeffs.len() - 2;
        assert!(
            deg <= MAX_DEGREE,
            "polynomial degree cap ({MAX_DEGREE}) exceeded during rational-function \
             arithmetic; coefficients are expected to stay low-degree after reduction"
        );
        let mut coeffs = vec![BigRational::zero(); deg + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        let mut p = QPoly { coeffs };
        p.trim();
        p
    }

    pub fn scale(&self, c: &BigRational) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Quotient and remainder with `deg(rem) < deg(div)`. Panics on zero divisor.
    pub fn divrem(&self, div: &QPoly) -> (QPoly, QPoly) {
        assert!(!div.is_zero(), "polynomial division by zero");
        let dd = div.degree().unwrap();
        let lead_inv = BigRational::one() / div.leading().unwrap().clone();
        let mut rem = self.clone();
        let mut quot_coeffs = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading().unwrap() * &lead_inv;
            let shift = rd - dd;
            quot_coeffs[shift] = factor.clone();
            for (j, b) in div.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    let t = &factor * b;
                    let cur = rem.coeff(shift + j) - t;
                    if shift + j < rem.coeffs.len() {
                        rem.coeffs[shift + j] = cur;
                    }
                }
            }
            rem.trim();
        }
        let mut quot = QPoly { coeffs: quot_coeffs };
        quot.trim();
        (quot, rem)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
        let mut x = a.monic();
        let mut y = b.monic();
        while !y.is_zero() {
            let (_, r) = x.divrem(&y);
            x = y;
            y = r.monic();
        }
        x
    }

    /// Scales so the leading coefficient is 1; zero stays zero.
    pub fn monic(&self) -> QPoly {
        match self.leading() {
            None => QPoly::zero(),
            Some(l) => {
                let inv = BigRational::one() / l.clone();
                self.scale(&inv)
            }
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    fn term_string(k: usize, c: &BigRational) -> String {
        let abs = c.abs();
        if k == 0 {
            return format!("{abs}");
        }
        let var = if k == 1 {
            "eta".to_string()
        } else {
            format!("eta^{k}")
        };
        if abs.is_one() {
            var
        } else {
            format!("{abs}*{var}")
        }
    }

    /// Canonical display: terms by falling degree, signs folded into the
    /// separators, unit coefficients elided. Zero prints as `0`.
    pub fn to_canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (pos, k) in (0..self.coeffs.len()).rev().enumerate() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            if pos == 0 && out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            out.push_str(&Self::term_string(k, c));
        }
        out
    }

    /// Parses the canonical format (and minor variations such as a missing
    /// `*` between coefficient and variable).
    pub fn parse(s: &str) -> Result<QPoly> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut acc = QPoly::zero();
        let bytes = compact.as_bytes();
        let mut i = 0;
        let mut sign = BigRational::one();
        // Leading sign.
        if bytes[i] == b'+' {
            i += 1;
        } else if bytes[i] == b'-' {
            sign = -sign;
            i += 1;
        }
        while i < bytes.len() {
            let start = i;
            while i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
                i += 1;
            }
            if i == start {
                return Err(Error::Parse(format!("malformed polynomial '{s}'")));
            }
            let term = Self::parse_term(&compact[start..i])?;
            acc = acc.add(&term.scale(&sign));
            if i < bytes.len() {
                sign = if bytes[i] == b'-' {
                    -BigRational::one()
                } else {
                    BigRational::one()
                };
                i += 1;
                if i == bytes.len() {
                    return Err(Error::Parse(format!("dangling sign in '{s}'")));
                }
            }
        }
        Ok(acc)
    }

    fn parse_term(t: &str) -> Result<QPoly> {
        let (coeff_str, var_str) = match t.find("eta") {
            None => (t, ""),
            Some(pos) => (&t[..pos], &t[pos..]),
        };
        let coeff = if coeff_str.is_empty() {
            BigRational::one()
        } else {
            let trimmed = coeff_str.strip_suffix('*').unwrap_or(coeff_str);
            parse_bigrational(trimmed)?
        };
        if var_str.is_empty() {
            return Ok(QPoly::constant(coeff));
        }
        let rest = &var_str[3..];
        let k = if rest.is_empty() {
            1usize
        } else if let Some(exp) = rest.strip_prefix('^') {
            exp.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad exponent in term '{t}'")))?
        } else {
            return Err(Error::Parse(format!("unexpected trailing text in term '{t}'")));
        };
        Ok(QPoly::monomial(coeff, k))
    }
}

/// Parses `a` or `a/b` into a reduced rational. Rejects zero denominators.
pub fn parse_bigrational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        None => (s, "1"),
        Some((n, d)) => (n, d),
    };
    let num: BigInt = num_str
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer '{num_str}'")))?;
    let den: BigInt = den_str
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer '{den_str}'")))?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(num, den))
}

/// Reduced ratio of two polynomials: gcd(num, den) = 1, den monic and
/// nonzero, and the zero element stored as 0/1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: QPoly,
    den: QPoly,
}

impl RationalFunction {
    /// Builds and normalizes `num/den`. Errors when `den` is zero.
    pub fn new(num: QPoly, den: QPoly) -> Result<RationalFunction> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: QPoly, den: QPoly) -> RationalFunction {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RationalFunction {
                num: QPoly::zero(),
                den: QPoly::one(),
            };
        }
        let g = QPoly::gcd(&num, &den);
        let (num, _) = num.divrem(&g);
        let (den, _) = den.divrem(&g);
        // Make the denominator monic, folding the scale into the numerator.
        let lead = den.leading().expect("nonzero denominator").clone();
        let inv = BigRational::one() / lead;
        RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> Self {
        RationalFunction {
            num: QPoly::one(),
            den: QPoly::one(),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        RationalFunction {
            num: QPoly::constant(c),
            den: QPoly::one(),
        }
    }

    pub fn eta() -> Self {
        RationalFunction {
            num: QPoly::eta(),
            den: QPoly::one(),
        }
    }

    pub fn from_poly(p: QPoly) -> Self {
        RationalFunction {
            num: p,
            den: QPoly::one(),
        }
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::reduced(num, den)
    }

    pub fn sub(&self, other: &RationalFunction) -> RationalFunction {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        // Cross-reduce before multiplying to keep intermediate degrees down.
        let g1 = QPoly::gcd(&self.num, &other.den);
        let g2 = QPoly::gcd(&other.num, &self.den);
        let (n1, _) = self.num.divrem(&g1);
        let (d2, _) = other.den.divrem(&g1);
        let (n2, _) = other.num.divrem(&g2);
        let (d1, _) = self.den.divrem(&g2);
        Self::reduced(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn inv(&self) -> Result<RationalFunction> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RationalFunction) -> Result<RationalFunction> {
        Ok(self.mul(&other.inv()?))
    }

    /// Substitutes a rational value for the indeterminate.
    /// Errors when the denominator vanishes at that point.
    pub fn eval_rational(&self, x: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn to_canonical_string(&self) -> String {
        if self.den.is_one() {
            self.num.to_canonical_string()
        } else {
            format!(
                "({})/({})",
                self.num.to_canonical_string(),
                self.den.to_canonical_string()
            )
        }
    }

    /// Inverse of [`to_canonical_string`](Self::to_canonical_string); also
    /// accepts a bare polynomial for the denominator-one case.
    pub fn parse(s: &str) -> Result<RationalFunction> {
        let t = s.trim();
        if let Some(body) = t.strip_prefix('(') {
            let (num_str, rest) = body
                .split_once(")/(")
                .ok_or_else(|| Error::Parse(format!("malformed rational function '{s}'")))?;
            let den_str = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("malformed rational function '{s}'")))?;
            let num = QPoly::parse(num_str)?;
            let den = QPoly::parse(den_str)?;
            RationalFunction::new(num, den)
        } else {
            Ok(RationalFunction::from_poly(QPoly::parse(t)?))
        }
    }
}
