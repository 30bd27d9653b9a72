//! Exact scalars over the three supported coefficient fields: the
//! rationals, odd prime fields, and rational functions in the Jordan
//! parameter. A [`FieldDescriptor`] pins down the field and the value of
//! the parameter; every scalar knows which field it lives in, and mixing
//! fields in raw arithmetic panics (the checked entry point
//! [`field_arith`] reports an error instead).

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::{parse_bigrational, QPoly, RationalFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldKind {
    /// The rational numbers with a fixed rational Jordan parameter.
    Rationals,
    /// Integers modulo an odd prime with the parameter a fixed residue.
    PrimeField,
    /// Rational functions in the parameter, which stays symbolic.
    GenericEta,
}

impl FieldKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FieldKind::Rationals => "rationals",
            FieldKind::PrimeField => "prime-field",
            FieldKind::GenericEta => "generic-eta",
        }
    }

    pub fn parse(s: &str) -> Result<FieldKind> {
        match s {
            "rationals" | "q" => Ok(FieldKind::Rationals),
            "prime-field" | "fp" => Ok(FieldKind::PrimeField),
            "generic-eta" | "generic" => Ok(FieldKind::GenericEta),
            other => Err(Error::Parse(format!("unknown field kind '{other}'"))),
        }
    }
}

/// An exact field element. Prime-field values are reduced residues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rational(BigRational),
    Mod { value: u64, modulus: u64 },
    RatFn(RationalFunction),
}

// Modular helpers. All arithmetic goes through u128 so any u64 modulus is
// safe from overflow.
fn madd(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn msub(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + p as u128 - b as u128) % p as u128) as u64
}

fn mmul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mpow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mmul(acc, base, p);
        }
        base = mmul(base, base, p);
        exp >>= 1;
    }
    acc
}

fn minv(a: u64, p: u64) -> Result<u64> {
    if a.is_multiple_of(p) {
        return Err(Error::DivisionByZero);
    }
    // Extended Euclid on (a, p); p is prime so the gcd is 1.
    let (mut r0, mut r1) = (a as i128, p as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    let inv = s0.rem_euclid(p as i128) as u64;
    Ok(inv)
}

/// Deterministic Miller-Rabin for u64.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mpow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mmul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = n % &m;
    let r = if r.is_negative() { r + &m } else { r };
    r.to_u64().expect("residue fits in u64")
}

/// Reduces a rational a/b modulo p; fails when p divides b.
fn bigrational_mod(q: &BigRational, p: u64) -> Result<u64> {
    let den = bigint_mod(q.denom(), p);
    if den == 0 {
        return Err(Error::InvalidField(format!(
            "denominator of {q} is divisible by {p}"
        )));
    }
    Ok(mmul(bigint_mod(q.numer(), p), minv(den, p)?, p))
}

fn poly_eval_mod(poly: &QPoly, x: u64, p: u64) -> Result<u64> {
    let mut acc = 0u64;
    if let Some(deg) = poly.degree() {
        for k in (0..=deg).rev() {
            let c = bigrational_mod(&poly.coeff(k), p)?;
            acc = madd(mmul(acc, x, p), c, p);
        }
    }
    Ok(acc)
}

impl Scalar {
    fn kind_desc(&self) -> String {
        match self {
            Scalar::Rational(_) => "rationals".into(),
            Scalar::Mod { modulus, .. } => format!("prime-field mod {modulus}"),
            Scalar::RatFn(_) => "generic-eta".into(),
        }
    }

    fn mixed(&self, other: &Scalar) -> ! {
        panic!(
            "mixed-field scalar operands: {} vs {}",
            self.kind_desc(),
            other.kind_desc()
        );
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
            Scalar::RatFn(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
            Scalar::RatFn(r) => r.is_one(),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q })
                if p == q =>
            {
                Scalar::Mod { value: madd(*a, *b, *p), modulus: *p }
            }
            (Scalar::RatFn(a), Scalar::RatFn(b)) => Scalar::RatFn(a.add(b)),
            _ => self.mixed(other),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q })
                if p == q =>
            {
                Scalar::Mod { value: msub(*a, *b, *p), modulus: *p }
            }
            (Scalar::RatFn(a), Scalar::RatFn(b)) => Scalar::RatFn(a.sub(b)),
            _ => self.mixed(other),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q })
                if p == q =>
            {
                Scalar::Mod { value: mmul(*a, *b, *p), modulus: *p }
            }
            (Scalar::RatFn(a), Scalar::RatFn(b)) => Scalar::RatFn(a.mul(b)),
            _ => self.mixed(other),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: msub(0, *value, *modulus),
                modulus: *modulus,
            },
            Scalar::RatFn(a) => Scalar::RatFn(a.neg()),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(a) => {
                if a.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(a.recip()))
                }
            }
            Scalar::Mod { value, modulus } => Ok(Scalar::Mod {
                value: minv(*value, *modulus)?,
                modulus: *modulus,
            }),
            Scalar::RatFn(a) => Ok(Scalar::RatFn(a.inv()?)),
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&other.inv()?))
    }

    /// Canonical text form: reduced `a/b`, `v mod p`, or a reduced rational
    /// function with monic denominator. Equal scalars print identically.
    pub fn to_canonical_string(&self) -> String {
        match self {
            Scalar::Rational(q) => q.to_string(),
            Scalar::Mod { value, modulus } => format!("{value} mod {modulus}"),
            Scalar::RatFn(r) => r.to_canonical_string(),
        }
    }
}

/// Field selection plus the chosen Jordan parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldDescriptor {
    kind: FieldKind,
    modulus: u64,
    eta: Scalar,
}

impl FieldDescriptor {
    /// Rational field with parameter `eta`, which must avoid 0 and 1.
    pub fn rationals(eta: BigRational) -> Result<FieldDescriptor> {
        if eta.is_zero() || eta.is_one() {
            return Err(Error::InvalidField(format!(
                "eta must differ from 0 and 1, got {eta}"
            )));
        }
        Ok(FieldDescriptor {
            kind: FieldKind::Rationals,
            modulus: 0,
            eta: Scalar::Rational(eta),
        })
    }

    /// Prime field of odd order `p` with parameter the residue of `eta`.
    pub fn prime_field(p: u64, eta: &BigRational) -> Result<FieldDescriptor> {
        if p == 2 {
            return Err(Error::InvalidField(
                "characteristic 2 is not supported (eta would collide with 0 or 1)".into(),
            ));
        }
        if !is_prime_u64(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        let value = bigrational_mod(eta, p)?;
        if value == 0 || value == 1 {
            return Err(Error::InvalidField(format!(
                "eta must differ from 0 and 1 in F_{p}, got {value}"
            )));
        }
        Ok(FieldDescriptor {
            kind: FieldKind::PrimeField,
            modulus: p,
            eta: Scalar::Mod { value, modulus: p },
        })
    }

    /// Rational function field with the parameter kept symbolic.
    pub fn generic() -> FieldDescriptor {
        FieldDescriptor {
            kind: FieldKind::GenericEta,
            modulus: 0,
            eta: Scalar::RatFn(RationalFunction::eta()),
        }
    }

    /// One-stop constructor used by the command line: `p` is required for
    /// prime fields, `eta_spec` is a rational string (ignored for the
    /// generic field, default `1/2` elsewhere).
    pub fn make(kind: FieldKind, p: Option<u64>, eta_spec: Option<&str>) -> Result<FieldDescriptor> {
        match kind {
            FieldKind::GenericEta => Ok(FieldDescriptor::generic()),
            FieldKind::Rationals => {
                let eta = parse_bigrational(eta_spec.unwrap_or("1/2"))?;
                FieldDescriptor::rationals(eta)
            }
            FieldKind::PrimeField => {
                let p = p.ok_or_else(|| {
                    Error::InvalidField("prime field requires a modulus".into())
                })?;
                let eta = parse_bigrational(eta_spec.unwrap_or("1/2"))?;
                FieldDescriptor::prime_field(p, &eta)
            }
        }
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    /// 0 for characteristic zero, otherwise the prime modulus.
    pub fn characteristic(&self) -> u64 {
        self.modulus
    }

    pub fn eta(&self) -> Scalar {
        self.eta.clone()
    }

    pub fn zero(&self) -> Scalar {
        match self.kind {
            FieldKind::Rationals => Scalar::Rational(BigRational::zero()),
            FieldKind::PrimeField => Scalar::Mod { value: 0, modulus: self.modulus },
            FieldKind::GenericEta => Scalar::RatFn(RationalFunction::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self.kind {
            FieldKind::Rationals => Scalar::Rational(BigRational::one()),
            FieldKind::PrimeField => Scalar::Mod { value: 1, modulus: self.modulus },
            FieldKind::GenericEta => Scalar::RatFn(RationalFunction::one()),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_bigrational(&BigRational::from(BigInt::from(n)))
            .expect("integers embed in every supported field")
    }

    pub fn from_bigrational(&self, q: &BigRational) -> Result<Scalar> {
        match self.kind {
            FieldKind::Rationals => Ok(Scalar::Rational(q.clone())),
            FieldKind::GenericEta => Ok(Scalar::RatFn(RationalFunction::constant(q.clone()))),
            FieldKind::PrimeField => Ok(Scalar::Mod {
                value: bigrational_mod(q, self.modulus)?,
                modulus: self.modulus,
            }),
        }
    }

    /// 2/eta, the scaling constant in the reflection formula.
    pub fn two_over_eta(&self) -> Scalar {
        self.from_i64(2)
            .div(&self.eta)
            .expect("eta is invertible by construction")
    }

    /// eta/2, the structure constant scale of a Matsuo product.
    pub fn half_eta(&self) -> Scalar {
        self.eta
            .div(&self.from_i64(2))
            .expect("2 is invertible in odd characteristic")
    }

    pub fn same_field(&self, s: &Scalar) -> bool {
        match (self.kind, s) {
            (FieldKind::Rationals, Scalar::Rational(_)) => true,
            (FieldKind::PrimeField, Scalar::Mod { modulus, .. }) => *modulus == self.modulus,
            (FieldKind::GenericEta, Scalar::RatFn(_)) => true,
            _ => false,
        }
    }

    /// Parses the canonical text form of a scalar of this field. Prime
    /// fields also accept bare integers or fractions, which are reduced.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let t = s.trim();
        match self.kind {
            FieldKind::Rationals => Ok(Scalar::Rational(parse_bigrational(t)?)),
            FieldKind::GenericEta => Ok(Scalar::RatFn(RationalFunction::parse(t)?)),
            FieldKind::PrimeField => {
                let body = match t.split_once(" mod ") {
                    None => t,
                    Some((v, m)) => {
                        let m: u64 = m
                            .trim()
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad modulus in '{s}'")))?;
                        if m != self.modulus {
                            return Err(Error::MixedField(
                                format!("prime-field mod {m}"),
                                format!("prime-field mod {}", self.modulus),
                            ));
                        }
                        v
                    }
                };
                self.from_bigrational(&parse_bigrational(body)?)
            }
        }
    }

    /// Short human label such as `Q(eta=1/2)`, `F7(eta=3)`, or `Q(eta)`.
    pub fn label(&self) -> String {
        match self.kind {
            FieldKind::Rationals => format!("Q(eta={})", self.eta.to_canonical_string()),
            FieldKind::PrimeField => {
                let v = match &self.eta {
                    Scalar::Mod { value, .. } => *value,
                    _ => unreachable!(),
                };
                format!("F{}(eta={v})", self.modulus)
            }
            FieldKind::GenericEta => "Q(eta)".to_string(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self.kind {
            FieldKind::Rationals => json!({
                "kind": self.kind.as_str(),
                "eta": self.eta.to_canonical_string(),
            }),
            FieldKind::PrimeField => json!({
                "kind": self.kind.as_str(),
                "p": self.modulus,
                "eta": self.eta.to_canonical_string(),
            }),
            FieldKind::GenericEta => json!({
                "kind": self.kind.as_str(),
                "eta": "eta",
            }),
        }
    }

    pub fn from_json(v: &Value) -> Result<FieldDescriptor> {
        let kind_str = v
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Json("field descriptor missing 'kind'".into()))?;
        let kind = FieldKind::parse(kind_str)?;
        match kind {
            FieldKind::GenericEta => Ok(FieldDescriptor::generic()),
            FieldKind::Rationals => {
                let eta = v
                    .get("eta")
                    .and_then(Value::as_str)
                    .ok_or_else(|| Error::Json("field descriptor missing 'eta'".into()))?;
                FieldDescriptor::rationals(parse_bigrational(eta)?)
            }
            FieldKind::PrimeField => {
                let p = v
                    .get("p")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| Error::Json("prime field descriptor missing 'p'".into()))?;
                let eta = v
                    .get("eta")
                    .and_then(Value::as_str)
                    .ok_or_else(|| Error::Json("field descriptor missing 'eta'".into()))?;
                let eta_body = eta.split_once(" mod ").map(|(a, _)| a).unwrap_or(eta);
                FieldDescriptor::prime_field(p, &parse_bigrational(eta_body)?)
            }
        }
    }

    /// Maps a symbolic scalar into this field by substituting the
    /// descriptor's parameter value. Rejects scalars whose denominator
    /// vanishes at that value.
    pub fn specialize(&self, s: &Scalar) -> Result<Scalar> {
        let r = match s {
            Scalar::RatFn(r) => r,
            _ => {
                return Err(Error::Invalid(
                    "specialize expects a generic-eta scalar".into(),
                ))
            }
        };
        match self.kind {
            FieldKind::GenericEta => Ok(s.clone()),
            FieldKind::Rationals => {
                let eta = match &self.eta {
                    Scalar::Rational(q) => q,
                    _ => unreachable!(),
                };
                Ok(Scalar::Rational(r.eval_rational(eta)?))
            }
            FieldKind::PrimeField => {
                let p = self.modulus;
                let x = match &self.eta {
                    Scalar::Mod { value, .. } => *value,
                    _ => unreachable!(),
                };
                let den = poly_eval_mod(r.den(), x, p)?;
                if den == 0 {
                    return Err(Error::DivisionByZero);
                }
                let num = poly_eval_mod(r.num(), x, p)?;
                Ok(Scalar::Mod { value: mmul(num, minv(den, p)?, p), modulus: p })
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
}

/// Checked scalar arithmetic: verifies the operands belong to the given
/// field before dispatching, so mismatches surface as errors rather than
/// panics. `y` is ignored by the unary operations.
pub fn field_arith(
    desc: &FieldDescriptor,
    op: ArithOp,
    x: &Scalar,
    y: Option<&Scalar>,
) -> Result<Scalar> {
    if !desc.same_field(x) {
        return Err(Error::MixedField(x.kind_desc(), desc.label()));
    }
    fn binary<'a>(desc: &FieldDescriptor, y: Option<&'a Scalar>) -> Result<&'a Scalar> {
        let y = y.ok_or_else(|| Error::Invalid("binary operation needs two operands".into()))?;
        if !desc.same_field(y) {
            return Err(Error::MixedField(y.kind_desc(), desc.label()));
        }
        Ok(y)
    }
    match op {
        ArithOp::Add => Ok(x.add(binary(desc, y)?)),
        ArithOp::Sub => Ok(x.sub(binary(desc, y)?)),
        ArithOp::Mul => Ok(x.mul(binary(desc, y)?)),
        ArithOp::Div => x.div(binary(desc, y)?),
        ArithOp::Neg => Ok(x.neg()),
        ArithOp::Inv => x.inv(),
    }
}
