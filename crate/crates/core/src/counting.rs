//! Counting polynomials, the F1 zeta function and finite-field point-count
//! oracles.
//!
//! A torification with `δ_l` tori of rank `l` has counting polynomial
//! `N(q) = Σ δ_l (q-1)^l`. In the monomial basis `N(q) = Σ a_l q^l` with
//! `a_l = Σ_{k>=l} (-1)^{k-l} C(k,l) δ_k`, and the zeta function is
//! `ζ(s) = Π (s-i)^{-a_i}`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::family::Family;
use crate::torification::{delta_vector, Torification};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountingPolynomial {
    delta: Vec<BigInt>,
    mono: Vec<BigInt>,
}

impl CountingPolynomial {
    pub fn from_delta(delta: Vec<BigInt>) -> CountingPolynomial {
        let mono = to_monomial_basis(&delta);
        CountingPolynomial { delta, mono }
    }

    /// Coefficients in the `(q-1)`-basis.
    pub fn delta(&self) -> &[BigInt] {
        &self.delta
    }

    /// Coefficients in the monomial basis.
    pub fn mono(&self) -> &[BigInt] {
        &self.mono
    }

    /// Degree of the polynomial, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.mono.iter().rposition(|a| !a.is_zero())
    }

    /// Evaluates the monomial form, as an independent route to [`eval_counting`].
    pub fn eval_monomial(&self, q: &BigInt) -> BigInt {
        horner(&self.mono, q)
    }
}

fn horner(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

pub fn counting_polynomial(t: &Torification) -> CountingPolynomial {
    CountingPolynomial::from_delta(delta_vector(t).into_iter().map(BigInt::from).collect())
}

/// `a_l = Σ_{k>=l} (-1)^{k-l} C(k,l) δ_k`.
pub fn to_monomial_basis(delta: &[BigInt]) -> Vec<BigInt> {
    (0..delta.len())
        .map(|l| {
            (l..delta.len()).fold(BigInt::zero(), |acc, k| {
                let term = binomial(k, l) * &delta[k];
                if (k - l) % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect()
}

/// Inverse transform `δ_k = Σ_{l>=k} C(l,k) a_l`, from `q = (q-1) + 1`.
pub fn from_monomial_basis(mono: &[BigInt]) -> Vec<BigInt> {
    (0..mono.len())
        .map(|k| (k..mono.len()).fold(BigInt::zero(), |acc, l| acc + binomial(l, k) * &mono[l]))
        .collect()
}

/// Exact `N(q)` from the `(q-1)`-basis.
pub fn eval_counting(n: &CountingPolynomial, q: &BigInt) -> BigInt {
    horner(&n.delta, &(q - 1))
}

/// `ζ(s) = Π_i (s - i)^{e_i}` stored as `(i, e_i)` with `e_i = -a_i ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaFunction {
    pub factors: Vec<(usize, BigInt)>,
}

pub fn zeta(n: &CountingPolynomial) -> ZetaFunction {
    ZetaFunction {
        factors: n
            .mono
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| (i, -a.clone()))
            .collect(),
    }
}

impl ZetaFunction {
    /// Sum of the `a_i`, which equals `N(1)`.
    pub fn exponent_sum(&self) -> BigInt {
        self.factors.iter().map(|(_, e)| -e).sum()
    }
}

impl fmt::Display for ZetaFunction {
    /// Renders e.g. `s/(s-1)` or `1/(s(s-1))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn factor(i: usize, e: &BigInt) -> String {
            let base = if i == 0 { "s".to_string() } else { format!("(s-{i})") };
            if e.is_one() {
                base
            } else {
                format!("{base}^{e}")
            }
        }
        let num: Vec<String> = self
            .factors
            .iter()
            .filter(|(_, e)| e.is_positive())
            .map(|(i, e)| factor(*i, e))
            .collect();
        let den: Vec<String> = self
            .factors
            .iter()
            .filter(|(_, e)| e.is_negative())
            .map(|(i, e)| factor(*i, &-e))
            .collect();
        let numerator = if num.is_empty() { "1".to_string() } else { num.concat() };
        match den.len() {
            0 => write!(f, "{numerator}"),
            1 => write!(f, "{numerator}/{}", den[0]),
            _ => write!(f, "{numerator}/({})", den.concat()),
        }
    }
}

/// JSON number when it fits in `i64`, decimal string otherwise.
pub(crate) fn big_to_json(x: &BigInt) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(x.to_string()),
    }
}

struct BigSeq<'a>(&'a [BigInt]);

impl Serialize for BigSeq<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for x in self.0 {
            seq.serialize_element(&big_to_json(x))?;
        }
        seq.end()
    }
}

impl Serialize for CountingPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CountingPolynomial", 2)?;
        st.serialize_field("delta", &BigSeq(&self.delta))?;
        st.serialize_field("mono", &BigSeq(&self.mono))?;
        st.end()
    }
}

impl Serialize for ZetaFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<serde_json::Value> = self
            .factors
            .iter()
            .map(|(i, e)| serde_json::json!([i, big_to_json(e)]))
            .collect();
        let mut st = s.serialize_struct("ZetaFunction", 2)?;
        st.serialize_field("factors", &pairs)?;
        st.serialize_field("rendered", &self.to_string())?;
        st.end()
    }
}

fn exact_div(num: BigInt, den: &BigInt, what: &str) -> BigInt {
    let (quot, rem) = num.div_rem(den);
    assert!(rem.is_zero(), "{what}: inexact division, the oracle formula is wrong");
    quot
}

/// `Π_{i=1}^{m} (q^i - 1)`.
fn q_factorial_numerators(q: &BigInt, m: usize) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, i| acc * (q.pow(i as u32) - 1))
}

/// Number of `F_q`-points of `family`, from closed formulas independent of any
/// torification. The formulas are polynomial identities in `q`; primality of
/// `q` is not checked, but `q >= 2` is required.
pub fn oracle_point_count(family: &Family, q: &BigInt) -> Result<BigInt> {
    if *q < BigInt::from(2) {
        return Err(Error::InvalidFieldSize(q.to_string()));
    }
    let qm1: BigInt = q - 1;
    Ok(match family {
        Family::Point => BigInt::one(),
        Family::Gm(n) => qm1.pow(*n as u32),
        Family::Affine(n) => q.pow(*n as u32),
        Family::Projective(n) => exact_div(q.pow(*n as u32 + 1) - 1, &qm1, "projective"),
        Family::Toric(fan) => {
            let n = fan.ambient_dim();
            fan.cones()
                .iter()
                .map(|c| qm1.pow((n - c.dim()) as u32))
                .sum::<BigInt>()
        }
        Family::Grassmannian(k, n) => {
            // [n choose k]_q = Π_{i<k} (q^{n-i} - 1) / (q^{i+1} - 1)
            let num = (0..*k).fold(BigInt::one(), |acc, i| acc * (q.pow((n - i) as u32) - 1));
            exact_div(num, &q_factorial_numerators(q, *k), "grassmannian")
        }
        Family::Flag(parts) => {
            let n: usize = parts.iter().sum();
            let den = parts
                .iter()
                .fold(BigInt::one(), |acc, &d| acc * q_factorial_numerators(q, d));
            exact_div(q_factorial_numerators(q, n), &den, "flag")
        }
        Family::Sl(n) => {
            let unipotent = q.pow((n * (n - 1) / 2) as u32);
            (2..=*n).fold(unipotent, |acc, i| acc * (q.pow(i as u32) - 1))
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountCheck {
    pub q: BigInt,
    pub counted: BigInt,
    pub oracle: BigInt,
}

impl CountCheck {
    pub fn agrees(&self) -> bool {
        self.counted == self.oracle
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub family: String,
    pub checks: Vec<CountCheck>,
}

impl VerifyReport {
    pub fn mismatches(&self) -> Vec<&CountCheck> {
        self.checks.iter().filter(|c| !c.agrees()).collect()
    }

    pub fn all_agree(&self) -> bool {
        self.checks.iter().all(CountCheck::agrees)
    }
}

impl Serialize for VerifyReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let checks: Vec<serde_json::Value> = self
            .checks
            .iter()
            .map(|c| {
                serde_json::json!({
                    "q": big_to_json(&c.q),
                    "counted": big_to_json(&c.counted),
                    "oracle": big_to_json(&c.oracle),
                    "equal": c.agrees(),
                })
            })
            .collect();
        let mut st = s.serialize_struct("VerifyReport", 3)?;
        st.serialize_field("family", &self.family)?;
        st.serialize_field("all_equal", &self.all_agree())?;
        st.serialize_field("checks", &checks)?;
        st.end()
    }
}

/// Compares the counting polynomial of `t` against the oracle for `family` at
/// every `q` in `q_list`.
pub fn verify_counting(t: &Torification, family: &Family, q_list: &[BigInt]) -> Result<VerifyReport> {
    let n = counting_polynomial(t);
    let checks = q_list
        .iter()
        .map(|q| {
            Ok(CountCheck {
                q: q.clone(),
                counted: eval_counting(&n, q),
                oracle: oracle_point_count(family, q)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport {
        family: family.to_string(),
        checks,
    })
}
