//! Sparse Laurent polynomials in `t` with exact integer or mod-2 coefficients.

use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// Coefficient ring.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    Integers,
    #[default]
    F2,
}

impl Mode {
    pub fn reduce(self, c: i64) -> i64 {
        match self {
            Mode::Integers => c,
            Mode::F2 => c.rem_euclid(2),
        }
    }
}

/// Inclusive range of retained `t`-exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub lo: i32,
    pub hi: i32,
}

impl Window {
    pub const fn new(lo: i32, hi: i32) -> Self {
        Window { lo, hi }
    }

    pub fn contains(self, k: i32) -> bool {
        self.lo <= k && k <= self.hi
    }
}

impl Default for Window {
    fn default() -> Self {
        Window::new(-4, 8)
    }
}

/// Terms are kept sorted by exponent with no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: SmallVec<[(i32, i64); 2]>,
}

fn checked(c: Option<i64>) -> i64 {
    c.expect("coefficient overflow in Laurent arithmetic")
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(exp: i32, coef: i64) -> Self {
        let mut p = Self::zero();
        if coef != 0 {
            p.terms.push((exp, coef));
        }
        p
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs.
    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i64)>, mode: Mode) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c, mode);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(i32, i64)] {
        &self.terms
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.terms.iter().find(|&&(k, _)| k == exp).map_or(0, |&(_, c)| c)
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.first().map(|&(k, _)| k)
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.last().map(|&(k, _)| k)
    }

    pub fn add_term(&mut self, exp: i32, coef: i64, mode: Mode) {
        match self.terms.binary_search_by_key(&exp, |&(k, _)| k) {
            Ok(i) => {
                let c = mode.reduce(checked(self.terms[i].1.checked_add(coef)));
                if c == 0 {
                    self.terms.remove(i);
                } else {
                    self.terms[i].1 = c;
                }
            }
            Err(i) => {
                let c = mode.reduce(coef);
                if c != 0 {
                    self.terms.insert(i, (exp, c));
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &LaurentPoly, mode: Mode) {
        for &(k, c) in &other.terms {
            self.add_term(k, c, mode);
        }
    }

    pub fn sub_assign(&mut self, other: &LaurentPoly, mode: Mode) {
        for &(k, c) in &other.terms {
            self.add_term(k, checked(c.checked_neg()), mode);
        }
    }

    pub fn neg(&self, mode: Mode) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|&(k, c)| (k, -c)), mode)
    }

    /// Exact product; no truncation.
    pub fn mul(&self, other: &LaurentPoly, mode: Mode) -> LaurentPoly {
        if self.terms.len() == 1 && other.terms.len() == 1 {
            let ((a, x), (b, y)) = (self.terms[0], other.terms[0]);
            return LaurentPoly::monomial(a + b, mode.reduce(checked(x.checked_mul(y))));
        }
        let mut out = LaurentPoly::zero();
        for &(a, x) in &self.terms {
            for &(b, y) in &other.terms {
                out.add_term(a + b, checked(x.checked_mul(y)), mode);
            }
        }
        out
    }

    /// Substitutes `t ↦ sign·t`.
    pub fn scale_t(&self, sign: i32, mode: Mode) -> LaurentPoly {
        if sign == 1 {
            return self.clone();
        }
        LaurentPoly::from_terms(self.terms.iter().map(|&(k, c)| (k, if k % 2 == 0 { c } else { -c })), mode)
    }

    pub fn truncate(&self, window: Window) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().copied().filter(|&(k, _)| window.contains(k)).collect() }
    }
}

impl fmt::Display for LaurentPoly {
    /// `c*t^k` terms joined by `+`, with negative coefficients written as `-c*t^k`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, &(k, c)) in self.terms.iter().enumerate() {
            if i > 0 && c >= 0 {
                write!(f, "+")?;
            }
            write!(f, "{c}*t^{k}")?;
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.terms.as_slice().serialize(s)
    }
}
