use std::fmt;

use serde::{Deserialize, Serialize};

/// Integer Laurent polynomial in one variable, stored densely from its
/// lowest exponent. Zero is the empty coefficient list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Vec<i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(c: i64, e: i32) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self {
            low: e,
            coeffs: vec![c],
        }
    }

    /// From `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms(terms: &[(i32, i64)]) -> Self {
        let mut p = Self::zero();
        for &(e, c) in terms {
            p.add_scaled_shifted(&Self::monomial(c, 0), 1, e);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<i32> {
        if self.is_zero() {
            None
        } else {
            Some(self.low + self.coeffs.len() as i32 - 1)
        }
    }

    pub fn lowest(&self) -> Option<i32> {
        if self.is_zero() {
            None
        } else {
            Some(self.low)
        }
    }

    pub fn coeff(&self, e: i32) -> i64 {
        if self.is_zero() || e < self.low {
            return 0;
        }
        self.coeffs.get((e - self.low) as usize).copied().unwrap_or(0)
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(i, &c)| (self.low + i as i32, c))
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i32;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    /// `self += c * x^shift * other`.
    pub fn add_scaled_shifted(&mut self, other: &LaurentPoly, c: i64, shift: i32) {
        if other.is_zero() || c == 0 {
            return;
        }
        let olow = other.low + shift;
        let ohigh = olow + other.coeffs.len() as i32 - 1;
        if self.is_zero() {
            self.low = olow;
            self.coeffs = other.coeffs.iter().map(|&x| x * c).collect();
            return;
        }
        let high = self.degree().unwrap().max(ohigh);
        if olow < self.low {
            let pad = (self.low - olow) as usize;
            self.coeffs.splice(0..0, std::iter::repeat(0).take(pad));
            self.low = olow;
        }
        let len = (high - self.low + 1) as usize;
        if self.coeffs.len() < len {
            self.coeffs.resize(len, 0);
        }
        let off = (olow - self.low) as usize;
        for (i, &x) in other.coeffs.iter().enumerate() {
            self.coeffs[off + i] += c * x;
        }
        self.trim();
    }

    pub fn shifted(&self, shift: i32) -> LaurentPoly {
        let mut p = self.clone();
        if !p.is_zero() {
            p.low += shift;
        }
        p
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        let mut p = Self {
            low: self.low + other.low,
            coeffs,
        };
        p.trim();
        p
    }

    /// Substitutes `x -> x^2`.
    pub fn square_variable(&self) -> LaurentPoly {
        let mut p = Self::zero();
        for (e, c) in self.terms() {
            p.add_scaled_shifted(&Self::monomial(c, 0), 1, 2 * e);
        }
        p
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }
}

impl std::ops::Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut p = self.clone();
        p.add_scaled_shifted(rhs, 1, 0);
        p
    }
}

impl std::ops::Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut p = self.clone();
        p.add_scaled_shifted(rhs, -1, 0);
        p
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            let body = match (mag, e) {
                (m, 0) => m.to_string(),
                (1, 1) => "q".into(),
                (1, e) => format!("q^{e}"),
                (m, 1) => format!("{m}q"),
                (m, e) => format!("{m}q^{e}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}
