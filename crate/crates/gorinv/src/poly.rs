//! The standard-graded polynomial ring k[X_1,...,X_n]: monomial enumeration in
//! graded-lex order and dense homogeneous polynomials over one degree.
//!
//! Every graded piece A_d is identified with k^{C(n+d-1,d)} through the fixed
//! monomial basis, so the rest of the crate can treat ring computations as
//! exact linear algebra.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// Practical ring-width bound; C(n+d-1,d) growth makes larger rings pointless
/// at desk scale.
pub const MAX_RING_DIM: usize = 6;
/// Practical degree bound.
pub const MAX_DEGREE: usize = 20;

/// A monomial as an exponent tuple of fixed width n.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    /// Graded-lex: degree first, then lexicographic on exponents with the
    /// earlier variable dominating.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        let names = ["X", "Y", "Z", "W", "V", "U"];
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            let name = if self.exps.len() <= names.len() {
                names[i].to_string()
            } else {
                format!("X{}", i + 1)
            };
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

fn check_ring(n: usize, d: usize) -> Result<()> {
    if !(1..=MAX_RING_DIM).contains(&n) {
        return Err(Error::RingDimOutOfRange {
            n,
            max: MAX_RING_DIM,
        });
    }
    if d > MAX_DEGREE {
        return Err(Error::DegreeOutOfRange {
            d,
            min: 0,
            max: MAX_DEGREE,
        });
    }
    Ok(())
}

/// All degree-d monomials in n variables, largest first in graded-lex order,
/// so X_1^d leads and X_n^d closes the list.
pub fn monomial_basis(n: usize, d: usize) -> Result<Vec<Monomial>> {
    check_ring(n, d)?;
    let mut out = Vec::with_capacity(basis_size(n, d));
    let mut current = vec![0u32; n];
    fill_basis(&mut out, &mut current, 0, d as u32);
    Ok(out)
}

fn fill_basis(out: &mut Vec<Monomial>, current: &mut Vec<u32>, var: usize, remaining: u32) {
    if var + 1 == current.len() {
        current[var] = remaining;
        out.push(Monomial::new(current.clone()));
        current[var] = 0;
        return;
    }
    for e in (0..=remaining).rev() {
        current[var] = e;
        fill_basis(out, current, var + 1, remaining - e);
        current[var] = 0;
    }
}

/// C(n+d-1, d), the size of the degree-d monomial basis.
pub fn basis_size(n: usize, d: usize) -> usize {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..d {
        num *= (n + i) as u128;
        den *= (i + 1) as u128;
    }
    (num / den) as usize
}

/// Index lookup table for a degree's monomial basis.
pub fn basis_index(n: usize, d: usize) -> Result<HashMap<Vec<u32>, usize>> {
    Ok(monomial_basis(n, d)?
        .into_iter()
        .enumerate()
        .map(|(i, m)| (m.exps, i))
        .collect())
}

/// A homogeneous polynomial: a dense coefficient vector over the degree-d
/// monomial basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPoly {
    n: usize,
    degree: usize,
    coeffs: Vec<Scalar>,
}

impl HPoly {
    pub fn new(n: usize, degree: usize, coeffs: Vec<Scalar>) -> Result<Self> {
        check_ring(n, degree)?;
        let expected = basis_size(n, degree);
        if coeffs.len() != expected {
            return Err(Error::DimensionMismatch(format!(
                "degree-{degree} polynomial in {n} variables needs {expected} coefficients, got {}",
                coeffs.len()
            )));
        }
        let field = coeffs[0].field();
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(Error::FieldMismatch(
                format!("{field:?}"),
                "mixed coefficient fields".into(),
            ));
        }
        Ok(HPoly { n, degree, coeffs })
    }

    pub fn zero(field: FieldSpec, n: usize, degree: usize) -> Result<Self> {
        check_ring(n, degree)?;
        Ok(HPoly {
            n,
            degree,
            coeffs: vec![field.zero(); basis_size(n, degree)],
        })
    }

    /// The i-th variable as a degree-1 polynomial.
    pub fn variable(field: FieldSpec, n: usize, i: usize) -> Result<Self> {
        let mut p = Self::zero(field, n, 1)?;
        // Degree-1 basis is X_1, ..., X_n in order.
        p.coeffs[i] = field.one();
        Ok(p)
    }

    pub fn monomial(field: FieldSpec, n: usize, mono: &Monomial) -> Result<Self> {
        let d = mono.degree();
        let mut p = Self::zero(field, n, d)?;
        let idx = basis_index(n, d)?
            .get(mono.exps())
            .copied()
            .ok_or_else(|| Error::DimensionMismatch("monomial width mismatch".into()))?;
        p.coeffs[idx] = field.one();
        Ok(p)
    }

    pub fn ring_dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn field(&self) -> FieldSpec {
        self.coeffs[0].field()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coeffs
    }

    pub fn from_coords(n: usize, degree: usize, coords: Vec<Scalar>) -> Result<Self> {
        HPoly::new(n, degree, coords)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &HPoly) -> Result<HPoly> {
        if self.n != other.n || self.degree != other.degree {
            return Err(Error::RingMismatch);
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        HPoly::new(self.n, self.degree, coeffs)
    }

    pub fn scale(&self, c: &Scalar) -> Result<HPoly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| a.mul(c))
            .collect::<Result<Vec<_>>>()?;
        HPoly::new(self.n, self.degree, coeffs)
    }

    /// Exact product of two homogeneous polynomials.
    pub fn hmul(&self, other: &HPoly) -> Result<HPoly> {
        if self.n != other.n || self.field() != other.field() {
            return Err(Error::RingMismatch);
        }
        let target = self.degree + other.degree;
        check_ring(self.n, target)?;
        let basis_a = monomial_basis(self.n, self.degree)?;
        let basis_b = monomial_basis(self.n, other.degree)?;
        let index = basis_index(self.n, target)?;
        let mut out = HPoly::zero(self.field(), self.n, target)?;
        for (i, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in other.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let prod = basis_a[i].mul(&basis_b[j]);
                let idx = index[prod.exps()];
                out.coeffs[idx] = out.coeffs[idx].add(&ca.mul(cb)?)?;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let basis = monomial_basis(self.n, self.degree).map_err(|_| fmt::Error)?;
        let mut first = true;
        for (c, m) in self.coeffs.iter().zip(&basis) {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let (sign, mag) = match cs.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", cs),
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            if mag == "1" && m.degree() > 0 {
                write!(f, "{m}")?;
            } else if m.degree() == 0 {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
