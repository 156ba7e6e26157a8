//! Graded ideals from linear functionals on a single graded piece.
//!
//! Given a nonzero functional phi on A_m, the ideal has degree-j piece
//! {a in A_j : phi(a . A_{m-j}) = 0}, with kernel-of-phi in degree m and the
//! full space above. The quotient is Artinian Gorenstein with socle in degree
//! m, and when phi is equivariant for a character the ideal is stable under
//! the group, which the verification pipeline checks instance by instance.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::group::Character;
use crate::linalg::{kernel, MatrixK, Subspace};
use crate::poly::{basis_index, basis_size, monomial_basis, HPoly};

/// A linear map A_m -> k given by its values on the degree-m monomial basis,
/// optionally twisted by a character of the acting group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functional {
    n: usize,
    degree: usize,
    coeffs: Vec<Scalar>,
    character: Option<Character>,
}

impl Functional {
    pub fn new(
        n: usize,
        degree: usize,
        coeffs: Vec<Scalar>,
        character: Option<Character>,
    ) -> Result<Self> {
        if degree < 1 {
            return Err(Error::DegreeOutOfRange {
                d: degree,
                min: 1,
                max: crate::poly::MAX_DEGREE,
            });
        }
        let expected = basis_size(n, degree);
        // Reuse the polynomial validation for width/field checks.
        let as_poly = HPoly::new(n, degree, coeffs)?;
        if as_poly.is_zero() {
            return Err(Error::ZeroFunctional);
        }
        let coeffs = as_poly.into_coords();
        debug_assert_eq!(coeffs.len(), expected);
        Ok(Functional {
            n,
            degree,
            coeffs,
            character,
        })
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

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn character(&self) -> Option<&Character> {
        self.character.as_ref()
    }

    pub fn with_character(mut self, character: Option<Character>) -> Self {
        self.character = character;
        self
    }

    /// phi(f) for a degree-m polynomial.
    pub fn evaluate(&self, f: &HPoly) -> Result<Scalar> {
        if f.ring_dim() != self.n || f.degree() != self.degree {
            return Err(Error::RingMismatch);
        }
        let mut acc = self.field().zero();
        for (a, b) in self.coeffs.iter().zip(f.coords()) {
            if !a.is_zero() && !b.is_zero() {
                acc = acc.add(&a.mul(b)?)?;
            }
        }
        Ok(acc)
    }
}

/// A homogeneous ideal in k[X_1..X_n], stored as one canonical subspace per
/// degree up to `top`; every piece above `top` is the full graded component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedIdeal {
    n: usize,
    field: FieldSpec,
    top: usize,
    pieces: Vec<Subspace>,
}

impl GradedIdeal {
    pub fn new(n: usize, field: FieldSpec, top: usize, pieces: Vec<Subspace>) -> Result<Self> {
        if pieces.len() != top + 1 {
            return Err(Error::DimensionMismatch(format!(
                "expected {} pieces for top degree {top}, got {}",
                top + 1,
                pieces.len()
            )));
        }
        for (d, piece) in pieces.iter().enumerate() {
            if piece.ambient_dim() != basis_size(n, d) {
                return Err(Error::DimensionMismatch(format!(
                    "piece {d} has ambient {} but A_{d} has dimension {}",
                    piece.ambient_dim(),
                    basis_size(n, d)
                )));
            }
        }
        if !pieces[0].is_zero() {
            return Err(Error::ImproperIdeal);
        }
        Ok(GradedIdeal {
            n,
            field,
            top,
            pieces,
        })
    }

    pub fn ring_dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// The degree-d piece for d <= top. Pieces above top are full by
    /// convention and are not stored.
    pub fn piece(&self, d: usize) -> &Subspace {
        &self.pieces[d]
    }

    pub fn pieces(&self) -> &[Subspace] {
        &self.pieces
    }

    /// Checks the ideal property degree by degree: every variable multiple of
    /// every stored basis row must land in the next piece.
    pub fn validate_closure(&self) -> Result<()> {
        for d in 0..self.top {
            let next = &self.pieces[d + 1];
            for row in self.pieces[d].basis_rows() {
                let u = HPoly::from_coords(self.n, d, row)?;
                for i in 0..self.n {
                    let xi = HPoly::variable(self.field, self.n, i)?;
                    let prod = u.hmul(&xi)?;
                    if !next.contains(prod.coords())? {
                        return Err(Error::InvalidInput(format!(
                            "ideal closure fails from degree {d} on variable {i}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The graded ideal annihilating phi: degree-j piece equal to the kernel of
/// the pairing matrix (mu, nu) -> phi(mu nu) with mu over A_j and nu over
/// A_{m-j}; ker(phi) itself in degree m.
pub fn build_inverse_system(phi: &Functional) -> Result<GradedIdeal> {
    let n = phi.ring_dim();
    let m = phi.degree();
    let field = phi.field();
    let target_index = basis_index(n, m)?;

    let mut pieces = Vec::with_capacity(m + 1);
    pieces.push(Subspace::zero(field, 1));
    for j in 1..=m {
        let cols = monomial_basis(n, j)?;
        let rows = monomial_basis(n, m - j)?;
        let mut pairing = MatrixK::zero(field, rows.len(), cols.len());
        for (r, nu) in rows.iter().enumerate() {
            for (c, mu) in cols.iter().enumerate() {
                let idx = target_index[mu.mul(nu).exps()];
                *pairing.at_mut(r, c) = phi.coeffs()[idx].clone();
            }
        }
        pieces.push(kernel(&pairing));
    }
    GradedIdeal::new(n, field, m, pieces)
}

/// Whether every generator of the acting group maps each stored piece into
/// itself.
pub fn check_g_invariance(ideal: &GradedIdeal, act: &crate::action::GAction) -> Result<bool> {
    if act.n() != ideal.ring_dim() {
        return Err(Error::RingMismatch);
    }
    for d in 0..=ideal.top() {
        let piece = ideal.piece(d);
        if piece.is_zero() || piece.is_full() {
            continue;
        }
        for &g in act.group().generator_indices() {
            let mat = act.action_matrix(g, d)?;
            for row in piece.basis_rows() {
                let image = mat.apply_vec(&row)?;
                if !piece.contains(&image)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
