//! Artinian graded quotients A/Q and their invariant subalgebra quotients.
//!
//! A quotient is presented by canonical normal forms: in each degree the
//! non-pivot monomials of the ideal piece serve as the quotient basis, and
//! reduction is projection along the piece. The socle is computed as the
//! joint kernel of multiplication by the variables; the invariant quotient
//! B = A^G/Q^G is carried inside A/Q as the image of the invariant subspaces,
//! and its socle multiplies against every positive degree because B need not
//! be generated in degree one.

use crate::action::GAction;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::invsys::{check_g_invariance, GradedIdeal};
use crate::linalg::{intersect, kernel, rref, MatrixK, Subspace};
use crate::poly::{basis_size, monomial_basis, HPoly, Monomial};

/// An Artinian graded algebra A/Q with per-degree normal forms.
#[derive(Debug, Clone)]
pub struct ArtinQuotient {
    ideal: GradedIdeal,
    /// Per degree, the basis-monomial indices that survive in the quotient.
    complements: Vec<Vec<usize>>,
    hilbert: Vec<usize>,
}

/// Builds the quotient presentation from an ideal.
pub fn quotient(ideal: GradedIdeal) -> Result<ArtinQuotient> {
    let mut complements = Vec::with_capacity(ideal.top() + 1);
    let mut hilbert = Vec::with_capacity(ideal.top() + 1);
    for d in 0..=ideal.top() {
        let piece = ideal.piece(d);
        let comp = piece.complement_coords();
        hilbert.push(comp.len());
        complements.push(comp);
    }
    if hilbert[0] != 1 {
        return Err(Error::ImproperIdeal);
    }
    Ok(ArtinQuotient {
        ideal,
        complements,
        hilbert,
    })
}

impl ArtinQuotient {
    pub fn ideal(&self) -> &GradedIdeal {
        &self.ideal
    }

    pub fn ring_dim(&self) -> usize {
        self.ideal.ring_dim()
    }

    pub fn field(&self) -> FieldSpec {
        self.ideal.field()
    }

    pub fn top(&self) -> usize {
        self.ideal.top()
    }

    pub fn hilbert(&self) -> &[usize] {
        &self.hilbert
    }

    pub fn dim_at(&self, d: usize) -> usize {
        if d <= self.top() {
            self.hilbert[d]
        } else {
            0
        }
    }

    pub fn total_dim(&self) -> usize {
        self.hilbert.iter().sum()
    }

    /// The quotient-basis monomials of degree d (canonical complement lifts).
    pub fn quotient_monomials(&self, d: usize) -> Result<Vec<Monomial>> {
        let basis = monomial_basis(self.ring_dim(), d)?;
        Ok(self.complements[d]
            .iter()
            .map(|&i| basis[i].clone())
            .collect())
    }

    /// Projection of a degree-d coordinate vector onto the quotient basis.
    pub fn reduce_coords(&self, d: usize, coords: &[Scalar]) -> Result<Vec<Scalar>> {
        if d > self.top() {
            return Ok(Vec::new());
        }
        let remainder = self.ideal.piece(d).reduce_vec(coords)?;
        Ok(self.complements[d]
            .iter()
            .map(|&i| remainder[i].clone())
            .collect())
    }

    /// Normal form of a homogeneous polynomial; the empty vector for degrees
    /// beyond the top (everything there is zero in the quotient).
    pub fn reduce(&self, f: &HPoly) -> Result<Vec<Scalar>> {
        if f.ring_dim() != self.ring_dim() {
            return Err(Error::RingMismatch);
        }
        self.reduce_coords(f.degree(), f.coords())
    }

    /// The canonical representative of a quotient vector: the combination of
    /// complement monomials with the given coordinates.
    pub fn lift(&self, d: usize, qcoords: &[Scalar]) -> Result<HPoly> {
        if qcoords.len() != self.hilbert[d] {
            return Err(Error::DimensionMismatch(format!(
                "expected {} quotient coordinates in degree {d}, got {}",
                self.hilbert[d],
                qcoords.len()
            )));
        }
        let mut coords = vec![self.field().zero(); basis_size(self.ring_dim(), d)];
        for (k, &i) in self.complements[d].iter().enumerate() {
            coords[i] = qcoords[k].clone();
        }
        HPoly::from_coords(self.ring_dim(), d, coords)
    }

    /// Matrix of multiplication by lift(w) from degree d to degree d + deg w,
    /// in quotient coordinates.
    fn mul_matrix(&self, d: usize, w: &HPoly) -> Result<MatrixK> {
        let target = d + w.degree();
        let rows = self.dim_at(target);
        let mut m = MatrixK::zero(self.field(), rows, self.hilbert[d]);
        for c in 0..self.hilbert[d] {
            let mut unit = vec![self.field().zero(); self.hilbert[d]];
            unit[c] = self.field().one();
            let prod = self.lift(d, &unit)?.hmul(w)?;
            for (r, v) in self.reduce(&prod)?.into_iter().enumerate() {
                *m.at_mut(r, c) = v;
            }
        }
        Ok(m)
    }

    /// The socle, degree by degree: vectors killed by every variable. The top
    /// piece is socle in its entirety.
    pub fn socle(&self) -> Result<Vec<Subspace>> {
        let field = self.field();
        let n = self.ring_dim();
        let mut out = Vec::with_capacity(self.top() + 1);
        for d in 0..=self.top() {
            if d == self.top() {
                out.push(Subspace::full(field, self.hilbert[d]));
                continue;
            }
            let mut stacked: Option<MatrixK> = None;
            for i in 0..n {
                let xi = HPoly::variable(field, n, i)?;
                let m = self.mul_matrix(d, &xi)?;
                stacked = Some(match stacked {
                    None => m,
                    Some(s) => s.stack(&m)?,
                });
            }
            out.push(kernel(&stacked.expect("n >= 1 variables")));
        }
        Ok(out)
    }

    /// Matrix of the induced action of a group element on (A/Q)_d. Only
    /// meaningful when the ideal is stable under the group.
    pub fn induced_action_matrix(
        &self,
        act: &GAction,
        element_index: usize,
        d: usize,
    ) -> Result<MatrixK> {
        let h = self.dim_at(d);
        let mut m = MatrixK::zero(self.field(), h, h);
        let action = act.action_matrix(element_index, d)?;
        for c in 0..h {
            let mut unit = vec![self.field().zero(); h];
            unit[c] = self.field().one();
            let lifted = self.lift(d, &unit)?;
            let image = action.apply_vec(lifted.coords())?;
            for (r, v) in self.reduce_coords(d, &image)?.into_iter().enumerate() {
                *m.at_mut(r, c) = v;
            }
        }
        Ok(m)
    }
}

/// Socle summary of an Artinian graded algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GorensteinVerdict {
    pub is_gorenstein: bool,
    pub socle_dims: Vec<usize>,
    /// The unique degree carrying the socle, when it is concentrated.
    pub socle_degree: Option<usize>,
    /// Top degree with a nonzero component.
    pub a_invariant: usize,
}

fn verdict_from(socle_dims: Vec<usize>, component_dims: &[usize]) -> GorensteinVerdict {
    let total: usize = socle_dims.iter().sum();
    let nonzero: Vec<usize> = socle_dims
        .iter()
        .enumerate()
        .filter(|(_, &s)| s > 0)
        .map(|(d, _)| d)
        .collect();
    let socle_degree = if nonzero.len() == 1 {
        Some(nonzero[0])
    } else {
        None
    };
    let a_invariant = component_dims
        .iter()
        .rposition(|&h| h > 0)
        .expect("degree zero is always nonzero");
    GorensteinVerdict {
        is_gorenstein: total == 1,
        socle_dims,
        socle_degree,
        a_invariant,
    }
}

/// Gorenstein test for A/Q: one-dimensional socle.
pub fn gorenstein_verdict(rq: &ArtinQuotient) -> Result<GorensteinVerdict> {
    let socle_dims: Vec<usize> = rq.socle()?.iter().map(Subspace::dim).collect();
    Ok(verdict_from(socle_dims, rq.hilbert()))
}

/// The invariant quotient B = A^G/Q^G, carried as per-degree subspaces of
/// (A/Q)_d.
#[derive(Debug, Clone)]
pub struct InvariantQuotient {
    /// Image of the degree-d invariants inside the quotient coordinates.
    b_spaces: Vec<Subspace>,
    dims: Vec<usize>,
}

impl InvariantQuotient {
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn space(&self, d: usize) -> &Subspace {
        &self.b_spaces[d]
    }
}

/// Builds A^G/Q^G degree by degree: b_d = dim A^G_d - dim(Q_d intersect
/// A^G_d), realized as the image of the invariant subspace under reduction.
/// Fails unless the ideal is stable under the group.
pub fn invariant_quotient(rq: &ArtinQuotient, act: &GAction) -> Result<InvariantQuotient> {
    if act.n() != rq.ring_dim() {
        return Err(Error::RingMismatch);
    }
    if !check_g_invariance(rq.ideal(), act)? {
        return Err(Error::NotGInvariant);
    }
    let field = rq.field();
    let mut b_spaces = Vec::with_capacity(rq.top() + 1);
    let mut dims = Vec::with_capacity(rq.top() + 1);
    for d in 0..=rq.top() {
        let fixed = act.fixed_subspace(d)?;
        let ideal_invariants = intersect(rq.ideal().piece(d), &fixed)?;
        let expected = fixed.dim() - ideal_invariants.dim();
        let mut rows = Vec::with_capacity(fixed.dim());
        for row in fixed.basis_rows() {
            rows.push(rq.reduce_coords(d, &row)?);
        }
        let space = if rows.is_empty() {
            Subspace::zero(field, rq.dim_at(d))
        } else {
            rref(&MatrixK::from_rows(field, rows)?)
        };
        debug_assert_eq!(space.dim(), expected, "image rank vs intersection count");
        dims.push(space.dim());
        b_spaces.push(space);
    }
    Ok(InvariantQuotient { b_spaces, dims })
}

/// Gorenstein test for B = A^G/Q^G. B is graded with b_0 = 1 but need not be
/// standard graded, so the socle pairs every degree against every positive
/// degree with b_e > 0, not just degree one.
pub fn gorenstein_verdict_invariant(
    rq: &ArtinQuotient,
    bq: &InvariantQuotient,
) -> Result<GorensteinVerdict> {
    let top = rq.top();
    let mut socle_dims = Vec::with_capacity(top + 1);
    for d in 0..=top {
        let b_d = bq.space(d);
        if b_d.dim() == 0 {
            socle_dims.push(0);
            continue;
        }
        let mut stacked: Option<MatrixK> = None;
        for e in 1..=top.saturating_sub(d) {
            if bq.dims()[e] == 0 {
                continue;
            }
            for w_row in bq.space(e).basis_rows() {
                let w = rq.lift(e, &w_row)?;
                let m = rq.mul_matrix(d, &w)?;
                stacked = Some(match stacked {
                    None => m,
                    Some(s) => s.stack(&m)?,
                });
            }
        }
        let socle_d = match stacked {
            // No positive-degree elements reach this piece: all of B_d is socle.
            None => b_d.clone(),
            Some(s) => intersect(b_d, &kernel(&s))?,
        };
        socle_dims.push(socle_d.dim());
    }
    Ok(verdict_from(socle_dims, bq.dims()))
}

/// Independent socle computation for A/Q: tests annihilation against every
/// positive-degree quotient basis element, not just the variables. Meant for
/// quotients of small total dimension.
pub fn socle_oracle(rq: &ArtinQuotient) -> Result<Vec<Subspace>> {
    let field = rq.field();
    let top = rq.top();
    let mut out = Vec::with_capacity(top + 1);
    for d in 0..=top {
        let mut stacked: Option<MatrixK> = None;
        for e in 1..=top.saturating_sub(d) {
            for mono in rq.quotient_monomials(e)? {
                let w = HPoly::monomial(field, rq.ring_dim(), &mono)?;
                let m = rq.mul_matrix(d, &w)?;
                stacked = Some(match stacked {
                    None => m,
                    Some(s) => s.stack(&m)?,
                });
            }
        }
        match stacked {
            None => out.push(Subspace::full(field, rq.dim_at(d))),
            Some(s) => out.push(kernel(&s)),
        }
    }
    Ok(out)
}

/// h_d = h_{a-d} for every d; a necessary condition for a Gorenstein verdict.
pub fn hilbert_is_symmetric(dims: &[usize], a_invariant: usize) -> bool {
    (0..=a_invariant).all(|d| dims.get(d).copied().unwrap_or(0) == dims[a_invariant - d])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::MatrixGroup;
    use crate::invsys::{build_inverse_system, Functional};

    fn qmat(rows: Vec<Vec<i64>>) -> MatrixK {
        let field = FieldSpec::Rationals;
        MatrixK::from_rows(
            field,
            rows.into_iter()
                .map(|r| r.into_iter().map(|v| field.from_i64(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn functional(n: usize, m: usize, coeffs: Vec<i64>) -> Functional {
        let field = FieldSpec::Rationals;
        Functional::new(
            n,
            m,
            coeffs.into_iter().map(|v| field.from_i64(v)).collect(),
            None,
        )
        .unwrap()
    }

    fn pm_action() -> GAction {
        GAction::new(
            MatrixGroup::close(vec![qmat(vec![vec![-1, 0], vec![0, -1]])], 100).unwrap(),
        )
    }

    fn twisted_quotient() -> ArtinQuotient {
        quotient(build_inverse_system(&functional(2, 3, vec![1, 1, 0, 0])).unwrap()).unwrap()
    }

    fn monomial_dual_quotient() -> ArtinQuotient {
        quotient(build_inverse_system(&functional(2, 3, vec![1, 0, 0, 0])).unwrap()).unwrap()
    }

    fn irrelevant_quotient() -> ArtinQuotient {
        let field = FieldSpec::Rationals;
        let ideal = GradedIdeal::new(2, field, 0, vec![Subspace::zero(field, 1)]).unwrap();
        quotient(ideal).unwrap()
    }

    #[test]
    fn hilbert_functions() {
        assert_eq!(twisted_quotient().hilbert(), &[1, 2, 2, 1]);
        assert_eq!(monomial_dual_quotient().hilbert(), &[1, 1, 1, 1]);
        let univariate =
            quotient(build_inverse_system(&functional(1, 1, vec![1])).unwrap()).unwrap();
        assert_eq!(univariate.hilbert(), &[1, 1]);
    }

    #[test]
    fn reduction_normal_forms() {
        let rq = twisted_quotient();
        let field = FieldSpec::Rationals;
        // X^3 is nonzero in the quotient and congruent to X^2 Y.
        let x3 = HPoly::new(2, 3, vec![field.one(), field.zero(), field.zero(), field.zero()])
            .unwrap();
        let x2y = HPoly::new(2, 3, vec![field.zero(), field.one(), field.zero(), field.zero()])
            .unwrap();
        let r1 = rq.reduce(&x3).unwrap();
        assert!(r1.iter().any(|v| !v.is_zero()));
        assert_eq!(r1, rq.reduce(&x2y).unwrap());
        // Y^2 lies in the ideal.
        let y2 = HPoly::new(2, 2, vec![field.zero(), field.zero(), field.one()]).unwrap();
        assert!(rq.reduce(&y2).unwrap().iter().all(Scalar::is_zero));
        // Degree 4 is beyond the top.
        let deg4 = HPoly::zero(field, 2, 4).unwrap();
        assert!(rq.reduce(&deg4).unwrap().is_empty());
    }

    #[test]
    fn socles() {
        let dims = |rq: &ArtinQuotient| -> Vec<usize> {
            rq.socle().unwrap().iter().map(Subspace::dim).collect()
        };
        let rq = monomial_dual_quotient();
        assert_eq!(dims(&rq), vec![0, 0, 0, 1]);
        // The unique socle generator is the cube of the first variable.
        let top_basis = rq.quotient_monomials(3).unwrap();
        assert_eq!(top_basis.len(), 1);
        assert_eq!(top_basis[0].exps(), &[3, 0]);
        assert_eq!(dims(&twisted_quotient()), vec![0, 0, 0, 1]);
        assert_eq!(dims(&irrelevant_quotient()), vec![1]);
    }

    #[test]
    fn invariant_piece_intersection_is_the_y_squared_line() {
        let act = pm_action();
        let rq = twisted_quotient();
        let fixed = act.fixed_subspace(2).unwrap();
        let inter = intersect(rq.ideal().piece(2), &fixed).unwrap();
        assert_eq!(inter.dim(), 1);
        assert_eq!(inter.basis_rows(), rref(&qmat(vec![vec![0, 0, 1]])).basis_rows());
    }

    #[test]
    fn gorenstein_verdicts() {
        let v = gorenstein_verdict(&twisted_quotient()).unwrap();
        assert!(v.is_gorenstein);
        assert_eq!(v.socle_degree, Some(3));
        assert_eq!(v.a_invariant, 3);

        let v = gorenstein_verdict(&monomial_dual_quotient()).unwrap();
        assert!(v.is_gorenstein);
        assert_eq!(v.a_invariant, 3);

        // k[X,Y] / (X^2, XY, Y^2): two socle generators in degree 1.
        let field = FieldSpec::Rationals;
        let ideal = GradedIdeal::new(
            2,
            field,
            1,
            vec![Subspace::zero(field, 1), Subspace::zero(field, 2)],
        )
        .unwrap();
        let v = gorenstein_verdict(&quotient(ideal).unwrap()).unwrap();
        assert!(!v.is_gorenstein);
        assert_eq!(v.socle_dims, vec![0, 2]);
        assert_eq!(v.socle_degree, Some(1));
        assert_eq!(v.a_invariant, 1);
    }

    #[test]
    fn invariant_quotient_dims() {
        let act = pm_action();
        let bq = invariant_quotient(&twisted_quotient(), &act).unwrap();
        assert_eq!(bq.dims(), &[1, 0, 2, 0]);
        let bq = invariant_quotient(&monomial_dual_quotient(), &act).unwrap();
        assert_eq!(bq.dims(), &[1, 0, 1, 0]);
        let bq = invariant_quotient(&irrelevant_quotient(), &act).unwrap();
        assert_eq!(bq.dims(), &[1]);
    }

    #[test]
    fn invariant_quotient_requires_stable_ideal() {
        // The X line is not stable under the order-3 companion group.
        let field = FieldSpec::Rationals;
        let piece1 = rref(&qmat(vec![vec![1, 0]]));
        let piece2 = rref(&qmat(vec![vec![1, 0, 0], vec![0, 1, 0]]));
        let ideal = GradedIdeal::new(
            2,
            field,
            2,
            vec![Subspace::zero(field, 1), piece1, piece2],
        )
        .unwrap();
        let rq = quotient(ideal).unwrap();
        let c3 = GAction::new(
            MatrixGroup::close(vec![qmat(vec![vec![0, -1], vec![1, -1]])], 100).unwrap(),
        );
        assert!(matches!(
            invariant_quotient(&rq, &c3),
            Err(Error::NotGInvariant)
        ));
    }

    #[test]
    fn invariant_quotient_verdicts() {
        let act = pm_action();

        let rq = twisted_quotient();
        let bq = invariant_quotient(&rq, &act).unwrap();
        let v = gorenstein_verdict_invariant(&rq, &bq).unwrap();
        assert!(!v.is_gorenstein);
        assert_eq!(v.socle_dims, vec![0, 0, 2, 0]);
        assert_eq!(v.socle_degree, Some(2));
        assert_eq!(v.a_invariant, 2);

        let rq = monomial_dual_quotient();
        let bq = invariant_quotient(&rq, &act).unwrap();
        let v = gorenstein_verdict_invariant(&rq, &bq).unwrap();
        assert!(v.is_gorenstein);
        assert_eq!(v.a_invariant, 2);
        // The a-invariant drops below the ambient quotient's.
        assert_eq!(gorenstein_verdict(&rq).unwrap().a_invariant, 3);

        let rq = irrelevant_quotient();
        let bq = invariant_quotient(&rq, &act).unwrap();
        let v = gorenstein_verdict_invariant(&rq, &bq).unwrap();
        assert!(v.is_gorenstein);
        assert_eq!(v.a_invariant, 0);
    }

    #[test]
    fn rank_nullity_per_degree() {
        for rq in [twisted_quotient(), monomial_dual_quotient()] {
            for d in 0..=rq.top() {
                assert_eq!(
                    rq.hilbert()[d] + rq.ideal().piece(d).dim(),
                    basis_size(rq.ring_dim(), d)
                );
            }
        }
    }

    #[test]
    fn gorenstein_implies_symmetric_hilbert() {
        for coeffs in [
            vec![1, 1, 0, 0],
            vec![1, 0, 0, 0],
            vec![2, -1, 3, 5],
            vec![0, 1, 1, 0],
        ] {
            let rq = quotient(build_inverse_system(&functional(2, 3, coeffs)).unwrap()).unwrap();
            let v = gorenstein_verdict(&rq).unwrap();
            assert!(v.is_gorenstein);
            assert!(hilbert_is_symmetric(rq.hilbert(), v.a_invariant));
        }
    }

    #[test]
    fn socle_oracle_agrees_with_kernel_method() {
        let mut checked = 0;
        for coeffs in [
            vec![1, 1, 0, 0],
            vec![1, 0, 0, 0],
            vec![2, -1, 3, 5],
            vec![1, 2, 3, 4],
        ] {
            let rq = quotient(build_inverse_system(&functional(2, 3, coeffs)).unwrap()).unwrap();
            if rq.total_dim() > 12 {
                continue;
            }
            assert_eq!(rq.socle().unwrap(), socle_oracle(&rq).unwrap());
            checked += 1;
        }
        // The non-Gorenstein monomial quotient as well.
        let field = FieldSpec::Rationals;
        let ideal = GradedIdeal::new(
            2,
            field,
            1,
            vec![Subspace::zero(field, 1), Subspace::zero(field, 2)],
        )
        .unwrap();
        let rq = quotient(ideal).unwrap();
        assert_eq!(rq.socle().unwrap(), socle_oracle(&rq).unwrap());
        assert!(checked > 0);
    }

    #[test]
    fn invariant_dims_match_induced_fixed_spaces() {
        let act = pm_action();
        for rq in [twisted_quotient(), monomial_dual_quotient()] {
            let bq = invariant_quotient(&rq, &act).unwrap();
            for d in 0..=rq.top() {
                // Fixed subspace of the induced action on (A/Q)_d.
                let h = rq.dim_at(d);
                let identity = MatrixK::identity(rq.field(), h);
                let mut stacked: Option<MatrixK> = None;
                for &g in act.group().generator_indices() {
                    let m = rq.induced_action_matrix(&act, g, d).unwrap();
                    let diff = m.sub(&identity).unwrap();
                    stacked = Some(match stacked {
                        None => diff,
                        Some(s) => s.stack(&diff).unwrap(),
                    });
                }
                let fixed_dim = match stacked {
                    None => h,
                    Some(s) => kernel(&s).dim(),
                };
                assert_eq!(fixed_dim, bq.dims()[d], "degree {d}");
            }
        }
    }
}
