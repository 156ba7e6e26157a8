//! The linear action of a matrix group on the polynomial ring.
//!
//! An element sigma acts by the substitution X_j -> sum_i sigma_ij X_i,
//! extended multiplicatively; per-degree action matrices are cached behind a
//! mutex so Reynolds averaging and fixed-space computations can revisit the
//! same degree cheaply. With this convention the matrices are multiplicative:
//! M_{sigma tau, d} = M_{sigma, d} . M_{tau, d}.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::group::{Character, MatrixGroup};
use crate::invsys::Functional;
use crate::linalg::{kernel, rref, MatrixK, Subspace};
use crate::poly::{basis_size, monomial_basis, HPoly};

#[derive(Debug)]
pub struct GAction {
    group: Arc<MatrixGroup>,
    cache: Mutex<HashMap<(usize, usize), Arc<MatrixK>>>,
}

impl GAction {
    pub fn new(group: MatrixGroup) -> Self {
        GAction {
            group: Arc::new(group),
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn group(&self) -> &MatrixGroup {
        &self.group
    }

    pub fn group_arc(&self) -> Arc<MatrixGroup> {
        Arc::clone(&self.group)
    }

    pub fn n(&self) -> usize {
        self.group.n()
    }

    /// The matrix of f -> sigma.f on the degree-d monomial basis, memoized
    /// per (element, degree).
    pub fn action_matrix(&self, element_index: usize, d: usize) -> Result<Arc<MatrixK>> {
        let key = (element_index, d);
        let mut cache = self.cache.lock().expect("action cache poisoned");
        if let Some(m) = cache.get(&key) {
            return Ok(Arc::clone(m));
        }
        let m = Arc::new(self.build_action_matrix(element_index, d)?);
        cache.insert(key, Arc::clone(&m));
        Ok(m)
    }

    fn build_action_matrix(&self, element_index: usize, d: usize) -> Result<MatrixK> {
        let n = self.group.n();
        let field = self.group.field();
        let sigma = self.group.element(element_index).matrix();
        // Images of the variables: X_j -> column j of sigma.
        let mut var_images = Vec::with_capacity(n);
        for j in 0..n {
            let coords = (0..n).map(|i| sigma.at(i, j).clone()).collect();
            var_images.push(HPoly::from_coords(n, 1, coords)?);
        }
        let basis = monomial_basis(n, d)?;
        let size = basis_size(n, d);
        let mut out = MatrixK::zero(field, size, size);
        for (col, mono) in basis.iter().enumerate() {
            let mut image = HPoly::new(n, 0, vec![field.one()])?;
            for (j, &e) in mono.exps().iter().enumerate() {
                for _ in 0..e {
                    image = image.hmul(&var_images[j])?;
                }
            }
            for (row, c) in image.coords().iter().enumerate() {
                *out.at_mut(row, col) = c.clone();
            }
        }
        Ok(out)
    }

    pub fn apply_index(&self, element_index: usize, f: &HPoly) -> Result<HPoly> {
        if f.ring_dim() != self.group.n() {
            return Err(Error::RingMismatch);
        }
        let m = self.action_matrix(element_index, f.degree())?;
        HPoly::from_coords(f.ring_dim(), f.degree(), m.apply_vec(f.coords())?)
    }

    /// sigma.f for an explicit matrix, which must be a group element.
    pub fn apply(&self, sigma: &MatrixK, f: &HPoly) -> Result<HPoly> {
        let idx = self
            .group
            .index_of(sigma)
            .ok_or(Error::ElementNotInGroup)?;
        self.apply_index(idx, f)
    }

    /// The Reynolds operator: the average of the orbit of f.
    pub fn reynolds(&self, f: &HPoly) -> Result<HPoly> {
        let field = f.field();
        let mut acc = HPoly::zero(field, f.ring_dim(), f.degree())?;
        for idx in 0..self.group.order() {
            acc = acc.add(&self.apply_index(idx, f)?)?;
        }
        let scale = field.from_i64(self.group.order() as i64).inv()?;
        acc.scale(&scale)
    }

    /// The invariant subspace of A_d, cut out by the generators' fixed-point
    /// equations (fixed points of generators are fixed points of the group).
    pub fn fixed_subspace(&self, d: usize) -> Result<Subspace> {
        let field = self.group.field();
        let size = basis_size(self.group.n(), d);
        let identity = MatrixK::identity(field, size);
        let mut stacked: Option<MatrixK> = None;
        for &g in self.group.generator_indices() {
            let m = self.action_matrix(g, d)?;
            let diff = m.sub(&identity)?;
            stacked = Some(match stacked {
                None => diff,
                Some(s) => s.stack(&diff)?,
            });
        }
        match stacked {
            None => Ok(Subspace::full(field, size)),
            Some(s) => Ok(kernel(&s)),
        }
    }

    /// The image of the Reynolds operator on A_d as a canonical subspace;
    /// equal to [`GAction::fixed_subspace`], which the tests assert.
    pub fn reynolds_image(&self, d: usize) -> Result<Subspace> {
        let n = self.group.n();
        let field = self.group.field();
        let basis = monomial_basis(n, d)?;
        let mut rows = Vec::with_capacity(basis.len());
        for mono in &basis {
            let f = HPoly::monomial(field, n, mono)?;
            rows.push(self.reynolds(&f)?.into_coords());
        }
        Ok(rref(&MatrixK::from_rows(field, rows)?))
    }
}

/// Whether phi(sigma.a) = chi(sigma) phi(a) for every group element and every
/// degree-m basis monomial.
pub fn check_equivariant(act: &GAction, phi: &Functional, chi: &Character) -> Result<bool> {
    if phi.ring_dim() != act.n() {
        return Err(Error::RingMismatch);
    }
    let m = phi.degree();
    let size = basis_size(act.n(), m);
    for idx in 0..act.group().order() {
        let mat = act.action_matrix(idx, m)?;
        let chi_v = chi.value(idx);
        for col in 0..size {
            // phi applied to the image of the col-th basis monomial.
            let mut lhs = act.group().field().zero();
            for row in 0..size {
                let e = mat.at(row, col);
                if !e.is_zero() {
                    lhs = lhs.add(&phi.coeffs()[row].mul(e)?)?;
                }
            }
            let rhs = chi_v.mul(&phi.coeffs()[col])?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Builds the functional eta . reynolds on A_m from values of eta on the
/// echelon basis of the invariant subspace. The result carries the trivial
/// character and is equivariant by construction.
pub fn lift_functional(act: &GAction, m: usize, eta_values: &[Scalar]) -> Result<Functional> {
    let fixed = act.fixed_subspace(m)?;
    if fixed.dim() == 0 {
        return Err(Error::InvariantsVanish(m));
    }
    if eta_values.len() != fixed.dim() {
        return Err(Error::DimensionMismatch(format!(
            "eta needs {} values (dim of the invariant subspace), got {}",
            fixed.dim(),
            eta_values.len()
        )));
    }
    if eta_values.iter().all(Scalar::is_zero) {
        return Err(Error::ZeroFunctional);
    }
    let n = act.n();
    let field = act.group().field();
    let basis = monomial_basis(n, m)?;
    let mut coeffs = Vec::with_capacity(basis.len());
    for mono in &basis {
        let rho = act.reynolds(&HPoly::monomial(field, n, mono)?)?;
        // rho(mono) lies in the invariant subspace; its coefficients on the
        // echelon basis are its entries at the pivot columns.
        let mut value = field.zero();
        for (i, &p) in fixed.pivots().iter().enumerate() {
            if !rho.coords()[p].is_zero() && !eta_values[i].is_zero() {
                value = value.add(&rho.coords()[p].mul(&eta_values[i])?)?;
            }
        }
        coeffs.push(value);
    }
    Functional::new(n, m, coeffs, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

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

    fn qp(n: usize, d: usize, coeffs: Vec<i64>) -> HPoly {
        let field = FieldSpec::Rationals;
        HPoly::new(n, d, coeffs.into_iter().map(|v| field.from_i64(v)).collect()).unwrap()
    }

    fn pm_action() -> GAction {
        let g = MatrixGroup::close(vec![qmat(vec![vec![-1, 0], vec![0, -1]])], 100).unwrap();
        GAction::new(g)
    }

    fn c3_action() -> GAction {
        let g = MatrixGroup::close(vec![qmat(vec![vec![0, -1], vec![1, -1]])], 100).unwrap();
        GAction::new(g)
    }

    fn s3_action() -> GAction {
        let g = MatrixGroup::close(
            vec![
                qmat(vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]),
                qmat(vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]),
            ],
            100,
        )
        .unwrap();
        GAction::new(g)
    }

    #[test]
    fn sign_action_on_variables_and_monomials() {
        let act = pm_action();
        let x = HPoly::variable(FieldSpec::Rationals, 2, 0).unwrap();
        let sigma = qmat(vec![vec![-1, 0], vec![0, -1]]);
        assert_eq!(act.apply(&sigma, &x).unwrap(), qp(2, 1, vec![-1, 0]));
        // Identity fixes everything.
        let f = qp(2, 3, vec![1, -2, 0, 5]);
        assert_eq!(act.apply_index(0, &f).unwrap(), f);
        // X^2 Y has odd degree, so sigma negates it.
        let x2y = qp(2, 3, vec![0, 1, 0, 0]);
        assert_eq!(act.apply(&sigma, &x2y).unwrap(), qp(2, 3, vec![0, -1, 0, 0]));
        assert!(act.apply(&qmat(vec![vec![2, 0], vec![0, 2]]), &x).is_err());
    }

    #[test]
    fn reynolds_on_sign_group() {
        let act = pm_action();
        let x = HPoly::variable(FieldSpec::Rationals, 2, 0).unwrap();
        assert!(act.reynolds(&x).unwrap().is_zero());
        let x2 = qp(2, 2, vec![1, 0, 0]);
        assert_eq!(act.reynolds(&x2).unwrap(), x2);
    }

    #[test]
    fn reynolds_on_cyclic_three() {
        let act = c3_action();
        // Oracle: average the orbit by explicit substitution. The generator
        // sends X -> Y and Y -> -X-Y, so the orbit of X^2 is
        // {X^2, Y^2, (X+Y)^2} and the average is (2/3)(X^2 + XY + Y^2).
        let field = FieldSpec::Rationals;
        let x2 = qp(2, 2, vec![1, 0, 0]);
        let y2 = qp(2, 2, vec![0, 0, 1]);
        let x_plus_y_sq = qp(2, 1, vec![1, 1]).hmul(&qp(2, 1, vec![1, 1])).unwrap();
        let expected = x2
            .add(&y2)
            .unwrap()
            .add(&x_plus_y_sq)
            .unwrap()
            .scale(&field.parse_literal("1/3").unwrap())
            .unwrap();
        assert_eq!(act.reynolds(&x2).unwrap(), expected);
    }

    #[test]
    fn fixed_subspaces_of_sign_group() {
        let act = pm_action();
        assert!(act.fixed_subspace(1).unwrap().is_zero());
        assert!(act.fixed_subspace(2).unwrap().is_full());
        let d0 = act.fixed_subspace(0).unwrap();
        assert!(d0.is_full());
        assert_eq!(d0.dim(), 1);
    }

    #[test]
    fn reynolds_is_projection_onto_fixed_subspace() {
        for act in [pm_action(), c3_action(), s3_action()] {
            for d in 0..=4usize {
                assert_eq!(
                    act.reynolds_image(d).unwrap(),
                    act.fixed_subspace(d).unwrap(),
                    "degree {d}"
                );
            }
            // rho . rho = rho and rho fixes invariants, on a spread of inputs.
            let n = act.n();
            let field = act.group().field();
            for d in 1..=3usize {
                for seed in 0..5i64 {
                    let coeffs = (0..basis_size(n, d))
                        .map(|i| field.from_i64((seed * 3 + i as i64) % 5 - 2))
                        .collect();
                    let f = HPoly::new(n, d, coeffs).unwrap();
                    let rho_f = act.reynolds(&f).unwrap();
                    assert_eq!(act.reynolds(&rho_f).unwrap(), rho_f);
                    let fixed = act.fixed_subspace(d).unwrap();
                    assert!(fixed.contains(rho_f.coords()).unwrap());
                }
            }
        }
    }

    #[test]
    fn reynolds_is_invariant_linear() {
        // rho(g.f) = g.rho(f) for invariant g.
        let act = c3_action();
        let field = FieldSpec::Rationals;
        let g_inv = act.reynolds(&qp(2, 2, vec![1, 0, 0])).unwrap();
        assert!(!g_inv.is_zero());
        for seed in 0..8i64 {
            let coeffs = (0..basis_size(2, 2))
                .map(|i| field.from_i64((seed + i as i64) % 7 - 3))
                .collect();
            let f = HPoly::new(2, 2, coeffs).unwrap();
            let lhs = act.reynolds(&g_inv.hmul(&f).unwrap()).unwrap();
            let rhs = g_inv.hmul(&act.reynolds(&f).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn fixed_dims_do_not_depend_on_generating_set() {
        let g1 = MatrixGroup::close(vec![qmat(vec![vec![0, -1], vec![1, -1]])], 100).unwrap();
        // Same group generated by the square of the companion matrix.
        let sq = qmat(vec![vec![0, -1], vec![1, -1]])
            .mul(&qmat(vec![vec![0, -1], vec![1, -1]]))
            .unwrap();
        let g2 = MatrixGroup::close(vec![sq], 100).unwrap();
        let a1 = GAction::new(g1);
        let a2 = GAction::new(g2);
        for d in 0..=5usize {
            assert_eq!(
                a1.fixed_subspace(d).unwrap().dim(),
                a2.fixed_subspace(d).unwrap().dim()
            );
        }
    }

    #[test]
    fn action_matrices_are_multiplicative() {
        // Checked on the full Cayley table of the nonabelian group, where the
        // substitution convention matters.
        for act in [pm_action(), s3_action()] {
            let order = act.group().order();
            for d in 0..=4usize {
                for i in 0..order {
                    for j in 0..order {
                        let mi = act.action_matrix(i, d).unwrap();
                        let mj = act.action_matrix(j, d).unwrap();
                        let mij = act.action_matrix(act.group().mul_indices(i, j), d).unwrap();
                        assert_eq!(mi.mul(&mj).unwrap(), *mij, "pair ({i},{j}) degree {d}");
                    }
                }
            }
        }
    }

    #[test]
    fn action_cache_is_safe_under_concurrent_readers() {
        let act = s3_action();
        let expected = act.action_matrix(3, 3).unwrap();
        std::thread::scope(|scope| {
            for _ in 0..8 {
                scope.spawn(|| {
                    for idx in 0..act.group().order() {
                        for d in 0..=3usize {
                            let m = act.action_matrix(idx, d).unwrap();
                            assert_eq!(m.rows(), basis_size(3, d));
                        }
                    }
                    assert_eq!(act.action_matrix(3, 3).unwrap(), expected);
                });
            }
        });
    }

    #[test]
    fn equivariance_of_the_twisted_functional() {
        let act = pm_action();
        let field = FieldSpec::Rationals;
        // Values 1,1,0,0 on X^3, X^2Y, XY^2, Y^3.
        let alpha = Functional::new(
            2,
            3,
            vec![
                field.one(),
                field.one(),
                field.zero(),
                field.zero(),
            ],
            None,
        )
        .unwrap();
        let sign = Character::from_generator_values(act.group(), &[field.from_i64(-1)]).unwrap();
        let trivial = Character::trivial(act.group());
        assert!(check_equivariant(&act, &alpha, &sign).unwrap());
        assert!(!check_equivariant(&act, &alpha, &trivial).unwrap());
    }

    #[test]
    fn lifted_functionals_are_equivariant() {
        let act = pm_action();
        let field = FieldSpec::Rationals;
        // A^G_2 is all of A_2 here, so eta dual to X^2 gives phi = X^2's dual.
        let phi = lift_functional(&act, 2, &[field.one(), field.zero(), field.zero()]).unwrap();
        assert_eq!(
            phi.coeffs(),
            &[field.one(), field.zero(), field.zero()]
        );
        let trivial = Character::trivial(act.group());
        assert!(check_equivariant(&act, &phi, &trivial).unwrap());

        // No invariants in odd degree for the sign group.
        assert_eq!(act.fixed_subspace(3).unwrap().dim(), 0);
        assert_eq!(
            lift_functional(&act, 3, &[field.one()]),
            Err(Error::InvariantsVanish(3))
        );
        assert_eq!(lift_functional(&act, 3, &[]), Err(Error::InvariantsVanish(3)));

        let c3 = c3_action();
        let phi = lift_functional(&c3, 2, &[field.one()]).unwrap();
        let trivial = Character::trivial(c3.group());
        assert!(check_equivariant(&c3, &phi, &trivial).unwrap());

        assert_eq!(
            lift_functional(&c3, 2, &[field.zero()]),
            Err(Error::ZeroFunctional)
        );
    }
}
