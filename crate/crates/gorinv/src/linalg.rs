//! Dense exact linear algebra over a [`FieldSpec`].
//!
//! Subspaces are kept in reduced row echelon form, which makes every
//! representation canonical: two subspaces are equal exactly when their basis
//! matrices are identical. All graded-piece computations downstream rest on
//! this normal form.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// Dense row-major matrix with entries in one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixK {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl MatrixK {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        for e in &entries {
            if e.field() != field {
                return Err(Error::FieldMismatch(
                    format!("{:?}", field),
                    format!("{:?}", e.field()),
                ));
            }
        }
        Ok(MatrixK {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        MatrixK {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = field.one();
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(n_rows * n_cols);
        for r in rows {
            if r.len() != n_cols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            entries.extend(r);
        }
        MatrixK::new(field, n_rows, n_cols, entries)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> MatrixK {
        let mut t = MatrixK::zero(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &MatrixK) -> Result<MatrixK> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = MatrixK::zero(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let term = a.mul(other.at(k, c))?;
                    *out.at_mut(r, c) = out.at(r, c).add(&term)?;
                }
            }
        }
        Ok(out)
    }

    /// M.v for a column vector v.
    pub fn apply_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector length {} does not match {} columns",
                v.len(),
                self.cols
            )));
        }
        let mut out = vec![self.field.zero(); self.rows];
        for (r, out_r) in out.iter_mut().enumerate() {
            for (c, vc) in v.iter().enumerate() {
                if !self.at(r, c).is_zero() && !vc.is_zero() {
                    *out_r = out_r.add(&self.at(r, c).mul(vc)?)?;
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MatrixK) -> Result<MatrixK> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix subtraction".into()));
        }
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a = a.sub(b)?;
        }
        Ok(out)
    }

    /// Vertical stack; both matrices must have the same column count.
    pub fn stack(&self, other: &MatrixK) -> Result<MatrixK> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("stack with unequal widths".into()));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        MatrixK::new(self.field, self.rows + other.rows, self.cols, entries)
    }

    /// Determinant by fraction-exact Gaussian elimination.
    pub fn det(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of non-square".into()));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = self.field.one();
        for col in 0..n {
            let pivot_row = (col..n).find(|&r| !m.at(r, col).is_zero());
            let Some(pr) = pivot_row else {
                return Ok(self.field.zero());
            };
            if pr != col {
                m.swap_rows(pr, col);
                det = det.neg();
            }
            let pivot = m.at(col, col).clone();
            det = det.mul(&pivot)?;
            let inv = pivot.inv()?;
            for r in col + 1..n {
                let factor = m.at(r, col).mul(&inv)?;
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let delta = factor.mul(m.at(col, c))?;
                    *m.at_mut(r, c) = m.at(r, c).sub(&delta)?;
                }
            }
        }
        Ok(det)
    }

    /// Inverse via Gauss-Jordan on the identity-augmented matrix.
    pub fn inverse(&self) -> Result<MatrixK> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of non-square".into()));
        }
        let n = self.rows;
        let mut aug = MatrixK::zero(self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                *aug.at_mut(r, c) = self.at(r, c).clone();
            }
            *aug.at_mut(r, n + r) = self.field.one();
        }
        let (reduced, pivots) = gauss_jordan(aug);
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Err(Error::SingularMatrix);
        }
        let mut inv = MatrixK::zero(self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                *inv.at_mut(r, c) = reduced.at(r, n + c).clone();
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

/// In-place Gauss-Jordan; returns the reduced matrix (zero rows retained at
/// the bottom) and the pivot column list.
fn gauss_jordan(mut m: MatrixK) -> (MatrixK, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut lead = 0usize;
    for col in 0..m.cols() {
        let pivot_row = (lead..m.rows()).find(|&r| !m.at(r, col).is_zero());
        let Some(pr) = pivot_row else { continue };
        m.swap_rows(pr, lead);
        let inv = m.at(lead, col).inv().expect("pivot is nonzero");
        for c in col..m.cols() {
            let v = m.at(lead, c).mul(&inv).expect("same field");
            *m.at_mut(lead, c) = v;
        }
        for r in 0..m.rows() {
            if r == lead || m.at(r, col).is_zero() {
                continue;
            }
            let factor = m.at(r, col).clone();
            for c in col..m.cols() {
                let delta = factor.mul(m.at(lead, c)).expect("same field");
                let v = m.at(r, c).sub(&delta).expect("same field");
                *m.at_mut(r, c) = v;
            }
        }
        pivots.push(col);
        lead += 1;
        if lead == m.rows() {
            break;
        }
    }
    (m, pivots)
}

/// A linear subspace of k^n in canonical echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: MatrixK,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: MatrixK::zero(field, 0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: MatrixK::identity(field, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &MatrixK {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// The non-pivot coordinates, the canonical complement used as a quotient
    /// basis downstream.
    pub fn complement_coords(&self) -> Vec<usize> {
        let mut pivot_iter = self.pivots.iter().peekable();
        let mut out = Vec::with_capacity(self.ambient_dim - self.dim());
        for c in 0..self.ambient_dim {
            if pivot_iter.peek() == Some(&&c) {
                pivot_iter.next();
            } else {
                out.push(c);
            }
        }
        out
    }

    fn check_vec(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "vector length {} vs ambient dimension {}",
                v.len(),
                self.ambient_dim
            )));
        }
        Ok(())
    }

    /// Remainder of v after elimination against the echelon basis. The result
    /// vanishes on every pivot coordinate; it is zero iff v lies in the
    /// subspace.
    pub fn reduce_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_vec(v)?;
        let mut out = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if out[p].is_zero() {
                continue;
            }
            let factor = out[p].clone();
            for (oc, bc) in out.iter_mut().zip(self.basis.row(i)) {
                let delta = factor.mul(bc)?;
                *oc = oc.sub(&delta)?;
            }
        }
        Ok(out)
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        Ok(self.reduce_vec(v)?.iter().all(Scalar::is_zero))
    }

    /// Coefficients of v with respect to the echelon basis rows, or None if v
    /// is outside the subspace. Because the basis is in reduced echelon form
    /// the coefficients are simply v's entries at the pivot columns.
    pub fn coords_in_basis(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| v[p].clone()).collect()))
    }
}

/// Canonical row space of M.
pub fn rref(m: &MatrixK) -> Subspace {
    let ambient = m.cols();
    let (reduced, pivots) = gauss_jordan(m.clone());
    let rank = pivots.len();
    let mut rows = Vec::with_capacity(rank);
    for r in 0..rank {
        rows.push(reduced.row(r).to_vec());
    }
    let basis =
        MatrixK::from_rows(m.field(), rows).expect("echelon rows share the input's shape");
    let basis = if rank == 0 {
        MatrixK::zero(m.field(), 0, ambient)
    } else {
        basis
    };
    Subspace {
        ambient_dim: ambient,
        basis,
        pivots,
    }
}

/// Canonical null space of M acting on column vectors.
pub fn kernel(m: &MatrixK) -> Subspace {
    let (reduced, pivots) = gauss_jordan(m.clone());
    let n = m.cols();
    let field = m.field();
    let pivot_set: Vec<usize> = pivots.clone();
    let free_cols: Vec<usize> = (0..n).filter(|c| !pivot_set.contains(c)).collect();
    let mut rows = Vec::with_capacity(free_cols.len());
    for &f in &free_cols {
        let mut v = vec![field.zero(); n];
        v[f] = field.one();
        for (i, &p) in pivot_set.iter().enumerate() {
            v[p] = reduced.at(i, f).neg();
        }
        rows.push(v);
    }
    if rows.is_empty() {
        return Subspace::zero(field, n);
    }
    rref(&MatrixK::from_rows(field, rows).expect("kernel rows have uniform length"))
}

/// U + V as a canonical subspace.
pub fn sum(u: &Subspace, v: &Subspace) -> Result<Subspace> {
    check_compatible(u, v)?;
    if u.dim() == 0 {
        return Ok(v.clone());
    }
    if v.dim() == 0 {
        return Ok(u.clone());
    }
    Ok(rref(&u.basis.stack(&v.basis)?))
}

/// U intersected with V, computed from the kernel of the stacked coefficient
/// system: a relation (a, b) with a.U = b.V identifies a vector of the
/// intersection.
pub fn intersect(u: &Subspace, v: &Subspace) -> Result<Subspace> {
    check_compatible(u, v)?;
    let field = u.field();
    let n = u.ambient_dim;
    if u.dim() == 0 || v.dim() == 0 {
        return Ok(Subspace::zero(field, n));
    }
    // Columns: coefficients on U's basis rows, then on V's (negated).
    let mut m = MatrixK::zero(field, n, u.dim() + v.dim());
    for i in 0..u.dim() {
        for r in 0..n {
            *m.at_mut(r, i) = u.basis.at(i, r).clone();
        }
    }
    for j in 0..v.dim() {
        for r in 0..n {
            *m.at_mut(r, u.dim() + j) = v.basis.at(j, r).neg();
        }
    }
    let relations = kernel(&m);
    let mut rows = Vec::with_capacity(relations.dim());
    for rel in relations.basis_rows() {
        let mut w = vec![field.zero(); n];
        for (i, coeff) in rel[..u.dim()].iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for (wc, bc) in w.iter_mut().zip(u.basis.row(i)) {
                let delta = coeff.mul(bc)?;
                *wc = wc.add(&delta)?;
            }
        }
        rows.push(w);
    }
    if rows.is_empty() {
        return Ok(Subspace::zero(field, n));
    }
    Ok(rref(&MatrixK::from_rows(field, rows)?))
}

fn check_compatible(u: &Subspace, v: &Subspace) -> Result<()> {
    if u.ambient_dim != v.ambient_dim {
        return Err(Error::DimensionMismatch(format!(
            "ambient dimensions differ: {} vs {}",
            u.ambient_dim, v.ambient_dim
        )));
    }
    if u.field() != v.field() {
        return Err(Error::FieldMismatch(
            format!("{:?}", u.field()),
            format!("{:?}", v.field()),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

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

    fn fmat(p: u64, rows: Vec<Vec<i64>>) -> MatrixK {
        let field = FieldSpec::prime_field(p).unwrap();
        MatrixK::from_rows(
            field,
            rows.into_iter()
                .map(|r| r.into_iter().map(|v| field.from_i64(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rref_drops_duplicate_rows() {
        let s = rref(&qmat(vec![vec![1, 1], vec![1, 1]]));
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis_rows(), qmat(vec![vec![1, 1]]).row_vecs());
    }

    #[test]
    fn rref_normalizes_scaling() {
        let s = rref(&qmat(vec![vec![2, 0], vec![0, 3]]));
        assert!(s.is_full());
        assert_eq!(s.basis(), &MatrixK::identity(FieldSpec::Rationals, 2));
    }

    #[test]
    fn rref_rank_over_f5() {
        let m = fmat(5, vec![vec![1, 2], vec![2, 4], vec![1, 1]]);
        let s = rref(&m);
        // Oracle: brute-force rank by counting distinct row combinations;
        // the row space has 5^rank vectors.
        let field = FieldSpec::prime_field(5).unwrap();
        let mut seen = std::collections::HashSet::new();
        for a in 0..5i64 {
            for b in 0..5i64 {
                for c in 0..5i64 {
                    let coeffs = [a, b, c].map(|v| field.from_i64(v));
                    let mut w = vec![field.zero(); 2];
                    for (i, co) in coeffs.iter().enumerate() {
                        for (j, wj) in w.iter_mut().enumerate() {
                            *wj = wj.add(&co.mul(m.at(i, j)).unwrap()).unwrap();
                        }
                    }
                    seen.insert(format!("{}|{}", w[0], w[1]));
                }
            }
        }
        assert_eq!(seen.len(), 25);
        assert_eq!(s.dim(), 2);
        assert!(s.is_full());
    }

    #[test]
    fn kernel_of_single_relation() {
        let s = kernel(&qmat(vec![vec![1, 1, 0]]));
        assert_eq!(s.dim(), 2);
        for row in s.basis_rows() {
            let sum = row[0].add(&row[1]).unwrap();
            assert!(sum.is_zero());
        }
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let s = kernel(&MatrixK::identity(FieldSpec::Rationals, 3));
        assert!(s.is_zero());
        assert_eq!(s.dim(), 0);
    }

    #[test]
    fn kernel_of_pairing_matrix() {
        // Degree-2 pairing of the worked two-variable instance: rows X, Y
        // against columns X^2, XY, Y^2; the kernel is the Y^2 line.
        let s = kernel(&qmat(vec![vec![1, 1, 0], vec![1, 0, 0]]));
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis_rows(), qmat(vec![vec![0, 0, 1]]).row_vecs());
        assert_eq!(s.complement_coords(), vec![0, 1]);
    }

    #[test]
    fn intersect_coordinate_planes() {
        let u = rref(&qmat(vec![vec![1, 0, 0], vec![0, 1, 0]]));
        let v = rref(&qmat(vec![vec![0, 1, 0], vec![0, 0, 1]]));
        let w = intersect(&u, &v).unwrap();
        assert_eq!(w.dim(), 1);
        assert_eq!(w.basis_rows(), qmat(vec![vec![0, 1, 0]]).row_vecs());
        // Idempotence on equal inputs.
        assert_eq!(intersect(&u, &u).unwrap(), u);
    }

    #[test]
    fn intersect_rejects_ambient_mismatch() {
        let u = Subspace::full(FieldSpec::Rationals, 2);
        let v = Subspace::full(FieldSpec::Rationals, 3);
        assert!(intersect(&u, &v).is_err());
    }

    #[test]
    fn containment_and_dim() {
        let u = rref(&qmat(vec![vec![1, 1]]));
        let e1 = vec![
            FieldSpec::Rationals.one(),
            FieldSpec::Rationals.zero(),
        ];
        assert!(!u.contains(&e1).unwrap());
        assert_eq!(Subspace::zero(FieldSpec::Rationals, 4).dim(), 0);
    }

    #[test]
    fn inverse_round_trip() {
        let m = qmat(vec![vec![0, -1], vec![1, -1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(
            m.mul(&inv).unwrap(),
            MatrixK::identity(FieldSpec::Rationals, 2)
        );
        let singular = qmat(vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(singular.inverse(), Err(Error::SingularMatrix));
    }

    #[test]
    fn determinant_values() {
        assert_eq!(
            qmat(vec![vec![0, -1], vec![1, -1]]).det().unwrap(),
            FieldSpec::Rationals.one()
        );
        assert_eq!(
            qmat(vec![vec![1, 2], vec![2, 4]]).det().unwrap(),
            FieldSpec::Rationals.zero()
        );
    }

    fn arb_field() -> impl Strategy<Value = FieldSpec> {
        prop_oneof![
            Just(FieldSpec::Rationals),
            Just(FieldSpec::prime_field(5).unwrap()),
            Just(FieldSpec::prime_field(13).unwrap()),
        ]
    }

    fn arb_matrix() -> impl Strategy<Value = MatrixK> {
        (arb_field(), 1usize..5, 1usize..5).prop_flat_map(|(field, r, c)| {
            proptest::collection::vec(-4i64..5, r * c).prop_map(move |vals| {
                MatrixK::new(
                    field,
                    r,
                    c,
                    vals.into_iter().map(|v| field.from_i64(v)).collect(),
                )
                .unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent_and_scale_invariant(m in arb_matrix(), scale in 1i64..7) {
            let s = rref(&m);
            prop_assert_eq!(rref(s.basis()), s.clone());
            // A scale that vanishes in the field (e.g. 5 over F_5) kills the
            // row space instead of preserving it.
            prop_assume!(!m.field().from_i64(scale).is_zero());
            let mut scaled = m.clone();
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    let v = scaled.at(r, c).mul(&m.field().from_i64(scale)).unwrap();
                    *scaled.at_mut(r, c) = v;
                }
            }
            prop_assert_eq!(rref(&scaled), s);
        }

        #[test]
        fn rank_nullity(m in arb_matrix()) {
            let rank = rref(&m).dim();
            let nullity = kernel(&m).dim();
            prop_assert_eq!(rank + nullity, m.cols());
        }

        #[test]
        fn intersection_inclusion_exclusion(a in arb_matrix(), b_vals in proptest::collection::vec(-4i64..5, 1..20)) {
            // Build b over the same field and width as a.
            let field = a.field();
            let cols = a.cols();
            let rows = (b_vals.len() / cols).max(1);
            let mut vals = b_vals;
            vals.resize(rows * cols, 0);
            let b = MatrixK::new(field, rows, cols, vals.into_iter().map(|v| field.from_i64(v)).collect()).unwrap();
            let u = rref(&a);
            let v = rref(&b);
            let inter = intersect(&u, &v).unwrap();
            let total = sum(&u, &v).unwrap();
            prop_assert_eq!(u.dim() + v.dim(), total.dim() + inter.dim());
            for row in inter.basis_rows() {
                prop_assert!(u.contains(&row).unwrap());
                prop_assert!(v.contains(&row).unwrap());
            }
        }
    }
}
