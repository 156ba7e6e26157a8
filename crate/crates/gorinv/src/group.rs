//! Finite matrix groups as explicit element lists.
//!
//! A group is closed from its generators by breadth-first multiplication and
//! stored with a full Cayley table, so subgroup and character computations
//! become index arithmetic. Element order is canonical (identity first, then
//! entry-lexicographic), which keeps every downstream report reproducible.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{has_primitive_pth_root, FieldSpec, Scalar};
use crate::linalg::MatrixK;

/// Default cap on the closure size; overridable through the CLI environment.
pub const DEFAULT_CLOSURE_CAP: usize = 5000;

/// Cap on the number of candidate maps the brute-force character oracle will
/// enumerate.
const MAX_ORACLE_MAPS: u128 = 1 << 27;

/// An invertible matrix together with its cached inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GMatrix {
    mat: MatrixK,
    inv: MatrixK,
}

impl GMatrix {
    pub fn new(mat: MatrixK) -> Result<Self> {
        if mat.rows() != mat.cols() {
            return Err(Error::DimensionMismatch(
                "group elements must be square".into(),
            ));
        }
        let inv = mat.inverse()?;
        Ok(GMatrix { mat, inv })
    }

    pub fn matrix(&self) -> &MatrixK {
        &self.mat
    }

    pub fn inverse(&self) -> &MatrixK {
        &self.inv
    }
}

fn entries_key(m: &MatrixK) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(m.rows() * m.cols());
    for r in 0..m.rows() {
        out.extend(m.row(r).iter().cloned());
    }
    out
}

fn entry_lex_cmp(a: &MatrixK, b: &MatrixK) -> std::cmp::Ordering {
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            let ord = a.at(r, c).cmp_same_field(b.at(r, c));
            if ord != std::cmp::Ordering::Equal {
                return ord;
            }
        }
    }
    std::cmp::Ordering::Equal
}

/// A finite subgroup of GL_n(k) with full multiplication data.
#[derive(Debug, Clone)]
pub struct MatrixGroup {
    n: usize,
    field: FieldSpec,
    generators: Vec<GMatrix>,
    elements: Vec<GMatrix>,
    generator_indices: Vec<usize>,
    cayley: Vec<Vec<usize>>,
    inverse_indices: Vec<usize>,
    index: HashMap<Vec<Scalar>, usize>,
}

impl PartialEq for MatrixGroup {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.field == other.field
            && self.elements.len() == other.elements.len()
            && self
                .elements
                .iter()
                .zip(&other.elements)
                .all(|(a, b)| a.matrix() == b.matrix())
    }
}

impl Eq for MatrixGroup {}

impl MatrixGroup {
    /// Closes the generators into a full group. Fails if the closure exceeds
    /// `cap`, a generator is singular, the group is trivial, or the field
    /// characteristic divides the group order.
    pub fn close(generators: Vec<MatrixK>, cap: usize) -> Result<Self> {
        let group = Self::close_allow_trivial(generators, cap)?;
        if group.order() < 2 {
            return Err(Error::TrivialGroup);
        }
        Ok(group)
    }

    /// Closure without the non-triviality requirement, for subgroup results.
    pub fn close_allow_trivial(generators: Vec<MatrixK>, cap: usize) -> Result<Self> {
        let first = generators
            .first()
            .ok_or_else(|| Error::InvalidInput("at least one generator required".into()))?;
        let n = first.rows();
        let field = first.field();
        if n == 0 {
            return Err(Error::DimensionMismatch("0x0 generator".into()));
        }
        let mut gmats = Vec::with_capacity(generators.len());
        for g in &generators {
            if g.rows() != n || g.cols() != n || g.field() != field {
                return Err(Error::DimensionMismatch(
                    "generators must share one size and field".into(),
                ));
            }
            gmats.push(GMatrix::new(g.clone())?);
        }

        // Breadth-first closure under right multiplication by generators.
        let identity = MatrixK::identity(field, n);
        let mut seen: HashMap<Vec<Scalar>, usize> = HashMap::new();
        let mut mats: Vec<MatrixK> = vec![identity.clone()];
        seen.insert(entries_key(&identity), 0);
        let mut frontier = vec![0usize];
        while let Some(i) = frontier.pop() {
            for g in &gmats {
                let prod = mats[i].mul(g.matrix())?;
                let key = entries_key(&prod);
                if let std::collections::hash_map::Entry::Vacant(slot) = seen.entry(key) {
                    if mats.len() >= cap {
                        return Err(Error::ClosureCapExceeded(cap));
                    }
                    slot.insert(mats.len());
                    frontier.push(mats.len());
                    mats.push(prod);
                }
            }
        }

        if let FieldSpec::PrimeField(p) = field {
            if (mats.len() as u64).is_multiple_of(p) {
                return Err(Error::CharDividesOrder {
                    p,
                    order: mats.len(),
                });
            }
        }

        // Canonical order: identity first, the rest entry-lexicographic.
        let mut rest: Vec<MatrixK> = mats.into_iter().filter(|m| *m != identity).collect();
        rest.sort_by(entry_lex_cmp);
        let mut ordered = vec![identity];
        ordered.append(&mut rest);

        Self::from_ordered_elements(n, field, gmats, ordered)
    }

    fn from_ordered_elements(
        n: usize,
        field: FieldSpec,
        generators: Vec<GMatrix>,
        ordered: Vec<MatrixK>,
    ) -> Result<Self> {
        let size = ordered.len();
        let mut index = HashMap::with_capacity(size);
        for (i, m) in ordered.iter().enumerate() {
            index.insert(entries_key(m), i);
        }
        let mut cayley = vec![vec![0usize; size]; size];
        for i in 0..size {
            for j in 0..size {
                let prod = ordered[i].mul(&ordered[j])?;
                let idx = *index
                    .get(&entries_key(&prod))
                    .ok_or(Error::ElementNotInGroup)?;
                cayley[i][j] = idx;
            }
        }
        let elements = ordered
            .into_iter()
            .map(GMatrix::new)
            .collect::<Result<Vec<_>>>()?;
        let mut inverse_indices = vec![0usize; size];
        for (i, row) in cayley.iter().enumerate() {
            inverse_indices[i] = row
                .iter()
                .position(|&k| k == 0)
                .expect("every row of a Cayley table contains the identity");
        }
        let generator_indices = generators
            .iter()
            .map(|g| {
                index
                    .get(&entries_key(g.matrix()))
                    .copied()
                    .ok_or(Error::ElementNotInGroup)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MatrixGroup {
            n,
            field,
            generators,
            elements,
            generator_indices,
            cayley,
            inverse_indices,
            index,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GMatrix {
        &self.elements[i]
    }

    pub fn generators(&self) -> &[GMatrix] {
        &self.generators
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn mul_indices(&self, i: usize, j: usize) -> usize {
        self.cayley[i][j]
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        self.inverse_indices[i]
    }

    pub fn index_of(&self, m: &MatrixK) -> Option<usize> {
        self.index.get(&entries_key(m)).copied()
    }

    /// Multiplicative order of the i-th element.
    pub fn element_order(&self, i: usize) -> usize {
        let mut acc = i;
        let mut ord = 1;
        while acc != 0 {
            acc = self.mul_indices(acc, i);
            ord += 1;
        }
        ord
    }

    /// The subgroup generated by all commutators g h g^{-1} h^{-1}.
    pub fn commutator_subgroup(&self) -> Result<MatrixGroup> {
        let size = self.order();
        let mut commutators: Vec<usize> = Vec::new();
        for g in 0..size {
            for h in 0..size {
                let gh = self.mul_indices(g, h);
                let gh_ginv = self.mul_indices(gh, self.inverse_indices[g]);
                let c = self.mul_indices(gh_ginv, self.inverse_indices[h]);
                if !commutators.contains(&c) {
                    commutators.push(c);
                }
            }
        }
        commutators.sort_unstable();

        // Closure within index space via the Cayley table.
        let mut members = vec![false; size];
        members[0] = true;
        let mut frontier = vec![0usize];
        for &c in &commutators {
            if !members[c] {
                members[c] = true;
                frontier.push(c);
            }
        }
        while let Some(i) = frontier.pop() {
            for &c in &commutators {
                let prod = self.mul_indices(i, c);
                if !members[prod] {
                    members[prod] = true;
                    frontier.push(prod);
                }
            }
        }

        let member_indices: Vec<usize> =
            (0..size).filter(|&i| members[i]).collect();
        // Parent order is canonical, so the sorted member list already has the
        // identity first and the rest entry-lexicographic.
        let ordered: Vec<MatrixK> = member_indices
            .iter()
            .map(|&i| self.elements[i].matrix().clone())
            .collect();
        let generators = commutators
            .iter()
            .filter(|&&c| c != 0)
            .map(|&c| self.elements[c].clone())
            .collect::<Vec<_>>();
        let generators = if generators.is_empty() {
            vec![GMatrix::new(MatrixK::identity(self.field, self.n))?]
        } else {
            generators
        };
        Self::from_ordered_elements(self.n, self.field, generators, ordered)
    }
}

/// Outcome of the one-dimensional-representation test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepVerdict {
    /// Whether a non-trivial homomorphism G -> k* exists.
    pub exists: bool,
    /// The smallest prime witnessing existence, if any.
    pub witness_prime: Option<u64>,
    /// The abelianization order `|G| / |[G,G]|`.
    pub r: usize,
}

/// Decides whether G admits a non-trivial one-dimensional representation over
/// its field: some prime p dividing `|G|/|[G,G]|` must pair with a primitive
/// p-th root of unity in k.
pub fn has_nontrivial_onedim_rep(group: &MatrixGroup) -> Result<RepVerdict> {
    let derived = group.commutator_subgroup()?;
    let r = group.order() / derived.order();
    let mut witness = None;
    for p in prime_factors(r as u64) {
        if has_primitive_pth_root(group.field(), p) {
            witness = Some(p);
            break;
        }
    }
    Ok(RepVerdict {
        exists: witness.is_some(),
        witness_prime: witness,
        r,
    })
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A one-dimensional representation G -> k*, stored on every element and
/// validated against the full Cayley table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    values: Vec<Scalar>,
}

impl Character {
    pub fn trivial(group: &MatrixGroup) -> Self {
        Character {
            values: vec![group.field().one(); group.order()],
        }
    }

    /// Builds a character from one value per element and checks the
    /// homomorphism law on every Cayley pair.
    pub fn from_element_values(group: &MatrixGroup, values: Vec<Scalar>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::InvalidCharacter(format!(
                "expected {} values, got {}",
                group.order(),
                values.len()
            )));
        }
        for v in &values {
            if v.field() != group.field() {
                return Err(Error::InvalidCharacter("value outside the field".into()));
            }
            if v.is_zero() {
                return Err(Error::InvalidCharacter("character values must be nonzero".into()));
            }
        }
        if !values[0].is_one() {
            return Err(Error::InvalidCharacter("identity must map to 1".into()));
        }
        for i in 0..group.order() {
            for j in 0..group.order() {
                let prod = values[i].mul(&values[j])?;
                if prod != values[group.mul_indices(i, j)] {
                    return Err(Error::InvalidCharacter(format!(
                        "values fail the homomorphism law at pair ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Character { values })
    }

    /// Extends values given per generator to the whole group, then validates.
    pub fn from_generator_values(group: &MatrixGroup, gen_values: &[Scalar]) -> Result<Self> {
        if gen_values.len() != group.generators().len() {
            return Err(Error::InvalidCharacter(format!(
                "expected one value per generator ({}), got {}",
                group.generators().len(),
                gen_values.len()
            )));
        }
        let mut values: Vec<Option<Scalar>> = vec![None; group.order()];
        values[0] = Some(group.field().one());
        let mut frontier = vec![0usize];
        while let Some(i) = frontier.pop() {
            let vi = values[i].clone().expect("frontier entries are assigned");
            for (g, gv) in group.generator_indices().iter().zip(gen_values) {
                let j = group.mul_indices(i, *g);
                let vj = vi.mul(gv)?;
                match &values[j] {
                    None => {
                        values[j] = Some(vj);
                        frontier.push(j);
                    }
                    Some(existing) => {
                        if *existing != vj {
                            return Err(Error::InvalidCharacter(
                                "generator values are inconsistent on the closure".into(),
                            ));
                        }
                    }
                }
            }
        }
        let values = values
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| {
                Error::InvalidCharacter("generator values do not reach every element".into())
            })?;
        Self::from_element_values(group, values)
    }

    pub fn value(&self, element_index: usize) -> &Scalar {
        &self.values[element_index]
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(Scalar::is_one)
    }
}

/// Brute-force enumeration of all homomorphisms G -> F_q^*: every assignment
/// of nonzero values to every element is tested against the Cayley table.
/// Exponential by design; this is the independent oracle for
/// [`has_nontrivial_onedim_rep`].
pub fn enumerate_onedim_reps_oracle(group: &MatrixGroup) -> Result<Vec<Character>> {
    let q = match group.field() {
        FieldSpec::PrimeField(q) => q,
        FieldSpec::Rationals => return Err(Error::FieldNotFinite),
    };
    if q > 101 {
        return Err(Error::InvalidInput(
            "the character oracle requires q <= 101".into(),
        ));
    }
    let units = q - 1;
    let size = group.order();
    let total = (units as u128).checked_pow(size as u32);
    match total {
        Some(t) if t <= MAX_ORACLE_MAPS => {}
        _ => {
            return Err(Error::OracleTooLarge(
                total.unwrap_or(u128::MAX),
            ))
        }
    }

    let field = group.field();
    let mut found = Vec::new();
    // Odometer over value tuples; entry k holds a unit 1..=q-1.
    let mut assignment = vec![1u64; size];
    loop {
        if assignment_is_homomorphism(group, &assignment) {
            let values = assignment
                .iter()
                .map(|&v| field.from_i64(v as i64))
                .collect();
            found.push(Character { values });
        }
        // Advance the odometer.
        let mut pos = size;
        loop {
            if pos == 0 {
                return Ok(found);
            }
            pos -= 1;
            if assignment[pos] < units {
                assignment[pos] += 1;
                for later in assignment.iter_mut().skip(pos + 1) {
                    *later = 1;
                }
                break;
            }
        }
    }
}

fn assignment_is_homomorphism(group: &MatrixGroup, values: &[u64]) -> bool {
    let q = match group.field() {
        FieldSpec::PrimeField(q) => q,
        FieldSpec::Rationals => unreachable!("oracle is finite-field only"),
    };
    for i in 0..values.len() {
        for j in 0..values.len() {
            if values[i] * values[j] % q != values[group.mul_indices(i, j)] {
                return false;
            }
        }
    }
    true
}

/// All characters of G over its field, found by extending candidate generator
/// values (roots of unity of the right order) across the closure.  Works over
/// Q as well as F_p; used for sampling twisted functionals.
pub fn enumerate_characters(group: &MatrixGroup) -> Result<Vec<Character>> {
    let field = group.field();
    let mut candidate_lists: Vec<Vec<Scalar>> = Vec::new();
    for &g in group.generator_indices() {
        let ord = group.element_order(g) as u64;
        let mut candidates = Vec::new();
        match field {
            FieldSpec::Rationals => {
                candidates.push(field.one());
                if ord.is_multiple_of(2) {
                    candidates.push(field.from_i64(-1));
                }
            }
            FieldSpec::PrimeField(q) => {
                for x in 1..q {
                    if pow_mod_u64(x, ord, q) == 1 {
                        candidates.push(field.from_i64(x as i64));
                    }
                }
            }
        }
        candidate_lists.push(candidates);
    }

    let mut out = Vec::new();
    let mut picks = vec![0usize; candidate_lists.len()];
    loop {
        let gen_values: Vec<Scalar> = picks
            .iter()
            .zip(&candidate_lists)
            .map(|(&i, list)| list[i].clone())
            .collect();
        if let Ok(ch) = Character::from_generator_values(group, &gen_values) {
            if !out.contains(&ch) {
                out.push(ch);
            }
        }
        let mut pos = picks.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            if picks[pos] + 1 < candidate_lists[pos].len() {
                picks[pos] += 1;
                for later in picks.iter_mut().skip(pos + 1) {
                    *later = 0;
                }
                break;
            }
        }
    }
}

fn pow_mod_u64(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut base = base % p;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}
