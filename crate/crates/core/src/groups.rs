//! Base-point groups. Three element flavors and three multiplication
//! backends: finite groups by Cayley table, permutation groups in one-line
//! notation, and rational matrix groups (with the unitriangular 3x3 family
//! as the worked non-finite case).
//!
//! Group elements order and hash structurally; `Cayley(0)` is not assumed to
//! be the identity, the table decides.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::SMat;
use crate::scalar::Scalar;
use crate::validate::ValidationReport;

/// Element of a base-point group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupElement {
    /// Index into a Cayley table.
    Cayley(u16),
    /// Permutation in one-line notation: position i holds the image of i.
    Perm(Vec<u8>),
    /// Invertible rational matrix.
    Mat(SMat),
}

/// Multiplication backend for group elements.
#[derive(Clone, Debug)]
pub enum Group {
    /// Finite group presented by its full multiplication table:
    /// `table[a][b]` is the index of the product a*b.
    Cayley { table: Vec<Vec<u16>>, identity: u16 },
    /// Symmetric group on `degree` points; elements are permutations.
    Permutation { degree: usize },
    /// Matrix group of a fixed size; elements are any invertible rational
    /// matrices of that size (closure within a chosen subgroup is up to the
    /// caller and checked by the subgroup validators).
    Matrix { size: usize },
}

impl Group {
    /// Cayley group builder; finds and stores the identity index.
    pub fn cayley(table: Vec<Vec<u16>>) -> Result<Group> {
        let n = table.len();
        if n == 0 || n > u16::MAX as usize {
            return Err(Error::Invalid(format!("Cayley table with {n} rows")));
        }
        for row in &table {
            if row.len() != n {
                return Err(Error::Invalid("Cayley table is not square".into()));
            }
            if row.iter().any(|&x| x as usize >= n) {
                return Err(Error::Index("Cayley table entry out of range".into()));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|j| table[e][j] as usize == j && table[j][e] as usize == j))
            .ok_or_else(|| Error::Invalid("Cayley table has no two-sided identity".into()))?;
        Ok(Group::Cayley { table, identity: identity as u16 })
    }

    /// Cyclic group of order n.
    pub fn cyclic(n: usize) -> Group {
        let table = (0..n).map(|a| (0..n).map(|b| ((a + b) % n) as u16).collect()).collect();
        Group::cayley(table).expect("cyclic table")
    }

    /// One-element group.
    pub fn trivial() -> Group {
        Group::cyclic(1)
    }

    /// Symmetric group on m points as a Cayley table. Elements are indexed
    /// by their one-line notation in lexicographic order, so index 0 is the
    /// identity.
    pub fn symmetric_cayley(m: usize) -> Group {
        let perms = all_permutations(m);
        let index_of = |p: &Vec<u8>| perms.iter().position(|q| q == p).unwrap() as u16;
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| index_of(&compose(a, b))).collect())
            .collect();
        Group::cayley(table).expect("symmetric table")
    }

    pub fn permutation(degree: usize) -> Result<Group> {
        if degree == 0 || degree > 255 {
            return Err(Error::Invalid(format!("permutation degree {degree}")));
        }
        Ok(Group::Permutation { degree })
    }

    pub fn matrix(size: usize) -> Result<Group> {
        if size == 0 {
            return Err(Error::Invalid("matrix group of size 0".into()));
        }
        Ok(Group::Matrix { size })
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            Group::Cayley { identity, .. } => GroupElement::Cayley(*identity),
            Group::Permutation { degree } => GroupElement::Perm((0..*degree as u8).collect()),
            Group::Matrix { size } => GroupElement::Mat(SMat::identity(*size)),
        }
    }

    /// Checks that an element belongs to this backend (variant, range,
    /// invertibility for matrices).
    pub fn contains(&self, p: &GroupElement) -> Result<()> {
        match (self, p) {
            (Group::Cayley { table, .. }, GroupElement::Cayley(i)) => {
                if (*i as usize) < table.len() {
                    Ok(())
                } else {
                    Err(Error::Index(format!("Cayley index {i} in a group of order {}", table.len())))
                }
            }
            (Group::Permutation { degree }, GroupElement::Perm(p)) => {
                if p.len() != *degree {
                    return Err(Error::Dimension(format!(
                        "permutation of {} points in a degree-{degree} group",
                        p.len()
                    )));
                }
                let mut seen = vec![false; *degree];
                for &i in p {
                    if (i as usize) >= *degree || seen[i as usize] {
                        return Err(Error::Invalid("not a permutation".into()));
                    }
                    seen[i as usize] = true;
                }
                Ok(())
            }
            (Group::Matrix { size }, GroupElement::Mat(m)) => {
                if m.size() != *size {
                    return Err(Error::Dimension(format!(
                        "{}x{} matrix in a size-{size} matrix group",
                        m.size(),
                        m.size()
                    )));
                }
                if m.det().is_zero() {
                    return Err(Error::Invalid("singular matrix as group element".into()));
                }
                Ok(())
            }
            _ => Err(Error::GroupVariant(format!("{p:?} does not match the group backend"))),
        }
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.contains(a)?;
        self.contains(b)?;
        match (self, a, b) {
            (Group::Cayley { table, .. }, GroupElement::Cayley(i), GroupElement::Cayley(j)) => {
                Ok(GroupElement::Cayley(table[*i as usize][*j as usize]))
            }
            (Group::Permutation { .. }, GroupElement::Perm(p), GroupElement::Perm(q)) => {
                Ok(GroupElement::Perm(compose(p, q)))
            }
            (Group::Matrix { .. }, GroupElement::Mat(m), GroupElement::Mat(n)) => {
                Ok(GroupElement::Mat(m.mul(n)?))
            }
            _ => unreachable!("contains filters variants"),
        }
    }

    pub fn inv(&self, a: &GroupElement) -> Result<GroupElement> {
        self.contains(a)?;
        match (self, a) {
            (Group::Cayley { table, identity }, GroupElement::Cayley(i)) => {
                let n = table.len();
                let j = (0..n)
                    .find(|&j| table[*i as usize][j] == *identity)
                    .ok_or_else(|| Error::Invalid(format!("Cayley index {i} has no inverse")))?;
                Ok(GroupElement::Cayley(j as u16))
            }
            (Group::Permutation { degree }, GroupElement::Perm(p)) => {
                let mut inv = vec![0u8; *degree];
                for (i, &pi) in p.iter().enumerate() {
                    inv[pi as usize] = i as u8;
                }
                Ok(GroupElement::Perm(inv))
            }
            (Group::Matrix { .. }, GroupElement::Mat(m)) => Ok(GroupElement::Mat(m.inverse()?)),
            _ => unreachable!("contains filters variants"),
        }
    }

    /// All elements, when the group is finitely enumerable.
    pub fn elements(&self) -> Option<Vec<GroupElement>> {
        match self {
            Group::Cayley { table, .. } => {
                Some((0..table.len() as u16).map(GroupElement::Cayley).collect())
            }
            Group::Permutation { degree } => {
                if *degree > 6 {
                    return None;
                }
                Some(all_permutations(*degree).into_iter().map(GroupElement::Perm).collect())
            }
            Group::Matrix { .. } => None,
        }
    }

    pub fn order(&self) -> Option<usize> {
        match self {
            Group::Cayley { table, .. } => Some(table.len()),
            Group::Permutation { degree } => Some((1..=*degree).product()),
            Group::Matrix { .. } => None,
        }
    }

    /// Group axioms. Exhaustive for Cayley tables (closure is structural,
    /// associativity over all triples, identity and inverses); structural
    /// for the other backends, whose laws hold by construction, checked on
    /// the provided sample elements.
    pub fn validate(&self, samples: &[GroupElement]) -> ValidationReport {
        let mut report = ValidationReport::new("group");
        match self {
            Group::Cayley { table, identity } => {
                let n = table.len();
                let mut assoc_ok = true;
                'assoc: for a in 0..n {
                    for b in 0..n {
                        for c in 0..n {
                            let ab_c = table[table[a][b] as usize][c];
                            let a_bc = table[a][table[b][c] as usize];
                            if ab_c != a_bc {
                                report.fail(
                                    "associativity",
                                    format!("({a}*{b})*{c} = {ab_c} but {a}*({b}*{c}) = {a_bc}"),
                                );
                                assoc_ok = false;
                                break 'assoc;
                            }
                        }
                    }
                }
                if assoc_ok {
                    report.pass("associativity");
                }
                report.pass("identity"); // found during construction
                let missing =
                    (0..n).find(|&a| !(0..n).any(|b| table[a][b] == *identity && table[b][a] == *identity));
                report.record(
                    "inverses",
                    missing.is_none(),
                    missing.map(|a| format!("index {a} has no two-sided inverse")).unwrap_or_default(),
                );
            }
            Group::Permutation { .. } | Group::Matrix { .. } => {
                let mut ok = true;
                let mut detail = String::new();
                for p in samples {
                    let check = (|| -> Result<bool> {
                        self.contains(p)?;
                        let inv = self.inv(p)?;
                        let e = self.identity();
                        Ok(self.mul(p, &inv)? == e
                            && self.mul(&inv, p)? == e
                            && self.mul(p, &e)? == *p
                            && self.mul(&e, p)? == *p)
                    })();
                    match check {
                        Ok(true) => {}
                        Ok(false) => {
                            ok = false;
                            detail = format!("{p:?} fails identity or inverse laws");
                            break;
                        }
                        Err(e) => {
                            ok = false;
                            detail = format!("{p:?}: {e}");
                            break;
                        }
                    }
                }
                report.record("identity and inverses on samples", ok, detail);
            }
        }
        report
    }

    /// Checks a finite element list for subgroup closure: nonempty, contains
    /// the identity, closed under product and inverse.
    pub fn validate_subgroup(&self, elems: &[GroupElement]) -> Result<()> {
        if elems.is_empty() {
            return Err(Error::Invalid("empty subgroup".into()));
        }
        for p in elems {
            self.contains(p)?;
        }
        if !elems.contains(&self.identity()) {
            return Err(Error::Invalid("subgroup does not contain the identity".into()));
        }
        for p in elems {
            let inv = self.inv(p)?;
            if !elems.contains(&inv) {
                return Err(Error::Invalid(format!("subgroup is not closed under inverse at {p:?}")));
            }
            for q in elems {
                let pq = self.mul(p, q)?;
                if !elems.contains(&pq) {
                    return Err(Error::Invalid(format!(
                        "subgroup is not closed under product at {p:?} * {q:?}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Subgroup generated by an element of a finite group.
    pub fn cyclic_subgroup(&self, g: &GroupElement) -> Result<Vec<GroupElement>> {
        self.contains(g)?;
        let mut elems = vec![self.identity()];
        let mut cur = g.clone();
        let mut steps = 0usize;
        while !elems.contains(&cur) {
            elems.push(cur.clone());
            cur = self.mul(&cur, g)?;
            steps += 1;
            if steps > 10_000 {
                return Err(Error::Invalid("element has unbounded order".into()));
            }
        }
        elems.sort();
        Ok(elems)
    }
}

/// (p ∘ q)(x) = p(q(x)).
fn compose(p: &[u8], q: &[u8]) -> Vec<u8> {
    q.iter().map(|&x| p[x as usize]).collect()
}

/// All permutations of 0..m in lexicographic one-line order.
pub fn all_permutations(m: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..m as u8).collect();
    loop {
        out.push(cur.clone());
        // Next permutation in lex order.
        let Some(i) = (0..m.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..m).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// Unitriangular rational 3x3 matrix
/// [[1,a,c],[0,1,b],[0,0,1]].
pub fn unitriangular(a: Scalar, b: Scalar, c: Scalar) -> GroupElement {
    let one = Scalar::one;
    let zero = Scalar::zero;
    GroupElement::Mat(
        SMat::from_rows(vec![
            vec![one(), a, c],
            vec![zero(), one(), b],
            vec![zero(), zero(), one()],
        ])
        .expect("3x3"),
    )
}

/// Recognize a unitriangular 3x3 matrix, returning (a, b, c).
pub fn as_unitriangular(p: &GroupElement) -> Option<(Scalar, Scalar, Scalar)> {
    let GroupElement::Mat(m) = p else { return None };
    if m.size() != 3 {
        return None;
    }
    for i in 0..3 {
        if !m.get(i, i).is_one() {
            return None;
        }
        for j in 0..i {
            if !m.get(i, j).is_zero() {
                return None;
            }
        }
    }
    Some((m.get(0, 1).clone(), m.get(1, 2).clone(), m.get(0, 2).clone()))
}

impl fmt::Display for GroupElement {
    /// Backend-independent debug form; context-aware rendering (which knows
    /// the identity) lives on `Context`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Cayley(i) => write!(f, "g{i}"),
            GroupElement::Perm(p) => {
                write!(f, "perm(")?;
                for (k, i) in p.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{i}")?;
                }
                write!(f, ")")
            }
            GroupElement::Mat(m) => {
                if let Some((a, b, c)) = as_unitriangular(&GroupElement::Mat(m.clone())) {
                    write!(f, "M({a},{b},{c})")
                } else {
                    write!(f, "mat{m:?}")
                }
            }
        }
    }
}
