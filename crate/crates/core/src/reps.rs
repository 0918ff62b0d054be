//! Group actions on the Lie algebra by bracket automorphisms.
//!
//! Each group element p gets an invertible matrix A_p on the algebra's
//! coordinate space. Three sources: the trivial action, an explicit table
//! (finite groups), and conjugation inside a faithful matrix realization of
//! the algebra (matrix groups), where A_p(X) = p X p^{-1} read back in basis
//! coordinates.

use std::collections::BTreeMap;

use crate::algebra::{basis_vec, LieAlgebra};
use crate::error::{Error, Result};
use crate::groups::{Group, GroupElement};
use crate::linalg::{solve_in_span, SMat};
use crate::validate::ValidationReport;

#[derive(Clone, Debug)]
pub enum Representation {
    /// A_p = identity for every p.
    Trivial,
    /// Explicit matrix per group element; must cover every element used.
    Table { entries: BTreeMap<GroupElement, SMat> },
    /// The algebra realized by matrices B_0, ..., B_{n-1} (linearly
    /// independent, bracket = matrix commutator); group elements are
    /// matrices of the same size and act by conjugation.
    Conjugation { realization: Vec<SMat> },
}

impl Representation {
    /// The action matrix of p, in algebra basis coordinates.
    pub fn matrix(&self, alg: &LieAlgebra, p: &GroupElement) -> Result<SMat> {
        let n = alg.dim();
        match self {
            Representation::Trivial => Ok(SMat::identity(n)),
            Representation::Table { entries } => entries
                .get(p)
                .cloned()
                .ok_or_else(|| Error::Invalid(format!("no action matrix for group element {p}"))),
            Representation::Conjugation { realization } => {
                let GroupElement::Mat(g) = p else {
                    return Err(Error::GroupVariant(
                        "conjugation action needs a matrix group element".into(),
                    ));
                };
                if realization.len() != n {
                    return Err(Error::Dimension(format!(
                        "realization has {} matrices for a dimension-{n} algebra",
                        realization.len()
                    )));
                }
                let ginv = g.inverse()?;
                let mut cols = Vec::with_capacity(n);
                for b in realization {
                    let conj = g.mul(b)?.mul(&ginv)?;
                    let coords = solve_in_span(realization, &conj).ok_or_else(|| {
                        Error::Invalid(format!(
                            "conjugation by {p} leaves the realized algebra (or the realization is dependent)"
                        ))
                    })?;
                    cols.push(coords);
                }
                // cols[j] is the image of basis vector j.
                let mut m = SMat::zero(n);
                for (j, col) in cols.iter().enumerate() {
                    for (i, v) in col.iter().enumerate() {
                        m.set(i, j, v.clone());
                    }
                }
                Ok(m)
            }
        }
    }

    /// Identity at e, homomorphism A_{pq} = A_p A_q on sample pairs, and
    /// bracket automorphism A_p[x,y] = [A_p x, A_p y] on basis pairs.
    /// `samples` should enumerate the whole group when finite.
    pub fn validate(
        &self,
        alg: &LieAlgebra,
        group: &Group,
        samples: &[GroupElement],
    ) -> ValidationReport {
        let mut report = ValidationReport::new("representation");
        let n = alg.dim();

        match self.matrix(alg, &group.identity()) {
            Ok(m) if m.is_identity() => report.pass("identity acts trivially"),
            Ok(_) => report.fail("identity acts trivially", "A_e is not the identity matrix"),
            Err(e) => report.fail("identity acts trivially", e.to_string()),
        }

        if let Representation::Table { entries } = self {
            let sized_ok = entries.values().all(|m| m.size() == n);
            report.record("table matrices match the algebra dimension", sized_ok, "size mismatch");
            if let Some(all) = group.elements() {
                let missing: Vec<_> = all.iter().filter(|p| !entries.contains_key(p)).collect();
                report.record(
                    "table covers the group",
                    missing.is_empty(),
                    format!("{} elements missing", missing.len()),
                );
            }
            let singular = entries.iter().find(|(_, m)| m.det().is_zero());
            report.record(
                "table matrices are invertible",
                singular.is_none(),
                singular.map(|(p, _)| format!("A_{p} is singular")).unwrap_or_default(),
            );
        }

        let mut hom_ok = true;
        let mut hom_detail = String::new();
        'hom: for p in samples {
            for q in samples {
                let lhs = group
                    .mul(p, q)
                    .and_then(|pq| self.matrix(alg, &pq));
                let rhs = self
                    .matrix(alg, p)
                    .and_then(|ap| Ok((ap, self.matrix(alg, q)?)))
                    .and_then(|(ap, aq)| ap.mul(&aq));
                match (lhs, rhs) {
                    (Ok(l), Ok(r)) if l == r => {}
                    (Ok(_), Ok(_)) => {
                        hom_ok = false;
                        hom_detail = format!("A_(pq) != A_p A_q at p={p}, q={q}");
                        break 'hom;
                    }
                    (Err(e), _) | (_, Err(e)) => {
                        hom_ok = false;
                        hom_detail = e.to_string();
                        break 'hom;
                    }
                }
            }
        }
        report.record("homomorphism on sample pairs", hom_ok, hom_detail);

        let mut auto_ok = true;
        let mut auto_detail = String::new();
        'auto: for p in samples {
            let ap = match self.matrix(alg, p) {
                Ok(m) => m,
                Err(e) => {
                    auto_ok = false;
                    auto_detail = e.to_string();
                    break;
                }
            };
            for i in 0..n as u8 {
                for j in 0..n as u8 {
                    let lhs = ap.mul_vec(alg.bracket_basis(i, j)).unwrap();
                    let rhs = alg
                        .bracket(
                            &ap.mul_vec(&basis_vec(n, i)).unwrap(),
                            &ap.mul_vec(&basis_vec(n, j)).unwrap(),
                        )
                        .unwrap();
                    if lhs != rhs {
                        auto_ok = false;
                        auto_detail = format!("A_p[e{i},e{j}] != [A_p e{i}, A_p e{j}] at p={p}");
                        break 'auto;
                    }
                }
            }
        }
        report.record("bracket automorphism on basis pairs", auto_ok, auto_detail);

        report
    }
}
