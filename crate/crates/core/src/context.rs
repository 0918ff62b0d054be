//! A computation context: one Lie algebra, one base-point group, one action
//! of the group on the algebra by bracket automorphisms, plus the negated
//! copy of the algebra for the odd generators. Every current lives in a
//! context, and all five operations are methods here.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::groups::{Group, GroupElement};
use crate::linalg::SMat;
use crate::reps::Representation;
use crate::scalar::Scalar;
use crate::validate::ValidationReport;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

pub struct Context {
    id: u64,
    label: String,
    algebra: LieAlgebra,
    algebra_neg: LieAlgebra,
    group: Group,
    rep: Representation,
    /// Memoized action matrices; conjugation actions solve a linear system
    /// per element, and the suites revisit the same points constantly.
    act_cache: Mutex<BTreeMap<GroupElement, SMat>>,
}

impl Context {
    pub fn new(
        label: impl Into<String>,
        algebra: LieAlgebra,
        group: Group,
        rep: Representation,
    ) -> Result<Context> {
        let algebra_neg = algebra.negated();
        Ok(Context {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            label: label.into(),
            algebra,
            algebra_neg,
            group,
            rep,
            act_cache: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    /// The same vector space with every bracket negated; the coefficient
    /// algebra of the odd (right-slot) enveloping factor.
    pub fn algebra_neg(&self) -> &LieAlgebra {
        &self.algebra_neg
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Action matrix of p on the algebra's coordinate space.
    pub fn act_matrix(&self, p: &GroupElement) -> Result<SMat> {
        if let Some(m) = self.act_cache.lock().unwrap().get(p) {
            return Ok(m.clone());
        }
        self.group.contains(p)?;
        let m = self.rep.matrix(&self.algebra, p)?;
        if m.size() != self.dim() {
            return Err(Error::Dimension(format!(
                "action matrix of size {} in a dimension-{} context",
                m.size(),
                self.dim()
            )));
        }
        self.act_cache.lock().unwrap().insert(p.clone(), m.clone());
        Ok(m)
    }

    /// Action matrix of p⁻¹ (equals the inverse matrix when the action is a
    /// homomorphism, which validation checks).
    pub fn act_matrix_inv(&self, p: &GroupElement) -> Result<SMat> {
        let pinv = self.group.inv(p)?;
        self.act_matrix(&pinv)
    }

    pub fn act_vector(&self, p: &GroupElement, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.act_matrix(p)?.mul_vec(v)
    }

    /// Full validation: algebra axioms, group axioms, representation laws
    /// over the given samples (or the context's default samples).
    pub fn validate(&self, samples: Option<&[GroupElement]>) -> ValidationReport {
        let default;
        let samples = match samples {
            Some(s) => s,
            None => {
                default = self.default_samples();
                &default
            }
        };
        let mut report = ValidationReport::new(format!("context {}", self.label));
        report.merge(self.algebra.validate());
        report.merge(self.group.validate(samples));
        report.merge(self.rep.validate(&self.algebra, &self.group, samples));
        report
    }

    /// Deterministic sample elements: every element of a small finite group,
    /// or a fixed pool of unitriangular matrices for the 3x3 matrix backend.
    pub fn default_samples(&self) -> Vec<GroupElement> {
        match &self.group {
            Group::Matrix { size: 3 } => {
                let r = Scalar::ratio;
                vec![
                    self.group.identity(),
                    crate::groups::unitriangular(r(1, 1), r(0, 1), r(0, 1)),
                    crate::groups::unitriangular(r(0, 1), r(1, 1), r(0, 1)),
                    crate::groups::unitriangular(r(0, 1), r(0, 1), r(1, 1)),
                    crate::groups::unitriangular(r(1, 1), r(1, 1), r(0, 1)),
                    crate::groups::unitriangular(r(1, 2), r(-1, 1), r(2, 1)),
                    crate::groups::unitriangular(r(-2, 1), r(1, 3), r(1, 1)),
                ]
            }
            Group::Matrix { size } => vec![GroupElement::Mat(SMat::identity(*size))],
            _ => {
                let mut all = self.group.elements().unwrap_or_default();
                all.truncate(36);
                all
            }
        }
    }

    /// Canonical rendering of a group element: the identity prints as `e`
    /// in every backend.
    pub fn show_group(&self, p: &GroupElement) -> String {
        if *p == self.group.identity() {
            "e".to_string()
        } else {
            p.to_string()
        }
    }
}

/// Built-in contexts exercised by the test suites: small but structurally
/// varied combinations of algebra, group and action.
pub mod contexts {
    use super::*;
    use crate::algebra::builtin;
    use crate::groups::all_permutations;

    fn smat_i64(rows: &[&[i64]]) -> SMat {
        SMat::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect(),
        )
        .expect("square")
    }

    /// Abelian ℚ³, cyclic group of order 4, trivial action.
    pub fn c1() -> Context {
        Context::new("c1", builtin::abelian(3), Group::cyclic(4), Representation::Trivial)
            .expect("c1")
    }

    /// Strictly upper triangular realization of the Heisenberg algebra:
    /// e1 = E12, e2 = E23, e3 = E13.
    pub fn heisenberg_realization() -> Vec<SMat> {
        vec![
            smat_i64(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]),
            smat_i64(&[&[0, 0, 0], &[0, 0, 1], &[0, 0, 0]]),
            smat_i64(&[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]]),
        ]
    }

    /// Heisenberg algebra, unitriangular rational 3x3 matrix group,
    /// conjugation action in the matching realization.
    pub fn c2() -> Context {
        Context::new(
            "c2",
            builtin::heisenberg(),
            Group::matrix(3).expect("matrix group"),
            Representation::Conjugation { realization: heisenberg_realization() },
        )
        .expect("c2")
    }

    /// The symmetric group on three points in its two-dimensional standard
    /// representation, acting on sl2 by conjugation in the traceless 2x2
    /// realization h = diag(1,-1), e = E12, f = E21. Returns the action
    /// table in sl2 coordinates, indexed like `Group::symmetric_cayley(3)`.
    pub fn sl2_action_table() -> BTreeMap<GroupElement, SMat> {
        let h = smat_i64(&[&[1, 0], &[0, -1]]);
        let e = smat_i64(&[&[0, 1], &[0, 0]]);
        let f = smat_i64(&[&[0, 0], &[1, 0]]);
        let basis = [h, e, f];

        // Standard representation matrix of a permutation in the basis
        // f1 = (1,-1,0), f2 = (0,1,-1) of the sum-zero plane. A coordinate
        // vector u with u0+u1+u2 = 0 is a*f1 + b*f2 with a = u0, b = -u2.
        let rep2 = |p: &[u8]| -> SMat {
            let image = |v: [i64; 3]| {
                let mut u = [0i64; 3];
                for (i, &vi) in v.iter().enumerate() {
                    u[p[i] as usize] = vi;
                }
                u
            };
            let cols: Vec<(i64, i64)> = [[1, -1, 0], [0, 1, -1]]
                .into_iter()
                .map(|fk| {
                    let u = image(fk);
                    debug_assert_eq!(u[1], -u[0] - u[2]);
                    (u[0], -u[2])
                })
                .collect();
            smat_i64(&[&[cols[0].0, cols[1].0], &[cols[0].1, cols[1].1]])
        };

        let mut table = BTreeMap::new();
        for (idx, p) in all_permutations(3).iter().enumerate() {
            let r = rep2(p);
            let rinv = r.inverse().expect("rep matrix invertible");
            let mut a = SMat::zero(3);
            for (j, b) in basis.iter().enumerate() {
                let c = r.mul(b).unwrap().mul(&rinv).unwrap();
                debug_assert_eq!(*c.get(1, 1), -c.get(0, 0).clone());
                a.set(0, j, c.get(0, 0).clone());
                a.set(1, j, c.get(0, 1).clone());
                a.set(2, j, c.get(1, 0).clone());
            }
            table.insert(GroupElement::Cayley(idx as u16), a);
        }
        table
    }

    /// sl2, symmetric group on three points (as a Cayley table), explicit
    /// action table from the standard representation.
    pub fn c3() -> Context {
        Context::new(
            "c3",
            builtin::sl2(),
            Group::symmetric_cayley(3),
            Representation::Table { entries: sl2_action_table() },
        )
        .expect("c3")
    }

    /// so3 with the trivial group.
    pub fn c4() -> Context {
        Context::new("c4", builtin::so3(), Group::trivial(), Representation::Trivial).expect("c4")
    }

    pub fn all() -> Vec<Context> {
        vec![c1(), c2(), c3(), c4()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::unitriangular;

    #[test]
    fn builtin_contexts_validate() {
        for ctx in contexts::all() {
            let report = ctx.validate(None);
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn action_matrices_cache_and_invert() {
        let ctx = contexts::c2();
        let p = unitriangular(Scalar::from_int(1), Scalar::from_int(2), Scalar::zero());
        let a = ctx.act_matrix(&p).unwrap();
        let b = ctx.act_matrix(&p).unwrap();
        assert_eq!(a, b);
        let ainv = ctx.act_matrix_inv(&p).unwrap();
        assert!(a.mul(&ainv).unwrap().is_identity());
    }

    #[test]
    fn sl2_table_oracle() {
        // The transposition of the first two points sends h to h - 2e and
        // negates e; check those two columns outright.
        let table = contexts::sl2_action_table();
        let perms = crate::groups::all_permutations(3);
        let idx = perms.iter().position(|p| p == &vec![1, 0, 2]).unwrap() as u16;
        let a = table.get(&GroupElement::Cayley(idx)).unwrap();
        assert_eq!(
            a.col(0),
            vec![Scalar::one(), Scalar::from_int(-2), Scalar::zero()]
        );
        assert_eq!(
            a.col(1),
            vec![Scalar::zero(), Scalar::from_int(-1), Scalar::zero()]
        );
    }

    #[test]
    fn identity_renders_as_e() {
        let ctx = contexts::c1();
        assert_eq!(ctx.show_group(&GroupElement::Cayley(0)), "e");
        assert_eq!(ctx.show_group(&GroupElement::Cayley(2)), "g2");
        let c2 = contexts::c2();
        assert_eq!(c2.show_group(&c2.group().identity()), "e");
        let m = unitriangular(Scalar::one(), Scalar::zero(), Scalar::zero());
        assert_eq!(c2.show_group(&m), "M(1,0,0)");
    }
}
